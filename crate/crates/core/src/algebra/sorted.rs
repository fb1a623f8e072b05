//! Term lists kept sorted under an arbitrary monomial order.
//!
//! The standard-basis engines spend nearly all their time in
//! `h - c·m·g` updates; a sorted vector makes the leading term free and the
//! update a single merge.

use std::cmp::Ordering;

use super::{Monomial, MonomialOrder, Poly, Ring, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct SortedPoly {
    /// Descending under the order the list was built with.
    terms: Vec<(Monomial, Scalar)>,
}

impl SortedPoly {
    pub fn zero() -> Self {
        SortedPoly { terms: Vec::new() }
    }

    pub fn from_poly(p: &Poly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Scalar)> = p.raw_terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        SortedPoly { terms }
    }

    /// Trusts that `terms` is already descending and free of zeros.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, Scalar)>) -> Self {
        SortedPoly { terms }
    }

    pub fn to_poly(&self, ring: &Ring) -> Poly {
        Poly::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximal total degree of a term.
    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    /// `max_degree - deg(LM)`; the ecart used by Mora's normal form.
    pub fn ecart(&self) -> u32 {
        match self.leading_monomial() {
            Some(lm) => self.max_degree() - lm.degree(),
            None => 0,
        }
    }

    pub fn make_monic(&mut self) {
        if let Some(lc) = self.leading_coefficient() {
            if lc.is_one() {
                return;
            }
            let inv = lc.inv().expect("nonzero");
            for t in &mut self.terms {
                t.1 = &t.1 * &inv;
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> SortedPoly {
        if c.is_zero() {
            return SortedPoly::zero();
        }
        SortedPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// `self - c·m·other`, truncating terms of degree `>= bound` if given.
    pub fn sub_scaled(
        &self,
        c: &Scalar,
        m: &Monomial,
        other: &SortedPoly,
        order: &MonomialOrder,
        bound: Option<u32>,
    ) -> SortedPoly {
        let keep = |mono: &Monomial| bound.is_none_or(|b| mono.degree() < b);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(mo, co)| (mo.mul(m), co * c)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => order.compare(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => {
                    let (mo, co) = a.next().unwrap();
                    if keep(mo) {
                        out.push((mo.clone(), co.clone()));
                    }
                }
                Ordering::Less => {
                    let (mo, co) = b.next().unwrap();
                    if keep(&mo) {
                        out.push((mo, -co));
                    }
                }
                Ordering::Equal => {
                    let (mo, co) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let v = co - &cb;
                    if !v.is_zero() && keep(mo) {
                        out.push((mo.clone(), v));
                    }
                }
            }
        }
        SortedPoly { terms: out }
    }

    /// `self + other`.
    pub fn add(&self, other: &SortedPoly, order: &MonomialOrder) -> SortedPoly {
        let nvars = self.leading_monomial().or(other.leading_monomial()).map_or(0, Monomial::nvars);
        self.sub_scaled(&Scalar::from_int(-1), &Monomial::one(nvars), other, order, None)
    }

    /// Removes the leading term and returns it.
    pub fn pop_leading(&mut self) -> Option<(Monomial, Scalar)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn truncate(&mut self, bound: u32) {
        self.terms.retain(|t| t.0.degree() < bound);
    }
}
