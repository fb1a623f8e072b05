//! Standard bases of `I + m^bound`, computed inside the finite-dimensional
//! algebra `O / m^bound`, with cofactors expressing each basis element in
//! terms of the input generators.
//!
//! Every term of degree `>= bound` is discarded as soon as it appears, so
//! reduction always terminates and no ecart bookkeeping is needed.

use crate::algebra::{Monomial, MonomialOrder, Poly, Ring, Scalar, SortedPoly};

#[derive(Clone, Debug)]
struct Element {
    poly: SortedPoly,
    /// `poly ≡ Σ cofactors[i]·gens[i] (mod m^bound)`.
    cofactors: Vec<Poly>,
}

#[derive(Clone, Debug)]
pub struct TruncatedBasis {
    ring: Ring,
    bound: u32,
    ngens: usize,
    order: MonomialOrder,
    elements: Vec<Element>,
}

/// Result of dividing by a [`TruncatedBasis`].
#[derive(Clone, Debug)]
pub struct Division {
    /// Only standard monomials, in descending local order.
    pub remainder: Vec<(Monomial, Scalar)>,
    /// One quotient per input generator.
    pub quotients: Vec<Poly>,
}

impl TruncatedBasis {
    pub fn new(ring: &Ring, gens: &[Poly], bound: u32) -> Self {
        let order = MonomialOrder::local();
        let ngens = gens.len();
        let mut tb = TruncatedBasis { ring: ring.clone(), bound, ngens, order, elements: Vec::new() };
        let mut pending: Vec<(usize, usize)> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let mut cof = vec![Poly::zero(ring); ngens];
            cof[i] = Poly::one(ring);
            let el = Element { poly: SortedPoly::from_poly(&g.truncate(bound), &tb.order), cofactors: cof };
            let el = tb.top_reduce(el);
            tb.push(el, &mut pending);
        }
        while let Some((i, j)) = pending.pop() {
            let sp = tb.s_polynomial(i, j);
            let el = tb.top_reduce(sp);
            tb.push(el, &mut pending);
        }
        tb
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().filter_map(|e| e.poly.leading_monomial().cloned()).collect()
    }

    /// Standard monomials of `I + m^bound`.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        let mut lead = self.leading_monomials();
        lead.extend(Monomial::all_of_degree(self.ring.nvars(), self.bound));
        super::standard_monomials(&lead, self.ring.nvars()).expect("m^bound is included")
    }

    fn push(&mut self, el: Element, pending: &mut Vec<(usize, usize)>) {
        let mut el = el;
        let Some(lc) = el.poly.leading_coefficient().cloned() else { return };
        let inv = lc.inv().expect("nonzero");
        el.poly.make_monic();
        for c in &mut el.cofactors {
            *c = c.scale(&inv);
        }
        let j = self.elements.len();
        for i in 0..j {
            pending.push((i, j));
        }
        self.elements.push(el);
    }

    fn s_polynomial(&self, i: usize, j: usize) -> Element {
        let (a, b) = (&self.elements[i], &self.elements[j]);
        let la = a.poly.leading_monomial().unwrap();
        let lb = b.poly.leading_monomial().unwrap();
        let lcm = la.lcm(lb);
        if lcm.degree() >= self.bound {
            return Element { poly: SortedPoly::zero(), cofactors: vec![Poly::zero(&self.ring); self.ngens] };
        }
        let ma = la.quotient_of(&lcm).unwrap();
        let mb = lb.quotient_of(&lcm).unwrap();
        let one = Scalar::one();
        let poly = SortedPoly::zero()
            .sub_scaled(&-&one, &ma, &a.poly, &self.order, Some(self.bound))
            .sub_scaled(&one, &mb, &b.poly, &self.order, Some(self.bound));
        let cofactors = (0..self.ngens)
            .map(|k| {
                (&a.cofactors[k].mul_monomial(&ma, &one) - &b.cofactors[k].mul_monomial(&mb, &one)).truncate(self.bound)
            })
            .collect();
        Element { poly, cofactors }
    }

    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        self.elements.iter().position(|e| e.poly.leading_monomial().is_some_and(|l| l.divides(m)))
    }

    fn top_reduce(&self, el: Element) -> Element {
        let mut el = el;
        while let Some(lm) = el.poly.leading_monomial().cloned() {
            let Some(k) = self.find_reducer(&lm) else { break };
            let g = &self.elements[k];
            let factor = g.poly.leading_monomial().unwrap().quotient_of(&lm).unwrap();
            let c = el.poly.leading_coefficient().unwrap().clone();
            el.poly = el.poly.sub_scaled(&c, &factor, &g.poly, &self.order, Some(self.bound));
            for (dst, src) in el.cofactors.iter_mut().zip(&g.cofactors) {
                *dst = (&*dst - &src.mul_monomial(&factor, &c)).truncate(self.bound);
            }
        }
        el
    }

    /// Writes `f ≡ Σ q_i·gens[i] + r (mod m^bound)` with `r` a combination of
    /// standard monomials.
    pub fn divide(&self, f: &Poly) -> Division {
        let mut h = SortedPoly::from_poly(&f.truncate(self.bound), &self.order);
        let mut remainder = Vec::new();
        let mut by_element: Vec<Poly> = vec![Poly::zero(&self.ring); self.elements.len()];
        while let Some(lm) = h.leading_monomial().cloned() {
            match self.find_reducer(&lm) {
                Some(k) => {
                    let g = &self.elements[k];
                    let factor = g.poly.leading_monomial().unwrap().quotient_of(&lm).unwrap();
                    let c = h.leading_coefficient().unwrap().clone();
                    by_element[k].add_term(factor.clone(), &c);
                    h = h.sub_scaled(&c, &factor, &g.poly, &self.order, Some(self.bound));
                }
                None => remainder.push(h.pop_leading().unwrap()),
            }
        }
        let mut quotients = vec![Poly::zero(&self.ring); self.ngens];
        for (q, el) in by_element.iter().zip(&self.elements) {
            if q.is_zero() {
                continue;
            }
            for (dst, cof) in quotients.iter_mut().zip(&el.cofactors) {
                *dst = &*dst + &q.mul_truncated(cof, self.bound);
            }
        }
        Division { remainder, quotients }
    }
}
