use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{AlgebraError, Monomial, MonomialOrder, Scalar};

/// An ordered list of variable names. Cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<[String]>);

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Self {
        Ring(vars.iter().map(|v| v.as_ref().to_string()).collect())
    }

    /// Source ring `(s, t)`.
    pub fn source() -> Self {
        Ring::new(&["s", "t"])
    }

    /// Target ring `(X, Y, Z)`.
    pub fn target() -> Self {
        Ring::new(&["X", "Y", "Z"])
    }

    /// Graph ring `(s, t, X, Y, Z)`.
    pub fn graph() -> Self {
        Ring::new(&["s", "t", "X", "Y", "Z"])
    }

    pub fn vars(&self) -> &[String] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.join(","))
    }
}

/// A multivariate polynomial over ℚ(i).
///
/// Terms are stored in global degrevlex order with no zero coefficients, so
/// two equal polynomials are structurally identical.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        Poly::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Poly::constant(ring, Scalar::one())
    }

    pub fn term(ring: &Ring, m: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    /// The variable with ring index `idx`.
    pub fn variable(ring: &Ring, idx: usize) -> Self {
        Poly::term(ring, Monomial::var_power(ring.nvars(), idx, 1), Scalar::one())
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self, AlgebraError> {
        let idx = ring.index_of(name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(Poly::variable(ring, idx))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, combining
    /// repeated monomials.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_int_terms(ring: &Ring, terms: &[(&[u32], i64)]) -> Self {
        Poly::from_terms(ring, terms.iter().map(|(e, c)| (Monomial::new(e), Scalar::from_int(*c))))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
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

    /// Terms in descending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Lowest total degree of a term (the order of vanishing at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<(), AlgebraError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_ring(other)?;
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Product with all terms of total degree `>= bound` discarded.
    pub fn mul_truncated(&self, other: &Poly, bound: u32) -> Poly {
        assert!(self.ring == other.ring, "ring mismatch");
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da >= bound {
                break;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() >= bound {
                    break;
                }
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term of total degree `>= bound`.
    pub fn truncate(&self, bound: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .take_while(|(m, _)| m.degree() < bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Poly, AlgebraError> {
        let idx = self.ring.index_of(var).ok_or_else(|| AlgebraError::UnknownVariable(var.to_string()))?;
        Ok(self.derivative(idx))
    }

    /// Formal partial derivative by the variable with ring index `idx`.
    pub fn derivative(&self, idx: usize) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(idx);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[idx] -= 1;
            out.add_term(Monomial::new(&exps), &(c * &Scalar::from_int(e as i64)));
        }
        out
    }

    /// `Some(d)` when every term has `weights`-weighted degree `d`, `None`
    /// when the terms disagree.
    pub fn weighted_degree(&self, weights: &[u32]) -> Result<Option<u64>, AlgebraError> {
        if weights.len() != self.ring.nvars() {
            return Err(AlgebraError::LengthMismatch { expected: self.ring.nvars(), got: weights.len() });
        }
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(weights));
        let first = degrees.next().ok_or(AlgebraError::ZeroPolynomial)?;
        Ok(degrees.all(|d| d == first).then_some(first))
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    /// Substitutes `images[i]` for the `i`-th variable. All images must share
    /// one ring, which becomes the ring of the result.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly, AlgebraError> {
        if images.len() != self.ring.nvars() {
            return Err(AlgebraError::LengthMismatch { expected: self.ring.nvars(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| p.ring != target) {
            return Err(AlgebraError::RingMismatch);
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&target), p.clone()]).collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = &table[table.len() - 1] * &images[i];
                    table.push(next);
                }
                if e > 0 {
                    t = &t * &table[e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in `ring`, sending variable `i` to ring
    /// index `mapping[i]`.
    pub fn embed(&self, ring: &Ring, mapping: &[usize]) -> Poly {
        assert_eq!(mapping.len(), self.ring.nvars());
        Poly::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; ring.nvars()];
                for (i, &k) in mapping.iter().enumerate() {
                    e[k] += m.exponent(i);
                }
                (Monomial::new(&e), c.clone())
            }),
        )
    }

    /// Evaluates every variable at zero except those listed, i.e. keeps only
    /// terms whose support lies in `keep`.
    pub fn restrict_support(&self, keep: &[usize]) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || keep.contains(&i)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Scales so that the leading coefficient under `order` is 1.
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    /// Panics on ring mismatch; see [`Poly::checked_add`].
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", ring.vars()[i])?;
        if e > 1 {
            write!(f, "^{}", e)?;
        }
    }
    Ok(())
}

/// Prints in the parser's input syntax, highest canonical term first.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_real() && c.re() < &num_rational::BigRational::from_integer(0.into());
            let magnitude = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", magnitude)?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{}*", magnitude)?;
                }
                write_monomial(f, &self.ring, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.ring.vars().join(","), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn src() -> Ring {
        Ring::source()
    }

    fn s() -> Poly {
        Poly::variable(&src(), 0)
    }

    fn t() -> Poly {
        Poly::variable(&src(), 1)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&s() + &t()) * &(&s() - &t());
        assert_eq!(p, Poly::from_int_terms(&src(), &[(&[2, 0], 1), (&[0, 2], -1)]));
        assert_eq!(p.to_string(), "s^2 - t^2");
    }

    #[test]
    fn times_zero() {
        let p = &s().pow(3) + &t();
        assert!((&p * &Poly::zero(&src())).is_zero());
    }

    #[test]
    fn expansion_by_terms() {
        // (s^2 + s t) t = s^2 t + s t^2, expanded term by term.
        let lhs = &(&s().pow(2) + &(&s() * &t())) * &t();
        let expected = Poly::from_int_terms(&src(), &[(&[2, 1], 1), (&[1, 2], 1)]);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let x = Poly::variable(&Ring::target(), 0);
        assert_eq!(s().checked_add(&x), Err(AlgebraError::RingMismatch));
        assert_eq!(s().checked_mul(&x), Err(AlgebraError::RingMismatch));
    }

    #[test]
    fn derivatives() {
        let k = 5;
        // d/dt (t^3 + s^k t) = 3 t^2 + s^k
        let p = &t().pow(3) + &(&s().pow(k) * &t());
        let d = p.partial_derivative("t").unwrap();
        assert_eq!(d, &t().pow(2).scale(&Scalar::from_int(3)) + &s().pow(k));
        assert!(Poly::constant(&src(), Scalar::from_int(7)).partial_derivative("s").unwrap().is_zero());
        let q = &s().pow(2) * &t().pow(2);
        assert_eq!(q.partial_derivative("s").unwrap(), (&s() * &t().pow(2)).scale(&Scalar::from_int(2)));
        assert_eq!(p.partial_derivative("u"), Err(AlgebraError::UnknownVariable("u".into())));
    }

    #[test]
    fn weighted_degrees() {
        let k = 7;
        assert_eq!(s().pow(k).weighted_degree(&[1, 1]), Ok(Some(k as u64)));
        let p = &t().pow(3) + &(&s().pow(k) * &t());
        assert_eq!(p.weighted_degree(&[2, k]), Ok(Some(3 * k as u64)));
        assert_eq!((&s() + &t().pow(2)).weighted_degree(&[1, 1]), Ok(None));
        assert_eq!(Poly::zero(&src()).weighted_degree(&[1, 1]), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn composition() {
        // (X^2 - Y) o (s, s^2) = 0
        let tr = Ring::target();
        let x = Poly::variable(&tr, 0);
        let y = Poly::variable(&tr, 1);
        let h = &x.pow(2) - &y;
        let images = vec![s(), s().pow(2), t()];
        assert!(h.compose(&images).unwrap().is_zero());
    }

    #[test]
    fn truncated_product_matches_truncation() {
        let a = &(&s() + &t().pow(2)) + &Poly::one(&src());
        let b = &(&s().pow(3) - &t()) + &Poly::one(&src());
        assert_eq!(a.mul_truncated(&b, 3), (&a * &b).truncate(3));
    }
}
