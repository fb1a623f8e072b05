//! Ideals of the local ring at the origin: standard bases, codimension,
//! membership and intersection multiplicities, plus an independent
//! jet-truncation oracle for codimensions.

mod jet;
mod mora;
mod truncated;

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Monomial, Poly, Ring};

pub use jet::{jet_codim_oracle, jet_codim_step, JetError, DEFAULT_N_MAX};
pub use mora::{mora_standard_basis, StandardBasis};
pub use truncated::TruncatedBasis;

/// Dimension of `O / I` as a vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Codim {
    Finite(u64),
    Infinite,
}

impl Codim {
    pub fn finite(self) -> Option<u64> {
        match self {
            Codim::Finite(n) => Some(n),
            Codim::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Codim::Finite(_))
    }
}

impl fmt::Display for Codim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codim::Finite(n) => write!(f, "{}", n),
            Codim::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("generators live in different rings")]
    RingMismatch,
}

/// Reduction steps and coefficient bits allowed to unbounded Mora before
/// [`LocalIdeal::codim`] switches to truncated computations.
const MORA_STEP_BUDGET: u64 = 20_000;
const MORA_HEIGHT_BUDGET: u64 = 2_048;

/// An ideal of the local ring `O` at the origin, with a lazily computed
/// standard basis.
///
/// The cache is filled at most once; afterwards the ideal is read-only and can
/// be shared between threads.
#[derive(Clone, Debug)]
pub struct LocalIdeal {
    ring: Ring,
    generators: Vec<Poly>,
    cache: OnceLock<StandardBasis>,
    codim: OnceLock<Codim>,
}

impl LocalIdeal {
    /// Zero generators are dropped; an all-zero list gives the zero ideal.
    pub fn new(generators: Vec<Poly>) -> Result<Self, LocalError> {
        let ring = generators.first().ok_or(LocalError::NoGenerators)?.ring().clone();
        if generators.iter().any(|g| *g.ring() != ring) {
            return Err(LocalError::RingMismatch);
        }
        Ok(LocalIdeal {
            ring,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: OnceLock::new(),
            codim: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// For an ideal of infinite codimension on which the budgeted run of
    /// [`LocalIdeal::codim`] gave up, this is plain Mora without limits.
    pub fn standard_basis(&self) -> &StandardBasis {
        self.codim();
        self.cache.get_or_init(|| mora_standard_basis(&self.ring, &self.generators))
    }

    /// Plain Mora is tried first under a work budget; it is exact whenever it
    /// finishes. Past the budget the question is decided modulo `m^N` for
    /// `N = 8, 16, ...`: if the leading monomials cover every monomial of
    /// degree `N - 1` then `m^(N-1) ⊆ I` by Nakayama and the truncated basis
    /// is exact. A finite codimension `μ` is at most the Bezout number
    /// `B = D^n` for generators of degree `<= D` in `n` variables, so
    /// `m^B ⊆ I`; no cover at `N = B + 2` therefore means infinite
    /// codimension.
    pub fn codim(&self) -> Codim {
        *self.codim.get_or_init(|| {
            if self.cache.get().is_none() {
                let mut budget = mora::Budget::new(MORA_STEP_BUDGET, MORA_HEIGHT_BUDGET);
                if let Some(sb) = mora::mora_with_bound(&self.ring, &self.generators, None, &mut budget) {
                    let _ = self.cache.set(sb);
                }
            }
            if let Some(sb) = self.cache.get() {
                return codim_of_leading_ideal(&sb.leading_monomials(), self.ring.nvars());
            }
            let Some(last) = self.certificate_degree() else { return Codim::Infinite };
            let mut n = 8.min(last);
            loop {
                let sb = mora::mora_with_bound(&self.ring, &self.generators, Some(n), &mut mora::Budget::unlimited())
                    .expect("no budget");
                if let Some(ms) = standard_monomials(&sb.leading_monomials(), self.ring.nvars()) {
                    if ms.iter().all(|m| m.degree() + 1 < n) {
                        let _ = self.cache.set(sb);
                        return Codim::Finite(ms.len() as u64);
                    }
                }
                if n == last {
                    return Codim::Infinite;
                }
                n = n.saturating_mul(2).min(last);
            }
        })
    }

    /// `B + 2` as above, or `None` for the zero ideal.
    fn certificate_degree(&self) -> Option<u32> {
        let d = self.generators.iter().filter_map(Poly::total_degree).max()?;
        let b = (d.max(1) as u64).saturating_pow(self.ring.nvars() as u32);
        Some(u32::try_from(b.saturating_add(2)).unwrap_or(u32::MAX))
    }

    pub fn contains(&self, p: &Poly) -> bool {
        p.is_zero() || self.standard_basis().normal_form(p).is_zero()
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.standard_basis().normal_form(p)
    }

    /// The ideal with one more generator.
    pub fn with_generator(&self, p: Poly) -> LocalIdeal {
        let mut gens = self.generators.clone();
        gens.push(p);
        LocalIdeal::new(gens).expect("same ring")
    }

    /// `I + m^degree`.
    pub fn plus_power_of_maximal(&self, degree: u32) -> LocalIdeal {
        let mut gens = self.generators.clone();
        gens.extend(
            Monomial::all_of_degree(self.ring.nvars(), degree)
                .into_iter()
                .map(|m| Poly::term(&self.ring, m, crate::Scalar::one())),
        );
        LocalIdeal { ring: self.ring.clone(), generators: gens, cache: OnceLock::new(), codim: OnceLock::new() }
    }

    /// Checks that every generator reduces to zero modulo the cached basis
    /// and every basis element reduces to zero modulo a basis recomputed from
    /// the reversed generator list.
    pub fn verify_cache(&self) -> bool {
        let sb = self.standard_basis();
        if !self.generators.iter().all(|g| sb.normal_form(g).is_zero()) {
            return false;
        }
        let mut rev = self.generators.clone();
        rev.reverse();
        let other = mora_standard_basis(&self.ring, &rev);
        sb.elements().iter().all(|e| other.normal_form(e).is_zero())
    }

    /// Monomials outside the leading ideal, when there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        standard_monomials(&self.standard_basis().leading_monomials(), self.ring.nvars())
    }
}

/// Standard basis of `I` under the local order.
pub fn standard_basis(ideal: &LocalIdeal) -> &StandardBasis {
    ideal.standard_basis()
}

pub fn local_codim(ideal: &LocalIdeal) -> Codim {
    ideal.codim()
}

pub fn ideal_membership(p: &Poly, ideal: &LocalIdeal) -> bool {
    ideal.contains(p)
}

/// Intersection multiplicity of the plane curves `f = 0` and `g = 0` at the
/// origin.
pub fn intersection_multiplicity(f: &Poly, g: &Poly) -> Result<Codim, LocalError> {
    Ok(LocalIdeal::new(vec![f.clone(), g.clone()])?.codim())
}

fn pure_power_bounds(leading: &[Monomial], nvars: usize) -> Option<Vec<u32>> {
    let mut bounds = vec![u32::MAX; nvars];
    for m in leading {
        if let Some(v) = m.pure_power_var() {
            bounds[v] = bounds[v].min(m.exponent(v));
        }
    }
    bounds.iter().all(|&b| b != u32::MAX).then_some(bounds)
}

/// Monomials not divisible by any of `leading`, or `None` if infinitely many.
pub fn standard_monomials(leading: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    if leading.iter().any(Monomial::is_one) {
        return Some(Vec::new());
    }
    let bounds = pure_power_bounds(leading, nvars)?;
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    'outer: loop {
        let m = Monomial::new(&exps);
        if !leading.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        for v in 0..nvars {
            exps[v] += 1;
            if exps[v] < bounds[v] {
                continue 'outer;
            }
            exps[v] = 0;
        }
        break;
    }
    out.sort_by(|a, b| crate::algebra::MonomialOrder::local().compare(b, a));
    Some(out)
}

/// Codimension of an ideal whose leading ideal is generated by `leading`.
pub fn codim_of_leading_ideal(leading: &[Monomial], nvars: usize) -> Codim {
    match standard_monomials(leading, nvars) {
        Some(ms) => Codim::Finite(ms.len() as u64),
        None => Codim::Infinite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    fn ring() -> Ring {
        Ring::source()
    }

    fn s() -> Poly {
        Poly::variable(&ring(), 0)
    }

    fn t() -> Poly {
        Poly::variable(&ring(), 1)
    }

    fn c(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn ideal(gens: Vec<Poly>) -> LocalIdeal {
        LocalIdeal::new(gens).unwrap()
    }

    fn phi_minus_k_minors(k: u32) -> Vec<Poly> {
        // (2t, 3t^2 + s^k, -2k t^2 s^(k-1))
        vec![
            t().scale(&c(2)),
            &t().pow(2).scale(&c(3)) + &s().pow(k),
            (&t().pow(2) * &s().pow(k - 1)).scale(&c(-2 * k as i64)),
        ]
    }

    #[test]
    fn example_minors_reduce_to_t_and_power_of_s() {
        for k in 1..=8 {
            let i = ideal(phi_minus_k_minors(k));
            let mut lms = i.standard_basis().leading_monomials();
            lms.sort();
            assert_eq!(lms, vec![Monomial::new(&[0, 1]), Monomial::new(&[k, 0])], "k = {k}");
            assert_eq!(i.codim(), Codim::Finite(k as u64));
            assert!(i.verify_cache());
        }
    }

    #[test]
    fn a_family_minors_codim() {
        for k in 2..=6u32 {
            let i = ideal(vec![s().pow(k), t().pow(k), &s().pow(k - 1) * &t().pow(k - 1)]);
            assert_eq!(i.codim(), Codim::Finite((k * k - 1) as u64));
        }
    }

    #[test]
    fn codims() {
        assert_eq!(ideal(vec![t(), s().pow(5)]).codim(), Codim::Finite(5));
        assert_eq!(ideal(vec![s()]).codim(), Codim::Infinite);
        assert_eq!(ideal(vec![s(), t()]).codim(), Codim::Finite(1));
        assert_eq!(ideal(vec![Poly::zero(&ring())]).codim(), Codim::Infinite);
        assert_eq!(ideal(vec![&Poly::one(&ring()) + &s()]).codim(), Codim::Finite(0));
    }

    #[test]
    fn intersection_multiplicities() {
        assert_eq!(intersection_multiplicity(&t(), &s().pow(3)).unwrap(), Codim::Finite(3));
        assert_eq!(intersection_multiplicity(&s(), &s()).unwrap(), Codim::Infinite);
        let f = &s().pow(2) - &t().pow(3);
        let g = &s().pow(3) - &t().pow(2);
        assert_eq!(intersection_multiplicity(&f, &g).unwrap(), Codim::Finite(4));
    }

    #[test]
    fn membership() {
        let k = 4;
        assert!(ideal(vec![t(), s().pow(k)]).contains(&s().pow(k)));
        assert!(!ideal(vec![s(), t()]).contains(&Poly::one(&ring())));
        let j = ideal(phi_minus_k_minors(k));
        let member = &t() * &(&t().pow(2).scale(&c(3)) + &s().pow(k));
        assert!(j.contains(&member));
        assert!(!j.contains(&s().pow(k - 1)));
    }

    #[test]
    fn ring_errors() {
        assert_eq!(LocalIdeal::new(vec![]).unwrap_err(), LocalError::NoGenerators);
        let x = Poly::variable(&Ring::target(), 0);
        assert_eq!(LocalIdeal::new(vec![s(), x]).unwrap_err(), LocalError::RingMismatch);
    }
}
