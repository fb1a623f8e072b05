//! Cross caps and the Smale invariant of a germ.
//!
//! `C(Φ)` is the codimension in `O_{C^2,0}` of the ideal `J` generated by the
//! three maximal minors of the Jacobian of `Φ`. `J` has finite codimension
//! exactly when `Φ` is an immersion off the origin, which is the
//! admissibility condition for everything downstream.

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Monomial, Poly, Scalar};
use crate::germ::Germ;
use crate::local::LocalIdeal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("germ is not admissible: the minors ideal has infinite codimension (singular locus is not isolated)")]
    NotAdmissible,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Weights of `(s, t)` and the weighted degrees of the three components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WHData {
    pub w1: u32,
    pub w2: u32,
    pub d1: u32,
    pub d2: u32,
    pub d3: u32,
}

impl WHData {
    pub fn new(w: (u32, u32), d: (u32, u32, u32)) -> Self {
        WHData { w1: w.0, w2: w.1, d1: d.0, d2: d.1, d3: d.2 }
    }
}

fn jacobian(phi: &Germ) -> [[Poly; 2]; 3] {
    phi.components().clone().map(|c| [c.derivative(0), c.derivative(1)])
}

/// The three maximal minors of the 3×2 Jacobian. `M_j` deletes row `j` and
/// carries the sign `(-1)^(j+1)`.
pub fn jacobian_minors(phi: &Germ) -> [Poly; 3] {
    let jac = jacobian(phi);
    let det = |a: usize, b: usize| &(&jac[a][0] * &jac[b][1]) - &(&jac[a][1] * &jac[b][0]);
    [det(1, 2), -&det(0, 2), det(0, 1)]
}

/// The ideal `J` of maximal minors in the local ring of the source.
pub fn minors_ideal(phi: &Germ) -> LocalIdeal {
    LocalIdeal::new(jacobian_minors(phi).to_vec()).expect("three polynomials in one ring")
}

/// `C(Φ) = dim O / J`.
pub fn crosscap_count(phi: &Germ) -> Result<u64, InvariantError> {
    minors_ideal(phi).codim().finite().ok_or(InvariantError::NotAdmissible)
}

/// The sign-refined Smale invariant `Ω = -C(Φ)`.
pub fn smale_invariant(phi: &Germ) -> Result<i64, InvariantError> {
    Ok(-(crosscap_count(phi)? as i64))
}

/// `2 - rank dΦ(0)`.
pub fn corank(phi: &Germ) -> u8 {
    let nvars = 2;
    let mut rows: Vec<Vec<Scalar>> = phi
        .components()
        .iter()
        .map(|c| (0..nvars).map(|v| c.coefficient(&Monomial::var_power(nvars, v, 1))).collect())
        .collect();
    2 - rank(&mut rows) as u8
}

fn rank(rows: &mut [Vec<Scalar>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv().unwrap();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = &rows[i][col] * &inv;
                for c in col..ncols {
                    let v = &rows[i][c] - &(&f * &rows[r][c]);
                    rows[i][c] = v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Codimension of `(∂_v g1, ∂_v g2)`.
///
/// For a germ of the form `(u, g1, g2)` with `u` the source variable other
/// than `v`, this ideal equals the minors ideal, so the result is `C(Φ)`.
/// The caller is responsible for bringing the germ into that form.
pub fn corank1_count(g1: &Poly, g2: &Poly, v: &str) -> Result<u64, InvariantError> {
    let a = g1.partial_derivative(v)?;
    let b = g2.partial_derivative(v)?;
    LocalIdeal::new(vec![a, b])
        .expect("same ring")
        .codim()
        .finite()
        .ok_or(InvariantError::NotAdmissible)
}

/// Closed-form cross-cap count for weighted-homogeneous germs:
///
/// `(d1d2 + d2d3 + d3d1 - (w1+w2)(d1+d2+d3-w1-w2) - w1w2) / (w1w2)`.
///
/// Non-integral or negative values mean the data cannot come from an
/// admissible germ.
pub fn wh_crosscap_count(d: &WHData) -> Rational64 {
    let (w1, w2) = (d.w1 as i64, d.w2 as i64);
    let (d1, d2, d3) = (d.d1 as i64, d.d2 as i64, d.d3 as i64);
    let num = d1 * d2 + d2 * d3 + d3 * d1 - (w1 + w2) * (d1 + d2 + d3 - w1 - w2) - w1 * w2;
    Rational64::new(num, w1 * w2)
}

/// Finds positive weights `(w1, w2)`, coprime, making every component
/// weighted homogeneous, together with the component degrees.
///
/// Each component contributes linear constraints `w · (α - β) = 0` for its
/// exponent vectors `α, β`. When there are no constraints (every component
/// is a single monomial) the standard weights `(1, 1)` are used.
pub fn detect_weighted_homogeneous(phi: &Germ) -> Option<WHData> {
    if phi.components().iter().any(Poly::is_zero) {
        return None;
    }
    let (w1, w2) = grading_weights(phi.components())?;
    let deg = |p: &Poly| p.weighted_degree(&[w1, w2]).ok().flatten().map(|d| d as u32);
    let [a, b, c] = phi.components();
    Some(WHData::new((w1, w2), (deg(a)?, deg(b)?, deg(c)?)))
}

/// Positive coprime weights making every nonzero polynomial in `polys`
/// weighted homogeneous; `(1, 1)` when nothing constrains them.
pub(crate) fn grading_weights(polys: &[Poly]) -> Option<(u32, u32)> {
    let mut diffs: Vec<(i64, i64)> = Vec::new();
    for c in polys.iter().filter(|c| !c.is_zero()) {
        let exps: Vec<&Monomial> = c.terms().map(|(m, _)| m).collect();
        let base = exps[0];
        for m in &exps[1..] {
            diffs.push((m.exponent(0) as i64 - base.exponent(0) as i64, m.exponent(1) as i64 - base.exponent(1) as i64));
        }
    }
    let (w1, w2) = match diffs.first() {
        None => (1i64, 1i64),
        Some(&(da, db)) => {
            // w1·da + w2·db = 0  ⇒  (w1, w2) ∝ (db, -da)
            let (mut a, mut b) = (db, -da);
            if a < 0 || (a == 0 && b < 0) {
                a = -a;
                b = -b;
            }
            if a <= 0 || b <= 0 {
                return None;
            }
            let g = a.gcd(&b);
            (a / g, b / g)
        }
    };
    if diffs.iter().any(|&(da, db)| w1 * da + w2 * db != 0) {
        return None;
    }
    Some((w1 as u32, w2 as u32))
}
