//! Codimension by exact linear algebra on jets.
//!
//! `c_N = dim O / (I + m^N)` is the number of monomials of degree `< N`
//! minus the rank of the span of all `u·g mod m^N`. The sequence is
//! non-decreasing and bounded by `dim O / I`; once `c_N = c_(N+1)` we have
//! `m^N ⊆ I + m^(N+1)`, hence `m^N ⊆ I` by Nakayama and `c_N = dim O / I`.
//! No standard basis is involved, so this serves as an independent check.

use std::collections::HashMap;

use thiserror::Error;

use super::{Codim, LocalIdeal};
use crate::algebra::{Monomial, Scalar};

pub const DEFAULT_N_MAX: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("jet codimension did not stabilise below degree {n_max} (last value {last})")]
    BoundExceeded { n_max: u32, last: u64 },
}

/// `dim O / (I + m^n)`.
pub fn jet_codim_step(ideal: &LocalIdeal, n: u32) -> u64 {
    let nvars = ideal.ring().nvars();
    let mut columns: HashMap<Monomial, usize> = HashMap::new();
    for d in 0..n {
        for m in Monomial::all_of_degree(nvars, d) {
            let k = columns.len();
            columns.insert(m, k);
        }
    }
    let total = columns.len() as u64;

    let mut echelon = Echelon::default();
    for g in ideal.generators() {
        let g = g.truncate(n);
        let Some(ord) = g.order() else { continue };
        let terms: Vec<(&Monomial, &Scalar)> = g.terms().collect();
        for d in 0..n.saturating_sub(ord) {
            for u in Monomial::all_of_degree(nvars, d) {
                let row: Vec<(usize, Scalar)> = terms
                    .iter()
                    .filter_map(|(m, c)| {
                        let shifted = m.mul(&u);
                        columns.get(&shifted).map(|&col| (col, (*c).clone()))
                    })
                    .collect();
                echelon.insert(row);
            }
        }
    }
    total - echelon.rank() as u64
}

/// Codimension of `ideal` from the first stabilisation `c_N = c_(N+1)`,
/// searching `N <= n_max`.
pub fn jet_codim_oracle(ideal: &LocalIdeal, n_max: u32) -> Result<Codim, JetError> {
    let mut previous = jet_codim_step(ideal, 1);
    for n in 2..=n_max.max(2) {
        let current = jet_codim_step(ideal, n);
        if current == previous {
            return Ok(Codim::Finite(current));
        }
        previous = current;
    }
    Err(JetError::BoundExceeded { n_max, last: previous })
}

/// Row-echelon form over ℚ(i) with rows keyed by their first column.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, Vec<(usize, Scalar)>>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, row: Vec<(usize, Scalar)>) {
        let mut row = row;
        row.sort_by_key(|e| e.0);
        loop {
            let Some((lead, coef)) = row.first().cloned() else { return };
            match self.pivots.get(&lead) {
                Some(pivot) => row = axpy(&row, &coef, pivot),
                None => {
                    let inv = coef.inv().expect("nonzero");
                    let row = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }
}

/// `row - c·pivot` for sparse sorted rows.
fn axpy(row: &[(usize, Scalar)], c: &Scalar, pivot: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -&(c * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(c * &pivot[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Poly, Ring};

    fn p(terms: &[(&[u32], i64)]) -> Poly {
        Poly::from_int_terms(&Ring::source(), terms)
    }

    fn ideal(gens: Vec<Poly>) -> LocalIdeal {
        LocalIdeal::new(gens).unwrap()
    }

    #[test]
    fn cross_cap_minors() {
        // (2s^2, 2s, t)
        let i = ideal(vec![p(&[(&[2, 0], 2)]), p(&[(&[1, 0], 2)]), p(&[(&[0, 1], 1)])]);
        assert_eq!(jet_codim_oracle(&i, DEFAULT_N_MAX), Ok(Codim::Finite(1)));
    }

    #[test]
    fn a1_minors() {
        let i = ideal(vec![p(&[(&[1, 1], 1)]), p(&[(&[2, 0], 1)]), p(&[(&[0, 2], 1)])]);
        assert_eq!(jet_codim_oracle(&i, DEFAULT_N_MAX), Ok(Codim::Finite(3)));
    }

    #[test]
    fn maximal_ideal_and_unit() {
        let i = ideal(vec![p(&[(&[1, 0], 1)]), p(&[(&[0, 1], 1)])]);
        assert_eq!(jet_codim_oracle(&i, 2), Ok(Codim::Finite(1)));
        let u = ideal(vec![p(&[(&[0, 0], 1), (&[1, 0], 1)])]);
        assert_eq!(jet_codim_oracle(&u, 2), Ok(Codim::Finite(0)));
    }

    #[test]
    fn bound_exceeded_for_infinite_codim() {
        let i = ideal(vec![p(&[(&[1, 0], 1)])]);
        assert!(matches!(jet_codim_oracle(&i, 10), Err(JetError::BoundExceeded { n_max: 10, .. })));
    }

    #[test]
    fn cusp_pair() {
        // (s^2 - t^3, s^3 - t^2) meet with multiplicity 4.
        let i = ideal(vec![p(&[(&[2, 0], 1), (&[0, 3], -1)]), p(&[(&[3, 0], 1), (&[0, 2], -1)])]);
        assert_eq!(jet_codim_oracle(&i, 64), Ok(Codim::Finite(4)));
    }
}
