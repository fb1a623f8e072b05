//! Mora's tangent-cone algorithm: standard bases for the local ring.

use crate::algebra::{Monomial, MonomialOrder, Poly, Ring, SortedPoly};

/// A minimal standard basis under the local degree-reverse-lexicographic
/// order, with monic leading coefficients.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<SortedPoly>,
    /// `N` with `m^N` contained in the ideal, once known.
    bound: Option<u32>,
}

impl StandardBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> Vec<Poly> {
        self.elements.iter().map(|e| e.to_poly(&self.ring)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().filter_map(|e| e.leading_monomial().cloned()).collect()
    }

    /// Weak normal form of `p`: zero exactly when `p` lies in the ideal.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let sorted = SortedPoly::from_poly(p, &self.order);
        let with_ecart: Vec<(SortedPoly, u32)> = self.elements.iter().map(|g| (g.clone(), g.ecart())).collect();
        mora_normal_form(sorted, &with_ecart, &self.order, self.bound, &mut Budget::unlimited())
            .expect("no budget")
            .to_poly(&self.ring)
    }
}

/// Mora's normal form. Reducers with too large an ecart get `h` appended to
/// the reducer set before the step, which is what forces termination under a
/// non-well-order.
///
/// With `bound = Some(N)` the caller guarantees `m^N` lies in the ideal;
/// terms of degree `>= N` are dropped and plain division terminates.
pub(crate) fn mora_normal_form(
    f: SortedPoly,
    basis: &[(SortedPoly, u32)],
    order: &MonomialOrder,
    bound: Option<u32>,
    budget: &mut Budget,
) -> Option<SortedPoly> {
    let mut h = f;
    if let Some(n) = bound {
        h.truncate(n);
    }
    let mut extra: Vec<(SortedPoly, u32)> = Vec::new();
    loop {
        let lm = match h.leading_monomial() {
            Some(m) => m.clone(),
            None => return Some(h),
        };
        let mut best: Option<(usize, u32)> = None;
        for (k, (g, e)) in basis.iter().chain(extra.iter()).enumerate() {
            if g.leading_monomial().is_some_and(|gl| gl.divides(&lm)) && best.is_none_or(|(_, be)| *e < be) {
                best = Some((k, *e));
            }
        }
        let (k, ecart_g) = match best {
            Some(b) => b,
            None => return Some(h),
        };
        let g = if k < basis.len() { basis[k].0.clone() } else { extra[k - basis.len()].0.clone() };
        let ecart_h = h.ecart();
        if bound.is_none() && ecart_g > ecart_h {
            extra.push((h.clone(), ecart_h));
        }
        let factor = g.leading_monomial().unwrap().quotient_of(&lm).unwrap();
        let c = h.leading_coefficient().unwrap() / g.leading_coefficient().unwrap();
        h = h.sub_scaled(&c, &factor, &g, order, bound);
        if !budget.spend(&h) {
            return None;
        }
    }
}

/// Work limit for a Mora run: reduction steps and coefficient bit length.
/// Deterministic, unlike a timeout.
pub(crate) struct Budget {
    steps: u64,
    max_height: u64,
}

impl Budget {
    pub(crate) fn unlimited() -> Self {
        Budget { steps: u64::MAX, max_height: u64::MAX }
    }

    pub(crate) fn new(steps: u64, max_height: u64) -> Self {
        Budget { steps, max_height }
    }

    fn spend(&mut self, h: &SortedPoly) -> bool {
        if self.steps == 0 {
            return false;
        }
        self.steps -= 1;
        self.max_height == u64::MAX || h.terms().iter().all(|(_, c)| c.height() <= self.max_height)
    }
}

fn s_polynomial(f: &SortedPoly, g: &SortedPoly, order: &MonomialOrder, bound: Option<u32>) -> SortedPoly {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let lcm = lf.lcm(lg);
    let mf = lf.quotient_of(&lcm).unwrap();
    let mg = lg.quotient_of(&lcm).unwrap();
    let cf = g.leading_coefficient().unwrap();
    let cg = f.leading_coefficient().unwrap();
    let left = SortedPoly::zero().sub_scaled(&-cf, &mf, f, order, bound);
    left.sub_scaled(cg, &mg, g, order, bound)
}

struct Pair {
    i: usize,
    j: usize,
    lcm_degree: u32,
    ecart: u32,
}

/// Computes a standard basis of the ideal generated by `gens` in the local
/// ring at the origin.
///
/// Pairs are processed lowest lcm degree first, then lowest ecart, then by
/// generator index, so the output is a function of the generator order.
///
/// As soon as the leading monomials found so far contain every monomial of
/// some degree `N`, Nakayama gives `m^N ⊆ I` and all further arithmetic is
/// done modulo `m^N`.
pub fn mora_standard_basis(ring: &Ring, gens: &[Poly]) -> StandardBasis {
    mora_with_bound(ring, gens, None, &mut Budget::unlimited()).expect("no budget")
}

/// Mora's algorithm in `O / m^initial`. The result is a standard basis of
/// `I + m^initial` with the terms of degree `>= initial` dropped, or `None`
/// once `budget` runs out.
pub(crate) fn mora_with_bound(
    ring: &Ring,
    gens: &[Poly],
    initial: Option<u32>,
    budget: &mut Budget,
) -> Option<StandardBasis> {
    let order = MonomialOrder::local();
    let mut basis: Vec<(SortedPoly, u32)> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut bound = initial;
    let mut corner_found = false;

    let push = |h: SortedPoly, basis: &mut Vec<(SortedPoly, u32)>, pairs: &mut Vec<Pair>| {
        let mut h = h;
        h.make_monic();
        let lh = h.leading_monomial().unwrap().clone();
        let eh = h.ecart();
        let j = basis.len();
        for (i, (g, eg)) in basis.iter().enumerate() {
            let lg = g.leading_monomial().unwrap();
            if lg.is_coprime(&lh) {
                continue;
            }
            pairs.push(Pair { i, j, lcm_degree: lg.lcm(&lh).degree(), ecart: (*eg).max(eh) });
        }
        basis.push((h, eh));
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let mut sp = SortedPoly::from_poly(g, &order);
        if let Some(n) = bound {
            sp.truncate(n);
            if sp.is_zero() {
                continue;
            }
        }
        if sp.leading_monomial().unwrap().is_one() {
            return Some(unit_basis(ring));
        }
        push(sp, &mut basis, &mut pairs);
    }
    update_bound(&basis, ring.nvars(), &mut bound, &mut corner_found);

    while !pairs.is_empty() {
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.lcm_degree, p.ecart, p.i, p.j))
            .unwrap();
        let pair = pairs.swap_remove(idx);
        let sp = s_polynomial(&basis[pair.i].0, &basis[pair.j].0, &order, bound);
        let h = mora_normal_form(sp, &basis, &order, bound, budget)?;
        if h.is_zero() {
            continue;
        }
        if h.leading_monomial().unwrap().is_one() {
            return Some(unit_basis(ring));
        }
        push(h, &mut basis, &mut pairs);
        update_bound(&basis, ring.nvars(), &mut bound, &mut corner_found);
    }

    Some(minimalize(ring, order, basis.into_iter().map(|(g, _)| g).collect(), bound))
}

fn update_bound(basis: &[(SortedPoly, u32)], nvars: usize, bound: &mut Option<u32>, corner_found: &mut bool) {
    if *corner_found {
        return;
    }
    let leading: Vec<Monomial> = basis.iter().filter_map(|(g, _)| g.leading_monomial().cloned()).collect();
    if let Some(ms) = super::standard_monomials(&leading, nvars) {
        let n = ms.iter().map(Monomial::degree).max().map_or(1, |d| d + 1);
        *bound = Some(bound.map_or(n, |b| b.min(n)));
        *corner_found = true;
    }
}

fn unit_basis(ring: &Ring) -> StandardBasis {
    let order = MonomialOrder::local();
    StandardBasis {
        ring: ring.clone(),
        elements: vec![SortedPoly::from_poly(&Poly::one(ring), &order)],
        order,
        bound: Some(0),
    }
}

fn minimalize(ring: &Ring, order: MonomialOrder, elements: Vec<SortedPoly>, bound: Option<u32>) -> StandardBasis {
    let mut keep: Vec<SortedPoly> = Vec::new();
    for (k, g) in elements.iter().enumerate() {
        let lg = g.leading_monomial().unwrap();
        let redundant = elements.iter().enumerate().any(|(j, h)| {
            let lh = h.leading_monomial().unwrap();
            j != k && lh.divides(lg) && (lh != lg || j < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort_by(|a, b| order.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    StandardBasis { ring: ring.clone(), order, elements: keep, bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    fn p(terms: &[(&[u32], i64)]) -> Poly {
        Poly::from_int_terms(&Ring::source(), terms)
    }

    #[test]
    fn maximal_ideal_is_its_own_basis() {
        let sb = mora_standard_basis(&Ring::source(), &[p(&[(&[1, 0], 1)]), p(&[(&[0, 1], 1)])]);
        assert_eq!(sb.leading_monomials(), vec![Monomial::new(&[1, 0]), Monomial::new(&[0, 1])]);
    }

    #[test]
    fn principal_ideal() {
        // s^2 - t^3: leading term s^2 in the local order.
        let f = p(&[(&[2, 0], 1), (&[0, 3], -1)]);
        let sb = mora_standard_basis(&Ring::source(), std::slice::from_ref(&f));
        assert_eq!(sb.elements(), vec![f]);
    }

    #[test]
    fn unit_detected_through_ecart() {
        // s - s^2 is s times a unit; (s - s^2, t) has codimension 1.
        let sb = mora_standard_basis(&Ring::source(), &[p(&[(&[1, 0], 1), (&[2, 0], -1)]), p(&[(&[0, 1], 1)])]);
        assert_eq!(sb.len(), 2);
        // 1 + s is a unit.
        let sb = mora_standard_basis(&Ring::source(), &[p(&[(&[0, 0], 1), (&[1, 0], 1)])]);
        assert_eq!(sb.leading_monomials(), vec![Monomial::one(2)]);
    }

    #[test]
    fn normal_form_of_members_vanishes() {
        let gens = [p(&[(&[1, 1], 1)]), p(&[(&[3, 0], 1), (&[0, 3], 1)])];
        let sb = mora_standard_basis(&Ring::source(), &gens);
        let member = &(&gens[0] * &p(&[(&[0, 0], 2), (&[1, 2], 1)])) + &gens[1].scale(&Scalar::from_int(-3));
        assert!(sb.normal_form(&member).is_zero());
        assert!(!sb.normal_form(&p(&[(&[1, 0], 1)])).is_zero());
    }
}
