//! Buchberger's algorithm for global monomial orders, and elimination.

use crate::algebra::{Monomial, MonomialOrder, Poly, Ring, Scalar, SortedPoly};

/// A reduced Gröbner basis under a global order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<SortedPoly>,
}

impl GroebnerBasis {
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

    /// Fully reduced remainder of `p`.
    pub fn reduce(&self, p: &Poly) -> Poly {
        full_reduce(SortedPoly::from_poly(p, &self.order), &self.elements, &self.order).to_poly(&self.ring)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }
}

fn find_divisor<'a>(m: &Monomial, basis: &'a [SortedPoly]) -> Option<&'a SortedPoly> {
    basis.iter().find(|g| g.leading_monomial().is_some_and(|l| l.divides(m)))
}

fn full_reduce(f: SortedPoly, basis: &[SortedPoly], order: &MonomialOrder) -> SortedPoly {
    let mut h = f;
    let mut done: Vec<(Monomial, Scalar)> = Vec::new();
    while let Some(lm) = h.leading_monomial().cloned() {
        match find_divisor(&lm, basis) {
            Some(g) => {
                let factor = g.leading_monomial().unwrap().quotient_of(&lm).unwrap();
                let c = h.leading_coefficient().unwrap() / g.leading_coefficient().unwrap();
                h = h.sub_scaled(&c, &factor, g, order, None);
            }
            None => done.push(h.pop_leading().unwrap()),
        }
    }
    SortedPoly::from_sorted_terms(done)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Computes the reduced Gröbner basis of `gens` under a global `order`.
///
/// Pairs are selected by least sugar, ties broken by the lcm under `order`
/// and then by index, so the result depends only on the input.
pub fn groebner_basis(ring: &Ring, gens: &[Poly], order: &MonomialOrder) -> GroebnerBasis {
    assert!(!order.is_local(), "Buchberger's algorithm needs a well-order");
    let mut basis: Vec<SortedPoly> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut live: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add = |h: SortedPoly, s: u32, basis: &mut Vec<SortedPoly>, sugar: &mut Vec<u32>, live: &mut Vec<bool>, pairs: &mut Vec<Pair>| {
        let mut h = h;
        h.make_monic();
        let lh = h.leading_monomial().unwrap().clone();
        let j = basis.len();
        // chain criterion: drop old pairs whose lcm is a proper multiple of
        // lcm with the new element on both sides
        pairs.retain(|p| {
            !(live[p.i]
                && live[p.j]
                && lh.divides(&p.lcm)
                && basis[p.i].leading_monomial().unwrap().lcm(&lh) != p.lcm
                && basis[p.j].leading_monomial().unwrap().lcm(&lh) != p.lcm)
        });
        for i in 0..j {
            if !live[i] {
                continue;
            }
            let lg = basis[i].leading_monomial().unwrap();
            if lg.is_coprime(&lh) {
                continue;
            }
            let lcm = lg.lcm(&lh);
            let si = sugar[i] + (lcm.degree() - lg.degree());
            let sj = s + (lcm.degree() - lh.degree());
            pairs.push(Pair { i, j, lcm, sugar: si.max(sj) });
        }
        for i in 0..j {
            if live[i] && lh.divides(basis[i].leading_monomial().unwrap()) {
                live[i] = false;
            }
        }
        basis.push(h);
        sugar.push(s);
        live.push(true);
    };

    for g in gens {
        let sp = SortedPoly::from_poly(g, order);
        let active: Vec<SortedPoly> = basis.iter().zip(&live).filter(|(_, &l)| l).map(|(b, _)| b.clone()).collect();
        let h = full_reduce(sp, &active, order);
        if h.is_zero() {
            continue;
        }
        let s = h.max_degree();
        add(h, s, &mut basis, &mut sugar, &mut live, &mut pairs);
    }

    while !pairs.is_empty() {
        let idx = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                p.sugar.cmp(&q.sugar).then_with(|| order.compare(&p.lcm, &q.lcm)).then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(idx);
        let (f, g) = (&basis[pair.i], &basis[pair.j]);
        let mf = f.leading_monomial().unwrap().quotient_of(&pair.lcm).unwrap();
        let mg = g.leading_monomial().unwrap().quotient_of(&pair.lcm).unwrap();
        let sp = SortedPoly::zero().sub_scaled(&-Scalar::one(), &mf, f, order, None).sub_scaled(&Scalar::one(), &mg, g, order, None);
        let h = top_reduce(sp, &basis, &live, order);
        if h.is_zero() {
            continue;
        }
        add(h, pair.sugar, &mut basis, &mut sugar, &mut live, &mut pairs);
    }

    let minimal: Vec<SortedPoly> = basis.into_iter().zip(live).filter(|(_, l)| *l).map(|(b, _)| b).collect();
    let mut reduced: Vec<SortedPoly> = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let lead = g.terms()[0].clone();
        let mut tail = g.clone();
        tail.pop_leading();
        let others: Vec<SortedPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p.clone()).collect();
        let tail = full_reduce(tail, &others, order);
        let mut terms = vec![lead];
        terms.extend(tail.terms().iter().cloned());
        reduced.push(SortedPoly::from_sorted_terms(terms));
    }
    reduced.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    GroebnerBasis { ring: ring.clone(), order: order.clone(), elements: reduced }
}

fn top_reduce(f: SortedPoly, basis: &[SortedPoly], live: &[bool], order: &MonomialOrder) -> SortedPoly {
    let mut h = f;
    while let Some(lm) = h.leading_monomial().cloned() {
        let g = basis
            .iter()
            .zip(live)
            .find(|(g, &l)| l && g.leading_monomial().is_some_and(|gl| gl.divides(&lm)))
            .map(|(g, _)| g);
        let Some(g) = g else { break };
        let factor = g.leading_monomial().unwrap().quotient_of(&lm).unwrap();
        let c = h.leading_coefficient().unwrap() / g.leading_coefficient().unwrap();
        h = h.sub_scaled(&c, &factor, g, order, None);
    }
    h
}

/// Generators of `I ∩ k[x_first_block..]`, re-expressed in `target`.
///
/// `gens` live in a ring whose first `first_block` variables are eliminated;
/// the remaining variables map in order onto `target`.
pub fn elimination_ideal(ring: &Ring, gens: &[Poly], first_block: usize, target: &Ring) -> Vec<Poly> {
    let order = MonomialOrder::elimination(first_block);
    let gb = groebner_basis(ring, gens, &order);
    let keep: Vec<usize> = (first_block..ring.nvars()).collect();
    gb.elements()
        .into_iter()
        .filter(|g| g.terms().all(|(m, _)| (0..first_block).all(|v| m.exponent(v) == 0)))
        .map(|g| {
            Poly::from_terms(
                target,
                g.terms().map(|(m, c)| (Monomial::new(&keep.iter().map(|&v| m.exponent(v)).collect::<Vec<_>>()), c.clone())),
            )
        })
        .collect()
}
