//! The push-forward module `Φ_* O_2` over `O_3`, its Fitting ideals and the
//! triple-point count `T(Φ) = dim O_3 / F_2`.
//!
//! Construction. Pick linear combinations `ℓ1, ℓ2` of the components with
//! `(ℓ1, ℓ2)` of finite codimension `n` in `O_2`, and let `ℓ3` be the
//! remaining component. Then `O_2` is free over `C{u, v}` (via `u = ℓ1`,
//! `v = ℓ2`) on the standard monomials `E` of `(ℓ1, ℓ2)`, and as a module over
//! `C{u, v, w}` it is presented by the square matrix `w·I - Λ(u, v)`, where
//! `Λ` is multiplication by `ℓ3` in the basis `E`. Unit pivots are then
//! eliminated until the presentation is minimal, leaving `r × r` with `r` the
//! local degree.
//!
//! Everything is computed modulo `m^N`. Since `c_k = dim O / (F + m^k)`
//! increases strictly in `k` until it stabilises, `c_N < N` proves that it
//! has stabilised, and then `c_N = dim O / F` exactly. That is the
//! `certified` flag.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::algebra::{Monomial, Poly, Ring, Scalar};
use crate::germ::Germ;
use crate::groebner::elimination_ideal;
use crate::invariants::grading_weights;
use crate::local::{Codim, LocalIdeal, TruncatedBasis};

pub const DEFAULT_DEGREE_BOUND: u32 = 24;
/// Truncation degree of the first attempt.
pub const INITIAL_TRUNCATION: u32 = 8;
/// Largest module rank whose minors are expanded.
pub const DEFAULT_MAX_RANK: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FittingError {
    #[error("germ not finite: the local degree is infinite")]
    NotFinite,
    #[error("module rank {rank} exceeds the supported maximum {max}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("no linear projection of the components with finite fibre was found")]
    NoFiniteProjection,
}

/// A presentation of `Φ_* O_2` over `O_3`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub rank: usize,
    /// `rank` rows; column `c` is a relation `Σ_i matrix[i][c]·e_i = 0`.
    pub matrix: Vec<Vec<Poly>>,
    /// Monomials in `(s, t)` representing the generators `e_i`.
    pub basis_monomials: Vec<Monomial>,
    /// `None` when the germ is weighted homogeneous and the matrix is exact;
    /// otherwise the matrix is exact modulo `m^N` for this `N`.
    pub truncation_degree: Option<u32>,
    /// The `F_2` codimension computed from this presentation is exact.
    pub certified: bool,
    f2_codim: Codim,
}

impl Presentation {
    fn bound(&self) -> u32 {
        self.truncation_degree.unwrap_or(u32::MAX)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleCount {
    Finite { value: u64, certified: bool },
    Infinite,
    NotFinite,
}

impl TripleCount {
    pub fn value(self) -> Option<u64> {
        match self {
            TripleCount::Finite { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_certified(self) -> bool {
        matches!(self, TripleCount::Finite { certified: true, .. })
    }
}

/// `dim O_2 / (Φ_1, Φ_2, Φ_3)`.
pub fn local_degree(phi: &Germ) -> Codim {
    LocalIdeal::new(phi.components().to_vec()).expect("source ring").codim()
}

struct Projection {
    /// Rows of an integer change of target coordinates: `(u, v, w) = A·(X, Y, Z)`.
    a: [[i64; 3]; 3],
    l: [Poly; 3],
    basis: Vec<Monomial>,
    /// `m^rho ⊆ (ℓ1, ℓ2)`.
    rho: u32,
}

fn combine(phi: &Germ, row: &[i64; 3]) -> Poly {
    let ring = Ring::source();
    (0..3).fold(Poly::zero(&ring), |acc, c| &acc + &phi.components()[c].scale(&Scalar::from_int(row[c])))
}

/// With `degrees` given, only combinations of components of equal weighted
/// degree are allowed, so that `ℓ1, ℓ2, ℓ3` stay weighted homogeneous.
fn choose_projection(phi: &Germ, r: u64, degrees: Option<[Option<u64>; 3]>) -> Option<Projection> {
    const COEFFS: [(i64, i64, i64); 10] =
        [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0), (0, 0, 1), (1, 2, 0), (2, 1, 1), (1, -2, 3), (3, 1, -2)];
    let graded = |row: &[i64; 3]| match degrees {
        None => true,
        Some(d) => {
            let mut seen = (0..3).filter(|&c| row[c] != 0).filter_map(|c| d[c]);
            let first = seen.next();
            seen.all(|x| Some(x) == first)
        }
    };
    let mut best: Option<(u64, [[i64; 3]; 3])> = None;
    'search: for k in [2usize, 1, 0] {
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        for &(alpha, beta, gamma) in &COEFFS {
            let mut a = [[0i64; 3]; 3];
            a[0][i] = 1;
            a[0][k] = alpha;
            a[1][j] = 1;
            a[1][k] = beta;
            a[1][i] = gamma;
            a[2][k] = 1;
            if !graded(&a[0]) || !graded(&a[1]) {
                continue;
            }
            let pair = vec![combine(phi, &a[0]), combine(phi, &a[1])];
            if let Codim::Finite(n) = LocalIdeal::new(pair).expect("source ring").codim() {
                if best.is_none_or(|(bn, _)| n < bn) {
                    best = Some((n, a));
                }
                if n == r {
                    break 'search;
                }
            }
        }
    }
    let (_, a) = best?;
    let l = [combine(phi, &a[0]), combine(phi, &a[1]), combine(phi, &a[2])];
    let ideal = LocalIdeal::new(vec![l[0].clone(), l[1].clone()]).expect("source ring");
    let basis = ideal.standard_monomials().expect("finite codimension");
    let rho = basis.iter().map(Monomial::degree).max().unwrap_or(0) + 1;
    Some(Projection { a, l, basis, rho })
}

#[derive(Clone, Copy)]
enum Precision {
    /// Weighted homogeneous input: every division is exact below this total
    /// degree and the expansion terminates on its own.
    Graded { bound: u32 },
    /// Series in `(u, v)` modulo degree `n`.
    Truncated(u32),
}

/// `Λ[i][j]`: coefficient of `e_i` in `ℓ3·e_j`, as a series in `(u, v)`.
///
/// `f = Σ F_ab·ℓ1^a·ℓ2^b` is expanded by repeatedly dividing `F_ab` by
/// `(ℓ1, ℓ2)`: the remainder gives the `u^a v^b` coefficients, the two
/// quotients are pushed to `F_(a+1)b` and `F_a(b+1)`. In truncated mode,
/// `m^(rho·k) ⊆ (ℓ1, ℓ2)^k` bounds the source precision needed.
fn multiplication_matrix(p: &Projection, precision: Precision) -> Vec<Vec<Poly>> {
    let src = Ring::source();
    let uv = Ring::new(&["u", "v"]);
    let size = p.basis.len();
    let bound = match precision {
        Precision::Graded { bound } => bound,
        Precision::Truncated(n) => p.rho * n,
    };
    let tb = TruncatedBasis::new(&src, &[p.l[0].clone(), p.l[1].clone()], bound);
    let index: HashMap<&Monomial, usize> = p.basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut lambda = vec![vec![Poly::zero(&uv); size]; size];
    for (j, e) in p.basis.iter().enumerate() {
        let mut pending: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
        pending.insert((0, 0), p.l[2].mul_monomial(e, &Scalar::one()));
        while let Some(((d, a), f)) = pending.pop_first() {
            let b = d - a;
            let f = match precision {
                Precision::Graded { .. } => f,
                Precision::Truncated(n) => f.truncate(p.rho * (n - d)),
            };
            if f.is_zero() {
                continue;
            }
            let div = tb.divide(&f);
            let uvab = Monomial::new(&[a, b]);
            for (m, c) in &div.remainder {
                lambda[index[m]][j].add_term(uvab.clone(), c);
            }
            if let Precision::Truncated(n) = precision {
                if d + 1 >= n {
                    continue;
                }
            }
            for (key, q) in [((d + 1, a + 1), &div.quotients[0]), ((d + 1, a), &div.quotients[1])] {
                if q.is_zero() {
                    continue;
                }
                let slot = pending.entry(key).or_insert_with(|| Poly::zero(&src));
                *slot = &*slot + q;
            }
        }
    }
    lambda
}

fn series_inverse(f: &Poly, n: u32) -> Poly {
    let ring = f.ring().clone();
    let c0inv = f.constant_term().inv().expect("unit");
    let g = (&f.scale(&c0inv) - &Poly::one(&ring)).scale(&Scalar::from_int(-1));
    let mut sum = Poly::one(&ring);
    let mut power = Poly::one(&ring);
    for _ in 1..n {
        power = power.mul_truncated(&g, n);
        if power.is_zero() {
            break;
        }
        sum = &sum + &power;
    }
    sum.scale(&c0inv)
}

/// Eliminates unit entries in the rows not labelled by `keep`.
fn minimalize(mut m: Vec<Vec<Poly>>, mut rows: Vec<Monomial>, keep: &[Monomial], n: u32) -> (Vec<Vec<Poly>>, Vec<Monomial>) {
    loop {
        let pivot = (0..rows.len())
            .filter(|&i| !keep.contains(&rows[i]))
            .find_map(|i| (0..m[i].len()).find(|&j| !m[i][j].constant_term().is_zero()).map(|j| (i, j)));
        let Some((pi, pj)) = pivot else { break };
        let inv = series_inverse(&m[pi][pj], n);
        let pivot_row = m[pi].clone();
        for (a, row) in m.iter_mut().enumerate() {
            if a == pi || row[pj].is_zero() {
                continue;
            }
            let factor = row[pj].mul_truncated(&inv, n);
            for (b, entry) in row.iter_mut().enumerate() {
                if b == pj || pivot_row[b].is_zero() {
                    continue;
                }
                *entry = &*entry - &factor.mul_truncated(&pivot_row[b], n);
            }
        }
        m.remove(pi);
        rows.remove(pi);
        for row in &mut m {
            row.remove(pj);
        }
    }
    (m, rows)
}

/// Minimal presentation; `n = u32::MAX` for the graded case.
fn presentation_at(proj: &Projection, keep: &[Monomial], precision: Precision) -> (Vec<Vec<Poly>>, Vec<Monomial>) {
    let target = Ring::target();
    let n = match precision {
        Precision::Graded { .. } => u32::MAX,
        Precision::Truncated(n) => n,
    };
    let lambda = multiplication_matrix(proj, precision);
    let coord = |row: &[i64; 3]| {
        (0..3).fold(Poly::zero(&target), |acc, c| &acc + &Poly::variable(&target, c).scale(&Scalar::from_int(row[c])))
    };
    let (u, v, w) = (coord(&proj.a[0]), coord(&proj.a[1]), coord(&proj.a[2]));
    let size = proj.basis.len();
    let mut m = vec![vec![Poly::zero(&target); size]; size];
    for i in 0..size {
        for j in 0..size {
            let mut entry = -&lambda[i][j].compose(&[u.clone(), v.clone()]).expect("two variables");
            if i == j {
                entry = &entry + &w;
            }
            m[i][j] = entry.truncate(n);
        }
    }
    minimalize(m, proj.basis.clone(), keep, n)
}

/// Computes a minimal presentation.
///
/// Weighted-homogeneous germs get an exact presentation. Otherwise the
/// truncation degree doubles from [`INITIAL_TRUNCATION`] up to
/// `degree_bound` until the `F_2` codimension is certified.
pub fn pushforward_presentation(phi: &Germ, degree_bound: u32) -> Result<Presentation, FittingError> {
    pushforward_presentation_with(phi, degree_bound, DEFAULT_MAX_RANK)
}

pub fn pushforward_presentation_with(phi: &Germ, degree_bound: u32, max_rank: usize) -> Result<Presentation, FittingError> {
    let r = local_degree(phi).finite().ok_or(FittingError::NotFinite)?;
    if r as usize > max_rank {
        return Err(FittingError::RankTooLarge { rank: r as usize, max: max_rank });
    }
    let keep = LocalIdeal::new(phi.components().to_vec())
        .expect("source ring")
        .standard_monomials()
        .expect("finite local degree");

    if let Some((w1, w2)) = grading_weights(phi.components()) {
        let wdeg = |p: &Poly| p.weighted_degree(&[w1, w2]).ok().flatten();
        let degrees = phi.components().clone().map(|c| wdeg(&c));
        if let Some(proj) = choose_projection(phi, r, Some(degrees)) {
            let top = proj.basis.iter().map(|e| e.weighted_degree(&[w1, w2])).max().unwrap_or(0);
            let reach = wdeg(&proj.l[2]).unwrap_or(0) + top;
            let bound = (reach / u64::from(w1.min(w2)) + 1) as u32;
            let (matrix, basis_monomials) = presentation_at(&proj, &keep, Precision::Graded { bound });
            let f2_codim = minors_ideal(&matrix, 2, u32::MAX).codim();
            return Ok(Presentation {
                rank: matrix.len(),
                matrix,
                basis_monomials,
                truncation_degree: None,
                certified: true,
                f2_codim,
            });
        }
    }

    let proj = choose_projection(phi, r, None).ok_or(FittingError::NoFiniteProjection)?;
    let ceiling = degree_bound.max(1);
    let mut n = INITIAL_TRUNCATION.min(ceiling);
    loop {
        let (matrix, basis_monomials) = presentation_at(&proj, &keep, Precision::Truncated(n));
        let f2_codim = minors_ideal(&matrix, 2, n).plus_power_of_maximal(n).codim();
        let certified = matches!(f2_codim, Codim::Finite(c) if c < n as u64);
        if certified || n >= ceiling {
            return Ok(Presentation {
                rank: matrix.len(),
                matrix,
                basis_monomials,
                truncation_degree: Some(n),
                certified,
                f2_codim,
            });
        }
        n = n.saturating_mul(2).min(ceiling);
    }
}

/// All `k × k` minors, by Laplace expansion along the first row of each
/// submatrix, memoised on (row set, column set).
fn minors(m: &[Vec<Poly>], k: usize, n: u32) -> Vec<Poly> {
    let target = Ring::target();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if k == 0 {
        return vec![Poly::one(&target)];
    }
    if k > rows || k > cols {
        return Vec::new();
    }
    let mut memo: HashMap<(u32, u32), Poly> = HashMap::new();
    let row_sets = subsets(rows, k);
    let col_sets = subsets(cols, k);
    let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
    for &rs in &row_sets {
        for &cs in &col_sets {
            let d = minor(m, rs, cs, n, &mut memo);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

fn minor(m: &[Vec<Poly>], rs: u32, cs: u32, n: u32, memo: &mut HashMap<(u32, u32), Poly>) -> Poly {
    if rs == 0 {
        return Poly::one(&Ring::target());
    }
    if let Some(p) = memo.get(&(rs, cs)) {
        return p.clone();
    }
    let r0 = rs.trailing_zeros() as usize;
    let rest = rs & !(1 << r0);
    let mut acc = Poly::zero(&Ring::target());
    let mut sign_pos = 0;
    for c in 0..32 {
        if cs & (1 << c) == 0 {
            continue;
        }
        let entry = &m[r0][c];
        if !entry.is_zero() {
            let sub = minor(m, rest, cs & !(1 << c), n, memo);
            if !sub.is_zero() {
                let prod = entry.mul_truncated(&sub, n);
                acc = if sign_pos % 2 == 0 { &acc + &prod } else { &acc - &prod };
            }
        }
        sign_pos += 1;
    }
    memo.insert((rs, cs), acc.clone());
    acc
}

fn subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..(1u32 << n)).filter(|s| s.count_ones() as usize == k).collect()
}

fn minors_ideal(m: &[Vec<Poly>], k: usize, n: u32) -> LocalIdeal {
    let target = Ring::target();
    let r = m.len();
    if k >= r {
        return LocalIdeal::new(vec![Poly::one(&target)]).expect("one generator");
    }
    let mut gens = minors(m, r - k, n);
    if gens.is_empty() {
        gens.push(Poly::zero(&target));
    }
    LocalIdeal::new(gens).expect("target ring")
}

/// `F_k`: the ideal of `(r - k)`-minors; exact modulo `m^N` for a truncated
/// presentation.
pub fn fitting_ideal(p: &Presentation, k: usize) -> LocalIdeal {
    minors_ideal(&p.matrix, k, p.bound())
}

/// Whether some power `h^j`, `j <= rank`, lies in `F_0` (plus `m^N` for a
/// truncated presentation). Powers with `j·ord(h) >= N` lie in `m^N`
/// trivially and are not tried.
pub fn f0_radical_contains(p: &Presentation, h: &Poly) -> bool {
    let n = p.bound();
    let Some(ord) = h.order() else { return true };
    let f0 = match p.truncation_degree {
        Some(n) => fitting_ideal(p, 0).plus_power_of_maximal(n),
        None => fitting_ideal(p, 0),
    };
    let mut power = Poly::one(h.ring());
    for j in 1..=p.rank as u32 {
        if j * ord >= n {
            break;
        }
        power = power.mul_truncated(h, n);
        if f0.contains(&power) {
            return true;
        }
    }
    false
}

/// [`triple_point_count_with`] at [`DEFAULT_DEGREE_BOUND`].
pub fn triple_point_count(phi: &Germ) -> Result<TripleCount, FittingError> {
    triple_point_count_with(phi, DEFAULT_DEGREE_BOUND)
}

/// `T(Φ) = dim O_3 / F_2`.
///
/// Uncertified results report the codimension of the truncated minors
/// themselves, or `Infinite` when that is infinite.
pub fn triple_point_count_with(phi: &Germ, degree_bound: u32) -> Result<TripleCount, FittingError> {
    let p = match pushforward_presentation(phi, degree_bound) {
        Ok(p) => p,
        Err(FittingError::NotFinite) => return Ok(TripleCount::NotFinite),
        Err(e) => return Err(e),
    };
    Ok(triple_point_count_of(&p))
}

pub fn triple_point_count_of(p: &Presentation) -> TripleCount {
    match (p.certified, p.f2_codim) {
        (true, Codim::Finite(value)) => TripleCount::Finite { value, certified: true },
        (true, Codim::Infinite) => TripleCount::Infinite,
        (false, _) => match fitting_ideal(p, 2).codim() {
            Codim::Finite(value) => TripleCount::Finite { value, certified: false },
            Codim::Infinite => TripleCount::Infinite,
        },
    }
}

/// Generator of `(X - Φ_1, Y - Φ_2, Z - Φ_3) ∩ C[X, Y, Z]`, monic in
/// degree-reverse-lexicographic order.
pub fn image_equation(phi: &Germ) -> Result<Poly, FittingError> {
    if !local_degree(phi).is_finite() {
        return Err(FittingError::NotFinite);
    }
    let graph = Ring::graph();
    let gens: Vec<Poly> = phi
        .components()
        .iter()
        .enumerate()
        .map(|(k, c)| &Poly::variable(&graph, 2 + k) - &c.embed(&graph, &[0, 1]))
        .collect();
    let target = Ring::target();
    let elim = elimination_ideal(&graph, &gens, 2, &target);
    let g = elim
        .into_iter()
        .min_by_key(|p| (p.total_degree(), p.len()))
        .ok_or(FittingError::NotFinite)?;
    Ok(g.monic(&crate::algebra::MonomialOrder::global()))
}
