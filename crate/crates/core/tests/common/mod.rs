#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smale_core::corpus::{all_families, entry};
use smale_core::invariants::crosscap_count;
use smale_core::local::intersection_multiplicity;
use smale_core::parser::parse_poly;
use smale_core::{Codim, Germ, LocalIdeal, Monomial, Poly, Ring, Scalar};

pub fn src() -> Ring {
    Ring::source()
}

pub fn poly(text: &str) -> Poly {
    parse_poly(text, &src()).unwrap()
}

pub fn germ(a: &str, b: &str, c: &str) -> Germ {
    Germ::new([poly(a), poly(b), poly(c)], None).unwrap()
}

pub fn small_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let re = rng.gen_range(-3i64..=3);
    if rng.gen_bool(0.1) {
        let im = rng.gen_range(-2i64..=2);
        &Scalar::from_int(re) + &(&Scalar::i() * &Scalar::from_int(im))
    } else {
        Scalar::from_int(re)
    }
}

/// Sparse polynomial in `(s, t)` with terms of degree `lo..=hi`.
pub fn random_poly(rng: &mut ChaCha8Rng, lo: u32, hi: u32, terms: usize) -> Poly {
    let ring = src();
    let mut p = Poly::zero(&ring);
    for _ in 0..terms {
        let d = rng.gen_range(lo..=hi);
        let a = rng.gen_range(0..=d);
        p.add_term(Monomial::new(&[a, d - a]), &small_scalar(rng));
    }
    p
}

/// Random germ with components of degree at most `max_degree`; the linear
/// part is dropped from some components so that all coranks occur.
pub fn random_germ(rng: &mut ChaCha8Rng, max_degree: u32) -> Germ {
    let comps = std::array::from_fn(|_| {
        let lo = if rng.gen_bool(0.3) { 1 } else { 2 };
        let n = rng.gen_range(1..=4);
        random_poly(rng, lo, max_degree, n)
    });
    Germ::new(comps, None).unwrap()
}

pub fn random_invertible_2(rng: &mut ChaCha8Rng) -> [[Scalar; 2]; 2] {
    loop {
        let m = [[small_scalar(rng), small_scalar(rng)], [small_scalar(rng), small_scalar(rng)]];
        let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        if !det.is_zero() {
            return m;
        }
    }
}

pub fn random_invertible_3(rng: &mut ChaCha8Rng) -> [[Scalar; 3]; 3] {
    loop {
        let m: [[Scalar; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| small_scalar(rng)));
        let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
        let det = &(&(&m[0][0] * &minor(1, 2, 2, 1)) - &(&m[0][1] * &minor(0, 2, 2, 0))) + &(&m[0][2] * &minor(0, 1, 1, 0));
        if !det.is_zero() {
            return m;
        }
    }
}

pub fn linear_change(phi: &Germ, a: &[[Scalar; 2]; 2], b: &[[Scalar; 3]; 3]) -> Germ {
    let ring = src();
    let s = Poly::variable(&ring, 0);
    let t = Poly::variable(&ring, 1);
    let u = &s.scale(&a[0][0]) + &t.scale(&a[0][1]);
    let v = &s.scale(&a[1][0]) + &t.scale(&a[1][1]);
    phi.precompose(&u, &v).unwrap().postcompose_linear(b).unwrap()
}

/// Corpus germs that come with explicit components.
pub fn corpus_germs(max_k: u32) -> Vec<Germ> {
    all_families(max_k).into_iter().filter_map(|f| entry(f).unwrap().germ).collect()
}

/// Checks `i(f1·f2, h) = i(f1, h) + i(f2, h)` and
/// `codim(f1f2, g, f1h') = codim(f2, g, h') + codim(f1, g)` on `wanted`
/// random instances each with finite right-hand sides. Returns the
/// counterexamples.
pub fn additivity_failures(seed: u64, wanted: usize) -> Vec<String> {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a_done = 0;
    while a_done < wanted {
        let f1 = random_poly(&mut rng, 1, 3, 2);
        let f2 = random_poly(&mut rng, 1, 3, 2);
        let h = random_poly(&mut rng, 1, 3, 2);
        let (Ok(Codim::Finite(x)), Ok(Codim::Finite(y))) = (intersection_multiplicity(&f1, &h), intersection_multiplicity(&f2, &h))
        else {
            continue;
        };
        if intersection_multiplicity(&(&f1 * &f2), &h) != Ok(Codim::Finite(x + y)) {
            failures.push(format!("(a) {f1} | {f2} | {h}"));
        }
        a_done += 1;
    }
    let mut b_done = 0;
    while b_done < wanted {
        let f1 = random_poly(&mut rng, 1, 3, 2);
        let f2 = random_poly(&mut rng, 1, 3, 2);
        let g = random_poly(&mut rng, 1, 3, 2);
        let h = random_poly(&mut rng, 1, 3, 2);
        let left = LocalIdeal::new(vec![&f1 * &f2, g.clone(), &f1 * &h]).unwrap().codim();
        let r1 = LocalIdeal::new(vec![f2.clone(), g.clone(), h.clone()]).unwrap().codim();
        let r2 = LocalIdeal::new(vec![f1.clone(), g.clone()]).unwrap().codim();
        let (Codim::Finite(x), Codim::Finite(y)) = (r1, r2) else { continue };
        if left != Codim::Finite(x + y) {
            failures.push(format!("(b) {f1} | {f2} | {g} | {h}"));
        }
        b_done += 1;
    }
    failures
}

/// `count` random admissible germs with components of degree at most
/// `max_degree`, and how many candidates were drawn.
pub fn random_admissible_germs(seed: u64, count: usize, max_degree: u32) -> (Vec<Germ>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut drawn = 0;
    while out.len() < count {
        let g = random_germ(&mut rng, max_degree);
        drawn += 1;
        if crosscap_count(&g).is_ok() {
            out.push(g);
        }
    }
    (out, drawn)
}
