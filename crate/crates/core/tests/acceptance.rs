//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use num_rational::Rational64;
use smale_core::corpus::{all_families, entry, Family};
use smale_core::fitting::DEFAULT_DEGREE_BOUND;
use smale_core::invariants::{corank, crosscap_count, minors_ideal, smale_invariant, wh_crosscap_count, WHData};
use smale_core::local::{jet_codim_oracle, DEFAULT_N_MAX};
use smale_core::report::{build_report, InvariantReport};
use smale_core::Germ;

struct Outcome {
    problems: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { problems: Vec::new(), detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(what());
        }
    }

    fn within(&mut self, label: &str, elapsed: Duration, limit: Duration) {
        self.check(elapsed < limit, || format!("{label} took {elapsed:?}, limit {limit:?}"));
    }
}

fn run(number: u32, title: &str, body: impl FnOnce(&mut Outcome)) -> bool {
    let start = Instant::now();
    let mut outcome = Outcome::new();
    body(&mut outcome);
    let elapsed = start.elapsed();
    let pass = outcome.problems.is_empty();
    let verdict = if pass { "PASS" } else { "FAIL" };
    let detail = if outcome.detail.is_empty() { String::new() } else { format!(" [{}]", outcome.detail) };
    println!("{verdict} criterion {number:>2}: {title}{detail} ({:.2?})", elapsed);
    for p in &outcome.problems {
        println!("    {p}");
    }
    pass
}

fn report(g: &Germ, with_fitting: bool) -> (InvariantReport, Duration) {
    let start = Instant::now();
    let r = build_report(g, with_fitting, DEFAULT_DEGREE_BOUND);
    (r, start.elapsed())
}

fn family_germ(f: Family) -> Germ {
    entry(f).unwrap().germ.unwrap()
}

fn main() -> ExitCode {
    let mut all = true;

    all &= run(1, "cross cap: C = 1, T = 0, Omega = -1, l = 1, L = 1", |o| {
        let (r, t) = report(&family_germ(Family::CrossCap), true);
        let es = r.es_invariants.unwrap();
        let tv = r.t.as_ref().and_then(|t| t.value);
        o.check(r.c == Some(1), || format!("C = {:?}", r.c));
        o.check(tv == Some(0), || format!("T = {tv:?}"));
        o.check(r.smale == Some(-1), || format!("Omega = {:?}", r.smale));
        o.check(es.l == 1, || format!("l = {}", es.l));
        o.check(es.big_l == Some(1), || format!("L = {:?}", es.big_l));
        o.within("cross cap", t, Duration::from_secs(1));
    });

    all &= run(2, "Phi_-k: C = k, Omega = -k for k = 0..12", |o| {
        for k in 0..=12 {
            let (r, t) = report(&family_germ(Family::PhiMinusK(k)), false);
            o.check(r.c == Some(k as u64), || format!("k = {k}: C = {:?}", r.c));
            o.check(r.smale == Some(-(k as i64)), || format!("k = {k}: Omega = {:?}", r.smale));
            o.within(&format!("k = {k}"), t, Duration::from_secs(1));
        }
    });

    all &= run(3, "A family: C = k^2 - 1 for k = 2..10; k = 5 is a generator of 24Z", |o| {
        for k in 2..=10u32 {
            let (r, t) = report(&family_germ(Family::A(k)), false);
            o.check(r.c == Some((k * k - 1) as u64), || format!("k = {k}: C = {:?}", r.c));
            o.within(&format!("k = {k}"), t, Duration::from_secs(2));
            if k == 5 {
                let e = r.embedding.unwrap();
                o.check(r.smale == Some(-24) && e.in_24z && e.generator_multiple == Some(1), || {
                    format!("k = 5: Omega = {:?}, embedding {e:?}", r.smale)
                });
            }
        }
    });

    all &= run(4, "D family: C = 4n^2 + 12n - 1 for n = 1..6 by direct computation", |o| {
        for n in 1..=6u32 {
            let g = family_germ(Family::D(n));
            let start = Instant::now();
            let c = crosscap_count(&g);
            o.within(&format!("n = {n}"), start.elapsed(), Duration::from_secs(10));
            o.check(c == Ok((4 * n * n + 12 * n - 1) as u64), || format!("n = {n}: C = {c:?}"));
        }
    });

    all &= run(5, "E family closed form: 167, 383, 1079", |o| {
        for (d, want) in [((6, 8, 12), 167), ((8, 12, 18), 383), ((12, 20, 30), 1079)] {
            let start = Instant::now();
            let v = wh_crosscap_count(&WHData::new((1, 1), d));
            o.within(&format!("{d:?}"), start.elapsed(), Duration::from_millis(1));
            o.check(v == Rational64::from(want), || format!("{d:?}: {v}"));
        }
    });

    all &= run(6, "A1 full report: C = 3, T = 1, L = 0, Omega' = -3 = Omega", |o| {
        let (r, t) = report(&family_germ(Family::A(2)), true);
        let es = r.es_invariants.unwrap();
        let triple = r.t.clone().unwrap();
        o.check(r.c == Some(3), || format!("C = {:?}", r.c));
        o.check(triple.value == Some(1) && triple.certified, || format!("T = {triple:?}"));
        o.check(es.big_l == Some(0), || format!("L = {:?}", es.big_l));
        o.check(es.omega_prime == Some(-3) && r.smale == Some(-3), || {
            format!("Omega' = {:?}, Omega = {:?}", es.omega_prime, r.smale)
        });
        o.within("A1", t, Duration::from_secs(30));
    });

    let (random, drawn) = random_admissible_germs(2024, 200, 5);

    all &= run(7, "standard basis = jet oracle on the corpus and 200 random admissible germs", |o| {
        let start = Instant::now();
        let mut germs = corpus_germs(12);
        let corpus = germs.len();
        germs.extend(random.iter().cloned());
        for g in &germs {
            let sb = minors_ideal(g).codim();
            let jet = jet_codim_oracle(&minors_ideal(g), DEFAULT_N_MAX);
            o.check(jet == Ok(sb), || format!("{g}: standard basis {sb}, jet {jet:?}"));
        }
        o.within("oracle suite", start.elapsed(), Duration::from_secs(300));
        o.detail = format!("{corpus} corpus + {} random of {drawn} drawn, degree <= 5", random.len());
    });

    all &= run(8, "closed form = direct codim on weighted-homogeneous corpus germs", |o| {
        let mut families: Vec<Family> = (2..=10).map(Family::A).collect();
        families.extend((1..=6).map(Family::D));
        families.extend((1..=12).map(Family::PhiMinusK));
        for f in families {
            let e = entry(f).unwrap();
            let wh = e.wh.unwrap();
            let direct = crosscap_count(e.germ.as_ref().unwrap());
            let closed = wh_crosscap_count(&wh);
            o.check(direct.as_ref().is_ok_and(|&c| closed == Rational64::from(c as i64)), || {
                format!("{f}: closed form {closed}, direct {direct:?}")
            });
        }
    });

    all &= run(9, "additivity of intersection numbers, 100 instances of each identity", |o| {
        for f in additivity_failures(2025, 100) {
            o.problems.push(f);
        }
    });

    all &= run(10, "Omega <= 0 on every admissible input; corank 0 iff Omega = 0", |o| {
        let mut germs: Vec<Germ> = all_families(12).into_iter().filter_map(|f| entry(f).unwrap().germ).collect();
        germs.extend(random.iter().cloned());
        for g in &germs {
            let Ok(omega) = smale_invariant(g) else { continue };
            o.check(omega <= 0, || format!("{g}: Omega = {omega}"));
            o.check((corank(g) == 0) == (omega == 0), || format!("{g}: corank {} with Omega = {omega}", corank(g)));
        }
        // E entries carry only weights; all have corank 2 and C > 0
        for f in [6, 7, 8].map(Family::E) {
            let e = entry(f).unwrap();
            let c = wh_crosscap_count(&e.wh.unwrap());
            o.check(c > Rational64::from(0), || format!("{f}: C = {c}"));
        }
        o.detail = format!("{} germs", germs.len());
    });

    if all {
        println!("all acceptance criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("some acceptance criteria FAILED");
        ExitCode::FAILURE
    }
}
