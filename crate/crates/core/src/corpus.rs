//! Built-in germ families with known invariants.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::germ::Germ;
use crate::invariants::{wh_crosscap_count, WHData};
use crate::parser::{parse_germ, GermSource};
use crate::report::{build_report, build_wh_report, InvariantReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `(s^k, t^k, st)`
    A(u32),
    /// `(s²t², s^2n + t^2n, st(s^2n - t^2n))`
    D(u32),
    /// Known only through weights and degrees.
    E(u32),
    /// `(s², st, t)`
    CrossCap,
    /// `(s, t², t³ + s^k t)`
    PhiMinusK(u32),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A(k) => write!(f, "A(k={k})"),
            Family::D(n) => write!(f, "D(n={n})"),
            Family::E(w) => write!(f, "E{w}"),
            Family::CrossCap => write!(f, "cross cap"),
            Family::PhiMinusK(k) => write!(f, "Phi_-k(k={k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("family A needs k >= 1, got {0}")]
    BadA(u32),
    #[error("family D needs n >= 1, got {0}")]
    BadD(u32),
    #[error("family E is one of 6, 7, 8; got {0}")]
    BadE(u32),
    #[error("unknown family {0:?}; expected one of A, D, E, crosscap, phi")]
    UnknownFamily(String),
    #[error("family {family} needs --{param}")]
    MissingParameter { family: String, param: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub value: i64,
    pub provenance: String,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub family: Family,
    pub germ: Option<Germ>,
    pub wh: Option<WHData>,
    pub expected: BTreeMap<String, Expected>,
}

fn expect(map: &mut BTreeMap<String, Expected>, key: &str, value: i64, provenance: impl Into<String>) {
    map.insert(key.to_string(), Expected { value, provenance: provenance.into() });
}

fn germ(name: String, p: [String; 3]) -> Germ {
    let [a, b, c] = p;
    parse_germ(&GermSource::new(&a, &b, &c)).expect("corpus germs parse").with_name(name)
}

/// Parses a family name as used on the command line.
pub fn family_from_args(name: &str, k: Option<u32>, n: Option<u32>, which: Option<u32>) -> Result<Family, CorpusError> {
    let need = |v: Option<u32>, param: &'static str| v.ok_or(CorpusError::MissingParameter { family: name.to_string(), param });
    match name.to_ascii_lowercase().as_str() {
        "a" => Ok(Family::A(need(k, "k")?)),
        "d" => Ok(Family::D(need(n, "n")?)),
        "e" => Ok(Family::E(need(which, "which")?)),
        "crosscap" | "cross-cap" | "cc" => Ok(Family::CrossCap),
        "phi" | "phi-k" | "phiminusk" => Ok(Family::PhiMinusK(need(k, "k")?)),
        _ => Err(CorpusError::UnknownFamily(name.to_string())),
    }
}

pub fn entry(family: Family) -> Result<CorpusEntry, CorpusError> {
    let mut ex = BTreeMap::new();
    let (g, wh) = match family {
        Family::A(k) => {
            if k == 0 {
                return Err(CorpusError::BadA(k));
            }
            let c = i64::from(k * k - 1);
            expect(&mut ex, "C", c, "formula k^2-1");
            expect(&mut ex, "smale", -c, "Omega = -(k^2-1)");
            if c % 24 == 0 {
                expect(&mut ex, "generator_multiple", c / 24, "Omega in 24Z");
            }
            if k == 2 {
                expect(&mut ex, "T", 1, "known triple-point count of A1");
                expect(&mut ex, "L", 0, "L = C - 3T for A1");
            }
            let g = germ(format!("A(k={k})"), [format!("s^{k}"), format!("t^{k}"), "s*t".into()]);
            (Some(g), Some(WHData::new((1, 1), (k, k, 2))))
        }
        Family::D(n) => {
            if n == 0 {
                return Err(CorpusError::BadD(n));
            }
            let c = i64::from(4 * n * n + 12 * n - 1);
            expect(&mut ex, "C", c, "formula 4n^2+12n-1");
            expect(&mut ex, "smale", -c, "Omega = -(4n^2+12n-1)");
            let m = 2 * n;
            let g = germ(
                format!("D(n={n})"),
                ["s^2*t^2".into(), format!("s^{m} + t^{m}"), format!("s*t*(s^{m} - t^{m})")],
            );
            (Some(g), Some(WHData::new((1, 1), (4, m, m + 2))))
        }
        Family::E(w) => {
            let (d, c) = match w {
                6 => ((6, 8, 12), 167),
                7 => ((8, 12, 18), 383),
                8 => ((12, 20, 30), 1079),
                _ => return Err(CorpusError::BadE(w)),
            };
            expect(&mut ex, "C", c, format!("closed form at degrees {d:?}"));
            expect(&mut ex, "smale", -c, "Omega = -C");
            (None, Some(WHData::new((1, 1), d)))
        }
        Family::CrossCap => {
            expect(&mut ex, "C", 1, "cross cap fixture");
            expect(&mut ex, "T", 0, "cross cap fixture");
            expect(&mut ex, "smale", -1, "cross cap fixture");
            expect(&mut ex, "l", 1, "l = C");
            expect(&mut ex, "L", 1, "L = C - 3T");
            let g = germ("cross cap".into(), ["s^2".into(), "s*t".into(), "t".into()]);
            (Some(g), Some(WHData::new((1, 1), (2, 2, 1))))
        }
        Family::PhiMinusK(k) => {
            expect(&mut ex, "C", i64::from(k), "formula C = k");
            expect(&mut ex, "smale", -i64::from(k), "Omega = -k");
            let g = germ(format!("Phi_-k(k={k})"), ["s".into(), "t^2".into(), format!("t^3 + s^{k}*t")]);
            let wh = (k > 0).then(|| {
                let (w1, w2) = if k % 2 == 0 { (1, k / 2) } else { (2, k) };
                WHData::new((w1, w2), (w1, 2 * w2, 3 * w2))
            });
            (Some(g), wh)
        }
    };
    Ok(CorpusEntry { family, germ: g, wh, expected: ex })
}

/// Every entry of `corpus --all`: the cross cap, `Φ_-k` and `A` up to
/// `max_k`, `D` for `n ≤ 6` and the three `E` entries.
pub fn all_families(max_k: u32) -> Vec<Family> {
    let mut out = vec![Family::CrossCap];
    out.extend((0..=max_k).map(Family::PhiMinusK));
    out.extend((2..=max_k).map(Family::A));
    out.extend((1..=6).map(Family::D));
    out.extend([6, 7, 8].map(Family::E));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: i64,
    pub got: Option<i64>,
    pub provenance: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusResult {
    pub family: String,
    pub report: InvariantReport,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Computes the report and compares it against the expected values.
///
/// Values the report does not carry (T without `with_fitting`) are not
/// compared. When both a germ and weights are present, the closed form is
/// checked against the direct `C` as well.
pub fn evaluate(entry: &CorpusEntry, with_fitting: bool, degree_bound: u32) -> CorpusResult {
    let report = match &entry.germ {
        Some(g) => build_report(g, with_fitting, degree_bound),
        None => build_wh_report(&entry.family.to_string(), entry.wh.expect("E entries carry weights")),
    };
    let es = report.es_invariants;
    let mut checks = Vec::new();
    for (name, ex) in &entry.expected {
        let got = match name.as_str() {
            "C" => report.c.map(|c| c as i64),
            "smale" => report.smale,
            "generator_multiple" => report.embedding.and_then(|e| e.generator_multiple),
            "T" => match &report.t {
                Some(t) => Some(t.value.map_or(-1, |v| v as i64)),
                None => continue,
            },
            "l" => es.map(|e| e.l),
            "L" => match es.and_then(|e| e.big_l) {
                Some(v) => Some(v),
                None if report.t.is_none() => continue,
                None => None,
            },
            _ => None,
        };
        checks.push(Check { name: name.clone(), expected: ex.value, got, provenance: ex.provenance.clone(), pass: got == Some(ex.value) });
    }
    if let (Some(wh), Some(_)) = (entry.wh, &entry.germ) {
        let closed = wh_crosscap_count(&wh);
        let got = closed.is_integer().then(|| closed.to_integer());
        let expected = report.c.map_or(-1, |c| c as i64);
        checks.push(Check {
            name: "C_closed_form".into(),
            expected,
            got,
            provenance: "weighted-homogeneous closed form vs direct codim".into(),
            pass: got == Some(expected),
        });
    }
    let pass = report.admissible && checks.iter().all(|c| c.pass);
    CorpusResult { family: entry.family.to_string(), report, checks, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitting::DEFAULT_DEGREE_BOUND;
    use crate::invariants::detect_weighted_homogeneous;

    #[test]
    fn declared_weights_match_detection() {
        for f in all_families(8) {
            let e = entry(f).unwrap();
            if let Some(g) = &e.germ {
                assert_eq!(detect_weighted_homogeneous(g), e.wh, "{f}");
            }
        }
    }

    #[test]
    fn small_entries_pass() {
        for f in [Family::CrossCap, Family::A(2), Family::A(5), Family::D(1), Family::E(6), Family::PhiMinusK(3)] {
            let r = evaluate(&entry(f).unwrap(), true, DEFAULT_DEGREE_BOUND);
            assert!(r.pass, "{f}: {:?}", r.checks);
        }
    }

    #[test]
    fn bad_parameters() {
        assert_eq!(entry(Family::E(9)).unwrap_err(), CorpusError::BadE(9));
        assert!(matches!(family_from_args("Q", None, None, None), Err(CorpusError::UnknownFamily(_))));
        assert!(matches!(family_from_args("A", None, None, None), Err(CorpusError::MissingParameter { .. })));
        assert_eq!(family_from_args("e", None, None, Some(7)), Ok(Family::E(7)));
    }
}
