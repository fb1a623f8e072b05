//! Assembly of the invariant report: Smale invariant, embedding-class gates
//! and the singular-Seifert-surface invariants `t, l, L, σ, Ω'`.
//!
//! Signs are fixed: `l = C`, `L = C - 3T`, `Ω' = (3t - 3l + L)/2`, `Ω = -C`.
//! The Seifert surface of a holomorphic germ is a ball, so `σ = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::fitting::{pushforward_presentation, triple_point_count_of, FittingError, TripleCount};
use crate::germ::Germ;
use crate::invariants::{corank, crosscap_count, detect_weighted_homogeneous, wh_crosscap_count, WHData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("positive Smale invariant {0} cannot come from a holomorphic germ")]
    PositiveSmale(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingClass {
    pub regular_homotopic_to_embedding: bool,
    pub generator_multiple: Option<i64>,
}

/// Whether `Ω` lies in `24ℤ`, and which multiple of the generator `-24` it is.
pub fn embedding_class(omega: i64) -> Result<EmbeddingClass, ReportError> {
    if omega > 0 {
        return Err(ReportError::PositiveSmale(omega));
    }
    let in_24z = omega % 24 == 0;
    Ok(EmbeddingClass { regular_homotopic_to_embedding: in_24z, generator_multiple: in_24z.then_some(omega / -24) })
}

/// Signature `(2/3)·Ω` of a Seifert surface realising `Ω`, when integral.
pub fn implied_seifert_signature(omega: i64) -> Option<i64> {
    (2 * omega % 3 == 0).then_some(2 * omega / 3)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    /// `finite`, `infinite`, `not_finite` or `unavailable`.
    pub status: &'static str,
    pub value: Option<u64>,
    pub certified: bool,
    /// `null` for an exact (graded) presentation.
    pub truncation_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TripleReport {
    fn from_count(count: TripleCount, truncation_degree: Option<u32>) -> Self {
        let (status, value, certified) = match count {
            TripleCount::Finite { value, certified } => ("finite", Some(value), certified),
            TripleCount::Infinite => ("infinite", None, false),
            TripleCount::NotFinite => ("not_finite", None, false),
        };
        TripleReport { status, value, certified, truncation_degree, error: None }
    }

    fn unavailable(e: &FittingError) -> Self {
        TripleReport { status: "unavailable", value: None, certified: false, truncation_degree: None, error: Some(e.to_string()) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    #[serde(rename = "in_24Z")]
    pub in_24z: bool,
    pub generator_multiple: Option<i64>,
    /// `Ω = 0`: regularly homotopic to the trivial embedding.
    pub trivial: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EsInvariants {
    pub t: Option<i64>,
    pub l: i64,
    #[serde(rename = "L")]
    pub big_l: Option<i64>,
    pub sigma: i64,
    pub omega_prime: Option<i64>,
}

impl EsInvariants {
    fn new(c: u64, t: Option<u64>) -> Self {
        let l = c as i64;
        let t = t.map(|t| t as i64);
        let big_l = t.map(|t| l - 3 * t);
        let omega_prime = t.zip(big_l).map(|(t, big_l)| {
            let twice = 3 * t - 3 * l + big_l;
            debug_assert!(twice.is_even());
            twice / 2
        });
        EsInvariants { t, l, big_l, sigma: 0, omega_prime }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub name: Option<String>,
    pub germ: Option<String>,
    pub admissible: bool,
    pub corank: Option<u8>,
    #[serde(rename = "C")]
    pub c: Option<u64>,
    #[serde(rename = "T")]
    pub t: Option<TripleReport>,
    pub smale: Option<i64>,
    pub embedding: Option<Embedding>,
    pub es_invariants: Option<EsInvariants>,
    pub wh: Option<WHData>,
    /// `+|Ω|`, realised by precomposing with complex conjugation in one
    /// source variable; not holomorphic, so only recorded.
    pub mirror_realizes: Option<i64>,
    pub provenance: BTreeMap<String, String>,
}

impl InvariantReport {
    fn fill_from_c(&mut self, c: u64) {
        let omega = -(c as i64);
        let class = embedding_class(omega).expect("non-positive by construction");
        self.c = Some(c);
        self.smale = Some(omega);
        self.embedding = Some(Embedding {
            in_24z: class.regular_homotopic_to_embedding,
            generator_multiple: class.generator_multiple,
            trivial: omega == 0,
        });
        self.mirror_realizes = Some(-omega);
        self.es_invariants = Some(EsInvariants::new(c, None));
        self.provenance.insert("smale".into(), "Omega = -C".into());
        self.provenance.insert("l".into(), "l = C".into());
        self.provenance.insert("sigma".into(), "Seifert surface is a ball".into());
    }

    fn fill_triple(&mut self, triple: TripleReport) {
        if let (Some(c), Some(t)) = (self.c, triple.value) {
            self.es_invariants = Some(EsInvariants::new(c, Some(t)));
            self.provenance.insert("t".into(), "t = T".into());
            self.provenance.insert("L".into(), "L = C - 3T".into());
            self.provenance.insert("omega_prime".into(), "(3t - 3l + L)/2".into());
        }
        let how = match (triple.status, triple.truncation_degree) {
            ("finite" | "infinite", None) => "codim of F_2, exact graded presentation".to_string(),
            ("finite" | "infinite", Some(n)) if triple.certified => {
                format!("codim of F_2 + m^{n}, certified below the truncation degree")
            }
            ("finite" | "infinite", Some(n)) => format!("codim of truncated F_2 at degree {n}, not certified"),
            _ => "not computed".to_string(),
        };
        self.provenance.insert("T".into(), how);
        self.t = Some(triple);
    }
}

/// Builds the report. An inadmissible germ yields `admissible = false` with
/// only the corank filled in.
pub fn build_report(phi: &Germ, with_fitting: bool, degree_bound: u32) -> InvariantReport {
    let mut report = InvariantReport {
        name: phi.name().map(str::to_string),
        germ: Some(phi.to_list_string()),
        admissible: false,
        corank: Some(corank(phi)),
        c: None,
        t: None,
        smale: None,
        embedding: None,
        es_invariants: None,
        wh: detect_weighted_homogeneous(phi),
        mirror_realizes: None,
        provenance: BTreeMap::new(),
    };
    let Ok(c) = crosscap_count(phi) else { return report };
    report.admissible = true;
    report.fill_from_c(c);
    report.provenance.insert("C".into(), "standard basis codim of the Jacobian minors ideal".into());
    if with_fitting {
        let triple = match pushforward_presentation(phi, degree_bound) {
            Ok(p) => TripleReport::from_count(triple_point_count_of(&p), p.truncation_degree),
            Err(FittingError::NotFinite) => TripleReport::from_count(TripleCount::NotFinite, None),
            Err(e) => TripleReport::unavailable(&e),
        };
        report.fill_triple(triple);
    }
    report
}

/// Report for a germ known only through its weights and degrees.
pub fn build_wh_report(name: &str, wh: WHData) -> InvariantReport {
    let value = wh_crosscap_count(&wh);
    let mut report = InvariantReport {
        name: Some(name.to_string()),
        germ: None,
        admissible: false,
        // no linear terms are possible when every degree exceeds both weights
        corank: (wh.d1.min(wh.d2).min(wh.d3) > wh.w1.max(wh.w2)).then_some(2),
        c: None,
        t: None,
        smale: None,
        embedding: None,
        es_invariants: None,
        wh: Some(wh),
        mirror_realizes: None,
        provenance: BTreeMap::new(),
    };
    if value.is_integer() && *value.numer() >= 0 {
        report.admissible = true;
        report.fill_from_c(value.to_integer() as u64);
        report.provenance.insert("C".into(), "weighted-homogeneous closed form".into());
    }
    report
}

/// `(corank = 0) ⟺ (Ω = 0)`.
pub fn trivial_embedding_equivalences(report: &InvariantReport) -> bool {
    match (report.corank, report.smale) {
        (Some(k), Some(omega)) => (k == 0) == (omega == 0),
        _ => true,
    }
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "name:        {name}")?;
        }
        if let Some(germ) = &self.germ {
            writeln!(f, "germ:        ({germ})")?;
        }
        if let Some(wh) = &self.wh {
            writeln!(f, "weights:     ({}, {})  degrees: ({}, {}, {})", wh.w1, wh.w2, wh.d1, wh.d2, wh.d3)?;
        }
        writeln!(f, "admissible:  {}", self.admissible)?;
        writeln!(f, "corank:      {}", opt(&self.corank))?;
        if !self.admissible {
            return Ok(());
        }
        writeln!(f, "C:           {}", opt(&self.c))?;
        if let Some(t) = &self.t {
            let value = match (t.status, t.value) {
                ("finite", Some(v)) => v.to_string(),
                (status, _) => status.replace('_', " "),
            };
            let cert = if t.certified { "certified" } else { "not certified" };
            match &t.error {
                Some(e) => writeln!(f, "T:           unavailable ({e})")?,
                None => writeln!(f, "T:           {value} ({cert})")?,
            }
        }
        writeln!(f, "Omega:       {}", opt(&self.smale))?;
        if let Some(e) = &self.embedding {
            writeln!(f, "in 24Z:      {}  generator multiple: {}", e.in_24z, opt(&e.generator_multiple))?;
            writeln!(f, "trivial:     {}", e.trivial)?;
        }
        if let Some(es) = &self.es_invariants {
            writeln!(
                f,
                "t, l, L:     {}, {}, {}  sigma: {}  Omega': {}",
                opt(&es.t),
                es.l,
                opt(&es.big_l),
                es.sigma,
                opt(&es.omega_prime)
            )?;
        }
        if let Some(m) = self.mirror_realizes {
            if m != 0 {
                writeln!(f, "mirror germ realizes +{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitting::DEFAULT_DEGREE_BOUND;
    use crate::parser::{parse_germ, GermSource};

    fn report(a: &str, b: &str, c: &str, fitting: bool) -> InvariantReport {
        build_report(&parse_germ(&GermSource::new(a, b, c)).unwrap(), fitting, DEFAULT_DEGREE_BOUND)
    }

    #[test]
    fn a1() {
        let r = report("s^2", "t^2", "s*t", true);
        assert_eq!(r.c, Some(3));
        assert_eq!(r.t.as_ref().unwrap().value, Some(1));
        assert_eq!(r.smale, Some(-3));
        let es = r.es_invariants.unwrap();
        assert_eq!((es.t, es.l, es.big_l, es.sigma, es.omega_prime), (Some(1), 3, Some(0), 0, Some(-3)));
        assert!(!r.embedding.unwrap().in_24z);
    }

    #[test]
    fn cross_cap() {
        let r = report("s^2", "s*t", "t", true);
        let es = r.es_invariants.unwrap();
        assert_eq!((r.c, r.smale), (Some(1), Some(-1)));
        assert_eq!((es.t, es.l, es.big_l, es.omega_prime), (Some(0), 1, Some(1), Some(-1)));
    }

    #[test]
    fn immersion_and_without_fitting() {
        let r = report("s", "t", "0", true);
        let es = r.es_invariants.unwrap();
        assert_eq!((r.c, r.smale, es.t, es.l, es.big_l, es.omega_prime), (Some(0), Some(0), Some(0), 0, Some(0), Some(0)));
        assert!(r.embedding.unwrap().trivial);
        assert!(trivial_embedding_equivalences(&r));
        let r = report("s^2", "t^2", "s*t", false);
        assert!(r.t.is_none());
        assert_eq!(r.es_invariants.unwrap().t, None);
        assert_eq!(r.es_invariants.unwrap().omega_prime, None);
    }

    #[test]
    fn not_admissible() {
        let r = report("s*t", "s*t", "0", false);
        assert!(!r.admissible);
        assert_eq!(r.c, None);
        assert_eq!(r.corank, Some(2));
    }

    #[test]
    fn embedding_classes() {
        assert_eq!(embedding_class(-24), Ok(EmbeddingClass { regular_homotopic_to_embedding: true, generator_multiple: Some(1) }));
        assert_eq!(embedding_class(0), Ok(EmbeddingClass { regular_homotopic_to_embedding: true, generator_multiple: Some(0) }));
        assert_eq!(embedding_class(-3).unwrap().regular_homotopic_to_embedding, false);
        assert_eq!(embedding_class(5), Err(ReportError::PositiveSmale(5)));
        assert_eq!(implied_seifert_signature(-24), Some(-16));
    }

    #[test]
    fn equivalences() {
        assert!(trivial_embedding_equivalences(&report("s", "t^2", "t^3 + s*t", false)));
        assert!(trivial_embedding_equivalences(&report("s", "t", "s*t", false)));
        assert!(trivial_embedding_equivalences(&report("s^2", "t^2", "s*t", false)));
    }

    #[test]
    fn wh_only() {
        let r = build_wh_report("E6", WHData::new((1, 1), (6, 8, 12)));
        assert_eq!((r.c, r.smale, r.corank), (Some(167), Some(-167), Some(2)));
        assert!(r.germ.is_none());
    }
}
