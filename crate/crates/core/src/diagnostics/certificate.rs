use std::collections::BTreeMap;

use serde::Serialize;

/// Tolerances shared by the certificate checkers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertConfig {
    /// Absolute slack on margins after scaling by `1 + H² + |K|`.
    pub eps_cert: f64,
    /// Distance to `(c, c)` below which a point counts as an umbilic of value `c`.
    pub eps_eq: f64,
}

impl Default for CertConfig {
    fn default() -> Self {
        Self { eps_cert: 1e-12, eps_eq: 1e-8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

/// Worst sample seen by a checker.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub position: Option<[f64; 2]>,
    pub kappa: Option<[f64; 2]>,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Witness {
    pub fn at(position: [f64; 2], kappa: Option<[f64; 2]>, margin: f64) -> Self {
        Self { position: Some(position), kappa, margin, detail: None }
    }

    pub fn scalar(margin: f64, detail: impl Into<String>) -> Self {
        Self { position: None, kappa: None, margin, detail: Some(detail.into()) }
    }
}

/// Verdict record for one claim. A failing verdict always carries a witness
/// with negative margin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub samples: usize,
    pub min_margin: Option<f64>,
    pub values: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }

    /// A certificate decided outside the sampling loop, e.g. an exact count.
    pub fn from_check(claim: impl Into<String>, ok: bool, margin: f64, detail: impl Into<String>) -> Self {
        let mut b = CertificateBuilder::new(claim, 0.0);
        b.observe_with(Witness::scalar(margin, detail), ok);
        b.finish()
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_value(mut self, key: impl Into<String>, value: f64) -> Self {
        self.values.insert(key.into(), value);
        self
    }
}

/// Accumulates samples left to right and keeps the first worst one, so the
/// result does not depend on thread scheduling.
#[derive(Debug, Clone)]
pub struct CertificateBuilder {
    claim: String,
    tol: f64,
    samples: usize,
    worst: Option<Witness>,
    worst_failing: Option<Witness>,
    failed: bool,
    values: BTreeMap<String, f64>,
    notes: Vec<String>,
}

impl CertificateBuilder {
    /// Samples pass when their margin is at least `-tol`.
    pub fn new(claim: impl Into<String>, tol: f64) -> Self {
        Self {
            claim: claim.into(),
            tol,
            samples: 0,
            worst: None,
            worst_failing: None,
            failed: false,
            values: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn observe(&mut self, w: Witness) {
        let ok = w.margin >= -self.tol;
        self.observe_with(w, ok);
    }

    /// Records a sample whose pass/fail status was decided by the caller.
    /// Failing samples must have negative margin.
    pub fn observe_with(&mut self, w: Witness, ok: bool) {
        debug_assert!(ok || w.margin < 0.0 || w.margin.is_nan());
        self.samples += 1;
        if !ok {
            self.failed = true;
            if worse(&w, self.worst_failing.as_ref()) {
                self.worst_failing = Some(w.clone());
            }
        }
        if worse(&w, self.worst.as_ref()) {
            self.worst = Some(w);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn value(&mut self, key: impl Into<String>, value: f64) {
        self.values.insert(key.into(), value);
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn finish(self) -> Certificate {
        let min_margin = self.worst.as_ref().map(|w| w.margin);
        let witness = if self.failed { self.worst_failing } else { self.worst };
        Certificate {
            claim: self.claim,
            verdict: Verdict::from_bool(!self.failed),
            witness,
            samples: self.samples,
            min_margin,
            values: self.values,
            notes: self.notes,
        }
    }
}

fn worse(w: &Witness, current: Option<&Witness>) -> bool {
    match current {
        None => true,
        Some(c) => w.margin < c.margin || (w.margin.is_nan() && !c.margin.is_nan()),
    }
}
