//! Results of identity checks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exterior::Multivector;
use crate::scalar::Rational;

/// The outcome of checking one identity: the residual (zero on success) and
/// the inputs that produced the first nonzero residual.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketReport {
    pub identity: String,
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub pass: bool,
    pub residual: Multivector,
    pub witness: Vec<Multivector>,
    pub seed: Option<u64>,
    pub trials: usize,
    /// Exact value computed by scalar-valued checks.
    pub value: Option<Rational>,
    /// Generator letter used when rendering residual and witness.
    pub prefix: char,
}

impl BracketReport {
    pub fn new(identity: impl Into<String>, prefix: char) -> Self {
        BracketReport {
            identity: identity.into(),
            n: None,
            p: None,
            q: None,
            pass: true,
            residual: Multivector::zero(),
            witness: Vec::new(),
            seed: None,
            trials: 0,
            value: None,
            prefix,
        }
    }

    pub fn with_arity(mut self, n: usize, p: Option<usize>, q: Option<usize>) -> Self {
        self.n = Some(n);
        self.p = p;
        self.q = q;
        self
    }

    pub(crate) fn with_outcome(mut self, outcome: TrialOutcome) -> Self {
        self.trials = outcome.trials;
        self.seed = outcome.seed;
        if let Some((residual, witness)) = outcome.failure {
            self.pass = false;
            self.residual = residual;
            self.witness = witness;
        }
        self
    }

    /// A single deterministic evaluation.
    pub fn single(identity: impl Into<String>, prefix: char, residual: Multivector, witness: Vec<Multivector>) -> Self {
        let mut r = BracketReport::new(identity, prefix);
        r.trials = 1;
        r.pass = residual.is_zero();
        if !r.pass {
            r.residual = residual;
        }
        r.witness = witness;
        r
    }

    pub fn to_record(&self) -> ReportRecord {
        ReportRecord {
            identity: self.identity.clone(),
            n: self.n,
            p: self.p,
            q: self.q,
            pass: self.pass,
            residual: self.residual.display(self.prefix).to_string(),
            witness: self
                .witness
                .iter()
                .map(|w| w.display(self.prefix).to_string())
                .collect(),
            seed: self.seed,
            trials: self.trials,
            value: self.value.as_ref().map(|v| v.to_string()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("reports serialize")
    }

    /// One line of human-readable text.
    pub fn summary(&self) -> String {
        let mut line = format!("{} {}", if self.pass { "PASS" } else { "FAIL" }, self.identity);
        if let Some(n) = self.n {
            line.push_str(&format!(" n={n}"));
        }
        if let (Some(p), Some(q)) = (self.p, self.q) {
            line.push_str(&format!(" p={p} q={q}"));
        }
        if let Some(seed) = self.seed {
            line.push_str(&format!(" seed={seed} trials={}", self.trials));
        }
        if let Some(v) = &self.value {
            line.push_str(&format!(" value={v}"));
        }
        if !self.pass {
            line.push_str(&format!(" residual={}", self.residual.display(self.prefix)));
            let w: Vec<String> = self
                .witness
                .iter()
                .map(|w| w.display(self.prefix).to_string())
                .collect();
            line.push_str(&format!(" witness=[{}]", w.join(", ")));
        }
        line
    }
}

/// Serialized form of a [`BracketReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    pub identity: String,
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub pass: bool,
    pub residual: String,
    pub witness: Vec<String>,
    pub seed: Option<u64>,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

pub(crate) struct TrialOutcome {
    trials: usize,
    seed: Option<u64>,
    failure: Option<(Multivector, Vec<Multivector>)>,
}

/// Draws `trials` witnesses sequentially from a seeded generator, evaluates
/// them in parallel and keeps the first failure by trial index, so the
/// result does not depend on scheduling.
pub(crate) fn run_trials<D, E>(trials: usize, seed: u64, mut draw: D, eval: E) -> Result<TrialOutcome>
where
    D: FnMut(&mut ChaCha8Rng) -> Vec<Multivector>,
    E: Fn(&[Multivector]) -> Result<Multivector> + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let witnesses: Vec<Vec<Multivector>> = (0..trials).map(|_| draw(&mut rng)).collect();
    let residuals: Vec<Result<Multivector>> = witnesses.par_iter().map(|w| eval(w)).collect();
    let mut failure = None;
    for (w, r) in witnesses.into_iter().zip(residuals) {
        let r = r?;
        if !r.is_zero() {
            failure = Some((r, w));
            break;
        }
    }
    Ok(TrialOutcome {
        trials,
        seed: Some(seed),
        failure,
    })
}
