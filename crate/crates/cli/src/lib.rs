//! Command-line front end for `rinehart`: pair loading, an expression
//! language for multivectors and brackets, and batch identity suites.

pub mod error;
pub mod eval;
pub mod parse;

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rinehart::linfty::{
    admissible_splits, check_ce_square_zero, check_combinatorial, check_injection_random, check_strict_morphism_random,
    check_weak_jacobi_random,
};
use rinehart::pair::{check_leibniz, check_pair_morphism};
use rinehart::schouten::{check_antisym_jacobi, check_morphism_respects_sn, check_poisson, check_sym_jacobi};
use rinehart::{BracketReport, LieRinehartPair, PairKind, PairMorphism};

pub use error::CliError;
pub use eval::{eval, eval_str};
pub use parse::{parse, parse_syntax, Expr, ExprKind};

use parse::Symbol;

/// A pair together with the name it is reported under.
#[derive(Clone, Debug)]
pub struct NamedPair {
    pub label: String,
    pub pair: LieRinehartPair,
}

impl NamedPair {
    pub fn new(label: impl Into<String>, pair: LieRinehartPair) -> Self {
        NamedPair {
            label: label.into(),
            pair,
        }
    }
}

/// `sl2`, `gl2`, `solvable4`, `cartan<m>` or `abelian<d>`.
pub fn builtin_pair(name: &str) -> Result<LieRinehartPair, CliError> {
    let unknown = || CliError::Usage(format!("unknown built-in pair `{name}`"));
    let sized = |prefix: &str| {
        name.strip_prefix(prefix)
            .map(|k| k.parse::<usize>().map_err(|_| unknown()))
    };
    match name {
        "sl2" => Ok(LieRinehartPair::sl2()),
        "gl2" => Ok(LieRinehartPair::gl2()),
        "solvable4" => Ok(LieRinehartPair::solvable4()),
        _ => {
            if let Some(m) = sized("cartan") {
                Ok(LieRinehartPair::cartan(m?)?)
            } else if let Some(d) = sized("abelian") {
                Ok(LieRinehartPair::abelian(d?)?)
            } else {
                Err(unknown())
            }
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads a pair document; `validate = false` skips the load-time checks.
pub fn load_pair(path: &Path, validate: bool) -> Result<LieRinehartPair, CliError> {
    let text = read(path)?;
    let parsed = if validate {
        LieRinehartPair::from_json(&text)
    } else {
        rinehart::pair::PairDocument::from_json(&text).and_then(|d| LieRinehartPair::from_document_unchecked(&d))
    };
    parsed.map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads a morphism document. The morphism itself is not validated here.
pub fn load_morphism(path: &Path, validate_pairs: bool) -> Result<PairMorphism, CliError> {
    let text = read(path)?;
    PairMorphism::from_json(&text, validate_pairs).map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })
}

/// The pair `eval` uses when none is given: `sl₂` if the expression names
/// `e` generators, otherwise the Cartan pair on as many variables as the
/// largest index mentioned.
pub fn infer_pair(e: &Expr) -> Result<LieRinehartPair, CliError> {
    let symbols = e.symbols();
    if symbols.iter().any(|(s, _)| matches!(s, Symbol::Generator('e', _))) {
        return Ok(LieRinehartPair::sl2());
    }
    let m = symbols
        .iter()
        .map(|(s, _)| match s {
            Symbol::Variable(k) | Symbol::Generator(_, k) => *k,
        })
        .max()
        .unwrap_or(1);
    Ok(LieRinehartPair::cartan(m)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Leibniz,
    JacobiAntisym,
    JacobiSym,
    Poisson,
    WeakJacobi,
    MorphismInjection,
    MorphismStrict,
    CeSquareZero,
    Combinatorial,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Leibniz,
        Suite::JacobiAntisym,
        Suite::JacobiSym,
        Suite::Poisson,
        Suite::WeakJacobi,
        Suite::MorphismInjection,
        Suite::MorphismStrict,
        Suite::CeSquareZero,
        Suite::Combinatorial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Leibniz => "leibniz",
            Suite::JacobiAntisym => "jacobi-antisym",
            Suite::JacobiSym => "jacobi-sym",
            Suite::Poisson => "poisson",
            Suite::WeakJacobi => "weak-jacobi",
            Suite::MorphismInjection => "morphism-injection",
            Suite::MorphismStrict => "morphism-strict",
            Suite::CeSquareZero => "ce-square-zero",
            Suite::Combinatorial => "combinatorial",
        }
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            CliError::Usage(format!("unknown suite `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

/// Everything a suite run depends on.
#[derive(Clone, Debug)]
pub struct SessionConfig {
    /// Pairs given by the user; `None` selects the suite's built-in pairs.
    pub pair: Option<NamedPair>,
    pub morphism: Option<NamedMorphism>,
    pub seed: u64,
    pub trials: usize,
    pub arity_cap: usize,
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub max_n: usize,
}

#[derive(Clone, Debug)]
pub struct NamedMorphism {
    pub label: String,
    pub morphism: PairMorphism,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            pair: None,
            morphism: None,
            seed: 0,
            trials: 20,
            arity_cap: rinehart::linfty::DEFAULT_ARITY_CAP,
            n: None,
            p: None,
            q: None,
            max_n: 10,
        }
    }
}

impl SessionConfig {
    fn validate(&self) -> Result<(), CliError> {
        if self.trials == 0 {
            return Err(CliError::Usage("--trials must be at least 1".into()));
        }
        if !(2..=8).contains(&self.arity_cap) {
            return Err(CliError::Usage("--arity-cap must lie in 2..8".into()));
        }
        if self.p.is_some() != self.q.is_some() {
            return Err(CliError::Usage("--p and --q go together".into()));
        }
        if self.p.is_some() && self.n.is_none() {
            return Err(CliError::Usage("--p and --q need --n".into()));
        }
        Ok(())
    }

    fn pairs_or(&self, defaults: impl FnOnce() -> Vec<NamedPair>) -> Vec<NamedPair> {
        match &self.pair {
            Some(p) => vec![p.clone()],
            None => defaults(),
        }
    }

    fn arities(&self, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        match self.n {
            Some(n) => vec![n],
            None => default.collect(),
        }
    }
}

fn default_pairs() -> Vec<NamedPair> {
    vec![
        NamedPair::new("sl2", LieRinehartPair::sl2()),
        NamedPair::new("cartan2", LieRinehartPair::cartan(2).expect("m = 2 is positive")),
    ]
}

/// One report and the pair (or morphism) it was computed on, if any.
#[derive(Clone, Debug)]
pub struct LabeledReport {
    pub label: Option<String>,
    pub report: BracketReport,
}

impl LabeledReport {
    fn new(label: &str, report: BracketReport) -> Self {
        LabeledReport {
            label: Some(label.to_string()),
            report,
        }
    }

    pub fn to_text(&self) -> String {
        match &self.label {
            Some(label) => format!("{label}: {}", self.report.summary()),
            None => self.report.summary(),
        }
    }

    /// The report's JSON record, with a `"pair"` field when labeled.
    pub fn to_json(&self) -> String {
        let mut value = serde_json::to_value(self.report.to_record()).expect("reports serialize");
        if let Some(label) = &self.label {
            value
                .as_object_mut()
                .expect("records are objects")
                .insert("pair".into(), serde_json::Value::String(label.clone()));
        }
        serde_json::to_string(&value).expect("reports serialize")
    }
}

/// Runs a suite. The caller decides the exit code from the reports.
pub fn run_suite(config: &SessionConfig, suite: Suite) -> Result<Vec<LabeledReport>, CliError> {
    config.validate()?;
    let (seed, trials) = (config.seed, config.trials);
    let mut out = Vec::new();
    match suite {
        Suite::Leibniz | Suite::JacobiAntisym | Suite::JacobiSym | Suite::Poisson => {
            let check = match suite {
                Suite::Leibniz => check_leibniz,
                Suite::JacobiAntisym => check_antisym_jacobi,
                Suite::JacobiSym => check_sym_jacobi,
                _ => check_poisson,
            };
            for p in config.pairs_or(default_pairs) {
                out.push(LabeledReport::new(&p.label, check(&p.pair, trials, seed)?));
            }
        }
        Suite::WeakJacobi => {
            for p in config.pairs_or(default_pairs) {
                for n in config.arities(3..=4) {
                    let splits = match (config.p, config.q) {
                        (Some(p), Some(q)) => vec![(p, q)],
                        _ => admissible_splits(n),
                    };
                    if splits.is_empty() {
                        return Err(CliError::Usage(format!("no admissible (p, q) for n = {n}")));
                    }
                    for (sp, sq) in splits {
                        out.push(LabeledReport::new(
                            &p.label,
                            check_weak_jacobi_random(&p.pair, n, sp, sq, trials, seed)?,
                        ));
                    }
                }
            }
        }
        Suite::MorphismInjection => {
            for p in config.pairs_or(default_pairs) {
                for n in config.arities(2..=4) {
                    out.push(LabeledReport::new(
                        &p.label,
                        check_injection_random(&p.pair, n, trials, seed, config.arity_cap)?,
                    ));
                }
            }
        }
        Suite::MorphismStrict => {
            let morphisms = match (&config.morphism, &config.pair) {
                (Some(m), _) => vec![m.clone()],
                (None, Some(p)) => vec![NamedMorphism {
                    label: format!("id:{}", p.label),
                    morphism: PairMorphism::identity(&p.pair),
                }],
                (None, None) => vec![
                    NamedMorphism {
                        label: "sl2->gl2".into(),
                        morphism: PairMorphism::sl2_into_gl2(),
                    },
                    NamedMorphism {
                        label: "id:cartan2".into(),
                        morphism: PairMorphism::identity(&LieRinehartPair::cartan(2)?),
                    },
                ],
            };
            for m in morphisms {
                out.extend(strict_morphism_reports(config, &m)?);
            }
        }
        Suite::CeSquareZero => {
            let pairs = config.pairs_or(|| {
                vec![
                    NamedPair::new("sl2", LieRinehartPair::sl2()),
                    NamedPair::new("solvable4", LieRinehartPair::solvable4()),
                ]
            });
            for p in pairs {
                out.push(LabeledReport::new(&p.label, check_ce_square_zero(&p.pair)?));
            }
        }
        Suite::Combinatorial => {
            for r in check_combinatorial(config.max_n)? {
                out.push(LabeledReport { label: None, report: r });
            }
        }
    }
    Ok(out)
}

/// The morphism conditions first; the strict L∞ naturality only once the
/// morphism validates.
fn strict_morphism_reports(config: &SessionConfig, m: &NamedMorphism) -> Result<Vec<LabeledReport>, CliError> {
    let (seed, trials) = (config.seed, config.trials);
    let mut out = vec![
        LabeledReport::new(&m.label, check_pair_morphism(&m.morphism, trials, seed)?),
        LabeledReport::new(&m.label, check_morphism_respects_sn(&m.morphism, trials, seed)?),
    ];
    let mut morphism = m.morphism.clone();
    if morphism.validate().is_err() {
        if out.iter().all(|r| r.report.pass) {
            let mut r = BracketReport::new("pair-morphism", morphism.source().generator_prefix());
            r.pass = false;
            out.push(LabeledReport::new(&m.label, r));
        }
        return Ok(out);
    }
    for n in config.arities(2..=4) {
        out.push(LabeledReport::new(
            &m.label,
            check_strict_morphism_random(&morphism, n, trials, seed, config.arity_cap)?,
        ));
    }
    Ok(out)
}

/// A short description of a pair.
pub fn pair_summary(pair: &LieRinehartPair) -> String {
    let g = pair.generator_prefix();
    let mut s = String::new();
    let kind = match pair.kind() {
        PairKind::LieAlgebra => "lie_algebra",
        PairKind::Cartan => "cartan",
    };
    let _ = writeln!(s, "kind: {kind}");
    let _ = writeln!(s, "dimension: {}", pair.dimension());
    let gens: Vec<String> = (1..=pair.dimension()).map(|i| format!("{g}{i}")).collect();
    let _ = writeln!(s, "generators: {}", gens.join(" "));
    if pair.variable_count() > 0 {
        let vars: Vec<String> = (1..=pair.variable_count()).map(|i| format!("x{i}")).collect();
        let _ = writeln!(s, "variables: {}", vars.join(" "));
    }
    let mut any = false;
    for (i, j, v) in pair.brackets() {
        if i < j && !v.is_zero() {
            let value = rinehart::Multivector::from_vector(v).display(g).to_string();
            let _ = writeln!(s, "[{g}{}, {g}{}] = {value}", i + 1, j + 1);
            any = true;
        }
    }
    if !any && pair.kind() == PairKind::LieAlgebra {
        let _ = writeln!(s, "abelian");
    }
    s
}
