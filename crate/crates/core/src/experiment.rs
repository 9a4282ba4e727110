//! Configured experiments: a source ideal, a recipe for `J`, and a list of
//! checks, producing a serializable report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::canonical::canonical_module;
use crate::catalog::{self, verify_claims, CatalogEntry, ClaimCheck, ExampleId, JSource, SemigroupReport};
use crate::error::AlgebraError;
use crate::field::Fp;
use crate::groebner::GbBudget;
use crate::hom::DEFAULT_MAX_UNKNOWNS;
use crate::ideal::Ideal;
use crate::jacobian::{
    g1_socle_check, jacobian_containment_check, jacobian_determinant, principal_colon_check,
    symbolic_power_membership_linear, ContainmentReport, G1SocleReport, PrincipalColonReport,
};
use crate::module::HilbertFunction;
use crate::monomial::MonomialOrder;
use crate::residual::{
    artinian_slice, check_codim2, check_intersection_lemma, duality_suite, general_residual, make_setup,
    rees_truncation_check, self_duality, simple_socle_check, Codim2Report, DualityOptions, HypothesisReport,
    PairingReport, PairingVerdict, ReesReport, ResidualModules, ResidualSetup, SelfDualityReport, SetupFlags,
    SimpleSocleReport, SocleVerdict,
};
use crate::ring::{PolynomialRing, Ring, RingExt};

pub const SCHEMA_VERSION: u32 = 1;

pub const ENV_DEGREE_CAP: &str = "RILAB_DEGREE_CAP";
pub const ENV_MAX_PAIRS: &str = "RILAB_MAX_PAIRS";
pub const ENV_MAX_HOM_UNKNOWNS: &str = "RILAB_MAX_HOM_UNKNOWNS";

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "schema_version")]
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Root seed for every randomized step. Catalog examples fall back to
    /// the seed in their id.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub source: SourceConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<JConfig>,
    #[serde(default = "default_checks")]
    pub checks: Vec<Check>,
    /// Cut down to an artinian setup when a check needs one. Defaults to on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice: Option<bool>,
    #[serde(default)]
    pub budget: BudgetConfig,
    #[serde(default)]
    pub params: CheckParams,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_checks() -> Vec<Check> {
    vec![Check::Hypotheses, Check::Duality]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SourceConfig {
    Catalog {
        example: String,
    },
    Explicit {
        variables: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        prime: Option<u32>,
        generators: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum JConfig {
    /// `s` general elements of degree `delta` in `I`.
    General { s: usize, delta: u32 },
    Explicit { generators: Vec<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Claims,
    Hypotheses,
    LemmaBasic,
    Duality,
    Rees,
    Hom,
    Socle,
    Jacobian,
    Codim2Matrix,
    Semigroup,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Claims,
        Check::Hypotheses,
        Check::LemmaBasic,
        Check::Duality,
        Check::Rees,
        Check::Hom,
        Check::Socle,
        Check::Jacobian,
        Check::Codim2Matrix,
        Check::Semigroup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Claims => "claims",
            Check::Hypotheses => "hypotheses",
            Check::LemmaBasic => "lemma-basic",
            Check::Duality => "duality",
            Check::Rees => "rees",
            Check::Hom => "hom",
            Check::Socle => "socle",
            Check::Jacobian => "jacobian",
            Check::Codim2Matrix => "codim2-matrix",
            Check::Semigroup => "semigroup",
        }
    }

    fn needs_artinian(self) -> bool {
        matches!(self, Check::Duality | Check::Rees | Check::Hom | Check::Socle | Check::Jacobian)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_pairs: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_hom_unknowns: Option<usize>,
    #[serde(default)]
    pub hom_after_rank_failure: bool,
}

impl BudgetConfig {
    pub fn groebner(&self) -> GbBudget {
        let d = GbBudget::default();
        GbBudget { degree_cap: self.degree_cap.unwrap_or(d.degree_cap), max_pairs: self.max_pairs.unwrap_or(d.max_pairs) }
    }

    pub fn duality(&self) -> DualityOptions {
        DualityOptions {
            max_hom_unknowns: self.max_hom_unknowns.unwrap_or(DEFAULT_MAX_UNKNOWNS),
            hom_after_rank_failure: self.hom_after_rank_failure,
        }
    }

    /// Overrides from `RILAB_DEGREE_CAP`, `RILAB_MAX_PAIRS` and
    /// `RILAB_MAX_HOM_UNKNOWNS`, looked up through `var`.
    pub fn apply_env(&mut self, var: impl Fn(&str) -> Option<String>) -> Result<(), RunError> {
        fn parse<T: std::str::FromStr>(name: &str, v: String) -> Result<T, RunError> {
            v.trim().parse().map_err(|_| RunError::Schema(format!("{name}={v:?} is not a valid number")))
        }
        if let Some(v) = var(ENV_DEGREE_CAP) {
            self.degree_cap = Some(parse(ENV_DEGREE_CAP, v)?);
        }
        if let Some(v) = var(ENV_MAX_PAIRS) {
            self.max_pairs = Some(parse(ENV_MAX_PAIRS, v)?);
        }
        if let Some(v) = var(ENV_MAX_HOM_UNKNOWNS) {
            self.max_hom_unknowns = Some(parse(ENV_MAX_HOM_UNKNOWNS, v)?);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckParams {
    /// Compare `I^u/JI^{u-1}` with `Sym^u` for `u = 1..=sym_max_u`.
    #[serde(default)]
    pub sym_max_u: u32,
    #[serde(default = "default_window")]
    pub sym_window: u32,
}

fn default_window() -> u32 {
    4
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams { sym_max_u: 0, sym_window: default_window() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
    #[serde(default = "yes")]
    pub json: bool,
    #[serde(default = "yes")]
    pub text: bool,
}

fn yes() -> bool {
    true
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: None, json: true, text: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    /// Malformed configuration, unknown example, or inputs that do not form
    /// a residual setup.
    #[error("invalid experiment: {0}")]
    Schema(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineInfo {
    pub name: String,
    pub version: String,
}

impl EngineInfo {
    pub fn current() -> Self {
        EngineInfo { name: env!("CARGO_PKG_NAME").into(), version: env!("CARGO_PKG_VERSION").into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    pub characteristic: u64,
    pub variables: Vec<String>,
    pub i: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupSummary {
    pub variables: Vec<String>,
    pub s: usize,
    pub g: usize,
    pub t: usize,
    pub degrees: Vec<u32>,
    pub codim_k: usize,
    pub codim_i_plus_k: usize,
    pub artinian: bool,
    pub socle_degree: i32,
    pub flags: SetupFlags,
    /// `false` flags are only meaningful when this is set.
    pub hypotheses_evaluated: bool,
    pub seed: Option<u64>,
    pub j: Vec<String>,
    pub k: Vec<String>,
    pub log: Vec<String>,
}

impl SetupSummary {
    fn of(s: &ResidualSetup<Fp>) -> Self {
        SetupSummary {
            variables: s.ring.var_names().to_vec(),
            s: s.s,
            g: s.g,
            t: s.t,
            degrees: s.degrees.clone(),
            codim_k: s.codim_k,
            codim_i_plus_k: s.codim_i_plus_k,
            artinian: s.is_artinian(),
            socle_degree: s.socle_degree(),
            flags: s.flags,
            hypotheses_evaluated: s.hypotheses.is_some(),
            seed: s.seed,
            j: strings(&s.j),
            k: strings(&s.k),
            log: s.log.clone(),
        }
    }
}

fn strings(i: &Ideal<Fp>) -> Vec<String> {
    i.generators().iter().map(|p| p.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaRow {
    pub u: u32,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub containment: Option<ContainmentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g1: Option<G1SocleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub principal_colon: Option<PrincipalColonReport>,
    /// `det Jac ∈ P·J` for each named component `P`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub component_products: Vec<NamedCheck>,
    /// `det Jac` in the second symbolic power of the components.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbolic_square: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResults {
    /// `HF(I^u/JI^{u-1})` for `u = 0..=t+1`, with `u = 0` meaning `R/K`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module_hilbert: Option<Vec<HilbertFunction>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_hilbert: Option<HilbertFunction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<Vec<ClaimCheck>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<HypothesisReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma_basic: Option<Vec<LemmaRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality: Option<Vec<PairingReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rees: Option<ReesReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hom: Option<SelfDualityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub socle: Option<SimpleSocleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobian: Option<JacobianSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codim2: Option<Codim2Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semigroup: Option<SemigroupReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckError {
    pub check: String,
    pub message: String,
    pub budget_exhausted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Info,
    Error,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "info",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

/// Everything an experiment produced except wall-clock timings, so that two
/// runs with the same configuration serialize identically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub engine: EngineInfo,
    pub config: ExperimentConfig,
    pub source: SourceSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub setup: Option<SetupSummary>,
    /// The artinian reduction used by checks that need one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sliced: Option<SetupSummary>,
    pub results: CheckResults,
    pub summary: Vec<SummaryRow>,
    pub errors: Vec<CheckError>,
    /// A work budget ran out; the report covers what finished.
    pub partial: bool,
    pub log: Vec<String>,
}

/// Milliseconds per step.
pub type Timings = BTreeMap<String, u64>;

fn schema_err(e: AlgebraError) -> RunError {
    RunError::Schema(e.to_string())
}

struct Runner {
    results: CheckResults,
    errors: Vec<CheckError>,
    timings: Timings,
    log: Vec<String>,
}

impl Runner {
    fn record<T>(&mut self, check: &str, start: Instant, r: crate::Result<T>) -> Option<T> {
        self.timings.insert(check.to_string(), start.elapsed().as_millis() as u64);
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.errors.push(CheckError {
                    check: check.to_string(),
                    budget_exhausted: matches!(e, AlgebraError::BudgetExceeded(_)),
                    message: e.to_string(),
                });
                None
            }
        }
    }
}

/// Runs the configured checks. Only configuration problems are errors; a
/// failing or unfinished check is recorded in the report.
pub fn run(cfg: &ExperimentConfig) -> Result<(ExperimentReport, Timings), RunError> {
    if cfg.schema != SCHEMA_VERSION {
        return Err(RunError::Schema(format!("schema version {} is not supported (expected {SCHEMA_VERSION})", cfg.schema)));
    }
    let budget = cfg.budget.groebner();
    let opts = cfg.budget.duality();
    let mut checks = cfg.checks.clone();
    checks.sort();
    checks.dedup();
    let wants = |c: Check| checks.contains(&c);

    let (ring, i, entry) = load_source(&cfg.source, budget)?;
    let seed = cfg.seed.or(entry.as_ref().map(|e| e.seed));
    let source = SourceSummary {
        example: entry.as_ref().map(|e| e.id.to_string()),
        citation: entry.as_ref().map(|e| e.citation.clone()),
        characteristic: ring.field().modulus() as u64,
        variables: ring.var_names().to_vec(),
        i: strings(&i),
    };
    let mut runner = Runner { results: CheckResults::default(), errors: Vec::new(), timings: Timings::new(), log: Vec::new() };
    if let Some(e) = &entry {
        runner.log.extend(e.log.iter().cloned());
    }

    let j_source = match &cfg.j {
        Some(JConfig::General { s, delta }) => Some(JSource::General { s: *s, delta: *delta }),
        Some(JConfig::Explicit { generators }) => {
            let refs: Vec<&str> = generators.iter().map(String::as_str).collect();
            Some(JSource::Fixed(Ideal::from_strings(&ring, &refs).map_err(schema_err)?.with_budget(budget)))
        }
        None => entry.as_ref().and_then(|e| e.j.clone()),
    };

    let with_hyp = wants(Check::Hypotheses);
    let start = Instant::now();
    let setup = match &j_source {
        None => None,
        Some(js) => {
            let built = match js {
                JSource::General { s, delta } => {
                    let seed = seed.ok_or_else(|| RunError::Schema("general elements need a seed".into()))?;
                    general_residual(&i, *s, *delta, seed, with_hyp)
                }
                JSource::Fixed(j) => make_setup(&i, &j.clone().with_budget(budget), with_hyp),
            };
            match built {
                Ok(s) => Some(s),
                Err(e @ (AlgebraError::NotContained(_) | AlgebraError::Precondition(_) | AlgebraError::RingMismatch)) => {
                    return Err(schema_err(e))
                }
                Err(e) => runner.record("setup", start, Err(e)),
            }
        }
    };
    runner.timings.insert("setup".into(), start.elapsed().as_millis() as u64);

    let needs_artinian = checks.iter().any(|c| c.needs_artinian());
    let mut work: Option<ResidualSetup<Fp>> = None;
    if let Some(st) = &setup {
        if st.is_artinian() || st.s == st.ring.num_vars() {
            work = Some(st.clone());
        } else if needs_artinian && cfg.slice != Some(false) && st.s < st.ring.num_vars() {
            let seed = seed.ok_or_else(|| RunError::Schema("slicing needs a seed".into()))?;
            let start = Instant::now();
            work = runner.record("slice", start, artinian_slice(st, seed, with_hyp));
        }
    }

    if wants(Check::Claims) {
        let start = Instant::now();
        let r = match &entry {
            Some(e) => verify_claims(e, setup.as_ref(), budget),
            None => Err(AlgebraError::Precondition("claims need a catalog example".into())),
        };
        runner.results.claims = runner.record("claims", start, r);
    }
    if wants(Check::Hypotheses) {
        if let Some(st) = &setup {
            runner.results.hypotheses = st.hypotheses.clone();
        }
    }
    if wants(Check::LemmaBasic) {
        let start = Instant::now();
        let r = need_setup(setup.as_ref()).and_then(|st| {
            (1..=st.t as u32 + 1).map(|u| Ok(LemmaRow { u, holds: check_intersection_lemma(st, u)? })).collect()
        });
        runner.results.lemma_basic = runner.record("lemma-basic", start, r);
    }

    let mut mods: Option<ResidualModules<Fp>> = None;
    if wants(Check::Duality) || wants(Check::Rees) {
        let start = Instant::now();
        let r = need_setup(work.as_ref()).and_then(|st| duality_suite(st, budget, &opts));
        if let Some((m, reports)) = runner.record("duality", start, r) {
            for rep in &reports {
                runner.timings.insert(format!("duality.u{}", rep.u), rep.millis);
            }
            runner.results.module_hilbert = Some(m.modules.iter().map(|x| x.hilbert_function()).collect());
            mods = Some(m);
            runner.results.duality = Some(reports);
        }
    }
    let needs_omega = wants(Check::Rees) || wants(Check::Hom);
    let omega = match (needs_omega, &work) {
        (true, Some(st)) => {
            let start = Instant::now();
            let r = canonical_module(&st.k, budget).and_then(|w| {
                w.module.ok_or_else(|| AlgebraError::Precondition("R/K is not artinian".into()))
            });
            let w = runner.record("canonical-module", start, r);
            runner.results.omega_hilbert = w.as_ref().map(|w| w.hilbert_function());
            w
        }
        _ => None,
    };
    let check_seed = seed.unwrap_or(0);
    if wants(Check::Rees) {
        let start = Instant::now();
        let r = match (&work, &mods, &runner.results.duality, &omega) {
            (Some(st), Some(m), Some(reps), Some(w)) => {
                rees_truncation_check(st, m, reps, w, check_seed, opts.max_hom_unknowns)
            }
            _ => Err(AlgebraError::Precondition("needs the duality suite and an artinian setup".into())),
        };
        runner.results.rees = runner.record("rees", start, r);
    }
    if wants(Check::Hom) {
        let start = Instant::now();
        let r = need_setup(work.as_ref()).and_then(|st| {
            let w = omega.as_ref().ok_or_else(|| AlgebraError::Precondition("no canonical module".into()))?;
            let a1 = match &mods {
                Some(m) => m.get(1).clone(),
                None => crate::module::FiniteLengthGradedModule::subquotient(&st.i, &st.j, budget)?,
            };
            self_duality(&a1, w, check_seed, opts.max_hom_unknowns)
        });
        runner.results.hom = runner.record("hom", start, r);
    }
    if wants(Check::Socle) {
        let start = Instant::now();
        let r = need_setup(work.as_ref()).and_then(|st| simple_socle_check(st, check_seed, budget));
        runner.results.socle = runner.record("socle", start, r);
    }
    if wants(Check::Jacobian) {
        let start = Instant::now();
        let r = jacobian_section(entry.as_ref(), work.as_ref(), check_seed, budget);
        runner.results.jacobian = runner.record("jacobian", start, r);
    }
    if wants(Check::Codim2Matrix) {
        let start = Instant::now();
        let r = match entry.as_ref().and_then(|e| e.codim2.as_ref()) {
            Some(data) => check_codim2(data, cfg.params.sym_max_u, cfg.params.sym_window, budget),
            None => Err(AlgebraError::Precondition("needs a catalog example with a codimension-2 matrix".into())),
        };
        runner.results.codim2 = runner.record("codim2-matrix", start, r);
    }
    if wants(Check::Semigroup) {
        let start = Instant::now();
        let r = match &entry {
            Some(e) => catalog::semigroup_check(e),
            None => Err(AlgebraError::Precondition("needs the semigroup example".into())),
        };
        runner.results.semigroup = runner.record("semigroup", start, r);
    }

    let mut report = ExperimentReport {
        schema: SCHEMA_VERSION,
        engine: EngineInfo::current(),
        config: cfg.clone(),
        source,
        setup: setup.as_ref().map(SetupSummary::of),
        sliced: match (&setup, &work) {
            (Some(a), Some(b)) if a.ring.num_vars() != b.ring.num_vars() => Some(SetupSummary::of(b)),
            _ => None,
        },
        results: runner.results,
        summary: Vec::new(),
        partial: runner.errors.iter().any(|e| e.budget_exhausted),
        errors: runner.errors,
        log: runner.log,
    };
    report.summary = summarize(&report, &checks);
    Ok((report, runner.timings))
}

fn need_setup(s: Option<&ResidualSetup<Fp>>) -> crate::Result<&ResidualSetup<Fp>> {
    s.ok_or_else(|| AlgebraError::Precondition("no usable residual setup".into()))
}

fn load_source(src: &SourceConfig, budget: GbBudget) -> Result<(Ring<Fp>, Ideal<Fp>, Option<CatalogEntry>), RunError> {
    match src {
        SourceConfig::Catalog { example } => {
            let id = ExampleId::parse(example).map_err(schema_err)?;
            if !catalog::list().iter().any(|c| c.name == id.name) {
                return Err(RunError::Schema(format!("unknown example {:?}", id.name)));
            }
            let mut entry = catalog::build(&id.to_string()).map_err(schema_err)?;
            entry.i = entry.i.clone().with_budget(budget);
            Ok((entry.ring.clone(), entry.i.clone(), Some(entry)))
        }
        SourceConfig::Explicit { variables, prime, generators } => {
            let field = match prime {
                Some(p) => Fp::new(*p).map_err(schema_err)?,
                None => Fp::default_prime(),
            };
            let ring = PolynomialRing::new(field, variables, MonomialOrder::GRevLex).map_err(schema_err)?;
            let refs: Vec<&str> = generators.iter().map(String::as_str).collect();
            let i = Ideal::from_strings(&ring, &refs).map_err(schema_err)?.with_budget(budget);
            Ok((ring, i, None))
        }
    }
}

fn jacobian_section(
    entry: Option<&CatalogEntry>,
    work: Option<&ResidualSetup<Fp>>,
    seed: u64,
    budget: GbBudget,
) -> crate::Result<JacobianSection> {
    let mut out = JacobianSection::default();
    if let Some((g, f)) = entry.and_then(|e| e.principal.as_ref()) {
        out.principal_colon = Some(principal_colon_check(g, f)?);
        let one_degree = f.iter().all(|p| p.is_homogeneous() && p.degree() == f[0].degree());
        if g.is_homogeneous() && one_degree {
            out.g1 = Some(g1_socle_check(g, f, seed, budget)?);
        }
        return Ok(out);
    }
    let st = need_setup(work)?;
    out.containment = Some(jacobian_containment_check(st, seed, budget)?);
    let comps: Vec<(String, Ideal<Fp>)> = entry
        .map(|e| e.extras.iter().filter(|(n, _)| n.starts_with('P')).cloned().collect())
        .unwrap_or_default();
    // components live in the unsliced ring
    if !comps.is_empty() && comps[0].1.ring().same_ring(&st.ring) {
        let det = jacobian_determinant(st.j.generators())?;
        for (name, p) in &comps {
            out.component_products.push(NamedCheck { name: name.clone(), holds: p.product(&st.j)?.contains(&det)? });
        }
        let primes: Vec<Ideal<Fp>> = comps.into_iter().map(|(_, p)| p).collect();
        out.symbolic_square = Some(symbolic_power_membership_linear(&det, &primes, 2)?);
    }
    Ok(out)
}

fn summarize(r: &ExperimentReport, checks: &[Check]) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    let res = &r.results;
    let pf = |b: bool| if b { Status::Pass } else { Status::Fail };
    for &c in checks {
        let name = c.name();
        if let Some(e) = r.errors.iter().find(|e| e.check == name) {
            let status = if e.budget_exhausted { "budget exhausted" } else { "not run" };
            rows.push(SummaryRow { check: name.into(), status: Status::Error, detail: format!("{status}: {}", e.message) });
            continue;
        }
        let row = match c {
            Check::Claims => res.claims.as_ref().map(|cl| {
                let failed = cl.iter().filter(|x| x.verified == Some(false)).count();
                let checked = cl.iter().filter(|x| x.verified.is_some()).count();
                (pf(failed == 0), format!("{} of {checked} checked claims hold", checked - failed))
            }),
            Check::Hypotheses => r.setup.as_ref().filter(|s| s.hypotheses_evaluated).map(|s| {
                let f = s.flags;
                let mut detail =
                    format!("residual {}, geometric {}, standard {}, strong {}", f.is_residual, f.is_geometric, f.standard_hyp, f.strong_hyp);
                if let Some(sl) = r.sliced.as_ref().filter(|x| x.hypotheses_evaluated) {
                    let _ = write!(detail, "; after slicing: standard {}, strong {}", sl.flags.standard_hyp, sl.flags.strong_hyp);
                }
                (pf(f.standard_hyp), detail)
            }),
            Check::LemmaBasic => res.lemma_basic.as_ref().map(|rows| {
                let bad: Vec<String> = rows.iter().filter(|x| !x.holds).map(|x| x.u.to_string()).collect();
                (pf(bad.is_empty()), if bad.is_empty() { format!("holds for u = 1..={}", rows.len()) } else { format!("fails for u = {}", bad.join(",")) })
            }),
            Check::Duality => res.duality.as_ref().map(|reps| {
                let parts: Vec<String> = reps.iter().map(|p| format!("u={}: {}", p.u, verdict_text(&p.verdict))).collect();
                (pf(reps.iter().all(|p| p.verdict == PairingVerdict::Perfect)), parts.join("; "))
            }),
            Check::Rees => res.rees.as_ref().map(|x| {
                (pf(x.gorenstein), format!("top ≅ ω: {:?}, algebra socle dim {}", x.top_is_canonical, x.algebra_socle_dimension))
            }),
            Check::Hom => res.hom.as_ref().map(|x| (pf(x.holds), format!("HF {}, isomorphism {:?}", x.hf, x.isomorphism))),
            Check::Socle => res.socle.as_ref().map(|x| (pf(x.simple), format!("H^0 {}, socle {}", x.h0, x.socle))),
            Check::Jacobian => res.jacobian.as_ref().map(jacobian_summary),
            Check::Codim2Matrix => res.codim2.as_ref().map(|x| {
                let sym_ok = x.sym_rows.iter().all(|row| row.equal);
                (
                    pf(x.k_equals_colon == Some(true) && sym_ok),
                    format!("codim K {} (s = {}), K = J:I {:?}, Sym rows equal {sym_ok}", x.codim_k, x.s, x.k_equals_colon),
                )
            }),
            Check::Semigroup => res.semigroup.as_ref().map(|x| {
                (pf(x.squares_agree && x.colon_differs), format!("squares agree {}, I^2:I ≠ I {}", x.squares_agree, x.colon_differs))
            }),
        };
        let (status, detail) = row.unwrap_or((Status::Info, "no result".into()));
        rows.push(SummaryRow { check: name.into(), status, detail });
    }
    rows
}

fn verdict_text(v: &PairingVerdict) -> String {
    match v {
        PairingVerdict::Perfect => "perfect".into(),
        PairingVerdict::HomOnly => "hom only".into(),
        PairingVerdict::Fails { degree, rank_deficit } => format!("fails (degree {degree}, deficit {rank_deficit})"),
        PairingVerdict::Indeterminate { reason } => format!("indeterminate ({reason})"),
    }
}

fn jacobian_summary(j: &JacobianSection) -> (Status, String) {
    if let Some(c) = &j.containment {
        let status = match c.socle.verdict {
            SocleVerdict::GeneratesSocle => Status::Pass,
            SocleVerdict::LiesInIdeal => Status::Info,
            SocleVerdict::Violates { .. } => Status::Fail,
        };
        let mut detail = format!("det Jac degree {:?}: {:?}", c.jacobian_degree, c.socle.verdict);
        for p in &j.component_products {
            let _ = write!(detail, ", in {}·J {}", p.name, p.holds);
        }
        return (status, detail);
    }
    if let Some(g) = &j.g1 {
        return (
            if g.jacformula && g.socle.verdict == SocleVerdict::GeneratesSocle { Status::Pass } else { Status::Fail },
            format!("formula {}, {:?}", g.jacformula, g.socle.verdict),
        );
    }
    match &j.principal_colon {
        Some(p) => (
            if p.equals_g { Status::Pass } else { Status::Fail },
            format!("det {}; colon ({})", p.determinant, p.colon.join(", ")),
        ),
        None => (Status::Info, "nothing to check".into()),
    }
}

/// Aligned plain-text table of the summary rows.
pub fn render_text(r: &ExperimentReport) -> String {
    let mut out = String::new();
    let title = r.config.name.clone().or_else(|| r.source.example.clone()).unwrap_or_else(|| "experiment".into());
    let _ = writeln!(out, "{title}");
    if let Some(c) = &r.source.citation {
        let _ = writeln!(out, "source: {c}");
    }
    if let Some(s) = r.sliced.as_ref().or(r.setup.as_ref()) {
        let _ = writeln!(out, "s = {}, g = {}, t = {}, codim K = {}, D = {}", s.s, s.g, s.t, s.codim_k, s.socle_degree);
    }
    let w = r.summary.iter().map(|x| x.check.len()).max().unwrap_or(5).max(5);
    let _ = writeln!(out, "{:<w$}  {:<6}  detail", "check", "status");
    for row in &r.summary {
        let _ = writeln!(out, "{:<w$}  {:<6}  {}", row.check, row.status.label(), row.detail);
    }
    if r.partial {
        let _ = writeln!(out, "partial report: a work budget was exhausted");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog(example: &str, checks: Vec<Check>) -> ExperimentConfig {
        ExperimentConfig {
            schema: SCHEMA_VERSION,
            name: None,
            seed: None,
            source: SourceConfig::Catalog { example: example.into() },
            j: None,
            checks,
            slice: None,
            budget: BudgetConfig::default(),
            params: CheckParams::default(),
            output: OutputConfig::default(),
        }
    }

    #[test]
    fn ci_link_runs() {
        let cfg = catalog("ci-link", vec![Check::Duality, Check::Socle, Check::Rees, Check::LemmaBasic]);
        let (rep, _) = run(&cfg).unwrap();
        assert!(rep.errors.is_empty(), "{:?}", rep.errors);
        let status = |c: &str| rep.summary.iter().find(|r| r.check == c).unwrap().status;
        for c in ["duality", "socle", "rees"] {
            assert_eq!(status(c), Status::Pass, "{}", render_text(&rep));
        }
        // the link is not geometric: I ∩ K = K ≠ J
        assert_eq!(status("lemma-basic"), Status::Fail);
    }

    #[test]
    fn unknown_example_is_schema_error() {
        assert!(matches!(run(&catalog("nope", vec![])), Err(RunError::Schema(_))));
        let mut cfg = catalog("ci-link", vec![]);
        cfg.schema = 9;
        assert!(run(&cfg).is_err());
    }

    #[test]
    fn tiny_budget_gives_partial_report() {
        let mut cfg = catalog("mystery-module", vec![Check::Duality]);
        cfg.budget.max_pairs = Some(1);
        let (rep, _) = run(&cfg).unwrap();
        assert!(rep.partial);
    }

    #[test]
    fn env_overrides() {
        let mut b = BudgetConfig::default();
        b.apply_env(|k| (k == ENV_DEGREE_CAP).then(|| "7".to_string())).unwrap();
        assert_eq!(b.groebner().degree_cap, 7);
        assert!(b.apply_env(|_| Some("x".into())).is_err());
    }
}
