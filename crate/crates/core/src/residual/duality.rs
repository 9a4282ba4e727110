//! Multiplication pairings `I^u/JI^{u-1} × I^{t+1-u}/JI^{t-u} -> I^{t+1}/JI^t`.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::GbBudget;
use crate::hom::{find_isomorphism, graded_hom, hom_dimensions, hom_shift_range, Existence};
use crate::ideal::Ideal;
use crate::linalg::Matrix;
use crate::module::{FiniteLengthGradedModule, HilbertFunction};
use crate::poly::Polynomial;

use super::setup::ResidualSetup;

/// The modules `A_u = I^u / J I^{u-1}` for `u = 0..=t+1`, with `A_0 = R/K`.
#[derive(Clone, Debug)]
pub struct ResidualModules<F: Field> {
    pub modules: Vec<FiniteLengthGradedModule<F>>,
}

impl<F: Field> ResidualModules<F> {
    pub fn build(setup: &ResidualSetup<F>, budget: GbBudget) -> Result<Self> {
        let mut modules = Vec::with_capacity(setup.t + 2);
        modules.push(FiniteLengthGradedModule::quotient_ring(&setup.k, budget)?);
        let mut prev_power = Ideal::unit(&setup.ring).with_budget(budget);
        for _ in 1..=setup.t + 1 {
            let power = prev_power.product(&setup.i)?;
            let denom = setup.j.product(&prev_power)?;
            modules.push(FiniteLengthGradedModule::subquotient(&power, &denom, budget)?);
            prev_power = power;
        }
        Ok(ResidualModules { modules })
    }

    pub fn get(&self, u: usize) -> &FiniteLengthGradedModule<F> {
        &self.modules[u]
    }

    pub fn top(&self) -> &FiniteLengthGradedModule<F> {
        self.modules.last().expect("nonempty")
    }
}

/// Coordinates in `C_{e+f}` of `a·b` for the bases of `A_e` and `B_f`:
/// `out[i][j]` for basis elements `a_i`, `b_j`.
pub fn product_table<F: Field>(
    a: &FiniteLengthGradedModule<F>,
    e: i32,
    b: &FiniteLengthGradedModule<F>,
    f: i32,
    c: &FiniteLengthGradedModule<F>,
) -> Result<Vec<Vec<Vec<F::Elem>>>> {
    let ra = a.representatives(e)?;
    let rb = b.representatives(f)?;
    let field = c.field();
    ra.iter()
        .map(|x| {
            rb.iter()
                .map(|y| {
                    let p: Polynomial<F> = x * y;
                    if p.is_zero() {
                        return Ok(vec![field.zero(); c.dim(e + f)]);
                    }
                    Ok(c.coordinates(&p)?.1)
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub degree_a: i32,
    pub dim_a: usize,
    pub dim_b: usize,
    pub rank: usize,
}

/// Ranks of `A_e × B_{D-e} -> C_D` when `C_D` is one-dimensional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTest {
    pub applicable: bool,
    pub note: Option<String>,
    pub rows: Vec<RankRow>,
    pub passed: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomMethod {
    /// `Hom(B, C)` computed by solving the linear system.
    LinearSolve,
    /// `C` has a simple socle in degree `D`, so `Hom(B, C)_e` has dimension
    /// at most `dim B_{D-e}`; equality follows from injectivity of `α`.
    SocleEmbeddingBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomRow {
    pub degree: i32,
    pub dim_a: usize,
    pub hom_dim: Option<usize>,
    pub alpha_rank: Option<usize>,
}

/// Whether `α: A -> Hom(B, C)` and `β: B -> Hom(A, C)`, both induced by
/// multiplication, are isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomTest {
    pub method: HomMethod,
    pub rows: Vec<HomRow>,
    /// Rows for `β`; empty when `A = B`.
    pub reverse_rows: Vec<HomRow>,
    pub passed: Option<bool>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PairingVerdict {
    Perfect,
    /// `α` is an isomorphism but the socle-functional rank test does not apply.
    HomOnly,
    Fails { degree: i32, rank_deficit: usize },
    Indeterminate { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingReport {
    pub u: usize,
    pub hf_a: HilbertFunction,
    pub hf_b: HilbertFunction,
    pub hf_c: HilbertFunction,
    pub socle_degree: i32,
    pub dim_c_top: usize,
    pub socle_c: HilbertFunction,
    /// `HF(A)(e) = HF(B)(D - e)` for all `e`.
    pub complementary: bool,
    pub rank_test: RankTest,
    pub hom_test: HomTest,
    pub verdict: PairingVerdict,
    /// `A ≅ Hom(B, ω_{R/K}) = B^∨` as graded modules; `None` when the
    /// search exceeded its budget.
    pub omega_duality: Option<Existence>,
    /// Wall time; not serialized so that reports are reproducible.
    #[serde(skip)]
    pub millis: u64,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct DualityOptions {
    pub max_hom_unknowns: usize,
    /// Run the hom linear solve even when the rank test already failed.
    pub hom_after_rank_failure: bool,
}

impl Default for DualityOptions {
    fn default() -> Self {
        DualityOptions { max_hom_unknowns: crate::hom::DEFAULT_MAX_UNKNOWNS, hom_after_rank_failure: false }
    }
}

fn rank_test<F: Field>(
    a: &FiniteLengthGradedModule<F>,
    b: &FiniteLengthGradedModule<F>,
    c: &FiniteLengthGradedModule<F>,
    d: i32,
) -> Result<RankTest> {
    let top = c.dim(d);
    if top != 1 {
        return Ok(RankTest {
            applicable: false,
            note: Some(format!("dim C_{d} = {top}, the socle functional is not defined")),
            rows: Vec::new(),
            passed: None,
        });
    }
    let field = c.field();
    let lo = a.lo().min(d - b.hi());
    let hi = a.hi().max(d - b.lo());
    let mut rows = Vec::new();
    let mut passed = true;
    for e in lo..=hi {
        let (da, db) = (a.dim(e), b.dim(d - e));
        if da == 0 && db == 0 {
            continue;
        }
        let rank = if da == 0 || db == 0 {
            0
        } else {
            let table = product_table(a, e, b, d - e, c)?;
            let m = Matrix::from_rows(field, db, table.into_iter().map(|row| row.into_iter().map(|v| v[0].clone()).collect()).collect());
            m.rank()
        };
        if rank != da || rank != db {
            passed = false;
        }
        rows.push(RankRow { degree_a: e, dim_a: da, dim_b: db, rank });
    }
    Ok(RankTest { applicable: true, note: None, rows, passed: Some(passed) })
}

/// Rank of `α` on `A_e`: rows indexed by the basis of `A_e`, columns by all
/// products with bases of `B`.
fn alpha_rank<F: Field>(
    a: &FiniteLengthGradedModule<F>,
    b: &FiniteLengthGradedModule<F>,
    c: &FiniteLengthGradedModule<F>,
    e: i32,
) -> Result<usize> {
    let da = a.dim(e);
    if da == 0 {
        return Ok(0);
    }
    let mut rows: Vec<Vec<F::Elem>> = vec![Vec::new(); da];
    for f in b.lo()..=b.hi() {
        if c.dim(e + f) == 0 || b.dim(f) == 0 {
            continue;
        }
        let table = product_table(a, e, b, f, c)?;
        for (i, row) in table.into_iter().enumerate() {
            for v in row {
                rows[i].extend(v);
            }
        }
    }
    let cols = rows[0].len();
    if cols == 0 {
        return Ok(0);
    }
    Ok(Matrix::from_rows(c.field(), cols, rows).rank())
}

fn hom_direction<F: Field>(
    a: &FiniteLengthGradedModule<F>,
    b: &FiniteLengthGradedModule<F>,
    c: &FiniteLengthGradedModule<F>,
    opts: &DualityOptions,
    note: &mut Option<String>,
) -> Result<(Vec<HomRow>, Option<bool>)> {
    let mut rows = Vec::new();
    let mut passed = Some(true);
    let trivial = b.is_zero() || c.is_zero();
    let (lo, hi) = if trivial {
        (a.lo(), a.hi())
    } else {
        let range = hom_shift_range(b, c);
        ((*range.start()).min(a.lo()), (*range.end()).max(a.hi()))
    };
    for e in lo..=hi {
        let hom_dim = if trivial {
            Some(0)
        } else {
            match graded_hom(b, c, e, opts.max_hom_unknowns) {
                Ok(h) => Some(h.dim()),
                Err(AlgebraError::BudgetExceeded(msg)) => {
                    *note = Some(msg);
                    None
                }
                Err(err) => return Err(err),
            }
        };
        let ar = alpha_rank(a, b, c, e)?;
        let da = a.dim(e);
        match hom_dim {
            Some(h) if h == da && ar == da => {}
            Some(_) => passed = Some(false),
            None if ar < da => passed = Some(false),
            None => {
                if passed == Some(true) {
                    passed = None;
                }
            }
        }
        if da > 0 || hom_dim != Some(0) {
            rows.push(HomRow { degree: e, dim_a: da, hom_dim, alpha_rank: Some(ar) });
        }
    }
    Ok((rows, passed))
}

fn combine(x: Option<bool>, y: Option<bool>) -> Option<bool> {
    match (x, y) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

fn hom_test<F: Field>(
    a: &FiniteLengthGradedModule<F>,
    b: &FiniteLengthGradedModule<F>,
    same: bool,
    c: &FiniteLengthGradedModule<F>,
    d: i32,
    rank: &RankTest,
    opts: &DualityOptions,
) -> Result<HomTest> {
    let socle = c.socle().hilbert_function();
    let simple_top = socle.length() == 1 && socle.lo == d;
    if rank.passed == Some(true) && simple_top {
        // The rank test makes α and β injective; the simple socle bounds the hom spaces.
        let bound = |x: &FiniteLengthGradedModule<F>, y: &FiniteLengthGradedModule<F>| {
            (x.lo()..=x.hi())
                .map(|e| HomRow { degree: e, dim_a: x.dim(e), hom_dim: Some(y.dim(d - e)), alpha_rank: Some(x.dim(e)) })
                .collect()
        };
        let reverse_rows = if same { Vec::new() } else { bound(b, a) };
        return Ok(HomTest {
            method: HomMethod::SocleEmbeddingBound,
            rows: bound(a, b),
            reverse_rows,
            passed: Some(true),
            note: None,
        });
    }
    if rank.passed == Some(false) && !opts.hom_after_rank_failure {
        return Ok(HomTest {
            method: HomMethod::LinearSolve,
            rows: Vec::new(),
            reverse_rows: Vec::new(),
            passed: None,
            note: Some("skipped: the rank test already failed".into()),
        });
    }
    let mut note = None;
    let (rows, forward) = hom_direction(a, b, c, opts, &mut note)?;
    let (reverse_rows, backward) = if same { (Vec::new(), forward) } else { hom_direction(b, a, c, opts, &mut note)? };
    Ok(HomTest { method: HomMethod::LinearSolve, rows, reverse_rows, passed: combine(forward, backward), note })
}

fn verdict(rank: &RankTest, hom: &HomTest) -> PairingVerdict {
    if rank.passed == Some(false) {
        let row = rank.rows.iter().find(|r| r.rank != r.dim_a || r.rank != r.dim_b).expect("failing row");
        return PairingVerdict::Fails { degree: row.degree_a, rank_deficit: row.dim_a.max(row.dim_b) - row.rank };
    }
    if hom.passed == Some(false) {
        let row = hom
            .rows
            .iter()
            .chain(&hom.reverse_rows)
            .find(|r| r.alpha_rank != Some(r.dim_a) || r.hom_dim.is_some_and(|h| h != r.dim_a))
            .expect("failing row");
        let ar = row.alpha_rank.unwrap_or(0);
        let deficit = match row.hom_dim {
            Some(h) => h.max(row.dim_a) - ar.min(h),
            None => row.dim_a - ar,
        };
        return PairingVerdict::Fails { degree: row.degree, rank_deficit: deficit };
    }
    match (rank.passed, hom.passed) {
        (Some(true), Some(true)) => PairingVerdict::Perfect,
        (None, Some(true)) if !rank.applicable => PairingVerdict::HomOnly,
        _ => PairingVerdict::Indeterminate {
            reason: hom.note.clone().unwrap_or_else(|| "hom test undetermined".into()),
        },
    }
}

/// Pairing report for one `u`, with `D = Σ(δ_i - 1)`.
pub fn pairing_report<F: Field>(
    setup: &ResidualSetup<F>,
    mods: &ResidualModules<F>,
    u: usize,
    opts: &DualityOptions,
) -> Result<PairingReport> {
    let start = Instant::now();
    let t = setup.t;
    if u > t + 1 {
        return Err(AlgebraError::IndexOutOfRange { index: u, limit: t + 2 });
    }
    let a = mods.get(u);
    let b = mods.get(t + 1 - u);
    let c = mods.top();
    let d = setup.socle_degree();
    let hf_a = a.hilbert_function();
    let hf_b = b.hilbert_function();
    let complementary = hf_a == hf_b.reflected(d);
    let rank = rank_test(a, b, c, d)?;
    let hom = hom_test(a, b, 2 * u == t + 1, c, d, &rank, opts)?;
    let verdict = verdict(&rank, &hom);
    let omega_duality = match find_isomorphism(a, &b.matlis_dual(), setup.seed.unwrap_or(0), opts.max_hom_unknowns) {
        Ok((found, _)) => Some(found),
        Err(AlgebraError::BudgetExceeded(_)) => None,
        Err(err) => return Err(err),
    };
    Ok(PairingReport {
        u,
        hf_a,
        hf_b,
        hf_c: c.hilbert_function(),
        socle_degree: d,
        dim_c_top: c.dim(d),
        socle_c: c.socle().hilbert_function(),
        complementary,
        rank_test: rank,
        hom_test: hom,
        verdict,
        omega_duality,
        millis: start.elapsed().as_millis() as u64,
        seed: setup.seed,
    })
}

/// Reports for `u = 0..=t+1`. `R/K` must be artinian.
pub fn duality_suite<F: Field>(
    setup: &ResidualSetup<F>,
    budget: GbBudget,
    opts: &DualityOptions,
) -> Result<(ResidualModules<F>, Vec<PairingReport>)> {
    if !setup.is_artinian() {
        return Err(AlgebraError::Precondition("duality suite needs artinian R/K; slice first".into()));
    }
    let mods = ResidualModules::build(setup, budget)?;
    let reports = (0..=setup.t + 1)
        .into_par_iter()
        .map(|u| pairing_report(setup, &mods, u, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok((mods, reports))
}

/// `M ≅ Hom(M, ω)`, tested through `Hom(M, ω)` dimensions and an explicit
/// isomorphism `M -> M^∨` (for an `R/K`-module, `Hom(M, ω_{R/K}) = M^∨`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfDualityReport {
    pub hf: HilbertFunction,
    pub hom_dims: BTreeMap<i32, usize>,
    /// Hom dimensions are those of `M` up to a single shift.
    pub dims_match: bool,
    pub isomorphism: Existence,
    pub holds: bool,
}

pub fn self_duality<F: Field>(
    m: &FiniteLengthGradedModule<F>,
    omega: &FiniteLengthGradedModule<F>,
    seed: u64,
    max_unknowns: usize,
) -> Result<SelfDualityReport> {
    let hom_dims = hom_dimensions(m, omega, max_unknowns)?;
    let hf = m.hilbert_function();
    let dims: Vec<usize> = hom_dims.values().copied().collect();
    let mut rev = hf.values.clone();
    rev.reverse();
    let contiguous = hom_dims.keys().zip(hom_dims.keys().skip(1)).all(|(a, b)| b - a == 1);
    let dims_match = contiguous && dims == rev;
    let (iso, _) = find_isomorphism(m, &m.matlis_dual(), seed, max_unknowns)?;
    Ok(SelfDualityReport { hf, hom_dims, dims_match, isomorphism: iso, holds: dims_match && iso == Existence::Found })
}

/// Socle dimension of the graded algebra `⊕_u A_u` (the truncated Rees
/// algebra `R[Iz]/(K, Jz, (Iz)^{t+2})`): socle elements of each `A_u` that
/// also multiply `A_1` to zero.
pub fn algebra_socle_dimension<F: Field>(mods: &ResidualModules<F>) -> Result<usize> {
    let n = mods.modules.len();
    let mut total = 0;
    for u in 0..n {
        let a = mods.get(u);
        for (e, vecs) in a.socle_vectors() {
            if u + 1 == n {
                total += vecs.len();
                continue;
            }
            let one = mods.get(1);
            let next = mods.get(u + 1);
            // images of the socle vectors under multiplication by the basis of A_1
            let mut rows: Vec<Vec<F::Elem>> = vec![Vec::new(); vecs.len()];
            for f in one.lo()..=one.hi() {
                if next.dim(e + f) == 0 {
                    continue;
                }
                let table = product_table(a, e, one, f, next)?;
                for (r, v) in vecs.iter().enumerate() {
                    for j in 0..one.dim(f) {
                        let mut acc = vec![next.field().zero(); next.dim(e + f)];
                        for (i, c) in v.iter().enumerate() {
                            if next.field().is_zero(c) {
                                continue;
                            }
                            for (k, x) in table[i][j].iter().enumerate() {
                                acc[k] = next.field().add(&acc[k], &next.field().mul(c, x));
                            }
                        }
                        rows[r].extend(acc);
                    }
                }
            }
            let cols = rows[0].len();
            let rank = if cols == 0 { 0 } else { Matrix::from_rows(a.field(), cols, rows).rank() };
            total += vecs.len() - rank;
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesReport {
    pub artinian: bool,
    /// `I^{t+1}/JI^t ≅ ω_{R/K}`.
    pub top_is_canonical: Existence,
    pub all_pairings_perfect: bool,
    pub algebra_socle_dimension: usize,
    pub gorenstein: bool,
}

/// The three conditions making `R/K ⊕ I/J ⊕ ... ⊕ I^{t+1}/JI^t` Gorenstein,
/// plus a direct socle count of the algebra.
pub fn rees_truncation_check<F: Field>(
    setup: &ResidualSetup<F>,
    mods: &ResidualModules<F>,
    reports: &[PairingReport],
    omega: &FiniteLengthGradedModule<F>,
    seed: u64,
    max_unknowns: usize,
) -> Result<ReesReport> {
    let artinian = setup.is_artinian();
    let (top_is_canonical, _) = find_isomorphism(mods.top(), omega, seed, max_unknowns)?;
    let all_pairings_perfect = reports.iter().all(|r| r.verdict == PairingVerdict::Perfect);
    let algebra_socle_dimension = algebra_socle_dimension(mods)?;
    let gorenstein = artinian && top_is_canonical == Existence::Found && all_pairings_perfect;
    Ok(ReesReport { artinian, top_is_canonical, all_pairings_perfect, algebra_socle_dimension, gorenstein })
}
