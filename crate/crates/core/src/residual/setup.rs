//! Residual intersections `K = J : I` and the hypotheses on `I`.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::fitting::{check_gs, GsReport};
use crate::groebner::GbBudget;
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::resolution::{depth_of_quotient, is_cohen_macaulay};
use crate::ring::{PolynomialRing, Ring, RingExt};
use crate::rng::{random_scalar, SeedStream};

/// Attempts allowed when a random choice fails a codimension check.
pub const RETRY_CAP: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupFlags {
    pub is_residual: bool,
    pub is_geometric: bool,
    pub standard_hyp: bool,
    pub strong_hyp: bool,
    /// `R/I` Cohen–Macaulay and `s = g + 1`.
    pub huneke_hyp: bool,
}

/// `depth R/I^j >= dim R/I - j + 1`; `holds` is `None` when the depth could
/// not be computed within budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthCheck {
    pub j: usize,
    pub required: i64,
    pub depth: Option<usize>,
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub gs: GsReport,
    pub depths: Vec<DepthCheck>,
    pub quotient_cm: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ResidualSetup<F: Field> {
    pub ring: Ring<F>,
    pub i: Ideal<F>,
    pub j: Ideal<F>,
    pub k: Ideal<F>,
    pub s: usize,
    pub g: usize,
    pub t: usize,
    /// Degrees `δ_i` of the generators of `J`.
    pub degrees: Vec<u32>,
    pub codim_k: usize,
    pub codim_i_plus_k: usize,
    pub flags: SetupFlags,
    pub hypotheses: Option<HypothesisReport>,
    pub seed: Option<u64>,
    /// Retries and other events, in order.
    pub log: Vec<String>,
}

impl<F: Field> ResidualSetup<F> {
    /// `D = Σ (δ_i - 1)`.
    pub fn socle_degree(&self) -> i32 {
        self.degrees.iter().map(|&d| d as i32 - 1).sum()
    }

    pub fn is_artinian(&self) -> bool {
        self.codim_k == self.ring.num_vars()
    }
}

/// `s` forms of degree `delta`, each a random combination of all products
/// (monomial × generator of `I`) of that degree.
pub fn general_elements<F: Field>(i: &Ideal<F>, s: usize, delta: u32, seed: u64) -> Result<Ideal<F>> {
    let ring = i.ring();
    let field = ring.field();
    let mut rng = SeedStream::new(seed).rng(0);
    let mut products: Vec<Polynomial<F>> = Vec::new();
    for g in i.generators() {
        let dg = g.degree().ok_or_else(|| AlgebraError::Precondition("zero generator".into()))?;
        if !g.is_homogeneous() {
            return Err(AlgebraError::Precondition("general elements need a homogeneous ideal".into()));
        }
        if dg <= delta {
            for m in ring.monomials_of_degree(delta - dg) {
                products.push(g.mul_term(&m, &field.one()));
            }
        }
    }
    if products.is_empty() {
        return Err(AlgebraError::Precondition(format!("no element of I has degree {delta}")));
    }
    let mut gens = Vec::with_capacity(s);
    for _ in 0..s {
        let mut acc = Vec::new();
        for p in &products {
            let c = random_scalar(field, &mut rng);
            acc.extend(p.scale(&c).into_terms());
        }
        gens.push(Polynomial::from_terms(ring, acc));
    }
    Ok(Ideal::new(ring, gens)?.with_budget(i.budget()))
}

/// Evaluates `G_s` and the depth conditions for `1 <= j <= t + 1`.
pub fn evaluate_hypotheses<F: Field>(i: &Ideal<F>, s: usize, t: usize, budget: GbBudget) -> Result<HypothesisReport> {
    let gs = check_gs(i, s)?;
    let dim = i.dimension()?.unwrap_or(0) as i64;
    let mut depths = Vec::new();
    let mut notes = Vec::new();
    for j in 1..=t + 1 {
        let required = dim - j as i64 + 1;
        if required <= 0 {
            depths.push(DepthCheck { j, required, depth: None, holds: Some(true) });
            continue;
        }
        let power = i.power(j as u32)?;
        match depth_of_quotient(&power, budget) {
            Ok(dp) => depths.push(DepthCheck { j, required, depth: Some(dp), holds: Some(dp as i64 >= required) }),
            Err(AlgebraError::BudgetExceeded(msg)) | Err(AlgebraError::Indeterminate(msg)) => {
                notes.push(format!("depth of R/I^{j} undetermined: {msg}"));
                depths.push(DepthCheck { j, required, depth: None, holds: None });
            }
            Err(e) => return Err(e),
        }
    }
    let quotient_cm = match is_cohen_macaulay(i, budget) {
        Ok(b) => Some(b),
        Err(AlgebraError::BudgetExceeded(msg)) => {
            notes.push(format!("Cohen-Macaulayness of R/I undetermined: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    Ok(HypothesisReport { gs, depths, quotient_cm, notes })
}

/// Builds the setup for `J ⊆ I`. Hypotheses are evaluated when requested.
pub fn make_setup<F: Field>(i: &Ideal<F>, j: &Ideal<F>, with_hypotheses: bool) -> Result<ResidualSetup<F>> {
    let ring = i.ring().clone();
    if !ring.same_ring(j.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    if !i.is_homogeneous() || !j.is_homogeneous() {
        return Err(AlgebraError::Precondition("residual setups need homogeneous ideals".into()));
    }
    if !j.is_subset_of(i)? {
        return Err(AlgebraError::NotContained("J is not contained in I".into()));
    }
    let budget = i.budget();
    let s = j.num_generators();
    let g = i.codimension()?;
    if s < g {
        return Err(AlgebraError::Precondition(format!("s = {s} is below codim I = {g}")));
    }
    let t = s - g;
    let degrees = j.generator_degrees().expect("homogeneous");
    let k = j.colon(i)?;
    let proper = !k.is_unit()?;
    let codim_k = k.codimension()?;
    let is_residual = proper && codim_k >= s;
    let codim_i_plus_k = i.sum(&k)?.codimension()?;
    let is_geometric = is_residual && codim_i_plus_k > s;
    let mut setup = ResidualSetup {
        ring,
        i: i.clone(),
        j: j.clone(),
        k,
        s,
        g,
        t,
        degrees,
        codim_k,
        codim_i_plus_k,
        flags: SetupFlags { is_residual, is_geometric, standard_hyp: false, strong_hyp: false, huneke_hyp: false },
        hypotheses: None,
        seed: None,
        log: Vec::new(),
    };
    if with_hypotheses {
        let h = evaluate_hypotheses(i, s, t, budget)?;
        setup.set_hypotheses(h);
    }
    Ok(setup)
}

impl<F: Field> ResidualSetup<F> {
    pub fn set_hypotheses(&mut self, h: HypothesisReport) {
        let depth_ok = |j: usize| h.depths.iter().find(|d| d.j == j).and_then(|d| d.holds) == Some(true);
        let standard = h.gs.holds && (1..=self.t).all(depth_ok);
        self.flags.standard_hyp = standard;
        self.flags.strong_hyp = standard && depth_ok(self.t + 1);
        self.flags.huneke_hyp = h.quotient_cm == Some(true) && self.s == self.g + 1;
        self.hypotheses = Some(h);
    }
}

/// `J` from seeded general elements, retrying with fresh sub-seeds until
/// `J : I` has codimension at least `s`.
pub fn general_residual<F: Field>(i: &Ideal<F>, s: usize, delta: u32, seed: u64, with_hypotheses: bool) -> Result<ResidualSetup<F>> {
    let stream = SeedStream::new(seed);
    let mut log = Vec::new();
    let mut last = None;
    for attempt in 0..RETRY_CAP {
        let sub = stream.sub_seed(attempt);
        let j = general_elements(i, s, delta, sub)?;
        let mut setup = make_setup(i, &j, false)?;
        setup.seed = Some(sub);
        if setup.flags.is_residual {
            setup.log = log;
            if with_hypotheses {
                let h = evaluate_hypotheses(i, s, setup.t, i.budget())?;
                setup.set_hypotheses(h);
            }
            return Ok(setup);
        }
        log.push(format!("attempt {attempt} (sub-seed {sub}): codim J:I = {} < s = {s}, retrying", setup.codim_k));
        last = Some(setup);
    }
    let mut setup = last.expect("at least one attempt");
    log.push(format!("gave up after {RETRY_CAP} attempts"));
    setup.log = log;
    Ok(setup)
}

/// Cuts down by `d - s` general linear forms: the ring map
/// `x_i ↦ Σ_j a_ij y_j` to `s` variables with random `a`. The image setup is
/// rebuilt and checked (residual of codimension `s`, and `G_s` when the
/// hypotheses are evaluated); failures are retried with fresh sub-seeds.
pub fn artinian_slice<F: Field>(setup: &ResidualSetup<F>, seed: u64, with_hypotheses: bool) -> Result<ResidualSetup<F>> {
    let d = setup.ring.num_vars();
    let s = setup.s;
    if d <= s {
        return Ok(setup.clone());
    }
    let names: Vec<&str> = setup.ring.var_names()[..s].iter().map(|n| n.as_str()).collect();
    let target = PolynomialRing::new(setup.ring.field().clone(), &names, MonomialOrder::GRevLex)?;
    let stream = SeedStream::new(seed);
    let mut log = setup.log.clone();
    let mut last = None;
    for attempt in 0..RETRY_CAP {
        let sub = stream.sub_seed(attempt);
        let mut rng = SeedStream::new(sub).rng(0);
        let field = target.field();
        let images: Vec<Polynomial<F>> = (0..d)
            .map(|_| {
                let mut p = target.zero();
                for y in target.vars() {
                    p = &p + &y.scale(&random_scalar(field, &mut rng));
                }
                p
            })
            .collect();
        let i2 = setup.i.map(&target, &images)?;
        let j2 = setup.j.map(&target, &images)?;
        if j2.num_generators() != s {
            log.push(format!("slice attempt {attempt}: a generator of J vanished, retrying"));
            continue;
        }
        let mut sliced = make_setup(&i2, &j2, with_hypotheses)?;
        sliced.seed = Some(sub);
        let gs_ok = sliced.hypotheses.as_ref().map_or(true, |h| h.gs.holds);
        if sliced.flags.is_residual && sliced.is_artinian() && gs_ok {
            log.push(format!("sliced by {} general linear forms (sub-seed {sub})", d - s));
            sliced.log = log;
            return Ok(sliced);
        }
        log.push(format!(
            "slice attempt {attempt} (sub-seed {sub}): codim K' = {}, G_s {}, retrying",
            sliced.codim_k,
            if gs_ok { "holds" } else { "fails" }
        ));
        last = Some(sliced);
    }
    let mut sliced = last.ok_or_else(|| AlgebraError::Indeterminate("no valid slice found".into()))?;
    log.push(format!("gave up slicing after {RETRY_CAP} attempts"));
    sliced.log = log;
    Ok(sliced)
}

/// `I^u ∩ K = J I^{u-1}` (for `u >= 1`).
pub fn check_intersection_lemma<F: Field>(setup: &ResidualSetup<F>, u: u32) -> Result<bool> {
    if u == 0 {
        return Err(AlgebraError::Precondition("u must be at least 1".into()));
    }
    let lhs = setup.i.power(u)?.intersect(&setup.k)?;
    let rhs = setup.j.product(&setup.i.power(u - 1)?)?;
    lhs.equals(&rhs)
}
