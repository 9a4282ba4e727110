//! `H^0_m(R/L) = (L : m^∞)/L` as a finite module, and its socle.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::GbBudget;
use crate::ideal::Ideal;
use crate::module::{FiniteLengthGradedModule, HilbertFunction};
use crate::poly::Polynomial;
use crate::rng::{random_scalar, SeedStream};

use super::setup::{ResidualSetup, RETRY_CAP};

/// `L : m^∞` and the module `(L : m^∞)/L`.
///
/// The saturation is `L : ℓ^∞` for a random linear form `ℓ`; it equals
/// `L : m^∞` exactly when the quotient has finite length, which the module
/// construction certifies. Failed draws are retried.
pub fn h0_module<F: Field>(
    l: &Ideal<F>,
    seed: u64,
    budget: GbBudget,
) -> Result<(Ideal<F>, FiniteLengthGradedModule<F>, Vec<String>)> {
    let ring = l.ring();
    let stream = SeedStream::new(seed);
    let mut log = Vec::new();
    for attempt in 0..RETRY_CAP as u64 {
        let mut rng = stream.rng(attempt);
        let coeffs: Vec<F::Elem> = (1..ring.num_vars()).map(|_| random_scalar(ring.field(), &mut rng)).collect();
        let sat = l.saturate_by_linear_form(&coeffs)?.with_budget(budget);
        match FiniteLengthGradedModule::subquotient(&sat, l, budget) {
            Ok(m) => return Ok((sat, m, log)),
            Err(AlgebraError::NotFiniteLength(msg)) => {
                log.push(format!("linear form {attempt} lies in an associated prime: {msg}"));
            }
            Err(err) => return Err(err),
        }
    }
    Err(AlgebraError::Indeterminate(format!("no suitable linear form after {RETRY_CAP} draws")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleSocleReport {
    pub t: usize,
    pub h0: HilbertFunction,
    pub socle: HilbertFunction,
    pub simple: bool,
    /// `Σ(δ_i - 1)`.
    pub expected_degree: i32,
    pub strong_hyp: bool,
    pub log: Vec<String>,
}

/// Socle of `H^0_m(R/JI^t)` for a setup with `s = d`.
pub fn simple_socle_check<F: Field>(setup: &ResidualSetup<F>, seed: u64, budget: GbBudget) -> Result<SimpleSocleReport> {
    if setup.s != setup.ring.num_vars() {
        return Err(AlgebraError::Precondition(format!("need s = d, got s = {} in {} variables", setup.s, setup.ring.num_vars())));
    }
    let l = setup.j.product(&setup.i.power(setup.t as u32)?)?.with_budget(budget);
    let (_, m, log) = h0_module(&l, seed, budget)?;
    let socle = m.socle().hilbert_function();
    Ok(SimpleSocleReport {
        t: setup.t,
        h0: m.hilbert_function(),
        simple: socle.length() == 1,
        socle,
        expected_degree: setup.socle_degree(),
        strong_hyp: setup.flags.strong_hyp,
        log,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SocleVerdict {
    GeneratesSocle,
    /// The element is zero modulo `L`.
    LiesInIdeal,
    Violates { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementSocleReport {
    pub degree: Option<u32>,
    pub h0: HilbertFunction,
    pub socle: HilbertFunction,
    pub verdict: SocleVerdict,
}

/// Whether the class of `p` generates the socle of `H^0_m(R/L)`.
pub fn element_generates_socle<F: Field>(
    p: &Polynomial<F>,
    l: &Ideal<F>,
    seed: u64,
    budget: GbBudget,
) -> Result<ElementSocleReport> {
    let (sat, m, _) = h0_module(l, seed, budget)?;
    let socle = m.socle().hilbert_function();
    let h0 = m.hilbert_function();
    let degree = p.degree();
    let verdict = if l.contains(p)? {
        SocleVerdict::LiesInIdeal
    } else if !p.is_homogeneous() {
        SocleVerdict::Violates { reason: "element is not homogeneous".into() }
    } else if !sat.contains(p)? {
        SocleVerdict::Violates { reason: "class is not killed by a power of m".into() }
    } else if socle.length() != 1 {
        SocleVerdict::Violates { reason: format!("socle has dimension {}", socle.length()) }
    } else {
        let vars = crate::ring::RingExt::vars(l.ring());
        let killed = vars.iter().map(|x| l.contains(&(x * p))).collect::<Result<Vec<_>>>()?;
        if killed.iter().all(|&k| k) {
            SocleVerdict::GeneratesSocle
        } else {
            SocleVerdict::Violates { reason: "class is not in the socle".into() }
        }
    };
    Ok(ElementSocleReport { degree, h0, socle, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::monomial::MonomialOrder;
    use crate::ring::{PolynomialRing, RingExt};

    #[test]
    fn h0_of_embedded_component() {
        let r = PolynomialRing::new(Fp::default_prime(), &["x", "y", "z"], MonomialOrder::GRevLex).unwrap();
        // (x^2, xy, xz) = (x) ∩ (x^2, y, z): H^0 is spanned by x
        let l = Ideal::from_strings(&r, &["x^2", "x*y", "x*z"]).unwrap();
        let (sat, m, _) = h0_module(&l, 3, GbBudget::default()).unwrap();
        assert!(sat.equals(&Ideal::from_strings(&r, &["x"]).unwrap()).unwrap());
        assert_eq!(m.hilbert_function(), HilbertFunction::new(1, vec![1]));
        let rep = element_generates_socle(&r.parse("x").unwrap(), &l, 3, GbBudget::default()).unwrap();
        assert_eq!(rep.verdict, SocleVerdict::GeneratesSocle);
        let rep = element_generates_socle(&r.parse("x^2").unwrap(), &l, 3, GbBudget::default()).unwrap();
        assert_eq!(rep.verdict, SocleVerdict::LiesInIdeal);
    }
}
