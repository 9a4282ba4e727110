//! Jacobian determinants and the socle experiments built on them.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::GbBudget;
use crate::ideal::Ideal;
use crate::minors::determinant;
use crate::poly::Polynomial;
use crate::residual::{element_generates_socle, ElementSocleReport, ResidualSetup, SocleVerdict};

pub fn jacobian_matrix<F: Field>(forms: &[Polynomial<F>]) -> Result<Vec<Vec<Polynomial<F>>>> {
    let ring = forms.first().ok_or_else(|| AlgebraError::ShapeMismatch("no forms".into()))?.ring();
    let d = ring.num_vars();
    if forms.len() != d {
        return Err(AlgebraError::ShapeMismatch(format!("{} forms in {d} variables", forms.len())));
    }
    forms.iter().map(|f| (0..d).map(|j| f.partial_derivative(j)).collect()).collect()
}

pub fn jacobian_determinant<F: Field>(forms: &[Polynomial<F>]) -> Result<Polynomial<F>> {
    let m = jacobian_matrix(forms)?;
    determinant(forms[0].ring(), &m)
}

fn common_degree<F: Field>(forms: &[Polynomial<F>]) -> Option<u32> {
    let d = forms.first()?.degree()?;
    forms.iter().all(|f| f.is_homogeneous() && f.degree() == Some(d)).then_some(d)
}

/// `δ det Jac(GF) = (δ + γ) G^d det Jac(F)` as an exact polynomial identity.
pub fn check_jacformula<F: Field>(g: &Polynomial<F>, f: &[Polynomial<F>]) -> Result<bool> {
    let delta = common_degree(f).ok_or_else(|| AlgebraError::Precondition("F must be forms of one degree".into()))?;
    if !g.is_homogeneous() || g.is_zero() {
        return Err(AlgebraError::Precondition("G must be a nonzero form".into()));
    }
    let gamma = g.degree().expect("nonzero");
    let field = g.field();
    let d = f.len() as u32;
    let gf: Vec<_> = f.iter().map(|fi| g * fi).collect();
    let lhs = jacobian_determinant(&gf)?.scale(&field.from_i64(delta as i64));
    let rhs = (&g.pow(d) * &jacobian_determinant(f)?).scale(&field.from_i64((delta + gamma) as i64));
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct G1SocleReport {
    pub gamma: u32,
    pub delta: u32,
    pub regular_sequence: bool,
    pub jacformula: bool,
    pub socle: ElementSocleReport,
}

/// `I = (G)`, `J = (GF)`: does `det Jac(GF)` generate the socle of `R/(G^d F)`?
pub fn g1_socle_check<F: Field>(g: &Polynomial<F>, f: &[Polynomial<F>], seed: u64, budget: GbBudget) -> Result<G1SocleReport> {
    let ring = g.ring();
    let delta = common_degree(f).ok_or_else(|| AlgebraError::Precondition("F must be forms of one degree".into()))?;
    let gamma = g.degree().ok_or_else(|| AlgebraError::Precondition("G must be nonzero".into()))?;
    let field = ring.field();
    if field.is_zero(&field.from_i64(delta as i64)) || field.is_zero(&field.from_i64((delta + gamma) as i64)) {
        return Err(AlgebraError::Precondition("δ or δ + γ vanishes in the field".into()));
    }
    let fi = Ideal::new(ring, f.to_vec())?.with_budget(budget);
    let regular_sequence = fi.codimension()? == ring.num_vars();
    if !regular_sequence {
        return Err(AlgebraError::Precondition("F is not a regular sequence".into()));
    }
    let jacformula = check_jacformula(g, f)?;
    let gf: Vec<_> = f.iter().map(|x| g * x).collect();
    let det = jacobian_determinant(&gf)?;
    let gd = g.pow(ring.num_vars() as u32);
    let l = Ideal::new(ring, f.iter().map(|x| &gd * x).collect())?.with_budget(budget);
    let socle = element_generates_socle(&det, &l, seed, budget)?;
    Ok(G1SocleReport { gamma, delta, regular_sequence, jacformula, socle })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub jacobian_degree: Option<u32>,
    pub socle_degree: i32,
    pub socle: ElementSocleReport,
    /// A hypothesis-satisfying instance with `det Jac ∈ JI^t` would
    /// contradict the conjectured socle generator.
    pub counterexample_candidate: bool,
}

/// `det Jac` of the generators of `J` either lies in `JI^t` or generates the
/// socle of `H^0_m(R/JI^t)`.
pub fn jacobian_containment_check<F: Field>(setup: &ResidualSetup<F>, seed: u64, budget: GbBudget) -> Result<ContainmentReport> {
    let d = setup.ring.num_vars();
    if setup.s != d {
        return Err(AlgebraError::Precondition("need s = d".into()));
    }
    let gens = setup.j.generators();
    let delta = common_degree(gens).ok_or_else(|| AlgebraError::Precondition("J must be generated in one degree".into()))?;
    let det = jacobian_determinant(gens)?;
    let expected = d as u32 * (delta - 1);
    if !det.is_zero() && det.degree() != Some(expected) {
        return Err(AlgebraError::Precondition(format!("Jacobian degree {:?} differs from {expected}", det.degree())));
    }
    let l = setup.j.product(&setup.i.power(setup.t as u32)?)?.with_budget(budget);
    let socle = element_generates_socle(&det, &l, seed, budget)?;
    let counterexample_candidate = socle.verdict == SocleVerdict::LiesInIdeal && setup.flags.standard_hyp;
    Ok(ContainmentReport { jacobian_degree: det.degree(), socle_degree: setup.socle_degree(), socle, counterexample_candidate })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalColonReport {
    pub determinant: String,
    pub colon: Vec<String>,
    /// `(G^d F) : det Jac(GF) = (G)`.
    pub equals_g: bool,
}

/// `(G^d F) : det Jac(GF)` for arbitrary (possibly inhomogeneous) `G`, `F`.
pub fn principal_colon_check<F: Field>(g: &Polynomial<F>, f: &[Polynomial<F>]) -> Result<PrincipalColonReport> {
    let ring = g.ring();
    let gf: Vec<_> = f.iter().map(|fi| g * fi).collect();
    let det = jacobian_determinant(&gf)?;
    let gd = g.pow(f.len() as u32);
    let l = Ideal::new(ring, f.iter().map(|fi| &gd * fi).collect())?;
    let colon = l.colon_element(&det)?;
    let equals_g = colon.equals(&Ideal::new(ring, vec![g.clone()])?)?;
    Ok(PrincipalColonReport {
        determinant: det.to_string(),
        colon: colon.generators().iter().map(|p| p.to_string()).collect(),
        equals_g,
    })
}

/// `p ∈ L_1^k ∩ ... ∩ L_r^k` for ideals `L_i` generated by linear forms.
pub fn symbolic_power_membership_linear<F: Field>(p: &Polynomial<F>, primes: &[Ideal<F>], k: u32) -> Result<bool> {
    for l in primes {
        if l.generators().iter().any(|g| !g.is_homogeneous() || g.degree() != Some(1)) {
            return Err(AlgebraError::Precondition("primes must be generated by linear forms".into()));
        }
        if !l.power(k)?.contains(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::monomial::MonomialOrder;
    use crate::ring::{PolynomialRing, RingExt};

    #[test]
    fn squares() {
        let r = PolynomialRing::new(Fp::default_prime(), &["x", "y"], MonomialOrder::GRevLex).unwrap();
        let f = r.parse_all(&["x^2", "y^2"]).unwrap();
        assert_eq!(jacobian_determinant(&f).unwrap(), r.parse("4*x*y").unwrap());
        let rep = r.parse_all(&["x^2+y^2", "x^2+y^2"]).unwrap();
        assert!(jacobian_determinant(&rep).unwrap().is_zero());
        assert!(check_jacformula(&r.parse("x+y").unwrap(), &f).unwrap());
    }

    #[test]
    fn linear_symbolic_powers() {
        let r = PolynomialRing::new(Fp::default_prime(), &["x", "y"], MonomialOrder::GRevLex).unwrap();
        let px = Ideal::from_strings(&r, &["x"]).unwrap();
        let py = Ideal::from_strings(&r, &["y"]).unwrap();
        assert!(symbolic_power_membership_linear(&r.parse("x*y").unwrap(), &[px.clone(), py], 1).unwrap());
        assert!(!symbolic_power_membership_linear(&r.parse("x").unwrap(), &[px], 2).unwrap());
    }
}
