//! Fitting ideals and the `G_s` condition.
//!
//! Convention: for a presentation `F1 -> F0` with `rank F0 = n`,
//! `Fitt_j` is generated by the `(n - j)`-minors of the matrix; it is the
//! unit ideal for `j >= n` and zero when `n - j` exceeds the column count.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::Field;
use crate::groebner::{syzygy_module, ModulePresentation};
use crate::ideal::Ideal;
use crate::minors::minors;

pub fn fitting_ideal<F: Field>(pres: &ModulePresentation<F>, j: usize) -> Result<Ideal<F>> {
    let ring = pres.ring();
    let n = pres.rank();
    if j >= n {
        return Ok(Ideal::unit(ring));
    }
    let size = n - j;
    let gens = minors(ring, &pres.matrix(), size)?;
    let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut uniq = Vec::with_capacity(gens.len());
    for g in gens {
        if !uniq.contains(&g) {
            uniq.push(g);
        }
    }
    let id = Ideal::new(ring, uniq)?;
    if id.is_homogeneous() && !id.is_zero() {
        id.minimalized()
    } else {
        Ok(id)
    }
}

/// Presentation of the ideal `I` as a module on its minimal generators.
pub fn ideal_presentation<F: Field>(ideal: &Ideal<F>) -> Result<ModulePresentation<F>> {
    let mins = ideal.minimalized()?;
    syzygy_module(ideal.ring(), mins.generators(), &[0], ideal.budget())
}

/// Outcome of the Fitting-ideal test for `G_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GsReport {
    pub s: usize,
    pub holds: bool,
    /// Smallest `k <= s` such that `G_k` fails.
    pub first_failing_level: Option<usize>,
    /// `(j, codim Fitt_j(I))` for the levels examined.
    pub fitting_codims: Vec<(usize, usize)>,
}

/// `G_s` holds iff `codim Fitt_j(I) >= j + 1` for `1 <= j <= s - 1`.
pub fn check_gs<F: Field>(ideal: &Ideal<F>, s: usize) -> Result<GsReport> {
    let pres = ideal_presentation(ideal)?;
    check_gs_with(&pres, s)
}

pub fn check_gs_with<F: Field>(pres: &ModulePresentation<F>, s: usize) -> Result<GsReport> {
    let mut codims = Vec::new();
    let mut failing = None;
    for j in 1..s {
        let c = if j >= pres.rank() {
            pres.ring().num_vars() + 1
        } else {
            fitting_ideal(pres, j)?.codimension()?
        };
        codims.push((j, c));
        if c < j + 1 {
            failing = Some(j + 1);
            break;
        }
    }
    Ok(GsReport { s, holds: failing.is_none(), first_failing_level: failing, fitting_codims: codims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::monomial::MonomialOrder;
    use crate::ring::{PolynomialRing, RingExt};

    #[test]
    fn koszul_fitting() {
        let r = PolynomialRing::new(Fp::default_prime(), &["x", "y"], MonomialOrder::GRevLex).unwrap();
        let col = vec![vec![r.parse("y").unwrap()], vec![r.parse("-x").unwrap()]];
        let p = ModulePresentation::from_matrix(&r, &col, None).unwrap();
        let f1 = fitting_ideal(&p, 1).unwrap();
        assert!(f1.equals(&Ideal::from_strings(&r, &["x", "y"]).unwrap()).unwrap());
        assert!(fitting_ideal(&p, 0).unwrap().is_zero());
        let zero = ModulePresentation::from_matrix(&r, &[vec![r.zero()], vec![r.zero()]], None).unwrap();
        assert!(fitting_ideal(&zero, 2).unwrap().is_unit().unwrap());
        assert!(fitting_ideal(&zero, 1).unwrap().is_zero());
    }

    #[test]
    fn square_of_plane_ideal_fails_g3() {
        let r = PolynomialRing::new(Fp::default_prime(), &["x", "y", "z"], MonomialOrder::GRevLex).unwrap();
        let i = Ideal::from_strings(&r, &["x", "y"]).unwrap().power(2).unwrap();
        let rep = check_gs(&i, 3).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.first_failing_level, Some(3));
        assert_eq!(rep.fitting_codims, vec![(1, 2), (2, 2)]);
        assert!(check_gs(&i, 2).unwrap().holds);
    }
}
