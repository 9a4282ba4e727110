//! Canonical modules of Cohen–Macaulay quotients.
//!
//! Convention: `ω_{R/K} = Ext^c(R/K, R(-d))` with `c = codim K`. For a
//! complete intersection of degrees `δ_i` this is `R/K(Σ δ_i - d)`, and for
//! artinian `R/K` it is the graded Matlis dual, with socle in degree 0.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::GbBudget;
use crate::ideal::Ideal;
use crate::module::{FiniteLengthGradedModule, HilbertFunction};
use crate::resolution::{monomial_count, GradedResolution};

#[derive(Clone, Debug)]
pub struct CanonicalModule<F: Field> {
    pub codim: usize,
    nvars: usize,
    /// Shifts of the free modules `F_0, ..., F_c` resolving `R/K`.
    shifts: Vec<Vec<i32>>,
    /// Present when `R/K` is artinian.
    pub module: Option<FiniteLengthGradedModule<F>>,
}

impl<F: Field> CanonicalModule<F> {
    /// `dim ω_e = Σ_i (-1)^{c-i} Σ_j dim R_{e-d+a_ij}` from the dual resolution.
    pub fn hilbert(&self, e: i32) -> i128 {
        if self.shifts.is_empty() {
            return self.module.as_ref().map_or(0, |m| m.dim(e) as i128);
        }
        let c = self.codim;
        let d = self.nvars as i32;
        let mut acc = 0i128;
        for (i, sh) in self.shifts.iter().enumerate() {
            let sign = if (c - i) % 2 == 0 { 1 } else { -1 };
            for a in sh {
                acc += sign * monomial_count(self.nvars, (e - d + a) as i64) as i128;
            }
        }
        acc
    }

    /// Values on `lo..=hi`.
    pub fn hilbert_function(&self, lo: i32, hi: i32) -> HilbertFunction {
        HilbertFunction::new(lo, (lo..=hi).map(|e| self.hilbert(e).max(0) as usize).collect())
    }

    /// Lowest degree of a generator of `ω`: `d - max a_{cj}`.
    pub fn initial_degree(&self) -> i32 {
        if self.shifts.is_empty() {
            return self.module.as_ref().map_or(0, |m| m.lo());
        }
        self.nvars as i32 - self.shifts[self.codim].iter().copied().max().unwrap_or(0)
    }

    /// Artinian case: the module's Hilbert function agrees with the dual
    /// resolution formula (the twist calibration).
    pub fn is_calibrated(&self) -> bool {
        match &self.module {
            None => true,
            Some(m) => (m.lo() - 1..=m.hi() + 1).all(|e| self.hilbert(e) == m.dim(e) as i128),
        }
    }
}

/// `ω_{R/K}` for Cohen–Macaulay `R/K`. Artinian quotients skip the
/// resolution; use [`canonical_module_resolved`] to get both descriptions.
pub fn canonical_module<F: Field>(k: &Ideal<F>, budget: GbBudget) -> Result<CanonicalModule<F>> {
    let d = k.ring().num_vars();
    if k.dimension()? == Some(0) {
        let module = FiniteLengthGradedModule::quotient_ring(k, budget)?.matlis_dual();
        return Ok(CanonicalModule { codim: d, nvars: d, shifts: Vec::new(), module: Some(module) });
    }
    canonical_module_resolved(k, budget)
}

/// Like [`canonical_module`], always computing the resolution shifts.
pub fn canonical_module_resolved<F: Field>(k: &Ideal<F>, budget: GbBudget) -> Result<CanonicalModule<F>> {
    let d = k.ring().num_vars();
    let res = GradedResolution::of_quotient(k, d, budget)?;
    let pd = res
        .projective_dimension()
        .ok_or_else(|| AlgebraError::Indeterminate("resolution truncated before exactness".into()))?;
    let codim = k.codimension()?;
    if pd != codim {
        return Err(AlgebraError::NotCohenMacaulay(format!("pd = {pd} but codim = {codim}")));
    }
    let shifts = (0..=pd).map(|i| res.shifts(i)).collect();
    let module = if codim == d {
        Some(FiniteLengthGradedModule::quotient_ring(k, budget)?.matlis_dual())
    } else {
        None
    };
    Ok(CanonicalModule { codim, nvars: d, shifts, module })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::monomial::MonomialOrder;
    use crate::ring::{PolynomialRing, Ring};

    fn ring(n: &[&str]) -> Ring<Fp> {
        PolynomialRing::new(Fp::default_prime(), n, MonomialOrder::GRevLex).unwrap()
    }

    #[test]
    fn complete_intersection_calibration() {
        let r = ring(&["x", "y"]);
        let k = Ideal::from_strings(&r, &["x^2", "y^2"]).unwrap();
        let w = canonical_module_resolved(&k, GbBudget::default()).unwrap();
        assert!(w.is_calibrated());
        let quick = canonical_module(&k, GbBudget::default()).unwrap();
        assert_eq!(quick.module.unwrap().hilbert_function(), w.module.as_ref().unwrap().hilbert_function());
        let m = w.module.as_ref().unwrap();
        assert_eq!(m.hilbert_function(), HilbertFunction::new(-2, vec![1, 2, 1]));
        assert!(m.is_gorenstein_artinian());
    }

    #[test]
    fn hypersurface_twist() {
        // ω of R/(f), deg f = a, in k[x,y]: R/(f)(a - 2).
        let r = ring(&["x", "y"]);
        let k = Ideal::from_strings(&r, &["x"]).unwrap();
        let w = canonical_module(&k, GbBudget::default()).unwrap();
        assert!(w.module.is_none());
        for e in -3..5 {
            let expect = if e + 1 - 2 >= 0 { 1 } else { 0 };
            assert_eq!(w.hilbert(e), expect);
        }
        assert_eq!(w.initial_degree(), 1);
    }

    #[test]
    fn non_cm_rejected() {
        let r = ring(&["x", "y"]);
        let k = Ideal::from_strings(&r, &["x^2", "x*y"]).unwrap();
        assert!(matches!(canonical_module(&k, GbBudget::default()), Err(AlgebraError::NotCohenMacaulay(_))));
    }
}
