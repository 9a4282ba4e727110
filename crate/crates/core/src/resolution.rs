//! Minimal graded free resolutions of cyclic modules `R/I`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{syzygy_module, GbBudget, ModulePresentation};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// `0 <- F_0 <- F_1 <- ... <- F_n`, with `maps[i]: F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct GradedResolution<F: Field> {
    ring: Ring<F>,
    maps: Vec<ModulePresentation<F>>,
    complete: bool,
}

/// Graded Betti numbers: `table[i][j] = β_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub table: Vec<BTreeMap<i32, usize>>,
}

impl BettiTable {
    pub fn totals(&self) -> Vec<usize> {
        self.table.iter().map(|m| m.values().sum()).collect()
    }
}

/// Number of monomials of degree `e` in `d` variables.
pub fn monomial_count(d: usize, e: i64) -> u128 {
    if e < 0 {
        return 0;
    }
    let e = e as u128;
    let mut num: u128 = 1;
    for k in 1..d as u128 {
        num = num * (e + k) / k;
    }
    num
}

impl<F: Field> GradedResolution<F> {
    /// Resolves `R/I` with at most `length_cap` maps (use `d` to be sure of
    /// reaching the end).
    pub fn of_quotient(ideal: &Ideal<F>, length_cap: usize, budget: GbBudget) -> Result<Self> {
        let ring = ideal.ring().clone();
        if !ideal.is_homogeneous() {
            return Err(AlgebraError::Precondition("resolutions need a homogeneous ideal".into()));
        }
        if ideal.is_unit()? {
            return Err(AlgebraError::Precondition("R/I is zero".into()));
        }
        let mins = ideal.minimalized()?;
        let mut maps = Vec::new();
        if mins.is_zero() {
            return Ok(GradedResolution { ring, maps, complete: true });
        }
        let first = ModulePresentation::new(&ring, vec![0], mins.generators().to_vec())?;
        let mut complete = false;
        maps.push(first);
        while maps.len() < length_cap.max(1) {
            let last = maps.last().unwrap();
            let next = syzygy_module(&ring, last.columns(), last.row_shifts(), budget)?;
            if next.num_columns() == 0 {
                complete = true;
                break;
            }
            maps.push(next);
        }
        if !complete && maps.len() >= length_cap {
            // the last module may still have syzygies
            let last = maps.last().unwrap();
            complete = syzygy_module(&ring, last.columns(), last.row_shifts(), budget)?.num_columns() == 0;
        }
        Ok(GradedResolution { ring, maps, complete })
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn maps(&self) -> &[ModulePresentation<F>] {
        &self.maps
    }

    /// True when the last computed module has no syzygies.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Degrees of the basis of `F_i`.
    pub fn shifts(&self, i: usize) -> Vec<i32> {
        if i == 0 {
            return vec![0];
        }
        self.maps
            .get(i - 1)
            .map(|m| m.column_degrees().into_iter().map(|d| d.expect("nonzero column")).collect())
            .unwrap_or_default()
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.complete.then_some(self.maps.len())
    }

    pub fn betti(&self) -> BettiTable {
        let table = (0..=self.maps.len())
            .map(|i| {
                let mut m = BTreeMap::new();
                for d in self.shifts(i) {
                    *m.entry(d).or_insert(0) += 1;
                }
                m
            })
            .collect();
        BettiTable { table }
    }

    /// Minimal iff no differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.columns().iter().all(|c| c.terms().iter().all(|(mono, _)| mono.degree() > 0)))
    }

    /// Checks `d_i ∘ d_{i+1} = 0` for all consecutive maps.
    pub fn composes_to_zero(&self) -> bool {
        self.maps.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            b.columns().iter().all(|col| {
                let coeffs = col.components(a.num_columns());
                let mut acc = Polynomial::zero(&self.ring);
                for (c, v) in coeffs.iter().zip(a.columns()) {
                    if !c.is_zero() {
                        acc = &acc + &(v * c);
                    }
                }
                acc.is_zero()
            })
        })
    }

    /// `Σ_i (-1)^i Σ_j β_{ij} dim R_{e-j}`, which equals `HF(R/I)(e)` for a
    /// complete resolution.
    pub fn euler_characteristic(&self, e: i32) -> i128 {
        let d = self.ring.num_vars();
        let mut acc: i128 = 0;
        for i in 0..=self.maps.len() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for s in self.shifts(i) {
                acc += sign * monomial_count(d, (e - s) as i64) as i128;
            }
        }
        acc
    }
}

/// `depth R/I = d - pd(R/I)` (Auslander–Buchsbaum).
pub fn depth_of_quotient<F: Field>(ideal: &Ideal<F>, budget: GbBudget) -> Result<usize> {
    let d = ideal.ring().num_vars();
    let res = GradedResolution::of_quotient(ideal, d, budget)?;
    match res.projective_dimension() {
        Some(pd) => Ok(d - pd),
        None => Err(AlgebraError::Indeterminate("resolution truncated before exactness".into())),
    }
}

/// Cohen–Macaulay test: `pd(R/I) = codim I`.
pub fn is_cohen_macaulay<F: Field>(ideal: &Ideal<F>, budget: GbBudget) -> Result<bool> {
    let d = ideal.ring().num_vars();
    let res = GradedResolution::of_quotient(ideal, d, budget)?;
    let pd = res
        .projective_dimension()
        .ok_or_else(|| AlgebraError::Indeterminate("resolution truncated before exactness".into()))?;
    Ok(pd == ideal.codimension()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::monomial::MonomialOrder;
    use crate::ring::PolynomialRing;

    fn ring(n: &[&str]) -> Ring<Fp> {
        PolynomialRing::new(Fp::default_prime(), n, MonomialOrder::GRevLex).unwrap()
    }

    #[test]
    fn koszul() {
        let r = ring(&["x", "y"]);
        let i = Ideal::from_strings(&r, &["x", "y"]).unwrap();
        let res = GradedResolution::of_quotient(&i, 2, GbBudget::default()).unwrap();
        assert_eq!(res.betti().totals(), vec![1, 2, 1]);
        assert!(res.is_minimal() && res.composes_to_zero());
        assert_eq!(res.projective_dimension(), Some(2));
    }

    #[test]
    fn non_cm_example() {
        let r = ring(&["x", "y"]);
        let i = Ideal::from_strings(&r, &["x^2", "x*y"]).unwrap();
        let res = GradedResolution::of_quotient(&i, 2, GbBudget::default()).unwrap();
        assert_eq!(res.betti().totals(), vec![1, 2, 1]);
        for e in 0..8 {
            assert_eq!(res.euler_characteristic(e), i.hilbert_function(e as u32).unwrap() as i128);
        }
        assert!(!is_cohen_macaulay(&i, GbBudget::default()).unwrap());
    }

    #[test]
    fn depths() {
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::from_strings(&r, &["x", "y"]).unwrap();
        assert_eq!(depth_of_quotient(&i, GbBudget::default()).unwrap(), 1);
        let sq = i.power(2).unwrap();
        assert_eq!(depth_of_quotient(&sq, GbBudget::default()).unwrap(), 1);
        assert!(is_cohen_macaulay(&sq, GbBudget::default()).unwrap());
    }

    #[test]
    fn counts() {
        assert_eq!(monomial_count(3, 2), 6);
        assert_eq!(monomial_count(5, 20), 10626);
        assert_eq!(monomial_count(2, -1), 0);
    }
}
