//! Syzygies, presentations and elimination.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingExt};

use super::{minimal_generators, module_groebner_basis, GbBudget};

/// A map of graded free modules `F1 -> F0` given by its columns.
///
/// Columns are vectors in `F0` (components `0..rank`), and `row_shifts[i]` is
/// the degree of the `i`-th basis vector of `F0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModulePresentation<F: Field> {
    ring: Ring<F>,
    rank: usize,
    row_shifts: Vec<i32>,
    columns: Vec<Polynomial<F>>,
}

impl<F: Field> ModulePresentation<F> {
    pub fn new(ring: &Ring<F>, row_shifts: Vec<i32>, columns: Vec<Polynomial<F>>) -> Result<Self> {
        let rank = row_shifts.len();
        for c in &columns {
            if !ring.same_ring(c.ring()) {
                return Err(AlgebraError::RingMismatch);
            }
            if c.terms().iter().any(|(m, _)| m.comp() >= rank) {
                return Err(AlgebraError::ShapeMismatch(format!("column has a component beyond rank {rank}")));
            }
        }
        Ok(ModulePresentation { ring: ring.clone(), rank, row_shifts, columns })
    }

    /// Presentation from a row-major matrix of ring elements. Row shifts
    /// default to zero.
    pub fn from_matrix(ring: &Ring<F>, rows: &[Vec<Polynomial<F>>], row_shifts: Option<Vec<i32>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(AlgebraError::ShapeMismatch("ragged matrix".into()));
        }
        let columns = (0..ncols)
            .map(|j| {
                let comps: Vec<Polynomial<F>> = (0..nrows).map(|i| rows[i][j].clone()).collect();
                Polynomial::from_components(ring, &comps)
            })
            .collect();
        Self::new(ring, row_shifts.unwrap_or_else(|| vec![0; nrows]), columns)
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn row_shifts(&self) -> &[i32] {
        &self.row_shifts
    }

    pub fn columns(&self) -> &[Polynomial<F>] {
        &self.columns
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    /// Degrees of the columns (the shifts of `F1`), zero columns omitted as `None`.
    pub fn column_degrees(&self) -> Vec<Option<i32>> {
        self.columns.iter().map(|c| c.shifted_degree(&self.row_shifts)).collect()
    }

    pub fn entry(&self, row: usize, col: usize) -> Polynomial<F> {
        self.columns[col].components(self.rank)[row].clone()
    }

    /// Row-major matrix of entries.
    pub fn matrix(&self) -> Vec<Vec<Polynomial<F>>> {
        let cols: Vec<Vec<Polynomial<F>>> = self.columns.iter().map(|c| c.components(self.rank)).collect();
        (0..self.rank).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    }

    /// Same module with one more column.
    pub fn with_extra_column(&self, col: Polynomial<F>) -> Result<Self> {
        let mut columns = self.columns.clone();
        columns.push(col);
        Self::new(&self.ring, self.row_shifts.clone(), columns)
    }

    /// True when `rows · columns = 0` for the given row of ring elements.
    pub fn annihilates(&self, row: &[Polynomial<F>]) -> bool {
        self.columns.iter().all(|c| {
            let comps = c.components(self.rank);
            let mut acc = self.ring.zero();
            for (a, b) in row.iter().zip(comps.iter()) {
                acc = &acc + &(a * b);
            }
            acc.is_zero()
        })
    }
}

/// First syzygies of `gens`, vectors in a free module with basis degrees
/// `shifts` (pass `&[0]` for ring elements). The result presents the module
/// generated by `gens`: its rank is `gens.len()` with row shifts the
/// generator degrees, and its columns minimally generate the syzygy module.
pub fn syzygy_module<F: Field>(
    ring: &Ring<F>,
    gens: &[Polynomial<F>],
    shifts: &[i32],
    budget: GbBudget,
) -> Result<ModulePresentation<F>> {
    let r = gens
        .iter()
        .flat_map(|g| g.terms().iter().map(|(m, _)| m.comp() + 1))
        .max()
        .unwrap_or(1)
        .max(shifts.len());
    let mut aug_shifts: Vec<i32> = (0..r).map(|i| shifts.get(i).copied().unwrap_or(0)).collect();
    let mut gen_degrees = Vec::with_capacity(gens.len());
    let one = ring.field().one();
    let mut aug = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        if !g.is_homogeneous_with(&aug_shifts[..r]) {
            return Err(AlgebraError::Precondition("syzygies need homogeneous generators".into()));
        }
        let d = g.shifted_degree(&aug_shifts[..r]).unwrap_or(0);
        gen_degrees.push(d);
        aug.push(g.add_scaled(&one, &Monomial::unit(r + i), &ring.one()));
    }
    aug_shifts.extend(&gen_degrees);
    let gb = module_groebner_basis(ring, &aug, &aug_shifts, budget)?;
    let mut syz = Vec::new();
    for g in gb.generators() {
        if g.leading_monomial().expect("nonzero").comp() >= r {
            let terms = g.terms().iter().map(|(m, c)| (m.with_comp(m.comp() - r), c.clone())).collect();
            syz.push(Polynomial::from_raw(ring, terms));
        }
    }
    let syz = minimal_generators(ring, &syz, &gen_degrees, budget)?;
    ModulePresentation::new(ring, gen_degrees, syz)
}

/// Generators of `(gens) ∩ k[x_{drop}, ..., x_{d-1}]`, i.e. the first `drop`
/// variables eliminated. Results are returned in the input ring.
pub fn eliminate<F: Field>(ring: &Ring<F>, gens: &[Polynomial<F>], drop: usize, budget: GbBudget) -> Result<Vec<Polynomial<F>>> {
    if drop == 0 {
        return Ok(gens.iter().filter(|g| !g.is_zero()).cloned().collect());
    }
    if drop >= ring.num_vars() {
        return Err(AlgebraError::IndexOutOfRange { index: drop, limit: ring.num_vars() });
    }
    let elim = ring.with_order(MonomialOrder::Elimination { block: drop })?;
    let moved: Vec<Polynomial<F>> = gens.iter().map(|g| g.to_ring(&elim)).collect::<Result<_>>()?;
    let gb = module_groebner_basis(&elim, &moved, &[], budget)?;
    gb.generators()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.partial_degree(0..drop) == 0))
        .map(|g| g.to_ring(ring))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::ring::PolynomialRing;

    #[test]
    fn koszul_syzygy() {
        let r = PolynomialRing::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap();
        let gens = r.parse_all(&["x", "y"]).unwrap();
        let p = syzygy_module(&r, &gens, &[0], GbBudget::default()).unwrap();
        assert_eq!(p.num_columns(), 1);
        assert!(p.annihilates(&gens));
        assert_eq!(p.column_degrees(), vec![Some(2)]);
        let gens = r.parse_all(&["x^2", "x"]).unwrap();
        let p = syzygy_module(&r, &gens, &[0], GbBudget::default()).unwrap();
        assert_eq!(p.num_columns(), 1);
        assert!(p.annihilates(&gens));
        let m = p.matrix();
        assert!(m[0][0].is_constant());
    }

    #[test]
    fn elimination_examples() {
        let r = PolynomialRing::new(Rationals, &["t", "x", "y"], MonomialOrder::GRevLex).unwrap();
        let e = eliminate(&r, &r.parse_all(&["t*x", "(1-t)*y"]).unwrap(), 1, GbBudget::default()).unwrap();
        assert_eq!(e, r.parse_all(&["x*y"]).unwrap());
        let e = eliminate(&r, &r.parse_all(&["x - t"]).unwrap(), 1, GbBudget::default()).unwrap();
        assert!(e.is_empty());
        let e = eliminate(&r, &r.parse_all(&["t", "x"]).unwrap(), 1, GbBudget::default()).unwrap();
        assert_eq!(e, r.parse_all(&["x"]).unwrap());
    }
}
