//! Graded homomorphisms between finite-length modules by exact linear algebra.
//!
//! A degree-`e` map `φ: M -> N` is determined by its values on minimal
//! generators of `M`. Those values are the unknowns; `φ` is propagated
//! degree by degree through the action of the variables, and every linear
//! dependency among the products `x_i · b` forces a linear equation.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix};
use crate::module::FiniteLengthGradedModule;
use crate::rng::random_scalar;

/// Homogeneous map `M -> N` of degree `shift`: `blocks[k]` sends
/// `M_{lo+k}` to `N_{lo+k+shift}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<F: Field> {
    pub shift: i32,
    pub src_lo: i32,
    pub blocks: Vec<Matrix<F>>,
}

impl<F: Field> GradedMap<F> {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    /// Surjective onto `n` in every degree.
    pub fn is_surjective(&self, n: &FiniteLengthGradedModule<F>) -> bool {
        (n.lo()..=n.hi()).all(|e| {
            let k = e - self.shift - self.src_lo;
            if k < 0 || k as usize >= self.blocks.len() {
                return false;
            }
            self.blocks[k as usize].rank() == n.dim(e)
        })
    }

    pub fn is_isomorphism(&self, n: &FiniteLengthGradedModule<F>) -> bool {
        self.is_injective() && self.is_surjective(n)
    }

    /// `Σ c_i f_i`; all maps must share shift and shapes.
    pub fn combination(maps: &[GradedMap<F>], coeffs: &[F::Elem]) -> Option<GradedMap<F>> {
        let first = maps.first()?;
        let mut blocks: Vec<Matrix<F>> =
            first.blocks.iter().map(|b| Matrix::zeros(b.field(), b.rows(), b.cols())).collect();
        for (m, c) in maps.iter().zip(coeffs) {
            for (acc, b) in blocks.iter_mut().zip(&m.blocks) {
                *acc = acc.add(&b.scale(c));
            }
        }
        Some(GradedMap { shift: first.shift, src_lo: first.src_lo, blocks })
    }
}

/// Basis of `Hom(M, N)_shift`.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub shift: i32,
    pub basis: Vec<GradedMap<F>>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// A combination with seeded random coefficients.
    pub fn random_element(&self, field: &F, seed: u64) -> Option<GradedMap<F>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs: Vec<F::Elem> = self.basis.iter().map(|_| random_scalar(field, &mut rng)).collect();
        GradedMap::combination(&self.basis, &coeffs)
    }
}

/// Default bound on the number of unknowns in one hom computation.
pub const DEFAULT_MAX_UNKNOWNS: usize = 4000;

/// `Hom_R(M, N)_shift`.
pub fn graded_hom<F: Field>(
    m: &FiniteLengthGradedModule<F>,
    n: &FiniteLengthGradedModule<F>,
    shift: i32,
    max_unknowns: usize,
) -> Result<HomSpace<F>> {
    let field = m.field().clone();
    if m.num_vars() != n.num_vars() {
        return Err(AlgebraError::ShapeMismatch("modules over different rings".into()));
    }
    let nvars = m.num_vars();
    if m.is_zero() {
        return Ok(HomSpace { shift, basis: Vec::new() });
    }
    let gens: BTreeMap<i32, usize> = m.generator_counts().into_iter().collect();
    let mut offsets: BTreeMap<i32, usize> = BTreeMap::new();
    let mut u = 0usize;
    for (&k, &g) in &gens {
        offsets.insert(k, u);
        u += g * n.dim(k + shift);
    }
    if u > max_unknowns {
        return Err(AlgebraError::BudgetExceeded(format!("hom computation needs {u} unknowns (limit {max_unknowns})")));
    }
    if u == 0 {
        return Ok(HomSpace { shift, basis: Vec::new() });
    }

    let mut eqs = Echelon::new(&field, u);
    // phi[k][j]: value of the j-th basis vector of M_{lo+k}, as an `nd × u` matrix.
    let mut phi: Vec<Vec<Matrix<F>>> = Vec::new();
    for k in m.lo()..=m.hi() + 1 {
        let dk = m.dim(k);
        let nd = n.dim(k + shift);
        let mut vecs: Vec<Vec<F::Elem>> = Vec::new();
        let mut vals: Vec<Matrix<F>> = Vec::new();
        if k > m.lo() {
            let prev = &phi[(k - 1 - m.lo()) as usize];
            for i in 0..nvars {
                let act = m.action(i, k - 1).expect("degree in range");
                let nact = n.action(i, k - 1 + shift);
                for (j, pj) in prev.iter().enumerate() {
                    vecs.push(act.column(j));
                    vals.push(match nact {
                        Some(na) if nd > 0 => na.mul(pj),
                        _ => Matrix::zeros(&field, nd, u),
                    });
                }
            }
        }
        if dk == 0 {
            for v in &vals {
                for r in 0..v.rows() {
                    eqs.insert(v.row(r).to_vec());
                }
            }
            break;
        }
        let cand = Matrix::from_columns(&field, dk, &vecs);
        let mut red = cand.clone();
        let pivots = red.rref();
        let mut is_pivot = vec![false; vecs.len()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        if nd > 0 {
            for c in (0..vecs.len()).filter(|&c| !is_pivot[c]) {
                let mut diff = vals[c].clone();
                for (row, &p) in pivots.iter().enumerate() {
                    let coef = red.get(row, c);
                    if !field.is_zero(coef) {
                        diff = diff.add(&vals[p].scale(&field.neg(coef)));
                    }
                }
                for r in 0..nd {
                    eqs.insert(diff.row(r).to_vec());
                }
            }
        }
        // Complete the chosen products to a basis with unit vectors.
        let chosen: Vec<Vec<F::Elem>> = pivots.iter().map(|&p| vecs[p].clone()).collect();
        let mut span = Matrix::from_rows(&field, dk, chosen.clone());
        let span_pivots = span.rref();
        let complement: Vec<usize> = (0..dk).filter(|c| !span_pivots.contains(c)).collect();
        debug_assert_eq!(complement.len(), gens.get(&k).copied().unwrap_or(0));
        let mut basis_cols = chosen;
        let mut basis_vals: Vec<Matrix<F>> = pivots.iter().map(|&p| vals[p].clone()).collect();
        let off = offsets.get(&k).copied().unwrap_or(0);
        for (q, &c) in complement.iter().enumerate() {
            let mut e = vec![field.zero(); dk];
            e[c] = field.one();
            basis_cols.push(e);
            let mut v = Matrix::zeros(&field, nd, u);
            for r in 0..nd {
                v.set(r, off + q * nd + r, field.one());
            }
            basis_vals.push(v);
        }
        let w = Matrix::from_columns(&field, dk, &basis_cols);
        let winv = w.inverse().expect("basis of M_k");
        let cur: Vec<Matrix<F>> = (0..dk)
            .map(|j| {
                let mut acc = Matrix::zeros(&field, nd, u);
                for (l, bv) in basis_vals.iter().enumerate() {
                    let c = winv.get(l, j);
                    if !field.is_zero(c) {
                        acc = acc.add(&bv.scale(c));
                    }
                }
                acc
            })
            .collect();
        phi.push(cur);
    }

    let basis = eqs
        .kernel()
        .into_iter()
        .map(|sol| {
            let blocks = phi
                .iter()
                .map(|vals| {
                    let cols: Vec<Vec<F::Elem>> = vals.iter().map(|v| v.mul_vec(&sol)).collect();
                    let rows = vals.first().map_or(0, |v| v.rows());
                    Matrix::from_columns(&field, rows, &cols)
                })
                .collect();
            GradedMap { shift, src_lo: m.lo(), blocks }
        })
        .collect();
    Ok(HomSpace { shift, basis })
}

/// Degrees `e` for which `Hom(M, N)_e` can be nonzero.
pub fn hom_shift_range<F: Field>(m: &FiniteLengthGradedModule<F>, n: &FiniteLengthGradedModule<F>) -> std::ops::RangeInclusive<i32> {
    (n.lo() - m.hi())..=(n.hi() - m.lo())
}

/// `dim Hom(M, N)_e` for every possibly nonzero `e`.
pub fn hom_dimensions<F: Field>(
    m: &FiniteLengthGradedModule<F>,
    n: &FiniteLengthGradedModule<F>,
    max_unknowns: usize,
) -> Result<BTreeMap<i32, usize>> {
    let mut out = BTreeMap::new();
    if m.is_zero() || n.is_zero() {
        return Ok(out);
    }
    for e in hom_shift_range(m, n) {
        let d = graded_hom(m, n, e, max_unknowns)?.dim();
        if d > 0 {
            out.insert(e, d);
        }
    }
    Ok(out)
}

/// Outcome of a search for maps with a given property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Existence {
    /// A witness was found.
    Found,
    /// Ruled out by an exact argument.
    Impossible,
    /// Random trials found nothing although no obstruction was detected.
    NotFound,
}

/// Searches for an isomorphism `M -> N` of some degree. The only possible
/// degree is the one aligning the Hilbert functions.
pub fn find_isomorphism<F: Field>(
    m: &FiniteLengthGradedModule<F>,
    n: &FiniteLengthGradedModule<F>,
    seed: u64,
    max_unknowns: usize,
) -> Result<(Existence, Option<GradedMap<F>>)> {
    let hm = m.hilbert_function();
    let hn = n.hilbert_function();
    if hm.values != hn.values {
        return Ok((Existence::Impossible, None));
    }
    if m.is_zero() {
        return Ok((Existence::Found, Some(GradedMap { shift: 0, src_lo: 0, blocks: Vec::new() })));
    }
    let shift = hn.lo - hm.lo;
    let hom = graded_hom(m, n, shift, max_unknowns)?;
    if hom.dim() == 0 {
        return Ok((Existence::Impossible, None));
    }
    for trial in 0..3 {
        let f = hom.random_element(m.field(), seed.wrapping_add(trial)).expect("nonempty");
        if f.is_isomorphism(n) {
            return Ok((Existence::Found, Some(f)));
        }
    }
    Ok((Existence::NotFound, None))
}

/// Searches for a surjection `M -> N` of degree `shift`. Impossible when
/// the images of all maps together do not span `N`.
pub fn find_surjection<F: Field>(
    m: &FiniteLengthGradedModule<F>,
    n: &FiniteLengthGradedModule<F>,
    shift: i32,
    seed: u64,
    max_unknowns: usize,
) -> Result<(Existence, Option<GradedMap<F>>)> {
    let hom = graded_hom(m, n, shift, max_unknowns)?;
    let field = m.field();
    for e in n.lo()..=n.hi() {
        let k = e - shift - m.lo();
        let mut ech = Echelon::new(field, n.dim(e));
        if k >= 0 && (k as usize) < hom.basis.first().map_or(0, |f| f.blocks.len()) {
            for f in &hom.basis {
                let b = &f.blocks[k as usize];
                for c in 0..b.cols() {
                    ech.insert(b.column(c));
                }
            }
        }
        if ech.rank() < n.dim(e) {
            return Ok((Existence::Impossible, None));
        }
    }
    for trial in 0..3 {
        let f = hom.random_element(field, seed.wrapping_add(trial)).expect("nonempty");
        if f.is_surjective(n) {
            return Ok((Existence::Found, Some(f)));
        }
    }
    Ok((Existence::NotFound, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::groebner::GbBudget;
    use crate::ideal::Ideal;
    use crate::monomial::MonomialOrder;
    use crate::ring::{PolynomialRing, Ring};

    fn ring(n: &[&str]) -> Ring<Fp> {
        PolynomialRing::new(Fp::default_prime(), n, MonomialOrder::GRevLex).unwrap()
    }

    fn residue_field(r: &Ring<Fp>) -> FiniteLengthGradedModule<Fp> {
        FiniteLengthGradedModule::quotient_ring(&Ideal::maximal(r), GbBudget::default()).unwrap()
    }

    #[test]
    fn hom_k_k() {
        let r = ring(&["x", "y"]);
        let k = residue_field(&r);
        assert_eq!(graded_hom(&k, &k, 0, 100).unwrap().dim(), 1);
        assert_eq!(hom_dimensions(&k, &k, 100).unwrap(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn hom_from_cyclic_module_is_annihilator() {
        // Hom(R/(x^2,y^2), R/(x^2,xy,y^2)) in degree 0 is the whole target.
        let r = ring(&["x", "y"]);
        let a = FiniteLengthGradedModule::quotient_ring(&Ideal::from_strings(&r, &["x^2", "y^2"]).unwrap(), GbBudget::default()).unwrap();
        let b = FiniteLengthGradedModule::quotient_ring(&Ideal::from_strings(&r, &["x^2", "x*y", "y^2"]).unwrap(), GbBudget::default()).unwrap();
        assert_eq!(hom_dimensions(&a, &b, 100).unwrap(), BTreeMap::from([(0, 1), (1, 2)]));
        // Hom(R/m^2, R/(x^2,y^2)) = socle-type annihilator of m^2: degrees where
        // (0 : m^2) lives, namely degree >= 1 part plus xy.
        let dims = hom_dimensions(&b, &a, 100).unwrap();
        assert_eq!(dims, BTreeMap::from([(1, 2), (2, 1)]));
    }

    #[test]
    fn gorenstein_is_self_dual() {
        let r = ring(&["x", "y"]);
        let a = FiniteLengthGradedModule::quotient_ring(&Ideal::from_strings(&r, &["x^2", "y^3"]).unwrap(), GbBudget::default()).unwrap();
        let dual = a.matlis_dual();
        let (ex, f) = find_isomorphism(&a, &dual.shift(-3), 7, 1000).unwrap();
        assert_eq!(ex, Existence::Found);
        assert!(f.unwrap().is_isomorphism(&dual.shift(-3)));
        let b = FiniteLengthGradedModule::quotient_ring(&Ideal::from_strings(&r, &["x^2", "x*y", "y^2"]).unwrap(), GbBudget::default()).unwrap();
        let (ex, _) = find_isomorphism(&b, &b.matlis_dual(), 7, 1000).unwrap();
        assert_eq!(ex, Existence::Impossible);
    }

    #[test]
    fn surjection_obstruction() {
        let r = ring(&["x", "y"]);
        let k = residue_field(&r);
        let a = FiniteLengthGradedModule::quotient_ring(&Ideal::from_strings(&r, &["x^2", "y^2"]).unwrap(), GbBudget::default()).unwrap();
        assert_eq!(find_surjection(&a, &k, 0, 1, 100).unwrap().0, Existence::Found);
        assert_eq!(find_surjection(&k, &a, 0, 1, 100).unwrap().0, Existence::Impossible);
    }
}
