//! Finite-length graded modules given by bases per degree and matrices for
//! the action of each variable.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{GbBudget, GbEngine, GroebnerBasis};
use crate::ideal::Ideal;
use crate::linalg::{Matrix, PolySpan};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{Ring, RingExt};

/// Dimensions of the graded pieces `M_lo, ..., M_hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFunction {
    pub lo: i32,
    pub values: Vec<usize>,
}

impl HilbertFunction {
    /// Strips zero values at both ends.
    pub fn new(lo: i32, values: Vec<usize>) -> Self {
        let start = values.iter().position(|&v| v > 0);
        match start {
            None => HilbertFunction { lo: 0, values: Vec::new() },
            Some(s) => {
                let end = values.iter().rposition(|&v| v > 0).unwrap() + 1;
                HilbertFunction { lo: lo + s as i32, values: values[s..end].to_vec() }
            }
        }
    }

    pub fn get(&self, e: i32) -> usize {
        let k = e - self.lo;
        if k < 0 {
            return 0;
        }
        self.values.get(k as usize).copied().unwrap_or(0)
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.values.len() as i32 - 1
    }

    pub fn length(&self) -> usize {
        self.values.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `e ↦ HF(c - e)`.
    pub fn reflected(&self, c: i32) -> Self {
        let mut v = self.values.clone();
        v.reverse();
        HilbertFunction::new(c - self.hi(), v)
    }
}

impl std::fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{} (from degree {})", parts.join(","), self.lo)
    }
}

/// Data linking a module built from ideals `A/B` back to polynomials.
#[derive(Clone, Debug)]
struct Representatives<F: Field> {
    ring: Ring<F>,
    /// Basis of `B` valid through degree `hi + 1`.
    gb: GroebnerBasis<F>,
    spans: Vec<PolySpan<F>>,
}

#[derive(Clone, Debug)]
pub struct FiniteLengthGradedModule<F: Field> {
    field: F,
    nvars: usize,
    lo: i32,
    dims: Vec<usize>,
    /// `actions[k][i]`: multiplication by `x_i` from degree `lo + k` to
    /// `lo + k + 1`, shape `dims[k+1] × dims[k]` (zero rows at the top).
    actions: Vec<Vec<Matrix<F>>>,
    reps: Option<Representatives<F>>,
}

impl<F: Field> FiniteLengthGradedModule<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        FiniteLengthGradedModule { field: field.clone(), nvars, lo: 0, dims: Vec::new(), actions: Vec::new(), reps: None }
    }

    /// Module from explicit action matrices; shapes are validated.
    pub fn from_actions(field: &F, nvars: usize, lo: i32, dims: Vec<usize>, actions: Vec<Vec<Matrix<F>>>) -> Result<Self> {
        if actions.len() != dims.len() {
            return Err(AlgebraError::ShapeMismatch("one list of action matrices per degree".into()));
        }
        for (k, acts) in actions.iter().enumerate() {
            if acts.len() != nvars {
                return Err(AlgebraError::ShapeMismatch("one action matrix per variable".into()));
            }
            let target = dims.get(k + 1).copied().unwrap_or(0);
            if acts.iter().any(|m| m.rows() != target || m.cols() != dims[k]) {
                return Err(AlgebraError::ShapeMismatch(format!("action matrix in degree {}", lo + k as i32)));
            }
        }
        let mut m = FiniteLengthGradedModule { field: field.clone(), nvars, lo, dims, actions, reps: None };
        m.trim();
        Ok(m)
    }

    /// `A/B` for homogeneous ideals `B ⊆ A`, built degree by degree.
    /// Stops at the first zero degree past the generators of `A`, which
    /// certifies that every higher degree vanishes.
    pub fn subquotient(a: &Ideal<F>, b: &Ideal<F>, budget: GbBudget) -> Result<Self> {
        let ring = a.ring().clone();
        if !ring.same_ring(b.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
        if !a.is_homogeneous() || !b.is_homogeneous() {
            return Err(AlgebraError::Precondition("subquotients need homogeneous ideals".into()));
        }
        if !b.is_subset_of(a)? {
            return Err(AlgebraError::NotContained("B is not contained in A".into()));
        }
        let field = ring.field().clone();
        let nvars = ring.num_vars();
        if a.is_zero() {
            return Ok(Self::zero(&field, nvars));
        }
        let mut gens: Vec<(u32, Polynomial<F>)> =
            a.generators().iter().map(|g| (g.degree().unwrap(), g.clone())).collect();
        gens.sort_by_key(|(d, _)| *d);
        let lo = gens[0].0 as i32;
        let max_gen = gens.last().unwrap().0 as i32;

        let mut engine = GbEngine::new(&ring, &[], true, budget);
        for g in b.generators() {
            engine.add_generator(g)?;
        }
        let vars: Vec<Monomial> = (0..nvars).map(Monomial::var).collect();
        let one = field.one();
        let mut spans: Vec<PolySpan<F>> = Vec::new();
        let mut actions: Vec<Vec<Matrix<F>>> = Vec::new();
        let mut e = lo;
        loop {
            if e > budget.degree_cap as i32 {
                return Err(AlgebraError::NotFiniteLength(format!("A/B nonzero in degree {e}")));
            }
            engine.advance(Some(e))?;
            let mut span = PolySpan::new(&ring);
            let mut products: Vec<Vec<Polynomial<F>>> = Vec::new();
            if let Some(prev) = spans.last() {
                for i in 0..nvars {
                    let col: Vec<Polynomial<F>> =
                        prev.basis().iter().map(|r| engine.normal_form(&r.mul_term(&vars[i], &one))).collect();
                    for p in &col {
                        span.insert(p);
                    }
                    products.push(col);
                }
            }
            for (_, g) in gens.iter().filter(|(d, _)| *d as i32 == e) {
                span.insert(&engine.normal_form(g));
            }
            if let Some(prev) = spans.last() {
                let acts = products
                    .iter()
                    .map(|col| {
                        let coords: Vec<Vec<F::Elem>> = col.iter().map(|p| span.coordinates(p)).collect();
                        Matrix::from_columns(&field, span.dim(), &coords)
                    })
                    .collect::<Vec<_>>();
                debug_assert!(acts.iter().all(|m| m.cols() == prev.dim()));
                actions.push(acts);
            }
            if span.is_empty() && e >= max_gen {
                break;
            }
            spans.push(span);
            e += 1;
        }
        engine.advance(Some(e))?;
        let dims: Vec<usize> = spans.iter().map(|s| s.dim()).collect();
        let reps = Representatives { ring, gb: engine.basis(), spans };
        let mut m = FiniteLengthGradedModule { field, nvars, lo, dims, actions, reps: Some(reps) };
        m.trim();
        Ok(m)
    }

    /// The cyclic module `R/K`.
    pub fn quotient_ring(k: &Ideal<F>, budget: GbBudget) -> Result<Self> {
        Self::subquotient(&Ideal::unit(k.ring()), k, budget)
    }

    /// Removes zero degrees at both ends.
    fn trim(&mut self) {
        while self.dims.first() == Some(&0) {
            self.dims.remove(0);
            self.actions.remove(0);
            if let Some(r) = self.reps.as_mut() {
                r.spans.remove(0);
            }
            self.lo += 1;
        }
        while self.dims.last() == Some(&0) {
            self.dims.pop();
            self.actions.pop();
            if let Some(r) = self.reps.as_mut() {
                r.spans.pop();
            }
        }
        if self.dims.is_empty() {
            self.lo = 0;
        } else {
            let f = self.field.clone();
            let top = self.dims.len() - 1;
            let cols = self.dims[top];
            self.actions[top] = (0..self.nvars).map(|_| Matrix::zeros(&f, 0, cols)).collect();
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Top nonzero degree (`lo - 1` for the zero module).
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn dim(&self, e: i32) -> usize {
        let k = e - self.lo;
        if k < 0 {
            return 0;
        }
        self.dims.get(k as usize).copied().unwrap_or(0)
    }

    pub fn hilbert_function(&self) -> HilbertFunction {
        HilbertFunction::new(self.lo, self.dims.clone())
    }

    pub fn length(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Matrix of `x_i : M_e -> M_{e+1}`, or `None` when `M_e = 0`.
    pub fn action(&self, i: usize, e: i32) -> Option<&Matrix<F>> {
        let k = e - self.lo;
        if k < 0 || k as usize >= self.dims.len() {
            return None;
        }
        Some(&self.actions[k as usize][i])
    }

    /// Multiplication by `x_i` on a vector of `M_e`.
    pub fn act(&self, i: usize, e: i32, v: &[F::Elem]) -> Vec<F::Elem> {
        match self.action(i, e) {
            Some(m) => m.mul_vec(v),
            None => Vec::new(),
        }
    }

    /// `x_i x_j = x_j x_i` in every degree.
    pub fn actions_commute(&self) -> bool {
        for k in 0..self.dims.len().saturating_sub(1) {
            let next = &self.actions[k + 1];
            let cur = &self.actions[k];
            for i in 0..self.nvars {
                for j in (i + 1)..self.nvars {
                    if next[i].mul(&cur[j]) != next[j].mul(&cur[i]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `M(a)`, with `M(a)_e = M_{a+e}`.
    pub fn shift(&self, a: i32) -> Self {
        let mut m = self.clone();
        m.lo -= a;
        m
    }

    /// Graded Matlis dual: `(M^∨)_e = (M_{-e})^*` with transposed actions.
    pub fn matlis_dual(&self) -> Self {
        if self.is_zero() {
            return Self::zero(&self.field, self.nvars);
        }
        let n = self.dims.len();
        let mut dims = self.dims.clone();
        dims.reverse();
        let mut actions = Vec::with_capacity(n);
        for k in 0..n {
            if k + 1 == n {
                actions.push((0..self.nvars).map(|_| Matrix::zeros(&self.field, 0, dims[k])).collect());
            } else {
                let src = n - 2 - k;
                actions.push(self.actions[src].iter().map(|m| m.transpose()).collect());
            }
        }
        FiniteLengthGradedModule { field: self.field.clone(), nvars: self.nvars, lo: -self.hi(), dims, actions, reps: None }
    }

    /// Socle basis vectors per degree, as `(degree, vectors)`.
    pub fn socle_vectors(&self) -> Vec<(i32, Vec<Vec<F::Elem>>)> {
        let mut out = Vec::new();
        for k in 0..self.dims.len() {
            let e = self.lo + k as i32;
            let cols = self.dims[k];
            let parts: Vec<&Matrix<F>> = self.actions[k].iter().collect();
            let stacked = Matrix::vstack(&self.field, cols, &parts);
            let ker = stacked.kernel();
            if !ker.is_empty() {
                out.push((e, ker));
            }
        }
        out
    }

    /// The socle as a module (all actions zero).
    pub fn socle(&self) -> Self {
        let vecs = self.socle_vectors();
        if vecs.is_empty() {
            return Self::zero(&self.field, self.nvars);
        }
        let lo = vecs[0].0;
        let hi = vecs.last().unwrap().0;
        let mut dims = vec![0; (hi - lo + 1) as usize];
        for (e, v) in &vecs {
            dims[(e - lo) as usize] = v.len();
        }
        let actions = (0..dims.len())
            .map(|k| {
                let rows = dims.get(k + 1).copied().unwrap_or(0);
                (0..self.nvars).map(|_| Matrix::zeros(&self.field, rows, dims[k])).collect()
            })
            .collect();
        FiniteLengthGradedModule { field: self.field.clone(), nvars: self.nvars, lo, dims, actions, reps: None }
    }

    pub fn socle_dimension(&self) -> usize {
        self.socle_vectors().iter().map(|(_, v)| v.len()).sum()
    }

    /// An artinian graded algebra is Gorenstein iff its socle is one-dimensional.
    pub fn is_gorenstein_artinian(&self) -> bool {
        self.socle_dimension() == 1
    }

    /// Number of minimal generators in each degree: `dim M_e / m M_{e-1}`.
    pub fn generator_counts(&self) -> Vec<(i32, usize)> {
        (0..self.dims.len())
            .filter_map(|k| {
                let image = if k == 0 {
                    0
                } else {
                    let parts: Vec<Matrix<F>> = self.actions[k - 1].iter().map(|m| m.transpose()).collect();
                    let refs: Vec<&Matrix<F>> = parts.iter().collect();
                    Matrix::vstack(&self.field, self.dims[k], &refs).rank()
                };
                let g = self.dims[k] - image;
                (g > 0).then_some((self.lo + k as i32, g))
            })
            .collect()
    }

    /// True for modules built from ideals.
    pub fn has_representatives(&self) -> bool {
        self.reps.is_some()
    }

    /// Polynomial representatives of the basis of `M_e`.
    pub fn representatives(&self, e: i32) -> Result<Vec<Polynomial<F>>> {
        let reps = self.reps.as_ref().ok_or_else(|| AlgebraError::Precondition("module has no representatives".into()))?;
        let k = e - self.lo;
        if k < 0 || k as usize >= self.dims.len() {
            return Ok(Vec::new());
        }
        Ok(reps.spans[k as usize].basis())
    }

    /// Coordinates of the class of a homogeneous element of `A` in `M_e`.
    pub fn coordinates(&self, p: &Polynomial<F>) -> Result<(i32, Vec<F::Elem>)> {
        let reps = self.reps.as_ref().ok_or_else(|| AlgebraError::Precondition("module has no representatives".into()))?;
        if !reps.ring.same_ring(p.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
        if !p.is_homogeneous() {
            return Err(AlgebraError::Precondition("coordinates need a homogeneous element".into()));
        }
        let Some(deg) = p.degree() else {
            return Ok((self.lo, vec![self.field.zero(); self.dim(self.lo)]));
        };
        let e = deg as i32;
        let nf = reps.gb.normal_form(p)?;
        if nf.is_zero() {
            return Ok((e, vec![self.field.zero(); self.dim(e)]));
        }
        let k = e - self.lo;
        if k < 0 || k as usize >= self.dims.len() {
            return Err(AlgebraError::NotContained(format!("element of degree {e} is not in A")));
        }
        let span = &reps.spans[k as usize];
        if !span.contains(&nf) {
            return Err(AlgebraError::NotContained("element is not in A".into()));
        }
        Ok((e, span.coordinates(&nf)))
    }
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
    fn principal_truncation() {
        let r = ring(&["x"]);
        let a = Ideal::from_strings(&r, &["x"]).unwrap();
        let b = Ideal::from_strings(&r, &["x^2"]).unwrap();
        let m = FiniteLengthGradedModule::subquotient(&a, &b, GbBudget::default()).unwrap();
        assert_eq!(m.hilbert_function(), HilbertFunction::new(1, vec![1]));
    }

    #[test]
    fn complete_intersection_socle_and_dual() {
        let r = ring(&["x", "y"]);
        let k = Ideal::from_strings(&r, &["x^2", "y^2"]).unwrap();
        let m = FiniteLengthGradedModule::quotient_ring(&k, GbBudget::default()).unwrap();
        assert_eq!(m.hilbert_function().values, vec![1, 2, 1]);
        assert!(m.actions_commute());
        assert!(m.is_gorenstein_artinian());
        let soc = m.socle_vectors();
        assert_eq!(soc.len(), 1);
        assert_eq!(soc[0].0, 2);
        let dual = m.matlis_dual();
        assert_eq!(dual.lo(), -2);
        assert_eq!(dual.hilbert_function().values, vec![1, 2, 1]);
        assert!(dual.actions_commute());
        assert_eq!(dual.generator_counts(), vec![(-2, 1)]);
        let (e, c) = m.coordinates(&r.parse("x*y").unwrap()).unwrap();
        assert_eq!((e, c), (2, vec![1]));
    }

    #[test]
    fn maximal_ideal_cube_is_not_gorenstein() {
        let r = ring(&["x", "y"]);
        let k = Ideal::from_strings(&r, &["x^2", "x*y", "y^2"]).unwrap();
        let m = FiniteLengthGradedModule::quotient_ring(&k, GbBudget::default()).unwrap();
        assert_eq!(m.socle_dimension(), 2);
        assert!(!m.is_gorenstein_artinian());
    }

    #[test]
    fn infinite_length_is_reported() {
        let r = ring(&["x", "y"]);
        let k = Ideal::from_strings(&r, &["x"]).unwrap();
        let budget = GbBudget { degree_cap: 6, ..GbBudget::default() };
        assert!(matches!(
            FiniteLengthGradedModule::quotient_ring(&k, budget),
            Err(AlgebraError::NotFiniteLength(_))
        ));
    }
}
