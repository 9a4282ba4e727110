//! Ideals with cached Gröbner bases and the usual arithmetic.

use std::sync::OnceLock;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{eliminate, minimal_generators, module_groebner_basis, GbBudget, GroebnerBasis};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingExt};

/// An ideal of a polynomial ring, given by generators.
///
/// The Gröbner basis and codimension are computed on first use and cached.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Polynomial<F>>,
    budget: GbBudget,
    gb: OnceLock<GroebnerBasis<F>>,
    codim: OnceLock<usize>,
}

/// Size of a smallest set of variables meeting every support (bitmasks).
pub(crate) fn min_hitting_set(supports: &[u32]) -> usize {
    fn search(supports: &[u32], chosen: u32, budget: usize) -> bool {
        match supports.iter().find(|&&s| s & chosen == 0) {
            None => true,
            Some(&s) => {
                if budget == 0 {
                    return false;
                }
                let mut bits = s;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    if search(supports, chosen | b, budget - 1) {
                        return true;
                    }
                    bits &= !b;
                }
                false
            }
        }
    }
    let mut sup: Vec<u32> = supports.to_vec();
    sup.sort_by_key(|s| s.count_ones());
    sup.dedup();
    // keep only inclusion-minimal supports
    let mut minimal: Vec<u32> = Vec::new();
    for s in sup {
        if !minimal.iter().any(|&m| m & s == m) {
            minimal.push(s);
        }
    }
    (0..=32).find(|&k| search(&minimal, 0, k)).expect("finite hitting set")
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Ring<F>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &gens {
            if !ring.same_ring(g.ring()) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, budget: GbBudget::default(), gb: OnceLock::new(), codim: OnceLock::new() })
    }

    pub fn from_strings(ring: &Ring<F>, gens: &[&str]) -> Result<Self> {
        Self::new(ring, ring.parse_all(gens)?)
    }

    pub fn unit(ring: &Ring<F>) -> Self {
        Self::new(ring, vec![ring.one()]).expect("same ring")
    }

    pub fn zero(ring: &Ring<F>) -> Self {
        Self::new(ring, vec![]).expect("same ring")
    }

    /// The ideal of all variables.
    pub fn maximal(ring: &Ring<F>) -> Self {
        Self::new(ring, ring.vars()).expect("same ring")
    }

    pub fn with_budget(mut self, budget: GbBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> GbBudget {
        self.budget
    }

    fn derived(&self, gens: Vec<Polynomial<F>>) -> Self {
        Self::new(&self.ring, gens).expect("same ring").with_budget(self.budget)
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Generator degrees, when every generator is homogeneous.
    pub fn generator_degrees(&self) -> Option<Vec<u32>> {
        if !self.is_homogeneous() {
            return None;
        }
        Some(self.gens.iter().map(|g| g.degree().unwrap()).collect())
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis<F>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = module_groebner_basis(&self.ring, &self.gens, &[], self.budget)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        self.groebner()?.contains(p)
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.groebner()?.normal_form(p)
    }

    pub fn is_subset_of(&self, other: &Ideal<F>) -> Result<bool> {
        let gb = other.groebner()?;
        for g in &self.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (reduced Gröbner bases agree).
    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        Ok(self.groebner()?.generators() == other.groebner()?.generators())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Minimal homogeneous generators (input order within each degree).
    pub fn minimalized(&self) -> Result<Self> {
        if !self.is_homogeneous() {
            return Err(AlgebraError::Precondition("minimal generators need a homogeneous ideal".into()));
        }
        Ok(self.derived(minimal_generators(&self.ring, &self.gens, &[], self.budget)?))
    }

    fn tidy(&self, gens: Vec<Polynomial<F>>) -> Result<Self> {
        let id = self.derived(gens);
        if id.is_homogeneous() {
            id.minimalized()
        } else {
            let mut seen = Vec::new();
            for g in id.gens {
                let m = g.monic();
                if !seen.contains(&m) {
                    seen.push(m);
                }
            }
            Ok(self.derived(seen))
        }
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Self> {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        self.tidy(g)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Self> {
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.try_mul(b)?);
            }
        }
        self.tidy(g)
    }

    /// `I^u` by iterated products; `I^0` is the unit ideal.
    pub fn power(&self, u: u32) -> Result<Self> {
        let mut acc = Ideal::unit(&self.ring).with_budget(self.budget);
        for _ in 0..u {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `A ∩ B` by eliminating `t` from `t·A + (1 − t)·B`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Self> {
        if !self.ring.same_ring(&other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring).with_budget(self.budget));
        }
        let big = self.ring.prepend_vars(&["t_elim"], MonomialOrder::GRevLex)?;
        let t = big.var(0);
        let one_minus_t = &big.one() - &t;
        let mut gens = Vec::new();
        for a in &self.gens {
            gens.push(&t * &a.embed_shifted(&big, 1)?);
        }
        for b in &other.gens {
            gens.push(&one_minus_t * &b.embed_shifted(&big, 1)?);
        }
        let elim = eliminate(&big, &gens, 1, self.budget)?;
        let mut images = vec![self.ring.zero()];
        images.extend(self.ring.vars());
        let back: Vec<Polynomial<F>> = elim.iter().map(|g| g.substitute(&self.ring, &images)).collect::<Result<_>>()?;
        self.tidy(back)
    }

    /// `A : (b)`, computed as `(A ∩ (b)) / b`.
    pub fn colon_element(&self, b: &Polynomial<F>) -> Result<Self> {
        if b.is_zero() || self.contains(b)? {
            return Ok(Ideal::unit(&self.ring).with_budget(self.budget));
        }
        let principal = self.derived(vec![b.clone()]);
        let inter = self.intersect(&principal)?;
        let quot = inter
            .gens
            .iter()
            .map(|h| h.divide_exact(b).ok_or_else(|| AlgebraError::Indeterminate("inexact division in colon".into())))
            .collect::<Result<Vec<_>>>()?;
        self.tidy(quot)
    }

    /// `A : B = ∩_b (A : b)` over the generators of `B`.
    pub fn colon(&self, other: &Ideal<F>) -> Result<Self> {
        if !self.ring.same_ring(&other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let mut acc: Option<Ideal<F>> = None;
        for b in &other.gens {
            let q = self.colon_element(b)?;
            acc = Some(match acc {
                None => q,
                Some(a) => {
                    if q.is_unit()? {
                        a
                    } else if a.is_unit()? {
                        q
                    } else {
                        a.intersect(&q)?
                    }
                }
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring).with_budget(self.budget)))
    }

    /// `A : B^∞` as the fixpoint of iterated colons.
    pub fn saturate(&self, other: &Ideal<F>) -> Result<Self> {
        let mut cur = self.clone();
        loop {
            let next = cur.colon(other)?;
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `A : ℓ^∞` for `ℓ = x_d + Σ_{i<d} c_i x_i`, by moving `ℓ` to the last
    /// variable and dividing a reverse-lex basis by powers of it. For a
    /// generic `ℓ` this equals `A : m^∞`; a finite-length check on the result
    /// over `A` certifies that.
    pub fn saturate_by_linear_form(&self, coeffs: &[F::Elem]) -> Result<Self> {
        let d = self.ring.num_vars();
        if coeffs.len() + 1 != d {
            return Err(AlgebraError::ShapeMismatch(format!("expected {} coefficients", d - 1)));
        }
        if !self.is_homogeneous() {
            return Err(AlgebraError::Precondition("saturation needs a homogeneous ideal".into()));
        }
        let grev = self.ring.with_order(MonomialOrder::GRevLex)?;
        let mut shift = grev.zero();
        for (i, c) in coeffs.iter().enumerate() {
            shift = &shift + &grev.var(i).scale(c);
        }
        let mut fwd = grev.vars();
        fwd[d - 1] = &grev.var(d - 1) - &shift;
        let mut back = grev.vars();
        back[d - 1] = &grev.var(d - 1) + &shift;
        let moved: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.substitute(&grev, &fwd)).collect::<Result<_>>()?;
        let gb = module_groebner_basis(&grev, &moved, &[], self.budget)?;
        let last = Monomial::var(d - 1);
        let mut out = Vec::new();
        for g in gb.generators() {
            let k = g.terms().iter().map(|(m, _)| m.exp(d - 1)).min().unwrap_or(0);
            let mut h = g.clone();
            for _ in 0..k {
                let terms: Vec<(Monomial, F::Elem)> =
                    h.terms().iter().map(|(m, c)| (last.quotient_of(m).expect("divisible"), c.clone())).collect();
                h = Polynomial::from_terms(&grev, terms);
            }
            out.push(h.substitute(&grev, &back)?.to_ring(&self.ring)?);
        }
        self.tidy(out)
    }

    /// Krull dimension of `R/I`; the unit ideal gets `None`.
    pub fn dimension(&self) -> Result<Option<usize>> {
        let gb = self.groebner()?;
        if gb.is_unit() {
            return Ok(None);
        }
        let supports: Vec<u32> = gb.leading_monomials().iter().map(|m| m.support()).collect();
        Ok(Some(self.ring.num_vars() - min_hitting_set(&supports)))
    }

    /// `d - dim R/I`. The zero ideal has codimension 0; the unit ideal is
    /// reported as `d + 1` (see [`Self::is_unit`] to tell it apart).
    pub fn codimension(&self) -> Result<usize> {
        if let Some(c) = self.codim.get() {
            return Ok(*c);
        }
        let d = self.ring.num_vars();
        let c = match self.dimension()? {
            None => d + 1,
            Some(dim) => d - dim,
        };
        Ok(*self.codim.get_or_init(|| c))
    }

    /// `dim_k (R/I)_e`, by counting standard monomials.
    pub fn hilbert_function(&self, e: u32) -> Result<usize> {
        Ok(self.groebner()?.standard_monomials(e, 0).len())
    }

    /// Image under the ring map sending variable `i` to `images[i]`.
    pub fn map(&self, target: &Ring<F>, images: &[Polynomial<F>]) -> Result<Self> {
        let gens = self.gens.iter().map(|g| g.substitute(target, images)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, gens)?.with_budget(self.budget))
    }
}

impl<F: Field> std::fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};
    use crate::ring::PolynomialRing;

    fn r2() -> Ring<Rationals> {
        PolynomialRing::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap()
    }

    fn r3() -> Ring<Fp> {
        PolynomialRing::new(Fp::default_prime(), &["x", "y", "z"], MonomialOrder::GRevLex).unwrap()
    }

    #[test]
    fn powers() {
        let r = r2();
        let m = Ideal::from_strings(&r, &["x", "y"]).unwrap();
        assert_eq!(m.power(2).unwrap().num_generators(), 3);
        assert!(m.power(0).unwrap().is_unit().unwrap());
        let m2 = m.power(2).unwrap();
        let m4 = m2.power(2).unwrap();
        assert_eq!(m4.num_generators(), 5);
        assert!(m4.equals(&m.power(4).unwrap()).unwrap());
    }

    #[test]
    fn intersections() {
        let r = r2();
        let x = Ideal::from_strings(&r, &["x"]).unwrap();
        let y = Ideal::from_strings(&r, &["y"]).unwrap();
        assert!(x.intersect(&y).unwrap().equals(&Ideal::from_strings(&r, &["x*y"]).unwrap()).unwrap());
        let a = Ideal::from_strings(&r, &["x^2", "y"]).unwrap();
        assert!(a.intersect(&x).unwrap().equals(&Ideal::from_strings(&r, &["x^2", "x*y"]).unwrap()).unwrap());
        assert!(a.intersect(&a).unwrap().equals(&a).unwrap());
    }

    #[test]
    fn colons_and_saturation() {
        let r = r2();
        let a = Ideal::from_strings(&r, &["x^2"]).unwrap();
        let x = Ideal::from_strings(&r, &["x"]).unwrap();
        assert!(a.colon(&x).unwrap().equals(&x).unwrap());
        let b = Ideal::from_strings(&r, &["x*y", "y^2"]).unwrap();
        let y = Ideal::from_strings(&r, &["y"]).unwrap();
        assert!(b.colon(&y).unwrap().equals(&Ideal::from_strings(&r, &["x", "y"]).unwrap()).unwrap());
        let m = Ideal::maximal(&r);
        let c = Ideal::from_strings(&r, &["x^2", "x*y"]).unwrap();
        assert!(c.saturate(&m).unwrap().equals(&x).unwrap());
        let p = Ideal::from_strings(&r, &["x^2*y"]).unwrap();
        assert!(p.saturate(&m).unwrap().equals(&p).unwrap());
        assert!(p.saturate(&Ideal::unit(&r)).unwrap().equals(&p).unwrap());
    }

    #[test]
    fn codimensions() {
        let r = r3();
        let i = Ideal::from_strings(&r, &["x", "y"]).unwrap().power(2).unwrap();
        assert_eq!(i.codimension().unwrap(), 2);
        assert_eq!(Ideal::zero(&r).codimension().unwrap(), 0);
        assert_eq!(Ideal::unit(&r).codimension().unwrap(), 4);
        assert_eq!(Ideal::maximal(&r).codimension().unwrap(), 3);
    }

    #[test]
    fn hitting_sets() {
        assert_eq!(min_hitting_set(&[0b011, 0b110]), 1);
        assert_eq!(min_hitting_set(&[0b001, 0b010, 0b100]), 3);
        assert_eq!(min_hitting_set(&[]), 0);
    }

    #[test]
    fn saturation_by_linear_form() {
        let r = r3();
        let a = Ideal::from_strings(&r, &["x^2", "x*y", "x*z"]).unwrap();
        let f = r.field().clone();
        let c = vec![f.from_fraction(&3.into(), &1.into()).unwrap(), f.from_fraction(&7.into(), &1.into()).unwrap()];
        let s = a.saturate_by_linear_form(&c).unwrap();
        assert!(s.equals(&Ideal::from_strings(&r, &["x"]).unwrap()).unwrap());
        assert!(s.equals(&a.saturate(&Ideal::maximal(&r)).unwrap()).unwrap());
    }
}
