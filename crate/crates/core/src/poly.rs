//! Sparse multivariate polynomials in canonical form.

use std::cmp::Ordering;
use rustc_hash::FxHashMap as HashMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::{Ring, RingExt};

pub type Term<F> = (Monomial, <F as Field>::Elem);

/// A polynomial (or, when components are used, a vector in a free module).
///
/// Terms are kept sorted strictly descending in the ring's order with no
/// zero coefficients, so structural equality is mathematical equality.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    terms: Vec<Term<F>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ring.same_ring(&other.ring)
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// `a + c * m * b` for sorted term lists.
pub(crate) fn add_scaled_shifted<F: Field>(
    field: &F,
    order: MonomialOrder,
    a: &[Term<F>],
    c: &F::Elem,
    m: &Monomial,
    b: &[Term<F>],
) -> Vec<Term<F>> {
    let mut out: Vec<Term<F>> = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let shift = |t: &Term<F>| -> Term<F> { (t.0.mul(m), field.mul(c, &t.1)) };
    let mut bi = b.iter().map(shift).peekable();
    loop {
        match (a.get(i), bi.peek()) {
            (Some(ta), Some(tb)) => match order.cmp(&ta.0, &tb.0) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                }
                Ordering::Less => out.push(bi.next().unwrap()),
                Ordering::Equal => {
                    let s = field.add(&ta.1, &tb.1);
                    if !field.is_zero(&s) {
                        out.push((ta.0, s));
                    }
                    i += 1;
                    bi.next();
                }
            },
            (Some(_), None) => {
                out.extend_from_slice(&a[i..]);
                break;
            }
            (None, Some(_)) => {
                out.extend(bi);
                break;
            }
            (None, None) => break,
        }
    }
    out
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Ring<F>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring<F>, c: F::Elem) -> Self {
        let terms = if ring.field().is_zero(&c) { vec![] } else { vec![(Monomial::one(), c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &Ring<F>, m: Monomial, c: F::Elem) -> Self {
        Self::constant(ring, c).mul_term(&m, &ring.field().one())
    }

    /// Builds from terms already sorted descending and free of zeros.
    pub fn from_sorted_terms(ring: Ring<F>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !ring.field().is_zero(&t.1)));
        Polynomial { ring, terms }
    }

    /// Builds from arbitrary terms, collecting like terms.
    pub fn from_terms(ring: &Ring<F>, terms: impl IntoIterator<Item = Term<F>>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::default();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert_with(|| field.zero());
            *e = field.add(e, &c);
        }
        let mut v: Vec<Term<F>> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        let order = ring.order();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms: v }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree (max over terms); `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Homogeneous with respect to the standard grading (all terms of one
    /// degree). The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Homogeneity for a module element whose basis vectors have degrees `shifts`.
    pub fn is_homogeneous_with(&self, shifts: &[i32]) -> bool {
        let deg = |m: &Monomial| m.degree() as i32 + shifts.get(m.comp()).copied().unwrap_or(0);
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| deg(m) == deg(m0)),
        }
    }

    /// Degree of a homogeneous module element with the given component shifts.
    pub fn shifted_degree(&self, shifts: &[i32]) -> Option<i32> {
        self.terms.first().map(|(m, _)| m.degree() as i32 + shifts.get(m.comp()).copied().unwrap_or(0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one() && m.comp() == 0)
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        let order = self.ring.order();
        match self.terms.binary_search_by(|t| order.cmp(m, &t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field().zero(),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let one = self.field().one();
        Ok(self.add_scaled(&one, &Monomial::one(), other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let m1 = self.field().neg(&self.field().one());
        Ok(self.add_scaled(&m1, &Monomial::one(), other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if let (Some(da), Some(db)) = (self.max_exponents(), other.max_exponents()) {
            if da.iter().zip(db.iter()).any(|(a, b)| a + b > u8::MAX as u32) {
                return Err(AlgebraError::ExponentOverflow);
            }
        }
        Ok(self.mul_unchecked(other))
    }

    fn max_exponents(&self) -> Option<Vec<u32>> {
        if self.terms.is_empty() {
            return None;
        }
        let n = self.ring.num_vars();
        let mut mx = vec![0u32; n];
        for (m, _) in &self.terms {
            for (i, x) in mx.iter_mut().enumerate() {
                *x = (*x).max(m.exp(i));
            }
        }
        Some(mx)
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, c: &F::Elem, m: &Monomial, other: &Self) -> Self {
        if self.field().is_zero(c) {
            return self.clone();
        }
        let terms = add_scaled_shifted(self.field(), self.ring.order(), &self.terms, c, m, &other.terms);
        Polynomial { ring: self.ring.clone(), terms }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, large) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        if small.terms.len() <= 4 {
            let mut acc = Polynomial::zero(&self.ring);
            for (m, c) in &small.terms {
                acc = acc.add_scaled(c, m, large);
            }
            return acc;
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity_and_hasher(self.terms.len() * other.terms.len(), Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let p = field.mul(ca, cb);
                let e = acc.entry(m).or_insert_with(|| field.zero());
                *e = field.add(e, &p);
            }
        }
        let mut v: Vec<Term<F>> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        let order = self.ring.order();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), terms: v }
    }

    /// Multiplies by the term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(mm, cc)| (mm.mul(m), field.mul(cc, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn neg(&self) -> Self {
        let field = self.field();
        let terms = self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..n {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Scales so the leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => {
                let inv = self.field().inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        let n = self.ring.num_vars();
        if i >= n {
            return Err(AlgebraError::IndexOutOfRange { index: i, limit: n });
        }
        let field = self.field();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let (e, q) = m.differentiate(i)?;
            let coeff = field.mul(c, &field.from_i64(e as i64));
            Some((q, coeff))
        });
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Homogeneous component of degree `e`.
    pub fn homogeneous_part(&self, e: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == e).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Re-expresses the polynomial in another ring with the same variables
    /// (typically a different monomial order).
    pub fn to_ring(&self, target: &Ring<F>) -> Result<Self> {
        if target.var_names() != self.ring.var_names() || target.field() != self.field() {
            return Err(AlgebraError::RingMismatch);
        }
        if target.order() == self.ring.order() {
            return Ok(Polynomial { ring: target.clone(), terms: self.terms.clone() });
        }
        let mut terms = self.terms.clone();
        let order = target.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(Polynomial { ring: target.clone(), terms })
    }

    /// Moves variable `i` to variable `i + offset` in a bigger ring.
    pub fn embed_shifted(&self, target: &Ring<F>, offset: usize) -> Result<Self> {
        if self.ring.num_vars() + offset > target.num_vars() {
            return Err(AlgebraError::RingMismatch);
        }
        let n = self.ring.num_vars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; target.num_vars()];
            for i in 0..n {
                e[i + offset] = m.exp(i);
            }
            (Monomial::from_exponents(&e).expect("same exponents").with_comp(m.comp()), c.clone())
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Substitutes `images[i]` (polynomials in `target`) for variable `i`.
    pub fn substitute(&self, target: &Ring<F>, images: &[Polynomial<F>]) -> Result<Self> {
        let n = self.ring.num_vars();
        if images.len() != n {
            return Err(AlgebraError::ShapeMismatch(format!("expected {n} images, got {}", images.len())));
        }
        if images.iter().any(|p| !p.ring.same_ring(target)) {
            return Err(AlgebraError::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut acc: Vec<Term<F>> = Vec::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul_unchecked(&images[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul_unchecked(&pw[e]);
                }
            }
            acc.extend(t.terms);
        }
        Ok(Polynomial::from_terms(target, acc))
    }

    /// Writes a module element with components as a coefficient vector.
    pub fn components(&self, rank: usize) -> Vec<Polynomial<F>> {
        let mut buckets: Vec<Vec<Term<F>>> = vec![Vec::new(); rank];
        for (m, c) in &self.terms {
            buckets[m.comp()].push((m.ring_part(), c.clone()));
        }
        buckets.into_iter().map(|t| Polynomial { ring: self.ring.clone(), terms: t }).collect()
    }

    /// Assembles a module element from its coordinate polynomials.
    pub fn from_components(ring: &Ring<F>, comps: &[Polynomial<F>]) -> Self {
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            terms.extend(p.terms.iter().map(|(m, c)| (m.with_comp(i), c.clone())));
        }
        // components are disjoint and each bucket is sorted; lower index first
        Polynomial { ring: ring.clone(), terms }
    }

    /// Exact quotient `self / b`, or `None` when `b` does not divide `self`.
    pub fn divide_exact(&self, b: &Self) -> Option<Self> {
        let (lb, cb) = b.terms.first()?;
        let field = self.field();
        let inv = field.inv(cb).expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((lr, cr)) = rem.terms.first().cloned() {
            let q = lb.quotient_of(&lr)?;
            let c = field.mul(&cr, &inv);
            rem = rem.add_scaled(&field.neg(&c), &q, b);
            quot.push((q, c));
        }
        Some(Polynomial { ring: self.ring.clone(), terms: quot })
    }

    pub(crate) fn from_raw(ring: &Ring<F>, terms: Vec<Term<F>>) -> Self {
        Polynomial { ring: ring.clone(), terms }
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = field.format(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = self.ring.format_monomial(m);
            let comp = if m.comp() > 0 || self.terms.iter().any(|t| t.0.comp() > 0) {
                format!("*e{}", m.comp())
            } else {
                String::new()
            };
            match (mag.as_str(), m.is_one()) {
                ("1", true) => write!(f, "1{comp}")?,
                ("1", false) => write!(f, "{mono}{comp}")?,
                (_, true) => write!(f, "{mag}{comp}")?,
                (_, false) => write!(f, "{mag}*{mono}{comp}")?,
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl<'a, F: Field> std::ops::$tr<&'a Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                self.$call(rhs).expect("polynomial operands from the same ring")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};
    use crate::ring::PolynomialRing;

    #[test]
    fn difference_of_squares() {
        let r = PolynomialRing::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap();
        let x = r.var(0);
        let y = r.var(1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert_eq!(&p + &r.zero(), p);
    }

    #[test]
    fn modular_product() {
        let r = PolynomialRing::new(Fp::new(5).unwrap(), &["x"], MonomialOrder::GRevLex).unwrap();
        let p = &r.parse("3*x").unwrap() * &r.parse("2*x").unwrap();
        assert_eq!(p.to_string(), "x^2");
    }

    #[test]
    fn derivatives() {
        let r = PolynomialRing::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap();
        let p = r.parse("x^3*y").unwrap();
        assert_eq!(p.partial_derivative(0).unwrap().to_string(), "3*x^2*y");
        assert!(r.parse("7").unwrap().partial_derivative(0).unwrap().is_zero());
        assert!(p.partial_derivative(2).is_err());
        let r3 = PolynomialRing::new(Fp::new(3).unwrap(), &["x"], MonomialOrder::GRevLex).unwrap();
        assert!(r3.parse("x^3").unwrap().partial_derivative(0).unwrap().is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = PolynomialRing::new(Rationals, &["x"], MonomialOrder::GRevLex).unwrap();
        let b = PolynomialRing::new(Rationals, &["y"], MonomialOrder::GRevLex).unwrap();
        assert_eq!(a.var(0).try_add(&b.var(0)), Err(AlgebraError::RingMismatch));
    }

    #[test]
    fn homogeneous_products_add_degrees() {
        let r = PolynomialRing::with_vars(Fp::default_prime(), 3).unwrap();
        let a = r.parse("x1^2 + x2*x3").unwrap();
        let b = r.parse("x1*x2*x3 - x3^3").unwrap();
        let p = &a * &b;
        assert!(p.is_homogeneous());
        assert_eq!(p.degree(), Some(5));
    }

    #[test]
    fn substitution() {
        let r = PolynomialRing::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap();
        let p = r.parse("x^2 - y").unwrap();
        let s = p.substitute(&r, &[r.parse("x + y").unwrap(), r.parse("x*y").unwrap()]).unwrap();
        assert_eq!(s, r.parse("x^2 + x*y + y^2").unwrap());
    }
}
