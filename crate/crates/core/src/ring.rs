//! Polynomial rings `k[x_1, ..., x_d]`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::poly::Polynomial;

/// A polynomial ring over an exact field. Rings are shared through [`Ring`]
/// handles; two handles denote the same ring when field, variable names and
/// order agree.
#[derive(Debug, PartialEq)]
pub struct PolynomialRing<F: Field> {
    field: F,
    var_names: Vec<String>,
    order: MonomialOrder,
}

pub type Ring<F> = Arc<PolynomialRing<F>>;

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> PolynomialRing<F> {
    pub fn new<S: AsRef<str>>(field: F, var_names: &[S], order: MonomialOrder) -> Result<Ring<F>> {
        if var_names.is_empty() {
            return Err(AlgebraError::InvalidRing("need at least one variable".into()));
        }
        if var_names.len() > MAX_VARS {
            return Err(AlgebraError::InvalidRing(format!("at most {MAX_VARS} variables supported")));
        }
        let names: Vec<String> = var_names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for n in &names {
            if !valid_identifier(n) {
                return Err(AlgebraError::InvalidRing(format!("invalid variable name `{n}`")));
            }
            if !seen.insert(n.as_str()) {
                return Err(AlgebraError::InvalidRing(format!("duplicate variable name `{n}`")));
            }
        }
        if let MonomialOrder::Elimination { block } = order {
            if block == 0 || block >= names.len() {
                return Err(AlgebraError::InvalidRing(format!("elimination block {block} out of range")));
            }
        }
        Ok(Arc::new(PolynomialRing { field, var_names: names, order }))
    }

    /// Ring in variables `x1, ..., xd` with graded reverse lex order.
    pub fn with_vars(field: F, d: usize) -> Result<Ring<F>> {
        let names: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
        Self::new(field, &names, MonomialOrder::GRevLex)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|n| n == name)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring<F>> {
        Self::new(self.field.clone(), &self.var_names, order)
    }

    /// Ring with `extra` new variables prepended (used for elimination).
    pub fn prepend_vars(&self, extra: &[&str], order: MonomialOrder) -> Result<Ring<F>> {
        let mut names: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        names.extend(self.var_names.iter().cloned());
        Self::new(self.field.clone(), &names, order)
    }

    /// All monomials of degree `e` in component 0, sorted descending.
    pub fn monomials_of_degree(&self, e: u32) -> Vec<Monomial> {
        let n = self.num_vars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = exps.len();
            if i == n - 1 {
                exps[i] = left;
                out.push(Monomial::from_exponents(exps).expect("degree fits"));
                return;
            }
            for a in (0..=left).rev() {
                exps[i] = a;
                rec(i + 1, left - a, exps, out);
            }
            exps[i] = 0;
        }
        rec(0, e, &mut exps, &mut out);
        let order = self.order;
        out.sort_by(|a, b| order.cmp(b, a));
        out
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.var_names.iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Convenience constructors that need a ring handle.
pub trait RingExt<F: Field> {
    fn zero(&self) -> Polynomial<F>;
    fn one(&self) -> Polynomial<F>;
    fn var(&self, i: usize) -> Polynomial<F>;
    fn vars(&self) -> Vec<Polynomial<F>>;
    fn constant(&self, c: F::Elem) -> Polynomial<F>;
    fn parse(&self, text: &str) -> Result<Polynomial<F>>;
    fn parse_all(&self, texts: &[&str]) -> Result<Vec<Polynomial<F>>>;
    fn same_ring(&self, other: &Ring<F>) -> bool;
}

impl<F: Field> RingExt<F> for Ring<F> {
    fn zero(&self) -> Polynomial<F> {
        Polynomial::zero(self)
    }
    fn one(&self) -> Polynomial<F> {
        Polynomial::constant(self, self.field.one())
    }
    fn var(&self, i: usize) -> Polynomial<F> {
        assert!(i < self.num_vars(), "variable index out of range");
        Polynomial::from_sorted_terms(self.clone(), vec![(Monomial::var(i), self.field.one())])
    }
    fn vars(&self) -> Vec<Polynomial<F>> {
        (0..self.num_vars()).map(|i| self.var(i)).collect()
    }
    fn constant(&self, c: F::Elem) -> Polynomial<F> {
        Polynomial::constant(self, c)
    }
    fn parse(&self, text: &str) -> Result<Polynomial<F>> {
        crate::parse::parse_polynomial(text, self)
    }
    fn parse_all(&self, texts: &[&str]) -> Result<Vec<Polynomial<F>>> {
        texts.iter().map(|t| self.parse(t)).collect()
    }
    fn same_ring(&self, other: &Ring<F>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    #[test]
    fn rejects_bad_names() {
        let f = Fp::default_prime();
        assert!(PolynomialRing::new(f, &["x", "x"], MonomialOrder::GRevLex).is_err());
        assert!(PolynomialRing::new(f, &["1x"], MonomialOrder::GRevLex).is_err());
        assert!(PolynomialRing::<Fp>::new(f, &[] as &[&str], MonomialOrder::GRevLex).is_err());
    }

    #[test]
    fn monomials_by_degree() {
        let r = PolynomialRing::with_vars(Fp::default_prime(), 3).unwrap();
        let ms = r.monomials_of_degree(2);
        assert_eq!(ms.len(), 6);
        assert_eq!(r.format_monomial(&ms[0]), "x1^2");
        assert_eq!(r.format_monomial(&ms[5]), "x3^2");
    }
}
