//! Dense exponent vectors and monomial orders.
//!
//! A [`Monomial`] also carries a component index so that the same type
//! serves as a basis element `x^a e_i` of a free module; ring elements always
//! live in component 0.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// Maximum number of variables supported by the dense exponent layout.
pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
    comp: u16,
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], deg: 0, comp: 0 }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(AlgebraError::InvalidRing(format!("at most {MAX_VARS} variables supported")));
        }
        let mut m = Self::one();
        let mut deg = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u8::try_from(e).map_err(|_| AlgebraError::ExponentOverflow)?;
            deg += e;
        }
        m.deg = u16::try_from(deg).map_err(|_| AlgebraError::ExponentOverflow)?;
        Ok(m)
    }

    /// Basis vector `e_comp` of a free module.
    pub fn unit(comp: usize) -> Self {
        let mut m = Self::one();
        m.comp = comp as u16;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn comp(&self) -> usize {
        self.comp as usize
    }

    pub fn with_comp(mut self, comp: usize) -> Self {
        self.comp = comp as u16;
        self
    }

    /// Degree counting only variables in `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        weights.iter().zip(self.exps.iter()).map(|(w, &e)| w * e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Product; the component of `self` is kept (the other factor is
    /// expected to be a ring monomial).
    #[inline]
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        out.deg = self.deg.checked_add(other.deg)?;
        out.comp = self.comp.max(other.comp);
        Some(out)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow in monomial product")
    }

    /// True when `self` divides `other` (same component required).
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.comp != other.comp || self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` as a ring monomial, if `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut q = Monomial::one();
        for i in 0..MAX_VARS {
            q.exps[i] = other.exps[i] - self.exps[i];
        }
        q.deg = other.deg - self.deg;
        Some(q)
    }

    /// Least common multiple; components must agree.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.comp, other.comp);
        let mut out = *self;
        let mut deg = 0u16;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            deg += out.exps[i] as u16;
        }
        out.deg = deg;
        out
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bitmask of variables occurring (bit i) and occurring squared (bit 16+i).
    #[inline]
    pub fn divmask(&self) -> u32 {
        let mut m = 0u32;
        for i in 0..MAX_VARS {
            let e = self.exps[i];
            if e > 0 {
                m |= 1 << i;
            }
            if e > 1 {
                m |= 1 << (16 + i);
            }
        }
        m
    }

    /// Support as a bitmask over variables.
    pub fn support(&self) -> u32 {
        self.divmask() & 0xffff
    }

    /// Formal derivative factor: returns `(exponent, monomial / x_i)`.
    pub fn differentiate(&self, i: usize) -> Option<(u32, Monomial)> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut out = *self;
        out.exps[i] -= 1;
        out.deg -= 1;
        Some((self.exps[i] as u32, out))
    }

    pub fn ring_part(&self) -> Monomial {
        let mut m = *self;
        m.comp = 0;
        m
    }
}

/// Monomial orders. Components are always compared first (position over
/// term), lower component index being larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MonomialOrder {
    #[default]
    GRevLex,
    GLex,
    /// Block order eliminating the first `block` variables: graded reverse
    /// lex on the block, ties broken by graded reverse lex on the rest.
    Elimination { block: usize },
}

#[inline]
fn grevlex_range(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let da: u32 = a.exps[lo..hi].iter().map(|&e| e as u32).sum();
    let db: u32 = b.exps[lo..hi].iter().map(|&e| e as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (lo..hi).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if a.comp != b.comp {
            return b.comp.cmp(&a.comp);
        }
        match self {
            MonomialOrder::GRevLex => {
                if a.deg != b.deg {
                    return a.deg.cmp(&b.deg);
                }
                for i in (0..MAX_VARS).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GLex => {
                if a.deg != b.deg {
                    return a.deg.cmp(&b.deg);
                }
                a.exps.cmp(&b.exps)
            }
            MonomialOrder::Elimination { block } => grevlex_range(a, b, 0, *block)
                .then_with(|| grevlex_range(a, b, *block, MAX_VARS)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::GRevLex;
        // x^2 > xy > y^2 > xz > yz > z^2 in degree 2
        let chain = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in chain.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_prefers_block() {
        let o = MonomialOrder::Elimination { block: 1 };
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b).unwrap(), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert_eq!(a.divmask() & !b.divmask(), 0);
    }

    #[test]
    fn overflow_detected() {
        assert!(Monomial::from_exponents(&[300]).is_err());
        let big = m(&[200]);
        assert!(big.checked_mul(&big).is_none());
    }

    #[test]
    fn module_components_position_over_term() {
        let o = MonomialOrder::GRevLex;
        let a = m(&[0, 0, 0]).with_comp(0);
        let b = m(&[5, 0, 0]).with_comp(1);
        assert_eq!(o.cmp(&a, &b), Ordering::Greater);
        assert!(!m(&[1]).with_comp(1).divides(&m(&[2])));
    }
}
