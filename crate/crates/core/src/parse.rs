//! Text parser for polynomials.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*' factor) | ('/' integer))*
//! factor := atom ['^' integer]
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero integer constant; it fails when the
//! constant is not invertible in the coefficient field.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::ring::{Ring, RingExt};

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring<F>,
}

pub fn parse_polynomial<F: Field>(text: &str, ring: &Ring<F>) -> Result<Polynomial<F>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty input"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected character `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

impl<'a, F: Field> Parser<'a, F> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut sign_neg = false;
        match self.peek() {
            Some(b'-') => {
                sign_neg = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if sign_neg { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        self.pos = at;
                        return Err(self.error("division by zero"));
                    }
                    let c = self.ring.field().from_fraction(&BigInt::one(), &d)?;
                    acc = acc.scale(&c);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            if e > u8::MAX as u32 {
                return Err(AlgebraError::ExponentOverflow);
            }
            let mut acc = self.ring.one();
            for _ in 0..e {
                acc = acc.try_mul(&base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = self.ring.field().from_fraction(&n, &BigInt::one())?;
                Ok(self.ring.constant(c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(AlgebraError::UnknownVariable(name.to_string())),
                }
            }
            Some(c) => Err(self.error(&format!("unexpected character `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse::<BigInt>().expect("digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};
    use crate::monomial::MonomialOrder;
    use crate::ring::PolynomialRing;

    fn ring() -> Ring<Fp> {
        PolynomialRing::with_vars(Fp::default_prime(), 3).unwrap()
    }

    #[test]
    fn two_term_cubic() {
        let p = ring().parse("x1^2*x2 - 3*x3").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert!(p.terms().iter().all(|(m, _)| m.degree() == 3) || p.degree() == Some(3));
        assert_eq!(p.to_string(), "x1^2*x2 - 3*x3");
    }

    #[test]
    fn zero_and_like_terms() {
        let r = ring();
        assert!(r.parse("0").unwrap().is_zero());
        assert_eq!(r.parse("x1+x1").unwrap().to_string(), "2*x1");
        assert_eq!(r.parse(" ( x1 + x2 ) ^ 2 ").unwrap().to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert!(matches!(r.parse("x1 + * x2"), Err(AlgebraError::Syntax { pos: 5, .. })));
        assert_eq!(r.parse("x1 + y"), Err(AlgebraError::UnknownVariable("y".into())));
        let r7 = PolynomialRing::new(Fp::new(7).unwrap(), &["x"], MonomialOrder::GRevLex).unwrap();
        assert!(matches!(r7.parse("x/7"), Err(AlgebraError::NotRepresentable(_))));
        assert_eq!(r7.parse("x/2").unwrap().to_string(), "-3*x");
    }

    #[test]
    fn rationals_print_fractions() {
        let r = PolynomialRing::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap();
        let p = r.parse("x/2 - 3*y/4").unwrap();
        assert_eq!(p.to_string(), "1/2*x - 3/4*y");
        assert_eq!(r.parse(&p.to_string()).unwrap(), p);
    }
}
