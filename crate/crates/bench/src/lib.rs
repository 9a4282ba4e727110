//! Benchmark fixtures shared by the criterion benches.

use rilab_core::catalog;
use rilab_core::ideal::Ideal;
use rilab_core::{Fp, MonomialOrder, Polynomial, PolynomialRing, Ring, RingExt};

pub fn ring(names: &[&str]) -> Ring<Fp> {
    PolynomialRing::new(Fp::default_prime(), names, MonomialOrder::GRevLex).expect("valid ring")
}

/// Homogenized Katsura-`n` system in `n + 2` variables.
pub fn katsura(n: usize) -> Vec<Polynomial<Fp>> {
    let names: Vec<String> = (0..=n).map(|i| format!("u{i}")).chain(["h".to_string()]).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let r = ring(&refs);
    let u = |i: i64| -> Polynomial<Fp> {
        let i = i.unsigned_abs() as usize;
        if i <= n { r.var(i) } else { r.zero() }
    };
    let h = r.var(n + 1);
    let mut out = Vec::new();
    let mut lin = r.zero();
    for i in -(n as i64)..=n as i64 {
        lin = &lin + &u(i);
    }
    out.push(&lin - &h);
    for m in 0..n as i64 {
        let mut q = r.zero();
        for i in -(n as i64)..=n as i64 {
            q = &q + &(&u(i) * &u(m - i));
        }
        out.push(&q - &(&u(m) * &h));
    }
    out
}

/// The mystery-module pair: `(x, y)^2` and three general cubics inside it.
pub fn mystery_pair() -> (Ideal<Fp>, Ideal<Fp>) {
    let setup = catalog::build("mystery-module").and_then(|e| e.setup(false)).expect("catalog entry builds");
    (setup.i, setup.j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_well_formed() {
        assert_eq!(katsura(3).len(), 4);
        assert!(katsura(3).iter().all(|p| p.is_homogeneous()));
        let (i, j) = mystery_pair();
        assert!(j.is_subset_of(&i).unwrap());
    }
}
