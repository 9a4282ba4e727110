//! Residual intersections of perfect codimension 2 ideals from a
//! Hilbert–Burch matrix `N` and a coefficient matrix `P`.
//!
//! Layout: `N` is `(n+1) × n`, `I = I_n(N)` generated by the signed maximal
//! minors `Δ`, `P` is `(n+1) × s`, `J = Δ·P`, and `C = [N | P]`.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{groebner_basis, GbBudget};
use crate::ideal::Ideal;
use crate::minors::{minors, signed_maximal_minors};
use crate::module::HilbertFunction;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingExt};

pub type PolyMatrix<F> = Vec<Vec<Polynomial<F>>>;

#[derive(Clone, Debug)]
pub struct Codim2Residual<F: Field> {
    pub n: PolyMatrix<F>,
    pub p: PolyMatrix<F>,
    /// `Δ_1, -Δ_2, Δ_3, ...`, with `Δ_i` the minor omitting row `i`.
    pub deltas: Vec<Polynomial<F>>,
    pub i: Ideal<F>,
    pub j: Ideal<F>,
    pub c: PolyMatrix<F>,
    /// `I_{n+1}(C)`, the expected value of `J : I`.
    pub k_candidate: Ideal<F>,
}

fn transpose<F: Field>(m: &[Vec<Polynomial<F>>]) -> PolyMatrix<F> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect()
}

fn shape<F: Field>(m: &[Vec<Polynomial<F>>]) -> Result<(usize, usize)> {
    let cols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != cols) {
        return Err(AlgebraError::ShapeMismatch("ragged matrix".into()));
    }
    Ok((m.len(), cols))
}

pub fn build_residual_matrix_codim2<F: Field>(
    ring: &Ring<F>,
    n: PolyMatrix<F>,
    p: PolyMatrix<F>,
) -> Result<Codim2Residual<F>> {
    let (nr, nc) = shape(&n)?;
    let (pr, s) = shape(&p)?;
    if nr != nc + 1 || pr != nr {
        return Err(AlgebraError::ShapeMismatch(format!("N is {nr}x{nc} and P is {pr}x{s}; need (n+1)xn and (n+1)xs")));
    }
    let deltas = signed_maximal_minors(ring, &transpose(&n))?;
    let i = Ideal::new(ring, deltas.clone())?;
    let jgens = (0..s)
        .map(|col| {
            let mut acc = ring.zero();
            for (k, d) in deltas.iter().enumerate() {
                if !p[k][col].is_zero() {
                    acc = &acc + &(d * &p[k][col]);
                }
            }
            acc
        })
        .collect();
    let j = Ideal::new(ring, jgens)?;
    let c: PolyMatrix<F> = n.iter().zip(&p).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
    let k_candidate = Ideal::new(ring, minors(ring, &c, nr)?.into_iter().filter(|g| !g.is_zero()).collect())?;
    Ok(Codim2Residual { n, p, deltas, i, j, c, k_candidate })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymRow {
    pub u: u32,
    pub quotient: HilbertFunction,
    pub symmetric_power: HilbertFunction,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codim2Report {
    pub s: usize,
    pub codim_i: usize,
    pub codim_k: usize,
    pub generic_codim: bool,
    /// `I_{n+1}(C) = J : I`, checked only when the codimension is generic.
    pub k_equals_colon: Option<bool>,
    pub geometric: Option<bool>,
    pub sym_rows: Vec<SymRow>,
}

/// Codimension checks plus, for `u = 1..=max_u`, the Hilbert functions of
/// `I^u/JI^{u-1}` and `Sym^u(coker C*)` on degrees `u·deg Δ ..= u·deg Δ + window`.
pub fn check_codim2<F: Field>(data: &Codim2Residual<F>, max_u: u32, window: u32, budget: GbBudget) -> Result<Codim2Report> {
    let s = data.p.first().map_or(0, |r| r.len());
    let codim_i = data.i.codimension()?;
    let codim_k = data.k_candidate.codimension()?;
    let generic_codim = codim_k == s;
    let (k_equals_colon, geometric) = if generic_codim {
        let colon = data.j.colon(&data.i)?;
        let eq = colon.equals(&data.k_candidate)?;
        let geo = data.i.sum(&data.k_candidate)?.codimension()? > s;
        (Some(eq), Some(geo))
    } else {
        (None, None)
    };
    let mut sym_rows = Vec::new();
    if max_u > 0 {
        let deg = data.deltas.iter().find(|d| !d.is_zero()).and_then(|d| d.degree()).unwrap_or(0);
        let mut prev = Ideal::unit(data.i.ring()).with_budget(budget);
        for u in 1..=max_u {
            let power = prev.product(&data.i)?;
            let denom = data.j.product(&prev)?;
            let lo = u * deg;
            let quotient = (lo..=lo + window)
                .map(|e| Ok(denom.hilbert_function(e)? - power.hilbert_function(e)?))
                .collect::<Result<Vec<_>>>()?;
            let quotient = HilbertFunction::new(lo as i32, quotient);
            let symmetric_power = sym_power_hilbert(data, u, window, budget)?;
            let equal = quotient == symmetric_power;
            sym_rows.push(SymRow { u, quotient, symmetric_power, equal });
            prev = power;
        }
    }
    Ok(Codim2Report { s, codim_i, codim_k, generic_codim, k_equals_colon, geometric, sym_rows })
}

/// Hilbert function of `Sym^u(coker C*)` with `T_i` in degree `deg Δ`:
/// the bidegree `(·, u)` part of `k[T, x] / (Σ_i C_ij T_i)`.
pub fn sym_power_hilbert<F: Field>(data: &Codim2Residual<F>, u: u32, window: u32, budget: GbBudget) -> Result<HilbertFunction> {
    let ring = data.i.ring();
    let deg = data.deltas.iter().find(|d| !d.is_zero()).and_then(|d| d.degree()).unwrap_or(0);
    if data.deltas.iter().any(|d| !d.is_zero() && d.degree() != Some(deg)) {
        return Err(AlgebraError::Precondition("Sym comparison needs equal generator degrees".into()));
    }
    let rows = data.c.len();
    let names: Vec<String> = (0..rows).map(|i| format!("T{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let big = ring.prepend_vars(&names, MonomialOrder::GRevLex)?;
    let lift = |p: &Polynomial<F>| p.embed_shifted(&big, rows);
    let cols = data.c.first().map_or(0, |r| r.len());
    let mut rels = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut acc = big.zero();
        for i in 0..rows {
            if !data.c[i][j].is_zero() {
                acc = &acc + &(&lift(&data.c[i][j])? * &big.var(i));
            }
        }
        if !acc.is_zero() {
            if !acc.is_homogeneous() {
                return Err(AlgebraError::Precondition("columns of C must have constant entry degree".into()));
            }
            rels.push(acc);
        }
    }
    let gb = groebner_basis(&big, &rels, budget)?;
    let t_ring = crate::ring::PolynomialRing::new(ring.field().clone(), &names, MonomialOrder::GRevLex)?;
    let t_monos = t_ring.monomials_of_degree(u);
    let d = ring.num_vars();
    let values = (0..=window)
        .map(|a| {
            let mut count = 0;
            for x in ring.monomials_of_degree(a) {
                for t in &t_monos {
                    let mut exps = vec![0u32; rows + d];
                    for i in 0..rows {
                        exps[i] = t.exp(i);
                    }
                    for i in 0..d {
                        exps[rows + i] = x.exp(i);
                    }
                    if !gb.is_leading_multiple(&Monomial::from_exponents(&exps)?) {
                        count += 1;
                    }
                }
            }
            Ok(count)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertFunction::new((u * deg) as i32, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::ring::PolynomialRing;

    #[test]
    fn degenerate_t0() {
        let r = PolynomialRing::new(Fp::default_prime(), &["x", "y"], MonomialOrder::GRevLex).unwrap();
        let n = vec![vec![r.parse("y").unwrap()], vec![r.parse("-x").unwrap()]];
        let p = vec![vec![r.one(), r.zero()], vec![r.zero(), r.one()]];
        let data = build_residual_matrix_codim2(&r, n, p).unwrap();
        assert!(data.i.equals(&Ideal::from_strings(&r, &["x", "y"]).unwrap()).unwrap());
        assert!(data.j.equals(&data.i).unwrap());
        let rep = check_codim2(&data, 0, 0, GbBudget::default()).unwrap();
        assert_eq!(rep.codim_k, 3);
        assert!(data.k_candidate.is_unit().unwrap());
    }
}
