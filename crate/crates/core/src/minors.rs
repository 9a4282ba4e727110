//! Determinants and minors of polynomial matrices.
//!
//! Laplace expansion along rows with memoization over column subsets, so an
//! `n×n` determinant costs `O(2^n · n)` polynomial products.

use rustc_hash::FxHashMap;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::ring::{Ring, RingExt};

/// Determinant of the submatrix on `rows` × `cols`, memoized by the set of
/// columns still available.
fn det_rec<F: Field>(
    ring: &Ring<F>,
    m: &[Vec<Polynomial<F>>],
    rows: &[usize],
    cols: &[usize],
    depth: usize,
    avail: u32,
    memo: &mut FxHashMap<u32, Polynomial<F>>,
) -> Polynomial<F> {
    if depth == rows.len() {
        return ring.one();
    }
    if let Some(v) = memo.get(&avail) {
        return v.clone();
    }
    let r = rows[depth];
    let mut acc = ring.zero();
    let mut sign_positive = true;
    for (k, &c) in cols.iter().enumerate() {
        if avail & (1 << k) == 0 {
            continue;
        }
        let entry = &m[r][c];
        if !entry.is_zero() {
            let sub = det_rec(ring, m, rows, cols, depth + 1, avail & !(1 << k), memo);
            if !sub.is_zero() {
                let term = entry * &sub;
                acc = if sign_positive { &acc + &term } else { &acc - &term };
            }
        }
        sign_positive = !sign_positive;
    }
    memo.insert(avail, acc.clone());
    acc
}

fn check_shape<F: Field>(m: &[Vec<Polynomial<F>>]) -> Result<(usize, usize)> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != ncols) {
        return Err(AlgebraError::ShapeMismatch("ragged matrix".into()));
    }
    if ncols > 30 {
        return Err(AlgebraError::ShapeMismatch("at most 30 columns supported".into()));
    }
    Ok((nrows, ncols))
}

pub fn determinant<F: Field>(ring: &Ring<F>, m: &[Vec<Polynomial<F>>]) -> Result<Polynomial<F>> {
    let (nrows, ncols) = check_shape(m)?;
    if nrows != ncols {
        return Err(AlgebraError::ShapeMismatch(format!("{nrows}x{ncols} matrix is not square")));
    }
    Ok(minor(ring, m, &(0..nrows).collect::<Vec<_>>(), &(0..ncols).collect::<Vec<_>>()))
}

/// The minor on the given rows and columns (in the given order).
pub fn minor<F: Field>(ring: &Ring<F>, m: &[Vec<Polynomial<F>>], rows: &[usize], cols: &[usize]) -> Polynomial<F> {
    assert_eq!(rows.len(), cols.len());
    let mut memo = FxHashMap::default();
    let full = if cols.len() == 32 { u32::MAX } else { (1u32 << cols.len()) - 1 };
    det_rec(ring, m, rows, cols, 0, full, &mut memo)
}

/// Index subsets of `0..n` of size `k` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `k×k` minors, ordered by (row subset, column subset) lexicographically.
/// `k = 0` gives the unit ideal generator; `k` beyond the shape gives nothing.
pub fn minors<F: Field>(ring: &Ring<F>, m: &[Vec<Polynomial<F>>], k: usize) -> Result<Vec<Polynomial<F>>> {
    let (nrows, ncols) = check_shape(m)?;
    if k == 0 {
        return Ok(vec![ring.one()]);
    }
    if k > nrows || k > ncols {
        return Ok(Vec::new());
    }
    let col_sets = subsets(ncols, k);
    let mut out = Vec::new();
    for rows in subsets(nrows, k) {
        // one memo per row subset, keyed by columns of the whole matrix
        let all_cols: Vec<usize> = (0..ncols).collect();
        let mut memo: FxHashMap<u32, Polynomial<F>> = FxHashMap::default();
        for cs in &col_sets {
            let mut avail = 0u32;
            for &c in cs {
                avail |= 1 << c;
            }
            out.push(det_rec(ring, m, &rows, &all_cols, 0, avail, &mut memo));
        }
    }
    Ok(out)
}

/// Maximal minors with the alternating signs of a Hilbert–Burch matrix:
/// for an `n × (n+1)` matrix returns `(-1)^i Δ_i` where `Δ_i` deletes column `i`.
pub fn signed_maximal_minors<F: Field>(ring: &Ring<F>, m: &[Vec<Polynomial<F>>]) -> Result<Vec<Polynomial<F>>> {
    let (nrows, ncols) = check_shape(m)?;
    if ncols != nrows + 1 {
        return Err(AlgebraError::ShapeMismatch(format!("expected n x (n+1), got {nrows}x{ncols}")));
    }
    let rows: Vec<usize> = (0..nrows).collect();
    Ok((0..ncols)
        .map(|i| {
            let cols: Vec<usize> = (0..ncols).filter(|&c| c != i).collect();
            let d = minor(ring, m, &rows, &cols);
            if i % 2 == 0 {
                d
            } else {
                d.neg()
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::monomial::MonomialOrder;
    use crate::ring::PolynomialRing;

    fn ring() -> Ring<Rationals> {
        PolynomialRing::new(Rationals, &["a", "b", "c", "d"], MonomialOrder::GRevLex).unwrap()
    }

    #[test]
    fn two_by_two() {
        let r = ring();
        let m = vec![r.parse_all(&["a", "b"]).unwrap(), r.parse_all(&["c", "d"]).unwrap()];
        assert_eq!(determinant(&r, &m).unwrap(), r.parse("a*d - b*c").unwrap());
        assert_eq!(minors(&r, &m, 1).unwrap().len(), 4);
        assert_eq!(minors(&r, &m, 3).unwrap().len(), 0);
    }

    #[test]
    fn repeated_row_vanishes() {
        let r = ring();
        let row = r.parse_all(&["a", "b", "c"]).unwrap();
        let m = vec![row.clone(), r.parse_all(&["d", "a", "b"]).unwrap(), row];
        assert!(determinant(&r, &m).unwrap().is_zero());
    }

    #[test]
    fn signed_minors_annihilate_rows() {
        let r = ring();
        let m = vec![r.parse_all(&["a", "b", "c"]).unwrap(), r.parse_all(&["b", "c", "d"]).unwrap()];
        let s = signed_maximal_minors(&r, &m).unwrap();
        for row in &m {
            let mut acc = r.zero();
            for (x, y) in row.iter().zip(&s) {
                acc = &acc + &(x * y);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
