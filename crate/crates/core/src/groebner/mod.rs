//! Buchberger's algorithm for ideals and for submodules of free modules.
//!
//! Module elements are [`Polynomial`]s whose monomials carry component
//! indices; orders are position-over-term. A resumable [`GbEngine`] supports
//! degree-truncated computations for homogeneous input, which is what the
//! graded module constructions build on.

pub mod syzygy;
pub mod trie;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{add_scaled_shifted, Polynomial, Term};
use crate::ring::{Ring, RingExt};

pub use syzygy::{eliminate, syzygy_module, ModulePresentation};
pub use trie::DivisorTrie;

/// Work limits for a Gröbner basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbBudget {
    /// Largest S-pair sugar degree that may be processed.
    pub degree_cap: u32,
    /// Largest number of S-pairs that may be reduced.
    pub max_pairs: u64,
}

impl Default for GbBudget {
    fn default() -> Self {
        GbBudget { degree_cap: 24, max_pairs: 5_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct HeapKey(Monomial, MonomialOrder);

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.cmp(&self.0, &other.0)
    }
}

/// Full reduction of `input` by monic reducers found through `lookup`.
pub(crate) fn reduce_terms<'a, F: Field>(
    field: &F,
    order: MonomialOrder,
    input: &[Term<F>],
    lookup: impl Fn(&Monomial) -> Option<&'a [Term<F>]>,
) -> Vec<Term<F>>
where
    F::Elem: 'a,
{
    let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
    let mut heap: BinaryHeap<HeapKey> = BinaryHeap::with_capacity(input.len());
    for (m, c) in input {
        acc.insert(*m, c.clone());
        heap.push(HeapKey(*m, order));
    }
    let mut out = Vec::new();
    while let Some(HeapKey(m, _)) = heap.pop() {
        let c = acc.remove(&m).expect("heap and accumulator agree");
        if field.is_zero(&c) {
            continue;
        }
        match lookup(&m) {
            Some(g) => {
                let q = g[0].0.quotient_of(&m).expect("reducer divides");
                let nc = field.neg(&c);
                for (mg, cg) in &g[1..] {
                    let mm = mg.mul(&q);
                    let v = field.mul(&nc, cg);
                    match acc.get_mut(&mm) {
                        Some(e) => *e = field.add(e, &v),
                        None => {
                            acc.insert(mm, v);
                            heap.push(HeapKey(mm, order));
                        }
                    }
                }
            }
            None => out.push((m, c)),
        }
    }
    out
}

fn monic_terms<F: Field>(field: &F, mut terms: Vec<Term<F>>) -> Vec<Term<F>> {
    if let Some((_, c)) = terms.first() {
        if !field.is_one(c) {
            let inv = field.inv(c).expect("nonzero");
            for t in terms.iter_mut() {
                t.1 = field.mul(&t.1, &inv);
            }
        }
    }
    terms
}

#[inline]
fn shift_of(shifts: &[i32], m: &Monomial) -> i32 {
    shifts.get(m.comp()).copied().unwrap_or(0)
}

fn sugar_of<F: Field>(shifts: &[i32], terms: &[Term<F>]) -> i32 {
    terms.iter().map(|(m, _)| m.degree() as i32 + shift_of(shifts, m)).max().unwrap_or(0)
}

fn is_homogeneous_terms<F: Field>(shifts: &[i32], terms: &[Term<F>]) -> bool {
    let mut it = terms.iter().map(|(m, _)| m.degree() as i32 + shift_of(shifts, m));
    match it.next() {
        None => true,
        Some(d) => it.all(|e| e == d),
    }
}

#[derive(Clone, Debug)]
struct Element<F: Field> {
    terms: Vec<Term<F>>,
    lm: Monomial,
    sugar: i32,
    active: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pair {
    sugar: i32,
    i: u32,
    j: u32,
    lcm: Monomial,
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pair {
    // BinaryHeap is a max-heap: the smallest (sugar, j, i) must compare greatest.
    fn cmp(&self, other: &Self) -> Ordering {
        (other.sugar, other.j, other.i).cmp(&(self.sugar, self.j, self.i))
    }
}

/// Resumable Buchberger engine with sugar selection and Gebauer–Möller
/// pair elimination.
#[derive(Clone, Debug)]
pub struct GbEngine<F: Field> {
    ring: Ring<F>,
    shifts: Vec<i32>,
    elems: Vec<Element<F>>,
    trie: DivisorTrie,
    pairs: BinaryHeap<Pair>,
    product_criterion: bool,
    homogeneous: bool,
    budget: GbBudget,
    pairs_done: u64,
}

impl<F: Field> GbEngine<F> {
    /// `shifts[i]` is the degree of the basis vector `e_i` (missing entries
    /// count as 0). Set `ideal_mode` only when every element lives in
    /// component 0; it enables the coprime-leading-term criterion.
    pub fn new(ring: &Ring<F>, shifts: &[i32], ideal_mode: bool, budget: GbBudget) -> Self {
        GbEngine {
            ring: ring.clone(),
            shifts: shifts.to_vec(),
            elems: Vec::new(),
            trie: DivisorTrie::new(ring.num_vars()),
            pairs: BinaryHeap::new(),
            product_criterion: ideal_mode,
            homogeneous: true,
            budget,
            pairs_done: 0,
        }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn pairs_processed(&self) -> u64 {
        self.pairs_done
    }

    /// Smallest sugar among unprocessed pairs.
    pub fn pending_degree(&self) -> Option<i32> {
        self.pairs.peek().map(|p| p.sugar)
    }

    pub fn is_complete(&self) -> bool {
        self.pairs.is_empty()
    }

    fn reduce_raw(&self, terms: &[Term<F>]) -> Vec<Term<F>> {
        let elems = &self.elems;
        let trie = &self.trie;
        reduce_terms(self.ring.field(), self.ring.order(), terms, |m| {
            trie.find_divisor(m).map(|i| elems[i].terms.as_slice())
        })
    }

    /// Normal form with respect to the current (possibly partial) basis.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        Polynomial::from_raw(&self.ring, self.reduce_raw(p.terms()))
    }

    /// Adds a generator; returns false when it reduced to zero.
    pub fn add_generator(&mut self, p: &Polynomial<F>) -> Result<bool> {
        if !self.ring.same_ring(p.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
        if p.terms().iter().any(|(m, _)| m.comp() != 0) {
            self.product_criterion = false;
        }
        if !is_homogeneous_terms::<F>(&self.shifts, p.terms()) {
            self.homogeneous = false;
        }
        let sugar = sugar_of::<F>(&self.shifts, p.terms());
        let r = self.reduce_raw(p.terms());
        if r.is_empty() {
            return Ok(false);
        }
        self.insert(r, sugar);
        Ok(true)
    }

    fn insert(&mut self, terms: Vec<Term<F>>, sugar: i32) {
        let terms = monic_terms(self.ring.field(), terms);
        let lm = terms[0].0;
        let idx = self.elems.len() as u32;
        let elems = &self.elems;

        // Criterion B: drop old pairs whose lcm is a proper multiple witnessed by lm.
        self.pairs.retain(|p| {
            if p.lcm.comp() != lm.comp() || !lm.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i as usize].lm.lcm(&lm);
            let lj = elems[p.j as usize].lm.lcm(&lm);
            li == p.lcm || lj == p.lcm
        });

        let mut cands: Vec<(Monomial, u32, bool)> = Vec::new();
        for (k, e) in self.elems.iter().enumerate() {
            if !e.active || e.lm.comp() != lm.comp() {
                continue;
            }
            let coprime = self.product_criterion && e.lm.gcd_is_one(&lm);
            cands.push((e.lm.lcm(&lm), k as u32, coprime));
        }
        cands.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.1.cmp(&b.1)));

        // Criterion M: drop candidates whose lcm is a proper multiple of another candidate's.
        let mut lower = DivisorTrie::new(self.ring.num_vars());
        let mut survivors: Vec<(Monomial, u32, bool)> = Vec::new();
        let mut start = 0;
        while start < cands.len() {
            let deg = cands[start].0.degree();
            let mut end = start;
            while end < cands.len() && cands[end].0.degree() == deg {
                end += 1;
            }
            for c in &cands[start..end] {
                if !lower.has_divisor(&c.0) {
                    survivors.push(*c);
                }
            }
            for c in &cands[start..end] {
                lower.insert(&c.0, 0);
            }
            start = end;
        }

        // Criterion F and the product criterion: one pair per lcm, none if any is coprime.
        let mut groups: FxHashMap<Monomial, (u32, bool)> = FxHashMap::default();
        let mut group_order: Vec<Monomial> = Vec::new();
        for (l, k, coprime) in survivors {
            match groups.get_mut(&l) {
                Some(g) => g.1 |= coprime,
                None => {
                    groups.insert(l, (k, coprime));
                    group_order.push(l);
                }
            }
        }
        for l in group_order {
            let (k, coprime) = groups[&l];
            if coprime {
                continue;
            }
            let ek = &self.elems[k as usize];
            let s_k = ek.sugar + (l.degree() - ek.lm.degree()) as i32;
            let s_new = sugar + (l.degree() - lm.degree()) as i32;
            self.pairs.push(Pair { sugar: s_k.max(s_new), i: k, j: idx, lcm: l });
        }

        for e in self.elems.iter_mut() {
            if e.active && lm.divides(&e.lm) {
                e.active = false;
            }
        }
        self.trie.insert(&lm, idx as usize);
        self.elems.push(Element { terms, lm, sugar, active: true });
    }

    fn s_polynomial(&self, p: &Pair) -> Vec<Term<F>> {
        let field = self.ring.field();
        let gi = &self.elems[p.i as usize];
        let gj = &self.elems[p.j as usize];
        let mi = gi.lm.quotient_of(&p.lcm).expect("lcm");
        let mj = gj.lm.quotient_of(&p.lcm).expect("lcm");
        let a: Vec<Term<F>> = gi.terms[1..].iter().map(|(m, c)| (m.mul(&mi), c.clone())).collect();
        let minus_one = field.neg(&field.one());
        add_scaled_shifted(field, self.ring.order(), &a, &minus_one, &mj, &gj.terms[1..])
    }

    /// Processes pairs of sugar at most `max_degree` (all pairs when `None`).
    /// Returns true when no pairs remain.
    pub fn advance(&mut self, max_degree: Option<i32>) -> Result<bool> {
        while let Some(top) = self.pairs.peek() {
            if let Some(md) = max_degree {
                if top.sugar > md {
                    return Ok(false);
                }
            }
            if top.sugar > self.budget.degree_cap as i32 {
                return Err(AlgebraError::BudgetExceeded(format!(
                    "S-pair of degree {} exceeds degree cap {}",
                    top.sugar, self.budget.degree_cap
                )));
            }
            if self.pairs_done >= self.budget.max_pairs {
                return Err(AlgebraError::BudgetExceeded(format!(
                    "more than {} S-pairs",
                    self.budget.max_pairs
                )));
            }
            let p = self.pairs.pop().expect("peeked");
            self.pairs_done += 1;
            let s = self.s_polynomial(&p);
            if s.is_empty() {
                continue;
            }
            let r = self.reduce_raw(&s);
            if !r.is_empty() {
                self.insert(r, p.sugar);
            }
        }
        Ok(true)
    }

    /// Reduced basis from the active elements. When pairs remain the result
    /// is only valid in degrees below [`Self::pending_degree`].
    pub fn basis(&self) -> GroebnerBasis<F> {
        let field = self.ring.field();
        let order = self.ring.order();
        let mut keep: Vec<&Element<F>> = self.elems.iter().filter(|e| e.active).collect();
        keep.sort_by(|a, b| order.cmp(&a.lm, &b.lm));
        let gens: Vec<Polynomial<F>> = keep
            .iter()
            .map(|e| {
                let mut terms = vec![e.terms[0].clone()];
                terms.extend(self.reduce_raw(&e.terms[1..]));
                Polynomial::from_raw(&self.ring, monic_terms(field, terms))
            })
            .collect();
        GroebnerBasis::from_reduced(&self.ring, &self.shifts, gens, self.pending_degree())
    }
}

/// A reduced Gröbner basis (or a degree-truncated one).
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Ring<F>,
    shifts: Vec<i32>,
    gens: Vec<Polynomial<F>>,
    trie: DivisorTrie,
    /// When set, the basis is only valid in degrees strictly below this.
    valid_below: Option<i32>,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.valid_below == other.valid_below
    }
}

impl<F: Field> GroebnerBasis<F> {
    fn from_reduced(ring: &Ring<F>, shifts: &[i32], gens: Vec<Polynomial<F>>, valid_below: Option<i32>) -> Self {
        let mut trie = DivisorTrie::new(ring.num_vars());
        for (i, g) in gens.iter().enumerate() {
            trie.insert(g.leading_monomial().expect("nonzero"), i);
        }
        GroebnerBasis { ring: ring.clone(), shifts: shifts.to_vec(), gens, trie, valid_below }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.valid_below.is_none()
    }

    /// Degree bound below which a truncated basis is valid.
    pub fn valid_below(&self) -> Option<i32> {
        self.valid_below
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| *g.leading_monomial().unwrap()).collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.leading_monomial().is_some_and(|m| m.is_one() && m.comp() == 0))
    }

    /// True when some leading monomial divides `m`.
    pub fn is_leading_multiple(&self, m: &Monomial) -> bool {
        self.trie.has_divisor(m)
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !self.ring.same_ring(p.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
        let gens = &self.gens;
        let trie = &self.trie;
        let r = reduce_terms(self.ring.field(), self.ring.order(), p.terms(), |m| {
            trie.find_divisor(m).map(|i| gens[i].terms())
        });
        Ok(Polynomial::from_raw(&self.ring, r))
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Standard monomials of degree `e` in component `comp` (ring degree `e`).
    pub fn standard_monomials(&self, e: u32, comp: usize) -> Vec<Monomial> {
        self.ring
            .monomials_of_degree(e)
            .into_iter()
            .map(|m| m.with_comp(comp))
            .filter(|m| !self.trie.has_divisor(m))
            .collect()
    }

    /// Gröbner basis of the same ideal under another order.
    pub fn with_order(&self, order: MonomialOrder, budget: GbBudget) -> Result<GroebnerBasis<F>> {
        let ring = self.ring.with_order(order)?;
        let gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.to_ring(&ring)).collect::<Result<_>>()?;
        module_groebner_basis(&ring, &gens, &self.shifts, budget)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in their ring.
pub fn groebner_basis<F: Field>(ring: &Ring<F>, gens: &[Polynomial<F>], budget: GbBudget) -> Result<GroebnerBasis<F>> {
    let mut eng = GbEngine::new(ring, &[], true, budget);
    for g in gens {
        eng.add_generator(g)?;
    }
    eng.advance(None)?;
    Ok(eng.basis())
}

/// Reduced Gröbner basis of a submodule of a graded free module whose basis
/// vectors have degrees `shifts`.
pub fn module_groebner_basis<F: Field>(
    ring: &Ring<F>,
    gens: &[Polynomial<F>],
    shifts: &[i32],
    budget: GbBudget,
) -> Result<GroebnerBasis<F>> {
    let ideal_mode = gens.iter().all(|g| g.terms().iter().all(|(m, _)| m.comp() == 0));
    let mut eng = GbEngine::new(ring, shifts, ideal_mode, budget);
    for g in gens {
        eng.add_generator(g)?;
    }
    eng.advance(None)?;
    Ok(eng.basis())
}

/// Basis valid in all degrees `<= max_degree` for homogeneous input.
pub fn truncated_groebner_basis<F: Field>(
    ring: &Ring<F>,
    gens: &[Polynomial<F>],
    shifts: &[i32],
    max_degree: i32,
    budget: GbBudget,
) -> Result<GroebnerBasis<F>> {
    let ideal_mode = gens.iter().all(|g| g.terms().iter().all(|(m, _)| m.comp() == 0));
    let mut eng = GbEngine::new(ring, shifts, ideal_mode, budget);
    for g in gens {
        eng.add_generator(g)?;
    }
    if !eng.is_homogeneous() {
        return Err(AlgebraError::Precondition("truncated bases need homogeneous input".into()));
    }
    eng.advance(Some(max_degree))?;
    Ok(eng.basis())
}

/// Interreduced minimal generators of a homogeneous ideal or submodule,
/// chosen degree by degree in input order.
pub fn minimal_generators<F: Field>(
    ring: &Ring<F>,
    gens: &[Polynomial<F>],
    shifts: &[i32],
    budget: GbBudget,
) -> Result<Vec<Polynomial<F>>> {
    let mut items: Vec<(i32, usize, &Polynomial<F>)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| (g.shifted_degree(shifts).unwrap(), i, g))
        .collect();
    if items.iter().any(|(_, _, g)| !is_homogeneous_terms::<F>(shifts, g.terms())) {
        return Err(AlgebraError::Precondition("minimal generators need homogeneous input".into()));
    }
    items.sort_by_key(|(d, i, _)| (*d, *i));
    let ideal_mode = gens.iter().all(|g| g.terms().iter().all(|(m, _)| m.comp() == 0));
    let mut eng = GbEngine::new(ring, shifts, ideal_mode, budget);
    let mut chosen = Vec::new();
    let mut seen: FxHashSet<usize> = FxHashSet::default();
    for (d, i, g) in items {
        eng.advance(Some(d))?;
        if eng.add_generator(g)? && seen.insert(i) {
            chosen.push(g.clone());
        }
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};
    use crate::ring::PolynomialRing;

    fn qq(names: &[&str]) -> Ring<Rationals> {
        PolynomialRing::new(Rationals, names, MonomialOrder::GRevLex).unwrap()
    }

    #[test]
    fn textbook_basis_contains_y_cubed() {
        let r = qq(&["x", "y"]);
        let gens = r.parse_all(&["x^2", "x*y + y^2"]).unwrap();
        let gb = groebner_basis(&r, &gens, GbBudget::default()).unwrap();
        let y3 = r.parse("y^3").unwrap();
        assert!(gb.generators().contains(&y3));
        assert_eq!(gb.len(), 3);
    }

    #[test]
    fn principal_and_redundant() {
        let r = qq(&["x", "y"]);
        let gb = groebner_basis(&r, &r.parse_all(&["x"]).unwrap(), GbBudget::default()).unwrap();
        assert_eq!(gb.generators(), &r.parse_all(&["x"]).unwrap()[..]);
        let gb = groebner_basis(&r, &r.parse_all(&["x", "y", "x+y"]).unwrap(), GbBudget::default()).unwrap();
        assert_eq!(gb.generators().len(), 2);
        assert!(gb.contains(&r.parse("x").unwrap()).unwrap());
        assert!(gb.contains(&r.parse("y").unwrap()).unwrap());
    }

    #[test]
    fn normal_forms() {
        let r = qq(&["x", "y"]);
        let gb = groebner_basis(&r, &r.parse_all(&["x"]).unwrap(), GbBudget::default()).unwrap();
        assert!(gb.normal_form(&r.parse("x^2").unwrap()).unwrap().is_zero());
        assert_eq!(gb.normal_form(&r.parse("y").unwrap()).unwrap(), r.parse("y").unwrap());
        // x^2 - y^3 has leading term y^3 under grevlex, so x^2*y is already reduced.
        let gb = groebner_basis(&r, &r.parse_all(&["x^2 - y^3"]).unwrap(), GbBudget::default()).unwrap();
        assert_eq!(gb.normal_form(&r.parse("x^2*y").unwrap()).unwrap(), r.parse("x^2*y").unwrap());
        assert_eq!(gb.normal_form(&r.parse("y^4").unwrap()).unwrap(), r.parse("x^2*y").unwrap());
    }

    #[test]
    fn degree_cap_is_an_error() {
        let r = qq(&["x", "y", "z"]);
        let gens = r.parse_all(&["x^2 - y*z", "x*y - z^2"]).unwrap();
        let tiny = GbBudget { degree_cap: 2, max_pairs: 100 };
        assert!(matches!(groebner_basis(&r, &gens, tiny), Err(AlgebraError::BudgetExceeded(_))));
    }

    #[test]
    fn truncated_agrees_below_bound() {
        let r = PolynomialRing::with_vars(Fp::default_prime(), 3).unwrap();
        let gens = r.parse_all(&["x1^2 - x2*x3", "x2^2 - x1*x3", "x1*x2*x3 + x3^3"]).unwrap();
        let full = groebner_basis(&r, &gens, GbBudget::default()).unwrap();
        let part = truncated_groebner_basis(&r, &gens, &[], 4, GbBudget::default()).unwrap();
        for e in 0..=4 {
            assert_eq!(full.standard_monomials(e, 0), part.standard_monomials(e, 0));
        }
    }

    #[test]
    fn minimal_generators_drop_redundancy() {
        let r = qq(&["x", "y"]);
        let gens = r.parse_all(&["x^2", "x*y", "x^2*y", "y^2", "x^3 + x*y^2"]).unwrap();
        let mins = minimal_generators(&r, &gens, &[], GbBudget::default()).unwrap();
        assert_eq!(mins.len(), 3);
    }
}
