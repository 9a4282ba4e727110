//! Random small ideals and brute-force linear-algebra oracles.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rilab_core::groebner::{groebner_basis, syzygy_module, GbBudget};
use rilab_core::ideal::Ideal;
use rilab_core::module::FiniteLengthGradedModule;
use rilab_core::resolution::GradedResolution;
use rilab_core::{Field, Fp, Matrix, MonomialOrder, PolySpan, Polynomial, PolynomialRing, Ring};

pub type Check = Result<(), String>;

const TOP: u32 = 4;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub fn ring() -> Ring<Fp> {
    PolynomialRing::new(Fp::new(101).unwrap(), &["x", "y", "z"], MonomialOrder::GRevLex).unwrap()
}

pub fn random_form(r: &Ring<Fp>, deg: u32, rng: &mut ChaCha8Rng) -> Polynomial<Fp> {
    loop {
        let mut terms = Vec::new();
        for m in r.monomials_of_degree(deg) {
            if rng.gen_bool(0.4) {
                terms.push((m, r.field().from_i64(rng.gen_range(-3..=3))));
            }
        }
        let p = Polynomial::from_terms(r, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_ideal(r: &Ring<Fp>, rng: &mut ChaCha8Rng) -> Ideal<Fp> {
    let n = rng.gen_range(1..=3);
    let gens = (0..n).map(|_| random_form(r, rng.gen_range(1..=3), rng)).collect();
    Ideal::new(r, gens).unwrap()
}

/// `I_e` as a span of polynomials.
pub fn span(i: &Ideal<Fp>, e: u32) -> PolySpan<Fp> {
    let r = i.ring();
    let mut s = PolySpan::new(r);
    let one = r.field().one();
    for g in i.generators() {
        let d = g.degree().unwrap();
        if d <= e {
            for m in r.monomials_of_degree(e - d) {
                s.insert(&g.mul_term(&m, &one));
            }
        }
    }
    s
}

pub fn engine_dim(i: &Ideal<Fp>, e: u32) -> usize {
    i.ring().monomials_of_degree(e).len() - i.hilbert_function(e).unwrap()
}

/// `dim {f ∈ R_e : f h ∈ I for all h}` by rank of the stacked reduction maps.
pub fn colon_dim(i: &Ideal<Fp>, hs: &[Polynomial<Fp>], e: u32) -> usize {
    let r = i.ring();
    let basis = r.monomials_of_degree(e);
    let one = r.field().one();
    let mut rows = vec![Vec::new(); basis.len()];
    for h in hs {
        let target = e + h.degree().unwrap();
        let sp = span(i, target);
        let mons = r.monomials_of_degree(target);
        for (row, b) in rows.iter_mut().zip(&basis) {
            let red = sp.reduce(&h.mul_term(b, &one));
            row.extend(mons.iter().map(|m| red.coefficient(m)));
        }
    }
    let cols = rows[0].len();
    basis.len() - Matrix::from_rows(r.field(), cols, rows).rank()
}

fn in_span(i: &Ideal<Fp>, p: &Polynomial<Fp>) -> bool {
    span(i, p.degree().unwrap()).contains(p)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Intersection, colon and saturation by `m` against the oracle in degrees
/// `0..=4`. The saturation oracle is `I : m^8`.
pub fn colon_intersection_saturation(seed: u64) -> Check {
    let r = ring();
    let mut rng = rng(seed);
    let a = random_ideal(&r, &mut rng);
    let b = random_ideal(&r, &mut rng);
    let err = |e: rilab_core::AlgebraError| e.to_string();

    let meet = a.intersect(&b).map_err(err)?;
    for e in 0..=TOP {
        let (sa, sb) = (span(&a, e), span(&b, e));
        let mut both = span(&a, e);
        for p in sb.basis() {
            both.insert(&p);
        }
        ensure!(engine_dim(&meet, e) == sa.dim() + sb.dim() - both.dim(), "seed {seed}: intersection differs in degree {e}");
    }
    for g in meet.generators().iter().filter(|g| g.degree().unwrap() <= TOP) {
        ensure!(in_span(&a, g) && in_span(&b, g), "seed {seed}: intersection generator {g} escapes");
    }

    let colon = a.colon(&b).map_err(err)?;
    for e in 0..=TOP {
        ensure!(engine_dim(&colon, e) == colon_dim(&a, b.generators(), e), "seed {seed}: colon differs in degree {e}");
    }

    let sat = a.saturate(&Ideal::maximal(&r)).map_err(err)?;
    let m8: Vec<_> = r.monomials_of_degree(8).into_iter().map(|m| Polynomial::monomial(&r, m, r.field().one())).collect();
    for e in 0..=TOP {
        ensure!(engine_dim(&sat, e) == colon_dim(&a, &m8, e), "seed {seed}: saturation differs in degree {e}");
    }
    Ok(())
}

/// Reduced bases are fixed points, including for inhomogeneous input.
pub fn groebner_idempotent(seed: u64) -> Check {
    let r = ring();
    let mut rng = rng(seed);
    let gens: Vec<_> = (0..rng.gen_range(1..=3))
        .map(|_| &random_form(&r, rng.gen_range(1..=3), &mut rng) + &random_form(&r, rng.gen_range(1..=2), &mut rng))
        .collect();
    let gb = groebner_basis(&r, &gens, GbBudget::default()).map_err(|e| e.to_string())?;
    let again = groebner_basis(&r, gb.generators(), GbBudget::default()).map_err(|e| e.to_string())?;
    ensure!(gb.generators() == again.generators(), "seed {seed}: basis changed on recomputation");
    for g in &gens {
        ensure!(gb.normal_form(g).map_err(|e| e.to_string())?.is_zero(), "seed {seed}: input does not reduce to zero");
    }
    Ok(())
}

pub fn syzygies_annihilate(seed: u64) -> Check {
    let r = ring();
    let i = random_ideal(&r, &mut rng(seed));
    let pres = syzygy_module(&r, i.generators(), &[0], GbBudget::default()).map_err(|e| e.to_string())?;
    ensure!(pres.annihilates(i.generators()), "seed {seed}: a syzygy does not annihilate the generators");
    Ok(())
}

/// `d² = 0`, minimality, and the alternating Betti sum reproduces `HF(R/I)`.
pub fn resolution_consistent(seed: u64) -> Check {
    let r = ring();
    let i = random_ideal(&r, &mut rng(seed));
    let res = GradedResolution::of_quotient(&i, 3, GbBudget::default()).map_err(|e| e.to_string())?;
    ensure!(res.is_complete(), "seed {seed}: resolution incomplete");
    ensure!(res.composes_to_zero(), "seed {seed}: d^2 != 0");
    ensure!(res.is_minimal(), "seed {seed}: not minimal");
    for e in 0..10 {
        let hf = i.hilbert_function(e as u32).map_err(|e| e.to_string())? as i128;
        ensure!(res.euler_characteristic(e) == hf, "seed {seed}: Euler characteristic differs in degree {e}");
    }
    Ok(())
}

pub fn actions_commute(seed: u64) -> Check {
    let r = ring();
    let i = random_ideal(&r, &mut rng(seed));
    let b = GbBudget::default();
    let m = Ideal::maximal(&r);
    let q = FiniteLengthGradedModule::quotient_ring(&i.sum(&m.power(4).unwrap()).unwrap(), b).map_err(|e| e.to_string())?;
    ensure!(q.actions_commute(), "seed {seed}: quotient ring actions do not commute");
    ensure!(q.matlis_dual().actions_commute(), "seed {seed}: dual actions do not commute");
    let sub = FiniteLengthGradedModule::subquotient(&i, &i.product(&m).unwrap(), b).map_err(|e| e.to_string())?;
    ensure!(sub.actions_commute(), "seed {seed}: I/mI actions do not commute");
    Ok(())
}

/// Complete intersections of three random forms are artinian Gorenstein:
/// symmetric Hilbert function, one-dimensional socle, and a Matlis dual
/// with reflected Hilbert function.
pub fn gorenstein_symmetry(seed: u64) -> Check {
    let r = ring();
    let mut rng = rng(seed);
    let k = loop {
        let gens: Vec<_> = (0..3).map(|_| random_form(&r, rng.gen_range(1..=3), &mut rng)).collect();
        let k = Ideal::new(&r, gens).unwrap();
        if k.dimension().map_err(|e| e.to_string())? == Some(0) {
            break k;
        }
    };
    let a = FiniteLengthGradedModule::quotient_ring(&k, GbBudget::default()).map_err(|e| e.to_string())?;
    ensure!(a.is_gorenstein_artinian(), "seed {seed}: socle is not simple");
    let hf = a.hilbert_function();
    ensure!(hf == hf.reflected(hf.hi()), "seed {seed}: HF {hf} not symmetric");
    let dual = a.matlis_dual();
    ensure!(dual.hilbert_function() == hf.reflected(0), "seed {seed}: dual HF is not the reflection");
    ensure!(dual.matlis_dual().hilbert_function() == hf, "seed {seed}: double dual differs");
    Ok(())
}
