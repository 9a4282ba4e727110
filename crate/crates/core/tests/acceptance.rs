//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria 4 and 6 are known not to hold as stated (see the README); the
//! test asserts that exactly those fail, so any other regression is caught
//! while the two verdicts stay visible.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rilab_core::canonical::canonical_module;
use rilab_core::catalog::{self, macaulay_matrices};
use rilab_core::groebner::GbBudget;
use rilab_core::hom::Existence;
use rilab_core::jacobian::{check_jacformula, g1_socle_check, jacobian_containment_check, jacobian_determinant, principal_colon_check};
use rilab_core::residual::{
    artinian_slice, duality_suite, self_duality, simple_socle_check, DualityOptions, PairingReport, PairingVerdict,
    ResidualSetup, SocleVerdict,
};
use rilab_core::resolution::depth_of_quotient;
use rilab_core::rng::random_scalar;
use rilab_core::{Fp, MonomialOrder, Polynomial, PolynomialRing, Ring};

const EXPECTED_FAILURES: [u32; 2] = [4, 6];

struct Outcome {
    pass: bool,
    detail: String,
}

type Res = Result<Outcome, String>;

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn budget() -> GbBudget {
    GbBudget::default()
}

fn verdicts(reports: &[PairingReport]) -> String {
    reports
        .iter()
        .map(|r| {
            let v = match &r.verdict {
                PairingVerdict::Perfect => "perfect".to_string(),
                PairingVerdict::HomOnly => "hom-only".to_string(),
                PairingVerdict::Fails { degree, rank_deficit } => format!("fails@{degree}/{rank_deficit}"),
                PairingVerdict::Indeterminate { .. } => "indeterminate".to_string(),
            };
            format!("u={} {v}", r.u)
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn criterion_1() -> Res {
    let entry = catalog::build("mystery-module").map_err(e2s)?;
    let setup = entry.setup(false).map_err(e2s)?;
    let (mods, reports) = duality_suite(&setup, budget(), &DualityOptions::default()).map_err(e2s)?;
    let omega = canonical_module(&setup.k, budget()).map_err(e2s)?.module.ok_or("R/K not artinian")?;
    let hf = |u: usize| mods.get(u).hilbert_function().values;
    let hfs_ok = hf(1) == [3, 4, 3] && hf(2) == [5, 2] && omega.hilbert_function().values == [6, 3, 1];
    let sd = self_duality(mods.get(1), &omega, 1, DualityOptions::default().max_hom_unknowns).map_err(e2s)?;
    // the target vanishes in the socle degree D, so the rank test cannot apply
    let top = mods.top();
    let d = setup.socle_degree();
    let inapplicable = reports.iter().all(|r| !r.rank_test.applicable) && top.dim(d) == 0;
    let u1_fails = !matches!(reports[1].verdict, PairingVerdict::Perfect | PairingVerdict::HomOnly);
    Ok(Outcome {
        pass: hfs_ok && sd.holds && inapplicable && u1_fails,
        detail: format!(
            "HF(I/J) {:?}, HF(I^2/IJ) {:?}, HF(ω) {:?}; self-dual {}; C_{d} = 0 so rank test inapplicable: {inapplicable}; {}",
            hf(1),
            hf(2),
            omega.hilbert_function().values,
            sd.holds,
            verdicts(&reports)
        ),
    })
}

fn criterion_2() -> Res {
    let entry = catalog::build("generic-determinantal(rows=2,cols=4,vars=5,seed=7)").map_err(e2s)?;
    let setup = entry.setup(false).map_err(e2s)?;
    let sliced = artinian_slice(&setup, 7, true).map_err(e2s)?;
    let (_, reports) = duality_suite(&sliced, budget(), &DualityOptions::default()).map_err(e2s)?;
    let perfect = reports.iter().all(|r| r.verdict == PairingVerdict::Perfect);
    let complementary = reports.iter().all(|r| r.complementary);
    let d = sliced.socle_degree();
    Ok(Outcome {
        pass: reports.len() == 3 && perfect && complementary && d == 8,
        detail: format!("D = {d}; complementary {complementary}; {}", verdicts(&reports)),
    })
}

fn criterion_3() -> Res {
    let entry = catalog::build("rational-quartic").map_err(e2s)?;
    let depth = depth_of_quotient(&entry.i.power(2).map_err(e2s)?, budget()).map_err(e2s)?;
    let setup = entry.setup(false).map_err(e2s)?;
    let (_, reports) = duality_suite(&setup, budget(), &DualityOptions::default()).map_err(e2s)?;
    let u1 = &reports[1];
    let fails = !matches!(u1.verdict, PairingVerdict::Perfect | PairingVerdict::HomOnly);
    Ok(Outcome {
        pass: depth == 0 && fails,
        detail: format!("depth R/I^2 = {depth}; t = {}; {}", setup.t, verdicts(&reports)),
    })
}

/// `2u` range of the duality window `|u - (t+1)/2| <= v - (t-1)/2`.
fn window(t: i64, v: i64) -> (i64, i64) {
    let two_eps = 2 * v - (t - 1);
    (t + 1 - two_eps, t + 1 + two_eps)
}

fn criterion_4() -> Res {
    let (s, w) = (5, 2);
    let entry = catalog::build(&format!("macaulay(s={s},w={w})")).map_err(e2s)?;
    let matrices_match = entry.matrices.iter().all(|m| m.printed.as_ref() == Some(&m.formatted()));
    let (_, built) = macaulay_matrices(s, w).map_err(e2s)?;
    let names: Vec<_> = entry.matrices.iter().map(|m| m.name.clone()).collect();
    let setup = entry.setup(false).map_err(e2s)?;
    let (_, reports) = duality_suite(&setup, budget(), &DualityOptions::default()).map_err(e2s)?;
    let v = w as i64 - setup.g as i64;
    let (lo2, hi2) = window(setup.t as i64, v);
    let inside = |u: usize| lo2 <= 2 * u as i64 && 2 * u as i64 <= hi2;
    let good = |r: &PairingReport| r.verdict == PairingVerdict::Perfect || r.omega_duality == Some(Existence::Found);
    let inside_passes = reports.iter().any(|r| inside(r.u) && good(r));
    let outside_fails = reports.iter().any(|r| !inside(r.u) && !good(r));
    let window_text = if lo2 > hi2 { "empty".to_string() } else { format!("{}/2 <= u <= {}/2", lo2, hi2) };
    Ok(Outcome {
        pass: matrices_match && built.len() == 4 && setup.codim_k == 5 && inside_passes && outside_fails,
        detail: format!(
            "{names:?} match printed: {matrices_match}; codim K = {}; t = {}, v = {v}, window {window_text}; {}; ω-duality {:?}",
            setup.codim_k,
            setup.t,
            verdicts(&reports),
            reports.iter().map(|r| r.omega_duality).collect::<Vec<_>>()
        ),
    })
}

fn random_form(r: &Ring<Fp>, deg: u32, rng: &mut ChaCha8Rng) -> Polynomial<Fp> {
    let terms: Vec<_> = r.monomials_of_degree(deg).into_iter().map(|m| (m, random_scalar(r.field(), rng))).collect();
    Polynomial::from_terms(r, terms)
}

fn criterion_5() -> Res {
    let names = ["x", "y", "z"];
    let mut held = 0;
    for k in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(k);
        let d = 1 + (k % 3) as usize;
        let gamma = (k / 3 % 4) as u32;
        let delta = 1 + (k / 12 % 3) as u32;
        let r = PolynomialRing::new(Fp::default_prime(), &names[..d], MonomialOrder::GRevLex).map_err(e2s)?;
        let g = random_form(&r, gamma, &mut rng);
        let f: Vec<_> = (0..d).map(|_| random_form(&r, delta, &mut rng)).collect();
        if check_jacformula(&g, &f).map_err(e2s)? {
            held += 1;
        }
    }
    Ok(Outcome { pass: held == 100, detail: format!("{held}/100 instances, d <= 3, γ <= 3, 1 <= δ <= 3") })
}

fn criterion_6() -> Res {
    let mixed = catalog::build("jacobian-mixed").map_err(e2s)?;
    let (g, f) = mixed.principal.clone().ok_or("no principal data")?;
    let colon = principal_colon_check(&g, &f).map_err(e2s)?;

    let planes = catalog::build("two-planes").map_err(e2s)?;
    let setup = planes.setup(false).map_err(e2s)?;
    let containment = jacobian_containment_check(&setup, planes.seed, budget()).map_err(e2s)?;
    let det = jacobian_determinant(setup.j.generators()).map_err(e2s)?;
    let mut in_products = Vec::new();
    for name in ["P1", "P2"] {
        let p = planes.extra(name).ok_or("missing component")?;
        in_products.push(p.product(&setup.j).map_err(e2s)?.contains(&det).map_err(e2s)?);
    }
    let b = containment.socle.verdict == SocleVerdict::GeneratesSocle && in_products.iter().all(|x| *x);
    Ok(Outcome {
        pass: colon.equals_g && b,
        detail: format!(
            "(a) det = {}, (G^2F):det = ({}), equals (x): {}; (b) socle verdict {:?}, in (x,y)J {}, in (x,z)J {}",
            colon.determinant,
            colon.colon.join(", "),
            colon.equals_g,
            containment.socle.verdict,
            in_products[0],
            in_products[1]
        ),
    })
}

fn criterion_7() -> Res {
    let mut ok = 0;
    let mut bad = Vec::new();
    for k in 0..20u64 {
        let d = 2 + k % 2;
        let gamma = 1 + k / 2 % 2;
        let delta = 1 + k / 4 % 2;
        let id = format!("g1-family(gamma={gamma},delta={delta},d={d},seed={})", k + 1);
        let entry = catalog::build(&id).map_err(e2s)?;
        let (g, f) = entry.principal.clone().ok_or("no principal data")?;
        let rep = g1_socle_check(&g, &f, k + 1, budget()).map_err(e2s)?;
        if rep.socle.verdict == SocleVerdict::GeneratesSocle {
            ok += 1;
        } else {
            bad.push(id);
        }
    }
    Ok(Outcome { pass: ok == 20, detail: format!("{ok}/20 generate the socle; failures {bad:?}") })
}

fn criterion_8() -> Res {
    let mut failures = Vec::new();
    let mut run = |name: &str, n: u64, f: fn(u64) -> common::Check| {
        for seed in 0..n {
            if let Err(e) = f(seed) {
                failures.push(format!("{name}: {e}"));
                return;
            }
        }
    };
    run("colon/intersection/saturation", 200, common::colon_intersection_saturation);
    run("GB idempotence", 40, common::groebner_idempotent);
    run("syzygy product zero", 40, common::syzygies_annihilate);
    run("resolution", 40, common::resolution_consistent);
    run("action commutation", 40, common::actions_commute);
    run("Gorenstein symmetry", 10, common::gorenstein_symmetry);
    Ok(Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "200 oracle ideals, 40 cases per structural property, 10 Gorenstein quotients".into()
        } else {
            failures.join("; ")
        },
    })
}

fn criterion_9() -> Res {
    let mut checked = Vec::new();
    let mut skipped = Vec::new();
    let mut failures = Vec::new();
    let mut setups: Vec<(String, ResidualSetup<Fp>)> = Vec::new();
    for id in [
        "mystery-module",
        "ci-link",
        "g1-toy",
        "two-planes",
        "rational-quartic",
        "macaulay(s=5,w=2)",
        "g1-family(gamma=1,delta=2,d=3,seed=1)",
        "g1-family(gamma=2,delta=1,d=2,seed=2)",
    ] {
        let entry = catalog::build(id).map_err(e2s)?;
        setups.push((id.to_string(), entry.setup(true).map_err(e2s)?));
    }
    let det = catalog::build("generic-determinantal(rows=2,cols=4,vars=5,seed=7)").map_err(e2s)?;
    let sliced = artinian_slice(&det.setup(false).map_err(e2s)?, 7, true).map_err(e2s)?;
    setups.push(("generic-determinantal, sliced".into(), sliced));
    for (id, setup) in &setups {
        if setup.s != setup.ring.num_vars() || !setup.flags.strong_hyp {
            skipped.push(id.clone());
            continue;
        }
        let rep = simple_socle_check(setup, 1, budget()).map_err(e2s)?;
        if rep.simple {
            checked.push(format!("{id} (socle {})", rep.socle));
        } else {
            failures.push(format!("{id}: socle {}", rep.socle));
        }
    }
    Ok(Outcome {
        pass: failures.is_empty() && !checked.is_empty(),
        detail: format!("simple: {}; not simple: {failures:?}; hypotheses not met: {}", checked.join(", "), skipped.join(", ")),
    })
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, Duration, fn() -> Res); 9] = [
        (1, "mystery module", Duration::from_secs(10), criterion_1),
        (2, "positive duality (sliced 2x4)", Duration::from_secs(300), criterion_2),
        (3, "rational quartic fails", Duration::from_secs(300), criterion_3),
        (4, "sharpness family s=5, w=2", Duration::from_secs(900), criterion_4),
        (5, "jacobian formula", Duration::from_secs(30), criterion_5),
        (6, "mixed degrees and two planes", Duration::from_secs(120), criterion_6),
        (7, "principal case socle", Duration::from_secs(120), criterion_7),
        (8, "engine property suites", Duration::from_secs(300), criterion_8),
        (9, "simple socle", Duration::from_secs(300), criterion_9),
    ];
    let mut failed = Vec::new();
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass && elapsed <= limit, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let time_note = if elapsed > limit { format!(" over the {}s limit", limit.as_secs()) } else { String::new() };
        // through the raw handle so the line is not swallowed by the test harness
        let line = format!(
            "criterion {n} [{name}]: {} ({:.1}s{time_note}) {detail}\n",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        std::io::stdout().write_all(line.as_bytes()).expect("stdout");
        if !pass {
            failed.push(n);
        }
    }
    assert_eq!(failed, EXPECTED_FAILURES, "unexpected set of failing criteria");
}
