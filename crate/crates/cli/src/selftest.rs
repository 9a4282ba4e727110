//! Quick end-to-end checks with known answers.

use rilab_core::catalog;
use rilab_core::experiment::{run, Check, ExperimentConfig, Status};
use rilab_core::groebner::GbBudget;
use rilab_core::ideal::Ideal;
use rilab_core::jacobian::check_jacformula;
use rilab_core::resolution::GradedResolution;
use rilab_core::{Fp, MonomialOrder, PolynomialRing, RingExt};

type Probe = fn() -> Result<bool, String>;

pub fn run_all() -> bool {
    let probes: [(&str, Probe); 5] = [
        ("resolution of the twisted cubic", twisted_cubic),
        ("jacobian formula", jacformula),
        ("ci-link pairings are perfect", ci_link),
        ("mystery-module Hilbert functions", mystery),
        ("g1-toy socle is simple", g1_toy),
    ];
    let mut ok = true;
    for (name, probe) in probes {
        let result = probe();
        let pass = matches!(result, Ok(true));
        ok &= pass;
        match result {
            Ok(true) => println!("ok    {name}"),
            Ok(false) => println!("FAIL  {name}"),
            Err(e) => println!("FAIL  {name}: {e}"),
        }
    }
    ok
}

fn twisted_cubic() -> Result<bool, String> {
    let r = PolynomialRing::new(Fp::default_prime(), &["a", "b", "c", "d"], MonomialOrder::GRevLex).map_err(|e| e.to_string())?;
    let i = Ideal::from_strings(&r, &["a*c-b^2", "a*d-b*c", "b*d-c^2"]).map_err(|e| e.to_string())?;
    let res = GradedResolution::of_quotient(&i, 4, GbBudget::default()).map_err(|e| e.to_string())?;
    Ok(res.betti().totals() == [1, 3, 2] && res.composes_to_zero() && res.is_minimal())
}

fn jacformula() -> Result<bool, String> {
    let r = PolynomialRing::new(Fp::default_prime(), &["x", "y"], MonomialOrder::GRevLex).map_err(|e| e.to_string())?;
    let g = r.parse("x+2*y").map_err(|e| e.to_string())?;
    let f = r.parse_all(&["x^3+y^3", "x*y^2-5*x^3"]).map_err(|e| e.to_string())?;
    check_jacformula(&g, &f).map_err(|e| e.to_string())
}

fn all_pass(example: &str, checks: Vec<Check>) -> Result<bool, String> {
    let text = format!("[source]\nkind = \"catalog\"\nexample = {example:?}\n");
    let mut cfg: ExperimentConfig = toml::from_str(&text).map_err(|e| e.to_string())?;
    cfg.checks = checks;
    let (report, _) = run(&cfg).map_err(|e| e.to_string())?;
    Ok(report.errors.is_empty() && report.summary.iter().all(|r| r.status == Status::Pass))
}

fn ci_link() -> Result<bool, String> {
    all_pass("ci-link", vec![Check::Duality, Check::Rees])
}

fn mystery() -> Result<bool, String> {
    let entry = catalog::build("mystery-module").map_err(|e| e.to_string())?;
    let setup = entry.setup(false).map_err(|e| e.to_string())?;
    let checks = catalog::verify_claims(&entry, Some(&setup), GbBudget::default()).map_err(|e| e.to_string())?;
    Ok(checks.iter().all(|c| c.verified != Some(false)))
}

fn g1_toy() -> Result<bool, String> {
    all_pass("g1-toy", vec![Check::Socle])
}
