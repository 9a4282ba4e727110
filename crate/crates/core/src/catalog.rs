//! Deterministic constructors for the example families, with the claims
//! each entry makes and where those claims come from.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::{Field, Fp};
use crate::fitting::check_gs;
use crate::groebner::GbBudget;
use crate::ideal::Ideal;
use crate::minors::minors;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::residual::{
    build_residual_matrix_codim2, general_residual, make_setup, Codim2Residual, PolyMatrix, ResidualSetup, RETRY_CAP,
};
use crate::resolution::{depth_of_quotient, is_cohen_macaulay};
use crate::ring::{PolynomialRing, Ring, RingExt};
use crate::rng::{random_scalar, SeedStream};

pub const DEFAULT_SEED: u64 = 1;

/// `name` or `name(key=value,...)` with integer values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleId {
    pub name: String,
    pub params: BTreeMap<String, i64>,
}

impl ExampleId {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let text = text.strip_prefix("example:").unwrap_or(text);
        let (name, rest) = match text.find('(') {
            Some(pos) => {
                let inner = text[pos + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| AlgebraError::Syntax { pos: text.len(), msg: "missing ')'".into() })?;
                (&text[..pos], Some(inner))
            }
            None => (text, None),
        };
        let mut params = BTreeMap::new();
        for item in rest.into_iter().flat_map(|r| r.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| AlgebraError::Syntax { pos: 0, msg: format!("expected key=value, got {item:?}") })?;
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| AlgebraError::Syntax { pos: 0, msg: format!("parameter {k} is not an integer") })?;
            params.insert(k.trim().to_string(), v);
        }
        Ok(ExampleId { name: name.trim().to_string(), params })
    }

    fn get(&self, key: &str, default: i64) -> i64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    fn get_usize(&self, key: &str, default: usize) -> Result<usize> {
        let v = self.get(key, default as i64);
        usize::try_from(v).map_err(|_| AlgebraError::Precondition(format!("parameter {key} must be nonnegative")))
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.params.is_empty() {
            let items: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", items.join(","))?;
        }
        Ok(())
    }
}

/// A property an entry asserts; checked by [`verify_claims`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Property {
    CodimI { value: usize },
    MinGens { value: usize },
    Gs { level: usize, holds: bool },
    CohenMacaulay { value: bool },
    /// Not machine-checked.
    Reduced,
    DepthOfPower { j: u32, depth: usize },
    CodimK { value: usize },
    HilbertFunctions { i_mod_j: Vec<usize>, top: Vec<usize>, omega: Vec<usize> },
    /// The constructed matrix prints exactly as the transcription.
    MatchesPrinted { matrix: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub property: Property,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: Claim,
    /// `None` for claims that are asserted rather than checked.
    pub verified: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub enum JSource {
    /// `s` seeded general forms of degree `delta` in `I`.
    General { s: usize, delta: u32 },
    Fixed(Ideal<Fp>),
}

#[derive(Clone, Debug)]
pub struct NamedMatrix {
    pub name: String,
    pub entries: PolyMatrix<Fp>,
    /// Row-major transcription to compare against, when there is one.
    pub printed: Option<Vec<Vec<String>>>,
}

impl NamedMatrix {
    pub fn formatted(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: ExampleId,
    pub title: String,
    pub citation: String,
    pub ring: Ring<Fp>,
    pub i: Ideal<Fp>,
    pub j: Option<JSource>,
    pub seed: u64,
    /// Duality checks need `d - s` general linear sections first.
    pub needs_slice: bool,
    pub claims: Vec<Claim>,
    pub matrices: Vec<NamedMatrix>,
    /// Auxiliary ideals by name.
    pub extras: Vec<(String, Ideal<Fp>)>,
    /// `(G, F)` for principal-ideal families.
    pub principal: Option<(Polynomial<Fp>, Vec<Polynomial<Fp>>)>,
    pub codim2: Option<Codim2Residual<Fp>>,
    pub log: Vec<String>,
}

impl CatalogEntry {
    /// The residual setup, using the entry seed for general choices.
    pub fn setup(&self, with_hypotheses: bool) -> Result<ResidualSetup<Fp>> {
        match &self.j {
            Some(JSource::General { s, delta }) => general_residual(&self.i, *s, *delta, self.seed, with_hypotheses),
            Some(JSource::Fixed(j)) => make_setup(&self.i, j, with_hypotheses),
            None => Err(AlgebraError::Precondition(format!("{} has no residual intersection", self.id))),
        }
    }

    pub fn extra(&self, name: &str) -> Option<&Ideal<Fp>> {
        self.extras.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }
}

pub struct CatalogInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub title: &'static str,
    pub citation: &'static str,
}

pub const CATALOG: &[CatalogInfo] = &[
    CatalogInfo {
        name: "mystery-module",
        params: "seed",
        title: "I = (x,y)^2 in k[x,y,z], J = 3 general cubics",
        citation: "Example, §2 (the mystery module)",
    },
    CatalogInfo {
        name: "ci-link",
        params: "",
        title: "I = (x,y), J = (x^2,y^2): a t = 0 link",
        citation: "Introduction; the t = 0 case of Theorem 2.1",
    },
    CatalogInfo {
        name: "g1-toy",
        params: "",
        title: "I = (x), J = (x^2, xy) in k[x,y]",
        citation: "§6, the case g = 1",
    },
    CatalogInfo {
        name: "generic-determinantal",
        params: "rows, cols, vars, s, delta, seed",
        title: "maximal minors of a random linear matrix (default 2x4 in 5 variables, 4 general cubics)",
        citation: "Example, §2 (second part); §5",
    },
    CatalogInfo {
        name: "rational-quartic",
        params: "seed",
        title: "rational normal quartic from the Hankel matrix, 5 general cubics",
        citation: "§5, the deformation condition",
    },
    CatalogInfo {
        name: "veronese",
        params: "s, delta, seed",
        title: "Veronese surface in P^5 (2x2 minors of a generic symmetric 3x3 matrix)",
        citation: "§5, final remark",
    },
    CatalogInfo {
        name: "macaulay",
        params: "s, w",
        title: "Macaulay-matrix family: codim 2 perfect ideal with G_w but not G_{w+1}",
        citation: "§5, the condition G_{g+v}",
    },
    CatalogInfo {
        name: "semigroup",
        params: "",
        title: "k[t^10,...,t^19]: omega = I^2 without I = omega : I",
        citation: "Example, §2 (semigroup ring)",
    },
    CatalogInfo {
        name: "g1-family",
        params: "gamma, delta, d, seed",
        title: "I = (G), J = (GF) with F a random regular sequence",
        citation: "§6, Proposition on the principal case",
    },
    CatalogInfo {
        name: "jacobian-mixed",
        params: "",
        title: "F = (x^2+y^2, x+y^2), G = x: mixed degrees",
        citation: "Example, §6 (mixed degrees)",
    },
    CatalogInfo {
        name: "two-planes",
        params: "seed",
        title: "I = (x,y) ∩ (x,z), J = 3 general quartics",
        citation: "Example, §6 (two planes)",
    },
];

pub fn list() -> &'static [CatalogInfo] {
    CATALOG
}

fn info(name: &str) -> Result<&'static CatalogInfo> {
    CATALOG
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| AlgebraError::Precondition(format!("unknown example {name:?}")))
}

pub fn describe(id: &str) -> Result<String> {
    let id = ExampleId::parse(id)?;
    let c = info(&id.name)?;
    let params = if c.params.is_empty() { "none".to_string() } else { c.params.to_string() };
    Ok(format!("{}\n  {}\n  source: {}\n  parameters: {}", c.name, c.title, c.citation, params))
}

fn ring<S: AsRef<str>>(names: &[S]) -> Result<Ring<Fp>> {
    PolynomialRing::new(Fp::default_prime(), names, MonomialOrder::GRevLex)
}

fn claim(property: Property, source: &str) -> Claim {
    Claim { property, source: source.to_string() }
}

fn base(id: ExampleId, ring: Ring<Fp>, i: Ideal<Fp>, j: Option<JSource>) -> CatalogEntry {
    let c = info(&id.name).expect("catalogued");
    let seed = id.get("seed", DEFAULT_SEED as i64) as u64;
    CatalogEntry {
        id,
        title: c.title.to_string(),
        citation: c.citation.to_string(),
        ring,
        i,
        j,
        seed,
        needs_slice: false,
        claims: Vec::new(),
        matrices: Vec::new(),
        extras: Vec::new(),
        principal: None,
        codim2: None,
        log: Vec::new(),
    }
}

fn parse_matrix(ring: &Ring<Fp>, rows: &[&[&str]]) -> Result<PolyMatrix<Fp>> {
    rows.iter().map(|r| r.iter().map(|e| ring.parse(e)).collect()).collect()
}

fn printed(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
}

fn random_linear_form(ring: &Ring<Fp>, rng: &mut impl rand::Rng) -> Polynomial<Fp> {
    let mut p = ring.zero();
    for x in ring.vars() {
        p = &p + &x.scale(&random_scalar(ring.field(), rng));
    }
    p
}

fn random_form(ring: &Ring<Fp>, degree: u32, rng: &mut impl rand::Rng) -> Polynomial<Fp> {
    let terms: Vec<_> = ring.monomials_of_degree(degree).into_iter().map(|m| (m, random_scalar(ring.field(), rng))).collect();
    Polynomial::from_terms(ring, terms)
}

pub fn build(id: &str) -> Result<CatalogEntry> {
    let id = ExampleId::parse(id)?;
    match id.name.as_str() {
        "mystery-module" => mystery_module(id),
        "ci-link" => ci_link(id),
        "g1-toy" => g1_toy(id),
        "generic-determinantal" => generic_determinantal(id),
        "rational-quartic" => rational_quartic(id),
        "veronese" => veronese(id),
        "macaulay" => macaulay_family(id),
        "semigroup" => semigroup_example(id),
        "g1-family" => g1_family(id),
        "jacobian-mixed" => jacobian_mixed(id),
        "two-planes" => two_planes(id),
        other => Err(AlgebraError::Precondition(format!("unknown example {other:?}"))),
    }
}

fn mystery_module(id: ExampleId) -> Result<CatalogEntry> {
    let r = ring(&["x", "y", "z"])?;
    let i = Ideal::from_strings(&r, &["x^2", "x*y", "y^2"])?;
    let mut e = base(id, r, i, Some(JSource::General { s: 3, delta: 3 }));
    let src = "Example, §2";
    e.claims = vec![
        claim(Property::CodimI { value: 2 }, src),
        claim(Property::MinGens { value: 3 }, src),
        claim(Property::CodimK { value: 3 }, src),
        claim(Property::HilbertFunctions { i_mod_j: vec![3, 4, 3], top: vec![5, 2], omega: vec![6, 3, 1] }, src),
    ];
    Ok(e)
}

fn ci_link(id: ExampleId) -> Result<CatalogEntry> {
    let r = ring(&["x", "y"])?;
    let i = Ideal::from_strings(&r, &["x", "y"])?;
    let j = Ideal::from_strings(&r, &["x^2", "y^2"])?;
    let mut e = base(id, r, i, Some(JSource::Fixed(j)));
    e.claims = vec![claim(Property::CodimI { value: 2 }, "Introduction"), claim(Property::CodimK { value: 2 }, "Introduction")];
    Ok(e)
}

fn g1_toy(id: ExampleId) -> Result<CatalogEntry> {
    let r = ring(&["x", "y"])?;
    let i = Ideal::from_strings(&r, &["x"])?;
    let j = Ideal::from_strings(&r, &["x^2", "x*y"])?;
    let mut e = base(id, r.clone(), i, Some(JSource::Fixed(j)));
    e.principal = Some((r.parse("x")?, r.parse_all(&["x", "y"])?));
    e.claims = vec![claim(Property::CodimI { value: 1 }, "§6"), claim(Property::CodimK { value: 2 }, "§6")];
    Ok(e)
}

/// Maximal minors of a seeded random linear matrix, reseeded while the
/// ideal has less than the generic codimension.
fn generic_determinantal(id: ExampleId) -> Result<CatalogEntry> {
    let rows = id.get_usize("rows", 2)?;
    let cols = id.get_usize("cols", 4)?;
    let nv = id.get_usize("vars", 5)?;
    let s = id.get_usize("s", 4)?;
    let delta = id.get("delta", 3) as u32;
    if rows == 0 || rows > cols || nv == 0 || nv > crate::monomial::MAX_VARS {
        return Err(AlgebraError::Precondition(format!("bad shape {rows}x{cols} in {nv} variables")));
    }
    let names: Vec<String> = (0..nv).map(|k| format!("x{k}")).collect();
    let r = ring(&names)?;
    let generic = (cols - rows + 1).min(nv);
    let seed = id.get("seed", DEFAULT_SEED as i64) as u64;
    let stream = SeedStream::new(seed);
    let mut log = Vec::new();
    for attempt in 0..RETRY_CAP {
        let mut rng = stream.rng(attempt);
        let m: PolyMatrix<Fp> = (0..rows).map(|_| (0..cols).map(|_| random_linear_form(&r, &mut rng)).collect()).collect();
        let i = Ideal::new(&r, minors(&r, &m, rows)?)?;
        let codim = i.codimension()?;
        if codim < generic {
            log.push(format!("matrix {attempt}: codim {codim} < {generic}, reseeding"));
            continue;
        }
        let mut e = base(id.clone(), r.clone(), i.minimalized()?, Some(JSource::General { s, delta }));
        e.needs_slice = nv > s;
        e.matrices.push(NamedMatrix { name: "A".into(), entries: m, printed: None });
        e.claims = vec![claim(Property::CodimI { value: generic }, "generic codimension of maximal minors")];
        e.log = log;
        return Ok(e);
    }
    Err(AlgebraError::Indeterminate(format!("no generic matrix after {RETRY_CAP} draws")))
}

fn rational_quartic(id: ExampleId) -> Result<CatalogEntry> {
    let r = ring(&["x0", "x1", "x2", "x3", "x4"])?;
    let rows: &[&[&str]] = &[&["x0", "x1", "x2", "x3"], &["x1", "x2", "x3", "x4"]];
    let m = parse_matrix(&r, rows)?;
    let i = Ideal::new(&r, minors(&r, &m, 2)?)?.minimalized()?;
    let mut e = base(id, r, i, Some(JSource::General { s: 5, delta: 3 }));
    e.matrices.push(NamedMatrix { name: "H".into(), entries: m, printed: Some(printed(rows)) });
    let src = "§5";
    e.claims = vec![
        claim(Property::MatchesPrinted { matrix: "H".into() }, src),
        claim(Property::CodimI { value: 3 }, src),
        claim(Property::Gs { level: 5, holds: true }, src),
        claim(Property::CohenMacaulay { value: true }, src),
        claim(Property::Reduced, src),
        claim(Property::DepthOfPower { j: 2, depth: 0 }, src),
        claim(Property::CodimK { value: 5 }, src),
    ];
    Ok(e)
}

fn veronese(id: ExampleId) -> Result<CatalogEntry> {
    let r = ring(&["x0", "x1", "x2", "x3", "x4", "x5"])?;
    let s = id.get_usize("s", 6)?;
    let delta = id.get("delta", 3) as u32;
    let rows: &[&[&str]] = &[&["x0", "x1", "x2"], &["x1", "x3", "x4"], &["x2", "x4", "x5"]];
    let m = parse_matrix(&r, rows)?;
    let i = Ideal::new(&r, minors(&r, &m, 2)?)?.minimalized()?;
    let mut e = base(id, r, i, Some(JSource::General { s, delta }));
    e.needs_slice = s < 6;
    e.matrices.push(NamedMatrix { name: "S".into(), entries: m, printed: None });
    e.claims = vec![
        claim(Property::CodimI { value: 3 }, "Veronese surface in P^5"),
        claim(Property::MinGens { value: 6 }, "Veronese surface in P^5"),
        claim(Property::Reduced, "Veronese surface in P^5"),
    ];
    Ok(e)
}

/// Matrices of the Macaulay family; see [`macaulay_family`].
pub fn macaulay_matrices(s: usize, w: usize) -> Result<(Ring<Fp>, [PolyMatrix<Fp>; 4])> {
    if !(w + 2 <= s && w + 2 >= 4) {
        return Err(AlgebraError::Precondition(format!("need s >= w + 2 >= 4, got s = {s}, w = {w}")));
    }
    if s > crate::monomial::MAX_VARS {
        return Err(AlgebraError::Precondition(format!("s = {s} exceeds the variable limit")));
    }
    let names: Vec<String> = (1..=s).map(|k| format!("x{k}")).collect();
    let r = ring(&names)?;
    let x = |k: usize| r.var(k - 1);
    let m: PolyMatrix<Fp> = (0..s)
        .map(|i| (0..2 * s - 1).map(|j| if j >= i && j - i < s { x(j - i + 1) } else { r.zero() }).collect())
        .collect();
    // row s - w (0-based s - w - 1) loses its entry in column s, the variable x_{w+1}
    let row = s - w - 1;
    let mut n: PolyMatrix<Fp> = m.iter().map(|rw| rw[1..s].to_vec()).collect();
    n[row][s - 2] = r.zero();
    let mut mp = m.clone();
    mp[row][s - 1] = r.zero();
    mp[row][0] = x(w + 1);
    mp[row][2 * s - w - 1] = x(w + 1);
    let keep: Vec<usize> = std::iter::once(0).chain(s..2 * s - 1).collect();
    let p: PolyMatrix<Fp> = mp.iter().map(|rw| keep.iter().map(|&c| rw[c].clone()).collect()).collect();
    Ok((r, [m, n, mp, p]))
}

const PRINTED_M: &[&[&str]] = &[
    &["x1", "x2", "x3", "x4", "x5", "0", "0", "0", "0"],
    &["0", "x1", "x2", "x3", "x4", "x5", "0", "0", "0"],
    &["0", "0", "x1", "x2", "x3", "x4", "x5", "0", "0"],
    &["0", "0", "0", "x1", "x2", "x3", "x4", "x5", "0"],
    &["0", "0", "0", "0", "x1", "x2", "x3", "x4", "x5"],
];
const PRINTED_N: &[&[&str]] = &[
    &["x2", "x3", "x4", "x5"],
    &["x1", "x2", "x3", "x4"],
    &["0", "x1", "x2", "0"],
    &["0", "0", "x1", "x2"],
    &["0", "0", "0", "x1"],
];
const PRINTED_M_PRIME: &[&[&str]] = &[
    &["x1", "x2", "x3", "x4", "x5", "0", "0", "0", "0"],
    &["0", "x1", "x2", "x3", "x4", "x5", "0", "0", "0"],
    &["x3", "0", "x1", "x2", "0", "x4", "x5", "x3", "0"],
    &["0", "0", "0", "x1", "x2", "x3", "x4", "x5", "0"],
    &["0", "0", "0", "0", "x1", "x2", "x3", "x4", "x5"],
];
const PRINTED_P: &[&[&str]] = &[
    &["x1", "0", "0", "0", "0"],
    &["0", "x5", "0", "0", "0"],
    &["x3", "x4", "x5", "x3", "0"],
    &["0", "x3", "x4", "x5", "0"],
    &["0", "x2", "x3", "x4", "x5"],
];

fn macaulay_family(id: ExampleId) -> Result<CatalogEntry> {
    let s = id.get_usize("s", 5)?;
    let w = id.get_usize("w", 2)?;
    let (r, [m, n, mp, p]) = macaulay_matrices(s, w)?;
    let data = build_residual_matrix_codim2(&r, n.clone(), p.clone())?;
    let mut e = base(id, r, data.i.clone(), Some(JSource::Fixed(data.j.clone())));
    let on_print = s == 5 && w == 2;
    let pr = |rows: &[&[&str]]| on_print.then(|| printed(rows));
    e.matrices = vec![
        NamedMatrix { name: "M".into(), entries: m, printed: pr(PRINTED_M) },
        NamedMatrix { name: "N".into(), entries: n, printed: pr(PRINTED_N) },
        NamedMatrix { name: "M'".into(), entries: mp, printed: pr(PRINTED_M_PRIME) },
        NamedMatrix { name: "P".into(), entries: p, printed: pr(PRINTED_P) },
    ];
    let src = "§5";
    if on_print {
        for name in ["M", "N", "M'", "P"] {
            e.claims.push(claim(Property::MatchesPrinted { matrix: name.into() }, src));
        }
    }
    e.claims.push(claim(Property::CodimI { value: 2 }, src));
    e.claims.push(claim(Property::CohenMacaulay { value: true }, src));
    e.claims.push(claim(Property::Gs { level: w, holds: true }, src));
    e.claims.push(claim(Property::Gs { level: w + 1, holds: false }, src));
    if s <= 7 {
        e.claims.push(claim(Property::CodimK { value: s }, src));
    }
    e.codim2 = Some(data);
    Ok(e)
}

fn semigroup_example(id: ExampleId) -> Result<CatalogEntry> {
    let names: Vec<String> = (1..=10).map(|k| format!("x{k}")).collect();
    let r = ring(&names)?;
    let top: Vec<String> = (1..=10).map(|k| format!("x{k}")).collect();
    let mut bottom: Vec<String> = (2..=10).map(|k| format!("x{k}")).collect();
    bottom.push("x1^2".into());
    let rows: Vec<Vec<&str>> = vec![top.iter().map(String::as_str).collect(), bottom.iter().map(String::as_str).collect()];
    let row_refs: Vec<&[&str]> = rows.iter().map(|r| r.as_slice()).collect();
    let m = parse_matrix(&r, &row_refs)?;
    let q = Ideal::new(&r, minors(&r, &m, 2)?)?;
    let i = Ideal::from_strings(&r, &["x1", "x2", "x4", "x5"])?;
    let mut e = base(id, r.clone(), i, None);
    e.extras.push(("presentation".into(), q));
    e.extras.push(("x1x2_fourth".into(), Ideal::from_strings(&r, &["x1", "x2"])?.power(4)?));
    e.matrices.push(NamedMatrix { name: "T".into(), entries: m, printed: Some(printed(&row_refs)) });
    e.claims.push(claim(Property::MatchesPrinted { matrix: "T".into() }, "Example, §2"));
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupReport {
    pub presentation_codim: usize,
    /// `((x1,x2)^4)^2 = x1^6 I^2` modulo the presentation ideal: the two
    /// squares are isomorphic fractional ideals, `x1^6 = t^60`.
    pub squares_agree: bool,
    /// `(I^2 : I) ≠ I` modulo the presentation ideal.
    pub colon_differs: bool,
}

pub fn semigroup_check(entry: &CatalogEntry) -> Result<SemigroupReport> {
    let q = entry.extra("presentation").ok_or_else(|| AlgebraError::Precondition("not the semigroup entry".into()))?;
    let a = entry.extra("x1x2_fourth").expect("built together");
    let i = &entry.i;
    let i2 = i.power(2)?.sum(q)?;
    let a2 = a.power(2)?.sum(q)?;
    let shift = Ideal::from_strings(i.ring(), &["x1^6"])?;
    let squares_agree = shift.product(&i.power(2)?)?.sum(q)?.equals(&a2)?;
    let colon = i2.colon(&i.sum(q)?)?;
    let colon_differs = !colon.equals(&i.sum(q)?)?;
    Ok(SemigroupReport { presentation_codim: q.codimension()?, squares_agree, colon_differs })
}

/// Random `G` of degree `gamma` and a random regular sequence `F` of
/// `d` forms of degree `delta`, reseeded until `(F)` is `m`-primary.
fn g1_family(id: ExampleId) -> Result<CatalogEntry> {
    let gamma = id.get("gamma", 1) as u32;
    let delta = id.get("delta", 2) as u32;
    let d = id.get_usize("d", 2)?;
    if delta == 0 || d == 0 || d > 6 {
        return Err(AlgebraError::Precondition("need delta >= 1 and 1 <= d <= 6".into()));
    }
    let names: Vec<String> = (0..d).map(|k| format!("x{k}")).collect();
    let r = ring(&names)?;
    let seed = id.get("seed", DEFAULT_SEED as i64) as u64;
    let stream = SeedStream::new(seed);
    let mut log = Vec::new();
    for attempt in 0..RETRY_CAP {
        let mut rng = stream.rng(attempt);
        let g = random_form(&r, gamma, &mut rng);
        let f: Vec<_> = (0..d).map(|_| random_form(&r, delta, &mut rng)).collect();
        if g.is_zero() || Ideal::new(&r, f.clone())?.codimension()? != d {
            log.push(format!("draw {attempt}: F is not a regular sequence, reseeding"));
            continue;
        }
        let i = Ideal::new(&r, vec![g.clone()])?;
        let j = Ideal::new(&r, f.iter().map(|x| &g * x).collect())?;
        let mut e = base(id.clone(), r.clone(), i, Some(JSource::Fixed(j)));
        e.principal = Some((g, f));
        e.claims = vec![claim(Property::CodimI { value: if gamma == 0 { d + 1 } else { 1 } }, "§6")];
        e.log = log;
        return Ok(e);
    }
    Err(AlgebraError::Indeterminate(format!("no regular sequence after {RETRY_CAP} draws")))
}

fn jacobian_mixed(id: ExampleId) -> Result<CatalogEntry> {
    let r = ring(&["x", "y"])?;
    let g = r.parse("x")?;
    let f = r.parse_all(&["x^2+y^2", "x+y^2"])?;
    let i = Ideal::new(&r, vec![g.clone()])?;
    let mut e = base(id, r, i, None);
    e.principal = Some((g, f));
    Ok(e)
}

fn two_planes(id: ExampleId) -> Result<CatalogEntry> {
    let r = ring(&["x", "y", "z"])?;
    let p1 = Ideal::from_strings(&r, &["x", "y"])?;
    let p2 = Ideal::from_strings(&r, &["x", "z"])?;
    let i = p1.intersect(&p2)?.minimalized()?;
    let mut e = base(id, r, i, Some(JSource::General { s: 3, delta: 4 }));
    e.extras = vec![("P1".into(), p1), ("P2".into(), p2)];
    let src = "Example, §6";
    e.claims = vec![
        claim(Property::CodimI { value: 2 }, src),
        claim(Property::Reduced, src),
        claim(Property::CohenMacaulay { value: true }, src),
    ];
    Ok(e)
}

/// Checks every claim of the entry. Claims about `K` and the Hilbert
/// functions need the setup.
pub fn verify_claims(entry: &CatalogEntry, setup: Option<&ResidualSetup<Fp>>, budget: GbBudget) -> Result<Vec<ClaimCheck>> {
    let i = &entry.i;
    let mut out = Vec::new();
    for c in &entry.claims {
        let (verified, detail) = match &c.property {
            Property::CodimI { value } => {
                let v = i.codimension()?;
                (Some(v == *value), format!("codim I = {v}"))
            }
            Property::MinGens { value } => {
                let v = i.minimalized()?.num_generators();
                (Some(v == *value), format!("µ(I) = {v}"))
            }
            Property::Gs { level, holds } => {
                let rep = check_gs(i, *level)?;
                (Some(rep.holds == *holds), format!("G_{level} {}", if rep.holds { "holds" } else { "fails" }))
            }
            Property::CohenMacaulay { value } => {
                let v = is_cohen_macaulay(i, budget)?;
                (Some(v == *value), format!("R/I Cohen–Macaulay: {v}"))
            }
            Property::Reduced => (None, "asserted, not checked".into()),
            Property::DepthOfPower { j, depth } => {
                let v = depth_of_quotient(&i.power(*j)?, budget)?;
                (Some(v == *depth), format!("depth R/I^{j} = {v}"))
            }
            Property::CodimK { value } => match setup {
                Some(s) => (Some(s.codim_k == *value), format!("codim K = {}", s.codim_k)),
                None => (None, "needs the setup".into()),
            },
            Property::HilbertFunctions { i_mod_j, top, omega } => match setup {
                Some(s) => {
                    let (ok, detail) = hilbert_targets(s, i_mod_j, top, omega, budget)?;
                    (Some(ok), detail)
                }
                None => (None, "needs the setup".into()),
            },
            Property::MatchesPrinted { matrix } => {
                let m = entry.matrices.iter().find(|m| &m.name == matrix);
                match m.and_then(|m| m.printed.as_ref().map(|p| (m, p))) {
                    Some((m, p)) => (Some(&m.formatted() == p), format!("matrix {matrix}")),
                    None => (Some(false), format!("no transcription for {matrix}")),
                }
            }
        };
        out.push(ClaimCheck { claim: c.clone(), verified, detail });
    }
    Ok(out)
}

fn hilbert_targets(
    setup: &ResidualSetup<Fp>,
    i_mod_j: &[usize],
    top: &[usize],
    omega: &[usize],
    budget: GbBudget,
) -> Result<(bool, String)> {
    use crate::module::FiniteLengthGradedModule;
    let ij = FiniteLengthGradedModule::subquotient(&setup.i, &setup.j, budget)?.hilbert_function();
    let c = FiniteLengthGradedModule::subquotient(&setup.i.power(2)?, &setup.j.product(&setup.i)?, budget)?.hilbert_function();
    let w = crate::canonical::canonical_module(&setup.k, budget)?
        .module
        .ok_or_else(|| AlgebraError::Precondition("R/K is not artinian".into()))?
        .hilbert_function();
    let ok = ij.values == i_mod_j && c.values == top && w.values == omega;
    Ok((ok, format!("I/J: {ij}; I^2/IJ: {c}; ω: {w}")))
}

/// Field characteristic used by every entry.
pub fn characteristic() -> u64 {
    Fp::default_prime().characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        let id = ExampleId::parse("example:macaulay(s=5, w=2)").unwrap();
        assert_eq!(id.name, "macaulay");
        assert_eq!(id.to_string(), "macaulay(s=5,w=2)");
        assert!(ExampleId::parse("macaulay(s=5").is_err());
        assert!(build("bogus").is_err());
    }

    #[test]
    fn macaulay_matrices_match_transcription() {
        let e = build("macaulay(s=5,w=2)").unwrap();
        for m in &e.matrices {
            assert_eq!(&m.formatted(), m.printed.as_ref().unwrap(), "{}", m.name);
        }
        let (_, [_, n, _, _]) = macaulay_matrices(6, 3).unwrap();
        assert_eq!(n.len(), 6);
        assert!(macaulay_matrices(4, 3).is_err());
    }

    #[test]
    fn describe_has_citation() {
        assert!(describe("mystery-module").unwrap().contains("Example, §2"));
        assert!(list().len() >= 6);
    }

    #[test]
    fn entries_are_deterministic() {
        let a = build("generic-determinantal(seed=3)").unwrap();
        let b = build("generic-determinantal(seed=3)").unwrap();
        assert_eq!(a.i.generators(), b.i.generators());
        let s1 = a.setup(false).unwrap();
        let s2 = b.setup(false).unwrap();
        assert_eq!(s1.j.generators(), s2.j.generators());
    }
}
