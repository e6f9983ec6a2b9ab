use std::fmt;
use std::io::Write;
use std::path::Path;

use ghsimplex::io::read_space;
use ghsimplex::profile::{default_domain_end, distance_profile, non_isometric_pair, profile_equal};
use ghsimplex::random::{family_parameters, seeded};
use ghsimplex::simplex::{gh_to_simplex, isometry_check, SimplexSpec};
use ghsimplex::spanning::{maximum_spanning_tree, minimum_spanning_tree};
use ghsimplex::{FiniteMetricSpace, SpanningTree};
use log::info;
use serde::Serialize;

use crate::Format;

#[derive(Debug)]
pub enum CliError {
    Core(ghsimplex::Error),
    Mismatch(String),
    Usage(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_parse() => 1,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Mismatch(s) | CliError::Usage(s) => f.write_str(s),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<ghsimplex::Error> for CliError {
    fn from(e: ghsimplex::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult = Result<(), CliError>;

pub fn load(path: &Path) -> Result<FiniteMetricSpace, CliError> {
    let x = read_space(path)?;
    info!("loaded {} points from {}", x.len(), path.display());
    Ok(x)
}

fn json_line(out: &mut impl Write, value: &impl Serialize) -> CliResult {
    let text = serde_json::to_string(value).expect("serializable output");
    writeln!(out, "{text}")?;
    Ok(())
}

pub fn validate(out: &mut impl Write, path: &Path) -> CliResult {
    let x = load(path)?;
    let eps = match x.min_positive_distance() {
        Ok(e) => e.to_string(),
        Err(_) => "none".into(),
    };
    writeln!(out, "n={} diam={} eps={eps} PASS", x.len(), x.diameter())?;
    Ok(())
}

#[derive(Serialize)]
struct SpectrumReport {
    sigma: Vec<f64>,
    #[serde(rename = "Sigma")]
    big_sigma: Vec<f64>,
    mst: SpanningTree,
    xst: SpanningTree,
}

pub fn spectrum(out: &mut impl Write, path: &Path) -> CliResult {
    let x = load(path)?;
    let mst = minimum_spanning_tree(&x)?;
    let xst = maximum_spanning_tree(&x)?;
    let report = SpectrumReport {
        sigma: mst.spectrum().values,
        big_sigma: xst.spectrum().values,
        mst,
        xst,
    };
    json_line(out, &report)
}

pub fn ghdist(out: &mut impl Write, path: &Path, m: usize, lambda: f64, halve: bool, witness: bool) -> CliResult {
    let x = load(path)?;
    let spec = SimplexSpec::new(m, lambda)?;
    let result = gh_to_simplex(&x, &spec);
    info!("method {}", result.method);
    json_line(out, &result.report_with(halve, witness))
}

pub fn profile(
    out: &mut impl Write,
    path: &Path,
    m: usize,
    domain_end: Option<f64>,
    format: Format,
) -> CliResult {
    let x = load(path)?;
    if m < 2 || m > x.len() {
        return Err(ghsimplex::Error::MOutOfRange { m, n: x.len() }.into());
    }
    let end = domain_end.unwrap_or_else(|| default_domain_end(&x));
    let f = distance_profile(&x, m, end)?;
    info!("{} pieces on (0, {end}]", f.pieces().len());
    match format {
        Format::Csv => write!(out, "{}", f.to_csv())?,
        Format::Json | Format::Text => json_line(out, &f.to_json(m))?,
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: Vec<f64>,
}

pub fn random_family(seed: u64) -> FamilyParams {
    let p = family_parameters(&mut seeded(seed));
    let f = (1..=5).map(|i| p.d + (p.e - p.d) * i as f64 / 6.0).collect();
    FamilyParams {
        a: p.a,
        b: p.b,
        c: p.c,
        d: p.d,
        e: p.e,
        f,
    }
}

#[derive(Serialize)]
struct FamilyMember {
    f: f64,
    s1: Vec<Vec<f64>>,
    s2: Vec<Vec<f64>>,
    isometric: bool,
}

#[derive(Serialize)]
struct FamilyReport {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    #[serde(rename = "T")]
    domain_end: f64,
    members: Vec<FamilyMember>,
    non_isometric: bool,
    equal_profiles: bool,
}

pub fn family(out: &mut impl Write, p: &FamilyParams, domain_end: Option<f64>, format: Format) -> CliResult {
    if p.f.is_empty() {
        return Err(CliError::Usage("at least one value of f is needed".into()));
    }
    let mut members = Vec::new();
    let mut spaces = Vec::new();
    for &f in &p.f {
        let (s1, s2) = non_isometric_pair(p.a, p.b, p.c, p.d, p.e, f)?;
        let (x1, x2) = (s1.space(), s2.space());
        members.push(FamilyMember {
            f,
            s1: s1.matrix(),
            s2: s2.matrix(),
            isometric: isometry_check(&x1, &x2).is_some(),
        });
        spaces.push(x1);
        spaces.push(x2);
    }
    let end = domain_end.unwrap_or_else(|| {
        spaces
            .iter()
            .map(default_domain_end)
            .fold(0.0, f64::max)
    });
    let mut equal = true;
    for y in &spaces[1..] {
        equal &= profile_equal(&spaces[0], y, end)?;
    }
    let non_isometric = members.iter().all(|m| !m.isometric);
    let report = FamilyReport {
        a: p.a,
        b: p.b,
        c: p.c,
        d: p.d,
        e: p.e,
        domain_end: end,
        members,
        non_isometric,
        equal_profiles: equal,
    };
    match format {
        Format::Json => json_line(out, &report)?,
        Format::Text | Format::Csv => {
            writeln!(out, "a={} b={} c={} d={} e={} T={end}", p.a, p.b, p.c, p.d, p.e)?;
            for m in &report.members {
                writeln!(out, "f={}", m.f)?;
                writeln!(out, "  S1 {:?}", m.s1)?;
                writeln!(out, "  S2 {:?}", m.s2)?;
                writeln!(out, "  isometric: {}", m.isometric)?;
            }
            writeln!(out, "non-isometric: {non_isometric}, equal profiles: {equal}")?;
        }
    }
    if non_isometric && equal {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!(
            "non-isometric: {non_isometric}, equal profiles: {equal}"
        )))
    }
}
