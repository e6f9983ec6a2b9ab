use std::io::Write;
use std::path::Path;

use ghsimplex::profile::{all_candidates, crossings, distance_profile, PROFILE_TOLERANCE};
use ghsimplex::random::seeded;
use ghsimplex::simplex::*;
use ghsimplex::spanning::mst_spectrum;
use ghsimplex::{DistanceResult, FiniteMetricSpace};
use log::debug;
use rand::Rng;

use crate::commands::{load, CliError, CliResult};

/// Points the exhaustive oracle accepts.
const MAX_POINTS: usize = 4;

struct Tally {
    name: String,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            cases: 0,
            failure: None,
        }
    }

    fn check(&mut self, t: f64, got: f64, want: f64) {
        self.cases += 1;
        if got != want && self.failure.is_none() {
            self.failure = Some(format!("t={t}: {got} vs {want}"));
        }
    }
}

fn record(forms: &mut Vec<Tally>, m: usize, name: &str, t: f64, got: Option<DistanceResult>, want: f64) {
    let Some(got) = got else { return };
    let label = format!("m={m} {name}");
    let idx = match forms.iter().position(|f| f.name == label) {
        Some(i) => i,
        None => {
            forms.push(Tally::new(label));
            forms.len() - 1
        }
    };
    forms[idx].check(t, got.value, want);
}

fn t_values(x: &FiniteMetricSpace, m: usize, grid: usize, extra: &[f64]) -> Vec<f64> {
    let top = if x.len() > 1 { 2.0 * x.diameter() } else { 2.0 };
    let mut ts: Vec<f64> = (1..=grid).map(|i| top * i as f64 / grid as f64).collect();
    if (2..=x.len()).contains(&m) {
        ts.extend(crossings(&all_candidates(x, m).expect("2 <= m <= n")));
    }
    ts.extend_from_slice(extra);
    ts.retain(|&t| t > 0.0 && t.is_finite());
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

pub fn run(
    out: &mut impl Write,
    path: &Path,
    grid: usize,
    max_m: Option<usize>,
    samples: usize,
    seed: u64,
) -> CliResult {
    let x = load(path)?;
    let n = x.len();
    if n > MAX_POINTS {
        return Err(CliError::Usage(format!(
            "verify runs the exhaustive oracle, which needs at most {MAX_POINTS} points (got {n})"
        )));
    }
    let max_m = max_m.unwrap_or(n + 1);
    let diam = x.diameter();
    let sigma = mst_spectrum(&x).map(|s| s.values).unwrap_or_default();
    let mut rng = seeded(seed);
    let extra: Vec<f64> = (0..samples)
        .map(|_| rng.gen_range(0.0..(2.0 * diam).max(1.0)))
        .collect();

    let mut tallies = Vec::new();
    for m in 1..=max_m {
        if m * n > MAX_BRUTEFORCE_CELLS {
            writeln!(out, "SKIP m={m}: {m}x{n} cells exceed the oracle limit")?;
            continue;
        }
        let ts = t_values(&x, m, grid, &extra);
        debug!("m={m}: {} values of t", ts.len());
        let mut brute = Tally::new(format!("m={m} partitions vs exhaustive search"));
        let mut witness = Tally::new(format!("m={m} witness distortion"));
        let mut forms: Vec<Tally> = Vec::new();
        let profile = (2..=n)
            .contains(&m)
            .then(|| distance_profile(&x, m, ts[ts.len() - 1]))
            .transpose()?;
        let mut envelope = Tally::new(format!("m={m} profile envelope"));
        for &t in &ts {
            let s = SimplexSpec::new(m, t)?;
            let value = gh_to_simplex(&x, &s);
            brute.check(t, gh_bruteforce(&s.space(), &x)?.value, value.value);
            if let Some(d) = value.witness_distortion(&x, &s) {
                witness.check(t, d?, value.value);
            }
            if let Some(f) = &profile {
                envelope.cases += 1;
                if (f.eval(t) - value.value).abs() > PROFILE_TOLERANCE && envelope.failure.is_none() {
                    envelope.failure = Some(format!("t={t}: {} vs {}", f.eval(t), value.value));
                }
            }
            let v = value.value;
            if m == n && n >= 2 {
                record(&mut forms, m, "same-size formula", t, closed_form_same_n(&x, &s).ok(), v);
            }
            if m + 1 == n {
                record(&mut forms, m, "one-fewer formula", t, closed_form_minus_one(&x, &s).ok(), v);
            }
            if m >= 2 && m <= n {
                let k = m - 1;
                if exact_sum_le(diam, sigma[k - 1], t) {
                    record(&mut forms, m, "large-lambda formula", t, closed_form_large_lambda(&x, k, t).ok(), v);
                }
                record(&mut forms, m, "diameter-saturated formula", t, closed_form_diam_saturated(&x, k, t).ok(), v);
            }
            if m <= n && t <= diam / 2.0 {
                record(&mut forms, m, "small-lambda formula", t, closed_form_small_lambda(&x, m, t).ok(), v);
            }
        }
        tallies.push(brute);
        tallies.push(witness);
        if profile.is_some() {
            tallies.push(envelope);
        }
        tallies.extend(forms);
    }

    let mut failed = 0;
    for t in &tallies {
        match &t.failure {
            None => writeln!(out, "PASS {} ({} values)", t.name, t.cases)?,
            Some(why) => {
                failed += 1;
                writeln!(out, "FAIL {} ({} values): {why}", t.name, t.cases)?;
            }
        }
    }
    if failed > 0 {
        return Err(CliError::Mismatch(format!("{failed} of {} checks failed", tallies.len())));
    }
    writeln!(out, "all {} checks passed", tallies.len())?;
    Ok(())
}
