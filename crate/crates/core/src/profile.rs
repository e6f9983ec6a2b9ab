//! Exact piecewise-linear profiles `t ↦ 2·d_GH(tΔ_m, X)`.
//!
//! For `2 ≤ m ≤ n` the profile is the lower envelope of the functions
//! `h_D(t) = max{diam D, t − α(D), β(D) − t}` over partitions `D` into `m`
//! blocks. Every piece has slope −1, 0 or +1, so all crossings are found in
//! closed form and no root finding is involved.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::partition::{partitions_with_stats, Partition, PartitionStats};
use crate::simplex::{isometry_check, partition_distortion};
use crate::spanning::mst_spectrum;

/// Number of uniform samples stored with a serialized profile.
pub const PROFILE_SAMPLES: usize = 257;

/// Tolerance used when comparing profile values.
pub const PROFILE_TOLERANCE: f64 = 1e-12;

/// One affine piece `slope·t + intercept` on `[from, to]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub from: f64,
    pub to: f64,
    pub slope: i8,
    pub intercept: f64,
}

impl Piece {
    /// Exact for the three allowed slopes: `t − α`, `β − t` or a constant.
    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        match self.slope {
            1 => t + self.intercept,
            -1 => self.intercept - t,
            _ => self.intercept,
        }
    }
}

/// A continuous piecewise-linear function on `(0, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFunction {
    pieces: Vec<Piece>,
}

impl PiecewiseLinearFunction {
    /// Checks contiguity, slopes in {−1, 0, 1}, continuity and nonnegativity.
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        let f = Self { pieces };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::DimensionMismatch(msg));
        if self.pieces.is_empty() {
            return bad("profile has no pieces".into());
        }
        for (k, p) in self.pieces.iter().enumerate() {
            if !matches!(p.slope, -1..=1) {
                return bad(format!("piece {k} has slope {}", p.slope));
            }
            if !(p.from < p.to) {
                return bad(format!("piece {k} is empty"));
            }
            if p.eval(p.from) < -PROFILE_TOLERANCE || p.eval(p.to) < -PROFILE_TOLERANCE {
                return bad(format!("piece {k} is negative"));
            }
        }
        for (k, w) in self.pieces.windows(2).enumerate() {
            if w[0].to != w[1].from {
                return bad(format!("gap after piece {k}"));
            }
            let (l, r) = (w[0].eval(w[0].to), w[1].eval(w[1].from));
            if (l - r).abs() > PROFILE_TOLERANCE * (1.0 + l.abs()) {
                return bad(format!("jump at t = {}", w[0].to));
            }
        }
        Ok(())
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn domain_end(&self) -> f64 {
        self.pieces.last().expect("nonempty").to
    }

    /// Interior points where the slope or intercept changes.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.pieces[..self.pieces.len() - 1].iter().map(|p| p.to).collect()
    }

    /// Value at `t`; outside the domain the end pieces are extended.
    pub fn eval(&self, t: f64) -> f64 {
        let idx = self
            .pieces
            .partition_point(|p| p.to < t)
            .min(self.pieces.len() - 1);
        self.pieces[idx].eval(t)
    }

    /// `count` evenly spaced points `T·i/count`, `i = 1..=count`.
    pub fn sample_points(&self, count: usize) -> Vec<f64> {
        let end = self.domain_end();
        (1..=count)
            .map(|i| if i == count { end } else { end * i as f64 / count as f64 })
            .collect()
    }

    pub fn samples(&self, count: usize) -> Vec<(f64, f64)> {
        self.sample_points(count)
            .into_iter()
            .map(|t| (t, self.eval(t)))
            .collect()
    }

    pub fn to_json(&self, m: usize) -> ProfileJson {
        ProfileJson {
            m,
            domain_end: self.domain_end(),
            pieces: self.pieces.clone(),
            samples: self.samples(PROFILE_SAMPLES),
        }
    }

    /// CSV with header `t,two_dgh`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,two_dgh\n");
        for (t, v) in self.samples(PROFILE_SAMPLES) {
            out.push_str(&format!("{t},{v}\n"));
        }
        out
    }
}

/// Serialized profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub m: usize,
    #[serde(rename = "T")]
    pub domain_end: f64,
    pub pieces: Vec<Piece>,
    pub samples: Vec<(f64, f64)>,
}

impl TryFrom<ProfileJson> for PiecewiseLinearFunction {
    type Error = Error;

    fn try_from(json: ProfileJson) -> Result<Self> {
        PiecewiseLinearFunction::new(json.pieces)
    }
}

/// A partition considered by the envelope, with its stats.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub partition: Partition,
    pub stats: PartitionStats,
}

impl Candidate {
    fn alpha(&self) -> f64 {
        self.stats.alpha_value()
    }

    /// `h_D(t) = max{diam D, t − α(D), β(D) − t}`.
    pub fn eval(&self, t: f64) -> f64 {
        partition_distortion(self.stats.diam, self.alpha(), self.stats.beta, t)
    }

    /// Whether `h_self(t) ≤ h_other(t)` for every `t ≥ 0`.
    ///
    /// Checked piece by piece: the rising piece needs `α ≥ α'`; the falling
    /// piece is worst at `t = 0`; the constant is covered either by `diam D'`
    /// or by the minimum `(β' − α')/2` of the other two pieces of `h_{D'}`.
    pub fn dominates(&self, other: &Candidate) -> bool {
        let (p, a, b) = (self.stats.diam, self.alpha(), self.stats.beta);
        let (q, a2, b2) = (other.stats.diam, other.alpha(), other.stats.beta);
        a >= a2 && b <= q.max(b2) && (p <= q || 2.0 * p <= b2 - a2)
    }
}

fn check_m(x: &FiniteMetricSpace, m: usize) -> Result<()> {
    if m < 2 || m > x.len() {
        return Err(Error::MOutOfRange { m, n: x.len() });
    }
    Ok(())
}

/// All partitions into `m` blocks with stats, in enumeration order.
pub fn all_candidates(x: &FiniteMetricSpace, m: usize) -> Result<Vec<Candidate>> {
    check_m(x, m)?;
    Ok(partitions_with_stats(x, m)?
        .map(|(partition, stats)| Candidate { partition, stats })
        .collect())
}

/// The partitions whose `h_D` is not dominated by another one; among
/// candidates with identical `h_D` the first in enumeration order is kept.
pub fn reduce_candidates(x: &FiniteMetricSpace, m: usize) -> Result<Vec<Candidate>> {
    Ok(minimal_candidates(all_candidates(x, m)?))
}

pub fn minimal_candidates(all: Vec<Candidate>) -> Vec<Candidate> {
    let keep: Vec<bool> = (0..all.len())
        .map(|j| {
            !all.iter().enumerate().any(|(i, c)| {
                i != j && c.dominates(&all[j]) && (!all[j].dominates(c) || i < j)
            })
        })
        .collect();
    all.into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

/// Every positive `t` where two pieces of the `h_D` may cross, sorted.
pub fn crossings(candidates: &[Candidate]) -> Vec<f64> {
    let alphas: Vec<f64> = candidates.iter().map(Candidate::alpha).collect();
    let mut cuts = Vec::new();
    for c in candidates {
        let p = c.stats.diam;
        cuts.extend(alphas.iter().map(|a| p + a));
        cuts.extend(candidates.iter().map(|d| d.stats.beta - p));
    }
    for &a in &alphas {
        cuts.extend(candidates.iter().map(|d| (a + d.stats.beta) / 2.0));
    }
    cuts.retain(|&t| t > 0.0 && t.is_finite());
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts
}

/// Exact lower envelope of `h_D` over `candidates` on `(0, end]`.
pub fn lower_envelope(candidates: &[Candidate], end: f64) -> Result<PiecewiseLinearFunction> {
    if !(end > 0.0) || !end.is_finite() {
        return Err(Error::NonpositiveDomain(end));
    }
    if candidates.is_empty() {
        return Err(Error::DimensionMismatch("no candidates".into()));
    }
    let consts: Vec<f64> = candidates.iter().map(|c| c.stats.diam).collect();
    let alphas: Vec<f64> = candidates.iter().map(Candidate::alpha).collect();
    let betas: Vec<f64> = candidates.iter().map(|c| c.stats.beta).collect();

    let mut cuts = crossings(candidates);
    cuts.retain(|&t| t < end);
    cuts.insert(0, 0.0);
    cuts.push(end);

    let mut pieces: Vec<Piece> = Vec::new();
    for w in cuts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let best = candidates
            .iter()
            .enumerate()
            .min_by(|(_, c), (_, d)| c.eval(mid).total_cmp(&d.eval(mid)))
            .map(|(i, _)| i)
            .expect("nonempty");
        let options = [
            (0i8, consts[best]),
            (1i8, -alphas[best]),
            (-1i8, betas[best]),
        ];
        let probe = |s: i8, c: f64| Piece { from: 0.0, to: 0.0, slope: s, intercept: c }.eval(mid);
        let (slope, intercept) = options
            .into_iter()
            .max_by(|x, y| probe(x.0, x.1).total_cmp(&probe(y.0, y.1)))
            .expect("three pieces");
        match pieces.last_mut() {
            Some(last) if last.slope == slope && last.intercept == intercept => last.to = w[1],
            _ => pieces.push(Piece {
                from: w[0],
                to: w[1],
                slope,
                intercept,
            }),
        }
    }
    PiecewiseLinearFunction::new(pieces)
}

/// `t ↦ 2·d_GH(tΔ_m, X)` on `(0, end]` for `2 ≤ m ≤ n`.
pub fn simplex_profile(x: &FiniteMetricSpace, m: usize, end: f64) -> Result<PiecewiseLinearFunction> {
    lower_envelope(&reduce_candidates(x, m)?, end)
}

/// Profile for any `m ≥ 1`: constant `diam X` for `m = 1` and
/// `max{t, diam X − t}` for `m > n`.
pub fn distance_profile(x: &FiniteMetricSpace, m: usize, end: f64) -> Result<PiecewiseLinearFunction> {
    if !(end > 0.0) || !end.is_finite() {
        return Err(Error::NonpositiveDomain(end));
    }
    let diam = x.diameter();
    if m == 0 {
        return Err(Error::MOutOfRange { m, n: x.len() });
    }
    if m == 1 {
        return PiecewiseLinearFunction::new(vec![Piece {
            from: 0.0,
            to: end,
            slope: 0,
            intercept: diam,
        }]);
    }
    if m > x.len() {
        let half = diam / 2.0;
        let falling = Piece {
            from: 0.0,
            to: end,
            slope: -1,
            intercept: diam,
        };
        let rising = Piece {
            from: 0.0,
            to: end,
            slope: 1,
            intercept: 0.0,
        };
        let pieces = if half <= 0.0 {
            vec![rising]
        } else if half >= end {
            vec![falling]
        } else {
            vec![Piece { to: half, ..falling }, Piece { from: half, ..rising }]
        };
        return PiecewiseLinearFunction::new(pieces);
    }
    simplex_profile(x, m, end)
}

/// `2·(diam X + σ_1)`, or 1 for a single point.
pub fn default_domain_end(x: &FiniteMetricSpace) -> f64 {
    match mst_spectrum(x) {
        Ok(s) => 2.0 * (x.diameter() + s.values[0]),
        Err(_) => 1.0,
    }
}

/// Whether `X` and `Y` are equally far from every simplex `tΔ_m`,
/// `t ∈ (0, end]`, `1 ≤ m ≤ max(#X, #Y) + 1`.
///
/// Both profiles are piecewise linear, so agreement at every breakpoint of
/// either one and at the midpoints between them settles equality.
pub fn profile_equal(x: &FiniteMetricSpace, y: &FiniteMetricSpace, end: f64) -> Result<bool> {
    let top = x.len().max(y.len()) + 1;
    for m in 1..=top {
        let fx = distance_profile(x, m, end)?;
        let fy = distance_profile(y, m, end)?;
        let mut grid: Vec<f64> = fx.breakpoints();
        grid.extend(fy.breakpoints());
        grid.push(end);
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let mut points = grid.clone();
        let mut prev = 0.0;
        for &t in &grid {
            points.push(0.5 * (prev + t));
            prev = t;
        }
        if points
            .iter()
            .any(|&t| (fx.eval(t) - fy.eval(t)).abs() > PROFILE_TOLERANCE)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Four-point space with `a = |x1x2|, b = |x1x3|, c = |x2x3|, d = |x1x4|,
/// e = |x2x4|, f = |x3x4|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourPointSpace {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl FourPointSpace {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Result<Self> {
        let s = Self { a, b, c, d, e, f };
        FiniteMetricSpace::new(s.matrix())?;
        Ok(s)
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        let Self { a, b, c, d, e, f } = *self;
        vec![
            vec![0.0, a, b, d],
            vec![a, 0.0, c, e],
            vec![b, c, 0.0, f],
            vec![d, e, f, 0.0],
        ]
    }

    pub fn space(&self) -> FiniteMetricSpace {
        FiniteMetricSpace::new(self.matrix()).expect("validated on construction")
    }
}

/// Whether `a < b < c < d < f < e`.
pub fn is_family_ordering(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> bool {
    a > 0.0 && a < b && b < c && c < d && d < f && f < e
}

/// The two spaces differing by exchanging `|x1x4|` and `|x3x4|`: the first
/// has `d` at `x1x4` and `f` at `x3x4`, the second the reverse.
pub fn non_isometric_pair(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    f: f64,
) -> Result<(FourPointSpace, FourPointSpace)> {
    if !is_family_ordering(a, b, c, d, e, f) {
        return Err(Error::OrderingViolated);
    }
    let s1 = FourPointSpace::new(a, b, c, d, e, f)?;
    let s2 = FourPointSpace::new(a, b, c, f, e, d)?;
    debug_assert!(isometry_check(&s1.space(), &s2.space()).is_none());
    Ok((s1, s2))
}
