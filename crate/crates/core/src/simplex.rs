//! Gromov–Hausdorff distances `2·d_GH(λΔ_m, X)` from a finite space to a
//! simplex: the general partition minimization, closed forms for special
//! regimes, and an exhaustive correspondence oracle.
//!
//! Every value returned here is the doubled distance `2·d_GH`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended::Extended;
use crate::metric::{validation_tolerance, FiniteMetricSpace};
use crate::partition::{
    min_block_diameter_with_witness, partition_stats, partitions_with_stats,
    sigma_by_partitions_with_witness, Partition,
};
use crate::spanning::{mst_spectrum, xst_spectrum};

/// Largest `m·n` cell grid the brute-force oracle accepts.
pub const MAX_BRUTEFORCE_CELLS: usize = 20;

/// The simplex `λΔ_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimplexSpec {
    pub m: usize,
    pub lambda: f64,
}

impl SimplexSpec {
    pub fn new(m: usize, lambda: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptySimplex);
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::NonpositiveLambda(lambda));
        }
        Ok(Self { m, lambda })
    }

    pub fn space(&self) -> FiniteMetricSpace {
        FiniteMetricSpace::simplex(self.m, self.lambda).expect("spec is validated")
    }
}

/// A relation between `0..m` and `0..n` projecting onto both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Correspondence {
    m: usize,
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    pub fn new(m: usize, n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup();
        let mut left = vec![false; m];
        let mut right = vec![false; n];
        for &(i, x) in &pairs {
            if i >= m {
                return Err(Error::IndexOutOfRange { index: i, n: m });
            }
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
            left[i] = true;
            right[x] = true;
        }
        if let Some(i) = left.iter().position(|c| !c) {
            return Err(Error::NotSurjective(format!("left point {i} is unmatched")));
        }
        if let Some(x) = right.iter().position(|c| !c) {
            return Err(Error::NotSurjective(format!("right point {x} is unmatched")));
        }
        Ok(Self { m, n, pairs })
    }

    /// `R_D`: simplex vertex `i` corresponds to every point of block `i`.
    pub fn from_partition(d: &Partition) -> Self {
        let pairs = (0..d.n()).map(|x| (d.block_of(x), x)).collect::<Vec<_>>();
        Self::new(d.k(), d.n(), pairs).expect("partitions induce correspondences")
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn left_len(&self) -> usize {
        self.m
    }

    pub fn right_len(&self) -> usize {
        self.n
    }
}

#[derive(Serialize, Deserialize)]
struct CorrespondenceJson {
    pairs: Vec<(usize, usize)>,
}

impl Serialize for Correspondence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CorrespondenceJson {
            pairs: self.pairs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Correspondence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = CorrespondenceJson::deserialize(d)?;
        let m = json.pairs.iter().map(|p| p.0 + 1).max().unwrap_or(0);
        let n = json.pairs.iter().map(|p| p.1 + 1).max().unwrap_or(0);
        Correspondence::new(m, n, json.pairs).map_err(serde::de::Error::custom)
    }
}

/// `dis R = max ||a a'| − |b b'||` over pairs of pairs in `R ⊂ A × B`.
pub fn distortion(r: &Correspondence, a: &FiniteMetricSpace, b: &FiniteMetricSpace) -> Result<f64> {
    if r.m != a.len() || r.n != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "correspondence is {}x{}, spaces have {} and {} points",
            r.m,
            r.n,
            a.len(),
            b.len()
        )));
    }
    let mut dis: f64 = 0.0;
    for (p, &(i, x)) in r.pairs.iter().enumerate() {
        for &(j, y) in &r.pairs[p + 1..] {
            dis = dis.max((a.d(i, j) - b.d(x, y)).abs());
        }
    }
    Ok(dis)
}

/// Which route produced a distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// `m = 1`: the value is `diam X`.
    SinglePoint,
    /// `m > n`: `max{λ, diam X − λ}`.
    MorePoints,
    /// Minimum of `max{diam D, λ − α(D), β(D) − λ}` over partitions.
    PartitionMinimum,
    /// Exhaustive search over correspondences.
    Bruteforce,
    /// `m = n`: `max{λ − σ_{n−1}, Σ_{n−1} − λ}`.
    SameSize(SameSizeBranch),
    /// `m = n − 1`: `max{σ_{n−1}, λ − σ_{n−2}, Σ_{n−1} − λ}`.
    OneFewer,
    /// `λ ≥ diam X + σ_k`: `λ − σ_k`.
    LargeLambda,
    /// `λ ≤ diam X / 2`: `max{d_m(X), diam X − λ}`.
    SmallLambda,
    /// `d_{k+1}(X) = diam X` and `λ < diam X + σ_k`: `diam X`.
    DiameterSaturated,
}

/// The active term of the equal-size formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SameSizeBranch {
    /// `σ_{n−1} + Σ_{n−1} ≤ 2λ`: value `λ − σ_{n−1}`.
    LambdaMinusSigma,
    /// Otherwise: value `Σ_{n−1} − λ`.
    SigmaMinusLambda,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::SinglePoint => "single-point",
            Method::MorePoints => "more-points",
            Method::PartitionMinimum => "partition-minimum",
            Method::Bruteforce => "bruteforce",
            Method::SameSize(SameSizeBranch::LambdaMinusSigma) => "same-size:lambda-minus-sigma",
            Method::SameSize(SameSizeBranch::SigmaMinusLambda) => "same-size:sigma-minus-lambda",
            Method::OneFewer => "one-fewer",
            Method::LargeLambda => "large-lambda",
            Method::SmallLambda => "small-lambda",
            Method::DiameterSaturated => "diameter-saturated",
        };
        f.write_str(s)
    }
}

/// Evidence attached to a distance: either a partition `D` (standing for
/// `R_D`) or an explicit correspondence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Partition(Partition),
    Correspondence(Correspondence),
}

impl Witness {
    pub fn correspondence(&self) -> Correspondence {
        match self {
            Witness::Partition(p) => Correspondence::from_partition(p),
            Witness::Correspondence(c) => c.clone(),
        }
    }
}

/// A doubled Gromov–Hausdorff distance with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceResult {
    /// `2·d_GH`.
    pub value: f64,
    pub witness: Option<Witness>,
    pub method: Method,
}

/// JSON form of a [`DistanceResult`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub two_dgh: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dgh: Option<f64>,
    pub method: String,
    pub witness: Option<Witness>,
}

impl DistanceResult {
    pub fn dgh(&self) -> f64 {
        self.value / 2.0
    }

    /// Full report: both distances, method and witness.
    pub fn report(&self) -> DistanceReport {
        self.report_with(true, true)
    }

    pub fn report_with(&self, halve: bool, with_witness: bool) -> DistanceReport {
        DistanceReport {
            two_dgh: self.value,
            dgh: halve.then(|| self.dgh()),
            method: self.method.to_string(),
            witness: if with_witness {
                self.witness.clone()
            } else {
                None
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.report()).expect("report serialization")
    }

    /// Distortion of the witness against `λΔ_m` and `x`, if there is one.
    pub fn witness_distortion(&self, x: &FiniteMetricSpace, s: &SimplexSpec) -> Option<Result<f64>> {
        self.witness
            .as_ref()
            .map(|w| distortion(&w.correspondence(), &s.space(), x))
    }
}

/// Exact `2·d_GH(A, B)` as the least distortion over every correspondence.
///
/// Depth-first search over the `m×n` cell grid; distortion only grows as
/// pairs are added, so branches reaching the best value so far are cut.
pub fn gh_bruteforce(a: &FiniteMetricSpace, b: &FiniteMetricSpace) -> Result<DistanceResult> {
    let (m, n) = (a.len(), b.len());
    let cells = m * n;
    if cells > MAX_BRUTEFORCE_CELLS {
        return Err(Error::TooLarge {
            cells,
            limit: MAX_BRUTEFORCE_CELLS,
        });
    }
    let mut search = Search {
        a,
        b,
        m,
        n,
        chosen: Vec::with_capacity(cells),
        row_cover: vec![0; m],
        col_cover: vec![0; n],
        best: f64::INFINITY,
        best_pairs: Vec::new(),
    };
    search.run(0, 0.0);
    let witness = Correspondence::new(m, n, search.best_pairs.iter().copied())?;
    Ok(DistanceResult {
        value: search.best,
        witness: Some(Witness::Correspondence(witness)),
        method: Method::Bruteforce,
    })
}

struct Search<'a> {
    a: &'a FiniteMetricSpace,
    b: &'a FiniteMetricSpace,
    m: usize,
    n: usize,
    chosen: Vec<(usize, usize)>,
    row_cover: Vec<usize>,
    col_cover: Vec<usize>,
    best: f64,
    best_pairs: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn run(&mut self, cell: usize, current: f64) {
        if cell == self.m * self.n {
            if current < self.best && self.col_cover.iter().all(|&c| c > 0) {
                self.best = current;
                self.best_pairs = self.chosen.clone();
            }
            return;
        }
        let (i, x) = (cell / self.n, cell % self.n);

        // Include (i, x).
        let mut grown = current;
        for &(j, y) in &self.chosen {
            grown = grown.max((self.a.d(i, j) - self.b.d(x, y)).abs());
            if grown >= self.best {
                break;
            }
        }
        if grown < self.best {
            self.chosen.push((i, x));
            self.row_cover[i] += 1;
            self.col_cover[x] += 1;
            self.run(cell + 1, grown);
            self.chosen.pop();
            self.row_cover[i] -= 1;
            self.col_cover[x] -= 1;
        }

        // Exclude (i, x), unless that leaves row i or column x uncovered for good.
        let row_lost = x == self.n - 1 && self.row_cover[i] == 0;
        let col_lost = i == self.m - 1 && self.col_cover[x] == 0;
        if !row_lost && !col_lost {
            self.run(cell + 1, current);
        }
    }
}

/// `dis R_D = max{diam D, λ − α(D), β(D) − λ}`.
pub fn dis_rd(x: &FiniteMetricSpace, s: &SimplexSpec, d: &Partition) -> Result<f64> {
    if d.k() != s.m || s.m < 2 {
        return Err(Error::BlockCountMismatch {
            blocks: d.k(),
            m: s.m,
        });
    }
    let st = partition_stats(x, d)?;
    Ok(partition_distortion(st.diam, st.alpha_value(), st.beta, s.lambda))
}

#[inline]
pub(crate) fn partition_distortion(diam: f64, alpha: f64, beta: f64, lambda: f64) -> f64 {
    diam.max(lambda - alpha).max(beta - lambda)
}

/// `2·d_GH(λΔ_m, X)`.
///
/// `m = 1` gives `diam X`; `m > n` gives `max{λ, diam X − λ}`; otherwise the
/// minimum of `dis R_D` over all partitions into `m` blocks, with the first
/// minimizer in enumeration order as witness.
pub fn gh_to_simplex(x: &FiniteMetricSpace, s: &SimplexSpec) -> DistanceResult {
    let n = x.len();
    let diam = x.diameter();
    if s.m == 1 {
        return DistanceResult {
            value: diam,
            witness: Some(Witness::Correspondence(
                Correspondence::new(1, n, (0..n).map(|p| (0, p))).expect("onto"),
            )),
            method: Method::SinglePoint,
        };
    }
    if s.m > n {
        // Vertices 0..n−1 go to points 0..n−1, the rest all to the last point.
        let pairs = (0..s.m).map(|i| (i, i.min(n - 1)));
        return DistanceResult {
            value: s.lambda.max(diam - s.lambda),
            witness: Some(Witness::Correspondence(
                Correspondence::new(s.m, n, pairs).expect("onto"),
            )),
            method: Method::MorePoints,
        };
    }
    let mut best: Option<(f64, Partition)> = None;
    for (p, st) in partitions_with_stats(x, s.m).expect("2 <= m <= n") {
        let h = partition_distortion(st.diam, st.alpha_value(), st.beta, s.lambda);
        if best.as_ref().is_none_or(|(v, _)| h < *v) {
            best = Some((h, p));
        }
    }
    let (value, p) = best.expect("at least one partition");
    DistanceResult {
        value,
        witness: Some(Witness::Partition(p)),
        method: Method::PartitionMinimum,
    }
}

/// Closed form for `m = n ≥ 2`, reporting which term is active.
pub fn closed_form_same_n(x: &FiniteMetricSpace, s: &SimplexSpec) -> Result<DistanceResult> {
    let n = x.len();
    if n < 2 || s.m != n {
        return Err(Error::DimensionMismatch(format!(
            "needs m = n >= 2, got m = {}, n = {n}",
            s.m
        )));
    }
    let low = mst_spectrum(x)?.values[n - 2];
    let high = xst_spectrum(x)?.values[n - 2];
    let branch = if exact_sum_le(low, high, 2.0 * s.lambda) {
        SameSizeBranch::LambdaMinusSigma
    } else {
        SameSizeBranch::SigmaMinusLambda
    };
    Ok(DistanceResult {
        value: (s.lambda - low).max(high - s.lambda),
        witness: Some(Witness::Partition(Partition::singletons(n))),
        method: Method::SameSize(branch),
    })
}

/// Closed form for `m = n − 1`; the witness merges a closest pair of points.
pub fn closed_form_minus_one(x: &FiniteMetricSpace, s: &SimplexSpec) -> Result<DistanceResult> {
    let n = x.len();
    if n < 2 || s.m + 1 != n {
        return Err(Error::DimensionMismatch(format!(
            "needs m = n - 1 >= 1, got m = {}, n = {n}",
            s.m
        )));
    }
    let sigma = mst_spectrum(x)?.values;
    let top = *xst_spectrum(x)?.values.last().expect("n >= 2");
    let smallest = sigma[n - 2];
    // With n = 2 the only partition is one block and the middle term is absent.
    let middle = if n >= 3 {
        s.lambda - sigma[n - 3]
    } else {
        f64::NEG_INFINITY
    };
    let value = smallest.max(middle).max(top - s.lambda);
    let (ci, cj, _) = x
        .pairs()
        .find(|&(_, _, v)| v == smallest)
        .expect("the smallest distance is attained");
    let labels: Vec<usize> = (0..n).map(|p| if p == cj { ci } else { p }).collect();
    Ok(DistanceResult {
        value,
        witness: Some(Witness::Partition(Partition::from_labels(&labels))),
        method: Method::OneFewer,
    })
}

/// Whether `a + b ≤ c` holds for the exact real sum.
///
/// `a + b = s + err` exactly (two-sum), and `|err|` is below half the gap
/// from `s` to its float neighbours, so comparing `s` first settles it.
pub fn exact_sum_le(a: f64, b: f64, c: f64) -> bool {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    s < c || (s == c && err <= 0.0)
}

fn check_k(x: &FiniteMetricSpace, k: usize) -> Result<()> {
    if k == 0 || k + 1 > x.len() {
        return Err(Error::DimensionMismatch(format!(
            "needs 1 <= k and k + 1 <= n, got k = {k}, n = {}",
            x.len()
        )));
    }
    Ok(())
}

/// `2·d_GH(λΔ_{k+1}, X) = λ − σ_k` when `λ ≥ diam X + σ_k`.
pub fn closed_form_large_lambda(x: &FiniteMetricSpace, k: usize, lambda: f64) -> Result<DistanceResult> {
    check_k(x, k)?;
    SimplexSpec::new(k + 1, lambda)?;
    let (sigma, witness) = sigma_by_partitions_with_witness(x, k)?;
    if !exact_sum_le(x.diameter(), sigma, lambda) {
        let bound = x.diameter() + sigma;
        return Err(Error::LambdaTooSmall { lambda, bound });
    }
    Ok(DistanceResult {
        value: lambda - sigma,
        witness: witness.map(Witness::Partition),
        method: Method::LargeLambda,
    })
}

/// `2·d_GH(λΔ_m, X) = max{d_m(X), diam X − λ}` when `0 < λ ≤ diam X / 2`.
pub fn closed_form_small_lambda(x: &FiniteMetricSpace, m: usize, lambda: f64) -> Result<DistanceResult> {
    if m == 0 || m > x.len() {
        return Err(Error::DimensionMismatch(format!(
            "needs 1 <= m <= n, got m = {m}, n = {}",
            x.len()
        )));
    }
    SimplexSpec::new(m, lambda)?;
    let diam = x.diameter();
    let bound = diam / 2.0;
    if lambda > bound {
        return Err(Error::LambdaTooLarge { lambda, bound });
    }
    let (dm, witness) = min_block_diameter_with_witness(x, m);
    let dm = dm.finite().expect("m <= n");
    Ok(DistanceResult {
        value: dm.max(diam - lambda),
        witness: witness.map(Witness::Partition),
        method: Method::SmallLambda,
    })
}

/// `2·d_GH(λΔ_{k+1}, X) = diam X` when `d_{k+1}(X) = diam X` and
/// `λ < diam X + σ_k`.
pub fn closed_form_diam_saturated(
    x: &FiniteMetricSpace,
    k: usize,
    lambda: f64,
) -> Result<DistanceResult> {
    check_k(x, k)?;
    SimplexSpec::new(k + 1, lambda)?;
    let diam = x.diameter();
    let (sigma, witness) = sigma_by_partitions_with_witness(x, k)?;
    if exact_sum_le(diam, sigma, lambda) {
        return Err(Error::PreconditionFailed(format!(
            "lambda = {lambda} is not below diam + sigma_{k} = {}",
            diam + sigma
        )));
    }
    let dm = min_block_diameter_with_witness(x, k + 1).0;
    if dm != Extended::Finite(diam) {
        return Err(Error::PreconditionFailed(format!(
            "d_{}(X) = {dm} differs from diam X = {diam}",
            k + 1
        )));
    }
    Ok(DistanceResult {
        value: diam,
        witness: witness.map(Witness::Partition),
        method: Method::DiameterSaturated,
    })
}

/// A permutation `p` with `|a_i a_j| = |b_{p(i)} b_{p(j)}|` for all `i, j`
/// (up to the validation tolerance), if one exists.
pub fn isometry_check(a: &FiniteMetricSpace, b: &FiniteMetricSpace) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let tol = validation_tolerance(a.diameter().max(b.diameter()));
    let mut da: Vec<f64> = a.pairs().map(|p| p.2).collect();
    let mut db: Vec<f64> = b.pairs().map(|p| p.2).collect();
    da.sort_by(f64::total_cmp);
    db.sort_by(f64::total_cmp);
    if da.iter().zip(&db).any(|(u, v)| (u - v).abs() > tol) {
        return None;
    }

    fn extend(
        a: &FiniteMetricSpace,
        b: &FiniteMetricSpace,
        tol: f64,
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = perm.len();
        if i == a.len() {
            return true;
        }
        for y in 0..b.len() {
            if used[y] {
                continue;
            }
            let fits = perm
                .iter()
                .enumerate()
                .all(|(j, &py)| (a.d(i, j) - b.d(y, py)).abs() <= tol);
            if fits {
                used[y] = true;
                perm.push(y);
                if extend(a, b, tol, perm, used) {
                    return true;
                }
                perm.pop();
                used[y] = false;
            }
        }
        false
    }

    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(a, b, tol, &mut perm, &mut used).then_some(perm)
}

#[cfg(test)]
mod tests {
    #[test]
    fn exact_sums() {
        use super::exact_sum_le;
        assert!(exact_sum_le(1.0, 2.0, 3.0));
        assert!(!exact_sum_le(1.0, 2.0, 2.5));
        // 0.1 + 0.2 rounds to a float above 0.3 but the real sum is below it.
        let s = 0.1 + 0.2;
        assert!(exact_sum_le(0.1, 0.2, s));
        assert!(!exact_sum_le(0.1, 0.2, 0.3));
        assert!(exact_sum_le(1e16, 1.0, 1e16 + 2.0));
        assert!(!exact_sum_le(1e16, 1.0, 1e16));
    }

    use super::*;
    use crate::partition::enumerate_partitions;

    fn four(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> FiniteMetricSpace {
        FiniteMetricSpace::new(vec![
            vec![0.0, a, b, d],
            vec![a, 0.0, c, e],
            vec![b, c, 0.0, f],
            vec![d, e, f, 0.0],
        ])
        .unwrap()
    }

    fn first() -> FiniteMetricSpace {
        four(3.0, 4.0, 5.0, 6.5, 3.5, 6.0)
    }

    fn second() -> FiniteMetricSpace {
        four(2.0, 3.0, 4.0, 5.0, 6.0, 7.0)
    }

    fn spec(m: usize, l: f64) -> SimplexSpec {
        SimplexSpec::new(m, l).unwrap()
    }

    fn part(blocks: &[&[usize]], n: usize) -> Partition {
        Partition::new(blocks.iter().map(|b| b.to_vec()).collect(), n).unwrap()
    }

    #[test]
    fn correspondence_validation() {
        assert!(Correspondence::new(2, 2, [(0, 0), (1, 1)]).is_ok());
        assert!(matches!(
            Correspondence::new(2, 2, [(0, 0), (0, 1)]),
            Err(Error::NotSurjective(_))
        ));
        assert!(matches!(
            Correspondence::new(2, 2, [(0, 0), (1, 0)]),
            Err(Error::NotSurjective(_))
        ));
        assert!(matches!(
            Correspondence::new(1, 1, [(0, 3)]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn identity_has_zero_distortion() {
        let x = first();
        let id = Correspondence::new(4, 4, (0..4).map(|i| (i, i))).unwrap();
        assert_eq!(distortion(&id, &x, &x).unwrap(), 0.0);
    }

    #[test]
    fn rd_distortion_matches_three_term_formula() {
        let x = first();
        let d = part(&[&[0], &[1, 2, 3]], 4);
        let r = Correspondence::from_partition(&d);
        let s = spec(2, 5.0);
        assert_eq!(distortion(&r, &s.space(), &x).unwrap(), 6.0);
        assert_eq!(dis_rd(&x, &s, &d).unwrap(), 6.0);
        let d = part(&[&[0, 1], &[2, 3]], 4);
        assert_eq!(dis_rd(&x, &spec(2, 7.0), &d).unwrap(), 6.0);
        let d = part(&[&[0, 1, 2], &[3]], 4);
        assert_eq!(dis_rd(&second(), &spec(2, 6.0), &d).unwrap(), 4.0);
        assert!(matches!(
            dis_rd(&x, &spec(3, 1.0), &d),
            Err(Error::BlockCountMismatch { blocks: 2, m: 3 })
        ));
    }

    #[test]
    fn singleton_partition_gives_same_size_formula() {
        let x = first();
        for &l in &[1.0, 4.75, 9.0] {
            let v = dis_rd(&x, &spec(4, l), &Partition::singletons(4)).unwrap();
            assert_eq!(v, (l - 3.0f64).max(6.5 - l));
        }
    }

    #[test]
    fn distortion_with_too_many_points_is_at_least_lambda() {
        let x = four(3.0, 4.0, 5.0, 6.5, 3.5, 6.0);
        let s = FiniteMetricSpace::simplex(5, 2.0).unwrap();
        // A few correspondences from a 5-point simplex onto 4 points.
        for extra in 0..4 {
            let r = Correspondence::new(5, 4, (0..4).map(|i| (i, i)).chain([(4, extra)])).unwrap();
            assert!(distortion(&r, &s, &x).unwrap() >= 2.0);
        }
    }

    #[test]
    fn bruteforce_basics() {
        let x = second();
        assert_eq!(gh_bruteforce(&x, &x).unwrap().value, 0.0);
        assert_eq!(gh_bruteforce(&FiniteMetricSpace::point(), &x).unwrap().value, 7.0);
        let r = gh_bruteforce(&spec(2, 5.5).space(), &x).unwrap();
        assert_eq!(r.value, 4.0);
        let w = r.witness.unwrap().correspondence();
        assert_eq!(distortion(&w, &spec(2, 5.5).space(), &x).unwrap(), 4.0);
        let big = FiniteMetricSpace::simplex(5, 1.0).unwrap();
        assert!(matches!(gh_bruteforce(&big, &big), Err(Error::TooLarge { cells: 25, .. })));
    }

    #[test]
    fn dispatch_branches() {
        let x1 = first();
        let r = gh_to_simplex(&x1, &spec(1, 3.0));
        assert_eq!((r.value, r.method), (6.5, Method::SinglePoint));
        let r = gh_to_simplex(&x1, &spec(5, 2.0));
        assert_eq!((r.value, r.method), (4.5, Method::MorePoints));
        let r = gh_to_simplex(&x1, &spec(7, 1.0));
        assert_eq!(r.value, 5.5);
        let x2 = second();
        for t in [3.0, 4.0, 5.5, 8.0, 9.0] {
            let r = gh_to_simplex(&x2, &spec(2, t));
            assert_eq!(r.value, 4.0, "t = {t}");
            assert_eq!(r.method, Method::PartitionMinimum);
        }
    }

    #[test]
    fn witnesses_achieve_their_values() {
        let x = first();
        for m in 1..=6 {
            for &l in &[0.5, 2.0, 3.25, 6.0, 11.0] {
                let s = spec(m, l);
                let r = gh_to_simplex(&x, &s);
                assert_eq!(r.witness_distortion(&x, &s).unwrap().unwrap(), r.value);
            }
        }
    }

    #[test]
    fn same_size_closed_form() {
        let d4 = FiniteMetricSpace::simplex(4, 1.0).unwrap();
        for &l in &[0.5, 1.0, 2.5] {
            let r = closed_form_same_n(&d4, &spec(4, l)).unwrap();
            assert_eq!(r.value, (l - 1.0f64).max(1.0 - l));
        }
        let x = first();
        assert_eq!(closed_form_same_n(&x, &spec(4, 10.0)).unwrap().value, 7.0);
        // σ_3 + Σ_3 = 9.5
        let r = closed_form_same_n(&x, &spec(4, 4.75)).unwrap();
        assert_eq!(r.method, Method::SameSize(SameSizeBranch::LambdaMinusSigma));
        let r = closed_form_same_n(&x, &spec(4, 4.7)).unwrap();
        assert_eq!(r.method, Method::SameSize(SameSizeBranch::SigmaMinusLambda));
        assert!(closed_form_same_n(&x, &spec(3, 1.0)).is_err());
    }

    #[test]
    fn minus_one_closed_form() {
        let x1 = first();
        let r = closed_form_minus_one(&x1, &spec(3, 4.0)).unwrap();
        assert_eq!(r.value, 3.0);
        assert_eq!(r.witness, Some(Witness::Partition(part(&[&[0, 1], &[2], &[3]], 4))));
        assert_eq!(closed_form_minus_one(&second(), &spec(3, 9.0)).unwrap().value, 6.0);
        for &l in &[0.5, 3.0, 4.0, 7.5, 20.0] {
            let s = spec(3, l);
            let r = closed_form_minus_one(&x1, &s).unwrap();
            assert_eq!(r.value, gh_to_simplex(&x1, &s).value);
            assert_eq!(r.witness_distortion(&x1, &s).unwrap().unwrap(), r.value);
        }
        let pair = FiniteMetricSpace::new(vec![vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
        assert_eq!(closed_form_minus_one(&pair, &spec(1, 5.0)).unwrap().value, 2.0);
        assert!(closed_form_minus_one(&x1, &spec(4, 1.0)).is_err());
    }

    #[test]
    fn large_lambda_closed_form() {
        let x1 = first();
        assert_eq!(closed_form_large_lambda(&x1, 1, 11.0).unwrap().value, 7.0);
        assert!(matches!(
            closed_form_large_lambda(&x1, 1, 10.0),
            Err(Error::LambdaTooSmall { .. })
        ));
        let d2 = FiniteMetricSpace::simplex(2, 1.0).unwrap();
        assert_eq!(closed_form_large_lambda(&d2, 1, 3.0).unwrap().value, 2.0);
        assert!(closed_form_large_lambda(&d2, 2, 3.0).is_err());
    }

    #[test]
    fn small_lambda_closed_form() {
        let x2 = second();
        assert_eq!(closed_form_small_lambda(&x2, 2, 3.0).unwrap().value, 4.0);
        let x1 = first();
        let d2 = min_block_diameter_with_witness(&x1, 2).0.unwrap();
        assert_eq!(closed_form_small_lambda(&x1, 2, 2.0).unwrap().value, d2.max(4.5));
        assert_eq!(closed_form_small_lambda(&x1, 4, 3.25).unwrap().value, 3.25);
        assert!(matches!(
            closed_form_small_lambda(&x1, 2, 3.5),
            Err(Error::LambdaTooLarge { .. })
        ));
    }

    #[test]
    fn diam_saturated_closed_form() {
        let line = FiniteMetricSpace::new(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 1.0],
            vec![2.0, 1.0, 0.0],
        ])
        .unwrap();
        assert!(matches!(
            closed_form_diam_saturated(&line, 2, 1.0),
            Err(Error::PreconditionFailed(_))
        ));
        // Every 2-block partition of a 4-point simplex has a block of full diameter.
        let x = four(2.0, 2.0, 2.0, 2.0, 2.0, 2.0);
        let r = closed_form_diam_saturated(&x, 1, 3.0).unwrap();
        assert_eq!(r.value, 2.0);
        assert_eq!(gh_to_simplex(&x, &spec(2, 3.0)).value, 2.0);
    }

    #[test]
    fn isometries() {
        let x = first();
        assert_eq!(isometry_check(&x, &x), Some(vec![0, 1, 2, 3]));
        let perm = [2, 0, 3, 1];
        let y = x.permuted(&perm).unwrap();
        let p = isometry_check(&x, &y).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(x.d(i, j), y.d(p[i], p[j]));
            }
        }
        let (a, b, c, d, f, e) = (10.0, 11.0, 12.0, 13.0, 14.0, 15.0);
        assert_eq!(isometry_check(&four(a, b, c, d, e, f), &four(a, b, c, f, e, d)), None);
        assert_eq!(isometry_check(&x, &FiniteMetricSpace::point()), None);
    }

    #[test]
    fn report_json() {
        let r = gh_to_simplex(&second(), &spec(2, 5.5));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["two_dgh"], 4.0);
        assert_eq!(v["dgh"], 2.0);
        assert_eq!(v["method"], "partition-minimum");
        assert_eq!(v["witness"]["blocks"], serde_json::json!([[0, 1, 2], [3]]));
        let back: DistanceReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r.report());
        let bare = r.report_with(false, false);
        let v: serde_json::Value = serde_json::to_value(&bare).unwrap();
        assert!(v.get("dgh").is_none());
        assert!(v["witness"].is_null());
    }

    #[test]
    fn all_partitions_are_checked() {
        // The minimum really is over every 2-partition of the second example.
        let x = second();
        for p in enumerate_partitions(4, 2).unwrap() {
            assert!(dis_rd(&x, &spec(2, 6.0), &p).unwrap() >= 4.0);
        }
    }
}
