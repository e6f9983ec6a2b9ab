//! Set partitions of a space's points and the functionals evaluated on them.
//!
//! A partition `D = {X_1, …, X_k}` carries three numbers: `α(D)`, the
//! smallest distance between different blocks; `β(D)`, the largest such
//! distance; and `diam D`, the largest block diameter. Optimizing these over
//! all partitions into a fixed number of blocks yields the spanning tree
//! spectra and the distances to simplexes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended::Extended;
use crate::metric::{FiniteMetricSpace, PointSet};

/// A division of `0..n` into nonempty blocks, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<PointSet>,
    labels: Vec<usize>,
}

impl Partition {
    /// Builds the partition whose block of point `i` is identified by
    /// `labels[i]`; labels are arbitrary and renumbered canonically.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap: Vec<(usize, usize)> = Vec::new();
        let mut canonical = Vec::with_capacity(labels.len());
        for &l in labels {
            let id = match remap.iter().find(|(old, _)| *old == l) {
                Some(&(_, id)) => id,
                None => {
                    remap.push((l, remap.len()));
                    remap.len() - 1
                }
            };
            canonical.push(id);
        }
        Self::from_canonical(canonical, remap.len())
    }

    fn from_canonical(labels: Vec<usize>, k: usize) -> Self {
        let mut members = vec![Vec::new(); k];
        for (i, &l) in labels.iter().enumerate() {
            members[l].push(i);
        }
        let blocks = members
            .into_iter()
            .map(|m| PointSet::new(m).expect("canonical labels leave no block empty"))
            .collect();
        Self { blocks, labels }
    }

    /// Validates that `blocks` are disjoint, nonempty and cover `0..n`.
    pub fn new(blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::PartitionMismatch { n });
            }
            for &i in block {
                if i >= n || labels[i] != usize::MAX {
                    return Err(Error::PartitionMismatch { n });
                }
                labels[i] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::PartitionMismatch { n });
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_canonical((0..n).collect(), n)
    }

    pub fn whole(n: usize) -> Self {
        Self::from_canonical(vec![0; n], usize::from(n > 0))
    }

    pub fn blocks(&self) -> &[PointSet] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// Number of points partitioned.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Restricted-growth string: block index of each point.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PartitionJson::from(self)).expect("partition serialization")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub blocks: Vec<Vec<usize>>,
}

impl From<&Partition> for PartitionJson {
    fn from(p: &Partition) -> Self {
        Self {
            blocks: p.blocks.iter().map(|b| b.as_slice().to_vec()).collect(),
        }
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = PartitionJson::deserialize(d)?;
        let n = json.blocks.iter().map(Vec::len).sum();
        Partition::new(json.blocks, n).map_err(serde::de::Error::custom)
    }
}

/// Lexicographic stream of restricted-growth strings with exactly `k`
/// distinct values, i.e. all partitions of `0..n` into `k` blocks.
#[derive(Debug, Clone)]
pub struct Partitions {
    k: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current, self.k);
        Some(Partition::from_canonical(current, self.k))
    }
}

fn successor(a: &[usize], k: usize) -> Option<Vec<usize>> {
    let n = a.len();
    let mut prefix_max = Vec::with_capacity(n);
    let mut m = 0;
    for &v in a {
        m = m.max(v);
        prefix_max.push(m);
    }
    for i in (1..n).rev() {
        let before = prefix_max[i - 1];
        let limit = (before + 1).min(k - 1);
        let remaining = n - 1 - i;
        for v in (a[i] + 1)..=limit {
            let top = before.max(v);
            let needed = k - 1 - top;
            if needed <= remaining {
                let mut b = a[..i].to_vec();
                b.push(v);
                b.extend(std::iter::repeat_n(0, remaining - needed));
                b.extend(top + 1..k);
                return Some(b);
            }
        }
    }
    None
}

/// All partitions of `n` points into exactly `k` nonempty blocks.
pub fn enumerate_partitions(n: usize, k: usize) -> Result<Partitions> {
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { n, k });
    }
    let mut first = vec![0; n - k + 1];
    first.extend(1..k);
    Ok(Partitions {
        k,
        next: Some(first),
    })
}

/// `α(D)`, `β(D)` and `diam D` of one partition.
///
/// For a one-block partition `alpha` is `+∞` and `beta` is 0 (no block pairs).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionStats {
    pub alpha: Extended,
    pub beta: f64,
    pub diam: f64,
}

impl PartitionStats {
    /// `alpha` as a plain number; only meaningful for at least two blocks.
    pub fn alpha_value(&self) -> f64 {
        self.alpha.finite().unwrap_or(f64::INFINITY)
    }
}

pub fn partition_stats(x: &FiniteMetricSpace, d: &Partition) -> Result<PartitionStats> {
    if d.n() != x.len() {
        return Err(Error::PartitionMismatch { n: x.len() });
    }
    Ok(stats_unchecked(x, d.labels()))
}

pub(crate) fn stats_unchecked(x: &FiniteMetricSpace, labels: &[usize]) -> PartitionStats {
    let mut alpha = f64::INFINITY;
    let mut beta: f64 = 0.0;
    let mut diam: f64 = 0.0;
    for (i, j, v) in x.pairs() {
        if labels[i] == labels[j] {
            diam = diam.max(v);
        } else {
            alpha = alpha.min(v);
            beta = beta.max(v);
        }
    }
    PartitionStats {
        alpha: if alpha.is_finite() {
            Extended::Finite(alpha)
        } else {
            Extended::Infinity
        },
        beta,
        diam,
    }
}

/// Every partition into `k` blocks together with its stats, in enumeration order.
pub fn partitions_with_stats(
    x: &FiniteMetricSpace,
    k: usize,
) -> Result<impl Iterator<Item = (Partition, PartitionStats)> + '_> {
    Ok(enumerate_partitions(x.len(), k)?.map(move |p| {
        let s = stats_unchecked(x, p.labels());
        (p, s)
    }))
}

/// `σ_k = max{α(D) : D ∈ D_{k+1}(X)}`, with `σ_k = 0` once `k ≥ n`.
pub fn sigma_by_partitions(x: &FiniteMetricSpace, k: usize) -> Result<f64> {
    Ok(sigma_by_partitions_with_witness(x, k)?.0)
}

pub fn sigma_by_partitions_with_witness(
    x: &FiniteMetricSpace,
    k: usize,
) -> Result<(f64, Option<Partition>)> {
    if k == 0 {
        return Err(Error::KOutOfRange { n: x.len(), k });
    }
    if k + 1 > x.len() {
        return Ok((0.0, None));
    }
    let mut best: Option<(f64, Partition)> = None;
    for (p, s) in partitions_with_stats(x, k + 1)? {
        let a = s.alpha_value();
        if best.as_ref().is_none_or(|(v, _)| a > *v) {
            best = Some((a, p));
        }
    }
    let (v, p) = best.expect("at least one partition exists");
    Ok((v, Some(p)))
}

/// `Σ_k = min{β(D) : D ∈ D_{k+1}(X)}`, with `Σ_k = +∞` once `k ≥ n`.
pub fn xst_sigma_by_partitions(x: &FiniteMetricSpace, k: usize) -> Result<Extended> {
    Ok(xst_sigma_by_partitions_with_witness(x, k)?.0)
}

pub fn xst_sigma_by_partitions_with_witness(
    x: &FiniteMetricSpace,
    k: usize,
) -> Result<(Extended, Option<Partition>)> {
    if k == 0 {
        return Err(Error::KOutOfRange { n: x.len(), k });
    }
    if k + 1 > x.len() {
        return Ok((Extended::Infinity, None));
    }
    let mut best: Option<(f64, Partition)> = None;
    for (p, s) in partitions_with_stats(x, k + 1)? {
        if best.as_ref().is_none_or(|(v, _)| s.beta < *v) {
            best = Some((s.beta, p));
        }
    }
    let (v, p) = best.expect("at least one partition exists");
    Ok((Extended::Finite(v), Some(p)))
}

/// `d_m(X) = min{diam D : D ∈ D_m(X)}`, `+∞` when `m` is 0 or exceeds `n`.
pub fn min_block_diameter(x: &FiniteMetricSpace, m: usize) -> Extended {
    min_block_diameter_with_witness(x, m).0
}

pub fn min_block_diameter_with_witness(
    x: &FiniteMetricSpace,
    m: usize,
) -> (Extended, Option<Partition>) {
    let Ok(parts) = partitions_with_stats(x, m) else {
        return (Extended::Infinity, None);
    };
    let mut best: Option<(f64, Partition)> = None;
    for (p, s) in parts {
        if best.as_ref().is_none_or(|(v, _)| s.diam < *v) {
            best = Some((s.diam, p));
        }
    }
    match best {
        Some((v, p)) => (Extended::Finite(v), Some(p)),
        None => (Extended::Infinity, None),
    }
}

/// `δ_m(X)`: the least threshold `δ` whose graph `G_δ(X)` (edges between
/// points at distance `≤ δ`) can be covered by at most `m` disjoint cliques.
///
/// Found by binary search over the distinct distances, with an exact
/// backtracking clique-cover test; no partitions are enumerated.
pub fn clique_threshold(x: &FiniteMetricSpace, m: usize) -> Extended {
    let n = x.len();
    if m == 0 || m > n {
        return Extended::Infinity;
    }
    let mut candidates: Vec<f64> = std::iter::once(0.0)
        .chain(x.pairs().map(|(_, _, v)| v))
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // The largest distance always works: G is complete, one clique suffices.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if covers_with_cliques(x, candidates[mid], m) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Extended::Finite(candidates[lo])
}

/// Whether the points split into at most `m` groups of pairwise distance `≤ delta`.
pub fn covers_with_cliques(x: &FiniteMetricSpace, delta: f64, m: usize) -> bool {
    fn place(
        x: &FiniteMetricSpace,
        delta: f64,
        m: usize,
        v: usize,
        cliques: &mut Vec<Vec<usize>>,
    ) -> bool {
        if v == x.len() {
            return true;
        }
        for c in 0..cliques.len() {
            if cliques[c].iter().all(|&u| x.d(u, v) <= delta) {
                cliques[c].push(v);
                if place(x, delta, m, v + 1, cliques) {
                    return true;
                }
                cliques[c].pop();
            }
        }
        if cliques.len() < m {
            cliques.push(vec![v]);
            if place(x, delta, m, v + 1, cliques) {
                return true;
            }
            cliques.pop();
        }
        false
    }
    place(x, delta, m, 0, &mut Vec::new())
}
