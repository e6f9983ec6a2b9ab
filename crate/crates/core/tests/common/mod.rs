#![allow(dead_code)]

use ghsimplex::metric::FiniteMetricSpace;
use ghsimplex::partition::partitions_with_stats;
use ghsimplex::random::{seeded, SpaceKind};
use proptest::prelude::*;
use rand::Rng;

/// `count` spaces with sizes in `sizes`, cycling through every generator kind.
pub fn random_spaces(seed: u64, count: usize, sizes: std::ops::RangeInclusive<usize>) -> Vec<FiniteMetricSpace> {
    let mut rng = seeded(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(sizes.clone());
            SpaceKind::ALL[i % SpaceKind::ALL.len()].sample(&mut rng, n)
        })
        .collect()
}

/// Like [`random_spaces`] but only with kinds on which duality is exact.
pub fn exact_spaces(seed: u64, count: usize, sizes: std::ops::RangeInclusive<usize>) -> Vec<FiniteMetricSpace> {
    let mut rng = seeded(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(sizes.clone());
            SpaceKind::EXACT[i % SpaceKind::EXACT.len()].sample(&mut rng, n)
        })
        .collect()
}

pub fn exact_space_strategy(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = FiniteMetricSpace> {
    (any::<u64>(), sizes, 0usize..SpaceKind::EXACT.len())
        .prop_map(|(seed, n, kind)| SpaceKind::EXACT[kind].sample(&mut seeded(seed), n))
}

/// `d − ρ` entrywise, inverting a dual space.
pub fn undual(y: &FiniteMetricSpace, d: f64) -> FiniteMetricSpace {
    let rows = y
        .to_rows()
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, v)| if i == j { 0.0 } else { d - v })
                .collect()
        })
        .collect();
    FiniteMetricSpace::new(rows).unwrap()
}

/// Proptest strategy drawing a space through the seeded generators.
pub fn space_strategy(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = FiniteMetricSpace> {
    (any::<u64>(), sizes, 0usize..SpaceKind::ALL.len())
        .prop_map(|(seed, n, kind)| SpaceKind::ALL[kind].sample(&mut seeded(seed), n))
}

/// 64 evenly spaced points of `(0, 2·diam X]` plus every kink of every
/// `h_D` for partitions into `m` blocks.
pub fn t_grid(x: &FiniteMetricSpace, m: usize) -> Vec<f64> {
    let top = 2.0 * x.diameter();
    let mut ts: Vec<f64> = (1..=64).map(|i| top * i as f64 / 64.0).collect();
    if (2..=x.len()).contains(&m) {
        for (_, st) in partitions_with_stats(x, m).unwrap() {
            let a = st.alpha_value();
            ts.extend([a, st.beta, (a + st.beta) / 2.0, st.diam + a, st.beta - st.diam]);
        }
    }
    ts.retain(|&t| t > 0.0 && t.is_finite());
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

/// MST edge lengths by Prim's algorithm, sorted descending.
pub fn prim_spectrum(x: &FiniteMetricSpace) -> Vec<f64> {
    let n = x.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    best[0] = 0.0;
    let mut lengths = Vec::new();
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by(|&a, &b| best[a].total_cmp(&best[b]))
            .unwrap();
        in_tree[v] = true;
        if step > 0 {
            lengths.push(best[v]);
        }
        for w in 0..n {
            if !in_tree[w] && x.d(v, w) < best[w] {
                best[w] = x.d(v, w);
            }
        }
    }
    lengths.sort_by(|a, b| b.total_cmp(a));
    lengths
}

/// All nonempty subsets of `0..n` as sorted index lists.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}
