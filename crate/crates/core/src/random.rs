//! Seeded generators of finite metric spaces.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metric::FiniteMetricSpace;
use crate::profile::FourPointSpace;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Kinds of random spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    /// Distances uniform in `[1, 2)`; ties have probability zero.
    Band,
    /// Distances drawn from `{1, 1.25, …, 2}`; ties are frequent.
    Quantized,
    /// Shortest-path closure of random integer edge weights in `1..=9`.
    GraphClosure,
    /// Multiples of `2^-10` in `[1, 2]`; sums and differences of such values
    /// with `2·diam` are exact in binary floating point.
    Dyadic,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 4] = [
        SpaceKind::Band,
        SpaceKind::Quantized,
        SpaceKind::GraphClosure,
        SpaceKind::Dyadic,
    ];

    /// Kinds whose distances make `d − |xy|` exact for `d = 2·diam`.
    pub const EXACT: [SpaceKind; 3] = [SpaceKind::Quantized, SpaceKind::GraphClosure, SpaceKind::Dyadic];

    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R, n: usize) -> FiniteMetricSpace {
        match self {
            SpaceKind::Band => band_space(rng, n),
            SpaceKind::Quantized => quantized_space(rng, n),
            SpaceKind::GraphClosure => graph_closure_space(rng, n, 9),
            SpaceKind::Dyadic => dyadic_space(rng, n),
        }
    }
}

fn from_upper<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    mut draw: impl FnMut(&mut R) -> f64,
) -> Vec<Vec<f64>> {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = draw(rng);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    rows
}

/// Any values in `[1, 2]` form a metric.
pub fn band_space<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FiniteMetricSpace {
    let rows = from_upper(rng, n, |r| r.gen_range(1.0..2.0));
    FiniteMetricSpace::new(rows).expect("band distances are metric")
}

pub fn quantized_space<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FiniteMetricSpace {
    let rows = from_upper(rng, n, |r| 1.0 + 0.25 * r.gen_range(0..=4) as f64);
    FiniteMetricSpace::new(rows).expect("band distances are metric")
}

pub fn dyadic_space<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FiniteMetricSpace {
    let rows = from_upper(rng, n, |r| 1.0 + r.gen_range(0..=1024) as f64 / 1024.0);
    FiniteMetricSpace::new(rows).expect("band distances are metric")
}

/// Complete graph with integer weights, closed under shortest paths.
pub fn graph_closure_space<R: Rng + ?Sized>(rng: &mut R, n: usize, max_weight: u32) -> FiniteMetricSpace {
    let mut rows = from_upper(rng, n, |r| r.gen_range(1..=max_weight.max(1)) as f64);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = rows[i][k] + rows[k][j];
                if via < rows[i][j] {
                    rows[i][j] = via;
                }
            }
        }
    }
    FiniteMetricSpace::new(rows).expect("shortest paths are metric")
}

/// Random parameters with `a < b < c < d < f < e`, all in `[1, 2]`.
pub fn family_parameters<R: Rng + ?Sized>(rng: &mut R) -> FourPointSpace {
    loop {
        let mut v: Vec<f64> = (0..6).map(|_| rng.gen_range(1.0..=2.0)).collect();
        v.sort_by(f64::total_cmp);
        if v.windows(2).all(|w| w[0] < w[1]) {
            let (a, b, c, d, f, e) = (v[0], v[1], v[2], v[3], v[4], v[5]);
            return FourPointSpace::new(a, b, c, d, e, f).expect("band distances are metric");
        }
    }
}

/// A random permutation of `0..n`.
pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::is_family_ordering;

    #[test]
    fn generators_are_deterministic() {
        for kind in SpaceKind::ALL {
            let a = kind.sample(&mut seeded(7), 6);
            let b = kind.sample(&mut seeded(7), 6);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn family_parameters_are_ordered() {
        let mut rng = seeded(1);
        for _ in 0..100 {
            let s = family_parameters(&mut rng);
            assert!(is_family_ordering(s.a, s.b, s.c, s.d, s.e, s.f));
        }
    }

    #[test]
    fn closure_is_integral() {
        let x = graph_closure_space(&mut seeded(3), 7, 9);
        assert!(x.pairs().all(|(_, _, d)| d.fract() == 0.0));
    }
}
