//! Validated finite metric spaces and the set-to-set quantities built on them.

use std::fmt;

use crate::error::{Error, Result};

/// Relative-absolute slack accepted on the triangle inequality.
///
/// The matrix is stored verbatim; the slack only absorbs decimal parse noise.
pub fn validation_tolerance(diameter: f64) -> f64 {
    1e-9 * (1.0 + diameter)
}

/// A finite metric space given by its full distance matrix.
#[derive(Clone, PartialEq)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<f64>,
    label: Option<String>,
}

impl FiniteMetricSpace {
    /// Validates `matrix` against the metric axioms.
    ///
    /// Checks run in a fixed order (shape, finiteness, diagonal, sign,
    /// positivity, symmetry, triangles) and the first violation found in
    /// row-major order is reported.
    pub fn new(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        for (i, r) in matrix.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteDistance { i, j });
                }
            }
        }
        for (i, r) in matrix.iter().enumerate() {
            if r[i] != 0.0 {
                return Err(Error::NonzeroDiagonal { i, value: r[i] });
            }
        }
        for (i, r) in matrix.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v < 0.0 {
                    return Err(Error::NegativeDistance { i, j, value: v });
                }
                if i != j && v == 0.0 {
                    return Err(Error::CoincidentPoints { i, j });
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::AsymmetricMatrix {
                        i,
                        j,
                        dij: matrix[i][j],
                        dji: matrix[j][i],
                    });
                }
            }
        }
        let diam = matrix
            .iter()
            .flat_map(|r| r.iter().copied())
            .fold(0.0, f64::max);
        let tol = validation_tolerance(diam);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let sum = matrix[i][j] + matrix[j][k];
                    if matrix[i][k] > sum + tol {
                        return Err(Error::TriangleViolation {
                            i,
                            j,
                            k,
                            dik: matrix[i][k],
                            sum,
                        });
                    }
                }
            }
        }
        Ok(Self {
            n,
            dist: matrix.into_iter().flatten().collect(),
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// The single-point space.
    pub fn point() -> Self {
        Self {
            n: 1,
            dist: vec![0.0],
            label: None,
        }
    }

    /// The simplex `λΔ_m`: `m` points, every nonzero distance equal to `lambda`.
    pub fn simplex(m: usize, lambda: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptySimplex);
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::NonpositiveLambda(lambda));
        }
        let dist = (0..m * m)
            .map(|c| if c / m == c % m { 0.0 } else { lambda })
            .collect();
        Ok(Self {
            n: m,
            dist,
            label: None,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Unordered pairs `(i, j, |x_i x_j|)` with `i < j`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j, self.d(i, j))))
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// `ε(X)`, the smallest distance between distinct points.
    pub fn min_positive_distance(&self) -> Result<f64> {
        self.pairs()
            .map(|(_, _, v)| v)
            .reduce(f64::min)
            .ok_or(Error::SinglePointSpace)
    }

    pub fn tolerance(&self) -> f64 {
        validation_tolerance(self.diameter())
    }

    /// Multiplies every distance by `factor`.
    pub fn scale(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::NonpositiveScale(factor));
        }
        Self::new(
            (0..self.n)
                .map(|i| self.row(i).iter().map(|v| v * factor).collect())
                .collect(),
        )
        .map(|s| self.relabel(s))
    }

    /// The dual space `d − X` with distances `d − |xy|` off the diagonal.
    ///
    /// Requires `d ≥ 2·diam X`, which keeps the triangle inequality.
    pub fn dual(&self, d: f64) -> Result<Self> {
        if self.n < 2 {
            return Err(Error::SinglePointSpace);
        }
        let two_diam = 2.0 * self.diameter();
        if !(d >= two_diam) || !d.is_finite() {
            return Err(Error::DTooSmall { d, two_diam });
        }
        Self::new(
            (0..self.n)
                .map(|i| {
                    (0..self.n)
                        .map(|j| if i == j { 0.0 } else { d - self.d(i, j) })
                        .collect()
                })
                .collect(),
        )
        .map(|s| self.relabel(s))
    }

    /// The dual space at the smallest admissible constant `d = 2·diam X`.
    pub fn default_dual(&self) -> Result<Self> {
        self.dual(2.0 * self.diameter())
    }

    /// Same space with points renumbered: point `i` of `self` becomes point
    /// `perm[i]` of the result.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "permutation of length {} for {} points",
                perm.len(),
                self.n
            )));
        }
        let mut rows = vec![vec![0.0; self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                rows[perm[i]][perm[j]] = self.d(i, j);
            }
        }
        Self::new(rows)
    }

    fn relabel(&self, mut other: Self) -> Self {
        other.label = self.label.clone();
        other
    }

    fn check(&self, set: &PointSet) -> Result<()> {
        match set.members.last() {
            Some(&max) if max >= self.n => Err(Error::IndexOutOfRange {
                index: max,
                n: self.n,
            }),
            _ => Ok(()),
        }
    }

    /// `|AB| = min{|ab| : a ∈ A, b ∈ B}`.
    pub fn set_distance_inf(&self, a: &PointSet, b: &PointSet) -> Result<f64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.cross(a, b).fold(f64::INFINITY, f64::min))
    }

    /// `|AB|' = max{|ab| : a ∈ A, b ∈ B}`.
    pub fn set_distance_sup(&self, a: &PointSet, b: &PointSet) -> Result<f64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.cross(a, b).fold(0.0, f64::max))
    }

    /// Diameter of a subset.
    pub fn set_diameter(&self, a: &PointSet) -> Result<f64> {
        self.check(a)?;
        Ok(self.cross(a, a).fold(0.0, f64::max))
    }

    /// Hausdorff distance `max{max_a |aB|, max_b |Ab|}`.
    pub fn hausdorff_distance(&self, a: &PointSet, b: &PointSet) -> Result<f64> {
        self.check(a)?;
        self.check(b)?;
        let directed = |from: &PointSet, to: &PointSet| {
            from.iter()
                .map(|x| to.iter().map(|y| self.d(x, y)).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max)
        };
        Ok(directed(a, b).max(directed(b, a)))
    }

    fn cross<'a>(&'a self, a: &'a PointSet, b: &'a PointSet) -> impl Iterator<Item = f64> + 'a {
        a.iter().flat_map(move |x| b.iter().map(move |y| self.d(x, y)))
    }
}

impl fmt::Debug for FiniteMetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMetricSpace")
            .field("n", &self.n)
            .field("dist", &self.to_rows())
            .field("label", &self.label)
            .finish()
    }
}

/// A nonempty set of point indices, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    members: Vec<usize>,
}

impl PointSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Self { members })
    }

    pub fn singleton(i: usize) -> Self {
        Self { members: vec![i] }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn min(&self) -> usize {
        self.members[0]
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn four_point(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Vec<Vec<f64>> {
        vec![
            vec![0.0, a, b, d],
            vec![a, 0.0, c, e],
            vec![b, c, 0.0, f],
            vec![d, e, f, 0.0],
        ]
    }

    fn first_example() -> FiniteMetricSpace {
        FiniteMetricSpace::new(four_point(3.0, 4.0, 5.0, 6.5, 3.5, 6.0)).unwrap()
    }

    fn second_example() -> FiniteMetricSpace {
        FiniteMetricSpace::new(four_point(2.0, 3.0, 4.0, 5.0, 6.0, 7.0)).unwrap()
    }

    fn set(v: &[usize]) -> PointSet {
        PointSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn single_point_is_valid() {
        let x = FiniteMetricSpace::new(vec![vec![0.0]]).unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x.diameter(), 0.0);
        assert_eq!(x.min_positive_distance(), Err(Error::SinglePointSpace));
    }

    #[test]
    fn rejects_each_axiom() {
        assert!(matches!(
            FiniteMetricSpace::new(vec![vec![0.0, 1.0], vec![2.0, 0.0]]),
            Err(Error::AsymmetricMatrix { i: 0, j: 1, .. })
        ));
        assert!(matches!(
            FiniteMetricSpace::new(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]),
            Err(Error::NegativeDistance { i: 0, j: 1, .. })
        ));
        assert!(matches!(
            FiniteMetricSpace::new(vec![vec![0.0, 1.0], vec![1.0, 0.5]]),
            Err(Error::NonzeroDiagonal { i: 1, .. })
        ));
        assert!(matches!(
            FiniteMetricSpace::new(vec![vec![0.0, 0.0], vec![0.0, 0.0]]),
            Err(Error::CoincidentPoints { i: 0, j: 1 })
        ));
        assert!(matches!(
            FiniteMetricSpace::new(vec![
                vec![0.0, 1.0, 5.0],
                vec![1.0, 0.0, 1.0],
                vec![5.0, 1.0, 0.0]
            ]),
            Err(Error::TriangleViolation { i: 0, j: 1, k: 2, .. })
        ));
        assert!(matches!(
            FiniteMetricSpace::new(vec![vec![0.0, 1.0]]),
            Err(Error::NotSquare { .. })
        ));
        assert_eq!(FiniteMetricSpace::new(vec![]), Err(Error::EmptyMatrix));
    }

    #[test]
    fn triangle_slack_absorbs_parse_noise_only() {
        // 0.1 + 0.2 > 0.3 in binary; a degenerate triangle still validates.
        let ok = FiniteMetricSpace::new(vec![
            vec![0.0, 0.1, 0.3],
            vec![0.1, 0.0, 0.2],
            vec![0.3, 0.2, 0.0],
        ]);
        assert!(ok.is_ok());
        let bad = FiniteMetricSpace::new(vec![
            vec![0.0, 0.1, 0.3001],
            vec![0.1, 0.0, 0.2],
            vec![0.3001, 0.2, 0.0],
        ]);
        assert!(bad.is_err());
    }

    #[test]
    fn example_scalars() {
        let x1 = first_example();
        let x2 = second_example();
        assert_eq!(x1.diameter(), 6.5);
        assert_eq!(x2.diameter(), 7.0);
        assert_eq!(x1.min_positive_distance().unwrap(), 3.0);
        assert_eq!(x2.min_positive_distance().unwrap(), 2.0);
        let s = FiniteMetricSpace::simplex(5, 2.5).unwrap();
        assert_eq!(s.min_positive_distance().unwrap(), s.diameter());
    }

    #[test]
    fn scaling() {
        let x2 = second_example();
        assert_eq!(x2.scale(1.0).unwrap(), x2);
        assert_eq!(x2.scale(0.5).unwrap().diameter(), 3.5);
        let s = FiniteMetricSpace::simplex(3, 1.0).unwrap().scale(2.0).unwrap();
        assert_eq!(s, FiniteMetricSpace::simplex(3, 2.0).unwrap());
        assert_eq!(x2.scale(0.0), Err(Error::NonpositiveScale(0.0)));
    }

    #[test]
    fn dual_spaces() {
        let s = FiniteMetricSpace::simplex(4, 1.5).unwrap();
        assert_eq!(s.dual(3.0).unwrap(), s);
        let x2 = second_example();
        let dual = x2.dual(14.0).unwrap();
        let mut got: Vec<f64> = dual.pairs().map(|(_, _, v)| v).collect();
        got.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_eq!(got, vec![12.0, 11.0, 10.0, 9.0, 8.0, 7.0]);
        assert!(matches!(x2.dual(13.9), Err(Error::DTooSmall { .. })));
        assert_eq!(FiniteMetricSpace::point().dual(1.0), Err(Error::SinglePointSpace));
    }

    #[test]
    fn dual_sorted_distances_reverse() {
        let x1 = first_example();
        let d = 20.0;
        let mut rho: Vec<f64> = x1.pairs().map(|(_, _, v)| v).collect();
        rho.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut dual: Vec<f64> = x1.dual(d).unwrap().pairs().map(|(_, _, v)| v).collect();
        dual.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let expected: Vec<f64> = rho.iter().rev().map(|r| d - r).collect();
        assert_eq!(dual, expected);
    }

    #[test]
    fn set_distances() {
        let x1 = first_example();
        let all = set(&[0, 1, 2, 3]);
        assert_eq!(x1.set_distance_inf(&all, &all).unwrap(), 0.0);
        assert_eq!(x1.set_distance_inf(&set(&[0]), &set(&[1, 2, 3])).unwrap(), 3.0);
        assert_eq!(x1.set_distance_inf(&set(&[0, 1]), &set(&[2, 3])).unwrap(), 3.5);
        assert_eq!(x1.set_distance_sup(&set(&[2]), &set(&[2])).unwrap(), 0.0);
        assert_eq!(x1.set_distance_sup(&set(&[0]), &set(&[1, 2, 3])).unwrap(), 6.5);
        assert!(matches!(
            x1.set_distance_inf(&set(&[0]), &set(&[4])),
            Err(Error::IndexOutOfRange { index: 4, n: 4 })
        ));
        assert_eq!(PointSet::new(Vec::new()), Err(Error::EmptySet));
    }

    #[test]
    fn hausdorff_examples() {
        let x2 = second_example();
        let a = set(&[0, 3]);
        assert_eq!(x2.hausdorff_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(x2.hausdorff_distance(&set(&[0]), &set(&[0, 1])).unwrap(), 2.0);
        // rows: x1→{x2,x3}=2, x4→{x2,x3}=6; columns: x2→{x1,x4}=2, x3→{x1,x4}=3
        assert_eq!(x2.hausdorff_distance(&a, &set(&[1, 2])).unwrap(), 6.0);
    }
}
