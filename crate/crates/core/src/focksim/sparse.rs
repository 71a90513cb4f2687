//! Compressed-sparse-row operators on a finite Hilbert space.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// Square complex matrix in CSR layout. Column indices within a row are
/// sorted and unique; explicit zeros are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

impl Operator {
    /// Builds an operator from `(row, col, value)` entries; duplicates are
    /// summed.
    pub fn from_triplets(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Self {
        let mut entries: Vec<_> = entries.into_iter().collect();
        entries.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(entries.len());
        let mut vals: Vec<Complex64> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in entries {
            assert!(
                i < dim && j < dim,
                "entry ({i}, {j}) outside dimension {dim}"
            );
            if last == Some((i, j)) {
                *vals.last_mut().unwrap() += v;
            } else {
                row_ptr[i + 1] += 1;
                cols.push(j);
                vals.push(v);
                last = Some((i, j));
            }
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        Operator {
            dim,
            row_ptr,
            cols,
            vals,
        }
        .pruned()
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| Complex64::new(1.0, 0.0)))
    }

    pub fn diagonal(values: impl IntoIterator<Item = Complex64>) -> Self {
        let values: Vec<_> = values.into_iter().collect();
        let dim = values.len();
        Self::from_triplets(dim, values.into_iter().enumerate().map(|(i, v)| (i, i, v)))
    }

    fn pruned(self) -> Self {
        if self.vals.iter().all(|v| *v != Complex64::new(0.0, 0.0)) {
            return self;
        }
        let triplets: Vec<_> = self
            .triplets()
            .filter(|t| t.2 != Complex64::new(0.0, 0.0))
            .collect();
        let dim = self.dim;
        let mut row_ptr = vec![0usize; dim + 1];
        for &(i, _, _) in &triplets {
            row_ptr[i + 1] += 1;
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        Operator {
            dim,
            row_ptr,
            cols: triplets.iter().map(|t| t.1).collect(),
            vals: triplets.iter().map(|t| t.2).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[range.clone()]
            .iter()
            .copied()
            .zip(self.vals[range].iter().copied())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[range.clone()].binary_search(&j) {
            Ok(pos) => self.vals[range.start + pos],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.dim, self.triplets().map(|(i, j, v)| (j, i, v.conj())))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_triplets(
            self.dim,
            self.triplets().map(|(i, j, v)| (i, j, v * factor)),
        )
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(
            v.len(),
            self.dim,
            "vector length does not match operator dimension"
        );
        (0..self.dim)
            .map(|i| self.row(i).map(|(j, a)| a * v[j]).sum())
            .collect()
    }

    /// `⟨v|O|v⟩`.
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        inner(v, &self.apply(v))
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let dim = self.dim;
        let mut acc = vec![Complex64::new(0.0, 0.0); dim];
        let mut seen = vec![usize::MAX; dim];
        let mut touched = Vec::new();
        let mut triplets = Vec::new();
        for i in 0..dim {
            touched.clear();
            for (k, a) in self.row(i) {
                for (j, b) in rhs.row(k) {
                    if seen[j] != i {
                        seen[j] = i;
                        acc[j] = Complex64::new(0.0, 0.0);
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            triplets.extend(touched.iter().map(|&j| (i, j, acc[j])));
        }
        Operator::from_triplets(dim, triplets)
    }

    /// `self · rhs − rhs · self`.
    pub fn commutator(&self, rhs: &Operator) -> Operator {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    /// Largest `|self_ij − other_ij|` over index pairs with both `i` and `j`
    /// accepted by `keep`.
    pub fn max_abs_diff_where(&self, other: &Operator, keep: impl Fn(usize) -> bool) -> f64 {
        let diff = self - other;
        diff.triplets()
            .filter(|&(i, j, _)| keep(i) && keep(j))
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Dense row-major copy; intended for small test matrices.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let mut out = vec![vec![Complex64::new(0.0, 0.0); self.dim]; self.dim];
        for (i, j, v) in self.triplets() {
            out[i][j] = v;
        }
        out
    }

    fn combine(&self, rhs: &Operator, sign: f64) -> Operator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let entries = self
            .triplets()
            .chain(rhs.triplets().map(|(i, j, v)| (i, j, v * sign)));
        Operator::from_triplets(self.dim, entries)
    }
}

/// `⟨u|v⟩`, antilinear in the first argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(x, y)| x.conj() * y).sum()
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.matmul(rhs)
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: f64) -> Operator {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Mul<Complex64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: Complex64) -> Operator {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn duplicates_are_summed_and_zeros_dropped() {
        let op = Operator::from_triplets(
            3,
            [
                (0, 1, c(1.0)),
                (0, 1, c(2.0)),
                (2, 2, c(0.0)),
                (1, 0, c(-1.0)),
            ],
        );
        assert_eq!(op.nnz(), 2);
        assert_eq!(op.get(0, 1), c(3.0));
        assert_eq!(op.get(2, 2), c(0.0));
    }

    #[test]
    fn matmul_against_dense() {
        let a = Operator::from_triplets(
            3,
            [
                (0, 0, c(1.0)),
                (0, 2, c(2.0)),
                (1, 1, Complex64::i()),
                (2, 0, c(-1.0)),
            ],
        );
        let b = Operator::from_triplets(3, [(0, 1, c(3.0)), (2, 1, c(1.0)), (1, 2, c(4.0))]);
        let p = a.matmul(&b).to_dense();
        let (ad, bd) = (a.to_dense(), b.to_dense());
        for i in 0..3 {
            for j in 0..3 {
                let expected: Complex64 = (0..3).map(|k| ad[i][k] * bd[k][j]).sum();
                assert_eq!(p[i][j], expected);
            }
        }
    }

    #[test]
    fn adjoint_conjugates() {
        let a = Operator::from_triplets(2, [(0, 1, Complex64::new(1.0, 2.0))]);
        assert_eq!(a.adjoint().get(1, 0), Complex64::new(1.0, -2.0));
        let v = vec![c(1.0), Complex64::i()];
        let lhs = inner(&v, &a.apply(&v));
        let rhs = inner(&a.adjoint().apply(&v), &v);
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn arithmetic() {
        let id = Operator::identity(2);
        let twice = &id + &id;
        assert_eq!(twice.get(1, 1), c(2.0));
        assert_eq!((&twice - &id), id);
        assert_eq!((&id * 3.0).get(0, 0), c(3.0));
        assert_eq!((&id - &id).nnz(), 0);
    }
}
