//! Dense real matrix exponential by scaling and squaring with a truncated
//! Taylor series whose remainder is bounded explicitly.

/// Row-major dense real square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        DenseMatrix {
            n,
            data: rows.concat(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    fn scaled(&self, factor: f64) -> DenseMatrix {
        DenseMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    fn add_assign(&mut self, rhs: &DenseMatrix) {
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

/// Target bound on the relative truncation error of the Taylor series.
const TAYLOR_TOLERANCE: f64 = 1e-18;
/// Scaled norm at or below which the series is evaluated.
const SCALED_NORM: f64 = 0.5;

/// `exp(A)`.
///
/// `A` is scaled by `2^-s` so that `‖A/2^s‖₁ ≤ ½`, the Taylor series of the
/// scaled matrix is summed until the Lagrange-type remainder bound
/// `θ^{m+1}/(m+1)! · 1/(1 − θ/(m+2))` drops below `1e-18`, and the result is
/// squared `s` times.
pub fn expm(a: &DenseMatrix) -> DenseMatrix {
    let n = a.dim();
    let norm = a.norm1();
    if norm == 0.0 {
        return DenseMatrix::identity(n);
    }
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.scaled(0.5f64.powi(squarings));
    let theta = scaled.norm1();

    let mut result = DenseMatrix::identity(n);
    let mut term = DenseMatrix::identity(n);
    let mut bound = 1.0; // θ^m / m!
    for m in 1.. {
        term = term.matmul(&scaled).scaled(1.0 / m as f64);
        result.add_assign(&term);
        bound *= theta / m as f64;
        let remainder = bound * theta / (m + 1) as f64 / (1.0 - theta / (m + 2) as f64);
        if remainder < TAYLOR_TOLERANCE {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_identity() {
        assert_eq!(expm(&DenseMatrix::zeros(3)), DenseMatrix::identity(3));
    }

    #[test]
    fn rotation_generator() {
        for theta in [0.1, 1.0, 7.5, 40.0] {
            let g = DenseMatrix::from_rows(&[vec![0.0, -theta], vec![theta, 0.0]]);
            let e = expm(&g);
            assert!((e.get(0, 0) - theta.cos()).abs() < 1e-13 * theta.max(1.0));
            assert!((e.get(1, 0) - theta.sin()).abs() < 1e-13 * theta.max(1.0));
            assert!((e.get(0, 1) + theta.sin()).abs() < 1e-13 * theta.max(1.0));
        }
    }

    #[test]
    fn diagonal_and_nilpotent() {
        let d = DenseMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, -3.0]]);
        let e = expm(&d);
        assert!((e.get(0, 0) - 2f64.exp()).abs() < 1e-14 * 2f64.exp());
        assert!((e.get(1, 1) - (-3f64).exp()).abs() < 1e-15);
        let n = DenseMatrix::from_rows(&[vec![0.0, 5.0], vec![0.0, 0.0]]);
        let e = expm(&n);
        assert!((e.get(0, 1) - 5.0).abs() < 1e-13);
        assert!((e.get(0, 0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hyperbolic_generator() {
        // exp([[0, r], [r, 0]]) = [[cosh r, sinh r], [sinh r, cosh r]]
        let r = 0.8;
        let e = expm(&DenseMatrix::from_rows(&[vec![0.0, r], vec![r, 0.0]]));
        assert!((e.get(0, 0) - r.cosh()).abs() < 1e-14);
        assert!((e.get(0, 1) - r.sinh()).abs() < 1e-14);
    }
}
