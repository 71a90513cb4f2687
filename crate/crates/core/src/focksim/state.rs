//! Two-mode state vectors and their plain-text table format.
//!
//! Basis ordering is row-major in `(n_a, n_b)` with `n_b` fastest, i.e. the
//! amplitude of `|n_a, n_b⟩` lives at index `n_a·N + n_b`. The table format
//! written by [`TwoModeState::write_table`] is
//!
//! ```text
//! # cutoff N
//! # n_a n_b re im
//! 0 0 9.975e-1 0e0
//! 0 1 0e0 0e0
//! ...
//! ```
//!
//! with one line per basis state in storage order and every float in its
//! shortest round-trip representation.

use std::io::{self, BufRead, Write};

use num_complex::Complex64;

use super::sparse::inner;

#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    cutoff: usize,
    amplitudes: Vec<Complex64>,
}

impl TwoModeState {
    /// Wraps an amplitude vector of length `cutoff²`.
    pub fn from_amplitudes(cutoff: usize, amplitudes: Vec<Complex64>) -> Self {
        assert_eq!(
            amplitudes.len(),
            cutoff * cutoff,
            "expected cutoff² amplitudes"
        );
        TwoModeState { cutoff, amplitudes }
    }

    /// Product Fock state `|n_a, n_b⟩`.
    pub fn fock(cutoff: usize, n_a: usize, n_b: usize) -> Self {
        assert!(
            n_a < cutoff && n_b < cutoff,
            "Fock level outside the truncated space"
        );
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); cutoff * cutoff];
        amplitudes[n_a * cutoff + n_b] = Complex64::new(1.0, 0.0);
        TwoModeState { cutoff, amplitudes }
    }

    pub fn vacuum(cutoff: usize) -> Self {
        Self::fock(cutoff, 0, 0)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, n_a: usize, n_b: usize) -> Complex64 {
        self.amplitudes[n_a * self.cutoff + n_b]
    }

    pub fn norm(&self) -> f64 {
        inner(&self.amplitudes, &self.amplitudes).re.sqrt()
    }

    /// Probability of exactly `n` photons and `n` phonons.
    pub fn pair_probability(&self, n: usize) -> f64 {
        self.amplitude(n, n).norm_sqr()
    }

    /// Total weight on basis states with `n_a ≠ n_b`.
    pub fn off_diagonal_weight(&self) -> f64 {
        let n = self.cutoff;
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.amplitude(i, j).norm_sqr())
            .sum()
    }

    /// `Σ n |amp(n, n)|²` weighted over all photon numbers, i.e. `⟨a†a⟩`.
    pub fn mean_photon_number(&self) -> f64 {
        let n = self.cutoff;
        (0..n)
            .map(|na| {
                na as f64
                    * (0..n)
                        .map(|nb| self.amplitude(na, nb).norm_sqr())
                        .sum::<f64>()
            })
            .sum()
    }

    pub fn write_table<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "# cutoff {}", self.cutoff)?;
        writeln!(out, "# n_a n_b re im")?;
        for n_a in 0..self.cutoff {
            for n_b in 0..self.cutoff {
                let z = self.amplitude(n_a, n_b);
                writeln!(out, "{n_a} {n_b} {:e} {:e}", z.re, z.im)?;
            }
        }
        Ok(())
    }

    pub fn read_table<R: BufRead>(input: R) -> io::Result<Self> {
        let bad = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
        let mut cutoff = None;
        let mut amplitudes: Vec<Complex64> = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(n) = comment.trim().strip_prefix("cutoff") {
                    let n: usize = n
                        .trim()
                        .parse()
                        .map_err(|e| bad(format!("line {}: {e}", lineno + 1)))?;
                    cutoff = Some(n);
                    amplitudes = vec![Complex64::new(0.0, 0.0); n * n];
                }
                continue;
            }
            let n = cutoff.ok_or_else(|| bad("missing `# cutoff N` header".into()))?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(bad(format!(
                    "line {}: expected 4 columns, got {}",
                    lineno + 1,
                    fields.len()
                )));
            }
            let parse_idx = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| bad(format!("line {}: {e}", lineno + 1)))
            };
            let parse_f = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| bad(format!("line {}: {e}", lineno + 1)))
            };
            let (n_a, n_b) = (parse_idx(fields[0])?, parse_idx(fields[1])?);
            if n_a >= n || n_b >= n {
                return Err(bad(format!(
                    "line {}: level outside cutoff {n}",
                    lineno + 1
                )));
            }
            amplitudes[n_a * n + n_b] = Complex64::new(parse_f(fields[2])?, parse_f(fields[3])?);
        }
        let cutoff = cutoff.ok_or_else(|| bad("missing `# cutoff N` header".into()))?;
        Ok(TwoModeState { cutoff, amplitudes })
    }
}
