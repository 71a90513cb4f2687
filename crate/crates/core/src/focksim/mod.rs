//! Truncated two-mode Fock-space oracle.
//!
//! Builds the ladder operators of the photon (`a`) and phonon (`b`) modes on
//! `|n_a, n_b⟩` with `n_a, n_b < N`, constructs `S(r) = exp(r(a†b† − ab))` by
//! matrix exponentiation and measures every statistic of
//! [`crate::squeezing`] as a plain expectation value. Nothing here uses the
//! closed forms being checked.
//!
//! Truncation makes `[a, a†]` wrong on the top level (`N−1` instead of `−1`
//! contributions), so operator identities are only compared on the
//! low-occupation block `n_a, n_b < N/2`.
//!
//! `S(r)` conserves `n_a − n_b`, so it is block diagonal over those sectors.
//! Each sector is a chain of at most `N` states and is exponentiated densely;
//! the full operator is stored sparse.

mod expm;
mod sparse;
mod state;

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::squeezing::{CrossMoments, ModeStats, MomentTable};

pub use expm::{expm, DenseMatrix};
pub use sparse::{inner, Operator};
pub use state::TwoModeState;

/// Default bound on the probability weight lost beyond the cutoff.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-12;
/// Largest per-mode cutoff the automatic selection will pick.
pub const MAX_CUTOFF: usize = 128;

/// Two bosonic modes, each truncated to levels `0..cutoff`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncatedFockSpace {
    cutoff: usize,
    tail_tolerance: f64,
}

impl TruncatedFockSpace {
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::invalid(
                "cutoff",
                format!("must be at least 2, got {cutoff}"),
            ));
        }
        Ok(TruncatedFockSpace {
            cutoff,
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
        })
    }

    /// Tail-mass bound used by [`squeeze_operator`] to reject a cutoff.
    pub fn with_tail_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0) {
            return Err(Error::invalid(
                "tail_tolerance",
                format!("must be positive, got {tolerance}"),
            ));
        }
        self.tail_tolerance = tolerance;
        Ok(self)
    }

    /// Smallest cutoff whose tail mass at `r` is below `tolerance`, capped
    /// at [`MAX_CUTOFF`].
    pub fn for_squeeze(r: f64, tolerance: f64) -> Result<Self> {
        check_r(r)?;
        match (2..=MAX_CUTOFF).find(|&n| tail_mass(r, n) < tolerance) {
            Some(n) => Self::new(n)?.with_tail_tolerance(tolerance),
            None => Err(Error::CutoffTooSmall {
                cutoff: MAX_CUTOFF,
                r,
                tail_mass: tail_mass(r, MAX_CUTOFF),
                tolerance,
            }),
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn tail_tolerance(&self) -> f64 {
        self.tail_tolerance
    }

    /// `N²`.
    pub fn dimension(&self) -> usize {
        self.cutoff * self.cutoff
    }

    pub fn index(&self, n_a: usize, n_b: usize) -> usize {
        n_a * self.cutoff + n_b
    }

    pub fn levels(&self, index: usize) -> (usize, usize) {
        (index / self.cutoff, index % self.cutoff)
    }

    /// True when both occupations are below `N/2`.
    pub fn in_low_block(&self, index: usize) -> bool {
        let (n_a, n_b) = self.levels(index);
        let half = self.cutoff / 2;
        n_a < half && n_b < half
    }
}

/// Probability weight of `|r⟩` on pair numbers `n ≥ cutoff`.
///
/// `Σ_{n≥N} tanh^{2n} r / cosh² r = tanh^{2N} r / (cosh² r (1 − tanh² r))`,
/// and `cosh² r (1 − tanh² r) = 1`.
pub fn tail_mass(r: f64, cutoff: usize) -> f64 {
    r.tanh().powi(2 * cutoff as i32)
}

fn check_r(r: f64) -> Result<()> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::invalid(
            "r",
            format!("must be finite and non-negative, got {r}"),
        ));
    }
    Ok(())
}

fn check_cutoff(space: &TruncatedFockSpace, r: f64) -> Result<()> {
    let tail = tail_mass(r, space.cutoff);
    if tail > space.tail_tolerance {
        return Err(Error::CutoffTooSmall {
            cutoff: space.cutoff,
            r,
            tail_mass: tail,
            tolerance: space.tail_tolerance,
        });
    }
    Ok(())
}

/// Lowering operator `⟨n−1|a|n⟩ = √n` on a single mode with `n` levels.
pub fn single_mode_annihilation(levels: usize) -> Operator {
    Operator::from_triplets(
        levels,
        (1..levels).map(|n| (n - 1, n, Complex64::new((n as f64).sqrt(), 0.0))),
    )
}

/// Ladder operators of both modes on the two-mode space.
#[derive(Debug, Clone)]
pub struct LadderOperators {
    pub a: Operator,
    pub a_dag: Operator,
    pub b: Operator,
    pub b_dag: Operator,
}

impl LadderOperators {
    /// Mixed mode `c = (a − b)/√2`.
    pub fn c(&self) -> Operator {
        &(&self.a - &self.b) * FRAC_1_SQRT_2
    }

    /// Mixed mode `d = (a + b)/√2`.
    pub fn d(&self) -> Operator {
        &(&self.a + &self.b) * FRAC_1_SQRT_2
    }
}

pub fn ladder_operators(space: &TruncatedFockSpace) -> LadderOperators {
    let n = space.cutoff;
    let single = single_mode_annihilation(n);
    // a ⊗ 1 and 1 ⊗ b with n_b fastest
    let a = Operator::from_triplets(
        space.dimension(),
        single
            .triplets()
            .flat_map(|(i, j, v)| (0..n).map(move |k| (i * n + k, j * n + k, v))),
    );
    let b = Operator::from_triplets(
        space.dimension(),
        (0..n)
            .flat_map(|k| {
                single
                    .triplets()
                    .map(move |(i, j, v)| (k * n + i, k * n + j, v))
            })
            .collect::<Vec<_>>(),
    );
    LadderOperators {
        a_dag: a.adjoint(),
        b_dag: b.adjoint(),
        a,
        b,
    }
}

/// `r (a†b† − ab)`.
pub fn squeeze_generator(space: &TruncatedFockSpace, r: f64) -> Operator {
    let ops = ladder_operators(space);
    let pair_up = ops.a_dag.matmul(&ops.b_dag);
    let pair_down = ops.a.matmul(&ops.b);
    &(&pair_up - &pair_down) * r
}

/// Exponentiates the generator restricted to the sector `n_a − n_b = diff`
/// and returns the sector's basis indices with the dense block.
fn sector_exponential(
    space: &TruncatedFockSpace,
    generator: &Operator,
    diff: i64,
) -> (Vec<usize>, DenseMatrix) {
    let n = space.cutoff as i64;
    let indices: Vec<usize> = (0..n)
        .filter_map(|n_a| {
            let n_b = n_a - diff;
            (0..n)
                .contains(&n_b)
                .then(|| space.index(n_a as usize, n_b as usize))
        })
        .collect();
    let mut block = DenseMatrix::zeros(indices.len());
    for (row, &i) in indices.iter().enumerate() {
        for (j, v) in generator.row(i) {
            debug_assert_eq!(v.im, 0.0, "squeeze generator is real for real r");
            let col = indices
                .iter()
                .position(|&k| k == j)
                .expect("generator couples different n_a - n_b sectors");
            block.set(row, col, v.re);
        }
    }
    (indices, expm(&block))
}

fn squeeze_unchecked(space: &TruncatedFockSpace, r: f64) -> Operator {
    let generator = squeeze_generator(space, r);
    let n = space.cutoff as i64;
    let mut triplets = Vec::new();
    for diff in -(n - 1)..n {
        let (indices, block) = sector_exponential(space, &generator, diff);
        for (row, &i) in indices.iter().enumerate() {
            for (col, &j) in indices.iter().enumerate() {
                triplets.push((i, j, Complex64::new(block.get(row, col), 0.0)));
            }
        }
    }
    Operator::from_triplets(space.dimension(), triplets)
}

/// Two-mode squeeze operator `S(r) = exp(r(a†b† − ab))`.
pub fn squeeze_operator(space: &TruncatedFockSpace, r: f64) -> Result<Operator> {
    check_r(r)?;
    check_cutoff(space, r)?;
    Ok(squeeze_unchecked(space, r))
}

fn squeezed_vacuum_unchecked(space: &TruncatedFockSpace, r: f64) -> TwoModeState {
    // the vacuum lies in the n_a = n_b sector, whose block is all that S(r)
    // needs to act with
    let generator = squeeze_generator(space, r);
    let (indices, block) = sector_exponential(space, &generator, 0);
    let vacuum_col = indices
        .iter()
        .position(|&i| i == space.index(0, 0))
        .unwrap();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); space.dimension()];
    for (row, &i) in indices.iter().enumerate() {
        amplitudes[i] = Complex64::new(block.get(row, vacuum_col), 0.0);
    }
    TwoModeState::from_amplitudes(space.cutoff, amplitudes)
}

/// `|r⟩ = S(r)|0,0⟩`.
pub fn squeezed_vacuum(space: &TruncatedFockSpace, r: f64) -> Result<TwoModeState> {
    check_r(r)?;
    check_cutoff(space, r)?;
    Ok(squeezed_vacuum_unchecked(space, r))
}

/// `exp(op)·v` for nilpotent `op`; the series terminates exactly.
fn apply_exp_nilpotent(op: &Operator, v: &[Complex64]) -> Vec<Complex64> {
    let mut result = v.to_vec();
    let mut term = v.to_vec();
    for k in 1..=op.dim() {
        term = op.apply(&term).into_iter().map(|z| z / k as f64).collect();
        if term.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
            break;
        }
        for (acc, t) in result.iter_mut().zip(&term) {
            *acc += t;
        }
    }
    result
}

/// `|r⟩` through the disentangled product
/// `exp(tanh r a†b†) · exp(−ln cosh r (a†a + b†b + 1)) · exp(−tanh r ab)`
/// acting on the vacuum. Independent of the matrix exponential path.
pub fn squeezed_vacuum_factorized(space: &TruncatedFockSpace, r: f64) -> Result<TwoModeState> {
    check_r(r)?;
    check_cutoff(space, r)?;
    let ops = ladder_operators(space);
    let t = r.tanh();
    let raise = &ops.a_dag.matmul(&ops.b_dag) * t;
    let lower = &ops.a.matmul(&ops.b) * (-t);
    let number = &(&ops.a_dag.matmul(&ops.a) + &ops.b_dag.matmul(&ops.b))
        + &Operator::identity(space.dimension());
    let log_cosh = r.cosh().ln();
    let middle = Operator::diagonal(
        (0..space.dimension())
            .map(|i| Complex64::new((-log_cosh * number.get(i, i).re).exp(), 0.0)),
    );

    let vacuum = TwoModeState::vacuum(space.cutoff);
    let v = apply_exp_nilpotent(&lower, vacuum.amplitudes());
    let v = middle.apply(&v);
    let v = apply_exp_nilpotent(&raise, &v);
    Ok(TwoModeState::from_amplitudes(space.cutoff, v))
}

/// `max |(S S† − 1)_ij|` over the low-occupation block.
pub fn unitarity_defect(space: &TruncatedFockSpace, s: &Operator) -> f64 {
    let product = s.matmul(&s.adjoint());
    product.max_abs_diff_where(&Operator::identity(space.dimension()), |i| {
        space.in_low_block(i)
    })
}

/// Columns of `S(r)` whose weight on the truncation edge stays below this are
/// treated as free of truncation error.
pub const EDGE_TOLERANCE: f64 = 1e-12;

/// Residuals of the Bogoliubov conjugation `S†(r) a S(r)`, compared on the
/// reliable block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovResidual {
    /// Number of basis states in the compared block.
    pub checked_states: usize,
    /// Largest `n_a` (equivalently `n_b`) level such that every state with
    /// both occupations at or below it was compared.
    pub complete_level: usize,
    /// `S†aS` against `cosh r a + sinh r b†`.
    pub alpha: f64,
    /// `S†bS` against `cosh r b + sinh r a†`.
    pub beta: f64,
    /// `[α, β†]` against zero.
    pub cross_commutator: f64,
    /// `[α, α†]` against the identity.
    pub canonical_commutator: f64,
}

impl BogoliubovResidual {
    pub fn max(&self) -> f64 {
        self.alpha
            .max(self.beta)
            .max(self.cross_commutator)
            .max(self.canonical_commutator)
    }
}

/// Low-block states `j` whose column `S|j⟩` has every amplitude on the edge
/// levels (`n_a = N−1` or `n_b = N−1`) below [`EDGE_TOLERANCE`].
///
/// The low block alone is not enough: a column starting at occupation `n`
/// spreads over roughly `n·sinh 2r` further levels, so near `N/2` it can
/// still reach the cutoff.
pub fn reliable_block(space: &TruncatedFockSpace, s: &Operator) -> Vec<bool> {
    let edge = space.cutoff - 1;
    let mut edge_amplitude = vec![0.0f64; space.dimension()];
    for (i, j, v) in s.triplets() {
        let (n_a, n_b) = space.levels(i);
        if n_a == edge || n_b == edge {
            edge_amplitude[j] = edge_amplitude[j].max(v.norm());
        }
    }
    (0..space.dimension())
        .map(|j| space.in_low_block(j) && edge_amplitude[j] < EDGE_TOLERANCE)
        .collect()
}

pub fn bogoliubov_check(space: &TruncatedFockSpace, r: f64) -> Result<BogoliubovResidual> {
    let s = squeeze_operator(space, r)?;
    let s_dag = s.adjoint();
    let ops = ladder_operators(space);
    let reliable = reliable_block(space, &s);
    let keep = |i: usize| reliable[i];

    let alpha = s_dag.matmul(&ops.a).matmul(&s);
    let beta = s_dag.matmul(&ops.b).matmul(&s);
    let alpha_expected = &(&ops.a * r.cosh()) + &(&ops.b_dag * r.sinh());
    let beta_expected = &(&ops.b * r.cosh()) + &(&ops.a_dag * r.sinh());

    let zero = Operator::from_triplets(space.dimension(), []);
    let identity = Operator::identity(space.dimension());
    let complete_level = (0..space.cutoff)
        .take_while(|&n| (0..=n).all(|m| keep(space.index(n, m)) && keep(space.index(m, n))))
        .last()
        .unwrap_or(0);
    Ok(BogoliubovResidual {
        checked_states: reliable.iter().filter(|&&k| k).count(),
        complete_level,
        alpha: alpha.max_abs_diff_where(&alpha_expected, keep),
        beta: beta.max_abs_diff_where(&beta_expected, keep),
        cross_commutator: alpha
            .commutator(&beta.adjoint())
            .max_abs_diff_where(&zero, keep),
        canonical_commutator: alpha
            .commutator(&alpha.adjoint())
            .max_abs_diff_where(&identity, keep),
    })
}

/// `(X, Y) = ((o + o†)/√2, (o − o†)/(i√2))`.
fn quadratures(o: &Operator) -> (Operator, Operator) {
    let o_dag = o.adjoint();
    let x = &(o + &o_dag) * FRAC_1_SQRT_2;
    let y = &(o - &o_dag) * Complex64::new(0.0, -FRAC_1_SQRT_2);
    (x, y)
}

fn mode_stats(o: &Operator, psi: &[Complex64]) -> ModeStats {
    let (x, y) = quadratures(o);
    let (x_psi, y_psi) = (x.apply(psi), y.apply(psi));
    let mean_x = inner(psi, &x_psi).re;
    let mean_y = inner(psi, &y_psi).re;
    let second_x = inner(psi, &x.apply(&x_psi)).re;
    let second_y = inner(psi, &y.apply(&y_psi)).re;
    ModeStats::from_moments(mean_x, mean_y, second_x, second_y)
}

/// Every entry of a [`MomentTable`] as a numerical expectation value in
/// `state`. The `r` field is left at `NaN`; the state alone does not fix it.
pub fn measure_moments(state: &TwoModeState) -> MomentTable {
    let space = TruncatedFockSpace::new(state.cutoff()).expect("state cutoff is at least 2");
    let ops = ladder_operators(&space);
    let (c, d) = (ops.c(), ops.d());
    let psi = state.amplitudes();
    let expect = |lhs: &Operator, rhs: &Operator| lhs.matmul(rhs).expectation(psi);
    let cross = CrossMoments {
        a_dag_a: expect(&ops.a_dag, &ops.a).re,
        b_dag_b: expect(&ops.b_dag, &ops.b).re,
        c_dag_c: expect(&c.adjoint(), &c).re,
        d_dag_d: expect(&d.adjoint(), &d).re,
        ab: expect(&ops.a, &ops.b),
        a_dag_b: expect(&ops.a_dag, &ops.b),
        a_sq: expect(&ops.a, &ops.a),
        b_sq: expect(&ops.b, &ops.b),
        c_sq: expect(&c, &c),
        d_sq: expect(&d, &d),
    };
    MomentTable {
        r: f64::NAN,
        a: mode_stats(&ops.a, psi),
        b: mode_stats(&ops.b, psi),
        c: mode_stats(&c, psi),
        d: mode_stats(&d, psi),
        cross,
    }
}

/// Outcome of detecting a given photon number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Herald {
    pub n_detected: usize,
    /// Probability of the detection outcome.
    pub probability: f64,
    /// Phonon-number distribution conditioned on the outcome.
    pub phonon_distribution: Vec<f64>,
}

/// Projects on `n_detected` photons and returns the conditional phonon
/// distribution.
pub fn herald(state: &TwoModeState, n_detected: usize) -> Result<Herald> {
    let n = state.cutoff();
    if n_detected >= n {
        return Err(Error::invalid(
            "n_detected",
            format!("must be below the cutoff {n}, got {n_detected}"),
        ));
    }
    let weights: Vec<f64> = (0..n)
        .map(|n_b| state.amplitude(n_detected, n_b).norm_sqr())
        .collect();
    let norm_sqr = state.norm().powi(2);
    let probability = weights.iter().sum::<f64>() / norm_sqr;
    if probability < 1e-15 {
        return Err(Error::ZeroProbability {
            n_detected,
            probability,
        });
    }
    let total: f64 = weights.iter().sum();
    Ok(Herald {
        n_detected,
        probability,
        phonon_distribution: weights.into_iter().map(|w| w / total).collect(),
    })
}

/// How much of `|r⟩` the cutoff discards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationReport {
    pub cutoff: usize,
    /// `Σ_{n≥N} P_n`, closed form.
    pub tail_mass: f64,
    /// Largest `|amp(N−1, n_b)|` of the constructed state.
    pub max_edge_amplitude: f64,
}

pub fn truncation_report(space: &TruncatedFockSpace, r: f64) -> Result<TruncationReport> {
    check_r(r)?;
    let state = squeezed_vacuum_unchecked(space, r);
    let edge = space.cutoff - 1;
    Ok(TruncationReport {
        cutoff: space.cutoff,
        tail_mass: tail_mass(r, space.cutoff),
        max_edge_amplitude: (0..space.cutoff)
            .map(|n_b| state.amplitude(edge, n_b).norm())
            .fold(0.0, f64::max),
    })
}
