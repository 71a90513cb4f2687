use crate::waveguide::Geometry;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("no phase-matching solution in {geometry} geometry (group velocity {vg} m/s equals acoustic velocity {va} m/s)")]
    NoSolution {
        geometry: Geometry,
        vg: f64,
        va: f64,
    },

    #[error("degenerate linewidth: u + gamma/2 = {linewidth} Hz, pump steady state undefined")]
    DegenerateLinewidth { linewidth: f64 },

    #[error("unstable: coupling f = {f} Hz is not below the mean frequency (omega + Omega)/2 = {omega_bar} Hz")]
    Unstable { omega_bar: f64, f: f64 },

    #[error(
        "Fock cutoff {cutoff} too small for r = {r}: tail mass {tail_mass:e} exceeds {tolerance:e}"
    )]
    CutoffTooSmall {
        cutoff: usize,
        r: f64,
        tail_mass: f64,
        tolerance: f64,
    },

    #[error("heralding {n_detected} photons has probability {probability:e}")]
    ZeroProbability { n_detected: usize, probability: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
