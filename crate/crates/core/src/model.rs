//! Chain Hamiltonian, drive profiles, and matrix-free action on state vectors.
//!
//! The model is an N-qubit chain with an N-wise coupling (a tensor product of
//! one Pauli operator over every site) and a time-dependent detuning applied
//! to the first qubit only:
//!
//! ```text
//! H(tau) = w1(tau) * sz_1  +  gx * X X...X  +  gy * Y Y...Y  +  gz * Z Z...Z
//! ```
//!
//! Units: hbar = 1 throughout. For linear ramps, time is the dimensionless
//! tau in which the detuning is `sqrt(alpha) * tau / 2`; the propagator
//! rescales all energies by `sqrt(alpha)` so that the effective two-level
//! equation has detuning `tau/2` and coupling `sqrt(lambda)`,
//! `lambda = gx^2 / alpha`. Constant and tangent drives carry no extra scale.
//!
//! Bit convention: basis index `b` has bit k = 1 iff spin k is in `|+>`
//! (sz eigenvalue +1). The driven (ancilla) spin is bit 0.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Full-space state vectors are capped at this many qubits (memory guard).
pub const MAX_QUBITS: usize = 14;

/// Tolerance on the squared-norm deviation accepted by [`StateVector`]
/// constructors.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid chain spec: {0}")]
    InvalidSpec(String),
    #[error("invalid drive window: {0}")]
    InvalidWindow(String),
    #[error("tau = {tau} outside drive window [{tau_i}, {tau_f}]")]
    OutOfWindow { tau: f64, tau_i: f64, tau_f: f64 },
    #[error("state vector has {got} amplitudes, model expects {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("state not normalized: |norm^2 - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },
    #[error("dimension too large: {n_qubits} qubits exceeds the {MAX_QUBITS}-qubit cap")]
    DimensionTooLarge { n_qubits: usize },
    #[error("invalid basis bitstring: {0}")]
    InvalidBitstring(String),
}

/// Physical description of the chain: qubit count and coupling strengths.
///
/// Energies are in natural units (hbar = 1). `gamma_x` is the N-wise
/// `X...X` coupling; `gamma_y` and `gamma_z` are the optional `Y...Y` and
/// `Z...Z` extensions and default to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub n_qubits: usize,
    pub gamma_x: f64,
    #[serde(default)]
    pub gamma_y: f64,
    #[serde(default)]
    pub gamma_z: f64,
}

impl ChainSpec {
    pub fn new(n_qubits: usize, gamma_x: f64) -> Self {
        Self { n_qubits, gamma_x, gamma_y: 0.0, gamma_z: 0.0 }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.n_qubits < 2 {
            return Err(ModelError::InvalidSpec(format!(
                "n_qubits = {} but the pair structure requires at least 2 spins",
                self.n_qubits
            )));
        }
        for (name, g) in [
            ("gamma_x", self.gamma_x),
            ("gamma_y", self.gamma_y),
            ("gamma_z", self.gamma_z),
        ] {
            if !g.is_finite() {
                return Err(ModelError::InvalidSpec(format!("{name} is not finite")));
            }
        }
        Ok(())
    }

    /// True when both flip couplings vanish and the dynamics is diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.gamma_x == 0.0 && self.gamma_y == 0.0
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }
}

/// Time-dependent detuning w1(tau) applied to the ancilla spin.
///
/// All windows are in the internal time variable tau; `value` returns the
/// physical detuning (hbar = 1). Linear kinds carry the ramp slope `alpha`
/// and scale all energies by `sqrt(alpha)` in the propagator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DriveProfile {
    /// w1 = sqrt(alpha) * tau / 2 on a window with tau_i = -tau_f.
    LinearSymmetric { alpha: f64, tau_i: f64, tau_f: f64 },
    /// Same ramp started at the crossing: tau_i = 0.
    LinearAsymmetric { alpha: f64, tau_i: f64, tau_f: f64 },
    /// w1 = tangent_scale * tan(pi/2 * tau / tau_f), argument clamped to
    /// |arg| <= pi/2 - 1e-6. The coupling is left constant (unscaled).
    Tangent { tangent_scale: f64, tau_i: f64, tau_f: f64 },
    /// w1 = omega0 at all times. Enables the analytic Rabi check.
    Constant { omega0: f64, tau_i: f64, tau_f: f64 },
}

/// Clamp bound on the tangent-drive argument, `pi/2 - 1e-6`.
pub const TANGENT_ARG_CLAMP: f64 = std::f64::consts::FRAC_PI_2 - 1e-6;

impl DriveProfile {
    pub fn window(&self) -> (f64, f64) {
        match *self {
            DriveProfile::LinearSymmetric { tau_i, tau_f, .. }
            | DriveProfile::LinearAsymmetric { tau_i, tau_f, .. }
            | DriveProfile::Tangent { tau_i, tau_f, .. }
            | DriveProfile::Constant { tau_i, tau_f, .. } => (tau_i, tau_f),
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let (tau_i, tau_f) = self.window();
        if !(tau_i.is_finite() && tau_f.is_finite()) {
            return Err(ModelError::InvalidWindow("window bounds must be finite".into()));
        }
        if tau_i >= tau_f {
            return Err(ModelError::InvalidWindow(format!(
                "tau_i = {tau_i} must be strictly less than tau_f = {tau_f}"
            )));
        }
        match *self {
            DriveProfile::LinearSymmetric { alpha, tau_i, tau_f } => {
                if tau_i != -tau_f {
                    return Err(ModelError::InvalidWindow(format!(
                        "symmetric ramp requires tau_i = -tau_f, got [{tau_i}, {tau_f}]"
                    )));
                }
                if !(alpha > 0.0) {
                    return Err(ModelError::InvalidWindow(format!(
                        "linear ramp requires alpha > 0, got {alpha}"
                    )));
                }
            }
            DriveProfile::LinearAsymmetric { alpha, tau_i, .. } => {
                if tau_i != 0.0 {
                    return Err(ModelError::InvalidWindow(format!(
                        "asymmetric ramp requires tau_i = 0, got {tau_i}"
                    )));
                }
                if !(alpha > 0.0) {
                    return Err(ModelError::InvalidWindow(format!(
                        "linear ramp requires alpha > 0, got {alpha}"
                    )));
                }
            }
            DriveProfile::Tangent { tangent_scale, tau_f, .. } => {
                if !(tangent_scale > 0.0) {
                    return Err(ModelError::InvalidWindow(format!(
                        "tangent drive requires tangent_scale > 0, got {tangent_scale}"
                    )));
                }
                if !(tau_f > 0.0) {
                    return Err(ModelError::InvalidWindow(format!(
                        "tangent drive requires tau_f > 0, got {tau_f}"
                    )));
                }
            }
            DriveProfile::Constant { omega0, .. } => {
                if !omega0.is_finite() {
                    return Err(ModelError::InvalidWindow("omega0 must be finite".into()));
                }
            }
        }
        Ok(())
    }

    /// Physical detuning w1 at time `tau` (hbar = 1).
    ///
    /// Linear kinds return `sqrt(alpha) * tau / 2`; the tangent argument is
    /// clamped at `|pi/2 * tau / tau_f| <= pi/2 - 1e-6`.
    pub fn value(&self, tau: f64) -> Result<f64, ModelError> {
        let (tau_i, tau_f) = self.window();
        if tau < tau_i || tau > tau_f {
            return Err(ModelError::OutOfWindow { tau, tau_i, tau_f });
        }
        Ok(self.value_unchecked(tau))
    }

    /// Same as [`value`](Self::value) without the window check; used by the
    /// propagator, whose step times stay inside the window by construction.
    pub fn value_unchecked(&self, tau: f64) -> f64 {
        match *self {
            DriveProfile::LinearSymmetric { alpha, .. }
            | DriveProfile::LinearAsymmetric { alpha, .. } => alpha.sqrt() * tau / 2.0,
            DriveProfile::Tangent { tangent_scale, tau_f, .. } => {
                let arg = (std::f64::consts::FRAC_PI_2 * tau / tau_f)
                    .clamp(-TANGENT_ARG_CLAMP, TANGENT_ARG_CLAMP);
                tangent_scale * arg.tan()
            }
            DriveProfile::Constant { omega0, .. } => omega0,
        }
    }

    /// Energy rescaling applied when integrating in tau: `sqrt(alpha)` for
    /// linear ramps, 1 otherwise.
    pub fn energy_scale(&self) -> f64 {
        match *self {
            DriveProfile::LinearSymmetric { alpha, .. }
            | DriveProfile::LinearAsymmetric { alpha, .. } => alpha.sqrt(),
            _ => 1.0,
        }
    }

    /// Ramp slope for linear kinds.
    pub fn alpha(&self) -> Option<f64> {
        match *self {
            DriveProfile::LinearSymmetric { alpha, .. }
            | DriveProfile::LinearAsymmetric { alpha, .. } => Some(alpha),
            _ => None,
        }
    }
}

/// A normalized 2^N-amplitude state in the computational basis.
///
/// Bit k of the basis index is 1 iff spin k is in `|+>`; the ancilla is
/// bit 0.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state `|b>`.
    pub fn basis(n_qubits: usize, basis_index: usize) -> Result<Self, ModelError> {
        if n_qubits > MAX_QUBITS {
            return Err(ModelError::DimensionTooLarge { n_qubits });
        }
        let dim = 1usize << n_qubits;
        if basis_index >= dim {
            return Err(ModelError::InvalidBitstring(format!(
                "basis index {basis_index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[basis_index] = Complex64::ONE;
        Ok(Self { n_qubits, amplitudes })
    }

    /// Basis state from a spin string such as `"--+-"`.
    ///
    /// The leftmost character is spin 1 of the chain (bit 0); `+` means
    /// `|+>` and `-` (ASCII hyphen or U+2212 minus) means `|->`.
    pub fn from_bitstring(s: &str) -> Result<Self, ModelError> {
        let n_qubits = s.chars().count();
        if n_qubits < 2 {
            return Err(ModelError::InvalidBitstring(format!(
                "bitstring {s:?} has fewer than 2 spins"
            )));
        }
        if n_qubits > MAX_QUBITS {
            return Err(ModelError::DimensionTooLarge { n_qubits });
        }
        let mut index = 0usize;
        for (k, c) in s.chars().enumerate() {
            match c {
                '+' => index |= 1 << k,
                '-' | '\u{2212}' => {}
                other => {
                    return Err(ModelError::InvalidBitstring(format!(
                        "character {other:?} at position {k}; expected '+' or '-'"
                    )))
                }
            }
        }
        Self::basis(n_qubits, index)
    }

    /// Wrap raw amplitudes, enforcing the power-of-two length and
    /// normalization within [`NORM_TOL`].
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, ModelError> {
        let dim = amplitudes.len();
        if dim < 4 || !dim.is_power_of_two() {
            return Err(ModelError::DimensionMismatch { got: dim, expected: dim.next_power_of_two().max(4) });
        }
        let n_qubits = dim.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(ModelError::DimensionTooLarge { n_qubits });
        }
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let deviation = (norm2 - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(ModelError::NotNormalized { deviation });
        }
        Ok(Self { n_qubits, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, basis_index: usize) -> Complex64 {
        self.amplitudes[basis_index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// The basis index of the single nonzero amplitude, if this is a
    /// computational basis state.
    pub fn as_basis_index(&self) -> Option<usize> {
        let mut found = None;
        for (b, a) in self.amplitudes.iter().enumerate() {
            if a.norm_sqr() > 0.0 {
                if found.is_some() {
                    return None;
                }
                found = Some(b);
            }
        }
        found
    }
}

/// Anything that can act as H(tau) on a full-space amplitude slice.
///
/// [`ChainModel`] is the production implementation; tests inject modified
/// actions through this trait to exercise negative controls.
pub trait HamiltonianAction {
    fn n_qubits(&self) -> usize;

    /// Write `H(tau) * psi` into `out`. Both slices have length 2^N.
    fn apply(&self, tau: f64, psi: &[Complex64], out: &mut [Complex64]);

    fn dim(&self) -> usize {
        1 << self.n_qubits()
    }
}

/// Validated bundle of a [`ChainSpec`] and a [`DriveProfile`].
///
/// Immutable after construction; all methods are pure and the model can be
/// shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainModel {
    spec: ChainSpec,
    drive: DriveProfile,
}

impl ChainModel {
    pub fn new(spec: ChainSpec, drive: DriveProfile) -> Result<Self, ModelError> {
        spec.validate()?;
        drive.validate()?;
        Ok(Self { spec, drive })
    }

    pub fn spec(&self) -> &ChainSpec {
        &self.spec
    }

    pub fn drive(&self) -> &DriveProfile {
        &self.drive
    }

    pub fn n_qubits(&self) -> usize {
        self.spec.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    /// Physical detuning at `tau` (window-checked).
    pub fn drive_value(&self, tau: f64) -> Result<f64, ModelError> {
        self.drive.value(tau)
    }

    /// Effective adiabaticity parameter `|c|^2 / alpha` for linear ramps,
    /// where `|c|^2 = gamma_x^2 + gamma_y^2` is the squared flip-coupling
    /// magnitude entering each pair for odd N (see `subspace` for even N).
    pub fn lambda(&self) -> Option<f64> {
        self.drive.alpha().map(|alpha| {
            (self.spec.gamma_x.powi(2) + self.spec.gamma_y.powi(2)) / alpha
        })
    }

    /// Matrix-free `H(tau) * psi` with the physical detuning at `tau`.
    pub fn apply_hamiltonian(&self, tau: f64, psi: &StateVector) -> Result<StateVector, ModelError> {
        if psi.dim() != self.dim() {
            return Err(ModelError::DimensionMismatch { got: psi.dim(), expected: self.dim() });
        }
        let w = self.drive.value(tau)?;
        let mut out = vec![Complex64::ZERO; self.dim()];
        self.apply_with_detuning(w, psi.amplitudes(), &mut out);
        // H psi is generally unnormalized; bypass the StateVector norm check.
        Ok(StateVector { n_qubits: self.spec.n_qubits, amplitudes: out })
    }

    /// Core kernel: `out = [w*sz_1 + gx*X..X + gy*Y..Y + gz*Z..Z] psi`
    /// for an arbitrary detuning value `w`.
    ///
    /// Per basis index b: the sz_1 term contributes `+w` when bit 0 is set
    /// and `-w` otherwise; Z..Z contributes `gz * (-1)^(zero bits of b)`;
    /// X..X couples b to its fully flipped partner with weight `gx`; Y..Y does
    /// the same with weight `gy * (-i)^N * (-1)^popcount(source)`.
    pub fn apply_with_detuning(&self, w: f64, psi: &[Complex64], out: &mut [Complex64]) {
        let n = self.spec.n_qubits;
        let dim = 1usize << n;
        debug_assert_eq!(psi.len(), dim);
        debug_assert_eq!(out.len(), dim);
        let mask = dim - 1;
        let gx = self.spec.gamma_x;
        let gy = self.spec.gamma_y;
        let gz = self.spec.gamma_z;

        // (-i)^N cycles with period 4.
        let minus_i_pow_n = match n % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };

        for b in 0..dim {
            let src = b ^ mask;
            // Diagonal part evaluated at the destination index b.
            let sz1 = if b & 1 == 1 { w } else { -w };
            let zz = if (n - (b as u64).count_ones() as usize) % 2 == 0 { gz } else { -gz };
            let mut acc = psi[b] * (sz1 + zz);
            // Flip part: contributions arriving at b from its partner.
            if gx != 0.0 {
                acc += psi[src] * gx;
            }
            if gy != 0.0 {
                let sign = if (src as u64).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                acc += psi[src] * (minus_i_pow_n * (gy * sign));
            }
            out[b] = acc;
        }
    }
}

impl HamiltonianAction for ChainModel {
    fn n_qubits(&self) -> usize {
        self.spec.n_qubits
    }

    fn apply(&self, tau: f64, psi: &[Complex64], out: &mut [Complex64]) {
        let w = self.drive.value_unchecked(tau);
        self.apply_with_detuning(w, psi, out);
    }
}
