//! Embedded Dormand-Prince 5(4) integrator for complex state vectors.
//!
//! Plain explicit Runge-Kutta with FSAL and a standard PI-free step
//! controller. The propagator layers its own convergence contract on top
//! (re-running with tightened tolerances and halved step bound), so this
//! module only has to deliver a competent order-5 adaptive stepper.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrateError {
    #[error("step size underflow at t = {t} (needed h < {h_min:e})")]
    StepUnderflow { t: f64, h_min: f64 },
    #[error("exceeded {max_steps} steps at t = {t}")]
    MaxStepsExceeded { t: f64, max_steps: usize },
    #[error("invalid integration span [{t0}, {t1}]")]
    InvalidSpan { t0: f64, t1: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorParams {
    pub atol: f64,
    pub rtol: f64,
    /// Upper bound on the step size; also the first trial step.
    pub h_max: f64,
    /// Below this the step controller gives up.
    pub h_min: f64,
    pub max_steps: usize,
}

impl IntegratorParams {
    pub fn new(atol: f64, rtol: f64, h_max: f64) -> Self {
        Self { atol, rtol, h_max, h_min: 1e-14, max_steps: 50_000_000 }
    }
}

/// Accepted/rejected step counts and right-hand-side evaluations,
/// accumulated across calls so a multi-segment run reports totals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct StepStats {
    pub accepted: u64,
    pub rejected: u64,
    pub rhs_evals: u64,
}

// Dormand-Prince coefficients (c nodes, a matrix rows, 5th-order weights b,
// and the embedded 4th-order weights bs).
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const BS: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Workspace reused across steps and segments of one trajectory.
pub struct DormandPrince {
    k: [Vec<Complex64>; 7],
    y_stage: Vec<Complex64>,
    y_new: Vec<Complex64>,
    /// FSAL cache: when `Some(t)`, k[0] holds the derivative at time t.
    k1_at: Option<f64>,
    h: f64,
}

impl DormandPrince {
    pub fn new(dim: usize) -> Self {
        let mk = || vec![Complex64::ZERO; dim];
        Self {
            k: [mk(), mk(), mk(), mk(), mk(), mk(), mk()],
            y_stage: mk(),
            y_new: mk(),
            k1_at: None,
            h: 0.0,
        }
    }

    /// Reset the step-size memory (call when starting a new trajectory).
    pub fn reset(&mut self) {
        self.k1_at = None;
        self.h = 0.0;
    }

    /// Advance `y` from `t0` to `t1` (t1 > t0), adapting the step to the
    /// local error tolerance. `y` is updated in place.
    pub fn integrate<F>(
        &mut self,
        mut rhs: F,
        y: &mut [Complex64],
        t0: f64,
        t1: f64,
        params: &IntegratorParams,
        stats: &mut StepStats,
    ) -> Result<(), IntegrateError>
    where
        F: FnMut(f64, &[Complex64], &mut [Complex64]),
    {
        if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
            return Err(IntegrateError::InvalidSpan { t0, t1 });
        }
        let dim = y.len();
        debug_assert_eq!(self.y_stage.len(), dim);
        let mut t = t0;
        if self.h <= 0.0 {
            self.h = params.h_max;
        }
        // Reuse the FSAL derivative when the previous segment ended here.
        match self.k1_at {
            Some(tk) if tk == t => {}
            _ => {
                rhs(t, y, &mut self.k[0]);
                stats.rhs_evals += 1;
                self.k1_at = Some(t);
            }
        }

        let mut steps = 0usize;
        while t < t1 {
            steps += 1;
            if steps > params.max_steps {
                return Err(IntegrateError::MaxStepsExceeded { t, max_steps: params.max_steps });
            }
            let h = self.h.min(params.h_max).min(t1 - t);
            if h < params.h_min && t1 - t > params.h_min {
                return Err(IntegrateError::StepUnderflow { t, h_min: params.h_min });
            }

            // Stages 2..=6.
            for (row, (ai, ci)) in [
                (&A2[..], C[1]),
                (&A3[..], C[2]),
                (&A4[..], C[3]),
                (&A5[..], C[4]),
                (&A6[..], C[5]),
            ]
            .into_iter()
            .enumerate()
            {
                let stage = row + 1;
                for i in 0..dim {
                    let mut acc = Complex64::ZERO;
                    for (j, &a) in ai.iter().enumerate() {
                        acc += self.k[j][i] * a;
                    }
                    self.y_stage[i] = y[i] + acc * h;
                }
                let (head, tail) = self.k.split_at_mut(stage);
                let _ = head;
                rhs(t + ci * h, &self.y_stage, &mut tail[0]);
                stats.rhs_evals += 1;
            }

            // 5th-order solution (B[6] = 0, so k7 not needed for y_new).
            for i in 0..dim {
                let mut acc = Complex64::ZERO;
                for j in 0..6 {
                    if B[j] != 0.0 {
                        acc += self.k[j][i] * B[j];
                    }
                }
                self.y_new[i] = y[i] + acc * h;
            }
            // Stage 7 at (t + h, y_new): the embedded-error stage and the
            // FSAL derivative of the next step.
            {
                let (head, tail) = self.k.split_at_mut(6);
                let _ = head;
                rhs(t + C[6] * h, &self.y_new, &mut tail[0]);
                stats.rhs_evals += 1;
            }

            // Max-norm error estimate scaled by atol + rtol * magnitude.
            let mut err: f64 = 0.0;
            for i in 0..dim {
                let mut e = Complex64::ZERO;
                for j in 0..7 {
                    let d = B[j] - BS[j];
                    if d != 0.0 {
                        e += self.k[j][i] * d;
                    }
                }
                let scale =
                    params.atol + params.rtol * y[i].norm().max(self.y_new[i].norm());
                err = err.max((e * h).norm() / scale);
            }

            if err <= 1.0 {
                stats.accepted += 1;
                t += h;
                y.copy_from_slice(&self.y_new);
                self.k.swap(0, 6); // FSAL
                self.k1_at = Some(t);
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                self.h = (h * grow).min(params.h_max);
            } else {
                stats.rejected += 1;
                let shrink = (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
                self.h = h * shrink;
                if self.h < params.h_min {
                    return Err(IntegrateError::StepUnderflow { t, h_min: params.h_min });
                }
            }
        }
        Ok(())
    }
}
