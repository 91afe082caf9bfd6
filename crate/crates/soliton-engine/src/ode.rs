//! Adaptive embedded Runge-Kutta integration of the radial soliton
//! equation F''' = 3cF'F'' − c²F'³, with dense output.
//!
//! Dormand-Prince 5(4) with the standard quartic interpolant. Integration
//! halts (without erroring) when F' crosses zero: the classified solutions
//! live where F' > 0, so leaving that region is a domain exit, not a
//! failure.

use std::sync::Arc;

use warped_geometry::RadialField;

use crate::error::SolitonError;
use crate::residuals::soliton_ode_rhs;

/// Step-size controller settings.
#[derive(Debug, Clone, Copy)]
pub struct OdeController {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step; chosen from the interval length when absent.
    pub h_initial: Option<f64>,
    pub max_steps: usize,
}

impl Default for OdeController {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            h_initial: None,
            max_steps: 1_000_000,
        }
    }
}

/// Why the integration stopped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OdeOutcome {
    /// Reached the end of the requested interval.
    Completed,
    /// F' crossed zero at the recorded radius.
    DomainExit { r: f64 },
}

type State = [f64; 3];

#[derive(Debug)]
struct Step {
    r: f64,
    h: f64,
    y: State,
    /// Stage derivatives retained for interpolation.
    k: [State; 7],
}

/// Dense-output solution of the soliton equation.
#[derive(Debug)]
pub struct OdeSolution {
    c: f64,
    start: f64,
    end: f64,
    steps: Vec<Step>,
    outcome: OdeOutcome,
    accepted: usize,
    rejected: usize,
}

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

/// Error weights: difference between the 5th- and embedded 4th-order rows.
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

/// Interpolant coefficients: bᵢ(θ) = Σⱼ P[i][j]·θ^{j+1}.
const P: [[f64; 4]; 7] = [
    [
        1.0,
        -8048581381.0 / 2820520608.0,
        8663915743.0 / 2820520608.0,
        -12715105075.0 / 11282082432.0,
    ],
    [0.0, 0.0, 0.0, 0.0],
    [
        0.0,
        131558114200.0 / 32700410799.0,
        -68118460800.0 / 10900136933.0,
        87487479700.0 / 32700410799.0,
    ],
    [
        0.0,
        -1754552775.0 / 470086768.0,
        14199869525.0 / 1410260304.0,
        -10690763975.0 / 1880347072.0,
    ],
    [
        0.0,
        127303824393.0 / 49829197408.0,
        -318862633887.0 / 49829197408.0,
        701980252875.0 / 199316789632.0,
    ],
    [
        0.0,
        -282668133.0 / 205662961.0,
        2019193451.0 / 616988883.0,
        -1453857185.0 / 822651844.0,
    ],
    [
        0.0,
        40617522.0 / 29380423.0,
        -110615467.0 / 29380423.0,
        69997945.0 / 29380423.0,
    ],
];

fn rhs(y: State, c: f64) -> State {
    [y[1], y[2], soliton_ode_rhs(y, c)]
}

fn axpy(y: &State, h: f64, coeffs: &[f64], k: &[State]) -> State {
    let mut out = *y;
    for (c, ki) in coeffs.iter().zip(k) {
        if *c != 0.0 {
            for d in 0..3 {
                out[d] += h * c * ki[d];
            }
        }
    }
    out
}

/// Integrate the soliton equation from `init = (F, F', F'')` at the left
/// end of `interval`. Requires F'(r₀) > 0.
pub fn integrate_soliton_ode(
    c: f64,
    init: State,
    interval: (f64, f64),
    controller: &OdeController,
) -> Result<OdeSolution, SolitonError> {
    let (r0, r1) = interval;
    if !(r1 > r0) {
        return Err(SolitonError::InvalidParameters(format!(
            "empty integration interval [{r0}, {r1}]"
        )));
    }
    if !(init[1] > 0.0) {
        return Err(SolitonError::InvalidParameters(format!(
            "initial slope must be positive, got F'({r0}) = {}",
            init[1]
        )));
    }

    let span = r1 - r0;
    let mut h = controller.h_initial.unwrap_or(span * 1e-4).min(span);
    let h_min = span * 1e-14;
    let mut r = r0;
    let mut y = init;
    let mut k1 = rhs(y, c);

    let mut solution = OdeSolution {
        c,
        start: r0,
        end: r0,
        steps: Vec::new(),
        outcome: OdeOutcome::Completed,
        accepted: 0,
        rejected: 0,
    };

    let mut total = 0usize;
    while r < r1 {
        total += 1;
        if total > controller.max_steps {
            return Err(SolitonError::StepLimit { r });
        }
        if h < h_min {
            return Err(SolitonError::Stiffness { r, h });
        }
        h = h.min(r1 - r);

        let mut k = [[0.0; 3]; 7];
        k[0] = k1;
        for stage in 0..6 {
            let y_stage = axpy(&y, h, &A[stage][..=stage], &k[..=stage]);
            k[stage + 1] = rhs(y_stage, c);
        }
        // 5th-order solution is the last stage evaluation point (FSAL)
        let y_new = axpy(&y, h, &A[5], &k[..6]);

        let mut err_norm = 0.0f64;
        for d in 0..3 {
            let mut err = 0.0;
            for (e, ki) in E.iter().zip(&k) {
                err += e * ki[d];
            }
            err *= h;
            let scale = controller.atol + controller.rtol * y[d].abs().max(y_new[d].abs());
            err_norm += (err / scale) * (err / scale);
        }
        err_norm = (err_norm / 3.0).sqrt();

        if err_norm <= 1.0 {
            let step = Step { r, h, y, k };
            r += h;
            y = y_new;
            k1 = k[6];
            solution.steps.push(step);
            solution.end = r;
            solution.accepted += 1;

            // halt once F' stops being positive anywhere in the step
            if let Some(exit) = slope_crossing(solution.steps.last().unwrap()) {
                solution.end = exit;
                solution.outcome = OdeOutcome::DomainExit { r: exit };
                break;
            }
        } else {
            solution.rejected += 1;
        }

        let factor = if err_norm == 0.0 {
            5.0
        } else {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }

    Ok(solution)
}

/// Locate the first zero of F' inside an accepted step, if any.
fn slope_crossing(step: &Step) -> Option<f64> {
    let slope_at = |theta: f64| interpolate(step, theta)[1];
    let mut prev_theta = 0.0;
    let mut prev = slope_at(0.0);
    for i in 1..=16 {
        let theta = i as f64 / 16.0;
        let value = slope_at(theta);
        if prev > 0.0 && value <= 0.0 {
            // bisect to the crossing
            let (mut lo, mut hi) = (prev_theta, theta);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if slope_at(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(step.r + 0.5 * (lo + hi) * step.h);
        }
        prev_theta = theta;
        prev = value;
    }
    None
}

fn interpolate(step: &Step, theta: f64) -> State {
    let mut out = step.y;
    for (i, ki) in step.k.iter().enumerate() {
        let mut b = 0.0;
        let mut theta_pow = theta;
        for p in P[i] {
            b += p * theta_pow;
            theta_pow *= theta;
        }
        for d in 0..3 {
            out[d] += step.h * b * ki[d];
        }
    }
    out
}

impl OdeSolution {
    pub fn outcome(&self) -> OdeOutcome {
        self.outcome
    }

    /// Interval actually covered: [r₀, exit or r₁].
    pub fn covered(&self) -> (f64, f64) {
        (self.start, self.end)
    }

    pub fn accepted_steps(&self) -> usize {
        self.accepted
    }

    pub fn rejected_steps(&self) -> usize {
        self.rejected
    }

    /// Dense-output state (F, F', F'') at any radius in the covered
    /// interval; clamped to the ends outside it.
    pub fn eval(&self, r: f64) -> State {
        let r = r.clamp(self.start, self.end);
        let idx = self
            .steps
            .partition_point(|s| s.r + s.h < r)
            .min(self.steps.len() - 1);
        let step = &self.steps[idx];
        let theta = ((r - step.r) / step.h).clamp(0.0, 1.0);
        interpolate(step, theta)
    }

    /// View the solution as a radial field. F''' comes from the equation's
    /// right-hand side and F'''' from its derivative along solutions.
    pub fn to_radial_field(self: Arc<Self>) -> Result<RadialField, SolitonError> {
        let c = self.c;
        let (s0, s1, s2, s3) = (
            Arc::clone(&self),
            Arc::clone(&self),
            Arc::clone(&self),
            Arc::clone(&self),
        );
        let covered = self.covered();
        let s4 = self;
        Ok(RadialField::closed_form(
            "ode-dense-output",
            covered,
            move |r| s0.eval(r)[0],
            move |r| s1.eval(r)[1],
            move |r| s2.eval(r)[2],
            move |r| soliton_ode_rhs(s3.eval(r), c),
            move |r| {
                let y = s4.eval(r);
                let f3 = soliton_ode_rhs(y, c);
                3.0 * c * (y[2] * y[2] + y[1] * f3) - 3.0 * c * c * y[1] * y[1] * y[2]
            },
        )?)
    }
}
