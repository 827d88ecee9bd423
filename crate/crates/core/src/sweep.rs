//! Adiabatic control schedules `g_z(t)`.
//!
//! The sensitivity `χ = |(ξ₂−ξ₁)² / ⟨ψ₁|∂(H/J_I)/∂g_z|ψ₂⟩|` sets the local scan
//! speed. Only the first excited triplet level enters. Schedules are designed
//! in dimensionless time `u = J_I·t`, where constant adiabaticity reads
//! `dg_z/du = k·χ(g_z)`; `k` absorbs the `J_I²` normalization.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::decoherence::{evolve_scan, DecoherenceParams};
use crate::error::{Error, Result};
use crate::linalg::{DensityOperator, Ket};
use crate::model::{ground_state, triplet_block, triplet_eigensystem_analytic, ModelParams, CLOSED_FORM_MIN_GX};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::pulse::{compile_step, segment_unitary, HardwareParams};

/// Returned where the coupling matrix element underflows.
pub const CHI_CAP: f64 = 1e6;
pub const MATRIX_ELEMENT_FLOOR: f64 = 1e-14;

pub const DEFAULT_G_X: f64 = 0.129;
/// Scan duration of the 60-step experiment, s.
pub const DEFAULT_SCAN_TIME: f64 = 0.110;
pub const DEFAULT_STEPS: usize = 60;

const RAMP_TABLE_INTERVALS: usize = 1024;

/// Adiabaticity sensitivity at `(g_x, g_z)`.
pub fn chi(g_x: f64, g_z: f64) -> Result<f64> {
    let sys = triplet_eigensystem_analytic(g_x, g_z)?;
    let d_h = triplet_block(0.0, 1.0) - triplet_block(0.0, 0.0);
    let element = sys.states[0].inner(&d_h.apply(&sys.states[1])).norm();
    if element < MATRIX_ELEMENT_FLOOR {
        return Ok(CHI_CAP);
    }
    let gap = sys.xi[1] - sys.xi[0];
    Ok((gap * gap / element).min(CHI_CAP))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdiabaticityProfile {
    /// `(g_z, χ)` pairs.
    pub samples: Vec<(f64, f64)>,
}

impl AdiabaticityProfile {
    /// Sample positions of strict local minima of `χ`.
    pub fn local_minima(&self) -> Vec<f64> {
        self.samples.windows(3).filter(|w| w[1].1 < w[0].1 && w[1].1 < w[2].1).map(|w| w[1].0).collect()
    }
}

pub fn adiabaticity_profile(g_x: f64, g_lo: f64, g_hi: f64, points: usize) -> Result<AdiabaticityProfile> {
    if points < 2 {
        return Err(Error::InvalidParameter("profile needs at least two points"));
    }
    let samples = (0..points)
        .map(|i| {
            let g = g_lo + (g_hi - g_lo) * i as f64 / (points - 1) as f64;
            chi(g_x, g).map(|c| (g, c))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AdiabaticityProfile { samples })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Knot {
    /// s
    pub t: f64,
    pub g_z: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScheduleMode {
    Continuous,
    /// `steps + 1` knots at the step boundaries.
    Discretized {
        steps: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSchedule {
    pub knots: Vec<Knot>,
    pub g_x: f64,
    pub mode: ScheduleMode,
    /// s
    pub total_time: f64,
}

impl SweepSchedule {
    pub fn new(knots: Vec<Knot>, g_x: f64, mode: ScheduleMode, total_time: f64) -> Result<Self> {
        if !(total_time > 0.0 && total_time.is_finite()) {
            return Err(Error::NonPositiveTime);
        }
        if knots.len() < 2 {
            return Err(Error::InvalidParameter("a schedule needs at least two knots"));
        }
        if knots.windows(2).any(|w| !(w[1].t > w[0].t)) {
            return Err(Error::InvalidParameter("knot times must be strictly increasing"));
        }
        if let ScheduleMode::Discretized { steps } = mode {
            if knots.len() != steps + 1 {
                return Err(Error::InvalidParameter("discretized schedule needs steps + 1 knots"));
            }
        }
        Ok(Self { knots, g_x, mode, total_time })
    }

    pub fn steps(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn g_start(&self) -> f64 {
        self.knots[0].g_z
    }

    pub fn g_end(&self) -> f64 {
        self.knots[self.knots.len() - 1].g_z
    }

    pub fn is_monotone(&self) -> bool {
        let up = self.g_end() >= self.g_start();
        self.knots.windows(2).all(|w| if up { w[1].g_z >= w[0].g_z } else { w[1].g_z <= w[0].g_z })
    }

    /// Monotone piecewise-cubic (Fritsch–Carlson) interpolation of `g_z(t)`.
    pub fn g_at(&self, t: f64) -> f64 {
        let k = &self.knots;
        let n = k.len();
        if t <= k[0].t {
            return k[0].g_z;
        }
        if t >= k[n - 1].t {
            return k[n - 1].g_z;
        }
        let i = k.partition_point(|p| p.t <= t) - 1;
        let h = k[i + 1].t - k[i].t;
        let slope = |j: usize| (k[j + 1].g_z - k[j].g_z) / (k[j + 1].t - k[j].t);
        let tangent = |j: usize| -> f64 {
            if j == 0 {
                return slope(0);
            }
            if j == n - 1 {
                return slope(n - 2);
            }
            let (a, b) = (slope(j - 1), slope(j));
            if a * b <= 0.0 {
                return 0.0;
            }
            let (h0, h1) = (k[j].t - k[j - 1].t, k[j + 1].t - k[j].t);
            let (w0, w1) = (2.0 * h1 + h0, h1 + 2.0 * h0);
            (w0 + w1) / (w0 / a + w1 / b)
        };
        let s = (t - k[i].t) / h;
        let (m0, m1) = (tangent(i), tangent(i + 1));
        let (y0, y1) = (k[i].g_z, k[i + 1].g_z);
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * h * m0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * h * m1
    }

    /// Same functional dependence sampled at `steps` uniform time steps.
    pub fn resample_uniform(&self, steps: usize) -> Result<SweepSchedule> {
        uniform_schedule(self.g_x, self.total_time, steps, self.g_start(), self.g_end(), |t| self.g_at(t))
    }

    pub fn step_duration(&self, step: usize) -> f64 {
        self.knots[step + 1].t - self.knots[step].t
    }
}

fn uniform_schedule(
    g_x: f64,
    total_time: f64,
    steps: usize,
    g_start: f64,
    g_end: f64,
    g_at: impl Fn(f64) -> f64,
) -> Result<SweepSchedule> {
    if steps == 0 {
        return Err(Error::InvalidParameter("need at least one step"));
    }
    let knots = (0..=steps)
        .map(|m| {
            let t = total_time * (m as f64 / steps as f64);
            let g_z = if m == 0 {
                g_start
            } else if m == steps {
                g_end
            } else {
                g_at(t)
            };
            Knot { t, g_z }
        })
        .collect();
    SweepSchedule::new(knots, g_x, ScheduleMode::Discretized { steps }, total_time)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    whole: f64,
    fm: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, fa, m, fm, left, flm, eps / 2.0, depth - 1)
        + simpson_step(f, m, fm, b, fb, right, frm, eps / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature with absolute tolerance `eps`.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, fa, b, fb, whole, fm, eps, 20)
}

/// Constant-adiabaticity sweep `dg_z/du = k·χ(g_z)` solved exactly through
/// `t(g) = T · ∫dg/χ / ∫_total dg/χ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantAdiabaticityRamp {
    g_x: f64,
    g_start: f64,
    g_end: f64,
    total_time: f64,
    j_i: f64,
    cumulative: Vec<f64>,
}

impl ConstantAdiabaticityRamp {
    pub fn new(g_x: f64, g_start: f64, g_end: f64, total_time: f64, j_i: f64) -> Result<Self> {
        if !(total_time > 0.0 && total_time.is_finite()) {
            return Err(Error::NonPositiveTime);
        }
        if g_x.abs() < CLOSED_FORM_MIN_GX {
            return Err(Error::DegenerateFormulation("chi is undefined without a transverse field"));
        }
        if !(j_i > 0.0) {
            return Err(Error::InvalidParameter("coupling j_i must be positive"));
        }
        if g_start == g_end || !g_start.is_finite() || !g_end.is_finite() {
            return Err(Error::InvalidParameter("scan needs distinct finite endpoints"));
        }
        let mut ramp = Self { g_x, g_start, g_end, total_time, j_i, cumulative: Vec::new() };
        let h = ramp.length() / RAMP_TABLE_INTERVALS as f64;
        let mut acc = 0.0;
        ramp.cumulative.push(0.0);
        for i in 0..RAMP_TABLE_INTERVALS {
            acc += ramp.integral(i as f64 * h, (i + 1) as f64 * h);
            ramp.cumulative.push(acc);
        }
        Ok(ramp)
    }

    fn length(&self) -> f64 {
        (self.g_end - self.g_start).abs()
    }

    fn direction(&self) -> f64 {
        if self.g_end > self.g_start {
            1.0
        } else {
            -1.0
        }
    }

    fn g_of(&self, x: f64) -> f64 {
        self.g_start + self.direction() * x
    }

    fn inverse_chi(&self, x: f64) -> f64 {
        1.0 / chi(self.g_x, self.g_of(x)).expect("g_x checked at construction")
    }

    fn integral(&self, a: f64, b: f64) -> f64 {
        let scale = (b - a).abs() * self.inverse_chi(0.5 * (a + b));
        adaptive_simpson(|x| self.inverse_chi(x), a, b, 1e-13 * scale.max(1e-300))
    }

    fn table_step(&self) -> f64 {
        self.length() / RAMP_TABLE_INTERVALS as f64
    }

    /// `∫ dg/χ` along the path from `g_start` to path length `x`.
    fn accumulated(&self, x: f64) -> f64 {
        let h = self.table_step();
        let i = ((x / h) as usize).min(RAMP_TABLE_INTERVALS - 1);
        self.cumulative[i] + self.integral(i as f64 * h, x)
    }

    pub fn total_integral(&self) -> f64 {
        self.cumulative[RAMP_TABLE_INTERVALS]
    }

    /// `k` in `dg_z/du = ±k·χ`, with `u = J_I·t`.
    pub fn rate_constant(&self) -> f64 {
        self.total_integral() / (self.j_i * self.total_time)
    }

    pub fn time_at(&self, g_z: f64) -> f64 {
        let x = ((g_z - self.g_start) * self.direction()).clamp(0.0, self.length());
        self.total_time * self.accumulated(x) / self.total_integral()
    }

    pub fn g_at(&self, t: f64) -> f64 {
        let target = (t / self.total_time).clamp(0.0, 1.0) * self.total_integral();
        let h = self.table_step();
        let i = (self.cumulative.partition_point(|&c| c <= target).max(1) - 1).min(RAMP_TABLE_INTERVALS - 1);
        let (lo, hi) = (i as f64 * h, (i + 1) as f64 * h);
        let (c0, c1) = (self.cumulative[i], self.cumulative[i + 1]);
        let mut x = lo + h * ((target - c0) / (c1 - c0)).clamp(0.0, 1.0);
        for _ in 0..40 {
            let residual = c0 + self.integral(lo, x) - target;
            let next = (x - residual / self.inverse_chi(x)).clamp(lo, hi);
            let done = (next - x).abs() <= 1e-15 * (1.0 + x.abs());
            x = next;
            if done {
                break;
            }
        }
        self.g_of(x)
    }

    /// Continuous schedule with knots evenly spaced in `g_z`.
    pub fn schedule(&self, resolution: usize) -> Result<SweepSchedule> {
        if resolution < 2 {
            return Err(Error::InvalidParameter("resolution must be at least 2"));
        }
        let knots = (0..resolution)
            .map(|i| {
                if i == 0 {
                    return Knot { t: 0.0, g_z: self.g_start };
                }
                if i == resolution - 1 {
                    return Knot { t: self.total_time, g_z: self.g_end };
                }
                let x = self.length() * i as f64 / (resolution - 1) as f64;
                Knot { t: self.total_time * self.accumulated(x) / self.total_integral(), g_z: self.g_of(x) }
            })
            .collect();
        SweepSchedule::new(knots, self.g_x, ScheduleMode::Continuous, self.total_time)
    }

    /// Uniform-time discretization of the exact ramp.
    pub fn discretize(&self, steps: usize) -> Result<SweepSchedule> {
        uniform_schedule(self.g_x, self.total_time, steps, self.g_start, self.g_end, |t| self.g_at(t))
    }
}

pub fn design_constant_adiabaticity_sweep(
    g_x: f64,
    g_start: f64,
    g_end: f64,
    total_time: f64,
    j_i: f64,
    resolution: usize,
) -> Result<SweepSchedule> {
    ConstantAdiabaticityRamp::new(g_x, g_start, g_end, total_time, j_i)?.schedule(resolution)
}

/// `g_z(t) = a·sinh(b(t − t₀)) + d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SinhScan {
    pub a: f64,
    pub b: f64,
    pub t0: f64,
    pub d: f64,
    pub g_x: f64,
    pub g_start: f64,
    pub g_end: f64,
    pub total_time: f64,
}

impl SinhScan {
    /// Fixes `a` and `d` from the endpoint conditions. `None` if the
    /// parameters overflow or are degenerate.
    pub fn through_endpoints(b: f64, t0: f64, g_x: f64, g_start: f64, g_end: f64, total_time: f64) -> Option<Self> {
        if !(b > 0.0) || !b.is_finite() || !t0.is_finite() {
            return None;
        }
        let lo = libm::sinh(-b * t0);
        let hi = libm::sinh(b * (total_time - t0));
        let span = hi - lo;
        if !(span.is_finite() && span > 0.0) {
            return None;
        }
        let a = (g_end - g_start) / span;
        let d = g_start - a * lo;
        (a.is_finite() && d.is_finite()).then_some(Self { a, b, t0, d, g_x, g_start, g_end, total_time })
    }

    pub fn g_at(&self, t: f64) -> f64 {
        self.a * libm::sinh(self.b * (t - self.t0)) + self.d
    }

    pub fn sample(&self, steps: usize) -> Result<SweepSchedule> {
        uniform_schedule(self.g_x, self.total_time, steps, self.g_start, self.g_end, |t| self.g_at(t))
    }
}

/// The functional dependence `g_z(t)` kept fixed while the step count varies.
#[derive(Clone, Debug, PartialEq)]
pub enum ScanShape {
    Sinh(SinhScan),
    /// Interpolated continuous schedule.
    Interpolated(SweepSchedule),
}

impl ScanShape {
    pub fn sample(&self, steps: usize) -> Result<SweepSchedule> {
        match self {
            ScanShape::Sinh(s) => s.sample(steps),
            ScanShape::Interpolated(s) => s.resample_uniform(steps),
        }
    }

    pub fn g_x(&self) -> f64 {
        match self {
            ScanShape::Sinh(s) => s.g_x,
            ScanShape::Interpolated(s) => s.g_x,
        }
    }
}

/// Settings for the min-fidelity schedule fit. Decoherence is always off.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityObjective {
    pub j_i: f64,
    pub hardware: HardwareParams,
    pub seed: u64,
    pub max_evaluations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitWarning {
    /// The best sinh candidate lost to the uniform-time constant-adiabaticity
    /// discretization, which is returned instead.
    OptimizationDidNotImprove,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteScan {
    pub schedule: SweepSchedule,
    pub shape: ScanShape,
    pub min_fidelity: f64,
    /// Best sinh candidate, even when it was rejected.
    pub sinh: Option<SinhScan>,
    pub sinh_min_fidelity: f64,
    pub baseline_min_fidelity: f64,
    pub warning: Option<FitWarning>,
    pub evaluations: usize,
}

/// Lowest ground-state fidelity along an ideal (noise-free) pulse-level scan,
/// starting from the exact ground state at the first knot.
pub fn ideal_min_fidelity(schedule: &SweepSchedule, j_i: f64, hw: &HardwareParams) -> Result<f64> {
    let g_x = schedule.g_x;
    let mut psi: Ket = ground_state(g_x, schedule.g_start());
    let mut worst: f64 = 1.0;
    for pair in schedule.knots.windows(2) {
        let target = ModelParams::new(g_x, pair[1].g_z, j_i)?;
        let seg = compile_step(&target, pair[1].t - pair[0].t, hw)?;
        psi = segment_unitary(&seg, hw).apply(&psi);
        let overlap = ground_state(g_x, pair[1].g_z).inner(&psi).norm_sqr();
        worst = worst.min(overlap);
    }
    Ok(worst.clamp(0.0, 1.0))
}

const LOG_BT_RANGE: (f64, f64) = (-6.0, 7.0);
const T0_RANGE: (f64, f64) = (-1.0, 2.0);

fn sinh_from(p: &[f64], continuous: &SweepSchedule) -> Option<SinhScan> {
    let (log_bt, s) = (p[0], p[1]);
    if !(LOG_BT_RANGE.0..=LOG_BT_RANGE.1).contains(&log_bt) || !(T0_RANGE.0..=T0_RANGE.1).contains(&s) {
        return None;
    }
    let t = continuous.total_time;
    SinhScan::through_endpoints(
        libm::exp(log_bt) / t,
        s * t,
        continuous.g_x,
        continuous.g_start(),
        continuous.g_end(),
        t,
    )
}

fn unit_interval(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Fits the sinh family to maximize the minimum ideal ground-state fidelity
/// over an `steps`-step scan with the continuous schedule's endpoints and
/// duration.
pub fn fit_discretized_scan(
    continuous: &SweepSchedule,
    steps: usize,
    objective: &FidelityObjective,
) -> Result<DiscreteScan> {
    if steps < 2 {
        return Err(Error::InvalidParameter("discretized scan needs at least two steps"));
    }
    let j_i = objective.j_i;
    let hw = objective.hardware;

    let baseline = continuous.resample_uniform(steps)?;
    let baseline_min_fidelity = ideal_min_fidelity(&baseline, j_i, &hw)?;

    // Start from the sinh closest to the continuous curve at the step times.
    let targets: Vec<f64> = baseline.knots.iter().map(|k| k.g_z).collect();
    let lsq_cost = |p: &[f64]| -> f64 {
        match sinh_from(p, continuous) {
            None => f64::INFINITY,
            Some(s) => {
                let sched = s.sample(steps);
                match sched {
                    Ok(sched) => sched.knots.iter().zip(&targets).map(|(k, g)| (k.g_z - g) * (k.g_z - g)).sum(),
                    Err(_) => f64::INFINITY,
                }
            }
        }
    };
    let mut start = [1.0, 0.5];
    let mut start_cost = f64::INFINITY;
    for log_bt in [0.0, 1.0, 2.0, 3.0, 4.0, 5.0] {
        for s in [0.25, 0.5, 0.75] {
            let c = lsq_cost(&[log_bt, s]);
            if c < start_cost {
                start_cost = c;
                start = [log_bt, s];
            }
        }
    }
    let lsq_opts = NelderMeadOptions { max_evaluations: 300, f_tol: 1e-12, x_tol: 1e-8 };
    let lsq = nelder_mead(lsq_cost, &start, &[0.5, 0.1], &lsq_opts);

    let mut rng = ChaCha8Rng::seed_from_u64(objective.seed);
    let x0 = [
        lsq.x[0] + 0.05 * (2.0 * unit_interval(&mut rng) - 1.0),
        lsq.x[1] + 0.02 * (2.0 * unit_interval(&mut rng) - 1.0),
    ];
    let step_sizes = [0.3 * (1.0 + 0.5 * unit_interval(&mut rng)), 0.05 * (1.0 + 0.5 * unit_interval(&mut rng))];

    let fidelity_cost = |p: &[f64]| -> f64 {
        match sinh_from(p, continuous) {
            None => 2.0,
            Some(s) => match s.sample(steps).and_then(|sched| ideal_min_fidelity(&sched, j_i, &hw)) {
                Ok(f) => -f,
                Err(_) => 2.0,
            },
        }
    };
    let opts = NelderMeadOptions { max_evaluations: objective.max_evaluations, f_tol: 1e-7, x_tol: 1e-6 };
    let best = nelder_mead(fidelity_cost, &x0, &step_sizes, &opts);
    let evaluations = lsq.evaluations + best.evaluations;

    let sinh = sinh_from(&best.x, continuous);
    let sinh_min_fidelity = if sinh.is_some() { -best.value } else { 0.0 };

    match sinh {
        Some(s) if sinh_min_fidelity >= baseline_min_fidelity => Ok(DiscreteScan {
            schedule: s.sample(steps)?,
            shape: ScanShape::Sinh(s),
            min_fidelity: sinh_min_fidelity,
            sinh,
            sinh_min_fidelity,
            baseline_min_fidelity,
            warning: None,
            evaluations,
        }),
        _ => Ok(DiscreteScan {
            schedule: baseline,
            shape: ScanShape::Interpolated(continuous.clone()),
            min_fidelity: baseline_min_fidelity,
            sinh,
            sinh_min_fidelity,
            baseline_min_fidelity,
            warning: Some(FitWarning::OptimizationDidNotImprove),
            evaluations,
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepStudyPoint {
    pub steps: usize,
    pub min_fidelity: f64,
}

/// One point of the step-count study: full pulse-level scan of `shape`
/// sampled at `steps` uniform steps.
pub fn step_study_point(
    shape: &ScanShape,
    steps: usize,
    j_i: f64,
    hw: &HardwareParams,
    decoherence: Option<&DecoherenceParams>,
) -> Result<StepStudyPoint> {
    let schedule = shape.sample(steps)?;
    let rho0 = DensityOperator::pure(&ground_state(schedule.g_x, schedule.g_start()))?;
    let off = DecoherenceParams::disabled();
    let p = decoherence.unwrap_or(&off);
    let traj = evolve_scan(&rho0, &schedule, j_i, hw, p)?;
    Ok(StepStudyPoint { steps, min_fidelity: traj.min_fidelity() })
}

/// Minimum fidelity against step count at fixed `g_z(t)`.
pub fn step_study(
    shape: &ScanShape,
    step_counts: &[usize],
    j_i: f64,
    hw: &HardwareParams,
    decoherence: Option<&DecoherenceParams>,
) -> Result<Vec<StepStudyPoint>> {
    step_counts.iter().map(|&m| step_study_point(shape, m, j_i, hw, decoherence)).collect()
}
