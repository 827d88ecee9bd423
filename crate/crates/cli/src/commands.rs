//! The four experiments. Each has a compute step returning rows and a `run_*`
//! wrapper that writes them under the output directory.

use std::path::{Path, PathBuf};

use anyhow::Context;
use qpt_core::decoherence::{evolve_scan, DecoherenceParams};
use qpt_core::linalg::DensityOperator;
use qpt_core::model::{ground_state, triplet_eigensystem};
use qpt_core::observables::Trajectory;
use qpt_core::pulse::compile_step;
use qpt_core::sweep::{
    design_constant_adiabaticity_sweep, fit_discretized_scan, step_study_point, FidelityObjective, FitWarning, Knot,
    ScanShape, ScheduleMode, SweepSchedule,
};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, ScheduleKind};
use crate::records::{write_csv, EigenRow, KnotRow, SegmentRow, StepStudyRow, TrajectoryRow};

pub const EIGEN_SCAN_FILE: &str = "eigen_scan.csv";
pub const SWEEP_CONTINUOUS_FILE: &str = "sweep_continuous.csv";
pub const SWEEP_DISCRETE_FILE: &str = "sweep_discrete.csv";
pub const SEGMENTS_FILE: &str = "pulse_segments.csv";
pub const TRAJECTORY_FILE: &str = "trajectory.csv";
pub const STEP_STUDY_FILE: &str = "step_study.csv";

/// Non-fatal conditions worth a line on stderr.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Notes(pub Vec<String>);

impl Notes {
    fn push(&mut self, s: impl Into<String>) {
        self.0.push(s.into());
    }
}

pub fn eigen_scan(cfg: &ExperimentConfig) -> Vec<EigenRow> {
    let (lo, hi) = (cfg.g_start.min(cfg.g_end), cfg.g_start.max(cfg.g_end));
    let n = cfg.eigen_scan_points;
    (0..n)
        .map(|i| {
            let g_z = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            let sys = triplet_eigensystem(cfg.g_x, g_z);
            let g = sys.ground();
            EigenRow { g_z, energies: sys.xi, amplitudes: [g.get(0).re, g.get(1).re, g.get(2).re] }
        })
        .collect()
}

/// A designed scan: the continuous reference curve, the `M`-step schedule
/// actually run and the shape used when `M` is varied.
#[derive(Clone, Debug, PartialEq)]
pub struct Design {
    pub continuous: SweepSchedule,
    pub discrete: SweepSchedule,
    pub shape: ScanShape,
    pub notes: Notes,
}

fn linear_schedule(cfg: &ExperimentConfig) -> anyhow::Result<SweepSchedule> {
    let knots = vec![Knot { t: 0.0, g_z: cfg.g_start }, Knot { t: cfg.total_time(), g_z: cfg.g_end }];
    Ok(SweepSchedule::new(knots, cfg.g_x, ScheduleMode::Continuous, cfg.total_time())?)
}

pub fn design(cfg: &ExperimentConfig) -> anyhow::Result<Design> {
    let mut notes = Notes::default();
    if cfg.model()?.large_transverse_field() {
        notes.push(format!("transverse field g_x = {} is outside the small-field regime", cfg.g_x));
    }
    let hw = cfg.hardware()?;
    let j_i = cfg.j_i();
    let continuous = match cfg.schedule_kind {
        ScheduleKind::Uniform => linear_schedule(cfg)?,
        _ => design_constant_adiabaticity_sweep(
            cfg.g_x,
            cfg.g_start,
            cfg.g_end,
            cfg.total_time(),
            j_i,
            cfg.design_resolution,
        )?,
    };
    let (discrete, shape) = match cfg.schedule_kind {
        ScheduleKind::SinhOptimized => {
            let objective =
                FidelityObjective { j_i, hardware: hw, seed: cfg.seed, max_evaluations: cfg.optimizer_max_evaluations };
            let fit = fit_discretized_scan(&continuous, cfg.steps, &objective)?;
            if fit.warning == Some(FitWarning::OptimizationDidNotImprove) {
                notes.push(format!(
                    "sinh fit reached min fidelity {:.4}, below {:.4} of the constant-adiabaticity steps; using those",
                    fit.sinh_min_fidelity, fit.baseline_min_fidelity
                ));
            }
            (fit.schedule, fit.shape)
        }
        _ => (continuous.resample_uniform(cfg.steps)?, ScanShape::Interpolated(continuous.clone())),
    };
    Ok(Design { continuous, discrete, shape, notes })
}

pub fn knot_rows(s: &SweepSchedule) -> Vec<KnotRow> {
    s.knots.iter().enumerate().map(|(step, k)| KnotRow { step, t_seconds: k.t, g_z: k.g_z }).collect()
}

pub fn segment_rows(cfg: &ExperimentConfig, s: &SweepSchedule, notes: &mut Notes) -> anyhow::Result<Vec<SegmentRow>> {
    let hw = cfg.hardware()?;
    let mut violations = 0;
    let rows = s
        .knots
        .windows(2)
        .enumerate()
        .map(|(m, w)| {
            let target = cfg.model()?.with_g_z(w[1].g_z);
            let seg = compile_step(&target, w[1].t - w[0].t, &hw)?;
            violations += usize::from(seg.small_angle_violation);
            Ok(SegmentRow {
                step: m + 1,
                tau_s: seg.tau,
                tau_p_s: seg.tau_p,
                tau_prec_s: seg.tau_prec,
                omega_l_rad_s: seg.omega_l,
                g_x: target.g_x,
                g_z: target.g_z,
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    if violations > 0 {
        notes.push(format!("{violations} segments exceed the small-angle pulse limit"));
    }
    Ok(rows)
}

pub fn simulate(cfg: &ExperimentConfig, design: &Design) -> anyhow::Result<Trajectory> {
    let rho0 = DensityOperator::pure(&ground_state(cfg.g_x, cfg.g_start))?;
    Ok(evolve_scan(&rho0, &design.discrete, cfg.j_i(), &cfg.hardware()?, &cfg.decoherence())?)
}

/// Keeps every `stride`-th record and always the last one.
pub fn trajectory_rows(traj: &Trajectory, stride: usize) -> Vec<TrajectoryRow> {
    let stride = stride.max(1);
    let last = traj.records.len().saturating_sub(1);
    traj.records
        .iter()
        .enumerate()
        .filter(|(i, _)| i % stride == 0 || *i == last)
        .map(|(_, r)| TrajectoryRow {
            step: r.step,
            t_s: r.t,
            g_z: r.g_z,
            fidelity: r.fidelity,
            concurrence: r.concurrence,
            zz: r.zz,
        })
        .collect()
}

/// Runs every step count in parallel. The decohered column always uses the
/// configured decoherence model, even when it is switched off for `simulate`.
pub fn step_study(cfg: &ExperimentConfig, design: &Design) -> anyhow::Result<Vec<StepStudyRow>> {
    let hw = cfg.hardware()?;
    let j_i = cfg.j_i();
    let noisy = DecoherenceParams { enabled: true, ..cfg.decoherence() };
    cfg.step_counts
        .par_iter()
        .map(|&m| {
            let ideal = step_study_point(&design.shape, m, j_i, &hw, None)?;
            let decohered = step_study_point(&design.shape, m, j_i, &hw, Some(&noisy))?;
            Ok(StepStudyRow {
                steps: m,
                min_fidelity_ideal: ideal.min_fidelity,
                min_fidelity_decohered: decohered.min_fidelity,
            })
        })
        .collect()
}

fn prepare(out: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(out).with_context(|| format!("creating output directory {}", out.display()))
}

pub fn run_eigen_scan(cfg: &ExperimentConfig, out: &Path) -> anyhow::Result<(Vec<PathBuf>, Notes)> {
    prepare(out)?;
    let path = out.join(EIGEN_SCAN_FILE);
    write_csv(&path, &eigen_scan(cfg))?;
    Ok((vec![path], Notes::default()))
}

pub fn run_sweep_design(cfg: &ExperimentConfig, out: &Path) -> anyhow::Result<(Vec<PathBuf>, Notes)> {
    prepare(out)?;
    let mut d = design(cfg)?;
    let segments = segment_rows(cfg, &d.discrete, &mut d.notes)?;
    let paths = [SWEEP_CONTINUOUS_FILE, SWEEP_DISCRETE_FILE, SEGMENTS_FILE].map(|f| out.join(f));
    write_csv(&paths[0], &knot_rows(&d.continuous))?;
    write_csv(&paths[1], &knot_rows(&d.discrete))?;
    write_csv(&paths[2], &segments)?;
    Ok((paths.to_vec(), d.notes))
}

pub fn run_simulate(cfg: &ExperimentConfig, out: &Path, stride: usize) -> anyhow::Result<(Vec<PathBuf>, Notes)> {
    prepare(out)?;
    let d = design(cfg)?;
    let traj = simulate(cfg, &d)?;
    let path = out.join(TRAJECTORY_FILE);
    write_csv(&path, &trajectory_rows(&traj, stride))?;
    Ok((vec![path], d.notes))
}

pub fn run_step_study(cfg: &ExperimentConfig, out: &Path) -> anyhow::Result<(Vec<PathBuf>, Notes)> {
    prepare(out)?;
    let d = design(cfg)?;
    let path = out.join(STEP_STUDY_FILE);
    write_csv(&path, &step_study(cfg, &d)?)?;
    Ok((vec![path], d.notes))
}
