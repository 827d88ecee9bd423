//! Flat TOML experiment configuration. Every key is optional; the defaults
//! reproduce the 60-step, 110 ms chloroform run.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use qpt_core::decoherence::{
    DecoherenceInterpretation, DecoherenceParams, DEFAULT_DECOHERENCE_TIME, DEFAULT_T1_OVER_T2,
    DEFAULT_TRANSIENT_DEPHASING,
};
use qpt_core::pulse::{HardwareParams, CHLOROFORM_J12_HZ, DEFAULT_RF_HZ};
use qpt_core::sweep::{DEFAULT_G_X, DEFAULT_SCAN_TIME, DEFAULT_STEPS};
use qpt_core::{ModelParams, DEFAULT_J_I_OVER_J12};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleKind {
    SinhOptimized,
    ConstantAdiabaticity,
    /// Linear in time.
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Interpretation {
    PerQubit,
    EntangledCoherence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub g_x: f64,
    /// Ising coupling as a fraction of the scalar coupling J₁₂.
    pub j_i_over_j12: f64,
    pub j12_hz: f64,
    pub rf_hz: f64,

    pub g_start: f64,
    pub g_end: f64,
    pub steps: usize,
    pub total_time_ms: f64,
    pub schedule_kind: ScheduleKind,
    /// Knots of the continuous constant-adiabaticity curve.
    pub design_resolution: usize,
    pub optimizer_max_evaluations: usize,
    pub seed: u64,

    pub decoherence_enabled: bool,
    pub decoherence_time_ms: f64,
    /// Defaults to ten times the decoherence time.
    pub t1_ms: Option<f64>,
    pub decoherence_interpretation: Interpretation,
    pub transient_dephasing: f64,

    pub eigen_scan_points: usize,
    pub step_counts: Vec<usize>,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            g_x: DEFAULT_G_X,
            j_i_over_j12: DEFAULT_J_I_OVER_J12,
            j12_hz: CHLOROFORM_J12_HZ,
            rf_hz: DEFAULT_RF_HZ,
            g_start: -3.0,
            g_end: 3.0,
            steps: DEFAULT_STEPS,
            total_time_ms: DEFAULT_SCAN_TIME * 1e3,
            schedule_kind: ScheduleKind::SinhOptimized,
            design_resolution: 2001,
            optimizer_max_evaluations: 200,
            seed: 7,
            decoherence_enabled: true,
            decoherence_time_ms: DEFAULT_DECOHERENCE_TIME * 1e3,
            t1_ms: None,
            decoherence_interpretation: Interpretation::PerQubit,
            transient_dephasing: DEFAULT_TRANSIENT_DEPHASING,
            eigen_scan_points: 601,
            step_counts: vec![10, 20, 40, 60, 90, 120],
            output_dir: PathBuf::from("out"),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| anyhow::anyhow!("{}", e.message()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.steps < 2 {
            bail!("steps must be at least 2, got {}", self.steps);
        }
        if !(self.total_time_ms > 0.0) {
            bail!("total_time_ms must be positive, got {}", self.total_time_ms);
        }
        if self.g_start == self.g_end {
            bail!("g_start and g_end must differ");
        }
        if self.design_resolution < 2 {
            bail!("design_resolution must be at least 2");
        }
        if self.eigen_scan_points < 2 {
            bail!("eigen_scan_points must be at least 2");
        }
        if self.step_counts.iter().any(|&m| m < 2) {
            bail!("every entry of step_counts must be at least 2");
        }
        self.model()?;
        self.hardware()?;
        self.decoherence().validate()?;
        Ok(())
    }

    pub fn hardware(&self) -> anyhow::Result<HardwareParams> {
        Ok(HardwareParams::from_hz(self.j12_hz, self.rf_hz)?)
    }

    /// Ising coupling, rad/s.
    pub fn j_i(&self) -> f64 {
        self.j_i_over_j12 * 2.0 * std::f64::consts::PI * self.j12_hz
    }

    pub fn model(&self) -> anyhow::Result<ModelParams> {
        Ok(ModelParams::new(self.g_x, self.g_start, self.j_i())?)
    }

    /// Scan duration, s.
    pub fn total_time(&self) -> f64 {
        self.total_time_ms / 1e3
    }

    pub fn decoherence(&self) -> DecoherenceParams {
        let t2 = self.decoherence_time_ms / 1e3;
        DecoherenceParams {
            t2,
            t1: self.t1_ms.map_or(DEFAULT_T1_OVER_T2 * t2, |t| t / 1e3),
            enabled: self.decoherence_enabled,
            interpretation: match self.decoherence_interpretation {
                Interpretation::PerQubit => DecoherenceInterpretation::PerQubit,
                Interpretation::EntangledCoherence => DecoherenceInterpretation::EntangledCoherence,
            },
            transient_dephasing: self.transient_dephasing,
        }
    }
}
