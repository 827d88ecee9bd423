//! CSV tables. Floats are written with 17 significant digits so that parsing
//! a file back reproduces the in-memory values bit for bit.

use std::path::Path;

use anyhow::{bail, Context};

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub trait CsvRecord: Sized {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
    fn from_fields(fields: &[&str]) -> anyhow::Result<Self>;
}

fn float(s: &str) -> anyhow::Result<f64> {
    s.parse().with_context(|| format!("bad number {s:?}"))
}

fn int(s: &str) -> anyhow::Result<usize> {
    s.parse().with_context(|| format!("bad integer {s:?}"))
}

fn floats<const N: usize>(fields: &[&str]) -> anyhow::Result<[f64; N]> {
    let mut out = [0.0; N];
    for (o, f) in out.iter_mut().zip(fields) {
        *o = float(f)?;
    }
    Ok(out)
}

pub fn write_csv<R: CsvRecord>(path: &Path, rows: &[R]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(R::HEADER).with_context(|| format!("writing {}", path.display()))?;
    for r in rows {
        w.write_record(r.fields()).with_context(|| format!("writing {}", path.display()))?;
    }
    w.flush().with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn read_csv<R: CsvRecord>(path: &Path) -> anyhow::Result<Vec<R>> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let header = r.headers().with_context(|| format!("reading {}", path.display()))?.clone();
    if header.iter().ne(R::HEADER.iter().copied()) {
        bail!("{}: unexpected header {:?}", path.display(), header);
    }
    r.records()
        .map(|rec| {
            let rec = rec.with_context(|| format!("reading {}", path.display()))?;
            if rec.len() != R::HEADER.len() {
                bail!("{}: row has {} fields, expected {}", path.display(), rec.len(), R::HEADER.len());
            }
            let fields: Vec<&str> = rec.iter().collect();
            R::from_fields(&fields)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenRow {
    pub g_z: f64,
    /// Triplet levels in units of `J_I`, ascending.
    pub energies: [f64; 3],
    /// Ground state in the `(↑↑, Ψ⁺, ↓↓)` basis.
    pub amplitudes: [f64; 3],
}

impl CsvRecord for EigenRow {
    const HEADER: &'static [&'static str] = &["g_z", "e1", "e2", "e3", "a_upup", "a_psiplus", "a_downdown"];

    fn fields(&self) -> Vec<String> {
        std::iter::once(self.g_z).chain(self.energies).chain(self.amplitudes).map(fmt_f64).collect()
    }

    fn from_fields(f: &[&str]) -> anyhow::Result<Self> {
        let v: [f64; 7] = floats(f)?;
        Ok(Self { g_z: v[0], energies: [v[1], v[2], v[3]], amplitudes: [v[4], v[5], v[6]] })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KnotRow {
    pub step: usize,
    pub t_seconds: f64,
    pub g_z: f64,
}

impl CsvRecord for KnotRow {
    const HEADER: &'static [&'static str] = &["step", "t_seconds", "g_z"];

    fn fields(&self) -> Vec<String> {
        vec![self.step.to_string(), fmt_f64(self.t_seconds), fmt_f64(self.g_z)]
    }

    fn from_fields(f: &[&str]) -> anyhow::Result<Self> {
        Ok(Self { step: int(f[0])?, t_seconds: float(f[1])?, g_z: float(f[2])? })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SegmentRow {
    pub step: usize,
    pub tau_s: f64,
    pub tau_p_s: f64,
    pub tau_prec_s: f64,
    pub omega_l_rad_s: f64,
    pub g_x: f64,
    pub g_z: f64,
}

impl CsvRecord for SegmentRow {
    const HEADER: &'static [&'static str] = &["step", "tau_s", "tau_p_s", "tau_prec_s", "omega_l_rad_s", "g_x", "g_z"];

    fn fields(&self) -> Vec<String> {
        let mut out = vec![self.step.to_string()];
        out.extend([self.tau_s, self.tau_p_s, self.tau_prec_s, self.omega_l_rad_s, self.g_x, self.g_z].map(fmt_f64));
        out
    }

    fn from_fields(f: &[&str]) -> anyhow::Result<Self> {
        let v: [f64; 6] = floats(&f[1..])?;
        Ok(Self {
            step: int(f[0])?,
            tau_s: v[0],
            tau_p_s: v[1],
            tau_prec_s: v[2],
            omega_l_rad_s: v[3],
            g_x: v[4],
            g_z: v[5],
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryRow {
    pub step: usize,
    pub t_s: f64,
    pub g_z: f64,
    pub fidelity: f64,
    pub concurrence: f64,
    pub zz: f64,
}

impl CsvRecord for TrajectoryRow {
    const HEADER: &'static [&'static str] = &["step", "t_s", "g_z", "fidelity", "concurrence", "zz"];

    fn fields(&self) -> Vec<String> {
        let mut out = vec![self.step.to_string()];
        out.extend([self.t_s, self.g_z, self.fidelity, self.concurrence, self.zz].map(fmt_f64));
        out
    }

    fn from_fields(f: &[&str]) -> anyhow::Result<Self> {
        let v: [f64; 5] = floats(&f[1..])?;
        Ok(Self { step: int(f[0])?, t_s: v[0], g_z: v[1], fidelity: v[2], concurrence: v[3], zz: v[4] })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepStudyRow {
    pub steps: usize,
    pub min_fidelity_ideal: f64,
    pub min_fidelity_decohered: f64,
}

impl CsvRecord for StepStudyRow {
    const HEADER: &'static [&'static str] = &["M", "min_fidelity_ideal", "min_fidelity_decohered"];

    fn fields(&self) -> Vec<String> {
        vec![self.steps.to_string(), fmt_f64(self.min_fidelity_ideal), fmt_f64(self.min_fidelity_decohered)]
    }

    fn from_fields(f: &[&str]) -> anyhow::Result<Self> {
        Ok(Self { steps: int(f[0])?, min_fidelity_ideal: float(f[1])?, min_fidelity_decohered: float(f[2])? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE, 0.0, -0.0] {
            let back: f64 = fmt_f64(v).parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits());
        }
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn tables_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let rows = vec![
            TrajectoryRow { step: 0, t_s: 0.0, g_z: -3.0, fidelity: 1.0, concurrence: 1e-3, zz: 0.99 },
            TrajectoryRow { step: 2, t_s: 1.0 / 3.0, g_z: 0.1, fidelity: 0.7, concurrence: 0.5, zz: -0.8 },
        ];
        write_csv(&path, &rows).unwrap();
        assert_eq!(read_csv::<TrajectoryRow>(&path).unwrap(), rows);
        assert!(read_csv::<StepStudyRow>(&path).is_err());
    }
}
