//! Nelder–Mead simplex minimization.

use alloc::vec;
use alloc::vec::Vec;
use core::cell::Cell;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NelderMeadOptions {
    pub max_evaluations: usize,
    /// Stop once the spread of objective values across the simplex drops below this.
    pub f_tol: f64,
    /// ... and every vertex is within this distance of the best one.
    pub x_tol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self { max_evaluations: 400, f_tol: 1e-9, x_tol: 1e-7 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimizes `f` from an explicit start simplex of `n + 1` vertices.
pub fn nelder_mead_simplex(
    mut f: impl FnMut(&[f64]) -> f64,
    simplex: Vec<Vec<f64>>,
    opts: &NelderMeadOptions,
) -> Minimum {
    let n = simplex.len() - 1;
    assert!(n >= 1 && simplex.iter().all(|v| v.len() == n), "simplex must have n + 1 vertices of length n");

    let evaluations = Cell::new(0usize);
    let mut eval = |x: &[f64]| {
        evaluations.set(evaluations.get() + 1);
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut pts: Vec<(Vec<f64>, f64)> = simplex
        .into_iter()
        .map(|x| {
            let v = eval(&x);
            (x, v)
        })
        .collect();
    let mut converged = false;

    loop {
        pts.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = pts[0].1;
        let worst = pts[n].1;
        let spread = (worst - best).abs();
        let size = pts[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&pts[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread <= opts.f_tol && size <= opts.x_tol {
            converged = true;
            break;
        }
        if evaluations.get() >= opts.max_evaluations {
            break;
        }

        let mut centroid = vec![0.0; n];
        for (x, _) in &pts[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&pts[n].0).map(|(c, w)| c + t * (c - w)).collect() };

        let reflected = along(1.0);
        let f_r = eval(&reflected);
        if f_r < pts[0].1 {
            let expanded = along(2.0);
            let f_e = eval(&expanded);
            pts[n] = if f_e < f_r { (expanded, f_e) } else { (reflected, f_r) };
            continue;
        }
        if f_r < pts[n - 1].1 {
            pts[n] = (reflected, f_r);
            continue;
        }
        let (contracted, f_c) = if f_r < pts[n].1 {
            let x = along(0.5);
            let v = eval(&x);
            (x, v)
        } else {
            let x = along(-0.5);
            let v = eval(&x);
            (x, v)
        };
        if f_c < pts[n].1.min(f_r) {
            pts[n] = (contracted, f_c);
            continue;
        }
        let anchor = pts[0].0.clone();
        for (x, v) in pts[1..].iter_mut() {
            for (xi, a) in x.iter_mut().zip(&anchor) {
                *xi = a + 0.5 * (*xi - a);
            }
            *v = eval(x);
        }
    }

    pts.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = pts.swap_remove(0);
    Minimum { x, value, evaluations: evaluations.get(), converged }
}

/// Axis-aligned start simplex around `x0` with per-coordinate `steps`.
pub fn nelder_mead(f: impl FnMut(&[f64]) -> f64, x0: &[f64], steps: &[f64], opts: &NelderMeadOptions) -> Minimum {
    assert_eq!(x0.len(), steps.len());
    let mut simplex = vec![x0.to_vec()];
    for (i, s) in steps.iter().enumerate() {
        let mut v = x0.to_vec();
        v[i] += s;
        simplex.push(v);
    }
    nelder_mead_simplex(f, simplex, opts)
}
