use proptest::prelude::*;
use qpt_core::linalg::{expm_hermitian_generator, ops, spectral_norm, ComplexMatrix};
use qpt_core::model::ModelParams;
use qpt_core::pulse::{
    compile_step, ideal_step_unitary, nmr_hamiltonian, rf_hamiltonian, segment_unitary, trotter_error, HardwareParams,
    PulseSegment,
};
use qpt_core::DEFAULT_J_I_OVER_J12;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn hw() -> HardwareParams {
    HardwareParams::default()
}

fn segment(g_z: f64, tau: f64) -> PulseSegment {
    let target = ModelParams::new(0.129, g_z, DEFAULT_J_I_OVER_J12 * hw().j_12).unwrap();
    compile_step(&target, tau, &hw()).unwrap()
}

/// Full pulse, then free precession.
fn one_sided_error(seg: &PulseSegment) -> f64 {
    let pulse = expm_hermitian_generator(&rf_hamiltonian(seg.omega_rf), seg.tau_p).unwrap();
    let precession = expm_hermitian_generator(&nmr_hamiltonian(seg.omega_l, &hw()), seg.tau_prec).unwrap();
    spectral_norm(&(precession * pulse - ideal_step_unitary(seg)))
}

#[test]
fn symmetrized_cycle_is_second_order() {
    let ratio = trotter_error(&segment(1.0, 1.8e-3), &hw()) / trotter_error(&segment(1.0, 0.9e-3), &hw());
    assert!((6.0..=10.0).contains(&ratio), "ratio {ratio}");
}

#[test]
#[ignore = "at the default coupling the one-sided ratio at 1.8 ms is 3.33, still pre-asymptotic"]
fn one_sided_cycle_is_first_order_at_scan_step() {
    let ratio = one_sided_error(&segment(1.0, 1.8e-3)) / one_sided_error(&segment(1.0, 0.9e-3));
    assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn orders_in_the_small_step_regime() {
    let (tau, half) = (segment(1.0, 0.225e-3), segment(1.0, 0.1125e-3));
    let (a, b) = (trotter_error(&tau, &hw()), trotter_error(&half, &hw()));
    assert!(a < 1e-3 && b < 1e-3, "{a} {b}");
    assert!((6.0..=10.0).contains(&(a / b)), "ratio {}", a / b);
    let ratio = one_sided_error(&tau) / one_sided_error(&half);
    assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn tiny_steps_are_exact() {
    assert!(trotter_error(&segment(1.0, 1e-7), &hw()) < 1e-10);
}

#[test]
fn singlet_sector_is_untouched() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let singlet = ops::psi_minus();
    for _ in 0..100 {
        let target =
            ModelParams::new(rng.gen_range(0.0..0.5), rng.gen_range(-3.0..3.0), rng.gen_range(10.0..400.0)).unwrap();
        let seg = compile_step(&target, rng.gen_range(1e-5..5e-3), &hw()).unwrap();
        let u = segment_unitary(&seg, &hw());
        assert!((singlet.inner(&u.apply(&singlet)).norm() - 1.0).abs() < 1e-12);
        assert!((u * ops::swap()).max_abs_diff(&(ops::swap() * u)) < 1e-10);
    }
}

#[test]
fn no_transverse_field_is_diagonal() {
    let target = ModelParams::new(0.0, 0.7, 100.0).unwrap();
    let seg = compile_step(&target, 1e-3, &hw()).unwrap();
    assert_eq!(seg.tau_p, 0.0);
    let u = segment_unitary(&seg, &hw());
    let off = ComplexMatrix::from_fn(4, |r, c| if r == c { Default::default() } else { u.get(r, c) });
    assert_eq!(off.frobenius_norm(), 0.0);
}

proptest! {
    #[test]
    fn matching_relations_round_trip(gx in 0.0f64..0.5, gz in -3.0f64..3.0, j_i in 1.0f64..500.0, tau in 1e-5f64..1e-2) {
        let target = ModelParams::new(gx, gz, j_i).unwrap();
        let seg = compile_step(&target, tau, &hw()).unwrap();
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1e-300);
        prop_assert!(close(seg.tau_prec, 4.0 * j_i / hw().j_12 * tau));
        prop_assert!(close(seg.omega_rf * seg.tau_p / tau, target.omega_x()) || gx == 0.0);
        prop_assert!(close(seg.omega_l * seg.tau_prec / tau, target.omega_z()) || gz == 0.0);
        prop_assert!(close(hw().j_12 / 4.0 * seg.tau_prec, j_i * tau));
        prop_assert!(segment_unitary(&seg, &hw()).unitarity_defect() < 1e-12);
    }
}
