mod common;

use common::*;
use num_complex::Complex64;
use predistill::mat2::{c64, inner, outer, Mat2};
use predistill::metrics::{
    dephased_populations, frobenius_fidelity, magic_basis_populations, magic_t_gate_fidelity,
    min_dephased_error, normalize, phase_adjusted_frobenius_distance, t_magic_error,
    trace_fidelity,
};
use predistill::su2::{compose, rotation, rotation_with_detuning, wrap_angle, GateTarget, MagicFrame};
use predistill::Error;
use proptest::prelude::*;
use rand::SeedableRng;

#[test]
fn rotation_matches_explicit_entries() {
    for &(theta, phi) in &[(0.0, 0.0), (PI / 2.0, PI / 3.0), (1.234, -2.1), (PI, 0.4), (5.0, 2.9)] {
        let r = rotation(theta, phi);
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        assert_close(r.m00.re, c, 1e-15, "m00.re");
        assert_close(r.m00.im, 0.0, 1e-15, "m00.im");
        assert_close(r.m01.re, -s * phi.sin(), 1e-15, "m01.re");
        assert_close(r.m01.im, -s * phi.cos(), 1e-15, "m01.im");
        assert_close(r.m10.re, s * phi.sin(), 1e-15, "m10.re");
        assert_close(r.m10.im, -s * phi.cos(), 1e-15, "m10.im");
        assert_close(r.m11.re, c, 1e-15, "m11.re");
    }
}

#[test]
fn rotation_is_the_pauli_exponential() {
    for &(theta, phi) in &[(0.3, 0.0), (1.0, 1.0), (2.5, -2.0), (PI, 3.0), (6.0_f64, 0.7_f64)] {
        let series = series_exp_pauli(-theta / 2.0 * phi.cos(), -theta / 2.0 * phi.sin(), 0.0);
        mat_close(&rotation(theta, phi), &series, 1e-13, "rotation vs series exp");
    }
}

#[test]
fn rotation_is_special_unitary() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(1);
    for _ in 0..200 {
        use rand::Rng;
        let theta: f64 = rng.gen_range(-10.0..10.0);
        let phi: f64 = rng.gen_range(-10.0..10.0);
        let r = rotation(theta, phi);
        assert!(r.unitarity_defect() < 1e-14);
        assert!((r.det() - c64(1.0, 0.0)).norm() < 1e-14);
    }
}

#[test]
fn detuned_rotation_factorizes_through_z_phases() {
    for &(theta, delta, phi) in
        &[(0.7, 0.3, 1.1), (2.0, -0.8, 0.0), (PI / 2.0, 1.4, -2.3), (4.5, 0.05, 2.8)]
    {
        let zhalf = series_exp_pauli(0.0, 0.0, delta / 2.0);
        let product = zhalf * rotation(theta, phi) * zhalf;
        mat_close(
            &rotation_with_detuning(theta, delta, phi),
            &product,
            1e-13,
            "detuned rotation vs exp(iδZ/2)·R·exp(iδZ/2)",
        );
    }
}

#[test]
fn compose_follows_the_documented_order() {
    let a = rotation(0.9, 0.2);
    let b = rotation(1.7, -1.0);
    mat_close(&compose(&[a]).unwrap(), &a, 0.0, "singleton compose");
    mat_close(&compose(&[a, b]).unwrap(), &(a * b), 1e-15, "pair compose is a·b");
    mat_close(&compose(&[a, a.adjoint()]).unwrap(), &Mat2::IDENTITY, 1e-12, "U·U†");
    let pi_pulse = rotation(PI, 0.0);
    mat_close(
        &compose(&[pi_pulse, pi_pulse]).unwrap(),
        &Mat2::IDENTITY.scale(c64(-1.0, 0.0)),
        1e-15,
        "two π pulses give −I",
    );
    assert!(matches!(compose(&[]), Err(Error::EmptyProduct)));
}

#[test]
fn wrap_angle_lands_in_the_half_open_interval() {
    assert_close(wrap_angle(PI), PI, 0.0, "π stays π");
    assert_close(wrap_angle(-PI), PI, 1e-15, "−π folds to +π");
    assert_close(wrap_angle(3.0 * PI), PI, 1e-12, "3π wraps to π");
    assert_close(wrap_angle(0.3 + 4.0 * PI), 0.3, 1e-12, "periodicity");
    assert_close(wrap_angle(-0.3 - 6.0 * PI), -0.3, 1e-12, "negative periodicity");
}

#[test]
fn gate_targets_prepare_their_magic_states() {
    // 𝒯 maps |0⟩ onto |T₀⟩ in the X-Y frame.
    let t = GateTarget::t_xy();
    let frame = t.frame();
    let prepared = t.matrix().col(0);
    assert!((prepared[0] - frame.t0[0]).norm() < 1e-15);
    assert!((prepared[1] - frame.t0[1]).norm() < 1e-15);

    // ℋ maps |0⟩ onto the +1 Hadamard eigenstate (cos π/8, sin π/8).
    let h = GateTarget::h_xy().matrix().col(0);
    assert_close(h[0].re, (PI / 8.0).cos(), 1e-15, "H-state amplitude 0");
    assert_close(h[1].re, (PI / 8.0).sin(), 1e-15, "H-state amplitude 1");
    assert_close(h[0].im, 0.0, 1e-15, "H-state real");
    assert_close(h[1].im, 0.0, 1e-15, "H-state real");

    // 𝒯 in the X-Z frame: explicit entries and the frame property.
    let cb = ((3.0 + 3.0_f64.sqrt()) / 6.0).sqrt();
    let sb = ((3.0 - 3.0_f64.sqrt()) / 6.0).sqrt();
    let e = Complex64::cis(PI / 4.0);
    let txz = GateTarget::t_xz().matrix();
    mat_close(
        &txz,
        &Mat2::new(c64(cb, 0.0), e * sb, -(e.conj() * sb), c64(cb, 0.0)),
        1e-15,
        "𝒯(XZ) explicit entries",
    );
    let fz = MagicFrame::xz();
    let prep = txz.col(0);
    assert!((prep[0] - fz.t0[0]).norm() < 1e-15);
    assert!((prep[1] - fz.t0[1]).norm() < 1e-15);
}

#[test]
fn frames_are_orthonormal() {
    assert!(MagicFrame::xy().orthonormality_defect() < 1e-15);
    assert!(MagicFrame::xz().orthonormality_defect() < 1e-15);
}

#[test]
fn frobenius_fidelity_reference_points() {
    let u = rotation(1.1, 0.4);
    assert_close(frobenius_fidelity(&u, &u), 1.0, 0.0, "identical gates");
    assert_close(
        frobenius_fidelity(&u, &u.scale(c64(-1.0, 0.0))),
        1.0 - 2.0_f64.sqrt(),
        1e-14,
        "global sign flip",
    );
    assert_close(
        frobenius_fidelity(&rotation(PI, 0.0), &Mat2::IDENTITY),
        0.0,
        1e-15,
        "π pulse against identity",
    );
}

#[test]
fn trace_fidelity_reference_points() {
    let u = rotation(0.9, -0.3);
    assert_close(trace_fidelity(&u, &u), 0.0, 1e-15, "perfect gate scores 0");
    assert_close(trace_fidelity(&rotation(PI, 0.0), &Mat2::IDENTITY), 1.0, 1e-15, "π pulse");
    assert_close(
        trace_fidelity(&rotation(PI / 2.0, 0.0), &Mat2::IDENTITY),
        1.0 - (PI / 4.0).cos(),
        1e-15,
        "π/2 pulse",
    );
    // Global-phase invariance through the absolute value.
    let g = u.scale(Complex64::cis(0.77));
    assert_close(trace_fidelity(&g, &u), trace_fidelity(&u, &u), 1e-15, "phase invariance");
}

#[test]
fn phase_adjusted_distance_matches_grid_minimization() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2);
    for _ in 0..50 {
        let g = random_unitary(&mut rng);
        let t = random_unitary(&mut rng);
        let lib = phase_adjusted_frobenius_distance(&g, &t);
        let grid = pa_dist_grid(&g, &t);
        assert_close(lib, grid, 1e-7, "closed-form vs grid minimum");
        // minimizing over the phase can only tighten the raw distance
        assert!(lib <= (g - t).frobenius_norm() / 2.0 + 1e-15);
        // and is invariant when G itself is re-phased
        let reph = g.scale(Complex64::cis(1.3));
        assert_close(
            phase_adjusted_frobenius_distance(&reph, &t),
            lib,
            1e-12,
            "phase invariance",
        );
    }
}

#[test]
fn phase_adjusted_distance_handles_a_vanishing_trace() {
    // G·T† traceless: every phase gives the same distance; γ = 0 is used.
    let t = rotation(0.8, 0.1);
    let x = Mat2::new(c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0));
    let g = x * t;
    let d = phase_adjusted_frobenius_distance(&g, &t);
    assert!(d.is_finite());
    assert_close(d, pa_dist_grid(&g, &t), 1e-7, "degenerate-phase case");
}

#[test]
fn t_magic_error_reference_points() {
    let frame = MagicFrame::xy();
    assert!(t_magic_error(&GateTarget::t_xy().matrix(), &frame) < 1e-12);

    let expected = (3.0 - 3.0_f64.sqrt()) / 6.0;
    assert_close(t_magic_error(&Mat2::IDENTITY, &frame), expected, 1e-15, "identity gate");

    // Brute-force oracle: density-matrix projection ⟨T₁|ρ|T₁⟩.
    let g = rotation((1.0 / 3.0_f64.sqrt()).acos() * 1.05, 3.0 * PI / 4.0);
    let v = g.col(0);
    let rho = outer(v, v);
    let oracle = inner(frame.t1, rho.apply(frame.t1)).re;
    assert_close(t_magic_error(&g, &frame), oracle, 1e-12, "projection oracle");
}

#[test]
fn magic_fidelity_reference_points() {
    let frame = MagicFrame::xy();
    assert_close(magic_t_gate_fidelity(&GateTarget::t_xy().matrix(), &frame), 1.0, 1e-9, "exact 𝒯");

    // A gate with ε exactly 0.04 scores 1 − √0.04 = 0.8.
    let v = {
        let t0 = frame.t0;
        let t1 = frame.t1;
        normalize([
            t0[0] * 0.96_f64.sqrt() + t1[0] * 0.04_f64.sqrt(),
            t0[1] * 0.96_f64.sqrt() + t1[1] * 0.04_f64.sqrt(),
        ])
    };
    let g = Mat2::new(v[0], -v[1].conj(), v[1], v[0].conj());
    assert!(g.unitarity_defect() < 1e-14);
    assert_close(t_magic_error(&g, &frame), 0.04, 1e-13, "engineered ε");
    assert_close(magic_t_gate_fidelity(&g, &frame), 0.8, 1e-13, "1 − √0.04");

    let ident = magic_t_gate_fidelity(&Mat2::IDENTITY, &frame);
    assert_close(ident, 1.0 - ((3.0 - 3.0_f64.sqrt()) / 6.0).sqrt(), 1e-15, "identity");
    assert_close(ident, 0.54030, 5e-6, "published rounding");
}

#[test]
fn magic_error_ignores_what_frobenius_sees() {
    // G that prepares |T₀⟩ perfectly yet differs from 𝒯 beyond any global
    // phase: the task metric is blind to the second column.
    let t = GateTarget::t_xy().matrix();
    let g = t * Mat2::diag(c64(1.0, 0.0), Complex64::cis(0.7));
    let frame = MagicFrame::xy();
    assert!(t_magic_error(&g, &frame) < 1e-14, "prepares the state exactly");
    assert!(frobenius_fidelity(&g, &t) < 1.0 - 1e-3, "but is not the target gate");
    assert!(
        phase_adjusted_frobenius_distance(&g, &t) > 1e-3,
        "not even up to a global phase"
    );
    // while a perfect Frobenius score forces zero magic error
    assert!(t_magic_error(&t, &frame) < 1e-14);
}

#[test]
fn magic_error_is_phase_covariant() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    let frame = MagicFrame::xy();
    for _ in 0..100 {
        let g = random_unitary(&mut rng);
        let e0 = t_magic_error(&g, &frame);
        use rand::Rng;
        let gamma: f64 = rng.gen_range(-PI..PI);
        let e1 = t_magic_error(&g.scale(Complex64::cis(gamma)), &frame);
        assert_close(e0, e1, 1e-14, "phase covariance");
    }
}

#[test]
fn dephased_populations_match_the_twirl_oracle() {
    let frame = MagicFrame::xy();
    let t = twirl_oracle();
    let td = t.adjoint();
    let mut rng = rand::rngs::StdRng::seed_from_u64(4);
    for _ in 0..100 {
        use rand::Rng;
        let theta: f64 = rng.gen_range(-PI..PI);
        let delta: f64 = rng.gen_range(-PI..PI);
        let phi: f64 = rng.gen_range(-PI..PI);
        let v = rotation_with_detuning(theta, delta, phi).col(0);
        let rho = outer(v, v);
        let deph = (rho + t * rho * td + td * rho * t).scale(c64(1.0 / 3.0, 0.0));
        let (o0, o1) = magic_basis_populations(&deph, &frame);
        let (p0, p1) = dephased_populations(theta, delta, phi);
        assert_close(p0, o0, 1e-10, "p0 vs twirl oracle");
        assert_close(p1, o1, 1e-10, "p1 vs twirl oracle");
        assert_close(p0 + p1, 1.0, 1e-12, "populations sum to one");
        // dephasing must not move the diagonal itself
        let (d0, _) = magic_basis_populations(&rho, &frame);
        assert_close(d0, o0, 1e-10, "diagonal preserved");
    }
}

#[test]
fn dephased_error_at_the_origin() {
    let (_, p1) = dephased_populations(0.0, 0.0, 0.0);
    assert_close(p1, (3.0 - 3.0_f64.sqrt()) / 6.0, 1e-15, "θ = 0 leaves |0⟩");
}

#[test]
fn min_dephased_error_agrees_with_a_brute_scan() {
    let (theta_opt, err) = min_dephased_error();
    assert_close(err, (3.0 - 6.0_f64.sqrt()) / 6.0, 1e-12, "closed form");
    assert_close(err, 9.175e-2, 5e-5, "published rounding");
    let (_, at_opt) = dephased_populations(theta_opt, 0.0, 0.0);
    assert_close(at_opt, err, 1e-12, "reported θ attains the minimum");

    let mut best = f64::INFINITY;
    for k in 0..1_000_000 {
        let theta = 2.0 * PI * k as f64 / 1_000_000.0;
        let (_, p1) = dephased_populations(theta, 0.0, 0.0);
        best = best.min(p1);
    }
    assert_close(best, err, 1e-9, "10⁶-point scan");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_rotation_unitary(theta in -12.0..12.0f64, phi in -12.0..12.0f64) {
        prop_assert!(rotation(theta, phi).unitarity_defect() < 1e-13);
    }

    #[test]
    fn prop_wrap_angle_range_and_period(a in -1e4..1e4f64, k in -3i32..=3) {
        let w = wrap_angle(a);
        prop_assert!(w > -PI && w <= PI);
        let shifted = wrap_angle(a + k as f64 * 2.0 * PI);
        // compare as angles (both already wrapped)
        let diff = (w - shifted).abs();
        let circ = diff.min((2.0 * PI - diff).abs());
        prop_assert!(circ < 1e-9, "wrap not periodic: {} vs {}", w, shifted);
    }

    #[test]
    fn prop_metrics_bounded(seed in 0u64..1000) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let g = random_unitary(&mut rng);
        let t = random_unitary(&mut rng);
        let frame = MagicFrame::xy();
        let eps = t_magic_error(&g, &frame);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&eps));
        prop_assert!(frobenius_fidelity(&g, &t) <= 1.0);
        let tf = trace_fidelity(&g, &t);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&tf));
        let pa = phase_adjusted_frobenius_distance(&g, &t);
        prop_assert!((0.0..=2.0f64.sqrt() + 1e-12).contains(&pa));
    }
}
