use approx::assert_abs_diff_eq;
use num_complex::Complex64;
use torsionflow::frame::*;

fn lambda_j(l: f64) -> Mat2 {
    // J e₁ = −λ e₂, J e₂ = e₁/λ
    [[0.0, 1.0 / l], [-l, 0.0]]
}

#[test]
fn lambda_family_closed_form() {
    for l in [0.5, 0.8, 1.0, 1.3, 2.0] {
        let s = LeftInvariantStructure::su2(1.0, lambda_j(l));
        let cf = adapted_coframe(&s).unwrap();
        let g = solve_structure_equations(&s, &cf).unwrap();
        assert_abs_diff_eq!(g.w, l + 1.0 / l, epsilon = 1e-13);
        assert_abs_diff_eq!(g.a1b1b().re, 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(g.a1b1b().im, -(l - 1.0 / l), epsilon = 1e-13);
        assert!(g.omega.1.norm() < 1e-13);
        assert!(structure_residual(&s, &cf, &g) < 1e-12);
        assert!(coframe_residual(&s, &cf) < 1e-12);
    }
}

#[test]
fn scaling_law() {
    let j = j_from_chart(0.3, -1.2);
    let base = geometry(&LeftInvariantStructure::su2(1.0, j)).unwrap();
    for c in [0.25, 0.5, 3.0] {
        let g = geometry(&LeftInvariantStructure::su2(c, j)).unwrap();
        assert_abs_diff_eq!(g.w, base.w / c, epsilon = 1e-12);
        assert!((g.a11 - base.a11 / c).norm() < 1e-12);
        assert_abs_diff_eq!(g.ricci, g.w, epsilon = 0.0);
    }
}

#[test]
fn rescaled_frame_field() {
    let z1 = adapted_coframe(&LeftInvariantStructure::su2(1.0, J_CAN))
        .unwrap()
        .z1;
    let z4 = adapted_coframe(&LeftInvariantStructure::su2(4.0, J_CAN))
        .unwrap()
        .z1;
    for k in 0..3 {
        assert!((z4[k] - z1[k] * 0.5).norm() < 1e-15);
    }
}

#[test]
fn heisenberg_standard_structure_is_flat() {
    let s = LeftInvariantStructure::new(LieAlgebra3::heisenberg(), [0.0, 0.0, 1.0], J_CAN);
    let cf = adapted_coframe(&s).unwrap();
    let g = solve_structure_equations(&s, &cf).unwrap();
    assert!(g.a11.norm() < 1e-14);
    assert_abs_diff_eq!(g.w, 0.0, epsilon = 1e-14);
    // dθ¹ = −θ¹([·,·]) vanishes because θ¹ kills e₃.
    assert!(cf.theta1[2].norm() < 1e-15);
    assert!(structure_residual(&s, &cf, &g) < 1e-14);
}

#[test]
fn canonical_torsion_vanishes() {
    let g = geometry(&LeftInvariantStructure::su2(1.0, J_CAN)).unwrap();
    assert!(g.a11.norm() <= 1e-14);
    let g = geometry(&LeftInvariantStructure::new(
        LieAlgebra3::heisenberg(),
        [0.0, 0.0, 1.0],
        J_CAN,
    ))
    .unwrap();
    assert!(g.a11.norm() <= 1e-14);
}

#[test]
fn solution_is_unique() {
    let s = LeftInvariantStructure::su2(1.3, j_from_chart(0.2, -0.9));
    let cf = adapted_coframe(&s).unwrap();
    let g = solve_structure_equations(&s, &cf).unwrap();
    let base = structure_residual(&s, &cf, &g);
    assert!(base < 1e-12);
    // Admissible perturbations keep ω₁¹ + ω₁̄¹̄ = 0: p = −q̄ and r imaginary.
    let d = Complex64::new(1e-3, -2e-3);
    let perturbed = [
        PseudohermitianGeometry {
            omega: (g.omega.0 - d.conj(), g.omega.1 + d, g.omega.2),
            ..g
        },
        PseudohermitianGeometry {
            omega: (g.omega.0, g.omega.1, g.omega.2 + Complex64::new(0.0, 1e-3)),
            ..g
        },
        PseudohermitianGeometry {
            a11: g.a11 + d,
            ..g
        },
    ];
    for p in perturbed {
        assert!(structure_residual(&s, &cf, &p) > base + 1e-6);
    }
}

#[test]
fn phase_reference_is_respected() {
    let s0 = LeftInvariantStructure::su2(1.0, j_from_chart(0.1, -1.1));
    let reference = adapted_coframe(&s0).unwrap().theta1;
    let s1 = LeftInvariantStructure::su2(1.0, j_from_chart(0.4, -0.7));
    let cf = adapted_coframe_with_phase(&s1, &Phase::Reference(reference)).unwrap();
    let v: Complex64 = (0..3).map(|k| reference[k] * cf.z1[k]).sum();
    assert!(v.im.abs() < 1e-14 && v.re > 0.0);
    // Phase does not change the invariants.
    let a = solve_structure_equations(&s1, &cf).unwrap();
    let b = geometry(&s1).unwrap();
    assert_abs_diff_eq!(a.w, b.w, epsilon = 1e-13);
    assert_abs_diff_eq!(a.a11.norm(), b.a11.norm(), epsilon = 1e-13);
}

#[test]
fn other_orientation_gives_same_invariants() {
    // J ↦ −J with θ ↦ −θ is the other orientation branch.
    let j = j_from_chart(0.3, -1.4);
    let neg = [[-j[0][0], -j[0][1]], [-j[1][0], -j[1][1]]];
    let a = geometry(&LeftInvariantStructure::su2(1.0, j)).unwrap();
    let b = geometry(&LeftInvariantStructure::su2(-1.0, neg)).unwrap();
    assert_abs_diff_eq!(a.w, b.w, epsilon = 1e-13);
    assert_abs_diff_eq!(a.a11.norm(), b.a11.norm(), epsilon = 1e-13);
}

#[test]
fn volume_is_two_s_squared() {
    for s in [0.5, 1.0, 1.7] {
        assert_abs_diff_eq!(
            LeftInvariantStructure::su2(s, J_CAN).volume(),
            2.0 * s * s,
            epsilon = 1e-14
        );
    }
}
