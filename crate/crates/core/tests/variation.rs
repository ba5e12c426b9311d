use num_complex::Complex64;
use torsionflow::exact::{Coeff, Poly};
use torsionflow::flow::{self, FlowState};
use torsionflow::frame::{self, j_from_chart, LeftInvariantStructure, LieAlgebra3, J_CAN};
use torsionflow::heisenberg::operators::sublaplacian;
use torsionflow::heisenberg::{Basis, HeisenbergStructure, WeightedJet};
use torsionflow::random;
use torsionflow::variation::*;
use torsionflow::TorsionError;

fn su2_family(a0: f64, c0: f64, da: f64, dc: f64, eta: f64) -> ChartFamily {
    ChartFamily {
        name: "probe".into(),
        algebra: LieAlgebra3::su2(),
        sigma: [0.0, 0.0, 1.0],
        a0,
        c0,
        da,
        dc,
        s0: 1.0,
        eta,
    }
}

#[test]
fn battery_matches_finite_differences() {
    let fams = standard_families();
    assert!(fams.len() >= 20);
    let mut measured = 0;
    for fam in &fams {
        for formula in Formula::ALL {
            let r = fd_verify(fam, formula, 0.0, 1e-3).unwrap();
            assert!(
                r.abs_error <= 1e-6,
                "{} {:?} {}",
                fam.name,
                formula,
                r.abs_error
            );
            match r.richardson_ratio {
                Some(q) => {
                    assert!((3.2..=4.8).contains(&q), "{} {:?} {q}", fam.name, formula);
                    measured += 1;
                }
                None => assert!(r.abs_error < ROUNDOFF_FLOOR),
            }
        }
    }
    assert!(measured >= 80, "{measured}");
}

#[test]
fn rescaling_of_canonical() {
    let c = 0.25;
    let fam = su2_family(0.0, -1.0, 0.0, 0.0, c);
    let r = fd_verify(&fam, Formula::Webster, 0.0, 1e-3).unwrap();
    assert!((r.analytic[0] - Complex64::new(-4.0 * c, 0.0)).norm() < 1e-14);
    assert!(r.abs_error <= 1e-7, "{}", r.abs_error);
    let rc = fd_verify(&fam, Formula::ConnectionRicci, 0.0, 1e-3).unwrap();
    assert!((rc.analytic[3] - Complex64::new(-4.0 * c, 0.0)).norm() < 1e-14);
}

#[test]
fn constant_family_is_stationary() {
    let fam = su2_family(0.2, -1.0, 0.0, 0.0, 0.0);
    for formula in Formula::ALL {
        let r = fd_verify(&fam, formula, 0.0, 1e-3).unwrap();
        assert!(r.finite_difference.iter().all(|v| v.norm() == 0.0));
        assert!(r.analytic.iter().all(|v| v.norm() < 1e-14));
        assert_eq!(r.richardson_ratio, None);
    }
}

#[test]
fn chart_tangent_at_canonical_torsion() {
    // E constant at J_can, η = 0: Ȧ₁̄₁̄ = −iE₁̄₁̄,₀ with ω₁¹(T) = −2i.
    let fam = su2_family(0.0, -1.0, 1.0, 0.0, 0.0);
    let r = fd_verify(&fam, Formula::Torsion, 0.0, 1e-3).unwrap();
    let e11 = fam.deformation(0.0).unwrap().e11;
    let expected = Complex64::new(0.0, -1.0) * (2.0 * Complex64::new(0.0, -2.0) * e11.conj());
    assert!((r.analytic[0] - expected).norm() < 1e-14);
    assert!(r.analytic[0].norm() > 0.1);
    assert!(r.richardson_ratio.is_none() || (3.2..=4.8).contains(&r.richardson_ratio.unwrap()));
}

#[test]
fn bad_inputs() {
    let fam = su2_family(0.0, -1.0, 1.0, 0.0, 0.0);
    assert!(matches!(
        fd_verify(&fam, Formula::Webster, 0.0, 0.5),
        Err(TorsionError::PreconditionViolated(_))
    ));
    // c crosses zero, where the chart degenerates
    let bad = su2_family(0.0, -0.0005, 0.0, 1.0, 0.0);
    assert!(matches!(
        fd_verify(&bad, Formula::Webster, 0.0, 1e-3),
        Err(TorsionError::FamilyEvaluationFailed { .. })
    ));
}

#[test]
fn torsion_flow_dissipates_through_the_webster_variation() {
    // E = A, η = −W: d(W·Vol)/dt = (Ẇ + 4ηW)·Vol = −2(|A₁₁|² + W²)·Vol.
    for (a, c, s) in [
        (0.0, -1.0, 1.0),
        (0.2, -1.0, 1.0),
        (-0.3, -0.8, 0.6),
        (0.1, -1.3, 2.0),
    ] {
        let st = LeftInvariantStructure::su2(s, j_from_chart(a, c));
        let g = frame::geometry(&st).unwrap();
        let amb = Homogeneous { geometry: g };
        let d = Deformation {
            e11: g.a11,
            eta: Complex64::new(-g.w, 0.0),
        };
        let wdot = webster_variation(&amb, &d);
        let vol = st.volume();
        let lhs = (wdot.re + 4.0 * d.eta.re * g.w) * vol;
        let rhs = flow::dissipation_rate(
            &flow::sample(&FlowState {
                j: st.j,
                s,
                time: 0.0,
            })
            .unwrap(),
        );
        assert!((lhs - rhs).abs() <= 1e-8, "{lhs} {rhs}");
    }
}

fn flat() -> (std::sync::Arc<Basis>, HeisenbergStructure) {
    let b = Basis::empty();
    let s = HeisenbergStructure::flat(&b);
    (b, s)
}

fn jet(b: &std::sync::Arc<Basis>, p: Poly) -> WeightedJet {
    WeightedJet::from_poly(b, p)
}

#[test]
fn jet_context_examples() {
    let (b, s) = flat();
    let d = Deformation {
        e11: WeightedJet::zero(&b),
        eta: jet(&b, Poly::x()),
    };
    let quarter_root2 = Coeff::sqrt2().scale_q(&torsionflow::exact::Q::new(1.into(), 4.into()));
    let c = coframe_variation(&s, &d);
    assert_eq!(
        c[0],
        WeightedJet::constant(&b, quarter_root2.mul_i().scale_int(2))
    );
    assert_eq!(c[1], d.eta);
    assert!(c[2].is_zero());
    assert!(torsion_variation(&s, &d).is_zero());
    let r = connection_ricci_variation(&s, &d);
    assert!(r.omega[0].is_zero());
    assert_eq!(
        r.omega[1],
        WeightedJet::constant(&b, quarter_root2.scale_int(3))
    );

    let zero = Deformation {
        e11: WeightedJet::zero(&b),
        eta: WeightedJet::constant(&b, Coeff::from_int(5)),
    };
    let r = connection_ricci_variation(&s, &zero);
    assert!(r.omega.iter().all(|w| w.is_zero()) && r.ricci.is_zero());
    assert!(webster_variation(&s, &zero).is_zero());
}

#[test]
fn contracted_ricci_variation_is_the_webster_variation() {
    let mut r = random::rng(11);
    for _ in 0..4 {
        let f = random::real_poly(&mut r, 2, 0.5);
        let b = Basis::new(vec![f]);
        let s = HeisenbergStructure::flat(&b).hat(&[1]);
        let d = Deformation {
            e11: jet(&b, random::complex_poly(&mut r, 2, 0.5)),
            eta: jet(&b, random::real_poly(&mut r, 2, 0.5)),
        };
        let rv = connection_ricci_variation(&s, &d);
        assert!((&rv.ricci - &webster_variation(&s, &d)).is_zero());
        let gen = Ambient::sublaplacian(&s, &d.eta);
        assert_eq!(gen, sublaplacian(&s, &d.eta));
    }
}

#[test]
fn gauge_operator() {
    let (b, s) = flat();
    let z = jet(&b, Poly::z());
    let zbar = jet(&b, Poly::zbar());
    let h = |p: Poly| jet(&b, p);
    let one = WeightedJet::one(&b);
    for g in [
        Deformation {
            e11: z.clone(),
            eta: one.clone(),
        },
        Deformation {
            e11: zbar.clone(),
            eta: h(Poly::y().scale_int(2)),
        },
        Deformation {
            e11: WeightedJet::zero(&b),
            eta: one.scale_int(3),
        },
    ] {
        assert!(gauge_operator_h(&s, &g).unwrap().is_zero());
    }
    let off = Deformation {
        e11: zbar,
        eta: WeightedJet::zero(&b),
    };
    assert!(!gauge_operator_h(&s, &off).unwrap().is_zero());

    let bf = Basis::new(vec![Poly::x()]);
    let hatted = HeisenbergStructure::flat(&bf).hat(&[1]);
    let g = Deformation {
        e11: WeightedJet::zero(&bf),
        eta: WeightedJet::zero(&bf),
    };
    assert!(matches!(
        gauge_operator_h(&hatted, &g),
        Err(TorsionError::UnsupportedBackground(_))
    ));
}

#[test]
fn linearization() {
    let (b, s) = flat();
    let r2 = jet(&b, &(&Poly::x() * &Poly::x()) + &(&Poly::y() * &Poly::y()));
    let l = linearization_l(
        &s,
        &Deformation {
            e11: WeightedJet::zero(&b),
            eta: r2.clone(),
        },
    )
    .unwrap();
    assert_eq!(
        l.scalar_part,
        WeightedJet::constant(&b, Coeff::from_int(10))
    );
    assert!(l.e_part.is_zero());

    let l = linearization_l(
        &s,
        &Deformation {
            e11: r2.clone(),
            eta: WeightedJet::zero(&b),
        },
    )
    .unwrap();
    assert_eq!(l.l0_e11, WeightedJet::one(&b));
    assert_eq!(l.e_part, WeightedJet::one(&b).scale_int(4));

    let mut r = random::rng(5);
    let e = jet(&b, random::complex_poly(&mut r, 3, 0.6));
    let l = linearization_l(
        &s,
        &Deformation {
            e11: e.clone(),
            eta: WeightedJet::zero(&b),
        },
    )
    .unwrap();
    assert_eq!(l.l0_e11, sublaplacian(&s, &e));
    assert_eq!(l.l0_e11.conj(), sublaplacian(&s, &e.conj()));

    let consts = Deformation {
        e11: one_c(&b),
        eta: one_c(&b),
    };
    let l = linearization_l(&s, &consts).unwrap();
    assert!(l.e_part.is_zero() && l.scalar_part.is_zero());
}

fn one_c(b: &std::sync::Arc<Basis>) -> WeightedJet {
    WeightedJet::constant(b, Coeff::from_int(7))
}

#[test]
fn canonical_flow_fixture() {
    // J_can is torsion-free; the flow deformation reduces to pure rescaling.
    let g = frame::geometry(&LeftInvariantStructure::su2(1.0, J_CAN)).unwrap();
    let amb = Homogeneous { geometry: g };
    let d = Deformation {
        e11: g.a11,
        eta: Complex64::new(-g.w, 0.0),
    };
    assert!((webster_variation(&amb, &d) - Complex64::new(8.0, 0.0)).norm() < 1e-13);
}
