//! Transformation laws against the exterior-calculus solver, and coherence
//! of successive rescalings.

use torsionflow::exact::Poly;
use torsionflow::heisenberg::{Basis, Dir, HeisenbergStructure};
use torsionflow::random;

fn assert_routes_agree(s: &HeisenbergStructure) {
    let sol = s.solve();
    assert_eq!(&sol.omega_z, s.omega(Dir::Z1));
    assert_eq!(&sol.omega_zb, s.omega(Dir::Z1bar));
    assert_eq!(&sol.omega_t, s.omega(Dir::T));
    assert_eq!(sol.a1b1b, s.a1b1b());
    assert_eq!(&sol.webster, s.webster());
    assert!(s.residuals().is_zero());
    assert!(s.webster().is_real());
}

#[test]
fn single_rescaling() {
    let mut r = random::rng(1);
    for _ in 0..10 {
        let f = random::real_poly(&mut r, 3, 0.5);
        let b = Basis::new(vec![f]);
        assert_routes_agree(&HeisenbergStructure::flat(&b).hat(&[1]));
    }
}

#[test]
fn rescaling_a_rescaled_structure() {
    let mut r = random::rng(2);
    for _ in 0..5 {
        let f = random::real_poly(&mut r, 2, 0.6);
        let g = random::real_poly(&mut r, 2, 0.6);
        let b = Basis::new(vec![f, g]);
        let s = HeisenbergStructure::flat(&b).hat(&[1, 0]).hat(&[0, 1]);
        assert_routes_agree(&s);
        // Non-unit weights exercise the general exponent.
        assert_routes_agree(&HeisenbergStructure::flat(&b).hat(&[2, 0]).hat(&[-1, 3]));
    }
}

#[test]
fn composition_coherence() {
    let mut r = random::rng(3);
    for _ in 0..10 {
        let f = random::real_poly(&mut r, 2, 0.6);
        let g = random::real_poly(&mut r, 2, 0.6);
        let b = Basis::new(vec![f, g]);
        let flat = HeisenbergStructure::flat(&b);
        let twice = flat.hat(&[1, 0]).hat(&[0, 1]);
        let once = flat.hat(&[1, 1]);
        assert_eq!(twice.a11(), once.a11());
        assert_eq!(twice.webster(), once.webster());
        assert_eq!(twice.omega(Dir::T), once.omega(Dir::T));
        assert_eq!(twice.field(Dir::T), once.field(Dir::T));
    }
}

#[test]
fn hatting_back_returns_flat() {
    let f = &(&Poly::x() * &Poly::t()) + &Poly::y();
    let b = Basis::new(vec![f]);
    let s = HeisenbergStructure::flat(&b).hat(&[1]).hat(&[-1]);
    assert!(s.a11().is_zero());
    assert!(s.webster().is_zero());
    assert!(s.omega(Dir::Z1).is_zero() && s.omega(Dir::T).is_zero());
}
