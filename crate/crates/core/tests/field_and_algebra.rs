//! Cyclotomic arithmetic, built-in Lie algebras and finite-order automorphisms.

use std::sync::Arc;

use kmforge::automorphism::named;
use kmforge::expcurve::ExpCurveData;
use kmforge::lie::{half_i_h, sl2_coords};
use kmforge::linalg::{self, Matrix};
use kmforge::{rat, CyclotomicNumber, FiniteAutomorphism, LieAlgebra, Order};

fn z(n: u64, k: i64) -> CyclotomicNumber {
    CyclotomicNumber::zeta_power(n, k)
}

fn int(n: i64) -> CyclotomicNumber {
    CyclotomicNumber::from_integer(n)
}

fn sl2() -> Arc<LieAlgebra> {
    LieAlgebra::builtin_arc("sl2C").unwrap()
}

#[test]
fn field_products_and_sums() {
    let one = int(1);
    assert_eq!(&(&one + &z(4, 1)) * &(&one - &z(4, 1)), int(2));
    let s = &(&one + &z(3, 1)) + &z(3, 2);
    assert!(s.is_zero());
}

#[test]
fn field_inverse_of_one_plus_zeta5() {
    let x = &int(1) + &z(5, 1);
    let r = x.inv().unwrap();
    assert!((&r * &x).is_one());
    assert!(int(0).inv().is_err());
}

#[test]
fn roots_of_unity() {
    assert_eq!(z(4, 2), int(-1));
    assert_eq!(z(6, 3), int(-1));
    let w = z(12, 4);
    assert_eq!(w.level(), 12);
    // minimal polynomial x^2 + x + 1
    assert!((&(&(&w * &w) + &w) + &int(1)).is_zero());
    assert_eq!(w, z(3, 1).lift(12).unwrap());
    for k in -6..6 {
        for m in -6..6 {
            assert_eq!(&z(12, k) * &z(12, m), z(12, k + m));
        }
    }
}

#[test]
fn conjugation() {
    assert_eq!(z(4, 1).conj(), -z(4, 1));
    let q = CyclotomicNumber::from(rat(-5, 7));
    assert_eq!(q.conj(), q);
    let a = &int(2) + &(&int(3) * &z(8, 1));
    let c = a.conj();
    assert_eq!(c, &int(2) + &(&int(3) * &z(8, -1)));
    assert!((&c * &a).is_real());
}

#[test]
fn mixed_levels_lift_to_lcm() {
    let s = &z(3, 1) + &z(5, 1);
    assert_eq!(s.level() % 60, 0);
    assert_eq!(&s - &z(5, 1), z(3, 1).lift(s.level()).unwrap());
}

#[test]
fn builtin_tables() {
    let g = sl2();
    let h = sl2_coords(0, 1, 0);
    assert_eq!(g.killing_coords(&h, &h), int(8));
    let su2 = LieAlgebra::builtin("su2").unwrap();
    assert!(su2.is_compact() && su2.killing_negative_definite());
    let sl3 = LieAlgebra::builtin("sl3C").unwrap();
    assert_eq!(sl3.jacobi_residual_max(), 0);
    assert!(sl3.validate().is_ok());
    assert!(LieAlgebra::builtin("e8").is_err());
}

#[test]
fn brackets_and_killing_form() {
    let g = sl2();
    let (e, h, f) = (sl2_coords(1, 0, 0), sl2_coords(0, 1, 0), sl2_coords(0, 0, 1));
    assert_eq!(g.bracket_coords(&h, &e), sl2_coords(2, 0, 0));
    assert_eq!(g.bracket_coords(&e, &f), h);
    assert!(linalg::is_zero_vector(&g.bracket_coords(&h, &h)));
    assert!(g.killing_coords(&e, &e).is_zero());
    let x = sl2_coords(1, -2, 3);
    let y = sl2_coords(4, 0, -1);
    assert_eq!(g.killing_coords(&x, &y), g.killing_coords(&y, &x));
}

#[test]
fn automorphism_checks() {
    let g = sl2();
    assert!(FiniteAutomorphism::identity(&g).check_automorphism());
    let tau = named(&g, "tau").unwrap();
    assert!(tau.check_automorphism());
    assert_eq!(tau.apply(&sl2_coords(1, 0, 0)), sl2_coords(-1, 0, 0));
    assert_eq!(tau.apply(&sl2_coords(0, 1, 0)), sl2_coords(0, 1, 0));
    let bad = Matrix::diagonal(&[int(1), int(2), int(1)]);
    assert!(FiniteAutomorphism::checked(g.clone(), bad, false).is_err());
}

#[test]
fn automorphism_orders() {
    let g = sl2();
    assert_eq!(named(&g, "tau").unwrap().order(48), Order::Finite(2));
    assert_eq!(named(&g, "mu").unwrap().order(48), Order::Finite(2));
    // Ad diag(2, 1) has infinite order
    let hyperbolic = FiniteAutomorphism::diagonal_adjoint(&g, &[int(2), int(1)]).unwrap();
    let curve = ExpCurveData::from_generator(&g, half_i_h(), &[rat(-1, 1), rat(0, 1), rat(1, 1)]).unwrap();
    let composed = curve.exp_ad(&rat(1, 3)).compose(&hyperbolic);
    assert_eq!(composed.order(48), Order::Unbounded);
}

#[test]
fn eigenspaces() {
    let g = sl2();
    let tau = named(&g, "tau").unwrap();
    assert_eq!(tau.eigenspace(&int(1)).len(), 1);
    assert_eq!(tau.eigenspace(&int(-1)).len(), 2);
    let id = FiniteAutomorphism::identity(&g).eigenspace_decomposition().unwrap();
    assert_eq!(id.len(), 1);
    assert_eq!(id[0].2.len(), 3);
    let sl3 = LieAlgebra::builtin_arc("sl3C").unwrap();
    let rho = FiniteAutomorphism::diagonal_adjoint(&sl3, &[int(1), z(3, 1), z(3, 2)]).unwrap();
    let mut dims: Vec<usize> = rho.eigenspace_decomposition().unwrap().iter().map(|e| e.2.len()).collect();
    dims.sort();
    assert_eq!(dims, vec![2, 3, 3]);
}

#[test]
fn exponential_curves() {
    let g = sl2();
    let curve = ExpCurveData::from_generator(&g, half_i_h(), &[rat(-1, 1), rat(0, 1), rat(1, 1)]).unwrap();
    assert!(curve.exp_ad(&rat(0, 1)).is_identity());
    assert!(curve.exp_ad(&rat(1, 1)).is_identity());
    assert_eq!(curve.exp_ad(&rat(1, 2)), named(&g, "tau").unwrap());
    // a curve missing eigenvalues is rejected
    assert!(ExpCurveData::from_generator(&g, half_i_h(), &[rat(0, 1)]).is_err());
}

#[test]
fn fixed_subalgebras() {
    let g = sl2();
    let omega_mu = named(&g, "omega").unwrap().compose(&named(&g, "mu").unwrap());
    let fixed = omega_mu.fixed_subalgebra().unwrap();
    assert_eq!(fixed.dimension(), 3);
    assert!(omega_mu.fixed_set_is_closed(&fixed));
    // sl(2,R): real matrices, so every coordinate is real
    for v in &fixed.basis {
        assert!(v.iter().all(|x| x.is_real()));
    }
    assert_eq!(FiniteAutomorphism::identity(&g).fixed_subalgebra().unwrap().dimension(), 3);
    let tau_fixed = named(&g, "tau").unwrap().fixed_subalgebra().unwrap();
    assert_eq!(tau_fixed.dimension(), 1);
}
