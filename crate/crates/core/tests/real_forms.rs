//! Involutions, real forms, Cartan decompositions and affine real forms of `L(sl2C)`.

use std::sync::Arc;

use kmforge::automorphism::named;
use kmforge::classification::{
    cartan_decomposition, enumerate_involutions, enumerate_real_forms, finite_order_product_check,
    fixed_point_basis, hat_real_form, real_subalgebra, verify_coefficient_condition, verify_hat_real_form,
    verify_real_form, HatAdjoin, InvolutionKind, RealFormDescriptor, RealFormKind,
};
use kmforge::{CyclotomicNumber, FiniteAutomorphism, LieAlgebra, Order, TwistContext};

fn sl2() -> Arc<LieAlgebra> {
    LieAlgebra::builtin_arc("sl2C").unwrap()
}

fn form(label: &str) -> RealFormDescriptor {
    enumerate_real_forms(&sl2())
        .unwrap()
        .into_iter()
        .find(|f| f.invariant.to_string() == label)
        .unwrap_or_else(|| panic!("no form {label}"))
}

fn labels(kind: InvolutionKind) -> Vec<String> {
    enumerate_involutions(&sl2(), kind)
        .unwrap()
        .iter()
        .map(|d| d.invariant.to_string())
        .collect()
}

#[test]
fn involution_catalog() {
    assert_eq!(labels(InvolutionKind::OneA), ["(0,mu,[id])", "(0,mu,[tau])"]);
    assert_eq!(labels(InvolutionKind::OneB), ["(1,id,[id])"]);
    let mut two = labels(InvolutionKind::Two);
    two.sort();
    assert_eq!(two, ["[id,id]", "[mu,id]", "[mu,mu]"]);
}

#[test]
fn enumeration_is_deterministic() {
    let a: Vec<String> = enumerate_real_forms(&sl2()).unwrap().iter().map(|f| f.invariant.to_string()).collect();
    let b: Vec<String> = enumerate_real_forms(&sl2()).unwrap().iter().map(|f| f.invariant.to_string()).collect();
    assert_eq!(a, b);
    assert_eq!(a.len(), 7);
    assert!(enumerate_real_forms(&LieAlgebra::builtin_arc("su2").unwrap()).is_err());
}

#[test]
fn compact_and_split_coefficients() {
    let g = sl2();
    let omega = named(&g, "omega").unwrap();
    // compact form at N = 0: the su(2) constants
    let basis = fixed_point_basis(&form("(0,id,[id])"), 0).unwrap();
    assert_eq!(basis.len(), 3);
    for u in &basis {
        assert_eq!(u.degree(), 0);
        assert_eq!(omega.apply(&u.coefficient(0)), u.coefficient(0));
    }
    // [id,id] at N = 1: su(2)-valued coefficients, real dimension 9
    let basis = fixed_point_basis(&form("[id,id]"), 1).unwrap();
    assert_eq!(basis.len(), 9);
    for u in &basis {
        for v in u.terms().values() {
            assert_eq!(&omega.apply(v), v);
        }
    }
    // [mu,id]: twist mu, half-integer exponents, sl(2,R)-valued coefficients
    let f = form("[mu,id]");
    assert_eq!(f.context().sigma(), &named(&g, "mu").unwrap());
    assert_eq!(f.context().denominator(), 2);
    let omega_mu = omega.compose(&named(&g, "mu").unwrap());
    for u in fixed_point_basis(&f, 2).unwrap() {
        for v in u.terms().values() {
            assert_eq!(&omega_mu.apply(v), v);
        }
    }
}

#[test]
fn the_1b_form_alternates_between_u_and_iu() {
    let g = sl2();
    let omega = named(&g, "omega").unwrap();
    let f = form("(1,id,[id])");
    assert_eq!(f.kind, RealFormKind::OneB);
    let basis = fixed_point_basis(&f, 1).unwrap();
    assert_eq!(basis.len(), 9);
    // u_{-k} = (-1)^k omega(u_k)
    for u in &basis {
        for k in -1..=1i64 {
            let sign = CyclotomicNumber::from_integer(if k % 2 == 0 { 1 } else { -1 });
            let expected: Vec<CyclotomicNumber> = omega.apply(&u.coefficient(k)).iter().map(|x| x * &sign).collect();
            assert_eq!(u.coefficient(-k), expected);
        }
    }
}

#[test]
fn all_forms_verify() {
    for f in enumerate_real_forms(&sl2()).unwrap() {
        for n in [0, 4] {
            let r = verify_real_form(&f, n).unwrap();
            assert!(r.passed, "{} at N={n}: {:?}", f.invariant, r.witness);
        }
    }
}

#[test]
fn corrupted_conditions_fail() {
    let g = sl2();
    let omega = named(&g, "omega").unwrap();
    let su2 = real_subalgebra(&omega).unwrap();
    // su(2) coefficients on the mu-twisted loops break the twist condition
    let mu_ctx = TwistContext::new(named(&g, "mu").unwrap(), 2).unwrap();
    let condition = |_k: i64| su2.clone();
    let r = verify_coefficient_condition(&mu_ctx, &condition, 2).unwrap();
    assert!(!r.passed && !r.in_context);
    // mixing su(2) and sl(2,R) by exponent breaks bracket closure
    let slr = real_subalgebra(&omega.compose(&named(&g, "mu").unwrap())).unwrap();
    let ctx = TwistContext::untwisted(&g, 1).unwrap();
    let mixed = |k: i64| if k == 0 { su2.clone() } else { slr.clone() };
    let r = verify_coefficient_condition(&ctx, &mixed, 2).unwrap();
    assert!(!r.passed && !r.bracket_closed && r.witness.is_some());
}

#[test]
fn cartan_parts_of_sl2r() {
    let f = form("(0,mu,[id])");
    let cd = cartan_decomposition(&f, 0).unwrap();
    assert_eq!((cd.k_basis.len(), cd.m_basis.len()), (1, 2));
    // k = so(2): multiples of e - f
    let k = cd.k_basis[0].coefficient(0);
    assert!(k[1].is_zero());
    assert_eq!(k[0], -&k[2]);
    // m = symmetric traceless: coefficient of e equals that of f
    for m in &cd.m_basis {
        let v = m.coefficient(0);
        assert_eq!(v[0], v[2]);
    }
}

#[test]
fn cartan_for_all_noncompact_forms() {
    for f in enumerate_real_forms(&sl2()).unwrap() {
        if f.kind == RealFormKind::Compact {
            assert!(cartan_decomposition(&f, 1).is_err());
            continue;
        }
        let r = kmforge::classification::verify_cartan(&f, 3).unwrap();
        assert!(r.passed, "{}: {r:?}", f.invariant);
    }
}

#[test]
fn affine_real_forms() {
    assert_eq!(hat_real_form(&form("(0,mu,[tau])")), HatAdjoin::Real);
    assert_eq!(hat_real_form(&form("[mu,mu]")), HatAdjoin::Imaginary);
    for f in enumerate_real_forms(&sl2()).unwrap() {
        assert!(verify_hat_real_form(&f, 2).unwrap().passed, "{}", f.invariant);
    }
}

#[test]
fn product_orders() {
    let g = sl2();
    let id = FiniteAutomorphism::identity(&g);
    let mu = named(&g, "mu").unwrap();
    assert_eq!(finite_order_product_check(&mu, &mu, &id, 48).unwrap(), Order::Finite(1));
    assert_eq!(finite_order_product_check(&mu, &id, &id, 48).unwrap(), Order::Finite(2));
    let rot = kmforge::catalog::a1_rotation(&g, 3, 1).unwrap();
    assert!(finite_order_product_check(&rot, &id, &id, 48).is_err());
}
