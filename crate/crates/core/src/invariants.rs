//! Quasiconjugacy invariants of finite-order standard automorphisms and the
//! inverse construction of representatives.
//!
//! First kind: `(p, rho, [beta])`. Second kind: the pair `[phi_plus, phi_minus]`
//! modulo swapping and componentwise conjugation.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::automorphism::{FiniteAutomorphism, Order, DEFAULT_ORDER_BOUND};
use crate::catalog::{self, classify_beta, conjugator, match_catalog};
use crate::error::{Error, Result};
use crate::field::{rat, Rational};
use crate::lie::LieAlgebra;
use crate::loops::TwistContext;
use crate::standard::{Kind, StandardAutomorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstKindInvariant {
    pub q: u32,
    pub p: u32,
    pub rho: String,
    pub beta: String,
}

impl fmt::Display for FirstKindInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},[{}])", self.p, self.rho, self.beta)
    }
}

#[derive(Clone, Debug)]
pub struct SecondKindInvariant {
    pub plus: FiniteAutomorphism,
    pub minus: FiniteAutomorphism,
}

impl SecondKindInvariant {
    /// Catalog classes of both entries when they are involutions.
    pub fn involution_labels(&self) -> Option<(String, String)> {
        let label = |a: &FiniteAutomorphism| match a.order(2) {
            Order::Finite(_) => match_catalog(a).ok().map(|e| e.id),
            Order::Unbounded => None,
        };
        Some((label(&self.plus)?, label(&self.minus)?))
    }
}

impl fmt::Display for SecondKindInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.involution_labels() {
            Some((a, b)) => write!(f, "[{a},{b}]"),
            None => write!(f, "[{:?},{:?}]", self.plus.matrix(), self.minus.matrix()),
        }
    }
}

fn to_i64(q: &Rational) -> i64 {
    q.to_integer().to_string().parse().expect("small integer")
}

/// `(l, m)` with `l p' + m q' = 1` and `0 <= l < q'`.
pub fn bezout(p1: u32, q1: u32) -> (i64, i64) {
    let (p1, q1) = (i64::from(p1), i64::from(q1));
    if q1 == 1 {
        return (0, 1);
    }
    let l = (0..q1).find(|l| (l * p1).rem_euclid(q1) == 1).expect("coprime");
    (l, (1 - l * p1) / q1)
}

fn twist_context(sigma: FiniteAutomorphism) -> Result<Arc<TwistContext>> {
    let d = sigma
        .order(DEFAULT_ORDER_BOUND)
        .finite()
        .ok_or(Error::NotFiniteOrder(DEFAULT_ORDER_BOUND))?;
    TwistContext::new(sigma, d.into())
}

/// `sigma = rho^l beta^q'`, `phi_0 = rho^m beta^-p'`, `phi u(t) = phi_0 u(t + 2 pi p/q)`.
pub fn realize_first(
    p: u32,
    rho: &FiniteAutomorphism,
    beta: &FiniteAutomorphism,
    q: u32,
) -> Result<StandardAutomorphism> {
    if q == 0 || p > q {
        return Err(Error::InvalidInput(format!("need 0 <= p <= q, got p={p}, q={q}")));
    }
    if !beta.commutes_with(rho) {
        return Err(Error::IncompatibleData("beta does not commute with rho".into()));
    }
    let r = p.gcd(&q);
    if !rho.pow(r.into()).is_identity() {
        return Err(Error::IncompatibleData(format!("rho^{r} is not the identity")));
    }
    let (p1, q1) = (p / r, q / r);
    let (l, m) = bezout(p1, q1);
    let sigma = rho.pow(l).compose(&beta.pow(q1.into()));
    let phi0 = rho.pow(m).compose(&beta.pow(-i64::from(p1)));
    let ctx = twist_context(sigma)?;
    StandardAutomorphism::constant(&ctx, 1, rat(p.into(), q.into()), phi0)
}

/// Builds a representative from catalog identifiers.
pub fn realize_first_invariant(algebra: &Arc<LieAlgebra>, inv: &FirstKindInvariant) -> Result<StandardAutomorphism> {
    let rho = catalog::lookup(algebra, &inv.rho)?.automorphism;
    let beta = catalog::beta_classes(algebra, &rho)?
        .into_iter()
        .find(|(label, _)| *label == inv.beta)
        .map(|(_, b)| b)
        .ok_or_else(|| Error::CatalogMiss(format!("no class `{}` for rho = {}", inv.beta, inv.rho)))?;
    realize_first(inv.p, &rho, &beta, inv.q)
}

fn check_order(phi: &StandardAutomorphism, q: u32) -> Result<()> {
    match phi.order(q)? {
        Order::Finite(n) if n == q => Ok(()),
        found => Err(Error::OrderMismatch {
            expected: q.to_string(),
            found: found.to_string(),
        }),
    }
}

pub fn extract_invariant_first(phi: &StandardAutomorphism, q: u32) -> Result<FirstKindInvariant> {
    if phi.kind() != Kind::First {
        return Err(Error::NotFirstKind);
    }
    if phi.curve().is_some() || phi.is_antilinear() {
        return Err(Error::NotApplicable("invariants need a constant linear curve".into()));
    }
    check_order(phi, q)?;
    let mut phi = phi.clone();
    let mut p = to_i64(&(phi.shift() * Rational::from_integer(q.into())));
    if 2 * p > i64::from(q) {
        // u(t) -> u(-t) turns the shift s into -s = 1 - s mod 1
        let refl = StandardAutomorphism::reflection(phi.source())?;
        phi = phi.conjugate_by(&refl)?;
        p = i64::from(q) - p;
        debug_assert_eq!(to_i64(&(phi.shift() * Rational::from_integer(q.into()))), p);
    }
    let p = p as u32;
    let sigma = phi.source().sigma().clone();
    let phi0 = phi.base();
    let r = p.gcd(&q);
    let (p1, q1) = (p / r, q / r);
    let (l, m) = bezout(p1, q1);
    let rho_t = phi0.pow(q1.into()).compose(&sigma.pow(p1.into()));
    let lambda = phi0.pow(l).compose(&sigma.pow(-m));
    let cat = match_catalog(&rho_t)?;
    if cat.order != r {
        return Err(Error::OrderMismatch {
            expected: r.to_string(),
            found: cat.order.to_string(),
        });
    }
    let lambda_inv = lambda.inverse()?;
    let beta = match conjugator(&rho_t)? {
        Some(alpha) => {
            let ai = alpha.inverse()?;
            classify_beta(&cat.automorphism, &ai.compose(&lambda_inv).compose(&alpha))?
        }
        None => classify_beta(&rho_t, &lambda_inv)?,
    };
    Ok(FirstKindInvariant {
        q,
        p,
        rho: cat.id,
        beta,
    })
}

/// `phi u(t) = phi_plus u(-t)` on `L(g, phi_minus^-1 phi_plus)`.
pub fn realize_second(plus: &FiniteAutomorphism, minus: &FiniteAutomorphism) -> Result<StandardAutomorphism> {
    if plus.compose(plus) != minus.compose(minus) {
        return Err(Error::SquareMismatch);
    }
    let sigma = minus.inverse()?.compose(plus);
    let ctx = twist_context(sigma)?;
    StandardAutomorphism::constant(&ctx, -1, Rational::zero(), plus.clone())
}

pub fn extract_invariant_second(phi: &StandardAutomorphism, q: u32) -> Result<SecondKindInvariant> {
    if phi.kind() != Kind::Second {
        return Err(Error::NotSecondKind);
    }
    if phi.curve().is_some() {
        return Err(Error::NotApplicable("invariants need a constant curve".into()));
    }
    if q % 2 != 0 {
        return Err(Error::OrderMismatch {
            expected: "an even order".into(),
            found: q.to_string(),
        });
    }
    check_order(phi, q)?;
    let phi = if phi.shift().is_zero() {
        phi.clone()
    } else {
        let half = phi.shift() * rat(1, 2);
        phi.conjugate_by(&StandardAutomorphism::rotation(phi.source(), half))?
    };
    debug_assert!(phi.shift().is_zero());
    let plus = phi.base().clone();
    let minus = plus.compose(&phi.source().sigma().inverse()?);
    let square = plus.compose(&plus);
    if square != minus.compose(&minus) {
        return Err(Error::SquareMismatch);
    }
    match square.order(q / 2) {
        Order::Finite(n) if n == q / 2 => Ok(SecondKindInvariant { plus, minus }),
        found => Err(Error::OrderMismatch {
            expected: (q / 2).to_string(),
            found: found.to_string(),
        }),
    }
}

pub fn invariants_equal_first(a: &FirstKindInvariant, b: &FirstKindInvariant) -> bool {
    a == b
}

/// Equality under swapping and componentwise conjugation. Decided through the
/// catalog classes when both pairs consist of involutions (then the common
/// square is the identity and the two entries may be conjugated independently).
pub fn invariants_equal_second(a: &SecondKindInvariant, b: &SecondKindInvariant) -> Result<bool> {
    catalog::AlgebraType::of(a.plus.algebra())?;
    let literal = a.plus == b.plus && a.minus == b.minus;
    let swapped = a.plus == b.minus && a.minus == b.plus;
    if literal || swapped {
        return Ok(true);
    }
    match (a.involution_labels(), b.involution_labels()) {
        (Some(x), Some(y)) => {
            let mut x = [x.0, x.1];
            let mut y = [y.0, y.1];
            x.sort();
            y.sort();
            Ok(x == y)
        }
        _ => Err(Error::ClassifierUnavailable(
            "pairs whose square is not the identity".into(),
        )),
    }
}
