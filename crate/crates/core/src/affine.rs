//! Affine Kac-Moody algebras `L(g, sigma) + F c + F d` and the extension of
//! standard automorphisms to them.

use std::sync::Arc;

use crate::automorphism::Order;
use crate::error::{Error, Result};
use crate::field::{rat, CyclotomicNumber};
use crate::linalg;
use crate::loops::{LoopElement, TwistContext};
use crate::standard::StandardAutomorphism;

#[derive(Clone, Debug, PartialEq)]
pub struct AffineElement {
    pub loop_part: LoopElement,
    pub c: CyclotomicNumber,
    pub d: CyclotomicNumber,
}

impl AffineElement {
    pub fn new(loop_part: LoopElement, c: CyclotomicNumber, d: CyclotomicNumber) -> AffineElement {
        AffineElement { loop_part, c, d }
    }

    pub fn from_loop(u: LoopElement) -> AffineElement {
        AffineElement::new(u, CyclotomicNumber::zero(4), CyclotomicNumber::zero(4))
    }

    pub fn zero(context: &Arc<TwistContext>) -> AffineElement {
        AffineElement::from_loop(LoopElement::zero(context))
    }

    /// The central element `c`.
    pub fn central(context: &Arc<TwistContext>) -> AffineElement {
        AffineElement::new(LoopElement::zero(context), CyclotomicNumber::one(4), CyclotomicNumber::zero(4))
    }

    /// The derivation `d`.
    pub fn derivation(context: &Arc<TwistContext>) -> AffineElement {
        AffineElement::new(LoopElement::zero(context), CyclotomicNumber::zero(4), CyclotomicNumber::one(4))
    }

    pub fn context(&self) -> &Arc<TwistContext> {
        self.loop_part.context()
    }

    pub fn validate(&self) -> bool {
        self.loop_part.validate()
    }

    pub fn is_zero(&self) -> bool {
        self.loop_part.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn add(&self, other: &AffineElement) -> Result<AffineElement> {
        Ok(AffineElement::new(
            self.loop_part.add(&other.loop_part)?,
            &self.c + &other.c,
            &self.d + &other.d,
        ))
    }

    pub fn scale(&self, s: &CyclotomicNumber) -> AffineElement {
        AffineElement::new(self.loop_part.scale(s), &self.c * s, &self.d * s)
    }

    /// `[u + a c + b d, v + a' c + b' d] = [u,v]_0 + b v' - b' u' + (u', v) c`.
    pub fn bracket(&self, other: &AffineElement) -> Result<AffineElement> {
        let u = &self.loop_part;
        let v = &other.loop_part;
        let loop_part = u
            .bracket(v)?
            .add(&v.derivative().scale(&self.d))?
            .sub(&u.derivative().scale(&other.d))?;
        Ok(AffineElement::new(loop_part, u.cocycle(v)?, CyclotomicNumber::zero(4)))
    }
}

/// Outcome of the center and derived algebra check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    pub pairs_checked: usize,
    pub c_is_central: bool,
    pub brackets_have_no_d: bool,
    pub passed: bool,
}

/// Checks on the degree-`n` spanning set (plus `c`, `d`) that `c` is central and
/// no bracket has a `d`-component, so `d` lies outside the derived algebra.
pub fn center_and_derived_check(context: &Arc<TwistContext>, n: i64) -> Result<CenterReport> {
    let mut elems: Vec<AffineElement> = LoopElement::spanning_set(context, n)
        .into_iter()
        .map(AffineElement::from_loop)
        .collect();
    elems.push(AffineElement::central(context));
    elems.push(AffineElement::derivation(context));
    let c = AffineElement::central(context);
    let mut central = true;
    let mut no_d = true;
    let mut pairs = 0;
    for x in &elems {
        central &= c.bracket(x)?.is_zero() && x.bracket(&c)?.is_zero();
        for y in &elems {
            no_d &= x.bracket(y)?.d.is_zero();
            pairs += 1;
        }
    }
    Ok(CenterReport {
        pairs_checked: pairs,
        c_is_central: central,
        brackets_have_no_d: no_d,
        passed: central && no_d,
    })
}

/// The extension `phi^` of a standard automorphism:
/// `phi^ c = eps c`, `phi^ d = eps d + u_phi + nu c`, `phi^ u = phi u + alpha(u) c`
/// with `alpha(u) = -eps (phi u, u_phi)`. Antilinear maps conjugate the `c`, `d`
/// coefficients.
#[derive(Clone, Debug)]
pub struct HatExtension {
    base: StandardAutomorphism,
    u_phi: LoopElement,
    nu: CyclotomicNumber,
}

impl HatExtension {
    pub fn new(base: StandardAutomorphism, nu: CyclotomicNumber) -> Result<HatExtension> {
        let eps = CyclotomicNumber::from_integer(base.epsilon());
        let u_phi = match base.curve() {
            None => LoopElement::zero(base.target()),
            Some(c) => LoopElement::constant(base.target(), linalg::scale_vector(&-eps, c.generator())),
        };
        if !u_phi.validate() {
            return Err(Error::IncompatibleData("u_phi is not a loop of the target algebra".into()));
        }
        Ok(HatExtension { base, u_phi, nu })
    }

    /// The unique extension of the same order: `nu = -eps (u_phi, u_phi) / 2`.
    pub fn finite_order(base: StandardAutomorphism) -> Result<HatExtension> {
        if base.is_endomorphism() && base.order(crate::automorphism::DEFAULT_ORDER_BOUND)? == Order::Unbounded {
            return Err(Error::NotFiniteOrder(crate::automorphism::DEFAULT_ORDER_BOUND));
        }
        let mut hat = HatExtension::new(base, CyclotomicNumber::zero(4))?;
        hat.nu = hat.finite_order_nu()?;
        Ok(hat)
    }

    fn finite_order_nu(&self) -> Result<CyclotomicNumber> {
        let norm = self.u_phi.inner(&self.u_phi)?;
        Ok(norm.scale(&rat(-self.base.epsilon(), 2)))
    }

    pub fn base(&self) -> &StandardAutomorphism {
        &self.base
    }

    pub fn epsilon(&self) -> i64 {
        self.base.epsilon()
    }

    pub fn u_phi(&self) -> &LoopElement {
        &self.u_phi
    }

    pub fn nu(&self) -> &CyclotomicNumber {
        &self.nu
    }

    pub fn with_nu(&self, nu: CyclotomicNumber) -> HatExtension {
        HatExtension { nu, ..self.clone() }
    }

    pub fn apply(&self, x: &AffineElement) -> Result<AffineElement> {
        let eps = CyclotomicNumber::from_integer(self.epsilon());
        let (a, b) = if self.base.is_antilinear() {
            (x.c.conj(), x.d.conj())
        } else {
            (x.c.clone(), x.d.clone())
        };
        let phi_u = self.base.apply(&x.loop_part)?;
        let alpha = -(&eps * &phi_u.inner(&self.u_phi)?);
        let loop_part = phi_u.add(&self.u_phi.scale(&b))?;
        let c = &(&alpha + &(&a * &eps)) + &(&b * &self.nu);
        Ok(AffineElement::new(loop_part, c, &b * &eps))
    }

    /// Least `n <= bound` with `phi^^n = id` on `c`, `d` and the degree-`n_span` spanning set.
    pub fn order(&self, bound: u32, n_span: i64) -> Result<Order> {
        if !self.base.is_endomorphism() {
            return Err(Error::TwistMismatch("order of a map between different algebras".into()));
        }
        let ctx = self.base.source();
        let mut span: Vec<AffineElement> = LoopElement::spanning_set(ctx, n_span)
            .into_iter()
            .map(AffineElement::from_loop)
            .collect();
        span.push(AffineElement::central(ctx));
        span.push(AffineElement::derivation(ctx));
        // i c and i d catch antilinear maps that are only real-linearly trivial
        span.push(AffineElement::central(ctx).scale(&CyclotomicNumber::i()));
        span.push(AffineElement::derivation(ctx).scale(&CyclotomicNumber::i()));
        let mut current = span.clone();
        for n in 1..=bound {
            current = current.iter().map(|x| self.apply(x)).collect::<Result<_>>()?;
            if current == span {
                return Ok(Order::Finite(n));
            }
        }
        Ok(Order::Unbounded)
    }

    /// Whether the loop part of `phi^ u` is `phi u` on the spanning set.
    pub fn restricts_to_base(&self, n_span: i64) -> Result<bool> {
        for u in LoopElement::spanning_set(self.base.source(), n_span) {
            let image = self.apply(&AffineElement::from_loop(u.clone()))?;
            if image.loop_part != self.base.apply(&u)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::named;
    use crate::expcurve::ExpCurveData;
    use crate::lie::{half_i_h, sl2_coords, LieAlgebra};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sl2() -> Arc<LieAlgebra> {
        LieAlgebra::builtin_arc("sl2C").unwrap()
    }

    fn ctx() -> Arc<TwistContext> {
        TwistContext::untwisted(&sl2(), 1).unwrap()
    }

    fn random_affine(c: &Arc<TwistContext>, rng: &mut ChaCha8Rng) -> AffineElement {
        use rand::Rng;
        AffineElement::new(
            LoopElement::random(c, rng, 3, 3),
            CyclotomicNumber::from_integer(rng.gen_range(-3..=3)),
            CyclotomicNumber::from_integer(rng.gen_range(-3..=3)),
        )
    }

    fn preserves_bracket(hat: &HatExtension, c: &Arc<TwistContext>, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..4).all(|_| {
            let x = random_affine(c, &mut rng);
            let y = random_affine(c, &mut rng);
            let lhs = hat.apply(&x.bracket(&y).unwrap()).unwrap();
            let rhs = hat.apply(&x).unwrap().bracket(&hat.apply(&y).unwrap()).unwrap();
            lhs == rhs
        })
    }

    fn curve() -> ExpCurveData {
        ExpCurveData::from_generator(&sl2(), half_i_h(), &[rat(-1, 1), rat(0, 1), rat(1, 1)]).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let c = ctx();
        let i = CyclotomicNumber::i();
        let h = sl2_coords(0, 1, 0);
        let u = AffineElement::from_loop(LoopElement::monomial(&c, 1, h.clone()));
        let du = AffineElement::derivation(&c).bracket(&u).unwrap();
        assert_eq!(du, AffineElement::from_loop(LoopElement::monomial(&c, 1, linalg::scale_vector(&i, &h))));
        assert!(AffineElement::central(&c).bracket(&u).unwrap().is_zero());
        let v = AffineElement::from_loop(LoopElement::monomial(&c, -1, h));
        let uv = u.bracket(&v).unwrap();
        assert!(uv.loop_part.is_zero());
        assert_eq!(uv.c, i.scale(&rat(8, 1)));
        assert!(uv.d.is_zero());
    }

    #[test]
    fn jacobi_with_c_and_d() {
        let c = TwistContext::new(named(&sl2(), "tau").unwrap(), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..4 {
            let x = random_affine(&c, &mut rng);
            let y = random_affine(&c, &mut rng);
            let z = random_affine(&c, &mut rng);
            let s = x
                .bracket(&y.bracket(&z).unwrap())
                .unwrap()
                .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap())
                .unwrap()
                .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap())
                .unwrap();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn center_check() {
        let r = center_and_derived_check(&ctx(), 3).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn constant_extension() {
        let c = ctx();
        let phi = StandardAutomorphism::constant(&c, -1, rat(0, 1), named(&sl2(), "mu").unwrap()).unwrap();
        let hat = HatExtension::new(phi, CyclotomicNumber::zero(4)).unwrap();
        assert!(hat.u_phi().is_zero());
        assert_eq!(
            hat.apply(&AffineElement::derivation(&c)).unwrap(),
            AffineElement::derivation(&c).scale(&CyclotomicNumber::from_integer(-1))
        );
        assert!(preserves_bracket(&hat, &c, 1));
        assert_eq!(hat.order(8, 2).unwrap(), Order::Finite(2));
    }

    #[test]
    fn identity_with_nu() {
        let c = ctx();
        let hat = HatExtension::new(StandardAutomorphism::identity(&c), CyclotomicNumber::from_integer(5)).unwrap();
        let img = hat.apply(&AffineElement::derivation(&c)).unwrap();
        assert_eq!(img.d, CyclotomicNumber::one(4));
        assert_eq!(img.c, CyclotomicNumber::from_integer(5));
        assert!(preserves_bracket(&hat, &c, 2));
        assert_eq!(hat.order(8, 1).unwrap(), Order::Unbounded);
    }

    #[test]
    fn exp_curve_extension() {
        let c = ctx();
        let phi = StandardAutomorphism::exp_curve_map(&c, curve(), 1).unwrap();
        let hat = HatExtension::new(phi, CyclotomicNumber::zero(4)).unwrap();
        let expected = linalg::scale_vector_rational(&rat(-1, 1), &half_i_h());
        assert_eq!(hat.u_phi(), &LoopElement::constant(&c, expected));
        assert!(preserves_bracket(&hat, &c, 3));
    }

    #[test]
    fn conjugated_involution_needs_nu() {
        let c = ctx();
        let g = sl2();
        let wm = named(&g, "omega").unwrap().compose(&named(&g, "mu").unwrap());
        let phi = StandardAutomorphism::constant(&c, 1, rat(0, 1), wm).unwrap();
        let psi = StandardAutomorphism::exp_curve_map(&c, curve(), 1).unwrap();
        let conj = phi.conjugate_by(&psi).unwrap();
        let hat = HatExtension::finite_order(conj).unwrap();
        assert!(!hat.u_phi().is_zero());
        assert!(preserves_bracket(&hat, &c, 4));
        assert_eq!(hat.order(8, 2).unwrap(), Order::Finite(2));
        assert!(hat.restricts_to_base(2).unwrap());
        let zero_nu = hat.with_nu(CyclotomicNumber::zero(4));
        assert_ne!(zero_nu.order(8, 2).unwrap(), Order::Finite(2));
    }

    #[test]
    fn rotation_order_three() {
        let c = ctx();
        let hat = HatExtension::finite_order(StandardAutomorphism::rotation(&c, rat(1, 3))).unwrap();
        assert_eq!(hat.order(8, 2).unwrap(), Order::Finite(3));
    }
}
