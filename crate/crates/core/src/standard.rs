//! Standard automorphisms `(phi u)(t) = phi_t(u(eps t + 2 pi s))` between twisted
//! loop algebras, with `phi_t = e^{t ad X} phi_0`, and the scalings `tau_r`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::automorphism::{FiniteAutomorphism, Order};
use crate::error::{Error, Result};
use crate::expcurve::{exp_2pi_i, ExpCurveData};
use crate::field::{rat, CyclotomicNumber, Rational};
use crate::linalg;
use crate::loops::{LoopElement, TwistContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    First,
    Second,
}

#[derive(Clone)]
pub struct StandardAutomorphism {
    epsilon: i64,
    shift: Rational,
    base: FiniteAutomorphism,
    curve: Option<ExpCurveData>,
    source: Arc<TwistContext>,
    target: Arc<TwistContext>,
}

impl fmt::Debug for StandardAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StandardAutomorphism")
            .field("epsilon", &self.epsilon)
            .field("shift", &self.shift.to_string())
            .field("base", &self.base)
            .field("curve", &self.curve.as_ref().map(|c| c.generator().to_vec()))
            .finish()
    }
}

fn same_context(a: &Arc<TwistContext>, b: &Arc<TwistContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl StandardAutomorphism {
    /// Builds the map and checks that it sends `source` loops to `target` loops.
    pub fn new(
        epsilon: i64,
        shift: Rational,
        base: FiniteAutomorphism,
        curve: Option<ExpCurveData>,
        source: &Arc<TwistContext>,
        target: &Arc<TwistContext>,
    ) -> Result<StandardAutomorphism> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::InvalidInput(format!("epsilon must be 1 or -1, got {epsilon}")));
        }
        if source.algebra().name() != target.algebra().name() || base.algebra().name() != source.algebra().name() {
            return Err(Error::AlgebraMismatch(source.algebra().name().into(), target.algebra().name().into()));
        }
        if !base.check_automorphism() {
            return Err(Error::NotAutomorphism);
        }
        let phi = StandardAutomorphism {
            epsilon,
            shift,
            base,
            curve: curve.filter(|c| !c.is_zero()),
            source: source.clone(),
            target: target.clone(),
        };
        phi.check_periodicity()?;
        Ok(phi.normalized())
    }

    /// A map of `L(g, sigma)` to itself with a constant curve.
    pub fn constant(
        context: &Arc<TwistContext>,
        epsilon: i64,
        shift: Rational,
        base: FiniteAutomorphism,
    ) -> Result<StandardAutomorphism> {
        Self::new(epsilon, shift, base, None, context, context)
    }

    pub fn identity(context: &Arc<TwistContext>) -> StandardAutomorphism {
        StandardAutomorphism {
            epsilon: 1,
            shift: Rational::zero(),
            base: FiniteAutomorphism::identity(context.algebra()),
            curve: None,
            source: context.clone(),
            target: context.clone(),
        }
    }

    /// `u(t) -> u(t + 2 pi a)`.
    pub fn rotation(context: &Arc<TwistContext>, a: Rational) -> StandardAutomorphism {
        StandardAutomorphism {
            shift: a,
            ..Self::identity(context)
        }
        .normalized()
    }

    /// `u(t) -> u(-t)`, from `L(g, sigma)` to `L(g, sigma^-1)`.
    pub fn reflection(context: &Arc<TwistContext>) -> Result<StandardAutomorphism> {
        let target = TwistContext::new(context.sigma().inverse()?, context.denominator())?;
        Ok(StandardAutomorphism {
            epsilon: -1,
            target,
            ..Self::identity(context)
        })
    }

    /// `u(t) -> e^{t ad X} u(t)`, from `L(g, sigma)` to `L(g, e^{2 pi ad X} sigma)`.
    pub fn exp_curve_map(context: &Arc<TwistContext>, curve: ExpCurveData, target_denominator: u64) -> Result<StandardAutomorphism> {
        let sigma = curve.exp_ad(&Rational::one()).compose(context.sigma());
        let target = TwistContext::new(sigma, target_denominator)?;
        Self::new(1, Rational::zero(), FiniteAutomorphism::identity(context.algebra()), Some(curve), context, &target)
    }

    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    pub fn kind(&self) -> Kind {
        if self.epsilon == 1 {
            Kind::First
        } else {
            Kind::Second
        }
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn base(&self) -> &FiniteAutomorphism {
        &self.base
    }

    pub fn curve(&self) -> Option<&ExpCurveData> {
        self.curve.as_ref()
    }

    pub fn source(&self) -> &Arc<TwistContext> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TwistContext> {
        &self.target
    }

    pub fn is_antilinear(&self) -> bool {
        self.base.is_antilinear()
    }

    pub fn is_endomorphism(&self) -> bool {
        same_context(&self.source, &self.target)
    }

    /// Moves the integer part of the shift into the base: `u(t + 2 pi n) = sigma^n u(t)`.
    pub fn normalized(mut self) -> StandardAutomorphism {
        let n = self.shift.floor();
        if !n.is_zero() {
            let n_i64: i64 = n.to_integer().to_string().parse().expect("small shift");
            self.base = self.base.compose(&self.source.sigma().pow(n_i64));
            self.shift -= n;
        }
        self
    }

    fn check_periodicity(&self) -> Result<()> {
        let reach = (2 * self.source.denominator() * self.target.denominator()) as i64;
        for u in LoopElement::spanning_set(&self.source, reach) {
            let v = self.apply_unchecked(&u)?;
            if !v.validate() {
                return Err(Error::TwistMismatch(
                    "the map does not send the source loop algebra into the target".into(),
                ));
            }
        }
        Ok(())
    }

    fn target_exponent(&self, f: &Rational) -> Result<i64> {
        let x = f * Rational::from_integer(self.target.denominator().into());
        if !x.is_integer() {
            return Err(Error::IncompatibleDenominator {
                q: f.to_string(),
                denominator: self.target.denominator(),
            });
        }
        Ok(x.to_integer().to_string().parse().expect("small exponent"))
    }

    fn apply_unchecked(&self, u: &LoopElement) -> Result<LoopElement> {
        let ds = self.source.denominator() as i64;
        let sign = if self.is_antilinear() { -self.epsilon } else { self.epsilon };
        let mut out = Vec::new();
        for (k, v) in u.terms() {
            let phase = exp_2pi_i(&(&self.shift * rat(*k, ds)));
            let w = self.base.apply(&linalg::scale_vector(&phase, v));
            let f = rat(sign * k, ds);
            match &self.curve {
                None => out.push((self.target_exponent(&f)?, w)),
                Some(c) => {
                    for (q, part) in c.decompose(&w) {
                        out.push((self.target_exponent(&(&f + &q))?, part));
                    }
                }
            }
        }
        Ok(LoopElement::new(&self.target, out))
    }

    pub fn apply(&self, u: &LoopElement) -> Result<LoopElement> {
        if !same_context(u.context(), &self.source) {
            return Err(Error::ContextMismatch);
        }
        if !u.validate() {
            return Err(Error::InvalidInput("loop violates the twist condition".into()));
        }
        self.apply_unchecked(u)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &StandardAutomorphism) -> Result<StandardAutomorphism> {
        if !same_context(&first.target, &self.source) {
            return Err(Error::TwistMismatch("target of the first map is not the source of the second".into()));
        }
        let a2 = &self.base;
        let mut base = a2.compose(&first.base);
        let curve = match (&self.curve, &first.curve) {
            (c2, None) => c2.clone(),
            (c2, Some(c1)) => {
                let y = c1.transform(a2);
                base = y.exp_ad(&self.shift).compose(&base);
                let moved = y.scale(&Rational::from_integer(self.epsilon.into()));
                match c2 {
                    None => Some(moved),
                    Some(c2) => Some(c2.combine(&moved)?),
                }
            }
        };
        Ok(StandardAutomorphism {
            epsilon: self.epsilon * first.epsilon,
            shift: &first.shift + &self.shift * Rational::from_integer(first.epsilon.into()),
            base,
            curve: curve.filter(|c| !c.is_zero()),
            source: first.source.clone(),
            target: self.target.clone(),
        }
        .normalized())
    }

    pub fn inverse(&self) -> Result<StandardAutomorphism> {
        let ainv = self.base.inverse()?;
        let eps = Rational::from_integer(self.epsilon.into());
        let (base, curve) = match &self.curve {
            None => (ainv, None),
            Some(c) => {
                let z = c.transform(&ainv);
                (z.exp_ad(&(&eps * &self.shift)).compose(&ainv), Some(z.scale(&-eps.clone())))
            }
        };
        Ok(StandardAutomorphism {
            epsilon: self.epsilon,
            shift: -(&eps * &self.shift),
            base,
            curve,
            source: self.target.clone(),
            target: self.source.clone(),
        }
        .normalized())
    }

    /// `self^n` for an endomorphism.
    pub fn pow(&self, n: u32) -> Result<StandardAutomorphism> {
        let mut acc = StandardAutomorphism::identity(&self.source);
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `psi ∘ self ∘ psi^-1`.
    pub fn conjugate_by(&self, psi: &StandardAutomorphism) -> Result<StandardAutomorphism> {
        psi.compose(self)?.compose(&psi.inverse()?)
    }

    pub fn is_identity(&self) -> bool {
        let n = self.clone().normalized();
        n.is_endomorphism() && n.epsilon == 1 && n.shift.is_zero() && n.curve.is_none() && n.base.is_identity()
    }

    /// Same action on all basis monomials up to degree `n`.
    pub fn agrees_on(&self, other: &StandardAutomorphism, n: i64) -> bool {
        same_context(&self.source, &other.source)
            && LoopElement::spanning_set(&self.source, n)
                .iter()
                .all(|u| matches!((self.apply(u), other.apply(u)), (Ok(a), Ok(b)) if a == b))
    }

    pub fn order(&self, bound: u32) -> Result<Order> {
        if !self.is_endomorphism() {
            return Err(Error::TwistMismatch("order of a map between different loop algebras".into()));
        }
        let mut acc = self.clone();
        for n in 1..=bound {
            if acc.is_identity() {
                return Ok(Order::Finite(n));
            }
            acc = self.compose(&acc)?;
        }
        Ok(Order::Unbounded)
    }

    /// For a constant curve: `phi^n u(t) = phi_0^n u(t + n s)` (first kind), the
    /// closed form used by the order computation.
    pub fn constant_power_is_identity(&self, n: u32) -> Option<bool> {
        if self.curve.is_some() || self.epsilon != 1 || self.is_antilinear() {
            return None;
        }
        let total = &self.shift * Rational::from_integer(n.into());
        if !total.is_integer() {
            return Some(false);
        }
        let p: i64 = total.to_integer().to_string().parse().ok()?;
        Some(self.base.pow(n.into()).compose(&self.source.sigma().pow(p)).is_identity())
    }
}

/// `tau_r: u_k -> r^{k/D} u_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingAutomorphism {
    r: Rational,
}

fn exact_root(x: &Rational, n: u32) -> Option<Rational> {
    let num = x.numer().nth_root(n);
    let den = x.denom().nth_root(n);
    let root = Rational::new(num, den);
    (num_traits::pow(root.clone(), n as usize) == *x).then_some(root)
}

impl ScalingAutomorphism {
    pub fn new(r: Rational) -> Result<ScalingAutomorphism> {
        if !r.is_positive() {
            return Err(Error::InvalidInput(format!("scaling factor must be positive, got {r}")));
        }
        Ok(ScalingAutomorphism { r })
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn is_identity(&self) -> bool {
        self.r.is_one()
    }

    /// `r^{k/D}`, which must be rational.
    pub fn factor(&self, k: i64, denominator: u64) -> Result<Rational> {
        let e = rat(k, denominator as i64);
        let b: u32 = e.denom().to_string().parse().expect("small denominator");
        let root = exact_root(&self.r, b)
            .ok_or_else(|| Error::NonRationalScaling(format!("{}^(1/{b})", self.r)))?;
        let a: i64 = e.numer().to_string().parse().expect("small numerator");
        let p = num_traits::pow(root, a.unsigned_abs() as usize);
        Ok(if a < 0 { p.recip() } else { p })
    }

    pub fn apply(&self, u: &LoopElement) -> Result<LoopElement> {
        let d = u.context().denominator();
        let mut out = Vec::new();
        for (k, v) in u.terms() {
            out.push((*k, linalg::scale_vector_rational(&self.factor(*k, d)?, v)));
        }
        Ok(LoopElement::new(u.context(), out))
    }
}

/// `phi ∘ tau_r`, the general shape of an algebraic automorphism.
#[derive(Clone, Debug)]
pub struct AlgebraicAutomorphism {
    pub standard: StandardAutomorphism,
    pub scaling: Option<ScalingAutomorphism>,
}

impl AlgebraicAutomorphism {
    pub fn apply(&self, u: &LoopElement) -> Result<LoopElement> {
        match &self.scaling {
            Some(s) => self.standard.apply(&s.apply(u)?),
            None => self.standard.apply(u),
        }
    }

    /// Least `n <= bound` with `A^n u = u` on the spanning set of degree `n_span`.
    pub fn order(&self, bound: u32, n_span: i64) -> Result<Order> {
        let span = LoopElement::spanning_set(self.standard.source(), n_span);
        let mut current = span.clone();
        for n in 1..=bound {
            current = current.iter().map(|u| self.apply(u)).collect::<Result<_>>()?;
            if current == span {
                return Ok(Order::Finite(n));
            }
        }
        Ok(Order::Unbounded)
    }
}

/// `zeta_D^k` as used for shifts; exposed for callers checking phases by hand.
pub fn shift_phase(shift: &Rational, k: i64, denominator: u64) -> CyclotomicNumber {
    exp_2pi_i(&(shift * rat(k, denominator as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::named;
    use crate::lie::{half_i_h, sl2_coords, LieAlgebra};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sl2() -> Arc<LieAlgebra> {
        LieAlgebra::builtin_arc("sl2C").unwrap()
    }

    fn ctx(d: u64) -> Arc<TwistContext> {
        TwistContext::untwisted(&sl2(), d).unwrap()
    }

    fn h_curve(scale: Rational) -> ExpCurveData {
        ExpCurveData::from_generator(&sl2(), half_i_h(), &[rat(-1, 1), rat(0, 1), rat(1, 1)])
            .unwrap()
            .scale(&scale)
    }

    #[test]
    fn apply_examples() {
        let c = ctx(1);
        let h1 = LoopElement::monomial(&c, 1, sl2_coords(0, 1, 0));
        let half = StandardAutomorphism::rotation(&c, rat(1, 2));
        assert_eq!(half.apply(&h1).unwrap(), h1.scale(&CyclotomicNumber::from_integer(-1)));
        assert_eq!(StandardAutomorphism::identity(&c).apply(&h1).unwrap(), h1);
        let refl = StandardAutomorphism::reflection(&c).unwrap();
        assert_eq!(
            refl.apply(&h1).unwrap(),
            LoopElement::monomial(refl.target(), -1, sl2_coords(0, 1, 0))
        );
    }

    #[test]
    fn orders() {
        let c = ctx(1);
        assert_eq!(StandardAutomorphism::rotation(&c, rat(1, 3)).order(48).unwrap(), Order::Finite(3));
        let tau = named(&sl2(), "tau").unwrap();
        let phi = StandardAutomorphism::constant(&c, 1, rat(1, 2), tau).unwrap();
        assert_eq!(phi.order(48).unwrap(), Order::Finite(2));
        assert_eq!(phi.constant_power_is_identity(2), Some(true));
        assert_eq!(phi.constant_power_is_identity(1), Some(false));
    }

    #[test]
    fn rotation_cubed_is_identity() {
        let c = ctx(3);
        let r = StandardAutomorphism::rotation(&c, rat(1, 3));
        assert!(r.pow(3).unwrap().is_identity());
        assert!(!r.pow(2).unwrap().is_identity());
    }

    #[test]
    fn second_kind_inverse() {
        let c = ctx(1);
        let mu = named(&sl2(), "mu").unwrap();
        let phi = StandardAutomorphism::constant(&c, -1, rat(0, 1), mu).unwrap();
        assert!(phi.inverse().unwrap().compose(&phi).unwrap().is_identity());
        assert!(phi.compose(&phi).unwrap().is_identity());
    }

    #[test]
    fn twist_periodicity_is_enforced() {
        // tau does not commute-compatibly map L(g, id) to L(g, tau) pointwise
        let c = ctx(2);
        let tctx = TwistContext::new(named(&sl2(), "tau").unwrap(), 2).unwrap();
        let r = StandardAutomorphism::new(1, rat(0, 1), FiniteAutomorphism::identity(&sl2()), None, &c, &tctx);
        assert!(matches!(r, Err(Error::TwistMismatch(_))));
    }

    #[test]
    fn exp_curve_map_untwists() {
        let tctx = TwistContext::new(named(&sl2(), "tau").unwrap(), 2).unwrap();
        let psi = StandardAutomorphism::exp_curve_map(&tctx, h_curve(rat(1, 2)), 2).unwrap();
        assert!(psi.target().sigma().is_identity());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..4 {
            let u = LoopElement::random(&tctx, &mut rng, 3, 4);
            let v = LoopElement::random(&tctx, &mut rng, 3, 4);
            let lhs = psi.apply(&u.bracket(&v).unwrap()).unwrap();
            let rhs = psi.apply(&u).unwrap().bracket(&psi.apply(&v).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let back = psi.inverse().unwrap().apply(&psi.apply(&u).unwrap()).unwrap();
            assert_eq!(back, u);
        }
    }

    #[test]
    fn composition_matches_action() {
        let c = ctx(2);
        let g = sl2();
        let psi = StandardAutomorphism::exp_curve_map(&c, h_curve(rat(1, 1)), 2).unwrap();
        let maps = vec![
            StandardAutomorphism::constant(&c, 1, rat(1, 2), named(&g, "tau").unwrap()).unwrap(),
            StandardAutomorphism::constant(&c, -1, rat(1, 3), named(&g, "mu").unwrap()).unwrap(),
            StandardAutomorphism::constant(&c, -1, rat(0, 1), named(&g, "omega").unwrap()).unwrap(),
            StandardAutomorphism::constant(&c, 1, rat(1, 4), named(&g, "omega").unwrap().compose(&named(&g, "mu").unwrap())).unwrap(),
            psi.clone(),
            psi.inverse().unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let samples: Vec<LoopElement> = (0..3).map(|_| LoopElement::random(&c, &mut rng, 3, 4)).collect();
        for a in &maps {
            for b in &maps {
                let ab = a.compose(b).unwrap();
                for u in &samples {
                    let expect = a.apply(&b.apply(u).unwrap()).unwrap();
                    assert_eq!(ab.apply(u).unwrap(), expect);
                }
            }
            for u in &samples {
                assert_eq!(a.inverse().unwrap().apply(&a.apply(u).unwrap()).unwrap(), *u);
            }
        }
    }

    #[test]
    fn conjugating_constant_by_exp_curve() {
        let c = ctx(2);
        let g = sl2();
        let phi = StandardAutomorphism::constant(&c, 1, rat(0, 1), named(&g, "omega").unwrap().compose(&named(&g, "mu").unwrap())).unwrap();
        let psi = StandardAutomorphism::exp_curve_map(&c, h_curve(rat(1, 1)), 2).unwrap();
        let conj = phi.conjugate_by(&psi).unwrap();
        // X' = X - eps phi_0 X with phi_0 X = -X, so X' = 2X = i h
        let gen = conj.curve().unwrap().generator().to_vec();
        assert_eq!(gen, linalg::scale_vector(&CyclotomicNumber::i(), &sl2_coords(0, 1, 0)));
        assert_eq!(conj.order(8).unwrap(), Order::Finite(2));
    }

    #[test]
    fn scaling() {
        let c = ctx(1);
        let h1 = LoopElement::monomial(&c, 1, sl2_coords(0, 1, 0));
        assert_eq!(ScalingAutomorphism::new(rat(1, 1)).unwrap().apply(&h1).unwrap(), h1);
        assert_eq!(
            ScalingAutomorphism::new(rat(2, 1)).unwrap().apply(&h1).unwrap(),
            h1.scale(&CyclotomicNumber::from_integer(2))
        );
        let t = TwistContext::new(named(&sl2(), "tau").unwrap(), 2).unwrap();
        let e1 = LoopElement::monomial(&t, 1, sl2_coords(1, 0, 0));
        assert!(matches!(
            ScalingAutomorphism::new(rat(2, 1)).unwrap().apply(&e1),
            Err(Error::NonRationalScaling(_))
        ));
        assert_eq!(
            ScalingAutomorphism::new(rat(4, 9)).unwrap().apply(&e1).unwrap(),
            e1.scale(&CyclotomicNumber::from(rat(2, 3)))
        );
        let alg = AlgebraicAutomorphism {
            standard: StandardAutomorphism::identity(&c),
            scaling: Some(ScalingAutomorphism::new(rat(2, 1)).unwrap()),
        };
        assert_eq!(alg.order(48, 2).unwrap(), Order::Unbounded);
    }
}
