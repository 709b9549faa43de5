//! Twisted algebraic loop algebras.
//!
//! A loop is a finite sum `sum_k u_k e^{ikt/D}` whose coefficients satisfy the
//! twist condition `sigma(u_k) = zeta_D^k u_k`, i.e. `u(t + 2 pi) = sigma u(t)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::automorphism::{FiniteAutomorphism, Order, DEFAULT_ORDER_BOUND};
use crate::error::{Error, Result};
use crate::field::{rat, CyclotomicNumber};
use crate::lie::LieAlgebra;
use crate::linalg::{self, Vector};

/// The algebra, its twist `sigma` of order `l`, and the exponent denominator `D`.
pub struct TwistContext {
    algebra: Arc<LieAlgebra>,
    sigma: FiniteAutomorphism,
    order: u32,
    denominator: u64,
    eigenspaces: Vec<Vec<Vector>>,
}

impl fmt::Debug for TwistContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwistContext")
            .field("algebra", &self.algebra.name())
            .field("order", &self.order)
            .field("denominator", &self.denominator)
            .finish()
    }
}

impl PartialEq for TwistContext {
    fn eq(&self, other: &Self) -> bool {
        self.denominator == other.denominator
            && self.algebra.name() == other.algebra.name()
            && self.sigma == other.sigma
    }
}

impl TwistContext {
    pub fn new(sigma: FiniteAutomorphism, denominator: u64) -> Result<Arc<TwistContext>> {
        if sigma.is_antilinear() {
            return Err(Error::TwistMismatch("the twist must be linear".into()));
        }
        if !sigma.check_automorphism() {
            return Err(Error::NotAutomorphism);
        }
        let order = match sigma.order(DEFAULT_ORDER_BOUND) {
            Order::Finite(n) => n,
            Order::Unbounded => return Err(Error::NotFiniteOrder(DEFAULT_ORDER_BOUND)),
        };
        if denominator == 0 || denominator % u64::from(order) != 0 {
            return Err(Error::TwistMismatch(format!(
                "exponent denominator {denominator} is not a multiple of the twist order {order}"
            )));
        }
        let eigenspaces = (0..denominator)
            .map(|k| sigma.eigenspace(&CyclotomicNumber::zeta_power(denominator, k as i64)))
            .collect();
        let sigma = sigma.with_declared_order(order)?;
        Ok(Arc::new(TwistContext {
            algebra: sigma.algebra().clone(),
            sigma,
            order,
            denominator,
            eigenspaces,
        }))
    }

    /// `L(g, id)` with exponents in `(1/D) Z`.
    pub fn untwisted(algebra: &Arc<LieAlgebra>, denominator: u64) -> Result<Arc<TwistContext>> {
        TwistContext::new(FiniteAutomorphism::identity(algebra), denominator)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn sigma(&self) -> &FiniteAutomorphism {
        &self.sigma
    }

    pub fn twist_order(&self) -> u32 {
        self.order
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// `zeta_D^k`.
    pub fn phase(&self, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_power(self.denominator, k)
    }

    /// Basis of the coefficient space allowed at exponent `k`.
    pub fn allowed(&self, k: i64) -> &[Vector] {
        &self.eigenspaces[k.rem_euclid(self.denominator as i64) as usize]
    }

    /// Whether `v` may sit at exponent `k`.
    pub fn admits(&self, k: i64, v: &[CyclotomicNumber]) -> bool {
        self.sigma.apply(v) == linalg::scale_vector(&self.phase(k), v)
    }
}

#[derive(Clone)]
pub struct LoopElement {
    context: Arc<TwistContext>,
    terms: BTreeMap<i64, Vector>,
}

impl PartialEq for LoopElement {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.context, &other.context) && self.terms == other.terms
    }
}

impl fmt::Debug for LoopElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (k, v) in &self.terms {
            m.entry(k, v);
        }
        m.finish()
    }
}

fn same_context(a: &Arc<TwistContext>, b: &Arc<TwistContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn add_term(terms: &mut BTreeMap<i64, Vector>, k: i64, v: Vector) {
    if linalg::is_zero_vector(&v) {
        return;
    }
    match terms.remove(&k) {
        Some(old) => {
            let sum = linalg::add_vectors(&old, &v);
            if !linalg::is_zero_vector(&sum) {
                terms.insert(k, sum);
            }
        }
        None => {
            terms.insert(k, v);
        }
    }
}

impl LoopElement {
    /// Builds a loop from `(k, u_k)` pairs, summing repeats; see [`Self::validate`].
    pub fn new(context: &Arc<TwistContext>, terms: impl IntoIterator<Item = (i64, Vector)>) -> LoopElement {
        let d = context.algebra.dim();
        let mut map = BTreeMap::new();
        for (k, v) in terms {
            assert_eq!(v.len(), d, "coefficient length");
            add_term(&mut map, k, v);
        }
        LoopElement {
            context: context.clone(),
            terms: map,
        }
    }

    /// Like [`Self::new`] but rejects terms violating the twist condition.
    pub fn checked(context: &Arc<TwistContext>, terms: impl IntoIterator<Item = (i64, Vector)>) -> Result<LoopElement> {
        let u = LoopElement::new(context, terms);
        match u.terms.iter().find(|(k, v)| !context.admits(**k, v)) {
            Some((k, _)) => Err(Error::TwistMismatch(format!(
                "coefficient at exponent {k}/{} is not in the required eigenspace",
                context.denominator
            ))),
            None => Ok(u),
        }
    }

    pub fn zero(context: &Arc<TwistContext>) -> LoopElement {
        LoopElement::new(context, [])
    }

    pub fn constant(context: &Arc<TwistContext>, v: Vector) -> LoopElement {
        LoopElement::new(context, [(0, v)])
    }

    pub fn monomial(context: &Arc<TwistContext>, k: i64, v: Vector) -> LoopElement {
        LoopElement::new(context, [(k, v)])
    }

    pub fn context(&self) -> &Arc<TwistContext> {
        &self.context
    }

    pub fn terms(&self) -> &BTreeMap<i64, Vector> {
        &self.terms
    }

    pub fn coefficient(&self, k: i64) -> Vector {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| linalg::zero_vector(self.context.algebra.dim()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `|k|` among the terms.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    /// True iff every term satisfies the twist condition.
    pub fn validate(&self) -> bool {
        self.terms.iter().all(|(k, v)| self.context.admits(*k, v))
    }

    fn check_context(&self, other: &LoopElement) -> Result<()> {
        if same_context(&self.context, &other.context) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &LoopElement) -> Result<LoopElement> {
        self.check_context(other)?;
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            add_term(&mut terms, *k, v.clone());
        }
        Ok(LoopElement {
            context: self.context.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &LoopElement) -> Result<LoopElement> {
        self.add(&other.scale(&CyclotomicNumber::from_integer(-1)))
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> LoopElement {
        LoopElement::new(
            &self.context,
            self.terms.iter().map(|(k, v)| (*k, linalg::scale_vector(c, v))),
        )
    }

    /// Maps every coefficient, keeping exponents.
    pub fn map_coefficients(&self, f: impl Fn(i64, &Vector) -> (i64, Vector)) -> LoopElement {
        LoopElement::new(&self.context, self.terms.iter().map(|(k, v)| f(*k, v)))
    }

    /// Moves the loop into another context with the same algebra, unchecked.
    pub fn with_context(&self, context: &Arc<TwistContext>) -> LoopElement {
        LoopElement::new(context, self.terms.iter().map(|(k, v)| (*k, v.clone())))
    }

    /// Pointwise bracket `[u, v]_0`.
    pub fn bracket(&self, other: &LoopElement) -> Result<LoopElement> {
        self.check_context(other)?;
        let g = &self.context.algebra;
        let mut terms = BTreeMap::new();
        for (k1, a) in &self.terms {
            for (k2, b) in &other.terms {
                add_term(&mut terms, k1 + k2, g.bracket_coords(a, b));
            }
        }
        Ok(LoopElement {
            context: self.context.clone(),
            terms,
        })
    }

    /// `u'`: the term at `k` is multiplied by `i k / D`.
    pub fn derivative(&self) -> LoopElement {
        let i = CyclotomicNumber::i();
        let d = self.context.denominator as i64;
        self.map_coefficients(|k, v| (k, linalg::scale_vector(&i.scale(&rat(k, d)), v)))
    }

    /// `(u, v) = sum_k kappa(u_k, v_{-k})`, the integral divided by `2 pi`.
    pub fn inner(&self, other: &LoopElement) -> Result<CyclotomicNumber> {
        self.check_context(other)?;
        let g = &self.context.algebra;
        let mut acc = CyclotomicNumber::zero(4);
        for (k, a) in &self.terms {
            if let Some(b) = other.terms.get(&-k) {
                acc += &g.killing_coords(a, b);
            }
        }
        Ok(acc)
    }

    /// The cocycle `(u', v)`.
    pub fn cocycle(&self, other: &LoopElement) -> Result<CyclotomicNumber> {
        self.derivative().inner(other)
    }

    /// All basis monomials `x e^{ikt/D}` with `|k| <= n`.
    pub fn spanning_set(context: &Arc<TwistContext>, n: i64) -> Vec<LoopElement> {
        let mut out = Vec::new();
        for k in -n..=n {
            for v in context.allowed(k) {
                out.push(LoopElement::monomial(context, k, v.clone()));
            }
        }
        out
    }

    /// A random valid loop with up to `terms` monomials of degree at most `degree`
    /// and small Gaussian-integer coefficients.
    pub fn random<R: Rng + ?Sized>(context: &Arc<TwistContext>, rng: &mut R, terms: usize, degree: i64) -> LoopElement {
        let i = CyclotomicNumber::i();
        let d = context.algebra.dim();
        let mut out = Vec::new();
        for _ in 0..terms {
            let k = rng.gen_range(-degree..=degree);
            let mut v = linalg::zero_vector(d);
            for b in context.allowed(k) {
                let re = CyclotomicNumber::from_integer(rng.gen_range(-3..=3));
                let im = i.scale(&rat(rng.gen_range(-3..=3), 1));
                v = linalg::add_vectors(&v, &linalg::scale_vector(&(&re + &im), b));
            }
            out.push((k, v));
        }
        LoopElement::new(context, out)
    }
}
