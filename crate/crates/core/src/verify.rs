//! Exact verification suites with seeded random trials. Each suite returns a
//! report listing how many checks ran and witnesses for any that failed.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::affine::{AffineElement, HatExtension};
use crate::automorphism::{named, FiniteAutomorphism, Order, DEFAULT_ORDER_BOUND};
use crate::catalog;
use crate::classification::{self, Invariant, RealFormKind};
use crate::error::{Error, Result};
use crate::expcurve::ExpCurveData;
use crate::field::{lcm, rat, CyclotomicNumber};
use crate::invariants::{self, FirstKindInvariant, SecondKindInvariant};
use crate::lie::{half_i_h, LieAlgebra};
use crate::loops::{LoopElement, TwistContext};
use crate::standard::{AlgebraicAutomorphism, ScalingAutomorphism, StandardAutomorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Jacobi,
    Cocycle,
    Roundtrip,
    Realforms,
    Cartan,
    Hat,
    Scaling,
    Expiso,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Jacobi,
        Suite::Cocycle,
        Suite::Roundtrip,
        Suite::Realforms,
        Suite::Cartan,
        Suite::Hat,
        Suite::Scaling,
        Suite::Expiso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Cocycle => "cocycle",
            Suite::Roundtrip => "roundtrip",
            Suite::Realforms => "realforms",
            Suite::Cartan => "cartan",
            Suite::Hat => "hat",
            Suite::Scaling => "scaling",
            Suite::Expiso => "expiso",
        }
    }

    /// The exp-curve suite uses a fixed `sl2` construction.
    pub fn applies_to(self, algebra: &LieAlgebra) -> bool {
        self != Suite::Expiso || algebra.name() == "sl2C"
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub algebra: Arc<LieAlgebra>,
    /// Truncation `N` for slice-based checks.
    pub truncation: i64,
    /// Random trials for property checks.
    pub trials: usize,
    /// Maximal exponent of random loops.
    pub degree: i64,
    pub seed: u64,
    pub bound: u32,
    /// Orders `q` for first-kind round trips.
    pub orders: Vec<u32>,
    /// Scaling factor for the scaling suite.
    pub scaling: u32,
    /// Exponent denominator of the untwisted test context.
    pub denominator: u64,
}

impl VerifyConfig {
    pub fn new(algebra: Arc<LieAlgebra>) -> VerifyConfig {
        VerifyConfig {
            algebra,
            truncation: 4,
            trials: 100,
            degree: 6,
            seed: 0,
            bound: DEFAULT_ORDER_BOUND,
            orders: vec![2, 3, 4, 6],
            scaling: 2,
            denominator: 1,
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub algebra: String,
    pub passed: bool,
    #[serde(serialize_with = "decimal")]
    pub checks: usize,
    #[serde(serialize_with = "decimal")]
    pub failures: usize,
    pub witnesses: Vec<String>,
    pub details: Value,
}

fn decimal<S: serde::Serializer>(n: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// Accumulates check outcomes, keeping the first few witnesses.
struct Tally {
    checks: usize,
    failures: usize,
    witnesses: Vec<String>,
}

const MAX_WITNESSES: usize = 10;

impl Tally {
    fn new() -> Tally {
        Tally {
            checks: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
        ok
    }

    /// Records an error as a failed check.
    fn check_result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }

    fn finish(self, suite: Suite, algebra: &LieAlgebra, details: Value) -> SuiteReport {
        SuiteReport {
            suite,
            algebra: algebra.name().into(),
            passed: self.failures == 0 && self.checks > 0,
            checks: self.checks,
            failures: self.failures,
            witnesses: self.witnesses,
            details,
        }
    }
}

pub fn run(suite: Suite, config: &VerifyConfig) -> Result<SuiteReport> {
    match suite {
        Suite::Jacobi => jacobi(config),
        Suite::Cocycle => cocycle(config),
        Suite::Roundtrip => roundtrip(config),
        Suite::Realforms => realforms(config),
        Suite::Cartan => cartan(config),
        Suite::Hat => hat(config),
        Suite::Scaling => scaling(config),
        Suite::Expiso => expiso(config),
    }
}

/// The untwisted context and one twisted context per catalog involution, with
/// exponent denominators `d` and `lcm(2, d)`.
pub fn test_contexts(algebra: &Arc<LieAlgebra>, d: u64) -> Result<Vec<Arc<TwistContext>>> {
    let mut out = vec![TwistContext::untwisted(algebra, d)?];
    let mut twists: Vec<FiniteAutomorphism> = Vec::new();
    if let Ok(tau) = named(algebra, "tau") {
        twists.push(tau);
    }
    for e in catalog::representatives(algebra, 2)? {
        if !twists.contains(&e.automorphism) {
            twists.push(e.automorphism);
        }
    }
    for t in twists {
        out.push(TwistContext::new(t, lcm(2, d))?);
    }
    Ok(out)
}

fn gaussian<R: Rng>(rng: &mut R) -> CyclotomicNumber {
    let re = CyclotomicNumber::from_integer(rng.gen_range(-3..=3));
    let im = CyclotomicNumber::i().scale(&rat(rng.gen_range(-3..=3), 1));
    &re + &im
}

pub fn random_affine<R: Rng>(ctx: &Arc<TwistContext>, rng: &mut R, degree: i64) -> AffineElement {
    let terms = rng.gen_range(1..=4);
    let u = LoopElement::random(ctx, rng, terms, degree);
    AffineElement::new(u, gaussian(rng), gaussian(rng))
}

fn random_loop<R: Rng>(ctx: &Arc<TwistContext>, rng: &mut R, degree: i64) -> LoopElement {
    let terms = rng.gen_range(1..=4);
    LoopElement::random(ctx, rng, terms, degree)
}

fn jacobi(config: &VerifyConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    let mut per_context = Vec::new();
    for (n, ctx) in test_contexts(&config.algebra, config.denominator)?.iter().enumerate() {
        let mut rng = config.rng(1 + n as u64);
        let before = tally.failures;
        for trial in 0..config.trials {
            let x = random_affine(ctx, &mut rng, config.degree);
            let y = random_affine(ctx, &mut rng, config.degree);
            let z = random_affine(ctx, &mut rng, config.degree);
            let residual = (|| -> Result<AffineElement> {
                let a = x.bracket(&y.bracket(&z)?)?;
                let b = y.bracket(&z.bracket(&x)?)?;
                let c = z.bracket(&x.bracket(&y)?)?;
                a.add(&b)?.add(&c)
            })();
            if let Some(r) = tally.check_result(residual, || format!("trial {trial}")) {
                tally.check(r.is_zero() && r.validate(), || {
                    format!("Jacobi residual {r:?} on twist {:?} trial {trial}", ctx.sigma())
                });
            }
        }
        per_context.push(json!({
            "twist_order": ctx.twist_order().to_string(),
            "D": ctx.denominator().to_string(),
            "trials": config.trials.to_string(),
            "failures": (tally.failures - before).to_string(),
        }));
    }
    Ok(tally.finish(Suite::Jacobi, &config.algebra, json!({ "contexts": per_context })))
}

fn cocycle(config: &VerifyConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for (n, ctx) in test_contexts(&config.algebra, config.denominator)?.iter().enumerate() {
        let mut rng = config.rng(100 + n as u64);
        for trial in 0..config.trials {
            let u = random_loop(ctx, &mut rng, config.degree);
            let v = random_loop(ctx, &mut rng, config.degree);
            let w = random_loop(ctx, &mut rng, config.degree);
            let checks = (|| -> Result<(bool, bool, bool)> {
                let anti = (&u.cocycle(&v)? + &v.cocycle(&u)?).is_zero();
                let cyc = &(&u.bracket(&v)?.cocycle(&w)? + &v.bracket(&w)?.cocycle(&u)?) + &w.bracket(&u)?.cocycle(&v)?;
                let der = u.bracket(&v)?.derivative() == u.derivative().bracket(&v)?.add(&u.bracket(&v.derivative())?)?;
                Ok((anti, cyc.is_zero(), der))
            })();
            if let Some((anti, cyc, der)) = tally.check_result(checks, || format!("trial {trial}")) {
                tally.check(anti, || format!("antisymmetry fails for {u:?}, {v:?}"));
                tally.check(cyc, || format!("cocycle identity fails for {u:?}, {v:?}, {w:?}"));
                tally.check(der, || format!("derivation rule fails for {u:?}, {v:?}"));
            }
        }
    }
    let details = json!({ "trials": config.trials.to_string(), "degree": config.degree.to_string() });
    Ok(tally.finish(Suite::Cocycle, &config.algebra, details))
}

/// All catalog invariants `(p, rho, [beta])` of order `q` with `0 <= p <= q/2`;
/// `rho` has order exactly `gcd(p, q)`.
pub fn first_kind_invariants(algebra: &Arc<LieAlgebra>, q: u32) -> Result<Vec<FirstKindInvariant>> {
    let mut out = Vec::new();
    for p in 0..=q / 2 {
        let r = num_integer::gcd(p, q);
        let reps = match catalog::representatives(algebra, r) {
            Ok(reps) => reps,
            Err(Error::CatalogMiss(_)) => continue,
            Err(e) => return Err(e),
        };
        for rho in reps {
            for (beta, _) in catalog::beta_classes(algebra, &rho.automorphism)? {
                out.push(FirstKindInvariant {
                    q,
                    p,
                    rho: rho.id.clone(),
                    beta,
                });
            }
        }
    }
    Ok(out)
}

/// Pairs of involutions (by name) for second-kind round trips.
pub fn second_kind_pairs(algebra: &Arc<LieAlgebra>) -> Result<Vec<(String, String)>> {
    let mut names: Vec<String> = catalog::involution_classes(algebra)?.into_iter().map(|e| e.id).collect();
    if named(algebra, "tau").is_ok() && !names.iter().any(|n| n == "tau") {
        names.insert(1, "tau".into());
    }
    let mut out = Vec::new();
    for (i, a) in names.iter().enumerate() {
        for b in &names[..=i] {
            out.push((a.clone(), b.clone()));
        }
    }
    Ok(out)
}

fn resolve(algebra: &Arc<LieAlgebra>, name: &str) -> Result<FiniteAutomorphism> {
    named(algebra, name).or_else(|_| catalog::lookup(algebra, name).map(|e| e.automorphism))
}

/// Checks one second-kind pair: realized order `2 ord(plus^2)`, the extracted
/// invariant equals the input, and swapping is detected as equal.
pub fn check_second_kind(plus: &FiniteAutomorphism, minus: &FiniteAutomorphism, bound: u32) -> Result<Vec<(bool, String)>> {
    let square_order = match plus.compose(plus).order(bound) {
        Order::Finite(n) => n,
        Order::Unbounded => return Err(Error::NotFiniteOrder(bound)),
    };
    let phi = invariants::realize_second(plus, minus)?;
    let q = 2 * square_order;
    let order = phi.order(bound)?;
    let input = SecondKindInvariant {
        plus: plus.clone(),
        minus: minus.clone(),
    };
    let swapped = SecondKindInvariant {
        plus: minus.clone(),
        minus: plus.clone(),
    };
    let mut out = vec![(order == Order::Finite(q), format!("order {order}, expected {q}"))];
    let extracted = invariants::extract_invariant_second(&phi, q)?;
    out.push((invariants::invariants_equal_second(&extracted, &input)?, format!("extracted {extracted}, expected {input}")));
    out.push((invariants::invariants_equal_second(&input, &swapped)?, format!("swap of {input} not detected")));
    Ok(out)
}

fn roundtrip(config: &VerifyConfig) -> Result<SuiteReport> {
    let g = &config.algebra;
    let mut tally = Tally::new();
    let mut first = Vec::new();
    for &q in &config.orders {
        for inv in first_kind_invariants(g, q)? {
            let Some(phi) = tally.check_result(invariants::realize_first_invariant(g, &inv), || format!("realizing {inv} (q={q})"))
            else {
                continue;
            };
            let order = phi.order(config.bound.max(q))?;
            tally.check(order == Order::Finite(q), || format!("{inv} (q={q}) realized with order {order}"));
            if let Some(back) = tally.check_result(invariants::extract_invariant_first(&phi, q), || format!("extracting {inv} (q={q})")) {
                tally.check(invariants::invariants_equal_first(&back, &inv), || {
                    format!("{inv} (q={q}) extracted as {back}")
                });
            }
            first.push(json!({ "q": q.to_string(), "invariant": inv.to_string() }));
        }
    }
    let mut second = Vec::new();
    for (a, b) in second_kind_pairs(g)? {
        let (plus, minus) = (resolve(g, &a)?, resolve(g, &b)?);
        if let Some(results) = tally.check_result(check_second_kind(&plus, &minus, config.bound), || format!("pair [{a},{b}]")) {
            for (ok, witness) in results {
                tally.check(ok, || format!("[{a},{b}]: {witness}"));
            }
        }
        second.push(format!("[{a},{b}]"));
    }
    // distinct classes must not be identified
    let id = FiniteAutomorphism::identity(g);
    for e in catalog::representatives(g, 2)? {
        let a = SecondKindInvariant {
            plus: id.clone(),
            minus: id.clone(),
        };
        let b = SecondKindInvariant {
            plus: e.automorphism.clone(),
            minus: id.clone(),
        };
        let eq = invariants::invariants_equal_second(&a, &b)?;
        tally.check(!eq, || format!("[id,id] identified with [{},id]", e.id));
    }
    let details = json!({ "first_kind": first, "second_kind": second });
    Ok(tally.finish(Suite::Roundtrip, g, details))
}

fn realforms(config: &VerifyConfig) -> Result<SuiteReport> {
    let g = &config.algebra;
    let forms = classification::enumerate_real_forms(g)?;
    let mut tally = Tally::new();
    let mut rows = Vec::new();
    for f in &forms {
        let r = classification::verify_real_form(f, config.truncation)?;
        tally.check(r.passed, || format!("{}: {}", f.invariant, r.witness.clone().unwrap_or_default()));
        let recovered = Invariant::of(&f.involution, if f.kind == RealFormKind::Compact { 1 } else { 2 });
        if let Some(inv) = tally.check_result(recovered, || format!("invariant of {}", f.invariant)) {
            let same = inv.equivalent(&f.invariant)?;
            tally.check(same, || format!("{} recovered as {inv}", f.invariant));
        }
        rows.push(json!({
            "kind": f.kind,
            "invariant": f.invariant.to_string(),
            "real_dimension": r.real_dimension.to_string(),
            "passed": r.passed,
        }));
    }
    for (i, a) in forms.iter().enumerate() {
        for b in &forms[i + 1..] {
            let eq = a.invariant.equivalent(&b.invariant)?;
            tally.check(!eq, || format!("{} and {} identified", a.invariant, b.invariant));
        }
    }
    let details = json!({
        "truncation": config.truncation.to_string(),
        "count": forms.len().to_string(),
        "forms": rows,
    });
    Ok(tally.finish(Suite::Realforms, g, details))
}

fn cartan(config: &VerifyConfig) -> Result<SuiteReport> {
    let g = &config.algebra;
    let mut tally = Tally::new();
    let mut rows = Vec::new();
    for f in classification::enumerate_real_forms(g)? {
        if f.kind == RealFormKind::Compact {
            continue;
        }
        let r = classification::verify_cartan(&f, config.truncation)?;
        tally.check(r.passed, || format!("{}: {r:?}", f.invariant));
        rows.push(json!({
            "invariant": f.invariant.to_string(),
            "k_dimension": r.k_dimension.to_string(),
            "m_dimension": r.m_dimension.to_string(),
            "passed": r.passed,
        }));
    }
    let details = json!({ "truncation": config.truncation.to_string(), "forms": rows });
    Ok(tally.finish(Suite::Cartan, g, details))
}

/// The curve `t -> e^{t ad X}` with `X = (i/2) h` of the first `sl2` triple.
pub fn half_h_curve(algebra: &Arc<LieAlgebra>) -> Result<ExpCurveData> {
    if algebra.name() != "sl2C" {
        return Err(Error::InvalidInput(format!("the exp-curve checks need sl2C, got {}", algebra.name())));
    }
    ExpCurveData::from_generator(algebra, half_i_h(), &[rat(-1, 1), rat(0, 1), rat(1, 1)])
}

/// Involutions whose conjugates by an exp curve are tested for the finite-order extension.
fn hat_involutions(algebra: &Arc<LieAlgebra>) -> Result<Vec<(String, StandardAutomorphism)>> {
    let ctx = TwistContext::untwisted(algebra, 1)?;
    let mut out = Vec::new();
    for e in catalog::representatives(algebra, 2)? {
        let phi = StandardAutomorphism::constant(&ctx, 1, rat(0, 1), e.automorphism.clone())?;
        out.push((e.id, phi));
    }
    for f in classification::enumerate_real_forms(algebra)? {
        out.push((format!("real form {}", f.invariant), f.conjugation));
    }
    Ok(out)
}

fn hat(config: &VerifyConfig) -> Result<SuiteReport> {
    let g = &config.algebra;
    let mut tally = Tally::new();
    let span = 2;
    let mut rows = Vec::new();
    if let Ok(curve) = half_h_curve(g) {
        let mut controls = 0;
        let generic = curve.exp_ad(&rat(1, 8));
        for (name, phi) in hat_involutions(g)? {
            // the curve must commute with the twist to act on the loop algebra
            if !generic.commutes_with(phi.source().sigma()) {
                continue;
            }
            let psi = StandardAutomorphism::exp_curve_map(phi.source(), curve.clone(), phi.source().denominator())?;
            let conj = phi.conjugate_by(&psi)?;
            let Some(ext) = tally.check_result(HatExtension::finite_order(conj), || format!("extending {name}")) else {
                continue;
            };
            let order = ext.order(config.bound, span)?;
            tally.check(order == Order::Finite(2), || format!("{name}: extension has order {order}"));
            let restricts = ext.restricts_to_base(span)?;
            tally.check(restricts, || format!("{name}: extension does not restrict to the loop map"));
            let u_phi_zero = ext.u_phi().is_zero();
            if !u_phi_zero {
                controls += 1;
                let zero = ext.with_nu(CyclotomicNumber::zero(4)).order(config.bound, span)?;
                tally.check(zero != Order::Finite(2), || format!("{name}: nu = 0 still has order 2"));
            }
            rows.push(json!({ "involution": name, "order": order, "u_phi_zero": u_phi_zero }));
        }
        tally.check(controls > 0, || "no involution with u_phi != 0 for the negative control".into());
    }
    let mut forms = Vec::new();
    for f in classification::enumerate_real_forms(g)? {
        let r = classification::verify_hat_real_form(&f, config.truncation.min(2))?;
        tally.check(r.passed, || format!("{}: affine real form {r:?}", f.invariant));
        forms.push(json!({ "invariant": f.invariant.to_string(), "adjoin": r.adjoin }));
    }
    let details = json!({ "extensions": rows, "real_forms": forms });
    Ok(tally.finish(Suite::Hat, g, details))
}

fn scaling(config: &VerifyConfig) -> Result<SuiteReport> {
    let g = &config.algebra;
    let mut tally = Tally::new();
    let r = rat(config.scaling.into(), 1);
    let tau = ScalingAutomorphism::new(r.clone())?;
    let ctx = TwistContext::untwisted(g, 1)?;
    let mut rng = config.rng(300);
    let pairs = config.trials.div_ceil(2);
    for trial in 0..pairs {
        let u = random_loop(&ctx, &mut rng, config.degree);
        let v = random_loop(&ctx, &mut rng, config.degree);
        let ok = (|| -> Result<bool> { Ok(tau.apply(&u.bracket(&v)?)? == tau.apply(&u)?.bracket(&tau.apply(&v)?)?) })();
        if let Some(ok) = tally.check_result(ok, || format!("trial {trial}")) {
            tally.check(ok, || format!("scaling does not preserve [{u:?}, {v:?}]"));
        }
    }
    let mut maps = vec![
        StandardAutomorphism::identity(&ctx),
        StandardAutomorphism::rotation(&ctx, rat(1, 2)),
    ];
    for e in catalog::involution_classes(g)? {
        maps.push(StandardAutomorphism::constant(&ctx, 1, rat(0, 1), e.automorphism.clone())?);
        maps.push(StandardAutomorphism::constant(&ctx, -1, rat(0, 1), e.automorphism)?);
    }
    for m in maps {
        let composed = AlgebraicAutomorphism {
            standard: m.clone(),
            scaling: Some(tau.clone()),
        };
        let order = composed.order(config.bound, 2)?;
        // a reversing map conjugates the scaling to its inverse, so (m tau)^2 = m^2
        let expected = if tau.is_identity() || m.epsilon() == -1 {
            m.order(config.bound)?
        } else {
            Order::Unbounded
        };
        tally.check(order == expected, || format!("scaling composed with {m:?} has order {order}"));
    }
    let details = json!({ "r": r.to_string(), "pairs": pairs.to_string(), "bound": config.bound.to_string() });
    Ok(tally.finish(Suite::Scaling, g, details))
}

/// `psi u(t) = e^{t ad X} u(t)` from `L(sl2C, tau)` to `L(sl2C)`, with `X = (i/4) h`.
pub fn untwisting_map(algebra: &Arc<LieAlgebra>) -> Result<StandardAutomorphism> {
    let curve = half_h_curve(algebra)?.scale(&rat(1, 2));
    let ctx = TwistContext::new(named(algebra, "tau")?, 2)?;
    StandardAutomorphism::exp_curve_map(&ctx, curve, 2)
}

fn expiso(config: &VerifyConfig) -> Result<SuiteReport> {
    let g = &config.algebra;
    let mut tally = Tally::new();
    let psi = untwisting_map(g)?;
    let tau = named(g, "tau")?;
    let curve = psi.curve().expect("curve map");
    tally.check(curve.exp_ad(&rat(1, 1)) == tau.inverse()?, || "psi at 2 pi is not tau^-1".into());
    tally.check(psi.target().sigma().is_identity(), || "target is twisted".into());
    let inverse = psi.inverse()?;
    let mut rng = config.rng(400);
    for trial in 0..config.trials {
        let u = random_loop(psi.source(), &mut rng, config.degree);
        let v = random_loop(psi.source(), &mut rng, config.degree);
        let out = (|| -> Result<(LoopElement, bool, bool)> {
            let pu = psi.apply(&u)?;
            let hom = psi.apply(&u.bracket(&v)?)? == pu.bracket(&psi.apply(&v)?)?;
            let back = inverse.apply(&pu)? == u;
            Ok((pu, hom, back))
        })();
        if let Some((pu, hom, back)) = tally.check_result(out, || format!("trial {trial}")) {
            tally.check(pu.validate() && pu.context() == psi.target(), || format!("image of {u:?} is not untwisted"));
            tally.check(hom, || format!("bracket of {u:?}, {v:?} not preserved"));
            tally.check(back, || format!("inverse fails on {u:?}"));
        }
    }
    let details = json!({
        "generator": curve.generator().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "trials": config.trials.to_string(),
    });
    Ok(tally.finish(Suite::Expiso, g, details))
}
