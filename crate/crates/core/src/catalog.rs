//! Catalogs of conjugacy-class representatives for the built-in complex algebras,
//! and the component classifiers used by the invariants.
//!
//! Rank one (`sl2C`): every automorphism is inner. The representative of order 1
//! is `id`, of order 2 is `mu`, and of order `n >= 3` is
//! `Ad diag(1, zeta_n^-j)` (acting on `e` by `zeta_n^j`) for `j` coprime to `n`,
//! `j <= n/2`. Rank two (`sl3C`): `id`, the inner involution `theta` and the outer
//! involution `mu`.

use std::sync::Arc;

use num_integer::Integer;

use crate::automorphism::{named, FiniteAutomorphism, Order, DEFAULT_ORDER_BOUND};
use crate::error::{Error, Result};
use crate::field::{rat, CyclotomicNumber};
use crate::lie::LieAlgebra;
use crate::linalg::{self, Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraType {
    A1,
    A2,
}

impl AlgebraType {
    pub fn of(algebra: &LieAlgebra) -> Result<AlgebraType> {
        match algebra.name() {
            "sl2C" => Ok(AlgebraType::A1),
            "sl3C" => Ok(AlgebraType::A2),
            other => Err(Error::ClassifierUnavailable(other.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub order: u32,
    pub automorphism: FiniteAutomorphism,
}

fn entry(algebra: &Arc<LieAlgebra>, id: &str, order: u32) -> Result<CatalogEntry> {
    Ok(CatalogEntry {
        id: id.to_string(),
        order,
        automorphism: named(algebra, id)?,
    })
}

/// `Ad diag(1, zeta_n^-j)` on `sl2C`.
pub fn a1_rotation(algebra: &Arc<LieAlgebra>, n: u32, j: u32) -> Result<FiniteAutomorphism> {
    FiniteAutomorphism::diagonal_adjoint(
        algebra,
        &[CyclotomicNumber::one(4), CyclotomicNumber::zeta_power(n.into(), -i64::from(j))],
    )
}

/// Catalog representatives of the given order.
pub fn representatives(algebra: &Arc<LieAlgebra>, order: u32) -> Result<Vec<CatalogEntry>> {
    match (AlgebraType::of(algebra)?, order) {
        (_, 1) => Ok(vec![entry(algebra, "id", 1)?]),
        (AlgebraType::A1, 2) => Ok(vec![entry(algebra, "mu", 2)?]),
        (AlgebraType::A1, n) => (1..=n / 2)
            .filter(|j| j.gcd(&n) == 1)
            .map(|j| {
                Ok(CatalogEntry {
                    id: format!("rot{n}_{j}"),
                    order: n,
                    automorphism: a1_rotation(algebra, n, j)?,
                })
            })
            .collect(),
        (AlgebraType::A2, 2) => Ok(vec![entry(algebra, "theta", 2)?, entry(algebra, "mu", 2)?]),
        (AlgebraType::A2, n) => Err(Error::CatalogMiss(format!("no sl3C representatives of order {n}"))),
    }
}

/// Looks up a catalog entry by identifier.
pub fn lookup(algebra: &Arc<LieAlgebra>, id: &str) -> Result<CatalogEntry> {
    let order = match id {
        "id" => 1,
        "mu" | "theta" => 2,
        other => other
            .strip_prefix("rot")
            .and_then(|s| s.split('_').next())
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::CatalogMiss(format!("unknown catalog identifier `{other}`")))?,
    };
    representatives(algebra, order)?
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::CatalogMiss(format!("unknown catalog identifier `{id}`")))
}

/// Representatives of all classes of involutions (including the identity).
pub fn involution_classes(algebra: &Arc<LieAlgebra>) -> Result<Vec<CatalogEntry>> {
    let mut out = representatives(algebra, 1)?;
    out.extend(representatives(algebra, 2)?);
    Ok(out)
}

/// Representatives of the component classes of the centralizer of `rho`.
pub fn beta_classes(algebra: &Arc<LieAlgebra>, rho: &FiniteAutomorphism) -> Result<Vec<(String, FiniteAutomorphism)>> {
    let id = FiniteAutomorphism::identity(algebra);
    match AlgebraType::of(algebra)? {
        AlgebraType::A1 => {
            if rho.order(2) == Order::Finite(2) {
                // the component swapping the two -1 eigenlines of the fixed torus
                let tau = named(algebra, "tau")?;
                let beta = if tau.commutes_with(rho) {
                    tau
                } else {
                    let alpha = conjugator(rho)?
                        .ok_or_else(|| Error::CatalogMiss("no frame for the involution".into()))?;
                    alpha.conjugate(&tau)
                };
                Ok(vec![("id".into(), id), ("tau".into(), beta)])
            } else {
                Ok(vec![("id".into(), id)])
            }
        }
        AlgebraType::A2 => Ok(vec![("id".into(), id), ("mu".into(), named(algebra, "mu")?)]),
    }
}

/// Representatives of the outer classes, i.e. of the components of `Aut g`.
pub fn outer_classes(algebra: &Arc<LieAlgebra>) -> Result<Vec<(String, FiniteAutomorphism)>> {
    beta_classes(algebra, &FiniteAutomorphism::identity(algebra))
}

fn a1_eigenvalue_present(rho: &FiniteAutomorphism, n: u32, j: u32) -> bool {
    !rho.eigenspace(&CyclotomicNumber::zeta_power(n.into(), j.into())).is_empty()
}

/// `tr(x^3)` in the defining representation, preserved by inner and negated by
/// outer automorphisms of `sl3C`.
fn cubic(algebra: &LieAlgebra, x: &[CyclotomicNumber]) -> CyclotomicNumber {
    let m = algebra.realization().expect("built-in").to_matrix(x);
    m.mul(&m).mul(&m).trace()
}

fn a2_probe(algebra: &LieAlgebra) -> Vector {
    let one = CyclotomicNumber::one(4);
    let d = Matrix::diagonal(&[one.clone(), one, CyclotomicNumber::from_integer(-2)]);
    algebra.realization().expect("built-in").coords_of(&d).expect("traceless")
}

/// Whether a linear automorphism of `sl3C` is inner.
pub fn a2_is_inner(a: &FiniteAutomorphism) -> bool {
    let g = a.algebra();
    let x = a2_probe(g);
    cubic(g, &a.apply(&x)) == cubic(g, &x)
}

/// Finds the catalog representative conjugate to `rho`.
pub fn match_catalog(rho: &FiniteAutomorphism) -> Result<CatalogEntry> {
    let algebra = rho.algebra();
    if rho.is_antilinear() {
        return Err(Error::CatalogMiss("antilinear automorphisms are not catalogued".into()));
    }
    let n = match rho.order(DEFAULT_ORDER_BOUND) {
        Order::Finite(n) => n,
        Order::Unbounded => return Err(Error::CatalogMiss("automorphism of unbounded order".into())),
    };
    let reps = representatives(algebra, n)?;
    let found = match AlgebraType::of(algebra)? {
        AlgebraType::A1 if n >= 3 => reps.into_iter().find(|e| {
            let j: u32 = e.id.rsplit('_').next().unwrap().parse().unwrap();
            a1_eigenvalue_present(rho, n, j)
        }),
        AlgebraType::A2 if n == 2 => {
            let inner = a2_is_inner(rho);
            reps.into_iter().find(|e| (e.id == "theta") == inner)
        }
        _ => reps.into_iter().next(),
    };
    found.ok_or_else(|| Error::CatalogMiss(format!("no representative of order {n} matches")))
}

/// Component label of `beta` in the centralizer of `rho`; labels do not change
/// under simultaneous conjugation of `(rho, beta)`.
pub fn classify_beta(rho: &FiniteAutomorphism, beta: &FiniteAutomorphism) -> Result<String> {
    if !beta.commutes_with(rho) {
        return Err(Error::IncompatibleData("beta does not commute with rho".into()));
    }
    if beta.is_antilinear() {
        return Err(Error::IncompatibleData("beta must be linear".into()));
    }
    match AlgebraType::of(rho.algebra())? {
        AlgebraType::A1 => {
            if rho.order(2) != Order::Finite(2) {
                return Ok("id".into());
            }
            let fixed = rho.eigenspace(&CyclotomicNumber::one(4));
            let k = &fixed[0];
            let image = beta.apply(k);
            if image == *k {
                Ok("id".into())
            } else if image == linalg::scale_vector(&CyclotomicNumber::from_integer(-1), k) {
                Ok("tau".into())
            } else {
                Err(Error::IncompatibleData("beta does not preserve the fixed line".into()))
            }
        }
        AlgebraType::A2 => Ok(if a2_is_inner(beta) { "id" } else { "mu" }.into()),
    }
}

/// The `sl2` triple `(E, H, F)` matching `(e, h, f)` as the columns of an automorphism.
fn frame(algebra: &Arc<LieAlgebra>, e: Vector, h: Vector, f: Vector) -> Option<FiniteAutomorphism> {
    let a = FiniteAutomorphism::new(algebra.clone(), Matrix::from_columns(3, &[e, h, f]), false);
    a.check_automorphism().then_some(a)
}

/// Completes `k` (spanning a Cartan line) to an `sl2` triple with `H` a multiple of `k`.
fn triple_from_cartan(algebra: &Arc<LieAlgebra>, k: &Vector) -> Option<FiniteAutomorphism> {
    let two = CyclotomicNumber::from_integer(2);
    // kappa(H, H) = 8 means ad H has eigenvalues +-2
    let scale = algebra.killing_coords(k, k).scale(&rat(1, 8)).inv().ok()?.sqrt_simple()?;
    let h = linalg::scale_vector(&scale, k);
    let ad = algebra.ad_matrix(&h);
    let e = ad.sub(&Matrix::identity(3).scale(&two)).nullspace().into_iter().next()?;
    let f0 = ad.add(&Matrix::identity(3).scale(&two)).nullspace().into_iter().next()?;
    let ef = algebra.bracket_coords(&e, &f0);
    let c = (0..3).find(|&i| !h[i].is_zero()).map(|i| ef[i].checked_div(&h[i]))?.ok()?;
    let f = linalg::scale_vector(&c.inv().ok()?, &f0);
    frame(algebra, e, h, f)
}

/// An `alpha` with `alpha rho_cat alpha^-1 = rho`, where `rho_cat` is the catalog
/// representative of `rho`. Rank one only; `None` when no frame exists over the
/// field (e.g. an irrational normalisation).
pub fn conjugator(rho: &FiniteAutomorphism) -> Result<Option<FiniteAutomorphism>> {
    let algebra = rho.algebra();
    if AlgebraType::of(algebra)? != AlgebraType::A1 {
        return Ok(None);
    }
    let cat = match_catalog(rho)?;
    match cat.order {
        1 => Ok(Some(FiniteAutomorphism::identity(algebra))),
        2 => {
            let to_rho = triple_from_cartan(algebra, &rho.eigenspace(&CyclotomicNumber::one(4))[0]);
            let to_cat = triple_from_cartan(algebra, &cat.automorphism.eigenspace(&CyclotomicNumber::one(4))[0]);
            Ok(match (to_rho, to_cat) {
                (Some(a), Some(b)) => Some(a.compose(&b.inverse()?)),
                _ => None,
            })
        }
        n => {
            let j: u32 = cat.id.rsplit('_').next().unwrap().parse().unwrap();
            let e = rho.eigenspace(&CyclotomicNumber::zeta_power(n.into(), j.into()))[0].clone();
            let w = rho.eigenspace(&CyclotomicNumber::zeta_power(n.into(), -i64::from(j)))[0].clone();
            let h0 = algebra.bracket_coords(&e, &w);
            let he = algebra.bracket_coords(&h0, &e);
            let idx = (0..3).find(|&i| !e[i].is_zero()).expect("nonzero");
            let c = he[idx].checked_div(&e[idx])?;
            let s = CyclotomicNumber::from_integer(2).checked_div(&c)?;
            Ok(frame(algebra, e, linalg::scale_vector(&s, &h0), linalg::scale_vector(&s, &w)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> Arc<LieAlgebra> {
        LieAlgebra::builtin_arc("sl2C").unwrap()
    }

    fn sl3() -> Arc<LieAlgebra> {
        LieAlgebra::builtin_arc("sl3C").unwrap()
    }

    #[test]
    fn a1_catalog_orders() {
        let g = sl2();
        for n in 1..=6 {
            for e in representatives(&g, n).unwrap() {
                assert_eq!(e.automorphism.order(48), Order::Finite(n), "{}", e.id);
                assert_eq!(match_catalog(&e.automorphism).unwrap().id, e.id);
            }
        }
        assert_eq!(representatives(&g, 5).unwrap().len(), 2);
        assert_eq!(representatives(&g, 6).unwrap().len(), 1);
    }

    #[test]
    fn tau_matches_mu() {
        let g = sl2();
        assert_eq!(match_catalog(&named(&g, "tau").unwrap()).unwrap().id, "mu");
    }

    #[test]
    fn a2_involutions() {
        let g = sl3();
        assert_eq!(match_catalog(&named(&g, "theta").unwrap()).unwrap().id, "theta");
        assert_eq!(match_catalog(&named(&g, "mu").unwrap()).unwrap().id, "mu");
        assert!(a2_is_inner(&named(&g, "theta").unwrap()));
        assert!(!a2_is_inner(&named(&g, "mu").unwrap()));
        let rot = named(&g, "rot3").unwrap();
        assert!(matches!(match_catalog(&rot), Err(Error::CatalogMiss(_))));
    }

    #[test]
    fn beta_labels() {
        let g = sl2();
        let mu = named(&g, "mu").unwrap();
        let tau = named(&g, "tau").unwrap();
        let id = FiniteAutomorphism::identity(&g);
        assert_eq!(classify_beta(&mu, &id).unwrap(), "id");
        assert_eq!(classify_beta(&mu, &tau).unwrap(), "tau");
        assert_eq!(classify_beta(&tau, &mu).unwrap(), "tau");
        assert_eq!(classify_beta(&id, &tau).unwrap(), "id");
        let rot = a1_rotation(&g, 3, 1).unwrap();
        assert!(matches!(classify_beta(&rot, &mu), Err(Error::IncompatibleData(_))));
        let h = sl3();
        assert_eq!(classify_beta(&named(&h, "theta").unwrap(), &named(&h, "mu").unwrap()).unwrap(), "mu");
    }

    #[test]
    fn labels_are_conjugation_invariant() {
        let g = sl2();
        let mu = named(&g, "mu").unwrap();
        let tau = named(&g, "tau").unwrap();
        let rot = a1_rotation(&g, 5, 2).unwrap();
        for (rho, beta) in [(&mu, &tau), (&tau, &mu), (&mu, &FiniteAutomorphism::identity(&g))] {
            let label = classify_beta(rho, beta).unwrap();
            let c = rot.conjugate(rho);
            let b = rot.conjugate(beta);
            assert_eq!(classify_beta(&c, &b).unwrap(), label);
        }
    }

    #[test]
    fn conjugators() {
        let g = sl2();
        let rot = a1_rotation(&g, 5, 2).unwrap();
        let mu = named(&g, "mu").unwrap();
        let targets = vec![
            named(&g, "tau").unwrap(),
            rot.conjugate(&mu),
            a1_rotation(&g, 3, 1).unwrap(),
            mu.conjugate(&a1_rotation(&g, 4, 1).unwrap()),
            FiniteAutomorphism::identity(&g),
        ];
        for rho in targets {
            let cat = match_catalog(&rho).unwrap();
            let alpha = conjugator(&rho).unwrap().unwrap_or_else(|| panic!("frame {rho:?}"));
            assert_eq!(alpha.conjugate(&cat.automorphism), rho);
        }
    }

    #[test]
    fn lookup_and_classes() {
        let g = sl2();
        assert_eq!(lookup(&g, "rot6_1").unwrap().order, 6);
        assert!(lookup(&g, "rot6_2").is_err());
        assert_eq!(involution_classes(&sl3()).unwrap().len(), 3);
        assert_eq!(outer_classes(&g).unwrap().len(), 1);
        assert_eq!(outer_classes(&sl3()).unwrap().len(), 2);
        let su = LieAlgebra::builtin_arc("su2").unwrap();
        assert!(matches!(representatives(&su, 1), Err(Error::ClassifierUnavailable(_))));
    }
}
