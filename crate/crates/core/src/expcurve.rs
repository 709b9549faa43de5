//! Curves `t -> e^{t ad X}` with `ad X` diagonalised exactly over the field.
//!
//! `ad X` acts on each stored eigenspace `g_q` as multiplication by `i q`, so
//! `e^{2 pi s ad X}` acts there by the root of unity `e^{2 pi i q s}`.

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::automorphism::FiniteAutomorphism;
use crate::error::{Error, Result};
use crate::field::{CyclotomicNumber, Rational};
use crate::lie::LieAlgebra;
use crate::linalg::{self, Matrix, Vector};

#[derive(Clone, Debug)]
pub struct ExpCurveData {
    algebra: Arc<LieAlgebra>,
    generator: Vector,
    eigenpairs: Vec<(Rational, Vec<Vector>)>,
}

/// `e^{2 pi i r}` for rational `r`.
pub fn exp_2pi_i(r: &Rational) -> CyclotomicNumber {
    let den = r.denom().to_string().parse::<u64>().expect("small denominator");
    let num = (r.numer() % r.denom()).to_string().parse::<i64>().expect("small numerator");
    CyclotomicNumber::zeta_power(den, num)
}

impl ExpCurveData {
    /// Validates the supplied eigenpairs against `ad X`.
    pub fn new(
        algebra: Arc<LieAlgebra>,
        generator: Vector,
        eigenpairs: Vec<(Rational, Vec<Vector>)>,
    ) -> Result<ExpCurveData> {
        let curve = ExpCurveData {
            algebra,
            generator,
            eigenpairs,
        };
        curve.validate()?;
        Ok(curve)
    }

    /// The constant curve `X = 0`.
    pub fn zero(algebra: &Arc<LieAlgebra>) -> ExpCurveData {
        let d = algebra.dim();
        ExpCurveData {
            algebra: algebra.clone(),
            generator: linalg::zero_vector(d),
            eigenpairs: vec![(Rational::zero(), (0..d).map(|j| algebra.basis(j)).collect())],
        }
    }

    /// Computes eigenspaces of `ad X` for the candidate values `i q` by exact kernels.
    pub fn from_generator(
        algebra: &Arc<LieAlgebra>,
        generator: Vector,
        candidates: &[Rational],
    ) -> Result<ExpCurveData> {
        let d = algebra.dim();
        let ad = algebra.ad_matrix(&generator);
        let i = CyclotomicNumber::i();
        let mut eigenpairs = Vec::new();
        let mut seen: Vec<&Rational> = Vec::new();
        for q in candidates {
            if seen.contains(&q) {
                continue;
            }
            seen.push(q);
            let value = i.scale(q);
            let basis = ad.sub(&Matrix::identity(d).scale(&value)).nullspace();
            if !basis.is_empty() {
                eigenpairs.push((q.clone(), basis));
            }
        }
        ExpCurveData::new(algebra.clone(), generator, eigenpairs)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.algebra.dim();
        let ad = self.algebra.ad_matrix(&self.generator);
        let i = CyclotomicNumber::i();
        let mut all = Vec::new();
        for (q, basis) in &self.eigenpairs {
            let value = i.scale(q);
            for v in basis {
                if ad.mul_vec(v) != linalg::scale_vector(&value, v) {
                    return Err(Error::InvalidInput(format!("vector is not in the {q}-eigenspace of ad X")));
                }
                all.push(v.clone());
            }
        }
        if all.len() != d || linalg::rank_of(&all) != d {
            return Err(Error::InvalidInput("eigenspaces of ad X do not span the algebra".into()));
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn generator(&self) -> &[CyclotomicNumber] {
        &self.generator
    }

    pub fn eigenpairs(&self) -> &[(Rational, Vec<Vector>)] {
        &self.eigenpairs
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vector(&self.generator)
    }

    /// Fails unless every eigenvalue denominator divides `denominator`.
    pub fn require_denominator(&self, denominator: u64) -> Result<()> {
        let den = Rational::from_integer(denominator.into());
        for (q, _) in &self.eigenpairs {
            if !(q * &den).is_integer() {
                return Err(Error::IncompatibleDenominator {
                    q: q.to_string(),
                    denominator,
                });
            }
        }
        Ok(())
    }

    fn change_of_basis(&self) -> Matrix {
        let cols: Vec<Vector> = self.eigenpairs.iter().flat_map(|(_, b)| b.iter().cloned()).collect();
        Matrix::from_columns(self.algebra.dim(), &cols)
    }

    /// Splits `v` into its components in the eigenspaces, dropping zero parts.
    pub fn decompose(&self, v: &[CyclotomicNumber]) -> Vec<(Rational, Vector)> {
        let p = self.change_of_basis();
        let c = p.solve(v).expect("eigenspaces span the algebra");
        let d = self.algebra.dim();
        let mut out = Vec::new();
        let mut idx = 0;
        for (q, basis) in &self.eigenpairs {
            let mut part = linalg::zero_vector(d);
            for b in basis {
                part = linalg::add_vectors(&part, &linalg::scale_vector(&c[idx], b));
                idx += 1;
            }
            if !linalg::is_zero_vector(&part) {
                out.push((q.clone(), part));
            }
        }
        out
    }

    /// `e^{2 pi s ad X}`.
    pub fn exp_ad(&self, s: &Rational) -> FiniteAutomorphism {
        let p = self.change_of_basis();
        let diag: Vec<CyclotomicNumber> = self
            .eigenpairs
            .iter()
            .flat_map(|(q, b)| std::iter::repeat(exp_2pi_i(&(q * s))).take(b.len()))
            .collect();
        let m = p
            .mul(&Matrix::diagonal(&diag))
            .mul(&p.inverse().expect("eigenbasis is invertible"));
        FiniteAutomorphism::new(self.algebra.clone(), m, false)
    }

    /// `e^{2 pi s ad X}` after checking the eigenvalues against the exponent lattice.
    pub fn exp_ad_checked(&self, s: &Rational, denominator: u64) -> Result<FiniteAutomorphism> {
        self.require_denominator(denominator)?;
        Ok(self.exp_ad(s))
    }

    /// The curve of `A X`, using `A e^{t ad X} A^-1 = e^{t ad AX}`.
    pub fn transform(&self, a: &FiniteAutomorphism) -> ExpCurveData {
        let flip = a.is_antilinear();
        ExpCurveData {
            algebra: self.algebra.clone(),
            generator: a.apply(&self.generator),
            eigenpairs: self
                .eigenpairs
                .iter()
                .map(|(q, b)| (if flip { -q } else { q.clone() }, b.iter().map(|v| a.apply(v)).collect()))
                .collect(),
        }
    }

    /// The curve of `r X`.
    pub fn scale(&self, r: &Rational) -> ExpCurveData {
        if r.is_zero() {
            return ExpCurveData::zero(&self.algebra);
        }
        ExpCurveData {
            algebra: self.algebra.clone(),
            generator: linalg::scale_vector_rational(r, &self.generator),
            eigenpairs: self.eigenpairs.iter().map(|(q, b)| (q * r, b.clone())).collect(),
        }
    }

    /// The curve of `X + Y` for commuting `X`, `Y`.
    pub fn combine(&self, other: &ExpCurveData) -> Result<ExpCurveData> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let bracket = self.algebra.bracket_coords(&self.generator, &other.generator);
        if !linalg::is_zero_vector(&bracket) {
            return Err(Error::NonCommutingCurves);
        }
        let mut pairs: Vec<(Rational, Vec<Vector>)> = Vec::new();
        for (q1, b1) in &self.eigenpairs {
            for (q2, b2) in &other.eigenpairs {
                let common = linalg::intersect_spans(b1, b2);
                if common.is_empty() {
                    continue;
                }
                let q = q1 + q2;
                match pairs.iter_mut().find(|(p, _)| *p == q) {
                    Some((_, basis)) => basis.extend(common),
                    None => pairs.push((q, common)),
                }
            }
        }
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let generator = linalg::add_vectors(&self.generator, &other.generator);
        ExpCurveData::new(self.algebra.clone(), generator, pairs).map_err(|_| Error::NonCommutingCurves)
    }

    /// Least common denominator of the eigenvalues.
    pub fn denominator(&self) -> u64 {
        self.eigenpairs.iter().fold(1u64, |acc, (q, _)| {
            let d: u64 = q.denom().to_string().parse().expect("small denominator");
            crate::field::lcm(acc, d)
        })
    }

    /// Largest `|q|`, useful for sizing spanning sets.
    pub fn max_abs_eigenvalue(&self) -> Rational {
        self.eigenpairs
            .iter()
            .map(|(q, _)| q.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Whether `e^{2 pi ad X}` is the identity, so the curve closes up at `2 pi`.
    pub fn is_periodic(&self) -> bool {
        self.eigenpairs.iter().all(|(q, _)| q.is_integer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::named;
    use crate::field::rat;
    use crate::lie::{half_i_h, sl2_coords};

    fn sl2() -> Arc<LieAlgebra> {
        LieAlgebra::builtin_arc("sl2C").unwrap()
    }

    fn curve() -> ExpCurveData {
        ExpCurveData::from_generator(&sl2(), half_i_h(), &[rat(-1, 1), rat(0, 1), rat(1, 1)]).unwrap()
    }

    #[test]
    fn half_i_h_eigenspaces() {
        let c = curve();
        let qs: Vec<Rational> = c.eigenpairs().iter().map(|(q, _)| q.clone()).collect();
        assert_eq!(qs, vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
        // ad((i/2)h) e = i e
        assert_eq!(c.eigenpairs()[2].1, vec![sl2_coords(1, 0, 0)]);
    }

    #[test]
    fn exp_ad_values() {
        let c = curve();
        assert!(c.exp_ad(&rat(0, 1)).is_identity());
        assert!(c.exp_ad(&rat(1, 1)).is_identity());
        assert_eq!(c.exp_ad(&rat(1, 2)), named(&sl2(), "tau").unwrap());
        assert!(c.exp_ad(&rat(1, 3)).check_automorphism());
    }

    #[test]
    fn missing_candidates_fail() {
        assert!(ExpCurveData::from_generator(&sl2(), half_i_h(), &[rat(0, 1)]).is_err());
    }

    #[test]
    fn denominators() {
        let c = curve().scale(&rat(1, 2));
        assert_eq!(c.denominator(), 2);
        assert!(c.require_denominator(2).is_ok());
        assert_eq!(
            c.require_denominator(1),
            Err(Error::IncompatibleDenominator {
                q: "-1/2".into(),
                denominator: 1
            })
        );
        assert!(!c.is_periodic());
    }

    #[test]
    fn transform_by_antilinear_flips() {
        let g = sl2();
        let omega = named(&g, "omega").unwrap();
        let t = curve().transform(&omega);
        t.validate().unwrap();
        // omega fixes (i/2) h, so the curve is unchanged up to reordering
        assert_eq!(t.generator(), curve().generator());
        let mu = named(&g, "mu").unwrap();
        let m = curve().transform(&mu);
        m.validate().unwrap();
        assert_eq!(m.generator(), linalg::scale_vector_rational(&rat(-1, 1), &half_i_h()).as_slice());
    }

    #[test]
    fn combine_commuting() {
        let c = curve();
        let sum = c.combine(&c).unwrap();
        assert_eq!(sum.generator(), c.scale(&rat(2, 1)).generator());
        assert!(sum.exp_ad(&rat(1, 2)).is_identity());
        let cancel = c.combine(&c.scale(&rat(-1, 1))).unwrap();
        assert!(cancel.exp_ad(&rat(1, 7)).is_identity());
        let other = ExpCurveData::from_generator(
            &sl2(),
            linalg::scale_vector(&CyclotomicNumber::i(), &sl2_coords(1, 0, 1)),
            &[rat(-2, 1), rat(0, 1), rat(2, 1)],
        );
        assert_eq!(c.combine(&other.unwrap()).unwrap_err(), Error::NonCommutingCurves);
    }

    #[test]
    fn decompose_parts() {
        let c = curve();
        let parts = c.decompose(&sl2_coords(1, 2, 3));
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], (rat(-1, 1), sl2_coords(0, 0, 3)));
    }

    #[test]
    fn periodicity_of_exp() {
        let c = curve().scale(&rat(1, 3));
        for s in [rat(1, 5), rat(2, 7)] {
            let shifted = c.exp_ad(&(&s + rat(2, 1)));
            let expected = c.exp_ad(&s).compose(&c.exp_ad(&rat(1, 1)).pow(2));
            assert_eq!(shifted, expected);
        }
    }
}
