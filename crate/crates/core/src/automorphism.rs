//! Linear and antilinear automorphisms of a finite-dimensional Lie algebra.
//!
//! An antilinear map acts as `x -> M * conj(x)` on coordinates, so both kinds
//! share one representation and one set of code paths.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::CyclotomicNumber;
use crate::lie::LieAlgebra;
use crate::linalg::{self, Matrix, Vector};

/// Default search bound for orders.
pub const DEFAULT_ORDER_BOUND: u32 = 48;

/// Serialized as a decimal string or `"unbounded"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Order {
    Finite(u32),
    Unbounded,
}

impl From<Order> for String {
    fn from(o: Order) -> String {
        o.to_string()
    }
}

impl TryFrom<String> for Order {
    type Error = Error;

    fn try_from(s: String) -> Result<Order> {
        if s == "unbounded" {
            return Ok(Order::Unbounded);
        }
        s.parse()
            .map(Order::Finite)
            .map_err(|_| Error::InvalidInput(format!("`{s}` is not an order")))
    }
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Unbounded => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Unbounded => write!(f, "unbounded"),
        }
    }
}

#[derive(Clone)]
pub struct FiniteAutomorphism {
    algebra: Arc<LieAlgebra>,
    matrix: Matrix,
    antilinear: bool,
    declared_order: Option<u32>,
}

impl PartialEq for FiniteAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.antilinear == other.antilinear && self.matrix == other.matrix
    }
}

impl Eq for FiniteAutomorphism {}

impl fmt::Debug for FiniteAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteAutomorphism({}{}) {:?}",
            self.algebra.name(),
            if self.antilinear { ", antilinear" } else { "" },
            self.matrix
        )
    }
}

/// Basis of a fixed-point subalgebra; `real` marks a basis over the reals.
#[derive(Clone, Debug)]
pub struct FixedSubalgebra {
    pub basis: Vec<Vector>,
    pub real: bool,
}

impl FixedSubalgebra {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

impl FiniteAutomorphism {
    /// Wraps a matrix without checking the bracket; see [`Self::checked`].
    pub fn new(algebra: Arc<LieAlgebra>, matrix: Matrix, antilinear: bool) -> FiniteAutomorphism {
        assert_eq!(matrix.rows(), algebra.dim());
        assert_eq!(matrix.cols(), algebra.dim());
        FiniteAutomorphism {
            algebra,
            matrix,
            antilinear,
            declared_order: None,
        }
    }

    pub fn checked(algebra: Arc<LieAlgebra>, matrix: Matrix, antilinear: bool) -> Result<FiniteAutomorphism> {
        if matrix.rows() != algebra.dim() || matrix.cols() != algebra.dim() {
            return Err(Error::InvalidInput(format!(
                "automorphism of {} needs a {d}x{d} matrix",
                algebra.name(),
                d = algebra.dim()
            )));
        }
        let a = Self::new(algebra, matrix, antilinear);
        if a.check_automorphism() {
            Ok(a)
        } else {
            Err(Error::NotAutomorphism)
        }
    }

    pub fn identity(algebra: &Arc<LieAlgebra>) -> FiniteAutomorphism {
        Self::new(algebra.clone(), Matrix::identity(algebra.dim()), false)
    }

    /// Builds the automorphism induced by a map on the matrix realization.
    pub fn from_matrix_map(
        algebra: &Arc<LieAlgebra>,
        antilinear: bool,
        f: impl Fn(&Matrix) -> Matrix,
    ) -> Result<FiniteAutomorphism> {
        let real = algebra.realization().ok_or_else(|| {
            Error::InvalidInput(format!("{} has no matrix realization", algebra.name()))
        })?;
        let cols = real
            .basis()
            .iter()
            .map(|b| {
                real.coords_of(&f(b))
                    .ok_or_else(|| Error::InvalidInput("map leaves the algebra".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::checked(algebra.clone(), Matrix::from_columns(algebra.dim(), &cols), antilinear)
    }

    /// `Ad g : x -> g x g^-1` for an invertible matrix `g`.
    pub fn adjoint(algebra: &Arc<LieAlgebra>, g: &Matrix) -> Result<FiniteAutomorphism> {
        let gi = g
            .inverse()
            .ok_or_else(|| Error::InvalidInput("Ad of a singular matrix".into()))?;
        Self::from_matrix_map(algebra, false, |x| g.mul(x).mul(&gi))
    }

    /// `Ad diag(entries)`.
    pub fn diagonal_adjoint(algebra: &Arc<LieAlgebra>, entries: &[CyclotomicNumber]) -> Result<FiniteAutomorphism> {
        Self::adjoint(algebra, &Matrix::diagonal(entries))
    }

    /// `x -> -x^t`.
    pub fn minus_transpose(algebra: &Arc<LieAlgebra>) -> Result<FiniteAutomorphism> {
        Self::from_matrix_map(algebra, false, |x| x.transpose().scale(&CyclotomicNumber::from_integer(-1)))
    }

    /// The conjugation `x -> -conj(x)^t` with respect to the compact form `su(n)`.
    pub fn compact_conjugation(algebra: &Arc<LieAlgebra>) -> Result<FiniteAutomorphism> {
        Self::from_matrix_map(algebra, true, |x| {
            x.conj().transpose().scale(&CyclotomicNumber::from_integer(-1))
        })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_antilinear(&self) -> bool {
        self.antilinear
    }

    pub fn declared_order(&self) -> Option<u32> {
        self.declared_order
    }

    /// Records `n` as the order after verifying it exactly.
    pub fn with_declared_order(mut self, n: u32) -> Result<FiniteAutomorphism> {
        match self.order(n) {
            Order::Finite(m) if m == n => {
                self.declared_order = Some(n);
                Ok(self)
            }
            found => Err(Error::OrderMismatch {
                expected: n.to_string(),
                found: found.to_string(),
            }),
        }
    }

    pub fn apply(&self, x: &[CyclotomicNumber]) -> Vector {
        if self.antilinear {
            self.matrix.mul_vec(&linalg::conj_vector(x))
        } else {
            self.matrix.mul_vec(x)
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FiniteAutomorphism) -> FiniteAutomorphism {
        let right = if self.antilinear {
            other.matrix.conj()
        } else {
            other.matrix.clone()
        };
        FiniteAutomorphism::new(
            self.algebra.clone(),
            self.matrix.mul(&right),
            self.antilinear ^ other.antilinear,
        )
    }

    pub fn inverse(&self) -> Result<FiniteAutomorphism> {
        let inv = self.matrix.inverse().ok_or(Error::NotAutomorphism)?;
        let m = if self.antilinear { inv.conj() } else { inv };
        let mut out = FiniteAutomorphism::new(self.algebra.clone(), m, self.antilinear);
        out.declared_order = self.declared_order;
        Ok(out)
    }

    pub fn pow(&self, n: i64) -> FiniteAutomorphism {
        let base = if n < 0 {
            self.inverse().expect("automorphisms are invertible")
        } else {
            self.clone()
        };
        let mut acc = FiniteAutomorphism::identity(&self.algebra);
        let mut b = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&b);
            }
            b = b.compose(&b);
            e >>= 1;
        }
        acc
    }

    /// `self ∘ other ∘ self^-1`.
    pub fn conjugate(&self, other: &FiniteAutomorphism) -> FiniteAutomorphism {
        self.compose(other).compose(&self.inverse().expect("invertible"))
    }

    pub fn commutes_with(&self, other: &FiniteAutomorphism) -> bool {
        self.compose(other) == other.compose(self)
    }

    pub fn is_identity(&self) -> bool {
        !self.antilinear && self.matrix.is_identity()
    }

    /// Invertible and bracket preserving on all basis pairs.
    pub fn check_automorphism(&self) -> bool {
        if self.matrix.inverse().is_none() {
            return false;
        }
        let d = self.algebra.dim();
        let images: Vec<Vector> = (0..d).map(|j| self.matrix.column(j)).collect();
        for i in 0..d {
            for j in i + 1..d {
                let lhs = self.apply(&self.algebra.bracket_coords(&self.algebra.basis(i), &self.algebra.basis(j)));
                let rhs = self.algebra.bracket_coords(&images[i], &images[j]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Least `n <= bound` with `A^n = id`.
    pub fn order(&self, bound: u32) -> Order {
        let mut acc = self.clone();
        for n in 1..=bound {
            if acc.is_identity() {
                return Order::Finite(n);
            }
            acc = acc.compose(self);
        }
        Order::Unbounded
    }

    fn finite_order(&self) -> Result<u32> {
        if let Some(n) = self.declared_order {
            return Ok(n);
        }
        self.order(DEFAULT_ORDER_BOUND)
            .finite()
            .ok_or(Error::NotFiniteOrder(DEFAULT_ORDER_BOUND))
    }

    /// Eigenspaces `(k, zeta_n^k, basis)` of a linear automorphism of order `n`.
    pub fn eigenspace_decomposition(&self) -> Result<Vec<(u32, CyclotomicNumber, Vec<Vector>)>> {
        if self.antilinear {
            return Err(Error::InvalidInput("eigenspaces of an antilinear map".into()));
        }
        let n = self.finite_order()?;
        let d = self.algebra.dim();
        let mut out = Vec::new();
        for k in 0..n {
            let z = CyclotomicNumber::zeta_power(n as u64, k as i64);
            let shifted = self.matrix.sub(&Matrix::identity(d).scale(&z));
            let basis = shifted.nullspace();
            if !basis.is_empty() {
                out.push((k, z, basis));
            }
        }
        Ok(out)
    }

    /// Basis of the eigenspace for `value` (possibly empty).
    pub fn eigenspace(&self, value: &CyclotomicNumber) -> Vec<Vector> {
        assert!(!self.antilinear);
        let d = self.algebra.dim();
        self.matrix.sub(&Matrix::identity(d).scale(value)).nullspace()
    }

    /// Fixed points `{x : A x = x}`; a real basis when `A` is antilinear.
    pub fn fixed_subalgebra(&self) -> Result<FixedSubalgebra> {
        let n = self.finite_order()?;
        let d = self.algebra.dim();
        if !self.antilinear {
            return Ok(FixedSubalgebra {
                basis: self.matrix.sub(&Matrix::identity(d)).nullspace(),
                real: false,
            });
        }
        // the orbit sum of any vector is fixed, and these sums span the fixed set
        let powers: Vec<FiniteAutomorphism> = (0..n as i64).map(|k| self.pow(k)).collect();
        let average = |x: &Vector| {
            powers
                .iter()
                .fold(linalg::zero_vector(d), |acc, p| linalg::add_vectors(&acc, &p.apply(x)))
        };
        let i = CyclotomicNumber::i();
        let mut candidates = Vec::new();
        for j in 0..d {
            let e = self.algebra.basis(j);
            candidates.push(average(&e));
            candidates.push(average(&linalg::scale_vector(&i, &e)));
        }
        let keep = linalg::real_independent_subset(&candidates);
        Ok(FixedSubalgebra {
            basis: keep.into_iter().map(|k| candidates[k].clone()).collect(),
            real: true,
        })
    }

    /// Whether a fixed-point basis is closed under the bracket.
    pub fn fixed_set_is_closed(&self, fixed: &FixedSubalgebra) -> bool {
        if fixed.real {
            fixed.basis.iter().all(|a| {
                fixed.basis.iter().all(|b| {
                    let c = self.algebra.bracket_coords(a, b);
                    self.apply(&c) == c
                })
            })
        } else {
            self.algebra.is_closed_span(&fixed.basis)
        }
    }
}

/// Named automorphisms of the built-in algebras.
///
/// `id`, `mu` (`x -> -x^t`), `omega` (compact conjugation), `tau`
/// (`Ad diag(1,-1)` on rank one, `Ad diag(1,1,-1)` on rank two, also called
/// `theta` there), and `rot<n>` = `Ad diag(1, zeta_n^-1)` / `Ad diag(1, zeta_n^-1, zeta_n^-2)`.
pub fn named(algebra: &Arc<LieAlgebra>, name: &str) -> Result<FiniteAutomorphism> {
    let size = algebra
        .realization()
        .map(|r| r.size())
        .ok_or_else(|| Error::InvalidInput(format!("{} has no realization", algebra.name())))?;
    let one = CyclotomicNumber::one(4);
    let minus = CyclotomicNumber::from_integer(-1);
    let a = match name {
        "id" => FiniteAutomorphism::identity(algebra),
        "mu" => FiniteAutomorphism::minus_transpose(algebra)?,
        "omega" => FiniteAutomorphism::compact_conjugation(algebra)?,
        "tau" | "theta" => {
            let mut d = vec![one; size];
            d[size - 1] = minus;
            FiniteAutomorphism::diagonal_adjoint(algebra, &d)?
        }
        other => {
            let n: u64 = other
                .strip_prefix("rot")
                .and_then(|s| s.parse().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::InvalidInput(format!("unknown automorphism `{other}`")))?;
            let d: Vec<CyclotomicNumber> = (0..size as i64)
                .map(|k| CyclotomicNumber::zeta_power(n, -k))
                .collect();
            FiniteAutomorphism::diagonal_adjoint(algebra, &d)?
        }
    };
    Ok(a)
}
