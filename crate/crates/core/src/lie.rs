//! Simple Lie algebras given by rational structure constants.
//!
//! Built-in tables are generated from a matrix realization, which is kept
//! around so automorphisms like `Ad g` or `x -> -x^t` can be written down at
//! the matrix level and converted into coordinates.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{rat, CyclotomicNumber, Rational};
use crate::linalg::{self, Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseField {
    Complex,
    Real,
}

/// Sparse structure constants: `bracket[i][j]` lists `(k, c_ij^k)`.
type Structure = Vec<Vec<Vec<(usize, Rational)>>>;

/// A faithful matrix realization of the algebra.
#[derive(Clone, Debug)]
pub struct Realization {
    size: usize,
    basis: Vec<Matrix>,
    /// flattened entry positions forming an invertible `dim x dim` minor
    selected: Vec<usize>,
    selected_inverse: Matrix,
}

impl Realization {
    fn new(size: usize, basis: Vec<Matrix>) -> Realization {
        let d = basis.len();
        let flat: Vec<Vector> = basis.iter().map(|m| m.entries().to_vec()).collect();
        // rows of the n^2 x d matrix chosen greedily
        let selected = linalg::independent_subset(
            &(0..size * size)
                .map(|p| flat.iter().map(|f| f[p].clone()).collect::<Vector>())
                .collect::<Vec<_>>(),
        );
        assert_eq!(selected.len(), d, "realization basis is not independent");
        let minor = Matrix::from_rows(
            selected
                .iter()
                .map(|&p| flat.iter().map(|f| f[p].clone()).collect())
                .collect(),
        );
        let selected_inverse = minor.inverse().expect("independent minor");
        Realization {
            size,
            basis,
            selected,
            selected_inverse,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn to_matrix(&self, coords: &[CyclotomicNumber]) -> Matrix {
        let mut m = Matrix::zeros(self.size, self.size);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = m.add(&b.scale(c));
            }
        }
        m
    }

    /// Coordinates of a matrix in the realized basis, if it lies in the span.
    pub fn coords_of(&self, m: &Matrix) -> Option<Vector> {
        let picked: Vector = self
            .selected
            .iter()
            .map(|&p| m.entries()[p].clone())
            .collect();
        let coords = self.selected_inverse.mul_vec(&picked);
        (self.to_matrix(&coords) == *m).then_some(coords)
    }
}

/// Structure-constant table of a simple Lie algebra.
#[derive(Clone)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    base_field: BaseField,
    compact: bool,
    structure: Structure,
    killing: Vec<Vec<Rational>>,
    realization: Option<Realization>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("base_field", &self.base_field)
            .field("compact", &self.compact)
            .finish()
    }
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.dim == other.dim && self.structure == other.structure
    }
}

pub const BUILTIN_NAMES: [&str; 4] = ["sl2C", "sl3C", "su2", "su3"];

fn elementary(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = CyclotomicNumber::one(4);
    m
}

fn sl_basis(n: usize) -> Vec<Matrix> {
    // positive root vectors, Cartan, negative root vectors
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pos.push(elementary(n, i, j));
            neg.push(elementary(n, j, i));
        }
    }
    let cartan =
        (0..n - 1).map(|i| elementary(n, i, i).sub(&elementary(n, i + 1, i + 1)));
    pos.into_iter().chain(cartan).chain(neg).collect()
}

fn su_basis(n: usize) -> Vec<Matrix> {
    let i = CyclotomicNumber::i();
    let mut out: Vec<Matrix> = (0..n - 1)
        .map(|k| elementary(n, k, k).sub(&elementary(n, k + 1, k + 1)).scale(&i))
        .collect();
    for a in 0..n {
        for b in a + 1..n {
            out.push(elementary(n, a, b).sub(&elementary(n, b, a)));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            out.push(elementary(n, a, b).add(&elementary(n, b, a)).scale(&i));
        }
    }
    out
}

impl LieAlgebra {
    /// One of the built-in tables `sl2C`, `sl3C`, `su2`, `su3`.
    pub fn builtin(name: &str) -> Result<LieAlgebra> {
        let (size, basis, field) = match name {
            "sl2C" => (2, sl_basis(2), BaseField::Complex),
            "sl3C" => (3, sl_basis(3), BaseField::Complex),
            "su2" => (2, su_basis(2), BaseField::Real),
            "su3" => (3, su_basis(3), BaseField::Real),
            other => return Err(Error::UnknownAlgebra(other.to_string())),
        };
        let compact = field == BaseField::Real;
        Self::from_realization(name, size, basis, field, compact)
    }

    pub fn builtin_arc(name: &str) -> Result<Arc<LieAlgebra>> {
        Self::builtin(name).map(Arc::new)
    }

    fn from_realization(
        name: &str,
        size: usize,
        basis: Vec<Matrix>,
        base_field: BaseField,
        compact: bool,
    ) -> Result<LieAlgebra> {
        let real = Realization::new(size, basis);
        let d = real.basis.len();
        let mut structure: Structure = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let a = &real.basis[i];
                let b = &real.basis[j];
                let comm = a.mul(b).sub(&b.mul(a));
                let coords = real.coords_of(&comm).ok_or_else(|| {
                    Error::InvalidInput(format!("{name}: basis is not closed under brackets"))
                })?;
                for (k, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let q = c.to_rational().ok_or_else(|| {
                        Error::InvalidInput(format!("{name}: irrational structure constant"))
                    })?;
                    structure[i][j].push((k, q.clone()));
                }
            }
        }
        let mut alg = Self::from_structure(name, d, structure, base_field, compact)?;
        alg.realization = Some(real);
        Ok(alg)
    }

    /// Builds and validates a table from dense structure constants `c[i][j][k]`.
    pub fn from_structure_constants(
        name: &str,
        constants: &[Vec<Vec<Rational>>],
        base_field: BaseField,
        compact: bool,
    ) -> Result<LieAlgebra> {
        let d = constants.len();
        let mut structure: Structure = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            if constants[i].len() != d {
                return Err(Error::InvalidInput("structure constants are not d x d x d".into()));
            }
            for j in 0..d {
                if constants[i][j].len() != d {
                    return Err(Error::InvalidInput("structure constants are not d x d x d".into()));
                }
                for k in 0..d {
                    if !constants[i][j][k].is_zero() {
                        structure[i][j].push((k, constants[i][j][k].clone()));
                    }
                }
            }
        }
        Self::from_structure(name, d, structure, base_field, compact)
    }

    fn from_structure(
        name: &str,
        dim: usize,
        structure: Structure,
        base_field: BaseField,
        compact: bool,
    ) -> Result<LieAlgebra> {
        let mut alg = LieAlgebra {
            name: name.to_string(),
            dim,
            base_field,
            compact,
            structure,
            killing: Vec::new(),
            realization: None,
        };
        alg.killing = alg.compute_killing();
        alg.validate()?;
        Ok(alg)
    }

    fn compute_killing(&self) -> Vec<Vec<Rational>> {
        let d = self.dim;
        let ad: Vec<Vec<Vec<Rational>>> = (0..d)
            .map(|i| {
                // ad(x_i)[k][j] = c_ij^k
                let mut m = vec![vec![Rational::zero(); d]; d];
                for j in 0..d {
                    for (k, c) in &self.structure[i][j] {
                        m[*k][j] = c.clone();
                    }
                }
                m
            })
            .collect();
        let mut kil = vec![vec![Rational::zero(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let mut tr = Rational::zero();
                for a in 0..d {
                    for b in 0..d {
                        if !ad[i][a][b].is_zero() && !ad[j][b][a].is_zero() {
                            tr += &ad[i][a][b] * &ad[j][b][a];
                        }
                    }
                }
                kil[i][j] = tr;
            }
        }
        kil
    }

    fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.structure[i][j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Antisymmetry, Jacobi on all basis triples, and the Killing-form conditions.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if self.constant(i, j, k) != -self.constant(j, i, k) {
                        return Err(Error::InvalidInput(format!(
                            "{}: structure constants are not antisymmetric",
                            self.name
                        )));
                    }
                }
            }
        }
        if self.jacobi_residual_max() != 0 {
            return Err(Error::InvalidInput(format!("{}: Jacobi identity fails", self.name)));
        }
        let km = Matrix::from_rows(
            self.killing
                .iter()
                .map(|row| row.iter().map(|q| CyclotomicNumber::from(q.clone())).collect())
                .collect(),
        );
        if km.rank() != d {
            return Err(Error::InvalidInput(format!(
                "{}: Killing form is degenerate (not semisimple)",
                self.name
            )));
        }
        if self.killing_negative_definite() != self.compact {
            return Err(Error::InvalidInput(format!(
                "{}: compact flag disagrees with the Killing form",
                self.name
            )));
        }
        Ok(())
    }

    /// Number of basis triples on which the Jacobi identity fails.
    pub fn jacobi_residual_max(&self) -> usize {
        let d = self.dim;
        let mut failures = 0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let a = self.bracket_coords(&x, &self.bracket_coords(&y, &z));
                    let b = self.bracket_coords(&y, &self.bracket_coords(&z, &x));
                    let c = self.bracket_coords(&z, &self.bracket_coords(&x, &y));
                    let sum = linalg::add_vectors(&linalg::add_vectors(&a, &b), &c);
                    if !linalg::is_zero_vector(&sum) {
                        failures += 1;
                    }
                }
            }
        }
        failures
    }

    /// Sylvester's criterion on the rational Killing matrix.
    pub fn killing_negative_definite(&self) -> bool {
        // -K positive definite iff every pivot of its LDL^T elimination is positive
        let d = self.dim;
        let mut m: Vec<Vec<Rational>> = self
            .killing
            .iter()
            .map(|row| row.iter().map(|x| -x).collect())
            .collect();
        for p in 0..d {
            if !m[p][p].is_positive() {
                return false;
            }
            for i in p + 1..d {
                let f = &m[i][p] / &m[p][p];
                for j in p..d {
                    let t = &f * &m[p][j];
                    m[i][j] -= t;
                }
            }
        }
        true
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base_field(&self) -> BaseField {
        self.base_field
    }

    pub fn is_compact(&self) -> bool {
        self.compact
    }

    pub fn killing_matrix(&self) -> &[Vec<Rational>] {
        &self.killing
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    /// Dense structure constants `c[i][j][k]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Rational>>> {
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|k| self.constant(i, j, k)).collect()).collect())
            .collect()
    }

    pub fn basis(&self, i: usize) -> Vector {
        linalg::unit_vector(self.dim, i)
    }

    pub fn zero_coords(&self) -> Vector {
        linalg::zero_vector(self.dim)
    }

    pub fn bracket_coords(&self, x: &[CyclotomicNumber], y: &[CyclotomicNumber]) -> Vector {
        let mut out = self.zero_coords();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || self.structure[i][j].is_empty() {
                    continue;
                }
                let p = xi * yj;
                for (k, c) in &self.structure[i][j] {
                    out[*k] += &p.scale(c);
                }
            }
        }
        out
    }

    pub fn killing_coords(&self, x: &[CyclotomicNumber], y: &[CyclotomicNumber]) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero(4);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || self.killing[i][j].is_zero() {
                    continue;
                }
                acc += &(xi * yj).scale(&self.killing[i][j]);
            }
        }
        acc
    }

    /// Matrix of `ad x` acting on coordinate columns.
    pub fn ad_matrix(&self, x: &[CyclotomicNumber]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.bracket_coords(x, &self.basis(j)))
            .collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Whether the span of `basis` is closed under the bracket (complex span).
    pub fn is_closed_span(&self, basis: &[Vector]) -> bool {
        let r = linalg::rank_of(basis);
        basis.iter().all(|a| {
            basis.iter().all(|b| {
                let mut family = basis.to_vec();
                family.push(self.bracket_coords(a, b));
                linalg::rank_of(&family) == r
            })
        })
    }
}

/// An element of a Lie algebra (or of its complexification).
#[derive(Clone, PartialEq)]
pub struct AlgebraElement {
    algebra: Arc<LieAlgebra>,
    coords: Vector,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.algebra.name, self.coords)
    }
}

impl AlgebraElement {
    pub fn new(algebra: Arc<LieAlgebra>, coords: Vector) -> Result<AlgebraElement> {
        if coords.len() != algebra.dim {
            return Err(Error::InvalidInput(format!(
                "{} needs {} coordinates, got {}",
                algebra.name,
                algebra.dim,
                coords.len()
            )));
        }
        Ok(AlgebraElement { algebra, coords })
    }

    pub fn basis(algebra: &Arc<LieAlgebra>, i: usize) -> AlgebraElement {
        AlgebraElement {
            algebra: algebra.clone(),
            coords: algebra.basis(i),
        }
    }

    pub fn zero(algebra: &Arc<LieAlgebra>) -> AlgebraElement {
        AlgebraElement {
            algebra: algebra.clone(),
            coords: algebra.zero_coords(),
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[CyclotomicNumber] {
        &self.coords
    }

    pub fn into_coords(self) -> Vector {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vector(&self.coords)
    }

    fn check_same(&self, other: &AlgebraElement) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(
                self.algebra.name.clone(),
                other.algebra.name.clone(),
            ))
        }
    }

    pub fn bracket(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(other)?;
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            coords: self.algebra.bracket_coords(&self.coords, &other.coords),
        })
    }

    pub fn killing(&self, other: &AlgebraElement) -> Result<CyclotomicNumber> {
        self.check_same(other)?;
        Ok(self.algebra.killing_coords(&self.coords, &other.coords))
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(other)?;
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            coords: linalg::add_vectors(&self.coords, &other.coords),
        })
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coords: linalg::scale_vector(c, &self.coords),
        }
    }
}

/// `(e, h, f)` coordinates helper for `sl2C`: returns `a e + b h + c f`.
pub fn sl2_coords(a: i64, b: i64, c: i64) -> Vector {
    vec![
        CyclotomicNumber::from_integer(a),
        CyclotomicNumber::from_integer(b),
        CyclotomicNumber::from_integer(c),
    ]
}

/// `(i/2) h` in `sl2C`, the generator used for the standard exponential curves.
pub fn half_i_h() -> Vector {
    let mut v = linalg::zero_vector(3);
    v[1] = CyclotomicNumber::i().scale(&rat(1, 2));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> Arc<LieAlgebra> {
        LieAlgebra::builtin_arc("sl2C").unwrap()
    }

    #[test]
    fn sl2_brackets() {
        let g = sl2();
        let (e, h, f) = (g.basis(0), g.basis(1), g.basis(2));
        assert_eq!(g.bracket_coords(&h, &e), sl2_coords(2, 0, 0));
        assert_eq!(g.bracket_coords(&h, &f), sl2_coords(0, 0, -2));
        assert_eq!(g.bracket_coords(&e, &f), sl2_coords(0, 1, 0));
        assert!(linalg::is_zero_vector(&g.bracket_coords(&h, &h)));
    }

    #[test]
    fn sl2_killing_values() {
        let g = sl2();
        let (e, h, f) = (g.basis(0), g.basis(1), g.basis(2));
        assert_eq!(g.killing_coords(&h, &h), CyclotomicNumber::from_integer(8));
        assert!(g.killing_coords(&e, &e).is_zero());
        assert_eq!(g.killing_coords(&e, &f), CyclotomicNumber::from_integer(4));
        assert!(!g.is_compact());
        assert!(!g.killing_negative_definite());
    }

    #[test]
    fn compact_tables_are_negative_definite() {
        for name in ["su2", "su3"] {
            let g = LieAlgebra::builtin(name).unwrap();
            assert!(g.is_compact());
            assert!(g.killing_negative_definite());
            assert_eq!(g.base_field(), BaseField::Real);
        }
        let su2 = LieAlgebra::builtin("su2").unwrap();
        assert_eq!(su2.killing_matrix()[0][0], rat(-8, 1));
    }

    #[test]
    fn all_builtins_satisfy_jacobi() {
        for name in BUILTIN_NAMES {
            let g = LieAlgebra::builtin(name).unwrap();
            assert_eq!(g.jacobi_residual_max(), 0, "{name}");
        }
        assert_eq!(LieAlgebra::builtin("sl3C").unwrap().dim(), 8);
    }

    #[test]
    fn unknown_algebra() {
        assert!(matches!(LieAlgebra::builtin("e8"), Err(Error::UnknownAlgebra(_))));
    }

    #[test]
    fn rejects_broken_tables() {
        let d = 3;
        let mut c = vec![vec![vec![Rational::zero(); d]; d]; d];
        c[0][1][2] = rat(1, 1); // not antisymmetric
        assert!(LieAlgebra::from_structure_constants("bad", &c, BaseField::Complex, false).is_err());
        let ok = LieAlgebra::builtin("sl2C").unwrap().structure_constants();
        assert!(LieAlgebra::from_structure_constants("copy", &ok, BaseField::Complex, false).is_ok());
        assert!(LieAlgebra::from_structure_constants("copy", &ok, BaseField::Complex, true).is_err());
    }

    #[test]
    fn element_api_checks_algebra() {
        let g = sl2();
        let other = LieAlgebra::builtin_arc("su2").unwrap();
        let x = AlgebraElement::basis(&g, 0);
        let y = AlgebraElement::basis(&other, 0);
        assert!(matches!(x.bracket(&y), Err(Error::AlgebraMismatch(_, _))));
        let h = AlgebraElement::basis(&g, 1);
        assert_eq!(h.bracket(&x).unwrap().coords(), &sl2_coords(2, 0, 0)[..]);
        assert!(x.bracket(&x).unwrap().is_zero());
    }
}
