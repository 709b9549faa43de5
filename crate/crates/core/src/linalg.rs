//! Dense exact linear algebra over cyclotomic fields.

use std::fmt;

use crate::field::{CyclotomicNumber, Rational};

pub type Vector = Vec<CyclotomicNumber>;

pub fn zero_vector(n: usize) -> Vector {
    vec![CyclotomicNumber::zero(4); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = CyclotomicNumber::one(4);
    v
}

pub fn is_zero_vector(v: &[CyclotomicNumber]) -> bool {
    v.iter().all(|c| c.is_zero())
}

pub fn add_vectors(a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &CyclotomicNumber, v: &[CyclotomicNumber]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn scale_vector_rational(c: &Rational, v: &[CyclotomicNumber]) -> Vector {
    v.iter().map(|x| x.scale(c)).collect()
}

pub fn conj_vector(v: &[CyclotomicNumber]) -> Vector {
    v.iter().map(|x| x.conj()).collect()
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CyclotomicNumber>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![CyclotomicNumber::zero(4); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = CyclotomicNumber::one(4);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`; `n` is the column length.
    pub fn from_columns(n: usize, cols: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[CyclotomicNumber]) -> Matrix {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[CyclotomicNumber] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[CyclotomicNumber] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CyclotomicNumber]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = CyclotomicNumber::zero(4);
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(&self.data, &other.data),
        }
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(c, &self.data),
        }
    }

    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: conj_vector(&self.data),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero(4);
        for i in 0..self.rows.min(self.cols) {
            acc += &self[(i, i)];
        }
        acc
    }

    pub fn pow(&self, mut n: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                let x = &m[(r, j)] * &inv;
                m[(r, j)] = x;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vector(self.cols);
                v[f] = CyclotomicNumber::one(4);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = CyclotomicNumber::one(4);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(out)
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[CyclotomicNumber]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = CyclotomicNumber;
    fn index(&self, (i, j): (usize, usize)) -> &CyclotomicNumber {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CyclotomicNumber {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank over the field of a list of vectors of equal length.
pub fn rank_of(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

/// Indices of a maximal linearly independent prefix-greedy subset.
pub fn independent_subset(vectors: &[Vector]) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let n = vectors[0].len();
    Matrix::from_columns(n, vectors).rref().1
}

/// Splits a complex vector into its real and imaginary coordinate blocks. Both
/// blocks have entries in the real subfield, so ranks of split vectors over the
/// full field equal real ranks of the original vectors.
pub fn realify(v: &[CyclotomicNumber]) -> Vector {
    v.iter()
        .map(|x| x.real_part())
        .chain(v.iter().map(|x| x.imag_part()))
        .collect()
}

/// Dimension over the reals of the real span of `vectors`.
pub fn real_rank(vectors: &[Vector]) -> usize {
    let split: Vec<Vector> = vectors.iter().map(|v| realify(v)).collect();
    rank_of(&split)
}

/// Indices of a real-linearly independent greedy subset.
pub fn real_independent_subset(vectors: &[Vector]) -> Vec<usize> {
    let split: Vec<Vector> = vectors.iter().map(|v| realify(v)).collect();
    independent_subset(&split)
}

/// Incrementally built echelon basis for fast span membership tests.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vector)>,
}

impl EchelonBasis {
    pub fn new() -> EchelonBasis {
        EchelonBasis::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[CyclotomicNumber]) -> Vector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &(&c * r);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[CyclotomicNumber]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[CyclotomicNumber]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = r[p].inv().expect("nonzero pivot");
                self.rows.push((p, scale_vector(&inv, &r)));
                true
            }
        }
    }
}

/// Basis of the intersection of the spans of two families in the same space.
pub fn intersect_spans(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    let mut cols: Vec<Vector> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect::<Vector>()));
    let m = Matrix::from_columns(n, &cols);
    let kernel = m.nullspace();
    let mut out: Vec<Vector> = kernel
        .iter()
        .map(|c| {
            let mut v = zero_vector(n);
            for (coef, vec) in c.iter().zip(a) {
                if !coef.is_zero() {
                    v = add_vectors(&v, &scale_vector(coef, vec));
                }
            }
            v
        })
        .collect();
    let keep = independent_subset(&out);
    out = keep.into_iter().map(|i| out[i].clone()).collect();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn c(n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_integer(n)
    }

    #[test]
    fn echelon_membership() {
        let v = |a: i64, b: i64, d: i64| vec![c(a), c(b), c(d)];
        let mut e = EchelonBasis::new();
        assert!(e.insert(&v(1, 2, 0)));
        assert!(e.insert(&v(0, 1, 1)));
        assert!(!e.insert(&v(1, 3, 1)));
        assert!(e.contains(&v(2, 5, 1)));
        assert!(!e.contains(&v(0, 0, 1)));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_rows(vec![vec![c(2), c(1)], vec![c(1), c(1)]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let x = m.solve(&[c(3), c(2)]).unwrap();
        assert_eq!(x, vec![c(1), c(1)]);
        let singular = Matrix::from_rows(vec![vec![c(1), c(2)], vec![c(2), c(4)]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[c(1), c(0)]).is_none());
        assert_eq!(singular.nullspace().len(), 1);
    }

    #[test]
    fn real_rank_distinguishes_i_multiples() {
        let i = CyclotomicNumber::i();
        let v = vec![c(1), c(0)];
        let iv = vec![i.clone(), c(0)];
        assert_eq!(rank_of(&[v.clone(), iv.clone()]), 1);
        assert_eq!(real_rank(&[v.clone(), iv]), 2);
        let half = vec![CyclotomicNumber::from(rat(1, 2)), c(0)];
        assert_eq!(real_rank(&[v, half]), 1);
    }

    #[test]
    fn span_intersection() {
        let a = vec![vec![c(1), c(0), c(0)], vec![c(0), c(1), c(0)]];
        let b = vec![vec![c(0), c(1), c(0)], vec![c(0), c(0), c(1)]];
        let i = intersect_spans(&a, &b);
        assert_eq!(i.len(), 1);
        assert!(i[0][0].is_zero() && !i[0][1].is_zero() && i[0][2].is_zero());
    }
}
