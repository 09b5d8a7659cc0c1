//! Dense matrices over an exact field, with Gaussian elimination.

use std::fmt;

use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(rows * cols, data.len(), "matrix data length");
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix::new(field, rows, cols, vec![field.zero(); rows * cols])
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_ints(field: Field, rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        Matrix::new(field, rows, cols, vals.iter().map(|&v| field.int(v)).collect())
    }

    /// Permutation-style matrix with a single 1 in row `perm[c]` of column `c`.
    pub fn from_columns_map(field: Field, rows: usize, perm: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, perm.len());
        for (c, &r) in perm.iter().enumerate() {
            m.set(r, c, field.one());
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape {:?} * {:?}", self.shape(), rhs.shape());
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    let prod = if a.is_one() { b.clone() } else { a * b };
                    out.data[idx] = &out.data[idx] + &prod;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix::new(self.field, self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix::new(self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix::new(self.field, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product; the row index of `a ⊗ b` is `ia * b.rows + ib`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut out = Matrix::zeros(self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn hstack(parts: &[Matrix], field: Field, rows: usize) -> Matrix {
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack rows");
            out.paste(0, off, p);
            off += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[Matrix], field: Field, cols: usize) -> Matrix {
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack cols");
            out.paste(off, 0, p);
            off += p.rows;
        }
        out
    }

    pub fn block_diag(parts: &[Matrix], field: Field) -> Matrix {
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.paste(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(i, c).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(i, j, self.get(r, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(r, j) - &(&factor * m.get(row, j));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
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

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Matrix::hstack(&[self.clone(), Matrix::identity(self.field, n)], self.field, n);
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Basis of the null space as the columns of a `cols × k` matrix.
    pub fn nullspace(&self) -> Matrix {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, self.field.one());
            for (i, &pc) in piv.iter().enumerate() {
                out.set(pc, k, -r.get(i, fc));
            }
        }
        out
    }

    /// Solves `self * X = rhs`, returning one solution if any.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve shape");
        let n = self.cols;
        let aug = Matrix::hstack(&[self.clone(), rhs.clone()], self.field, self.rows);
        let (r, piv) = aug.rref();
        if piv.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, n, rhs.cols);
        for (i, &pc) in piv.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(i, n + j).clone());
            }
        }
        Some(x)
    }

    /// Left inverse of a matrix with independent columns, built from its first
    /// independent rows.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let k = self.cols;
        if k == 0 {
            return Some(Matrix::zeros(self.field, 0, self.rows));
        }
        let (_, rows) = self.transpose().rref();
        if rows.len() < k {
            return None;
        }
        let sq = self.select_rows(&rows);
        let inv = sq.inverse()?;
        let mut sel = Matrix::zeros(self.field, k, self.rows);
        for (i, &r) in rows.iter().enumerate() {
            sel.set(i, r, self.field.one());
        }
        Some(inv.mul(&sel))
    }

    /// Row-major flattening into a column vector.
    pub fn vec(&self) -> Matrix {
        Matrix::new(self.field, self.rows * self.cols, 1, self.data.clone())
    }

    pub fn unvec(v: &Matrix, rows: usize, cols: usize) -> Matrix {
        assert_eq!(v.rows * v.cols, rows * cols, "unvec shape");
        Matrix::new(v.field, rows, cols, v.data.clone())
    }

    /// Integer entries when every entry is integral.
    pub fn as_ints(&self) -> Option<Vec<i64>> {
        self.data.iter().map(Scalar::as_integer).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_ints(q(), 3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 4]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = Matrix::from_ints(q(), 2, 2, &[1, 2, 2, 4]);
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.cols(), 1);
        assert!(m.mul(&ns).is_zero());
    }

    #[test]
    fn left_inverse_of_tall() {
        let b = Matrix::from_ints(q(), 3, 2, &[1, 0, 1, 1, 0, 1]);
        let l = b.left_inverse().unwrap();
        assert!(l.mul(&b).is_identity());
    }

    #[test]
    fn kron_shapes() {
        let a = Matrix::identity(q(), 2);
        let b = Matrix::from_ints(q(), 1, 3, &[1, 2, 3]);
        let k = a.kron(&b);
        assert_eq!(k.shape(), (2, 6));
        assert_eq!(k.get(1, 5), &q().int(3));
    }

    #[test]
    fn solve_mod_p() {
        let f = Field::Prime(5);
        let a = Matrix::from_ints(f, 2, 2, &[1, 2, 3, 4]);
        let b = Matrix::from_ints(f, 2, 1, &[1, 0]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
    }
}
