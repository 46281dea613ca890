//! Dense matrices over a number field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::numberfield::{Field, FieldElement};
use crate::rational::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        f.write_str("]")
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (r, c): (usize, usize)) -> &FieldElement {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FieldElement {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for k in 0..n {
            m[(k, k)] = field.one();
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, s: &FieldElement) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for k in 0..n {
            m[(k, k)] = s.clone();
        }
        m
    }

    pub fn diagonal(field: &Field, entries: &[FieldElement]) -> Matrix {
        let mut m = Matrix::zeros(field, entries.len(), entries.len());
        for (k, e) in entries.iter().enumerate() {
            m[(k, k)] = e.clone();
        }
        m
    }

    /// Panics if rows have unequal lengths.
    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix { field: field.clone(), rows: r, cols: c, data }
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| if r == c { self[(r, c)].is_one() } else { self[(r, c)].is_zero() }))
    }

    /// `Some(s)` when the matrix is `s * I`.
    pub fn as_scalar(&self) -> Option<&FieldElement> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let s = &self[(0, 0)];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = &self[(r, c)];
                if (r == c && e != s) || (r != c && !e.is_zero()) {
                    return None;
                }
            }
        }
        Some(s)
    }

    /// Every row and column has exactly one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| self.row(r).iter().filter(|e| !e.is_zero()).count() == 1)
            && (0..self.cols).all(|c| (0..self.rows).filter(|&r| !self[(r, c)].is_zero()).count() == 1)
    }

    pub fn scale(&self, s: &FieldElement) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `v^T * self`.
    pub fn vec_mul(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![self.field.zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let b = &self[(r, c)];
                if !b.is_zero() {
                    *o += &(a * b);
                }
            }
        }
        out
    }

    pub fn det(&self) -> FieldElement {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return self.field.zero();
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].inverse().expect("pivot is nonzero");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..n {
                    if !a[col][c].is_zero() {
                        let t = &f * &a[col][c];
                        a[r][c] -= &t;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = self.field.one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(piv) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(row, piv);
            let inv = a[(row, col)].inverse().expect("pivot is nonzero");
            for c in col..a.cols {
                if !a[(row, c)].is_zero() {
                    a[(row, c)] = &a[(row, c)] * &inv;
                }
            }
            for r in 0..a.rows {
                if r == row || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in col..a.cols {
                    if !a[(row, c)].is_zero() {
                        let t = &f * &a[(row, c)];
                        a[(r, c)] -= &t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nonzero rows of the reduced row-echelon form.
    pub fn row_space(&self) -> Matrix {
        let (red, pivots) = self.rref();
        let mut out = Matrix::zeros(&self.field, pivots.len(), self.cols);
        for r in 0..pivots.len() {
            for c in 0..self.cols {
                out[(r, c)] = red[(r, c)].clone();
            }
        }
        out
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column, in the
    /// standard form with a 1 in that free column.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&red[(r, f)];
                }
                v
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Flattened coordinates of every entry; a canonical, collision-free key.
    pub fn key(&self) -> Vec<Rat> {
        self.data.iter().flat_map(|e| e.coords().iter().cloned()).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    /// Same matrix with entries mapped into another field.
    pub fn map_entries(&self, field: &Field, f: impl Fn(&FieldElement) -> FieldElement) -> Matrix {
        Matrix { field: field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Multiplicative order, if it is at most `bound`.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }
}

impl<'a> core::ops::Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(&self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(r, c)] += &t;
                    }
                }
            }
        }
        out
    }
}

impl<'a> core::ops::Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::fields;

    #[test]
    fn inverse_and_det() {
        let k = fields::gaussian();
        let i = k.named("i").unwrap();
        let m = Matrix::from_rows(&k, vec![vec![k.one(), i.clone()], vec![i.clone(), k.from_int(2)]]);
        assert_eq!(m.det(), k.from_int(3));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        let sing = Matrix::from_ints(&k, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.det().is_zero());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let q = Field::rationals();
        let m = Matrix::from_ints(&q, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(FieldElement::is_zero));
        }
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn scalars_and_orders() {
        let k = fields::gaussian();
        let i = k.named("i").unwrap();
        let m = Matrix::scalar(&k, 3, &i);
        assert_eq!(m.as_scalar(), Some(&i));
        assert_eq!(m.order(10), Some(4));
        assert!(m.is_monomial());
    }
}
