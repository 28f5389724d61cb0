//! Dense matrices over a [`Field`] and Gaussian elimination.
//!
//! The same routines serve F_p, F_q and F_{q^m}: rank, row echelon form and
//! kernels of a matrix whose entries lie in a subfield do not change when the
//! matrix is viewed over the larger field.

use std::fmt;

use crate::field::{Elem, Field};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Builds a matrix from rows of equal length. An empty list gives a 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|r| dot(field, self.row(r), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &vr) in v.iter().enumerate() {
            if vr.is_zero() {
                continue;
            }
            for (o, &e) in out.iter_mut().zip(self.row(r)) {
                *o = field.add(*o, field.mul(vr, e));
            }
        }
        out
    }
}

pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Reduced row echelon form in place. Pivots are chosen in the leftmost
/// column that has a nonzero entry at or below the current row, taking the
/// topmost such entry. Returns the pivot columns.
pub fn rref(field: &Field, m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, pr);
        let inv = field.inv(m.get(r, c)).expect("nonzero pivot");
        for e in m.row_mut(r) {
            *e = field.mul(*e, inv);
        }
        let pivot_row = m.row(r).to_vec();
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c);
            if f.is_zero() {
                continue;
            }
            for (e, &pv) in m.row_mut(i).iter_mut().zip(&pivot_row) {
                *e = field.sub(*e, field.mul(f, pv));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: &Field, m: &Matrix) -> usize {
    let mut w = m.clone();
    rref(field, &mut w).len()
}

/// Determinant by elimination with row pivoting.
pub fn det(field: &Field, m: &Matrix) -> Elem {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut w = m.clone();
    let mut acc = Elem::ONE;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !w.get(i, c).is_zero()) else {
            return Elem::ZERO;
        };
        if pr != c {
            w.swap_rows(pr, c);
            acc = field.neg(acc);
        }
        let pivot = w.get(c, c);
        acc = field.mul(acc, pivot);
        let inv = field.inv(pivot).expect("nonzero pivot");
        for i in c + 1..n {
            let f = field.mul(w.get(i, c), inv);
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = field.sub(w.get(i, j), field.mul(f, w.get(c, j)));
                w.set(i, j, v);
            }
        }
    }
    acc
}

/// Basis of {x : M x = 0}. One vector per non-pivot column, in increasing
/// column order, with that free coordinate equal to 1 and the other free
/// coordinates 0.
pub fn right_kernel(field: &Field, m: &Matrix) -> Vec<Vec<Elem>> {
    let mut w = m.clone();
    let pivots = rref(field, &mut w);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Elem::ZERO; m.cols];
            v[free] = Elem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(w.get(r, free));
            }
            v
        })
        .collect()
}

pub fn inverse(field: &Field, m: &Matrix) -> Option<Matrix> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut aug = Matrix::zeros(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c));
        }
        aug.set(r, n + r, Elem::ONE);
    }
    let pivots = rref(field, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            inv.set(r, c, aug.get(r, n + c));
        }
    }
    Some(inv)
}

/// A matrix whose entries all lie in the base field F_q.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqMatrix(Matrix);

impl FqMatrix {
    /// Wraps `m`, or returns `None` if some entry is outside F_q.
    pub fn new(field: &Field, m: Matrix) -> Option<FqMatrix> {
        m.entries()
            .iter()
            .all(|&e| field.is_in_base(e))
            .then_some(FqMatrix(m))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn transpose(&self) -> FqMatrix {
        FqMatrix(self.0.transpose())
    }
}

pub fn fq_rank(field: &Field, m: &FqMatrix) -> usize {
    rank(field, &m.0)
}

pub fn fq_rref(field: &Field, m: &FqMatrix) -> (FqMatrix, Vec<usize>) {
    let mut w = m.0.clone();
    let pivots = rref(field, &mut w);
    (FqMatrix(w), pivots)
}

/// Determinant of a square matrix over F_{q^m}.
pub fn ext_det(field: &Field, m: &Matrix) -> Elem {
    det(field, m)
}
