//! Dense matrices over a [`FiniteField`], row-vector convention throughout:
//! a matrix acts on the right of row vectors, `v ↦ v·A`.

use std::fmt;

use crate::field::{Elem, FiniteField};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }
    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, c: Elem) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }
    pub fn diagonal(d: &[Elem]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, &c) in d.iter().enumerate() {
            m.data[i * n + i] = c;
        }
        m
    }
    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.concat() }
    }
    pub fn from_flat(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }
    /// A `0 × cols` matrix, the basis of the zero subspace.
    pub fn empty(cols: usize) -> Self {
        Mat { rows: 0, cols, data: Vec::new() }
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
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn data(&self) -> &[Elem] {
        &self.data
    }
    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
    pub fn push_row(&mut self, row: &[Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }
    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }
    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    pub fn mul(&self, other: &Mat, f: &FiniteField) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let orow = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    if b != 0 {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        out
    }
    pub fn add(&self, other: &Mat, f: &FiniteField) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }
    pub fn sub(&self, other: &Mat, f: &FiniteField) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }
    pub fn scale(&self, c: Elem, f: &FiniteField) -> Mat {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }
    pub fn pow(&self, mut e: u64, f: &FiniteField) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    /// Kronecker product `A ⊗ B`; on row vectors `(u⊗v)(A⊗B) = uA ⊗ vB`.
    pub fn kron(&self, other: &Mat, f: &FiniteField) -> Mat {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Mat::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal matrix.
    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Row-reduced echelon form and pivot columns.
    pub fn rref(&self, f: &FiniteField) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(f);
        m.truncate_rows(pivots.len());
        (m, pivots)
    }

    /// Reduces in place; rows beyond the rank become zero. Returns pivot columns.
    pub fn rref_in_place(&mut self, f: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c));
            for x in self.row_mut(r) {
                *x = f.mul(*x, inv);
            }
            for i in 0..self.rows {
                if i != r {
                    let factor = self.get(i, c);
                    if factor != 0 {
                        self.axpy_row(i, r, f.neg(factor), f);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
    /// `row[dst] += k · row[src]`.
    fn axpy_row(&mut self, dst: usize, src: usize, k: Elem, f: &FiniteField) {
        for c in 0..self.cols {
            let s = self.data[src * self.cols + c];
            if s != 0 {
                let d = &mut self.data[dst * self.cols + c];
                *d = f.add(*d, f.mul(k, s));
            }
        }
    }
    fn truncate_rows(&mut self, n: usize) {
        self.rows = n;
        self.data.truncate(n * self.cols);
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        self.clone().rref_in_place(f).len()
    }

    pub fn det(&self, f: &FiniteField) -> Elem {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(det);
            }
            let pv = m.get(c, c);
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for i in c + 1..n {
                let factor = m.get(i, c);
                if factor != 0 {
                    m.axpy_row(i, c, f.neg(f.mul(factor, inv)), f);
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &FiniteField) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for r in 0..n {
            aug.row_mut(r)[..n].copy_from_slice(self.row(r));
            aug.set(r, n + r, 1);
        }
        let pivots = aug.rref_in_place(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for r in 0..n {
            inv.row_mut(r).copy_from_slice(&aug.row(r)[n..]);
        }
        Some(inv)
    }

    /// Basis (as rows, in RREF) of the left kernel `{x : x·A = 0}`.
    pub fn left_kernel(&self, f: &FiniteField) -> Mat {
        self.transpose().right_kernel(f)
    }

    /// Basis (as rows, in RREF) of the right kernel `{x : A·xᵀ = 0}`.
    pub fn right_kernel(&self, f: &FiniteField) -> Mat {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            k.set(i, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                let v = r.get(pr, fc);
                if v != 0 {
                    k.set(i, pc, f.neg(v));
                }
            }
        }
        k.rref(f).0
    }

    /// Entry-wise map into a bigger or smaller slice of columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Elem], m: &Mat, f: &FiniteField) -> Vec<Elem> {
    assert_eq!(v.len(), m.rows());
    let mut out = vec![0; m.cols()];
    for (k, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (o, &b) in out.iter_mut().zip(m.row(k)) {
            if b != 0 {
                *o = f.add(*o, f.mul(a, b));
            }
        }
    }
    out
}

pub fn dot(u: &[Elem], v: &[Elem], f: &FiniteField) -> Elem {
    u.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

pub fn vec_add(u: &[Elem], v: &[Elem], f: &FiniteField) -> Vec<Elem> {
    u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect()
}

pub fn vec_sub(u: &[Elem], v: &[Elem], f: &FiniteField) -> Vec<Elem> {
    u.iter().zip(v).map(|(&a, &b)| f.sub(a, b)).collect()
}

pub fn vec_scale(u: &[Elem], c: Elem, f: &FiniteField) -> Vec<Elem> {
    u.iter().map(|&a| f.mul(a, c)).collect()
}

/// Scale so that the first nonzero coordinate is 1. Zero stays zero.
pub fn normalize_projective(v: &mut [Elem], f: &FiniteField) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        if lead != 1 {
            let inv = f.inv(lead);
            for x in v.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
    }
}

/// Echelon basis of a subspace kept fully reduced, supporting incremental
/// insertion and reduction. Used for spinning and for subquotient coordinates.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new(), pivots: Vec::new() }
    }
    pub fn from_rows(rows: &Mat, f: &FiniteField) -> Self {
        let mut b = Self::new(rows.cols());
        for r in 0..rows.rows() {
            b.insert(rows.row(r).to_vec(), f);
        }
        b
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }
    /// Reduce `v` against the basis (clears every pivot column).
    pub fn reduce(&self, v: &mut [Elem], f: &FiniteField) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                let k = f.neg(c);
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(k, r));
                    }
                }
            }
        }
    }
    pub fn contains(&self, v: &[Elem], f: &FiniteField) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w, f);
        w.iter().all(|&x| x == 0)
    }
    /// Inserts `v`; returns false if it was already in the span.
    pub fn insert(&mut self, mut v: Vec<Elem>, f: &FiniteField) -> bool {
        self.reduce(&mut v, f);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[p]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // Keep full reduction: clear column p in existing rows.
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                let k = f.neg(c);
                for (x, &r) in row.iter_mut().zip(&v) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(k, r));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, v);
        true
    }
    /// Coordinates of a vector known to lie in the span.
    pub fn coordinates(&self, v: &[Elem]) -> Vec<Elem> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }
    pub fn to_mat(&self) -> Mat {
        let mut m = Mat::empty(self.dim);
        for r in &self.rows {
            m.push_row(r);
        }
        m
    }
    /// Columns that are not pivots, i.e. a complement made of unit vectors.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| self.pivots.binary_search(c).is_err()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let f = FiniteField::gf3();
        let a = Mat::from_rows(&[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]);
        let inv = a.inverse(&f).unwrap();
        assert!(a.mul(&inv, &f).is_identity());
        assert_eq!(a.det(&f), 2);
        let sing = Mat::from_rows(&[vec![1, 2], vec![2, 1]]);
        assert_eq!(sing.det(&f), 0);
        assert!(sing.inverse(&f).is_none());
    }

    #[test]
    fn kernels() {
        let f = FiniteField::gf3();
        let a = Mat::from_rows(&[vec![1, 1, 1], vec![1, 2, 0]]);
        let k = a.right_kernel(&f);
        assert_eq!(k.rows(), 1);
        let x = k.row(0);
        for r in 0..2 {
            assert_eq!(dot(a.row(r), x, &f), 0);
        }
        let lk = a.transpose().left_kernel(&f);
        assert_eq!(lk.rows(), 1);
    }

    #[test]
    fn echelon_insert_keeps_reduced() {
        let f = FiniteField::gf3();
        let mut b = EchelonBasis::new(4);
        assert!(b.insert(vec![0, 1, 2, 0], &f));
        assert!(b.insert(vec![1, 1, 0, 1], &f));
        assert!(!b.insert(vec![1, 2, 2, 1], &f));
        assert_eq!(b.pivots(), &[0, 1]);
        assert_eq!(b.rows()[0][1], 0);
        let v = vec![2, 1, 1, 2];
        assert!(b.contains(&v, &f));
        assert_eq!(b.coordinates(&v), vec![2, 1]);
    }

    #[test]
    fn kron_acts_on_tensors() {
        let f = FiniteField::gf3();
        let a = Mat::from_rows(&[vec![0, 1], vec![1, 1]]);
        let b = Mat::from_rows(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 0, 1]]);
        let k = a.kron(&b, &f);
        let (u, v) = (vec![1, 2], vec![0, 1, 2]);
        let ff = &f;
        let uv: Vec<u32> = u.iter().flat_map(|&x| v.iter().map(move |&y| ff.mul(x, y))).collect();
        let lhs = vec_mat(&uv, &k, &f);
        let (ua, vb) = (vec_mat(&u, &a, &f), vec_mat(&v, &b, &f));
        let rhs: Vec<u32> = ua.iter().flat_map(|&x| vb.iter().map(move |&y| ff.mul(x, y))).collect();
        assert_eq!(lhs, rhs);
    }
}
