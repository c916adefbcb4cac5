//! Dense matrices and subspaces over a base field.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl FMat {
    pub fn zeros(f: &Field, rows: usize, cols: usize) -> FMat {
        FMat { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity(f: &Field, n: usize) -> FMat {
        let mut m = FMat::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> FMat {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        FMat { rows: r, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(f: &Field, rows: usize, cols: &[Vec<Scalar>]) -> FMat {
        let mut m = FMat::zeros(f, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> FMat {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        FMat { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, f: &Field, o: &FMat) -> FMat {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut r = FMat::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    r.data[idx] = f.mul_add(&r.data[idx], a, o.get(k, j));
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, f: &Field, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = f.mul_add(&acc, a, b);
                }
                acc
            })
            .collect()
    }

    /// vᵀ·self.
    pub fn vec_mul(&self, f: &Field, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![f.zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.mul_add(o, a, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, f: &Field, o: &FMat) -> FMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        FMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, f: &Field, o: &FMat) -> FMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        FMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, f: &Field, s: &Scalar) -> FMat {
        FMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.mul(a, s)).collect() }
    }

    pub fn is_zero(&self, f: &Field) -> bool {
        self.data.iter().all(|a| f.is_zero(a))
    }

    pub fn trace(&self, f: &Field) -> Scalar {
        let mut acc = f.zero();
        for i in 0..self.rows.min(self.cols) {
            acc = f.add(&acc, self.get(i, i));
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Reduced row echelon form with unit pivots; returns the pivot columns.
    pub fn rref(&self, f: &Field) -> (FMat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(f);
        (m, pivots)
    }

    pub fn rref_in_place(&mut self, f: &Field) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = f.neg(self.get(i, c));
                for j in c..cols {
                    let v = f.mul_add(self.get(i, j), &factor, self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn det(&self, f: &Field) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).unwrap();
            for i in c + 1..n {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.neg(&f.mul(m.get(i, c), &inv));
                for j in c..n {
                    let v = f.mul_add(m.get(i, j), &factor, m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of {x : self·x = 0}.
    pub fn kernel(&self, f: &Field) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref(f);
        kernel_from_rref(f, &r, &pivots)
    }

    /// Some x with self·x = b, if one exists.
    pub fn solve(&self, f: &Field, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FMat::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref_in_place(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self, f: &Field) -> Result<FMat> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = FMat::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.rref_in_place(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = FMat::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Invertible P, Q with P·self·Q = J_r (identity in the top-left r×r block).
    pub fn rank_normal_form(&self, f: &Field) -> (FMat, FMat, usize) {
        // Row-reduce [A | I] to get P·A = R in RREF.
        let (n, p) = (self.rows, self.cols);
        let mut aug = FMat::zeros(f, n, p + n);
        for i in 0..n {
            for j in 0..p {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, p + i, f.one());
        }
        // Pivots searched only among the first p columns.
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..p {
            if r == n {
                break;
            }
            let Some(pr) = (r..n).find(|&i| !f.is_zero(aug.get(i, c))) else { continue };
            if pr != r {
                for j in 0..aug.cols {
                    aug.data.swap(pr * aug.cols + j, r * aug.cols + j);
                }
            }
            let inv = f.inv(aug.get(r, c)).unwrap();
            for j in 0..aug.cols {
                let v = f.mul(aug.get(r, j), &inv);
                aug.set(r, j, v);
            }
            for i in 0..n {
                if i == r || f.is_zero(aug.get(i, c)) {
                    continue;
                }
                let factor = f.neg(aug.get(i, c));
                for j in 0..aug.cols {
                    let v = f.mul_add(aug.get(i, j), &factor, aug.get(r, j));
                    aug.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut pm = FMat::zeros(f, n, n);
        let mut rm = FMat::zeros(f, n, p);
        for i in 0..n {
            for j in 0..n {
                pm.set(i, j, aug.get(i, p + j).clone());
            }
            for j in 0..p {
                rm.set(i, j, aug.get(i, j).clone());
            }
        }
        // Column operations: permute pivots to the front, then clear the
        // remaining entries of each pivot row.
        let rank = pivots.len();
        let mut order: Vec<usize> = pivots.clone();
        order.extend((0..p).filter(|c| !pivots.contains(c)));
        let mut q = FMat::zeros(f, p, p);
        for (newc, &oldc) in order.iter().enumerate() {
            q.set(oldc, newc, f.one());
        }
        let rq = rm.mul(f, &q);
        let mut q2 = FMat::identity(f, p);
        for i in 0..rank {
            for j in rank..p {
                q2.set(i, j, f.neg(rq.get(i, j)));
            }
        }
        (pm, q.mul(f, &q2), rank)
    }
}

pub fn kernel_from_rref(f: &Field, r: &FMat, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; r.cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in 0..r.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![f.zero(); r.cols];
        v[free] = f.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(row, free));
        }
        out.push(v);
    }
    out
}

pub fn dot(f: &Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        acc = f.mul_add(&acc, x, y);
    }
    acc
}

pub fn vec_add(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn vec_sub(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn vec_scale(f: &Field, a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| f.mul(x, s)).collect()
}

pub fn vec_is_zero(f: &Field, a: &[Scalar]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

/// An F-linear subspace of F^n in canonical reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSubspace {
    pub ambient: usize,
    pub basis: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl FSubspace {
    pub fn zero(ambient: usize) -> FSubspace {
        FSubspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(f: &Field, ambient: usize) -> FSubspace {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        FSubspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span(f: &Field, ambient: usize, vecs: &[Vec<Scalar>]) -> FSubspace {
        if vecs.is_empty() {
            return FSubspace::zero(ambient);
        }
        let m = FMat::from_rows(ambient, vecs.to_vec());
        let (r, pivots) = m.rref(f);
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        FSubspace { ambient, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// v minus its projection along the echelon basis; zero iff v ∈ self.
    pub fn reduce(&self, f: &Field, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if f.is_zero(&w[pc]) {
                continue;
            }
            let c = f.neg(&w[pc]);
            for (x, y) in w.iter_mut().zip(row) {
                *x = f.mul_add(x, &c, y);
            }
        }
        w
    }

    pub fn contains(&self, f: &Field, v: &[Scalar]) -> bool {
        vec_is_zero(f, &self.reduce(f, v))
    }

    pub fn contains_space(&self, f: &Field, o: &FSubspace) -> bool {
        o.basis.iter().all(|v| self.contains(f, v))
    }

    /// Coordinates of v in the echelon basis (v must lie in the space).
    pub fn coords(&self, f: &Field, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = vec![f.zero(); self.ambient];
        for (ci, row) in c.iter().zip(&self.basis) {
            for (x, y) in w.iter_mut().zip(row) {
                *x = f.mul_add(x, ci, y);
            }
        }
        if w == v {
            Some(c)
        } else {
            None
        }
    }

    /// Basis of the linear functionals vanishing on the space.
    pub fn annihilator(&self, f: &Field) -> Vec<Vec<Scalar>> {
        if self.basis.is_empty() {
            return FSubspace::full(f, self.ambient).basis;
        }
        let m = FMat { rows: self.dim(), cols: self.ambient, data: self.basis.concat() };
        kernel_from_rref(f, &m, &self.pivots)
    }

    pub fn sum(&self, f: &Field, o: &FSubspace) -> FSubspace {
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        FSubspace::span(f, self.ambient, &v)
    }

    pub fn intersect(&self, f: &Field, o: &FSubspace) -> FSubspace {
        let mut ann = self.annihilator(f);
        ann.extend(o.annihilator(f));
        if ann.is_empty() {
            return FSubspace::full(f, self.ambient);
        }
        let m = FMat::from_rows(self.ambient, ann);
        FSubspace::span(f, self.ambient, &m.kernel(f))
    }

    /// Indices of coordinates not used as pivots: a complement's coordinates.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(f: &Field, rows: &[&[i64]]) -> FMat {
        let cols = rows[0].len();
        FMat::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
    }

    #[test]
    fn rank_kernel_inverse() {
        let f = Field::Prime(5);
        let a = m(&f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(&f), 2);
        let k = a.kernel(&f);
        assert_eq!(k.len(), 1);
        assert!(vec_is_zero(&f, &a.mul_vec(&f, &k[0])));
        let b = m(&f, &[&[1, 2], &[3, 4]]);
        let bi = b.inverse(&f).unwrap();
        assert_eq!(b.mul(&f, &bi), FMat::identity(&f, 2));
        assert!(a.inverse(&f).is_err());
    }

    #[test]
    fn rank_normal_form_works() {
        let f = Field::Rationals;
        let a = m(&f, &[&[0, 2, 4], &[0, 1, 2], &[1, 0, 1]]);
        let (p, q, r) = a.rank_normal_form(&f);
        assert_eq!(r, 2);
        let j = p.mul(&f, &a).mul(&f, &q);
        let mut want = FMat::zeros(&f, 3, 3);
        want.set(0, 0, f.one());
        want.set(1, 1, f.one());
        assert_eq!(j, want);
        assert!(p.inverse(&f).is_ok() && q.inverse(&f).is_ok());
    }

    #[test]
    fn subspace_ops() {
        let f = Field::Prime(3);
        let e = |v: &[i64]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let u = FSubspace::span(&f, 3, &[e(&[1, 1, 0]), e(&[0, 1, 1])]);
        let w = FSubspace::span(&f, 3, &[e(&[1, 0, 0]), e(&[0, 0, 1])]);
        let i = u.intersect(&f, &w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&f, &e(&[1, 0, 2])));
        assert_eq!(u.sum(&f, &w).dim(), 3);
        assert_eq!(u.annihilator(&f).len(), 1);
        let x = e(&[2, 0, 1]);
        assert_eq!(u.coords(&f, &x), Some(e(&[2, 0])));
        let sol = m(&f, &[&[1, 1], &[0, 1]]).solve(&f, &e(&[2, 1])).unwrap();
        assert_eq!(sol, e(&[1, 1]));
    }
}
