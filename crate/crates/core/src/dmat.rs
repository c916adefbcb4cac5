//! Matrices over a division algebra D, with row reduction by left
//! multiplication and F-linear spectral utilities.
//!
//! Vectors of D^n are stored as flat F-coordinates (entry i occupies
//! `i*d..(i+1)*d`) and scalars act on the right.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{Algebra, Elem, QuadraticTypeProfile};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::fmat::FMat;
use crate::upoly::UPoly;

/// Flat F-coordinates of a vector in D^n.
pub type DVector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMatrix {
    pub alg: Arc<Algebra>,
    pub rows: usize,
    pub cols: usize,
    /// Coordinate k of entry (i, j) lives at `(i*cols + j)*d + k`.
    pub data: Vec<Scalar>,
}

impl DMatrix {
    pub fn zeros(alg: &Arc<Algebra>, rows: usize, cols: usize) -> DMatrix {
        DMatrix { alg: alg.clone(), rows, cols, data: vec![alg.field.zero(); rows * cols * alg.d] }
    }

    pub fn identity(alg: &Arc<Algebra>, n: usize) -> DMatrix {
        let mut m = DMatrix::zeros(alg, n, n);
        for i in 0..n {
            m.set(i, i, &alg.unit);
        }
        m
    }

    pub fn from_flat(alg: &Arc<Algebra>, rows: usize, cols: usize, data: Vec<Scalar>) -> DMatrix {
        assert_eq!(data.len(), rows * cols * alg.d, "flat length");
        DMatrix { alg: alg.clone(), rows, cols, data }
    }

    pub fn from_entries(alg: &Arc<Algebra>, rows: usize, cols: usize, entries: Vec<Elem>) -> DMatrix {
        assert_eq!(entries.len(), rows * cols);
        DMatrix::from_flat(alg, rows, cols, entries.concat())
    }

    pub fn d(&self) -> usize {
        self.alg.d
    }

    pub fn entry(&self, i: usize, j: usize) -> &[Scalar] {
        let d = self.d();
        let o = (i * self.cols + j) * d;
        &self.data[o..o + d]
    }

    pub fn set(&mut self, i: usize, j: usize, v: &[Scalar]) {
        let d = self.d();
        let o = (i * self.cols + j) * d;
        self.data[o..o + d].clone_from_slice(v);
    }

    pub fn flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.alg.field.is_zero(x))
    }

    fn check_same(&self, o: &DMatrix) -> Result<()> {
        if self.alg != o.alg {
            return Err(Error::DescriptorMismatch("matrices over different algebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &DMatrix) -> DMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let f = &self.alg.field;
        DMatrix {
            alg: self.alg.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, o: &DMatrix) -> DMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let f = &self.alg.field;
        DMatrix {
            alg: self.alg.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    /// Multiplication by a central scalar.
    pub fn scale(&self, s: &Scalar) -> DMatrix {
        let f = &self.alg.field;
        DMatrix {
            alg: self.alg.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    pub fn mul(&self, o: &DMatrix) -> DMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in D-product");
        let alg = &self.alg;
        let mut r = DMatrix::zeros(alg, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = alg.zero();
                for k in 0..self.cols {
                    let a = self.entry(i, k);
                    if alg.is_zero(a) {
                        continue;
                    }
                    acc = alg.add(&acc, &alg.mul(a, o.entry(k, j)));
                }
                r.set(i, j, &acc);
            }
        }
        r
    }

    pub fn checked_mul(&self, o: &DMatrix) -> Result<DMatrix> {
        self.check_same(o)?;
        if self.cols != o.rows {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(self.mul(o))
    }

    /// M·x for x ∈ D^cols.
    pub fn apply(&self, x: &[Scalar]) -> DVector {
        let alg = &self.alg;
        let d = alg.d;
        let mut out = vec![alg.field.zero(); self.rows * d];
        for i in 0..self.rows {
            let mut acc = alg.zero();
            for j in 0..self.cols {
                let a = self.entry(i, j);
                let xj = &x[j * d..(j + 1) * d];
                if alg.is_zero(a) || alg.is_zero(xj) {
                    continue;
                }
                acc = alg.add(&acc, &alg.mul(a, xj));
            }
            out[i * d..(i + 1) * d].clone_from_slice(&acc);
        }
        out
    }

    /// (M^★)_{ij} = σ(m_{ji}).
    pub fn star(&self, profile: &QuadraticTypeProfile) -> DMatrix {
        let f = &self.alg.field;
        let mut r = DMatrix::zeros(&self.alg, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                r.set(j, i, &profile.apply_sigma(f, self.entry(i, j)));
            }
        }
        r
    }

    /// The (dn)×(dp) F-matrix of M acting on flat coordinates.
    pub fn to_frep(&self) -> FMat {
        let alg = &self.alg;
        let d = alg.d;
        let f = &alg.field;
        let mut out = FMat::zeros(f, self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.entry(i, j);
                if alg.is_zero(a) {
                    continue;
                }
                let l = alg.left_mat(a);
                for k in 0..d {
                    for m in 0..d {
                        out.set(i * d + k, j * d + m, l.get(k, m).clone());
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form over D by left row operations; pivots are 1.
    pub fn rref_d(&self) -> Result<(DMatrix, Vec<usize>)> {
        let alg = self.alg.clone();
        let mut m = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !alg.is_zero(m.entry(i, c))) else { continue };
            if pr != r {
                for j in 0..cols {
                    let a = m.entry(pr, j).to_vec();
                    let b = m.entry(r, j).to_vec();
                    m.set(pr, j, &b);
                    m.set(r, j, &a);
                }
            }
            let inv = alg.inv(m.entry(r, c))?;
            for j in 0..cols {
                let v = alg.mul(&inv, m.entry(r, j));
                m.set(r, j, &v);
            }
            for i in 0..rows {
                if i == r || alg.is_zero(m.entry(i, c)) {
                    continue;
                }
                let factor = m.entry(i, c).to_vec();
                for j in 0..cols {
                    let v = alg.sub(m.entry(i, j), &alg.mul(&factor, m.entry(r, j)));
                    m.set(i, j, &v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank_d(&self) -> Result<usize> {
        Ok(self.rref_d()?.1.len())
    }

    /// D-basis of {X : M·X = 0}, each X in flat coordinates.
    pub fn solve_right_null(&self) -> Result<Vec<DVector>> {
        let alg = &self.alg;
        let d = alg.d;
        let (r, pivots) = self.rref_d()?;
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut x = vec![alg.field.zero(); self.cols * d];
            x[free * d..(free + 1) * d].clone_from_slice(&alg.unit);
            for (row, &pc) in pivots.iter().enumerate() {
                let v = alg.neg(r.entry(row, free));
                x[pc * d..(pc + 1) * d].clone_from_slice(&v);
            }
            out.push(x);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<DMatrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let alg = &self.alg;
        let mut aug = DMatrix::zeros(alg, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.entry(i, j));
            }
            aug.set(i, n + i, &alg.unit);
        }
        let (r, pivots) = aug.rref_d()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = DMatrix::zeros(alg, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.entry(i, n + j));
            }
        }
        Ok(inv)
    }

    pub fn random<R: Rng + ?Sized>(alg: &Arc<Algebra>, rows: usize, cols: usize, rng: &mut R) -> DMatrix {
        let data = (0..rows * cols * alg.d).map(|_| alg.field.random(rng)).collect();
        DMatrix::from_flat(alg, rows, cols, data)
    }

    pub fn random_invertible<R: Rng + ?Sized>(alg: &Arc<Algebra>, n: usize, rng: &mut R) -> DMatrix {
        loop {
            let m = DMatrix::random(alg, n, n, rng);
            if m.rank_d().ok() == Some(n) {
                return m;
            }
        }
    }

    /// Monic minimal polynomial of the F-endomorphism of F^{dn}.
    pub fn min_poly_over_f(&self) -> Result<UPoly> {
        if self.rows != self.cols {
            return Err(Error::Shape("minimal polynomial of a non-square matrix".into()));
        }
        Ok(min_poly_fmat(&self.alg.field, &self.to_frep()))
    }

    /// Minimal polynomial splits over F with distinct roots.
    pub fn is_f_diagonalisable(&self) -> Result<bool> {
        let f = &self.alg.field;
        let mu = self.min_poly_over_f()?;
        let roots = mu.roots(f)?;
        Ok(roots.len() as isize == mu.degree())
    }

    /// gcd(μ, μ′) = 1.
    pub fn is_semisimple(&self) -> Result<bool> {
        let f = &self.alg.field;
        Ok(self.min_poly_over_f()?.is_squarefree(f))
    }

    pub fn is_nilpotent(&self) -> Result<bool> {
        let mu = self.min_poly_over_f()?;
        let f = &self.alg.field;
        Ok(mu.coeffs.iter().take(mu.coeffs.len() - 1).all(|c| f.is_zero(c)))
    }
}

/// Krylov construction: the first power A^k lying in the span of
/// I, A, …, A^{k−1} yields the minimal polynomial.
pub fn min_poly_fmat(f: &crate::field::Field, a: &FMat) -> UPoly {
    let n = a.rows;
    let mut powers: Vec<Vec<Scalar>> = vec![FMat::identity(f, n).data];
    let mut cur = FMat::identity(f, n);
    loop {
        cur = cur.mul(f, a);
        let m = FMat::from_cols(f, n * n, &powers);
        if let Some(c) = m.solve(f, &cur.data) {
            let mut coeffs: Vec<Scalar> = c.iter().map(|x| f.neg(x)).collect();
            coeffs.push(f.one());
            return UPoly::new(f, coeffs);
        }
        powers.push(cur.data.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn h() -> Arc<Algebra> {
        Arc::new(Algebra::hamilton())
    }

    #[test]
    fn quaternion_rank_and_kernel() {
        let a = h();
        let (one, i, j, k) = (a.basis_elem(0), a.basis_elem(1), a.basis_elem(2), a.basis_elem(3));
        let m = DMatrix::from_entries(&a, 2, 2, vec![one, j, i, k]);
        assert_eq!(m.rank_d().unwrap(), 1);
        let ker = m.solve_right_null().unwrap();
        assert_eq!(ker.len(), 1);
        assert!(a.is_zero(&m.apply(&ker[0])[..4]) && a.is_zero(&m.apply(&ker[0])[4..]));
    }

    #[test]
    fn min_poly_examples() {
        let f9 = Arc::new(Algebra::finite_field(3, 2).unwrap());
        let m = DMatrix::from_entries(&f9, 1, 1, vec![f9.basis_elem(1)]);
        let f = f9.field;
        assert_eq!(m.min_poly_over_f().unwrap(), UPoly::new(&f, vec![f.one(), f.zero(), f.one()]));
        assert!(!m.is_f_diagonalisable().unwrap());
        assert!(m.is_semisimple().unwrap());

        let f5 = Arc::new(Algebra::base(Field::Prime(5)));
        let d = DMatrix::from_entries(&f5, 2, 2, vec![vec![f5.field.from_i64(1)], vec![f5.field.zero()], vec![f5.field.zero()], vec![f5.field.from_i64(2)]]);
        assert!(d.is_f_diagonalisable().unwrap() && d.is_semisimple().unwrap());
        let mut n = DMatrix::zeros(&f5, 2, 2);
        n.set(0, 1, &f5.unit);
        assert!(!n.is_semisimple().unwrap());
        assert!(n.is_nilpotent().unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        use rand::SeedableRng;
        let a = h();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let m = DMatrix::random_invertible(&a, 3, &mut rng);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), DMatrix::identity(&a, 3));
        assert_eq!(inv.mul(&m), DMatrix::identity(&a, 3));
    }
}
