//! Sparse multivariate polynomials over a base field, graded lexicographic
//! order on exponent vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Exponent vector ordered by total degree, then lexicographically with
/// the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn one(nvars: usize) -> Mono {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Mono {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(f: &Field, nvars: usize, c: Scalar) -> MPoly {
        let mut p = MPoly::zero(nvars);
        if !f.is_zero(&c) {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn var(f: &Field, nvars: usize, i: usize) -> MPoly {
        let mut p = MPoly::zero(nvars);
        p.terms.insert(Mono::var(nvars, i), f.one());
        p
    }

    /// Σ coeffs[i]·z_i.
    pub fn linear(f: &Field, coeffs: &[Scalar]) -> MPoly {
        let n = coeffs.len();
        let mut p = MPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !f.is_zero(c) {
                p.terms.insert(Mono::var(n, i), c.clone());
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, f: &Field, m: Mono, c: &Scalar) {
        if f.is_zero(c) {
            return;
        }
        let keep = match self.terms.get_mut(&m) {
            Some(v) => {
                *v = f.add(v, c);
                !f.is_zero(v)
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
                true
            }
        };
        if !keep {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, f: &Field, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(f, m.clone(), c);
        }
        r
    }

    pub fn neg(&self, f: &Field) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect() }
    }

    pub fn sub(&self, f: &Field, o: &MPoly) -> MPoly {
        self.add(f, &o.neg(f))
    }

    pub fn scale(&self, f: &Field, s: &Scalar) -> MPoly {
        if f.is_zero(s) {
            return MPoly::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), f.mul(c, s))).collect() }
    }

    pub fn mul(&self, f: &Field, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(f, m1.mul(m2), &f.mul(c1, c2));
            }
        }
        r
    }

    pub fn eval(&self, f: &Field, z: &[Scalar]) -> Scalar {
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (zi, &e) in z.iter().zip(&m.0) {
                if e > 0 {
                    t = f.mul(&t, &f.pow(zi, e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Every term has total degree `k` (the zero polynomial qualifies).
    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient self / o; fails when o does not divide self.
    pub fn div_exact(&self, f: &Field, o: &MPoly) -> Result<MPoly> {
        let (lm, lc) = o.leading().ok_or(Error::ZeroInverse)?;
        let lc_inv = f.inv(lc)?;
        let mut rem = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return Err(Error::NotCollinear("division leaves a remainder".into()));
            }
            let tm = m.div(lm);
            let tc = f.mul(c, &lc_inv);
            let mut t = MPoly::zero(self.nvars);
            t.terms.insert(tm.clone(), tc.clone());
            rem = rem.sub(f, &t.mul(f, o));
            q.add_term(f, tm, &tc);
        }
        Ok(q)
    }

    /// Coefficient list of a linear form (None if not 1-homogeneous).
    pub fn linear_coeffs(&self, f: &Field) -> Option<Vec<Scalar>> {
        if !self.is_homogeneous(1) {
            return None;
        }
        let mut v = vec![f.zero(); self.nvars];
        for (m, c) in &self.terms {
            let i = m.0.iter().position(|&e| e == 1).unwrap();
            v[i] = c.clone();
        }
        Some(v)
    }
}

/// A matrix of polynomials in a common set of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub nvars: usize,
    pub entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> PolyMatrix {
        PolyMatrix { rows, cols, nvars, entries: vec![MPoly::zero(nvars); rows * cols] }
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MPoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn mul(&self, f: &Field, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows);
        let mut r = PolyMatrix::zeros(self.rows, o.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = MPoly::zero(self.nvars);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(f, &a.mul(f, o.get(k, j)));
                }
                r.set(i, j, acc);
            }
        }
        r
    }

    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> PolyMatrix {
        let mut b = PolyMatrix::zeros(r1 - r0, c1 - c0, self.nvars);
        for i in r0..r1 {
            for j in c0..c1 {
                b.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        b
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn eval(&self, f: &Field, z: &[Scalar]) -> crate::fmat::FMat {
        crate::fmat::FMat {
            rows: self.rows,
            cols: self.cols,
            data: self.entries.iter().map(|p| p.eval(f, z)).collect(),
        }
    }

    /// Every entry has total degree `k`.
    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.entries.iter().all(|p| p.is_homogeneous(k))
    }
}
