//! Raw `u64` kernels for prime fields, used inside exhaustive enumerations.
//! All entries are reduced residues and p < 2³².

use rayon::prelude::*;

use crate::field::{inv_mod, Field, Scalar};
use crate::fmat::FMat;

const CHUNK: u64 = 1 << 12;

/// Smallest index in [0, count) whose element offset + Σ c_j·B_j (digits of
/// the index, most significant first) satisfies `hit`. Chunks run in parallel;
/// the result does not depend on the thread count.
pub fn first_index<P>(q: u64, basis: &[Vec<u64>], offset: Option<&[u64]>, len: usize, count: u64, hit: P) -> Option<u64>
where
    P: Fn(&[u64], &mut Vec<u64>) -> bool + Sync,
{
    let k = basis.len();
    let chunks = count.div_ceil(CHUNK);
    (0..chunks).into_par_iter().find_map_first(|ch| {
        let mut digits = vec![0u64; k];
        let mut m = vec![0u64; len];
        let mut scratch = Vec::with_capacity(len);
        let end = ((ch + 1) * CHUNK).min(count);
        for idx in ch * CHUNK..end {
            digits_of(idx, q, &mut digits);
            combine(q, &mut m, &digits, basis);
            if let Some(o) = offset {
                add_assign_scaled(q, &mut m, 1, o);
            }
            if hit(&m, &mut scratch) {
                return Some(idx);
            }
        }
        None
    })
}

/// Coefficients of the element with the given enumeration index.
pub fn coeffs_of(q: u64, idx: u64, k: usize) -> Vec<Scalar> {
    let mut digits = vec![0u64; k];
    digits_of(idx, q, &mut digits);
    digits.into_iter().map(Scalar::Fp).collect()
}

/// Converts a prime-field matrix to row-major residues.
pub fn to_raw(m: &FMat) -> Vec<u64> {
    m.data.iter().map(Field::fp_value).collect()
}

pub fn to_raw_vec(v: &[Scalar]) -> Vec<u64> {
    v.iter().map(Field::fp_value).collect()
}

pub fn from_raw(rows: usize, cols: usize, data: &[u64]) -> FMat {
    FMat { rows, cols, data: data.iter().map(|&x| Scalar::Fp(x)).collect() }
}

/// Rank by in-place elimination (the buffer is clobbered).
pub fn rank_in_place(p: u64, m: &mut [u64], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i * cols + c] != 0) else { continue };
        if pr != r {
            for j in c..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(m[r * cols + c], p);
        for j in c..cols {
            m[r * cols + j] = m[r * cols + j] * inv % p;
        }
        for i in r + 1..rows {
            let factor = m[i * cols + c];
            if factor == 0 {
                continue;
            }
            let neg = p - factor;
            for j in c..cols {
                m[i * cols + j] = (m[i * cols + j] + neg * m[r * cols + j]) % p;
            }
        }
        r += 1;
    }
    r
}

pub fn rank(p: u64, m: &[u64], rows: usize, cols: usize) -> usize {
    let mut buf = m.to_vec();
    rank_in_place(p, &mut buf, rows, cols)
}

/// Fills `out` with a + λ·b.
#[inline]
pub fn axpy_into(p: u64, out: &mut [u64], a: &[u64], lambda: u64, b: &[u64]) {
    for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
        *o = (x + lambda * y) % p;
    }
}

#[inline]
pub fn add_assign_scaled(p: u64, acc: &mut [u64], lambda: u64, b: &[u64]) {
    if lambda == 0 {
        return;
    }
    for (o, &y) in acc.iter_mut().zip(b) {
        *o = (*o + lambda * y) % p;
    }
}

/// The linear combination Σ digits[i]·basis[i] into `out`.
pub fn combine(p: u64, out: &mut [u64], digits: &[u64], basis: &[Vec<u64>]) {
    out.iter_mut().for_each(|x| *x = 0);
    for (&c, b) in digits.iter().zip(basis) {
        add_assign_scaled(p, out, c, b);
    }
}

/// Base-q digits of `idx`, most significant first, into `digits`.
#[inline]
pub fn digits_of(mut idx: u64, q: u64, digits: &mut [u64]) {
    for d in digits.iter_mut().rev() {
        *d = idx % q;
        idx /= q;
    }
}

/// n×n matrix minus identity is singular.
pub fn has_fixed_vector(p: u64, m: &[u64], n: usize, scratch: &mut Vec<u64>) -> bool {
    scratch.clear();
    scratch.extend_from_slice(m);
    for i in 0..n {
        scratch[i * n + i] = (scratch[i * n + i] + p - 1) % p;
    }
    rank_in_place(p, scratch, n, n) < n
}

pub fn mat_mul(p: u64, a: &[u64], b: &[u64], n: usize, m: usize, k: usize) -> Vec<u64> {
    // a: n×m, b: m×k
    let mut out = vec![0u64; n * k];
    for i in 0..n {
        for l in 0..m {
            let x = a[i * m + l];
            if x == 0 {
                continue;
            }
            for j in 0..k {
                out[i * k + j] = (out[i * k + j] + x * b[l * k + j]) % p;
            }
        }
    }
    out
}

/// q^e with overflow reported as `None`.
pub fn checked_pow(q: u64, e: usize) -> Option<u64> {
    let mut r: u64 = 1;
    for _ in 0..e {
        r = r.checked_mul(q)?;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_fixed_vectors() {
        assert_eq!(rank(5, &[1, 2, 2, 4], 2, 2), 1);
        assert_eq!(rank(5, &[1, 2, 3, 4], 2, 2), 2);
        let mut s = Vec::new();
        assert!(has_fixed_vector(3, &[1, 0, 0, 2], 2, &mut s));
        assert!(!has_fixed_vector(3, &[0, 1, 0, 0], 2, &mut s));
        let mut d = [0u64; 3];
        digits_of(11, 3, &mut d);
        assert_eq!(d, [1, 0, 2]);
        assert_eq!(checked_pow(7, 7), Some(823_543));
        assert_eq!(checked_pow(u64::MAX, 2), None);
    }
}
