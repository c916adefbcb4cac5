//! Alternator spaces, radicals, D-valued lifts of bilinear forms, and
//! detection of quadratic type from a one-dimensional alternator space.

use std::sync::Arc;

use crate::algebra::{Algebra, Elem, QuadForm, QuadraticTypeProfile};
use crate::dmat::DMatrix;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::fmat::{FMat, FSubspace};
use crate::fp;
use crate::operator_space::OperatorSpace;

/// Rows for the linear conditions "x ↦ xᵀ·A(c)·x vanishes", where A(c) is
/// linear in the unknowns c and given through `entry(i, j)` as a coefficient
/// row. Polarized: A_ii = 0 and A_ij + A_ji = 0.
fn alternating_conditions(f: &Field, size: usize, entry: &dyn Fn(usize, usize) -> Vec<Scalar>) -> Vec<Vec<Scalar>> {
    let mut rows = Vec::new();
    for i in 0..size {
        rows.push(entry(i, i));
        for j in i + 1..size {
            let a = entry(i, j);
            let b = entry(j, i);
            rows.push(a.iter().zip(&b).map(|(x, y)| f.add(x, y)).collect());
        }
    }
    rows
}

/// Over F₂, the quadratic condition imposed at every point x.
fn pointwise_conditions(f: &Field, size: usize, entry: &dyn Fn(usize, usize) -> Vec<Scalar>) -> Vec<Vec<Scalar>> {
    let cache: Vec<Vec<Vec<Scalar>>> = (0..size).map(|i| (0..size).map(|j| entry(i, j)).collect()).collect();
    let nunk = cache.first().and_then(|r| r.first()).map_or(0, |v| v.len());
    let mut rows = Vec::new();
    for x in 1u64..(1 << size) {
        let mut row = vec![f.zero(); nunk];
        for i in (0..size).filter(|&i| x >> i & 1 == 1) {
            for j in (0..size).filter(|&j| x >> j & 1 == 1) {
                for (r, c) in row.iter_mut().zip(&cache[i][j]) {
                    *r = f.add(r, c);
                }
            }
        }
        rows.push(row);
    }
    rows
}

const POINTWISE_LIMIT: usize = 16;

fn conditions(f: &Field, size: usize, entry: &dyn Fn(usize, usize) -> Vec<Scalar>) -> Vec<Vec<Scalar>> {
    let mut rows = alternating_conditions(f, size, entry);
    if f.cardinality() == Some(2) && size <= POINTWISE_LIMIT {
        rows.extend(pointwise_conditions(f, size, entry));
    }
    rows
}

fn solve_kernel(f: &Field, unknowns: usize, rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        return FSubspace::full(f, unknowns).basis;
    }
    FSubspace::span(f, unknowns, &FMat::from_rows(unknowns, rows).kernel(f)).basis
}

/// Basis of Alt(S): Gram matrices G of size (dp)×(dn) with xᵀ·G·u(x) = 0 for
/// every x ∈ D^p and u ∈ S.
pub fn alternator_space(s: &OperatorSpace) -> Vec<FMat> {
    let f = s.alg.field;
    let dp = s.p * s.d();
    let dn = s.n * s.d();
    let frs = s.frep_basis();
    let unknowns = dp * dn;
    let mut rows = Vec::new();
    for u in &frs {
        // (G·U)_ij = Σ_k G[i][k]·U[k][j]
        let entry = |i: usize, j: usize| {
            let mut row = vec![f.zero(); unknowns];
            for k in 0..dn {
                row[i * dn + k] = u.get(k, j).clone();
            }
            row
        };
        rows.extend(conditions(&f, dp, &entry));
    }
    solve_kernel(&f, unknowns, rows).into_iter().map(|v| FMat { rows: dp, cols: dn, data: v }).collect()
}

/// xᵀ·G·u(x) vanishes identically for every basis operator.
pub fn is_alternator(s: &OperatorSpace, g: &FMat) -> bool {
    let f = s.alg.field;
    s.frep_basis().iter().all(|u| {
        let a = g.mul(&f, u);
        (0..a.rows).all(|i| {
            f.is_zero(a.get(i, i)) && (i + 1..a.rows).all(|j| f.is_zero(&f.add(a.get(i, j), a.get(j, i))))
        })
    })
}

/// Exhaustive check of b(x, u(x)) = 0 over all x (finite fields only).
pub fn is_alternator_pointwise(s: &OperatorSpace, g: &FMat) -> Result<bool> {
    let f = s.alg.field;
    let q = f.cardinality().ok_or_else(|| Error::Unsupported("pointwise check over an infinite field".into()))?;
    let dp = g.rows;
    let count = fp::checked_pow(q, dp).ok_or_else(|| Error::BudgetExceeded("pointwise alternator check".into()))?;
    let mats: Vec<Vec<u64>> = s.frep_basis().iter().map(|u| fp::to_raw(&g.mul(&f, u))).collect();
    let mut x = vec![0u64; dp];
    for idx in 0..count {
        fp::digits_of(idx, q, &mut x);
        for a in &mats {
            let mut acc = 0u64;
            for i in 0..dp {
                if x[i] == 0 {
                    continue;
                }
                let mut row = 0u64;
                for j in 0..dp {
                    row = (row + a[i * dp + j] * x[j]) % q;
                }
                acc = (acc + x[i] * row) % q;
            }
            if acc != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All u with b(x, u(x)) ≡ 0, where b has Gram G of size (dp)×(dn). With
/// `d_linear` the unknowns range over Mat_{n,p}(D); otherwise over all
/// F-linear maps, returned as a space of (dn)×(dp) matrices over F.
pub fn alternating_maps(alg: &Arc<Algebra>, n: usize, p: usize, g: &FMat, d_linear: bool) -> Result<OperatorSpace> {
    let f = alg.field;
    let d = alg.d;
    let (dp, dn) = (p * d, n * d);
    if g.rows != dp || g.cols != dn {
        return Err(Error::Shape(format!("Gram matrix must be {dp}×{dn}")));
    }
    if d_linear {
        let unknowns = d * n * p;
        let mut cols = Vec::with_capacity(unknowns);
        for t in 0..unknowns {
            let mut v = vec![f.zero(); unknowns];
            v[t] = f.one();
            cols.push(g.mul(&f, &DMatrix::from_flat(alg, n, p, v).to_frep()));
        }
        let entry = |i: usize, j: usize| cols.iter().map(|a| a.get(i, j).clone()).collect::<Vec<_>>();
        let rows = conditions(&f, dp, &entry);
        let basis = solve_kernel(&f, unknowns, rows);
        return Ok(OperatorSpace::from_flat(alg, n, p, &basis));
    }
    // F-linear unknown U (dn×dp), flat index k*dp + j
    let unknowns = dn * dp;
    let entry = |i: usize, j: usize| {
        let mut row = vec![f.zero(); unknowns];
        for k in 0..dn {
            row[k * dp + j] = g.get(i, k).clone();
        }
        row
    };
    let rows = conditions(&f, dp, &entry);
    let basis = solve_kernel(&f, unknowns, rows);
    let base = Arc::new(Algebra::base(f));
    Ok(OperatorSpace::from_flat(&base, dn, dp, &basis))
}

/// (Lrad, Rrad) = (ker Gᵀ, ker G).
pub fn radicals(f: &Field, g: &FMat) -> (FSubspace, FSubspace) {
    let l = FSubspace::span(f, g.rows, &g.transpose().kernel(f));
    let r = FSubspace::span(f, g.cols, &g.kernel(f));
    (l, r)
}

pub fn is_right_nondegenerate(f: &Field, g: &FMat) -> bool {
    g.kernel(f).is_empty()
}

/// The unique right-D-linear lift B with b = e∘B, as the (dm)×n array of
/// values B(f_r, e_j) where f_r runs over the F-basis of D^m.
pub fn induced_d_form(alg: &Arc<Algebra>, g: &FMat, e: &[Scalar]) -> Result<DMatrix> {
    let f = alg.field;
    let d = alg.d;
    if g.cols % d != 0 {
        return Err(Error::Shape("Gram columns must be a multiple of d".into()));
    }
    let n = g.cols / d;
    let t = alg.duality_matrix(e);
    let tinv = t.inverse(&f).map_err(|_| Error::SingularDuality("e(a_l·a_k) is singular".into()))?;
    let mut out = DMatrix::zeros(alg, g.rows, n);
    for r in 0..g.rows {
        for j in 0..n {
            let rhs: Vec<Scalar> = (0..d).map(|k| g.get(r, j * d + k).clone()).collect();
            out.set(r, j, &tinv.mul_vec(&f, &rhs));
        }
    }
    Ok(out)
}

/// Recovers P with b(X, Y) = e(X^★·P·Y), verifying left σ-quasilinearity on
/// every basis triple.
pub fn recover_sesquilinear(alg: &Arc<Algebra>, g: &FMat, profile: &QuadraticTypeProfile) -> Result<DMatrix> {
    let f = alg.field;
    let d = alg.d;
    let z = induced_d_form(alg, g, &profile.e)?;
    if z.rows % d != 0 {
        return Err(Error::Shape("Gram rows must be a multiple of d".into()));
    }
    let (m, n) = (z.rows / d, z.cols);
    let mut p = DMatrix::zeros(alg, m, n);
    for r in 0..m {
        for j in 0..n {
            let mut acc = alg.zero();
            for l in 0..d {
                acc = alg.add(&acc, &alg.scale(z.entry(r * d + l, j), &alg.unit[l]));
            }
            p.set(r, j, &acc);
        }
    }
    for r in 0..m {
        for l in 0..d {
            let sa = profile.apply_sigma(&f, &alg.basis_elem(l));
            for j in 0..n {
                if z.entry(r * d + l, j) != alg.mul(&sa, p.entry(r, j)).as_slice() {
                    return Err(Error::NotSesquilinear(format!("row {r}, basis element {l}, column {j}")));
                }
            }
        }
    }
    Ok(p)
}

/// Gram matrix over F of b(X, Y) = e(X^★·P·Y).
pub fn gram_from_sesquilinear(p: &DMatrix, profile: &QuadraticTypeProfile) -> FMat {
    let alg = &p.alg;
    let f = alg.field;
    let d = alg.d;
    let sig: Vec<Elem> = (0..d).map(|l| profile.apply_sigma(&f, &alg.basis_elem(l))).collect();
    let mut g = FMat::zeros(&f, p.rows * d, p.cols * d);
    for r in 0..p.rows {
        for j in 0..p.cols {
            let prj = p.entry(r, j);
            for (l, sl) in sig.iter().enumerate() {
                let left = alg.mul(sl, prj);
                for k in 0..d {
                    let v = profile.apply_e(&f, &alg.mul(&left, &alg.basis_elem(k)));
                    g.set(r * d + l, j * d + k, v);
                }
            }
        }
    }
    g
}

fn right_mult_block(alg: &Algebra, n: usize, a: &[Scalar]) -> FMat {
    let f = alg.field;
    let d = alg.d;
    let r = alg.right_mat(a);
    let mut m = FMat::zeros(&f, n * d, n * d);
    for i in 0..n {
        for k in 0..d {
            for l in 0..d {
                m.set(i * d + k, i * d + l, r.get(k, l).clone());
            }
        }
    }
    m
}

/// λ with b^a = λ·b, where b^a(x, y) = b(x·a, y·a).
fn twist_ratio(alg: &Algebra, g: &FMat, a: &[Scalar]) -> Result<Scalar> {
    let f = alg.field;
    let d = alg.d;
    let rm = right_mult_block(alg, g.rows / d, a);
    let rn = right_mult_block(alg, g.cols / d, a);
    let ga = rm.transpose().mul(&f, g).mul(&f, &rn);
    let idx = g.data.iter().position(|x| !f.is_zero(x)).ok_or(Error::AltNotOneDimensional(0))?;
    let lambda = f.div(&ga.data[idx], &g.data[idx])?;
    if ga != g.scale(&f, &lambda) {
        return Err(Error::NotProportional(format!("twist by {}", alg.format_elem(a))));
    }
    Ok(lambda)
}

/// Quadratic type read off a one-dimensional alternator space.
#[derive(Clone, Debug)]
pub struct Detection {
    pub profile: QuadraticTypeProfile,
    /// Spanning alternator, Gram (dn)×(dn).
    pub b: FMat,
    /// Gram of the recovered sesquilinear form over D.
    pub p: DMatrix,
    pub q: QuadForm,
}

pub fn detect_quadratic_type(s: &OperatorSpace, budget: u64) -> Result<Detection> {
    let alt = alternator_space(s);
    if alt.len() != 1 {
        return Err(Error::AltNotOneDimensional(alt.len()));
    }
    let g = alt.into_iter().next().unwrap();
    detect_from_alternator(&s.alg, g, budget)
}

pub fn detect_from_alternator(alg: &Arc<Algebra>, g: FMat, budget: u64) -> Result<Detection> {
    let f = alg.field;
    let d = alg.d;
    let diag: Vec<Scalar> = (0..d).map(|k| twist_ratio(alg, &g, &alg.basis_elem(k))).collect::<Result<_>>()?;
    let mut coeffs = vec![f.zero(); d * d];
    for k in 0..d {
        coeffs[k * d + k] = diag[k].clone();
        for l in k + 1..d {
            let sum = alg.add(&alg.basis_elem(k), &alg.basis_elem(l));
            let v = twist_ratio(alg, &g, &sum)?;
            coeffs[k * d + l] = f.sub(&f.sub(&v, &diag[k]), &diag[l]);
        }
    }
    let q = QuadForm { d, coeffs };
    let profile = alg.classify_composition_form(&q, budget)?;
    let p = recover_sesquilinear(alg, &g, &profile)?;
    Ok(Detection { profile, b: g, p, q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuadTag;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_space_alternators() {
        let a = Arc::new(Algebra::base(Field::Prime(3)));
        let s = OperatorSpace::zero(&a, 1, 1);
        assert_eq!(alternator_space(&s).len(), 1);
    }

    #[test]
    fn nondegenerate_form_f_linear() {
        let f = Field::Prime(5);
        let a = Arc::new(Algebra::base(f));
        let g = FMat::identity(&f, 3);
        assert_eq!(alternating_maps(&a, 3, 3, &g, false).unwrap().dim(), 3);
        let zero = FMat::zeros(&f, 2, 2);
        assert_eq!(alternating_maps(&a, 2, 2, &zero, true).unwrap().dim(), 4);
    }

    #[test]
    fn radicals_of_rank_one() {
        let f = Field::Prime(3);
        let g = FMat::from_rows(2, vec![vec![Scalar::Fp(1), Scalar::Fp(2)], vec![Scalar::Fp(2), Scalar::Fp(1)]]);
        let (l, r) = radicals(&f, &g);
        assert_eq!((l.dim(), r.dim()), (1, 1));
        let (l, r) = radicals(&f, &FMat::identity(&f, 2));
        assert_eq!((l.dim(), r.dim()), (0, 0));
    }

    #[test]
    fn induced_form_over_f9() {
        let alg = Arc::new(Algebra::finite_field(3, 2).unwrap());
        let f = alg.field;
        let pr = alg.standard_profile().unwrap();
        // b(x, y) = tr(x³y): Gram over the basis (1, t)
        let cube = |x: &[Scalar]| alg.mul(&alg.mul(x, x), x);
        let mut g = FMat::zeros(&f, 2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let v = alg.mul(&cube(&alg.basis_elem(i)), &alg.basis_elem(j));
                g.set(i, j, pr.apply_e(&f, &v));
            }
        }
        let z = induced_d_form(&alg, &g, &pr.e).unwrap();
        for i in 0..2 {
            assert_eq!(z.entry(i, 0), cube(&alg.basis_elem(i)).as_slice());
        }
    }

    #[test]
    fn sesquilinear_round_trip() {
        let alg = Arc::new(Algebra::finite_field(5, 2).unwrap());
        let pr = alg.standard_profile().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let p = DMatrix::random(&alg, 2, 2, &mut rng);
            let g = gram_from_sesquilinear(&p, &pr);
            assert_eq!(recover_sesquilinear(&alg, &g, &pr).unwrap(), p);
        }
        // a generic F-bilinear form is not of that shape
        let f = alg.field;
        let g = FMat::from_rows(4, (0..4).map(|_| (0..4).map(|_| f.random(&mut rng)).collect()).collect());
        assert!(matches!(recover_sesquilinear(&alg, &g, &pr), Err(Error::NotSesquilinear(_))));
    }

    #[test]
    fn detects_separable_quadratic() {
        let alg = Arc::new(Algebra::finite_field(5, 2).unwrap());
        let pr = alg.standard_profile().unwrap();
        let id = DMatrix::identity(&alg, 2);
        let g = gram_from_sesquilinear(&id, &pr);
        let s = alternating_maps(&alg, 2, 2, &g, true).unwrap();
        assert_eq!(s.dim(), 4);
        let det = detect_quadratic_type(&s, 1 << 20).unwrap();
        assert_eq!(det.profile.tag, QuadTag::SeparableQuadratic);
        assert_eq!(det.profile.sigma, pr.sigma);
        assert!(is_alternator_pointwise(&s, &det.b).unwrap());
    }
}
