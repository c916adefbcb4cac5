//! Affine min-rank and nonsingular spaces, Hermitian spaces, the trace inner
//! product, and spaces of semi-simple or diagonalisable matrices.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{Algebra, Anisotropy, QuadTag, QuadraticTypeProfile};
use crate::dmat::DMatrix;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::fmat::{FMat, FSubspace};
use crate::fp;
use crate::json::{dmatrix_json, dvector_json, space_json};
use crate::operator_space::{joint, projective_count, projective_points, DSubspace, OperatorSpace};
use crate::trivial_spectrum::{
    construct_sh, construct_triangular_model, is_e_nonisotropic, is_nonisotropic_gram, unit_free_hyperplane,
};
use crate::verdict::Verdict;

/// base + direction, a set of n×p matrices over D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    pub base: DMatrix,
    pub direction: OperatorSpace,
}

impl AffineSpace {
    pub fn new(base: DMatrix, direction: OperatorSpace) -> Result<AffineSpace> {
        if base.rows != direction.n || base.cols != direction.p || base.alg != direction.alg {
            return Err(Error::Shape("base point does not match the direction".into()));
        }
        Ok(AffineSpace { base, direction })
    }

    pub fn dim(&self) -> usize {
        self.direction.dim()
    }

    /// Codimension over F inside Mat_{n,p}(D).
    pub fn codim(&self) -> usize {
        self.direction.n * self.direction.p * self.direction.d() - self.dim()
    }

    pub fn element(&self, coeffs: &[Scalar]) -> DMatrix {
        self.base.add(&self.direction.combination(coeffs))
    }

    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> DMatrix {
        self.base.add(&self.direction.random_element(rng))
    }

    pub fn to_json(&self) -> Value {
        json!({"base": dmatrix_json(&self.base), "direction": space_json(&self.direction)})
    }

    /// Smallest enumeration index whose element has F-rank below `min_frank`.
    fn first_below_rank(&self, q: u64, count: u64, min_frank: usize) -> Option<u64> {
        let rows = self.direction.n * self.direction.d();
        let cols = self.direction.p * self.direction.d();
        let basis: Vec<Vec<u64>> = self.direction.frep_basis().iter().map(fp::to_raw).collect();
        let base = fp::to_raw(&self.base.to_frep());
        fp::first_index(q, &basis, Some(&base), rows * cols, count, |m, scratch| {
            scratch.clear();
            scratch.extend_from_slice(m);
            fp::rank_in_place(q, scratch, rows, cols) < min_frank
        })
    }

    /// Every element has D-rank ≥ r: exhaustive over finite fields within
    /// budget, sampled otherwise.
    pub fn verify_min_rank(&self, r: usize, budget: u64, samples: u64, seed: u64) -> Result<Verdict> {
        let d = self.direction.d();
        let f = self.direction.alg.field;
        if let Some(q) = f.cardinality() {
            if let Some(count) = fp::checked_pow(q, self.dim()).filter(|&c| c <= budget) {
                return Ok(match self.first_below_rank(q, count, r * d) {
                    Some(idx) => {
                        let m = self.element(&fp::coeffs_of(q, idx, self.dim()));
                        let rank = m.rank_d()?;
                        Verdict::Refuted { witness: json!({"element": dmatrix_json(&m), "rank": rank}) }
                    }
                    None => Verdict::certified(format!("exhaustive over {count} elements")),
                });
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let m = self.random_element(&mut rng);
            let rank = m.rank_d()?;
            if rank < r {
                return Ok(Verdict::Refuted { witness: json!({"element": dmatrix_json(&m), "rank": rank}) });
            }
        }
        Ok(Verdict::Sampled { samples })
    }

    /// Every element is invertible.
    pub fn verify_nonsingular(&self, budget: u64, samples: u64, seed: u64) -> Result<Verdict> {
        if self.direction.n != self.direction.p {
            return Err(Error::Shape("invertibility needs square matrices".into()));
        }
        self.verify_min_rank(self.direction.n, budget, samples, seed)
    }
}

/// [[I_r + M, X], [Y, Z]] with M in a triangular trivial-spectrum model of
/// Mat_r(D) and X, Y, Z arbitrary.
pub fn build_affine_minrank(alg: &Arc<Algebra>, n: usize, p: usize, r: usize) -> Result<AffineSpace> {
    if r == 0 || r > n.min(p) {
        return Err(Error::Shape(format!("need 1 ≤ r ≤ min(n, p), got r = {r}")));
    }
    let h = unit_free_hyperplane(alg);
    let model = construct_triangular_model(alg, &vec![h; r])?;
    build_affine_minrank_with(alg, n, p, &model)
}

/// The same construction around a given r×r trivial-spectrum space.
pub fn build_affine_minrank_with(alg: &Arc<Algebra>, n: usize, p: usize, m: &OperatorSpace) -> Result<AffineSpace> {
    let r = m.n;
    if !m.is_square() || r == 0 || r > n.min(p) {
        return Err(Error::Shape("upper-left block does not fit".into()));
    }
    let d = alg.d;
    let f = alg.field;
    let mut mats = Vec::new();
    for u in m.basis_matrices() {
        let mut big = DMatrix::zeros(alg, n, p);
        for i in 0..r {
            for j in 0..r {
                big.set(i, j, u.entry(i, j));
            }
        }
        mats.push(big);
    }
    for i in 0..n {
        for j in 0..p {
            if i < r && j < r {
                continue;
            }
            for k in 0..d {
                let mut big = DMatrix::zeros(alg, n, p);
                let mut e = vec![f.zero(); d];
                e[k] = f.one();
                big.set(i, j, &e);
                mats.push(big);
            }
        }
    }
    let mut base = DMatrix::zeros(alg, n, p);
    for i in 0..r {
        base.set(i, i, &alg.one());
    }
    AffineSpace::new(base, OperatorSpace::span(alg, n, p, &mats))
}

/// (P₁ + 𝒮ℋ_{n₁}(D)) ∨ ⋯ ∨ (P_k + 𝒮ℋ_{n_k}(D)). Each Pᵢ must be
/// e-nonisotropic; a refuted block is an error carrying the isotropic vector.
pub fn build_affine_nonsingular(ps: &[DMatrix], profile: &QuadraticTypeProfile, budget: u64) -> Result<AffineSpace> {
    let Some(first) = ps.first() else {
        return Err(Error::Shape("empty partition".into()));
    };
    let alg = first.alg.clone();
    let n: usize = ps.iter().map(|p| p.rows).sum();
    let mut base = DMatrix::zeros(&alg, n, n);
    let mut blocks = Vec::with_capacity(ps.len());
    let mut off = 0;
    for (i, p) in ps.iter().enumerate() {
        if p.rows != p.cols || p.alg != alg {
            return Err(Error::Shape(format!("block {i} is not square over the common algebra")));
        }
        if let Verdict::Refuted { witness } = is_e_nonisotropic(p, profile, budget) {
            return Err(Error::NotNonisotropic(format!("block {i}: isotropic vector {witness}")));
        }
        for r in 0..p.rows {
            for c in 0..p.cols {
                base.set(off + r, off + c, p.entry(r, c));
            }
        }
        off += p.rows;
        blocks.push(construct_sh(&alg, p.rows, profile)?);
    }
    AffineSpace::new(base, joint(&blocks)?)
}

fn require_separable(alg: &Algebra, profile: &QuadraticTypeProfile) -> Result<()> {
    if alg.field.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    if profile.tag == QuadTag::HyperRadicial {
        return Err(Error::NotSeparableType("hyper-radicial extension".into()));
    }
    Ok(())
}

/// {M : M^★ = sign·M}.
fn star_eigenspace(alg: &Arc<Algebra>, n: usize, profile: &QuadraticTypeProfile, sign: i64) -> OperatorSpace {
    let f = alg.field;
    let unknowns = alg.d * n * n;
    let s = f.from_i64(sign);
    let cols: Vec<Vec<Scalar>> = (0..unknowns)
        .map(|t| {
            let mut v = vec![f.zero(); unknowns];
            v[t] = f.one();
            let m = DMatrix::from_flat(alg, n, n, v);
            m.star(profile).sub(&m.scale(&s)).data
        })
        .collect();
    let basis = FMat::from_cols(&f, unknowns, &cols).kernel(&f);
    OperatorSpace::from_flat(alg, n, n, &basis)
}

/// ℋₙ(D) = {M : M^★ = M}.
pub fn hermitian_space(alg: &Arc<Algebra>, n: usize, profile: &QuadraticTypeProfile) -> Result<OperatorSpace> {
    require_separable(alg, profile)?;
    Ok(star_eigenspace(alg, n, profile, 1))
}

/// {M : M^★ = −M}, without the condition on the diagonal.
pub fn skew_hermitian_space(alg: &Arc<Algebra>, n: usize, profile: &QuadraticTypeProfile) -> Result<OperatorSpace> {
    require_separable(alg, profile)?;
    Ok(star_eigenspace(alg, n, profile, -1))
}

fn check_trace(alg: &Algebra) -> Result<()> {
    let c = alg.field.characteristic();
    if c != 0 && alg.d as u64 % c == 0 {
        return Err(Error::DegenerateTrace(format!("characteristic {c} divides d = {}", alg.d)));
    }
    Ok(())
}

/// Tr_{D/F}(e_k·e_l).
fn trace_table(alg: &Algebra) -> Vec<Vec<Scalar>> {
    (0..alg.d)
        .map(|k| (0..alg.d).map(|l| alg.trace_td(&alg.mul(&alg.basis_elem(k), &alg.basis_elem(l)))).collect())
        .collect()
}

/// Coefficient row of A ↦ ⟨A, B⟩ in the flattened coordinates of A.
fn pairing_row(b: &DMatrix, table: &[Vec<Scalar>]) -> Vec<Scalar> {
    let alg = &b.alg;
    let f = alg.field;
    let (n, p, d) = (b.rows, b.cols, alg.d);
    let mut row = vec![f.zero(); n * p * d];
    // ⟨A, B⟩ = Σ_{i,j} Tr(a_ij · b_ji)
    for i in 0..n {
        for j in 0..p {
            let bji = b.entry(j, i);
            for k in 0..d {
                let mut acc = f.zero();
                for (l, x) in bji.iter().enumerate() {
                    acc = f.mul_add(&acc, x, &table[k][l]);
                }
                row[(i * p + j) * d + k] = acc;
            }
        }
    }
    row
}

/// ⟨A, B⟩ = Tr(tr(AB)) for A n×p and B p×n.
pub fn inner_product(a: &DMatrix, b: &DMatrix) -> Result<Scalar> {
    if a.rows != b.cols || a.cols != b.rows {
        return Err(Error::Shape("⟨A, B⟩ needs A n×p and B p×n".into()));
    }
    check_trace(&a.alg)?;
    let f = a.alg.field;
    let row = pairing_row(b, &trace_table(&a.alg));
    Ok(f.sum(&row.iter().zip(a.flat()).map(|(x, y)| f.mul(x, y)).collect::<Vec<_>>()))
}

/// {A : ⟨A, B⟩ = 0 for all B ∈ S}, for square S.
pub fn orthogonal_complement(s: &OperatorSpace) -> Result<OperatorSpace> {
    if !s.is_square() {
        return Err(Error::Shape("orthogonal complement of a non-square space".into()));
    }
    check_trace(&s.alg)?;
    let f = s.alg.field;
    let table = trace_table(&s.alg);
    let len = s.n * s.n * s.d();
    let rows: Vec<Vec<Scalar>> = s.basis_matrices().iter().map(|b| pairing_row(b, &table)).collect();
    let basis = if rows.is_empty() { FSubspace::full(&f, len).basis } else { FMat::from_rows(len, rows).kernel(&f) };
    Ok(OperatorSpace::from_flat(&s.alg, s.n, s.n, &basis))
}

/// Some p ∈ S with p(x) = x and im p ⊆ xD.
pub fn rank1_idempotent_at(s: &OperatorSpace, x: &[Scalar]) -> Option<DMatrix> {
    let f = s.alg.field;
    let line = DSubspace::span(&s.alg, s.n, &[x.to_vec()]);
    let ann = line.fspace.annihilator(&f);
    let frs = s.frep_basis();
    let dn = s.n * s.d();
    let dp = s.p * s.d();
    let k = frs.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs = Vec::new();
    let imgs: Vec<Vec<Scalar>> = frs.iter().map(|u| u.mul_vec(&f, x)).collect();
    for i in 0..dn {
        rows.push(imgs.iter().map(|v| v[i].clone()).collect());
        rhs.push(x[i].clone());
    }
    for a in &ann {
        let prods: Vec<Vec<Scalar>> = frs.iter().map(|u| u.vec_mul(&f, a)).collect();
        for j in 0..dp {
            rows.push(prods.iter().map(|pr| pr[j].clone()).collect());
            rhs.push(f.zero());
        }
    }
    if k == 0 {
        return None;
    }
    let c = FMat::from_rows(k, rows).solve(&f, &rhs)?;
    Some(s.combination(&c))
}

/// For every D-line xD there is a rank-one idempotent in S with image xD.
pub fn has_full_rank1_idempotent_property(s: &OperatorSpace, budget: u64, samples: u64, seed: u64) -> Result<Verdict> {
    if !s.is_square() {
        return Err(Error::Shape("idempotent property needs a square space".into()));
    }
    let f = s.alg.field;
    if let Some(q) = f.cardinality() {
        let count = projective_count(q, s.d(), s.n)
            .filter(|&c| c <= budget)
            .ok_or_else(|| Error::BudgetExceeded("projective enumeration".into()))?;
        let pts = projective_points(&s.alg, s.n);
        let miss = pts.par_iter().position_first(|x| rank1_idempotent_at(s, x).is_none());
        return Ok(match miss {
            Some(i) => Verdict::Refuted { witness: json!({"direction": dvector_json(&s.alg, &pts[i])}) },
            None => Verdict::certified(format!("all {count} lines")),
        });
    }
    if let Some(how) = hermitian_certificate(s, budget) {
        return Ok(Verdict::certified(how));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x: Vec<Scalar> = (0..s.n).flat_map(|_| s.alg.random_nonzero(&mut rng)).collect();
        if rank1_idempotent_at(s, &x).is_none() {
            return Ok(Verdict::Refuted { witness: json!({"direction": dvector_json(&s.alg, &x)}) });
        }
    }
    Ok(Verdict::Sampled { samples })
}

/// S ⊇ ℋₙ(D) with x ↦ x^★x anisotropic: p = x(x^★x)⁻¹x^★ works for every x.
fn hermitian_certificate(s: &OperatorSpace, budget: u64) -> Option<String> {
    let profile = s.alg.standard_profile().ok()?;
    let h = hermitian_space(&s.alg, s.n, &profile).ok()?;
    if !s.contains_space(&h) {
        return None;
    }
    let id = DMatrix::identity(&s.alg, s.n);
    match is_e_nonisotropic(&id, &profile, budget) {
        Verdict::Certified { method } => Some(format!("contains the Hermitian space; x^★x anisotropic ({method})")),
        _ => None,
    }
}

/// F·Iₙ ⊕ t·ℋₙ(D) for D = F[t] with t² = −1.
pub fn diag_model_c(alg: &Arc<Algebra>, n: usize) -> Result<OperatorSpace> {
    let f = alg.field;
    let profile = alg.standard_profile()?;
    let t = alg.basis_elem(1.min(alg.d - 1));
    let minus_one = alg.scalar(&f.from_i64(-1));
    if alg.d != 2 || profile.tag != QuadTag::SeparableQuadratic || alg.mul(&t, &t) != minus_one {
        return Err(Error::WrongProfile("need a separable quadratic extension generated by t with t² = −1".into()));
    }
    let h = hermitian_space(alg, n, &profile)?;
    let mut tscal = DMatrix::zeros(alg, n, n);
    for i in 0..n {
        tscal.set(i, i, &t);
    }
    let mut mats: Vec<DMatrix> = h.basis_matrices().iter().map(|m| tscal.mul(m)).collect();
    mats.push(DMatrix::identity(alg, n));
    Ok(OperatorSpace::span(alg, n, n, &mats))
}

/// {u : (x, y) ↦ b(x, u(y)) symmetric} for d = 1, with b nonisotropic.
pub fn semisimple_space_sb(alg: &Arc<Algebra>, g: &FMat, budget: u64) -> Result<OperatorSpace> {
    if alg.d != 1 {
        return Err(Error::Unsupported("b-symmetric spaces are built for d = 1".into()));
    }
    let f = alg.field;
    let n = g.rows;
    if g.cols != n {
        return Err(Error::Shape("b must be square".into()));
    }
    if let Anisotropy::Isotropic(x) = is_nonisotropic_gram(&f, g, budget) {
        return Err(Error::Isotropic(format!("b(x, x) = 0 at x = {}", alg.format_elem(&x))));
    }
    let unknowns = n * n;
    let cols: Vec<Vec<Scalar>> = (0..unknowns)
        .map(|t| {
            let mut u = FMat::zeros(&f, n, n);
            u.data[t] = f.one();
            let gu = g.mul(&f, &u);
            gu.sub(&f, &gu.transpose()).data
        })
        .collect();
    let basis = FMat::from_cols(&f, unknowns, &cols).kernel(&f);
    Ok(OperatorSpace::from_flat(alg, n, n, &basis))
}

/// First element of S (in enumeration order) failing `pred`. Finite fields,
/// within budget.
pub fn first_element_failing<P>(s: &OperatorSpace, budget: u64, pred: P) -> Result<Option<DMatrix>>
where
    P: Fn(&DMatrix) -> Result<bool> + Sync,
{
    let q = s.alg.field.cardinality().ok_or_else(|| Error::Unsupported("element enumeration over an infinite field".into()))?;
    let count = fp::checked_pow(q, s.dim())
        .filter(|&c| c <= budget)
        .ok_or_else(|| Error::BudgetExceeded(format!("{q}^{} elements", s.dim())))?;
    let found = (0..count)
        .into_par_iter()
        .map(|i| {
            let m = s.combination(&fp::coeffs_of(q, i, s.dim()));
            pred(&m).map(|ok| (!ok).then_some(m))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        None => Ok(None),
        Some(r) => r,
    }
}

fn all_elements(s: &OperatorSpace, budget: u64, what: &str, pred: impl Fn(&DMatrix) -> Result<bool> + Sync) -> Result<Verdict> {
    Ok(match first_element_failing(s, budget, pred)? {
        Some(m) => Verdict::Refuted { witness: json!({"element": dmatrix_json(&m), "fails": what}) },
        None => Verdict::certified(format!("every element is {what}")),
    })
}

pub fn all_semisimple(s: &OperatorSpace, budget: u64) -> Result<Verdict> {
    all_elements(s, budget, "semisimple", |m| m.is_semisimple())
}

pub fn all_f_diagonalisable(s: &OperatorSpace, budget: u64) -> Result<Verdict> {
    all_elements(s, budget, "diagonalisable", |m| m.is_f_diagonalisable())
}

/// S contains no nonzero nilpotent element.
pub fn is_nilpotent_free(s: &OperatorSpace, budget: u64) -> Result<Verdict> {
    all_elements(s, budget, "non-nilpotent or zero", |m| Ok(m.is_zero() || !m.is_nilpotent()?))
}

/// Random elements all have squarefree minimal polynomials.
pub fn sample_semisimple(s: &OperatorSpace, samples: u64, seed: u64) -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let m = s.random_element(&mut rng);
        if !m.is_semisimple()? {
            return Ok(Verdict::Refuted { witness: json!({"element": dmatrix_json(&m)}) });
        }
    }
    Ok(Verdict::Sampled { samples })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotzkinTausskyReport {
    pub q: u64,
    pub n: usize,
    pub pairs: u64,
    /// Pairs whose whole pencil is diagonalisable.
    pub hypothesis_pairs: u64,
}

impl MotzkinTausskyReport {
    pub fn to_json(&self) -> Value {
        json!({"q": self.q, "n": self.n, "pairs": self.pairs, "hypothesis_pairs": self.hypothesis_pairs})
    }
}

/// Over F_q, M is diagonalisable iff M^q = M.
fn diagonalisable_raw(q: u64, m: &[u64], n: usize) -> bool {
    let mut pw = m.to_vec();
    for _ in 1..q {
        pw = fp::mat_mul(q, &pw, m, n, n, n);
    }
    pw == m
}

/// Exhaustive check over all pairs in Mat_n(F_q), q prime: if every F-linear
/// combination of u and v is diagonalisable then uv = vu.
pub fn motzkin_taussky_finite(q: u64, n: usize, budget: u64) -> Result<MotzkinTausskyReport> {
    if !crate::field::is_prime(q) {
        return Err(Error::Unsupported("prime fields only".into()));
    }
    let nn = n * n;
    let singles = fp::checked_pow(q, nn).ok_or_else(|| Error::BudgetExceeded("q^(n²) overflows".into()))?;
    let pairs = singles
        .checked_mul(singles)
        .filter(|&c| c <= budget)
        .ok_or_else(|| Error::BudgetExceeded(format!("{q}^{} pairs", 2 * nn)))?;
    let mats: Vec<Vec<u64>> = (0..singles)
        .map(|i| {
            let mut m = vec![0u64; nn];
            fp::digits_of(i, q, &mut m);
            m
        })
        .collect();
    let diag: Vec<bool> = mats.iter().map(|m| diagonalisable_raw(q, m, n)).collect();
    let index = |m: &[u64]| m.iter().fold(0u64, |acc, &x| acc * q + x) as usize;
    let results: Vec<std::result::Result<u64, (usize, usize)>> = (0..mats.len())
        .into_par_iter()
        .map(|ui| {
            let u = &mats[ui];
            if !diag[ui] {
                return Ok(0);
            }
            let mut hyp = 0;
            let mut comb = vec![0u64; nn];
            for (vi, v) in mats.iter().enumerate() {
                let pencil = (0..q).all(|l| {
                    fp::axpy_into(q, &mut comb, v, l, u);
                    diag[index(&comb)]
                });
                if !pencil {
                    continue;
                }
                hyp += 1;
                if fp::mat_mul(q, u, v, n, n, n) != fp::mat_mul(q, v, u, n, n, n) {
                    return Err((ui, vi));
                }
            }
            Ok(hyp)
        })
        .collect();
    let mut hypothesis_pairs = 0;
    for r in results {
        match r {
            Ok(h) => hypothesis_pairs += h,
            Err((u, v)) => {
                return Err(Error::CounterexampleFound(format!("u = {:?}, v = {:?}", mats[u], mats[v])));
            }
        }
    }
    Ok(MotzkinTausskyReport { q, n, pairs, hypothesis_pairs })
}
