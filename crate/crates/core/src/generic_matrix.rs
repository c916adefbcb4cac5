//! Generic matrices of operator spaces, their rank over the fraction field,
//! catchers, and the bounded-rank block identities.

use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use crate::algebra::{Algebra, Elem};
use crate::dmat::DMatrix;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::fmat::{FMat, FSubspace};
use crate::operator_space::OperatorSpace;
use crate::poly::{MPoly, Mono, PolyMatrix};
use crate::verdict::Confidence;

/// A 1-homogeneous polynomial.
pub type LinForm = MPoly;

/// Rank of a polynomial matrix over the fraction field of its entries.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRank {
    pub rank: usize,
    pub confidence: Confidence,
    /// The base field has at most `rank` elements, so the value need not be
    /// attained by any specialization over F.
    pub fraction_field_only: bool,
}

impl PolyRank {
    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "confidence": self.confidence.to_json(),
            "rank_over_fraction_field_only": self.fraction_field_only,
        })
    }
}

/// The (dn)×(dim S) matrix whose specialization at z ∈ D^p has columns u_j·z.
pub fn generic_of(s: &OperatorSpace) -> PolyMatrix {
    let f = s.alg.field;
    let frs = s.frep_basis();
    let rows = s.n * s.d();
    let nvars = s.p * s.d();
    let mut m = PolyMatrix::zeros(rows, frs.len(), nvars);
    for (j, u) in frs.iter().enumerate() {
        for i in 0..rows {
            m.set(i, j, MPoly::linear(&f, u.row(i)));
        }
    }
    m
}

/// Σ z_k M_k for F-matrices of a common shape.
pub fn generic_of_mats(f: &Field, mats: &[FMat]) -> Result<PolyMatrix> {
    let Some(first) = mats.first() else {
        return Err(Error::Shape("generic matrix of an empty family".into()));
    };
    let (rows, cols) = (first.rows, first.cols);
    let k = mats.len();
    let mut m = PolyMatrix::zeros(rows, cols, k);
    for i in 0..rows {
        for j in 0..cols {
            let mut coeffs = Vec::with_capacity(k);
            for mk in mats {
                if mk.rows != rows || mk.cols != cols {
                    return Err(Error::Shape("matrices of different shapes".into()));
                }
                coeffs.push(mk.get(i, j).clone());
            }
            m.set(i, j, MPoly::linear(f, &coeffs));
        }
    }
    Ok(m)
}

fn max_degree(m: &PolyMatrix) -> u32 {
    m.entries.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0)
}

/// Rank by fraction-free elimination over F[z]. Exact; used for small shapes.
pub fn exact_rank(f: &Field, m: &PolyMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.entries.clone();
    let mut prev = MPoly::constant(f, m.nvars, f.one());
    let mut r = 0;
    while r < rows.min(cols) {
        let Some((pi, pj)) = (r..rows)
            .flat_map(|i| (r..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i * cols + j].is_zero())
        else {
            break;
        };
        for j in 0..cols {
            a.swap(r * cols + j, pi * cols + j);
        }
        for i in 0..rows {
            a.swap(i * cols + r, i * cols + pj);
        }
        let piv = a[r * cols + r].clone();
        for i in r + 1..rows {
            let air = a[i * cols + r].clone();
            for j in r + 1..cols {
                let num = piv.mul(f, &a[i * cols + j]).sub(f, &air.mul(f, &a[r * cols + j]));
                a[i * cols + j] = num.div_exact(f, &prev).expect("fraction-free step divides exactly");
            }
            a[i * cols + r] = MPoly::zero(m.nvars);
        }
        prev = piv;
        r += 1;
    }
    r
}

fn eval_over_extension(ext: &Algebra, p: &MPoly, z: &[Elem]) -> Elem {
    let mut acc = ext.zero();
    for (mono, c) in &p.terms {
        let mut t = ext.scalar(c);
        for (zi, &e) in z.iter().zip(&mono.0) {
            for _ in 0..e {
                t = ext.mul(&t, zi);
            }
        }
        acc = ext.add(&acc, &t);
    }
    acc
}

const EXACT_CELLS: usize = 36;
const EXACT_VARS: usize = 8;

/// Rank over the fraction field F(z). Exact elimination for shapes with at
/// most 36 cells and 8 variables; otherwise the maximum rank over random
/// specializations, with a Schwartz–Zippel failure bound below 2⁻³⁰.
pub fn poly_rank<R: Rng + ?Sized>(f: &Field, m: &PolyMatrix, rng: &mut R) -> PolyRank {
    let tag = |rank: usize, confidence: Confidence| PolyRank {
        rank,
        confidence,
        fraction_field_only: f.cardinality().is_some_and(|q| q <= rank as u64),
    };
    if m.rows == 0 || m.cols == 0 || m.is_zero() {
        return tag(0, Confidence::Exact);
    }
    if m.rows * m.cols <= EXACT_CELLS && m.nvars <= EXACT_VARS {
        return tag(exact_rank(f, m), Confidence::Exact);
    }
    let full = m.rows.min(m.cols);
    // degree of a nonvanishing minor
    let deg = (full as u64) * max_degree(m) as u64;
    let (rank, bound) = match *f {
        Field::Prime(p) if p < 4 * deg.max(1) * 1024 => {
            // sample from an extension large enough for a useful bound
            let mut e = 2;
            while p.checked_pow(e as u32).map_or(false, |s| s < 4096 * deg.max(1)) {
                e += 1;
            }
            let ext = Arc::new(Algebra::finite_field(p, e).expect("extension field"));
            let size = ext.cardinality().unwrap_or(u64::MAX) as f64;
            let trials = trials_for(deg as f64 / size);
            let mut best = 0;
            for _ in 0..trials {
                let z: Vec<Elem> = (0..m.nvars).map(|_| ext.random_elem(rng)).collect();
                let entries: Vec<Elem> = m.entries.iter().map(|p| eval_over_extension(&ext, p, &z)).collect();
                let dm = DMatrix::from_entries(&ext, m.rows, m.cols, entries);
                best = best.max(dm.rank_d().expect("extension is a field"));
                if best == full {
                    break;
                }
            }
            (best, (deg as f64 / size).powi(trials as i32))
        }
        _ => {
            let size = f.sample_set_size(1 << 20);
            let trials = trials_for(deg as f64 / size as f64);
            let mut best = 0;
            for _ in 0..trials {
                let z: Vec<Scalar> = (0..m.nvars).map(|_| f.random_in_box(rng, size)).collect();
                best = best.max(m.eval(f, &z).rank(f));
                if best == full {
                    break;
                }
            }
            (best, (deg as f64 / size as f64).powi(trials as i32))
        }
    };
    if rank == full {
        return tag(rank, Confidence::Exact);
    }
    tag(rank, Confidence::Probabilistic { failure_bound: bound })
}

fn trials_for(ratio: f64) -> usize {
    if ratio <= 0.0 {
        return 1;
    }
    let per = -ratio.log2();
    ((30.0 / per).floor() as usize + 1).max(1)
}

/// Dimension of the F-span of all specializations of a row of linear forms.
pub fn spanning_rank(f: &Field, row: &[LinForm]) -> Result<usize> {
    let Some(first) = row.first() else { return Ok(0) };
    let nvars = first.nvars;
    let mut coeff_rows = Vec::with_capacity(nvars);
    let cols: Vec<Vec<Scalar>> = row
        .iter()
        .map(|l| l.linear_coeffs(f).ok_or_else(|| Error::Shape("entry is not 1-homogeneous".into())))
        .collect::<Result<_>>()?;
    for a in 0..nvars {
        coeff_rows.push(cols.iter().map(|c| c[a].clone()).collect());
    }
    Ok(FMat::from_rows(row.len(), coeff_rows).rank(f))
}

/// F-basis of the rows L of linear forms with L·M ≡ 0. Each catcher is
/// returned as its coefficient matrix l[i][a] (row index i, variable a).
pub fn catchers(f: &Field, m: &PolyMatrix) -> Result<Vec<FMat>> {
    if !m.is_homogeneous(1) {
        return Err(Error::Shape("catchers need 1-homogeneous entries".into()));
    }
    let (rows, cols, nv) = (m.rows, m.cols, m.nvars);
    let coeffs: Vec<Vec<Scalar>> = m.entries.iter().map(|p| p.linear_coeffs(f).unwrap()).collect();
    let unknowns = rows * nv;
    let mut eqs = Vec::new();
    for c in 0..cols {
        for a in 0..nv {
            for b in a..nv {
                // coefficient of z_a z_b in Σ_i L_i M_ic
                let mut eq = vec![f.zero(); unknowns];
                for i in 0..rows {
                    let mc = &coeffs[i * cols + c];
                    eq[i * nv + a] = f.add(&eq[i * nv + a], &mc[b]);
                    if a != b {
                        eq[i * nv + b] = f.add(&eq[i * nv + b], &mc[a]);
                    }
                }
                eqs.push(eq);
            }
        }
    }
    let basis = if eqs.is_empty() {
        FSubspace::full(f, unknowns).basis
    } else {
        FSubspace::span(f, unknowns, &FMat::from_rows(unknowns, eqs).kernel(f)).basis
    };
    Ok(basis.into_iter().map(|v| FMat { rows, cols: nv, data: v }).collect())
}

/// The row of linear forms described by a catcher coefficient matrix.
pub fn catcher_row(f: &Field, l: &FMat) -> Vec<LinForm> {
    (0..l.rows).map(|i| MPoly::linear(f, l.row(i))).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatcherReport {
    pub alt_dim: usize,
    pub catch_dim: usize,
    pub round_trip: bool,
}

impl CatcherReport {
    pub fn to_json(&self) -> Value {
        json!({"alt_dim": self.alt_dim, "catch_dim": self.catch_dim, "round_trip": self.round_trip})
    }
}

/// Compares Alt(S) with catch(generic_of(S)) through b ↦ (z ↦ zᵀG).
pub fn alternator_catcher_check(s: &OperatorSpace) -> Result<CatcherReport> {
    if !s.is_target_reduced() {
        return Err(Error::NotTargetReduced);
    }
    let f = s.alg.field;
    let alt = crate::alternator::alternator_space(s);
    let gm = generic_of(s);
    let catch = catchers(&f, &gm)?;
    // Λ(b) has coefficient l[i][a] = G[a][i]
    let images: Vec<FMat> = alt.iter().map(|g| g.transpose()).collect();
    let catch_space = FSubspace::span(&f, gm.rows * gm.nvars, &catch.iter().map(|c| c.data.clone()).collect::<Vec<_>>());
    let forward = images.iter().all(|l| catch_space.contains(&f, &l.data))
        && FSubspace::span(&f, gm.rows * gm.nvars, &images.iter().map(|l| l.data.clone()).collect::<Vec<_>>()).dim()
            == alt.len();
    let backward = catch.iter().all(|l| crate::alternator::is_alternator(s, &l.transpose()));
    Ok(CatcherReport { alt_dim: alt.len(), catch_dim: catch.len(), round_trip: forward && backward })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FaReport {
    pub r: usize,
    /// Identities B·A^k·C ≡ 0 were checked for k = 0..=k_max.
    pub k_max: usize,
    pub rank: PolyRank,
}

impl FaReport {
    pub fn to_json(&self) -> Value {
        json!({"r": self.r, "k_max": self.k_max, "D_zero": true, "BAkC_zero": true, "rank": self.rank.to_json()})
    }
}

/// For a matrix space containing J_r with maximal rank r, checks D ≡ 0 and
/// B·A^k·C ≡ 0 on the generic matrix split at size r. Powers of A obey a
/// linear recurrence of length r, so k ≤ r suffices.
pub fn flanders_atkinson_check<R: Rng + ?Sized>(f: &Field, mats: &[FMat], r: usize, rng: &mut R) -> Result<FaReport> {
    let m = generic_of_mats(f, mats)?;
    let (n, p) = (m.rows, m.cols);
    if r > n.min(p) {
        return Err(Error::Shape(format!("r = {r} exceeds the matrix shape")));
    }
    if let Some(q) = f.cardinality() {
        if q <= r as u64 {
            return Err(Error::HypothesisViolated(format!("|F| = {q} is not larger than r = {r}")));
        }
    }
    let mut jr = FMat::zeros(f, n, p);
    for i in 0..r {
        jr.set(i, i, f.one());
    }
    let span = FSubspace::span(f, n * p, &mats.iter().map(|m| m.data.clone()).collect::<Vec<_>>());
    if !span.contains(f, &jr.data) {
        return Err(Error::HypothesisViolated(format!("J_{r} is not in the space")));
    }
    let rank = poly_rank(f, &m, rng);
    if rank.rank > r {
        // find an explicit point of rank > r
        let witness = (0..1000).find_map(|_| {
            let z: Vec<Scalar> = (0..m.nvars).map(|_| f.random(rng)).collect();
            let rk = m.eval(f, &z).rank(f);
            (rk > r).then(|| format!("rank {rk} at z = [{}]", z.iter().map(|s| f.format(s)).collect::<Vec<_>>().join(", ")))
        });
        return Err(Error::HypothesisViolated(
            witness.unwrap_or_else(|| format!("generic rank {} exceeds {r}", rank.rank)),
        ));
    }
    let a = m.block(0, r, 0, r);
    let c = m.block(0, r, r, p);
    let b = m.block(r, n, 0, r);
    let dd = m.block(r, n, r, p);
    if let Some(pos) = dd.entries.iter().position(|e| !e.is_zero()) {
        return Err(Error::IdentityViolated(format!("D-block entry {} is nonzero", pos)));
    }
    let mut ak_c = c;
    for k in 0..=r {
        let prod = b.mul(f, &ak_c);
        if let Some(pos) = prod.entries.iter().position(|e| !e.is_zero()) {
            return Err(Error::IdentityViolated(format!(
                "B·A^{k}·C entry ({}, {}) is nonzero",
                pos / prod.cols,
                pos % prod.cols
            )));
        }
        ak_c = a.mul(f, &ak_c);
    }
    Ok(FaReport { r, k_max: r, rank })
}

/// Y = p·X for a row X of spanning rank ≥ 2 and a row Y collinear with it.
pub fn factor_collinear(f: &Field, x: &[LinForm], y: &[MPoly]) -> Result<MPoly> {
    if x.len() != y.len() {
        return Err(Error::Shape("rows of different lengths".into()));
    }
    let sr = spanning_rank(f, x)?;
    if sr < 2 {
        return Err(Error::SpanningRankTooLow(format!("spanning rank {sr}")));
    }
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if !x[i].mul(f, &y[j]).sub(f, &x[j].mul(f, &y[i])).is_zero() {
                return Err(Error::NotCollinear(format!("2×2 minor ({i}, {j}) is nonzero")));
            }
        }
    }
    let i = x.iter().position(|e| !e.is_zero()).expect("spanning rank ≥ 2");
    let p = y[i].div_exact(f, &x[i])?;
    for (xi, yi) in x.iter().zip(y) {
        if p.mul(f, xi) != *yi {
            return Err(Error::NotCollinear("quotient does not reproduce Y".into()));
        }
    }
    Ok(p)
}

/// A random compression space of maximal rank r containing J_r: after a
/// random change of bases, the matrices supported on the first t rows and
/// the first s columns (s + t = r), cut down to a random subspace.
pub fn random_compression_space<R: Rng + ?Sized>(
    f: &Field,
    n: usize,
    p: usize,
    r: usize,
    extra: usize,
    rng: &mut R,
) -> Vec<FMat> {
    let t = rng.gen_range(0..=r.min(n));
    let s = r - t;
    let s = s.min(p);
    let support: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..p).map(move |j| (i, j))).filter(|&(i, j)| i < t || j < s).collect();
    let random_in_region = |rng: &mut R| {
        let mut m = FMat::zeros(f, n, p);
        for &(i, j) in &support {
            m.set(i, j, f.random(rng));
        }
        m
    };
    let m0 = loop {
        let m = random_in_region(rng);
        if m.rank(f) == r {
            break m;
        }
    };
    let mut mats = vec![m0.clone()];
    for _ in 0..extra {
        mats.push(random_in_region(rng));
    }
    let (pm, qm, _) = m0.rank_normal_form(f);
    mats.iter().map(|m| pm.mul(f, m).mul(f, &qm)).collect()
}

/// PolyMatrix as JSON.
pub fn poly_matrix_json(f: &Field, m: &PolyMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows)
        .map(|i| {
            Value::Array(
                (0..m.cols)
                    .map(|j| {
                        Value::Array(
                            m.get(i, j)
                                .terms
                                .iter()
                                .map(|(mono, c)| json!({"monomial": mono.0, "coeff": f.format(c)}))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    json!({"rows": m.rows, "cols": m.cols, "nvars": m.nvars, "entries": rows})
}

pub fn mono_of(nvars: usize, exps: &[(usize, u16)]) -> Mono {
    let mut e = vec![0; nvars];
    for &(i, k) in exps {
        e[i] = k;
    }
    Mono(e)
}
