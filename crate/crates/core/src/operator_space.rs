//! F-linear subspaces of Mat_{n,p}(D) and D-subspaces of D^n.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::dmat::{DMatrix, DVector};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::fmat::{FMat, FSubspace};
use crate::fp;
use crate::verdict::Confidence;

/// n(d−1) + d·n(n−1)/2.
pub fn alpha(n: u64, d: u64) -> u64 {
    n * (d - 1) + d * n * n.saturating_sub(1) / 2
}

/// An F-linear space of n×p matrices over D, stored as the canonical echelon
/// form of its flattened coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpace {
    pub alg: Arc<Algebra>,
    pub n: usize,
    pub p: usize,
    pub space: FSubspace,
}

/// Result of a transitive-rank computation.
#[derive(Clone, Debug, PartialEq)]
pub struct Trk {
    pub value: usize,
    pub confidence: Confidence,
}

/// A right D-subspace of D^n, stored through its F-points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSubspace {
    pub alg: Arc<Algebra>,
    pub n: usize,
    pub fspace: FSubspace,
}

#[derive(Clone, Debug)]
pub struct FlagDecomposition {
    /// 0 = V₀ ⊂ V₁ ⊂ … ⊂ V_p = D^n.
    pub flag: Vec<DSubspace>,
    pub sizes: Vec<usize>,
    /// Columns form a D-basis adapted to the flag.
    pub basis_change: DMatrix,
    /// Diagonal blocks of Q⁻¹·S·Q.
    pub blocks: Vec<OperatorSpace>,
    /// Q⁻¹·S·Q equals the joint of the blocks.
    pub is_joint: bool,
}

/// max over x ∈ D^p of the rank of [u_1 x | … | u_m x], where each u_j is an
/// F-matrix with `rows` rows and dp columns that is D-linear in x.
pub fn transitive_rank_of(alg: &Arc<Algebra>, p: usize, frs: &[FMat], rows: usize, budget: u64) -> Result<Trk> {
    let f = alg.field;
    let cap = rows.min(frs.len());
    if cap == 0 {
        return Ok(Trk { value: 0, confidence: Confidence::Exact });
    }
    let Some(q) = f.cardinality() else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0074_726b);
        let mut gm = crate::poly::PolyMatrix::zeros(rows, frs.len(), p * alg.d);
        for (j, u) in frs.iter().enumerate() {
            for i in 0..rows {
                gm.set(i, j, crate::poly::MPoly::linear(&f, u.row(i)));
            }
        }
        let r = crate::generic_matrix::poly_rank(&f, &gm, &mut rng);
        return Ok(Trk { value: r.rank, confidence: r.confidence });
    };
    projective_count(q, alg.d, p)
        .filter(|&c| c <= budget)
        .ok_or_else(|| Error::BudgetExceeded(format!("projective enumeration of D^{p} over F_{q}")))?;
    let raw: Vec<Vec<u64>> = frs.iter().map(fp::to_raw).collect();
    let dp = p * alg.d;
    let m = raw.len();
    let mut best = 0;
    let mut buf = vec![0u64; rows * m];
    for x in projective_points(alg, p) {
        let xr = fp::to_raw_vec(&x);
        for (j, u) in raw.iter().enumerate() {
            for i in 0..rows {
                let mut acc = 0u64;
                for k in 0..dp {
                    acc = (acc + u[i * dp + k] * xr[k] % q) % q;
                }
                buf[i * m + j] = acc;
            }
        }
        // rank of the rows×m matrix [u_1 x | … | u_m x]
        let r = fp::rank_in_place(q, &mut buf, rows, m);
        if r > best {
            best = r;
            if best == cap {
                break;
            }
        }
    }
    Ok(Trk { value: best, confidence: Confidence::Exact })
}

/// Right multiplication by a on every entry of D^n.
pub fn right_mult_vec(alg: &Algebra, v: &[Scalar], a: &[Scalar]) -> DVector {
    let d = alg.d;
    let mut out = Vec::with_capacity(v.len());
    for chunk in v.chunks(d) {
        out.extend(alg.mul(chunk, a));
    }
    out
}

fn right_mult_block(alg: &Algebra, n: usize, a: &[Scalar]) -> FMat {
    let f = &alg.field;
    let d = alg.d;
    let r = alg.right_mat(a);
    let mut m = FMat::zeros(f, n * d, n * d);
    for i in 0..n {
        for k in 0..d {
            for l in 0..d {
                m.set(i * d + k, i * d + l, r.get(k, l).clone());
            }
        }
    }
    m
}

impl DSubspace {
    pub fn zero(alg: &Arc<Algebra>, n: usize) -> DSubspace {
        DSubspace { alg: alg.clone(), n, fspace: FSubspace::zero(n * alg.d) }
    }

    pub fn full(alg: &Arc<Algebra>, n: usize) -> DSubspace {
        DSubspace { alg: alg.clone(), n, fspace: FSubspace::full(&alg.field, n * alg.d) }
    }

    /// Right D-span of the given vectors.
    pub fn span(alg: &Arc<Algebra>, n: usize, vecs: &[DVector]) -> DSubspace {
        let mut pts = Vec::new();
        for v in vecs {
            for k in 0..alg.d {
                pts.push(right_mult_vec(alg, v, &alg.basis_elem(k)));
            }
        }
        DSubspace { alg: alg.clone(), n, fspace: FSubspace::span(&alg.field, n * alg.d, &pts) }
    }

    pub fn dim_d(&self) -> usize {
        self.fspace.dim() / self.alg.d
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.fspace.contains(&self.alg.field, v)
    }

    pub fn contains_space(&self, o: &DSubspace) -> bool {
        self.fspace.contains_space(&self.alg.field, &o.fspace)
    }

    /// A D-basis extracted greedily from the echelon F-basis.
    pub fn d_basis(&self) -> Vec<DVector> {
        self.extend_basis(&[])
    }

    /// Extends a D-basis of a D-subspace contained in self to one of self.
    pub fn extend_basis(&self, start: &[DVector]) -> Vec<DVector> {
        let mut basis = start.to_vec();
        let mut cur = DSubspace::span(&self.alg, self.n, &basis);
        for v in &self.fspace.basis {
            if cur.dim_d() == self.dim_d() {
                break;
            }
            if !cur.contains(v) {
                basis.push(v.clone());
                cur = DSubspace::span(&self.alg, self.n, &basis);
            }
        }
        basis
    }

    pub fn is_invariant_under(&self, s: &OperatorSpace) -> bool {
        let basis = self.d_basis();
        s.basis_matrices().iter().all(|u| basis.iter().all(|w| self.contains(&u.apply(w))))
    }

    /// F-matrix of a projection D^n → D^n / self in quotient coordinates.
    pub fn quotient_map(&self) -> FMat {
        let f = &self.alg.field;
        let amb = self.fspace.ambient;
        let np = self.fspace.non_pivots();
        let mut m = FMat::zeros(f, np.len(), amb);
        for j in 0..amb {
            let mut e = vec![f.zero(); amb];
            e[j] = f.one();
            let r = self.fspace.reduce(f, &e);
            for (row, &c) in np.iter().enumerate() {
                m.set(row, j, r[c].clone());
            }
        }
        m
    }
}

impl OperatorSpace {
    pub fn zero(alg: &Arc<Algebra>, n: usize, p: usize) -> OperatorSpace {
        OperatorSpace { alg: alg.clone(), n, p, space: FSubspace::zero(alg.d * n * p) }
    }

    pub fn full(alg: &Arc<Algebra>, n: usize, p: usize) -> OperatorSpace {
        OperatorSpace { alg: alg.clone(), n, p, space: FSubspace::full(&alg.field, alg.d * n * p) }
    }

    pub fn span(alg: &Arc<Algebra>, n: usize, p: usize, mats: &[DMatrix]) -> OperatorSpace {
        let vecs: Vec<Vec<Scalar>> = mats.iter().map(|m| m.data.clone()).collect();
        OperatorSpace::from_flat(alg, n, p, &vecs)
    }

    pub fn from_flat(alg: &Arc<Algebra>, n: usize, p: usize, vecs: &[Vec<Scalar>]) -> OperatorSpace {
        OperatorSpace { alg: alg.clone(), n, p, space: FSubspace::span(&alg.field, alg.d * n * p, vecs) }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn d(&self) -> usize {
        self.alg.d
    }

    pub fn is_square(&self) -> bool {
        self.n == self.p
    }

    pub fn basis_matrices(&self) -> Vec<DMatrix> {
        self.space.basis.iter().map(|v| DMatrix::from_flat(&self.alg, self.n, self.p, v.clone())).collect()
    }

    pub fn contains(&self, m: &DMatrix) -> bool {
        self.space.contains(&self.alg.field, &m.data)
    }

    pub fn contains_space(&self, o: &OperatorSpace) -> bool {
        self.space.contains_space(&self.alg.field, &o.space)
    }

    /// Σ c_j u_j.
    pub fn combination(&self, coeffs: &[Scalar]) -> DMatrix {
        let f = &self.alg.field;
        let mut v = vec![f.zero(); self.space.ambient];
        for (c, b) in coeffs.iter().zip(&self.space.basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x = f.mul_add(x, c, y);
            }
        }
        DMatrix::from_flat(&self.alg, self.n, self.p, v)
    }

    pub fn frep_basis(&self) -> Vec<FMat> {
        self.basis_matrices().iter().map(|m| m.to_frep()).collect()
    }

    /// {P·u·Q : u ∈ S}.
    pub fn transform(&self, left: &DMatrix, right: &DMatrix) -> OperatorSpace {
        let mats: Vec<DMatrix> = self.basis_matrices().iter().map(|u| left.mul(u).mul(right)).collect();
        OperatorSpace::span(&self.alg, left.rows, right.cols, &mats)
    }

    /// {C·u·C⁻¹ : u ∈ S}.
    pub fn conjugate(&self, c: &DMatrix) -> Result<OperatorSpace> {
        let ci = c.inverse()?;
        Ok(self.transform(c, &ci))
    }

    pub fn sum(&self, o: &OperatorSpace) -> OperatorSpace {
        OperatorSpace { space: self.space.sum(&self.alg.field, &o.space), ..self.clone() }
    }

    /// F-span of {u·x : u ∈ S}.
    pub fn evaluate(&self, x: &[Scalar]) -> FSubspace {
        let imgs: Vec<DVector> = self.basis_matrices().iter().map(|u| u.apply(x)).collect();
        FSubspace::span(&self.alg.field, self.n * self.d(), &imgs)
    }

    /// ∩ Ker u = 0.
    pub fn is_source_reduced(&self) -> bool {
        let f = &self.alg.field;
        let dp = self.p * self.d();
        let mut rows = Vec::new();
        for m in self.frep_basis() {
            rows.extend(m.row_vecs());
        }
        if rows.is_empty() {
            return dp == 0;
        }
        FMat::from_rows(dp, rows).rank(f) == dp
    }

    /// Σ im u = D^n.
    pub fn is_target_reduced(&self) -> bool {
        let f = &self.alg.field;
        let dn = self.n * self.d();
        let mut cols = Vec::new();
        for m in self.frep_basis() {
            for j in 0..m.cols {
                cols.push(m.col(j));
            }
        }
        FSubspace::span(f, dn, &cols).dim() == dn
    }

    /// {a ∈ D : x·a ∈ span_F(Sx)}.
    pub fn ev_d(&self, x: &[Scalar]) -> Result<FSubspace> {
        let alg = &self.alg;
        let f = &alg.field;
        if x.iter().all(|c| f.is_zero(c)) {
            return Err(Error::ZeroVector);
        }
        let sx = self.evaluate(x);
        let ann = sx.annihilator(f);
        let d = alg.d;
        if ann.is_empty() {
            return Ok(FSubspace::full(f, d));
        }
        let cols: Vec<DVector> = (0..d).map(|k| right_mult_vec(alg, x, &alg.basis_elem(k))).collect();
        let xr = FMat::from_cols(f, self.n * d, &cols);
        let sys = FMat::from_rows(self.n * d, ann).mul(f, &xr);
        Ok(FSubspace::span(f, d, &sys.kernel(f)))
    }

    /// max_x dim_F(Sx). Exact by projective enumeration over finite fields;
    /// generic-matrix rank otherwise.
    pub fn transitive_rank(&self, budget: u64) -> Result<Trk> {
        transitive_rank_of(&self.alg, self.p, &self.frep_basis(), self.n * self.d(), budget)
    }

    /// Invariant D-subspaces (including 0 and D^n) by exhaustive enumeration.
    pub fn invariant_subspaces(&self, budget: u64) -> Result<Vec<DSubspace>> {
        if !self.is_square() {
            return Err(Error::Shape("invariant subspaces need a square ambient".into()));
        }
        if !self.alg.field.is_finite() {
            return Err(Error::Unsupported(
                "invariant subspaces over an infinite field need candidate subspaces".into(),
            ));
        }
        let mut out = vec![DSubspace::zero(&self.alg, self.n)];
        for v in all_d_subspaces(&self.alg, self.n, budget)? {
            if v.is_invariant_under(self) {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// The candidates (plus 0 and D^n) that are invariant.
    pub fn invariant_among(&self, candidates: &[DSubspace]) -> Vec<DSubspace> {
        let mut out = vec![DSubspace::zero(&self.alg, self.n)];
        for c in candidates {
            if c.dim_d() > 0 && c.dim_d() < self.n && c.is_invariant_under(self) && !out.contains(c) {
                out.push(c.clone());
            }
        }
        out.push(DSubspace::full(&self.alg, self.n));
        out
    }

    pub fn flag_decomposition(&self, budget: u64) -> Result<FlagDecomposition> {
        let inv = self.invariant_subspaces(budget)?;
        self.flag_from_invariants(inv)
    }

    /// Builds the flag from a list of invariant subspaces, checking that
    /// they form a chain.
    pub fn flag_from_invariants(&self, mut inv: Vec<DSubspace>) -> Result<FlagDecomposition> {
        inv.sort_by_key(|v| v.dim_d());
        for i in 0..inv.len() {
            for j in i + 1..inv.len() {
                if !inv[j].contains_space(&inv[i]) {
                    let render = |v: &DSubspace| crate::json::dsubspace_json(v).to_string();
                    return Err(Error::NotTotallyOrdered(format!(
                        "{} and {}",
                        render(&inv[i]),
                        render(&inv[j])
                    )));
                }
            }
        }
        inv.dedup_by(|a, b| a.fspace == b.fspace);
        let alg = &self.alg;
        let mut basis: Vec<DVector> = Vec::new();
        let mut sizes = Vec::new();
        for v in inv.iter().skip(1) {
            let before = basis.len();
            basis = v.extend_basis(&basis);
            sizes.push(basis.len() - before);
        }
        let n = self.n;
        let d = alg.d;
        let mut q = DMatrix::zeros(alg, n, n);
        for (j, b) in basis.iter().enumerate() {
            for i in 0..n {
                q.set(i, j, &b[i * d..(i + 1) * d]);
            }
        }
        let conj = self.transform(&q.inverse()?, &q);
        let mut blocks = Vec::new();
        let mut start = 0;
        for &sz in &sizes {
            let mats: Vec<DMatrix> = conj
                .basis_matrices()
                .iter()
                .map(|u| {
                    let mut b = DMatrix::zeros(alg, sz, sz);
                    for i in 0..sz {
                        for j in 0..sz {
                            b.set(i, j, u.entry(start + i, start + j));
                        }
                    }
                    b
                })
                .collect();
            blocks.push(OperatorSpace::span(alg, sz, sz, &mats));
            start += sz;
        }
        let joint_dim = joint_dimension(&blocks);
        Ok(FlagDecomposition {
            flag: inv,
            sizes,
            basis_change: q,
            is_joint: joint_dim == self.dim(),
            blocks,
        })
    }

    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> DMatrix {
        let f = &self.alg.field;
        let c: Vec<Scalar> = (0..self.dim()).map(|_| f.random(rng)).collect();
        self.combination(&c)
    }
}

fn joint_dimension(blocks: &[OperatorSpace]) -> usize {
    let mut total: usize = blocks.iter().map(|b| b.dim()).sum();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            total += blocks[0].d() * blocks[i].n * blocks[j].n;
        }
    }
    total
}

/// Block upper-triangular assembly: diagonal blocks from `spaces`, all
/// strictly-upper blocks free.
pub fn joint(spaces: &[OperatorSpace]) -> Result<OperatorSpace> {
    let Some(first) = spaces.first() else {
        return Err(Error::Shape("joint of an empty list".into()));
    };
    let alg = first.alg.clone();
    for s in spaces {
        if s.alg != alg {
            return Err(Error::DescriptorMismatch("joint of spaces over different algebras".into()));
        }
        if !s.is_square() {
            return Err(Error::Shape("joint needs square blocks".into()));
        }
    }
    let n: usize = spaces.iter().map(|s| s.n).sum();
    let d = alg.d;
    let offsets: Vec<usize> = spaces.iter().scan(0, |acc, s| {
        let o = *acc;
        *acc += s.n;
        Some(o)
    }).collect();
    let mut mats = Vec::new();
    for (s, &o) in spaces.iter().zip(&offsets) {
        for b in s.basis_matrices() {
            let mut m = DMatrix::zeros(&alg, n, n);
            for i in 0..s.n {
                for j in 0..s.n {
                    m.set(o + i, o + j, b.entry(i, j));
                }
            }
            mats.push(m);
        }
    }
    for (a, (sa, &oa)) in spaces.iter().zip(&offsets).enumerate() {
        for (sb, &ob) in spaces.iter().zip(&offsets).skip(a + 1) {
            for i in 0..sa.n {
                for j in 0..sb.n {
                    for k in 0..d {
                        let mut m = DMatrix::zeros(&alg, n, n);
                        m.set(oa + i, ob + j, &alg.basis_elem(k));
                        mats.push(m);
                    }
                }
            }
        }
    }
    Ok(OperatorSpace::span(&alg, n, n, &mats))
}

/// The largest D-subspace of D^n whose F-points lie in `u0`.
pub fn socle(alg: &Arc<Algebra>, n: usize, u0: &FSubspace) -> DSubspace {
    let f = &alg.field;
    let ann = u0.annihilator(f);
    if ann.is_empty() {
        return DSubspace::full(alg, n);
    }
    let annm = FMat::from_rows(n * alg.d, ann);
    let mut rows = Vec::new();
    for k in 0..alg.d {
        let r = right_mult_block(alg, n, &alg.basis_elem(k));
        rows.extend(annm.mul(f, &r).row_vecs());
    }
    let sys = FMat::from_rows(n * alg.d, rows);
    DSubspace { alg: alg.clone(), n, fspace: FSubspace::span(f, n * alg.d, &sys.kernel(f)) }
}

/// (|D|^m − 1)/(|D| − 1), or None on overflow.
pub fn projective_count(q: u64, d: usize, m: usize) -> Option<u64> {
    let qd = fp::checked_pow(q, d)?;
    let mut total: u64 = 0;
    let mut pw: u64 = 1;
    for _ in 0..m {
        total = total.checked_add(pw)?;
        pw = pw.checked_mul(qd)?;
    }
    Some(total)
}

/// One representative per right D-line of D^m: last nonzero coordinate 1.
/// Sorted lexicographically by coordinates, first coordinate most significant.
pub fn projective_points(alg: &Arc<Algebra>, m: usize) -> Vec<DVector> {
    let card = alg.cardinality().expect("finite algebra");
    let d = alg.d;
    let mut out = Vec::new();
    for last in 0..m {
        let free = fp::checked_pow(card, last).expect("enumeration size");
        for idx in 0..free {
            let mut v = vec![alg.field.zero(); m * d];
            let mut rest = idx;
            for pos in (0..last).rev() {
                let e = alg.element(rest % card);
                rest /= card;
                v[pos * d..(pos + 1) * d].clone_from_slice(&e);
            }
            v[last * d..(last + 1) * d].clone_from_slice(&alg.unit);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// Every nonzero D-subspace of D^n (including D^n), enumerated through
/// column-echelon forms whose pivots are the last nonzero entries.
pub fn all_d_subspaces(alg: &Arc<Algebra>, n: usize, budget: u64) -> Result<Vec<DSubspace>> {
    let card = alg.cardinality().ok_or_else(|| Error::Unsupported("subspace enumeration over an infinite field".into()))?;
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(d_subspaces_of_dim(alg, n, k, card, budget.saturating_sub(out.len() as u64))?);
    }
    Ok(out)
}

pub fn d_subspaces_of_dim(alg: &Arc<Algebra>, n: usize, k: usize, card: u64, budget: u64) -> Result<Vec<DSubspace>> {
    let d = alg.d;
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // free slots: (column j, row r) with r < pivots[j], r not a pivot row
        let mut slots = Vec::new();
        for (j, &pr) in pivots.iter().enumerate() {
            for r in 0..pr {
                if !pivots.contains(&r) {
                    slots.push((j, r));
                }
            }
        }
        let count = fp::checked_pow(card, slots.len())
            .filter(|&c| (out.len() as u64).saturating_add(c) <= budget)
            .ok_or_else(|| Error::BudgetExceeded(format!("enumerating {k}-dimensional subspaces of D^{n}")))?;
        for idx in 0..count {
            let mut cols = vec![vec![alg.field.zero(); n * d]; k];
            for (j, &pr) in pivots.iter().enumerate() {
                cols[j][pr * d..(pr + 1) * d].clone_from_slice(&alg.unit);
            }
            let mut rest = idx;
            for &(j, r) in slots.iter().rev() {
                let e = alg.element(rest % card);
                rest /= card;
                cols[j][r * d..(r + 1) * d].clone_from_slice(&e);
            }
            out.push(DSubspace::span(alg, n, &cols));
        }
    }
    Ok(out)
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(2, 1), 1);
        assert_eq!(alpha(2, 2), 4);
        assert_eq!(alpha(2, 4), 10);
        assert_eq!(alpha(0, 3), 0);
    }

    #[test]
    fn projective_point_counts() {
        let f25 = Arc::new(Algebra::finite_field(5, 2).unwrap());
        assert_eq!(projective_points(&f25, 2).len(), 26);
        assert_eq!(projective_count(25, 1, 2), Some(26));
        let f5 = Arc::new(Algebra::base(Field::Prime(5)));
        assert_eq!(d_subspaces_of_dim(&f5, 4, 2, 5, u64::MAX).unwrap().len(), 806);
        let all: Vec<_> = all_d_subspaces(&f25, 2, 1000).unwrap();
        assert_eq!(all.len(), 27);
    }

    #[test]
    fn strictly_upper_flag() {
        let a = Arc::new(Algebra::base(Field::Prime(3)));
        let mut e12 = DMatrix::zeros(&a, 2, 2);
        e12.set(0, 1, &a.unit);
        let s = OperatorSpace::span(&a, 2, 2, &[e12]);
        let fd = s.flag_decomposition(1000).unwrap();
        assert_eq!(fd.sizes, vec![1, 1]);
        assert!(fd.is_joint);
        assert!(fd.flag[1].contains(&[Scalar::Fp(1), Scalar::Fp(0)]));
    }

    #[test]
    fn diagonal_space_is_not_a_chain() {
        let a = Arc::new(Algebra::base(Field::Prime(3)));
        let mut e11 = DMatrix::zeros(&a, 2, 2);
        e11.set(0, 0, &a.unit);
        let mut e22 = DMatrix::zeros(&a, 2, 2);
        e22.set(1, 1, &a.unit);
        let s = OperatorSpace::span(&a, 2, 2, &[e11, e22]);
        assert!(matches!(s.flag_decomposition(1000), Err(Error::NotTotallyOrdered(_))));
        // The full space has no proper invariant subspace.
        let full = OperatorSpace::full(&a, 2, 2);
        assert_eq!(full.flag_decomposition(1000).unwrap().sizes, vec![2]);
    }
}
