//! Brute-force oracles: maximum dimension of subspaces of Mat_n(D) whose
//! elements all satisfy a predicate, and a seeded random-space fuzzer.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::dmat::DMatrix;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::fp;
use crate::json::space_json;
use crate::operator_space::{combinations, OperatorSpace};

/// Element predicates the oracles search for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// No nonzero fixed vector.
    TrivialSpectrum,
    /// Diagonalisable over F.
    Diagonalisable,
    /// Squarefree minimal polynomial.
    Semisimple,
}

impl Property {
    pub fn as_str(&self) -> &'static str {
        match self {
            Property::TrivialSpectrum => "trivial-spectrum",
            Property::Diagonalisable => "diagonalisable",
            Property::Semisimple => "semisimple",
        }
    }
}

/// Outcome of an exhaustive maximum-dimension search.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub property: Property,
    pub max: usize,
    /// Lexicographically least echelon basis among the spaces of maximal dimension.
    pub witness: OperatorSpace,
    /// Element checks performed.
    pub checks: u64,
}

impl SearchResult {
    pub fn to_json(&self) -> Value {
        json!({
            "property": self.property.as_str(),
            "max": self.max,
            "witness": space_json(&self.witness),
            "element_checks": self.checks,
        })
    }
}

/// Raw F-representations of an n×n D-matrix space, all arithmetic mod q.
struct Ctx {
    q: u64,
    /// F-size of the represented matrices (dn).
    m: usize,
    /// Ambient F-dimension of Mat_n(D) (dn²).
    len: usize,
    /// F-rep of each flattened coordinate unit vector.
    unit_reps: Vec<Vec<u64>>,
    prop: Property,
    /// Number of Frobenius steps for the semisimplicity test.
    frob: usize,
}

impl Ctx {
    fn new(alg: &Arc<Algebra>, n: usize, prop: Property) -> Result<Ctx> {
        let q = alg.field.cardinality().ok_or_else(|| Error::Unsupported("oracles need a finite field".into()))?;
        let d = alg.d;
        let len = d * n * n;
        let f = alg.field;
        let unit_reps = (0..len)
            .map(|t| {
                let mut v = vec![f.zero(); len];
                v[t] = f.one();
                fp::to_raw(&DMatrix::from_flat(alg, n, n, v).to_frep())
            })
            .collect();
        let m = d * n;
        // every eigenvalue lies in F_{q^j} with j ≤ m, so x ↦ x^{q^L} with
        // L = lcm(1..m) fixes exactly the semisimple matrices
        let frob = (1..=m).fold(1usize, |l, j| l / gcd(l, j) * j);
        Ok(Ctx { q, m, len, unit_reps, prop, frob })
    }

    fn rep(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.m * self.m];
        fp::combine(self.q, &mut out, v, &self.unit_reps);
        out
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let m = self.m;
        let mut acc = vec![0u64; m * m];
        for i in 0..m {
            acc[i * m + i] = 1;
        }
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = fp::mat_mul(self.q, &acc, &b, m, m, m);
            }
            b = fp::mat_mul(self.q, &b, &b, m, m, m);
            e >>= 1;
        }
        acc
    }

    fn holds(&self, rep: &[u64], scratch: &mut Vec<u64>) -> bool {
        match self.prop {
            Property::TrivialSpectrum => !fp::has_fixed_vector(self.q, rep, self.m, scratch),
            Property::Diagonalisable => self.pow(rep, self.q) == rep,
            Property::Semisimple => {
                let mut x = rep.to_vec();
                for _ in 0..self.frob {
                    x = self.pow(&x, self.q);
                }
                x == rep
            }
        }
    }

    /// Every element λ·v + w (λ ≠ 0, w in the span of `basis`) satisfies the property.
    fn layer_ok(&self, v: &[u64], basis: &[Vec<u64>], counter: &AtomicU64, budget: u64) -> Result<bool> {
        let q = self.q;
        let k = basis.len();
        let layer = fp::checked_pow(q, k).ok_or_else(|| Error::BudgetExceeded("layer size overflows".into()))? * (q - 1);
        let before = counter.fetch_add(layer, Ordering::Relaxed);
        if before + layer > budget {
            return Err(Error::BudgetExceeded(format!("more than {budget} element checks")));
        }
        let reps: Vec<Vec<u64>> = basis.iter().map(|b| self.rep(b)).collect();
        let vr = self.rep(v);
        let mut scratch = Vec::new();
        let mut digits = vec![0u64; k];
        let mut w = vec![0u64; self.m * self.m];
        let mut cur = vec![0u64; self.m * self.m];
        for idx in 0..fp::checked_pow(q, k).unwrap() {
            fp::digits_of(idx, q, &mut digits);
            fp::combine(q, &mut w, &digits, &reps);
            for lambda in 1..q {
                fp::axpy_into(q, &mut cur, &w, lambda, &vr);
                if !self.holds(&cur, &mut scratch) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Rows of a reduced echelon basis, ordered by descending pivot during the
/// search; the canonical form sorts them by ascending pivot.
#[derive(Clone)]
struct Node {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Node {
    fn canonical(&self) -> Vec<Vec<u64>> {
        let mut r = self.rows.clone();
        r.reverse();
        r
    }
}

/// All rows with leading 1 at `pivot`, zero at previously chosen pivots, free
/// entries after the pivot, in lexicographic order.
fn rows_with_pivot(q: u64, len: usize, pivot: usize, taken: &[usize]) -> Vec<Vec<u64>> {
    let free: Vec<usize> = (pivot + 1..len).filter(|c| !taken.contains(c)).collect();
    let count = fp::checked_pow(q, free.len()).expect("small ambient");
    let mut digits = vec![0u64; free.len()];
    (0..count)
        .map(|idx| {
            fp::digits_of(idx, q, &mut digits);
            let mut row = vec![0u64; len];
            row[pivot] = 1;
            for (&c, &x) in free.iter().zip(&digits) {
                row[c] = x;
            }
            row
        })
        .collect()
}

/// Best (dimension, canonical basis) below `node`. Children add a row whose
/// pivot is smaller than every pivot in use, which visits each echelon form once.
fn dfs(ctx: &Ctx, node: &Node, counter: &AtomicU64, budget: u64) -> Result<(usize, Vec<Vec<u64>>)> {
    let mut best = (node.rows.len(), node.canonical());
    let limit = node.pivots.last().copied().unwrap_or(ctx.len);
    for pivot in (0..limit).rev() {
        // even filling every column below the pivot cannot beat the current best
        if node.rows.len() + pivot + 1 < best.0 {
            break;
        }
        for row in rows_with_pivot(ctx.q, ctx.len, pivot, &node.pivots) {
            if !ctx.layer_ok(&row, &node.rows, counter, budget)? {
                continue;
            }
            let mut child = node.clone();
            child.rows.push(row);
            child.pivots.push(pivot);
            let cand = dfs(ctx, &child, counter, budget)?;
            best = better(best, cand);
        }
    }
    Ok(best)
}

fn better(a: (usize, Vec<Vec<u64>>), b: (usize, Vec<Vec<u64>>)) -> (usize, Vec<Vec<u64>>) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

fn to_space(alg: &Arc<Algebra>, n: usize, rows: &[Vec<u64>]) -> OperatorSpace {
    let vecs: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| Scalar::Fp(x)).collect()).collect();
    OperatorSpace::from_flat(alg, n, n, &vecs)
}

/// Maximum F-dimension of a subspace of Mat_n(D) all of whose elements have
/// the property. Top-level branches run in parallel and are merged by
/// (dimension, then least canonical basis), so the output does not depend on
/// the thread count.
pub fn exhaustive_max(alg: &Arc<Algebra>, n: usize, prop: Property, budget: u64) -> Result<SearchResult> {
    let ctx = Ctx::new(alg, n, prop)?;
    let counter = AtomicU64::new(0);
    let root = Node { rows: Vec::new(), pivots: Vec::new() };
    let firsts: Vec<(usize, Vec<u64>)> =
        (0..ctx.len).rev().flat_map(|p| rows_with_pivot(ctx.q, ctx.len, p, &[]).into_iter().map(move |r| (p, r))).collect();
    let branches: Vec<Result<(usize, Vec<Vec<u64>>)>> = firsts
        .par_iter()
        .map(|(p, row)| {
            if !ctx.layer_ok(row, &[], &counter, budget)? {
                return Ok((0, Vec::new()));
            }
            let child = Node { rows: vec![row.clone()], pivots: vec![*p] };
            dfs(&ctx, &child, &counter, budget)
        })
        .collect();
    let mut best = (0, root.canonical());
    for b in branches {
        best = better(best, b?);
    }
    Ok(SearchResult {
        property: prop,
        max: best.0,
        witness: to_space(alg, n, &best.1),
        checks: counter.load(Ordering::Relaxed),
    })
}

pub fn exhaustive_max_trivspec(alg: &Arc<Algebra>, n: usize, budget: u64) -> Result<SearchResult> {
    exhaustive_max(alg, n, Property::TrivialSpectrum, budget)
}

pub fn exhaustive_max_diagonalisable(alg: &Arc<Algebra>, n: usize, budget: u64) -> Result<SearchResult> {
    exhaustive_max(alg, n, Property::Diagonalisable, budget)
}

pub fn exhaustive_max_semisimple(alg: &Arc<Algebra>, n: usize, budget: u64) -> Result<SearchResult> {
    exhaustive_max(alg, n, Property::Semisimple, budget)
}

/// Every k-dimensional subspace of F_q^len as a reduced echelon basis, by
/// choosing the pivot set and then filling the free entries.
pub fn all_rref(q: u64, len: usize, k: usize, budget: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let mut out = Vec::new();
    for piv in combinations(len, k) {
        let mut free = Vec::new();
        for (r, &p) in piv.iter().enumerate() {
            for c in p + 1..len {
                if !piv.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let count = fp::checked_pow(q, free.len()).filter(|&c| c + out.len() as u64 <= budget);
        let count = count.ok_or_else(|| Error::BudgetExceeded(format!("{k}-dimensional subspaces of F_{q}^{len}")))?;
        let mut digits = vec![0u64; free.len()];
        for idx in 0..count {
            fp::digits_of(idx, q, &mut digits);
            let mut rows = vec![vec![0u64; len]; k];
            for (r, &p) in piv.iter().enumerate() {
                rows[r][p] = 1;
            }
            for (&(r, c), &x) in free.iter().zip(&digits) {
                rows[r][c] = x;
            }
            out.push(rows);
        }
    }
    Ok(out)
}

/// Plain enumeration: every k-dimensional subspace of Mat_n(D) with the
/// property, each checked over all of its elements.
pub fn plain_subspaces_with(alg: &Arc<Algebra>, n: usize, k: usize, prop: Property, budget: u64) -> Result<(usize, Vec<OperatorSpace>)> {
    let ctx = Ctx::new(alg, n, prop)?;
    let all = all_rref(ctx.q, ctx.len, k, budget)?;
    let total = all.len();
    let hits: Vec<OperatorSpace> = all
        .par_iter()
        .filter(|rows| {
            let reps: Vec<Vec<u64>> = rows.iter().map(|r| ctx.rep(r)).collect();
            let count = fp::checked_pow(ctx.q, k).unwrap();
            fp::first_index(ctx.q, &reps, None, ctx.m * ctx.m, count, |m, s| !ctx.holds(m, s)).is_none()
        })
        .map(|rows| to_space(alg, n, rows))
        .collect();
    Ok((total, hits))
}

/// Seeded random spaces of the given shape and dimension (spans of uniformly
/// random coefficient tuples; the dimension may drop on dependent draws).
pub fn random_space_fuzzer(alg: &Arc<Algebra>, n: usize, p: usize, dim: usize, count: usize, seed: u64) -> Vec<OperatorSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = alg.field;
    let len = alg.d * n * p;
    (0..count)
        .map(|_| {
            let vecs: Vec<Vec<Scalar>> = (0..dim).map(|_| (0..len).map(|_| f.random(&mut rng)).collect()).collect();
            OperatorSpace::from_flat(alg, n, p, &vecs)
        })
        .collect()
}

/// Random dimension in [lo, hi] drawn from the same stream as the spaces.
pub fn random_dims(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(lo..=hi)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::operator_space::alpha;

    fn base(p: u64) -> Arc<Algebra> {
        Arc::new(Algebra::base(Field::prime(p).unwrap()))
    }

    #[test]
    fn rref_counts_are_gaussian_binomials() {
        // [4 choose 2]_5 = 806, [4 choose 1]_3 = 40
        assert_eq!(all_rref(5, 4, 2, 1 << 20).unwrap().len(), 806);
        assert_eq!(all_rref(3, 4, 1, 1 << 20).unwrap().len(), 40);
    }

    #[test]
    fn trivspec_maxima_small() {
        let r = exhaustive_max_trivspec(&base(3), 2, 1 << 24).unwrap();
        assert_eq!(r.max as u64, alpha(2, 1));
        let r2 = exhaustive_max_trivspec(&base(2), 2, 1 << 24).unwrap();
        assert_eq!(r2.max, 1);
        let f9 = Arc::new(Algebra::finite_field(3, 2).unwrap());
        assert_eq!(exhaustive_max_trivspec(&f9, 1, 1 << 20).unwrap().max, 1);
        let f4 = Arc::new(Algebra::finite_field(2, 2).unwrap());
        assert_eq!(exhaustive_max_trivspec(&f4, 1, 1 << 20).unwrap().max, 1);
    }

    #[test]
    fn dfs_agrees_with_plain_enumeration() {
        let a = base(3);
        let dfs = exhaustive_max_trivspec(&a, 2, 1 << 24).unwrap();
        let (_, ones) = plain_subspaces_with(&a, 2, 1, Property::TrivialSpectrum, 1 << 20).unwrap();
        let (_, twos) = plain_subspaces_with(&a, 2, 2, Property::TrivialSpectrum, 1 << 20).unwrap();
        assert!(!ones.is_empty());
        assert!(twos.is_empty());
        assert!(ones.contains(&dfs.witness));
    }

    #[test]
    fn diag_and_semisimple_maxima() {
        assert_eq!(exhaustive_max_diagonalisable(&base(2), 2, 1 << 24).unwrap().max, 2);
        assert_eq!(exhaustive_max_semisimple(&base(3), 2, 1 << 24).unwrap().max, 3);
        assert_eq!(exhaustive_max_semisimple(&base(5), 1, 1 << 20).unwrap().max, 1);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(exhaustive_max_trivspec(&base(3), 2, 10), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn fuzzer_is_reproducible() {
        let a = base(5);
        let x = random_space_fuzzer(&a, 2, 2, 2, 5, 7);
        let y = random_space_fuzzer(&a, 2, 2, 2, 5, 7);
        assert_eq!(x, y);
        assert_ne!(x, random_space_fuzzer(&a, 2, 2, 2, 5, 8));
    }
}
