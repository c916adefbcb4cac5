//! Intransitivity hierarchy: plain, deep, primitive and weakly primitive.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::alternator::{alternator_space, detect_from_alternator, is_right_nondegenerate, Detection};
use crate::error::{Error, Result};
use crate::fmat::FMat;
use crate::json::{dsubspace_json, fmat_json, profile_json};
use crate::operator_space::{alpha, all_d_subspaces, d_subspaces_of_dim, transitive_rank_of, DSubspace, OperatorSpace};
use crate::verdict::Verdict;

/// trk(S) < dim_F V.
pub fn is_intransitive(s: &OperatorSpace, budget: u64) -> Result<bool> {
    Ok(s.transitive_rank(budget)?.value < s.n * s.d())
}

/// S ∩ Hom_D(U, V′), kept in the ambient Mat_{n,p}(D).
pub fn restrict_target(s: &OperatorSpace, vp: &DSubspace) -> OperatorSpace {
    let f = s.alg.field;
    let ann = vp.fspace.annihilator(&f);
    let frs = s.frep_basis();
    if ann.is_empty() || frs.is_empty() {
        return s.clone();
    }
    let dp = s.p * s.d();
    // One equation per (annihilator row, column of the F-rep), unknowns = coefficients.
    let mut rows = Vec::with_capacity(ann.len() * dp);
    for a in &ann {
        let prods: Vec<Vec<_>> = frs.iter().map(|u| u.vec_mul(&f, a)).collect();
        for j in 0..dp {
            rows.push(prods.iter().map(|pr| pr[j].clone()).collect());
        }
    }
    let sys = FMat::from_rows(frs.len(), rows);
    let mats: Vec<_> = sys.kernel(&f).iter().map(|c| s.combination(c)).collect();
    OperatorSpace::span(&s.alg, s.n, s.p, &mats)
}

/// S^{V′} is intransitive as a space of maps into V′.
fn intransitive_into(s: &OperatorSpace, vp: &DSubspace, budget: u64) -> Result<bool> {
    let r = restrict_target(s, vp);
    Ok(r.transitive_rank(budget)?.value < vp.fspace.dim())
}

/// A right-nondegenerate element of Alt(S): basis elements first, then seeded
/// random combinations.
pub fn nondegenerate_alternator(s: &OperatorSpace, tries: usize) -> Option<FMat> {
    let f = s.alg.field;
    let alt = alternator_space(s);
    if let Some(g) = alt.iter().find(|g| is_right_nondegenerate(&f, g)) {
        return Some(g.clone());
    }
    if alt.len() < 2 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0061_6c74);
    for _ in 0..tries {
        let mut g = FMat::zeros(&f, alt[0].rows, alt[0].cols);
        for a in &alt {
            g = g.add(&f, &a.scale(&f, &f.random(&mut rng)));
        }
        if is_right_nondegenerate(&f, &g) {
            return Some(g);
        }
    }
    None
}

pub fn is_deeply_intransitive(s: &OperatorSpace, budget: u64) -> Verdict {
    if s.n == 0 {
        return Verdict::Refuted { witness: json!({"reason": "V = 0 is never intransitive"}) };
    }
    let fallback = |why: String| match nondegenerate_alternator(s, 32) {
        Some(_) => Verdict::CertifiedByAlternator { method: "right-nondegenerate alternator".into() },
        None => Verdict::unknown(why),
    };
    if !s.alg.field.is_finite() {
        return fallback("infinite field and no right-nondegenerate alternator found".into());
    }
    let subs = match all_d_subspaces(&s.alg, s.n, budget) {
        Ok(v) => v,
        Err(e) => return fallback(e.to_string()),
    };
    for vp in &subs {
        match intransitive_into(s, vp, budget) {
            Ok(true) => {}
            Ok(false) => {
                return Verdict::Refuted { witness: json!({"transitive_on": dsubspace_json(vp)}) };
            }
            Err(e) => return fallback(e.to_string()),
        }
    }
    Verdict::certified(format!("enumerated {} nonzero subspaces", subs.len()))
}

/// trk(πS) for the projection π : V → V/V′, together with dim_F(V/V′).
pub fn projected_trk(s: &OperatorSpace, vp: &DSubspace, budget: u64) -> Result<(usize, usize)> {
    let f = s.alg.field;
    let pi = vp.quotient_map();
    let imgs: Vec<FMat> = s.frep_basis().iter().map(|u| pi.mul(&f, u)).collect();
    let t = transitive_rank_of(&s.alg, s.p, &imgs, pi.rows, budget)?;
    Ok((t.value, pi.rows))
}

fn require_finite(s: &OperatorSpace) -> Result<u64> {
    s.alg.cardinality().ok_or_else(|| Error::Unsupported("primitivity checks need a finite field".into()))
}

pub fn is_primitively_intransitive(s: &OperatorSpace, budget: u64) -> Result<Verdict> {
    require_finite(s)?;
    let trk = s.transitive_rank(budget)?.value;
    if trk >= s.n * s.d() {
        return Ok(Verdict::Refuted { witness: json!({"reason": "transitive", "trk": trk}) });
    }
    let subs = all_d_subspaces(&s.alg, s.n, budget)?;
    for vp in subs.iter().filter(|v| v.dim_d() < s.n) {
        let (t, dim) = projected_trk(s, vp, budget)?;
        if t < dim {
            return Ok(Verdict::Refuted {
                witness: json!({"subspace": dsubspace_json(vp), "projected_trk": t, "quotient_dim": dim}),
            });
        }
    }
    Ok(Verdict::certified(format!("checked {} proper subspaces", subs.len().saturating_sub(1))))
}

pub fn is_weakly_primitively_intransitive(s: &OperatorSpace, budget: u64) -> Result<Verdict> {
    let card = require_finite(s)?;
    let trk = s.transitive_rank(budget)?.value;
    let lines = d_subspaces_of_dim(&s.alg, s.n, 1, card, budget)?;
    for vp in &lines {
        let (t, _) = projected_trk(s, vp, budget)?;
        if t + s.d() <= trk {
            return Ok(Verdict::Refuted {
                witness: json!({"line": dsubspace_json(vp), "projected_trk": t, "trk": trk}),
            });
        }
    }
    Ok(Verdict::certified(format!("checked {} lines", lines.len())))
}

#[derive(Clone, Debug)]
pub struct Clause {
    pub name: &'static str,
    pub applies: bool,
    pub bound: Option<u64>,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct AtkinsonReport {
    pub n: usize,
    pub d: usize,
    pub dim: usize,
    pub trk: usize,
    pub deep: Verdict,
    pub clauses: Vec<Clause>,
    pub alt_dim: usize,
    pub detection: Option<Detection>,
}

impl AtkinsonReport {
    pub fn all_hold(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> Value {
        let clauses: Vec<Value> = self
            .clauses
            .iter()
            .map(|c| json!({"clause": c.name, "applies": c.applies, "bound": c.bound, "holds": c.holds}))
            .collect();
        json!({
            "n": self.n,
            "d": self.d,
            "dim": self.dim,
            "trk": self.trk,
            "deep_intransitivity": self.deep.to_json(),
            "clauses": clauses,
            "alternator_dim": self.alt_dim,
            "quadratic_type": self.detection.as_ref().map(|d| d.profile.tag.as_str()),
        })
    }

    pub fn detection_json(&self, s: &OperatorSpace) -> Value {
        let f = s.alg.field;
        match &self.detection {
            None => Value::Null,
            Some(d) => json!({"profile": profile_json(&f, &d.profile), "alternator": fmat_json(&f, &d.b)}),
        }
    }
}

/// Checks the dimension bounds for a deeply intransitive space. A violated
/// clause on an instance whose hypotheses are certified is an error.
pub fn verify_atkinson_bounds(s: &OperatorSpace, budget: u64) -> Result<AtkinsonReport> {
    let (n, d) = (s.n, s.d());
    if !s.alg.field.has_at_least((n * d) as u64) {
        return Err(Error::CardinalityHypothesisFails(format!("|F| < nd = {}", n * d)));
    }
    let deep = is_deeply_intransitive(s, budget);
    if !deep.is_certified() {
        return Err(Error::HypothesisFails(format!("deep intransitivity is {}", deep.tag())));
    }
    let trk = s.transitive_rank(budget)?.value;
    let dim = s.dim() as u64;
    let a = alpha(n as u64, d as u64);
    let nn = n as u64;
    let mut clauses = vec![Clause { name: "a", applies: true, bound: Some(a), holds: dim <= a }];
    let b_applies = trk + 1 < n * d;
    let b_bound = (a + 2u64.saturating_sub(d as u64)).saturating_sub(nn);
    clauses.push(Clause { name: "b", applies: b_applies, bound: Some(b_bound), holds: !b_applies || dim <= b_bound });
    let c_threshold = (a + 4u64.saturating_sub(d as u64).max(2)).saturating_sub(nn);
    let c_applies = dim >= c_threshold && a + 4u64.saturating_sub(d as u64).max(2) >= nn;
    let alt = alternator_space(s);
    let mut detection = None;
    let mut c_holds = true;
    if c_applies {
        let f = s.alg.field;
        c_holds = alt.len() == 1 && is_right_nondegenerate(&f, &alt[0]);
        if c_holds && s.is_square() {
            match detect_from_alternator(&s.alg, alt[0].clone(), budget) {
                Ok(det) => detection = Some(det),
                Err(_) => c_holds = false,
            }
        }
    }
    clauses.push(Clause { name: "c", applies: c_applies, bound: Some(c_threshold), holds: c_holds });
    let report = AtkinsonReport { n, d, dim: dim as usize, trk, deep, clauses, alt_dim: alt.len(), detection };
    if let Some(c) = report.clauses.iter().find(|c| !c.holds) {
        return Err(Error::BoundViolated(format!("clause ({}) fails with dim {} and trk {}", c.name, dim, trk)));
    }
    Ok(report)
}

/// Atkinson-style witness: is there some V′ ≠ 0 where S^{V′} is transitive?
pub fn transitive_restriction(s: &OperatorSpace, budget: u64) -> Result<Option<DSubspace>> {
    for vp in all_d_subspaces(&s.alg, s.n, budget)? {
        if !intransitive_into(s, &vp, budget)? {
            return Ok(Some(vp));
        }
    }
    Ok(None)
}
