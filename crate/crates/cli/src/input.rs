use std::path::Path;
use std::sync::Arc;

use serde_json::Value;
use trivspec_core::applications::AffineSpace;
use trivspec_core::dmat::DMatrix;
use trivspec_core::json::{parse_algebra, parse_dmatrix, parse_scalar, parse_space, SCHEMA};
use trivspec_core::operator_space::{DSubspace, OperatorSpace};
use trivspec_core::{Algebra, Error, Field, Result};

/// Reads a JSON document from a path, or from stdin for `-`.
pub fn read_json(path: &Path) -> Result<Value> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::parse("", format!("stdin: {e}")))?
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::parse("", format!("{}: {e}", path.display())))?
    };
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Error::parse("", format!("invalid JSON at line {} column {}: {e}", e.line(), e.column())))?;
    if let Some(s) = v.get("schema") {
        if s.as_str() != Some(SCHEMA) {
            return Err(Error::parse("/schema", format!("expected {SCHEMA:?}")));
        }
    }
    Ok(v)
}

/// The object under `key` when the document wraps it (as command output
/// does), else the document itself.
fn unwrap_key<'a>(v: &'a Value, key: &str) -> (&'a Value, String) {
    match v.get(key) {
        Some(inner) => (inner, format!("/{key}")),
        None => (v, String::new()),
    }
}

pub fn load_space(path: &Path) -> Result<OperatorSpace> {
    let doc = read_json(path)?;
    let (v, p) = unwrap_key(&doc, "space");
    parse_space(v, &p)
}

/// The space plus optional candidate invariant subspaces under
/// `candidates`, each a list of D-vectors.
pub fn load_space_with_candidates(path: &Path) -> Result<(OperatorSpace, Option<Vec<DSubspace>>)> {
    let doc = read_json(path)?;
    let (v, p) = unwrap_key(&doc, "space");
    let s = parse_space(v, &p)?;
    let Some(c) = doc.get("candidates") else {
        return Ok((s, None));
    };
    let list = c.as_array().ok_or_else(|| Error::parse("/candidates", "expected an array"))?;
    let mut out = Vec::new();
    for (i, sub) in list.iter().enumerate() {
        let sp = format!("/candidates/{i}");
        let vecs = sub.as_array().ok_or_else(|| Error::parse(&sp, "expected an array of vectors"))?;
        let parsed: Vec<Vec<_>> = vecs
            .iter()
            .enumerate()
            .map(|(j, x)| parse_dvector(&s.alg, s.n, x, &format!("{sp}/{j}")))
            .collect::<Result<_>>()?;
        out.push(DSubspace::span(&s.alg, s.n, &parsed));
    }
    Ok((s, Some(out)))
}

fn parse_dvector(alg: &Arc<Algebra>, n: usize, v: &Value, path: &str) -> Result<Vec<trivspec_core::Scalar>> {
    let entries = v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))?;
    if entries.len() != n {
        return Err(Error::parse(path, format!("expected {n} entries")));
    }
    let mut out = Vec::with_capacity(n * alg.d);
    for (i, e) in entries.iter().enumerate() {
        let ep = format!("{path}/{i}");
        let coords = e.as_array().ok_or_else(|| Error::parse(&ep, "expected an array"))?;
        if coords.len() != alg.d {
            return Err(Error::parse(&ep, format!("expected {} coordinates", alg.d)));
        }
        for (k, c) in coords.iter().enumerate() {
            out.push(parse_scalar(&alg.field, c, &format!("{ep}/{k}"))?);
        }
    }
    Ok(out)
}

pub fn load_affine(path: &Path) -> Result<AffineSpace> {
    let doc = read_json(path)?;
    let (v, p) = unwrap_key(&doc, "affine");
    let dp = format!("{p}/direction");
    let dir = parse_space(v.get("direction").ok_or_else(|| Error::parse(&dp, "missing field"))?, &dp)?;
    let bp = format!("{p}/base");
    let base = parse_dmatrix(&dir.alg, v.get("base").ok_or_else(|| Error::parse(&bp, "missing field"))?, &bp)?;
    if base.rows != dir.n || base.cols != dir.p {
        return Err(Error::parse(bp, format!("expected a {}×{} matrix", dir.n, dir.p)));
    }
    AffineSpace::new(base, dir)
}

pub struct EquivalenceInput {
    pub alg: Arc<Algebra>,
    pub p: DMatrix,
    pub p2: DMatrix,
    pub q: DMatrix,
    pub alpha: Option<trivspec_core::Scalar>,
}

pub fn load_equivalence(path: &Path) -> Result<EquivalenceInput> {
    let doc = read_json(path)?;
    let av = doc.get("algebra").ok_or_else(|| Error::parse("/algebra", "missing field"))?;
    let alg = Arc::new(parse_algebra(av, "/algebra")?);
    let mat = |k: &str| -> Result<DMatrix> {
        let v = doc.get(k).ok_or_else(|| Error::parse(format!("/{k}"), "missing field"))?;
        parse_dmatrix(&alg, v, &format!("/{k}"))
    };
    let (p, p2, q) = (mat("p")?, mat("p2")?, mat("q")?);
    let alpha = doc.get("alpha").map(|a| parse_scalar(&alg.field, a, "/alpha")).transpose()?;
    Ok(EquivalenceInput { alg, p, p2, q, alpha })
}

/// Algebra from `--field`/`--degree` presets or an `--algebra` file.
pub fn algebra_from_flags(field: Option<&str>, degree: usize, file: Option<&Path>) -> Result<Arc<Algebra>> {
    if let Some(path) = file {
        let doc = read_json(path)?;
        let (v, p) = unwrap_key(&doc, "algebra");
        return Ok(Arc::new(parse_algebra(v, &p)?));
    }
    let spec = field.ok_or_else(|| Error::parse("--field", "either --field or --algebra is required"))?;
    let f = Field::parse_spec(spec).map_err(|e| Error::parse("--field", e.to_string()))?;
    let alg = match (&f, degree) {
        (_, 1) => Algebra::base(f),
        (Field::Prime(p), k) => Algebra::finite_field(*p, k).map_err(|e| Error::parse("--degree", e.to_string()))?,
        (Field::Rationals, 2) => Algebra::gaussian_rationals(),
        (Field::Rationals, 4) => Algebra::hamilton(),
        (Field::RationalFunctions(2), 2) => Algebra::hyper_radicial_f2s(),
        _ => {
            return Err(Error::parse(
                "--degree",
                format!("no built-in division algebra of degree {degree} over {}", f.name()),
            ))
        }
    };
    Ok(Arc::new(alg))
}

/// Comma-separated scalars such as `1,2` or `1/2,-3`.
pub fn parse_scalar_list(f: &Field, s: &str, flag: &str) -> Result<Vec<trivspec_core::Scalar>> {
    s.split(',').map(|t| f.parse(t.trim()).map_err(|e| Error::parse(flag, e.to_string()))).collect()
}
