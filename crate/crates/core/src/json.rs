//! JSON encodings of the library's values. Scalars are strings ("p/q" for
//! rationals); loading canonicalizes spaces.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{Algebra, Family, QuadForm, QuadTag, QuadraticTypeProfile};
use crate::dmat::DMatrix;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::fmat::{FMat, FSubspace};
use crate::operator_space::{DSubspace, OperatorSpace};

pub const SCHEMA: &str = "trivspec/1";

pub fn field_json(f: &Field) -> Value {
    let variant = match f {
        Field::Prime(_) => "prime",
        Field::Rationals => "rationals",
        Field::RationalFunctions(_) => "rational-functions",
    };
    json!({
        "variant": variant,
        "spec": f.spec_string(),
        "characteristic": f.characteristic(),
        "cardinality": f.cardinality().map_or(Value::String("infinite".into()), |c| json!(c)),
    })
}

pub fn scalars_json(f: &Field, v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(f.format(s))).collect())
}

pub fn family_json(f: &Field, fam: &Family) -> Value {
    match fam {
        Family::Base => json!({"kind": "base"}),
        Family::Quadratic { beta, gamma } => json!({"kind": "quadratic", "beta": f.format(beta), "gamma": f.format(gamma)}),
        Family::Quaternion { a, b } => json!({"kind": "quaternion", "a": f.format(a), "b": f.format(b)}),
        Family::HyperRadicial { c } => json!({"kind": "hyper-radicial", "c": f.format(c)}),
        Family::Extension => json!({"kind": "extension"}),
        Family::Raw => json!({"kind": "raw"}),
    }
}

pub fn algebra_json(a: &Algebra) -> Value {
    let f = &a.field;
    let d = a.d;
    let structure: Vec<Value> = (0..d)
        .map(|i| Value::Array((0..d).map(|j| scalars_json(f, &a.structure[(i * d + j) * d..(i * d + j + 1) * d])).collect()))
        .collect();
    json!({
        "field": field_json(f),
        "degree": d,
        "structure": structure,
        "unit": scalars_json(f, &a.unit),
        "family": family_json(f, &a.family),
        "name": a.name,
    })
}

pub fn fmat_json(f: &Field, m: &FMat) -> Value {
    Value::Array((0..m.rows).map(|i| scalars_json(f, m.row(i))).collect())
}

pub fn quad_form_json(f: &Field, q: &QuadForm) -> Value {
    let rows: Vec<Value> = (0..q.d).map(|i| scalars_json(f, &q.coeffs[i * q.d..(i + 1) * q.d])).collect();
    json!({"upper": rows})
}

pub fn profile_json(f: &Field, p: &QuadraticTypeProfile) -> Value {
    json!({
        "tag": p.tag.as_str(),
        "sigma": fmat_json(f, &p.sigma),
        "e": scalars_json(f, &p.e),
        "q": quad_form_json(f, &p.q),
    })
}

pub fn dmatrix_json(m: &DMatrix) -> Value {
    let f = &m.alg.field;
    let entries: Vec<Value> =
        (0..m.rows).map(|i| Value::Array((0..m.cols).map(|j| scalars_json(f, m.entry(i, j))).collect())).collect();
    json!({"rows": m.rows, "cols": m.cols, "entries": entries})
}

pub fn dvector_json(alg: &Algebra, v: &[Scalar]) -> Value {
    Value::Array(v.chunks(alg.d).map(|c| scalars_json(&alg.field, c)).collect())
}

pub fn space_json(s: &OperatorSpace) -> Value {
    json!({
        "ambient": {"algebra": algebra_json(&s.alg), "n": s.n, "p": s.p},
        "dim": s.dim(),
        "basis": s.basis_matrices().iter().map(dmatrix_json).collect::<Vec<_>>(),
    })
}

pub fn fsubspace_json(f: &Field, s: &FSubspace) -> Value {
    json!({"ambient": s.ambient, "dim": s.dim(), "basis": s.basis.iter().map(|v| scalars_json(f, v)).collect::<Vec<_>>()})
}

pub fn dsubspace_json(v: &DSubspace) -> Value {
    json!({
        "dim_D": v.dim_d(),
        "basis": v.d_basis().iter().map(|b| dvector_json(&v.alg, b)).collect::<Vec<_>>(),
    })
}

// ---- loading ----

fn get<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::parse(format!("{path}/{key}"), "missing field"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::parse(path, "expected a nonnegative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

pub fn parse_scalar(f: &Field, v: &Value, path: &str) -> Result<Scalar> {
    let r = match v {
        Value::String(s) => f.parse(s),
        Value::Number(n) => f.parse(&n.to_string()),
        _ => return Err(Error::parse(path, "expected a scalar string")),
    };
    r.map_err(|e| Error::parse(path, e.to_string()))
}

pub fn parse_scalars(f: &Field, v: &Value, path: &str) -> Result<Vec<Scalar>> {
    as_array(v, path)?.iter().enumerate().map(|(i, x)| parse_scalar(f, x, &format!("{path}/{i}"))).collect()
}

pub fn parse_field(v: &Value, path: &str) -> Result<Field> {
    let spec = match v {
        Value::String(s) => s.clone(),
        _ => get(v, "spec", path)?.as_str().ok_or_else(|| Error::parse(format!("{path}/spec"), "expected a string"))?.to_string(),
    };
    Field::parse_spec(&spec).map_err(|e| Error::parse(path, e.to_string()))
}

pub fn parse_algebra(v: &Value, path: &str) -> Result<Algebra> {
    let f = parse_field(get(v, "field", path)?, &format!("{path}/field"))?;
    let d = as_usize(get(v, "degree", path)?, &format!("{path}/degree"))?;
    let sp = format!("{path}/structure");
    let st = as_array(get(v, "structure", path)?, &sp)?;
    let mut structure = Vec::with_capacity(d * d * d);
    if st.len() != d {
        return Err(Error::parse(&sp, format!("expected {d} rows")));
    }
    for (i, row) in st.iter().enumerate() {
        let row = as_array(row, &format!("{sp}/{i}"))?;
        if row.len() != d {
            return Err(Error::parse(format!("{sp}/{i}"), format!("expected {d} entries")));
        }
        for (j, c) in row.iter().enumerate() {
            let c = parse_scalars(&f, c, &format!("{sp}/{i}/{j}"))?;
            if c.len() != d {
                return Err(Error::parse(format!("{sp}/{i}/{j}"), format!("expected {d} coordinates")));
            }
            structure.extend(c);
        }
    }
    let unit = parse_scalars(&f, get(v, "unit", path)?, &format!("{path}/unit"))?;
    let name = v.get("name").and_then(|n| n.as_str()).unwrap_or("raw");
    let mut alg = Algebra::from_structure(f, d, structure, unit, name).map_err(|e| Error::parse(path, e.to_string()))?;
    if let Some(fam) = v.get("family") {
        let fp = format!("{path}/family");
        let kind = get(fam, "kind", &fp)?.as_str().unwrap_or("raw");
        let sc = |k: &str| parse_scalar(&f, get(fam, k, &fp)?, &format!("{fp}/{k}"));
        let family = match kind {
            "base" => Family::Base,
            "quadratic" => Family::Quadratic { beta: sc("beta")?, gamma: sc("gamma")? },
            "quaternion" => Family::Quaternion { a: sc("a")?, b: sc("b")? },
            "hyper-radicial" => Family::HyperRadicial { c: sc("c")? },
            "extension" => Family::Extension,
            _ => Family::Raw,
        };
        // only trust a family whose constructor reproduces the constants
        let rebuilt = match &family {
            Family::Base => Some(Algebra::base(f)),
            Family::Quadratic { beta, gamma } => Some(Algebra::quadratic(f, beta.clone(), gamma.clone())),
            Family::Quaternion { a, b } => Algebra::quaternion(f, a.clone(), b.clone()).ok(),
            Family::HyperRadicial { c } => Algebra::hyper_radicial(f, c.clone()).ok(),
            Family::Extension => Some(alg.clone()),
            Family::Raw => None,
        };
        if let Some(r) = rebuilt {
            if r.structure == alg.structure && r.unit == alg.unit {
                alg.family = family;
            }
        }
    }
    Ok(alg)
}

pub fn parse_dmatrix(alg: &Arc<Algebra>, v: &Value, path: &str) -> Result<DMatrix> {
    let rows = as_usize(get(v, "rows", path)?, &format!("{path}/rows"))?;
    let cols = as_usize(get(v, "cols", path)?, &format!("{path}/cols"))?;
    let ep = format!("{path}/entries");
    let e = as_array(get(v, "entries", path)?, &ep)?;
    if e.len() != rows {
        return Err(Error::parse(&ep, format!("expected {rows} rows")));
    }
    let mut m = DMatrix::zeros(alg, rows, cols);
    for (i, row) in e.iter().enumerate() {
        let row = as_array(row, &format!("{ep}/{i}"))?;
        if row.len() != cols {
            return Err(Error::parse(format!("{ep}/{i}"), format!("expected {cols} entries")));
        }
        for (j, x) in row.iter().enumerate() {
            let p = format!("{ep}/{i}/{j}");
            let c = parse_scalars(&alg.field, x, &p)?;
            if c.len() != alg.d {
                return Err(Error::parse(p, format!("expected {} coordinates", alg.d)));
            }
            m.set(i, j, &c);
        }
    }
    Ok(m)
}

pub fn parse_fmat(f: &Field, v: &Value, path: &str) -> Result<FMat> {
    let rows = as_array(v, path)?;
    let parsed: Vec<Vec<Scalar>> =
        rows.iter().enumerate().map(|(i, r)| parse_scalars(f, r, &format!("{path}/{i}"))).collect::<Result<_>>()?;
    let cols = parsed.first().map_or(0, |r| r.len());
    if parsed.iter().any(|r| r.len() != cols) {
        return Err(Error::parse(path, "ragged matrix"));
    }
    Ok(FMat::from_rows(cols, parsed))
}

pub fn parse_space(v: &Value, path: &str) -> Result<OperatorSpace> {
    let ap = format!("{path}/ambient");
    let amb = get(v, "ambient", path)?;
    let alg = Arc::new(parse_algebra(get(amb, "algebra", &ap)?, &format!("{ap}/algebra"))?);
    let n = as_usize(get(amb, "n", &ap)?, &format!("{ap}/n"))?;
    let p = as_usize(get(amb, "p", &ap)?, &format!("{ap}/p"))?;
    let bp = format!("{path}/basis");
    let mats: Vec<DMatrix> = as_array(get(v, "basis", path)?, &bp)?
        .iter()
        .enumerate()
        .map(|(i, m)| parse_dmatrix(&alg, m, &format!("{bp}/{i}")))
        .collect::<Result<_>>()?;
    for (i, m) in mats.iter().enumerate() {
        if m.rows != n || m.cols != p {
            return Err(Error::parse(format!("{bp}/{i}"), format!("expected a {n}×{p} matrix")));
        }
    }
    Ok(OperatorSpace::span(&alg, n, p, &mats))
}

pub fn parse_profile(f: &Field, d: usize, v: &Value, path: &str) -> Result<QuadraticTypeProfile> {
    let tag_s = get(v, "tag", path)?.as_str().unwrap_or("");
    let tag = QuadTag::parse(tag_s).ok_or_else(|| Error::parse(format!("{path}/tag"), "unknown tag"))?;
    let sigma = parse_fmat(f, get(v, "sigma", path)?, &format!("{path}/sigma"))?;
    let e = parse_scalars(f, get(v, "e", path)?, &format!("{path}/e"))?;
    let qp = format!("{path}/q");
    let upper = parse_fmat(f, get(get(v, "q", path)?, "upper", &qp)?, &format!("{qp}/upper"))?;
    if sigma.rows != d || sigma.cols != d || e.len() != d || upper.rows != d || upper.cols != d {
        return Err(Error::parse(path, format!("profile data must have size {d}")));
    }
    Ok(QuadraticTypeProfile { tag, sigma, e, q: QuadForm { d, coeffs: upper.data } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_round_trip() {
        let alg = Arc::new(Algebra::hamilton());
        let mut m = DMatrix::zeros(&alg, 2, 2);
        m.set(0, 1, &alg.basis_elem(2));
        let s = OperatorSpace::span(&alg, 2, 2, &[m]);
        let v = space_json(&s);
        let back = parse_space(&v, "").unwrap();
        assert_eq!(back, s);
        assert_eq!(back.alg.family, alg.family);
    }

    #[test]
    fn bad_input_points_at_path() {
        let v = json!({"ambient": {"algebra": {"field": "fp:4", "degree": 1, "structure": [[["1"]]], "unit": ["1"]}, "n": 1, "p": 1}, "basis": []});
        match parse_space(&v, "") {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "/ambient/algebra/field"),
            other => panic!("{other:?}"),
        }
    }
}
