use serde_json::{json, Map, Value};
use trivspec_core::json::SCHEMA;
use trivspec_core::verdict::Verdict;
use trivspec_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// A command's JSON body and exit code.
pub struct Outcome {
    pub body: Map<String, Value>,
    pub exit: i32,
}

impl Outcome {
    pub fn ok(body: Value) -> Outcome {
        Outcome::with_exit(body, EXIT_OK)
    }

    pub fn with_exit(body: Value, exit: i32) -> Outcome {
        let body = match body {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("result".into(), other);
                m
            }
        };
        Outcome { body, exit }
    }

    /// Body carries the verdict; exit follows it. Sampled results are not
    /// proofs and exit as unknown.
    pub fn verdict(v: &Verdict, extra: Value) -> Outcome {
        let mut o = Outcome::with_exit(extra, verdict_exit(v));
        o.body.insert("verdict".into(), v.to_json());
        o
    }
}

pub fn verdict_exit(v: &Verdict) -> i32 {
    match v {
        Verdict::Certified { .. } | Verdict::CertifiedProbabilistic { .. } | Verdict::CertifiedByAlternator { .. } => {
            EXIT_OK
        }
        Verdict::Refuted { .. } => EXIT_REFUTED,
        Verdict::Sampled { .. } | Verdict::Unknown { .. } => EXIT_UNKNOWN,
    }
}

pub fn error_exit(e: &Error) -> i32 {
    use Error::*;
    match e {
        Pipeline { source, .. } => error_exit(source),
        Parse { .. } | Shape(_) | DescriptorMismatch(_) | Unsupported(_) | CharTwo | NotSeparableType(_) | WrongProfile(_)
        | NotQuadraticType(_) | NotQuadratic(_) | NotOptimalDim(_) | CardinalityHypothesisFails(_)
        | HypothesisFails(_) | HypothesisViolated(_) | NotTargetReduced | HyperplaneContainsUnit(_)
        | DegenerateTrace(_) | Singular | ZeroInverse | NotInvertible(_) | ZeroVector => EXIT_INPUT,
        BudgetExceeded(_) | UnknownNonisotropy(_) => EXIT_UNKNOWN,
        IdentityViolated(_) | BoundViolated(_) => EXIT_INTERNAL,
        _ => EXIT_REFUTED,
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

pub fn error_json(e: &Error) -> Value {
    let mut v = json!({"kind": error_kind(e), "message": e.to_string()});
    let mut cur = e;
    while let Error::Pipeline { location, source } = cur {
        v["location"] = json!(location);
        v["cause"] = json!(error_kind(source));
        cur = source;
    }
    if let Error::Parse { path, .. } = cur {
        v["path"] = json!(path);
    }
    v
}

/// Final document: schema and command first, then the body.
pub fn document(command: &str, mut body: Map<String, Value>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.append(&mut body);
    Value::Object(m)
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("serializable"),
        Format::Text => {
            let mut out = String::new();
            if let Value::Object(m) = doc {
                for (k, v) in m {
                    let s = match v {
                        Value::String(s) => s.clone(),
                        Value::Object(o) if o.contains_key("verdict") && o.len() <= 3 => {
                            o.values().map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string)).collect::<Vec<_>>().join(" ")
                        }
                        other => other.to_string(),
                    };
                    out.push_str(&format!("{k}: {s}\n"));
                }
            }
            out.trim_end().to_string()
        }
    }
}
