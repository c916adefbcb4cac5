mod input;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use trivspec_core::algebra::DivisionStatus;
use trivspec_core::alternator::{alternator_space, detect_quadratic_type, is_right_nondegenerate};
use trivspec_core::applications::{
    build_affine_minrank, build_affine_nonsingular, diag_model_c, has_full_rank1_idempotent_property,
    hermitian_space, semisimple_space_sb,
};
use trivspec_core::dmat::DMatrix;
use trivspec_core::generic_matrix::{
    alternator_catcher_check, flanders_atkinson_check, generic_of, poly_rank, random_compression_space,
};
use trivspec_core::intransitivity::{
    is_deeply_intransitive, is_intransitive, is_primitively_intransitive, is_weakly_primitively_intransitive,
    verify_atkinson_bounds,
};
use trivspec_core::json::{algebra_json, dmatrix_json, fmat_json, profile_json, quad_form_json, space_json};
use trivspec_core::operator_space::{alpha, OperatorSpace};
use trivspec_core::oracle::{exhaustive_max, Property};
use trivspec_core::trivial_spectrum::{
    classify_blocks, classify_optimal, construct_sh, construct_triangular_model, has_trivial_spectrum,
    is_e_nonisotropic, random_nonisotropic, solve_equivalence_scalar, twisted_sh, unit_free_hyperplane,
    verify_equivalence_certificate, SpectrumOptions, DEFAULT_BUDGET,
};
use trivspec_core::verdict::Verdict;
use trivspec_core::{Algebra, Error, FMat, Result};

use output::{Format, Outcome, EXIT_INTERNAL, EXIT_OK, EXIT_REFUTED, EXIT_UNKNOWN};

#[derive(Parser)]
#[command(name = "trivspec", version, about = "Construct, verify and classify matrix spaces with trivial spectrum")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest number of elements enumerated exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Random samples used when enumeration is impossible.
    #[arg(long, global = true, default_value_t = 64)]
    samples: u64,
    /// Omit timing so repeated runs print identical output.
    #[arg(long, global = true)]
    deterministic: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct AlgArgs {
    /// Base field: fp:P, q or fps:P.
    #[arg(long)]
    field: Option<String>,
    /// Degree of the division algebra over the field (1 is the field itself).
    #[arg(long, default_value_t = 1)]
    degree: usize,
    /// Algebra given as JSON structure constants.
    #[arg(long, conflicts_with = "field")]
    algebra: Option<PathBuf>,
}

impl AlgArgs {
    fn load(&self) -> Result<Arc<Algebra>> {
        input::algebra_from_flags(self.field.as_deref(), self.degree, self.algebra.as_deref())
    }
}

#[derive(Args, Clone)]
struct InArg {
    /// Input JSON file (`-` for stdin).
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Division algebra checks.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Build matrix spaces.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Verify properties of a space.
    #[command(subcommand)]
    Verify(VerifyCmd),
    #[command(subcommand)]
    Alternator(AlternatorCmd),
    /// Generic matrix computations.
    #[command(subcommand)]
    Generic(GenericCmd),
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Exhaustive maximum-dimension searches over small finite fields.
    #[command(subcommand)]
    Search(SearchCmd),
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Associativity, unit and invertibility.
    Verify(AlgArgs),
    /// Standard involution, trace form and norm form.
    Profile(AlgArgs),
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Upper triangular matrices with unit-free diagonal hyperplanes.
    Triangular {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        n: usize,
    },
    /// Skew-Hermitian matrices with diagonal in the kernel of the trace form.
    Sh {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        n: usize,
    },
    /// P⁻¹ times the skew-Hermitian space.
    TwistedSh {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        n: usize,
        /// Plant a random invertible P without requiring nonisotropy.
        #[arg(long)]
        unchecked: bool,
    },
    Hermitian {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        n: usize,
    },
    /// Affine space of n×p matrices with D-rank at least r.
    AffineMinrank {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        r: usize,
    },
    /// Affine space of invertible matrices, one identity form per block.
    AffineNonsingular {
        #[command(flatten)]
        alg: AlgArgs,
        /// Comma-separated block sizes.
        #[arg(long, value_delimiter = ',')]
        blocks: Vec<usize>,
    },
    /// F·I plus t times the Hermitian matrices, t² = −1.
    DiagModel {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        n: usize,
    },
    /// Semisimple space attached to a diagonal form.
    Sb {
        #[command(flatten)]
        alg: AlgArgs,
        /// Comma-separated diagonal of the form, e.g. `1,2`.
        #[arg(long)]
        diag: String,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Spectrum(InArg),
    /// Every element of an affine space has rank at least r.
    Minrank {
        #[command(flatten)]
        input: InArg,
        /// Defaults to full rank.
        #[arg(long)]
        r: Option<usize>,
    },
    DeepIntransitive(InArg),
    Primitive {
        #[command(flatten)]
        input: InArg,
        #[arg(long)]
        weak: bool,
    },
    Atkinson(InArg),
    IdempotentProperty(InArg),
    /// P′ − α·Q★·P·Q is skew-Hermitian with zero-trace diagonal.
    Equivalence(InArg),
}

#[derive(Subcommand)]
enum AlternatorCmd {
    Compute(InArg),
    DetectType(InArg),
}

#[derive(Subcommand)]
enum GenericCmd {
    /// Rank of the generic matrix over the fraction field.
    Rank(InArg),
    /// Compare alternators with catchers of the generic matrix.
    Catchers(InArg),
    /// Structure check for a bounded-rank space containing J_r.
    FaCheck {
        /// Space to check; omit to draw a random compression space.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        p: usize,
        #[arg(long, default_value_t = 2)]
        extra: usize,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Flag, blocks and forms of an optimal trivial-spectrum space.
    Optimal {
        #[command(flatten)]
        input: InArg,
        /// Skip the dimension and spectrum hypotheses.
        #[arg(long)]
        assume_spectrum: bool,
    },
}

#[derive(Subcommand)]
#[allow(clippy::enum_variant_names)]
enum SearchCmd {
    MaxdimTrivspec(SearchArgs),
    MaxdimDiag(SearchArgs),
    MaxdimSemisimple(SearchArgs),
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    alg: AlgArgs,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum ReportCmd {
    /// Every applicable check on one space.
    Bundle(InArg),
}

struct Ctx {
    rng: ChaCha8Rng,
    budget: u64,
    samples: u64,
}

impl Ctx {
    fn spectrum_opts(&mut self) -> SpectrumOptions {
        SpectrumOptions { budget: self.budget, samples: self.samples, seed: self.rng.gen(), alternator: None }
    }
}

fn space_body(s: &OperatorSpace) -> Value {
    json!({"dim": s.dim(), "space": space_json(s)})
}

/// Space body plus the critical dimension it should attain.
fn optimal_body(s: &OperatorSpace) -> Value {
    let mut v = space_body(s);
    v["alpha"] = json!(alpha(s.n as u64, s.d() as u64));
    v
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Algebra(AlgebraCmd::Verify(_)) => "algebra verify",
        Cmd::Algebra(AlgebraCmd::Profile(_)) => "algebra profile",
        Cmd::Construct(c) => match c {
            ConstructCmd::Triangular { .. } => "construct triangular",
            ConstructCmd::Sh { .. } => "construct sh",
            ConstructCmd::TwistedSh { .. } => "construct twisted-sh",
            ConstructCmd::Hermitian { .. } => "construct hermitian",
            ConstructCmd::AffineMinrank { .. } => "construct affine-minrank",
            ConstructCmd::AffineNonsingular { .. } => "construct affine-nonsingular",
            ConstructCmd::DiagModel { .. } => "construct diag-model",
            ConstructCmd::Sb { .. } => "construct sb",
        },
        Cmd::Verify(c) => match c {
            VerifyCmd::Spectrum(_) => "verify spectrum",
            VerifyCmd::Minrank { .. } => "verify minrank",
            VerifyCmd::DeepIntransitive(_) => "verify deep-intransitive",
            VerifyCmd::Primitive { .. } => "verify primitive",
            VerifyCmd::Atkinson(_) => "verify atkinson",
            VerifyCmd::IdempotentProperty(_) => "verify idempotent-property",
            VerifyCmd::Equivalence(_) => "verify equivalence",
        },
        Cmd::Alternator(AlternatorCmd::Compute(_)) => "alternator compute",
        Cmd::Alternator(AlternatorCmd::DetectType(_)) => "alternator detect-type",
        Cmd::Generic(GenericCmd::Rank(_)) => "generic rank",
        Cmd::Generic(GenericCmd::Catchers(_)) => "generic catchers",
        Cmd::Generic(GenericCmd::FaCheck { .. }) => "generic fa-check",
        Cmd::Classify(_) => "classify optimal",
        Cmd::Search(SearchCmd::MaxdimTrivspec(_)) => "search maxdim-trivspec",
        Cmd::Search(SearchCmd::MaxdimDiag(_)) => "search maxdim-diag",
        Cmd::Search(SearchCmd::MaxdimSemisimple(_)) => "search maxdim-semisimple",
        Cmd::Report(_) => "report bundle",
    }
}

fn run(cmd: &Cmd, cx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        Cmd::Algebra(c) => run_algebra(c, cx),
        Cmd::Construct(c) => run_construct(c, cx),
        Cmd::Verify(c) => run_verify(c, cx),
        Cmd::Alternator(c) => run_alternator(c),
        Cmd::Generic(c) => run_generic(c, cx),
        Cmd::Classify(ClassifyCmd::Optimal { input, assume_spectrum }) => {
            let (s, cands) = input::load_space_with_candidates(&input.input)?;
            let opts = cx.spectrum_opts();
            let report = if *assume_spectrum {
                classify_blocks(&s, cands.as_deref(), Verdict::unknown("assumed, not checked"), &opts)?
            } else {
                classify_optimal(&s, cands.as_deref(), &opts)?
            };
            let tags: Vec<&str> = report.block_tags();
            let mut o = Outcome::verdict(&report.verdict, json!({"tags": tags}));
            o.body.insert("report".into(), report.to_json());
            Ok(o)
        }
        Cmd::Search(c) => {
            let (a, prop) = match c {
                SearchCmd::MaxdimTrivspec(a) => (a, Property::TrivialSpectrum),
                SearchCmd::MaxdimDiag(a) => (a, Property::Diagonalisable),
                SearchCmd::MaxdimSemisimple(a) => (a, Property::Semisimple),
            };
            let alg = a.alg.load()?;
            let r = exhaustive_max(&alg, a.n, prop, cx.budget)?;
            let mut body = r.to_json();
            body["alpha"] = json!(alpha(a.n as u64, alg.d as u64));
            Ok(Outcome::ok(body))
        }
        Cmd::Report(ReportCmd::Bundle(input)) => {
            let s = input::load_space(&input.input)?;
            Ok(Outcome::ok(bundle(&s, cx)))
        }
    }
}

fn run_algebra(c: &AlgebraCmd, cx: &mut Ctx) -> Result<Outcome> {
    match c {
        AlgebraCmd::Verify(a) => {
            let alg = a.load()?;
            let r = alg.verify_division_algebra(cx.budget)?;
            let (status, exit) = match r.status {
                DivisionStatus::Certified => ("certified", EXIT_OK),
                DivisionStatus::CertifiedProbabilistic => ("certified-probabilistic", EXIT_OK),
                DivisionStatus::BudgetExceeded => ("budget-exceeded", EXIT_UNKNOWN),
            };
            Ok(Outcome::with_exit(
                json!({
                    "algebra": algebra_json(&alg),
                    "status": status,
                    "method": r.method,
                    "elements_checked": r.elements_checked,
                }),
                exit,
            ))
        }
        AlgebraCmd::Profile(a) => {
            let alg = a.load()?;
            let profile = alg.standard_profile()?;
            let f = alg.field;
            let multiplicative = alg.is_multiplicative(&profile.q);
            Ok(Outcome::ok(json!({
                "algebra": algebra_json(&alg),
                "tag": profile.tag.as_str(),
                "profile": profile_json(&f, &profile),
                "norm_multiplicative": multiplicative,
            })))
        }
    }
}

fn run_construct(c: &ConstructCmd, cx: &mut Ctx) -> Result<Outcome> {
    let out = match c {
        ConstructCmd::Triangular { alg, n } => {
            let alg = alg.load()?;
            let h = unit_free_hyperplane(&alg);
            optimal_body(&construct_triangular_model(&alg, &vec![h; *n])?)
        }
        ConstructCmd::Sh { alg, n } => {
            let alg = alg.load()?;
            let profile = alg.standard_profile()?;
            optimal_body(&construct_sh(&alg, *n, &profile)?)
        }
        ConstructCmd::TwistedSh { alg, n, unchecked } => {
            let alg = alg.load()?;
            let profile = alg.standard_profile()?;
            let p = if *unchecked {
                DMatrix::random_invertible(&alg, *n, &mut cx.rng)
            } else {
                random_nonisotropic(&alg, *n, &profile, &mut cx.rng)?
            };
            let s = twisted_sh(&p, &profile)?;
            let mut body = optimal_body(&s);
            body["planted_p"] = dmatrix_json(&p);
            body["nonisotropy"] = is_e_nonisotropic(&p, &profile, cx.budget).to_json();
            body
        }
        ConstructCmd::Hermitian { alg, n } => {
            let alg = alg.load()?;
            let profile = alg.standard_profile()?;
            space_body(&hermitian_space(&alg, *n, &profile)?)
        }
        ConstructCmd::AffineMinrank { alg, n, p, r } => {
            let alg = alg.load()?;
            let a = build_affine_minrank(&alg, *n, *p, *r)?;
            json!({"dim": a.dim(), "codim": a.codim(), "affine": a.to_json()})
        }
        ConstructCmd::AffineNonsingular { alg, blocks } => {
            let alg = alg.load()?;
            if blocks.is_empty() {
                return Err(Error::parse("--blocks", "at least one block size is required"));
            }
            let profile = alg.standard_profile()?;
            let ps: Vec<DMatrix> = blocks.iter().map(|&k| DMatrix::identity(&alg, k)).collect();
            let a = build_affine_nonsingular(&ps, &profile, cx.budget)?;
            json!({"dim": a.dim(), "codim": a.codim(), "affine": a.to_json()})
        }
        ConstructCmd::DiagModel { alg, n } => {
            let alg = alg.load()?;
            space_body(&diag_model_c(&alg, *n)?)
        }
        ConstructCmd::Sb { alg, diag } => {
            let alg = alg.load()?;
            let f = alg.field;
            let entries = input::parse_scalar_list(&f, diag, "--diag")?;
            let k = entries.len();
            let mut g = FMat::zeros(&f, k, k);
            for (i, x) in entries.into_iter().enumerate() {
                g.set(i, i, x);
            }
            space_body(&semisimple_space_sb(&alg, &g, cx.budget)?)
        }
    };
    Ok(Outcome::ok(out))
}

fn run_verify(c: &VerifyCmd, cx: &mut Ctx) -> Result<Outcome> {
    match c {
        VerifyCmd::Spectrum(i) => {
            let s = input::load_space(&i.input)?;
            let opts = cx.spectrum_opts();
            let v = has_trivial_spectrum(&s, &opts)?;
            Ok(Outcome::verdict(&v, json!({"dim": s.dim()})))
        }
        VerifyCmd::Minrank { input, r } => {
            let a = input::load_affine(&input.input)?;
            let r = r.unwrap_or(a.direction.n.min(a.direction.p));
            let v = a.verify_min_rank(r, cx.budget, cx.samples, cx.rng.gen())?;
            Ok(Outcome::verdict(&v, json!({"r": r, "dim": a.dim(), "codim": a.codim()})))
        }
        VerifyCmd::DeepIntransitive(i) => {
            let s = input::load_space(&i.input)?;
            let v = is_deeply_intransitive(&s, cx.budget);
            Ok(Outcome::verdict(&v, json!({"dim": s.dim()})))
        }
        VerifyCmd::Primitive { input, weak } => {
            let s = input::load_space(&input.input)?;
            let v = if *weak {
                is_weakly_primitively_intransitive(&s, cx.budget)?
            } else {
                is_primitively_intransitive(&s, cx.budget)?
            };
            Ok(Outcome::verdict(&v, json!({"weak": weak})))
        }
        VerifyCmd::Atkinson(i) => {
            let s = input::load_space(&i.input)?;
            let r = verify_atkinson_bounds(&s, cx.budget)?;
            let exit = if r.all_hold() { EXIT_OK } else { EXIT_INTERNAL };
            let mut body = r.to_json();
            body["detection"] = r.detection_json(&s);
            Ok(Outcome::with_exit(body, exit))
        }
        VerifyCmd::IdempotentProperty(i) => {
            let s = input::load_space(&i.input)?;
            let v = has_full_rank1_idempotent_property(&s, cx.budget, cx.samples, cx.rng.gen())?;
            Ok(Outcome::verdict(&v, json!({"dim": s.dim()})))
        }
        VerifyCmd::Equivalence(i) => {
            let e = input::load_equivalence(&i.input)?;
            let profile = e.alg.standard_profile()?;
            let f = e.alg.field;
            let alpha_s = match &e.alpha {
                Some(a) => Some(a.clone()),
                None => solve_equivalence_scalar(&e.p, &e.p2, &e.q, &profile)?,
            };
            let holds = match &alpha_s {
                Some(a) => verify_equivalence_certificate(&e.p, &e.p2, a, &e.q, &profile)?,
                None => false,
            };
            let body = json!({
                "holds": holds,
                "alpha": alpha_s.as_ref().map(|a| f.format(a)),
            });
            Ok(Outcome::with_exit(body, if holds { EXIT_OK } else { EXIT_REFUTED }))
        }
    }
}

fn run_alternator(c: &AlternatorCmd) -> Result<Outcome> {
    match c {
        AlternatorCmd::Compute(i) => {
            let s = input::load_space(&i.input)?;
            let f = s.alg.field;
            let alt = alternator_space(&s);
            let nondeg: Vec<bool> = alt.iter().map(|g| is_right_nondegenerate(&f, g)).collect();
            Ok(Outcome::ok(json!({
                "dim": alt.len(),
                "alternators": alt.iter().map(|g| fmat_json(&f, g)).collect::<Vec<_>>(),
                "right_nondegenerate": nondeg,
            })))
        }
        AlternatorCmd::DetectType(i) => {
            let s = input::load_space(&i.input)?;
            let f = s.alg.field;
            let det = detect_quadratic_type(&s, u64::MAX)?;
            Ok(Outcome::ok(json!({
                "tag": det.profile.tag.as_str(),
                "profile": profile_json(&f, &det.profile),
                "alternator": fmat_json(&f, &det.b),
                "sesquilinear": dmatrix_json(&det.p),
                "twist_form": quad_form_json(&f, &det.q),
            })))
        }
    }
}

fn run_generic(c: &GenericCmd, cx: &mut Ctx) -> Result<Outcome> {
    match c {
        GenericCmd::Rank(i) => {
            let s = input::load_space(&i.input)?;
            let r = poly_rank(&s.alg.field, &generic_of(&s), &mut cx.rng);
            Ok(Outcome::ok(r.to_json()))
        }
        GenericCmd::Catchers(i) => {
            let s = input::load_space(&i.input)?;
            let r = alternator_catcher_check(&s)?;
            let exit = if r.round_trip && r.alt_dim == r.catch_dim { EXIT_OK } else { EXIT_INTERNAL };
            Ok(Outcome::with_exit(r.to_json(), exit))
        }
        GenericCmd::FaCheck { input, alg, r, n, p, extra } => {
            let (f, mats, drawn) = match input {
                Some(path) => {
                    let s = input::load_space(path)?;
                    (s.alg.field, s.frep_basis(), false)
                }
                None => {
                    let alg = alg.load()?;
                    if alg.d != 1 {
                        return Err(Error::parse("--degree", "random compression spaces are drawn over the base field"));
                    }
                    let f = alg.field;
                    (f, random_compression_space(&f, *n, *p, *r, *extra, &mut cx.rng), true)
                }
            };
            let rep = flanders_atkinson_check(&f, &mats, *r, &mut cx.rng)?;
            let mut body = rep.to_json();
            if drawn {
                body["space"] = json!(mats.iter().map(|m| fmat_json(&f, m)).collect::<Vec<_>>());
            }
            Ok(Outcome::ok(body))
        }
    }
}

/// Runs each applicable check on `s`; failures are recorded, not raised.
fn bundle(s: &OperatorSpace, cx: &mut Ctx) -> Value {
    fn res<T>(r: Result<T>, f: impl FnOnce(T) -> Value) -> Value {
        r.map_or_else(|e| json!({"error": output::error_json(&e)}), f)
    }
    let (n, p, d) = (s.n, s.p, s.d());
    let f = s.alg.field;
    let alt = alternator_space(s);
    let mut out = json!({
        "n": n,
        "p": p,
        "d": d,
        "dim": s.dim(),
        "alpha": alpha(n as u64, d as u64),
        "transitive_rank": res(s.transitive_rank(cx.budget), |t| json!(t.value)),
        "intransitive": res(is_intransitive(s, cx.budget), |b| json!(b)),
        "alternators": {
            "dim": alt.len(),
            "right_nondegenerate": alt.iter().map(|g| is_right_nondegenerate(&f, g)).collect::<Vec<_>>(),
        },
        "deeply_intransitive": is_deeply_intransitive(s, cx.budget).to_json(),
    });
    if s.is_target_reduced() {
        out["catchers"] = res(alternator_catcher_check(s), |r| r.to_json());
    }
    if s.is_square() {
        let opts = cx.spectrum_opts();
        out["spectrum"] = res(has_trivial_spectrum(s, &opts), |v| v.to_json());
        if s.dim() as u64 == alpha(n as u64, d as u64) {
            out["classification"] = res(classify_optimal(s, None, &opts), |r| r.to_json());
        }
    }
    out["atkinson"] = res(verify_atkinson_bounds(s, cx.budget), |r| r.to_json());
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.cmd);
    let mut cx = Ctx { rng: ChaCha8Rng::seed_from_u64(cli.seed), budget: cli.budget, samples: cli.samples };
    let start = Instant::now();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&cli.cmd, &mut cx)));
    let outcome = match result {
        Ok(Ok(o)) => o,
        Ok(Err(e)) => Outcome::with_exit(json!({"error": output::error_json(&e)}), output::error_exit(&e)),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::with_exit(json!({"error": {"kind": "InternalInvariant", "message": msg}}), EXIT_INTERNAL)
        }
    };
    let mut body = outcome.body;
    body.insert("seed".into(), json!(cli.seed));
    body.insert("exit_code".into(), json!(outcome.exit));
    if !cli.deterministic {
        body.insert("elapsed_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    // a closed pipe is not an error of the computation
    let _ = writeln!(std::io::stdout().lock(), "{}", output::render(&output::document(name, body), cli.format));
    ExitCode::from(outcome.exit as u8)
}
