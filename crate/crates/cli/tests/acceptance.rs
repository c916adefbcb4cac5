//! Acceptance run: one PASS/FAIL line per criterion, each against its time
//! limit. Criteria listed in `KNOWN_FAILING` are mathematically unattainable
//! as stated (see the witnesses they print); they still report FAIL, and the
//! run only errors if they start passing or if any other criterion fails.
//! Set TRIVSPEC_ACCEPTANCE_STRICT=1 to error on every FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trivspec_core::alternator::{alternating_maps, alternator_space, gram_from_sesquilinear};
use trivspec_core::applications::{
    all_semisimple, build_affine_minrank, build_affine_nonsingular, diag_model_c, has_full_rank1_idempotent_property,
    hermitian_space, motzkin_taussky_finite, orthogonal_complement, semisimple_space_sb, skew_hermitian_space,
    AffineSpace,
};
use trivspec_core::dmat::DMatrix;
use trivspec_core::generic_matrix::{alternator_catcher_check, flanders_atkinson_check, random_compression_space};
use trivspec_core::intransitivity::{is_deeply_intransitive, verify_atkinson_bounds};
use trivspec_core::operator_space::{alpha, socle, OperatorSpace};
use trivspec_core::oracle::{exhaustive_max_trivspec, plain_subspaces_with, random_dims, random_space_fuzzer, Property};
use trivspec_core::trivial_spectrum::{
    classify_blocks, classify_optimal, construct_sh, construct_triangular_model, has_trivial_spectrum,
    kernel_of_functional, solve_equivalence_scalar, twisted_sh, unit_free_hyperplane, verify_equivalence_certificate,
    BlockKind, SpectrumOptions,
};
use trivspec_core::verdict::Verdict;
use trivspec_core::{Algebra, Error, FMat, FSubspace, Field, QuadForm, QuadTag, QuadraticTypeProfile};

const KNOWN_FAILING: &[usize] = &[4, 5, 9];
const BUDGET: u64 = 1 << 24;

/// (number, name, time limit in seconds, check)
type Criterion = (usize, &'static str, u64, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn arc(a: Algebra) -> Arc<Algebra> {
    Arc::new(a)
}

fn fp(p: u64) -> Arc<Algebra> {
    arc(Algebra::base(Field::prime(p).unwrap()))
}

fn fq(p: u64, k: usize) -> Arc<Algebra> {
    arc(Algebra::finite_field(p, k).unwrap())
}

/// n(d−1) + d·n(n−1)/2, written out independently of the library.
fn alpha_formula(n: u64, d: u64) -> u64 {
    n * (d - 1) + d * n * n.saturating_sub(1) / 2
}

/// x ↦ x^q on a finite field algebra, by repeated multiplication.
fn frobenius(alg: &Algebra, x: &[trivspec_core::Scalar], q: u64) -> Vec<trivspec_core::Scalar> {
    let mut y = alg.one();
    for _ in 0..q {
        y = alg.mul(&y, x);
    }
    y
}

fn sigma_is_frobenius(alg: &Algebra, profile: &QuadraticTypeProfile) -> bool {
    let f = alg.field;
    let q = f.characteristic();
    (0..alg.cardinality().unwrap()).all(|i| {
        let x = alg.element(i);
        profile.apply_sigma(&f, &x) == frobenius(alg, &x, q)
    })
}

/// Elements with a nonzero fixed vector, out of all elements, by F-rank of M − I.
fn count_fixed(s: &OperatorSpace) -> (u64, u64) {
    let f = s.alg.field;
    let q = f.cardinality().unwrap();
    let dim = s.dim();
    let total = q.pow(dim as u32);
    let mut hits = 0;
    for idx in 0..total {
        let mut c = Vec::with_capacity(dim);
        let mut r = idx;
        for _ in 0..dim {
            c.push(f.element(r % q));
            r /= q;
        }
        let m = s.combination(&c);
        let fr = m.to_frep();
        let id = FMat::identity(&f, fr.rows);
        if fr.sub(&f, &id).rank(&f) < fr.rows {
            hits += 1;
        }
    }
    (hits, total)
}

fn c1_alpha_identity() -> Outcome {
    let mut checked = 0;
    for d in 1..=8u64 {
        for m in 0..=20u64 {
            for n in 0..=20u64 {
                if alpha(m + n, d) != alpha(m, d) + alpha(n, d) + m * n * d || alpha(n, d) != alpha_formula(n, d) {
                    return outcome(false, format!("fails at m={m} n={n} d={d}"));
                }
                checked += 1;
            }
        }
    }
    outcome(true, format!("{checked} triples"))
}

fn c2_constructors() -> Outcome {
    let backends: Vec<(&str, Arc<Algebra>)> = vec![
        ("F_3", fp(3)),
        ("F_5", fp(5)),
        ("F_25", fq(5, 2)),
        ("Q", arc(Algebra::base(Field::Rationals))),
        ("H/Q", arc(Algebra::hamilton())),
        ("Q(i)/Q", arc(Algebra::gaussian_rationals())),
        ("F_2(s)(t)", arc(Algebra::hyper_radicial_f2s())),
    ];
    let mut r = rng(2);
    let mut checked = 0;
    for (name, alg) in &backends {
        let d = alg.d;
        let max_n = match d {
            1 => 3,
            _ => 2,
        };
        let profile = alg.standard_profile().unwrap();
        for n in 1..=max_n {
            let want = alpha_formula(n as u64, d as u64) as usize;
            let tri = construct_triangular_model(alg, &vec![unit_free_hyperplane(alg); n]).unwrap();
            let sh = construct_sh(alg, n, &profile).unwrap();
            let p = DMatrix::random_invertible(alg, n, &mut r);
            let tw = twisted_sh(&p, &profile).unwrap();
            for (what, s) in [("triangular", &tri), ("sh", &sh), ("twisted_sh", &tw)] {
                if s.dim() != want {
                    return outcome(false, format!("{what} over {name}, n={n}: dim {} ≠ {want}", s.dim()));
                }
                checked += 1;
            }
        }
    }
    outcome(true, format!("{checked} constructions at dimension α"))
}

/// Number of k-dimensional subspaces of F_q^m.
fn gaussian_binomial(q: u64, m: u32, k: u32) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= q.pow(m - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

fn c3_oracle_max() -> Outcome {
    let cases = [("Mat_2(F_3)", fp(3), 2), ("Mat_2(F_2)", fp(2), 2), ("Mat_1(F_9)", fq(3, 2), 1), ("Mat_1(F_4)", fq(2, 2), 1)];
    let mut parts = Vec::new();
    for (name, alg, n) in cases {
        let r = exhaustive_max_trivspec(&alg, n, BUDGET).unwrap();
        let want = alpha_formula(n as u64, alg.d as u64) as usize;
        if r.max != 1 || want != 1 {
            return outcome(false, format!("{name}: max {} (α = {want})", r.max));
        }
        parts.push(format!("{name} max 1"));
    }
    let (total, hits) = plain_subspaces_with(&fp(5), 2, 2, Property::TrivialSpectrum, BUDGET).unwrap();
    let expected_total = gaussian_binomial(5, 4, 2) as usize;
    let pass = total == 806 && expected_total == 806 && hits.is_empty();
    parts.push(format!("Mat_2(F_5): {total} planes, {} trivial-spectrum", hits.len()));
    outcome(pass, parts.join("; "))
}

fn c4_sh_spectrum() -> Outcome {
    let alg = fq(5, 2);
    let profile = alg.standard_profile().unwrap();
    let sh = construct_sh(&alg, 2, &profile).unwrap();
    let opts = SpectrumOptions { budget: BUDGET, ..SpectrumOptions::default() };
    let v = has_trivial_spectrum(&sh, &opts).unwrap();
    let (hits, total) = count_fixed(&sh);
    let p = DMatrix::random_invertible(&alg, 2, &mut rng(4));
    let tw = twisted_sh(&p, &profile).unwrap();
    let vt = has_trivial_spectrum(&tw, &opts).unwrap();
    let (thits, ttotal) = count_fixed(&tw);
    let pass = hits == 0 && thits == 0 && v.is_certified() && vt.is_certified();
    let witness = match &v {
        Verdict::Refuted { witness } => witness.to_string(),
        _ => String::new(),
    };
    outcome(
        pass,
        format!(
            "SH_2(F_25): {hits}/{total} elements fix a nonzero vector ({}); random twisted: {thits}/{ttotal} ({}); witness {witness}",
            v.tag(),
            vt.tag()
        ),
    )
}

fn c5_classification() -> Outcome {
    let alg = fq(5, 2);
    let pr = alg.standard_profile().unwrap();
    let opts = SpectrumOptions { budget: BUDGET, ..SpectrumOptions::default() };
    let mut r = rng(5);
    let (mut full, mut without_gate, mut refused) = (0, 0, 0);
    let mut first_err = String::new();
    for _ in 0..50 {
        let p = DMatrix::random_invertible(&alg, 2, &mut r);
        let c = DMatrix::random_invertible(&alg, 2, &mut r);
        let s = twisted_sh(&p, &pr).unwrap().conjugate(&c).unwrap();
        let gated = classify_optimal(&s, None, &opts);
        let rep = match gated {
            Ok(rep) => Some(rep),
            Err(e) => {
                refused += 1;
                if first_err.is_empty() {
                    first_err = e.to_string();
                }
                None
            }
        };
        let ungated = match &rep {
            Some(rep) => rep.clone(),
            None => classify_blocks(&s, None, Verdict::unknown("not checked"), &opts).unwrap(),
        };
        let ok = ungated.partition == [2] && alternator_space(&s).len() == 1 && {
            let BlockKind::QuadraticType { profile, p: prec, .. } = &ungated.blocks[0].kind else {
                unreachable!("size-2 block")
            };
            let q = c.inverse().unwrap().mul(&ungated.basis_change);
            profile.tag == QuadTag::SeparableQuadratic
                && sigma_is_frobenius(&alg, profile)
                && solve_equivalence_scalar(&p, prec, &q, &pr)
                    .unwrap()
                    .is_some_and(|k| verify_equivalence_certificate(&p, prec, &k, &q, &pr).unwrap())
        };
        if ok {
            without_gate += 1;
            if rep.is_some() {
                full += 1;
            }
        }
    }
    outcome(
        full == 50,
        format!(
            "{full}/50 classified; {refused}/50 refused by the spectrum hypothesis ({first_err}); \
             without that gate {without_gate}/50 recover tag, dim Alt 1, Frobenius σ and the certificate"
        ),
    )
}

/// A random F-hyperplane of D avoiding 1.
fn random_unit_free(alg: &Algebra, r: &mut ChaCha8Rng) -> FSubspace {
    let f = alg.field;
    loop {
        let phi: Vec<_> = (0..alg.d).map(|_| f.random(r)).collect();
        let at_one = f.sum(phi.iter().zip(&alg.unit).map(|(a, b)| f.mul(a, b)).collect::<Vec<_>>().iter());
        if !f.is_zero(&at_one) {
            return kernel_of_functional(alg, &phi);
        }
    }
}

fn c6_nonquadratic() -> Outcome {
    let alg = fq(7, 3);
    let opts = SpectrumOptions { budget: BUDGET, ..SpectrumOptions::default() };
    let mut r = rng(6);
    let runs = 5;
    for i in 0..runs {
        let hs = vec![random_unit_free(&alg, &mut r), random_unit_free(&alg, &mut r)];
        let c = DMatrix::random_invertible(&alg, 2, &mut r);
        let s = construct_triangular_model(&alg, &hs).unwrap().conjugate(&c).unwrap();
        let rep = match classify_optimal(&s, None, &opts) {
            Ok(rep) => rep,
            Err(e) => return outcome(false, format!("model {i}: {e}")),
        };
        if rep.partition != [1, 1] || rep.block_tags() != ["hyperplane", "hyperplane"] || !rep.verdict.is_certified() {
            return outcome(false, format!("model {i}: partition {:?}, tags {:?}", rep.partition, rep.block_tags()));
        }
    }
    outcome(true, format!("{runs} conjugated models over F_343/F_7 split as 1+1 hyperplane blocks"))
}

fn c7_intransitivity() -> Outcome {
    let mut r = rng(7);
    let mut passed = 0;
    let mut total = 0;
    let mut failures = Vec::new();
    let configs: Vec<(Arc<Algebra>, usize)> =
        (0..20).map(|i| (fp(5), 1 + i % 3)).chain((0..20).map(|_| (fq(5, 2), 2))).collect();
    for (alg, n) in configs {
        total += 1;
        let profile = alg.standard_profile().unwrap();
        let p = DMatrix::random_invertible(&alg, n, &mut r);
        let b = gram_from_sesquilinear(&p, &profile);
        let a = alternating_maps(&alg, n, n, &b, true).unwrap();
        let want = alpha_formula(n as u64, alg.d as u64) as usize;
        // exhaustive enumeration is reported as plain `certified`
        let deep = matches!(is_deeply_intransitive(&a, BUDGET), Verdict::Certified { .. });
        let alt = alternator_space(&a).len();
        let atk = verify_atkinson_bounds(&a, BUDGET).map(|rep| rep.all_hold());
        if a.dim() == want && deep && alt == 1 && atk == Ok(true) {
            passed += 1;
        } else {
            failures.push(format!("{} n={n}: dim {} deep {deep} alt {alt} atkinson {atk:?}", alg.name, a.dim()));
        }
    }
    let mut detail = format!("{passed}/{total} spaces A_b (20 over F_5 with n ≤ 3, 20 over F_25 with n = 2)");
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first failure {f}"));
    }
    outcome(passed == total, detail)
}

fn c8_generic() -> Outcome {
    let mut checked = 0;
    let mut seed = 0;
    let shapes: [(Arc<Algebra>, usize, usize); 6] =
        [(fp(5), 2, 2), (fp(5), 3, 2), (fp(5), 2, 3), (fq(5, 2), 2, 1), (fq(5, 2), 1, 2), (fp(5), 3, 3)];
    'outer: loop {
        for (alg, n, p) in &shapes {
            seed += 1;
            let k = random_dims(1, 1, 4, seed)[0];
            let s = random_space_fuzzer(alg, *n, *p, k, 1, seed).remove(0);
            if !s.is_target_reduced() {
                continue;
            }
            let rep = alternator_catcher_check(&s).unwrap();
            if rep.alt_dim != rep.catch_dim || !rep.round_trip {
                return outcome(false, format!("catch {} vs Alt {} on {}×{} over {}", rep.catch_dim, rep.alt_dim, n, p, alg.name));
            }
            checked += 1;
            if checked == 30 {
                break 'outer;
            }
        }
    }
    let f = Field::prime(7).unwrap();
    let mut r = rng(8);
    for i in 0..50 {
        let (n, p) = (2 + i % 3, 2 + (i / 3) % 3);
        let rk = 1 + i % n.min(p);
        let mats = random_compression_space(&f, n, p, rk, 1 + i % 4, &mut r);
        if let Err(e) = flanders_atkinson_check(&f, &mats, rk, &mut r) {
            return outcome(false, format!("compression space {i}: {e}"));
        }
    }
    outcome(true, "30/30 catcher dimensions match; 50/50 compression spaces pass")
}

fn c9_affine() -> Outcome {
    let f7 = fp(7);
    let a = build_affine_minrank(&f7, 3, 3, 2).unwrap();
    let v = a.verify_min_rank(2, BUDGET, 0, 0).unwrap();
    let part_a = a.codim() == 3 && a.dim() == 6 && v.is_certified();
    let alg = fq(5, 2);
    let profile = alg.standard_profile().unwrap();
    let ps = [DMatrix::identity(&alg, 2)];
    let part_b = match build_affine_nonsingular(&ps, &profile, BUDGET) {
        Ok(aff) => {
            let v = aff.verify_nonsingular(BUDGET, 0, 0).unwrap();
            (v.is_certified(), format!("nonsingular space: {}", v.tag()))
        }
        Err(e) => {
            // the space the construction would return: I + SH_2(F_25)
            let sh = construct_sh(&alg, 2, &profile).unwrap();
            let plain = AffineSpace::new(DMatrix::identity(&alg, 2), sh).unwrap();
            let v = plain.verify_nonsingular(BUDGET, 0, 0).unwrap();
            let w = match &v {
                Verdict::Refuted { witness } => witness.to_string(),
                _ => v.tag().to_string(),
            };
            (false, format!("construction refused ({e}); I + SH_2(F_25) has a singular element {w}"))
        }
    };
    outcome(
        part_a && part_b.0,
        format!("min-rank (3,3,2) over F_7: codim {}, {} over 7^6; {}", a.codim(), v.tag(), part_b.1),
    )
}

fn c10_hermitian_suite() -> Outcome {
    let gauss = arc(Algebra::gaussian_rationals());
    let ham = arc(Algebra::hamilton());
    let pg = gauss.standard_profile().unwrap();
    let ph = ham.standard_profile().unwrap();
    let hg = hermitian_space(&gauss, 2, &pg).unwrap().dim();
    let hh = hermitian_space(&ham, 2, &ph).unwrap().dim();
    if hg != 4 || hh != 6 {
        return outcome(false, format!("H_2 dims {hg}, {hh}"));
    }
    for (alg, p) in [(&gauss, &pg), (&ham, &ph)] {
        for n in 1..=3 {
            let c = orthogonal_complement(&hermitian_space(alg, n, p).unwrap()).unwrap();
            let minus_one = alg.field.from_i64(-1);
            if c != skew_hermitian_space(alg, n, p).unwrap() || c.basis_matrices().iter().any(|m| m.star(p) != m.scale(&minus_one)) {
                return outcome(false, format!("complement of H_{n} over {} is not skew-Hermitian", alg.name));
            }
        }
    }
    let mut certified = 0;
    for (alg, n) in [(fp(3), 2), (fp(5), 2), (fq(3, 2), 2), (fq(5, 2), 1), (fp(7), 2)] {
        let p = alg.standard_profile().unwrap();
        let h = hermitian_space(&alg, n, &p).unwrap();
        let mut candidates = vec![h.clone(), OperatorSpace::full(&alg, n, n)];
        for (i, extra) in random_space_fuzzer(&alg, n, n, 2, 6, 10 + n as u64).into_iter().enumerate() {
            candidates.push(if i % 2 == 0 { h.sum(&extra) } else { extra });
        }
        for s in candidates {
            if !has_full_rank1_idempotent_property(&s, BUDGET, 0, 0).unwrap().is_certified() {
                continue;
            }
            certified += 1;
            let c = orthogonal_complement(&s).unwrap();
            let v = has_trivial_spectrum(&c, &SpectrumOptions { budget: BUDGET, ..SpectrumOptions::default() }).unwrap();
            if !v.is_certified() {
                return outcome(false, format!("complement over {} n={n}: {}", alg.name, v.tag()));
            }
        }
    }
    let dm = diag_model_c(&gauss, 3).unwrap();
    let mut r = rng(10);
    let sampled_ok = (0..200).all(|_| dm.random_element(&mut r).is_semisimple().unwrap());
    if dm.dim() != 10 || !sampled_ok {
        return outcome(false, format!("diagonal model: dim {}, 200 samples semisimple {sampled_ok}", dm.dim()));
    }
    let f5 = fp(5);
    let mut g = FMat::zeros(&f5.field, 2, 2);
    g.set(0, 0, f5.field.from_i64(1));
    g.set(1, 1, f5.field.from_i64(2));
    let sb = semisimple_space_sb(&f5, &g, BUDGET).unwrap();
    let ss = all_semisimple(&sb, BUDGET).unwrap();
    if sb.dim() != 3 || !ss.is_certified() {
        return outcome(false, format!("S_b: dim {}, {}", sb.dim(), ss.tag()));
    }
    let mut mt = Vec::new();
    for (q, n) in [(2, 2), (3, 2)] {
        match motzkin_taussky_finite(q, n, BUDGET) {
            Ok(rep) if rep.hypothesis_pairs > 0 => mt.push(format!("({q},{n}): {} pencils", rep.hypothesis_pairs)),
            Ok(_) => return outcome(false, format!("({q},{n}): no diagonalisable pencils")),
            Err(e) => return outcome(false, format!("({q},{n}): {e}")),
        }
    }
    outcome(
        true,
        format!(
            "H_2 dims 4, 6; complements skew-Hermitian; {certified} idempotent-property spaces with trivial complement; \
             diagonal model dim 10; S_b dim 3 all semisimple; commuting checks {}",
            mt.join(", ")
        ),
    )
}

fn c11_socle() -> Outcome {
    let mut r = rng(11);
    let mut ok = 0;
    let mut total = 0;
    for i in 0..100 {
        let alg = if i % 2 == 0 { fq(3, 2) } else { fq(5, 2) };
        let f = alg.field;
        let n = 1 + (i / 2) % 3;
        let dn = n * alg.d;
        let phi = loop {
            let phi: Vec<_> = (0..dn).map(|_| f.random(&mut r)).collect();
            if phi.iter().any(|x| !f.is_zero(x)) {
                break phi;
            }
        };
        let h = FSubspace::span(&f, dn, &FMat::from_rows(dn, vec![phi]).kernel(&f));
        let s = socle(&alg, n, &h);
        total += 1;
        if s.dim_d() == n - 1 && h.contains_space(&f, &s.fspace) {
            ok += 1;
        }
    }
    outcome(ok == total, format!("{ok}/{total} hyperplanes"))
}

fn c12_composition() -> Outcome {
    let f25 = fq(5, 2);
    let cases: Vec<(&str, Arc<Algebra>, QuadTag)> = vec![
        ("F_25/F_5", f25.clone(), QuadTag::SeparableQuadratic),
        ("H/Q", arc(Algebra::hamilton()), QuadTag::Quaternion),
        ("Q(i)/Q", arc(Algebra::gaussian_rationals()), QuadTag::SeparableQuadratic),
        ("F_2(s)(t)", arc(Algebra::hyper_radicial_f2s()), QuadTag::HyperRadicial),
    ];
    for (name, alg, tag) in &cases {
        let f = alg.field;
        let q = alg.standard_profile().unwrap().q;
        let got = match alg.classify_composition_form(&q, BUDGET) {
            Ok(p) => p,
            Err(e) => return outcome(false, format!("{name}: {e}")),
        };
        // σ is the identity on F·1 and, away from char 2, negates trace-zero elements
        let sigma_ok = match tag {
            QuadTag::HyperRadicial => (0..alg.d).all(|k| got.apply_sigma(&f, &alg.basis_elem(k)) == alg.basis_elem(k)),
            _ if f.is_finite() => sigma_is_frobenius(alg, &got),
            _ => {
                got.apply_sigma(&f, &alg.one()) == alg.one()
                    && (1..alg.d).all(|k| got.apply_sigma(&f, &alg.basis_elem(k)) == alg.neg(&alg.basis_elem(k)))
            }
        };
        if got.tag != *tag || !sigma_ok {
            return outcome(false, format!("{name}: tag {:?}, σ correct {sigma_ok}", got.tag));
        }
    }
    let f = f25.field;
    let q = f25.standard_profile().unwrap().q;
    let mut coeffs = q.coeffs.clone();
    coeffs[1] = f.add(&coeffs[1], &f.one());
    let perturbed = QuadForm { d: q.d, coeffs };
    match f25.classify_composition_form(&perturbed, BUDGET) {
        Err(Error::NotMultiplicative(_)) => outcome(true, "4/4 norm forms classified; perturbed F_25 form rejected"),
        other => outcome(false, format!("perturbed form: {other:?}")),
    }
}

fn cli(args: &[&str], threads: Option<&str>) -> (Option<i32>, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_trivspec"));
    cmd.arg("--deterministic").args(args);
    if let Some(t) = threads {
        cmd.env("RAYON_NUM_THREADS", t);
    }
    let out = cmd.output().expect("trivspec runs");
    (out.status.code(), out.stdout)
}

fn c13_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("trivspec-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let tw = dir.join("twisted.json");
    let aff = dir.join("affine.json");
    let (_, out) = cli(&["--seed", "13", "construct", "twisted-sh", "--field", "fp:5", "--degree", "2", "--n", "2", "--unchecked"], None);
    std::fs::write(&tw, out).unwrap();
    let (_, out) = cli(&["construct", "affine-minrank", "--field", "fp:7", "--n", "3", "--p", "3", "--r", "2"], None);
    std::fs::write(&aff, out).unwrap();
    let (tw, aff) = (tw.to_str().unwrap().to_string(), aff.to_str().unwrap().to_string());
    let commands: Vec<Vec<&str>> = vec![
        vec!["search", "maxdim-trivspec", "--field", "fp:3", "--degree", "1", "--n", "2"],
        vec!["construct", "twisted-sh", "--field", "fp:5", "--degree", "2", "--n", "2", "--unchecked"],
        vec!["verify", "spectrum", "--in", &tw],
        vec!["verify", "deep-intransitive", "--in", &tw],
        vec!["verify", "atkinson", "--in", &tw],
        vec!["classify", "optimal", "--in", &tw, "--assume-spectrum"],
        vec!["verify", "minrank", "--in", &aff, "--r", "2"],
        vec!["generic", "fa-check", "--field", "fp:7", "--r", "2"],
        vec!["generic", "rank", "--in", &tw],
        vec!["report", "bundle", "--in", &tw],
    ];
    let mut runs = 0;
    for args in &commands {
        for seed in ["1", "99"] {
            let mut full = vec!["--seed", seed];
            full.extend_from_slice(args);
            let a = cli(&full, None);
            let b = cli(&full, None);
            let c = cli(&full, Some("1"));
            runs += 3;
            if a != b || a != c {
                let _ = std::fs::remove_dir_all(&dir);
                return outcome(false, format!("output differs for {full:?}"));
            }
            if a.0 == Some(3) || a.0 == Some(4) {
                let _ = std::fs::remove_dir_all(&dir);
                return outcome(false, format!("{full:?} exited with {:?}", a.0));
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    outcome(true, format!("{} commands × 2 seeds byte-identical over {runs} runs, also single-threaded", commands.len()))
}

fn main() {
    let strict = std::env::var_os("TRIVSPEC_ACCEPTANCE_STRICT").is_some();
    let criteria: Vec<Criterion> = vec![
        (1, "alpha identity", 1, c1_alpha_identity),
        (2, "constructor dimensions", 10, c2_constructors),
        (3, "oracle maximum dimension", 60, c3_oracle_max),
        (4, "exhaustive spectrum of SH_2(F_25)", 10, c4_sh_spectrum),
        (5, "classification round trip over F_25", 120, c5_classification),
        (6, "non-quadratic flag recovery over F_343", 120, c6_nonquadratic),
        (7, "intransitivity of A_b", 180, c7_intransitivity),
        (8, "generic matrices and compression spaces", 120, c8_generic),
        (9, "affine min-rank and nonsingular spaces", 120, c9_affine),
        (10, "Hermitian and semisimple suite", 180, c10_hermitian_suite),
        (11, "socle of hyperplanes", 30, c11_socle),
        (12, "composition classifier", 10, c12_composition),
        (13, "CLI determinism", 600, c13_determinism),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (id, name, limit, run) in &criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let pass = res.pass && in_time;
        let timing = format!("{:.2}s / {limit}s", elapsed.as_secs_f64());
        let known = KNOWN_FAILING.contains(id);
        println!(
            "criterion {id:>2} {} [{timing}] {name}: {}{}",
            if pass { "PASS" } else { "FAIL" },
            res.detail,
            if in_time { "" } else { " (time limit exceeded)" }
        );
        if pass {
            passed += 1;
        }
        if pass == known || (strict && !pass) {
            unexpected.push(*id);
        }
    }
    println!("acceptance: {passed}/{} criteria pass; expected failures {KNOWN_FAILING:?}", criteria.len());
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
