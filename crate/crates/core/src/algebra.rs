//! Structure-constant division algebras over a base field, their standard
//! involutions, and the composition-form classifier.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{fpoly, Field, Scalar};
use crate::fmat::{FMat, FSubspace};
use crate::fp;

/// Coordinates of an algebra element in the fixed F-basis.
pub type Elem = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// D = F.
    Base,
    /// F[t]/(t² − βt − γ).
    Quadratic { beta: Scalar, gamma: Scalar },
    /// (a, b / F): i² = a, j² = b, ij = −ji = k.
    Quaternion { a: Scalar, b: Scalar },
    /// F[t]/(t² − c) in characteristic 2.
    HyperRadicial { c: Scalar },
    /// F_p[t]/(f) for an irreducible f of degree ≥ 3.
    Extension,
    /// Arbitrary structure constants.
    Raw,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub field: Field,
    pub d: usize,
    /// c[(i*d + j)*d + k] is the coefficient of e_k in e_i·e_j.
    pub structure: Vec<Scalar>,
    pub unit: Elem,
    pub family: Family,
    pub name: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuadTag {
    Trivial,
    SeparableQuadratic,
    Quaternion,
    HyperRadicial,
}

impl QuadTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuadTag::Trivial => "trivial",
            QuadTag::SeparableQuadratic => "separable-quadratic",
            QuadTag::Quaternion => "quaternion",
            QuadTag::HyperRadicial => "hyper-radicial",
        }
    }

    pub fn parse(s: &str) -> Option<QuadTag> {
        Some(match s {
            "trivial" => QuadTag::Trivial,
            "separable-quadratic" => QuadTag::SeparableQuadratic,
            "quaternion" => QuadTag::Quaternion,
            "hyper-radicial" => QuadTag::HyperRadicial,
            _ => return None,
        })
    }
}

/// q(x) = Σ_{i≤j} coeffs[i*d + j]·x_i·x_j. Entries below the diagonal are
/// kept at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    pub d: usize,
    pub coeffs: Vec<Scalar>,
}

impl QuadForm {
    pub fn zero(f: &Field, d: usize) -> QuadForm {
        QuadForm { d, coeffs: vec![f.zero(); d * d] }
    }

    pub fn diagonal(f: &Field, diag: &[Scalar]) -> QuadForm {
        let d = diag.len();
        let mut q = QuadForm::zero(f, d);
        for (i, c) in diag.iter().enumerate() {
            q.coeffs[i * d + i] = c.clone();
        }
        q
    }

    /// From an arbitrary square matrix G: q(x) = xᵀGx.
    pub fn from_gram(f: &Field, g: &FMat) -> QuadForm {
        let d = g.rows;
        let mut q = QuadForm::zero(f, d);
        for i in 0..d {
            q.coeffs[i * d + i] = g.get(i, i).clone();
            for j in i + 1..d {
                q.coeffs[i * d + j] = f.add(g.get(i, j), g.get(j, i));
            }
        }
        q
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        &self.coeffs[a * self.d + b]
    }

    pub fn eval(&self, f: &Field, x: &[Scalar]) -> Scalar {
        let mut acc = f.zero();
        for i in 0..self.d {
            for j in i..self.d {
                let c = &self.coeffs[i * self.d + j];
                if f.is_zero(c) {
                    continue;
                }
                acc = f.add(&acc, &f.mul(c, &f.mul(&x[i], &x[j])));
            }
        }
        acc
    }

    /// Gram matrix of the polar form b(x,y) = q(x+y) − q(x) − q(y).
    pub fn polar(&self, f: &Field) -> FMat {
        let d = self.d;
        let mut b = FMat::zeros(f, d, d);
        for i in 0..d {
            b.set(i, i, f.add(self.get(i, i), self.get(i, i)));
            for j in i + 1..d {
                b.set(i, j, self.get(i, j).clone());
                b.set(j, i, self.get(i, j).clone());
            }
        }
        b
    }

    pub fn is_diagonal(&self, f: &Field) -> bool {
        (0..self.d).all(|i| (i + 1..self.d).all(|j| f.is_zero(self.get(i, j))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticTypeProfile {
    pub tag: QuadTag,
    /// σ acting on coordinate columns.
    pub sigma: FMat,
    /// The linear form e as a row.
    pub e: Vec<Scalar>,
    /// Norm form x ↦ x·σ(x).
    pub q: QuadForm,
}

impl QuadraticTypeProfile {
    pub fn apply_sigma(&self, f: &Field, x: &[Scalar]) -> Elem {
        self.sigma.mul_vec(f, x)
    }

    pub fn apply_e(&self, f: &Field, x: &[Scalar]) -> Scalar {
        crate::fmat::dot(f, &self.e, x)
    }
}

/// Outcome of an anisotropy test for a quadratic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Anisotropy {
    Certified(String),
    Isotropic(Vec<Scalar>),
    Unknown(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisionStatus {
    Certified,
    CertifiedProbabilistic,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionReport {
    pub status: DivisionStatus,
    pub method: String,
    pub elements_checked: u64,
}

impl Algebra {
    pub fn from_structure(field: Field, d: usize, structure: Vec<Scalar>, unit: Elem, name: &str) -> Result<Algebra> {
        if structure.len() != d * d * d || unit.len() != d || d == 0 {
            return Err(Error::Shape(format!("structure constants for degree {d}")));
        }
        Ok(Algebra { field, d, structure, unit, family: Family::Raw, name: name.to_string() })
    }

    pub fn base(field: Field) -> Algebra {
        Algebra {
            field,
            d: 1,
            structure: vec![field.one()],
            unit: vec![field.one()],
            family: Family::Base,
            name: field.name(),
        }
    }

    /// F[t]/(t² − βt − γ) in the basis (1, t).
    pub fn quadratic(field: Field, beta: Scalar, gamma: Scalar) -> Algebra {
        let f = field;
        let (o, z) = (f.one(), f.zero());
        let mut c = vec![z.clone(); 8];
        let mut put = |i: usize, j: usize, v: [Scalar; 2]| {
            c[(i * 2 + j) * 2] = v[0].clone();
            c[(i * 2 + j) * 2 + 1] = v[1].clone();
        };
        put(0, 0, [o.clone(), z.clone()]);
        put(0, 1, [z.clone(), o.clone()]);
        put(1, 0, [z.clone(), o.clone()]);
        put(1, 1, [gamma.clone(), beta.clone()]);
        let name = format!("{}[t]/(t^2-({})t-({}))", f.name(), f.format(&beta), f.format(&gamma));
        Algebra { field, d: 2, structure: c, unit: vec![o, z], family: Family::Quadratic { beta, gamma }, name }
    }

    pub fn hyper_radicial(field: Field, c: Scalar) -> Result<Algebra> {
        if field.characteristic() != 2 {
            return Err(Error::NotQuadraticType("hyper-radicial extensions need characteristic 2".into()));
        }
        let mut a = Algebra::quadratic(field, field.zero(), c.clone());
        a.name = format!("{}[t]/(t^2-{})", field.name(), field.format(&c));
        a.family = Family::HyperRadicial { c };
        Ok(a)
    }

    /// The quaternion algebra (a, b / F) in the basis (1, i, j, k).
    pub fn quaternion(field: Field, a: Scalar, b: Scalar) -> Result<Algebra> {
        let f = field;
        if f.characteristic() == 2 {
            return Err(Error::NotQuadraticType("quaternion algebras need characteristic ≠ 2".into()));
        }
        let z = f.zero();
        let mut c = vec![z.clone(); 64];
        let ab = f.mul(&a, &b);
        let mut put = |i: usize, j: usize, k: usize, v: Scalar| c[(i * 4 + j) * 4 + k] = v;
        for x in 0..4 {
            put(0, x, x, f.one());
            put(x, 0, x, f.one());
        }
        put(1, 1, 0, a.clone());
        put(2, 2, 0, b.clone());
        put(3, 3, 0, f.neg(&ab));
        put(1, 2, 3, f.one());
        put(2, 1, 3, f.neg(&f.one()));
        put(1, 3, 2, a.clone());
        put(3, 1, 2, f.neg(&a));
        put(2, 3, 1, f.neg(&b));
        put(3, 2, 1, b.clone());
        let name = format!("({},{}/{})", f.format(&a), f.format(&b), f.name());
        Ok(Algebra {
            field,
            d: 4,
            structure: c,
            unit: vec![f.one(), z.clone(), z.clone(), z],
            family: Family::Quaternion { a, b },
            name,
        })
    }

    /// Hamilton quaternions (−1, −1 / ℚ).
    pub fn hamilton() -> Algebra {
        let f = Field::Rationals;
        Algebra::quaternion(f, f.from_i64(-1), f.from_i64(-1)).unwrap()
    }

    /// ℚ(i) = ℚ[t]/(t² + 1).
    pub fn gaussian_rationals() -> Algebra {
        let f = Field::Rationals;
        Algebra::quadratic(f, f.zero(), f.from_i64(-1))
    }

    /// F₂(s)[t]/(t² − s).
    pub fn hyper_radicial_f2s() -> Algebra {
        let f = Field::RationalFunctions(2);
        Algebra::hyper_radicial(f, f.indeterminate().unwrap()).unwrap()
    }

    /// The field F_{p^k} as F_p[t]/(f) with a deterministic irreducible f:
    /// t² − (least non-residue) for odd p and k = 2, t² + t + 1 for p = 2,
    /// t^k − c with least suitable c when irreducible, otherwise the least
    /// irreducible monic polynomial in lexicographic order of coefficients.
    pub fn finite_field(p: u64, k: usize) -> Result<Algebra> {
        let field = Field::prime(p)?;
        if k == 0 {
            return Err(Error::Shape("degree must be positive".into()));
        }
        if k == 1 {
            return Ok(Algebra::base(field));
        }
        let modulus = choose_irreducible(p, k);
        if k == 2 {
            // t² = βt + γ  with modulus t² + m1 t + m0
            let beta = field.neg(&Scalar::Fp(modulus[1]));
            let gamma = field.neg(&Scalar::Fp(modulus[0]));
            let mut a = Algebra::quadratic(field, beta, gamma);
            a.name = format!("F_{}", p * p);
            return Ok(a);
        }
        let mut c = vec![field.zero(); k * k * k];
        for i in 0..k {
            for j in 0..k {
                let mut prod = vec![0u64; i + j + 1];
                prod[i + j] = 1;
                let (_, r) = fpoly::divrem(&prod, &modulus, p);
                for (l, &v) in r.iter().enumerate() {
                    c[(i * k + j) * k + l] = Scalar::Fp(v);
                }
            }
        }
        let mut unit = vec![field.zero(); k];
        unit[0] = field.one();
        Ok(Algebra {
            field,
            d: k,
            structure: c,
            unit,
            family: Family::Extension,
            name: format!("F_{}", fp::checked_pow(p, k).map(|x| x.to_string()).unwrap_or_default()),
        })
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.structure[(i * self.d + j) * self.d + k]
    }

    pub fn zero(&self) -> Elem {
        vec![self.field.zero(); self.d]
    }

    pub fn one(&self) -> Elem {
        self.unit.clone()
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn scalar(&self, s: &Scalar) -> Elem {
        self.unit.iter().map(|u| self.field.mul(u, s)).collect()
    }

    pub fn is_zero(&self, a: &[Scalar]) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Elem {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Scalar], b: &[Scalar]) -> Elem {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &[Scalar]) -> Elem {
        a.iter().map(|x| self.field.neg(x)).collect()
    }

    pub fn scale(&self, a: &[Scalar], s: &Scalar) -> Elem {
        a.iter().map(|x| self.field.mul(x, s)).collect()
    }

    /// Structure-constant product.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Elem {
        let f = &self.field;
        let d = self.d;
        let mut out = self.zero();
        for i in 0..d {
            if f.is_zero(&a[i]) {
                continue;
            }
            for j in 0..d {
                if f.is_zero(&b[j]) {
                    continue;
                }
                let ab = f.mul(&a[i], &b[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !f.is_zero(c) {
                        *o = f.mul_add(o, &ab, c);
                    }
                }
            }
        }
        out
    }

    fn check_len(&self, a: &[Scalar]) -> Result<()> {
        if a.len() != self.d {
            return Err(Error::DescriptorMismatch(format!(
                "element has {} coordinates, algebra has degree {}",
                a.len(),
                self.d
            )));
        }
        Ok(())
    }

    /// Checked product.
    pub fn elem_mul(&self, a: &[Scalar], b: &[Scalar]) -> Result<Elem> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.mul(a, b))
    }

    /// Left multiplication x ↦ a·x as a d×d matrix on coordinate columns.
    pub fn left_mat(&self, a: &[Scalar]) -> FMat {
        let f = &self.field;
        let d = self.d;
        let mut m = FMat::zeros(f, d, d);
        for i in 0..d {
            if f.is_zero(&a[i]) {
                continue;
            }
            for l in 0..d {
                for k in 0..d {
                    let v = f.mul_add(m.get(k, l), &a[i], self.c(i, l, k));
                    m.set(k, l, v);
                }
            }
        }
        m
    }

    /// Right multiplication x ↦ x·a.
    pub fn right_mat(&self, a: &[Scalar]) -> FMat {
        let f = &self.field;
        let d = self.d;
        let mut m = FMat::zeros(f, d, d);
        for j in 0..d {
            if f.is_zero(&a[j]) {
                continue;
            }
            for l in 0..d {
                for k in 0..d {
                    let v = f.mul_add(m.get(k, l), &a[j], self.c(l, j, k));
                    m.set(k, l, v);
                }
            }
        }
        m
    }

    pub fn inv(&self, a: &[Scalar]) -> Result<Elem> {
        self.check_len(a)?;
        if self.is_zero(a) {
            return Err(Error::ZeroInverse);
        }
        let l = self.left_mat(a);
        let x = l.solve(&self.field, &self.unit).ok_or_else(|| {
            Error::NotInvertible(format!("{} has singular left multiplication", self.format_elem(a)))
        })?;
        if self.mul(&x, a) != self.unit {
            return Err(Error::NotInvertible(format!("{} has no two-sided inverse", self.format_elem(a))));
        }
        Ok(x)
    }

    /// Tr_{D/F}(a): trace of x ↦ a·x.
    pub fn trace_td(&self, a: &[Scalar]) -> Scalar {
        self.left_mat(a).trace(&self.field)
    }

    /// The linear form dual to the unit in a basis (1, e_j, …) completed
    /// from the standard basis.
    pub fn unit_dual(&self) -> Vec<Scalar> {
        let f = &self.field;
        let mut cols = vec![self.unit.clone()];
        let mut span = FSubspace::span(f, self.d, &cols);
        for i in 0..self.d {
            let b = self.basis_elem(i);
            if !span.contains(f, &b) {
                cols.push(b);
                span = FSubspace::span(f, self.d, &cols);
            }
        }
        let m = FMat::from_cols(f, self.d, &cols);
        m.inverse(f).expect("basis").row(0).to_vec()
    }

    pub fn cardinality(&self) -> Option<u64> {
        self.field.cardinality().and_then(|q| fp::checked_pow(q, self.d))
    }

    /// Element with index `i` in lexicographic order of coordinate tuples
    /// (first coordinate most significant). Finite fields only.
    pub fn element(&self, i: u64) -> Elem {
        let q = self.field.cardinality().expect("finite field");
        let mut digits = vec![0u64; self.d];
        fp::digits_of(i, q, &mut digits);
        digits.into_iter().map(Scalar::Fp).collect()
    }

    pub fn random_elem<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        (0..self.d).map(|_| self.field.random(rng)).collect()
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let x = self.random_elem(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    pub fn format_elem(&self, a: &[Scalar]) -> String {
        let parts: Vec<String> = a.iter().map(|x| self.field.format(x)).collect();
        format!("[{}]", parts.join(", "))
    }

    pub fn check_associativity(&self) -> Result<()> {
        let d = self.d;
        for i in 0..d {
            for j in 0..d {
                let eij = self.mul(&self.basis_elem(i), &self.basis_elem(j));
                for k in 0..d {
                    let lhs = self.mul(&eij, &self.basis_elem(k));
                    let ejk = self.mul(&self.basis_elem(j), &self.basis_elem(k));
                    let rhs = self.mul(&self.basis_elem(i), &ejk);
                    if lhs != rhs {
                        return Err(Error::AssociativityViolation(format!("(e{i}, e{j}, e{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<()> {
        for i in 0..self.d {
            let e = self.basis_elem(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::UnitViolation(format!("fails on e{i}")));
            }
        }
        Ok(())
    }

    /// Associativity, unit, and (within budget) invertibility of every
    /// nonzero element.
    pub fn verify_division_algebra(&self, budget: u64) -> Result<DivisionReport> {
        self.check_associativity()?;
        self.check_unit()?;
        let f = &self.field;
        if let Some(card) = self.cardinality() {
            if card > budget {
                return Ok(DivisionReport {
                    status: DivisionStatus::BudgetExceeded,
                    method: format!("{card} elements exceed budget {budget}"),
                    elements_checked: 0,
                });
            }
            let p = f.characteristic();
            let mut scratch = Vec::new();
            for i in 1..card {
                let x = self.element(i);
                let raw = fp::to_raw(&self.left_mat(&x));
                scratch.clear();
                scratch.extend_from_slice(&raw);
                if fp::rank_in_place(p, &mut scratch, self.d, self.d) < self.d {
                    let y = self.left_mat(&x).kernel(f).remove(0);
                    return Err(Error::ZeroDivisorFound(format!(
                        "{} * {} = 0",
                        self.format_elem(&x),
                        self.format_elem(&y)
                    )));
                }
            }
            return Ok(DivisionReport {
                status: DivisionStatus::Certified,
                method: "exhaustive inversion".into(),
                elements_checked: card - 1,
            });
        }
        if self.d == 1 {
            return Ok(DivisionReport {
                status: DivisionStatus::Certified,
                method: "base field".into(),
                elements_checked: 0,
            });
        }
        if let Ok(profile) = self.standard_profile() {
            if let Anisotropy::Certified(m) = certify_anisotropic(f, &profile.q, budget) {
                return Ok(DivisionReport {
                    status: DivisionStatus::CertifiedProbabilistic,
                    method: format!("multiplicative norm form, anisotropy by {m}"),
                    elements_checked: 0,
                });
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..64 {
            let x = self.random_nonzero(&mut rng);
            if self.left_mat(&x).rank(f) < self.d {
                let y = self.left_mat(&x).kernel(f).remove(0);
                return Err(Error::ZeroDivisorFound(format!(
                    "{} * {} = 0",
                    self.format_elem(&x),
                    self.format_elem(&y)
                )));
            }
        }
        Ok(DivisionReport {
            status: DivisionStatus::BudgetExceeded,
            method: "no certificate over an infinite field; 64 random elements invertible".into(),
            elements_checked: 64,
        })
    }

    /// (σ, e, q) for the built-in families.
    pub fn standard_profile(&self) -> Result<QuadraticTypeProfile> {
        let f = &self.field;
        let (o, z) = (f.one(), f.zero());
        match &self.family {
            Family::Base => Ok(QuadraticTypeProfile {
                tag: QuadTag::Trivial,
                sigma: FMat::identity(f, 1),
                e: vec![o.clone()],
                q: QuadForm::diagonal(f, &[o]),
            }),
            Family::Raw | Family::Extension if self.d == 1 && self.unit == [o.clone()] => Ok(QuadraticTypeProfile {
                tag: QuadTag::Trivial,
                sigma: FMat::identity(f, 1),
                e: vec![o.clone()],
                q: QuadForm::diagonal(f, &[o]),
            }),
            Family::Quadratic { beta, gamma } => {
                if f.characteristic() == 2 && f.is_zero(beta) {
                    return hyper_radicial_profile(f, gamma);
                }
                let disc = f.add(&f.mul(beta, beta), &f.mul(&f.from_i64(4), gamma));
                if f.is_zero(&disc) {
                    return Err(Error::NotQuadraticType("inseparable quadratic outside characteristic 2".into()));
                }
                let sigma = FMat::from_rows(2, vec![vec![o.clone(), beta.clone()], vec![z.clone(), f.neg(&o)]]);
                let mut q = QuadForm::zero(f, 2);
                q.coeffs[0] = o.clone();
                q.coeffs[1] = beta.clone();
                q.coeffs[3] = f.neg(gamma);
                Ok(QuadraticTypeProfile {
                    tag: QuadTag::SeparableQuadratic,
                    sigma,
                    e: vec![f.from_i64(2), beta.clone()],
                    q,
                })
            }
            Family::Quaternion { a, b } => {
                if f.characteristic() == 2 {
                    return Err(Error::NotQuadraticType("quaternions in characteristic 2".into()));
                }
                let mut sigma = FMat::identity(f, 4);
                for i in 1..4 {
                    sigma.set(i, i, f.neg(&o));
                }
                let q = QuadForm::diagonal(f, &[o.clone(), f.neg(a), f.neg(b), f.mul(a, b)]);
                Ok(QuadraticTypeProfile {
                    tag: QuadTag::Quaternion,
                    sigma,
                    e: vec![f.from_i64(2), z.clone(), z.clone(), z],
                    q,
                })
            }
            Family::HyperRadicial { c } => {
                if f.characteristic() != 2 {
                    return Err(Error::NotQuadraticType("hyper-radicial family outside characteristic 2".into()));
                }
                hyper_radicial_profile(f, c)
            }
            Family::Raw | Family::Extension => Err(Error::NotQuadraticType(format!(
                "no built-in profile for {} of degree {}",
                self.name, self.d
            ))),
        }
    }

    /// The profile determined by a multiplicative anisotropic quadratic form.
    pub fn classify_composition_form(&self, q: &QuadForm, budget: u64) -> Result<QuadraticTypeProfile> {
        let f = &self.field;
        let d = self.d;
        if q.d != d || q.coeffs.len() != d * d {
            return Err(Error::NotQuadratic(format!("expected a form in {d} variables")));
        }
        if (0..d).any(|i| (0..i).any(|j| !f.is_zero(&q.coeffs[i * d + j]))) {
            return Err(Error::NotQuadratic("coefficients below the diagonal must vanish".into()));
        }
        if !self.is_multiplicative(q) {
            return Err(Error::NotMultiplicative(self.multiplicativity_witness(q, budget)));
        }
        match certify_anisotropic(f, q, budget) {
            Anisotropy::Certified(_) => {}
            Anisotropy::Isotropic(x) => {
                return Err(Error::Isotropic(format!("q({}) = 0", self.format_elem(&x))));
            }
            Anisotropy::Unknown(why) => return Err(Error::UnknownNonisotropy(why)),
        }
        let b = q.polar(f);
        if d == 1 {
            return Ok(QuadraticTypeProfile {
                tag: QuadTag::Trivial,
                sigma: FMat::identity(f, 1),
                e: vec![f.one()],
                q: q.clone(),
            });
        }
        if b.is_zero(f) {
            // Totally degenerate polar form: x² = q(x)·1, σ = id.
            if !self.squares_match(q) {
                return Err(Error::NotQuadraticType("x² ≠ q(x)·1 for a degenerate polar form".into()));
            }
            if d != 2 {
                return Err(Error::NotQuadraticType(format!(
                    "hyper-radicial profile only built for degree 2, got {d}"
                )));
            }
            return Ok(QuadraticTypeProfile {
                tag: QuadTag::HyperRadicial,
                sigma: FMat::identity(f, d),
                e: self.unit_dual(),
                q: q.clone(),
            });
        }
        // tr(x) = b(1, x), σ(x) = tr(x)·1 − x.
        let tr = b.vec_mul(f, &self.unit);
        let mut sigma = FMat::zeros(f, d, d);
        for k in 0..d {
            for m in 0..d {
                let mut v = f.mul(&self.unit[k], &tr[m]);
                if k == m {
                    v = f.sub(&v, &f.one());
                }
                sigma.set(k, m, v);
            }
        }
        let tag = match d {
            2 => QuadTag::SeparableQuadratic,
            4 => QuadTag::Quaternion,
            _ => return Err(Error::NotQuadraticType(format!("degree {d} carries no composition form"))),
        };
        let profile = QuadraticTypeProfile { tag, sigma, e: tr, q: q.clone() };
        if !self.norm_matches(&profile) {
            return Err(Error::NotQuadraticType("q(x)·1 ≠ x·σ(x)".into()));
        }
        Ok(profile)
    }

    /// q(xy) = q(x)q(y) as a polynomial identity in the coordinates of x, y.
    pub fn is_multiplicative(&self, q: &QuadForm) -> bool {
        let f = &self.field;
        let d = self.d;
        let mut poly: BTreeMap<[usize; 4], Scalar> = BTreeMap::new();
        let mut acc = |key: [usize; 4], v: Scalar| {
            let e = poly.entry(key).or_insert_with(|| f.zero());
            *e = f.add(e, &v);
        };
        let key = |i: usize, i2: usize, j: usize, j2: usize| [i.min(i2), i.max(i2), j.min(j2), j.max(j2)];
        for k in 0..d {
            for l in k..d {
                let qkl = q.get(k, l);
                if f.is_zero(qkl) {
                    continue;
                }
                for i in 0..d {
                    for j in 0..d {
                        let c1 = self.c(i, j, k);
                        if f.is_zero(c1) {
                            continue;
                        }
                        for i2 in 0..d {
                            for j2 in 0..d {
                                let c2 = self.c(i2, j2, l);
                                if f.is_zero(c2) {
                                    continue;
                                }
                                acc(key(i, i2, j, j2), f.mul(qkl, &f.mul(c1, c2)));
                            }
                        }
                    }
                }
            }
        }
        for a in 0..d {
            for b in a..d {
                for c in 0..d {
                    for e in c..d {
                        let v = f.mul(q.get(a, b), q.get(c, e));
                        if !f.is_zero(&v) {
                            acc([a, b, c, e], f.neg(&v));
                        }
                    }
                }
            }
        }
        poly.values().all(|v| f.is_zero(v))
    }

    fn multiplicativity_witness(&self, q: &QuadForm, budget: u64) -> String {
        let f = &self.field;
        let bad = |x: &Elem, y: &Elem| f.mul(&q.eval(f, x), &q.eval(f, y)) != q.eval(f, &self.mul(x, y));
        let render = |x: &Elem, y: &Elem| format!("x = {}, y = {}", self.format_elem(x), self.format_elem(y));
        if let Some(card) = self.cardinality() {
            if card.saturating_mul(card) <= budget {
                for i in 0..card {
                    for j in 0..card {
                        let (x, y) = (self.element(i), self.element(j));
                        if bad(&x, &y) {
                            return render(&x, &y);
                        }
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..10_000 {
            let (x, y) = (self.random_elem(&mut rng), self.random_elem(&mut rng));
            if bad(&x, &y) {
                return render(&x, &y);
            }
        }
        "polynomial identity fails; no small witness located".into()
    }

    fn squares_match(&self, q: &QuadForm) -> bool {
        let f = &self.field;
        let d = self.d;
        for k in 0..d {
            for a in 0..d {
                for b in a..d {
                    let mut v = if a == b {
                        self.c(a, a, k).clone()
                    } else {
                        f.add(self.c(a, b, k), self.c(b, a, k))
                    };
                    v = f.sub(&v, &f.mul(q.get(a, b), &self.unit[k]));
                    if !f.is_zero(&v) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// x·σ(x) = q(x)·1 as a polynomial identity.
    pub fn norm_matches(&self, p: &QuadraticTypeProfile) -> bool {
        let f = &self.field;
        let d = self.d;
        for k in 0..d {
            // coefficient of x_i x_m in (xσ(x))_k is Σ_j c_ijk S[j][m]
            let mut m2 = FMat::zeros(f, d, d);
            for i in 0..d {
                for m in 0..d {
                    let mut v = f.zero();
                    for j in 0..d {
                        v = f.mul_add(&v, self.c(i, j, k), p.sigma.get(j, m));
                    }
                    m2.set(i, m, v);
                }
            }
            let qk = QuadForm::from_gram(f, &m2);
            for a in 0..d {
                for b in a..d {
                    let want = f.mul(p.q.get(a, b), &self.unit[k]);
                    if *qk.get(a, b) != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether the F-bilinear Gram matrix of e(x·y) is invertible; this is
    /// the duality that makes e-lifts unique.
    pub fn duality_matrix(&self, e: &[Scalar]) -> FMat {
        let f = &self.field;
        let d = self.d;
        let mut t = FMat::zeros(f, d, d);
        for k in 0..d {
            for l in 0..d {
                let prod = self.mul(&self.basis_elem(l), &self.basis_elem(k));
                t.set(k, l, crate::fmat::dot(f, e, &prod));
            }
        }
        t
    }
}

fn hyper_radicial_profile(f: &Field, c: &Scalar) -> Result<QuadraticTypeProfile> {
    if f.is_zero(c) {
        return Err(Error::NotQuadraticType("t² = 0 is not a field".into()));
    }
    Ok(QuadraticTypeProfile {
        tag: QuadTag::HyperRadicial,
        sigma: FMat::identity(f, 2),
        e: vec![f.one(), f.zero()],
        q: QuadForm::diagonal(f, &[f.one(), c.clone()]),
    })
}

/// Anisotropy: exhaustive over finite fields within budget, Sylvester
/// definiteness over ℚ, leading-degree parity for diagonal forms over F_p(s).
pub fn certify_anisotropic(f: &Field, q: &QuadForm, budget: u64) -> Anisotropy {
    let d = q.d;
    match f {
        Field::Prime(p) => {
            let Some(card) = fp::checked_pow(*p, d).filter(|&c| c <= budget) else {
                return Anisotropy::Unknown(format!("{p}^{d} vectors exceed budget {budget}"));
            };
            let mut digits = vec![0u64; d];
            for i in 1..card {
                fp::digits_of(i, *p, &mut digits);
                let x: Vec<Scalar> = digits.iter().map(|&v| Scalar::Fp(v)).collect();
                if f.is_zero(&q.eval(f, &x)) {
                    return Anisotropy::Isotropic(x);
                }
            }
            Anisotropy::Certified("exhaustive enumeration".into())
        }
        Field::Rationals => {
            for i in 0..d {
                if f.is_zero(q.get(i, i)) {
                    let mut x = vec![f.zero(); d];
                    x[i] = f.one();
                    return Anisotropy::Isotropic(x);
                }
            }
            // Symmetric matrix S with q(x) = xᵀSx.
            let half = f.from_ratio(1, 2).unwrap();
            let mut s = FMat::zeros(f, d, d);
            for i in 0..d {
                s.set(i, i, q.get(i, i).clone());
                for j in i + 1..d {
                    let h = f.mul(q.get(i, j), &half);
                    s.set(i, j, h.clone());
                    s.set(j, i, h);
                }
            }
            let mut pos = true;
            let mut neg = true;
            for k in 1..=d {
                let mut minor = FMat::zeros(f, k, k);
                for i in 0..k {
                    for j in 0..k {
                        minor.set(i, j, s.get(i, j).clone());
                    }
                }
                let det = minor.det(f);
                let sign_pos = f.is_positive(&det).unwrap();
                let sign_neg = f.is_negative(&det).unwrap();
                pos &= sign_pos;
                neg &= if k % 2 == 1 { sign_neg } else { sign_pos };
            }
            if pos {
                Anisotropy::Certified("positive definite (Sylvester)".into())
            } else if neg {
                Anisotropy::Certified("negative definite (Sylvester)".into())
            } else {
                Anisotropy::Unknown("indefinite form over Q; no certificate".into())
            }
        }
        Field::RationalFunctions(_) => {
            if !q.is_diagonal(f) {
                return Anisotropy::Unknown("non-diagonal form over F_p(s)".into());
            }
            let mut nonzero = Vec::new();
            for i in 0..d {
                let c = q.get(i, i);
                if f.is_zero(c) {
                    let mut x = vec![f.zero(); d];
                    x[i] = f.one();
                    return Anisotropy::Isotropic(x);
                }
                nonzero.push(f.degree(c).unwrap());
            }
            match nonzero.as_slice() {
                [_] => Anisotropy::Certified("single nonzero square term".into()),
                [a, b] if (a - b).rem_euclid(2) == 1 => {
                    Anisotropy::Certified("leading degrees of different parity".into())
                }
                _ => Anisotropy::Unknown("no degree-parity certificate".into()),
            }
        }
    }
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    // Rabin-style: no common factor with t^(p^i) − t for i ≤ deg/2.
    let k = f.len() - 1;
    let mut xpow = vec![0u64, 1];
    for _ in 1..=k / 2 {
        // xpow = xpow^p mod f
        let mut r = vec![1u64];
        let mut base = xpow.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                r = fpoly::divrem(&fpoly::mul(&r, &base, p), f, p).1;
            }
            base = fpoly::divrem(&fpoly::mul(&base, &base, p), f, p).1;
            e >>= 1;
        }
        xpow = r;
        let diff = fpoly::sub(&xpow, &[0, 1], p);
        let g = fpoly::gcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn choose_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 2 && p == 2 {
        return vec![1, 1, 1];
    }
    // t^k − c
    for c in 1..p {
        let mut f = vec![0u64; k + 1];
        f[0] = (p - c) % p;
        f[k] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    let total = fp::checked_pow(p, k).expect("small extension");
    for idx in 0..total {
        let mut f = vec![0u64; k + 1];
        let mut digits = vec![0u64; k];
        fp::digits_of(idx, p, &mut digits);
        for (i, dgt) in digits.iter().rev().enumerate() {
            f[i] = *dgt;
        }
        f[k] = 1;
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(a: &Algebra, v: &[i64]) -> Elem {
        v.iter().map(|&x| a.field.from_i64(x)).collect()
    }

    #[test]
    fn presets_have_expected_moduli() {
        let f9 = Algebra::finite_field(3, 2).unwrap();
        assert_eq!(f9.mul(&el(&f9, &[0, 1]), &el(&f9, &[0, 1])), el(&f9, &[-1, 0]));
        let f25 = Algebra::finite_field(5, 2).unwrap();
        assert_eq!(f25.mul(&el(&f25, &[0, 1]), &el(&f25, &[0, 1])), el(&f25, &[2, 0]));
        let f343 = Algebra::finite_field(7, 3).unwrap();
        let t = el(&f343, &[0, 1, 0]);
        assert_eq!(f343.mul(&f343.mul(&t, &t), &t), el(&f343, &[2, 0, 0]));
        let f4 = Algebra::finite_field(2, 2).unwrap();
        let t = el(&f4, &[0, 1]);
        assert_eq!(f4.mul(&t, &t), el(&f4, &[1, 1]));
    }

    #[test]
    fn quaternion_table() {
        let h = Algebra::hamilton();
        let (i, j, k) = (h.basis_elem(1), h.basis_elem(2), h.basis_elem(3));
        assert_eq!(h.mul(&i, &j), k);
        assert_eq!(h.mul(&j, &i), h.neg(&k));
        assert_eq!(h.mul(&j, &k), i);
        assert_eq!(h.mul(&k, &i), j);
        assert_eq!(h.inv(&i).unwrap(), h.neg(&i));
        h.check_associativity().unwrap();
        h.check_unit().unwrap();
    }

    #[test]
    fn finite_extension_is_division() {
        let f343 = Algebra::finite_field(7, 3).unwrap();
        let r = f343.verify_division_algebra(1 << 20).unwrap();
        assert_eq!(r.status, DivisionStatus::Certified);
        let f16 = Algebra::finite_field(2, 4).unwrap();
        assert_eq!(f16.verify_division_algebra(1 << 20).unwrap().status, DivisionStatus::Certified);
    }

    #[test]
    fn standard_profiles_satisfy_norm_identity() {
        let algs = [
            Algebra::finite_field(5, 2).unwrap(),
            Algebra::finite_field(2, 2).unwrap(),
            Algebra::hamilton(),
            Algebra::gaussian_rationals(),
            Algebra::hyper_radicial_f2s(),
            Algebra::base(Field::Prime(3)),
        ];
        for a in &algs {
            let p = a.standard_profile().unwrap();
            assert!(a.norm_matches(&p), "{}", a.name);
        }
    }

    #[test]
    fn indefinite_rational_form_is_unknown() {
        let f = Field::Rationals;
        let q = QuadForm::diagonal(&f, &[f.one(), f.from_i64(-2)]);
        assert!(matches!(certify_anisotropic(&f, &q, 100), Anisotropy::Unknown(_)));
        let q = QuadForm::diagonal(&f, &[f.from_i64(-1), f.from_i64(-2)]);
        assert!(matches!(certify_anisotropic(&f, &q, 100), Anisotropy::Certified(_)));
    }
}
