//! Exact scalar arithmetic over the three supported base fields.
//!
//! Scalars are a small enum rather than a generic parameter: the pipelines in
//! this crate mix constructions over all backends, and the hot enumeration
//! loops only ever run over prime fields, where they drop to raw `u64`
//! kernels (see [`crate::fp`]).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// F_p for a prime p.
    Prime(u64),
    /// The rational numbers.
    Rationals,
    /// F_p(s), rational functions in one indeterminate.
    RationalFunctions(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Fp(u64),
    Q(Box<BigRational>),
    R(Box<RatFn>),
}

/// A normalized fraction num/den over F_p: coefficients low degree first,
/// gcd-reduced, monic denominator, zero represented as 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn {
    pub num: Vec<u64>,
    pub den: Vec<u64>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Dense polynomial helpers over F_p, low degree first, always trimmed.
pub(crate) mod fpoly {
    use super::{inv_mod, mulmod};

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut r: Vec<u64> = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect();
        trim(&mut r);
        r
    }

    pub fn neg(a: &[u64], p: u64) -> Vec<u64> {
        a.iter().map(|&x| (p - x) % p).collect()
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        add(a, &neg(b, p), p)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + mulmod(x, y, p)) % p;
            }
        }
        trim(&mut r);
        r
    }

    pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.iter().map(|&x| mulmod(x, c, p)).collect();
        trim(&mut r);
        r
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let lead_inv = inv_mod(*b.last().unwrap(), p);
        let mut q = vec![0u64; rem.len() - b.len() + 1];
        while rem.len() >= b.len() && !rem.is_empty() {
            let shift = rem.len() - b.len();
            let c = mulmod(*rem.last().unwrap(), lead_inv, p);
            q[shift] = c;
            for (j, &y) in b.iter().enumerate() {
                let t = mulmod(c, y, p);
                rem[shift + j] = (rem[shift + j] + p - t) % p;
            }
            trim(&mut rem);
        }
        trim(&mut q);
        (q, rem)
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => scale(a, inv_mod(l, p), p),
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y, p);
            x = y;
            y = r;
        }
        monic(&x, p)
    }
}

impl RatFn {
    fn normalize(num: Vec<u64>, den: Vec<u64>, p: u64) -> Result<RatFn> {
        let mut num = num;
        let mut den = den;
        fpoly::trim(&mut num);
        fpoly::trim(&mut den);
        if den.is_empty() {
            return Err(Error::ZeroInverse);
        }
        if num.is_empty() {
            return Ok(RatFn { num, den: vec![1] });
        }
        let g = fpoly::gcd(&num, &den, p);
        let (mut n2, _) = fpoly::divrem(&num, &g, p);
        let (mut d2, _) = fpoly::divrem(&den, &g, p);
        let l = inv_mod(*d2.last().unwrap(), p);
        n2 = fpoly::scale(&n2, l, p);
        d2 = fpoly::scale(&d2, l, p);
        Ok(RatFn { num: n2, den: d2 })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

fn q_of(x: &Scalar) -> &BigRational {
    match x {
        Scalar::Q(q) => q,
        other => panic!("expected a rational scalar, got {other:?}"),
    }
}

fn r_of(x: &Scalar) -> &RatFn {
    match x {
        Scalar::R(r) => r,
        other => panic!("expected a rational-function scalar, got {other:?}"),
    }
}

fn fp_of(x: &Scalar) -> u64 {
    match x {
        Scalar::Fp(v) => *v,
        other => panic!("expected a prime-field scalar, got {other:?}"),
    }
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::parse("field", format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn rational_functions(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::parse("field", format!("{p} is not prime")));
        }
        Ok(Field::RationalFunctions(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) | Field::RationalFunctions(p) => *p,
            Field::Rationals => 0,
        }
    }

    /// `None` means infinite.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(*p),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    /// True when the field has at least `k` elements.
    pub fn has_at_least(&self, k: u64) -> bool {
        self.cardinality().is_none_or(|q| q >= k)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(0),
            Field::Rationals => Scalar::Q(Box::new(BigRational::zero())),
            Field::RationalFunctions(_) => {
                Scalar::R(Box::new(RatFn { num: Vec::new(), den: vec![1] }))
            }
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(v.rem_euclid(*p as i64) as u64),
            Field::Rationals => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(v)))),
            Field::RationalFunctions(p) => {
                let c = v.rem_euclid(*p as i64) as u64;
                let num = if c == 0 { Vec::new() } else { vec![c] };
                Scalar::R(Box::new(RatFn { num, den: vec![1] }))
            }
        }
    }

    pub fn from_u64(&self, v: u64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(v % p),
            Field::Rationals => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(v)))),
            Field::RationalFunctions(p) => {
                let c = v % p;
                let num = if c == 0 { Vec::new() } else { vec![c] };
                Scalar::R(Box::new(RatFn { num, den: vec![1] }))
            }
        }
    }

    /// The rational p/q.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        self.div(&self.from_i64(num), &self.from_i64(den))
    }

    /// The indeterminate s of F_p(s).
    pub fn indeterminate(&self) -> Result<Scalar> {
        match self {
            Field::RationalFunctions(_) => {
                Ok(Scalar::R(Box::new(RatFn { num: vec![0, 1], den: vec![1] })))
            }
            _ => Err(Error::Unsupported("field has no indeterminate".into())),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 0,
            Scalar::Q(q) => q.is_zero(),
            Scalar::R(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp((fp_of(a) + fp_of(b)) % p),
            Field::Rationals => Scalar::Q(Box::new(q_of(a) + q_of(b))),
            Field::RationalFunctions(p) => {
                let (x, y) = (r_of(a), r_of(b));
                let num = fpoly::add(&fpoly::mul(&x.num, &y.den, *p), &fpoly::mul(&y.num, &x.den, *p), *p);
                let den = fpoly::mul(&x.den, &y.den, *p);
                Scalar::R(Box::new(RatFn::normalize(num, den, *p).expect("nonzero denominator")))
            }
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp((p - fp_of(a)) % p),
            Field::Rationals => Scalar::Q(Box::new(-q_of(a))),
            Field::RationalFunctions(p) => {
                let x = r_of(a);
                Scalar::R(Box::new(RatFn { num: fpoly::neg(&x.num, *p), den: x.den.clone() }))
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(mulmod(fp_of(a), fp_of(b), *p)),
            Field::Rationals => Scalar::Q(Box::new(q_of(a) * q_of(b))),
            Field::RationalFunctions(p) => {
                let (x, y) = (r_of(a), r_of(b));
                if x.is_zero() || y.is_zero() {
                    return self.zero();
                }
                let num = fpoly::mul(&x.num, &y.num, *p);
                let den = fpoly::mul(&x.den, &y.den, *p);
                Scalar::R(Box::new(RatFn::normalize(num, den, *p).expect("nonzero denominator")))
            }
        }
    }

    /// a + b·c, the workhorse of elimination.
    pub fn mul_add(&self, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
        if let Field::Prime(p) = self {
            return Scalar::Fp((fp_of(a) + mulmod(fp_of(b), fp_of(c), *p)) % p);
        }
        self.add(a, &self.mul(b, c))
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::ZeroInverse);
        }
        Ok(match self {
            Field::Prime(p) => Scalar::Fp(inv_mod(fp_of(a), *p)),
            Field::Rationals => Scalar::Q(Box::new(q_of(a).recip())),
            Field::RationalFunctions(p) => {
                let x = r_of(a);
                Scalar::R(Box::new(RatFn::normalize(x.den.clone(), x.num.clone(), *p)?))
            }
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        r
    }

    pub fn sum<'a>(&self, it: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        let mut acc = self.zero();
        for x in it {
            acc = self.add(&acc, x);
        }
        acc
    }

    /// Element number `i` of a finite field (its integer representative).
    pub fn element(&self, i: u64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(i % p),
            _ => panic!("element() called on an infinite field"),
        }
    }

    pub fn index_of(&self, a: &Scalar) -> u64 {
        fp_of(a)
    }

    /// The raw residue of a prime-field scalar.
    pub fn fp_value(a: &Scalar) -> u64 {
        fp_of(a)
    }

    /// Uniform over a finite field; over infinite fields a sample from a finite
    /// box of size `box_size` (integers in [0, box_size) for ℚ, polynomials in
    /// s with coefficients in F_p of matching cardinality for F_p(s)).
    pub fn random_in_box<R: Rng + ?Sized>(&self, rng: &mut R, box_size: u64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(rng.gen_range(0..*p)),
            Field::Rationals => self.from_u64(rng.gen_range(0..box_size.max(1))),
            Field::RationalFunctions(p) => {
                let mut k = rng.gen_range(0..box_size.max(1));
                let mut num = Vec::new();
                while k > 0 {
                    num.push(k % p);
                    k /= p;
                }
                fpoly::trim(&mut num);
                Scalar::R(Box::new(RatFn { num, den: vec![1] }))
            }
        }
    }

    /// Uniform over finite fields; small signed integers over ℚ; small
    /// polynomials over F_p(s).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(rng.gen_range(0..*p)),
            Field::Rationals => self.from_i64(rng.gen_range(-5..=5)),
            Field::RationalFunctions(p) => {
                let num: Vec<u64> = (0..3).map(|_| rng.gen_range(0..*p)).collect();
                Scalar::R(Box::new(RatFn::normalize(num, vec![1], *p).unwrap()))
            }
        }
    }

    /// Size of the sampling box used by [`Field::random_in_box`] callers that
    /// want a Schwartz–Zippel bound: the field size when finite.
    pub fn sample_set_size(&self, requested: u64) -> u64 {
        self.cardinality().unwrap_or(requested)
    }

    pub fn is_positive(&self, a: &Scalar) -> Option<bool> {
        match a {
            Scalar::Q(q) => Some(q.is_positive()),
            _ => None,
        }
    }

    pub fn is_negative(&self, a: &Scalar) -> Option<bool> {
        match a {
            Scalar::Q(q) => Some(q.is_negative()),
            _ => None,
        }
    }

    /// deg(num) − deg(den) for F_p(s); `None` for zero or other fields.
    pub fn degree(&self, a: &Scalar) -> Option<i64> {
        match a {
            Scalar::R(r) if !r.is_zero() => Some(r.num.len() as i64 - r.den.len() as i64),
            _ => None,
        }
    }

    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(v) => v.to_string(),
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::R(r) => {
                let n = format_poly(&r.num);
                if r.den == [1] {
                    n
                } else {
                    format!("({})/({})", n, format_poly(&r.den))
                }
            }
        }
    }

    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            Field::Prime(p) => {
                let v: i128 = s.parse().map_err(|_| Error::parse("", format!("bad F_{p} scalar {s:?}")))?;
                Ok(Scalar::Fp(v.rem_euclid(*p as i128) as u64))
            }
            Field::Rationals => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| Error::parse("", format!("bad rational {s:?}")))?;
                let d: BigInt = d.parse().map_err(|_| Error::parse("", format!("bad rational {s:?}")))?;
                if d.is_zero() {
                    return Err(Error::parse("", "zero denominator"));
                }
                Ok(Scalar::Q(Box::new(BigRational::new(n, d))))
            }
            Field::RationalFunctions(p) => {
                let (n, d) = split_fraction(s);
                let num = parse_poly(n, *p)?;
                let den = match d {
                    Some(d) => parse_poly(d, *p)?,
                    None => vec![1],
                };
                Ok(Scalar::R(Box::new(RatFn::normalize(num, den, *p).map_err(|_| {
                    Error::parse("", "zero denominator")
                })?)))
            }
        }
    }

    /// Exact conversion of a ℚ scalar to i64 when it is an integer in range.
    pub fn as_i64(&self, a: &Scalar) -> Option<i64> {
        match a {
            Scalar::Fp(v) => Some(*v as i64),
            Scalar::Q(q) if q.is_integer() => q.numer().to_i64(),
            _ => None,
        }
    }

    pub fn rational(&self, a: &Scalar) -> Option<BigRational> {
        match a {
            Scalar::Q(q) => Some((**q).clone()),
            _ => None,
        }
    }

    pub fn from_rational(&self, q: BigRational) -> Scalar {
        Scalar::Q(Box::new(q))
    }

    pub fn name(&self) -> String {
        match self {
            Field::Prime(p) => format!("F_{p}"),
            Field::Rationals => "Q".to_string(),
            Field::RationalFunctions(p) => format!("F_{p}(s)"),
        }
    }

    /// The flag syntax used on the command line: `fp:5`, `q`, `fps:2`.
    pub fn spec_string(&self) -> String {
        match self {
            Field::Prime(p) => format!("fp:{p}"),
            Field::Rationals => "q".to_string(),
            Field::RationalFunctions(p) => format!("fps:{p}"),
        }
    }

    pub fn parse_spec(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = s.strip_prefix("fps:") {
            let p = rest.parse().map_err(|_| Error::parse("field", format!("bad field {s:?}")))?;
            return Field::rational_functions(p);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p = rest.parse().map_err(|_| Error::parse("field", format!("bad field {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::parse("field", format!("unknown field {s:?} (expected fp:P, q or fps:P)")))
    }
}

fn split_fraction(s: &str) -> (&str, Option<&str>) {
    // "(num)/(den)" or "num/den" or "num"
    fn strip(t: &str) -> &str {
        let t = t.trim();
        t.strip_prefix('(').and_then(|u| u.strip_suffix(')')).unwrap_or(t)
    }
    if let Some(idx) = find_top_level_slash(s) {
        (strip(&s[..idx]), Some(strip(&s[idx + 1..])))
    } else {
        (strip(s), None)
    }
}

fn find_top_level_slash(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn format_poly(c: &[u64]) -> String {
    if c.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (k, &v) in c.iter().enumerate().rev() {
        if v == 0 {
            continue;
        }
        let term = match (k, v) {
            (0, v) => v.to_string(),
            (1, 1) => "s".to_string(),
            (1, v) => format!("{v}*s"),
            (k, 1) => format!("s^{k}"),
            (k, v) => format!("{v}*s^{k}"),
        };
        parts.push(term);
    }
    parts.join("+")
}

fn parse_poly(s: &str, p: u64) -> Result<Vec<u64>> {
    let bad = || Error::parse("", format!("bad polynomial in s: {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut out: Vec<u64> = Vec::new();
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if ch == '-' && i == 0 {
            neg = true;
        } else if ch == '+' && i == 0 {
        } else {
            cur.push(ch);
        }
    }
    terms.push((neg, cur));
    for (neg, t) in terms {
        if t.is_empty() {
            return Err(bad());
        }
        let (coef, deg) = if let Some(idx) = t.find('s') {
            let c = t[..idx].trim_end_matches('*');
            let c: u64 = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
            let rest = &t[idx + 1..];
            let k: usize = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
            };
            (c, k)
        } else {
            (t.parse::<u64>().map_err(|_| bad())?, 0)
        };
        if out.len() <= deg {
            out.resize(deg + 1, 0);
        }
        let c = coef % p;
        let c = if neg { (p - c) % p } else { c };
        out[deg] = (out[deg] + c) % p;
    }
    fpoly::trim(&mut out);
    Ok(out)
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_arithmetic() {
        let f = Field::Prime(7);
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(f.add(&a, &b), f.from_i64(1));
        assert_eq!(f.mul(&a, &b), f.from_i64(1));
        assert_eq!(f.inv(&a).unwrap(), b);
        assert_eq!(f.neg(&a), f.from_i64(4));
        assert!(matches!(f.inv(&f.zero()), Err(Error::ZeroInverse)));
    }

    #[test]
    fn rational_arithmetic_and_format() {
        let f = Field::Rationals;
        let a = f.from_ratio(1, 2).unwrap();
        let b = f.from_ratio(1, 3).unwrap();
        assert_eq!(f.format(&f.add(&a, &b)), "5/6");
        assert_eq!(f.parse("-10/4").unwrap(), f.from_ratio(-5, 2).unwrap());
        assert_eq!(f.format(&f.from_i64(-3)), "-3");
    }

    #[test]
    fn ratfn_normalizes() {
        let f = Field::RationalFunctions(2);
        let s = f.indeterminate().unwrap();
        let one = f.one();
        let s1 = f.add(&s, &one);
        // (s+1)^2 / (s+1) == s+1
        let sq = f.mul(&s1, &s1);
        assert_eq!(f.div(&sq, &s1).unwrap(), s1);
        // 1/s + 1/s == 0 in characteristic 2
        let inv = f.inv(&s).unwrap();
        assert!(f.is_zero(&f.add(&inv, &inv)));
        assert_eq!(f.format(&inv), "(1)/(s)");
        assert_eq!(f.parse("(1)/(s)").unwrap(), inv);
        assert_eq!(f.parse("s^2+s+1").unwrap(), f.add(&sq, &s));
        assert_eq!(f.degree(&inv), Some(-1));
    }

    #[test]
    fn ratfn_odd_characteristic_parse() {
        let f = Field::RationalFunctions(5);
        let x = f.parse("2*s^2-1").unwrap();
        assert_eq!(f.format(&x), "2*s^2+4");
        assert_eq!(f.parse(&f.format(&x)).unwrap(), x);
    }

    #[test]
    fn spec_strings_round_trip() {
        for f in [Field::Prime(3), Field::Rationals, Field::RationalFunctions(2)] {
            assert_eq!(Field::parse_spec(&f.spec_string()).unwrap(), f);
        }
        assert!(Field::parse_spec("fp:4").is_err());
    }
}
