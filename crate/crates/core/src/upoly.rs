//! Univariate polynomials over a [`Field`], low degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn new(f: &Field, mut coeffs: Vec<Scalar>) -> UPoly {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> UPoly {
        UPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn linear(f: &Field, root: &Scalar) -> UPoly {
        UPoly::new(f, vec![f.neg(root), f.one()])
    }

    pub fn add(&self, f: &Field, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = f.zero();
        let c = (0..n)
            .map(|i| f.add(self.coeffs.get(i).unwrap_or(&z), o.coeffs.get(i).unwrap_or(&z)))
            .collect();
        UPoly::new(f, c)
    }

    pub fn sub(&self, f: &Field, o: &UPoly) -> UPoly {
        let neg = UPoly { coeffs: o.coeffs.iter().map(|c| f.neg(c)).collect() };
        self.add(f, &neg)
    }

    pub fn mul(&self, f: &Field, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.mul_add(&c[i + j], a, b);
            }
        }
        UPoly::new(f, c)
    }

    pub fn scale(&self, f: &Field, s: &Scalar) -> UPoly {
        UPoly::new(f, self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn monic(&self, f: &Field) -> UPoly {
        match self.lead() {
            None => UPoly::zero(),
            Some(l) => self.scale(f, &f.inv(l).expect("nonzero lead")),
        }
    }

    pub fn divrem(&self, f: &Field, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let lead = d.lead().ok_or(Error::ZeroInverse)?;
        let lead_inv = f.inv(lead)?;
        let mut rem = self.coeffs.clone();
        let dl = d.coeffs.len();
        if rem.len() < dl {
            return Ok((UPoly::zero(), self.clone()));
        }
        let mut q = vec![f.zero(); rem.len() - dl + 1];
        for shift in (0..q.len()).rev() {
            let c = f.mul(&rem[shift + dl - 1], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, y) in d.coeffs.iter().enumerate() {
                rem[shift + j] = f.sub(&rem[shift + j], &f.mul(&c, y));
            }
            q[shift] = c;
        }
        Ok((UPoly::new(f, q), UPoly::new(f, rem)))
    }

    pub fn gcd(&self, f: &Field, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Field) -> UPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
            .collect();
        UPoly::new(f, c)
    }

    pub fn eval(&self, f: &Field, x: &Scalar) -> Scalar {
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.mul_add(c, &acc, x);
        }
        acc
    }

    /// gcd(μ, μ′) = 1.
    pub fn is_squarefree(&self, f: &Field) -> bool {
        let g = self.gcd(f, &self.derivative(f));
        g.degree() == 0
    }

    /// Roots in F (without multiplicity). Finite fields: exhaustive
    /// evaluation. ℚ: rational-root candidates. F_p(s): unsupported.
    pub fn roots(&self, f: &Field) -> Result<Vec<Scalar>> {
        if self.is_zero() {
            return Err(Error::Unsupported("roots of the zero polynomial".into()));
        }
        match f {
            Field::Prime(p) => Ok((0..*p)
                .map(Scalar::Fp)
                .filter(|x| f.is_zero(&self.eval(f, x)))
                .collect()),
            Field::Rationals => rational_roots(f, self),
            Field::RationalFunctions(_) => {
                Err(Error::Unsupported("root finding over F_p(s)".into()))
            }
        }
    }

    pub fn format(&self, f: &Field) -> Vec<String> {
        self.coeffs.iter().map(|c| f.format(c)).collect()
    }
}

const DIVISOR_LIMIT: u64 = 1_000_000;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Ok(vec![]);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    let mut steps = 0u64;
    while &i * &i <= n {
        steps += 1;
        if steps > DIVISOR_LIMIT {
            return Err(Error::Unsupported("coefficient too large for rational root search".into()));
        }
        if (&n % &i).is_zero() {
            small.push(i.clone());
            let j = &n / &i;
            if j != i {
                large.push(j);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

fn rational_roots(f: &Field, p: &UPoly) -> Result<Vec<Scalar>> {
    // Clear denominators, strip the power of t, then test ±a/b.
    let rats: Vec<BigRational> = p.coeffs.iter().map(|c| f.rational(c).unwrap()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(f.zero());
    }
    let ints = &ints[low..];
    if ints.len() <= 1 {
        return Ok(roots);
    }
    let a0 = divisors(&ints[0])?;
    let an = divisors(ints.last().unwrap())?;
    let mut cands = Vec::new();
    for a in &a0 {
        for b in &an {
            let r = BigRational::new(a.clone(), b.clone());
            cands.push(r.clone());
            cands.push(-r);
        }
    }
    cands.sort();
    cands.dedup();
    for c in cands {
        let s = f.from_rational(c);
        if f.is_zero(&p.eval(f, &s)) {
            roots.push(s);
        }
    }
    roots.sort();
    Ok(roots)
}
