use super::{rat, Rational, Ring};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Univariate polynomial in the parameter `m` with rational coefficients.
/// `coeffs[i]` is the coefficient of `m^i`; no trailing zeros are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    coeffs: Vec<Rational>,
}

impl ParamPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ParamPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable `m`.
    pub fn m() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `m - r`.
    pub fn linear(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::constant(Rational::one());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &ParamPoly) -> (ParamPoly, ParamPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (ParamPoly::default(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (ParamPoly::new(q), ParamPoly::new(r))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &ParamPoly) -> ParamPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact division by `m - r` when `r` is a root.
    fn deflate(&self, r: &Rational) -> Option<ParamPoly> {
        let n = self.coeffs.len();
        if n < 2 {
            return None;
        }
        let mut q = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (1..n).rev() {
            carry = &self.coeffs[i] + carry * r;
            q[i - 1] = carry.clone();
        }
        let rem = &self.coeffs[0] + carry * r;
        rem.is_zero().then(|| ParamPoly::new(q))
    }

    /// `sign * prod (m - r)^k`.
    pub fn from_factors(sign: i32, factors: &[(BigInt, usize)]) -> Self {
        let mut out = Self::constant(rat(sign as i64));
        for (r, k) in factors {
            let lin = Self::linear(&Rational::from_integer(r.clone()));
            out = &out * &lin.pow(*k);
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({})", self)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = if a.is_integer() {
                a.to_string()
            } else {
                format!("({})", a)
            };
            match i {
                0 => write!(f, "{}", coef)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}", coef)?;
                    }
                    write!(f, "m")?;
                    if i > 1 {
                        write!(f, "^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ParamPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ParamPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        if self.is_zero() || rhs.is_zero() {
            return ParamPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        ParamPoly::new(out)
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: ParamPoly) -> ParamPoly {
        &self + &rhs
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

impl Zero for ParamPoly {
    fn zero() -> Self {
        ParamPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for ParamPoly {
    fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }
}

impl Ring for ParamPoly {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_int(v: i64) -> Self {
        ParamPoly::constant(rat(v))
    }
}

/// The n-th cyclotomic polynomial, in the variable `m`.
pub fn cyclotomic_polynomial(n: u32) -> ParamPoly {
    assert!(n >= 1, "cyclotomic_polynomial needs n >= 1");
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    coeffs[0] = rat(-1);
    coeffs[n as usize] = rat(1);
    let mut p = ParamPoly::new(coeffs);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = p.div_rem(&cyclotomic_polynomial(d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerRoots {
    pub sign: i32,
    /// (root, multiplicity), roots in descending order.
    pub factors: Vec<(BigInt, usize)>,
    /// Cofactor without integer roots; carries |leading coefficient|.
    pub remainder: ParamPoly,
}

impl IntegerRoots {
    pub fn expand(&self) -> ParamPoly {
        &ParamPoly::from_factors(self.sign, &self.factors) * &self.remainder
    }
}

// Candidate divisors are enumerated up to this bound; larger integer roots
// are only found when the trailing coefficient factors over small primes.
const ENUM_LIMIT: u64 = 2_000_000;

/// Integer roots with multiplicities: `p = sign * remainder * prod (m - r)^k`.
pub fn integer_roots(p: &ParamPoly) -> Result<IntegerRoots> {
    let lc = p.leading().ok_or(Error::ZeroPolynomial)?.clone();
    let sign = if lc.is_negative() { -1 } else { 1 };

    let mut candidates = Vec::new();
    let start = p.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    if start > 0 {
        candidates.push(BigInt::zero());
    }
    let ip = primitive_integer(&ParamPoly::new(p.coeffs[start..].to_vec()));
    if ip.len() > 1 {
        let a0 = ip[0].abs();
        let bound = root_bound(&ip);
        for d in divisor_candidates(&a0, &bound) {
            for r in [d.clone(), -d] {
                if horner_is_root(&ip, &r) {
                    candidates.push(r);
                }
            }
        }
    }
    candidates.sort();
    candidates.reverse();

    let mut rest = p.clone();
    let mut factors = Vec::new();
    for r in candidates {
        let rr = Rational::from_integer(r.clone());
        let mut k = 0;
        while let Some(q) = rest.deflate(&rr) {
            rest = q;
            k += 1;
        }
        if k > 0 {
            factors.push((r, k));
        }
    }
    let remainder = if sign < 0 { -&rest } else { rest };
    Ok(IntegerRoots {
        sign,
        factors,
        remainder,
    })
}

fn primitive_integer(p: &ParamPoly) -> Vec<BigInt> {
    let l = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    }
}

fn ln_abs(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        v.abs().to_f64().unwrap().ln()
    } else {
        let shift = bits - 64;
        (v.abs() >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Fujiwara bound on the absolute value of every complex root, padded for
/// floating-point slack.
fn root_bound(ip: &[BigInt]) -> BigInt {
    let n = ip.len() - 1;
    let ln_lead = ln_abs(&ip[n]);
    let mut best = f64::NEG_INFINITY;
    for k in 1..=n {
        let c = &ip[n - k];
        if c.is_zero() {
            continue;
        }
        best = best.max((ln_abs(c) - ln_lead) / k as f64);
    }
    if best == f64::NEG_INFINITY {
        return BigInt::one();
    }
    let b = 2.0 * best.exp() * 1.001 + 2.0;
    if b < 1e18 {
        BigInt::from(b.ceil() as u64)
    } else {
        BigInt::from(1u8) << ((b.log2().ceil() as u64) + 1)
    }
}

fn perfect_power(n: &BigInt) -> (BigInt, u32) {
    for k in (2..=n.bits() as u32).rev() {
        let r = n.nth_root(k);
        if &num_traits::pow(r.clone(), k as usize) == n {
            return (r, k);
        }
    }
    (n.clone(), 1)
}

fn horner_is_root(ip: &[BigInt], r: &BigInt) -> bool {
    let mut acc = BigInt::zero();
    for c in ip.iter().rev() {
        acc = acc * r + c;
    }
    acc.is_zero()
}

fn divisor_candidates(a0: &BigInt, bound: &BigInt) -> Vec<BigInt> {
    if let Some(b) = bound.to_u64().filter(|&b| b <= ENUM_LIMIT) {
        let mut out = Vec::new();
        let small = a0.to_u64();
        let b = b.min(small.unwrap_or(u64::MAX));
        for d in 1..=b {
            let divides = match small {
                Some(v) => v % d == 0,
                None => (a0 % BigInt::from(d)).is_zero(),
            };
            if divides {
                out.push(BigInt::from(d));
            }
        }
        return out;
    }
    // Trial factorisation; an unfactored cofactor is treated as prime.
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut n = a0.clone();
    let mut p = 2u64;
    while p <= ENUM_LIMIT && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            primes.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let (base, k) = perfect_power(&n);
        primes.push((base, k));
    }
    let mut divs = vec![BigInt::one()];
    for (q, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut x = d.clone();
            for _ in 0..=e {
                if &x <= bound {
                    next.push(x.clone());
                }
                x *= &q;
            }
        }
        divs = next;
    }
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_polynomial(1), ParamPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ParamPoly::from_ints(&[1, 0, 1]));
        assert_eq!(
            cyclotomic_polynomial(12),
            ParamPoly::from_ints(&[1, 0, -1, 0, 1])
        );
        assert_eq!(cyclotomic_polynomial(5).degree(), Some(4));
        assert_eq!(cyclotomic_polynomial(20).degree(), Some(8));
    }

    #[test]
    fn roots_of_all_ones_charpoly() {
        // -m^2 (m - 3)
        let p = ParamPoly::from_ints(&[0, 0, 3, -1]);
        let r = integer_roots(&p).unwrap();
        assert_eq!(r.sign, -1);
        assert_eq!(r.factors, vec![(b(3), 1), (b(0), 2)]);
        assert_eq!(r.remainder, ParamPoly::from_ints(&[1]));
        assert_eq!(r.expand(), p);
    }

    #[test]
    fn irreducible_quadratic() {
        let p = ParamPoly::from_ints(&[1, 0, 1]);
        let r = integer_roots(&p).unwrap();
        assert_eq!(r.sign, 1);
        assert!(r.factors.is_empty());
        assert_eq!(r.remainder, p);
    }

    #[test]
    fn h3_row() {
        let f = vec![(b(13), 1), (b(1), 10), (b(-2), 4)];
        let p = ParamPoly::from_factors(1, &f);
        let r = integer_roots(&p).unwrap();
        assert_eq!(r.factors, f);
        assert_eq!(r.sign, 1);
        assert_eq!(r.remainder, ParamPoly::from_ints(&[1]));
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(
            integer_roots(&ParamPoly::default()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn large_root_found() {
        let f = vec![(b(3_000_017), 2), (b(-5), 1)];
        let p = &ParamPoly::from_factors(-1, &f) * &ParamPoly::from_ints(&[2, 0, 1]);
        let r = integer_roots(&p).unwrap();
        assert_eq!(r.factors, f);
        assert_eq!(r.remainder, ParamPoly::from_ints(&[2, 0, 1]));
        assert_eq!(r.expand(), p);
    }

    #[test]
    fn display() {
        let p = ParamPoly::from_ints(&[0, 0, 3, -1]);
        assert_eq!(p.to_string(), "-m^3 + 3m^2");
        assert_eq!(ParamPoly::default().to_string(), "0");
    }

    #[test]
    fn division() {
        let a = ParamPoly::from_ints(&[-1, 0, 0, 1]);
        let (q, r) = a.div_rem(&ParamPoly::from_ints(&[-1, 1]));
        assert_eq!(q, ParamPoly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
    }
}
