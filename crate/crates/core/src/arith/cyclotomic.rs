use super::poly::cyclotomic_polynomial;
use super::{rat, Field, Rational, Ring};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

/// Reduction data for one conductor: `powers[k]` is zeta^k in the power basis.
#[derive(Debug)]
struct Table {
    n: u32,
    phi: usize,
    powers: Vec<Vec<i64>>,
}

fn table(n: u32) -> Arc<Table> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Table>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(build_table(n));
    cache.lock().unwrap().entry(n).or_insert(t).clone()
}

fn build_table(n: u32) -> Table {
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.degree().unwrap();
    let low: Vec<i64> = phi_poly.coeffs()[..phi]
        .iter()
        .map(|c| c.to_integer().to_i64().expect("cyclotomic coefficient overflow"))
        .collect();
    let count = (n as usize).max(2 * phi);
    let mut powers = Vec::with_capacity(count);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..count {
        powers.push(cur.clone());
        // multiply by zeta: shift, then fold zeta^phi = -sum low[i] zeta^i
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * low[i];
            }
        }
    }
    Table { n, phi, powers }
}

pub fn euler_phi(n: u32) -> usize {
    table(normalize_conductor(n)).phi
}

fn normalize_conductor(n: u32) -> u32 {
    assert!(n >= 1, "conductor must be positive");
    if n == 2 {
        1
    } else {
        n
    }
}

/// Element of Q(zeta_n) in the power basis modulo the n-th cyclotomic polynomial.
///
/// Conductor 2 is stored as conductor 1. Elements of conductor 1 combine with
/// any conductor; other conductor mixes are rejected.
#[derive(Clone)]
pub struct CycNum {
    n: u32,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn zero_in(n: u32) -> Self {
        let n = normalize_conductor(n);
        CycNum {
            n,
            coeffs: vec![Rational::zero(); table(n).phi],
        }
    }

    pub fn from_rational(n: u32, r: Rational) -> Self {
        let mut z = Self::zero_in(n);
        z.coeffs[0] = r;
        z
    }

    pub fn from_i64(n: u32, v: i64) -> Self {
        Self::from_rational(n, rat(v))
    }

    pub fn rational(r: Rational) -> Self {
        Self::from_rational(1, r)
    }

    /// zeta_n^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        if n <= 2 {
            let v = if n == 2 && k.rem_euclid(2) == 1 { -1 } else { 1 };
            return Self::from_i64(1, v);
        }
        let t = table(n);
        let e = k.rem_euclid(n as i64) as usize;
        CycNum {
            n,
            coeffs: t.powers[e].iter().map(|&c| rat(c)).collect(),
        }
    }

    /// Builds sum coeffs[i] zeta^i, reducing if more than phi(n) coefficients are given.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Self {
        let raw_n = n;
        let n = normalize_conductor(n);
        if raw_n == 2 {
            let mut v = Rational::zero();
            for (i, c) in coeffs.into_iter().enumerate() {
                if i % 2 == 0 {
                    v += c;
                } else {
                    v -= c;
                }
            }
            return Self::rational(v);
        }
        let t = table(n);
        let mut out = vec![Rational::zero(); t.phi];
        for (i, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = i % t.n as usize;
            if e < t.phi {
                out[e] += c;
            } else {
                for (j, &p) in t.powers[e].iter().enumerate() {
                    if p != 0 {
                        out[j] += &c * rat(p);
                    }
                }
            }
        }
        CycNum { n, coeffs: out }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn trimmed(&self) -> &[Rational] {
        let mut k = self.coeffs.len();
        while k > 0 && self.coeffs[k - 1].is_zero() {
            k -= 1;
        }
        &self.coeffs[..k]
    }

    /// Re-expresses a conductor-1 element at conductor `n`; identity otherwise.
    pub fn lift(&self, n: u32) -> Self {
        let n = normalize_conductor(n);
        if self.n == n || self.n != 1 {
            return self.clone();
        }
        Self::from_rational(n, self.coeffs[0].clone())
    }

    /// Embeds Q(zeta_c) into Q(zeta_n) for c | n via zeta_c -> zeta_n^(n/c).
    pub fn embed(&self, n: u32) -> Result<Self> {
        let n = normalize_conductor(n);
        if !n.is_multiple_of(self.n) {
            return Err(Error::MixedConductor(self.n, n));
        }
        let step = (n / self.n) as usize;
        let mut raw = vec![Rational::zero(); self.coeffs.len() * step.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Ok(Self::from_coeffs(n, raw))
    }

    fn common(&self, other: &Self) -> Result<u32> {
        if self.n == other.n || other.n == 1 {
            Ok(self.n)
        } else if self.n == 1 {
            Ok(other.n)
        } else {
            Err(Error::MixedConductor(self.n, other.n))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let n = self.common(other)?;
        let (a, b) = (self.lift(n), other.lift(n));
        Ok(CycNum {
            n,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let n = self.common(other)?;
        let (a, b) = (self.lift(n), other.lift(n));
        Ok(CycNum {
            n,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let n = self.common(other)?;
        if self.n == 1 {
            return Ok(other.lift(n).scale(&self.coeffs[0]));
        }
        if other.n == 1 {
            return Ok(self.scale(&other.coeffs[0]));
        }
        let t = table(n);
        let phi = t.phi;
        let mut raw = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rational> = raw.drain(..phi).collect();
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &p) in t.powers[k + phi].iter().enumerate() {
                if p != 0 {
                    out[j] += &c * rat(p);
                }
            }
        }
        Ok(CycNum { n, coeffs: out })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycNum {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex conjugation zeta -> zeta^-1.
    pub fn conj(&self) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        let t = table(self.n);
        let mut out = vec![Rational::zero(); t.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (t.n as usize - i) % t.n as usize;
            for (j, &p) in t.powers[e].iter().enumerate() {
                if p != 0 {
                    out[j] += c * rat(p);
                }
            }
        }
        CycNum { n: self.n, coeffs: out }
    }

    /// Multiplicative inverse via the linear system of multiplication by self.
    pub fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::NotInvertible);
        }
        if self.n == 1 {
            return Ok(Self::rational(self.coeffs[0].recip()));
        }
        let phi = self.coeffs.len();
        // column j = self * zeta^j
        let mut cols = Vec::with_capacity(phi);
        for j in 0..phi {
            cols.push(self.try_mul(&Self::zeta_pow(self.n, j as i64))?.coeffs);
        }
        let mut a: Vec<Vec<Rational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<Rational> = (0..phi).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::NotInvertible)?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..phi {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for k in col..=phi {
                        let v = &f * &a[col][k];
                        a[r][k] -= v;
                    }
                }
            }
        }
        Ok(CycNum {
            n: self.n,
            coeffs: a.into_iter().map(|row| row[phi].clone()).collect(),
        })
    }

    /// Numerical value, for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        let n = self.n.max(1) as f64;
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Common denominator and integer numerators.
    pub fn to_num_den(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        (nums, den)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        self.is_rational() && other.is_rational() && self.coeffs[0] == other.coeffs[0]
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let t = self.trimmed();
        if t.len() > 1 {
            self.n.hash(state);
        }
        t.hash(state);
    }
}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (a, b) = (self.trimmed(), other.trimmed());
        for i in 0..a.len().max(b.len()) {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            match x.cmp(&y) {
                std::cmp::Ordering::Equal => {}
                o => return o,
            }
        }
        if a.len() > 1 {
            self.n.cmp(&other.n)
        } else {
            std::cmp::Ordering::Equal
        }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => c.to_string(),
                1 if c.is_one() => format!("z{}", self.n),
                1 => format!("{}*z{}", c, self.n),
                _ if c.is_one() => format!("z{}^{}", self.n, i),
                _ => format!("{}*z{}^{}", c, self.n, i),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        self.add_ref(&rhs)
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        self.mul_ref(&rhs)
    }
}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum::zero_in(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for CycNum {
    fn one() -> Self {
        CycNum::from_i64(1, 1)
    }
    fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

impl Ring for CycNum {
    fn add_ref(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("mixed cyclotomic conductors")
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("mixed cyclotomic conductors")
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("mixed cyclotomic conductors")
    }
    fn neg_ref(&self) -> Self {
        CycNum {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn from_int(v: i64) -> Self {
        CycNum::from_i64(1, v)
    }
}

impl Field for CycNum {
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_n_to_n_is_one() {
        for n in [3u32, 4, 5, 7, 8, 12, 15, 20, 24] {
            let z = CycNum::zeta_pow(n, 1);
            let mut acc = CycNum::from_i64(n, 1);
            for _ in 0..n {
                acc = acc.mul_ref(&z);
            }
            assert!(acc.is_one(), "n = {}", n);
        }
    }

    #[test]
    fn sum_of_roots_vanishes_for_prime_n() {
        for n in [3u32, 5, 7, 11, 13] {
            let mut acc = CycNum::zero_in(n);
            for k in 0..n {
                acc = acc.add_ref(&CycNum::zeta_pow(n, k as i64));
            }
            assert!(Zero::is_zero(&acc), "n = {}", n);
        }
    }

    #[test]
    fn conj_and_inverse() {
        let z = CycNum::zeta_pow(8, 3);
        assert_eq!(z.conj(), CycNum::zeta_pow(8, 5));
        assert!(z.mul_ref(&z.conj()).is_one());
        let a = CycNum::from_coeffs(5, vec![rat(2), rat(-1), rat(0), rat(3)]);
        assert!(a.mul_ref(&a.try_inv().unwrap()).is_one());
    }

    #[test]
    fn golden_ratio() {
        // tau = -z^2 - z^3 satisfies tau^2 = tau + 1
        let tau = CycNum::zeta_pow(5, 2).add_ref(&CycNum::zeta_pow(5, 3)).neg_ref();
        let lhs = tau.mul_ref(&tau);
        let rhs = tau.add_ref(&CycNum::from_i64(5, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_embeds_and_mixing_rejected() {
        let a = CycNum::from_i64(1, 3);
        let z = CycNum::zeta_pow(12, 1);
        assert_eq!(a.mul_ref(&z), z.scale(&rat(3)));
        assert_eq!(a, CycNum::from_i64(12, 3));
        assert!(CycNum::zeta_pow(5, 1).try_add(&CycNum::zeta_pow(7, 1)).is_err());
    }

    #[test]
    fn embed_maps_roots() {
        let w = CycNum::zeta_pow(3, 1);
        assert_eq!(w.embed(12).unwrap(), CycNum::zeta_pow(12, 4));
        assert!(w.embed(10).is_err());
    }

    #[test]
    fn conductor_two_is_rational() {
        assert_eq!(CycNum::zeta_pow(2, 1), CycNum::from_i64(1, -1));
        assert_eq!(euler_phi(2), 1);
    }
}
