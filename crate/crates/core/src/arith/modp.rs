//! Arithmetic modulo the Mersenne prime 2^61 - 1.

use super::Rational;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

pub const P: u64 = (1 << 61) - 1;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    let z = a as u128 * b as u128;
    let lo = (z as u64) & P;
    let hi = (z >> 61) as u64;
    add(lo, hi)
}

#[inline]
pub fn neg(a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        P - a
    }
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

pub fn from_bigint(v: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let r = v % &p;
    let r = if r.is_negative() { r + p } else { r };
    r.to_u64().unwrap()
}

pub fn from_rational(r: &Rational) -> Result<u64> {
    let d = from_bigint(r.denom());
    if d == 0 {
        return Err(Error::ModularDenominator);
    }
    Ok(mul(from_bigint(r.numer()), inv(d)))
}

pub fn from_i64(v: i64) -> u64 {
    if v >= 0 {
        v as u64 % P
    } else {
        neg((v.unsigned_abs()) % P)
    }
}

/// Incremental row echelon basis over F_p.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis in place; returns true when it becomes zero.
    pub fn reduce(&self, v: &mut [u64]) -> bool {
        for (p, row) in &self.rows {
            let f = v[*p];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row.iter()) {
                    if y != 0 {
                        *x = sub(*x, mul(f, y));
                    }
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Inserts `v` if independent; returns whether it was added.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        if self.reduce(&mut v) {
            return false;
        }
        let p = v.iter().position(|&x| x != 0).unwrap();
        let inv_p = inv(v[p]);
        for x in v.iter_mut() {
            *x = mul(*x, inv_p);
        }
        // keep rows fully reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            let f = row[p];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(v.iter()) {
                    if y != 0 {
                        *x = sub(*x, mul(f, y));
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Rank of a dense matrix over F_p, given as rows.
pub fn rank(rows: &[Vec<u64>]) -> usize {
    let mut b = EchelonBasis::new();
    for r in rows {
        b.insert(r.clone());
    }
    b.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    #[test]
    fn field_ops() {
        let a = 123_456_789_012_345u64;
        assert_eq!(mul(a, inv(a)), 1);
        assert_eq!(add(P - 1, 2), 1);
        assert_eq!(sub(1, 2), P - 1);
        let h = from_rational(&frac(1, 2)).unwrap();
        assert_eq!(mul(h, 2), 1);
        assert_eq!(from_i64(-1), P - 1);
    }

    #[test]
    fn echelon() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(vec![1, 2, 3]));
        assert!(b.insert(vec![0, 1, 1]));
        assert!(!b.insert(vec![2, 5, 7]));
        assert_eq!(b.len(), 2);
        assert_eq!(rank(&[vec![1, 1], vec![2, 2]]), 1);
    }
}
