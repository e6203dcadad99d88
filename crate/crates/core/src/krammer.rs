//! The type-A Krammer matrices over Laurent polynomials in `q` and `t`.

use crate::arith::{CycNum, Matrix, Rational, Ring};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

/// Finite sum of `c * q^a * t^b` with rational `c` and integer `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentQT {
    terms: BTreeMap<(i64, i64), Rational>,
}

impl LaurentQT {
    pub fn monomial(c: Rational, a: i64, b: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        LaurentQT { terms }
    }

    pub fn q() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rational)> {
        self.terms.iter()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul_ref(self))
    }

    /// A unit of the Laurent ring is a single nonzero monomial.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Substitutes `q` and `t`, given as closures producing their integer powers.
    pub fn eval<T: Ring>(&self, q_pow: impl Fn(i64) -> T, t_pow: impl Fn(i64) -> T, scalar: impl Fn(&Rational) -> T) -> T {
        let mut out = T::zero();
        for (&(a, b), c) in &self.terms {
            out.add_assign_ref(&scalar(c).mul_ref(&q_pow(a)).mul_ref(&t_pow(b)));
        }
        out
    }

    fn accumulate(&mut self, key: (i64, i64), c: Rational) {
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl fmt::Debug for LaurentQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(a, b), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            if a != 0 {
                write!(f, "*q^{}", a)?;
            }
            if b != 0 {
                write!(f, "*t^{}", b)?;
            }
        }
        Ok(())
    }
}

impl Add for LaurentQT {
    type Output = LaurentQT;
    fn add(self, rhs: LaurentQT) -> LaurentQT {
        self.add_ref(&rhs)
    }
}

impl Mul for LaurentQT {
    type Output = LaurentQT;
    fn mul(self, rhs: LaurentQT) -> LaurentQT {
        self.mul_ref(&rhs)
    }
}

impl Zero for LaurentQT {
    fn zero() -> Self {
        LaurentQT::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentQT {
    fn one() -> Self {
        Self::monomial(Rational::one(), 0, 0)
    }
}

impl Ring for LaurentQT {
    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.accumulate(k, c.clone());
        }
        out
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = LaurentQT::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                out.accumulate((a + x, b + y), c * d);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        LaurentQT {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
    fn from_int(v: i64) -> Self {
        Self::monomial(Rational::from_integer(v.into()), 0, 0)
    }
}

/// Determinant without division, by expansion over column subsets.
pub fn determinant<T: Ring>(m: &Matrix<T>) -> T {
    let n = m.rows();
    assert!(m.is_square() && n <= 20, "determinant needs a small square matrix");
    let mut minors = vec![T::zero(); 1 << n];
    minors[0] = T::one();
    for set in 1usize..(1 << n) {
        let row = set.count_ones() as usize - 1;
        let mut acc = T::zero();
        let mut sign_neg = false;
        for col in (0..n).rev() {
            if set & (1 << col) == 0 {
                continue;
            }
            let term = m[(row, col)].mul_ref(&minors[set & !(1 << col)]);
            if sign_neg {
                acc.sub_assign_ref(&term);
            } else {
                acc.add_assign_ref(&term);
            }
            sign_neg = !sign_neg;
        }
        minors[set] = acc;
    }
    minors[(1 << n) - 1].clone()
}

#[derive(Clone, Debug)]
pub struct KrammerModel {
    pub n: usize,
    /// `(i, j)` with `i < j`, 1-based strands, in flat order.
    pub basis: Vec<(usize, usize)>,
    pub sigma: Vec<Matrix<LaurentQT>>,
}

impl KrammerModel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        self.basis.iter().position(|&p| p == (i, j)).expect("basis pair")
    }
}

fn term(c: i64, a: i64, b: i64) -> LaurentQT {
    LaurentQT::monomial(Rational::from_integer(c.into()), a, b)
}

pub fn build_krammer(n: usize) -> Result<KrammerModel> {
    if n < 2 {
        return Err(Error::TooFewStrands(n));
    }
    let mut basis = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            basis.push((i, j));
        }
    }
    let d = basis.len();
    let at = |i: usize, j: usize| basis.iter().position(|&p| p == (i, j)).unwrap();
    let one_minus_q = term(1, 0, 0).sub_ref(&LaurentQT::q());
    let q_minus_1 = one_minus_q.neg_ref();
    let mut sigma = Vec::new();
    for k in 1..n {
        let mut s = Matrix::<LaurentQT>::zeros(d, d);
        let kk = at(k, k + 1);
        // column `col` holds the image of x_{ij}
        for (col, &(i, j)) in basis.iter().enumerate() {
            let (i_, k_) = (i as i64, k as i64);
            if (i, j) == (k, k + 1) {
                s[(kk, col)] = term(1, 2, 1);
            } else if j == k {
                s[(col, col)] = one_minus_q.clone();
                s[(at(i, k + 1), col)] = LaurentQT::q();
            } else if j == k + 1 && i < k {
                s[(at(i, k), col)] = LaurentQT::one();
                s[(kk, col)] = term(1, k_ - i_ + 1, 1).mul_ref(&q_minus_1);
            } else if i == k {
                s[(kk, col)] = term(1, 1, 1).mul_ref(&q_minus_1);
                s[(at(k + 1, j), col)] = LaurentQT::q();
            } else if i == k + 1 {
                s[(at(k, j), col)] = LaurentQT::one();
                s[(col, col)] = one_minus_q.clone();
            } else if i < k && k + 1 < j {
                s[(col, col)] = LaurentQT::one();
                s[(kk, col)] = term(1, k_ - i_, 1).mul_ref(&q_minus_1.pow(2));
            } else {
                s[(col, col)] = LaurentQT::one();
            }
        }
        sigma.push(s);
    }
    Ok(KrammerModel { n, basis, sigma })
}

/// Every generator has a unit determinant.
pub fn generators_invertible(model: &KrammerModel) -> bool {
    model.sigma.iter().all(|s| determinant(s).is_unit())
}

pub fn check_braid_relations(model: &KrammerModel) -> bool {
    let s = &model.sigma;
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            let holds = if b == a + 1 {
                &(&s[a] * &s[b]) * &s[a] == &(&s[b] * &s[a]) * &s[b]
            } else {
                &s[a] * &s[b] == &s[b] * &s[a]
            };
            if !holds {
                return false;
            }
        }
    }
    true
}

/// `sigma_k^{-1}` over the Laurent ring, read off the relation
/// `(x - t q^2)(x - 1)(x + q) = 0`; `None` if the relation fails.
pub fn sigma_inverse(model: &KrammerModel, k: usize) -> Option<Matrix<LaurentQT>> {
    let s = &model.sigma[k];
    let id = Matrix::<LaurentQT>::identity(model.dim());
    let (q, tq2) = (LaurentQT::q(), term(1, 2, 1));
    // x^3 + a x^2 + b x + c with roots t q^2, 1, -q
    let a = q.sub_ref(&tq2).sub_ref(&LaurentQT::one());
    let b = tq2.sub_ref(&q).sub_ref(&tq2.mul_ref(&q));
    let s2 = s * s;
    let quad = &(&s2 + &s.scale(&a)) + &id.scale(&b);
    let inv = quad.scale(&term(-1, -3, -1));
    (&inv * s == id && s * &inv == id).then_some(inv)
}

/// The generators at `q = -zeta_3`, `t = 1`.
pub fn specialize_cubic(model: &KrammerModel) -> Vec<Matrix<CycNum>> {
    let q_pow = |a: i64| {
        let z = CycNum::zeta_pow(3, a);
        if a % 2 == 0 {
            z
        } else {
            z.neg_ref()
        }
    };
    let t_pow = |_: i64| CycNum::from_i64(3, 1);
    let scalar = |c: &Rational| CycNum::from_rational(3, c.clone());
    model
        .sigma
        .iter()
        .map(|s| s.map(|x| x.eval(q_pow, t_pow, scalar)))
        .collect()
}

pub fn cubic_specialization_check(model: &KrammerModel) -> bool {
    specialize_cubic(model).iter().all(|s| s.pow(3).is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn two_strands() {
        let k = build_krammer(2).unwrap();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.sigma[0][(0, 0)], term(1, 2, 1));
        assert!(matches!(build_krammer(1), Err(Error::TooFewStrands(1))));
    }

    #[test]
    fn displayed_entries() {
        let k = build_krammer(3).unwrap();
        let col = k.sigma[0].column(k.index(2, 3));
        assert_eq!(col[k.index(1, 3)], LaurentQT::one());
        assert_eq!(col[k.index(2, 3)], term(1, 0, 0).sub_ref(&LaurentQT::q()));
        assert_eq!(col[k.index(1, 2)], LaurentQT::zero());

        let k = build_krammer(4).unwrap();
        let col = k.sigma[1].column(k.index(1, 4));
        let qm1 = LaurentQT::q().sub_ref(&LaurentQT::one());
        assert_eq!(col[k.index(1, 4)], LaurentQT::one());
        assert_eq!(col[k.index(2, 3)], term(1, 1, 1).mul_ref(&qm1.pow(2)));
    }

    #[test]
    fn braid_relations_and_units() {
        for n in 2..=5 {
            let k = build_krammer(n).unwrap();
            assert!(check_braid_relations(&k), "n = {}", n);
            assert!(generators_invertible(&k), "n = {}", n);
        }
    }

    #[test]
    fn explicit_inverses() {
        for n in 2..=5 {
            let k = build_krammer(n).unwrap();
            for i in 0..n - 1 {
                assert!(sigma_inverse(&k, i).is_some(), "n = {} k = {}", n, i + 1);
            }
        }
    }

    #[test]
    fn cubic() {
        for n in 3..=5 {
            assert!(cubic_specialization_check(&build_krammer(n).unwrap()), "n = {}", n);
        }
        let k = build_krammer(3).unwrap();
        assert!(!k.sigma[0].pow(3).is_identity());
    }

    #[test]
    fn tampered_entry_breaks_braid() {
        let mut k = build_krammer(3).unwrap();
        let i = k.index(1, 2);
        k.sigma[0][(i, i)] = term(1, 2, 2);
        assert!(!check_braid_relations(&k));
    }

    #[test]
    fn ring_axioms_small() {
        let a = term(2, 1, -1).add_ref(&term(-1, 0, 3));
        let b = LaurentQT::monomial(rat(1) / rat(3), -2, 0).add_ref(&LaurentQT::t());
        let c = LaurentQT::q().sub_ref(&term(5, 0, 0));
        assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        assert!(a.sub_ref(&a).is_zero());
    }
}
