//! The invariant form on the span of a reflection class and its discriminant.

pub mod closed;
pub mod fixture;

use crate::arith::{char_poly, integer_roots, rat, Field, Matrix, ParamPoly, Rational, Ring};
use crate::error::Result;
use crate::groups::ReflectionGroupData;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

pub use closed::{closed_form_check, conjecture_scan, ClosedFormReport, ConjectureReport};

/// Integer matrix `A_c`: 1 on the diagonal, `alpha(s,u)` elsewhere.
#[derive(Clone, Debug)]
pub struct ClassForm {
    pub class_index: usize,
    pub members: Vec<usize>,
    pub a_matrix: Matrix<Rational>,
}

impl ClassForm {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// `A_c - m I`.
    pub fn gram(&self) -> Matrix<ParamPoly> {
        let m = ParamPoly::m();
        Matrix::from_fn(self.size(), self.size(), |i, j| {
            let a = ParamPoly::constant(self.a_matrix[(i, j)].clone());
            if i == j {
                &a - &m
            } else {
                a
            }
        })
    }

    pub fn gram_at(&self, m0: &Rational) -> Matrix<Rational> {
        Matrix::from_fn(self.size(), self.size(), |i, j| {
            let a = self.a_matrix[(i, j)].clone();
            if i == j {
                a - m0
            } else {
                a
            }
        })
    }
}

pub fn gram_matrix(g: &ReflectionGroupData, c: usize) -> Result<ClassForm> {
    g.class_stats(c)?;
    let members = g.classes[c].clone();
    let n = members.len();
    let a = Matrix::from_fn(n, n, |i, j| rat(g.alpha[members[i]][members[j]] as i64));
    Ok(ClassForm {
        class_index: c,
        members,
        a_matrix: a,
    })
}

/// `sign * remainder * prod (m - root)^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discriminant {
    pub sign: i32,
    /// Roots in descending order.
    pub factors: Vec<(BigInt, usize)>,
    pub remainder: ParamPoly,
}

impl Discriminant {
    pub fn from_poly(p: &ParamPoly) -> Result<Self> {
        let r = integer_roots(p)?;
        Ok(Discriminant {
            sign: r.sign,
            factors: r.factors,
            remainder: r.remainder,
        })
    }

    pub fn expand(&self) -> ParamPoly {
        &ParamPoly::from_factors(self.sign, &self.factors) * &self.remainder
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.1).sum::<usize>() + self.remainder.degree().unwrap_or(0)
    }

    pub fn splits(&self) -> bool {
        self.remainder.degree() == Some(0)
    }

    pub fn multiplicity(&self, root: i64) -> usize {
        let r = BigInt::from(root);
        self.factors.iter().find(|f| f.0 == r).map_or(0, |f| f.1)
    }

    pub fn factor_map(&self) -> BTreeMap<BigInt, usize> {
        self.factors.iter().cloned().collect()
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|(r, k)| json!([int_value(r), k]))
            .collect();
        let rem: Vec<Value> = self.remainder.coeffs().iter().map(rational_value).collect();
        json!({ "sign": self.sign, "factors": factors, "remainder": rem })
    }
}

pub fn int_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

pub(crate) fn rational_value(v: &Rational) -> Value {
    if v.is_integer() {
        int_value(v.numer())
    } else {
        json!(v.to_string())
    }
}

pub(crate) fn linear_factor(r: &BigInt) -> String {
    if r.is_zero() {
        "m".to_string()
    } else if r.is_positive() {
        format!("(m-{})", r)
    } else {
        format!("(m+{})", -r)
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut body = String::new();
        for (r, k) in &self.factors {
            body.push_str(&linear_factor(r));
            if *k > 1 {
                body.push_str(&format!("^{}", k));
            }
        }
        let rem_one = self.remainder.is_one();
        if !rem_one {
            body.push_str(&format!("({})", self.remainder));
        }
        if body.is_empty() {
            body.push('1');
        }
        if self.sign < 0 {
            write!(f, "-{}", body)
        } else {
            write!(f, "{}", body)
        }
    }
}

/// Factored `det(A_c - m I)`.
pub fn discriminant(g: &ReflectionGroupData, c: usize) -> Result<Discriminant> {
    let form = gram_matrix(g, c)?;
    Discriminant::from_poly(&char_poly(&form.a_matrix)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcCheck {
    pub n: u64,
    pub ok: bool,
    pub detail: String,
}

/// `N(c)` is a simple root and exceeds every other root.
pub fn check_n_c(g: &ReflectionGroupData, c: usize) -> Result<NcCheck> {
    let (n, _) = g.class_stats(c)?;
    let d = discriminant(g, c)?;
    Ok(n_c_against(n, &d))
}

pub fn n_c_against(n: u64, d: &Discriminant) -> NcCheck {
    let nb = BigInt::from(n);
    let mult = d.factors.iter().find(|f| f.0 == nb).map_or(0, |f| f.1);
    if mult != 1 {
        return NcCheck {
            n,
            ok: false,
            detail: format!("N(c) = {} has multiplicity {}", n, mult),
        };
    }
    if let Some((r, _)) = d.factors.iter().find(|f| f.0 > nb) {
        return NcCheck {
            n,
            ok: false,
            detail: format!("root {} exceeds N(c) = {}", r, n),
        };
    }
    if !d.splits() {
        let bound = cauchy_bound(&d.remainder);
        if bound >= Rational::from_integer(nb.clone()) {
            return NcCheck {
                n,
                ok: false,
                detail: format!(
                    "remainder {} has real roots bounded only by {}, not below N(c) = {}",
                    d.remainder, bound, n
                ),
            };
        }
    }
    NcCheck {
        n,
        ok: true,
        detail: format!("N(c) = {} is the largest root, simple", n),
    }
}

fn cauchy_bound(p: &ParamPoly) -> Rational {
    let lc = p.leading().unwrap().abs();
    let deg = p.degree().unwrap();
    let mx = p.coeffs()[..deg].iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero);
    Rational::one() + mx / lc
}

/// Kernel of `A_c - m0 I`.
pub fn kernel_at(g: &ReflectionGroupData, c: usize, m0: &Rational) -> Result<Vec<Vec<Rational>>> {
    Ok(gram_matrix(g, c)?.gram_at(m0).rank_and_kernel().1)
}

/// Definiteness of the form at `m0`. The diagonal entries are `1 - m0`, so for
/// large `m0` the form is negative definite; this tests `m0 I - A_c` for
/// positive elimination pivots (leading principal minors).
pub fn definite_at(form: &ClassForm, m0: &Rational) -> bool {
    let mut a = form.gram_at(m0).map(|x| -x.clone());
    let n = a.rows();
    for k in 0..n {
        let piv = a[(k, k)].clone();
        if !piv.is_positive() {
            return false;
        }
        let inv = piv.inv().unwrap();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].mul_ref(&inv);
            for j in k..n {
                let v = f.mul_ref(&a[(k, j)]);
                a[(i, j)].sub_assign_ref(&v);
            }
        }
    }
    true
}

/// `A_c` is fixed by the permutation every reflection induces on the class.
pub fn form_is_invariant(g: &ReflectionGroupData, form: &ClassForm) -> bool {
    let pos: BTreeMap<usize, usize> = form.members.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    (0..g.len()).all(|w| {
        let perm: Vec<usize> = form.members.iter().map(|&s| pos[&g.conj[w][s]]).collect();
        (0..form.size()).all(|i| (0..form.size()).all(|j| form.a_matrix[(perm[i], perm[j])] == form.a_matrix[(i, j)]))
    })
}

/// Row sums of `A_c` all equal `N(c)`.
pub fn row_sums_equal(form: &ClassForm, n: u64) -> bool {
    let target = rat(n as i64);
    (0..form.size()).all(|i| form.a_matrix.row(i).iter().fold(Rational::zero(), |a, b| a + b) == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_coxeter, build_series, CoxeterType};

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn a2_form() {
        let g = build_series(1, 1, 3).unwrap();
        let f = gram_matrix(&g, 0).unwrap();
        assert!(f.a_matrix.data().iter().all(|x| *x == rat(1)));
        let d = discriminant(&g, 0).unwrap();
        assert_eq!(d.sign, -1);
        assert_eq!(d.factors, vec![(b(3), 1), (b(0), 2)]);
        assert_eq!(d.to_string(), "-(m-3)m^2");
        let k = kernel_at(&g, 0, &rat(3)).unwrap();
        assert_eq!(k.len(), 1);
        assert!(k[0].iter().all(|x| *x == k[0][0]));
        assert!(kernel_at(&g, 0, &rat(7)).unwrap().is_empty());
        assert!(form_is_invariant(&g, &f));
        assert!(definite_at(&f, &rat(4)));
        assert!(!definite_at(&f, &rat(2)));
    }

    #[test]
    fn g333_row() {
        let g = build_series(3, 3, 3).unwrap();
        let d = discriminant(&g, 0).unwrap();
        assert_eq!(d.sign, -1);
        assert_eq!(d.factors, vec![(b(9), 1), (b(0), 8)]);
        assert_eq!(
            d.to_json().to_string(),
            r#"{"factors":[[9,1],[0,8]],"remainder":[1],"sign":-1}"#
        );
        assert!(check_n_c(&g, 0).unwrap().ok);
    }

    #[test]
    fn i2_5_kernel_at_zero() {
        let g = build_series(5, 5, 2).unwrap();
        let k = kernel_at(&g, 0, &rat(0)).unwrap();
        assert_eq!(k.len(), 4);
        for v in k {
            assert_eq!(v.iter().fold(Rational::zero(), |a, x| a + x), rat(0));
        }
    }

    #[test]
    fn h3_discriminant() {
        let g = build_coxeter(CoxeterType::H3).unwrap();
        let d = discriminant(&g, 0).unwrap();
        assert_eq!(d.factors, vec![(b(13), 1), (b(1), 10), (b(-2), 4)]);
        assert_eq!(d.sign, -1);
    }

    #[test]
    fn n_c_detects_failures() {
        let d = Discriminant {
            sign: 1,
            factors: vec![(b(7), 2)],
            remainder: ParamPoly::one(),
        };
        assert!(!n_c_against(7, &d).ok);
        let d = Discriminant {
            sign: 1,
            factors: vec![(b(9), 1), (b(7), 1)],
            remainder: ParamPoly::one(),
        };
        assert!(!n_c_against(7, &d).ok);
    }
}
