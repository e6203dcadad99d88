use super::{build_series, GroupElement, ReflectionGroupData};
use crate::arith::{frac, CycNum, Field, Matrix, Ring};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::HashSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    A(u32),
    B(u32),
    D(u32),
    I2(u32),
    H3,
    H4,
    F4,
    E6,
    E7,
    E8,
}

pub const MAX_RANK: u32 = 9;

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{}", n),
            CoxeterType::B(n) => write!(f, "B{}", n),
            CoxeterType::D(n) => write!(f, "D{}", n),
            CoxeterType::I2(e) => write!(f, "I2({})", e),
            CoxeterType::H3 => write!(f, "H3"),
            CoxeterType::H4 => write!(f, "H4"),
            CoxeterType::F4 => write!(f, "F4"),
            CoxeterType::E6 => write!(f, "E6"),
            CoxeterType::E7 => write!(f, "E7"),
            CoxeterType::E8 => write!(f, "E8"),
        }
    }
}

impl CoxeterType {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::UnsupportedType(msg));
        match *self {
            CoxeterType::A(n) if !(1..=MAX_RANK).contains(&n) => bad(format!("A{}: rank must be in 1..={}", n, MAX_RANK)),
            CoxeterType::B(n) if !(1..=MAX_RANK).contains(&n) => bad(format!("B{}: rank must be in 1..={}", n, MAX_RANK)),
            CoxeterType::D(n) if !(2..=MAX_RANK).contains(&n) => bad(format!("D{}: rank must be in 2..={}", n, MAX_RANK)),
            CoxeterType::I2(e) if e < 2 => bad(format!("I2({}): e must be at least 2", e)),
            _ => Ok(()),
        }
    }
}

pub fn build_coxeter(t: CoxeterType) -> Result<ReflectionGroupData> {
    t.validate()?;
    let mut g = match t {
        CoxeterType::A(n) => build_series(1, 1, n + 1)?,
        CoxeterType::B(n) => build_series(2, 1, n)?,
        CoxeterType::D(n) => build_series(2, 2, n)?,
        CoxeterType::I2(e) => build_series(e, e, 2)?,
        CoxeterType::H3 => from_roots(3, 5, h3_roots(), 15)?,
        CoxeterType::H4 => from_roots(4, 5, h4_roots(), 60)?,
        CoxeterType::F4 => from_roots(4, 1, f4_roots(), 24)?,
        CoxeterType::E6 => from_roots(8, 1, e6_roots(), 36)?,
        CoxeterType::E7 => from_roots(8, 1, e7_roots(), 63)?,
        CoxeterType::E8 => from_roots(8, 1, e8_roots(), 120)?,
    };
    g.name = t.to_string();
    Ok(g)
}

/// `x -> x - 2 (x,a)/(a,a) a` for a real root `a`.
fn real_reflection(a: &[CycNum]) -> GroupElement {
    let n = a.len();
    let mut aa = CycNum::zero();
    for x in a {
        aa.add_assign_ref(&x.mul_ref(x));
    }
    let f = CycNum::from_i64(1, 2).mul_ref(&aa.inv().expect("zero root"));
    Matrix::from_fn(n, n, |i, j| {
        let v = f.mul_ref(&a[i]).mul_ref(&a[j]);
        if i == j {
            CycNum::one().sub_ref(&v)
        } else {
            v.neg_ref()
        }
    })
}

fn from_roots(rank: usize, cond: u32, roots: Vec<Vec<CycNum>>, expected: usize) -> Result<ReflectionGroupData> {
    let mut seen = HashSet::new();
    let mut mats = Vec::new();
    for a in roots {
        let a: Vec<CycNum> = a.into_iter().map(|x| x.lift(cond)).collect();
        let s = real_reflection(&a).map(|x| x.lift(cond));
        if seen.insert(s.clone()) {
            mats.push(s);
        }
    }
    ReflectionGroupData::from_reflections("", rank, cond, mats, expected)
}

fn q(n: i64, d: i64) -> CycNum {
    CycNum::rational(frac(n, d))
}

fn sign_combos(len: usize) -> Vec<Vec<i64>> {
    (0..1u32 << len)
        .map(|mask| (0..len).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

fn even_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut p, &mut out);
    out.into_iter()
        .filter(|p| {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            inv % 2 == 0
        })
        .collect()
}

fn heap_permute(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

fn unit_vectors(n: usize) -> Vec<Vec<CycNum>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { q(1, 1) } else { q(0, 1) }).collect())
        .collect()
}

/// Golden ratio in Q(zeta_5).
pub fn golden_ratio() -> CycNum {
    CycNum::zeta_pow(5, 2).add_ref(&CycNum::zeta_pow(5, 3)).neg_ref()
}

fn signed_even_perms(base: &[CycNum]) -> Vec<Vec<CycNum>> {
    let n = base.len();
    let mut out = Vec::new();
    for perm in even_permutations(n) {
        for signs in sign_combos(n) {
            out.push(
                (0..n)
                    .map(|i| {
                        let v = &base[perm[i]];
                        if signs[i] < 0 {
                            v.neg_ref()
                        } else {
                            v.clone()
                        }
                    })
                    .collect(),
            );
        }
    }
    out
}

fn h3_roots() -> Vec<Vec<CycNum>> {
    let tau = golden_ratio();
    let tau_inv = tau.sub_ref(&CycNum::one());
    let half = q(1, 2);
    let mut roots = unit_vectors(3);
    roots.extend(signed_even_perms(&[half.clone(), half.mul_ref(&tau), half.mul_ref(&tau_inv)]));
    roots
}

fn h4_roots() -> Vec<Vec<CycNum>> {
    let tau = golden_ratio();
    let tau_inv = tau.sub_ref(&CycNum::one());
    let half = q(1, 2);
    let mut roots = unit_vectors(4);
    for s in sign_combos(4) {
        roots.push(s.iter().map(|&x| q(x, 2)).collect());
    }
    roots.extend(signed_even_perms(&[q(0, 1), half.clone(), half.mul_ref(&tau), half.mul_ref(&tau_inv)]));
    roots
}

fn pair_roots(n: usize) -> Vec<Vec<CycNum>> {
    let mut roots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for sj in [1, -1] {
                let mut v = vec![q(0, 1); n];
                v[i] = q(1, 1);
                v[j] = q(sj, 1);
                roots.push(v);
            }
        }
    }
    roots
}

fn f4_roots() -> Vec<Vec<CycNum>> {
    let mut roots = unit_vectors(4);
    roots.extend(pair_roots(4));
    for s in sign_combos(4) {
        roots.push(s.iter().map(|&x| q(x, 2)).collect());
    }
    roots
}

fn e8_roots() -> Vec<Vec<CycNum>> {
    let mut roots = pair_roots(8);
    for s in sign_combos(8) {
        if s.iter().filter(|&&x| x < 0).count() % 2 == 0 {
            roots.push(s.iter().map(|&x| q(x, 2)).collect());
        }
    }
    roots
}

fn dot(a: &[CycNum], b: &[CycNum]) -> CycNum {
    let mut acc = CycNum::zero();
    for (x, y) in a.iter().zip(b) {
        acc.add_assign_ref(&x.mul_ref(y));
    }
    acc
}

fn orthogonal_to(roots: Vec<Vec<CycNum>>, vs: &[Vec<i64>]) -> Vec<Vec<CycNum>> {
    let vs: Vec<Vec<CycNum>> = vs.iter().map(|v| v.iter().map(|&x| q(x, 1)).collect()).collect();
    roots
        .into_iter()
        .filter(|a| vs.iter().all(|v| dot(a, v).is_zero()))
        .collect()
}

fn e7_roots() -> Vec<Vec<CycNum>> {
    orthogonal_to(e8_roots(), &[vec![0, 0, 0, 0, 0, 0, 1, 1]])
}

fn e6_roots() -> Vec<Vec<CycNum>> {
    orthogonal_to(
        e8_roots(),
        &[vec![0, 0, 0, 0, 0, 0, 1, 1], vec![0, 0, 0, 0, 0, 1, -1, 0]],
    )
}
