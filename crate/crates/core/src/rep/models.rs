//! Explicit models: type B_n through signed permutations, and odd dihedral
//! groups at `m = 0`.

use super::{build_rep, build_rep_at};
use crate::arith::{rat, CycNum, Matrix, ParamPoly, Rational, Ring, SparseMatrix};
use crate::error::{Error, Result};
use crate::form::kernel_at;
use crate::groups::{build_series, GroupElement};
use num_traits::{One, Zero};
use std::collections::{HashSet, VecDeque};

/// `e_k -> sign[k] e_{perm[k]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct SignedPerm {
    perm: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedPerm {
    fn identity(n: usize) -> Self {
        SignedPerm {
            perm: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    /// `self` after `other`.
    fn compose(&self, other: &Self) -> Self {
        let n = self.perm.len();
        let mut out = SignedPerm::identity(n);
        for k in 0..n {
            let j = other.perm[k];
            out.perm[k] = self.perm[j];
            out.sign[k] = other.sign[k] * self.sign[j];
        }
        out
    }

    fn matrix(&self) -> GroupElement {
        let n = self.perm.len();
        let mut m = Matrix::<CycNum>::zeros(n, n);
        for k in 0..n {
            m[(self.perm[k], k)] = CycNum::from_i64(1, self.sign[k] as i64);
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BnReflection {
    /// `z_i -> -z_i`.
    Sign(usize),
    /// `z_i <-> z_j`.
    Swap(usize, usize),
    /// `z_i -> -z_j`, `z_j -> -z_i`.
    NegSwap(usize, usize),
}

impl BnReflection {
    fn signed_perm(self, n: usize) -> SignedPerm {
        let mut p = SignedPerm::identity(n);
        match self {
            BnReflection::Sign(i) => p.sign[i] = -1,
            BnReflection::Swap(i, j) => {
                p.perm[i] = j;
                p.perm[j] = i;
            }
            BnReflection::NegSwap(i, j) => {
                p.perm[i] = j;
                p.perm[j] = i;
                p.sign[i] = -1;
                p.sign[j] = -1;
            }
        }
        p
    }

    fn indices(self) -> Vec<usize> {
        match self {
            BnReflection::Sign(i) => vec![i],
            BnReflection::Swap(i, j) | BnReflection::NegSwap(i, j) => vec![i, j],
        }
    }
}

fn bn_reflections(n: usize) -> (Vec<BnReflection>, Vec<BnReflection>) {
    let small = (0..n).map(BnReflection::Sign).collect();
    let mut large = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            large.push(BnReflection::Swap(i, j));
            large.push(BnReflection::NegSwap(i, j));
        }
    }
    (small, large)
}

/// `alpha` between two reflections of the same class, read off the model.
fn model_alpha(a: BnReflection, b: BnReflection) -> i64 {
    match (a, b) {
        (BnReflection::Sign(_), BnReflection::Sign(_)) => 2,
        (BnReflection::Sign(_), _) | (_, BnReflection::Sign(_)) => 0,
        _ => {
            let (x, y) = (a.indices(), b.indices());
            match x.iter().filter(|i| y.contains(i)).count() {
                2 => 2,
                1 => 1,
                _ => 0,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BnModelReport {
    pub n: usize,
    pub small_class_matches: bool,
    pub large_class_matches: bool,
}

/// Compares the representation of B_n with the explicit model on both classes.
pub fn bn_model_check(n: usize) -> Result<BnModelReport> {
    if n < 2 {
        return Err(Error::UnsupportedType(format!("B{}: model needs n >= 2", n)));
    }
    let g = build_series(2, 1, n as u32)?;
    let rep = build_rep(&g);
    let (small, large) = bn_reflections(n);
    let all: Vec<BnReflection> = small.iter().chain(&large).copied().collect();
    let index = |r: BnReflection| -> Result<usize> {
        g.index_of(&r.signed_perm(n).matrix())
            .ok_or_else(|| Error::UnsupportedType(format!("{:?} not found in B{}", r, n)))
    };
    let mut idx = Vec::new();
    for &r in &all {
        idx.push(index(r)?);
    }
    let find = |p: &SignedPerm| all.iter().position(|r| r.signed_perm(n) == *p).unwrap();
    let m = ParamPoly::m();
    let class_matches = |class: &[BnReflection], offset: usize| -> bool {
        let basis: Vec<usize> = (0..class.len()).map(|k| idx[offset + k]).collect();
        all.iter().enumerate().all(|(xi, &x)| {
            let xp = x.signed_perm(n);
            let in_class = class.contains(&x);
            let mut trip = Vec::new();
            for (k, &u) in class.iter().enumerate() {
                if in_class && u == x {
                    trip.push((k, k, m.clone()));
                    continue;
                }
                let conj = xp.compose(&u.signed_perm(n)).compose(&xp);
                let target = find(&conj) - offset;
                trip.push((target, k, ParamPoly::one()));
                if in_class {
                    let a = model_alpha(x, u);
                    if a != 0 {
                        let pos = class.iter().position(|&y| y == x).unwrap();
                        trip.push((pos, k, ParamPoly::from_ints(&[-a])));
                    }
                }
            }
            let model = SparseMatrix::from_triples(class.len(), class.len(), trip);
            rep.t_mats[idx[xi]].submatrix(&basis, &basis) == model
        })
    };
    Ok(BnModelReport {
        n,
        small_class_matches: class_matches(&small, 0),
        large_class_matches: class_matches(&large, small.len()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralReport {
    pub e: u32,
    pub group_order: usize,
    /// The kernel of the form at `m = 0` is the zero-sum hyperplane.
    pub kernel_is_zero_sum: bool,
    /// `t_s` and `s` agree on that kernel for every `s`.
    pub t_equals_s_on_kernel: bool,
    /// `chi_U = sum_k chi_k` on every group element.
    pub character_identity: bool,
    /// Values of `chi_U` at the identity, a nontrivial rotation and a reflection.
    pub chi_u_values: (i64, i64, i64),
    /// In the explicit model each `chi_k` is zero on reflections and
    /// `zeta^{ak} + zeta^{-ak}` on the rotation by `a`.
    pub chi_k_vanishes_on_reflections: bool,
}

impl DihedralReport {
    pub fn ok(&self) -> bool {
        self.kernel_is_zero_sum && self.t_equals_s_on_kernel && self.character_identity
    }
}

fn enumerate_group(gens: &[GroupElement]) -> Vec<GroupElement> {
    let n = gens[0].rows();
    let cond = gens[0][(0, 0)].conductor().max(gens[0][(0, 1)].conductor());
    let id = Matrix::<CycNum>::identity(n).map(|x| x.lift(cond));
    let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

/// `I2(e)` for odd `e` at `m = 0`.
pub fn dihedral_m0_check(e: u32) -> Result<DihedralReport> {
    if e < 3 || e.is_multiple_of(2) {
        return Err(Error::EvenDihedral(e));
    }
    let g = build_series(e, e, 2)?;
    let n = g.len();
    let zero = rat(0);
    let kernel = kernel_at(&g, 0, &zero)?;
    let kernel_is_zero_sum = kernel.len() == n - 1
        && kernel
            .iter()
            .all(|v| v.iter().fold(Rational::zero(), |a, b| a + b).is_zero());
    let rep = build_rep_at(&g, &zero);
    let t_equals_s_on_kernel = (0..n).all(|s| {
        kernel
            .iter()
            .all(|v| rep.t_mats[s].mul_vec(v) == rep.s_mats[s].mul_vec(v))
    });
    let elems: Vec<GroupElement> = g.reflections.iter().map(|r| r.element.clone()).collect();
    let group = enumerate_group(&elems);
    let zeta = |a: i64| CycNum::zeta_pow(e, a);
    let exponent = |x: &CycNum| (0..e as i64).find(|&a| *x == zeta(a));
    let mut character_identity = true;
    let mut chi_k_vanishes_on_reflections = true;
    let mut values = (0, 0, 0);
    for w in &group {
        let commuting = elems.iter().filter(|s| (w * *s) == (*s * w)).count() as i64;
        let chi_u = commuting - 1;
        let rotation = w[(0, 1)].is_zero();
        let a = if rotation {
            exponent(&w[(0, 0)])
        } else {
            exponent(&w[(0, 1)])
        }
        .expect("entries of G(e,e,2) are powers of zeta");
        let mut sum = CycNum::zero_in(e);
        for k in 1..=((e as i64 - 1) / 2) {
            let chi_k = if rotation {
                zeta(a * k).add_ref(&zeta(-a * k))
            } else {
                CycNum::zero_in(e)
            };
            if !rotation && !chi_k.is_zero() {
                chi_k_vanishes_on_reflections = false;
            }
            sum.add_assign_ref(&chi_k);
        }
        if sum != CycNum::from_i64(e, chi_u) {
            character_identity = false;
        }
        if rotation && a == 0 {
            values.0 = chi_u;
        } else if rotation {
            values.1 = chi_u;
        } else {
            values.2 = chi_u;
        }
    }
    Ok(DihedralReport {
        e,
        group_order: group.len(),
        kernel_is_zero_sum,
        t_equals_s_on_kernel,
        character_identity,
        chi_u_values: values,
        chi_k_vanishes_on_reflections,
    })
}
