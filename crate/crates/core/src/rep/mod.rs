//! The infinitesimal representation `t_s = s - p_s` on the span of the
//! reflections, with the checks that apply to it.

pub mod algebra;
pub mod models;
pub mod spectral;
pub mod tensor;

use crate::arith::{rat, ParamPoly, Rational, Ring, SparseMatrix};
use crate::arrangement::{codim2_flats, parabolic_reflections, FlatTable};
use crate::error::{Error, Result};
use crate::groups::ReflectionGroupData;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub use algebra::algebra_dimension;

/// Above this many reflections equivariance is checked on sampled pairs.
pub const EXHAUSTIVE_LIMIT: usize = 60;
pub const EQUIVARIANCE_SAMPLES: usize = 500;
/// Sample points used when a symbolic check is too large.
pub fn sample_points() -> [Rational; 2] {
    [rat(7), crate::arith::frac(22, 7)]
}

/// Matrices of `t_s`, `s` and `p_s` on `V`, indexed by reflection.
#[derive(Clone, Debug)]
pub struct RepBundle<'g, T> {
    pub group: &'g ReflectionGroupData,
    pub m: T,
    pub t_mats: Vec<SparseMatrix<T>>,
    pub s_mats: Vec<SparseMatrix<T>>,
    pub p_mats: Vec<SparseMatrix<T>>,
}

pub type SymbolicRep<'g> = RepBundle<'g, ParamPoly>;
pub type SampledRep<'g> = RepBundle<'g, Rational>;

fn build_with<T: Ring>(g: &ReflectionGroupData, m: T) -> RepBundle<'_, T> {
    let n = g.len();
    let one_minus_m = T::one().sub_ref(&m);
    let mut t_mats = Vec::with_capacity(n);
    let mut s_mats = Vec::with_capacity(n);
    let mut p_mats = Vec::with_capacity(n);
    for s in 0..n {
        let perm = (0..n).map(|u| (g.conj[s][u], u, T::one()));
        s_mats.push(SparseMatrix::from_triples(n, n, perm));
        let p = g.classes[g.class_of[s]].iter().map(|&u| {
            let v = if u == s {
                one_minus_m.clone()
            } else {
                T::from_int(g.alpha[s][u] as i64)
            };
            (s, u, v)
        });
        p_mats.push(SparseMatrix::from_triples(n, n, p));
        let mut t = Vec::with_capacity(2 * n);
        for u in 0..n {
            if u == s {
                t.push((s, s, m.clone()));
            } else {
                t.push((g.conj[s][u], u, T::one()));
                if g.alpha[s][u] != 0 {
                    t.push((s, u, T::from_int(-(g.alpha[s][u] as i64))));
                }
            }
        }
        t_mats.push(SparseMatrix::from_triples(n, n, t));
    }
    RepBundle {
        group: g,
        m,
        t_mats,
        s_mats,
        p_mats,
    }
}

/// The representation over the polynomial ring in `m`.
pub fn build_rep(g: &ReflectionGroupData) -> SymbolicRep<'_> {
    build_with(g, ParamPoly::m())
}

/// The representation specialised at `m = m0`.
pub fn build_rep_at<'g>(g: &'g ReflectionGroupData, m0: &Rational) -> SampledRep<'g> {
    build_with(g, m0.clone())
}

/// Outcome of a check that can point at the first offending item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub ok: bool,
    pub detail: Option<String>,
}

impl CheckOutcome {
    pub fn pass() -> Self {
        CheckOutcome { ok: true, detail: None }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        CheckOutcome {
            ok: false,
            detail: Some(detail.into()),
        }
    }
}

impl<'g, T: Ring> RepBundle<'g, T> {
    pub fn dim(&self) -> usize {
        self.group.len()
    }

    /// `t = s - p`, `p^2 = (1-m) p`, `s p = p s = p`, and block structure.
    pub fn structure_check(&self) -> CheckOutcome {
        let g = self.group;
        let one_minus_m = T::one().sub_ref(&self.m);
        for s in 0..self.dim() {
            let (t, sm, p) = (&self.t_mats[s], &self.s_mats[s], &self.p_mats[s]);
            if *t != sm.sub(p) {
                return CheckOutcome::fail(format!("t != s - p at reflection {}", s));
            }
            if p.mul(p) != p.scale(&one_minus_m) {
                return CheckOutcome::fail(format!("p^2 != (1-m) p at reflection {}", s));
            }
            if sm.mul(p) != *p || p.mul(sm) != *p {
                return CheckOutcome::fail(format!("s p != p at reflection {}", s));
            }
            for i in 0..self.dim() {
                if t.row(i).iter().any(|&(j, _)| g.class_of[i] != g.class_of[j]) {
                    return CheckOutcome::fail(format!("t_{} mixes classes in row {}", s, i));
                }
            }
        }
        CheckOutcome::pass()
    }

    /// `[sum_{y in R_Z} t_y, t_x] = 0` for every codimension-2 flat `Z` and `x` in `R_Z`.
    pub fn check_integrability(&self, flats: &FlatTable) -> CheckOutcome {
        let n = self.dim();
        for (zi, z) in flats.flats.iter().enumerate() {
            let mut total = SparseMatrix::zeros(n, n);
            for &y in &z.members {
                total = total.add(&self.t_mats[y]);
            }
            for &x in &z.members {
                if !total.commutator(&self.t_mats[x]).is_zero() {
                    return CheckOutcome::fail(format!("flat {} (reflections {:?}), x = {}", zi, z.members, x));
                }
            }
        }
        CheckOutcome::pass()
    }

    /// `w t_s w^-1 = t_{wsw}`; all pairs up to `EXHAUSTIVE_LIMIT` reflections,
    /// otherwise `EQUIVARIANCE_SAMPLES` seeded random pairs.
    pub fn check_equivariance(&self) -> CheckOutcome {
        let n = self.dim();
        let pairs: Vec<(usize, usize)> = if n <= EXHAUSTIVE_LIMIT {
            (0..n).flat_map(|w| (0..n).map(move |s| (w, s))).collect()
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            (0..EQUIVARIANCE_SAMPLES)
                .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
                .collect()
        };
        for (w, s) in pairs {
            if !self.equivariant_pair(w, s) {
                return CheckOutcome::fail(format!("w = {}, s = {}", w, s));
            }
        }
        CheckOutcome::pass()
    }

    fn equivariant_pair(&self, w: usize, s: usize) -> bool {
        let pw = &self.s_mats[w];
        // s_mats[w] is an involution, so it is its own inverse.
        let lhs = pw.mul(&self.t_mats[s]).mul(pw);
        lhs == self.t_mats[self.group.conj[w][s]]
    }

    /// `sum_s t_s` acts on `V_c` by `m - 1 + C(c)`.
    pub fn check_t_scalar(&self, c: usize) -> Result<CheckOutcome> {
        let (_, cc) = self.group.class_stats(c)?;
        let n = self.dim();
        let scalar = self.m.add_ref(&T::from_int(cc as i64 - 1));
        let mut total = SparseMatrix::zeros(n, n);
        for t in &self.t_mats {
            total = total.add(t);
        }
        let cols = &self.group.classes[c];
        let all: Vec<usize> = (0..n).collect();
        let block = total.submatrix(&all, cols);
        let expected = SparseMatrix::from_triples(
            n,
            cols.len(),
            cols.iter().enumerate().map(|(k, &u)| (u, k, scalar.clone())),
        );
        Ok(if block == expected {
            CheckOutcome::pass()
        } else {
            CheckOutcome::fail(format!("T is not {:?} on class {}", scalar, c))
        })
    }

    /// Transposes agree with the action on the dual basis.
    pub fn dual_check(&self) -> CheckOutcome {
        let g = self.group;
        let n = self.dim();
        for s in 0..n {
            let mut d = Vec::new();
            d.push((s, s, self.m.clone()));
            for u in 0..n {
                if u != s {
                    if g.alpha[s][u] != 0 {
                        d.push((u, s, T::from_int(-(g.alpha[s][u] as i64))));
                    }
                    d.push((g.conj[s][u], u, T::one()));
                }
            }
            let dual = SparseMatrix::from_triples(n, n, d);
            if dual != self.t_mats[s].transpose() {
                return CheckOutcome::fail(format!("dual action differs at reflection {}", s));
            }
        }
        CheckOutcome::pass()
    }

    /// `(m+1) s = -t^2 + (m+1) t + 1`.
    pub fn s_from_t_check(&self) -> CheckOutcome {
        let n = self.dim();
        let mp1 = self.m.add_ref(&T::one());
        let id = SparseMatrix::identity(n);
        for s in 0..n {
            let t = &self.t_mats[s];
            let rhs = t.scale(&mp1).sub(&t.mul(t)).add(&id);
            if self.s_mats[s].scale(&mp1) != rhs {
                return CheckOutcome::fail(format!("reflection {}", s));
            }
        }
        CheckOutcome::pass()
    }

    /// Gram matrix of the form on `V`: `alpha` off the diagonal, `1 - m` on it.
    pub fn gram(&self) -> SparseMatrix<T> {
        let g = self.group;
        let n = self.dim();
        let one_minus_m = T::one().sub_ref(&self.m);
        let mut trip = Vec::new();
        for s in 0..n {
            for &u in &g.classes[g.class_of[s]] {
                let v = if u == s {
                    one_minus_m.clone()
                } else {
                    T::from_int(g.alpha[s][u] as i64)
                };
                trip.push((s, u, v));
            }
        }
        SparseMatrix::from_triples(n, n, trip)
    }

    /// `G p_s = p_s^T G` and `G t_s = t_s^T G` for every `s`.
    pub fn self_adjoint_check(&self) -> CheckOutcome {
        let gram = self.gram();
        for s in 0..self.dim() {
            for (name, x) in [("p", &self.p_mats[s]), ("t", &self.t_mats[s])] {
                if gram.mul(x) != x.transpose().mul(&gram) {
                    return CheckOutcome::fail(format!("{}_{} is not self-adjoint", name, s));
                }
            }
        }
        CheckOutcome::pass()
    }

    /// Restriction to the parabolic generated by `seed`.
    pub fn parabolic_restriction_check(&self, seed: &[usize]) -> Result<CheckOutcome> {
        let g = self.group;
        let n = self.dim();
        let r0 = parabolic_reflections(g, seed)?;
        if r0.is_empty() || r0.len() == n {
            return Err(Error::ImproperSeed(format!(
                "parabolic has {} of {} reflections",
                r0.len(),
                n
            )));
        }
        let inside: Vec<bool> = (0..n).map(|u| r0.contains(&u)).collect();
        let pos = |u: usize| r0.iter().position(|&x| x == u).unwrap();
        let sub = r0.len();
        for &s in &r0 {
            let t = &self.t_mats[s];
            // alpha recomputed inside the parabolic
            let mut local = Vec::new();
            for &u in &r0 {
                if u == s {
                    local.push((pos(s), pos(s), self.m.clone()));
                    continue;
                }
                local.push((pos(g.conj[s][u]), pos(u), T::one()));
                let a0 = r0.iter().filter(|&&y| g.conj[y][u] == s).count() as i64;
                if a0 != 0 {
                    local.push((pos(s), pos(u), T::from_int(-a0)));
                }
            }
            let expected = SparseMatrix::from_triples(sub, sub, local);
            let all: Vec<usize> = (0..n).collect();
            let cols = t.submatrix(&all, &r0);
            for i in 0..n {
                if !inside[i] && !cols.row(i).is_empty() {
                    return Ok(CheckOutcome::fail(format!("t_{} leaves V_0", s)));
                }
            }
            if t.submatrix(&r0, &r0) != expected {
                return Ok(CheckOutcome::fail(format!(
                    "restriction of t_{} differs from the parabolic representation",
                    s
                )));
            }
            let outside: Vec<usize> = (0..n).filter(|&u| !inside[u]).collect();
            let quotient = t.submatrix(&outside, &outside);
            let perm = SparseMatrix::from_triples(
                outside.len(),
                outside.len(),
                outside.iter().enumerate().map(|(k, &u)| {
                    let target = outside.iter().position(|&x| x == g.conj[s][u]).unwrap();
                    (target, k, T::one())
                }),
            );
            if quotient != perm {
                return Ok(CheckOutcome::fail(format!("t_{} on V / V_0 is not the permutation action", s)));
            }
        }
        Ok(CheckOutcome::pass())
    }
}

impl SampledRep<'_> {
    /// Dimension of the algebra generated by all `t_x` restricted to `V_c`.
    pub fn class_algebra_dimension(&self, c: usize) -> Result<usize> {
        self.group.class_stats(c)?;
        let class = &self.group.classes[c];
        let blocks: Vec<_> = self
            .t_mats
            .iter()
            .map(|t| t.submatrix(class, class).to_dense())
            .collect();
        Ok(algebra_dimension(&blocks))
    }
}

/// Integrability computed with the group's own flats.
pub fn check_integrability<T: Ring>(rep: &RepBundle<'_, T>) -> CheckOutcome {
    rep.check_integrability(&codim2_flats(rep.group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::series::{sign_change, transposition};
    use crate::groups::{build_coxeter, build_series, CoxeterType};

    #[test]
    fn rank_one() {
        let g = build_series(2, 1, 1).unwrap();
        let rep = build_rep(&g);
        assert_eq!(rep.t_mats[0].to_dense()[(0, 0)], ParamPoly::m());
        assert!(check_integrability(&rep).ok);
        assert!(rep.dual_check().ok);
    }

    #[test]
    fn a2_matrices() {
        let g = build_series(1, 1, 3).unwrap();
        let rep = build_rep(&g);
        let s = g.index_of(&transposition(1, 3, 0, 1, 0)).unwrap();
        let t = rep.t_mats[s].to_dense();
        let others: Vec<usize> = (0..3).filter(|&u| u != s).collect();
        assert_eq!(t[(s, s)], ParamPoly::m());
        for &u in &others {
            let v = others.iter().copied().find(|&x| x != u).unwrap();
            assert_eq!(t[(v, u)], ParamPoly::from_ints(&[1]));
            assert_eq!(t[(s, u)], ParamPoly::from_ints(&[-1]));
            assert!(t[(u, u)].is_zero());
        }
        assert_ne!(rep.t_mats[s], rep.t_mats[s].transpose());
        for check in [
            rep.structure_check(),
            check_integrability(&rep),
            rep.check_equivariance(),
            rep.check_t_scalar(0).unwrap(),
            rep.dual_check(),
            rep.s_from_t_check(),
            rep.self_adjoint_check(),
        ] {
            assert!(check.ok, "{:?}", check);
        }
    }

    use num_traits::Zero;

    #[test]
    fn b2_t_scalar() {
        let g = build_coxeter(CoxeterType::B(2)).unwrap();
        let rep = build_rep(&g);
        let d = g.index_of(&sign_change(2, 2, 0)).unwrap();
        let c = g.class_of[d];
        assert_eq!(g.class_stats(c).unwrap().1, 2);
        assert!(rep.check_t_scalar(c).unwrap().ok);
        assert!(rep.check_t_scalar(1 - c).unwrap().ok);
    }

    #[test]
    fn g333_symbolic() {
        let g = build_series(3, 3, 3).unwrap();
        let rep = build_rep(&g);
        assert!(check_integrability(&rep).ok);
        assert!(rep.check_equivariance().ok);
        assert!(rep.structure_check().ok);
    }

    #[test]
    fn tampered_alpha_breaks() {
        let g = build_series(1, 1, 3).unwrap();
        let bad = g.with_alpha_entry(0, 1, 2);
        let rep = build_rep(&bad);
        assert!(!check_integrability(&rep).ok || !rep.check_equivariance().ok);
        assert!(!rep.check_equivariance().ok);
    }

    #[test]
    fn parabolics() {
        let g = build_series(1, 1, 4).unwrap();
        let rep = build_rep(&g);
        let s12 = g.index_of(&transposition(1, 4, 0, 1, 0)).unwrap();
        let s34 = g.index_of(&transposition(1, 4, 2, 3, 0)).unwrap();
        assert!(rep.parabolic_restriction_check(&[s12]).unwrap().ok);
        assert!(rep.parabolic_restriction_check(&[s12, s34]).unwrap().ok);
        assert!(matches!(
            rep.parabolic_restriction_check(&[]),
            Err(Error::ImproperSeed(_))
        ));
        let b3 = build_coxeter(CoxeterType::B(3)).unwrap();
        let rep = build_rep(&b3);
        let seed = [
            b3.index_of(&transposition(2, 3, 0, 1, 0)).unwrap(),
            b3.index_of(&transposition(2, 3, 1, 2, 0)).unwrap(),
        ];
        assert_eq!(parabolic_reflections(&b3, &seed).unwrap().len(), 3);
        assert!(rep.parabolic_restriction_check(&seed).unwrap().ok);
    }

    #[test]
    fn burnside_a2() {
        let g = build_coxeter(CoxeterType::A(2)).unwrap();
        assert_eq!(build_rep_at(&g, &rat(5)).class_algebra_dimension(0).unwrap(), 9);
        // roots of -(m-3)m^2
        assert!(build_rep_at(&g, &rat(3)).class_algebra_dimension(0).unwrap() < 9);
        assert!(build_rep_at(&g, &rat(0)).class_algebra_dimension(0).unwrap() < 9);
    }

    #[test]
    fn sampled_matches_symbolic() {
        let g = build_coxeter(CoxeterType::I2(5)).unwrap();
        let sym = build_rep(&g);
        let m0 = crate::arith::frac(22, 7);
        let at = build_rep_at(&g, &m0);
        for s in 0..g.len() {
            assert_eq!(sym.t_mats[s].map(|p| p.eval(&m0)), at.t_mats[s]);
        }
        assert!(check_integrability(&at).ok);
    }
}
