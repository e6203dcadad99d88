//! Operators on `V_c (x) V_c` attached to a reflection, and the tensor-square checks.

use super::algebra::{block_algebra_dimension, ModularSpan};
use super::{RepBundle, SampledRep};
use crate::arith::{Matrix, ParamPoly, Rational, Ring, SparseMatrix};
use crate::error::{Error, Result};
use crate::form::discriminant;
use num_bigint::BigInt;
use num_traits::Zero;

/// Largest class on which tensor squares are formed.
pub const TENSOR_CLASS_LIMIT: usize = 12;

/// `T_s, S, Delta_s, P_s, Q_s, R_s` on `V_c (x) V_c`.
#[derive(Clone, Debug)]
pub struct TensorOps<T> {
    pub t: SparseMatrix<T>,
    pub s: SparseMatrix<T>,
    pub delta: SparseMatrix<T>,
    pub p: SparseMatrix<T>,
    pub q: SparseMatrix<T>,
    pub r: SparseMatrix<T>,
}

fn block<T: Ring>(rep: &RepBundle<'_, T>, c: usize, x: &SparseMatrix<T>) -> SparseMatrix<T> {
    let class = &rep.group.classes[c];
    x.submatrix(class, class)
}

/// `x (x) 1 + 1 (x) x`.
fn derivation<T: Ring>(x: &SparseMatrix<T>) -> SparseMatrix<T> {
    let id = SparseMatrix::identity(x.rows());
    x.kron(&id).add(&id.kron(x))
}

impl<T: Ring> TensorOps<T> {
    pub fn new(rep: &RepBundle<'_, T>, s: usize, c: usize) -> Result<Self> {
        rep.group.class_stats(c)?;
        let t = block(rep, c, &rep.t_mats[s]);
        let sm = block(rep, c, &rep.s_mats[s]);
        let p = block(rep, c, &rep.p_mats[s]);
        Ok(TensorOps {
            t: derivation(&t),
            s: sm.kron(&sm),
            delta: derivation(&sm),
            p: derivation(&p),
            q: p.kron(&p),
            r: p.kron(&sm).add(&sm.kron(&p)),
        })
    }

    fn named(&self) -> [(&'static str, &SparseMatrix<T>); 6] {
        [
            ("T", &self.t),
            ("S", &self.s),
            ("Delta", &self.delta),
            ("P", &self.p),
            ("Q", &self.q),
            ("R", &self.r),
        ]
    }

    /// Names of non-commuting pairs among the six operators.
    pub fn noncommuting_pairs(&self) -> Vec<(&'static str, &'static str)> {
        let ops = self.named();
        let mut bad = Vec::new();
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                if !ops[i].1.commutator(ops[j].1).is_zero() {
                    bad.push((ops[i].0, ops[j].0));
                }
            }
        }
        bad
    }
}

/// One line of the multiplication table or a power identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub holds: bool,
}

fn poly(c: &[i64]) -> ParamPoly {
    ParamPoly::from_ints(c)
}

fn combo(terms: &[(ParamPoly, &SparseMatrix<ParamPoly>)]) -> SparseMatrix<ParamPoly> {
    let n = terms[0].1.rows();
    let mut acc = SparseMatrix::zeros(n, n);
    for (c, x) in terms {
        if !c.is_zero() {
            acc = acc.add(&x.scale(c));
        }
    }
    acc
}

/// The fifteen products of the table and the three power identities, with
/// denominators cleared, as identities over the polynomial ring.
pub fn ds_table_check(rep: &RepBundle<'_, ParamPoly>, s: usize, c: usize) -> Result<Vec<Identity>> {
    let ops = TensorOps::new(rep, s, c)?;
    let (d, p, q, r, sm, t) = (&ops.delta, &ops.p, &ops.q, &ops.r, &ops.s, &ops.t);
    let id = SparseMatrix::identity(t.rows());
    let one = poly(&[1]);
    let two = poly(&[2]);
    let l = poly(&[1, -1]); // 1 - m
    let l2 = &l * &l;
    let two_l = &l * &two;
    let table: Vec<(&str, SparseMatrix<ParamPoly>, SparseMatrix<ParamPoly>)> = vec![
        ("Delta*Delta", d.mul(d), combo(&[(two.clone(), &id), (two.clone(), sm)])),
        ("Delta*P", d.mul(p), combo(&[(one.clone(), p), (one.clone(), r)])),
        ("Delta*Q", d.mul(q), combo(&[(two.clone(), q)])),
        ("Delta*R", d.mul(r), combo(&[(one.clone(), r), (one.clone(), p)])),
        ("Delta*S", d.mul(sm), d.clone()),
        ("P*P", p.mul(p), combo(&[(l.clone(), p), (two.clone(), q)])),
        ("P*Q", p.mul(q), combo(&[(two_l.clone(), q)])),
        ("P*R", p.mul(r), combo(&[(l.clone(), r), (two.clone(), q)])),
        ("P*S", p.mul(sm), r.clone()),
        ("Q*Q", q.mul(q), combo(&[(l2.clone(), q)])),
        ("Q*R", q.mul(r), combo(&[(two_l.clone(), q)])),
        ("Q*S", q.mul(sm), q.clone()),
        ("R*R", r.mul(r), combo(&[(l.clone(), p), (two.clone(), q)])),
        ("R*S", r.mul(sm), p.clone()),
        ("S*S", sm.mul(sm), id.clone()),
    ];
    let mut out: Vec<Identity> = table
        .into_iter()
        .map(|(name, lhs, rhs)| Identity {
            name: name.to_string(),
            holds: lhs == rhs,
        })
        .collect();
    let t2 = t.mul(t);
    let t3 = t2.mul(t);
    let t4 = t3.mul(t);
    let t5 = t4.mul(t);
    let pw = [t, &t2, &t3, &t4, &t5];
    let rhs = |c: [ParamPoly; 5]| {
        let terms: Vec<(ParamPoly, &SparseMatrix<ParamPoly>)> = c.into_iter().zip(pw).collect();
        combo(&terms)
    };
    // 4m(m+3)(m-3)(m+1) P
    let cp = &(&(&poly(&[0, 4]) * &poly(&[3, 1])) * &poly(&[-3, 1])) * &poly(&[1, 1]);
    let lhs_p = p.scale(&cp);
    let rhs_p = rhs([
        poly(&[-36, 0, 100]),
        poly(&[0, -120]),
        poly(&[45, 0, -25]),
        poly(&[0, 30]),
        poly(&[-9]),
    ]);
    // 4m(m+1)^2(m-3)(S+1)
    let mp1 = poly(&[1, 1]);
    let cs = &(&(&poly(&[0, 4]) * &mp1) * &mp1) * &poly(&[-3, 1]);
    let lhs_s = sm.add(&id).scale(&cs);
    let rhs_s = rhs([
        &(&(&poly(&[4]) * &mp1) * &poly(&[3, 5])) * &poly(&[-1, 1]),
        &poly(&[0, 2]) * &poly(&[-19, -13, -1, 1]),
        poly(&[15, 9, -3, -5]),
        &poly(&[0, 4]) * &poly(&[2, 1]),
        poly(&[-3, -1]),
    ]);
    // 8m(m+1)^2 Q
    let cq = &(&poly(&[0, 8]) * &mp1) * &mp1;
    let lhs_q = q.scale(&cq);
    let rhs_q = rhs([
        poly(&[4, 0, -4]),
        poly(&[0, 8]),
        poly(&[-5, 0, 1]),
        poly(&[0, -2]),
        poly(&[1]),
    ]);
    out.push(Identity {
        name: "P from powers of T".into(),
        holds: lhs_p == rhs_p,
    });
    out.push(Identity {
        name: "S+1 from powers of T".into(),
        holds: lhs_s == rhs_s,
    });
    out.push(Identity {
        name: "Q from powers of T".into(),
        holds: lhs_q == rhs_q,
    });
    out.push(Identity {
        name: "T = Delta - P".into(),
        holds: *t == d.sub(p),
    });
    Ok(out)
}

/// Index of `e_a e_b` (`a <= b`) in the symmetric square, or of `e_a ^ e_b`
/// (`a < b`) in the exterior square.
fn pair_index(d: usize, a: usize, b: usize, strict: bool) -> usize {
    // rows a' < a contribute d - a' (or d - a' - 1) entries
    let before: usize = (0..a).map(|x| if strict { d - x - 1 } else { d - x }).sum();
    before + b - a - usize::from(strict)
}

/// Matrices of a swap-invariant operator on `V (x) V` on the exterior and
/// symmetric squares; `None` if the operator does not commute with the swap.
pub fn squares_of(y: &SparseMatrix<Rational>, d: usize) -> Option<(Matrix<Rational>, Matrix<Rational>)> {
    let alt = d * (d.saturating_sub(1)) / 2;
    let sym = d * (d + 1) / 2;
    let mut lam = Matrix::zeros(alt, alt);
    let mut sq = Matrix::zeros(sym, sym);
    let yt = y.transpose();
    // column of Y at basis index col, as a dense vector
    let column = |col: usize| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); d * d];
        for (i, x) in yt.row(col) {
            v[*i] = x.clone();
        }
        v
    };
    for a in 0..d {
        for b in a..d {
            let ab = column(a * d + b);
            let ba = column(b * d + a);
            if a < b {
                let k = pair_index(d, a, b, true);
                let v: Vec<Rational> = ab.iter().zip(&ba).map(|(x, y)| x - y).collect();
                for i in 0..d {
                    for j in 0..d {
                        let (x, y) = (&v[i * d + j], &v[j * d + i]);
                        if *x != -y.clone() {
                            return None;
                        }
                        if i < j && !x.is_zero() {
                            lam[(pair_index(d, i, j, true), k)] = x.clone();
                        }
                    }
                }
            }
            let k = pair_index(d, a, b, false);
            let v: Vec<Rational> = if a < b {
                ab.iter().zip(&ba).map(|(x, y)| x + y).collect()
            } else {
                ab
            };
            for i in 0..d {
                for j in i..d {
                    if v[i * d + j] != v[j * d + i] {
                        return None;
                    }
                    if !v[i * d + j].is_zero() {
                        sq[(pair_index(d, i, j, false), k)] = v[i * d + j].clone();
                    }
                }
            }
        }
    }
    Some((lam, sq))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSquareReport {
    pub class_size: usize,
    pub lambda_dim: usize,
    pub lambda_algebra: usize,
    pub sym_dim: usize,
    pub sym_algebra: usize,
}

impl TensorSquareReport {
    pub fn irreducible(&self) -> bool {
        self.lambda_algebra == self.lambda_dim * self.lambda_dim && self.sym_algebra == self.sym_dim * self.sym_dim
    }
}

/// Values of `m` excluded for the tensor-square and membership checks.
const SMALL_EXCLUSIONS: [i64; 5] = [-3, -1, 0, 1, 3];

fn check_small_exclusions(m0: &Rational) -> Result<()> {
    if m0.is_integer() && SMALL_EXCLUSIONS.iter().any(|&e| *m0.numer() == BigInt::from(e)) {
        return Err(Error::ExcludedParameter {
            m0: m0.to_string(),
            reason: "m must avoid -3, -1, 0, 1, 3".into(),
        });
    }
    Ok(())
}

fn class_generators(rep: &SampledRep<'_>, c: usize) -> Option<Vec<Vec<Matrix<Rational>>>> {
    let d = rep.group.classes[c].len();
    rep.group.classes[c]
        .iter()
        .map(|&x| {
            let t = derivation(&block(rep, c, &rep.t_mats[x]));
            squares_of(&t, d).map(|(a, b)| vec![a, b])
        })
        .collect()
}

/// Algebra dimensions on the exterior and symmetric squares, without the
/// parameter preconditions.
pub fn tensor_square_dimensions(rep: &SampledRep<'_>, c: usize) -> Result<TensorSquareReport> {
    rep.group.class_stats(c)?;
    let d = rep.group.classes[c].len();
    if d > TENSOR_CLASS_LIMIT {
        return Err(Error::TooLarge {
            what: "class".into(),
            size: d,
            limit: TENSOR_CLASS_LIMIT,
        });
    }
    let gens = class_generators(rep, c).expect("T_x commutes with the swap");
    let lambda: Vec<Vec<Matrix<Rational>>> = gens.iter().map(|g| vec![g[0].clone()]).collect();
    let sym: Vec<Vec<Matrix<Rational>>> = gens.iter().map(|g| vec![g[1].clone()]).collect();
    let lambda_dim = d * (d - 1) / 2;
    Ok(TensorSquareReport {
        class_size: d,
        lambda_dim,
        lambda_algebra: if lambda_dim == 0 { 0 } else { block_algebra_dimension(&lambda) },
        sym_dim: d * (d + 1) / 2,
        sym_algebra: block_algebra_dimension(&sym),
    })
}

/// Irreducibility of the exterior and symmetric squares of `V_c` at `m0`.
pub fn tensor_square_check(rep: &SampledRep<'_>, c: usize) -> Result<TensorSquareReport> {
    let m0 = &rep.m;
    check_small_exclusions(m0)?;
    if m0.is_integer() {
        let disc = discriminant(rep.group, c)?;
        if disc.factors.iter().any(|(r, _)| r == m0.numer()) {
            return Err(Error::ExcludedParameter {
                m0: m0.to_string(),
                reason: "root of the discriminant".into(),
            });
        }
    }
    tensor_square_dimensions(rep, c)
}

/// Membership of `p_s (x) p_u + p_u (x) p_s` in the algebra generated by the
/// `T_x`, `x` in `c`, decided modulo the working prime.
pub fn psu_membership(rep: &SampledRep<'_>, c: usize, pairs: &[(usize, usize)]) -> Result<Vec<bool>> {
    check_small_exclusions(&rep.m)?;
    let g = rep.group;
    g.class_stats(c)?;
    for &(s, u) in pairs {
        if s == u {
            return Err(Error::SameReflection(s));
        }
        for x in [s, u] {
            if g.class_of[x] != c {
                return Err(Error::IndexOutOfRange { index: x, size: g.len() });
            }
        }
    }
    let d = g.classes[c].len();
    let gens = class_generators(rep, c).expect("T_x commutes with the swap");
    let span = ModularSpan::grow(&gens).ok_or(Error::ModularDenominator)?;
    pairs
        .iter()
        .map(|&(s, u)| {
            let (ps, pu) = (block(rep, c, &rep.p_mats[s]), block(rep, c, &rep.p_mats[u]));
            let x = ps.kron(&pu).add(&pu.kron(&ps));
            let (a, b) = squares_of(&x, d).expect("symmetrised operator commutes with the swap");
            span.contains(&[a, b]).ok_or(Error::ModularDenominator)
        })
        .collect()
}

pub fn psu_membership_check(rep: &SampledRep<'_>, c: usize, s: usize, u: usize) -> Result<bool> {
    Ok(psu_membership(rep, c, &[(s, u)])?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::groups::series::transposition;
    use crate::groups::{build_coxeter, build_series, CoxeterType};
    use crate::rep::{build_rep, build_rep_at};

    #[test]
    fn pair_indices() {
        let d = 4;
        let mut k = 0;
        for a in 0..d {
            for b in a + 1..d {
                assert_eq!(pair_index(d, a, b, true), k);
                k += 1;
            }
        }
        k = 0;
        for a in 0..d {
            for b in a..d {
                assert_eq!(pair_index(d, a, b, false), k);
                k += 1;
            }
        }
    }

    #[test]
    fn b2_table() {
        let g = build_coxeter(CoxeterType::B(2)).unwrap();
        let rep = build_rep(&g);
        let s = g.index_of(&transposition(2, 2, 0, 1, 0)).unwrap();
        let ops = TensorOps::new(&rep, s, g.class_of[s]).unwrap();
        assert!(ops.noncommuting_pairs().is_empty());
        let ids = ds_table_check(&rep, s, g.class_of[s]).unwrap();
        assert_eq!(ids.len(), 19);
        for i in &ids {
            assert!(i.holds, "{}", i.name);
        }
    }

    #[test]
    fn i25_table_and_squares() {
        let g = build_coxeter(CoxeterType::I2(5)).unwrap();
        let rep = build_rep(&g);
        assert!(ds_table_check(&rep, 0, 0).unwrap().iter().all(|i| i.holds));
        let at = build_rep_at(&g, &rat(7));
        let r = tensor_square_check(&at, 0).unwrap();
        assert_eq!((r.lambda_dim, r.lambda_algebra), (10, 100));
        assert_eq!((r.sym_dim, r.sym_algebra), (15, 225));
        let adjacent = (0..5).find(|&u| u != 0 && g.alpha[0][u] > 0).unwrap();
        assert!(psu_membership_check(&at, 0, 0, adjacent).unwrap());
        assert!(matches!(psu_membership_check(&at, 0, 0, 0), Err(Error::SameReflection(0))));
        let degenerate = build_rep_at(&g, &rat(5));
        assert!(matches!(tensor_square_check(&degenerate, 0), Err(Error::ExcludedParameter { .. })));
    }

    #[test]
    fn a3_disjoint_pair() {
        let g = build_series(1, 1, 4).unwrap();
        let at = build_rep_at(&g, &rat(7));
        let s = g.index_of(&transposition(1, 4, 0, 1, 0)).unwrap();
        let u = g.index_of(&transposition(1, 4, 2, 3, 0)).unwrap();
        assert_eq!(g.alpha[s][u], 0);
        assert!(psu_membership_check(&at, 0, s, u).unwrap());
    }

    #[test]
    fn singleton_class_skips_exterior() {
        let g = build_series(2, 1, 1).unwrap();
        let at = build_rep_at(&g, &rat(7));
        let r = tensor_square_check(&at, 0).unwrap();
        assert_eq!((r.lambda_dim, r.lambda_algebra, r.sym_dim, r.sym_algebra), (0, 0, 1, 1));
    }
}
