//! Eigenspaces of a single `t_s` at a rational value of `m`.

use super::SampledRep;
use crate::arith::{rat, Matrix, Rational};
use crate::error::{Error, Result};
use num_traits::One;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub reflection: usize,
    /// `dim ker(t_s - m0)`, `dim ker(t_s + 1)`, `dim ker(t_s - 1)` on `V`.
    pub dims: [usize; 3],
    pub expected: [usize; 3],
    /// The same three dimensions on the class block containing `s`.
    pub block_dims: [usize; 3],
    pub block_expected: [usize; 3],
    /// Whether some `u` has `su != us` and `alpha(s,u) != 0`.
    pub hypothesis: bool,
    pub kernel_identities: bool,
    pub ok: bool,
}

fn kernel_dim(a: &Matrix<Rational>, shift: &Rational) -> (usize, Vec<Vec<Rational>>) {
    let n = a.rows();
    let b = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            &a[(i, j)] - shift
        } else {
            a[(i, j)].clone()
        }
    });
    let (_, k) = b.rank_and_kernel();
    (k.len(), k)
}

fn fixed_by(s: &Matrix<Rational>, v: &[Rational], sign: &Rational) -> bool {
    s.mul_vec(v).iter().zip(v).all(|(x, y)| *x == sign * y)
}

/// Eigenvalue multiplicities of `t_s` on `V` and on its class block.
pub fn spectrum_check(rep: &SampledRep<'_>, s: usize) -> Result<SpectrumReport> {
    let g = rep.group;
    let m0 = rep.m.clone();
    if m0.is_one() {
        return Err(Error::ExcludedParameter {
            m0: "1".into(),
            reason: "t_s is not semisimple at m = 1".into(),
        });
    }
    let n = g.len();
    let (one, minus_one) = (rat(1), rat(-1));
    let t = rep.t_mats[s].to_dense();
    let sm = rep.s_mats[s].to_dense();
    let noncommuting = (0..n).filter(|&u| !g.commute(s, u)).count();
    let k_total = noncommuting / 2;
    let hypothesis = (0..n).any(|u| u != s && !g.commute(s, u) && g.alpha[s][u] != 0);
    let (dm, km) = kernel_dim(&t, &m0);
    let (dn, kn) = kernel_dim(&t, &minus_one);
    let (dp, kp) = kernel_dim(&t, &one);
    let merged = m0 == minus_one;
    let expected = if merged {
        [1 + k_total, 1 + k_total, n - 1 - k_total]
    } else {
        [1, k_total, n - 1 - k_total]
    };
    let dims = [dm, dn, dp];
    let semisimple = if merged { dn + dp == n } else { dm + dn + dp == n };
    let (ds_plus, _) = kernel_dim(&sm, &one);
    let (ds_minus, _) = kernel_dim(&sm, &minus_one);
    let kernel_identities = !merged
        && km.iter().chain(&kp).all(|v| fixed_by(&sm, v, &one))
        && dm + dp == ds_plus
        && kn.iter().all(|v| fixed_by(&sm, v, &minus_one))
        && dn == ds_minus;
    let c = g.class_of[s];
    let class = &g.classes[c];
    let kc = g.k_c(c, s)?;
    let block = t.submatrix(class, class);
    let block_dims = [
        kernel_dim(&block, &m0).0,
        kernel_dim(&block, &minus_one).0,
        kernel_dim(&block, &one).0,
    ];
    let block_expected = if merged {
        [1 + kc, 1 + kc, class.len() - kc - 1]
    } else {
        [1, kc, class.len() - kc - 1]
    };
    let ok = dims == expected
        && semisimple
        && (merged || kernel_identities)
        && block_dims == block_expected;
    Ok(SpectrumReport {
        reflection: s,
        dims,
        expected,
        block_dims,
        block_expected,
        hypothesis,
        kernel_identities,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::series::transposition;
    use crate::groups::{build_coxeter, build_series, CoxeterType};
    use crate::rep::build_rep_at;

    #[test]
    fn a2_at_five() {
        let g = build_series(1, 1, 3).unwrap();
        let rep = build_rep_at(&g, &rat(5));
        let r = spectrum_check(&rep, 0).unwrap();
        assert!(r.ok, "{:?}", r);
        assert_eq!(r.dims, [1, 1, 1]);
        assert!(r.hypothesis);
    }

    #[test]
    fn m_one_rejected() {
        let g = build_series(1, 1, 3).unwrap();
        let rep = build_rep_at(&g, &rat(1));
        assert!(matches!(spectrum_check(&rep, 0), Err(Error::ExcludedParameter { .. })));
    }

    #[test]
    fn b2_transposition_block() {
        let g = build_coxeter(CoxeterType::B(2)).unwrap();
        let rep = build_rep_at(&g, &rat(5));
        let s = g.index_of(&transposition(2, 2, 0, 1, 0)).unwrap();
        let r = spectrum_check(&rep, s).unwrap();
        assert!(r.ok, "{:?}", r);
        // s12(1) and s12(-1) commute, so K_c = 0 on the transposition block
        assert_eq!(r.block_dims, [1, 0, 1]);
        assert!(!r.hypothesis);
    }

    #[test]
    fn every_reflection_of_h3() {
        let g = build_coxeter(CoxeterType::H3).unwrap();
        let rep = build_rep_at(&g, &crate::arith::frac(22, 7));
        for s in [0, 7, 14] {
            assert!(spectrum_check(&rep, s).unwrap().ok);
        }
    }
}
