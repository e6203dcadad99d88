use super::{GroupElement, ReflectionGroupData};
use crate::arith::{CycNum, Matrix};
use crate::error::{Error, Result};

pub fn validate(m: u32, p: u32, r: u32) -> Result<()> {
    if m == 0 || p == 0 || r == 0 {
        return Err(Error::InvalidSeries(format!("G({},{},{}): parameters must be positive", m, p, r)));
    }
    if !m.is_multiple_of(p) {
        return Err(Error::InvalidSeries(format!("G({},{},{}): p must divide m", m, p, r)));
    }
    if m / p > 2 {
        return Err(Error::UnsupportedSeries { m, p });
    }
    if r == 1 && m / p == 1 {
        return Err(Error::InvalidSeries(format!("G({},{},1) contains no reflections", m, p)));
    }
    Ok(())
}

pub fn series_conductor(m: u32) -> u32 {
    if m <= 2 {
        1
    } else {
        m
    }
}

/// `s_ij(zeta_m^k)`: swaps coordinates `i` and `j` with the twist `zeta^k`.
pub fn transposition(m: u32, r: u32, i: usize, j: usize, k: i64) -> GroupElement {
    let cond = series_conductor(m);
    let mut s = Matrix::<CycNum>::identity(r as usize);
    s[(i, i)] = CycNum::zero_in(cond);
    s[(j, j)] = CycNum::zero_in(cond);
    s[(i, j)] = CycNum::zeta_pow(m, k).lift(cond);
    s[(j, i)] = CycNum::zeta_pow(m, -k).lift(cond);
    s.map(|x| x.lift(cond))
}

/// Negates coordinate `i`.
pub fn sign_change(m: u32, r: u32, i: usize) -> GroupElement {
    let cond = series_conductor(m);
    let mut s = Matrix::<CycNum>::identity(r as usize);
    s[(i, i)] = CycNum::from_i64(cond, -1);
    s.map(|x| x.lift(cond))
}

/// Reflections of G(m,p,r) with m/p in {1,2}, acting on C^r.
pub fn build_series(m: u32, p: u32, r: u32) -> Result<ReflectionGroupData> {
    validate(m, p, r)?;
    let n = r as usize;
    let cond = series_conductor(m);
    let mut mats: Vec<GroupElement> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..m as i64 {
                mats.push(transposition(m, r, i, j, k));
            }
        }
    }
    if m / p == 2 {
        for i in 0..n {
            mats.push(sign_change(m, r, i));
        }
    }
    let expected = m as usize * n * (n - 1) / 2 + if m / p == 2 { n } else { 0 };
    let name = format!("G({},{},{})", m, p, r);
    ReflectionGroupData::from_reflections(&name, n, cond, mats, expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(build_series(1, 1, 3).unwrap().len(), 3);
        assert_eq!(build_series(2, 1, 2).unwrap().len(), 4);
        assert_eq!(build_series(5, 5, 2).unwrap().len(), 5);
        assert_eq!(build_series(3, 3, 3).unwrap().len(), 9);
        assert_eq!(build_series(4, 2, 3).unwrap().len(), 15);
        assert_eq!(build_series(2, 2, 4).unwrap().len(), 12);
    }

    #[test]
    fn validation() {
        assert!(matches!(build_series(6, 2, 3), Err(Error::UnsupportedSeries { .. })));
        assert!(matches!(build_series(6, 4, 3), Err(Error::InvalidSeries(_))));
        assert!(matches!(build_series(3, 3, 1), Err(Error::InvalidSeries(_))));
        assert_eq!(build_series(2, 1, 1).unwrap().len(), 1);
    }

    #[test]
    fn even_dihedral_has_two_classes() {
        for e in [4u32, 6, 8] {
            let g = build_series(e, e, 2).unwrap();
            let mut sizes: Vec<usize> = g.classes.iter().map(|c| c.len()).collect();
            sizes.sort();
            assert_eq!(sizes, vec![e as usize / 2, e as usize / 2]);
        }
        assert_eq!(build_series(5, 5, 2).unwrap().classes.len(), 1);
    }
}
