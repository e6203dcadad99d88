use super::{integer_roots, modp, Matrix, ParamPoly, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Matrices up to this size use Berkowitz directly.
pub const BERKOWITZ_MAX: usize = 64;

// Beyond this many distinct eigenvalues the Krylov route is not worthwhile.
const KRYLOV_MAX_DEGREE: usize = 48;

const KRYLOV_SEEDS: [u64; 2] = [0x9e37_79b9_7f4a_7c15, 0xd1b5_4a32_d192_ed03];

/// `det(M - m I)`.
pub fn char_poly(m: &Matrix<Rational>) -> Result<ParamPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let (a, d) = integer_form(m);
    if n > BERKOWITZ_MAX {
        for seed in KRYLOV_SEEDS {
            if let Some(p) = krylov_charpoly(&a, seed) {
                return Ok(rescale(&p, &d));
            }
        }
    }
    Ok(rescale(&berkowitz_poly(&a), &d))
}

/// Berkowitz only; used as an oracle for the Krylov route.
pub fn char_poly_berkowitz(m: &Matrix<Rational>) -> Result<ParamPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let (a, d) = integer_form(m);
    Ok(rescale(&berkowitz_poly(&a), &d))
}

/// Writes M = A / d with A integral.
fn integer_form(m: &Matrix<Rational>) -> (Vec<Vec<BigInt>>, BigInt) {
    let d = m
        .data()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let n = m.rows();
    let a = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    (a, d)
}

/// Given p(y) = det(A - y I) for A = d M, returns det(M - m I) = d^-n p(d m).
fn rescale(p: &ParamPoly, d: &BigInt) -> ParamPoly {
    if d.is_one() {
        return p.clone();
    }
    let n = p.degree().unwrap_or(0);
    let dr = Rational::from_integer(d.clone());
    let mut pw = Rational::one();
    let mut out = Vec::with_capacity(n + 1);
    for c in p.coeffs() {
        out.push(c * &pw);
        pw *= &dr;
    }
    let scale = Rational::from_integer(num_traits::pow(d.clone(), n)).recip();
    ParamPoly::new(out).scale(&scale)
}

fn berkowitz_poly(a: &[Vec<BigInt>]) -> ParamPoly {
    let n = a.len();
    let c = berkowitz_int(a);
    // c is det(xI - A); multiply by (-1)^n
    let sign = if n % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    ParamPoly::new(
        c.into_iter()
            .map(|x| Rational::from_integer(x * &sign))
            .collect(),
    )
}

/// Coefficients of det(xI - A), index i holding the coefficient of x^i.
pub fn berkowitz_int(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    // v holds coefficients highest degree first
    let mut v = vec![BigInt::one(), -a[0][0].clone()];
    for r in 1..n {
        // t = [1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C]
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a[r][r].clone());
        let mut w: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        for k in 0..r {
            let dot: BigInt = (0..r)
                .filter(|&j| !a[r][j].is_zero() && !w[j].is_zero())
                .map(|j| &a[r][j] * &w[j])
                .sum();
            t.push(-dot);
            if k + 1 < r {
                w = (0..r)
                    .map(|i| {
                        (0..r)
                            .filter(|&j| !a[i][j].is_zero() && !w[j].is_zero())
                            .map(|j| &a[i][j] * &w[j])
                            .sum()
                    })
                    .collect();
            }
        }
        let mut nv = vec![BigInt::zero(); r + 2];
        for (i, slot) in nv.iter_mut().enumerate() {
            for j in 0..=i.min(r) {
                if i - j < t.len() && !v[j].is_zero() {
                    *slot += &t[i - j] * &v[j];
                }
            }
        }
        v = nv;
    }
    v.reverse();
    v
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nr = rows.len();
    if nr == 0 {
        return 0;
    }
    let nc = rows[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..nc {
        if rank == nr {
            break;
        }
        let Some(p) = (rank..nr).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let piv = rows[rank][c].clone();
        for i in rank + 1..nr {
            let f = rows[i][c].clone();
            for j in c..nc {
                let v = &piv * &rows[i][j] - &f * &rows[rank][j];
                rows[i][j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = piv;
        rank += 1;
    }
    rank
}

fn seed_vector(n: usize, seed: u64) -> Vec<BigInt> {
    let mut x = seed;
    (0..n)
        .map(|_| {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            BigInt::from((x % 1009) as i64 - 504)
        })
        .collect()
}

/// Minimal polynomial of a seed vector: the Krylov degree is found over F_p,
/// the dependency itself is solved exactly.
fn krylov_minpoly(a: &[Vec<BigInt>], seed: u64) -> Option<ParamPoly> {
    let n = a.len();
    let mut krylov: Vec<Vec<BigInt>> = vec![seed_vector(n, seed)];
    let mut echelon = modp::EchelonBasis::new();
    loop {
        let last = krylov.last().unwrap();
        let reduced: Vec<u64> = last.iter().map(modp::from_bigint).collect();
        if !echelon.insert(reduced) {
            break;
        }
        if krylov.len() > KRYLOV_MAX_DEGREE {
            return None;
        }
        let next = (0..n)
            .map(|i| {
                a[i].iter()
                    .zip(last)
                    .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                    .map(|(x, y)| x * y)
                    .sum()
            })
            .collect();
        krylov.push(next);
    }
    let d = krylov.len() - 1;
    let sys = Matrix::from_fn(n, d + 1, |i, j| {
        let v = Rational::from_integer(krylov[j][i].clone());
        if j == d {
            -v
        } else {
            v
        }
    });
    let (red, pivots) = sys.rref();
    if pivots.last() == Some(&d) {
        return None;
    }
    let mut coeffs = vec![Rational::zero(); d + 1];
    coeffs[d] = Rational::one();
    for (r, &p) in pivots.iter().enumerate() {
        coeffs[p] = red[(r, d)].clone();
    }
    Some(ParamPoly::new(coeffs))
}

/// Minimal polynomial of the seed, its integer roots, multiplicities from
/// kernel dimensions. Returns None unless the multiplicities account for
/// the full dimension.
fn krylov_charpoly(a: &[Vec<BigInt>], seed: u64) -> Option<ParamPoly> {
    let n = a.len();
    let minpoly = krylov_minpoly(a, seed)?;
    let roots = integer_roots(&minpoly).ok()?;
    if roots.remainder.degree() != Some(0) {
        return None;
    }
    let mut total = 0;
    let mut factors = Vec::new();
    for (r, _) in &roots.factors {
        let shifted: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { &a[i][j] - r } else { a[i][j].clone() })
                    .collect()
            })
            .collect();
        let k = n - bareiss_rank(shifted);
        total += k;
        factors.push((r.clone(), k));
    }
    if total != n {
        return None;
    }
    let sign = if n % 2 == 1 { -1 } else { 1 };
    let p = ParamPoly::from_factors(sign, &factors);
    debug_assert!(p.leading().is_some_and(|l| l.abs().is_one()));
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};
    use num_traits::Zero;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn one_by_one() {
        assert_eq!(char_poly(&q(&[&[5]])).unwrap(), ParamPoly::from_ints(&[5, -1]));
    }

    #[test]
    fn all_ones() {
        let p = char_poly(&q(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]])).unwrap();
        assert_eq!(p, ParamPoly::from_ints(&[0, 0, 3, -1]));
    }

    #[test]
    fn two_by_two() {
        let p = char_poly(&q(&[&[1, 2], &[2, 1]])).unwrap();
        // (m-3)(m+1) = m^2 - 2m - 3
        assert_eq!(p, ParamPoly::from_ints(&[-3, -2, 1]));
    }

    #[test]
    fn rational_entries() {
        let m = Matrix::from_rows(vec![vec![frac(1, 2), rat(0)], vec![rat(1), frac(1, 3)]]).unwrap();
        let p = char_poly(&m).unwrap();
        assert_eq!(p.eval(&frac(1, 2)), rat(0));
        assert_eq!(p.eval(&frac(1, 3)), rat(0));
        assert_eq!(p.leading(), Some(&rat(1)));
    }

    #[test]
    fn non_square() {
        assert!(char_poly(&Matrix::<Rational>::zeros(2, 3)).is_err());
    }

    #[test]
    fn krylov_matches_berkowitz() {
        // block of all-ones plus identity pieces, size above the Berkowitz cutoff
        let n = 70;
        let m = Matrix::from_fn(n, n, |i, j| {
            if i < 40 && j < 40 {
                rat(1)
            } else if i == j {
                rat(if i % 2 == 0 { 3 } else { -2 })
            } else {
                rat(0)
            }
        });
        let a = char_poly(&m).unwrap();
        let b = char_poly_berkowitz(&m).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), Some(n));
    }

    #[test]
    fn non_diagonalizable_falls_back() {
        let n = 66;
        let m = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                rat(2)
            } else if j == i + 1 {
                rat(1)
            } else {
                rat(0)
            }
        });
        let p = char_poly(&m).unwrap();
        assert_eq!(p, ParamPoly::from_factors(1, &[(BigInt::from(2), n)]));
    }

    #[test]
    fn bareiss() {
        let rows = vec![
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)],
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)],
        ];
        assert_eq!(bareiss_rank(rows), 2);
        assert!(Zero::is_zero(&ParamPoly::zero()));
    }
}
