//! Dimension of the unital algebra generated by a set of matrices.
//!
//! The span is grown modulo `2^61 - 1`. Independence mod p implies independence
//! over Q, so the modular dimension is a lower bound; it is exact when it
//! reaches the full matrix space, and otherwise it is confirmed by an exact
//! closure test whenever that is small enough.

use crate::arith::modp::{self, EchelonBasis};
use crate::arith::{Field, Matrix, Rational, Ring};
use num_traits::Zero;

/// Above `dim * len` this size the exact closure test is skipped.
pub const EXACT_CERTIFICATE_LIMIT: usize = 60_000;

/// Block-diagonal matrix over F_p, blocks stored row-major.
#[derive(Clone, Debug)]
struct ModBlocks {
    sizes: Vec<usize>,
    data: Vec<Vec<u64>>,
}

impl ModBlocks {
    fn identity(sizes: &[usize]) -> Self {
        let data = sizes
            .iter()
            .map(|&n| {
                let mut v = vec![0; n * n];
                for i in 0..n {
                    v[i * n + i] = 1;
                }
                v
            })
            .collect();
        ModBlocks {
            sizes: sizes.to_vec(),
            data,
        }
    }

    fn from_exact(blocks: &[Matrix<Rational>]) -> Option<Self> {
        let mut data = Vec::with_capacity(blocks.len());
        for b in blocks {
            let mut v = Vec::with_capacity(b.rows() * b.cols());
            for x in b.data() {
                v.push(modp::from_rational(x).ok()?);
            }
            data.push(v);
        }
        Some(ModBlocks {
            sizes: blocks.iter().map(|b| b.rows()).collect(),
            data,
        })
    }

    fn mul(&self, rhs: &Self) -> Self {
        let data = self
            .sizes
            .iter()
            .enumerate()
            .map(|(b, &n)| {
                let (x, y) = (&self.data[b], &rhs.data[b]);
                let mut out = vec![0u64; n * n];
                for i in 0..n {
                    for k in 0..n {
                        let a = x[i * n + k];
                        if a == 0 {
                            continue;
                        }
                        let row = &y[k * n..(k + 1) * n];
                        let dst = &mut out[i * n..(i + 1) * n];
                        for (d, &v) in dst.iter_mut().zip(row) {
                            if v != 0 {
                                *d = modp::add(*d, modp::mul(a, v));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        ModBlocks {
            sizes: self.sizes.clone(),
            data,
        }
    }

    fn flat(&self) -> Vec<u64> {
        self.data.concat()
    }
}

fn block_sizes(gens: &[Vec<Matrix<Rational>>]) -> Vec<usize> {
    let sizes: Vec<usize> = gens[0].iter().map(|b| b.rows()).collect();
    for g in gens {
        let s: Vec<usize> = g.iter().map(|b| b.rows()).collect();
        assert_eq!(s, sizes, "generators must share the block shape");
        assert!(g.iter().all(|b| b.is_square()), "blocks must be square");
    }
    sizes
}

/// The span of the words in the generators, grown modulo p.
#[derive(Clone, Debug)]
pub struct ModularSpan {
    sizes: Vec<usize>,
    basis: EchelonBasis,
    /// `words[i] = Some((parent, generator))`; the identity has `None`.
    words: Vec<Option<(usize, usize)>>,
}

impl ModularSpan {
    /// `None` when a generator has a denominator divisible by p.
    pub fn grow(gens: &[Vec<Matrix<Rational>>]) -> Option<Self> {
        let sizes = block_sizes(gens);
        let full: usize = sizes.iter().map(|n| n * n).sum();
        let mgens: Vec<ModBlocks> = gens
            .iter()
            .map(|g| ModBlocks::from_exact(g))
            .collect::<Option<_>>()?;
        let mut basis = EchelonBasis::new();
        let id = ModBlocks::identity(&sizes);
        basis.insert(id.flat());
        let mut elems = vec![id];
        let mut words = vec![None];
        let mut next = 0;
        while next < elems.len() && basis.len() < full {
            for (gi, g) in mgens.iter().enumerate() {
                let prod = elems[next].mul(g);
                if basis.insert(prod.flat()) {
                    elems.push(prod);
                    words.push(Some((next, gi)));
                    if basis.len() == full {
                        break;
                    }
                }
            }
            next += 1;
        }
        Some(ModularSpan { sizes, basis, words })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn full_dim(&self) -> usize {
        self.sizes.iter().map(|n| n * n).sum()
    }

    /// Membership of a block matrix in the span, modulo p.
    pub fn contains(&self, x: &[Matrix<Rational>]) -> Option<bool> {
        let m = ModBlocks::from_exact(x)?;
        let mut v = m.flat();
        Some(self.basis.reduce(&mut v))
    }

    /// Exact elements named by the recorded words.
    fn exact_elements(&self, gens: &[Vec<Matrix<Rational>>]) -> Vec<Vec<Matrix<Rational>>> {
        let mut out: Vec<Vec<Matrix<Rational>>> = Vec::with_capacity(self.words.len());
        for w in &self.words {
            let e = match w {
                None => self.sizes.iter().map(|&n| Matrix::identity(n)).collect(),
                Some((parent, g)) => block_mul(&out[*parent], &gens[*g]),
            };
            out.push(e);
        }
        out
    }

    /// Checks over Q that the span of the recorded words is closed under
    /// right multiplication by every generator.
    pub fn certify(&self, gens: &[Vec<Matrix<Rational>>]) -> bool {
        let elems = self.exact_elements(gens);
        let mut basis = ExactEchelon::default();
        for e in &elems {
            if !basis.insert(flatten(e)) {
                return false;
            }
        }
        elems
            .iter()
            .all(|e| gens.iter().all(|g| basis.reduces_to_zero(flatten(&block_mul(e, g)))))
    }
}

fn block_mul(a: &[Matrix<Rational>], b: &[Matrix<Rational>]) -> Vec<Matrix<Rational>> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

fn flatten(blocks: &[Matrix<Rational>]) -> Vec<Rational> {
    blocks.iter().flat_map(|b| b.data().iter().cloned()).collect()
}

/// Reduced row echelon basis over Q.
#[derive(Clone, Debug, Default)]
struct ExactEchelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl ExactEchelon {
    fn reduce(&self, v: &mut [Rational]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    x.sub_assign_ref(&f.mul_ref(y));
                }
            }
        }
    }

    fn reduces_to_zero(&self, mut v: Vec<Rational>) -> bool {
        self.reduce(&mut v);
        v.iter().all(|x| x.is_zero())
    }

    fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        self.reduce(&mut v);
        let p = match v.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = v[p].inv().unwrap();
        for x in v.iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    x.sub_assign_ref(&f.mul_ref(y));
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Exact span growth over Q; slow, used as the reference.
pub fn block_algebra_dimension_exact(gens: &[Vec<Matrix<Rational>>]) -> usize {
    if gens.is_empty() {
        return 1;
    }
    let sizes = block_sizes(gens);
    let full: usize = sizes.iter().map(|n| n * n).sum();
    let id: Vec<Matrix<Rational>> = sizes.iter().map(|&n| Matrix::identity(n)).collect();
    let mut basis = ExactEchelon::default();
    basis.insert(flatten(&id));
    let mut elems = vec![id];
    let mut next = 0;
    while next < elems.len() && basis.rows.len() < full {
        for g in gens {
            let prod = block_mul(&elems[next], g);
            if basis.insert(flatten(&prod)) {
                elems.push(prod);
            }
        }
        next += 1;
    }
    basis.rows.len()
}

pub fn algebra_dimension_exact(mats: &[Matrix<Rational>]) -> usize {
    let gens: Vec<Vec<Matrix<Rational>>> = mats.iter().map(|m| vec![m.clone()]).collect();
    block_algebra_dimension_exact(&gens)
}

/// Algebra dimension for block-diagonal generators.
pub fn block_algebra_dimension(gens: &[Vec<Matrix<Rational>>]) -> usize {
    if gens.is_empty() {
        return 1;
    }
    match ModularSpan::grow(gens) {
        None => block_algebra_dimension_exact(gens),
        Some(span) => {
            let d = span.dim();
            if d == span.full_dim() || d * span.full_dim() > EXACT_CERTIFICATE_LIMIT || span.certify(gens) {
                d
            } else {
                block_algebra_dimension_exact(gens)
            }
        }
    }
}

/// Dimension of the unital algebra generated by square matrices of equal size.
pub fn algebra_dimension(mats: &[Matrix<Rational>]) -> usize {
    let gens: Vec<Vec<Matrix<Rational>>> = mats.iter().map(|m| vec![m.clone()]).collect();
    block_algebra_dimension(&gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(algebra_dimension(&[m(&[&[7]])]), 1);
        // upper triangular 2x2: dimension 3
        let u = m(&[&[1, 1], &[0, 2]]);
        assert_eq!(algebra_dimension(std::slice::from_ref(&u)), 2);
        let v = m(&[&[0, 1], &[0, 0]]);
        let w = m(&[&[1, 0], &[0, 0]]);
        assert_eq!(algebra_dimension(&[v.clone(), w.clone()]), 3);
        assert_eq!(algebra_dimension_exact(&[v.clone(), w.clone()]), 3);
        let x = m(&[&[0, 0], &[1, 0]]);
        assert_eq!(algebra_dimension(&[v, x]), 4);
    }

    #[test]
    fn denominator_divisible_by_p_falls_back() {
        let p = num_bigint::BigInt::from(modp::P);
        let r = Rational::new(num_bigint::BigInt::from(1), p);
        let a = Matrix::from_rows(vec![vec![r, rat(0)], vec![rat(0), rat(1)]]).unwrap();
        assert_eq!(algebra_dimension(&[a]), 2);
    }

    #[test]
    fn blocks() {
        let a = vec![m(&[&[0, 1], &[1, 0]]), m(&[&[2]])];
        let b = vec![m(&[&[1, 0], &[0, -1]]), m(&[&[3]])];
        assert_eq!(block_algebra_dimension(&[a.clone(), b.clone()]), 5);
        assert_eq!(block_algebra_dimension_exact(&[a, b]), 5);
        let half = vec![m(&[&[1, 0], &[0, 0]]).scale(&frac(1, 3)), m(&[&[0]])];
        assert_eq!(block_algebra_dimension(&[half]), 2);
    }
}
