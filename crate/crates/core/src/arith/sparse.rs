use super::{Matrix, Ring};
use std::collections::BTreeMap;

/// Row-compressed sparse matrix; each row is sorted by column, zeros dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<(usize, T)>>,
}

impl<T: Ring> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| vec![(i, T::one())]).collect(),
        }
    }

    /// Builds from (row, col, value) triples, summing duplicates.
    pub fn from_triples(rows: usize, cols: usize, triples: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in triples {
            assert!(i < rows && j < cols, "sparse index out of range");
            acc[i]
                .entry(j)
                .and_modify(|x| x.add_assign_ref(&v))
                .or_insert(v);
        }
        SparseMatrix {
            rows,
            cols,
            entries: acc
                .into_iter()
                .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }

    pub fn from_dense(m: &Matrix<T>) -> Self {
        SparseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| {
                    m.row(i)
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(j, v)| (j, v.clone()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row {
                m[(i, *j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.entries[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.entries[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.entries[i][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.is_empty())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(j, v)| (*j, f(v)))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| v.mul_ref(c))
    }

    pub fn transpose(&self) -> Self {
        let mut t: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row {
                t[*j].push((i, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: t,
        }
    }

    fn merge(&self, rhs: &Self, sub: bool) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "sparse shape mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let ca = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
                    let cb = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
                    if ca < cb {
                        out.push(a[i].clone());
                        i += 1;
                    } else if cb < ca {
                        let v = if sub { b[j].1.neg_ref() } else { b[j].1.clone() };
                        out.push((cb, v));
                        j += 1;
                    } else {
                        let v = if sub { a[i].1.sub_ref(&b[j].1) } else { a[i].1.add_ref(&b[j].1) };
                        if !v.is_zero() {
                            out.push((ca, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                out
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "sparse dimension mismatch");
        let entries = self
            .entries
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, T> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &rhs.entries[*k] {
                        let p = a.mul_ref(b);
                        acc.entry(*j)
                            .and_modify(|x| x.add_assign_ref(&p))
                            .or_insert(p);
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        self.entries
            .iter()
            .map(|row| {
                let mut s = T::zero();
                for (j, a) in row {
                    if !v[*j].is_zero() {
                        s.add_assign_ref(&a.mul_ref(&v[*j]));
                    }
                }
                s
            })
            .collect()
    }

    /// Kronecker product; index `(i, j)` of the result is `i * rhs.rows + j`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.rows * rhs.rows);
        for ra in &self.entries {
            for rb in &rhs.entries {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        let v = a.mul_ref(b);
                        if !v.is_zero() {
                            row.push((ja * rhs.cols + jb, v));
                        }
                    }
                }
                entries.push(row);
            }
        }
        SparseMatrix {
            rows: self.rows * rhs.rows,
            cols: self.cols * rhs.cols,
            entries,
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Restriction to the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        SparseMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries: rows
                .iter()
                .map(|&i| {
                    let mut r: Vec<(usize, T)> = self.entries[i]
                        .iter()
                        .filter_map(|(j, v)| pos.get(j).map(|&k| (k, v.clone())))
                        .collect();
                    r.sort_by_key(|x| x.0);
                    r
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Rational};

    #[test]
    fn round_trip_and_products() {
        let d = Matrix::from_fn(4, 4, |i, j| rat(((i * 3 + j * 5) % 4) as i64 - 1));
        let s = SparseMatrix::from_dense(&d);
        assert_eq!(s.to_dense(), d);
        assert_eq!(s.mul(&s).to_dense(), &d * &d);
        assert_eq!(s.add(&s).to_dense(), &d + &d);
        assert!(s.sub(&s).is_zero());
        assert_eq!(s.transpose().to_dense(), d.transpose());
        let v: Vec<Rational> = (0..4).map(rat).collect();
        assert_eq!(s.mul_vec(&v), d.mul_vec(&v));
        let e = Matrix::from_fn(2, 3, |i, j| rat((i + 2 * j) as i64));
        let k = SparseMatrix::from_dense(&e);
        assert_eq!(s.kron(&k).to_dense(), d.kron(&e));
        assert!(s.commutator(&s).is_zero());
    }
}
