//! Codimension-2 flats of the reflection arrangement.

use crate::arith::{CycNum, Matrix, Ring};
use crate::error::{Error, Result};
use crate::groups::ReflectionGroupData;
use num_traits::Zero;
use std::collections::HashMap;

/// Intersection of two reflecting hyperplanes and the reflections fixing it.
#[derive(Clone, Debug)]
pub struct Flat2 {
    /// Reduced row echelon form of the two defining linear forms.
    pub key: Matrix<CycNum>,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct FlatTable {
    pub flats: Vec<Flat2>,
    pub pair_to_flat: HashMap<(usize, usize), usize>,
}

fn ordered(s: usize, u: usize) -> (usize, usize) {
    (s.min(u), s.max(u))
}

impl FlatTable {
    pub fn flat_of(&self, s: usize, u: usize) -> Option<&Flat2> {
        self.pair_to_flat.get(&ordered(s, u)).map(|&i| &self.flats[i])
    }

    /// Every pair is mapped once and the pair counts add up.
    pub fn is_consistent(&self, n: usize) -> bool {
        let total: usize = self
            .flats
            .iter()
            .map(|f| f.members.len() * (f.members.len() - 1) / 2)
            .sum();
        let all_pairs = (0..n).all(|s| (s + 1..n).all(|u| self.pair_to_flat.contains_key(&(s, u))));
        total == n * (n.saturating_sub(1)) / 2 && all_pairs && self.pair_to_flat.len() == total
    }
}

/// Row span of the given linear forms, in reduced echelon form.
struct Span {
    rows: Matrix<CycNum>,
    pivots: Vec<usize>,
}

impl Span {
    fn new(forms: &[&[CycNum]]) -> Self {
        let cols = forms[0].len();
        let m = Matrix::from_fn(forms.len(), cols, |i, j| forms[i][j].clone());
        let (red, pivots) = m.rref();
        let rows = red.submatrix(&(0..pivots.len()).collect::<Vec<_>>(), &(0..cols).collect::<Vec<_>>());
        Span { rows, pivots }
    }

    fn contains(&self, v: &[CycNum]) -> bool {
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for (j, x) in r.iter_mut().enumerate() {
                let y = &self.rows[(i, j)];
                if !y.is_zero() {
                    x.sub_assign_ref(&f.mul_ref(y));
                }
            }
        }
        r.iter().all(|x| x.is_zero())
    }

    fn dim(&self) -> usize {
        self.pivots.len()
    }
}

fn members_of(g: &ReflectionGroupData, span: &Span) -> Vec<usize> {
    (0..g.len())
        .filter(|&x| span.contains(&g.reflections[x].coroot))
        .collect()
}

pub fn codim2_flats(g: &ReflectionGroupData) -> FlatTable {
    let mut table = FlatTable::default();
    if g.rank < 2 {
        return table;
    }
    let n = g.len();
    for s in 0..n {
        for u in s + 1..n {
            if table.pair_to_flat.contains_key(&(s, u)) {
                continue;
            }
            let span = Span::new(&[&g.reflections[s].coroot, &g.reflections[u].coroot]);
            let members = members_of(g, &span);
            let idx = table.flats.len();
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    table.pair_to_flat.insert((a, b), idx);
                }
            }
            table.flats.push(Flat2 {
                key: span.rows,
                members,
            });
        }
    }
    table
}

/// Reflections whose hyperplane contains `H_s ∩ H_u`.
pub fn reflections_containing(g: &ReflectionGroupData, s: usize, u: usize) -> Result<Vec<usize>> {
    for i in [s, u] {
        if i >= g.len() {
            return Err(Error::IndexOutOfRange { index: i, size: g.len() });
        }
    }
    if s == u {
        return Err(Error::DiagonalAlpha(s));
    }
    let span = Span::new(&[&g.reflections[s].coroot, &g.reflections[u].coroot]);
    Ok(members_of(g, &span))
}

/// Reflections whose hyperplane contains the intersection of the seed hyperplanes.
pub fn parabolic_reflections(g: &ReflectionGroupData, seed: &[usize]) -> Result<Vec<usize>> {
    if seed.is_empty() {
        return Err(Error::ImproperSeed("empty seed".into()));
    }
    if let Some(&bad) = seed.iter().find(|&&i| i >= g.len()) {
        return Err(Error::IndexOutOfRange { index: bad, size: g.len() });
    }
    let forms: Vec<&[CycNum]> = seed.iter().map(|&i| g.reflections[i].coroot.as_slice()).collect();
    Ok(members_of(g, &Span::new(&forms)))
}

/// Dimension of the intersection of the seed hyperplanes.
pub fn intersection_dim(g: &ReflectionGroupData, seed: &[usize]) -> usize {
    let forms: Vec<&[CycNum]> = seed.iter().map(|&i| g.reflections[i].coroot.as_slice()).collect();
    g.rank - Span::new(&forms).dim()
}

/// For `y u y != u`, the hyperplane of `y` contains `H_u ∩ H_{yuy}`.
pub fn conjugating_reflections_fix_flat(g: &ReflectionGroupData, table: &FlatTable) -> bool {
    let n = g.len();
    (0..n).all(|y| {
        (0..n).all(|u| {
            let v = g.conj[y][u];
            v == u || table.flat_of(u, v).is_some_and(|f| f.members.binary_search(&y).is_ok())
        })
    })
}

/// `s, u` in the set and `y u y = s` force `y` into the set.
pub fn closed_under_conjugators(g: &ReflectionGroupData, set: &[usize]) -> bool {
    let inside = |x: usize| set.binary_search(&x).is_ok();
    (0..g.len()).all(|y| set.iter().all(|&u| !inside(g.conj[y][u]) || g.conj[y][u] == u || inside(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_series;

    fn transposition(g: &ReflectionGroupData, i: usize, j: usize) -> usize {
        (0..g.len())
            .find(|&x| {
                let e = &g.reflections[x].element;
                !e[(i, j)].is_zero() && e[(i, i)].is_zero() && e[(i, j)] == CycNum::from_i64(1, 1)
            })
            .unwrap()
    }

    #[test]
    fn a2_single_flat() {
        let g = build_series(1, 1, 3).unwrap();
        let t = codim2_flats(&g);
        assert_eq!(t.flats.len(), 1);
        assert_eq!(t.flats[0].members.len(), 3);
        assert!(t.is_consistent(3));
        assert_eq!(reflections_containing(&g, 0, 1).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn b2_origin() {
        let g = build_series(2, 1, 2).unwrap();
        let t = codim2_flats(&g);
        assert_eq!(t.flats.len(), 1);
        assert_eq!(t.flats[0].members.len(), 4);
    }

    #[test]
    fn a3_flats() {
        let g = build_series(1, 1, 4).unwrap();
        let t = codim2_flats(&g);
        let mut sizes: Vec<usize> = t.flats.iter().map(|f| f.members.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 3, 3, 3, 3]);
        assert!(t.is_consistent(6));
        let s12 = transposition(&g, 0, 1);
        let s34 = transposition(&g, 2, 3);
        let mut expect = vec![s12, s34];
        expect.sort();
        assert_eq!(reflections_containing(&g, s12, s34).unwrap(), expect);
        assert_eq!(parabolic_reflections(&g, &[s12]).unwrap(), vec![s12]);
        assert!(conjugating_reflections_fix_flat(&g, &t));
    }

    #[test]
    fn b3_parabolic_a2() {
        let g = build_series(2, 1, 3).unwrap();
        let s12 = transposition(&g, 0, 1);
        let s23 = transposition(&g, 1, 2);
        let s13 = transposition(&g, 0, 2);
        let mut expect = vec![s12, s23, s13];
        expect.sort();
        let r0 = parabolic_reflections(&g, &[s12, s23]).unwrap();
        assert_eq!(r0, expect);
        assert!(closed_under_conjugators(&g, &r0));
        assert_eq!(intersection_dim(&g, &[s12, s23]), 1);
        assert!(parabolic_reflections(&g, &[]).is_err());
    }

    #[test]
    fn rank_one_has_no_flats() {
        let g = build_series(2, 1, 1).unwrap();
        assert!(codim2_flats(&g).flats.is_empty());
    }
}
