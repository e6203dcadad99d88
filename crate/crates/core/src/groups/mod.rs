//! Reflection groups given by their reflections, with conjugation data.

pub mod coxeter;
pub mod generators;
pub mod graph;
pub mod series;

use crate::arith::{CycNum, Field, Matrix, Ring};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

pub use coxeter::{build_coxeter, CoxeterType};
pub use generators::{build_from_generators, GeneratorFile};
pub use graph::SimpleGraph;
pub use series::build_series;

pub type GroupElement = Matrix<CycNum>;

/// A reflection `s = I - root * coroot`, root normalised so that its first
/// nonzero coordinate is 1.
#[derive(Clone, Debug)]
pub struct Reflection {
    pub element: GroupElement,
    pub root: Vec<CycNum>,
    pub coroot: Vec<CycNum>,
    pub index: usize,
}

impl Reflection {
    /// Checks `s^2 = I` and `rank(s - I) = 1`, and extracts root and coroot.
    pub fn from_matrix(s: GroupElement) -> std::result::Result<Self, String> {
        if !s.is_square() {
            return Err("matrix is not square".into());
        }
        let n = s.rows();
        if !(&s * &s).is_identity() {
            return Err("s^2 is not the identity".into());
        }
        let d = &GroupElement::identity(n) - &s;
        if d.rank() != 1 {
            return Err(format!("rank(s - I) = {}, expected 1", d.rank()));
        }
        let q = (0..n)
            .find(|&j| (0..n).any(|i| !d[(i, j)].is_zero()))
            .unwrap();
        let col = d.column(q);
        let p = col.iter().position(|x| !x.is_zero()).unwrap();
        let inv = col[p].inv().unwrap();
        let root: Vec<CycNum> = col.iter().map(|x| x.mul_ref(&inv)).collect();
        let coroot = d.row(p).to_vec();
        Ok(Reflection {
            element: s,
            root,
            coroot,
            index: 0,
        })
    }

    fn key(&self) -> (Vec<CycNum>, Vec<CycNum>) {
        (self.root.clone(), self.coroot.clone())
    }
}

/// Normalises `(a, phi)` to the canonical representative of `I - a phi`.
fn normalise_pair(a: Vec<CycNum>, phi: Vec<CycNum>) -> (Vec<CycNum>, Vec<CycNum>) {
    let p = a.iter().position(|x| !x.is_zero()).expect("zero root");
    let c = a[p].clone();
    let ci = c.inv().unwrap();
    (
        a.iter().map(|x| x.mul_ref(&ci)).collect(),
        phi.iter().map(|x| x.mul_ref(&c)).collect(),
    )
}

fn cmp_matrices(a: &GroupElement, b: &GroupElement) -> Ordering {
    a.data().cmp(b.data())
}

/// Reflections of a group together with conjugation, classes and alpha.
#[derive(Clone, Debug)]
pub struct ReflectionGroupData {
    pub name: String,
    pub rank: usize,
    pub conductor: u32,
    pub reflections: Vec<Reflection>,
    /// `conj[y][s]` is the index of `y s y`.
    pub conj: Vec<Vec<usize>>,
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// `alpha[s][u]` for `s != u`; the diagonal holds 1.
    pub alpha: Vec<Vec<u32>>,
    pub expected_reflection_count: usize,
}

impl ReflectionGroupData {
    /// Assembles group data from a complete list of reflection matrices.
    pub fn from_reflections(
        name: &str,
        rank: usize,
        conductor: u32,
        mats: Vec<GroupElement>,
        expected: usize,
    ) -> Result<Self> {
        let mut refl = Vec::with_capacity(mats.len());
        for (i, m) in mats.into_iter().enumerate() {
            if m.rows() != rank {
                return Err(Error::NotAReflection {
                    index: i,
                    reason: format!("expected {}x{} matrix", rank, rank),
                });
            }
            let r = Reflection::from_matrix(m).map_err(|reason| Error::NotAReflection { index: i, reason })?;
            refl.push(r);
        }
        refl.sort_by(|a, b| cmp_matrices(&a.element, &b.element));
        refl.dedup_by(|a, b| a.element == b.element);
        if refl.len() != expected {
            return Err(Error::MetadataMismatch {
                expected,
                found: refl.len(),
            });
        }
        for (i, r) in refl.iter_mut().enumerate() {
            r.index = i;
        }
        let lookup: HashMap<(Vec<CycNum>, Vec<CycNum>), usize> =
            refl.iter().map(|r| (r.key(), r.index)).collect();
        let n = refl.len();
        let mut conj = vec![vec![0usize; n]; n];
        for y in 0..n {
            for s in 0..n {
                let key = conjugate_pair(&refl[y], &refl[s]);
                conj[y][s] = *lookup.get(&key).ok_or(Error::MetadataMismatch {
                    expected,
                    found: n + 1,
                })?;
            }
        }
        let (classes, class_of) = partition(&conj);
        let mut alpha = vec![vec![0u32; n]; n];
        for y in 0..n {
            for u in 0..n {
                alpha[conj[y][u]][u] += 1;
            }
        }
        for (s, row) in alpha.iter_mut().enumerate() {
            row[s] = 1;
        }
        Ok(ReflectionGroupData {
            name: name.to_string(),
            rank,
            conductor,
            reflections: refl,
            conj,
            classes,
            class_of,
            alpha,
            expected_reflection_count: expected,
        })
    }

    pub fn len(&self) -> usize {
        self.reflections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reflections.is_empty()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                size: self.len(),
            });
        }
        Ok(())
    }

    fn check_class(&self, c: usize) -> Result<()> {
        if c >= self.classes.len() {
            return Err(Error::IndexOutOfRange {
                index: c,
                size: self.classes.len(),
            });
        }
        Ok(())
    }

    /// `#{y | y u y = s}` for `s != u`.
    pub fn alpha(&self, s: usize, u: usize) -> Result<u32> {
        self.check_index(s)?;
        self.check_index(u)?;
        if s == u {
            return Err(Error::DiagonalAlpha(s));
        }
        Ok(self.alpha[s][u])
    }

    pub fn commute(&self, s: usize, u: usize) -> bool {
        self.conj[u][s] == s
    }

    /// `(N(c), C(c))`; both are checked to be independent of the representative.
    pub fn class_stats(&self, c: usize) -> Result<(u64, usize)> {
        self.check_class(c)?;
        let class = &self.classes[c];
        let stat = |s: usize| {
            let n: u64 = 1 + class
                .iter()
                .filter(|&&u| u != s)
                .map(|&u| self.alpha[s][u] as u64)
                .sum::<u64>();
            let cc = (0..self.len()).filter(|&u| self.commute(s, u)).count();
            (n, cc)
        };
        let first = stat(class[0]);
        for &s in &class[1..] {
            assert_eq!(stat(s), first, "class statistics depend on the representative");
        }
        Ok(first)
    }

    /// Half the number of reflections in class `c` not commuting with `s`.
    pub fn k_c(&self, c: usize, s: usize) -> Result<usize> {
        self.check_class(c)?;
        self.check_index(s)?;
        let count = self.classes[c]
            .iter()
            .filter(|&&u| !self.commute(s, u))
            .count();
        if count % 2 == 1 {
            return Err(Error::OddNonCommutingCount { s, count });
        }
        Ok(count / 2)
    }

    pub fn class_graph(&self, c: usize) -> Result<SimpleGraph> {
        self.check_class(c)?;
        let class = &self.classes[c];
        let mut g = SimpleGraph::new(class.len());
        for (i, &s) in class.iter().enumerate() {
            for (j, &u) in class.iter().enumerate().skip(i + 1) {
                if self.alpha[s][u] > 0 {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Index of the reflection with matrix `e`.
    pub fn index_of(&self, e: &GroupElement) -> Option<usize> {
        self.reflections.iter().position(|r| &r.element == e)
    }

    /// Position of a reflection inside its class.
    pub fn position_in_class(&self, s: usize) -> usize {
        self.classes[self.class_of[s]]
            .iter()
            .position(|&x| x == s)
            .unwrap()
    }

    /// Copy with a single alpha entry replaced; for negative-path testing.
    pub fn with_alpha_entry(&self, s: usize, u: usize, value: u32) -> Self {
        let mut g = self.clone();
        g.alpha[s][u] = value;
        g
    }

    /// Full conjugation invariance check of alpha under every reflection.
    pub fn alpha_invariants_hold(&self, triples: Option<&[(usize, usize, usize)]>) -> bool {
        let n = self.len();
        let check = |w: usize, s: usize, u: usize| {
            s == u
                || (self.alpha[s][u] == self.alpha[u][s]
                    && self.alpha[self.conj[w][s]][self.conj[w][u]] == self.alpha[s][u]
                    && (self.alpha[s][u] == 0 || self.class_of[s] == self.class_of[u]))
        };
        match triples {
            Some(t) => t.iter().all(|&(w, s, u)| check(w, s, u)),
            None => (0..n).all(|w| (0..n).all(|s| (0..n).all(|u| check(w, s, u)))),
        }
    }
}

/// Canonical pair of `y s y` for reflections `y`, `s`.
fn conjugate_pair(y: &Reflection, s: &Reflection) -> (Vec<CycNum>, Vec<CycNum>) {
    let ya = y.element.mul_vec(&s.root);
    let n = s.coroot.len();
    let phy: Vec<CycNum> = (0..n)
        .map(|j| {
            let mut acc = CycNum::zero();
            for (k, c) in s.coroot.iter().enumerate() {
                let e = &y.element[(k, j)];
                if !c.is_zero() && !e.is_zero() {
                    acc.add_assign_ref(&c.mul_ref(e));
                }
            }
            acc
        })
        .collect();
    normalise_pair(ya, phy)
}

fn partition(conj: &[Vec<usize>]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = conj.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = vec![start];
        class_of[start] = c;
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for row in conj {
                let t = row[s];
                if class_of[t] == usize::MAX {
                    class_of[t] = c;
                    members.push(t);
                    queue.push_back(t);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    (classes, class_of)
}

/// Closure of a reflection set under `(y, s) -> y s y`.
pub fn conjugation_closure(gens: Vec<GroupElement>, limit: usize) -> Result<Vec<GroupElement>> {
    let mut refl: Vec<Reflection> = Vec::new();
    let mut seen: HashMap<(Vec<CycNum>, Vec<CycNum>), ()> = HashMap::new();
    for (i, g) in gens.into_iter().enumerate() {
        let r = Reflection::from_matrix(g).map_err(|reason| Error::NotAReflection { index: i, reason })?;
        if seen.insert(r.key(), ()).is_none() {
            refl.push(r);
        }
    }
    let mut done = 0;
    while done < refl.len() {
        let x = done;
        done += 1;
        let mut fresh = Vec::new();
        for y in 0..refl.len() {
            for (a, b) in [(y, x), (x, y)] {
                let (root, coroot) = conjugate_pair(&refl[a], &refl[b]);
                if seen.contains_key(&(root.clone(), coroot.clone())) {
                    continue;
                }
                seen.insert((root.clone(), coroot.clone()), ());
                fresh.push(from_pair(root, coroot));
            }
        }
        refl.extend(fresh);
        if refl.len() > limit {
            break;
        }
    }
    Ok(refl.into_iter().map(|r| r.element).collect())
}

fn from_pair(root: Vec<CycNum>, coroot: Vec<CycNum>) -> Reflection {
    let n = root.len();
    let element = Matrix::from_fn(n, n, |i, j| {
        let v = root[i].mul_ref(&coroot[j]);
        if i == j {
            CycNum::one().sub_ref(&v)
        } else {
            v.neg_ref()
        }
    });
    Reflection {
        element,
        root,
        coroot,
        index: 0,
    }
}
