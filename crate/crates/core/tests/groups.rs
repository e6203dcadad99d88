use crg::arith::{rat, CycNum, Matrix};
use crg::arrangement::{closed_under_conjugators, codim2_flats, conjugating_reflections_fix_flat, parabolic_reflections};
use crg::form::{definite_at, discriminant, form_is_invariant, gram_matrix, row_sums_equal};
use crg::groups::ReflectionGroupData;
use crg::rep::{build_rep, build_rep_at};
use crg::spec::parse_group;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SMALL: [(&str, usize); 12] = [
    ("A2", 3),
    ("A3", 6),
    ("B3", 9),
    ("D4", 12),
    ("I2(5)", 5),
    ("I2(8)", 8),
    ("H3", 15),
    ("G(3,3,3)", 9),
    ("G(4,2,3)", 15),
    ("G(4,4,3)", 12),
    ("G12", 12),
    ("G13", 18),
];

const LARGE: [(&str, usize); 4] = [("F4", 24), ("G24", 21), ("E6", 36), ("H4", 60)];

fn build(name: &str) -> ReflectionGroupData {
    parse_group(name).unwrap().build(None).unwrap()
}

fn identity(n: usize) -> Matrix<CycNum> {
    Matrix::from_fn(n, n, |i, j| if i == j { CycNum::one() } else { CycNum::zero() })
}

#[test]
fn reflection_counts_and_involutions() {
    for (name, count) in SMALL.iter().chain(LARGE.iter()) {
        let g = build(name);
        assert_eq!(g.len(), *count, "{}", name);
        let id = identity(g.rank);
        for r in &g.reflections {
            assert_eq!(&r.element * &r.element, id, "{}", name);
            assert_eq!((&id - &r.element).rank(), 1, "{}", name);
        }
    }
}

#[test]
fn conjugation_table_is_closed() {
    for (name, _) in SMALL {
        let g = build(name);
        for y in 0..g.len() {
            for s in 0..g.len() {
                let e = &(&g.reflections[y].element * &g.reflections[s].element) * &g.reflections[y].element;
                assert_eq!(g.index_of(&e), Some(g.conj[y][s]), "{}", name);
            }
        }
    }
}

#[test]
fn alpha_is_symmetric_and_invariant() {
    for (name, _) in SMALL {
        assert!(build(name).alpha_invariants_hold(None), "{}", name);
    }
    let mut rng = StdRng::seed_from_u64(17);
    for (name, _) in LARGE {
        let g = build(name);
        let n = g.len();
        let triples: Vec<_> = (0..200)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n)))
            .collect();
        assert!(g.alpha_invariants_hold(Some(&triples)), "{}", name);
    }
}

#[test]
fn alpha_counts_conjugators() {
    let g = build("B3");
    for s in 0..g.len() {
        for u in 0..g.len() {
            if s != u {
                let count = (0..g.len()).filter(|&y| g.conj[y][u] == s).count() as u32;
                assert_eq!(g.alpha(s, u).unwrap(), count);
            }
        }
    }
    assert!(g.alpha(0, 0).is_err());
    assert!(g.alpha(0, g.len()).is_err());
}

#[test]
fn class_statistics_and_graphs() {
    for (name, _) in SMALL.iter().chain(LARGE.iter()) {
        let g = build(name);
        for c in 0..g.classes.len() {
            let (n, _) = g.class_stats(c).unwrap();
            assert!(n >= 1, "{}", name);
            let graph = g.class_graph(c).unwrap();
            assert!(graph.is_connected(), "{}[{}]", name, c);
            if g.classes[c].len() <= 12 {
                assert!(graph.lambda2_graph().is_connected(), "{}[{}]", name, c);
                assert!(graph.s2_graph().is_connected(), "{}[{}]", name, c);
            }
        }
    }
}

#[test]
fn flats_are_consistent() {
    for (name, count) in SMALL {
        let g = build(name);
        let table = codim2_flats(&g);
        assert!(table.is_consistent(g.len()), "{}", name);
        if count <= 30 {
            assert!(conjugating_reflections_fix_flat(&g, &table), "{}", name);
        }
    }
}

#[test]
fn parabolics_are_closed_under_conjugators() {
    for (name, _) in SMALL {
        let g = build(name);
        for s in 0..g.len() {
            for u in s + 1..g.len() {
                let set = parabolic_reflections(&g, &[s, u]).unwrap();
                assert!(set.contains(&s) && set.contains(&u), "{}", name);
                assert!(closed_under_conjugators(&g, &set), "{} {:?}", name, set);
            }
        }
    }
}

#[test]
fn a2_and_i2_3_agree() {
    let a = build("A2");
    let b = build("I2(3)");
    let mut xa: Vec<u32> = a.alpha.iter().flatten().copied().collect();
    let mut xb: Vec<u32> = b.alpha.iter().flatten().copied().collect();
    xa.sort_unstable();
    xb.sort_unstable();
    assert_eq!(xa, xb);
    assert_eq!(discriminant(&a, 0).unwrap(), discriminant(&b, 0).unwrap());
}

#[test]
fn forms_are_invariant_and_definite_past_n_c() {
    for (name, _) in SMALL {
        let g = build(name);
        for c in 0..g.classes.len() {
            let form = gram_matrix(&g, c).unwrap();
            let (n, _) = g.class_stats(c).unwrap();
            assert!(form_is_invariant(&g, &form), "{}[{}]", name, c);
            assert!(row_sums_equal(&form, n), "{}[{}]", name, c);
            let d = discriminant(&g, c).unwrap();
            assert_eq!(d.degree(), g.classes[c].len(), "{}[{}]", name, c);
            let lead = d.expand().leading().unwrap().clone();
            assert!(lead.abs().is_one(), "{}[{}]", name, c);
            if form.size() <= 30 {
                assert!(definite_at(&form, &rat(n as i64 + 1)), "{}[{}]", name, c);
                assert!(!definite_at(&form, &rat(n as i64)), "{}[{}]", name, c);
            }
        }
        for s in 0..g.len() {
            for u in 0..g.len() {
                if g.class_of[s] != g.class_of[u] {
                    assert_eq!(g.alpha[s][u], 0, "{}", name);
                }
            }
        }
    }
}

#[test]
fn representation_invariants() {
    for name in ["A2", "B3", "I2(5)", "G(3,3,3)", "G12"] {
        let g = build(name);
        let rep = build_rep(&g);
        assert!(rep.structure_check().ok, "{}", name);
        assert!(rep.s_from_t_check().ok, "{}", name);
        assert!(rep.self_adjoint_check().ok, "{}", name);
        assert!(rep.dual_check().ok, "{}", name);
        let sampled = build_rep_at(&g, &rat(7));
        assert!(sampled.structure_check().ok, "{}", name);
    }
}
