use crg::arith::{char_poly, frac, integer_roots, rat, CycNum, Matrix, ParamPoly, Rational, Ring};
use crg::groups::CoxeterType;
use crg::krammer::LaurentQT;
use crg::spec::{parse_group, GroupSpec};
use num_traits::Zero;
use proptest::prelude::*;

const CONDUCTORS: [u32; 6] = [3, 4, 5, 8, 12, 24];

fn cyc(n: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((-9i64..=9, 1i64..=4), n as usize).prop_map(move |v| {
        CycNum::from_coeffs(n, v.into_iter().map(|(a, b)| frac(a, b)).collect())
    })
}

fn cyc_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| (cyc(n), cyc(n), cyc(n)))
}

fn laurent() -> impl Strategy<Value = LaurentQT> {
    prop::collection::vec((-5i64..=5, -3i64..=3, -2i64..=2), 0..5).prop_map(|terms| {
        terms.into_iter().fold(LaurentQT::zero(), |acc, (c, a, b)| {
            acc.add_ref(&LaurentQT::monomial(rat(c), a, b))
        })
    })
}

fn specialize(x: &LaurentQT) -> CycNum {
    x.eval(
        |a| {
            let z = CycNum::zeta_pow(3, a);
            if a % 2 == 0 {
                z
            } else {
                z.neg_ref()
            }
        },
        |_| CycNum::from_i64(3, 1),
        |c| CycNum::from_rational(3, c.clone()),
    )
}

fn group_spec() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1u32..=12, 1u32..=6).prop_flat_map(|(q, r)| {
            prop_oneof![Just(1u32), Just(2u32)].prop_map(move |k| GroupSpec::Series { m: q * k, p: q, r })
        }),
        (1u32..=9).prop_map(|n| GroupSpec::Coxeter(CoxeterType::A(n))),
        (1u32..=9).prop_map(|n| GroupSpec::Coxeter(CoxeterType::B(n))),
        (2u32..=9).prop_map(|n| GroupSpec::Coxeter(CoxeterType::D(n))),
        (2u32..=40).prop_map(|e| GroupSpec::Coxeter(CoxeterType::I2(e))),
        prop::sample::select(vec![
            CoxeterType::H3,
            CoxeterType::H4,
            CoxeterType::F4,
            CoxeterType::E6,
            CoxeterType::E7,
            CoxeterType::E8,
        ])
        .prop_map(GroupSpec::Coxeter),
        prop::sample::select(vec![12u32, 13, 22, 24, 27, 29, 31, 33, 34]).prop_map(GroupSpec::Exceptional),
    ]
    .prop_filter("valid group", |s| s.validate(None).is_ok())
}

proptest! {
    #[test]
    fn cyclotomic_ring_laws((a, b, c) in cyc_triple()) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b).conj(), a.conj().mul_ref(&b.conj()));
    }

    #[test]
    fn integer_roots_expand_back(
        roots in prop::collection::vec(-30i64..=30, 0..7),
        extra in prop::collection::vec(-6i64..=6, 0..3),
        lead in prop::sample::select(vec![-3i64, -1, 1, 2]),
    ) {
        // (m^2 + 1)^k has no rational roots
        let mut p = ParamPoly::from_ints(&[lead]);
        for r in &roots {
            p = &p * &ParamPoly::from_ints(&[-r, 1]);
        }
        for _ in &extra {
            p = &p * &ParamPoly::from_ints(&[1, 0, 1]);
        }
        let f = integer_roots(&p).unwrap();
        prop_assert_eq!(f.expand(), p);
        let degree: usize = f.factors.iter().map(|x| x.1).sum();
        prop_assert_eq!(degree, roots.len());
    }

    #[test]
    fn char_poly_multiplicities_match_kernels(entries in prop::collection::vec(-3i64..=3, 15)) {
        // symmetric 5x5 integer matrix
        let n = 5;
        let mut k = 0;
        let mut m = Matrix::<Rational>::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                m[(i, j)] = rat(entries[k]);
                m[(j, i)] = rat(entries[k]);
                k += 1;
            }
        }
        let f = integer_roots(&char_poly(&m).unwrap()).unwrap();
        for (r, mult) in &f.factors {
            let shift = Matrix::<Rational>::identity(n).scale(&Rational::from_integer(r.clone()));
            prop_assert_eq!(*mult, n - (&m - &shift).rank());
        }
        prop_assert_eq!(f.remainder.degree().unwrap_or(0) + f.factors.iter().map(|x| x.1).sum::<usize>(), n);
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert!(a.sub_ref(&a).is_zero());
        prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn specialization_is_a_ring_map(a in laurent(), b in laurent()) {
        prop_assert_eq!(specialize(&a.mul_ref(&b)), specialize(&a).mul_ref(&specialize(&b)));
        prop_assert_eq!(specialize(&a.add_ref(&b)), specialize(&a).add_ref(&specialize(&b)));
    }

    #[test]
    fn parse_render_round_trip(spec in group_spec()) {
        let text = spec.to_string();
        let parsed = parse_group(&text).unwrap();
        prop_assert_eq!(parsed.to_string(), text);
        let expected = match spec {
            GroupSpec::Exceptional(k) => crg::spec::alias(k).map_or(spec, GroupSpec::Coxeter),
            other => other,
        };
        prop_assert_eq!(parsed, expected);
    }
}

#[test]
fn roots_of_unity() {
    for n in 1..=30u32 {
        assert_eq!(CycNum::zeta_pow(n, n as i64), CycNum::from_i64(n, 1), "n = {}", n);
    }
    for p in [2u32, 3, 5, 7, 11, 13] {
        let mut s = CycNum::zero_in(p);
        for i in 0..p as i64 {
            s.add_assign_ref(&CycNum::zeta_pow(p, i));
        }
        assert!(s.is_zero(), "p = {}", p);
    }
}
