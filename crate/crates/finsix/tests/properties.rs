use proptest::prelude::*;

use finsix::group::FiniteGroup;
use finsix::hecke::double_cosets;
use finsix::sheaf::{global_sections, kunneth, random_pair, random_sheaf};
use finsix::simplicial::pyramid_sections;
use finsix::suite::stream;
use finsix::{Field, Matrix};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 101])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prime_field_matches_modular_integers(p in prime(), a in -500i64..500, b in -500i64..500) {
        let f = Field::prime(p).unwrap();
        let m = |x: i64| x.rem_euclid(p as i64);
        prop_assert_eq!((f.int(a) * f.int(b)).as_integer(), Some(m(m(a) * m(b))));
        prop_assert_eq!((f.int(a) + f.int(b)).as_integer(), Some(m(a + b)));
        if m(a) != 0 {
            prop_assert!((f.int(a) * f.int(a).inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rank_nullity(vals in prop::collection::vec(-3i64..4, 12), p in prime()) {
        for f in [Field::Rational, Field::prime(p).unwrap()] {
            let a = Matrix::from_ints(f, 3, 4, &vals);
            prop_assert_eq!(a.rank() + a.nullspace().cols(), 4);
            prop_assert!(a.mul(&a.nullspace()).is_zero());
        }
    }

    #[test]
    fn inverse_is_two_sided(vals in prop::collection::vec(-4i64..5, 9)) {
        let a = Matrix::from_ints(Field::Rational, 3, 3, &vals);
        match a.inverse() {
            Some(b) => {
                prop_assert!(a.mul(&b).is_identity());
                prop_assert!(b.mul(&a).is_identity());
            }
            None => prop_assert!(a.rank() < 3),
        }
    }

    #[test]
    fn double_coset_sizes(i in 0usize..64, j in 0usize..64) {
        let g = FiniteGroup::symmetric(4);
        let subs = g.subgroups();
        let (h, k) = (&subs[i % subs.len()], &subs[j % subs.len()]);
        let dc = double_cosets(&g, h, k).unwrap();
        prop_assert_eq!(dc.cosets.iter().map(|c| c.size).sum::<usize>(), g.order());
        for c in &dc.cosets {
            prop_assert_eq!(c.size * c.stabilizer, h.len() * k.len());
        }
        prop_assert!(dc.matches_fiber_product());
    }

    #[test]
    fn sections_are_additive_and_kunneth(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 5, 7])) {
        let f = if p == 0 { Field::Rational } else { Field::prime(p).unwrap() };
        let mut rng = stream(seed, "properties");
        let m = random_pair(f, &mut rng);
        let n = random_sheaf(&m.base, f, &mut rng, 1);
        let sum = global_sections(&m.direct_sum(&n)).unwrap().dims();
        let (a, b) = (global_sections(&m).unwrap().dims(), global_sections(&n).unwrap().dims());
        prop_assert_eq!(sum, (a.0 + b.0, a.1 + b.1));
        let other = random_pair(f, &mut rng);
        prop_assert!(kunneth(&m, &other).unwrap().holds());
    }

    #[test]
    fn pyramid_symmetry(n in 0usize..=5) {
        let p = pyramid_sections(n);
        prop_assert!(p.symmetric());
        prop_assert!(p.functorial());
        prop_assert!(p.comparison_natural());
    }
}
