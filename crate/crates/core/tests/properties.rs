//! Randomized invariants, each checked against an oracle computed a
//! different way from the engine's own checks.

use proptest::prelude::*;

use covlie::affine::DSAlgebra;
use covlie::algebras::build_all;
use covlie::cyclotomic::CycNumber;
use covlie::group::{make_character, FinAbGroup};
use covlie::liealg::SparseVec;

fn small_rational() -> impl Strategy<Value = CycNumber> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| CycNumber::from_ratio(n, d))
}

fn unit(n: u64) -> impl Strategy<Value = i64> {
    (1..n as i64).prop_filter("coprime", move |k| num_integer::gcd(*k, n as i64) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // pi is a homomorphism on random combinations, not just basis pairs
    #[test]
    fn pi_preserves_random_brackets(
        n in prop::sample::select(vec![3u64, 5, 7]),
        xs in prop::collection::vec(small_rational(), 21),
        ys in prop::collection::vec(small_rational(), 21),
    ) {
        let p = build_all(&FinAbGroup::cyclic(n)).unwrap();
        let d = p.gs.dim();
        let vec = |cs: &[CycNumber]| SparseVec::from_entries(cs.iter().take(d).cloned().enumerate().collect());
        let (x, y) = (vec(&xs), vec(&ys));
        let lhs = p.pi.apply(&p.gs.algebra.bracket_vec(&x, &y).unwrap());
        let rhs = p.ast.algebra.bracket_vec(&p.pi.apply(&x), &p.pi.apply(&y)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // Jacobi on random generator triples of D_S, from the closed formula
    #[test]
    fn ds_jacobi_random_triples(
        (n, k) in (3u64..=8).prop_flat_map(|n| (Just(n), unit(n))),
        labels in prop::array::uniform3(0u64..8),
        degs in prop::array::uniform3(-2i64..=2),
    ) {
        let chi = make_character(&FinAbGroup::cyclic(n), k).unwrap();
        let s = chi.group().clone();
        let ds = DSAlgebra::new(&chi, 6);
        let g = |i: usize| covlie::affine::DSElement::generator(&s, (labels[i] % n) as usize, degs[i]);
        let (a, b, c) = (g(0), g(1), g(2));
        let br = |x: &covlie::affine::DSElement, y: &covlie::affine::DSElement| ds.bracket(x, y).unwrap();
        let sum = br(&a, &br(&b, &c)).add(&br(&b, &br(&c, &a))).add(&br(&c, &br(&a, &b)));
        prop_assert!(sum.is_zero(), "{}", sum.describe(&s));
    }

    // the bracket of D_S is antisymmetric for every primitive character
    #[test]
    fn ds_antisymmetry_random(
        (n, k) in (2u64..=9).prop_flat_map(|n| (Just(n), unit(n))),
        a in 0u64..9, b in 0u64..9, m in -3i64..=3, p in -3i64..=3,
    ) {
        let chi = make_character(&FinAbGroup::cyclic(n), k).unwrap();
        let ds = DSAlgebra::new(&chi, 6);
        let x = ds.bracket_generators((a % n) as usize, m, (b % n) as usize, p).unwrap();
        let y = ds.bracket_generators((b % n) as usize, p, (a % n) as usize, m).unwrap();
        prop_assert!(x.add(&y).is_zero());
    }
}
