use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use toric_trace::latgeom::{
    lattice_points, mixed_volume_with, normalized_volume, IntegerLattice, InclusionExclusion, MixedCells,
};
use toric_trace::poly::{rat, Polynomial, Rational, Support};
use toric_trace::registry::mixed_volume_strategies;
use toric_trace::traceform::trace_sparse;

fn support2() -> impl Strategy<Value = Support> {
    prop::collection::btree_set((0i64..3, 0i64..3), 1..6)
        .prop_map(|s| Support::new(2, s.into_iter().map(|(a, b)| vec![a, b]).collect()))
}

fn coeff() -> impl Strategy<Value = i64> {
    prop_oneof![-9i64..=-1, 1i64..=9]
}

// Two generic bilinear equations: the unit square pair has mixed volume 2.
fn square_system(c: &[i64]) -> Vec<Polynomial> {
    let square = [[0, 0], [1, 0], [0, 1], [1, 1]];
    (0..2)
        .map(|i| Polynomial::from_terms(2, square.iter().zip(&c[4 * i..4 * i + 4]).map(|(e, x)| (e.to_vec().into(), rat(*x)))))
        .collect()
}

fn linear(c: &[i64]) -> Polynomial {
    Polynomial::from_terms(2, [[0, 0], [1, 0], [0, 1]].iter().zip(c).map(|(e, x)| (e.to_vec().into(), rat(*x))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_points_contain_support_and_translate(s in support2(), dx in -3i64..3, dy in -3i64..3) {
        let pts = lattice_points(&s).unwrap();
        for p in s.points() {
            prop_assert!(pts.contains(p));
        }
        let moved = lattice_points(&s.translate(&[dx, dy])).unwrap();
        let mut shifted: Vec<Vec<i64>> = pts.iter().map(|p| vec![p[0] + dx, p[1] + dy]).collect();
        shifted.sort();
        let mut moved = moved;
        moved.sort();
        prop_assert_eq!(moved, shifted);
    }

    #[test]
    fn volume_is_translation_invariant(s in support2(), dx in -3i64..3, dy in -3i64..3) {
        prop_assert_eq!(normalized_volume(&s).unwrap(), normalized_volume(&s.translate(&[dx, dy])).unwrap());
    }

    #[test]
    fn mixed_volume_strategies_agree(a in support2(), b in support2(), seed in 0u64..1000) {
        let fam = [a.clone(), b.clone()];
        let full = IntegerLattice::full(2);
        let ie = mixed_volume_with(&InclusionExclusion, &fam, &full).unwrap();
        let mc = mixed_volume_with(&MixedCells { seed }, &fam, &full).unwrap();
        prop_assert_eq!(&ie, &mc);
        let swapped = mixed_volume_with(&InclusionExclusion, &[b, a.clone()], &full).unwrap();
        prop_assert_eq!(&ie, &swapped);
        // MV(P, P) = nvol(P)
        let diag = mixed_volume_with(&InclusionExclusion, &[a.clone(), a.clone()], &full).unwrap();
        prop_assert_eq!(diag, normalized_volume(&a).unwrap());
        prop_assert!(ie >= BigInt::zero());
        let registry = mixed_volume_strategies();
        for strat in registry.names() {
            let s = registry.get(strat).unwrap();
            prop_assert_eq!(mixed_volume_with(s.as_ref(), &fam, &full).unwrap(), ie.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn trace_of_one_counts_roots(c in prop::collection::vec(coeff(), 8)) {
        let f = square_system(&c);
        let one = Polynomial::one(2);
        if let Ok(t) = trace_sparse(&one, &one, &f, 7) {
            prop_assert_eq!(t.value, rat(2));
        }
    }

    #[test]
    fn trace_is_linear_in_numerator(
        c in prop::collection::vec(coeff(), 8),
        p1 in prop::collection::vec(coeff(), 3),
        p2 in prop::collection::vec(coeff(), 3),
        k in coeff(),
    ) {
        let f = square_system(&c);
        let q = Polynomial::one(2);
        let (a, b) = (linear(&p1), linear(&p2));
        let combined = a.clone() + b.scale(&rat(k));
        let ta = trace_sparse(&a, &q, &f, 1);
        let tb = trace_sparse(&b, &q, &f, 1);
        let tc = trace_sparse(&combined, &q, &f, 1);
        if let (Ok(ta), Ok(tb), Ok(tc)) = (ta, tb, tc) {
            prop_assert_eq!(tc.value, ta.value + tb.value * rat(k));
        }
    }

    #[test]
    fn trace_ignores_equation_scaling(
        c in prop::collection::vec(coeff(), 8),
        p in prop::collection::vec(coeff(), 3),
        s0 in coeff(),
        s1 in coeff(),
    ) {
        let f = square_system(&c);
        let g = vec![f[0].scale(&rat(s0)), f[1].scale(&Rational::new(1.into(), s1.into()))];
        let (p, q) = (linear(&p), Polynomial::one(2));
        if let (Ok(a), Ok(b)) = (trace_sparse(&p, &q, &f, 3), trace_sparse(&p, &q, &g, 4)) {
            prop_assert_eq!(a.value, b.value);
        }
    }
}
