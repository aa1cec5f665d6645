mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;
use qwa_core::lattice::{hermite_basis, lattice_coordinates, lattice_intersect, skew_normal_form, IntMatrix};
use qwa_core::reduce::reduce_to_canonical;
use qwa_core::torus::{uniparameter_iso_decide, QuantumTorus, UniparameterIso};
use qwa_core::{CanonicalMixedAlgebra, NCElement, ReductionSystem, ScalarGroup};

fn antisymmetric(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-4i64..=4, n * (n - 1) / 2).prop_map(move |v| {
        let mut rows = vec![vec![0; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                rows[i][j] = v[k];
                rows[j][i] = -v[k];
                k += 1;
            }
        }
        IntMatrix::from_rows(&rows)
    })
}

fn sized_antisymmetric() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6).prop_flat_map(antisymmetric)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, cols), rows).prop_map(|r| IntMatrix::from_rows(&r))
}

/// Random element of `S_{2,2}^q`: a sum of up to three words of length
/// up to three with small integer coefficients.
fn element(sys: &ReductionSystem, spec: &[(i64, Vec<usize>)]) -> NCElement {
    let mut out = NCElement::zero();
    for (c, word) in spec {
        let mut m = sys.constant(sys.ring().from_int(*c));
        for &g in word {
            m = sys.mul(&m, &sys.generator(g)).unwrap();
        }
        out = sys.add(&out, &m);
    }
    out
}

fn element_spec() -> impl Strategy<Value = Vec<(i64, Vec<usize>)>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0usize..4, 0..=3)), 1..=3)
}

fn s22_system() -> ReductionSystem {
    let s = CanonicalMixedAlgebra::s22(&ScalarGroup::generic_q()).unwrap();
    ReductionSystem::from_presentation(&s.presentation()).unwrap().certify().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn multiplication_is_associative(a in element_spec(), b in element_spec(), c in element_spec()) {
        let sys = s22_system();
        let (a, b, c) = (element(&sys, &a), element(&sys, &b), element(&sys, &c));
        let left = sys.mul(&sys.mul(&a, &b).unwrap(), &c).unwrap();
        let right = sys.mul(&a, &sys.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn skew_form_is_congruence_invariant(a in sized_antisymmetric(), seed in any::<u64>()) {
        let u = random_unimodular(&mut rng(seed), a.rows(), 8);
        let fa = skew_normal_form(&a).unwrap();
        let fb = skew_normal_form(&congruent(&a, &u)).unwrap();
        prop_assert_eq!(&fa.divisors, &fb.divisors);
        prop_assert_eq!(congruent(&a, &fa.transform), fa.canonical());
    }

    #[test]
    fn intersection_lies_in_both(b1 in matrix(2, 3), b2 in matrix(2, 3)) {
        let i = lattice_intersect(&b1, &b2).unwrap();
        let (h1, h2) = (hermite_basis(&b1), hermite_basis(&b2));
        for r in 0..i.rows() {
            prop_assert!(lattice_coordinates(&h1, i.row(r)).is_some());
            prop_assert!(lattice_coordinates(&h2, i.row(r)).is_some());
        }
        prop_assert_eq!(lattice_intersect(&b1, &b1).unwrap(), h1);
    }

    #[test]
    fn intersection_contains_common_multiples(b1 in matrix(2, 3), b2 in matrix(3, 3), c in prop::collection::vec(-3i64..=3, 2)) {
        // Any v in L1 with det(B2)·v in L2: the multiple is in the meet.
        let det = b2.det().unwrap();
        prop_assume!(det != BigInt::from(0));
        let v: Vec<BigInt> = (0..3)
            .map(|j| (0..2).map(|i| BigInt::from(c[i]) * b1.get(i, j)).sum::<BigInt>() * &det)
            .collect();
        let meet = lattice_intersect(&b1, &b2).unwrap();
        prop_assert!(lattice_coordinates(&meet, &v).is_some());
    }

    #[test]
    fn torus_iso_is_symmetric(a in antisymmetric(4), b in antisymmetric(4)) {
        let g = ScalarGroup::generic_q();
        let q = g.symbol("q").unwrap();
        let ta = QuantumTorus::from_exponents(g.clone(), &q, &a).unwrap();
        let tb = QuantumTorus::from_exponents(g.clone(), &q, &b).unwrap();
        let ab = matches!(uniparameter_iso_decide(&ta, &tb, "q").unwrap(), UniparameterIso::Iso(_));
        let ba = matches!(uniparameter_iso_decide(&tb, &ta, "q").unwrap(), UniparameterIso::Iso(_));
        prop_assert_eq!(ab, ba);
        prop_assert!(matches!(uniparameter_iso_decide(&ta, &ta, "q").unwrap(), UniparameterIso::Iso(_)));
    }

    #[test]
    fn reduction_ignores_generator_order(seed in any::<u64>(), n in 2usize..=6) {
        let g = group();
        let mut r = rng(seed);
        let p = random_presentation(&mut r, &g, n);
        prop_assume!(p.check_admissible().unwrap().is_admissible());
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut r);
        let (c, _) = reduce_to_canonical(&p).unwrap();
        let (c2, _) = reduce_to_canonical(&p.permuted(&order).unwrap()).unwrap();
        prop_assert_eq!((c.n(), c.r()), (c2.n(), c2.r()));
        prop_assert_eq!(c.weight_group().unwrap(), c2.weight_group().unwrap());
    }
}
