use baltrees_core::decreasing_binary::vertex_prob_sequence;
use baltrees_core::oracle::{classify, perm_to_tree};
use baltrees_core::scalar::rational;
use baltrees_core::series::{egf_counts, solve_linear_ode, solve_riccati_like, trig_series, RiccatiKind, TrigKind};
use baltrees_core::verify::{balanced_table_for, root_balanced_table_for, tree_counts};
use baltrees_core::{QSeries, Rational, Variety};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rational(n, d))
}

fn series(order: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(small_rational(), order + 1).prop_map(QSeries::from_coeffs)
}

fn unit_series(order: usize) -> impl Strategy<Value = QSeries> {
    (series(order), 1i64..=5).prop_map(|(s, c)| {
        let mut coeffs = s.into_coeffs();
        coeffs[0] = rational(c, 1);
        QSeries::from_coeffs(coeffs)
    })
}

fn permutation(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    (1..=max_len).prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(6), b in series(6), c in series(6)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), QSeries::zero(6));
        prop_assert_eq!(a.mul(&QSeries::constant(rational(1, 1), 6)), a.clone());
    }

    #[test]
    fn truncation_is_consistent(a in series(8), b in series(5)) {
        prop_assert_eq!(a.add(&b).order(), 5);
        prop_assert_eq!(a.mul(&b), a.truncate(5).mul(&b));
    }

    #[test]
    fn division_inverts_multiplication(a in series(7), b in unit_series(7)) {
        prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a);
    }

    #[test]
    fn antiderivative_then_derivative(a in series(7), c in small_rational()) {
        let lifted = a.antiderivative(c.clone());
        prop_assert_eq!(lifted.order(), 8);
        prop_assert_eq!(lifted.coeff(0), Some(&c));
        prop_assert_eq!(lifted.derivative().unwrap(), a);
    }

    #[test]
    fn linear_ode_residual_vanishes(f in series(8), g in series(8), a0 in small_rational()) {
        let a = solve_linear_ode(&f, &g, a0.clone(), 9).unwrap();
        prop_assert_eq!(a.coeff(0), Some(&a0));
        let lhs = a.derivative().unwrap();
        let rhs = f.mul(&a).add(&g);
        prop_assert_eq!(lhs, rhs.truncate(8));
    }

    #[test]
    fn scaled_trig_derivatives(c in 1i64..=7, order in 2usize..=14) {
        let c = rational(c, 1);
        let s = trig_series(TrigKind::ScaledSin, &c, order).unwrap();
        let k = trig_series(TrigKind::ScaledCos, &c, order).unwrap();
        prop_assert_eq!(s.derivative().unwrap(), k.truncate(order - 1));
        prop_assert_eq!(k.derivative().unwrap(), s.scale(&-c.clone()).truncate(order - 1));
        // sin^2 + cos^2 = 1 after clearing the scale.
        let pyth = s.mul(&s).scale(&c).add(&k.mul(&k));
        prop_assert_eq!(pyth, QSeries::constant(rational(1, 1), order));
    }

    #[test]
    fn classification_ignores_sides(perm in permutation(9)) {
        let t = perm_to_tree(&perm).unwrap();
        prop_assert_eq!(classify(&t), classify(&t.mirrored()));
        let mut reversed = perm.clone();
        reversed.reverse();
        prop_assert_eq!(perm_to_tree(&reversed).unwrap(), t.mirrored());
        prop_assert_eq!(t.size(), perm.len());
    }

    #[test]
    fn vertex_probability_decreasing(n in 1usize..=120) {
        let p = vertex_prob_sequence(n + 1).unwrap();
        prop_assert!(p.get(n + 1) <= p.get(n));
    }
}

#[test]
fn riccati_coefficients_are_integral() {
    for kind in [RiccatiKind::EulerY, RiccatiKind::PlaneZ] {
        let counts = egf_counts(&solve_riccati_like(kind, 30), "tree count").unwrap();
        assert!(counts.iter().all(|c| c > &BigInt::from(0)));
    }
}

#[test]
fn root_balanced_series_are_polynomials() {
    for v in Variety::ALL {
        let t = root_balanced_table_for(v, 4, 40).unwrap();
        for k in 0..=4 {
            let degree_bound = (1usize << (k + 1)) - 1;
            for n in (degree_bound + 1)..=40 {
                assert_eq!(t.get(n, k), BigInt::from(0), "{v} k={k} n={n}");
            }
            assert!(t.get(degree_bound, k) > BigInt::from(0), "{v} k={k}");
        }
    }
}

#[test]
fn balanced_vertices_never_exceed_vertices() {
    for v in Variety::ALL {
        let t = balanced_table_for(v, 24, 25).unwrap();
        let trees = tree_counts(v, 25).unwrap();
        for n in 1..=25 {
            let total = &trees[n] * BigInt::from(n);
            assert!(t.row_sum(n) <= total);
            assert_eq!(t.row_sum(n) == total, n <= 3, "{v} n={n}");
        }
    }
}

#[test]
fn float_instantiation_tracks_exact() {
    let exact = solve_riccati_like::<Rational>(RiccatiKind::EulerY, 20);
    let float = solve_riccati_like::<f64>(RiccatiKind::EulerY, 20);
    for i in 0..=20 {
        let q = exact.coeff(i).unwrap();
        let as_f64 = num_traits::ToPrimitive::to_f64(q).unwrap();
        assert!((as_f64 - float.coeff(i).unwrap()).abs() <= 1e-12 * as_f64.abs().max(1e-300));
    }
}
