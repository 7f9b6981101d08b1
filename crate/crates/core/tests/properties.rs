//! Randomized invariants of the closed-form estimators.

use pionless_core::{
    cost_trotter, lcu_h, lcu_t, lcu_v, norms::max_couples, norms::max_triples, plan_trotter,
    qsp_evolution, t_qft, t_rot, Accounting, SystemSpec, TrotterOrder,
};
use proptest::prelude::*;

fn order() -> impl Strategy<Value = TrotterOrder> {
    prop_oneof![
        Just(TrotterOrder::First),
        Just(TrotterOrder::Second),
        Just(TrotterOrder::Fourth),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 128,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn trotter_breakdown_sums_to_total(
        d in 1u32..=3, m in 2u32..=6, eta in 2u64..=60,
        eps in 1e-4f64..0.5, t in 1e-3f64..2.0, ord in order(),
    ) {
        let spec = SystemSpec::with_defaults(d, m, eta);
        prop_assume!(spec.is_ok());
        let spec = spec.unwrap();
        let rep = cost_trotter(&spec, ord, eps, t, &Accounting::default()).unwrap();
        prop_assert_eq!(rep.breakdown.values().sum::<i128>() as u128, rep.t_count);
        prop_assert!(rep.breakdown.values().all(|v| *v >= 0));
        prop_assert_eq!(rep.total_qubits, rep.system_qubits + rep.ancilla_qubits);
        prop_assert_eq!(rep.system_qubits, eta * u64::from(d * m));
    }

    #[test]
    fn steps_grow_with_time_and_precision(
        eta in 2u64..=40, eps in 1e-4f64..0.5, t in 1e-3f64..1.0, ord in order(),
    ) {
        let spec = SystemSpec::with_defaults(3, 3, eta).unwrap();
        let r = plan_trotter(&spec, ord, eps, t).unwrap().r;
        prop_assert!(r >= 1);
        prop_assert!(plan_trotter(&spec, ord, eps, 2.0 * t).unwrap().r >= r);
        prop_assert!(plan_trotter(&spec, ord, eps / 2.0, t).unwrap().r >= r);
    }

    #[test]
    fn qsp_cost_is_monotone_in_time(
        eta in 1u64..=40, m in 2u32..=5, eps in 1e-6f64..0.5, t in 1e-3f64..0.5,
    ) {
        let spec = SystemSpec::with_defaults(3, m, eta).unwrap();
        let acct = Accounting::default();
        let a = qsp_evolution(&spec, eps, t, &acct).unwrap();
        let b = qsp_evolution(&spec, eps, 2.0 * t, &acct).unwrap();
        prop_assert!(b.r >= a.r);
        prop_assert!(b.t_count >= a.t_count);
        prop_assert_eq!(a.breakdown.values().sum::<i128>() as u128, a.t_count);
    }

    #[test]
    fn block_encoding_norms_add(eta in 1u64..=64, d in 1u32..=3, m in 1u32..=6) {
        let spec = SystemSpec::with_defaults(d, m, eta);
        prop_assume!(spec.is_ok());
        let spec = spec.unwrap();
        let h = lcu_h(&spec, 0.01).unwrap().lambda;
        let sum = lcu_t(&spec, 0.01).unwrap().lambda + lcu_v(&spec, 0.01).unwrap().lambda;
        prop_assert!((h - sum).abs() <= 1e-12 * h);
    }

    #[test]
    fn gate_costs_are_monotone(n in 1u64..=40, eps in 1e-9f64..0.9) {
        prop_assert!(t_qft(n, eps).unwrap().t_count <= t_qft(n + 1, eps).unwrap().t_count);
        prop_assert!(t_qft(n, eps / 2.0).unwrap().t_count >= t_qft(n, eps).unwrap().t_count);
        prop_assert!(t_rot(eps / 2.0).unwrap() > t_rot(eps).unwrap());
    }

    #[test]
    fn occupation_counts_are_superadditive(a in 0u64..200, b in 0u64..200) {
        prop_assert!(max_triples(a + b) >= max_triples(a) + max_triples(b));
        prop_assert!(max_couples(a + b) >= max_couples(a) + max_couples(b));
    }
}
