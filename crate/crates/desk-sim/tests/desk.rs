//! End-to-end checks through the public desk-sim API.

use pionless_core::{potential_norm_bounds, HamiltonianParams, LatticeConfig, SystemSpec};
use pionless_desk_sim::antisym::AntisymmetricBasis;
use pionless_desk_sim::basis::Shape;
use pionless_desk_sim::lcu::verify_block_encoding;
use pionless_desk_sim::operator::{build_exact_h, build_parts, occupation_counts, spectral_norm};
use pionless_desk_sim::suite::{run_suite, VerificationReport};
use pionless_desk_sim::verify::{seminorm_bounds, verify_trotter_bound};

fn spec(d: u32, m: u32, eta: u64) -> SystemSpec {
    SystemSpec::with_defaults(d, m, eta).unwrap()
}

#[test]
fn exact_hamiltonian_examples() {
    let h = build_exact_h(&spec(1, 1, 2)).unwrap();
    assert!(h.hermiticity_error() < 1e-12);
    let parts = build_parts(&spec(1, 1, 2)).unwrap();
    let c = spec(1, 1, 2).params.c;
    let diag: Vec<f64> = (0..parts.v2.dim())
        .map(|i| parts.v2.matrix[(i, i)].re)
        .collect();
    assert!(diag.iter().all(|v| *v == 0.0 || (*v - c).abs() < 1e-12));
    assert!(diag.iter().any(|v| *v != 0.0));
}

#[test]
fn circuit_report_round_trips_as_json() {
    let r = run_suite(Some("circuit/"));
    assert!(r.all_pass(), "{}", r.to_json());
    let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    let again = run_suite(Some("circuit/"));
    let names = |r: &VerificationReport| r.cases.iter().map(|c| c.name.clone()).collect::<Vec<_>>();
    assert_eq!(names(&again), names(&r));
}

#[test]
fn block_encoding_for_both_lattice_sizes() {
    for m in [1, 2] {
        let r = verify_block_encoding(&spec(1, m, 2), 1e-8).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn trotter_orders_on_three_nucleons() {
    let s = spec(1, 1, 3);
    for (order, r, t) in [
        (pionless_core::TrotterOrder::First, 5, 0.004),
        (pionless_core::TrotterOrder::Second, 3, 0.02),
        (pionless_core::TrotterOrder::Fourth, 2, 0.05),
    ] {
        let c = verify_trotter_bound(&s, order, r, t).unwrap();
        assert!(c.pass() && c.measured > 0.0, "{c:?}");
    }
}

#[test]
fn seminorm_of_pair_potential_reaches_coupling() {
    let c = seminorm_bounds(&spec(1, 1, 2)).unwrap();
    assert!((c.v2.0 - 98.23).abs() < 1e-9);
    assert!(c.pass());
}

/// With five nucleons a triple and a pair can sit on two sites at once,
/// so `|4C + G|` is reached. This exceeds the packed-configuration value
/// used for the combined potential bound.
#[test]
fn combined_bound_is_exceeded_by_mixed_clusters() {
    let s = spec(1, 1, 5);
    let basis = AntisymmetricBasis::new(Shape::new(&s.lattice, s.eta).unwrap()).unwrap();
    let (c, g) = (s.params.c, s.params.g);
    let sites = basis.shape().sites();
    let v = basis.restrict_diagonal(|st| {
        let r: Vec<u64> = st.iter().map(|x| x % sites).collect();
        let (pairs, triples) = occupation_counts(&r);
        c * pairs as f64 + g * triples as f64
    });
    let measured = spectral_norm(&v);
    let bound = potential_norm_bounds(&s).combined;
    assert!((measured - (4.0 * c + g).abs()).abs() < 1e-9, "{measured}");
    assert!(measured > bound, "{measured} vs {bound}");
}

#[test]
fn kinetic_only_instance() {
    let mut p = HamiltonianParams::nominal();
    p.c = 0.0;
    p.g = 0.0;
    let s = SystemSpec::new(p, LatticeConfig::new(1, 2).unwrap(), 2).unwrap();
    let r = verify_block_encoding(&s, 1e-8).unwrap();
    assert!(r.pass);
    assert!((r.lambda_h - pionless_core::lambda_t(&s)).abs() < 1e-9);
}
