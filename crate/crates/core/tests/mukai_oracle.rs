mod oracle;

use mlk_core::arith::{imat, ivec};
use mlk_core::lattice::{standard_lattice, IntLattice, LatticeKind};
use mlk_core::mukai::{
    decomposition_lattice, e_tilde, hodge_classes_mukai, ind_mukai, is_nonspecial, mukai, period, BrauerConfig,
};
use mlk_core::sample::Sampler;
use mlk_core::Error;

fn toy_a(n: u32) -> BrauerConfig {
    let h2 = IntLattice::direct_sum_all(&[
        standard_lattice(&LatticeKind::Diag(vec![2])).unwrap(),
        standard_lattice(&LatticeKind::U).unwrap(),
        standard_lattice(&LatticeKind::U).unwrap(),
    ]);
    BrauerConfig::new(h2, imat(&[&[1, 0, 0, 0, 0]]), ivec(&[0, 1, -1, 0, 0]), 5, n).unwrap()
}

#[test]
fn toy_a_values() {
    let cfg = toy_a(1);
    assert_eq!(period(&cfg), 5);
    assert_eq!(ind_mukai(&cfg).unwrap(), 5);
    let e = e_tilde(&cfg).unwrap();
    assert_eq!(e, ivec(&[0, -1, 1, 0, 0, 5, 0]));
    assert!(oracle::is_hodge(cfg.ns().basis(), cfg.b(), cfg.ell(), &e));
    assert_eq!(hodge_classes_mukai(&cfg).rank(), 3);
}

#[test]
fn special_fixture_has_period_one() {
    let h2 = IntLattice::direct_sum_all(&[
        standard_lattice(&LatticeKind::U).unwrap(),
        standard_lattice(&LatticeKind::U).unwrap(),
    ]);
    let cfg = BrauerConfig::new(h2, imat(&[&[1, 3, 0, 0]]), ivec(&[1, -3, 0, 0]), 3, 1).unwrap();
    assert!(!is_nonspecial(&cfg));
    assert_eq!(oracle::period(cfg.ns().basis(), cfg.b(), 3, 4), 1);
    assert_eq!(period(&cfg), 1);
    assert_eq!(ind_mukai(&cfg).unwrap(), 1);
}

#[test]
fn random_configs_against_oracle() {
    let mut s = Sampler::new(2024);
    for _ in 0..120 {
        let cfg = s.config(12, (2, 97), 1);
        let rank = cfg.h2().rank();
        let expected = oracle::period(cfg.ns().basis(), cfg.b(), cfg.ell(), rank);
        assert_eq!(period(&cfg), expected, "{}", cfg.to_json());
        assert_eq!(ind_mukai(&cfg).unwrap(), expected);
        if is_nonspecial(&cfg) {
            assert_eq!(expected, cfg.ell());
        }
        let n = hodge_classes_mukai(&cfg);
        assert_eq!(n.rank(), cfg.ns().rank() + 2);
        for v in n.basis() {
            assert!(oracle::is_hodge(cfg.ns().basis(), cfg.b(), cfg.ell(), v));
        }
        let e = e_tilde(&cfg).unwrap();
        assert_eq!(mukai(&cfg).rk(&e), num_bigint::BigInt::from(expected));
        if expected == cfg.ell() {
            // N = Zẽ ⊕ NS ⊕ Zf
            assert!(decomposition_lattice(&cfg).unwrap().same_span(&n));
        }
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let h2 = standard_lattice(&LatticeKind::U).unwrap();
    assert!(matches!(BrauerConfig::new(h2.clone(), vec![], ivec(&[1, 0]), 3, 1), Err(Error::InvalidConfig(_))));
    assert!(BrauerConfig::new(h2, vec![], ivec(&[1, 0, 0]), 3, 1).is_err());
    let json = serde_json::json!({"h2": "K3n(2)", "b": [1], "ell": 2});
    assert!(BrauerConfig::from_json(&json).is_err());
}
