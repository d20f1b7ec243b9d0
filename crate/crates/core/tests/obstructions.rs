use mlk_core::obstructions::{djp_conditions, djp_dim4_solve, djp_dim6_solve, RecordKind, Solution, Variant, DJPInstance};
use mlk_core::sample::Sampler;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Smallest λ₁ ∈ {0, ..., dℓ−1} with (cF·C(r,3)·q(b) + λ₁(r−2))/ℓ ∈ Z.
fn dim4_oracle(inst: &DJPInstance) -> Option<BigRational> {
    let ell = BigRational::from_integer(BigInt::from(inst.ell));
    let period = inst.ell * u64::try_from(inst.c_f.denom().clone()).unwrap();
    (0..period).map(|l| BigRational::from_integer(BigInt::from(l))).find(|l| {
        let v = (&inst.c_f * BigRational::from_integer(binom(inst.r, 3) * &inst.qb)
            + l * BigRational::from_integer(BigInt::from(inst.r - 2)))
            / &ell;
        v.is_integer()
    })
}

/// Smallest λ₁ = ℓt/(r−2), t ∈ {0, ..., 2dℓ−1}, with (ℓ·cF·C(r,4)·q(b) + λ₁·C(r−2,2))/ℓ² ∈ Z.
fn dim6_oracle(inst: &DJPInstance) -> Option<BigRational> {
    let ell = BigRational::from_integer(BigInt::from(inst.ell));
    let step = &ell / BigRational::from_integer(BigInt::from(inst.r - 2));
    let period = 2 * inst.ell * u64::try_from(inst.c_f.denom().clone()).unwrap();
    (0..period).map(|t| &step * BigRational::from_integer(BigInt::from(t))).find(|l| {
        let v = (&ell * &inst.c_f * BigRational::from_integer(binom(inst.r, 4) * &inst.qb)
            + l * BigRational::from_integer(binom(inst.r - 2, 2)))
            / (&ell * &ell);
        v.is_integer()
    })
}

fn inst(dim: u32, r: u64, ell: u64, qb: i64, c: i64) -> DJPInstance {
    DJPInstance::new(dim, r, ell, BigInt::from(qb), BigRational::from_integer(BigInt::from(c))).unwrap()
}

#[test]
fn dim4_examples() {
    assert_eq!(djp_dim4_solve(&inst(4, 6, 5, 2, 1)).unwrap().lambda1(), Some(&BigRational::zero()));
    assert_eq!(djp_dim4_solve(&inst(4, 7, 5, 1, 1)).unwrap().lambda1(), Some(&BigRational::zero()));
    assert_eq!(djp_dim4_solve(&inst(4, 11, 1, 7, 3)).unwrap().lambda1(), Some(&BigRational::zero()));
}

#[test]
fn dim6_examples() {
    let i = inst(6, 8, 5, 1, 1);
    let s = djp_dim6_solve(&i).unwrap();
    assert_eq!(s.lambda1().cloned(), dim6_oracle(&i));
    assert_eq!(djp_dim6_solve(&inst(6, 9, 1, 4, 2)).unwrap().lambda1(), Some(&BigRational::zero()));
    let odd = DJPInstance::new(6, 7, 2, BigInt::from(1), BigRational::new(BigInt::from(1), BigInt::from(2))).unwrap();
    match djp_dim6_solve(&odd).unwrap() {
        Solution::NoSolution { gcd, .. } => assert!(gcd > BigInt::one()),
        Solution::Found { .. } => assert!(dim6_oracle(&odd).is_some()),
    }
}

#[test]
fn solvers_agree_with_exhaustive_search() {
    let mut s = Sampler::new(44);
    for k in 0..500 {
        let dim = if k % 2 == 0 { 4 } else { 6 };
        let i = s.djp_instance(dim, 200);
        let (lib, orc) = if dim == 4 {
            (djp_dim4_solve(&i).unwrap(), dim4_oracle(&i))
        } else {
            (djp_dim6_solve(&i).unwrap(), dim6_oracle(&i))
        };
        assert_eq!(lib.lambda1().cloned(), orc, "{i:?}");
        if let Some(l) = lib.lambda1() {
            for rec in djp_conditions(Variant::Delta, &i).unwrap() {
                if let RecordKind::Scalar { fixed: None, .. } = rec.kind {
                    assert_eq!(rec.holds_at(l), Some(true), "degree {}", rec.i);
                }
            }
        }
    }
}

#[test]
fn record_shapes() {
    let i = inst(4, 6, 5, 2, 1);
    let recs = djp_conditions(Variant::Delta, &i).unwrap();
    assert!(recs.iter().take(2).all(|r| r.trivially_satisfiable));
    assert_eq!(recs[0].kind, RecordKind::Trivial);
    match &recs[2].kind {
        RecordKind::Scalar { constant, coefficient, .. } => {
            // (1/ℓ)(c·C(r,3)·q(b) + λ₁(r−2))
            assert_eq!(constant, &BigRational::new(BigInt::from(40), BigInt::from(5)));
            assert_eq!(coefficient, &BigRational::new(BigInt::from(4), BigInt::from(5)));
        }
        other => panic!("{other:?}"),
    }
    let six = djp_conditions(Variant::Delta, &inst(6, 9, 5, 1, 1)).unwrap();
    // (r−2)/ℓ = 7/5 and C(r−2,2)/ℓ² = 21/25
    let moduli: Vec<BigInt> = six[2..4].iter().map(|r| r.cleared().unwrap().0).collect();
    assert_eq!(moduli, vec![BigInt::from(5), BigInt::from(25)]);
    let big = djp_conditions(Variant::BigDelta, &inst(4, 6, 3, 1, 1)).unwrap();
    assert_eq!(big.len(), 4);
}
