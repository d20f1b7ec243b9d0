//! Scalar integrality conditions for the classes δ and Δ on a Brauer–Severi
//! variety under the ansatz c_odd = 0, c_{2i} = λ_i·q^i, with a user-supplied
//! Fujiki constant, and the linear congruence solvers for λ₁.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{binomial_big, int, mod_inverse};
use crate::error::{Error, Result};
use crate::json::{big_to_value, rational_to_value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Conditions for δ, binomials in r.
    Delta,
    /// Conditions for Δ, binomials in ℓ^{dim/2} with −b.
    BigDelta,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(Variant::Delta),
            "Delta" => Ok(Variant::BigDelta),
            other => Err(Error::UnknownKind(format!("variant `{other}` (expected delta or Delta)"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Delta => "delta",
            Variant::BigDelta => "Delta",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DJPInstance {
    pub dim: u32,
    pub r: u64,
    pub ell: u64,
    pub qb: BigInt,
    pub c_f: BigRational,
}

impl DJPInstance {
    pub fn new(dim: u32, r: u64, ell: u64, qb: BigInt, c_f: BigRational) -> Result<Self> {
        if dim != 4 && dim != 6 {
            return Err(Error::Precondition(format!("dim must be 4 or 6, got {dim}")));
        }
        if r < dim as u64 {
            return Err(Error::Precondition(format!("r = {r} must be at least dim = {dim}")));
        }
        if ell == 0 {
            return Err(Error::Precondition("ell must be positive".into()));
        }
        if qb.is_zero() {
            return Err(Error::Precondition("q(b) must be nonzero".into()));
        }
        Ok(Self { dim, r, ell, qb, c_f })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cF": rational_to_value(&self.c_f),
            "dim": self.dim,
            "ell": self.ell,
            "qb": big_to_value(&self.qb),
            "r": self.r,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordKind {
    /// Satisfiable by c_i = 0.
    Trivial,
    /// constant + coefficient·λ₁ ∈ Z, with `fixed` (the b^i coefficient when
    /// no Fujiki reduction applies) required integral on its own.
    Scalar { constant: BigRational, coefficient: BigRational, fixed: Option<BigRational> },
    /// Needs Fujiki relations beyond the reduced range.
    NotReduced,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionRecord {
    pub i: u32,
    pub kind: RecordKind,
    /// Satisfiable by c_j = 0 for j ≤ i; the ansatz form may still be listed.
    pub trivially_satisfiable: bool,
    pub note: &'static str,
}

impl ConditionRecord {
    /// Whether the record holds at λ₁ (None for degrees outside the reduced range).
    pub fn holds_at(&self, lambda1: &BigRational) -> Option<bool> {
        match &self.kind {
            RecordKind::Trivial => Some(true),
            RecordKind::NotReduced => None,
            RecordKind::Scalar { constant, coefficient, fixed } => {
                let v = constant + coefficient * lambda1;
                Some(v.is_integer() && fixed.as_ref().is_none_or(|f| f.is_integer()))
            }
        }
    }

    /// (modulus, constant, coefficient) with denominators cleared: the record
    /// holds iff modulus | constant + coefficient·λ₁ for integral λ₁.
    pub fn cleared(&self) -> Option<(BigInt, BigInt, BigInt)> {
        match &self.kind {
            RecordKind::Scalar { constant, coefficient, .. } => {
                let d = constant.denom().lcm(coefficient.denom());
                let c = (constant * BigRational::from_integer(d.clone())).to_integer();
                let a = (coefficient * BigRational::from_integer(d.clone())).to_integer();
                Some((d, c, a))
            }
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "i": self.i,
            "note": self.note,
            "trivially_satisfiable": self.trivially_satisfiable,
        });
        let obj = v.as_object_mut().expect("object");
        match &self.kind {
            RecordKind::Trivial => {
                obj.insert("kind".into(), json!("trivial"));
            }
            RecordKind::NotReduced => {
                obj.insert("kind".into(), json!("not_reduced"));
            }
            RecordKind::Scalar { constant, coefficient, fixed } => {
                obj.insert("kind".into(), json!("scalar"));
                obj.insert("constant".into(), rational_to_value(constant));
                obj.insert("coefficient".into(), rational_to_value(coefficient));
                obj.insert("fixed".into(), fixed.as_ref().map_or(Value::Null, rational_to_value));
                if let Some((m, c, a)) = self.cleared() {
                    obj.insert(
                        "cleared".into(),
                        json!({"modulus": big_to_value(&m), "constant": big_to_value(&c), "coefficient": big_to_value(&a)}),
                    );
                }
            }
        }
        v
    }
}

fn q(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

fn pow_rat(base: &BigInt, e: i64) -> BigRational {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e >= 0 {
        q(&p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Binomial with a possibly huge upper entry.
fn choose(n: &BigInt, k: u64) -> BigInt {
    if n.is_negative() {
        BigInt::zero()
    } else {
        binomial_big(n, k)
    }
}

/// Per-degree records for i = 1..dim.
pub fn djp_conditions(variant: Variant, inst: &DJPInstance) -> Result<Vec<ConditionRecord>> {
    if inst.dim != 4 && inst.dim != 6 {
        return Err(Error::Precondition(format!("dim must be 4 or 6, got {}", inst.dim)));
    }
    let half = (inst.dim / 2) as i64;
    let ell = BigInt::from(inst.ell);
    let (base, sign) = match variant {
        Variant::Delta => (BigInt::from(inst.r), false),
        Variant::BigDelta => (num_traits::pow(ell.clone(), half as usize), true),
    };
    let sgn = |e: u32| if sign && e % 2 == 1 { -BigRational::one() } else { BigRational::one() };
    // coefficient of b^i
    let top = |i: u32| -> BigRational {
        let scale = match variant {
            Variant::Delta => pow_rat(&ell, half - i as i64),
            Variant::BigDelta => pow_rat(&ell, -(i as i64)),
        };
        scale * q(&choose(&base, i as u64)) * sgn(i)
    };
    // coefficient of λ₁·b^{i−2}q from j = 2
    let lam = |i: u32| -> BigRational {
        q(&choose(&(&base - 2), (i - 2) as u64)) * pow_rat(&ell, 2 - i as i64) * sgn(i - 2)
    };
    let qb = q(&inst.qb);
    let mut out = Vec::with_capacity(inst.dim as usize);
    for i in 1..=inst.dim {
        let trivial = i as i64 <= half;
        let record = match (inst.dim, i) {
            (_, 1) | (6, 2) => ConditionRecord { i, kind: RecordKind::Trivial, trivially_satisfiable: true, note: "c_i = 0" },
            (4, 2) => ConditionRecord {
                i,
                kind: RecordKind::Scalar { constant: BigRational::zero(), coefficient: lam(2), fixed: Some(top(2)) },
                trivially_satisfiable: trivial,
                note: "b^2 and q read as independent integral classes",
            },
            (4, 3) => ConditionRecord {
                i,
                kind: RecordKind::Scalar { constant: top(3) * &inst.c_f * &qb, coefficient: lam(3), fixed: None },
                trivially_satisfiable: trivial,
                note: "b^3 = cF q(b) (bq)",
            },
            (6, 3) => ConditionRecord {
                i,
                kind: RecordKind::Scalar { constant: BigRational::zero(), coefficient: lam(3), fixed: Some(top(3)) },
                trivially_satisfiable: trivial,
                note: "b^3 and bq read as independent integral classes",
            },
            (6, 4) => ConditionRecord {
                i,
                kind: RecordKind::Scalar { constant: top(4) * &inst.c_f * &qb, coefficient: lam(4), fixed: None },
                trivially_satisfiable: trivial,
                note: "b^4 = cF q(b) (b^2 q), lambda_2 integral",
            },
            _ => ConditionRecord { i, kind: RecordKind::NotReduced, trivially_satisfiable: false, note: "outside the reduced range" },
        };
        out.push(record);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// Smallest admissible λ₁ together with the cleared congruence
    /// modulus | constant + coefficient·t it solves.
    Found { lambda1: BigRational, t: BigInt, modulus: BigInt, constant: BigInt, coefficient: BigInt },
    /// gcd(coefficient, modulus) does not divide the constant.
    NoSolution { gcd: BigInt, modulus: BigInt, constant: BigInt, coefficient: BigInt },
}

impl Solution {
    pub fn lambda1(&self) -> Option<&BigRational> {
        match self {
            Solution::Found { lambda1, .. } => Some(lambda1),
            Solution::NoSolution { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Solution::Found { lambda1, t, modulus, constant, coefficient } => json!({
                "coefficient": big_to_value(coefficient),
                "constant": big_to_value(constant),
                "lambda1": rational_to_value(lambda1),
                "modulus": big_to_value(modulus),
                "solvable": true,
                "t": big_to_value(t),
            }),
            Solution::NoSolution { gcd, modulus, constant, coefficient } => json!({
                "coefficient": big_to_value(coefficient),
                "constant": big_to_value(constant),
                "gcd": big_to_value(gcd),
                "modulus": big_to_value(modulus),
                "solvable": false,
            }),
        }
    }
}

/// Smallest t ≥ 0 with modulus | constant + coefficient·t.
pub fn solve_linear_congruence(modulus: &BigInt, constant: &BigInt, coefficient: &BigInt) -> std::result::Result<BigInt, BigInt> {
    let g = coefficient.gcd(modulus);
    if g.is_zero() {
        return if constant.is_zero() { Ok(BigInt::zero()) } else { Err(g) };
    }
    if !constant.is_multiple_of(&g) {
        return Err(g);
    }
    let m = modulus / &g;
    if m.is_one() {
        return Ok(BigInt::zero());
    }
    let inv = mod_inverse(&(coefficient / &g).mod_floor(&m), &m).expect("coprime after division");
    Ok((-(constant / &g) * inv).mod_floor(&m))
}

fn solve(modulus: BigInt, constant: BigInt, coefficient: BigInt, to_lambda: impl Fn(&BigInt) -> BigRational) -> Solution {
    match solve_linear_congruence(&modulus, &constant, &coefficient) {
        Ok(t) => Solution::Found { lambda1: to_lambda(&t), t, modulus, constant, coefficient },
        Err(gcd) => Solution::NoSolution { gcd, modulus, constant, coefficient },
    }
}

/// Smallest integral λ₁ ≥ 0 with (cF·C(r,3)·q(b) + λ₁(r−2))/ℓ ∈ Z; with
/// cF = a/d this is dℓ | a·C(r,3)·q(b) + d(r−2)λ₁.
pub fn djp_dim4_solve(inst: &DJPInstance) -> Result<Solution> {
    if inst.dim != 4 {
        return Err(Error::Precondition("djp_dim4_solve needs dim = 4".into()));
    }
    let (a, d) = (inst.c_f.numer().clone(), inst.c_f.denom().clone());
    let ell = BigInt::from(inst.ell);
    let modulus = &d * &ell;
    let constant = &a * binomial_big(&BigInt::from(inst.r), 3) * &inst.qb;
    let coefficient = &d * BigInt::from(inst.r - 2);
    Ok(solve(modulus, constant, coefficient, q))
}

/// Smallest λ₁ = (ℓ/(r−2))·t, t ≥ 0, with (ℓ·cF·C(r,4)·q(b) + λ₁·C(r−2,2))/ℓ² ∈ Z;
/// with cF = a/d this is 2dℓ | 2a·C(r,4)·q(b) + d(r−3)t.
pub fn djp_dim6_solve(inst: &DJPInstance) -> Result<Solution> {
    if inst.dim != 6 {
        return Err(Error::Precondition("djp_dim6_solve needs dim = 6".into()));
    }
    let (a, d) = (inst.c_f.numer().clone(), inst.c_f.denom().clone());
    let ell = BigInt::from(inst.ell);
    let r = BigInt::from(inst.r);
    let modulus = int(2) * &d * &ell;
    let constant = int(2) * &a * binomial_big(&r, 4) * &inst.qb;
    let coefficient = &d * (&r - 3);
    let step = BigRational::new(ell.clone(), &r - 2);
    Ok(solve(modulus, constant, coefficient, |t| &step * q(t)))
}

pub fn djp_solve(inst: &DJPInstance) -> Result<Solution> {
    match inst.dim {
        4 => djp_dim4_solve(inst),
        _ => djp_dim6_solve(inst),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(dim: u32, r: u64, ell: u64, qb: i64, c: (i64, i64)) -> DJPInstance {
        DJPInstance::new(dim, r, ell, int(qb), BigRational::new(int(c.0), int(c.1))).unwrap()
    }

    #[test]
    fn dim4_examples() {
        assert_eq!(djp_dim4_solve(&inst(4, 6, 5, 2, (1, 1))).unwrap().lambda1(), Some(&BigRational::zero()));
        assert_eq!(djp_dim4_solve(&inst(4, 7, 5, 1, (1, 1))).unwrap().lambda1(), Some(&BigRational::zero()));
        assert_eq!(djp_dim4_solve(&inst(4, 9, 1, 3, (1, 1))).unwrap().lambda1(), Some(&BigRational::zero()));
        // 2λ ≡ −4 mod 6 → λ = 1
        let s = djp_dim4_solve(&inst(4, 4, 6, 1, (1, 1))).unwrap();
        assert_eq!(s.lambda1(), Some(&BigRational::one()));
        // 20 + 4λ ≡ 0 mod 4 → λ = 0
        assert_eq!(djp_dim4_solve(&inst(4, 6, 4, 1, (1, 1))).unwrap().lambda1(), Some(&BigRational::zero()));
        // 16 | 20 + 8λ has no solution
        match djp_dim4_solve(&inst(4, 6, 8, 1, (1, 2))).unwrap() {
            Solution::NoSolution { gcd, .. } => assert_eq!(gcd, int(8)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dim6_examples() {
        let s = djp_dim6_solve(&inst(6, 8, 1, 1, (1, 1))).unwrap();
        assert_eq!(s.lambda1(), Some(&BigRational::zero()));
        let s = djp_dim6_solve(&inst(6, 8, 5, 1, (1, 1))).unwrap();
        let lam = s.lambda1().unwrap().clone();
        let recs = djp_conditions(Variant::Delta, &inst(6, 8, 5, 1, (1, 1))).unwrap();
        assert!(recs.iter().all(|r| r.holds_at(&lam) != Some(false)));
    }

    #[test]
    fn records_shape() {
        let recs = djp_conditions(Variant::Delta, &inst(4, 6, 5, 2, (1, 1))).unwrap();
        assert_eq!(recs.len(), 4);
        assert_eq!(recs[0].kind, RecordKind::Trivial);
        match &recs[2].kind {
            RecordKind::Scalar { constant, coefficient, .. } => {
                assert_eq!(constant, &BigRational::new(int(40), int(5)));
                assert_eq!(coefficient, &BigRational::new(int(4), int(5)));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(recs[3].kind, RecordKind::NotReduced);
        let big = djp_conditions(Variant::BigDelta, &inst(6, 6, 3, 1, (1, 1))).unwrap();
        assert_eq!(big.len(), 6);
        assert!(DJPInstance::new(8, 9, 1, int(1), BigRational::one()).is_err());
    }
}
