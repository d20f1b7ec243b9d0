//! Numerical conditions for O'Grady's bundle construction specialized to
//! r0 = p^m, g = l = 1, ē = 4q(b′), plus the resulting bundle invariants and
//! the prime-by-prime index bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use super::modular::hensel_quadratic;
use super::Check;
use crate::arith::{int, is_prime};
use crate::error::{Error, Result};
use crate::json::{big_to_value, rational_to_value};
use crate::lattice::IntLattice;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OGradyParams {
    pub p: u64,
    pub m: u32,
    pub n: u32,
    /// e = q(b′).
    pub e: BigInt,
    /// q(h), recorded for the hypothesis flags when known.
    pub qh: Option<BigInt>,
}

impl OGradyParams {
    pub fn new(p: u64, m: u32, n: u32, e: BigInt) -> Self {
        Self { p, m, n, e, qh: None }
    }

    pub fn r0(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.p), self.m as usize)
    }

    pub fn e_bar(&self) -> BigInt {
        int(4) * &self.e
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub hypotheses: Vec<Check>,
    /// Conditions in the general (r0, g, l, ē) form.
    pub raw: Vec<Check>,
    /// The same conditions after substituting g = l = 1, ē = 4e.
    pub reduced: Vec<Check>,
}

impl ConditionReport {
    pub fn all_raw(&self) -> bool {
        self.raw.iter().all(|c| c.verdict)
    }

    pub fn all_reduced(&self) -> bool {
        self.reduced.iter().all(|c| c.verdict)
    }

    pub fn to_json(&self) -> Value {
        let list = |v: &[Check]| v.iter().map(Check::to_json).collect::<Vec<_>>();
        json!({
            "all_raw": self.all_raw(),
            "all_reduced": self.all_reduced(),
            "hypotheses": list(&self.hypotheses),
            "raw": list(&self.raw),
            "reduced": list(&self.reduced),
        })
    }
}

pub const COND_RANK_PARITY: &str = "g | (r0-1)/2";
pub const COND_L_COPRIME: &str = "l | n-1, gcd(l, r0) = 1, gcd(l, (r0-1)/g) = 1";
pub const COND_C1_SQUARE: &str = "8 l^2 | e_bar + 2(n-1)(r0-1)^2/g^2";
pub const COND_DISCRIMINANT: &str = "8 r0 | g^2 e_bar + 2(n-1)(r0-1)^2 + 8";
pub const RED_C1_SQUARE: &str = "8 | 4e + 2(n-1)(p^m-1)^2";
pub const RED_DISCRIMINANT: &str = "p^m | 2e + (n-1) + 4";

/// Raw conditions for arbitrary (r0, g, l, ē, n).
pub fn raw_conditions(r0: &BigInt, g: &BigInt, l: &BigInt, e_bar: &BigInt, n: u32) -> Vec<Check> {
    let n1 = BigInt::from(n) - 1u32;
    let r1: BigInt = r0 - 1u32;
    let half = if r1.is_even() { &r1 / 2 } else { r1.clone() };
    let l_ok = n1.is_multiple_of(l) && l.gcd(r0).is_one() && (r1.is_multiple_of(g) && l.gcd(&(&r1 / g)).is_one());
    // 8l² | ē + 2(n−1)(r0−1)²/g², multiplied through by g²
    let c1_lhs = g * g * e_bar + int(2) * &n1 * &r1 * &r1;
    let c1_mod = int(8) * l * l * g * g;
    vec![
        Check::divides(COND_RANK_PARITY, g.clone(), half),
        Check::claim(COND_L_COPRIME, l.clone(), l_ok),
        Check::divides(COND_C1_SQUARE, c1_mod, c1_lhs),
        Check::divides(COND_DISCRIMINANT, int(8) * r0, g * g * e_bar + int(2) * &n1 * &r1 * &r1 + 8),
    ]
}

pub fn ogrady_check(params: &OGradyParams) -> ConditionReport {
    let pb = BigInt::from(params.p);
    let r0 = params.r0();
    let n = BigInt::from(params.n);
    let n3: BigInt = &n + 3u32;
    let two_n2: BigInt = int(2) * &n - 2u32;
    let mut hypotheses = vec![
        Check::claim("p odd prime", pb.clone(), params.p != 2 && is_prime(params.p)),
        Check::claim("p does not divide 2n-2", two_n2.clone(), !two_n2.is_multiple_of(&pb)),
        Check::claim("p does not divide n+3", n3.clone(), !n3.is_multiple_of(&pb)),
    ];
    if let Some(qh) = &params.qh {
        hypotheses.push(Check::claim("p does not divide q(h)", qh.clone(), !qh.is_multiple_of(&pb)));
    }
    let raw = raw_conditions(&r0, &BigInt::one(), &BigInt::one(), &params.e_bar(), params.n);
    let r1 = &r0 - 1;
    let n1 = &n - 1;
    let reduced = vec![
        Check::claim(COND_RANK_PARITY, BigInt::one(), true),
        Check::claim(COND_L_COPRIME, BigInt::one(), true),
        Check::divides(RED_C1_SQUARE, int(8), int(4) * &params.e + int(2) * &n1 * &r1 * &r1),
        Check::divides(RED_DISCRIMINANT, r0.clone(), int(2) * &params.e + &n1 + 4),
    ];
    ConditionReport { hypotheses, raw, reduced }
}

/// The helper divisibility 2r | m²·H².
pub fn crucial_divisibility(r: &BigInt, m: &BigInt, h_sq: &BigInt) -> Check {
    Check::divides("2r | m^2 H^2", int(2) * r, m * m * h_sq)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Adjustment {
    /// b′ + j·h satisfies 2q(b′ + jh) + n + 3 ≡ 0 mod p^m.
    Shift { j: BigInt, residue: BigInt },
    /// No simple root mod p; ν should be re-chosen.
    NoAdjustment,
}

impl Adjustment {
    pub fn to_json(&self) -> Value {
        match self {
            Adjustment::Shift { j, residue } => json!({"j": big_to_value(j), "residue": big_to_value(residue)}),
            Adjustment::NoAdjustment => json!({"j": null, "residue": null}),
        }
    }
}

/// Finds j with 2q(b′ + jh) + (n+3) ≡ 0 mod p^m, given q(b′, h) = ℓ·q(h).
pub fn ogrady_adjust(
    params: &OGradyParams,
    h2: &IntLattice,
    h: &[BigInt],
    b_prime: &[BigInt],
    ell: &BigInt,
) -> Result<Adjustment> {
    let pb = BigInt::from(params.p);
    let qh = h2.square(h)?;
    if (int(2) * &qh).is_multiple_of(&pb) {
        return Err(Error::Precondition(format!("p = {} divides 2q(h)", params.p)));
    }
    if ell.is_multiple_of(&pb) {
        return Err(Error::Precondition(format!("p = {} divides l", params.p)));
    }
    if h2.pair(b_prime, h)? != ell * &qh {
        return Err(Error::Precondition("q(b', h) must equal l q(h)".into()));
    }
    let qbp = h2.square(b_prime)?;
    let n3 = BigInt::from(params.n) + 3;
    let a2 = int(2) * &qh;
    let a1 = int(4) * ell * &qh;
    let a0 = int(2) * &qbp + &n3;
    let j = match hensel_quadratic(&a2, &a1, &a0, params.p, params.m) {
        Ok(j) => j,
        Err(Error::NoRoot { .. }) => return Ok(Adjustment::NoAdjustment),
        Err(e) => return Err(e),
    };
    let shifted: Vec<BigInt> = b_prime.iter().zip(h).map(|(b, x)| b + &j * x).collect();
    let residue: BigInt = int(2) * h2.square(&shifted)? + &n3;
    if !residue.is_multiple_of(&params.r0()) {
        return Err(Error::ModelViolation(format!("shift j = {j} does not satisfy the congruence")));
    }
    Ok(Adjustment::Shift { j, residue })
}

/// (rk E, c1 multiplier, Δ coefficient) = (p^{mn}, p^{m(n−1)}, p^{m(2n−2)}(p^{2m}−1)/12).
pub fn ogrady_invariants(p: u64, m: u32, n: u32) -> Result<(BigInt, BigInt, BigRational)> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let r0 = num_traits::pow(BigInt::from(p), m as usize);
    let rank = num_traits::pow(r0.clone(), n as usize);
    let c1 = num_traits::pow(r0.clone(), n as usize - 1);
    let delta = BigRational::new(num_traits::pow(r0.clone(), 2 * n as usize - 2) * (&r0 * &r0 - 1), int(12));
    Ok((rank, c1, delta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// p ∤ q(b): the prime-power construction applies.
    NonSpecialPrimePower,
    /// p | q(b) with m = 1: the reduced-prime construction applies.
    SpecialPrime,
    /// p | q(b) with m > 1: neither construction covers this factor.
    Uncovered,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::NonSpecialPrimePower => "non-special prime power",
            Branch::SpecialPrime => "special reduced prime",
            Branch::Uncovered => "uncovered",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitFactor {
    pub p: u64,
    pub m: u32,
    pub bound: BigInt,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    pub n: u32,
    pub period: BigInt,
    pub bound: BigInt,
    pub factors: Vec<SplitFactor>,
    pub chain: Vec<String>,
}

impl SplitReport {
    pub fn to_json(&self) -> Value {
        json!({
            "bound": big_to_value(&self.bound),
            "chain": self.chain,
            "factors": self.factors.iter().map(|f| json!({
                "bound": big_to_value(&f.bound),
                "branch": f.branch.name(),
                "m": f.m,
                "p": f.p,
            })).collect::<Vec<_>>(),
            "n": self.n,
            "period": big_to_value(&self.period),
        })
    }
}

/// ∏ p_i^{m_i n} for per(α) = ∏ p_i^{m_i}, with the branch per factor; `qb`
/// selects the branch (no q(b) means every factor is treated as non-special).
pub fn prime_split_bound(factorization: &[(u64, u32)], n: u32, qb: Option<&BigInt>) -> Result<SplitReport> {
    let mut seen = std::collections::BTreeSet::new();
    let mut factors = Vec::with_capacity(factorization.len());
    for &(p, m) in factorization {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::Precondition(format!("exponent of {p} must be positive")));
        }
        if !seen.insert(p) {
            return Err(Error::Precondition(format!("prime {p} is repeated")));
        }
        let special = qb.is_some_and(|q| q.is_multiple_of(&BigInt::from(p)));
        let branch = match (special, m) {
            (false, _) => Branch::NonSpecialPrimePower,
            (true, 1) => Branch::SpecialPrime,
            (true, _) => Branch::Uncovered,
        };
        let bound = num_traits::pow(BigInt::from(p), (m * n) as usize);
        factors.push(SplitFactor { p, m, bound, branch });
    }
    let period: BigInt = factors.iter().map(|f| num_traits::pow(BigInt::from(f.p), f.m as usize)).product();
    let bound: BigInt = factors.iter().map(|f| f.bound.clone()).product();
    let mut chain = vec!["ind(alpha) | prod ind(alpha_i)".to_string()];
    for f in &factors {
        chain.push(format!("ind(alpha_{}) | {}^{} = {} [{}]", f.p, f.p, f.m * n, f.bound, f.branch.name()));
    }
    chain.push(format!("prod ind(alpha_i) | per(alpha)^{n} = {bound}"));
    debug_assert_eq!(bound, num_traits::pow(period.clone(), n as usize));
    Ok(SplitReport { n, period, bound, factors, chain })
}

pub fn invariants_to_json(inv: &(BigInt, BigInt, BigRational)) -> Value {
    json!({
        "c1_multiplier": big_to_value(&inv.1),
        "delta_coefficient": rational_to_value(&inv.2),
        "rank": big_to_value(&inv.0),
    })
}
