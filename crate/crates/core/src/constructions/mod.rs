//! Explicit classes and congruence bookkeeping: η, b′, conic points, Hensel
//! lifts and the O'Grady numerical conditions.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::json::big_to_value;

pub mod bprime;
pub mod eta;
pub mod modular;
pub mod ogrady;

pub use bprime::{b_prime, hyperbolic_in_complement, BPrimeCertificate, BPrimeRequest};
pub use eta::{eta_finder, eta_finder_with, EtaWitness};
pub use modular::{brute_force_roots, conic_point, conic_points, hensel_quadratic};
pub use ogrady::{
    ogrady_adjust, ogrady_check, ogrady_invariants, prime_split_bound, Branch, ConditionReport, OGradyParams,
    SplitReport,
};

/// One checked divisibility or congruence: `verdict` says whether `modulus`
/// divides `lhs` (or, without a modulus, whether the named claim holds).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub condition: String,
    pub lhs: BigInt,
    pub modulus: Option<BigInt>,
    pub verdict: bool,
}

impl Check {
    pub fn divides(condition: impl Into<String>, modulus: BigInt, lhs: BigInt) -> Self {
        let verdict = if modulus == BigInt::from(0) { lhs == modulus } else { &lhs % &modulus == BigInt::from(0) };
        Self { condition: condition.into(), lhs, modulus: Some(modulus), verdict }
    }

    pub fn claim(condition: impl Into<String>, lhs: BigInt, verdict: bool) -> Self {
        Self { condition: condition.into(), lhs, modulus: None, verdict }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "condition": self.condition,
            "lhs": big_to_value(&self.lhs),
            "modulus": self.modulus.as_ref().map(big_to_value),
            "verdict": self.verdict,
        })
    }
}
