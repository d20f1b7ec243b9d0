//! Reading configs: shape errors map to exit 1, semantic ones to exit 2.

use std::path::Path;

use mlk_core::mukai::BrauerConfig;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::{CliResult, Failure};

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
}

fn is_int(v: &Value) -> bool {
    v.is_i64() || v.is_u64() || v.as_str().is_some_and(|s| s.trim().parse::<BigInt>().is_ok())
}

fn is_int_array(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(is_int))
}

fn is_int_matrix(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(is_int_array))
}

/// Checks the JSON types of the shared schema without interpreting values.
pub fn check_shape(v: &Value) -> CliResult<()> {
    let obj = v.as_object().ok_or_else(|| Failure::malformed("config must be a JSON object"))?;
    for key in ["h2", "b", "ell"] {
        if !obj.contains_key(key) {
            return Err(Failure::malformed(format!("missing field `{key}`")));
        }
    }
    match &obj["h2"] {
        Value::String(_) => {}
        Value::Object(l) if l.get("gram").is_some_and(is_int_matrix) => {}
        _ => return Err(Failure::malformed("`h2` must be a lattice name or {\"rank\", \"gram\"}")),
    }
    if !is_int_array(&obj["b"]) {
        return Err(Failure::malformed("`b` must be an integer array"));
    }
    if let Some(ns) = obj.get("ns_basis") {
        if !ns.is_null() && !is_int_matrix(ns) {
            return Err(Failure::malformed("`ns_basis` must be an integer matrix"));
        }
    }
    if !obj["ell"].is_u64() {
        return Err(Failure::malformed("`ell` must be a non-negative integer"));
    }
    if obj.get("n").is_some_and(|n| !n.is_u64()) {
        return Err(Failure::malformed("`n` must be a non-negative integer"));
    }
    Ok(())
}

/// Parses a config file, applying an optional override of n.
pub fn load_config(path: &Path, n: Option<u32>) -> CliResult<BrauerConfig> {
    let mut v = read_json(path)?;
    check_shape(&v)?;
    if let Some(n) = n {
        v["n"] = Value::from(n);
    }
    Ok(BrauerConfig::from_json(&v)?)
}

pub fn parse_big(flag: &str, s: &str) -> CliResult<BigInt> {
    s.trim().parse().map_err(|_| Failure::malformed(format!("--{flag}: `{s}` is not an integer")))
}

/// Accepts `a` or `a/b`.
pub fn parse_rational(flag: &str, s: &str) -> CliResult<BigRational> {
    let bad = || Failure::malformed(format!("--{flag}: `{s}` is not a rational number"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b == BigInt::from(0) {
                return Err(Failure::precondition(format!("--{flag}: zero denominator")));
            }
            Ok(BigRational::new(a, b))
        }
    }
}

/// `p^m,q^k,...`; a bare prime means exponent 1.
pub fn parse_factors(s: &str) -> CliResult<Vec<(u64, u32)>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let bad = || Failure::malformed(format!("--factors: `{t}` is not of the form p^m"));
            let (p, m) = t.trim().split_once('^').unwrap_or((t.trim(), "1"));
            Ok((p.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}
