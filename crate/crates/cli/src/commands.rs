//! One function per subcommand. Each returns the JSON document and the exit
//! code; a report whose own verdicts fail exits with 3.

use std::path::Path;

use mlk_core::constructions::{
    b_prime, eta_finder, ogrady_adjust, ogrady_check, ogrady_invariants, prime_split_bound, BPrimeRequest, Check,
    OGradyParams,
};
use mlk_core::constructions::ogrady::invariants_to_json;
use mlk_core::arith::integral_vec;
use mlk_core::identities::verify_config;
use mlk_core::json::{big_to_value, vec_to_value};
use mlk_core::mukai::BrauerConfig;
use mlk_core::obstructions::{djp_conditions, djp_solve, DJPInstance, Variant};
use mlk_core::report::IndexReport;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::{CliResult, Failure, EXIT_INTERNAL};

#[derive(Debug, Clone)]
pub struct Output {
    pub value: Value,
    pub code: i32,
}

impl Output {
    fn gated(value: Value, pass: bool) -> Self {
        Self { value, code: if pass { 0 } else { EXIT_INTERNAL } }
    }
}

fn checks_json(checks: &[Check]) -> Value {
    Value::from(checks.iter().map(Check::to_json).collect::<Vec<_>>())
}

pub fn index(cfg: &BrauerConfig) -> CliResult<Output> {
    let r = IndexReport::compute(cfg)?;
    Ok(Output::gated(r.to_json(), r.all_pass()))
}

/// η for b in T(X), with its properties re-checked in H² coordinates.
pub fn construct_eta(cfg: &BrauerConfig) -> CliResult<Output> {
    let t = cfg.transcendental();
    let coords = t
        .coords_of(cfg.b())
        .and_then(|c| integral_vec(&c))
        .ok_or_else(|| Failure::internal("b is not an integral vector of T(X)"))?;
    let w = eta_finder(&t.as_lattice(), &coords)?;
    let h2 = cfg.h2();
    let eta = t.to_ambient(&w.eta);
    let q_eta = h2.square(&eta)?;
    let qb = cfg.q_b();
    let disc = t.discriminant();
    let bound = BigInt::from(8) * &qb * &qb * &disc * &disc;
    let checks = vec![
        Check::claim("q(eta) = 8 d^2", q_eta.clone(), q_eta == BigInt::from(8) * &w.d * &w.d),
        Check::claim("q(eta) > 0", q_eta.clone(), q_eta.is_positive()),
        Check::divides("q(eta) | 8 q(b)^2 disc(T)^2", q_eta.clone(), bound),
        Check::divides("q(eta, b) = 0", BigInt::from(0), h2.pair(&eta, cfg.b())?),
        Check::divides("d | q(b) disc(T)", w.d.clone(), &qb * &disc),
    ];
    let pass = checks.iter().all(|c| c.verdict);
    Ok(Output::gated(
        json!({
            "all_pass": pass,
            "b": vec_to_value(cfg.b()),
            "checks": checks_json(&checks),
            "disc_t": big_to_value(&disc),
            "eta": vec_to_value(&eta),
            "q_b": big_to_value(&qb),
            "witness_in_t": w.to_json(),
        }),
        pass,
    ))
}

#[derive(Debug, Clone, Copy)]
pub struct PrimeFlags {
    pub p: u64,
    pub m: u32,
    pub nu: u64,
    pub epsilon: Option<u8>,
}

/// h is the first row of `ns_basis`.
pub fn bprime_request(cfg: &BrauerConfig, flags: PrimeFlags) -> CliResult<BPrimeRequest> {
    let h = cfg
        .ns()
        .basis()
        .first()
        .cloned()
        .ok_or_else(|| Failure::precondition("construct bprime needs h as the first row of ns_basis"))?;
    Ok(BPrimeRequest {
        h2: cfg.h2().clone(),
        h,
        b: cfg.b().to_vec(),
        p: flags.p,
        m: flags.m,
        nu: flags.nu,
        epsilon: flags.epsilon,
    })
}

pub fn construct_bprime(cfg: &BrauerConfig, flags: PrimeFlags) -> CliResult<Output> {
    let cert = b_prime(&bprime_request(cfg, flags)?)?;
    Ok(Output::gated(cert.to_json(), cert.all_pass()))
}

/// Conditions for an explicit e = q(b′), or for the b′ built from a config,
/// in which case the shift j is also reported.
pub fn check_ogrady(cfg: Option<&BrauerConfig>, flags: PrimeFlags, n: u32, e: Option<BigInt>) -> CliResult<Output> {
    let mut out = serde_json::Map::new();
    let params = match (cfg, e) {
        (Some(cfg), None) => {
            let req = bprime_request(cfg, flags)?;
            let cert = b_prime(&req)?;
            let e = req.h2.square(&cert.b_prime)?;
            let params = OGradyParams { qh: Some(req.h2.square(&req.h)?), ..OGradyParams::new(flags.p, cert.m, n, e) };
            let adj = if cert.l.is_multiple_of(&BigInt::from(flags.p)) {
                json!({"j": null, "residue": null, "skipped": "p divides l"})
            } else {
                ogrady_adjust(&params, &req.h2, &req.h, &cert.b_prime, &cert.l)?.to_json()
            };
            out.insert("adjustment".into(), adj);
            out.insert("certificate".into(), cert.to_json());
            params
        }
        (None, Some(e)) => OGradyParams::new(flags.p, flags.m, n, e),
        (Some(_), Some(_)) => return Err(Failure::malformed("give either --config or --e, not both")),
        (None, None) => return Err(Failure::malformed("check ogrady needs --config or --e")),
    };
    let report = ogrady_check(&params);
    out.insert("conditions".into(), report.to_json());
    out.insert("invariants".into(), invariants_to_json(&ogrady_invariants(params.p, params.m, params.n)?));
    out.insert(
        "params".into(),
        json!({"e": big_to_value(&params.e), "m": params.m, "n": params.n, "p": params.p}),
    );
    Ok(Output { value: Value::Object(out), code: 0 })
}

#[derive(Debug, Clone)]
pub struct DjpFlags {
    pub dim: u32,
    pub variant: Variant,
    pub r: u64,
    pub ell: u64,
    pub qb: BigInt,
    pub c_f: BigRational,
}

pub fn check_djp(flags: &DjpFlags) -> CliResult<Output> {
    let inst = DJPInstance::new(flags.dim, flags.r, flags.ell, flags.qb.clone(), flags.c_f.clone())?;
    let records = djp_conditions(flags.variant, &inst)?;
    let solution = djp_solve(&inst)?;
    let at_solution: Vec<Value> = match solution.lambda1() {
        Some(l) => records.iter().map(|r| json!({"i": r.i, "holds": r.holds_at(l)})).collect(),
        None => Vec::new(),
    };
    Ok(Output {
        value: json!({
            "instance": inst.to_json(),
            "records": records.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "records_at_solution": at_solution,
            "solution": solution.to_json(),
            "variant": flags.variant.to_string(),
        }),
        code: 0,
    })
}

pub fn verify_identities(cfg: &BrauerConfig) -> CliResult<Output> {
    let checks = verify_config(cfg)?;
    let pass = checks.iter().all(|c| c.verdict);
    Ok(Output::gated(
        json!({"all_pass": pass, "checks": checks_json(&checks), "n": cfg.n()}),
        pass,
    ))
}

pub fn report_split(factors: &[(u64, u32)], n: u32, qb: Option<&BigInt>) -> CliResult<Output> {
    if factors.is_empty() {
        return Err(Failure::malformed("report split needs --factors or --p"));
    }
    let report = prime_split_bound(factors, n, qb)?;
    let invariants: Vec<Value> = factors
        .iter()
        .map(|&(p, m)| {
            ogrady_invariants(p, m, n).map(|inv| {
                let mut v = invariants_to_json(&inv);
                v["p"] = json!(p);
                v["m"] = json!(m);
                v
            })
        })
        .collect::<mlk_core::Result<_>>()?;
    let mut v = report.to_json();
    v["invariants"] = Value::from(invariants);
    Ok(Output { value: v, code: 0 })
}

/// Index reports for every `*.json` config in a directory, sorted by name.
pub fn index_dir(dir: &Path) -> CliResult<Vec<(String, CliResult<Output>)>> {
    let mut names: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Failure::malformed(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json") && !p.to_string_lossy().ends_with(".expected.json"))
        .collect();
    names.sort();
    Ok(names
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            (name, crate::input::load_config(&p, None).and_then(|c| index(&c)))
        })
        .collect())
}
