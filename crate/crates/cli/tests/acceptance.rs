//! One PASS/FAIL line per acceptance criterion. Criteria 1-3 are also
//! cross-checked against the reference period computed by the independent
//! Smith-form oracle.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use mlk_cli::suite::{self, Outcome, CRITERIA};
use mlk_core::mukai::{is_nonspecial, BrauerConfig};
use num_bigint::BigInt;

fn oracle_period(cfg: &BrauerConfig) -> u64 {
    oracle::period(cfg.ns().basis(), cfg.b(), cfg.ell(), cfg.h2().rank())
}

/// Extra failures found by the oracle for criteria 1-3.
fn cross_check(id: u8) -> Vec<String> {
    let mut out = Vec::new();
    match id {
        1 | 2 => {
            for cfg in suite::mukai_sample() {
                let per = oracle_period(&cfg);
                if per != mlk_core::mukai::period(&cfg) {
                    out.push(format!("oracle period {per} differs on {}", cfg.to_json()));
                }
                let nonspecial = num_integer::Integer::gcd(&BigInt::from(cfg.ell()), &cfg.q_b()) == BigInt::from(1);
                if nonspecial != is_nonspecial(&cfg) || (nonspecial && per != cfg.ell()) {
                    out.push(format!("non-special flag or period wrong on {}", cfg.to_json()));
                }
            }
            let special = suite::fixture("special");
            if id == 2 && oracle_period(&special) != 1 {
                out.push("oracle period of the special fixture is not 1".into());
            }
        }
        3 => {
            for cfg in suite::coprime_sample() {
                if oracle_period(&cfg) != cfg.ell() {
                    out.push(format!("coprime sample with per != ell: {}", cfg.to_json()));
                }
            }
        }
        _ => {}
    }
    out
}

fn main() {
    let mut outcomes: Vec<Outcome> = Vec::new();
    for c in &CRITERIA {
        let mut o = suite::run_one(c);
        o.failures.extend(cross_check(c.0));
        println!("{}", o.line());
        outcomes.push(o);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.pass()).map(|o| o.id).collect();
    println!("acceptance: {} of {} criteria pass", outcomes.len() - failed.len(), outcomes.len());
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
