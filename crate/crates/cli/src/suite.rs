//! The acceptance criteria as runnable checks. Samples are seeded, so every
//! run sees the same instances; reference values come from brute force
//! written here against the raw Gram matrices.

use std::time::Instant;

use mlk_core::constructions::ogrady::Adjustment;
use mlk_core::constructions::{
    b_prime, eta_finder, hensel_quadratic, ogrady_adjust, ogrady_check, ogrady_invariants, prime_split_bound, Branch,
};
use mlk_core::identities::{defining_check, splitting_check, w_checks, w_for_config};
use mlk_core::lattice::IntLattice;
use mlk_core::mukai::{hodge_classes_mukai, is_nonspecial, mukai, BrauerConfig};
use mlk_core::obstructions::{djp_dim4_solve, djp_dim6_solve, DJPInstance};
use mlk_core::report::{index_batch, mukai_batch};
use mlk_core::sample::Sampler;
use mlk_core::sym::{ind_sym, qt_in_mukai, SymLattice, SymVector};
use mlk_core::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

/// Shipped configs: (name, config, expected report subset).
pub const FIXTURES: &[(&str, &str, &str)] = &[
    ("coprime_rank6", include_str!("../fixtures/coprime_rank6.json"), include_str!("../fixtures/coprime_rank6.expected.json")),
    ("k3n2", include_str!("../fixtures/k3n2.json"), include_str!("../fixtures/k3n2.expected.json")),
    ("mixed_period", include_str!("../fixtures/mixed_period.json"), include_str!("../fixtures/mixed_period.expected.json")),
    ("special", include_str!("../fixtures/special.json"), include_str!("../fixtures/special.expected.json")),
    ("toy_a", include_str!("../fixtures/toy_a.json"), include_str!("../fixtures/toy_a.expected.json")),
    ("untwisted", include_str!("../fixtures/untwisted.json"), include_str!("../fixtures/untwisted.expected.json")),
];

pub fn fixture(name: &str) -> BrauerConfig {
    let (_, cfg, _) = FIXTURES.iter().find(|(n, _, _)| *n == name).expect("known fixture");
    BrauerConfig::from_json(&serde_json::from_str(cfg).expect("fixture json")).expect("valid fixture")
}

pub fn expected(name: &str) -> Value {
    let (_, _, exp) = FIXTURES.iter().find(|(n, _, _)| *n == name).expect("known fixture");
    serde_json::from_str(exp).expect("expected json")
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
    pub millis: u128,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }

    pub fn line(&self) -> String {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        let mut s = format!("[{status}] {:>2}. {} ({} checks, {} ms)", self.id, self.title, self.checked, self.millis);
        if let Some(f) = self.failures.first() {
            s.push_str(&format!(": {f}"));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checked": self.checked,
            "failures": self.failures,
            "id": self.id,
            "millis": self.millis as u64,
            "pass": self.pass(),
            "title": self.title,
        })
    }
}

/// Counts checks and collects failure messages.
#[derive(Default)]
pub struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn error(&mut self, what: &str, e: impl std::fmt::Display) {
        self.checked += 1;
        self.failures.push(format!("{what}: {e}"));
    }
}

pub type Criterion = (u8, &'static str, fn() -> Tally);

pub const CRITERIA: [Criterion; 10] = [
    (1, "Mukai index equals the period on 200 random configs", c1_mukai_index),
    (2, "non-special classes have period ell; special fixture has period 1 < ell = 3", c2_nonspecial),
    (3, "ind_sym = ell^n under the coprimality hypotheses and ind_sym | ell^n always", c3_sym_index),
    (4, "defining property and splitting formula of q^(n) for n = 2, 3", c4_pairing),
    (5, "pairing identities of w on 30 (b, eta) pairs", c5_w),
    (6, "eta has q(eta) = 8d^2 dividing 8 q(b)^2 disc(T)^2 on 50 pairs", c6_eta),
    (7, "b' certificates on 20 K3n(n) requests, re-verified", c7_bprime),
    (8, "O'Grady raw/reduced agreement, shift congruence and Hensel lifting", c8_ogrady),
    (9, "dim 4 and 6 solvers agree with exhaustive residue search on 500 instances", c9_djp),
    (10, "O'Grady invariants and the prime-split bound", c10_split),
];

pub fn run_one(c: &Criterion) -> Outcome {
    let start = Instant::now();
    let t = (c.2)();
    Outcome { id: c.0, title: c.1, checked: t.checked, failures: t.failures, millis: start.elapsed().as_millis() }
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(run_one).collect()
}

pub fn suite_json(outcomes: &[Outcome]) -> Value {
    json!({
        "all_pass": outcomes.iter().all(Outcome::pass),
        "criteria": outcomes.iter().map(Outcome::to_json).collect::<Vec<_>>(),
    })
}

/// The shared random sample for criteria 1 and 2.
pub fn mukai_sample() -> Vec<BrauerConfig> {
    let mut s = Sampler::new(0x5eed_0001);
    (0..200).map(|_| s.config(12, (2, 97), 1)).collect()
}

/// Coprime sample for criterion 3: 30 at n = 2, then 5 at n = 3 with Mukai
/// rank 8.
pub fn coprime_sample() -> Vec<BrauerConfig> {
    let mut s = Sampler::new(0x5eed_0003);
    let mut out: Vec<_> = (0..30).map(|i| s.coprime_config(6 + i % 3, i % 3, 2)).collect();
    out.extend((0..5).map(|_| s.coprime_config(6, 0, 3)));
    out
}

fn c1_mukai_index() -> Tally {
    let mut t = Tally::default();
    let sample = mukai_sample();
    for (cfg, r) in sample.iter().zip(mukai_batch(&sample)) {
        match r {
            Ok((per, ind)) => t.check(per == ind, || format!("per {per} != ind {ind} on {}", cfg.to_json())),
            Err(e) => t.error("ind_mukai", e),
        }
    }
    t
}

fn c2_nonspecial() -> Tally {
    let mut t = Tally::default();
    let sample = mukai_sample();
    for (cfg, r) in sample.iter().zip(mukai_batch(&sample)) {
        match r {
            Ok((per, _)) if is_nonspecial(cfg) => {
                t.check(per == cfg.ell(), || format!("non-special with per {per} != ell {}", cfg.ell()))
            }
            Ok(_) => {}
            Err(e) => t.error("period", e),
        }
    }
    let special = fixture("special");
    let per = mlk_core::mukai::period(&special);
    t.check(!is_nonspecial(&special) && special.ell() == 3 && per == 1, || {
        format!("special fixture: ell {} per {per}", special.ell())
    });
    t
}

fn c3_sym_index() -> Tally {
    let mut t = Tally::default();
    for cfg in coprime_sample() {
        let ell_n = num_traits::pow(BigInt::from(cfg.ell()), cfg.n() as usize);
        match ind_sym(&cfg) {
            Ok(ind) => t.check(ind == ell_n, || format!("ind_sym {ind} != ell^n {ell_n}")),
            Err(e) => t.error("ind_sym", e),
        }
    }
    let mut s = Sampler::new(0x5eed_0033);
    let mut all: Vec<BrauerConfig> = (0..40).map(|i| s.config(8, (1, 40), 1 + i % 3)).collect();
    all.extend(FIXTURES.iter().map(|(name, _, _)| fixture(name)));
    for (cfg, r) in all.iter().zip(index_batch(&all)) {
        let ell_n = num_traits::pow(BigInt::from(cfg.ell()), cfg.n() as usize);
        match r {
            Ok(r) => t.check(ell_n.is_multiple_of(&r.ind_sym), || format!("ind_sym {} does not divide {ell_n}", r.ind_sym)),
            Err(e) => t.error("index report", e),
        }
    }
    t
}

fn unit_basis(rank: usize) -> Vec<Vec<BigInt>> {
    (0..rank).map(|i| (0..rank).map(|j| BigInt::from((i == j) as u8)).collect()).collect()
}

fn c4_pairing() -> Tally {
    let mut t = Tally::default();
    let mut s = Sampler::new(0x5eed_0004);
    for n in [2u32, 3] {
        for k in 0..100u32 {
            let rank = 4 + (k as usize % 3);
            let l = std::sync::Arc::new(s.h2(rank));
            let sym = match SymLattice::new(l, n) {
                Ok(sym) => sym,
                Err(e) => return fail(t, e),
            };
            let (a, b, gamma) = (s.vector(rank, 4), s.vector(rank, 4), s.vector(rank, 3));
            let split = k % (n + 1);
            let basis = unit_basis(rank);
            let u = s.sym_vector(&basis, split, 2);
            let v = s.sym_vector(&basis, n - split, 2);
            for c in [defining_check(&sym, &a, &b), splitting_check(&sym, &gamma, split, &u, &v)] {
                match c {
                    Ok(c) => t.check(c.verdict, || c.condition.clone()),
                    Err(e) => t.error("pairing", e),
                }
            }
        }
    }
    t
}

fn fail(mut t: Tally, e: impl std::fmt::Display) -> Tally {
    t.error("setup", e);
    t
}

fn c5_w() -> Tally {
    let mut t = Tally::default();
    let mut s = Sampler::new(0x5eed_0005);
    for k in 0..30 {
        let n = 2 + (k % 2) as u32;
        let cfg = s.coprime_config(6 + k % 2, k % 2, n);
        let run = || -> mlk_core::Result<Vec<mlk_core::constructions::Check>> {
            let data = w_for_config(&cfg, n)?;
            let mk = mukai(&cfg);
            let sym = SymLattice::new(mk.lattice.clone(), n)?;
            let qt = qt_in_mukai(&cfg)?;
            let nb = hodge_classes_mukai(&cfg).basis().clone();
            let mut us: Vec<SymVector> = Vec::new();
            let mut local = Sampler::new(k as u64);
            for _ in 0..10 {
                us.push(local.sym_vector(&nb, n, 2));
            }
            let mut d = n as i64 - 2;
            while d >= 0 {
                us.push(local.sym_vector(&nb, d as u32, 2));
                d -= 2;
            }
            w_checks(&sym, &data, &qt, &us)
        };
        match run() {
            Ok(checks) => {
                for c in checks {
                    t.check(c.verdict, || c.condition.clone());
                }
            }
            Err(e) => t.error("w", e),
        }
    }
    t
}

fn c6_eta() -> Tally {
    let mut t = Tally::default();
    let mut s = Sampler::new(0x5eed_0006);
    for _ in 0..50 {
        let (lat, b) = s.t_and_b();
        match eta_finder(&lat, &b) {
            Ok(w) => {
                let q = gram_pair(&lat, &w.eta, &w.eta);
                let qb = gram_pair(&lat, &b, &b);
                let disc = lat.discriminant();
                let ok = q == BigInt::from(8) * &w.d * &w.d
                    && q.is_positive()
                    && (BigInt::from(8) * &qb * &qb * &disc * &disc).is_multiple_of(&q)
                    && gram_pair(&lat, &w.eta, &b).is_zero();
                t.check(ok, || format!("eta {:?} with q {q}", w.eta));
            }
            Err(e) => t.error("eta_finder", e),
        }
    }
    t
}

/// vᵀ G w straight from the Gram matrix.
fn gram_pair(l: &IntLattice, v: &[BigInt], w: &[BigInt]) -> BigInt {
    let g = l.gram();
    let mut s = BigInt::zero();
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in w.iter().enumerate() {
            s += x * &g[i][j] * y;
        }
    }
    s
}

fn c7_bprime() -> Tally {
    let mut t = Tally::default();
    let mut s = Sampler::new(0x5eed_0007);
    for k in 0..20 {
        let n = [2u64, 3, 4][k % 3];
        let p = [5u64, 7, 11, 13][k % 4];
        let req = s.bprime_request(n, p);
        let cert = match b_prime(&req) {
            Ok(c) => c,
            Err(e) => {
                t.error("b_prime", e);
                continue;
            }
        };
        let h2 = &req.h2;
        let bp = &cert.b_prime;
        let check = || -> mlk_core::Result<bool> {
            let primitive = mlk_core::arith::content(bp).is_one();
            let div = h2.divisibility(bp)? == BigInt::from(cert.epsilon).gcd(&h2.divisibility(&req.h)?);
            let q = h2.square(bp)?;
            let cong = (&q - BigInt::from(req.nu) * h2.square(&req.b)?).is_multiple_of(&BigInt::from(p));
            Ok(primitive && div && q.is_positive() && cong)
        };
        match check() {
            Ok(ok) => t.check(ok, || format!("b' = {bp:?} fails (i)-(iii) for p = {p}")),
            Err(e) => t.error("re-verification", e),
        }
    }
    t
}

fn c8_ogrady() -> Tally {
    let mut t = Tally::default();
    let mut s = Sampler::new(0x5eed_0008);
    for _ in 0..200 {
        let params = s.ogrady_params();
        let r = ogrady_check(&params);
        let agree = r.raw[2].verdict == r.reduced[2].verdict
            && r.raw[3].verdict == (r.reduced[3].verdict && r.reduced[2].verdict)
            && r.raw[..2].iter().all(|c| c.verdict);
        t.check(agree, || format!("raw/reduced disagree for {params:?}"));
    }
    let mut adjusted = 0;
    for k in 0..24 {
        let n = [2u32, 3, 4][k % 3];
        let req = s.bprime_request(n as u64, [5, 7, 11, 13][k % 4]);
        let Ok(cert) = b_prime(&req) else { continue };
        if cert.l.is_multiple_of(&BigInt::from(req.p)) {
            continue;
        }
        let e = gram_pair(&req.h2, &cert.b_prime, &cert.b_prime);
        let params = mlk_core::constructions::OGradyParams::new(req.p, cert.m, n, e);
        match ogrady_adjust(&params, &req.h2, &req.h, &cert.b_prime, &cert.l) {
            Ok(Adjustment::Shift { j, .. }) => {
                let v: Vec<BigInt> = cert.b_prime.iter().zip(&req.h).map(|(x, y)| x + &j * y).collect();
                let lhs = BigInt::from(2) * gram_pair(&req.h2, &v, &v) + BigInt::from(n + 3);
                t.check(lhs.is_multiple_of(&params.r0()), || format!("shift j = {j} fails"));
                adjusted += 1;
            }
            Ok(Adjustment::NoAdjustment) => {}
            Err(e) => t.error("ogrady_adjust", e),
        }
    }
    t.check(adjusted > 0, || "no shift was produced".into());
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
        let mut pm = p;
        let mut m = 1;
        while pm <= 10_000 {
            for (a2, a1, a0) in [(1i64, 0, -2), (3, 1, -4), (2, 4, 7), (1, -2, 1), (5, 3, -11), (2, 0, 1)] {
                if a2 % p as i64 == 0 {
                    continue;
                }
                let roots = brute_roots(a2, a1, a0, pm);
                let simple: Vec<u64> =
                    brute_roots(a2, a1, a0, p).into_iter().filter(|&x| (2 * a2 * x as i64 + a1).rem_euclid(p as i64) != 0).collect();
                match hensel_quadratic(&a2.into(), &a1.into(), &a0.into(), p, m) {
                    Ok(x) => {
                        let x = u64::try_from(x).unwrap_or(u64::MAX);
                        t.check(roots.contains(&x) && simple.first() == Some(&(x % p)), || {
                            format!("hensel root {x} mod {pm} for ({a2},{a1},{a0})")
                        });
                    }
                    Err(Error::NoRoot { .. }) => t.check(simple.is_empty(), || format!("missed root mod {pm}")),
                    Err(e) => t.error("hensel", e),
                }
            }
            pm *= p;
            m += 1;
        }
    }
    t
}

fn brute_roots(a2: i64, a1: i64, a0: i64, modulus: u64) -> Vec<u64> {
    let md = modulus as i128;
    (0..modulus)
        .filter(|&x| {
            let x = x as i128;
            (a2 as i128 * x * x + a1 as i128 * x + a0 as i128).rem_euclid(md) == 0
        })
        .collect()
}

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn ratio(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// Smallest admissible λ₁ by scanning one full period of residues.
pub fn exhaustive_lambda(inst: &DJPInstance) -> Option<BigRational> {
    let ell = ratio(BigInt::from(inst.ell));
    let den = u64::try_from(inst.c_f.denom().clone()).ok()?;
    let r = inst.r;
    if inst.dim == 4 {
        (0..inst.ell * den).map(|l| ratio(BigInt::from(l))).find(|l| {
            ((&inst.c_f * ratio(binom(r, 3) * &inst.qb) + l * ratio(BigInt::from(r - 2))) / &ell).is_integer()
        })
    } else {
        let step = &ell / ratio(BigInt::from(r - 2));
        (0..2 * inst.ell * den).map(|t| &step * ratio(BigInt::from(t))).find(|l| {
            ((&ell * &inst.c_f * ratio(binom(r, 4) * &inst.qb) + l * ratio(binom(r - 2, 2))) / (&ell * &ell))
                .is_integer()
        })
    }
}

fn c9_djp() -> Tally {
    let mut t = Tally::default();
    let mut s = Sampler::new(0x5eed_0009);
    for k in 0..500 {
        let dim = if k % 2 == 0 { 4 } else { 6 };
        let inst = s.djp_instance(dim, 200);
        let solved = if dim == 4 { djp_dim4_solve(&inst) } else { djp_dim6_solve(&inst) };
        match solved {
            Ok(sol) => {
                let brute = exhaustive_lambda(&inst);
                t.check(sol.lambda1() == brute.as_ref(), || format!("{inst:?}: solver {:?}, search {brute:?}", sol.lambda1()));
            }
            Err(e) => t.error("djp solver", e),
        }
    }
    t
}

fn c10_split() -> Tally {
    let mut t = Tally::default();
    match ogrady_invariants(5, 1, 2) {
        Ok(inv) => t.check(inv == (BigInt::from(25), BigInt::from(5), ratio(BigInt::from(50))), || format!("{inv:?}")),
        Err(e) => t.error("invariants", e),
    }
    type Case = (&'static [(u64, u32)], u32, i64);
    let cases: [Case; 5] = [
        (&[(2, 1), (3, 1)], 2, 35),
        (&[(2, 2), (3, 1)], 2, 35),
        (&[(5, 1), (7, 2)], 3, 10),
        (&[(3, 1), (11, 1)], 4, 33),
        (&[(13, 3)], 2, 169),
    ];
    for (factors, n, qb) in cases {
        let qb = BigInt::from(qb);
        match prime_split_bound(factors, n, Some(&qb)) {
            Ok(r) => {
                let expected: BigInt =
                    factors.iter().map(|&(p, m)| num_traits::pow(BigInt::from(p), (m * n) as usize)).product();
                let branches_ok = r.factors.iter().all(|f| {
                    let special = qb.is_multiple_of(&BigInt::from(f.p));
                    f.branch
                        == match (special, f.m) {
                            (false, _) => Branch::NonSpecialPrimePower,
                            (true, 1) => Branch::SpecialPrime,
                            (true, _) => Branch::Uncovered,
                        }
                });
                t.check(r.bound == expected && branches_ok, || format!("split {factors:?}: {}", r.bound));
            }
            Err(e) => t.error("prime_split_bound", e),
        }
    }
    t
}

/// Checks the shipped fixtures' index reports against their expected
/// values.
pub fn fixture_outcomes() -> Vec<(String, bool, String)> {
    FIXTURES
        .iter()
        .map(|(name, _, _)| {
            let cfg = fixture(name);
            let exp = expected(name);
            match crate::commands::index(&cfg) {
                Ok(out) => {
                    let keys = exp.as_object().expect("object").keys();
                    let bad: Vec<String> =
                        keys.filter(|k| out.value[k.as_str()] != exp[k.as_str()]).cloned().collect();
                    let ok = bad.is_empty() && out.code == 0;
                    (name.to_string(), ok, if ok { String::new() } else { format!("mismatched {bad:?}") })
                }
                Err(e) => (name.to_string(), false, e.message),
            }
        })
        .collect()
}
