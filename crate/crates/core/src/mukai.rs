//! The Mukai lattice H² ⊕ U of a B-field configuration and its twisted Hodge
//! classes.
//!
//! A vector (r, a, s) = r·e + a + s·f is a Hodge class of the twist by
//! B = b/ℓ iff it is orthogonal to (0, σ, −q(σ, B)) for a generic σ ∈ T(X)_C,
//! that is iff a + r·B ∈ NS(X)_Q.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::arith::{content, divisors, int};
use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{standard_lattice, IntLattice, LatticeKind, Sublattice};
use crate::linalg::{self, IntMatrix};

/// Input datum: lattice H², saturated NS ⊂ H², b ∈ T = NS^⊥ and B = b/ℓ.
#[derive(Debug, Clone)]
pub struct BrauerConfig {
    h2: Arc<IntLattice>,
    ns: Sublattice,
    transcendental: Sublattice,
    /// Basis of {c : c·s = 0 for s ∈ NS} (plain dot product).
    annihilator: IntMatrix,
    b: Vec<BigInt>,
    ell: u64,
    n: u32,
    twist: OnceLock<Arc<Twist>>,
}

impl BrauerConfig {
    /// Validates and normalizes the datum; (b, ℓ) is divided by
    /// gcd(content(b), ℓ).
    pub fn new(h2: IntLattice, ns_rows: IntMatrix, b: Vec<BigInt>, ell: u64, n: u32) -> Result<Self> {
        let rank = h2.rank();
        if b.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, got: b.len() });
        }
        if ell == 0 {
            return Err(Error::InvalidConfig("ell must be positive".into()));
        }
        if n == 0 {
            return Err(Error::InvalidConfig("n must be positive".into()));
        }
        if !h2.is_nondegenerate() {
            return Err(Error::InvalidConfig("h2 is degenerate".into()));
        }
        let h2 = Arc::new(h2);
        let ns = Sublattice::new(h2.clone(), ns_rows)?;
        let ns_sat = ns.saturation();
        if !ns.same_span(&ns_sat) {
            return Err(Error::InvalidConfig("ns_basis is not saturated".into()));
        }
        let c = content(&b);
        if c.is_zero() {
            return Err(Error::InvalidConfig("b is zero".into()));
        }
        for row in ns_sat.basis() {
            if !h2.pair_unchecked(row, &b).is_zero() {
                return Err(Error::InvalidConfig("b is not orthogonal to ns_basis".into()));
            }
        }
        let g = c.gcd(&BigInt::from(ell));
        let b: Vec<BigInt> = b.iter().map(|x| x / &g).collect();
        let ell = ell / crate::arith::to_u64(&g).expect("gcd divides ell");
        if !content(&b).is_one() {
            return Err(Error::InvalidConfig("b is not primitive after dividing out gcd(content(b), ell)".into()));
        }
        let transcendental = ns_sat.orthogonal_complement();
        if transcendental.rank() < 3 {
            return Err(Error::InvalidConfig(format!(
                "transcendental lattice has rank {}, need at least 3",
                transcendental.rank()
            )));
        }
        let annihilator = if ns_sat.rank() == 0 {
            (0..rank).map(|i| h2.basis_vector(i)).collect()
        } else {
            linalg::integer_kernel(ns_sat.basis(), rank)
        };
        Ok(Self { h2, ns: ns_sat, transcendental, annihilator, b, ell, n, twist: OnceLock::new() })
    }

    pub fn h2(&self) -> &Arc<IntLattice> {
        &self.h2
    }

    pub fn ns(&self) -> &Sublattice {
        &self.ns
    }

    /// T(X) = NS^⊥ in H².
    pub fn transcendental(&self) -> &Sublattice {
        &self.transcendental
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q_b(&self) -> BigInt {
        self.h2.square_unchecked(&self.b)
    }

    pub fn with_n(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("n must be positive".into()));
        }
        let mut out = self.clone();
        out.n = n;
        Ok(out)
    }

    fn twist(&self) -> &Arc<Twist> {
        self.twist.get_or_init(|| Arc::new(Twist::compute(self)))
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("b".into(), json::vec_to_value(&self.b));
        m.insert("ell".into(), Value::from(self.ell));
        m.insert("h2".into(), serde_json::to_value(&*self.h2).expect("lattice serializes"));
        m.insert("n".into(), Value::from(self.n));
        m.insert("ns_basis".into(), json::matrix_to_value(self.ns.basis()));
        Value::Object(m)
    }

    /// Parses the shared config schema; `h2` may also be a lattice name such
    /// as `"K3n(2)"`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: String| Error::InvalidConfig(msg);
        let obj = v.as_object().ok_or_else(|| bad("config must be a JSON object".into()))?;
        let field = |k: &str| obj.get(k).ok_or_else(|| bad(format!("missing field `{k}`")));
        let h2 = match field("h2")? {
            Value::String(s) => standard_lattice(&s.parse::<LatticeKind>()?)?,
            other => serde_json::from_value::<IntLattice>(other.clone()).map_err(|e| bad(e.to_string()))?,
        };
        let ns_basis = match obj.get("ns_basis") {
            None | Some(Value::Null) => Vec::new(),
            Some(m) => json::value_to_matrix(m).map_err(bad)?,
        };
        let b = json::value_to_vec(field("b")?).map_err(bad)?;
        let ell = field("ell")?.as_u64().ok_or_else(|| bad("ell must be a positive integer".into()))?;
        let n = match obj.get("n") {
            None => 1,
            Some(x) => x
                .as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| bad("n must be a positive integer".into()))?,
        };
        Self::new(h2, ns_basis, b, ell, n)
    }
}

impl Serialize for BrauerConfig {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BrauerConfig {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::from_json(&Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// H² ⊕ U with basis order (H² basis, e, f).
#[derive(Debug, Clone)]
pub struct MukaiLattice {
    pub base: Arc<IntLattice>,
    pub lattice: Arc<IntLattice>,
    pub e_index: usize,
    pub f_index: usize,
}

impl MukaiLattice {
    pub fn new(base: Arc<IntLattice>) -> Self {
        let u = standard_lattice(&LatticeKind::U).expect("U");
        let lattice = Arc::new(base.direct_sum(&u));
        let e_index = base.rank();
        Self { base, lattice, e_index, f_index: e_index + 1 }
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// The vector r·e + a + s·f.
    pub fn vector(&self, r: &BigInt, a: &[BigInt], s: &BigInt) -> Vec<BigInt> {
        let mut v = a.to_vec();
        v.push(r.clone());
        v.push(s.clone());
        v
    }

    pub fn e(&self) -> Vec<BigInt> {
        self.lattice.basis_vector(self.e_index)
    }

    pub fn f(&self) -> Vec<BigInt> {
        self.lattice.basis_vector(self.f_index)
    }

    /// rk(v) = −q(v, f).
    pub fn rk(&self, v: &[BigInt]) -> BigInt {
        -self.lattice.pair_unchecked(v, &self.f())
    }

    pub fn h2_part<'a>(&self, v: &'a [BigInt]) -> &'a [BigInt] {
        &v[..self.e_index]
    }
}

#[derive(Debug)]
struct Twist {
    mukai: MukaiLattice,
    hodge: Sublattice,
    transcendental: Sublattice,
}

impl Twist {
    fn compute(cfg: &BrauerConfig) -> Self {
        let mukai = MukaiLattice::new(cfg.h2.clone());
        let rank = mukai.rank();
        let ell = int(cfg.ell as i64);
        // a + r·b/ℓ ∈ NS_Q  ⇔  ℓ·(a·c) + r·(b·c) = 0 for every annihilator c
        let rows: IntMatrix = cfg
            .annihilator
            .iter()
            .map(|c| {
                let mut row: Vec<BigInt> = c.iter().map(|x| x * &ell).collect();
                row.push(linalg::dot(&cfg.b, c));
                row.push(BigInt::zero());
                row
            })
            .collect();
        let basis = linalg::integer_kernel(&rows, rank);
        let hodge = Sublattice::certified(mukai.lattice.clone(), basis);
        let transcendental = hodge.orthogonal_complement();
        Self { mukai, hodge, transcendental }
    }
}

pub fn mukai(cfg: &BrauerConfig) -> MukaiLattice {
    cfg.twist().mukai.clone()
}

/// Smallest m | ℓ with m·b/ℓ ∈ NS_Q + H²(Z).
pub fn period(cfg: &BrauerConfig) -> u64 {
    let ell = BigInt::from(cfg.ell);
    let pairings: Vec<BigInt> = cfg.annihilator.iter().map(|c| linalg::dot(&cfg.b, c)).collect();
    // x ∈ NS_Q + Z^r iff x·c ∈ Z for every c in the (saturated) annihilator
    divisors(cfg.ell)
        .into_iter()
        .find(|&m| {
            let m = BigInt::from(m);
            pairings.iter().all(|p| (&m * p).is_multiple_of(&ell))
        })
        .expect("m = ell always qualifies")
}

pub fn is_nonspecial(cfg: &BrauerConfig) -> bool {
    cfg.q_b().gcd(&BigInt::from(cfg.ell)).is_one()
}

/// N(X,B): integral Hodge classes of the twisted Mukai lattice.
pub fn hodge_classes_mukai(cfg: &BrauerConfig) -> Sublattice {
    cfg.twist().hodge.clone()
}

/// T(X,B) = N(X,B)^⊥.
pub fn transcendental_twist(cfg: &BrauerConfig) -> Sublattice {
    cfg.twist().transcendental.clone()
}

/// gcd of rk over N(X,B); fails hard if it differs from the period.
pub fn ind_mukai(cfg: &BrauerConfig) -> Result<u64> {
    let tw = cfg.twist();
    let ranks: Vec<BigInt> = tw.hodge.basis().iter().map(|v| tw.mukai.rk(v)).collect();
    let g = content(&ranks);
    let per = period(cfg);
    if g != BigInt::from(per) {
        return Err(Error::ModelViolation(format!("ind_mukai = {g} but period = {per}")));
    }
    Ok(per)
}

/// (per, −a, 0) ∈ N(X,B) with a ≡ (per/ℓ)·b modulo NS_Q.
pub fn e_tilde(cfg: &BrauerConfig) -> Result<Vec<BigInt>> {
    let tw = cfg.twist();
    let per = period(cfg);
    let ell = BigInt::from(cfg.ell);
    let per_big = BigInt::from(per);
    let a = if per == cfg.ell {
        cfg.b.clone()
    } else {
        let y: Vec<BigInt> = cfg
            .annihilator
            .iter()
            .map(|c| &per_big * linalg::dot(&cfg.b, c) / &ell)
            .collect();
        linalg::solve_integer(&cfg.annihilator, &y, cfg.h2.rank())
            .ok_or_else(|| Error::ModelViolation("no integral lift for the period witness".into()))?
    };
    let neg: Vec<BigInt> = a.iter().map(|x| -x).collect();
    let v = tw.mukai.vector(&per_big, &neg, &BigInt::zero());
    if !tw.hodge.contains(&v) {
        return Err(Error::ModelViolation("e_tilde is not a Hodge class".into()));
    }
    Ok(v)
}

/// Sublattice spanned by ẽ, NS and (0,0,1).
pub fn decomposition_lattice(cfg: &BrauerConfig) -> Result<Sublattice> {
    let tw = cfg.twist();
    let mut rows = vec![e_tilde(cfg)?];
    for s in cfg.ns.basis() {
        rows.push(tw.mukai.vector(&BigInt::zero(), s, &BigInt::zero()));
    }
    rows.push(tw.mukai.f());
    Sublattice::new(tw.mukai.lattice.clone(), rows)
}

/// Mukai rank of the configuration; used to keep samples within bounds.
pub fn mukai_rank(cfg: &BrauerConfig) -> usize {
    cfg.h2.rank() + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{imat, ivec};

    /// diag(2) ⊕ U ⊕ U, NS = ⟨g⟩, b = e₁ − f₁, ℓ = 5.
    pub(crate) fn toy_a() -> BrauerConfig {
        let h2 = IntLattice::direct_sum_all(&[
            standard_lattice(&LatticeKind::Diag(vec![2])).unwrap(),
            standard_lattice(&LatticeKind::U).unwrap(),
            standard_lattice(&LatticeKind::U).unwrap(),
        ]);
        BrauerConfig::new(h2, imat(&[&[1, 0, 0, 0, 0]]), ivec(&[0, 1, -1, 0, 0]), 5, 2).unwrap()
    }

    fn special() -> BrauerConfig {
        let h2 = IntLattice::direct_sum_all(&[
            standard_lattice(&LatticeKind::U).unwrap(),
            standard_lattice(&LatticeKind::U).unwrap(),
        ]);
        BrauerConfig::new(h2, imat(&[&[1, 3, 0, 0]]), ivec(&[1, -3, 0, 0]), 3, 1).unwrap()
    }

    #[test]
    fn toy_a_indices() {
        let cfg = toy_a();
        assert_eq!(period(&cfg), 5);
        assert!(is_nonspecial(&cfg));
        assert_eq!(ind_mukai(&cfg).unwrap(), 5);
        assert_eq!(e_tilde(&cfg).unwrap(), ivec(&[0, -1, 1, 0, 0, 5, 0]));
        assert_eq!(transcendental_twist(&cfg).rank(), 4);
        let n = hodge_classes_mukai(&cfg);
        assert_eq!(n.rank(), 3);
        assert!(decomposition_lattice(&cfg).unwrap().same_span(&n));
    }

    #[test]
    fn special_config_has_period_one() {
        let cfg = special();
        assert!(!is_nonspecial(&cfg));
        assert_eq!(period(&cfg), 1);
        assert_eq!(ind_mukai(&cfg).unwrap(), 1);
        let e = e_tilde(&cfg).unwrap();
        assert_eq!(mukai(&cfg).rk(&e), int(1));
    }

    #[test]
    fn untwisted_config() {
        let cfg = {
            let c = toy_a();
            BrauerConfig::new((**c.h2()).clone(), c.ns().basis().clone(), c.b().to_vec(), 1, 1).unwrap()
        };
        assert_eq!(period(&cfg), 1);
        assert_eq!(ind_mukai(&cfg).unwrap(), 1);
        let n = hodge_classes_mukai(&cfg);
        let m = mukai(&cfg);
        // integral B: N = Z(1,−b,0) ⊕ NS ⊕ Z f, the image of Z e ⊕ NS ⊕ Z f under exp(−B)
        assert!(decomposition_lattice(&cfg).unwrap().same_span(&n));
        assert_eq!(e_tilde(&cfg).unwrap(), ivec(&[0, -1, 1, 0, 0, 1, 0]));
        assert!(n.contains(&m.f()));
        let t = transcendental_twist(&cfg);
        for v in t.basis() {
            assert!(m.rk(v).is_zero());
            let corr = -cfg.h2().pair_unchecked(m.h2_part(v), cfg.b());
            assert_eq!(v[m.f_index], corr);
        }
    }

    #[test]
    fn normalization_divides_common_factor() {
        let c = toy_a();
        let b2: Vec<BigInt> = c.b().iter().map(|x| x * 5).collect();
        let cfg = BrauerConfig::new((**c.h2()).clone(), c.ns().basis().clone(), b2, 25, 1).unwrap();
        assert_eq!(cfg.b(), c.b());
        assert_eq!(cfg.ell(), 5);
    }

    #[test]
    fn invalid_configs() {
        let c = toy_a();
        let h2 = (**c.h2()).clone();
        let ns = c.ns().basis().clone();
        assert!(BrauerConfig::new(h2.clone(), ns.clone(), ivec(&[0; 5]), 5, 1).is_err());
        assert!(BrauerConfig::new(h2.clone(), ns.clone(), ivec(&[1, 0, 0, 0, 0]), 5, 1).is_err());
        assert!(BrauerConfig::new(h2.clone(), imat(&[&[2, 0, 0, 0, 0]]), c.b().to_vec(), 5, 1).is_err());
        assert!(BrauerConfig::new(h2.clone(), ns.clone(), ivec(&[0, 2, -2, 0, 0]), 5, 1).is_err());
        let small = IntLattice::direct_sum_all(&[
            standard_lattice(&LatticeKind::Diag(vec![2])).unwrap(),
            standard_lattice(&LatticeKind::U).unwrap(),
        ]);
        assert!(BrauerConfig::new(small, imat(&[&[1, 0, 0]]), ivec(&[0, 1, -1]), 5, 1).is_err());
    }

    #[test]
    fn config_json_roundtrip() {
        let cfg = toy_a();
        let v = cfg.to_json();
        let back = BrauerConfig::from_json(&v).unwrap();
        assert_eq!(back.to_json(), v);
        let named = serde_json::json!({"h2": "K3n(2)", "ns_basis": [], "b": {"bad": 1}, "ell": 3});
        assert!(BrauerConfig::from_json(&named).is_err());
    }
}
