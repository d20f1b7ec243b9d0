//! The vector b′ = εk·b + l·h + εp^m·c with c in a hyperbolic plane of
//! ⟨b, h⟩^⊥, together with a machine-checked certificate.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::modular::conic_points;
use super::Check;
use crate::arith::{content, int, is_prime};
use crate::error::{Error, Result};
use crate::json::{big_to_value, vec_to_value};
use crate::lattice::{find_isotropic_escalating, IntLattice, IsotropicSearch, Sublattice};
use crate::linalg;

/// Isotropic e′, f′ with q(e′, f′) = −1 orthogonal to every vector of `span`.
pub fn hyperbolic_in_complement(h2: &Arc<IntLattice>, span: &[Vec<BigInt>]) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    hyperbolic_in_complement_with(h2, span, IsotropicSearch::default())
}

pub fn hyperbolic_in_complement_with(
    h2: &Arc<IntLattice>,
    span: &[Vec<BigInt>],
    search: IsotropicSearch,
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let comp = if span.is_empty() {
        Sublattice::full(h2.clone())
    } else {
        Sublattice::spanned_by(h2.clone(), span)?.saturation().orthogonal_complement()
    };
    let c = comp.as_lattice();
    let e = find_isotropic_escalating(&c, search, |v| c.divisibility(v).map(|d| d.is_one()).unwrap_or(false))?;
    let row = c.apply(&e);
    let mut x = linalg::solve_integer(std::slice::from_ref(&row), &[int(-1)], c.rank())
        .ok_or_else(|| Error::ModelViolation("divisibility one is not attained".into()))?;
    if c.square_unchecked(&x).is_odd() {
        // shift x by a vector orthogonal to e′ of odd square
        let fix = (0..c.rank()).find_map(|i| {
            let b = c.basis_vector(i);
            let t = linalg::dot(&row, &b);
            let y: Vec<BigInt> = b.iter().zip(&x).map(|(bi, xi)| bi + &t * xi).collect();
            c.square_unchecked(&y).is_odd().then_some(y)
        });
        match fix {
            Some(y) => x = x.iter().zip(&y).map(|(a, b)| a + b).collect(),
            None => return Err(Error::SearchExhausted { bound: search.cap }),
        }
    }
    // f′ = x + t·e′ with q(f′) = q(x) − 2t = 0
    let t = c.square_unchecked(&x) / 2;
    let f: Vec<BigInt> = x.iter().zip(&e).map(|(xi, ei)| xi + &t * ei).collect();
    let e_amb = comp.to_ambient(&e);
    let f_amb = comp.to_ambient(&f);
    debug_assert!(h2.square_unchecked(&f_amb).is_zero());
    debug_assert!(h2.pair_unchecked(&e_amb, &f_amb) == int(-1));
    Ok((e_amb, f_amb))
}

#[derive(Debug, Clone)]
pub struct BPrimeRequest {
    pub h2: Arc<IntLattice>,
    pub h: Vec<BigInt>,
    pub b: Vec<BigInt>,
    pub p: u64,
    pub m: u32,
    pub nu: u64,
    /// Forced by p | q(b); a supplied value is checked against the rule.
    pub epsilon: Option<u8>,
}

#[derive(Debug, Clone)]
pub struct BPrimeCertificate {
    pub b_prime: Vec<BigInt>,
    pub epsilon: u8,
    pub m: u32,
    pub k: u64,
    pub l: BigInt,
    pub lambda: BigInt,
    pub c: Vec<BigInt>,
    pub e_prime: Vec<BigInt>,
    pub f_prime: Vec<BigInt>,
    /// Witness a with q(b, a) = div(b).
    pub a: Vec<BigInt>,
    /// Set when no conic point with p ∤ l exists and l = 0 was used.
    pub l_divisible_by_p: bool,
    pub checks: Vec<Check>,
}

impl BPrimeCertificate {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": vec_to_value(&self.a),
            "b_prime": vec_to_value(&self.b_prime),
            "c": vec_to_value(&self.c),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "e_prime": vec_to_value(&self.e_prime),
            "epsilon": self.epsilon,
            "f_prime": vec_to_value(&self.f_prime),
            "k": self.k,
            "l": big_to_value(&self.l),
            "l_divisible_by_p": self.l_divisible_by_p,
            "lambda": big_to_value(&self.lambda),
            "m": self.m,
        })
    }
}

struct Validated {
    epsilon: u8,
    m: u32,
    qb: BigInt,
    qh: BigInt,
}

fn validate(req: &BPrimeRequest) -> Result<Validated> {
    let l = &req.h2;
    let p = req.p;
    if p == 2 || !is_prime(p) || p > super::modular::MAX_PRIME {
        return Err(Error::Precondition(format!("p = {p} must be an odd prime <= {}", super::modular::MAX_PRIME)));
    }
    if req.m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    if req.nu.is_multiple_of(p) {
        return Err(Error::Precondition(format!("nu must be a unit mod {p}")));
    }
    let qh = l.square(&req.h)?;
    let qb = l.square(&req.b)?;
    if !qh.is_positive() {
        return Err(Error::Precondition("q(h) must be positive".into()));
    }
    if !l.pair(&req.h, &req.b)?.is_zero() {
        return Err(Error::Precondition("b must be orthogonal to h".into()));
    }
    let pb = BigInt::from(p);
    if content(&req.b).is_multiple_of(&pb) {
        return Err(Error::Precondition(format!("b is divisible by {p}")));
    }
    let disc = l.discriminant();
    if (&qh * &disc).is_multiple_of(&pb) {
        return Err(Error::Precondition(format!("p = {p} divides q(h)·disc(H2) = {}", &qh * &disc)));
    }
    let special = qb.is_multiple_of(&pb);
    let epsilon = if special { 2 } else { 1 };
    if let Some(e) = req.epsilon {
        if e != epsilon {
            return Err(Error::Precondition(format!("epsilon must be {epsilon} since p {} q(b)", if special { "|" } else { "∤" })));
        }
    }
    if special && req.m != 1 {
        return Err(Error::Precondition("m must be 1 when p divides q(b)".into()));
    }
    Ok(Validated { epsilon, m: req.m, qb, qh })
}

pub fn b_prime(req: &BPrimeRequest) -> Result<BPrimeCertificate> {
    let v = validate(req)?;
    let l = &req.h2;
    let p = req.p;
    let pb = BigInt::from(p);
    let eps = BigInt::from(v.epsilon);

    let (k, ell, l_divisible_by_p) = if v.epsilon == 1 {
        let pts = conic_points(&v.qb, &v.qh, req.nu, p)?;
        match pts.iter().find(|(_, l)| *l != 0) {
            Some(&(k, l)) => (k, BigInt::from(l), false),
            None => {
                let &(k, l) = pts
                    .first()
                    .ok_or_else(|| Error::NoSolution(format!("conic has no point with k != 0 for nu = {}", req.nu)))?;
                (k, BigInt::from(l), true)
            }
        }
    } else {
        (1, pb.clone(), false)
    };

    let (e_prime, f_prime) = hyperbolic_in_complement(l, &[req.b.clone(), req.h.clone()])?;
    let pm = num_traits::pow(pb.clone(), v.m as usize);
    let kb = BigInt::from(k);
    // q(b′) = Q0 − 2λE with Q0 = ε²k²q(b) + l²q(h), E = ε²p^{2m}
    let q0 = &eps * &eps * &kb * &kb * &v.qb + &ell * &ell * &v.qh;
    let e_big = &eps * &eps * &pm * &pm;
    let lambda = std::cmp::min(BigInt::zero(), (&q0 - BigInt::one()).div_floor(&(int(2) * &e_big)));
    let c: Vec<BigInt> = e_prime.iter().zip(&f_prime).map(|(e, f)| e + &lambda * f).collect();
    let b_prime: Vec<BigInt> = (0..l.rank())
        .map(|i| &eps * &kb * &req.b[i] + &ell * &req.h[i] + &eps * &pm * &c[i])
        .collect();

    let div_b = l.divisibility(&req.b)?;
    let a = {
        let row = l.apply(&req.b);
        linalg::solve_integer(&[row], std::slice::from_ref(&div_b), l.rank())
            .ok_or_else(|| Error::ModelViolation("divisibility of b is not attained".into()))?
    };
    let checks = certify(l, req, &b_prime, &a, v.epsilon, &v.qb)?;
    let cert = BPrimeCertificate {
        b_prime,
        epsilon: v.epsilon,
        m: v.m,
        k,
        l: ell,
        lambda,
        c,
        e_prime,
        f_prime,
        a,
        l_divisible_by_p,
        checks,
    };
    if let Some(bad) = cert.checks.iter().find(|c| !c.verdict) {
        return Err(Error::ModelViolation(format!("b' postcondition `{}` failed", bad.condition)));
    }
    Ok(cert)
}

fn certify(
    l: &IntLattice,
    req: &BPrimeRequest,
    bp: &[BigInt],
    a: &[BigInt],
    epsilon: u8,
    qb: &BigInt,
) -> Result<Vec<Check>> {
    let pb = BigInt::from(req.p);
    let div_h = l.divisibility(&req.h)?;
    let div_b = l.divisibility(&req.b)?;
    let div_bp = l.divisibility(bp)?;
    let q_bp = l.square(bp)?;
    let expected_div = BigInt::from(epsilon).gcd(&div_h);
    let target = BigInt::from(req.nu) * qb;
    Ok(vec![
        Check { condition: "primitive".into(), lhs: content(bp), modulus: None, verdict: content(bp).is_one() },
        Check {
            condition: "div(b') = gcd(epsilon, div(h))".into(),
            lhs: div_bp.clone(),
            modulus: None,
            verdict: div_bp == expected_div,
        },
        Check { condition: "q(b') > 0".into(), lhs: q_bp.clone(), modulus: None, verdict: q_bp.is_positive() },
        Check {
            condition: "q(b') - nu q(b) = 0 mod p".into(),
            lhs: &q_bp - &target,
            modulus: Some(pb.clone()),
            verdict: (&q_bp - &target).is_multiple_of(&pb),
        },
        Check {
            condition: "q(b, a) = div(b)".into(),
            lhs: l.pair(&req.b, a)?,
            modulus: None,
            verdict: l.pair(&req.b, a)? == div_b,
        },
        Check {
            condition: "div(b) != 0 mod p".into(),
            lhs: div_b.clone(),
            modulus: Some(pb.clone()),
            verdict: !div_b.is_multiple_of(&pb),
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ivec;
    use crate::lattice::{standard_lattice, LatticeKind};

    fn uu() -> Arc<IntLattice> {
        Arc::new(IntLattice::direct_sum_all(&[
            standard_lattice(&LatticeKind::U).unwrap(),
            standard_lattice(&LatticeKind::U).unwrap(),
        ]))
    }

    #[test]
    fn hyperbolic_examples() {
        let (e, f) = hyperbolic_in_complement(&uu(), &[]).unwrap();
        assert_eq!((e, f), (ivec(&[1, 0, 0, 0]), ivec(&[0, 1, 0, 0])));
        let l = Arc::new(standard_lattice(&LatticeKind::Diag(vec![2])).unwrap().direct_sum(&uu()));
        let (e, f) = hyperbolic_in_complement(&l, &[ivec(&[1, 0, 0, 0, 0])]).unwrap();
        assert!(e[0].is_zero() && f[0].is_zero());
        assert_eq!(l.pair(&e, &f).unwrap(), int(-1));
    }

    fn k3n(n: u64) -> Arc<IntLattice> {
        Arc::new(standard_lattice(&LatticeKind::K3n(n)).unwrap())
    }

    fn vec_in(len: usize, entries: &[(usize, i64)]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); len];
        for &(i, x) in entries {
            v[i] = int(x);
        }
        v
    }

    #[test]
    fn k3n_non_special() {
        let l = k3n(2);
        // h = e₃ − f₃ (q = 2), b = e₁ − 3f₁ (q = 6)
        let req = BPrimeRequest {
            h2: l.clone(),
            h: vec_in(23, &[(4, 1), (5, -1)]),
            b: vec_in(23, &[(0, 1), (1, -3)]),
            p: 5,
            m: 1,
            nu: 1,
            epsilon: None,
        };
        let cert = b_prime(&req).unwrap();
        assert!(cert.all_pass());
        assert_eq!(cert.epsilon, 1);
        assert_eq!(l.divisibility(&cert.b_prime).unwrap(), int(1));
    }

    #[test]
    fn k3n_special() {
        let l = k3n(3);
        // q(b) = 10 is divisible by p = 5
        let req = BPrimeRequest {
            h2: l.clone(),
            h: vec_in(23, &[(4, 1), (5, -1)]),
            b: vec_in(23, &[(0, 1), (1, -5)]),
            p: 5,
            m: 1,
            nu: 3,
            epsilon: Some(2),
        };
        let cert = b_prime(&req).unwrap();
        assert_eq!(cert.epsilon, 2);
        assert_eq!(cert.l, int(5));
        assert!(cert.all_pass());
        let bad = BPrimeRequest { m: 2, ..req };
        assert!(b_prime(&bad).is_err());
    }
}
