//! Exact checks of the pairing identities on symmetric powers: the defining
//! value of q⁽ⁿ⁾ on pure powers, the splitting formula for powers of an
//! isotropic-type class, and the pairing properties of w.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{integral_vec, rat};
use crate::constructions::{eta_finder, Check};
use crate::error::{Error, Result};
use crate::mukai::{hodge_classes_mukai, mukai, BrauerConfig};
use crate::sym::{defining_value, qt_in_mukai, splitting_pair, sym_power_vec, w_class, SymLattice, SymVector};

fn equality(condition: String, lhs: &BigRational, rhs: &BigRational) -> Check {
    let diff = lhs - rhs;
    Check::claim(condition, diff.numer().clone(), diff.is_zero())
}

/// q⁽ⁿ⁾(a⁽ⁿ⁾, b⁽ⁿ⁾) = n!·q(a, b)ⁿ.
pub fn defining_check(sym: &SymLattice, a: &[BigInt], b: &[BigInt]) -> Result<Check> {
    let n = sym.n();
    let lhs = sym.pair(&sym_power_vec(a, n), &sym_power_vec(b, n))?;
    let rhs = rat(&defining_value(sym.base(), a, b, n));
    Ok(equality(format!("q^({n})(a^({n}), b^({n})) = {n}! q(a,b)^{n}"), &lhs, &rhs))
}

/// The splitting formula for γ⁽ⁿ⁾ against u·v with deg u = k.
pub fn splitting_check(sym: &SymLattice, gamma: &[BigInt], k: u32, u: &SymVector, v: &SymVector) -> Result<Check> {
    let (lhs, rhs) = splitting_pair(sym, gamma, k, u, v)?;
    Ok(equality(format!("splitting pairing, k = {k}, n = {}", k + v.degree()), &lhs, &rhs))
}

/// w together with the data it is built from, all in Mukai coordinates.
#[derive(Debug, Clone)]
pub struct WData {
    pub w: SymVector,
    pub b: Vec<BigInt>,
    pub eta: Vec<BigInt>,
    pub q_eta: BigInt,
}

/// w for the configuration's b and the η of the isotropic construction.
pub fn w_for_config(cfg: &BrauerConfig, n: u32) -> Result<WData> {
    let t = cfg.transcendental();
    let coords = t
        .coords_of(cfg.b())
        .and_then(|c| integral_vec(&c))
        .ok_or_else(|| Error::ModelViolation("b is not an integral vector of T(X)".into()))?;
    let wit = eta_finder(&t.as_lattice(), &coords)?;
    let eta_h2 = t.to_ambient(&wit.eta);
    let mk = mukai(cfg);
    let b = mk.vector(&BigInt::zero(), cfg.b(), &BigInt::zero());
    let eta = mk.vector(&BigInt::zero(), &eta_h2, &BigInt::zero());
    let w = w_class(&mk.lattice, &b, &eta, n)?;
    Ok(WData { w, b, eta, q_eta: wit.q_eta })
}

/// q⁽ⁿ⁾(w, u) = q(η)ᵐ·q⁽ⁿ⁾(b⁽ⁿ⁾, u) for u ∈ SⁿN and q⁽ⁿ⁾(w, u'·q_Tⁱ) = 0 for
/// u' ∈ Sⁿ⁻²ⁱN, i ≥ 1.
pub fn w_checks(sym: &SymLattice, data: &WData, qt: &SymVector, us: &[SymVector]) -> Result<Vec<Check>> {
    let n = sym.n();
    let m = n / 2;
    let scale = rat(&num_traits::pow(data.q_eta.clone(), m as usize));
    let bn = sym_power_vec(&data.b, n);
    let mut out = Vec::new();
    for u in us {
        match u.degree() {
            d if d == n => {
                let lhs = sym.pair(&data.w, u)?;
                let rhs = &scale * sym.pair(&bn, u)?;
                out.push(equality(format!("q^({n})(w, u) = q(eta)^{m} q^({n})(b^({n}), u)"), &lhs, &rhs));
            }
            d if d < n && (n - d).is_multiple_of(2) => {
                let i = (n - d) / 2;
                let v = u.mul(&qt.pow(i));
                let lhs = sym.pair(&data.w, &v)?;
                out.push(equality(format!("q^({n})(w, u q_T^{i}) = 0"), &lhs, &BigRational::zero()));
            }
            d => return Err(Error::DimensionMismatch { expected: n as usize, got: d as usize }),
        }
    }
    Ok(out)
}

/// All identity checks on a configuration, with test vectors drawn from
/// products of N-basis vectors.
pub fn verify_config(cfg: &BrauerConfig) -> Result<Vec<Check>> {
    let n = cfg.n();
    let mk = mukai(cfg);
    let sym = SymLattice::new(mk.lattice.clone(), n)?;
    let nb: Vec<Vec<BigInt>> = hodge_classes_mukai(cfg).basis().clone();
    let mut out = Vec::new();
    for a in &nb {
        out.push(defining_check(&sym, a, &mk.e())?);
        out.push(defining_check(&sym, a, &mk.f())?);
    }
    let e = mk.e();
    let f = mk.f();
    let gamma: Vec<BigInt> = e.iter().zip(&f).map(|(x, y)| x + y).collect();
    for k in 0..=n {
        let u = products(&nb, k, 0);
        let v = products(&nb, n - k, 1);
        out.push(splitting_check(&sym, &gamma, k, &u, &v)?);
    }
    if cfg.transcendental().rank() >= 6 && cfg.q_b() > BigInt::zero() {
        let data = w_for_config(cfg, n)?;
        let qt = qt_in_mukai(cfg)?;
        let mut us = Vec::new();
        for d in (0..=n).rev().step_by(2) {
            for shift in 0..nb.len() {
                us.push(products(&nb, d, shift));
            }
        }
        out.extend(w_checks(&sym, &data, &qt, &us)?);
    }
    Ok(out)
}

/// Product of `k` basis vectors taken cyclically from `shift`.
fn products(basis: &[Vec<BigInt>], k: u32, shift: usize) -> SymVector {
    let mut p = SymVector::one();
    if basis.is_empty() {
        return if k == 0 { p } else { SymVector::zero(k) };
    }
    for j in 0..k as usize {
        p = p.mul(&SymVector::from_vector(&basis[(shift + j) % basis.len()]));
    }
    p
}
