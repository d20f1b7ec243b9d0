//! η ∈ T ∩ b^⊥ with 0 < q(η) = 8d² built from an isotropic class.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::arith::int;
use crate::error::{Error, Result};
use crate::json::{big_to_value, vec_to_value};
use crate::lattice::{find_isotropic_escalating, IntLattice, IsotropicSearch, Sublattice};
use crate::linalg;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaWitness {
    /// In coordinates of T.
    pub eta: Vec<BigInt>,
    pub gamma: Vec<BigInt>,
    pub delta: Vec<BigInt>,
    /// Divisibility of γ in Γ = T ∩ b^⊥.
    pub d: BigInt,
    pub q_eta: BigInt,
    pub disc_gamma: BigInt,
}

impl EtaWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "d": big_to_value(&self.d),
            "delta": vec_to_value(&self.delta),
            "disc_gamma": big_to_value(&self.disc_gamma),
            "eta": vec_to_value(&self.eta),
            "gamma": vec_to_value(&self.gamma),
            "q_eta": big_to_value(&self.q_eta),
        })
    }
}

pub fn eta_finder(t: &IntLattice, b: &[BigInt]) -> Result<EtaWitness> {
    eta_finder_with(t, b, IsotropicSearch::default())
}

pub fn eta_finder_with(t: &IntLattice, b: &[BigInt], search: IsotropicSearch) -> Result<EtaWitness> {
    if t.rank() < 6 {
        return Err(Error::Precondition(format!("eta_finder needs rank(T) >= 6, got {}", t.rank())));
    }
    let qb = t.square(b)?;
    if qb.is_zero() {
        return Err(Error::Precondition("eta_finder needs q(b) != 0".into()));
    }
    if !t.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let amb = Arc::new(t.clone());
    let gamma_lat = Sublattice::new(amb, vec![b.to_vec()])?.orthogonal_complement();
    let g = gamma_lat.as_lattice();
    let gamma_c = find_isotropic_escalating(&g, search, |_| true)?;
    let d = g.divisibility(&gamma_c)?;
    let row = g.apply(&gamma_c);
    let delta_c = linalg::solve_integer(&[row], std::slice::from_ref(&d), g.rank())
        .ok_or_else(|| Error::ModelViolation("divisibility is not attained".into()))?;
    let q_delta = g.square_unchecked(&delta_c);
    let two_d = int(2) * &d;
    let coef = int(2) - &q_delta;
    let eta_c: Vec<BigInt> = delta_c.iter().zip(&gamma_c).map(|(x, y)| &two_d * x + &coef * y).collect();

    let eta = gamma_lat.to_ambient(&eta_c);
    let gamma = gamma_lat.to_ambient(&gamma_c);
    let delta = gamma_lat.to_ambient(&delta_c);
    let q_eta = t.square_unchecked(&eta);
    let disc_gamma = g.discriminant();
    let w = EtaWitness { eta, gamma, delta, d, q_eta, disc_gamma };
    verify(t, b, &w)?;
    Ok(w)
}

fn verify(t: &IntLattice, b: &[BigInt], w: &EtaWitness) -> Result<()> {
    let qb = t.square_unchecked(b);
    let disc_t = t.discriminant();
    let eight_d2 = int(8) * &w.d * &w.d;
    if w.q_eta != eight_d2 {
        return Err(Error::ModelViolation(format!("q(eta) = {} but 8d^2 = {}", w.q_eta, eight_d2)));
    }
    if !t.pair_unchecked(&w.eta, b).is_zero() {
        return Err(Error::ModelViolation("eta is not orthogonal to b".into()));
    }
    let bound = int(8) * &qb * &qb * &disc_t * &disc_t;
    if !w.q_eta.is_positive() || !(&bound % &w.q_eta).is_zero() {
        return Err(Error::ModelViolation(format!("q(eta) = {} does not divide {}", w.q_eta, bound)));
    }
    if !(&w.disc_gamma % &w.d).is_zero() {
        return Err(Error::ModelViolation("d does not divide disc(Gamma)".into()));
    }
    let chain = (&qb * &disc_t).abs();
    if !(&chain % &w.disc_gamma).is_zero() {
        return Err(Error::ModelViolation("disc(Gamma) does not divide q(b) disc(T)".into()));
    }
    Ok(())
}
