//! Hodge classes of Sⁿ of the twisted Mukai lattice under the
//! Mumford–Tate-general model: the rational Hodge classes are spanned by
//! u·q_Tʲ with u ∈ Sⁿ⁻²ʲ N(X,B).

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{SymLattice, SymVector};
use crate::arith::{binomial, content, factorial, int, rat};
use crate::constructions::eta::eta_finder;
use crate::error::{Error, Result};
use crate::lattice::{IntLattice, Sublattice};
use crate::linalg::{self, IntMatrix};
use crate::mukai::{hodge_classes_mukai, mukai, period, transcendental_twist, BrauerConfig, MukaiLattice};
use crate::par::*;

/// q_T = Σ gⁱʲ tᵢ tⱼ (ordered pairs) with (gⁱʲ) the inverse Gram.
pub fn qt_class(t: &IntLattice) -> Result<SymVector> {
    let n = t.rank();
    if !t.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let g = linalg::to_rational(t.gram());
    let mut terms = Vec::with_capacity(n * n);
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::one();
        let col = linalg::solve_rational(&g, &e, n).ok_or(Error::Degenerate)?;
        for (i, c) in col.into_iter().enumerate() {
            terms.push((vec![i as u32, j as u32], c));
        }
    }
    SymVector::from_terms(2, terms)
}

/// q_T of T(X,B), written in Mukai coordinates.
pub fn qt_in_mukai(cfg: &BrauerConfig) -> Result<SymVector> {
    let t = transcendental_twist(cfg);
    Ok(qt_class(&t.as_lattice())?.substitute(t.basis()))
}

/// Multisets of size k drawn from 0..r.
fn multisets(r: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(r: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            go(r, k, i, cur, out);
            cur.pop();
        }
    }
    go(r, k, 0, &mut cur, &mut out);
    out
}

/// Products of N-basis vectors of degree n − 2j times q_Tʲ, 0 ≤ 2j ≤ n.
pub fn span_generators(cfg: &BrauerConfig, n: u32) -> Result<Vec<SymVector>> {
    let nb = hodge_classes_mukai(cfg);
    let basis: Vec<SymVector> = nb.basis().iter().map(|v| SymVector::from_vector(v)).collect();
    let qt = qt_in_mukai(cfg)?;
    let mut qt_pows = vec![SymVector::one()];
    for j in 1..=n / 2 {
        let next = qt_pows[j as usize - 1].mul(&qt);
        qt_pows.push(next);
    }
    let mut jobs = Vec::new();
    for j in 0..=n / 2 {
        for ms in multisets(basis.len(), (n - 2 * j) as usize) {
            jobs.push((j, ms));
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(j, ms)| {
            let mut prod = qt_pows[j as usize].clone();
            for i in ms {
                prod = prod.mul(&basis[i]);
            }
            prod
        })
        .collect())
}

/// Saturated lattice of integral Hodge classes in Sⁿ, as dense rows over the
/// monomial basis of `sym`.
#[derive(Debug, Clone)]
pub struct SymHodgeLattice {
    pub sym: Arc<SymLattice>,
    pub mukai: MukaiLattice,
    pub basis: IntMatrix,
}

impl SymHodgeLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> Vec<SymVector> {
        self.basis.iter().map(|r| self.sym.from_dense(r)).collect()
    }

    pub fn contains(&self, v: &SymVector) -> Result<bool> {
        let dense = self.sym.dense(v)?;
        let Some(int_coords) = crate::arith::integral_vec(&dense) else {
            return Ok(false);
        };
        Ok(self.as_row_lattice().contains(&int_coords))
    }

    fn as_row_lattice(&self) -> Sublattice {
        // the pairing is irrelevant for membership; use the identity form
        let dim = self.sym.dim();
        let id: IntMatrix =
            (0..dim).map(|i| (0..dim).map(|j| if i == j { int(1) } else { int(0) }).collect()).collect();
        let amb = Arc::new(IntLattice::new(id).expect("identity"));
        Sublattice::certified(amb, self.basis.clone())
    }

    /// The same lattice inside Sⁿ with its permanent Gram matrix.
    pub fn as_sublattice(&self) -> Sublattice {
        Sublattice::certified(self.sym.gram_lattice(), self.basis.clone())
    }
}

pub fn hodge_classes_sym(cfg: &BrauerConfig) -> Result<SymHodgeLattice> {
    let mk = mukai(cfg);
    let sym = Arc::new(SymLattice::new(mk.lattice.clone(), cfg.n())?);
    let gens = span_generators(cfg, cfg.n())?;
    let rows: Vec<Vec<BigRational>> = gens.iter().map(|g| sym.dense(g)).collect::<Result<_>>()?;
    let basis = linalg::saturate(&rows, sym.dim());
    Ok(SymHodgeLattice { sym, mukai: mk, basis })
}

/// (−1)ⁿ q⁽ⁿ⁾(v, f⁽ⁿ⁾) / n!.
pub fn rank_n(sym: &SymLattice, mukai: &MukaiLattice, v: &SymVector) -> Result<BigRational> {
    let n = v.degree();
    let fn_ = SymVector::monomial(vec![mukai.f_index as u32; n as usize]);
    let p = sym.pair(v, &fn_)?;
    let sign = if n.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
    Ok(p * sign / rat(&factorial(n as u64)))
}

/// gcd of rank_n over the Hodge lattice of Sⁿ.
pub fn ind_sym(cfg: &BrauerConfig) -> Result<BigInt> {
    let h = hodge_classes_sym(cfg)?;
    let ranks: Vec<BigInt> = h
        .vectors()
        .par_iter()
        .map(|v| rank_n(&h.sym, &h.mukai, v))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .map(|r| {
            if r.is_integer() {
                Ok(r.to_integer())
            } else {
                Err(Error::ModelViolation(format!("non-integral rank {r} on an integral class")))
            }
        })
        .collect::<Result<_>>()?;
    let g = content(&ranks);
    let per_n = num_traits::pow(BigInt::from(period(cfg)), cfg.n() as usize);
    if g.is_zero() || !(&per_n % &g).is_zero() {
        return Err(Error::ModelViolation(format!("ind_sym = {g} does not divide per^n = {per_n}")));
    }
    Ok(g)
}

/// 2·q(η)ᵐ·disc(T(X))·q(b) with m = ⌊n/2⌋ and η from the isotropic
/// construction in T(X); None when T(X) is too small for it.
pub fn obstruction_modulus(cfg: &BrauerConfig) -> Result<Option<(BigInt, BigInt)>> {
    let t = cfg.transcendental();
    if t.rank() < 6 {
        return Ok(None);
    }
    let coords = t
        .coords_of(cfg.b())
        .and_then(|c| crate::arith::integral_vec(&c))
        .ok_or_else(|| Error::ModelViolation("b is not an integral vector of T(X)".into()))?;
    let tl = t.as_lattice();
    let w = match eta_finder(&tl, &coords) {
        Ok(w) => w,
        Err(Error::SearchExhausted { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let m = (cfg.n() / 2) as usize;
    let modulus = BigInt::from(2) * num_traits::pow(w.q_eta.clone(), m) * t.discriminant() * cfg.q_b();
    Ok(Some((modulus.abs(), w.q_eta)))
}

/// w = Σₖ (−1)ᵏ C(n,2k) q(η)ᵐ⁻ᵏ q(b)ᵏ b⁽ⁿ⁻²ᵏ⁾ η⁽²ᵏ⁾, m = ⌊n/2⌋.
pub fn w_class(l: &IntLattice, b: &[BigInt], eta: &[BigInt], n: u32) -> Result<SymVector> {
    let qb = l.square(b)?;
    let qe = l.square(eta)?;
    if !qb.is_positive() || !qe.is_positive() {
        return Err(Error::Precondition("w requires q(b) > 0 and q(eta) > 0".into()));
    }
    if !l.pair(b, eta)?.is_zero() {
        return Err(Error::Precondition("w requires q(b, eta) = 0".into()));
    }
    let m = n / 2;
    let bv = SymVector::from_vector(b);
    let ev = SymVector::from_vector(eta);
    let mut w = SymVector::zero(n);
    for k in 0..=m {
        let coeff = binomial(n as u64, 2 * k as u64)
            * num_traits::pow(qe.clone(), (m - k) as usize)
            * num_traits::pow(qb.clone(), k as usize);
        let coeff = if k % 2 == 1 { -coeff } else { coeff };
        let term = bv.pow(n - 2 * k).mul(&ev.pow(2 * k)).scale_int(&coeff);
        w = w.add(&term)?;
    }
    Ok(w)
}

/// Both sides of q⁽ⁿ⁾(γ⁽ⁿ⁾, u·v) = C(n,k)·q⁽ᵏ⁾(γ⁽ᵏ⁾, u)·q⁽ⁿ⁻ᵏ⁾(γ⁽ⁿ⁻ᵏ⁾, v).
pub fn splitting_pair(
    sym: &SymLattice,
    gamma: &[BigInt],
    k: u32,
    u: &SymVector,
    v: &SymVector,
) -> Result<(BigRational, BigRational)> {
    if gamma.len() != sym.base().rank() {
        return Err(Error::DimensionMismatch { expected: sym.base().rank(), got: gamma.len() });
    }
    if u.degree() != k {
        return Err(Error::DimensionMismatch { expected: k as usize, got: u.degree() as usize });
    }
    let n = k + v.degree();
    let g = SymVector::from_vector(gamma);
    let lhs = sym.pair(&g.pow(n), &u.mul(v))?;
    let rhs = rat(&binomial(n as u64, k as u64)) * sym.pair(&g.pow(k), u)? * sym.pair(&g.pow(n - k), v)?;
    Ok((lhs, rhs))
}
