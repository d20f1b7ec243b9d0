//! Seeded random instances for property checks, benches and the acceptance
//! suite. Every generator loops until it produces a valid instance.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{content, int};
use crate::constructions::{BPrimeRequest, OGradyParams};
use crate::lattice::{standard_lattice, IntLattice, LatticeKind, Sublattice};
use crate::linalg;
use crate::mukai::BrauerConfig;
use crate::obstructions::DJPInstance;
use crate::sym::{hodge::obstruction_modulus, SymVector};

pub const SMALL_PRIMES: [u64; 25] =
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn vector(&mut self, len: usize, bound: i64) -> Vec<BigInt> {
        (0..len).map(|_| int(self.int_in(-bound, bound))).collect()
    }

    fn nonzero_vector(&mut self, len: usize, bound: i64) -> Vec<BigInt> {
        loop {
            let v = self.vector(len, bound);
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
    }

    /// U^a ⊕ diag(...) of the given rank with at least one U.
    pub fn h2(&mut self, rank: usize) -> IntLattice {
        assert!(rank >= 2);
        let u_count = self.rng.gen_range(1..=rank / 2);
        let mut parts = vec![standard_lattice(&LatticeKind::U).expect("U"); u_count];
        let rest = rank - 2 * u_count;
        if rest > 0 {
            let entries: Vec<i64> = (0..rest)
                .map(|_| loop {
                    let d = self.int_in(-6, 6);
                    if d != 0 {
                        break d;
                    }
                })
                .collect();
            parts.push(standard_lattice(&LatticeKind::Diag(entries)).expect("diag"));
        }
        IntLattice::direct_sum_all(&parts)
    }

    /// Saturated nondegenerate NS of rank ρ, or None.
    fn ns(&mut self, h2: &Arc<IntLattice>, rho: usize) -> Option<Vec<Vec<BigInt>>> {
        if rho == 0 {
            return Some(Vec::new());
        }
        let rows: Vec<Vec<BigInt>> = (0..rho).map(|_| self.nonzero_vector(h2.rank(), 2)).collect();
        let s = Sublattice::new(h2.clone(), rows).ok()?.saturation();
        (s.rank() == rho && !linalg::det(&s.gram()).is_zero()).then(|| s.basis().clone())
    }

    /// Primitive b in T with q(b) satisfying `accept`.
    fn b_in(&mut self, t: &Sublattice, bound: i64, accept: impl Fn(&BigInt) -> bool) -> Option<Vec<BigInt>> {
        for _ in 0..32 {
            let c = self.nonzero_vector(t.rank(), bound);
            let v = t.to_ambient(&c);
            let g = content(&v);
            let v: Vec<BigInt> = v.iter().map(|x| x / &g).collect();
            if accept(&t.ambient().square_unchecked(&v)) {
                return Some(v);
            }
        }
        None
    }

    /// Random configuration of Mukai rank ≤ `max_mukai_rank` with ℓ ∈ ell_range.
    pub fn config(&mut self, max_mukai_rank: usize, ell_range: (u64, u64), n: u32) -> BrauerConfig {
        loop {
            let rank = self.rng.gen_range(3..=max_mukai_rank - 2);
            let h2 = Arc::new(self.h2(rank));
            let rho = self.rng.gen_range(0..=(rank - 3).min(3));
            let Some(ns) = self.ns(&h2, rho) else { continue };
            let t = if ns.is_empty() {
                Sublattice::full(h2.clone())
            } else {
                Sublattice::new(h2.clone(), ns.clone()).expect("ns").orthogonal_complement()
            };
            let Some(b) = self.b_in(&t, 3, |_| true) else { continue };
            let ell = self.rng.gen_range(ell_range.0..=ell_range.1);
            if let Ok(cfg) = BrauerConfig::new((*h2).clone(), ns, b, ell, n) {
                return cfg;
            }
        }
    }

    /// Non-special configuration with rank T(X) ≥ 6, q(b) > 0 and ℓ a prime
    /// coprime to the obstruction modulus.
    pub fn coprime_config(&mut self, h2_rank: usize, rho: usize, n: u32) -> BrauerConfig {
        assert!(h2_rank >= 6 + rho);
        loop {
            let extra = h2_rank - 4;
            let mut parts = vec![standard_lattice(&LatticeKind::U).expect("U"); 2];
            parts.push(self.h2_tail(extra));
            let h2 = Arc::new(IntLattice::direct_sum_all(&parts));
            let Some(ns) = self.ns(&h2, rho) else { continue };
            let t = if ns.is_empty() {
                Sublattice::full(h2.clone())
            } else {
                Sublattice::new(h2.clone(), ns.clone()).expect("ns").orthogonal_complement()
            };
            let Some(b) = self.b_in(&t, 3, |q| q.is_positive()) else { continue };
            let Ok(probe) = BrauerConfig::new((*h2).clone(), ns.clone(), b.clone(), 1, n) else { continue };
            let Ok(Some((modulus, _))) = obstruction_modulus(&probe) else { continue };
            let primes: Vec<u64> =
                SMALL_PRIMES.iter().copied().filter(|&p| !modulus.is_multiple_of(&BigInt::from(p))).collect();
            if primes.is_empty() {
                continue;
            }
            let ell = primes[self.rng.gen_range(0..primes.len())];
            if let Ok(cfg) = BrauerConfig::new((*h2).clone(), ns, b, ell, n) {
                return cfg;
            }
        }
    }

    /// Random block of the given rank: U's and diagonal entries.
    fn h2_tail(&mut self, rank: usize) -> IntLattice {
        if rank >= 2 && self.rng.gen_bool(0.3) {
            let rest = self.h2_tail(rank - 2);
            return standard_lattice(&LatticeKind::U).expect("U").direct_sum(&rest);
        }
        let entries: Vec<i64> = (0..rank.max(1))
            .map(|_| loop {
                let d = self.int_in(-6, 6);
                if d != 0 {
                    break d;
                }
            })
            .collect();
        standard_lattice(&LatticeKind::Diag(entries)).expect("diag")
    }

    /// Indefinite T of rank 6..=8 and b ∈ T with q(b) ≠ 0.
    pub fn t_and_b(&mut self) -> (IntLattice, Vec<BigInt>) {
        loop {
            let extra = self.rng.gen_range(2..=4);
            let u = standard_lattice(&LatticeKind::U).expect("U");
            let t = IntLattice::direct_sum_all(&[u.clone(), u, self.h2_tail(extra)]);
            let b = self.nonzero_vector(t.rank(), 3);
            let g = content(&b);
            let b: Vec<BigInt> = b.iter().map(|x| x / &g).collect();
            if !t.square_unchecked(&b).is_zero() {
                return (t, b);
            }
        }
    }

    /// b′ request on K3n(n) with h in the third U plus the ⟨−(2n−2)⟩ summand
    /// and b in the first two U's and the E8's.
    pub fn bprime_request(&mut self, n: u64, p: u64) -> BPrimeRequest {
        let h2 = Arc::new(standard_lattice(&LatticeKind::K3n(n)).expect("K3n"));
        let disc = h2.discriminant();
        loop {
            let mut h = vec![BigInt::zero(); 23];
            h[4] = int(1);
            h[5] = int(-self.int_in(1, 20));
            h[22] = int(self.int_in(0, 2));
            let qh = h2.square_unchecked(&h);
            if !qh.is_positive() || (&qh * &disc).is_multiple_of(&BigInt::from(p)) {
                continue;
            }
            let mut b = vec![BigInt::zero(); 23];
            for (i, x) in b.iter_mut().enumerate().take(4) {
                *x = int(self.int_in(-4, 4) + i as i64 % 2);
            }
            if self.rng.gen_bool(0.5) {
                for x in b.iter_mut().skip(6).take(16) {
                    *x = int(self.int_in(-1, 1));
                }
            }
            let g = content(&b);
            if g.is_zero() {
                continue;
            }
            let b: Vec<BigInt> = b.iter().map(|x| x / &g).collect();
            if h2.square_unchecked(&b).is_zero() {
                continue;
            }
            let special = h2.square_unchecked(&b).is_multiple_of(&BigInt::from(p));
            let m = if special { 1 } else { self.rng.gen_range(1..=2) };
            let nu = self.rng.gen_range(1..p);
            return BPrimeRequest { h2, h, b, p, m, nu, epsilon: None };
        }
    }

    /// Odd prime p, m ∈ 1..=3, n ∈ 2..=6 and e = q(b′); half the time e
    /// solves the p^m congruence.
    pub fn ogrady_params(&mut self) -> OGradyParams {
        let p = SMALL_PRIMES[self.rng.gen_range(1..10)];
        let m = self.rng.gen_range(1..=3);
        let n = self.rng.gen_range(2..=6);
        let r0 = p.pow(m) as i64;
        let mut e = self.int_in(-500, 500);
        if self.rng.gen_bool(0.5) {
            // 2e ≡ −(n+3) mod r0
            let inv2 = (r0 + 1) / 2;
            let target = (-(n as i64 + 3) * inv2).rem_euclid(r0);
            e = target + r0 * self.int_in(-3, 3);
        }
        OGradyParams::new(p, m, n, int(e))
    }

    pub fn djp_instance(&mut self, dim: u32, max_ell: u64) -> DJPInstance {
        let r = self.rng.gen_range(dim as u64..=dim as u64 + 12);
        let ell = self.rng.gen_range(1..=max_ell);
        let qb = loop {
            let q = self.int_in(-60, 60);
            if q != 0 {
                break q;
            }
        };
        let c = BigRational::new(int(self.int_in(-12, 12)), int(self.int_in(1, 6)));
        DJPInstance::new(dim, r, ell, int(qb), c).expect("valid instance")
    }

    /// Sum of `terms` products of `degree` random vectors.
    pub fn sym_vector(&mut self, basis: &[Vec<BigInt>], degree: u32, terms: usize) -> SymVector {
        let len = basis.first().map_or(0, |b| b.len());
        let mut out = SymVector::zero(degree);
        for _ in 0..terms {
            let mut prod = SymVector::one();
            for _ in 0..degree {
                let c = self.vector(basis.len(), 2);
                let v: Vec<BigInt> = (0..len).map(|j| basis.iter().zip(&c).map(|(b, x)| &b[j] * x).sum()).collect();
                prod = prod.mul(&SymVector::from_vector(&v));
            }
            out = out.add(&prod).expect("same degree");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mukai::mukai_rank;

    #[test]
    fn deterministic_and_valid() {
        let a = Sampler::new(7).config(12, (2, 97), 1);
        let b = Sampler::new(7).config(12, (2, 97), 1);
        assert_eq!(a.to_json(), b.to_json());
        let mut s = Sampler::new(1);
        for _ in 0..20 {
            let c = s.config(12, (2, 97), 1);
            assert!(mukai_rank(&c) <= 12);
        }
    }

    #[test]
    fn coprime_configs() {
        let mut s = Sampler::new(3);
        let c = s.coprime_config(7, 1, 2);
        assert!(c.transcendental().rank() >= 6);
        assert!(c.q_b().is_positive());
        assert!(crate::mukai::is_nonspecial(&c));
    }
}
