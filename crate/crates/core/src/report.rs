//! Index reports: period, Hodge-theoretic indices and their witnesses for a
//! configuration, with the divisibility chain re-derived on serialization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::arith::rat;
use crate::constructions::Check;
use crate::error::Result;
use crate::json::{big_to_value, rational_to_value, vec_to_value};
use crate::mukai::{e_tilde, ind_mukai, is_nonspecial, mukai, period, BrauerConfig};
use crate::par::*;
use crate::sym::{hodge::obstruction_modulus, ind_sym, rank_n, sym_power_vec, SymLattice};

#[derive(Debug, Clone)]
pub struct IndexReport {
    pub config: Value,
    pub n: u32,
    pub ell: u64,
    pub q_b: BigInt,
    pub period: u64,
    pub ind_mukai: u64,
    pub ind_sym: BigInt,
    pub nonspecial: bool,
    pub rank_ns: usize,
    pub rank_t: usize,
    pub rank_n_hodge: usize,
    /// (modulus, q(η)) when rank T(X) ≥ 6.
    pub obstruction: Option<(BigInt, BigInt)>,
    pub e_tilde: Vec<BigInt>,
    pub rk_e_tilde: BigInt,
    /// rank_n(ẽ⁽ⁿ⁾) = rk(ẽ)ⁿ.
    pub rank_n_e_tilde: BigRational,
}

impl IndexReport {
    pub fn compute(cfg: &BrauerConfig) -> Result<Self> {
        let per = period(cfg);
        let ind_m = ind_mukai(cfg)?;
        let isym = ind_sym(cfg)?;
        let et = e_tilde(cfg)?;
        let mk = mukai(cfg);
        let sym = SymLattice::new(mk.lattice.clone(), cfg.n())?;
        let rank_n_e = rank_n(&sym, &mk, &sym_power_vec(&et, cfg.n()))?;
        let obstruction = obstruction_modulus(cfg)?;
        Ok(Self {
            config: cfg.to_json(),
            n: cfg.n(),
            ell: cfg.ell(),
            q_b: cfg.q_b(),
            period: per,
            ind_mukai: ind_m,
            ind_sym: isym,
            nonspecial: is_nonspecial(cfg),
            rank_ns: cfg.ns().rank(),
            rank_t: cfg.transcendental().rank(),
            rank_n_hodge: crate::sym::hodge_classes_sym(cfg)?.rank(),
            obstruction,
            rk_e_tilde: mk.rk(&et),
            e_tilde: et,
            rank_n_e_tilde: rank_n_e,
        })
    }

    pub fn per_n(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.period), self.n as usize)
    }

    /// Non-special, rank T ≥ 6 and ℓ coprime to the obstruction modulus.
    pub fn coprimality_holds(&self) -> bool {
        self.nonspecial
            && self.obstruction.as_ref().is_some_and(|(m, _)| m.gcd(&BigInt::from(self.ell)).is_one())
    }

    pub fn verdicts(&self) -> Vec<Check> {
        let per = BigInt::from(self.period);
        let ind_m = BigInt::from(self.ind_mukai);
        let per_n = self.per_n();
        let mut out = vec![
            Check::divides("per | ind_mukai", per.clone(), ind_m.clone()),
            Check::divides("ind_mukai | rk(e_tilde)", ind_m.clone(), self.rk_e_tilde.clone()),
            Check::claim("rk(e_tilde) = per", self.rk_e_tilde.clone(), self.rk_e_tilde == per),
            Check::claim(
                "rank_n(e_tilde^(n)) = per^n",
                per_n.clone(),
                self.rank_n_e_tilde == rat(&per_n),
            ),
            Check::divides("ind_sym | per^n", self.ind_sym.clone(), per_n.clone()),
        ];
        if self.nonspecial {
            out.push(Check::claim("non-special implies per = ell", per.clone(), self.period == self.ell));
        }
        if self.coprimality_holds() {
            out.push(Check::divides("per^n | ind_sym", per_n, self.ind_sym.clone()));
        }
        out
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts().iter().all(|c| c.verdict)
    }

    pub fn to_json(&self) -> Value {
        let verdicts = self.verdicts();
        json!({
            "all_pass": verdicts.iter().all(|c| c.verdict),
            "config": self.config,
            "coprimality_hypotheses": self.coprimality_holds(),
            "ell": self.ell,
            "ind_mukai": self.ind_mukai,
            "ind_sym": big_to_value(&self.ind_sym),
            "n": self.n,
            "nonspecial": self.nonspecial,
            "obstruction_modulus": self.obstruction.as_ref().map(|(m, _)| big_to_value(m)),
            "period": self.period,
            "q_b": big_to_value(&self.q_b),
            "q_eta": self.obstruction.as_ref().map(|(_, q)| big_to_value(q)),
            "rank_n_hodge": self.rank_n_hodge,
            "rank_ns": self.rank_ns,
            "rank_t": self.rank_t,
            "verdicts": verdicts.iter().map(Check::to_json).collect::<Vec<_>>(),
            "witnesses": {
                "e_tilde": vec_to_value(&self.e_tilde),
                "rank_n_e_tilde_n": rational_to_value(&self.rank_n_e_tilde),
                "rk_e_tilde": big_to_value(&self.rk_e_tilde),
            },
        })
    }
}

/// Reports for many configurations, evaluated on the rayon pool; order is
/// preserved.
pub fn index_batch(configs: &[BrauerConfig]) -> Vec<Result<IndexReport>> {
    configs.par_iter().map(IndexReport::compute).collect()
}

/// Periods and Mukai indices only, for large samples.
pub fn mukai_batch(configs: &[BrauerConfig]) -> Vec<Result<(u64, u64)>> {
    configs.par_iter().map(|c| ind_mukai(c).map(|i| (period(c), i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ivec;
    use crate::lattice::{standard_lattice, IntLattice, LatticeKind};

    #[test]
    fn toy_a_report() {
        let h2 = IntLattice::direct_sum_all(&[
            standard_lattice(&LatticeKind::Diag(vec![2])).unwrap(),
            standard_lattice(&LatticeKind::U).unwrap(),
            standard_lattice(&LatticeKind::U).unwrap(),
        ]);
        let cfg = BrauerConfig::new(h2, vec![ivec(&[1, 0, 0, 0, 0])], ivec(&[0, 1, -1, 0, 0]), 5, 2).unwrap();
        let r = IndexReport::compute(&cfg).unwrap();
        assert_eq!((r.period, r.ind_mukai), (5, 5));
        assert_eq!(r.ind_sym, BigInt::from(25));
        assert!(r.all_pass());
        let v = r.to_json();
        assert_eq!(v["period"], json!(5));
        assert_eq!(v["ind_sym"], json!(25));
    }
}
