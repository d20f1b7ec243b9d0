//! Enumeration of isotropic vectors in sup-norm shells.
//!
//! Within a shell, vectors are visited in colexicographic order: compare the
//! last coordinate first, with values ordered 0, 1, −1, 2, −2, …. The low
//! coordinates of each step are scanned as one parallel block with
//! `find_map_first`, so the first hit is the same as in a sequential scan.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntLattice;
use crate::error::{Error, Result};
use crate::par::*;

const BLOCK: u64 = 4096;

/// Bounds for the escalating search: start at `start`, double up to `cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsotropicSearch {
    pub start: u64,
    pub cap: u64,
}

impl Default for IsotropicSearch {
    fn default() -> Self {
        Self { start: 32, cap: 1024 }
    }
}

fn digit_value(d: u64) -> i64 {
    if d == 0 {
        0
    } else if d % 2 == 1 {
        d.div_ceil(2) as i64
    } else {
        -((d / 2) as i64)
    }
}

struct Form {
    gram: Vec<Vec<i128>>,
}

impl Form {
    fn new(l: &IntLattice) -> Option<Self> {
        let gram = l
            .gram()
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(Self { gram })
    }
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
}

/// Scans shell `s`; returns the colex-first hit.
fn search_shell<P>(l: &IntLattice, form: &Form, s: u64, pred: &P) -> Option<Vec<i64>>
where
    P: Fn(&[BigInt]) -> bool + Sync,
{
    let r = l.rank();
    let base = 2 * s + 1;
    let mut k = 0;
    let mut low_count = 1u64;
    while k < r && low_count < BLOCK {
        low_count *= base;
        k += 1;
    }
    let g = &form.gram;
    let top = 2 * s - 1;
    let mut high = vec![0u64; r - k];
    loop {
        let hv: Vec<i64> = high.iter().map(|&d| digit_value(d)).collect();
        let high_on_shell = high.iter().any(|&d| d >= top);
        let mut w = vec![0i128; k];
        for (i, wi) in w.iter_mut().enumerate() {
            for (j, &x) in hv.iter().enumerate() {
                *wi += g[i][k + j] * x as i128;
            }
        }
        let mut q_high = 0i128;
        for (i, &x) in hv.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in hv.iter().enumerate() {
                q_high += g[k + i][k + j] * (x as i128) * (y as i128);
            }
        }
        let hit = (0..low_count as usize).into_par_iter().with_min_len(256).find_map_first(|t| {
            let mut digits = [0u64; 64];
            let mut rest = t as u64;
            let mut on_shell = high_on_shell;
            for d in digits.iter_mut().take(k) {
                *d = rest % base;
                rest /= base;
                on_shell |= *d >= top;
            }
            if !on_shell {
                return None;
            }
            let lv: Vec<i64> = digits[..k].iter().map(|&d| digit_value(d)).collect();
            let mut q = q_high;
            for i in 0..k {
                if lv[i] == 0 {
                    continue;
                }
                let xi = lv[i] as i128;
                q += 2 * xi * w[i];
                for j in 0..k {
                    q += g[i][j] * xi * lv[j] as i128;
                }
            }
            if q != 0 {
                return None;
            }
            let mut v = lv;
            v.extend_from_slice(&hv);
            if !primitive(&v) {
                return None;
            }
            let big = to_big(&v);
            debug_assert!(l.square_unchecked(&big) == BigInt::from(0));
            pred(&big).then_some(v)
        });
        if hit.is_some() {
            return hit;
        }
        // advance the high digits in colex order
        let mut i = 0;
        loop {
            if i == high.len() {
                return None;
            }
            high[i] += 1;
            if high[i] < base {
                break;
            }
            high[i] = 0;
            i += 1;
        }
    }
}

/// Primitive isotropic vector of minimal sup-norm satisfying `pred`,
/// colex-first within its shell.
pub fn find_isotropic_where<P>(l: &IntLattice, bound: u64, pred: P) -> Result<Vec<BigInt>>
where
    P: Fn(&[BigInt]) -> bool + Sync,
{
    if l.rank() == 0 {
        return Err(Error::SearchExhausted { bound });
    }
    let form = Form::new(l).ok_or_else(|| Error::Precondition("gram entries exceed 64 bits".into()))?;
    for s in 1..=bound {
        // i128 overflow guard
        if s > 1 << 24 {
            break;
        }
        if let Some(v) = search_shell(l, &form, s, &pred) {
            return Ok(to_big(&v));
        }
    }
    Err(Error::SearchExhausted { bound })
}

pub fn find_isotropic(l: &IntLattice, bound: u64) -> Result<Vec<BigInt>> {
    find_isotropic_where(l, bound, |_| true)
}

/// Search up to max(start, cap); same result as doubling the bound from `start`.
pub fn find_isotropic_escalating<P>(l: &IntLattice, search: IsotropicSearch, pred: P) -> Result<Vec<BigInt>>
where
    P: Fn(&[BigInt]) -> bool + Sync,
{
    find_isotropic_where(l, search.cap.max(search.start), pred)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ivec;
    use crate::lattice::{standard_lattice, LatticeKind};

    #[test]
    fn digit_order() {
        let vals: Vec<i64> = (0..5).map(digit_value).collect();
        assert_eq!(vals, vec![0, 1, -1, 2, -2]);
    }

    #[test]
    fn hyperbolic_plane() {
        let u = standard_lattice(&LatticeKind::U).unwrap();
        assert_eq!(find_isotropic(&u, 32).unwrap(), ivec(&[1, 0]));
    }

    #[test]
    fn definite_lattice_exhausts() {
        let d = standard_lattice(&LatticeKind::Diag(vec![2])).unwrap();
        assert_eq!(find_isotropic(&d, 8), Err(Error::SearchExhausted { bound: 8 }));
    }

    #[test]
    fn diagonal_rank_five() {
        let d = standard_lattice(&LatticeKind::Diag(vec![1, 1, 1, -1, -1])).unwrap();
        assert_eq!(find_isotropic(&d, 32).unwrap(), ivec(&[1, 0, 0, 1, 0]));
    }

    #[test]
    fn second_shell() {
        // x² − 4y² has (2,1) as first primitive solution
        let d = standard_lattice(&LatticeKind::Diag(vec![1, -4])).unwrap();
        assert_eq!(find_isotropic(&d, 4).unwrap(), ivec(&[2, 1]));
    }

    #[test]
    fn predicate_filters() {
        let uu = standard_lattice(&LatticeKind::U).unwrap().direct_sum(&standard_lattice(&LatticeKind::U).unwrap());
        let v = find_isotropic_where(&uu, 4, |v| v[0] == BigInt::from(0) && v[1] == BigInt::from(0)).unwrap();
        assert_eq!(v, ivec(&[0, 0, 1, 0]));
    }
}
