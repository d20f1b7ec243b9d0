//! Exhaustive congruence solving over F_p and Hensel lifting to Z/p^m.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{is_prime, mod_inverse};
use crate::error::{Error, Result};

pub const MAX_PRIME: u64 = 10_000;

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    if p > MAX_PRIME {
        return Err(Error::Precondition(format!("p = {p} exceeds the search limit {MAX_PRIME}")));
    }
    Ok(())
}

fn residue(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.try_into().expect("residue fits")
}

/// All (k, l) with k ∈ 1..p, l ∈ 0..p and k²·qb + l²·qh ≡ ν·qb (mod p), in
/// order of k then l.
pub fn conic_points(qb: &BigInt, qh: &BigInt, nu: u64, p: u64) -> Result<Vec<(u64, u64)>> {
    check_odd_prime(p)?;
    let (a, c) = (residue(qb, p), residue(qh, p));
    if a == 0 || c == 0 {
        return Err(Error::Precondition(format!("p = {p} divides q(b)·q(h)")));
    }
    let target = (nu % p) * a % p;
    let squares: Vec<u64> = (0..p).map(|x| x * x % p).collect();
    let mut out = Vec::new();
    for k in 1..p {
        let lhs = squares[k as usize] * a % p;
        for l in 0..p {
            if (lhs + squares[l as usize] * c) % p == target {
                out.push((k, l));
            }
        }
    }
    Ok(out)
}

/// Smallest k, then smallest l, with k²·qb + l²·qh ≡ ν·qb (mod p).
pub fn conic_point(qb: &BigInt, qh: &BigInt, nu: u64, p: u64) -> Result<(u64, u64)> {
    if nu.is_multiple_of(p) {
        return Err(Error::Precondition(format!("nu must be a unit mod {p}")));
    }
    let pts = conic_points(qb, qh, nu, p)?;
    if let Some(&first) = pts.first() {
        return Ok(first);
    }
    let solvable: Vec<String> = (1..p)
        .filter(|&v| conic_points(qb, qh, v, p).map(|s| !s.is_empty()).unwrap_or(false))
        .map(|v| v.to_string())
        .collect();
    Err(Error::NoSolution(format!(
        "no point with k != 0 for nu = {nu} mod {p}; solvable nu: [{}]",
        solvable.join(",")
    )))
}

/// x mod p^m with a2·x² + a1·x + a0 ≡ 0, lifted from the smallest simple
/// root mod p.
pub fn hensel_quadratic(a2: &BigInt, a1: &BigInt, a0: &BigInt, p: u64, m: u32) -> Result<BigInt> {
    check_odd_prime(p)?;
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let pb = BigInt::from(p);
    if a2.is_multiple_of(&pb) {
        return Err(Error::Precondition(format!("p = {p} divides the leading coefficient")));
    }
    let f = |x: &BigInt| a2 * x * x + a1 * x + a0;
    let df = |x: &BigInt| BigInt::from(2) * a2 * x + a1;
    let root = (0..p)
        .map(BigInt::from)
        .find(|x| f(x).is_multiple_of(&pb) && !df(x).is_multiple_of(&pb))
        .ok_or(Error::NoRoot { p })?;
    let modulus = num_traits::pow(pb.clone(), m as usize);
    let mut x = root;
    let mut cur = pb.clone();
    for _ in 1..m {
        cur *= &pb;
        let inv = mod_inverse(&df(&x), &cur).expect("simple root stays a unit");
        x = (&x - f(&x) * inv).mod_floor(&cur);
    }
    let x = x.mod_floor(&modulus);
    debug_assert!(f(&x).is_multiple_of(&modulus));
    Ok(x)
}

/// All x mod p^m with a2·x² + a1·x + a0 ≡ 0, by enumeration.
pub fn brute_force_roots(a2: &BigInt, a1: &BigInt, a0: &BigInt, modulus: u64) -> Vec<u64> {
    let m = BigInt::from(modulus);
    (0..modulus)
        .filter(|&x| {
            let x = BigInt::from(x);
            (a2 * &x * &x + a1 * &x + a0).is_multiple_of(&m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn conic_examples() {
        assert_eq!(conic_point(&int(1), &int(1), 2, 5).unwrap(), (1, 1));
        assert_eq!(conic_point(&int(2), &int(3), 4, 7).unwrap(), (1, 3));
        for p in [3u64, 5, 7, 11] {
            assert_eq!(conic_point(&int(3), &int(2), 1, p).map(|(k, _)| k).ok(), if p == 3 { None } else { Some(1) });
        }
        assert!(conic_point(&int(5), &int(1), 1, 5).is_err());
        assert!(conic_point(&int(1), &int(1), 1, 4).is_err());
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_quadratic(&int(1), &int(0), &int(-2), 7, 2).unwrap(), int(10));
        assert_eq!(hensel_quadratic(&int(1), &int(0), &int(-1), 5, 1).unwrap(), int(1));
        assert_eq!(hensel_quadratic(&int(1), &int(0), &int(1), 7, 3), Err(Error::NoRoot { p: 7 }));
        // (x − 1)² has only a critical root
        assert_eq!(hensel_quadratic(&int(1), &int(-2), &int(1), 5, 2), Err(Error::NoRoot { p: 5 }));
        assert!(hensel_quadratic(&int(5), &int(1), &int(1), 5, 2).is_err());
    }

    #[test]
    fn lifted_roots_are_roots() {
        for m in 1..4 {
            let x = hensel_quadratic(&int(3), &int(1), &int(-4), 11, m).unwrap();
            let modulus = 11u64.pow(m);
            assert!(brute_force_roots(&int(3), &int(1), &int(-4), modulus).contains(&x.try_into().unwrap()));
        }
    }
}
