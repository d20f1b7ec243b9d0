//! Integer helpers shared by the lattice and congruence code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn ivec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn imat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| ivec(r)).collect()
}

/// Nonnegative gcd of all entries; zero for an empty or all-zero slice.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn lcm_denominators(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

/// Returns (g, x, y) with a·x + b·y = g = gcd(a, b) ≥ 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Integer coefficients c with Σ c_i v_i = gcd(v), chosen by folding the
/// extended gcd left to right.
pub fn bezout(v: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut coeffs = vec![BigInt::zero(); v.len()];
    let mut g = BigInt::zero();
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (ng, s, t) = ext_gcd(&g, x);
        for c in coeffs.iter_mut().take(i) {
            *c *= &s;
        }
        coeffs[i] = t;
        g = ng;
    }
    (g, coeffs)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient with a possibly huge or negative upper entry.
pub fn binomial_big(n: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = ext_gcd(&a.mod_floor(m), m);
    g.is_one().then(|| x.mod_floor(m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorisation into (prime, exponent) pairs, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn to_u64(x: &BigInt) -> Option<u64> {
    x.to_u64()
}

pub fn abs(x: &BigInt) -> BigInt {
    x.abs()
}

pub fn divides(d: &BigInt, n: &BigInt) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        (n % d).is_zero()
    }
}

pub fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

pub fn rat_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(rat).collect()
}

/// Converts a rational vector to integers if every entry is integral.
pub fn integral_vec(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}
