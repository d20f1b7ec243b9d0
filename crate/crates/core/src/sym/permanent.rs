//! Permanents by Ryser's formula with Gray-code subset iteration.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// perm(A) for a square matrix; tries checked i128 first.
pub fn permanent(a: &[Vec<BigInt>]) -> BigInt {
    let small: Option<Vec<Vec<i128>>> = a
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().map(i128::from)).collect())
        .collect();
    if let Some(m) = small.and_then(|m| ryser_i128(&m)) {
        return BigInt::from(m);
    }
    ryser_big(a)
}

fn ryser_i128(a: &[Vec<i128>]) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut sums = vec![0i128; n];
    let mut total = 0i128;
    let mut in_set = vec![false; n];
    for k in 1..(1usize << n) {
        // Gray code: flip the lowest set bit position of k
        let j = k.trailing_zeros() as usize;
        let sign = if in_set[j] { -1 } else { 1 };
        in_set[j] = !in_set[j];
        for (s, row) in sums.iter_mut().zip(a) {
            *s = s.checked_add(sign * row[j])?;
        }
        let mut prod = 1i128;
        for s in &sums {
            prod = prod.checked_mul(*s)?;
        }
        let size = (k ^ (k >> 1)).count_ones() as usize;
        if (n - size).is_multiple_of(2) {
            total = total.checked_add(prod)?;
        } else {
            total = total.checked_sub(prod)?;
        }
    }
    Some(total)
}

fn ryser_big(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sums = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    let mut in_set = vec![false; n];
    for k in 1..(1usize << n) {
        let j = k.trailing_zeros() as usize;
        let add = !in_set[j];
        in_set[j] = add;
        for (s, row) in sums.iter_mut().zip(a) {
            if add {
                *s += &row[j];
            } else {
                *s -= &row[j];
            }
        }
        let prod = sums.iter().fold(BigInt::from(1), |acc, s| acc * s);
        let size = (k ^ (k >> 1)).count_ones() as usize;
        if (n - size).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}
