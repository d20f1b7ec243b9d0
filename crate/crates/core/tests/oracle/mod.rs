//! Independent reference computations: fraction Gaussian elimination and a
//! Smith form with column transform, written without the library's linear
//! algebra.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn big(rows: &[&[i64]]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn pair(g: &Mat, a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..a.len() {
        for j in 0..b.len() {
            s += &a[i] * &g[i][j] * &b[j];
        }
    }
    s
}

/// Positive gcd of q(v, e_i) over the standard basis.
pub fn divisibility(g: &Mat, v: &[BigInt]) -> BigInt {
    (0..g.len()).fold(BigInt::zero(), |acc, j| {
        let x: BigInt = (0..v.len()).map(|i| &v[i] * &g[i][j]).sum();
        acc.gcd(&x)
    })
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |a, x| a.gcd(x))
}

/// Row echelon rank and basis of the right kernel over Q.
pub fn rational_kernel(rows: &Mat, ncols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = BigRational::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..ncols {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn rank(rows: &Mat, ncols: usize) -> usize {
    ncols - rational_kernel(rows, ncols).len()
}

/// Determinant by fraction elimination.
pub fn det(m: &Mat) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return BigInt::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d.to_integer()
}

/// Smith form of an m×n matrix: (diagonal, C) with R·A·C = diag for some
/// unimodular R; C is n×n unimodular.
pub fn smith(a: &Mat, ncols: usize) -> (Vec<BigInt>, Mat) {
    let m = a.len();
    let mut a = a.clone();
    let mut c: Mat = (0..ncols)
        .map(|i| (0..ncols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut diag = Vec::new();
    for t in 0..m.min(ncols) {
        // smallest nonzero entry in the trailing block as pivot
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..ncols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (diag, c);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in c.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..ncols {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..ncols {
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..m {
                    let s = &q * &a[i][t];
                    a[i][j] -= s;
                }
                for row in c.iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..m).flat_map(|i| (t + 1..ncols).map(move |j| (i, j))).find(|&(i, j)| {
                !(&a[i][j] % &a[t][t]).is_zero()
            });
            match bad {
                Some((i, _)) => {
                    for j in t..ncols {
                        let s = a[i][j].clone();
                        a[t][j] += s;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    (diag, c)
}

/// Period of b/ℓ modulo NS_Q + Z^r, for saturated NS rows.
pub fn period(ns: &Mat, b: &[BigInt], ell: u64, rank: usize) -> u64 {
    let ell_b = BigInt::from(ell);
    if ns.is_empty() {
        let g = content(b).gcd(&ell_b);
        return (ell_b / g).try_into().unwrap();
    }
    let (d, c) = smith(ns, rank);
    assert!(d.iter().all(|x| x.is_one()), "NS must be saturated");
    let rho = d.len();
    let bc: Vec<BigInt> = (0..rank).map(|j| (0..rank).map(|i| &b[i] * &c[i][j]).sum()).collect();
    let g = content(&bc[rho..]).gcd(&ell_b);
    (ell_b / g).try_into().unwrap()
}

/// v = (h2 part, r, s) is a Hodge class iff a + r·b/ℓ ∈ NS_Q.
pub fn is_hodge(ns: &Mat, b: &[BigInt], ell: u64, v: &[BigInt]) -> bool {
    let rank = b.len();
    let r = &v[rank];
    let x: Vec<BigRational> = (0..rank)
        .map(|i| BigRational::from_integer(v[i].clone()) + BigRational::new(r * &b[i], BigInt::from(ell)))
        .collect();
    // x ∈ NS_Q iff x is orthogonal (dot product) to the kernel of NS
    rational_kernel(ns, rank)
        .iter()
        .all(|k| k.iter().zip(&x).map(|(a, b)| a * b).sum::<BigRational>().is_zero())
}

/// Permanent by expansion over permutations.
pub fn permanent(a: &Mat) -> BigInt {
    fn go(a: &Mat, row: usize, used: &mut Vec<bool>) -> BigInt {
        if row == a.len() {
            return BigInt::one();
        }
        let mut s = BigInt::zero();
        for j in 0..a.len() {
            if !used[j] && !a[row][j].is_zero() {
                used[j] = true;
                s += &a[row][j] * go(a, row + 1, used);
                used[j] = false;
            }
        }
        s
    }
    go(a, 0, &mut vec![false; a.len()])
}
