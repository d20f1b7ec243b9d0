//! Exact linear algebra over Z and Q.
//!
//! Everything here works on plain row-major `Vec<Vec<_>>` matrices. Hermite
//! and Smith reductions pick the pivot of smallest absolute value, breaking
//! ties by the lowest row index, so results are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{ext_gcd, lcm_denominators, rat};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn to_rational(m: &[Vec<BigInt>]) -> RatMatrix {
    m.iter().map(|r| r.iter().map(rat).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|r| dot(r, v)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Σ c_i · rows_i.
pub fn combine(coeffs: &[BigInt], rows: &[Vec<BigInt>], ncols: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); ncols];
    for (c, r) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(r) {
            *o += c * x;
        }
    }
    out
}

/// Reduced row echelon form over Q. Returns the nonzero rows and their pivot
/// columns.
pub fn rref(mut m: RatMatrix, ncols: usize) -> (RatMatrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_rat(m: &[Vec<BigRational>], ncols: usize) -> usize {
    rref(m.to_vec(), ncols).1.len()
}

pub fn rank_int(m: &[Vec<BigInt>], ncols: usize) -> usize {
    rank_rat(&to_rational(m), ncols)
}

/// Basis of {x ∈ Q^n : A x = 0}, one vector per free column.
pub fn nullspace(a: &[Vec<BigRational>], ncols: usize) -> RatMatrix {
    let (r, pivots) = rref(a.to_vec(), ncols);
    let mut out = Vec::new();
    for j in (0..ncols).filter(|j| !pivots.contains(j)) {
        let mut x = vec![BigRational::zero(); ncols];
        x[j] = BigRational::one();
        for (row, &p) in r.iter().zip(&pivots) {
            x[p] = -row[j].clone();
        }
        out.push(x);
    }
    out
}

/// Solves A x = b over Q, returning one solution (free variables zero).
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational], ncols: usize) -> Option<Vec<BigRational>> {
    let aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn sub_multiple(target: &mut [BigInt], src: &[BigInt], q: &BigInt, from: usize) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target[from..].iter_mut().zip(&src[from..]) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

fn smallest_nonzero_in_column(a: &[Vec<BigInt>], col: usize, from: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in from..a.len() {
        if a[i][col].is_zero() {
            continue;
        }
        match best {
            Some(b) if a[b][col].abs() <= a[i][col].abs() => {}
            _ => best = Some(i),
        }
    }
    best
}

fn hnf_in_place(a: &mut IntMatrix, mut u: Option<&mut IntMatrix>, ncols: usize) -> usize {
    let m = a.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let mut found = false;
        while let Some(p) = smallest_nonzero_in_column(a, c, r) {
            found = true;
            a.swap(r, p);
            if let Some(u) = u.as_deref_mut() {
                u.swap(r, p);
            }
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (head, tail) = a.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[r], &q, c);
                if let Some(u) = u.as_deref_mut() {
                    let (uh, ut) = u.split_at_mut(i);
                    sub_multiple(&mut ut[0], &uh[r], &q, 0);
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !found {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
            if let Some(u) = u.as_deref_mut() {
                for x in u[r].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        for i in 0..r {
            if a[i][c].is_zero() {
                continue;
            }
            let q = a[i][c].div_floor(&a[r][c]);
            let (head, tail) = a.split_at_mut(r);
            sub_multiple(&mut head[i], &tail[0], &q, c);
            if let Some(u) = u.as_deref_mut() {
                let (uh, ut) = u.split_at_mut(r);
                sub_multiple(&mut uh[i], &ut[0], &q, 0);
            }
        }
        r += 1;
    }
    r
}

/// Row-style Hermite normal form; returns only the nonzero rows.
pub fn hnf(rows: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    let mut a = rows.to_vec();
    let r = hnf_in_place(&mut a, None, ncols);
    a.truncate(r);
    a
}

/// Hermite normal form with a unimodular transform: `u · rows = h`. All rows
/// of `h` are returned, zero rows last; the first `rank` are nonzero.
pub fn hnf_with_transform(rows: &[Vec<BigInt>], ncols: usize) -> (IntMatrix, IntMatrix, usize) {
    let m = rows.len();
    let mut a = rows.to_vec();
    let mut u: IntMatrix = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let r = hnf_in_place(&mut a, Some(&mut u), ncols);
    (a, u, r)
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn smith_diagonal(rows: &[Vec<BigInt>], ncols: usize) -> Vec<BigInt> {
    let mut a = rows.to_vec();
    let m = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m && t < ncols {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..ncols {
                if a[i][j].is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            let (head, tail) = a.split_at_mut(i);
            sub_multiple(&mut tail[0], &head[t], &q, t);
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..ncols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for row in a.iter_mut() {
                let v = &q * &row[t];
                row[j] -= v;
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // the pivot must divide the remaining block
        let p = a[t][t].clone();
        let bad = (t + 1..m).find(|&i| (t + 1..ncols).any(|j| !(&a[i][j] % &p).is_zero()));
        if let Some(i) = bad {
            let (head, tail) = a.split_at_mut(i);
            for (x, y) in head[t].iter_mut().zip(&tail[0]) {
                *x += y;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

fn max_bits(m: &[Vec<BigInt>]) -> u64 {
    m.iter().flatten().map(|x| x.bits()).max().unwrap_or(0)
}

/// Basis of {z ∈ Z^k : z·c ≡ 0 mod d for every column c of `cols`}, given
/// as HNF rows. `cols` holds the columns, each of length k.
fn congruence_kernel(k: usize, cols: &[Vec<BigInt>], d: &BigInt) -> IntMatrix {
    let mut basis: IntMatrix = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let bound = 2 * d.bits() + 64;
    for c in cols {
        let values: Vec<BigInt> = basis.iter().map(|b| dot(b, c).mod_floor(d)).collect();
        if values.iter().all(Zero::is_zero) {
            continue;
        }
        // Rows (b_i | v_i) plus a carrier row (0 | d); eliminate the last
        // column by 2×2 unimodular steps. The non-carrier rows then span the
        // kernel.
        let mut carrier_vec = vec![BigInt::zero(); k];
        let mut carrier_val = d.clone();
        let mut rows: Vec<(Vec<BigInt>, BigInt)> = basis.into_iter().zip(values).collect();
        for (vec, val) in rows.iter_mut() {
            if val.is_zero() {
                continue;
            }
            let (g, s, t) = ext_gcd(&carrier_val, val);
            let a = &carrier_val / &g;
            let b = &*val / &g;
            // new carrier = s·carrier + t·row ; new row = -b·carrier + a·row
            let new_carrier: Vec<BigInt> = carrier_vec.iter().zip(vec.iter()).map(|(x, y)| &s * x + &t * y).collect();
            let new_row: Vec<BigInt> = carrier_vec.iter().zip(vec.iter()).map(|(x, y)| -(&b * x) + &a * y).collect();
            carrier_vec = new_carrier;
            carrier_val = g;
            *vec = new_row;
            *val = BigInt::zero();
        }
        basis = rows.into_iter().map(|(v, _)| v).collect();
        if max_bits(&basis) > bound {
            basis.extend((0..k).map(|i| (0..k).map(|j| if i == j { d.clone() } else { BigInt::zero() }).collect()));
            basis = hnf(&basis, k);
        }
    }
    basis.extend((0..k).map(|i| (0..k).map(|j| if i == j { d.clone() } else { BigInt::zero() }).collect()));
    hnf(&basis, k)
}

/// HNF basis of (Q-span of `rows`) ∩ Z^n.
pub fn saturate(rows: &[Vec<BigRational>], ncols: usize) -> IntMatrix {
    let (r, pivots) = rref(rows.to_vec(), ncols);
    let k = r.len();
    if k == 0 {
        return Vec::new();
    }
    let d = r.iter().fold(BigInt::one(), |l, row| num_integer::Integer::lcm(&l, &lcm_denominators(row)));
    let cleared: IntMatrix = r
        .iter()
        .map(|row| row.iter().map(|x| (x * rat(&d)).to_integer()).collect())
        .collect();
    let cols: Vec<Vec<BigInt>> = (0..ncols)
        .filter(|j| !pivots.contains(j))
        .map(|j| cleared.iter().map(|row| row[j].clone()).collect())
        .filter(|c: &Vec<BigInt>| c.iter().any(|x| !x.is_zero()))
        .collect();
    let z = if d.is_one() {
        (0..k)
            .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect()
    } else {
        congruence_kernel(k, &cols, &d)
    };
    let out: IntMatrix = z
        .iter()
        .map(|zi| {
            (0..ncols)
                .map(|j| {
                    let s: BigInt = zi.iter().zip(&cleared).map(|(a, row)| a * &row[j]).sum();
                    debug_assert!((&s % &d).is_zero());
                    s / &d
                })
                .collect()
        })
        .collect();
    hnf(&out, ncols)
}

/// HNF basis of {x ∈ Z^n : A x = 0}.
pub fn integer_kernel(a: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    saturate(&nullspace(&to_rational(a), ncols), ncols)
}

/// Finds a ∈ Z^n with C a = y, if one exists.
pub fn solve_integer(c: &[Vec<BigInt>], y: &[BigInt], ncols: usize) -> Option<Vec<BigInt>> {
    let k = c.len();
    if k == 0 {
        return Some(vec![BigInt::zero(); ncols]);
    }
    // Row-reduce Cᵀ: U Cᵀ = H, so aᵀ = zᵀ U with zᵀ H = yᵀ.
    let ct = transpose(c, ncols);
    let (h, u, rank) = hnf_with_transform(&ct, k);
    let mut z = vec![BigInt::zero(); ncols];
    for i in 0..rank {
        let p = (0..k).find(|&j| !h[i][j].is_zero()).expect("nonzero HNF row");
        let partial: BigInt = (0..i).map(|j| &z[j] * &h[j][p]).sum();
        let rem = &y[p] - partial;
        if !(&rem % &h[i][p]).is_zero() {
            return None;
        }
        z[i] = rem / &h[i][p];
    }
    let check: Vec<BigInt> = (0..k).map(|col| (0..rank).map(|i| &z[i] * &h[i][col]).sum()).collect();
    if check != y {
        return None;
    }
    Some(combine(&z, &u, ncols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{imat, int, ivec, rat_vec};

    #[test]
    fn hnf_of_small_matrix() {
        let h = hnf(&imat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3);
        assert_eq!(h, imat(&[&[2, 4, 4], &[0, 6, 0], &[0, 0, 12]]));
    }

    #[test]
    fn hnf_transform_is_consistent() {
        let a = imat(&[&[3, 1], &[6, 2], &[1, 5]]);
        let (h, u, rank) = hnf_with_transform(&a, 2);
        assert_eq!(rank, 2);
        for i in 0..3 {
            let row = combine(&u[i], &a, 2);
            assert_eq!(row, h[i]);
        }
        assert_eq!(det(&u).abs(), int(1));
    }

    #[test]
    fn smith_of_diag_2_3() {
        assert_eq!(smith_diagonal(&imat(&[&[2, 0], &[0, 3]]), 2), ivec(&[1, 6]));
        assert_eq!(smith_diagonal(&imat(&[&[2, 4], &[6, 8]]), 2), ivec(&[2, 4]));
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&imat(&[&[0, -1], &[-1, 0]])), int(-1));
        assert_eq!(det(&imat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), int(-3));
        assert_eq!(det(&imat(&[&[0, 1], &[0, 2]])), int(0));
    }

    #[test]
    fn saturation_divides_content() {
        let s = saturate(&[rat_vec(&ivec(&[2, 2]))], 2);
        assert_eq!(s, imat(&[&[1, 1]]));
        let s = saturate(&to_rational(&imat(&[&[2, 0, 0], &[0, 3, 3]])), 3);
        assert_eq!(s, imat(&[&[1, 0, 0], &[0, 1, 1]]));
        // (0,1,2) = ((2,4,6) − 2(1,1,1))/2
        let s = saturate(&to_rational(&imat(&[&[2, 4, 6], &[1, 1, 1]])), 3);
        assert_eq!(s, imat(&[&[1, 0, -1], &[0, 1, 2]]));
    }

    #[test]
    fn kernel_and_solve() {
        let a = imat(&[&[1, 2, 3]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(&a[0], v), int(0));
        }
        let x = solve_integer(&imat(&[&[4, 6]]), &ivec(&[2]), 2).unwrap();
        assert_eq!(dot(&ivec(&[4, 6]), &x), int(2));
        assert!(solve_integer(&imat(&[&[4, 6]]), &ivec(&[3]), 2).is_none());
    }
}
