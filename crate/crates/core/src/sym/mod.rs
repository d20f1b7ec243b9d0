//! Symmetric powers Sⁿ(L) with the permanent pairing q⁽ⁿ⁾.
//!
//! Elements are sparse polynomials: a monomial x₁···xₙ is the sorted list of
//! base-basis indices, and the pairing of two monomials is the permanent of
//! [q(xᵢ, yⱼ)].

pub mod hodge;
pub mod permanent;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::arith::{binomial, factorial, rat};
use crate::error::{Error, Result};
use crate::json;
use crate::lattice::IntLattice;
use crate::par::*;

pub use hodge::{
    hodge_classes_sym, ind_sym, obstruction_modulus, qt_class, qt_in_mukai, rank_n, splitting_pair, w_class,
    SymHodgeLattice,
};

pub type Monomial = Vec<u32>;

pub const MAX_DEGREE: u32 = 6;
pub const DEFAULT_SIZE_CAP: usize = 5000;

/// Monomial cap, overridable through `MLK_SIZE_CAP`.
pub fn size_cap() -> usize {
    std::env::var("MLK_SIZE_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SIZE_CAP)
}

/// Number of degree-n monomials in `rank` variables.
pub fn monomial_count(rank: usize, n: u32) -> usize {
    let c = binomial(rank as u64 + n as u64 - 1, n as u64);
    crate::arith::to_u64(&c).map(|c| c as usize).unwrap_or(usize::MAX)
}

/// Sparse element of Sⁿ(L) ⊗ Q.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymVector {
    degree: u32,
    coeffs: BTreeMap<Monomial, BigRational>,
}

impl fmt::Debug for SymVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter().map(|(m, c)| (m, c.to_string()))).finish()
    }
}

impl SymVector {
    pub fn zero(degree: u32) -> Self {
        Self { degree, coeffs: BTreeMap::new() }
    }

    /// The empty product, 1 ∈ S⁰.
    pub fn one() -> Self {
        let mut v = Self::zero(0);
        v.coeffs.insert(Vec::new(), BigRational::one());
        v
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut m = m;
        m.sort_unstable();
        let mut v = Self::zero(m.len() as u32);
        v.coeffs.insert(m, BigRational::one());
        v
    }

    /// A degree-1 element from base coordinates.
    pub fn from_vector(v: &[BigInt]) -> Self {
        let mut out = Self::zero(1);
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out.coeffs.insert(vec![i as u32], rat(x));
            }
        }
        out
    }

    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Result<Self> {
        let mut out = Self::zero(degree);
        for (mut m, c) in terms {
            if m.len() != degree as usize {
                return Err(Error::DimensionMismatch { expected: degree as usize, got: m.len() });
            }
            m.sort_unstable();
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero(self.degree);
        }
        Self { degree: self.degree, coeffs: self.coeffs.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn scale_int(&self, s: &BigInt) -> Self {
        self.scale(&rat(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch { expected: self.degree as usize, got: other.degree as usize });
        }
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Product in the symmetric algebra.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &other.coeffs {
                let mut m = Vec::with_capacity(m1.len() + m2.len());
                m.extend_from_slice(m1);
                m.extend_from_slice(m2);
                m.sort_unstable();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// self^k in the symmetric algebra (multinomial expansion for degree 1).
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Pushes forward along the linear map sending basis vector i to `rows[i]`.
    pub fn substitute(&self, rows: &[Vec<BigInt>]) -> Self {
        let images: Vec<SymVector> = rows.iter().map(|r| SymVector::from_vector(r)).collect();
        let mut out = Self::zero(self.degree);
        for (m, c) in &self.coeffs {
            let mut prod = SymVector::one();
            for &i in m {
                prod = prod.mul(&images[i as usize]);
            }
            for (pm, pc) in prod.coeffs {
                out.add_term(pm, pc * c);
            }
        }
        out
    }

    pub fn max_index(&self) -> Option<u32> {
        self.coeffs.keys().filter_map(|m| m.last().copied()).max()
    }

    /// JSON object keyed by "[i,j,k]".
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (m, c) in &self.coeffs {
            let key = format!("[{}]", m.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","));
            map.insert(key, json::rational_to_value(c));
        }
        Value::Object(map)
    }
}

/// Sⁿ(L): monomial basis in graded-lex order and memoized permanent pairing.
pub struct SymLattice {
    base: Arc<IntLattice>,
    n: u32,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    cache: DashMap<(Monomial, Monomial), BigInt>,
    gram: OnceLock<Arc<IntLattice>>,
}

impl fmt::Debug for SymLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymLattice").field("rank", &self.base.rank()).field("n", &self.n).finish()
    }
}

fn enumerate_monomials(rank: usize, n: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n as usize);
    fn go(rank: u32, n: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..rank {
            cur.push(i);
            go(rank, n, i, cur, out);
            cur.pop();
        }
    }
    go(rank as u32, n as usize, 0, &mut cur, &mut out);
    out
}

impl SymLattice {
    pub fn new(base: Arc<IntLattice>, n: u32) -> Result<Self> {
        Self::with_cap(base, n, size_cap())
    }

    pub fn with_cap(base: Arc<IntLattice>, n: u32, cap: usize) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::Precondition(format!("symmetric degree must lie in 1..={MAX_DEGREE}, got {n}")));
        }
        let count = monomial_count(base.rank(), n);
        if count > cap {
            return Err(Error::SizeCapExceeded { monomials: count, cap });
        }
        let monomials = enumerate_monomials(base.rank(), n);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(Self { base, n, monomials, index, cache: DashMap::new(), gram: OnceLock::new() })
    }

    pub fn base(&self) -> &Arc<IntLattice> {
        &self.base
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Permanent of [q(xᵢ, yⱼ)] for monomials of equal degree.
    pub fn monomial_pair(&self, x: &[u32], y: &[u32]) -> BigInt {
        let key = if x <= y { (x.to_vec(), y.to_vec()) } else { (y.to_vec(), x.to_vec()) };
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let g = self.base.gram();
        let m: Vec<Vec<BigInt>> =
            x.iter().map(|&i| y.iter().map(|&j| g[i as usize][j as usize].clone()).collect()).collect();
        let v = permanent::permanent(&m);
        self.cache.insert(key, v.clone());
        v
    }

    /// q⁽ᵈ⁾(u, v) for u, v of the same degree d (any d, not only n).
    pub fn pair(&self, u: &SymVector, v: &SymVector) -> Result<BigRational> {
        if u.degree != v.degree {
            return Err(Error::DimensionMismatch { expected: u.degree as usize, got: v.degree as usize });
        }
        let r = self.base.rank() as u32;
        for w in [u, v] {
            if let Some(i) = w.max_index() {
                if i >= r {
                    return Err(Error::DimensionMismatch { expected: r as usize, got: i as usize + 1 });
                }
            }
        }
        let uterms: Vec<(&Monomial, &BigRational)> = u.coeffs.iter().collect();
        let total: BigRational = uterms
            .par_iter()
            .map(|(mu, cu)| {
                let mut acc = BigRational::zero();
                for (mv, cv) in &v.coeffs {
                    let p = self.monomial_pair(mu, mv);
                    if !p.is_zero() {
                        acc += rat(&p) * *cu * cv;
                    }
                }
                acc
            })
            .sum();
        Ok(total)
    }

    /// Dense integer coordinates over the monomial basis.
    pub fn dense(&self, v: &SymVector) -> Result<Vec<BigRational>> {
        if v.degree != self.n {
            return Err(Error::DimensionMismatch { expected: self.n as usize, got: v.degree as usize });
        }
        let mut out = vec![BigRational::zero(); self.dim()];
        for (m, c) in &v.coeffs {
            let i = self.index_of(m).ok_or(Error::DimensionMismatch { expected: self.base.rank(), got: 0 })?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    pub fn from_dense(&self, coords: &[BigInt]) -> SymVector {
        let mut out = SymVector::zero(self.n);
        for (m, c) in self.monomials.iter().zip(coords) {
            out.add_term(m.clone(), rat(c));
        }
        out
    }

    /// Full Gram matrix of q⁽ⁿ⁾ on the monomial basis, built in parallel.
    pub fn gram_lattice(&self) -> Arc<IntLattice> {
        self.gram
            .get_or_init(|| {
                let rows: Vec<Vec<BigInt>> = self
                    .monomials
                    .par_iter()
                    .map(|x| self.monomials.iter().map(|y| self.monomial_pair(x, y)).collect())
                    .collect();
                Arc::new(IntLattice::new(rows).expect("permanent pairing is symmetric"))
            })
            .clone()
    }
}

/// v⁽ⁿ⁾ as an element of Sⁿ.
pub fn sym_power_vec(v: &[BigInt], n: u32) -> SymVector {
    SymVector::from_vector(v).pow(n)
}

/// n! · q(a, b)ⁿ, the defining value of q⁽ⁿ⁾(a⁽ⁿ⁾, b⁽ⁿ⁾).
pub fn defining_value(l: &IntLattice, a: &[BigInt], b: &[BigInt], n: u32) -> BigInt {
    factorial(n as u64) * num_traits::pow(l.pair_unchecked(a, b), n as usize)
}
