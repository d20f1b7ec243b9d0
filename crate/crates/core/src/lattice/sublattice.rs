use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::IntLattice;
use crate::arith::{integral_vec, rat_vec};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};

/// A sublattice stored by independent basis rows in ambient coordinates.
#[derive(Debug, Clone)]
pub struct Sublattice {
    ambient: Arc<IntLattice>,
    basis: IntMatrix,
    saturated: bool,
}

impl Sublattice {
    pub fn new(ambient: Arc<IntLattice>, basis: IntMatrix) -> Result<Self> {
        let n = ambient.rank();
        for row in &basis {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        if linalg::rank_int(&basis, n) != basis.len() {
            return Err(Error::DependentRows);
        }
        Ok(Self { ambient, basis, saturated: false })
    }

    /// Sublattice generated by arbitrary (possibly dependent) rows.
    pub fn spanned_by(ambient: Arc<IntLattice>, rows: &[Vec<BigInt>]) -> Result<Self> {
        let n = ambient.rank();
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        let basis = linalg::hnf(rows, n);
        Ok(Self { ambient, basis, saturated: false })
    }

    pub(crate) fn certified(ambient: Arc<IntLattice>, basis: IntMatrix) -> Self {
        Self { ambient, basis, saturated: true }
    }

    pub fn full(ambient: Arc<IntLattice>) -> Self {
        let basis = (0..ambient.rank()).map(|i| ambient.basis_vector(i)).collect();
        Self::certified(ambient, basis)
    }

    pub fn ambient(&self) -> &Arc<IntLattice> {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// True only when saturation has been certified by construction.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn gram(&self) -> IntMatrix {
        self.ambient.restricted_gram(&self.basis)
    }

    pub fn as_lattice(&self) -> IntLattice {
        IntLattice::new(self.gram()).expect("restricted gram is symmetric")
    }

    pub fn discriminant(&self) -> BigInt {
        linalg::det(&self.gram()).abs()
    }

    /// (Q-span) ∩ ambient.
    pub fn saturation(&self) -> Sublattice {
        if self.saturated {
            return self.clone();
        }
        let rows: Vec<Vec<BigRational>> = self.basis.iter().map(|r| rat_vec(r)).collect();
        Self::certified(self.ambient.clone(), linalg::saturate(&rows, self.ambient.rank()))
    }

    /// {v : q(v, s) = 0 for all s in self}.
    pub fn orthogonal_complement(&self) -> Sublattice {
        let n = self.ambient.rank();
        if self.basis.is_empty() {
            return Self::full(self.ambient.clone());
        }
        let images: IntMatrix = self.basis.iter().map(|b| self.ambient.apply(b)).collect();
        Self::certified(self.ambient.clone(), linalg::integer_kernel(&images, n))
    }

    /// Rational coordinates of `v` in this basis, if v is in the Q-span.
    pub fn coords_of(&self, v: &[BigInt]) -> Option<Vec<BigRational>> {
        let n = self.ambient.rank();
        let bt = linalg::transpose(&linalg::to_rational(&self.basis), n);
        linalg::solve_rational(&bt, &rat_vec(v), self.rank())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords_of(v).and_then(|c| integral_vec(&c)).is_some()
    }

    pub fn to_ambient(&self, coords: &[BigInt]) -> Vec<BigInt> {
        linalg::combine(coords, &self.basis, self.ambient.rank())
    }

    /// Sum of two sublattices of the same ambient lattice.
    pub fn join(&self, other: &Sublattice) -> Result<Sublattice> {
        self.same_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::spanned_by(self.ambient.clone(), &rows)
    }

    /// Whether both row lattices coincide.
    pub fn same_span(&self, other: &Sublattice) -> bool {
        let n = self.ambient.rank();
        linalg::hnf(&self.basis, n) == linalg::hnf(&other.basis, n)
    }

    fn same_ambient(&self, other: &Sublattice) -> Result<()> {
        if Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.ambient.rank(), got: other.ambient.rank() })
        }
    }

    /// |self / sub| for sub ⊆ self of equal rank.
    pub fn index_of(&self, sub: &Sublattice) -> Result<BigInt> {
        self.same_ambient(sub)?;
        let mut change = Vec::with_capacity(sub.rank());
        for row in &sub.basis {
            let c = self.coords_of(row).ok_or(Error::NotContained)?;
            change.push(integral_vec(&c).ok_or(Error::NotContained)?);
        }
        if sub.rank() != self.rank() {
            return Err(Error::NotFiniteIndex);
        }
        let diag = linalg::smith_diagonal(&change, self.rank());
        if diag.len() != self.rank() {
            return Err(Error::NotFiniteIndex);
        }
        Ok(diag.iter().fold(BigInt::one(), |acc, d| acc * d))
    }
}

/// |A / B| for B ⊆ A of equal rank.
pub fn sublattice_index(a: &Sublattice, b: &Sublattice) -> Result<BigInt> {
    a.index_of(b)
}
