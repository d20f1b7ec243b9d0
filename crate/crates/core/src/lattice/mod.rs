//! Integral lattices given by a symmetric Gram matrix on the standard basis.

mod isotropic;
mod sublattice;

pub use isotropic::{find_isotropic, find_isotropic_escalating, find_isotropic_where, IsotropicSearch};
pub use sublattice::{sublattice_index, Sublattice};

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{content, int};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};

#[derive(Clone)]
pub struct IntLattice {
    gram: IntMatrix,
    det: OnceLock<BigInt>,
}

impl fmt::Debug for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntLattice").field("gram", &self.gram).finish()
    }
}

impl PartialEq for IntLattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl Eq for IntLattice {}

impl IntLattice {
    /// Builds a lattice from a square symmetric Gram matrix.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(Self { gram, det: OnceLock::new() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(crate::arith::imat(rows))
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn det(&self) -> &BigInt {
        self.det.get_or_init(|| linalg::det(&self.gram))
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    /// |det(gram)|.
    pub fn discriminant(&self) -> BigInt {
        self.det().abs()
    }

    fn check(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: v.len() });
        }
        Ok(())
    }

    /// The row vector v·G.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let n = self.rank();
        let mut out = vec![BigInt::zero(); n];
        for (vi, row) in v.iter().zip(&self.gram) {
            if vi.is_zero() {
                continue;
            }
            for (o, g) in out.iter_mut().zip(row) {
                if !g.is_zero() {
                    *o += vi * g;
                }
            }
        }
        out
    }

    pub fn pair(&self, v: &[BigInt], w: &[BigInt]) -> Result<BigInt> {
        self.check(v)?;
        self.check(w)?;
        Ok(self.pair_unchecked(v, w))
    }

    pub fn square(&self, v: &[BigInt]) -> Result<BigInt> {
        self.pair(v, v)
    }

    pub(crate) fn pair_unchecked(&self, v: &[BigInt], w: &[BigInt]) -> BigInt {
        linalg::dot(&self.apply(v), w)
    }

    pub(crate) fn square_unchecked(&self, v: &[BigInt]) -> BigInt {
        self.pair_unchecked(v, v)
    }

    /// Positive generator of the ideal q(v, L).
    pub fn divisibility(&self, v: &[BigInt]) -> Result<BigInt> {
        self.check(v)?;
        if v.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        let d = content(&self.apply(v));
        if d.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(d)
    }

    pub fn is_primitive(&self, v: &[BigInt]) -> Result<bool> {
        self.check(v)?;
        let c = content(v);
        if c.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(c == int(1))
    }

    pub fn direct_sum(&self, other: &IntLattice) -> IntLattice {
        let (a, b) = (self.rank(), other.rank());
        let mut gram = vec![vec![BigInt::zero(); a + b]; a + b];
        for i in 0..a {
            gram[i][..a].clone_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            gram[a + i][a..].clone_from_slice(&other.gram[i]);
        }
        IntLattice { gram, det: OnceLock::new() }
    }

    pub fn direct_sum_all(parts: &[IntLattice]) -> IntLattice {
        parts
            .iter()
            .skip(1)
            .fold(parts.first().cloned().unwrap_or_else(|| IntLattice::new(Vec::new()).unwrap()), |acc, p| {
                acc.direct_sum(p)
            })
    }

    /// Unit vector e_i of this lattice.
    pub fn basis_vector(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rank()];
        v[i] = int(1);
        v
    }

    /// Gram matrix of the rows of `basis`.
    pub fn restricted_gram(&self, basis: &[Vec<BigInt>]) -> IntMatrix {
        let images: Vec<Vec<BigInt>> = basis.iter().map(|b| self.apply(b)).collect();
        images
            .iter()
            .map(|gb| basis.iter().map(|c| linalg::dot(gb, c)).collect())
            .collect()
    }
}

/// Named lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeKind {
    U,
    E8Neg,
    K3,
    K3n(u64),
    Diag(Vec<i64>),
}

impl FromStr for LatticeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        match lower.as_str() {
            "u" => return Ok(LatticeKind::U),
            "e8neg" | "e8(-1)" => return Ok(LatticeKind::E8Neg),
            "k3" => return Ok(LatticeKind::K3),
            _ => {}
        }
        let inner = |prefix: &str| -> Option<&str> {
            lower.strip_prefix(prefix).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'))
        };
        if let Some(arg) = inner("k3n") {
            let n: u64 = arg.trim().parse().map_err(|_| Error::UnknownKind(t.to_string()))?;
            return Ok(LatticeKind::K3n(n));
        }
        if let Some(arg) = inner("diag") {
            let entries: std::result::Result<Vec<i64>, _> = arg.split(',').map(|x| x.trim().parse()).collect();
            return entries.map(LatticeKind::Diag).map_err(|_| Error::UnknownKind(t.to_string()));
        }
        Err(Error::UnknownKind(t.to_string()))
    }
}

/// E8 with negated form, Bourbaki ordering.
fn e8_negative() -> IntMatrix {
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for &(a, b) in &[(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)] {
        g[a][b] = 1;
        g[b][a] = 1;
    }
    g.into_iter().map(|r| r.into_iter().map(int).collect()).collect()
}

pub fn standard_lattice(kind: &LatticeKind) -> Result<IntLattice> {
    let u = || IntLattice::from_i64(&[&[0, -1], &[-1, 0]]).unwrap();
    let e8 = || IntLattice::new(e8_negative()).unwrap();
    let k3 = || IntLattice::direct_sum_all(&[u(), u(), u(), e8(), e8()]);
    Ok(match kind {
        LatticeKind::U => u(),
        LatticeKind::E8Neg => e8(),
        LatticeKind::K3 => k3(),
        LatticeKind::K3n(n) => {
            if *n < 2 {
                return Err(Error::Precondition(format!("K3n requires n >= 2, got {n}")));
            }
            let d = -(2 * (*n as i64) - 2);
            k3().direct_sum(&IntLattice::from_i64(&[&[d]]).unwrap())
        }
        LatticeKind::Diag(entries) => {
            if entries.is_empty() {
                return Err(Error::UnknownKind("diag()".into()));
            }
            let n = entries.len();
            let gram = (0..n)
                .map(|i| (0..n).map(|j| if i == j { int(entries[i]) } else { BigInt::zero() }).collect())
                .collect();
            IntLattice::new(gram)?
        }
    })
}

impl Serialize for IntLattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IntLattice", 2)?;
        st.serialize_field("gram", &crate::json::IntMatrixJson(&self.gram))?;
        st.serialize_field("rank", &self.rank())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for IntLattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rank: usize,
            #[serde(deserialize_with = "crate::json::de_int_matrix")]
            gram: IntMatrix,
        }
        let raw = Raw::deserialize(d)?;
        if raw.gram.len() != raw.rank {
            return Err(serde::de::Error::custom(format!(
                "rank {} does not match gram size {}",
                raw.rank,
                raw.gram.len()
            )));
        }
        IntLattice::new(raw.gram).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ivec;

    #[test]
    fn standard_constructors() {
        let u = standard_lattice(&LatticeKind::U).unwrap();
        assert_eq!(u.rank(), 2);
        assert_eq!(*u.det(), int(-1));
        assert_eq!(u.pair(&ivec(&[1, 0]), &ivec(&[0, 1])).unwrap(), int(-1));
        let e8 = standard_lattice(&LatticeKind::E8Neg).unwrap();
        assert_eq!(*e8.det(), int(1));
        let k3n = standard_lattice(&LatticeKind::K3n(2)).unwrap();
        assert_eq!(k3n.rank(), 23);
        assert_eq!(k3n.discriminant(), int(2));
        assert!(standard_lattice(&LatticeKind::K3n(1)).is_err());
        let d = standard_lattice(&LatticeKind::Diag(vec![2, -6])).unwrap();
        assert_eq!(d.discriminant(), int(12));
    }

    #[test]
    fn parse_kinds() {
        assert_eq!("K3n(3)".parse::<LatticeKind>().unwrap(), LatticeKind::K3n(3));
        assert_eq!("diag(2,-2)".parse::<LatticeKind>().unwrap(), LatticeKind::Diag(vec![2, -2]));
        assert!("foo".parse::<LatticeKind>().is_err());
    }

    #[test]
    fn pairing_and_divisibility() {
        let u = standard_lattice(&LatticeKind::U).unwrap();
        assert_eq!(u.square(&ivec(&[1, -1])).unwrap(), int(2));
        assert_eq!(u.pair(&ivec(&[3, 4]), &ivec(&[0, 0])).unwrap(), int(0));
        assert_eq!(u.divisibility(&ivec(&[1, 0])).unwrap(), int(1));
        assert!(u.divisibility(&ivec(&[0, 0])).is_err());
        assert!(u.pair(&ivec(&[1]), &ivec(&[1, 0])).is_err());
        let k3n = standard_lattice(&LatticeKind::K3n(3)).unwrap();
        assert_eq!(k3n.divisibility(&k3n.basis_vector(22)).unwrap(), int(4));
        let d = standard_lattice(&LatticeKind::Diag(vec![-2])).unwrap();
        assert_eq!(d.divisibility(&ivec(&[1])).unwrap(), int(2));
    }

    #[test]
    fn primitivity() {
        let u = standard_lattice(&LatticeKind::U).unwrap();
        assert!(u.is_primitive(&ivec(&[1, 0])).unwrap());
        assert!(!u.is_primitive(&ivec(&[2, 0])).unwrap());
        let k3n = standard_lattice(&LatticeKind::K3n(2)).unwrap();
        let mut v = vec![BigInt::zero(); 23];
        v[0] = int(3);
        v[22] = int(2);
        assert!(k3n.is_primitive(&v).unwrap());
    }

    #[test]
    fn rejects_asymmetric() {
        assert_eq!(IntLattice::from_i64(&[&[0, 1], &[2, 0]]), Err(Error::NotSymmetric));
    }

    #[test]
    fn json_roundtrip() {
        let u = standard_lattice(&LatticeKind::U).unwrap();
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"{"gram":[[0,-1],[-1,0]],"rank":2}"#);
        let back: IntLattice = serde_json::from_str(&s).unwrap();
        assert_eq!(back, u);
    }
}
