//! Integral quadratic forms over `Z`, stored as doubled Gram matrices.
//!
//! `Q(x) = x^T A x / 2` with `A` symmetric, even diagonal and positive
//! semidefinite. Representation, theta prefixes and truants all run on the
//! positive definite quotient by the radical.

mod enumerate;
pub(crate) mod exact;
pub mod isometry;
pub(crate) mod reduce;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use enumerate::Enumerator;
pub use exact::{determinant, psd_rank};
pub use isometry::{find_isometry, is_isometric, represents_form};

use crate::error::{Error, Result};
use reduce::{column_echelon, congruence, lll, mat_mul, Mat};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZQuadForm {
    dim: usize,
    doubled: Vec<Vec<BigInt>>,
    classical: bool,
    rank: usize,
}

impl ZQuadForm {
    /// Builds a form from its doubled Gram matrix, checking symmetry, even
    /// diagonal and positive semidefiniteness.
    pub fn from_doubled(doubled: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = doubled.len();
        for (i, row) in doubled.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::LengthMismatch { expected: dim, got: row.len() });
            }
            if row[i].is_odd() {
                return Err(Error::OddDiagonal(i));
            }
            for j in 0..i {
                if doubled[j][i] != row[j] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        let rank = psd_rank(&doubled).ok_or(Error::NotPositiveSemidefinite)?;
        let classical = doubled.iter().flatten().all(|v| v.is_even());
        Ok(ZQuadForm { dim, doubled, classical, rank })
    }

    pub fn from_doubled_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_doubled(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    /// From an integral (classical) Gram matrix `G`, i.e. `Q(x) = x^T G x`.
    pub fn from_gram_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_doubled(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(2 * v)).collect()).collect())
    }

    /// Diagonal form `<d_1, ..., d_n>_Z`.
    pub fn diagonal(d: &[i64]) -> Result<Self> {
        let n = d.len();
        let rows: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
        Self::from_gram_i64(&rows)
    }

    pub fn orthogonal_sum(&self, other: &ZQuadForm) -> ZQuadForm {
        let n = self.dim + other.dim;
        let mut a = vec![vec![BigInt::zero(); n]; n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                a[i][j] = self.doubled[i][j].clone();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                a[self.dim + i][self.dim + j] = other.doubled[i][j].clone();
            }
        }
        ZQuadForm::from_doubled(a).expect("orthogonal sum of PSD forms is PSD")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn doubled_gram(&self) -> &[Vec<BigInt>] {
        &self.doubled
    }

    pub fn is_classical(&self) -> bool {
        self.classical
    }

    pub fn is_definite(&self) -> bool {
        self.rank == self.dim
    }

    /// Determinant of the doubled Gram matrix.
    pub fn doubled_determinant(&self) -> BigInt {
        determinant(&self.doubled)
    }

    pub fn eval(&self, x: &[BigInt]) -> Result<BigInt> {
        if x.len() != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, got: x.len() });
        }
        let mut s = BigInt::zero();
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                s += &self.doubled[i][j] * &x[i] * &x[j];
            }
        }
        Ok(s / 2)
    }

    /// Positive definite form on the quotient by the radical. Definite input
    /// is returned unchanged.
    pub fn definite_part(&self) -> ZQuadForm {
        if self.is_definite() {
            return self.clone();
        }
        self.prepare().form
    }

    /// Definite, LLL-reduced quotient together with the map back to the
    /// original coordinates and a ready enumerator.
    pub fn prepare(&self) -> PreparedForm {
        let (u, r) = if self.is_definite() { (reduce::identity(self.dim), self.dim) } else { column_echelon(&self.doubled) };
        debug_assert_eq!(r, self.rank);
        let embed0: Mat = u.iter().map(|row| row[..r].to_vec()).collect();
        let quotient = congruence(&self.doubled, &embed0);
        let (reduced, t) = lll(&quotient);
        let embed = mat_mul(&embed0, &t);
        let form = ZQuadForm { dim: r, doubled: reduced, classical: self.classical, rank: r };
        let enumerator = Enumerator::new(&form.doubled);
        PreparedForm { form, embed, enumerator }
    }

    /// Witness `x` with `Q(x) = k`, if one exists.
    pub fn represents(&self, k: &BigInt) -> Option<Vec<BigInt>> {
        self.prepare().represents(k)
    }

    pub fn theta_prefix(&self, bound: u64) -> ThetaPrefix {
        self.prepare().theta_prefix(bound)
    }

    /// Smallest `k` in `1..=limit` not represented.
    pub fn truant(&self, limit: u64) -> Option<u64> {
        self.prepare().truant(limit)
    }
}

impl fmt::Display for ZQuadForm {
    /// `d=<n>; row; row; ...` with comma-separated doubled entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}", self.dim)?;
        for row in &self.doubled {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "; {}", cells.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for ZQuadForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(';').map(str::trim);
        let header = parts.next().ok_or_else(|| Error::Parse("empty form".into()))?;
        let d: usize = header
            .strip_prefix("d=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header '{}'", header)))?;
        let rows: Vec<Vec<BigInt>> = parts
            .filter(|p| !p.is_empty())
            .map(|row| {
                row.split(',')
                    .map(|c| BigInt::from_str(c.trim()).map_err(|_| Error::Parse(format!("bad entry '{}'", c))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        if rows.len() != d {
            return Err(Error::Parse(format!("expected {} rows, found {}", d, rows.len())));
        }
        ZQuadForm::from_doubled(rows)
    }
}

/// A definite reduced form plus the embedding `x = E y` into the source coordinates.
#[derive(Debug, Clone)]
pub struct PreparedForm {
    pub form: ZQuadForm,
    embed: Mat,
    enumerator: Enumerator,
}

impl PreparedForm {
    pub fn enumerator(&self) -> &Enumerator {
        &self.enumerator
    }

    /// Maps coordinates on the definite quotient back to the source form.
    pub fn lift(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.embed
            .iter()
            .map(|row| row.iter().zip(y).map(|(e, v)| e * v).sum())
            .collect()
    }

    pub fn represents(&self, k: &BigInt) -> Option<Vec<BigInt>> {
        if k < &BigInt::zero() {
            return None;
        }
        self.enumerator.find(k).map(|y| self.lift(&y))
    }

    pub fn represents_u64(&self, k: u64) -> bool {
        self.enumerator.find(&BigInt::from(k)).is_some()
    }

    pub fn theta_prefix(&self, bound: u64) -> ThetaPrefix {
        ThetaPrefix { bound, counts: self.enumerator.counts(bound) }
    }

    pub fn truant(&self, limit: u64) -> Option<u64> {
        (1..=limit).find(|&k| !self.represents_u64(k))
    }

    /// All `k` in `1..=bound` that are not represented.
    pub fn excluded(&self, bound: u64) -> Vec<u64> {
        // Low dimensions: one theta pass is cheaper than per-integer searches.
        if self.form.dim <= 3 && bound <= 20_000 {
            let counts = self.enumerator.counts(bound);
            return (1..=bound).filter(|&k| counts[k as usize] == 0).collect();
        }
        (1..=bound).filter(|&k| !self.represents_u64(k)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaPrefix {
    pub bound: u64,
    pub counts: Vec<u64>,
}

impl ThetaPrefix {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,count\n");
        for (k, c) in self.counts.iter().enumerate() {
            s.push_str(&format!("{},{}\n", k, c));
        }
        s
    }

    /// Represented integers in `1..=bound`.
    pub fn represented(&self) -> Vec<u64> {
        (1..=self.bound).filter(|&k| self.counts[k as usize] > 0).collect()
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn validation() {
        assert!(matches!(ZQuadForm::from_doubled_i64(&[vec![1]]), Err(Error::OddDiagonal(0))));
        assert!(matches!(
            ZQuadForm::from_doubled_i64(&[vec![2, 1], vec![0, 2]]),
            Err(Error::NotSymmetric(1, 0))
        ));
        assert!(matches!(
            ZQuadForm::from_doubled_i64(&[vec![2, 3], vec![3, 2]]),
            Err(Error::NotPositiveSemidefinite)
        ));
        let f = ZQuadForm::from_doubled_i64(&[vec![2, 1], vec![1, 4]]).unwrap();
        assert!(!f.is_classical());
        assert!(ZQuadForm::diagonal(&[1, 2]).unwrap().is_classical());
    }

    #[test]
    fn definite_part_examples() {
        let f = ZQuadForm::from_doubled_i64(&[vec![2, 2], vec![2, 2]]).unwrap();
        let d = f.definite_part();
        assert_eq!(d.doubled_gram(), &[vec![b(2)]]);
        let g = ZQuadForm::diagonal(&[1, 2]).unwrap();
        assert_eq!(g.definite_part(), g);
    }

    #[test]
    fn represents_examples() {
        let f = ZQuadForm::diagonal(&[1, 1, 1]).unwrap();
        assert!(f.represents(&b(7)).is_none());
        let w = f.represents(&b(6)).unwrap();
        assert_eq!(f.eval(&w).unwrap(), b(6));
        let one = ZQuadForm::diagonal(&[1]).unwrap();
        assert_eq!(one.represents(&b(0)), Some(vec![b(0)]));
        assert!(one.represents(&b(-1)).is_none());
    }

    #[test]
    fn semidefinite_witnesses_lift() {
        let f = ZQuadForm::from_doubled_i64(&[vec![2, 2, 0], vec![2, 2, 0], vec![0, 0, 6]]).unwrap();
        assert_eq!(f.rank(), 2);
        for k in 0..20 {
            if let Some(w) = f.represents(&b(k)) {
                assert_eq!(f.eval(&w).unwrap(), b(k));
            }
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(ZQuadForm::diagonal(&[1, 1]).unwrap().theta_prefix(2).counts, vec![1, 4, 4]);
        assert_eq!(ZQuadForm::diagonal(&[1]).unwrap().theta_prefix(4).counts, vec![1, 2, 0, 0, 2]);
        let f = ZQuadForm::from_doubled_i64(&[vec![2, 1], vec![1, 4]]).unwrap();
        let t = f.theta_prefix(2);
        assert_eq!((t.counts[1], t.counts[2]), (2, 4));
    }

    #[test]
    fn truant_examples() {
        assert_eq!(ZQuadForm::diagonal(&[1, 1]).unwrap().truant(100), Some(3));
        assert_eq!(ZQuadForm::diagonal(&[1, 2, 5]).unwrap().truant(100), Some(10));
        assert_eq!(ZQuadForm::diagonal(&[1, 1, 1, 1]).unwrap().truant(200), None);
    }

    #[test]
    fn text_round_trip() {
        let f = ZQuadForm::from_doubled_i64(&[vec![2, 1], vec![1, 4]]).unwrap();
        let s = f.to_string();
        assert_eq!(s, "d=2; 2,1; 1,4");
        assert_eq!(s.parse::<ZQuadForm>().unwrap(), f);
        assert!("d=3; 2,0; 0,2".parse::<ZQuadForm>().is_err());
        assert!("x=1; 2".parse::<ZQuadForm>().is_err());
    }

    #[test]
    fn theta_csv() {
        let t = ZQuadForm::diagonal(&[1]).unwrap().theta_prefix(2);
        assert_eq!(t.to_csv(), "k,count\n0,1\n1,2\n2,0\n");
    }
}
