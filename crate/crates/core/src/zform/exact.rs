//! Integer kernels shared by the enumeration and PSD code.
//!
//! Everything runs first on `i128` with checked arithmetic; any overflow makes
//! the caller retry on `BigInt`. Results never depend on which path ran.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) trait ExactInt: Clone + Ord + std::fmt::Debug {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn from_i64(v: i64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// Exact quotient; callers guarantee divisibility.
    fn div_exact(&self, o: &Self) -> Self;
    fn div_floor(&self, o: &Self) -> Self;
    fn div_ceil(&self, o: &Self) -> Self;
    fn isqrt(&self) -> Self;
    fn gcd(&self, o: &Self) -> Self;
    fn is_neg(&self) -> bool;
    fn is_nil(&self) -> bool;
}

impl ExactInt for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn div_ceil(&self, o: &Self) -> Self {
        -Integer::div_floor(&-self, o)
    }
    fn isqrt(&self) -> Self {
        Roots::sqrt(self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
}

impl ExactInt for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn div_ceil(&self, o: &Self) -> Self {
        -Integer::div_floor(&-self, o)
    }
    fn isqrt(&self) -> Self {
        Roots::sqrt(self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
}

pub(crate) fn convert<T: ExactInt>(m: &[Vec<BigInt>]) -> Option<Vec<Vec<T>>> {
    m.iter().map(|row| row.iter().map(T::from_big).collect()).collect()
}

/// Symmetric elimination with positive pivots. Returns the rank when the
/// matrix is positive semidefinite, `Some(None)` when it is not, and `None`
/// on arithmetic overflow.
fn psd_rank_generic<T: ExactInt>(mut a: Vec<Vec<T>>) -> Option<Option<usize>> {
    let n = a.len();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    while !alive.is_empty() {
        // choose the first positive diagonal among remaining indices
        let mut pivot = None;
        for &i in &alive {
            if a[i][i].is_neg() {
                return Some(None);
            }
            if !a[i][i].is_nil() && pivot.is_none() {
                pivot = Some(i);
            }
        }
        let p = match pivot {
            Some(p) => p,
            None => {
                // all remaining diagonals vanish: PSD only if the block is zero
                for &i in &alive {
                    for &j in &alive {
                        if !a[i][j].is_nil() {
                            return Some(None);
                        }
                    }
                }
                return Some(Some(rank));
            }
        };
        rank += 1;
        alive.retain(|&i| i != p);
        let pp = a[p][p].clone();
        let mut g: Option<T> = None;
        for &i in &alive {
            for &j in &alive {
                if j < i {
                    continue;
                }
                let v = pp.mul(&a[i][j])?.sub(&a[i][p].mul(&a[p][j])?)?;
                a[i][j] = v.clone();
                a[j][i] = v.clone();
                g = Some(match g {
                    None => v.gcd(&v),
                    Some(g) => g.gcd(&v),
                });
            }
        }
        if let Some(g) = g {
            if !g.is_nil() && g != T::from_i64(1) {
                for &i in &alive {
                    for &j in &alive {
                        a[i][j] = a[i][j].div_exact(&g);
                    }
                }
            }
        }
    }
    Some(Some(rank))
}

/// Rank of a symmetric integer matrix if it is positive semidefinite.
pub fn psd_rank(a: &[Vec<BigInt>]) -> Option<usize> {
    if let Some(small) = convert::<i128>(a) {
        if let Some(r) = psd_rank_generic(small) {
            return r;
        }
    }
    psd_rank_generic(a.to_vec()).expect("bigint arithmetic cannot overflow")
}

/// Determinant by fraction-free Gaussian elimination (Bareiss).
pub fn determinant(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut m = a.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}
