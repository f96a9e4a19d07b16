//! Exact arithmetic in the ring of integers of an imaginary quadratic field.
//!
//! The ring of integers of `Q(sqrt(-m))` is `Z[w]` where
//! `w = sqrt(-m)` when `m = 1, 2 (mod 4)` and `w = (1 + sqrt(-m))/2` when
//! `m = 3 (mod 4)`. Elements are stored as `a + b w` with arbitrary-precision
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OmegaKind {
    /// `w = sqrt(-m)`, `w^2 = -m`.
    Sqrt,
    /// `w = (1 + sqrt(-m))/2`, `w^2 = w - (1+m)/4`.
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadIntField {
    m: i64,
    omega_kind: OmegaKind,
}

fn kind_for(m: i64) -> OmegaKind {
    if m % 4 == 3 {
        OmegaKind::Half
    } else {
        OmegaKind::Sqrt
    }
}

fn square_factor(m: i64) -> Option<i64> {
    let mut p = 2i64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return Some(p);
        }
        p += 1;
    }
    None
}

/// Returns true when no prime square divides `m` (`m >= 1`).
pub fn is_square_free(m: i64) -> bool {
    m >= 1 && square_factor(m).is_none()
}

impl QuadIntField {
    pub fn new(m: i64) -> Result<Self> {
        if m <= 0 {
            return Err(Error::NonPositiveM(m));
        }
        if let Some(p) = square_factor(m) {
            return Err(Error::NotSquareFree { m, p });
        }
        Ok(Self { m, omega_kind: kind_for(m) })
    }

    /// Like [`QuadIntField::new`] but also checks a caller-supplied basis kind.
    pub fn with_kind(m: i64, omega_kind: OmegaKind) -> Result<Self> {
        let f = Self::new(m)?;
        if f.omega_kind != omega_kind {
            return Err(Error::OmegaKindMismatch(m));
        }
        Ok(f)
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn omega_kind(&self) -> OmegaKind {
        self.omega_kind
    }

    /// `(1+m)/4` for the half basis; unused otherwise.
    fn k(&self) -> i64 {
        (1 + self.m) / 4
    }

    pub fn zero(&self) -> QuadInt {
        self.int(0)
    }

    pub fn one(&self) -> QuadInt {
        self.int(1)
    }

    pub fn omega(&self) -> QuadInt {
        self.elem(0, 1)
    }

    pub fn int(&self, a: i64) -> QuadInt {
        self.elem(a, 0)
    }

    pub fn elem(&self, a: i64, b: i64) -> QuadInt {
        QuadInt { field: *self, a: BigInt::from(a), b: BigInt::from(b) }
    }

    pub fn elem_big(&self, a: BigInt, b: BigInt) -> QuadInt {
        QuadInt { field: *self, a, b }
    }

    /// The unit group of the ring of integers, in a fixed order starting with 1.
    pub fn units(&self) -> Vec<QuadInt> {
        match (self.m, self.omega_kind) {
            (1, _) => vec![self.int(1), self.int(-1), self.elem(0, 1), self.elem(0, -1)],
            // w = (1 + sqrt(-3))/2 is a primitive sixth root of unity.
            (3, _) => vec![
                self.int(1),
                self.int(-1),
                self.elem(0, 1),
                self.elem(0, -1),
                self.elem(-1, 1),
                self.elem(1, -1),
            ],
            _ => vec![self.int(1), self.int(-1)],
        }
    }

    /// Norm form `N(a + b w)` evaluated on machine integers.
    pub fn norm_form(&self, a: i64, b: i64) -> i64 {
        match self.omega_kind {
            OmegaKind::Sqrt => a * a + self.m * b * b,
            OmegaKind::Half => a * a + a * b + self.k() * b * b,
        }
    }

    /// All elements of norm exactly `t`, ordered lexicographically by `(b, a)`.
    pub fn solve_norm_equation(&self, t: &BigInt) -> Vec<QuadInt> {
        let mut out = Vec::new();
        if t.is_negative() {
            return out;
        }
        if t.is_zero() {
            out.push(self.zero());
            return out;
        }
        let m = BigInt::from(self.m);
        // Sqrt: m b^2 <= t.  Half: 4 N = (2a + b)^2 + m b^2, so m b^2 <= 4t.
        let scaled = match self.omega_kind {
            OmegaKind::Sqrt => t.clone(),
            OmegaKind::Half => t * 4,
        };
        let b_max = (&scaled / &m).sqrt();
        let mut b = -b_max.clone();
        while b <= b_max {
            let rest = &scaled - &m * &b * &b;
            if !rest.is_negative() {
                let s = rest.sqrt();
                if &s * &s == rest {
                    let roots: Vec<BigInt> = if s.is_zero() { vec![s.clone()] } else { vec![-s.clone(), s.clone()] };
                    for r in roots {
                        match self.omega_kind {
                            OmegaKind::Sqrt => out.push(self.elem_big(r, b.clone())),
                            OmegaKind::Half => {
                                let num = &r - &b;
                                if num.is_even() {
                                    out.push(self.elem_big(num / 2, b.clone()));
                                }
                            }
                        }
                    }
                }
            }
            b += 1;
        }
        out.sort_by(|x, y| (&x.b, &x.a).cmp(&(&y.b, &y.a)));
        out
    }

    /// All elements with norm at most `bound`, ordered by `(norm, b, a)`.
    pub fn elements_up_to_norm(&self, bound: i64) -> Vec<QuadInt> {
        let mut out = Vec::new();
        for t in 0..=bound.max(-1) {
            out.extend(self.solve_norm_equation(&BigInt::from(t)));
        }
        out
    }

    pub fn parse_elem(&self, s: &str) -> Result<QuadInt> {
        let (a, b) = parse_coeffs(s)?;
        Ok(self.elem_big(a, b))
    }
}

impl fmt::Display for QuadIntField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt(-{}))", self.m)
    }
}

/// An element `a + b w` of the ring of integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub(crate) field: QuadIntField,
    pub(crate) a: BigInt,
    pub(crate) b: BigInt,
}

impl QuadInt {
    pub fn field(&self) -> QuadIntField {
        self.field
    }

    /// Rational coordinate.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Coordinate along `w`.
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the element lies in `Z`.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn check(&self, other: &QuadInt) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch(self.field.m, other.field.m))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &QuadInt) -> Result<QuadInt> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &QuadInt) -> Result<QuadInt> {
        self.check(other)?;
        Ok(self.field.elem_big(&self.a - &other.a, &self.b - &other.b))
    }

    pub fn try_mul(&self, other: &QuadInt) -> Result<QuadInt> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &QuadInt) -> QuadInt {
        self.field.elem_big(&self.a + &other.a, &self.b + &other.b)
    }

    fn mul_unchecked(&self, other: &QuadInt) -> QuadInt {
        // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2
        let ac = &self.a * &other.a;
        let bd = &self.b * &other.b;
        let cross = &self.a * &other.b + &self.b * &other.a;
        match self.field.omega_kind {
            OmegaKind::Sqrt => self.field.elem_big(ac - bd * self.field.m, cross),
            OmegaKind::Half => {
                let k = self.field.k();
                self.field.elem_big(ac - &bd * k, cross + bd)
            }
        }
    }

    pub fn conj(&self) -> QuadInt {
        match self.field.omega_kind {
            OmegaKind::Sqrt => self.field.elem_big(self.a.clone(), -&self.b),
            // conj(w) = 1 - w
            OmegaKind::Half => self.field.elem_big(&self.a + &self.b, -&self.b),
        }
    }

    pub fn norm(&self) -> BigInt {
        match self.field.omega_kind {
            OmegaKind::Sqrt => &self.a * &self.a + &self.b * &self.b * self.field.m,
            OmegaKind::Half => {
                &self.a * &self.a + &self.a * &self.b + &self.b * &self.b * self.field.k()
            }
        }
    }

    pub fn trace(&self) -> BigInt {
        match self.field.omega_kind {
            OmegaKind::Sqrt => &self.a * 2,
            OmegaKind::Half => &self.a * 2 + &self.b,
        }
    }

    pub fn scale(&self, k: &BigInt) -> QuadInt {
        self.field.elem_big(&self.a * k, &self.b * k)
    }

    /// Reads the element as a rational integer if its `w`-coordinate vanishes.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_rational().then(|| self.a.clone())
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let bpart = if self.b.is_one() {
            "w".to_string()
        } else if self.b == -BigInt::one() {
            "-w".to_string()
        } else {
            format!("{}w", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{}", bpart)
        } else if self.b.is_positive() {
            write!(f, "{}+{}", self.a, bpart)
        } else {
            write!(f, "{}{}", self.a, bpart)
        }
    }
}

/// Parses `a`, `a+bw`, `a-bw`, `bw`, `w`, `-w` (spaces allowed) into `(a, b)`.
pub fn parse_coeffs(s: &str) -> Result<(BigInt, BigInt)> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let bad = || Error::Parse(format!("cannot parse element '{}'", s));
    // split into signed terms
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, c) in compact.chars().enumerate() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);
    if terms.len() > 2 {
        return Err(bad());
    }
    let mut a: Option<BigInt> = None;
    let mut b: Option<BigInt> = None;
    for t in terms {
        if let Some(coef) = t.strip_suffix('w') {
            if b.is_some() {
                return Err(bad());
            }
            let v = match coef {
                "" | "+" => BigInt::one(),
                "-" => -BigInt::one(),
                _ => BigInt::from_str(coef.trim_start_matches('+')).map_err(|_| bad())?,
            };
            b = Some(v);
        } else {
            if a.is_some() || b.is_some() {
                // constant term must come first
                return Err(bad());
            }
            a = Some(BigInt::from_str(t.trim_start_matches('+')).map_err(|_| bad())?);
        }
    }
    Ok((a.unwrap_or_default(), b.unwrap_or_default()))
}

impl Add for &QuadInt {
    type Output = QuadInt;
    /// Panics on field mismatch; use [`QuadInt::try_add`] for a checked variant.
    fn add(self, rhs: &QuadInt) -> QuadInt {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &QuadInt) -> QuadInt {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        self.field.elem_big(-&self.a, -&self.b)
    }
}
