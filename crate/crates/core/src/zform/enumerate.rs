//! Fincke–Pohst style enumeration in exact integer arithmetic.
//!
//! For a positive definite doubled Gram matrix `A` with leading principal
//! minors `D_0 = 1, D_1, ..., D_n`, fraction-free elimination (Bareiss) gives
//! integer rows `B_k` with `B_kk = D_{k+1}` such that
//!
//! ```text
//! D_{k+1} P_k = t_k^2 + D_k P_{k+1},   t_k = sum_{j >= k} B_kj x_j,
//! ```
//!
//! where `P_k = D_k * (Schur complement form on x_k..x_{n-1})` is an integer
//! and `P_0 = x^T A x = 2 Q(x)`. Pruning `P_k <= 2N D_k` is then a pure
//! integer comparison. Elimination runs on the reversed coordinate order so
//! the last coordinate is the innermost loop.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::One;

use super::exact::{convert, ExactInt};

#[derive(Debug, Clone)]
struct Decomp<T> {
    n: usize,
    /// `delta[k]` = leading minor of size `k` (reversed order), `delta[0] = 1`.
    delta: Vec<T>,
    /// `rows[k][j]` for `j > k`.
    rows: Vec<Vec<T>>,
}

fn bareiss(a_rev: &[Vec<BigInt>]) -> Decomp<BigInt> {
    let n = a_rev.len();
    let mut m = a_rev.to_vec();
    let mut delta = vec![BigInt::one()];
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = m[k][k].clone();
        assert!(pivot > BigInt::from(0), "enumeration requires a positive definite form");
        rows.push(m[k].clone());
        let prev = delta[k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &pivot * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        delta.push(pivot);
    }
    Decomp { n, delta, rows }
}

impl<T: ExactInt> Decomp<T> {
    fn from_big(d: &Decomp<BigInt>) -> Option<Self> {
        Some(Decomp {
            n: d.n,
            delta: d.delta.iter().map(T::from_big).collect::<Option<Vec<_>>>()?,
            rows: convert(&d.rows)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// All vectors with `Q <= bound`.
    UpTo,
    /// Only vectors with `Q == bound`.
    Exact,
}

struct Overflow;

struct Search<'a, T, F> {
    d: &'a Decomp<T>,
    two_n: T,
    mode: Mode,
    z: Vec<T>,
    visit: F,
}

impl<T, F> Search<'_, T, F>
where
    T: ExactInt,
    F: FnMut(&[T], &T) -> ControlFlow<()>,
{
    fn center(&self, k: usize) -> Result<T, Overflow> {
        let mut c = T::from_i64(0);
        for j in k + 1..self.d.n {
            c = c.add(&self.d.rows[k][j].mul(&self.z[j]).ok_or(Overflow)?).ok_or(Overflow)?;
        }
        Ok(c)
    }

    fn rec(&mut self, k: usize, p_next: &T) -> Result<ControlFlow<()>, Overflow> {
        let dk = &self.d.delta[k];
        let dk1 = &self.d.delta[k + 1];
        let c = self.center(k)?;
        let slack = self.two_n.mul(dk1).ok_or(Overflow)?.sub(p_next).ok_or(Overflow)?;
        if slack.is_neg() {
            return Ok(ControlFlow::Continue(()));
        }
        if k == 0 && self.mode == Mode::Exact {
            // D_1 * 2N = t^2 + P_1 must hold exactly (D_0 = 1).
            let s2 = slack;
            let s = s2.isqrt();
            if s.mul(&s).ok_or(Overflow)? != s2 {
                return Ok(ControlFlow::Continue(()));
            }
            let zero = T::from_i64(0);
            let neg = zero.sub(&s).ok_or(Overflow)?;
            let ts = if s.is_nil() { vec![s] } else { vec![neg, s] };
            for t in ts {
                let num = t.sub(&c).ok_or(Overflow)?;
                let q = num.div_floor(dk1);
                if q.mul(dk1).ok_or(Overflow)? == num {
                    self.z[0] = q;
                    let two_q = self.two_n.clone();
                    if (self.visit)(&self.z, &two_q).is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
            return Ok(ControlFlow::Continue(()));
        }
        let w = dk.mul(&slack).ok_or(Overflow)?;
        let s = w.isqrt();
        let zero = T::from_i64(0);
        let lo = zero.sub(&s).ok_or(Overflow)?.sub(&c).ok_or(Overflow)?.div_ceil(dk1);
        let hi = s.sub(&c).ok_or(Overflow)?.div_floor(dk1);
        let one = T::from_i64(1);
        let mut x = lo;
        while x <= hi {
            let t = dk1.mul(&x).ok_or(Overflow)?.add(&c).ok_or(Overflow)?;
            let p = t
                .mul(&t)
                .ok_or(Overflow)?
                .add(&dk.mul(p_next).ok_or(Overflow)?)
                .ok_or(Overflow)?
                .div_exact(dk1);
            self.z[k] = x.clone();
            if k == 0 {
                if (self.visit)(&self.z, &p).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            } else if self.rec(k - 1, &p)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
            x = x.add(&one).ok_or(Overflow)?;
        }
        self.z[k] = zero;
        Ok(ControlFlow::Continue(()))
    }
}

/// Enumerator for a positive definite doubled Gram matrix.
#[derive(Debug, Clone)]
pub struct Enumerator {
    n: usize,
    big: Decomp<BigInt>,
    small: Option<Decomp<i128>>,
}

impl Enumerator {
    /// `doubled` must be positive definite.
    pub fn new(doubled: &[Vec<BigInt>]) -> Self {
        let n = doubled.len();
        let rev: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| doubled[n - 1 - i][n - 1 - j].clone()).collect()).collect();
        let big = bareiss(&rev);
        let small = Decomp::from_big(&big);
        Enumerator { n, big, small }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn run_generic<T: ExactInt>(
        d: &Decomp<T>,
        bound: &BigInt,
        mode: Mode,
        visit: &mut dyn FnMut(Vec<BigInt>, BigInt) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, Overflow> {
        let n = d.n;
        let two_n = T::from_big(&(bound * 2)).ok_or(Overflow)?;
        if n == 0 {
            if mode == Mode::UpTo || bound == &BigInt::from(0) {
                return Ok(visit(Vec::new(), BigInt::from(0)));
            }
            return Ok(ControlFlow::Continue(()));
        }
        let mut search = Search {
            d,
            two_n,
            mode,
            z: vec![T::from_i64(0); n],
            visit: |z: &[T], p: &T| {
                // z is in reversed order
                let x: Vec<BigInt> = z.iter().rev().map(|v| v.to_big()).collect();
                visit(x, p.to_big() / 2)
            },
        };
        search.rec(n - 1, &T::from_i64(0))
    }

    fn run(&self, bound: &BigInt, mode: Mode, visit: &mut dyn FnMut(Vec<BigInt>, BigInt) -> ControlFlow<()>) {
        if let Some(small) = &self.small {
            // Replay on BigInt after an overflow; visited vectors are buffered so
            // the caller sees each vector exactly once.
            let mut buf = Vec::new();
            let res = Self::run_generic(small, bound, mode, &mut |x, q| {
                buf.push((x, q));
                ControlFlow::Continue(())
            });
            if res.is_ok() {
                for (x, q) in buf {
                    if visit(x, q).is_break() {
                        return;
                    }
                }
                return;
            }
        }
        let _ = Self::run_generic(&self.big, bound, mode, visit);
    }

    /// First vector of norm exactly `target` in search order.
    pub fn find(&self, target: &BigInt) -> Option<Vec<BigInt>> {
        let mut found = None;
        let mut visit = |x: Vec<BigInt>, _q: BigInt| {
            found = Some(x);
            ControlFlow::Break(())
        };
        if let Some(small) = &self.small {
            match Self::run_generic(small, target, Mode::Exact, &mut visit) {
                Ok(_) => return found,
                Err(Overflow) => found = None,
            }
        }
        let mut visit = |x: Vec<BigInt>, _q: BigInt| {
            found = Some(x);
            ControlFlow::Break(())
        };
        let _ = Self::run_generic(&self.big, target, Mode::Exact, &mut visit);
        found
    }

    /// Visits every vector with `Q(x) <= bound`, in search order.
    pub fn for_each_up_to(&self, bound: &BigInt, mut visit: impl FnMut(&[BigInt], &BigInt)) {
        self.run(bound, Mode::UpTo, &mut |x, q| {
            visit(&x, &q);
            ControlFlow::Continue(())
        });
    }

    /// Visits every vector with `Q(x) == target`.
    pub fn for_each_exact(&self, target: &BigInt, mut visit: impl FnMut(&[BigInt])) {
        self.run(target, Mode::Exact, &mut |x, _| {
            visit(&x);
            ControlFlow::Continue(())
        });
    }

    /// Representation counts `r(0..=bound)`.
    pub fn counts(&self, bound: u64) -> Vec<u64> {
        let mut counts = vec![0u64; bound as usize + 1];
        if let Some(small) = &self.small {
            let mut local = vec![0u64; bound as usize + 1];
            let res = Self::run_generic(small, &BigInt::from(bound), Mode::UpTo, &mut |_, q| {
                local[usize::try_from(&q).expect("norm within bound")] += 1;
                ControlFlow::Continue(())
            });
            if res.is_ok() {
                return local;
            }
        }
        let _ = Self::run_generic(&self.big, &BigInt::from(bound), Mode::UpTo, &mut |_, q| {
            counts[usize::try_from(&q).expect("norm within bound")] += 1;
            ControlFlow::Continue(())
        });
        counts
    }
}
