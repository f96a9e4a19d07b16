//! Radical elimination and LLL reduction of integral Gram matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Mat = Vec<Vec<BigInt>>;

pub(crate) fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// `u^T a u`.
pub(crate) fn congruence(a: &Mat, u: &Mat) -> Mat {
    let n = a.len();
    let r = if n == 0 { 0 } else { u[0].len() };
    let mut au = vec![vec![BigInt::zero(); r]; n];
    for i in 0..n {
        for j in 0..r {
            let mut s = BigInt::zero();
            for k in 0..n {
                if !a[i][k].is_zero() && !u[k][j].is_zero() {
                    s += &a[i][k] * &u[k][j];
                }
            }
            au[i][j] = s;
        }
    }
    let mut out = vec![vec![BigInt::zero(); r]; r];
    for i in 0..r {
        for j in 0..r {
            let mut s = BigInt::zero();
            for k in 0..n {
                if !u[k][i].is_zero() {
                    s += &u[k][i] * &au[k][j];
                }
            }
            out[i][j] = s;
        }
    }
    out
}

pub(crate) fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

/// Unimodular `u` such that the last columns of `a u` vanish; returns `(u, rank)`.
///
/// Integer column echelon form via extended gcd steps, so the kernel columns
/// span the full integer radical.
pub(crate) fn column_echelon(a: &Mat) -> (Mat, usize) {
    let n = a.len();
    let mut m = a.clone();
    let mut u = identity(n);
    let mut pc = 0;
    for row in 0..n {
        if pc == n {
            break;
        }
        // gcd-combine columns pc..n in this row into column pc
        for c in pc + 1..n {
            if m[row][c].is_zero() {
                continue;
            }
            if m[row][pc].is_zero() {
                swap_cols(&mut m, &mut u, pc, c);
                continue;
            }
            let x = m[row][pc].clone();
            let y = m[row][c].clone();
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let xg = &x / &g;
            let yg = &y / &g;
            // [col_pc, col_c] <- [s col_pc + t col_c, -yg col_pc + xg col_c]
            combine_cols(&mut m, &mut u, pc, c, (&s, &t), (&(-&yg), &xg));
        }
        if !m[row][pc].is_zero() {
            pc += 1;
        }
    }
    (u, pc)
}

fn swap_cols(m: &mut Mat, u: &mut Mat, i: usize, j: usize) {
    for r in m.iter_mut().chain(u.iter_mut()) {
        r.swap(i, j);
    }
}

fn combine_cols(m: &mut Mat, u: &mut Mat, i: usize, j: usize, a: (&BigInt, &BigInt), b: (&BigInt, &BigInt)) {
    for r in m.iter_mut().chain(u.iter_mut()) {
        let ci = r[i].clone();
        let cj = r[j].clone();
        r[i] = a.0 * &ci + a.1 * &cj;
        r[j] = b.0 * &ci + b.1 * &cj;
    }
}

fn round(q: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (q + half).floor().to_integer()
}

/// LLL reduction (delta = 3/4) of a positive definite Gram matrix.
/// Returns `(reduced_gram, transform)` with `reduced = t^T g t`.
pub(crate) fn lll(g: &Mat) -> (Mat, Mat) {
    let n = g.len();
    let mut gram = g.clone();
    let mut t = identity(n);
    if n <= 1 {
        return (gram, t);
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        assert!(guard < 1_000_000, "LLL failed to terminate");
        for j in (0..k).rev() {
            let (mu, _) = gso(&gram);
            let q = round(&mu[k][j]);
            if !q.is_zero() {
                // b_k <- b_k - q b_j
                sub_basis(&mut gram, &mut t, k, j, &q);
            }
        }
        let (mu, b) = gso(&gram);
        let lhs = &b[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            gram.swap(k, k - 1);
            for r in gram.iter_mut() {
                r.swap(k, k - 1);
            }
            for r in t.iter_mut() {
                r.swap(k, k - 1);
            }
            k = (k - 1).max(1);
        }
    }
    (gram, t)
}

fn sub_basis(gram: &mut Mat, t: &mut Mat, k: usize, j: usize, q: &BigInt) {
    let n = gram.len();
    let gkk = &gram[k][k] - q * &gram[k][j] * 2 + q * q * &gram[j][j];
    for i in 0..n {
        if i != k {
            let v = &gram[k][i] - q * &gram[j][i];
            gram[k][i] = v.clone();
            gram[i][k] = v;
        }
    }
    gram[k][k] = gkk;
    for r in t.iter_mut() {
        let v = &r[k] - q * &r[j];
        r[k] = v;
    }
}

/// Gram–Schmidt coefficients `mu[i][j]` (j < i) and squared lengths `b[i]`.
fn gso(g: &Mat) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = g.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut b = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = BigRational::from_integer(g[i][j].clone());
            for k in 0..j {
                s -= &mu[j][k] * &mu[i][k] * &b[k];
            }
            mu[i][j] = s / &b[j];
        }
        let mut s = BigRational::from_integer(g[i][i].clone());
        for k in 0..i {
            s -= &mu[i][k] * &mu[i][k] * &b[k];
        }
        debug_assert!(s.is_positive());
        b[i] = s;
    }
    (mu, b)
}
