//! Machine-integer oracles shared by the property and acceptance suites. They
//! use their own arithmetic and only borrow parsing from the library.
#![allow(dead_code)]

use hermlat::hlattice::HermitianLattice;
use hermlat::quadring::{QuadInt, QuadIntField};
use hermlat::zform::ZQuadForm;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub const MS: &[i64] = &[1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 23, 31, 35, 39, 42, 55];

/// `a + b w` over `Q(sqrt(-m))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Small {
    pub a: i128,
    pub b: i128,
}

pub const ZERO: Small = Small { a: 0, b: 0 };

pub fn half(m: i64) -> bool {
    m % 4 == 3
}

/// `w^2 = -m`, or `w^2 = w - (1+m)/4` when `m = 3 (mod 4)`.
pub fn mul(m: i64, x: Small, y: Small) -> Small {
    let (a, b, c, d) = (x.a, x.b, y.a, y.b);
    let bd = b * d;
    if half(m) {
        let k = (1 + m as i128) / 4;
        Small { a: a * c - k * bd, b: a * d + b * c + bd }
    } else {
        Small { a: a * c - m as i128 * bd, b: a * d + b * c }
    }
}

pub fn conj(m: i64, x: Small) -> Small {
    if half(m) {
        Small { a: x.a + x.b, b: -x.b }
    } else {
        Small { a: x.a, b: -x.b }
    }
}

pub fn norm(m: i64, x: Small) -> i128 {
    if half(m) {
        x.a * x.a + x.a * x.b + (1 + m as i128) / 4 * x.b * x.b
    } else {
        x.a * x.a + m as i128 * x.b * x.b
    }
}

pub fn add(x: Small, y: Small) -> Small {
    Small { a: x.a + y.a, b: x.b + y.b }
}

pub fn big(x: Small, f: QuadIntField) -> QuadInt {
    f.elem_big(BigInt::from(x.a), BigInt::from(x.b))
}

pub fn small(e: &QuadInt) -> Small {
    Small { a: e.a().to_i128().unwrap(), b: e.b().to_i128().unwrap() }
}

/// Hermitian Gram matrix in machine integers.
#[derive(Clone, Debug)]
pub struct OLat {
    pub m: i64,
    pub g: Vec<Vec<Small>>,
}

impl OLat {
    pub fn from_lattice(l: &HermitianLattice) -> Self {
        OLat { m: l.m(), g: l.gram().iter().map(|r| r.iter().map(small).collect()).collect() }
    }

    pub fn parse(m: i64, body: &str) -> Self {
        Self::from_lattice(&format!("m={}; {}", m, body).parse().unwrap())
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    /// `H(x) = sum_ij x_i conj(x_j) g_ij`; panics if the value is not rational.
    pub fn norm(&self, x: &[Small]) -> i128 {
        let m = self.m;
        let mut s = ZERO;
        for i in 0..x.len() {
            for j in 0..x.len() {
                s = add(s, mul(m, mul(m, x[i], self.g[i][j]), conj(m, x[j])));
            }
        }
        assert_eq!(s.b, 0, "Hermitian norm must be rational");
        s.a
    }

    /// Doubled Z-Gram on the basis `v_k, w v_k`, from `2 Re(w^s g_kl conj(w^t))`.
    pub fn doubled_zgram(&self) -> Vec<Vec<i64>> {
        let m = self.m;
        let n = self.dim();
        let pw = [Small { a: 1, b: 0 }, Small { a: 0, b: 1 }];
        let mut z = vec![vec![0i64; 2 * n]; 2 * n];
        for k in 0..n {
            for l in 0..n {
                for s in 0..2 {
                    for t in 0..2 {
                        let e = mul(m, mul(m, pw[s], self.g[k][l]), conj(m, pw[t]));
                        // 2 Re(a + b w) is 2a, or 2a + b when Re(w) = 1/2
                        let re2 = if half(m) { 2 * e.a + e.b } else { 2 * e.a };
                        z[2 * k + s][2 * l + t] = re2 as i64;
                    }
                }
            }
        }
        z
    }

    /// Orthogonal blocks (connected components of the off-diagonal support).
    pub fn blocks(&self) -> Vec<OLat> {
        let n = self.dim();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(i) = stack.pop() {
                members.push(i);
                for j in 0..n {
                    if comp[j] == usize::MAX && self.g[i][j] != ZERO {
                        comp[j] = id;
                        stack.push(j);
                    }
                }
            }
            members.sort();
            let g = members.iter().map(|&i| members.iter().map(|&j| self.g[i][j]).collect()).collect();
            out.push(OLat { m: self.m, g });
        }
        out
    }

    /// Represented values up to `bound` by scanning coordinate boxes, block by
    /// block. The second component is true when every box is provably large
    /// enough (definite block, box within `cap` points); semidefinite blocks
    /// are scanned with radius `psd_radius` and the result is one-sided.
    pub fn represented(&self, bound: u64, cap: f64, psd_radius: i64) -> (Vec<bool>, bool) {
        let mut acc = vec![false; bound as usize + 1];
        acc[0] = true;
        let mut exhaustive = true;
        for b in self.blocks() {
            let z = b.doubled_zgram();
            let mut radii: Vec<i64> = match inverse(&z) {
                Some(inv) if positive_definite(&z) => {
                    (0..z.len()).map(|i| (2.0 * bound as f64 * inv[i][i]).max(0.0).sqrt().floor() as i64 + 1).collect()
                }
                _ => {
                    exhaustive = false;
                    vec![psd_radius; z.len()]
                }
            };
            if radii.iter().map(|&r| (2 * r + 1) as f64).product::<f64>() > cap {
                exhaustive = false;
                let shrink = ((cap.powf(1.0 / radii.len() as f64) as i64 - 1) / 2).max(1);
                radii.iter_mut().for_each(|v| *v = (*v).min(shrink));
            }
            let vals = box_values(&z, &radii, bound);
            let mut next = vec![false; bound as usize + 1];
            for (i, &a) in acc.iter().enumerate() {
                if a {
                    for (j, &v) in vals.iter().enumerate() {
                        if v && i + j <= bound as usize {
                            next[i + j] = true;
                        }
                    }
                }
            }
            acc = next;
        }
        (acc, exhaustive)
    }
}

/// Values `x^T A x / 2 <= bound` over the box `|x_i| <= r_i`.
pub fn box_values(a: &[Vec<i64>], r: &[i64], bound: u64) -> Vec<bool> {
    let mut seen = vec![false; bound as usize + 1];
    box_scan(a, r, |q| {
        if q >= 0 && q as u64 <= bound {
            seen[q as usize] = true;
        }
    });
    seen
}

fn box_scan(a: &[Vec<i64>], r: &[i64], mut visit: impl FnMut(i64)) {
    let n = a.len();
    if n == 0 {
        visit(0);
        return;
    }
    let mut x: Vec<i64> = r.iter().map(|v| -v).collect();
    loop {
        let mut q2 = 0i64;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0;
            for j in 0..n {
                row += a[i][j] * x[j];
            }
            q2 += x[i] * row;
        }
        visit(q2 / 2);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if x[i] < r[i] {
                x[i] += 1;
                break;
            }
            x[i] = -r[i];
            i += 1;
        }
    }
}

/// Doubled Gram matrix `A` (even diagonal), `Q(x) = x^T A x / 2`.
pub type Doubled = Vec<Vec<i64>>;

pub fn inverse(a: &[Vec<i64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut r: Vec<f64> = a[i].iter().map(|&v| v as f64).collect();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[p][c].abs() < 1e-9 {
            return None;
        }
        m.swap(c, p);
        let d = m[c][c];
        m[c].iter_mut().for_each(|v| *v /= d);
        for i in 0..n {
            if i != c {
                let t = m[i][c];
                let row = m[c].clone();
                m[i].iter_mut().zip(row).for_each(|(v, r)| *v -= t * r);
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn positive_definite(a: &[Vec<i64>]) -> bool {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
    for c in 0..n {
        if m[c][c] < 1e-9 {
            return false;
        }
        for i in c + 1..n {
            let t = m[i][c] / m[c][c];
            for j in c..n {
                m[i][j] -= t * m[c][j];
            }
        }
    }
    true
}

/// Representation counts `r(0..=bound)` over a box that provably contains
/// every vector of norm at most `bound`; `None` if that box is too large.
pub fn box_counts(a: &Doubled, bound: i64) -> Option<Vec<u64>> {
    let inv = inverse(a)?;
    let r: Vec<i64> = (0..a.len()).map(|i| (2.0 * bound as f64 * inv[i][i]).sqrt().floor() as i64 + 1).collect();
    if r.iter().map(|&v| (2 * v + 1) as f64).product::<f64>() > 3e6 {
        return None;
    }
    let mut counts = vec![0u64; bound as usize + 1];
    box_scan(a, &r, |q| {
        if q <= bound {
            counts[q as usize] += 1;
        }
    });
    Some(counts)
}

pub fn theta(a: &Doubled, bound: u64) -> Vec<u64> {
    ZQuadForm::from_doubled_i64(a).unwrap().theta_prefix(bound).counts
}

/// Checks ring arithmetic on one pair against the machine-integer formulas.
pub fn check_elements(m: i64, x: Small, y: Small) -> Result<(), String> {
    let f = QuadIntField::new(m).unwrap();
    let (bx, by) = (big(x, f), big(y, f));
    let p = &bx * &by;
    let fail = |what: &str| Err(format!("m={} x={:?} y={:?}: {}", m, x, y, what));
    if p != big(mul(m, x, y), f) {
        return fail("product");
    }
    if p.norm() != bx.norm() * by.norm() {
        return fail("norm not multiplicative");
    }
    if bx.norm() != BigInt::from(norm(m, x)) {
        return fail("norm formula");
    }
    if bx.conj() != big(conj(m, x), f) || bx.conj().conj() != bx {
        return fail("conjugation");
    }
    if (&bx * &bx.conj()).to_integer() != Some(bx.norm()) {
        return fail("x conj(x) != N(x)");
    }
    Ok(())
}

/// Gram `A A^*`; then `H(x) = sum_l N(sum_i x_i A_il)`.
pub fn gram_of(m: i64, a: &[Vec<Small>]) -> Vec<Vec<Small>> {
    let n = a.len();
    let k = a[0].len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..k).fold(ZERO, |s, l| add(s, mul(m, a[i][l], conj(m, a[j][l]))))).collect())
        .collect()
}

pub fn coordinate_vectors(n: usize, r: i128) -> Vec<Vec<Small>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            for a in -r..=r {
                for b in -r..=r {
                    let mut w = v.clone();
                    w.push(Small { a, b });
                    next.push(w);
                }
            }
        }
        out = next;
    }
    out
}

/// Hermitian norm, associated form and the factorization oracle agree on
/// every coordinate vector with entries `|a|, |b| <= 2`.
pub fn check_lattice_norms(m: i64, a: &[Vec<Small>]) -> Result<(), String> {
    let f = QuadIntField::new(m).unwrap();
    let g = gram_of(m, a);
    let gram: Vec<Vec<QuadInt>> = g.iter().map(|r| r.iter().map(|&e| big(e, f)).collect()).collect();
    let l = HermitianLattice::new(f, gram).map_err(|e| e.to_string())?;
    let z = l.associated_zform();
    let k = a[0].len();
    for x in coordinate_vectors(a.len(), 2) {
        let want: i128 =
            (0..k).map(|c| norm(m, (0..a.len()).fold(ZERO, |s, i| add(s, mul(m, x[i], a[i][c]))))).sum();
        let bx: Vec<QuadInt> = x.iter().map(|&e| big(e, f)).collect();
        let h = l.hermitian_norm(&bx).map_err(|e| e.to_string())?;
        let q = z.eval(&HermitianLattice::coords_to_z(&bx)).map_err(|e| e.to_string())?;
        if h != BigInt::from(want) || q != h {
            return Err(format!("m={} A={:?} x={:?}: H={} Q={} oracle={}", m, a, x, h, q, want));
        }
    }
    Ok(())
}

/// Enumeration against the box oracle up to norm 50. `Ok(false)` when the
/// form was skipped (indefinite or box too large).
pub fn check_enumeration(a: &Doubled) -> Result<bool, String> {
    if !positive_definite(a) {
        return Ok(false);
    }
    let Some(want) = box_counts(a, 50) else { return Ok(false) };
    let got = theta(a, 50);
    if got != want {
        return Err(format!("{:?}: enumeration {:?} box {:?}", a, got, want));
    }
    Ok(true)
}

/// Every binary doubled Gram with diagonal `2..=12` (even) and off-diagonal
/// in `-6..=6`, plus unary ones; returns the number of definite forms checked.
pub fn check_enumeration_all_binary() -> Result<usize, String> {
    let mut checked = 0;
    for d0 in 1..=6 {
        for d1 in 1..=6 {
            for o in -6..=6 {
                if check_enumeration(&vec![vec![2 * d0, o], vec![o, 2 * d1]])? {
                    checked += 1;
                }
            }
        }
        if check_enumeration(&vec![vec![2 * d0]])? {
            checked += 1;
        }
    }
    Ok(checked)
}

pub fn doubled_from(n: usize, d: &[i64], off: &[i64]) -> Doubled {
    let mut a = vec![vec![0; n]; n];
    for i in 0..n {
        a[i][i] = 2 * d[i];
        for j in 0..i {
            a[i][j] = off[i * n + j];
            a[j][i] = off[i * n + j];
        }
    }
    a
}

/// `B^T A B` with `B = [I | R]` followed by column operations is PSD with
/// radical `ker B`; its definite part must have the theta series of `A`.
pub fn check_definite_part(a: &Doubled, extra: usize, r: &[i64], ops: &[(usize, usize, i64)]) -> Result<(), String> {
    let k = a.len();
    let n = k + extra;
    let mut b = vec![vec![0i64; n]; k];
    for i in 0..k {
        b[i][i] = 1;
        for j in k..n {
            b[i][j] = r[(i * 2 + j - k) % r.len()];
        }
    }
    for &(s, t, c) in ops {
        let (s, t) = (s % n, t % n);
        if s != t {
            for row in b.iter_mut() {
                row[t] += c * row[s];
            }
        }
    }
    let g: Doubled = (0..n)
        .map(|i| {
            (0..n).map(|j| (0..k).map(|p| (0..k).map(|q| b[p][i] * a[p][q] * b[q][j]).sum::<i64>()).sum()).collect()
        })
        .collect();
    let form = ZQuadForm::from_doubled_i64(&g).map_err(|e| e.to_string())?;
    let dp = form.definite_part();
    let want = theta(a, 60);
    if form.rank() != k || dp.dim() != k || !dp.is_definite() {
        return Err(format!("{:?}: rank {} definite part dim {}", g, form.rank(), dp.dim()));
    }
    if dp.theta_prefix(60).counts != want || form.theta_prefix(60).counts != want {
        return Err(format!("{:?}: theta of definite part differs from {:?}", g, a));
    }
    Ok(())
}
