//! Hermitian lattices over the ring of integers, given by Gram matrices.
//!
//! `gram[i][j] = H(v_i, v_j)` where `H` is linear in the first argument and
//! conjugate-linear in the second, so `H(x) = sum g_ij x_i conj(x_j)`.
//! A non-free lattice `Ov_1 + ... + (a, b) v_n` is stored through the
//! generators `a v_n, b v_n`, which gives an `(n+1) x (n+1)` positive
//! semidefinite Gram matrix.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quadring::{QuadInt, QuadIntField};
use crate::zform::isometry::backtrack;
use crate::zform::{psd_rank, ZQuadForm};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HermitianLattice {
    field: QuadIntField,
    dim: usize,
    hermitian_rank: usize,
    gram: Vec<Vec<QuadInt>>,
}

fn doubled_zgram(field: QuadIntField, gram: &[Vec<QuadInt>]) -> Vec<Vec<BigInt>> {
    let d = gram.len();
    let w = field.omega();
    let wc = w.conj();
    let one = field.one();
    let mut a = vec![vec![BigInt::zero(); 2 * d]; 2 * d];
    for i in 0..d {
        for j in 0..d {
            let g = &gram[i][j];
            for s in 0..2 {
                for t in 0..2 {
                    // Tr H(w^s v_i, w^t v_j) = Tr(w^s conj(w)^t g_ij)
                    let ls = if s == 1 { &w } else { &one };
                    let rt = if t == 1 { &wc } else { &one };
                    a[2 * i + s][2 * j + t] = (&(ls * rt) * g).trace();
                }
            }
        }
    }
    a
}

impl HermitianLattice {
    /// Validates a Hermitian Gram matrix and computes its Hermitian rank.
    pub fn new(field: QuadIntField, gram: Vec<Vec<QuadInt>>) -> Result<Self> {
        let dim = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::LengthMismatch { expected: dim, got: row.len() });
            }
            for (j, e) in row.iter().enumerate() {
                if e.field() != field {
                    return Err(Error::FieldMismatch(field.m(), e.field().m()));
                }
                if gram[j][i] != e.conj() {
                    return Err(Error::NotHermitian(i, j));
                }
            }
            if row[i].a().is_negative() {
                return Err(Error::NotPositiveSemidefinite);
            }
        }
        let z = doubled_zgram(field, &gram);
        let r = psd_rank(&z).ok_or(Error::NotPositiveSemidefinite)?;
        debug_assert!(r % 2 == 0);
        Ok(HermitianLattice { field, dim, hermitian_rank: r / 2, gram })
    }

    /// Gram matrix given as `(a, b)` coordinate pairs.
    pub fn from_coords(field: QuadIntField, rows: &[Vec<(i64, i64)>]) -> Result<Self> {
        let gram = rows.iter().map(|r| r.iter().map(|&(a, b)| field.elem(a, b)).collect()).collect();
        Self::new(field, gram)
    }

    /// `<d_1, ..., d_n>`.
    pub fn diagonal(field: QuadIntField, diag: &[i64]) -> Result<Self> {
        let n = diag.len();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| if i == j { field.int(diag[i]) } else { field.zero() }).collect())
            .collect();
        Self::new(field, gram)
    }

    /// `<1> ⊥ [a, c; conj(c), b]`-style binary block appended to a diagonal part.
    pub fn diagonal_plus_block(field: QuadIntField, diag: &[i64], block: [[QuadInt; 2]; 2]) -> Result<Self> {
        let d = Self::diagonal(field, diag)?;
        let b = Self::new(field, block.iter().map(|r| r.to_vec()).collect())?;
        d.orthogonal_sum(&b)
    }

    pub fn orthogonal_sum(&self, other: &HermitianLattice) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.m(), other.field.m()));
        }
        let n = self.dim + other.dim;
        let mut g = vec![vec![self.field.zero(); n]; n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                g[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                g[self.dim + i][self.dim + j] = other.gram[i][j].clone();
            }
        }
        Ok(HermitianLattice {
            field: self.field,
            dim: n,
            hermitian_rank: self.hermitian_rank + other.hermitian_rank,
            gram: g,
        })
    }

    pub fn field(&self) -> QuadIntField {
        self.field
    }

    pub fn m(&self) -> i64 {
        self.field.m()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hermitian_rank(&self) -> usize {
        self.hermitian_rank
    }

    pub fn is_free_encoding(&self) -> bool {
        self.hermitian_rank == self.dim
    }

    pub fn gram(&self) -> &[Vec<QuadInt>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &QuadInt {
        &self.gram[i][j]
    }

    /// Diagonal entries as integers.
    pub fn diag(&self) -> Vec<BigInt> {
        (0..self.dim).map(|i| self.gram[i][i].a().clone()).collect()
    }

    /// True when some off-diagonal entry has a nonzero `w`-coordinate.
    pub fn has_omega_entry(&self) -> bool {
        self.gram.iter().flatten().any(|e| !e.is_rational())
    }

    /// `H(x, y)` for coordinate vectors.
    pub fn inner(&self, x: &[QuadInt], y: &[QuadInt]) -> QuadInt {
        let mut s = self.field.zero();
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            let mut row = self.field.zero();
            for j in 0..self.dim {
                if !y[j].is_zero() {
                    row = &row + &(&self.gram[i][j] * &y[j].conj());
                }
            }
            s = &s + &(&x[i] * &row);
        }
        s
    }

    pub fn hermitian_norm(&self, x: &[QuadInt]) -> Result<BigInt> {
        if x.len() != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, got: x.len() });
        }
        if let Some(e) = x.iter().find(|e| e.field() != self.field) {
            return Err(Error::FieldMismatch(self.field.m(), e.field().m()));
        }
        let h = self.inner(x, x);
        Ok(h.to_integer().expect("Hermitian norm is rational"))
    }

    /// The form on the Z-basis `(v_1, w v_1, ..., v_d, w v_d)`.
    pub fn associated_zform(&self) -> ZQuadForm {
        ZQuadForm::from_doubled(doubled_zgram(self.field, &self.gram)).expect("validated Hermitian lattice")
    }

    /// Converts Z-coordinates of the associated form back to O-coordinates.
    pub fn coords_from_z(&self, z: &[BigInt]) -> Vec<QuadInt> {
        z.chunks(2).map(|c| self.field.elem_big(c[0].clone(), c[1].clone())).collect()
    }

    pub fn coords_to_z(x: &[QuadInt]) -> Vec<BigInt> {
        x.iter().flat_map(|e| [e.a().clone(), e.b().clone()]).collect()
    }

    /// Adjoins a generator `v` with `H(v) = t` and `H(v_i, v) = column[i]`.
    pub fn adjoin_vector(&self, t: i64, column: &[QuadInt]) -> Result<Self> {
        if t < 1 {
            return Err(Error::InvalidArgument(format!("new diagonal must be positive, got {}", t)));
        }
        if column.len() != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, got: column.len() });
        }
        let d = self.dim + 1;
        let mut g: Vec<Vec<QuadInt>> = Vec::with_capacity(d);
        for i in 0..self.dim {
            let mut row = self.gram[i].clone();
            row.push(column[i].clone());
            g.push(row);
        }
        let mut last: Vec<QuadInt> = column.iter().map(QuadInt::conj).collect();
        last.push(self.field.int(t));
        g.push(last);
        Self::new(self.field, g)
    }

    /// `H(v_k, v_j)` translation `v_j <- v_j - lam v_i`.
    fn translate(&mut self, j: usize, i: usize, lam: &QuadInt) {
        let lc = lam.conj();
        let gii = self.gram[i][i].clone();
        let gij = self.gram[i][j].clone();
        let gji = self.gram[j][i].clone();
        let gjj = self.gram[j][j].clone();
        for k in 0..self.dim {
            if k != j {
                let v = &self.gram[k][j] - &(&lc * &self.gram[k][i]);
                self.gram[j][k] = v.conj();
                self.gram[k][j] = v;
            }
        }
        let njj = &(&(&gjj - &(&lc * &gji)) - &(lam * &gij)) + &gii.scale(&lam.norm());
        self.gram[j][j] = njj;
    }

    /// `v_j <- u v_j` for a unit `u`.
    fn scale_unit(&mut self, j: usize, u: &QuadInt) {
        let uc = u.conj();
        for k in 0..self.dim {
            if k != j {
                let v = &uc * &self.gram[k][j];
                self.gram[j][k] = v.conj();
                self.gram[k][j] = v;
            }
        }
    }

    /// Normalizes off-diagonal entries by translations and unit scalings.
    ///
    /// Column by column, each entry `g_ij` with `i < j` is moved into the
    /// residues of smallest size modulo `g_ii`; the first entry that is
    /// nonzero modulo its diagonal also picks the unit for `v_j`. Ties follow
    /// [`canonical_key`], which yields the residues `{0, 1, w, -1+w}` modulo 2.
    /// Not a proven canonical form: isometric inputs may reduce differently.
    pub fn size_reduce(&self) -> HermitianLattice {
        let mut l = self.clone();
        let units = self.field.units();
        for _pass in 0..64 {
            let before = l.gram.clone();
            for j in 1..l.dim {
                let mut pivot_done = false;
                for i in 0..j {
                    let d = l.gram[i][i].a().clone();
                    if d.is_zero() {
                        continue;
                    }
                    let e = l.gram[i][j].clone();
                    let is_zero_mod = e.a().is_multiple_of(&d) && e.b().is_multiple_of(&d);
                    let unit_choices: &[QuadInt] =
                        if pivot_done || is_zero_mod { &units[..1] } else { &units };
                    let mut best: Option<((BigInt, bool, BigInt, bool), usize, QuadInt)> = None;
                    for (ui, u) in unit_choices.iter().enumerate() {
                        let eu = &u.conj() * &e;
                        for rep in residue_reps(&eu, &d) {
                            let key = canonical_key(&rep);
                            if best.as_ref().is_none_or(|b| key < b.0) {
                                best = Some((key, ui, rep));
                            }
                        }
                    }
                    let (_, ui, rep) = best.expect("at least one residue");
                    if ui != 0 {
                        l.scale_unit(j, &unit_choices[ui]);
                    }
                    let cur = l.gram[i][j].clone();
                    if cur != rep {
                        // cur - conj(lam) d = rep
                        let diff = &cur - &rep;
                        let lc = l.field.elem_big(diff.a() / &d, diff.b() / &d);
                        l.translate(j, i, &lc.conj());
                    }
                    if !is_zero_mod {
                        pivot_done = true;
                    }
                }
            }
            if l.gram == before {
                break;
            }
        }
        l
    }

    /// Text form `m=<m> rank=<n>; row; row; ...`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Gram rows only, separated by `;`.
    pub fn gram_text(&self) -> String {
        let rows: Vec<String> =
            self.gram.iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")).collect();
        rows.join(";")
    }

    pub fn to_json(&self) -> Value {
        let gram: Vec<Value> = self
            .gram
            .iter()
            .map(|r| Value::Array(r.iter().map(|e| json!({"a": int_json(e.a()), "b": int_json(e.b())})).collect()))
            .collect();
        json!({"m": self.m(), "dim": self.dim, "hermitian_rank": self.hermitian_rank, "gram": gram})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |s: &str| Error::Parse(format!("lattice JSON: {}", s));
        let m = v.get("m").and_then(Value::as_i64).ok_or_else(|| bad("missing m"))?;
        let field = QuadIntField::new(m)?;
        let rows = v.get("gram").and_then(Value::as_array).ok_or_else(|| bad("missing gram"))?;
        let mut gram = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| bad("row is not an array"))?;
            let mut row = Vec::new();
            for e in r {
                let a = json_int(e.get("a")).ok_or_else(|| bad("entry a"))?;
                let b = json_int(e.get("b")).ok_or_else(|| bad("entry b"))?;
                row.push(field.elem_big(a, b));
            }
            gram.push(row);
        }
        let l = Self::new(field, gram)?;
        if let Some(d) = v.get("dim").and_then(Value::as_u64) {
            if d as usize != l.dim {
                return Err(Error::DimensionMismatch(d as usize, l.dim));
            }
        }
        if let Some(r) = v.get("hermitian_rank").and_then(Value::as_u64) {
            if r as usize != l.hermitian_rank {
                return Err(bad(&format!("declared rank {} but Gram has rank {}", r, l.hermitian_rank)));
            }
        }
        Ok(l)
    }

    /// Parses Gram rows for a known field (no header). Entries use element
    /// syntax; a leading `c` conjugates, so `cw` is `conj(w)`.
    pub fn parse_rows(field: QuadIntField, rows: &str) -> Result<Self> {
        let gram = rows
            .split([';', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| r.split(',').map(|c| parse_entry(field, c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, gram)
    }

    /// Finds `y_1..y_d` in `other` with `H'(y_i, y_j) = gram[i][j]`, i.e. an
    /// isometry over O onto `other`. Returns the images in `other`'s coordinates.
    pub fn find_isometry(&self, other: &HermitianLattice) -> Option<Vec<Vec<QuadInt>>> {
        if self.field != other.field || self.hermitian_rank != other.hermitian_rank {
            return None;
        }
        let zf = self.associated_zform();
        let zg = other.associated_zform();
        let pf = zf.prepare();
        let pg = zg.prepare();
        if pf.form.doubled_determinant() != pg.form.doubled_determinant() {
            return None;
        }
        if self.dim == 0 {
            return Some(Vec::new());
        }
        let norms = self.diag();
        let max = norms.iter().max().unwrap().clone();
        let mut tf = vec![0u64; max.to_usize()? + 1];
        let mut tg = vec![0u64; tf.len()];
        pf.enumerator().for_each_up_to(&max, |_, q| tf[q.to_usize().unwrap()] += 1);
        let mut by_norm: Vec<Vec<(Vec<BigInt>, Vec<QuadInt>)>> = vec![Vec::new(); tf.len()];
        pg.enumerator().for_each_up_to(&max, |y, q| {
            let q = q.to_usize().unwrap();
            tg[q] += 1;
            if norms.iter().any(|n| n.to_usize() == Some(q)) {
                let x = other.coords_from_z(&pg.lift(y));
                by_norm[q].push((y.to_vec(), x));
            }
        });
        if tf != tg {
            return None;
        }
        let mut cands: Vec<Vec<Vec<QuadInt>>> = norms
            .iter()
            .map(|n| by_norm[n.to_usize().unwrap()].iter().map(|(_, x)| x.clone()).collect())
            .collect();
        // The first image is only needed up to sign.
        cands[0] = by_norm[norms[0].to_usize().unwrap()]
            .iter()
            .filter(|(y, _)| y.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive()))
            .map(|(_, x)| x.clone())
            .collect();
        if norms[0].is_zero() {
            cands[0] = vec![vec![self.field.zero(); other.dim]];
        }
        let ip = |a: &Vec<QuadInt>, b: &Vec<QuadInt>| other.inner(a, b);
        let idx = backtrack(&self.gram, &cands, &ip)?;
        Some(idx.iter().enumerate().map(|(i, &k)| cands[i][k].clone()).collect())
    }

    /// Isometry over O (not merely over Z).
    pub fn is_isometric(&self, other: &HermitianLattice) -> bool {
        self.find_isometry(other).is_some()
    }
}

fn int_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn json_int(v: Option<&Value>) -> Option<BigInt> {
    match v? {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => BigInt::from_str(s).ok(),
        _ => None,
    }
}

fn parse_entry(field: QuadIntField, s: &str) -> Result<QuadInt> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix("-c") {
        return Ok(-&field.parse_elem(rest)?.conj());
    }
    match t.strip_prefix('c') {
        Some(rest) => Ok(field.parse_elem(rest)?.conj()),
        None => field.parse_elem(t),
    }
}

/// Residues of `e` modulo `d` (coordinatewise) of smallest absolute size.
fn residue_reps(e: &QuadInt, d: &BigInt) -> Vec<QuadInt> {
    let f = e.field();
    let opts = |v: &BigInt| -> Vec<BigInt> {
        let r = v.mod_floor(d);
        let twice = &r * 2;
        if &twice < d {
            vec![r]
        } else if &twice > d {
            vec![r - d]
        } else {
            vec![r.clone(), r - d]
        }
    };
    let mut out = Vec::new();
    for a in opts(e.a()) {
        for b in opts(e.b()) {
            out.push(f.elem_big(a.clone(), b));
        }
    }
    out
}

/// Ordering used to choose representatives: smaller `|b|`, then `b >= 0`,
/// then smaller `|a|`, then `a >= 0` for rational entries and `a <= 0` otherwise.
pub fn canonical_key(e: &QuadInt) -> (BigInt, bool, BigInt, bool) {
    let a = e.a();
    let b = e.b();
    let last = if b.is_zero() { a.is_negative() } else { a.is_positive() };
    (b.abs(), b.is_negative(), a.abs(), last)
}

impl fmt::Display for HermitianLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} rank={}", self.m(), self.hermitian_rank)?;
        for row in &self.gram {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "; {}", cells.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for HermitianLattice {
    type Err = Error;

    /// Parses `m=<m> [rank=<n>]; rows...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (header, rows) = match s.find([';', '\n']) {
            Some(p) => (&s[..p], &s[p + 1..]),
            None => (s, ""),
        };
        let mut m = None;
        let mut rank = None;
        for tok in header.split_whitespace() {
            if let Some(v) = tok.strip_prefix("m=") {
                m = Some(v.parse::<i64>().map_err(|_| Error::Parse(format!("bad m '{}'", v)))?);
            } else if let Some(v) = tok.strip_prefix("rank=") {
                rank = Some(v.parse::<usize>().map_err(|_| Error::Parse(format!("bad rank '{}'", v)))?);
            } else {
                return Err(Error::Parse(format!("unexpected header token '{}'", tok)));
            }
        }
        let m = m.ok_or_else(|| Error::Parse("missing m= header".into()))?;
        let l = Self::parse_rows(QuadIntField::new(m)?, rows)?;
        if let Some(r) = rank {
            if r != l.hermitian_rank {
                return Err(Error::Parse(format!("declared rank {} but Gram has rank {}", r, l.hermitian_rank)));
            }
        }
        Ok(l)
    }
}

/// `Ov_1 ⊥ ... ⊥ Ov_{n-1} ⊥ (alpha, beta) v_n` with `H(v_n) = v_norm`.
#[derive(Debug, Clone)]
pub struct PseudoLatticeSpec {
    pub field: QuadIntField,
    pub free_diag: Vec<i64>,
    pub alpha: QuadInt,
    pub beta: QuadInt,
    /// `H(v_n)` as a fraction `(numerator, denominator)`; the generators
    /// `alpha v_n`, `beta v_n` must still have integral inner products.
    pub v_norm: (i64, i64),
}

impl PseudoLatticeSpec {
    pub fn build(&self) -> Result<HermitianLattice> {
        let (num, den) = self.v_norm;
        if den <= 0 || num <= 0 {
            return Err(Error::InvalidArgument("v_norm must be a positive fraction".into()));
        }
        let gens = [&self.alpha, &self.beta];
        let mut block: Vec<Vec<QuadInt>> = Vec::new();
        for x in gens {
            let mut row = Vec::new();
            for y in gens {
                let p = (x * &y.conj()).scale(&BigInt::from(num));
                let den = BigInt::from(den);
                if !p.a().is_multiple_of(&den) || !p.b().is_multiple_of(&den) {
                    return Err(Error::InvalidArgument(format!("entry {}/{} is not integral", p, den)));
                }
                row.push(self.field.elem_big(p.a() / &den, p.b() / &den));
            }
            block.push(row);
        }
        let free = HermitianLattice::diagonal(self.field, &self.free_diag)?;
        let l = free.orthogonal_sum(&HermitianLattice::new(self.field, block)?)?;
        if l.hermitian_rank != self.free_diag.len() + 1 {
            return Err(Error::InvalidArgument("generators do not span a rank one module".into()));
        }
        Ok(l)
    }
}

impl HermitianLattice {
    /// Identity coordinates `e_i`.
    pub fn basis_vector(&self, i: usize) -> Vec<QuadInt> {
        (0..self.dim).map(|k| if k == i { self.field.one() } else { self.field.zero() }).collect()
    }

    /// Coordinates of a Z-witness as a vector over O, checked against `H`.
    pub fn witness(&self, k: &BigInt) -> Option<Vec<QuadInt>> {
        let z = self.associated_zform().represents(k)?;
        let x = self.coords_from_z(&z);
        debug_assert_eq!(&self.hermitian_norm(&x).ok()?, k);
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(m: i64) -> QuadIntField {
        QuadIntField::new(m).unwrap()
    }

    fn lat(s: &str) -> HermitianLattice {
        s.parse().unwrap()
    }

    #[test]
    fn hermitian_norm_examples() {
        let l = HermitianLattice::diagonal(f(5), &[1, 2]).unwrap();
        assert_eq!(l.hermitian_norm(&[f(5).one(), f(5).one()]).unwrap(), BigInt::from(3));
        let l = HermitianLattice::diagonal(f(7), &[1]).unwrap();
        assert_eq!(l.hermitian_norm(&[f(7).omega()]).unwrap(), BigInt::from(2));
        let l = HermitianLattice::diagonal(f(11), &[1, 1]).unwrap();
        assert_eq!(l.hermitian_norm(&[f(11).omega(), f(11).one()]).unwrap(), BigInt::from(4));
        assert!(matches!(l.hermitian_norm(&[f(11).one()]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(l.hermitian_norm(&[f(5).one(), f(11).one()]), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn associated_forms() {
        let l = HermitianLattice::diagonal(f(5), &[1]).unwrap();
        assert_eq!(l.associated_zform(), ZQuadForm::from_doubled_i64(&[vec![2, 0], vec![0, 10]]).unwrap());
        let l = HermitianLattice::diagonal(f(7), &[1]).unwrap();
        assert_eq!(l.associated_zform(), ZQuadForm::from_doubled_i64(&[vec![2, 1], vec![1, 4]]).unwrap());
        let l = lat("m=39; 1,0,0; 0,2,w; 0,cw,5");
        assert_eq!(l.hermitian_rank(), 2);
        let z = l.associated_zform();
        assert_eq!(z.dim(), 6);
        assert_eq!(z.rank(), 4);
        // x1^2 + x1 x2 + 10 x2^2 on the first summand
        assert_eq!(z.doubled_gram()[0][..2], [BigInt::from(2), BigInt::from(1)]);
        assert_eq!(z.doubled_gram()[1][1], BigInt::from(20));
    }

    #[test]
    fn validation() {
        assert!(matches!("m=5; 1,w; w,2".parse::<HermitianLattice>(), Err(Error::NotHermitian(..))));
        assert!(matches!("m=5; 1,3; 3,1".parse::<HermitianLattice>(), Err(Error::NotPositiveSemidefinite)));
        assert!("m=5 rank=2; 1,0; 0,2".parse::<HermitianLattice>().is_ok());
        assert!("m=5 rank=1; 1,0; 0,2".parse::<HermitianLattice>().is_err());
        assert!("m=4; 1".parse::<HermitianLattice>().is_err());
    }

    #[test]
    fn text_and_json_round_trip() {
        let l = lat("m=15 rank=2; 1,0,0; 0,2,w; 0,cw,2");
        assert_eq!(l.to_string(), "m=15 rank=2; 1,0,0; 0,2,w; 0,1-w,2");
        assert_eq!(l.to_string().parse::<HermitianLattice>().unwrap(), l);
        assert_eq!(HermitianLattice::from_json(&l.to_json()).unwrap(), l);
    }

    #[test]
    fn adjoin_examples() {
        let l = HermitianLattice::diagonal(f(17), &[1, 1, 2]).unwrap();
        let c = [f(17).zero(), f(17).zero(), f(17).elem(-1, 1)];
        let e = l.adjoin_vector(9, &c).unwrap();
        assert_eq!(e.dim(), 4);
        assert_eq!(e.hermitian_rank(), 3);
        let l = HermitianLattice::diagonal(f(5), &[1, 2]).unwrap();
        let e = l.adjoin_vector(3, &[f(5).zero(), f(5).zero()]).unwrap();
        assert_eq!(e, HermitianLattice::diagonal(f(5), &[1, 2, 3]).unwrap());
        let l = HermitianLattice::diagonal(f(5), &[1]).unwrap();
        assert!(matches!(l.adjoin_vector(1, &[f(5).int(3)]), Err(Error::NotPositiveSemidefinite)));
    }

    #[test]
    fn size_reduce_examples() {
        let l = lat("m=17; 1,0,0,0; 0,1,0,0; 0,0,2,2+w; 0,0,2-w,13");
        let r = l.size_reduce();
        assert_eq!(r.entry(2, 3), &f(17).omega());
        assert_eq!(r.associated_zform().theta_prefix(40), l.associated_zform().theta_prefix(40));
        let d = HermitianLattice::diagonal(f(5), &[1, 2, 3]).unwrap();
        assert_eq!(d.size_reduce(), d);
        let l = lat("m=7; 1,0,0; 0,2,-w; 0,-cw,4");
        let r = l.size_reduce();
        assert_eq!(r.entry(1, 2), &f(7).omega());
        assert_eq!(r.size_reduce(), r);
        assert_eq!(r.associated_zform().theta_prefix(50), l.associated_zform().theta_prefix(50));
    }

    #[test]
    fn residues_mod_two() {
        let l = |a: i64, b: i64| lat(&format!("m=23; 2,{}; c{}, 50", f(23).elem(a, b), f(23).elem(a, b)));
        for (a, b) in [(1, 1), (-1, -1), (3, 1), (1, -1)] {
            let r = l(a, b).size_reduce();
            assert_eq!(r.entry(0, 1), &f(23).elem(-1, 1));
        }
        assert_eq!(l(0, -1).size_reduce().entry(0, 1), &f(23).omega());
        assert_eq!(l(-1, 0).size_reduce().entry(0, 1), &f(23).one());
    }

    #[test]
    fn pseudo_lattice_builder() {
        let k = f(39);
        let spec = PseudoLatticeSpec { field: k, free_diag: vec![1], alpha: k.int(2), beta: k.omega().conj(), v_norm: (1, 2) };
        let l = spec.build().unwrap();
        assert_eq!(l, lat("m=39; 1,0,0; 0,2,w; 0,cw,5"));
        assert_eq!(l.hermitian_rank(), 2);
    }

    #[test]
    fn o_isometry() {
        // conjugate non-free binaries over m=15 are O-isometric, over m=23 not
        let a = lat("m=15; 2,w; cw,2");
        let b = lat("m=15; 2,-1+w; c-1+w,2");
        assert!(a.is_isometric(&b));
        let a = lat("m=23; 2,w; cw,3");
        let b = lat("m=23; 2,-1+w; c-1+w,3");
        assert!(!a.is_isometric(&b));
        assert!(a.associated_zform().definite_part().doubled_determinant() == b.associated_zform().definite_part().doubled_determinant());
        assert!(crate::zform::is_isometric(&a.associated_zform(), &b.associated_zform()));
        // a free encoding and a non-free one of the same lattice
        let c = lat("m=5; 1,1; 1,1");
        assert!(c.is_isometric(&HermitianLattice::diagonal(f(5), &[1]).unwrap()));
    }
}
