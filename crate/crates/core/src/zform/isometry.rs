//! Isometry testing by backtracking over short-vector images.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::reduce::Mat;
use super::ZQuadForm;

/// Picks one candidate per level so that all pairwise products match
/// `targets`. Diagonal agreement is the caller's job (candidate lists are
/// already filtered by norm). Returns candidate indices.
pub(crate) fn backtrack<V, E: PartialEq>(
    targets: &[Vec<E>],
    cands: &[Vec<V>],
    ip: &dyn Fn(&V, &V) -> E,
) -> Option<Vec<usize>> {
    let n = targets.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut next = vec![0usize; n];
    loop {
        let lvl = chosen.len();
        if lvl == n {
            return Some(chosen);
        }
        let mut advanced = false;
        while next[lvl] < cands[lvl].len() {
            let c = next[lvl];
            next[lvl] += 1;
            let v = &cands[lvl][c];
            if (0..lvl).all(|j| ip(&cands[j][chosen[j]], v) == targets[j][lvl]) {
                chosen.push(c);
                if lvl + 1 < n {
                    next[lvl + 1] = 0;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            if lvl == 0 {
                return None;
            }
            chosen.pop();
        }
    }
}

fn bilinear(a: &[Vec<BigInt>], x: &[BigInt], y: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..x.len() {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..y.len() {
            if !y[j].is_zero() {
                s += &a[i][j] * &x[i] * &y[j];
            }
        }
    }
    s
}

/// Returns `t` (columns in the coordinates of `g`'s definite part) with
/// `t^T G t = F`, where `F` is the reduced definite part of `f`; `None` when
/// the definite parts are not isometric.
pub fn find_isometry(f: &ZQuadForm, g: &ZQuadForm) -> Option<Mat> {
    if f.rank() != g.rank() {
        return None;
    }
    let pf = f.prepare();
    let pg = g.prepare();
    let a = pf.form.doubled_gram();
    let b = pg.form.doubled_gram();
    if super::determinant(a) != super::determinant(b) {
        return None;
    }
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let max = a.iter().enumerate().map(|(i, r)| r[i].clone()).max().unwrap() / 2;
    let mut by_norm_f: BTreeMap<BigInt, usize> = BTreeMap::new();
    let mut by_norm_g: BTreeMap<BigInt, Vec<Vec<BigInt>>> = BTreeMap::new();
    pf.enumerator().for_each_up_to(&max, |_, q| *by_norm_f.entry(q.clone()).or_default() += 1);
    pg.enumerator().for_each_up_to(&max, |x, q| by_norm_g.entry(q.clone()).or_default().push(x.to_vec()));
    let counts_g: BTreeMap<BigInt, usize> = by_norm_g.iter().map(|(k, v)| (k.clone(), v.len())).collect();
    if by_norm_f != counts_g {
        return None;
    }
    let mut cands: Vec<Vec<Vec<BigInt>>> = (0..n)
        .map(|i| by_norm_g.get(&(&a[i][i] / 2)).cloned().unwrap_or_default())
        .collect();
    // The first image is only needed up to sign.
    cands[0] = sign_representatives(&cands[0]);
    let ip = |x: &Vec<BigInt>, y: &Vec<BigInt>| bilinear(b, x, y);
    let idx = backtrack(a, &cands, &ip)?;
    let mut t = vec![vec![BigInt::zero(); n]; n];
    for (col, &k) in idx.iter().enumerate() {
        for row in 0..n {
            t[row][col] = cands[col][k][row].clone();
        }
    }
    Some(t)
}

fn sign_representatives(vs: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    vs.iter()
        .filter(|v| v.iter().find(|c| !c.is_zero()).is_some_and(|c| c > &BigInt::zero()))
        .cloned()
        .collect()
}

/// Whether the definite parts of `f` and `g` are isometric over `Z`.
pub fn is_isometric(f: &ZQuadForm, g: &ZQuadForm) -> bool {
    find_isometry(f, g).is_some()
}

/// Whether `g` represents the definite form `f`, i.e. contains vectors whose
/// Gram matrix is the Gram matrix of `f`.
pub fn represents_form(g: &ZQuadForm, f: &ZQuadForm) -> bool {
    if !f.is_definite() || f.dim() > g.rank() {
        return false;
    }
    let a = f.doubled_gram();
    let n = a.len();
    if n == 0 {
        return true;
    }
    let pg = g.prepare();
    let b = pg.form.doubled_gram();
    let max = a.iter().enumerate().map(|(i, r)| r[i].clone()).max().unwrap() / 2;
    let mut by_norm: BTreeMap<BigInt, Vec<Vec<BigInt>>> = BTreeMap::new();
    pg.enumerator().for_each_up_to(&max, |x, q| by_norm.entry(q.clone()).or_default().push(x.to_vec()));
    let mut cands: Vec<Vec<Vec<BigInt>>> =
        (0..n).map(|i| by_norm.get(&(&a[i][i] / 2)).cloned().unwrap_or_default()).collect();
    cands[0] = sign_representatives(&cands[0]);
    let ip = |x: &Vec<BigInt>, y: &Vec<BigInt>| bilinear(b, x, y);
    backtrack(a, &cands, &ip).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zform::reduce::congruence;

    #[test]
    fn isometric_pairs() {
        let f = ZQuadForm::from_gram_i64(&[vec![1, 0], vec![0, 1]]).unwrap();
        let g = ZQuadForm::from_gram_i64(&[vec![2, 1], vec![1, 1]]).unwrap();
        let t = find_isometry(&f, &g).unwrap();
        let pf = f.prepare();
        let pg = g.prepare();
        assert_eq!(congruence(&pg.form.doubled_gram().to_vec(), &t), pf.form.doubled_gram().to_vec());
        assert!(is_isometric(&g, &f));
    }

    #[test]
    fn same_determinant_not_isometric() {
        // x^2 + 6y^2 and 2x^2 + 3y^2
        let f = ZQuadForm::diagonal(&[1, 6]).unwrap();
        let g = ZQuadForm::diagonal(&[2, 3]).unwrap();
        assert!(!is_isometric(&f, &g));
        // 2x^2+2xy+3y^2 vs x^2+5y^2 (both doubled det 20)
        let h = ZQuadForm::from_doubled_i64(&[vec![4, 2], vec![2, 6]]).unwrap();
        let k = ZQuadForm::diagonal(&[1, 5]).unwrap();
        assert!(!is_isometric(&h, &k));
    }

    #[test]
    fn genus_mates_separated() {
        let a = ZQuadForm::from_gram_i64(&[vec![1, 0, 0], vec![0, 8, 2], vec![0, 2, 20]]).unwrap();
        let b = ZQuadForm::from_gram_i64(&[vec![4, 0, 2], vec![0, 5, 1], vec![2, 1, 9]]).unwrap();
        assert!(!is_isometric(&a, &b));
        assert!(is_isometric(&a, &a));
    }

    #[test]
    fn radical_ignored() {
        let f = ZQuadForm::from_doubled_i64(&[vec![2, 2], vec![2, 2]]).unwrap();
        let g = ZQuadForm::diagonal(&[1]).unwrap();
        assert!(is_isometric(&f, &g));
    }
}
