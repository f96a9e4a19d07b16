//! Escalation: truants, escalation lattices, deduplication, certification and
//! the escalation tree.

mod certify;
mod tree;

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hlattice::HermitianLattice;
use crate::quadring::QuadInt;
use crate::zform::{is_isometric as z_isometric, psd_rank, ZQuadForm};

pub use certify::{certify_universal, is_inherited, CertMode, CertifyFailure, UniversalityCertificate};
pub use tree::{
    escalation_tree, minimal_universal_rank, EscalationTree, MinimalRankRecord, NodeStatus, ResultCache, TreeNode,
    TreeOptions,
};

/// Default search bound for truants.
pub const TRUANT_LIMIT: u64 = 300;
/// Default bound for empirical certification.
pub const CERTIFY_BOUND: u64 = 2000;

/// Smallest positive integer up to `limit` not represented by `l`.
pub fn truant_hermitian(l: &HermitianLattice, limit: u64) -> Option<u64> {
    l.associated_zform().truant(limit)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscalationCandidate {
    pub parent: HermitianLattice,
    pub truant_used: u64,
    /// `H(v_i, v)` for the adjoined vector `v`, before reduction.
    pub column: Vec<QuadInt>,
    /// Size-reduced escalation lattice.
    pub result: HermitianLattice,
}

impl EscalationCandidate {
    /// Gram of `parent + Ov` before size reduction.
    pub fn unreduced(&self) -> HermitianLattice {
        self.parent
            .adjoin_vector(self.truant_used as i64, &self.column)
            .expect("stored candidates are positive semidefinite")
    }
}

/// Equivalence used to merge escalation lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DedupRelation {
    /// Isometry over the ring of integers.
    Hermitian,
    /// Isometry of the associated quadratic Z-forms (coarser: merges conjugates).
    ZForm,
}

#[derive(Debug, Clone, Copy)]
pub struct EscalationOptions {
    pub dedup: DedupRelation,
    /// Reject `t` that is not the truant of the parent.
    pub enforce_truant: bool,
    /// Report pairs that are Z-isometric but not isometric over O.
    pub flag_z_only: bool,
}

impl Default for EscalationOptions {
    fn default() -> Self {
        EscalationOptions { dedup: DedupRelation::Hermitian, enforce_truant: false, flag_z_only: false }
    }
}

#[derive(Debug, Clone)]
pub struct EscalationSet {
    pub candidates: Vec<EscalationCandidate>,
    /// Number of PSD columns before any merging.
    pub raw_columns: usize,
    /// Index pairs into `candidates` that are Z-isometric but not O-isometric.
    pub z_only_pairs: Vec<(usize, usize)>,
}

fn hermitian_psd(l_gram: &[Vec<QuadInt>], field: crate::quadring::QuadIntField) -> bool {
    // psd test through the doubled Z-Gram of a principal block
    HermitianLattice::new(field, l_gram.to_vec()).is_ok()
}

/// All columns `c` with `norm(c_i) <= g_ii t` for which the Gram of
/// `{v_0..v_{d-1}, v}` with `H(v) = t` is positive semidefinite.
pub fn escalation_columns(l: &HermitianLattice, t: u64) -> Vec<Vec<QuadInt>> {
    let d = l.dim();
    let field = l.field();
    let t_big = BigInt::from(t);
    let choices: Vec<Vec<QuadInt>> = (0..d)
        .map(|i| {
            let b = (&l.diag()[i] * &t_big).to_i64().expect("bound fits in i64");
            field.elements_up_to_norm(b)
        })
        .collect();
    let mut out = Vec::new();
    let mut col: Vec<QuadInt> = Vec::with_capacity(d);
    fn rec(
        l: &HermitianLattice,
        t: u64,
        choices: &[Vec<QuadInt>],
        col: &mut Vec<QuadInt>,
        out: &mut Vec<Vec<QuadInt>>,
    ) {
        let k = col.len();
        let d = l.dim();
        if k == d {
            out.push(col.clone());
            return;
        }
        for c in &choices[k] {
            col.push(c.clone());
            // principal block on v_0..v_k and v
            let mut g: Vec<Vec<QuadInt>> = (0..=k)
                .map(|i| {
                    let mut row: Vec<QuadInt> = (0..=k).map(|j| l.entry(i, j).clone()).collect();
                    row.push(col[i].clone());
                    row
                })
                .collect();
            let mut last: Vec<QuadInt> = col.iter().map(QuadInt::conj).collect();
            last.push(l.field().int(t as i64));
            g.push(last);
            if hermitian_psd(&g, l.field()) {
                rec(l, t, choices, col, out);
            }
            col.pop();
        }
    }
    if d == 0 {
        return vec![Vec::new()];
    }
    rec(l, t, &choices, &mut col, &mut out);
    out
}

/// Cheap isometry invariants: rank, determinant of the definite part and
/// a short theta prefix.
fn invariants(l: &HermitianLattice, theta_bound: u64) -> (usize, BigInt, Vec<u64>) {
    let p = l.associated_zform().prepare();
    (l.hermitian_rank(), p.form.doubled_determinant(), p.theta_prefix(theta_bound).counts)
}

/// Escalation lattices of `l` by a vector of norm `t`, size-reduced and merged
/// up to the chosen relation. Order follows the column enumeration.
pub fn escalations(l: &HermitianLattice, t: u64, opts: &EscalationOptions) -> Result<EscalationSet> {
    if t == 0 {
        return Err(Error::InvalidArgument("escalation norm must be positive".into()));
    }
    if opts.enforce_truant {
        let tr = truant_hermitian(l, t);
        if tr != Some(t) {
            return Err(Error::InvalidArgument(format!("{} is not the truant of the lattice (found {:?})", t, tr)));
        }
    }
    let columns = escalation_columns(l, t);
    let raw_columns = columns.len();
    let reduced: Vec<(Vec<QuadInt>, HermitianLattice)> = columns
        .into_par_iter()
        .map(|c| {
            let r = l.adjoin_vector(t as i64, &c).expect("columns are PSD").size_reduce();
            (c, r)
        })
        .collect();
    let mut seen = HashSet::new();
    let mut uniq: Vec<(Vec<QuadInt>, HermitianLattice)> = Vec::new();
    for (c, r) in reduced {
        if seen.insert(r.to_string()) {
            uniq.push((c, r));
        }
    }
    let theta_bound = t.max(l.diag().iter().map(|v| v.to_u64().unwrap_or(0)).max().unwrap_or(0));
    let inv: Vec<_> = uniq.par_iter().map(|(_, r)| invariants(r, theta_bound)).collect();
    let reps = merge_classes(&uniq.iter().map(|(_, r)| r.clone()).collect::<Vec<_>>(), &inv, opts.dedup);
    let candidates: Vec<EscalationCandidate> = reps
        .iter()
        .map(|&i| EscalationCandidate {
            parent: l.clone(),
            truant_used: t,
            column: uniq[i].0.clone(),
            result: uniq[i].1.clone(),
        })
        .collect();
    let mut z_only_pairs = Vec::new();
    if opts.flag_z_only && opts.dedup == DedupRelation::Hermitian {
        for a in 0..reps.len() {
            for b in a + 1..reps.len() {
                if inv[reps[a]] == inv[reps[b]]
                    && z_isometric(&candidates[a].result.associated_zform(), &candidates[b].result.associated_zform())
                {
                    z_only_pairs.push((a, b));
                }
            }
        }
    }
    Ok(EscalationSet { candidates, raw_columns, z_only_pairs })
}

/// Indices of class representatives (first occurrence) under `rel`.
fn merge_classes<K: Ord + Clone + Sync>(
    lattices: &[HermitianLattice],
    inv: &[K],
    rel: DedupRelation,
) -> Vec<usize> {
    let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for (i, k) in inv.iter().enumerate() {
        groups.entry(k.clone()).or_default().push(i);
    }
    let mut reps: Vec<usize> = groups
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|members| {
            let mut classes: Vec<usize> = Vec::new();
            for i in members {
                let dup = classes.iter().any(|&r| match rel {
                    DedupRelation::Hermitian => lattices[r].is_isometric(&lattices[i]),
                    DedupRelation::ZForm => {
                        z_isometric(&lattices[r].associated_zform(), &lattices[i].associated_zform())
                    }
                });
                if !dup {
                    classes.push(i);
                }
            }
            classes
        })
        .collect();
    reps.sort_unstable();
    reps
}

/// Merges a list of Hermitian lattices up to `rel`; returns representative indices.
pub fn dedup_lattices(lattices: &[HermitianLattice], rel: DedupRelation) -> Vec<usize> {
    let bound = lattices
        .iter()
        .flat_map(|l| l.diag())
        .filter_map(|v| v.to_u64())
        .max()
        .unwrap_or(1);
    let inv: Vec<_> = lattices.par_iter().map(|l| invariants(l, bound)).collect();
    merge_classes(lattices, &inv, rel)
}

/// Escalations of a classical Z-lattice with integral Gram `gram` by a
/// vector of norm `t`, merged up to isometry of the definite parts.
/// Returns integral Gram matrices in enumeration order.
pub fn z_escalations(gram: &[Vec<i64>], t: i64, include_degenerate: bool) -> Vec<Vec<Vec<i64>>> {
    let d = gram.len();
    let mut out: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut col = Vec::with_capacity(d);
    fn psd(gram: &[Vec<i64>], col: &[i64], t: i64) -> Option<usize> {
        let k = col.len();
        let mut a: Vec<Vec<BigInt>> =
            (0..k).map(|i| (0..k).map(|j| BigInt::from(gram[i][j])).chain([BigInt::from(col[i])]).collect()).collect();
        a.push(col.iter().map(|&c| BigInt::from(c)).chain([BigInt::from(t)]).collect());
        psd_rank(&a)
    }
    fn rec(gram: &[Vec<i64>], t: i64, col: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let k = col.len();
        if k == gram.len() {
            out.push(col.clone());
            return;
        }
        let bound = ((gram[k][k] * t) as f64).sqrt() as i64 + 1;
        for c in -bound..=bound {
            if c * c > gram[k][k] * t {
                continue;
            }
            col.push(c);
            if psd(gram, col, t).is_some() {
                rec(gram, t, col, out);
            }
            col.pop();
        }
    }
    let mut cols = Vec::new();
    rec(gram, t, &mut col, &mut cols);
    let full_rank = psd_rank(&gram.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect::<Vec<_>>())
        .unwrap_or(0);
    let mut forms: Vec<(Vec<Vec<i64>>, ZQuadForm)> = Vec::new();
    for c in cols {
        let mut g: Vec<Vec<i64>> = gram.iter().zip(&c).map(|(r, &ci)| r.iter().copied().chain([ci]).collect()).collect();
        g.push(c.iter().copied().chain([t]).collect());
        let f = ZQuadForm::from_gram_i64(&g).expect("PSD column");
        if !include_degenerate && f.rank() == full_rank {
            continue;
        }
        forms.push((g, f));
    }
    let bound = t.max(gram.iter().enumerate().map(|(i, r)| r[i]).max().unwrap_or(1)) as u64;
    let inv: Vec<_> = forms
        .par_iter()
        .map(|(_, f)| {
            let p = f.prepare();
            (f.rank(), p.form.doubled_determinant(), p.theta_prefix(bound).counts)
        })
        .collect();
    let mut groups: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (i, k) in inv.iter().enumerate() {
        groups.entry(k.clone()).or_default().push(i);
    }
    let mut reps: Vec<usize> = Vec::new();
    for members in groups.into_values() {
        let mut classes: Vec<usize> = Vec::new();
        for i in members {
            if !classes.iter().any(|&r| z_isometric(&forms[r].1, &forms[i].1)) {
                classes.push(i);
            }
        }
        reps.extend(classes);
    }
    reps.sort_unstable();
    out.extend(reps.into_iter().map(|i| forms[i].0.clone()));
    out
}

/// True when `child` represents every integer in `1..=bound` that `parent` does.
pub fn contains_represented(parent: &HermitianLattice, child: &HermitianLattice, bound: u64) -> bool {
    let pp = parent.associated_zform().prepare();
    let pc = child.associated_zform().prepare();
    (1..=bound).all(|k| !pp.represents_u64(k) || pc.represents_u64(k))
}
