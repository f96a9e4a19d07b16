//! Universality certificates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{classical_15_check, critical_set, nonclassical_290_check, CriterionSet};
use crate::hlattice::HermitianLattice;
use crate::zform::{PreparedForm, ZQuadForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertMode {
    /// Represents the critical numbers for its field.
    CriticalSet,
    /// Represents every integer up to a bound.
    Empirical,
    /// Contains a classical Z-sublattice that is universal by the 15 criterion
    /// (or the whole associated form passes the 290 criterion).
    InheritedSublattice,
}

impl std::str::FromStr for CertMode {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "critical" | "critical_set" => Ok(CertMode::CriticalSet),
            "empirical" => Ok(CertMode::Empirical),
            "inherited" | "inherited_sublattice" => Ok(CertMode::InheritedSublattice),
            _ => Err(crate::error::Error::Parse(format!("unknown mode '{}'", s))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalityCertificate {
    pub m: i64,
    /// Gram text of the certified lattice.
    pub lattice: String,
    pub mode: CertMode,
    pub critical_set: Vec<u64>,
    /// Every integer in `1..=checked_bound` was found represented.
    pub checked_bound: u64,
    /// Witness coordinates (element text) for the critical numbers.
    pub witnesses: BTreeMap<u64, Vec<String>>,
    pub citation: Option<String>,
    /// Whether the certificate proves universality, as opposed to reporting
    /// representation up to a bound only.
    pub proves_universality: bool,
}

impl UniversalityCertificate {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificate serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyFailure {
    pub mode: CertMode,
    /// Smallest unrepresented integer found, if the failure is a missed number.
    pub truant: Option<u64>,
    pub reason: String,
}

fn witness_text(l: &HermitianLattice, p: &PreparedForm, k: u64) -> Option<Vec<String>> {
    let z = p.represents(&BigInt::from(k))?;
    Some(l.coords_from_z(&z).iter().map(|e| e.to_string()).collect())
}

/// Smallest integer in `ks` (ascending) not represented, checked in parallel chunks.
pub(crate) fn first_missing(p: &PreparedForm, ks: &[u64]) -> Option<u64> {
    for chunk in ks.chunks(256) {
        let hits: Vec<bool> = chunk.par_iter().map(|&k| p.represents_u64(k)).collect();
        if let Some(i) = hits.iter().position(|h| !h) {
            return Some(chunk[i]);
        }
    }
    None
}

/// All integers in `ks` not represented.
pub(crate) fn all_missing(p: &PreparedForm, ks: &[u64]) -> Vec<u64> {
    let hits: Vec<bool> = ks.par_iter().map(|&k| p.represents_u64(k)).collect();
    ks.iter().zip(hits).filter(|(_, h)| !h).map(|(&k, _)| k).collect()
}

/// Rational Gram of the size-reduced free lattice, if all entries lie in `Z`.
fn rational_gram(l: &HermitianLattice) -> Option<Vec<Vec<i64>>> {
    let r = l.size_reduce();
    if !r.is_free_encoding() {
        return None;
    }
    r.gram()
        .iter()
        .map(|row| row.iter().map(|e| e.to_integer().and_then(|v| v.to_i64())).collect())
        .collect()
}

/// True when the size-reduced Gram matrix has only rational integer entries.
pub fn is_inherited(l: &HermitianLattice) -> bool {
    l.size_reduce().gram().iter().flatten().all(|e| e.is_rational())
}

fn diag_text(g: &[Vec<i64>]) -> String {
    let n = g.len();
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || g[i][j] == 0));
    if diagonal {
        let d: Vec<String> = (0..n).map(|i| g[i][i].to_string()).collect();
        format!("<{}>_Z", d.join(","))
    } else {
        let rows: Vec<String> =
            g.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect();
        format!("[{}]_Z", rows.join(";"))
    }
}

fn extend(g: &[Vec<i64>], extra: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = g.len();
    let k = extra.len();
    let mut out = vec![vec![0; n + k]; n + k];
    for i in 0..n {
        out[i][..n].copy_from_slice(&g[i]);
    }
    for i in 0..k {
        out[n + i][n..].copy_from_slice(&extra[i]);
    }
    out
}

/// Classical sublattices of the associated form of a lattice with rational
/// Gram `g`: `g`, `g ⊥ <m g_jj>` and `g ⊥ m g` (coordinates `a + b sqrt(-m)`).
fn inherited_sublattices(g: &[Vec<i64>], m: i64) -> Vec<Vec<Vec<i64>>> {
    let mut out = vec![g.to_vec()];
    let mut seen = std::collections::BTreeSet::new();
    for j in 0..g.len() {
        if seen.insert(g[j][j]) {
            out.push(extend(g, &[vec![m * g[j][j]]]));
        }
    }
    let mg: Vec<Vec<i64>> = g.iter().map(|r| r.iter().map(|v| v * m).collect()).collect();
    out.push(extend(g, &mg));
    out
}

pub fn certify_universal(
    l: &HermitianLattice,
    mode: CertMode,
    bound: u64,
) -> std::result::Result<UniversalityCertificate, CertifyFailure> {
    let m = l.m();
    let crit = critical_set(m).expect("lattice fields are valid");
    let z = l.associated_zform();
    let p = z.prepare();
    let crit_list: Vec<u64> = crit.numbers.iter().copied().collect();
    let fail = |truant: Option<u64>, reason: String| CertifyFailure { mode, truant, reason };
    let mut cert = UniversalityCertificate {
        m,
        lattice: l.to_string(),
        mode,
        critical_set: crit_list.clone(),
        checked_bound: 0,
        witnesses: BTreeMap::new(),
        citation: None,
        proves_universality: false,
    };
    match mode {
        CertMode::CriticalSet => {
            if let Some(k) = first_missing(&p, &crit_list) {
                return Err(fail(Some(k), format!("critical number {} is not represented", k)));
            }
            cert.citation = Some(format!(
                "represents every critical number {:?} for Q(sqrt(-{})); such lattices are universal",
                crit_list, m
            ));
            cert.proves_universality = true;
        }
        CertMode::Empirical => {
            let ks: Vec<u64> = (1..=bound).collect();
            if let Some(k) = first_missing(&p, &ks) {
                return Err(fail(Some(k), format!("{} is not represented", k)));
            }
            cert.checked_bound = bound;
            if bound >= CriterionSet::bhargava290().max() {
                cert.proves_universality = true;
                cert.citation = Some(
                    "definite part of the associated integral form represents every integer up to 290; universal by the 290 criterion"
                        .into(),
                );
            }
        }
        CertMode::InheritedSublattice => {
            let g = rational_gram(l).ok_or_else(|| fail(None, "lattice is not inherited".into()))?;
            let mut cited = None;
            for s in inherited_sublattices(&g, m) {
                let f = ZQuadForm::from_gram_i64(&s).expect("sublattice of a PSD form");
                if f.is_definite() && classical_15_check(&f).expect("integral Gram") {
                    cited = Some(format!(
                        "associated form contains {}, universal by the classical 15 criterion",
                        diag_text(&s)
                    ));
                    break;
                }
            }
            if cited.is_none() {
                if nonclassical_290_check(&z.definite_part()) {
                    cited = Some("associated form passes the 290 criterion".into());
                } else {
                    let s290: Vec<u64> = CriterionSet::bhargava290().numbers.into_iter().collect();
                    let t = first_missing(&p, &s290);
                    return Err(fail(t, "no universal classical sublattice found".into()));
                }
            }
            cert.citation = cited;
            cert.proves_universality = true;
        }
    }
    for &k in &crit_list {
        if let Some(w) = witness_text(l, &p, k) {
            cert.witnesses.insert(k, w);
        }
    }
    Ok(cert)
}
