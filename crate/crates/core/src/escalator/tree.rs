//! Breadth-first escalation trees and minimal universal ranks.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::certify::{all_missing, first_missing};
use super::{dedup_lattices, escalations, DedupRelation, EscalationOptions, CERTIFY_BOUND, TRUANT_LIMIT};
use crate::error::{Error, Result};
use crate::hlattice::HermitianLattice;
use crate::quadring::{QuadInt, QuadIntField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeStatus {
    /// Represents every integer up to the certification bound.
    UniversalCertified,
    /// Not universal; children were generated from its truant.
    Escalated,
    /// Isometric to an earlier node on the same level.
    PrunedDuplicate,
    /// Not universal, but the depth limit stopped expansion.
    Unexpanded,
    /// Not examined because a universal lattice of no larger rank was found.
    Skipped,
}

#[derive(Debug, Clone)]
pub struct TreeNode {
    pub id: usize,
    pub parent: Option<usize>,
    /// Number of generators (matrix dimension).
    pub depth: usize,
    pub lattice: HermitianLattice,
    /// Column of the vector adjoined to the parent.
    pub column: Vec<QuadInt>,
    pub truant: Option<u64>,
    pub status: NodeStatus,
    /// Integers up to the bound not represented (kept for expanded nodes).
    excluded: Vec<u64>,
}

impl TreeNode {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "parent": self.parent,
            "depth": self.depth,
            "hermitian_rank": self.lattice.hermitian_rank(),
            "gram": self.lattice.to_string(),
            "column": self.column.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "truant": self.truant,
            "status": self.status,
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TreeOptions {
    /// Number of escalation steps below the root `<1>`.
    pub max_depth: usize,
    pub truant_limit: u64,
    pub certify_bound: u64,
    pub dedup: DedupRelation,
    /// Do not expand below certified nodes.
    pub prune_certified: bool,
    /// Only keep searching for lattices of smaller Hermitian rank than the
    /// best certified one.
    pub minimal_rank: bool,
    /// Abort with partial output after this many nodes.
    pub max_nodes: usize,
}

impl Default for TreeOptions {
    fn default() -> Self {
        TreeOptions {
            max_depth: 3,
            truant_limit: TRUANT_LIMIT,
            certify_bound: CERTIFY_BOUND,
            dedup: DedupRelation::Hermitian,
            prune_certified: true,
            minimal_rank: false,
            max_nodes: 20_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EscalationTree {
    pub m: i64,
    pub options: TreeOptions,
    pub nodes: Vec<TreeNode>,
    /// Number of non-certified nodes with each truant.
    pub truants: BTreeMap<u64, usize>,
    /// Set when a resource limit stopped the search.
    pub limit_hit: Option<String>,
}

impl EscalationTree {
    pub fn certified(&self) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(|n| n.status == NodeStatus::UniversalCertified)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "options": self.options,
            "truants": self.truants.iter().map(|(k, v)| json!({"truant": k, "count": v})).collect::<Vec<_>>(),
            "complete": self.limit_hit.is_none(),
            "limit": self.limit_hit,
            "nodes": self.nodes.iter().map(TreeNode::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Cached per-lattice results, keyed by `(m, canonical Gram text)`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ResultCache {
    entries: HashMap<String, CacheEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub bound: u64,
    pub truant: Option<u64>,
    pub certified: bool,
    /// Full excluded set up to `bound`, when it was computed.
    pub excluded: Option<Vec<u64>>,
}

impl ResultCache {
    fn key(l: &HermitianLattice) -> String {
        format!("{}|{}", l.m(), l.size_reduce())
    }

    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Ok(Self::default());
        }
        let text = fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cache: {}", e)))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("cache file: {}", e)))
    }

    /// Writes to a temporary file and renames it into place.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(self).expect("cache serializes");
        fs::write(&tmp, text).map_err(|e| Error::InvalidArgument(format!("cache: {}", e)))?;
        fs::rename(&tmp, path).map_err(|e| Error::InvalidArgument(format!("cache: {}", e)))
    }

    pub fn get(&self, l: &HermitianLattice, bound: u64) -> Option<&CacheEntry> {
        self.entries.get(&Self::key(l)).filter(|e| e.bound == bound)
    }

    pub fn insert(&mut self, l: &HermitianLattice, entry: CacheEntry) {
        self.entries.insert(Self::key(l), entry);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Excluded integers of `l` among `candidates`; stops at the first one when
/// `full` is false.
fn excluded_among(
    l: &HermitianLattice,
    candidates: &[u64],
    full: bool,
    bound: u64,
    cache: &Option<&mut ResultCache>,
) -> (Vec<u64>, bool) {
    if let Some(c) = cache.as_ref().and_then(|c| c.get(l, bound)) {
        match (&c.excluded, full) {
            (Some(ex), _) => return (ex.clone(), true),
            (None, false) => return (c.truant.into_iter().collect(), false),
            _ => {}
        }
    }
    let p = l.associated_zform().prepare();
    if full {
        (all_missing(&p, candidates), true)
    } else {
        (first_missing(&p, candidates).into_iter().collect(), false)
    }
}

/// Escalation tree over `Q(sqrt(-m))` rooted at `<1>`.
pub fn escalation_tree(m: i64, opts: &TreeOptions, mut cache: Option<&mut ResultCache>) -> Result<EscalationTree> {
    let field = QuadIntField::new(m)?;
    let root = HermitianLattice::diagonal(field, &[1])?;
    let mut tree =
        EscalationTree { m, options: *opts, nodes: Vec::new(), truants: BTreeMap::new(), limit_hit: None };
    tree.nodes.push(TreeNode {
        id: 0,
        parent: None,
        depth: 0,
        lattice: root,
        column: Vec::new(),
        truant: None,
        status: NodeStatus::Unexpanded,
        excluded: Vec::new(),
    });
    let all: Vec<u64> = (1..=opts.certify_bound).collect();
    let mut level: Vec<usize> = vec![0];
    let mut best_rank: Option<usize> = None;
    for depth in 0..=opts.max_depth {
        let expand = depth < opts.max_depth;
        // certify in order of increasing rank so a small universal lattice
        // can cut the rest of the level
        let mut order = level.clone();
        order.sort_by_key(|&i| (tree.nodes[i].lattice.hermitian_rank(), i));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for i in order {
            let r = tree.nodes[i].lattice.hermitian_rank();
            match groups.last_mut() {
                Some(g) if tree.nodes[g[0]].lattice.hermitian_rank() == r => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        for group in groups {
            let rank = tree.nodes[group[0]].lattice.hermitian_rank();
            if opts.minimal_rank && best_rank.is_some_and(|b| rank >= b) {
                for &i in &group {
                    tree.nodes[i].status = NodeStatus::Skipped;
                }
                continue;
            }
            let cache_ref = &cache;
            let results: Vec<(Vec<u64>, bool)> = group
                .iter()
                .map(|&i| {
                    let node = &tree.nodes[i];
                    let cands: &[u64] = match node.parent {
                        Some(p) => &tree.nodes[p].excluded,
                        None => &all,
                    };
                    let full = expand && !(opts.minimal_rank && best_rank.is_some_and(|b| rank + 1 >= b));
                    excluded_among(&node.lattice, cands, full, opts.certify_bound, cache_ref)
                })
                .collect();
            for (&i, (ex, full)) in group.iter().zip(results) {
                let node = &mut tree.nodes[i];
                node.truant = ex.first().copied().filter(|&t| t <= opts.truant_limit);
                if let Some(t) = node.truant {
                    *tree.truants.entry(t).or_default() += 1;
                }
                if ex.is_empty() {
                    node.status = NodeStatus::UniversalCertified;
                    best_rank = Some(best_rank.map_or(rank, |b| b.min(rank)));
                } else {
                    node.status = NodeStatus::Unexpanded;
                }
                if let Some(c) = cache.as_deref_mut() {
                    c.insert(
                        &node.lattice,
                        CacheEntry {
                            bound: opts.certify_bound,
                            truant: ex.first().copied(),
                            certified: ex.is_empty(),
                            excluded: full.then(|| ex.clone()),
                        },
                    );
                }
                node.excluded = ex;
            }
        }
        if !expand {
            break;
        }
        // expand
        let parents: Vec<usize> = level
            .iter()
            .copied()
            .filter(|&i| {
                let n = &tree.nodes[i];
                n.status == NodeStatus::Unexpanded
                    && n.truant.is_some()
                    && !(opts.minimal_rank && best_rank.is_some_and(|b| n.lattice.hermitian_rank() >= b))
            })
            .collect();
        let eopts = EscalationOptions { dedup: opts.dedup, enforce_truant: false, flag_z_only: false };
        let children: Vec<Vec<(Vec<QuadInt>, HermitianLattice)>> = parents
            .par_iter()
            .map(|&p| {
                let n = &tree.nodes[p];
                let set = escalations(&n.lattice, n.truant.expect("filtered"), &eopts).expect("valid truant");
                set.candidates
                    .into_iter()
                    .filter(|c| !(opts.minimal_rank && best_rank.is_some_and(|b| c.result.hermitian_rank() >= b)))
                    .map(|c| (c.column, c.result))
                    .collect()
            })
            .collect();
        let mut flat: Vec<(usize, Vec<QuadInt>, HermitianLattice)> = Vec::new();
        for (&p, kids) in parents.iter().zip(children) {
            tree.nodes[p].status = NodeStatus::Escalated;
            for (c, l) in kids {
                flat.push((p, c, l));
            }
        }
        let lattices: Vec<HermitianLattice> = flat.iter().map(|(_, _, l)| l.clone()).collect();
        let reps: std::collections::HashSet<usize> = dedup_lattices(&lattices, opts.dedup).into_iter().collect();
        let mut next = Vec::new();
        for (k, (p, c, l)) in flat.into_iter().enumerate() {
            if tree.nodes.len() >= opts.max_nodes {
                tree.limit_hit = Some(format!("node limit {} reached at depth {}", opts.max_nodes, depth + 1));
                break;
            }
            let id = tree.nodes.len();
            let status = if reps.contains(&k) { NodeStatus::Unexpanded } else { NodeStatus::PrunedDuplicate };
            tree.nodes.push(TreeNode {
                id,
                parent: Some(p),
                depth: depth + 1,
                lattice: l,
                column: c,
                truant: None,
                status,
                excluded: Vec::new(),
            });
            if status == NodeStatus::Unexpanded {
                next.push(id);
            }
        }
        if tree.limit_hit.is_some() {
            break;
        }
        // parents' excluded lists are no longer needed once children exist
        level = next;
        if level.is_empty() {
            break;
        }
    }
    Ok(tree)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinimalRankRecord {
    pub m: i64,
    /// Smallest Hermitian rank of a certified universal lattice found, or
    /// `None` when nothing was certified within the depth limit.
    pub u_m: Option<usize>,
    /// Gram text of a witness lattice of rank `u_m`.
    pub witness: Option<String>,
    pub max_depth: usize,
    pub certify_bound: u64,
    pub nodes_examined: usize,
    pub note: String,
}

/// Smallest rank of a universal lattice reachable within `max_depth` escalation steps.
pub fn minimal_universal_rank(m: i64, certify_bound: u64, max_depth: usize) -> Result<MinimalRankRecord> {
    let opts = TreeOptions {
        max_depth,
        certify_bound,
        minimal_rank: true,
        max_nodes: usize::MAX,
        ..TreeOptions::default()
    };
    let tree = escalation_tree(m, &opts, None)?;
    let best = tree.certified().min_by_key(|n| (n.lattice.hermitian_rank(), n.id));
    Ok(MinimalRankRecord {
        m,
        u_m: best.map(|n| n.lattice.hermitian_rank()),
        witness: best.map(|n| n.lattice.to_string()),
        max_depth,
        certify_bound,
        nodes_examined: tree.nodes.iter().filter(|n| n.status != NodeStatus::Skipped).count(),
        note: format!(
            "lower ranks ruled out by truants of every lattice reached in at most {} escalation steps; \
             universality of the witness: all integers up to {} represented (290 criterion)",
            max_depth, certify_bound
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m3_rank_two() {
        let opts = TreeOptions { max_depth: 1, ..TreeOptions::default() };
        let t = escalation_tree(3, &opts, None).unwrap();
        let c: Vec<String> = t.certified().map(|n| n.lattice.to_string()).collect();
        assert!(c.contains(&"m=3 rank=2; 1,0; 0,1".to_string()), "{:?}", c);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let mut cache = ResultCache::default();
        let opts = TreeOptions { max_depth: 1, ..TreeOptions::default() };
        let a = escalation_tree(11, &opts, Some(&mut cache)).unwrap();
        cache.save(&path).unwrap();
        let mut loaded = ResultCache::load(&path).unwrap();
        assert_eq!(loaded.len(), cache.len());
        let b = escalation_tree(11, &opts, Some(&mut loaded)).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
