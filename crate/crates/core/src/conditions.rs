//! Degree conditions over dominating, dominated and non-adjacent pairs.
//!
//! Every checker walks pairs in lexicographic order and reports the first
//! pair that breaks its bound, together with the two degrees.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::{BalancedBipartiteDigraph, PairKind, VertexPair, VertexRef};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "name", content = "k", rename_all = "lowercase")]
pub enum ConditionId {
    /// For every dominating pair: one degree `>= 2a-k`, the other `>= a+k`.
    Bk(usize),
    /// For every dominating pair: one degree `>= 2a-2`, the other `>= a+1`.
    #[serde(rename = "sharp")]
    SharpPremise,
    /// `d(u) + d(v) >= 3a` for every non-adjacent pair.
    NonAdjacent3a,
    /// `d(u) + d(v) >= 3a` for every dominating and every dominated pair.
    DomPairs3a,
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionId::Bk(k) => write!(f, "b{k}"),
            ConditionId::SharpPremise => f.write_str("sharp"),
            ConditionId::NonAdjacent3a => f.write_str("nonadjacent3a"),
            ConditionId::DomPairs3a => f.write_str("dompairs3a"),
        }
    }
}

impl std::str::FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "sharp" => Ok(ConditionId::SharpPremise),
            "nonadjacent3a" => Ok(ConditionId::NonAdjacent3a),
            "dompairs3a" => Ok(ConditionId::DomPairs3a),
            _ => lower
                .strip_prefix('b')
                .and_then(|k| k.parse().ok())
                .map(ConditionId::Bk)
                .ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "unknown condition `{s}` (expected b<k>, sharp, nonadjacent3a or dompairs3a)"
                    ))
                }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pair: VertexPair,
    pub degrees: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition_id: ConditionId,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl ConditionReport {
    fn from_witness(condition_id: ConditionId, witness: Option<Witness>) -> Self {
        ConditionReport {
            condition_id,
            holds: witness.is_none(),
            witness,
        }
    }
}

fn require_order(d: &BalancedBipartiteDigraph) -> Result<()> {
    if d.order() < 2 {
        return Err(Error::InvalidInput(format!(
            "degree conditions need a >= 2, got a = {}",
            d.order()
        )));
    }
    Ok(())
}

/// The asymmetric bound: one vertex reaches `high`, the other `low`, in
/// either order.
fn split_bound(du: usize, dv: usize, high: usize, low: usize) -> bool {
    (du >= high && dv >= low) || (dv >= high && du >= low)
}

fn first_violation(
    d: &BalancedBipartiteDigraph,
    kinds: &[PairKind],
    ok: impl Fn(usize, usize) -> bool,
) -> Option<Witness> {
    // Merge the pair lists so the witness is the lexicographically first pair
    // regardless of which kind produced it.
    let mut pairs: Vec<VertexPair> = kinds.iter().flat_map(|&k| d.pairs(k)).collect();
    pairs.sort_by_key(|p| (p.u, p.v));
    pairs.into_iter().find_map(|pair| {
        let degrees = (d.total_degree(pair.u), d.total_degree(pair.v));
        (!ok(degrees.0, degrees.1)).then_some(Witness { pair, degrees })
    })
}

/// Condition `B_k`. `k` may exceed `a`, in which case the bound is
/// unattainable and the condition holds only when no dominating pair exists.
pub fn satisfies_bk(d: &BalancedBipartiteDigraph, k: usize) -> Result<ConditionReport> {
    require_order(d)?;
    let a = d.order();
    let high = (2 * a).saturating_sub(k);
    let low = a + k;
    let w = first_violation(d, &[PairKind::Dominating], |du, dv| {
        split_bound(du, dv, high, low)
    });
    Ok(ConditionReport::from_witness(ConditionId::Bk(k), w))
}

pub fn satisfies_sharp_premise(d: &BalancedBipartiteDigraph) -> Result<ConditionReport> {
    require_order(d)?;
    let a = d.order();
    let w = first_violation(d, &[PairKind::Dominating], |du, dv| {
        split_bound(du, dv, 2 * a - 2, a + 1)
    });
    Ok(ConditionReport::from_witness(ConditionId::SharpPremise, w))
}

/// Every pair of distinct non-adjacent vertices, same-side pairs included,
/// has degree sum at least `3a`.
pub fn satisfies_nonadjacent_3a(d: &BalancedBipartiteDigraph) -> Result<ConditionReport> {
    require_order(d)?;
    let a = d.order();
    let vs: Vec<VertexRef> = d.vertices().collect();
    let mut witness = None;
    'outer: for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if d.adjacent(u, v) {
                continue;
            }
            let degrees = (d.total_degree(u), d.total_degree(v));
            if degrees.0 + degrees.1 < 3 * a {
                witness = Some(Witness {
                    pair: VertexPair {
                        u,
                        v,
                        kind: PairKind::NonAdjacent,
                    },
                    degrees,
                });
                break 'outer;
            }
        }
    }
    Ok(ConditionReport::from_witness(ConditionId::NonAdjacent3a, witness))
}

pub fn satisfies_dom_pairs_3a(d: &BalancedBipartiteDigraph) -> Result<ConditionReport> {
    require_order(d)?;
    let a = d.order();
    let w = first_violation(
        d,
        &[PairKind::Dominating, PairKind::Dominated],
        |du, dv| du + dv >= 3 * a,
    );
    Ok(ConditionReport::from_witness(ConditionId::DomPairs3a, w))
}

pub fn check(d: &BalancedBipartiteDigraph, id: ConditionId) -> Result<ConditionReport> {
    match id {
        ConditionId::Bk(k) => satisfies_bk(d, k),
        ConditionId::SharpPremise => satisfies_sharp_premise(d),
        ConditionId::NonAdjacent3a => satisfies_nonadjacent_3a(d),
        ConditionId::DomPairs3a => satisfies_dom_pairs_3a(d),
    }
}

/// Re-evaluates a witness against `d`: the pair must exist with the reported
/// kind and degrees, and those degrees must break the condition's bound.
pub fn witness_violates(d: &BalancedBipartiteDigraph, id: ConditionId, w: &Witness) -> bool {
    let a = d.order();
    let (u, v) = (w.pair.u, w.pair.v);
    if d.check_vertex(u).is_err() || d.check_vertex(v).is_err() || !d.is_pair(u, v, w.pair.kind) {
        return false;
    }
    let (du, dv) = (d.total_degree(u), d.total_degree(v));
    if (du, dv) != w.degrees {
        return false;
    }
    match (id, w.pair.kind) {
        (ConditionId::Bk(k), PairKind::Dominating) => {
            !split_bound(du, dv, (2 * a).saturating_sub(k), a + k)
        }
        (ConditionId::SharpPremise, PairKind::Dominating) => {
            !split_bound(du, dv, 2 * a - 2, a + 1)
        }
        (ConditionId::NonAdjacent3a, PairKind::NonAdjacent) => du + dv < 3 * a,
        (ConditionId::DomPairs3a, PairKind::Dominating | PairKind::Dominated) => du + dv < 3 * a,
        _ => false,
    }
}
