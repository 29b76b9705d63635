//! Exact Hamiltonicity and longest cycles by subset dynamic programming,
//! plus the merge-bound check against a longest cycle.

use std::fmt;

use serde::Serialize;

use crate::digraph::{BalancedBipartiteDigraph, Side, VertexRef};
use crate::error::{Error, Result};

/// Largest partite-set size the subset DP accepts (`2^(2a-1)` table words).
pub const DP_MAX_ORDER: usize = 12;

/// Largest partite-set size the permutation oracle accepts.
pub const BRUTEFORCE_MAX_ORDER: usize = 6;

/// A directed cycle, stored as its vertex sequence starting on `V1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<VertexRef>,
}

impl Cycle {
    /// Validates `vertices` as a cycle of `d`: non-empty, distinct, every
    /// consecutive arc and the closing arc present. The sequence is rotated
    /// to start at its first `V1` vertex.
    pub fn new(d: &BalancedBipartiteDigraph, vertices: Vec<VertexRef>) -> Result<Self> {
        let c = Cycle::new_unchecked(vertices);
        if c.is_valid_in(d) {
            Ok(c)
        } else {
            Err(Error::InvalidInput(format!("`{c}` is not a cycle of the digraph")))
        }
    }

    pub(crate) fn new_unchecked(mut vertices: Vec<VertexRef>) -> Self {
        if let Some(p) = vertices.iter().position(|v| v.side == Side::V1) {
            vertices.rotate_left(p);
        }
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[VertexRef] {
        &self.vertices
    }

    /// Number of vertices (always even in a bipartite digraph).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        self.vertices.contains(&v)
    }

    pub fn is_valid_in(&self, d: &BalancedBipartiteDigraph) -> bool {
        let n = self.vertices.len();
        if n < 2 || self.vertices.iter().any(|&v| d.check_vertex(v).is_err()) {
            return false;
        }
        let mut sorted = self.vertices.clone();
        sorted.sort();
        sorted.dedup();
        sorted.len() == n
            && (0..n).all(|i| d.has_arc(self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Serialize for Cycle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn require_dp_capacity(d: &BalancedBipartiteDigraph) -> Result<()> {
    if d.order() > DP_MAX_ORDER {
        return Err(Error::Capacity(format!(
            "subset DP supports a <= {DP_MAX_ORDER}, got a = {}",
            d.order()
        )));
    }
    Ok(())
}

/// Path-completion table for cycles whose smallest global id is `anchor`.
///
/// Entry `idx` describes the vertex set `idx << (anchor + 1)`: bit `v` is set
/// when some path starting at `v` visits exactly that set and its last
/// vertex has an arc back to `anchor`.
struct CompletionTable {
    anchor: usize,
    entries: Vec<u32>,
}

impl CompletionTable {
    fn build(out: &[u64], anchor: usize) -> Self {
        let n = out.len();
        let shift = anchor + 1;
        let free = n - shift;
        let mut entries = vec![0u32; 1usize << free];
        let closes = |v: usize| out[v] >> anchor & 1 == 1;
        for idx in 1..entries.len() {
            let set = (idx as u64) << shift;
            let mut starts = 0u32;
            let mut rest = set;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let others = set & !(1 << v);
                let ok = if others == 0 {
                    closes(v)
                } else {
                    out[v] & ((entries[(others >> shift) as usize] as u64) << shift) != 0
                };
                if ok {
                    starts |= 1 << (v - shift);
                }
            }
            entries[idx] = starts;
        }
        CompletionTable { anchor, entries }
    }

    fn shift(&self) -> usize {
        self.anchor + 1
    }

    /// Global ids that can start a completion covering exactly `set`.
    fn starts(&self, set: u64) -> u64 {
        (self.entries[(set >> self.shift()) as usize] as u64) << self.shift()
    }

    /// Whether `anchor` followed by a completion of `set` is a cycle.
    fn closes(&self, out: &[u64], set: u64) -> bool {
        set != 0 && out[self.anchor] & self.starts(set) != 0
    }

    /// Lexicographically smallest cycle through `anchor` and exactly `set`.
    fn reconstruct(&self, d: &BalancedBipartiteDigraph, out: &[u64], set: u64) -> Cycle {
        let mut seq = vec![d.vertex_of(self.anchor)];
        let mut cur = self.anchor;
        let mut rem = set;
        while rem != 0 {
            let cand = out[cur] & self.starts(rem);
            debug_assert!(cand != 0);
            let v = cand.trailing_zeros() as usize;
            seq.push(d.vertex_of(v));
            rem &= !(1 << v);
            cur = v;
        }
        Cycle::new_unchecked(seq)
    }
}

/// A Hamiltonian cycle through `x_0`, if one exists.
///
/// Returns the lexicographically smallest such cycle in global-id order.
pub fn is_hamiltonian(d: &BalancedBipartiteDigraph) -> Result<Option<Cycle>> {
    require_dp_capacity(d)?;
    let out = d.global_out_masks();
    let n = out.len();
    // Every vertex needs an in- and an out-arc.
    if d.vertices().any(|v| d.out_row(v) == 0 || d.in_row(v) == 0) {
        return Ok(None);
    }
    let table = CompletionTable::build(&out, 0);
    let full = ((1u64 << n) - 1) & !1;
    Ok(table
        .closes(&out, full)
        .then(|| table.reconstruct(d, &out, full)))
}

/// A longest directed cycle, or `None` when the digraph is acyclic.
///
/// Ties are broken by the smallest lowest vertex, then by the smallest
/// vertex-set bitmask, then lexicographically within that set.
pub fn longest_cycle(d: &BalancedBipartiteDigraph) -> Result<Option<Cycle>> {
    require_dp_capacity(d)?;
    let out = d.global_out_masks();
    let n = out.len();
    let a = d.order();
    let mut best: Option<(usize, CompletionTable, u64)> = None;
    // The lowest global id on any cycle is an `x` vertex.
    for anchor in 0..a {
        let room = n - anchor;
        if best.as_ref().is_some_and(|(len, _, _)| *len >= room) {
            break;
        }
        let table = CompletionTable::build(&out, anchor);
        let mut found: Option<(usize, u64)> = None;
        for idx in 1..table.entries.len() as u64 {
            let set = idx << table.shift();
            let len = set.count_ones() as usize + 1;
            if found.is_some_and(|(l, _)| l >= len) {
                continue;
            }
            if table.closes(&out, set) {
                found = Some((len, set));
            }
        }
        if let Some((len, set)) = found {
            if best.as_ref().is_none_or(|(l, _, _)| len > *l) {
                best = Some((len, table, set));
            }
        }
    }
    Ok(best.map(|(_, table, set)| table.reconstruct(d, &out, set)))
}

/// Whether the digraph has a cycle of at least `min_len` vertices.
pub fn has_cycle_at_least(d: &BalancedBipartiteDigraph, min_len: usize) -> Result<bool> {
    if min_len < 2 || min_len % 2 == 1 {
        return Err(Error::InvalidInput(format!(
            "cycle length bound must be even and at least 2, got {min_len}"
        )));
    }
    Ok(longest_cycle(d)?.is_some_and(|c| c.len() >= min_len))
}

/// Outcome of checking the merge bound against one longest cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergeBoundReport {
    /// The longest cycle used, or `None` for an acyclic digraph.
    pub cycle: Option<Cycle>,
    /// Arcs with both ends off the cycle.
    pub arcs_checked: usize,
    pub violation: Option<MergeViolation>,
}

impl MergeBoundReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// An off-cycle arc `u -> v` that could be spliced into the cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergeViolation {
    pub u: VertexRef,
    pub v: VertexRef,
    /// Cycle vertices dominating `u`.
    pub in_on_cycle: usize,
    /// Cycle vertices dominated by `v`.
    pub out_on_cycle: usize,
    /// Half the cycle length.
    pub half_length: usize,
    /// A consecutive cycle pair `(p, q)` with `p -> u` and `v -> q`, if any.
    pub splice: Option<(VertexRef, VertexRef)>,
}

/// For a longest cycle `C` of length `2m` and every arc `u -> v` with both
/// ends off `C`: no consecutive pair `p q` of `C` (with `q` on `u`'s side)
/// has `p -> u` and `v -> q`, and `|N-(u) ∩ C| + |N+(v) ∩ C| <= m`.
///
/// Labelling `C` so its `x`-vertices share `u`'s side covers both arc
/// orientations. A violation means the cycle was not longest.
pub fn check_merge_bound(d: &BalancedBipartiteDigraph) -> Result<MergeBoundReport> {
    let Some(cycle) = longest_cycle(d)? else {
        return Ok(MergeBoundReport {
            cycle: None,
            arcs_checked: 0,
            violation: None,
        });
    };
    let verts = cycle.vertices();
    let len = verts.len();
    let m = len / 2;
    let mut arcs_checked = 0;
    let mut violation = None;
    for (u, v) in d.arcs() {
        if cycle.contains(u) || cycle.contains(v) {
            continue;
        }
        arcs_checked += 1;
        let splice = (0..len)
            .map(|k| (verts[k], verts[(k + 1) % len]))
            .find(|&(p, q)| q.side == u.side && d.has_arc(p, u) && d.has_arc(v, q));
        let in_on_cycle = verts.iter().filter(|&&p| d.has_arc(p, u)).count();
        let out_on_cycle = verts.iter().filter(|&&q| d.has_arc(v, q)).count();
        if splice.is_some() || in_on_cycle + out_on_cycle > m {
            violation = Some(MergeViolation {
                u,
                v,
                in_on_cycle,
                out_on_cycle,
                half_length: m,
                splice,
            });
            break;
        }
    }
    Ok(MergeBoundReport {
        cycle: Some(cycle),
        arcs_checked,
        violation,
    })
}

/// Independent Hamiltonicity oracle: tries every interleaving of the two
/// partite sets with `x_0` fixed first.
pub fn is_hamiltonian_bruteforce(d: &BalancedBipartiteDigraph) -> Result<Option<Cycle>> {
    let a = d.order();
    if a > BRUTEFORCE_MAX_ORDER {
        return Err(Error::Capacity(format!(
            "permutation oracle supports a <= {BRUTEFORCE_MAX_ORDER}, got a = {a}"
        )));
    }
    let mut xs: Vec<usize> = (1..a).collect();
    loop {
        let mut ys: Vec<usize> = (0..a).collect();
        loop {
            let seq: Vec<VertexRef> = std::iter::once(0)
                .chain(xs.iter().copied())
                .zip(&ys)
                .flat_map(|(x, &y)| [VertexRef::x(x), VertexRef::y(y)])
                .collect();
            let n = seq.len();
            if (0..n).all(|i| d.has_arc(seq[i], seq[(i + 1) % n])) {
                return Ok(Some(Cycle::new_unchecked(seq)));
            }
            if !next_permutation(&mut ys) {
                break;
            }
        }
        if !next_permutation(&mut xs) {
            return Ok(None);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
