//! Perfect matchings between the partite sets, Hall-condition witnesses and
//! cycle factors.
//!
//! A balanced bipartite digraph has a cycle factor exactly when it has a
//! perfect matching `V1 -> V2` and a perfect matching `V2 -> V1`: following
//! the first and then the second alternately from any vertex closes a cycle,
//! and the cycles so obtained partition the vertex set.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::{BalancedBipartiteDigraph, Side, VertexRef};
use crate::ham::Cycle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatchingDirection {
    V1toV2,
    V2toV1,
}

impl MatchingDirection {
    pub const BOTH: [MatchingDirection; 2] = [MatchingDirection::V1toV2, MatchingDirection::V2toV1];

    pub fn source(self) -> Side {
        match self {
            MatchingDirection::V1toV2 => Side::V1,
            MatchingDirection::V2toV1 => Side::V2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub direction: MatchingDirection,
    /// `assignment[i]` is the index of the opposite-side vertex matched to
    /// source vertex `i`.
    pub assignment: Vec<Option<usize>>,
}

impl Matching {
    pub fn is_perfect(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    pub fn size(&self) -> usize {
        self.assignment.iter().flatten().count()
    }

    /// Targets distinct and every matched pair an arc in the stated direction.
    pub fn is_valid_in(&self, d: &BalancedBipartiteDigraph) -> bool {
        let src = self.direction.source();
        let mut used = 0u64;
        self.assignment.len() == d.order()
            && self.assignment.iter().enumerate().all(|(i, t)| match *t {
                None => true,
                Some(j) => {
                    let fresh = j < d.order() && used >> j & 1 == 0;
                    used |= 1 << j.min(63);
                    fresh
                        && d.has_arc(
                            VertexRef { side: src, index: i },
                            VertexRef {
                                side: src.opposite(),
                                index: j,
                            },
                        )
                }
            })
    }
}

/// A maximum matching in the given direction by repeated augmenting paths,
/// trying sources and targets in increasing index order.
pub fn maximum_matching(d: &BalancedBipartiteDigraph, direction: MatchingDirection) -> Matching {
    let a = d.order();
    let src = direction.source();
    let rows: Vec<u64> = d.side_vertices(src).map(|v| d.out_row(v)).collect();
    let mut of_source: Vec<Option<usize>> = vec![None; a];
    let mut of_target: Vec<Option<usize>> = vec![None; a];

    fn augment(
        s: usize,
        rows: &[u64],
        visited: &mut u64,
        of_source: &mut [Option<usize>],
        of_target: &mut [Option<usize>],
    ) -> bool {
        let mut row = rows[s] & !*visited;
        while row != 0 {
            let t = row.trailing_zeros() as usize;
            row &= row - 1;
            if *visited >> t & 1 == 1 {
                continue;
            }
            *visited |= 1 << t;
            let free = match of_target[t] {
                None => true,
                Some(other) => augment(other, rows, visited, of_source, of_target),
            };
            if free {
                of_source[s] = Some(t);
                of_target[t] = Some(s);
                return true;
            }
        }
        false
    }

    for s in 0..a {
        let mut visited = 0u64;
        augment(s, &rows, &mut visited, &mut of_source, &mut of_target);
    }
    Matching {
        direction,
        assignment: of_source,
    }
}

pub fn perfect_matching(d: &BalancedBipartiteDigraph, direction: MatchingDirection) -> Option<Matching> {
    let m = maximum_matching(d, direction);
    m.is_perfect().then_some(m)
}

/// A source-side set `S` with `|N+(S)| < |S|`, if one exists.
///
/// Taken from a maximum matching: the sources reachable by alternating
/// paths from the first unmatched source. Every target they reach is
/// matched back into the set, so `|N+(S)| = |S| - 1`.
pub fn hall_violation(
    d: &BalancedBipartiteDigraph,
    direction: MatchingDirection,
) -> Option<BTreeSet<VertexRef>> {
    let m = maximum_matching(d, direction);
    let root = m.assignment.iter().position(Option::is_none)?;
    let src = direction.source();
    let a = d.order();
    let mut of_target = vec![None; a];
    for (s, t) in m.assignment.iter().enumerate() {
        if let Some(t) = *t {
            of_target[t] = Some(s);
        }
    }
    let mut in_set = 1u64 << root;
    let mut reached_targets = 0u64;
    let mut stack = vec![root];
    while let Some(s) = stack.pop() {
        let mut fresh = d.out_row(VertexRef { side: src, index: s }) & !reached_targets;
        reached_targets |= fresh;
        while fresh != 0 {
            let t = fresh.trailing_zeros() as usize;
            fresh &= fresh - 1;
            let s2 = of_target[t].expect("maximum matching leaves no augmenting path");
            if in_set >> s2 & 1 == 0 {
                in_set |= 1 << s2;
                stack.push(s2);
            }
        }
    }
    Some(
        (0..a)
            .filter(|&i| in_set >> i & 1 == 1)
            .map(|index| VertexRef { side: src, index })
            .collect(),
    )
}

/// Vertex-disjoint cycles covering every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleFactor {
    pub cycles: Vec<Cycle>,
}

impl CycleFactor {
    /// Every cycle valid in `d`, cycles pairwise disjoint and covering all `2a` vertices.
    pub fn is_valid_in(&self, d: &BalancedBipartiteDigraph) -> bool {
        let mut seen = BTreeSet::new();
        for c in &self.cycles {
            if !c.is_valid_in(d) {
                return false;
            }
            for &v in c.vertices() {
                if !seen.insert(v) {
                    return false;
                }
            }
        }
        seen.len() == d.vertex_count()
    }
}

impl fmt::Display for CycleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cycles.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "[{c}]")?;
        }
        Ok(())
    }
}

impl Serialize for CycleFactor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.cycles.iter().map(|c| c.to_string()))
    }
}

/// Follows the `V1 -> V2` matching then the `V2 -> V1` matching until each
/// cycle closes, starting every new cycle at the smallest unvisited `x_i`.
pub fn cycle_factor(d: &BalancedBipartiteDigraph) -> Option<CycleFactor> {
    let forward = perfect_matching(d, MatchingDirection::V1toV2)?;
    let back = perfect_matching(d, MatchingDirection::V2toV1)?;
    let a = d.order();
    let mut visited = vec![false; a];
    let mut cycles = Vec::new();
    for start in 0..a {
        if visited[start] {
            continue;
        }
        let mut verts = Vec::new();
        let mut x = start;
        while !visited[x] {
            visited[x] = true;
            let y = forward.assignment[x].expect("perfect");
            verts.push(VertexRef::x(x));
            verts.push(VertexRef::y(y));
            x = back.assignment[y].expect("perfect");
        }
        debug_assert_eq!(x, start);
        cycles.push(Cycle::new_unchecked(verts));
    }
    Some(CycleFactor { cycles })
}
