//! Balanced bipartite digraphs stored as two bit matrices.
//!
//! Vertices are `x_0..x_{a-1}` on side `V1` and `y_0..y_{a-1}` on side `V2`.
//! Every arc crosses sides, so loops and arcs inside a partite set cannot be
//! expressed. Internally each vertex also has a global id: `x_i -> i`,
//! `y_j -> a + j`, which the subset DPs use as bit positions.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported partite-set size (one `u64` row per vertex).
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    V1,
    V2,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::V1 => Side::V2,
            Side::V2 => Side::V1,
        }
    }
}

/// A vertex named by its side and 0-based index: `x_i` is `(V1, i)`, `y_j` is `(V2, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexRef {
    pub side: Side,
    pub index: usize,
}

impl VertexRef {
    pub const fn x(index: usize) -> Self {
        VertexRef { side: Side::V1, index }
    }

    pub const fn y(index: usize) -> Self {
        VertexRef { side: Side::V2, index }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::V1 => write!(f, "x{}", self.index),
            Side::V2 => write!(f, "y{}", self.index),
        }
    }
}

impl std::str::FromStr for VertexRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad vertex name `{s}`"));
        let (side, rest) = match s.as_bytes().first() {
            Some(b'x') => (Side::V1, &s[1..]),
            Some(b'y') => (Side::V2, &s[1..]),
            _ => return Err(bad()),
        };
        let index = rest.parse().map_err(|_| bad())?;
        Ok(VertexRef { side, index })
    }
}

impl Serialize for VertexRef {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexRef {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    /// The two vertices share an out-neighbour.
    Dominating,
    /// The two vertices share an in-neighbour.
    Dominated,
    /// No arc joins the two vertices in either direction.
    NonAdjacent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexPair {
    pub u: VertexRef,
    pub v: VertexRef,
    pub kind: PairKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Out,
    In,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree {
    pub out_degree: usize,
    pub in_degree: usize,
    pub total: usize,
}

/// A balanced bipartite digraph with partite sets of size `a`.
///
/// `x_out[i]` has bit `j` set iff `x_i -> y_j`; `y_out[i]` has bit `j` set iff
/// `y_i -> x_j`. The transposes are kept alongside so in-neighbourhoods are
/// single word reads as well.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BalancedBipartiteDigraph {
    a: usize,
    x_out: Vec<u64>,
    y_out: Vec<u64>,
    x_in: Vec<u64>,
    y_in: Vec<u64>,
}

impl fmt::Debug for BalancedBipartiteDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BalancedBipartiteDigraph {{ a: {}, arcs: [", self.a)?;
        let mut first = true;
        for (u, v) in self.arcs() {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{u}->{v}")?;
        }
        f.write_str("] }")
    }
}

fn low_mask(a: usize) -> u64 {
    if a >= 64 {
        u64::MAX
    } else {
        (1u64 << a) - 1
    }
}

fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(b)
        }
    })
}

impl BalancedBipartiteDigraph {
    /// The arcless digraph on `2a` vertices.
    pub fn empty(a: usize) -> Result<Self> {
        if a == 0 || a > MAX_ORDER {
            return Err(Error::InvalidInput(format!(
                "partite set size must be in 1..={MAX_ORDER}, got {a}"
            )));
        }
        Ok(BalancedBipartiteDigraph {
            a,
            x_out: vec![0; a],
            y_out: vec![0; a],
            x_in: vec![0; a],
            y_in: vec![0; a],
        })
    }

    /// Every one of the `2a²` possible arcs present.
    pub fn complete(a: usize) -> Result<Self> {
        let mut d = Self::empty(a)?;
        for i in 0..a {
            for j in 0..a {
                d.insert_arc(VertexRef::x(i), VertexRef::y(j))?;
                d.insert_arc(VertexRef::y(i), VertexRef::x(j))?;
            }
        }
        Ok(d)
    }

    /// Builds a digraph from the two `a x a` matrices (`m1[i][j]`: `x_i -> y_j`,
    /// `m2[i][j]`: `y_i -> x_j`).
    pub fn from_matrices(m1: &[Vec<bool>], m2: &[Vec<bool>]) -> Result<Self> {
        let a = m1.len();
        let mut d = Self::empty(a)?;
        if m2.len() != a || m1.iter().chain(m2).any(|row| row.len() != a) {
            return Err(Error::InvalidInput("arc matrices must both be a x a".into()));
        }
        for i in 0..a {
            for j in 0..a {
                if m1[i][j] {
                    d.insert_arc(VertexRef::x(i), VertexRef::y(j))?;
                }
                if m2[i][j] {
                    d.insert_arc(VertexRef::y(i), VertexRef::x(j))?;
                }
            }
        }
        Ok(d)
    }

    /// Builds a digraph from an arc list. Each arc must cross sides.
    pub fn from_arcs(a: usize, arcs: &[(VertexRef, VertexRef)]) -> Result<Self> {
        let mut d = Self::empty(a)?;
        for &(u, v) in arcs {
            d.insert_arc(u, v)?;
        }
        Ok(d)
    }

    pub fn order(&self) -> usize {
        self.a
    }

    /// Number of vertices, `2a`.
    pub fn vertex_count(&self) -> usize {
        2 * self.a
    }

    pub fn check_vertex(&self, v: VertexRef) -> Result<()> {
        if v.index < self.a {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "vertex {v} out of range for a = {}",
                self.a
            )))
        }
    }

    fn check_arc(&self, u: VertexRef, v: VertexRef) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u.side == v.side {
            return Err(Error::InvalidInput(format!(
                "arc {u}->{v} lies inside one partite set"
            )));
        }
        Ok(())
    }

    pub fn insert_arc(&mut self, u: VertexRef, v: VertexRef) -> Result<()> {
        self.set_arc(u, v, true)
    }

    pub fn remove_arc(&mut self, u: VertexRef, v: VertexRef) -> Result<()> {
        self.set_arc(u, v, false)
    }

    pub fn set_arc(&mut self, u: VertexRef, v: VertexRef, present: bool) -> Result<()> {
        self.check_arc(u, v)?;
        let (out, inn) = match u.side {
            Side::V1 => (&mut self.x_out, &mut self.y_in),
            Side::V2 => (&mut self.y_out, &mut self.x_in),
        };
        if present {
            out[u.index] |= 1 << v.index;
            inn[v.index] |= 1 << u.index;
        } else {
            out[u.index] &= !(1 << v.index);
            inn[v.index] &= !(1 << u.index);
        }
        Ok(())
    }

    /// Whether `u -> v` is an arc. Same-side or out-of-range pairs are never arcs.
    pub fn has_arc(&self, u: VertexRef, v: VertexRef) -> bool {
        if u.side == v.side || u.index >= self.a || v.index >= self.a {
            return false;
        }
        self.out_row(u) >> v.index & 1 == 1
    }

    pub fn adjacent(&self, u: VertexRef, v: VertexRef) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Out-neighbours of `v` as a bit row over the opposite side.
    pub fn out_row(&self, v: VertexRef) -> u64 {
        match v.side {
            Side::V1 => self.x_out[v.index],
            Side::V2 => self.y_out[v.index],
        }
    }

    /// In-neighbours of `v` as a bit row over the opposite side.
    pub fn in_row(&self, v: VertexRef) -> u64 {
        match v.side {
            Side::V1 => self.x_in[v.index],
            Side::V2 => self.y_in[v.index],
        }
    }

    pub fn arc_count(&self) -> usize {
        self.x_out
            .iter()
            .chain(&self.y_out)
            .map(|r| r.count_ones() as usize)
            .sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        self.side_vertices(Side::V1).chain(self.side_vertices(Side::V2))
    }

    pub fn side_vertices(&self, side: Side) -> impl Iterator<Item = VertexRef> {
        (0..self.a).map(move |index| VertexRef { side, index })
    }

    /// All arcs, `x` rows first, each row in increasing target order.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexRef, VertexRef)> + '_ {
        self.vertices().flat_map(move |u| {
            bits(self.out_row(u)).map(move |j| {
                (
                    u,
                    VertexRef {
                        side: u.side.opposite(),
                        index: j,
                    },
                )
            })
        })
    }

    pub fn degree(&self, v: VertexRef) -> Result<Degree> {
        self.check_vertex(v)?;
        Ok(self.degree_unchecked(v))
    }

    pub(crate) fn degree_unchecked(&self, v: VertexRef) -> Degree {
        let out_degree = self.out_row(v).count_ones() as usize;
        let in_degree = self.in_row(v).count_ones() as usize;
        Degree {
            out_degree,
            in_degree,
            total: out_degree + in_degree,
        }
    }

    /// Total degree `d(v)`; `v` must be in range.
    pub fn total_degree(&self, v: VertexRef) -> usize {
        self.degree_unchecked(v).total
    }

    /// `N+(S)` or `N-(S)` for a set `S` drawn from a single side.
    pub fn neighborhood(
        &self,
        set: &BTreeSet<VertexRef>,
        direction: Direction,
    ) -> Result<BTreeSet<VertexRef>> {
        let Some(first) = set.iter().next() else {
            return Ok(BTreeSet::new());
        };
        let side = first.side;
        let mut acc = 0u64;
        for &v in set {
            self.check_vertex(v)?;
            if v.side != side {
                return Err(Error::InvalidInput(
                    "neighbourhood set mixes both partite sets".into(),
                ));
            }
            acc |= match direction {
                Direction::Out => self.out_row(v),
                Direction::In => self.in_row(v),
            };
        }
        let target = side.opposite();
        Ok(bits(acc)
            .map(|index| VertexRef {
                side: target,
                index,
            })
            .collect())
    }

    /// Unordered same-side pairs with a common out-neighbour (`Dominating`) or
    /// common in-neighbour (`Dominated`), in lexicographic order.
    pub fn pairs(&self, kind: PairKind) -> Vec<VertexPair> {
        let mut out = Vec::new();
        for side in [Side::V1, Side::V2] {
            for i in 0..self.a {
                for j in i + 1..self.a {
                    let u = VertexRef { side, index: i };
                    let v = VertexRef { side, index: j };
                    if self.is_pair(u, v, kind) {
                        out.push(VertexPair { u, v, kind });
                    }
                }
            }
        }
        out
    }

    /// Whether `{u, v}` is a pair of the given kind in this digraph.
    pub fn is_pair(&self, u: VertexRef, v: VertexRef, kind: PairKind) -> bool {
        if u == v {
            return false;
        }
        match kind {
            PairKind::Dominating => u.side == v.side && self.out_row(u) & self.out_row(v) != 0,
            PairKind::Dominated => u.side == v.side && self.in_row(u) & self.in_row(v) != 0,
            PairKind::NonAdjacent => !self.adjacent(u, v),
        }
    }

    /// The digraph with every arc reversed.
    pub fn reversed(&self) -> Self {
        BalancedBipartiteDigraph {
            a: self.a,
            x_out: self.x_in.clone(),
            y_out: self.y_in.clone(),
            x_in: self.x_out.clone(),
            y_in: self.y_out.clone(),
        }
    }

    /// The digraph with the roles of `V1` and `V2` exchanged (`x_i <-> y_i`).
    pub fn mirrored(&self) -> Self {
        BalancedBipartiteDigraph {
            a: self.a,
            x_out: self.y_out.clone(),
            y_out: self.x_out.clone(),
            x_in: self.y_in.clone(),
            y_in: self.x_in.clone(),
        }
    }

    /// Relabels vertices: `x_i -> x_{p1[i]}`, `y_j -> y_{p2[j]}`.
    pub fn permuted(&self, p1: &[usize], p2: &[usize]) -> Result<Self> {
        let is_perm = |p: &[usize]| {
            let mut seen = vec![false; self.a];
            p.len() == self.a && p.iter().all(|&i| i < self.a && !std::mem::replace(&mut seen[i], true))
        };
        if !is_perm(p1) || !is_perm(p2) {
            return Err(Error::InvalidInput("relabelling is not a permutation".into()));
        }
        let map = |v: VertexRef| match v.side {
            Side::V1 => VertexRef::x(p1[v.index]),
            Side::V2 => VertexRef::y(p2[v.index]),
        };
        let mut d = Self::empty(self.a)?;
        for (u, v) in self.arcs() {
            d.insert_arc(map(u), map(v))?;
        }
        Ok(d)
    }

    /// Whether every ordered pair of vertices is joined by a directed path.
    ///
    /// Forward and backward reachability from `x_0`, both computed on the
    /// bit rows.
    pub fn is_strong(&self) -> bool {
        self.reach_all(false) && self.reach_all(true)
    }

    fn reach_all(&self, backward: bool) -> bool {
        let full = low_mask(self.a);
        let (mut seen_x, mut seen_y) = (1u64, 0u64);
        let (mut frontier_x, mut frontier_y) = (1u64, 0u64);
        while frontier_x | frontier_y != 0 {
            let mut next_y = 0;
            for i in bits(frontier_x) {
                next_y |= if backward { self.x_in[i] } else { self.x_out[i] };
            }
            let mut next_x = 0;
            for j in bits(frontier_y) {
                next_x |= if backward { self.y_in[j] } else { self.y_out[j] };
            }
            frontier_x = next_x & !seen_x;
            frontier_y = next_y & !seen_y;
            seen_x |= frontier_x;
            seen_y |= frontier_y;
        }
        seen_x == full && seen_y == full
    }

    /// Whether every cross-side pair is adjacent.
    pub fn is_semicomplete(&self) -> bool {
        let full = low_mask(self.a);
        (0..self.a).all(|i| (self.x_out[i] | self.x_in[i]) == full)
    }

    pub(crate) fn vertex_of(&self, id: usize) -> VertexRef {
        if id < self.a {
            VertexRef::x(id)
        } else {
            VertexRef::y(id - self.a)
        }
    }

    /// Out-neighbours of every vertex as masks over global ids. Only valid for `a <= 32`.
    pub(crate) fn global_out_masks(&self) -> Vec<u64> {
        debug_assert!(self.a <= 32);
        let a = self.a;
        self.x_out
            .iter()
            .map(|&r| r << a)
            .chain(self.y_out.iter().copied())
            .collect()
    }

    /// Arc bits packed into a little-endian word vector: bit `i*a + j` is
    /// `x_i -> y_j` and bit `a² + i*a + j` is `y_i -> x_j`. Comparing the
    /// resulting integers orders digraphs the same way enumeration does.
    pub fn arc_code(&self) -> ArcCode {
        let a = self.a;
        let nbits = 2 * a * a;
        let mut limbs = vec![0u64; nbits.div_ceil(64)];
        for (base, rows) in [(0, &self.x_out), (a * a, &self.y_out)] {
            for (i, &row) in rows.iter().enumerate() {
                for j in bits(row) {
                    let b = base + i * a + j;
                    limbs[b / 64] |= 1 << (b % 64);
                }
            }
        }
        ArcCode { a, limbs }
    }

    /// Inverse of [`arc_code`](Self::arc_code) for the single-word case (`a <= 5`).
    pub fn from_code(a: usize, code: u64) -> Result<Self> {
        if a == 0 || 2 * a * a > 64 {
            return Err(Error::Capacity(format!(
                "single-word arc codes need 1 <= a <= 5, got {a}"
            )));
        }
        let mut d = Self::empty(a)?;
        let row = low_mask(a);
        for i in 0..a {
            let xr = (code >> (i * a)) & row;
            let yr = (code >> (a * a + i * a)) & row;
            d.x_out[i] = xr;
            d.y_out[i] = yr;
            for j in bits(xr) {
                d.y_in[j] |= 1 << i;
            }
            for j in bits(yr) {
                d.x_in[j] |= 1 << i;
            }
        }
        Ok(d)
    }
}

/// The `2a²`-bit arc-matrix integer of a digraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcCode {
    a: usize,
    limbs: Vec<u64>,
}

impl ArcCode {
    /// The code as a single word, if it fits.
    pub fn as_u64(&self) -> Option<u64> {
        match self.limbs.as_slice() {
            [] => Some(0),
            [w] => Some(*w),
            _ => None,
        }
    }
}

impl Ord for ArcCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a
            .cmp(&other.a)
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for ArcCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
