//! The four exceptional non-Hamiltonian digraphs and isomorphism testing
//! against them.
//!
//! Each of `H1`, `H2`, `H2X` and `H3` is strong, satisfies the
//! `(2a-2, a+1)` dominating-pair premise, and has no Hamiltonian cycle.
//! Arc lists use the 0-based names of this crate (`x_0` is the first `V1`
//! vertex).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::{BalancedBipartiteDigraph, Side, VertexRef};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExceptionName {
    H1,
    H2,
    /// `H2` with the optional arc `x_2 -> y_0`.
    H2X,
    H3,
}

impl ExceptionName {
    pub const ALL: [ExceptionName; 4] = [
        ExceptionName::H1,
        ExceptionName::H2,
        ExceptionName::H2X,
        ExceptionName::H3,
    ];
}

impl fmt::Display for ExceptionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExceptionName::H1 => "h1",
            ExceptionName::H2 => "h2",
            ExceptionName::H2X => "h2x",
            ExceptionName::H3 => "h3",
        })
    }
}

impl std::str::FromStr for ExceptionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h1" => Ok(ExceptionName::H1),
            "h2" => Ok(ExceptionName::H2),
            "h2x" => Ok(ExceptionName::H2X),
            "h3" => Ok(ExceptionName::H3),
            _ => Err(Error::InvalidInput(format!(
                "unknown exception `{s}` (expected h1, h2, h2x or h3)"
            ))),
        }
    }
}

const X: fn(usize) -> VertexRef = VertexRef::x;
const Y: fn(usize) -> VertexRef = VertexRef::y;

fn with_two_cycles(
    a: usize,
    two_cycles: &[(VertexRef, VertexRef)],
    one_way: &[(VertexRef, VertexRef)],
) -> BalancedBipartiteDigraph {
    let mut d = BalancedBipartiteDigraph::empty(a).expect("catalog order is valid");
    for &(u, v) in two_cycles {
        d.insert_arc(u, v).expect("catalog arc");
        d.insert_arc(v, u).expect("catalog arc");
    }
    for &(u, v) in one_way {
        d.insert_arc(u, v).expect("catalog arc");
    }
    d
}

pub fn build_exception(name: ExceptionName) -> BalancedBipartiteDigraph {
    match name {
        // x0 and y1 are non-adjacent; y0 and x1 carry every other arc.
        ExceptionName::H1 => with_two_cycles(2, &[(X(0), Y(0)), (X(1), Y(0)), (X(1), Y(1))], &[]),
        ExceptionName::H2 | ExceptionName::H2X => {
            let mut d = with_two_cycles(
                3,
                &[(X(0), Y(0)), (X(1), Y(0)), (X(2), Y(1)), (X(2), Y(2))],
                &[
                    (Y(1), X(0)),
                    (Y(1), X(1)),
                    (Y(2), X(0)),
                    (Y(2), X(1)),
                    (Y(0), X(2)),
                ],
            );
            if name == ExceptionName::H2X {
                d.insert_arc(X(2), Y(0)).expect("catalog arc");
            }
            d
        }
        // Two 2-cycle fans around y2 and x2, joined by the one-way 4-cycle
        // x0 -> y1 -> x1 -> y0 -> x0.
        ExceptionName::H3 => with_two_cycles(
            3,
            &[(Y(2), X(0)), (Y(2), X(1)), (X(2), Y(0)), (X(2), Y(1))],
            &[(X(0), Y(1)), (Y(1), X(1)), (X(1), Y(0)), (Y(0), X(0))],
        ),
    }
}

/// A vertex bijection between two digraphs of the same order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    /// `V1` of the source maps onto `V2` of the target (and vice versa).
    pub swap_sides: bool,
    /// Image index of each `x_i`.
    pub x_images: Vec<usize>,
    /// Image index of each `y_j`.
    pub y_images: Vec<usize>,
}

impl Isomorphism {
    pub fn apply(&self, v: VertexRef) -> VertexRef {
        let (index, side) = match v.side {
            Side::V1 => (self.x_images[v.index], Side::V1),
            Side::V2 => (self.y_images[v.index], Side::V2),
        };
        let side = if self.swap_sides { side.opposite() } else { side };
        VertexRef { side, index }
    }

    /// Whether this map sends the arc set of `from` exactly onto that of `to`.
    pub fn is_valid(&self, from: &BalancedBipartiteDigraph, to: &BalancedBipartiteDigraph) -> bool {
        from.order() == to.order()
            && from.arc_count() == to.arc_count()
            && from.arcs().all(|(u, v)| to.has_arc(self.apply(u), self.apply(v)))
    }
}

fn degree_profile(d: &BalancedBipartiteDigraph, side: Side) -> Vec<(u32, u32)> {
    let mut p: Vec<_> = d
        .side_vertices(side)
        .map(|v| (d.out_row(v).count_ones(), d.in_row(v).count_ones()))
        .collect();
    p.sort_unstable();
    p
}

/// Cheap necessary condition for a side-preserving isomorphism.
fn profiles_match(d1: &BalancedBipartiteDigraph, d2: &BalancedBipartiteDigraph) -> bool {
    d1.arc_count() == d2.arc_count()
        && degree_profile(d1, Side::V1) == degree_profile(d2, Side::V1)
        && degree_profile(d1, Side::V2) == degree_profile(d2, Side::V2)
}

struct SidePreservingSearch<'a> {
    from: &'a BalancedBipartiteDigraph,
    to: &'a BalancedBipartiteDigraph,
    x_images: Vec<usize>,
    y_images: Vec<usize>,
    used_x: u64,
    used_y: u64,
}

impl SidePreservingSearch<'_> {
    fn degree_of(d: &BalancedBipartiteDigraph, v: VertexRef) -> (u32, u32) {
        (d.out_row(v).count_ones(), d.in_row(v).count_ones())
    }

    fn assign_x(&mut self, i: usize) -> bool {
        let a = self.from.order();
        if i == a {
            return self.assign_y(0);
        }
        let want = Self::degree_of(self.from, VertexRef::x(i));
        for t in 0..a {
            if self.used_x >> t & 1 == 1 || Self::degree_of(self.to, VertexRef::x(t)) != want {
                continue;
            }
            self.used_x |= 1 << t;
            self.x_images.push(t);
            if self.assign_x(i + 1) {
                return true;
            }
            self.x_images.pop();
            self.used_x &= !(1 << t);
        }
        false
    }

    fn assign_y(&mut self, j: usize) -> bool {
        let a = self.from.order();
        if j == a {
            return true;
        }
        let yj = VertexRef::y(j);
        let want = Self::degree_of(self.from, yj);
        for t in 0..a {
            if self.used_y >> t & 1 == 1 || Self::degree_of(self.to, VertexRef::y(t)) != want {
                continue;
            }
            let yt = VertexRef::y(t);
            let consistent = (0..a).all(|i| {
                let (xi, xt) = (VertexRef::x(i), VertexRef::x(self.x_images[i]));
                self.from.has_arc(xi, yj) == self.to.has_arc(xt, yt)
                    && self.from.has_arc(yj, xi) == self.to.has_arc(yt, xt)
            });
            if !consistent {
                continue;
            }
            self.used_y |= 1 << t;
            self.y_images.push(t);
            if self.assign_y(j + 1) {
                return true;
            }
            self.y_images.pop();
            self.used_y &= !(1 << t);
        }
        false
    }
}

fn side_preserving(
    from: &BalancedBipartiteDigraph,
    to: &BalancedBipartiteDigraph,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if !profiles_match(from, to) {
        return None;
    }
    let mut s = SidePreservingSearch {
        from,
        to,
        x_images: Vec::with_capacity(from.order()),
        y_images: Vec::with_capacity(from.order()),
        used_x: 0,
        used_y: 0,
    };
    s.assign_x(0).then(|| (s.x_images, s.y_images))
}

/// An arc-preserving vertex bijection from `d1` to `d2`, trying
/// side-preserving maps first and then maps exchanging the partite sets.
pub fn is_isomorphic(d1: &BalancedBipartiteDigraph, d2: &BalancedBipartiteDigraph) -> Option<Isomorphism> {
    if d1.order() != d2.order() || d1.arc_count() != d2.arc_count() {
        return None;
    }
    if let Some((x_images, y_images)) = side_preserving(d1, d2) {
        return Some(Isomorphism {
            swap_sides: false,
            x_images,
            y_images,
        });
    }
    // x_i of d1 -> y_t of d2 is x_i -> x_t in the mirror of d2.
    let mirror = d2.mirrored();
    side_preserving(d1, &mirror).map(|(x_images, y_images)| Isomorphism {
        swap_sides: true,
        x_images,
        y_images,
    })
}

/// The first catalog entry, in `H1, H2, H2X, H3` order, isomorphic to `d`.
pub fn match_exception(d: &BalancedBipartiteDigraph) -> Option<ExceptionName> {
    if !matches!(d.order(), 2 | 3) {
        return None;
    }
    ExceptionName::ALL
        .into_iter()
        .find(|&n| is_isomorphic(d, &build_exception(n)).is_some())
}
