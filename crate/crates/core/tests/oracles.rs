//! Independent re-implementations used as oracles: transitive closure for
//! strong connectivity, subset scans for Hall's condition, and plain DFS
//! cycle enumeration for longest cycles. None of them share code with the
//! library beyond `has_arc`.

use bbdigraph::factors::{cycle_factor, hall_violation, perfect_matching, MatchingDirection};
use bbdigraph::ham::{is_hamiltonian, longest_cycle};
use bbdigraph::search::{enumerate_all, random_digraph};
use bbdigraph::{BalancedBipartiteDigraph, Direction, Side, VertexRef};

fn vertex(a: usize, id: usize) -> VertexRef {
    if id < a {
        VertexRef::x(id)
    } else {
        VertexRef::y(id - a)
    }
}

fn adjacency(d: &BalancedBipartiteDigraph) -> Vec<Vec<bool>> {
    let a = d.order();
    let n = 2 * a;
    (0..n)
        .map(|u| (0..n).map(|v| d.has_arc(vertex(a, u), vertex(a, v))).collect())
        .collect()
}

fn strong_by_closure(d: &BalancedBipartiteDigraph) -> bool {
    let mut r = adjacency(d);
    let n = r.len();
    for i in 0..n {
        r[i][i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r.iter().all(|row| row.iter().all(|&b| b))
}

fn hall_holds_by_scan(d: &BalancedBipartiteDigraph, side: Side) -> bool {
    let a = d.order();
    (1u32..1 << a).all(|mask| {
        let mut targets = vec![false; a];
        for i in (0..a).filter(|i| mask >> i & 1 == 1) {
            for (j, t) in targets.iter_mut().enumerate() {
                let (u, v) = match side {
                    Side::V1 => (VertexRef::x(i), VertexRef::y(j)),
                    Side::V2 => (VertexRef::y(i), VertexRef::x(j)),
                };
                *t |= d.has_arc(u, v);
            }
        }
        targets.iter().filter(|&&t| t).count() >= mask.count_ones() as usize
    })
}

fn longest_cycle_by_dfs(d: &BalancedBipartiteDigraph) -> usize {
    let adj = adjacency(d);
    let n = adj.len();
    let mut best = 0;
    fn dfs(adj: &[Vec<bool>], start: usize, cur: usize, on: &mut Vec<bool>, len: usize, best: &mut usize) {
        for next in 0..adj.len() {
            if !adj[cur][next] {
                continue;
            }
            if next == start {
                *best = (*best).max(len);
            } else if next > start && !on[next] {
                on[next] = true;
                dfs(adj, start, next, on, len + 1, best);
                on[next] = false;
            }
        }
    }
    for start in 0..n {
        let mut on = vec![false; n];
        on[start] = true;
        dfs(&adj, start, start, &mut on, 1, &mut best);
    }
    best
}

#[test]
fn strong_connectivity_matches_closure_exhaustively() {
    for a in 1..=3 {
        let mut strong = 0;
        for d in enumerate_all(a).unwrap() {
            let s = d.is_strong();
            assert_eq!(s, strong_by_closure(&d), "{d:?}");
            assert_eq!(s, d.reversed().is_strong());
            strong += s as u64;
        }
        if a == 2 {
            assert_eq!(strong, 35);
        }
    }
}

#[test]
fn hall_duality_matches_subset_scan() {
    for a in 1..=3 {
        for d in enumerate_all(a).unwrap() {
            for dir in MatchingDirection::BOTH {
                let scan = hall_holds_by_scan(&d, dir.source());
                let violation = hall_violation(&d, dir);
                assert_eq!(perfect_matching(&d, dir).is_some(), scan);
                assert_eq!(violation.is_none(), scan);
                if let Some(s) = violation {
                    let n = d.neighborhood(&s, Direction::Out).unwrap();
                    assert!(n.len() < s.len());
                }
            }
        }
    }
}

#[test]
fn longest_cycle_matches_dfs() {
    for a in 1..=3 {
        for d in enumerate_all(a).unwrap().step_by(if a == 3 { 7 } else { 1 }) {
            let got = longest_cycle(&d).unwrap();
            let want = longest_cycle_by_dfs(&d);
            assert_eq!(got.as_ref().map_or(0, |c| c.len()), want, "{d:?}");
            if let Some(c) = got {
                assert!(c.is_valid_in(&d));
                assert_eq!(c.len() % 2, 0);
            }
        }
    }
    for seed in 0..300 {
        let d = random_digraph(4 + (seed as usize % 2), 0.35, seed).unwrap();
        let got = longest_cycle(&d).unwrap().map_or(0, |c| c.len());
        assert_eq!(got, longest_cycle_by_dfs(&d), "seed {seed}");
    }
}

/// Every cross-side pair adjacent: Hamiltonian exactly when strong with a
/// cycle factor.
fn semicomplete_claim(d: &BalancedBipartiteDigraph) {
    assert!(d.is_semicomplete());
    let ham = is_hamiltonian(d).unwrap().is_some();
    assert_eq!(ham, d.is_strong() && cycle_factor(d).is_some(), "{d:?}");
}

#[test]
fn semicomplete_hamiltonicity_exhaustive_a2() {
    let mut seen = 0;
    for d in enumerate_all(2).unwrap().filter(|d| d.is_semicomplete()) {
        semicomplete_claim(&d);
        seen += 1;
    }
    // Each of the 4 cross pairs has 3 adjacent states.
    assert_eq!(seen, 81);
}

#[test]
fn semicomplete_hamiltonicity_random_a3() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..2000 {
        let mut d = BalancedBipartiteDigraph::empty(3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let state = rng.gen_range(0..3);
                if state != 1 {
                    d.insert_arc(VertexRef::x(i), VertexRef::y(j)).unwrap();
                }
                if state != 0 {
                    d.insert_arc(VertexRef::y(j), VertexRef::x(i)).unwrap();
                }
            }
        }
        semicomplete_claim(&d);
    }
}
