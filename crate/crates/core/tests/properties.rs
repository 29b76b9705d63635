use std::collections::BTreeSet;

use proptest::prelude::*;

use bbdigraph::catalog::{build_exception, is_isomorphic, ExceptionName};
use bbdigraph::conditions::{
    check, satisfies_bk, satisfies_nonadjacent_3a, satisfies_sharp_premise, witness_violates,
    ConditionId,
};
use bbdigraph::factors::cycle_factor;
use bbdigraph::format::{parse, render};
use bbdigraph::ham::{check_merge_bound, is_hamiltonian, is_hamiltonian_bruteforce, longest_cycle};
use bbdigraph::{BalancedBipartiteDigraph, Direction, PairKind, Side, VertexRef};

fn digraph(max_a: usize) -> impl Strategy<Value = BalancedBipartiteDigraph> {
    (2..=max_a).prop_flat_map(|a| {
        (
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), a), a),
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), a), a),
        )
            .prop_map(|(m1, m2)| BalancedBipartiteDigraph::from_matrices(&m1, &m2).unwrap())
    })
}

fn permutation(a: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..a).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn degree_bounds(d in digraph(6)) {
        let a = d.order();
        let mut out_sum = 0;
        for v in d.vertices() {
            let deg = d.degree(v).unwrap();
            prop_assert!(deg.total <= 2 * a);
            out_sum += deg.out_degree;
        }
        prop_assert_eq!(out_sum, d.arc_count());
        prop_assert!(d.arc_count() <= 2 * a * a);
    }

    #[test]
    fn reversal_swaps_pair_kinds(d in digraph(6)) {
        let rev = d.reversed();
        let flip = |ps: Vec<bbdigraph::VertexPair>| -> Vec<_> { ps.into_iter().map(|p| (p.u, p.v)).collect() };
        prop_assert_eq!(flip(d.pairs(PairKind::Dominating)), flip(rev.pairs(PairKind::Dominated)));
        prop_assert_eq!(flip(d.pairs(PairKind::Dominated)), flip(rev.pairs(PairKind::Dominating)));
        prop_assert_eq!(d.is_strong(), rev.is_strong());
        prop_assert_eq!(rev.reversed(), d);
    }

    #[test]
    fn neighborhood_is_monotone(d in digraph(6), s_bits in any::<u64>(), t_bits in any::<u64>(), side_v1 in any::<bool>()) {
        let side = if side_v1 { Side::V1 } else { Side::V2 };
        let a = d.order();
        let pick = |bits: u64| -> BTreeSet<VertexRef> {
            (0..a).filter(|i| bits >> i & 1 == 1).map(|index| VertexRef { side, index }).collect()
        };
        let s = pick(s_bits & t_bits);
        let t = pick(t_bits);
        for dir in [Direction::Out, Direction::In] {
            let ns = d.neighborhood(&s, dir).unwrap();
            let nt = d.neighborhood(&t, dir).unwrap();
            prop_assert!(ns.is_subset(&nt));
            prop_assert!(nt.iter().all(|v| v.side == side.opposite()));
        }
    }

    #[test]
    fn bbd_text_round_trip(d in digraph(8)) {
        let text = render(&d);
        prop_assert_eq!(parse(&text).unwrap(), d.clone());
        prop_assert_eq!(render(&parse(&text).unwrap()), text);
    }

    #[test]
    fn witnesses_reproduce_their_violation(d in digraph(5), k in 0usize..=10) {
        for id in [ConditionId::Bk(k), ConditionId::SharpPremise, ConditionId::NonAdjacent3a, ConditionId::DomPairs3a] {
            let r = check(&d, id).unwrap();
            prop_assert_eq!(r.holds, r.witness.is_none());
            if let Some(w) = &r.witness {
                prop_assert!(witness_violates(&d, id, w), "{:?} {:?}", id, w);
            }
        }
    }

    #[test]
    fn b1_implies_sharp_premise(d in digraph(6)) {
        if satisfies_bk(&d, 1).unwrap().holds {
            prop_assert!(satisfies_sharp_premise(&d).unwrap().holds);
        }
    }

    #[test]
    fn bk_over_dominating_pairs_equals_dominated_pairs_of_reverse(d in digraph(6), k in 0usize..=6) {
        let a = d.order();
        let rev = d.reversed();
        let ok = |g: &BalancedBipartiteDigraph, p: &bbdigraph::VertexPair| {
            let (du, dv) = (g.total_degree(p.u), g.total_degree(p.v));
            let (hi, lo) = ((2 * a).saturating_sub(k), a + k);
            (du >= hi && dv >= lo) || (dv >= hi && du >= lo)
        };
        let via_reverse = rev.pairs(PairKind::Dominated).iter().all(|p| ok(&rev, p));
        prop_assert_eq!(satisfies_bk(&d, k).unwrap().holds, via_reverse);
    }

    #[test]
    fn nonadjacent_on_semicomplete_only_sees_same_side_pairs(d in digraph(5)) {
        let a = d.order();
        let mut s = d.clone();
        for i in 0..a {
            for j in 0..a {
                if !s.adjacent(VertexRef::x(i), VertexRef::y(j)) {
                    s.insert_arc(VertexRef::x(i), VertexRef::y(j)).unwrap();
                }
            }
        }
        prop_assert!(s.is_semicomplete());
        let same_side_ok = [Side::V1, Side::V2].iter().all(|&side| {
            (0..a).all(|i| (i + 1..a).all(|j| {
                s.total_degree(VertexRef { side, index: i }) + s.total_degree(VertexRef { side, index: j }) >= 3 * a
            }))
        });
        prop_assert_eq!(satisfies_nonadjacent_3a(&s).unwrap().holds, same_side_ok);
    }

    #[test]
    fn hamiltonian_cycles_are_sound(d in digraph(5)) {
        let ham = is_hamiltonian(&d).unwrap();
        prop_assert_eq!(ham.is_some(), is_hamiltonian_bruteforce(&d).unwrap().is_some());
        if let Some(c) = ham {
            prop_assert!(c.is_valid_in(&d));
            prop_assert_eq!(c.len(), d.vertex_count());
            prop_assert!(d.is_strong());
            prop_assert!(cycle_factor(&d).is_some());
        }
        if let Some(f) = cycle_factor(&d) {
            prop_assert!(f.is_valid_in(&d));
        }
    }

    #[test]
    fn longest_cycle_is_even_and_merge_bound_holds(d in digraph(5)) {
        if let Some(c) = longest_cycle(&d).unwrap() {
            prop_assert!(c.len() >= 2 && c.len() % 2 == 0);
            prop_assert!(c.is_valid_in(&d));
        }
        let r = check_merge_bound(&d).unwrap();
        prop_assert!(r.passed(), "{:?}", r.violation);
    }

    #[test]
    fn isomorphism_survives_relabelling(
        (d, p1, p2, q1, q2) in digraph(5).prop_flat_map(|d| {
            let a = d.order();
            (Just(d), permutation(a), permutation(a), permutation(a), permutation(a))
        })
    ) {
        let e = d.permuted(&p1, &p2).unwrap();
        let f = e.permuted(&q1, &q2).unwrap();
        let iso = is_isomorphic(&d, &e).unwrap();
        prop_assert!(iso.is_valid(&d, &e));
        prop_assert!(is_isomorphic(&e, &d).is_some());
        prop_assert!(is_isomorphic(&d, &d).is_some());
        prop_assert!(is_isomorphic(&d, &f).is_some());
        let m = f.mirrored();
        let iso = is_isomorphic(&d, &m).unwrap();
        prop_assert!(iso.is_valid(&d, &m));
    }

    #[test]
    fn isomorphism_agrees_with_degree_filter(d in digraph(3), e in digraph(3)) {
        let profile = |g: &BalancedBipartiteDigraph, side: Side| {
            let mut p: Vec<_> = g.side_vertices(side).map(|v| {
                let deg = g.degree(v).unwrap();
                (deg.out_degree, deg.in_degree)
            }).collect();
            p.sort();
            p
        };
        if let Some(iso) = is_isomorphic(&d, &e) {
            prop_assert!(iso.is_valid(&d, &e));
            let (s1, s2) = if iso.swap_sides { (Side::V2, Side::V1) } else { (Side::V1, Side::V2) };
            prop_assert_eq!(profile(&d, Side::V1), profile(&e, s1));
            prop_assert_eq!(profile(&d, Side::V2), profile(&e, s2));
        }
    }
}

#[test]
fn catalog_entries_are_pairwise_non_isomorphic() {
    for (i, &m) in ExceptionName::ALL.iter().enumerate() {
        for &n in &ExceptionName::ALL[i + 1..] {
            assert!(is_isomorphic(&build_exception(m), &build_exception(n)).is_none(), "{m} {n}");
        }
    }
}

#[test]
fn no_dominating_pair_means_bk_holds_for_every_k() {
    // In-degree at most one everywhere: the alternating cycle plus nothing.
    let mut d = BalancedBipartiteDigraph::empty(4).unwrap();
    for i in 0..4 {
        d.insert_arc(VertexRef::x(i), VertexRef::y(i)).unwrap();
        d.insert_arc(VertexRef::y(i), VertexRef::x((i + 1) % 4)).unwrap();
    }
    for k in 0..=8 {
        assert!(satisfies_bk(&d, k).unwrap().holds);
    }
}
