use std::sync::Arc;

use epinet_core::{
    iteratively_prune, random_digraph, separation, truncated_distance, Crowd, Direction, Distance,
    GraphBuilder, ObserverParams, PruneConfig, Separation, TestimonialGraph, DEFAULT_S_LATTICE,
};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = TestimonialGraph> {
    (3usize..13, prop::sample::select(vec![0.1, 0.2, 0.3, 0.6]), any::<u64>(), any::<bool>()).prop_map(
        |(n, p, seed, directed)| {
            let g = random_digraph(n, p, seed).unwrap();
            if directed {
                g
            } else {
                let mut b = GraphBuilder::new(false);
                g.nodes().for_each(|x| {
                    b.add_node(x);
                });
                for (u, v, w) in g.edges() {
                    b.add_edge(g.name(u), g.name(v), w).unwrap();
                }
                b.build()
            }
        },
    )
}

fn names(g: &TestimonialGraph) -> Vec<String> {
    g.nodes().map(str::to_owned).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn separation_is_symmetric(g in graph_strategy(), cap in 1usize..7) {
        let ns = names(&g);
        for x in &ns {
            for u in ns.iter().filter(|u| *u != x) {
                for v in ns.iter().filter(|v| *v != x) {
                    let uv = separation(&g, x, u, v, cap).unwrap();
                    prop_assert_eq!(uv, separation(&g, x, v, u, cap).unwrap());
                    prop_assert!(uv.value() <= cap);
                    prop_assert_eq!(uv == Separation(0), u == v);
                }
            }
        }
    }

    #[test]
    fn truncation_is_monotone(g in graph_strategy(), limit in 1usize..6) {
        let ns = names(&g);
        let x = &ns[0];
        for u in &ns[1..] {
            for v in &ns[1..] {
                if let Distance::Exact(d) = truncated_distance(&g, x, u, v, limit).unwrap() {
                    prop_assert!(d < limit);
                    for wider in d + 1..d + 4 {
                        prop_assert_eq!(truncated_distance(&g, x, u, v, wider).unwrap(), Distance::Exact(d));
                    }
                }
            }
        }
    }

    #[test]
    fn excluding_an_isolated_node_changes_nothing(g in graph_strategy()) {
        let mut b = GraphBuilder::new(g.is_directed());
        g.nodes().for_each(|x| { b.add_node(x); });
        for (u, v, w) in g.edges() {
            b.add_edge(g.name(u), g.name(v), w).unwrap();
        }
        b.add_node("lonely");
        b.add_node("lonelier");
        let with = b.build();
        let ns = names(&g);
        let (x, rest) = ns.split_first().unwrap();
        for u in rest {
            for v in rest {
                let base = separation(&g, x, u, v, 5).unwrap();
                prop_assert_eq!(separation(&with, x, u, v, 5).unwrap(), base);
            }
        }
        for u in &ns {
            for v in &ns {
                prop_assert_eq!(
                    separation(&with, "lonely", u, v, 5).unwrap(),
                    separation(&with, "lonelier", u, v, 5).unwrap()
                );
            }
        }
    }

    #[test]
    fn cache_is_transparent(g in graph_strategy(), capacity in 0usize..6) {
        let params = ObserverParams::for_graph(&g);
        let g = Arc::new(g);
        let reference = Crowd::with_cache_capacity(Arc::clone(&g), params, 0).profile_all(None).unwrap();
        let mut small = Crowd::with_cache_capacity(Arc::clone(&g), params, capacity);
        let mut large = Crowd::with_cache_capacity(Arc::clone(&g), params, 100_000);
        prop_assert_eq!(&small.profile_all(None).unwrap(), &reference);
        prop_assert_eq!(&large.profile_all(None).unwrap(), &reference);
        // Second pass runs entirely from the warm cache.
        prop_assert_eq!(&large.profile_all(None).unwrap(), &reference);
        prop_assert_eq!(&small.profile_all(None).unwrap(), &reference);
    }

    #[test]
    fn observerhood_is_downward_monotone(g in graph_strategy()) {
        let params = ObserverParams::for_graph(&g);
        let mut crowd = Crowd::new(g.clone(), params);
        for n in g.nodes() {
            for m in 1..=5 {
                for k in 2..=5 {
                    if crowd.is_mk_observer(n, m, k).unwrap() {
                        if m >= 2 {
                            prop_assert!(crowd.is_mk_observer(n, m - 1, k).unwrap());
                        }
                        if k >= 3 {
                            prop_assert!(crowd.is_mk_observer(n, m, k - 1).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn profile_invariants(g in graph_strategy(), tokens in prop::collection::vec(0u8..4, 12)) {
        let mut g = g;
        let ns = names(&g);
        for (name, t) in ns.iter().zip(&tokens) {
            g.set_attributes(name, [format!("t{t}")]).unwrap();
        }
        let params = ObserverParams::for_graph(&g);
        let mut crowd = Crowd::new(g.clone(), params);
        let table = crowd.profile_all(None).unwrap();
        prop_assert_eq!(table.len(), g.node_count());
        for row in table.rows() {
            let i = g.node_index(&row.node).unwrap();
            let sources = g.sources(i, params.direction).len();
            prop_assert!(DEFAULT_S_LATTICE.contains(&row.s));
            prop_assert_eq!(row.pi, row.s as u64 * row.d as u64);
            prop_assert!(row.h as usize <= params.h_max());
            if row.s > 0 {
                prop_assert!(sources >= 2);
            }
            if row.h >= 2 {
                prop_assert!(row.s >= row.h * row.h);
            }
            prop_assert_eq!(row.h == 0, sources == 0);
        }
    }

    #[test]
    fn extra_attribute_never_lowers_diversity(g in graph_strategy(), pick in any::<prop::sample::Index>()) {
        let params = ObserverParams::for_graph(&g);
        let before = Crowd::new(g.clone(), params).profile_all(None).unwrap();
        let mut richer = g.clone();
        let target = pick.get(&names(&g)).clone();
        let i = g.node_index(&target).unwrap();
        let mut attrs = g.attributes(i).clone();
        attrs.insert("novel".into());
        richer.set_attributes(&target, attrs).unwrap();
        let after = Crowd::new(richer, params).profile_all(None).unwrap();
        for (b, a) in before.rows().iter().zip(after.rows()) {
            prop_assert!(a.d >= b.d);
            prop_assert!(a.pi >= b.pi);
        }
    }

    #[test]
    fn pruning_reaches_a_connected_fixpoint(g in graph_strategy(), degree in 0usize..4, weight in prop::option::of(0.5f64..2.5)) {
        let cfg = PruneConfig { degree_threshold: degree, weight_threshold: weight };
        let once = iteratively_prune(&g, &cfg);
        prop_assert_eq!(&iteratively_prune(&once, &cfg), &once);
        for i in 0..once.node_count() {
            prop_assert!(once.degree(i) > degree);
            let orig = g.node_index(once.name(i)).unwrap();
            prop_assert_eq!(once.attributes(i), g.attributes(orig));
        }
        for (u, v, w) in once.edges() {
            let (a, b) = (g.node_index(once.name(u)).unwrap(), g.node_index(once.name(v)).unwrap());
            prop_assert_eq!(g.weight(a, b), Some(w));
        }
        prop_assert!(weakly_connected(&once));
    }
}

fn weakly_connected(g: &TestimonialGraph) -> bool {
    if g.node_count() == 0 {
        return true;
    }
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &w in g.successors(u).iter().chain(g.predecessors(u)) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[test]
fn undirected_default_direction_is_neighbors() {
    let g = GraphBuilder::new(false).build();
    assert_eq!(ObserverParams::for_graph(&g).direction, Direction::Neighbors);
}
