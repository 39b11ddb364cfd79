mod common;

use common::{small_graph, sparse_graph};
use linecm::canon::{canonical_form, isomorphic};
use linecm::graph::{cycle_graph, path_graph};
use linecm::line_graph::{line_graph, recognize_root};
use linecm::simplicial::line_clique_complex;
use linecm::Graph;
use proptest::prelude::*;

fn sorted_triangles(g: &Graph, back: impl Fn(u32) -> u32) -> Vec<[u32; 3]> {
    let mut out: Vec<[u32; 3]> = g
        .triangles()
        .into_iter()
        .map(|t| {
            let mut t = t.map(&back);
            t.sort_unstable();
            t
        })
        .collect();
    out.sort_unstable();
    out
}

proptest! {
    #[test]
    fn split_is_idempotent(g in small_graph(9)) {
        let once = g.split_open_degree2();
        let twice = once.graph.split_open_degree2();
        prop_assert_eq!(once.graph.n(), twice.graph.n());
        prop_assert_eq!(once.graph.edges().collect::<Vec<_>>(), twice.graph.edges().collect::<Vec<_>>());
    }

    #[test]
    fn split_keeps_edges_and_triangles(g in small_graph(9)) {
        let s = g.split_open_degree2();
        prop_assert_eq!(s.graph.m(), g.m());
        let mut back: Vec<(u32, u32)> = s
            .graph
            .edges()
            .map(|(a, b)| {
                let (a, b) = (s.origin[a as usize].original(), s.origin[b as usize].original());
                (a.min(b), a.max(b))
            })
            .collect();
        back.sort_unstable();
        prop_assert_eq!(back, g.edges().collect::<Vec<_>>());
        prop_assert_eq!(sorted_triangles(&s.graph, |v| s.origin[v as usize].original()), sorted_triangles(&g, |v| v));
    }

    #[test]
    fn levels_cover_the_component(g in small_graph(9), root in 0u32..9) {
        let root = root % g.n() as u32;
        let levels = g.bfs_levels(root).unwrap();
        let component = g.connected_components().into_iter().find(|c| c.contains(&root)).unwrap();
        let total: usize = levels.layers().iter().map(Vec::len).sum();
        prop_assert_eq!(total, component.len());
        prop_assert_eq!(levels.reached(), component.len());
        for (u, v) in g.edges() {
            if let (Some(a), Some(b)) = (levels.level(u), levels.level(v)) {
                prop_assert!(a.abs_diff(b) <= 1);
            }
        }
    }

    #[test]
    fn line_graph_edge_count(g in small_graph(9)) {
        prop_assume!(g.m() > 0);
        let map = line_graph(&g).unwrap();
        let expected: usize = g.vertices().map(|v| g.degree(v) * g.degree(v).saturating_sub(1) / 2).sum();
        prop_assert_eq!(map.line.m(), expected);
    }

    #[test]
    fn line_complex_facets_are_stars_or_triangles(g in small_graph(8)) {
        prop_assume!(g.m() > 0);
        let map = line_graph(&g).unwrap();
        let cx = line_clique_complex(&g).unwrap();
        for facet in cx.facets() {
            let edges: Vec<(u32, u32)> = facet.iter().map(|i| map.edge_of_vertex[i as usize]).collect();
            let star = edges.len() == 1
                || g.vertices().any(|v| edges.iter().all(|&(a, b)| a == v || b == v));
            let mut ends: Vec<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
            ends.sort_unstable();
            ends.dedup();
            let triangle = edges.len() == 3 && ends.len() == 3;
            prop_assert!(star || triangle, "facet {:?}", edges);
        }
    }

    #[test]
    fn recognition_round_trip(g in sparse_graph(14, 20)) {
        prop_assume!(g.m() > 0);
        let line = line_graph(&g).unwrap().line;
        let rooted = recognize_root(&line);
        let rooted = rooted.root().expect("a line graph is recognized");
        let (map, iso) = rooted.line_map();
        let mut seen = iso.clone();
        seen.sort_unstable();
        seen.dedup();
        prop_assert_eq!(seen.len(), line.n());
        for u in line.vertices() {
            for v in line.vertices() {
                prop_assert_eq!(line.has_edge(u, v), map.line.has_edge(iso[u as usize], iso[v as usize]));
            }
        }
    }

    #[test]
    fn recognized_roots_are_genuine(g in small_graph(9)) {
        if let Some(rooted) = recognize_root(&g).root() {
            let (map, iso) = rooted.line_map();
            prop_assert_eq!(map.line.m(), g.m());
            for (u, v) in g.edges() {
                prop_assert!(map.line.has_edge(iso[u as usize], iso[v as usize]));
            }
        }
    }

    #[test]
    fn canonical_form_agrees_with_isomorphism(a in small_graph(7), perm_seed in any::<u64>(), b in small_graph(7)) {
        let n = a.n();
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut s = perm_seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let c = a.permuted(&perm);
        prop_assert_eq!(canonical_form(&a).unwrap(), canonical_form(&c).unwrap());
        prop_assert!(isomorphic(&a, &c));
        prop_assert_eq!(canonical_form(&a).unwrap() == canonical_form(&b).unwrap(), isomorphic(&a, &b));
    }
}

#[test]
fn split_breaks_long_paths_and_cycles_into_edges() {
    let graphs = (3..30).map(path_graph).chain((4..30).map(cycle_graph));
    for g in graphs {
        let s = g.split_open_degree2().graph;
        for c in s.connected_components() {
            assert_eq!(c.len(), 2, "component {c:?} of split {:?}", g.edges().collect::<Vec<_>>());
        }
    }
}

#[test]
fn triangle_is_kept_by_split() {
    let s = cycle_graph(3).split_open_degree2();
    assert_eq!(s.graph.n(), 3);
}
