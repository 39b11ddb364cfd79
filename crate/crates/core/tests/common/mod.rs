#![allow(dead_code)]

use linecm::homology::boundary_matrix;
use linecm::simplicial::{Face, SimplicialComplex};
use linecm::Graph;
use proptest::prelude::*;

pub fn projective_plane() -> SimplicialComplex {
    SimplicialComplex::from_lists(&[
        &[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[1, 5, 6], &[1, 2, 6],
        &[2, 3, 5], &[3, 4, 6], &[2, 4, 5], &[3, 5, 6], &[2, 4, 6],
    ])
}

/// Small named complexes used across the homology checks.
pub fn fixtures() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("empty face", SimplicialComplex::empty_face()),
        ("point", SimplicialComplex::from_lists(&[&[0]])),
        ("two points", SimplicialComplex::from_lists(&[&[0], &[1]])),
        ("circle", SimplicialComplex::from_lists(&[&[0, 1], &[1, 2], &[0, 2]])),
        ("2-sphere", SimplicialComplex::from_lists(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])),
        ("projective plane", projective_plane()),
        ("bowtie", SimplicialComplex::from_lists(&[&[0, 1, 2], &[2, 3, 4]])),
        ("tetrahedron", SimplicialComplex::from_lists(&[&[0, 1, 2, 3]])),
    ]
}

/// Graph on `n` vertices from a bit mask over the pairs.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut p = 0;
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if mask >> (p % 64) & 1 == 1 {
                edges.push((u, v));
            }
            p += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, mask)| graph_from_mask(n, mask))
}

/// Sparse graphs: at most `max_m` random edges on at most `max_n` vertices.
pub fn sparse_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n as u32, 0..n as u32), 1..=max_m).prop_map(move |pairs| {
            let edges: Vec<(u32, u32)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

pub fn small_complex(max_vertices: u32, max_facets: usize, max_size: usize) -> impl Strategy<Value = SimplicialComplex> {
    proptest::collection::vec(proptest::collection::btree_set(0..max_vertices, 1..=max_size), 1..=max_facets)
        .prop_map(|faces| SimplicialComplex::generated_by(faces.into_iter().map(|f| Face::from_vertices(f).unwrap())))
}

/// Composite `∂_d ∘ ∂_{d+1}` is zero as an integer matrix.
pub fn boundary_squares_to_zero(cx: &SimplicialComplex) -> bool {
    let dim = cx.dim().unwrap();
    (0..dim).all(|d| {
        let lower = boundary_matrix(cx, d);
        let upper = boundary_matrix(cx, d + 1);
        assert_eq!(lower.cols, upper.rows);
        upper.columns.iter().all(|col| {
            let mut acc = vec![0i64; lower.rows.len()];
            for &(mid, s) in col {
                for &(r, t) in &lower.columns[mid as usize] {
                    acc[r as usize] += (s * t) as i64;
                }
            }
            acc.iter().all(|&x| x == 0)
        })
    })
}

pub fn reduced_euler_from_faces(cx: &SimplicialComplex) -> i64 {
    cx.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 1 { f as i64 } else { -(f as i64) }).sum()
}
