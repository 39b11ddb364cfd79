//! Line graphs: construction with an explicit edge-to-vertex map, and root
//! reconstruction for arbitrary graphs.
//!
//! Recognition grows a root incrementally over a BFS order of each
//! component. Every processed vertex of `g` is an edge of the partial root;
//! a new vertex with processed neighbourhood `N` must become an edge `ab`
//! whose incident edges are exactly `N`. Only a constant number of `ab`
//! choices exist per step, and distinct partial roots collapse to a single
//! one once the component is large enough (Whitney), so the candidate set
//! stays bounded.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug)]
pub struct LineGraphMap {
    pub root: Graph,
    pub line: Graph,
    /// `vertex_of_edge[i]` is the root edge behind line vertex `i`; edges are
    /// in lexicographic order so line vertex ids follow the sorted edge list.
    pub edge_of_vertex: Vec<(Vertex, Vertex)>,
}

impl LineGraphMap {
    pub fn vertex_of_edge(&self, u: Vertex, v: Vertex) -> Option<Vertex> {
        let key = (u.min(v), u.max(v));
        self.edge_of_vertex.binary_search(&key).ok().map(|i| i as Vertex)
    }
}

pub fn line_graph(h: &Graph) -> Result<LineGraphMap> {
    if h.m() == 0 {
        return Err(Error::Edgeless);
    }
    let edges: Vec<(Vertex, Vertex)> = h.edges().collect();
    let index_of = |u: Vertex, v: Vertex| -> Vertex {
        edges.binary_search(&(u.min(v), u.max(v))).expect("edge present") as Vertex
    };
    let mut line_edges = Vec::new();
    for x in h.vertices() {
        let incident: Vec<Vertex> = h.neighbors(x).iter().map(|&y| index_of(x, y)).collect();
        for i in 0..incident.len() {
            for j in i + 1..incident.len() {
                line_edges.push((incident[i], incident[j]));
            }
        }
    }
    let labels = edges.iter().map(|&(u, v)| format!("{}-{}", h.label(u), h.label(v))).collect();
    let line = Graph::from_edges(edges.len(), line_edges)?.with_labels(labels);
    Ok(LineGraphMap { root: h.clone(), line, edge_of_vertex: edges })
}

/// A root for `g` together with the edge standing behind each vertex of `g`.
#[derive(Clone, Debug)]
pub struct RootedLineGraph {
    pub root: Graph,
    /// Indexed by vertex of `g`.
    pub edge_of: Vec<(Vertex, Vertex)>,
}

impl RootedLineGraph {
    /// The canonical line graph of the root, and for every vertex of `g` the
    /// matching vertex of that line graph.
    pub fn line_map(&self) -> (LineGraphMap, Vec<Vertex>) {
        let map = line_graph(&self.root).expect("root has edges");
        let iso = self.edge_of.iter().map(|&(a, b)| map.vertex_of_edge(a, b).unwrap()).collect();
        (map, iso)
    }
}

#[derive(Clone, Debug)]
pub enum Recognition {
    Line(RootedLineGraph),
    NotLineGraph,
}

impl Recognition {
    pub fn is_line_graph(&self) -> bool {
        matches!(self, Recognition::Line(_))
    }

    pub fn root(&self) -> Option<&RootedLineGraph> {
        match self {
            Recognition::Line(r) => Some(r),
            Recognition::NotLineGraph => None,
        }
    }
}

/// Partial root over one component: endpoints of each processed vertex (by
/// BFS position) and the processed positions at each root vertex.
#[derive(Clone)]
struct Partial {
    ends: Vec<(u32, u32)>,
    incident: Vec<Vec<Vertex>>,
}

impl Partial {
    fn key(&self) -> Vec<Vec<Vertex>> {
        let mut sets: Vec<Vec<Vertex>> = self
            .incident
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| {
                let mut s = s.clone();
                s.sort_unstable();
                s
            })
            .collect();
        sets.sort_unstable();
        sets
    }

    fn add(&mut self, w: u32, a: u32, b: u32) {
        for r in [a, b] {
            if r as usize == self.incident.len() {
                self.incident.push(Vec::new());
            }
            self.incident[r as usize].push(w);
        }
        debug_assert_eq!(self.ends.len(), w as usize);
        self.ends.push((a, b));
    }
}

const NONE: u32 = u32::MAX;

/// Finds a root graph `H` with `L(H)` isomorphic to `g`. Isolated vertices of
/// `g` become single-edge components of `H`; for `K3` the star `K_{1,3}` is
/// returned.
pub fn recognize_root(g: &Graph) -> Recognition {
    let n = g.n();
    let mut edge_of = vec![(0, 0); n];
    let mut root_vertices = 0u32;
    let mut stamp = vec![0u32; n];
    let mut round = 0u32;
    // position of each vertex inside its component's BFS order
    let mut pos = vec![NONE; n];

    for comp in g.connected_components() {
        let order = bfs_order(g, comp[0]);
        for (i, &w) in order.iter().enumerate() {
            pos[w as usize] = i as u32;
        }
        let mut candidates = vec![Partial { ends: Vec::with_capacity(order.len()), incident: Vec::new() }];

        for (i, &w) in order.iter().enumerate() {
            // processed neighbours, as local positions
            let nbrs: Vec<u32> =
                g.neighbors(w).iter().map(|&u| pos[u as usize]).filter(|&p| (p as usize) < i).collect();
            round += 1;
            for &p in &nbrs {
                stamp[order[p as usize] as usize] = round;
            }
            let is_stamped = |p: u32| stamp[order[p as usize] as usize] == round;
            let mut options: Vec<(usize, u32, u32)> = Vec::new();
            for (ci, cand) in candidates.iter().enumerate() {
                options.extend(extensions(cand, &nbrs, &is_stamped).into_iter().map(|(a, b)| (ci, a, b)));
            }
            match options.as_slice() {
                [] => return Recognition::NotLineGraph,
                &[(ci, a, b)] => {
                    candidates.swap(0, ci);
                    candidates.truncate(1);
                    candidates[0].add(i as u32, a, b);
                }
                _ => {
                    let mut next: Vec<Partial> = options
                        .iter()
                        .map(|&(ci, a, b)| {
                            let mut c = candidates[ci].clone();
                            c.add(i as u32, a, b);
                            c
                        })
                        .collect();
                    let mut seen = HashSet::new();
                    next.retain(|c| seen.insert(c.key()));
                    candidates = next;
                }
            }
        }

        // More than one inequivalent root only happens for K3; prefer the star.
        let chosen = candidates
            .into_iter()
            .max_by_key(|c| c.incident.iter().map(Vec::len).max().unwrap_or(0))
            .unwrap();
        for (i, &w) in order.iter().enumerate() {
            let (a, b) = chosen.ends[i];
            edge_of[w as usize] = (a + root_vertices, b + root_vertices);
        }
        root_vertices += chosen.incident.len() as u32;
    }

    let root = Graph::from_edges(root_vertices as usize, edge_of.iter().copied()).expect("root is simple");
    let rooted = RootedLineGraph { root, edge_of };
    if verify(g, &rooted) {
        Recognition::Line(rooted)
    } else {
        Recognition::NotLineGraph
    }
}

fn bfs_order(g: &Graph, s: Vertex) -> Vec<Vertex> {
    let mut order = vec![s];
    let mut seen = HashSet::from([s]);
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in g.neighbors(u) {
            if seen.insert(w) {
                order.push(w);
            }
        }
    }
    order
}

/// All root edges `ab` whose incident processed vertices are exactly the
/// stamped set `nbrs` (local positions).
fn extensions(cand: &Partial, nbrs: &[u32], is_stamped: &dyn Fn(u32) -> bool) -> Vec<(u32, u32)> {
    let fresh = cand.incident.len() as u32;
    let Some(&first) = nbrs.first() else {
        // first vertex of a component: an edge on two new vertices
        return vec![(fresh, fresh + 1)];
    };
    let (x, y) = cand.ends[first as usize];
    let mut out = Vec::new();
    for a in [x, y] {
        let at_a = &cand.incident[a as usize];
        if at_a.len() > nbrs.len() || !at_a.iter().all(|&e| is_stamped(e)) {
            continue;
        }
        let rest: Vec<u32> = nbrs
            .iter()
            .copied()
            .filter(|&e| {
                let (p, q) = cand.ends[e as usize];
                p != a && q != a
            })
            .collect();
        let Some(&r0) = rest.first() else {
            out.push((a, fresh));
            continue;
        };
        let (p, q) = cand.ends[r0 as usize];
        for b in [p, q] {
            if cand.incident[b as usize].len() == rest.len()
                && rest.iter().all(|&e| {
                    let (s, t) = cand.ends[e as usize];
                    s == b || t == b
                })
            {
                out.push((a, b));
            }
        }
    }
    out
}

/// Checks that `g` is exactly the line graph of the root under `edge_of`.
fn verify(g: &Graph, r: &RootedLineGraph) -> bool {
    let mut seen = HashSet::with_capacity(g.n());
    for &(a, b) in &r.edge_of {
        if a == b || !seen.insert((a.min(b), a.max(b))) {
            return false;
        }
    }
    g.vertices().all(|w| {
        let (a, b) = r.edge_of[w as usize];
        let expected = r.root.degree(a) + r.root.degree(b) - 2;
        g.degree(w) == expected
            && g.neighbors(w).iter().all(|&u| {
                let (c, d) = r.edge_of[u as usize];
                a == c || a == d || b == c || b == d
            })
    })
}
