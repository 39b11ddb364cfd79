//! Simple undirected graphs in compressed adjacency form, plus the graph
//! surgeries needed by the classifiers: BFS levels, triangles, splitting of
//! degree-2 vertices and the level-1 structure around a root.

use std::borrow::Cow;
use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = u32;

const UNREACHED: u32 = u32::MAX;

/// Immutable simple graph. Vertices are `0..n`; each adjacency row is sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<u32>,
    targets: Vec<Vertex>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Repeated edges collapse to one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
        let mut degree = vec![0u32; n];
        for &(u, v) in &edges {
            if u as usize >= n {
                return Err(Error::UnknownVertex(u));
            }
            if v as usize >= n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0u32);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill: Vec<u32> = offsets[..n].to_vec();
        let mut targets = vec![0; *offsets.last().unwrap() as usize];
        for &(u, v) in &edges {
            targets[fill[u as usize] as usize] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize] as usize] = u;
            fill[v as usize] += 1;
        }

        // sort rows and squeeze out duplicates in place
        let mut write = 0usize;
        let mut new_offsets = Vec::with_capacity(n + 1);
        new_offsets.push(0u32);
        for v in 0..n {
            let (start, end) = (offsets[v] as usize, offsets[v + 1] as usize);
            targets[start..end].sort_unstable();
            let mut last = None;
            for i in start..end {
                let t = targets[i];
                if last != Some(t) {
                    targets[write] = t;
                    write += 1;
                    last = Some(t);
                }
            }
            new_offsets.push(write as u32);
        }
        targets.truncate(write);
        Ok(Graph { offsets: new_offsets, targets, labels: Vec::new() })
    }

    /// Builds a graph from edges between named vertices; names are numbered
    /// in first-seen order.
    pub fn from_labeled_edges<I, S>(edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut index: HashMap<String, Vertex> = HashMap::new();
        let mut labels = Vec::new();
        let mut pairs = Vec::new();
        let mut id = |name: &str, labels: &mut Vec<String>| -> Vertex {
            *index.entry(name.to_string()).or_insert_with(|| {
                labels.push(name.to_string());
                (labels.len() - 1) as Vertex
            })
        };
        for (a, b) in edges {
            let u = id(a.as_ref(), &mut labels);
            let v = id(b.as_ref(), &mut labels);
            pairs.push((u, v));
        }
        Graph::from_edges(labels.len(), pairs).map(|g| g.with_labels(labels))
    }

    /// Attaches display labels; `labels.len()` must equal the vertex count.
    pub fn with_labels(mut self, labels: Vec<String>) -> Graph {
        assert_eq!(labels.len(), self.n(), "one label per vertex");
        self.labels = labels;
        self
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (v as usize) < self.n()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        (self.offsets[v as usize + 1] - self.offsets[v as usize]) as usize
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    /// The neighbours of `v` are `targets[offsets[v]..offsets[v + 1]]`.
    pub(crate) fn csr(&self) -> (&[u32], &[Vertex]) {
        (&self.offsets, &self.targets)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u).iter().copied().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub fn label(&self, v: Vertex) -> Cow<'_, str> {
        match self.labels.get(v as usize) {
            Some(s) => Cow::Borrowed(s.as_str()),
            None => Cow::Owned(v.to_string()),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.vertices().map(|v| self.label(v).into_owned()).collect()
    }

    pub fn has_labels(&self) -> bool {
        !self.labels.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Subgraph induced on `keep` (deduplicated, taken in ascending order).
    /// Returns the subgraph and, for each of its vertices, the original id.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut old: Vec<Vertex> = keep.to_vec();
        old.sort_unstable();
        old.dedup();
        let mut new_id = vec![UNREACHED; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v as usize] = i as Vertex;
        }
        let edges = old.iter().flat_map(|&u| {
            let new_id = &new_id;
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u && new_id[v as usize] != UNREACHED)
                .map(move |&v| (new_id[u as usize], new_id[v as usize]))
        });
        let mut sub = Graph::from_edges(old.len(), edges.collect::<Vec<_>>()).expect("valid subgraph");
        if self.has_labels() {
            sub.labels = old.iter().map(|&v| self.labels[v as usize].clone()).collect();
        }
        (sub, old)
    }

    /// Drops vertices of degree zero.
    pub fn without_isolated(&self) -> (Graph, Vec<Vertex>) {
        let keep: Vec<Vertex> = self.vertices().filter(|&v| self.degree(v) > 0).collect();
        self.induced_subgraph(&keep)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if seen[s as usize] {
                continue;
            }
            seen[s as usize] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.bfs_levels(0).map(|l| l.reached()).unwrap_or(0) == self.n()
    }

    /// Distance of every vertex in the root's component.
    pub fn bfs_levels(&self, root: Vertex) -> Result<LevelMap> {
        if !self.contains(root) {
            return Err(Error::UnknownVertex(root));
        }
        let mut level = vec![UNREACHED; self.n()];
        level[root as usize] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let next = level[u as usize] + 1;
            for &w in self.neighbors(u) {
                if level[w as usize] == UNREACHED {
                    level[w as usize] = next;
                    queue.push_back(w);
                }
            }
        }
        Ok(LevelMap { root, level })
    }

    /// Every vertex triple inducing a triangle, as sorted triples in
    /// lexicographic order.
    pub fn triangles(&self) -> Vec<[Vertex; 3]> {
        let mut out = Vec::new();
        for (u, v) in self.edges() {
            let (nu, nv) = (self.neighbors(u), self.neighbors(v));
            let (mut i, mut j) = (0, 0);
            while i < nu.len() && j < nv.len() {
                match nu[i].cmp(&nv[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if nu[i] > v {
                            out.push([u, v, nu[i]]);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        out
    }

    pub fn in_triangle(&self, v: Vertex) -> bool {
        let nbrs = self.neighbors(v);
        nbrs.iter()
            .enumerate()
            .any(|(i, &a)| nbrs[i + 1..].iter().any(|&b| self.has_edge(a, b)))
    }

    /// Splits every degree-2 vertex whose two neighbours are non-adjacent into
    /// two leaves, one per incident edge. Edge identities are kept: the edge
    /// `{x, a}` of the input becomes `{half of x toward a, a}`.
    pub fn split_open_degree2(&self) -> SplitGraph {
        let n = self.n();
        let mut origin: Vec<Origin> = self.vertices().map(Origin::Vertex).collect();
        // for a split vertex, the id of the half toward its larger neighbour
        let mut second_half = vec![UNREACHED; n];
        for x in self.vertices() {
            if let [a, b] = *self.neighbors(x) {
                if !self.has_edge(a, b) {
                    origin[x as usize] = Origin::Half { vertex: x, toward: a };
                    second_half[x as usize] = origin.len() as Vertex;
                    origin.push(Origin::Half { vertex: x, toward: b });
                }
            }
        }
        let endpoint = |x: Vertex, other: Vertex| -> Vertex {
            match origin[x as usize] {
                Origin::Half { toward, .. } if toward != other => second_half[x as usize],
                _ => x,
            }
        };
        let edges: Vec<_> = self.edges().map(|(u, v)| (endpoint(u, v), endpoint(v, u))).collect();
        let labels = origin
            .iter()
            .map(|o| match *o {
                Origin::Vertex(v) => self.label(v).into_owned(),
                Origin::Half { vertex, toward } => format!("{}/{}", self.label(vertex), self.label(toward)),
            })
            .collect();
        let graph = Graph::from_edges(origin.len(), edges).expect("split preserves validity").with_labels(labels);
        SplitGraph { graph, origin }
    }

    /// Classifies the subgraph induced on the neighbours of `root`.
    pub fn level1_structures(&self, root: Vertex) -> Result<Level1Structure> {
        if !self.contains(root) {
            return Err(Error::UnknownVertex(root));
        }
        let level1 = self.neighbors(root);
        let (sub, ids) = self.induced_subgraph(level1);
        let mut out = Level1Structure::default();
        for comp in sub.connected_components() {
            let to_orig = |vs: &[Vertex]| vs.iter().map(|&v| ids[v as usize]).collect::<Vec<_>>();
            if comp.len() == 1 {
                out.isolated.push(ids[comp[0] as usize]);
                continue;
            }
            let max_deg = comp.iter().map(|&v| sub.degree(v)).max().unwrap();
            let edges: usize = comp.iter().map(|&v| sub.degree(v)).sum::<usize>() / 2;
            if max_deg <= 2 && edges == comp.len() - 1 {
                let start = *comp.iter().find(|&&v| sub.degree(v) == 1).unwrap();
                out.paths.push(to_orig(&walk(&sub, start)));
            } else if max_deg == 2 && edges == comp.len() {
                out.cycles.push(to_orig(&walk(&sub, comp[0])));
            } else {
                out.other.push(to_orig(&comp));
            }
        }
        Ok(out)
    }

    /// Complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let n = self.n() as Vertex;
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect();
        let g = Graph::from_edges(self.n(), edges).unwrap();
        if self.has_labels() { g.with_labels(self.labels.clone()) } else { g }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u as usize], perm[v as usize])).collect();
        Graph::from_edges(self.n(), edges).unwrap()
    }

    pub fn is_path(&self) -> bool {
        self.n() >= 2 && self.m() == self.n() - 1 && self.max_degree() <= 2 && self.is_connected()
    }

    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.vertices().all(|v| self.degree(v) == 2) && self.is_connected()
    }

    /// `K_{1,r}` for some `r >= 1`.
    pub fn is_star(&self) -> bool {
        let n = self.n();
        n >= 2 && self.m() == n - 1 && self.vertices().any(|v| self.degree(v) == n - 1)
    }
}

/// Walks a path from an endpoint, or a cycle from `start`, toward the smaller
/// unvisited neighbour.
fn walk(g: &Graph, start: Vertex) -> Vec<Vertex> {
    let mut seq = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).iter().copied().find(|&w| Some(w) != prev && w != start && !seq.contains(&w));
        match next {
            Some(w) => {
                prev = Some(cur);
                cur = w;
                seq.push(w);
            }
            None => return seq,
        }
    }
}

/// BFS distances from a root; vertices outside the root's component have no level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelMap {
    root: Vertex,
    level: Vec<u32>,
}

impl LevelMap {
    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn level(&self, v: Vertex) -> Option<u32> {
        self.level.get(v as usize).copied().filter(|&l| l != UNREACHED)
    }

    pub fn reached(&self) -> usize {
        self.level.iter().filter(|&&l| l != UNREACHED).count()
    }

    pub fn max_level(&self) -> u32 {
        self.level.iter().copied().filter(|&l| l != UNREACHED).max().unwrap_or(0)
    }

    /// `layers()[i]` lists the vertices at distance `i`, ascending.
    pub fn layers(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.max_level() as usize + 1];
        for (v, &l) in self.level.iter().enumerate() {
            if l != UNREACHED {
                out[l as usize].push(v as Vertex);
            }
        }
        out
    }
}

/// Components of the subgraph induced on the root's neighbours. In graphs of
/// maximum degree three away from the root only the first three kinds occur.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Level1Structure {
    pub isolated: Vec<Vertex>,
    /// Each path listed from its smaller-id endpoint walk.
    pub paths: Vec<Vec<Vertex>>,
    pub cycles: Vec<Vec<Vertex>>,
    /// Components that are neither paths nor cycles.
    pub other: Vec<Vec<Vertex>>,
}

impl Level1Structure {
    pub fn is_path_endpoint(&self, v: Vertex) -> bool {
        self.paths.iter().any(|p| p.first() == Some(&v) || p.last() == Some(&v))
    }

    /// True when `u` and `v` are the two ends of a level-1 path with one edge.
    pub fn is_unit_path(&self, u: Vertex, v: Vertex) -> bool {
        self.paths.iter().any(|p| p.len() == 2 && ((p[0] == u && p[1] == v) || (p[0] == v && p[1] == u)))
    }
}

/// Where a vertex of a split graph came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Vertex(Vertex),
    /// The half of `vertex` that keeps the edge toward `toward`.
    Half { vertex: Vertex, toward: Vertex },
}

impl Origin {
    pub fn original(&self) -> Vertex {
        match *self {
            Origin::Vertex(v) => v,
            Origin::Half { vertex, .. } => vertex,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SplitGraph {
    pub graph: Graph,
    /// Indexed by vertex of `graph`.
    pub origin: Vec<Origin>,
}

pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, (1..n as Vertex).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(n, (0..n as Vertex).map(|v| (v, (v + 1) % n as Vertex))).unwrap()
}

/// `K_{1,leaves}` with the centre at vertex 0.
pub fn star_graph(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves as Vertex).map(|v| (0, v))).unwrap()
}

pub fn complete_graph(n: usize) -> Graph {
    let n32 = n as Vertex;
    Graph::from_edges(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v)))).unwrap()
}

/// A centre of degree `legs` with `legs` disjoint paths of `leg_length` edges.
pub fn spider_graph(legs: usize, leg_length: usize) -> Graph {
    let mut edges = Vec::with_capacity(legs * leg_length);
    let mut next = 1 as Vertex;
    for _ in 0..legs {
        let mut prev = 0;
        for _ in 0..leg_length {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(next as usize, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness_w1() -> Graph {
        Graph::from_labeled_edges([
            ("v", "a"), ("v", "b"), ("v", "c"), ("v", "d"), ("a", "b"), ("c", "d"),
            ("x", "a"), ("x", "b"), ("x", "y"), ("y", "c"), ("y", "d"),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_self_loops_and_unknown_vertices() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::from_edges(2, [(0, 2)]), Err(Error::UnknownVertex(2)));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn components() {
        assert_eq!(path_graph(4).connected_components().len(), 1);
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(Graph::from_edges(0, []).unwrap().connected_components().is_empty());
    }

    #[test]
    fn bfs_levels_examples() {
        let l = star_graph(4).bfs_levels(0).unwrap();
        assert_eq!(l.layers()[1].len(), 4);
        let l = cycle_graph(5).bfs_levels(2).unwrap();
        let mut levels: Vec<u32> = (0..5).map(|v| l.level(v).unwrap()).collect();
        levels.sort();
        assert_eq!(levels, vec![0, 1, 1, 2, 2]);
        assert_eq!(star_graph(2).bfs_levels(7), Err(Error::UnknownVertex(7)));
    }

    #[test]
    fn bfs_levels_of_w1_match_all_pairs_distances() {
        let g = witness_w1();
        let n = g.n();
        // Floyd-Warshall as an independent distance oracle
        let mut d = vec![vec![u32::MAX / 2; n]; n];
        for v in 0..n {
            d[v][v] = 0;
        }
        for (u, v) in g.edges() {
            d[u as usize][v as usize] = 1;
            d[v as usize][u as usize] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
                }
            }
        }
        let l = g.bfs_levels(0).unwrap();
        for v in g.vertices() {
            assert_eq!(l.level(v), Some(d[0][v as usize]));
        }
        let name = |vs: &Vec<Vertex>| vs.iter().map(|&v| g.label(v).into_owned()).collect::<Vec<_>>();
        assert_eq!(name(&l.layers()[1]), vec!["a", "b", "c", "d"]);
        assert_eq!(name(&l.layers()[2]), vec!["x", "y"]);
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(complete_graph(3).triangles().len(), 1);
        assert_eq!(complete_graph(4).triangles().len(), 4);
        assert!(cycle_graph(5).triangles().is_empty());
    }

    #[test]
    fn split_examples() {
        let s = cycle_graph(4).split_open_degree2();
        assert_eq!(s.graph.m(), 4);
        assert!(s.graph.connected_components().iter().all(|c| c.len() == 2));

        let k3 = complete_graph(3);
        assert_eq!(k3.split_open_degree2().graph.edges().collect::<Vec<_>>(), k3.edges().collect::<Vec<_>>());

        let s = path_graph(3).split_open_degree2();
        assert_eq!(s.graph.connected_components().len(), 2);
        assert_eq!(s.graph.m(), 2);
    }

    #[test]
    fn split_keeps_edge_identities() {
        let g = path_graph(3);
        let s = g.split_open_degree2();
        let mut mapped: Vec<_> = s
            .graph
            .edges()
            .map(|(u, v)| {
                let (a, b) = (s.origin[u as usize].original(), s.origin[v as usize].original());
                (a.min(b), a.max(b))
            })
            .collect();
        mapped.sort();
        assert_eq!(mapped, g.edges().collect::<Vec<_>>());
        assert_eq!(s.graph.label(3), "1/2");
    }

    #[test]
    fn level1_examples() {
        let s = star_graph(4).level1_structures(0).unwrap();
        assert_eq!((s.isolated.len(), s.paths.len(), s.cycles.len()), (4, 0, 0));

        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]).unwrap();
        let s = g.level1_structures(0).unwrap();
        assert_eq!(s.paths, vec![vec![1, 2], vec![3, 4]]);
        assert!(s.isolated.is_empty() && s.cycles.is_empty());

        let w = witness_w1();
        let s = w.level1_structures(0).unwrap();
        let name = |vs: &Vec<Vertex>| vs.iter().map(|&v| w.label(v).into_owned()).collect::<Vec<_>>();
        assert_eq!(s.paths.iter().map(name).collect::<Vec<_>>(), vec![vec!["a", "b"], vec!["c", "d"]]);
        assert!(s.isolated.is_empty() && s.cycles.is_empty() && s.other.is_empty());
    }

    #[test]
    fn level1_cycle_in_wheel() {
        // wheel: hub 0 over the 4-cycle 1..4
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let s = g.level1_structures(0).unwrap();
        assert_eq!(s.cycles, vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn shape_predicates() {
        assert!(path_graph(2).is_path() && path_graph(2).is_star());
        assert!(path_graph(3).is_star());
        assert!(!path_graph(4).is_star());
        assert!(cycle_graph(3).is_cycle() && !cycle_graph(3).is_path());
        assert!(star_graph(5).is_star() && !star_graph(5).is_path());
        assert_eq!(spider_graph(4, 2).n(), 9);
    }
}
