//! Facet-based simplicial complexes over at most [`MAX_VERTICES`] vertices.
//!
//! A complex is stored as the antichain of its facets. The void complex has
//! no facets; the complex `{∅}` has the single empty facet and dimension -1.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub const MAX_VERTICES: usize = 128;

/// A vertex set, as a bitset over vertex ids `0..128`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Face(u128);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn vertex(v: Vertex) -> Face {
        assert!((v as usize) < MAX_VERTICES, "vertex id {v} beyond face capacity");
        Face(1u128 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vs: I) -> Result<Face> {
        let mut bits = 0u128;
        for v in vs {
            if v as usize >= MAX_VERTICES {
                return Err(Error::Capacity { what: "vertex id", limit: MAX_VERTICES - 1 });
            }
            bits |= 1 << v;
        }
        Ok(Face(bits))
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn dim(self) -> i32 {
        self.len() as i32 - 1
    }

    pub fn contains(self, v: Vertex) -> bool {
        (v as usize) < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn minus(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: Vertex) -> Face {
        self.union(Face::vertex(v))
    }

    pub fn without(self, v: Vertex) -> Face {
        self.minus(Face::vertex(v))
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = Vertex> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// All subsets, the empty set first and `self` last.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut sub: Option<u128> = Some(0);
        std::iter::from_fn(move || {
            let cur = sub?;
            sub = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(Face(cur))
        })
    }

    /// Subsets of exactly `k` elements, in lexicographic order of vertices.
    pub fn subsets_of_size(self, k: usize) -> Vec<Face> {
        fn pick(vs: &[Vertex], k: usize, acc: u128, out: &mut Vec<Face>) {
            if k == 0 {
                out.push(Face(acc));
                return;
            }
            for i in 0..vs.len() {
                if vs.len() - i < k {
                    break;
                }
                pick(&vs[i + 1..], k - 1, acc | 1 << vs[i], out);
            }
        }
        let vs: Vec<Vertex> = self.iter().collect();
        let mut out = Vec::new();
        pick(&vs, k, 0, &mut out);
        out
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Keeps only inclusion-maximal faces; output sorted and deduplicated.
fn maximal(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| f.is_subset(*k)) {
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    universe: Face,
    facets: Vec<Face>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.facets).finish()
    }
}

impl SimplicialComplex {
    /// The complex generated by `faces` inside `universe`.
    pub fn new<I: IntoIterator<Item = Face>>(universe: Face, faces: I) -> Result<Self> {
        let faces: Vec<Face> = faces.into_iter().collect();
        if let Some(f) = faces.iter().find(|f| !f.is_subset(universe)) {
            return Err(Error::UnknownVertex(f.minus(universe).iter().next().unwrap()));
        }
        Ok(SimplicialComplex { universe, facets: maximal(faces) })
    }

    /// The complex generated by `faces`, on the union of their vertices.
    pub fn generated_by<I: IntoIterator<Item = Face>>(faces: I) -> Self {
        let faces: Vec<Face> = faces.into_iter().collect();
        let universe = faces.iter().fold(Face::EMPTY, |u, f| u.union(*f));
        SimplicialComplex { universe, facets: maximal(faces) }
    }

    /// Convenience for fixtures: each inner slice is a generating face.
    pub fn from_lists(lists: &[&[Vertex]]) -> Self {
        Self::generated_by(lists.iter().map(|l| Face::from_vertices(l.iter().copied()).unwrap()))
    }

    pub fn void(universe: Face) -> Self {
        SimplicialComplex { universe, facets: Vec::new() }
    }

    /// The complex `{∅}`.
    pub fn empty_face() -> Self {
        SimplicialComplex { universe: Face::EMPTY, facets: vec![Face::EMPTY] }
    }

    pub fn simplex(face: Face) -> Self {
        SimplicialComplex { universe: face, facets: vec![face] }
    }

    pub fn universe(&self) -> Face {
        self.universe
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// Vertices lying in some facet.
    pub fn vertices(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |u, f| u.union(*f))
    }

    pub fn dim(&self) -> Result<i32> {
        self.facets.iter().map(|f| f.dim()).max().ok_or(Error::VoidComplex)
    }

    pub fn is_pure(&self) -> Result<bool> {
        let first = self.facets.first().ok_or(Error::VoidComplex)?.len();
        Ok(self.facets.iter().all(|f| f.len() == first))
    }

    pub fn contains_face(&self, face: Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    pub fn link(&self, face: Face) -> Result<Self> {
        if !self.contains_face(face) {
            return Err(Error::NotAFace);
        }
        let faces = self.facets.iter().filter(|f| face.is_subset(**f)).map(|f| f.minus(face)).collect();
        Ok(SimplicialComplex { universe: self.universe.minus(face), facets: maximal(faces) })
    }

    /// Faces avoiding `v`.
    pub fn delete_vertex(&self, v: Vertex) -> Result<Self> {
        if !self.universe.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        let faces = self.facets.iter().map(|f| f.without(v)).collect();
        Ok(SimplicialComplex { universe: self.universe.without(v), facets: maximal(faces) })
    }

    /// Faces contained in `keep`.
    pub fn restrict(&self, keep: Face) -> Self {
        let faces = self.facets.iter().map(|f| f.intersection(keep)).collect();
        SimplicialComplex { universe: self.universe.intersection(keep), facets: maximal(faces) }
    }

    /// Adds `face` (and its subsets) to the complex.
    pub fn add_face(&self, face: Face) -> Self {
        let mut faces = self.facets.clone();
        faces.push(face);
        SimplicialComplex { universe: self.universe.union(face), facets: maximal(faces) }
    }

    /// The complex generated by all `i`-dimensional faces; `i = -1` gives `{∅}`.
    pub fn pure_skeleton(&self, i: i32) -> Result<Self> {
        let dim = self.dim()?;
        if i < -1 || i > dim {
            return Err(Error::DimensionOutOfRange { dim: i, max: dim });
        }
        let k = (i + 1) as usize;
        let mut faces: Vec<Face> =
            self.facets.iter().filter(|f| f.len() >= k).flat_map(|f| f.subsets_of_size(k)).collect();
        faces.sort_unstable();
        faces.dedup();
        Ok(SimplicialComplex { universe: self.universe, facets: faces })
    }

    /// Whether any two facets are joined by a chain of facets meeting in
    /// codimension one.
    pub fn is_strongly_connected(&self) -> Result<bool> {
        if !self.is_pure()? {
            return Err(Error::NotPure);
        }
        let size = self.facets[0].len();
        let mut seen = vec![false; self.facets.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut reached = 1;
        while let Some(i) = queue.pop_front() {
            for j in 0..self.facets.len() {
                if !seen[j] && self.facets[i].intersection(self.facets[j]).len() + 1 == size {
                    seen[j] = true;
                    reached += 1;
                    queue.push_back(j);
                }
            }
        }
        Ok(reached == self.facets.len())
    }

    /// Vertices contained in exactly one facet.
    pub fn free_vertices(&self) -> Face {
        let mut once = 0u128;
        let mut more = 0u128;
        for f in &self.facets {
            more |= once & f.0;
            once |= f.0;
        }
        Face(once & !more)
    }

    /// Every face including `∅`, ordered by size then bits.
    pub fn faces(&self) -> Vec<Face> {
        let mut all: HashSet<Face> = HashSet::new();
        for f in &self.facets {
            all.extend(f.subsets());
        }
        let mut v: Vec<Face> = all.into_iter().collect();
        v.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        v
    }

    /// `f[i]` counts faces of dimension `i - 1`, starting with the empty face.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for face in self.faces() {
            if f.len() <= face.len() {
                f.resize(face.len() + 1, 0);
            }
            f[face.len()] += 1;
        }
        f
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabeled(&self, perm: &[Vertex]) -> Self {
        let map = |f: Face| Face::from_vertices(f.iter().map(|v| perm[v as usize])).unwrap();
        SimplicialComplex { universe: map(self.universe), facets: maximal(self.facets.iter().map(|&f| map(f)).collect()) }
    }

    /// Vertices contained in every facet.
    pub fn cone_points(&self) -> Face {
        match self.facets.split_first() {
            None => Face::EMPTY,
            Some((first, rest)) => rest.iter().fold(*first, |acc, f| acc.intersection(*f)),
        }
    }
}

/// Clique complex via Bron–Kerbosch with pivoting.
pub fn clique_complex(g: &Graph) -> Result<SimplicialComplex> {
    if g.n() > MAX_VERTICES {
        return Err(Error::Capacity { what: "graph order for clique complexes", limit: MAX_VERTICES });
    }
    let adj: Vec<u128> = g.vertices().map(|v| g.neighbors(v).iter().fold(0u128, |acc, &w| acc | 1 << w)).collect();
    let all = if g.n() == 128 { u128::MAX } else { (1u128 << g.n()) - 1 };
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, 0, all, 0, &mut cliques);
    Ok(SimplicialComplex { universe: Face(all), facets: maximal(cliques.into_iter().map(Face).collect()) })
}

fn bron_kerbosch(adj: &[u128], r: u128, mut p: u128, mut x: u128, out: &mut Vec<u128>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = Face(p | x).iter().max_by_key(|&u| (p & adj[u as usize]).count_ones()).unwrap();
    for v in Face(p & !adj[pivot as usize]).iter() {
        let bit = 1u128 << v;
        bron_kerbosch(adj, r | bit, p & adj[v as usize], x & adj[v as usize], out);
        p &= !bit;
        x |= bit;
    }
}

/// `Δ(L(h))` built from the root directly: its facets are the maximal stars
/// and the triangles of `h`. Vertex `i` is the `i`-th edge of `h` in
/// lexicographic order, matching [`crate::line_graph::line_graph`].
pub fn line_clique_complex(h: &Graph) -> Result<SimplicialComplex> {
    if h.m() > MAX_VERTICES {
        return Err(Error::Capacity { what: "edge count for clique complexes", limit: MAX_VERTICES });
    }
    let edges: Vec<(Vertex, Vertex)> = h.edges().collect();
    let id = |u: Vertex, v: Vertex| edges.binary_search(&(u.min(v), u.max(v))).unwrap() as Vertex;
    let mut faces = Vec::new();
    for x in h.vertices() {
        if h.degree(x) > 0 {
            faces.push(Face::from_vertices(h.neighbors(x).iter().map(|&y| id(x, y)))?);
        }
    }
    for [a, b, c] in h.triangles() {
        faces.push(Face::from_vertices([id(a, b), id(b, c), id(a, c)])?);
    }
    let universe = Face::from_vertices(0..edges.len() as Vertex)?;
    Ok(SimplicialComplex { universe, facets: maximal(faces) })
}
