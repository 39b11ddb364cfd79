//! Fast combinatorial deciders for the clique complex `Δ(L(H))`, working on
//! the root graph `H` alone.
//!
//! Every decider returns a [`Verdict`] whose [`Reason`] names the rule that
//! fired together with its witness vertices (ids of the input graph).

use std::sync::OnceLock;

use serde::Serialize;

use crate::canon::{canonical_form, CanonicalForm, CANON_MAX_VERTICES};
use crate::error::{Error, Result};
use crate::formats::parse_catalog;
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum PureClass {
    NotPure,
    /// Triangle-free, every degree 1 or `r`, with `r > 3`.
    StarRegular { r: usize },
    /// Maximum degree 3, every degree-2 vertex in a triangle.
    Degree3Triangle,
    PathOrCycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogKind {
    Cm,
    Gorenstein,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Reason {
    Star { leaves: usize },
    Path { length: usize },
    Cycle { length: usize },
    CatalogMember { catalog: CatalogKind, member: usize },
    /// Every component is a single edge, so the complex is a set of points.
    SingleEdgeComponents { components: usize },
    /// The complex has several components, at least one of positive dimension.
    DisconnectedComplex { components: usize },
    /// A set of points other than exactly two is not a sphere.
    PointsNotSphere { points: usize },
    NotPure,
    PureNotStronglyConnected { class: PureClass },
    PathTooLong { length: usize },
    NotCohenMacaulay,
    OutsideGorensteinCatalog,
    /// Two vertices of degree at least four.
    TwoHighDegreeVertices { first: Vertex, second: Vertex },
    /// After splitting, every component is a single edge.
    AllEdgesAfterSplit,
    SeveralSplitComponents { non_edge: usize },
    RGraph { root: Vertex, r: usize },
    NotRGraph { root: Vertex, violation: RGraphViolation },
    MissingLeafNeighbor { root: Vertex, vertex: Vertex },
    Linear { step: u8, exit: LinearExit },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RGraphViolation {
    DegreeAboveCap { vertex: Vertex, degree: usize, cap: usize },
    OpenDegreeTwo { vertex: Vertex },
    BeyondLevelThree { vertex: Vertex },
    LevelThreeNotLeaf { vertex: Vertex },
    LevelTwoUnsupported { vertex: Vertex, degree: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinearExit {
    SecondHighDegree { first: Vertex, second: Vertex },
    /// Two components of the input with at least two edges each.
    SeveralNonTrivialComponents { first: Vertex, second: Vertex },
    /// Vertices of degree at least 2 in two components of the split graph.
    SeveralNonEdgeComponents { first: Vertex, second: Vertex },
    AllEdges,
    LevelTwoLeaf { vertex: Vertex },
    LevelTwoDegreeTwo { vertex: Vertex },
    LevelTwoDegreeThree { vertex: Vertex },
    LevelThreeNotLeaf { vertex: Vertex },
    Completed { root: Vertex },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub value: bool,
    pub reason: Reason,
}

impl Verdict {
    fn yes(reason: Reason) -> Verdict {
        Verdict { value: true, reason }
    }

    fn no(reason: Reason) -> Verdict {
        Verdict { value: false, reason }
    }
}

/// Graphs not covered by the star/path/cycle families, stored by canonical form.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub kind: CatalogKind,
    pub graphs: Vec<Graph>,
    forms: Vec<CanonicalForm>,
    max_vertices: usize,
}

impl Catalog {
    pub fn parse(kind: CatalogKind, text: &str) -> Result<Catalog> {
        Catalog::from_graphs(kind, parse_catalog(text)?)
    }

    pub fn from_graphs(kind: CatalogKind, graphs: Vec<Graph>) -> Result<Catalog> {
        let forms = graphs.iter().map(canonical_form).collect::<Result<Vec<_>>>()?;
        let max_vertices = graphs.iter().map(Graph::n).max().unwrap_or(0);
        Ok(Catalog { kind, graphs, forms, max_vertices })
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Index (from 1) of the member isomorphic to `h`.
    pub fn lookup(&self, h: &Graph) -> Option<usize> {
        if h.n() > self.max_vertices || h.n() > CANON_MAX_VERTICES {
            return None;
        }
        let form = canonical_form(h).ok()?;
        self.forms.iter().position(|&f| f == form).map(|i| i + 1)
    }
}

pub const CM_CATALOG_TEXT: &str = include_str!("../data/catalog_cm.txt");
pub const GORENSTEIN_CATALOG_TEXT: &str = include_str!("../data/catalog_gorenstein.txt");

pub fn catalog(kind: CatalogKind) -> &'static Catalog {
    static CM: OnceLock<Catalog> = OnceLock::new();
    static GOR: OnceLock<Catalog> = OnceLock::new();
    let (cell, text) = match kind {
        CatalogKind::Cm => (&CM, CM_CATALOG_TEXT),
        CatalogKind::Gorenstein => (&GOR, GORENSTEIN_CATALOG_TEXT),
    };
    cell.get_or_init(|| Catalog::parse(kind, text).expect("bundled catalog is well formed"))
}

fn require_connected(h: &Graph) -> Result<()> {
    if h.m() == 0 {
        return Err(Error::Edgeless);
    }
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Isolated vertices of `h` are ignored.
pub fn classify_pure(h: &Graph) -> Result<PureClass> {
    let (h, _) = h.without_isolated();
    let h = &h;
    require_connected(h)?;
    let max = h.max_degree();
    if max > 3 && h.triangles().is_empty() && h.vertices().all(|v| matches!(h.degree(v), 1) || h.degree(v) == max) {
        return Ok(PureClass::StarRegular { r: max });
    }
    if max == 3 && h.vertices().all(|v| h.degree(v) != 2 || h.in_triangle(v)) {
        return Ok(PureClass::Degree3Triangle);
    }
    if h.is_path() || h.is_cycle() {
        return Ok(PureClass::PathOrCycle);
    }
    Ok(PureClass::NotPure)
}

/// Components carrying at least one edge, each as an induced subgraph with
/// its original vertex ids.
fn edge_components(h: &Graph) -> Vec<(Graph, Vec<Vertex>)> {
    h.connected_components().into_iter().filter(|c| c.len() > 1).map(|c| h.induced_subgraph(&c)).collect()
}

fn family_reason(h: &Graph) -> Option<Reason> {
    if h.is_star() {
        Some(Reason::Star { leaves: h.m() })
    } else if h.is_path() {
        Some(Reason::Path { length: h.m() })
    } else if h.is_cycle() {
        Some(Reason::Cycle { length: h.m() })
    } else {
        None
    }
}

/// `Δ(L(h))` is Cohen–Macaulay iff `h` is a star, path, cycle or a member of
/// the CM catalog. Isolated vertices of `h` are ignored; with several edge
/// components the complex is CM exactly when all of them are single edges.
pub fn decide_cm(h: &Graph) -> Result<Verdict> {
    if h.m() == 0 {
        return Err(Error::Edgeless);
    }
    let comps = edge_components(h);
    if comps.len() > 1 {
        return Ok(if comps.iter().all(|(c, _)| c.m() == 1) {
            Verdict::yes(Reason::SingleEdgeComponents { components: comps.len() })
        } else {
            Verdict::no(Reason::DisconnectedComplex { components: comps.len() })
        });
    }
    decide_cm_connected(&comps[0].0)
}

fn decide_cm_connected(c: &Graph) -> Result<Verdict> {
    if let Some(reason) = family_reason(c) {
        return Ok(Verdict::yes(reason));
    }
    if let Some(member) = catalog(CatalogKind::Cm).lookup(c) {
        return Ok(Verdict::yes(Reason::CatalogMember { catalog: CatalogKind::Cm, member }));
    }
    Ok(match classify_pure(c)? {
        PureClass::NotPure => Verdict::no(Reason::NotPure),
        class => Verdict::no(Reason::PureNotStronglyConnected { class }),
    })
}

/// `Δ(L(h))` is Gorenstein iff `h` is a star, a cycle, a path with at most
/// three edges, or a member of the Gorenstein catalog. With several edge
/// components the complex is a set of points, a sphere only for two points.
pub fn decide_gorenstein(h: &Graph) -> Result<Verdict> {
    if h.m() == 0 {
        return Err(Error::Edgeless);
    }
    let comps = edge_components(h);
    if comps.len() > 1 {
        return Ok(if comps.iter().all(|(c, _)| c.m() == 1) {
            if comps.len() == 2 {
                Verdict::yes(Reason::SingleEdgeComponents { components: 2 })
            } else {
                Verdict::no(Reason::PointsNotSphere { points: comps.len() })
            }
        } else {
            Verdict::no(Reason::DisconnectedComplex { components: comps.len() })
        });
    }
    let c = &comps[0].0;
    if c.is_star() {
        return Ok(Verdict::yes(Reason::Star { leaves: c.m() }));
    }
    if c.is_cycle() {
        return Ok(Verdict::yes(Reason::Cycle { length: c.m() }));
    }
    if c.is_path() {
        return Ok(if c.m() <= 3 {
            Verdict::yes(Reason::Path { length: c.m() })
        } else {
            Verdict::no(Reason::PathTooLong { length: c.m() })
        });
    }
    if let Some(member) = catalog(CatalogKind::Gorenstein).lookup(c) {
        return Ok(Verdict::yes(Reason::CatalogMember { catalog: CatalogKind::Gorenstein, member }));
    }
    Ok(if decide_cm_connected(c)?.value {
        Verdict::no(Reason::OutsideGorensteinCatalog)
    } else {
        Verdict::no(Reason::NotCohenMacaulay)
    })
}

/// Checks the r-graph conditions with levels measured from `root`, where
/// `r = deg(root)`.
pub fn is_r_graph(h: &Graph, root: Vertex) -> Result<Verdict> {
    require_connected(h)?;
    if !h.contains(root) {
        return Err(Error::UnknownVertex(root));
    }
    Ok(match r_graph_violation(h, root)? {
        None => Verdict::yes(Reason::RGraph { root, r: h.degree(root) }),
        Some(violation) => Verdict::no(Reason::NotRGraph { root, violation }),
    })
}

fn r_graph_violation(h: &Graph, root: Vertex) -> Result<Option<RGraphViolation>> {
    let r = h.degree(root);
    let cap = r.min(3);
    for x in h.vertices().filter(|&x| x != root) {
        if h.degree(x) > cap {
            return Ok(Some(RGraphViolation::DegreeAboveCap { vertex: x, degree: h.degree(x), cap }));
        }
    }
    if let Some(x) = h.vertices().find(|&x| h.degree(x) == 2 && !h.in_triangle(x)) {
        return Ok(Some(RGraphViolation::OpenDegreeTwo { vertex: x }));
    }
    let levels = h.bfs_levels(root)?;
    let level1 = h.level1_structures(root)?;
    let level = |v: Vertex| levels.level(v).expect("connected");
    for x in h.vertices() {
        let d = h.degree(x);
        match level(x) {
            0 | 1 => {}
            2 => {
                let nbrs = h.neighbors(x);
                let supported = match d {
                    1 => level1.is_path_endpoint(nbrs[0]),
                    2 => level1.is_unit_path(nbrs[0], nbrs[1]),
                    3 => (0..3).any(|skip| {
                        let pair: Vec<Vertex> = (0..3).filter(|&i| i != skip).map(|i| nbrs[i]).collect();
                        let third = nbrs[skip];
                        level1.is_unit_path(pair[0], pair[1])
                            && (level(third) == 3
                                || (level(third) == 2 && h.degree(third) == 3)
                                || level1.is_path_endpoint(third))
                    }),
                    _ => false,
                };
                if !supported {
                    return Ok(Some(RGraphViolation::LevelTwoUnsupported { vertex: x, degree: d }));
                }
            }
            3 => {
                if d != 1 {
                    return Ok(Some(RGraphViolation::LevelThreeNotLeaf { vertex: x }));
                }
            }
            _ => return Ok(Some(RGraphViolation::BeyondLevelThree { vertex: x })),
        }
    }
    Ok(None)
}

/// A maximum-degree vertex, the smallest id among ties.
fn max_degree_vertex(h: &Graph) -> Vertex {
    let max = h.max_degree();
    h.vertices().find(|&v| h.degree(v) == max).expect("non-empty graph")
}

/// The single component of the split graph that is not an edge, if the
/// split graph has at most one such component.
enum SplitOutcome {
    AllEdges,
    Several(usize),
    /// The component and, for each of its vertices, the id in the input.
    One(Graph, Vec<Vertex>),
}

fn split_core(c: &Graph, c_ids: &[Vertex]) -> SplitOutcome {
    let split = c.split_open_degree2();
    let comps: Vec<Vec<Vertex>> =
        split.graph.connected_components().into_iter().filter(|comp| comp.len() > 2).collect();
    match comps.len() {
        0 => SplitOutcome::AllEdges,
        1 => {
            let (h0, ids) = split.graph.induced_subgraph(&comps[0]);
            let orig = ids.iter().map(|&s| c_ids[split.origin[s as usize].original() as usize]).collect();
            SplitOutcome::One(h0, orig)
        }
        k => SplitOutcome::Several(k),
    }
}

/// `Δ(L(h))` is sequentially Cohen–Macaulay iff, after splitting the
/// degree-2 vertices outside triangles, at most one component is not an
/// edge and that component is an r-graph rooted at a maximum-degree vertex
/// in which every level-2 vertex of degree 3 has a leaf neighbour.
///
/// Single-edge components of `h` only contribute isolated points and are
/// discarded; two or more other components make the pure 1-skeleton
/// disconnected.
pub fn decide_seq_cm(h: &Graph) -> Result<Verdict> {
    if h.m() == 0 {
        return Err(Error::Edgeless);
    }
    let comps: Vec<_> = edge_components(h).into_iter().filter(|(c, _)| c.m() > 1).collect();
    let (c, c_ids) = match comps.len() {
        0 => return Ok(Verdict::yes(Reason::SingleEdgeComponents { components: edge_components(h).len() })),
        1 => &comps[0],
        k => return Ok(Verdict::no(Reason::DisconnectedComplex { components: k })),
    };
    let high: Vec<Vertex> = c.vertices().filter(|&v| c.degree(v) >= 4).collect();
    if let [first, second, ..] = high[..] {
        return Ok(Verdict::no(Reason::TwoHighDegreeVertices {
            first: c_ids[first as usize],
            second: c_ids[second as usize],
        }));
    }
    let (h0, ids) = match split_core(c, c_ids) {
        SplitOutcome::AllEdges => return Ok(Verdict::yes(Reason::AllEdgesAfterSplit)),
        SplitOutcome::Several(k) => return Ok(Verdict::no(Reason::SeveralSplitComponents { non_edge: k })),
        SplitOutcome::One(h0, ids) => (h0, ids),
    };
    let root = max_degree_vertex(&h0);
    let orig = |v: Vertex| ids[v as usize];
    if let Some(violation) = r_graph_violation(&h0, root)? {
        return Ok(Verdict::no(Reason::NotRGraph { root: orig(root), violation: map_violation(violation, orig) }));
    }
    let levels = h0.bfs_levels(root)?;
    for x in h0.vertices() {
        if levels.level(x) == Some(2) && h0.degree(x) == 3 && !h0.neighbors(x).iter().any(|&w| h0.degree(w) == 1) {
            return Ok(Verdict::no(Reason::MissingLeafNeighbor { root: orig(root), vertex: orig(x) }));
        }
    }
    Ok(Verdict::yes(Reason::RGraph { root: orig(root), r: h0.degree(root) }))
}

fn map_violation(v: RGraphViolation, orig: impl Fn(Vertex) -> Vertex) -> RGraphViolation {
    use RGraphViolation::*;
    match v {
        DegreeAboveCap { vertex, degree, cap } => DegreeAboveCap { vertex: orig(vertex), degree, cap },
        OpenDegreeTwo { vertex } => OpenDegreeTwo { vertex: orig(vertex) },
        BeyondLevelThree { vertex } => BeyondLevelThree { vertex: orig(vertex) },
        LevelThreeNotLeaf { vertex } => LevelThreeNotLeaf { vertex: orig(vertex) },
        LevelTwoUnsupported { vertex, degree } => LevelTwoUnsupported { vertex: orig(vertex), degree },
    }
}

/// Second route for inputs of maximum degree at most 3: the split component
/// has a pure clique complex, so sequential Cohen–Macaulayness reduces to
/// Cohen–Macaulayness of that component. `None` when some degree exceeds 3.
pub fn seq_cm_via_purity(h: &Graph) -> Result<Option<bool>> {
    if h.m() == 0 {
        return Err(Error::Edgeless);
    }
    if h.max_degree() > 3 {
        return Ok(None);
    }
    let comps: Vec<_> = edge_components(h).into_iter().filter(|(c, _)| c.m() > 1).collect();
    match comps.len() {
        0 => Ok(Some(true)),
        1 => Ok(Some(match split_core(&comps[0].0, &comps[0].1) {
            SplitOutcome::AllEdges => true,
            SplitOutcome::Several(_) => false,
            SplitOutcome::One(h0, _) => decide_cm_connected(&h0)?.value,
        })),
        _ => Ok(Some(false)),
    }
}

const UNSEEN: u8 = u8::MAX;
/// Step 2 marks the non-edge component with this value; below `UNSEEN`
/// and above every level step 3 assigns.
const IN_COMPONENT: u8 = u8::MAX - 1;
const LEVEL_CAP: u8 = 8;

const SPLIT: u8 = 1;
const WALKED: u8 = 2;

/// The split graph `H'` read off the adjacency of `h`. A split vertex `x`
/// keeps the edge to its first neighbour; the half `n + x` takes the other.
struct SplitView<'a> {
    n: usize,
    offsets: &'a [u32],
    targets: &'a [Vertex],
    state: Vec<u8>,
}

impl SplitView<'_> {
    #[inline(always)]
    fn row(&self, v: usize) -> &[Vertex] {
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    #[inline(always)]
    fn is_split(&self, v: usize) -> bool {
        self.state[v] & SPLIT != 0
    }

    /// The vertex of `H'` standing for `t` on the edge `{t, from}` of `h`.
    #[inline(always)]
    fn endpoint(&self, t: Vertex, from: Vertex) -> Vertex {
        if self.is_split(t as usize) && self.row(t as usize)[0] != from {
            self.n as Vertex + t
        } else {
            t
        }
    }

    #[inline(always)]
    fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        if v >= self.n || self.is_split(v) {
            1
        } else {
            self.row(v).len()
        }
    }

    fn neighbors_into(&self, v: Vertex, out: &mut Vec<Vertex>) {
        out.clear();
        let u = v as usize;
        if u >= self.n {
            let x = (u - self.n) as Vertex;
            out.push(self.endpoint(self.row(x as usize)[1], x));
        } else if self.is_split(u) {
            out.push(self.endpoint(self.row(u)[0], v));
        } else {
            out.extend(self.row(u).iter().map(|&t| self.endpoint(t, v)));
        }
    }

    fn adjacent(&self, a: Vertex, b: Vertex, buf: &mut Vec<Vertex>) -> bool {
        let (s, t) = if self.degree(a) <= self.degree(b) { (a, b) } else { (b, a) };
        self.neighbors_into(s, buf);
        buf.contains(&t)
    }

    fn original(&self, v: Vertex) -> Vertex {
        if (v as usize) < self.n {
            v
        } else {
            v - self.n as Vertex
        }
    }

    /// Follows the chain of split vertices from `x` through `first`; returns
    /// the non-split vertex it ends at and the number of split vertices
    /// passed, or `None` when the chain closes up at `x`.
    fn walk(&mut self, x: Vertex, first: Vertex, mark: bool) -> (Option<Vertex>, usize) {
        let (mut prev, mut cur) = (x, first);
        let mut count = 0;
        while self.is_split(cur as usize) {
            if cur == x {
                return (None, count);
            }
            if mark {
                self.state[cur as usize] |= WALKED;
            }
            count += 1;
            let row = self.row(cur as usize);
            let next = if row[0] == prev { row[1] } else { row[0] };
            (prev, cur) = (cur, next);
        }
        (Some(cur), count)
    }

    /// Components of `h` made of split vertices and leaves only: paths with
    /// at least two edges and cycles of length at least four. Returns one
    /// split vertex per component, stopping after `limit`.
    fn bare_chains(&mut self, limit: usize) -> Vec<Vertex> {
        let mut found = Vec::new();
        for x in 0..self.n as Vertex {
            if !self.is_split(x as usize) || self.state[x as usize] & WALKED != 0 {
                continue;
            }
            self.state[x as usize] |= WALKED;
            let (a, b) = (self.row(x as usize)[0], self.row(x as usize)[1]);
            let (end, _) = self.walk(x, a, true);
            let bare = match end {
                None => true,
                Some(e) => {
                    let (Some(f), _) = self.walk(x, b, true) else { unreachable!("an open chain does not close") };
                    self.row(e as usize).len() == 1 && self.row(f as usize).len() == 1
                }
            };
            if bare {
                found.push(x);
                if found.len() == limit {
                    break;
                }
            }
        }
        found
    }
}

fn sorted_row_contains(row: &[Vertex], v: Vertex) -> bool {
    if row.len() <= 8 {
        row.contains(&v)
    } else {
        row.binary_search(&v).is_ok()
    }
}

/// Streaming decision procedure for sequential Cohen–Macaulayness.
///
/// Step 1 computes degrees in one pass, leaving as soon as a second vertex
/// of degree above three appears, and marks every degree-2 vertex whose
/// neighbours are not adjacent as split; the split graph is never built.
/// Step 2 finds the component of the split graph that is not a single edge
/// and checks that it is the only one. Step 3 runs a BFS from a
/// maximum-degree vertex of that component and checks each level-2 and
/// level-3 vertex as it is dequeued. Inputs with several components of two
/// or more edges are rejected before answering true.
pub fn linear_algorithm(h: &Graph) -> Result<Verdict> {
    if h.m() == 0 {
        return Err(Error::Edgeless);
    }
    let exit = |step: u8, value: bool, exit: LinearExit| Ok(Verdict { value, reason: Reason::Linear { step, exit } });

    // Step 1
    let n = h.n();
    let (offsets, targets) = h.csr();
    let mut view = SplitView { n, offsets, targets, state: vec![0u8; n] };
    let deg = |v: Vertex| (offsets[v as usize + 1] - offsets[v as usize]) as usize;
    let mut high: Option<Vertex> = None;
    let mut wide = 0usize;
    let mut first_wide: Option<Vertex> = None;
    let mut splits = 0usize;
    let mut first_split: Option<Vertex> = None;
    // split vertices next to a leaf, counted once per leaf
    let mut leaf_ends = 0usize;
    let mut first_leaf_end: Option<(Vertex, Vertex)> = None;
    for v in 0..n as Vertex {
        let row = view.row(v as usize);
        let d = row.len();
        if d > 3 {
            if let Some(first) = high {
                return exit(1, false, LinearExit::SecondHighDegree { first, second: v });
            }
            high = Some(v);
        }
        if d == 2 {
            let (a, b) = (row[0], row[1]);
            let (s, t) = if deg(a) <= deg(b) { (a, b) } else { (b, a) };
            if !sorted_row_contains(view.row(s as usize), t) {
                view.state[v as usize] = SPLIT;
                splits += 1;
                first_split.get_or_insert(v);
                for (leaf, other) in [(a, b), (b, a)] {
                    if deg(leaf) == 1 {
                        leaf_ends += 1;
                        first_leaf_end.get_or_insert((v, other));
                    }
                }
                continue;
            }
        }
        if d >= 2 {
            wide += 1;
            first_wide.get_or_insert(v);
        }
    }

    // Step 2
    let Some(start) = first_wide else {
        // every component is a single edge, a path or a cycle; one that is
        // not a single edge is allowed
        let single = match (first_leaf_end, first_split) {
            (_, None) => true,
            (Some((x, away)), _) if leaf_ends == 2 => view.walk(x, away, false).1 + 1 == splits,
            (None, Some(x)) => {
                let first = view.row(x as usize)[0];
                view.walk(x, first, false).1 + 1 == splits
            }
            _ => false,
        };
        if single {
            return exit(2, true, LinearExit::AllEdges);
        }
        let found = view.bare_chains(2);
        return exit(1, false, LinearExit::SeveralNonTrivialComponents { first: found[0], second: found[1] });
    };
    let total = 2 * n;
    let mut level = vec![UNSEEN; total];
    let mut queue: Vec<Vertex> = Vec::new();
    let mut buf: Vec<Vertex> = Vec::new();
    level[start as usize] = IN_COMPONENT;
    queue.push(start);
    let mut head = 0;
    let mut root = start;
    let mut reached_wide = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = view.degree(u);
        reached_wide += usize::from(du >= 2);
        let dr = view.degree(root);
        if du > dr || (du == dr && u < root) {
            root = u;
        }
        view.neighbors_into(u, &mut buf);
        for &t in &buf {
            if level[t as usize] == UNSEEN {
                level[t as usize] = IN_COMPONENT;
                queue.push(t);
            }
        }
    }
    if reached_wide < wide {
        let other = (start..n as Vertex).find(|&v| view.degree(v) >= 2 && level[v as usize] == UNSEEN);
        let second = other.expect("an unreached vertex of degree at least 2");
        return exit(2, false, LinearExit::SeveralNonEdgeComponents { first: start, second });
    }

    // Step 3
    let mut processed = vec![false; total];
    let unvisited = |l: u8| l >= IN_COMPONENT;
    let mut nbrs: Vec<Vertex> = Vec::new();
    level[root as usize] = 0;
    queue.clear();
    queue.push(root);
    let mut head = 0;
    while head < queue.len() {
        let y = queue[head];
        head += 1;
        processed[y as usize] = true;
        let ly = level[y as usize];
        view.neighbors_into(y, &mut nbrs);
        let orig = view.original(y);
        match ly {
            2 => match nbrs.len() {
                1 => {
                    view.neighbors_into(nbrs[0], &mut buf);
                    if !buf.iter().any(|&t| level[t as usize] == 1) {
                        return exit(3, false, LinearExit::LevelTwoLeaf { vertex: orig });
                    }
                }
                2 => {
                    let ok = level[nbrs[0] as usize] == 1
                        && level[nbrs[1] as usize] == 1
                        && view.adjacent(nbrs[0], nbrs[1], &mut buf);
                    if !ok {
                        return exit(3, false, LinearExit::LevelTwoDegreeTwo { vertex: orig });
                    }
                }
                3 => {
                    let ones: Vec<Vertex> = nbrs.iter().copied().filter(|&t| level[t as usize] == 1).collect();
                    let other = nbrs.iter().copied().find(|&t| level[t as usize] != 1);
                    let ok = ones.len() == 2
                        && view.adjacent(ones[0], ones[1], &mut buf)
                        && other.is_some_and(|t| !processed[t as usize]);
                    if !ok {
                        return exit(3, false, LinearExit::LevelTwoDegreeThree { vertex: orig });
                    }
                }
                _ => return exit(3, false, LinearExit::LevelTwoDegreeThree { vertex: orig }),
            },
            l if l >= 3
                && nbrs.len() != 1 => {
                    return exit(3, false, LinearExit::LevelThreeNotLeaf { vertex: orig });
                }
            _ => {}
        }
        for &t in &nbrs {
            if unvisited(level[t as usize]) {
                level[t as usize] = (ly + 1).min(LEVEL_CAP);
                queue.push(t);
            }
        }
    }

    // disconnected inputs: a path or cycle component besides the one above
    if splits > 0 {
        if let Some(&chain) = view.bare_chains(1).first() {
            return exit(1, false, LinearExit::SeveralNonTrivialComponents { first: start, second: chain });
        }
    }

    // Step 4
    exit(4, true, LinearExit::Completed { root: view.original(root) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, spider_graph, star_graph};

    fn labeled(edges: &[(&str, &str)]) -> Graph {
        Graph::from_labeled_edges(edges.iter().copied()).unwrap()
    }

    fn w1() -> Graph {
        labeled(&[
            ("v", "a"), ("v", "b"), ("v", "c"), ("v", "d"), ("a", "b"), ("c", "d"),
            ("x", "a"), ("x", "b"), ("x", "y"), ("y", "c"), ("y", "d"),
        ])
    }

    fn w2() -> Graph {
        labeled(&[("v", "a"), ("v", "b"), ("v", "c"), ("v", "d"), ("a", "b"), ("x", "a"), ("x", "b"), ("x", "w")])
    }

    #[test]
    fn purity_classes() {
        assert_eq!(classify_pure(&star_graph(5)).unwrap(), PureClass::StarRegular { r: 5 });
        assert_eq!(classify_pure(&complete_graph(4)).unwrap(), PureClass::Degree3Triangle);
        assert_eq!(classify_pure(&cycle_graph(7)).unwrap(), PureClass::PathOrCycle);
        let t = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        assert_eq!(classify_pure(&t).unwrap(), PureClass::NotPure);
        assert_eq!(classify_pure(&Graph::from_edges(3, []).unwrap()), Err(Error::Edgeless));
        assert_eq!(classify_pure(&Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()), Err(Error::Disconnected));
    }

    #[test]
    fn cm_examples() {
        assert!(decide_cm(&star_graph(4)).unwrap().value);
        assert!(decide_cm(&path_graph(6)).unwrap().value);
        assert!(decide_cm(&complete_graph(4)).unwrap().value);
        let v = decide_cm(&Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)]).unwrap()).unwrap();
        assert_eq!(v, Verdict::no(Reason::NotPure));
    }

    #[test]
    fn gorenstein_examples() {
        assert!(decide_gorenstein(&cycle_graph(6)).unwrap().value);
        assert_eq!(decide_gorenstein(&path_graph(5)).unwrap(), Verdict::no(Reason::PathTooLong { length: 4 }));
        assert!(decide_gorenstein(&path_graph(4)).unwrap().value);
        assert!(decide_gorenstein(&complete_graph(4)).unwrap().value);
    }

    #[test]
    fn r_graph_examples() {
        let s = star_graph(4);
        assert!(is_r_graph(&s, 0).unwrap().value);
        let g = w1();
        assert!(is_r_graph(&g, 0).unwrap().value);
        let mut edges: Vec<(String, String)> =
            w2().edges().map(|(u, v)| (w2().label(u).into_owned(), w2().label(v).into_owned())).collect();
        edges.push(("w".into(), "z".into()));
        let longer = Graph::from_labeled_edges(edges).unwrap();
        let verdict = is_r_graph(&longer, 0).unwrap();
        assert!(!verdict.value);
        assert!(matches!(
            verdict.reason,
            Reason::NotRGraph { violation: RGraphViolation::LevelThreeNotLeaf { .. } | RGraphViolation::OpenDegreeTwo { .. }, .. }
        ));
    }

    #[test]
    fn seq_cm_examples() {
        assert!(decide_seq_cm(&spider_graph(4, 2)).unwrap().value);
        let v = decide_seq_cm(&w1()).unwrap();
        assert!(!v.value);
        assert!(matches!(v.reason, Reason::MissingLeafNeighbor { .. }));
        assert!(decide_seq_cm(&w2()).unwrap().value);

        // two degree-4 vertices joined by a path of length 5
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (6, 7), (6, 8), (6, 9)];
        edges.extend([(0, 10), (10, 11), (11, 12), (12, 13), (13, 6)]);
        let dumbbell = Graph::from_edges(14, edges).unwrap();
        assert!(matches!(decide_seq_cm(&dumbbell).unwrap().reason, Reason::TwoHighDegreeVertices { .. }));
    }

    #[test]
    fn linear_examples() {
        assert!(linear_algorithm(&path_graph(1000)).unwrap().value);
        let v = linear_algorithm(&w1()).unwrap();
        assert!(matches!(v.reason, Reason::Linear { step: 3, exit: LinearExit::LevelTwoDegreeThree { .. } }));
        let two_hubs = Graph::from_edges(
            12,
            [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6), (6, 7), (6, 8), (6, 9), (6, 10), (6, 11)],
        )
        .unwrap();
        let v = linear_algorithm(&two_hubs).unwrap();
        assert!(matches!(v.reason, Reason::Linear { step: 1, exit: LinearExit::SecondHighDegree { first: 0, second: 6 } }));
        assert!(linear_algorithm(&w2()).unwrap().value);
        assert!(linear_algorithm(&cycle_graph(50)).unwrap().value);
    }

    #[test]
    fn disconnected_inputs() {
        let two_edges = Graph::from_edges(5, [(0, 1), (2, 3)]).unwrap();
        assert!(decide_cm(&two_edges).unwrap().value);
        assert!(decide_gorenstein(&two_edges).unwrap().value);
        assert!(decide_seq_cm(&two_edges).unwrap().value);
        let two_paths = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert!(!decide_seq_cm(&two_paths).unwrap().value);
        assert!(!linear_algorithm(&two_paths).unwrap().value);
        assert!(!decide_cm(&two_paths).unwrap().value);
    }

    #[test]
    fn edgeless_rejected() {
        let g = Graph::from_edges(2, []).unwrap();
        assert_eq!(decide_cm(&g), Err(Error::Edgeless));
        assert_eq!(decide_seq_cm(&g), Err(Error::Edgeless));
        assert_eq!(linear_algorithm(&g), Err(Error::Edgeless));
        assert_eq!(decide_gorenstein(&g), Err(Error::Edgeless));
    }

    #[test]
    fn single_edge() {
        let k2 = path_graph(2);
        assert!(decide_cm(&k2).unwrap().value);
        assert!(decide_seq_cm(&k2).unwrap().value);
        assert!(decide_gorenstein(&k2).unwrap().value);
        assert!(linear_algorithm(&k2).unwrap().value);
    }
}
