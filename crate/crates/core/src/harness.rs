//! Exhaustive small-graph enumeration, catalog derivation, and the
//! classifier-versus-oracle cross-check.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, isomorphic, CanonicalForm};
use crate::classify::{
    classify_pure, decide_cm, decide_gorenstein, decide_seq_cm, linear_algorithm, seq_cm_via_purity, CatalogKind,
    PureClass,
};
use crate::error::{Error, Result};
use crate::formats::write_catalog;
use crate::graph::{Graph, Vertex};
use crate::homology::Field;
use crate::line_graph::line_graph;
use crate::oracle::{
    is_cm, is_gorenstein, is_seq_cm, is_shellable, is_vertex_decomposable, SHELLING_FACET_LIMIT,
};
use crate::simplicial::{line_clique_complex, Face, SimplicialComplex};

/// Largest vertex count for full enumeration.
pub const ENUMERATION_MAX_VERTICES: usize = 8;

/// Vertex bound used when deriving the catalogs.
pub const CATALOG_BOUND: usize = 8;

/// Connected graphs on `1..=max_n` vertices, one per isomorphism class,
/// grouped by vertex count and sorted by canonical form within a group.
///
/// Every connected graph on `n` vertices has a vertex whose removal leaves
/// it connected, so extending each class on `n - 1` vertices by a vertex
/// with every non-empty neighbourhood reaches every class on `n`.
pub fn connected_graphs_by_size(max_n: usize) -> Result<Vec<Vec<Graph>>> {
    if max_n == 0 || max_n > ENUMERATION_MAX_VERTICES {
        return Err(Error::Capacity { what: "vertex count for enumeration", limit: ENUMERATION_MAX_VERTICES });
    }
    let mut levels = vec![vec![Graph::from_edges(1, []).unwrap()]];
    for _ in 2..=max_n {
        let next = extend_by_vertex(levels.last().unwrap(), |_, _| true);
        levels.push(next);
    }
    Ok(levels)
}

pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(connected_graphs_by_size(n)?.pop().unwrap())
}

/// All extensions of `base` by one vertex joined to a non-empty set `S`
/// accepted by `allow(graph, S)`, deduplicated and sorted.
fn extend_by_vertex(base: &[Graph], allow: impl Fn(&Graph, &[Vertex]) -> bool + Sync) -> Vec<Graph> {
    let mut forms: Vec<CanonicalForm> = base
        .par_iter()
        .flat_map_iter(|g| {
            let n = g.n();
            let allow = &allow;
            (1u32..1 << n).filter_map(move |mask| {
                let nbrs: Vec<Vertex> = (0..n as Vertex).filter(|&v| mask >> v & 1 == 1).collect();
                if !allow(g, &nbrs) {
                    return None;
                }
                let edges = g.edges().chain(nbrs.iter().map(|&v| (v, n as Vertex)));
                let ext = Graph::from_edges(n + 1, edges).unwrap();
                Some(canonical_form(&ext).unwrap())
            })
        })
        .collect();
    forms.par_sort_unstable();
    forms.dedup();
    forms.iter().map(CanonicalForm::to_graph).collect()
}

/// All graphs on `n` vertices (connected or not), one per isomorphism class,
/// generated by adding one edge at a time and deduplicated with pairwise
/// isomorphism tests inside invariant buckets. Independent of the canonical
/// form; used to cross-check [`connected_graphs_by_size`].
pub fn all_graphs_by_augmentation(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > ENUMERATION_MAX_VERTICES {
        return Err(Error::Capacity { what: "vertex count for enumeration", limit: ENUMERATION_MAX_VERTICES });
    }
    let mut layer = vec![Graph::from_edges(n, []).unwrap()];
    let mut all = layer.clone();
    while !layer.is_empty() {
        let candidates: Vec<Graph> = layer
            .par_iter()
            .flat_map_iter(|g| {
                let g = g.clone();
                (0..n as Vertex).flat_map(move |u| (u + 1..n as Vertex).map(move |v| (u, v))).filter_map(move |(u, v)| {
                    if g.has_edge(u, v) {
                        None
                    } else {
                        Some(Graph::from_edges(n, g.edges().chain([(u, v)])).unwrap())
                    }
                })
            })
            .collect();
        let mut buckets: HashMap<Vec<(u32, Vec<u32>)>, Vec<Graph>> = HashMap::new();
        let mut next = Vec::new();
        for c in candidates {
            let bucket = buckets.entry(degree_invariant(&c)).or_default();
            if !bucket.iter().any(|b| isomorphic(b, &c)) {
                bucket.push(c.clone());
                next.push(c);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    Ok(all)
}

/// Sorted list of (degree, sorted neighbour degrees).
fn degree_invariant(g: &Graph) -> Vec<(u32, Vec<u32>)> {
    let mut inv: Vec<(u32, Vec<u32>)> = g
        .vertices()
        .map(|v| {
            let mut nd: Vec<u32> = g.neighbors(v).iter().map(|&w| g.degree(w) as u32).collect();
            nd.sort_unstable();
            (g.degree(v) as u32, nd)
        })
        .collect();
    inv.sort_unstable();
    inv
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub vertex_extension: usize,
    pub edge_augmentation: usize,
}

/// Connected-class counts from both enumeration methods, for `1..=max_n`.
pub fn dual_counts(max_n: usize) -> Result<Vec<CountRow>> {
    let levels = connected_graphs_by_size(max_n)?;
    (1..=max_n)
        .map(|n| {
            let b = all_graphs_by_augmentation(n)?.iter().filter(|g| g.is_connected()).count();
            Ok(CountRow { n, vertex_extension: levels[n - 1].len(), edge_augmentation: b })
        })
        .collect()
}

/// Maximum degree at most 3 with every degree-2 vertex in a triangle.
pub fn is_triangle_closed_subcubic(g: &Graph) -> bool {
    g.max_degree() <= 3 && g.vertices().all(|v| g.degree(v) != 2 || g.in_triangle(v))
}

/// Connected graphs on 9 vertices of maximum degree 3 with every degree-2
/// vertex in a triangle. Built from the connected subcubic graphs on 8
/// vertices (deleting a non-cut vertex keeps a graph connected and subcubic).
pub fn restricted_nine_vertex_graphs(eight: &[Graph]) -> Vec<Graph> {
    let base: Vec<Graph> = eight.iter().filter(|g| g.max_degree() <= 3).cloned().collect();
    extend_by_vertex(&base, |g, s| s.len() <= 3 && s.iter().all(|&v| g.degree(v) < 3))
        .into_iter()
        .filter(is_triangle_closed_subcubic)
        .collect()
}

fn in_families(g: &Graph) -> bool {
    g.is_star() || g.is_path() || g.is_cycle()
}

fn pure_and_strongly_connected(cx: &SimplicialComplex) -> bool {
    cx.is_pure().unwrap() && cx.is_strongly_connected().unwrap()
}

/// A derived catalog and how it was obtained.
#[derive(Clone, Debug)]
pub struct DerivedCatalog {
    pub kind: CatalogKind,
    pub graphs: Vec<Graph>,
    pub header: Vec<String>,
    /// Members that the 9-vertex check would add (empty when stable).
    pub nine_vertex_additions: Vec<Graph>,
}

impl DerivedCatalog {
    pub fn to_text(&self) -> String {
        write_catalog(&self.header, &self.graphs)
    }
}

/// Connected graphs on at most [`CATALOG_BOUND`] vertices, other than stars,
/// paths and cycles, whose line graph has a pure strongly connected clique
/// complex; plus the 9-vertex stability check.
pub fn derive_catalog_cm() -> Result<DerivedCatalog> {
    let levels = connected_graphs_by_size(CATALOG_BOUND)?;
    let keep = |g: &Graph| g.m() > 0 && !in_families(g) && pure_and_strongly_connected(&line_clique_complex(g).unwrap());
    let graphs: Vec<Graph> =
        levels.iter().flat_map(|level| level.par_iter().filter(|g| keep(g)).cloned().collect::<Vec<_>>()).collect();
    let nine = restricted_nine_vertex_graphs(&levels[CATALOG_BOUND - 1]);
    let additions: Vec<Graph> = nine.par_iter().filter(|g| keep(g)).cloned().collect();
    let header = vec![
        "catalog: cm".to_string(),
        format!("search: connected graphs on 1 to {CATALOG_BOUND} vertices, one per isomorphism class"),
        "kept: not a star, path or cycle; clique complex of the line graph pure and strongly connected".to_string(),
        format!(
            "bound check: {} connected graphs on 9 vertices with maximum degree 3 and every degree-2 vertex in a triangle, {} further members",
            nine.len(),
            additions.len()
        ),
        format!("members: {}", graphs.len()),
    ];
    Ok(DerivedCatalog { kind: CatalogKind::Cm, graphs, header, nine_vertex_additions: additions })
}

/// Members of the CM catalog whose line-graph clique complex passes the
/// Gorenstein oracle over every field in [`Field::DEFAULT_SET`].
pub fn derive_catalog_gorenstein(cm: &DerivedCatalog) -> Result<DerivedCatalog> {
    let mut graphs = Vec::new();
    for g in &cm.graphs {
        let cx = line_clique_complex(g)?;
        let mut all = true;
        for field in Field::DEFAULT_SET {
            all &= is_gorenstein(&cx, field)?;
        }
        if all {
            graphs.push(g.clone());
        }
    }
    let fields: Vec<String> = Field::DEFAULT_SET.iter().map(|f| f.to_string()).collect();
    let header = vec![
        "catalog: gorenstein".to_string(),
        format!("search: members of the cm catalog ({} graphs)", cm.graphs.len()),
        format!("kept: clique complex of the line graph Gorenstein over {}", fields.join(", ")),
        format!("members: {}", graphs.len()),
    ];
    Ok(DerivedCatalog { kind: CatalogKind::Gorenstein, graphs, header, nine_vertex_additions: Vec::new() })
}

/// Whether every component of the complement of `L(h)` is `K1` or `K2`.
pub fn line_complement_components_small(h: &Graph) -> bool {
    match line_graph(h) {
        Ok(map) => map.line.complement().max_degree() <= 1,
        Err(_) => false,
    }
}

#[derive(Clone, Debug)]
pub struct CrossCheckOptions {
    pub min_n: usize,
    pub max_n: usize,
    pub fields: Vec<Field>,
    /// Flip the fast CM verdict of the graph at this position.
    pub inject_fault: Option<usize>,
}

impl CrossCheckOptions {
    pub fn new(max_n: usize, fields: Vec<Field>) -> CrossCheckOptions {
        CrossCheckOptions { min_n: 2, max_n, fields, inject_fault: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FastVerdicts {
    pub pure_class: PureClass,
    pub cm: bool,
    pub seq_cm: bool,
    pub linear: bool,
    pub gorenstein: bool,
    pub seq_cm_via_purity: Option<bool>,
    pub at_most_one_high_degree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleVerdicts {
    pub facets: usize,
    pub pure: bool,
    pub strongly_connected: Option<bool>,
    pub cm: BTreeMap<String, bool>,
    pub seq_cm: BTreeMap<String, bool>,
    pub gorenstein: BTreeMap<String, bool>,
    pub vertex_decomposable: bool,
    /// `None` when the facet count exceeds the shelling search bound.
    pub shellable: Option<bool>,
    /// Pure skeletons of dimension at least 3 are all CM over GF(2).
    pub high_skeletons_cm: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub decider: &'static str,
    pub fast: bool,
    pub disagreeing: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphRecord {
    pub canonical: CanonicalForm,
    pub n: usize,
    pub m: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub fast: FastVerdicts,
    pub oracle: OracleVerdicts,
    pub mismatches: Vec<Mismatch>,
    pub micros: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub records: Vec<GraphRecord>,
    pub capacity_skips: usize,
    pub millis: u128,
}

impl CrossCheckReport {
    pub fn mismatches(&self) -> impl Iterator<Item = (&GraphRecord, &Mismatch)> {
        self.records.iter().flat_map(|r| r.mismatches.iter().map(move |m| (r, m)))
    }

    pub fn mismatch_count(&self) -> usize {
        self.records.iter().map(|r| r.mismatches.len()).sum()
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        out
    }
}

/// Runs every fast decider and every oracle on each connected graph with
/// `min_n..=max_n` vertices and records all disagreements.
pub fn cross_check(opts: &CrossCheckOptions) -> Result<CrossCheckReport> {
    let start = Instant::now();
    let levels = connected_graphs_by_size(opts.max_n.max(1))?;
    let graphs: Vec<Graph> = levels.into_iter().skip(opts.min_n.max(1) - 1).flatten().collect();
    let records: Vec<GraphRecord> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| check_graph(g, &opts.fields, opts.inject_fault == Some(i)))
        .collect::<Result<_>>()?;
    let capacity_skips = records.iter().filter(|r| r.oracle.shellable.is_none()).count();
    Ok(CrossCheckReport { records, capacity_skips, millis: start.elapsed().as_millis() })
}

fn per_field(fields: &[Field], f: impl Fn(Field) -> Result<bool>) -> Result<BTreeMap<String, bool>> {
    fields.iter().map(|&k| Ok((k.to_string(), f(k)?))).collect()
}

pub fn check_graph(g: &Graph, fields: &[Field], flip_cm: bool) -> Result<GraphRecord> {
    let start = Instant::now();
    let fast = FastVerdicts {
        pure_class: classify_pure(g)?,
        cm: decide_cm(g)?.value ^ flip_cm,
        seq_cm: decide_seq_cm(g)?.value,
        linear: linear_algorithm(g)?.value,
        gorenstein: decide_gorenstein(g)?.value,
        seq_cm_via_purity: seq_cm_via_purity(g)?,
        at_most_one_high_degree: g.vertices().filter(|&v| g.degree(v) >= 4).count() <= 1,
    };
    let cx = line_clique_complex(g)?;
    let pure = cx.is_pure()?;
    let dim = cx.dim()?;
    let mut high_skeletons_cm = true;
    for i in 3..=dim {
        high_skeletons_cm &= is_cm(&cx.pure_skeleton(i)?, Field::GF2)?;
    }
    let oracle = OracleVerdicts {
        facets: cx.facets().len(),
        pure,
        strongly_connected: if pure { Some(cx.is_strongly_connected()?) } else { None },
        cm: per_field(fields, |k| is_cm(&cx, k))?,
        seq_cm: per_field(fields, |k| is_seq_cm(&cx, k))?,
        gorenstein: per_field(fields, |k| is_gorenstein(&cx, k))?,
        vertex_decomposable: is_vertex_decomposable(&cx)?,
        shellable: if cx.facets().len() <= SHELLING_FACET_LIMIT { Some(is_shellable(&cx)?) } else { None },
        high_skeletons_cm,
    };
    let mismatches = compare(&fast, &oracle);
    Ok(GraphRecord {
        canonical: canonical_form(g)?,
        n: g.n(),
        m: g.m(),
        edges: g.edges().collect(),
        fast,
        oracle,
        mismatches,
        micros: start.elapsed().as_micros(),
    })
}

fn compare(fast: &FastVerdicts, o: &OracleVerdicts) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let mut check = |decider: &'static str, value: bool, others: Vec<(String, bool)>| {
        let disagreeing: Vec<String> = others.into_iter().filter(|(_, b)| *b != value).map(|(s, _)| s).collect();
        if !disagreeing.is_empty() {
            out.push(Mismatch { decider, fast: value, disagreeing });
        }
    };
    let fields = |m: &BTreeMap<String, bool>, what: &str| -> Vec<(String, bool)> {
        m.iter().map(|(k, &b)| (format!("{what} over {k}"), b)).collect()
    };

    check("classify_pure", fast.pure_class != PureClass::NotPure, vec![("is_pure".into(), o.pure)]);

    let mut cm_refs = fields(&o.cm, "is_cm");
    cm_refs.push(("pure and vertex decomposable".into(), o.pure && o.vertex_decomposable));
    cm_refs.push(("pure and strongly connected".into(), o.strongly_connected == Some(true)));
    if let Some(s) = o.shellable {
        cm_refs.push(("pure and shellable".into(), o.pure && s));
    }
    if fast.gorenstein {
        // Gorenstein implies CM
        cm_refs.push(("decide_gorenstein".into(), true));
    }
    check("decide_cm", fast.cm, cm_refs);

    let mut seq_refs = fields(&o.seq_cm, "is_seq_cm");
    seq_refs.push(("is_vertex_decomposable".into(), o.vertex_decomposable));
    if let Some(s) = o.shellable {
        seq_refs.push(("is_shellable".into(), s));
    }
    check("decide_seq_cm", fast.seq_cm, seq_refs.clone());
    let mut linear_refs = seq_refs.clone();
    linear_refs.push(("decide_seq_cm".into(), fast.seq_cm));
    check("linear_algorithm", fast.linear, linear_refs);
    if let Some(v) = fast.seq_cm_via_purity {
        let mut refs = seq_refs;
        refs.push(("decide_seq_cm".into(), fast.seq_cm));
        check("seq_cm_via_purity", v, refs);
    }

    check("decide_gorenstein", fast.gorenstein, fields(&o.gorenstein, "is_gorenstein"));

    check("at_most_one_high_degree", fast.at_most_one_high_degree, vec![(
        "pure skeletons of dimension >= 3 CM over GF(2)".into(),
        o.high_skeletons_cm,
    )]);

    // implications among the oracles themselves
    let mut broken = Vec::new();
    if o.vertex_decomposable && o.shellable == Some(false) {
        broken.push(("vertex decomposable implies shellable".to_string(), false));
    }
    if o.pure && o.shellable == Some(true) && o.cm.values().any(|&b| !b) {
        broken.push(("pure shellable implies CM".to_string(), false));
    }
    if o.cm.values().any(|&b| b) && o.strongly_connected != Some(true) {
        broken.push(("CM implies pure and strongly connected".to_string(), false));
    }
    if o.cm.values().any(|&b| !b) && o.cm.values().any(|&b| b) {
        broken.push(("CM independent of the field".to_string(), false));
    }
    check("oracle_hierarchy", true, broken);
    out
}

/// Outcome of [`preservation_suite`].
#[derive(Clone, Debug, Serialize)]
pub struct PreservationReport {
    pub seed: u64,
    pub trials: usize,
    pub checks: usize,
    pub capacity_skips: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Properties {
    vertex_decomposable: bool,
    shellable: Option<bool>,
    seq_cm: bool,
}

fn properties(cx: &SimplicialComplex) -> Properties {
    Properties {
        vertex_decomposable: is_vertex_decomposable(cx).unwrap(),
        shellable: is_shellable(cx).ok(),
        seq_cm: is_seq_cm(cx, Field::GF2).unwrap(),
    }
}

struct Tally {
    checks: usize,
    skips: usize,
    violations: Vec<String>,
}

impl Tally {
    /// Compares the properties of `a` and `b`: both directions when
    /// `both`, otherwise only that `a` implies `b`.
    fn compare(&mut self, label: &str, a: &Properties, b: &Properties, both: bool, cx: &SimplicialComplex) {
        let pairs = [
            ("vertex decomposable", Some(a.vertex_decomposable), Some(b.vertex_decomposable)),
            ("shellable", a.shellable, b.shellable),
            ("sequentially CM", Some(a.seq_cm), Some(b.seq_cm)),
        ];
        for (name, x, y) in pairs {
            let (Some(x), Some(y)) = (x, y) else {
                self.skips += 1;
                continue;
            };
            self.checks += 1;
            let bad = if both { x != y } else { x && !y };
            if bad {
                self.violations.push(format!("{label}: {name} {x} -> {y} on {cx:?}"));
            }
        }
    }
}

fn random_face(rng: &mut ChaCha8Rng, pool: &[Vertex], size: usize) -> Face {
    let pick: Vec<Vertex> = pool.choose_multiple(rng, size.min(pool.len())).copied().collect();
    Face::from_vertices(pick).unwrap()
}

/// A random complex on at most `vertices` vertices with 2 to 6 generating
/// faces of size 1 to 4; when `connected`, each face meets an earlier one.
fn random_complex(rng: &mut ChaCha8Rng, vertices: usize, connected: bool) -> SimplicialComplex {
    let pool: Vec<Vertex> = (0..vertices as Vertex).collect();
    let count = rng.gen_range(2..=6);
    let mut faces: Vec<Face> = Vec::new();
    for _ in 0..count {
        let size = rng.gen_range(1..=4);
        let mut f = random_face(rng, &pool, size);
        if connected && !faces.is_empty() {
            let used: Vec<Vertex> = faces.iter().fold(Face::EMPTY, |u, f| u.union(*f)).iter().collect();
            let anchor = *used.choose(rng).unwrap();
            if !f.contains(anchor) {
                let drop = f.iter().next().filter(|_| f.len() > 1);
                f = drop.map_or(f, |d| f.without(d)).with(anchor);
            }
        }
        faces.push(f);
    }
    SimplicialComplex::generated_by(faces)
}

fn next_vertex(cx: &SimplicialComplex) -> Vertex {
    cx.universe().iter().last().map_or(0, |v| v + 1)
}

/// Exercises three preservation lemmas on seeded random complexes on at most
/// 12 vertices:
/// * adding an isolated vertex changes none of the properties;
/// * for connected `Γ`, a new edge from a vertex of `Γ` to a new vertex
///   changes none of them;
/// * an edge joining free vertices of two distinct facets of size at least 2
///   preserves each property, and reflects it when both facets have size at
///   least 3.
///
/// Also checks the fixed fixture `⟨av, bu⟩`, which is not sequentially CM
/// while `⟨av, bu, ab⟩` is vertex decomposable.
pub fn preservation_suite(trials: usize, seed: u64) -> PreservationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally { checks: 0, skips: 0, violations: Vec::new() };

    let gamma = SimplicialComplex::from_lists(&[&[0, 1], &[2, 3]]);
    let joined = gamma.add_face(Face::from_vertices([0, 2]).unwrap());
    tally.checks += 2;
    if is_seq_cm(&gamma, Field::GF2).unwrap() {
        tally.violations.push("fixture <av,bu> reported sequentially CM".into());
    }
    if !is_vertex_decomposable(&joined).unwrap() {
        tally.violations.push("fixture <av,bu,ab> reported not vertex decomposable".into());
    }

    for _ in 0..trials {
        // isolated vertex
        let cx = random_complex(&mut rng, 10, false);
        let v = next_vertex(&cx);
        let with_point = cx.add_face(Face::vertex(v));
        tally.compare("isolated vertex", &properties(&cx), &properties(&with_point), true, &cx);

        // pendant edge on a connected complex
        let cx = random_complex(&mut rng, 10, true);
        let vs: Vec<Vertex> = cx.vertices().iter().collect();
        let a = *vs.choose(&mut rng).unwrap();
        let b = next_vertex(&cx);
        let with_pendant = cx.add_face(Face::from_vertices([a, b]).unwrap());
        tally.compare("pendant edge", &properties(&cx), &properties(&with_pendant), true, &cx);

        // edge between free vertices of two facets
        let base = random_complex(&mut rng, 10, false);
        if base.facets().len() < 2 {
            tally.skips += 1;
            continue;
        }
        let picks: Vec<usize> = (0..base.facets().len()).collect::<Vec<_>>().choose_multiple(&mut rng, 2).copied().collect();
        let (ia, ib) = (picks[0], picks[1]);
        let a = next_vertex(&base);
        let b = a + 1;
        let facets: Vec<Face> = base
            .facets()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i == ia { f.with(a) } else if i == ib { f.with(b) } else { f })
            .collect();
        let cx = SimplicialComplex::generated_by(facets);
        let free = cx.free_vertices();
        if !free.contains(a) || !free.contains(b) {
            tally.violations.push(format!("construction failed to make free vertices on {cx:?}"));
            continue;
        }
        let (ea, eb) = (base.facets()[ia].len() + 1, base.facets()[ib].len() + 1);
        let with_edge = cx.add_face(Face::from_vertices([a, b]).unwrap());
        let (p, q) = (properties(&cx), properties(&with_edge));
        tally.compare("free-vertex edge", &p, &q, false, &cx);
        if ea >= 3 && eb >= 3 {
            tally.compare("free-vertex edge converse", &q, &p, false, &cx);
        }
    }
    PreservationReport { seed, trials, checks: tally.checks, capacity_skips: tally.skips, violations: tally.violations }
}

/// Connected graphs on at most `max_n` vertices that are not line graphs,
/// found by comparing against the line graphs of every connected root with
/// at most `max_n` edges.
pub fn non_line_graphs(max_n: usize) -> Result<Vec<Graph>> {
    let roots = connected_graphs_by_size((max_n + 1).min(ENUMERATION_MAX_VERTICES))?;
    let line_forms: HashSet<CanonicalForm> = roots
        .iter()
        .flatten()
        .filter(|h| h.m() >= 1 && h.m() <= max_n)
        .map(|h| canonical_form(&line_graph(h).unwrap().line))
        .collect::<Result<_>>()?;
    let candidates = connected_graphs_by_size(max_n)?;
    Ok(candidates.into_iter().flatten().filter(|g| !line_forms.contains(&canonical_form(g).unwrap())).collect())
}
