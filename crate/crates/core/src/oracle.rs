//! Definition-level deciders. These are exponential in the worst case and
//! serve as ground truth for the fast classifiers.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{reduced_homology, Field};
use crate::simplicial::{Face, SimplicialComplex};

/// Largest facet count the shelling search accepts.
pub const SHELLING_FACET_LIMIT: usize = 20;

fn non_void(cx: &SimplicialComplex) -> Result<()> {
    if cx.is_void() {
        Err(Error::VoidComplex)
    } else {
        Ok(())
    }
}

/// Reisner: every link (including the link of `∅`) has vanishing reduced
/// homology below its dimension. Faces are visited by increasing size and
/// the first failure ends the search.
pub fn is_cm(cx: &SimplicialComplex, field: Field) -> Result<bool> {
    non_void(cx)?;
    for face in cx.faces() {
        let link = cx.link(face)?;
        let d = link.dim()?;
        if d < 1 {
            continue;
        }
        let h = reduced_homology(&link, field)?;
        if (-1..d).any(|i| h.betti(i) != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every pure skeleton `Δ^[i]`, `0 <= i <= dim`, is CM.
pub fn is_seq_cm(cx: &SimplicialComplex, field: Field) -> Result<bool> {
    let dim = cx.dim()?;
    for i in 0..=dim {
        if !is_cm(&cx.pure_skeleton(i)?, field)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No face of `link(v)` is a facet of `Δ - v`.
pub fn is_shedding_vertex(cx: &SimplicialComplex, v: u32) -> Result<bool> {
    if !cx.vertices().contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    let link = cx.link(Face::vertex(v))?;
    let deletion = cx.delete_vertex(v)?;
    Ok(!deletion.facets().iter().any(|&f| link.contains_face(f)))
}

pub fn is_vertex_decomposable(cx: &SimplicialComplex) -> Result<bool> {
    non_void(cx)?;
    Ok(VdSearch::default().decide(cx.facets()))
}

#[derive(Default)]
struct VdSearch {
    memo: HashMap<Vec<Face>, bool>,
}

impl VdSearch {
    fn decide(&mut self, facets: &[Face]) -> bool {
        if facets.len() <= 1 {
            return true;
        }
        let key = compress(facets);
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        let cx = SimplicialComplex::generated_by(key.iter().copied());
        let cone = cx.cone_points();
        // a cone is vertex decomposable iff its base is
        let answer = if !cone.is_empty() {
            let base = cx.link(cone).expect("cone points form a face");
            self.decide(base.facets())
        } else {
            cx.vertices().iter().any(|v| {
                let link = cx.link(Face::vertex(v)).expect("vertex of the complex");
                let deletion = cx.delete_vertex(v).expect("vertex of the complex");
                !deletion.facets().iter().any(|&f| link.contains_face(f))
                    && self.decide(link.facets())
                    && self.decide(deletion.facets())
            })
        };
        self.memo.insert(key, answer);
        answer
    }
}

/// Renames the vertices in use to `0..k`, preserving their order.
fn compress(facets: &[Face]) -> Vec<Face> {
    let used = facets.iter().fold(Face::EMPTY, |u, f| u.union(*f));
    let mut rank = [0u32; 128];
    for (i, v) in used.iter().enumerate() {
        rank[v as usize] = i as u32;
    }
    let mut out: Vec<Face> =
        facets.iter().map(|f| Face::from_vertices(f.iter().map(|v| rank[v as usize])).unwrap()).collect();
    out.sort_unstable();
    out
}

/// Searches for a facet order in which each facet meets the union of the
/// earlier ones in a pure complex of codimension one. The feasibility of a
/// prefix depends only on its set of facets, so dead sets are memoized.
pub fn is_shellable(cx: &SimplicialComplex) -> Result<bool> {
    non_void(cx)?;
    let facets = cx.facets();
    let k = facets.len();
    if k > SHELLING_FACET_LIMIT {
        return Err(Error::Capacity { what: "facet count for shelling search", limit: SHELLING_FACET_LIMIT });
    }
    // drop[f][g] = the one vertex of f missing from g, when f∖g is a single vertex
    let drop: Vec<Vec<Face>> = facets
        .iter()
        .map(|&f| facets.iter().map(|&g| if f.minus(g).len() == 1 { f.minus(g) } else { Face::EMPTY }).collect())
        .collect();
    let mut dead = vec![0u64; (1usize << k).div_ceil(64)];
    Ok(extend_shelling(facets, &drop, 0, &mut dead))
}

fn extend_shelling(facets: &[Face], drop: &[Vec<Face>], mask: u32, dead: &mut [u64]) -> bool {
    let k = facets.len();
    if mask.count_ones() as usize == k {
        return true;
    }
    if dead[mask as usize / 64] >> (mask % 64) & 1 == 1 {
        return false;
    }
    for i in 0..k {
        if mask >> i & 1 == 1 || !attaches(facets, drop, mask, i) {
            continue;
        }
        if extend_shelling(facets, drop, mask | 1 << i, dead) {
            return true;
        }
    }
    dead[mask as usize / 64] |= 1 << (mask % 64);
    false
}

/// Whether facet `i` meets the facets in `mask` in a pure complex of
/// dimension `dim F_i - 1`.
fn attaches(facets: &[Face], drop: &[Vec<Face>], mask: u32, i: usize) -> bool {
    if mask == 0 {
        return true;
    }
    let f = facets[i];
    // vertices x such that F∖{x} lies in an earlier facet
    let ridge_gaps = (0..facets.len()).filter(|&j| mask >> j & 1 == 1).fold(Face::EMPTY, |a, j| a.union(drop[i][j]));
    // each F∩G must sit inside one of those ridges
    (0..facets.len()).filter(|&j| mask >> j & 1 == 1).all(|j| !f.minus(facets[j]).intersection(ridge_gaps).is_empty())
}

/// Restriction to the vertices not lying in every facet.
pub fn core(cx: &SimplicialComplex) -> Result<SimplicialComplex> {
    non_void(cx)?;
    let mut current = cx.clone();
    loop {
        let cone = current.cone_points();
        if cone.is_empty() {
            return Ok(current);
        }
        current = current.restrict(current.vertices().minus(cone));
    }
}

/// Stanley's criterion: the core is CM and every link in it has the
/// homology of a sphere of its dimension. The sphere condition on all links
/// already contains Reisner's, so one pass suffices.
pub fn is_gorenstein(cx: &SimplicialComplex, field: Field) -> Result<bool> {
    let core = core(cx)?;
    for face in core.faces() {
        let link = core.link(face)?;
        let d = link.dim()?;
        let h = reduced_homology(&link, field)?;
        if (-1..d).any(|i| h.betti(i) != 0) || h.betti(d) != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verdicts of one decider over several fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldVerdicts {
    pub per_field: Vec<(Field, bool)>,
}

impl FieldVerdicts {
    pub fn evaluate<F>(fields: &[Field], mut decide: F) -> Result<FieldVerdicts>
    where
        F: FnMut(Field) -> Result<bool>,
    {
        let per_field = fields.iter().map(|&k| decide(k).map(|b| (k, b))).collect::<Result<_>>()?;
        Ok(FieldVerdicts { per_field })
    }

    /// True when every sampled field says true.
    pub fn all(&self) -> bool {
        self.per_field.iter().all(|&(_, b)| b)
    }

    /// Whether the sampled fields disagree.
    pub fn split(&self) -> bool {
        self.per_field.iter().any(|&(_, b)| b) && !self.all()
    }
}
