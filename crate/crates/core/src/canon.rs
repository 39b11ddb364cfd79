//! Canonical forms and isomorphism tests for small graphs.
//!
//! The canonical form is the lexicographically least upper-triangle bit
//! string over all relabelings that respect an isomorphism-invariant colour
//! refinement. Pairs are read column by column: (0,1), (0,2), (1,2), (0,3), …

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest vertex count accepted by [`canonical_form`].
pub const CANON_MAX_VERTICES: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u8,
    /// Pair `p` sits at bit `P - 1 - p`, `P = n(n-1)/2`.
    code: u64,
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    /// The graph on `0..n` with this adjacency pattern.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let total = pair_count(n);
        let mut edges = Vec::new();
        let mut p = 0;
        for j in 1..n {
            for i in 0..j {
                if self.code >> (total - 1 - p) & 1 == 1 {
                    edges.push((i as Vertex, j as Vertex));
                }
                p += 1;
            }
        }
        Graph::from_edges(n, edges).expect("pairs are in range")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let total = pair_count(self.n());
        write!(f, "{}:", self.n)?;
        for p in 0..total {
            write!(f, "{}", self.code >> (total - 1 - p) & 1)?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Stable colour refinement. Colours are numbered by the sorted order of
/// their signatures, so the result does not depend on vertex names.
pub fn refine_colors(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut color: Vec<u32> = g.vertices().map(|v| g.degree(v) as u32).collect();
    let mut classes = distinct(&color);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = g
            .vertices()
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| color[w as usize]).collect();
                nb.sort_unstable();
                (color[v as usize], nb)
            })
            .collect();
        let mut order: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        order.sort();
        order.dedup();
        let next: Vec<u32> = (0..n).map(|v| order.binary_search(&&sigs[v]).unwrap() as u32).collect();
        let next_classes = order.len();
        color = next;
        if next_classes == classes {
            return color;
        }
        classes = next_classes;
    }
}

fn distinct(xs: &[u32]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_labeling(g).map(|(form, _)| form)
}

/// The canonical form and a relabeling `perm` (vertex `v` becomes `perm[v]`)
/// that realises it.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<Vertex>)> {
    let n = g.n();
    if n > CANON_MAX_VERTICES {
        return Err(Error::Capacity { what: "vertex count for canonical form", limit: CANON_MAX_VERTICES });
    }
    let color = refine_colors(g);
    let mut slot_color = color.clone();
    slot_color.sort_unstable();
    let mut search = Search { g, color: &color, slot_color: &slot_color, total: pair_count(n), best: None, order: Vec::new() };
    search.run(0, 0);
    let (code, order) = search.best.unwrap_or((0, Vec::new()));
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v as usize] = pos as Vertex;
    }
    Ok((CanonicalForm { n: n as u8, code }, perm))
}

struct Search<'a> {
    g: &'a Graph,
    color: &'a [u32],
    slot_color: &'a [u32],
    total: usize,
    best: Option<(u64, Vec<Vertex>)>,
    order: Vec<Vertex>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, code: u64) {
        let n = self.slot_color.len();
        if depth == n {
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, self.order.clone()));
            }
            return;
        }
        for v in 0..n as Vertex {
            if self.color[v as usize] != self.slot_color[depth] || self.order.contains(&v) {
                continue;
            }
            let mut next = code;
            for &u in &self.order {
                next = next << 1 | self.g.has_edge(u, v) as u64;
            }
            let filled = pair_count(depth + 1);
            if let Some((b, _)) = &self.best {
                if next > b >> (self.total - filled) {
                    continue;
                }
            }
            self.order.push(v);
            self.run(depth + 1, next);
            self.order.pop();
        }
    }
}

/// Isomorphism test by joint colour refinement followed by backtracking.
/// Independent of [`canonical_form`]; used to cross-check it.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n();
    if n != b.n() || a.m() != b.m() {
        return false;
    }
    // refine the disjoint union so colours are comparable across the two
    let union_edges = a.edges().chain(b.edges().map(|(u, v)| (u + n as Vertex, v + n as Vertex)));
    let union = Graph::from_edges(2 * n, union_edges).expect("valid union");
    let color = refine_colors(&union);
    let (ca, cb) = color.split_at(n);
    let (mut sa, mut sb) = (ca.to_vec(), cb.to_vec());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    // map rare colours first
    let mut order: Vec<Vertex> = a.vertices().collect();
    order.sort_by_key(|&v| (ca.iter().filter(|&&c| c == ca[v as usize]).count(), v));
    let mut image = vec![Vertex::MAX; n];
    let mut taken = vec![false; n];
    extend_map(a, b, ca, cb, &order, 0, &mut image, &mut taken)
}

#[allow(clippy::too_many_arguments)]
fn extend_map(
    a: &Graph,
    b: &Graph,
    ca: &[u32],
    cb: &[u32],
    order: &[Vertex],
    depth: usize,
    image: &mut [Vertex],
    taken: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in b.vertices() {
        if taken[w as usize] || cb[w as usize] != ca[v as usize] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| a.has_edge(u, v) == b.has_edge(image[u as usize], w));
        if !consistent {
            continue;
        }
        image[v as usize] = w;
        taken[w as usize] = true;
        if extend_map(a, b, ca, cb, order, depth + 1, image, taken) {
            return true;
        }
        taken[w as usize] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, star_graph};

    #[test]
    fn small_forms() {
        let p3 = canonical_form(&path_graph(3)).unwrap();
        let k3 = canonical_form(&complete_graph(3)).unwrap();
        assert_ne!(p3, k3);
        assert_eq!(k3.to_string(), "3:111");
        assert_eq!(p3.to_string(), "3:011");
        assert_eq!(canonical_form(&star_graph(2)).unwrap(), p3);
    }

    #[test]
    fn relabeling_is_invariant() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
        let form = canonical_form(&g).unwrap();
        for perm in [[5, 4, 3, 2, 1, 0], [1, 0, 3, 2, 5, 4], [2, 5, 0, 4, 1, 3]] {
            assert_eq!(canonical_form(&g.permuted(&perm)).unwrap(), form);
        }
    }

    #[test]
    fn labeling_realises_form() {
        let g = cycle_graph(7);
        let (form, perm) = canonical_labeling(&g).unwrap();
        assert_eq!(canonical_form(&form.to_graph()).unwrap(), form);
        assert_eq!(g.permuted(&perm).edges().collect::<Vec<_>>(), form.to_graph().edges().collect::<Vec<_>>());
    }

    #[test]
    fn capacity_limit() {
        assert!(matches!(canonical_form(&path_graph(10)), Err(Error::Capacity { .. })));
    }

    #[test]
    fn isomorphism_test() {
        assert!(isomorphic(&cycle_graph(6), &cycle_graph(6).permuted(&[3, 1, 5, 0, 2, 4])));
        // C6 and two triangles share a degree sequence
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!isomorphic(&cycle_graph(6), &two_triangles));
        assert!(!isomorphic(&path_graph(4), &star_graph(3)));
    }
}
