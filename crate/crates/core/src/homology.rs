//! Reduced simplicial homology over a prime field or the rationals, from the
//! ranks of the boundary maps of the augmented oriented chain complex.
//!
//! All arithmetic is exact. Over `GF(p)` columns are reduced modulo `p`; over
//! the rationals columns are reduced fraction-free over the integers (first
//! in `i128` with overflow checks, then in arbitrary precision if needed).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::simplicial::{Face, SimplicialComplex};

/// Coefficient field: the rationals or `GF(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    pub const GF2: Field = Field::Prime(2);
    pub const GF32003: Field = Field::Prime(32003);

    /// `GF(2)`, `GF(32003)` and the rationals.
    pub const DEFAULT_SET: [Field; 3] = [Field::GF2, Field::GF32003, Field::Rationals];

    /// `0` selects the rationals; anything else must be a prime below 2^32.
    pub fn from_characteristic(c: u64) -> Result<Field> {
        if c == 0 {
            return Ok(Field::Rationals);
        }
        if c > u32::MAX as u64 || !is_prime(c) {
            return Err(Error::NotPrime(c));
        }
        Ok(Field::Prime(c as u32))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p as u64,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let c: u64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse { line: 0, message: format!("field spec {s:?} is not a number") })?;
        Field::from_characteristic(c)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Signed incidence matrix of `∂_d`, stored by columns.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub degree: i32,
    /// `(d-1)`-faces; for `d = 0` the single empty face.
    pub rows: Vec<Face>,
    /// `d`-faces.
    pub cols: Vec<Face>,
    /// Per column: `(row index, ±1)` sorted by row.
    pub columns: Vec<Vec<(u32, i8)>>,
}

impl BoundaryMatrix {
    pub fn entry(&self, row: usize, col: usize) -> i8 {
        self.columns[col].iter().find(|&&(r, _)| r as usize == row).map_or(0, |&(_, s)| s)
    }

    pub fn rank(&self, field: Field) -> usize {
        rank(&self.columns, self.rows.len(), field)
    }
}

/// Faces of `cx` grouped by cardinality: `out[k]` holds the `k`-element faces.
fn faces_by_size(cx: &SimplicialComplex) -> Vec<Vec<Face>> {
    let mut out: Vec<Vec<Face>> = Vec::new();
    for f in cx.faces() {
        if out.len() <= f.len() {
            out.resize(f.len() + 1, Vec::new());
        }
        out[f.len()].push(f);
    }
    out
}

fn build_boundary(degree: i32, rows: &[Face], cols: &[Face]) -> BoundaryMatrix {
    let index: HashMap<Face, u32> = rows.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect();
    let columns = cols
        .iter()
        .map(|&face| {
            let mut col: Vec<(u32, i8)> = face
                .iter()
                .enumerate()
                .map(|(i, v)| (index[&face.without(v)], if i % 2 == 0 { 1 } else { -1 }))
                .collect();
            col.sort_unstable_by_key(|&(r, _)| r);
            col
        })
        .collect();
    BoundaryMatrix { degree, rows: rows.to_vec(), cols: cols.to_vec(), columns }
}

/// `∂_d` with vertices ordered by id. Degrees without faces give empty matrices.
pub fn boundary_matrix(cx: &SimplicialComplex, d: i32) -> BoundaryMatrix {
    let by_size = faces_by_size(cx);
    let get = |k: i32| -> &[Face] {
        if k < 0 {
            &[]
        } else {
            by_size.get(k as usize).map_or(&[][..], |v| v.as_slice())
        }
    };
    build_boundary(d, get(d), get(d + 1))
}

/// Reduced Betti numbers for degrees `-1..=dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    /// `betti[i + 1]` is the rank of `H̃_i`.
    betti: Vec<usize>,
}

impl HomologyProfile {
    pub fn betti(&self, degree: i32) -> usize {
        usize::try_from(degree + 1).ok().and_then(|i| self.betti.get(i)).copied().unwrap_or(0)
    }

    pub fn top_degree(&self) -> i32 {
        self.betti.len() as i32 - 2
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(i, &b)| if i % 2 == 1 { b as i64 } else { -(b as i64) }).sum()
    }

    pub fn as_map(&self) -> BTreeMap<i32, usize> {
        self.betti.iter().enumerate().map(|(i, &b)| (i as i32 - 1, b)).collect()
    }
}

impl Serialize for HomologyProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_map().serialize(s)
    }
}

pub fn reduced_homology(cx: &SimplicialComplex, field: Field) -> Result<HomologyProfile> {
    let dim = cx.dim()?;
    let len = (dim + 2) as usize;
    // a cone is acyclic
    if dim >= 0 && !cx.cone_points().is_empty() {
        return Ok(HomologyProfile { betti: vec![0; len] });
    }
    let by_size = faces_by_size(cx);
    // ranks[k] = rank of the map from k-element faces to (k-1)-element faces
    let mut ranks = vec![0usize; len + 1];
    for k in 1..len {
        ranks[k] = build_boundary(k as i32 - 1, &by_size[k - 1], &by_size[k]).rank(field);
    }
    let betti = (0..len).map(|k| by_size[k].len() - ranks[k] - ranks[k + 1]).collect();
    Ok(HomologyProfile { betti })
}

/// Rank of a sparse `±1` matrix given by columns.
pub fn rank(columns: &[Vec<(u32, i8)>], rows: usize, field: Field) -> usize {
    match field {
        Field::Prime(p) => rank_mod_p(columns, rows, p as u64),
        Field::Rationals => rank_integer::<i128>(columns, rows)
            .or_else(|| rank_integer::<BigInt>(columns, rows))
            .expect("arbitrary precision elimination cannot overflow"),
    }
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Column reduction keyed on the lowest nonzero row; pivot columns are
/// normalised to end in 1.
fn rank_mod_p(columns: &[Vec<(u32, i8)>], rows: usize, p: u64) -> usize {
    let mut pivots: Vec<Option<Vec<(u32, u64)>>> = vec![None; rows];
    let mut rank = 0;
    for col in columns {
        let mut v: Vec<(u32, u64)> =
            col.iter().map(|&(r, s)| (r, if s > 0 { 1 } else { p - 1 })).filter(|&(_, x)| x != 0).collect();
        while let Some(&(low, val)) = v.last() {
            match &pivots[low as usize] {
                Some(pc) => v = sub_scaled_mod(&v, pc, val, p),
                None => {
                    let inv = inverse_mod(val, p);
                    for e in v.iter_mut() {
                        e.1 = e.1 * inv % p;
                    }
                    pivots[low as usize] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `a - k·b` over `GF(p)`, both sorted by row.
fn sub_scaled_mod(a: &[(u32, u64)], b: &[(u32, u64)], k: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, (p - k * b[j].1 % p) % p));
            j += 1;
        } else {
            let x = (a[i].1 + p - k * b[j].1 % p) % p;
            if x != 0 {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|&(_, x)| x != 0);
    out
}

/// Fraction-free column reduction over the integers; `None` on overflow.
fn rank_integer<T>(columns: &[Vec<(u32, i8)>], rows: usize) -> Option<usize>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i8>,
{
    let mut pivots: Vec<Option<Vec<(u32, T)>>> = vec![None; rows];
    let mut rank = 0;
    for col in columns {
        let mut v: Vec<(u32, T)> = col.iter().map(|&(r, s)| (r, T::from(s))).collect();
        while let Some((low, val)) = v.last().cloned() {
            match &pivots[low as usize] {
                Some(pc) => {
                    let pv = pc.last().unwrap().1.clone();
                    v = combine(&v, &pv, pc, &val)?;
                    primitive(&mut v);
                }
                None => {
                    pivots[low as usize] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// `ka·a - kb·b` with checked arithmetic, dropping zeros.
fn combine<T>(a: &[(u32, T)], ka: &T, b: &[(u32, T)], kb: &T) -> Option<Vec<(u32, T)>>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (row, x) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            (a[i - 1].0, ka.checked_mul(&a[i - 1].1)?)
        } else if i == a.len() || b[j].0 < a[i].0 {
            j += 1;
            (b[j - 1].0, T::zero().checked_sub(&kb.checked_mul(&b[j - 1].1)?)?)
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, ka.checked_mul(&a[i - 1].1)?.checked_sub(&kb.checked_mul(&b[j - 1].1)?)?)
        };
        if !x.is_zero() {
            out.push((row, x));
        }
    }
    Some(out)
}

/// Divides out the content of a vector.
fn primitive<T: Clone + Integer + Signed>(v: &mut [(u32, T)]) {
    let g = v.iter().fold(T::zero(), |g, (_, x)| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for e in v.iter_mut() {
            e.1 = e.1.clone() / g.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn projective_plane() -> SimplicialComplex {
        SimplicialComplex::from_lists(&[
            &[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[1, 5, 6], &[1, 2, 6],
            &[2, 3, 5], &[3, 4, 6], &[2, 4, 5], &[3, 5, 6], &[2, 4, 6],
        ])
    }

    fn triangle_boundary() -> SimplicialComplex {
        SimplicialComplex::from_lists(&[&[0, 1], &[1, 2], &[0, 2]])
    }

    #[test]
    fn field_parsing() {
        assert_eq!("0".parse::<Field>(), Ok(Field::Rationals));
        assert_eq!("32003".parse::<Field>(), Ok(Field::GF32003));
        assert_eq!("4".parse::<Field>(), Err(Error::NotPrime(4)));
        assert_eq!("1".parse::<Field>(), Err(Error::NotPrime(1)));
        assert!("x".parse::<Field>().is_err());
    }

    #[test]
    fn boundary_examples() {
        let m = boundary_matrix(&triangle_boundary(), 1);
        assert_eq!((m.rows.len(), m.cols.len()), (3, 3));
        assert_eq!(m.rank(Field::Rationals), 2);
        assert_eq!(m.rank(Field::GF2), 2);

        let m = boundary_matrix(&SimplicialComplex::from_lists(&[&[0, 1]]), 0);
        assert_eq!(m.rows, vec![Face::EMPTY]);
        assert_eq!((m.entry(0, 0), m.entry(0, 1)), (1, 1));
    }

    #[test]
    fn boundary_signs_alternate() {
        let m = boundary_matrix(&SimplicialComplex::from_lists(&[&[0, 1, 2]]), 2);
        // ∂{0,1,2} = {1,2} - {0,2} + {0,1}
        let row = |f: &[u32]| m.rows.iter().position(|&r| r == Face::from_vertices(f.iter().copied()).unwrap()).unwrap();
        assert_eq!(m.entry(row(&[1, 2]), 0), 1);
        assert_eq!(m.entry(row(&[0, 2]), 0), -1);
        assert_eq!(m.entry(row(&[0, 1]), 0), 1);
    }

    #[test]
    fn circle_and_simplex() {
        for field in Field::DEFAULT_SET {
            let h = reduced_homology(&triangle_boundary(), field).unwrap();
            assert_eq!(h.as_map(), BTreeMap::from([(-1, 0), (0, 0), (1, 1)]));
            let s = SimplicialComplex::from_lists(&[&[0, 1, 2, 3]]);
            assert!(reduced_homology(&s, field).unwrap().is_acyclic());
        }
    }

    #[test]
    fn empty_face_complex_has_minus_one_homology() {
        let h = reduced_homology(&SimplicialComplex::empty_face(), Field::GF2).unwrap();
        assert_eq!(h.betti(-1), 1);
        assert_eq!(h.top_degree(), -1);
    }

    #[test]
    fn void_complex_is_rejected() {
        assert_eq!(reduced_homology(&SimplicialComplex::void(Face::EMPTY), Field::GF2), Err(Error::VoidComplex));
    }

    #[test]
    fn projective_plane_depends_on_field() {
        let rp2 = projective_plane();
        let gf2 = reduced_homology(&rp2, Field::GF2).unwrap();
        assert_eq!((gf2.betti(1), gf2.betti(2)), (1, 1));
        let q = reduced_homology(&rp2, Field::Rationals).unwrap();
        assert!(q.is_acyclic());
        assert!(reduced_homology(&rp2, Field::GF32003).unwrap().is_acyclic());
    }

    #[test]
    fn two_points() {
        let h = reduced_homology(&SimplicialComplex::from_lists(&[&[0], &[1]]), Field::Rationals).unwrap();
        assert_eq!(h.betti(0), 1);
    }

    #[test]
    fn big_integer_fallback_matches_prime_rank() {
        // dense-ish pseudo-random ±1 columns large enough to stress i128 growth
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        let rows = 40;
        let columns: Vec<Vec<(u32, i8)>> = (0..40)
            .map(|_| {
                (0..rows as u32)
                    .filter_map(|r| match next() % 3 {
                        0 => None,
                        1 => Some((r, 1)),
                        _ => Some((r, -1)),
                    })
                    .collect()
            })
            .collect();
        let big = rank_integer::<BigInt>(&columns, rows).unwrap();
        assert_eq!(big, rank(&columns, rows, Field::Rationals));
        assert_eq!(big, rank_mod_p(&columns, rows, 1_000_000_007));
    }
}
