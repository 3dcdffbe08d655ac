//! Property predicates: central symmetry, cs-neighborliness, stackedness,
//! facet conditions and edge-link censuses.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::complex::{binomial, Complex};
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};

/// Free antipodal involution: `-F` is a facet for every facet `F`, and no
/// face contains a pair `{v, -v}`.
pub fn is_cs(c: &Complex) -> bool {
    c.facets().iter().all(|f| !f.has_antipodal_pair()) && c.antipode() == *c
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct NeighborlinessReport {
    /// Largest `i` such that every antipode-free `i`-subset of the ground set is a face.
    pub max_i: u32,
    /// True when the ground set admits antipode-free `(max_i+1)`-subsets, one of which is missing.
    pub exact: bool,
    /// Lexicographically least missing antipode-free `(max_i+1)`-subset.
    pub witness: Option<Face>,
}

/// Neighborliness with respect to the ambient label set of `c`.
pub fn cs_neighborliness(c: &Complex) -> NeighborlinessReport {
    cs_neighborliness_wrt(c, c.ground())
}

/// Neighborliness with respect to `ground`, which must be closed under negation.
pub fn cs_neighborliness_wrt(c: &Complex, ground: Face) -> NeighborlinessReport {
    let ground = ground.symmetrized();
    let m = ground.len() as u64 / 2;
    let mut i = 0u32;
    loop {
        let next = i + 1;
        if u64::from(next) > m {
            return NeighborlinessReport { max_i: i, exact: false, witness: None };
        }
        let faces: HashSet<Face> = c
            .faces_of_size(next as usize)
            .into_iter()
            .filter(|f| f.is_subset(ground) && !f.has_antipodal_pair())
            .collect();
        if faces.len() as u64 != (1u64 << next) * binomial(m, u64::from(next)) {
            let witness = least_missing(&faces, ground, next as usize);
            return NeighborlinessReport { max_i: i, exact: true, witness };
        }
        i = next;
    }
}

fn least_missing(faces: &HashSet<Face>, ground: Face, size: usize) -> Option<Face> {
    let verts: Vec<Vertex> = ground.vertices().collect();
    fn rec(verts: &[Vertex], start: usize, acc: Face, size: usize, faces: &HashSet<Face>) -> Option<Face> {
        if acc.len() == size {
            return (!faces.contains(&acc)).then_some(acc);
        }
        for (idx, &v) in verts.iter().enumerate().skip(start) {
            if acc.contains(v.antipode()) {
                continue;
            }
            if let Some(found) = rec(verts, idx + 1, acc.with(v), size, faces) {
                return Some(found);
            }
        }
        None
    }
    rec(&verts, 0, Face::EMPTY, size, faces)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StackednessReport {
    /// Smallest `i` such that every interior face has dimension at least `d − i`.
    pub min_i: u32,
    pub exact: bool,
    /// An interior face of dimension `d − min_i`.
    pub witness_interior_face: Option<Face>,
}

pub fn stackedness(b: &Complex) -> Result<StackednessReport> {
    if !b.is_pure() {
        return Err(Error::NotPure);
    }
    let bd = b.boundary()?;
    if bd.is_void() {
        return Err(Error::ClosedComplex);
    }
    let d = b.dim() as usize;
    for size in 0..=d + 1 {
        let boundary_faces: HashSet<Face> = bd.faces_of_size(size).into_iter().collect();
        if let Some(f) = b.faces_of_size(size).into_iter().find(|f| !boundary_faces.contains(f)) {
            let min_i = (d + 1 - size) as u32;
            return Ok(StackednessReport { min_i, exact: true, witness_interior_face: Some(f) });
        }
    }
    unreachable!("facets of a pure complex with nonempty boundary are interior")
}

/// Necessary facet conditions for boundaries of the balls `B^{2k,i}_n`.
///
/// Writing `F = {p_1, …, p_{2k}}` with `|p_1| < ⋯ < |p_{2k}|`, checks
/// `|p_{2s}| − |p_{2s−1}| ≤ 2` for `s ≥ 2`, and, when `strict_first_pair` is
/// set, also `|p_2| − |p_1| = 1` unless `|p_1| = 1`.
pub fn facet_necessary_check(f: Face, strict_first_pair: bool) -> Result<bool> {
    if f.is_empty() || f.len() % 2 == 1 {
        return Err(Error::OddCardinality(f));
    }
    if f.has_antipodal_pair() {
        return Ok(false);
    }
    let p: Vec<i64> = f.vertices().map(|v| i64::from(v.abs())).collect();
    let pairs_ok = p.chunks(2).skip(1).all(|w| w[1] - w[0] <= 2);
    let first_ok = !strict_first_pair || p[0] == 1 || p[1] - p[0] == 1;
    Ok(pairs_ok && first_ok)
}

/// The families `S(2k,n)_m` for `m = 1, …, k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SWitnessFamily {
    pub k: u32,
    pub n: u32,
    /// `by_m[m-1]` holds `S(2k,n)_m`, sorted canonically.
    pub by_m: Vec<Vec<Face>>,
}

impl SWitnessFamily {
    pub fn level(&self, m: u32) -> &[Face] {
        &self.by_m[(m - 1) as usize]
    }

    /// Union over all `m`, sorted and deduplicated.
    pub fn members(&self) -> Vec<Face> {
        let mut all: Vec<Face> = self.by_m.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

pub fn enum_s(k: u32, n: u32) -> Result<SWitnessFamily> {
    if k < 1 || n < 2 * k {
        return Err(Error::InvalidParameters(format!("S(2k,n) needs k ≥ 1 and n ≥ 2k, got k={k}, n={n}")));
    }
    let by_m = (1..=k).map(|m| enum_s_level(k, n, m)).collect();
    Ok(SWitnessFamily { k, n, by_m })
}

fn enum_s_level(k: u32, n: u32, m: u32) -> Vec<Face> {
    // Absolute-value pairs first, then all 2^k sign patterns.
    let fixed: Vec<(u32, u32)> = (m + 1..=k).map(|i| (n - 2 * (k - i) - 1, n - 2 * (k - i))).collect();
    let cap = fixed.first().map_or(n + 1, |p| p.0);
    let mut shapes: Vec<Vec<(u32, u32)>> = Vec::new();
    fn rec(m: u32, cap: u32, next_min: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if acc.len() as u32 == m {
            out.push(acc.clone());
            return;
        }
        let gap = if acc.is_empty() { 1 } else { 2 };
        let mut lo = next_min;
        while lo + gap < cap {
            acc.push((lo, lo + gap));
            rec(m, cap, lo + gap + 1, acc, out);
            acc.pop();
            lo += 1;
        }
    }
    rec(m, cap, 1, &mut Vec::new(), &mut shapes);
    let mut out = Vec::new();
    for mut shape in shapes {
        shape.extend(fixed.iter().copied());
        for signs in 0u32..1 << k {
            let labels: Vec<i32> = shape
                .iter()
                .enumerate()
                .flat_map(|(idx, &(a, b))| {
                    let s = if signs >> idx & 1 == 0 { 1 } else { -1 };
                    [s * a as i32, s * b as i32]
                })
                .collect();
            out.push(Face::from_labels(&labels));
        }
    }
    out.sort_unstable();
    out
}

/// Explicit facet list of `Δ^3_n`, family by family, with antipodes.
pub fn delta3_facet_formula(n: u32) -> Result<Vec<Face>> {
    if n < 4 {
        return Err(Error::InvalidParameters(format!("Δ^3_n needs n ≥ 4, got {n}")));
    }
    let n = n as i32;
    let mut half: Vec<Face> = Vec::new();
    let mut push = |l: &[i32]| half.push(Face::from_labels(l));
    for i in 1..=n - 3 {
        push(&[i, i + 1, n - 1, n]);
        push(&[-i, -i - 1, n - 1, n]);
    }
    push(&[1, -n + 2, n - 1, n]);
    push(&[1, -n + 2, -n + 1, n]);
    push(&[1, -n + 2, -n + 1, -n]);
    for l in 3..=n - 2 {
        for i in 1..l - 1 {
            push(&[i, i + 1, l, l + 2]);
            push(&[-i, -i - 1, l, l + 2]);
        }
        push(&[1, -l + 1, l, l + 2]);
    }
    for l in 2..=n - 3 {
        push(&[l, l + 1, l + 2, -l - 3]);
        push(&[-1, l, l + 2, -l - 3]);
    }
    push(&[1, 2, -3, 4]);
    push(&[1, 2, 3, -4]);
    push(&[1, -2, 3, -4]);
    let mut all: Vec<Face> = half.iter().flat_map(|f| [*f, f.antipode()]).collect();
    all.sort_unstable();
    all.dedup();
    Ok(all)
}

/// Number of link vertices for every edge of `c`.
pub fn edge_link_census(c: &Complex) -> BTreeMap<Face, usize> {
    let mut acc: HashMap<Face, Face> = HashMap::new();
    for f in c.facets() {
        for e in f.subsets_of_size(2) {
            let slot = acc.entry(e).or_insert(Face::EMPTY);
            *slot = slot.union(f.difference(e));
        }
    }
    acc.into_iter().map(|(e, l)| (e, l.len())).collect()
}

/// Edges whose census value is at least `threshold`.
pub fn edges_with_link_at_least(census: &BTreeMap<Face, usize>, threshold: usize) -> Vec<Face> {
    census.iter().filter(|(_, &v)| v >= threshold).map(|(e, _)| *e).collect()
}

/// Edges whose links are cs and cs-`i`-neighborly with respect to the ground
/// set minus `±e`.
pub fn edges_with_neighborly_links(c: &Complex, i: u32) -> Vec<Face> {
    let ground = c.ground();
    let edges = c.faces_of_size(2);
    let mut out: Vec<Face> = edges
        .par_iter()
        .filter(|e| {
            let link = c.link(**e).expect("edge of c");
            is_cs(&link) && cs_neighborliness_wrt(&link, ground.difference(e.symmetrized())).max_i >= i
        })
        .copied()
        .collect();
    out.sort_unstable();
    out
}

/// Every facet of `a` is a face of `b`.
pub fn is_subcomplex(a: &Complex, b: &Complex) -> bool {
    a.is_subcomplex_of(b)
}

/// True when `a` and `b` have no common facet.
pub fn facet_disjoint(a: &Complex, b: &Complex) -> bool {
    a.facets().iter().all(|f| !b.has_facet(*f))
}
