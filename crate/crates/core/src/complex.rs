//! Simplicial complexes stored as antichains of facets.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::face::{Face, Vertex, MAX_LABEL};

/// Which signed label set a complex lives on.
///
/// `V` means `{±1, …, ±n}`; `W` means `{±3, …, ±(n+2)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum LabelSpace {
    V,
    W,
}

impl LabelSpace {
    pub fn min_abs(self) -> u32 {
        match self {
            LabelSpace::V => 1,
            LabelSpace::W => 3,
        }
    }

    pub fn max_abs(self, n: u32) -> u32 {
        match self {
            LabelSpace::V => n,
            LabelSpace::W => n + 2,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            LabelSpace::V => "V",
            LabelSpace::W => "W",
        }
    }
}

/// A finite simplicial complex.
///
/// The complex with no faces at all (void) and the complex whose only face is
/// the empty set are different values: the former has no facets, the latter
/// has the single facet `∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    ambient_n: u32,
    space: LabelSpace,
    facets: Vec<Face>,
}

impl Complex {
    /// Builds the complex generated by `faces`, keeping only maximal ones.
    pub fn new(ambient_n: u32, space: LabelSpace, faces: impl IntoIterator<Item = Face>) -> Result<Self> {
        let ground = ground_face(ambient_n, space)?;
        let faces: Vec<Face> = faces.into_iter().collect();
        for f in &faces {
            if !f.is_subset(ground) {
                let bad = f.difference(ground).min_vertex().expect("nonempty");
                return Err(Error::LabelOutOfRange {
                    label: bad.label(),
                    bound: space.max_abs(ambient_n),
                });
            }
        }
        Ok(Self::generated(ambient_n, space, faces))
    }

    /// Like [`Complex::new`] for faces already known to lie in the ground set.
    pub(crate) fn generated(ambient_n: u32, space: LabelSpace, faces: impl IntoIterator<Item = Face>) -> Self {
        let mut faces: Vec<Face> = faces.into_iter().collect();
        faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        faces.dedup();
        let pure = faces.first().is_none_or(|f| faces.iter().all(|g| g.len() == f.len()));
        let mut facets: Vec<Face> = if pure {
            faces
        } else {
            let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
            for f in faces {
                if !kept.iter().any(|g| f.is_subset(*g)) {
                    kept.push(f);
                }
            }
            kept
        };
        facets.sort_unstable();
        Self { ambient_n, space, facets }
    }

    /// The complex with no faces.
    pub fn void(ambient_n: u32, space: LabelSpace) -> Self {
        Self { ambient_n, space, facets: Vec::new() }
    }

    /// The complex `{∅}`, the identity for joins.
    pub fn empty_face(ambient_n: u32, space: LabelSpace) -> Self {
        Self { ambient_n, space, facets: vec![Face::EMPTY] }
    }

    /// The full simplex on `face`.
    pub fn simplex(ambient_n: u32, face: Face) -> Result<Self> {
        Self::new(ambient_n, LabelSpace::V, [face])
    }

    /// The path through `labels` in order, as a 1-dimensional complex.
    pub fn path(ambient_n: u32, labels: &[i32]) -> Result<Self> {
        if labels.len() == 1 {
            return Self::new(ambient_n, LabelSpace::V, [Face::try_from_labels(labels)?]);
        }
        let edges = labels
            .windows(2)
            .map(Face::try_from_labels)
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient_n, LabelSpace::V, edges)
    }

    /// The closed cycle through `labels`, returning to the first label.
    pub fn cycle(ambient_n: u32, labels: &[i32]) -> Result<Self> {
        let mut closed = labels.to_vec();
        if let Some(&first) = labels.first() {
            closed.push(first);
        }
        Self::path(ambient_n, &closed)
    }

    pub fn ambient_n(&self) -> u32 {
        self.ambient_n
    }

    pub fn space(&self) -> LabelSpace {
        self.space
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Largest facet dimension; −1 for `{∅}` and for the void complex.
    pub fn dim(&self) -> i32 {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        match self.facets.first() {
            None => true,
            Some(f) => self.facets.iter().all(|g| g.len() == f.len()),
        }
    }

    /// All labels of the ambient label space.
    pub fn ground(&self) -> Face {
        ground_face(self.ambient_n, self.space).expect("validated on construction")
    }

    /// Union of all facets.
    pub fn vertex_set(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn has_face(&self, f: Face) -> bool {
        self.facets.iter().any(|g| f.is_subset(*g))
    }

    pub fn has_facet(&self, f: Face) -> bool {
        self.facets.binary_search(&f).is_ok()
    }

    fn with_facets(&self, facets: impl IntoIterator<Item = Face>) -> Self {
        Self::generated(self.ambient_n, self.space, facets)
    }

    /// Same facets on a different ambient label set.
    pub fn with_ambient(&self, ambient_n: u32, space: LabelSpace) -> Result<Self> {
        Self::new(ambient_n, space, self.facets.iter().copied())
    }

    pub fn antipode(&self) -> Self {
        let mut facets: Vec<Face> = self.facets.iter().map(|f| f.antipode()).collect();
        facets.sort_unstable();
        Self { ambient_n: self.ambient_n, space: self.space, facets }
    }

    pub fn link(&self, f: Face) -> Result<Self> {
        let facets: Vec<Face> = self
            .facets
            .iter()
            .filter(|g| f.is_subset(**g))
            .map(|g| g.difference(f))
            .collect();
        if facets.is_empty() {
            return Err(Error::FaceNotPresent(f));
        }
        Ok(self.with_facets(facets))
    }

    pub fn star(&self, f: Face) -> Result<Self> {
        let facets: Vec<Face> = self.facets.iter().copied().filter(|g| f.is_subset(*g)).collect();
        if facets.is_empty() {
            return Err(Error::FaceNotPresent(f));
        }
        Ok(self.with_facets(facets))
    }

    /// Join with another complex on a disjoint vertex set.
    ///
    /// The result lives on the larger of the two label spaces; mixing `V` and
    /// `W` yields a `V` complex.
    pub fn join(&self, other: &Complex) -> Result<Self> {
        if !self.vertex_set().is_disjoint(other.vertex_set()) {
            return Err(Error::OverlappingVertexSets);
        }
        let (n, space) = if self.space == other.space {
            (self.ambient_n.max(other.ambient_n), self.space)
        } else {
            let bound = self.space.max_abs(self.ambient_n).max(other.space.max_abs(other.ambient_n));
            (bound, LabelSpace::V)
        };
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.union(*b));
            }
        }
        Ok(Self::generated(n, space, facets))
    }

    /// Join with the simplex on `f`. Grows the ambient bound if needed.
    pub fn join_face(&self, f: Face) -> Result<Self> {
        if !self.vertex_set().is_disjoint(f) {
            return Err(Error::OverlappingVertexSets);
        }
        let bound = self.space.max_abs(self.ambient_n).max(f.max_abs());
        let n = match self.space {
            LabelSpace::V => bound,
            LabelSpace::W => bound.saturating_sub(2).max(self.ambient_n),
        };
        Ok(Self::generated(n, self.space, self.facets.iter().map(|g| g.union(f))))
    }

    /// Cone with apex `v`.
    pub fn cone(&self, v: Vertex) -> Result<Self> {
        self.join_face(Face::singleton(v))
    }

    pub fn skeleton(&self, k: i32) -> Self {
        if k < -1 {
            return Self::void(self.ambient_n, self.space);
        }
        let size = (k + 1) as usize;
        let mut faces = Vec::new();
        for f in &self.facets {
            if f.len() <= size {
                faces.push(*f);
            } else {
                faces.extend(f.subsets_of_size(size));
            }
        }
        self.with_facets(faces)
    }

    /// Induced subcomplex on the vertex set `w`.
    pub fn restriction(&self, w: Face) -> Self {
        if self.is_void() {
            return self.clone();
        }
        self.with_facets(self.facets.iter().map(|f| f.intersection(w)))
    }

    /// Complex generated by the facets of `self` that are not facets of `other`.
    pub fn difference(&self, other: &Complex) -> Result<Self> {
        if !self.is_pure() || !other.is_pure() {
            return Err(Error::NotPure);
        }
        if !self.is_void() && !other.is_void() && self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(self.with_facets(self.facets.iter().copied().filter(|f| !other.has_facet(*f))))
    }

    /// Complex generated by the facets of both.
    pub fn union(&self, other: &Complex) -> Self {
        let (n, space) = if self.space == other.space {
            (self.ambient_n.max(other.ambient_n), self.space)
        } else {
            let bound = self.space.max_abs(self.ambient_n).max(other.space.max_abs(other.ambient_n));
            (bound, LabelSpace::V)
        };
        Self::generated(n, space, self.facets.iter().chain(other.facets.iter()).copied())
    }

    /// True when every facet of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.facets.iter().all(|f| other.has_face(*f))
    }

    /// Applies a vertex relabeling to every facet.
    pub fn relabel<F: FnMut(Vertex) -> Vertex>(&self, ambient_n: u32, space: LabelSpace, mut f: F) -> Result<Self> {
        Self::new(ambient_n, space, self.facets.iter().map(|g| g.map(&mut f)).collect::<Vec<_>>())
    }

    /// All faces of cardinality `size`, sorted canonically.
    pub fn faces_of_size(&self, size: usize) -> Vec<Face> {
        let mut set: HashSet<Face> = HashSet::new();
        for f in &self.facets {
            if f.len() >= size {
                set.extend(f.subsets_of_size(size));
            }
        }
        let mut out: Vec<Face> = set.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// All faces of dimension `k`, sorted canonically.
    pub fn faces_of_dim(&self, k: i32) -> Vec<Face> {
        if k < -1 {
            return Vec::new();
        }
        if self.is_void() {
            return Vec::new();
        }
        self.faces_of_size((k + 1) as usize)
    }

    pub fn f_vector(&self) -> Vec<u64> {
        if self.is_void() {
            return vec![0];
        }
        let mut all: HashSet<Face> = HashSet::new();
        for f in &self.facets {
            for s in f.all_subsets() {
                all.insert(s);
            }
        }
        let d = self.dim();
        let mut counts = vec![0u64; (d + 2) as usize];
        for s in all {
            counts[s.len()] += 1;
        }
        counts
    }

    pub fn fh_vectors(&self) -> FHVectors {
        FHVectors::from_f(self.f_vector())
    }

    /// Ridge → number of facets containing it.
    pub fn ridge_counts(&self) -> HashMap<Face, u32> {
        let mut counts: HashMap<Face, u32> = HashMap::new();
        for f in &self.facets {
            for r in f.ridges() {
                *counts.entry(r).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Complex generated by the ridges that lie in exactly one facet.
    pub fn boundary(&self) -> Result<Self> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let counts = self.ridge_counts();
        if let Some((r, _)) = counts.iter().find(|(_, c)| **c > 2) {
            return Err(Error::RidgeInThreeFacets(*r));
        }
        Ok(self.with_facets(counts.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r)))
    }

    /// Pure complex in which every ridge lies in exactly two facets.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        !self.is_void() && self.dim() >= 0 && self.is_pure() && self.ridge_counts().values().all(|&c| c == 2)
    }

    pub fn facet_ridge_graph(&self) -> Result<FacetGraph> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let mut by_ridge: HashMap<Face, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for r in f.ridges() {
                by_ridge.entry(r).or_default().push(i);
            }
        }
        let mut adj = vec![Vec::new(); self.facets.len()];
        for members in by_ridge.values() {
            for (x, &a) in members.iter().enumerate() {
                for &b in &members[x + 1..] {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(FacetGraph { nodes: self.facets.clone(), adj })
    }

    /// Number of connected components of the underlying space.
    pub fn components(&self) -> usize {
        let verts: Vec<Vertex> = self.vertex_set().vertices().collect();
        let index: HashMap<Vertex, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in &self.facets {
            let mut it = f.vertices();
            if let Some(first) = it.next() {
                let a = index[&first];
                for v in it {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, index[&v]));
                    parent[ra] = rb;
                }
            }
        }
        (0..verts.len()).filter(|&i| find(&mut parent, i) == i).count()
    }
}

fn ground_face(n: u32, space: LabelSpace) -> Result<Face> {
    let hi = space.max_abs(n);
    if hi > MAX_LABEL {
        return Err(Error::LabelOutOfRange { label: hi as i32, bound: MAX_LABEL });
    }
    Ok(Face::abs_range(space.min_abs(), hi))
}

/// Facet-ridge adjacency of a pure complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetGraph {
    pub nodes: Vec<Face>,
    pub adj: Vec<Vec<usize>>,
}

impl FacetGraph {
    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.nodes.len()
    }

    pub fn is_tree(&self) -> bool {
        !self.nodes.is_empty() && self.is_connected() && self.num_edges() + 1 == self.nodes.len()
    }
}

/// Face numbers `f_{-1}, …, f_d` together with `h_0, …, h_{d+1}`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FHVectors {
    pub f: Vec<u64>,
    pub h: Vec<i64>,
}

impl FHVectors {
    pub fn from_f(f: Vec<u64>) -> Self {
        // h_j = Σ_{i ≤ j} (−1)^{j−i} C(d+1−i, j−i) f_{i−1}
        let top = f.len() - 1;
        let h = (0..=top)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let term = binomial((top - i) as u64, (j - i) as u64) as i64 * f[i] as i64;
                        if (j - i) % 2 == 0 {
                            term
                        } else {
                            -term
                        }
                    })
                    .sum()
            })
            .collect();
        Self { f, h }
    }

    /// Dimension `d` such that `f` runs from `f_{-1}` to `f_d`.
    pub fn dim(&self) -> i32 {
        self.f.len() as i32 - 2
    }

    pub fn is_palindromic_h(&self) -> bool {
        self.h.iter().eq(self.h.iter().rev())
    }

    /// Alternating sum `Σ_{i≥0} (−1)^i f_i`.
    pub fn euler(&self) -> i64 {
        self.f.iter().skip(1).enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(l: &[i32]) -> Face {
        Face::from_labels(l)
    }

    fn cross(n: u32) -> Complex {
        let mut c = Complex::empty_face(n, LabelSpace::V);
        for i in 1..=n as i32 {
            let pts = Complex::new(n, LabelSpace::V, [f(&[i]), f(&[-i])]).unwrap();
            c = c.join(&pts).unwrap();
        }
        c
    }

    #[test]
    fn void_and_empty_face_differ() {
        let v = Complex::void(3, LabelSpace::V);
        let e = Complex::empty_face(3, LabelSpace::V);
        assert_ne!(v, e);
        assert_eq!(v.f_vector(), vec![0]);
        assert_eq!(e.f_vector(), vec![1]);
        let tri = Complex::simplex(3, f(&[1, 2, 3])).unwrap();
        assert_eq!(tri.join(&e).unwrap(), tri);
        assert!(tri.join(&v).unwrap().is_void());
    }

    #[test]
    fn generated_keeps_maximal_faces() {
        let c = Complex::new(3, LabelSpace::V, [f(&[1]), f(&[1, 2]), f(&[2, 3]), f(&[1, 2])]).unwrap();
        assert_eq!(c.facets(), &[f(&[1, 2]), f(&[2, 3])]);
        assert!(Complex::new(2, LabelSpace::V, [f(&[3])]).is_err());
    }

    #[test]
    fn octahedron_basics() {
        let c = cross(3);
        assert_eq!(c.num_facets(), 8);
        assert!(c.has_face(f(&[1, -2])));
        assert!(!c.has_face(f(&[1, -1])));
        assert_eq!(c.skeleton(0).num_facets(), 6);
        assert_eq!(c.skeleton(2), c);
        let lk = c.link(f(&[1])).unwrap();
        assert_eq!(lk.num_facets(), 4);
        assert_eq!(lk.vertex_set(), Face::abs_range(2, 3));
        assert_eq!(c.link(Face::EMPTY).unwrap(), c);
        assert_eq!(c.star(Face::EMPTY).unwrap(), c);
        assert!(matches!(c.link(f(&[1, -1])), Err(Error::FaceNotPresent(_))));
        assert!(c.is_closed_pseudomanifold());
        assert!(c.boundary().unwrap().is_void());
    }

    #[test]
    fn star_in_square() {
        let sq = cross(2);
        let st = sq.star(f(&[1])).unwrap();
        assert_eq!(st.facets(), &[f(&[1, 2]), f(&[1, -2])]);
        assert_eq!(sq.facet_ridge_graph().unwrap().num_edges(), 4);
    }

    #[test]
    fn cone_over_triangle_boundary() {
        let tri = Complex::simplex(4, f(&[1, 2, 3])).unwrap();
        let bd = tri.boundary().unwrap();
        assert_eq!(bd.facets(), &[f(&[1, 2]), f(&[1, 3]), f(&[2, 3])]);
        let cone = bd.cone(Vertex::new(4).unwrap()).unwrap();
        assert_eq!(cone.num_facets(), 3);
        assert!(cone.has_facet(f(&[1, 2, 4])));
    }

    #[test]
    fn join_rejects_overlap() {
        let a = Complex::simplex(3, f(&[1, 2])).unwrap();
        let b = Complex::simplex(3, f(&[2, 3])).unwrap();
        assert!(matches!(a.join(&b), Err(Error::OverlappingVertexSets)));
    }

    #[test]
    fn restriction_and_difference() {
        let sq = cross(2);
        assert_eq!(sq.restriction(f(&[1, 2])).facets(), &[f(&[1, 2])]);
        assert_eq!(sq.restriction(Face::EMPTY), Complex::empty_face(2, LabelSpace::V));
        assert!(sq.difference(&sq).unwrap().is_void());
        assert_eq!(sq.difference(&Complex::void(2, LabelSpace::V)).unwrap(), sq);
        let pt = Complex::simplex(2, f(&[1])).unwrap();
        assert!(matches!(sq.difference(&pt), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn simplex_vectors() {
        let s = Complex::simplex(4, f(&[1, 2, 3, 4])).unwrap();
        let fh = s.fh_vectors();
        assert_eq!(fh.f, vec![1, 4, 6, 4, 1]);
        assert_eq!(fh.h, vec![1, 0, 0, 0, 0]);
        let c = cross(4).fh_vectors();
        assert_eq!(c.f, vec![1, 8, 24, 32, 16]);
        assert_eq!(c.h, vec![1, 4, 6, 4, 1]);
        assert_eq!(c.euler(), 0);
    }

    #[test]
    fn boundary_rejects_branching() {
        let c = Complex::new(4, LabelSpace::V, [f(&[1, 2, 3]), f(&[1, 2, 4]), f(&[1, 2, -3])]).unwrap();
        assert!(matches!(c.boundary(), Err(Error::RidgeInThreeFacets(_))));
        let mixed = Complex::new(4, LabelSpace::V, [f(&[1, 2, 3]), f(&[4])]).unwrap();
        assert!(matches!(mixed.boundary(), Err(Error::NotPure)));
    }

    #[test]
    fn single_facet_graph() {
        let g = Complex::simplex(3, f(&[1, 2, 3])).unwrap().facet_ridge_graph().unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert!(g.adj[0].is_empty());
        assert!(g.is_tree());
    }

    #[test]
    fn components_count() {
        let c = Complex::new(4, LabelSpace::V, [f(&[1, 2]), f(&[3]), f(&[-4, 4])]).unwrap();
        assert_eq!(c.components(), 3);
    }
}
