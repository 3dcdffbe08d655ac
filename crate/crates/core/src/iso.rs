//! Automorphisms and isomorphism testing by invariant-pruned backtracking.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::props::{cs_neighborliness, edge_link_census, is_cs};

/// Environment variable holding the search node limit.
pub const BUDGET_ENV: &str = "CSSPHERE_ISO_BUDGET";
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Node limit from [`BUDGET_ENV`], falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// A bijection between the vertex sets of two complexes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexMap(BTreeMap<Vertex, Vertex>);

impl VertexMap {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let map: BTreeMap<Vertex, Vertex> = pairs.into_iter().collect();
        let image: HashSet<Vertex> = map.values().copied().collect();
        if image.len() != map.len() {
            return Err(Error::InvalidParameters("vertex map is not injective".into()));
        }
        Ok(Self(map))
    }

    pub fn identity(vertices: Face) -> Self {
        Self(vertices.vertices().map(|v| (v, v)).collect())
    }

    /// The involution `v ↦ −v` on a symmetric vertex set.
    pub fn antipodal(vertices: Face) -> Self {
        Self(vertices.vertices().map(|v| (v, v.antipode())).collect())
    }

    pub fn get(&self, v: Vertex) -> Option<Vertex> {
        self.0.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.0.iter().map(|(a, b)| (*a, *b))
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().map(|(a, b)| (*b, *a)).collect())
    }

    /// `self` followed by `next`; vertices outside `next`'s domain drop out.
    pub fn then(&self, next: &VertexMap) -> Self {
        Self(self.0.iter().filter_map(|(a, b)| next.get(*b).map(|c| (*a, c))).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|(a, b)| a == b)
    }

    pub fn is_antipodal(&self) -> bool {
        self.0.iter().all(|(a, b)| *b == a.antipode())
    }

    /// Image of `f`, or `None` if some vertex lies outside the domain.
    pub fn apply_face(&self, f: Face) -> Option<Face> {
        f.vertices().map(|v| self.get(v)).collect::<Option<Vec<_>>>().map(Face::from_vertices)
    }

    /// Sorted image of every facet of `c`.
    pub fn apply_facets(&self, c: &Complex) -> Option<Vec<Face>> {
        let mut out = c.facets().iter().map(|f| self.apply_face(*f)).collect::<Option<Vec<_>>>()?;
        out.sort_unstable();
        Some(out)
    }

    /// True when the map carries the facets of `a` exactly onto those of `b`.
    pub fn is_isomorphism(&self, a: &Complex, b: &Complex) -> bool {
        self.len() == a.vertex_set().len()
            && self.apply_facets(a).is_some_and(|img| img.as_slice() == b.facets())
    }

    /// Two-column table `source target`, one pair per line.
    pub fn table(&self) -> String {
        self.0.iter().map(|(a, b)| format!("{} {}\n", a.label(), b.label())).collect()
    }
}

impl serde::Serialize for VertexMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(i32, i32)> = self.iter().map(|(a, b)| (a.label(), b.label())).collect();
        pairs.serialize(s)
    }
}

/// Per-vertex isomorphism invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Fingerprint {
    pub degree: usize,
    /// Sorted vertex counts of the links of incident edges.
    pub edge_links: Vec<usize>,
    pub link_f: Vec<u64>,
}

pub fn vertex_fingerprints(c: &Complex) -> BTreeMap<Vertex, Fingerprint> {
    let census = edge_link_census(c);
    let verts: Vec<Vertex> = c.vertex_set().vertices().collect();
    verts
        .par_iter()
        .map(|&v| {
            let link = c.link(Face::singleton(v)).expect("vertex of c");
            let mut edge_links: Vec<usize> =
                census.iter().filter(|(e, _)| e.contains(v)).map(|(_, &k)| k).collect();
            edge_links.sort_unstable();
            (v, Fingerprint { degree: link.vertex_set().len(), edge_links, link_f: link.f_vector() })
        })
        .collect()
}

/// Sorted multiset of fingerprints.
pub fn fingerprint_multiset(c: &Complex) -> Vec<Fingerprint> {
    let mut all: Vec<Fingerprint> = vertex_fingerprints(c).into_values().collect();
    all.sort_unstable();
    all
}

/// Sorted multiset of edge-link vertex counts.
pub fn census_multiset(c: &Complex) -> Vec<usize> {
    let mut all: Vec<usize> = edge_link_census(c).into_values().collect();
    all.sort_unstable();
    all
}

/// True for cs complexes in which `−v` is the only non-neighbor of `v`.
pub fn admits_antipodal_pruning(c: &Complex) -> bool {
    is_cs(c) && cs_neighborliness(c).max_i >= 2
}

struct Prepared {
    verts: Vec<Vertex>,
    local: [usize; 64],
    faces: HashSet<Face>,
    facets: HashSet<Face>,
    incident: Vec<Vec<Face>>,
    colour: Vec<u32>,
}

impl Prepared {
    fn new(c: &Complex) -> Self {
        let verts: Vec<Vertex> = c.vertex_set().vertices().collect();
        let mut local = [usize::MAX; 64];
        for (i, v) in verts.iter().enumerate() {
            local[v.bit() as usize] = i;
        }
        let mut incident = vec![Vec::new(); verts.len()];
        for f in c.facets() {
            for v in f.vertices() {
                incident[local[v.bit() as usize]].push(*f);
            }
        }
        Self {
            verts,
            local,
            faces: c.facets().iter().flat_map(|f| f.all_subsets()).collect(),
            facets: c.facets().iter().copied().collect(),
            incident,
            colour: Vec::new(),
        }
    }

    fn idx(&self, v: Vertex) -> usize {
        self.local[v.bit() as usize]
    }

    fn signature(&self, i: usize) -> (u32, Vec<Vec<u32>>) {
        let mut around: Vec<Vec<u32>> = self.incident[i]
            .iter()
            .map(|f| {
                let mut cs: Vec<u32> = f.vertices().map(|w| self.colour[self.idx(w)]).collect();
                cs.sort_unstable();
                cs
            })
            .collect();
        around.sort_unstable();
        (self.colour[i], around)
    }
}

/// Joint colour refinement seeded by fingerprints; colours are comparable
/// across the two complexes.
fn refine(a: &mut Prepared, b: &mut Prepared, fa: &BTreeMap<Vertex, Fingerprint>, fb: &BTreeMap<Vertex, Fingerprint>) {
    let seed: BTreeMap<&Fingerprint, u32> = {
        let all: std::collections::BTreeSet<&Fingerprint> = fa.values().chain(fb.values()).collect();
        all.into_iter().enumerate().map(|(i, f)| (f, i as u32)).collect()
    };
    a.colour = a.verts.iter().map(|v| seed[&fa[v]]).collect();
    b.colour = b.verts.iter().map(|v| seed[&fb[v]]).collect();
    let mut classes = seed.len();
    loop {
        let sa: Vec<_> = (0..a.verts.len()).map(|i| a.signature(i)).collect();
        let sb: Vec<_> = (0..b.verts.len()).map(|i| b.signature(i)).collect();
        let ids: BTreeMap<&(u32, Vec<Vec<u32>>), u32> = {
            let all: std::collections::BTreeSet<_> = sa.iter().chain(sb.iter()).collect();
            all.into_iter().enumerate().map(|(i, s)| (s, i as u32)).collect()
        };
        let next_a: Vec<u32> = sa.iter().map(|s| ids[s]).collect();
        let next_b: Vec<u32> = sb.iter().map(|s| ids[s]).collect();
        let grown = ids.len() > classes;
        classes = ids.len();
        a.colour = next_a;
        b.colour = next_b;
        if !grown {
            break;
        }
    }
}

fn colour_histogram(p: &Prepared) -> Vec<u32> {
    let mut h = p.colour.clone();
    h.sort_unstable();
    h
}

struct Search<'a> {
    a: &'a Prepared,
    b: &'a Prepared,
    order: Vec<usize>,
    antipodal: bool,
    forward: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
    find_all: bool,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn image(&self, f: Face, domain: &[bool]) -> Face {
        let mut bits = 0u64;
        for v in f.vertices() {
            let i = self.a.idx(v);
            if domain[i] {
                bits |= Face::singleton(self.b.verts[self.forward[i]]).bits();
            }
        }
        Face::from_bits(bits)
    }

    fn consistent(&self, i: usize, j: usize, mapped: &[bool]) -> bool {
        for f in &self.a.incident[i] {
            let img = self.image(*f, mapped);
            if !self.b.faces.contains(&img) {
                return false;
            }
            if mapped_all(f, self.a, mapped) && !self.b.facets.contains(&img) {
                return false;
            }
        }
        // preimage side: faces of b around j restricted to the range must be faces of a
        let mut back = vec![usize::MAX; self.b.verts.len()];
        for (x, &m) in mapped.iter().enumerate() {
            if m {
                back[self.forward[x]] = x;
            }
        }
        for g in &self.b.incident[j] {
            let mut bits = 0u64;
            for w in g.vertices() {
                let y = back[self.b.idx(w)];
                if y != usize::MAX {
                    bits |= Face::singleton(self.a.verts[y]).bits();
                }
            }
            if !self.a.faces.contains(&Face::from_bits(bits)) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, depth: usize, mapped: &mut Vec<bool>) -> Result<bool> {
        if depth == self.order.len() {
            self.found.push(self.forward.clone());
            return Ok(!self.find_all);
        }
        let i = self.order[depth];
        let candidates: Vec<usize> = match self.forced(i, mapped) {
            Some(j) => vec![j],
            None => (0..self.b.verts.len()).filter(|&j| !self.used[j] && self.b.colour[j] == self.a.colour[i]).collect(),
        };
        for j in candidates {
            if self.used[j] || self.b.colour[j] != self.a.colour[i] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded(self.budget));
            }
            self.forward[i] = j;
            mapped[i] = true;
            self.used[j] = true;
            if self.consistent(i, j, mapped) && self.run(depth + 1, mapped)? {
                return Ok(true);
            }
            mapped[i] = false;
            self.used[j] = false;
        }
        Ok(false)
    }

    fn forced(&self, i: usize, mapped: &[bool]) -> Option<usize> {
        if !self.antipodal {
            return None;
        }
        let anti = self.a.idx(self.a.verts[i].antipode());
        mapped[anti].then(|| self.b.idx(self.b.verts[self.forward[anti]].antipode()))
    }
}

fn mapped_all(f: &Face, p: &Prepared, mapped: &[bool]) -> bool {
    f.vertices().all(|v| mapped[p.idx(v)])
}

/// Static search order: rarest colour first, then the vertex sharing the
/// most facets with those already placed, antipodes right after their pair.
fn search_order(a: &Prepared, antipodal: bool) -> Vec<usize> {
    let n = a.verts.len();
    let mut size: BTreeMap<u32, usize> = BTreeMap::new();
    for c in &a.colour {
        *size.entry(*c).or_default() += 1;
    }
    let mut placed = vec![false; n];
    let mut weight = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&i| !placed[i])
            .min_by_key(|&i| (std::cmp::Reverse(weight[i]), size[&a.colour[i]], a.verts[i]))
            .expect("unplaced vertex");
        let mut batch = vec![next];
        if antipodal {
            let anti = a.idx(a.verts[next].antipode());
            if anti != usize::MAX && anti != next && !placed[anti] {
                batch.push(anti);
            }
        }
        for x in batch {
            placed[x] = true;
            order.push(x);
            for f in &a.incident[x] {
                for w in f.vertices() {
                    weight[a.idx(w)] += 1;
                }
            }
        }
    }
    order
}

/// One entry of the necessary-condition cascade.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CascadeStep {
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`compare`]: the cascade trace and a witness map if any.
#[derive(Clone, Debug, serde::Serialize)]
pub struct IsoReport {
    pub steps: Vec<CascadeStep>,
    pub map: Option<VertexMap>,
}

fn step<T: std::fmt::Debug + PartialEq>(check: &'static str, x: T, y: T) -> CascadeStep {
    let passed = x == y;
    let detail = if passed { String::new() } else { format!("{x:?} vs {y:?}") };
    CascadeStep { check, passed, detail }
}

fn searches(a: &Complex, b: &Complex, find_all: bool, budget: u64, steps: &mut Vec<CascadeStep>) -> Result<Vec<VertexMap>> {
    let cheap = [
        step("vertex count", a.vertex_set().len(), b.vertex_set().len()),
        step("f-vector", a.f_vector(), b.f_vector()),
        step("edge-link census", census_multiset(a), census_multiset(b)),
    ];
    for s in cheap {
        let ok = s.passed;
        steps.push(s);
        if !ok {
            return Ok(Vec::new());
        }
    }
    let fa = vertex_fingerprints(a);
    let fb = vertex_fingerprints(b);
    let mut ma: Vec<&Fingerprint> = fa.values().collect();
    let mut mb: Vec<&Fingerprint> = fb.values().collect();
    ma.sort_unstable();
    mb.sort_unstable();
    let s = CascadeStep {
        check: "fingerprints",
        passed: ma == mb,
        detail: if ma == mb { String::new() } else { "fingerprint multisets differ".into() },
    };
    steps.push(s);
    if ma != mb {
        return Ok(Vec::new());
    }
    let mut pa = Prepared::new(a);
    let mut pb = Prepared::new(b);
    refine(&mut pa, &mut pb, &fa, &fb);
    let s = step("colour refinement", colour_histogram(&pa), colour_histogram(&pb));
    let ok = s.passed;
    let s = CascadeStep { detail: if ok { String::new() } else { "refined colour classes differ".into() }, ..s };
    steps.push(s);
    if !ok {
        return Ok(Vec::new());
    }
    let antipodal = admits_antipodal_pruning(a) && admits_antipodal_pruning(b);
    let order = search_order(&pa, antipodal);
    let n = pa.verts.len();
    let mut search = Search {
        a: &pa,
        b: &pb,
        order,
        antipodal,
        forward: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        budget,
        find_all,
        found: Vec::new(),
    };
    search.run(0, &mut vec![false; n])?;
    let maps: Vec<VertexMap> = search
        .found
        .iter()
        .map(|fw| VertexMap((0..n).map(|i| (pa.verts[i], pb.verts[fw[i]])).collect()))
        .collect();
    steps.push(CascadeStep {
        check: "backtracking",
        passed: !maps.is_empty(),
        detail: format!("{} nodes{}", search.nodes, if antipodal { ", antipodal pruning" } else { "" }),
    });
    debug_assert!(maps.iter().all(|m| m.is_isomorphism(a, b)));
    Ok(maps)
}

/// Runs the necessary-condition cascade, then the search.
pub fn compare_with_budget(a: &Complex, b: &Complex, budget: u64) -> Result<IsoReport> {
    let mut steps = Vec::new();
    let map = searches(a, b, false, budget, &mut steps)?.into_iter().next();
    Ok(IsoReport { steps, map })
}

pub fn compare(a: &Complex, b: &Complex) -> Result<IsoReport> {
    compare_with_budget(a, b, budget_from_env())
}

/// A vertex map carrying `a` onto `b`, or `None` after exhausting the search.
pub fn isomorphic(a: &Complex, b: &Complex) -> Result<Option<VertexMap>> {
    Ok(compare(a, b)?.map)
}

pub fn automorphisms_with_budget(c: &Complex, budget: u64) -> Result<Vec<VertexMap>> {
    let mut maps = searches(c, c, true, budget, &mut Vec::new())?;
    maps.sort();
    Ok(maps)
}

/// Every automorphism of `c`, sorted.
pub fn automorphisms(c: &Complex) -> Result<Vec<VertexMap>> {
    automorphisms_with_budget(c, budget_from_env())
}

/// Isomorphism verdict for every unordered pair, in lexicographic pair order.
pub fn pairwise_isomorphism(list: &[Complex]) -> Result<Vec<((usize, usize), bool)>> {
    let pairs: Vec<(usize, usize)> =
        (0..list.len()).flat_map(|i| (i + 1..list.len()).map(move |j| (i, j))).collect();
    pairs
        .par_iter()
        .map(|&(i, j)| Ok(((i, j), isomorphic(&list[i], &list[j])?.is_some())))
        .collect()
}
