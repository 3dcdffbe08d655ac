//! Stacked 3-balls `B(I)` inside `Δ^3_n`, their facet trees `T(I)`, and the
//! sewn spheres `Δ(I)`.
//!
//! The tree is generated from rules rather than a picture:
//!
//! * the middle column is the positive half of `lk({1,2}, Δ^3_n)`: nodes
//!   `{1,2,a,b}` for consecutive `a, b` on the path `4, 6, …, n−1, …, 5, 3`
//!   (through the edge `{n−1, n}`); row `r` of the column is
//!   `{1, 2, n−r−1, n−r+1}` and row 0 is `{1, 2, n−1, n}`;
//! * the short column is `(1, −n+2) * (n−1, n, −n+1, −n)`;
//! * row `r ∈ I ∪ {0}` carries a path of `next(r) − r` edges whose `t`-th node
//!   (after the column node) is `{1, −n+r+2}` for `t = 1` and
//!   `{−n+r+t, −n+r+t+1}` afterwards, each joined with the row's column edge.

use std::collections::HashMap;

use crate::builders::{build_delta, sew};
use crate::complex::{Complex, LabelSpace};
use crate::error::{Error, Result};
use crate::face::Face;

/// A member of the family `𝕀_n`: a sorted subset of `[3, n−6]` whose first
/// two elements differ by more than one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    pub n: u32,
    pub i: Vec<u32>,
}

impl IndexSet {
    pub fn new(n: u32, mut i: Vec<u32>) -> Result<Self> {
        if n < 10 {
            return Err(Error::NTooSmall { n, min: 10 });
        }
        i.sort_unstable();
        if i.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet(format!("{i:?} repeats an element")));
        }
        if i.iter().any(|&x| x < 3 || x + 6 > n) {
            return Err(Error::InvalidIndexSet(format!("{i:?} leaves [3, {}]", n - 6)));
        }
        if i.len() >= 2 && i[1] - i[0] <= 1 {
            return Err(Error::InvalidIndexSet(format!("{i:?} has adjacent first elements")));
        }
        Ok(Self { n, i })
    }
}

pub fn enum_i(n: u32) -> Result<Vec<IndexSet>> {
    if n < 10 {
        return Err(Error::NTooSmall { n, min: 10 });
    }
    let pool: Vec<u32> = (3..=n - 6).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pool.len() {
        let i: Vec<u32> = pool.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &x)| x).collect();
        if i.len() < 2 || i[1] - i[0] > 1 {
            out.push(IndexSet { n, i });
        }
    }
    out.sort();
    Ok(out)
}

/// The tree `T(I)`: facets of `Δ^3_n` as nodes, shared ridges as edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetTree {
    pub nodes: Vec<Face>,
    pub edges: Vec<(usize, usize)>,
    pub source: IndexSet,
}

impl FacetTree {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

fn column_edge(n: i32, row: i32) -> Face {
    if row == 0 {
        Face::from_labels(&[n - 1, n])
    } else {
        Face::from_labels(&[n - row - 1, n - row + 1])
    }
}

pub fn build_t(set: &IndexSet) -> Result<FacetTree> {
    let set = IndexSet::new(set.n, set.i.clone())?;
    let n = set.n as i32;
    let sphere = build_delta(3, set.n)?;
    let mut nodes: Vec<Face> = Vec::new();
    let mut index: HashMap<Face, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut add = |f: Face, nodes: &mut Vec<Face>| -> Result<usize> {
        if !sphere.has_facet(f) {
            return Err(Error::InvalidIndexSet(format!("generated node {f} is not a facet of Δ^3_{n}")));
        }
        Ok(*index.entry(f).or_insert_with(|| {
            nodes.push(f);
            nodes.len() - 1
        }))
    };
    let one_two = Face::from_labels(&[1, 2]);

    // middle column: evens ascending to n or n−1, the junction, odds descending
    let mut column: Vec<i32> = (4..=n).step_by(2).collect();
    let top_odd = if n % 2 == 0 { n - 1 } else { n };
    column.extend((3..=top_odd).rev().step_by(2));
    let mut prev: Option<usize> = None;
    for w in column.windows(2) {
        let id = add(one_two.union(Face::from_labels(w)), &mut nodes)?;
        if let Some(p) = prev {
            edges.push((p, id));
        }
        prev = Some(id);
    }

    // short column (1, −n+2) * (n−1, n, −n+1, −n), hanging off 12(n−1)n
    let base = Face::from_labels(&[1, -n + 2]);
    let mut prev = add(one_two.union(column_edge(n, 0)), &mut nodes)?;
    for pair in [[n - 1, n], [n, -n + 1], [-n + 1, -n]] {
        let id = add(base.union(Face::from_labels(&pair)), &mut nodes)?;
        edges.push((prev, id));
        prev = id;
    }

    // row paths
    let mut rows: Vec<i32> = vec![0];
    rows.extend(set.i.iter().map(|&x| x as i32));
    rows.push(n - 2);
    for w in rows.windows(2) {
        let (r, len) = (w[0], w[1] - w[0]);
        let e = column_edge(n, r);
        let mut prev = add(one_two.union(e), &mut nodes)?;
        for t in 1..=len {
            let pair = if t == 1 {
                Face::from_labels(&[1, -n + r + 2])
            } else {
                Face::from_labels(&[-n + r + t, -n + r + t + 1])
            };
            let id = add(pair.union(e), &mut nodes)?;
            edges.push((prev, id));
            prev = id;
        }
    }

    for (a, b) in &mut edges {
        if *a > *b {
            std::mem::swap(a, b);
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(FacetTree { nodes, edges, source: set })
}

/// The ball whose facets are the nodes of `T(I)`.
pub fn build_b_i(set: &IndexSet) -> Result<Complex> {
    let tree = build_t(set)?;
    Complex::new(set.n, LabelSpace::V, tree.nodes)
}

/// `Δ^3_n` with `±B(I)` replaced by cones over their boundaries, apex `±(n+1)`.
pub fn build_delta_i(set: &IndexSet) -> Result<Complex> {
    let ball = build_b_i(set)?;
    sew(&*build_delta(3, set.n)?, &ball, set.n + 1)
}

/// Unrooted tree isomorphism via canonical encodings rooted at the centroids.
pub fn tree_isomorphic(a: &FacetTree, b: &FacetTree) -> bool {
    a.nodes.len() == b.nodes.len()
        && a.edges.len() == b.edges.len()
        && tree_canonical_form(&a.adjacency()) == tree_canonical_form(&b.adjacency())
}

/// Canonical string of an unrooted tree given by adjacency lists; `None`
/// when the graph is not a tree.
pub fn tree_canonical_form(adj: &[Vec<usize>]) -> Option<String> {
    let n = adj.len();
    if n == 0 {
        return Some(String::new());
    }
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if edges + 1 != n {
        return None;
    }
    let centroids = centroids(adj)?;
    centroids.into_iter().map(|c| rooted_encoding(adj, c)).min()
}

fn centroids(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    if order.len() != n {
        return None;
    }
    let mut size = vec![1usize; n];
    for &x in order.iter().rev() {
        if parent[x] != usize::MAX {
            size[parent[x]] += size[x];
        }
    }
    let heaviest = |x: usize| {
        let up = n - size[x];
        adj[x].iter().filter(|&&y| parent[y] == x).map(|&y| size[y]).fold(up, usize::max)
    };
    let best = (0..n).map(heaviest).min()?;
    Some((0..n).filter(|&x| heaviest(x) == best).collect())
}

fn rooted_encoding(adj: &[Vec<usize>], root: usize) -> String {
    fn enc(adj: &[Vec<usize>], x: usize, from: usize) -> String {
        let mut kids: Vec<String> = adj[x].iter().filter(|&&y| y != from).map(|&y| enc(adj, y, x)).collect();
        kids.sort_unstable();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in kids {
            s.push_str(&k);
        }
        s.push(')');
        s
    }
    enc(adj, root, usize::MAX)
}
