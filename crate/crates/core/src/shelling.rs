//! Shelling verification and the explicit shellings of `Δ^3_n` and `B^{4,2}_n`.

use std::collections::{HashSet, VecDeque};

use crate::builders::{build_ball, build_delta};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};

/// A facet order together with the restriction face of each position.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ShellingOrder {
    pub facets: Vec<Face>,
    pub restriction_faces: Vec<Face>,
}

impl ShellingOrder {
    /// Shape `(F_1, …, F_m, −F_m, …, −F_1)`.
    pub fn is_symmetric(&self) -> bool {
        let len = self.facets.len();
        len.is_multiple_of(2) && (0..len / 2).all(|j| self.facets[len - 1 - j] == self.facets[j].antipode())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShellingVerdict {
    Valid(ShellingOrder),
    /// `position` is the first index whose new faces have no unique minimum.
    Invalid { position: usize, facet: Face },
}

impl ShellingVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ShellingVerdict::Valid(_))
    }

    pub fn order(&self) -> Option<&ShellingOrder> {
        match self {
            ShellingVerdict::Valid(o) => Some(o),
            ShellingVerdict::Invalid { .. } => None,
        }
    }
}

/// Checks that `order` shells `c`.
///
/// At each position the candidate restriction face is the set of vertices `v`
/// for which `F \ v` already appeared; the step is valid exactly when that
/// set is not itself an earlier face.
pub fn is_shelling(c: &Complex, order: &[Face]) -> Result<ShellingVerdict> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != c.facets() {
        return Err(Error::NotPermutation);
    }
    let mut seen: HashSet<Face> = HashSet::new();
    let mut restriction_faces = Vec::with_capacity(order.len());
    for (pos, &f) in order.iter().enumerate() {
        let r = Face::from_vertices(f.vertices().filter(|&v| seen.contains(&f.without(v))));
        if pos > 0 && seen.contains(&r) {
            return Ok(ShellingVerdict::Invalid { position: pos, facet: f });
        }
        restriction_faces.push(r);
        seen.extend(f.all_subsets());
    }
    Ok(ShellingVerdict::Valid(ShellingOrder { facets: order.to_vec(), restriction_faces }))
}

fn verified(c: &Complex, order: Vec<Face>) -> Result<ShellingOrder> {
    match is_shelling(c, &order)? {
        ShellingVerdict::Valid(o) => Ok(o),
        ShellingVerdict::Invalid { position, facet } => Err(Error::InvalidParameters(format!(
            "constructed order fails at position {position} (facet {facet})"
        ))),
    }
}

/// Breadth-first order over the facet-ridge graph of `c` from `root`,
/// neighbors in canonical order.
pub fn bfs_order(c: &Complex, root: Face) -> Result<Vec<Face>> {
    let g = c.facet_ridge_graph()?;
    let start = g.nodes.binary_search(&root).map_err(|_| Error::FaceNotPresent(root))?;
    let mut seen = vec![false; g.nodes.len()];
    let mut out = Vec::with_capacity(g.nodes.len());
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(x) = queue.pop_front() {
        out.push(g.nodes[x]);
        for &y in &g.adj[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// First half of the symmetric facet order of `Δ^3_n`.
pub fn symmetric_half_delta3(n: u32) -> Result<Vec<Face>> {
    if n < 4 {
        return Err(Error::InvalidParameters(format!("Δ^3_n needs n ≥ 4, got {n}")));
    }
    let ball = build_ball(3, 1, n)?;
    let ni = n as i32;
    let mut half = bfs_order(&ball, Face::from_labels(&[1, -ni + 2, -ni + 1, -ni]))?;
    for k in (5..=ni).rev() {
        half.push(Face::from_labels(&[-k + 3, -k + 2, -k + 1, k]));
        half.push(Face::from_labels(&[1, -k + 3, -k + 1, k]));
        let path: Vec<i32> = (1..=k - 3).rev().chain((1..=k - 3).rev().map(|x| -x)).collect();
        let top = Face::from_labels(&[k - 2, k]);
        for w in path.windows(2) {
            half.push(Face::from_labels(w).union(top));
        }
    }
    half.push(Face::from_labels(&[-1, -2, -3, 4]));
    half.push(Face::from_labels(&[1, -2, 3, -4]));
    // 123(−4) would be antipodal to the first closer; 12(−3)4 completes the half
    half.push(Face::from_labels(&[1, 2, -3, 4]));
    Ok(half)
}

/// A symmetric shelling of `Δ^3_n`, verified before it is returned.
pub fn symmetric_shelling_delta3(n: u32) -> Result<ShellingOrder> {
    let half = symmetric_half_delta3(n)?;
    let mut order = half.clone();
    order.extend(half.iter().rev().map(|f| f.antipode()));
    verified(&*build_delta(3, n)?, order)
}

/// A shelling of `B^{4,2}_n`: reverse the symmetric shelling of `Δ^3_{n−1}`,
/// drop the trailing `B^{3,1}_{n−1}` block to shell `B^{3,2}_{n−1}`, cone with
/// `n`, then follow with the leading `−B^{3,1}_{n−1}` block coned with `−n`.
pub fn shelling_b42(n: u32) -> Result<ShellingOrder> {
    if n < 5 {
        return Err(Error::InvalidParameters(format!("B^{{4,2}}_n shelling needs n ≥ 5, got {n}")));
    }
    let mut reversed = symmetric_shelling_delta3(n - 1)?.facets;
    reversed.reverse();
    let block = (2 * (n - 1) - 3) as usize;
    let o2 = &reversed[..reversed.len() - block];
    let o1 = &reversed[..block];
    let apex = Vertex::new(n as i32)?;
    let order: Vec<Face> = o2
        .iter()
        .map(|f| f.with(apex))
        .chain(o1.iter().map(|f| f.with(apex.antipode())))
        .collect();
    verified(&*build_ball(4, 2, n)?, order)
}
