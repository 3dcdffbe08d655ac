//! Bistellar flips and the symmetric multi-flip spheres `Γ(J)`.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::builders::build_delta;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::Face;

/// Replaces `A * ∂B̄` by `∂Ā * B̄`.
pub fn bistellar_flip(c: &Complex, a: Face, b: Face) -> Result<Complex> {
    let (remove, add) = flip_edit(c, a, b)?;
    let remove: HashSet<Face> = remove.into_iter().collect();
    let facets = c.facets().iter().copied().filter(|f| !remove.contains(f)).chain(add);
    Complex::new(c.ambient_n(), c.space(), facets.collect::<Vec<_>>())
}

/// Validates a flip and returns the facets to remove and to add.
fn flip_edit(c: &Complex, a: Face, b: Face) -> Result<(Vec<Face>, Vec<Face>)> {
    if a.is_empty() || !c.has_face(a) {
        return Err(Error::FlipFaceMissing(a));
    }
    if b.is_empty() || c.has_face(b) {
        return Err(Error::FlipFacePresent(b));
    }
    let link = c.link(a)?;
    let mut expected: Vec<Face> = b.ridges().collect();
    expected.sort_unstable();
    if !a.is_disjoint(b) || link.facets() != expected.as_slice() {
        return Err(Error::LinkMismatch(a));
    }
    let remove = b.ridges().map(|r| r.union(a)).collect();
    let add = a.ridges().map(|r| r.union(b)).collect();
    Ok((remove, add))
}

/// The faces `F_i = {i, i+3, i+7, …, i+4k−5}` and `G_i = {i−1, i+1, i+5, …, i+4k−3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipPair {
    pub k: u32,
    pub i: u32,
    pub f: Face,
    pub g: Face,
}

pub fn fg_pair(k: u32, i: u32) -> Result<FlipPair> {
    if k < 2 || i < 2 {
        return Err(Error::InvalidParameters(format!("flip pair needs k ≥ 2 and i ≥ 2, got k={k}, i={i}")));
    }
    let i_ = i as i32;
    let mut f = vec![i_];
    f.extend((0..k as i32 - 1).map(|t| i_ + 3 + 4 * t));
    let mut g = vec![i_ - 1];
    g.extend((0..k as i32).map(|t| i_ + 1 + 4 * t));
    Ok(FlipPair { k, i, f: Face::try_from_labels(&f)?, g: Face::try_from_labels(&g)? })
}

/// Indices `i` for which the `(F_i, G_i)` flip applies to `Δ^{2k−1}_n`.
pub fn valid_flip_indices(k: u32, n: u32) -> std::ops::RangeInclusive<u32> {
    3..=(n + 3).saturating_sub(4 * k)
}

/// Indices admissible in a simultaneous plan, `[3, n−4k+2]`.
pub fn plan_range(k: u32, n: u32) -> std::ops::RangeInclusive<u32> {
    3..=(n + 2).saturating_sub(4 * k)
}

/// A set of flip indices for `Γ(J)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipPlan {
    pub k: u32,
    pub n: u32,
    pub j: Vec<u32>,
}

impl FlipPlan {
    pub fn new(k: u32, n: u32, mut j: Vec<u32>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameters(format!("flip plans need k ≥ 2, got {k}")));
        }
        j.sort_unstable();
        j.dedup();
        let range = plan_range(k, n);
        if j.iter().any(|i| !range.contains(i)) {
            return Err(Error::IndexOutOfRange(j));
        }
        Ok(Self { k, n, j })
    }

    pub fn pairs(&self) -> Vec<FlipPair> {
        self.j.iter().map(|&i| fg_pair(self.k, i).expect("validated")).collect()
    }
}

/// Applies the flips `±F_i → ±G_i` for all `i ∈ J` to `Δ^{2k−1}_n` at once.
pub fn build_gamma(k: u32, n: u32, j: &[u32]) -> Result<Complex> {
    let plan = FlipPlan::new(k, n, j.to_vec())?;
    let sphere = build_delta(2 * k - 1, n)?;
    apply_plan(&sphere, &plan)
}

/// Batched symmetric flips, validated against `base` before any edit.
pub fn apply_plan(base: &Complex, plan: &FlipPlan) -> Result<Complex> {
    let moves: Vec<(Face, Face)> = plan
        .pairs()
        .into_iter()
        .flat_map(|p| [(p.f, p.g), (p.f.antipode(), p.g.antipode())])
        .collect();
    let edits = moves
        .par_iter()
        .map(|&(a, b)| flip_edit(base, a, b))
        .collect::<Result<Vec<_>>>()?;
    let mut removed: HashSet<Face> = HashSet::new();
    for (remove, _) in &edits {
        for f in remove {
            if !removed.insert(*f) {
                return Err(Error::InvalidParameters(format!("stars overlap at facet {f}")));
            }
        }
    }
    let facets = base
        .facets()
        .iter()
        .copied()
        .filter(|f| !removed.contains(f))
        .chain(edits.into_iter().flat_map(|(_, add)| add));
    Complex::new(base.ambient_n(), base.space(), facets.collect::<Vec<_>>())
}
