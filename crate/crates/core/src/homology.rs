//! GF(2) homology and the topology sanity report.

use std::collections::HashMap;

use crate::complex::Complex;
use crate::face::Face;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TopologyReport {
    pub pure: bool,
    pub connected: bool,
    pub closed_pseudomanifold: bool,
    pub euler: i64,
    pub z2_betti: Vec<u64>,
}

impl TopologyReport {
    /// Pure closed pseudomanifold with the mod-2 homology of a sphere
    /// (connected from dimension 1 on).
    pub fn is_sphere_like(&self) -> bool {
        let connected = self.connected || self.z2_betti.len() == 1;
        self.pure && connected && self.closed_pseudomanifold && is_sphere_betti(&self.z2_betti)
    }
}

fn is_sphere_betti(b: &[u64]) -> bool {
    match b.len() {
        0 => false,
        1 => b[0] == 2,
        len => b[0] == 1 && b[len - 1] == 1 && b[1..len - 1].iter().all(|&x| x == 0),
    }
}

fn is_acyclic(b: &[u64]) -> bool {
    !b.is_empty() && b[0] == 1 && b[1..].iter().all(|&x| x == 0)
}

pub fn topology_report(c: &Complex) -> TopologyReport {
    TopologyReport {
        pure: c.is_pure(),
        connected: c.components() == 1,
        closed_pseudomanifold: c.is_closed_pseudomanifold(),
        euler: c.fh_vectors().euler(),
        z2_betti: z2_betti(c),
    }
}

/// Ball check used throughout: pure, connected, acyclic, with a boundary
/// that passes the sphere report one dimension down.
pub fn is_ball_like(c: &Complex) -> bool {
    if !c.is_pure() || c.is_void() || c.components() != 1 || !is_acyclic(&z2_betti(c)) {
        return false;
    }
    if c.dim() == 0 {
        return c.num_facets() == 1;
    }
    match c.boundary() {
        Ok(bd) if !bd.is_void() => bd.dim() == c.dim() - 1 && topology_report(&bd).is_sphere_like(),
        _ => false,
    }
}

/// Unreduced mod-2 Betti numbers `β_0, …, β_d`. Empty for the void complex.
pub fn z2_betti(c: &Complex) -> Vec<u64> {
    if c.is_void() || c.dim() < 0 {
        return Vec::new();
    }
    let d = c.dim() as usize;
    let faces: Vec<Vec<Face>> = (0..=d).map(|k| c.faces_of_size(k + 1)).collect();
    let mut ranks = vec![0u64; d + 2];
    // Process from the top; a (k)-face that is a pivot row of ∂_{k+1}
    // reduces to zero in ∂_k and can be skipped.
    let mut cleared: Vec<bool> = Vec::new();
    for k in (1..=d).rev() {
        let rows: HashMap<Face, u32> = faces[k - 1].iter().enumerate().map(|(i, f)| (*f, i as u32)).collect();
        let mut owner: Vec<Option<Vec<u32>>> = vec![None; faces[k - 1].len()];
        let mut pivots = vec![false; faces[k - 1].len()];
        let mut rank = 0u64;
        for (j, f) in faces[k].iter().enumerate() {
            if cleared.get(j).copied().unwrap_or(false) {
                continue;
            }
            let mut col: Vec<u32> = f.ridges().map(|r| rows[&r]).collect();
            col.sort_unstable();
            while let Some(&low) = col.last() {
                match &owner[low as usize] {
                    Some(other) => col = sym_diff(&col, other),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                pivots[low as usize] = true;
                owner[low as usize] = Some(col);
                rank += 1;
            }
        }
        ranks[k] = rank;
        cleared = pivots;
    }
    (0..=d).map(|k| faces[k].len() as u64 - ranks[k] - ranks[k + 1]).collect()
}

fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
