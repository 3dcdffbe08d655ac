//! Brute-force oracles and small fixtures shared by the integration suites.
//!
//! Everything here works from facet lists only and never calls the search or
//! reduction code it is compared against.

#![allow(dead_code)]

pub mod checks;

use std::collections::{BTreeSet, HashSet};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use cs_sphere::builders::{build_ball, build_delta, cross_polytope, squeezed_ball};
use cs_sphere::{Complex, Face, LabelSpace, Vertex};

/// Restriction face of each position if the order is a shelling, else the
/// first position whose new faces have no unique minimum.
pub fn brute_force_shelling(order: &[Face]) -> Result<Vec<Face>, usize> {
    let mut restrictions = Vec::new();
    for (k, f) in order.iter().enumerate() {
        let new: Vec<Face> =
            f.all_subsets().filter(|g| !order[..k].iter().any(|e| g.is_subset(*e))).collect();
        let minimal: Vec<Face> =
            new.iter().copied().filter(|g| !new.iter().any(|h| h != g && h.is_subset(*g))).collect();
        if minimal.len() != 1 {
            return Err(k);
        }
        restrictions.push(minimal[0]);
    }
    Ok(restrictions)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

/// Number of vertex bijections carrying the facets of `a` onto those of `b`.
pub fn brute_force_isomorphisms(a: &Complex, b: &Complex) -> usize {
    let va: Vec<Vertex> = a.vertex_set().vertices().collect();
    let vb: Vec<Vertex> = b.vertex_set().vertices().collect();
    if va.len() != vb.len() || a.num_facets() != b.num_facets() {
        return 0;
    }
    let target: HashSet<Face> = b.facets().iter().copied().collect();
    permutations(va.len())
        .into_iter()
        .filter(|p| {
            a.facets().iter().all(|f| {
                let img = f.map(|v| vb[p[va.iter().position(|w| *w == v).expect("vertex")]]);
                target.contains(&img)
            })
        })
        .count()
}

/// Unreduced mod-2 Betti numbers by dense Gaussian elimination.
pub fn dense_betti(c: &Complex) -> Vec<u64> {
    if c.is_void() {
        return Vec::new();
    }
    let dim = c.dim().max(0) as usize;
    let faces: Vec<Vec<Face>> = (0..=dim + 1).map(|k| c.faces_of_size(k + 1)).collect();
    let rank = |k: usize| -> usize {
        // boundary map from k-faces to (k−1)-faces
        if k == 0 || k > dim {
            return 0;
        }
        let rows = &faces[k - 1];
        let mut m: Vec<Vec<bool>> = faces[k]
            .iter()
            .map(|f| rows.iter().map(|r| r.is_subset(*f)).collect())
            .collect();
        let cols = rows.len();
        let mut r = 0;
        for col in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| m[i][col]) else { continue };
            m.swap(r, p);
            for i in 0..m.len() {
                if i != r && m[i][col] {
                    let pivot = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            }
            r += 1;
        }
        r
    };
    (0..=dim).map(|k| faces[k].len() as u64 - rank(k) as u64 - rank(k + 1) as u64).collect()
}

/// Betti numbers of a `d`-sphere.
pub fn sphere_betti(d: i32) -> Vec<u64> {
    match d {
        0 => vec![2],
        _ => {
            let mut b = vec![0; d as usize + 1];
            b[0] = 1;
            b[d as usize] = 1;
            b
        }
    }
}

fn f(l: &[i32]) -> Face {
    Face::from_labels(l)
}

/// Pure complexes with at most 12 facets.
pub fn small_pure_fixtures() -> Vec<(String, Complex)> {
    let mut out: Vec<(String, Complex)> = Vec::new();
    for n in 1..=3 {
        out.push((format!("cross({n})"), cross_polytope(n).unwrap()));
    }
    for n in 2..=6 {
        out.push((format!("delta(1,{n})"), (*build_delta(1, n).unwrap()).clone()));
    }
    for n in 4..=7 {
        out.push((format!("ball(3,1,{n})"), (*build_ball(3, 1, n).unwrap()).clone()));
    }
    for n in 3..=6 {
        out.push((format!("ball(2,1,{n})"), (*build_ball(2, 1, n).unwrap()).clone()));
    }
    for (k, n) in [(1, 5), (2, 5), (2, 6), (2, 7), (3, 7)] {
        out.push((format!("squeezed({k},{n})"), squeezed_ball(k, n).unwrap()));
    }
    out.push(("tetra boundary".into(), Complex::simplex(4, f(&[1, 2, 3, 4])).unwrap().boundary().unwrap()));
    out.push((
        "two triangles at a vertex".into(),
        Complex::new(5, LabelSpace::V, [f(&[1, 2, 3]), f(&[3, 4, 5])]).unwrap(),
    ));
    out.push((
        "bowtie path".into(),
        Complex::new(4, LabelSpace::V, [f(&[1, 2]), f(&[3, 4]), f(&[2, 3]), f(&[1, 4])]).unwrap(),
    ));
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for t in 0..12 {
        let size = rng.random_range(2..=3usize);
        let verts: Vec<i32> = (1..=5).collect();
        let mut facets = BTreeSet::new();
        let count = rng.random_range(2..=8);
        while facets.len() < count {
            let mut pick = verts.clone();
            pick.shuffle(&mut rng);
            facets.insert(f(&pick[..size]));
        }
        out.push((format!("random pure #{t}"), Complex::new(5, LabelSpace::V, facets).unwrap()));
    }
    out.retain(|(_, c)| c.num_facets() <= 12 && c.is_pure());
    out
}

/// Facet orders to test on `c`: every permutation up to 5 facets, otherwise
/// a spread of seeded shuffles.
pub fn orders_for(c: &Complex, seed: u64) -> Vec<Vec<Face>> {
    let facets = c.facets().to_vec();
    if facets.len() <= 5 {
        return permutations(facets.len()).into_iter().map(|p| p.iter().map(|&i| facets[i]).collect()).collect();
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = vec![facets.clone()];
    for _ in 0..40 {
        let mut o = facets.clone();
        o.shuffle(&mut rng);
        out.push(o);
    }
    out
}

/// Complexes on at most 8 vertices, plus relabeled copies.
pub fn small_vertex_fixtures() -> Vec<(String, Complex)> {
    let mut out: Vec<(String, Complex)> = small_pure_fixtures()
        .into_iter()
        .filter(|(_, c)| c.vertex_set().len() <= 8)
        .collect();
    out.push(("delta(3,4)".into(), (*build_delta(3, 4).unwrap()).clone()));
    out.push(("delta(2,4)".into(), (*build_delta(2, 4).unwrap()).clone()));
    let mut rng = StdRng::seed_from_u64(0xbeef);
    let base: Vec<(String, Complex)> = out.iter().take(10).cloned().collect();
    for (name, c) in base {
        let verts: Vec<Vertex> = c.vertex_set().vertices().collect();
        let mut image = verts.clone();
        image.shuffle(&mut rng);
        let relabeled = c
            .relabel(c.ambient_n(), c.space(), |v| image[verts.iter().position(|w| *w == v).unwrap()])
            .unwrap();
        out.push((format!("{name} shuffled"), relabeled));
    }
    out
}
