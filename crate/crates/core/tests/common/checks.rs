//! Structural identities of the ball and sphere families, each returning the
//! first mismatch as an error string.

use cs_sphere::builders::{build_ball, build_delta};
use cs_sphere::homology::is_ball_like;
use cs_sphere::props::{cs_neighborliness, cs_neighborliness_wrt, facet_disjoint, stackedness};
use cs_sphere::{Complex, Face, LabelSpace, Vertex};

pub type Check = Result<(), String>;

fn ball(d: u32, i: i32, n: u32) -> Complex {
    (*build_ball(d, i, n).expect("ball")).clone()
}

fn delta(d: u32, n: u32) -> Complex {
    (*build_delta(d, n).expect("sphere")).clone()
}

fn same_facets(a: &Complex, b: &Complex, what: &str) -> Check {
    if a.facets() == b.facets() {
        Ok(())
    } else {
        Err(format!("{what}: {} vs {} facets", a.num_facets(), b.num_facets()))
    }
}

fn contained(a: &Complex, b: &Complex, what: &str) -> Check {
    match a.facets().iter().find(|f| !b.has_face(**f)) {
        None => Ok(()),
        Some(f) => Err(format!("{what}: {f} missing")),
    }
}

fn v(label: i32) -> Vertex {
    Vertex::new(label).expect("label")
}

fn path(n: u32, labels: &[i32]) -> Complex {
    Complex::path(n, labels).expect("path")
}

pub fn half_ceil(d: u32) -> i32 {
    d.div_ceil(2) as i32
}

/// The ball as a union of three joins with short paths on `±{n−1, n}`.
pub fn two_step_expansion(d: u32, i: i32, n: u32) -> Check {
    let (m, ni) = (n - 2, n as i32);
    let a = ball(d - 2, i, m).join(&path(n, &[ni - 1, ni])).map_err(|e| e.to_string())?;
    let b = ball(d - 2, i - 1, m).antipode().join(&path(n, &[ni, -ni + 1, -ni])).map_err(|e| e.to_string())?;
    let c = ball(d - 2, i - 2, m).join(&path(n, &[ni - 1, -ni])).map_err(|e| e.to_string())?;
    same_facets(&ball(d, i, n), &a.union(&b).union(&c), &format!("expansion of B({d},{i},{n})"))
}

pub fn lower_ball_in_antipode(d: u32, n: u32) -> Check {
    for k in 1..=half_ceil(d) {
        contained(&ball(d, k - 1, n), &ball(d, k, n).antipode(), &format!("B({d},{},{n}) in -B({d},{k},{n})", k - 1))?;
    }
    Ok(())
}

/// Boundary of a ball from the boundaries one dimension down.
pub fn boundary_formula(d: u32, i: i32, n: u32) -> Check {
    let apex = v(n as i32);
    let upper = ball(d - 1, i, n - 1);
    let lower = ball(d - 1, i - 1, n - 1).antipode();
    let bd = |c: &Complex| if c.is_void() { Ok(c.clone()) } else { c.boundary() };
    let part1 = bd(&upper).and_then(|b| b.cone(apex)).map_err(|e| e.to_string())?;
    let part2 = bd(&lower).and_then(|b| b.cone(apex.antipode())).map_err(|e| e.to_string())?;
    let part3 = upper.difference(&lower).map_err(|e| e.to_string())?;
    let formula = part1.union(&part2).union(&part3);
    let actual = ball(d, i, n).boundary().map_err(|e| e.to_string())?;
    same_facets(&actual, &formula, &format!("boundary of B({d},{i},{n})"))
}

pub fn lower_dim_ball_in_boundary(d: u32, n: u32) -> Check {
    let top = (d / 2) as i32;
    for j in 0..=top {
        let bd = ball(d, j, n).boundary().map_err(|e| e.to_string())?;
        for i in 0..=j {
            contained(&ball(d - 1, i, n), &bd, &format!("B({},{i},{n}) in boundary of B({d},{j},{n})", d - 1))?;
        }
    }
    Ok(())
}

/// The next balls lie in the cones over the current boundaries.
pub fn next_balls_in_cones(d: u32, n: u32) -> Check {
    let i = half_ceil(d) - 1;
    let b = ball(d, i, n);
    let apex = v(n as i32 + 1);
    let cones = b
        .boundary()
        .and_then(|x| x.cone(apex))
        .and_then(|x| Ok(x.union(&b.antipode().boundary()?.cone(apex.antipode())?)))
        .map_err(|e| e.to_string())?;
    let next = ball(d, i, n + 1);
    contained(&next.union(&next.antipode()), &cones, &format!("±B({d},{i},{}) in cones", n + 1))
}

/// Exact stackedness and neighborliness, ball topology, and facet
/// disjointness from the antipode where applicable.
pub fn ball_exactness(d: u32, i: i32, n: u32) -> Check {
    let b = ball(d, i, n);
    let name = format!("B({d},{i},{n})");
    if !is_ball_like(&b) {
        return Err(format!("{name} is not ball-like"));
    }
    let s = stackedness(&b).map_err(|e| e.to_string())?;
    if s.min_i as i32 != i || !s.exact {
        return Err(format!("{name} stackedness {} exact={}", s.min_i, s.exact));
    }
    let nb = cs_neighborliness(&b);
    if nb.max_i as i32 != i || !nb.exact {
        return Err(format!("{name} neighborliness {} exact={}", nb.max_i, nb.exact));
    }
    if i <= (d / 2) as i32 && !facet_disjoint(&b, &b.antipode()) {
        return Err(format!("{name} shares a facet with its antipode"));
    }
    Ok(())
}

pub fn sphere_is_ball_boundary(k: u32, n: u32) -> Check {
    let bd = ball(2 * k, k as i32, n).boundary().map_err(|e| e.to_string())?;
    same_facets(&delta(2 * k - 1, n), &bd, &format!("Δ({},{n}) vs boundary of B({},{k},{n})", 2 * k - 1, 2 * k))
}

/// Facets of the odd sphere split into the base block, one block per sewing
/// step and the final pair of balls, pairwise disjoint.
pub fn sewing_partition(k: u32, n: u32) -> Check {
    let d = 2 * k - 1;
    let i = k as i32 - 1;
    let pm = |c: &Complex| c.union(&c.antipode());
    let mut blocks: Vec<Complex> = Vec::new();
    let base = delta(d, 2 * k).difference(&pm(&ball(d, i, 2 * k))).map_err(|e| e.to_string())?;
    blocks.push(base);
    for s in 2 * k + 1..=n {
        let cone = ball(d, i, s - 1)
            .boundary()
            .and_then(|b| b.cone(v(s as i32)))
            .map_err(|e| e.to_string())?
            .with_ambient(s, LabelSpace::V)
            .map_err(|e| e.to_string())?;
        blocks.push(pm(&cone).difference(&pm(&ball(d, i, s))).map_err(|e| e.to_string())?);
    }
    blocks.push(pm(&ball(d, i, n)));
    let mut all: Vec<Face> = blocks.iter().flat_map(|b| b.facets().iter().copied()).collect();
    let total = all.len();
    all.sort_unstable();
    all.dedup();
    if all.len() != total {
        return Err(format!("blocks of Δ({d},{n}) overlap"));
    }
    if all.as_slice() != delta(d, n).facets() {
        return Err(format!("blocks of Δ({d},{n}) do not cover the facets"));
    }
    Ok(())
}

pub fn sphere_in_next_dimension(d: u32, n: u32) -> Check {
    contained(&delta(d, n), &delta(d + 1, n), &format!("Δ({d},{n}) in Δ({},{n})", d + 1))
}

pub fn top_edge_link(k: u32, n: u32) -> Check {
    let ni = n as i32;
    let link = delta(2 * k - 1, n).link(Face::from_labels(&[ni - 1, ni])).map_err(|e| e.to_string())?;
    same_facets(&link, &delta(2 * k - 3, n - 2), &format!("link of {{n-1,n}} in Δ({},{n})", 2 * k - 1))
}

/// Links of `{1,2}` in `±B`: antipodal, neighborly and stacked one step
/// lower, facet-disjoint while `i ≤ d/2`.
pub fn first_edge_links(d: u32, i: i32, n: u32) -> Check {
    let e = Face::from_labels(&[1, 2]);
    let b = ball(d, i, n);
    let name = format!("B({d},{i},{n})");
    let lk = b.link(e).map_err(|x| format!("{name}: {x}"))?;
    let lk_anti = b.antipode().link(e).map_err(|x| format!("-{name}: {x}"))?;
    if lk_anti.facets() != lk.antipode().facets() {
        return Err(format!("{name}: links are not antipodal"));
    }
    let ground = Face::cross_ground(n).difference(e.symmetrized());
    for (which, l) in [("+", &lk), ("-", &lk_anti)] {
        let nb = cs_neighborliness_wrt(l, ground).max_i as i32;
        if nb < i - 1 {
            return Err(format!("{which}{name}: link neighborliness {nb}"));
        }
        let st = stackedness(l).map_err(|x| format!("{which}{name}: {x}"))?.min_i as i32;
        if st > i - 1 {
            return Err(format!("{which}{name}: link stackedness {st}"));
        }
    }
    if 2 * i <= d as i32 && !facet_disjoint(&lk, &lk_anti) {
        return Err(format!("{name}: links share a facet"));
    }
    Ok(())
}
