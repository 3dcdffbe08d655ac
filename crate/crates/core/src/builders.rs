//! Constructions of the spheres `Δ^d_n`, balls `B^{d,i}_n`, edge-link spheres
//! `Λ^d_n` and squeezed-ball variants.
//!
//! `Δ` and `B` are mutually recursive; results are memoized in a shared
//! [`Catalog`]. Recursion always descends in `(d, n, i)`, so a key is never
//! re-entered while it is being computed.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::complex::{Complex, LabelSpace};
use crate::error::{Error, Result};
use crate::face::{Face, Vertex, MAX_LABEL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Delta(u32, u32),
    Ball(u32, i32, u32),
}

/// Memo table for `Δ^d_n` and `B^{d,i}_n`. Cloning shares nothing; use
/// [`catalog`] for the process-wide instance.
#[derive(Default)]
pub struct Catalog {
    table: RwLock<HashMap<Key, Arc<Complex>>>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("catalog lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn memo(&self, key: Key, build: impl FnOnce() -> Result<Complex>) -> Result<Arc<Complex>> {
        if let Some(c) = self.table.read().expect("catalog lock").get(&key) {
            return Ok(Arc::clone(c));
        }
        let built = Arc::new(build()?);
        let mut table = self.table.write().expect("catalog lock");
        Ok(Arc::clone(table.entry(key).or_insert(built)))
    }

    /// The sphere `Δ^d_n` on `V_n`.
    pub fn delta(&self, d: u32, n: u32) -> Result<Arc<Complex>> {
        if d < 1 || n < d + 1 || n > MAX_LABEL {
            return Err(Error::InvalidParameters(format!("Δ^{d}_{n} needs d ≥ 1 and d+1 ≤ n ≤ {MAX_LABEL}")));
        }
        self.memo(Key::Delta(d, n), || {
            if n == d + 1 {
                return cross_polytope(n);
            }
            if d == 1 {
                let labels: Vec<i32> = (1..=n as i32).chain((1..=n as i32).map(|x| -x)).collect();
                return Complex::cycle(n, &labels);
            }
            let prev = self.delta(d, n - 1)?;
            let ball = self.ball(d, d.div_ceil(2) as i32 - 1, n - 1)?;
            sew(&prev, &ball, n)
        })
    }

    /// The ball `B^{d,i}_n` on `V_n`; void when `i < 0`.
    pub fn ball(&self, d: u32, i: i32, n: u32) -> Result<Arc<Complex>> {
        let k = d.div_ceil(2) as i32;
        if d < 1 || i > k || n < d + 1 || n > MAX_LABEL {
            return Err(Error::InvalidParameters(format!(
                "B^{{{d},{i}}}_{n} needs d ≥ 1, i ≤ ⌈d/2⌉ and d+1 ≤ n ≤ {MAX_LABEL}"
            )));
        }
        if i < 0 {
            return Ok(Arc::new(Complex::void(n, LabelSpace::V)));
        }
        self.memo(Key::Ball(d, i, n), || {
            if d % 2 == 1 && i == k {
                let sphere = self.delta(d, n)?;
                let lower = self.ball(d, i - 1, n)?;
                return sphere.difference(&lower);
            }
            if d == 1 {
                let edge = Face::from_labels(&[-1, n as i32]);
                return Complex::new(n, LabelSpace::V, [edge]);
            }
            let top = self.ball(d - 1, i, n - 1)?;
            let bottom = self.ball(d - 1, i - 1, n - 1)?.antipode();
            let apex = Vertex::new(n as i32)?;
            let a = top.cone(apex)?.with_ambient(n, LabelSpace::V)?;
            let b = bottom.cone(apex.antipode())?.with_ambient(n, LabelSpace::V)?;
            Ok(a.union(&b))
        })
    }

    /// `Λ^d_n = lk({1,2}, Δ^{d+2}_{n+2})`, labeled on `W_n`.
    pub fn lambda(&self, d: u32, n: u32) -> Result<Complex> {
        if d < 1 || n < d + 1 {
            return Err(Error::InvalidParameters(format!("Λ^{d}_{n} needs d ≥ 1 and n ≥ d+1")));
        }
        let big = self.delta(d + 2, n + 2)?;
        big.link(Face::from_labels(&[1, 2]))?.with_ambient(n, LabelSpace::W)
    }
}

/// Process-wide catalog shared by the free functions below.
pub fn catalog() -> &'static Catalog {
    static GLOBAL: OnceLock<Catalog> = OnceLock::new();
    GLOBAL.get_or_init(Catalog::new)
}

pub fn build_delta(d: u32, n: u32) -> Result<Arc<Complex>> {
    catalog().delta(d, n)
}

pub fn build_ball(d: u32, i: i32, n: u32) -> Result<Arc<Complex>> {
    catalog().ball(d, i, n)
}

pub fn build_lambda(d: u32, n: u32) -> Result<Complex> {
    catalog().lambda(d, n)
}

/// Boundary of the cross-polytope on `V_n`.
pub fn cross_polytope(n: u32) -> Result<Complex> {
    if !(1..=24).contains(&n) {
        return Err(Error::InvalidParameters(format!("cross-polytope dimension {n} outside 1..=24")));
    }
    let facets = (0u64..1 << n).map(|signs| {
        Face::from_vertices((0..n).map(|b| {
            let v = b as i32 + 1;
            Vertex::new(if signs >> b & 1 == 0 { v } else { -v }).expect("in range")
        }))
    });
    Complex::new(n, LabelSpace::V, facets.collect::<Vec<_>>())
}

/// Relabels a `W_n` complex onto `V_n` via `±j ↦ ±(j−2)`.
pub fn normalize_w(c: &Complex) -> Result<Complex> {
    if c.space() != LabelSpace::W {
        return Ok(c.clone());
    }
    c.relabel(c.ambient_n(), LabelSpace::V, |v| {
        let l = v.label();
        Vertex::new(if l > 0 { l - 2 } else { l + 2 }).expect("W labels have |l| ≥ 3")
    })
}

/// Replaces `ball` by the cone over its boundary with apex `v`, and `-ball`
/// by the cone over the antipodal boundary with apex `-v`.
///
/// `v` must be one more than the largest label of the ambient space of `sphere`.
pub fn sew(sphere: &Complex, ball: &Complex, v: u32) -> Result<Complex> {
    let bound = sphere.space().max_abs(sphere.ambient_n());
    if v != bound + 1 {
        return Err(Error::InvalidParameters(format!("apex {v} must be {}", bound + 1)));
    }
    if ball.is_void() || ball.dim() != sphere.dim() || !ball.is_pure() {
        return Err(Error::NotSubcomplex("ball must be pure of the sphere's dimension".into()));
    }
    if let Some(f) = ball.facets().iter().find(|f| !sphere.has_facet(**f)) {
        return Err(Error::NotSubcomplex(format!("facet {f} is not a facet of the sphere")));
    }
    let anti = ball.antipode();
    if let Some(f) = ball.facets().iter().find(|f| anti.has_facet(**f)) {
        return Err(Error::SharedFacets(*f));
    }
    let apex = Vertex::new(v as i32)?;
    let bd = ball.boundary()?;
    let mut facets: Vec<Face> = sphere
        .facets()
        .iter()
        .copied()
        .filter(|f| !ball.has_facet(*f) && !anti.has_facet(*f))
        .collect();
    for g in bd.facets() {
        facets.push(g.with(apex));
        facets.push(g.antipode().with(apex.antipode()));
    }
    Complex::new(sphere.ambient_n() + 1, sphere.space(), facets)
}

/// Facets `{i_1, i_1+1, …, i_k, i_k+1}` with `i_{m+1} ≥ i_m + 2` and `i_k < n`.
pub fn squeezed_facets(k: u32, n: u32) -> Vec<Face> {
    fn rec(k: u32, n: u32, start: u32, acc: Face, out: &mut Vec<Face>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        // the remaining k pairs need 2k − 1 more labels after `start`
        let mut i = start;
        while i + 2 * (k - 1) < n {
            let pair = Face::from_labels(&[i as i32, i as i32 + 1]);
            rec(k - 1, n, i + 2, acc.union(pair), out);
            i += 1;
        }
    }
    let mut out = Vec::new();
    rec(k, n, 1, Face::EMPTY, &mut out);
    out.sort_unstable();
    out
}

/// The squeezed ball generated by [`squeezed_facets`]; void when `n < 2k`.
pub fn squeezed_ball(k: u32, n: u32) -> Result<Complex> {
    if k < 1 || n < k + 1 || n > MAX_LABEL {
        return Err(Error::InvalidParameters(format!("squeezed ball needs k ≥ 1 and n ≥ k+1, got k={k}, n={n}")));
    }
    Complex::new(n, LabelSpace::V, squeezed_facets(k, n))
}

/// Relabels a complex on positive labels via `i ↦ 2i+1`, onto `W_{2n−1}`.
pub fn rho_embed(c: &Complex) -> Result<Complex> {
    if let Some(v) = c.vertex_set().vertices().find(|v| !v.is_positive()) {
        return Err(Error::NegativeLabel(v.label()));
    }
    let n = c.ambient_n();
    c.relabel(2 * n - 1, LabelSpace::W, |v| Vertex::new(2 * v.label() + 1).expect("bounded"))
}

/// Sews `±ρ(b)` into `Λ^{2k−1}_{2n−1}` with apex `2n+2`.
pub fn lambda_squeezed(k: u32, n: u32, b: &Complex) -> Result<Complex> {
    if b.ambient_n() > n || b.vertex_set().max_abs() > n {
        return Err(Error::InvalidParameters(format!("ball must use labels within 1..={n}")));
    }
    if 2 * n + 2 > MAX_LABEL {
        return Err(Error::InvalidParameters(format!("n = {n} too large for the label bound")));
    }
    let lambda = build_lambda(2 * k - 1, 2 * n - 1)?;
    let image = rho_embed(&b.with_ambient(n, LabelSpace::V)?)?;
    sew(&lambda, &image, 2 * n + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(l: &[i32]) -> Face {
        Face::from_labels(l)
    }

    #[test]
    fn small_cross_polytopes() {
        assert_eq!(cross_polytope(1).unwrap().facets(), &[f(&[1]), f(&[-1])]);
        assert_eq!(cross_polytope(3).unwrap().num_facets(), 8);
        assert_eq!(*build_delta(3, 4).unwrap(), cross_polytope(4).unwrap());
    }

    #[test]
    fn delta_one_is_the_cycle() {
        let c = build_delta(1, 3).unwrap();
        let expect = Complex::cycle(3, &[1, 2, 3, -1, -2, -3]).unwrap();
        assert_eq!(*c, expect);
    }

    #[test]
    fn cycle_agrees_with_sewing() {
        for n in 2..9 {
            let prev = build_delta(1, n).unwrap();
            let ball = build_ball(1, 0, n).unwrap();
            assert_eq!(sew(&prev, &ball, n + 1).unwrap(), *build_delta(1, n + 1).unwrap());
        }
    }

    #[test]
    fn ball_examples() {
        assert_eq!(build_ball(1, 0, 7).unwrap().facets(), &[f(&[-1, 7])]);
        assert_eq!(build_ball(5, 0, 9).unwrap().facets(), &[f(&[-1, 5, 6, 7, 8, 9])]);
        let b31 = build_ball(3, 1, 5).unwrap();
        let mut expect = vec![
            f(&[2, 3, 4, 5]),
            f(&[1, 2, 4, 5]),
            f(&[1, -3, 4, 5]),
            f(&[-2, -3, 4, 5]),
            f(&[-1, -2, 4, 5]),
            f(&[1, -3, -4, 5]),
            f(&[1, -3, -4, -5]),
        ];
        expect.sort();
        assert_eq!(b31.facets(), expect.as_slice());
        assert!(build_ball(3, -1, 5).unwrap().is_void());
    }

    #[test]
    fn parameter_validation() {
        assert!(build_delta(3, 3).is_err());
        assert!(build_delta(0, 3).is_err());
        assert!(build_ball(3, 3, 6).is_err());
        assert!(build_ball(4, 1, 4).is_err());
        assert!(squeezed_ball(0, 4).is_err());
    }

    #[test]
    fn sew_rejects_bad_balls() {
        let s = build_delta(3, 5).unwrap();
        let void = Complex::void(5, LabelSpace::V);
        assert!(matches!(sew(&s, &void, 6), Err(Error::NotSubcomplex(_))));
        let both = build_ball(3, 1, 5).unwrap().union(&build_ball(3, 1, 5).unwrap().antipode());
        assert!(matches!(sew(&s, &both, 6), Err(Error::SharedFacets(_))));
        assert!(matches!(sew(&s, &build_ball(3, 1, 5).unwrap(), 7), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn delta3_counts() {
        assert_eq!(build_delta(3, 5).unwrap().num_facets(), 30);
        assert_eq!(build_delta(3, 8).unwrap().num_facets(), 96);
    }

    #[test]
    fn lambda_small() {
        let l = build_lambda(1, 4).unwrap();
        assert_eq!(l.space(), LabelSpace::W);
        assert_eq!(l.num_facets(), 8);
        assert!(l.has_facet(f(&[3, 5])) && l.has_facet(f(&[4, 6])));
        assert_eq!(l.vertex_set().len(), 8);
        let v = normalize_w(&l).unwrap();
        assert_eq!(v.space(), LabelSpace::V);
        assert!(v.has_facet(f(&[1, 3])));
    }

    #[test]
    fn squeezed_examples() {
        assert_eq!(squeezed_facets(2, 5), vec![f(&[1, 2, 3, 4]), f(&[1, 2, 4, 5]), f(&[2, 3, 4, 5])]);
        let path = squeezed_ball(1, 6).unwrap();
        assert_eq!(path.num_facets(), 5);
        assert!(path.facets().iter().all(|e| e.len() == 2));
        assert!(squeezed_ball(3, 5).unwrap().is_void());
        let g = squeezed_ball(2, 5).unwrap().facet_ridge_graph().unwrap();
        assert!(g.is_connected());
        assert_eq!(g.nodes.len(), 3);
    }

    #[test]
    fn rho_examples() {
        let s = Complex::simplex(4, f(&[1, 2, 3, 4])).unwrap();
        assert_eq!(rho_embed(&s).unwrap().facets(), &[f(&[3, 5, 7, 9])]);
        let neg = Complex::simplex(4, f(&[1, -2])).unwrap();
        assert!(matches!(rho_embed(&neg), Err(Error::NegativeLabel(-2))));
        assert!(rho_embed(&Complex::void(3, LabelSpace::V)).unwrap().is_void());
    }

    #[test]
    fn memo_is_transparent() {
        let warm = Catalog::new();
        warm.delta(4, 9).unwrap();
        let cached = warm.delta(4, 7).unwrap();
        let cold = Catalog::new().delta(4, 7).unwrap();
        assert_eq!(cached, cold);
    }
}
