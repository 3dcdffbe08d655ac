//! Signed vertices and faces.
//!
//! A [`Face`] is stored as a 64-bit mask. Label `v` occupies bit
//! `2 * (|v| - 1)` when positive and the following bit when negative, so the
//! bit order coincides with the canonical vertex order (absolute value
//! ascending, positive before negative). Labels are limited to `|v| <= 32`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest absolute label a [`Face`] can hold.
pub const MAX_LABEL: u32 = 32;

const POS_BITS: u64 = 0x5555_5555_5555_5555;
const NEG_BITS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

/// A nonzero signed vertex label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vertex(i32);

impl Vertex {
    pub fn new(label: i32) -> Result<Self> {
        if label == 0 {
            return Err(Error::ZeroLabel);
        }
        if label.unsigned_abs() > MAX_LABEL {
            return Err(Error::LabelOutOfRange { label, bound: MAX_LABEL });
        }
        Ok(Self(label))
    }

    fn from_bit(bit: u32) -> Self {
        let abs = (bit / 2 + 1) as i32;
        Self(if bit.is_multiple_of(2) { abs } else { -abs })
    }

    pub fn label(self) -> i32 {
        self.0
    }

    pub fn abs(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn antipode(self) -> Self {
        Self(-self.0)
    }

    pub(crate) fn bit(self) -> u32 {
        2 * (self.abs() - 1) + u32::from(self.0 < 0)
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bit().cmp(&other.bit())
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite set of signed vertices.
///
/// Faces compare lexicographically as sequences of vertices in canonical
/// order, so a sorted `Vec<Face>` lists facets the way they are printed.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    /// Builds a face from labels, rejecting zero, out-of-range and repeated labels.
    pub fn try_from_labels(labels: &[i32]) -> Result<Self> {
        let mut bits = 0u64;
        for &l in labels {
            let v = Vertex::new(l)?;
            let b = 1u64 << v.bit();
            if bits & b != 0 {
                return Err(Error::RepeatedVertex(l));
            }
            bits |= b;
        }
        Ok(Self(bits))
    }

    /// Like [`Face::try_from_labels`] but panics on invalid input. Intended
    /// for literal faces in constructions and tests.
    pub fn from_labels(labels: &[i32]) -> Self {
        match Self::try_from_labels(labels) {
            Ok(f) => f,
            Err(e) => panic!("invalid face {labels:?}: {e}"),
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vs: I) -> Self {
        Self(vs.into_iter().fold(0, |acc, v| acc | (1u64 << v.bit())))
    }

    pub fn singleton(v: Vertex) -> Self {
        Self(1u64 << v.bit())
    }

    /// All vertices `±1, …, ±n`.
    pub fn cross_ground(n: u32) -> Self {
        assert!(n <= MAX_LABEL);
        if n == MAX_LABEL {
            Self(u64::MAX)
        } else {
            Self((1u64 << (2 * n)) - 1)
        }
    }

    /// All vertices whose absolute value lies in `lo..=hi`.
    pub fn abs_range(lo: u32, hi: u32) -> Self {
        if lo > hi {
            return Self::EMPTY;
        }
        Self(Self::cross_ground(hi).0 & !Self::cross_ground(lo - 1).0)
    }

    pub(crate) fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub(crate) fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Dimension `|F| - 1`; the empty face has dimension −1.
    pub fn dim(self) -> i32 {
        self.len() as i32 - 1
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 & (1u64 << v.bit()) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Face) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: Vertex) -> Face {
        Face(self.0 | (1u64 << v.bit()))
    }

    pub fn without(self, v: Vertex) -> Face {
        Face(self.0 & !(1u64 << v.bit()))
    }

    /// Negates every label.
    pub fn antipode(self) -> Face {
        Face(((self.0 & POS_BITS) << 1) | ((self.0 & NEG_BITS) >> 1))
    }

    /// True when the face contains some pair `{v, -v}`.
    pub fn has_antipodal_pair(self) -> bool {
        (self.0 & POS_BITS) & ((self.0 & NEG_BITS) >> 1) != 0
    }

    /// Both signs of every absolute value present in the face.
    pub fn symmetrized(self) -> Face {
        self.union(self.antipode())
    }

    /// Set of absolute values, as a mask with bit `|v| - 1`.
    pub fn abs_mask(self) -> u32 {
        let folded = (self.0 | (self.0 >> 1)) & POS_BITS;
        let mut out = 0u32;
        let mut rest = folded;
        while rest != 0 {
            let b = rest.trailing_zeros();
            out |= 1 << (b / 2);
            rest &= rest - 1;
        }
        out
    }

    pub fn has_negative(self) -> bool {
        self.0 & NEG_BITS != 0
    }

    pub fn max_abs(self) -> u32 {
        if self.0 == 0 {
            0
        } else {
            (63 - self.0.leading_zeros()) / 2 + 1
        }
    }

    pub fn min_vertex(self) -> Option<Vertex> {
        (self.0 != 0).then(|| Vertex::from_bit(self.0.trailing_zeros()))
    }

    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn labels(self) -> Vec<i32> {
        self.vertices().map(Vertex::label).collect()
    }

    /// Applies a vertex relabeling.
    pub fn map<F: FnMut(Vertex) -> Vertex>(self, mut f: F) -> Face {
        Face::from_vertices(self.vertices().map(&mut f))
    }

    /// All subsets of cardinality `k`, in lexicographic order.
    pub fn subsets_of_size(self, k: usize) -> Vec<Face> {
        let verts: Vec<u64> = {
            let mut v = Vec::with_capacity(self.len());
            let mut rest = self.0;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                v.push(low);
                rest &= rest - 1;
            }
            v
        };
        let mut out = Vec::new();
        if k > verts.len() {
            return out;
        }
        fn rec(verts: &[u64], k: usize, start: usize, acc: u64, out: &mut Vec<Face>) {
            if k == 0 {
                out.push(Face(acc));
                return;
            }
            for i in start..=verts.len() - k {
                rec(verts, k - 1, i + 1, acc | verts[i], out);
            }
        }
        rec(&verts, k, 0, 0, &mut out);
        out
    }

    /// Every subset of the face (including the empty face and the face itself).
    pub fn all_subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cur = sub;
            sub = sub.wrapping_sub(full) & full;
            if sub == 0 {
                done = true;
            }
            Some(Face(cur))
        })
    }

    /// Subsets obtained by deleting exactly one vertex.
    pub fn ridges(self) -> impl Iterator<Item = Face> {
        self.vertices().map(move |v| self.without(v))
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        let x = self.0 ^ other.0;
        if x == 0 {
            return Ordering::Equal;
        }
        let t = x.trailing_zeros();
        // The lowest differing vertex lies in exactly one face. That face is
        // smaller unless the other one has no vertices past this point.
        let (rest, flip) = if self.0 & (1u64 << t) != 0 {
            (other.0 >> t, false)
        } else {
            (self.0 >> t, true)
        };
        let ord = if rest != 0 { Ordering::Less } else { Ordering::Greater };
        if flip {
            ord.reverse()
        } else {
            ord
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl serde::Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.vertices().map(Vertex::label))
    }
}

impl<'de> serde::Deserialize<'de> for Face {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<i32>::deserialize(d)?;
        Face::try_from_labels(&labels).map_err(serde::de::Error::custom)
    }
}

/// Iterator over the vertices of a face in canonical order.
#[derive(Clone, Debug)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(Vertex::from_bit(b))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}
