//! Circulant graphs `C_n(R)`, their edge sets and vertex permutations.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::residues::reflexive;

/// A reflexively reduced jump set over `Z_n`.
///
/// Invariants: `n >= 2`, jumps are strictly ascending and lie in `[1, n/2]`.
/// Ordering is by `n`, then lexicographic on the jumps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JumpSet {
    n: u32,
    jumps: Vec<u32>,
}

impl JumpSet {
    /// Reduce raw integers: `v -> min(v mod n, n - v mod n)`, deduplicated.
    pub fn new(n: u32, values: &[i64]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus { n, min: 2 });
        }
        if values.is_empty() {
            return Err(Error::EmptyJumpSet);
        }
        let mut jumps = Vec::with_capacity(values.len());
        for &v in values {
            let r = v.rem_euclid(n as i64) as u32;
            if r == 0 {
                return Err(Error::ZeroJump { n, value: v });
            }
            jumps.push(reflexive(r, n));
        }
        Ok(Self::from_reduced(n, jumps))
    }

    /// Build from residues already known to be nonzero modulo `n`.
    pub(crate) fn from_residues(n: u32, residues: impl IntoIterator<Item = u32>) -> Self {
        let jumps = residues.into_iter().map(|r| reflexive(r, n)).collect();
        Self::from_reduced(n, jumps)
    }

    fn from_reduced(n: u32, mut jumps: Vec<u32>) -> Self {
        jumps.sort_unstable();
        jumps.dedup();
        debug_assert!(jumps.first().is_some_and(|&j| j >= 1));
        debug_assert!(jumps.last().is_some_and(|&j| j <= n / 2));
        Self { n, jumps }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.jumps
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.jumps.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn contains(&self, r: u32) -> bool {
        self.jumps.binary_search(&r).is_ok()
    }

    /// Whether `n/2` is a jump (it contributes a single neighbour).
    pub fn has_antipode(&self) -> bool {
        self.n % 2 == 0 && self.jumps.last() == Some(&(self.n / 2))
    }

    /// Vertex degree of `C_n(R)`.
    pub fn degree(&self) -> usize {
        2 * self.jumps.len() - usize::from(self.has_antipode())
    }

    /// Lookup table indexed by `[0, n/2]`.
    pub fn membership(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n as usize / 2 + 1];
        for r in self.iter() {
            mask[r as usize] = true;
        }
        mask
    }

    /// The neighbours of vertex 0: `{r, n - r}` for every jump.
    pub fn neighbours_of_zero(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .iter()
            .flat_map(|r| [r, self.n - r])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for JumpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.jumps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for JumpSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.jumps.serialize(s)
    }
}

/// The circulant graph `C_n(R)` on vertices `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CirculantGraph {
    jumps: JumpSet,
}

impl CirculantGraph {
    pub fn from_jumps(jumps: JumpSet) -> Self {
        Self { jumps }
    }

    pub fn n(&self) -> u32 {
        self.jumps.n()
    }

    pub fn jumps(&self) -> &JumpSet {
        &self.jumps
    }

    pub fn degree(&self) -> usize {
        self.jumps.degree()
    }

    /// Sorted adjacency list of vertex `v`.
    pub fn neighbours(&self, v: u32) -> Vec<u32> {
        let n = self.n();
        let mut out: Vec<u32> = self
            .jumps
            .neighbours_of_zero()
            .into_iter()
            .map(|d| (v + d) % n)
            .collect();
        out.sort_unstable();
        out
    }
}

/// Build `C_n(R)` from raw integers. Requires `n >= 3`.
pub fn build_graph(n: u32, values: &[i64]) -> Result<CirculantGraph> {
    if n < 3 {
        return Err(Error::InvalidModulus { n, min: 3 });
    }
    Ok(CirculantGraph::from_jumps(JumpSet::new(n, values)?))
}

/// Undirected simple edges on `Z_n`, stored as sorted `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeSet {
    n: u32,
    edges: Vec<(u32, u32)>,
}

impl EdgeSet {
    /// Normalize and deduplicate. Self-loops and out-of-range endpoints are rejected.
    pub fn from_pairs(n: u32, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a >= n || b >= n || a == b {
                return Err(Error::RangeViolation(format!(
                    "edge ({a}, {b}) is not a simple edge on Z_{n}"
                )));
            }
            edges.push((a.min(b), a.max(b)));
        }
        Ok(Self::normalized(n, edges))
    }

    fn normalized(n: u32, mut edges: Vec<(u32, u32)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Self { n, edges }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

/// Edge set of `C_n(R)`: `{x, x + r}` for every vertex and jump, deduplicated.
pub fn edges(g: &CirculantGraph) -> EdgeSet {
    let n = g.n();
    let pairs = (0..n).flat_map(|x| g.jumps.iter().map(move |r| (x, (x + r) % n)));
    let edges = pairs.map(|(a, b)| (a.min(b), a.max(b))).collect();
    EdgeSet::normalized(n, edges)
}

/// Marker for an edge set that is not `C_n(S)` for any jump set `S` under the
/// natural labelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotCirculant;

/// Recover `S` with `edges(C_n(S)) == e`, if such `S` exists.
///
/// `S` is read off the neighbours of 0; `e` is circulant iff it has exactly the
/// edge count of `C_n(S)` and every edge difference reduces into `S`.
pub fn circulant_jumps_of(e: &EdgeSet) -> std::result::Result<JumpSet, NotCirculant> {
    let n = e.n();
    let from_zero: Vec<u32> = e.iter().filter(|&(a, _)| a == 0).map(|(_, b)| b).collect();
    if from_zero.is_empty() {
        return Err(NotCirculant);
    }
    let s = JumpSet::from_residues(n, from_zero);
    if e.len() != n as usize * s.degree() / 2 {
        return Err(NotCirculant);
    }
    let mask = s.membership();
    if e.iter().all(|(a, b)| mask[reflexive(b - a, n) as usize]) {
        Ok(s)
    } else {
        Err(NotCirculant)
    }
}

/// `k . C_n(R) = C_{kn}(kR)`.
pub fn scale(k: u32, g: &CirculantGraph) -> Result<CirculantGraph> {
    if k == 0 {
        return Err(Error::RangeViolation("scale factor must be positive".into()));
    }
    let n = g.n() * k;
    let jumps = JumpSet::from_residues(n, g.jumps.iter().map(|r| r * k));
    Ok(CirculantGraph::from_jumps(jumps))
}

/// Number of connected components of `C_n(R)`, which is `gcd(n, R)`.
pub fn component_count(g: &CirculantGraph) -> u32 {
    g.jumps.iter().fold(g.n(), |acc, r| acc.gcd(&r))
}

/// A permutation of `Z_n` given by its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VertexPermutation {
    image: Vec<u32>,
}

impl VertexPermutation {
    /// Wrap an image table, checking that it is a bijection on `[0, len)`.
    pub fn new(image: Vec<u32>) -> Result<Self> {
        let p = Self { image };
        if p.is_bijection() {
            Ok(p)
        } else {
            Err(Error::RangeViolation("image table is not a bijection".into()))
        }
    }

    pub(crate) fn from_table_unchecked(image: Vec<u32>) -> Self {
        Self { image }
    }

    pub fn identity(n: u32) -> Self {
        Self { image: (0..n).collect() }
    }

    pub fn n(&self) -> u32 {
        self.image.len() as u32
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.image[v as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.image
    }

    pub fn is_bijection(&self) -> bool {
        let n = self.image.len();
        let mut seen = vec![false; n];
        self.image.iter().all(|&v| {
            let v = v as usize;
            v < n && !std::mem::replace(&mut seen[v], true)
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (v, &w) in self.image.iter().enumerate() {
            inv[w as usize] = v as u32;
        }
        Self { image: inv }
    }

    /// `self` after `first`: `v -> self(first(v))`.
    pub fn after(&self, first: &Self) -> Self {
        Self { image: first.image.iter().map(|&v| self.apply(v)).collect() }
    }

    /// Image of an edge set. Requires matching order.
    pub fn map_edges(&self, e: &EdgeSet) -> EdgeSet {
        debug_assert_eq!(self.n(), e.n());
        let edges = e
            .iter()
            .map(|(a, b)| {
                let (x, y) = (self.apply(a), self.apply(b));
                (x.min(y), x.max(y))
            })
            .collect();
        EdgeSet::normalized(e.n(), edges)
    }
}
