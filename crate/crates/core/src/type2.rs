//! Type-2 isomorphism via the vertex permutations
//! `theta_{n,m,t}(x) = x + (x mod m) * t * m  (mod n)`, and the classifier
//! that combines it with Type-1.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edges, CirculantGraph, JumpSet, NotCirculant, VertexPermutation};
use crate::residues::{reflexive, valid_m_values};
use crate::type1::{adam_orbit, same_orbit, AdamOrbit};

/// Parameters of `theta_{n,m,t}`.
///
/// Invariants: `m > 1`, `m^3 | n`, `0 <= t < n/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ThetaParams {
    n: u32,
    m: u32,
    t: u32,
}

impl ThetaParams {
    pub fn new(n: u32, m: u32, t: u32) -> Result<Self> {
        let invalid = |reason| Err(Error::InvalidTheta { n, m, t, reason });
        if m < 2 {
            return invalid("m must exceed 1");
        }
        if (m as u64).pow(3) > n as u64 || n % (m * m * m) != 0 {
            return invalid("m^3 must divide n");
        }
        if t >= n / m {
            return invalid("t must be below n/m");
        }
        Ok(Self { n, m, t })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// `theta(x)` for `x` in `[0, n)`.
    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        let shift = (self.t as u64 * self.m as u64) % self.n as u64;
        ((x as u64 + (x % self.m) as u64 * shift) % self.n as u64) as u32
    }
}

/// `theta_{n,m,t}` as an explicit permutation of `Z_n`.
pub fn theta_permutation(p: &ThetaParams) -> VertexPermutation {
    VertexPermutation::from_table_unchecked((0..p.n).map(|x| p.apply(x)).collect())
}

/// The jump set `S` with `theta(C_n(R)) = C_n(S)`, if the image is circulant.
///
/// Since `theta(0) = 0`, `S` must consist of the images of the neighbours of 0.
/// The image is `C_n(S)` iff the degrees agree and every image edge has its
/// difference in `S`. Panics if `R` and `p` have different orders.
pub fn theta_image(jumps: &JumpSet, p: &ThetaParams) -> std::result::Result<JumpSet, NotCirculant> {
    assert_eq!(jumps.n(), p.n, "theta parameters and jump set disagree on n");
    let table: Vec<u32> = (0..p.n).map(|x| p.apply(x)).collect();
    image_from_table(jumps, &table)
}

fn image_from_table(jumps: &JumpSet, table: &[u32]) -> std::result::Result<JumpSet, NotCirculant> {
    let n = jumps.n();
    let s = JumpSet::from_residues(n, jumps.neighbours_of_zero().into_iter().map(|v| table[v as usize]));
    if s.degree() != jumps.degree() {
        return Err(NotCirculant);
    }
    let mask = s.membership();
    for x in 0..n {
        let tx = table[x as usize];
        for r in jumps.iter() {
            let ty = table[((x + r) % n) as usize];
            let d = (ty + n - tx) % n;
            if !mask[reflexive(d, n) as usize] {
                return Err(NotCirculant);
            }
        }
    }
    Ok(s)
}

/// Check that `pi` maps `edges(C_n(R))` exactly onto `edges(C_n(S))`.
pub fn verify_certificate(r: &CirculantGraph, s: &CirculantGraph, pi: &VertexPermutation) -> bool {
    r.n() == s.n() && pi.n() == r.n() && pi.is_bijection() && pi.map_edges(&edges(r)) == edges(s)
}

/// Explicit witness of a Type-2 isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Type2Certificate {
    pub m: u32,
    pub t: u32,
    pub permutation: VertexPermutation,
}

/// Outcome of [`classify`], in precedence order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Identical,
    Type1 { x: u32 },
    Type2 { m: u32, t: u32, certificate: Type2Certificate },
    /// Neither relation was found. This is not a proof of non-isomorphism.
    Unresolved,
}

/// A classified pair of jump sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ClassificationRecord {
    pub n: u32,
    pub r: JumpSet,
    pub s: JumpSet,
    pub verdict: Verdict,
}

/// Classify `(R, S)`: Identical, then Type-1 with the least unit, then Type-2
/// with the least `(m, t)`, otherwise Unresolved.
pub fn classify(r: &JumpSet, s: &JumpSet) -> Result<ClassificationRecord> {
    if r.n() != s.n() {
        return Err(Error::OrderMismatch { left: r.n(), right: s.n() });
    }
    let record = |verdict| Ok(ClassificationRecord { n: r.n(), r: r.clone(), s: s.clone(), verdict });
    if r == s {
        return record(Verdict::Identical);
    }
    if let Some(x) = same_orbit(r, s) {
        return record(Verdict::Type1 { x });
    }
    if r.len() == s.len() && r.len() >= 3 {
        for p in theta_sweep(r) {
            if theta_image(r, &p).as_ref() == Ok(s) {
                let certificate = Type2Certificate { m: p.m, t: p.t, permutation: theta_permutation(&p) };
                debug_assert!(verify_certificate(
                    &CirculantGraph::from_jumps(r.clone()),
                    &CirculantGraph::from_jumps(s.clone()),
                    &certificate.permutation
                ));
                return record(Verdict::Type2 { m: p.m, t: p.t, certificate });
            }
        }
    }
    record(Verdict::Unresolved)
}

/// All non-identity `theta_{n,m,t}` admissible for `R`, ordered by `(m, t)`.
pub fn theta_sweep(jumps: &JumpSet) -> impl Iterator<Item = ThetaParams> {
    let n = jumps.n();
    valid_m_values(jumps)
        .into_iter()
        .flat_map(move |m| (1..n / m).map(move |t| ThetaParams { n, m, t }))
}

/// A jump set reached from `R` by a Type-2 transform.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Type2Partner {
    pub jumps: JumpSet,
    pub m: u32,
    pub t: u32,
}

/// Counters gathered during a Type-2 sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SweepStats {
    pub theta_evaluations: u64,
    pub circulant_images: u64,
}

impl std::ops::AddAssign for SweepStats {
    fn add_assign(&mut self, o: Self) {
        self.theta_evaluations += o.theta_evaluations;
        self.circulant_images += o.circulant_images;
    }
}

/// Jump sets `S != R` outside `Ad(R)` with `theta(C_n(R)) = C_n(S)`, each with
/// its least `(m, t)`, in order of that `(m, t)`. Empty when `|R| < 3`.
pub fn type2_partners(jumps: &JumpSet) -> Vec<Type2Partner> {
    let orbit = adam_orbit(jumps);
    partners_outside(jumps, &orbit).0
}

/// [`type2_partners`] against a precomputed orbit of `R`.
pub(crate) fn partners_outside(jumps: &JumpSet, orbit: &AdamOrbit) -> (Vec<Type2Partner>, SweepStats) {
    let mut stats = SweepStats::default();
    let mut out: Vec<Type2Partner> = Vec::new();
    if jumps.len() < 3 {
        return (out, stats);
    }
    for p in theta_sweep(jumps) {
        stats.theta_evaluations += 1;
        let table: Vec<u32> = (0..p.n).map(|x| p.apply(x)).collect();
        let Ok(s) = image_from_table(jumps, &table) else { continue };
        stats.circulant_images += 1;
        if s != *jumps && !orbit.contains(&s) && !out.iter().any(|q| q.jumps == s) {
            out.push(Type2Partner { jumps: s, m: p.m, t: p.t });
        }
    }
    (out, stats)
}
