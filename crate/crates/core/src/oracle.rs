//! Independent isomorphism oracle. Uses only adjacency structure and
//! eigenvalues, never units or `theta`, so it can cross-check the classifier.

use serde::Serialize;

use crate::graph::{component_count, CirculantGraph, JumpSet, VertexPermutation};
use crate::type2::verify_certificate;

/// Absolute tolerance for floating-point eigenvalue comparison.
pub const SPECTRUM_TOLERANCE: f64 = 1e-9;

/// Default node-expansion budget for [`brute_force_iso`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Eigenvalues `sum_{d in N(0)} cos(2 pi q d / n)` for `q` in `[0, n)`, ascending.
pub fn spectrum(g: &CirculantGraph) -> Vec<f64> {
    let n = g.n();
    let nbrs = g.jumps().neighbours_of_zero();
    let mut out: Vec<f64> = (0..n)
        .map(|q| {
            nbrs.iter()
                .map(|&d| {
                    let k = (q as u64 * d as u64 % n as u64) as f64;
                    (std::f64::consts::TAU * k / n as f64).cos()
                })
                .sum()
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Each eigenvalue as the multiset of root-of-unity exponents it sums.
/// Equal multisets imply equal spectra; the converse can fail.
fn symbolic_spectrum(g: &CirculantGraph) -> Vec<Vec<u32>> {
    let n = g.n();
    let nbrs = g.jumps().neighbours_of_zero();
    let mut out: Vec<Vec<u32>> = (0..n)
        .map(|q| {
            let mut e: Vec<u32> = nbrs.iter().map(|&d| (q as u64 * d as u64 % n as u64) as u32).collect();
            e.sort_unstable();
            e
        })
        .collect();
    out.sort();
    out
}

/// Spectral equality: exact exponent multisets first, then floats within
/// [`SPECTRUM_TOLERANCE`].
pub fn spectra_equal(a: &CirculantGraph, b: &CirculantGraph) -> bool {
    if a.n() != b.n() {
        return false;
    }
    if symbolic_spectrum(a) == symbolic_spectrum(b) {
        return true;
    }
    spectrum(a)
        .iter()
        .zip(spectrum(b))
        .all(|(x, y)| (x - y).abs() <= SPECTRUM_TOLERANCE)
}

/// Reason two graphs were proven non-isomorphic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Distinguisher {
    Order,
    Degree,
    ComponentCount,
    Spectrum,
    /// The search tree was exhausted without a valid bijection.
    ExhaustedSearch,
}

/// Oracle outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum OracleVerdict {
    Isomorphic { permutation: VertexPermutation },
    NonIsomorphic { distinguisher: Distinguisher },
    Timeout { expansions: u64 },
}

impl OracleVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Self::Isomorphic { .. })
    }
}

/// Decide isomorphism of two circulants by individualization-refinement.
///
/// Vertex 0 of `a` is mapped to vertex 0 of `b` (circulants are vertex
/// transitive). A disconnected circulant is `g` copies of `C_{n/g}(R/g)`, so the
/// search runs on one component and the bijection is lifted. Returns `Timeout`
/// after `budget` node expansions.
pub fn brute_force_iso(a: &CirculantGraph, b: &CirculantGraph, budget: u64) -> OracleVerdict {
    let non = |distinguisher| OracleVerdict::NonIsomorphic { distinguisher };
    if a.n() != b.n() {
        return non(Distinguisher::Order);
    }
    if a.degree() != b.degree() {
        return non(Distinguisher::Degree);
    }
    let g = component_count(a);
    if g != component_count(b) {
        return non(Distinguisher::ComponentCount);
    }
    if !spectra_equal(a, b) {
        return non(Distinguisher::Spectrum);
    }
    let verdict = if g > 1 {
        let shrink = |h: &CirculantGraph| {
            let jumps: Vec<i64> = h.jumps().iter().map(|r| (r / g) as i64).collect();
            CirculantGraph::from_jumps(JumpSet::new(h.n() / g, &jumps).expect("component jumps are nonzero"))
        };
        match brute_force_iso(&shrink(a), &shrink(b), budget) {
            OracleVerdict::Isomorphic { permutation } => {
                let image = (0..a.n()).map(|v| v % g + g * permutation.apply(v / g)).collect();
                OracleVerdict::Isomorphic { permutation: VertexPermutation::new(image).expect("lifted bijection") }
            }
            other => other,
        }
    } else {
        Search::new(a, b, budget).run()
    };
    if let OracleVerdict::Isomorphic { permutation } = &verdict {
        assert!(verify_certificate(a, b, permutation), "oracle produced an invalid bijection");
    }
    verdict
}

struct Search {
    adj_a: Vec<Vec<u32>>,
    adj_b: Vec<Vec<u32>>,
    a: CirculantGraph,
    b: CirculantGraph,
    budget: u64,
    expansions: u64,
}

enum Outcome {
    Found(Vec<u32>),
    Exhausted,
    OutOfBudget,
}

impl Search {
    fn new(a: &CirculantGraph, b: &CirculantGraph, budget: u64) -> Self {
        let adj = |g: &CirculantGraph| (0..g.n()).map(|v| g.neighbours(v)).collect();
        Self { adj_a: adj(a), adj_b: adj(b), a: a.clone(), b: b.clone(), budget, expansions: 0 }
    }

    fn run(mut self) -> OracleVerdict {
        let n = self.adj_a.len();
        let mut ca = vec![0u32; n];
        let mut cb = vec![0u32; n];
        ca[0] = 1;
        cb[0] = 1;
        match self.descend(ca, cb) {
            Outcome::Found(image) => OracleVerdict::Isomorphic {
                permutation: VertexPermutation::new(image).expect("discrete colouring is a bijection"),
            },
            Outcome::Exhausted => OracleVerdict::NonIsomorphic { distinguisher: Distinguisher::ExhaustedSearch },
            Outcome::OutOfBudget => OracleVerdict::Timeout { expansions: self.expansions },
        }
    }

    fn descend(&mut self, ca: Vec<u32>, cb: Vec<u32>) -> Outcome {
        self.expansions += 1;
        if self.expansions > self.budget {
            return Outcome::OutOfBudget;
        }
        let Some((ca, cb, classes)) = self.refine(ca, cb) else {
            return Outcome::Exhausted;
        };
        let n = ca.len();
        if classes == n {
            let mut image = vec![0u32; n];
            let mut by_colour = vec![0u32; n];
            for (w, &c) in cb.iter().enumerate() {
                by_colour[c as usize] = w as u32;
            }
            for (v, &c) in ca.iter().enumerate() {
                image[v] = by_colour[c as usize];
            }
            let pi = VertexPermutation::new(image.clone()).expect("discrete colouring is a bijection");
            return if verify_certificate(&self.a, &self.b, &pi) { Outcome::Found(image) } else { Outcome::Exhausted };
        }
        // First non-singleton cell; individualize its least vertex of `a`.
        let mut sizes = vec![0usize; n];
        for &c in &ca {
            sizes[c as usize] += 1;
        }
        let cell = (0..n).find(|&c| sizes[c] > 1).expect("non-discrete colouring") as u32;
        let u = ca.iter().position(|&c| c == cell).expect("cell is non-empty");
        let fresh = n as u32;
        for w in (0..n).filter(|&w| cb[w] == cell) {
            let (mut na, mut nb) = (ca.clone(), cb.clone());
            na[u] = fresh;
            nb[w] = fresh;
            match self.descend(na, nb) {
                Outcome::Exhausted => continue,
                other => return other,
            }
        }
        Outcome::Exhausted
    }

    /// Refine both colourings jointly to a fixed point. Colour ids are ranks of
    /// `(colour, sorted neighbour colours)` over both graphs, so they are
    /// comparable across sides. Returns `None` if cell sizes diverge.
    fn refine(&self, mut ca: Vec<u32>, mut cb: Vec<u32>) -> Option<(Vec<u32>, Vec<u32>, usize)> {
        let n = ca.len();
        let mut classes = 0;
        loop {
            let sig = |adj: &[Vec<u32>], c: &[u32], v: usize| {
                let mut s: Vec<u32> = adj[v].iter().map(|&w| c[w as usize]).collect();
                s.sort_unstable();
                (c[v], s)
            };
            let mut all: Vec<((u32, Vec<u32>), bool, usize)> = Vec::with_capacity(2 * n);
            all.extend((0..n).map(|v| (sig(&self.adj_a, &ca, v), false, v)));
            all.extend((0..n).map(|v| (sig(&self.adj_b, &cb, v), true, v)));
            all.sort_unstable();
            let (mut na, mut nb) = (vec![0u32; n], vec![0u32; n]);
            let mut rank = 0u32;
            let mut count = [0usize; 2];
            for i in 0..all.len() {
                if i > 0 && all[i].0 != all[i - 1].0 {
                    if count[0] != count[1] {
                        return None;
                    }
                    count = [0, 0];
                    rank += 1;
                }
                let (_, side, v) = &all[i];
                count[usize::from(*side)] += 1;
                if *side { nb[*v] = rank } else { na[*v] = rank }
            }
            if count[0] != count[1] {
                return None;
            }
            let next = rank as usize + 1;
            ca = na;
            cb = nb;
            if next == classes {
                return Some((ca, cb, classes));
            }
            classes = next;
        }
    }
}
