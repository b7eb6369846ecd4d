//! Two infinite families of Type-2 isomorphic circulants: a pair family on
//! `Z_{8n}` with `m = 2`, and a `p`-cycle family on `Z_{np^3}` with `m = p`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CirculantGraph, JumpSet};
use crate::residues::is_prime;
use crate::type1::same_orbit;
use crate::type2::{theta_image, theta_permutation, verify_certificate, ThetaParams};

/// `R = {2, 2s-1, 4n-(2s-1)}` and `S = {2, 2n-(2s-1), 2n+2s-1}` over `Z_{8n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Family8nInstance {
    pub n: u32,
    pub s: u32,
    pub source: JumpSet,
    pub target: JumpSet,
}

impl Family8nInstance {
    /// Order of the graphs, `8n`.
    pub fn order(&self) -> u32 {
        8 * self.n
    }

    /// `R = S`, which happens exactly when `n = 2s - 1`.
    pub fn is_degenerate(&self) -> bool {
        self.source == self.target
    }
}

/// Instance of the `Z_{8n}` family. Requires `n >= 2` and `1 <= s <= n`.
pub fn family_8n(n: u32, s: u32) -> Result<Family8nInstance> {
    if n < 2 || s < 1 || s > n {
        return Err(Error::RangeViolation(format!(
            "family_8n requires n >= 2 and 1 <= s <= n, got n={n}, s={s}"
        )));
    }
    let (n64, q) = (n as i64, 2 * s as i64 - 1);
    let order = 8 * n;
    let source = JumpSet::new(order, &[2, q, 4 * n64 - q])?;
    let target = JumpSet::new(order, &[2, 2 * n64 - q, 2 * n64 + q])?;
    Ok(Family8nInstance { n, s, source, target })
}

/// Check both transforms `t = n, 3n` in both directions, certificate validity
/// and, for a proper pair, that `S` lies outside `Ad(R)`.
pub fn verify_family_8n(inst: &Family8nInstance) -> bool {
    let order = inst.order();
    let (r, s) = (&inst.source, &inst.target);
    let gr = CirculantGraph::from_jumps(r.clone());
    let gs = CirculantGraph::from_jumps(s.clone());
    let maps = [inst.n, 3 * inst.n].into_iter().all(|t| {
        let Ok(p) = ThetaParams::new(order, 2, t) else { return false };
        let pi = theta_permutation(&p);
        theta_image(r, &p).as_ref() == Ok(s)
            && theta_image(s, &p).as_ref() == Ok(r)
            && verify_certificate(&gr, &gs, &pi)
    });
    maps && (inst.is_degenerate() || same_orbit(r, s).is_none())
}

/// `R_i` of the `Z_{np^3}` family for given `(n, p, x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyNp3Instance {
    pub n: u32,
    pub p: u32,
    pub x: u32,
    pub y: u32,
    pub i: u32,
    pub d: u32,
    /// The listed values before reduction, `2p + 2` entries (may be negative).
    pub raw: Vec<i64>,
    pub jumps: JumpSet,
}

impl FamilyNp3Instance {
    /// Order of the graph, `np^3`.
    pub fn order(&self) -> u32 {
        self.n * self.p.pow(3)
    }
}

fn check_np3_ranges(n: u32, p: u32, x: u32, y: u32) -> Result<()> {
    let fail = |what: &str| Err(Error::RangeViolation(format!("family_np3: {what}")));
    if n < 1 {
        return fail("n must be positive");
    }
    if p < 3 || !is_prime(p) {
        return fail("p must be an odd prime");
    }
    if x < 1 || x >= p {
        return fail("x must lie in [1, p-1]");
    }
    if y >= n * p {
        return fail("y must lie in [0, np-1]");
    }
    if x + y * p > n * p * p - 1 {
        return fail("x + yp must not exceed np^2 - 1");
    }
    Ok(())
}

/// Instance `R_i` of the `Z_{np^3}` family with `d = (i-1)xpn + x + yp`.
pub fn family_np3(n: u32, p: u32, x: u32, y: u32, i: u32) -> Result<FamilyNp3Instance> {
    check_np3_ranges(n, p, x, y)?;
    if i < 1 || i > p {
        return Err(Error::RangeViolation(format!("family_np3: i must lie in [1, {p}]")));
    }
    let order = n * p.pow(3);
    let d = (i - 1) * x * p * n + x + y * p;
    let (block, dd, pp) = ((n * p * p) as i64, d as i64, p as i64);
    let mut raw = vec![pp, dd];
    for k in 1..pp {
        raw.push(k * block - dd);
        raw.push(k * block + dd);
    }
    raw.push(order as i64 - dd);
    raw.push(order as i64 - pp);
    let jumps = JumpSet::new(order, &raw)?;
    Ok(FamilyNp3Instance { n, p, x, y, i, d, raw, jumps })
}

/// Check `theta_{np^3,p,jn}(R_i) = R_{i+j mod p}` for all `i, j` in `[1, p]`, and
/// that the `p` sets lie in pairwise distinct Adám orbits.
pub fn verify_family_np3(n: u32, p: u32, x: u32, y: u32) -> Result<bool> {
    let sets: Vec<JumpSet> = (1..=p)
        .map(|i| family_np3(n, p, x, y, i).map(|f| f.jumps))
        .collect::<Result<_>>()?;
    let order = n * p.pow(3);
    let index = |k: u32| (k - 1) % p;
    for i in 1..=p {
        for j in 1..=p {
            let params = ThetaParams::new(order, p, j * n)?;
            let target = &sets[index(i + j) as usize];
            if theta_image(&sets[index(i) as usize], &params).as_ref() != Ok(target) {
                return Ok(false);
            }
        }
    }
    let distinct = sets
        .iter()
        .enumerate()
        .all(|(a, r)| sets[a + 1..].iter().all(|s| same_orbit(r, s).is_none()));
    Ok(distinct)
}
