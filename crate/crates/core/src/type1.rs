//! Type-1 (Adám) isomorphism: `C_n(R) ~ C_n(xR)` for units `x` of `Z_n`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::JumpSet;
use crate::residues::{mul_mod, units, UnitGroup};

/// `reflexive(x * R)` for a unit `x` of `Z_n`.
pub fn adam_image(jumps: &JumpSet, x: u32) -> Result<JumpSet> {
    let n = jumps.n();
    if x.gcd(&n) != 1 || x % n == 0 {
        return Err(Error::NotAUnit { n, x });
    }
    Ok(scaled_by_unit(jumps, x))
}

fn scaled_by_unit(jumps: &JumpSet, x: u32) -> JumpSet {
    let n = jumps.n();
    JumpSet::from_residues(n, jumps.iter().map(|r| mul_mod(r, x, n)))
}

/// The set of jump sets `{xR : x a unit}`, sorted ascending and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AdamOrbit {
    n: u32,
    members: Vec<JumpSet>,
}

impl AdamOrbit {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[JumpSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Lexicographically least member.
    pub fn representative(&self) -> &JumpSet {
        &self.members[0]
    }

    pub fn contains(&self, s: &JumpSet) -> bool {
        self.members.binary_search(s).is_ok()
    }
}

/// Adám orbit of `R`.
pub fn adam_orbit(jumps: &JumpSet) -> AdamOrbit {
    let group = units(jumps.n()).expect("JumpSet guarantees n >= 2");
    adam_orbit_with(jumps, &group)
}

/// Adám orbit of `R` using a precomputed unit group of the same modulus.
pub fn adam_orbit_with(jumps: &JumpSet, group: &UnitGroup) -> AdamOrbit {
    debug_assert_eq!(group.n(), jumps.n());
    let mut members: Vec<JumpSet> = group
        .elements()
        .iter()
        .map(|&x| scaled_by_unit(jumps, x))
        .collect();
    members.sort_unstable();
    members.dedup();
    AdamOrbit { n: jumps.n(), members }
}

/// The least unit `x` with `xR = S`, or `None` if `S` is outside `Ad(R)`.
pub fn same_orbit(r: &JumpSet, s: &JumpSet) -> Option<u32> {
    if r.n() != s.n() || r.len() != s.len() {
        return None;
    }
    let group = units(r.n()).ok()?;
    group
        .elements()
        .iter()
        .copied()
        .find(|&x| scaled_by_unit(r, x) == *s)
}
