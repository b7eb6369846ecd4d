//! Arithmetic on residues modulo `n`: units, reflexive reduction and the
//! admissible `m` values of a Type-2 transform.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::JumpSet;

/// An element of `Z_n`, always stored in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Residue {
    value: u32,
    n: u32,
}

impl Residue {
    /// Reduce an arbitrary integer modulo `n`.
    pub fn new(value: i64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModulus { n, min: 1 });
        }
        Ok(Self { value: value.rem_euclid(n as i64) as u32, n })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.n
    }

    /// Representative in `[0, n/2]` of the class `{v, -v}`.
    pub fn reflexive(self) -> u32 {
        reflexive(self.value, self.n)
    }
}

/// `min(v mod n, n - v mod n)`.
#[inline]
pub fn reflexive(v: u32, n: u32) -> u32 {
    let r = v % n;
    if r > n / 2 {
        n - r
    } else {
        r
    }
}

/// `a * b mod n` without overflow.
#[inline]
pub fn mul_mod(a: u32, b: u32, n: u32) -> u32 {
    ((a as u64 * b as u64) % n as u64) as u32
}

/// The multiplicative group of `Z_n`, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitGroup {
    n: u32,
    elements: Vec<u32>,
}

impl UnitGroup {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Units of `Z_n` in ascending order. Requires `n >= 2`.
pub fn units(n: u32) -> Result<UnitGroup> {
    if n < 2 {
        return Err(Error::InvalidModulus { n, min: 2 });
    }
    let elements = (1..n).filter(|x| x.gcd(&n) == 1).collect();
    Ok(UnitGroup { n, elements })
}

/// Reduce raw integers to a jump set: each value `v` becomes
/// `min(v mod n, n - v mod n)`, then duplicates are removed.
pub fn reflexive_reduce(n: u32, values: &[i64]) -> Result<JumpSet> {
    JumpSet::new(n, values)
}

/// All `m > 1` with `m^3 | n` and `m | gcd(n, r)` for some jump `r`, ascending.
pub fn valid_m_values(jumps: &JumpSet) -> Vec<u32> {
    let n = jumps.n();
    (2..=n)
        .take_while(|m| (*m as u64).pow(3) <= n as u64)
        .filter(|m| n % (m * m * m) == 0)
        .filter(|m| jumps.iter().any(|r| r.gcd(&n) % m == 0))
        .collect()
}

/// Trial-division primality test, adequate for the small moduli used here.
pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| d * d <= p).all(|d| p % d != 0)
}
