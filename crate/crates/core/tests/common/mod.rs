//! Independent oracles and shared property checks.
//!
//! The oracles here recompute everything from first principles on plain
//! vectors and sets. They never call into the crate beyond constructing inputs.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use circulant::{
    adam_image, adam_orbit, component_count, edges, enumerate_type2, same_orbit, scale, spectra_equal,
    theta_image, theta_permutation, type2_partners, units, valid_m_values, verify_certificate, CirculantGraph,
    EnumerationReport, JumpSet, ThetaParams, VertexPermutation,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::seq::SliceRandom;
use rand::SeedableRng;

pub const CASES: u32 = 256;

pub fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, ..ProptestConfig::default() }
}

// ---------- oracles ----------

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn naive_reduce(n: u32, values: &[i64]) -> Vec<u32> {
    let n = i64::from(n);
    let set: BTreeSet<u32> = values
        .iter()
        .map(|v| {
            let r = v.rem_euclid(n);
            assert_ne!(r, 0, "zero jump");
            r.min(n - r) as u32
        })
        .collect();
    set.into_iter().collect()
}

pub fn naive_units(n: u32) -> Vec<u32> {
    (1..n).filter(|&x| gcd(u64::from(n), u64::from(x)) == 1).collect()
}

pub fn naive_image(n: u32, r: &[u32], x: u32) -> Vec<u32> {
    let vals: Vec<i64> = r.iter().map(|&v| i64::from(v) * i64::from(x)).collect();
    naive_reduce(n, &vals)
}

pub fn naive_orbit(n: u32, r: &[u32]) -> BTreeSet<Vec<u32>> {
    naive_units(n).into_iter().map(|x| naive_image(n, r, x)).collect()
}

pub fn naive_edges(n: u32, r: &[u32]) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for v in 0..n {
        for &j in r {
            let w = (v + j) % n;
            out.insert((v.min(w), v.max(w)));
        }
    }
    out
}

pub fn naive_theta(n: u32, m: u32, t: u32, x: u32) -> u32 {
    ((u64::from(x) + u64::from(x % m) * u64::from(t) * u64::from(m)) % u64::from(n)) as u32
}

/// Map every edge through theta and test rotation invariance of the result.
pub fn naive_theta_image(n: u32, m: u32, t: u32, r: &[u32]) -> Option<Vec<u32>> {
    let image: BTreeSet<(u32, u32)> = naive_edges(n, r)
        .into_iter()
        .map(|(a, b)| {
            let (a, b) = (naive_theta(n, m, t, a), naive_theta(n, m, t, b));
            (a.min(b), a.max(b))
        })
        .collect();
    let diffs: Vec<i64> = image.iter().filter(|e| e.0 == 0).map(|e| i64::from(e.1)).collect();
    if diffs.is_empty() {
        return None;
    }
    let s = naive_reduce(n, &diffs);
    (naive_edges(n, &s) == image).then_some(s)
}

pub fn naive_components(n: u32, r: &[u32]) -> u32 {
    let mut parent: Vec<u32> = (0..n).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for (a, b) in naive_edges(n, r) {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra as usize] = rb;
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count() as u32
}

/// Admissible m for `r` in `Z_n`: `m > 1`, `m^3 | n`, `m | gcd(n, r_i)` for some i.
pub fn naive_valid_m(n: u32, r: &[u32]) -> Vec<u32> {
    (2..=n)
        .take_while(|m| m * m * m <= n)
        .filter(|m| n % (m * m * m) == 0 && r.iter().any(|&v| gcd(u64::from(n), u64::from(v)) % u64::from(*m) == 0))
        .collect()
}

/// Type-2 classes over raw k-subsets, built by brute force.
pub fn naive_classes(n: u32, k: usize) -> Vec<Vec<Vec<u32>>> {
    let half = n / 2;
    let sets: Vec<Vec<u32>> = subsets(half, k);
    let index: BTreeMap<Vec<u32>, usize> = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut uf = UnionFind::new(sets.len());
    let mut linked = vec![false; sets.len()];
    for (i, r) in sets.iter().enumerate() {
        let orbit = naive_orbit(n, r);
        for m in naive_valid_m(n, r) {
            for t in 1..n / m {
                if let Some(s) = naive_theta_image(n, m, t, r) {
                    if &s != r && !orbit.contains(&s) {
                        let j = index[&s];
                        uf.union(i, j);
                        linked[i] = true;
                        linked[j] = true;
                    }
                }
            }
        }
    }
    uf.groups(&sets, &linked)
}

pub fn subsets(half: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(start: u32, half: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=half {
            cur.push(v);
            go(v + 1, half, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, half, k, &mut Vec::new(), &mut out);
    out
}

pub struct UnionFind(Vec<usize>);

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Groups of linked items, each sorted, ordered by least member.
    pub fn groups<T: Clone + Ord>(&mut self, items: &[T], linked: &[bool]) -> Vec<Vec<T>> {
        let mut by_root: BTreeMap<usize, Vec<T>> = BTreeMap::new();
        for i in (0..items.len()).filter(|&i| linked[i]) {
            let root = self.find(i);
            by_root.entry(root).or_default().push(items[i].clone());
        }
        let mut out: Vec<Vec<T>> = by_root
            .into_values()
            .map(|mut g| {
                g.sort();
                g
            })
            .collect();
        out.sort();
        out
    }
}

// ---------- shared inputs ----------

pub fn js(n: u32, r: &[i64]) -> JumpSet {
    JumpSet::new(n, r).unwrap()
}

pub fn raw(j: &JumpSet) -> Vec<u32> {
    j.as_slice().to_vec()
}

pub fn report(n: u32, k: usize) -> &'static EnumerationReport {
    static N48: OnceLock<EnumerationReport> = OnceLock::new();
    static N16: OnceLock<EnumerationReport> = OnceLock::new();
    static N24: OnceLock<EnumerationReport> = OnceLock::new();
    let cell = match (n, k) {
        (48, 3) => &N48,
        (16, 3) => &N16,
        (24, 3) => &N24,
        _ => panic!("no cached report for ({n}, {k})"),
    };
    cell.get_or_init(|| enumerate_type2(n, k, 1).unwrap())
}

/// Every directed link `(R, S, m, t)` of the cached small enumerations.
pub fn link_pool() -> &'static [(JumpSet, JumpSet, u32, u32)] {
    static POOL: OnceLock<Vec<(JumpSet, JumpSet, u32, u32)>> = OnceLock::new();
    POOL.get_or_init(|| {
        [(16, 3), (48, 3)]
            .into_iter()
            .flat_map(|(n, k)| report(n, k).classes.iter().flat_map(|c| c.links.iter()))
            .map(|l| (l.from.clone(), l.to.clone(), l.m, l.t))
            .collect()
    })
}

/// `(n, raw values)` with `3 <= n <= 120` and no value divisible by `n`.
pub fn arb_raw_jumps() -> impl Strategy<Value = (u32, Vec<i64>)> {
    (3u32..=120).prop_flat_map(|n| {
        let v = (-1000i64..1000).prop_filter("nonzero mod n", move |v| v.rem_euclid(i64::from(n)) != 0);
        (Just(n), prop::collection::vec(v, 1..6))
    })
}

/// `(n, m, t, R)` with `m^3 | n` and `t` in `[1, n/m - 1]`.
pub fn arb_theta_input() -> impl Strategy<Value = (u32, u32, u32, Vec<i64>)> {
    (prop::sample::select(vec![2u32, 3]), 1u32..=8).prop_flat_map(|(m, q)| {
        let n = m * m * m * q;
        (Just(n), Just(m), 1..n / m, prop::collection::vec(1i64..=i64::from(n / 2), 1..6))
    })
}

// ---------- property checks ----------

pub type PropResult = Result<(), TestCaseError>;

pub fn reflexive_idempotent((n, values): (u32, Vec<i64>)) -> PropResult {
    let once = circulant::reflexive_reduce(n, &values).unwrap();
    let again: Vec<i64> = once.iter().map(i64::from).collect();
    prop_assert_eq!(&circulant::reflexive_reduce(n, &again).unwrap(), &once);
    prop_assert!(once.iter().all(|r| 1 <= r && r <= n / 2));
    prop_assert_eq!(raw(&once), naive_reduce(n, &values));
    let v = values[0];
    prop_assert_eq!(circulant::reflexive_reduce(n, &[v, i64::from(n) - v]).unwrap().len(), 1);
    Ok(())
}

pub fn orbit_equivalence((n, values, pick, other): (u32, Vec<i64>, usize, Vec<i64>)) -> PropResult {
    let r = js(n, &values);
    let group = units(n).unwrap();
    let x = group.elements()[pick % group.len()];
    let image = adam_image(&r, x).unwrap();
    let orbit = adam_orbit(&r);
    prop_assert!(same_orbit(&r, &image).is_some());
    prop_assert_eq!(&adam_orbit(&image), &orbit);
    prop_assert!(orbit.contains(&image));
    prop_assert_eq!(group.len() % orbit.len(), 0);
    let s = js(n, &other);
    let a = same_orbit(&r, &s).is_some();
    let b = adam_orbit(&s) == orbit;
    let c = orbit.contains(&s);
    prop_assert!(a == b && b == c, "iff broken: {} {} {}", a, b, c);
    prop_assert_eq!(c, naive_orbit(n, &raw(&r)).contains(&raw(&s)));
    if let Some(w) = same_orbit(&r, &s) {
        prop_assert_eq!(&adam_image(&r, w).unwrap(), &s);
    }
    Ok(())
}

pub fn theta_bijective((n, m, t, values): (u32, u32, u32, Vec<i64>)) -> PropResult {
    let p = ThetaParams::new(n, m, t).unwrap();
    let pi = theta_permutation(&p);
    prop_assert!(pi.is_bijection());
    for x in 0..n {
        prop_assert_eq!(pi.apply(x), naive_theta(n, m, t, x));
        if x % m == 0 {
            prop_assert_eq!(pi.apply(x), x);
        }
    }
    let back = theta_permutation(&ThetaParams::new(n, m, n / m - t).unwrap());
    prop_assert_eq!(back.after(&pi), VertexPermutation::identity(n));
    let r = js(n, &values);
    let fast = theta_image(&r, &p).ok().map(|s| raw(&s));
    prop_assert_eq!(fast, naive_theta_image(n, m, t, &raw(&r)));
    Ok(())
}

pub fn m_divisible_fixed((n, m, t, values): (u32, u32, u32, Vec<i64>)) -> PropResult {
    let r = js(n, &values);
    if let Ok(s) = theta_image(&r, &ThetaParams::new(n, m, t).unwrap()) {
        for j in r.iter().filter(|j| j % m == 0) {
            prop_assert!(s.contains(j), "jump {} moved", j);
        }
    }
    let fixed: Vec<i64> = r.iter().map(|j| i64::from(j) * i64::from(m)).filter(|v| v % i64::from(n) != 0).collect();
    if !fixed.is_empty() {
        let mr = js(n, &fixed);
        prop_assert_eq!(&theta_image(&mr, &ThetaParams::new(n, m, t).unwrap()).unwrap(), &mr);
    }
    Ok(())
}

pub fn union_stable((pick, mask): (usize, u64)) -> PropResult {
    let pool = link_pool();
    let (r, s, m, t) = &pool[pick % pool.len()];
    let n = r.n();
    let extra: Vec<u32> = (1..=n / 2 / m)
        .map(|q| q * m)
        .enumerate()
        .filter(|(i, v)| mask >> (i % 64) & 1 == 1 && !r.contains(*v) && !s.contains(*v))
        .map(|(_, v)| v)
        .collect();
    let join = |a: &JumpSet| {
        let v: Vec<i64> = a.iter().chain(extra.iter().copied()).map(i64::from).collect();
        js(n, &v)
    };
    let p = ThetaParams::new(n, *m, *t).unwrap();
    prop_assert_eq!(&theta_image(r, &p).unwrap(), s);
    prop_assert_eq!(theta_image(&join(r), &p).unwrap(), join(s));
    Ok(())
}

/// Lift `pi` on `Z_n` to `Z_{kn}` via `k q + c -> k pi(q) + c`.
pub fn lift(pi: &VertexPermutation, k: u32) -> VertexPermutation {
    let n = pi.n();
    VertexPermutation::new((0..k * n).map(|v| k * pi.apply(v / k) + v % k).collect()).unwrap()
}

pub fn scaling_lift((pick, k): (usize, u32)) -> PropResult {
    let pool = link_pool();
    let (r, s, m, t) = &pool[pick % pool.len()];
    let pi = theta_permutation(&ThetaParams::new(r.n(), *m, *t).unwrap());
    let (gr, gs) = (CirculantGraph::from_jumps(r.clone()), CirculantGraph::from_jumps(s.clone()));
    prop_assert!(verify_certificate(&gr, &gs, &pi));
    let (kr, ks) = (scale(k, &gr).unwrap(), scale(k, &gs).unwrap());
    prop_assert_eq!(edges(&kr).len(), k as usize * edges(&gr).len());
    prop_assert!(verify_certificate(&kr, &ks, &lift(&pi, k)));
    prop_assert_eq!(component_count(&kr), naive_components(kr.n(), &raw(kr.jumps())));
    prop_assert_eq!(component_count(&kr), component_count(&ks));
    prop_assert!(spectra_equal(&kr, &ks));
    Ok(())
}

/// Classes rebuilt by union-find in a shuffled traversal order.
pub fn shuffled_classes(n: u32, k: usize, seed: u64) -> Vec<Vec<JumpSet>> {
    let mut sets: Vec<JumpSet> = circulant::enumerate_jumpsets(n, k).unwrap().collect();
    sets.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
    let index: BTreeMap<JumpSet, usize> = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut uf = UnionFind::new(sets.len());
    let mut linked = vec![false; sets.len()];
    for (i, r) in sets.iter().enumerate() {
        for p in partners(r) {
            let j = index[&p];
            uf.union(i, j);
            linked[i] = true;
            linked[j] = true;
        }
    }
    uf.groups(&sets, &linked)
}

fn partners(r: &JumpSet) -> Vec<JumpSet> {
    static CACHE: OnceLock<std::sync::Mutex<BTreeMap<JumpSet, Vec<JumpSet>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(r) {
        return p.clone();
    }
    let p: Vec<JumpSet> = type2_partners(r).into_iter().map(|p| p.jumps).collect();
    cache.lock().unwrap().insert(r.clone(), p.clone());
    p
}

pub fn shuffled_determinism((which, seed): (usize, u64)) -> PropResult {
    let (n, k) = [(16, 3), (24, 3), (48, 3)][which % 3];
    let expected: Vec<Vec<JumpSet>> = report(n, k).classes.iter().map(|c| c.members.clone()).collect();
    prop_assert_eq!(shuffled_classes(n, k, seed), expected);
    Ok(())
}

pub fn valid_m_direct((n, values): (u32, Vec<i64>)) -> PropResult {
    let r = js(n, &values);
    let ms = valid_m_values(&r);
    prop_assert!(ms.iter().all(|m| n % (m * m * m) == 0));
    prop_assert_eq!(ms, naive_valid_m(n, &raw(&r)));
    Ok(())
}

/// Eigenvalues of `C_n(R)`: `sum_r 2 cos(2 pi j r / n)`, a jump of `n/2`
/// counted once. Sorted ascending.
pub fn naive_spectrum(n: u32, r: &[u32]) -> Vec<f64> {
    let mut out: Vec<f64> = (0..n)
        .map(|j| {
            r.iter()
                .map(|&v| {
                    let c = (2.0 * std::f64::consts::PI * f64::from(j) * f64::from(v) / f64::from(n)).cos();
                    if 2 * v == n { c } else { 2.0 * c }
                })
                .sum()
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}
