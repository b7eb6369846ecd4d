//! Exhaustive Type-2 search over all `k`-element jump sets of `Z_n`.
//!
//! Type-2 classes are the connected components of the graph whose vertices are
//! the jump sets and whose edges join `R` and `S` when some admissible `theta`
//! maps `C_n(R)` onto `C_n(S)` with `S` outside `Ad(R)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixtures::FixtureClass;
use crate::graph::JumpSet;
use crate::residues::units;
use crate::type1::{adam_orbit_with, AdamOrbit};
use crate::type2::{partners_outside, SweepStats};

/// All `k`-subsets of `[1, n/2]` in lexicographic order; `C(n/2, k)` of them.
pub fn enumerate_jumpsets(n: u32, k: usize) -> Result<impl Iterator<Item = JumpSet>> {
    if n < 2 {
        return Err(Error::InvalidModulus { n, min: 2 });
    }
    let max = n / 2;
    if k < 1 || k > max as usize {
        return Err(Error::InvalidSize { n, k, max });
    }
    Ok((1..=max).combinations(k).map(move |c| {
        let raw: Vec<i64> = c.into_iter().map(i64::from).collect();
        JumpSet::new(n, &raw).expect("jumps in [1, n/2] are reduced")
    }))
}

/// A directed Type-2 relation `theta_{n,m,t}(C_n(from)) = C_n(to)` with the
/// least `(m, t)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Type2Link {
    pub from: JumpSet,
    pub to: JumpSet,
    pub m: u32,
    pub t: u32,
}

/// A connected component of the Type-2 relation with at least two members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Type2Class {
    pub members: Vec<JumpSet>,
    /// Least member of each member's Adám orbit, aligned with `members`.
    pub orbit_representatives: Vec<JumpSet>,
    pub m_values: Vec<u32>,
    pub links: Vec<Type2Link>,
}

impl Type2Class {
    /// The least `(m, t)` link leaving the least member.
    pub fn leading_link(&self) -> &Type2Link {
        self.links
            .iter()
            .filter(|l| l.from == self.members[0])
            .min_by_key(|l| (l.m, l.t))
            .expect("every member of a class has an outgoing link")
    }
}

/// Result of [`enumerate_type2`]. Every field except `elapsed_ms` is
/// deterministic; `elapsed_ms` is not serialized.
#[derive(Debug, Clone, Serialize)]
pub struct EnumerationReport {
    pub n: u32,
    pub k: usize,
    pub jumpset_count: usize,
    pub orbit_count: usize,
    pub pair_count: usize,
    pub triple_count: usize,
    pub larger_class_count: usize,
    /// Classes after identifying each member with its Adám orbit.
    pub orbit_class_count: usize,
    pub m_values: Vec<u32>,
    pub stats: SweepStats,
    pub classes: Vec<Type2Class>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl EnumerationReport {
    pub fn link_count(&self) -> usize {
        self.classes.iter().map(|c| c.links.len()).sum()
    }
}

/// Partition all `k`-subsets into Adám orbits, ordered by least member.
pub fn orbit_partition(n: u32, k: usize) -> Result<Vec<AdamOrbit>> {
    let group = units(n)?;
    let mut seen: BTreeSet<JumpSet> = BTreeSet::new();
    let mut orbits = Vec::new();
    for r in enumerate_jumpsets(n, k)? {
        if seen.contains(&r) {
            continue;
        }
        let orbit = adam_orbit_with(&r, &group);
        debug_assert_eq!(orbit.representative(), &r);
        seen.extend(orbit.members().iter().cloned());
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Enumerate all Type-2 classes of `k`-element jump sets over `Z_n`.
///
/// `workers = 0` uses the default thread count. The report does not depend
/// on `workers`.
pub fn enumerate_type2(n: u32, k: usize, workers: usize) -> Result<EnumerationReport> {
    let start = std::time::Instant::now();
    let orbits = orbit_partition(n, k)?;

    let sweep = |orbit: &AdamOrbit| {
        orbit
            .members()
            .iter()
            .map(|r| {
                let (partners, stats) = partners_outside(r, orbit);
                (r.clone(), partners, stats)
            })
            .collect::<Vec<_>>()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::RangeViolation(format!("thread pool: {e}")))?;
    let per_orbit: Vec<_> = pool.install(|| orbits.par_iter().map(sweep).collect());

    let mut index: HashMap<JumpSet, usize> = HashMap::new();
    let mut rep_of: Vec<usize> = Vec::new();
    let mut sets: Vec<JumpSet> = Vec::new();
    for (o, orbit) in orbits.iter().enumerate() {
        for r in orbit.members() {
            index.insert(r.clone(), sets.len());
            sets.push(r.clone());
            rep_of.push(o);
        }
    }

    let mut stats = SweepStats::default();
    let mut uf = UnionFind::<usize>::new(sets.len());
    let mut links = Vec::new();
    for (r, partners, s) in per_orbit.into_iter().flatten() {
        stats += s;
        for p in partners {
            uf.union(index[&r], index[&p.jumps]);
            links.push(Type2Link { from: r.clone(), to: p.jumps, m: p.m, t: p.t });
        }
    }

    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..sets.len() {
        components.entry(uf.find(i)).or_default().push(i);
    }
    let mut link_map: HashMap<usize, Vec<Type2Link>> = HashMap::new();
    for l in links {
        link_map.entry(uf.find(index[&l.from])).or_default().push(l);
    }

    let mut classes: Vec<Type2Class> = components
        .into_iter()
        .filter(|(_, v)| v.len() > 1)
        .map(|(root, ids)| {
            let mut members: Vec<JumpSet> = ids.iter().map(|&i| sets[i].clone()).collect();
            members.sort();
            let orbit_representatives = members
                .iter()
                .map(|r| orbits[rep_of[index[r]]].representative().clone())
                .collect();
            let mut links = link_map.remove(&root).unwrap_or_default();
            links.sort();
            let m_values = links.iter().map(|l| l.m).collect::<BTreeSet<_>>().into_iter().collect();
            Type2Class { members, orbit_representatives, m_values, links }
        })
        .collect();
    classes.sort_by(|a, b| a.members.cmp(&b.members));

    let size_count = |size: usize| classes.iter().filter(|c| c.members.len() == size).count();
    let m_values = classes
        .iter()
        .flat_map(|c| c.m_values.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    Ok(EnumerationReport {
        n,
        k,
        jumpset_count: sets.len(),
        orbit_count: orbits.len(),
        pair_count: size_count(2),
        triple_count: size_count(3),
        larger_class_count: classes.iter().filter(|c| c.members.len() > 3).count(),
        orbit_class_count: orbit_class_count(&classes),
        m_values,
        stats,
        classes,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn orbit_class_count(classes: &[Type2Class]) -> usize {
    let reps: BTreeSet<&JumpSet> = classes.iter().flat_map(|c| &c.orbit_representatives).collect();
    let id: HashMap<&JumpSet, usize> = reps.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let mut uf = UnionFind::<usize>::new(reps.len());
    for c in classes {
        for w in c.orbit_representatives.windows(2) {
            uf.union(id[&w[0]], id[&w[1]]);
        }
    }
    (0..reps.len()).map(|i| uf.find(i)).collect::<BTreeSet<_>>().len()
}

/// Three-way comparison of enumerated classes against fixture classes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CrossCheckDiff {
    /// Fixture labels whose member set equals an enumerated class.
    pub matching: Vec<String>,
    /// Fixture classes absent from the enumeration.
    pub fixture_only: Vec<FixtureClass>,
    /// Enumerated classes absent from the fixtures.
    pub enumeration_only: Vec<Vec<JumpSet>>,
    /// Matched labels whose stated `m` is not among the class's `m` values.
    pub m_mismatches: Vec<String>,
}

impl CrossCheckDiff {
    pub fn is_exact(&self) -> bool {
        self.fixture_only.is_empty() && self.enumeration_only.is_empty() && self.m_mismatches.is_empty()
    }
}

/// Compare classes by member set. Output lists are sorted.
pub fn cross_check(report: &EnumerationReport, fixtures: &[FixtureClass]) -> CrossCheckDiff {
    let enumerated: BTreeMap<&[JumpSet], &Type2Class> =
        report.classes.iter().map(|c| (c.members.as_slice(), c)).collect();
    let mut diff = CrossCheckDiff::default();
    let mut claimed: BTreeSet<&[JumpSet]> = BTreeSet::new();
    for f in fixtures {
        let mut key = f.members.clone();
        key.sort();
        key.dedup();
        match enumerated.get_key_value(key.as_slice()) {
            Some((k, class)) => {
                claimed.insert(k);
                diff.matching.push(f.label.clone());
                if f.m.is_some_and(|m| !class.m_values.contains(&m)) {
                    diff.m_mismatches.push(f.label.clone());
                }
            }
            None => diff.fixture_only.push(f.clone()),
        }
    }
    diff.enumeration_only = enumerated
        .keys()
        .filter(|k| !claimed.contains(*k))
        .map(|k| k.to_vec())
        .collect();
    diff.matching.sort();
    diff.matching.dedup();
    diff.fixture_only.sort_by(|a, b| a.label.cmp(&b.label));
    diff.m_mismatches.sort();
    diff
}
