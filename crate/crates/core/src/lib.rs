//! Classification of circulant graph isomorphisms.
//!
//! A circulant `C_n(R)` has vertex set `Z_n` with `i ~ j` whenever the
//! reflexive residue of `i - j` lies in the jump set `R`. Two circulants are
//! *Type-1* isomorphic when `S = xR` for a unit `x` of `Z_n` (the Adám
//! relation), and *Type-2* isomorphic when a vertex permutation
//! `theta_{n,m,t}` maps one onto the other while `S` lies outside the Adám
//! orbit of `R`.
//!
//! ```
//! use circulant::{classify, JumpSet, Verdict};
//!
//! let r = JumpSet::new(48, &[1, 2, 23]).unwrap();
//! let s = JumpSet::new(48, &[2, 11, 13]).unwrap();
//! let record = classify(&r, &s).unwrap();
//! assert!(matches!(record.verdict, Verdict::Type2 { m: 2, t: 6, .. }));
//! ```

pub mod enumerate;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod graph;
pub mod oracle;
pub mod residues;
pub mod type1;
pub mod type2;

pub use enumerate::{cross_check, enumerate_jumpsets, enumerate_type2, EnumerationReport, Type2Class, Type2Link};
pub use error::{Error, Result};
pub use families::{family_8n, family_np3, verify_family_8n, verify_family_np3};
pub use graph::{
    build_graph, circulant_jumps_of, component_count, edges, scale, CirculantGraph, EdgeSet, JumpSet, NotCirculant,
    VertexPermutation,
};
pub use oracle::{brute_force_iso, spectra_equal, spectrum, OracleVerdict};
pub use residues::{reflexive_reduce, units, valid_m_values, Residue, UnitGroup};
pub use type1::{adam_image, adam_orbit, same_orbit, AdamOrbit};
pub use type2::{
    classify, theta_image, theta_permutation, type2_partners, verify_certificate, ClassificationRecord, ThetaParams,
    Type2Certificate, Type2Partner, Verdict,
};
