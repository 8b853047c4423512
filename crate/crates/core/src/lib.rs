//! Regular and reflexible Cayley maps on dihedral groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`dihedral`]: normal-form arithmetic in `D_n`, subgroups, `Aut(D_n)`.
//! * [`map`]: Cayley maps as rotation cycles, faces, genus, equivalence.
//! * [`skew`]: skew-morphisms and the algebraic regularity test.
//! * [`flags`]: arc-level automorphism propagation, used as an independent
//!   regularity/reflexibility oracle and as a canonical form.
//! * [`reflex`]: reflexibility witnesses and the reflection index.
//! * [`families`]: constructors for every listed reflexible regular map.
//! * [`quotient`]: quotient maps by block subgroups of the rotation group.
//! * [`census`]: exhaustive enumeration and classification for small `n`.
//! * [`io`]: JSON / CSV / Markdown interchange formats.

pub mod census;
pub mod dihedral;
pub mod error;
pub mod exec;
pub mod families;
pub mod flags;
pub mod graph;
pub mod io;
pub mod map;
pub mod quotient;
pub mod reflex;
pub mod skew;

pub use dihedral::{DihedralElement, GroupAutomorphism, Modulus, Subgroup};
pub use families::{build_family, classify, family_parameters, CertifiedMap, FamilyTag};
pub use map::{BalanceType, CayleyMap, FaceStructure};
pub use skew::{extend_from_rotation, is_regular, RegularityCertificate, SkewMorphism};
