//! Reflexibility of regular Cayley maps on `D_n`, decided by a group
//! automorphism reversing the rotation, and the reflection index.

use crate::dihedral::{GroupAutomorphism, Modulus};
use crate::error::{OracleDisagreement, ReflexError};
use crate::flags;
use crate::map::CayleyMap;
use crate::skew;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReflectionKind {
    Balanced,
    PartiallyInverting,
}

impl ReflectionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReflectionKind::Balanced => "balanced",
            ReflectionKind::PartiallyInverting => "partial",
        }
    }
}

/// A group automorphism `alpha` with `alpha(X) = X` and
/// `alpha(p(x)) = p^{-1}(alpha(x))` for all `x` in `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReflectionWitness {
    pub aut: GroupAutomorphism,
    pub kind: ReflectionKind,
}

/// Whether `s` maps `X` onto itself and reverses the cycle.
pub fn reverses_rotation(m: &CayleyMap, s: GroupAutomorphism) -> bool {
    let n = m.modulus();
    let d = m.valency();
    let Some(p0) = m.position(n.apply_aut(s, m.at(0))) else {
        return false;
    };
    (1..d).all(|k| n.apply_aut(s, m.at(k)) == m.at(p0 + d - k))
}

/// Automorphisms with `i = -1` reversing the rotation.
pub fn partially_inverting_reflections(m: &CayleyMap) -> Vec<GroupAutomorphism> {
    let n = m.modulus();
    inverting_automorphisms(n).filter(|&s| reverses_rotation(m, s)).collect()
}

fn inverting_automorphisms(n: Modulus) -> impl Iterator<Item = GroupAutomorphism> {
    (0..n.get() as i64).filter_map(move |j| n.automorphism(-1, j))
}

/// Searches `Aut(D_n)` for a reflection witness. Balanced maps search the
/// whole automorphism group; other maps only the automorphisms inverting `a`.
pub fn reflexible_by_automorphism(m: &CayleyMap) -> Result<Option<ReflectionWitness>, ReflexError> {
    if skew::is_regular(m)?.is_none() {
        return Err(ReflexError::NotRegular);
    }
    Ok(find_witness(m))
}

/// Witness search without the regularity precondition.
pub fn find_witness(m: &CayleyMap) -> Option<ReflectionWitness> {
    let n = m.modulus();
    if m.is_balanced() {
        n.automorphisms()
            .into_iter()
            .find(|&s| reverses_rotation(m, s))
            .map(|aut| ReflectionWitness { aut, kind: ReflectionKind::Balanced })
    } else {
        inverting_automorphisms(n)
            .find(|&s| reverses_rotation(m, s))
            .map(|aut| ReflectionWitness { aut, kind: ReflectionKind::PartiallyInverting })
    }
}

pub use crate::flags::reflexible_by_flags;

/// Reflexibility of a regular map; both deciders must agree.
pub fn is_reflexible(m: &CayleyMap) -> Result<Option<ReflectionWitness>, ReflexError> {
    let witness = reflexible_by_automorphism(m)?;
    let by_flags = flags::reflexible_by_flags(m);
    if witness.is_some() != by_flags {
        return Err(OracleDisagreement { what: "reflexibility", algebraic: witness.is_some(), flags: by_flags }.into());
    }
    Ok(witness)
}

/// Least `k >= 1` with `p^k(x) = x^{-1}` over `x` in `X ∩ A_n`, or `None`
/// when `X` has no rotations. Also called the rotation index.
pub fn reflection_index(m: &CayleyMap) -> Option<usize> {
    let d = m.valency();
    let c = m.inverse_index();
    m.rotation_generators()
        .map(|(k, _)| {
            let r = (c.get(k) + d - k) % d;
            if r == 0 {
                d
            } else {
                r
            }
        })
        .min()
}

/// `i + c(i) (mod d)` is the same for every position holding a rotation.
pub fn inverse_position_sum_constant(m: &CayleyMap) -> bool {
    let d = m.valency();
    let c = m.inverse_index();
    let mut sums = m.rotation_generators().map(|(k, _)| (k + c.get(k)) % d);
    match sums.next() {
        Some(first) => sums.all(|s| s == first),
        None => true,
    }
}
