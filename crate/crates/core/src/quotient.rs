//! Quotients of regular Cayley maps on `D_n` by rotation subgroups whose
//! cosets form blocks for the map automorphism group.
//!
//! A subgroup of `A_n` is `<a^s>` for some `s | n`, and `D_n / <a^s>` is
//! identified with `D_s` by reducing exponents mod `s`.

use std::fmt;

use crate::dihedral::{DihedralElement, Modulus, Subgroup};
use crate::error::QuotientError;
use crate::map::CayleyMap;
use crate::skew::{self, SkewMorphism};

/// `N = <a^s>` whose cosets are preserved by the skew-morphism of a map.
///
/// Left translations preserve the cosets of any normal subgroup; together
/// with the skew-morphism they generate the vertex action of the map
/// automorphism group, so this is the whole block test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSubgroup {
    subgroup: Subgroup,
    step: u32,
}

impl BlockSubgroup {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// `s` with `N = <a^s>`; the quotient group is `D_s`.
    pub fn step(&self) -> u32 {
        self.step
    }

    pub fn order(&self) -> usize {
        self.subgroup.len()
    }
}

impl fmt::Display for BlockSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<a^{}>", self.step)
    }
}

fn coset(s: u32, x: DihedralElement) -> DihedralElement {
    DihedralElement { flip: x.flip, exp: x.exp % s }
}

fn preserves_cosets(skew: &SkewMorphism, s: u32) -> bool {
    let n = skew.modulus();
    // the image of the coset of x must be the coset of phi(x)
    n.elements().all(|x| {
        let target = coset(s, skew.image(x));
        (0..n.get() / s).all(|t| {
            let y = DihedralElement { flip: x.flip, exp: (x.exp + t * s) % n.get() };
            coset(s, skew.image(y)) == target
        })
    })
}

fn regular_skew(m: &CayleyMap) -> Result<SkewMorphism, QuotientError> {
    skew::is_regular(m)?.map(|c| c.skew).ok_or(QuotientError::NotRegular)
}

/// Every subgroup of `A_n` whose cosets form a block system, from the
/// trivial subgroup up to `A_n`, ordered by increasing size.
pub fn block_subgroups(m: &CayleyMap) -> Result<Vec<BlockSubgroup>, QuotientError> {
    let skew = regular_skew(m)?;
    let n = m.modulus();
    Ok((1..=n.get())
        .rev()
        .filter(|s| n.get() % s == 0 && preserves_cosets(&skew, *s))
        .map(|s| BlockSubgroup { subgroup: n.generated_subgroup([n.rotation(s as i64)]), step: s })
        .collect())
}

/// Checks a given subgroup for the block property.
pub fn block_subgroup(m: &CayleyMap, subgroup: Subgroup) -> Result<BlockSubgroup, QuotientError> {
    if !subgroup.is_rotation_subgroup() {
        return Err(QuotientError::NotRotationSubgroup);
    }
    let n = m.modulus();
    // a subgroup of the cyclic group A_n is generated by its least positive exponent
    let step = subgroup.elements().iter().map(|x| x.exp).filter(|&e| e > 0).min().unwrap_or(n.get());
    let skew = regular_skew(m)?;
    if !preserves_cosets(&skew, step) {
        return Err(QuotientError::NotBlockSystem);
    }
    Ok(BlockSubgroup { subgroup, step })
}

/// The quotient map `CM(D_s, X/N, p^{D_s})`.
pub fn quotient_map(m: &CayleyMap, block: &BlockSubgroup) -> Result<CayleyMap, QuotientError> {
    let s = block.step;
    let q = Modulus::new(s)
        .ok_or_else(|| QuotientError::DegenerateQuotient(format!("{block} has index 2 in D_n")))?;
    let cosets: Vec<DihedralElement> = m.cycle().iter().map(|&x| coset(s, x)).collect();
    let d = cosets.len();
    let period = (1..=d)
        .find(|&p| d % p == 0 && (0..d).all(|k| cosets[k] == cosets[(k + p) % d]))
        .expect("d is a period");
    let cycle = cosets[..period].to_vec();
    if cycle.iter().any(|x| x.is_identity()) {
        return Err(QuotientError::DegenerateQuotient("the identity coset lies in X/N".into()));
    }
    if period < 2 {
        return Err(QuotientError::DegenerateQuotient(format!("quotient valency {period}")));
    }
    let mut sorted = cycle.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != period {
        return Err(QuotientError::NotWellDefined("a coset repeats within one period of the cycle".into()));
    }
    CayleyMap::new(q, cycle).map_err(|e| QuotientError::NotWellDefined(e.to_string()))
}

/// Outcome of the quotient law checks. Each flag is `true` when the law holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientLaws {
    pub block: String,
    pub quotient: CayleyMap,
    /// The quotient map is regular.
    pub regular: bool,
    /// The skew-morphism of the quotient is the one induced on cosets.
    pub induced_skew: bool,
    pub parent_order: u32,
    pub quotient_order: u32,
    pub subgroup_order: usize,
    /// `|psi| <= |N| |psi^{G/N}|`.
    pub order_bound: bool,
    /// `X` is a union of `N`-cosets.
    pub union_of_cosets: bool,
    /// Equality in the order bound holds exactly when `X` is a union of cosets.
    pub equality_iff_union: bool,
    /// `pi^{G/N}(Ng) = pi(g)` modulo the quotient order, for every `g`.
    pub power_congruence: bool,
    pub findings: Vec<String>,
}

impl QuotientLaws {
    pub fn all_hold(&self) -> bool {
        self.regular && self.induced_skew && self.order_bound && self.equality_iff_union && self.power_congruence
    }
}

/// Builds the quotient and checks it against the parent skew-morphism.
pub fn check_quotient_laws(m: &CayleyMap, block: &BlockSubgroup) -> Result<QuotientLaws, QuotientError> {
    let parent = regular_skew(m)?;
    let quotient = quotient_map(m, block)?;
    let s = block.step;
    let q = quotient.modulus();
    let n = m.modulus();
    let mut findings = Vec::new();

    let induced = skew::extend_from_rotation(&quotient);
    let regular = induced.is_some() && crate::flags::regular_by_flags(&quotient);
    if !regular {
        findings.push(format!("quotient {quotient} is not regular"));
    }
    // parent images reduced mod s; lifts of Ng are the elements with the same flip and exp mod s
    let induced_images: Vec<DihedralElement> = q.elements().map(|g| coset(s, parent.image(g))).collect();
    let induced_skew = induced.as_ref().is_some_and(|sk| sk.images() == induced_images.as_slice());
    if !induced_skew {
        findings.push("quotient skew-morphism differs from the induced action on cosets".into());
    }

    let parent_order = parent.order();
    let quotient_order = induced.as_ref().map_or(0, |sk| sk.order());
    let subgroup_order = block.order();
    let bound = subgroup_order as u64 * quotient_order as u64;
    let order_bound = parent_order as u64 <= bound;
    if !order_bound {
        findings.push(format!("|psi| = {parent_order} exceeds |N| |psi'| = {bound}"));
    }
    let union_of_cosets = m.cycle().iter().all(|&x| {
        (0..n.get() / s).all(|t| m.position(DihedralElement { flip: x.flip, exp: (x.exp + t * s) % n.get() }).is_some())
    });
    let equality_iff_union = (parent_order as u64 == bound) == union_of_cosets;
    if !equality_iff_union {
        findings.push(format!(
            "order equality is {} but X {} a union of cosets",
            parent_order as u64 == bound,
            if union_of_cosets { "is" } else { "is not" }
        ));
    }

    let power_congruence = match &induced {
        Some(sk) => n.elements().all(|g| {
            let ng = coset(s, g);
            (parent.power(g) % quotient_order) == (sk.power(ng) % quotient_order)
        }),
        None => false,
    };
    if !power_congruence {
        findings.push("power function is not congruent to the quotient power function".into());
    }

    Ok(QuotientLaws {
        block: block.to_string(),
        quotient,
        regular,
        induced_skew,
        parent_order,
        quotient_order,
        subgroup_order,
        order_bound,
        union_of_cosets,
        equality_iff_union,
        power_congruence,
        findings,
    })
}
