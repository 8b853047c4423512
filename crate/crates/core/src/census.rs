//! Exhaustive search for regular Cayley maps on `D_n`, isomorphism classes,
//! and comparison with the family list.
//!
//! Every generating set of `D_n` contains a reflection and `sigma_{1,j}` moves
//! any reflection to `b`, so the search only builds cycles starting at `b`.
//! Automorphisms fixing `b` are used once more to restrict `x_1`. The maps
//! found are then closed under `Aut(D_n)` and listed in canonical rotation.

use std::collections::{BTreeMap, BTreeSet};

use crate::dihedral::{DihedralElement, Modulus};
use crate::error::{CensusError, OracleDisagreement};
use crate::exec::Execution;
use crate::families::{self, FamilyTag};
use crate::flags;
use crate::map::CayleyMap;
use crate::reflex;
use crate::skew::{self, propagate};

pub const DEFAULT_BOUND: u32 = 8;
pub const FILTERED_BOUND: u32 = 12;
/// Valency filters up to this value raise the bound to [`FILTERED_BOUND`].
pub const FILTERED_MAX_VALENCY: usize = 8;
pub const BOUND_ENV: &str = "DMAPS_MAX_N";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CensusOptions {
    /// Only maps of exactly this valency.
    pub valency: Option<usize>,
    /// Only maps of valency at most this.
    pub max_valency: Option<usize>,
    pub execution: Execution,
    /// Replaces the default bound on `n`.
    pub bound: Option<u32>,
}

impl CensusOptions {
    pub fn with_valency(d: usize) -> Self {
        CensusOptions { valency: Some(d), ..Self::default() }
    }

    /// Reads a bound override from `DMAPS_MAX_N`, ignoring unparsable values.
    pub fn bound_from_env(mut self) -> Self {
        if let Some(b) = std::env::var(BOUND_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            self.bound = Some(b);
        }
        self
    }

    pub fn effective_bound(&self) -> u32 {
        if let Some(b) = self.bound {
            return b;
        }
        let filter = match (self.valency, self.max_valency) {
            (Some(d), Some(m)) => Some(d.min(m)),
            (d, m) => d.or(m),
        };
        if filter.is_some_and(|d| d <= FILTERED_MAX_VALENCY) {
            FILTERED_BOUND
        } else {
            DEFAULT_BOUND
        }
    }

    fn valencies(&self, n: Modulus) -> Vec<usize> {
        let top = n.group_order() - 1;
        let hi = self.max_valency.unwrap_or(top).min(top);
        (2..=hi).filter(|&d| self.valency.is_none_or(|v| v == d)).collect()
    }

    fn check_bound(&self, n: Modulus) -> Result<(), CensusError> {
        let bound = self.effective_bound();
        if n.get() > bound {
            let hint = if self.bound.is_some() {
                ""
            } else {
                "; pass a valency filter of at most 8 or set DMAPS_MAX_N"
            };
            return Err(CensusError::BoundExceeded { n: n.get(), bound, hint });
        }
        Ok(())
    }
}

/// Partial cycle under construction; `slots[0] = b` always.
#[derive(Clone)]
struct Partial {
    slots: Vec<Option<DihedralElement>>,
    partner: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Partial {
    fn start(n: Modulus, d: usize) -> Self {
        let mut p = Partial { slots: vec![None; d], partner: vec![None; d], used: vec![false; n.group_order()] };
        let b = n.reflection(0);
        p.slots[0] = Some(b);
        p.partner[0] = Some(0);
        p.used[n.index(b)] = true;
        p
    }

    fn first_gap(&self) -> Option<usize> {
        self.slots.iter().position(Option::is_none)
    }

    /// Places `x` at `k` and its inverse at `j` (`j = k` for involutions).
    fn place(&mut self, n: Modulus, k: usize, j: usize, x: DihedralElement) {
        let y = n.inv(x);
        self.slots[k] = Some(x);
        self.slots[j] = Some(y);
        self.partner[k] = Some(j);
        self.partner[j] = Some(k);
        self.used[n.index(x)] = true;
        self.used[n.index(y)] = true;
    }

    fn unplace(&mut self, n: Modulus, k: usize, j: usize) {
        for p in [k, j] {
            if let Some(x) = self.slots[p].take() {
                self.used[n.index(x)] = false;
            }
            self.partner[p] = None;
        }
    }

    /// The next moves at the first gap: an element and the position of its inverse.
    fn moves(&self, n: Modulus, k: usize) -> Vec<(usize, DihedralElement)> {
        let mut out = Vec::new();
        for x in n.elements().skip(1) {
            if self.used[n.index(x)] {
                continue;
            }
            let y = n.inv(x);
            if y == x {
                out.push((k, x));
            } else {
                out.extend((k + 1..self.slots.len()).filter(|&j| self.slots[j].is_none()).map(|j| (j, x)));
            }
        }
        out
    }

    fn consistent(&self, n: Modulus) -> bool {
        propagate(n, &self.slots, &self.partner).is_some()
    }
}

/// `x` is least in its orbit under the automorphisms fixing `b`.
fn least_in_b_stabiliser_orbit(n: Modulus, x: DihedralElement) -> bool {
    n.automorphisms().into_iter().filter(|s| s.j == 0).all(|s| n.apply_aut(s, x) >= x)
}

fn search(n: Modulus, p: &mut Partial, out: &mut Vec<CayleyMap>) -> Result<(), OracleDisagreement> {
    let Some(k) = p.first_gap() else {
        let cycle: Vec<DihedralElement> = p.slots.iter().map(|s| s.expect("filled")).collect();
        if let Ok(m) = CayleyMap::new(n, cycle) {
            if skew::is_regular(&m)?.is_some() {
                out.push(m);
            }
        }
        return Ok(());
    };
    for (j, x) in p.moves(n, k) {
        p.place(n, k, j, x);
        if p.consistent(n) {
            search(n, p, out)?;
        }
        p.unplace(n, k, j);
    }
    Ok(())
}

/// A first-level branch: valency and the placement at position 1.
#[derive(Debug, Clone, Copy)]
struct Branch {
    d: usize,
    inverse_at: usize,
    x1: DihedralElement,
}

fn branches(n: Modulus, valencies: &[usize]) -> Vec<Branch> {
    let mut out = Vec::new();
    for &d in valencies {
        let p = Partial::start(n, d);
        for (j, x) in p.moves(n, 1) {
            if least_in_b_stabiliser_orbit(n, x) {
                out.push(Branch { d, inverse_at: j, x1: x });
            }
        }
    }
    out
}

fn run_branch(n: Modulus, br: Branch) -> Result<Vec<CayleyMap>, OracleDisagreement> {
    let mut p = Partial::start(n, br.d);
    p.place(n, 1, br.inverse_at, br.x1);
    let mut out = Vec::new();
    if p.consistent(n) {
        search(n, &mut p, &mut out)?;
    }
    Ok(out)
}

/// Sort key: valency first, then the cycle.
fn key(m: &CayleyMap) -> (usize, Vec<DihedralElement>) {
    (m.valency(), m.cycle().to_vec())
}

/// All regular Cayley maps on `D_n` within the options' valency range, one
/// entry per map (cycles listed from their least element), sorted.
pub fn enumerate_regular(n: Modulus, opts: &CensusOptions) -> Result<Vec<CayleyMap>, CensusError> {
    opts.check_bound(n)?;
    let work = branches(n, &opts.valencies(n));
    let found = opts.execution.map(&work, |&br| run_branch(n, br));
    let autos = n.automorphisms();
    let mut all: BTreeMap<(usize, Vec<DihedralElement>), CayleyMap> = BTreeMap::new();
    for maps in found {
        for m in maps? {
            for &s in &autos {
                let image = m.apply_automorphism(s).canonical();
                all.entry(key(&image)).or_insert(image);
            }
        }
    }
    Ok(all.into_values().collect())
}

/// The regular maps that both reflexibility deciders accept.
pub fn enumerate_reflexible_regular(n: Modulus, opts: &CensusOptions) -> Result<Vec<CayleyMap>, CensusError> {
    let regular = enumerate_regular(n, opts)?;
    reflexible_only(regular)
}

fn reflexible_only(maps: Vec<CayleyMap>) -> Result<Vec<CayleyMap>, CensusError> {
    let mut out = Vec::new();
    for m in maps {
        match reflex::is_reflexible(&m) {
            Ok(Some(_)) => out.push(m),
            Ok(None) => {}
            Err(crate::error::ReflexError::Oracle(o)) => return Err(o.into()),
            Err(crate::error::ReflexError::NotRegular) => unreachable!("census maps are regular"),
        }
    }
    Ok(out)
}

/// One orientation-preserving isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    /// Least member by valency and cycle.
    pub representative: CayleyMap,
    pub members: Vec<CayleyMap>,
}

/// Partitions maps on one `D_n` by the flag canonical form.
///
/// For `n >= 3` every pair with the same rotation type is also compared by
/// group-automorphism equivalence, which must agree with the partition.
/// (`Aut(D_2)` is larger than the `sigma_{i,j}`, so that check is skipped there.)
pub fn isomorphism_classes(maps: &[CayleyMap]) -> Result<Vec<IsoClass>, OracleDisagreement> {
    let mut by_code: BTreeMap<(usize, Vec<u32>), Vec<CayleyMap>> = BTreeMap::new();
    for m in maps {
        by_code.entry((m.valency(), flags::canonical_code(m))).or_default().push(m.clone());
    }
    let mut classes: Vec<IsoClass> = by_code
        .into_values()
        .map(|mut members| {
            members.sort_by_key(key);
            IsoClass { representative: members[0].clone(), members }
        })
        .collect();
    classes.sort_by_key(|c| key(&c.representative));

    if maps.first().is_some_and(|m| m.modulus().get() >= 3) {
        let reps: Vec<&CayleyMap> = classes.iter().map(|c| &c.representative).collect();
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                if a.rotation_type_equal(b) && a.equivalent(b).is_some() {
                    return Err(OracleDisagreement { what: "isomorphism", algebraic: true, flags: false });
                }
            }
        }
        for c in &classes {
            let r = &c.representative;
            if c.members.iter().any(|m| r.rotation_type_equal(m) && r.equivalent(m).is_none()) {
                return Err(OracleDisagreement { what: "isomorphism", algebraic: false, flags: true });
            }
        }
    }
    Ok(classes)
}

/// Summary of one class in a census report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSummary {
    pub representative: CayleyMap,
    pub size: usize,
    pub family: Option<FamilyTag>,
    pub genus: u32,
    pub reflection_index: Option<usize>,
    pub balanced: bool,
}

impl ClassSummary {
    fn of(class: &IsoClass, family: Option<FamilyTag>) -> Self {
        let m = &class.representative;
        ClassSummary {
            representative: m.clone(),
            size: class.members.len(),
            family,
            genus: m.trace_faces().genus,
            reflection_index: reflex::reflection_index(m),
            balanced: m.is_balanced(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch(Vec<String>),
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n: u32,
    pub classes: Vec<ClassSummary>,
    pub expected: Vec<FamilyTag>,
    pub verdict: Verdict,
}

/// Enumerates reflexible regular classes on `D_n` and matches them one to
/// one against the family list. Problems are reported in the verdict.
pub fn cross_check(n: Modulus, opts: &CensusOptions) -> Result<CensusReport, CensusError> {
    let maps = enumerate_reflexible_regular(n, opts)?;
    let classes = isomorphism_classes(&maps)?;
    let expected = families::family_parameters(n);
    let valencies = opts.valencies(n);
    let mut problems = Vec::new();
    let mut built = Vec::new();
    for &tag in &expected {
        match families::build_family(tag, n) {
            Ok(c) if valencies.contains(&c.map.valency()) => {
                built.push((tag, c.map.valency(), flags::canonical_code(&c.map)))
            }
            Ok(_) => {}
            Err(e) => problems.push(format!("{tag}: {e}")),
        }
    }
    let mut matched: BTreeSet<usize> = BTreeSet::new();
    let mut summaries = Vec::new();
    for class in &classes {
        let m = &class.representative;
        let code = flags::canonical_code(m);
        let hits: Vec<usize> = built
            .iter()
            .enumerate()
            .filter(|(_, (_, d, c))| *d == m.valency() && *c == code)
            .map(|(i, _)| i)
            .collect();
        let family = match hits.as_slice() {
            [] => {
                problems.push(format!("unmatched class {m}"));
                None
            }
            [i] => {
                matched.insert(*i);
                Some(built[*i].0)
            }
            many => {
                let tags: Vec<String> = many.iter().map(|&i| built[i].0.to_string()).collect();
                problems.push(format!("class {m} matches several families: {}", tags.join(", ")));
                Some(built[many[0]].0)
            }
        };
        summaries.push(ClassSummary::of(class, family));
    }
    for (i, (tag, _, _)) in built.iter().enumerate() {
        if !matched.contains(&i) {
            problems.push(format!("{tag} not found by the search"));
        }
    }
    let verdict = if problems.is_empty() { Verdict::Match } else { Verdict::Mismatch(problems) };
    Ok(CensusReport { n: n.get(), classes: summaries, expected, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, Small3};

    fn md(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn seq() -> CensusOptions {
        CensusOptions { execution: Execution::Sequential, ..CensusOptions::default() }
    }

    #[test]
    fn d2_census() {
        let maps = enumerate_regular(md(2), &seq()).unwrap();
        let classes = isomorphism_classes(&maps).unwrap();
        assert_eq!(classes.len(), 2);
        let valencies: Vec<usize> = classes.iter().map(|c| c.representative.valency()).collect();
        assert_eq!(valencies, [2, 3]);
    }

    #[test]
    fn octahedron_appears_at_n3() {
        let maps = enumerate_regular(md(3), &CensusOptions::with_valency(4)).unwrap();
        let m4 = build_family(FamilyTag::M4, md(3)).unwrap().map;
        assert!(maps.iter().any(|m| flags::isomorphic(m, &m4)));
        assert!(maps.contains(&m4.canonical()));
    }

    #[test]
    fn small_cross_checks() {
        for k in 2..=5 {
            let report = cross_check(md(k), &seq()).unwrap();
            assert_eq!(report.verdict, Verdict::Match, "n = {k}");
        }
        let r3 = cross_check(md(3), &seq()).unwrap();
        let fams: Vec<Option<FamilyTag>> = r3.classes.iter().map(|c| c.family).collect();
        assert_eq!(fams, [Some(FamilyTag::D2Cycle), Some(FamilyTag::Small3(Small3::K33)), Some(FamilyTag::M4)]);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let par = CensusOptions { execution: Execution::Parallel, ..CensusOptions::default() };
        assert_eq!(enumerate_regular(md(5), &par).unwrap(), enumerate_regular(md(5), &seq()).unwrap());
    }

    #[test]
    fn bounds() {
        assert_eq!(CensusOptions::default().effective_bound(), 8);
        assert_eq!(CensusOptions::with_valency(6).effective_bound(), 12);
        let opts = CensusOptions { max_valency: Some(9), ..CensusOptions::default() };
        assert_eq!(opts.effective_bound(), 8);
        assert!(matches!(enumerate_regular(md(9), &seq()), Err(CensusError::BoundExceeded { n: 9, bound: 8, .. })));
        let raised = CensusOptions { bound: Some(9), valency: Some(2), ..seq() };
        assert_eq!(enumerate_regular(md(9), &raised).unwrap().len(), 9 * 3);
    }

    #[test]
    fn iso_classes_separate_m1_parameters() {
        let n = md(8);
        let a = build_family(FamilyTag::M1 { ell: 3 }, n).unwrap().map;
        let b = build_family(FamilyTag::M1 { ell: 5 }, n).unwrap().map;
        assert_eq!(isomorphism_classes(&[a.clone(), b]).unwrap().len(), 2);
        let moved = a.apply_automorphism(n.automorphism(3, 1).unwrap()).canonical();
        assert_eq!(isomorphism_classes(&[a, moved]).unwrap().len(), 1);
    }
}
