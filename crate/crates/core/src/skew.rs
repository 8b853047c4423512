//! Skew-morphisms of `D_n`: verification of the skew axiom, extension of a
//! Cayley map rotation to the unique compatible skew-morphism (the
//! algebraic regularity test), and power-function kernels.

use std::collections::{BTreeMap, VecDeque};

use crate::dihedral::{DihedralElement, Modulus, Subgroup};
use crate::error::{OracleDisagreement, SkewError};
use crate::flags;
use crate::map::CayleyMap;

/// A permutation `phi` of `D_n` fixing 1 with power function `pi` such that
/// `phi(xy) = phi(x) phi^{pi(x)}(y)` for all `x, y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMorphism {
    n: Modulus,
    images: Vec<DihedralElement>,
    power: Vec<u32>,
    order: u32,
}

/// First failure found while checking a candidate skew-morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    IdentityNotFixed(DihedralElement),
    NotBijective { image: DihedralElement },
    Axiom { x: DihedralElement, y: DihedralElement, expected: DihedralElement, actual: DihedralElement },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::IdentityNotFixed(v) => write!(f, "identity maps to {v}"),
            Violation::NotBijective { image } => write!(f, "{image} has two preimages"),
            Violation::Axiom { x, y, expected, actual } => {
                write!(f, "phi({x} * {y}) = {actual}, but phi(x) phi^pi(x)(y) = {expected}")
            }
        }
    }
}

/// Outcome of [`verify_skew`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewCheck {
    pub order: u64,
    pub violation: Option<Violation>,
}

impl SkewCheck {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Cycle decomposition of a permutation given by an index table, for
/// evaluating arbitrary powers without materialising them.
struct Cycles {
    cycle_of: Vec<usize>,
    pos: Vec<usize>,
    cycles: Vec<Vec<usize>>,
}

impl Cycles {
    fn new(perm: &[usize]) -> Self {
        let len = perm.len();
        let mut cycle_of = vec![usize::MAX; len];
        let mut pos = vec![0; len];
        let mut cycles = Vec::new();
        for start in 0..len {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while cycle_of[i] == usize::MAX {
                cycle_of[i] = cycles.len();
                pos[i] = cyc.len();
                cyc.push(i);
                i = perm[i];
            }
            cycles.push(cyc);
        }
        Cycles { cycle_of, pos, cycles }
    }

    fn apply_power(&self, i: usize, k: u64) -> usize {
        let cyc = &self.cycles[self.cycle_of[i]];
        cyc[((self.pos[i] as u64 + k) % cyc.len() as u64) as usize]
    }

    fn order(&self) -> u64 {
        self.cycles.iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Checks dense tables (indexed by [`Modulus::index`]) against the skew axiom
/// on all `4n^2` pairs.
fn check_tables(n: Modulus, images: &[DihedralElement], power: &[u32]) -> SkewCheck {
    let size = n.group_order();
    let one = n.index(DihedralElement::IDENTITY);
    if !images[one].is_identity() {
        return SkewCheck { order: 0, violation: Some(Violation::IdentityNotFixed(images[one])) };
    }
    let mut hit = vec![false; size];
    let mut perm = Vec::with_capacity(size);
    for &v in images {
        let i = n.index(v);
        if hit[i] {
            return SkewCheck { order: 0, violation: Some(Violation::NotBijective { image: v }) };
        }
        hit[i] = true;
        perm.push(i);
    }
    let cycles = Cycles::new(&perm);
    let order = cycles.order();
    for xi in 0..size {
        let x = n.element(xi);
        // pi(1) does not constrain anything beyond phi(1) = 1
        let k = if xi == one { 1 } else { power[xi] as u64 % order };
        for yi in 0..size {
            let y = n.element(yi);
            let actual = images[n.index(n.mul(x, y))];
            let expected = n.mul(images[xi], n.element(cycles.apply_power(yi, k)));
            if actual != expected {
                return SkewCheck { order, violation: Some(Violation::Axiom { x, y, expected, actual }) };
            }
        }
    }
    SkewCheck { order, violation: None }
}

/// Verifies `phi`/`pi` given as element-keyed tables. Both must be total.
pub fn verify_skew(
    n: Modulus,
    phi: &BTreeMap<DihedralElement, DihedralElement>,
    pi: &BTreeMap<DihedralElement, u32>,
) -> Result<SkewCheck, SkewError> {
    let (images, power) = dense_tables(n, phi, pi)?;
    Ok(check_tables(n, &images, &power))
}

fn dense_tables(
    n: Modulus,
    phi: &BTreeMap<DihedralElement, DihedralElement>,
    pi: &BTreeMap<DihedralElement, u32>,
) -> Result<(Vec<DihedralElement>, Vec<u32>), SkewError> {
    let mut images = Vec::with_capacity(n.group_order());
    let mut power = Vec::with_capacity(n.group_order());
    for g in n.elements() {
        let v = *phi.get(&g).ok_or(SkewError::TablesIncomplete { table: "image", element: g })?;
        images.push(v);
        let p = match pi.get(&g) {
            Some(&p) => p,
            None if g.is_identity() => 1,
            None => return Err(SkewError::TablesIncomplete { table: "power", element: g }),
        };
        power.push(p);
    }
    Ok((images, power))
}

impl SkewMorphism {
    /// Builds a verified skew-morphism from dense tables.
    pub fn from_tables(n: Modulus, images: Vec<DihedralElement>, power: Vec<u32>) -> Result<Self, Violation> {
        assert_eq!(images.len(), n.group_order());
        assert_eq!(power.len(), n.group_order());
        let check = check_tables(n, &images, &power);
        if let Some(v) = check.violation {
            return Err(v);
        }
        let order = check.order as u32;
        let one = n.index(DihedralElement::IDENTITY);
        let power = power
            .iter()
            .enumerate()
            .map(|(i, &p)| if i == one { 1 % order } else { p % order })
            .collect();
        Ok(SkewMorphism { n, images, power, order })
    }

    pub fn from_maps(
        n: Modulus,
        phi: &BTreeMap<DihedralElement, DihedralElement>,
        pi: &BTreeMap<DihedralElement, u32>,
    ) -> Result<Result<Self, Violation>, SkewError> {
        let (images, power) = dense_tables(n, phi, pi)?;
        Ok(Self::from_tables(n, images, power))
    }

    /// Recovers the power function of a permutation that is a skew-morphism:
    /// for every `g`, the least `k` with `phi(gy) = phi(g) phi^k(y)` for all `y`.
    pub fn derive_power(n: Modulus, images: &[DihedralElement]) -> Option<Vec<u32>> {
        let size = n.group_order();
        let perm: Vec<usize> = images.iter().map(|&v| n.index(v)).collect();
        let cycles = Cycles::new(&perm);
        let order = cycles.order();
        (0..size)
            .map(|gi| {
                let g = n.element(gi);
                (0..order).find_map(|k| {
                    (0..size)
                        .all(|yi| {
                            images[n.index(n.mul(g, n.element(yi)))]
                                == n.mul(images[gi], n.element(cycles.apply_power(yi, k)))
                        })
                        .then_some(k as u32)
                })
            })
            .collect()
    }

    pub fn modulus(&self) -> Modulus {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn image(&self, x: DihedralElement) -> DihedralElement {
        self.images[self.n.index(x)]
    }

    /// `pi(x)` as a residue modulo the order.
    pub fn power(&self, x: DihedralElement) -> u32 {
        self.power[self.n.index(x)]
    }

    pub fn images(&self) -> &[DihedralElement] {
        &self.images
    }

    pub fn powers(&self) -> &[u32] {
        &self.power
    }

    pub fn is_identity(&self) -> bool {
        self.n.elements().all(|g| self.image(g) == g)
    }

    /// `phi^k(x)`.
    pub fn apply_power(&self, x: DihedralElement, k: u64) -> DihedralElement {
        let mut y = x;
        for _ in 0..(k % self.order as u64) {
            y = self.image(y);
        }
        y
    }

    /// `ker(pi) = { g : pi(g) = 1 }`.
    pub fn power_kernel(&self) -> Subgroup {
        let one = 1 % self.order;
        Subgroup::from_elements(self.n, self.n.elements().filter(|&g| self.power(g) == one))
            .expect("kernel of a power function is a subgroup")
    }
}

/// Partial `phi`/`pi` tables derived by propagation.
#[derive(Debug, Clone)]
pub(crate) struct Propagation {
    pub images: Vec<Option<DihedralElement>>,
    pub power: Vec<Option<u32>>,
}

/// Propagates `phi(g x_l) = phi(g) x_{l + pi(g)}` and
/// `pi(g x_l) = sum_{i < pi(g)} pi(x_{l+i})` breadth-first from the
/// identity, with `pi(x_k) = c(k+1) - c(k) (mod d)`.
///
/// `slots` may be a partially filled cycle: unknown entries (and unknown
/// inverse positions) simply block the rules that need them. Returns `None`
/// on the first contradiction: two values for `phi(g)` or `pi(g)`, or two
/// elements with the same image.
pub(crate) fn propagate(
    n: Modulus,
    slots: &[Option<DihedralElement>],
    partner: &[Option<usize>],
) -> Option<Propagation> {
    let d = slots.len();
    let size = n.group_order();
    let gen_power: Vec<Option<u32>> = (0..d)
        .map(|k| match (slots[k], slots[(k + 1) % d], partner[k], partner[(k + 1) % d]) {
            (Some(_), Some(_), Some(ck), Some(ck1)) => Some(((ck1 + d - ck) % d) as u32),
            _ => None,
        })
        .collect();
    let mut images: Vec<Option<DihedralElement>> = vec![None; size];
    let mut preimage: Vec<Option<usize>> = vec![None; size];
    let mut power: Vec<Option<u32>> = vec![None; size];
    let mut queued = vec![false; size];
    let one = n.index(DihedralElement::IDENTITY);
    images[one] = Some(DihedralElement::IDENTITY);
    preimage[one] = Some(one);
    power[one] = Some(1 % d as u32);
    queued[one] = true;
    let mut queue = VecDeque::from([one]);

    while let Some(gi) = queue.pop_front() {
        let g = n.element(gi);
        let (v, r) = (images[gi].unwrap(), power[gi].unwrap() as usize);
        for l in 0..d {
            let Some(x) = slots[l] else { continue };
            let hi = n.index(n.mul(g, x));
            if let Some(y) = slots[(l + r) % d] {
                let val = n.mul(v, y);
                match images[hi] {
                    Some(old) if old != val => return None,
                    Some(_) => {}
                    None => {
                        let vi = n.index(val);
                        if preimage[vi].is_some_and(|p| p != hi) {
                            return None;
                        }
                        preimage[vi] = Some(hi);
                        images[hi] = Some(val);
                    }
                }
            }
            let sum = (0..r).try_fold(0u32, |acc, i| gen_power[(l + i) % d].map(|p| (acc + p) % d as u32));
            if let Some(p) = sum {
                match power[hi] {
                    Some(old) if old != p => return None,
                    Some(_) => {}
                    None => power[hi] = Some(p),
                }
            }
            if !queued[hi] && images[hi].is_some() && power[hi].is_some() {
                queued[hi] = true;
                queue.push_back(hi);
            }
        }
    }
    Some(Propagation { images, power })
}

/// The unique skew-morphism whose restriction to `X` is the map's rotation,
/// if it exists.
///
/// Power values are first computed modulo the valency `d`; once the table is
/// complete the true permutation order is computed and the whole table is
/// re-verified against the skew axiom with powers taken modulo that order.
pub fn extend_from_rotation(m: &CayleyMap) -> Option<SkewMorphism> {
    let n = m.modulus();
    let slots: Vec<Option<DihedralElement>> = m.cycle().iter().copied().map(Some).collect();
    let partner: Vec<Option<usize>> = m.inverse_index().as_slice().iter().copied().map(Some).collect();
    let prop = propagate(n, &slots, &partner)?;
    let images: Option<Vec<DihedralElement>> = prop.images.into_iter().collect();
    let power: Option<Vec<u32>> = prop.power.into_iter().collect();
    let sm = SkewMorphism::from_tables(n, images?, power?).ok()?;
    debug_assert!(sm.order() as usize % m.valency() == 0);
    debug_assert!(
        sm.is_identity() || n.elements().all(|g| sm.power(g) != 0),
        "non-identity skew-morphism with a zero power value"
    );
    Some(sm)
}

/// Proof that a Cayley map is regular: its skew-morphism, restricted to `X`,
/// is the rotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub skew: SkewMorphism,
    pub orbit_check: bool,
}

impl RegularityCertificate {
    pub fn kernel(&self) -> Subgroup {
        self.skew.power_kernel()
    }
}

/// Algebraic regularity decision, required to agree with the flag oracle.
pub fn is_regular(m: &CayleyMap) -> Result<Option<RegularityCertificate>, OracleDisagreement> {
    let algebraic = extend_from_rotation(m);
    let by_flags = flags::regular_by_flags(m);
    if algebraic.is_some() != by_flags {
        return Err(OracleDisagreement { what: "regularity", algebraic: algebraic.is_some(), flags: by_flags });
    }
    Ok(algebraic.map(|skew| {
        let orbit_check = (0..m.valency()).all(|k| skew.image(m.at(k)) == m.at(k + 1));
        RegularityCertificate { skew, orbit_check }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn map(n: u32, cycle: &[&str]) -> CayleyMap {
        let n = md(n);
        CayleyMap::new(n, cycle.iter().map(|s| n.parse_element(s).unwrap()).collect()).unwrap()
    }

    /// phi_2 / pi_2 closed forms for even n.
    fn m2_tables(n: u32) -> (BTreeMap<DihedralElement, DihedralElement>, BTreeMap<DihedralElement, u32>) {
        let m = md(n);
        let ni = n as i64;
        let mut phi = BTreeMap::new();
        let mut pi = BTreeMap::new();
        for j in 0..ni {
            let (rot, refl) = if j % 2 == 0 {
                (m.rotation(-j), m.rotation(j + 1))
            } else {
                (m.reflection(j + 1), m.reflection(-j))
            };
            phi.insert(m.rotation(j), rot);
            phi.insert(m.reflection(j), refl);
        }
        for j in 0..ni / 2 {
            pi.insert(m.rotation(2 * j + 1), ((4 * j + 3) % ni) as u32);
            pi.insert(m.reflection(ni - 2 * j - 2), ((4 * j + 3) % ni) as u32);
            pi.insert(m.rotation(2 * j), ((4 * j + 1) % ni) as u32);
            pi.insert(m.reflection(ni - 2 * j - 1), ((4 * j + 1) % ni) as u32);
        }
        (phi, pi)
    }

    #[test]
    fn m2_tables_verify() {
        let (phi, pi) = m2_tables(4);
        assert!(verify_skew(md(4), &phi, &pi).unwrap().is_valid());
    }

    #[test]
    fn identity_is_a_skew_morphism() {
        let n = md(5);
        let phi: BTreeMap<_, _> = n.elements().map(|g| (g, g)).collect();
        let pi: BTreeMap<_, _> = n.elements().map(|g| (g, 1)).collect();
        let check = verify_skew(n, &phi, &pi).unwrap();
        assert!(check.is_valid());
        assert_eq!(check.order, 1);
        let sm = SkewMorphism::from_maps(n, &phi, &pi).unwrap().unwrap();
        assert_eq!(sm.power_kernel().len(), 10);
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let n = md(4);
        let (mut phi, pi) = m2_tables(4);
        let (x, y) = (n.rotation(1), n.rotation(2));
        let (px, py) = (phi[&x], phi[&y]);
        phi.insert(x, py);
        phi.insert(y, px);
        let check = verify_skew(n, &phi, &pi).unwrap();
        assert!(matches!(check.violation, Some(Violation::Axiom { .. })));
    }

    #[test]
    fn incomplete_tables() {
        let n = md(4);
        let (mut phi, pi) = m2_tables(4);
        phi.remove(&n.reflection(3));
        assert_eq!(
            verify_skew(n, &phi, &pi),
            Err(SkewError::TablesIncomplete { table: "image", element: n.reflection(3) })
        );
    }

    #[test]
    fn extension_matches_m2_formulas() {
        let n = md(6);
        let m = map(6, &["b", "a^1", "a^2 b", "a^3", "a^4 b", "a^5"]);
        let sm = extend_from_rotation(&m).expect("M2 is regular");
        let (phi, pi) = m2_tables(6);
        for g in n.elements() {
            assert_eq!(sm.image(g), phi[&g]);
            assert_eq!(sm.power(g), pi[&g]);
        }
        assert_eq!(sm.order(), 6);
    }

    #[test]
    fn extension_failures_and_two_cycles() {
        assert!(extend_from_rotation(&map(5, &["b", "a^1 b", "a^2 b"])).is_none());
        for k in 2..=12 {
            let sm = extend_from_rotation(&map(k, &["b", "a^1 b"])).unwrap();
            assert_eq!(sm.order(), 2);
        }
    }

    #[test]
    fn m6_kernel() {
        let m = map(6, &["b", "a^1 b", "a^1", "a^4 b", "a^3 b", "a^5"]);
        let sm = extend_from_rotation(&m).unwrap();
        let n = md(6);
        assert_eq!(sm.power_kernel(), n.generated_subgroup([n.rotation(2), n.reflection(0)]));
    }

    #[test]
    fn derived_power_matches_extension() {
        let m = map(6, &["b", "a^1", "a^2 b", "a^3", "a^4 b", "a^5"]);
        let sm = extend_from_rotation(&m).unwrap();
        let derived = SkewMorphism::derive_power(m.modulus(), sm.images()).unwrap();
        assert_eq!(derived, sm.powers());
    }

    #[test]
    fn regularity_certificate() {
        let m = map(8, &["b", "a^1", "a^6 b", "a^3", "a^4 b", "a^5", "a^2 b", "a^7"]);
        let cert = is_regular(&m).unwrap().unwrap();
        assert!(cert.orbit_check);
        assert_eq!(is_regular(&map(5, &["b", "a^1", "a^4"])), Ok(None));
    }
}
