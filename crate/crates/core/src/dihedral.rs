//! Exact arithmetic in the dihedral group `D_n` of order `2n`.
//!
//! Elements are kept in the normal form `a^e` or `a^e b` with `0 <= e < n`,
//! so equality of elements is structural equality. The group itself is
//! represented by its [`Modulus`]; every operation that needs `n` takes it
//! explicitly.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// The order parameter `n` of `D_n`, always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(n: u32) -> Option<Self> {
        (n >= 2).then_some(Modulus(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of elements of `D_n`.
    pub fn group_order(self) -> usize {
        2 * self.0 as usize
    }

    /// Reduces an arbitrary integer exponent into `0..n`.
    pub fn reduce(self, e: i64) -> u32 {
        e.rem_euclid(self.0 as i64) as u32
    }

    pub fn identity(self) -> DihedralElement {
        DihedralElement::IDENTITY
    }

    pub fn rotation(self, e: i64) -> DihedralElement {
        DihedralElement { flip: false, exp: self.reduce(e) }
    }

    pub fn reflection(self, e: i64) -> DihedralElement {
        DihedralElement { flip: true, exp: self.reduce(e) }
    }

    /// All elements in index order: rotations first, then reflections.
    pub fn elements(self) -> impl Iterator<Item = DihedralElement> {
        (0..self.group_order()).map(move |i| self.element(i))
    }

    /// Dense index of an element in `0..2n`.
    pub fn index(self, x: DihedralElement) -> usize {
        debug_assert!(x.exp < self.0);
        x.exp as usize + if x.flip { self.0 as usize } else { 0 }
    }

    pub fn element(self, idx: usize) -> DihedralElement {
        let n = self.0 as usize;
        debug_assert!(idx < 2 * n);
        DihedralElement { flip: idx >= n, exp: (idx % n) as u32 }
    }

    /// Product in normal form, using `a^e b a^f = a^(e-f) b`.
    pub fn mul(self, x: DihedralElement, y: DihedralElement) -> DihedralElement {
        let n = self.0 as u64;
        let exp = if x.flip {
            (x.exp as u64 + n - y.exp as u64) % n
        } else {
            (x.exp as u64 + y.exp as u64) % n
        };
        DihedralElement { flip: x.flip ^ y.flip, exp: exp as u32 }
    }

    pub fn inv(self, x: DihedralElement) -> DihedralElement {
        if x.flip {
            x
        } else {
            DihedralElement { flip: false, exp: (self.0 - x.exp) % self.0 }
        }
    }

    /// Smallest `k >= 1` with `x^k = 1`.
    pub fn element_order(self, x: DihedralElement) -> u32 {
        if x.flip {
            2
        } else if x.exp == 0 {
            1
        } else {
            self.0 / gcd(self.0, x.exp)
        }
    }

    /// `x^k` for a non-negative power.
    pub fn pow(self, x: DihedralElement, k: u64) -> DihedralElement {
        if x.flip {
            if k % 2 == 0 {
                DihedralElement::IDENTITY
            } else {
                x
            }
        } else {
            let n = self.0 as u64;
            DihedralElement { flip: false, exp: ((x.exp as u64 % n) * (k % n) % n) as u32 }
        }
    }

    /// Closure of `gens` under products and inverses.
    pub fn generated_subgroup<I>(self, gens: I) -> Subgroup
    where
        I: IntoIterator<Item = DihedralElement>,
    {
        let gens: Vec<DihedralElement> = gens.into_iter().collect();
        let mut seen = vec![false; self.group_order()];
        let mut frontier = vec![DihedralElement::IDENTITY];
        seen[self.index(DihedralElement::IDENTITY)] = true;
        // Right-multiplying by generators from the identity reaches every
        // word; in a finite group that is the whole generated subgroup.
        while let Some(g) = frontier.pop() {
            for &s in &gens {
                let h = self.mul(g, s);
                let i = self.index(h);
                if !seen[i] {
                    seen[i] = true;
                    frontier.push(h);
                }
            }
        }
        Subgroup {
            elements: (0..seen.len()).filter(|&i| seen[i]).map(|i| self.element(i)).collect(),
        }
    }

    /// `true` when `gens` generates all of `D_n`.
    pub fn generates<I>(self, gens: I) -> bool
    where
        I: IntoIterator<Item = DihedralElement>,
    {
        self.generated_subgroup(gens).len() == self.group_order()
    }

    /// The rotation subgroup `A_n`.
    pub fn rotations(self) -> Subgroup {
        self.generated_subgroup([self.rotation(1)])
    }

    /// All `n * phi(n)` automorphisms `sigma_{i,j}`, ordered by `(i, j)`.
    pub fn automorphisms(self) -> Vec<GroupAutomorphism> {
        let n = self.0;
        (1..=n)
            .map(|i| i % n)
            .filter(|&i| gcd(i, n) == 1)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .flat_map(|i| (0..n).map(move |j| GroupAutomorphism { i, j }))
            .collect()
    }

    pub fn automorphism(self, i: i64, j: i64) -> Option<GroupAutomorphism> {
        let (i, j) = (self.reduce(i), self.reduce(j));
        (gcd(i, self.0) == 1).then_some(GroupAutomorphism { i, j })
    }

    /// `sigma_{i,j}`: `a^e -> a^(ie)`, `a^e b -> a^(ie+j) b`.
    pub fn apply_aut(self, s: GroupAutomorphism, x: DihedralElement) -> DihedralElement {
        let n = self.0 as u64;
        let e = (s.i as u64 * x.exp as u64) % n;
        if x.flip {
            DihedralElement { flip: true, exp: ((e + s.j as u64) % n) as u32 }
        } else {
            DihedralElement { flip: false, exp: e as u32 }
        }
    }

    /// `s ∘ t`, i.e. apply `t` first.
    pub fn compose(self, s: GroupAutomorphism, t: GroupAutomorphism) -> GroupAutomorphism {
        let n = self.0 as u64;
        GroupAutomorphism {
            i: ((s.i as u64 * t.i as u64) % n) as u32,
            j: ((s.i as u64 * t.j as u64 + s.j as u64) % n) as u32,
        }
    }

    pub fn parse_element(self, s: &str) -> Result<DihedralElement, ParseError> {
        let raw: RawElement = s.parse()?;
        Ok(raw.reduce(self))
    }

    /// Formats an element in the interchange grammar (`1`, `b`, `a^K`, `a^K b`).
    pub fn format(self, x: DihedralElement) -> String {
        x.to_string()
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `a^exp` when `flip` is false, `a^exp b` when it is true.
///
/// The derived order (rotations before reflections, then by exponent) is the
/// order used to canonicalize cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub flip: bool,
    pub exp: u32,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement { flip: false, exp: 0 };

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    pub fn is_rotation(self) -> bool {
        !self.flip
    }

    pub fn is_reflection(self) -> bool {
        self.flip
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.flip, self.exp) {
            (false, 0) => f.write_str("1"),
            (true, 0) => f.write_str("b"),
            (false, e) => write!(f, "a^{e}"),
            (true, e) => write!(f, "a^{e} b"),
        }
    }
}

/// An element as written, before its exponent is reduced modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawElement {
    pub flip: bool,
    pub exp: i64,
}

impl RawElement {
    pub fn reduce(self, n: Modulus) -> DihedralElement {
        DihedralElement { flip: self.flip, exp: n.reduce(self.exp) }
    }
}

impl FromStr for RawElement {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Element(s.to_string());
        match s {
            "1" => return Ok(RawElement { flip: false, exp: 0 }),
            "b" => return Ok(RawElement { flip: true, exp: 0 }),
            _ => {}
        }
        let rest = s.strip_prefix("a^").ok_or_else(bad)?;
        let (digits, flip) = match rest.strip_suffix(" b") {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let unsigned = digits.strip_prefix('-').unwrap_or(digits);
        if unsigned.is_empty() || !unsigned.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let exp = digits.parse::<i64>().map_err(|_| bad())?;
        Ok(RawElement { flip, exp })
    }
}

/// A subgroup stored as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<DihedralElement>,
}

impl Subgroup {
    pub fn elements(&self) -> &[DihedralElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: DihedralElement) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Full pairwise closure check.
    pub fn is_closed(&self, n: Modulus) -> bool {
        self.contains(DihedralElement::IDENTITY)
            && self.elements.iter().all(|&x| {
                self.contains(n.inv(x)) && self.elements.iter().all(|&y| self.contains(n.mul(x, y)))
            })
    }

    pub fn is_rotation_subgroup(&self) -> bool {
        self.elements.iter().all(|x| x.is_rotation())
    }

    /// Builds a subgroup from an explicit set, rejecting sets that are not closed.
    pub fn from_elements<I>(n: Modulus, elements: I) -> Option<Subgroup>
    where
        I: IntoIterator<Item = DihedralElement>,
    {
        let mut elements: Vec<DihedralElement> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        let s = Subgroup { elements };
        s.is_closed(n).then_some(s)
    }
}

/// `sigma_{i,j}` with `gcd(i, n) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    pub i: u32,
    pub j: u32,
}

impl GroupAutomorphism {
    pub const IDENTITY: GroupAutomorphism = GroupAutomorphism { i: 1, j: 0 };

    pub fn is_identity(self, n: Modulus) -> bool {
        self.i % n.get() == 1 % n.get() && self.j == 0
    }
}

impl fmt::Display for GroupAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma({}, {})", self.i, self.j)
    }
}

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&i| gcd(i, n) == 1).count() as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn products() {
        let n = m(5);
        assert_eq!(n.mul(n.reflection(0), n.rotation(1)), n.reflection(4));
        let n = m(9);
        assert_eq!(n.mul(n.identity(), n.reflection(2)), n.reflection(2));
        let n = m(7);
        assert_eq!(n.mul(n.reflection(3), n.reflection(3)), n.identity());
    }

    #[test]
    fn inverses() {
        assert_eq!(m(8).inv(m(8).rotation(3)), m(8).rotation(5));
        assert_eq!(m(6).inv(m(6).reflection(2)), m(6).reflection(2));
        assert_eq!(m(6).inv(m(6).identity()), m(6).identity());
    }

    #[test]
    fn orders() {
        assert_eq!(m(6).element_order(m(6).rotation(1)), 6);
        for k in 2..10 {
            assert_eq!(m(k).element_order(m(k).reflection(1)), 2);
        }
        let n = m(12);
        assert_eq!(n.element_order(n.rotation(-3)), 4);
        assert_eq!(n.element_order(n.identity()), 1);
    }

    #[test]
    fn subgroup_generation() {
        let n = m(6);
        let s = n.generated_subgroup([n.rotation(2), n.reflection(0)]);
        let expected: Vec<_> = [0, 2, 4]
            .iter()
            .map(|&e| n.rotation(e))
            .chain([0, 2, 4].iter().map(|&e| n.reflection(e)))
            .collect();
        assert_eq!(s.elements(), &expected[..]);
        assert!(s.is_closed(n));
        let r = n.generated_subgroup([n.rotation(1)]);
        assert_eq!(r.len(), 6);
        assert!(r.is_rotation_subgroup());
        assert!(!n.generates([n.rotation(1), n.rotation(5)]));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(m(6).automorphisms().len(), 12);
        assert_eq!(m(2).automorphisms().len(), 2);
        for k in 2..20 {
            let auts = m(k).automorphisms();
            assert_eq!(auts.len() as u32, k * euler_phi(k));
            assert!(auts.contains(&GroupAutomorphism::IDENTITY) || k == 1);
        }
    }

    #[test]
    fn automorphism_images() {
        let n = m(6);
        let s = n.automorphism(5, 2).unwrap();
        assert_eq!(n.apply_aut(s, n.reflection(3)), n.reflection(5));
        assert_eq!(n.apply_aut(s, n.identity()), n.identity());
        let n = m(7);
        let s = n.automorphism(-1, 0).unwrap();
        assert_eq!(n.apply_aut(s, n.rotation(1)), n.rotation(6));
        assert!(n.automorphism(7, 0).is_none());
    }

    #[test]
    fn element_grammar() {
        let n = m(6);
        for x in n.elements() {
            assert_eq!(n.parse_element(&x.to_string()).unwrap(), x);
        }
        assert_eq!(n.parse_element("a^-1").unwrap(), n.rotation(5));
        assert_eq!(n.parse_element("a^8 b").unwrap(), n.reflection(2));
        assert_eq!(n.parse_element("a^0").unwrap(), n.identity());
        assert_eq!(n.rotation(1).to_string(), "a^1");
        assert_eq!(n.reflection(2).to_string(), "a^2 b");
        for bad in ["", "a", "ab", "a^", "a^+1", "a^2b", "a^2  b", "a^ 2", "c", "a^x"] {
            assert!(n.parse_element(bad).is_err(), "{bad:?} should not parse");
        }
    }
}
