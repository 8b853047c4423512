//! Cayley maps `CM(D_n, X, p)` given as a rotation cycle, and their
//! combinatorial invariants.

use crate::dihedral::{DihedralElement, GroupAutomorphism, Modulus};
use crate::error::MapError;

/// A validated Cayley map. The cycle is the rotation `p`; its entries are `X`.
///
/// Cyclic rotations of the cycle describe the same map but are stored as
/// distinct values; use [`CayleyMap::canonical`] to pick a representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyMap {
    n: Modulus,
    cycle: Vec<DihedralElement>,
}

/// `c(k)`: position of `x_k^{-1}` in the cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseIndexMap(Vec<usize>);

impl InverseIndexMap {
    pub fn get(&self, k: usize) -> usize {
        self.0[k % self.0.len()]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &ck)| self.0[ck] == k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BalanceType {
    Balanced,
    AntiBalanced,
    TBalanced(usize),
    NotTBalanced,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceStructure {
    /// Face lengths, sorted.
    pub faces: Vec<usize>,
    pub genus: u32,
}

impl FaceStructure {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// The common face length, if all faces have the same length.
    pub fn covalency(&self) -> Option<usize> {
        let first = *self.faces.first()?;
        self.faces.iter().all(|&f| f == first).then_some(first)
    }
}

impl CayleyMap {
    /// Validates `cycle` as the rotation of a Cayley map on `D_n`.
    pub fn new(n: Modulus, cycle: Vec<DihedralElement>) -> Result<Self, MapError> {
        if cycle.len() < 2 {
            return Err(MapError::EmptyOrShort(cycle.len()));
        }
        if let Some(pos) = cycle.iter().position(|x| x.is_identity()) {
            return Err(MapError::ContainsIdentity(pos));
        }
        let mut seen = vec![false; n.group_order()];
        for &x in &cycle {
            let i = n.index(x);
            if seen[i] {
                return Err(MapError::Duplicates(x));
            }
            seen[i] = true;
        }
        if let Some(&x) = cycle.iter().find(|&&x| !seen[n.index(n.inv(x))]) {
            return Err(MapError::NotInverseClosed(x));
        }
        let span = n.generated_subgroup(cycle.iter().copied()).len();
        if span != n.group_order() {
            return Err(MapError::NotGenerating(span));
        }
        Ok(CayleyMap { n, cycle })
    }

    pub fn modulus(&self) -> Modulus {
        self.n
    }

    pub fn cycle(&self) -> &[DihedralElement] {
        &self.cycle
    }

    pub fn valency(&self) -> usize {
        self.cycle.len()
    }

    /// `x_k` with the index taken cyclically.
    pub fn at(&self, k: usize) -> DihedralElement {
        self.cycle[k % self.cycle.len()]
    }

    pub fn position(&self, x: DihedralElement) -> Option<usize> {
        self.cycle.iter().position(|&y| y == x)
    }

    /// `p(x)` for `x` in `X`.
    pub fn rotate_element(&self, x: DihedralElement) -> Option<DihedralElement> {
        self.position(x).map(|k| self.at(k + 1))
    }

    pub fn inverse_index(&self) -> InverseIndexMap {
        let n = self.n;
        InverseIndexMap(
            self.cycle
                .iter()
                .map(|&x| self.position(n.inv(x)).expect("validated maps are inverse-closed"))
                .collect(),
        )
    }

    /// `X ∩ A_n`.
    pub fn rotation_generators(&self) -> impl Iterator<Item = (usize, DihedralElement)> + '_ {
        self.cycle.iter().copied().enumerate().filter(|(_, x)| x.is_rotation())
    }

    /// Tests `p(x)^{-1} = p^t(x^{-1})`, i.e. `c(k+1) = c(k) + t (mod d)`.
    pub fn balance_type(&self) -> BalanceType {
        let d = self.valency();
        let c = self.inverse_index();
        let t = (c.get(1) + d - c.get(0)) % d;
        if !(0..d).all(|k| c.get(k + 1) == (c.get(k) + t) % d) {
            BalanceType::NotTBalanced
        } else if t == 1 {
            BalanceType::Balanced
        } else if t == d - 1 {
            BalanceType::AntiBalanced
        } else {
            BalanceType::TBalanced(t)
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.balance_type() == BalanceType::Balanced
    }

    /// Offsets `c(k) - k (mod d)`, the pattern compared by rotation type.
    fn inverse_offsets(&self) -> Vec<usize> {
        let d = self.valency();
        let c = self.inverse_index();
        (0..d).map(|k| (c.get(k) + d - k) % d).collect()
    }

    pub fn rotation_type_equal(&self, other: &CayleyMap) -> bool {
        if self.valency() != other.valency() {
            return false;
        }
        let d = self.valency();
        let (ours, theirs) = (self.inverse_offsets(), other.inverse_offsets());
        (0..d).any(|s| (0..d).all(|i| ours[i] == theirs[(i + s) % d]))
    }

    /// Traces faces by iterating the arc successor `(g, x) -> (gx, p(x^{-1}))`.
    pub fn trace_faces(&self) -> FaceStructure {
        let n = self.n;
        let d = self.valency();
        let c = self.inverse_index();
        let arcs = n.group_order() * d;
        let mut visited = vec![false; arcs];
        let mut faces = Vec::new();
        for start in 0..arcs {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut arc = start;
            while !visited[arc] {
                visited[arc] = true;
                len += 1;
                let (g, k) = (arc / d, arc % d);
                let h = n.mul(n.element(g), self.cycle[k]);
                arc = n.index(h) * d + (c.get(k) + 1) % d;
            }
            faces.push(len);
        }
        faces.sort_unstable();
        let v = n.group_order() as i64;
        let e = (n.get() as usize * d) as i64;
        let chi = v - e + faces.len() as i64;
        debug_assert!(chi <= 2 && chi % 2 == 0);
        FaceStructure { faces, genus: ((2 - chi) / 2) as u32 }
    }

    /// The map with `s` applied to every cycle entry.
    pub fn apply_automorphism(&self, s: GroupAutomorphism) -> CayleyMap {
        CayleyMap {
            n: self.n,
            cycle: self.cycle.iter().map(|&x| self.n.apply_aut(s, x)).collect(),
        }
    }

    /// Same map, cycle listed from position `start`.
    pub fn rotated(&self, start: usize) -> CayleyMap {
        let d = self.valency();
        CayleyMap { n: self.n, cycle: (0..d).map(|k| self.at(start + k)).collect() }
    }

    /// The rotation whose first entry is the least element of `X`.
    pub fn canonical(&self) -> CayleyMap {
        let start = (0..self.valency()).min_by_key(|&k| self.cycle[k]).unwrap_or(0);
        self.rotated(start)
    }

    /// Searches for `sigma` in `Aut(D_n)` with `sigma(X1) = X2` and
    /// `sigma p1 = p2 sigma`, trying every automorphism against every
    /// alignment of the second cycle.
    pub fn equivalent(&self, other: &CayleyMap) -> Option<GroupAutomorphism> {
        if self.n != other.n || self.valency() != other.valency() {
            return None;
        }
        let n = self.n;
        let d = self.valency();
        n.automorphisms().into_iter().find(|&s| {
            let first = n.apply_aut(s, self.cycle[0]);
            match other.position(first) {
                Some(shift) => (1..d).all(|k| n.apply_aut(s, self.cycle[k]) == other.at(k + shift)),
                None => false,
            }
        })
    }

    /// The underlying Cayley graph as adjacency lists over element indices.
    pub fn cayley_graph(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        n.elements()
            .map(|g| {
                let mut nb: Vec<usize> = self.cycle.iter().map(|&x| n.index(n.mul(g, x))).collect();
                nb.sort_unstable();
                nb
            })
            .collect()
    }
}

impl std::fmt::Display for CayleyMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CM(D_{}, (", self.n)?;
        for (k, x) in self.cycle.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("))")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn map(n: u32, cycle: &[&str]) -> Result<CayleyMap, MapError> {
        let n = md(n);
        CayleyMap::new(n, cycle.iter().map(|s| n.parse_element(s).unwrap()).collect())
    }

    fn m2(n: u32) -> CayleyMap {
        let m = md(n);
        let cycle = (0..n as i64)
            .map(|k| if k % 2 == 0 { m.reflection(k) } else { m.rotation(k) })
            .collect();
        CayleyMap::new(m, cycle).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(map(3, &["a^-1", "a^1", "b", "a^2 b"]).is_ok());
        assert_eq!(map(4, &["a^1", "a^3"]), Err(MapError::NotGenerating(4)));
        assert_eq!(map(5, &["b", "a^1"]), Err(MapError::NotInverseClosed(md(5).rotation(1))));
        assert_eq!(map(5, &["b"]), Err(MapError::EmptyOrShort(1)));
        assert_eq!(map(5, &["b", "1", "a^1 b"]), Err(MapError::ContainsIdentity(1)));
        assert!(matches!(map(5, &["b", "a^1 b", "b"]), Err(MapError::Duplicates(_))));
    }

    #[test]
    fn inverse_index_scan() {
        let m = map(3, &["a^-1", "a^1", "b", "a^2 b"]).unwrap();
        assert_eq!(m.inverse_index().as_slice(), &[1, 0, 2, 3]);
        let r = map(5, &["b", "a^1 b", "a^3 b"]).unwrap();
        assert_eq!(r.inverse_index().as_slice(), &[0, 1, 2]);
        let m = m2(6);
        let c = m.inverse_index();
        assert_eq!(c.as_slice(), &[0, 5, 2, 3, 4, 1]);
        assert!(c.is_involution());
    }

    #[test]
    fn balance_types() {
        // M1(8, 3): exponents 0, 1, 1+3, 1+3+9 mod 8 = 0, 1, 4, 5
        let m1 = map(8, &["b", "a^1 b", "a^4 b", "a^5 b"]).unwrap();
        assert_eq!(m1.balance_type(), BalanceType::Balanced);
        assert_eq!(m2(4).balance_type(), BalanceType::AntiBalanced);
        assert_eq!(m2(6).balance_type(), BalanceType::NotTBalanced);
    }

    #[test]
    fn rotation_types() {
        let m4_3 = map(3, &["a^-1", "a^1", "b", "a^2 b"]).unwrap();
        let m4_6 = map(6, &["a^-1", "a^1", "b", "a^2 b"]).unwrap();
        let m6_6 = map(6, &["b", "a^1 b", "a^1", "a^4 b", "a^3 b", "a^5"]).unwrap();
        assert!(m4_3.rotation_type_equal(&m4_3));
        assert!(m4_3.rotation_type_equal(&m4_6));
        assert!(!m2(6).rotation_type_equal(&m6_6));
        assert!(m2(6).rotation_type_equal(&m2(6).rotated(3)));
    }

    #[test]
    fn faces_of_small_maps() {
        let tetra = map(2, &["b", "a^1 b", "a^1"]).unwrap().trace_faces();
        assert_eq!(tetra.faces, vec![3; 4]);
        assert_eq!(tetra.genus, 0);
        let octa = map(3, &["a^-1", "a^1", "b", "a^2 b"]).unwrap().trace_faces();
        assert_eq!(octa.faces, vec![3; 8]);
        assert_eq!(octa.genus, 0);
        let m4_6 = map(6, &["a^-1", "a^1", "b", "a^2 b"]).unwrap().trace_faces();
        assert_eq!(m4_6.covalency(), Some(6));
    }

    #[test]
    fn equivalence_search() {
        // M1(8, l) for l = 3 and l = 5: exponent sequences 0,1,4,5 and 0,1,6,7
        let a = map(8, &["b", "a^1 b", "a^4 b", "a^5 b"]).unwrap();
        let b = map(8, &["b", "a^1 b", "a^6 b", "a^7 b"]).unwrap();
        assert_eq!(a.equivalent(&b), None);
        assert_eq!(a.equivalent(&a), Some(GroupAutomorphism::IDENTITY));
        let n = md(6);
        let s = n.automorphism(5, 0).unwrap();
        let image = m2(6).apply_automorphism(s).rotated(2);
        let w = m2(6).equivalent(&image).expect("automorphic image is equivalent");
        let mapped = m2(6).apply_automorphism(w);
        let shift = image.position(mapped.at(0)).unwrap();
        assert_eq!(mapped, image.rotated(shift));
    }
}
