//! Combinatorial view of a Cayley map as a set of arcs with two operations:
//! rotation around the tail vertex and reversal along the edge.
//!
//! Map automorphisms are arc bijections commuting with both operations
//! (orientation-preserving) or commuting with reversal and inverting the
//! rotation (orientation-reversing). They are found by propagation from a
//! single root assignment, which either closes into a bijection or hits a
//! conflict. Nothing here depends on the skew-morphism engine, so the two
//! regularity deciders check each other.

use crate::dihedral::Modulus;
use crate::map::CayleyMap;

/// Orientation behaviour of a sought automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// Arcs `(g, k)` of a Cayley map, indexed `g * d + k`.
#[derive(Debug, Clone)]
pub struct ArcStructure {
    d: usize,
    /// `(g, k) -> (g, k + 1)`
    next: Vec<usize>,
    /// `(g, k) -> (g, k - 1)`
    prev: Vec<usize>,
    /// `(g, k) -> (g x_k, c(k))`
    reverse: Vec<usize>,
}

impl ArcStructure {
    pub fn new(m: &CayleyMap) -> Self {
        let n: Modulus = m.modulus();
        let cycle = m.cycle();
        let d = cycle.len();
        // partner positions, found by scanning products for the identity
        let partner: Vec<usize> = cycle
            .iter()
            .map(|&x| {
                cycle
                    .iter()
                    .position(|&y| n.mul(x, y).is_identity())
                    .expect("inverse-closed cycle")
            })
            .collect();
        let arcs = n.group_order() * d;
        let mut next = Vec::with_capacity(arcs);
        let mut prev = Vec::with_capacity(arcs);
        let mut reverse = Vec::with_capacity(arcs);
        for (gi, g) in n.elements().enumerate() {
            for k in 0..d {
                next.push(gi * d + (k + 1) % d);
                prev.push(gi * d + (k + d - 1) % d);
                let head = n.index(n.mul(g, cycle[k]));
                reverse.push(head * d + partner[k]);
            }
        }
        ArcStructure { d, next, prev, reverse }
    }

    pub fn arc_count(&self) -> usize {
        self.next.len()
    }

    pub fn valency(&self) -> usize {
        self.d
    }

    /// Propagates `root -> target` through rotation and reversal moves.
    /// Returns the full arc permutation when it is a well-defined bijection.
    pub fn automorphism(&self, root: usize, target: usize, orientation: Orientation) -> Option<Vec<usize>> {
        let arcs = self.arc_count();
        const UNSET: usize = usize::MAX;
        let mut image = vec![UNSET; arcs];
        let mut hit = vec![false; arcs];
        let mut stack = vec![(root, target)];
        image[root] = target;
        hit[target] = true;
        let target_rot = match orientation {
            Orientation::Preserving => &self.next,
            Orientation::Reversing => &self.prev,
        };
        while let Some((a, b)) = stack.pop() {
            for (src, dst) in [(self.next[a], target_rot[b]), (self.reverse[a], self.reverse[b])] {
                if image[src] == UNSET {
                    if hit[dst] {
                        return None;
                    }
                    image[src] = dst;
                    hit[dst] = true;
                    stack.push((src, dst));
                } else if image[src] != dst {
                    return None;
                }
            }
        }
        // connected maps reach every arc from the root
        image.iter().all(|&x| x != UNSET).then_some(image)
    }

    /// Number of orientation-preserving automorphisms (every arc tried as a target).
    pub fn preserving_automorphism_count(&self) -> usize {
        (0..self.arc_count())
            .filter(|&t| self.automorphism(0, t, Orientation::Preserving).is_some())
            .count()
    }

    /// Rooted canonical code: arcs labelled in breadth-first discovery order
    /// from `root`, recording the labels of each arc's rotation successor and
    /// reversal. Equal codes mean an orientation-preserving isomorphism that
    /// maps root to root.
    pub fn rooted_code(&self, root: usize) -> Vec<u32> {
        let arcs = self.arc_count();
        let mut label = vec![u32::MAX; arcs];
        let mut order = Vec::with_capacity(arcs);
        label[root] = 0;
        order.push(root);
        let mut code = Vec::with_capacity(2 * arcs);
        let mut i = 0;
        while i < order.len() {
            let a = order[i];
            for b in [self.next[a], self.reverse[a]] {
                if label[b] == u32::MAX {
                    label[b] = order.len() as u32;
                    order.push(b);
                }
                code.push(label[b]);
            }
            i += 1;
        }
        code
    }
}

/// Orientation-preserving automorphisms reach every arc at the identity
/// vertex from `(1, x_0)`. Together with left translations this makes the
/// automorphism group transitive on all arcs.
pub fn regular_by_flags(m: &CayleyMap) -> bool {
    let arcs = ArcStructure::new(m);
    // identity vertex has index 0, so its arcs are 0..d
    (0..arcs.valency()).all(|t| arcs.automorphism(0, t, Orientation::Preserving).is_some())
}

/// An orientation-reversing automorphism fixing the identity vertex exists.
pub fn reflexible_by_flags(m: &CayleyMap) -> bool {
    let arcs = ArcStructure::new(m);
    (0..arcs.valency()).any(|t| arcs.automorphism(0, t, Orientation::Reversing).is_some())
}

/// Canonical form for orientation-preserving map isomorphism.
///
/// Left translations are automorphisms of every Cayley map, so the minimum
/// rooted code over the arcs at the identity vertex is the minimum over all
/// arcs.
pub fn canonical_code(m: &CayleyMap) -> Vec<u32> {
    let arcs = ArcStructure::new(m);
    (0..arcs.valency()).map(|r| arcs.rooted_code(r)).min().expect("valency >= 2")
}

pub fn isomorphic(m1: &CayleyMap, m2: &CayleyMap) -> bool {
    m1.modulus() == m2.modulus() && m1.valency() == m2.valency() && canonical_code(m1) == canonical_code(m2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(n: u32, cycle: &[&str]) -> CayleyMap {
        let n = Modulus::new(n).unwrap();
        CayleyMap::new(n, cycle.iter().map(|s| n.parse_element(s).unwrap()).collect()).unwrap()
    }

    fn two_cycle(n: u32) -> CayleyMap {
        map(n, &["b", "a^1 b"])
    }

    #[test]
    fn m3_is_regular() {
        let m = map(8, &["b", "a^1", "a^6 b", "a^3", "a^4 b", "a^5", "a^2 b", "a^7"]);
        assert!(regular_by_flags(&m));
        assert!(reflexible_by_flags(&m));
    }

    #[test]
    fn non_regular_example() {
        assert!(!regular_by_flags(&map(5, &["b", "a^1", "a^4"])));
    }

    #[test]
    fn cycle_maps_are_regular() {
        for n in 2..=12 {
            assert!(regular_by_flags(&two_cycle(n)), "n = {n}");
            assert!(reflexible_by_flags(&two_cycle(n)));
        }
    }

    #[test]
    fn arc_counts() {
        let m = map(3, &["a^-1", "a^1", "b", "a^2 b"]);
        let arcs = ArcStructure::new(&m);
        assert_eq!(arcs.preserving_automorphism_count(), 2 * 3 * 4);
        let m = map(5, &["b", "a^1", "a^4"]);
        let arcs = ArcStructure::new(&m);
        let count = arcs.preserving_automorphism_count();
        assert!(count < 30 && count % 10 == 0, "left translations alone give 10, got {count}");
    }

    #[test]
    fn left_translations_are_automorphisms() {
        for m in [map(5, &["b", "a^1", "a^4"]), map(6, &["b", "a^2 b", "a^1", "a^5"])] {
            let n = m.modulus();
            let d = m.valency();
            let arcs = ArcStructure::new(&m);
            for g in n.elements() {
                let perm = arcs
                    .automorphism(0, n.index(g) * d, Orientation::Preserving)
                    .expect("left translation");
                for h in n.elements() {
                    for k in 0..d {
                        let gh = n.mul(g, h);
                        assert_eq!(perm[n.index(h) * d + k], n.index(gh) * d + k);
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_code_is_rotation_and_automorphism_invariant() {
        let m = map(6, &["b", "a^1", "a^2 b", "a^3", "a^4 b", "a^5"]);
        let n = m.modulus();
        let code = canonical_code(&m);
        for s in n.automorphisms() {
            for r in 0..m.valency() {
                assert_eq!(canonical_code(&m.apply_automorphism(s).rotated(r)), code);
            }
        }
        let other = map(6, &["b", "a^1 b", "a^1", "a^4 b", "a^3 b", "a^5"]);
        assert!(!isomorphic(&m, &other));
    }
}
