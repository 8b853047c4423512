use proptest::prelude::*;

use dihedral_maps::dihedral::DihedralElement;
use dihedral_maps::{flags, io, skew, CayleyMap, Modulus};

fn element(n: Modulus) -> impl Strategy<Value = DihedralElement> {
    (any::<bool>(), 0..n.get()).prop_map(|(flip, exp)| DihedralElement { flip, exp })
}

fn group_and_elements() -> impl Strategy<Value = (Modulus, DihedralElement, DihedralElement, DihedralElement)> {
    (2u32..=12).prop_flat_map(|k| {
        let n = Modulus::new(k).unwrap();
        (Just(n), element(n), element(n), element(n))
    })
}

/// A valid map: a random inverse-closed set grown until it generates, in random order.
fn valid_map() -> impl Strategy<Value = CayleyMap> {
    (2u32..=7, any::<u64>(), prop::collection::vec(any::<prop::sample::Index>(), 1..8)).prop_filter_map(
        "set does not generate",
        |(k, seed, picks)| {
            let n = Modulus::new(k).unwrap();
            let pool: Vec<DihedralElement> = n.elements().skip(1).collect();
            let mut set: Vec<DihedralElement> = Vec::new();
            for p in picks {
                let x = *p.get(&pool);
                if !set.contains(&x) {
                    set.push(x);
                    if n.inv(x) != x {
                        set.push(n.inv(x));
                    }
                }
            }
            // deterministic shuffle from the seed
            let mut s = seed | 1;
            for i in (1..set.len()).rev() {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                set.swap(i, (s % (i as u64 + 1)) as usize);
            }
            CayleyMap::new(n, set).ok()
        },
    )
}

proptest! {
    #[test]
    fn group_axioms((n, x, y, z) in group_and_elements()) {
        prop_assert_eq!(n.mul(n.mul(x, y), z), n.mul(x, n.mul(y, z)));
        prop_assert!(n.mul(x, n.inv(x)).is_identity());
        prop_assert_eq!(n.pow(x, n.element_order(x) as u64), DihedralElement::IDENTITY);
    }

    #[test]
    fn automorphisms_are_homomorphisms((n, x, y, _) in group_and_elements(), pick in any::<prop::sample::Index>()) {
        let autos = n.automorphisms();
        let s = *pick.get(&autos);
        prop_assert_eq!(n.apply_aut(s, n.mul(x, y)), n.mul(n.apply_aut(s, x), n.apply_aut(s, y)));
    }

    #[test]
    fn regularity_oracles_agree(m in valid_map()) {
        prop_assert_eq!(skew::extend_from_rotation(&m).is_some(), flags::regular_by_flags(&m));
    }

    #[test]
    fn faces_cover_every_arc(m in valid_map()) {
        let faces = m.trace_faces();
        let arcs = m.modulus().group_order() * m.valency();
        prop_assert_eq!(faces.faces.iter().sum::<usize>(), arcs);
    }

    #[test]
    fn automorphic_images_are_isomorphic(m in valid_map(), pick in any::<prop::sample::Index>(), shift in 0usize..8) {
        let n = m.modulus();
        let s = *pick.get(&n.automorphisms());
        let image = m.apply_automorphism(s).rotated(shift);
        prop_assert_eq!(flags::canonical_code(&image), flags::canonical_code(&m));
        prop_assert_eq!(image.trace_faces(), m.trace_faces());
        prop_assert_eq!(flags::regular_by_flags(&image), flags::regular_by_flags(&m));
        prop_assert!(m.equivalent(&image).is_some());
    }

    #[test]
    fn skew_restricts_to_rotation(m in valid_map()) {
        if let Some(sk) = skew::extend_from_rotation(&m) {
            for k in 0..m.valency() {
                prop_assert_eq!(sk.image(m.at(k)), m.at(k + 1));
            }
            prop_assert_eq!(sk.order() as usize, m.valency());
            let kernel = sk.power_kernel();
            prop_assert!(kernel.is_closed(m.modulus()));
        }
    }

    #[test]
    fn map_json_round_trip(m in valid_map()) {
        let text = io::map_to_json(&m);
        prop_assert_eq!(io::parse_map(&text).unwrap(), m.clone());
        prop_assert_eq!(io::map_to_json(&io::parse_map(&text).unwrap()), text);
    }
}
