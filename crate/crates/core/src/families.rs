//! The reflexible regular Cayley maps on dihedral groups, as explicit
//! constructors with their skew-morphism, power function and reflection
//! tables, plus recognition of an arbitrary reflexible regular map.

use std::fmt;
use std::str::FromStr;

use crate::dihedral::{DihedralElement, GroupAutomorphism, Modulus};
use crate::error::{ClassifyError, FamilyError, ParseError};
use crate::flags;
use crate::map::CayleyMap;
use crate::reflex::{self, ReflectionKind, ReflectionWitness};
use crate::skew::{self, SkewMorphism};

/// The three valency-3 maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Small3 {
    /// `CM(D_2, (b, ab, a))`, the tetrahedron.
    K4,
    /// `CM(D_3, (b, ab, a^2 b))`.
    K33,
    /// `CM(D_4, (b, a, a^{-1}))`, the cube.
    Q3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    /// `CM(D_n, (b, ab))`.
    D2Cycle,
    Small3(Small3),
    M1 { ell: u32 },
    M2,
    M3,
    M4,
    M5,
    M6,
}

impl FamilyTag {
    /// Short name without parameters, as used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::D2Cycle => "D2cycle",
            FamilyTag::Small3(Small3::K4) => "K4",
            FamilyTag::Small3(Small3::K33) => "K33",
            FamilyTag::Small3(Small3::Q3) => "Q3",
            FamilyTag::M1 { .. } => "M1",
            FamilyTag::M2 => "M2",
            FamilyTag::M3 => "M3",
            FamilyTag::M4 => "M4",
            FamilyTag::M5 => "M5",
            FamilyTag::M6 => "M6",
        }
    }

    pub fn ell(self) -> Option<u32> {
        match self {
            FamilyTag::M1 { ell } => Some(ell),
            _ => None,
        }
    }

    /// Builds a tag from a command-line name and optional `ell`.
    pub fn from_name(name: &str, ell: Option<u32>) -> Result<Self, ParseError> {
        let tag = match name.to_ascii_lowercase().as_str() {
            "d2" | "d2cycle" => FamilyTag::D2Cycle,
            "k4" | "d2-k4" => FamilyTag::Small3(Small3::K4),
            "k33" | "d3-k33" => FamilyTag::Small3(Small3::K33),
            "q3" | "d4-q3" => FamilyTag::Small3(Small3::Q3),
            "m1" => FamilyTag::M1 { ell: ell.ok_or_else(|| ParseError::FamilyTag("M1 needs ell".into()))? },
            "m2" => FamilyTag::M2,
            "m3" => FamilyTag::M3,
            "m4" => FamilyTag::M4,
            "m5" => FamilyTag::M5,
            "m6" => FamilyTag::M6,
            _ => return Err(ParseError::FamilyTag(name.to_string())),
        };
        Ok(tag)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::D2Cycle => f.write_str("D2cycle"),
            FamilyTag::Small3(Small3::K4) => f.write_str("Small3(D2-K4)"),
            FamilyTag::Small3(Small3::K33) => f.write_str("Small3(D3-K33)"),
            FamilyTag::Small3(Small3::Q3) => f.write_str("Small3(D4-Q3)"),
            FamilyTag::M1 { ell } => write!(f, "M1(l={ell})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for FamilyTag {
    type Err = ParseError;

    /// Accepts both the short names and the [`Display`](fmt::Display) form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(inner) = s.strip_prefix("Small3(").and_then(|r| r.strip_suffix(')')) {
            return FamilyTag::from_name(inner, None);
        }
        if let Some(ell) = s.strip_prefix("M1(l=").and_then(|r| r.strip_suffix(')')) {
            let ell = ell.parse().map_err(|_| ParseError::FamilyTag(s.to_string()))?;
            return Ok(FamilyTag::M1 { ell });
        }
        FamilyTag::from_name(s, None)
    }
}

/// A family map together with its verified certificates.
#[derive(Debug, Clone)]
pub struct CertifiedMap {
    pub tag: FamilyTag,
    pub map: CayleyMap,
    pub skew: SkewMorphism,
    pub reflection: ReflectionWitness,
}

/// Valency of `M1(n, ell)`: least `d >= 1` with `1 + ell + ... + ell^{d-1} = 0 (mod n)`.
pub fn m1_valency(n: Modulus, ell: u32) -> Option<usize> {
    let nn = n.get() as u64;
    let ell = ell as u64 % nn;
    let mut s = 0u64;
    for d in 1..=nn as usize {
        s = (s * ell + 1) % nn;
        if s == 0 {
            return Some(d);
        }
    }
    None
}

/// Every family tag admissible at `n`, in a fixed order.
pub fn family_parameters(n: Modulus) -> Vec<FamilyTag> {
    let k = n.get();
    let mut tags = vec![FamilyTag::D2Cycle];
    match k {
        2 => tags.push(FamilyTag::Small3(Small3::K4)),
        3 => tags.push(FamilyTag::Small3(Small3::K33)),
        4 => tags.push(FamilyTag::Small3(Small3::Q3)),
        _ => {}
    }
    for ell in 1..k {
        let sq = (ell as u64 * ell as u64) % k as u64;
        if sq == 1 && m1_valency(n, ell).is_some_and(|d| d >= 4) {
            tags.push(FamilyTag::M1 { ell });
        }
    }
    if k % 2 == 0 && k >= 4 {
        tags.push(FamilyTag::M2);
    }
    if k % 8 == 0 {
        tags.push(FamilyTag::M3);
    }
    if k % 3 == 0 {
        tags.push(FamilyTag::M4);
    }
    if k % 8 == 4 && k >= 12 {
        tags.push(FamilyTag::M5);
    }
    if k % 4 == 2 && k >= 6 {
        tags.push(FamilyTag::M6);
    }
    tags
}

fn bad(tag: FamilyTag, n: Modulus, reason: impl Into<String>) -> FamilyError {
    FamilyError::BadParameters { tag: tag.to_string(), n: n.get(), reason: reason.into() }
}

fn cert_fail(tag: FamilyTag, n: Modulus, reason: impl Into<String>) -> FamilyError {
    FamilyError::CertificationFailure { tag: tag.to_string(), n: n.get(), reason: reason.into() }
}

fn check_parameters(tag: FamilyTag, n: Modulus) -> Result<(), FamilyError> {
    let k = n.get();
    let fail = |reason: &str| Err(bad(tag, n, reason));
    match tag {
        FamilyTag::D2Cycle => Ok(()),
        FamilyTag::Small3(Small3::K4) if k != 2 => fail("defined only for n = 2"),
        FamilyTag::Small3(Small3::K33) if k != 3 => fail("defined only for n = 3"),
        FamilyTag::Small3(Small3::Q3) if k != 4 => fail("defined only for n = 4"),
        FamilyTag::Small3(_) => Ok(()),
        FamilyTag::M1 { ell } => {
            if ell >= k || (ell as u64 * ell as u64) % k as u64 != 1 {
                fail("needs 0 < ell < n with ell^2 = 1 (mod n)")
            } else if m1_valency(n, ell).is_none_or(|d| d < 4) {
                fail("valency below 4; this map is listed as D2cycle or K33")
            } else {
                Ok(())
            }
        }
        FamilyTag::M2 if k % 2 != 0 || k < 4 => fail("needs n even and n >= 4"),
        FamilyTag::M3 if k % 8 != 0 => fail("needs n a multiple of 8"),
        FamilyTag::M4 if k % 3 != 0 => fail("needs n a multiple of 3"),
        FamilyTag::M5 if k % 8 != 4 || k < 12 => fail("needs n = 8k + 4 with k >= 1"),
        FamilyTag::M6 if k % 4 != 2 || k < 6 => fail("needs n = 4k + 2 with k >= 1"),
        _ => Ok(()),
    }
}

/// The rotation cycle of a family map.
pub fn family_cycle(tag: FamilyTag, n: Modulus) -> Result<Vec<DihedralElement>, FamilyError> {
    check_parameters(tag, n)?;
    let k = n.get() as i64;
    let m = k / 2;
    let r = |e: i64| n.rotation(e);
    let s = |e: i64| n.reflection(e);
    let cycle = match tag {
        FamilyTag::D2Cycle => vec![s(0), s(1)],
        FamilyTag::Small3(Small3::K4) => vec![s(0), s(1), r(1)],
        FamilyTag::Small3(Small3::K33) => vec![s(0), s(1), s(2)],
        FamilyTag::Small3(Small3::Q3) => vec![s(0), r(1), r(-1)],
        FamilyTag::M1 { ell } => {
            let d = m1_valency(n, ell).expect("checked");
            let mut exps = Vec::with_capacity(d);
            let mut e = 0i64;
            for _ in 0..d {
                exps.push(e);
                e = (e * ell as i64 + 1) % k;
            }
            exps.into_iter().map(s).collect()
        }
        FamilyTag::M2 => (0..k).map(|i| if i % 2 == 0 { s(i) } else { r(i) }).collect(),
        // x_{2j} = a^{2j + jm} b, x_{2j+1} = a^{2j+1}
        FamilyTag::M3 => (0..k).map(|i| if i % 2 == 0 { s(i + (i / 2) * m) } else { r(i) }).collect(),
        FamilyTag::M4 => vec![r(-1), r(1), s(0), s(2)],
        FamilyTag::M5 => vec![r(-1), r(1), s(0), r(m + 1), r(m - 1), s(m + 2)],
        FamilyTag::M6 => vec![s(0), s(m - 2), r(1), s(-2), s(m), r(-1)],
    };
    Ok(cycle)
}

/// Closed forms for `phi`, `pi` and the reflection `psi`.
struct Tables {
    images: Vec<DihedralElement>,
    /// `None` where no closed form for the power function is used.
    power: Option<Vec<u32>>,
    reflection: GroupAutomorphism,
}

fn formula_tables(tag: FamilyTag, n: Modulus) -> Option<Tables> {
    let k = n.get() as i64;
    let m = k / 2;
    let r = |e: i64| n.rotation(e);
    let s = |e: i64| n.reflection(e);
    let aut = |i: i64, j: i64| n.automorphism(i, j).expect("unit multiplier");
    let rot_then_refl = |f: &dyn Fn(i64) -> DihedralElement, g: &dyn Fn(i64) -> DihedralElement| {
        (0..k).map(f).chain((0..k).map(g)).collect::<Vec<_>>()
    };
    let tables = match tag {
        FamilyTag::D2Cycle | FamilyTag::Small3(_) => return None,
        FamilyTag::M1 { ell } => {
            let l = ell as i64;
            Tables {
                images: rot_then_refl(&|j| r(j * l), &|j| s(j * l + 1)),
                power: Some(vec![1; n.group_order()]),
                reflection: aut(-l, 0),
            }
        }
        FamilyTag::M2 => Tables {
            images: rot_then_refl(
                &|j| if j % 2 == 0 { r(-j) } else { s(j + 1) },
                &|j| if j % 2 == 0 { r(j + 1) } else { s(-j) },
            ),
            power: Some(m2_power(n)),
            reflection: aut(-1, 0),
        },
        FamilyTag::M3 => Tables {
            images: rot_then_refl(
                &|j| if j % 2 == 0 { r(j / 2 * m - j) } else { s(j + 1 + (j + 1) / 2 * m) },
                &|j| if j % 2 == 0 { r(j + 1 + j / 2 * m) } else { s((j + 1) / 2 * m - j) },
            ),
            power: Some(m2_power(n)),
            reflection: aut(-1, 0),
        },
        FamilyTag::M4 => Tables {
            images: rot_then_refl(
                &|j| match j % 3 {
                    1 => s(-j + 1),
                    _ => r(-j),
                },
                &|j| match j % 3 {
                    2 => r(-j + 1),
                    _ => s(-j + 2),
                },
            ),
            power: Some(
                (0..k)
                    .map(|j| [1, 2, 3][(j % 3) as usize])
                    .chain((0..k).map(|j| [1, 3, 2][(j % 3) as usize]))
                    .collect(),
            ),
            reflection: aut(-1, 2),
        },
        FamilyTag::M5 => Tables {
            images: rot_then_refl(
                &|j| match j % 4 {
                    1 => s(-j + 1),
                    2 => s(-j + 1 + m),
                    _ => r(-j),
                },
                &|j| match j % 4 {
                    0 => r(-j + 1 + m),
                    3 => r(-j + 1),
                    _ => s(-j + 2 + m),
                },
            ),
            power: Some(
                (0..k)
                    .map(|j| [1, 2, 4, 5][(j % 4) as usize])
                    .chain((0..k).map(|j| [2, 1, 5, 4][(j % 4) as usize]))
                    .collect(),
            ),
            reflection: aut(-1, 2 + m),
        },
        FamilyTag::M6 => Tables {
            images: rot_then_refl(
                &|j| if j % 2 == 0 { r(-j) } else { s(-j - 1) },
                &|j| if j % 2 == 0 { s(-j - 2 + m) } else { r(-j - 1 + m) },
            ),
            power: None,
            reflection: aut(-1, -2 + m),
        },
    };
    Some(tables)
}

/// `pi(a^{2j+1}) = pi(a^{n-2j-2} b) = 4j+3`, `pi(a^{2j}) = pi(a^{n-2j-1} b) = 4j+1`.
fn m2_power(n: Modulus) -> Vec<u32> {
    let k = n.get() as i64;
    let mut power = vec![0u32; n.group_order()];
    for j in 0..k / 2 {
        let odd = ((4 * j + 3) % k) as u32;
        let even = ((4 * j + 1) % k) as u32;
        power[n.index(n.rotation(2 * j + 1))] = odd;
        power[n.index(n.reflection(k - 2 * j - 2))] = odd;
        power[n.index(n.rotation(2 * j))] = even;
        power[n.index(n.reflection(k - 2 * j - 1))] = even;
    }
    power
}

/// Constructs and certifies a family map.
pub fn build_family(tag: FamilyTag, n: Modulus) -> Result<CertifiedMap, FamilyError> {
    let cycle = family_cycle(tag, n)?;
    let map = CayleyMap::new(n, cycle).map_err(|e| cert_fail(tag, n, format!("invalid cycle: {e}")))?;
    let extended = skew::extend_from_rotation(&map);
    if extended.is_some() != flags::regular_by_flags(&map) {
        return Err(cert_fail(tag, n, "regularity oracles disagree"));
    }
    let extended = extended.ok_or_else(|| cert_fail(tag, n, "rotation does not extend to a skew-morphism"))?;

    let (skew, reflection) = match formula_tables(tag, n) {
        None => {
            let w = reflex::find_witness(&map).ok_or_else(|| cert_fail(tag, n, "no reflection witness"))?;
            (extended, w)
        }
        Some(t) => {
            let power = match t.power {
                Some(p) => p,
                None => SkewMorphism::derive_power(n, &t.images)
                    .ok_or_else(|| cert_fail(tag, n, "image table admits no power function"))?,
            };
            let sm = SkewMorphism::from_tables(n, t.images, power)
                .map_err(|v| cert_fail(tag, n, format!("skew table: {v}")))?;
            if sm != extended {
                return Err(cert_fail(tag, n, "skew table differs from the extension of the rotation"));
            }
            let kind = if map.is_balanced() { ReflectionKind::Balanced } else { ReflectionKind::PartiallyInverting };
            (sm, ReflectionWitness { aut: t.reflection, kind })
        }
    };
    if !(0..map.valency()).all(|k| skew.image(map.at(k)) == map.at(k + 1)) {
        return Err(cert_fail(tag, n, "skew-morphism does not restrict to the rotation"));
    }
    if !reflex::reverses_rotation(&map, reflection.aut) {
        return Err(cert_fail(tag, n, format!("{} does not reverse the rotation", reflection.aut)));
    }
    if reflection.kind == ReflectionKind::PartiallyInverting && reflection.aut.i != n.get() - 1 {
        return Err(cert_fail(tag, n, "partially inverting reflection must invert a"));
    }
    if !flags::reflexible_by_flags(&map) {
        return Err(cert_fail(tag, n, "no orientation-reversing automorphism"));
    }
    Ok(CertifiedMap { tag, map, skew, reflection })
}

/// The family whose map is isomorphic to `m`, or `None` if no listed map
/// matches.
pub fn classify(m: &CayleyMap) -> Result<Option<FamilyTag>, ClassifyError> {
    match reflex::is_reflexible(m) {
        Ok(Some(_)) => {}
        Ok(None) | Err(crate::error::ReflexError::NotRegular) => return Err(ClassifyError::NotReflexibleRegular),
        Err(crate::error::ReflexError::Oracle(o)) => return Err(o.into()),
    }
    let n = m.modulus();
    let code = flags::canonical_code(m);
    for tag in family_parameters(n) {
        let built = build_family(tag, n)?;
        if built.map.valency() == m.valency() && flags::canonical_code(&built.map) == code {
            return Ok(Some(tag));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn strs(cycle: &[DihedralElement]) -> Vec<String> {
        cycle.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn family_cycles_expand() {
        assert_eq!(strs(&family_cycle(FamilyTag::M4, md(3)).unwrap()), ["a^2", "a^1", "b", "a^2 b"]);
        assert_eq!(
            strs(&family_cycle(FamilyTag::M5, md(12)).unwrap()),
            ["a^11", "a^1", "b", "a^7", "a^5", "a^8 b"]
        );
        assert_eq!(
            strs(&family_cycle(FamilyTag::M3, md(8)).unwrap()),
            ["b", "a^1", "a^6 b", "a^3", "a^4 b", "a^5", "a^2 b", "a^7"]
        );
        // endpoints of the n = 16 cycle: a^{m+2} b third, a^{m-2} b second to last
        let c = family_cycle(FamilyTag::M3, md(16)).unwrap();
        assert_eq!(c[2], md(16).reflection(10));
        assert_eq!(c[14], md(16).reflection(6));
    }

    #[test]
    fn parameters() {
        use FamilyTag::*;
        assert_eq!(family_parameters(md(12)), vec![D2Cycle, M1 { ell: 1 }, M1 { ell: 5 }, M1 { ell: 7 }, M2, M4, M5]);
        assert_eq!(family_parameters(md(3)), vec![D2Cycle, Small3(self::Small3::K33), M4]);
        assert_eq!(family_parameters(md(5)), vec![D2Cycle, M1 { ell: 1 }]);
        assert_eq!(family_parameters(md(4)), vec![D2Cycle, Small3(self::Small3::Q3), M1 { ell: 1 }, M2]);
    }

    #[test]
    fn m1_valencies() {
        assert_eq!(m1_valency(md(12), 5), Some(4));
        assert_eq!(m1_valency(md(12), 7), Some(6));
        assert_eq!(m1_valency(md(12), 11), Some(2));
        assert_eq!(m1_valency(md(9), 1), Some(9));
        assert_eq!(m1_valency(md(7), 2), Some(3));
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(build_family(FamilyTag::M3, md(12)), Err(FamilyError::BadParameters { .. })));
        assert!(matches!(build_family(FamilyTag::M1 { ell: 11 }, md(12)), Err(FamilyError::BadParameters { .. })));
        assert!(matches!(build_family(FamilyTag::M1 { ell: 2 }, md(7)), Err(FamilyError::BadParameters { .. })));
        assert!(matches!(build_family(FamilyTag::M5, md(4)), Err(FamilyError::BadParameters { .. })));
    }

    #[test]
    fn tag_names_round_trip() {
        for n in 2..=24 {
            for tag in family_parameters(md(n)) {
                assert_eq!(tag.to_string().parse::<FamilyTag>().unwrap(), tag);
                assert_eq!(FamilyTag::from_name(tag.name(), tag.ell()).unwrap(), tag);
            }
        }
    }

    #[test]
    fn every_admissible_family_certifies() {
        for k in 2..=24 {
            let n = md(k);
            for tag in family_parameters(n) {
                let c = build_family(tag, n).unwrap_or_else(|e| panic!("{tag} at n = {k}: {e}"));
                assert!(skew::is_regular(&c.map).unwrap().is_some());
                assert!(reflex::reflexible_by_automorphism(&c.map).unwrap().is_some());
                assert!(flags::reflexible_by_flags(&c.map));
            }
        }
    }

    #[test]
    fn reflection_index_by_family() {
        for k in 2..=24 {
            let n = md(k);
            for tag in family_parameters(n) {
                let c = build_family(tag, n).unwrap();
                let expected = match tag {
                    FamilyTag::M4 | FamilyTag::M5 => Some(1),
                    FamilyTag::M2 | FamilyTag::M3 => Some(2),
                    FamilyTag::M6 => Some(3),
                    FamilyTag::M1 { .. } | FamilyTag::D2Cycle => None,
                    FamilyTag::Small3(_) => continue,
                };
                assert_eq!(reflex::reflection_index(&c.map), expected, "{tag} at n = {k}");
            }
        }
    }

    #[test]
    fn classify_round_trip() {
        for k in 2..=16 {
            let n = md(k);
            for tag in family_parameters(n) {
                let c = build_family(tag, n).unwrap();
                assert_eq!(classify(&c.map).unwrap(), Some(tag), "n = {k}");
            }
        }
    }

    #[test]
    fn classify_is_invariant() {
        let n = md(6);
        let m2 = build_family(FamilyTag::M2, n).unwrap().map;
        assert_eq!(classify(&m2.rotated(3)).unwrap(), Some(FamilyTag::M2));
        let m6 = build_family(FamilyTag::M6, n).unwrap().map;
        let moved = m6.apply_automorphism(n.automorphism(5, 2).unwrap());
        assert_eq!(classify(&moved).unwrap(), Some(FamilyTag::M6));
        let k33 = CayleyMap::new(md(3), vec![md(3).reflection(0), md(3).reflection(1), md(3).reflection(2)]).unwrap();
        assert_eq!(classify(&k33).unwrap(), Some(FamilyTag::Small3(Small3::K33)));
    }

    #[test]
    fn classify_rejects_chiral() {
        let n = md(7);
        let m = CayleyMap::new(n, vec![n.reflection(0), n.reflection(1), n.reflection(3)]).unwrap();
        assert_eq!(classify(&m), Err(ClassifyError::NotReflexibleRegular));
    }
}
