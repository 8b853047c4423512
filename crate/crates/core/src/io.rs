//! Interchange formats: map files, skew-morphism and reflection dumps, and
//! census reports as JSON, CSV or Markdown.
//!
//! Objects keyed by element text are emitted in sorted key order, so equal
//! inputs always produce identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::census::{CensusReport, Verdict};
use crate::dihedral::Modulus;
use crate::error::{InputError, ParseError};
use crate::families::CertifiedMap;
use crate::map::CayleyMap;
use crate::quotient::QuotientLaws;
use crate::reflex::ReflectionWitness;
use crate::skew::SkewMorphism;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub n: u32,
    pub cycle: Vec<String>,
}

impl From<&CayleyMap> for MapJson {
    fn from(m: &CayleyMap) -> Self {
        MapJson { n: m.modulus().get(), cycle: m.cycle().iter().map(|x| x.to_string()).collect() }
    }
}

impl MapJson {
    pub fn to_map(&self) -> Result<CayleyMap, InputError> {
        let n = Modulus::new(self.n).ok_or(ParseError::Modulus(self.n))?;
        let cycle = self.cycle.iter().map(|s| n.parse_element(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(CayleyMap::new(n, cycle)?)
    }
}

pub fn parse_map(text: &str) -> Result<CayleyMap, InputError> {
    let raw: MapJson = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    raw.to_map()
}

pub fn map_to_json(m: &CayleyMap) -> String {
    to_pretty(&MapJson::from(m))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewJson {
    pub order: u32,
    pub images: BTreeMap<String, String>,
    pub power: BTreeMap<String, u32>,
}

impl From<&SkewMorphism> for SkewJson {
    fn from(s: &SkewMorphism) -> Self {
        let n = s.modulus();
        SkewJson {
            order: s.order(),
            images: n.elements().map(|g| (g.to_string(), s.image(g).to_string())).collect(),
            power: n.elements().map(|g| (g.to_string(), s.power(g))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionJson {
    pub i: u32,
    pub j: u32,
    pub kind: String,
}

impl From<&ReflectionWitness> for ReflectionJson {
    fn from(w: &ReflectionWitness) -> Self {
        ReflectionJson { i: w.aut.i, j: w.aut.j, kind: w.kind.as_str().to_string() }
    }
}

/// Map file extended with the family tag, skew-morphism and reflection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedJson {
    #[serde(flatten)]
    pub map: MapJson,
    pub tag: String,
    pub skew: SkewJson,
    pub reflection: ReflectionJson,
}

pub fn certified_to_json(c: &CertifiedMap) -> String {
    to_pretty(&CertifiedJson {
        map: MapJson::from(&c.map),
        tag: c.tag.to_string(),
        skew: SkewJson::from(&c.skew),
        reflection: ReflectionJson::from(&c.reflection),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientJson {
    pub subgroup: String,
    pub quotient: MapJson,
    pub laws: LawsJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawsJson {
    pub regular: bool,
    pub induced_skew: bool,
    pub order_bound: bool,
    pub equality_iff_union: bool,
    pub power_congruence: bool,
    pub union_of_cosets: bool,
    pub parent_order: u32,
    pub quotient_order: u32,
    pub subgroup_order: usize,
    pub findings: Vec<String>,
}

pub fn quotient_to_json(laws: &QuotientLaws) -> String {
    to_pretty(&QuotientJson {
        subgroup: laws.block.clone(),
        quotient: MapJson::from(&laws.quotient),
        laws: LawsJson {
            regular: laws.regular,
            induced_skew: laws.induced_skew,
            order_bound: laws.order_bound,
            equality_iff_union: laws.equality_iff_union,
            power_congruence: laws.power_congruence,
            union_of_cosets: laws.union_of_cosets,
            parent_order: laws.parent_order,
            quotient_order: laws.quotient_order,
            subgroup_order: laws.subgroup_order,
            findings: laws.findings.clone(),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub d: usize,
    pub cycle: Vec<String>,
    pub family: Option<String>,
    pub ell: Option<u32>,
    pub genus: u32,
    pub reflection_index: Option<usize>,
    pub balanced: bool,
    /// Number of distinct maps (cycles up to rotation) in the class.
    pub maps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub n: u32,
    pub verdict: String,
    pub problems: Vec<String>,
    pub expected: Vec<String>,
    pub classes: Vec<ClassJson>,
}

impl From<&CensusReport> for ReportJson {
    fn from(r: &CensusReport) -> Self {
        let (verdict, problems) = match &r.verdict {
            Verdict::Match => ("match", Vec::new()),
            Verdict::Mismatch(p) => ("mismatch", p.clone()),
        };
        ReportJson {
            n: r.n,
            verdict: verdict.to_string(),
            problems,
            expected: r.expected.iter().map(|t| t.to_string()).collect(),
            classes: r
                .classes
                .iter()
                .map(|c| ClassJson {
                    d: c.representative.valency(),
                    cycle: MapJson::from(&c.representative).cycle,
                    family: c.family.map(|t| t.name().to_string()),
                    ell: c.family.and_then(|t| t.ell()),
                    genus: c.genus,
                    reflection_index: c.reflection_index,
                    balanced: c.balanced,
                    maps: c.size,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(format!("unknown format {other:?}; expected json, csv or markdown")),
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn render_reports(reports: &[CensusReport], format: ReportFormat) -> String {
    let rows: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
    match format {
        ReportFormat::Json => to_pretty(&rows),
        ReportFormat::Csv => {
            let mut out = String::from("n,d,family,ell,genus,reflection_index\n");
            for r in &rows {
                for c in &r.classes {
                    let family = c.family.clone().unwrap_or_else(|| "unmatched".into());
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        r.n,
                        c.d,
                        family,
                        opt(c.ell),
                        c.genus,
                        opt(c.reflection_index)
                    );
                }
            }
            out
        }
        ReportFormat::Markdown => {
            let mut out = String::from("| n | d | family | ell | genus | reflection index | cycle |\n");
            out.push_str("|---|---|---|---|---|---|---|\n");
            for r in &rows {
                for c in &r.classes {
                    let family = c.family.clone().unwrap_or_else(|| "**unmatched**".into());
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} | {} | {} | ({}) |",
                        r.n,
                        c.d,
                        family,
                        opt(c.ell),
                        c.genus,
                        opt(c.reflection_index),
                        c.cycle.join(", ")
                    );
                }
            }
            for r in &rows {
                if !r.problems.is_empty() {
                    let _ = writeln!(out, "\nn = {} mismatch:", r.n);
                    for p in &r.problems {
                        let _ = writeln!(out, "- {p}");
                    }
                }
            }
            out
        }
    }
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serialises");
    s.push('\n');
    s
}
