use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dihedral_maps::census::{self, CensusOptions, CensusReport};
use dihedral_maps::error::CensusError;
use dihedral_maps::exec::Execution;
use dihedral_maps::io::{self, ReportFormat};
use dihedral_maps::{quotient, reflex, skew};
use dihedral_maps::{CayleyMap, FamilyTag, Modulus};

/// Regular and reflexible Cayley maps on dihedral groups.
#[derive(Debug, Parser)]
#[command(name = "dmaps", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build and certify a family map
    Family {
        /// M1..M6, D2cycle, K4, K33 or Q3
        #[arg(long)]
        tag: String,
        #[arg(long)]
        n: u32,
        /// Multiplier for M1
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Regularity, reflexibility and indices of a map file
    Verify { map: PathBuf },
    /// List regular maps on D_n up to isomorphism
    Enumerate {
        #[arg(long)]
        n: u32,
        /// Keep only reflexible maps
        #[arg(long)]
        reflexible: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Name the family of a reflexible regular map
    Classify { map: PathBuf },
    /// Quotient of a map by a rotation subgroup
    Quotient {
        map: PathBuf,
        /// Generator of the subgroup, e.g. a^2
        #[arg(long)]
        subgroup: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Census cross-check over a range of n
    Report {
        /// `A..B` (inclusive) or a single value
        #[arg(long, default_value = "2..8")]
        n_range: String,
        /// json, csv or markdown
        #[arg(long, default_value = "json")]
        format: ReportFormat,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Only maps of this valency
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    max_d: Option<usize>,
    /// Run the search on one thread
    #[arg(long)]
    sequential: bool,
}

impl SearchArgs {
    fn options(&self) -> CensusOptions {
        CensusOptions {
            valency: self.d,
            max_valency: self.max_d,
            execution: if self.sequential { Execution::Sequential } else { Execution::default() },
            bound: None,
        }
        .bound_from_env()
    }
}

/// Exit status with a message for stderr.
enum Failure {
    /// The question was answered negatively, or a mismatch was found.
    Negative(String),
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn modulus(n: u32) -> Result<Modulus, Failure> {
    Modulus::new(n).ok_or_else(|| usage(format!("n must be at least 2, got {n}")))
}

fn read_map(path: &Path) -> Result<CayleyMap, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    io::parse_map(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn census_failure(e: CensusError) -> Failure {
    match e {
        CensusError::BoundExceeded { .. } => usage(e),
        CensusError::Oracle(_) => Failure::Negative(e.to_string()),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn family(tag: &str, n: u32, ell: Option<u32>, output: Option<&Path>) -> Outcome {
    let tag = FamilyTag::from_name(tag, ell).map_err(usage)?;
    let c = dihedral_maps::build_family(tag, modulus(n)?).map_err(usage)?;
    emit(&io::certified_to_json(&c), output)
}

fn verify(path: &Path) -> Outcome {
    let m = read_map(path)?;
    let faces = m.trace_faces();
    println!("map: {m}");
    println!("valency: {}", m.valency());
    println!("genus: {}", faces.genus);
    let Some(cert) = skew::is_regular(&m).map_err(|e| Failure::Negative(e.to_string()))? else {
        println!("regular: no");
        return Err(Failure::Negative("map is not regular".into()));
    };
    println!("regular: yes");
    let witness = reflex::is_reflexible(&m).map_err(|e| Failure::Negative(e.to_string()))?;
    println!("reflexible: {}", yes_no(witness.is_some()));
    if let Some(w) = witness {
        println!("reflection: {} ({})", w.aut, w.kind.as_str());
    }
    println!("balanced: {}", yes_no(m.is_balanced()));
    match reflex::reflection_index(&m) {
        Some(r) => println!("reflection index: {r}"),
        None => println!("reflection index: none"),
    }
    println!("skew-morphism order: {}", cert.skew.order());
    println!("power kernel size: {}", cert.kernel().len());
    if let Some(c) = faces.covalency() {
        println!("covalency: {c}");
    }
    Ok(())
}

fn enumerate(n: u32, reflexible: bool, search: &SearchArgs) -> Outcome {
    let n = modulus(n)?;
    let opts = search.options();
    let maps = if reflexible {
        census::enumerate_reflexible_regular(n, &opts)
    } else {
        census::enumerate_regular(n, &opts)
    }
    .map_err(census_failure)?;
    let classes = census::isomorphism_classes(&maps).map_err(|e| Failure::Negative(e.to_string()))?;
    println!("n = {n}: {} maps, {} classes", maps.len(), classes.len());
    for c in &classes {
        let m = &c.representative;
        let index = reflex::reflection_index(m).map_or("-".to_string(), |r| r.to_string());
        let kind = match reflex::is_reflexible(m) {
            Ok(Some(_)) => "reflexible",
            _ => "chiral",
        };
        println!(
            "{m}  d={} genus={} index={index} {kind} maps={}",
            m.valency(),
            m.trace_faces().genus,
            c.members.len()
        );
    }
    Ok(())
}

fn classify(path: &Path) -> Outcome {
    let m = read_map(path)?;
    match dihedral_maps::classify(&m) {
        Ok(Some(tag)) => {
            println!("{tag}");
            Ok(())
        }
        Ok(None) => Err(Failure::Negative(format!("{m} matches no listed family"))),
        Err(e) => Err(Failure::Negative(e.to_string())),
    }
}

fn quotient_cmd(path: &Path, generator: &str, output: Option<&Path>) -> Outcome {
    let m = read_map(path)?;
    let n = m.modulus();
    let g = n.parse_element(generator).map_err(usage)?;
    let block = quotient::block_subgroup(&m, n.generated_subgroup([g])).map_err(|e| Failure::Negative(e.to_string()))?;
    let laws = quotient::check_quotient_laws(&m, &block).map_err(|e| Failure::Negative(e.to_string()))?;
    emit(&io::quotient_to_json(&laws), output)?;
    if laws.all_hold() {
        Ok(())
    } else {
        Err(Failure::Negative(laws.findings.join("; ")))
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || usage(format!("malformed range {s:?}; expected A..B or a single value"));
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo < 2 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn report(range: &str, format: ReportFormat, search: &SearchArgs, output: Option<&Path>) -> Outcome {
    let (lo, hi) = parse_range(range)?;
    let opts = search.options();
    let reports: Vec<CensusReport> = (lo..=hi)
        .map(|k| census::cross_check(modulus(k)?, &opts).map_err(census_failure))
        .collect::<Result<_, _>>()?;
    emit(&io::render_reports(&reports, format), output)?;
    let bad: Vec<String> = reports.iter().filter(|r| !r.verdict.is_match()).map(|r| r.n.to_string()).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Negative(format!("census mismatch at n = {}", bad.join(", "))))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Family { tag, n, ell, output } => family(&tag, n, ell, output.as_deref()),
        Command::Verify { map } => verify(&map),
        Command::Enumerate { n, reflexible, search } => enumerate(n, reflexible, &search),
        Command::Classify { map } => classify(&map),
        Command::Quotient { map, subgroup, output } => quotient_cmd(&map, &subgroup, output.as_deref()),
        Command::Report { n_range, format, search, output } => report(&n_range, format, &search, output.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(msg)) => {
            eprintln!("dmaps: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("dmaps: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..8").ok(), Some((2, 8)));
        assert_eq!(parse_range("2..=8").ok(), Some((2, 8)));
        assert_eq!(parse_range("5").ok(), Some((5, 5)));
        assert!(parse_range("8..2").is_err());
        assert!(parse_range("1..3").is_err());
        assert!(parse_range("x").is_err());
    }
}
