use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lapsim_core::analysis::{Fault, Group};
use lapsim_core::ehrhart::Strategy;
use lapsim_core::graph::Family;

#[derive(Parser, Debug)]
#[command(name = "lapsim", version, about = "Ehrhart data and structural properties of Laplacian simplices")]
pub struct Cli {
    #[command(flatten)]
    pub input: InputArgs,

    #[command(flatten)]
    pub run: RunArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Edge-list file ("n m" header, then one "u v" line per edge)
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "family")]
    pub input: Option<PathBuf>,

    /// Named graph family
    #[arg(long, global = true, value_name = "KIND", value_parser = parse_family)]
    pub family: Option<Family>,

    /// Number of vertices for --family
    #[arg(long, global = true, value_name = "N")]
    pub n: Option<usize>,

    /// Seed for random families
    #[arg(long, global = true, value_name = "S")]
    pub seed: Option<u64>,

    /// Attach a pendant vertex to every vertex
    #[arg(long, global = true)]
    pub whisker: bool,

    /// Bridge with a second family graph of the same size, e.g. complete:5
    #[arg(long, global = true, value_name = "KIND:N", value_parser = parse_family_spec)]
    pub bridge_with: Option<(Family, usize)>,

    /// Bridge endpoints in the first and second graph
    #[arg(long, global = true, value_name = "I:J", default_value = "1:1", value_parser = parse_pair)]
    pub bridge_at: (usize, usize),

    /// Hang a path of K new vertices from vertex V
    #[arg(long, global = true, value_name = "V:K", value_parser = parse_pair)]
    pub attach_path: Option<(usize, usize)>,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Force an h* strategy instead of the fastest applicable one
    #[arg(long, global = true, value_parser = parse_strategy)]
    pub strategy: Option<Strategy>,

    /// Largest normalized volume enumerated for h*
    #[arg(long, global = true, env = "LAPSIM_FPP_CAP", value_parser = clap::value_parser!(u64).range(1..))]
    pub fpp_cap: Option<u64>,

    /// Largest normalized volume for which IDP is decided
    #[arg(long, global = true, env = "LAPSIM_IDP_CAP", value_parser = clap::value_parser!(u64).range(1..))]
    pub idp_cap: Option<u64>,

    /// Largest bounding box scanned when counting lattice points
    #[arg(long, global = true, env = "LAPSIM_BOX_CAP", value_parser = clap::value_parser!(u64).range(1..))]
    pub box_cap: Option<u64>,

    /// Output format (default: text for report, csv for batch)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads (1 runs everything sequentially)
    #[arg(long, global = true, env = "LAPSIM_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full property report for one graph
    Report,
    /// One row per family member over a range of sizes
    Batch {
        /// Sizes, e.g. 3..9 (inclusive) or 4,6 or 3..5,8
        #[arg(long, value_name = "RANGE", value_parser = parse_sizes)]
        ns: Sizes,
        /// Graphs per size for random families
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
    /// Check every published value and structural claim
    VerifyPaper {
        /// Run only one group of checks
        #[arg(long, value_parser = parse_group)]
        only: Option<Group>,
        /// Compute every h* by generic enumeration
        #[arg(long)]
        no_fast_paths: bool,
        #[arg(long, hide = true, value_parser = parse_fault)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sizes(pub Vec<usize>);

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: lapsim_core::Error| e.to_string())
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: lapsim_core::Error| e.to_string())
}

fn parse_group(s: &str) -> Result<Group, String> {
    s.parse().map_err(|e: lapsim_core::Error| e.to_string())
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    s.parse().map_err(|e: lapsim_core::Error| e.to_string())
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected A:B")?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("'{x}' is not a count"));
    Ok((num(a)?, num(b)?))
}

fn parse_family_spec(s: &str) -> Result<(Family, usize), String> {
    let (kind, n) = s.split_once(':').ok_or("expected KIND:N")?;
    let n = n.parse().map_err(|_| format!("'{n}' is not a count"))?;
    Ok((parse_family(kind)?, n))
}

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("'{x}' is not a size"));
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if a > b {
                    return Err(format!("empty range {part}"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    Ok(Sizes(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(parse_sizes("3..9").unwrap().0, (3..=9).collect::<Vec<_>>());
        assert_eq!(parse_sizes("4,6").unwrap().0, vec![4, 6]);
        assert_eq!(parse_sizes("3..=4, 8").unwrap().0, vec![3, 4, 8]);
        assert!(parse_sizes("5..3").is_err());
        assert!(parse_sizes("x").is_err());
    }

    #[test]
    fn pairs() {
        assert_eq!(parse_pair("2:3").unwrap(), (2, 3));
        assert_eq!(parse_family_spec("complete:5").unwrap(), (Family::Complete, 5));
        assert!(parse_family_spec("blob:5").is_err());
    }

    #[test]
    fn clap_definition() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
