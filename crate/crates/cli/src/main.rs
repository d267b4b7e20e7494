mod commands;
mod error;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::EXIT_USAGE;

#[derive(Parser, Debug)]
#[command(name = "bpt", version, about = "Blueprints, their subshifts, the domino problem and geometric tilings")]
pub struct Cli {
    /// Write a run manifest (inputs, parameters, output digests) to this file.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Closure {
    /// Words up to this length are closed under the relations (default depends on the command).
    #[arg(long)]
    pub closure_len: Option<usize>,
    /// Cap on consistent words in the bounded closure.
    #[arg(long, default_value_t = 2_000_000)]
    pub closure_words: usize,
}

#[derive(Args, Debug, Clone)]
pub struct PatchArgs {
    /// Tile-set file, or a built-in name (keyed_square, ab).
    #[arg(long)]
    pub tiles: String,
    #[arg(long, short = 'k')]
    pub k: usize,
    #[arg(long, short = 'l')]
    pub l: usize,
    /// Relations are listed for |w| + |w′| ≤ min(L, cap).
    #[arg(long, default_value_t = 3)]
    pub relation_cap: usize,
    #[arg(long, default_value_t = 100_000)]
    pub max_relations: usize,
    #[arg(long, default_value_t = 2_000_000)]
    pub max_nodes: usize,
    #[arg(long, default_value_t = 10_000)]
    pub max_patches: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Svg,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and check a blueprint, a pattern file and/or a tile set.
    Validate {
        #[arg(long)]
        blueprint: Option<String>,
        /// Needs --blueprint.
        #[arg(long)]
        patterns: Option<String>,
        #[arg(long)]
        tiles: Option<String>,
    },
    /// Enumerate the partial models on the ball of a radius.
    Models {
        #[arg(long)]
        blueprint: String,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = 1000)]
        max_models: usize,
        #[command(flatten)]
        closure: Closure,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Model graph of a partial model on the ball of a radius.
    Graph {
        #[arg(long)]
        blueprint: String,
        #[arg(long)]
        radius: usize,
        /// Which partial model, in enumeration order.
        #[arg(long, default_value_t = 0)]
        model: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[command(flatten)]
        closure: Closure,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count (and list) the locally admissible windows.
    Admissible {
        #[arg(long)]
        blueprint: String,
        #[arg(long)]
        patterns: String,
        /// Window on the ball of this radius.
        #[arg(long, conflicts_with = "grid")]
        radius: Option<usize>,
        /// Window on the words x^i y^j, given as "x,y,width,height".
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 1_000_000)]
        max_windows: usize,
        #[command(flatten)]
        closure: Closure,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a pattern set to nearest-neighbor form.
    NnConvert {
        #[arg(long)]
        blueprint: String,
        #[arg(long)]
        patterns: String,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        #[command(flatten)]
        closure: Closure,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Semi-decide the domino problem and emit a re-verified certificate.
    Domino {
        #[arg(long)]
        blueprint: String,
        #[arg(long)]
        patterns: String,
        /// "default" or "r:v,r:v,…" (radius : max quotient vertices).
        #[arg(long, default_value = "default")]
        schedule: String,
        /// Search only for a quotient certificate with exactly this many vertices.
        #[arg(long)]
        vertices: Option<usize>,
        #[arg(long, default_value_t = 200_000)]
        max_nodes: usize,
        /// Cap on colorings the emptiness re-verifier may enumerate.
        #[arg(long, default_value_t = 1 << 24)]
        verifier_cap: u128,
        #[command(flatten)]
        closure: Closure,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile the transferred pattern set QI(F, N).
    QiCompile {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Pattern set F over the target blueprint.
        #[arg(long)]
        patterns: String,
        #[arg(long, short = 'n')]
        n: usize,
        #[arg(long, default_value_t = 20_000)]
        max_letters: u128,
        #[arg(long, default_value_t = 2_000_000)]
        max_patterns: usize,
        #[command(flatten)]
        closure: Closure,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode random windows along the identity and decode them with γ.
    QiRoundtrip {
        #[arg(long)]
        blueprint: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        closure: Closure,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the patch blueprint Γ(P, K, L) of a tile set.
    GeomBuild {
        #[command(flatten)]
        patch: PatchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translate nearest-neighbor patterns over a patch blueprint to pretiling codings.
    GeomTranslate {
        #[command(flatten)]
        patch: PatchArgs,
        /// Pattern file over the patch blueprint.
        #[arg(long, conflicts_with = "hard_square")]
        patterns: Option<String>,
        /// Forbid color 1 on both ends of every generator.
        #[arg(long)]
        hard_square: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a patch of a tile set (svg, text) or a model graph (dot, text).
    Render {
        #[arg(long, conflicts_with = "blueprint")]
        tiles: Option<String>,
        /// Patch radius squared, a rational.
        #[arg(long, default_value = "1/2")]
        r2: String,
        /// Which patch, in canonical order.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        blueprint: Option<String>,
        #[arg(long, default_value_t = 1)]
        radius: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        closure: Closure,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("bpt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
