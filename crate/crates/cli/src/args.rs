use std::path::PathBuf;

use charp_core::algebra::Mode;
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "charp", version, about = "Witt vectors, ASW cokernels, finite groups and genus bounds in characteristic p")]
pub struct Cli {
    /// Human-readable key/value listing instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Worker threads for grid computations.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Emit `timing_ms: null` so output is byte-stable.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Witt vector arithmetic over a coordinate ring.
    Witt {
        #[command(subcommand)]
        op: WittCmd,
    },
    /// Artin-Schreier-Witt cokernels.
    Asw {
        #[command(subcommand)]
        op: AswCmd,
    },
    /// Finite permutation groups.
    Group {
        #[command(subcommand)]
        op: GroupCmd,
    },
    /// Embedding problems.
    Embed {
        #[command(subcommand)]
        op: EmbedCmd,
    },
    /// Covers as group actions.
    Patch {
        #[command(subcommand)]
        op: PatchCmd,
    },
    /// Genus computations.
    Curve {
        #[command(subcommand)]
        op: CurveCmd,
    },
    /// Re-run the command recorded in a JSON report's `inputs` block.
    Replay {
        /// Report file; standard input when omitted.
        file: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// Ring descriptor, e.g. `F(5,1)[x,1/(x*(x-1))]`.
    #[arg(long)]
    pub ring: String,
    #[arg(long, default_value = "geometric")]
    pub mode: Mode,
}

#[derive(Subcommand, Debug)]
pub enum WittCmd {
    Add(WittBinary),
    Mul(WittBinary),
    Pmap(WittUnary),
}

#[derive(Args, Debug)]
pub struct WittBinary {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long)]
    pub n: usize,
    /// Vector such as `(x, 1/x)`.
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub v: String,
}

#[derive(Args, Debug)]
pub struct WittUnary {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub u: String,
}

#[derive(Subcommand, Debug)]
pub enum AswCmd {
    /// Truncated cokernel; `--n` and `--deg` accept comma lists for a grid.
    Cokernel(AswGrid),
    /// Count of Z/p^n covers with conductor window `--deg`.
    Covers(AswSingle),
    /// Prime-to-p rank together with the p-part at levels 1..n.
    Report(AswReport),
}

#[derive(Args, Debug)]
pub struct AswGrid {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long)]
    pub n: String,
    #[arg(long)]
    pub deg: String,
}

#[derive(Args, Debug)]
pub struct AswSingle {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub deg: usize,
}

#[derive(Args, Debug)]
pub struct AswReport {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub deg: usize,
    #[arg(long, default_value_t = 0)]
    pub genus: u64,
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Subgroup generated by the elements of p-power order.
    Quasip {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
    },
    Perfect {
        #[arg(long)]
        group: String,
    },
    Minnormal {
        #[arg(long)]
        group: String,
    },
    Mingen {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 6)]
        cap_k: usize,
    },
    /// Heisenberg group over Z/p^m, or a product over `--orders`.
    Heisenberg {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        m: Option<u32>,
        /// Cyclic orders of an abelian p-group, e.g. `2,2`.
        #[arg(long)]
        orders: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum EmbedCmd {
    /// Reduction tree down to minimal normal kernels.
    Reduce {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        p: u64,
    },
    /// Whether d(G/p(G)) <= 2g + r - 1.
    Abhyankar {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        genus: usize,
        #[arg(long, default_value_t = 1)]
        punctures: usize,
    },
    Splitify {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        gp: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum PatchCmd {
    /// Components of the glued regular covers of G and H.
    Components {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Induce the G-set G/K (K = `--stab`, trivial by default) up to Gamma.
    Induce {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        stab: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CurveCmd {
    Hurwitz {
        #[arg(long)]
        degree: u64,
        #[arg(long, default_value_t = 0)]
        base_genus: u64,
        #[arg(long)]
        p: u64,
        /// Fibers separated by `;`, indices by `,`: `2;2;2;2`.
        #[arg(long, default_value = "")]
        fibers: String,
    },
    /// Genus bound for the curve u^{p^n} - u = y^{p^n + 1}.
    Family {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
    /// Smallest genus g >= 2 with 2g > d(H^l).
    GenusFor {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long)]
        p: u64,
    },
}
