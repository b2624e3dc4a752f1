use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "perfectoid", version, about = "Finite-precision perfectoid arithmetic")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Residue characteristic, used for text inputs and configuration-free contexts.
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Precision cap N; for `sharp` the target precision.
    #[arg(long, global = true)]
    pub prec: Option<u32>,
    /// Exponent denominator cap m (exponents lie in (1/p^m)Z).
    #[arg(long, global = true)]
    pub dencap: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Teichmuller-style lift x -> x^sharp of a tilt element.
    Sharp { input: String },
    /// Reduction modulo p (untilt input) or lift of digits (tilt input).
    TiltReduce { input: String },
    /// The untilting map on a Witt vector.
    Theta { input: String },
    #[command(subcommand)]
    Witt(WittCmd),
    /// Newton polygon of a polynomial.
    Newton { input: String },
    /// Transfer a tilt polynomial to the untilt at a level n.
    Transfer {
        #[arg(long, default_value_t = 0)]
        n: u32,
        input: String,
    },
    /// A root of a polynomial.
    Root { input: String },
    /// Digit decomposition of an untilt Tate series.
    Decompose {
        #[arg(long)]
        c: u32,
        input: String,
    },
    /// Approximate a homogeneous untilt series by a sharp.
    Approx {
        #[arg(long)]
        c: String,
        #[arg(long)]
        eps: String,
        input: String,
    },
    /// Check the approximation contract for a pair (f, g).
    Verify {
        #[arg(long)]
        c: String,
        #[arg(long)]
        eps: String,
        f: String,
        g: String,
    },
    #[command(subcommand)]
    Disc(DiscCmd),
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Run the acceptance checks.
    Suite {
        /// Restrict to these criteria.
        #[arg(long = "only", value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum WittCmd {
    Add { a: String, b: String },
    Mul { a: String, b: String },
    Teichmuller {
        #[arg(long)]
        length: usize,
        input: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum DiscCmd {
    /// Value of a polynomial at a point.
    Eval {
        input: String,
        #[arg(long)]
        point: String,
    },
    /// Membership of a point in a rational subset.
    Member { subset: String, point: String },
    /// Whether x specializes to y.
    Specializes { x: String, y: String },
}

#[derive(Subcommand, Debug)]
pub enum ToricCmd {
    /// Lattice points of the section polytope.
    Sections { fan: String, divisor: String },
    /// Smoothness and completeness of a fan.
    Smooth { fan: String },
    /// Transfer a homogeneous hypersurface to the tilt.
    Transfer {
        input: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        eps: String,
        /// Defaults to projective space of matching dimension.
        #[arg(long)]
        fan: Option<String>,
    },
}
