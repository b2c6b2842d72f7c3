use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Rotational elasticity experiments: radial solitons, field-equation
/// residuals, torsion identities and winding charge.
///
/// Every flag can also be given as `key=value` in a config file passed with
/// `--config` (keys are the long flag names); flags win over the file.
#[derive(Debug, Parser)]
#[command(name = "micropolar", version, about, long_about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate the static radial equation and write the profile CSV.
    Static(StaticArgs),
    /// Evolve a radial profile in time with velocity Verlet.
    Evolve(EvolveArgs),
    /// Topological charge of a hedgehog profile, a product of copies, or a test field.
    Charge(ChargeArgs),
    /// Max-norm residual of the field equations on a rotor grid.
    Residual(ResidualArgs),
    /// Irreducible decomposition of a Nye tensor.
    Decompose(DecomposeArgs),
    /// Equilibria of the autonomous radial equation and their eigenvalues.
    Equilibria(EquilibriaArgs),
    /// Convergence check of the torsion-square identity on a random smooth field.
    IdentityCheck(IdentityArgs),
}

#[derive(Debug, Args, Clone, Default)]
pub struct Common {
    /// key=value file with defaults for any flag
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when absent)
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Clone, Default)]
pub struct ModuliArgs {
    /// Coupling λ1 (give λ1 and λ2, or c1, c2 and c3)
    #[arg(long)]
    pub lambda1: Option<f64>,
    /// Coupling λ2
    #[arg(long)]
    pub lambda2: Option<f64>,
    /// Elastic modulus c1
    #[arg(long)]
    pub c1: Option<f64>,
    /// Elastic modulus c2
    #[arg(long)]
    pub c2: Option<f64>,
    /// Elastic modulus c3
    #[arg(long)]
    pub c3: Option<f64>,
}

#[derive(Debug, Args, Clone, Default)]
pub struct ShootingArgs {
    /// w'(0), or the series amplitude for a non-linear start [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub slope0: Option<f64>,
    /// Outer radius [default: 50]
    #[arg(long)]
    pub rmax: Option<f64>,
    /// Local error tolerance per unit length [default: 1e-9]
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output spacing [default: 0.01]
    #[arg(long)]
    pub dr: Option<f64>,
}

#[derive(Debug, Args)]
pub struct StaticArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub moduli: ModuliArgs,
    #[command(flatten)]
    pub shooting: ShootingArgs,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub common: Common,
    /// Initial profile CSV; solved from the moduli and shooting flags when absent
    #[arg(long)]
    pub from_profile: Option<PathBuf>,
    #[command(flatten)]
    pub moduli: ModuliArgs,
    #[command(flatten)]
    pub shooting: ShootingArgs,
    /// Time step [default: 0.25 dr]
    #[arg(long)]
    pub dt: Option<f64>,
    /// Final time [default: 10]
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Number of energy snapshots after t = 0 [default: 10]
    #[arg(long)]
    pub snapshots: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestField {
    Identity,
    Bump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChargeMethod {
    /// 1D quadrature of the hedgehog density (single profile only)
    Radial,
    /// midpoint rule on a Cartesian lattice inside the ball
    Grid,
}

#[derive(Debug, Args)]
pub struct ChargeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Profile CSV whose hedgehog lift is measured
    #[arg(long, conflicts_with = "field")]
    pub from_profile: Option<PathBuf>,
    /// Closed-form test field instead of a profile
    #[arg(long, value_enum)]
    pub field: Option<TestField>,
    /// Ball radius [default: 40 radial, 16 grid]
    #[arg(long)]
    pub radius: Option<f64>,
    /// Quadrature spacing [default: 0.01 radial, 0.2 grid]
    #[arg(long)]
    pub h: Option<f64>,
    /// Quadrature [default: radial for one profile copy, grid otherwise]
    #[arg(long, value_enum)]
    pub method: Option<ChargeMethod>,
    /// Number of translated copies multiplied together [default: 1]
    #[arg(long)]
    pub copies: Option<usize>,
    /// Distance between consecutive copies along x [default: 16]
    #[arg(long)]
    pub separation: Option<f64>,
    /// Seed of the bump test field [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ResidualArgs {
    #[command(flatten)]
    pub common: Common,
    /// Rotor grid CSV (static field)
    #[arg(long, conflicts_with = "from_profile")]
    pub from_grid: Option<PathBuf>,
    /// Profile CSV, lifted and sampled on a centred cube
    #[arg(long)]
    pub from_profile: Option<PathBuf>,
    /// Moduli for grid input (profiles carry their own)
    #[command(flatten)]
    pub moduli: ModuliArgs,
    /// Points per axis of the sampled cube [default: 55]
    #[arg(long)]
    pub n: Option<usize>,
    /// Spacing of the sampled cube [default: 0.2]
    #[arg(long)]
    pub h: Option<f64>,
    /// Only cells with |x| ≥ this count [default: 0]
    #[arg(long)]
    pub shell_min: Option<f64>,
    /// Only cells with |x| ≤ this count [default: unbounded]
    #[arg(long)]
    pub shell_max: Option<f64>,
    /// Also write the sampled grid CSV here
    #[arg(long)]
    pub save_grid: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Nine comma-separated entries, row by row
    #[arg(long, allow_hyphen_values = true, conflicts_with = "from_grid")]
    pub matrix: Option<String>,
    /// Rotor grid CSV; the Nye tensor is taken by central differences
    #[arg(long, requires = "index")]
    pub from_grid: Option<PathBuf>,
    /// Cell index i,j,k for --from-grid
    #[arg(long)]
    pub index: Option<String>,
    /// Optional moduli for the potential density
    #[command(flatten)]
    pub moduli: ModuliArgs,
}

#[derive(Debug, Args)]
pub struct EquilibriaArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub moduli: ModuliArgs,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[command(flatten)]
    pub common: Common,
    /// Seed of the random bump field [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of bumps [default: 3]
    #[arg(long)]
    pub bumps: Option<usize>,
    /// Half-width of the support cube [default: 1.5]
    #[arg(long)]
    pub extent: Option<f64>,
    /// Points per axis of the coarse grid [default: 31]
    #[arg(long)]
    pub n: Option<usize>,
    /// Coarse spacing; the fine grid halves it [default: 0.1]
    #[arg(long)]
    pub h: Option<f64>,
}
