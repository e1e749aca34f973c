//! Command line front end: deterministic text output over exact
//! rationals, with the exit-code contract 0 = success / all identities
//! hold, 1 = an identity failed, 2 = bad input.

pub mod files;
mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use multifan::cohomology::XiClass;
use multifan::dh::{ehrhart, volume, MultiPolytope};
use multifan::morelli::{mu_todd, sample_generic_e};
use multifan::rat::fmt_rat;
use multifan::Simplex;

use files::{FanFile, NamedFan, PolytopeFile, XiFile};

#[derive(Parser)]
#[command(
    name = "multifan",
    about = "Exact lattice-point counts, Ehrhart coefficients and residue coefficients for simplicial multi-fans",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a fan file, printing its face counts,
    /// completeness and Todd genus.
    Validate { fan: PathBuf },
    /// Print the Ehrhart coefficients a_0 ... a_n.
    Ehrhart {
        #[arg(long, conflicts_with_all = ["fan", "xi"])]
        polytope: Option<PathBuf>,
        #[arg(long, requires = "xi")]
        fan: Option<PathBuf>,
        #[arg(long)]
        xi: Option<PathBuf>,
        /// Cross-check against count interpolation and the seeded
        /// coefficient decomposition.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count lattice points of a polytope dilate or a multi-polytope
    /// face.
    Count {
        #[arg(long, conflicts_with_all = ["fan", "xi", "face"])]
        polytope: Option<PathBuf>,
        #[arg(long, requires = "xi")]
        fan: Option<PathBuf>,
        #[arg(long)]
        xi: Option<PathBuf>,
        /// Comma-separated edge ids of the face; empty for the whole
        /// multi-polytope.
        #[arg(long, default_value = "")]
        face: String,
        /// Dilation factor.
        #[arg(long, default_value_t = 1)]
        nu: i64,
    },
    /// Lattice-normalized volume of a face.
    Volume {
        #[arg(long, conflicts_with_all = ["fan", "xi"])]
        polytope: Option<PathBuf>,
        #[arg(long, requires = "xi")]
        fan: Option<PathBuf>,
        #[arg(long)]
        xi: Option<PathBuf>,
        /// For a polytope: comma-separated facet indices. For a fan:
        /// comma-separated edge ids.
        #[arg(long, default_value = "")]
        face: String,
    },
    /// Evaluate the degree-k residue coefficient of a face at seeded
    /// generic planes.
    Mu {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "")]
        face: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        samples: u64,
        /// With support levels, also print the volume-weighted sum over
        /// all faces of dimension k, which is constant across planes.
        #[arg(long)]
        xi: Option<PathBuf>,
    },
    /// Print the Todd genus of a complete fan.
    ToddGenus {
        #[arg(long)]
        fan: PathBuf,
    },
    /// Run a verification suite over the built-in fixtures or the given
    /// input files.
    Verify {
        /// One of: main, corollary, rigidity, additivity, counts.
        suite: String,
        #[arg(long, requires = "xi")]
        fan: Option<PathBuf>,
        #[arg(long)]
        xi: Option<PathBuf>,
        #[arg(long)]
        polytope: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: u64,
        #[arg(long, default_value_t = 3)]
        order: i64,
        #[arg(long, default_value_t = 5)]
        samples: u64,
    },
}

/// Failure with the exit code it maps to.
pub struct CmdError {
    pub code: i32,
    pub message: String,
}

impl CmdError {
    fn input(message: impl Into<String>) -> Self {
        CmdError {
            code: 2,
            message: message.into(),
        }
    }

    fn violation(message: impl Into<String>) -> Self {
        CmdError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<multifan::Error> for CmdError {
    fn from(e: multifan::Error) -> Self {
        CmdError::input(e.to_string())
    }
}

type CmdResult = Result<(), CmdError>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CmdError::input(format!("{}: {e}", path.display())))
}

fn load_fan(path: &Path) -> Result<NamedFan, CmdError> {
    let file: FanFile = read_json(path)?;
    file.build().map_err(CmdError::input)
}

fn load_polytope(path: &Path) -> Result<multifan::HRepPolytope, CmdError> {
    let file: PolytopeFile = read_json(path)?;
    file.build().map_err(CmdError::input)
}

fn load_xi(path: &Path, named: &NamedFan) -> Result<XiClass, CmdError> {
    let file: XiFile = read_json(path)?;
    files::resolve_xi(named, &file).map_err(CmdError::input)
}

fn parse_indices(spec: &str, len: usize) -> Result<Simplex, CmdError> {
    let mut ids = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let idx: usize = token
            .parse()
            .map_err(|_| CmdError::input(format!("bad facet index {token:?}")))?;
        if idx >= len {
            return Err(CmdError::input(format!("facet index {idx} out of range")));
        }
        ids.push(idx);
    }
    Ok(Simplex::new(ids))
}

fn cmd_validate(out: &mut dyn Write, path: &Path) -> CmdResult {
    let named = load_fan(path)?;
    let d = named.fan.diagnostics();
    let counts: Vec<String> = d.face_counts.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(out, "rank: {}", named.fan.rank());
    let _ = writeln!(out, "edges: {}", named.fan.n_edges());
    let _ = writeln!(out, "face counts: {}", counts.join(" "));
    let _ = writeln!(out, "complete: {}", d.complete);
    match d.todd_genus {
        Some(g) => {
            let _ = writeln!(out, "todd genus: {g}");
        }
        None => {
            let _ = writeln!(out, "todd genus: undefined (incomplete)");
        }
    }
    Ok(())
}

fn load_fan_xi(
    polytope: &Option<PathBuf>,
    fan: &Option<PathBuf>,
    xi: &Option<PathBuf>,
) -> Result<(multifan::SimplicialMultiFan, XiClass, Option<multifan::HRepPolytope>), CmdError> {
    match (polytope, fan) {
        (Some(p), None) => {
            let poly = load_polytope(p)?;
            let (fan, levels) = poly.normal_fan()?;
            Ok((fan, XiClass::new(levels), Some(poly)))
        }
        (None, Some(f)) => {
            let named = load_fan(f)?;
            let xi_path = xi.as_ref().ok_or_else(|| CmdError::input("missing --xi"))?;
            let levels = load_xi(xi_path, &named)?;
            Ok((named.fan, levels, None))
        }
        _ => Err(CmdError::input("give exactly one of --polytope or --fan")),
    }
}

fn cmd_ehrhart(
    out: &mut dyn Write,
    polytope: &Option<PathBuf>,
    fan: &Option<PathBuf>,
    xi: &Option<PathBuf>,
    check: bool,
    seed: u64,
) -> CmdResult {
    let (fan, levels, poly) = load_fan_xi(polytope, fan, xi)?;
    if !levels.is_t_cartier(&fan) {
        return Err(CmdError::input("xi is not T-Cartier"));
    }
    let a = ehrhart(&fan, &levels)?;
    let words: Vec<String> = a.iter().map(fmt_rat).collect();
    let _ = writeln!(out, "{}", words.join(" "));
    if check {
        verify::check_ehrhart(out, &fan, &levels, poly.as_ref(), &a, seed)?;
    }
    Ok(())
}

fn cmd_count(
    out: &mut dyn Write,
    polytope: &Option<PathBuf>,
    fan: &Option<PathBuf>,
    xi: &Option<PathBuf>,
    face: &str,
    nu: i64,
) -> CmdResult {
    if let Some(p) = polytope {
        let poly = load_polytope(p)?;
        let _ = writeln!(out, "{}", poly.brute_count(nu)?);
        return Ok(());
    }
    let f = fan.as_ref().ok_or_else(|| CmdError::input("missing --fan"))?;
    let named = load_fan(f)?;
    let xi_path = xi.as_ref().ok_or_else(|| CmdError::input("missing --xi"))?;
    let levels = load_xi(xi_path, &named)?.scale_by_int(nu);
    let k = named.parse_face(face).map_err(CmdError::input)?;
    let po = MultiPolytope::new(&named.fan, levels)?;
    let _ = writeln!(out, "{}", po.count_points(&k)?);
    Ok(())
}

fn cmd_volume(
    out: &mut dyn Write,
    polytope: &Option<PathBuf>,
    fan: &Option<PathBuf>,
    xi: &Option<PathBuf>,
    face: &str,
) -> CmdResult {
    if let Some(p) = polytope {
        let poly = load_polytope(p)?;
        let k = parse_indices(face, poly.facets().len())?;
        let _ = writeln!(out, "{}", fmt_rat(&poly.face_volume_geometric(&k)?));
        return Ok(());
    }
    let f = fan.as_ref().ok_or_else(|| CmdError::input("missing --fan"))?;
    let named = load_fan(f)?;
    let xi_path = xi.as_ref().ok_or_else(|| CmdError::input("missing --xi"))?;
    let levels = load_xi(xi_path, &named)?;
    let k = named.parse_face(face).map_err(CmdError::input)?;
    let _ = writeln!(out, "{}", fmt_rat(&volume(&named.fan, &levels, &k)?));
    Ok(())
}

fn cmd_mu(
    out: &mut dyn Write,
    fan_path: &Path,
    k: usize,
    face: &str,
    seed: u64,
    samples: u64,
    xi: &Option<PathBuf>,
) -> CmdResult {
    let named = load_fan(fan_path)?;
    let fan = &named.fan;
    let j = named.parse_face(face).map_err(CmdError::input)?;
    if j.len() != k {
        return Err(CmdError::input(format!(
            "face has {} edges but k = {k}",
            j.len()
        )));
    }
    if k > fan.rank() {
        return Err(CmdError::input("k exceeds the fan rank"));
    }
    let levels = match xi {
        Some(p) => Some(load_xi(p, &named)?),
        None => None,
    };
    let mut values = Vec::new();
    let mut sums = Vec::new();
    for s in 0..samples {
        let e = if k == 0 {
            multifan::morelli::GrassmannPoint::new(0, vec![])
        } else {
            sample_generic_e(fan, k, seed + s)
        };
        let value = mu_todd(fan, k, &j, &e)?;
        let _ = writeln!(out, "E#{s}: {}", fmt_rat(&value.value));
        values.push(value.value);
        if let Some(levels) = &levels {
            let mut total = multifan::rat::rat(0);
            for face in fan.faces(k) {
                let m = mu_todd(fan, k, face, &e)?;
                total += m.value * volume(fan, levels, face)?;
            }
            sums.push(total);
        }
    }
    if samples > 1 {
        let agree = values.windows(2).all(|w| w[0] == w[1]);
        let _ = writeln!(out, "samples agree: {agree}");
    }
    if !sums.is_empty() {
        let constant = sums.windows(2).all(|w| w[0] == w[1]);
        let _ = writeln!(
            out,
            "weighted sum over faces: {} (constant across samples: {constant})",
            fmt_rat(&sums[0])
        );
        if !constant {
            return Err(CmdError::violation("weighted sum varied across planes"));
        }
    }
    Ok(())
}

fn cmd_todd_genus(out: &mut dyn Write, fan_path: &Path) -> CmdResult {
    let named = load_fan(fan_path)?;
    let g = named.fan.todd_genus()?;
    let _ = writeln!(out, "{g}");
    Ok(())
}

/// Entry point used by both `main` and the tests; returns the process
/// exit code and writes all output to `out`.
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Validate { fan } => cmd_validate(out, fan),
        Command::Ehrhart {
            polytope,
            fan,
            xi,
            check,
            seed,
        } => cmd_ehrhart(out, polytope, fan, xi, *check, *seed),
        Command::Count {
            polytope,
            fan,
            xi,
            face,
            nu,
        } => cmd_count(out, polytope, fan, xi, face, *nu),
        Command::Volume {
            polytope,
            fan,
            xi,
            face,
        } => cmd_volume(out, polytope, fan, xi, face),
        Command::Mu {
            fan,
            k,
            face,
            seed,
            samples,
            xi,
        } => cmd_mu(out, fan, *k, face, *seed, *samples, xi),
        Command::ToddGenus { fan } => cmd_todd_genus(out, fan),
        Command::Verify {
            suite,
            fan,
            xi,
            polytope,
            seed,
            trials,
            order,
            samples,
        } => verify::cmd_verify(
            out,
            suite,
            fan,
            xi,
            polytope,
            *seed,
            *trials,
            *order,
            *samples,
        ),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(out, "error: {}", e.message);
            e.code
        }
    }
}

pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let mut stdout = std::io::stdout().lock();
    run(&args, &mut stdout)
}
