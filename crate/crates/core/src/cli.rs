//! The `arbor` command line.
//!
//! Results go to stdout as one line of JSON. Failures go to stderr as
//! `{"error":{"code":…,"message":…}}` with exit status 2, or 3 when a
//! resource limit was hit.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::apps::{self, MomentTable, TreeFilter};
use crate::commseries::{
    compose_direct, compose_fdb, fern_nilpotency_check, invert_general, invert_identity_linear,
    jacobian_linear_term, phi_involution, CommMap, FernPath, GeneralPath, InversionPath,
};
use crate::error::Error;
use crate::freeseries::{
    free_compose_direct, free_compose_fdb, free_invert, free_invert_general, free_jacobian_at_zero,
    hausdorff_derivative, FreeMap,
};
use crate::limits::Limits;
use crate::multi_index::MultiIndex;
use crate::rational::{self, Rational};
use crate::trees::{enumerate_trees, Family, LeafSpec, TreeFamilySpec};
use crate::word::Word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "arbor",
    version,
    about = "Exact power series composition and inversion via tree sums"
)]
struct Cli {
    /// Largest leaf count or word length for tree enumeration.
    #[arg(long, global = true)]
    max_leaves: Option<usize>,
    /// Largest truncation degree accepted by tree-sum paths.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compose commutative maps, outermost first.
    Compose(ComposeArgs),
    /// Invert a commutative map.
    Invert(InvertArgs),
    /// Map the nonlinear part H of X - H to that of its inverse.
    Phi(PhiArgs),
    /// Decide whether the m-th power of the Jacobian of H vanishes.
    FernCheck(FernArgs),
    /// Count or list the trees of a family.
    Trees(TreesArgs),
    /// Compose free maps, outermost first.
    FreeCompose(ComposeArgs),
    /// Invert a free map.
    FreeInvert(InvertArgs),
    /// Letter-deletion derivative of every component of a free map.
    Hausdorff(HausdorffArgs),
    /// Combinatorial applications.
    #[command(subcommand)]
    App(AppCommand),
}

#[derive(Args, Debug)]
struct ComposeArgs {
    /// Sum over final trees.
    #[arg(long, conflicts_with = "direct")]
    fdb: bool,
    /// Substitute monomial by monomial (default).
    #[arg(long)]
    direct: bool,
    /// Map files, `-` for stdin.
    #[arg(required = true, num_args = 2..)]
    files: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InvertPath {
    /// `recursive` for identity linear term, `reduce` otherwise.
    Auto,
    Tree,
    Recursive,
    Alt,
    Reduce,
}

#[derive(Args, Debug)]
struct InvertArgs {
    #[arg(long, value_enum, default_value = "auto")]
    path: InvertPath,
    file: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PhiPath {
    Tree,
    Recursive,
}

#[derive(Args, Debug)]
struct PhiArgs {
    #[arg(long, value_enum, default_value = "recursive")]
    path: PhiPath,
    file: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FernCheckPath {
    Matrix,
    Fern,
}

#[derive(Args, Debug)]
struct FernArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    bound: usize,
    #[arg(long, value_enum, default_value = "matrix")]
    path: FernCheckPath,
    file: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TreesAction {
    Count,
    List,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyName {
    Final,
    Proper,
    Alternating,
    Fern,
}

#[derive(Args, Debug)]
struct TreesArgs {
    action: TreesAction,
    #[arg(long)]
    family: FamilyName,
    #[arg(long)]
    dim: usize,
    /// Leaf multi-index, e.g. `2,0,1`.
    #[arg(long, conflicts_with_all = ["word", "leaves"])]
    alpha: Option<String>,
    /// Planar leaf word, letters from 1, e.g. `3,1,1`.
    #[arg(long, conflicts_with = "leaves")]
    word: Option<String>,
    /// Leaf count, for `--dim 1`.
    #[arg(long)]
    leaves: Option<u32>,
    /// Root type, from 1.
    #[arg(long, default_value_t = 1)]
    root: usize,
    /// Generations for `final`, spine length for `fern`.
    #[arg(long)]
    gens: Option<usize>,
    /// Spine end type for `fern`, from 1.
    #[arg(long)]
    terminal: Option<usize>,
}

#[derive(Args, Debug)]
struct HausdorffArgs {
    /// Variable, from 1.
    #[arg(long)]
    var: usize,
    file: String,
}

#[derive(Subcommand, Debug)]
enum AppCommand {
    /// Number of set partitions of [k].
    Bell {
        #[arg(long)]
        k: usize,
    },
    /// Partitions of [k] into j blocks.
    Stirling {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        j: usize,
    },
    /// Coefficients of He_k, lowest degree first.
    Hermite {
        #[arg(long)]
        k: usize,
    },
    /// Moments from a cumulant table.
    Moments(TableArgs),
    /// Cumulants from a moment table.
    Cumulants(TableArgs),
    /// Reciprocal of every component of a map with constant terms 1.
    Reciprocal { file: String },
    /// Proper trees on k leaves, by series inversion and by enumeration.
    CountTrees {
        #[arg(long)]
        k: usize,
        /// Only trees whose internal vertices have an even number of children.
        #[arg(long)]
        even: bool,
    },
}

#[derive(Args, Debug)]
struct TableArgs {
    file: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    dimension: usize,
    truncation: usize,
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    alpha: Vec<u32>,
    value: String,
}

enum Failure {
    Engine(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Outcome = Result<String, Failure>;

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default();
            return report(
                stderr,
                "usage",
                first.trim_start_matches("error: "),
                EXIT_INVALID,
            );
        }
    };
    let mut limits = Limits::from_env();
    if let Some(v) = cli.max_leaves {
        limits.max_leaves = v;
        limits.max_partition_ground = limits.max_partition_ground.max(v);
    }
    if let Some(v) = cli.max_degree {
        limits.max_degree = v;
    }
    match dispatch(cli.command, &limits, stdin) {
        Ok(out) => {
            let _ = writeln!(stdout, "{out}");
            EXIT_OK
        }
        Err(Failure::Engine(e)) => {
            let status = if e.is_resource_limit() {
                EXIT_RESOURCE
            } else {
                EXIT_INVALID
            };
            report(stderr, e.code(), &e.to_string(), status)
        }
        Err(Failure::Usage(msg)) => report(stderr, "usage", &msg, EXIT_INVALID),
        Err(Failure::Io(msg)) => report(stderr, "io-error", &msg, EXIT_INVALID),
    }
}

fn report(stderr: &mut dyn Write, code: &str, message: &str, status: i32) -> i32 {
    let _ = writeln!(
        stderr,
        "{}",
        json!({"error": {"code": code, "message": message}})
    );
    status
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
    }
}

fn comm(path: &str, stdin: &mut dyn Read) -> Result<CommMap, Failure> {
    Ok(CommMap::from_json(&read_input(path, stdin)?)?)
}

fn free(path: &str, stdin: &mut dyn Read) -> Result<FreeMap, Failure> {
    Ok(FreeMap::from_json(&read_input(path, stdin)?)?)
}

fn dispatch(command: Command, limits: &Limits, stdin: &mut dyn Read) -> Outcome {
    match command {
        Command::Compose(a) => {
            let maps = a
                .files
                .iter()
                .map(|f| comm(f, stdin))
                .collect::<Result<Vec<_>, _>>()?;
            let out = if a.fdb {
                compose_fdb(&maps, limits)?
            } else {
                fold(&maps, compose_direct)?
            };
            Ok(out.to_json())
        }
        Command::FreeCompose(a) => {
            let maps = a
                .files
                .iter()
                .map(|f| free(f, stdin))
                .collect::<Result<Vec<_>, _>>()?;
            let out = if a.fdb {
                free_compose_fdb(&maps, limits)?
            } else {
                fold(&maps, free_compose_direct)?
            };
            Ok(out.to_json())
        }
        Command::Invert(a) => {
            let f = comm(&a.file, stdin)?;
            let g = match a.path {
                InvertPath::Auto if jacobian_linear_term(&f).is_identity() => {
                    invert_identity_linear(&f, InversionPath::Recursive, limits)?
                }
                InvertPath::Auto | InvertPath::Reduce => {
                    invert_general(&f, GeneralPath::Reduction, limits)?
                }
                InvertPath::Tree => invert_identity_linear(&f, InversionPath::TreeSum, limits)?,
                InvertPath::Recursive => {
                    invert_identity_linear(&f, InversionPath::Recursive, limits)?
                }
                InvertPath::Alt => invert_general(&f, GeneralPath::Alternating, limits)?,
            };
            Ok(g.to_json())
        }
        Command::FreeInvert(a) => {
            let f = free(&a.file, stdin)?;
            let g = match a.path {
                InvertPath::Auto if free_jacobian_at_zero(&f).is_identity() => {
                    free_invert(&f, InversionPath::Recursive, limits)?
                }
                InvertPath::Auto | InvertPath::Reduce => {
                    free_invert_general(&f, GeneralPath::Reduction, limits)?
                }
                InvertPath::Tree => free_invert(&f, InversionPath::TreeSum, limits)?,
                InvertPath::Recursive => free_invert(&f, InversionPath::Recursive, limits)?,
                InvertPath::Alt => free_invert_general(&f, GeneralPath::Alternating, limits)?,
            };
            Ok(g.to_json())
        }
        Command::Phi(a) => {
            let h = comm(&a.file, stdin)?;
            let path = match a.path {
                PhiPath::Tree => InversionPath::TreeSum,
                PhiPath::Recursive => InversionPath::Recursive,
            };
            Ok(phi_involution(&h, path, limits)?.to_json())
        }
        Command::FernCheck(a) => {
            let h = comm(&a.file, stdin)?;
            let path = match a.path {
                FernCheckPath::Matrix => FernPath::MatrixPower,
                FernCheckPath::Fern => FernPath::FernSum,
            };
            let v = fern_nilpotency_check(&h, a.m, path, a.bound, limits)?;
            let witness = v.witness.map(|w| {
                json!({
                    "row": w.row + 1,
                    "col": w.col + 1,
                    "alpha": w.alpha.exponents(),
                    "value": rational::render(&w.value),
                })
            });
            Ok(json!({"nilpotent": v.nilpotent, "witness": witness}).to_string())
        }
        Command::Trees(a) => trees(a, limits),
        Command::Hausdorff(a) => {
            let f = free(&a.file, stdin)?;
            if a.var == 0 {
                return Err(Error::invalid("variables are numbered from 1").into());
            }
            let comps = f
                .components()
                .iter()
                .map(|c| hausdorff_derivative(c, a.var - 1))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FreeMap::new(comps)?.to_json())
        }
        Command::App(app) => app_command(app, limits, stdin),
    }
}

fn fold<M: Clone>(maps: &[M], op: fn(&M, &M) -> crate::Result<M>) -> Result<M, Failure> {
    let mut it = maps.iter();
    let mut acc = it.next().expect("clap requires two files").clone();
    for m in it {
        acc = op(&acc, m)?;
    }
    Ok(acc)
}

fn parse_list(s: &str, what: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            Failure::Usage(format!(
                "{what} must be a comma-separated list of non-negative integers"
            ))
        })
}

fn one_based(v: usize, what: &str) -> Result<usize, Failure> {
    v.checked_sub(1)
        .ok_or_else(|| Failure::Usage(format!("{what} is numbered from 1")))
}

fn trees(a: TreesArgs, limits: &Limits) -> Outcome {
    let leaves = match (&a.alpha, &a.word, a.leaves) {
        (Some(alpha), None, None) => {
            LeafSpec::Labels(MultiIndex::new(parse_list(alpha, "--alpha")?))
        }
        (None, Some(word), None) => {
            let letters = parse_list(word, "--word")?
                .into_iter()
                .map(|l| one_based(l as usize, "word letter"))
                .collect::<Result<Vec<_>, _>>()?;
            LeafSpec::Word(Word::new(letters))
        }
        (None, None, Some(k)) if a.dim == 1 => LeafSpec::Labels(MultiIndex::new(vec![k])),
        (None, None, Some(_)) => {
            return Err(Failure::Usage("--leaves needs --dim 1; use --alpha".into()))
        }
        _ => {
            return Err(Failure::Usage(
                "give one of --alpha, --word or --leaves".into(),
            ))
        }
    };
    let family = match a.family {
        FamilyName::Final => Family::Final(
            a.gens
                .ok_or_else(|| Failure::Usage("final trees need --gens".into()))?,
        ),
        FamilyName::Proper => Family::Proper,
        FamilyName::Alternating => Family::Alternating,
        FamilyName::Fern => Family::Fern {
            length: a
                .gens
                .ok_or_else(|| Failure::Usage("ferns need --gens".into()))?,
            terminal: one_based(
                a.terminal
                    .ok_or_else(|| Failure::Usage("ferns need --terminal".into()))?,
                "--terminal",
            )?,
        },
    };
    let spec = TreeFamilySpec {
        family,
        root_type: one_based(a.root, "--root")?,
        leaves,
        dim: a.dim,
    };
    let trees = enumerate_trees(&spec, limits)?;
    Ok(match a.action {
        TreesAction::Count => trees.len().to_string(),
        TreesAction::List => trees.to_json().to_string(),
    })
}

fn read_table(path: &str, stdin: &mut dyn Read) -> Result<(usize, usize, MomentTable), Failure> {
    let raw: TableJson = serde_json::from_str(&read_input(path, stdin)?)
        .map_err(|e| Failure::Engine(Error::Parse(e.to_string())))?;
    let mut table = MomentTable::new();
    for e in raw.entries {
        let v: Rational = rational::parse(&e.value)?;
        table.insert(MultiIndex::new(e.alpha), v);
    }
    Ok((raw.dimension, raw.truncation, table))
}

fn write_table(dim: usize, trunc: usize, table: &MomentTable) -> String {
    let raw = TableJson {
        dimension: dim,
        truncation: trunc,
        entries: table
            .iter()
            .map(|(a, v)| EntryJson {
                alpha: a.exponents().to_vec(),
                value: rational::render(v),
            })
            .collect(),
    };
    serde_json::to_string(&raw).expect("serializable")
}

fn app_command(app: AppCommand, limits: &Limits, stdin: &mut dyn Read) -> Outcome {
    match app {
        AppCommand::Bell { k } => Ok(apps::bell(k, limits)?.to_string()),
        AppCommand::Stirling { k, j } => Ok(apps::bell_stirling(k, j, limits)?.to_string()),
        AppCommand::Hermite { k } => {
            let coeffs: Vec<Value> = apps::hermite_polynomial(k, limits)?
                .coefficients()
                .iter()
                .map(|c| serde_json::from_str(&rational::render(c)).expect("integer coefficient"))
                .collect();
            Ok(Value::Array(coeffs).to_string())
        }
        AppCommand::Moments(t) => {
            let (dim, trunc, table) = read_table(&t.file, stdin)?;
            Ok(write_table(
                dim,
                trunc,
                &apps::cumulants_to_moments(dim, &table, trunc, limits)?,
            ))
        }
        AppCommand::Cumulants(t) => {
            let (dim, trunc, table) = read_table(&t.file, stdin)?;
            Ok(write_table(
                dim,
                trunc,
                &apps::moments_to_cumulants(dim, &table, trunc, limits)?,
            ))
        }
        AppCommand::Reciprocal { file } => {
            let f = comm(&file, stdin)?;
            let comps = f
                .components()
                .iter()
                .map(|c| apps::series_reciprocal(c, limits))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CommMap::new(comps)?.to_json())
        }
        AppCommand::CountTrees { k, even } => {
            let filter = if even {
                TreeFilter::EvenOutdegreesOnly
            } else {
                TreeFilter::All
            };
            let c = apps::count_proper_trees(k, filter, limits)?;
            Ok(json!({
                "k": k,
                "series": c.by_series.to_string(),
                "enumeration": c.by_enumeration.to_string(),
                "agree": c.agree(),
            })
            .to_string())
        }
    }
}
