//! Command-line front end. Exit codes: 0 pass, 1 a check failed,
//! 2 unreadable or malformed input, 3 family too large for the grid.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebras::{check_tensor, Algebra3, AlgebraKind};
use crate::bialgebra::{pair_check, BialgebraPair, PairError};
use crate::correspondence::{case_by_id, cases, verify_correspondence, CorrespondenceError};
use crate::dualsearch::{
    default_grid, dual_family, grid_search, verify_member, LinearFamily, Membership, SearchError, DEFAULT_MAX_DIM,
};
use crate::exactmath::{parse_rational, ParseScalarError, Rational};
use crate::fixtures;
use crate::io::{load_algebra, read_file, save_algebra, IoError, LoadOptions};
use crate::report::{Report, Stage, Status};
use crate::structure::Sc3;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Correspondence(#[from] CorrespondenceError),
    #[error("--grid value `{text}`: {source}")]
    Grid {
        text: String,
        #[source]
        source: ParseScalarError,
    },
    #[error("--set expects name=value, got `{0}`")]
    Assignment(String),
    #[error("unknown example `{0}` (expected ex4-1, ex4-2 or ex6-1)")]
    UnknownExample(String),
    #[error("{0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Search(SearchError::DimensionCap { .. }) => EXIT_CAP,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    /// Pretty JSON.
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "trileibniz",
    version,
    about = "Exact checks for 3-Leibniz and 3-Lie bialgebras"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Complete lie3 entries antisymmetrically instead of rejecting them.
    #[arg(long, global = true)]
    pub antisymmetrize: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an algebra's fundamental identity.
    Check {
        file: PathBuf,
        /// Check under this kind instead of the file's.
        #[arg(long)]
        kind: Option<AlgebraKind>,
    },
    /// Check both algebras and the cocycle system between them.
    PairCheck { a: PathBuf, astar: PathBuf },
    /// Solve for every dual of a numeric algebra.
    DualSearch {
        a: PathBuf,
        #[arg(long)]
        dual_kind: AlgebraKind,
        /// Comma-separated values tried for each family parameter.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        grid: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_dim: usize,
        /// Directory receiving one algebra file per grid solution.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Algebra file to test for membership in the family.
        #[arg(long)]
        member: Option<PathBuf>,
        /// Parameter values for the member, e.g. `--set a=1,b=-3`.
        #[arg(long = "set", value_delimiter = ',', allow_hyphen_values = true)]
        set: Vec<String>,
    },
    /// Build the Leibniz bialgebra on A⊗A and check it.
    Correspondence {
        a: PathBuf,
        astar: PathBuf,
        /// Case id, e.g. first-second-1-21; run without a valid id to list them.
        #[arg(long)]
        case: String,
    },
    /// Rerun the full battery on a built-in example.
    Reproduce {
        #[arg(value_parser = ["ex4-1", "ex4-2", "ex6-1"])]
        example: String,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok((mut report, code)) => {
            if cli.timing {
                report.push(Stage::info("timing").note(format!("{:.3} s", start.elapsed().as_secs_f64())));
            }
            let rendered = match cli.format {
                Format::Text => report.to_string(),
                Format::Structured => report.to_json(),
            };
            let _ = write!(out, "{rendered}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Correspondence(CorrespondenceError::UnknownCase(_)) = e {
                let _ = writeln!(err, "known cases:");
                for c in cases() {
                    let _ = writeln!(err, "  {}", c.id);
                }
            }
            e.exit_code()
        }
    }
}

fn status_code(report: &Report) -> i32 {
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn execute(cli: &Cli) -> Result<(Report, i32), CliError> {
    let options = LoadOptions {
        kind: None,
        antisymmetrize: cli.antisymmetrize,
    };
    match &cli.command {
        Command::Check { file, kind } => {
            let loaded = read_file(file)?.to_tensor(LoadOptions { kind: *kind, ..options })?;
            let report = check_tensor(&loaded.name, &loaded.sc, loaded.kind);
            let code = status_code(&report);
            Ok((report, code))
        }
        Command::PairCheck { a, astar } => {
            let pair = BialgebraPair::new(load_algebra(a, options)?, load_algebra(astar, options)?)?;
            let report = pair_check(&pair);
            let code = status_code(&report);
            Ok((report, code))
        }
        Command::DualSearch {
            a,
            dual_kind,
            grid,
            max_dim,
            output,
            member,
            set,
        } => {
            let grid = match grid {
                Some(values) => values
                    .iter()
                    .map(|v| {
                        parse_rational(v.trim()).map_err(|source| CliError::Grid {
                            text: v.clone(),
                            source,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                None => default_grid(),
            };
            let member = match member {
                Some(path) => {
                    let alg = load_algebra(path, options)?;
                    Some((alg.name.clone(), specialize(&alg, set)?.sc))
                }
                None => None,
            };
            dual_search(
                &load_algebra(a, options)?,
                *dual_kind,
                &grid,
                *max_dim,
                output.as_deref(),
                member.as_ref().map(|(n, s)| (n.as_str(), s)),
            )
        }
        Command::Correspondence { a, astar, case } => {
            let case = case_by_id(case)?;
            let pair = BialgebraPair::new(load_algebra(a, options)?, load_algebra(astar, options)?)?;
            let report = verify_correspondence(&pair, &case)?;
            let code = status_code(&report);
            Ok((report, code))
        }
        Command::Reproduce { example } => {
            let report = reproduce(example)?;
            let code = status_code(&report);
            Ok((report, code))
        }
    }
}

fn specialize(alg: &Algebra3, set: &[String]) -> Result<Algebra3, CliError> {
    if set.is_empty() {
        return Ok(alg.clone());
    }
    let mut assignment = BTreeMap::new();
    for item in set {
        let (name, value) = item.split_once('=').ok_or_else(|| CliError::Assignment(item.clone()))?;
        let value = parse_rational(value.trim()).map_err(|_| CliError::Assignment(item.clone()))?;
        assignment.insert(name.trim().to_string(), value);
    }
    Ok(alg.eval(&assignment))
}

fn render_tensor(sc: &Sc3) -> String {
    if sc.is_zero() {
        return "0".to_string();
    }
    sc.entries()
        .map(|(&[j, k, m, p], v)| format!("({j},{k},{m};{p}) = {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn family_stages(family: &LinearFamily) -> Vec<Stage> {
    let mut basis = Stage::info(format!(
        "linear family of {} duals: dimension {} (rank {} over {} unknowns)",
        family.astar_kind,
        family.dimension(),
        family.rank,
        family.unknowns.len()
    ));
    for (param, tensor) in family.params.iter().zip(&family.basis) {
        basis = basis.note(format!("{param}:\n{}", indent(&render_tensor(tensor))));
    }
    let mut constraints = Stage::info(format!("{} quadratic constraints", family.constraints.len()));
    for (i, c) in family.constraints.iter().enumerate() {
        constraints = constraints.note(format!("c{}: {c} = 0", i + 1));
    }
    vec![basis, constraints]
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}")).collect::<Vec<_>>().join("\n")
}

fn membership_stage(name: &str, family: &LinearFamily, candidate: &Sc3) -> Result<Stage, CliError> {
    let title = format!("{name} lies in the {} family", family.astar_kind);
    Ok(match verify_member(family, candidate)? {
        Membership::Member { assignment } => {
            let values: BTreeMap<String, _> = assignment.into_iter().collect();
            let coords: Vec<String> = family
                .params
                .iter()
                .filter(|p| !values[*p].is_zero())
                .map(|p| format!("{p} = {}", values[p]))
                .collect();
            let coords = if coords.is_empty() {
                "all coordinates zero".to_string()
            } else {
                coords.join(", ")
            };
            Stage::new(title, Status::Pass).note(coords)
        }
        Membership::OutsideSpan { index, candidate, span } => Stage::new(title, Status::Fail).note(format!(
            "outside the span at ({},{},{};{}): candidate {candidate}, nearest member {span}",
            index[0], index[1], index[2], index[3]
        )),
        Membership::ConstraintViolated { constraint, value } => {
            Stage::new(title, Status::Fail).note(format!("constraint c{} evaluates to {value}", constraint + 1))
        }
    })
}

fn dual_search(
    a: &Algebra3,
    kind: AlgebraKind,
    grid: &[Rational],
    max_dim: usize,
    output: Option<&std::path::Path>,
    member: Option<(&str, &Sc3)>,
) -> Result<(Report, i32), CliError> {
    let family = dual_family(a, kind)?;
    let mut report = Report::new(format!("dual search: {kind} duals of {}", a.name));
    for stage in family_stages(&family) {
        report.push(stage);
    }
    if let Some((name, candidate)) = member {
        report.push(membership_stage(name, &family, candidate)?);
    }
    let solutions = match grid_search(&family, grid, max_dim) {
        Ok(s) => s,
        Err(SearchError::DimensionCap { dim, cap }) => {
            report.push(Stage::new("grid search", Status::Fail).note(format!(
                "family dimension {dim} exceeds the cap {cap}; raise --max-dim to enumerate"
            )));
            return Ok((report, EXIT_CAP));
        }
        Err(e) => return Err(e.into()),
    };
    let grid_text: Vec<String> = grid.iter().map(Rational::to_string).collect();
    let mut stage = Stage::info(format!(
        "grid {{{}}}: {} solutions",
        grid_text.join(","),
        solutions.len()
    ));
    for (n, sol) in solutions.iter().enumerate() {
        let t: Vec<String> = sol.t.iter().map(Rational::to_string).collect();
        stage = stage.note(format!(
            "#{} t = ({}):\n{}",
            n + 1,
            t.join(","),
            indent(&render_tensor(&sol.tensor))
        ));
    }
    report.push(stage);
    if let Some(dir) = output {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Output(format!("{}: {e}", dir.display())))?;
        let width = solutions.len().to_string().len();
        for (n, sol) in solutions.iter().enumerate() {
            let alg = Algebra3::new(
                format!("{}_{}_dual_{:0width$}", a.name, kind, n + 1),
                sol.tensor.clone(),
                kind,
            )
            .map_err(IoError::from)?;
            save_algebra(&dir.join(format!("{}.json", alg.name)), &alg)?;
        }
        report.push(Stage::info(format!(
            "wrote {} files to {}",
            solutions.len(),
            dir.display()
        )));
    }
    Ok((report, EXIT_PASS))
}

/// Printed parameter count of a dual family next to the computed dimension.
fn comparison_stage(label: &str, printed: &Algebra3, family: &LinearFamily) -> Stage {
    Stage::info(format!("{label}: family dimensions")).note(format!(
        "printed: {} parameters ({})\ncomputed: dimension {} with {} quadratic constraints",
        printed.sc.params().len(),
        printed.sc.params().into_iter().collect::<Vec<_>>().join(", "),
        family.dimension(),
        family.constraints.len()
    ))
}

fn pair_battery(report: &mut Report, a: &Algebra3, duals: &[Algebra3]) -> Result<(), CliError> {
    for dual in duals {
        report.absorb(pair_check(&BialgebraPair::new(a.clone(), dual.clone())?));
        let family = dual_family(a, dual.kind)?;
        report.push(membership_stage(&dual.name, &family, &dual.sc)?);
        report.push(comparison_stage(&dual.name, dual, &family));
    }
    Ok(())
}

/// The verification battery for one built-in example: the identity check,
/// every printed dual as a symbolic pair, membership of each printed dual
/// in the computed family and a dimension comparison. The Lie example also
/// runs a grid search and looks for the printed duals at `b = 1`.
pub fn reproduce(id: &str) -> Result<Report, CliError> {
    let (a, duals) = match id {
        "ex4-1" => (fixtures::a1(), vec![fixtures::d1_second(), fixtures::d1_third()]),
        "ex4-2" => (
            fixtures::a2(),
            vec![fixtures::d2_first(), fixtures::d2_second(), fixtures::d2_third()],
        ),
        "ex6-1" => (
            fixtures::l4(),
            vec![fixtures::db_lie_first(), fixtures::db_lie_second()],
        ),
        other => return Err(CliError::UnknownExample(other.to_string())),
    };
    let mut report = Report::new(format!("reproduce {id}"));
    report.absorb(check_tensor(&a.name, &a.sc, a.kind));
    pair_battery(&mut report, &a, &duals)?;
    if a.kind == AlgebraKind::Lie3 {
        let family = dual_family(&a, AlgebraKind::Lie3)?;
        let grid: Vec<Rational> = (-1..=1).map(|v| Rational::from_integer(v.into())).collect();
        let solutions = grid_search(&family, &grid, DEFAULT_MAX_DIM)?;
        report.push(Stage::info(format!("grid {{-1,0,1}}: {} solutions", solutions.len())));
        for dual in &duals {
            let at_one = crate::correspondence::set_all_params(dual, Rational::from_integer(1.into()));
            let found = solutions.iter().any(|s| s.tensor == at_one.sc);
            report.push(Stage::new(
                format!("grid rediscovers {} at b = 1", dual.name),
                if found { Status::Pass } else { Status::Fail },
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("trileibniz")
            .chain(args.iter().copied())
            .map(OsString::from);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn reproduce_examples_pass() {
        for id in ["ex4-1", "ex4-2", "ex6-1"] {
            let report = reproduce(id).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["reproduce", "ex9-9"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["check"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["--help"]).0, EXIT_PASS);
    }

    #[test]
    fn missing_file_exits_two() {
        let (code, _, err) = run_args(&["check", "/nonexistent/a.json"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("nonexistent"));
    }
}
