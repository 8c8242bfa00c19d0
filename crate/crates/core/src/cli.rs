//! The `glorder` command-line front end.
//!
//! Exit status: 0 on success, 1 when the type fails validation (or, for
//! `rigidity`, when the report is not ok), 2 on usage or input errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::GlError;
use crate::glring::GLRing;
use crate::gltype::{self, GLType};
use crate::lgroup::LGroup;
use crate::ordermodel;
use crate::regrade::{self, CosetReps};
use crate::sweep::Exec;
use crate::tilting;

#[derive(Debug, Parser)]
#[command(
    name = "glorder",
    version,
    about = "Tilting bundles and endomorphism algebras of Geigle-Lenzing orders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the hyperplanes are in general position.
    Validate(Common),
    /// List the interval [0, dc] indexing the tilting summands.
    Interval(Common),
    /// Cartan matrix of the tilting bundle.
    Cartan(Common),
    /// Check vanishing of all higher self-extensions of the tilting bundle.
    Rigidity(Common),
    /// Quiver with relations of the endomorphism algebra.
    Quiver {
        #[command(flatten)]
        common: Common,
        /// Pivot hyperplanes, 1-based and comma separated (default: first independent d+1).
        #[arg(long, value_delimiter = ',')]
        pivot: Option<Vec<usize>>,
    },
    /// Endomorphism algebra dimensions and the arrow generation check.
    Endo {
        #[command(flatten)]
        common: Common,
        /// Also verify associativity of all structure constants.
        #[arg(long)]
        associativity: bool,
    },
    /// Hilbert function identities of the re-graded ring, or dim R_g for one degree.
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        max_degree: i64,
        /// A group element such as "x1+2*x2-c".
        #[arg(long)]
        degree: Option<String>,
    },
    /// Block dimensions of the re-graded components for h = 0..=max-degree.
    Regrade {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        max_degree: i64,
    },
    /// Local Morita type of the order on every stratum.
    Local(Common),
    /// Decompose a degree as coset representative plus a multiple of c.
    Transport {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: String,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Type spec file (JSON).
    pub spec: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

/// Result of one invocation.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn exit_code(e: &GlError) -> i32 {
    match e {
        GlError::InvalidType(_) => 1,
        _ => 2,
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn load(common: &Common) -> Result<GLType, Outcome> {
    let text = std::fs::read_to_string(&common.spec)
        .map_err(|e| Outcome::error(2, format!("cannot read {}: {e}", common.spec.display())))?;
    GLType::from_json(&text).map_err(|e| Outcome::error(exit_code(&e), e.to_string()))
}

fn load_valid(common: &Common) -> Result<GLType, Outcome> {
    let t = load(common)?;
    t.ensure_valid()
        .map_err(|e| Outcome::error(1, e.to_string()))?;
    Ok(t)
}

fn no_dot(common: &Common) -> Result<(), Outcome> {
    if common.format == Format::Dot {
        Err(Outcome::error(
            2,
            "--format dot is only available for `quiver`",
        ))
    } else {
        Ok(())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome::error(code, text)
            };
        }
    };
    match execute(&cli.command) {
        Ok(o) | Err(o) => o,
    }
}

fn execute(cmd: &Command) -> Result<Outcome, Outcome> {
    match cmd {
        Command::Validate(c) => validate(c),
        Command::Interval(c) => interval(c),
        Command::Cartan(c) => cartan(c),
        Command::Rigidity(c) => rigidity(c),
        Command::Quiver { common, pivot } => quiver(common, pivot.as_deref()),
        Command::Endo {
            common,
            associativity,
        } => endo(common, *associativity),
        Command::Hilbert {
            common,
            max_degree,
            degree,
        } => hilbert(common, *max_degree, degree.as_deref()),
        Command::Regrade { common, max_degree } => regrade_cmd(common, *max_degree),
        Command::Local(c) => local(c),
        Command::Transport { common, degree } => transport(common, degree),
    }
}

fn validate(c: &Common) -> Result<Outcome, Outcome> {
    no_dot(c)?;
    let t = load(c)?;
    let report = gltype::validate_type(&t);
    let code = if report.ok { 0 } else { 1 };
    let out = match c.format {
        Format::Json => pretty(&json!({
            "ok": report.ok,
            "violations": report.violations.iter().map(|v| json!({
                "subset": v.subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "rank": v.rank,
            })).collect::<Vec<_>>(),
        })),
        _ => format!("{report}\n"),
    };
    Ok(Outcome::with_code(code, out))
}

fn interval(c: &Common) -> Result<Outcome, Outcome> {
    no_dot(c)?;
    let t = load_valid(c)?;
    let iv = LGroup::of(&t).interval(t.d());
    Ok(Outcome::ok(match c.format {
        Format::Json => pretty(&json!({
            "d": t.d(),
            "size": iv.len(),
            "elements": iv.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        })),
        _ => iv.iter().map(|x| format!("{x}\n")).collect(),
    }))
}

fn cartan(c: &Common) -> Result<Outcome, Outcome> {
    no_dot(c)?;
    let t = load_valid(c)?;
    let tilt =
        tilting::build_tilting(&t).map_err(|e| Outcome::error(exit_code(&e), e.to_string()))?;
    let m = tilting::cartan(&tilt);
    Ok(Outcome::ok(match c.format {
        Format::Json => pretty(&json!({
            "vertices": m.vertices.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "matrix": m.matrix,
        })),
        _ => {
            let mut s = String::new();
            for (x, row) in m.vertices.iter().zip(&m.matrix) {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(s, "{x}: {}", cells.join(" "));
            }
            let _ = writeln!(s, "total: {}", m.total());
            s
        }
    }))
}

fn rigidity(c: &Common) -> Result<Outcome, Outcome> {
    no_dot(c)?;
    let t = load_valid(c)?;
    let tilt =
        tilting::build_tilting(&t).map_err(|e| Outcome::error(exit_code(&e), e.to_string()))?;
    let r = tilting::rigidity_report(&tilt);
    let code = if r.ok { 0 } else { 1 };
    let out = match c.format {
        Format::Json => pretty(&json!({
            "ok": r.ok,
            "d": r.d,
            "ell_min": r.ell_min,
            "ell_max": r.ell_max,
            "window_ok": r.window_ok,
            "vertices": tilt.summands().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "ells": r.ells,
            "failures": r.failures,
        })),
        _ => {
            let mut s = r.to_string();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::with_code(code, out))
}

fn quiver(c: &Common, pivot: Option<&[usize]>) -> Result<Outcome, Outcome> {
    let t = load_valid(c)?;
    let tilt =
        tilting::build_tilting(&t).map_err(|e| Outcome::error(exit_code(&e), e.to_string()))?;
    let pivots: Option<Vec<usize>> = match pivot {
        None => None,
        Some(p) if p.iter().all(|&i| i >= 1) => Some(p.iter().map(|i| i - 1).collect()),
        Some(_) => return Err(Outcome::error(2, "--pivot indices are 1-based")),
    };
    let qp = tilting::quiver_presentation_with_pivots(&tilt, pivots.as_deref())
        .map_err(|e| Outcome::error(exit_code(&e), e.to_string()))?;
    Ok(Outcome::ok(match c.format {
        Format::Json => pretty(&qp.to_json()),
        Format::Dot => qp.to_dot(),
        Format::Text => qp.to_string(),
    }))
}

fn endo(c: &Common, associativity: bool) -> Result<Outcome, Outcome> {
    no_dot(c)?;
    let t = load_valid(c)?;
    let tilt =
        tilting::build_tilting(&t).map_err(|e| Outcome::error(exit_code(&e), e.to_string()))?;
    let e = tilting::endo_algebra(&tilt);
    let generation = tilting::arrow_generation_check(&tilt);
    let assoc = associativity.then(|| e.check_associativity(&e.structure_table(Exec::default())));
    Ok(Outcome::ok(match c.format {
        Format::Json => {
            let mut v = json!({
                "vertices": e.vertices().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "dims": e.component_dims(),
                "total_dimension": e.dimension(),
                "generation": {
                    "ok": generation.ok,
                    "deficits": generation.deficits,
                },
            });
            if let Some((checked, bad)) = &assoc {
                v["associativity"] = json!({ "checked": checked, "ok": bad.is_empty() });
            }
            pretty(&v)
        }
        _ => {
            let mut s = format!(
                "vertices: {}\ntotal dimension: {}\n",
                e.len(),
                e.dimension()
            );
            if generation.ok {
                s.push_str("arrow generation: OK, arrow paths span every Hom space\n");
            } else {
                let _ = writeln!(
                    s,
                    "arrow generation: {} deficits",
                    generation.deficits.len()
                );
                for p in &generation.deficits {
                    let _ = writeln!(
                        s,
                        "  {} -> {}: span {} < {}",
                        p.from, p.to, p.span_dim, p.cartan
                    );
                }
            }
            if let Some((checked, bad)) = &assoc {
                let _ = writeln!(
                    s,
                    "associativity: {} ({checked} basis triples)",
                    if bad.is_empty() { "OK" } else { "FAILED" }
                );
            }
            s
        }
    }))
}

fn hilbert(c: &Common, max_degree: i64, degree: Option<&str>) -> Result<Outcome, Outcome> {
    no_dot(c)?;
    let t = load_valid(c)?;
    if let Some(text) = degree {
        let ring = GLRing::new(&t);
        let g = ring
            .group()
            .parse(text)
            .map_err(|e| Outcome::error(2, e.to_string()))?;
        let basis = ring.monomial_basis(&g);
        return Ok(Outcome::ok(match c.format {
            Format::Json => pretty(&json!({
                "degree": g.to_string(),
                "dim": ring.hilbert(&g),
                "basis": basis.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            })),
            _ => {
                let names: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
                format!(
                    "dim R_{{{g}}} = {}\nbasis: {}\n",
                    ring.hilbert(&g),
                    names.join(", ")
                )
            }
        }));
    }
    if max_degree < 0 {
        return Err(Outcome::error(2, "--max-degree must be nonnegative"));
    }
    let ring = GLRing::new(&t);
    let reps = CosetReps::canonical(ring.group());
    let rows: Vec<(i64, u64, u64, u64)> = (0..=max_degree)
        .map(|h| {
            let regraded =
                regrade::regrade_component_with(h, &reps, &ring, Exec::default()).total_dim();
            let tri = regrade::triangular_tensor_dim(h, &t);
            let sec = regrade::b_algebra_dim(h, &t).expect("h >= 0");
            (h, regraded, tri, sec)
        })
        .collect();
    let all_equal = rows.iter().all(|&(_, a, b, c)| a == b && b == c);
    let code = if all_equal { 0 } else { 1 };
    let out = match c.format {
        Format::Json => pretty(&json!({
            "max_degree": max_degree,
            "ok": all_equal,
            "rows": rows.iter().map(|&(h, a, b, c)| json!({
                "h": h, "regraded": a, "triangular": b, "section": c,
                "equal": a == b && b == c,
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = String::from("h regraded triangular section\n");
            for (h, a, b, c) in &rows {
                let _ = writeln!(s, "{h} {a} {b} {c}");
            }
            let _ = writeln!(
                s,
                "{}",
                if all_equal {
                    "OK: all three agree"
                } else {
                    "MISMATCH"
                }
            );
            s
        }
    };
    Ok(Outcome::with_code(code, out))
}

fn regrade_cmd(c: &Common, max_degree: i64) -> Result<Outcome, Outcome> {
    no_dot(c)?;
    if max_degree < 0 {
        return Err(Outcome::error(2, "--max-degree must be nonnegative"));
    }
    let t = load_valid(c)?;
    let ring = GLRing::new(&t);
    let reps = CosetReps::canonical(ring.group());
    let comps: Vec<_> = (0..=max_degree)
        .map(|h| regrade::regrade_component_with(h, &reps, &ring, Exec::default()))
        .collect();
    Ok(Outcome::ok(match c.format {
        Format::Json => pretty(&Value::Array(comps.iter().map(|c| c.to_json()).collect())),
        _ => {
            let mut s = String::new();
            let names: Vec<String> = reps.reps.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(s, "reps: {}", names.join(", "));
            for comp in &comps {
                let _ = writeln!(s, "h = {} (total {}):", comp.h, comp.total_dim());
                for row in comp.dims() {
                    let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    let _ = writeln!(s, "  {}", cells.join(" "));
                }
            }
            s
        }
    }))
}

fn local(c: &Common) -> Result<Outcome, Outcome> {
    no_dot(c)?;
    let t = load_valid(c)?;
    let strata = gltype::strata(&t).map_err(|e| Outcome::error(exit_code(&e), e.to_string()))?;
    let types: Vec<_> = strata
        .iter()
        .map(|s| ordermodel::local_type(s, &t).expect("strata are valid"))
        .collect();
    Ok(Outcome::ok(match c.format {
        Format::Json => pretty(&Value::Array(
            types
                .iter()
                .map(|lt| {
                    json!({
                        "stratum": lt.stratum.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "weights": lt.weights,
                        "global_dimension": lt.global_dimension,
                    })
                })
                .collect(),
        )),
        _ => {
            let mut s = String::new();
            for lt in &types {
                let idx: Vec<String> = lt.stratum.iter().map(|i| (i + 1).to_string()).collect();
                let w: Vec<String> = lt.weights.iter().map(|p| p.to_string()).collect();
                let _ = writeln!(
                    s,
                    "{{{}}}: weights [{}], global dimension {}",
                    idx.join(","),
                    w.join(","),
                    lt.global_dimension
                );
            }
            s
        }
    }))
}

fn transport(c: &Common, degree: &str) -> Result<Outcome, Outcome> {
    no_dot(c)?;
    let t = load_valid(c)?;
    let g = LGroup::of(&t);
    let x = g
        .parse(degree)
        .map_err(|e| Outcome::error(2, e.to_string()))?;
    let (h, idx) = regrade::transport_shift(&x, &t);
    let rep = &CosetReps::canonical(&g).reps[idx];
    Ok(Outcome::ok(match c.format {
        Format::Json => pretty(&json!({
            "element": x.to_string(),
            "h": h,
            "rep_index": idx,
            "rep": rep.to_string(),
        })),
        _ => format!("{x} = ({rep}) + {h}*c  [rep index {idx}]\n"),
    }))
}

/// Entry point of the binary; prints and returns the exit status.
pub fn main() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
