//! Command-line front door: ingest poset or lattice files, run analyses,
//! export DOT/JSON, and drive verification campaigns.
//!
//! Exit codes: 0 on success, 2 when a queried point is singular or a
//! campaign finds violations, 1 on usage or internal errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use hibi_core::classify::{
    classification_report, decompose_chain_product, maximal_ji_names, prune,
};
use hibi_core::diamonds::enumerate_diamonds;
use hibi_core::export::{
    ji_dot, lattice_dot, lattice_from_ji_file, lattice_from_raw_file, polytope_text,
    relations_text,
};
use hibi_core::harness::{run_campaign, CampaignReport, CheckKind, FamilySpec, DEFAULT_FAMILY_CAP};
use hibi_core::lattice::Lattice;
use hibi_core::polytope::toric_report;
use hibi_core::smooth::{smoothness_report, PointSmoothness, SmoothnessReport};
use serde::Serialize;

const EXIT_VIOLATION: u8 = 2;

#[derive(Parser)]
#[command(
    name = "hibi",
    version,
    about = "Distributive lattices, Hibi relations, and lattice-variety smoothness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a lattice and print its summary numbers.
    Build {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        mode: ModeOpts,
        #[command(flatten)]
        cap: CapOpts,
    },
    /// Report square, tree, and chain-product structure.
    Classify {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        mode: ModeOpts,
        #[command(flatten)]
        cap: CapOpts,
    },
    /// List the diamonds (incomparable pairs) and their Hibi relations.
    Diamonds {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        mode: ModeOpts,
        #[command(flatten)]
        cap: CapOpts,
    },
    /// Jacobian smoothness at one or at all coordinate points.
    Smoothness {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        mode: ModeOpts,
        #[command(flatten)]
        cap: CapOpts,
        /// Element to test, by label or join-irreducible name.
        #[arg(long, value_name = "ELEMENT")]
        point: Option<String>,
    },
    /// Order-polytope vertices, edges, and toric smoothness verdicts.
    Polytope {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        mode: ModeOpts,
        #[command(flatten)]
        cap: CapOpts,
    },
    /// Factor the lattice as a product of chains, when possible.
    Decompose {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        mode: ModeOpts,
        #[command(flatten)]
        cap: CapOpts,
    },
    /// Remove one maximal join-irreducible and report the split.
    Prune {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        mode: ModeOpts,
        #[command(flatten)]
        cap: CapOpts,
        /// Name of the maximal proper join-irreducible to remove.
        #[arg(long, value_name = "NAME")]
        beta: String,
    },
    /// Verify one theorem or the pruning lemmas over a lattice family.
    #[command(group(ArgGroup::new("statement").required(true).args(["theorem", "lemmas"])))]
    Verify {
        #[command(flatten)]
        family: FamilyOpts,
        #[command(flatten)]
        mode: ModeOpts,
        #[command(flatten)]
        cap: CapOpts,
        /// Statement to verify.
        #[arg(long, value_enum, value_name = "NAME")]
        theorem: Option<TheoremChoice>,
        /// Shorthand for `--theorem lemmas`.
        #[arg(long)]
        lemmas: bool,
    },
    /// Run every check over a lattice family.
    Campaign {
        #[command(flatten)]
        family: FamilyOpts,
        #[command(flatten)]
        mode: ModeOpts,
        #[command(flatten)]
        cap: CapOpts,
    },
    /// Write DOT, relation, or polytope files.
    #[command(group(ArgGroup::new("what").required(true).multiple(true).args(["dot", "relations", "polytope"])))]
    Export {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        mode: ModeOpts,
        #[command(flatten)]
        cap: CapOpts,
        /// Write Hasse-diagram DOT files for the lattice and its
        /// join-irreducible poset.
        #[arg(long)]
        dot: bool,
        /// Write the Hibi binomial generators, one per line.
        #[arg(long)]
        relations: bool,
        /// Write the order-polytope vertex and edge data.
        #[arg(long)]
        polytope: bool,
        /// Output directory.
        #[arg(long, value_name = "DIR", default_value = ".")]
        out: PathBuf,
    },
}

/// Where the lattice comes from; exactly one source must be given.
#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["from_ji", "from_lattice", "chains"])))]
struct InputOpts {
    /// JSON file with the rooted join-irreducible poset.
    #[arg(long, value_name = "FILE")]
    from_ji: Option<PathBuf>,
    /// JSON file with the full lattice Hasse diagram.
    #[arg(long, value_name = "FILE")]
    from_lattice: Option<PathBuf>,
    /// Sizes of a product of chains, comma separated.
    #[arg(long, value_name = "N1,N2,...", value_delimiter = ',')]
    chains: Option<Vec<usize>>,
}

#[derive(Args, Clone, Copy)]
struct ModeOpts {
    /// Machine-readable JSON on stdout.
    #[arg(long)]
    json: bool,
    /// Aligned human-readable text (the default).
    #[arg(long, conflicts_with = "json")]
    text: bool,
}

#[derive(Args, Clone, Copy)]
struct CapOpts {
    /// Largest lattice the command may build; overrides LATTICE_MAX_SIZE.
    #[arg(long, value_name = "N")]
    max_size: Option<usize>,
}

/// Family selection for `verify` and `campaign`; exactly one family.
#[derive(Args)]
#[command(group(ArgGroup::new("family").required(true).args(["all_posets", "chain_products", "random_trees"])))]
struct FamilyOpts {
    /// All join-irreducible posets on up to N elements.
    #[arg(long, value_name = "N")]
    all_posets: Option<usize>,
    /// All products of chains with at most N elements.
    #[arg(long, value_name = "N")]
    chain_products: Option<usize>,
    /// K random join-irreducible trees.
    #[arg(long, value_name = "K")]
    random_trees: Option<usize>,
    /// Seed for the random families.
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,
    /// Depth limit for random trees.
    #[arg(long, value_name = "D", default_value_t = 3)]
    max_depth: usize,
    /// Branching limit for random trees.
    #[arg(long, value_name = "B", default_value_t = 3)]
    max_branches: usize,
}

impl FamilyOpts {
    fn spec(&self) -> FamilySpec {
        if let Some(max_elements) = self.all_posets {
            FamilySpec::AllPosets { max_elements }
        } else if let Some(max_size) = self.chain_products {
            FamilySpec::ChainProducts { max_size }
        } else {
            FamilySpec::RandomTrees {
                count: self.random_trees.expect("clap enforces one family"),
                max_depth: self.max_depth,
                max_branches: self.max_branches,
                seed: self.seed,
            }
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremChoice {
    A,
    B,
    C,
    TreeHonest,
    Lemmas,
}

impl TheoremChoice {
    fn checks(self) -> Vec<CheckKind> {
        match self {
            TheoremChoice::A => vec![CheckKind::TheoremA],
            TheoremChoice::B => vec![CheckKind::TheoremB],
            TheoremChoice::C => vec![CheckKind::TheoremC, CheckKind::OracleAgreement],
            TheoremChoice::TreeHonest => vec![CheckKind::TreeHonest],
            TheoremChoice::Lemmas => vec![
                CheckKind::Bijection,
                CheckKind::LemmaInequality,
                CheckKind::LemmaGreater,
            ],
        }
    }
}

/// Effective size cap: flag first, then the environment, then the default.
fn resolve_cap(flag: Option<usize>, env: Option<&str>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match env {
        Some(raw) => raw
            .trim()
            .parse()
            .map_err(|_| CliError::BadEnvCap(raw.to_owned())),
        None => Ok(DEFAULT_FAMILY_CAP),
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] hibi_core::Error),
    #[error("invalid LATTICE_MAX_SIZE value `{0}`")]
    BadEnvCap(String),
}

fn effective_cap(cap: CapOpts) -> Result<usize, CliError> {
    let env = std::env::var("LATTICE_MAX_SIZE").ok();
    resolve_cap(cap.max_size, env.as_deref())
}

fn load_lattice(input: &InputOpts, cap: usize) -> Result<Lattice, CliError> {
    let l = if let Some(path) = &input.from_ji {
        lattice_from_ji_file(path)?
    } else if let Some(path) = &input.from_lattice {
        lattice_from_raw_file(path)?
    } else if let Some(factors) = &input.chains {
        Lattice::chain_product(factors)?
    } else {
        unreachable!("clap enforces one input source")
    };
    if l.len() > cap {
        return Err(hibi_core::Error::SizeLimitExceeded {
            detail: format!("lattice has {} elements, over the cap of {cap}", l.len()),
        }
        .into());
    }
    Ok(l)
}

/// Writes to stdout, treating a closed pipe as a normal early exit so that
/// piping into `head` and friends never panics.
fn write_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let outcome = out.write_all(text.as_bytes()).and_then(|()| out.flush());
    if let Err(e) = outcome {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

/// Prints either the JSON form of `value` or the prepared text.
fn emit<T: Serialize>(mode: ModeOpts, value: &T, text: &str) {
    if mode.json {
        let mut json = serde_json::to_string_pretty(value).expect("reports serialize");
        json.push('\n');
        write_stdout(&json);
    } else {
        write_stdout(text);
    }
}

#[derive(Serialize)]
struct BuildSummary {
    name: String,
    size: usize,
    ji_count: usize,
    codim: usize,
    dim: usize,
}

fn cmd_build(l: &Lattice, mode: ModeOpts) -> u8 {
    let summary = BuildSummary {
        name: l.name().to_owned(),
        size: l.len(),
        ji_count: l.rooted_ji_count(),
        codim: l.codim(),
        dim: l.rooted_ji_count(),
    };
    let text = format!(
        "|L|={} |J|={} codim={} dim={}\n",
        summary.size, summary.ji_count, summary.codim, summary.dim
    );
    emit(mode, &summary, &text);
    0
}

fn cmd_classify(l: &Lattice, mode: ModeOpts) -> Result<u8, CliError> {
    let report = classification_report(l)?;
    let factors = match &report.factors {
        Some(f) => f
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" x "),
        None => "none".to_owned(),
    };
    let mut text = format!(
        "name {}\nsize {}\ntree {}\nhonest {}\nsquare {}\nchain-product {}\nmaximal-ji {}\n",
        l.name(),
        l.len(),
        report.tree,
        report.honest,
        report.square,
        factors,
        maximal_ji_names(l).join(" "),
    );
    for v in &report.lemma_violations {
        text.push_str(&format!("violation {v}\n"));
    }
    emit(mode, &report, &text);
    Ok(if report.lemma_violations.is_empty() {
        0
    } else {
        EXIT_VIOLATION
    })
}

#[derive(Serialize)]
struct DiamondEntry {
    x: String,
    y: String,
    bottom: String,
    top: String,
}

#[derive(Serialize)]
struct DiamondsSummary {
    lattice: String,
    count: usize,
    diamonds: Vec<DiamondEntry>,
}

fn cmd_diamonds(l: &Lattice, mode: ModeOpts) -> u8 {
    let diamonds: Vec<DiamondEntry> = enumerate_diamonds(l)
        .iter()
        .map(|d| DiamondEntry {
            x: l.label(d.x).to_owned(),
            y: l.label(d.y).to_owned(),
            bottom: l.label(d.bottom).to_owned(),
            top: l.label(d.top).to_owned(),
        })
        .collect();
    let summary = DiamondsSummary {
        lattice: l.name().to_owned(),
        count: diamonds.len(),
        diamonds,
    };
    let mut text = format!("diamonds {}\n", summary.count);
    for d in &summary.diamonds {
        text.push_str(&format!(
            "x={} y={} bottom={} top={}\n",
            d.x, d.y, d.bottom, d.top
        ));
    }
    emit(mode, &summary, &text);
    0
}

/// One-line human verdict for a point, in the scripting-friendly wording.
fn point_verdict_line(p: &PointSmoothness) -> String {
    if p.codim == 0 {
        "smooth (codim 0)".to_owned()
    } else if p.smooth {
        format!("smooth (rank {} = codim {})", p.rank, p.codim)
    } else {
        format!("singular (rank {} < codim {})", p.rank, p.codim)
    }
}

fn cmd_smoothness(
    l: &Lattice,
    point: Option<&str>,
    mode: ModeOpts,
) -> Result<u8, CliError> {
    let report = smoothness_report(l)?;
    match point {
        Some(name) => {
            let e = l.resolve_element(name)?;
            let entry = &report.points[e];
            emit(mode, entry, &format!("{}\n", point_verdict_line(entry)));
            Ok(if entry.smooth { 0 } else { EXIT_VIOLATION })
        }
        None => {
            let text = render_smoothness(&report);
            emit(mode, &report, &text);
            Ok(if report.all_smooth { 0 } else { EXIT_VIOLATION })
        }
    }
}

fn render_smoothness(report: &SmoothnessReport) -> String {
    let mut text = format!(
        "lattice {} size {} codim {}\n",
        report.lattice, report.size, report.codim
    );
    for p in &report.points {
        text.push_str(&format!("{} {}\n", p.label, point_verdict_line(p)));
    }
    if report.all_smooth {
        text.push_str("all points smooth\n");
    } else {
        text.push_str(&format!(
            "singular {}: {}\n",
            report.singular_labels.len(),
            report.singular_labels.join(" ")
        ));
    }
    text
}

fn cmd_polytope(l: &Lattice, mode: ModeOpts) -> Result<u8, CliError> {
    let report = toric_report(l)?;
    let unimodular = report.vertices.iter().filter(|v| v.unimodular).count();
    let text = format!(
        "{}unimodular {}/{}\n",
        polytope_text(l)?,
        unimodular,
        report.vertex_count
    );
    emit(mode, &report, &text);
    Ok(0)
}

#[derive(Serialize)]
struct DecomposeSummary {
    lattice: String,
    factors: Option<Vec<usize>>,
}

fn cmd_decompose(l: &Lattice, mode: ModeOpts) -> Result<u8, CliError> {
    let factors = match decompose_chain_product(l) {
        Ok(d) => Some(d.factor_sizes),
        Err(hibi_core::Error::NotSquare) => None,
        Err(e) => return Err(e.into()),
    };
    let summary = DecomposeSummary {
        lattice: l.name().to_owned(),
        factors,
    };
    let text = match &summary.factors {
        Some(f) => format!(
            "chain product: {}\n",
            f.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" x ")
        ),
        None => "not a chain product\n".to_owned(),
    };
    emit(mode, &summary, &text);
    Ok(0)
}

#[derive(Serialize)]
struct PruneSummary {
    lattice: String,
    beta: String,
    removed: Vec<String>,
    sublattice_size: usize,
    embedding: Vec<String>,
}

fn cmd_prune(l: &Lattice, beta: &str, mode: ModeOpts) -> Result<u8, CliError> {
    let result = prune(l, beta)?;
    let summary = PruneSummary {
        lattice: l.name().to_owned(),
        beta: result.beta.clone(),
        removed: result
            .removed
            .iter()
            .map(|&e| l.label(e).to_owned())
            .collect(),
        sublattice_size: result.sublattice.len(),
        embedding: result
            .embedding
            .iter()
            .map(|&e| l.label(e).to_owned())
            .collect(),
    };
    let text = format!(
        "beta {}\nremoved {}: {}\nsublattice size {}\n",
        summary.beta,
        summary.removed.len(),
        summary.removed.join(" "),
        summary.sublattice_size,
    );
    emit(mode, &summary, &text);
    Ok(0)
}

fn render_campaign(report: &CampaignReport) -> String {
    let mut text = format!(
        "family {}\nlattices {}\n",
        report.family, report.lattice_count
    );
    for c in &report.checks {
        text.push_str(&format!(
            "check {}: checked {}, skipped {}, violations {}\n",
            c.check.name(),
            c.lattices_checked,
            c.skipped,
            c.violations
        ));
    }
    for v in &report.violations {
        text.push_str(&format!(
            "violation {} on {}: {}\n",
            v.check.name(),
            v.lattice,
            v.detail
        ));
    }
    for n in &report.notes {
        text.push_str(&format!("note {n}\n"));
    }
    text.push_str(if report.passed { "PASS\n" } else { "FAIL\n" });
    text
}

fn cmd_campaign(
    spec: &FamilySpec,
    checks: &[CheckKind],
    cap: usize,
    mode: ModeOpts,
) -> Result<u8, CliError> {
    let report = run_campaign(spec, checks, cap)?;
    emit(mode, &report, &render_campaign(&report));
    Ok(if report.passed { 0 } else { EXIT_VIOLATION })
}

#[derive(Serialize)]
struct ExportSummary {
    written: Vec<String>,
}

fn cmd_export(
    l: &Lattice,
    dot: bool,
    relations: bool,
    polytope: bool,
    out: &PathBuf,
    mode: ModeOpts,
) -> Result<u8, CliError> {
    let mut written = Vec::new();
    let mut write = |suffix: &str, contents: String| -> Result<(), CliError> {
        let path = out.join(format!("{}.{suffix}", l.name()));
        std::fs::write(&path, contents).map_err(hibi_core::Error::from)?;
        written.push(path.display().to_string());
        Ok(())
    };
    if dot {
        write("lattice.dot", lattice_dot(l))?;
        write("ji.dot", ji_dot(l))?;
    }
    if relations {
        write("relations.txt", relations_text(l))?;
    }
    if polytope {
        write("polytope.txt", polytope_text(l)?)?;
    }
    let summary = ExportSummary { written };
    let text = summary
        .written
        .iter()
        .map(|p| format!("wrote {p}\n"))
        .collect::<String>();
    emit(mode, &summary, &text);
    Ok(0)
}

fn json_mode(command: &Command) -> bool {
    match command {
        Command::Build { mode, .. }
        | Command::Classify { mode, .. }
        | Command::Diamonds { mode, .. }
        | Command::Smoothness { mode, .. }
        | Command::Polytope { mode, .. }
        | Command::Decompose { mode, .. }
        | Command::Prune { mode, .. }
        | Command::Verify { mode, .. }
        | Command::Campaign { mode, .. }
        | Command::Export { mode, .. } => mode.json,
    }
}

fn run(command: &Command) -> Result<u8, CliError> {
    match command {
        Command::Build { input, mode, cap } => {
            let l = load_lattice(input, effective_cap(*cap)?)?;
            Ok(cmd_build(&l, *mode))
        }
        Command::Classify { input, mode, cap } => {
            let l = load_lattice(input, effective_cap(*cap)?)?;
            cmd_classify(&l, *mode)
        }
        Command::Diamonds { input, mode, cap } => {
            let l = load_lattice(input, effective_cap(*cap)?)?;
            Ok(cmd_diamonds(&l, *mode))
        }
        Command::Smoothness {
            input,
            mode,
            cap,
            point,
        } => {
            let l = load_lattice(input, effective_cap(*cap)?)?;
            cmd_smoothness(&l, point.as_deref(), *mode)
        }
        Command::Polytope { input, mode, cap } => {
            let l = load_lattice(input, effective_cap(*cap)?)?;
            cmd_polytope(&l, *mode)
        }
        Command::Decompose { input, mode, cap } => {
            let l = load_lattice(input, effective_cap(*cap)?)?;
            cmd_decompose(&l, *mode)
        }
        Command::Prune {
            input,
            mode,
            cap,
            beta,
        } => {
            let l = load_lattice(input, effective_cap(*cap)?)?;
            cmd_prune(&l, beta, *mode)
        }
        Command::Verify {
            family,
            mode,
            cap,
            theorem,
            lemmas,
        } => {
            let choice = match theorem {
                Some(t) => *t,
                None => {
                    debug_assert!(lemmas, "clap enforces one statement");
                    TheoremChoice::Lemmas
                }
            };
            cmd_campaign(
                &family.spec(),
                &choice.checks(),
                effective_cap(*cap)?,
                *mode,
            )
        }
        Command::Campaign { family, mode, cap } => cmd_campaign(
            &family.spec(),
            CheckKind::all(),
            effective_cap(*cap)?,
            *mode,
        ),
        Command::Export {
            input,
            mode,
            cap,
            dot,
            relations,
            polytope,
            out,
        } => {
            let l = load_lattice(input, effective_cap(*cap)?)?;
            cmd_export(&l, *dot, *relations, *polytope, out, *mode)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            if json_mode(&cli.command) {
                write_stdout(&format!(
                    "{}\n",
                    serde_json::json!({ "error": err.to_string() })
                ));
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::from(1)
        }
    }
}
