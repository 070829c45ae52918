//! `prymlab` command-line front end.
//!
//! Exit codes: 0 success or pass, 1 verdict fail, 2 usage or input error.

mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use prymlab::corr::{check_identity, check_identity_homology, IdentityReport};
use prymlab::cover::predict;
use prymlab::prym::{
    lattice_type, probe_trial, prym_lattice, prym_tyurin_lattice, scenario_spec, ProbeReport,
    ProbeRow, SCENARIOS,
};
use prymlab::weyl::classify_subgroup;
use prymlab::{
    induce, random_simple, verify_scenario, Error, HomologyModel, MonodromyDatum, OrbitKind,
    ScenarioInput,
};

#[derive(Parser, Debug)]
#[command(
    name = "prymlab",
    version,
    about = "Prym and Prym-Tyurin lattices of W(B_n)-coverings of P¹"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Extra material to print.
    #[arg(long, value_enum, global = true)]
    dump: Vec<Dump>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Dump {
    /// The monodromy datum in input form.
    Datum,
    /// The intersection matrix of the homology basis.
    Gram,
    /// The homology basis as edge chains.
    Basis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Orbit {
    Vector,
    Spinor,
    PairClass,
    Parity,
    SpinorClass,
}

impl From<Orbit> for OrbitKind {
    fn from(o: Orbit) -> Self {
        match o {
            Orbit::Vector => OrbitKind::Vector,
            Orbit::Spinor => OrbitKind::Spinor,
            Orbit::PairClass => OrbitKind::PairClass,
            Orbit::Parity => OrbitKind::Parity,
            Orbit::SpinorClass => OrbitKind::SpinorClass,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a datum file: shape, ranks and the product relation.
    Validate { file: PathBuf },
    /// Classify the monodromy group.
    Classify { file: PathBuf },
    /// Genera of every induced cover, per component.
    Genera { file: PathBuf },
    /// Closed-form genera, dimensions and types from branching counts.
    Predict {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ds: usize,
        #[arg(long)]
        dl: usize,
        #[arg(long, default_value_t = 0)]
        gy: usize,
    },
    /// Homology of the cover induced on an orbit.
    Homology {
        file: PathBuf,
        #[arg(long, value_enum)]
        orbit: Orbit,
    },
    /// Polarization type: P(C,C′) for the vector orbit, P(X,δ) for the spinor orbit.
    Ptype {
        file: PathBuf,
        #[arg(long, value_enum)]
        orbit: Orbit,
    },
    /// Run a named scenario or an identity of the correspondence catalog.
    Verify(VerifyArgs),
    /// Print a random simple datum with the given branching counts.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ds: usize,
        #[arg(long)]
        dl: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare computed and conjectured types of P(X,δ) on random data.
    Probe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ds: usize,
        #[arg(long)]
        dl: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Scenario name, or `list`.
    #[arg(
        long,
        conflicts_with = "identity",
        required_unless_present = "identity"
    )]
    scenario: Option<String>,
    /// Identity name or catalog letter.
    #[arg(long)]
    identity: Option<String>,
    /// Rank for a fiber-level identity check.
    #[arg(long, requires = "identity", conflicts_with = "file")]
    n: Option<usize>,
    /// Datum file.
    #[arg(long, conflicts_with = "gen")]
    file: Option<PathBuf>,
    /// Generation parameters `N,DS,DL`.
    #[arg(long, value_parser = parse_gen)]
    gen: Option<(usize, usize, usize)>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_gen(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [n, ds, dl] = parts.as_slice() else {
        return Err(format!("expected N,DS,DL, got `{s}`"));
    };
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok((p(n)?, p(ds)?, p(dl)?))
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Internal(_)) {
            1
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<bool, Failure>;

/// Writes to stdout, ignoring a closed pipe.
fn say(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let out = Output {
        format: cli.format,
        dump: &cli.dump,
    };
    match &cli.command {
        Command::Validate { file } => validate(&out, file),
        Command::Classify { file } => classify(&out, file),
        Command::Genera { file } => genera(&out, file),
        &Command::Predict { n, ds, dl, gy } => {
            let p = predict(n, ds, dl, gy)?;
            out.emit(&p, || render::prediction(&p));
            Ok(true)
        }
        Command::Homology { file, orbit } => homology(&out, file, (*orbit).into()),
        Command::Ptype { file, orbit } => ptype(&out, file, (*orbit).into()),
        Command::Verify(args) => verify(&out, args),
        &Command::Generate { n, ds, dl, seed } => {
            let d = random_simple(n, ds, dl, seed)?;
            say(&format!(
                "{}\n",
                serde_json::to_string_pretty(&d).expect("serializable")
            ));
            Ok(true)
        }
        &Command::Probe {
            n,
            ds,
            dl,
            trials,
            seed,
        } => probe(&out, n, ds, dl, trials, seed),
    }
}

struct Output<'a> {
    format: Format,
    dump: &'a [Dump],
}

impl Output<'_> {
    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => say(&format!(
                "{}\n",
                serde_json::to_string_pretty(value).expect("serializable")
            )),
            Format::Text => say(&text()),
        }
    }

    fn dumps(&self, d: Dump) -> bool {
        self.dump.contains(&d)
    }
}

fn load(path: &Path) -> Result<MonodromyDatum, Failure> {
    let input = |message: String| Failure { code: 2, message };
    let text =
        std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let datum: MonodromyDatum = serde_json::from_str(&text)
        .map_err(|e| input(format!("{}: malformed datum: {e}", path.display())))?;
    datum.validate()?;
    Ok(datum)
}

#[derive(Serialize)]
struct Validated<'a> {
    valid: bool,
    n: usize,
    base_genus: usize,
    branch_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    datum: Option<&'a MonodromyDatum>,
}

fn validate(out: &Output, file: &Path) -> Outcome {
    let d = load(file)?;
    let v = Validated {
        valid: true,
        n: d.n,
        base_genus: d.base_genus,
        branch_points: d.branch_count(),
        datum: out.dumps(Dump::Datum).then_some(&d),
    };
    out.emit(&v, || {
        format!(
            "valid: n = {}, base genus {}, {} branch points\n",
            d.n,
            d.base_genus,
            d.branch_count()
        )
    });
    Ok(true)
}

#[derive(Serialize)]
struct Classified {
    group: prymlab::GroupClass,
    short: usize,
    long: usize,
    simple: bool,
}

fn classify(out: &Output, file: &Path) -> Outcome {
    let d = load(file)?;
    let ram = induce(&d, OrbitKind::Vector)?.ramification()?;
    let c = Classified {
        group: classify_subgroup(&d.gens)?,
        short: ram.short.len(),
        long: ram.long.len(),
        simple: ram.simple,
    };
    out.emit(&c, || {
        format!(
            "group: {:?}\n|D_s| = {}, |D_l| = {}, simple: {}\n",
            c.group, c.short, c.long, c.simple
        )
    });
    Ok(true)
}

#[derive(Serialize)]
struct CoverGenera {
    orbit: OrbitKind,
    degree: usize,
    component_genera: Vec<usize>,
}

fn genera(out: &Output, file: &Path) -> Outcome {
    let d = load(file)?;
    let rows = OrbitKind::ALL
        .iter()
        .map(|&k| {
            let c = induce(&d, k)?;
            Ok(CoverGenera {
                orbit: k,
                degree: c.degree(),
                component_genera: c.component_genera()?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    out.emit(&rows, || render::genera(&rows));
    Ok(true)
}

#[derive(Serialize)]
struct HomologySummary<'a> {
    orbit: OrbitKind,
    degree: usize,
    components: usize,
    genus: usize,
    rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    gram: Option<&'a prymlab::IntMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<&'a Vec<Vec<i64>>>,
}

fn homology(out: &Output, file: &Path, orbit: OrbitKind) -> Outcome {
    let d = load(file)?;
    let h = HomologyModel::build_disjoint(&induce(&d, orbit)?)?;
    let s = HomologySummary {
        orbit,
        degree: h.degree(),
        components: h.components,
        genus: h.genus,
        rank: h.rank(),
        gram: out.dumps(Dump::Gram).then_some(&h.gram),
        basis: out.dumps(Dump::Basis).then_some(&h.basis),
    };
    out.emit(&s, || {
        render::homology(&s.orbit, &h, out.dumps(Dump::Gram), out.dumps(Dump::Basis))
    });
    Ok(true)
}

#[derive(Serialize)]
struct TypeReport {
    variety: &'static str,
    rank: usize,
    ptype: prymlab::PolType,
}

fn ptype(out: &Output, file: &Path, orbit: OrbitKind) -> Outcome {
    let d = load(file)?;
    let (variety, lattice) = match orbit {
        OrbitKind::Vector => {
            let h = HomologyModel::build(&induce(&d, orbit)?)?;
            ("P(C,C')", prym_lattice(&h, &prymlab::corr::make_iota(d.n))?)
        }
        OrbitKind::Spinor => {
            let h = HomologyModel::build_disjoint(&induce(&d, orbit)?)?;
            ("P(X,delta)", prym_tyurin_lattice(&h)?)
        }
        other => {
            return Err(Error::Domain(format!(
                "ptype supports the vector and spinor orbits, not {other:?}"
            ))
            .into())
        }
    };
    let r = TypeReport {
        variety,
        rank: lattice.rank(),
        ptype: lattice_type(&lattice)?,
    };
    out.emit(&r, || {
        format!("{} rank {} type {}\n", r.variety, r.rank, r.ptype)
    });
    Ok(true)
}

fn verify(out: &Output, args: &VerifyArgs) -> Outcome {
    if let Some(name) = &args.identity {
        return verify_identity(out, name, args);
    }
    let name = args
        .scenario
        .as_deref()
        .expect("clap requires scenario or identity");
    if name == "list" {
        out.emit(&SCENARIOS, render::scenario_list);
        return Ok(true);
    }
    let spec = scenario_spec(name)?;
    let input = match (&args.file, args.gen) {
        (Some(f), _) => ScenarioInput::Datum(load(f)?),
        (None, Some((n, ds, dl))) => ScenarioInput::Generate {
            n,
            ds,
            dl,
            seed: args.seed,
        },
        (None, None) => spec.default_input(args.seed),
    };
    if out.dumps(Dump::Datum) {
        eprintln!(
            "{}",
            serde_json::to_string(&input.datum()?).expect("serializable")
        );
    }
    let r = verify_scenario(name, &input)?;
    out.emit(&r, || render::prym_result(&r));
    Ok(r.passed())
}

fn verify_identity(out: &Output, name: &str, args: &VerifyArgs) -> Outcome {
    let reports: Vec<IdentityReport> = match (&args.file, args.n) {
        (Some(f), _) => vec![check_identity_homology(name, &load(f)?)?],
        (None, Some(n)) => vec![check_identity(name, n)?],
        (None, None) => {
            let spec = prymlab::corr::identity_spec(name)?;
            spec.ranks
                .iter()
                .map(|&n| check_identity(spec.name, n))
                .collect::<Result<_, _>>()?
        }
    };
    out.emit(&reports, || render::identities(&reports));
    Ok(reports.iter().all(|r| r.passed))
}

fn threads() -> usize {
    std::env::var("PRYMLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

fn probe(out: &Output, n: usize, ds: usize, dl: usize, trials: usize, seed: u64) -> Outcome {
    let workers = threads();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure {
            code: 2,
            message: format!("thread pool: {e}"),
        })?;
    let mut rows: Vec<ProbeRow> = Vec::with_capacity(trials);
    // Chunks keep the stream ordered by trial index.
    let indices: Vec<usize> = (0..trials).collect();
    for chunk in indices.chunks(workers.max(1)) {
        let done: Vec<Result<ProbeRow, Error>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&i| probe_trial(n, ds, dl, seed, i))
                .collect()
        });
        for row in done {
            let row = row?;
            if rows.is_empty() && out.format == Format::Text {
                say(&format!("{}\n", render::probe_header()));
            }
            match out.format {
                Format::Json => say(&format!(
                    "{}\n",
                    serde_json::to_string(&row).expect("serializable")
                )),
                Format::Text => say(&format!("{}\n", render::probe_row(&row))),
            }
            rows.push(row);
        }
    }
    let report = ProbeReport::from_rows(n, ds, dl, seed, rows);
    #[derive(Serialize)]
    struct Summary<'a> {
        summary: SummaryBody<'a>,
    }
    #[derive(Serialize)]
    struct SummaryBody<'a> {
        n: usize,
        ds: usize,
        dl: usize,
        seed: u64,
        trials: usize,
        basis: &'a prymlab::cover::TypeBasis,
        compared: usize,
        agreeing: usize,
        agreement: Option<f64>,
    }
    let body = SummaryBody {
        n,
        ds,
        dl,
        seed,
        trials: report.rows.len(),
        basis: &report.basis,
        compared: report.compared,
        agreeing: report.agreeing,
        agreement: report.agreement,
    };
    match out.format {
        Format::Json => say(&format!(
            "{}\n",
            serde_json::to_string(&Summary { summary: body }).expect("serializable")
        )),
        Format::Text => say(&render::probe_summary(&report)),
    }
    Ok(report.proved_failures() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_triples_parse() {
        assert_eq!(parse_gen("3,4,6"), Ok((3, 4, 6)));
        assert_eq!(parse_gen(" 4, 0 ,12"), Ok((4, 0, 12)));
        assert!(parse_gen("3,4").is_err());
        assert!(parse_gen("3,x,6").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
