use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cuspvan::arith::divisors;
use cuspvan::cusps::all_cusps;
use cuspvan::gauss_eps::{gauss_sum, gauss_sum_closed};
use cuspvan::global::{e_f, elliptic_ramification, elliptic_table, CuspVanishingReport, NewformLocalData, Rationality};
use cuspvan::local_reps::{vanishing_index_oracle, vanishing_index_table, LocalData, LocalRepDescriptor};
use cuspvan::padic_chars::PadicCharacter;
use cuspvan::verify::Suite;
use cuspvan::whittaker::{c_table, vanishing_index_definitional};

#[derive(Parser, Debug)]
#[command(name = "cuspvan", version, about = "Vanishing orders of newforms at cusps from local data")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Local vanishing index e_pi(l)
    Vanishing(VanishingArgs),
    /// Local vanishing index by exhaustive twist search
    Oracle {
        #[arg(long)]
        descriptor: String,
        #[arg(long)]
        l: u32,
    },
    /// Values W(g(t, l, v)) of the local Whittaker newform
    Whittaker {
        #[arg(long)]
        descriptor: String,
        #[arg(long)]
        l: u32,
        #[arg(long, allow_hyphen_values = true)]
        t: i32,
        /// a single unit v; all residues mod p^l when absent
        #[arg(long)]
        v: Option<i64>,
    },
    /// Gauss sum G(v p^-r, mu), direct and closed form
    Gauss {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        r: i32,
        #[arg(long, default_value_t = 1)]
        v: i64,
        /// character as JSON; trivial when absent
        #[arg(long)]
        mu: Option<String>,
    },
    /// Cusps of X0(N) with widths and Fourier periods
    Cusps {
        #[arg(long = "N")]
        n: u64,
        #[arg(long = "M", default_value_t = 1)]
        m: u64,
    },
    /// e_f(L) for newforms read as JSON lines
    Ef {
        #[arg(long)]
        input: String,
        /// every divisor of N when absent
        #[arg(long = "L")]
        l: Option<u64>,
    },
    /// Ramification indices at cusps for elliptic-curve newforms read as JSON lines
    Elliptic {
        #[arg(long)]
        input: String,
        #[arg(long = "L")]
        l: Option<u64>,
    },
    /// Run self-check suites
    Verify {
        /// one of all, characters, gauss, table, definitional, symmetry, global, brunault
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Local exponents for elliptic curves at 2, 3 and larger primes
    Table {
        #[arg(long = "max-n2", default_value_t = 8)]
        max_n2: u32,
        #[arg(long = "max-n3", default_value_t = 5)]
        max_n3: u32,
    },
}

#[derive(Args, Debug)]
struct VanishingArgs {
    #[arg(long)]
    p: Option<u64>,
    /// conductor data, e.g. {"kind":"principal_series","a1":3,"a2":3,"a12inv":2}
    #[arg(long = "abstract", conflicts_with = "descriptor")]
    abstract_data: Option<String>,
    /// a descriptor with explicit characters
    #[arg(long)]
    descriptor: Option<String>,
    #[arg(long)]
    l: u32,
    #[arg(long, value_enum, default_value_t = Method::Table)]
    method: Method,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Table,
    Oracle,
    Definitional,
}

/// A malformed input line; exits with status 3.
#[derive(Debug)]
struct Malformed {
    line: usize,
    message: String,
}

impl std::fmt::Display for Malformed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for Malformed {}

/// A failed self-check; exits with status 2.
#[derive(Debug)]
struct VerifyFailed;

impl std::fmt::Display for VerifyFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerifyFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Malformed>().is_some() {
                ExitCode::from(3)
            } else if e.downcast_ref::<VerifyFailed>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn parse_json(s: &str, what: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| {
        anyhow!(Malformed {
            line: 1,
            message: format!("{what}: {e}"),
        })
    })
}

fn parse_descriptor(s: &str) -> Result<LocalRepDescriptor> {
    let v = parse_json(s, "--descriptor")?;
    match LocalData::from_json(&v)? {
        LocalData::Concrete(d) => Ok(d),
        LocalData::Abstract(_) => bail!("--descriptor needs explicit characters; use --abstract with --p for conductor data"),
    }
}

fn run(cli: Cli) -> Result<()> {
    let out = io::stdout();
    let mut out = out.lock();
    let format = cli.format;
    match cli.command {
        Command::Vanishing(args) => vanishing(&mut out, format, args)?,
        Command::Oracle { descriptor, l } => {
            let d = parse_descriptor(&descriptor)?;
            let e = vanishing_index_oracle(&d, l)?;
            emit_scalar(&mut out, format, "e", e)?;
        }
        Command::Whittaker { descriptor, l, t, v } => {
            let d = parse_descriptor(&descriptor)?;
            let table = c_table(&d, l, t)?;
            let rows: Vec<(i64, num_complex::Complex64)> = match v {
                Some(v) => vec![(v, table.value(t, v)?)],
                None => table.values(t)?.into_iter().map(|w| (w.v as i64, w.value)).collect(),
            };
            match format {
                Format::Tsv => {
                    writeln!(out, "v\tre\tim\tabs")?;
                    for (v, w) in rows {
                        writeln!(out, "{v}\t{:.12e}\t{:.12e}\t{:.12e}", w.re, w.im, w.norm())?;
                    }
                }
                Format::Json => {
                    let rows: Vec<Value> = rows
                        .into_iter()
                        .map(|(v, w)| json!({"v": v, "re": w.re, "im": w.im}))
                        .collect();
                    writeln!(out, "{}", json!({"l": l, "t": t, "residual": table.residual(), "values": rows}))?;
                }
            }
        }
        Command::Gauss { p, r, v, mu } => {
            let mu = match mu {
                Some(s) => serde_json::from_value::<PadicCharacter>(parse_json(&s, "--mu")?)
                    .map_err(|e| anyhow!(Malformed { line: 1, message: format!("--mu: {e}") }))?,
                None => PadicCharacter::trivial(p, 0)?,
            };
            if mu.p() != p {
                bail!("--mu is a character over Q_{}, not Q_{p}", mu.p());
            }
            let direct = gauss_sum(v, r, &mu)?.value;
            let closed = gauss_sum_closed(v, r, &mu)?;
            match format {
                Format::Tsv => {
                    writeln!(out, "method\tre\tim")?;
                    writeln!(out, "direct\t{:.12e}\t{:.12e}", direct.re, direct.im)?;
                    writeln!(out, "closed\t{:.12e}\t{:.12e}", closed.re, closed.im)?;
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"direct": {"re": direct.re, "im": direct.im}, "closed": {"re": closed.re, "im": closed.im}})
                )?,
            }
        }
        Command::Cusps { n, m } => {
            let cusps = all_cusps(n)?;
            match format {
                Format::Tsv => {
                    writeln!(out, "a\tL\twidth\tdelta")?;
                    for c in &cusps {
                        writeln!(out, "{}\t{}\t{}\t{}", c.a, c.l, c.width(), c.delta(m)?)?;
                    }
                }
                Format::Json => {
                    let rows = cusps
                        .iter()
                        .map(|c| Ok(json!({"a": c.a, "L": c.l, "width": c.width(), "delta": c.delta(m)?})))
                        .collect::<cuspvan::Result<Vec<Value>>>()?;
                    writeln!(out, "{}", Value::Array(rows))?;
                }
            }
        }
        Command::Ef { input, l } => {
            let forms = read_forms(&input)?;
            let mut reports = Vec::new();
            for (line, f) in &forms {
                for big_l in denominators(f, l) {
                    reports.push(e_f(f, big_l).with_context(|| format!("line {line}"))?);
                }
            }
            emit_reports(&mut out, format, &reports)?;
        }
        Command::Elliptic { input, l } => {
            let forms = read_forms(&input)?;
            let mut reports = Vec::new();
            for (line, f) in &forms {
                let mut f = f.clone();
                f.rationality = Rationality::RationalCoefficients;
                for big_l in denominators(&f, l) {
                    elliptic_ramification(&f, big_l).with_context(|| format!("line {line}"))?;
                    reports.push(e_f(&f, big_l)?);
                }
            }
            emit_reports(&mut out, format, &reports)?;
        }
        Command::Verify { suite } => verify(&mut out, format, &suite)?,
        Command::Table { max_n2, max_n3 } => {
            let rows = elliptic_table(&[(2, max_n2), (3, max_n3), (5, 2), (7, 2)])?;
            match format {
                Format::Tsv => {
                    writeln!(out, "p\tn\tl\tlocal\te_elliptic\te_general")?;
                    for r in &rows {
                        let local = r.local.map_or("unramified".to_string(), |a| serde_json::to_string(&a).expect("serializes"));
                        writeln!(out, "{}\t{}\t{}\t{local}\t{}\t{}", r.p, r.n_p, r.l_p, r.e_elliptic, r.e_general)?;
                    }
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string(&rows)?)?,
            }
            if let Some(r) = rows.iter().find(|r| r.e_elliptic != r.e_general) {
                eprintln!("mismatch: p={} n={} l={} {:?}", r.p, r.n_p, r.l_p, r.local);
                return Err(VerifyFailed.into());
            }
        }
    }
    Ok(())
}

fn vanishing(out: &mut impl Write, format: Format, args: VanishingArgs) -> Result<()> {
    let e = match (&args.abstract_data, &args.descriptor) {
        (Some(s), None) => {
            let p = args.p.context("--abstract needs --p")?;
            let v = parse_json(s, "--abstract")?;
            let data = LocalData::from_json(&v)?.abstract_data();
            if args.method != Method::Table {
                bail!("--method {:?} needs --descriptor with explicit characters", args.method);
            }
            vanishing_index_table(&data, p, args.l)?
        }
        (None, Some(s)) => {
            let d = parse_descriptor(s)?;
            match args.method {
                Method::Table => vanishing_index_table(&d.abstract_data(), d.p(), args.l)?,
                Method::Oracle => vanishing_index_oracle(&d, args.l)?,
                Method::Definitional => vanishing_index_definitional(&d, args.l)?,
            }
        }
        _ => bail!("give exactly one of --abstract or --descriptor"),
    };
    emit_scalar(out, format, "e", e)
}

fn emit_scalar(out: &mut impl Write, format: Format, key: &str, value: u32) -> Result<()> {
    match format {
        Format::Tsv => writeln!(out, "{value}")?,
        Format::Json => writeln!(out, "{}", json!({ key: value }))?,
    }
    Ok(())
}

fn denominators(f: &NewformLocalData, l: Option<u64>) -> Vec<u64> {
    match l {
        Some(l) => vec![l],
        None => divisors(f.n),
    }
}

/// Non-empty lines of a JSON-lines file (or stdin for `-`), with line numbers.
fn read_forms(path: &str) -> Result<Vec<(usize, NewformLocalData)>> {
    let reader: Box<dyn BufRead> = if path == "-" {
        Box::new(BufReader::new(io::stdin()))
    } else {
        Box::new(BufReader::new(File::open(path).with_context(|| format!("opening {path}"))?))
    };
    let mut forms = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let f: NewformLocalData = serde_json::from_str(&line).map_err(|e| Malformed {
            line: i + 1,
            message: e.to_string(),
        })?;
        f.validate().with_context(|| format!("line {}", i + 1))?;
        forms.push((i + 1, f));
    }
    Ok(forms)
}

fn emit_reports(out: &mut impl Write, format: Format, reports: &[CuspVanishingReport]) -> Result<()> {
    match format {
        Format::Tsv => {
            writeln!(out, "N\tL\te_p\te_f\tuniform")?;
            for r in reports {
                let e_p: Vec<String> = r.primes.iter().map(|x| format!("{}:{}", x.p, x.e_p)).collect();
                writeln!(out, "{}\t{}\t{}\t{}\t{}", r.n, r.l, e_p.join(","), r.e_f, r.uniform.as_str())?;
            }
        }
        Format::Json => {
            for r in reports {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
        }
    }
    Ok(())
}

fn verify(out: &mut impl Write, format: Format, which: &str) -> Result<()> {
    let suites: Vec<Suite> = if which == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![which.parse()?]
    };
    let mut failed = false;
    if format == Format::Tsv {
        writeln!(out, "suite\tcases\tstatus")?;
    }
    for s in suites {
        let report = s.run();
        eprintln!("{s}: {:.2}s", report.elapsed.as_secs_f64());
        match format {
            Format::Tsv => {
                let status = if report.passed() { "pass" } else { "FAIL" };
                writeln!(out, "{s}\t{}\t{status}", report.cases)?;
                if let Some(w) = report.witness() {
                    writeln!(out, "#\t{} failures; smallest: {w}", report.failures.len())?;
                }
            }
            Format::Json => writeln!(
                out,
                "{}",
                json!({"suite": s.name(), "cases": report.cases, "passed": report.passed(),
                       "failures": report.failures.len(), "witness": report.witness()})
            )?,
        }
        out.flush()?;
        failed |= !report.passed();
    }
    if failed {
        return Err(VerifyFailed.into());
    }
    Ok(())
}
