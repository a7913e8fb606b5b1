//! `alcalc`: command-line front end for the alcove calculus.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use alcove_calculus::affine_weyl::{check_p, parse_element, simple_reflections_sp};
use alcove_calculus::alcoves::{d_value, uparrow_leq};
use alcove_calculus::groth::{theta_s, theta_s_standard, translate, translate_standard};
use alcove_calculus::levi::{choose_mu, parse_levi};
use alcove_calculus::oracle::{verify_suite, VerifyConfig};
use alcove_calculus::sections::{
    delta_to_deltabar, deltabar_to_delta, off_wall_transform, onto_wall_transform,
    skeleton_from_char, theta_transform,
};
use alcove_calculus::tilting::{
    domexp_word, greedy_peel, parse_word, theta_product_char, tilt_summand_check, ReducedWord,
};
use alcove_calculus::{
    Basis, Error, GVector, LeviDatum, Reflection, RootSystem, SectionKind, SectionSkeleton,
    TiltingTable, TransSpec, Weight,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "alcalc",
    version,
    about = "Alcove, orbit and translation calculus for standard Levi form"
)]
struct Cli {
    /// Dynkin type, e.g. A1, B2, A2xA1.
    #[arg(long = "type", global = true)]
    type_spec: Option<String>,
    /// The prime p.
    #[arg(long, global = true)]
    p: Option<i64>,
    /// Levi subset as 1-based simple-root indices, e.g. "1,3".
    #[arg(long = "I", global = true)]
    levi: Option<String>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// key=value file supplying defaults for type, p, I and format.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Dir {
    Onto,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SectionOp {
    FromChar,
    Onto,
    Off,
    Theta,
    ToDelta,
    ToDeltabar,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root data, Coxeter number and S_p.
    Describe,
    /// Dot action of an element such as "s[1,1]*t[1]".
    Dot {
        #[arg(long)]
        elt: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// The d-function of a regular weight.
    D {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Decides mu ↑ lambda.
    Uparrow {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Representative of the W_{I,p} dot-orbit in the closed domain.
    OrbitRep {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// N_I = |W_I·(λ + pX)|.
    Ni {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Wall weight fixed exactly by the letter s ("k:j").
    Mu {
        #[arg(long)]
        s: String,
    },
    /// Translation onto or off the wall of s.
    Translate {
        /// GVector JSON, a path, or "-" for stdin.
        #[arg(long)]
        input: String,
        #[arg(long)]
        s: String,
        #[arg(long, value_enum)]
        direction: Dir,
    },
    /// Wall-crossing Θ_s.
    Theta {
        #[arg(long)]
        input: String,
        #[arg(long)]
        s: String,
    },
    /// Reduced word for a dominant regular label.
    Domexp {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Θ-product character of a word.
    TiltProduct {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Triangularity of a word's Θ-product; prints the residual.
    TiltCheck {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Greedy peeling against a tilting-character table.
    Peel {
        #[arg(long)]
        input: String,
        #[arg(long)]
        table: String,
    },
    /// Section skeleton transforms.
    Sections {
        #[arg(long, value_enum)]
        op: SectionOp,
        /// Skeleton JSON (or a character for from-char).
        #[arg(long)]
        input: String,
        #[arg(long)]
        s: Option<String>,
        /// Flag kind for from-char.
        #[arg(long, default_value = "DELTABAR")]
        kind: String,
    },
    /// Runs the brute-force oracle suite.
    Verify {
        #[arg(long = "box", default_value_t = 20)]
        radius: i64,
        #[arg(long, default_value_t = 3)]
        max_d: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

enum CliError {
    Usage(String),
    Domain(Error),
    Verify(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => CliError::Usage(msg),
            other => CliError::Domain(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Settings {
    type_spec: Option<String>,
    p: Option<i64>,
    levi: String,
    format: Format,
}

impl Settings {
    fn resolve(cli: &Cli) -> CliResult<Settings> {
        let mut file: BTreeMap<String, String> = BTreeMap::new();
        if let Some(path) = &cli.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| {
                    CliError::Usage(format!("config line {line:?} is not key=value"))
                })?;
                file.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        let p = match (cli.p, file.get("p")) {
            (Some(p), _) => Some(p),
            (None, Some(v)) => Some(
                v.parse()
                    .map_err(|_| CliError::Usage(format!("config p={v:?}")))?,
            ),
            (None, None) => None,
        };
        let format = match (cli.format, file.get("format").map(String::as_str)) {
            (Some(f), _) => f,
            (None, Some("json")) => Format::Json,
            (None, Some("text")) | (None, None) => Format::Text,
            (None, Some(other)) => return Err(CliError::Usage(format!("config format={other:?}"))),
        };
        Ok(Settings {
            type_spec: cli.type_spec.clone().or_else(|| file.get("type").cloned()),
            p,
            levi: cli
                .levi
                .clone()
                .or_else(|| file.get("I").cloned())
                .unwrap_or_default(),
            format,
        })
    }

    fn root_system(&self) -> CliResult<Arc<RootSystem>> {
        let t = self
            .type_spec
            .as_deref()
            .ok_or_else(|| CliError::Usage("--type is required".into()))?;
        Ok(Arc::new(RootSystem::from_spec(t)?))
    }

    fn p(&self) -> CliResult<i64> {
        self.p
            .ok_or_else(|| CliError::Usage("--p is required".into()))
    }

    fn levi_datum(&self) -> CliResult<LeviDatum> {
        let rs = self.root_system()?;
        let levi = parse_levi(&self.levi, rs.rank)?;
        Ok(LeviDatum::new(rs, &levi, self.p()?)?)
    }
}

fn weight(rs: &RootSystem, text: &str) -> CliResult<Weight> {
    let w = Weight::parse(text)?;
    rs.check_rank(&w)?;
    Ok(w)
}

fn plain(w: &Weight) -> String {
    w.0.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn letter(rs: &RootSystem, p: i64, text: &str) -> CliResult<Reflection> {
    match parse_word(text, rs, p)?.as_slice() {
        [s] => Ok(*s),
        _ => Err(CliError::Usage(format!(
            "expected a single letter k:j, got {text:?}"
        ))),
    }
}

fn read_input(arg: &str) -> CliResult<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("{arg}: {e}")))
}

fn word_json(word: &ReducedWord, p: i64) -> Value {
    json!({
        "ascent": word.ascent,
        "letters": word.to_word_string(p),
        "prefix_targets": word.prefix_targets.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
        "regularity": word.regularity,
    })
}

fn describe(settings: &Settings) -> CliResult<(String, String)> {
    let rs = settings.root_system()?;
    let roots: Vec<Vec<i64>> = rs.positive_roots.iter().map(|r| r.coords.clone()).collect();
    let mut text = format!(
        "type {}\nrank {}\ncoxeter number {}\npositive roots {}\n",
        rs.type_string(),
        rs.rank,
        rs.coxeter_number,
        roots.len()
    );
    for (i, r) in roots.iter().enumerate() {
        text.push_str(&format!("  {} {:?}\n", i + 1, r));
    }
    let mut value = json!({
        "coxeter_number": rs.coxeter_number,
        "positive_roots": roots,
        "rank": rs.rank,
        "type": rs.type_string(),
    });
    if let Some(p) = settings.p {
        check_p(&rs, p)?;
        let sp: Vec<String> = simple_reflections_sp(&rs, p)?
            .iter()
            .map(|s| s.word_token(p))
            .collect();
        text.push_str(&format!("S_p {}\n", sp.join(" ")));
        value["S_p"] = json!(sp);
        let levi = settings.levi_datum()?;
        text.push_str(&format!("|W_I| {}\n", levi.order_wi()));
        value["order_W_I"] = json!(levi.order_wi());
    }
    Ok((text.trim_end().to_string(), value.to_string()))
}

fn run(cli: Cli) -> CliResult<String> {
    let settings = Settings::resolve(&cli)?;
    let (text, value): (String, String) = match &cli.command {
        Command::Describe => describe(&settings)?,
        Command::Dot { elt, weight: w } => {
            let rs = settings.root_system()?;
            let p = settings.p()?;
            let x = parse_element(&rs, p, elt)?;
            let out = x.dot(&weight(&rs, w)?);
            (plain(&out), json!(out.0).to_string())
        }
        Command::D { weight: w } => {
            let rs = settings.root_system()?;
            let p = settings.p()?;
            check_p(&rs, p)?;
            let d = d_value(&rs, &weight(&rs, w)?, p)?;
            (d.to_string(), json!(d).to_string())
        }
        Command::Uparrow { mu, lambda } => {
            let rs = settings.root_system()?;
            let p = settings.p()?;
            check_p(&rs, p)?;
            let b = uparrow_leq(&rs, &weight(&rs, mu)?, &weight(&rs, lambda)?, p);
            (b.to_string(), json!(b).to_string())
        }
        Command::OrbitRep { weight: w } => {
            let levi = settings.levi_datum()?;
            let rep = levi.orbit_rep(&weight(levi.root_system(), w)?);
            (plain(&rep), json!(rep.0).to_string())
        }
        Command::Ni { weight: w } => {
            let levi = settings.levi_datum()?;
            let n = levi.n_i(&weight(levi.root_system(), w)?)?;
            (n.to_string(), json!(n).to_string())
        }
        Command::Mu { s } => {
            let rs = settings.root_system()?;
            let p = settings.p()?;
            let setup = choose_mu(&rs, &letter(&rs, p, s)?, p)?;
            (plain(&setup.mu), json!(setup.mu.0).to_string())
        }
        Command::Translate {
            input,
            s,
            direction,
        } => {
            let levi = settings.levi_datum()?;
            let v = GVector::from_json(&read_input(input)?)?;
            let setup = choose_mu(
                levi.root_system(),
                &letter(levi.root_system(), levi.p(), s)?,
                levi.p(),
            )?;
            let spec = match direction {
                Dir::Onto => TransSpec::onto(&setup),
                Dir::Off => TransSpec::off(&setup),
            };
            let out = match v.basis {
                Basis::Zbar => translate(&v, &spec, &levi)?,
                Basis::Nabla => translate_standard(&v, &spec, &levi)?,
            };
            (out.to_string(), out.to_json())
        }
        Command::Theta { input, s } => {
            let levi = settings.levi_datum()?;
            let v = GVector::from_json(&read_input(input)?)?;
            let setup = choose_mu(
                levi.root_system(),
                &letter(levi.root_system(), levi.p(), s)?,
                levi.p(),
            )?;
            let out = match v.basis {
                Basis::Zbar => theta_s(&v, &setup, &levi)?,
                Basis::Nabla => theta_s_standard(&v, &setup, &levi)?,
            };
            (out.to_string(), out.to_json())
        }
        Command::Domexp { weight: w } => {
            let levi = settings.levi_datum()?;
            let word = domexp_word(&weight(levi.root_system(), w)?, &levi)?;
            (
                word.to_word_string(levi.p()),
                word_json(&word, levi.p()).to_string(),
            )
        }
        Command::TiltProduct { word } => {
            let levi = settings.levi_datum()?;
            let letters = parse_word(word, levi.root_system(), levi.p())?;
            let out = theta_product_char(&letters, &levi)?;
            (out.to_string(), out.to_json())
        }
        Command::TiltCheck { word } => {
            let levi = settings.levi_datum()?;
            let letters = parse_word(word, levi.root_system(), levi.p())?;
            let certified = ReducedWord::certify(&letters, &levi)?;
            let residual = tilt_summand_check(&certified, &levi)?;
            (
                format!("ok\nresidual {residual}"),
                format!(
                    "{{\"residual\":{},\"word\":{}}}",
                    residual.to_json(),
                    word_json(&certified, levi.p())
                ),
            )
        }
        Command::Peel { input, table } => {
            let levi = settings.levi_datum()?;
            let ch = GVector::from_json(&read_input(input)?)?;
            let table = TiltingTable::from_json(&read_input(table)?, &levi)?;
            let m = greedy_peel(&ch, &table, &levi)?;
            let text = m
                .iter()
                .map(|(l, k)| format!("{} {k}", plain(l)))
                .collect::<Vec<_>>()
                .join("\n");
            let value = json!(m
                .iter()
                .map(|(l, k)| json!({"count": k, "label": l.0}))
                .collect::<Vec<_>>())
            .to_string();
            (text, value)
        }
        Command::Sections { op, input, s, kind } => {
            let levi = settings.levi_datum()?;
            let text = read_input(input)?;
            let setup = |s: &Option<String>| -> CliResult<_> {
                let s = s
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("--s is required for this operation".into()))?;
                Ok(choose_mu(
                    levi.root_system(),
                    &letter(levi.root_system(), levi.p(), s)?,
                    levi.p(),
                )?)
            };
            let out: SectionSkeleton = match op {
                SectionOp::FromChar => skeleton_from_char(
                    &GVector::from_json(&text)?,
                    SectionKind::parse(kind)?,
                    &levi,
                )?,
                SectionOp::Onto => {
                    onto_wall_transform(&SectionSkeleton::from_json(&text)?, &setup(s)?, &levi)?
                }
                SectionOp::Off => {
                    off_wall_transform(&SectionSkeleton::from_json(&text)?, &setup(s)?, &levi)?
                }
                SectionOp::Theta => {
                    theta_transform(&SectionSkeleton::from_json(&text)?, &setup(s)?, &levi)?
                }
                SectionOp::ToDelta => {
                    deltabar_to_delta(&SectionSkeleton::from_json(&text)?, &levi)?
                }
                SectionOp::ToDeltabar => {
                    delta_to_deltabar(&SectionSkeleton::from_json(&text)?, &levi)?
                }
            };
            (out.to_string(), out.to_json())
        }
        Command::Verify {
            radius,
            max_d,
            seed,
            samples,
        } => {
            let rs = settings.root_system()?;
            let p = settings.p()?;
            let mut cfg = VerifyConfig::new(&rs.type_string(), p);
            if cli.levi.is_some() || !settings.levi.is_empty() {
                cfg.levis = Some(vec![parse_levi(&settings.levi, rs.rank)?]);
            }
            cfg.radius = *radius;
            cfg.max_d = *max_d;
            cfg.seed = *seed;
            cfg.samples = *samples;
            let reports = verify_suite(&cfg);
            let lines: Vec<String> = reports.iter().map(|r| r.to_json_line()).collect();
            let out = lines.join("\n");
            if reports.iter().any(|r| !r.passed()) {
                emit(&out);
                return Err(CliError::Verify(format!(
                    "{} of {} checks failed",
                    reports.iter().filter(|r| !r.passed()).count(),
                    reports.len()
                )));
            }
            return Ok(out);
        }
    };
    Ok(match settings.format {
        Format::Text => text,
        Format::Json => value,
    })
}

/// Writes a result line, tolerating a closed stdout.
fn emit(out: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(CliError::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}
