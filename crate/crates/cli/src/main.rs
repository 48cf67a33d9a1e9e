use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use torelli::catalog::{boundary_products, catalog_json, generating_set, lift_table};
use torelli::certificates::{gamma_certificate, verify_certificate, Certificate};
use torelli::homology::push_action;
use torelli::presentations::{
    free_presentation, parity_coset_table, pi_presentation, reidemeister_schreier, relabel_plus,
};
use torelli::quotient::nf;
use torelli::suite::run_suite;
use torelli::surface::{in_gamma, oe_profile, SurfaceParams};
use torelli::words::{parse_word, Word};

#[derive(Parser)]
#[command(
    name = "torelli",
    version,
    about = "Push-map kernels and Torelli generators for non-orientable surfaces"
)]
struct Cli {
    /// Genus: the number of cross caps.
    #[arg(long, global = true, default_value_t = 4)]
    g: usize,
    /// Number of boundary components.
    #[arg(long, global = true, default_value_t = 1)]
    b: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership in the push-map kernel and print the O/E profile.
    Gamma { word: String },
    /// Normal form in the quotient by squares and triple squares.
    Nf { word: String },
    /// Homology action of pushing the puncture along a word of even length.
    Act { word: String },
    /// Write a word of the kernel as a product of conjugated relators.
    Certify { word: String },
    /// Check a certificate file against a word.
    VerifyCert { cert: PathBuf, word: String },
    /// Reidemeister-Schreier presentation of the index-two parity subgroup.
    Rs {
        /// Start from the quotient presentation instead of the free group.
        #[arg(long)]
        with_relators: bool,
    },
    /// Normal generators, lifts and boundary twist products.
    Catalog,
    /// Run every self-check and report pass/fail with timings.
    Suite {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn params(cli: &Cli) -> Result<SurfaceParams> {
    Ok(SurfaceParams::new(cli.g, cli.b)?)
}

fn word(text: &str, params: &SurfaceParams) -> Result<Word> {
    parse_word(text, params).with_context(|| format!("cannot parse `{text}`"))
}

fn emit(format: Format, value: serde_json::Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{value}"),
        Format::Text => println!("{}", text().trim_end()),
    }
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: &Cli) -> Result<bool> {
    let fmt = cli.format;
    match &cli.command {
        Command::Gamma { word: text } => {
            let p = params(cli)?;
            let w = word(text, &p)?;
            let member = in_gamma(&w, &p);
            let profile = oe_profile(&w, &p).ok();
            let value = json!({ "member": member, "profile": profile });
            emit(fmt, value, || match &profile {
                Some(pr) => format!(
                    "member: {member}\nO: {}\nE: {}",
                    join(&pr.odd),
                    join(&pr.even)
                ),
                None => format!("member: {member}\nprojection has odd length"),
            });
        }
        Command::Nf { word: text } => {
            let p = params(cli)?;
            let n = nf(&word(text, &p)?, &p);
            emit(fmt, n.to_json(), || {
                let v: Vec<String> = n.v.iter().map(ToString::to_string).collect();
                format!("v: ({})\nparity: {}", v.join(", "), n.parity)
            });
        }
        Command::Act { word: text } => {
            let p = params(cli)?;
            let m = push_action(&word(text, &p)?, &p)?;
            emit(fmt, m.to_json(&p), || m.to_string());
        }
        Command::Certify { word: text } => {
            let p = params(cli)?;
            let c = gamma_certificate(&word(text, &p)?, &p)?;
            emit(fmt, c.to_json(), || {
                c.entries
                    .iter()
                    .map(|e| format!("{:>2}  {}  conj {}", e.exp, e.relator, e.conj))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
        }
        Command::VerifyCert { cert, word: text } => {
            let p = params(cli)?;
            let raw = std::fs::read_to_string(cert)
                .with_context(|| format!("cannot read {}", cert.display()))?;
            let value: serde_json::Value = serde_json::from_str(&raw)
                .with_context(|| format!("{} is not JSON", cert.display()))?;
            let c = Certificate::from_json(&value, &p)?;
            let ok = verify_certificate(&c, &word(text, &p)?);
            emit(fmt, json!(ok), || ok.to_string());
            return Ok(ok);
        }
        Command::Rs { with_relators } => {
            let p = params(cli)?;
            let pres = if *with_relators {
                pi_presentation(&p)
            } else {
                free_presentation(&p)
            };
            let sub = reidemeister_schreier(&pres, &parity_coset_table(&pres, &p)?)?;
            let plus = relabel_plus(&sub, &p)?;
            emit(fmt, plus.to_json(), || {
                let gens: Vec<String> = plus.generators().iter().map(ToString::to_string).collect();
                let mut out = format!("generators: {}", gens.join(" "));
                for r in plus.relators() {
                    out.push_str(&format!("\n{r}"));
                }
                out
            });
        }
        Command::Catalog => {
            let value = catalog_json(cli.g, cli.b)?;
            let text = catalog_text(cli.g, cli.b)?;
            emit(fmt, value, || text);
        }
        Command::Suite { seed } => {
            if cli.b == 0 {
                bail!("the suite needs b >= 1");
            }
            let report = run_suite(cli.g, cli.b, *seed)?;
            emit(fmt, report.to_json(), || report.to_string());
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn catalog_text(g: usize, b: usize) -> Result<String> {
    let gens: Vec<String> = generating_set(g, b)?
        .iter()
        .map(ToString::to_string)
        .collect();
    let mut out = format!("generators: {}", gens.join(", "));
    if b >= 1 {
        let p = SurfaceParams::new(g, b)?;
        for lift in lift_table(&p) {
            out.push_str(&format!("\nlift {} -> {}", lift.word, lift.lift));
        }
        for f in boundary_products(&p)? {
            out.push_str(&format!("\n{f}"));
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
