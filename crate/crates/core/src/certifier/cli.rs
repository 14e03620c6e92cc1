//! `netcert` command line. Exit codes: 0 success (including every
//! classification verdict), 1 validation or mathematical violation, 2 usage
//! or IO error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use super::{classify_with, table, witness_field, CertError, WitnessField};
use crate::dedekind_defect::{dedekind_sum, reciprocity_check, signature_defect};
use crate::divisor_lattice::{chern_numbers, euler_chars};
use crate::exact_arith::{format_rational, Field};
use crate::hj_chains::{chain_signature, delta_q_squared, discrepancy_system_holds, hj_chain, ncf};
use crate::net_geometry::{
    deleted_hesse_net, fermat_net, hesse_net, multiplicity_profile, net_from_json, profile_from_json,
    profile_identities, validate_net, MultiplicityProfile, NetError, NetRealization,
};
use crate::signature_engine::{consistency_report, delta_squared_total, euler_leading, ky2_exact, SignatureReport};

#[derive(Parser, Debug)]
#[command(name = "netcert", version, about = "Exact invariants and existence certificates for (m, d)-nets")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a net (file or builtin) and report its profile and identities.
    CheckNet { net: String },
    /// Chern numbers and Euler characteristics for a profile or net.
    Invariants { source: String },
    /// Hirzebruch–Jung chain of u^n = x·y^r.
    Hj { n: u64, r: u64 },
    /// Dedekind sum s(h, k) and the reciprocity check.
    Dedekind {
        #[arg(allow_negative_numbers = true)]
        h: i64,
        k: u64,
    },
    /// Signature defect of u^n = x·y^r.
    Defect { n: u64, r: u64 },
    /// Both signature formulas, optionally with K_Y² at a prime n.
    Signature {
        source: String,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Existence certificate for (m, d)-nets.
    Classify {
        m: u32,
        d: u32,
        /// Build witnesses over Q(ζ_d) instead of a prime field.
        #[arg(long)]
        cyclotomic: bool,
    },
    /// Certificates for the grid 3 <= m <= m-max, 3 <= d <= d-max.
    Table {
        #[arg(long)]
        m_max: u32,
        #[arg(long)]
        d_max: u32,
        #[arg(long)]
        cyclotomic: bool,
    },
}

enum Failure {
    Violation(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Violation(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl From<NetError> for Failure {
    fn from(e: NetError) -> Self {
        match e {
            NetError::Format(_) | NetError::Io(_) => Failure::Usage(e.to_string()),
            other => Failure::Violation(other.to_string()),
        }
    }
}

impl From<CertError> for Failure {
    fn from(e: CertError) -> Self {
        match e {
            CertError::Net(n) => n.into(),
            other => Failure::Violation(other.to_string()),
        }
    }
}

fn violation(e: impl std::fmt::Display) -> Failure {
    Failure::Violation(e.to_string())
}

/// A result ready for printing; `code` is 1 when it records a violation.
struct Output {
    headline: String,
    body: Value,
    code: i32,
}

fn output(headline: impl Into<String>, body: impl Serialize, code: i32) -> Result<Output, Failure> {
    let body = serde_json::to_value(body).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(Output { headline: headline.into(), body, code })
}

fn witness_kind(cyclotomic: bool) -> WitnessField {
    if cyclotomic { WitnessField::Cyclotomic } else { WitnessField::Prime }
}

fn builtin(name: &str) -> Result<Option<NetRealization>, Failure> {
    let small = || Field::prime(7).map_err(violation);
    Ok(Some(match name {
        "hesse" => hesse_net(&small()?)?,
        "deleted-hesse" => deleted_hesse_net(&small()?)?,
        other => match other.strip_prefix("fermat:") {
            Some(d) => {
                let d: u32 = d.parse().map_err(|_| Failure::Usage(format!("bad degree in {other}")))?;
                if d < 3 {
                    return Err(NetError::DegreeTooSmall(d as usize).into());
                }
                fermat_net(d, &witness_field(d, WitnessField::Prime)?)?
            }
            None => return Ok(None),
        },
    }))
}

enum Source {
    Net(NetRealization),
    Profile(MultiplicityProfile),
}

fn load(source: &str) -> Result<Source, Failure> {
    if let Some(net) = builtin(source)? {
        return Ok(Source::Net(net));
    }
    let text = std::fs::read_to_string(source).map_err(|e| Failure::Usage(format!("{source}: {e}")))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{source}: {e}")))?;
    if value.get("classes").is_some() {
        Ok(Source::Net(net_from_json(&text)?))
    } else {
        Ok(Source::Profile(profile_from_json(&text)?))
    }
}

fn load_profile(source: &str) -> Result<MultiplicityProfile, Failure> {
    match load(source)? {
        Source::Net(net) => Ok(multiplicity_profile(&net)?),
        Source::Profile(p) => Ok(p),
    }
}

fn check_net(source: &str) -> Result<Output, Failure> {
    let net = match load(source)? {
        Source::Net(net) => net,
        Source::Profile(_) => return Err(Failure::Usage(format!("{source} holds a profile, not a net"))),
    };
    let validation = validate_net(&net);
    if !validation.valid {
        return output("invalid net", json!({ "validation": validation }), 1);
    }
    let profile = multiplicity_profile(&net)?;
    let identities = profile_identities(&profile);
    let code = if identities.pass { 0 } else { 1 };
    let headline = format!("valid ({}, {})-net over {}", net.m(), net.d(), validation.field);
    output(headline, json!({ "validation": validation, "profile": profile, "identities": identities }), code)
}

fn invariants(source: &str) -> Result<Output, Failure> {
    let profile = load_profile(source)?;
    let surface = euler_chars(&profile).map_err(violation)?;
    let (c1_sq, c2) = chern_numbers(profile.d);
    let e_leading = euler_leading(&profile).map_err(violation)?;
    output(
        format!("invariants for m = {}, d = {}", profile.m, profile.d),
        json!({
            "profile": profile,
            "chern_numbers": { "c1_sq": c1_sq, "c2": c2 },
            "euler_chars": surface,
            "euler_leading": e_leading,
        }),
        0,
    )
}

fn hj(n: u64, r: u64) -> Result<Output, Failure> {
    let chain = hj_chain(n, r).map_err(violation)?;
    let expansion = ncf(n, n - r).map_err(violation)?;
    let delta = delta_q_squared(n, r).map_err(violation)?;
    let holds = discrepancy_system_holds(&chain);
    output(
        format!("chain of u^{n} = x*y^{r}: {:?}", expansion.coefficients),
        json!({
            "chain": chain,
            "ncf": expansion.coefficients,
            "chain_signature": chain_signature(&chain),
            "delta_q_sq": format_rational(&delta),
            "discrepancy_system": holds,
        }),
        if holds { 0 } else { 1 },
    )
}

fn dedekind(h: i64, k: u64) -> Result<Output, Failure> {
    let s = dedekind_sum(h, k).map_err(violation)?;
    let reciprocity = if h > 0 { Some(reciprocity_check(h as u64, k).map_err(violation)?) } else { None };
    let code = if reciprocity.as_ref().is_none_or(|r| r.pass) { 0 } else { 1 };
    output(
        format!("s({h}, {k}) = {}", format_rational(&s)),
        json!({ "h": h, "k": k, "s": format_rational(&s), "reciprocity": reciprocity }),
        code,
    )
}

fn defect(n: u64, r: u64) -> Result<Output, Failure> {
    let record = signature_defect(n, r).map_err(violation)?;
    output(format!("defect of u^{n} = x*y^{r}: {}", format_rational(&record.defect)), record, 0)
}

#[derive(Serialize)]
struct SignatureOutput {
    #[serde(flatten)]
    report: SignatureReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ky2_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_squared_total: Option<String>,
}

fn signature(source: &str, n: Option<u64>) -> Result<Output, Failure> {
    let profile = load_profile(source)?;
    let report = consistency_report(&profile).map_err(violation)?;
    let (ky2, delta) = match n {
        Some(n) => (
            Some(format_rational(&ky2_exact(&profile, n).map_err(violation)?)),
            Some(format_rational(&delta_squared_total(&profile, n).map_err(violation)?)),
        ),
        None => (None, None),
    };
    let headline = format!(
        "thm4 {} vs thm9 {}{}{}",
        format_rational(&report.thm4_coeff),
        format_rational(&report.thm9_value),
        if report.thm9_applicable { "" } else { " (outside d > m - 1)" },
        if report.matches { "" } else { " MISMATCH (observational)" },
    );
    output(headline, SignatureOutput { report, n, ky2_exact: ky2, delta_squared_total: delta }, 0)
}

fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                if v.is_object() || (v.is_array() && v.as_array().unwrap().iter().any(|x| x.is_object())) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(v, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(v)));
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                out.push_str(&format!("{pad}-\n"));
                render_text(item, indent + 1, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn execute(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::CheckNet { net } => check_net(net),
        Command::Invariants { source } => invariants(source),
        Command::Hj { n, r } => hj(*n, *r),
        Command::Dedekind { h, k } => dedekind(*h, *k),
        Command::Defect { n, r } => defect(*n, *r),
        Command::Signature { source, n } => signature(source, *n),
        Command::Classify { m, d, cyclotomic } => {
            let cert = classify_with(*m, *d, witness_kind(*cyclotomic))?;
            output(format!("({m}, {d}): {}", scalar(&json!(cert.verdict))), cert, 0)
        }
        Command::Table { m_max, d_max, cyclotomic } => {
            let certs = table(*m_max, *d_max, witness_kind(*cyclotomic))?;
            let mut headline = String::from("m  d  verdict");
            for c in &certs {
                headline.push_str(&format!("\n{:<2} {:<2} {}", c.m, c.d, scalar(&json!(c.verdict))));
            }
            output(headline, certs, 0)
        }
    }
}

/// Parses `argv` (program name first), runs the command, prints the
/// result, and returns the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match execute(&cli.command) {
        Ok(out) => out,
        Err(failure) => {
            let message = match &failure {
                Failure::Violation(m) | Failure::Usage(m) => m,
            };
            eprintln!("error: {message}");
            return failure.code();
        }
    };
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&result.body).expect("values serialize") + "\n",
        Format::Text if matches!(cli.command, Command::Table { .. }) => result.headline + "\n",
        Format::Text => {
            let mut text = result.headline + "\n";
            render_text(&result.body, 1, &mut text);
            text
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{rendered}"),
    }
    result.code
}
