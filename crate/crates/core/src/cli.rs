//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error (such as `p | n`), 2 on
//! malformed input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::arith::{is_prime, prime_divisors};
use crate::carlitz::{carlitz_action, euler_phi};
use crate::error::Error;
use crate::ffpoly::{factor, parse_elem, parse_poly, FqContext};
use crate::genus::{genus_report, genus_report_abstract};
use crate::oracle::{run_all, OracleConfig};
use crate::ramify::{build_profile, InfinitePrime, RadicalExtension, RamificationProfile};

#[derive(Parser, Debug)]
#[command(
    name = "ffgenus",
    version,
    about = "Genus fields of radical extensions of F_q(T)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Factor a polynomial into monic irreducibles.
    Factor(PolyArgs),
    /// Euler function Φ(M) = |(F_q[T]/M)^*|.
    Phi(PolyArgs),
    /// The Carlitz action ρ_M.
    Carlitz(PolyArgs),
    /// Ramification profile of a radical extension.
    Analyze(RadicalArgs),
    /// Genus field report.
    Genus(GenusArgs),
    /// Run the brute-force oracle sweeps.
    OracleVerify(OracleArgs),
    /// Oracle commands.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleAction {
    /// Same as `oracle-verify`.
    Verify(OracleArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    /// `p`, `p^m` or a prime power `q`.
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub poly: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct RadicalArgs {
    #[arg(long)]
    pub field: String,
    /// Degree `n` of the radical.
    #[arg(long)]
    pub n: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    /// The polynomial `D`.
    #[arg(long)]
    pub poly: String,
    /// Degree `s` of the constant extension `F_{q^s}`.
    #[arg(long, default_value_t = 1)]
    pub base_constants: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct GenusArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long, required_unless_present = "profile", conflicts_with = "profile")]
    pub n: Option<u64>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "profile")]
    pub gamma: Option<String>,
    #[arg(long, required_unless_present = "profile")]
    pub poly: Option<String>,
    #[arg(long, conflicts_with = "profile")]
    pub base_constants: Option<u32>,
    /// Abstract ramification profile as a JSON file.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, default_value_t = OracleConfig::default().seed)]
    pub seed: u64,
    #[arg(long, default_value_t = OracleConfig::default().max_q)]
    pub max_q: u64,
    #[arg(long, default_value_t = OracleConfig::default().max_deg)]
    pub max_deg: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Failure of a CLI invocation.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

/// Parses `p`, `p^m`, or a prime power `q`.
pub fn parse_field(spec: &str) -> Result<FqContext, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "invalid field '{spec}': expected p, p^m or a prime power"
        ))
    };
    let (p, m) = match spec.split_once('^') {
        Some((p, m)) => (
            p.trim().parse::<u64>().map_err(|_| bad())?,
            m.trim().parse::<u32>().map_err(|_| bad())?,
        ),
        None => {
            let q = spec.trim().parse::<u64>().map_err(|_| bad())?;
            let ps = prime_divisors(q);
            if ps.len() != 1 {
                return Err(bad());
            }
            let mut m = 0;
            let mut r = q;
            while r > 1 {
                r /= ps[0];
                m += 1;
            }
            (ps[0], m)
        }
    };
    if !is_prime(p) || m == 0 {
        return Err(bad());
    }
    Ok(FqContext::new(p, m)?)
}

fn radical(
    field: &str,
    n: u64,
    gamma: &str,
    poly: &str,
    s: u32,
) -> Result<RadicalExtension, CliError> {
    let ctx = parse_field(field)?;
    let gamma = parse_elem(&ctx, gamma)?;
    let d = parse_poly(&ctx, poly)?;
    Ok(RadicalExtension::new(&ctx, n, gamma, &d, s)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    finite: Vec<PlaceSpec>,
    #[serde(default)]
    infinity: Vec<InfinitySpec>,
    geometric: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaceSpec {
    poly: String,
    exponents: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InfinitySpec {
    e: u64,
    t: u64,
}

/// Reads an abstract profile:
/// `{"finite": [{"poly": .., "exponents": [..]}], "infinity": [{"e": .., "t": ..}], "geometric": ..}`.
pub fn parse_profile(ctx: &FqContext, text: &str) -> Result<RamificationProfile, CliError> {
    let file: ProfileFile =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid profile: {e}")))?;
    let finite = file
        .finite
        .into_iter()
        .map(|p| Ok((parse_poly(ctx, &p.poly)?, p.exponents)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let infinity = file
        .infinity
        .into_iter()
        .map(|x| InfinitePrime { e: x.e, t: x.t })
        .collect();
    Ok(RamificationProfile::new(
        ctx,
        finite,
        infinity,
        file.geometric,
    )?)
}

fn json_line(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn analyze_text(k: &RadicalExtension, pr: &RamificationProfile) -> String {
    let ctx = k.ctx();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "input: q = {}, n = {}, gamma = {}, D = {}, s = {}",
        ctx.q(),
        k.n(),
        ctx.fmt_elem(k.gamma()),
        k.d(),
        k.s()
    );
    let _ = writeln!(out, "place\tdeg\talpha\te\tu");
    for (pl, a) in &k.factors().factors {
        let e = k.n() / crate::arith::gcd(*a as u64, k.n());
        let u = pr.finite.iter().find(|r| r.place == *pl).map_or(0, |r| r.u);
        let _ = writeln!(out, "{pl}\t{}\t{a}\t{e}\t{u}", pl.deg());
    }
    let ts: Vec<String> = pr.infinity.iter().map(|x| x.t.to_string()).collect();
    let _ = writeln!(out, "infinity: e = {}, t = [{}]", pr.e_inf, ts.join(", "));
    let _ = writeln!(out, "t_0 = {}", pr.t0);
    let _ = writeln!(out, "geometric = {}", pr.geometric);
    out
}

fn analyze_json(k: &RadicalExtension, pr: &RamificationProfile) -> String {
    let places: Vec<_> = k
        .factors()
        .factors
        .iter()
        .map(|(pl, a)| {
            let e = k.n() / crate::arith::gcd(*a as u64, k.n());
            let u = pr.finite.iter().find(|r| r.place == *pl).map_or(0, |r| r.u);
            json!({"place": pl.to_string(), "deg": pl.deg(), "alpha": a, "e": e, "u": u})
        })
        .collect();
    let inf: Vec<_> = pr
        .infinity
        .iter()
        .map(|x| json!({"e": x.e, "t": x.t}))
        .collect();
    json_line(json!({
        "q": k.ctx().q(),
        "n": k.n(),
        "gamma": k.ctx().fmt_elem(k.gamma()),
        "poly": k.d().to_string(),
        "s": k.s(),
        "finite": places,
        "infinity": inf,
        "e_inf": pr.e_inf,
        "t0": pr.t0,
        "geometric": pr.geometric,
    }))
}

fn oracle_verify(a: &OracleArgs) -> Result<String, CliError> {
    let cfg = OracleConfig {
        max_q: a.max_q,
        max_deg: a.max_deg,
        seed: a.seed,
    };
    let suites = run_all(&cfg)?;
    let failed = suites.iter().any(|s| !s.passed());
    let out = match a.format {
        Format::Json => json_line(json!(suites
            .iter()
            .map(|s| json!({"suite": s.name, "checked": s.checked, "mismatches": s.mismatches}))
            .collect::<Vec<_>>())),
        Format::Text => {
            let mut out = String::new();
            for s in &suites {
                let tag = if s.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "{tag} {} ({} checks, {} mismatches)",
                    s.name,
                    s.checked,
                    s.mismatches.len()
                );
                for m in s.mismatches.iter().take(5) {
                    let _ = writeln!(out, "  {m}");
                }
            }
            out
        }
    };
    if failed {
        Err(CliError::Domain(out))
    } else {
        Ok(out)
    }
}

/// Executes a parsed command and returns its standard output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Factor(a) => {
            let ctx = parse_field(&a.field)?;
            let f = factor(&parse_poly(&ctx, &a.poly)?)?;
            Ok(match a.format {
                Format::Text => format!("{f}\n"),
                Format::Json => json_line(json!({
                    "unit": ctx.fmt_elem(f.unit),
                    "factors": f.factors.iter()
                        .map(|(p, k)| json!({"poly": p.to_string(), "multiplicity": k}))
                        .collect::<Vec<_>>(),
                })),
            })
        }
        Command::Phi(a) => {
            let ctx = parse_field(&a.field)?;
            let phi = euler_phi(&parse_poly(&ctx, &a.poly)?)?;
            Ok(match a.format {
                Format::Text => format!("{phi}\n"),
                Format::Json => json_line(json!({"phi": phi.to_string()})),
            })
        }
        Command::Carlitz(a) => {
            let ctx = parse_field(&a.field)?;
            let rho = carlitz_action(&parse_poly(&ctx, &a.poly)?)?;
            Ok(match a.format {
                Format::Text => format!("{rho}\n"),
                Format::Json => json_line(json!({"rho": rho.to_string()})),
            })
        }
        Command::Analyze(a) => {
            let k = radical(&a.field, a.n, &a.gamma, &a.poly, a.base_constants)?;
            let pr = build_profile(&k)?;
            Ok(match a.format {
                Format::Text => analyze_text(&k, &pr),
                Format::Json => analyze_json(&k, &pr),
            })
        }
        Command::Genus(a) => {
            let report = match &a.profile {
                Some(path) => {
                    let ctx = parse_field(&a.field)?;
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        CliError::Usage(format!("cannot read {}: {e}", path.display()))
                    })?;
                    genus_report_abstract(&parse_profile(&ctx, &text)?)?
                }
                None => {
                    let (Some(n), Some(g), Some(p)) = (a.n, &a.gamma, &a.poly) else {
                        return Err(CliError::Usage(
                            "genus needs --n, --gamma and --poly".into(),
                        ));
                    };
                    genus_report(&radical(&a.field, n, g, p, a.base_constants.unwrap_or(1))?)?
                }
            };
            Ok(match a.format {
                Format::Text => report.render_text(),
                Format::Json => report.to_json(),
            })
        }
        Command::OracleVerify(a)
        | Command::Oracle {
            action: OracleAction::Verify(a),
        } => oracle_verify(a),
    }
}

/// Parses `argv` and runs it. Help and version requests are returned as
/// output.
pub fn run<I, T>(argv: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                Ok(e.to_string())
            }
            _ => Err(CliError::Usage(e.to_string())),
        },
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main() -> i32 {
    match run(std::env::args_os()) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            let msg = e.message().trim_end();
            match e {
                CliError::Domain(_) if msg.contains('\n') => println!("{msg}"),
                _ => eprintln!("error: {}", msg.lines().next().unwrap_or("")),
            }
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specs() {
        assert_eq!(parse_field("3").unwrap().q(), 3);
        assert_eq!(parse_field("9").unwrap().m(), 2);
        assert_eq!(parse_field("5^2").unwrap().q(), 25);
        for bad in ["6", "1", "x", "4^0", "9^2"] {
            assert_eq!(parse_field(bad).unwrap_err().exit_code(), 2, "{bad}");
        }
    }

    #[test]
    fn exit_codes() {
        let ok = run(["ffgenus", "phi", "--field", "3", "--poly", "T^2"]).unwrap();
        assert_eq!(ok, "6\n");
        let domain = run([
            "ffgenus", "genus", "--field", "3", "--n", "3", "--gamma", "1", "--poly", "T",
        ]);
        assert_eq!(domain.unwrap_err().exit_code(), 1);
        let usage = run(["ffgenus", "phi", "--field", "3", "--poly", "T^^2"]);
        assert_eq!(usage.unwrap_err().exit_code(), 2);
        let flag = run(["ffgenus", "phi", "--field", "3", "--poly", "T", "--bogus"]);
        assert_eq!(flag.unwrap_err().exit_code(), 2);
    }
}
