//! Command-line front end: argument parsing, command dispatch, text and JSON
//! rendering. All output is deterministic — identical inputs produce
//! byte-identical bytes on stdout.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::betti::{
    self, counting_series, poincare_from_series, poincare_interpolated, BettiResult, Method,
};
use crate::error::{Error, Result};
use crate::hn::{bracket_type, coarsening_euler_sum, hn_codim, HnContext};
use crate::input::InputDocument;
use crate::presets::PresetSpec;
use crate::quiver::{DimVector, Quiver, StabilityData};
use crate::ratfun::RatFun;
use crate::RatFunQ;

/// Environment variable that deliberately corrupts the recursion route of
/// `check`, as a negative control for the agreement tests.
pub const CHECK_CORRUPT_ENV: &str = "QUIVERMOD_CHECK_CORRUPT";

#[derive(Parser, Debug)]
#[command(
    name = "quivermod",
    about = "Betti numbers and point counts of semistable quiver moduli",
    version
)]
pub struct Cli {
    /// Input document (JSON: vertices, arrows, theta, d)
    #[arg(long, global = true, conflicts_with = "preset")]
    pub input: Option<PathBuf>,

    /// Built-in family, e.g. `kronecker:n=3,a=1,b=1`
    #[arg(long, global = true)]
    pub preset: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Engine route for the counting series
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Tm)]
    pub method: MethodArg,

    /// Nonzero exit status on degraded results (e.g. non-coprime input)
    #[arg(long, global = true)]
    pub strict: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Transfer-matrix corner inversion
    Tm,
    /// Stratification recursion
    Recursion,
    /// Brute-force resolved sum (exponential; small instances only)
    Oracle,
    /// Numeric evaluation plus interpolation, verified against extra samples
    Interp,
}

impl MethodArg {
    fn to_method(self) -> Method {
        match self {
            MethodArg::Tm => Method::TransferMatrix,
            MethodArg::Recursion => Method::Recursion,
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Interp => Method::Interpolation,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Poincare polynomial, Betti numbers and Euler characteristic
    Betti {
        /// Run every engine route and require exact agreement
        #[arg(long)]
        check: bool,
        /// Additionally print the polynomial in q = v^2
        #[arg(long)]
        q_form: bool,
    },
    /// Decide whether d is a semistable dimension type
    Semistable,
    /// All HN strata of the representation space with codimensions
    Strata,
    /// Run the internal invariant suite on this instance
    Check,
}

/// Parses arguments, runs the command, prints to stdout/stderr, and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own help/version/error text
            return e.print().map(|_| e.exit_code()).unwrap_or(2);
        }
    };
    match dispatch(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn load_instance(cli: &Cli) -> Result<(Quiver, StabilityData, DimVector)> {
    match (&cli.input, &cli.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidParameter(format!("cannot read {}: {e}", path.display()))
            })?;
            InputDocument::parse(&text)?.build()
        }
        (None, Some(spec)) => PresetSpec::parse(spec)?.build(),
        (None, None) => Err(Error::InvalidParameter(
            "no instance given: pass --input FILE or --preset SPEC".into(),
        )),
        (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
    }
}

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
    let (quiver, stab, d) = load_instance(cli)?;
    match cli.command {
        Command::Betti { check, q_form } => {
            cmd_betti(cli, &quiver, &stab, &d, check, q_form)
        }
        Command::Semistable => cmd_semistable(cli, &quiver, &stab, &d),
        Command::Strata => cmd_strata(cli, &quiver, &stab, &d),
        Command::Check => cmd_check(cli, &quiver, &stab, &d),
    }
}

/// Stable machine-readable schema for `betti`.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BettiOutput {
    pub coprime: bool,
    pub empty: bool,
    pub moduli_dimension: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poincare_v: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler: Option<i64>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counting_series: Option<String>,
}

fn betti_by_method(
    quiver: &Quiver,
    stab: &StabilityData,
    d: &DimVector,
    method: Method,
) -> Result<BettiResult> {
    if method == Method::Interpolation {
        poincare_interpolated(quiver, stab, d)
    } else {
        let ev = counting_series(quiver, stab, d, method)?;
        poincare_from_series(quiver, stab, d, &ev)
    }
}

fn cmd_betti(
    cli: &Cli,
    quiver: &Quiver,
    stab: &StabilityData,
    d: &DimVector,
    check: bool,
    q_form: bool,
) -> Result<(String, i32)> {
    let coprime = stab.is_coprime(d)?;
    let mut warnings = Vec::new();

    if !coprime {
        let gcd = num::integer::gcd(stab.weight_of(d).abs(), d.total());
        warnings.push(format!(
            "not coprime (gcd(|Theta(d)|, dim d) = {gcd}); Betti numbers unavailable, reporting the counting series"
        ));
        let method = match cli.method.to_method() {
            Method::Interpolation => Method::TransferMatrix,
            m => m,
        };
        let ev = counting_series(quiver, stab, d, method)?;
        if check {
            check_series_routes(quiver, stab, d, &ev, &mut warnings)?;
        }
        let out = BettiOutput {
            coprime: false,
            empty: ev.is_zero(),
            moduli_dimension: quiver.moduli_dimension(d)?,
            poincare_v: None,
            betti: None,
            euler: None,
            warnings,
            counting_series: Some(ev.to_string()),
        };
        let code = if cli.strict { 1 } else { 0 };
        return Ok((render_betti(cli, &out, None, q_form), code));
    }

    let result = betti_by_method(quiver, stab, d, cli.method.to_method())?;
    if check {
        let ev = counting_series(quiver, stab, d, Method::TransferMatrix)?;
        check_series_routes(quiver, stab, d, &ev, &mut warnings)?;
        let interp = poincare_interpolated(quiver, stab, d)?;
        if interp != result {
            return Err(Error::Internal(
                "interpolated route disagrees with the requested route".into(),
            ));
        }
    }
    let out = BettiOutput {
        coprime: true,
        empty: result.empty,
        moduli_dimension: result.moduli_dim,
        poincare_v: Some(result.betti.clone()),
        betti: Some(result.betti.clone()),
        euler: Some(result.euler),
        warnings,
        counting_series: None,
    };
    Ok((render_betti(cli, &out, Some(&result), q_form), 0))
}

/// Requires the recursion (and, within budget, the brute-force oracle) to
/// reproduce `ev`.
fn check_series_routes(
    quiver: &Quiver,
    stab: &StabilityData,
    d: &DimVector,
    ev: &RatFunQ,
    warnings: &mut Vec<String>,
) -> Result<()> {
    let rec = HnContext::new(quiver, stab).ev_semistable(d)?;
    if rec != *ev {
        return Err(Error::Internal(
            "recursion route disagrees with the transfer matrix".into(),
        ));
    }
    match betti::resolved_sum(quiver, stab, d, betti::DEFAULT_ORACLE_BUDGET) {
        Ok(oracle) => {
            if oracle != *ev {
                return Err(Error::Internal(
                    "brute-force route disagrees with the transfer matrix".into(),
                ));
            }
        }
        Err(Error::BudgetExceeded(_)) => {
            warnings.push("brute-force route skipped (instance too large)".into());
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn render_betti(
    cli: &Cli,
    out: &BettiOutput,
    result: Option<&BettiResult>,
    q_form: bool,
) -> String {
    if cli.format == Format::Json {
        return to_json(out);
    }
    let mut s = String::new();
    for w in &out.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    let _ = writeln!(s, "moduli dimension: {}", out.moduli_dimension);
    let _ = writeln!(s, "coprime: {}", out.coprime);
    match result {
        Some(r) => {
            if r.empty {
                let _ = writeln!(s, "empty: true");
            }
            let _ = writeln!(s, "poincare: {}", r.poincare_v_string());
            if q_form {
                let _ = writeln!(s, "poincare (q): {}", r.poincare_q);
            }
            let _ = writeln!(s, "betti: {:?}", r.betti);
            let _ = writeln!(s, "euler: {}", r.euler);
        }
        None => {
            if out.empty {
                let _ = writeln!(s, "empty: true");
            }
            let _ = writeln!(
                s,
                "counting series: {}",
                out.counting_series.as_deref().unwrap_or("0")
            );
        }
    }
    s
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SemistableOutput {
    pub semistable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<u32>>>,
    pub warnings: Vec<String>,
}

fn cmd_semistable(
    cli: &Cli,
    quiver: &Quiver,
    stab: &StabilityData,
    d: &DimVector,
) -> Result<(String, i32)> {
    let ctx = HnContext::new(quiver, stab);
    let semistable = ctx.is_semistable(d)?;
    let witness = if semistable {
        None
    } else {
        ctx.destabilizing_type(d)?
            .map(|parts| parts.iter().map(|p| p.entries().to_vec()).collect())
    };
    let out = SemistableOutput {
        semistable,
        witness,
        warnings: Vec::new(),
    };
    let text = if cli.format == Format::Json {
        to_json(&out)
    } else {
        let mut s = format!("semistable: {semistable}\n");
        if let Some(parts) = ctx.destabilizing_type(d)?.filter(|_| !semistable) {
            let rendered: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, "witness: {}", rendered.join(" "));
        }
        s
    };
    Ok((text, 0))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StratumRow {
    pub codim: u64,
    pub parts: Vec<Vec<u32>>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StrataOutput {
    pub strata: Vec<StratumRow>,
    pub warnings: Vec<String>,
}

fn cmd_strata(
    cli: &Cli,
    quiver: &Quiver,
    stab: &StabilityData,
    d: &DimVector,
) -> Result<(String, i32)> {
    let ctx = HnContext::new(quiver, stab);
    let mut rows: Vec<(u64, Vec<DimVector>)> = ctx
        .enumerate_hn_types(d, false)?
        .into_iter()
        .map(|t| (hn_codim(quiver, &t), t.parts().to_vec()))
        .collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let out = StrataOutput {
        strata: rows
            .iter()
            .map(|(c, parts)| StratumRow {
                codim: *c,
                parts: parts.iter().map(|p| p.entries().to_vec()).collect(),
            })
            .collect(),
        warnings: Vec::new(),
    };
    let text = if cli.format == Format::Json {
        to_json(&out)
    } else {
        let mut s = format!("strata: {}\n", rows.len());
        for (c, parts) in &rows {
            let rendered: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, "codim {c}: {}", rendered.join(" "));
        }
        s
    };
    Ok((text, 0))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckOutput {
    pub checks: Vec<CheckRow>,
    pub passed: bool,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckRow {
    pub name: String,
    pub status: String,
}

fn cmd_check(
    cli: &Cli,
    quiver: &Quiver,
    stab: &StabilityData,
    d: &DimVector,
) -> Result<(String, i32)> {
    let corrupt = std::env::var_os(CHECK_CORRUPT_ENV).is_some();
    let mut rows = Vec::new();
    let mut push = |name: &str, ok: Option<bool>| {
        rows.push(CheckRow {
            name: name.to_string(),
            status: match ok {
                Some(true) => "pass".into(),
                Some(false) => "FAIL".into(),
                None => "skipped".into(),
            },
        });
    };

    let ctx = HnContext::new(quiver, stab);
    let tm = betti::ev_semistable_tm(quiver, stab, d)?;
    let mut rec = ctx.ev_semistable(d)?;
    if corrupt {
        rec = &rec + &RatFun::one();
    }

    // route agreement: recursion vs transfer matrix vs brute force
    push("triple-oracle (recursion vs transfer matrix)", Some(rec == tm));
    match betti::resolved_sum(quiver, stab, d, betti::DEFAULT_ORACLE_BUDGET) {
        Ok(oracle) => push("triple-oracle (brute force)", Some(oracle == tm)),
        Err(Error::BudgetExceeded(_)) => push("triple-oracle (brute force)", None),
        Err(e) => return Err(e),
    }

    // partition identity: #R_d/#G_d as a sum over all HN types
    let box_size: u64 = d
        .entries()
        .iter()
        .map(|&x| x as u64 + 1)
        .product();
    if box_size <= 100 {
        let mut sum = RatFun::zero();
        for t in ctx.enumerate_hn_types(d, false)? {
            let mut term = RatFun::q_power(-bracket_type(quiver, t.parts()));
            for p in t.parts() {
                let mut ev = ctx.ev_semistable(p)?;
                if corrupt && p == d {
                    ev = &ev + &RatFun::one();
                }
                term = &term * &ev;
            }
            sum = &sum + &term;
        }
        push(
            "partition identity",
            Some(sum == quiver.count_r_over_g(d)),
        );
    } else {
        push("partition identity", None);
    }

    // alternating coarsening sums over random valid tuples
    let mut rng = ChaCha8Rng::seed_from_u64(0x71_u64);
    let mut tested = 0usize;
    let mut ossa_ok = true;
    let mut attempts = 0usize;
    while tested < 50 && attempts < 20_000 {
        attempts += 1;
        let len = rng.gen_range(1..=4usize);
        let parts: Vec<DimVector> = (0..len)
            .map(|_| {
                DimVector::new(
                    d.entries()
                        .iter()
                        .map(|&hi| rng.gen_range(0..=hi.min(2)))
                        .collect(),
                )
            })
            .collect();
        if parts.iter().any(|p| p.is_zero()) {
            continue;
        }
        match coarsening_euler_sum(stab, &parts) {
            Ok(v) => {
                tested += 1;
                let expect = if parts.len() == 1 { 1 } else { 0 };
                if v != expect {
                    ossa_ok = false;
                }
            }
            Err(Error::TupleBelowBaseline) | Err(Error::ZeroDimVector) => continue,
            Err(e) => return Err(e),
        }
    }
    push(
        "coarsening alternating sums",
        if tested > 0 { Some(ossa_ok) } else { None },
    );

    // structural properties of the Poincare polynomial
    if stab.is_coprime(d)? {
        let r = poincare_from_series(quiver, stab, d, &tm)?;
        if r.empty {
            push("structural Poincare properties", None);
        } else {
            let coeffs = r.poincare_q.coeffs();
            let palindromic = coeffs.iter().eq(coeffs.iter().rev());
            let top_ok = r.poincare_q.degree() == Some(r.moduli_dim.max(0) as usize);
            let base_ok = coeffs.first().is_some_and(|c| *c == 1.into());
            push(
                "structural Poincare properties",
                Some(palindromic && top_ok && base_ok),
            );
        }
    } else {
        push("structural Poincare properties", None);
    }

    let passed = rows.iter().all(|r| r.status != "FAIL");
    let warnings = Vec::new();
    let out = CheckOutput {
        checks: rows,
        passed,
        warnings,
    };
    let text = if cli.format == Format::Json {
        to_json(&out)
    } else {
        let mut s = String::new();
        for r in &out.checks {
            let _ = writeln!(s, "check {}: {}", r.name, r.status);
        }
        let _ = writeln!(s, "result: {}", if passed { "pass" } else { "FAIL" });
        s
    };
    Ok((text, if passed { 0 } else { 1 }))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema_round_trips() {
        let out = BettiOutput {
            coprime: true,
            empty: false,
            moduli_dimension: 2,
            poincare_v: Some(vec![1, 0, 1, 0, 1]),
            betti: Some(vec![1, 0, 1, 0, 1]),
            euler: Some(3),
            warnings: vec![],
            counting_series: None,
        };
        let text = to_json(&out);
        let back: BettiOutput = serde_json::from_str(&text).unwrap();
        assert_eq!(back, out);
        assert!(!text.contains("counting_series"));

        let strata = StrataOutput {
            strata: vec![StratumRow {
                codim: 0,
                parts: vec![vec![1, 1]],
            }],
            warnings: vec![],
        };
        let back: StrataOutput = serde_json::from_str(&to_json(&strata)).unwrap();
        assert_eq!(back, strata);
    }

    #[test]
    fn method_mapping() {
        assert_eq!(MethodArg::Tm.to_method(), Method::TransferMatrix);
        assert_eq!(MethodArg::Interp.to_method(), Method::Interpolation);
    }
}
