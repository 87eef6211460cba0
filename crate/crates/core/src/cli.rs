//! Command-line front end.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 usage error or
//! malformed input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{self, BoundError};
use crate::codewords;
use crate::ecc_sim::{run_campaign, NoiseModel, Simulator};
use crate::family::{self, build_code, check_family_member, CodeSpec, FamilyError};
use crate::oracle::{self, MAX_ORACLE_QUBITS};
use crate::pauli::{Letter, PauliOperator};
use crate::stabilizer::{Correctability, StabilizerGroup};
use crate::tables;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest code whose tables are printed in text mode.
const TEXT_TABLE_MAX_N: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "stabforge", version, about = "Build and verify stabilizer quantum error-correcting codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the 2^j-qubit member of the one-error family.
    Family(FamilyArgs),
    /// Check a code file algebraically and, optionally, with dense vectors.
    Verify(VerifyArgs),
    /// Largest k allowed by the quantum Hamming bound.
    Bound(BoundArgs),
    /// Bounds for one-error codes with degeneracy conditions.
    DegenerateBound(DegenerateArgs),
    /// Syndrome of an error operator.
    Syndrome(SyndromeArgs),
    /// Run a seeded error-correction campaign.
    Simulate(SimulateArgs),
    /// Print the reference tables of the 8-qubit code.
    Tables(JsonFlag),
}

#[derive(Args, Debug)]
pub struct JsonFlag {
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Codewords,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(family::MIN_J as i64..=family::MAX_J as i64))]
    pub j: u32,
    #[arg(long, value_enum)]
    pub emit: Option<Emit>,
    /// Write the code file here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub code: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    /// Also run the dense state-vector checks (n <= 12).
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    /// Also print the asymptotic rate limit at t/n = RATE.
    #[arg(long)]
    pub rate: Option<f64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct DegenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SyndromeArgs {
    /// Error as a full string (`+IIIIIYII`) or sparse factors (`Y6`, `X1Z2`).
    pub error: String,
    #[arg(long, conflicts_with = "j", required_unless_present = "j")]
    pub code: Option<PathBuf>,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    pub code: PathBuf,
    /// exhaustive | pauli:STR | matrix:a,b,c,d@i | random-matrix | depolarizing:p
    #[arg(long)]
    pub model: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, env = "STABFORGE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    #[arg(long)]
    pub json: bool,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification,
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Family(a) => cmd_family(a, out),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Bound(a) => cmd_bound(a, out),
        Command::DegenerateBound(a) => cmd_degenerate(a, out),
        Command::Syndrome(a) => cmd_syndrome(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Tables(a) => cmd_tables(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification) => EXIT_FAIL,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> CmdResult {
    out.write_all(text.as_bytes()).map_err(usage)
}

fn emit_json(out: &mut dyn Write, value: &Value) -> CmdResult {
    let mut text = serde_json::to_string_pretty(value).expect("json value serializes");
    text.push('\n');
    emit(out, &text)
}

fn read_code(path: &PathBuf) -> Result<CodeSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    CodeSpec::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn code_value(code: &CodeSpec) -> Value {
    serde_json::from_str(&code.to_json()).expect("code file is valid json")
}

fn cmd_family(a: &FamilyArgs, out: &mut dyn Write) -> CmdResult {
    let j = a.j as usize;
    let code = build_code(j).map_err(usage)?;
    if a.emit == Some(Emit::Codewords) && code.n > MAX_ORACLE_QUBITS {
        return Err(usage(format!(
            "--emit codewords needs n <= {MAX_ORACLE_QUBITS}, this code has n = {}",
            code.n
        )));
    }
    let check = check_family_member(j).map_err(usage)?;
    if let Some(path) = &a.out {
        fs::write(path, code.to_json() + "\n").map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }

    if a.json {
        let mut doc = json!({ "code": code_value(&code), "check": check, "passed": check.passed() });
        if a.emit == Some(Emit::Codewords) {
            let words = codewords::basis(&code.stabilizer_group().map_err(usage)?, &code.seed_generators).map_err(usage)?;
            let canonical: Vec<_> = words.iter().map(|w| w.canonicalized()).collect();
            doc["codewords"] = serde_json::to_value(canonical).expect("states serialize");
        }
        emit_json(out, &doc)?;
    } else {
        let mut text = format!(
            "{} code j = {j}: n = {}, k = {}, a = {}\n",
            code.construction,
            code.n,
            code.k,
            code.a()
        );
        text += &format!("checks: {}\n", if check.passed() { "pass" } else { "FAIL" });
        if code.n <= TEXT_TABLE_MAX_N {
            text += "\n";
            text += &tables::syndrome_table(&code).map_err(usage)?;
            text += "\n";
            text += &tables::generator_table(&code);
        }
        if a.emit == Some(Emit::Codewords) {
            text += "\n";
            text += &tables::codeword_table(&code).map_err(usage)?;
        }
        emit(out, &text)?;
    }
    if check.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let code = read_code(&a.code)?;
    let mut lines = vec![format!("code: n = {}, k = {}, a = {}", code.n, code.k, code.a())];
    let mut doc = json!({ "n": code.n, "k": code.k, "a": code.a(), "t": a.t });
    let mut passed = true;

    let reduced = match StabilizerGroup::validate_reducing(code.n, code.generators.clone()) {
        Ok((group, warnings)) => {
            for w in &warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            doc["warnings"] = json!(warnings.iter().map(ToString::to_string).collect::<Vec<_>>());
            lines.push(format!("generators: pass ({} independent)", group.a()));
            doc["generators"] = json!({ "passed": true, "independent": group.a() });
            Some(group)
        }
        Err(e) => {
            passed = false;
            lines.push(format!("generators: FAIL, {e}"));
            doc["generators"] = json!({ "passed": false, "error": e.to_string() });
            None
        }
    };

    if let Some(group) = &reduced {
        let expected_k = code.n - group.a();
        if expected_k != code.k {
            passed = false;
            lines.push(format!("logical qubits: FAIL, file says k = {} but n - a = {expected_k}", code.k));
            doc["k_consistent"] = json!(false);
        } else {
            doc["k_consistent"] = json!(true);
        }

        match group.check_correctability(a.t) {
            Correctability::Pass { errors, syndrome_space } => {
                lines.push(format!(
                    "correctability (t = {}): pass ({errors} errors, {syndrome_space} syndromes)",
                    a.t
                ));
                doc["correctability"] = json!({ "passed": true, "errors": errors });
            }
            Correctability::Collision { first, second, syndrome } => {
                passed = false;
                lines.push(format!(
                    "correctability (t = {}): FAIL, {} and {} share syndrome {syndrome}",
                    a.t,
                    first.to_sparse_text(),
                    second.to_sparse_text()
                ));
                doc["correctability"] = json!({
                    "passed": false,
                    "first": first.to_text(),
                    "second": second.to_text(),
                    "syndrome": syndrome.to_string(),
                });
            }
        }

        let qhb = bounds::qhb_max_k(code.n, a.t);
        lines.push(format!("bound: k = {} against quantum Hamming limit {qhb}", code.k));
        doc["qhb_max_k"] = json!(qhb);

        if a.oracle {
            if code.n > MAX_ORACLE_QUBITS {
                lines.push(format!("oracle: skipped, n > {MAX_ORACLE_QUBITS}"));
                doc["oracle"] = Value::Null;
            } else {
                let reduced_code = CodeSpec {
                    generators: group.generators().to_vec(),
                    ..code.clone()
                };
                match oracle::verify_code(&reduced_code, a.t) {
                    Ok(report) => {
                        if report.passed() {
                            lines.push(format!(
                                "oracle: pass ({} images, rank {})",
                                report.error_images,
                                report.rank.unwrap_or(0)
                            ));
                        } else {
                            passed = false;
                            lines.push(format!(
                                "oracle: FAIL, {}",
                                serde_json::to_string(&report.failure).expect("failure serializes")
                            ));
                        }
                        doc["oracle"] = serde_json::to_value(&report).expect("report serializes");
                    }
                    Err(e) => {
                        passed = false;
                        lines.push(format!("oracle: FAIL, {e}"));
                        doc["oracle"] = json!({ "error": e.to_string() });
                    }
                }
            }
        }
    }

    doc["passed"] = json!(passed);
    if a.json {
        emit_json(out, &doc)?;
    } else {
        lines.push(format!("result: {}", if passed { "PASS" } else { "FAIL" }));
        emit(out, &(lines.join("\n") + "\n"))?;
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_bound(a: &BoundArgs, out: &mut dyn Write) -> CmdResult {
    let rate = a.rate.map(bounds::rate_bound).transpose().map_err(|e: BoundError| usage(e))?;
    if a.json {
        let mut doc = json!({ "t": a.t, "rows": bounds::qhb_table(a.max_n, a.t) });
        if let (Some(x), Some(r)) = (a.rate, rate) {
            doc["rate"] = json!({ "x": x, "bound": r });
        }
        emit_json(out, &doc)
    } else {
        let mut text = tables::bound_table(1, a.max_n, a.t);
        if let (Some(x), Some(r)) = (a.rate, rate) {
            text += &format!("asymptotic rate at t/n = {x}: {r:.6}\n");
        }
        emit(out, &text)
    }
}

fn cmd_degenerate(a: &DegenerateArgs, out: &mut dyn Write) -> CmdResult {
    let rows = bounds::degenerate_table(a.n).map_err(usage)?;
    let verdict = bounds::degenerate_never_beats_qhb(a.n).map_err(usage)?;
    if a.json {
        emit_json(out, &json!({ "rows": rows, "verdict": verdict }))?;
    } else {
        let mut text = format!("Degenerate one-error bound (n = {})\n{:>3}  {:>3}\n", a.n, "l", "k");
        for r in &rows {
            text += &format!("{:>3}  {:>3}\n", r.l, r.max_k);
        }
        text += &format!(
            "largest degenerate k = {} (l = {}), quantum Hamming k = {}: {}\n",
            verdict.degenerate_max_k,
            verdict.witness_l,
            verdict.qhb_max_k,
            if verdict.holds { "no gain from degeneracy" } else { "DEGENERATE CODE EXCEEDS BOUND" }
        );
        emit(out, &text)?;
    }
    if verdict.holds {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

/// Parses a full operator string, or sparse factors like `X1Z2` / `Y6`
/// (1-based qubits, optional leading sign).
pub fn parse_error_operator(s: &str, n: usize) -> Result<PauliOperator, String> {
    let s = s.trim();
    if let Ok(p) = s.parse::<PauliOperator>() {
        if p.n() == n {
            return Ok(p);
        }
        if !s.chars().any(|c| c.is_ascii_digit()) {
            return Err(format!("operator {s:?} has {} qubits, code has {n}", p.n()));
        }
    }
    let (negative, body) = match s.chars().next() {
        Some('+') => (false, &s[1..]),
        Some('-') => (true, &s[1..]),
        _ => (false, s),
    };
    let mut op = PauliOperator::identity(n).map_err(|e| e.to_string())?;
    let mut chars = body.chars().peekable();
    if chars.peek().is_none() {
        return Err("empty operator".to_string());
    }
    while let Some(c) = chars.next() {
        let letter = Letter::from_char(c).ok_or_else(|| format!("unexpected {c:?} in {s:?}"))?;
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let q: usize = digits.parse().map_err(|_| format!("missing qubit index after {c:?} in {s:?}"))?;
        let factor = PauliOperator::single(n, q, letter).map_err(|e| e.to_string())?;
        op = op.multiply(&factor).map_err(|e| e.to_string())?;
    }
    Ok(if negative { -op } else { op })
}

fn cmd_syndrome(a: &SyndromeArgs, out: &mut dyn Write) -> CmdResult {
    let code = match (&a.code, a.j) {
        (Some(path), _) => read_code(path)?,
        (None, Some(j)) => build_code(j).map_err(usage)?,
        (None, None) => return Err(usage("one of --code or --j is required")),
    };
    let group = code.stabilizer_group().map_err(|e: FamilyError| usage(e))?;
    let op = parse_error_operator(&a.error, code.n).map_err(usage)?;
    let syndrome = group.syndrome(&op).map_err(usage)?;
    if a.json {
        emit_json(
            out,
            &json!({ "error": op.to_text(), "weight": op.weight(), "syndrome": syndrome.to_string() }),
        )
    } else {
        emit(out, &format!("f({}) = {syndrome}\n", op.to_sparse_text()))
    }
}

fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write) -> CmdResult {
    let code = read_code(&a.code)?;
    let model: NoiseModel = a.model.parse().map_err(usage)?;
    let sim = Simulator::new(&code, a.t).map_err(usage)?;
    let stats = run_campaign(&sim, &model, a.trials, a.seed).map_err(usage)?;
    if a.json {
        emit(out, &(stats.to_json() + "\n"))
    } else {
        let mut text = format!(
            "model {}: {} trials, seed {}\nsuccesses {} ({:.6}), unmatched {}, annihilated {}\nmin fidelity {:.12}\nsyndromes:\n",
            stats.model,
            stats.trials,
            stats.seed,
            stats.successes,
            stats.success_rate,
            stats.unmatched,
            stats.annihilated,
            stats.min_fidelity
        );
        for (s, count) in &stats.syndrome_histogram {
            text += &format!("  {s}  {count}\n");
        }
        emit(out, &text)
    }
}

fn cmd_tables(a: &JsonFlag, out: &mut dyn Write) -> CmdResult {
    let code = build_code(3).map_err(usage)?;
    if a.json {
        let group = code.stabilizer_group().map_err(usage)?;
        let singles = group.single_qubit_syndromes();
        let syndromes: Vec<Value> = (0..code.n)
            .flat_map(|q| {
                let singles = &singles;
                [Letter::X, Letter::Z, Letter::Y]
                    .into_iter()
                    .map(move |l| json!({ "error": format!("{}{}", l.as_char(), q + 1), "syndrome": singles.of(q, l).to_string() }))
            })
            .collect();
        emit_json(
            out,
            &json!({
                "syndromes": syndromes,
                "generators": code.generators.iter().map(PauliOperator::to_text).collect::<Vec<_>>(),
                "seed_generators": code.seed_paulis().iter().map(PauliOperator::to_text).collect::<Vec<_>>(),
                "bound": bounds::qhb_table(13, 1).into_iter().filter(|r| r.n >= 5).collect::<Vec<_>>(),
            }),
        )
    } else {
        emit(out, &tables::reference_tables().map_err(usage)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("stabforge").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sparse_operator_parsing() {
        assert_eq!(parse_error_operator("Y6", 8).unwrap().to_text(), "+IIIIIYII");
        assert_eq!(parse_error_operator("X1Z2", 3).unwrap().to_text(), "+XZI");
        assert_eq!(parse_error_operator("-Z3", 3).unwrap().to_text(), "-IIZ");
        assert_eq!(parse_error_operator("+XIZ", 3).unwrap().to_text(), "+XIZ");
        assert!(parse_error_operator("Y9", 8).is_err());
        assert!(parse_error_operator("XZ", 3).is_err());
        assert!(parse_error_operator("Q1", 3).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["family", "--j", "2"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["family", "--j", "17"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["nonsense"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
        assert_eq!(run_str(&["family", "--j", "4", "--emit", "codewords"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["degenerate-bound", "--n", "1"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["verify", "/nonexistent/code.json"]).0, EXIT_USAGE);
    }

    #[test]
    fn syndrome_command() {
        let (code, out, _) = run_str(&["syndrome", "--j", "3", "Y6"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "f(+Y6) = 11000\n");
    }
}
