//! The `knapqsec` command line.
//!
//! Exit codes: 0 success or secure, 1 negative result (no solution,
//! insecure parameters), 2 input or usage error, 3 indeterminate audit.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::chor_rivest::{self, ChorRivestPrivateKey, ChorRivestPublicKey};
use crate::exact::{fraction_string, to_f64};
use crate::knapsack::{
    brute_force_solutions_limited, meet_in_the_middle_solutions_limited, KnapsackInstance, Limits,
};
use crate::nt::FactorBudget;
use crate::param_security::{self, Verdict};
use crate::quantum_sim::Simulation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "knapqsec",
    version,
    about = "Knapsack over Z_r: solvers, quantum-attack simulation, Chor-Rivest and parameter audits"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Mitm,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every 0/1 solution of an instance file.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Mitm)]
        method: Method,
    },
    /// Simulate the quantum algorithm on an instance file.
    Qsim {
        instance: PathBuf,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report exact distribution and probabilities instead of sampling.
        #[arg(long)]
        exact: bool,
    },
    /// Generate a Chor-Rivest key pair.
    CrKeygen {
        p: u64,
        h: usize,
        #[arg(long)]
        public: PathBuf,
        #[arg(long)]
        private: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Encrypt a decimal message.
    CrEncrypt {
        #[arg(long)]
        public: PathBuf,
        /// Decimal message, or a path when --from-file is given.
        message: String,
        #[arg(long)]
        from_file: bool,
    },
    /// Decrypt a decimal ciphertext.
    CrDecrypt {
        #[arg(long)]
        public: PathBuf,
        #[arg(long)]
        private: PathBuf,
        /// Decimal ciphertext, or a path when --from-file is given.
        ciphertext: String,
        #[arg(long)]
        from_file: bool,
    },
    /// Audit Chor-Rivest (p, h) or knapsack (n, r) parameters.
    Audit {
        #[arg(long, num_args = 2, value_names = ["P", "H"], conflicts_with = "zr", required_unless_present = "zr")]
        chor_rivest: Option<Vec<u64>>,
        #[arg(long, num_args = 2, value_names = ["N", "R"])]
        zr: Option<Vec<String>>,
        /// Trial-division bound for factoring p^h - 1.
        #[arg(long, default_value_t = FactorBudget::default().trial_limit)]
        trial_limit: u64,
        /// Pollard-rho iteration budget for factoring p^h - 1.
        #[arg(long, default_value_t = FactorBudget::default().rho_iterations)]
        rho_iterations: u64,
    },
}

/// A command failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

struct Output {
    json: Value,
    text: String,
    code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    execute(&cli, &Limits::from_env(), out, err)
}

pub fn execute(cli: &Cli, limits: &Limits, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Solve { instance, method } => solve(instance, *method, limits),
        Command::Qsim {
            instance,
            trials,
            seed,
            exact,
        } => qsim(instance, *trials, *seed, *exact, limits),
        Command::CrKeygen {
            p,
            h,
            public,
            private,
            seed,
        } => cr_keygen(*p, *h, public, private, *seed),
        Command::CrEncrypt {
            public,
            message,
            from_file,
        } => cr_encrypt(public, message, *from_file),
        Command::CrDecrypt {
            public,
            private,
            ciphertext,
            from_file,
        } => cr_decrypt(public, private, ciphertext, *from_file),
        Command::Audit {
            chor_rivest,
            zr,
            trial_limit,
            rho_iterations,
        } => audit(
            chor_rivest.as_deref(),
            zr.as_deref(),
            FactorBudget {
                trial_limit: *trial_limit,
                rho_iterations: *rho_iterations,
            },
        ),
    };
    match result {
        Ok(output) => {
            let _ = match cli.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&output.json).unwrap_or_default()
                ),
                Format::Text => write!(out, "{}", output.text),
            };
            output.code
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<KnapsackInstance, Failure> {
    KnapsackInstance::from_json(&read_text(path)?)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn decimal_arg(value: &str, from_file: bool, what: &str) -> Result<String, Failure> {
    let text = if from_file {
        read_text(Path::new(value))?
    } else {
        value.to_string()
    };
    let text = text.trim();
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(input_error(format!(
            "{what} must be a decimal string, got {text:?}"
        )));
    }
    Ok(text.to_string())
}

fn solve(path: &Path, method: Method, limits: &Limits) -> Result<Output, Failure> {
    let inst = load_instance(path)?;
    let solutions = match method {
        Method::Brute => brute_force_solutions_limited(&inst, limits.brute_force),
        Method::Mitm => meet_in_the_middle_solutions_limited(&inst, limits.meet_in_the_middle),
    }
    .map_err(|e| input_error(e.to_string()))?;

    let listed: Vec<String> = solutions.iter().map(|x| x.to_string()).collect();
    let mut text = String::new();
    if listed.is_empty() {
        text.push_str("no solutions\n");
    } else {
        for s in &listed {
            text.push_str(s);
            text.push('\n');
        }
    }
    text.push_str(&format!("k = {}\n", listed.len()));
    Ok(Output {
        json: json!({
            "method": match method { Method::Brute => "brute", Method::Mitm => "mitm" },
            "k": listed.len(),
            "solutions": listed,
        }),
        text,
        code: if solutions.is_empty() {
            EXIT_NEGATIVE
        } else {
            EXIT_OK
        },
    })
}

fn qsim(
    path: &Path,
    trials: u64,
    seed: u64,
    exact: bool,
    limits: &Limits,
) -> Result<Output, Failure> {
    let inst = load_instance(path)?;
    let sim =
        Simulation::with_limit(&inst, limits.simulation).map_err(|e| input_error(e.to_string()))?;
    let mut text = format!("# seed: {seed}\n");

    if exact {
        let p = sim.success_probability_exact();
        let report = sim.bound_report();
        text.push_str(&format!("k = {}\n", sim.solution_count()));
        text.push_str("A\tN0\tN1\tp1\n");
        for row in sim.distribution().rows() {
            let p1 = crate::quantum_sim::OutcomeDistribution::branch_zero_probability(
                sim.distribution(),
                row.value,
            )
            .map(|q| fraction_string(&q))
            .unwrap_or_default();
            text.push_str(&format!("{}\t{}\t{}\t{}\n", row.value, row.n0, row.n1, p1));
        }
        text.push_str(&format!("P_success = {}\n", fraction_string(&p)));
        text.push_str(&format!(
            "rows where P(a=0|A) <= 1/2: {} of {}\n",
            report.p1_violations(),
            report.rows.len()
        ));
        return Ok(Output {
            json: json!({
                "seed": seed,
                "mode": "exact",
                "k": sim.solution_count(),
                "distribution": sim.distribution().to_json(),
                "P_success": fraction_string(&p),
                "P_success_float": to_f64(&p),
                "bound_report": report.to_json(),
            }),
            text,
            code: EXIT_OK,
        });
    }

    let estimate = sim
        .estimate(trials, seed)
        .map_err(|e| input_error(e.to_string()))?;
    text.push_str(&format!(
        "trials = {}\nsuccesses = {}\nfrequency = {:.6}\n3-sigma interval = [{:.6}, {:.6}]\n",
        estimate.trials, estimate.successes, estimate.frequency, estimate.ci_low, estimate.ci_high
    ));
    Ok(Output {
        json: json!({
            "seed": seed,
            "mode": "sampled",
            "estimate": estimate,
        }),
        text,
        code: EXIT_OK,
    })
}

fn cr_failure(e: chor_rivest::ChorRivestError) -> Failure {
    input_error(e.to_string())
}

fn cr_keygen(
    p: u64,
    h: usize,
    public: &Path,
    private: &Path,
    seed: u64,
) -> Result<Output, Failure> {
    let (pk, sk) = chor_rivest::keygen(p, h, seed).map_err(cr_failure)?;
    fs::write(public, pk.to_json() + "\n")
        .map_err(|e| input_error(format!("cannot write {}: {e}", public.display())))?;
    fs::write(private, sk.to_json() + "\n")
        .map_err(|e| input_error(format!("cannot write {}: {e}", private.display())))?;
    Ok(Output {
        json: json!({
            "seed": seed,
            "p": p,
            "h": h,
            "public": public.display().to_string(),
            "private": private.display().to_string(),
        }),
        text: format!(
            "# seed: {seed}\nwrote {} and {}\n",
            public.display(),
            private.display()
        ),
        code: EXIT_OK,
    })
}

fn load_public(path: &Path) -> Result<ChorRivestPublicKey, Failure> {
    ChorRivestPublicKey::from_json(&read_text(path)?).map_err(cr_failure)
}

fn cr_encrypt(public: &Path, message: &str, from_file: bool) -> Result<Output, Failure> {
    let pk = load_public(public)?;
    let m: BigUint = decimal_arg(message, from_file, "message")?
        .parse()
        .map_err(|_| input_error("message is not a decimal integer"))?;
    let c = chor_rivest::encrypt(&pk, &m).map_err(cr_failure)?;
    Ok(Output {
        json: json!({ "ciphertext": c.to_string() }),
        text: format!("{c}\n"),
        code: EXIT_OK,
    })
}

fn cr_decrypt(
    public: &Path,
    private: &Path,
    ciphertext: &str,
    from_file: bool,
) -> Result<Output, Failure> {
    let pk = load_public(public)?;
    let sk = ChorRivestPrivateKey::from_json(&read_text(private)?).map_err(cr_failure)?;
    let c: u64 = decimal_arg(ciphertext, from_file, "ciphertext")?
        .parse()
        .map_err(|_| {
            cr_failure(chor_rivest::ChorRivestError::MalformedCiphertext(
                "ciphertext does not fit in 64 bits".into(),
            ))
        })?;
    let m = chor_rivest::decrypt(&sk, &pk, c).map_err(cr_failure)?;
    Ok(Output {
        json: json!({ "message": m.to_string() }),
        text: format!("{m}\n"),
        code: EXIT_OK,
    })
}

fn audit(
    chor_rivest: Option<&[u64]>,
    zr: Option<&[String]>,
    budget: FactorBudget,
) -> Result<Output, Failure> {
    if let Some(&[p, h]) = chor_rivest {
        let h = u32::try_from(h).map_err(|_| input_error("h does not fit in 32 bits"))?;
        let report = param_security::chor_rivest_quantum_audit_with(
            p,
            h,
            &BigUint::from(param_security::GPF_BOUND),
            budget,
        )
        .map_err(|e| input_error(e.to_string()))?;
        let fc = report.fc;
        let gpf = match &report.gpf_status {
            param_security::GpfStatus::Satisfied { largest_known } => {
                format!("satisfied (largest prime factor found {largest_known})")
            }
            param_security::GpfStatus::Violated { witness } => {
                format!("violated (prime factor {witness})")
            }
            param_security::GpfStatus::Unknown { .. } => {
                "unknown (factoring budget exhausted)".into()
            }
        };
        let mut text = format!(
            "Chor-Rivest p = {p}, h = {h}\n\
             FC: p prime {}, h prime {}, h <= p {}, 11 <= h <= 31 {}, 10^44 < p^h - 1 < 10^60 {} => {}\n\
             greatest prime factor <= {}: {gpf}\n\
             quantum ratio 4^p/(p^h - 1) = {}\n\
             threshold 2^p (constant 1, strict): quantum secure {}\n",
            fc.p_prime,
            fc.h_prime,
            fc.h_le_p,
            fc.h_in_11_31,
            fc.size_window,
            if fc.all() { "pass" } else { "fail" },
            report.gpf_bound,
            report.ratio_display(),
            report.quantum_secure,
        );
        if let Some(bound) = report.break_probability_display() {
            text.push_str(&format!("break probability per run at least {bound}\n"));
        }
        let verdict = report.verdict();
        text.push_str(&format!("verdict: {}\n", verdict_name(verdict)));
        return Ok(Output {
            json: report.to_json(),
            text,
            code: verdict_code(verdict),
        });
    }
    if let Some([n, r]) = zr {
        let n: u32 = n
            .parse()
            .map_err(|_| input_error(format!("n must be an integer, got {n:?}")))?;
        let r: BigUint = r
            .parse()
            .map_err(|_| input_error(format!("r must be an integer, got {r:?}")))?;
        let report =
            param_security::knapsack_zr_audit(n, &r).map_err(|e| input_error(e.to_string()))?;
        let verdict = if report.secure {
            Verdict::Secure
        } else {
            Verdict::Insecure
        };
        let text = format!(
            "knapsack over Z_r: n = {n}, r = {r}\n4^n/r = {} vs threshold 2^n = {} (constant 1, strict)\nverdict: {}\n",
            crate::exact::decimal_string(&report.ratio, 1),
            report.threshold,
            verdict_name(verdict),
        );
        return Ok(Output {
            json: report.to_json(),
            text,
            code: verdict_code(verdict),
        });
    }
    Err(input_error("audit needs --chor-rivest P H or --zr N R"))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Secure => "secure",
        Verdict::Insecure => "insecure",
        Verdict::Indeterminate => "indeterminate",
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Secure => EXIT_OK,
        Verdict::Insecure => EXIT_NEGATIVE,
        Verdict::Indeterminate => EXIT_INDETERMINATE,
    }
}
