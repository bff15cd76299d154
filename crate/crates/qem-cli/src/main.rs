use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use qem_cli::{
    find_peak, oracle_check, parse_angle, parse_angle_list, parse_float_list, sig12, sweep_csv,
    CliError, CloudSweepSpec, CoinSweepSpec, SweepSpec,
};
use qem_core::{
    default_merge_tolerance, estimate_conditionals, perturbed_coin_machine, quantum_complexity,
    reconstruct_machine_with, sample, statistical_complexity, Alphabet, CoinParams, StartState,
    SymbolSequence,
};

#[derive(Parser)]
#[command(
    name = "qem",
    version,
    about = "ε-machine and quantum ε-machine complexity sweeps for the perturbed coin and the thermalizing qubit cloud"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the symmetric coin q0 = q1 = q; emits q, c_mu, c_q.
    Coin {
        #[arg(long, default_value_t = 0.01)]
        q_min: f64,
        #[arg(long, default_value_t = 0.99)]
        q_max: f64,
        #[arg(long, default_value_t = 99)]
        steps: usize,
        #[arg(long, default_value_t = 1e-9)]
        merge_tol: f64,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the qubit cloud over λ for each (κ, g); emits rates, stationary
    /// weights and both complexities.
    Cloud {
        #[arg(long, default_value_t = 0.0)]
        lambda_min: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda_max: f64,
        #[arg(long, default_value_t = 101)]
        lambda_steps: usize,
        /// Comma-separated interaction strengths; accepts `pi` forms such as
        /// `pi/2` or `3pi/8`.
        #[arg(long, default_value = "pi/2")]
        kappa: String,
        /// Comma-separated swap probabilities.
        #[arg(long, default_value = "0.25,0.5,0.75")]
        g: String,
        #[arg(long, default_value_t = 1e-9)]
        merge_tol: f64,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locate the λ maximizing C_q for fixed (κ, g).
    Peak {
        #[arg(long)]
        g: f64,
        /// Interaction strength; accepts `pi` forms such as `pi/2`.
        #[arg(long, default_value = "pi/2")]
        kappa: String,
        /// Final bracket width of the golden-section refinement.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 1e-9)]
        merge_tol: f64,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the circuit simulation against the closed-form rates; exits 0
    /// on PASS, 1 on FAIL.
    OracleCheck {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0.0, hide = true)]
        perturb_q0: f64,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reconstruct an ε-machine from a symbol sequence and report its
    /// complexity estimates.
    Infer {
        /// Read the sequence from this file (one line of alphabet
        /// characters, e.g. 0/1).
        #[arg(long, conflicts_with = "coin")]
        input: Option<PathBuf>,
        /// Sample a coin process instead of reading a file: `q0,q1`.
        #[arg(long)]
        coin: Option<String>,
        /// Sample length when `--coin` is used.
        #[arg(long, default_value_t = 1_000_000)]
        length: usize,
        /// RNG seed when `--coin` is used.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// History order L.
        #[arg(long, default_value_t = 1)]
        order: usize,
        /// Merge tolerance; defaults to a 3σ noise-scaled value computed
        /// from the counts.
        #[arg(long)]
        merge_tol: Option<f64>,
        /// Minimum observations required per history.
        #[arg(long, default_value_t = 100)]
        min_count: u64,
        /// Also write the reconstructed machine's tensor listing here.
        #[arg(long)]
        dump_machine: Option<PathBuf>,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Coin { q_min, q_max, steps, merge_tol, out } => {
            let spec = SweepSpec::Coin(CoinSweepSpec { q_min, q_max, steps, merge_tol });
            write_output(&out, &sweep_csv(&spec)?)?;
            Ok(0)
        }
        Command::Cloud {
            lambda_min,
            lambda_max,
            lambda_steps,
            kappa,
            g,
            merge_tol,
            out,
        } => {
            let spec = SweepSpec::Cloud(CloudSweepSpec {
                lambda_min,
                lambda_max,
                lambda_steps,
                kappas: parse_angle_list(&kappa)?,
                gs: parse_float_list(&g)?,
                merge_tol,
            });
            write_output(&out, &sweep_csv(&spec)?)?;
            Ok(0)
        }
        Command::Peak { g, kappa, tol, merge_tol, out } => {
            let kappa = parse_angle(&kappa)?;
            let peak = find_peak(g, kappa, tol, merge_tol)?;
            let csv = format!(
                "g,kappa,lambda_star,c_q_star\n{},{},{},{}\n",
                sig12(g),
                sig12(kappa),
                sig12(peak.lambda),
                sig12(peak.c_q)
            );
            write_output(&out, &csv)?;
            Ok(0)
        }
        Command::OracleCheck { tol, perturb_q0, out } => {
            let report = oracle_check(tol, perturb_q0)?;
            write_output(&out, &report.render())?;
            Ok(if report.pass() { 0 } else { 1 })
        }
        Command::Infer {
            input,
            coin,
            length,
            seed,
            order,
            merge_tol,
            min_count,
            dump_machine,
            out,
        } => {
            let seq = load_sequence(input, coin, length, seed)?;
            let model = estimate_conditionals(&seq, order)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let tol = merge_tol.unwrap_or_else(|| default_merge_tolerance(&model));
            let rec = reconstruct_machine_with(&model, tol, min_count)
                .map_err(|e| CliError::Check(e.to_string()))?;
            let c_mu = statistical_complexity(&rec.machine, tol)
                .map_err(|e| CliError::Check(e.to_string()))?;
            let c_q = quantum_complexity(&rec.machine, tol)
                .map_err(|e| CliError::Check(e.to_string()))?;
            if let Some(path) = dump_machine {
                fs::write(path, rec.machine.tensor_text())?;
            }
            let csv = format!(
                "order,num_states,merge_tol,c_mu,c_q\n{},{},{},{},{}\n",
                order,
                rec.machine.num_states(),
                sig12(tol),
                sig12(c_mu),
                sig12(c_q)
            );
            write_output(&out, &csv)?;
            Ok(0)
        }
    }
}

fn load_sequence(
    input: Option<PathBuf>,
    coin: Option<String>,
    length: usize,
    seed: u64,
) -> Result<SymbolSequence, CliError> {
    match (input, coin) {
        (Some(path), None) => {
            let text = fs::read_to_string(&path)?;
            SymbolSequence::from_text(&text, &Alphabet::binary())
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
        (None, Some(spec)) => {
            let rates = parse_float_list(&spec)?;
            if rates.len() != 2 {
                return Err(CliError::Usage(format!(
                    "--coin expects q0,q1 but got {spec:?}"
                )));
            }
            let params = CoinParams::new(rates[0], rates[1])
                .map_err(|e| CliError::Usage(e.to_string()))?;
            sample(&perturbed_coin_machine(&params), StartState::Stationary, length, seed)
                .map_err(|e| CliError::Usage(e.to_string()))
        }
        (None, None) => Err(CliError::Usage(
            "infer needs either --input <path> or --coin q0,q1".into(),
        )),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with prevents this"),
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(content.as_bytes())?;
            handle.flush()?;
        }
    }
    Ok(())
}
