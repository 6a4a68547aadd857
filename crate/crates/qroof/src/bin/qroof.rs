//! Command-line surface: channel files in, numbers or CSV out.
//!
//! Exit codes: 0 success, 2 parse/usage error, 3 map not positive
//! (the violated inequality is named).

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::Vector3;

use qroof::bloch::State;
use qroof::channel::{ChannelSpec, QubitMap};
use qroof::concurrence::{ConcurrenceForm, Foliation};
use qroof::entanglement::{bifurcation_betas, classify_phase};
use qroof::roof::Budget;

#[derive(Parser)]
#[command(name = "qroof", about = "Concurrence, entanglement and capacity of 1-qubit maps")]
struct Cli {
    /// Seed forwarded to the decomposition oracle.
    #[arg(long, global = true, default_value_t = 0x5EED)]
    seed: u64,
    /// Entropy log base for entanglement output.
    #[arg(long, global = true, value_enum, default_value_t = BaseArg::Two)]
    base: BaseArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    #[value(name = "2")]
    Two,
    #[value(name = "e")]
    Euler,
}

impl BaseArg {
    fn value(self) -> f64 {
        match self {
            BaseArg::Two => 2.0,
            BaseArg::Euler => std::f64::consts::E,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Objective {
    Concurrence,
    Entropy,
}

#[derive(Subcommand)]
enum Command {
    /// Concurrence, critical parameter and foliation at a state.
    Concurrence {
        #[arg(long)]
        channel: String,
        /// Bloch vector "x,y,z".
        #[arg(long, default_value = "0,0,0")]
        state: String,
    },
    /// Entanglement entropy at a state, with the sandwich bounds.
    Entanglement {
        #[arg(long)]
        channel: String,
        #[arg(long, default_value = "0,0,0")]
        state: String,
    },
    /// One-shot classical capacity of a channel.
    Capacity {
        #[arg(long)]
        channel: String,
    },
    /// CSV phase map over a (gamma, beta) grid at fixed alpha.
    PhaseDiagram {
        #[arg(long)]
        alpha: f64,
        /// Gamma grid "min:max:step".
        #[arg(long, default_value = "0:1:0.05")]
        gamma: String,
        /// Beta grid "min:max:step".
        #[arg(long, default_value = "0:1:0.05")]
        beta: String,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<String>,
    },
    /// CSV beta sweep of concurrence, entanglement, capacity and phase at
    /// fixed alpha, gamma.
    Sweep {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        gamma: f64,
        /// Beta grid "min:max:step"; defaults to [0, beta_max] in 100 steps.
        #[arg(long)]
        beta: Option<String>,
        /// Bloch vector at which concurrence/entanglement are evaluated.
        #[arg(long, default_value = "0,0,0")]
        state: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Brute-force decomposition oracle value for auditing.
    Oracle {
        #[arg(long)]
        channel: String,
        #[arg(long, default_value = "0,0,0")]
        state: String,
        #[arg(long, value_enum, default_value_t = Objective::Concurrence)]
        objective: Objective,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
    },
}

/// 9 significant digits for all reported quantities (values here are O(1)).
fn fmt9(v: f64) -> String {
    format!("{v:.9}")
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn parse_state(text: &str) -> Result<State, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("state must be \"x,y,z\", got \"{text}\""));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad state component \"{p}\": {e}"))?;
    }
    State::new(Vector3::new(v[0], v[1], v[2]))
        .map_err(|e| format!("state outside the Bloch ball: {e}"))
}

fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid must be \"min:max:step\", got \"{text}\""));
    }
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.trim().parse::<f64>()).collect();
    let nums = nums.map_err(|e| format!("bad grid \"{text}\": {e}"))?;
    let (min, max, step) = (nums[0], nums[1], nums[2]);
    if step <= 0.0 || min >= max {
        return Err(format!("grid needs step > 0 and min < max, got \"{text}\""));
    }
    let n = ((max - min) / step).round() as usize;
    Ok((0..=n).map(|i| (min + i as f64 * step).min(max)).collect())
}

fn load_channel(path: &str) -> Result<QubitMap, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let spec = ChannelSpec::parse(&text).map_err(|e| format!("cannot parse {path}: {e}"))?;
    Ok(spec.to_map())
}

/// Names the violated positivity inequality, or None when positive.
fn positivity_violation(m: &QubitMap) -> Option<String> {
    if let Some(p) = m.as_axial() {
        if !(0.0..=1.0).contains(&p.alpha) {
            return Some(format!("alpha={} outside [0,1]", p.alpha));
        }
        if !(0.0..=1.0).contains(&p.gamma) {
            return Some(format!("gamma={} outside [0,1]", p.gamma));
        }
        let beta_max = p.beta_max_sq().max(0.0).sqrt();
        if p.beta * p.beta > p.beta_max_sq() + qroof::channel::TAU_PSD {
            return Some(format!("beta exceeds beta_max={beta_max:.6}"));
        }
        return None;
    }
    match qroof::concurrence::eigen_flow(m) {
        Err(e) => Some(format!("concurrence form has non-real eigenvalues ({e})")),
        Ok(flow) => {
            if flow[1] < -qroof::channel::TAU_PSD {
                Some(format!("critical eigenvalue w2={} is negative", flow[1]))
            } else if !m.classify_positivity().is_positive() {
                Some("form Q at w2 has a negative eigenvalue".to_string())
            } else {
                None
            }
        }
    }
}

fn write_out(out: &Option<String>, content: &str) -> Result<(), String> {
    match out {
        None => {
            print!("{content}");
            std::io::stdout().flush().ok();
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, content).map_err(|e| format!("cannot write {path}: {e}"))
        }
    }
}

fn foliation_tag(f: &Foliation) -> String {
    match f {
        Foliation::Flat { direction } => format!(
            "Flat direction=({},{},{})",
            fmt9(direction[0]),
            fmt9(direction[1]),
            fmt9(direction[2])
        ),
        Foliation::Apex { point } => format!(
            "Apex point=({},{},{})",
            fmt9(point.x[0]),
            fmt9(point.x[1]),
            fmt9(point.x[2])
        ),
    }
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    let budget = Budget {
        seed: cli.seed,
        ..Budget::default()
    };
    let base = cli.base.value();
    let usage = |m: String| (2u8, m);
    let not_positive = |m: String| (3u8, m);

    match cli.command {
        Command::Concurrence { channel, state } => {
            let m = load_channel(&channel).map_err(usage)?;
            let s = parse_state(&state).map_err(usage)?;
            if let Some(v) = positivity_violation(&m) {
                return Err(not_positive(v));
            }
            let form = ConcurrenceForm::new(&m)
                .map_err(|e| not_positive(format!("map is not positive: {e}")))?;
            let c = form
                .concurrence(&s)
                .map_err(|e| not_positive(e.to_string()))?;
            println!("concurrence = {}", fmt9(c));
            println!("w0 = {}", fmt9(form.w0));
            println!(
                "eigen_flow = {},{},{},{}",
                fmt9(form.w_flow[0]),
                fmt9(form.w_flow[1]),
                fmt9(form.w_flow[2]),
                fmt9(form.w_flow[3])
            );
            println!("foliation = {}", foliation_tag(&form.foliation()));
        }
        Command::Entanglement { channel, state } => {
            let m = load_channel(&channel).map_err(usage)?;
            let s = parse_state(&state).map_err(usage)?;
            if let Some(v) = positivity_violation(&m) {
                return Err(not_positive(v));
            }
            let e = qroof::entanglement::entanglement(&m, &s, &budget, base)
                .map_err(|e| not_positive(e.to_string()))?;
            let (lo, hi) = qroof::entanglement::entanglement_bounds(&m, &s, base)
                .map_err(|e| not_positive(e.to_string()))?;
            println!("entanglement = {}", fmt9(e));
            println!("xi_lower_bound = {}", fmt9(lo));
            println!("linear_upper_bound = {}", fmt9(hi));
        }
        Command::Capacity { channel } => {
            let m = load_channel(&channel).map_err(usage)?;
            if let Some(v) = positivity_violation(&m) {
                return Err(not_positive(v));
            }
            let r = qroof::capacity::hsw_capacity(&m, &budget)
                .map_err(|e| not_positive(e.to_string()))?;
            let x = r.argmax_state.bloch();
            println!("chi_bits = {}", fmt9(r.chi));
            println!("argmax = {},{},{}", fmt9(x[0]), fmt9(x[1]), fmt9(x[2]));
        }
        Command::PhaseDiagram {
            alpha,
            gamma,
            beta,
            out,
        } => {
            let gammas = parse_grid(&gamma).map_err(usage)?;
            let betas = parse_grid(&beta).map_err(usage)?;
            let mut csv = String::from("gamma,beta,phase,beta_c,beta1,beta2,beta_max\n");
            for &g in &gammas {
                let base_params = qroof::AxialParams {
                    alpha,
                    beta: 0.0,
                    gamma: g,
                };
                let beta_max = base_params.beta_max_sq().max(0.0).sqrt();
                let beta_c = base_params.beta_c_sq().max(0.0).sqrt();
                let (b1, b2) = match bifurcation_betas(alpha, g) {
                    Ok(b) => (fmt9(b.beta1), fmt9(b.beta2)),
                    Err(_) => ("nan".to_string(), "nan".to_string()),
                };
                for &b in &betas {
                    let p = qroof::AxialParams {
                        alpha,
                        beta: b,
                        gamma: g,
                    };
                    let phase = match classify_phase(&p) {
                        Ok(label) => label.to_string(),
                        Err(_) => "not_positive".to_string(),
                    };
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        fmt9(g),
                        fmt9(b),
                        phase,
                        fmt9(beta_c),
                        b1,
                        b2,
                        fmt9(beta_max)
                    ));
                }
            }
            write_out(&out, &csv).map_err(usage)?;
        }
        Command::Sweep {
            alpha,
            gamma,
            beta,
            state,
            out,
        } => {
            let s = parse_state(&state).map_err(usage)?;
            let beta_max = qroof::AxialParams {
                alpha,
                beta: 0.0,
                gamma,
            }
            .beta_max_sq()
            .max(0.0)
            .sqrt();
            let betas = match beta {
                Some(g) => parse_grid(&g).map_err(usage)?,
                None => (0..=100).map(|i| beta_max * i as f64 / 100.0).collect(),
            };
            let caps =
                qroof::capacity::capacity_sweep(alpha, gamma, &betas).map_err(|e| {
                    not_positive(format!("beta grid leaves the positive region: {e}"))
                })?;
            let mut csv = String::from("beta,concurrence,entanglement,chi_bits,phase\n");
            for row in &caps {
                let p = qroof::AxialParams {
                    alpha,
                    beta: row.beta,
                    gamma,
                };
                let m = p.map();
                let c = qroof::concurrence::concurrence(&m, &s)
                    .map_err(|e| not_positive(e.to_string()))?;
                let e = qroof::entanglement::entanglement(&m, &s, &budget, base)
                    .map_err(|e| not_positive(e.to_string()))?;
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt9(row.beta),
                    fmt9(c),
                    fmt9(e),
                    fmt9(row.chi),
                    row.phase
                ));
            }
            write_out(&out, &csv).map_err(usage)?;
        }
        Command::Oracle {
            channel,
            state,
            objective,
            max_length,
        } => {
            let m = load_channel(&channel).map_err(usage)?;
            let s = parse_state(&state).map_err(usage)?;
            if !(2..=4).contains(&max_length) {
                return Err(usage(format!("max-length must be 2..=4, got {max_length}")));
            }
            if let Some(v) = positivity_violation(&m) {
                return Err(not_positive(v));
            }
            let g = |n: &Vector3<f64>| match objective {
                Objective::Concurrence => qroof::concurrence::pure_concurrence(&m, n),
                Objective::Entropy => {
                    let out = m.apply(&qroof::MinkowskiVector { x0: 1.0, x: *n });
                    qroof::binary_entropy(0.5 * (1.0 - out.x.norm().min(1.0)), base)
                }
            };
            let r = qroof::roof::minimize_roof(&s, &g, max_length, &budget);
            println!("oracle_value = {}", fmt9(r.value));
            println!("flat = {}", r.flat);
            for (w, p) in &r.decomposition.members {
                let n = p.direction();
                println!(
                    "member weight={} direction=({},{},{})",
                    fmt9(*w),
                    fmt9(n[0]),
                    fmt9(n[1]),
                    fmt9(n[2])
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("QROOF_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .ok();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => fail(code, &msg),
    }
}
