mod bounds;
mod eta_prime;
mod minimize;
mod sample;
mod sweep;

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use spin_entropy::geometry::canonical_axes;
use spin_entropy::measurement::{build_scheme_closed, equal_sharpness, max_beta};
use spin_entropy::{Exec, JointScheme};

use crate::args::{Cli, Command, PointArgs};
use crate::failure::{Failure, Outcome};

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub degrees: bool,
    pub exec: Exec,
}

impl Context {
    pub fn angle(&self, x: f64) -> f64 {
        if self.degrees {
            x.to_radians()
        } else {
            x
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let ctx = Context {
        degrees: cli.degrees,
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        },
    };
    match cli.command {
        Command::Bounds(args) => bounds::run(&ctx, args),
        Command::Sweep(args) => sweep::run(&ctx, args),
        Command::EtaPrime(args) => eta_prime::run(args),
        Command::Sample(args) => sample::run(&ctx, args),
        Command::Minimize(args) => minimize::run(&ctx, args),
    }
}

/// A validated `(η, α, β)` point and its scheme in the canonical frame.
pub struct Point {
    pub eta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub scheme: JointScheme,
}

/// Accepts `[0, π]`, absorbing the rounding of a degree conversion at the
/// endpoints.
pub fn check_eta(eta: f64) -> Outcome<f64> {
    const SLACK: f64 = 1e-12;
    if eta.is_finite() && (-SLACK..=PI + SLACK).contains(&eta) {
        Ok(eta.clamp(0.0, PI))
    } else {
        Err(Failure::invalid(anyhow::anyhow!(
            "eta = {eta} rad is outside [0, pi]"
        )))
    }
}

impl Point {
    pub fn new(eta: f64, alpha: f64, beta: f64) -> Outcome<Self> {
        let eta = check_eta(eta)?;
        let (a, b) = canonical_axes(eta);
        let scheme = build_scheme_closed(a, b, alpha, beta)?;
        Ok(Self {
            eta,
            alpha,
            beta,
            scheme,
        })
    }

    pub fn from_args(ctx: &Context, args: &PointArgs) -> Outcome<Self> {
        let eta = check_eta(ctx.angle(args.eta))?;
        let (alpha, beta) = if args.equal_sharpness {
            let alpha = equal_sharpness(eta);
            (alpha, alpha)
        } else {
            let alpha = args
                .alpha
                .expect("clap requires alpha without --equal-sharpness");
            let beta = match args.beta {
                Some(beta) => beta,
                None => max_beta(alpha, eta)?,
            };
            (alpha, beta)
        };
        Self::new(eta, alpha, beta)
    }
}

/// Opens `path` for writing, or stdout when `None`.
pub fn open_output(path: Option<&Path>) -> Outcome<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| {
                Failure::io(anyhow::Error::new(e).context(format!("creating {}", p.display())))
            })?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json<T: serde::Serialize>(path: Option<&Path>, value: &T) -> Outcome {
    let mut out = open_output(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}
