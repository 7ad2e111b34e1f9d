use serde::Serialize;
use spin_entropy::bounds::{joint_entropy, marginal_entropy_sum};
use spin_entropy::geometry::PlanarFrame;
use spin_entropy::sampler::{
    entropy_standard_error, estimate_from, simulate_with, SampleConfig, SampleMode,
};
use spin_entropy::UnitVector3;

use super::{write_json, Context, Point};
use crate::args::{Mode, SampleArgs};
use crate::failure::{Failure, Outcome};
use crate::format::Field;

/// Cells in `(+,+), (+,−), (−,+), (−,−)` order.
#[derive(Serialize)]
struct Cells<T> {
    pp: T,
    pm: T,
    mp: T,
    mm: T,
}

impl<T: Copy> From<[T; 4]> for Cells<T> {
    fn from(c: [T; 4]) -> Self {
        Cells {
            pp: c[0],
            pm: c[1],
            mp: c[2],
            mm: c[3],
        }
    }
}

#[derive(Serialize)]
struct SchemeOut {
    eta: f64,
    alpha: f64,
    beta: f64,
    a: UnitVector3,
    b: UnitVector3,
    m: UnitVector3,
    l: UnitVector3,
    p: f64,
    degenerate: bool,
}

#[derive(Serialize)]
struct StateOut {
    theta: f64,
    bloch: [f64; 3],
}

#[derive(Serialize)]
struct AnalyticOut {
    distribution: Cells<f64>,
    joint_entropy: f64,
    marginal_entropy_sum: f64,
}

#[derive(Serialize)]
struct EmpiricalOut {
    counts: Cells<u64>,
    frequencies: Cells<f64>,
    standard_errors: Cells<f64>,
    joint_entropy: f64,
    /// Delta-method standard error at the analytic distribution.
    joint_entropy_standard_error: f64,
}

#[derive(Serialize)]
struct EstimatesOut {
    alpha_hat: Field,
    alpha_standard_error: Field,
    beta_hat: Field,
    beta_standard_error: Field,
}

#[derive(Serialize)]
struct SampleOut {
    scheme: SchemeOut,
    state: StateOut,
    shots: u64,
    seed: u64,
    generator: &'static str,
    mode: SampleMode,
    analytic: AnalyticOut,
    empirical: EmpiricalOut,
    estimates: EstimatesOut,
}

pub fn run(ctx: &Context, args: SampleArgs) -> Outcome {
    let point = Point::from_args(ctx, &args.point)?;
    let config = SampleConfig::new(args.shots, args.seed)?;
    let theta = ctx.angle(args.theta);
    if !theta.is_finite() {
        return Err(Failure::invalid(anyhow::anyhow!("theta must be finite")));
    }
    let s = &point.scheme;
    let state = PlanarFrame::new_or_any(s.a, s.b).state(theta);
    let mode = match args.mode {
        Mode::Chunked => SampleMode::Chunked,
        Mode::SingleStream => SampleMode::SingleStream,
    };
    let result = simulate_with(s, &state, &config, mode, ctx.exec);
    let analytic = s.joint_distribution(&state);
    let est = estimate_from(&result, s, &state);
    let c = state.bloch();

    let out = SampleOut {
        scheme: SchemeOut {
            eta: point.eta,
            alpha: point.alpha,
            beta: point.beta,
            a: s.a,
            b: s.b,
            m: s.m,
            l: s.l,
            p: s.p,
            degenerate: s.is_degenerate(),
        },
        state: StateOut {
            theta,
            bloch: [c.x, c.y, c.z],
        },
        shots: result.shots,
        seed: result.seed,
        generator: result.generator,
        mode,
        analytic: AnalyticOut {
            distribution: analytic.cells().into(),
            joint_entropy: joint_entropy(s, &state),
            marginal_entropy_sum: marginal_entropy_sum(s, &state),
        },
        empirical: EmpiricalOut {
            counts: result.counts.into(),
            frequencies: result.empirical_joint.cells().into(),
            standard_errors: result.standard_errors.into(),
            joint_entropy: result.empirical_entropy,
            joint_entropy_standard_error: entropy_standard_error(&analytic, result.shots),
        },
        estimates: EstimatesOut {
            alpha_hat: est.alpha_hat.into(),
            alpha_standard_error: est.alpha_se.into(),
            beta_hat: est.beta_hat.into(),
            beta_standard_error: est.beta_se.into(),
        },
    };
    write_json(args.out.as_deref(), &out)
}
