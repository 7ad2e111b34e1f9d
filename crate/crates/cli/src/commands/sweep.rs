use std::f64::consts::PI;

use spin_entropy::bounds::BoundReport;
use spin_entropy::measurement::{equal_sharpness, max_beta};
use spin_entropy::Exec;

use super::bounds::planar_options;
use super::{check_eta, open_output, Context};
use crate::args::{OutputColumn, SweepArgs, SweepRule};
use crate::failure::{Failure, Outcome};
use crate::format::{finite, join_angles, Field, NOT_APPLICABLE};

fn column(r: &BoundReport, c: OutputColumn) -> Field {
    match c {
        OutputColumn::JointBoundEqual => r.joint_bound_equal.into(),
        OutputColumn::JointBoundGeneral => r.joint_bound_general.into(),
        OutputColumn::MarginalBoundEqual => r.marginal_bound_equal.into(),
        OutputColumn::ConcavityBound => r.concavity_bound.into(),
        OutputColumn::KpBound => r.kp_bound.into(),
        OutputColumn::GmrBound => r.gmr_bound.into(),
        OutputColumn::MuBound => r.mu_bound.into(),
        OutputColumn::NumericMinSeparate => r.numeric_min_separate.into(),
        OutputColumn::NumericMinAxisSum => r.numeric_min_axis_sum.into(),
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// `(η, α, β)` grid points in output order. For the two-dimensional rule
/// alpha is the outer index.
fn grid(ctx: &Context, args: &SweepArgs) -> Outcome<Vec<(f64, f64, f64)>> {
    let eta_min = check_eta(ctx.angle(args.eta_min))?;
    let eta_max = check_eta(args.eta_max.map_or(PI, |e| ctx.angle(e)))?;
    if eta_min >= eta_max {
        return Err(Failure::invalid(anyhow::anyhow!(
            "eta range is empty: [{eta_min}, {eta_max}]"
        )));
    }
    if args.eta_steps < 2 {
        return Err(Failure::invalid(anyhow::anyhow!(
            "--eta-steps must be at least 2"
        )));
    }
    let etas = linspace(eta_min, eta_max, args.eta_steps);
    let mut points = Vec::new();
    match args.alpha_rule {
        SweepRule::EqualSharpness => {
            for &eta in &etas {
                let alpha = equal_sharpness(eta);
                points.push((eta, alpha, alpha));
            }
        }
        SweepRule::Fixed(alpha) => {
            for &eta in &etas {
                points.push((eta, alpha, max_beta(alpha, eta)?));
            }
        }
        SweepRule::MaxBetaGivenAlpha => {
            if args.alpha_steps < 2 {
                return Err(Failure::invalid(anyhow::anyhow!(
                    "--alpha-steps must be at least 2"
                )));
            }
            for alpha in linspace(0.0, 1.0, args.alpha_steps) {
                for &eta in &etas {
                    points.push((eta, alpha, max_beta(alpha, eta)?));
                }
            }
        }
    }
    Ok(points)
}

pub fn run(ctx: &Context, args: SweepArgs) -> Outcome {
    let points = grid(ctx, &args)?;
    let columns: Vec<OutputColumn> = if args.outputs.is_empty() {
        OutputColumn::ALL.to_vec()
    } else {
        args.outputs.clone()
    };
    // Grid points run concurrently; each minimisation stays sequential.
    let opts = planar_options(ctx, args.grid_n)?.with_exec(Exec::Sequential);
    let reports = ctx.exec.map(points.len(), |i| {
        let (eta, alpha, beta) = points[i];
        BoundReport::evaluate(eta, alpha, beta, &opts)
    });

    let mut header = vec!["eta", "alpha", "beta"];
    header.extend(columns.iter().map(|c| c.name()));
    header.extend([
        "numeric_min_joint",
        "numeric_min_marginal_sum",
        "min_thetas",
    ]);

    let mut writer = csv::Writer::from_writer(open_output(args.out.as_deref())?);
    writer.write_record(&header)?;
    for ((eta, alpha, beta), report) in points.into_iter().zip(reports) {
        let r = report?;
        let mut fields: Vec<(&str, Field)> = vec![
            ("eta", eta.into()),
            ("alpha", alpha.into()),
            ("beta", beta.into()),
        ];
        fields.extend(columns.iter().map(|&c| (c.name(), column(&r, c))));
        fields.push(("numeric_min_joint", r.numeric_min_joint.into()));
        fields.push((
            "numeric_min_marginal_sum",
            r.numeric_min_marginal_sum.into(),
        ));
        let mut row = fields
            .into_iter()
            .map(|(name, f)| finite(name, f).map(Field::render))
            .collect::<Outcome<Vec<String>>>()?;
        row.push(if r.marginal_minimizers.is_empty() {
            NOT_APPLICABLE.to_string()
        } else {
            join_angles(&r.marginal_minimizers)
        });
        writer.write_record(&row)?;
    }
    writer.flush()?;
    Ok(())
}
