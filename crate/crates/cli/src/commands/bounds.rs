use std::io::Write;

use spin_entropy::bounds::BoundReport;
use spin_entropy::optimizer::PlanarOptions;

use super::{open_output, write_json, Context, Point};
use crate::args::BoundsArgs;
use crate::failure::{Failure, Outcome};
use crate::format::Record;

pub fn planar_options(ctx: &Context, grid_n: usize) -> Outcome<PlanarOptions> {
    if grid_n < 16 {
        return Err(Failure::invalid(anyhow::anyhow!(
            "--grid-n must be at least 16, got {grid_n}"
        )));
    }
    Ok(PlanarOptions {
        grid_n,
        exec: ctx.exec,
        ..PlanarOptions::default()
    })
}

/// Every column of a report, in output order. Inapplicable bounds stay in
/// the record as `n/a`.
pub fn report_record(point: &Point, r: &BoundReport) -> Outcome<Record> {
    let mut rec = Record::default();
    rec.field("eta", point.eta)?
        .field("alpha", point.alpha)?
        .field("beta", point.beta)?
        .field("joint_bound_equal", r.joint_bound_equal)?
        .field("joint_bound_general", r.joint_bound_general)?
        .field("marginal_bound_equal", r.marginal_bound_equal)?
        .field("concavity_bound", r.concavity_bound)?
        .field("kp_bound", r.kp_bound)?
        .field("gmr_bound", r.gmr_bound)?
        .field("mu_bound", r.mu_bound)?
        .field("numeric_min_joint", r.numeric_min_joint)?
        .field("numeric_min_marginal_sum", r.numeric_min_marginal_sum)?
        .field("numeric_min_separate", r.numeric_min_separate)?
        .field("numeric_min_axis_sum", r.numeric_min_axis_sum)?;
    rec.angles("min_thetas", r.marginal_minimizers.clone());
    Ok(rec)
}

pub fn run(ctx: &Context, args: BoundsArgs) -> Outcome {
    let point = Point::from_args(ctx, &args.point)?;
    let opts = planar_options(ctx, args.grid_n)?;
    let report = BoundReport::evaluate(point.eta, point.alpha, point.beta, &opts)?;
    let rec = report_record(&point, &report)?;
    if args.json {
        write_json(args.out.as_deref(), &rec)
    } else {
        let mut out = open_output(args.out.as_deref())?;
        out.write_all(rec.table().as_bytes())?;
        out.flush()?;
        Ok(())
    }
}
