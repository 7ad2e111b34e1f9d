use std::io::Write;

use spin_entropy::bounds::{
    axis_entropy_sum, joint_entropy, marginal_entropies, marginal_entropy_sum, separate_entropy_sum,
};
use spin_entropy::geometry::{BlochState, PlanarFrame};
use spin_entropy::optimizer::{minimize_planar, minimize_sphere, SphereOptions};

use super::bounds::planar_options;
use super::{open_output, write_json, Context, Point};
use crate::args::{MinimizeArgs, Objective};
use crate::failure::{Failure, Outcome};
use crate::format::{Field, Record};

pub fn run(ctx: &Context, args: MinimizeArgs) -> Outcome {
    let point = Point::from_args(ctx, &args.point)?;
    let s = point.scheme;
    if args.objective == Objective::AxisSum && s.is_degenerate() {
        return Err(Failure::invalid(anyhow::anyhow!(
            "the scheme measures along a single axis here, so H(M) + H(L) is undefined"
        )));
    }
    let objective = move |c: &BlochState| match args.objective {
        Objective::Joint => joint_entropy(&s, c),
        Objective::MarginalSum => marginal_entropy_sum(&s, c),
        Objective::Separate => separate_entropy_sum(s.a, s.b, c),
        Objective::AxisSum => axis_entropy_sum(&s, c),
    };
    let frame = PlanarFrame::new_or_any(s.a, s.b);
    let opts = planar_options(ctx, args.grid_n)?;
    let result = if args.sphere {
        minimize_sphere(
            objective,
            &frame,
            &SphereOptions {
                exec: ctx.exec,
                ..SphereOptions::default()
            },
        )
    } else {
        minimize_planar(objective, &frame, &opts)
    };
    let minima = if args.sphere {
        result.all_minima.clone()
    } else {
        result.distinct_up_to_sign(opts.angle_tol)
    };
    let (h_a, h_b) = marginal_entropies(&s, &result.state);
    let c = result.state.bloch();

    let mut rec = Record::default();
    rec.field("eta", point.eta)?
        .field("alpha", point.alpha)?
        .field("beta", point.beta)?
        .field("value", result.value)?
        .field("theta_star", result.theta_star)?
        .field("phi_star", Field::from(result.phi_star))?
        .field("state_x", c.x)?
        .field("state_y", c.y)?
        .field("state_z", c.z)?
        .field("h_a", h_a)?
        .field("h_b", h_b)?;
    rec.angles(
        if args.sphere {
            "min_azimuths"
        } else {
            "min_thetas"
        },
        minima,
    );

    if args.json {
        write_json(None, &rec)
    } else {
        let mut out = open_output(None)?;
        out.write_all(rec.table().as_bytes())?;
        out.flush()?;
        Ok(())
    }
}
