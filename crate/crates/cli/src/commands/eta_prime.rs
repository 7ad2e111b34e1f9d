use spin_entropy::bounds::GMR_CRITICAL_ANGLE;
use spin_entropy::optimizer::{find_eta_prime, second_derivative_at_bisector, AlphaRule};

use super::write_json;
use crate::args::{EtaPrimeArgs, SweepRule};
use crate::failure::{Failure, Outcome};
use crate::format::Record;

pub fn run(args: EtaPrimeArgs) -> Outcome {
    let rule = match args.alpha_rule {
        SweepRule::EqualSharpness => AlphaRule::EqualSharpness,
        SweepRule::Fixed(alpha) => AlphaRule::Fixed(alpha),
        SweepRule::MaxBetaGivenAlpha => {
            return Err(Failure::invalid(anyhow::anyhow!(
                "max-beta-given-alpha does not define a single critical angle"
            )))
        }
    };
    let root = find_eta_prime(rule)?;
    let g = |eta: f64| second_derivative_at_bisector(rule.alpha(eta), eta);
    let (lo, hi) = root.bracket;

    let mut rec = Record::default();
    rec.text("rule", rule_name(&rule));
    rec.field("eta_prime", root.eta)?
        .field("bracket_lo", lo)?
        .field("bracket_hi", hi)?
        .field("second_derivative_lo", g(lo))?
        .field("second_derivative_hi", g(hi))?;
    rec.text("iterations", root.iterations.to_string());
    if rule == AlphaRule::Fixed(1.0) {
        rec.field("reference", GMR_CRITICAL_ANGLE)?
            .field("difference", root.eta - GMR_CRITICAL_ANGLE)?;
    }

    if args.json {
        write_json(None, &rec)
    } else {
        println!(
            "eta_prime = {:.6} rad  (rule {})",
            root.eta,
            rule_name(&rule)
        );
        println!(
            "bracket   = [{lo:.6}, {hi:.6}], {} bisection steps",
            root.iterations
        );
        println!(
            "sign change: d2/dtheta2 = {:+.6e} at lo, {:+.6e} at hi",
            g(lo),
            g(hi)
        );
        if rule == AlphaRule::Fixed(1.0) {
            println!(
                "reference 1.17056 (sharp separate measurements): difference {:+.2e}",
                root.eta - GMR_CRITICAL_ANGLE
            );
        }
        Ok(())
    }
}

fn rule_name(rule: &AlphaRule) -> String {
    match rule {
        AlphaRule::EqualSharpness => "equal-sharpness".into(),
        AlphaRule::Fixed(a) => format!("fixed:{a}"),
    }
}
