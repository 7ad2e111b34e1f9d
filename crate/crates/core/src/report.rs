//! Every bound plus the numerical minima for one `(η, α, β)` point.

use serde::Serialize;

use crate::bounds::{
    axis_entropy_sum, concavity_bound, gmr_separate_bound, joint_bound_equal_sharpness,
    joint_bound_general, joint_entropy, kp_bound, maassen_uffink_bound,
    marginal_bound_equal_sharpness, marginal_entropy_sum, overlap_max, separate_entropy_sum,
};
use crate::geometry::{canonical_axes, PlanarFrame};
use crate::measurement::{build_scheme_closed, equal_sharpness, JointScheme};
use crate::optimizer::{minimize_planar, PlanarOptions};
use crate::Result;

/// Bounds and minima at a single parameter point, in bits.
///
/// A `None` bound is inapplicable at this point (outside its validity range,
/// or its precondition on `(α, β)` does not hold).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub eta: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Tight joint-entropy bound, equal sharpness only.
    pub joint_bound_equal: Option<f64>,
    pub joint_bound_general: Option<f64>,
    /// Tight marginal-sum bound, equal sharpness inside its validity range.
    pub marginal_bound_equal: Option<f64>,
    pub concavity_bound: f64,
    pub kp_bound: f64,
    /// Separate sharp measurements, inside its validity range.
    pub gmr_bound: Option<f64>,
    /// Maassen–Uffink bound on `H(M) + H(L)`; undefined when one axis is a
    /// placeholder.
    pub mu_bound: Option<f64>,
    pub numeric_min_joint: Option<f64>,
    pub numeric_min_marginal_sum: Option<f64>,
    /// `min H(A) + H(B)` for sharp measurements on separate copies.
    pub numeric_min_separate: Option<f64>,
    /// `min H(M) + H(L)`, paired with `mu_bound`.
    pub numeric_min_axis_sum: Option<f64>,
    /// Minimisers of `H(A_J) + H(B_J)` up to sign, as planar angles from `a`.
    pub marginal_minimizers: Vec<f64>,
}

impl BoundReport {
    /// Closed-form bounds only, in the canonical frame.
    pub fn bounds_only(eta: f64, alpha: f64, beta: f64) -> Result<Self> {
        let (a, b) = canonical_axes(eta);
        let scheme = build_scheme_closed(a, b, alpha, beta)?;
        Ok(Self::from_scheme(&scheme))
    }

    /// Closed-form bounds and numerical minima, in the canonical frame.
    pub fn evaluate(eta: f64, alpha: f64, beta: f64, opts: &PlanarOptions) -> Result<Self> {
        let mut report = Self::bounds_only(eta, alpha, beta)?;
        let (a, b) = canonical_axes(eta);
        let scheme = build_scheme_closed(a, b, alpha, beta)?;
        report.fill_minima(&scheme, opts);
        Ok(report)
    }

    fn from_scheme(scheme: &JointScheme) -> Self {
        let (alpha, beta) = (scheme.alpha(), scheme.beta());
        let eta = scheme.eta();
        let equal = (alpha - beta).abs() <= 1e-12 && (alpha - equal_sharpness(eta)).abs() <= 1e-9;
        Self {
            eta,
            alpha,
            beta,
            joint_bound_equal: equal
                .then(|| joint_bound_equal_sharpness(alpha, scheme.a, scheme.b).ok())
                .flatten(),
            joint_bound_general: joint_bound_general(alpha, beta, scheme.a, scheme.b).ok(),
            marginal_bound_equal: equal
                .then(|| marginal_bound_equal_sharpness(alpha, eta).ok())
                .flatten(),
            concavity_bound: concavity_bound(alpha, beta),
            kp_bound: kp_bound(alpha, beta, eta),
            gmr_bound: gmr_separate_bound(eta).ok(),
            mu_bound: if scheme.is_degenerate() {
                None
            } else {
                overlap_max(alpha, beta).and_then(maassen_uffink_bound).ok()
            },
            numeric_min_joint: None,
            numeric_min_marginal_sum: None,
            numeric_min_separate: None,
            numeric_min_axis_sum: None,
            marginal_minimizers: Vec::new(),
        }
    }

    fn fill_minima(&mut self, scheme: &JointScheme, opts: &PlanarOptions) {
        let frame = PlanarFrame::new_or_any(scheme.a, scheme.b);
        let joint = minimize_planar(|c| joint_entropy(scheme, c), &frame, opts);
        let marginal = minimize_planar(|c| marginal_entropy_sum(scheme, c), &frame, opts);
        let separate = minimize_planar(
            |c| separate_entropy_sum(scheme.a, scheme.b, c),
            &frame,
            opts,
        );
        self.numeric_min_joint = Some(joint.value);
        self.numeric_min_marginal_sum = Some(marginal.value);
        self.numeric_min_separate = Some(separate.value);
        self.marginal_minimizers = marginal.distinct_up_to_sign(opts.angle_tol);
        if self.mu_bound.is_some() {
            // m and l are coplanar with a and b, so the planar search covers them.
            let axis = minimize_planar(|c| axis_entropy_sum(scheme, c), &frame, opts);
            self.numeric_min_axis_sum = Some(axis.value);
        }
    }

    /// `(name, bound, minimum of the bounded quantity)` for every bound that
    /// applies at this point and whose minimum has been computed.
    pub fn dominance_pairs(&self) -> Vec<(&'static str, f64, f64)> {
        let mut pairs = Vec::new();
        let mut push = |name, bound: Option<f64>, min: Option<f64>| {
            if let (Some(b), Some(m)) = (bound, min) {
                pairs.push((name, b, m));
            }
        };
        push(
            "joint_bound_equal",
            self.joint_bound_equal,
            self.numeric_min_joint,
        );
        push(
            "joint_bound_general",
            self.joint_bound_general,
            self.numeric_min_joint,
        );
        push(
            "joint_bound_general_vs_marginal",
            self.joint_bound_general,
            self.numeric_min_marginal_sum,
        );
        push(
            "marginal_bound_equal",
            self.marginal_bound_equal,
            self.numeric_min_marginal_sum,
        );
        push(
            "concavity_bound",
            Some(self.concavity_bound),
            self.numeric_min_marginal_sum,
        );
        push(
            "kp_bound",
            Some(self.kp_bound),
            self.numeric_min_marginal_sum,
        );
        push("gmr_bound", self.gmr_bound, self.numeric_min_separate);
        push("mu_bound", self.mu_bound, self.numeric_min_axis_sum);
        pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    #[test]
    fn complementary_point() {
        let r = BoundReport::evaluate(
            FRAC_PI_2,
            FRAC_1_SQRT_2,
            FRAC_1_SQRT_2,
            &PlanarOptions::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(r.joint_bound_equal.unwrap(), 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.numeric_min_marginal_sum.unwrap(), 1.60088, epsilon = 1e-5);
        assert!(r.marginal_bound_equal.is_none());
        assert!(r.gmr_bound.is_none());
        assert_eq!(r.marginal_minimizers.len(), 2);
        for (name, bound, min) in r.dominance_pairs() {
            assert!(bound <= min + 1e-9, "{name}: {bound} > {min}");
        }
    }

    #[test]
    fn commuting_endpoints_are_zero() {
        for eta in [0.0, PI] {
            let r = BoundReport::evaluate(eta, 1.0, 1.0, &PlanarOptions::default()).unwrap();
            for v in [
                r.joint_bound_equal.unwrap(),
                r.joint_bound_general.unwrap(),
                r.marginal_bound_equal.unwrap(),
                r.concavity_bound,
                r.kp_bound,
                r.gmr_bound.unwrap(),
                r.numeric_min_joint.unwrap(),
                r.numeric_min_marginal_sum.unwrap(),
            ] {
                assert_abs_diff_eq!(v, 0.0, epsilon = 1e-9);
            }
            assert!(r.mu_bound.is_none());
        }
    }

    #[test]
    fn unequal_point_skips_equal_bounds() {
        let beta = crate::measurement::max_beta(0.9, 1.2).unwrap();
        let r = BoundReport::evaluate(1.2, 0.9, beta, &PlanarOptions::default()).unwrap();
        assert!(r.joint_bound_equal.is_none() && r.marginal_bound_equal.is_none());
        assert!(r.kp_bound <= r.joint_bound_general.unwrap() + 1e-9);
        assert!(r.mu_bound.is_some() && r.numeric_min_axis_sum.is_some());
    }
}
