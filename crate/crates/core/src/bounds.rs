//! Entropy functionals of the joint measurement and their closed-form,
//! state-independent lower bounds.
//!
//! Every bound is a function of the measurement alone (`α`, `β`, `η`). The
//! functionals take a scheme and a state and are what the numerical
//! minimisers in [`crate::optimizer`] drive down to check the bounds.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use crate::entropy::{bias_entropy, surprisal_term};
use crate::geometry::{angle_between, BlochState, UnitVector3};
use crate::measurement::{equal_sharpness, JointScheme};
use crate::optimizer::critical_angle;
use crate::{Error, Result};

pub use crate::report::BoundReport;

/// Critical angle quoted for the separate-measurement bound.
pub const GMR_CRITICAL_ANGLE: f64 = 1.17056;

/// `|η − π/2|` below which both branches of a piecewise bound are evaluated.
const BRANCH_TOL: f64 = 1e-12;

/// Both branches of a piecewise bound must agree this well at `η = π/2`.
const BRANCH_AGREEMENT: f64 = 1e-9;

/// `α` must be within this of `√(1/(1+|sin η|))` for the equal-sharpness bounds.
const EQUAL_SHARPNESS_TOL: f64 = 1e-9;

fn select_branch(eta: f64, below: impl Fn() -> f64, above: impl Fn() -> f64) -> f64 {
    if (eta - FRAC_PI_2).abs() <= BRANCH_TOL {
        let (lo, hi) = (below(), above());
        debug_assert!(
            (lo - hi).abs() <= BRANCH_AGREEMENT,
            "branches disagree at η = π/2: {lo} vs {hi}"
        );
        0.5 * (lo + hi)
    } else if eta < FRAC_PI_2 {
        below()
    } else {
        above()
    }
}

fn require_equal_sharpness(alpha: f64, eta: f64) -> Result<()> {
    if (alpha - equal_sharpness(eta)).abs() > EQUAL_SHARPNESS_TOL {
        return Err(Error::NotEqualSharpness { alpha, beta: alpha });
    }
    Ok(())
}

fn binary_entropy_of_split(p: f64, q: f64) -> f64 {
    surprisal_term(p) + surprisal_term(q)
}

// ---------------------------------------------------------------------------
// Functionals
// ---------------------------------------------------------------------------

/// Joint entropy via the axis decomposition `H₂(p) + p H(M) + (1−p) H(L)`.
pub fn joint_entropy(scheme: &JointScheme, state: &BlochState) -> f64 {
    let p = scheme.p;
    let q = 1.0 - p;
    let h_m = bias_entropy(state.expectation(scheme.m));
    let h_l = bias_entropy(state.expectation(scheme.l));
    binary_entropy_of_split(p, q) + p * h_m + q * h_l
}

/// Marginal entropies `(H(A_J), H(B_J))`.
pub fn marginal_entropies(scheme: &JointScheme, state: &BlochState) -> (f64, f64) {
    let (ta, tb) = scheme.joint_expectations(state);
    (bias_entropy(ta), bias_entropy(tb))
}

/// `H(A_J) + H(B_J)`.
pub fn marginal_entropy_sum(scheme: &JointScheme, state: &BlochState) -> f64 {
    let (ha, hb) = marginal_entropies(scheme, state);
    ha + hb
}

/// `H₂(½ + α a·c/2) + H₂(½ + β b·c/2)` for arbitrary sharpnesses, realisable
/// or not. With `α = β = 1` this is the separate-measurement entropy sum.
pub fn unsharp_entropy_sum(
    alpha: f64,
    a: UnitVector3,
    beta: f64,
    b: UnitVector3,
    state: &BlochState,
) -> f64 {
    bias_entropy(alpha * state.expectation(a)) + bias_entropy(beta * state.expectation(b))
}

/// `H(A) + H(B)` for sharp measurements of `a·σ` and `b·σ` on separate copies.
pub fn separate_entropy_sum(a: UnitVector3, b: UnitVector3, state: &BlochState) -> f64 {
    unsharp_entropy_sum(1.0, a, 1.0, b, state)
}

/// `H(M) + H(L)`: entropies of sharp measurements along the scheme's two axes.
pub fn axis_entropy_sum(scheme: &JointScheme, state: &BlochState) -> f64 {
    bias_entropy(state.expectation(scheme.m)) + bias_entropy(state.expectation(scheme.l))
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

/// Tight lower bound on `H(A_J, B_J)` for equal optimal sharpness:
/// `H₂(α|a+b|/2) + α|a−b|/2` for `η ≤ π/2`, `H₂(α|a+b|/2) + α|a+b|/2` above.
pub fn joint_bound_equal_sharpness(alpha: f64, a: UnitVector3, b: UnitVector3) -> Result<f64> {
    let eta = angle_between(a, b);
    require_equal_sharpness(alpha, eta)?;
    let sum = 0.5 * alpha * (a.vec() + b.vec()).norm();
    let diff = 0.5 * alpha * (a.vec() - b.vec()).norm();
    let h = binary_entropy_of_split(sum, diff);
    Ok(select_branch(eta, || h + diff, || h + sum))
}

/// Largest eigenvector overlap `|⟨m|l⟩|` between `m·σ` and `l·σ` for an
/// optimal pair `(α, β)`.
pub fn overlap_max(alpha: f64, beta: f64) -> Result<f64> {
    let s = alpha * alpha + beta * beta;
    if s >= 2.0 - 1e-12 {
        return Err(Error::OverlapSingular(s));
    }
    let ratio = (alpha * alpha - beta * beta).abs() / (2.0 - s);
    Ok(FRAC_1_SQRT_2 * (1.0 + ratio).sqrt())
}

/// Lower bound on `H(A_J, B_J)` for any optimal `(α, β)`:
/// `H₂(½|αa+βb|) − |αa∓βb| log₂ |⟨m|l⟩|_max`, with `−` for `η ≤ π/2`.
///
/// When the selected prefactor vanishes (the degenerate endpoints) the log
/// term is dropped, so the singular overlap is never evaluated there.
pub fn joint_bound_general(alpha: f64, beta: f64, a: UnitVector3, b: UnitVector3) -> Result<f64> {
    let eta = angle_between(a, b);
    let plus = (alpha * a.vec() + beta * b.vec()).norm();
    let minus = (alpha * a.vec() - beta * b.vec()).norm();
    let h = binary_entropy_of_split(0.5 * plus, 0.5 * minus);
    let prefactor_below = minus;
    let prefactor_above = plus;
    let needed = if (eta - FRAC_PI_2).abs() <= BRANCH_TOL {
        prefactor_below.max(prefactor_above)
    } else if eta < FRAC_PI_2 {
        prefactor_below
    } else {
        prefactor_above
    };
    if needed <= 1e-12 {
        return Ok(h);
    }
    let log_overlap = overlap_max(alpha, beta)?.log2();
    Ok(select_branch(
        eta,
        || h - prefactor_below * log_overlap,
        || h - prefactor_above * log_overlap,
    ))
}

/// Tight lower bound on `H(A_J) + H(B_J)` for equal optimal sharpness:
/// `2H₂(½ + α cos(η/2)/2)` on `[0, η′]` and `2H₂(½ + α sin(η/2)/2)` on
/// `[π−η′, π]`. Between those ranges the minimiser has no closed form and
/// this returns [`Error::OutOfValidityRange`].
pub fn marginal_bound_equal_sharpness(alpha: f64, eta: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&eta) {
        return Err(Error::AngleRange(eta));
    }
    require_equal_sharpness(alpha, eta)?;
    let eta_prime = critical_angle();
    if eta <= eta_prime {
        Ok(2.0 * bias_entropy(alpha * (0.5 * eta).cos()))
    } else if eta >= PI - eta_prime {
        Ok(2.0 * bias_entropy(alpha * (0.5 * eta).sin()))
    } else {
        Err(Error::OutOfValidityRange { eta })
    }
}

/// State-independent concavity bound `H₂(½+α/2) + H₂(½+β/2)`.
pub fn concavity_bound(alpha: f64, beta: f64) -> f64 {
    bias_entropy(alpha) + bias_entropy(beta)
}

/// Operator norms `(‖√Π^{αa}_+ √Π^{βb}_+‖, ‖√Π^{αa}_+ √Π^{βb}_−‖)`.
///
/// The remaining pairs repeat these two values.
pub fn kp_overlaps(alpha: f64, beta: f64, eta: f64) -> (f64, f64) {
    let (s, c) = eta.sin_cos();
    let ab = alpha * beta;
    let base = alpha * alpha + beta * beta - ab * ab * s * s;
    let same = 0.5 * (1.0 + ab * c + (base + 2.0 * ab * c).max(0.0).sqrt()).sqrt();
    let opposite = 0.5 * (1.0 - ab * c + (base - 2.0 * ab * c).max(0.0).sqrt()).sqrt();
    (same, opposite)
}

/// Bound on `H(A_J) + H(B_J)` from the POM generalisation of the
/// Maassen–Uffink relation: `−2 log₂ max ‖√Π_i √Π_j‖`.
pub fn kp_bound(alpha: f64, beta: f64, eta: f64) -> f64 {
    // The `(+,+)` norm dominates for η ≤ π/2 and `(+,−)` above, so the
    // maximum selects the printed branch.
    let (same, opposite) = kp_overlaps(alpha, beta, eta);
    -2.0 * same.max(opposite).log2()
}

/// Lower bound on `H(A) + H(B)` for sharp measurements on separate copies,
/// valid on `[0, η′_GMR] ∪ [π − η′_GMR, π]`.
pub fn gmr_separate_bound(eta: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&eta) {
        return Err(Error::AngleRange(eta));
    }
    if eta <= GMR_CRITICAL_ANGLE {
        Ok(2.0 * bias_entropy((0.5 * eta).cos()))
    } else if eta >= PI - GMR_CRITICAL_ANGLE {
        Ok(2.0 * bias_entropy((0.5 * eta).sin()))
    } else {
        Err(Error::OutOfValidityRange { eta })
    }
}

/// `−2 log₂ c` for the largest eigenvector overlap `c` of two observables.
pub fn maassen_uffink_bound(max_overlap: f64) -> Result<f64> {
    if !(max_overlap > 0.0 && max_overlap <= 1.0 + 1e-12) {
        return Err(Error::OverlapDomain(max_overlap));
    }
    Ok(-2.0 * max_overlap.min(1.0).log2())
}
