//! The two-axis optimal joint measurement of `a·σ` and `b·σ`.
//!
//! With probability `p` the spin is measured along `m`, otherwise along `l`:
//!
//! ```text
//! m = (αa + βb) / 2p,   l = (αa − βb) / 2(1−p),   p = ½|αa + βb|
//! ```
//!
//! Outcome `±` along `m` is read as `(A, B) = (±, ±)`; outcome `±` along `l`
//! is read as `(±, ∓)`. The pair `(α, β)` must saturate
//! `|αa+βb| + |αa−βb| ≤ 2`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::entropy::ProbVector;
use crate::geometry::{angle_between, BlochState, UnitVector3, Vec3};
use crate::{Error, Result};

/// Largest allowed excess of `|αa+βb| + |αa−βb|` over 2.
pub const SHARPNESS_TOL: f64 = 1e-12;

/// Slack below 2 still accepted as saturating.
pub const SATURATION_TOL: f64 = 1e-9;

/// Positivity tolerance for POM elements.
pub const POSITIVITY_TOL: f64 = 1e-12;

const DEGENERATE_P_TOL: f64 = 1e-12;

fn check_unit_interval(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() || !(-SHARPNESS_TOL..=1.0 + SHARPNESS_TOL).contains(&value) {
        return Err(Error::SharpnessRange { name, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

fn check_angle(eta: f64) -> Result<f64> {
    if !eta.is_finite() || !(-1e-12..=PI + 1e-12).contains(&eta) {
        return Err(Error::AngleRange(eta));
    }
    Ok(eta.clamp(0.0, PI))
}

/// Sharpnesses `(α, β)` of the jointly measured observables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessPair {
    pub alpha: f64,
    pub beta: f64,
}

impl SharpnessPair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        Ok(Self {
            alpha: check_unit_interval("alpha", alpha)?,
            beta: check_unit_interval("beta", beta)?,
        })
    }

    /// `|αa+βb| + |αa−βb|`, at most 2 for a realisable joint measurement.
    pub fn trade_off(&self, a: UnitVector3, b: UnitVector3) -> f64 {
        let (plus, minus) = self.scaled_sum_diff(a, b);
        plus.norm() + minus.norm()
    }

    fn scaled_sum_diff(&self, a: UnitVector3, b: UnitVector3) -> (Vec3, Vec3) {
        let aa = self.alpha * a.vec();
        let bb = self.beta * b.vec();
        (aa + bb, aa - bb)
    }
}

/// Largest `β` for which `(α, β)` saturates the trade-off at angle `eta`:
/// `β² = (1 − α²) / (1 − α² cos² η)`.
///
/// At `α = 1` and `η ∈ {0, π}` every `β` saturates and 1 is returned.
pub fn max_beta(alpha: f64, eta: f64) -> Result<f64> {
    let alpha = check_unit_interval("alpha", alpha)?;
    let eta = check_angle(eta)?;
    let a2 = alpha * alpha;
    let cos = eta.cos();
    let denom = 1.0 - a2 * cos * cos;
    if denom <= 1e-15 {
        return Ok(1.0);
    }
    Ok(((1.0 - a2) / denom).clamp(0.0, 1.0).sqrt())
}

/// Optimal equal sharpness `α = β = √(1/(1+|sin η|))`.
pub fn equal_sharpness(eta: f64) -> f64 {
    (1.0 / (1.0 + eta.sin().abs())).sqrt()
}

/// Full specification of the optimal two-axis joint measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointScheme {
    pub a: UnitVector3,
    pub b: UnitVector3,
    pub sharpness: SharpnessPair,
    pub m: UnitVector3,
    pub l: UnitVector3,
    /// Probability of measuring along `m`.
    pub p: f64,
}

/// Builds the optimal scheme for `(α, β)` on the saturation frontier.
///
/// Rejects pairs beyond the frontier, pairs strictly inside it, and
/// geometries where `p ∈ {0, 1}` leaves one axis undefined.
pub fn build_scheme(a: UnitVector3, b: UnitVector3, alpha: f64, beta: f64) -> Result<JointScheme> {
    JointScheme::build(a, b, alpha, beta, false)
}

/// Like [`build_scheme`], but closes the degenerate endpoints: when
/// `p ∈ {0, 1}` the undefined axis is set to some unit vector orthogonal to
/// the defined one. It carries zero weight, so all distributions stay valid.
pub fn build_scheme_closed(
    a: UnitVector3,
    b: UnitVector3,
    alpha: f64,
    beta: f64,
) -> Result<JointScheme> {
    JointScheme::build(a, b, alpha, beta, true)
}

impl JointScheme {
    fn build(
        a: UnitVector3,
        b: UnitVector3,
        alpha: f64,
        beta: f64,
        allow_degenerate: bool,
    ) -> Result<Self> {
        let sharpness = SharpnessPair::new(alpha, beta)?;
        let (plus, minus) = sharpness.scaled_sum_diff(a, b);
        let total = plus.norm() + minus.norm();
        if total > 2.0 + SHARPNESS_TOL {
            return Err(Error::SharpnessViolation(total));
        }
        if total < 2.0 - SATURATION_TOL {
            return Err(Error::NotOptimal(total));
        }
        let p = 0.5 * plus.norm();
        let q = 0.5 * minus.norm();

        let m_defined = p > DEGENERATE_P_TOL;
        let l_defined = q > DEGENERATE_P_TOL;
        let (m, l) = match (m_defined, l_defined) {
            (true, true) => {
                let m = (1.0 / (2.0 * p)) * plus;
                let l = (1.0 / (2.0 * (1.0 - p))) * minus;
                (UnitVector3::normalize(m)?, UnitVector3::normalize(l)?)
            }
            _ if !allow_degenerate => return Err(Error::DegenerateScheme(p)),
            (true, false) => {
                let m = UnitVector3::normalize(plus)?;
                (m, m.any_orthogonal())
            }
            (false, true) => {
                let l = UnitVector3::normalize(minus)?;
                (l.any_orthogonal(), l)
            }
            (false, false) => return Err(Error::DegenerateScheme(p)),
        };
        Ok(Self {
            a,
            b,
            sharpness,
            m,
            l,
            p: p.clamp(0.0, 1.0),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.sharpness.alpha
    }

    pub fn beta(&self) -> f64 {
        self.sharpness.beta
    }

    /// Angle between the target axes `a` and `b`.
    pub fn eta(&self) -> f64 {
        angle_between(self.a, self.b)
    }

    /// True when `p` sits at 0 or 1 and one axis is a placeholder.
    pub fn is_degenerate(&self) -> bool {
        self.p <= DEGENERATE_P_TOL || 1.0 - self.p <= DEGENERATE_P_TOL
    }

    /// Probabilities of the four joint outcomes for `state`.
    pub fn joint_distribution(&self, state: &BlochState) -> JointDistribution {
        let mc = state.expectation(self.m);
        let lc = state.expectation(self.l);
        let q = 1.0 - self.p;
        JointDistribution {
            p_pp: self.p * 0.5 * (1.0 + mc),
            p_pm: q * 0.5 * (1.0 + lc),
            p_mp: q * 0.5 * (1.0 - lc),
            p_mm: self.p * 0.5 * (1.0 - mc),
        }
    }

    /// Marginal outcome distributions `(P^{αa}_±, P^{βb}_±)`.
    pub fn marginal_distributions(&self, state: &BlochState) -> (ProbVector, ProbVector) {
        let (ta, tb) = self.joint_expectations(state);
        let to_prob = |t: f64| {
            ProbVector::new(vec![0.5 * (1.0 + t), 0.5 * (1.0 - t)])
                .expect("marginal of a valid state is a distribution")
        };
        (to_prob(ta), to_prob(tb))
    }

    /// Jointly measured expectation values `(α a·c, β b·c)`.
    pub fn joint_expectations(&self, state: &BlochState) -> (f64, f64) {
        (
            self.alpha() * state.expectation(self.a),
            self.beta() * state.expectation(self.b),
        )
    }

    /// Marginal POM elements `[Π^{αa}_+, Π^{αa}_−, Π^{βb}_+, Π^{βb}_−]`.
    pub fn pom_elements(&self) -> [PomElement; 4] {
        let half_a = 0.5 * self.alpha();
        let half_b = 0.5 * self.beta();
        [
            PomElement::new(0.5, half_a * self.a.vec()),
            PomElement::new(0.5, -half_a * self.a.vec()),
            PomElement::new(0.5, half_b * self.b.vec()),
            PomElement::new(0.5, -half_b * self.b.vec()),
        ]
    }
}

/// Joint outcome probabilities; index order `(+,+), (+,−), (−,+), (−,−)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointDistribution {
    pub p_pp: f64,
    pub p_pm: f64,
    pub p_mp: f64,
    pub p_mm: f64,
}

impl JointDistribution {
    pub fn cells(&self) -> [f64; 4] {
        [self.p_pp, self.p_pm, self.p_mp, self.p_mm]
    }

    pub fn from_cells(cells: [f64; 4]) -> Self {
        Self {
            p_pp: cells[0],
            p_pm: cells[1],
            p_mp: cells[2],
            p_mm: cells[3],
        }
    }

    pub fn total(&self) -> f64 {
        self.cells().iter().sum()
    }

    pub fn to_prob_vector(&self) -> Result<ProbVector> {
        ProbVector::new(self.cells().to_vec())
    }

    /// `(P(A=+), P(A=−))` by summing over B.
    pub fn marginal_a(&self) -> [f64; 2] {
        [self.p_pp + self.p_pm, self.p_mp + self.p_mm]
    }

    /// `(P(B=+), P(B=−))` by summing over A.
    pub fn marginal_b(&self) -> [f64; 2] {
        [self.p_pp + self.p_mp, self.p_pm + self.p_mm]
    }
}

/// Qubit effect `t·1 + v·σ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PomElement {
    pub weight: f64,
    pub vector: Vec3,
}

impl PomElement {
    pub fn new(weight: f64, vector: Vec3) -> Self {
        Self { weight, vector }
    }

    /// Positive semidefinite iff `t ≥ |v|`.
    pub fn is_positive(&self) -> bool {
        self.weight >= self.vector.norm() - POSITIVITY_TOL
    }

    /// Rank-one projector, up to tolerance.
    pub fn is_projector(&self) -> bool {
        (self.weight - 0.5).abs() <= POSITIVITY_TOL
            && (self.vector.norm() - 0.5).abs() <= POSITIVITY_TOL
    }

    /// `tr(Π ρ) = t + v·c`.
    pub fn probability(&self, state: &BlochState) -> f64 {
        self.weight + self.vector.dot(state.bloch())
    }
}
