//! Numerical oracles: exhaustive minimisation of entropy functionals over pure
//! states, and the critical-angle root finder.
//!
//! The planar minimiser evaluates a dense grid on the great circle through
//! `a` and `b`, then polishes every grid basin by golden-section search. The
//! spherical minimiser does the same on a polar/azimuth grid with Nelder–Mead
//! polishing and exists to confirm that restricting to the plane loses
//! nothing. Neither uses random restarts, so results are deterministic.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use serde::Serialize;

use crate::bounds::marginal_entropies;
use crate::bounds::marginal_entropy_sum;
use crate::exec::Exec;
use crate::geometry::{canonical_axes, BlochState, PlanarFrame};
use crate::measurement::{build_scheme_closed, equal_sharpness};
use crate::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Bracket searched for the equal-sharpness critical angle.
pub const EQUAL_SHARPNESS_BRACKET: (f64, f64) = (1.0, 1.6);

/// Default bisection tolerance on `η` for the critical angle.
pub const ETA_PRIME_TOL: f64 = 1e-8;

/// Half-step of the symmetric difference used to centre a refined minimum.
const CENTRING_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy)]
pub struct PlanarOptions {
    /// Number of coarse grid points on `[0, 2π)`.
    pub grid_n: usize,
    /// Golden-section stops once the bracket is narrower than this (radians).
    pub refine_tol: f64,
    /// Minima within this of the global value count as degenerate.
    pub value_tol: f64,
    /// Degenerate minima closer than this (radians) are merged.
    pub angle_tol: f64,
    pub exec: Exec,
}

impl Default for PlanarOptions {
    fn default() -> Self {
        Self {
            grid_n: 2048,
            refine_tol: 1e-10,
            value_tol: 1e-7,
            angle_tol: 1e-3,
            exec: Exec::default(),
        }
    }
}

impl PlanarOptions {
    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SphereOptions {
    /// Grid points per angle.
    pub grid_n: usize,
    /// Number of best grid basins polished by Nelder–Mead.
    pub max_starts: usize,
    pub exec: Exec,
}

impl Default for SphereOptions {
    fn default() -> Self {
        Self {
            grid_n: 96,
            max_starts: 12,
            exec: Exec::default(),
        }
    }
}

/// Outcome of a minimisation over pure states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizationResult {
    /// Planar: angle from `a` toward `b`. Spherical: polar angle from the
    /// plane normal.
    pub theta_star: f64,
    /// Spherical only: azimuth in the `a`–`b` plane, measured from `a`.
    pub phi_star: Option<f64>,
    /// Global minimum value found.
    pub value: f64,
    pub state: BlochState,
    /// Every global minimiser (within the value tolerance), sorted by angle.
    /// For the spherical search these are azimuths.
    pub all_minima: Vec<f64>,
}

impl MinimizationResult {
    /// Minimisers identified modulo `c → −c`, folded into `[0, π)`.
    ///
    /// Every outcome entropy of a two-outcome spin measurement is invariant
    /// under that flip, so antipodal minimisers describe the same optimum.
    /// Angles within `angle_tol` below π are reported just below zero
    /// instead, so the state along `a` reads as ≈0 rather than ≈π.
    pub fn distinct_up_to_sign(&self, angle_tol: f64) -> Vec<f64> {
        let mut folded: Vec<f64> = Vec::new();
        for &theta in &self.all_minima {
            let mut t = theta.rem_euclid(PI);
            if PI - t <= angle_tol {
                t -= PI;
            }
            if !folded
                .iter()
                .any(|&f| circular_distance(f, t, PI) <= angle_tol)
            {
                folded.push(t);
            }
        }
        folded.sort_by(f64::total_cmp);
        folded
    }
}

fn circular_distance(x: f64, y: f64, period: f64) -> f64 {
    let d = (x - y).rem_euclid(period);
    d.min(period - d)
}

/// Golden-section search on `[lo, hi]`, returning the best point evaluated.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
            if f1 < best.1 {
                best = (x1, f1);
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
            if f2 < best.1 {
                best = (x2, f2);
            }
        }
    }
    best
}

/// Moves `x` to the root of `f(x+h) − f(x−h)` nearby.
///
/// Golden-section cannot resolve a minimum more finely than the width of the
/// region where `f` is flat to rounding; the symmetric difference still
/// changes sign there. Returns `None` if no sign change is found within
/// `max_width`.
fn centre_minimum<F: Fn(f64) -> f64>(f: &F, x: f64, max_width: f64) -> Option<f64> {
    let h = CENTRING_STEP.min(0.25 * max_width);
    let slope = |t: f64| f(t + h) - f(t - h);
    let mut w = 1e-10;
    while w <= max_width {
        let (lo, hi) = (x - w, x + w);
        let (slo, shi) = (slope(lo), slope(hi));
        if slo < 0.0 && shi > 0.0 {
            let (mut lo, mut hi) = (lo, hi);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if slope(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        w *= 4.0;
    }
    None
}

/// Global minimum of `objective` over pure states on the great circle of
/// `frame`, parameterised by the angle from `a` toward `b` in `[0, 2π)`.
pub fn minimize_planar<F>(
    objective: F,
    frame: &PlanarFrame,
    opts: &PlanarOptions,
) -> MinimizationResult
where
    F: Fn(&BlochState) -> f64 + Sync + Send,
{
    let n = opts.grid_n.max(8);
    let step = TAU / n as f64;
    let f = |theta: f64| objective(&frame.state(theta));
    let grid: Vec<f64> = opts.exec.map(n, |i| f(step * i as f64));

    let mut basins: Vec<usize> = (0..n)
        .filter(|&i| {
            let prev = grid[(i + n - 1) % n];
            let next = grid[(i + 1) % n];
            grid[i] <= prev && grid[i] < next
        })
        .collect();
    if basins.is_empty() {
        // Constant along the whole circle.
        basins.push(0);
    }

    let refined: Vec<(f64, f64)> = opts.exec.map(basins.len(), |k| {
        let i = basins[k];
        let centre = step * i as f64;
        let (theta, value) = golden_section(f, centre - step, centre + step, opts.refine_tol);
        let (mut theta, mut value) = if grid[i] <= value {
            (centre, grid[i])
        } else {
            (theta, value)
        };
        if let Some(c) = centre_minimum(&f, theta, 0.5 * step) {
            let fc = f(c);
            if fc <= value + 1e-13 * value.abs().max(1.0) {
                theta = c;
                value = value.min(fc);
            }
        }
        (theta.rem_euclid(TAU), value)
    });

    let best = refined
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::INFINITY, f64::min);

    let mut minima: Vec<(f64, f64)> = refined
        .iter()
        .copied()
        .filter(|&(_, v)| v <= best + opts.value_tol)
        .collect();
    minima.sort_by(|x, y| x.1.total_cmp(&y.1));
    let mut distinct: Vec<(f64, f64)> = Vec::new();
    for (theta, v) in minima {
        if !distinct
            .iter()
            .any(|&(t, _)| circular_distance(t, theta, TAU) <= opts.angle_tol)
        {
            distinct.push((theta, v));
        }
    }
    distinct.sort_by(|x, y| x.0.total_cmp(&y.0));

    let theta_star = distinct[0].0;
    MinimizationResult {
        theta_star,
        phi_star: None,
        value: best,
        state: frame.state(theta_star),
        all_minima: distinct.iter().map(|&(t, _)| t).collect(),
    }
}

fn sphere_state(frame: &PlanarFrame, polar: f64, azimuth: f64) -> BlochState {
    let (sp, cp) = polar.sin_cos();
    let (sa, ca) = azimuth.sin_cos();
    let c = (sp * ca) * frame.a.vec() + (sp * sa) * frame.e.vec() + cp * frame.normal.vec();
    BlochState::new(c).expect("unit vector is a pure state")
}

/// Nelder–Mead on two variables from `start` with initial edge `scale`.
fn nelder_mead<F: Fn([f64; 2]) -> f64>(f: F, start: [f64; 2], scale: f64) -> ([f64; 2], f64) {
    let mut simplex = [
        start,
        [start[0] + scale, start[1]],
        [start[0], start[1] + scale],
    ];
    let mut values = simplex.map(&f);
    let comb =
        |p: [f64; 2], q: [f64; 2], t: f64| [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])];

    for _ in 0..5000 {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);

        let size = (simplex[1][0] - simplex[0][0])
            .abs()
            .max((simplex[1][1] - simplex[0][1]).abs())
            .max((simplex[2][0] - simplex[0][0]).abs())
            .max((simplex[2][1] - simplex[0][1]).abs());
        if size < 1e-11 {
            break;
        }

        let centroid = comb(simplex[0], simplex[1], 0.5);
        let reflected = comb(simplex[2], centroid, 2.0);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = comb(simplex[2], centroid, 3.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let contracted = if fr < values[2] {
                comb(simplex[2], centroid, 1.5)
            } else {
                comb(simplex[2], centroid, 0.5)
            };
            let fc = f(contracted);
            if fc < values[2].min(fr) {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                for k in 1..3 {
                    simplex[k] = comb(simplex[0], simplex[k], 0.5);
                    values[k] = f(simplex[k]);
                }
            }
        }
    }
    let k = (0..3)
        .min_by(|&i, &j| values[i].total_cmp(&values[j]))
        .unwrap_or(0);
    (simplex[k], values[k])
}

/// Global minimum of `objective` over the whole pure-state sphere.
///
/// The sphere is parameterised with its pole on the plane normal of `frame`
/// and azimuth measured from `a` toward `b`, so planar states sit on the
/// equator.
pub fn minimize_sphere<F>(
    objective: F,
    frame: &PlanarFrame,
    opts: &SphereOptions,
) -> MinimizationResult
where
    F: Fn(&BlochState) -> f64 + Sync + Send,
{
    let n = opts.grid_n.max(8);
    let d_polar = PI / n as f64;
    let d_az = TAU / n as f64;
    let polar_at = |i: usize| (i as f64 + 0.5) * d_polar;
    let az_at = |j: usize| j as f64 * d_az;
    let f = |polar: f64, az: f64| objective(&sphere_state(frame, polar, az));

    let grid: Vec<f64> = opts.exec.map(n * n, |k| f(polar_at(k / n), az_at(k % n)));
    let at = |i: usize, j: usize| grid[i * n + j];

    let mut starts: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = at(i, j);
            let mut is_min = true;
            'nbr: for di in [-1i64, 0, 1] {
                for dj in [-1i64, 0, 1] {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ii = i as i64 + di;
                    if ii < 0 || ii >= n as i64 {
                        continue;
                    }
                    let jj = (j as i64 + dj).rem_euclid(n as i64) as usize;
                    let w = at(ii as usize, jj);
                    // Strict on one side so plateaus yield a single start.
                    if w < v || (w == v && (di, dj) < (0, 0)) {
                        is_min = false;
                        break 'nbr;
                    }
                }
            }
            if is_min {
                starts.push((i, j));
            }
        }
    }
    if starts.is_empty() {
        starts.push((0, 0));
    }
    starts.sort_by(|&(i1, j1), &(i2, j2)| at(i1, j1).total_cmp(&at(i2, j2)));
    starts.truncate(opts.max_starts.max(1));

    let refined: Vec<([f64; 2], f64)> = opts.exec.map(starts.len(), |k| {
        let (i, j) = starts[k];
        let start = [polar_at(i), az_at(j)];
        let (x, v) = nelder_mead(|x| f(x[0], x[1]), start, 0.5 * d_polar);
        if at(i, j) <= v {
            (start, at(i, j))
        } else {
            (x, v)
        }
    });

    let (best_x, best_v) = refined
        .iter()
        .copied()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("at least one start");
    let mut azimuths: Vec<f64> = refined
        .iter()
        .filter(|&&(_, v)| v <= best_v + 1e-7)
        .map(|&(x, _)| x[1].rem_euclid(TAU))
        .collect();
    azimuths.sort_by(f64::total_cmp);
    azimuths.dedup_by(|x, y| circular_distance(*x, *y, TAU) <= 1e-3);

    MinimizationResult {
        theta_star: best_x[0],
        phi_star: Some(best_x[1].rem_euclid(TAU)),
        value: best_v,
        state: sphere_state(frame, best_x[0], best_x[1]),
        all_minima: azimuths,
    }
}

/// Second derivative of `H(A_J) + H(B_J)` along the planar angle at the
/// bisector `θ = η/2`, for equal sharpness `α` (bits per radian²).
pub fn second_derivative_at_bisector(alpha: f64, eta: f64) -> f64 {
    let (s, c) = (0.5 * eta).sin_cos();
    let ac = alpha * c;
    let log_ratio = (1.0 - ac).ln() - (1.0 + ac).ln();
    -alpha / std::f64::consts::LN_2 * (c * log_ratio + 2.0 * alpha * s * s / (1.0 - ac * ac))
}

/// How the sharpness is chosen as a function of `η` when searching for the
/// critical angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "rule", content = "alpha", rename_all = "kebab-case")]
pub enum AlphaRule {
    /// `α = √(1/(1+|sin η|))`.
    EqualSharpness,
    Fixed(f64),
}

impl AlphaRule {
    pub fn alpha(&self, eta: f64) -> f64 {
        match *self {
            AlphaRule::EqualSharpness => equal_sharpness(eta),
            AlphaRule::Fixed(alpha) => alpha,
        }
    }

    pub fn default_bracket(&self) -> Option<(f64, f64)> {
        match self {
            AlphaRule::EqualSharpness => Some(EQUAL_SHARPNESS_BRACKET),
            AlphaRule::Fixed(_) => None,
        }
    }
}

/// A root of the bisector second derivative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaPrime {
    pub eta: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Bisection root of `η ↦ second_derivative_at_bisector(rule(η), η)` on
/// `[lo, hi]`.
pub fn find_eta_prime_in(rule: AlphaRule, lo: f64, hi: f64, tol: f64) -> Result<EtaPrime> {
    let g = |eta: f64| second_derivative_at_bisector(rule.alpha(eta), eta);
    let (mut a, mut b) = (lo, hi);
    let (ga, gb) = (g(a), g(b));
    if !(ga.is_finite() && gb.is_finite()) || ga.signum() == gb.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let mut iterations = 0;
    while b - a > tol && iterations < 200 {
        let mid = 0.5 * (a + b);
        let gm = g(mid);
        if gm == 0.0 {
            a = mid;
            b = mid;
            break;
        }
        if gm.signum() == ga.signum() {
            a = mid;
        } else {
            b = mid;
        }
        iterations += 1;
    }
    Ok(EtaPrime {
        eta: 0.5 * (a + b),
        bracket: (lo, hi),
        iterations,
    })
}

/// Critical angle for `rule`.
///
/// Uses the rule's default bracket when it has one, otherwise the first
/// sign change of a 100-point scan over `(0, π)`.
pub fn find_eta_prime(rule: AlphaRule) -> Result<EtaPrime> {
    if let Some((lo, hi)) = rule.default_bracket() {
        return find_eta_prime_in(rule, lo, hi, ETA_PRIME_TOL);
    }
    let (lo, hi) = sign_change_bracket(rule, 100).ok_or(Error::NoSignChange { lo: 0.0, hi: PI })?;
    find_eta_prime_in(rule, lo, hi, ETA_PRIME_TOL)
}

/// First adjacent pair of a uniform scan over `[0.01, π − 0.01]` where the
/// bisector second derivative changes sign.
pub fn sign_change_bracket(rule: AlphaRule, points: usize) -> Option<(f64, f64)> {
    let (lo, hi) = (0.01, PI - 0.01);
    let etas: Vec<f64> = (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect();
    etas.windows(2).find_map(|w| {
        let (g0, g1) = (
            second_derivative_at_bisector(rule.alpha(w[0]), w[0]),
            second_derivative_at_bisector(rule.alpha(w[1]), w[1]),
        );
        (g0.is_finite() && g1.is_finite() && g0.signum() != g1.signum()).then_some((w[0], w[1]))
    })
}

/// Equal-sharpness critical angle `η′`, computed once.
pub fn critical_angle() -> f64 {
    static ETA_PRIME: OnceLock<f64> = OnceLock::new();
    *ETA_PRIME.get_or_init(|| {
        let (lo, hi) = EQUAL_SHARPNESS_BRACKET;
        find_eta_prime_in(AlphaRule::EqualSharpness, lo, hi, 1e-13)
            .expect("equal-sharpness bracket contains a sign change")
            .eta
    })
}

/// A marginal-entropy minimiser with its two marginal entropies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Minimizer {
    pub theta: f64,
    pub h_a: f64,
    pub h_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BifurcationScan {
    pub eta: f64,
    pub alpha: f64,
    pub value: f64,
    /// Minimisers of `H(A_J) + H(B_J)` up to `c → −c`, sorted by angle.
    pub minimizers: Vec<Minimizer>,
    pub bifurcated: bool,
}

/// Locates the minimisers of `H(A_J) + H(B_J)` at equal optimal sharpness.
///
/// Inside `(η′, π − η′)` two distinct minimisers are expected; elsewhere a
/// single one is returned and `bifurcated` is false.
pub fn bifurcation_scan(eta: f64, opts: &PlanarOptions) -> Result<BifurcationScan> {
    let (a, b) = canonical_axes(eta);
    let alpha = equal_sharpness(eta);
    let scheme = build_scheme_closed(a, b, alpha, alpha)?;
    let frame = PlanarFrame::new_or_any(a, b);
    let result = minimize_planar(|c| marginal_entropy_sum(&scheme, c), &frame, opts);
    let minimizers: Vec<Minimizer> = result
        .distinct_up_to_sign(opts.angle_tol)
        .into_iter()
        .map(|theta| {
            let (h_a, h_b) = marginal_entropies(&scheme, &frame.state(theta));
            Minimizer { theta, h_a, h_b }
        })
        .collect();
    Ok(BifurcationScan {
        eta,
        alpha,
        value: result.value,
        bifurcated: minimizers.len() >= 2,
        minimizers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{joint_entropy, unsharp_entropy_sum};
    use crate::geometry::UnitVector3;
    use crate::measurement::build_scheme;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn equal_setup(eta: f64) -> (crate::JointScheme, PlanarFrame) {
        let (a, b) = canonical_axes(eta);
        let alpha = equal_sharpness(eta);
        (
            build_scheme(a, b, alpha, alpha).unwrap(),
            PlanarFrame::new(a, b).unwrap(),
        )
    }

    #[test]
    fn golden_section_parabola() {
        let (x, v) = golden_section(|x| (x - 0.3).powi(2) + 1.0, -1.0, 2.0, 1e-10);
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-8);
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn marginal_minimum_at_bisector_below_critical_angle() {
        let (s, frame) = equal_setup(1.0);
        let r = minimize_planar(
            |c| marginal_entropy_sum(&s, c),
            &frame,
            &PlanarOptions::default(),
        );
        assert_abs_diff_eq!(r.theta_star, 0.5, epsilon = 1e-5);
        assert_eq!(r.distinct_up_to_sign(1e-3).len(), 1);
    }

    #[test]
    fn marginal_minimum_at_complementary_angle() {
        let (s, frame) = equal_setup(FRAC_PI_2);
        let r = minimize_planar(
            |c| marginal_entropy_sum(&s, c),
            &frame,
            &PlanarOptions::default(),
        );
        let folded = r.distinct_up_to_sign(1e-3);
        assert_eq!(folded.len(), 2);
        assert_abs_diff_eq!(folded[0], 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(folded[1], FRAC_PI_2, epsilon = 1e-6);
    }

    #[test]
    fn joint_minimum_at_m_eigenstate() {
        let eta = 1.2;
        let (s, frame) = equal_setup(eta);
        let r = minimize_planar(|c| joint_entropy(&s, c), &frame, &PlanarOptions::default());
        assert_abs_diff_eq!(r.theta_star, eta / 2.0, epsilon = 1e-7);
        let bound = crate::bounds::joint_bound_equal_sharpness(s.alpha(), s.a, s.b).unwrap();
        assert_abs_diff_eq!(r.value, bound, epsilon = 1e-12);
    }

    #[test]
    fn planar_is_deterministic_and_refines_downhill() {
        let (a, b) = canonical_axes(2.1);
        let beta = crate::measurement::max_beta(0.35, 2.1).unwrap();
        let s = build_scheme(a, b, 0.35, beta).unwrap();
        let frame = PlanarFrame::new(a, b).unwrap();
        let opts = PlanarOptions::default();
        let r1 = minimize_planar(|c| joint_entropy(&s, c), &frame, &opts);
        let r2 = minimize_planar(
            |c| joint_entropy(&s, c),
            &frame,
            &opts.with_exec(Exec::Sequential),
        );
        assert_eq!(r1, r2);
        let coarse = (0..opts.grid_n)
            .map(|i| joint_entropy(&s, &frame.state(TAU * i as f64 / opts.grid_n as f64)))
            .fold(f64::INFINITY, f64::min);
        assert!(r1.value <= coarse);
    }

    #[test]
    fn sphere_agrees_with_plane() {
        let (s, frame) = equal_setup(1.3);
        let planar = minimize_planar(
            |c| marginal_entropy_sum(&s, c),
            &frame,
            &PlanarOptions::default(),
        );
        let sphere = minimize_sphere(
            |c| marginal_entropy_sum(&s, c),
            &frame,
            &SphereOptions::default(),
        );
        assert_abs_diff_eq!(planar.value, sphere.value, epsilon = 1e-6);
        assert!(sphere.value >= planar.value - 1e-9);
    }

    #[test]
    fn sphere_commuting_case_reaches_zero() {
        let a = UnitVector3::Z;
        let frame = PlanarFrame::new_or_any(a, a);
        let r = minimize_sphere(
            |c| unsharp_entropy_sum(1.0, a, 1.0, a, c),
            &frame,
            &SphereOptions::default(),
        );
        assert!(r.value < 1e-9);
        assert_abs_diff_eq!(r.state.bloch().dot(a.vec()).abs(), 1.0, epsilon = 1e-6);
    }

    #[test]
    fn second_derivative_signs() {
        assert!(second_derivative_at_bisector(equal_sharpness(0.3), 0.3) > 0.0);
        assert!(second_derivative_at_bisector(equal_sharpness(1.47), 1.47) < 0.0);
    }

    #[test]
    fn equal_sharpness_critical_angle() {
        let root = find_eta_prime(AlphaRule::EqualSharpness).unwrap();
        assert_abs_diff_eq!(root.eta, 1.46117, epsilon = 1e-4);
        assert_eq!(root.bracket, EQUAL_SHARPNESS_BRACKET);
        assert_abs_diff_eq!(critical_angle(), root.eta, epsilon = 1e-8);
    }

    #[test]
    fn fixed_rules_scan_for_a_bracket() {
        let half = find_eta_prime(AlphaRule::Fixed(0.5)).unwrap();
        assert!(half.eta > 0.0 && half.eta < PI);
        let g = |eta: f64| second_derivative_at_bisector(0.5, eta);
        assert!(g(half.eta - 1e-3) > 0.0 && g(half.eta + 1e-3) < 0.0);
        assert!(matches!(
            find_eta_prime(AlphaRule::Fixed(0.0)),
            Err(Error::NoSignChange { .. })
        ));
        assert!(matches!(
            find_eta_prime_in(AlphaRule::EqualSharpness, 0.2, 0.8, 1e-8),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn bifurcation_flags() {
        let opts = PlanarOptions::default();
        let below = bifurcation_scan(1.0, &opts).unwrap();
        assert!(!below.bifurcated);
        assert_abs_diff_eq!(below.minimizers[0].theta, 0.5, epsilon = 1e-5);
        let at = bifurcation_scan(FRAC_PI_2, &opts).unwrap();
        assert!(at.bifurcated);
        assert_eq!(at.minimizers.len(), 2);
        let m = &at.minimizers;
        assert_abs_diff_eq!(m[0].h_a, m[1].h_b, epsilon = 1e-9);
        let endpoint = bifurcation_scan(0.0, &opts).unwrap();
        assert!(!endpoint.bifurcated);
        assert!(endpoint.value < 1e-9);
    }
}
