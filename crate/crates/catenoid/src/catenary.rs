//! Generating curves of the spherical catenoids.
//!
//! The curve with neck distance `lambda` is the graph `x(y)`, `y >= lambda`,
//! of
//!
//! ```text
//! x(y) = int_lambda^y sinh(2 lambda) / (cosh t sqrt(sinh^2 2t - sinh^2 2 lambda)) dt
//! ```
//!
//! mirrored across the `y`-axis. The module evaluates the profile and its
//! tangent direction, samples curves with arc-length grading, finds pairwise
//! intersections of two curves, and traces the envelope of the family
//! numerically (the locus where the profile is stationary in `lambda`).

use crate::error::{Error, Result};
use crate::hgeom::{halfdisk_to_ball, BallPoint, HalfDiskPoint};
use crate::quad::{find_root, integrate_sqrt_singular_offset, QuadConfig};
use crate::separation::profile_integrand;

/// A generating curve, keyed by the neck distance `lambda > 0` (the
/// hyperbolic distance from the rotation axis to the closest curve point).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Catenary {
    lambda: f64,
}

impl Catenary {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Domain(format!(
                "catenary neck parameter must be positive and finite, got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Axial coordinate of the curve point at distance `y >= lambda` from
    /// the axis. Strictly increasing in `y`, zero at the neck, and bounded
    /// by the boundary-separation limit.
    pub fn profile_x(&self, y: f64, cfg: &QuadConfig) -> Result<f64> {
        if !(y >= self.lambda) || !y.is_finite() {
            return Err(Error::Domain(format!(
                "profile needs y >= lambda = {}, got {y}",
                self.lambda
            )));
        }
        if y == self.lambda {
            return Ok(0.0);
        }
        let lambda = self.lambda;
        Ok(
            integrate_sqrt_singular_offset(|t| profile_integrand(t, lambda), y - lambda, cfg)?
                .value,
        )
    }

    /// Sine of the angle between the curve tangent and the radial direction:
    /// `sin alpha = sinh(2 lambda) / sinh(2 y)`. Equals 1 exactly at the
    /// neck and decreases to 0 as `y` grows.
    pub fn tangent_angle_sin(&self, y: f64) -> Result<f64> {
        if !(y >= self.lambda) || !y.is_finite() {
            return Err(Error::Domain(format!(
                "tangent needs y >= lambda = {}, got {y}",
                self.lambda
            )));
        }
        // Scaled form e^{2(lambda - y)} (1 - e^{-4 lambda}) / (1 - e^{-4 y}):
        // exact 1 at the neck, no overflow for large y.
        let num = -(-4.0 * self.lambda).exp_m1();
        let den = -(-4.0 * y).exp_m1();
        Ok((2.0 * (self.lambda - y)).exp() * num / den)
    }

    /// Sample one symmetric half of the curve at `n >= 2` radii graded
    /// toward the neck (quadratic spacing in `y - lambda`, which equalizes
    /// metric arc length against the `1/sqrt(y - lambda)` tangent blow-up).
    pub fn sample(&self, y_max: f64, n: usize, cfg: &QuadConfig) -> Result<CurveSample> {
        if !(y_max > self.lambda) || !y_max.is_finite() {
            return Err(Error::Domain(format!(
                "sampling needs y_max > lambda = {}, got {y_max}",
                self.lambda
            )));
        }
        if n < 2 {
            return Err(Error::Domain(format!("sampling needs n >= 2, got {n}")));
        }

        let mut half = Vec::with_capacity(n);
        for i in 0..n {
            let tau = i as f64 / (n - 1) as f64;
            let y = self.lambda + (y_max - self.lambda) * tau * tau;
            let x = self.profile_x(y, cfg)?;
            let hd = HalfDiskPoint { x, y };
            half.push(CurvePoint {
                halfdisk: hd,
                ball: halfdisk_to_ball(hd),
            });
        }
        for w in half.windows(2) {
            if !(w[1].halfdisk.x >= w[0].halfdisk.x) {
                return Err(Error::Inconclusive(format!(
                    "profile lost monotonicity near y = {}",
                    w[1].halfdisk.y
                )));
            }
        }
        Ok(CurveSample {
            lambda: self.lambda,
            half,
        })
    }
}

/// One sampled curve point in both coordinate systems.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub halfdisk: HalfDiskPoint,
    pub ball: BallPoint,
}

/// Samples along one symmetric half of a catenary (`y` increasing from the
/// neck, `x >= 0` nondecreasing, `x = 0` at the neck), with the mirrored
/// half available on demand.
#[derive(Debug, Clone)]
pub struct CurveSample {
    lambda: f64,
    half: Vec<CurvePoint>,
}

impl CurveSample {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The stored half, ordered by increasing `y`.
    pub fn half(&self) -> &[CurvePoint] {
        &self.half
    }

    /// The reflection `x -> -x` of the stored half (same ordering; the neck
    /// keeps an unsigned zero).
    pub fn mirrored_half(&self) -> Vec<CurvePoint> {
        let neg = |x: f64| if x == 0.0 { 0.0 } else { -x };
        self.half
            .iter()
            .map(|p| {
                let hd = HalfDiskPoint {
                    x: neg(p.halfdisk.x),
                    y: p.halfdisk.y,
                };
                CurvePoint {
                    halfdisk: hd,
                    ball: BallPoint {
                        u: neg(p.ball.u),
                        v: p.ball.v,
                    },
                }
            })
            .collect()
    }

    /// The full curve ordered by increasing `x`: the mirrored half walked
    /// down to the neck, then the stored half (neck listed once), for
    /// `2n - 1` points.
    pub fn full(&self) -> Vec<CurvePoint> {
        let mut out = self.mirrored_half();
        out.reverse();
        out.extend(self.half.iter().skip(1).copied());
        out
    }
}

/// Intersections of two full catenaries (both halves); transversal crossings
/// come in `±x` pairs, so the count is even.
#[derive(Debug, Clone)]
pub struct IntersectionReport {
    pub count: usize,
    pub points: Vec<HalfDiskPoint>,
    /// `|x_1(y) - x_2(y)|` at each reported point.
    pub residuals: Vec<f64>,
}

/// Find all intersections of the curves with necks `lambda1 < lambda2` by
/// scanning the profile difference on a geometric grid of 256 radii in
/// `[lambda2, y_search_max]` and refining each sign change with a bracketed
/// solve.
///
/// A difference that dips below resolution without changing sign is
/// reported as inconclusive (suspected tangency) rather than guessed.
pub fn intersect(
    lambda1: f64,
    lambda2: f64,
    y_search_max: f64,
    cfg: &QuadConfig,
) -> Result<IntersectionReport> {
    if !(lambda1 > 0.0) || !(lambda2 > lambda1) {
        return Err(Error::Domain(format!(
            "intersection needs 0 < lambda1 < lambda2, got {lambda1}, {lambda2}"
        )));
    }
    if !(y_search_max > lambda2) {
        return Err(Error::Domain(format!(
            "search ceiling must exceed lambda2 = {lambda2}, got {y_search_max}"
        )));
    }

    let c1 = Catenary::new(lambda1)?;
    let c2 = Catenary::new(lambda2)?;
    let mut delta = |y: f64| -> Result<f64> { Ok(c1.profile_x(y, cfg)? - c2.profile_x(y, cfg)?) };

    // Geometric offsets spanning six decades up to the ceiling.
    const N: usize = 256;
    let span = y_search_max - lambda2;
    let mut ys = Vec::with_capacity(N);
    let mut vals = Vec::with_capacity(N);
    for j in 0..N {
        let frac = j as f64 / (N - 1) as f64;
        let y = lambda2 + span * 10f64.powf(-6.0 * (1.0 - frac));
        ys.push(y);
        vals.push(delta(y)?);
    }

    // Values inside the quadrature noise floor carry no trustworthy sign
    // (two catenaries sharing an asymptotic boundary differ by ~e^{-3y} in
    // the tail, far below the profile accuracy); sign changes are only
    // accepted between consecutive values above the floor.
    let resolution = 1e3 * cfg.abs_tol;
    let mut roots: Vec<(f64, f64)> = Vec::new(); // (y*, residual)
    let mut prev_trusted: Option<usize> = None;
    for (j, &v) in vals.iter().enumerate() {
        if v.abs() < resolution {
            continue;
        }
        if let Some(i) = prev_trusted {
            if vals[i].signum() != v.signum() {
                let r = find_root(&mut delta, ys[i], ys[j], 1e-10)?;
                roots.push((r.root, r.residual));
            }
        }
        prev_trusted = Some(j);
    }

    if roots.is_empty() {
        let min_abs = vals.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        if min_abs < resolution {
            return Err(Error::Inconclusive(format!(
                "profile difference dips to {min_abs:.3e} without a trusted sign change \
                 (resolution {resolution:.1e}); tangency suspected"
            )));
        }
        return Ok(IntersectionReport {
            count: 0,
            points: Vec::new(),
            residuals: Vec::new(),
        });
    }

    let mut points = Vec::with_capacity(2 * roots.len());
    let mut residuals = Vec::with_capacity(2 * roots.len());
    for &(y, res) in &roots {
        let x = c1.profile_x(y, cfg)?;
        points.push(HalfDiskPoint { x, y });
        points.push(HalfDiskPoint { x: -x, y });
        residuals.push(res);
        residuals.push(res);
    }
    Ok(IntersectionReport {
        count: points.len(),
        points,
        residuals,
    })
}

/// A point where a member of the family touches the envelope.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopePoint {
    pub lambda: f64,
    pub point: HalfDiskPoint,
}

/// A grid `lambda` for which no touching point was found, with the reason.
#[derive(Debug, Clone)]
pub struct EnvelopeMiss {
    pub lambda: f64,
    pub reason: String,
}

/// Result of an envelope sweep: located touching points plus per-`lambda`
/// misses (no stationary radius, or a numerical failure) — a miss never
/// aborts the sweep.
#[derive(Debug, Clone)]
pub struct EnvelopeSweep {
    pub points: Vec<EnvelopePoint>,
    pub misses: Vec<EnvelopeMiss>,
}

/// Default step for the centered finite difference in `lambda`.
pub const ENVELOPE_FD_STEP: f64 = 1e-4;

/// Trace the envelope of the family over `n >= 3` equally spaced necks in
/// `[lambda_lo, lambda_hi]` with the default finite-difference step.
///
/// For each grid `lambda` the touching point is the radius where
/// `dx/dlambda (y; lambda)` changes sign (negative near the neck, positive
/// in the tail when the boundary separation is still increasing). Necks at
/// or beyond the separation maximum yield no sign change and produce no
/// point.
pub fn envelope(
    lambda_lo: f64,
    lambda_hi: f64,
    n_lambda: usize,
    cfg: &QuadConfig,
) -> Result<EnvelopeSweep> {
    envelope_with_step(lambda_lo, lambda_hi, n_lambda, ENVELOPE_FD_STEP, cfg)
}

/// [`envelope`] with an explicit centered-difference step (used by the
/// step-halving convergence check).
pub fn envelope_with_step(
    lambda_lo: f64,
    lambda_hi: f64,
    n_lambda: usize,
    fd_step: f64,
    cfg: &QuadConfig,
) -> Result<EnvelopeSweep> {
    if !(fd_step > 0.0) || !fd_step.is_finite() {
        return Err(Error::Domain(format!(
            "finite-difference step must be positive, got {fd_step}"
        )));
    }
    if !(lambda_lo > 2.0 * fd_step) || !(lambda_hi > lambda_lo) || !lambda_hi.is_finite() {
        return Err(Error::Domain(format!(
            "envelope grid needs 2*fd_step < lambda_lo < lambda_hi, got [{lambda_lo}, {lambda_hi}]"
        )));
    }
    if n_lambda < 3 {
        return Err(Error::Domain(format!(
            "envelope grid needs n >= 3, got {n_lambda}"
        )));
    }

    let mut points = Vec::new();
    let mut misses = Vec::new();
    for i in 0..n_lambda {
        let lambda = lambda_lo + (lambda_hi - lambda_lo) * i as f64 / (n_lambda - 1) as f64;
        match touching_point(lambda, fd_step, cfg) {
            Ok(Some(point)) => points.push(EnvelopePoint { lambda, point }),
            Ok(None) => misses.push(EnvelopeMiss {
                lambda,
                reason: "no stationary radius (no envelope contact)".into(),
            }),
            Err(e) => misses.push(EnvelopeMiss {
                lambda,
                reason: e.to_string(),
            }),
        }
    }
    Ok(EnvelopeSweep { points, misses })
}

/// Stationary radius of `x(y; lambda)` in `lambda`, if any: scans the
/// centered difference on a geometric grid of offsets above the neck and
/// refines the first sign change.
fn touching_point(lambda: f64, h: f64, cfg: &QuadConfig) -> Result<Option<HalfDiskPoint>> {
    let upper = Catenary::new(lambda + h)?;
    let lower = Catenary::new(lambda - h)?;
    let mut dxdl = |y: f64| -> Result<f64> {
        Ok((upper.profile_x(y, cfg)? - lower.profile_x(y, cfg)?) / (2.0 * h))
    };

    // Offsets above lambda + h, from a few steps of the difference stencil
    // out to where the profile has saturated.
    const SPAN: f64 = 12.0;
    const N: usize = 48;
    let base = lambda + h;
    let delta0 = 3.0 * h;
    let ratio = (SPAN / delta0).powf(1.0 / (N - 1) as f64);

    let mut prev_y = base + delta0;
    let mut prev = dxdl(prev_y)?;
    let mut delta = delta0;
    for _ in 1..N {
        delta *= ratio;
        let y = base + delta;
        let v = dxdl(y)?;
        if prev == 0.0 {
            let x = Catenary::new(lambda)?.profile_x(prev_y, cfg)?;
            return Ok(Some(HalfDiskPoint { x, y: prev_y }));
        }
        if prev.signum() != v.signum() {
            let r = find_root(&mut dxdl, prev_y, y, 1e-8)?;
            let x = Catenary::new(lambda)?.profile_x(r.root, cfg)?;
            return Ok(Some(HalfDiskPoint { x, y: r.root }));
        }
        prev_y = y;
        prev = v;
    }
    Ok(None)
}
