//! The boundary-separation function `d0` and its critical structure.
//!
//! `d0(lambda)` is half the asymptotic boundary separation of the catenoid
//! with neck distance `lambda`:
//!
//! ```text
//! d0(lambda) = int_lambda^inf sinh(2 lambda) / (cosh t sqrt(sinh^2 2t - sinh^2 2 lambda)) dt
//! ```
//!
//! computed here in the shifted form `t -> t + lambda` so the integrable
//! singularity always sits at the origin, with the difference of squares
//! factored as `sinh(2t + 4 lambda) sinh(2t)` to avoid cancellation. The
//! module locates the critical constants of the family (the zero of the
//! derivative, the sign-change brackets of the auxiliary function `phi`, and
//! the zeros of the curvature witnesses `w1`, `w2`), and solves the
//! two-catenoid boundary problem `d0(lambda) = d_L / 2`.

use crate::error::{Error, Result};
use crate::hgeom::CirclePairSeparation;
use crate::quad::{find_root, integrate_semi_infinite, maximize_unimodal, QuadConfig, TailPolicy};

/// Shifted, factored profile integrand: the value at offset `t >= 0` from
/// the neck, in exponent-scaled form so it stays finite for any `lambda`.
///
/// ```text
/// sqrt(2) (1 - e^{-4L}) e^{-L} e^{-2t}
/// ------------------------------------------------------
/// (1 + e^{-2(t+L)}) sqrt(1 - e^{-(4t+8L)}) sqrt(sinh 2t)
/// ```
pub(crate) fn profile_integrand(t: f64, lambda: f64) -> f64 {
    let one_m_e4l = -(-4.0 * lambda).exp_m1();
    let top = std::f64::consts::SQRT_2 * one_m_e4l * (-lambda).exp() * (-2.0 * t).exp();
    let a = 1.0 + (-2.0 * (t + lambda)).exp();
    let b = (-(-(4.0 * t + 8.0 * lambda)).exp_m1()).sqrt();
    top / (a * b * (2.0 * t).sinh().sqrt())
}

/// Tail majorant for [`profile_integrand`]: bounded by
/// `0.9 (1 - e^{-4L}) e^{-L} e^{-2t}` for `t >= 1` (true decay is `e^{-3t}`).
fn profile_tail(lambda: f64) -> TailPolicy {
    let coeff = 0.9 * -(-4.0 * lambda).exp_m1() * (-lambda).exp();
    TailPolicy::new(2.0, coeff.max(f64::MIN_POSITIVE), 1.0)
}

/// Half the asymptotic boundary separation of the catenoid with neck
/// distance `lambda`. Returns exactly 0 at `lambda = 0` (the degenerate
/// limit); rejects negative or non-finite input.
pub fn d0(lambda: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("d0 needs lambda >= 0, got {lambda}")));
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let cfg = cfg.with_tail(profile_tail(lambda));
    Ok(integrate_semi_infinite(|t| profile_integrand(t, lambda), 0.0, &cfg)?.value)
}

/// The elementary bound `d0(lambda) < pi / (4 cosh lambda)`.
pub fn d0_upper_bound(lambda: f64) -> f64 {
    std::f64::consts::FRAC_PI_4 / lambda.cosh()
}

/// Derivative integrand of `d0`, in exponent-scaled form:
///
/// ```text
///            sinh(t+L) (5 cosh^2(t+L) - cosh^2(t+3L))
/// h(t, L) =  -----------------------------------------------
///            cosh^2(t+L) sqrt(sinh 2t) sqrt(sinh^3(2t+4L))
/// ```
fn d0_prime_integrand(t: f64, lambda: f64) -> f64 {
    let e1sq = (-2.0 * (t + lambda)).exp(); // e^{-2(t+L)}
    let e3sq = (-2.0 * (t + 3.0 * lambda)).exp(); // e^{-2(t+3L)}
    let e24sq = (-(4.0 * t + 8.0 * lambda)).exp(); // e^{-2(2t+4L)}
    let p1 = 1.0 + e1sq;
    let bracket = 5.0 * p1 * p1 - (4.0 * lambda).exp() * (1.0 + e3sq) * (1.0 + e3sq);
    let top = std::f64::consts::SQRT_2 * (1.0 - e1sq) * bracket * (-(2.0 * t + 5.0 * lambda)).exp();
    top / (p1 * p1 * (1.0 - e24sq).powf(1.5) * (2.0 * t).sinh().sqrt())
}

fn d0_prime_tail(lambda: f64) -> TailPolicy {
    // |h(t, .)| <= 1.2 (5 e^{-5L} + e^{-L}) e^{-2t} for t >= 1.
    let coeff = 1.2 * (5.0 * (-5.0 * lambda).exp() + (-lambda).exp());
    TailPolicy::new(2.0, coeff, 1.0)
}

/// `d0'(lambda)`, from the explicit derivative integral (singular like
/// `1/sqrt(2t)` at the origin). Positive before the maximum of `d0`,
/// negative after it.
pub fn d0_prime(lambda: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("d0' needs lambda > 0, got {lambda}")));
    }
    let cfg = cfg.with_tail(d0_prime_tail(lambda));
    Ok(integrate_semi_infinite(|t| d0_prime_integrand(t, lambda), 0.0, &cfg)?.value)
}

/// `phi(t, lambda) = sqrt(5) cosh(t + lambda) - cosh(t + 3 lambda)`; its
/// sign controls the sign of `d0'`.
pub fn phi(t: f64, lambda: f64) -> f64 {
    5.0_f64.sqrt() * (t + lambda).cosh() - (t + 3.0 * lambda).cosh()
}

/// `h(lambda) = (sqrt(5) cosh lambda - cosh 3 lambda) / (sinh 3 lambda - sqrt(5) sinh lambda)`,
/// strictly decreasing on `(0, inf)`. The denominator vanishes only at
/// `lambda = 0`, where the analytic limit is `+inf`; that limit is returned.
pub fn h_of_lambda(lambda: f64) -> f64 {
    if lambda == 0.0 {
        return f64::INFINITY;
    }
    let s5 = 5.0_f64.sqrt();
    (s5 * lambda.cosh() - (3.0 * lambda).cosh()) / ((3.0 * lambda).sinh() - s5 * lambda.sinh())
}

/// Which reading of the mixed term in the curvature factor `r` to use: the
/// hyperbolic `sinh` reading (consistent with the closed form
/// `w1 = r(0, .)`) or the circular `sin` reading. Both are negative on
/// `(0, 10] x (0, Lambda5)`; only `Sinh` satisfies the `w1` identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RVariant {
    #[default]
    Sinh,
    Sin,
}

impl RVariant {
    pub fn label(self) -> &'static str {
        match self {
            RVariant::Sinh => "sinh",
            RVariant::Sin => "sin",
        }
    }
}

/// The curvature factor whose negativity on `[0, inf) x [0, Lambda5)`
/// forces `d0'' < 0` there.
pub fn r_factor(t: f64, lambda: f64, variant: RVariant) -> f64 {
    let mixed = match variant {
        RVariant::Sinh => (2.0 * t + 8.0 * lambda).sinh(),
        RVariant::Sin => (2.0 * t + 8.0 * lambda).sin(),
    };
    76.0 * (2.0 * lambda).sinh() - 22.0 * (2.0 * t).sinh()
        + 29.0 * (2.0 * t + 4.0 * lambda).sinh()
        + mixed
        - 26.0 * (4.0 * t + 6.0 * lambda).sinh()
        - 6.0 * (4.0 * t + 10.0 * lambda).sinh()
        - 25.0 * (6.0 * t + 8.0 * lambda).sinh()
        + (6.0 * t + 12.0 * lambda).sinh()
}

/// Closed form of `r(0, lambda)` (for the `sinh` reading):
/// `8 sinh(2L) cosh^2(L) (15 - 8 cosh 2L - 8 cosh 4L - 8 cosh 6L + cosh 8L)`.
pub fn w1(lambda: f64) -> f64 {
    let c = lambda.cosh();
    8.0 * (2.0 * lambda).sinh()
        * c
        * c
        * (15.0
            - 8.0 * (2.0 * lambda).cosh()
            - 8.0 * (4.0 * lambda).cosh()
            - 8.0 * (6.0 * lambda).cosh()
            + (8.0 * lambda).cosh())
}

/// Leading tail coefficient of `r`: `w2(lambda) = e^{12L} - 25 e^{8L}`,
/// whose zero is `Lambda5 = ln(5)/2`.
pub fn w2(lambda: f64) -> f64 {
    (12.0 * lambda).exp() - 25.0 * (8.0 * lambda).exp()
}

/// The located critical constants of the family.
#[derive(Debug, Clone, Copy)]
pub struct CriticalConstants {
    /// Below this, `phi(., lambda) > 0` (so `d0' > 0`): root of `h = 1`.
    pub lambda3: f64,
    /// Above this, `phi(., lambda) <= 0` (so `d0' < 0`): root of
    /// `sqrt(5) cosh = cosh 3.`; closed form `acosh(sqrt((3+sqrt 5)/4))`.
    pub lambda4: f64,
    /// Zero of `w2`: exactly `ln(5)/2`.
    pub lambda5: f64,
    /// Argmax of `d0` (unique zero of `d0'`), in `(lambda3, lambda4)`.
    pub lambda_d: f64,
    /// Maximum of `d0`.
    pub d0_max: f64,
    /// Largest boundary separation realized by the family: `2 d0_max`.
    pub d_l_max: f64,
}

impl CriticalConstants {
    /// Published stability threshold below which the catenoids are
    /// unstable; carried for comparison only, never computed here.
    pub const LAMBDA1_REF: f64 = 0.46288;
    /// Published location of the separation maximum.
    pub const LAMBDA_D_REF: f64 = 0.4955;
    /// Published value of the separation maximum.
    pub const D0_MAX_REF: f64 = 0.501143;
}

/// Brent solve with geometric widening of an a-priori bracket when the sign
/// condition fails at the initial endpoints.
fn root_with_widening<F: FnMut(f64) -> Result<f64>>(
    mut g: F,
    lo0: f64,
    hi0: f64,
    floor: f64,
    tol: f64,
) -> Result<f64> {
    let (mut lo, mut hi) = (lo0, hi0);
    for _ in 0..8 {
        match find_root(&mut g, lo, hi, tol) {
            Ok(r) => return Ok(r.root),
            Err(Error::InvalidBracket { .. }) => {
                let w = hi - lo;
                lo = (lo - 0.8 * w).max(floor);
                hi += 0.8 * w;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidBracket {
        lo,
        hi,
        g_lo: f64::NAN,
        g_hi: f64::NAN,
    })
}

/// Locate every critical constant: `lambda3` from `h = 1` (a-priori bracket
/// `[0.3, 0.5]`), `lambda4` from `phi(0, .) = 0` (`[0.4, 0.7]`), `lambda5 =
/// ln(5)/2` exactly, and the maximum of `d0` by golden section on
/// `[0.01, 2]`.
pub fn critical_constants(cfg: &QuadConfig) -> Result<CriticalConstants> {
    let lambda3 = root_with_widening(|l| Ok(h_of_lambda(l) - 1.0), 0.3, 0.5, 1e-6, 1e-13)?;
    let lambda4 = root_with_widening(|l| Ok(phi(0.0, l)), 0.4, 0.7, 1e-6, 1e-13)?;
    let lambda5 = 0.5 * 5.0_f64.ln();
    let m = maximize_unimodal(|l| d0(l, cfg), 0.01, 2.0, 1e-8)?;
    let out = CriticalConstants {
        lambda3,
        lambda4,
        lambda5,
        lambda_d: m.argmax,
        d0_max: m.max,
        d_l_max: 2.0 * m.max,
    };
    if !(out.lambda3 < out.lambda_d && out.lambda_d < out.lambda4 && out.lambda4 < out.lambda5) {
        return Err(Error::Inconclusive(format!(
            "critical constants out of order: {out:?}"
        )));
    }
    Ok(out)
}

/// One row of a tabulated separation profile.
#[derive(Debug, Clone, Copy)]
pub struct ProfileRow {
    pub lambda: f64,
    pub d0: f64,
    pub d0_prime: f64,
}

/// Tabulated `(lambda, d0, d0')` together with the located maximum.
#[derive(Debug, Clone)]
pub struct SeparationProfile {
    rows: Vec<ProfileRow>,
    lambda_d: f64,
    d0_max: f64,
    d_l_max: f64,
}

impl SeparationProfile {
    /// Tabulate on `n` equally spaced points of `[lambda_lo, lambda_hi]`.
    /// The `lambda = 0` row carries the limit values `d0 = 0`,
    /// `d0' = +inf`.
    pub fn compute(lambda_lo: f64, lambda_hi: f64, n: usize, cfg: &QuadConfig) -> Result<Self> {
        if !(lambda_lo >= 0.0) || !(lambda_hi > lambda_lo) || !lambda_hi.is_finite() {
            return Err(Error::Domain(format!(
                "profile grid needs 0 <= lo < hi, got [{lambda_lo}, {lambda_hi}]"
            )));
        }
        if n < 2 {
            return Err(Error::Domain(format!("profile grid needs n >= 2, got {n}")));
        }

        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let lambda = lambda_lo + (lambda_hi - lambda_lo) * i as f64 / (n - 1) as f64;
            let (v, dv) = if lambda == 0.0 {
                (0.0, f64::INFINITY)
            } else {
                (d0(lambda, cfg)?, d0_prime(lambda, cfg)?)
            };
            if v >= d0_upper_bound(lambda) {
                return Err(Error::Inconclusive(format!(
                    "d0({lambda}) = {v} violates its upper bound {}",
                    d0_upper_bound(lambda)
                )));
            }
            rows.push(ProfileRow {
                lambda,
                d0: v,
                d0_prime: dv,
            });
        }

        // The grid must rise to a single maximum and fall after it.
        let peak = rows
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.d0.total_cmp(&b.1.d0))
            .map(|(i, _)| i)
            .unwrap();
        for w in rows[..=peak].windows(2) {
            if !(w[1].d0 > w[0].d0) {
                return Err(Error::Inconclusive(format!(
                    "d0 not increasing before its grid maximum near lambda = {}",
                    w[1].lambda
                )));
            }
        }
        for w in rows[peak..].windows(2) {
            if !(w[1].d0 < w[0].d0) {
                return Err(Error::Inconclusive(format!(
                    "d0 not decreasing after its grid maximum near lambda = {}",
                    w[1].lambda
                )));
            }
        }

        let lo = (lambda_lo.max(1e-3)).min(rows[peak].lambda * 0.5 + 1e-3);
        let m = maximize_unimodal(|l| d0(l, cfg), lo, lambda_hi, 1e-8)?;
        Ok(Self {
            rows,
            lambda_d: m.argmax,
            d0_max: m.max,
            d_l_max: 2.0 * m.max,
        })
    }

    pub fn rows(&self) -> &[ProfileRow] {
        &self.rows
    }
    pub fn lambda_d(&self) -> f64 {
        self.lambda_d
    }
    pub fn d0_max(&self) -> f64 {
        self.d0_max
    }
    pub fn d_l_max(&self) -> f64 {
        self.d_l_max
    }
}

/// The two neck parameters solving `d0(lambda) = d_L / 2`.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryRoots {
    /// Root below the argmax of `d0`.
    pub lambda1: f64,
    /// Root above the argmax.
    pub lambda2: f64,
    pub residual1: f64,
    pub residual2: f64,
    /// Set when `d_L` sits at the feasibility threshold and the two roots
    /// collapse onto the argmax.
    pub degenerate: bool,
}

/// Find the two catenoids sharing an asymptotic boundary with separation
/// `d_L`: solves `d0(lambda) = d_L / 2` on both sides of the maximum.
///
/// Fails with a no-solution error when `d_L` exceeds the family maximum
/// `2 max d0`; within `1e-9` of it the degenerate double root is returned
/// flagged.
pub fn solve_boundary_separation(
    sep: CirclePairSeparation,
    cfg: &QuadConfig,
) -> Result<BoundaryRoots> {
    let consts = critical_constants(cfg)?;
    let target = 0.5 * sep.d_l;

    if (sep.d_l - consts.d_l_max).abs() <= 1e-9 {
        let r = (d0(consts.lambda_d, cfg)? - target).abs();
        return Ok(BoundaryRoots {
            lambda1: consts.lambda_d,
            lambda2: consts.lambda_d,
            residual1: r,
            residual2: r,
            degenerate: true,
        });
    }
    if sep.d_l > consts.d_l_max {
        return Err(Error::NoSolution(format!(
            "d_L = {} exceeds the family maximum {:.12}",
            sep.d_l, consts.d_l_max
        )));
    }

    // Left bracket: shrink toward 0 until d0 drops below the target
    // (d0 -> 0 at 0), right bracket: grow until it drops below (d0 -> 0 at
    // infinity).
    let mut lo = 0.5 * consts.lambda_d;
    while d0(lo, cfg)? >= target {
        lo *= 0.5;
        if lo < 1e-12 {
            return Err(Error::Inconclusive(
                "failed to bracket the lower boundary root".into(),
            ));
        }
    }
    let r1 = find_root(|l| Ok(d0(l, cfg)? - target), lo, consts.lambda_d, 1e-12)?;

    let mut hi = 2.0 * consts.lambda_d;
    while d0(hi, cfg)? >= target {
        hi *= 2.0;
        if hi > 600.0 {
            return Err(Error::Inconclusive(
                "failed to bracket the upper boundary root".into(),
            ));
        }
    }
    let r2 = find_root(|l| Ok(d0(l, cfg)? - target), consts.lambda_d, hi, 1e-12)?;

    Ok(BoundaryRoots {
        lambda1: r1.root,
        lambda2: r2.root,
        residual1: r1.residual,
        residual2: r2.residual,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
        assert!(
            (got - want).abs() <= tol,
            "{what}: got {got:.17e}, want {want:.17e}, err {:.3e}",
            (got - want).abs()
        );
    }

    // Frozen 45-digit references for d0 (independent tanh-sinh evaluation
    // of the shifted integral).
    #[test]
    fn d0_reference_values() {
        let c = cfg();
        assert_eq!(d0(0.0, &c).unwrap(), 0.0);
        assert_close(
            d0(0.1, &c).unwrap(),
            0.267_582_335_180_400_701_4,
            1e-12,
            "d0(0.1)",
        );
        assert_close(
            d0(0.5, &c).unwrap(),
            0.501_128_632_139_905_175_6,
            1e-12,
            "d0(0.5)",
        );
        assert_close(
            d0(1.0, &c).unwrap(),
            0.394_275_813_078_418_418_3,
            1e-12,
            "d0(1)",
        );
        assert_close(
            d0(2.0, &c).unwrap(),
            0.159_962_623_509_627_324_0,
            1e-12,
            "d0(2)",
        );
        assert_close(
            d0(0.4955, &c).unwrap(),
            0.501_142_890_692_546_233_9,
            1e-12,
            "d0(0.4955)",
        );
        assert_close(
            d0(5.0, &c).unwrap(),
            8.072_738_027_967_733_9e-3,
            1e-12,
            "d0(5)",
        );
    }

    #[test]
    fn d0_propagates_budget_exhaustion() {
        let starved = QuadConfig {
            max_evaluations: 100,
            ..QuadConfig::default()
        };
        let res = d0(0.5, &starved);
        assert!(
            matches!(res, Err(Error::BudgetExceeded { .. })),
            "got {res:?}"
        );
    }

    #[test]
    fn d0_rejects_bad_lambda() {
        let c = cfg();
        assert!(matches!(d0(-0.5, &c), Err(Error::Domain(_))));
        assert!(matches!(d0(f64::NAN, &c), Err(Error::Domain(_))));
        assert!(matches!(d0_prime(0.0, &c), Err(Error::Domain(_))));
        assert!(matches!(d0_prime(-1.0, &c), Err(Error::Domain(_))));
    }

    #[test]
    fn d0_stays_below_upper_bound() {
        let c = cfg();
        for i in 1..=100 {
            let lambda = 0.05 * i as f64;
            let v = d0(lambda, &c).unwrap();
            assert!(
                v > 0.0 && v < d0_upper_bound(lambda),
                "bound violated at lambda = {lambda}: {v} vs {}",
                d0_upper_bound(lambda)
            );
        }
        assert_close(
            d0_upper_bound(0.0),
            std::f64::consts::FRAC_PI_4,
            1e-16,
            "bound at 0",
        );
        assert_close(
            d0_upper_bound(2.0),
            0.208_760_582_353_234_468_5,
            1e-15,
            "bound at 2",
        );
    }

    #[test]
    fn d0_prime_reference_values() {
        let c = cfg();
        assert_close(
            d0_prime(0.2, &c).unwrap(),
            0.915_222_106_015_542_159_1,
            1e-11,
            "d0'(0.2)",
        );
        assert_close(
            d0_prime(0.3, &c).unwrap(),
            0.478_897_580_078_045_971_9,
            1e-11,
            "d0'(0.3)",
        );
        assert_close(
            d0_prime(0.5, &c).unwrap(),
            -6.756_673_298_837_478_9e-3,
            1e-11,
            "d0'(0.5)",
        );
        assert_close(
            d0_prime(1.0, &c).unwrap(),
            -0.295_855_657_632_218_651_3,
            1e-11,
            "d0'(1)",
        );
    }

    #[test]
    fn d0_prime_matches_finite_differences() {
        let c = cfg();
        let h = 1e-5;
        for &lambda in &[0.15, 0.3, 0.7, 1.3, 2.0] {
            let fd = (d0(lambda + h, &c).unwrap() - d0(lambda - h, &c).unwrap()) / (2.0 * h);
            let an = d0_prime(lambda, &c).unwrap();
            assert_close(an, fd, 1e-6, &format!("d0' vs fd at {lambda}"));
        }
    }

    #[test]
    fn d0_prime_sign_pattern() {
        let c = cfg();
        assert!(d0_prime(0.2, &c).unwrap() > 0.0);
        assert!(d0_prime(0.39, &c).unwrap() > 0.0);
        assert!(d0_prime(0.54, &c).unwrap() < 0.0);
        assert!(d0_prime(1.0, &c).unwrap() < 0.0);
        // Exactly one sign change on [lambda3, lambda4] at millesimal
        // resolution.
        let mut changes = 0;
        let mut prev = d0_prime(0.402, &c).unwrap();
        let mut l = 0.403;
        while l <= 0.531 {
            let v = d0_prime(l, &c).unwrap();
            if v.signum() != prev.signum() {
                changes += 1;
            }
            prev = v;
            l += 1e-3;
        }
        assert_eq!(changes, 1, "d0' must change sign exactly once in the gap");
    }

    #[test]
    fn h_and_phi_structure() {
        assert_eq!(h_of_lambda(0.0), f64::INFINITY);
        assert_close(h_of_lambda(0.2), 5.875_345_386_926_756_939, 1e-12, "h(0.2)");
        assert_close(
            h_of_lambda(0.6),
            -0.300_737_720_764_851_808_2,
            1e-13,
            "h(0.6)",
        );
        // Strict decrease on a grid.
        let mut prev = h_of_lambda(0.01);
        for i in 2..=200 {
            let l = 0.01 * i as f64;
            let v = h_of_lambda(l);
            assert!(v < prev, "h not decreasing at lambda = {l}");
            prev = v;
        }
    }

    #[test]
    fn critical_constants_match_references() {
        let c = critical_constants(&cfg()).unwrap();
        // Frozen 45-digit roots of the defining equations.
        assert_close(c.lambda3, 0.402_359_478_108_525_093_7, 1e-11, "lambda3");
        assert_close(c.lambda4, 0.530_637_530_952_517_826_0, 1e-11, "lambda4");
        // lambda4 has a closed form.
        let closed = ((3.0 + 5.0_f64.sqrt()) / 4.0).sqrt().acosh();
        assert_close(c.lambda4, closed, 1e-13, "lambda4 closed form");
        assert_eq!(c.lambda5, 0.5 * 5.0_f64.ln());
        assert_close(c.lambda_d, 0.495_773_890_649_679_712_5, 2e-7, "lambda_d");
        assert_close(c.d0_max, 0.501_142_951_211_685_411_7, 1e-10, "d0_max");
        assert_close(c.d_l_max, 1.002_285_902_423_370_823_3, 2e-10, "d_l_max");
        assert!(c.lambda3 < c.lambda_d && c.lambda_d < c.lambda4 && c.lambda4 < c.lambda5);
        // phi vanishes at lambda4 by definition.
        assert!(phi(0.0, c.lambda4).abs() < 1e-11);
        // h equals 1 at lambda3 by definition.
        assert_close(h_of_lambda(c.lambda3), 1.0, 1e-10, "h(lambda3)");
    }

    #[test]
    fn r_and_witnesses() {
        // w1 is r(0, .) for the sinh reading — exact identity.
        for i in 0..=20 {
            let l = 0.04 * i as f64;
            let a = r_factor(0.0, l, RVariant::Sinh);
            let b = w1(l);
            assert!(
                (a - b).abs() <= 1e-11 * b.abs().max(1.0),
                "w1 identity fails at lambda = {l}: {a} vs {b}"
            );
        }
        // The literal sin reading does not satisfy the identity.
        assert!((r_factor(0.0, 0.3, RVariant::Sin) - w1(0.3)).abs() > 1.0);
        assert_close(w1(0.3), -157.347_775_272_338_662_9, 1e-9, "w1(0.3)");
        assert_close(
            r_factor(1.0, 0.5, RVariant::Sinh),
            -231_516.251_660_924_851,
            1e-6,
            "r(1,0.5) sinh",
        );
        assert_close(
            r_factor(1.0, 0.5, RVariant::Sin),
            -231_718.244_233_793_329,
            1e-6,
            "r(1,0.5) sin",
        );
        assert_eq!(w1(0.0), 0.0);
        // w2 vanishes at lambda5 and is negative before it.
        let l5 = 0.5 * 5.0_f64.ln();
        assert!(w2(l5).abs() < 1e-10);
        assert!(w2(0.0) < 0.0 && w2(0.5 * l5) < 0.0);
    }

    #[test]
    fn r_negative_on_grid_both_variants() {
        let l5 = 0.5 * 5.0_f64.ln();
        for variant in [RVariant::Sinh, RVariant::Sin] {
            for i in 0..=40 {
                for j in 0..=40 {
                    let t = 10.0 * i as f64 / 40.0;
                    let l = (l5 - 1e-9) * j as f64 / 40.0;
                    let r = r_factor(t, l, variant);
                    if t == 0.0 && l == 0.0 {
                        assert_eq!(r, 0.0, "origin ({variant:?})");
                    } else {
                        assert!(r < 0.0, "r({t}, {l}) = {r} not negative ({variant:?})");
                    }
                }
            }
        }
    }

    #[test]
    fn profile_shape_and_threshold() {
        let p = SeparationProfile::compute(0.0, 3.0, 61, &cfg()).unwrap();
        assert_eq!(p.rows().len(), 61);
        assert_eq!(p.rows()[0].d0, 0.0);
        assert!(p.rows()[0].d0_prime.is_infinite());
        assert_close(p.d_l_max(), 2.0 * p.d0_max(), 0.0, "threshold identity");
        assert!(p.lambda_d() > 0.49 && p.lambda_d() < 0.50);
    }

    #[test]
    fn boundary_solve_two_roots() {
        let c = cfg();
        let r = solve_boundary_separation(CirclePairSeparation::new(0.8).unwrap(), &c).unwrap();
        assert!(!r.degenerate);
        assert!(r.lambda1 < 0.4955 && 0.4955 < r.lambda2);
        assert!(r.residual1 < 1e-9 && r.residual2 < 1e-9);
        assert_close(d0(r.lambda1, &c).unwrap(), 0.4, 1e-9, "d0(lambda1)");
        assert_close(d0(r.lambda2, &c).unwrap(), 0.4, 1e-9, "d0(lambda2)");
        // Frozen 45-digit roots of d0 = 0.4.
        assert_close(r.lambda1, 0.208_851_818_954_749_851_2, 1e-8, "lambda1");
        assert_close(r.lambda2, 0.980_635_751_523_216_350_6, 1e-8, "lambda2");
    }

    #[test]
    fn boundary_solve_rejects_oversized_separation() {
        let r = solve_boundary_separation(CirclePairSeparation::new(1.2).unwrap(), &cfg());
        assert!(matches!(r, Err(Error::NoSolution(_))), "got {r:?}");
    }

    #[test]
    fn boundary_solve_degenerate_at_threshold() {
        let c = cfg();
        let consts = critical_constants(&c).unwrap();
        let r = solve_boundary_separation(CirclePairSeparation::new(consts.d_l_max).unwrap(), &c)
            .unwrap();
        assert!(r.degenerate);
        assert_eq!(r.lambda1, r.lambda2);
        assert_close(r.lambda1, consts.lambda_d, 0.0, "degenerate root");
    }

    #[test]
    fn boundary_separation_type_validates() {
        assert!(CirclePairSeparation::new(0.0).is_err());
        assert!(CirclePairSeparation::new(-1.0).is_err());
        assert!(CirclePairSeparation::new(f64::INFINITY).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn prop_d0_positive_below_bound(lambda in 0.01..6.0_f64) {
                let v = d0(lambda, &cfg()).unwrap();
                prop_assert!(v > 0.0);
                prop_assert!(v < d0_upper_bound(lambda));
            }

            #[test]
            fn prop_h_and_phi_consistent(t in 0.0..5.0_f64, lambda in 0.01..1.5_f64) {
                // phi > 0 iff h(lambda) > tanh(t), the pivot of the
                // sign analysis.
                let lhs = phi(t, lambda) > 0.0;
                let rhs = h_of_lambda(lambda) > t.tanh();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
