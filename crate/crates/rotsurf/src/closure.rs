//! Embedded cmc tori in S³: the profile-closure condition, a bracketing
//! solver for it, and periodicity checks.
//!
//! The radius of a Delaunay-type profile in S³ is periodic with period
//! α = 2F_p/Ξ. The profile closes up after n lobes when n·|ψ(α) − ψ(0)| = 2π,
//! evaluated through the implemented ψ over the exact interval [0, 2F_p]
//! (the 2F_p quasi-period of the third-kind integral is an identity; odd
//! multiples of F_p are not). The "+"-branch ψ winds negatively on the nodoid
//! side, so the winding enters through its absolute value.

use crate::elliptic::complete_f;
use crate::error::{Error, Result};
use crate::profile::{feasible_interval, solve_profile, Feasibility, ProfileSolution, SurfaceSpec};

/// Closure search input: mean curvature, lobe count and a C-bracket inside
/// the feasible interval.
#[derive(Debug, Clone, Copy)]
pub struct ClosureProblem {
    pub h: f64,
    pub n: u32,
    pub bracket: (f64, f64),
}

impl ClosureProblem {
    /// Default bracket: the open feasible interval shrunk by 1e-6 at both
    /// ends. Lobe counts below 2 are accepted but cannot close a torus.
    pub fn new(h: f64, n: u32, bracket: Option<(f64, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("lobe count must be at least 1".into()));
        }
        let spec_probe = SurfaceSpec::cmc_s3(h, 0.0)?;
        let (lo, hi) = match feasible_interval(&spec_probe) {
            Feasibility::Interval { lo, hi } => (lo, hi),
            other => {
                return Err(Error::Domain(format!(
                    "unexpected feasibility {other} for an S3 closure problem"
                )))
            }
        };
        let default = (lo + 1e-6, hi - 1e-6);
        let bracket = bracket.unwrap_or(default);
        if bracket.0 >= bracket.1 || bracket.0 < lo || bracket.1 > hi {
            return Err(Error::Domain(format!(
                "bracket [{}, {}] outside the feasible interval [{lo}, {hi}]",
                bracket.0, bracket.1
            )));
        }
        Ok(Self { h, n, bracket })
    }
}

/// Period α = 2F_p/Ξ of the radius and the angular advance ψ(α) − ψ(0).
pub fn period_and_advance(profile: &ProfileSolution) -> Result<(f64, f64)> {
    let big_f = complete_f(profile.modulus());
    if !big_f.is_finite() {
        return Err(Error::Range(
            "profile is aperiodic (p = 1, the spherical C = 0 branch)".into(),
        ));
    }
    let alpha = 2.0 * big_f / profile.scale();
    let advance = profile.psi(alpha) - profile.psi(0.0);
    Ok((alpha, advance))
}

/// Closure defect n·|ψ(α) − ψ(0)| − 2π for the S³ Delaunay profile (H, C).
pub fn closure_defect(h: f64, c: f64, n: u32) -> Result<f64> {
    let spec = SurfaceSpec::cmc_s3(h, c)?;
    let profile = solve_profile(&spec)?;
    let (_, advance) = period_and_advance(&profile)?;
    Ok(n as f64 * advance.abs() - 2.0 * std::f64::consts::PI)
}

/// One closed profile found by the solver.
pub struct TorusSolution {
    pub n: u32,
    pub c_star: f64,
    pub defect: f64,
    /// Radius period α = 2F_p/Ξ at C*.
    pub period: f64,
    /// C* < 0: the profile has no self-intersections and the torus embeds.
    pub embedded: bool,
    pub profile: ProfileSolution,
}

impl std::fmt::Debug for TorusSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TorusSolution")
            .field("n", &self.n)
            .field("c_star", &self.c_star)
            .field("defect", &self.defect)
            .field("period", &self.period)
            .field("embedded", &self.embedded)
            .finish()
    }
}

const SCAN_SUBINTERVALS: usize = 64;
const DEFECT_TOL: f64 = 1e-10;

/// Scans the bracket in 64 subintervals for sign changes of the defect and
/// polishes each by bisection with secant acceleration. Roots where the
/// defect does not actually vanish (the defect jumps across the removable
/// ψ-singularity at C = H and blows up near C = 0 where the profile turns
/// aperiodic) are discarded.
pub fn solve_torus(problem: &ClosureProblem) -> Result<Vec<TorusSolution>> {
    let (lo, hi) = problem.bracket;
    let n = problem.n;
    let h = problem.h;
    let eval = |c: f64| closure_defect(h, c, n).ok();

    let mut samples = Vec::with_capacity(SCAN_SUBINTERVALS + 1);
    for i in 0..=SCAN_SUBINTERVALS {
        let c = lo + (hi - lo) * i as f64 / SCAN_SUBINTERVALS as f64;
        samples.push((c, eval(c)));
    }

    let mut solutions = Vec::new();
    for w in samples.windows(2) {
        let ((a, fa), (b, fb)) = (w[0], w[1]);
        let (Some(fa), Some(fb)) = (fa, fb) else { continue };
        if fa == 0.0 || fa.signum() == fb.signum() {
            continue;
        }
        if let Some(c_star) = refine(&eval, a, fa, b, fb) {
            let spec = SurfaceSpec::cmc_s3(h, c_star)?;
            let profile = solve_profile(&spec)?;
            let (period, _) = period_and_advance(&profile)?;
            let defect = closure_defect(h, c_star, n)?;
            if defect.abs() < DEFECT_TOL {
                solutions.push(TorusSolution {
                    n,
                    c_star,
                    defect,
                    period,
                    embedded: c_star < 0.0,
                    profile,
                });
            }
        }
    }
    if solutions.is_empty() {
        let table: Vec<String> = samples
            .iter()
            .map(|(c, d)| match d {
                Some(d) => format!("  C = {c:+.6}: defect = {d:+.6}"),
                None => format!("  C = {c:+.6}: <no profile>"),
            })
            .collect();
        return Err(Error::NoRoot(format!(
            "defect has no verified sign change for H = {h}, n = {n} on [{lo}, {hi}]\n{}",
            table.join("\n")
        )));
    }
    Ok(solutions)
}

/// Bisection with a secant step tried first whenever it lands inside the
/// bracket.
fn refine(eval: &impl Fn(f64) -> Option<f64>, a0: f64, fa0: f64, b0: f64, fb0: f64) -> Option<f64> {
    let (mut a, mut fa, mut b, mut fb) = (a0, fa0, b0, fb0);
    for _ in 0..200 {
        let secant = b - fb * (b - a) / (fb - fa);
        let mid = 0.5 * (a + b);
        let candidate = if secant > a && secant < b { secant } else { mid };
        let fc = eval(candidate)?;
        if fc.abs() < DEFECT_TOL || (b - a).abs() < 1e-15 * (1.0 + a.abs()) {
            return Some(candidate);
        }
        if fc.signum() == fa.signum() {
            a = candidate;
            fa = fc;
        } else {
            b = candidate;
            fb = fc;
        }
    }
    Some(0.5 * (a + b))
}
