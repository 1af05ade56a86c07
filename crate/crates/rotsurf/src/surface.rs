//! Full immersions (θ, t) ↦ ambient point assembled from profile solutions,
//! Gauss-map recovery of chc point surfaces, and mesh sampling.
//!
//! All displays share one polar structure: the rotation subgroup acts on the
//! (r, 0)-part and a second rotation by ψ(t) on the (d, 0)-part,
//!
//! - S³, elliptic:        (r cos θ, r sin θ, d cos ψ, d sin ψ)
//! - H³, elliptic:        (d cosh ψ, d sinh ψ, r cos θ, r sin θ)
//! - H³, hyperbolic:      (r cosh θ, r sinh θ, d cos ψ, d sin ψ)
//! - H³, parabolic (pso): (d + r(ψ² + θ²)/2, rθ, r, rψ)
//!
//! with d(t) from the profile. For cmc surfaces this is the surface itself;
//! for chc surfaces it is the Gauss map n, and the point surface is recovered
//! as the rescaled Minkowski cross product of (n, ∂_t n, ∂_θ n).

use crate::error::{Error, Result};
use crate::profile::{ProfileSolution, SurfaceClass, SurfaceSpec};
use crate::spaceform::{
    self, ambient_cross, inner, numerical_curvatures_oriented, AmbientPoint, Frame,
    NormalOrientation, RotationKind,
};

/// Display evaluation of the shared polar structure, together with its
/// analytic partial derivatives.
fn display(
    profile: &ProfileSolution,
    theta: f64,
    t: f64,
) -> Result<(AmbientPoint, AmbientPoint, AmbientPoint)> {
    let spec = profile.spec();
    let r = profile.r(t);
    let rp = profile.r_prime(t);
    let psi = profile.psi(t);
    let psip = profile.psi_prime(t);

    if spec.rotation == RotationKind::Parabolic {
        let d = profile.d(t);
        let dp = profile.d_prime(t);
        let q = psi * psi + theta * theta;
        let f = AmbientPoint::new(
            [d + 0.5 * r * q, r * theta, r, r * psi],
            Frame::R31Pso,
        );
        let ft = AmbientPoint::new(
            [dp + 0.5 * rp * q + r * psi * psip, rp * theta, rp, rp * psi + r * psip],
            Frame::R31Pso,
        );
        let fth = AmbientPoint::new([r * theta, r, 0.0, 0.0], Frame::R31Pso);
        return Ok((f, ft, fth));
    }

    // non-parabolic: d is reported as √|d²|; reject genuinely negative
    // radicands for the cmc chart
    let d2 = profile.d_squared_signed(t);
    if matches!(spec.class, SurfaceClass::Cmc { .. }) && d2 < -1e-12 {
        return Err(Error::Domain(format!(
            "immersion radicand negative at t = {t} (d² = {d2}); sample outside the chart"
        )));
    }
    let d = profile.d(t);
    let dp = profile.d_prime(t);
    let causal = profile.polar_is_causal(t);

    let (st, ct) = theta.sin_cos();
    let (sp, cp) = psi.sin_cos();
    let (shp, chp) = (psi.sinh(), psi.cosh());

    Ok(match (spec.space_form.is_sphere(), spec.rotation) {
        (true, RotationKind::Elliptic) => (
            AmbientPoint::new([r * ct, r * st, d * cp, d * sp], Frame::R4),
            AmbientPoint::new(
                [rp * ct, rp * st, dp * cp - d * psip * sp, dp * sp + d * psip * cp],
                Frame::R4,
            ),
            AmbientPoint::new([-r * st, r * ct, 0.0, 0.0], Frame::R4),
        ),
        (false, RotationKind::Elliptic) => {
            if causal {
                (
                    AmbientPoint::new([d * chp, d * shp, r * ct, r * st], Frame::R31),
                    AmbientPoint::new(
                        [
                            dp * chp + d * psip * shp,
                            dp * shp + d * psip * chp,
                            rp * ct,
                            rp * st,
                        ],
                        Frame::R31,
                    ),
                    AmbientPoint::new([0.0, 0.0, -r * st, r * ct], Frame::R31),
                )
            } else {
                // spacelike polar coordinates (chc Gauss maps with r < 1)
                (
                    AmbientPoint::new([d * shp, d * chp, r * ct, r * st], Frame::R31),
                    AmbientPoint::new(
                        [
                            dp * shp + d * psip * chp,
                            dp * chp + d * psip * shp,
                            rp * ct,
                            rp * st,
                        ],
                        Frame::R31,
                    ),
                    AmbientPoint::new([0.0, 0.0, -r * st, r * ct], Frame::R31),
                )
            }
        }
        (false, RotationKind::Hyperbolic) => {
            let (sht, cht) = (theta.sinh(), theta.cosh());
            (
                AmbientPoint::new([r * cht, r * sht, d * cp, d * sp], Frame::R31),
                AmbientPoint::new(
                    [rp * cht, rp * sht, dp * cp - d * psip * sp, dp * sp + d * psip * cp],
                    Frame::R31,
                ),
                AmbientPoint::new([r * sht, r * cht, 0.0, 0.0], Frame::R31),
            )
        }
        _ => unreachable!("parabolic handled above"),
    })
}

/// Evaluates the classification-theorem display of a cmc spec.
pub fn immerse(profile: &ProfileSolution, theta: f64, t: f64) -> Result<AmbientPoint> {
    match profile.spec().class {
        SurfaceClass::Cmc { .. } => display(profile, theta, t).map(|(f, _, _)| f),
        SurfaceClass::Chc { .. } => Err(Error::Domain(
            "immerse evaluates cmc displays; chc surfaces go through chc_immerse".into(),
        )),
    }
}

/// Gauss map n and recovered point surface f of a chc spec.
///
/// n is the display itself (a spacelike-unit congruence); f is the Minkowski
/// cross product of (n, ∂_t n, ∂_θ n), rescaled onto (f, f) = −1 and oriented
/// onto the upper sheet.
pub fn chc_immerse(
    profile: &ProfileSolution,
    theta: f64,
    t: f64,
) -> Result<(AmbientPoint, AmbientPoint)> {
    if !matches!(profile.spec().class, SurfaceClass::Chc { .. }) {
        return Err(Error::Domain("chc_immerse needs a chc spec".into()));
    }
    let (n, nt, nth) = display(profile, theta, t)?;
    let mut f = ambient_cross(&n, &nt, &nth)?;
    let ff = inner(&f, &f)?;
    if ff >= 0.0 || ff.abs() < 1e-14 {
        return Err(Error::Singular(format!(
            "degenerate Gauss-map frame at (θ, t) = ({theta}, {t}): (f, f) = {ff}"
        )));
    }
    f = f.scale(1.0 / (-ff).sqrt());
    if f.coords[0] < 0.0 {
        f = f.scale(-1.0);
    }
    let n_out = if n.frame == Frame::R31Pso { n.to_orthonormal()? } else { n };
    Ok((n_out, f))
}

/// A surface assembled from a profile: point evaluator plus analytic unit
/// normal, with the normal oriented so the mean curvature is ≥ 0 at a base
/// point (cmc) or given by the Gauss map itself (chc).
pub struct Immersion {
    profile: ProfileSolution,
    normal_sign: f64,
}

impl Immersion {
    pub fn new(profile: ProfileSolution) -> Result<Self> {
        let mut im = Self { profile, normal_sign: 1.0 };
        let (lo, hi) = im.profile.domain();
        let t0 = lo + 0.43 * (hi - lo);
        match im.profile.spec().class {
            // cmc: orient so the measured mean curvature is nonnegative
            SurfaceClass::Cmc { h } if h > 1e-9 => {
                let n0 = im.normal(0.1, t0)?;
                let sample = numerical_curvatures_oriented(
                    |th, t| im.point(th, t),
                    0.1,
                    t0,
                    1e-4,
                    &NormalOrientation::Align(n0),
                )?;
                if sample.mean < 0.0 {
                    im.normal_sign = -1.0;
                }
            }
            // chc: the display determines the Gauss map up to a global sign;
            // orient it so K/H reproduces the signed input
            SurfaceClass::Chc { hbar } => {
                let n0 = im.normal(0.1, t0)?;
                let sample = numerical_curvatures_oriented(
                    |th, t| im.point(th, t),
                    0.1,
                    t0,
                    1e-4,
                    &NormalOrientation::Align(n0),
                )?;
                let direct = (sample.gauss - hbar * sample.mean).abs();
                let flipped = (sample.gauss + hbar * sample.mean).abs();
                if flipped < direct {
                    im.normal_sign = -1.0;
                }
            }
            _ => {}
        }
        Ok(im)
    }

    pub fn profile(&self) -> &ProfileSolution {
        &self.profile
    }

    pub fn spec(&self) -> &SurfaceSpec {
        self.profile.spec()
    }

    /// Surface point: the display for cmc, the recovered point surface for chc.
    pub fn point(&self, theta: f64, t: f64) -> Result<AmbientPoint> {
        match self.profile.spec().class {
            SurfaceClass::Cmc { .. } => immerse(&self.profile, theta, t),
            SurfaceClass::Chc { .. } => chc_immerse(&self.profile, theta, t).map(|(_, f)| f),
        }
    }

    /// Unit normal with (n, n) = 1 and (f, n) = 0.
    pub fn normal(&self, theta: f64, t: f64) -> Result<AmbientPoint> {
        match self.profile.spec().class {
            SurfaceClass::Cmc { .. } => {
                let (f, ft, fth) = display(&self.profile, theta, t)?;
                let mut n = ambient_cross(&f, &ft, &fth)?;
                let nn = inner(&n, &n)?;
                if nn.abs() < 1e-14 {
                    return Err(Error::Degenerate(format!(
                        "normal frame degenerate at (θ, t) = ({theta}, {t})"
                    )));
                }
                n = n.scale(self.normal_sign / nn.abs().sqrt());
                Ok(n)
            }
            SurfaceClass::Chc { .. } => {
                chc_immerse(&self.profile, theta, t).map(|(n, _)| n.scale(self.normal_sign))
            }
        }
    }
}

/// Default θ range of a rotation kind: one full turn for elliptic rotations,
/// one turn of the shear parameter for parabolic ones (not periodic), and
/// caller-supplied for hyperbolic boosts.
pub fn default_theta_range(kind: RotationKind) -> Option<(f64, f64)> {
    match kind {
        RotationKind::Elliptic | RotationKind::Parabolic => {
            Some((0.0, 2.0 * std::f64::consts::PI))
        }
        RotationKind::Hyperbolic => None,
    }
}

/// (θ, t)-grid of ambient points with quad faces and a projected R³ copy.
/// Vertices are row-major in (t, θ): index = it·nθ + iθ.
pub struct SurfaceMesh {
    pub ntheta: usize,
    pub nt: usize,
    pub vertices: Vec<AmbientPoint>,
    pub faces: Vec<[usize; 4]>,
    pub projected: Vec<[f64; 3]>,
    pub params: Vec<(f64, f64)>,
    pub theta_range: (f64, f64),
    pub t_range: (f64, f64),
    /// Requested t-range was clipped to the profile domain.
    pub clipped: bool,
    /// θ wraps around (full elliptic turn); the face strip closes the seam.
    pub wraps: bool,
}

/// Projection applied for the R³ copy of a mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Projection {
    /// Stereographic (S³) from the pole (0,0,0,−1).
    Stereo,
    /// Poincaré ball (H³).
    Poincare,
    /// Drop the redundant coordinate: x₃ in S³ (pole axis), x₀ in H³.
    None,
}

impl Projection {
    pub fn default_for(sf: &spaceform::SpaceForm) -> Self {
        if sf.is_sphere() {
            Projection::Stereo
        } else {
            Projection::Poincare
        }
    }

    fn apply(&self, x: &AmbientPoint) -> Result<[f64; 3]> {
        match self {
            Projection::Stereo | Projection::Poincare => spaceform::project(x),
            Projection::None => {
                let c = match x.frame {
                    Frame::R31Pso => x.to_orthonormal()?.coords,
                    _ => x.coords,
                };
                Ok(match x.frame {
                    Frame::R4 => [c[0], c[1], c[2]],
                    _ => [c[1], c[2], c[3]],
                })
            }
        }
    }
}

/// Samples an immersion on an nθ × nt grid.
///
/// The t-range defaults to the profile domain and is clipped to it (the
/// clipping is flagged on the mesh). For full-turn elliptic θ ranges the grid
/// omits the duplicate seam column and the faces wrap around.
pub fn sample_mesh(
    immersion: &Immersion,
    ntheta: usize,
    nt: usize,
    theta_range: Option<(f64, f64)>,
    t_range: Option<(f64, f64)>,
    projection: Projection,
) -> Result<SurfaceMesh> {
    if ntheta < 2 || nt < 2 {
        return Err(Error::Domain(format!(
            "mesh resolution must be at least 2x2, got {ntheta}x{nt}"
        )));
    }
    let spec = immersion.spec();
    let theta_range = theta_range
        .or_else(|| default_theta_range(spec.rotation))
        .ok_or_else(|| {
            Error::Domain("hyperbolic rotations need an explicit theta range".into())
        })?;
    let domain = immersion.profile().domain();
    let chart = immersion.profile().chart_extent();
    let requested = t_range.unwrap_or(domain);
    let t_lo = requested.0.max(chart.0);
    let t_hi = requested.1.min(chart.1);
    if t_lo >= t_hi {
        return Err(Error::Domain(format!(
            "t-range [{}, {}] lies outside the chart extent [{}, {}]",
            requested.0, requested.1, chart.0, chart.1
        )));
    }
    let clipped = t_lo != requested.0 || t_hi != requested.1;

    let full_turn = spec.rotation == RotationKind::Elliptic
        && (theta_range.1 - theta_range.0 - 2.0 * std::f64::consts::PI).abs() < 1e-12;
    let theta_step = if full_turn {
        (theta_range.1 - theta_range.0) / ntheta as f64
    } else {
        (theta_range.1 - theta_range.0) / (ntheta - 1) as f64
    };

    let mut vertices = Vec::with_capacity(ntheta * nt);
    let mut projected = Vec::with_capacity(ntheta * nt);
    let mut params = Vec::with_capacity(ntheta * nt);
    for it in 0..nt {
        let t = t_lo + (t_hi - t_lo) * it as f64 / (nt - 1) as f64;
        for ith in 0..ntheta {
            let theta = theta_range.0 + theta_step * ith as f64;
            let v = immersion.point(theta, t)?;
            projected.push(projection.apply(&v)?);
            vertices.push(v);
            params.push((theta, t));
        }
    }

    let cols = if full_turn { ntheta } else { ntheta - 1 };
    let mut faces = Vec::with_capacity(cols * (nt - 1));
    for it in 0..nt - 1 {
        for ith in 0..cols {
            let jth = (ith + 1) % ntheta;
            faces.push([
                it * ntheta + ith,
                it * ntheta + jth,
                (it + 1) * ntheta + jth,
                (it + 1) * ntheta + ith,
            ]);
        }
    }

    Ok(SurfaceMesh {
        ntheta,
        nt,
        vertices,
        faces,
        projected,
        params,
        theta_range,
        t_range: (t_lo, t_hi),
        clipped,
        wraps: full_turn,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::solve_profile;
    use crate::spaceform::rotate;

    fn clifford() -> Immersion {
        let spec = SurfaceSpec::cmc_s3(0.0, 0.5).unwrap();
        Immersion::new(solve_profile(&spec).unwrap()).unwrap()
    }

    #[test]
    fn clifford_immersion_matches_closed_form() {
        let im = clifford();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for &(th, t) in &[(0.0, 0.0), (0.7, 0.3), (2.2, -1.0)] {
            let f = im.point(th, t).unwrap();
            let expect = [s * th.cos(), s * th.sin(), s * t.cos(), s * t.sin()];
            for i in 0..4 {
                assert!((f.coords[i] - expect[i]).abs() < 1e-10);
            }
            assert!((inner(&f, &f).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn parabolic_display_membership_is_algebraic() {
        let spec = SurfaceSpec::cmc_h3(RotationKind::Parabolic, 2.0, 1.0).unwrap();
        let im = Immersion::new(solve_profile(&spec).unwrap()).unwrap();
        for &(th, t) in &[(0.0, 0.0), (1.3, 0.2), (-2.0, -0.4), (5.5, 0.45)] {
            let f = im.point(th, t).unwrap();
            assert!((inner(&f, &f).unwrap() + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn membership_and_normal_contracts_across_specs() {
        let specs = [
            SurfaceSpec::cmc_s3(2.0, -0.05).unwrap(),
            SurfaceSpec::cmc_h3(RotationKind::Elliptic, 2.0, 1.0).unwrap(),
            SurfaceSpec::cmc_h3(RotationKind::Hyperbolic, 2.0, 3.0).unwrap(),
            SurfaceSpec::cmc_h3(RotationKind::Elliptic, 0.3, 1.0).unwrap(),
        ];
        for spec in specs {
            let im = Immersion::new(ProfileSolution::for_spec(&spec).unwrap()).unwrap();
            let (lo, hi) = im.profile().domain();
            let kappa = spec.space_form.kappa;
            for i in 1..7 {
                let t = lo + (hi - lo) * i as f64 / 7.0;
                let th = 0.3 * i as f64;
                let f = im.point(th, t).unwrap();
                assert!(
                    (inner(&f, &f).unwrap() - kappa).abs() < 1e-10,
                    "membership failed for {spec:?}"
                );
                let n = im.normal(th, t).unwrap();
                assert!((inner(&n, &n).unwrap() - 1.0).abs() < 1e-9);
                assert!(inner(&f, &n).unwrap().abs() < 1e-9);
            }
        }
    }

    #[test]
    fn rotational_symmetry_of_displays() {
        let specs = [
            SurfaceSpec::cmc_s3(2.0, -0.05).unwrap(),
            SurfaceSpec::cmc_h3(RotationKind::Elliptic, 0.3, 1.0).unwrap(),
            SurfaceSpec::cmc_h3(RotationKind::Hyperbolic, 2.0, 3.0).unwrap(),
            SurfaceSpec::cmc_h3(RotationKind::Parabolic, 2.0, 1.0).unwrap(),
        ];
        for spec in specs {
            let im = Immersion::new(ProfileSolution::for_spec(&spec).unwrap()).unwrap();
            let (lo, hi) = im.profile().domain();
            let t = lo + 0.4 * (hi - lo);
            for &(th, delta) in &[(0.2, 0.9), (1.0, -0.4)] {
                let a = im.point(th + delta, t).unwrap();
                let b = rotate(spec.rotation, delta, &im.point(th, t).unwrap()).unwrap();
                assert!(
                    a.sub(&b).unwrap().coord_norm() < 1e-12,
                    "rotation equivariance failed for {spec:?}"
                );
            }
        }
    }

    #[test]
    fn chc_recovered_surface_is_rotation_equivariant() {
        for spec in [
            SurfaceSpec::chc_h3(RotationKind::Hyperbolic, 2.0, 1.0).unwrap(),
            SurfaceSpec::chc_h3(RotationKind::Elliptic, 2.0, -1.0).unwrap(),
        ] {
            let im = Immersion::new(ProfileSolution::for_spec(&spec).unwrap()).unwrap();
            let (lo, hi) = im.profile().domain();
            let t = lo + 0.37 * (hi - lo);
            let a = im.point(0.9, t).unwrap();
            let b = rotate(spec.rotation, 0.7, &im.point(0.2, t).unwrap()).unwrap();
            assert!(
                a.sub(&b).unwrap().coord_norm() < 1e-9,
                "chc equivariance failed for {spec:?}"
            );
        }
    }

    #[test]
    fn chc_gauss_map_contracts() {
        for spec in [
            SurfaceSpec::chc_h3(RotationKind::Hyperbolic, 2.0, 1.0).unwrap(),
            SurfaceSpec::chc_h3(RotationKind::Elliptic, 2.0, -1.0).unwrap(),
            SurfaceSpec::chc_h3(RotationKind::Parabolic, 2.0, 1.0).unwrap(),
        ] {
            let profile = ProfileSolution::for_spec(&spec).unwrap();
            let (lo, hi) = profile.domain();
            for i in 1..6 {
                let t = lo + (hi - lo) * i as f64 / 6.0;
                let th = 0.21 * i as f64;
                let (n, f) = chc_immerse(&profile, th, t).unwrap();
                assert!((inner(&n, &n).unwrap() - 1.0).abs() < 1e-9, "(n,n) for {spec:?}");
                assert!((inner(&f, &f).unwrap() + 1.0).abs() < 1e-10);
                assert!(inner(&f, &n).unwrap().abs() < 1e-9);
                assert!(f.coords[0] > 0.0);
                // f is orthogonal to the derivatives of n too (finite differences)
                let h = 1e-6;
                let (np, _) = chc_immerse(&profile, th, t + h).unwrap();
                let (nm, _) = chc_immerse(&profile, th, t - h).unwrap();
                let ndot = np.sub(&nm).unwrap().scale(0.5 / h);
                assert!(inner(&f, &ndot).unwrap().abs() < 1e-8);
            }
        }
    }

    #[test]
    fn mesh_sampling_basics() {
        let im = clifford();
        let mesh = sample_mesh(&im, 2, 2, Some((0.0, 1.0)), Some((0.0, 0.5)), Projection::Stereo)
            .unwrap();
        assert_eq!(mesh.faces.len(), 1);
        assert_eq!(mesh.vertices.len(), 4);

        let mesh = sample_mesh(&im, 16, 9, None, None, Projection::Stereo).unwrap();
        assert!(mesh.wraps);
        assert_eq!(mesh.faces.len(), 16 * 8);
        for v in &mesh.vertices {
            assert!((inner(v, v).unwrap() - 1.0).abs() < 1e-9);
        }
        for p in &mesh.projected {
            assert!(p.iter().all(|x| x.is_finite()));
        }
        for face in &mesh.faces {
            assert!(face.iter().all(|&i| i < mesh.vertices.len()));
        }

        // requested range beyond the domain is clipped and flagged
        let spec = SurfaceSpec::cmc_h3(RotationKind::Elliptic, 0.3, 1.0).unwrap();
        let im = Immersion::new(solve_profile(&spec).unwrap()).unwrap();
        let (lo, hi) = im.profile().domain();
        let mesh =
            sample_mesh(&im, 4, 4, None, Some((lo - 1.0, hi + 1.0)), Projection::Poincare)
                .unwrap();
        assert!(mesh.clipped);
        assert_eq!(mesh.t_range, (lo, hi));

        assert!(sample_mesh(&im, 1, 4, None, None, Projection::Poincare).is_err());
    }
}
