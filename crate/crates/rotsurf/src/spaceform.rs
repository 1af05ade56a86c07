//! Ambient space-form geometry: signature inner products, rotation subgroups,
//! projections to R³, cross products, parallel surfaces and finite-difference
//! curvature estimation.
//!
//! Basis conventions (fixed across the crate):
//! - S³ lives in R⁴ with the Euclidean inner product; elliptic rotations act
//!   in the (x₀, x₁)-plane and the angular direction of the profile in
//!   (x₂, x₃).
//! - H³ lives in R^{3,1} with signature (−+++), x₀ timelike, as the upper
//!   sheet x₀ > 0 of the hyperboloid. Elliptic rotations act in (x₂, x₃),
//!   hyperbolic rotations boost (x₀, x₁).
//! - Parabolic rotations use the pseudo-orthonormal basis (v, e₁, o, e₂) of
//!   R^{3,1} with (v, o) = −1, (v, v) = (o, o) = 0, related to the
//!   orthonormal one by v = (e₀ + e₃)/√2, o = (e₀ − e₃)/√2.
//! - Stereographic projection of S³ uses the pole (0, 0, 0, −1); H³ projects
//!   to the Poincaré ball from (−1, 0, 0, 0).

use crate::error::{Error, Result};

/// Basis convention an [`AmbientPoint`]'s coordinates refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Frame {
    /// Euclidean R⁴ (ambient space of S³).
    R4,
    /// Orthonormal R^{3,1}, signature (−+++), x₀ timelike.
    R31,
    /// Pseudo-orthonormal R^{3,1}, coordinates (v, e₁, o, e₂).
    R31Pso,
}

/// Basis flavor of a space form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Basis {
    Orthonormal,
    PseudoOrthonormal,
}

/// Ambient geometry descriptor: curvature sign and basis convention.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SpaceForm {
    pub kappa: f64,
    pub basis: Basis,
}

impl SpaceForm {
    /// The unit 3-sphere in Euclidean R⁴.
    pub fn s3() -> Self {
        Self { kappa: 1.0, basis: Basis::Orthonormal }
    }

    /// Hyperbolic 3-space in the Minkowski model, orthonormal basis.
    pub fn h3() -> Self {
        Self { kappa: -1.0, basis: Basis::Orthonormal }
    }

    /// Hyperbolic 3-space with the pseudo-orthonormal basis used by
    /// parabolic rotations.
    pub fn h3_pseudo_orthonormal() -> Self {
        Self { kappa: -1.0, basis: Basis::PseudoOrthonormal }
    }

    pub fn new(kappa: f64, basis: Basis) -> Result<Self> {
        if kappa != 1.0 && kappa != -1.0 {
            return Err(Error::Domain(format!("kappa must be +1 or -1, got {kappa}")));
        }
        if kappa > 0.0 && basis == Basis::PseudoOrthonormal {
            return Err(Error::Domain(
                "pseudo-orthonormal basis only valid with kappa = -1".into(),
            ));
        }
        Ok(Self { kappa, basis })
    }

    pub fn frame(&self) -> Frame {
        if self.kappa > 0.0 {
            Frame::R4
        } else if self.basis == Basis::Orthonormal {
            Frame::R31
        } else {
            Frame::R31Pso
        }
    }

    pub fn is_sphere(&self) -> bool {
        self.kappa > 0.0
    }
}

/// Rotation subgroup flavor. Elliptic and hyperbolic carry the signs
/// (κ₁, κ₂) of the rotation plane and its complement; parabolic has none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum RotationKind {
    Elliptic,
    Hyperbolic,
    Parabolic,
}

impl RotationKind {
    /// (κ₁, κ₂) for non-parabolic kinds: (1, 1) in S³, (1, −1) and (−1, 1)
    /// for elliptic and hyperbolic rotations in H³.
    pub fn plane_signs(&self, sf: &SpaceForm) -> Option<(f64, f64)> {
        match (self, sf.is_sphere()) {
            (RotationKind::Elliptic, true) => Some((1.0, 1.0)),
            (RotationKind::Elliptic, false) => Some((1.0, -1.0)),
            (RotationKind::Hyperbolic, false) => Some((-1.0, 1.0)),
            _ => None,
        }
    }

    pub fn valid_for(&self, sf: &SpaceForm) -> bool {
        match self {
            RotationKind::Elliptic => {
                sf.basis == Basis::Orthonormal
            }
            RotationKind::Hyperbolic => !sf.is_sphere() && sf.basis == Basis::Orthonormal,
            RotationKind::Parabolic => sf.basis == Basis::PseudoOrthonormal,
        }
    }
}

impl std::fmt::Display for RotationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RotationKind::Elliptic => write!(f, "elliptic"),
            RotationKind::Hyperbolic => write!(f, "hyperbolic"),
            RotationKind::Parabolic => write!(f, "parabolic"),
        }
    }
}

/// A 4-vector tagged with the basis convention of its coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientPoint {
    pub coords: [f64; 4],
    pub frame: Frame,
}

impl AmbientPoint {
    pub fn new(coords: [f64; 4], frame: Frame) -> Self {
        Self { coords, frame }
    }

    pub fn zero(frame: Frame) -> Self {
        Self { coords: [0.0; 4], frame }
    }

    pub fn scale(&self, s: f64) -> Self {
        let c = self.coords;
        Self::new([s * c[0], s * c[1], s * c[2], s * c[3]], self.frame)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_frames(self, other)?;
        let (a, b) = (self.coords, other.coords);
        Ok(Self::new([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]], self.frame))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    /// Euclidean norm of the coordinate vector (frame-agnostic gauge,
    /// used for seam gaps and degeneracy thresholds).
    pub fn coord_norm(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Coordinates converted to the orthonormal R^{3,1} frame.
    pub fn to_orthonormal(&self) -> Result<Self> {
        match self.frame {
            Frame::R31 => Ok(*self),
            Frame::R31Pso => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let [v, e1, o, e2] = self.coords;
                Ok(Self::new([(v + o) * s, e1, e2, (v - o) * s], Frame::R31))
            }
            Frame::R4 => Err(Error::FrameMismatch(
                "R4 points have no Minkowski orthonormal form".into(),
            )),
        }
    }
}

fn check_frames(x: &AmbientPoint, y: &AmbientPoint) -> Result<()> {
    if x.frame != y.frame {
        return Err(Error::FrameMismatch(format!(
            "{:?} vs {:?}",
            x.frame, y.frame
        )));
    }
    Ok(())
}

/// Signature-correct bilinear form of the common frame.
///
/// Pseudo-orthonormal: (x, y) = −x_v y_o − x_o y_v + x_{e1} y_{e1} + x_{e2} y_{e2}.
pub fn inner(x: &AmbientPoint, y: &AmbientPoint) -> Result<f64> {
    check_frames(x, y)?;
    let (a, b) = (x.coords, y.coords);
    Ok(match x.frame {
        Frame::R4 => a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3],
        Frame::R31 => -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3],
        Frame::R31Pso => -a[0] * b[2] - a[2] * b[0] + a[1] * b[1] + a[3] * b[3],
    })
}

/// Applies the 1-parameter rotation subgroup of the given kind.
///
/// Elliptic: plane rotation by θ in (x₀,x₁) for S³ / (x₂,x₃) for H³.
/// Hyperbolic: boost by θ in (x₀,x₁). Parabolic (pseudo-orthonormal frame):
/// v ↦ v, e₁ ↦ e₁ + θv, o ↦ o + θe₁ + (θ²/2)v — the (θ²/2)v term is the
/// unique quadratic correction preserving the multiplication table.
pub fn rotate(kind: RotationKind, theta: f64, x: &AmbientPoint) -> Result<AmbientPoint> {
    let c = x.coords;
    match (kind, x.frame) {
        (RotationKind::Elliptic, Frame::R4) => {
            let (s, co) = theta.sin_cos();
            Ok(AmbientPoint::new(
                [co * c[0] - s * c[1], s * c[0] + co * c[1], c[2], c[3]],
                x.frame,
            ))
        }
        (RotationKind::Elliptic, Frame::R31) => {
            let (s, co) = theta.sin_cos();
            Ok(AmbientPoint::new(
                [c[0], c[1], co * c[2] - s * c[3], s * c[2] + co * c[3]],
                x.frame,
            ))
        }
        (RotationKind::Hyperbolic, Frame::R31) => {
            let (sh, ch) = (theta.sinh(), theta.cosh());
            Ok(AmbientPoint::new(
                [ch * c[0] + sh * c[1], sh * c[0] + ch * c[1], c[2], c[3]],
                x.frame,
            ))
        }
        (RotationKind::Parabolic, Frame::R31Pso) => {
            // coordinates (v, e1, o, e2)
            let [v, e1, o, e2] = c;
            Ok(AmbientPoint::new(
                [v + theta * e1 + 0.5 * theta * theta * o, e1 + theta * o, o, e2],
                x.frame,
            ))
        }
        (kind, frame) => Err(Error::FrameMismatch(format!(
            "{kind} rotation undefined on frame {frame:?}"
        ))),
    }
}

/// Projects a quadric point to R³: stereographic projection from the pole
/// (0,0,0,−1) for S³, Poincaré ball for H³ (pseudo-orthonormal points are
/// first converted to the orthonormal frame).
pub fn project(x: &AmbientPoint) -> Result<[f64; 3]> {
    match x.frame {
        Frame::R4 => {
            let d = 1.0 + x.coords[3];
            if d.abs() < 1e-12 {
                return Err(Error::Singular(
                    "stereographic projection pole (0,0,0,-1) reached".into(),
                ));
            }
            Ok([x.coords[0] / d, x.coords[1] / d, x.coords[2] / d])
        }
        Frame::R31 => {
            let d = 1.0 + x.coords[0];
            if d.abs() < 1e-12 {
                return Err(Error::Singular("Poincare projection denominator vanishes".into()));
            }
            Ok([x.coords[1] / d, x.coords[2] / d, x.coords[3] / d])
        }
        Frame::R31Pso => project(&x.to_orthonormal()?),
    }
}

/// Formal-determinant cross product of three vectors in orthonormal R^{3,1},
/// first row (−e₀, e₁, e₂, e₃). The result is inner-orthogonal to u, v, w.
pub fn minkowski_cross(u: &AmbientPoint, v: &AmbientPoint, w: &AmbientPoint) -> Result<AmbientPoint> {
    check_frames(u, v)?;
    check_frames(u, w)?;
    if u.frame != Frame::R31 {
        return Err(Error::FrameMismatch(format!(
            "minkowski_cross needs orthonormal R31 coordinates, got {:?}",
            u.frame
        )));
    }
    let m = minors(&u.coords, &v.coords, &w.coords);
    Ok(AmbientPoint::new([-m[0], -m[1], m[2], -m[3]], Frame::R31))
}

/// Euclidean 4D cross product (first row (e₀, e₁, e₂, e₃)) for S³ normals.
pub fn euclidean_cross(u: &AmbientPoint, v: &AmbientPoint, w: &AmbientPoint) -> Result<AmbientPoint> {
    check_frames(u, v)?;
    check_frames(u, w)?;
    if u.frame != Frame::R4 {
        return Err(Error::FrameMismatch(format!(
            "euclidean_cross needs R4 coordinates, got {:?}",
            u.frame
        )));
    }
    let m = minors(&u.coords, &v.coords, &w.coords);
    Ok(AmbientPoint::new([m[0], -m[1], m[2], -m[3]], Frame::R4))
}

/// Cross product appropriate for the frame; pseudo-orthonormal input is
/// converted to the orthonormal frame first.
pub fn ambient_cross(u: &AmbientPoint, v: &AmbientPoint, w: &AmbientPoint) -> Result<AmbientPoint> {
    match u.frame {
        Frame::R4 => euclidean_cross(u, v, w),
        Frame::R31 => minkowski_cross(u, v, w),
        Frame::R31Pso => minkowski_cross(
            &u.to_orthonormal()?,
            &v.to_orthonormal()?,
            &w.to_orthonormal()?,
        ),
    }
}

fn minors(u: &[f64; 4], v: &[f64; 4], w: &[f64; 4]) -> [f64; 4] {
    let det3 = |a: [f64; 3], b: [f64; 3], c: [f64; 3]| {
        a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
    };
    let drop = |x: &[f64; 4], j: usize| {
        let mut out = [0.0; 3];
        let mut k = 0;
        for (i, &xi) in x.iter().enumerate() {
            if i != j {
                out[k] = xi;
                k += 1;
            }
        }
        out
    };
    let mut m = [0.0; 4];
    for (j, mj) in m.iter_mut().enumerate() {
        *mj = det3(drop(u, j), drop(v, j), drop(w, j));
    }
    m
}

/// Constant-distance pushoff along the unit normal: cos(t)f + sin(t)n in S³,
/// cosh(t)f + sinh(t)n in H³. Requires (f,f) = ±1, (n,n) = 1, (f,n) = 0.
pub fn parallel_surface(
    f: &AmbientPoint,
    n: &AmbientPoint,
    t: f64,
    sf: &SpaceForm,
) -> Result<AmbientPoint> {
    let ff = inner(f, f)?;
    let nn = inner(n, n)?;
    let fn_ = inner(f, n)?;
    if (ff - sf.kappa).abs() > 1e-8 || (nn - 1.0).abs() > 1e-8 || fn_.abs() > 1e-8 {
        return Err(Error::Domain(format!(
            "parallel_surface contract violated: (f,f)={ff}, (n,n)={nn}, (f,n)={fn_}"
        )));
    }
    let (a, b) = if sf.is_sphere() {
        (t.cos(), t.sin())
    } else {
        (t.cosh(), t.sinh())
    };
    f.scale(a).add(&n.scale(b))
}

/// Principal curvatures, mean and extrinsic Gauss curvature of a surface
/// evaluator at (u, v).
#[derive(Debug, Clone, Copy)]
pub struct CurvatureSample {
    pub kappa1: f64,
    pub kappa2: f64,
    pub mean: f64,
    pub gauss: f64,
}

/// Sign convention for the finite-difference unit normal.
pub enum NormalOrientation {
    /// Flip so the estimated mean curvature is ≥ 0 (the cmc convention).
    MeanNonNegative,
    /// Flip so the normal aligns with a reference vector (inner product > 0).
    Align(AmbientPoint),
    /// Keep the raw cross-product orientation (continuous across a grid).
    Raw,
}

/// Central-difference shape operator of `f` at (u, v) with step `h`.
///
/// First and second fundamental forms are taken with the signature inner
/// product; the unit normal comes from the frame's cross product of
/// (f, f_u, f_v). Pseudo-orthonormal evaluators are converted to the
/// orthonormal frame, which is a linear isometry.
pub fn numerical_curvatures_oriented<F>(
    f: F,
    u: f64,
    v: f64,
    h: f64,
    orientation: &NormalOrientation,
) -> Result<CurvatureSample>
where
    F: Fn(f64, f64) -> Result<AmbientPoint>,
{
    if !(1e-6..=1e-3).contains(&h) {
        return Err(Error::Domain(format!("step h = {h} outside [1e-6, 1e-3]")));
    }
    let eval = |a: f64, b: f64| -> Result<AmbientPoint> {
        let p = f(a, b)?;
        if p.frame == Frame::R31Pso {
            p.to_orthonormal()
        } else {
            Ok(p)
        }
    };
    let f00 = eval(u, v)?;
    let fpu = eval(u + h, v)?;
    let fmu = eval(u - h, v)?;
    let fpv = eval(u, v + h)?;
    let fmv = eval(u, v - h)?;
    let fpp = eval(u + h, v + h)?;
    let fpm = eval(u + h, v - h)?;
    let fmp = eval(u - h, v + h)?;
    let fmm = eval(u - h, v - h)?;

    let half = 0.5 / h;
    let fu = fpu.sub(&fmu)?.scale(half);
    let fv = fpv.sub(&fmv)?.scale(half);
    let h2 = 1.0 / (h * h);
    let fuu = fpu.add(&fmu)?.sub(&f00.scale(2.0))?.scale(h2);
    let fvv = fpv.add(&fmv)?.sub(&f00.scale(2.0))?.scale(h2);
    let fuv = fpp.sub(&fpm)?.sub(&fmp.sub(&fmm)?)?.scale(0.25 * h2);

    let mut n = ambient_cross(&f00, &fu, &fv)?;
    let nn = inner(&n, &n)?;
    if nn.abs() < 1e-14 {
        return Err(Error::Degenerate(format!(
            "normal frame degenerate at ({u}, {v})"
        )));
    }
    n = n.scale(1.0 / nn.abs().sqrt());

    let e = inner(&fu, &fu)?;
    let ff = inner(&fu, &fv)?;
    let g = inner(&fv, &fv)?;
    let det_i = e * g - ff * ff;
    if det_i.abs() < 1e-10 {
        return Err(Error::Degenerate(format!(
            "first fundamental form degenerate at ({u}, {v}): det I = {det_i}"
        )));
    }
    let l = inner(&fuu, &n)?;
    let m = inner(&fuv, &n)?;
    let nn2 = inner(&fvv, &n)?;

    // shape operator W = I⁻¹ II
    let w11 = (g * l - ff * m) / det_i;
    let w12 = (g * m - ff * nn2) / det_i;
    let w21 = (e * m - ff * l) / det_i;
    let w22 = (e * nn2 - ff * m) / det_i;

    let mut mean = 0.5 * (w11 + w22);
    let gauss = w11 * w22 - w12 * w21;
    let flip = match orientation {
        NormalOrientation::MeanNonNegative => mean < 0.0,
        NormalOrientation::Align(reference) => inner(&n, reference)? < 0.0,
        NormalOrientation::Raw => false,
    };
    if flip {
        mean = -mean;
    }
    let disc = (mean * mean - gauss).max(0.0).sqrt();
    let (kappa1, kappa2) = (mean - disc, mean + disc);
    Ok(CurvatureSample { kappa1, kappa2, mean, gauss })
}

/// [`numerical_curvatures_oriented`] with the default cmc orientation
/// (mean curvature ≥ 0 at the sample).
pub fn numerical_curvatures<F>(f: F, u: f64, v: f64, h: f64) -> Result<CurvatureSample>
where
    F: Fn(f64, f64) -> Result<AmbientPoint>,
{
    numerical_curvatures_oriented(f, u, v, h, &NormalOrientation::MeanNonNegative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r31(c: [f64; 4]) -> AmbientPoint {
        AmbientPoint::new(c, Frame::R31)
    }

    fn pso(c: [f64; 4]) -> AmbientPoint {
        AmbientPoint::new(c, Frame::R31Pso)
    }

    #[test]
    fn inner_examples() {
        let e0 = r31([1.0, 0.0, 0.0, 0.0]);
        assert_eq!(inner(&e0, &e0).unwrap(), -1.0);
        // pseudo-orthonormal multiplication table
        let v = pso([1.0, 0.0, 0.0, 0.0]);
        let o = pso([0.0, 0.0, 1.0, 0.0]);
        assert_eq!(inner(&v, &o).unwrap(), -1.0);
        assert_eq!(inner(&v, &v).unwrap(), 0.0);
        assert_eq!(inner(&o, &o).unwrap(), 0.0);
        let s3pt = AmbientPoint::new([1.0, 0.0, 0.0, 0.0], Frame::R4);
        assert_eq!(inner(&s3pt, &s3pt).unwrap(), 1.0);
        // frame mismatch
        assert!(inner(&e0, &s3pt).is_err());
    }

    #[test]
    fn pso_conversion_preserves_inner() {
        let x = pso([0.7, -1.1, 0.4, 2.2]);
        let y = pso([-0.3, 0.9, 1.5, -0.8]);
        let a = inner(&x, &y).unwrap();
        let b = inner(&x.to_orthonormal().unwrap(), &y.to_orthonormal().unwrap()).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn rotate_examples() {
        let x = AmbientPoint::new([0.3, -0.4, 0.5, 0.2], Frame::R4);
        let same = rotate(RotationKind::Elliptic, 0.0, &x).unwrap();
        assert!(x.sub(&same).unwrap().coord_norm() < 1e-15);

        let e0 = r31([1.0, 0.0, 0.0, 0.0]);
        let b = rotate(RotationKind::Hyperbolic, 0.7, &e0).unwrap();
        assert!((b.coords[0] - 0.7f64.cosh()).abs() < 1e-15);
        assert!((b.coords[1] - 0.7f64.sinh()).abs() < 1e-15);

        // parabolic action on o: o + e1 + v/2, still lightlike
        let o = pso([0.0, 0.0, 1.0, 0.0]);
        let r = rotate(RotationKind::Parabolic, 1.0, &o).unwrap();
        assert_eq!(r.coords, [0.5, 1.0, 1.0, 0.0]);
        assert!(inner(&r, &r).unwrap().abs() < 1e-15);

        assert!(rotate(RotationKind::Parabolic, 1.0, &e0).is_err());
    }

    #[test]
    fn project_examples() {
        let north = AmbientPoint::new([0.0, 0.0, 0.0, 1.0], Frame::R4);
        assert_eq!(project(&north).unwrap(), [0.0, 0.0, 0.0]);
        let base = r31([1.0, 0.0, 0.0, 0.0]);
        assert_eq!(project(&base).unwrap(), [0.0, 0.0, 0.0]);
        let pole = AmbientPoint::new([0.0, 0.0, 0.0, -1.0], Frame::R4);
        assert!(project(&pole).is_err());
        // random hyperboloid points land inside the unit ball
        for i in 0..50 {
            let a = 0.1 * i as f64;
            let (x1, x2, x3) = (a.sin(), (2.0 * a).cos() * 0.7, 0.3 * a.cos());
            let x0 = (1.0 + x1 * x1 + x2 * x2 + x3 * x3).sqrt();
            let p = project(&r31([x0, x1, x2, x3])).unwrap();
            let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            assert!(norm < 1.0, "poincare image escaped the ball: {norm}");
        }
    }

    #[test]
    fn stereographic_equivariance_for_pole_axis_rotations() {
        // rotations in the (x0,x1)-plane fix the pole axis, so projection
        // intertwines them with Euclidean rotations of the image
        let x = AmbientPoint::new(
            [0.5, -0.3, 0.2, (1.0f64 - 0.25 - 0.09 - 0.04).sqrt()],
            Frame::R4,
        );
        let delta = 0.83;
        let lhs = project(&rotate(RotationKind::Elliptic, delta, &x).unwrap()).unwrap();
        let p = project(&x).unwrap();
        let (s, c) = delta.sin_cos();
        let rhs = [c * p[0] - s * p[1], s * p[0] + c * p[1], p[2]];
        for i in 0..3 {
            assert!((lhs[i] - rhs[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn cross_products_are_orthogonal() {
        let u = r31([0.3, 1.2, -0.5, 0.8]);
        let v = r31([1.1, 0.2, 0.9, -0.4]);
        let w = r31([-0.6, 0.5, 0.3, 1.0]);
        let c = minkowski_cross(&u, &v, &w).unwrap();
        for x in [&u, &v, &w] {
            assert!(inner(&c, x).unwrap().abs() < 1e-12);
        }
        // (e1, e2, e3) -> -e0
        let c = minkowski_cross(
            &r31([0.0, 1.0, 0.0, 0.0]),
            &r31([0.0, 0.0, 1.0, 0.0]),
            &r31([0.0, 0.0, 0.0, 1.0]),
        )
        .unwrap();
        assert_eq!(c.coords, [-1.0, 0.0, 0.0, 0.0]);
        // linearly dependent inputs give the zero vector
        let z = minkowski_cross(&u, &v, &u).unwrap();
        assert!(z.coord_norm() < 1e-12);

        let a = AmbientPoint::new([0.2, -0.7, 0.4, 1.3], Frame::R4);
        let b = AmbientPoint::new([1.0, 0.1, -0.2, 0.5], Frame::R4);
        let d = AmbientPoint::new([-0.3, 0.8, 0.6, 0.2], Frame::R4);
        let c = euclidean_cross(&a, &b, &d).unwrap();
        for x in [&a, &b, &d] {
            assert!(inner(&c, x).unwrap().abs() < 1e-12);
        }
        assert!(minkowski_cross(&a, &b, &d).is_err());
    }

    #[test]
    fn parallel_surface_stays_on_quadric() {
        let h3 = SpaceForm::h3();
        let f = r31([1.25f64.sqrt(), 0.5, 0.0, 0.0]);
        let n = r31([0.5, 1.25f64.sqrt(), 0.0, 0.0]);
        assert!((inner(&f, &f).unwrap() + 1.0).abs() < 1e-12);
        assert!((inner(&n, &n).unwrap() - 1.0).abs() < 1e-12);
        let p0 = parallel_surface(&f, &n, 0.0, &h3).unwrap();
        assert!(p0.sub(&f).unwrap().coord_norm() < 1e-15);
        for &t in &[0.3, -1.1, 2.0] {
            let p = parallel_surface(&f, &n, t, &h3).unwrap();
            assert!((inner(&p, &p).unwrap() + 1.0).abs() < 1e-12);
        }
        let s3 = SpaceForm::s3();
        let f = AmbientPoint::new([1.0, 0.0, 0.0, 0.0], Frame::R4);
        let n = AmbientPoint::new([0.0, 1.0, 0.0, 0.0], Frame::R4);
        for &t in &[0.4, -0.9] {
            let p = parallel_surface(&f, &n, t, &s3).unwrap();
            assert!((inner(&p, &p).unwrap() - 1.0).abs() < 1e-12);
        }
        // contract violation
        assert!(parallel_surface(&f, &f, 0.1, &s3).is_err());
    }

    #[test]
    fn curvature_of_geodesic_spheres_in_s3() {
        // distance sphere of radius rho about (0,0,0,1): kappa1 = kappa2 = cot(rho)
        for &rho in &[0.4, std::f64::consts::FRAC_PI_4, 1.2] {
            let f = |u: f64, v: f64| -> Result<AmbientPoint> {
                let (su, cu) = u.sin_cos();
                let (sv, cv) = v.sin_cos();
                Ok(AmbientPoint::new(
                    [rho.sin() * su * cv, rho.sin() * su * sv, rho.sin() * cu, rho.cos()],
                    Frame::R4,
                ))
            };
            let c = numerical_curvatures(f, 0.8, 0.5, 1e-4).unwrap();
            let cot = rho.cos() / rho.sin();
            assert!((c.kappa1 - cot).abs() < 1e-5, "kappa1 {} vs {}", c.kappa1, cot);
            assert!((c.kappa2 - cot).abs() < 1e-5);
        }
    }

    #[test]
    fn curvature_of_clifford_torus() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let f = |u: f64, v: f64| -> Result<AmbientPoint> {
            Ok(AmbientPoint::new(
                [s * u.cos(), s * u.sin(), s * v.cos(), s * v.sin()],
                Frame::R4,
            ))
        };
        let c = numerical_curvatures(f, 0.4, 0.9, 1e-4).unwrap();
        assert!(c.mean.abs() < 1e-6, "Clifford H = {}", c.mean);
        assert!((c.gauss + 1.0).abs() < 1e-6, "Clifford K = {}", c.gauss);
    }

    #[test]
    fn curvature_of_horosphere() {
        // horosphere through the basepoint in pso coordinates: ((1+u²+v²)/2, u, 1, v)
        let f = |u: f64, v: f64| -> Result<AmbientPoint> {
            Ok(pso([(1.0 + u * u + v * v) / 2.0, u, 1.0, v]))
        };
        let c = numerical_curvatures(f, 0.2, -0.3, 1e-4).unwrap();
        assert!((c.kappa1 - 1.0).abs() < 1e-5, "horosphere kappa1 = {}", c.kappa1);
        assert!((c.kappa2 - 1.0).abs() < 1e-5);
    }

    #[test]
    fn rotations_preserve_inner_thousand_samples() {
        // dense deterministic sweep on top of the proptest property
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
        };
        for i in 0..1000 {
            let (kind, frame) = [
                (RotationKind::Elliptic, Frame::R4),
                (RotationKind::Elliptic, Frame::R31),
                (RotationKind::Hyperbolic, Frame::R31),
                (RotationKind::Parabolic, Frame::R31Pso),
            ][i % 4];
            let x = AmbientPoint::new([rnd(), rnd(), rnd(), rnd()], frame);
            let y = AmbientPoint::new([rnd(), rnd(), rnd(), rnd()], frame);
            let theta = 1.5 * rnd();
            let before = inner(&x, &y).unwrap();
            let after = inner(
                &rotate(kind, theta, &x).unwrap(),
                &rotate(kind, theta, &y).unwrap(),
            )
            .unwrap();
            let scale = 1.0 + before.abs() + x.coord_norm() * y.coord_norm() * theta.abs().exp();
            assert!(
                (before - after).abs() <= 1e-13 * scale,
                "{kind} at sample {i}: {before} vs {after}"
            );
        }
    }

    #[test]
    fn degenerate_metric_is_reported() {
        // collapse the v-direction entirely
        let f = |u: f64, _v: f64| -> Result<AmbientPoint> {
            let (s, c) = u.sin_cos();
            Ok(AmbientPoint::new([c, s, 0.0, 0.0], Frame::R4))
        };
        assert!(matches!(
            numerical_curvatures(f, 0.3, 0.3, 1e-4),
            Err(Error::Degenerate(_))
        ));
    }

    proptest! {
        #[test]
        fn rotations_preserve_inner(
            theta in -6.0..6.0f64,
            a in proptest::array::uniform4(-2.0..2.0f64),
            b in proptest::array::uniform4(-2.0..2.0f64),
            which in 0..3usize,
        ) {
            let (kind, frame) = [
                (RotationKind::Elliptic, Frame::R4),
                (RotationKind::Hyperbolic, Frame::R31),
                (RotationKind::Parabolic, Frame::R31Pso),
            ][which];
            let x = AmbientPoint::new(a, frame);
            let y = AmbientPoint::new(b, frame);
            let before = inner(&x, &y).unwrap();
            let after = inner(
                &rotate(kind, theta, &x).unwrap(),
                &rotate(kind, theta, &y).unwrap(),
            ).unwrap();
            // hyperbolic/parabolic coordinates grow with theta; scale the budget
            let scale = 1.0 + after.abs() + x.coord_norm() * y.coord_norm() * theta.abs().exp();
            prop_assert!((before - after).abs() < 1e-13 * scale);
        }

        #[test]
        fn cross_orthogonality_property(
            a in proptest::array::uniform4(-2.0..2.0f64),
            b in proptest::array::uniform4(-2.0..2.0f64),
            c in proptest::array::uniform4(-2.0..2.0f64),
        ) {
            let (u, v, w) = (r31(a), r31(b), r31(c));
            let x = minkowski_cross(&u, &v, &w).unwrap();
            for y in [&u, &v, &w] {
                prop_assert!(inner(&x, y).unwrap().abs() <= 1e-12 * (1.0 + x.coord_norm() * y.coord_norm()));
            }
        }
    }
}
