//! Jacobi elliptic functions and elliptic integrals in the modulus convention.
//!
//! All functions take the modulus `p` (not the parameter m = p²). The
//! incomplete integral of the third kind uses the Jacobi-argument convention
//!
//! ```text
//! Π_p(k; s) = ∫₀ˢ du / (1 − k·sn_p²(u)),
//! ```
//!
//! related to the Legendre form by Π_p(k; s) = Π(k; am_p(s), p).
//!
//! `jacobi`, `ell_f` and `ell_e` run on descending-Landen / AGM recursions;
//! `ell_pi` integrates its defining integrand by adaptive Gauss–Kronrod
//! quadrature, which stays robust for the k < 0 and k > 1 parameters the
//! profile formulas produce on nonsingular paths.

use crate::error::{Error, Result};
use crate::quad;

/// Moduli within this distance outside [0, 1] are snapped onto the boundary.
pub const MODULUS_SNAP: f64 = 1e-14;

const AGM_MAX: usize = 24;

/// Real elliptic modulus p ∈ [0, 1] with its complement p′ = √(1 − p²).
#[derive(Clone, Copy, PartialEq)]
pub struct EllipticModulus {
    p: f64,
}

impl EllipticModulus {
    /// Validates and normalizes a modulus. Values within [`MODULUS_SNAP`] of
    /// the boundary (as produced by root formulas under rounding) are snapped.
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::Domain(format!("modulus must be finite, got {p}")));
        }
        let snapped = if p < 0.0 && p >= -MODULUS_SNAP {
            0.0
        } else if p > 1.0 && p <= 1.0 + MODULUS_SNAP {
            1.0
        } else {
            p
        };
        if !(0.0..=1.0).contains(&snapped) {
            return Err(Error::Domain(format!("modulus {p} outside [0, 1]")));
        }
        Ok(Self { p: snapped })
    }

    /// Builds the modulus from p², snapping rounding overshoot.
    pub fn from_p_squared(p2: f64) -> Result<Self> {
        if !p2.is_finite() {
            return Err(Error::Domain(format!("p^2 must be finite, got {p2}")));
        }
        let snapped = if p2 < 0.0 && p2 >= -MODULUS_SNAP {
            0.0
        } else if p2 > 1.0 && p2 <= 1.0 + MODULUS_SNAP {
            1.0
        } else {
            p2
        };
        if !(0.0..=1.0).contains(&snapped) {
            return Err(Error::Domain(format!("p^2 = {p2} outside [0, 1]")));
        }
        Ok(Self { p: snapped.sqrt() })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn p_squared(&self) -> f64 {
        self.p * self.p
    }

    /// Complementary modulus p′ with p² + p′² = 1.
    pub fn p_prime(&self) -> f64 {
        (1.0 - self.p * self.p).max(0.0).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0.0
    }

    pub fn is_one(&self) -> bool {
        self.p == 1.0
    }
}

impl std::fmt::Debug for EllipticModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "p={}", self.p)
    }
}

/// sn, cn, dn and the amplitude at a common argument.
#[derive(Debug, Clone, Copy)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
    pub am: f64,
}

/// Precomputed AGM ladder for one modulus. Evaluation at an argument only
/// runs the amplitude back-recursion, so repeated calls at a fixed modulus
/// (profile evaluators, quadrature integrands) skip the table build.
#[derive(Clone)]
pub(crate) struct JacobiSeq {
    p: EllipticModulus,
    levels: usize,
    a: [f64; AGM_MAX],
    b: [f64; AGM_MAX],
    c: [f64; AGM_MAX],
    big_k: f64,
}

impl JacobiSeq {
    pub fn new(p: EllipticModulus) -> Self {
        let mut a = [0.0; AGM_MAX];
        let mut b = [0.0; AGM_MAX];
        let mut c = [0.0; AGM_MAX];
        a[0] = 1.0;
        b[0] = p.p_prime();
        c[0] = p.p();
        let mut levels = 0;
        if !p.is_one() {
            while c[levels].abs() > f64::EPSILON * a[levels] && levels + 1 < AGM_MAX {
                a[levels + 1] = 0.5 * (a[levels] + b[levels]);
                b[levels + 1] = (a[levels] * b[levels]).sqrt();
                c[levels + 1] = 0.5 * (a[levels] - b[levels]);
                levels += 1;
            }
        }
        let big_k = if p.is_one() {
            f64::INFINITY
        } else {
            std::f64::consts::FRAC_PI_2 / a[levels]
        };
        Self { p, levels, a, b, c, big_k }
    }

    pub fn modulus(&self) -> EllipticModulus {
        self.p
    }

    /// Complete integral of the first kind F_p = K(p); infinite at p = 1.
    pub fn big_k(&self) -> f64 {
        self.big_k
    }

    /// Complete integral of the second kind E_p.
    pub fn big_e(&self) -> f64 {
        if self.p.is_one() {
            return 1.0;
        }
        let mut sum = 0.0;
        for i in 0..=self.levels {
            sum += two_pow(i as i32 - 1) * self.c[i] * self.c[i];
        }
        self.big_k * (1.0 - sum)
    }

    /// Amplitude am(u, p), quasi-periodic: am(u + 2K) = am(u) + π.
    pub fn am(&self, u: f64) -> f64 {
        if self.p.is_one() {
            // gudermannian
            return u.sinh().atan();
        }
        if self.p.is_zero() {
            return u;
        }
        let m = (u / (2.0 * self.big_k)).round();
        let u0 = u - 2.0 * m * self.big_k;
        let mut phi = two_pow(self.levels as i32) * self.a[self.levels] * u0;
        for i in (1..=self.levels).rev() {
            let s = (self.c[i] / self.a[i] * phi.sin()).clamp(-1.0, 1.0);
            phi = 0.5 * (phi + s.asin());
        }
        phi + m * std::f64::consts::PI
    }

    pub fn eval(&self, u: f64) -> JacobiTriple {
        if self.p.is_one() {
            let sech = 1.0 / u.cosh();
            return JacobiTriple { sn: u.tanh(), cn: sech, dn: sech, am: u.sinh().atan() };
        }
        let am = self.am(u);
        let sn = am.sin();
        let cn = am.cos();
        let p2 = self.p.p_squared();
        // dn = sqrt(1 - p^2 sn^2) written cancellation-free near p = 1
        let dn = (self.p.p_prime().powi(2) + p2 * cn * cn).sqrt();
        JacobiTriple { sn, cn, dn, am }
    }

    /// Incomplete integral of the first kind in the amplitude, F(φ, p),
    /// by the ascending amplitude transformation on the same AGM ladder.
    pub fn incomplete_f(&self, phi: f64) -> Result<f64> {
        if !phi.is_finite() {
            return Err(Error::Domain(format!("amplitude must be finite, got {phi}")));
        }
        if self.p.is_zero() {
            return Ok(phi);
        }
        if self.p.is_one() {
            if phi.abs() >= std::f64::consts::FRAC_PI_2 {
                return Err(Error::Range(format!(
                    "F(phi, 1) diverges for |phi| >= pi/2, got phi = {phi}"
                )));
            }
            return Ok(phi.sin().atanh());
        }
        let m = (phi / std::f64::consts::PI).round_ties_even();
        let phi0 = phi - m * std::f64::consts::PI;
        let (f0, _) = self.ascend(phi0);
        Ok(f0 + 2.0 * m * self.big_k)
    }

    /// Incomplete integral of the second kind in the amplitude, E(φ, p).
    pub fn incomplete_e(&self, phi: f64) -> Result<f64> {
        if !phi.is_finite() {
            return Err(Error::Domain(format!("amplitude must be finite, got {phi}")));
        }
        if self.p.is_zero() {
            return Ok(phi);
        }
        if self.p.is_one() {
            // E(φ, 1) = sin φ on |φ| ≤ π/2, extended by E(φ + nπ) = E(φ) + 2n
            let m = (phi / std::f64::consts::PI).round_ties_even();
            let phi0 = phi - m * std::f64::consts::PI;
            return Ok(phi0.sin() + 2.0 * m);
        }
        let m = (phi / std::f64::consts::PI).round_ties_even();
        let phi0 = phi - m * std::f64::consts::PI;
        let (f0, phis) = self.ascend(phi0);
        let mut csum = 0.0;
        for i in 0..=self.levels {
            csum += two_pow(i as i32 - 1) * self.c[i] * self.c[i];
        }
        let mut corr = 0.0;
        for i in 1..=self.levels {
            corr += self.c[i] * phis[i].sin();
        }
        let e_over_k = 1.0 - csum;
        let e0 = e_over_k * f0 + corr;
        Ok(e0 + 2.0 * m * self.big_e())
    }

    /// Jacobi epsilon ε(u) = ∫₀ᵘ dn² = E(am(u, p), p).
    pub fn epsilon(&self, u: f64) -> f64 {
        if self.p.is_one() {
            return u.tanh();
        }
        self.incomplete_e(self.am(u))
            .expect("am(u) is finite for finite u")
    }

    /// Ascending amplitude ladder; returns F(φ₀, p) and the amplitude stages.
    fn ascend(&self, phi0: f64) -> (f64, [f64; AGM_MAX]) {
        let mut phis = [0.0; AGM_MAX];
        let mut phi = phi0;
        phis[0] = phi;
        for i in 0..self.levels {
            let zeta = (self.b[i] / self.a[i] * phi.tan()).atan()
                + std::f64::consts::PI * (phi / std::f64::consts::PI).round_ties_even();
            phi += zeta;
            phis[i + 1] = phi;
        }
        let f = phi / (two_pow(self.levels as i32) * self.a[self.levels]);
        (f, phis)
    }
}

fn two_pow(i: i32) -> f64 {
    (2.0f64).powi(i)
}

/// Jacobi elliptic functions sn, cn, dn and the amplitude at (u, p).
pub fn jacobi(u: f64, p: EllipticModulus) -> Result<JacobiTriple> {
    if !u.is_finite() {
        return Err(Error::Domain(format!("argument must be finite, got {u}")));
    }
    Ok(JacobiSeq::new(p).eval(u))
}

/// Analytic derivatives (sn′, cn′, dn′) = (cn·dn, −sn·dn, −p²·sn·cn).
pub fn jacobi_deriv(u: f64, p: EllipticModulus) -> Result<(f64, f64, f64)> {
    let t = jacobi(u, p)?;
    let p2 = p.p_squared();
    Ok((t.cn * t.dn, -t.sn * t.dn, -p2 * t.sn * t.cn))
}

/// Incomplete elliptic integral of the first kind F(φ, p), amplitude convention.
pub fn ell_f(phi: f64, p: EllipticModulus) -> Result<f64> {
    JacobiSeq::new(p).incomplete_f(phi)
}

/// Incomplete elliptic integral of the second kind E(φ, p), amplitude convention.
pub fn ell_e(phi: f64, p: EllipticModulus) -> Result<f64> {
    JacobiSeq::new(p).incomplete_e(phi)
}

/// Jacobi-argument wrapper E(am_p(s), p) = ∫₀ˢ dn_p²(u) du.
pub fn ell_e_arg(s: f64, p: EllipticModulus) -> Result<f64> {
    if !s.is_finite() {
        return Err(Error::Domain(format!("argument must be finite, got {s}")));
    }
    Ok(JacobiSeq::new(p).epsilon(s))
}

/// Complete integral of the first kind F_p = F(π/2, p); infinite at p = 1.
pub fn complete_f(p: EllipticModulus) -> f64 {
    JacobiSeq::new(p).big_k()
}

/// Complete integral of the second kind E_p.
pub fn complete_e(p: EllipticModulus) -> f64 {
    JacobiSeq::new(p).big_e()
}

/// First u > 0 with 1 − k·sn_p²(u) = 0, if the integrand is singular at all.
pub(crate) fn first_singularity(k: f64, seq: &JacobiSeq) -> Option<f64> {
    if k < 1.0 {
        return None;
    }
    let p = seq.modulus();
    if (k - 1.0).abs() < 1e-15 {
        // sn² touches 1 at u = K (never, for p = 1)
        return if p.is_one() { None } else { Some(seq.big_k()) };
    }
    let target = (1.0 / k.sqrt()).asin();
    if p.is_one() {
        return Some((1.0 / k.sqrt()).atanh());
    }
    seq.incomplete_f(target).ok()
}

/// Incomplete elliptic integral of the third kind, Jacobi-argument convention:
/// Π_p(k; s) = ∫₀ˢ du / (1 − k·sn_p²(u)).
///
/// Errors with the first singular u when k ≥ 1 and the path [0, s] crosses
/// sn² = 1/k.
pub fn ell_pi(k: f64, p: EllipticModulus, s: f64) -> Result<f64> {
    if !k.is_finite() || !s.is_finite() {
        return Err(Error::Domain(format!("non-finite input k = {k}, s = {s}")));
    }
    let seq = JacobiSeq::new(p);
    if let Some(u_star) = first_singularity(k, &seq) {
        if s.abs() >= u_star - 1e-12 {
            return Err(Error::Range(format!(
                "singular path: 1 - k sn^2 vanishes first at u = {u_star}, |s| = {}",
                s.abs()
            )));
        }
    }
    let mut integrand = |u: f64| {
        let t = seq.eval(u);
        1.0 / (1.0 - k * t.sn * t.sn)
    };
    let tol = 1e-13 * (1.0 + s.abs());
    quad::adaptive(&mut integrand, 0.0, s, tol, 48)
        .ok_or_else(|| Error::Range("third-kind quadrature failed to converge".into()))
}

/// Complete integral of the third kind Π_p(k) = Π_p(k; F_p).
pub fn complete_pi(k: f64, p: EllipticModulus) -> Result<f64> {
    let big_f = complete_f(p);
    if !big_f.is_finite() {
        return Err(Error::Range("complete third-kind integral diverges at p = 1".into()));
    }
    ell_pi(k, p, big_f)
}

/// Frozen evaluator for s ↦ Π_p(k; s) along a profile.
///
/// The panelization is fixed at construction (period reduction via the 2F_p
/// quasi-period where available, geometrically graded Gauss–Kronrod panels
/// otherwise), so the map is smooth in s and safe to finite-difference.
/// The parameters k = p² and k = 1 that Thm-level formulas produce reduce to
/// closed forms through the Jacobi epsilon function.
#[derive(Clone)]
pub(crate) struct ThirdKindEval {
    k: f64,
    seq: JacobiSeq,
    anchor: f64,
    kind: PiKind,
}

#[derive(Clone)]
enum PiKind {
    Constant,
    /// Closed antiderivative minus its anchor value.
    DnInverse { at_anchor: f64 },
    CnInverse { at_anchor: f64 },
    Reduced { two_f: f64, per_period: f64, levels: u32, at_anchor: f64 },
    Direct { levels: u32 },
}

impl ThirdKindEval {
    /// Evaluator for s ↦ Π_p(k; s) on |s| ≤ `max_abs_s`, anchored at 0.
    pub fn new(k: f64, p: EllipticModulus, max_abs_s: f64) -> Result<Self> {
        Self::new_anchored(k, p, 0.0, -max_abs_s, max_abs_s)
    }

    /// Evaluator for s ↦ ∫_anchor^s du/(1 − k·sn²) on [lo, hi]. The interval
    /// must not contain a zero of the integrand denominator; one-sided charts
    /// (e.g. beyond the r = 1 singularity) anchor off 0.
    pub fn new_anchored(
        k: f64,
        p: EllipticModulus,
        anchor: f64,
        lo: f64,
        hi: f64,
    ) -> Result<Self> {
        if lo > hi || anchor < lo || anchor > hi {
            return Err(Error::Domain(format!(
                "bad third-kind interval [{lo}, {hi}] with anchor {anchor}"
            )));
        }
        let seq = JacobiSeq::new(p);
        if k == 0.0 {
            return Ok(Self { k, seq, anchor, kind: PiKind::Constant });
        }
        // reject paths across a singularity of 1/(1 - k sn²)
        if k >= 1.0 {
            let mut prev = f64::NAN;
            for i in 0..=128 {
                let u = lo + (hi - lo) * i as f64 / 128.0;
                let t = seq.eval(u);
                let denom = 1.0 - k * t.sn * t.sn;
                if denom.abs() < 1e-14 || (prev.is_finite() && denom.signum() != prev.signum()) {
                    let u_star = first_singularity(k, &seq)
                        .map(|u| format!("{u}"))
                        .unwrap_or_else(|| "unknown".into());
                    return Err(Error::Range(format!(
                        "singular path: 1 - k sn^2 vanishes inside [{lo}, {hi}] (first singular u = {u_star})"
                    )));
                }
                prev = denom;
            }
        }
        let kind = if (k - p.p_squared()).abs() < 1e-13 && !p.is_one() {
            let at_anchor = Self::dn_inverse(&seq, anchor);
            PiKind::DnInverse { at_anchor }
        } else if (k - 1.0).abs() < 1e-13 && !p.is_one() {
            let at_anchor = Self::cn_inverse(&seq, anchor);
            PiKind::CnInverse { at_anchor }
        } else if k < 1.0 && !p.is_one() {
            let two_f = 2.0 * seq.big_k();
            let levels = Self::freeze_levels(k, &seq, two_f);
            let per_period = Self::raw_period_cell(k, &seq, two_f, levels);
            let at_anchor = Self::reduced(k, &seq, anchor, two_f, per_period, levels);
            PiKind::Reduced { two_f, per_period, levels, at_anchor }
        } else {
            let span = (hi - anchor).abs().max((anchor - lo).abs()).max(1.0);
            let levels = Self::freeze_levels(k, &seq, span.min(hi - anchor + 1e-300));
            PiKind::Direct { levels }
        };
        Ok(Self { k, seq, anchor, kind })
    }

    fn raw(k: f64, seq: &JacobiSeq, a: f64, b: f64, levels: u32) -> f64 {
        let mut integrand = |u: f64| {
            let t = seq.eval(u);
            1.0 / (1.0 - k * t.sn * t.sn)
        };
        quad::graded(&mut integrand, a, b, levels)
    }

    /// Integral over [0, s0] with s0 in one 2F period, with the panels split
    /// at F where 1 − k·sn² peaks or dips (sharply so for k near 1).
    fn raw_period_cell(k: f64, seq: &JacobiSeq, s0: f64, levels: u32) -> f64 {
        let big_f = seq.big_k();
        if s0 <= big_f {
            Self::raw(k, seq, 0.0, s0, levels)
        } else {
            Self::raw(k, seq, 0.0, big_f, levels) + Self::raw(k, seq, big_f, s0, levels)
        }
    }

    fn reduced(k: f64, seq: &JacobiSeq, s: f64, two_f: f64, per_period: f64, levels: u32) -> f64 {
        let n = (s / two_f).floor();
        let s0 = s - n * two_f;
        n * per_period + Self::raw_period_cell(k, seq, s0, levels)
    }

    fn dn_inverse(seq: &JacobiSeq, s: f64) -> f64 {
        // ∫₀ˢ du/dn² = (ε(s) − p²·sn·cn/dn) / p′²
        let t = seq.eval(s);
        let pp2 = seq.modulus().p_prime().powi(2);
        (seq.epsilon(s) - seq.modulus().p_squared() * t.sn * t.cn / t.dn) / pp2
    }

    fn cn_inverse(seq: &JacobiSeq, s: f64) -> f64 {
        // ∫₀ˢ du/cn² = (sn·dn/cn − ε(s)) / p′² + s
        let t = seq.eval(s);
        let pp2 = seq.modulus().p_prime().powi(2);
        (t.sn * t.dn / t.cn - seq.epsilon(s)) / pp2 + s
    }

    fn freeze_levels(k: f64, seq: &JacobiSeq, span: f64) -> u32 {
        let mut levels = 12u32;
        let mut prev = Self::raw_period_cell(k, seq, span, levels);
        while levels < 46 {
            let next = Self::raw_period_cell(k, seq, span, levels + 6);
            if (next - prev).abs() <= 1e-14 * (1.0 + next.abs()) {
                break;
            }
            prev = next;
            levels += 6;
        }
        levels + 6
    }

    pub fn eval(&self, s: f64) -> f64 {
        match &self.kind {
            PiKind::Constant => s - self.anchor,
            PiKind::DnInverse { at_anchor } => Self::dn_inverse(&self.seq, s) - at_anchor,
            PiKind::CnInverse { at_anchor } => Self::cn_inverse(&self.seq, s) - at_anchor,
            PiKind::Reduced { two_f, per_period, levels, at_anchor } => {
                Self::reduced(self.k, &self.seq, s, *two_f, *per_period, *levels) - at_anchor
            }
            PiKind::Direct { levels } => Self::raw(self.k, &self.seq, self.anchor, s, *levels),
        }
    }

    /// d/ds of [`ThirdKindEval::eval`], i.e. 1/(1 − k·sn²(s)).
    pub fn deriv(&self, s: f64) -> f64 {
        let t = self.seq.eval(s);
        1.0 / (1.0 - self.k * t.sn * t.sn)
    }
}
