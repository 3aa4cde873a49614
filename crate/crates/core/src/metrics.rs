//! Closed-form metrics, the radial profile W², the ODE reduction and the
//! boundary-slope computation.
//!
//! The metric family on r ≥ 1, 0 ≤ α ≤ 1 reads, in the orbit coframe,
//!
//! ```text
//! dr²/u + (u r²/4) λ² + r² (ν₁²+ν₂²)
//!       + ((r²−α²)/2) Σ_β (σ_{1β}²+σ_{2β}²)
//!       + ((r²+α²)/2) Σ_β (Σ_{1β}²+Σ_{2β}²)
//! ```
//!
//! with u = W² = ((r⁴−α⁴)^{n+1} + C) / (r⁴ (r⁴−α⁴)ⁿ) and the canonical
//! constant C = −(1−α⁴)^{n+1}.

use crate::error::Error;
use crate::exterior::scalar::{rational_to_f64, Poly};
use crate::exterior::{ExactRat, Jet, Scalar};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// The five squared coefficient functions of the ansatz, in one scalar
/// backend: dr², λ², |ν|², |σ_β|², |Σ_β|² directions.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricCoeffs<S> {
    pub grr: S,
    pub f_lambda2: S,
    pub c2: S,
    pub a2: S,
    pub b2: S,
}

// ---------------------------------------------------------------------------
// Generic closed-form pieces
// ---------------------------------------------------------------------------

fn pow_s<S: Scalar>(x: &S, k: usize) -> S {
    let mut acc = S::one();
    for _ in 0..k {
        acc = acc.mul(x);
    }
    acc
}

/// u = ((r⁴−α⁴)^{n+1} + C) / (r⁴ (r⁴−α⁴)ⁿ).
pub fn u_closed_form<S: Scalar>(n: usize, alpha4: &S, c_const: &S, r: &S) -> S {
    let r4 = pow_s(r, 4);
    let core = r4.sub(alpha4);
    // split as (r⁴ − α⁴)/r⁴ + C/(r⁴(r⁴ − α⁴)ⁿ); the C term is skipped when
    // C = 0 so the α = 1 profile stays finite at the r = 1 bolt
    let leading = core.div(&r4);
    if c_const.is_zero() {
        return leading;
    }
    let den = r4.mul(&pow_s(&core, n));
    leading.add(&c_const.div(&den))
}

/// Canonical integration constant C = −(1−α⁴)^{n+1}.
pub fn canonical_c<S: Scalar>(n: usize, alpha4: &S) -> S {
    pow_s(&S::one().sub(alpha4), n + 1).neg()
}

/// The residual Q̃ = u′(r⁵−rα⁴) − 4uα⁴ − 4(n+1)(r⁴−α⁴−r⁴u).
///
/// The solution family satisfies Q̃ = 0 identically; the curvature engine
/// certifies that the Ricci components of the ansatz are proportional to
/// this expression.
pub fn ode_residual_expr<S: Scalar>(n: usize, alpha4: &S, u: &S, du: &S, r: &S) -> S {
    let r4 = pow_s(r, 4);
    let r5 = pow_s(r, 5);
    let four = S::from_int(4);
    let t1 = du.mul(&r5.sub(&r.mul(alpha4)));
    let t2 = four.mul(u).mul(alpha4);
    let t3 = S::from_int(4 * (n as i64 + 1)).mul(&r4.sub(alpha4).sub(&r4.mul(u)));
    t1.sub(&t2).sub(&t3)
}

/// The five ansatz coefficients given the profile value u at r.
pub fn ansatz_coeffs<S: Scalar>(alpha2: &S, u: &S, r: &S) -> MetricCoeffs<S> {
    let r2 = r.mul(r);
    let half = S::from_rational(&BigRational::new(BigInt::from(1), BigInt::from(2)));
    let quarter = S::from_rational(&BigRational::new(BigInt::from(1), BigInt::from(4)));
    MetricCoeffs {
        grr: S::one().div(u),
        f_lambda2: u.mul(&r2).mul(&quarter),
        c2: r2.clone(),
        a2: r2.sub(alpha2).mul(&half),
        b2: r2.add(alpha2).mul(&half),
    }
}

// ---------------------------------------------------------------------------
// RadialProfile
// ---------------------------------------------------------------------------

/// u = W² with derivatives, either the closed-form family member or a
/// caller-supplied profile (negative controls).
#[derive(Clone)]
pub struct RadialProfile {
    pub n: usize,
    pub alpha: f64,
    pub c_const: f64,
    custom: Option<Arc<dyn Fn(Jet) -> Jet + Send + Sync>>,
}

impl RadialProfile {
    /// Closed-form profile with the canonical constant C = −(1−α⁴)^{n+1}.
    pub fn closed_form(n: usize, alpha: f64) -> Result<Self, Error> {
        if n < 1 {
            return Err(Error::InvalidArg("n must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidArg(format!("alpha {} outside [0,1]", alpha)));
        }
        let a4 = alpha.powi(4);
        Ok(RadialProfile {
            n,
            alpha,
            c_const: -(1.0 - a4).powi(n as i32 + 1),
            custom: None,
        })
    }

    /// Closed-form profile with an explicit integration constant.
    pub fn with_constant(n: usize, alpha: f64, c_const: f64) -> Result<Self, Error> {
        let mut p = Self::closed_form(n, alpha)?;
        p.c_const = c_const;
        Ok(p)
    }

    /// Arbitrary smooth profile u(r); used as a non-solution control.
    pub fn custom(
        n: usize,
        alpha: f64,
        f: Arc<dyn Fn(Jet) -> Jet + Send + Sync>,
    ) -> Result<Self, Error> {
        let mut p = Self::closed_form(n, alpha)?;
        p.custom = Some(f);
        Ok(p)
    }

    pub fn is_closed_form(&self) -> bool {
        self.custom.is_none()
    }

    /// u with first and second derivatives at r.
    pub fn u(&self, r: f64) -> Result<Jet, Error> {
        let rj = Jet::var(r);
        match &self.custom {
            Some(f) => Ok(f(rj)),
            None => {
                let a4 = Jet::constant(self.alpha.powi(4));
                if (r.powi(4) - self.alpha.powi(4)).abs() < 1e-300 {
                    return Err(Error::Domain(format!(
                        "u evaluation at r^4 = alpha^4 (r = {})",
                        r
                    )));
                }
                Ok(u_closed_form(
                    self.n,
                    &a4,
                    &Jet::constant(self.c_const),
                    &rj,
                ))
            }
        }
    }

    /// Q̃ at r, from this profile's u and u′.
    pub fn ode_residual(&self, r: f64) -> Result<f64, Error> {
        let u = self.u(r)?;
        let a4 = Jet::constant(self.alpha.powi(4));
        let q = ode_residual_expr(
            self.n,
            &a4,
            &Jet::constant(u.v),
            &Jet::constant(u.d1),
            &Jet::var(r),
        );
        Ok(q.v)
    }

    /// Refit C so that the closed-form profile passes through (r0, u0).
    pub fn refit_c(n: usize, alpha: f64, r0: f64, u0: f64) -> f64 {
        let a4 = alpha.powi(4);
        let core = r0.powi(4) - a4;
        u0 * r0.powi(4) * core.powi(n as i32) - core.powi(n as i32 + 1)
    }
}

/// Exact closed-form profile u as a rational function of r (rational α).
pub fn u_exact(n: usize, alpha: &BigRational, c_const: Option<&BigRational>) -> ExactRat {
    let a4 = ExactRat::from_rational(&num::pow::pow(alpha.clone(), 4));
    let c = match c_const {
        Some(c) => ExactRat::from_rational(c),
        None => canonical_c(n, &a4),
    };
    u_closed_form(n, &a4, &c, &<ExactRat as Scalar>::var_r())
}

// ---------------------------------------------------------------------------
// MetricAnsatz
// ---------------------------------------------------------------------------

/// A cohomogeneity-one metric of the ansatz shape: profile + fixed
/// algebraic coefficients a², b², c², f².
#[derive(Clone)]
pub struct MetricAnsatz {
    pub profile: RadialProfile,
}

impl MetricAnsatz {
    /// The Ricci-flat family member Ḡ_α.
    pub fn family(n: usize, alpha: f64) -> Result<Self, Error> {
        Ok(MetricAnsatz {
            profile: RadialProfile::closed_form(n, alpha)?,
        })
    }

    pub fn from_profile(profile: RadialProfile) -> Self {
        MetricAnsatz { profile }
    }

    pub fn n(&self) -> usize {
        self.profile.n
    }

    pub fn alpha(&self) -> f64 {
        self.profile.alpha
    }

    /// The five squared coefficients with derivatives at r.
    ///
    /// Rejects the degenerate loci r = 1 (for the canonical profile u(1)=0)
    /// and r² = α², where the coframe collapses.
    pub fn coeffs(&self, r: f64) -> Result<MetricCoeffs<Jet>, Error> {
        let u = self.profile.u(r)?;
        if u.v <= 0.0 {
            return Err(Error::DegenerateFrame(format!(
                "u(r) = {} <= 0 at r = {}",
                u.v, r
            )));
        }
        let a2 = self.alpha() * self.alpha();
        if r * r - a2 <= 0.0 {
            return Err(Error::DegenerateFrame(format!(
                "r^2 - alpha^2 = {} <= 0 at r = {}",
                r * r - a2,
                r
            )));
        }
        Ok(ansatz_coeffs(
            &Jet::constant(a2),
            &u,
            &Jet::var(r),
        ))
    }
}

/// Exact coefficients of the family Ḡ_α for rational α.
pub fn family_exact(n: usize, alpha: &BigRational) -> Result<MetricCoeffs<ExactRat>, Error> {
    if n < 1 {
        return Err(Error::InvalidArg("n must be >= 1".into()));
    }
    if alpha < &BigRational::zero() || alpha > &BigRational::one() {
        return Err(Error::InvalidArg("alpha outside [0,1]".into()));
    }
    let a2 = ExactRat::from_rational(&(alpha * alpha));
    let u = u_exact(n, alpha, None);
    Ok(ansatz_coeffs(&a2, &u, &<ExactRat as Scalar>::var_r()))
}

// ---------------------------------------------------------------------------
// Exact cross-checks against the printed special cases
// ---------------------------------------------------------------------------

fn poly_r4_pow(k: usize, shift: &BigRational) -> Poly {
    // (r⁴ − shift)^k
    let base = &Poly::monomial(BigRational::one(), 4) - &Poly::constant(shift.clone());
    base.pow(k as u32)
}

/// family_G(n=1, α) coincides with the 8-dimensional metric (*) after the
/// basis dictionary: exact identity of all five coefficient functions.
pub fn check_n1_matches_star(alpha: &BigRational) -> Result<bool, Error> {
    let g = family_exact(1, alpha)?;
    let a2 = alpha * alpha;
    let a4 = &a2 * &a2;
    // D = r⁸ − 2α⁴(r⁴−1) − 1
    let d_star = {
        let mut p = Poly::monomial(BigRational::one(), 8);
        p = &p - &Poly::monomial(&a4 * BigRational::from(BigInt::from(2)), 4);
        p = &p + &Poly::constant(&a4 * BigRational::from(BigInt::from(2)) - BigRational::one());
        p
    };
    // r⁴(r²−α²)(r²+α²) = r⁴(r⁴−α⁴)
    let num = &Poly::monomial(BigRational::one(), 4) * &poly_r4_pow(1, &a4);
    let star_grr = ExactRat::new(num.clone(), d_star.clone());
    // η₁² coefficient of (*): D / (r²(r⁴−α⁴)); our λ² coefficient under
    // λ = 2η₁ contributes 4·f_lambda2 to η₁².
    let star_eta1 = ExactRat::new(
        d_star,
        &Poly::monomial(BigRational::one(), 2) * &poly_r4_pow(1, &a4),
    );
    let four = <ExactRat as Scalar>::from_int(4);
    let r2 = ExactRat::from_poly(Poly::monomial(BigRational::one(), 2));
    let half = ExactRat::from_rational(&BigRational::new(BigInt::from(1), BigInt::from(2)));
    let star_a2 = r2.sub(&ExactRat::from_rational(&a2)).mul(&half);
    let star_b2 = r2.add(&ExactRat::from_rational(&a2)).mul(&half);
    Ok(g.grr == star_grr
        && four.mul(&g.f_lambda2) == star_eta1
        && g.c2 == r2
        && g.a2 == star_a2
        && g.b2 == star_b2)
}

/// family_G(n, α=1) coincides with the hyperkähler metric (3).
pub fn check_alpha1_matches_hyperkahler(n: usize) -> Result<bool, Error> {
    let one = BigRational::one();
    let g = family_exact(n, &one)?;
    // dr² coefficient (1 − r⁻⁴)⁻¹ = r⁴/(r⁴−1)
    let grr3 = ExactRat::new(
        Poly::monomial(BigRational::one(), 4),
        poly_r4_pow(1, &BigRational::one()),
    );
    // λ² coefficient (1−r⁻⁴) r²/4 = (r⁴−1)/(4r²)
    let flam3 = ExactRat::new(
        poly_r4_pow(1, &BigRational::one()),
        Poly::monomial(BigRational::from(BigInt::from(4)), 2),
    );
    let r2 = ExactRat::from_poly(Poly::monomial(BigRational::one(), 2));
    let half = ExactRat::from_rational(&BigRational::new(BigInt::from(1), BigInt::from(2)));
    let a23 = r2.sub(&<ExactRat as Scalar>::one()).mul(&half);
    let b23 = r2.add(&<ExactRat as Scalar>::one()).mul(&half);
    Ok(g.grr == grr3 && g.f_lambda2 == flam3 && g.c2 == r2 && g.a2 == a23 && g.b2 == b23)
}

/// family_G(n, α=0): radial and η₁ coefficients match the Page–Pope form
/// (1) with 2m+2 = 4n+4, i.e. grr = (1 − r^{−(4n+4)})⁻¹ and the η₁²
/// coefficient equals (1 − r^{−(4n+4)}) r².
pub fn check_alpha0_matches_page_pope(n: usize) -> Result<bool, Error> {
    let zero = BigRational::zero();
    let g = family_exact(n, &zero)?;
    let m = 4 * n + 4;
    // 1 − r^{−m} = (r^m − 1)/r^m
    let pm = &Poly::monomial(BigRational::one(), m) - &Poly::one();
    let grr_pp = ExactRat::new(Poly::monomial(BigRational::one(), m), pm.clone());
    let eta1_pp = ExactRat::new(&pm * &Poly::one(), Poly::monomial(BigRational::one(), m - 2));
    let four = <ExactRat as Scalar>::from_int(4);
    Ok(g.grr == grr_pp && four.mul(&g.f_lambda2) == eta1_pp)
}

/// Exact identity grr · g_{η₁η₁} = r² for the family.
pub fn check_grr_eta1_identity(n: usize, alpha: &BigRational) -> Result<bool, Error> {
    let g = family_exact(n, alpha)?;
    let four = <ExactRat as Scalar>::from_int(4);
    let r2 = ExactRat::from_poly(Poly::monomial(BigRational::one(), 2));
    Ok(g.grr.mul(&four.mul(&g.f_lambda2)) == r2)
}

/// Exact check that the closed-form u satisfies Q̃ = 0 identically.
pub fn check_residual_vanishes_exactly(n: usize, alpha: &BigRational) -> bool {
    let a4 = ExactRat::from_rational(&num::pow::pow(alpha.clone(), 4));
    let u = u_exact(n, alpha, None);
    let r = <ExactRat as Scalar>::var_r();
    let q = ode_residual_expr(n, &a4, &u, &u.deriv(), &r);
    q.is_zero()
}

// ---------------------------------------------------------------------------
// Boundary slope
// ---------------------------------------------------------------------------

/// Result of the bolt-slope computation at r = 1.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundarySlope {
    pub slope: f64,
    /// Set at α = 1, where the orbit degeneration is of hyperkähler type
    /// and the slope drops to 2.
    pub hyperkahler_bolt: bool,
}

/// lim_{r→1⁺} d/dt √(g_{η₁η₁}) for the canonical family member.
///
/// With g_{η₁η₁} = u r² and dt = dr/√u the limit is u(1) + u′(1)/2,
/// evaluated analytically through the jet of the closed form at r = 1
/// (the profile denominator is nonzero there for α < 1).
pub fn boundary_slope(n: usize, alpha: f64) -> Result<BoundarySlope, Error> {
    if n < 1 {
        return Err(Error::InvalidArg("n must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidArg(format!("alpha {} outside [0,1]", alpha)));
    }
    if alpha == 1.0 {
        // u = 1 − r⁻⁴ exactly; slope u(1) + u′(1)/2 = 2
        let u = u_closed_form(
            n,
            &Jet::constant(1.0),
            &Jet::constant(0.0),
            &Jet::var(1.0),
        );
        return Ok(BoundarySlope {
            slope: u.v + u.d1 / 2.0,
            hyperkahler_bolt: true,
        });
    }
    let profile = RadialProfile::closed_form(n, alpha)?;
    let u = profile.u(1.0)?;
    Ok(BoundarySlope {
        slope: u.v + u.d1 / 2.0,
        hyperkahler_bolt: false,
    })
}

// ---------------------------------------------------------------------------
// ODE integration
// ---------------------------------------------------------------------------

/// One accepted integration sample.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OdeSample {
    pub r: f64,
    pub u: f64,
}

/// Right-hand side of u′ = [4uα⁴ + 4(n+1)(r⁴−α⁴−r⁴u)] / (r⁵−rα⁴).
fn ode_rhs(n: usize, alpha4: f64, r: f64, u: f64) -> f64 {
    let r4 = r.powi(4);
    (4.0 * u * alpha4 + 4.0 * (n as f64 + 1.0) * (r4 - alpha4 - r4 * u)) / (r * r4 - r * alpha4)
}

/// Adaptive Dormand–Prince (RK5(4)) integration of the first-order
/// reduction from (r0, u0) to r1.
pub fn integrate_ode(
    n: usize,
    alpha: f64,
    r0: f64,
    u0: f64,
    r1: f64,
    tol: f64,
) -> Result<Vec<OdeSample>, Error> {
    if !(r1 > r0) || tol <= 0.0 {
        return Err(Error::InvalidArg(
            "need r1 > r0 and tol > 0 for integration".into(),
        ));
    }
    let a4 = alpha.powi(4);
    if (r0.powi(5) - r0 * a4).abs() < 1e-12 {
        return Err(Error::Domain(format!(
            "vector field singular at r0 = {} (denominator r⁵−rα⁴ ≈ 0)",
            r0
        )));
    }
    let f = |r: f64, u: f64| ode_rhs(n, a4, r, u);

    // Dormand–Prince coefficients
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let mut r = r0;
    let mut u = u0;
    let mut h = ((r1 - r0) / 100.0).min(1e-3);
    let mut out = vec![OdeSample { r, u }];
    let mut k = [0.0f64; 7];
    let min_step = 1e-14 * (r1 - r0);

    while r < r1 {
        if r + h > r1 {
            h = r1 - r;
        }
        k[0] = f(r, u);
        for s in 0..6 {
            let mut du = 0.0;
            for (j, kj) in k.iter().enumerate().take(s + 1) {
                du += A[s][j] * kj;
            }
            k[s + 1] = f(r + C[s] * h, u + h * du);
        }
        let mut u5 = u;
        let mut u4 = u;
        for j in 0..7 {
            u5 += h * B5[j] * k[j];
            u4 += h * B4[j] * k[j];
        }
        let err = (u5 - u4).abs() / (tol * (1.0 + u5.abs()));
        if !err.is_finite() {
            return Err(Error::OdeFailure(format!(
                "non-finite step error at r = {}",
                r
            )));
        }
        if err <= 1.0 {
            r += h;
            u = u5;
            out.push(OdeSample { r, u });
        }
        let scale = if err > 0.0 {
            0.9 * err.powf(-0.2)
        } else {
            5.0
        };
        h *= scale.clamp(0.2, 5.0);
        if h < min_step {
            return Err(Error::OdeFailure(format!(
                "step size underflow near r = {} (h = {:e}); denominator likely singular",
                r, h
            )));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Profile JSON import/export
// ---------------------------------------------------------------------------

/// One sample of a user-supplied profile. Derivative fields are required
/// only by curvature evaluation.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ProfileSample {
    pub r: f64,
    pub u: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub du: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2u: Option<f64>,
}

/// JSON profile document: `{n, alpha, C, samples: [{r, u, ...}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileDocument {
    pub n: usize,
    pub alpha: f64,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c_const: Option<f64>,
    pub samples: Vec<ProfileSample>,
}

impl ProfileDocument {
    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArg(format!("profile JSON: {}", e)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serialization")
    }
}

pub fn rational_alpha_to_f64(alpha: &BigRational) -> f64 {
    rational_to_f64(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::scalar::rat;

    #[test]
    fn u_at_canonical_values() {
        // n=1, α=0, C=−1, r=2 → 255/256
        let u = u_exact(1, &rat(0, 1), None);
        assert_eq!(u.eval(&rat(2, 1)).unwrap(), rat(255, 256));
        // α<1 canonical: u(1) = 0
        for n in 1..=4 {
            for a in [rat(0, 1), rat(1, 2), rat(9, 10)] {
                let u = u_exact(n, &a, None);
                assert!(u.eval(&rat(1, 1)).unwrap().is_zero(), "n={} α={}", n, a);
            }
        }
        // α=1: u = 1 − r⁻⁴
        let u1 = u_exact(2, &rat(1, 1), None);
        let expect = ExactRat::new(
            &Poly::monomial(BigRational::one(), 4) - &Poly::one(),
            Poly::monomial(BigRational::one(), 4),
        );
        assert_eq!(u1, expect);
    }

    #[test]
    fn residual_vanishes_on_closed_form() {
        for n in 1..=4 {
            for a in [rat(0, 1), rat(1, 3), rat(1, 2), rat(9, 10), rat(1, 1)] {
                assert!(check_residual_vanishes_exactly(n, &a), "n={} α={}", n, a);
            }
        }
    }

    #[test]
    fn residual_examples() {
        // closed-form n=2, α=1/3: Q̃ = 0 exactly at sample rationals
        let a = rat(1, 3);
        let a4 = ExactRat::from_rational(&num::pow::pow(a.clone(), 4));
        let u = u_exact(2, &a, None);
        let q = ode_residual_expr(2, &a4, &u, &u.deriv(), &<ExactRat as Scalar>::var_r());
        for r in [rat(3, 2), rat(2, 1), rat(3, 1)] {
            assert!(q.eval(&r).unwrap().is_zero());
        }
        // u ≡ 1, α = 0: every term vanishes
        let q0 = ode_residual_expr(
            1,
            &<ExactRat as Scalar>::zero(),
            &<ExactRat as Scalar>::one(),
            &<ExactRat as Scalar>::zero(),
            &<ExactRat as Scalar>::var_r(),
        );
        assert!(q0.is_zero());
        // negative control: u = 1 − r⁻², n=1, α=1/2, r=2
        let p = RadialProfile::custom(
            1,
            0.5,
            Arc::new(|r: Jet| Jet::constant(1.0) - (r * r).recip()),
        )
        .unwrap();
        let q = p.ode_residual(2.0).unwrap();
        // direct evaluation: u=3/4, u′=2/8=1/4, Q̃ = (1/4)(32−2·1/16) − 4·(3/4)/16 − 8(16 − 1/16 − 16·3/4)
        let expect = 0.25 * (32.0 - 2.0 / 16.0) - 3.0 / 16.0 - 8.0 * (16.0 - 1.0 / 16.0 - 12.0);
        assert!((q - expect).abs() < 1e-12, "q={} expect={}", q, expect);
        assert!(q.abs() > 1.0); // genuinely nonzero control
    }

    #[test]
    fn family_special_cases_exact() {
        for a in [rat(0, 1), rat(1, 3), rat(1, 2), rat(9, 10), rat(1, 1)] {
            assert!(check_n1_matches_star(&a).unwrap(), "α={}", a);
        }
        for n in 1..=4 {
            assert!(check_alpha1_matches_hyperkahler(n).unwrap(), "n={}", n);
            assert!(check_alpha0_matches_page_pope(n).unwrap(), "n={}", n);
            for a in [rat(0, 1), rat(1, 2), rat(1, 1)] {
                assert!(check_grr_eta1_identity(n, &a).unwrap());
            }
        }
    }

    #[test]
    fn family_rejects_bad_args() {
        assert!(MetricAnsatz::family(0, 0.5).is_err());
        assert!(MetricAnsatz::family(1, -0.1).is_err());
        assert!(MetricAnsatz::family(1, 1.1).is_err());
    }

    #[test]
    fn coeffs_positive_on_domain() {
        for n in 1..=3usize {
            for &alpha in &[0.0, 0.3, 0.7, 0.99] {
                let m = MetricAnsatz::family(n, alpha).unwrap();
                for &r in &[1.01, 1.5, 2.0, 5.0, 50.0] {
                    let c = m.coeffs(r).unwrap();
                    assert!(c.grr.v > 0.0);
                    assert!(c.f_lambda2.v > 0.0);
                    assert!(c.c2.v > 0.0);
                    assert!(c.a2.v > 0.0);
                    assert!(c.b2.v > 0.0);
                }
            }
        }
    }

    #[test]
    fn boundary_slope_values() {
        let s = boundary_slope(1, 0.5).unwrap();
        assert!((s.slope - 4.0).abs() < 1e-12);
        assert!(!s.hyperkahler_bolt);
        let s = boundary_slope(3, 0.9).unwrap();
        assert!((s.slope - 8.0).abs() < 1e-9);
        let s = boundary_slope(2, 1.0).unwrap();
        assert!((s.slope - 2.0).abs() < 1e-12);
        assert!(s.hyperkahler_bolt);
    }

    #[test]
    fn ode_matches_closed_form() {
        // n=1, α=1/2, r0=1.001 → r1=3
        let p = RadialProfile::closed_form(1, 0.5).unwrap();
        let u0 = p.u(1.001).unwrap().v;
        let samples = integrate_ode(1, 0.5, 1.001, u0, 3.0, 1e-10).unwrap();
        let last = samples.last().unwrap();
        let truth = p.u(last.r).unwrap().v;
        assert!(((last.u - truth) / (1.0 + truth.abs())).abs() < 1e-8);
        // n=3, α=0 vs 1 − r⁻¹⁶
        let p = RadialProfile::closed_form(3, 0.0).unwrap();
        let u0 = p.u(1.01).unwrap().v;
        let samples = integrate_ode(3, 0.0, 1.01, u0, 4.0, 1e-10).unwrap();
        let last = samples.last().unwrap();
        let truth = 1.0 - last.r.powi(-16);
        assert!(((last.u - truth) / (1.0 + truth)).abs() < 1e-8);
    }

    #[test]
    fn ode_perturbed_start_refits_c() {
        let n = 1;
        let alpha = 0.5;
        let p = RadialProfile::closed_form(n, alpha).unwrap();
        let r0 = 1.5;
        let u0 = p.u(r0).unwrap().v + 0.1;
        let samples = integrate_ode(n, alpha, r0, u0, 3.0, 1e-10).unwrap();
        let last = samples.last().unwrap();
        // lands on a different member of the family (different C)...
        let c = RadialProfile::refit_c(n, alpha, r0, u0);
        assert!((c - p.c_const).abs() > 0.1);
        // ...and tracks that member's closed form
        let refit = RadialProfile::with_constant(n, alpha, c).unwrap();
        let truth = refit.u(last.r).unwrap().v;
        assert!(((last.u - truth) / (1.0 + truth.abs())).abs() < 1e-8);
    }

    #[test]
    fn ode_rejects_singular_start() {
        assert!(integrate_ode(1, 1.0, 1.0, 0.0, 2.0, 1e-8).is_err());
    }

    #[test]
    fn profile_json_round_trip() {
        let doc = ProfileDocument {
            n: 1,
            alpha: 0.5,
            c_const: Some(-0.87890625),
            samples: vec![ProfileSample {
                r: 2.0,
                u: 0.75,
                du: Some(0.25),
                d2u: None,
            }],
        };
        let s = doc.to_json();
        let back = ProfileDocument::from_json(&s).unwrap();
        assert_eq!(back.n, 1);
        assert_eq!(back.samples[0].du, Some(0.25));
    }
}
