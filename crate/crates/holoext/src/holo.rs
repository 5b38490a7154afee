//! Holomorphic functions as evaluator trees, plus the sampling-based
//! verification primitives built on them.
//!
//! Functions are represented compositionally (peaks, Moebius maps, Laurent
//! polynomials, sums, products, compositions) and evaluated exactly by
//! recursion; coefficients are extracted on demand by sampling a circle and
//! applying a discrete Fourier transform. A two-radius coefficient comparison
//! serves as a numerical holomorphy certificate: a function agrees with a
//! single Laurent expansion on an annulus if and only if the sampled
//! coefficients on two concentric circles coincide.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{sample_boundary, Circle, RegionDescriptor, ON_CIRCLE_REL_TOL};

/// Denominators below this magnitude count as poles.
pub const POLE_TOL: f64 = 1e-14;

/// Grace distance allowed when evaluating at the boundary of a region.
pub const REGION_EDGE_TOL: f64 = 1e-9;

/// Expression tree over holomorphic primitives.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expr {
    Const {
        #[serde(with = "crate::cxfmt::complex")]
        value: Complex64,
    },
    /// `sum_k coeffs[k] * (z - center)^k` with finitely many integer indices.
    LaurentPoly {
        #[serde(with = "crate::cxfmt::complex")]
        center: Complex64,
        #[serde(with = "crate::cxfmt::complex_map")]
        coeffs: BTreeMap<i32, Complex64>,
    },
    /// Peak function anchored on a circle: 1 at the anchor, strictly smaller
    /// in modulus everywhere else on the closed disc.
    DiscPeak {
        #[serde(with = "crate::cxfmt::complex")]
        anchor: Complex64,
        circle: Circle,
        exponent: u32,
    },
    /// `(a z + b) / (c z + d)` with `ad - bc != 0`.
    Moebius {
        #[serde(with = "crate::cxfmt::complex")]
        a: Complex64,
        #[serde(with = "crate::cxfmt::complex")]
        b: Complex64,
        #[serde(with = "crate::cxfmt::complex")]
        c: Complex64,
        #[serde(with = "crate::cxfmt::complex")]
        d: Complex64,
    },
    Sum {
        terms: Vec<Expr>,
    },
    Product {
        factors: Vec<Expr>,
    },
    Scale {
        #[serde(with = "crate::cxfmt::complex")]
        factor: Complex64,
        inner: Box<Expr>,
    },
    /// `outer(inner(z))`.
    Compose {
        outer: Box<Expr>,
        inner: Box<Expr>,
    },
}

/// A holomorphic function: an expression tree with an optional region of
/// definition recorded at the root. Evaluation checks the region (closure,
/// with [`REGION_EDGE_TOL`] of grace) when one is present.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HoloFunction {
    pub expr: Expr,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub region: Option<RegionDescriptor>,
}

fn eval_expr(expr: &Expr, z: Complex64) -> Result<Complex64> {
    match expr {
        Expr::Const { value } => Ok(*value),
        Expr::LaurentPoly { center, coeffs } => {
            let w = z - center;
            let has_pole_part = coeffs.keys().any(|&k| k < 0);
            if has_pole_part && w.norm() <= POLE_TOL {
                return Err(Error::PoleHit { denom: w.norm() });
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (&k, &c) in coeffs {
                acc += c * w.powi(k);
            }
            Ok(acc)
        }
        Expr::DiscPeak {
            anchor,
            circle,
            exponent,
        } => {
            let u = (anchor - circle.center) / circle.radius;
            let w = (z - circle.center) / circle.radius;
            let base = (Complex64::new(1.0, 0.0) + u.conj() * w) / 2.0;
            Ok(base.powu(*exponent))
        }
        Expr::Moebius { a, b, c, d } => {
            let den = c * z + d;
            if den.norm() <= POLE_TOL {
                return Err(Error::PoleHit { denom: den.norm() });
            }
            Ok((a * z + b) / den)
        }
        Expr::Sum { terms } => {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in terms {
                acc += eval_expr(t, z)?;
            }
            Ok(acc)
        }
        Expr::Product { factors } => {
            let mut acc = Complex64::new(1.0, 0.0);
            for f in factors {
                acc *= eval_expr(f, z)?;
            }
            Ok(acc)
        }
        Expr::Scale { factor, inner } => Ok(factor * eval_expr(inner, z)?),
        Expr::Compose { outer, inner } => {
            let w = eval_expr(inner, z)?;
            eval_expr(outer, w)
        }
    }
}

impl HoloFunction {
    pub fn constant(value: Complex64) -> Self {
        HoloFunction {
            expr: Expr::Const { value },
            region: None,
        }
    }

    pub fn laurent(center: Complex64, coeffs: BTreeMap<i32, Complex64>) -> Self {
        HoloFunction {
            expr: Expr::LaurentPoly { center, coeffs },
            region: None,
        }
    }

    /// `(a z + b) / (c z + d)`; the determinant must not vanish.
    pub fn moebius(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm() * d.norm() + b.norm() * c.norm();
        if det.norm() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::DegenerateMoebius);
        }
        Ok(HoloFunction {
            expr: Expr::Moebius { a, b, c, d },
            region: None,
        })
    }

    pub fn sum(terms: Vec<HoloFunction>) -> Self {
        HoloFunction {
            expr: Expr::Sum {
                terms: terms.into_iter().map(|f| f.expr).collect(),
            },
            region: None,
        }
    }

    pub fn product(factors: Vec<HoloFunction>) -> Self {
        HoloFunction {
            expr: Expr::Product {
                factors: factors.into_iter().map(|f| f.expr).collect(),
            },
            region: None,
        }
    }

    pub fn scale(factor: Complex64, inner: HoloFunction) -> Self {
        HoloFunction {
            expr: Expr::Scale {
                factor,
                inner: Box::new(inner.expr),
            },
            region: None,
        }
    }

    pub fn compose(outer: HoloFunction, inner: HoloFunction) -> Self {
        HoloFunction {
            expr: Expr::Compose {
                outer: Box::new(outer.expr),
                inner: Box::new(inner.expr),
            },
            region: None,
        }
    }

    /// Attach a region of definition to the root.
    pub fn with_region(mut self, region: RegionDescriptor) -> Self {
        self.region = Some(region);
        self
    }

    /// Evaluate at `z`. Fails with `OutsideRegion` if a region is recorded
    /// and `z` is not in its closure, and with `PoleHit` at singular points.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if let Some(region) = &self.region {
            if !region.contains_closure(z, REGION_EDGE_TOL) {
                return Err(Error::OutsideRegion { re: z.re, im: z.im });
            }
        }
        eval_expr(&self.expr, z)
    }
}

/// Peak function on a circle: equals 1 at `anchor`, has modulus < 1 at every
/// other point of the closed disc, and is holomorphic inside.
///
/// On the unit circle this is `((1 + conj(anchor) z) / 2)^n`; general circles
/// are handled by conjugating with the affine map to the unit circle.
pub fn disc_peak(anchor: Complex64, circle: &Circle, exponent: u32) -> Result<HoloFunction> {
    if exponent == 0 {
        return Err(Error::InvalidArgument("peak exponent must be >= 1".into()));
    }
    let deviation = circle.boundary_distance(anchor).abs();
    if !circle.is_on_boundary(anchor, ON_CIRCLE_REL_TOL) {
        return Err(Error::AnchorNotOnCircle { deviation });
    }
    Ok(HoloFunction {
        expr: Expr::DiscPeak {
            anchor,
            circle: *circle,
            exponent,
        },
        region: None,
    }
    .with_region(RegionDescriptor {
        circles: vec![(*circle, crate::geometry::Side::Inside)],
        contains_infinity: false,
    }))
}

/// Peak function anchored on the inner circle `|z| = r0` of a standard
/// annulus: `((1 + conj(r0/anchor) (r0/z)) / 2)^n`. It equals 1 at the
/// anchor, has modulus < 1 everywhere else on `|z| >= r0`, and is holomorphic
/// on `|z| > 0`, including at infinity.
pub fn annulus_inner_peak(anchor: Complex64, r0: f64, exponent: u32) -> Result<HoloFunction> {
    if !(0.0 < r0 && r0 < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "inner radius must satisfy 0 < r0 < 1, got {r0}"
        )));
    }
    if exponent == 0 {
        return Err(Error::InvalidArgument("peak exponent must be >= 1".into()));
    }
    let deviation = (anchor.norm() - r0).abs();
    if deviation > ON_CIRCLE_REL_TOL * r0.max(1.0) {
        return Err(Error::AnchorNotOnInnerCircle { deviation });
    }
    // In the inverted coordinate w = r0/z the anchor lands on the unit circle
    // and the function is a plain disc peak there.
    let w_anchor = Complex64::new(r0, 0.0) / anchor;
    let outer_peak = Expr::DiscPeak {
        anchor: w_anchor / w_anchor.norm(),
        circle: Circle::unit(),
        exponent,
    };
    let inversion = Expr::Moebius {
        a: Complex64::new(0.0, 0.0),
        b: Complex64::new(r0, 0.0),
        c: Complex64::new(1.0, 0.0),
        d: Complex64::new(0.0, 0.0),
    };
    let inner_circle = Circle {
        center: Complex64::new(0.0, 0.0),
        radius: r0,
    };
    Ok(HoloFunction {
        expr: Expr::Compose {
            outer: Box::new(outer_peak),
            inner: Box::new(inversion),
        },
        region: Some(RegionDescriptor {
            circles: vec![(inner_circle, crate::geometry::Side::Outside)],
            contains_infinity: true,
        }),
    })
}

/// Finitely supported coefficient sequence indexed over `[-order, order]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierSeq {
    #[serde(with = "crate::cxfmt::complex_map")]
    pub coeffs: BTreeMap<i32, Complex64>,
    pub order: u32,
}

impl FourierSeq {
    pub fn new(coeffs: BTreeMap<i32, Complex64>, order: u32) -> Result<Self> {
        if let Some(&k) = coeffs.keys().find(|&&k| k.unsigned_abs() > order) {
            return Err(Error::InvalidArgument(format!(
                "coefficient index {k} outside truncation order {order}"
            )));
        }
        Ok(FourierSeq { coeffs, order })
    }

    pub fn get(&self, j: i32) -> Complex64 {
        self.coeffs
            .get(&j)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }
}

fn kahan_add(sum: &mut Complex64, comp: &mut Complex64, term: Complex64) {
    let y = term - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

/// Sampled Laurent coefficients of an arbitrary evaluator on a circle.
///
/// Returns `a_j` for `|j| <= j_max`, where `a_j` approximates the coefficient
/// of `(z - center)^j`: the uniform-sample average of `f(z_m) e^{-ij theta_m}`
/// rescaled by `radius^{-j}`. `n_samples` must be a power of two with
/// `n_samples >= 4 j_max`; indices aliased from beyond `n_samples` fold in
/// with a factor that decays geometrically in the radius.
pub fn laurent_coeffs_fn<F>(
    mut f: F,
    circle: &Circle,
    j_max: u32,
    n_samples: usize,
) -> Result<FourierSeq>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    if j_max == 0 {
        return Err(Error::InvalidArgument("j_max must be >= 1".into()));
    }
    if !n_samples.is_power_of_two() || n_samples < 4 * j_max as usize {
        return Err(Error::InvalidArgument(format!(
            "n_samples must be a power of two >= 4 * j_max, got {n_samples}"
        )));
    }
    let n = n_samples;
    let mut values = Vec::with_capacity(n);
    for m in 0..n {
        let z = circle.point_at(2.0 * PI * m as f64 / n as f64);
        values.push(f(z)?);
    }
    let mut coeffs = BTreeMap::new();
    for j in -(j_max as i64)..=(j_max as i64) {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut comp = Complex64::new(0.0, 0.0);
        for (m, v) in values.iter().enumerate() {
            // phase index reduced exactly in integers to avoid drift
            let k = (j * m as i64).rem_euclid(n as i64);
            let w = Complex64::from_polar(1.0, -2.0 * PI * k as f64 / n as f64);
            kahan_add(&mut sum, &mut comp, v * w);
        }
        let a = sum / n as f64 * circle.radius.powi(-(j as i32));
        coeffs.insert(j as i32, a);
    }
    FourierSeq::new(coeffs, j_max)
}

/// Sampled Laurent coefficients of a [`HoloFunction`] on a circle.
pub fn laurent_coeffs(
    f: &HoloFunction,
    circle: &Circle,
    j_max: u32,
    n_samples: usize,
) -> Result<FourierSeq> {
    laurent_coeffs_fn(|z| f.evaluate(z), circle, j_max, n_samples)
}

/// Maximum of `|f|` over `n_samples` equally spaced points of the circle.
///
/// This is a lower bound for the true supremum; callers that need a strict
/// boundary inequality must keep a safety factor of their own.
pub fn sup_on_circle(f: &HoloFunction, circle: &Circle, n_samples: usize) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be >= 1".into()));
    }
    let mut sup: f64 = 0.0;
    for z in sample_boundary(circle, n_samples) {
        sup = sup.max(f.evaluate(z)?.norm());
    }
    Ok(sup)
}

/// Number of samples used by [`holomorphy_residual`] per circle.
fn residual_samples(j_max: u32) -> usize {
    let needed = (4 * j_max as usize).next_power_of_two();
    needed.max(4096)
}

/// Two-radius holomorphy certificate.
///
/// Computes sampled Laurent coefficients on the circles of radii `rho1 < rho2`
/// around `center` and returns the largest coefficient mismatch over
/// `|j| <= j_max`. The result is near zero exactly when `f` agrees with a
/// single Laurent expansion on the closed annulus between the circles.
///
/// Each index is compared at the scale `min(1, rho1^j, rho2^j)`, the size of
/// `(z - center)^j` where it is smallest on the two circles. An index whose
/// basis function is tiny on a circle carries no signal in that circle's
/// samples; comparing the raw coefficients there would amplify sampling
/// roundoff by `rho^{-j}` and bury genuine mismatches in noise.
pub fn holomorphy_residual(
    f: &HoloFunction,
    center: Complex64,
    rho1: f64,
    rho2: f64,
    j_max: u32,
) -> Result<f64> {
    if !(0.0 < rho1 && rho1 < rho2) {
        return Err(Error::RegionViolation(format!(
            "need 0 < rho1 < rho2, got rho1 = {rho1}, rho2 = {rho2}"
        )));
    }
    let n = residual_samples(j_max);
    let c1 = Circle { center, radius: rho1 };
    let c2 = Circle { center, radius: rho2 };
    let s1 = laurent_coeffs(f, &c1, j_max, n)?;
    let s2 = laurent_coeffs(f, &c2, j_max, n)?;
    let mut residual: f64 = 0.0;
    for j in -(j_max as i32)..=(j_max as i32) {
        let weight = 1.0_f64.min(rho1.powi(j)).min(rho2.powi(j));
        residual = residual.max((s1.get(j) - s2.get(j)).norm() * weight);
    }
    Ok(residual)
}
