//! Exact Moebius charts for circle-bounded regions.
//!
//! A one-circle region (disc interior, or circle exterior with the point at
//! infinity) maps to the unit disc by an affine map or an inversion. A
//! two-circle region maps to a standard annulus `{r0 < |w| < 1}` by the
//! Moebius transformation that sends the common symmetric points of the two
//! circles to 0 and infinity; `r0` is the conformal modulus of the region and
//! is unique. All charts are verified against sampled boundary images before
//! they are returned.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{sample_boundary, Circle, RegionDescriptor, Side, CIRCLE_GAP_TOL};
use crate::holo::{HoloFunction, POLE_TOL};

/// Largest allowed deviation of sampled boundary images from their target
/// circle.
pub const CHART_BOUNDARY_TOL: f64 = 1e-10;

const CHART_CHECK_SAMPLES: usize = 512;

/// `z -> (a z + b) / (c z + d)` with `a d - b c != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMap {
    #[serde(with = "crate::cxfmt::complex")]
    pub a: Complex64,
    #[serde(with = "crate::cxfmt::complex")]
    pub b: Complex64,
    #[serde(with = "crate::cxfmt::complex")]
    pub c: Complex64,
    #[serde(with = "crate::cxfmt::complex")]
    pub d: Complex64,
}

impl MoebiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm() * d.norm() + b.norm() * c.norm();
        if det.norm() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::DegenerateMoebius);
        }
        Ok(MoebiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    pub fn forward(&self, z: Complex64) -> Result<Complex64> {
        let den = self.c * z + self.d;
        if den.norm() <= POLE_TOL {
            return Err(Error::PoleHit { denom: den.norm() });
        }
        Ok((self.a * z + self.b) / den)
    }

    /// Image of the point at infinity; `None` when the map is affine and
    /// fixes infinity.
    pub fn forward_infinity(&self) -> Option<Complex64> {
        if self.c.norm() == 0.0 {
            None
        } else {
            Some(self.a / self.c)
        }
    }

    pub fn inverse(&self, w: Complex64) -> Result<Complex64> {
        self.inverse_map().forward(w)
    }

    pub fn inverse_map(&self) -> MoebiusMap {
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// The composition `self(first(z))` as a single map.
    pub fn compose(&self, first: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * first.a + self.b * first.c,
            b: self.a * first.b + self.b * first.d,
            c: self.c * first.a + self.d * first.c,
            d: self.c * first.b + self.d * first.d,
        }
    }

    /// Image of a circle not passing through the pole.
    ///
    /// The pole and its reflection across the source circle form a symmetric
    /// pair, so their images (infinity and one finite point) are symmetric
    /// with respect to the image circle; the finite image is therefore the
    /// image circle's center.
    pub fn image_circle(&self, circle: &Circle) -> Result<Circle> {
        if self.c.norm() == 0.0 {
            let factor = self.a / self.d;
            return Circle::new(
                self.forward(circle.center)?,
                factor.norm() * circle.radius,
            );
        }
        let pole = -self.d / self.c;
        let offset = pole - circle.center;
        if (offset.norm() - circle.radius).abs() <= 1e-12 * circle.radius.max(1.0) {
            return Err(Error::UnsupportedRegion(
                "circle passes through the pole and maps to a line".into(),
            ));
        }
        if offset.norm() == 0.0 {
            // pole at the center: its reflection is the point at infinity
            let center = self.forward_infinity().expect("c != 0 on this branch");
            let boundary_point = circle.center + Complex64::new(circle.radius, 0.0);
            let radius = (self.forward(boundary_point)? - center).norm();
            return Circle::new(center, radius);
        }
        let reflected = circle.center + circle.radius * circle.radius / offset.conj();
        let center = self.forward(reflected)?;
        let boundary_point = circle.center + offset * (circle.radius / offset.norm());
        let radius = (self.forward(boundary_point)? - center).norm();
        Circle::new(center, radius)
    }

    /// The map as a holomorphic expression-tree node.
    pub fn to_holo(&self) -> HoloFunction {
        HoloFunction::moebius(self.a, self.b, self.c, self.d)
            .expect("constructed maps are nondegenerate")
    }
}

/// A verified chart from a two-circle region onto a standard annulus. The
/// source circle recorded as `source_outer` maps onto the unit circle, the
/// one recorded as `source_inner` onto `|w| = r0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnulusChart {
    pub map: MoebiusMap,
    pub r0: f64,
    pub source_outer: Circle,
    pub source_inner: Circle,
    /// Orientation convention marker: the outer source circle maps to the
    /// unit circle.
    pub outer_to_unit: bool,
}

/// Chart for a one-circle region: the interior of a circle maps to the unit
/// disc by `(z - center)/radius`, the exterior by `radius/(z - center)`,
/// which sends infinity to 0. The boundary maps onto the unit circle either
/// way.
pub fn disc_chart(region: &RegionDescriptor) -> Result<MoebiusMap> {
    if region.circles.len() != 1 {
        return Err(Error::UnsupportedRegion(format!(
            "disc chart needs a one-circle region, got {} circles",
            region.circles.len()
        )));
    }
    let (circle, side) = region.circles[0];
    match side {
        Side::Inside => MoebiusMap::new(
            Complex64::new(1.0, 0.0),
            -circle.center,
            Complex64::new(0.0, 0.0),
            Complex64::new(circle.radius, 0.0),
        ),
        Side::Outside => MoebiusMap::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(circle.radius, 0.0),
            Complex64::new(1.0, 0.0),
            -circle.center,
        ),
    }
}

/// Verify a chart's boundary correspondence on sampled points: images of the
/// outer source circle must lie on the unit circle and images of the inner
/// source circle on `|w| = r0`, to within [`CHART_BOUNDARY_TOL`].
pub fn verify_chart(chart: &AnnulusChart) -> Result<()> {
    let mut worst: f64 = 0.0;
    for z in sample_boundary(&chart.source_outer, CHART_CHECK_SAMPLES) {
        worst = worst.max((chart.map.forward(z)?.norm() - 1.0).abs());
    }
    for z in sample_boundary(&chart.source_inner, CHART_CHECK_SAMPLES) {
        worst = worst.max((chart.map.forward(z)?.norm() - chart.r0).abs());
    }
    if worst >= CHART_BOUNDARY_TOL {
        return Err(Error::ChartCheckFailed { deviation: worst });
    }
    Ok(())
}

/// Chart from the region between two nested circles onto the standard
/// annulus `{r0 < |w| < 1}`, outer circle to the unit circle.
///
/// After normalizing by a similarity so the outer circle is the unit circle
/// and the inner center is a nonnegative real `c` with radius `r`, the common
/// symmetric points of the two circles are the roots of
/// `c x^2 - (1 + c^2 - r^2) x + c = 0`, a reciprocal pair `x1, 1/x1`. The
/// disc automorphism `(z - x1)/(1 - x1 z)` with the root `|x1| < 1` sends
/// both circles to concentric ones; `r0 = |T(c - r)|`. Concentric inputs
/// short-circuit to the normalizing similarity itself.
pub fn annulus_chart(outer: &Circle, inner: &Circle) -> Result<AnnulusChart> {
    let gap = outer.radius - ((inner.center - outer.center).norm() + inner.radius);
    if gap < CIRCLE_GAP_TOL {
        return Err(Error::NotNested);
    }
    let offset = inner.center - outer.center;
    let dist = offset.norm();
    let rotation = if dist <= 1e-14 * outer.radius {
        Complex64::new(1.0, 0.0)
    } else {
        (offset / dist).conj()
    };
    // similarity A(z) = rotation * (z - outer.center) / outer.radius
    let normalize = MoebiusMap::new(
        rotation / outer.radius,
        -rotation * outer.center / outer.radius,
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    )?;
    let c = dist / outer.radius;
    let r = inner.radius / outer.radius;

    let (map, r0) = if c <= 1e-14 {
        (normalize, r)
    } else {
        let b = 1.0 + c * c - r * r;
        let discriminant = (b - 2.0 * c) * (b + 2.0 * c);
        // nested circles keep the discriminant strictly positive
        let sq = discriminant.sqrt();
        let x1 = 2.0 * c / (b + sq);
        let automorphism = MoebiusMap::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(-x1, 0.0),
            Complex64::new(-x1, 0.0),
            Complex64::new(1.0, 0.0),
        )?;
        let r0 = ((c - r - x1) / (1.0 - x1 * (c - r))).abs();
        (automorphism.compose(&normalize), r0)
    };

    let chart = AnnulusChart {
        map,
        r0,
        source_outer: *outer,
        source_inner: *inner,
        outer_to_unit: true,
    };
    verify_chart(&chart)?;
    Ok(chart)
}

/// The conformal modulus `r0` of the region between two nested circles.
pub fn modulus(outer: &Circle, inner: &Circle) -> Result<f64> {
    Ok(annulus_chart(outer, inner)?.r0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo::holomorphy_residual;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle(re: f64, im: f64, r: f64) -> Circle {
        Circle { center: c(re, im), radius: r }
    }

    fn interior(circle: Circle) -> RegionDescriptor {
        RegionDescriptor { circles: vec![(circle, Side::Inside)], contains_infinity: false }
    }

    fn exterior(circle: Circle) -> RegionDescriptor {
        RegionDescriptor { circles: vec![(circle, Side::Outside)], contains_infinity: true }
    }

    #[test]
    fn unit_disc_chart_is_identity() {
        let m = disc_chart(&interior(Circle::unit())).unwrap();
        for z in [c(0.5, 0.2), c(-0.9, 0.0), c(0.0, 0.0)] {
            assert!((m.forward(z).unwrap() - z).norm() < 1e-15);
        }
    }

    #[test]
    fn exterior_chart_normalizes_infinity() {
        let m = disc_chart(&exterior(circle(0.3, 0.0, 0.3))).unwrap();
        assert!((m.forward(c(0.6, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(m.forward_infinity().unwrap().norm() < 1e-15);
        // boundary to boundary
        for z in sample_boundary(&circle(0.3, 0.0, 0.3), 64) {
            assert!((m.forward(z).unwrap().norm() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn two_circle_regions_are_rejected_by_disc_chart() {
        let region = RegionDescriptor {
            circles: vec![
                (Circle::unit(), Side::Inside),
                (circle(0.3, 0.0, 0.3), Side::Outside),
            ],
            contains_infinity: false,
        };
        assert!(matches!(
            disc_chart(&region),
            Err(Error::UnsupportedRegion(_))
        ));
    }

    #[test]
    fn moebius_round_trip() {
        let m = MoebiusMap::new(c(1.0, 0.5), c(0.2, -0.1), c(0.3, 0.0), c(1.0, 0.0)).unwrap();
        for z in sample_boundary(&circle(0.2, -0.3, 0.8), 512) {
            let w = m.forward(z).unwrap();
            assert!((m.inverse(w).unwrap() - z).norm() < 1e-11);
        }
        let composed = m.compose(&m.inverse_map());
        for z in sample_boundary(&Circle::unit(), 16) {
            assert!((composed.forward(z).unwrap() - z).norm() < 1e-12);
        }
    }

    #[test]
    fn image_circle_matches_sampled_images() {
        let m = MoebiusMap::new(c(0.0, 0.0), c(0.15, 0.0), c(1.0, 0.0), c(0.45, -0.2)).unwrap();
        let source = circle(0.4, 0.1, 0.22);
        let image = m.image_circle(&source).unwrap();
        for z in sample_boundary(&source, 256) {
            let w = m.forward(z).unwrap();
            assert!(image.boundary_distance(w).abs() < 1e-12);
        }
        // affine branch
        let affine = MoebiusMap::new(c(0.0, 2.0), c(1.0, 1.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let image = affine.image_circle(&source).unwrap();
        for z in sample_boundary(&source, 64) {
            assert!(image.boundary_distance(affine.forward(z).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn standard_annulus_needs_no_motion() {
        let chart = annulus_chart(&Circle::unit(), &circle(0.0, 0.0, 0.4)).unwrap();
        assert!((chart.r0 - 0.4).abs() < 1e-15);
        for z in [c(0.7, 0.1), c(-0.5, 0.5)] {
            assert!((chart.map.forward(z).unwrap() - z).norm() < 1e-15);
        }
    }

    #[test]
    fn offset_hole_symmetric_points() {
        // quadratic 0.3 x^2 - x + 0.3 = 0 has roots 1/3 and 3
        let chart = annulus_chart(&Circle::unit(), &circle(0.3, 0.0, 0.3)).unwrap();
        assert!((chart.r0 - 1.0 / 3.0).abs() < 1e-12);
        let t0 = chart.map.forward(c(0.0, 0.0)).unwrap();
        let t06 = chart.map.forward(c(0.6, 0.0)).unwrap();
        assert!((t0 - c(-1.0 / 3.0, 0.0)).norm() < 1e-12);
        assert!((t06 - c(1.0 / 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn concentric_after_translation_and_scale() {
        let chart = annulus_chart(&circle(5.0, 0.0, 2.0), &circle(5.0, 0.0, 1.0)).unwrap();
        assert!((chart.r0 - 0.5).abs() < 1e-14);
    }

    #[test]
    fn non_nested_rejected() {
        assert!(matches!(
            annulus_chart(&Circle::unit(), &circle(0.9, 0.0, 0.3)),
            Err(Error::NotNested)
        ));
        assert!(matches!(
            modulus(&circle(0.0, 0.0, 0.5), &Circle::unit()),
            Err(Error::NotNested)
        ));
    }

    #[test]
    fn modulus_invariant_under_similarity() {
        let outer = circle(0.25, -0.5, 1.3);
        let inner = circle(0.55, -0.3, 0.35);
        let base = modulus(&outer, &inner).unwrap();
        let similarities = [
            (c(1.0, 0.0), c(0.0, 0.0)),
            (Complex64::from_polar(1.0, 1.234), c(0.0, 0.0)),
            (Complex64::from_polar(2.5, -0.7), c(3.0, -4.0)),
        ];
        for (factor, shift) in similarities {
            let map = |cc: &Circle| Circle {
                center: factor * cc.center + shift,
                radius: factor.norm() * cc.radius,
            };
            let r0 = modulus(&map(&outer), &map(&inner)).unwrap();
            assert!((r0 - base).abs() < 1e-12, "similarity changed modulus");
        }
    }

    #[test]
    fn chart_is_holomorphic_between_the_circles() {
        let chart = annulus_chart(&Circle::unit(), &circle(0.3, 0.0, 0.3)).unwrap();
        // a concentric annulus inside the region, clear of both circles
        let f = chart.map.to_holo();
        let residual = holomorphy_residual(&f, c(0.65, 0.0), 0.1, 0.3, 16).unwrap();
        assert!(residual < 1e-10, "residual {residual}");
    }
}
