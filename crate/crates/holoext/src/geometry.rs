//! Circle-bounded multiply connected domains and their derived regions.
//!
//! A [`Domain`] is an outer circle, a list of disjoint circular holes strictly
//! inside it, and optional punctures. Boundary components are indexed with the
//! outer circle as component 0 and hole `i` as component `i + 1`. The derived
//! regions are the one-circle and two-circle regions spanned by boundary
//! components that contain the domain; they are where the per-component and
//! pairwise constructions of the gluing pipeline live.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Minimal gap enforced between boundary circles. Tangent or nearly tangent
/// configurations are rejected because the boundary curves must be disjoint.
pub const CIRCLE_GAP_TOL: f64 = 1e-9;

/// Relative tolerance for "point lies on this circle" checks.
pub const ON_CIRCLE_REL_TOL: f64 = 1e-12;

/// A circle in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    #[serde(with = "crate::cxfmt::complex")]
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    /// A validated circle; the radius must be finite and positive.
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 || !center.re.is_finite() || !center.im.is_finite()
        {
            return Err(Error::InvalidArgument(format!(
                "circle radius must be finite and positive, got {radius}"
            )));
        }
        Ok(Circle { center, radius })
    }

    /// The unit circle.
    pub fn unit() -> Self {
        Circle {
            center: Complex64::new(0.0, 0.0),
            radius: 1.0,
        }
    }

    /// The boundary point at angle `theta`.
    pub fn point_at(&self, theta: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, theta)
    }

    /// The angle of `z` as seen from the center.
    pub fn angle_of(&self, z: Complex64) -> f64 {
        (z - self.center).arg()
    }

    /// Signed distance of `z` from the boundary circle, negative inside.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        (z - self.center).norm() - self.radius
    }

    /// Whether `z` lies on the circle to within `rel_tol` relative error.
    pub fn is_on_boundary(&self, z: Complex64, rel_tol: f64) -> bool {
        self.boundary_distance(z).abs() <= rel_tol * self.radius.max(1.0)
    }

    /// Radially project `z` onto the circle. `z` must not be the center.
    pub fn project(&self, z: Complex64) -> Complex64 {
        let d = z - self.center;
        self.center + d * (self.radius / d.norm())
    }
}

/// `n` equally spaced boundary points starting at angle 0, in angle order.
pub fn sample_boundary(c: &Circle, n: usize) -> Vec<Complex64> {
    assert!(n >= 1, "sample_boundary requires n >= 1");
    (0..n)
        .map(|m| c.point_at(2.0 * PI * m as f64 / n as f64))
        .collect()
}

/// Angular distance between two angles, in [0, pi].
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Which side of a circle a region lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Inside,
    Outside,
}

/// An open region cut out by circles: the intersection of the listed disc
/// interiors and exteriors. `contains_infinity` records whether the region is
/// a neighborhood of the point at infinity on the Riemann sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionDescriptor {
    pub circles: Vec<(Circle, Side)>,
    pub contains_infinity: bool,
}

impl RegionDescriptor {
    /// Whether `z` lies in the closure of the region, with `tol` of grace at
    /// the boundary circles.
    pub fn contains_closure(&self, z: Complex64, tol: f64) -> bool {
        self.circles.iter().all(|(c, side)| {
            let d = c.boundary_distance(z);
            match side {
                Side::Inside => d <= tol,
                Side::Outside => d >= -tol,
            }
        })
    }

    fn interior_of(circle: Circle) -> Self {
        RegionDescriptor {
            circles: vec![(circle, Side::Inside)],
            contains_infinity: false,
        }
    }

    fn exterior_of(circle: Circle) -> Self {
        RegionDescriptor {
            circles: vec![(circle, Side::Outside)],
            contains_infinity: true,
        }
    }
}

/// Reference to a derived region of a domain. Component indices count the
/// outer circle as 0 and hole `i` as `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionRef {
    /// The one-circle region bounded by a single component that contains the
    /// domain: the open disc for the outer circle, the exterior (with the
    /// point at infinity) for a hole.
    SimplyConnected(usize),
    /// The two-circle region bounded by a pair of components that contains
    /// the domain.
    DoublyConnected(usize, usize),
    /// The region bounded by all components (punctures ignored).
    Full,
}

/// A circle-bounded multiply connected domain, possibly with punctures.
///
/// The connectivity is `1 + holes + punctures`; the gluing pipeline requires
/// at least one hole, while the disc solver covers the hole-free case.
#[derive(Clone, Debug, PartialEq)]
pub struct Domain {
    outer: Circle,
    holes: Vec<Circle>,
    punctures: Vec<Complex64>,
}

/// Validate and build a [`Domain`].
///
/// Every hole's closed disc must be strictly inside the outer circle's open
/// disc, closed discs of distinct holes must be disjoint, and every puncture
/// must lie in the domain, away from all circles and from the other
/// punctures. All gaps are enforced with an absolute tolerance of
/// [`CIRCLE_GAP_TOL`].
pub fn build_domain(
    outer: Circle,
    holes: Vec<Circle>,
    punctures: Vec<Complex64>,
) -> Result<Domain> {
    Circle::new(outer.center, outer.radius)?;
    for (i, h) in holes.iter().enumerate() {
        Circle::new(h.center, h.radius)?;
        let gap = outer.radius - ((h.center - outer.center).norm() + h.radius);
        if gap < CIRCLE_GAP_TOL {
            return Err(Error::NestedHoleViolation { index: i });
        }
    }
    for i in 0..holes.len() {
        for j in (i + 1)..holes.len() {
            let gap =
                (holes[i].center - holes[j].center).norm() - holes[i].radius - holes[j].radius;
            if gap < CIRCLE_GAP_TOL {
                return Err(Error::OverlappingHoles {
                    first: i,
                    second: j,
                });
            }
        }
    }
    for (i, p) in punctures.iter().enumerate() {
        if !p.re.is_finite() || !p.im.is_finite() {
            return Err(Error::InvalidArgument(format!("puncture {i} is not finite")));
        }
        if outer.boundary_distance(*p) > -CIRCLE_GAP_TOL {
            return Err(Error::PunctureOutsideDomain { index: i });
        }
        for h in &holes {
            if h.boundary_distance(*p) < CIRCLE_GAP_TOL {
                return Err(Error::PunctureOutsideDomain { index: i });
            }
        }
    }
    for i in 0..punctures.len() {
        for j in (i + 1)..punctures.len() {
            if (punctures[i] - punctures[j]).norm() <= CIRCLE_GAP_TOL {
                return Err(Error::DuplicatePuncture { first: i, second: j });
            }
        }
    }
    Ok(Domain {
        outer,
        holes,
        punctures,
    })
}

impl Domain {
    pub fn outer(&self) -> &Circle {
        &self.outer
    }

    pub fn holes(&self) -> &[Circle] {
        &self.holes
    }

    pub fn punctures(&self) -> &[Complex64] {
        &self.punctures
    }

    /// Number of boundary curve components (outer circle plus holes).
    pub fn component_count(&self) -> usize {
        1 + self.holes.len()
    }

    /// Boundary circle of component `j`, if it exists.
    pub fn component_circle(&self, j: usize) -> Option<&Circle> {
        if j == 0 {
            Some(&self.outer)
        } else {
            self.holes.get(j - 1)
        }
    }

    /// A copy of this domain without its punctures.
    pub fn without_punctures(&self) -> Domain {
        Domain {
            outer: self.outer,
            holes: self.holes.clone(),
            punctures: Vec::new(),
        }
    }
}

/// Resolve a [`RegionRef`] into an explicit region descriptor.
///
/// Punctures are ignored: they are removable for every derived region.
pub fn derived_region(domain: &Domain, region: RegionRef) -> Result<RegionDescriptor> {
    let component = |j: usize| -> Result<Circle> {
        domain
            .component_circle(j)
            .copied()
            .ok_or_else(|| Error::InvalidRegionRef(format!("component index {j} out of range")))
    };
    match region {
        RegionRef::SimplyConnected(j) => {
            let c = component(j)?;
            if j == 0 {
                Ok(RegionDescriptor::interior_of(c))
            } else {
                Ok(RegionDescriptor::exterior_of(c))
            }
        }
        RegionRef::DoublyConnected(j, l) => {
            if j == l {
                return Err(Error::InvalidRegionRef(
                    "doubly connected region needs two distinct components".into(),
                ));
            }
            let cj = component(j)?;
            let cl = component(l)?;
            if j == 0 || l == 0 {
                let (outer, hole) = if j == 0 { (cj, cl) } else { (cl, cj) };
                Ok(RegionDescriptor {
                    circles: vec![(outer, Side::Inside), (hole, Side::Outside)],
                    contains_infinity: false,
                })
            } else {
                Ok(RegionDescriptor {
                    circles: vec![(cj, Side::Outside), (cl, Side::Outside)],
                    contains_infinity: true,
                })
            }
        }
        RegionRef::Full => {
            let mut circles = vec![(domain.outer, Side::Inside)];
            circles.extend(domain.holes.iter().map(|h| (*h, Side::Outside)));
            Ok(RegionDescriptor {
                circles,
                contains_infinity: false,
            })
        }
    }
}
