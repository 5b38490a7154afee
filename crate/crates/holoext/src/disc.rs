//! Interpolation on the unit disc (and, through a chart, on any one-circle
//! region) by bounded holomorphic functions.
//!
//! Given finitely many unit-circle points with targets strictly below a
//! positive bound, the solver returns a linear combination of peak functions
//! that matches every target exactly and whose sampled boundary modulus stays
//! below `safety * bound`. Peak exponents start from a closed-form
//! diagonal-dominance budget and double until the sampled bound check passes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{angular_distance, Circle, RegionDescriptor, Side};
use crate::holo::{disc_peak, HoloFunction};
use crate::solve::solve_dense;

/// Fraction of the row budget granted to all off-diagonal peak values
/// together. Keeps every interpolation matrix diagonally dominant.
pub(crate) const CROSS_PEAK_BUDGET: f64 = 0.1;

/// Required interpolation accuracy at the constraint points.
pub const INTERPOLATION_TOL: f64 = 1e-10;

/// Minimal pairwise distance between constraint points.
pub const MIN_POINT_SEPARATION: f64 = 1e-9;

/// Strictly positive boundary bound, either constant or the real part of a
/// trigonometric polynomial in the boundary angle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum BoundFunction {
    Const(f64),
    /// `M(theta) = Re sum_k c_k e^{i k theta}`.
    Trig(#[serde(with = "crate::cxfmt::complex_map")] std::collections::BTreeMap<i32, Complex64>),
}

impl BoundFunction {
    pub fn eval_angle(&self, theta: f64) -> f64 {
        match self {
            BoundFunction::Const(v) => *v,
            BoundFunction::Trig(coeffs) => coeffs
                .iter()
                .map(|(&k, &c)| (c * Complex64::from_polar(1.0, k as f64 * theta)).re)
                .sum(),
        }
    }

    /// Minimum over `n` equally spaced angles.
    pub fn min_sampled(&self, n: usize) -> f64 {
        (0..n)
            .map(|m| self.eval_angle(2.0 * PI * m as f64 / n as f64))
            .fold(f64::INFINITY, f64::min)
    }

    /// Check strict positivity over 4096 samples.
    pub fn validate(&self) -> Result<()> {
        let min = self.min_sampled(4096);
        if !(min > 0.0) {
            return Err(Error::NonpositiveBound { min });
        }
        Ok(())
    }

    /// The bound lowered by a constant.
    pub fn minus_const(&self, g: f64) -> BoundFunction {
        match self {
            BoundFunction::Const(v) => BoundFunction::Const(v - g),
            BoundFunction::Trig(coeffs) => {
                let mut coeffs = coeffs.clone();
                let entry = coeffs.entry(0).or_insert(Complex64::new(0.0, 0.0));
                *entry -= g;
                BoundFunction::Trig(coeffs)
            }
        }
    }

    /// The bound read at the mirrored angle, `M'(theta) = M(-theta)`. This is
    /// how a bound transports through an exterior chart, which reverses the
    /// boundary angle.
    pub fn flip_angle(&self) -> BoundFunction {
        match self {
            BoundFunction::Const(v) => BoundFunction::Const(*v),
            BoundFunction::Trig(coeffs) => {
                BoundFunction::Trig(coeffs.iter().map(|(&k, &c)| (-k, c)).collect())
            }
        }
    }
}

/// Finite boundary data on one circle: points, target values, and the bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryConstraint {
    #[serde(with = "crate::cxfmt::complex_vec")]
    pub points: Vec<Complex64>,
    #[serde(with = "crate::cxfmt::complex_vec")]
    pub values: Vec<Complex64>,
    pub bound: BoundFunction,
}

impl BoundaryConstraint {
    pub fn empty(bound: BoundFunction) -> Self {
        BoundaryConstraint {
            points: Vec::new(),
            values: Vec::new(),
            bound,
        }
    }
}

/// Knobs shared by all solvers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Exponent-doubling rounds before giving up.
    pub max_rounds: u32,
    /// The sampled boundary modulus must stay below `safety * bound`.
    pub safety: f64,
    /// Samples per circle for bound checks.
    pub boundary_samples: usize,
    /// Augmentation retries for the puncture pipeline.
    pub max_retries: u32,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_rounds: 40,
            safety: 0.95,
            boundary_samples: 4096,
            max_retries: 8,
        }
    }
}

impl SolverOptions {
    fn validate(&self) -> Result<()> {
        if !(self.safety > 0.0 && self.safety < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "safety must lie in (0, 1), got {}",
                self.safety
            )));
        }
        if self.boundary_samples == 0 || self.max_rounds == 0 {
            return Err(Error::InvalidArgument(
                "boundary_samples and max_rounds must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn unit_disc_region() -> RegionDescriptor {
    RegionDescriptor {
        circles: vec![(Circle::unit(), Side::Inside)],
        contains_infinity: false,
    }
}

/// Smallest exponent driving `decay^n` below `budget`.
pub(crate) fn exponent_for(decay: f64, budget: f64) -> u32 {
    if decay <= 0.0 {
        return 1;
    }
    debug_assert!(decay < 1.0 && budget > 0.0 && budget < 1.0);
    let n = (budget.ln() / decay.ln()).ceil();
    (n.max(1.0) as u32).max(1)
}

fn check_constraint(constraint: &BoundaryConstraint) -> Result<()> {
    if constraint.points.len() != constraint.values.len() {
        return Err(Error::InvalidArgument(
            "points and values must have equal length".into(),
        ));
    }
    constraint.bound.validate()?;
    for i in 0..constraint.points.len() {
        for j in (i + 1)..constraint.points.len() {
            let distance = (constraint.points[i] - constraint.points[j]).norm();
            if distance <= MIN_POINT_SEPARATION {
                return Err(Error::PointsTooClose { distance });
            }
        }
    }
    for (p, v) in constraint.points.iter().zip(&constraint.values) {
        let bound = constraint.bound.eval_angle(p.arg());
        if !(v.norm() < bound) {
            return Err(Error::InfeasibleBound {
                value: v.norm(),
                bound,
            });
        }
    }
    Ok(())
}

/// One doubling round: build peaks, solve, and check the sampled bound.
/// Returns the solution when interpolation and bound both pass.
fn disc_round(
    points: &[Complex64],
    values: &[Complex64],
    bound: &BoundFunction,
    exponents: &[u32],
    opts: &SolverOptions,
) -> Result<Option<HoloFunction>> {
    let m = points.len();
    let peaks: Vec<HoloFunction> = points
        .iter()
        .zip(exponents)
        .map(|(&p, &n)| disc_peak(p, &Circle::unit(), n))
        .collect::<Result<_>>()?;
    let mut matrix = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for (i, &zi) in points.iter().enumerate() {
        for (j, peak) in peaks.iter().enumerate() {
            matrix[i][j] = peak.evaluate(zi)?;
        }
    }
    let coeffs = solve_dense(matrix, values.to_vec())?;
    let f = HoloFunction::sum(
        coeffs
            .iter()
            .zip(&peaks)
            .map(|(&c, p)| HoloFunction::scale(c, p.clone()))
            .collect(),
    )
    .with_region(unit_disc_region());

    for (&zi, &vi) in points.iter().zip(values) {
        if (f.evaluate(zi)? - vi).norm() > INTERPOLATION_TOL {
            return Ok(None);
        }
    }
    for s in 0..opts.boundary_samples {
        let theta = 2.0 * PI * s as f64 / opts.boundary_samples as f64;
        let z = Circle::unit().point_at(theta);
        if f.evaluate(z)?.norm() > opts.safety * bound.eval_angle(theta) {
            return Ok(None);
        }
    }
    Ok(Some(f))
}

pub(crate) fn extend_disc_stats(
    constraint: &BoundaryConstraint,
    opts: &SolverOptions,
) -> Result<(HoloFunction, u32)> {
    opts.validate()?;
    check_constraint(constraint)?;
    let m = constraint.points.len();
    if m == 0 {
        return Ok((
            HoloFunction::constant(Complex64::new(0.0, 0.0)).with_region(unit_disc_region()),
            0,
        ));
    }

    // initial exponents from the closed-form cross-peak decay
    // |p_j(z_i)| = cos(dtheta/2)^n
    let budget = CROSS_PEAK_BUDGET / m as f64;
    let angles: Vec<f64> = constraint.points.iter().map(|p| p.arg()).collect();
    let mut exponents: Vec<u32> = (0..m)
        .map(|j| {
            let worst = (0..m)
                .filter(|&i| i != j)
                .map(|i| (angular_distance(angles[i], angles[j]) / 2.0).cos())
                .fold(0.0f64, f64::max);
            exponent_for(worst, budget)
        })
        .collect();

    for round in 1..=opts.max_rounds {
        if let Some(f) = disc_round(
            &constraint.points,
            &constraint.values,
            &constraint.bound,
            &exponents,
            opts,
        )? {
            return Ok((f, round));
        }
        for n in &mut exponents {
            *n = n
                .checked_mul(2)
                .ok_or(Error::BoundViolatedAfterMaxRounds { rounds: round })?;
        }
    }
    Err(Error::BoundViolatedAfterMaxRounds {
        rounds: opts.max_rounds,
    })
}

/// Bounded interpolation on the closed unit disc.
///
/// Returns `F`, holomorphic on the disc, with `F` equal to each target at its
/// point (to [`INTERPOLATION_TOL`]) and sampled `|F| <= safety * bound` on
/// the circle. The empty constraint yields the zero function.
pub fn extend_disc(constraint: &BoundaryConstraint, opts: &SolverOptions) -> Result<HoloFunction> {
    extend_disc_stats(constraint, opts).map(|(f, _)| f)
}

/// Midpoint of the largest angular gap between the given unit-circle points;
/// angle 0 when there are none.
fn largest_gap_midpoint(points: &[Complex64]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let mut angles: Vec<f64> = points.iter().map(|p| p.arg().rem_euclid(2.0 * PI)).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    let mut best_gap = -1.0;
    let mut best_mid = 0.0;
    for i in 0..angles.len() {
        let a = angles[i];
        let b = if i + 1 < angles.len() {
            angles[i + 1]
        } else {
            angles[0] + 2.0 * PI
        };
        if b - a > best_gap {
            best_gap = b - a;
            best_mid = (a + b) / 2.0;
        }
    }
    best_mid.rem_euclid(2.0 * PI)
}

/// Augmentation target for a constant constraint: a value distinct from the
/// common value `v` and safely below the bound at the new point.
pub(crate) fn augmentation_target(common: Option<Complex64>, bound_at_point: f64) -> Complex64 {
    match common {
        // no data yet: claim a nonzero imaginary target
        None => Complex64::new(0.0, 0.5 * bound_at_point),
        Some(v) if v.norm() == 0.0 => Complex64::new(0.5 * bound_at_point, 0.0),
        Some(v) if v.im == 0.0 => Complex64::new(0.0, 0.5 * bound_at_point),
        Some(_) => Complex64::new(0.0, 0.0),
    }
}

/// As [`extend_disc`], but the result is guaranteed non-constant.
///
/// Constraints whose targets already take two distinct values pass through
/// unchanged. Constant (or empty) constraints are augmented with one extra
/// point at the midpoint of the largest angular gap, carrying a target that
/// differs from the common value.
pub fn extend_disc_nonconstant(
    constraint: &BoundaryConstraint,
    opts: &SolverOptions,
) -> Result<HoloFunction> {
    let distinct = constraint
        .values
        .windows(2)
        .any(|w| (w[0] - w[1]).norm() > 0.0);
    if distinct {
        return extend_disc(constraint, opts);
    }
    let theta = largest_gap_midpoint(&constraint.points);
    let point = Circle::unit().point_at(theta);
    let target = augmentation_target(
        constraint.values.first().copied(),
        constraint.bound.eval_angle(theta),
    );
    let mut augmented = constraint.clone();
    augmented.points.push(point);
    augmented.values.push(target);
    extend_disc(&augmented, opts)
}

pub(crate) fn extend_region_stats(
    region: &RegionDescriptor,
    constraint: &BoundaryConstraint,
    opts: &SolverOptions,
) -> Result<(HoloFunction, u32)> {
    let chart = crate::conformal::disc_chart(region)?;
    let (source_circle, side) = region.circles[0];
    let mut transported = BoundaryConstraint {
        points: Vec::with_capacity(constraint.points.len()),
        values: constraint.values.clone(),
        bound: match side {
            Side::Inside => constraint.bound.clone(),
            Side::Outside => constraint.bound.flip_angle(),
        },
    };
    for &p in &constraint.points {
        if !source_circle.is_on_boundary(p, 1e-10) {
            return Err(Error::InvalidArgument(format!(
                "constraint point ({}, {}) is not on the region's boundary circle",
                p.re, p.im
            )));
        }
        let w = chart.forward(p)?;
        transported.points.push(Circle::unit().project(w));
    }
    let (disc_solution, rounds) = extend_disc_stats(&transported, opts)?;
    let f = HoloFunction::compose(disc_solution, chart.to_holo()).with_region(region.clone());
    Ok((f, rounds))
}

/// Bounded interpolation on a one-circle region (disc interior or circle
/// exterior), with the constraint stated on the source circle.
///
/// The constraint transports through the disc chart (which maps boundary
/// angles one to one, up to sign) and the disc solution composes back, so
/// exterior solutions are holomorphic at infinity.
pub fn extend_region(
    region: &RegionDescriptor,
    constraint: &BoundaryConstraint,
    opts: &SolverOptions,
) -> Result<HoloFunction> {
    extend_region_stats(region, constraint, opts).map(|(f, _)| f)
}
