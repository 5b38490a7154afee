//! Bounded extension on multiply connected circle domains, and interpolation
//! at interior punctures.
//!
//! The bounded pipeline works in stages. A margin `gamma` is carved out of
//! the gap between targets and bound. Each boundary component gets its own
//! extension on its one-circle region, bounded by `M - 2 gamma`. Margins
//! `eps` and `delta` are then chosen by closed formulas and re-verified
//! against samples: `eps` so that inflating any component extension by
//! `(1 + eps)^(k-1)` still clears `M - gamma`, and `delta` so that the other
//! components' extensions scaled by `delta (1 + eps)^(k-2)` stay under
//! `gamma`. For every ordered component pair a separating function on the
//! pair's two-circle region is built (1 on the first component's constraint
//! points, 0 on the second's, suprema controlled by `eps` and `delta`), the
//! per-component products of these separate one component's data from the
//! rest, and the final extension is the sum of component extensions times
//! their separating products. Every contract that the construction relies on
//! is re-checked on samples and recorded in a verification report.
//!
//! Punctures are handled by a correction on top of the bounded pipeline: a
//! base extension matches the boundary data, and for each puncture a
//! boundary-vanishing function (rescaled to 1 at its puncture and multiplied
//! by a polynomial vanishing at the other punctures) adds the prescribed
//! puncture value. No boundary bound is enforced on that path; the maximum
//! principle rules it out.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::time::Instant;

use crate::annulus::{separating_function_stats, CircleSide};
use crate::conformal::{annulus_chart, disc_chart, verify_chart, AnnulusChart, MoebiusMap};
use crate::disc::{extend_region_stats, BoundaryConstraint, SolverOptions};
use crate::error::{Error, Result};
use crate::geometry::{derived_region, Circle, Domain, RegionDescriptor, RegionRef, Side};
use crate::holo::{holomorphy_residual, sup_on_circle, HoloFunction};

/// Required accuracy of the glued extension at constraint points.
pub const GLUE_INTERPOLATION_TOL: f64 = 1e-9;

/// Threshold on the two-radius holomorphy certificate of a glued extension.
pub const GLUE_HOLOMORPHY_TOL: f64 = 1e-8;

/// Puncture factors whose value at their puncture stays below this threshold
/// count as degenerate and trigger a retry with a fresh augmentation point.
pub const PUNCTURE_VALUE_MIN: f64 = 1e-8;

const GOLDEN_ANGLE: f64 = 2.399963229728653;

/// Boundary and puncture data on a domain: one constraint (points, values,
/// bound) per boundary component, plus one target value per puncture.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionProblem {
    pub domain: Domain,
    pub constraints: Vec<BoundaryConstraint>,
    pub puncture_values: Vec<Complex64>,
}

/// The margins selected by the bounded pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlueMargins {
    pub gamma: f64,
    pub eps: f64,
    pub delta: f64,
}

/// Sampled verification record attached to every solve.
///
/// Bound-related fields are present exactly on the bounded path; the
/// puncture path enforces no boundary bound and reports none.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub mode: String,
    /// Largest deviation of the extension from its boundary targets.
    pub interpolation_residual: f64,
    /// Largest deviation from the puncture targets (puncture path only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub puncture_residual: Option<f64>,
    /// Per component: minimum of `bound - |F|` over boundary samples.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub component_bound_margins: Option<Vec<f64>>,
    /// Minimum of `bound - chain` where chain is the margin estimate
    /// `(1+eps)^(k-1) |F_j| + delta (1+eps)^(k-2) sum |F_l|`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound_chain_slack: Option<f64>,
    /// Largest excess of `|F|` over the margin chain at boundary samples.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound_chain_consistency: Option<f64>,
    /// Largest deviation of a separating product from 1 at its own
    /// component's constraint points.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub separating_keep_error: Option<f64>,
    /// Largest modulus of a separating product at other components'
    /// constraint points.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub separating_kill_leak: Option<f64>,
    /// Largest sampled sup of a separating product on its own component,
    /// relative to its limit `(1+eps)^(k-1)`; below 1 passes.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub separating_own_sup_ratio: Option<f64>,
    /// Largest sampled sup on other components relative to
    /// `delta (1+eps)^(k-2)`; below 1 passes.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub separating_other_sup_ratio: Option<f64>,
    /// Two-radius coefficient mismatch on a test annulus inside the domain.
    pub holomorphy_residual: f64,
    /// Sampled interior sup minus sampled boundary sup (nonpositive up to
    /// sampling noise by the maximum principle).
    pub interior_max_modulus_excess: f64,
    pub boundary_samples: usize,
    /// Doubling rounds used by each sub-solve, in pipeline order.
    pub solver_rounds: Vec<u32>,
    pub wall_time_seconds: f64,
}

/// A solved extension: the function, the margins (bounded path only), and
/// the verification report.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionResult {
    pub function: HoloFunction,
    pub margins: Option<GlueMargins>,
    pub report: VerificationReport,
}

fn validate_problem(problem: &ExtensionProblem) -> Result<()> {
    let k = problem.domain.component_count();
    if problem.constraints.len() != k {
        return Err(Error::InvalidProblem(format!(
            "{} boundary components but {} constraints",
            k,
            problem.constraints.len()
        )));
    }
    if problem.puncture_values.len() != problem.domain.punctures().len() {
        return Err(Error::InvalidProblem(format!(
            "{} punctures but {} puncture values",
            problem.domain.punctures().len(),
            problem.puncture_values.len()
        )));
    }
    for (j, constraint) in problem.constraints.iter().enumerate() {
        let circle = problem
            .domain
            .component_circle(j)
            .expect("index within component count");
        if constraint.points.len() != constraint.values.len() {
            return Err(Error::InvalidProblem(format!(
                "component {j}: points and values differ in length"
            )));
        }
        constraint.bound.validate()?;
        for (p, v) in constraint.points.iter().zip(&constraint.values) {
            if !circle.is_on_boundary(*p, 1e-10) {
                return Err(Error::InvalidProblem(format!(
                    "component {j}: point ({}, {}) is not on its boundary circle",
                    p.re, p.im
                )));
            }
            let bound = constraint.bound.eval_angle(circle.angle_of(*p));
            if !(v.norm() < bound) {
                return Err(Error::InfeasibleBound {
                    value: v.norm(),
                    bound,
                });
            }
        }
    }
    Ok(())
}

/// One third of the smallest gap between bound and target moduli; with no
/// boundary constraints at all, one third of the smallest sampled bound.
pub fn choose_gamma(problem: &ExtensionProblem) -> Result<f64> {
    let mut min_gap = f64::INFINITY;
    let mut any = false;
    for (j, constraint) in problem.constraints.iter().enumerate() {
        let circle = problem
            .domain
            .component_circle(j)
            .expect("validated problem");
        for (p, v) in constraint.points.iter().zip(&constraint.values) {
            let bound = constraint.bound.eval_angle(circle.angle_of(*p));
            let gap = bound - v.norm();
            if !(gap > 0.0) {
                return Err(Error::InfeasibleBound {
                    value: v.norm(),
                    bound,
                });
            }
            min_gap = min_gap.min(gap);
            any = true;
        }
    }
    if !any {
        min_gap = problem
            .constraints
            .iter()
            .map(|c| c.bound.min_sampled(4096))
            .fold(f64::INFINITY, f64::min);
    }
    Ok(min_gap / 3.0)
}

/// The inflation margin: `(1 + gamma / (2 S))^(1/(k-1)) - 1` where `S` is the
/// largest sup of a component extension on its own component, taken over the
/// sample grid and the constraint points (1 when all extensions vanish).
/// Verified against the same points before returning.
///
/// Constraint points join the sup because sampling alone is a lower bound:
/// a sharply localized extension can peak between grid points, and its
/// values at the constraint points are known to be the targets.
pub fn choose_eps(
    extensions: &[HoloFunction],
    problem: &ExtensionProblem,
    gamma: f64,
    samples: usize,
) -> Result<f64> {
    let k = problem.domain.component_count();
    debug_assert!(k >= 2 && extensions.len() == k);
    let mut own_sup: f64 = 0.0;
    for (j, f) in extensions.iter().enumerate() {
        let circle = problem.domain.component_circle(j).expect("valid index");
        own_sup = own_sup.max(sup_on_circle(f, circle, samples)?);
        for p in &problem.constraints[j].points {
            own_sup = own_sup.max(f.evaluate(*p)?.norm());
        }
    }
    // an underflowed sup carries no scale information; treat it like zero
    let s = if own_sup.is_normal() { own_sup } else { 1.0 };
    let eps = (1.0 + gamma / (2.0 * s)).powf(1.0 / (k as f64 - 1.0)) - 1.0;

    let inflation = (1.0 + eps).powi(k as i32 - 1);
    for (j, f) in extensions.iter().enumerate() {
        let circle = problem.domain.component_circle(j).expect("valid index");
        let bound = &problem.constraints[j].bound;
        let margin_holds = |a: f64, m: f64| inflation * a < a + gamma && a + gamma < m - gamma;
        for s_idx in 0..samples {
            let theta = 2.0 * PI * s_idx as f64 / samples as f64;
            let a = f.evaluate(circle.point_at(theta))?.norm();
            let m = bound.eval_angle(theta);
            if !margin_holds(a, m) {
                return Err(Error::EpsMarginViolated(format!(
                    "component {j}: |F_j| = {a:e}, bound = {m:e}, gamma = {gamma:e}, eps = {eps:e}"
                )));
            }
        }
        for p in &problem.constraints[j].points {
            let a = f.evaluate(*p)?.norm();
            let m = bound.eval_angle(circle.angle_of(*p));
            if !margin_holds(a, m) {
                return Err(Error::EpsMarginViolated(format!(
                    "component {j}: |F_j| = {a:e} at a constraint point, bound = {m:e}"
                )));
            }
        }
    }
    Ok(eps)
}

/// The damping margin: `gamma / (2 (1+eps)^(k-2) T)` where `T` is the largest
/// sampled sup over any component of the summed moduli of the other
/// components' extensions (1 when that sup vanishes). Verified against
/// samples before returning.
pub fn choose_delta(
    extensions: &[HoloFunction],
    problem: &ExtensionProblem,
    eps: f64,
    gamma: f64,
    samples: usize,
) -> Result<f64> {
    let k = problem.domain.component_count();
    debug_assert!(k >= 2 && extensions.len() == k);
    let mut cross_sup: f64 = 0.0;
    let cross_at = |j: usize| -> Result<f64> {
        let circle = problem.domain.component_circle(j).expect("valid index");
        let mut sup: f64 = 0.0;
        for s_idx in 0..samples {
            let z = circle.point_at(2.0 * PI * s_idx as f64 / samples as f64);
            let mut total = 0.0;
            for (l, f) in extensions.iter().enumerate() {
                if l != j {
                    total += f.evaluate(z)?.norm();
                }
            }
            sup = sup.max(total);
        }
        Ok(sup)
    };
    for j in 0..k {
        cross_sup = cross_sup.max(cross_at(j)?);
    }
    // an underflowed cross sup would blow the quotient up to infinity while
    // carrying no information; treat it like zero
    let t = if cross_sup.is_normal() { cross_sup } else { 1.0 };
    let damping = (1.0 + eps).powi(k as i32 - 2);
    let delta = 0.5 * gamma / (damping * t);

    for j in 0..k {
        let circle = problem.domain.component_circle(j).expect("valid index");
        for s_idx in 0..samples {
            let z = circle.point_at(2.0 * PI * s_idx as f64 / samples as f64);
            let mut total = 0.0;
            for (l, f) in extensions.iter().enumerate() {
                if l != j {
                    total += f.evaluate(z)?.norm();
                }
            }
            if !(delta * damping * total < gamma) {
                return Err(Error::DeltaMarginViolated(format!(
                    "component {j}: damped cross sum {:e} does not stay under gamma {gamma:e}",
                    delta * damping * total
                )));
            }
        }
    }
    Ok(delta)
}

/// Chart for the two-circle region spanned by components `j` and `l`,
/// oriented so component `j` maps to the unit circle and component `l` to
/// `|w| = r0`. When `j` is a hole the region is first carried to the unit
/// disc by the hole's exterior chart; the image of the other component is a
/// circle inside the disc, and the standard annulus chart of that pair
/// finishes the job. Compositions of exact Moebius maps stay exact, and the
/// composed chart is re-verified against boundary samples.
fn pair_chart(domain: &Domain, j: usize, l: usize) -> Result<AnnulusChart> {
    let gamma_j = *domain.component_circle(j).expect("valid index");
    let gamma_l = *domain.component_circle(l).expect("valid index");
    if j == 0 {
        return annulus_chart(&gamma_j, &gamma_l);
    }
    let exterior = RegionDescriptor {
        circles: vec![(gamma_j, Side::Outside)],
        contains_infinity: true,
    };
    let first = disc_chart(&exterior)?;
    let image = first.image_circle(&gamma_l)?;
    let second = annulus_chart(&Circle::unit(), &image)?;
    let chart = AnnulusChart {
        map: second.map.compose(&first),
        r0: second.r0,
        source_outer: gamma_j,
        source_inner: gamma_l,
        outer_to_unit: true,
    };
    verify_chart(&chart)?;
    Ok(chart)
}

fn transport_to_circle(map: &MoebiusMap, points: &[Complex64], radius: f64) -> Result<Vec<Complex64>> {
    let target = Circle {
        center: Complex64::new(0.0, 0.0),
        radius,
    };
    points
        .iter()
        .map(|&p| Ok(target.project(map.forward(p)?)))
        .collect()
}

/// Concentric test annulus inside the domain for holomorphy and interior
/// checks: around the first hole when there is one, clear of every other
/// boundary circle; a mid-disc annulus otherwise. Punctures are irrelevant,
/// every constructed extension is holomorphic across them.
pub(crate) fn test_annulus(domain: &Domain) -> (Complex64, f64, f64) {
    let outer = domain.outer();
    match domain.holes().first() {
        None => (outer.center, 0.5 * outer.radius, 0.9 * outer.radius),
        Some(hole) => {
            let mut gap = outer.radius - (hole.center - outer.center).norm() - hole.radius;
            for other in domain.holes().iter().skip(1) {
                gap = gap.min((other.center - hole.center).norm() - other.radius - hole.radius);
            }
            (
                hole.center,
                hole.radius + 0.25 * gap,
                hole.radius + 0.75 * gap,
            )
        }
    }
}

struct GlueParts {
    extensions: Vec<HoloFunction>,
    products: Vec<Option<HoloFunction>>,
}

fn verify_glued(
    problem: &ExtensionProblem,
    function: &HoloFunction,
    parts: &GlueParts,
    margins: &GlueMargins,
    samples: usize,
) -> Result<VerificationReport> {
    let domain = &problem.domain;
    let k = domain.component_count();
    let own_limit = (1.0 + margins.eps).powi(k as i32 - 1);
    let other_limit = margins.delta * (1.0 + margins.eps).powi(k as i32 - 2);
    // sampled checks admit one rounding of grace against their limits
    let grace = 1.0 + 1e-14;

    let mut interpolation_residual: f64 = 0.0;
    for constraint in &problem.constraints {
        for (p, v) in constraint.points.iter().zip(&constraint.values) {
            interpolation_residual = interpolation_residual.max((function.evaluate(*p)? - v).norm());
        }
    }
    if interpolation_residual > GLUE_INTERPOLATION_TOL {
        return Err(Error::GlueBoundViolated(format!(
            "interpolation residual {interpolation_residual:e} exceeds {GLUE_INTERPOLATION_TOL:e}"
        )));
    }

    let mut keep_error: f64 = 0.0;
    let mut kill_leak: f64 = 0.0;
    let mut own_ratio: f64 = 0.0;
    let mut other_ratio: f64 = 0.0;
    for (j, product) in parts.products.iter().enumerate() {
        let Some(h) = product else { continue };
        for (i, constraint) in problem.constraints.iter().enumerate() {
            for p in &constraint.points {
                let value = h.evaluate(*p)?;
                if i == j {
                    keep_error = keep_error.max((value - Complex64::new(1.0, 0.0)).norm());
                } else {
                    kill_leak = kill_leak.max(value.norm());
                }
            }
        }
        for i in 0..k {
            let circle = domain.component_circle(i).expect("valid index");
            let sup = sup_on_circle(h, circle, samples)?;
            if i == j {
                own_ratio = own_ratio.max(sup / own_limit);
            } else {
                other_ratio = other_ratio.max(sup / other_limit);
            }
        }
    }
    if keep_error > GLUE_INTERPOLATION_TOL {
        return Err(Error::GlueBoundViolated(format!(
            "separating product deviates from 1 by {keep_error:e} on its own component"
        )));
    }
    if kill_leak > GLUE_INTERPOLATION_TOL {
        return Err(Error::GlueBoundViolated(format!(
            "separating product leaks {kill_leak:e} at other components' points"
        )));
    }
    if own_ratio >= grace {
        return Err(Error::GlueBoundViolated(format!(
            "separating product exceeds its own-component sup limit (ratio {own_ratio})"
        )));
    }
    if other_ratio >= grace {
        return Err(Error::GlueBoundViolated(format!(
            "separating product exceeds its cross-component sup limit (ratio {other_ratio})"
        )));
    }

    let mut bound_margins = Vec::with_capacity(k);
    let mut chain_slack = f64::INFINITY;
    let mut chain_excess: f64 = f64::NEG_INFINITY;
    let mut boundary_sup: f64 = 0.0;
    for j in 0..k {
        let circle = domain.component_circle(j).expect("valid index");
        let bound = &problem.constraints[j].bound;
        let mut margin = f64::INFINITY;
        for s_idx in 0..samples {
            let theta = 2.0 * PI * s_idx as f64 / samples as f64;
            let z = circle.point_at(theta);
            let fv = function.evaluate(z)?.norm();
            boundary_sup = boundary_sup.max(fv);
            let m = bound.eval_angle(theta);
            margin = margin.min(m - fv);
            let mut own = 0.0;
            let mut cross = 0.0;
            for (l, g) in parts.extensions.iter().enumerate() {
                let gv = g.evaluate(z)?.norm();
                if l == j {
                    own = gv;
                } else {
                    cross += gv;
                }
            }
            let chain = own_limit * own + other_limit * cross;
            chain_slack = chain_slack.min(m - chain);
            chain_excess = chain_excess.max(fv - chain);
        }
        if margin < 0.0 {
            return Err(Error::GlueBoundViolated(format!(
                "sampled |F| exceeds the bound on component {j} by {:e}",
                -margin
            )));
        }
        bound_margins.push(margin);
    }
    if chain_slack < 0.0 {
        return Err(Error::GlueBoundViolated(format!(
            "margin chain exceeds the bound by {:e}",
            -chain_slack
        )));
    }
    if chain_excess > GLUE_INTERPOLATION_TOL {
        return Err(Error::GlueBoundViolated(format!(
            "|F| exceeds the margin chain by {chain_excess:e}"
        )));
    }

    let (center, rho1, rho2) = test_annulus(domain);
    let holomorphy = holomorphy_residual(function, center, rho1, rho2, 32)?;
    if holomorphy > GLUE_HOLOMORPHY_TOL {
        return Err(Error::GlueBoundViolated(format!(
            "holomorphy residual {holomorphy:e} exceeds {GLUE_HOLOMORPHY_TOL:e}"
        )));
    }
    let mut interior_sup: f64 = 0.0;
    for radius in [rho1, rho2] {
        interior_sup = interior_sup.max(sup_on_circle(
            function,
            &Circle { center, radius },
            samples,
        )?);
    }
    let interior_excess = interior_sup - boundary_sup;
    if interior_excess > 1e-9 {
        return Err(Error::GlueBoundViolated(format!(
            "interior samples exceed boundary samples by {interior_excess:e}"
        )));
    }

    Ok(VerificationReport {
        mode: "bounded".into(),
        interpolation_residual,
        puncture_residual: None,
        component_bound_margins: Some(bound_margins),
        bound_chain_slack: Some(chain_slack),
        bound_chain_consistency: Some(chain_excess.max(0.0)),
        separating_keep_error: Some(keep_error),
        separating_kill_leak: Some(kill_leak),
        separating_own_sup_ratio: Some(own_ratio),
        separating_other_sup_ratio: Some(other_ratio),
        holomorphy_residual: holomorphy,
        interior_max_modulus_excess: interior_excess,
        boundary_samples: samples,
        solver_rounds: Vec::new(),
        wall_time_seconds: 0.0,
    })
}

/// The bounded extension on a multiply connected domain (at least two
/// boundary components, no punctures).
///
/// Returns the glued function together with the margins and a verification
/// report covering interpolation, per-component bound margins, the
/// separating-product contracts, the margin-chain estimate, a holomorphy
/// certificate, and an interior maximum-modulus check.
pub fn glue(problem: &ExtensionProblem, opts: &SolverOptions) -> Result<ExtensionResult> {
    let start = Instant::now();
    validate_problem(problem)?;
    if !problem.puncture_values.is_empty() {
        return Err(Error::InvalidProblem(
            "bounded pipeline does not take punctures; use the puncture solver".into(),
        ));
    }
    let k = problem.domain.component_count();
    if k < 2 {
        return Err(Error::UnsupportedProblem(
            "gluing needs at least two boundary components".into(),
        ));
    }
    let samples = opts.boundary_samples;
    let gamma = choose_gamma(problem)?;
    let mut rounds = Vec::new();

    let mut extensions = Vec::with_capacity(k);
    for (j, constraint) in problem.constraints.iter().enumerate() {
        let region = derived_region(&problem.domain, RegionRef::SimplyConnected(j))?;
        let reduced = BoundaryConstraint {
            points: constraint.points.clone(),
            values: constraint.values.clone(),
            bound: constraint.bound.minus_const(2.0 * gamma),
        };
        let (f, r) = extend_region_stats(&region, &reduced, opts)?;
        extensions.push(f);
        rounds.push(r);
    }

    let eps = choose_eps(&extensions, problem, gamma, samples)?;
    let delta = choose_delta(&extensions, problem, eps, gamma, samples)?;

    // separating products, only for components that contribute a term
    let mut products: Vec<Option<HoloFunction>> = vec![None; k];
    for (j, slot) in products.iter_mut().enumerate() {
        if problem.constraints[j].points.is_empty() {
            continue;
        }
        let mut factors = Vec::with_capacity(k - 1);
        for l in 0..k {
            if l == j {
                continue;
            }
            let chart = pair_chart(&problem.domain, j, l)?;
            let keep = transport_to_circle(&chart.map, &problem.constraints[j].points, 1.0)?;
            let kill =
                transport_to_circle(&chart.map, &problem.constraints[l].points, chart.r0)?;
            let (h_std, r) = separating_function_stats(
                chart.r0,
                &keep,
                &kill,
                CircleSide::Unit,
                eps,
                delta,
                opts,
            )?;
            rounds.push(r);
            factors.push(HoloFunction::compose(h_std, chart.map.to_holo()));
        }
        *slot = Some(HoloFunction::product(factors));
    }

    let terms: Vec<HoloFunction> = extensions
        .iter()
        .zip(&products)
        .filter_map(|(f, h)| {
            h.as_ref()
                .map(|h| HoloFunction::product(vec![f.clone(), h.clone()]))
        })
        .collect();
    let function = HoloFunction::sum(terms)
        .with_region(derived_region(&problem.domain, RegionRef::Full)?);

    let margins = GlueMargins { gamma, eps, delta };
    let parts = GlueParts {
        extensions,
        products,
    };
    let mut report = verify_glued(problem, &function, &parts, &margins, samples)?;
    report.solver_rounds = rounds;
    report.wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(ExtensionResult {
        function,
        margins: Some(margins),
        report,
    })
}

/// Midpoint angle of the largest gap in a sorted-angle sense; 0 for no
/// angles.
fn largest_gap_midpoint(mut angles: Vec<f64>) -> f64 {
    if angles.is_empty() {
        return 0.0;
    }
    angles
        .iter_mut()
        .for_each(|a| *a = a.rem_euclid(2.0 * PI));
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

/// A boundary-vanishing function rescaled to 1 at the puncture: the bounded
/// pipeline runs with zero targets at every boundary constraint point plus
/// one augmentation point carrying a nonzero target (which makes the result
/// non-constant), and the outcome is rescaled by its value at the puncture.
/// Augmentation points that leave the value numerically zero are retried on
/// a deterministic angle sequence.
fn puncture_factor(
    problem: &ExtensionProblem,
    puncture: Complex64,
    opts: &SolverOptions,
    rounds: &mut Vec<u32>,
) -> Result<HoloFunction> {
    let outer = *problem.domain.component_circle(0).expect("outer exists");
    let outer_constraint = &problem.constraints[0];
    let base_angle = largest_gap_midpoint(
        outer_constraint
            .points
            .iter()
            .map(|p| outer.angle_of(*p))
            .collect(),
    );
    for attempt in 0..opts.max_retries {
        let theta = (base_angle + attempt as f64 * GOLDEN_ANGLE).rem_euclid(2.0 * PI);
        let aug_point = outer.point_at(theta);
        let too_close = outer_constraint
            .points
            .iter()
            .any(|p| (p - aug_point).norm() <= 1e-6 * outer.radius.max(1.0));
        if too_close {
            continue;
        }
        let aug_value = Complex64::new(0.5 * outer_constraint.bound.eval_angle(theta), 0.0);

        let mut constraints: Vec<BoundaryConstraint> = problem
            .constraints
            .iter()
            .map(|c| BoundaryConstraint {
                points: c.points.clone(),
                values: vec![Complex64::new(0.0, 0.0); c.points.len()],
                bound: c.bound.clone(),
            })
            .collect();
        constraints[0].points.push(aug_point);
        constraints[0].values.push(aug_value);

        let vanishing = glue(
            &ExtensionProblem {
                domain: problem.domain.without_punctures(),
                constraints,
                puncture_values: Vec::new(),
            },
            opts,
        )?;
        rounds.extend(vanishing.report.solver_rounds.iter().copied());
        let value = vanishing.function.evaluate(puncture)?;
        if value.norm() >= PUNCTURE_VALUE_MIN {
            return Ok(HoloFunction::scale(1.0 / value, vanishing.function));
        }
    }
    Err(Error::PunctureDegenerate {
        re: puncture.re,
        im: puncture.im,
        retries: opts.max_retries,
    })
}

/// Interpolation at boundary points and interior punctures.
///
/// The boundary data is extended by the bounded pipeline; for each puncture,
/// a boundary-vanishing factor (normalized to 1 at its puncture and killed
/// at the other punctures by an exact polynomial factor) corrects the value
/// there. No boundary bound is enforced or reported on this path.
pub fn interpolate_with_punctures(
    problem: &ExtensionProblem,
    opts: &SolverOptions,
) -> Result<ExtensionResult> {
    let start = Instant::now();
    validate_problem(problem)?;
    let punctures = problem.domain.punctures().to_vec();
    if punctures.is_empty() {
        return glue(problem, opts);
    }
    if problem.domain.component_count() < 2 {
        return Err(Error::UnsupportedProblem(
            "puncture interpolation needs at least two boundary components".into(),
        ));
    }

    let base_problem = ExtensionProblem {
        domain: problem.domain.without_punctures(),
        constraints: problem.constraints.clone(),
        puncture_values: Vec::new(),
    };
    let base = glue(&base_problem, opts)?;
    let mut rounds = base.report.solver_rounds.clone();

    let mut terms = vec![base.function.clone()];
    for (j, &p_j) in punctures.iter().enumerate() {
        let factor = puncture_factor(problem, p_j, opts, &mut rounds)?;
        // polynomial vanishing at the other punctures, 1 at this one; kept
        // in product form so the cross zeroes are exact
        let mut pieces: Vec<HoloFunction> = Vec::with_capacity(punctures.len());
        let mut denom = Complex64::new(1.0, 0.0);
        for (i, &p_i) in punctures.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut coeffs = std::collections::BTreeMap::new();
            coeffs.insert(0, -p_i);
            coeffs.insert(1, Complex64::new(1.0, 0.0));
            pieces.push(HoloFunction::laurent(Complex64::new(0.0, 0.0), coeffs));
            denom *= p_j - p_i;
        }
        pieces.push(factor);
        let corrector = HoloFunction::scale(1.0 / denom, HoloFunction::product(pieces));
        let weight = problem.puncture_values[j] - base.function.evaluate(p_j)?;
        terms.push(HoloFunction::scale(weight, corrector));
    }
    let function = HoloFunction::sum(terms)
        .with_region(derived_region(&problem.domain, RegionRef::Full)?);

    // verification: boundary and puncture interpolation, holomorphy,
    // interior maximum modulus; no bound checks on this path
    let mut interpolation_residual: f64 = 0.0;
    for constraint in &problem.constraints {
        for (p, v) in constraint.points.iter().zip(&constraint.values) {
            interpolation_residual = interpolation_residual.max((function.evaluate(*p)? - v).norm());
        }
    }
    if interpolation_residual > GLUE_INTERPOLATION_TOL {
        return Err(Error::GlueBoundViolated(format!(
            "boundary interpolation residual {interpolation_residual:e} after puncture correction"
        )));
    }
    let mut puncture_residual: f64 = 0.0;
    for (&p, &w) in punctures.iter().zip(&problem.puncture_values) {
        puncture_residual = puncture_residual.max((function.evaluate(p)? - w).norm());
    }
    if puncture_residual > GLUE_INTERPOLATION_TOL {
        return Err(Error::GlueBoundViolated(format!(
            "puncture residual {puncture_residual:e} exceeds {GLUE_INTERPOLATION_TOL:e}"
        )));
    }
    let (center, rho1, rho2) = test_annulus(&problem.domain);
    let holomorphy = holomorphy_residual(&function, center, rho1, rho2, 32)?;
    if holomorphy > GLUE_HOLOMORPHY_TOL {
        return Err(Error::GlueBoundViolated(format!(
            "holomorphy residual {holomorphy:e} exceeds {GLUE_HOLOMORPHY_TOL:e}"
        )));
    }
    let samples = opts.boundary_samples;
    let mut boundary_sup: f64 = 0.0;
    for j in 0..problem.domain.component_count() {
        let circle = problem.domain.component_circle(j).expect("valid index");
        boundary_sup = boundary_sup.max(sup_on_circle(&function, circle, samples)?);
    }
    let mut interior_sup: f64 = 0.0;
    for radius in [rho1, rho2] {
        interior_sup =
            interior_sup.max(sup_on_circle(&function, &Circle { center, radius }, samples)?);
    }
    let interior_excess = interior_sup - boundary_sup;
    if interior_excess > 1e-9 {
        return Err(Error::GlueBoundViolated(format!(
            "interior samples exceed boundary samples by {interior_excess:e}"
        )));
    }

    Ok(ExtensionResult {
        function,
        margins: base.margins,
        report: VerificationReport {
            mode: "puncture".into(),
            interpolation_residual,
            puncture_residual: Some(puncture_residual),
            component_bound_margins: None,
            bound_chain_slack: None,
            bound_chain_consistency: None,
            separating_keep_error: None,
            separating_kill_leak: None,
            separating_own_sup_ratio: None,
            separating_other_sup_ratio: None,
            holomorphy_residual: holomorphy,
            interior_max_modulus_excess: interior_excess,
            boundary_samples: samples,
            solver_rounds: rounds,
            wall_time_seconds: start.elapsed().as_secs_f64(),
        },
    })
}

/// Route a problem to the matching pipeline: the one-circle solver for a
/// hole-free domain, the puncture solver when punctures are present, the
/// bounded gluing pipeline otherwise.
pub fn solve_problem(problem: &ExtensionProblem, opts: &SolverOptions) -> Result<ExtensionResult> {
    validate_problem(problem)?;
    if !problem.domain.punctures().is_empty() {
        return interpolate_with_punctures(problem, opts);
    }
    if problem.domain.component_count() >= 2 {
        return glue(problem, opts);
    }

    // hole-free case: one bounded solve on the outer disc
    let start = Instant::now();
    let samples = opts.boundary_samples;
    let region = derived_region(&problem.domain, RegionRef::SimplyConnected(0))?;
    let (function, r) = extend_region_stats(&region, &problem.constraints[0], opts)?;
    let circle = *problem.domain.outer();
    let constraint = &problem.constraints[0];
    let mut interpolation_residual: f64 = 0.0;
    for (p, v) in constraint.points.iter().zip(&constraint.values) {
        interpolation_residual = interpolation_residual.max((function.evaluate(*p)? - v).norm());
    }
    let mut margin = f64::INFINITY;
    let mut boundary_sup: f64 = 0.0;
    for s_idx in 0..samples {
        let theta = 2.0 * PI * s_idx as f64 / samples as f64;
        let fv = function.evaluate(circle.point_at(theta))?.norm();
        boundary_sup = boundary_sup.max(fv);
        margin = margin.min(constraint.bound.eval_angle(theta) - fv);
    }
    let (center, rho1, rho2) = test_annulus(&problem.domain);
    let holomorphy = holomorphy_residual(&function, center, rho1, rho2, 32)?;
    let mut interior_sup: f64 = 0.0;
    for radius in [rho1, rho2] {
        interior_sup =
            interior_sup.max(sup_on_circle(&function, &Circle { center, radius }, samples)?);
    }
    Ok(ExtensionResult {
        function,
        margins: None,
        report: VerificationReport {
            mode: "bounded".into(),
            interpolation_residual,
            puncture_residual: None,
            component_bound_margins: Some(vec![margin]),
            bound_chain_slack: None,
            bound_chain_consistency: None,
            separating_keep_error: None,
            separating_kill_leak: None,
            separating_own_sup_ratio: None,
            separating_other_sup_ratio: None,
            holomorphy_residual: holomorphy,
            interior_max_modulus_excess: interior_sup - boundary_sup,
            boundary_samples: samples,
            solver_rounds: vec![r],
            wall_time_seconds: start.elapsed().as_secs_f64(),
        },
    })
}
