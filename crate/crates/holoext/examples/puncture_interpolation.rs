//! Interpolation at interior punctures on top of boundary data. No boundary
//! bound can be enforced on this path: a function that is small on the whole
//! boundary but large at an interior point would contradict the maximum
//! principle.
//!
//! Run with `cargo run --example puncture_interpolation`.

use holoext::disc::{BoundFunction, BoundaryConstraint, SolverOptions};
use holoext::geometry::{build_domain, sample_boundary, Circle};
use holoext::glue::{interpolate_with_punctures, ExtensionProblem};
use num_complex::Complex64;

fn main() {
    let hole = Circle {
        center: Complex64::new(0.5, 0.0),
        radius: 0.2,
    };
    let punctures = vec![Complex64::new(0.0, 0.0), Complex64::new(-0.4, 0.3)];
    let domain = build_domain(Circle::unit(), vec![hole], punctures.clone()).unwrap();

    let problem = ExtensionProblem {
        domain,
        constraints: vec![
            BoundaryConstraint {
                points: vec![Complex64::new(-1.0, 0.0)],
                values: vec![Complex64::new(0.1, 0.0)],
                bound: BoundFunction::Const(1.0),
            },
            BoundaryConstraint {
                points: vec![Complex64::new(0.3, 0.0)],
                values: vec![Complex64::new(0.0, -0.1)],
                bound: BoundFunction::Const(1.0),
            },
        ],
        puncture_values: vec![Complex64::new(5.0, 0.0), Complex64::new(-2.0, 1.0)],
    };

    let result = interpolate_with_punctures(&problem, &SolverOptions::default())
        .expect("solvable problem");

    println!("puncture values:");
    for (p, w) in punctures.iter().zip(&problem.puncture_values) {
        println!(
            "  F({:+.2}{:+.2}i) = {:?}   (target {:?})",
            p.re,
            p.im,
            result.function.evaluate(*p).unwrap(),
            w
        );
    }
    println!("boundary values:");
    for constraint in &problem.constraints {
        for (p, v) in constraint.points.iter().zip(&constraint.values) {
            println!(
                "  F({:+.2}{:+.2}i) = {:?}   (target {:?})",
                p.re,
                p.im,
                result.function.evaluate(*p).unwrap(),
                v
            );
        }
    }

    // the price of hitting 5 at an interior point: the boundary modulus must
    // grow at least as large, so no bound is reported on this path
    let mut boundary_sup: f64 = 0.0;
    for circle in [&Circle::unit(), &hole] {
        for z in sample_boundary(circle, 2048) {
            boundary_sup = boundary_sup.max(result.function.evaluate(z).unwrap().norm());
        }
    }
    println!("sampled boundary sup |F| = {boundary_sup:.4} (>= the puncture targets)");
    println!(
        "report mode: {}  (bound margins reported: {})",
        result.report.mode,
        result.report.component_bound_margins.is_some()
    );
}
