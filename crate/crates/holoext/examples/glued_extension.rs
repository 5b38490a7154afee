//! The full bounded pipeline on a three-component domain: per-component
//! extensions, margin selection, separating products, and the glued result
//! with its verification report.
//!
//! Run with `cargo run --example glued_extension`.

use holoext::disc::{BoundFunction, BoundaryConstraint, SolverOptions};
use holoext::geometry::{build_domain, Circle};
use holoext::glue::{glue, ExtensionProblem};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() {
    let h1 = Circle {
        center: Complex64::new(-0.45, 0.0),
        radius: 0.15,
    };
    let h2 = Circle {
        center: Complex64::new(0.45, 0.0),
        radius: 0.15,
    };
    let domain = build_domain(Circle::unit(), vec![h1, h2], vec![]).unwrap();

    let outer_point = Circle::unit().point_at(0.3);
    let h1_point = h1.point_at(PI / 4.0);
    let h2_point = h2.point_at(PI / 2.0);
    let problem = ExtensionProblem {
        domain,
        constraints: vec![
            BoundaryConstraint {
                points: vec![outer_point],
                values: vec![Complex64::new(0.3, 0.0)],
                bound: BoundFunction::Const(1.0),
            },
            BoundaryConstraint {
                points: vec![h1_point],
                values: vec![Complex64::new(0.1, 0.2)],
                bound: BoundFunction::Const(1.0),
            },
            BoundaryConstraint {
                points: vec![h2_point],
                values: vec![Complex64::new(-0.25, 0.0)],
                bound: BoundFunction::Const(1.0),
            },
        ],
        puncture_values: vec![],
    };

    let result = glue(&problem, &SolverOptions::default()).expect("solvable problem");
    let margins = result.margins.unwrap();
    println!(
        "margins: gamma = {:.6}, eps = {:.6}, delta = {:.6}",
        margins.gamma, margins.eps, margins.delta
    );

    println!("values at the constraint points:");
    for p in [outer_point, h1_point, h2_point] {
        println!("  F({:+.4}{:+.4}i) = {:?}", p.re, p.im, result.function.evaluate(p).unwrap());
    }

    let report = &result.report;
    println!("verification report:");
    println!("  interpolation residual      {:.3e}", report.interpolation_residual);
    println!(
        "  bound margins per component {:?}",
        report.component_bound_margins.as_ref().unwrap()
    );
    println!(
        "  margin chain: slack {:.4}, consistency {:.3e}",
        report.bound_chain_slack.unwrap(),
        report.bound_chain_consistency.unwrap()
    );
    println!(
        "  separating products: keep error {:.3e}, kill leak {:.3e}, sup ratios {:.4} / {:.4}",
        report.separating_keep_error.unwrap(),
        report.separating_kill_leak.unwrap(),
        report.separating_own_sup_ratio.unwrap(),
        report.separating_other_sup_ratio.unwrap()
    );
    println!("  holomorphy residual         {:.3e}", report.holomorphy_residual);
    println!(
        "  interior max-modulus excess {:.3e}",
        report.interior_max_modulus_excess
    );
    println!("  solver rounds               {:?}", report.solver_rounds);
}
