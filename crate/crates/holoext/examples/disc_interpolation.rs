//! Bounded interpolation on the unit disc: prescribe values at a few
//! boundary points, keep the boundary modulus under a bound, and check the
//! result.
//!
//! Run with `cargo run --example disc_interpolation`.

use holoext::disc::{extend_disc, BoundFunction, BoundaryConstraint, SolverOptions};
use holoext::geometry::Circle;
use holoext::holo::{holomorphy_residual, sup_on_circle};
use num_complex::Complex64;

fn main() {
    let circle = Circle::unit();
    let points = vec![
        circle.point_at(0.0),
        circle.point_at(1.3),
        circle.point_at(2.9),
        circle.point_at(4.4),
    ];
    let values = vec![
        Complex64::new(0.5, 0.0),
        Complex64::new(-0.3, 0.2),
        Complex64::new(0.0, -0.45),
        Complex64::new(0.25, 0.25),
    ];
    let constraint = BoundaryConstraint {
        points: points.clone(),
        values: values.clone(),
        bound: BoundFunction::Const(1.0),
    };

    let f = extend_disc(&constraint, &SolverOptions::default()).expect("solvable constraint");

    println!("interpolation:");
    for (p, v) in points.iter().zip(&values) {
        let got = f.evaluate(*p).unwrap();
        println!(
            "  F({:+.3}{:+.3}i) = {:+.12}{:+.12}i   (target {:+.2}{:+.2}i, error {:.2e})",
            p.re,
            p.im,
            got.re,
            got.im,
            v.re,
            v.im,
            (got - v).norm()
        );
    }

    let boundary_sup = sup_on_circle(&f, &circle, 4096).unwrap();
    println!("sampled boundary sup |F| = {boundary_sup:.12} (bound 1, safety 0.95)");

    let residual = holomorphy_residual(&f, Complex64::new(0.0, 0.0), 0.5, 0.9, 32).unwrap();
    println!("two-radius holomorphy residual = {residual:.3e}");

    for radius in [0.3, 0.6, 0.9] {
        let interior = sup_on_circle(
            &f,
            &Circle {
                center: Complex64::new(0.0, 0.0),
                radius,
            },
            2048,
        )
        .unwrap();
        println!("sup |F| on |z| = {radius}: {interior:.12}");
    }
}
