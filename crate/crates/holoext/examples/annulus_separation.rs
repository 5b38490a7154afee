//! Interpolation on a standard annulus and a separating function: a
//! holomorphic function that is 1 on chosen points of one boundary circle,
//! 0 on points of the other, with controlled suprema on both.
//!
//! Run with `cargo run --example annulus_separation`.

use holoext::annulus::{extend_annulus, separating_function, AnnulusConstraint, CircleSide};
use holoext::disc::{BoundFunction, SolverOptions};
use holoext::geometry::Circle;
use holoext::holo::sup_on_circle;
use num_complex::Complex64;

fn main() {
    let r0 = 0.5;
    let opts = SolverOptions::default();

    // values on both circles of the annulus {0.5 < |z| < 1}
    let constraint = AnnulusConstraint {
        r0,
        outer_points: vec![Complex64::new(1.0, 0.0)],
        outer_values: vec![Complex64::new(0.5, 0.0)],
        inner_points: vec![Complex64::from_polar(r0, 2.0)],
        inner_values: vec![Complex64::new(0.0, 0.3)],
        outer_bound: BoundFunction::Const(1.0),
        inner_bound: BoundFunction::Const(1.0),
    };
    let f = extend_annulus(&constraint, &opts).expect("solvable constraint");
    println!("annulus interpolation:");
    println!(
        "  F(1) = {:?}   F(r0 e^2i) = {:?}",
        f.evaluate(Complex64::new(1.0, 0.0)).unwrap(),
        f.evaluate(Complex64::from_polar(r0, 2.0)).unwrap()
    );

    // separating function: 1 at two unit-circle points, 0 at an inner point,
    // below 1 + eps on its own circle and below delta on the other
    let eps = 0.1;
    let delta = 0.01;
    let keep = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
    let kill = [Complex64::new(0.0, r0)];
    let h = separating_function(r0, &keep, &kill, CircleSide::Unit, eps, delta, &opts)
        .expect("separating data");

    println!("separating function (eps = {eps}, delta = {delta}):");
    for p in keep {
        println!("  h({:+.1}{:+.1}i) = {:?}", p.re, p.im, h.evaluate(p).unwrap());
    }
    println!("  h(kill point) = {:?}", h.evaluate(kill[0]).unwrap());
    let unit_sup = sup_on_circle(&h, &Circle::unit(), 4096).unwrap();
    let inner_sup = sup_on_circle(
        &h,
        &Circle {
            center: Complex64::new(0.0, 0.0),
            radius: r0,
        },
        4096,
    )
    .unwrap();
    println!("  sup on unit circle  = {unit_sup:.6}  (limit {})", 1.0 + eps);
    println!("  sup on inner circle = {inner_sup:.6}  (limit {delta})");
}
