//! Exact Moebius charts: one-circle regions onto the unit disc, two-circle
//! regions onto a standard annulus, and the conformal modulus.
//!
//! Run with `cargo run --example conformal_charts`.

use holoext::conformal::{annulus_chart, disc_chart, modulus};
use holoext::geometry::{sample_boundary, Circle, RegionDescriptor, Side};
use num_complex::Complex64;

fn main() {
    let hole = Circle {
        center: Complex64::new(0.3, 0.0),
        radius: 0.3,
    };

    // exterior of the hole onto the unit disc, infinity to 0
    let exterior = RegionDescriptor {
        circles: vec![(hole, Side::Outside)],
        contains_infinity: true,
    };
    let chart = disc_chart(&exterior).unwrap();
    println!(
        "exterior chart: w(0.6) = {:?}, w(infinity) = {:?}",
        chart.forward(Complex64::new(0.6, 0.0)).unwrap(),
        chart.forward_infinity().unwrap()
    );

    // region between the unit circle and the hole onto {r0 < |w| < 1}
    let chart = annulus_chart(&Circle::unit(), &hole).unwrap();
    println!("annulus chart of (unit, circle(0.3, 0.3)):");
    println!("  r0 = {:.15}  (conformal modulus, expected 1/3)", chart.r0);
    println!(
        "  map = ({:?} z + {:?}) / ({:?} z + {:?})",
        chart.map.a, chart.map.b, chart.map.c, chart.map.d
    );
    let mut worst_outer: f64 = 0.0;
    let mut worst_inner: f64 = 0.0;
    for z in sample_boundary(&Circle::unit(), 512) {
        worst_outer = worst_outer.max((chart.map.forward(z).unwrap().norm() - 1.0).abs());
    }
    for z in sample_boundary(&hole, 512) {
        worst_inner = worst_inner.max((chart.map.forward(z).unwrap().norm() - chart.r0).abs());
    }
    println!("  boundary correspondence error: outer {worst_outer:.2e}, inner {worst_inner:.2e}");

    // the modulus is a similarity invariant
    let scale = Complex64::from_polar(2.5, 1.1);
    let shift = Complex64::new(-3.0, 4.0);
    let moved = |c: &Circle| Circle {
        center: scale * c.center + shift,
        radius: scale.norm() * c.radius,
    };
    let r0_moved = modulus(&moved(&Circle::unit()), &moved(&hole)).unwrap();
    println!(
        "  after a similarity: r0 = {:.15} (difference {:.2e})",
        r0_moved,
        (r0_moved - chart.r0).abs()
    );
}
