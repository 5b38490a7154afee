//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime. Randomized inputs come from a fixed-seed generator, so every
//! run exercises identical cases.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use holoext::conformal::{annulus_chart, modulus};
use holoext::disc::{extend_disc, BoundFunction, BoundaryConstraint, SolverOptions};
use holoext::geometry::{build_domain, sample_boundary, Circle};
use holoext::glue::{glue, interpolate_with_punctures, ExtensionProblem};
use holoext::holo::{holomorphy_residual, sup_on_circle};
use holoext::io::{to_canonical_json, OptionsSpec, ProblemFile, ReportFile};
use holoext::measure::{AnnulusMeasure, CircleMeasure, MeasureAtom};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// splitmix64; fixed seeds keep the suite reproducible
struct Rng(u64);

impl Rng {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// uniform in [0, 1)
    fn f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.f64()
    }

    fn unit_complex(&mut self) -> Complex64 {
        Complex64::from_polar(1.0, self.range(0.0, 2.0 * PI))
    }
}

fn report_pass(criterion: &str, elapsed: Duration, budget: Duration) {
    assert!(
        elapsed < budget,
        "{criterion} took {elapsed:?}, budget {budget:?}"
    );
    println!("{criterion}: PASS ({elapsed:?})");
}

// -------------------------------------------------------------------------
// criterion 1: coefficient bound suite
// -------------------------------------------------------------------------

#[test]
fn criterion_1_coefficient_bound_suite() {
    let start = Instant::now();
    let mut rng = Rng(1);
    let radii = [0.3, 0.5, 1.0];
    for case in 0..200 {
        let radius = radii[case % radii.len()];
        let atom_count = (rng.next_u64() % 5) as usize;
        let atoms: Vec<MeasureAtom> = (0..atom_count)
            .map(|i| MeasureAtom {
                // spread starting angles so they stay pairwise distinct
                angle: rng.range(0.0, 1.0) + i as f64 * 1.3,
                weight: rng.range(0.1, 2.0) * rng.unit_complex(),
            })
            .collect();
        let mut density = BTreeMap::new();
        for _ in 0..(1 + rng.next_u64() % 6) {
            let index = (rng.next_u64() % 101) as i32 - 50;
            density.insert(index, rng.range(0.1, 1.5) * rng.unit_complex());
        }
        let measure = CircleMeasure::new(radius, atoms, density).unwrap();
        for j in -50..=50 {
            let margin = measure.coefficient_bound_margin(j);
            assert!(
                margin >= -1e-12,
                "case {case}, radius {radius}, j {j}: margin {margin:e}"
            );
        }
    }
    report_pass(
        "criterion 1 (coefficient bound suite)",
        start.elapsed(),
        Duration::from_secs(5),
    );
}

// -------------------------------------------------------------------------
// criterion 2: annulus measure decomposition
// -------------------------------------------------------------------------

/// Hypothesis-satisfying measure with density support inside [-32, 32]: each
/// index is anchored on the circle where its coefficient stays order one and
/// mirrored to the other, and magnitudes decay geometrically so the arc
/// probes sit in their linear regime at width 0.1.
fn random_cancelling_measure(rng: &mut Rng, r0: f64) -> AnnulusMeasure {
    let mut inner = BTreeMap::new();
    let mut outer = BTreeMap::new();
    let put = |k: i32, v: Complex64, inner: &mut BTreeMap<i32, Complex64>, outer: &mut BTreeMap<i32, Complex64>| {
        if k >= 0 {
            outer.insert(k, v);
            inner.insert(k, -v * r0.powi(k));
        } else {
            inner.insert(k, v);
            outer.insert(k, -v * r0.powi(-k));
        }
    };
    for k in [-1, 0, 1] {
        put(k, rng.range(0.5, 1.5) * rng.unit_complex(), &mut inner, &mut outer);
    }
    for _ in 0..5 {
        let k = (rng.next_u64() % 65) as i32 - 32;
        let magnitude = rng.range(0.3, 1.0) * 0.6f64.powi(k.abs());
        put(k, magnitude * rng.unit_complex(), &mut inner, &mut outer);
    }
    AnnulusMeasure::new(
        r0,
        CircleMeasure::from_density(r0, inner).unwrap(),
        CircleMeasure::from_density(1.0, outer).unwrap(),
    )
    .unwrap()
}

/// Probe the measure of shrinking arcs around the density's largest value;
/// the mass of an arc of an atomless measure scales linearly with its width.
fn assert_probe_shrinks_linearly(piece: &CircleMeasure, label: &str) {
    let center = (0..256)
        .map(|i| 2.0 * PI * i as f64 / 256.0)
        .max_by(|&a, &b| {
            let va = piece.arc_variation_probe(a, 0.001).norm();
            let vb = piece.arc_variation_probe(b, 0.001).norm();
            va.partial_cmp(&vb).unwrap()
        })
        .unwrap();
    let p1 = piece.arc_variation_probe(center, 0.1).norm();
    let p2 = piece.arc_variation_probe(center, 0.01).norm();
    let p3 = piece.arc_variation_probe(center, 0.001).norm();
    for (wide, narrow) in [(p1, p2), (p2, p3)] {
        let ratio = wide / narrow;
        assert!(
            (8.0..=12.0).contains(&ratio),
            "{label}: probe ratio {ratio} outside 10 +- 20%"
        );
    }
}

#[test]
fn criterion_2_measure_decomposition() {
    let start = Instant::now();
    let mut rng = Rng(2);
    for case in 0..50 {
        let r0 = if case % 2 == 0 { 0.3 } else { 0.6 };
        let measure = random_cancelling_measure(&mut rng, r0);
        let d = measure.decompose(64).unwrap();
        for j in -64..=64i32 {
            // one-sided support contracts, exact to 1e-12
            if j <= 0 {
                assert!(d.lambda0.fourier_coefficient(j).norm() <= 1e-12);
            } else {
                assert!(d.eta0.fourier_coefficient(j).norm() <= 1e-12);
            }
            if j >= 0 {
                assert!(d.eta1.fourier_coefficient(j).norm() <= 1e-12);
            } else {
                assert!(d.lambda1.fourier_coefficient(j).norm() <= 1e-12);
            }
            // coefficientwise reconstruction
            let inner = d.lambda0.fourier_coefficient(j) + d.eta0.fourier_coefficient(j);
            let outer = d.eta1.fourier_coefficient(j) + d.lambda1.fourier_coefficient(j);
            assert!((inner - measure.inner_coefficient(j)).norm() < 1e-10);
            assert!((outer - measure.outer_coefficient(j)).norm() < 1e-10);
        }
        for (piece, label) in [
            (&d.lambda0, "lambda0"),
            (&d.eta0, "eta0"),
            (&d.eta1, "eta1"),
            (&d.lambda1, "lambda1"),
        ] {
            assert_probe_shrinks_linearly(piece, label);
        }
    }
    report_pass(
        "criterion 2 (annulus measure decomposition)",
        start.elapsed(),
        Duration::from_secs(10),
    );
}

// -------------------------------------------------------------------------
// criterion 3: disc interpolation under a trig bound
// -------------------------------------------------------------------------

fn random_trig_bound(rng: &mut Rng) -> BoundFunction {
    let base = rng.range(0.8, 1.5);
    let mut coeffs = BTreeMap::new();
    coeffs.insert(0, c(base, 0.0));
    coeffs.insert(1, 0.05 * base * rng.unit_complex());
    coeffs.insert(2, 0.05 * base * rng.unit_complex());
    BoundFunction::Trig(coeffs)
}

fn random_separated_angles(rng: &mut Rng, count: usize, min_separation: f64) -> Vec<f64> {
    let mut angles: Vec<f64> = Vec::with_capacity(count);
    while angles.len() < count {
        let candidate = rng.range(0.0, 2.0 * PI);
        if angles
            .iter()
            .all(|&a| holoext::geometry::angular_distance(a, candidate) > min_separation)
        {
            angles.push(candidate);
        }
    }
    angles
}

#[test]
fn criterion_3_disc_interpolation() {
    let start = Instant::now();
    let mut rng = Rng(3);
    let opts = SolverOptions::default();
    for &count in &[1usize, 2, 5, 20] {
        for _ in 0..3 {
            let bound = random_trig_bound(&mut rng);
            let angles = random_separated_angles(&mut rng, count, 0.05);
            let points: Vec<Complex64> =
                angles.iter().map(|&a| Circle::unit().point_at(a)).collect();
            let values: Vec<Complex64> = angles
                .iter()
                .map(|&a| 0.8 * bound.eval_angle(a) * rng.unit_complex())
                .collect();
            let constraint = BoundaryConstraint {
                points: points.clone(),
                values: values.clone(),
                bound: bound.clone(),
            };
            let f = extend_disc(&constraint, &opts).unwrap();
            for (p, v) in points.iter().zip(&values) {
                assert!((f.evaluate(*p).unwrap() - v).norm() < 1e-10);
            }
            for s in 0..4096 {
                let theta = 2.0 * PI * s as f64 / 4096.0;
                let ratio =
                    f.evaluate(Circle::unit().point_at(theta)).unwrap().norm() / bound.eval_angle(theta);
                assert!(ratio <= 0.95 + 1e-12, "|E| = {count}: ratio {ratio}");
            }
            let residual = holomorphy_residual(&f, c(0.0, 0.0), 0.5, 0.9, 32).unwrap();
            assert!(residual < 1e-9, "|E| = {count}: residual {residual:e}");
            let boundary_sup = sup_on_circle(&f, &Circle::unit(), 4096).unwrap();
            for radius in [0.5, 0.9] {
                let interior = sup_on_circle(
                    &f,
                    &Circle { center: c(0.0, 0.0), radius },
                    4096,
                )
                .unwrap();
                assert!(interior <= boundary_sup + 1e-9);
            }
        }
    }
    report_pass(
        "criterion 3 (disc interpolation)",
        start.elapsed(),
        Duration::from_secs(30),
    );
}

// -------------------------------------------------------------------------
// criterion 4: conformal modulus oracle
// -------------------------------------------------------------------------

#[test]
fn criterion_4_conformal_modulus() {
    let start = Instant::now();

    // independent oracle for the worked pair: the common symmetric points of
    // the unit circle and circle(0.3, 0.3) solve 0.3 x^2 - x + 0.3 = 0, and
    // the modulus is the image radius |x1| of the inner circle's endpoints
    let (a_coef, b_coef, c_coef) = (0.3f64, -1.0f64, 0.3f64);
    let x1 = (-b_coef - (b_coef * b_coef - 4.0 * a_coef * c_coef).sqrt()) / (2.0 * a_coef);
    let t = |z: f64| (z - x1) / (1.0 - x1 * z);
    let oracle_r0 = t(0.0).abs();
    assert!((oracle_r0 - t(0.6).abs()).abs() < 1e-14);
    assert!((oracle_r0 - 1.0 / 3.0).abs() < 1e-14);

    let hole = Circle { center: c(0.3, 0.0), radius: 0.3 };
    let chart = annulus_chart(&Circle::unit(), &hole).unwrap();
    assert!((chart.r0 - oracle_r0).abs() < 1e-12);
    // boundary-sample image-radius check against the oracle value
    for z in sample_boundary(&hole, 512) {
        assert!((chart.map.forward(z).unwrap().norm() - oracle_r0).abs() < 1e-10);
    }

    let mut rng = Rng(4);
    for case in 0..100 {
        let outer = Circle {
            center: c(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)),
            radius: rng.range(0.5, 2.0),
        };
        // nested inner circle with a real gap to the outer boundary
        let inner_radius = outer.radius * rng.range(0.1, 0.5);
        let max_offset = outer.radius - inner_radius - 0.05 * outer.radius;
        let offset = Complex64::from_polar(rng.range(0.0, max_offset), rng.range(0.0, 2.0 * PI));
        let inner = Circle { center: outer.center + offset, radius: inner_radius };

        let chart = annulus_chart(&outer, &inner).unwrap();
        let mut worst: f64 = 0.0;
        for z in sample_boundary(&outer, 512) {
            worst = worst.max((chart.map.forward(z).unwrap().norm() - 1.0).abs());
        }
        for z in sample_boundary(&inner, 512) {
            worst = worst.max((chart.map.forward(z).unwrap().norm() - chart.r0).abs());
        }
        assert!(worst < 1e-10, "case {case}: correspondence error {worst:e}");

        // modulus is invariant under similarities applied to both circles
        let factor = Complex64::from_polar(rng.range(0.2, 3.0), rng.range(0.0, 2.0 * PI));
        let shift = c(rng.range(-5.0, 5.0), rng.range(-5.0, 5.0));
        let map_circle = |circle: &Circle| Circle {
            center: factor * circle.center + shift,
            radius: factor.norm() * circle.radius,
        };
        let moved = modulus(&map_circle(&outer), &map_circle(&inner)).unwrap();
        assert!(
            (moved - chart.r0).abs() < 1e-12,
            "case {case}: modulus moved by {:e}",
            (moved - chart.r0).abs()
        );
    }
    report_pass(
        "criterion 4 (conformal modulus oracle)",
        start.elapsed(),
        Duration::from_secs(5),
    );
}

// -------------------------------------------------------------------------
// criterion 5: glued extension on two- and three-component domains
// -------------------------------------------------------------------------

fn worked_two_component_problem() -> ExtensionProblem {
    let domain = build_domain(
        Circle::unit(),
        vec![Circle { center: c(0.0, 0.0), radius: 0.5 }],
        vec![],
    )
    .unwrap();
    ExtensionProblem {
        domain,
        constraints: vec![
            BoundaryConstraint {
                points: vec![c(1.0, 0.0)],
                values: vec![c(0.3, 0.0)],
                bound: BoundFunction::Const(1.0),
            },
            BoundaryConstraint {
                points: vec![c(0.5, 0.0)],
                values: vec![c(-0.2, 0.0)],
                bound: BoundFunction::Const(1.0),
            },
        ],
        puncture_values: vec![],
    }
}

fn worked_three_component_problem() -> ExtensionProblem {
    let h1 = Circle { center: c(-0.45, 0.0), radius: 0.15 };
    let h2 = Circle { center: c(0.45, 0.0), radius: 0.15 };
    let domain = build_domain(Circle::unit(), vec![h1, h2], vec![]).unwrap();
    ExtensionProblem {
        domain,
        constraints: vec![
            BoundaryConstraint {
                points: vec![Circle::unit().point_at(0.3)],
                values: vec![c(0.3, 0.0)],
                bound: BoundFunction::Const(1.0),
            },
            BoundaryConstraint {
                points: vec![h1.point_at(PI / 4.0)],
                values: vec![c(0.1, 0.2)],
                bound: BoundFunction::Const(1.0),
            },
            BoundaryConstraint {
                points: vec![h2.point_at(PI / 2.0)],
                values: vec![c(-0.25, 0.0)],
                bound: BoundFunction::Const(1.0),
            },
        ],
        puncture_values: vec![],
    }
}

#[test]
fn criterion_5_glued_extension() {
    let start = Instant::now();
    let opts = SolverOptions::default();
    for (label, problem) in [
        ("k = 2", worked_two_component_problem()),
        ("k = 3", worked_three_component_problem()),
    ] {
        let result = glue(&problem, &opts).unwrap();
        let report = &result.report;
        assert!(
            report.interpolation_residual < 1e-9,
            "{label}: interpolation residual {:e}",
            report.interpolation_residual
        );
        for (j, margin) in report
            .component_bound_margins
            .as_ref()
            .unwrap()
            .iter()
            .enumerate()
        {
            assert!(*margin >= 0.0, "{label}: component {j} bound margin {margin:e}");
        }
        // separating-product contracts
        assert!(report.separating_keep_error.unwrap() < 1e-9, "{label}");
        assert!(report.separating_kill_leak.unwrap() < 1e-9, "{label}");
        assert!(report.separating_own_sup_ratio.unwrap() < 1.0, "{label}");
        assert!(report.separating_other_sup_ratio.unwrap() < 1.0, "{label}");
        // margin chain: |F| <= chain + 1e-9 and chain <= bound, sampled
        assert!(report.bound_chain_consistency.unwrap() <= 1e-9, "{label}");
        assert!(report.bound_chain_slack.unwrap() >= 0.0, "{label}");
        assert!(
            report.holomorphy_residual < 1e-8,
            "{label}: holomorphy residual {:e}",
            report.holomorphy_residual
        );
        assert!(report.interior_max_modulus_excess <= 1e-9, "{label}");

        // direct spot checks on the worked values
        for (constraint, circle_index) in problem.constraints.iter().zip(0..) {
            let _ = circle_index;
            for (p, v) in constraint.points.iter().zip(&constraint.values) {
                assert!((result.function.evaluate(*p).unwrap() - v).norm() < 1e-9);
            }
        }
    }
    report_pass(
        "criterion 5 (glued extension, k = 2 and k = 3)",
        start.elapsed(),
        Duration::from_secs(60),
    );
}

// -------------------------------------------------------------------------
// criterion 6: puncture interpolation
// -------------------------------------------------------------------------

#[test]
fn criterion_6_puncture_interpolation() {
    let start = Instant::now();
    let opts = SolverOptions::default();

    // one puncture, zero boundary data, target 5
    let domain = build_domain(
        Circle::unit(),
        vec![Circle { center: c(0.5, 0.0), radius: 0.2 }],
        vec![c(0.0, 0.0)],
    )
    .unwrap();
    let problem = ExtensionProblem {
        domain,
        constraints: vec![
            BoundaryConstraint {
                points: vec![c(-1.0, 0.0)],
                values: vec![c(0.0, 0.0)],
                bound: BoundFunction::Const(1.0),
            },
            BoundaryConstraint {
                points: vec![c(0.3, 0.0)],
                values: vec![c(0.0, 0.0)],
                bound: BoundFunction::Const(1.0),
            },
        ],
        puncture_values: vec![c(5.0, 0.0)],
    };
    let result = interpolate_with_punctures(&problem, &opts).unwrap();
    assert!((result.function.evaluate(c(0.0, 0.0)).unwrap() - c(5.0, 0.0)).norm() < 1e-9);
    assert!(result.function.evaluate(c(-1.0, 0.0)).unwrap().norm() < 1e-9);
    assert!(result.function.evaluate(c(0.3, 0.0)).unwrap().norm() < 1e-9);
    assert!(result.report.puncture_residual.unwrap() < 1e-9);
    assert!(result.report.interpolation_residual < 1e-9);

    // the report on the puncture path carries no bound fields at all
    let report_json = to_canonical_json(&ReportFile {
        schema_version: 1,
        margins: result.margins,
        report: result.report.clone(),
    })
    .unwrap();
    let value: serde_json::Value = serde_json::from_str(&report_json).unwrap();
    assert!(value.get("component_bound_margins").is_none());
    assert!(value.get("bound_chain_slack").is_none());
    assert!(value.get("bound_chain_consistency").is_none());

    // two punctures with distinct targets and nonzero boundary data
    let domain = build_domain(
        Circle::unit(),
        vec![Circle { center: c(0.0, 0.5), radius: 0.25 }],
        vec![c(0.2, 0.0), c(-0.2, 0.0)],
    )
    .unwrap();
    let hole_point = c(0.0, 0.25);
    let problem = ExtensionProblem {
        domain,
        constraints: vec![
            BoundaryConstraint {
                points: vec![c(1.0, 0.0)],
                values: vec![c(0.1, 0.0)],
                bound: BoundFunction::Const(1.0),
            },
            BoundaryConstraint {
                points: vec![hole_point],
                values: vec![c(-0.1, 0.0)],
                bound: BoundFunction::Const(1.0),
            },
        ],
        puncture_values: vec![c(1.0, 0.0), c(2.0, 0.0)],
    };
    let result = interpolate_with_punctures(&problem, &opts).unwrap();
    assert!((result.function.evaluate(c(0.2, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-9);
    assert!((result.function.evaluate(c(-0.2, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-9);
    assert!((result.function.evaluate(c(1.0, 0.0)).unwrap() - c(0.1, 0.0)).norm() < 1e-9);
    assert!((result.function.evaluate(hole_point).unwrap() - c(-0.1, 0.0)).norm() < 1e-9);
    assert!(result.report.component_bound_margins.is_none());

    report_pass(
        "criterion 6 (puncture interpolation)",
        start.elapsed(),
        Duration::from_secs(30),
    );
}

// -------------------------------------------------------------------------
// criterion 7: determinism and round-trip through the CLI
// -------------------------------------------------------------------------

#[test]
fn criterion_7_determinism_and_round_trip() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_holoext");
    let dir = std::env::temp_dir().join(format!("holoext-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    // problems from criteria 5 and 6, serialized through the canonical writer
    let puncture_problem = {
        let domain = build_domain(
            Circle::unit(),
            vec![Circle { center: c(0.5, 0.0), radius: 0.2 }],
            vec![c(0.0, 0.0)],
        )
        .unwrap();
        ExtensionProblem {
            domain,
            constraints: vec![
                BoundaryConstraint {
                    points: vec![c(-1.0, 0.0)],
                    values: vec![c(0.0, 0.0)],
                    bound: BoundFunction::Const(1.0),
                },
                BoundaryConstraint {
                    points: vec![c(0.3, 0.0)],
                    values: vec![c(0.0, 0.0)],
                    bound: BoundFunction::Const(1.0),
                },
            ],
            puncture_values: vec![c(5.0, 0.0)],
        }
    };
    let problems = [
        ("two_component", worked_two_component_problem()),
        ("three_component", worked_three_component_problem()),
        ("puncture", puncture_problem),
    ];
    for (name, problem) in &problems {
        let problem_path = dir.join(format!("{name}.json"));
        let file = ProblemFile::from_problem(problem, None::<OptionsSpec>);
        std::fs::write(&problem_path, to_canonical_json(&file).unwrap()).unwrap();

        let mut outputs = Vec::new();
        for run in 0..2 {
            let out = dir.join(format!("{name}-run{run}.result.json"));
            let status = std::process::Command::new(bin)
                .args([
                    "solve",
                    problem_path.to_str().unwrap(),
                    "--out",
                    out.to_str().unwrap(),
                    "--seedless",
                ])
                .output()
                .unwrap();
            assert!(
                status.status.success(),
                "{name} run {run}: {}",
                String::from_utf8_lossy(&status.stderr)
            );
            outputs.push(std::fs::read(&out).unwrap());
        }
        assert_eq!(outputs[0], outputs[1], "{name}: result files differ between runs");

        let verify = std::process::Command::new(bin)
            .args([
                "verify",
                dir.join(format!("{name}-run0.result.json")).to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(
            verify.status.success(),
            "{name}: verify failed: {}",
            String::from_utf8_lossy(&verify.stderr)
        );
    }

    // decomposition pipeline determinism
    let measure_json = r#"{
        "schema_version": 1,
        "r0": 0.5,
        "inner": {"density": {"1": {"re": -0.5, "im": 0.0}}},
        "outer": {"density": {"1": {"re": 1.0, "im": 0.0}}}
    }"#;
    let measure_path = dir.join("measure.json");
    std::fs::write(&measure_path, measure_json).unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let out = dir.join(format!("measure-run{run}.json"));
        let status = std::process::Command::new(bin)
            .args([
                "decompose",
                measure_path.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
                "--truncation",
                "16",
            ])
            .output()
            .unwrap();
        assert!(status.status.success());
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "decomposition files differ between runs");

    std::fs::remove_dir_all(&dir).ok();
    report_pass(
        "criterion 7 (determinism and round-trip)",
        start.elapsed(),
        Duration::from_secs(60),
    );
}
