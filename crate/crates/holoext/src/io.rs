//! Problem, measure, result, and report files, plus the batch subcommands
//! behind the `holoext` binary.
//!
//! All files are UTF-8 JSON with an explicit `schema_version` field and
//! complex numbers spelled as `{re, im}` objects. The writer prints every
//! float with 17 significant digits, which round-trips binary64 exactly, and
//! serializes maps in key order, so re-serializing a parsed canonical file
//! reproduces it byte for byte. Results store the solved expression tree
//! verbatim together with the problem, so a stored result can be re-verified
//! from scratch.

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::disc::{BoundFunction, BoundaryConstraint, SolverOptions};
use crate::error::{Error, Result};
use crate::geometry::{build_domain, Circle};
use crate::glue::{solve_problem, ExtensionProblem, GlueMargins, VerificationReport};
use crate::holo::HoloFunction;
use crate::measure::{AnnulusMeasure, CircleMeasure, MeasureAtom, MeasureDecomposition};

pub const SCHEMA_VERSION: u32 = 1;

/// Verification thresholds re-applied by `verify` on stored results.
pub const VERIFY_INTERPOLATION_TOL: f64 = 1e-9;
pub const VERIFY_HOLOMORPHY_TOL: f64 = 1e-8;
pub const VERIFY_INTERIOR_TOL: f64 = 1e-9;

// ---------------------------------------------------------------------------
// canonical JSON writer
// ---------------------------------------------------------------------------

/// Pretty JSON formatter that prints every f64 with 17 significant digits.
struct CanonicalFormatter {
    pretty: serde_json::ser::PrettyFormatter<'static>,
}

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        serde_json::ser::Formatter::begin_array(&mut self.pretty, writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        serde_json::ser::Formatter::end_array(&mut self.pretty, writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        serde_json::ser::Formatter::begin_array_value(&mut self.pretty, writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        serde_json::ser::Formatter::end_array_value(&mut self.pretty, writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        serde_json::ser::Formatter::begin_object(&mut self.pretty, writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        serde_json::ser::Formatter::end_object(&mut self.pretty, writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        serde_json::ser::Formatter::begin_object_key(&mut self.pretty, writer, first)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        serde_json::ser::Formatter::begin_object_value(&mut self.pretty, writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        serde_json::ser::Formatter::end_object_value(&mut self.pretty, writer)
    }
}

/// Serialize to the canonical JSON form (17-digit floats, pretty-printed,
/// trailing newline).
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buffer = Vec::new();
    let formatter = CanonicalFormatter {
        pretty: serde_json::ser::PrettyFormatter::new(),
    };
    let mut serializer = serde_json::Serializer::with_formatter(&mut buffer, formatter);
    value
        .serialize(&mut serializer)
        .map_err(|e| Error::Parse(format!("serialization failed: {e}")))?;
    buffer.push(b'\n');
    String::from_utf8(buffer).map_err(|e| Error::Parse(format!("non-UTF8 output: {e}")))
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// file schemas
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub outer: Circle,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub holes: Vec<Circle>,
    #[serde(
        default,
        skip_serializing_if = "Vec::is_empty",
        with = "crate::cxfmt::complex_vec"
    )]
    pub punctures: Vec<Complex64>,
}

/// One constrained boundary point: located by angle or by coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintEntrySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::cxfmt::complex_opt"
    )]
    pub point: Option<Complex64>,
    #[serde(with = "crate::cxfmt::complex")]
    pub value: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundSpec {
    Const {
        #[serde(rename = "const")]
        value: f64,
    },
    Trig {
        #[serde(with = "crate::cxfmt::complex_map")]
        trig: BTreeMap<i32, Complex64>,
    },
}

impl BoundSpec {
    fn to_bound(&self) -> BoundFunction {
        match self {
            BoundSpec::Const { value } => BoundFunction::Const(*value),
            BoundSpec::Trig { trig } => BoundFunction::Trig(trig.clone()),
        }
    }

    fn from_bound(bound: &BoundFunction) -> BoundSpec {
        match bound {
            BoundFunction::Const(value) => BoundSpec::Const { value: *value },
            BoundFunction::Trig(trig) => BoundSpec::Trig { trig: trig.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentConstraintSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<ConstraintEntrySpec>,
    pub bound: BoundSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rounds: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub safety: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_retries: Option<u32>,
}

/// A solvable problem: domain, per-component constraints, puncture targets,
/// solver options.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub schema_version: u32,
    pub domain: DomainSpec,
    pub constraints: Vec<ComponentConstraintSpec>,
    #[serde(
        default,
        skip_serializing_if = "Vec::is_empty",
        with = "crate::cxfmt::complex_vec"
    )]
    pub puncture_values: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsSpec>,
}

fn check_schema_version(version: u32) -> Result<()> {
    if version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema_version: expected {SCHEMA_VERSION}, got {version}"
        )));
    }
    Ok(())
}

impl ProblemFile {
    /// Resolve the file into a validated problem and solver options.
    pub fn to_problem(&self) -> Result<(ExtensionProblem, SolverOptions)> {
        check_schema_version(self.schema_version)?;
        let domain = build_domain(
            self.domain.outer,
            self.domain.holes.clone(),
            self.domain.punctures.clone(),
        )?;
        if self.constraints.len() != domain.component_count() {
            return Err(Error::InvalidProblem(format!(
                "constraints: expected one entry per boundary component ({}), got {}",
                domain.component_count(),
                self.constraints.len()
            )));
        }
        let mut constraints = Vec::with_capacity(self.constraints.len());
        for (j, spec) in self.constraints.iter().enumerate() {
            let circle = domain.component_circle(j).expect("checked length");
            let mut points = Vec::with_capacity(spec.points.len());
            let mut values = Vec::with_capacity(spec.points.len());
            for (i, entry) in spec.points.iter().enumerate() {
                let point = match (entry.angle, entry.point) {
                    (Some(angle), None) => circle.point_at(angle),
                    (None, Some(point)) => point,
                    _ => {
                        return Err(Error::InvalidProblem(format!(
                            "constraints[{j}].points[{i}]: exactly one of `angle` or `point` required"
                        )))
                    }
                };
                points.push(point);
                values.push(entry.value);
            }
            constraints.push(BoundaryConstraint {
                points,
                values,
                bound: spec.bound.to_bound(),
            });
        }
        let problem = ExtensionProblem {
            domain,
            constraints,
            puncture_values: self.puncture_values.clone(),
        };
        let defaults = SolverOptions::default();
        let opts = match &self.options {
            None => defaults,
            Some(o) => SolverOptions {
                max_rounds: o.max_rounds.unwrap_or(defaults.max_rounds),
                safety: o.safety.unwrap_or(defaults.safety),
                boundary_samples: o.boundary_samples.unwrap_or(defaults.boundary_samples),
                max_retries: o.max_retries.unwrap_or(defaults.max_retries),
            },
        };
        Ok((problem, opts))
    }

    /// Spell a problem back out as a file (points stored as coordinates).
    pub fn from_problem(problem: &ExtensionProblem, options: Option<OptionsSpec>) -> ProblemFile {
        ProblemFile {
            schema_version: SCHEMA_VERSION,
            domain: DomainSpec {
                outer: *problem.domain.outer(),
                holes: problem.domain.holes().to_vec(),
                punctures: problem.domain.punctures().to_vec(),
            },
            constraints: problem
                .constraints
                .iter()
                .map(|c| ComponentConstraintSpec {
                    points: c
                        .points
                        .iter()
                        .zip(&c.values)
                        .map(|(&p, &v)| ConstraintEntrySpec {
                            angle: None,
                            point: Some(p),
                            value: v,
                        })
                        .collect(),
                    bound: BoundSpec::from_bound(&c.bound),
                })
                .collect(),
            puncture_values: problem.puncture_values.clone(),
            options,
        }
    }
}

/// Measures are stored as atoms plus density coefficient tables.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MeasureSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atoms: Vec<MeasureAtom>,
    #[serde(
        default,
        skip_serializing_if = "BTreeMap::is_empty",
        with = "crate::cxfmt::complex_map"
    )]
    pub density: BTreeMap<i32, Complex64>,
}

impl MeasureSpec {
    fn to_measure(&self, radius: f64) -> Result<CircleMeasure> {
        CircleMeasure::new(radius, self.atoms.clone(), self.density.clone())
    }

    fn from_measure(m: &CircleMeasure) -> MeasureSpec {
        MeasureSpec {
            atoms: m.atoms().to_vec(),
            density: m.density().clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureFile {
    pub schema_version: u32,
    pub r0: f64,
    pub inner: MeasureSpec,
    pub outer: MeasureSpec,
}

impl MeasureFile {
    pub fn to_measure(&self) -> Result<AnnulusMeasure> {
        check_schema_version(self.schema_version)?;
        AnnulusMeasure::new(
            self.r0,
            self.inner.to_measure(self.r0)?,
            self.outer.to_measure(1.0)?,
        )
    }

    pub fn from_measure(m: &AnnulusMeasure) -> MeasureFile {
        MeasureFile {
            schema_version: SCHEMA_VERSION,
            r0: m.r0(),
            inner: MeasureSpec::from_measure(m.inner()),
            outer: MeasureSpec::from_measure(m.outer()),
        }
    }
}

/// A stored solve: the problem, the margins, and the expression tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub schema_version: u32,
    pub mode: String,
    pub problem: ProblemFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margins: Option<GlueMargins>,
    pub function: HoloFunction,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margins: Option<GlueMargins>,
    #[serde(flatten)]
    pub report: VerificationReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub j: i32,
    #[serde(with = "crate::cxfmt::complex")]
    pub inner: Complex64,
    #[serde(with = "crate::cxfmt::complex")]
    pub outer: Complex64,
    #[serde(with = "crate::cxfmt::complex")]
    pub lambda0: Complex64,
    #[serde(with = "crate::cxfmt::complex")]
    pub eta0: Complex64,
    #[serde(with = "crate::cxfmt::complex")]
    pub eta1: Complex64,
    #[serde(with = "crate::cxfmt::complex")]
    pub lambda1: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub schema_version: u32,
    pub r0: f64,
    pub truncation: u32,
    pub defect: f64,
    pub tolerance: f64,
    pub tail_bound: f64,
    pub lambda0: MeasureSpec,
    pub eta0: MeasureSpec,
    pub eta1: MeasureSpec,
    pub lambda1: MeasureSpec,
    pub coefficients: Vec<CoefficientRow>,
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

/// Parsed command-line flags shared by the subcommands.
#[derive(Clone, Debug, Default)]
pub struct CliFlags {
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub samples: Option<usize>,
    pub safety: Option<f64>,
    pub truncation: Option<u32>,
    /// Assert that the run uses no randomness. Always true for this crate;
    /// the flag is accepted for reproducibility audits.
    pub seedless: bool,
}

fn report_path(out: &Path) -> PathBuf {
    out.with_extension("report.json")
}

fn f17(value: f64) -> String {
    format!("{value:.16e}")
}

fn write_boundary_csv(
    path: &Path,
    problem: &ExtensionProblem,
    function: &HoloFunction,
    samples: usize,
    with_bound: bool,
) -> Result<()> {
    let mut rows = String::from("component,angle,re,im,abs,bound\n");
    for j in 0..problem.domain.component_count() {
        let circle = problem.domain.component_circle(j).expect("valid index");
        let bound = &problem.constraints[j].bound;
        for s in 0..samples {
            let theta = 2.0 * std::f64::consts::PI * s as f64 / samples as f64;
            let v = function.evaluate(circle.point_at(theta))?;
            let bound_field = if with_bound {
                f17(bound.eval_angle(theta))
            } else {
                String::new()
            };
            rows.push_str(&format!(
                "{j},{},{},{},{},{bound_field}\n",
                f17(theta),
                f17(v.re),
                f17(v.im),
                f17(v.norm()),
            ));
        }
    }
    write_file(path, &rows)
}

/// `solve`: read a problem file, run the matching pipeline, write the result
/// and report files (result path from `--out`, report next to it), and
/// optionally a boundary-sample CSV.
pub fn cmd_solve(problem_path: &Path, flags: &CliFlags) -> Result<()> {
    let text = read_file(problem_path)?;
    let problem_file: ProblemFile = from_json(&text)?;
    let (problem, mut opts) = problem_file.to_problem()?;
    if let Some(samples) = flags.samples {
        opts.boundary_samples = samples;
    }
    if let Some(safety) = flags.safety {
        opts.safety = safety;
    }
    let result = solve_problem(&problem, &opts)?;

    let out = flags
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("result.json"));
    let result_file = ResultFile {
        schema_version: SCHEMA_VERSION,
        mode: result.report.mode.clone(),
        problem: problem_file,
        margins: result.margins,
        function: result.function.clone(),
    };
    write_file(&out, &to_canonical_json(&result_file)?)?;
    let report_file = ReportFile {
        schema_version: SCHEMA_VERSION,
        margins: result.margins,
        report: result.report.clone(),
    };
    write_file(&report_path(&out), &to_canonical_json(&report_file)?)?;
    if let Some(csv) = &flags.csv {
        write_boundary_csv(
            csv,
            &problem,
            &result.function,
            opts.boundary_samples,
            result.report.mode == "bounded",
        )?;
    }

    println!("mode: {}", result.report.mode);
    if let Some(margins) = result.margins {
        println!(
            "margins: gamma = {}, eps = {}, delta = {}",
            f17(margins.gamma),
            f17(margins.eps),
            f17(margins.delta)
        );
    }
    println!(
        "interpolation residual: {}",
        f17(result.report.interpolation_residual)
    );
    println!(
        "holomorphy residual: {}",
        f17(result.report.holomorphy_residual)
    );
    println!("result: {}", out.display());
    println!("report: {}", report_path(&out).display());
    Ok(())
}

/// `decompose`: read an annulus measure file, split it into its four
/// one-sided pieces, and write the pieces plus a coefficient table.
pub fn cmd_decompose(measure_path: &Path, flags: &CliFlags) -> Result<()> {
    let text = read_file(measure_path)?;
    let measure_file: MeasureFile = from_json(&text)?;
    let measure = measure_file.to_measure()?;
    let truncation = flags.truncation.unwrap_or(64);
    let decomposition = measure.decompose(truncation)?;
    let out = flags
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("decomposition.json"));
    let file = decomposition_file(&measure, &decomposition);
    write_file(&out, &to_canonical_json(&file)?)?;
    println!("defect: {}", f17(decomposition.defect));
    println!("tail bound: {}", f17(decomposition.tail_bound));
    println!("output: {}", out.display());
    Ok(())
}

fn decomposition_file(
    measure: &AnnulusMeasure,
    decomposition: &MeasureDecomposition,
) -> DecompositionFile {
    let j_max = decomposition.truncation as i32;
    let coefficients = (-j_max..=j_max)
        .map(|j| CoefficientRow {
            j,
            inner: measure.inner_coefficient(j),
            outer: measure.outer_coefficient(j),
            lambda0: decomposition.lambda0.fourier_coefficient(j),
            eta0: decomposition.eta0.fourier_coefficient(j),
            eta1: decomposition.eta1.fourier_coefficient(j),
            lambda1: decomposition.lambda1.fourier_coefficient(j),
        })
        .collect();
    DecompositionFile {
        schema_version: SCHEMA_VERSION,
        r0: measure.r0(),
        truncation: decomposition.truncation,
        defect: decomposition.defect,
        tolerance: crate::measure::DEFAULT_HYPOTHESIS_TOL,
        tail_bound: decomposition.tail_bound,
        lambda0: MeasureSpec::from_measure(&decomposition.lambda0),
        eta0: MeasureSpec::from_measure(&decomposition.eta0),
        eta1: MeasureSpec::from_measure(&decomposition.eta1),
        lambda1: MeasureSpec::from_measure(&decomposition.lambda1),
        coefficients,
    }
}

/// `map`: read a domain file (or a problem file; its domain is used), chart
/// the two-circle region onto a standard annulus, print the chart, and
/// optionally write a boundary-correspondence CSV.
pub fn cmd_map(domain_path: &Path, flags: &CliFlags) -> Result<()> {
    let text = read_file(domain_path)?;
    let value: serde_json::Value = from_json(&text)?;
    let domain_spec: DomainSpec = if value.get("domain").is_some() {
        let problem: ProblemFile = from_json(&text)?;
        problem.domain
    } else {
        from_json(&text)?
    };
    if domain_spec.holes.len() != 1 {
        return Err(Error::UnsupportedProblem(format!(
            "map needs a two-circle domain (exactly one hole), got {} holes",
            domain_spec.holes.len()
        )));
    }
    let chart = crate::conformal::annulus_chart(&domain_spec.outer, &domain_spec.holes[0])?;
    println!("r0 = {}", f17(chart.r0));
    for (name, v) in [
        ("a", chart.map.a),
        ("b", chart.map.b),
        ("c", chart.map.c),
        ("d", chart.map.d),
    ] {
        println!("map.{name} = {} + {} i", f17(v.re), f17(v.im));
    }
    if let Some(csv) = &flags.csv {
        let samples = flags.samples.unwrap_or(512);
        let mut rows = String::from("source_re,source_im,image_re,image_im\n");
        for circle in [&chart.source_outer, &chart.source_inner] {
            for z in crate::geometry::sample_boundary(circle, samples) {
                let w = chart.map.forward(z)?;
                rows.push_str(&format!(
                    "{},{},{},{}\n",
                    f17(z.re),
                    f17(z.im),
                    f17(w.re),
                    f17(w.im)
                ));
            }
        }
        write_file(csv, &rows)?;
    }
    Ok(())
}

struct Check {
    name: &'static str,
    value: f64,
    limit: f64,
    pass: bool,
}

fn run_verify_checks(
    problem: &ExtensionProblem,
    function: &HoloFunction,
    mode: &str,
    samples: usize,
) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut interpolation: f64 = 0.0;
    for constraint in &problem.constraints {
        for (p, v) in constraint.points.iter().zip(&constraint.values) {
            interpolation = interpolation.max((function.evaluate(*p)? - v).norm());
        }
    }
    checks.push(Check {
        name: "interpolation",
        value: interpolation,
        limit: VERIFY_INTERPOLATION_TOL,
        pass: interpolation <= VERIFY_INTERPOLATION_TOL,
    });

    if mode == "puncture" {
        let mut puncture: f64 = 0.0;
        for (p, w) in problem
            .domain
            .punctures()
            .iter()
            .zip(&problem.puncture_values)
        {
            puncture = puncture.max((function.evaluate(*p)? - w).norm());
        }
        checks.push(Check {
            name: "puncture-interpolation",
            value: puncture,
            limit: VERIFY_INTERPOLATION_TOL,
            pass: puncture <= VERIFY_INTERPOLATION_TOL,
        });
    } else {
        let mut worst_margin = f64::INFINITY;
        for j in 0..problem.domain.component_count() {
            let circle = problem.domain.component_circle(j).expect("valid index");
            let bound = &problem.constraints[j].bound;
            for s in 0..samples {
                let theta = 2.0 * std::f64::consts::PI * s as f64 / samples as f64;
                let fv = function.evaluate(circle.point_at(theta))?.norm();
                worst_margin = worst_margin.min(bound.eval_angle(theta) - fv);
            }
        }
        checks.push(Check {
            name: "boundary-bound",
            value: worst_margin,
            limit: 0.0,
            pass: worst_margin >= 0.0,
        });
    }

    // same deterministic test annulus the solver reports against
    let (center, rho1, rho2) = crate::glue::test_annulus(&problem.domain);
    let holomorphy = crate::holo::holomorphy_residual(function, center, rho1, rho2, 32)?;
    checks.push(Check {
        name: "holomorphy",
        value: holomorphy,
        limit: VERIFY_HOLOMORPHY_TOL,
        pass: holomorphy <= VERIFY_HOLOMORPHY_TOL,
    });

    let mut boundary_sup: f64 = 0.0;
    for j in 0..problem.domain.component_count() {
        let circle = problem.domain.component_circle(j).expect("valid index");
        boundary_sup = boundary_sup.max(crate::holo::sup_on_circle(function, circle, samples)?);
    }
    let mut interior_sup: f64 = 0.0;
    for radius in [rho1, rho2] {
        interior_sup = interior_sup.max(crate::holo::sup_on_circle(
            function,
            &Circle { center, radius },
            samples,
        )?);
    }
    let excess = interior_sup - boundary_sup;
    checks.push(Check {
        name: "interior-max-modulus",
        value: excess,
        limit: VERIFY_INTERIOR_TOL,
        pass: excess <= VERIFY_INTERIOR_TOL,
    });
    Ok(checks)
}

/// `verify`: re-run the stored result's verification checks from scratch,
/// print one line per check, optionally dump the boundary-sample CSV, and
/// fail (exit 2) naming the first failing check.
pub fn cmd_verify(result_path: &Path, flags: &CliFlags) -> Result<()> {
    let text = read_file(result_path)?;
    let result_file: ResultFile = from_json(&text)?;
    check_schema_version(result_file.schema_version)?;
    let (problem, opts) = result_file.problem.to_problem()?;
    let samples = flags.samples.unwrap_or(opts.boundary_samples);
    let checks = run_verify_checks(&problem, &result_file.function, &result_file.mode, samples)?;
    let mut stdout = std::io::stdout();
    for check in &checks {
        let _ = writeln!(
            stdout,
            "check {}: {} (value {}, limit {})",
            check.name,
            if check.pass { "PASS" } else { "FAIL" },
            f17(check.value),
            f17(check.limit)
        );
    }
    if let Some(csv) = &flags.csv {
        write_boundary_csv(
            csv,
            &problem,
            &result_file.function,
            samples,
            result_file.mode == "bounded",
        )?;
    }
    if let Some(failed) = checks.iter().find(|c| !c.pass) {
        return Err(Error::GlueBoundViolated(format!(
            "verification check '{}' failed: value {}, limit {}",
            failed.name,
            f17(failed.value),
            f17(failed.limit)
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_problem_json() -> String {
        r#"{
            "schema_version": 1,
            "domain": {
                "outer": {"center": {"re": 0.0, "im": 0.0}, "radius": 1.0},
                "holes": [{"center": {"re": 0.0, "im": 0.0}, "radius": 0.5}]
            },
            "constraints": [
                {"points": [{"angle": 0.0, "value": {"re": 0.3, "im": 0.0}}], "bound": {"const": 1.0}},
                {"points": [{"point": {"re": 0.5, "im": 0.0}, "value": {"re": -0.2, "im": 0.0}}], "bound": {"const": 1.0}}
            ]
        }"#
        .to_string()
    }

    #[test]
    fn problem_file_parses_angles_and_points() {
        let pf: ProblemFile = from_json(&sample_problem_json()).unwrap();
        let (problem, opts) = pf.to_problem().unwrap();
        assert_eq!(problem.domain.component_count(), 2);
        assert!((problem.constraints[0].points[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((problem.constraints[1].points[0] - c(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(opts.boundary_samples, 4096);
    }

    #[test]
    fn parse_errors_name_the_failing_field() {
        let err = from_json::<ProblemFile>("{\"schema_version\": 1}").unwrap_err();
        match err {
            Error::Parse(message) => assert!(message.contains("domain"), "{message}"),
            other => panic!("unexpected error {other}"),
        }
        let mut bad = sample_problem_json();
        bad = bad.replace("\"angle\": 0.0,", "\"angle\": 0.0, \"point\": {\"re\": 1.0, \"im\": 0.0},");
        let pf: ProblemFile = from_json(&bad).unwrap();
        let err = pf.to_problem().unwrap_err();
        assert!(err.to_string().contains("constraints[0].points[0]"));
    }

    #[test]
    fn wrong_schema_version_is_a_parse_error() {
        let text = sample_problem_json().replace("\"schema_version\": 1", "\"schema_version\": 7");
        let pf: ProblemFile = from_json(&text).unwrap();
        let err = pf.to_problem().unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn canonical_serialization_round_trips_byte_for_byte() {
        let pf: ProblemFile = from_json(&sample_problem_json()).unwrap();
        let canonical = to_canonical_json(&pf).unwrap();
        let reparsed: ProblemFile = from_json(&canonical).unwrap();
        assert_eq!(pf, reparsed);
        assert_eq!(canonical, to_canonical_json(&reparsed).unwrap());
        // floats carry 17 significant digits
        assert!(canonical.contains("1.0000000000000000e0"));
        assert!(canonical.contains("-2.0000000000000001e-1"));
    }

    #[test]
    fn measure_file_round_trip() {
        let mut density = BTreeMap::new();
        density.insert(1, c(-0.5, 0.0));
        let inner = CircleMeasure::from_density(0.5, density).unwrap();
        let mut density = BTreeMap::new();
        density.insert(1, c(1.0, 0.0));
        let outer = CircleMeasure::from_density(1.0, density).unwrap();
        let m = AnnulusMeasure::new(0.5, inner, outer).unwrap();
        let file = MeasureFile::from_measure(&m);
        let json = to_canonical_json(&file).unwrap();
        let back: MeasureFile = from_json(&json).unwrap();
        assert_eq!(back.to_measure().unwrap(), m);
        assert_eq!(json, to_canonical_json(&back).unwrap());
    }

    #[test]
    fn float_formatting_round_trips_binary64() {
        for &x in &[
            0.1,
            std::f64::consts::PI,
            -1.0 / 3.0,
            1.4e26,
            5.0e-324,
            0.0,
            123_456_789.123_456_79,
        ] {
            let s = f17(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }
}
