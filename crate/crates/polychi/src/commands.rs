use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use polychi_core::constructible::NormalizeOptions;
use polychi_core::integral::{self, McReport};
use polychi_core::radon;
use polychi_core::{scalar, ConstructibleFn, Polytope, ProjConstructibleFn, ProjPoint, Scalar};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{
    from_vector, AffineMapJson, BodyJson, CellDecompositionJson, ConstructibleJson, InversionJson, KernelProbeJson,
    PolytopeJson, ProjFnJson, Rational, RationalVec,
};
use crate::{Cli, Command, Common, Format};

const DEFAULT_MC_SAMPLES: u64 = 1_000_000;
const DEFAULT_PROBES: u64 = 100;

/// The result of a command: JSON always, CSV for tabular results, and a
/// failure message when a verification did not pass.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub json: Value,
    pub csv: Option<String>,
    pub failure: Option<String>,
}

impl Output {
    fn json(json: Value) -> Self {
        Output {
            json,
            csv: None,
            failure: None,
        }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    fn failing_unless(mut self, passed: bool, message: &str) -> Self {
        if !passed {
            self.failure = Some(message.to_string());
        }
        self
    }

    /// The bytes to write for the requested format.
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::validation("--format", "this command has no CSV output")),
        }
    }
}

fn read_value(path: &Path) -> Result<Value, CliError> {
    let file = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| CliError::parse("", e.to_string()).in_file(&file))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de)
        .map_err(|e| CliError::parse(e.path().to_string(), e.inner().to_string()).in_file(&file))
}

fn decode<T: DeserializeOwned>(value: Value, file: &str) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value)
        .map_err(|e| CliError::parse(e.path().to_string(), e.inner().to_string()).in_file(file))
}

fn has_key(v: &Value, key: &str) -> bool {
    v.as_object().is_some_and(|o| o.contains_key(key))
}

/// A constructible function on `R^d`, or a single polytope read as its indicator.
fn load_affine_fn(path: &Path) -> Result<ConstructibleFn, CliError> {
    let file = path.display().to_string();
    let value = read_value(path)?;
    if has_key(&value, "terms") {
        decode::<ConstructibleJson>(value, &file)?.to_fn().map_err(|e| e.in_file(&file))
    } else {
        let p = decode::<PolytopeJson>(value, &file)?.to_polytope("").map_err(|e| e.in_file(&file))?;
        Ok(ConstructibleFn::indicator(p))
    }
}

/// A polytope, or a constructible function that is the indicator of one.
fn load_polytope(path: &Path) -> Result<Polytope, CliError> {
    let file = path.display().to_string();
    let phi = load_affine_fn(path)?;
    let phi = phi.simplify();
    match phi.terms() {
        [t] if t.weight == Scalar::from_integer(1.into()) => Ok(t.support.clone()),
        [] => Ok(Polytope::empty(phi.ambient_dim())),
        _ => Err(CliError::validation("terms", "expected a single polytope").in_file(&file)),
    }
}

/// A function on `RP^n`, or a single body read as its indicator.
fn load_proj_json(path: &Path) -> Result<ProjFnJson, CliError> {
    let file = path.display().to_string();
    let value = read_value(path)?;
    if has_key(&value, "cone_generators") {
        let body: BodyJson = decode(value, &file)?;
        let weight = Rational(Scalar::from_integer(1.into()));
        Ok(ProjFnJson {
            n: body.n,
            constant: Rational(Scalar::from_integer(0.into())),
            terms: vec![crate::format::ProjTermJson { weight, body }],
        })
    } else {
        decode(value, &file)
    }
}

fn load_proj_fn(path: &Path) -> Result<ProjConstructibleFn, CliError> {
    let file = path.display().to_string();
    load_proj_json(path)?.to_fn().map_err(|e| e.in_file(&file))
}

fn load_points(path: &Path, n: usize) -> Result<Vec<ProjPoint>, CliError> {
    let file = path.display().to_string();
    let rows: Vec<RationalVec> = decode(read_value(path)?, &file)?;
    crate::format::parse_points(&rows, n).map_err(|e| e.in_file(&file))
}

fn load_map(path: &Path) -> Result<polychi_core::AffineMap, CliError> {
    let file = path.display().to_string();
    decode::<AffineMapJson>(read_value(path)?, &file)?
        .to_map()
        .map_err(|e| e.in_file(&file))
}

fn two(paths: &[std::path::PathBuf]) -> Result<(&Path, &Path), CliError> {
    match paths {
        [a, b] => Ok((a, b)),
        _ => Err(CliError::validation("--fn", format!("expected exactly two files, got {}", paths.len()))),
    }
}

fn lib(e: polychi_core::Error) -> CliError {
    CliError::library("", e)
}

fn rat(s: &Scalar) -> String {
    s.to_string()
}

fn csv_line(cells: impl IntoIterator<Item = String>) -> String {
    let mut line = cells.into_iter().collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

fn mc_json(r: &McReport) -> Value {
    json!({
        "estimate": r.estimate,
        "stderr": r.stderr,
        "reference": r.reference,
        "relative_error": r.relative_error(),
        "pass": r.pass,
    })
}

fn sample_grid(count: usize, lo: f64, hi: f64, closed: bool) -> Vec<f64> {
    let steps = if closed { count.saturating_sub(1).max(1) } else { count };
    (0..count)
        .map(|i| if closed && count == 1 { (lo + hi) / 2.0 } else { lo + (hi - lo) * i as f64 / steps as f64 })
        .collect()
}

fn points_table(values: &[(Vec<Scalar>, Vec<String>)]) -> String {
    values
        .iter()
        .map(|(coords, rest)| csv_line(coords.iter().map(rat).chain(rest.iter().cloned())))
        .collect()
}

/// Runs one command. Input problems are errors; a failed verification is
/// reported through [`Output::failure`] so the result can still be written.
pub fn run(command: &Command, common: &Common) -> Result<Output, CliError> {
    let seed = common.seed;
    let mc_samples = common.samples.unwrap_or(DEFAULT_MC_SAMPLES);
    match command {
        Command::EulerIntegral { function } => {
            let file = function.display().to_string();
            let value = read_value(function)?;
            let integral = if has_key(&value, "n") || has_key(&value, "cone_generators") {
                load_proj_fn(function)?.euler_integral()
            } else {
                load_affine_fn(function)?.euler_integral().map_err(|e| lib(e).in_file(&file))?
            };
            Ok(Output::json(json!({ "euler_integral": rat(&integral) }))
                .with_csv(csv_line([rat(&integral)])))
        }
        Command::Multiply { functions } => {
            let (a, b) = two(functions)?;
            let product = load_affine_fn(a)?.multiply(&load_affine_fn(b)?).map_err(lib)?;
            Ok(Output::json(json!(ConstructibleJson::from_fn(&product.simplify()))))
        }
        Command::Pushforward { function, map } => {
            let image = load_affine_fn(function)?.pushforward(&load_map(map)?).map_err(lib)?;
            Ok(Output::json(json!(ConstructibleJson::from_fn(&image.simplify()))))
        }
        Command::Pullback { function, map } => {
            let image = load_affine_fn(function)?.pullback(&load_map(map)?).map_err(lib)?;
            Ok(Output::json(json!(ConstructibleJson::from_fn(&image.simplify()))))
        }
        Command::Radon { function, hyperplanes } => {
            let phi = load_proj_fn(function)?;
            let image = radon::radon(&phi).map_err(lib)?;
            match hyperplanes {
                None => Ok(Output::json(json!(ProjFnJson::from_image(&image)))),
                Some(path) => {
                    let hs = load_points(path, phi.n())?;
                    let mut rows = Vec::new();
                    for h in &hs {
                        let v = radon::eval_radon(&image, h).map_err(lib)?;
                        rows.push((h.coords().clone(), vec![rat(&v)]));
                    }
                    let values: Vec<Value> = rows
                        .iter()
                        .map(|(h, v)| json!({ "hyperplane": from_vector(h), "value": v[0] }))
                        .collect();
                    Ok(Output::json(json!({ "n": phi.n(), "values": values })).with_csv(points_table(&rows)))
                }
            }
        }
        Command::DualRadon {
            function,
            points,
            oracle,
        } => {
            let file = function.display().to_string();
            let psi = load_proj_json(function)?.to_image().map_err(|e| e.in_file(&file))?;
            let xs = load_points(points, psi.n())?;
            let mut rows = Vec::new();
            let mut values = Vec::new();
            let mut agree = true;
            for x in &xs {
                let v = radon::dual_radon_eval(&psi, x).map_err(lib)?;
                let mut entry = json!({ "point": from_vector(x.coords()), "value": rat(&v) });
                let mut cells = vec![rat(&v)];
                if *oracle {
                    let o = radon::dual_radon_oracle(&psi, x).map_err(lib)?;
                    agree &= o == v;
                    entry["oracle"] = json!(rat(&o));
                    cells.push(rat(&o));
                }
                values.push(entry);
                rows.push((x.coords().clone(), cells));
            }
            let mut out = json!({ "n": psi.n(), "values": values });
            if *oracle {
                out["oracle_agrees"] = json!(agree);
            }
            Ok(Output::json(out)
                .with_csv(points_table(&rows))
                .failing_unless(agree, "dual transform disagrees with the pencil oracle"))
        }
        Command::InvertCheck { n, function, points } => {
            let phi = load_proj_fn(function)?;
            if phi.n() != *n {
                return Err(CliError::validation("--n", format!("function lives on RP^{}, not RP^{n}", phi.n())));
            }
            let xs = load_points(points, *n)?;
            let report = radon::verify_inversion(&phi, &xs).map_err(lib)?;
            let rows: Vec<_> = report
                .entries
                .iter()
                .map(|e| (e.point.coords().clone(), vec![rat(&e.lhs), rat(&e.rhs), rat(&e.residual)]))
                .collect();
            Ok(Output::json(json!(InversionJson::from_report(&report)))
                .with_csv(points_table(&rows))
                .failing_unless(report.passed(), "inversion formula has a nonzero residual"))
        }
        Command::KernelProbe { n } => {
            let count = common.samples.unwrap_or(DEFAULT_PROBES);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let report = radon::kernel_probe(*n, count as usize, &mut rng).map_err(|e| CliError::library("--n", e))?;
            let rows: Vec<_> = report
                .values
                .iter()
                .map(|(h, v)| (h.coords().clone(), vec![rat(v)]))
                .collect();
            Ok(Output::json(json!(KernelProbeJson::from_report(&report, seed)))
                .with_csv(points_table(&rows))
                .failing_unless(report.passed(), "transform of the constant is not constant"))
        }
        Command::Sinogram {
            function,
            angles,
            offsets,
            max_offset,
        } => {
            if *angles == 0 || *offsets == 0 {
                return Err(CliError::validation("--angles", "angle and offset counts must be positive"));
            }
            let phi = load_affine_fn(function)?;
            let reach = match max_offset {
                Some(r) if r.is_finite() && *r >= 0.0 => *r,
                Some(r) => return Err(CliError::validation("--max-offset", format!("invalid offset {r}"))),
                None => phi
                    .terms()
                    .iter()
                    .flat_map(|t| t.support.vertices())
                    .map(|v| scalar::to_f64_vec(v).iter().map(|x| x * x).sum::<f64>().sqrt())
                    .fold(0.0, f64::max),
            };
            let thetas = sample_grid(*angles, 0.0, std::f64::consts::PI, false);
            let ps = sample_grid(*offsets, -reach, reach, true);
            let values = radon::classical_sinogram(&phi, &thetas, &ps).map_err(lib)?;
            let mut csv = csv_line(ps.iter().map(|p| p.to_string()));
            for row in &values {
                csv.push_str(&csv_line(row.iter().map(|x| x.to_string())));
            }
            Ok(Output::json(json!({ "angles": thetas, "offsets": ps, "values": values })).with_csv(csv))
        }
        Command::IntrinsicVolumes { function } => {
            let phi = load_affine_fn(function)?;
            let mut total = vec![0.0; phi.ambient_dim() + 1];
            for t in phi.terms() {
                if t.support.is_empty() {
                    continue;
                }
                let v = integral::intrinsic_volumes(&t.support).map_err(lib)?;
                for (acc, x) in total.iter_mut().zip(&v.values) {
                    *acc += scalar::to_f64(&t.weight) * x;
                }
            }
            let csv = total
                .iter()
                .enumerate()
                .map(|(j, v)| csv_line([j.to_string(), v.to_string()]))
                .collect();
            Ok(Output::json(json!({ "ambient_dim": phi.ambient_dim(), "values": total })).with_csv(csv))
        }
        Command::SteinerCheck { function, epsilons } => {
            let p = load_polytope(function)?;
            let volumes = integral::intrinsic_volumes(&p).map_err(lib)?;
            let entries = integral::steiner_check(&p, epsilons, mc_samples, seed).map_err(lib)?;
            let passed = entries.iter().all(|e| e.report.pass);
            let json_entries: Vec<Value> = entries
                .iter()
                .map(|e| {
                    let mut v = mc_json(&e.report);
                    v["epsilon"] = json!(e.epsilon);
                    v
                })
                .collect();
            let mut csv = String::new();
            for e in &entries {
                let r = &e.report;
                let _ = writeln!(csv, "{},{},{},{},{}", e.epsilon, r.estimate, r.stderr, r.reference, r.pass);
            }
            Ok(Output::json(json!({
                "seed": seed,
                "samples": mc_samples,
                "intrinsic_volumes": volumes.values,
                "entries": json_entries,
                "passed": passed,
            }))
            .with_csv(csv)
            .failing_unless(passed, "Monte Carlo tube volume is off the Steiner polynomial"))
        }
        Command::CroftonCheck { function } => {
            let p = load_polytope(function)?;
            let r = integral::cauchy_crofton_check(&p, mc_samples, seed).map_err(lib)?;
            let mut out = mc_json(&r.report);
            out["seed"] = json!(seed);
            out["samples"] = json!(mc_samples);
            out["center"] = json!(r.center);
            out["radius"] = json!(r.radius);
            Ok(Output::json(out).failing_unless(r.report.pass, "line measure is off the perimeter"))
        }
        Command::KinematicCheck { functions } => {
            let (a, b) = two(functions)?;
            let (k, l) = (load_polytope(a)?, load_polytope(b)?);
            let r = integral::kinematic_check_r2(&k, &l, mc_samples, seed).map_err(lib)?;
            let d = &r.disk_oracle;
            let mut out = mc_json(&r.report);
            out["seed"] = json!(seed);
            out["samples"] = json!(mc_samples);
            out["window"] = json!({ "center": r.window.center, "half_side": r.window.half_side });
            out["disk_oracle"] = json!({
                "r": d.r,
                "s": d.s,
                "direct": d.direct,
                "closed_form": d.closed_form,
                "agrees": d.agrees,
            });
            Ok(Output::json(out).failing_unless(r.report.pass, "kinematic integral is off the closed form"))
        }
        Command::Normalize {
            function,
            max_hyperplanes,
        } => {
            let phi = load_affine_fn(function)?;
            let mut options = NormalizeOptions::default();
            if let Some(m) = max_hyperplanes {
                options.max_hyperplanes = *m;
            }
            let cells = phi.normalize_with(&options).map_err(lib)?;
            Ok(Output::json(json!(CellDecompositionJson::from_cells(&cells))))
        }
    }
}

/// Runs the parsed command line and writes its output. Returns the process
/// exit code; errors are printed to stderr as JSON.
pub fn execute(cli: &Cli) -> i32 {
    match run_and_write(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}

fn run_and_write(cli: &Cli) -> Result<(), CliError> {
    let output = run(&cli.command, &cli.common)?;
    let text = output.render(cli.common.format)?;
    match &cli.common.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::validation("--out", e.to_string()).in_file(&path.display().to_string()))?,
        None => print!("{text}"),
    }
    match output.failure {
        Some(message) => Err(CliError::verification(message)),
        None => Ok(()),
    }
}
