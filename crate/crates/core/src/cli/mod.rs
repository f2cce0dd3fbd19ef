//! The `kmspan` command line.
//!
//! Every subcommand writes a JSON report to `--out` (stdout when absent) and,
//! where it makes sense, a CSV table to `--csv`. Exit codes: 0 on success,
//! 2 when a mathematical refutation is emitted, 1 on error (handled by the
//! binary). Output depends only on the arguments and `--seed`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::body::{hausdorff_distance, polytope_approx, BodySpec, ConvexBody, HausdorffTarget};
use crate::decompose::{
    ball_grid, decompose_four_extreme, decompose_three, interval_grid, shell_convex_decomposition, three_term_params,
    DecompositionCertificate, SampledMap,
};
use crate::degree::{degree, SphereMapSamples};
use crate::error::{Error, Result};
use crate::obstruct::{
    adversarial_candidates, builtin_heuristics, convex_decomposition_refuter, discontinuity_witness,
    face_containment_check, theta_bound, FaceOutcome, RefuterOutcome, WitnessOutcome,
};
use crate::section::{bisected_chords_2d, write_chords_csv};
use crate::vector::Vector;

#[derive(Debug, Parser)]
#[command(name = "kmspan", version, about = "Sphere-valued decompositions and their obstructions")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Body description (JSON: {"kind":"lp","p":4,"dim":2}, {"kind":"ellipse","axes":[2,1]},
    /// {"kind":"polytope","vertices":[[1,0],...]}).
    #[arg(long, global = true)]
    pub body: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// JSON report path; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// CSV table path.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Override of the body's numerical tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the gauge of --point.
    Gauge {
        #[arg(long, value_parser = parse_point)]
        point: Vector,
    },
    /// All chords of a planar body bisected by --point.
    /// CSV: p1_x,p1_y,p2_x,p2_y.
    Chord {
        #[arg(long, value_parser = parse_point)]
        point: Vector,
        #[arg(long, default_value_t = 2048)]
        resolution: usize,
    },
    /// Three-term span decomposition of the identity on a polar grid (or of --input, a sampled map).
    /// CSV: sample,component,coefficient,x0..,f0..
    Decompose3 {
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Four-term convex decomposition of a path (--input, or a default spiral on --grid samples)
    /// into sphere-valued maps. CSV as for decompose3.
    DecomposePath {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2000)]
        grid: usize,
        /// Inner radius of the target shell.
        #[arg(long, default_value_t = 0.5)]
        r: f64,
    },
    /// Decomposition into extreme-point-valued maps of the identity on a polar grid (or of --input).
    /// CSV as for decompose3.
    Decompose4 {
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Print the degree of a sampled sphere map (--input: {"domain","image"} or {"vertices","faces","image"}).
    Degree {
        #[arg(long)]
        input: PathBuf,
    },
    /// Brute-force lower bound on the angle between [0, p] and chords bisected by p.
    /// CSV: p_x,p_y,angle (smallest angle per midpoint).
    Theta {
        #[arg(long, default_value_t = 0.1)]
        uradius: f64,
        /// Number of sampled midpoints.
        #[arg(long, default_value_t = 2000)]
        m: usize,
        /// Boundary samples per chord search.
        #[arg(long, default_value_t = 4000)]
        resolution: usize,
    },
    /// Run the discontinuity search against the built-in heuristic sections.
    /// CSV: heuristic,outcome,jump,round.
    Witness {
        #[arg(long, default_value_t = 0.1)]
        uradius: f64,
        #[arg(long, default_value_t = 256)]
        grid: usize,
    },
    /// Degree refuter for a claimed convex decomposition of the identity (--input:
    /// {"components":[sampled maps],"lambdas":[...]}; default: a built-in adversarial candidate).
    /// Exits with 2 when a contradiction certificate is emitted.
    Refute {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Inscribed polytope with --m boundary vertices and its Hausdorff distance to the body.
    /// CSV: one vertex per row (x,y[,z]).
    Approx {
        #[arg(long, default_value_t = 64)]
        m: usize,
        #[arg(long, default_value_t = 4096)]
        resolution: usize,
    },
    /// Check that the terms of a convex combination equal to the boundary point --point lie on a
    /// supporting hyperplane (--input: {"components":[[..],..],"lambdas":[..]}). Exits with 2 when
    /// the check fails.
    FaceCheck {
        #[arg(long, value_parser = parse_point)]
        point: Vector,
        #[arg(long)]
        input: PathBuf,
    },
    /// Replay the reconstruction and sphere checks of a decomposition certificate.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
}

fn parse_point(s: &str) -> std::result::Result<Vector, String> {
    let xs = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad coordinate {t:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Vector::from_slice(&xs).map_err(|e| e.to_string())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, field: &str) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("--{field} {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("--{field} {}: {e}", path.display())))
}

impl RunConfig {
    fn load_body(&self) -> Result<ConvexBody> {
        let path = self.body.as_ref().ok_or_else(|| Error::Config("--body is required".into()))?;
        let spec: BodySpec = read_json(path, "body")?;
        let body = ConvexBody::from_spec(&spec).map_err(|e| Error::Config(format!("--body: {e}")))?;
        match self.tol {
            Some(t) => body.with_tolerance(t).map_err(|e| Error::Config(format!("--tol: {e}"))),
            None => Ok(body),
        }
    }

    fn emit<T: Serialize>(&self, value: &T) -> Result<()> {
        let text = serde_json::to_string_pretty(value)? + "\n";
        match &self.out {
            Some(p) => fs::write(p, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn csv_file(&self) -> Result<Option<fs::File>> {
        Ok(match &self.csv {
            Some(p) => Some(fs::File::create(p)?),
            None => None,
        })
    }

    fn emit_certificate(&self, cert: &DecompositionCertificate) -> Result<i32> {
        self.emit(cert)?;
        if let Some(f) = self.csv_file()? {
            cert.write_csv(f)?;
        }
        Ok(0)
    }

    fn target(&self, body: &ConvexBody, grid: usize, input: &Option<PathBuf>) -> Result<SampledMap> {
        match input {
            Some(p) => read_json(p, "input"),
            None => SampledMap::identity(ball_grid(body, grid)?),
        }
    }
}

#[derive(Deserialize)]
struct RefuteInput {
    components: Vec<SampledMap>,
    lambdas: Vec<f64>,
}

#[derive(Deserialize)]
struct FaceInput {
    components: Vec<Vector>,
    lambdas: Vec<f64>,
}

/// Spiral `t ↦ 0.9·t·(cos 4πt, sin 4πt)` on `n + 1` samples of `[0, 1]`.
fn default_path(n: usize) -> Result<SampledMap> {
    SampledMap::from_fn(interval_grid(n), |t| {
        let t = t.x();
        let a = 4.0 * std::f64::consts::PI * t;
        Vector::new2(a.cos(), a.sin()) * (0.9 * t)
    })
}

/// Runs one subcommand; returns the process exit code.
pub fn run(config: RunConfig) -> Result<i32> {
    let c = &config;
    match &c.command {
        Command::Gauge { point } => {
            let g = c.load_body()?.gauge(point)?;
            println!("{g}");
            if c.out.is_some() {
                c.emit(&json!({ "point": point, "gauge": g }))?;
            }
            Ok(0)
        }
        Command::Chord { point, resolution } => {
            let chords = bisected_chords_2d(&c.load_body()?, point, *resolution)?;
            c.emit(&json!({ "midpoint": point, "resolution": resolution, "chords": chords }))?;
            if let Some(f) = c.csv_file()? {
                write_chords_csv(f, &chords)?;
            }
            Ok(0)
        }
        Command::Decompose3 { grid, input } => {
            let body = c.load_body()?;
            let params = three_term_params(&body, c.seed)?;
            let target = c.target(&body, *grid, input)?;
            c.emit_certificate(&decompose_three(&body, &params, &target)?)
        }
        Command::DecomposePath { input, grid, r } => {
            let body = c.load_body()?;
            let f = match input {
                Some(p) => read_json(p, "input")?,
                None => default_path(*grid)?,
            };
            c.emit_certificate(&shell_convex_decomposition(&body, &f, *r, c.seed)?)
        }
        Command::Decompose4 { grid, input } => {
            let body = c.load_body()?;
            let target = c.target(&body, *grid, input)?;
            c.emit_certificate(&decompose_four_extreme(&body, &target)?)
        }
        Command::Degree { input } => {
            let f: SphereMapSamples = read_json(input, "input")?;
            let d = degree(&f, c.seed)?;
            println!("{d}");
            if c.out.is_some() {
                c.emit(&json!({ "degree": d }))?;
            }
            Ok(0)
        }
        Command::Theta { uradius, m, resolution } => {
            let t = theta_bound(&c.load_body()?, *uradius, *m, *resolution)?;
            c.emit(&t)?;
            if let Some(f) = c.csv_file()? {
                t.write_csv(f)?;
            }
            Ok(0)
        }
        Command::Witness { uradius, grid } => {
            let body = c.load_body()?;
            let mut results = Vec::new();
            for h in builtin_heuristics(&body) {
                let outcome = discontinuity_witness(&body, |p| h.chord(p), *uradius, *grid)?;
                results.push((h.name.clone(), outcome));
            }
            let report: Vec<_> = results.iter().map(|(n, o)| json!({ "heuristic": n, "result": o })).collect();
            c.emit(&json!({ "body": body.label(), "uradius": uradius, "grid": grid, "sections": report }))?;
            if let Some(f) = c.csv_file()? {
                let mut w = csv::Writer::from_writer(f);
                w.write_record(["heuristic", "outcome", "jump", "round"])?;
                for (name, o) in &results {
                    let row = match o {
                        WitnessOutcome::Witness(w) => ["witness".into(), w.jump.to_string(), w.round.to_string()],
                        WitnessOutcome::Consistent { max_jump, .. } => ["consistent".into(), max_jump.to_string(), String::new()],
                        WitnessOutcome::InvalidSection { .. } => ["invalid".into(), String::new(), String::new()],
                    };
                    w.write_record([name.as_str(), &row[0], &row[1], &row[2]])?;
                }
                w.flush()?;
            }
            Ok(0)
        }
        Command::Refute { input } => {
            let body = c.load_body()?;
            let (components, lambdas) = match input {
                Some(p) => {
                    let i: RefuteInput = read_json(p, "input")?;
                    (i.components, i.lambdas)
                }
                None => {
                    let cand = adversarial_candidates(&body, 1, c.seed)?.remove(0);
                    (cand.components, cand.lambdas)
                }
            };
            let outcome = convex_decomposition_refuter(&body, &components, &lambdas)?;
            c.emit(&outcome)?;
            Ok(match outcome {
                RefuterOutcome::Certificate(_) => 2,
                RefuterOutcome::Rejected(_) => 0,
            })
        }
        Command::Approx { m, resolution } => {
            let body = c.load_body()?;
            let poly = polytope_approx(&body, *m)?;
            let h = hausdorff_distance(&poly, HausdorffTarget::Body(&body), *resolution)?;
            c.emit(&json!({ "body": body.label(), "m": m, "vertices": poly.vertices(), "hausdorff": h }))?;
            if let Some(f) = c.csv_file()? {
                let mut w = csv::Writer::from_writer(f);
                let axes = ["x", "y", "z"];
                w.write_record(&axes[..body.dim()])?;
                for v in poly.vertices() {
                    w.write_record(v.as_slice().iter().map(|x| x.to_string()))?;
                }
                w.flush()?;
            }
            Ok(0)
        }
        Command::FaceCheck { point, input } => {
            let body = c.load_body()?;
            let i: FaceInput = read_json(input, "input")?;
            let report = face_containment_check(&body, point, &i.components, &i.lambdas)?;
            c.emit(&report)?;
            Ok(if report.outcome == FaceOutcome::Pass { 0 } else { 2 })
        }
        Command::Verify { input } => {
            let cert: DecompositionCertificate = read_json(input, "input")?;
            let body = match (&c.body, &cert.body) {
                (Some(_), _) => c.load_body()?,
                (None, Some(spec)) => ConvexBody::from_spec(spec)?,
                (None, None) => return Err(Error::Config("--body is required: the certificate names no body".into())),
            };
            let report = cert.verify(&body)?;
            c.emit(&report)?;
            if report.passed {
                Ok(0)
            } else {
                Err(Error::Config(format!("--input {}: certificate does not verify", input.display())))
            }
        }
    }
}
