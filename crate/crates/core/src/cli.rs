//! The `puptent` command line.

use std::ffi::OsString;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::flatten::{convergence_probe, domain_grid, summarize, sweep, to_json_lines, TSchedule};
use crate::golden::{golden_torus, ModularParameter};
use crate::mesh::Mesh;
use crate::report::{build_report, to_json_pretty, to_json_string, Mode, TorusReport};
use crate::shape::{convex_hull, good_polygon, modular_distance, modulus_of};
use crate::verify::run_checks;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "puptent", version, about = "Eight-vertex paper tori: golden tents, deformations, flat embeddings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Point {
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub y: f64,
}

impl Point {
    fn classify(self) -> Result<ModularParameter> {
        let z = ModularParameter::classify(self.x, self.y)?;
        if !z.is_in_closed_domain() {
            return Err(Error::OutsideDomain { x: self.x, y: self.y });
        }
        Ok(z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Obj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportWhat {
    Torus,
    Hull,
    Polygon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Golden,
    Deformed,
    Solved,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Golden => Mode::Golden,
            ModeArg::Deformed => Mode::Deformed,
            ModeArg::Solved => Mode::Solved,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The golden tent P(z); boundary parameters allowed.
    Golden {
        #[command(flatten)]
        z: Point,
        #[arg(long)]
        json: bool,
    },
    /// The special deformation P(z, t).
    Deform {
        #[command(flatten)]
        z: Point,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        json: bool,
    },
    /// Newton correction to the flat torus P'(z, t).
    Solve {
        #[command(flatten)]
        z: Point,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        json: bool,
    },
    /// Solves on a grid and writes one JSON result per line.
    Sweep {
        #[arg(long, default_value_t = 5)]
        nx: usize,
        #[arg(long, default_value_t = 5)]
        ny: usize,
        #[arg(long, default_value_t = 0.05)]
        x_min: f64,
        #[arg(long, default_value_t = 0.45)]
        x_max: f64,
        /// Height of the lowest row above the arc.
        #[arg(long, default_value_t = 0.05)]
        margin: f64,
        #[arg(long, default_value_t = 2.0)]
        y_max: f64,
        /// Constant t; without it t(z) = min(cap, d(z, boundary)^2).
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, default_value_t = 1e-2)]
        cap: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convergence table over a list of t.
    Probe {
        #[command(flatten)]
        z: Point,
        #[arg(long, value_delimiter = ',', default_values_t = [0.125, 0.0625, 0.03125, 0.015625])]
        t: Vec<f64>,
    },
    /// Modulus of the golden tent (t = 0) or of P'(z, t).
    Modulus {
        #[command(flatten)]
        z: Point,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
    },
    /// Runs the invariant suite; nonzero exit on any failure.
    Verify {
        #[arg(long)]
        json: bool,
    },
    /// Writes a mesh as JSON or OBJ.
    Export {
        #[command(flatten)]
        z: Point,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_enum, default_value_t = ExportWhat::Torus)]
        what: ExportWhat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Starts the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
}

fn summary(r: &TorusReport) -> String {
    let mut s = format!(
        "z = {} + {}i ({})  t = {}  mode = {:?}\n",
        r.z.x, r.z.y, r.z.region, r.t, r.mode
    );
    for (j, v) in r.vertices.iter().enumerate() {
        s += &format!("P{j} = ({:.17}, {:.17}, {:.17})\n", v[0], v[1], v[2]);
    }
    match r.theta {
        Some(th) => s += &format!("theta = {th:e}\n"),
        None => s += "theta = undefined (collapsed edge)\n",
    }
    s += &format!(
        "embedded = {:?}  matches reference = {}  hull triangles = {}\n",
        r.embedding.embedded,
        r.matches_reference,
        r.hull_triangles.len()
    );
    if let Some(m) = &r.modulus {
        s += &format!("modulus = {} + {}i\n", m.tau.re, m.tau.im);
    }
    for f in &r.flags {
        s += &format!("flag: {f}\n");
    }
    s
}

fn emit_report(r: &TorusReport, json: bool, out: &mut dyn Write) -> Result<()> {
    let text = if json { to_json_pretty(r)? + "\n" } else { summary(r) };
    write_all(out, &text)
}

fn write_all(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Invalid(format!("write failed: {e}")))
}

fn write_target(path: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Invalid(format!("{}: {e}", p.display()))),
        None => write_all(out, text),
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Golden { z, json } => emit_report(&build_report(&z.classify()?, 0.0, Mode::Golden)?, json, out)?,
        Command::Deform { z, t, json } => emit_report(&build_report(&z.classify()?, t, Mode::Deformed)?, json, out)?,
        Command::Solve { z, t, json } => emit_report(&build_report(&z.classify()?, t, Mode::Solved)?, json, out)?,
        Command::Sweep {
            nx,
            ny,
            x_min,
            x_max,
            margin,
            y_max,
            t,
            cap,
            out: path,
        } => {
            let grid = domain_grid(nx, ny, (x_min, x_max), margin, y_max)?;
            let schedule = match t {
                Some(t) => TSchedule::Constant { t },
                None => TSchedule::BoundaryDecay { cap },
            };
            let entries = sweep(&grid, &schedule);
            write_target(&path, &to_json_lines(&entries)?, out)?;
            let s = summarize(&entries);
            let _ = writeln!(err, "{}", to_json_string(&s)?);
            if s.solved < s.points {
                return Ok(EXIT_FAILURE);
            }
        }
        Command::Probe { z, t } => {
            let table = convergence_probe(&z.classify()?, &t)?;
            write_all(out, &(to_json_pretty(&table)? + "\n"))?;
        }
        Command::Modulus { z, t } => {
            let zz = z.classify()?;
            let p = if t == 0.0 {
                golden_torus(&zz)?
            } else {
                crate::flatten::solve_flat(&zz, t)?.torus
            };
            let m = modulus_of(&p, 1e-12)?;
            let text = format!(
                "{}\n",
                to_json_pretty(&serde_json::json!({
                    "estimate": m,
                    "distance_to_z": modular_distance(m.tau, zz.z()),
                    "group": "unimodular maps with entries in [-3, 3] and the mirror tau -> -conj(tau)",
                }))?
            );
            write_all(out, &text)?;
        }
        Command::Verify { json } => {
            let checks = run_checks();
            let failed = checks.iter().filter(|c| !c.passed).count();
            if json {
                write_all(out, &(to_json_pretty(&checks)? + "\n"))?;
            } else {
                for c in &checks {
                    write_all(out, &format!("{} {} ({})\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))?;
                }
            }
            if failed > 0 {
                let _ = writeln!(err, "{failed} check(s) failed");
                return Ok(EXIT_FAILURE);
            }
        }
        Command::Export {
            z,
            t,
            mode,
            format,
            what,
            out: path,
        } => {
            let zz = z.classify()?;
            let mode = mode.map(Mode::from).unwrap_or(if t == 0.0 { Mode::Golden } else { Mode::Deformed });
            let text = match what {
                ExportWhat::Torus => {
                    let r = build_report(&zz, t, mode)?;
                    match format {
                        Format::Json => to_json_pretty(&r)? + "\n",
                        Format::Obj => Mesh::of_torus(&r.torus()).to_obj(),
                    }
                }
                ExportWhat::Hull => {
                    let p = build_report(&zz, t, mode)?.torus();
                    let mesh = Mesh::of_hull(&p, &convex_hull(&p));
                    match format {
                        Format::Json => to_json_pretty(&mesh)? + "\n",
                        Format::Obj => mesh.to_obj(),
                    }
                }
                ExportWhat::Polygon => {
                    let q = good_polygon(&zz)?;
                    match format {
                        Format::Json => to_json_pretty(&q)? + "\n",
                        Format::Obj => Mesh::of_polygon(&q).to_obj(),
                    }
                }
            };
            write_target(&path, &text, out)?;
        }
        Command::Serve { port, host, static_dir } => {
            let addr = SocketAddr::new(host, port);
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Error::Invalid(e.to_string()))?;
            let _ = writeln!(err, "listening on http://{addr}");
            runtime
                .block_on(crate::service::serve(addr, static_dir))
                .map_err(|e| Error::Invalid(format!("server: {e}")))?;
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}
