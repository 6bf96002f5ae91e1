//! Batch driver behind the `elastic-bem` binary: each subcommand reads a
//! [`RunConfig`], runs the pipeline and writes CSV files.
//!
//! CSV layout: one `#` comment line stating units and conventions, one
//! header row, then data. Numbers use the shortest round-trip decimal
//! form, so identical runs give byte-identical files.

mod config;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub use config::{
    apply_override, AutoNodes, CurveChoice, FieldKind, GeometryBlock, GridSpec, MediumBlock, NodeCount, OutputBlock,
    RunConfig, StudyBlock,
};

use crate::assembly::KernelContext;
use crate::error::{Error, Result};
use crate::geometry::sample_curve;
use crate::linalg::{CVec2, Vec2};
use crate::selftest::{run_selftest, SelftestOptions, SeriesCheck, SuiteReport};
use crate::solver::{boundary_errors, convergence_study, represent_field, solve_with_context, ConvergenceRow};

/// Process exit code for success.
pub const EXIT_OK: i32 = 0;
/// Process exit code for numerical failures (singular system, residual
/// above tolerance, failed self-test).
pub const EXIT_NUMERICAL: i32 = 1;
/// Process exit code for configuration and input errors.
pub const EXIT_CONFIG: i32 = 2;

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SingularMatrix { .. } | Error::Domain(_) | Error::CoincidentPoints { .. } | Error::Dimension(_) => {
            EXIT_NUMERICAL
        }
        Error::InvalidMedium(_)
        | Error::Geometry(_)
        | Error::QuadratureOrder(_)
        | Error::InadmissiblePoint { .. }
        | Error::Config(_)
        | Error::Parse { .. }
        | Error::Io(_) => EXIT_CONFIG,
    }
}

const CONVENTIONS: &str = "lengths in geometry units; fields are complex amplitudes of exp(-i omega t); \
                           u1,u2 are Cartesian displacement components";

fn write_file(dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, body)?;
    Ok(path)
}

fn push_complex_pair(line: &mut String, u: CVec2) {
    let [a, b] = u.0;
    let _ = write!(line, ",{:e},{:e},{:e},{:e}", a.re, a.im, b.re, b.im);
}

/// Result of `solve`.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub n: usize,
    pub omega: f64,
    pub residual: f64,
    pub condition: Option<f64>,
    /// `L²(Γ)` error when the incident field has a closed-form scattered
    /// solution.
    pub l2_error: Option<f64>,
    pub wall_time: f64,
    pub solution_csv: PathBuf,
    pub summary_csv: PathBuf,
}

impl std::fmt::Display for SolveReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "N={} omega={} residual={:.3e}", self.n, self.omega, self.residual)?;
        if let Some(c) = self.condition {
            write!(f, " condition={c:.3e}")?;
        }
        if let Some(e) = self.l2_error {
            write!(f, " l2_error={e:.4e}")?;
        }
        write!(
            f,
            " wall_time={:.2}s -> {}",
            self.wall_time,
            self.solution_csv.display()
        )
    }
}

/// Solves one boundary problem and writes `solution.csv` (per node) and
/// `summary.csv` (one row, including wall time).
pub fn cmd_solve(config: &RunConfig, out: &Path) -> Result<SolveReport> {
    let start = Instant::now();
    let medium = config.medium()?;
    let n = config.nodes()?;
    let mesh = sample_curve(&config.curve()?, n)?;
    config.incident.validate(&mesh)?;
    let ctx = KernelContext::new(medium, config.solver.quadrature())?;
    let sol = solve_with_context(&ctx, &mesh, &config.solver, &config.incident)?;
    let l2_error = match config.incident.exact_scattered(&medium, mesh.node(0)) {
        Some(_) => Some(
            boundary_errors(
                &mesh,
                &sol,
                |p| config.incident.exact_scattered(&medium, p).expect("closed form exists"),
                config.solver.field_order,
            )?
            .l2,
        ),
        None => None,
    };
    let wall_time = start.elapsed().as_secs_f64();

    let mut body = format!("# boundary displacement u_h at the nodes; {CONVENTIONS}\n");
    body.push_str("loop,index,x,y,re_u1,im_u1,re_u2,im_u2\n");
    for (l, range) in mesh.loops().iter().enumerate() {
        for i in range.clone() {
            let p = mesh.node(i);
            let mut line = format!("{l},{i},{:e},{:e}", p.x, p.y);
            push_complex_pair(&mut line, sol.displacement[i]);
            body.push_str(&line);
            body.push('\n');
        }
    }
    let _ = writeln!(
        body,
        "# summary: N={n}, omega={:e}, residual={:e}",
        medium.omega, sol.residual
    );
    let solution_csv = write_file(out, "solution.csv", &body)?;

    let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
    let summary = format!(
        "# run summary; residual is ||Ax-b||/||b||, l2_error is the L2 boundary error against the closed form, wall time in seconds\n\
         N,omega,residual,condition,l2_error,wall_time_s\n{n},{:e},{:e},{},{},{:.3}\n",
        medium.omega,
        sol.residual,
        opt(sol.condition),
        opt(l2_error),
        wall_time
    );
    let summary_csv = write_file(out, "summary.csv", &summary)?;
    Ok(SolveReport {
        n,
        omega: medium.omega,
        residual: sol.residual,
        condition: sol.condition,
        l2_error,
        wall_time,
        solution_csv,
        summary_csv,
    })
}

/// Convergence table as CSV text (order blank where undefined).
pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut body = format!(
        "# L2 and max-nodal boundary errors against the closed-form solution; order = log(e_prev/e)/log(N/N_prev); {CONVENTIONS}\n"
    );
    body.push_str("N,omega,l2_error,linf_error,residual,order\n");
    for r in rows {
        let order = r.order.map(|o| format!("{o:.4}")).unwrap_or_default();
        let _ = writeln!(
            body,
            "{},{:e},{:e},{:e},{:e},{order}",
            r.n, r.omega, r.l2, r.linf, r.residual
        );
    }
    body
}

/// Runs the manufactured-solution study over `study.N × study.omegas` and
/// writes `convergence.csv`.
pub fn cmd_convergence(config: &RunConfig, out: &Path) -> Result<(Vec<ConvergenceRow>, PathBuf)> {
    let rows = convergence_study(
        &config.curve()?,
        &config.study_media()?,
        &config.study_nodes()?,
        &config.incident,
        &config.solver,
    )?;
    let path = write_file(out, "convergence.csv", &convergence_csv(&rows))?;
    Ok((rows, path))
}

/// Result of `fieldmap`.
#[derive(Debug, Clone)]
pub struct FieldmapReport {
    pub evaluated: usize,
    pub masked: usize,
    pub residual: f64,
    pub path: PathBuf,
}

/// Evaluates the scattered (or total) field on the configured grid and
/// writes `field.csv`. Points inside an obstacle or closer than one
/// segment length to the boundary are masked (`mask = 1`, values `NaN`).
pub fn cmd_fieldmap(config: &RunConfig, out: &Path) -> Result<FieldmapReport> {
    let grid = config
        .output
        .grid
        .ok_or_else(|| Error::Config("fieldmap needs output.grid".into()))?;
    let medium = config.medium()?;
    let mesh = sample_curve(&config.curve()?, config.nodes()?)?;
    config.incident.validate(&mesh)?;
    let ctx = KernelContext::new(medium, config.solver.quadrature())?;
    let sol = solve_with_context(&ctx, &mesh, &config.solver, &config.incident)?;

    let points: Vec<Vec2> = grid.points().into_iter().map(|[x, y]| Vec2::new(x, y)).collect();
    let collar = mesh.max_segment_length();
    let admitted: Vec<bool> = points
        .iter()
        .map(|&p| mesh.is_exterior(p) && mesh.distance_to_boundary(p) >= collar)
        .collect();
    let exterior: Vec<Vec2> = points
        .iter()
        .zip(&admitted)
        .filter(|(_, &a)| a)
        .map(|(&p, _)| p)
        .collect();
    let mut values = represent_field(&ctx, &mesh, &sol, &exterior, config.solver.field_order)?.into_iter();

    let kind = match config.output.field {
        FieldKind::Scattered => "scattered",
        FieldKind::Total => "total",
    };
    let mut body = format!("# {kind} field on a {}x{} grid; mask=1 marks points inside an obstacle or within one segment length of the boundary; {CONVENTIONS}\n", grid.nx, grid.ny);
    body.push_str("x,y,mask,re_u1,im_u1,re_u2,im_u2\n");
    for (&p, &ok) in points.iter().zip(&admitted) {
        let mut line = format!("{:e},{:e}", p.x, p.y);
        if ok {
            let mut u = values.next().expect("one value per admitted point");
            if config.output.field == FieldKind::Total {
                u += config.incident.displacement(&medium, p)?;
            }
            line.push_str(",0");
            push_complex_pair(&mut line, u);
        } else {
            line.push_str(",1,NaN,NaN,NaN,NaN");
        }
        body.push_str(&line);
        body.push('\n');
    }
    let path = write_file(out, "field.csv", &body)?;
    Ok(FieldmapReport {
        evaluated: exterior.len(),
        masked: points.len() - exterior.len(),
        residual: sol.residual,
        path,
    })
}

/// Runs the invariant suites. With a configuration, the special-function
/// suite also checks the series of that medium at the configured order.
pub fn cmd_selftest(config: Option<&RunConfig>, mut options: SelftestOptions) -> Result<Vec<SuiteReport>> {
    if let Some(c) = config {
        options.series = Some(SeriesCheck {
            medium: c.medium()?,
            m_max: c.solver.m_max,
        });
    }
    Ok(run_selftest(&options))
}

/// Parses a fault-injection target such as `I4:7`.
pub fn parse_moment_target(s: &str) -> Result<(crate::quadrature::MomentKind, usize)> {
    let bad = || Error::Config(format!("moment target {s:?} must look like I4:7"));
    let (kind, m) = s.split_once(':').ok_or_else(bad)?;
    let number: usize = kind.trim().trim_start_matches(['I', 'i']).parse().map_err(|_| bad())?;
    let m: usize = m.trim().parse().map_err(|_| bad())?;
    let kind = crate::quadrature::MomentKind::from_number(number).map_err(|_| bad())?;
    Ok((kind, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::MomentKind;

    fn kite(overrides: &[&str]) -> RunConfig {
        let text = r#"{ "medium": { "omega": 1.0 }, "geometry": { "curve": "kite", "N": 64 } }"#;
        let o: Vec<String> = overrides.iter().map(|s| s.to_string()).collect();
        RunConfig::from_json(text, &o).unwrap()
    }

    #[test]
    fn solve_writes_one_row_per_node() {
        let dir = tempfile::tempdir().unwrap();
        let report = cmd_solve(&kite(&[]), dir.path()).unwrap();
        assert!(report.residual <= 1e-10);
        assert!(report.l2_error.unwrap() < 5e-2);
        let text = fs::read_to_string(&report.solution_csv).unwrap();
        let rows = text.lines().filter(|l| !l.starts_with('#')).count();
        assert_eq!(rows, 65);
        assert!(text.lines().nth(1).unwrap().starts_with("loop,index,x,y"));
    }

    #[test]
    fn solution_csv_is_reproducible() {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let config = kite(&["geometry.N=32"]);
        let ra = cmd_solve(&config, a.path()).unwrap();
        let rb = cmd_solve(&config, b.path()).unwrap();
        assert_eq!(fs::read(ra.solution_csv).unwrap(), fs::read(rb.solution_csv).unwrap());
    }

    #[test]
    fn single_node_count_leaves_order_blank() {
        let dir = tempfile::tempdir().unwrap();
        let (rows, path) = cmd_convergence(&kite(&["study.N=[32]"]), dir.path()).unwrap();
        assert_eq!(rows.len(), 1);
        let text = fs::read_to_string(path).unwrap();
        assert!(text.lines().last().unwrap().ends_with(','));
    }

    #[test]
    fn zero_amplitude_gives_zero_field() {
        let dir = tempfile::tempdir().unwrap();
        let config = kite(&[
            "geometry.N=24",
            r#"incident={"type":"plane_p","direction":[1,0],"amplitude":0}"#,
            r#"output.grid={"x":[-3,3],"y":[-3,3],"nx":7,"ny":7}"#,
        ]);
        let report = cmd_fieldmap(&config, dir.path()).unwrap();
        assert!(report.masked > 0 && report.evaluated > 0);
        let text = fs::read_to_string(report.path).unwrap();
        for line in text.lines().skip(2) {
            let cols: Vec<&str> = line.split(',').collect();
            if cols[2] == "0" {
                assert!(cols[3..].iter().all(|v| v.parse::<f64>().unwrap() == 0.0), "{line}");
            } else {
                assert_eq!(cols[3], "NaN");
            }
        }
    }

    #[test]
    fn fieldmap_requires_a_grid() {
        let dir = tempfile::tempdir().unwrap();
        let err = cmd_fieldmap(&kite(&[]), dir.path()).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_CONFIG);
    }

    #[test]
    fn moment_targets_parse() {
        assert_eq!(parse_moment_target("I4:7").unwrap(), (MomentKind::I4, 7));
        assert_eq!(parse_moment_target("3:0").unwrap(), (MomentKind::I3, 0));
        assert!(parse_moment_target("I9:1").is_err());
        assert!(parse_moment_target("I4").is_err());
    }

    #[test]
    fn error_classes_map_to_exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), EXIT_CONFIG);
        let singular = Error::SingularMatrix {
            column: 0,
            pivot: 0.0,
            threshold: 1.0,
        };
        assert_eq!(exit_code(&singular), EXIT_NUMERICAL);
    }
}
