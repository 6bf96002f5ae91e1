//! Burton–Miller system construction, dense solve, exterior representation
//! and error metrics.

mod incident;
mod lu;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assembly::{assemble_system, KernelContext, QuadratureOptions};
use crate::error::{Error, Result};
use crate::geometry::{sample_curve, BoundaryMesh, CurveSpec};
use crate::linalg::{BlockMatrix, CVec2, Vec2, C64};
use crate::medium::ElasticMedium;
use crate::quadrature::gauss_legendre;

pub use incident::{incident_traction, traction_data, IncidentField, TractionSampling};
pub use lu::{relative_residual, LuFactors, PIVOT_FLOOR};

/// Largest accepted relative residual of the dense solve.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Solver controls. Defaults: `η = 1`, series order 20.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Coupling parameter of the combined equation; must be nonzero.
    pub eta: f64,
    /// Truncation order of the same-segment series.
    #[serde(alias = "M")]
    pub m_max: usize,
    pub gauss_order: usize,
    pub near_order: usize,
    pub near_factor: f64,
    pub grading_depth: u32,
    pub sampling: TractionSampling,
    /// Gauss order per segment for the representation formula and the
    /// boundary error norms.
    pub field_order: usize,
    /// Whether to estimate the condition number after factorization.
    pub condition_estimate: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let q = QuadratureOptions::default();
        SolverConfig {
            eta: 1.0,
            m_max: q.m_max,
            gauss_order: q.gauss_order,
            near_order: q.near_order,
            near_factor: q.near_factor,
            grading_depth: q.grading_depth,
            sampling: TractionSampling::default(),
            field_order: 8,
            condition_estimate: true,
        }
    }
}

impl SolverConfig {
    pub fn quadrature(&self) -> QuadratureOptions {
        QuadratureOptions {
            m_max: self.m_max,
            gauss_order: self.gauss_order,
            near_order: self.near_order,
            near_factor: self.near_factor,
            grading_depth: self.grading_depth,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.eta == 0.0 || !self.eta.is_finite() {
            return Err(Error::Config(format!(
                "coupling parameter eta must be finite and nonzero, got {}",
                self.eta
            )));
        }
        if self.field_order == 0 || self.field_order > crate::quadrature::MAX_ORDER {
            return Err(Error::QuadratureOrder(self.field_order));
        }
        self.quadrature().validate()
    }
}

/// Solution of one boundary problem.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySolution {
    /// Nodal displacement coefficients (one per hat function).
    pub displacement: Vec<CVec2>,
    /// Segment-constant incident traction data `g = T u^i`.
    pub incident_traction: Vec<CVec2>,
    /// Relative residual of the dense solve.
    pub residual: f64,
    /// 1-norm condition estimate of the system matrix, when requested.
    pub condition: Option<f64>,
}

impl BoundarySolution {
    /// Scattered traction `T u = -g` per segment.
    pub fn traction(&self) -> Vec<CVec2> {
        self.incident_traction
            .iter()
            .map(|g| g.scale(C64::new(-1.0, 0.0)))
            .collect()
    }

    /// Linear interpolant of the displacement on segment `seg` at `ξ`.
    pub fn displacement_at(&self, mesh: &BoundaryMesh, seg: usize, xi: f64) -> CVec2 {
        let s = mesh.segment(seg);
        let (a, b) = (self.displacement[s.start], self.displacement[s.end]);
        a.scale(C64::new((1.0 - xi) / 2.0, 0.0)) + b.scale(C64::new((1.0 + xi) / 2.0, 0.0))
    }
}

fn unstack(v: &[C64]) -> Vec<CVec2> {
    v.chunks(2).map(|c| CVec2::new(c[0], c[1])).collect()
}

/// System matrix and right-hand side for the incident field `field`.
pub fn build_system(
    ctx: &KernelContext,
    mesh: &BoundaryMesh,
    config: &SolverConfig,
    field: &IncidentField,
) -> Result<(BlockMatrix, Vec<C64>, Vec<CVec2>)> {
    config.validate()?;
    field.validate(mesh)?;
    let g = traction_data(field, ctx.medium(), mesh, config.sampling)?;
    let (a, rhs) = assemble_system(ctx, mesh, config.eta, &g)?;
    Ok((a, rhs, unstack(&g)))
}

/// Factors `a`, solves, and checks the residual.
pub fn lu_solve(a: &BlockMatrix, rhs: &[C64], condition: bool) -> Result<(Vec<C64>, f64, Option<f64>)> {
    let lu = LuFactors::factor(a).map_err(|e| {
        if let Error::SingularMatrix { .. } = e {
            log::error!("system matrix is numerically singular");
        }
        e
    })?;
    let x = lu.solve(rhs)?;
    let residual = relative_residual(a, &x, rhs)?;
    let cond = if condition {
        Some(lu.condition_estimate()?)
    } else {
        None
    };
    if let Some(c) = cond {
        log::info!("condition estimate {c:.3e}");
    }
    if !(residual <= RESIDUAL_TOLERANCE) {
        return Err(Error::Domain(format!(
            "solve residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE:e}"
        )));
    }
    Ok((x, residual, cond))
}

/// Builds and solves the system for a prepared kernel context.
pub fn solve_with_context(
    ctx: &KernelContext,
    mesh: &BoundaryMesh,
    config: &SolverConfig,
    field: &IncidentField,
) -> Result<BoundarySolution> {
    let start = Instant::now();
    let (a, rhs, g) = build_system(ctx, mesh, config, field)?;
    log::debug!("assembled order {} in {:.2?}", a.dim(), start.elapsed());
    let (x, residual, condition) = lu_solve(&a, &rhs, config.condition_estimate)?;
    log::debug!("solved in {:.2?}, residual {residual:.2e}", start.elapsed());
    Ok(BoundarySolution {
        displacement: unstack(&x),
        incident_traction: g,
        residual,
        condition,
    })
}

/// Full pipeline: kernel context, assembly, solve.
pub fn solve(
    mesh: &BoundaryMesh,
    medium: ElasticMedium,
    config: &SolverConfig,
    field: &IncidentField,
) -> Result<BoundarySolution> {
    config.validate()?;
    let ctx = KernelContext::new(medium, config.quadrature())?;
    solve_with_context(&ctx, mesh, config, field)
}

/// Checks that `p` is exterior and at least one segment length from `Γ`.
pub fn check_exterior(mesh: &BoundaryMesh, p: Vec2) -> Result<()> {
    if !mesh.is_exterior(p) {
        return Err(Error::InadmissiblePoint {
            x: p.x,
            y: p.y,
            reason: "inside an obstacle".into(),
        });
    }
    let d = mesh.distance_to_boundary(p);
    if d < mesh.max_segment_length() {
        return Err(Error::InadmissiblePoint {
            x: p.x,
            y: p.y,
            reason: format!("distance {d:.3e} to the boundary is below one segment length"),
        });
    }
    Ok(())
}

/// Scattered displacement at exterior points from the representation
/// formula `u(x) = ∫ (T_y E)ᵀ u_h ds - ∫ E t ds` with `t = -g`.
pub fn represent_field(
    ctx: &KernelContext,
    mesh: &BoundaryMesh,
    solution: &BoundarySolution,
    points: &[Vec2],
    order: usize,
) -> Result<Vec<CVec2>> {
    if solution.displacement.len() != mesh.n_nodes() || solution.incident_traction.len() != mesh.n_nodes() {
        return Err(Error::Dimension("solution does not match the mesh".into()));
    }
    for &p in points {
        check_exterior(mesh, p)?;
    }
    let rule = gauss_legendre(order)?;
    points
        .par_iter()
        .map(|&x| {
            let mut u = CVec2::default();
            for (s, seg) in mesh.segments().iter().enumerate() {
                let g = solution.incident_traction[s];
                let jac = seg.length / 2.0;
                for (xi, w) in rule.points() {
                    let y = mesh.reference_map(s, xi);
                    let dl = ctx.kernel.traction_y(x, y, seg.normal)?.transpose();
                    let sl = ctx.kernel.tensor(x, y)?;
                    let uh = solution.displacement_at(mesh, s, xi);
                    u += (dl.mul_vec(uh) + sl.mul_vec(g)).scale(C64::new(w * jac, 0.0));
                }
            }
            Ok(u)
        })
        .collect()
}

/// Boundary error norms of a solution against an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryErrors {
    /// `‖u - u_h‖` in `L²(Γ)` with `u_h` the piecewise-linear interpolant.
    pub l2: f64,
    /// Largest nodal deviation.
    pub linf: f64,
    /// Nodal deviation per node.
    pub nodal: Vec<f64>,
}

pub fn boundary_errors(
    mesh: &BoundaryMesh,
    solution: &BoundarySolution,
    exact: impl Fn(Vec2) -> Result<CVec2>,
    order: usize,
) -> Result<BoundaryErrors> {
    if solution.displacement.len() != mesh.n_nodes() {
        return Err(Error::Dimension("solution does not match the mesh".into()));
    }
    let rule = gauss_legendre(order)?;
    let mut l2 = 0.0;
    for (s, seg) in mesh.segments().iter().enumerate() {
        for (xi, w) in rule.points() {
            let diff = solution.displacement_at(mesh, s, xi) - exact(mesh.reference_map(s, xi))?;
            l2 += w * seg.length / 2.0 * diff.norm_sqr();
        }
    }
    let nodal = mesh
        .nodes()
        .iter()
        .zip(&solution.displacement)
        .map(|(&p, &u)| exact(p).map(|e| (u - e).norm()))
        .collect::<Result<Vec<f64>>>()?;
    let linf = nodal.iter().copied().fold(0.0, f64::max);
    Ok(BoundaryErrors {
        l2: l2.sqrt(),
        linf,
        nodal,
    })
}

/// Observed order between two runs: `log(e1/e2) / log(n2/n1)`. `None` when
/// either error is zero or not finite.
pub fn observed_order(n1: usize, e1: f64, n2: usize, e2: f64) -> Option<f64> {
    if e1 > 0.0 && e2 > 0.0 && e1.is_finite() && e2.is_finite() && n1 != n2 {
        Some((e1 / e2).ln() / (n2 as f64 / n1 as f64).ln())
    } else {
        None
    }
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub omega: f64,
    pub l2: f64,
    pub linf: f64,
    pub residual: f64,
    /// Order relative to the previous row of the same `ω`.
    pub order: Option<f64>,
}

/// Runs the manufactured (or point-source) problem for every `(ω, N)` and
/// returns the error table, grouped by `ω` with ascending `N`.
pub fn convergence_study(
    curve: &CurveSpec,
    media: &[ElasticMedium],
    node_counts: &[usize],
    field: &IncidentField,
    config: &SolverConfig,
) -> Result<Vec<ConvergenceRow>> {
    if node_counts.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!(
            "node counts {node_counts:?} must be strictly ascending"
        )));
    }
    let mut rows = Vec::new();
    for medium in media {
        let ctx = KernelContext::new(*medium, config.quadrature())?;
        let mut prev: Option<(usize, f64)> = None;
        for &n in node_counts {
            let mesh = sample_curve(curve, n)?;
            let sol = solve_with_context(&ctx, &mesh, config, field)?;
            let err = match field.exact_scattered(medium, mesh.node(0)) {
                Some(_) => boundary_errors(
                    &mesh,
                    &sol,
                    |p| field.exact_scattered(medium, p).expect("closed form exists"),
                    config.field_order,
                )?,
                None => {
                    return Err(Error::Config(
                        "convergence study needs a field with a closed-form scattered solution".into(),
                    ))
                }
            };
            let order = prev.and_then(|(n0, e0)| observed_order(n0, e0, n, err.l2));
            log::info!("omega {} N {n}: l2 {:.3e} order {:?}", medium.omega, err.l2, order);
            rows.push(ConvergenceRow {
                n,
                omega: medium.omega,
                l2: err.l2,
                linf: err.linf,
                residual: sol.residual,
                order,
            });
            prev = Some((n, err.l2));
        }
    }
    Ok(rows)
}
