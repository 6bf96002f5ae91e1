//! Galerkin assembly of the four boundary integral operators on piecewise
//! linear (displacement) and piecewise constant (traction) elements.
//!
//! Index conventions: the test/trial displacement basis is the nodal hat
//! family, the traction basis is one constant per segment, and segment `i`
//! runs from node `i` to its cyclic successor. All operators are returned as
//! [`BlockMatrix`] with one 2x2 block per (row basis, column basis) pair.

mod kernel;
mod pairs;
mod same;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::BoundaryMesh;
use crate::linalg::{BlockMatrix, CMat22, C64};
use crate::medium::ElasticMedium;
use crate::quadrature::{singular_table, SingularTable, MAX_ORDER};
use crate::specfun::{series_coefficients, SeriesCoefficients};

pub use kernel::{PointKernel, SERIES_SWITCH};
pub use pairs::PairBlocks;

use pairs::{corner_rule, pair_blocks, tensor_rule, Accumulator, SquareRule};

/// Quadrature controls.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureOptions {
    /// Truncation order of the same-segment series.
    pub m_max: usize,
    /// Gauss order per direction for well-separated segment pairs and for
    /// each graded cell of adjacent pairs.
    pub gauss_order: usize,
    /// Gauss order per direction for nearby, non-touching pairs.
    pub near_order: usize,
    /// Pairs whose midpoints are closer than this many mean segment lengths
    /// use `near_order`.
    pub near_factor: f64,
    /// Dyadic refinement levels toward the shared node of adjacent pairs.
    pub grading_depth: u32,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            m_max: 20,
            gauss_order: 8,
            near_order: 12,
            near_factor: 3.0,
            grading_depth: 10,
        }
    }
}

impl QuadratureOptions {
    pub fn validate(&self) -> Result<()> {
        for order in [self.gauss_order, self.near_order] {
            if order == 0 || order > MAX_ORDER {
                return Err(Error::QuadratureOrder(order));
            }
        }
        if self.m_max > 60 {
            return Err(Error::Config(format!("series order {} exceeds 60", self.m_max)));
        }
        if self.grading_depth > 40 {
            return Err(Error::Config(format!(
                "grading depth {} exceeds 40",
                self.grading_depth
            )));
        }
        if !(self.near_factor >= 0.0) || !self.near_factor.is_finite() {
            return Err(Error::Config(format!(
                "near factor {} must be finite and >= 0",
                self.near_factor
            )));
        }
        Ok(())
    }
}

/// Medium-dependent data shared by every element pair.
#[derive(Debug, Clone)]
pub struct KernelContext {
    pub kernel: PointKernel,
    pub coeffs: SeriesCoefficients,
    pub table: SingularTable,
    pub options: QuadratureOptions,
    regular: SquareRule,
    near: SquareRule,
    /// Graded rules for `b = next(a)` and `b = prev(a)`.
    after: SquareRule,
    before: SquareRule,
}

/// How an element pair is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    Same,
    /// Trial segment follows the test segment.
    Next,
    /// Trial segment precedes the test segment.
    Prev,
    Near,
    Regular,
}

impl KernelContext {
    pub fn new(medium: ElasticMedium, options: QuadratureOptions) -> Result<KernelContext> {
        options.validate()?;
        let table = singular_table(options.m_max);
        Self::with_table(medium, options, table)
    }

    /// Uses a caller-supplied moment table (e.g. a deliberately corrupted one).
    pub fn with_table(
        medium: ElasticMedium,
        options: QuadratureOptions,
        table: SingularTable,
    ) -> Result<KernelContext> {
        options.validate()?;
        if table.len() < options.m_max + 2 {
            return Err(Error::Config(format!(
                "moment table has {} entries, series order {} needs {}",
                table.len(),
                options.m_max,
                options.m_max + 2
            )));
        }
        let coeffs = series_coefficients(&medium, options.m_max as i64)?;
        let kernel = PointKernel::new(medium, &coeffs);
        let (g, d) = (options.gauss_order, options.grading_depth);
        Ok(KernelContext {
            kernel,
            coeffs,
            table,
            options,
            regular: tensor_rule(g),
            near: tensor_rule(options.near_order),
            after: corner_rule(g, d, 1.0, -1.0),
            before: corner_rule(g, d, -1.0, 1.0),
        })
    }

    pub fn medium(&self) -> &ElasticMedium {
        &self.kernel.medium
    }

    pub fn classify(&self, mesh: &BoundaryMesh, a: usize, b: usize) -> PairKind {
        if a == b {
            PairKind::Same
        } else if b == mesh.next(a) {
            PairKind::Next
        } else if b == mesh.prev(a) {
            PairKind::Prev
        } else {
            let (sa, sb) = (mesh.segment(a), mesh.segment(b));
            let gap = mesh.midpoint(a).dist(mesh.midpoint(b));
            if gap < self.options.near_factor * 0.5 * (sa.length + sb.length) {
                PairKind::Near
            } else {
                PairKind::Regular
            }
        }
    }

    /// Blocks of the ordered pair (test segment `a`, trial segment `b`).
    pub fn pair(&self, mesh: &BoundaryMesh, a: usize, b: usize) -> PairBlocks {
        let (sa, sb) = (mesh.segment(a), mesh.segment(b));
        match self.rule(mesh, a, b) {
            None => same::same_blocks(&self.kernel, &self.coeffs, &self.table, sa),
            Some(rule) => {
                let acc = Accumulator::integrate(&self.kernel, mesh, sa, sb, rule);
                pair_blocks(&self.kernel, sa, sb, &acc)
            }
        }
    }

    /// Blocks of `(a, b)` and `(b, a)` from one pass over the quadrature
    /// points (`a != b`).
    fn pair_both(&self, mesh: &BoundaryMesh, a: usize, b: usize) -> (PairBlocks, PairBlocks) {
        let (sa, sb) = (mesh.segment(a), mesh.segment(b));
        let rule = self.rule(mesh, a, b).expect("distinct segments");
        let acc = Accumulator::integrate(&self.kernel, mesh, sa, sb, rule);
        (
            pair_blocks(&self.kernel, sa, sb, &acc),
            pair_blocks(&self.kernel, sb, sa, &acc.swapped()),
        )
    }

    fn rule(&self, mesh: &BoundaryMesh, a: usize, b: usize) -> Option<&SquareRule> {
        match self.classify(mesh, a, b) {
            PairKind::Same => None,
            PairKind::Next => Some(&self.after),
            PairKind::Prev => Some(&self.before),
            PairKind::Near => Some(&self.near),
            PairKind::Regular => Some(&self.regular),
        }
    }

    /// Calls `sink(a, b, blocks)` once for every ordered segment pair. The
    /// call order is fixed (independent of the thread count), so sums built
    /// by the sink are reproducible bit for bit.
    pub fn for_each_pair(&self, mesh: &BoundaryMesh, mut sink: impl FnMut(usize, usize, &PairBlocks)) {
        let n = mesh.n_nodes();
        if n == 0 {
            return;
        }
        // unordered pairs a <= b, in batches of test segments
        let batch = (40_000 / n).clamp(1, n);
        for start in (0..n).step_by(batch) {
            let end = (start + batch).min(n);
            let rows: Vec<(PairBlocks, Vec<(PairBlocks, PairBlocks)>)> = (start..end)
                .into_par_iter()
                .map(|a| {
                    let both = (a + 1..n).map(|b| self.pair_both(mesh, a, b)).collect();
                    (self.pair(mesh, a, a), both)
                })
                .collect();
            for (a, (diag, both)) in (start..end).zip(rows) {
                sink(a, a, &diag);
                for (b, (ab, ba)) in (a + 1..n).zip(both) {
                    sink(a, b, &ab);
                    sink(b, a, &ba);
                }
            }
        }
    }
}

/// Global index of the hat on segment `seg` with hat-sign index `k`.
#[inline]
fn hat_node(mesh: &BoundaryMesh, seg: usize, k: usize) -> usize {
    if k == 0 {
        seg
    } else {
        mesh.next(seg)
    }
}

/// The four discrete operators.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    /// Single layer: hats × segment constants.
    pub single_layer: BlockMatrix,
    /// Double layer: hats × hats.
    pub double_layer: BlockMatrix,
    /// Adjoint double layer: hats × segment constants.
    pub adjoint_double_layer: BlockMatrix,
    /// Hypersingular: hats × hats.
    pub hypersingular: BlockMatrix,
}

/// Scatters one ordered pair into the four global operators.
fn scatter(ops: &mut OperatorSet, mesh: &BoundaryMesh, a: usize, b: usize, blocks: &PairBlocks) {
    for k1 in 0..2 {
        let row = hat_node(mesh, a, k1);
        ops.single_layer.add_block(row, b, blocks.v[k1]);
        ops.adjoint_double_layer.add_block(row, b, blocks.kp[k1]);
        for k2 in 0..2 {
            let col = hat_node(mesh, b, k2);
            ops.double_layer.add_block(row, col, blocks.k[k1][k2]);
            ops.hypersingular.add_block(row, col, blocks.w[k1][k2]);
        }
    }
}

/// Assembles all four operators.
pub fn assemble_operators(ctx: &KernelContext, mesh: &BoundaryMesh) -> OperatorSet {
    let n = mesh.n_nodes();
    let mut ops = OperatorSet {
        single_layer: BlockMatrix::zeros(n),
        double_layer: BlockMatrix::zeros(n),
        adjoint_double_layer: BlockMatrix::zeros(n),
        hypersingular: BlockMatrix::zeros(n),
    };
    ctx.for_each_pair(mesh, |a, b, blocks| scatter(&mut ops, mesh, a, b, blocks));
    ops
}

pub fn assemble_single_layer(ctx: &KernelContext, mesh: &BoundaryMesh) -> BlockMatrix {
    assemble_operators(ctx, mesh).single_layer
}

pub fn assemble_double_layer(ctx: &KernelContext, mesh: &BoundaryMesh) -> BlockMatrix {
    assemble_operators(ctx, mesh).double_layer
}

pub fn assemble_adjoint_double_layer(ctx: &KernelContext, mesh: &BoundaryMesh) -> BlockMatrix {
    assemble_operators(ctx, mesh).adjoint_double_layer
}

pub fn assemble_hypersingular(ctx: &KernelContext, mesh: &BoundaryMesh) -> BlockMatrix {
    assemble_operators(ctx, mesh).hypersingular
}

/// Mass matrices `(hat, hat)` and `(hat, segment constant)`, each scaled by
/// the 2x2 identity.
pub fn assemble_mass(mesh: &BoundaryMesh) -> (BlockMatrix, BlockMatrix) {
    let n = mesh.n_nodes();
    let mut hat_hat = BlockMatrix::zeros(n);
    let mut hat_const = BlockMatrix::zeros(n);
    for (s, seg) in mesh.segments().iter().enumerate() {
        let len = seg.length;
        let (i, j) = (seg.start, seg.end);
        let eye = CMat22::identity();
        hat_hat.add_block(i, i, eye.scale_re(len / 3.0));
        hat_hat.add_block(j, j, eye.scale_re(len / 3.0));
        hat_hat.add_block(i, j, eye.scale_re(len / 6.0));
        hat_hat.add_block(j, i, eye.scale_re(len / 6.0));
        hat_const.add_block(i, s, eye.scale_re(len / 2.0));
        hat_const.add_block(j, s, eye.scale_re(len / 2.0));
    }
    (hat_hat, hat_const)
}

/// The coupled system matrix and its right-hand side for one traction
/// datum `g` (one 2-vector per segment):
///
/// ```text
/// A   = W + iη (M/2 - K)
/// rhs = (M'/2 + K' + iη V) g
/// ```
///
/// with `M`, `M'` the two mass matrices. Assembled in one pass without
/// storing the intermediate operators.
pub fn assemble_system(
    ctx: &KernelContext,
    mesh: &BoundaryMesh,
    eta: f64,
    g: &[C64],
) -> Result<(BlockMatrix, Vec<C64>)> {
    let n = mesh.n_nodes();
    if g.len() != 2 * n {
        return Err(Error::Dimension(format!(
            "traction datum has length {}, expected {}",
            g.len(),
            2 * n
        )));
    }
    let ie = C64::new(0.0, eta);
    let (hat_hat, hat_const) = assemble_mass(mesh);
    let mut a_mat = hat_hat.scaled(ie * 0.5);
    let mut rhs = hat_const.scaled(C64::new(0.5, 0.0)).matvec(g)?;
    ctx.for_each_pair(mesh, |a, b, blocks| {
        let gb = crate::linalg::CVec2::new(g[2 * b], g[2 * b + 1]);
        for k1 in 0..2 {
            let row = hat_node(mesh, a, k1);
            let contrib = (blocks.kp[k1] + blocks.v[k1].scale(ie)).mul_vec(gb);
            rhs[2 * row] += contrib.0[0];
            rhs[2 * row + 1] += contrib.0[1];
            for k2 in 0..2 {
                let col = hat_node(mesh, b, k2);
                a_mat.add_block(row, col, blocks.w[k1][k2] - blocks.k[k1][k2].scale(ie));
            }
        }
    });
    Ok((a_mat, rhs))
}
