//! Obstacle boundaries: parametric curves, their polygonal meshes and the
//! per-segment frames used by the boundary integral operators.
//!
//! Every loop is counter-clockwise. Segment `i` of a loop runs from node
//! `i` to its cyclic successor; its unit tangent is `t_i` and its outward
//! normal is `n_i = -N t_i` with `N = [[0, -1], [1, 0]]`.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::ops::Range;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Vec2;
use crate::medium::ElasticMedium;

/// Smallest number of nodes given to a loop of a composite scene.
pub const MIN_NODES_PER_LOOP: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum CurveSpec {
    /// `(2 + 0.5 cos 3t)(cos t, sin t)`.
    RoundedTriangle,
    /// `(cos t + 0.65 cos 2t - 0.65, 1.5 sin t)`.
    Kite,
    /// `(1 + 0.3 cos 5t)(cos t, sin t)`.
    Star,
    Circle {
        radius: f64,
        #[serde(default)]
        center: [f64; 2],
    },
    Ellipse {
        center: [f64; 2],
        semi_axes: [f64; 2],
    },
    /// Counter-clockwise vertex list.
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Composite {
        parts: Vec<CurveSpec>,
    },
}

impl CurveSpec {
    /// Right-angled triangle with legs of length 2.
    pub fn right_triangle() -> CurveSpec {
        CurveSpec::Polygon {
            vertices: vec![[-1.0, -1.0], [1.0, -1.0], [-1.0, 1.0]],
        }
    }

    /// Kite with a small ellipse to its right.
    pub fn kite_with_ellipse() -> CurveSpec {
        CurveSpec::Composite {
            parts: vec![
                CurveSpec::Kite,
                CurveSpec::Ellipse {
                    center: [2.5, 0.0],
                    semi_axes: [0.3, 0.2],
                },
            ],
        }
    }

    /// Looks up a curve by name (`rounded_triangle`, `kite`, `star`,
    /// `right_triangle`, `kite_with_ellipse`, `unit_circle`).
    pub fn by_name(name: &str) -> Result<CurveSpec> {
        Ok(match name {
            "rounded_triangle" => CurveSpec::RoundedTriangle,
            "kite" => CurveSpec::Kite,
            "star" => CurveSpec::Star,
            "right_triangle" => CurveSpec::right_triangle(),
            "kite_with_ellipse" | "mixed" => CurveSpec::kite_with_ellipse(),
            "unit_circle" => CurveSpec::Circle {
                radius: 1.0,
                center: [0.0, 0.0],
            },
            _ => return Err(Error::Geometry(format!("unknown curve name {name:?}"))),
        })
    }

    fn validate(&self) -> Result<()> {
        match self {
            CurveSpec::Circle { radius, .. } if !(*radius > 0.0) => {
                Err(Error::Geometry(format!("circle radius {radius} must be > 0")))
            }
            CurveSpec::Ellipse { semi_axes, .. } if !(semi_axes[0] > 0.0 && semi_axes[1] > 0.0) => {
                Err(Error::Geometry(format!("ellipse semi-axes {semi_axes:?} must be > 0")))
            }
            CurveSpec::Polygon { vertices } => {
                if vertices.len() < 3 {
                    return Err(Error::Geometry("polygon needs at least 3 vertices".into()));
                }
                for k in 0..vertices.len() {
                    let (a, b) = (vertices[k], vertices[(k + 1) % vertices.len()]);
                    if a == b {
                        return Err(Error::Geometry(format!("repeated polygon vertex {a:?}")));
                    }
                }
                Ok(())
            }
            CurveSpec::Composite { parts } => {
                if parts.is_empty() {
                    return Err(Error::Geometry("composite curve has no parts".into()));
                }
                for p in parts {
                    if matches!(p, CurveSpec::Composite { .. }) {
                        return Err(Error::Geometry("nested composite curves".into()));
                    }
                    p.validate()?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Point of a smooth closed curve at parameter `t ∈ [0, 2π)`.
    /// `None` for polygons and composites.
    pub fn point(&self, t: f64) -> Option<Vec2> {
        let (c, s) = (t.cos(), t.sin());
        Some(match self {
            CurveSpec::RoundedTriangle => Vec2::new(c, s).scale(2.0 + 0.5 * (3.0 * t).cos()),
            CurveSpec::Kite => Vec2::new(c + 0.65 * (2.0 * t).cos() - 0.65, 1.5 * s),
            CurveSpec::Star => Vec2::new(c, s).scale(1.0 + 0.3 * (5.0 * t).cos()),
            CurveSpec::Circle { radius, center } => Vec2::new(center[0] + radius * c, center[1] + radius * s),
            CurveSpec::Ellipse { center, semi_axes } => {
                Vec2::new(center[0] + semi_axes[0] * c, center[1] + semi_axes[1] * s)
            }
            CurveSpec::Polygon { .. } | CurveSpec::Composite { .. } => return None,
        })
    }

    /// Derivative of [`CurveSpec::point`] with respect to `t`.
    pub fn derivative(&self, t: f64) -> Option<Vec2> {
        let (c, s) = (t.cos(), t.sin());
        Some(match self {
            CurveSpec::RoundedTriangle => {
                let (r, dr) = (2.0 + 0.5 * (3.0 * t).cos(), -1.5 * (3.0 * t).sin());
                Vec2::new(dr * c - r * s, dr * s + r * c)
            }
            CurveSpec::Kite => Vec2::new(-s - 1.3 * (2.0 * t).sin(), 1.5 * c),
            CurveSpec::Star => {
                let (r, dr) = (1.0 + 0.3 * (5.0 * t).cos(), -1.5 * (5.0 * t).sin());
                Vec2::new(dr * c - r * s, dr * s + r * c)
            }
            CurveSpec::Circle { radius, .. } => Vec2::new(-radius * s, radius * c),
            CurveSpec::Ellipse { semi_axes, .. } => Vec2::new(-semi_axes[0] * s, semi_axes[1] * c),
            CurveSpec::Polygon { .. } | CurveSpec::Composite { .. } => return None,
        })
    }

    fn parts(&self) -> Vec<&CurveSpec> {
        match self {
            CurveSpec::Composite { parts } => parts.iter().collect(),
            other => vec![other],
        }
    }

    /// Length of each loop, by composite Gauss quadrature for smooth
    /// curves and exactly for polygons.
    pub fn loop_lengths(&self) -> Vec<f64> {
        self.parts()
            .into_iter()
            .map(|p| match p {
                CurveSpec::Polygon { vertices } => (0..vertices.len())
                    .map(|k| {
                        let (a, b) = (vertices[k], vertices[(k + 1) % vertices.len()]);
                        (b[0] - a[0]).hypot(b[1] - a[1])
                    })
                    .sum(),
                smooth => {
                    let rule = crate::quadrature::gauss_legendre(16).expect("supported order");
                    let panels = 64;
                    (0..panels)
                        .map(|k| {
                            let a = 2.0 * PI * k as f64 / panels as f64;
                            let b = a + 2.0 * PI / panels as f64;
                            rule.integrate(a, b, |t| smooth.derivative(t).unwrap().norm())
                        })
                        .sum()
                }
            })
            .collect()
    }
}

fn split_proportionally(total: usize, weights: &[f64], minimum: usize) -> Vec<usize> {
    let sum: f64 = weights.iter().sum();
    let exact: Vec<f64> = weights.iter().map(|w| total as f64 * w / sum).collect();
    let mut counts: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let rest = total.saturating_sub(counts.iter().sum());
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = exact[a] - exact[a].floor();
        let fb = exact[b] - exact[b].floor();
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    for &k in order.iter().cycle().take(rest) {
        counts[k] += 1;
    }
    counts.iter().map(|&c| c.max(minimum)).collect()
}

fn sample_polygon(vertices: &[[f64; 2]], n: usize) -> Vec<Vec2> {
    let verts: Vec<Vec2> = vertices.iter().map(|v| Vec2::new(v[0], v[1])).collect();
    let lens: Vec<f64> = (0..verts.len())
        .map(|k| verts[k].dist(verts[(k + 1) % verts.len()]))
        .collect();
    let per_edge = split_proportionally(n, &lens, 1);
    let mut pts = Vec::with_capacity(n);
    for (k, &m) in per_edge.iter().enumerate() {
        let (a, b) = (verts[k], verts[(k + 1) % verts.len()]);
        for j in 0..m {
            pts.push(a + (b - a).scale(j as f64 / m as f64));
        }
    }
    pts
}

/// One boundary segment `Γ_i` from node `start` to node `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub length: f64,
    pub tangent: Vec2,
    pub normal: Vec2,
}

/// Closed polygonal loops with globally contiguous node numbering.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMesh {
    nodes: Vec<Vec2>,
    loops: Vec<Range<usize>>,
    segments: Vec<Segment>,
    loop_of: Vec<usize>,
}

impl BoundaryMesh {
    /// Builds a mesh from counter-clockwise node lists, one per loop.
    pub fn from_loops(loops: Vec<Vec<Vec2>>) -> Result<BoundaryMesh> {
        if loops.is_empty() {
            return Err(Error::Geometry("mesh has no loops".into()));
        }
        let mut mesh = BoundaryMesh {
            nodes: Vec::new(),
            loops: Vec::new(),
            segments: Vec::new(),
            loop_of: Vec::new(),
        };
        for (id, pts) in loops.into_iter().enumerate() {
            if pts.len() < 3 {
                return Err(Error::Geometry(format!("loop {id} has {} < 3 nodes", pts.len())));
            }
            let area: f64 = (0..pts.len())
                .map(|k| pts[k].cross(pts[(k + 1) % pts.len()]))
                .sum::<f64>()
                / 2.0;
            if !(area > 0.0) {
                return Err(Error::Geometry(format!(
                    "loop {id} is not counter-clockwise (signed area {area})"
                )));
            }
            let base = mesh.nodes.len();
            let n = pts.len();
            for k in 0..n {
                let (a, b) = (pts[k], pts[(k + 1) % n]);
                let d = b - a;
                let length = d.norm();
                if !(length > 0.0) {
                    return Err(Error::Geometry(format!("zero-length segment in loop {id} at node {k}")));
                }
                let tangent = d.scale(1.0 / length);
                mesh.segments.push(Segment {
                    start: base + k,
                    end: base + (k + 1) % n,
                    length,
                    tangent,
                    normal: -tangent.rot90(),
                });
                mesh.loop_of.push(id);
            }
            mesh.nodes.extend(pts);
            mesh.loops.push(base..base + n);
        }
        mesh.check_loops_disjoint()?;
        Ok(mesh)
    }

    fn check_loops_disjoint(&self) -> Result<()> {
        for (a, ra) in self.loops.iter().enumerate() {
            for (b, _) in self.loops.iter().enumerate() {
                if a != b && self.loop_winding(b, self.nodes[ra.start]).abs() > 0.5 {
                    return Err(Error::Geometry(format!("loop {a} lies inside loop {b}")));
                }
            }
        }
        Ok(())
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Vec2] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> Vec2 {
        self.nodes[i]
    }

    /// Segment `i` (starts at node `i`).
    pub fn segment(&self, i: usize) -> &Segment {
        &self.segments[i]
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn loops(&self) -> &[Range<usize>] {
        &self.loops
    }

    pub fn loop_of(&self, i: usize) -> usize {
        self.loop_of[i]
    }

    /// Cyclic successor of node/segment `i` within its loop.
    pub fn next(&self, i: usize) -> usize {
        let r = &self.loops[self.loop_of[i]];
        if i + 1 == r.end {
            r.start
        } else {
            i + 1
        }
    }

    /// Cyclic predecessor of node/segment `i` within its loop.
    pub fn prev(&self, i: usize) -> usize {
        let r = &self.loops[self.loop_of[i]];
        if i == r.start {
            r.end - 1
        } else {
            i - 1
        }
    }

    pub fn perimeter(&self) -> f64 {
        self.segments.iter().map(|s| s.length).sum()
    }

    pub fn max_segment_length(&self) -> f64 {
        self.segments.iter().map(|s| s.length).fold(0.0, f64::max)
    }

    /// Point `x_i + (1 + xi)/2 (x_{i+1} - x_i)` of segment `i`, `xi`
    /// clamped to `[-1, 1]`.
    pub fn reference_map(&self, segment: usize, xi: f64) -> Vec2 {
        let s = &self.segments[segment];
        let xi = xi.clamp(-1.0, 1.0);
        let (a, b) = (self.nodes[s.start], self.nodes[s.end]);
        a + (b - a).scale((1.0 + xi) / 2.0)
    }

    pub fn midpoint(&self, segment: usize) -> Vec2 {
        self.reference_map(segment, 0.0)
    }

    fn loop_winding(&self, id: usize, p: Vec2) -> f64 {
        let r = &self.loops[id];
        let mut total = 0.0;
        for k in r.clone() {
            let a = self.nodes[k] - p;
            let b = self.nodes[self.next(k)] - p;
            total += a.cross(b).atan2(a.dot(b));
        }
        total / (2.0 * PI)
    }

    /// Sum of the winding numbers of all loops around `p`.
    pub fn winding_number(&self, p: Vec2) -> f64 {
        (0..self.loops.len()).map(|id| self.loop_winding(id, p)).sum()
    }

    /// True when `p` lies outside every loop.
    pub fn is_exterior(&self, p: Vec2) -> bool {
        self.winding_number(p).abs() < 0.5
    }

    /// Index of the loop containing `p`, if any.
    pub fn containing_loop(&self, p: Vec2) -> Option<usize> {
        (0..self.loops.len()).find(|&id| self.loop_winding(id, p).abs() > 0.5)
    }

    pub fn distance_to_boundary(&self, p: Vec2) -> f64 {
        self.segments
            .iter()
            .map(|s| {
                let a = self.nodes[s.start];
                let t = ((p - a).dot(s.tangent)).clamp(0.0, s.length);
                p.dist(a + s.tangent.scale(t))
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Writes `loop_id,node_index,x,y` rows (node index local to its loop).
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(fs::File::create(path)?);
        writeln!(f, "loop_id,node_index,x,y")?;
        for (id, r) in self.loops.iter().enumerate() {
            for (k, i) in r.clone().enumerate() {
                let p = self.nodes[i];
                writeln!(f, "{id},{k},{:.17e},{:.17e}", p.x, p.y)?;
            }
        }
        Ok(())
    }

    /// Reads the format written by [`BoundaryMesh::write_csv`].
    pub fn read_csv(path: &Path) -> Result<BoundaryMesh> {
        let text = fs::read_to_string(path)?;
        let parse_err = |line: usize, msg: String| Error::Parse {
            what: format!("{}:{}", path.display(), line),
            message: msg,
        };
        let mut loops: Vec<Vec<Vec2>> = Vec::new();
        for (ln, line) in text.lines().enumerate().skip(1) {
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() != 4 {
                return Err(parse_err(ln + 1, format!("expected 4 columns, got {}", cols.len())));
            }
            let id: usize = cols[0]
                .parse()
                .map_err(|e| parse_err(ln + 1, format!("loop_id: {e}")))?;
            let x: f64 = cols[2].parse().map_err(|e| parse_err(ln + 1, format!("x: {e}")))?;
            let y: f64 = cols[3].parse().map_err(|e| parse_err(ln + 1, format!("y: {e}")))?;
            if id > loops.len() {
                return Err(parse_err(ln + 1, format!("loop {id} appears out of order")));
            }
            if id == loops.len() {
                loops.push(Vec::new());
            }
            loops[id].push(Vec2::new(x, y));
        }
        BoundaryMesh::from_loops(loops)
    }
}

/// Samples `spec` with `n` nodes in total.
///
/// Smooth loops use uniform parameter steps `t_k = 2πk/n`; polygon loops
/// put a number of nodes proportional to each edge length on that edge,
/// vertices included; composite scenes share `n` among their loops in
/// proportion to arc length with at least [`MIN_NODES_PER_LOOP`] each.
pub fn sample_curve(spec: &CurveSpec, n: usize) -> Result<BoundaryMesh> {
    spec.validate()?;
    let parts = spec.parts();
    let counts = if parts.len() == 1 {
        vec![n]
    } else {
        split_proportionally(n, &spec.loop_lengths(), MIN_NODES_PER_LOOP)
    };
    let mut loops = Vec::with_capacity(parts.len());
    for (part, &m) in parts.into_iter().zip(&counts) {
        if m < 3 {
            return Err(Error::Geometry(format!("{m} nodes per loop, need at least 3")));
        }
        let pts = match part {
            CurveSpec::Polygon { vertices } => {
                if m < vertices.len() {
                    return Err(Error::Geometry(format!(
                        "{m} nodes cannot resolve {} polygon vertices",
                        vertices.len()
                    )));
                }
                sample_polygon(vertices, m)
            }
            smooth => (0..m)
                .map(|k| smooth.point(2.0 * PI * k as f64 / m as f64).unwrap())
                .collect(),
        };
        loops.push(pts);
    }
    BoundaryMesh::from_loops(loops)
}

/// Largest distance from the origin to the curve.
pub fn circumradius(spec: &CurveSpec) -> Result<f64> {
    let mesh = sample_curve(spec, 4096)?;
    Ok(mesh.nodes().iter().map(|p| p.norm()).fold(0.0, f64::max))
}

/// Node count for high-frequency runs: the smallest multiple of ten above
/// `16 π R / λ_s`, with `R` the circumradius and `λ_s = 2π/k_s`.
pub fn high_frequency_nodes(spec: &CurveSpec, medium: &ElasticMedium) -> Result<usize> {
    let r = circumradius(spec)?;
    let bound = 8.0 * r * medium.ks();
    Ok(((bound / 10.0).floor() as usize + 1) * 10)
}
