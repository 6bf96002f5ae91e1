//! Incident fields, their tractions, and the exact scattered fields of the
//! manufactured problems.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::BoundaryMesh;
use crate::linalg::{CMat22, CVec2, Vec2, C64, I};
use crate::medium::ElasticMedium;
use crate::quadrature::gauss_legendre;
use crate::specfun::hankel1;

fn unit_amplitude() -> f64 {
    1.0
}

/// Incident wave or manufactured data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum IncidentField {
    /// `u = A d exp(i k_p x·d)`.
    PlaneP {
        direction: [f64; 2],
        #[serde(default = "unit_amplitude")]
        amplitude: f64,
    },
    /// `u = -A ∇H0(k_p |x - z|) = A k_p H1(k_p |x - z|) (x - z)/|x - z|`,
    /// radiated from a source `z` inside an obstacle. The scattered field
    /// of a traction-free obstacle is then `-u` exactly.
    PointSourceP {
        source: [f64; 2],
        #[serde(default = "unit_amplitude")]
        amplitude: f64,
    },
    /// Manufactured problem whose exact scattered field is the point-source
    /// field above; the boundary datum is minus its traction.
    Manufactured {
        #[serde(default)]
        source: [f64; 2],
        #[serde(default = "unit_amplitude")]
        amplitude: f64,
    },
}

/// Where segment-constant traction data is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TractionSampling {
    /// Value at the first node of the segment, with the segment normal.
    StartNode,
    /// Value at the segment midpoint.
    #[default]
    Midpoint,
    /// Mean over the segment (L² projection onto constants).
    SegmentAverage,
}

/// Point-source displacement `k_p H1(k_p ρ) x̂`, its traction on the normal
/// `n`, and the underlying `φ = H0(k_p ρ)`.
fn point_source(medium: &ElasticMedium, z: Vec2, x: Vec2, n: Vec2) -> Result<(CVec2, CVec2)> {
    let kp = medium.kp();
    let r = x - z;
    let rho = r.norm();
    if !(rho > 0.0) {
        return Err(Error::Domain(format!(
            "point source at ({}, {}) evaluated at itself",
            z.x, z.y
        )));
    }
    let xh = r.scale(1.0 / rho);
    let arg = kp * rho;
    let (h0, h1) = (hankel1(0, arg)?, hankel1(1, arg)?);
    let u = CVec2::from_real(xh).scale(h1 * kp);
    let d1 = -h1 * kp;
    let d2 = -(h0 - h1 / arg) * (kp * kp);
    let radial = CMat22::outer(xh, xh);
    let hess = radial.scale(d2) + (CMat22::identity() - radial).scale(d1 / rho);
    let nc = CVec2::from_real(n);
    let t = nc.scale(h0 * (medium.lambda * kp * kp)) - hess.mul_vec(nc).scale(C64::new(2.0 * medium.mu, 0.0));
    Ok((u, t))
}

impl IncidentField {
    pub fn plane(direction: [f64; 2]) -> IncidentField {
        IncidentField::PlaneP {
            direction,
            amplitude: 1.0,
        }
    }

    pub fn manufactured(source: [f64; 2]) -> IncidentField {
        IncidentField::Manufactured { source, amplitude: 1.0 }
    }

    pub fn amplitude(&self) -> f64 {
        match self {
            IncidentField::PlaneP { amplitude, .. }
            | IncidentField::PointSourceP { amplitude, .. }
            | IncidentField::Manufactured { amplitude, .. } => *amplitude,
        }
    }

    /// Checks the direction is a unit vector and that any source point lies
    /// strictly inside an obstacle loop.
    pub fn validate(&self, mesh: &BoundaryMesh) -> Result<()> {
        if !self.amplitude().is_finite() {
            return Err(Error::Config("incident amplitude must be finite".into()));
        }
        match self {
            IncidentField::PlaneP { direction, .. } => {
                let len = Vec2::new(direction[0], direction[1]).norm();
                if (len - 1.0).abs() > 1e-12 {
                    return Err(Error::Config(format!(
                        "plane-wave direction {direction:?} has length {len}, expected 1"
                    )));
                }
            }
            IncidentField::PointSourceP { source, .. } | IncidentField::Manufactured { source, .. } => {
                let z = Vec2::new(source[0], source[1]);
                if mesh.containing_loop(z).is_none() || mesh.distance_to_boundary(z) < 1e-8 {
                    return Err(Error::Config(format!(
                        "source point {source:?} must lie strictly inside an obstacle"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Incident displacement at `x`. For a manufactured problem this is the
    /// negative of the exact scattered field (so the total field is zero).
    pub fn displacement(&self, medium: &ElasticMedium, x: Vec2) -> Result<CVec2> {
        let amp = C64::new(self.amplitude(), 0.0);
        match self {
            IncidentField::PlaneP { direction, .. } => {
                let d = Vec2::new(direction[0], direction[1]);
                let phase = (I * (medium.kp() * x.dot(d))).exp();
                Ok(CVec2::from_real(d).scale(phase * amp))
            }
            IncidentField::PointSourceP { source, .. } => {
                let (u, _) = point_source(medium, Vec2::new(source[0], source[1]), x, Vec2::new(1.0, 0.0))?;
                Ok(u.scale(amp))
            }
            IncidentField::Manufactured { source, .. } => {
                let (u, _) = point_source(medium, Vec2::new(source[0], source[1]), x, Vec2::new(1.0, 0.0))?;
                Ok(u.scale(-amp))
            }
        }
    }

    /// Traction `T u^i` at `x` for the normal `n`.
    pub fn traction(&self, medium: &ElasticMedium, x: Vec2, n: Vec2) -> Result<CVec2> {
        let amp = C64::new(self.amplitude(), 0.0);
        match self {
            IncidentField::PlaneP { direction, .. } => {
                let d = Vec2::new(direction[0], direction[1]);
                let kp = medium.kp();
                let phase = (I * (kp * x.dot(d))).exp() * I * kp * amp;
                let v = d.scale(2.0 * medium.mu * d.dot(n)) + n.scale(medium.lambda);
                Ok(CVec2::from_real(v).scale(phase))
            }
            IncidentField::PointSourceP { source, .. } => {
                let (_, t) = point_source(medium, Vec2::new(source[0], source[1]), x, n)?;
                Ok(t.scale(amp))
            }
            IncidentField::Manufactured { source, .. } => {
                let (_, t) = point_source(medium, Vec2::new(source[0], source[1]), x, n)?;
                Ok(t.scale(-amp))
            }
        }
    }

    /// The exact scattered field when it is known in closed form.
    pub fn exact_scattered(&self, medium: &ElasticMedium, x: Vec2) -> Option<Result<CVec2>> {
        match self {
            IncidentField::PlaneP { .. } => None,
            IncidentField::PointSourceP { .. } | IncidentField::Manufactured { .. } => {
                Some(self.displacement(medium, x).map(|u| u.scale(C64::new(-1.0, 0.0))))
            }
        }
    }
}

/// Segment-constant traction datum `g = T u^i` on segment `seg`.
pub fn incident_traction(
    field: &IncidentField,
    medium: &ElasticMedium,
    mesh: &BoundaryMesh,
    seg: usize,
    sampling: TractionSampling,
) -> Result<CVec2> {
    let n = mesh.segment(seg).normal;
    match sampling {
        TractionSampling::StartNode => field.traction(medium, mesh.reference_map(seg, -1.0), n),
        TractionSampling::Midpoint => field.traction(medium, mesh.midpoint(seg), n),
        TractionSampling::SegmentAverage => {
            let g = gauss_legendre(8)?;
            let mut sum = CVec2::default();
            for (xi, w) in g.points() {
                sum += field
                    .traction(medium, mesh.reference_map(seg, xi), n)?
                    .scale(C64::new(w / 2.0, 0.0));
            }
            Ok(sum)
        }
    }
}

/// Stacked data vector `[g_0, g_1, ...]` (two entries per segment).
pub fn traction_data(
    field: &IncidentField,
    medium: &ElasticMedium,
    mesh: &BoundaryMesh,
    sampling: TractionSampling,
) -> Result<Vec<C64>> {
    let mut g = Vec::with_capacity(2 * mesh.n_nodes());
    for s in 0..mesh.n_nodes() {
        let v = incident_traction(field, medium, mesh, s, sampling)?;
        g.extend_from_slice(&v.0);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{sample_curve, CurveSpec};

    fn medium() -> ElasticMedium {
        ElasticMedium::new(2.0, 1.0, 1.0, 1.0).unwrap()
    }

    /// Traction of a displacement field by central differences.
    fn fd_traction(m: &ElasticMedium, f: &dyn Fn(Vec2) -> CVec2, x: Vec2, n: Vec2) -> CVec2 {
        let h = 1e-5;
        let dx = f(x + Vec2::new(h, 0.0)) - f(x - Vec2::new(h, 0.0));
        let dy = f(x + Vec2::new(0.0, h)) - f(x - Vec2::new(0.0, h));
        // grad[a][c] = ∂u_a/∂x_c
        let s = 0.5 / h;
        let grad = [[dx.0[0] * s, dy.0[0] * s], [dx.0[1] * s, dy.0[1] * s]];
        let div = grad[0][0] + grad[1][1];
        let nv = [n.x, n.y];
        let mut t = CVec2::default();
        for a in 0..2 {
            t.0[a] = div * (m.lambda * nv[a]);
            for c in 0..2 {
                t.0[a] += (grad[a][c] + grad[c][a]) * (m.mu * nv[c]);
            }
        }
        t
    }

    #[test]
    fn plane_wave_traction_example() {
        let m = medium();
        let t = IncidentField::plane([1.0, 0.0])
            .traction(&m, Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0))
            .unwrap();
        assert!((t.0[0] - C64::new(0.0, 2.0)).norm() < 1e-15);
        assert!(t.0[1].norm() < 1e-15);
    }

    #[test]
    fn point_source_value_example() {
        let m = medium();
        let f = IncidentField::PointSourceP {
            source: [0.0, 0.0],
            amplitude: 1.0,
        };
        let u = f.displacement(&m, Vec2::new(2.0, 0.0)).unwrap();
        assert!((u.0[0] - C64::new(0.220_025, -0.390_606)).norm() < 1e-6);
        assert!(u.0[1].norm() < 1e-16);
    }

    #[test]
    fn closed_form_tractions_match_finite_differences() {
        let m = ElasticMedium::new(3.0, 0.7, 1.2, 2.5).unwrap();
        let n = Vec2::new(0.28, -0.96);
        let x = Vec2::new(1.3, 0.4);
        for field in [
            IncidentField::plane([0.6, 0.8]),
            IncidentField::PointSourceP {
                source: [0.2, -0.1],
                amplitude: 1.0,
            },
            IncidentField::manufactured([-0.3, 0.2]),
        ] {
            let exact = field.traction(&m, x, n).unwrap();
            let fd = fd_traction(&m, &|p| field.displacement(&m, p).unwrap(), x, n);
            assert!((exact - fd).norm() < 1e-7 * exact.norm(), "{field:?}");
        }
    }

    #[test]
    fn manufactured_source_must_be_inside() {
        let mesh = sample_curve(&CurveSpec::Kite, 32).unwrap();
        assert!(IncidentField::manufactured([0.0, 0.0]).validate(&mesh).is_ok());
        assert!(IncidentField::manufactured([5.0, 0.0]).validate(&mesh).is_err());
        assert!(IncidentField::plane([1.0, 1.0]).validate(&mesh).is_err());
    }

    #[test]
    fn segment_average_of_constant_traction_is_exact() {
        let m = medium();
        let mesh = sample_curve(&CurveSpec::right_triangle(), 12).unwrap();
        // a plane wave with k_p → tiny is nearly constant, compare both modes
        let field = IncidentField::plane([0.0, 1.0]);
        let mid = incident_traction(&field, &m, &mesh, 2, TractionSampling::Midpoint).unwrap();
        let avg = incident_traction(&field, &m, &mesh, 2, TractionSampling::SegmentAverage).unwrap();
        let l = mesh.segment(2).length;
        assert!((mid - avg).norm() < 0.1 * l * l * mid.norm().max(1.0));
    }
}
