//! Small fixed-size vector/matrix types and the dense block matrix used for
//! the Galerkin operators.

use std::io::Write;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Real point or direction in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn scale(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }

    /// Quarter turn counter-clockwise, i.e. the action of `[[0,-1],[1,0]]`.
    pub fn rot90(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Complex 2-vector: a displacement or traction value at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec2(pub [C64; 2]);

impl CVec2 {
    pub const ZERO: CVec2 = CVec2([ZERO, ZERO]);

    pub fn new(a: C64, b: C64) -> Self {
        Self([a, b])
    }

    pub fn from_real(v: Vec2) -> Self {
        Self([C64::from(v.x), C64::from(v.y)])
    }

    pub fn scale(self, s: C64) -> Self {
        Self([self.0[0] * s, self.0[1] * s])
    }

    pub fn norm_sqr(self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|z| z.is_finite())
    }
}

impl Add for CVec2 {
    type Output = CVec2;
    fn add(self, o: CVec2) -> CVec2 {
        CVec2([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl Sub for CVec2 {
    type Output = CVec2;
    fn sub(self, o: CVec2) -> CVec2 {
        CVec2([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

impl AddAssign for CVec2 {
    fn add_assign(&mut self, o: CVec2) {
        self.0[0] += o.0[0];
        self.0[1] += o.0[1];
    }
}

/// Complex 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CMat22(pub [[C64; 2]; 2]);

impl CMat22 {
    pub const ZERO: CMat22 = CMat22([[ZERO, ZERO], [ZERO, ZERO]]);

    pub fn identity() -> Self {
        Self::diag(C64::from(1.0))
    }

    pub fn diag(s: C64) -> Self {
        Self([[s, ZERO], [ZERO, s]])
    }

    /// The quarter-turn `N = [[0,-1],[1,0]]`.
    pub fn rot90() -> Self {
        Self::from_real([[0.0, -1.0], [1.0, 0.0]])
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Self([
            [C64::from(m[0][0]), C64::from(m[0][1])],
            [C64::from(m[1][0]), C64::from(m[1][1])],
        ])
    }

    /// Real outer product `a b^T`.
    pub fn outer(a: Vec2, b: Vec2) -> Self {
        Self::from_real([[a.x * b.x, a.x * b.y], [a.y * b.x, a.y * b.y]])
    }

    pub fn transpose(self) -> Self {
        let m = self.0;
        Self([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn scale(self, s: C64) -> Self {
        let m = self.0;
        Self([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn scale_re(self, s: f64) -> Self {
        let m = self.0;
        Self([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn mul_vec(self, v: CVec2) -> CVec2 {
        let m = self.0;
        CVec2([m[0][0] * v.0[0] + m[0][1] * v.0[1], m[1][0] * v.0[0] + m[1][1] * v.0[1]])
    }

    pub fn trace(self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Largest entry modulus.
    pub fn max_abs(self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }
}

impl Add for CMat22 {
    type Output = CMat22;
    fn add(self, o: CMat22) -> CMat22 {
        let (a, b) = (self.0, o.0);
        CMat22([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for CMat22 {
    type Output = CMat22;
    fn sub(self, o: CMat22) -> CMat22 {
        self + o.scale_re(-1.0)
    }
}

impl AddAssign for CMat22 {
    fn add_assign(&mut self, o: CMat22) {
        *self = *self + o;
    }
}

impl Mul for CMat22 {
    type Output = CMat22;
    fn mul(self, o: CMat22) -> CMat22 {
        let (a, b) = (self.0, o.0);
        let mut c = [[ZERO; 2]; 2];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, cij) in row.iter_mut().enumerate() {
                *cij = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        CMat22(c)
    }
}

/// Dense `2N x 2N` complex matrix addressed as an `N x N` grid of 2x2
/// blocks. Block `(i, j)` occupies rows `2i..2i+2` and columns `2j..2j+2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix {
    n_nodes: usize,
    data: Vec<C64>,
}

impl BlockMatrix {
    pub fn zeros(n_nodes: usize) -> Self {
        let dim = 2 * n_nodes;
        Self {
            n_nodes,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn dim(&self) -> usize {
        2 * self.n_nodes
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim() + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: C64) {
        let dim = self.dim();
        self.data[row * dim + col] = v;
    }

    pub fn block(&self, i: usize, j: usize) -> CMat22 {
        let (r, c) = (2 * i, 2 * j);
        CMat22([
            [self.get(r, c), self.get(r, c + 1)],
            [self.get(r + 1, c), self.get(r + 1, c + 1)],
        ])
    }

    pub fn set_block(&mut self, i: usize, j: usize, b: CMat22) {
        let (r, c) = (2 * i, 2 * j);
        for a in 0..2 {
            for bcol in 0..2 {
                self.set(r + a, c + bcol, b.0[a][bcol]);
            }
        }
    }

    pub fn add_block(&mut self, i: usize, j: usize, b: CMat22) {
        let dim = self.dim();
        let (r, c) = (2 * i, 2 * j);
        for a in 0..2 {
            let row = &mut self.data[(r + a) * dim + c..(r + a) * dim + c + 2];
            row[0] += b.0[a][0];
            row[1] += b.0[a][1];
        }
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    /// Mutable views of whole block rows (two matrix rows each), suitable
    /// for parallel assembly where each worker owns one test node.
    pub fn par_block_rows_mut(&mut self) -> rayon::slice::ChunksMut<'_, C64> {
        let width = 2 * self.dim();
        self.data.par_chunks_mut(width)
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: C64, other: &BlockMatrix) {
        assert_eq!(self.n_nodes, other.n_nodes, "block matrix size mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn scaled(&self, s: C64) -> BlockMatrix {
        BlockMatrix {
            n_nodes: self.n_nodes,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn matvec(&self, x: &[C64]) -> Result<Vec<C64>> {
        let dim = self.dim();
        if x.len() != dim {
            return Err(Error::Dimension(format!(
                "vector of length {} against matrix of order {dim}",
                x.len()
            )));
        }
        Ok(self
            .data
            .chunks(dim)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        let dim = self.dim();
        let mut sums = vec![0.0; dim];
        for row in self.data.chunks(dim) {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v.norm();
            }
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    /// Writes every entry as `row,col,re,im` (0-based, full precision).
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        writeln!(w, "# dense complex matrix, order {}, 0-based indices", self.dim())?;
        writeln!(w, "row,col,re,im")?;
        let dim = self.dim();
        for (k, v) in self.data.iter().enumerate() {
            writeln!(w, "{},{},{:e},{:e}", k / dim, k % dim, v.re, v.im)?;
        }
        Ok(())
    }
}
