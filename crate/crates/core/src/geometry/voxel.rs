//! Complementary regions of the projected torus link in `R^3`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::angles::AngleTriple;
use super::link::{link_point, stereographic};
use super::{GeomConfig, GeometryError};

/// Occupancy bitset on a `nx x ny x nz` grid of cubes with side `cell`.
#[derive(Clone, Debug, PartialEq)]
pub struct VoxelGrid {
    dims: [usize; 3],
    origin: [f64; 3],
    cell: f64,
    bits: Vec<u64>,
}

impl VoxelGrid {
    pub fn new(dims: [usize; 3], origin: [f64; 3], cell: f64) -> Self {
        let n = dims.iter().product::<usize>();
        VoxelGrid {
            dims,
            origin,
            cell,
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.dims[1] + j) * self.dims[0] + i
    }

    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let i = idx % self.dims[0];
        let j = (idx / self.dims[0]) % self.dims[1];
        [i, j, idx / (self.dims[0] * self.dims[1])]
    }

    pub fn get(&self, idx: usize) -> bool {
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn set(&mut self, idx: usize) {
        self.bits[idx / 64] |= 1 << (idx % 64);
    }

    pub fn count_occupied(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The voxel containing `p`, if inside the box.
    pub fn voxel_of(&self, p: &[f64; 3]) -> Option<usize> {
        let mut c = [0usize; 3];
        for a in 0..3 {
            let x = ((p[a] - self.origin[a]) / self.cell).floor();
            if x < 0.0 || x >= self.dims[a] as f64 {
                return None;
            }
            c[a] = x as usize;
        }
        Some(self.index(c[0], c[1], c[2]))
    }

    /// Adds every voxel sharing a face, edge or corner with an occupied one.
    pub fn dilate(&self) -> VoxelGrid {
        let mut out = self.clone();
        let [nx, ny, nz] = self.dims;
        for idx in 0..self.len() {
            if !self.get(idx) {
                continue;
            }
            let [i, j, k] = self.coords(idx);
            for kk in k.saturating_sub(1)..=(k + 1).min(nz - 1) {
                for jj in j.saturating_sub(1)..=(j + 1).min(ny - 1) {
                    for ii in i.saturating_sub(1)..=(i + 1).min(nx - 1) {
                        out.set(self.index(ii, jj, kk));
                    }
                }
            }
        }
        out
    }

    /// 6-connected components of the unoccupied voxels.
    pub fn complement_components(&self) -> Vec<Component> {
        let [nx, ny, nz] = self.dims;
        let thick = self.dilate();
        let mut seen = self.clone();
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.len() {
            if seen.get(start) {
                continue;
            }
            seen.set(start);
            stack.push(start);
            let mut boundary = false;
            let mut voxels = 0;
            let mut resolved = false;
            while let Some(idx) = stack.pop() {
                voxels += 1;
                resolved |= !thick.get(idx);
                let [i, j, k] = self.coords(idx);
                if i == 0 || j == 0 || k == 0 || i == nx - 1 || j == ny - 1 || k == nz - 1 {
                    boundary = true;
                }
                let mut push = |n: usize| {
                    if !seen.get(n) {
                        seen.set(n);
                        stack.push(n);
                    }
                };
                if i > 0 {
                    push(idx - 1);
                }
                if i + 1 < nx {
                    push(idx + 1);
                }
                if j > 0 {
                    push(idx - nx);
                }
                if j + 1 < ny {
                    push(idx + nx);
                }
                if k > 0 {
                    push(idx - nx * ny);
                }
                if k + 1 < nz {
                    push(idx + nx * ny);
                }
            }
            components.push(Component {
                voxels,
                boundary,
                resolved,
            });
        }
        components
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub voxels: usize,
    /// Whether the component reaches the boundary of the box.
    pub boundary: bool,
    /// Whether some voxel of the component is more than one voxel away from
    /// the occupied set. Pockets failing this are below the grid resolution.
    pub resolved: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinkRegions {
    pub total: usize,
    pub bounded: usize,
    pub unbounded: usize,
}

/// Projected link point at torus angles `(θ1, θ2)`.
fn sigma_point(t1: f64, t2: f64, config: &GeomConfig) -> Result<[f64; 3], GeometryError> {
    let p = link_point(&AngleTriple::new(t1, t2), config)?;
    let y = stereographic(&p, config.rho1)?;
    Ok([y[0], y[1], y[2]])
}

/// Minimum torus grid size per axis.
pub const MIN_TORUS_GRID: usize = 512;

fn sigma_grid(n: usize, config: &GeomConfig) -> Result<Vec<[f64; 3]>, GeometryError> {
    let step = 2.0 * PI / n as f64;
    let rows = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| sigma_point(i as f64 * step, j as f64 * step, config))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Counts complementary components of the projected link `Σ ⊂ R^3`.
///
/// The box is the bounding box of `Σ` enlarged by 10% on each side and then
/// scaled by `box_scale` about its center. Voxels have side
/// `extent / res`, where `extent` is the longest side of the unscaled box, so
/// `box_scale` changes the number of voxels but not their size.
///
/// The samples are thickened by one voxel, and complementary pockets that lie
/// entirely within one further voxel of the thickened surface are dropped as
/// unresolved. Such pockets appear where two sheets meet at a small angle.
pub fn count_link_components(
    config: &GeomConfig,
    res: usize,
    box_scale: f64,
) -> Result<LinkRegions, GeometryError> {
    config.validate()?;
    if res < 8 || !(box_scale >= 1.0) {
        return Err(GeometryError::InvalidConfig("res >= 8 and box_scale >= 1 required".into()));
    }
    let n = MIN_TORUS_GRID.max(8 * res);
    let pts = sigma_grid(n, config)?;

    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in &pts {
        for a in 0..3 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let extent = (0..3).map(|a| hi[a] - lo[a]).fold(0.0, f64::max) * 1.2;
    let cell = extent / res as f64;
    let side = (res as f64 * box_scale).ceil() as usize;
    let half = side as f64 * cell / 2.0;
    let origin: [f64; 3] = std::array::from_fn(|a| (lo[a] + hi[a]) / 2.0 - half);
    let mut grid = VoxelGrid::new([side; 3], origin, cell);

    // Each torus cell is subdivided until consecutive samples are at most
    // half a voxel apart in the image.
    let step = 2.0 * PI / n as f64;
    let at = |i: usize, j: usize| &pts[(i % n) * n + (j % n)];
    let marks = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in 0..n {
                let corners = [at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)];
                let mut span: f64 = 0.0;
                for a in &corners {
                    for b in &corners {
                        span = span.max((0..3).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max));
                    }
                }
                let sub = (2.0 * span / cell).ceil().max(1.0) as usize;
                for u in 0..sub {
                    for v in 0..sub {
                        let p = if u == 0 && v == 0 {
                            *corners[0]
                        } else {
                            let t1 = (i as f64 + u as f64 / sub as f64) * step;
                            let t2 = (j as f64 + v as f64 / sub as f64) * step;
                            sigma_point(t1, t2, config)?
                        };
                        out.push(p);
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<Vec<[f64; 3]>>, GeometryError>>()?;
    for p in marks.iter().flatten() {
        let idx = grid
            .voxel_of(p)
            .ok_or_else(|| GeometryError::InvalidConfig("surface sample outside the voxel box".into()))?;
        grid.set(idx);
    }

    let components: Vec<Component> = grid
        .dilate()
        .complement_components()
        .into_iter()
        .filter(|c| c.resolved)
        .collect();
    let unbounded = components.iter().filter(|c| c.boundary).count();
    Ok(LinkRegions {
        total: components.len(),
        bounded: components.len() - unbounded,
        unbounded,
    })
}

/// Components at `grid_res` and `2 grid_res`; they must agree.
pub fn link_regions_3d(config: &GeomConfig) -> Result<LinkRegions, GeometryError> {
    let coarse = count_link_components(config, config.grid_res, 1.0)?;
    let fine = count_link_components(config, 2 * config.grid_res, 1.0)?;
    if coarse != fine {
        return Err(GeometryError::ResolutionTooLow {
            coarse: (coarse.total, coarse.bounded),
            fine: (fine.total, fine.bounded),
        });
    }
    Ok(coarse)
}
