use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagnostics::Certificate;
use crate::error::{Error, Result};
use crate::surface::{mean_gauss_from_jet, shape_operator, GraphSurface};

use super::halfint::HalfInt;
use super::winding::{winding_number, LoopSampling};

const REFINE_DIAMETER: f64 = 1e-6;
const REFINE_MAX_ITER: usize = 200;

/// Uniform `nx × ny` grid of nodes on a rectangle, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn square(half_width: f64, n: usize) -> Self {
        Self { x_min: -half_width, x_max: half_width, y_min: -half_width, y_max: half_width, nx: n, ny: n }
    }

    pub fn node(&self, i: usize, j: usize) -> [f64; 2] {
        let fx = if self.nx > 1 { i as f64 / (self.nx - 1) as f64 } else { 0.5 };
        let fy = if self.ny > 1 { j as f64 / (self.ny - 1) as f64 } else { 0.5 };
        [
            self.x_min + (self.x_max - self.x_min) * fx,
            self.y_min + (self.y_max - self.y_min) * fy,
        ]
    }

    pub fn spacing(&self) -> [f64; 2] {
        [
            (self.x_max - self.x_min) / (self.nx.max(2) - 1) as f64,
            (self.y_max - self.y_min) / (self.ny.max(2) - 1) as f64,
        ]
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Relative umbilicity `(H² - K)/(1 + H²)`, with `H² - K` taken from the
/// shape-operator discriminant. NaN where the surface has no jet.
pub fn umbilicity_gauge<G: GraphSurface + ?Sized>(surface: &G, x: f64, y: f64) -> (f64, f64) {
    let j = surface.jet(x, y);
    if !j.is_finite() {
        return (f64::NAN, f64::NAN);
    }
    let (h, _) = mean_gauss_from_jet(&j);
    let disc = 0.25 * shape_operator(&j, x, y).discriminant();
    (disc / (1.0 + h * h), disc)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Umbilic {
    pub position: [f64; 2],
    /// `H² - K` at the refined position.
    pub residual: f64,
    pub index: Option<HalfInt>,
    pub loop_radius: Option<f64>,
    pub cluster_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UmbilicScan {
    pub umbilics: Vec<Umbilic>,
    pub flagged: usize,
    pub evaluated: usize,
    /// Every evaluated node was flagged: an umbilical patch, not isolated points.
    pub totally_umbilical: bool,
    pub tolerance: f64,
}

/// Flags grid nodes with `H² - K ≤ tol (1 + H²)`, groups them into
/// 8-connected clusters and refines each cluster to a single point by a
/// shrinking 5 × 5 lattice search.
pub fn find_umbilics<G: GraphSurface + ?Sized>(surface: &G, grid: &GridSpec, tol: f64) -> UmbilicScan {
    let domain = surface.domain();
    let gauge: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let [x, y] = grid.node(idx % grid.nx, idx / grid.nx);
            if domain.contains(x, y) {
                umbilicity_gauge(surface, x, y).0
            } else {
                f64::NAN
            }
        })
        .collect();
    let evaluated = gauge.iter().filter(|g| !g.is_nan()).count();
    let flagged_mask: Vec<bool> = gauge.iter().map(|&g| g <= tol).collect();
    let flagged = flagged_mask.iter().filter(|&&f| f).count();
    if evaluated > 0 && flagged == evaluated {
        return UmbilicScan { umbilics: Vec::new(), flagged, evaluated, totally_umbilical: true, tolerance: tol };
    }

    let mut seen = vec![false; grid.len()];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for start in 0..grid.len() {
        if !flagged_mask[start] || seen[start] {
            continue;
        }
        let mut cluster = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(idx) = queue.pop_front() {
            cluster.push(idx);
            let (i, j) = ((idx % grid.nx) as i64, (idx / grid.nx) as i64);
            for dj in -1..=1 {
                for di in -1..=1 {
                    let (ni, nj) = (i + di, j + dj);
                    if ni < 0 || nj < 0 || ni >= grid.nx as i64 || nj >= grid.ny as i64 {
                        continue;
                    }
                    let n = nj as usize * grid.nx + ni as usize;
                    if flagged_mask[n] && !seen[n] {
                        seen[n] = true;
                        queue.push_back(n);
                    }
                }
            }
        }
        cluster.sort_unstable();
        clusters.push(cluster);
    }

    let [dx, dy] = grid.spacing();
    let umbilics = clusters
        .par_iter()
        .map(|cluster| {
            let best = cluster
                .iter()
                .copied()
                .fold(cluster[0], |b, idx| if gauge[idx] < gauge[b] { idx } else { b });
            let start = grid.node(best % grid.nx, best / grid.nx);
            let position = refine(surface, start, dx.max(dy));
            Umbilic {
                position,
                residual: umbilicity_gauge(surface, position[0], position[1]).1,
                index: None,
                loop_radius: None,
                cluster_size: cluster.len(),
            }
        })
        .collect();
    UmbilicScan { umbilics, flagged, evaluated, totally_umbilical: false, tolerance: tol }
}

fn refine<G: GraphSurface + ?Sized>(surface: &G, start: [f64; 2], spacing: f64) -> [f64; 2] {
    let domain = surface.domain();
    let mut center = start;
    let mut best = umbilicity_gauge(surface, center[0], center[1]).0;
    let mut half = spacing;
    for _ in 0..REFINE_MAX_ITER {
        if 2.0 * half * std::f64::consts::SQRT_2 <= REFINE_DIAMETER {
            break;
        }
        let mut arg = (2, 2);
        let step = 0.5 * half;
        let mut next = center;
        for j in 0..5 {
            for i in 0..5 {
                let x = center[0] + (i as f64 - 2.0) * step;
                let y = center[1] + (j as f64 - 2.0) * step;
                if !domain.contains(x, y) {
                    continue;
                }
                let g = umbilicity_gauge(surface, x, y).0;
                if g < best {
                    best = g;
                    arg = (i, j);
                    next = [x, y];
                }
            }
        }
        center = next;
        let on_boundary = arg.0 == 0 || arg.0 == 4 || arg.1 == 0 || arg.1 == 4;
        if !on_boundary {
            half *= 0.5;
        }
    }
    center
}

/// Half the winding number of the shape-operator deviation field
/// `(α11 - α22, α12 + α21)` along `lp`.
///
/// Every loop sample must satisfy `H² - K > tol (1 + H²)`.
pub fn line_field_index<G: GraphSurface + ?Sized>(surface: &G, lp: &LoopSampling, tol: f64) -> Result<HalfInt> {
    for [x, y] in lp.points() {
        let (g, residual) = umbilicity_gauge(surface, x, y);
        if !(g > tol) {
            return Err(Error::LoopNotUmbilicFree { x: lp.center[0], y: lp.center[1], radius: lp.radius, residual });
        }
    }
    let w = winding_number(|x, y| shape_operator(&surface.jet(x, y), x, y).deviation_field(), lp)?;
    Ok(HalfInt::from_twice(w))
}

/// Checks that the indices sum to the Euler characteristic `2 - 2 genus`.
pub fn poincare_hopf_check(indices: &[HalfInt], genus: u32) -> Certificate {
    let sum: HalfInt = indices.iter().copied().sum();
    let chi = HalfInt::from_int(2 - 2 * genus as i64);
    let ok = sum == chi && sum.is_integer();
    let margin = -((sum.twice() - chi.twice()).abs() as f64) / 2.0;
    let mut c = Certificate::from_check(
        "poincare-hopf",
        ok,
        margin,
        format!("index sum {sum} against Euler characteristic {chi}"),
    )
    .with_value("index_sum", sum.value())
    .with_value("euler_characteristic", chi.value());
    if !sum.is_integer() {
        c.notes.push("index sum is not an integer".into());
    }
    c.samples = indices.len();
    c
}
