//! Scans of the lower bound over the d = 4 MUB families `𝒯(x, y, z)` and `𝒫(x)`.

use std::f64::consts::PI;

use itertools::iproduct;
use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{separable_lower_bound, OptimizerOptions};
use crate::designs::{mub_pair_family_d4, mub_triple_family_d4, MubSet};
use crate::error::{Error, Result};
use crate::sampling::stream_rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    /// Grid points per axis on `[0, π]`, endpoints included.
    pub grid_steps: usize,
    /// Restarts and sweep cap per grid point.
    pub grid_restarts: usize,
    pub grid_sweeps: usize,
    /// Restarts per evaluation during refinement; the two reported extremes are
    /// re-evaluated with the full optimizer budget.
    pub refine_restarts: usize,
    /// How many of the best grid points are refined for each extreme.
    pub refine_top: usize,
    pub refine_radius: f64,
    pub refine_min_step: f64,
    pub optimizer: OptimizerOptions,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            grid_steps: 25,
            grid_restarts: 8,
            grid_sweeps: 200,
            refine_restarts: 64,
            refine_top: 10,
            refine_radius: PI / 25.0,
            refine_min_step: PI / 200.0,
            optimizer: OptimizerOptions::for_dim(4),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub lower: f64,
}

impl FamilyPoint {
    fn params(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyScan {
    /// Smallest lower bound over the family and where it is attained.
    pub lower_min: FamilyPoint,
    /// Largest lower bound over the family and where it is attained.
    pub lower_max: FamilyPoint,
    pub per_point: Vec<FamilyPoint>,
    pub refined: Vec<FamilyPoint>,
}

fn point_seed(seed: u64, index: u64) -> u64 {
    stream_rng(seed, index).next_u64()
}

fn lower_at(set: Result<MubSet>, opts: &OptimizerOptions) -> Result<f64> {
    let set = set?;
    let pairs: Vec<_> = set.vectors().into_iter().map(|v| (v.clone(), v)).collect();
    Ok(separable_lower_bound(&pairs, opts)?.value)
}

fn triple_lower(p: [f64; 3], opts: &OptimizerOptions) -> Result<f64> {
    lower_at(mub_triple_family_d4(p[0], p[1], p[2]), opts)
}

fn check_steps(steps: usize, min: usize) -> Result<()> {
    if steps < min {
        return Err(Error::ParameterOutOfRange {
            name: "grid_steps",
            value: steps as f64,
            min: min as f64,
            max: f64::INFINITY,
        });
    }
    Ok(())
}

fn grid(steps: usize) -> Vec<f64> {
    (0..steps).map(|k| PI * k as f64 / (steps - 1) as f64).collect()
}

/// Compass search from `start`, accepting only strict improvements.
fn refine(start: FamilyPoint, maximize: bool, scan: &ScanOptions, opts: &OptimizerOptions) -> Result<FamilyPoint> {
    let better = |a: f64, b: f64| if maximize { a > b + 1e-10 } else { a < b - 1e-10 };
    let mut p = start.params();
    let mut value = triple_lower(p, opts)?;
    let mut step = scan.refine_radius;
    while step >= scan.refine_min_step {
        let mut moved = false;
        for axis in 0..3 {
            for sign in [-1.0, 1.0] {
                let mut q = p;
                q[axis] = (q[axis] + sign * step).clamp(0.0, PI);
                if q == p {
                    continue;
                }
                let v = triple_lower(q, opts)?;
                if better(v, value) {
                    p = q;
                    value = v;
                    moved = true;
                }
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    Ok(FamilyPoint {
        x: p[0],
        y: p[1],
        z: p[2],
        lower: value,
    })
}

/// Best point; values within `1e-8` are ties, broken by smallest parameters.
fn extreme(points: &[FamilyPoint], maximize: bool) -> FamilyPoint {
    let target = if maximize {
        points.iter().map(|p| p.lower).fold(f64::NEG_INFINITY, f64::max)
    } else {
        points.iter().map(|p| p.lower).fold(f64::INFINITY, f64::min)
    };
    *points
        .iter()
        .filter(|p| (p.lower - target).abs() <= 1e-8)
        .min_by(|a, b| a.params().partial_cmp(&b.params()).expect("finite"))
        .expect("nonempty")
}

/// Grid scan of the lower bound of `𝒯(x, y, z)` over `[0, π]³` with local refinement.
pub fn d4_family_scan(scan: &ScanOptions) -> Result<FamilyScan> {
    check_steps(scan.grid_steps, 9)?;
    if scan.refine_top == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "refine_top",
            value: 0.0,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    let axis = grid(scan.grid_steps);
    let params: Vec<[f64; 3]> = iproduct!(&axis, &axis, &axis).map(|(&x, &y, &z)| [x, y, z]).collect();
    let per_point = params
        .par_iter()
        .enumerate()
        .map(|(k, &p)| {
            let opts = OptimizerOptions {
                restarts: scan.grid_restarts,
                max_sweeps: scan.grid_sweeps,
                seed: point_seed(scan.optimizer.seed, k as u64),
                ..scan.optimizer
            };
            Ok(FamilyPoint {
                x: p[0],
                y: p[1],
                z: p[2],
                lower: triple_lower(p, &opts)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut order: Vec<usize> = (0..per_point.len()).collect();
    order.sort_by(|&a, &b| per_point[a].lower.total_cmp(&per_point[b].lower).then(a.cmp(&b)));
    let lowest: Vec<FamilyPoint> = order.iter().take(scan.refine_top).map(|&k| per_point[k]).collect();
    order.sort_by(|&a, &b| per_point[b].lower.total_cmp(&per_point[a].lower).then(a.cmp(&b)));
    let highest: Vec<FamilyPoint> = order.iter().take(scan.refine_top).map(|&k| per_point[k]).collect();

    let refine_opts = OptimizerOptions {
        restarts: scan.refine_restarts,
        ..scan.optimizer
    };
    let refine_all = |starts: &[FamilyPoint], maximize: bool| {
        starts
            .par_iter()
            .map(|&p| refine(p, maximize, scan, &refine_opts))
            .collect::<Result<Vec<_>>>()
    };
    let refined_min = refine_all(&lowest, false)?;
    let refined_max = refine_all(&highest, true)?;
    let confirm = |p: FamilyPoint| -> Result<FamilyPoint> {
        Ok(FamilyPoint {
            lower: triple_lower(p.params(), &scan.optimizer)?,
            ..p
        })
    };
    let lower_min = confirm(extreme(&refined_min, false))?;
    let lower_max = confirm(extreme(&refined_max, true))?;
    let mut refined = refined_min;
    refined.extend(refined_max);
    Ok(FamilyScan {
        lower_min,
        lower_max,
        per_point,
        refined,
    })
}

/// Lower bound of the pair `𝒫(x)` on a grid of `[0, π]`.
pub fn d4_pair_scan(steps: usize, opts: &OptimizerOptions) -> Result<Vec<(f64, f64)>> {
    check_steps(steps, 2)?;
    grid(steps)
        .into_par_iter()
        .map(|x| Ok((x, lower_at(mub_pair_family_d4(x), opts)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn extendible_triple_point() {
        let opts = OptimizerOptions::for_dim(4);
        let v = triple_lower([FRAC_PI_2; 3], &opts).unwrap();
        assert!((v - 0.25).abs() < 1e-6, "{v}");
        let v = triple_lower([FRAC_PI_2, 0.0, 0.0], &opts).unwrap();
        assert!((v - 0.5).abs() < 1e-6, "{v}");
    }

    #[test]
    fn pair_family_lower_is_zero() {
        let rows = d4_pair_scan(5, &OptimizerOptions::for_dim(4).with_restarts(32)).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|&(_, l)| l.abs() < 1e-8));
    }

    #[test]
    fn small_grid_rejected() {
        let scan = ScanOptions {
            grid_steps: 4,
            ..ScanOptions::default()
        };
        assert!(d4_family_scan(&scan).is_err());
    }
}
