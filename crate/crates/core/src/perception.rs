//! Depth-image perception: back-projection into world-frame obstacle
//! clouds, voxel downsampling, spatial-hash nearest-neighbor queries,
//! trajectory/obstacle conflict detection, and surface-anchor
//! construction for the refinement gradient.

use std::collections::{HashMap, HashSet};

use crate::geometry::{CameraModel, RigidTransform, Vec3};
use crate::trajectory::BSplineTrajectory;
use crate::world::DepthImage;

/// Perception tuning knobs. Defaults keep clouds around 10^3..10^4 points
/// so a full replan cycle stays inside the latency budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerceptionConfig {
    /// Pixel stride of the back-projection grid.
    pub stride: u32,
    /// Voxel edge length for downsampling, meters.
    pub voxel_size: f64,
    /// Maximum point distance from the capture pose, meters.
    pub horizon: f64,
}

impl Default for PerceptionConfig {
    fn default() -> Self {
        PerceptionConfig {
            stride: 4,
            voxel_size: 0.10,
            horizon: 5.0,
        }
    }
}

/// World-frame obstacle points extracted from one depth image.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalObstacleCloud {
    pub points: Vec<Vec3>,
    pub voxel_size: f64,
    pub horizon: f64,
    pub stamp: f64,
}

impl LocalObstacleCloud {
    pub fn empty(stamp: f64) -> Self {
        let cfg = PerceptionConfig::default();
        LocalObstacleCloud {
            points: Vec::new(),
            voxel_size: cfg.voxel_size,
            horizon: cfg.horizon,
            stamp,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Build the read-only spatial index used for conflict queries.
    pub fn index(&self, cell_size: f64) -> SpatialHashGrid {
        SpatialHashGrid::build(&self.points, cell_size)
    }
}

/// Obstacle surface point plus the unit direction pushing the owning
/// control point into free space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnchorPair {
    pub anchor: Vec3,
    pub direction: Vec3,
    pub owner_index: usize,
}

impl AnchorPair {
    /// Signed distance of a candidate control point along the repulsive
    /// direction: `d = (Q - p) . v`.
    pub fn distance_along(&self, q: &Vec3) -> f64 {
        (q - self.anchor).dot(&self.direction)
    }
}

/// One detected trajectory/obstacle conflict.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Conflict {
    pub control_index: usize,
    pub nearest_point: Vec3,
    pub distance: f64,
}

/// Back-project a depth image into a world-frame obstacle cloud.
///
/// Each valid pixel on the stride grid becomes
/// `camera_pose * (d * K^{-1} * (u, v, 1))` with `d` the stored z-depth;
/// the result is voxel-downsampled, horizon-clipped, and thinned so no two
/// points sit closer than half a voxel.
pub fn backproject(
    depth: &DepthImage,
    camera: &CameraModel,
    camera_pose: &RigidTransform,
    config: &PerceptionConfig,
) -> LocalObstacleCloud {
    let stride = config.stride.max(1);
    let origin = camera_pose.translation.vector;
    let mut raw = Vec::new();
    let mut v = 0u32;
    while v < depth.height {
        let b = (v as f64 - camera.cy) / camera.fy;
        let mut u = 0u32;
        while u < depth.width {
            let d = depth.at(u, v) as f64;
            if d > 0.0 && d >= camera.min_range && d <= camera.max_range {
                let a = (u as f64 - camera.cx) / camera.fx;
                let p_cam = Vec3::new(a * d, b * d, d);
                let p_world = camera_pose * nalgebra::Point3::from(p_cam);
                let p_world = p_world.coords;
                if (p_world - origin).norm() <= config.horizon {
                    raw.push(p_world);
                }
            }
            u += stride;
        }
        v += stride;
    }
    let down = voxel_downsample(&raw, config.voxel_size);
    let points = enforce_min_spacing(&down, config.voxel_size / 2.0);
    LocalObstacleCloud {
        points,
        voxel_size: config.voxel_size,
        horizon: config.horizon,
        stamp: depth.timestamp,
    }
}

pub(crate) fn voxel_key(p: &Vec3, voxel_size: f64) -> (i64, i64, i64) {
    (
        (p.x / voxel_size).floor() as i64,
        (p.y / voxel_size).floor() as i64,
        (p.z / voxel_size).floor() as i64,
    )
}

/// One centroid per occupied voxel. Output order is the first-touch order
/// of the input, so the result is deterministic for a given input order.
pub fn voxel_downsample(points: &[Vec3], voxel_size: f64) -> Vec<Vec3> {
    assert!(voxel_size > 0.0, "voxel size must be positive");
    let mut slots: HashMap<(i64, i64, i64), usize> = HashMap::new();
    let mut accum: Vec<(Vec3, usize)> = Vec::new();
    for p in points {
        let key = voxel_key(p, voxel_size);
        match slots.get(&key) {
            Some(&idx) => {
                accum[idx].0 += p;
                accum[idx].1 += 1;
            }
            None => {
                slots.insert(key, accum.len());
                accum.push((*p, 1));
            }
        }
    }
    accum
        .into_iter()
        .map(|(sum, count)| sum / count as f64)
        .collect()
}

/// Greedy thinning: keep a point only if no already-kept point lies within
/// `min_spacing`. Deterministic for a given input order.
fn enforce_min_spacing(points: &[Vec3], min_spacing: f64) -> Vec<Vec3> {
    if min_spacing <= 0.0 {
        return points.to_vec();
    }
    let mut kept: Vec<Vec3> = Vec::with_capacity(points.len());
    let mut grid: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
    let cell = min_spacing;
    'outer: for p in points {
        let key = voxel_key(p, cell);
        for dz in -1..=1 {
            for dy in -1..=1 {
                for dx in -1..=1 {
                    if let Some(ids) = grid.get(&(key.0 + dx, key.1 + dy, key.2 + dz)) {
                        for &i in ids {
                            if (kept[i] - p).norm() < min_spacing {
                                continue 'outer;
                            }
                        }
                    }
                }
            }
        }
        grid.entry(key).or_default().push(kept.len());
        kept.push(*p);
    }
    kept
}

/// Uniform spatial hash over a fixed point set. Queries with radius up to
/// the cell size are exact: any point within that radius of the query lies
/// in the 3x3x3 cell neighborhood.
pub struct SpatialHashGrid {
    cell: f64,
    buckets: HashMap<(i64, i64, i64), Vec<u32>>,
    points: Vec<Vec3>,
}

impl SpatialHashGrid {
    pub fn build(points: &[Vec3], cell_size: f64) -> Self {
        assert!(cell_size > 0.0, "cell size must be positive");
        let mut buckets: HashMap<(i64, i64, i64), Vec<u32>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            buckets
                .entry(voxel_key(p, cell_size))
                .or_default()
                .push(i as u32);
        }
        SpatialHashGrid {
            cell: cell_size,
            buckets,
            points: points.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, index: usize) -> Vec3 {
        self.points[index]
    }

    /// Nearest stored point strictly within `radius` of `query`.
    /// `radius` must not exceed the cell size (one-ring lookup).
    pub fn nearest_within(&self, query: &Vec3, radius: f64) -> Option<(usize, f64)> {
        debug_assert!(radius <= self.cell * (1.0 + 1e-12));
        let key = voxel_key(query, self.cell);
        let mut best: Option<(usize, f64)> = None;
        for dz in -1i64..=1 {
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    if let Some(ids) = self.buckets.get(&(key.0 + dx, key.1 + dy, key.2 + dz)) {
                        for &i in ids {
                            let d = (self.points[i as usize] - query).norm();
                            if d < radius && best.map_or(true, |(_, bd)| d < bd) {
                                best = Some((i as usize, d));
                            }
                        }
                    }
                }
            }
        }
        best
    }

    /// Whether any stored point lies strictly within `radius` of `query`.
    pub fn any_within(&self, query: &Vec3, radius: f64) -> bool {
        debug_assert!(radius <= self.cell * (1.0 + 1e-12));
        let r2 = radius * radius;
        let key = voxel_key(query, self.cell);
        for dz in -1i64..=1 {
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    if let Some(ids) = self.buckets.get(&(key.0 + dx, key.1 + dy, key.2 + dz)) {
                        for &i in ids {
                            if (self.points[i as usize] - query).norm_squared() < r2 {
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }
}

/// Interior (movable) control-point index range of a spline: the first and
/// last three points encode boundary conditions and stay frozen.
pub fn free_index_range(num_control_points: usize) -> std::ops::Range<usize> {
    if num_control_points < 7 {
        3..3
    } else {
        3..num_control_points - 3
    }
}

/// Report every interior control point whose nearest cloud point is closer
/// than `s_clear`. An empty result means no refinement is needed.
pub fn detect_conflicts(
    traj: &BSplineTrajectory,
    cloud: &LocalObstacleCloud,
    s_clear: f64,
) -> Vec<Conflict> {
    assert!(s_clear > 0.0, "s_clear must be positive");
    let grid = cloud.index(s_clear);
    detect_conflicts_indexed(traj.control_points(), &grid, s_clear)
}

/// Grid-reusing variant for the refinement outer loop.
pub fn detect_conflicts_indexed(
    control_points: &[Vec3],
    grid: &SpatialHashGrid,
    s_clear: f64,
) -> Vec<Conflict> {
    let mut out = Vec::new();
    if grid.is_empty() {
        return out;
    }
    for i in free_index_range(control_points.len()) {
        if let Some((idx, dist)) = grid.nearest_within(&control_points[i], s_clear) {
            out.push(Conflict {
                control_index: i,
                nearest_point: grid.point(idx),
                distance: dist,
            });
        }
    }
    out
}

/// Convert conflicts into anchor pairs `p = nearest point`,
/// `v = (Q_i - p)/|Q_i - p|`, deduplicated to at most one anchor per
/// (control point, voxel) pair.
///
/// Degenerate rule: when `Q_i` coincides with `p`, the direction falls
/// back to the previous control point, and failing that to world +z.
pub fn build_anchors(
    conflicts: &[Conflict],
    control_points: &[Vec3],
    voxel_size: f64,
) -> Vec<AnchorPair> {
    let mut seen: HashSet<(usize, (i64, i64, i64))> = HashSet::new();
    let mut out = Vec::with_capacity(conflicts.len());
    for c in conflicts {
        let key = (c.control_index, voxel_key(&c.nearest_point, voxel_size));
        if !seen.insert(key) {
            continue;
        }
        out.push(make_anchor(c, control_points));
    }
    out
}

pub(crate) fn make_anchor(c: &Conflict, control_points: &[Vec3]) -> AnchorPair {
    let q = control_points[c.control_index];
    let offset = q - c.nearest_point;
    let direction = if offset.norm() > 1e-12 {
        offset.normalize()
    } else {
        let prev = control_points[c.control_index - 1] - c.nearest_point;
        if prev.norm() > 1e-12 {
            prev.normalize()
        } else {
            Vec3::z()
        }
    };
    AnchorPair {
        anchor: c.nearest_point,
        direction,
        owner_index: c.control_index,
    }
}
