//! Shared geometric primitives: 4D poses, yaw arithmetic, analytic obstacle
//! primitives with signed distance and ray intersection, and pinhole camera
//! math.
//!
//! Conventions: the world frame is right-handed with z up; yaw is measured
//! about +z from +x and lives in the half-open interval [-pi, pi). The
//! camera frame has z along the optical axis, x right, y down.

use nalgebra::{Isometry3, Matrix3, Rotation3, Translation3, UnitQuaternion, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::NavError;

pub type Vec3 = Vector3<f64>;

/// Rigid transform (rotation + translation).
pub type RigidTransform = Isometry3<f64>;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Wrap an angle into [-pi, pi). -pi is retained, +pi maps to -pi.
pub fn wrap_yaw(angle: f64) -> Result<f64, NavError> {
    if !angle.is_finite() {
        return Err(NavError::invalid(format!("non-finite angle {angle}")));
    }
    Ok(wrap_angle(angle))
}

/// Infallible wrap for values already known to be finite.
pub(crate) fn wrap_angle(angle: f64) -> f64 {
    let mut a = angle - TWO_PI * ((angle + std::f64::consts::PI) / TWO_PI).floor();
    // Guard against round-off landing exactly on +pi or just below -pi.
    if a >= std::f64::consts::PI {
        a -= TWO_PI;
    }
    if a < -std::f64::consts::PI {
        a += TWO_PI;
    }
    a
}

/// UAV pose: world position plus yaw about +z.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pose4D {
    pub position: Vec3,
    pub yaw: f64,
}

impl Pose4D {
    pub fn new(x: f64, y: f64, z: f64, yaw: f64) -> Result<Self, NavError> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(NavError::invalid("non-finite pose coordinates"));
        }
        Ok(Pose4D {
            position: Vec3::new(x, y, z),
            yaw: wrap_yaw(yaw)?,
        })
    }

    /// Body-to-world rigid transform implied by this pose.
    pub fn body_to_world(&self) -> RigidTransform {
        Isometry3::from_parts(
            Translation3::from(self.position),
            UnitQuaternion::from_axis_angle(&Vec3::z_axis(), self.yaw),
        )
    }
}

/// Axis-aligned box used for flyable-volume bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aabb {
    pub min: Vec3,
    pub max: Vec3,
}

impl Aabb {
    pub fn validate(&self) -> Result<(), NavError> {
        for i in 0..3 {
            if !(self.min[i].is_finite() && self.max[i].is_finite()) {
                return Err(NavError::invalid("non-finite bounds"));
            }
            if self.min[i] >= self.max[i] {
                return Err(NavError::invalid("bounds min must be < max componentwise"));
            }
        }
        Ok(())
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        (0..3).all(|i| p[i] >= self.min[i] && p[i] <= self.max[i])
    }

    pub fn extent(&self) -> Vec3 {
        self.max - self.min
    }
}

/// Analytic obstacle primitive. Every variant has a closed-form signed
/// distance and ray intersection, which together act as the ground-truth
/// clearance and depth oracles for the simulator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Primitive {
    Sphere {
        center: Vec3,
        radius: f64,
    },
    #[serde(rename = "box")]
    AxisAlignedBox {
        min: Vec3,
        max: Vec3,
    },
    #[serde(rename = "cylinder")]
    VerticalCylinder {
        center_xy: [f64; 2],
        radius: f64,
        z_min: f64,
        z_max: f64,
    },
}

impl Primitive {
    pub fn validate(&self) -> Result<(), NavError> {
        match self {
            Primitive::Sphere { center, radius } => {
                if !center.iter().all(|v| v.is_finite()) || !radius.is_finite() {
                    return Err(NavError::invalid("non-finite sphere parameters"));
                }
                if *radius <= 0.0 {
                    return Err(NavError::invalid("sphere radius must be > 0"));
                }
            }
            Primitive::AxisAlignedBox { min, max } => {
                Aabb {
                    min: *min,
                    max: *max,
                }
                .validate()?;
            }
            Primitive::VerticalCylinder {
                center_xy,
                radius,
                z_min,
                z_max,
            } => {
                if !center_xy.iter().all(|v| v.is_finite())
                    || !radius.is_finite()
                    || !z_min.is_finite()
                    || !z_max.is_finite()
                {
                    return Err(NavError::invalid("non-finite cylinder parameters"));
                }
                if *radius <= 0.0 {
                    return Err(NavError::invalid("cylinder radius must be > 0"));
                }
                if z_min >= z_max {
                    return Err(NavError::invalid("cylinder requires z_min < z_max"));
                }
            }
        }
        Ok(())
    }

    /// Exact signed distance (negative inside).
    pub fn signed_distance(&self, p: &Vec3) -> f64 {
        match self {
            Primitive::Sphere { center, radius } => (p - center).norm() - radius,
            Primitive::AxisAlignedBox { min, max } => {
                // Componentwise distance to the slab; negative inside.
                let qx = (min.x - p.x).max(p.x - max.x);
                let qy = (min.y - p.y).max(p.y - max.y);
                let qz = (min.z - p.z).max(p.z - max.z);
                let outside =
                    Vec3::new(qx.max(0.0), qy.max(0.0), qz.max(0.0)).norm();
                let inside = qx.max(qy).max(qz).min(0.0);
                outside + inside
            }
            Primitive::VerticalCylinder {
                center_xy,
                radius,
                z_min,
                z_max,
            } => {
                let dr = ((p.x - center_xy[0]).powi(2) + (p.y - center_xy[1]).powi(2)).sqrt()
                    - radius;
                let dz = (z_min - p.z).max(p.z - z_max);
                let outside = (dr.max(0.0).powi(2) + dz.max(0.0).powi(2)).sqrt();
                let inside = dr.max(dz).min(0.0);
                outside + inside
            }
        }
    }

    /// Smallest positive ray parameter at which the ray enters (or, from
    /// inside, exits) the primitive. `dir` must be unit length.
    pub fn ray_hit(&self, origin: &Vec3, dir: &Vec3) -> Option<f64> {
        const EPS: f64 = 1e-12;
        match self {
            Primitive::Sphere { center, radius } => {
                let oc = origin - center;
                let b = oc.dot(dir);
                let c = oc.dot(&oc) - radius * radius;
                let disc = b * b - c;
                if disc < 0.0 {
                    return None;
                }
                let s = disc.sqrt();
                let t1 = -b - s;
                let t2 = -b + s;
                if t1 > EPS {
                    Some(t1)
                } else if t2 > EPS {
                    Some(t2)
                } else {
                    None
                }
            }
            Primitive::AxisAlignedBox { min, max } => {
                let mut t_near = f64::NEG_INFINITY;
                let mut t_far = f64::INFINITY;
                for i in 0..3 {
                    if dir[i].abs() < EPS {
                        if origin[i] < min[i] || origin[i] > max[i] {
                            return None;
                        }
                    } else {
                        let inv = 1.0 / dir[i];
                        let mut t1 = (min[i] - origin[i]) * inv;
                        let mut t2 = (max[i] - origin[i]) * inv;
                        if t1 > t2 {
                            std::mem::swap(&mut t1, &mut t2);
                        }
                        t_near = t_near.max(t1);
                        t_far = t_far.min(t2);
                        if t_near > t_far {
                            return None;
                        }
                    }
                }
                if t_near > EPS {
                    Some(t_near)
                } else if t_far > EPS {
                    Some(t_far)
                } else {
                    None
                }
            }
            Primitive::VerticalCylinder {
                center_xy,
                radius,
                z_min,
                z_max,
            } => {
                let mut best: Option<f64> = None;
                let mut consider = |t: f64| {
                    if t > EPS && best.map_or(true, |b| t < b) {
                        best = Some(t);
                    }
                };
                // Lateral surface: 2D circle intersection with z capped.
                let ox = origin.x - center_xy[0];
                let oy = origin.y - center_xy[1];
                let a = dir.x * dir.x + dir.y * dir.y;
                if a > EPS {
                    let b = ox * dir.x + oy * dir.y;
                    let c = ox * ox + oy * oy - radius * radius;
                    let disc = b * b - a * c;
                    if disc >= 0.0 {
                        let s = disc.sqrt();
                        for t in [(-b - s) / a, (-b + s) / a] {
                            let z = origin.z + t * dir.z;
                            if z >= *z_min && z <= *z_max {
                                consider(t);
                            }
                        }
                    }
                }
                // End caps.
                if dir.z.abs() > EPS {
                    for zc in [*z_min, *z_max] {
                        let t = (zc - origin.z) / dir.z;
                        let hx = ox + t * dir.x;
                        let hy = oy + t * dir.y;
                        if hx * hx + hy * hy <= radius * radius {
                            consider(t);
                        }
                    }
                }
                best
            }
        }
    }
}

/// Signed distance from `point` to the union of `world` (min over
/// primitives; exact outside, conservative inside overlaps). Empty world
/// returns +infinity.
pub fn signed_distance(world: &[Primitive], point: &Vec3) -> f64 {
    world
        .iter()
        .map(|p| p.signed_distance(point))
        .fold(f64::INFINITY, f64::min)
}

/// Smallest positive hit distance along `direction` (unit, checked to
/// 1e-9) within `max_range`, or `None` when nothing is hit.
pub fn ray_cast(
    world: &[Primitive],
    origin: &Vec3,
    direction: &Vec3,
    max_range: f64,
) -> Result<Option<f64>, NavError> {
    let n = direction.norm();
    if (n - 1.0).abs() > 1e-9 {
        return Err(NavError::invalid(format!(
            "ray direction must be unit length, got norm {n}"
        )));
    }
    Ok(ray_cast_unit(world, origin, direction, max_range))
}

/// Internal fast path: caller guarantees `direction` is unit length.
pub(crate) fn ray_cast_unit(
    world: &[Primitive],
    origin: &Vec3,
    direction: &Vec3,
    max_range: f64,
) -> Option<f64> {
    let mut best: Option<f64> = None;
    for prim in world {
        if let Some(t) = prim.ray_hit(origin, direction) {
            if t <= max_range && best.map_or(true, |b| t < b) {
                best = Some(t);
            }
        }
    }
    best
}

/// Pinhole depth camera intrinsics plus its fixed mounting on the body.
#[derive(Clone, Debug, PartialEq)]
pub struct CameraModel {
    pub width: u32,
    pub height: u32,
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub min_range: f64,
    pub max_range: f64,
    pub body_to_camera: RigidTransform,
}

impl Default for CameraModel {
    fn default() -> Self {
        CameraModel {
            width: 640,
            height: 480,
            fx: 385.0,
            fy: 385.0,
            cx: 320.0,
            cy: 240.0,
            min_range: 0.3,
            max_range: 5.0,
            body_to_camera: default_body_to_camera(),
        }
    }
}

/// Forward-mounted camera: optical axis along body +x, image x along
/// body -y, image y along body -z, offset 0.1 m ahead of the body origin.
pub fn default_body_to_camera() -> RigidTransform {
    let rot = Rotation3::from_matrix_unchecked(Matrix3::new(
        0.0, 0.0, 1.0, //
        -1.0, 0.0, 0.0, //
        0.0, -1.0, 0.0,
    ));
    Isometry3::from_parts(
        Translation3::new(0.1, 0.0, 0.0),
        UnitQuaternion::from_rotation_matrix(&rot),
    )
}

impl CameraModel {
    pub fn validate(&self) -> Result<(), NavError> {
        if self.width == 0 || self.height == 0 {
            return Err(NavError::invalid("camera resolution must be nonzero"));
        }
        if !(self.fx > 0.0 && self.fy > 0.0) {
            return Err(NavError::invalid("camera focal lengths must be > 0"));
        }
        if !(self.min_range > 0.0 && self.min_range < self.max_range) {
            return Err(NavError::invalid("camera requires 0 < min_range < max_range"));
        }
        for v in [self.fx, self.fy, self.cx, self.cy, self.min_range, self.max_range] {
            if !v.is_finite() {
                return Err(NavError::invalid("non-finite camera intrinsics"));
            }
        }
        Ok(())
    }

    /// Unit ray through pixel (u, v) in the camera frame (z optical axis).
    pub fn pixel_to_camera_ray(&self, u: f64, v: f64) -> Result<Vec3, NavError> {
        if !(u >= 0.0 && u < self.width as f64 && v >= 0.0 && v < self.height as f64) {
            return Err(NavError::invalid(format!(
                "pixel ({u}, {v}) outside {}x{} image",
                self.width, self.height
            )));
        }
        Ok(self.pixel_ray_unchecked(u, v))
    }

    pub(crate) fn pixel_ray_unchecked(&self, u: f64, v: f64) -> Vec3 {
        Vec3::new((u - self.cx) / self.fx, (v - self.cy) / self.fy, 1.0).normalize()
    }

    /// Project a camera-frame point back to pixel coordinates. `None` for
    /// points at or behind the image plane.
    pub fn project(&self, p_cam: &Vec3) -> Option<(f64, f64)> {
        if p_cam.z <= 0.0 {
            return None;
        }
        Some((
            self.fx * p_cam.x / p_cam.z + self.cx,
            self.fy * p_cam.y / p_cam.z + self.cy,
        ))
    }
}
