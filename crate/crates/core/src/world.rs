//! Deterministic simulation environment: scenario loading and validation,
//! analytic depth rendering, UAV plant dynamics with actuation lag, and
//! ground-truth collision checking.

use nalgebra::Vector2;
use serde_json::{Map, Value};

use crate::error::NavError;
use crate::geometry::{
    ray_cast_unit, signed_distance, wrap_angle, Aabb, CameraModel, Pose4D, Primitive,
    RigidTransform, Vec3,
};

/// Kinodynamic limits for the vehicle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Limits {
    pub v_max: f64,
    pub a_max: f64,
    pub yaw_rate_max: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            v_max: 2.0,
            a_max: 4.0,
            yaw_rate_max: 1.5,
        }
    }
}

/// First-order tracking plant parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlantParams {
    /// Velocity lag time constant in seconds.
    pub tau: f64,
    /// Position feedback gain in 1/s.
    pub k_p: f64,
}

impl Default for PlantParams {
    fn default() -> Self {
        PlantParams { tau: 0.1, k_p: 1.0 }
    }
}

/// One navigation goal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Goal {
    pub position: Vec3,
    pub yaw: f64,
    pub success_radius: f64,
}

/// Declarative world plus task description.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioSpec {
    pub name: String,
    pub seed: u64,
    pub world: Vec<Primitive>,
    pub start: Pose4D,
    pub goals: Vec<Goal>,
    pub instruction: String,
    pub limits: Limits,
    pub camera: CameraModel,
    pub bounds: Aabb,
    pub drone_radius: f64,
    pub plant: PlantParams,
}

/// Per-pixel z-depth in meters; 0.0 encodes no-return/invalid.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthImage {
    pub width: u32,
    pub height: u32,
    pub values: Vec<f32>,
    pub timestamp: f64,
}

impl DepthImage {
    pub fn at(&self, u: u32, v: u32) -> f32 {
        self.values[(v * self.width + u) as usize]
    }
}

/// Kinematic vehicle state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimState {
    pub pose: Pose4D,
    pub velocity: Vec3,
    pub time: f64,
}

/// Low-level setpoint consumed by the plant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Command {
    pub position: Vec3,
    pub velocity: Vec3,
    pub acceleration: Vec3,
    pub yaw: f64,
    pub timestamp: f64,
}

/// Ground-truth clearance report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollisionCheck {
    pub clearance: f64,
    pub collided: bool,
}

/// `clearance = signed_distance - drone_radius`; collided iff negative.
pub fn check_collision(world: &[Primitive], pose: &Pose4D, drone_radius: f64) -> CollisionCheck {
    let clearance = signed_distance(world, &pose.position) - drone_radius;
    CollisionCheck {
        clearance,
        collided: clearance < 0.0,
    }
}

/// Transient overshoot allowance of the lagging plant relative to `v_max`.
pub const PLANT_OVERSHOOT_FACTOR: f64 = 1.25;

/// Advance the plant by one step of `dt` seconds (first-order velocity lag
/// with position feedback, yaw slewing at the configured rate limit).
///
/// The velocity update uses the exact zero-order-hold discretization of
/// `dv/dt = (v_cmd - v)/tau`, so constant-command responses match the
/// continuous closed form to round-off rather than to O(dt).
pub fn step_plant(
    state: &SimState,
    command: &Command,
    dt: f64,
    limits: &Limits,
    plant: &PlantParams,
) -> Result<SimState, NavError> {
    if !(dt > 0.0 && dt <= 0.1) {
        return Err(NavError::invalid(format!(
            "plant step dt must be in (0, 0.1], got {dt}"
        )));
    }
    let v_cmd_eff =
        command.velocity + plant.k_p * (command.position - state.pose.position);
    let alpha = 1.0 - (-dt / plant.tau).exp();
    let mut v_next = state.velocity + alpha * (v_cmd_eff - state.velocity);

    let v_cap = PLANT_OVERSHOOT_FACTOR * limits.v_max;
    let speed = v_next.norm();
    if speed > v_cap {
        v_next *= v_cap / speed;
    }

    let position = state.pose.position + v_next * dt;

    let delta = wrap_angle(command.yaw - state.pose.yaw);
    let max_step = limits.yaw_rate_max * dt;
    let yaw = wrap_angle(state.pose.yaw + delta.clamp(-max_step, max_step));

    Ok(SimState {
        pose: Pose4D {
            position,
            yaw,
        },
        velocity: v_next,
        time: state.time + dt,
    })
}

/// Render a z-depth image of `world` from `camera_pose` (camera frame:
/// z optical axis, x right, y down). Misses and hits whose z-depth falls
/// outside `[min_range, max_range]` encode 0.0.
pub fn render_depth(
    world: &[Primitive],
    camera: &CameraModel,
    camera_pose: &RigidTransform,
    t: f64,
) -> DepthImage {
    let w = camera.width as usize;
    let h = camera.height as usize;
    let mut values = vec![0.0f32; w * h];

    let rot = camera_pose.rotation.to_rotation_matrix();
    let m = rot.matrix();
    let c0 = Vec3::new(m[(0, 0)], m[(1, 0)], m[(2, 0)]);
    let c1 = Vec3::new(m[(0, 1)], m[(1, 1)], m[(2, 1)]);
    let c2 = Vec3::new(m[(0, 2)], m[(1, 2)], m[(2, 2)]);
    let origin = camera_pose.translation.vector;

    let xs: Vec<f64> = (0..w).map(|u| (u as f64 - camera.cx) / camera.fx).collect();

    for v in 0..h {
        let b = (v as f64 - camera.cy) / camera.fy;
        let row = &mut values[v * w..(v + 1) * w];
        for (u, slot) in row.iter_mut().enumerate() {
            let a = xs[u];
            let inv_norm = 1.0 / (a * a + b * b + 1.0).sqrt();
            let dir = (a * c0 + b * c1 + c2) * inv_norm;
            // Cap the ray so that z-depth stays below max_range.
            let max_t = camera.max_range / inv_norm + 1e-9;
            if let Some(hit) = ray_cast_unit(world, &origin, &dir, max_t) {
                let z = hit * inv_norm;
                if z >= camera.min_range && z <= camera.max_range {
                    *slot = z as f32;
                }
            }
        }
    }

    DepthImage {
        width: camera.width,
        height: camera.height,
        values,
        timestamp: t,
    }
}

// ---------------------------------------------------------------------------
// Scenario document parsing and serialization.
//
// The document is JSON with a fixed schema; unknown keys, missing required
// fields, and invariant breaches all surface as ValidationError so that
// syntax problems (ParseError) stay distinguishable.
// ---------------------------------------------------------------------------

/// Parse and fully validate a scenario document.
pub fn load_scenario(document: &str) -> Result<ScenarioSpec, NavError> {
    let value: Value = serde_json::from_str(document).map_err(|e| NavError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    scenario_from_value(&value)
}

pub fn scenario_from_value(value: &Value) -> Result<ScenarioSpec, NavError> {
    let obj = as_object(value, "scenario")?;
    check_keys(
        obj,
        "scenario",
        &[
            "name",
            "seed",
            "world",
            "start",
            "goals",
            "instruction",
            "limits",
            "camera",
            "bounds",
            "drone_radius",
            "plant",
        ],
    )?;

    let name = match obj.get("name") {
        Some(v) => as_str(v, "name")?.to_string(),
        None => "scenario".to_string(),
    };
    let seed = match obj.get("seed") {
        Some(v) => v
            .as_u64()
            .ok_or_else(|| NavError::validation("seed", "expected unsigned integer"))?,
        None => 0,
    };
    let instruction = match obj.get("instruction") {
        Some(v) => as_str(v, "instruction")?.to_string(),
        None => String::new(),
    };

    let world = match obj.get("world") {
        Some(v) => parse_world(v)?,
        None => Vec::new(),
    };

    let start = match obj.get("start") {
        Some(v) => parse_pose(v, "start")?,
        None => Pose4D::new(0.0, 0.0, 1.0, 0.0).unwrap(),
    };

    let goals_value = obj
        .get("goals")
        .ok_or_else(|| NavError::validation("goals", "required field missing"))?;
    let goals = parse_goals(goals_value)?;
    if goals.is_empty() {
        return Err(NavError::validation("goals", "must list at least one goal"));
    }

    let limits = match obj.get("limits") {
        Some(v) => parse_limits(v)?,
        None => Limits::default(),
    };
    let camera = match obj.get("camera") {
        Some(v) => parse_camera(v)?,
        None => CameraModel::default(),
    };
    let bounds = match obj.get("bounds") {
        Some(v) => parse_bounds(v)?,
        None => Aabb {
            min: Vec3::new(-10.0, -10.0, 0.0),
            max: Vec3::new(10.0, 10.0, 5.0),
        },
    };
    let drone_radius = match obj.get("drone_radius") {
        Some(v) => as_f64(v, "drone_radius")?,
        None => 0.25,
    };
    let plant = match obj.get("plant") {
        Some(v) => parse_plant(v)?,
        None => PlantParams::default(),
    };

    let spec = ScenarioSpec {
        name,
        seed,
        world,
        start,
        goals,
        instruction,
        limits,
        camera,
        bounds,
        drone_radius,
        plant,
    };
    validate_scenario(&spec)?;
    Ok(spec)
}

/// Invariant checks shared by parsing and programmatic construction.
pub fn validate_scenario(spec: &ScenarioSpec) -> Result<(), NavError> {
    spec.bounds
        .validate()
        .map_err(|e| NavError::validation("bounds", e.to_string()))?;
    spec.camera
        .validate()
        .map_err(|e| NavError::validation("camera", e.to_string()))?;
    for (i, prim) in spec.world.iter().enumerate() {
        prim.validate()
            .map_err(|e| NavError::validation(format!("world[{i}]"), e.to_string()))?;
    }
    if !(spec.drone_radius > 0.0 && spec.drone_radius.is_finite()) {
        return Err(NavError::validation("drone_radius", "must be > 0"));
    }
    if !(spec.limits.v_max > 0.0 && spec.limits.a_max > 0.0 && spec.limits.yaw_rate_max > 0.0) {
        return Err(NavError::validation("limits", "v_max, a_max, yaw_rate_max must be > 0"));
    }
    if !(spec.plant.tau > 0.0 && spec.plant.k_p >= 0.0) {
        return Err(NavError::validation("plant", "tau must be > 0 and k_p >= 0"));
    }
    let check_point = |label: &str, p: &Vec3| -> Result<(), NavError> {
        if !spec.bounds.contains(p) {
            return Err(NavError::validation(label, "must lie inside bounds"));
        }
        let clearance = signed_distance(&spec.world, p) - spec.drone_radius;
        if clearance < 0.0 {
            return Err(NavError::validation(
                label,
                format!("clearance {clearance:.3} m below drone radius"),
            ));
        }
        Ok(())
    };
    check_point("start", &spec.start.position)?;
    for (i, g) in spec.goals.iter().enumerate() {
        if !(g.success_radius > 0.0) {
            return Err(NavError::validation(
                format!("goals[{i}].success_radius"),
                "must be > 0",
            ));
        }
        check_point(&format!("goals[{i}]"), &g.position)?;
    }
    Ok(())
}

impl ScenarioSpec {
    /// Serialize to the scenario document schema. `load_scenario` of the
    /// rendered text reproduces the spec exactly.
    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("name".into(), Value::String(self.name.clone()));
        obj.insert("seed".into(), Value::from(self.seed));
        obj.insert(
            "world".into(),
            Value::Array(self.world.iter().map(primitive_to_value).collect()),
        );
        obj.insert(
            "start".into(),
            json_array(&[
                self.start.position.x,
                self.start.position.y,
                self.start.position.z,
                self.start.yaw,
            ]),
        );
        obj.insert(
            "goals".into(),
            Value::Array(
                self.goals
                    .iter()
                    .map(|g| {
                        let mut m = Map::new();
                        m.insert("position".into(), vec3_to_value(&g.position));
                        m.insert("yaw".into(), Value::from(g.yaw));
                        m.insert("success_radius".into(), Value::from(g.success_radius));
                        Value::Object(m)
                    })
                    .collect(),
            ),
        );
        obj.insert("instruction".into(), Value::String(self.instruction.clone()));
        let mut limits = Map::new();
        limits.insert("v_max".into(), Value::from(self.limits.v_max));
        limits.insert("a_max".into(), Value::from(self.limits.a_max));
        limits.insert("yaw_rate_max".into(), Value::from(self.limits.yaw_rate_max));
        obj.insert("limits".into(), Value::Object(limits));
        let mut cam = Map::new();
        cam.insert("width".into(), Value::from(self.camera.width));
        cam.insert("height".into(), Value::from(self.camera.height));
        cam.insert("fx".into(), Value::from(self.camera.fx));
        cam.insert("fy".into(), Value::from(self.camera.fy));
        cam.insert("cx".into(), Value::from(self.camera.cx));
        cam.insert("cy".into(), Value::from(self.camera.cy));
        cam.insert("min_range".into(), Value::from(self.camera.min_range));
        cam.insert("max_range".into(), Value::from(self.camera.max_range));
        obj.insert("camera".into(), Value::Object(cam));
        let mut bounds = Map::new();
        bounds.insert("min".into(), vec3_to_value(&self.bounds.min));
        bounds.insert("max".into(), vec3_to_value(&self.bounds.max));
        obj.insert("bounds".into(), Value::Object(bounds));
        obj.insert("drone_radius".into(), Value::from(self.drone_radius));
        let mut plant = Map::new();
        plant.insert("tau".into(), Value::from(self.plant.tau));
        plant.insert("k_p".into(), Value::from(self.plant.k_p));
        obj.insert("plant".into(), Value::Object(plant));
        Value::Object(obj)
    }

    pub fn to_document(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("scenario serialization")
    }
}

fn primitive_to_value(p: &Primitive) -> Value {
    let mut m = Map::new();
    match p {
        Primitive::Sphere { center, radius } => {
            m.insert("type".into(), Value::String("sphere".into()));
            m.insert("center".into(), vec3_to_value(center));
            m.insert("radius".into(), Value::from(*radius));
        }
        Primitive::AxisAlignedBox { min, max } => {
            m.insert("type".into(), Value::String("box".into()));
            m.insert("min".into(), vec3_to_value(min));
            m.insert("max".into(), vec3_to_value(max));
        }
        Primitive::VerticalCylinder {
            center_xy,
            radius,
            z_min,
            z_max,
        } => {
            m.insert("type".into(), Value::String("cylinder".into()));
            m.insert("center_xy".into(), json_array(&center_xy[..]));
            m.insert("radius".into(), Value::from(*radius));
            m.insert("z_min".into(), Value::from(*z_min));
            m.insert("z_max".into(), Value::from(*z_max));
        }
    }
    Value::Object(m)
}

fn vec3_to_value(v: &Vec3) -> Value {
    json_array(&[v.x, v.y, v.z])
}

fn json_array(values: &[f64]) -> Value {
    Value::Array(values.iter().map(|v| Value::from(*v)).collect())
}

fn as_object<'a>(v: &'a Value, field: &str) -> Result<&'a Map<String, Value>, NavError> {
    v.as_object()
        .ok_or_else(|| NavError::validation(field, "expected object"))
}

fn as_str<'a>(v: &'a Value, field: &str) -> Result<&'a str, NavError> {
    v.as_str()
        .ok_or_else(|| NavError::validation(field, "expected string"))
}

fn as_f64(v: &Value, field: &str) -> Result<f64, NavError> {
    let x = v
        .as_f64()
        .ok_or_else(|| NavError::validation(field, "expected number"))?;
    if !x.is_finite() {
        return Err(NavError::validation(field, "must be finite"));
    }
    Ok(x)
}

fn check_keys(
    obj: &Map<String, Value>,
    context: &str,
    known: &[&str],
) -> Result<(), NavError> {
    for key in obj.keys() {
        if !known.contains(&key.as_str()) {
            return Err(NavError::validation(
                format!("{context}.{key}"),
                "unknown key",
            ));
        }
    }
    Ok(())
}

fn parse_f64_array<const N: usize>(v: &Value, field: &str) -> Result<[f64; N], NavError> {
    let arr = v
        .as_array()
        .ok_or_else(|| NavError::validation(field, format!("expected array of {N} numbers")))?;
    if arr.len() != N {
        return Err(NavError::validation(
            field,
            format!("expected {N} numbers, got {}", arr.len()),
        ));
    }
    let mut out = [0.0; N];
    for (i, item) in arr.iter().enumerate() {
        out[i] = as_f64(item, &format!("{field}[{i}]"))?;
    }
    Ok(out)
}

fn parse_vec3(v: &Value, field: &str) -> Result<Vec3, NavError> {
    let [x, y, z] = parse_f64_array::<3>(v, field)?;
    Ok(Vec3::new(x, y, z))
}

fn parse_pose(v: &Value, field: &str) -> Result<Pose4D, NavError> {
    let [x, y, z, yaw] = parse_f64_array::<4>(v, field)?;
    Pose4D::new(x, y, z, yaw).map_err(|e| NavError::validation(field, e.to_string()))
}

fn parse_world(v: &Value) -> Result<Vec<Primitive>, NavError> {
    let arr = v
        .as_array()
        .ok_or_else(|| NavError::validation("world", "expected array"))?;
    let mut out = Vec::with_capacity(arr.len());
    for (i, item) in arr.iter().enumerate() {
        let field = format!("world[{i}]");
        let obj = as_object(item, &field)?;
        let kind = obj
            .get("type")
            .ok_or_else(|| NavError::validation(&field, "missing `type`"))?;
        let prim = match as_str(kind, &format!("{field}.type"))? {
            "sphere" => {
                check_keys(obj, &field, &["type", "center", "radius"])?;
                Primitive::Sphere {
                    center: parse_vec3(
                        obj.get("center")
                            .ok_or_else(|| NavError::validation(&field, "missing `center`"))?,
                        &format!("{field}.center"),
                    )?,
                    radius: as_f64(
                        obj.get("radius")
                            .ok_or_else(|| NavError::validation(&field, "missing `radius`"))?,
                        &format!("{field}.radius"),
                    )?,
                }
            }
            "box" => {
                check_keys(obj, &field, &["type", "min", "max"])?;
                Primitive::AxisAlignedBox {
                    min: parse_vec3(
                        obj.get("min")
                            .ok_or_else(|| NavError::validation(&field, "missing `min`"))?,
                        &format!("{field}.min"),
                    )?,
                    max: parse_vec3(
                        obj.get("max")
                            .ok_or_else(|| NavError::validation(&field, "missing `max`"))?,
                        &format!("{field}.max"),
                    )?,
                }
            }
            "cylinder" => {
                check_keys(obj, &field, &["type", "center_xy", "radius", "z_min", "z_max"])?;
                let cxy = parse_f64_array::<2>(
                    obj.get("center_xy")
                        .ok_or_else(|| NavError::validation(&field, "missing `center_xy`"))?,
                    &format!("{field}.center_xy"),
                )?;
                Primitive::VerticalCylinder {
                    center_xy: cxy,
                    radius: as_f64(
                        obj.get("radius")
                            .ok_or_else(|| NavError::validation(&field, "missing `radius`"))?,
                        &format!("{field}.radius"),
                    )?,
                    z_min: as_f64(
                        obj.get("z_min")
                            .ok_or_else(|| NavError::validation(&field, "missing `z_min`"))?,
                        &format!("{field}.z_min"),
                    )?,
                    z_max: as_f64(
                        obj.get("z_max")
                            .ok_or_else(|| NavError::validation(&field, "missing `z_max`"))?,
                        &format!("{field}.z_max"),
                    )?,
                }
            }
            other => {
                return Err(NavError::validation(
                    format!("{field}.type"),
                    format!("unknown primitive type `{other}`"),
                ))
            }
        };
        out.push(prim);
    }
    Ok(out)
}

fn parse_goals(v: &Value) -> Result<Vec<Goal>, NavError> {
    let arr = v
        .as_array()
        .ok_or_else(|| NavError::validation("goals", "expected array"))?;
    let mut out = Vec::with_capacity(arr.len());
    for (i, item) in arr.iter().enumerate() {
        let field = format!("goals[{i}]");
        let obj = as_object(item, &field)?;
        check_keys(obj, &field, &["position", "yaw", "success_radius"])?;
        let position = parse_vec3(
            obj.get("position")
                .ok_or_else(|| NavError::validation(&field, "missing `position`"))?,
            &format!("{field}.position"),
        )?;
        let yaw = match obj.get("yaw") {
            Some(v) => wrap_angle(as_f64(v, &format!("{field}.yaw"))?),
            None => 0.0,
        };
        let success_radius = match obj.get("success_radius") {
            Some(v) => as_f64(v, &format!("{field}.success_radius"))?,
            None => 0.5,
        };
        out.push(Goal {
            position,
            yaw,
            success_radius,
        });
    }
    Ok(out)
}

fn parse_limits(v: &Value) -> Result<Limits, NavError> {
    let obj = as_object(v, "limits")?;
    check_keys(obj, "limits", &["v_max", "a_max", "yaw_rate_max"])?;
    let defaults = Limits::default();
    Ok(Limits {
        v_max: match obj.get("v_max") {
            Some(v) => as_f64(v, "limits.v_max")?,
            None => defaults.v_max,
        },
        a_max: match obj.get("a_max") {
            Some(v) => as_f64(v, "limits.a_max")?,
            None => defaults.a_max,
        },
        yaw_rate_max: match obj.get("yaw_rate_max") {
            Some(v) => as_f64(v, "limits.yaw_rate_max")?,
            None => defaults.yaw_rate_max,
        },
    })
}

fn parse_camera(v: &Value) -> Result<CameraModel, NavError> {
    let obj = as_object(v, "camera")?;
    check_keys(
        obj,
        "camera",
        &["width", "height", "fx", "fy", "cx", "cy", "min_range", "max_range"],
    )?;
    let defaults = CameraModel::default();
    let get_u32 = |key: &str, default: u32| -> Result<u32, NavError> {
        match obj.get(key) {
            Some(v) => v
                .as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| NavError::validation(format!("camera.{key}"), "expected unsigned integer")),
            None => Ok(default),
        }
    };
    let get_f = |key: &str, default: f64| -> Result<f64, NavError> {
        match obj.get(key) {
            Some(v) => as_f64(v, &format!("camera.{key}")),
            None => Ok(default),
        }
    };
    Ok(CameraModel {
        width: get_u32("width", defaults.width)?,
        height: get_u32("height", defaults.height)?,
        fx: get_f("fx", defaults.fx)?,
        fy: get_f("fy", defaults.fy)?,
        cx: get_f("cx", defaults.cx)?,
        cy: get_f("cy", defaults.cy)?,
        min_range: get_f("min_range", defaults.min_range)?,
        max_range: get_f("max_range", defaults.max_range)?,
        body_to_camera: defaults.body_to_camera,
    })
}

fn parse_bounds(v: &Value) -> Result<Aabb, NavError> {
    let obj = as_object(v, "bounds")?;
    check_keys(obj, "bounds", &["min", "max"])?;
    Ok(Aabb {
        min: parse_vec3(
            obj.get("min")
                .ok_or_else(|| NavError::validation("bounds", "missing `min`"))?,
            "bounds.min",
        )?,
        max: parse_vec3(
            obj.get("max")
                .ok_or_else(|| NavError::validation("bounds", "missing `max`"))?,
            "bounds.max",
        )?,
    })
}

fn parse_plant(v: &Value) -> Result<PlantParams, NavError> {
    let obj = as_object(v, "plant")?;
    check_keys(obj, "plant", &["tau", "k_p"])?;
    let defaults = PlantParams::default();
    Ok(PlantParams {
        tau: match obj.get("tau") {
            Some(v) => as_f64(v, "plant.tau")?,
            None => defaults.tau,
        },
        k_p: match obj.get("k_p") {
            Some(v) => as_f64(v, "plant.k_p")?,
            None => defaults.k_p,
        },
    })
}

/// Camera pose in the world for a body at `pose`.
pub fn camera_pose_for(camera: &CameraModel, pose: &Pose4D) -> RigidTransform {
    pose.body_to_world() * camera.body_to_camera
}

#[allow(unused)]
fn vector2(v: &[f64; 2]) -> Vector2<f64> {
    Vector2::new(v[0], v[1])
}
