//! Uniform cubic B-spline trajectories: straight-line initialization from a
//! live state to a waypoint, basis evaluation, derivative control points,
//! and temporal reallocation.
//!
//! The convex-hull property of B-splines turns dynamic-feasibility checks
//! into inequalities over difference quotients of the control points, and
//! keeps cost gradients over control points closed-form.

use crate::error::NavError;
use crate::geometry::Vec3;
use crate::world::{Limits, SimState};

/// Fraction of `v_max` used as the nominal speed of a fresh straight-line
/// trajectory, leaving headroom for refinement detours before time scaling
/// has to trigger.
pub const NOMINAL_SPEED_FRACTION: f64 = 0.6;

/// Evaluation of position and its first two derivatives at one instant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectorySample {
    pub position: Vec3,
    pub velocity: Vec3,
    pub acceleration: Vec3,
    /// Set when the query time fell outside [0, duration] and was clamped.
    pub clamped: bool,
}

/// Uniform cubic B-spline over 3D control points.
///
/// The first three control points encode the start position/velocity/
/// acceleration through the uniform-basis boundary relations; the last
/// three are coincident at the target, a full stop.
#[derive(Clone, Debug, PartialEq)]
pub struct BSplineTrajectory {
    control_points: Vec<Vec3>,
    knot_span: f64,
    start_time: f64,
}

impl BSplineTrajectory {
    pub fn new(
        control_points: Vec<Vec3>,
        knot_span: f64,
        start_time: f64,
    ) -> Result<Self, NavError> {
        if control_points.len() < 6 {
            return Err(NavError::invalid(format!(
                "need at least 6 control points, got {}",
                control_points.len()
            )));
        }
        if !(knot_span > 0.0 && knot_span.is_finite()) {
            return Err(NavError::invalid("knot span must be positive and finite"));
        }
        if control_points
            .iter()
            .any(|q| !(q.x.is_finite() && q.y.is_finite() && q.z.is_finite()))
        {
            return Err(NavError::invalid("non-finite control point"));
        }
        Ok(BSplineTrajectory {
            control_points,
            knot_span,
            start_time,
        })
    }

    /// Straight-line initialization from the live state to `target`.
    ///
    /// Boundary conditions: position/velocity/acceleration at t=0 match
    /// (`start`, `start_accel`); the terminal state is a full stop at
    /// `target`. Interior control points are spaced on the segment so the
    /// nominal cruise speed is `NOMINAL_SPEED_FRACTION * v_max`. A target
    /// coincident with the start yields a minimal-duration hover spline.
    pub fn init_straight(
        start: &SimState,
        start_accel: Vec3,
        target: Vec3,
        limits: &Limits,
        knot_span: f64,
    ) -> Result<Self, NavError> {
        if !(knot_span > 0.0 && knot_span.is_finite()) {
            return Err(NavError::invalid("knot span must be positive and finite"));
        }
        if !(target.x.is_finite() && target.y.is_finite() && target.z.is_finite()) {
            return Err(NavError::invalid("non-finite target"));
        }
        let p0 = start.pose.position;
        let offset = target - p0;
        let length = offset.norm();
        let nominal = NOMINAL_SPEED_FRACTION * limits.v_max;
        let m = if length < 1e-12 {
            6
        } else {
            let interior_spans = (length / (nominal * knot_span)).ceil() as usize;
            (5 + interior_spans.max(1)).min(4000)
        };

        let dt = knot_span;
        let mut q = vec![Vec3::zeros(); m];
        // Uniform cubic boundary relations solved for the first three points:
        //   p(0) = (Q0 + 4 Q1 + Q2) / 6
        //   v(0) = (Q2 - Q0) / (2 dt)
        //   a(0) = (Q0 - 2 Q1 + Q2) / dt^2
        let q1 = p0 - start_accel * (dt * dt / 6.0);
        q[0] = q1 - start.velocity * dt + start_accel * (dt * dt / 2.0);
        q[1] = q1;
        q[2] = q1 + start.velocity * dt + start_accel * (dt * dt / 2.0);
        // Terminal full stop: coincident last three points.
        q[m - 3] = target;
        q[m - 2] = target;
        q[m - 1] = target;
        // Interior points on the segment.
        if m > 6 {
            let denom = (m - 5) as f64;
            for (i, slot) in q.iter_mut().enumerate().take(m - 3).skip(3) {
                let f = (i as f64 - 2.0) / denom;
                *slot = p0 + offset * f;
            }
        }
        BSplineTrajectory::new(q, dt, start.time)
    }

    pub fn control_points(&self) -> &[Vec3] {
        &self.control_points
    }

    pub fn knot_span(&self) -> f64 {
        self.knot_span
    }

    pub fn start_time(&self) -> f64 {
        self.start_time
    }

    pub fn with_start_time(mut self, start_time: f64) -> Self {
        self.start_time = start_time;
        self
    }

    /// Replace the control points, keeping timing. Length must not change.
    pub(crate) fn with_control_points(&self, control_points: Vec<Vec3>) -> Self {
        debug_assert_eq!(control_points.len(), self.control_points.len());
        BSplineTrajectory {
            control_points,
            knot_span: self.knot_span,
            start_time: self.start_time,
        }
    }

    pub fn duration(&self) -> f64 {
        (self.control_points.len() - 3) as f64 * self.knot_span
    }

    /// Evaluate position, velocity, and acceleration at time `t` relative
    /// to the trajectory start. Out-of-range times clamp to the boundary
    /// and are flagged.
    pub fn evaluate(&self, t: f64) -> TrajectorySample {
        let duration = self.duration();
        let clamped = !(0.0..=duration).contains(&t);
        let tc = t.clamp(0.0, duration);

        let n_seg = self.control_points.len() - 3;
        let s = tc / self.knot_span;
        let mut j = s.floor() as usize;
        if j >= n_seg {
            j = n_seg - 1;
        }
        let u = s - j as f64;
        let q = &self.control_points;
        let dt = self.knot_span;

        let u2 = u * u;
        let u3 = u2 * u;
        let omu = 1.0 - u;

        // Cubic basis.
        let b0 = omu * omu * omu / 6.0;
        let b1 = (3.0 * u3 - 6.0 * u2 + 4.0) / 6.0;
        let b2 = (-3.0 * u3 + 3.0 * u2 + 3.0 * u + 1.0) / 6.0;
        let b3 = u3 / 6.0;
        let position = b0 * q[j] + b1 * q[j + 1] + b2 * q[j + 2] + b3 * q[j + 3];

        // Quadratic basis over velocity control points V_i = (Q_{i+1}-Q_i)/dt.
        let v0 = (q[j + 1] - q[j]) / dt;
        let v1 = (q[j + 2] - q[j + 1]) / dt;
        let v2 = (q[j + 3] - q[j + 2]) / dt;
        let c0 = omu * omu / 2.0;
        let c1 = (-2.0 * u2 + 2.0 * u + 1.0) / 2.0;
        let c2 = u2 / 2.0;
        let velocity = c0 * v0 + c1 * v1 + c2 * v2;

        // Linear basis over acceleration control points A_i = (V_{i+1}-V_i)/dt.
        let a0 = (v1 - v0) / dt;
        let a1 = (v2 - v1) / dt;
        let acceleration = omu * a0 + u * a1;

        TrajectorySample {
            position,
            velocity,
            acceleration,
            clamped,
        }
    }

    /// Velocity and acceleration control points:
    /// `V_i = (Q_{i+1} - Q_i)/dt`, `A_i = (Q_{i+2} - 2 Q_{i+1} + Q_i)/dt^2`.
    pub fn derivative_control_points(&self) -> (Vec<Vec3>, Vec<Vec3>) {
        let q = &self.control_points;
        let dt = self.knot_span;
        let v: Vec<Vec3> = q.windows(2).map(|w| (w[1] - w[0]) / dt).collect();
        let a: Vec<Vec3> = q
            .windows(3)
            .map(|w| (w[2] - 2.0 * w[1] + w[0]) / (dt * dt))
            .collect();
        (v, a)
    }

    /// Largest derivative control-point magnitudes (conservative bounds on
    /// sampled speed and acceleration by the convex-hull property).
    pub fn derivative_bounds(&self) -> (f64, f64) {
        let (v, a) = self.derivative_control_points();
        let vmax = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
        let amax = a.iter().map(|x| x.norm()).fold(0.0, f64::max);
        (vmax, amax)
    }

    /// Uniformly scale the knot span by
    /// `k = max(1, max_i |V_i|/v_max, sqrt(max_i |A_i|/a_max))`
    /// so every derivative control point satisfies the limits. Control
    /// points (and hence the geometric path) are unchanged; an already
    /// feasible spline is returned as-is.
    pub fn reallocate_time(&self, v_max: f64, a_max: f64) -> BSplineTrajectory {
        let (vb, ab) = self.derivative_bounds();
        let k = 1.0_f64.max(vb / v_max).max((ab / a_max).sqrt());
        if k <= 1.0 {
            return self.clone();
        }
        BSplineTrajectory {
            control_points: self.control_points.clone(),
            knot_span: self.knot_span * k,
            start_time: self.start_time,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Pose4D;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn rest_state(p: Vec3) -> SimState {
        SimState {
            pose: Pose4D {
                position: p,
                yaw: 0.0,
            },
            velocity: Vec3::zeros(),
            time: 0.0,
        }
    }

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn init_straight_interpolates_endpoints() {
        let traj = BSplineTrajectory::init_straight(
            &rest_state(Vec3::zeros()),
            Vec3::zeros(),
            Vec3::new(4.0, 0.0, 0.0),
            &limits(),
            0.15,
        )
        .unwrap();
        let s0 = traj.evaluate(0.0);
        let s1 = traj.evaluate(traj.duration());
        assert!(s0.position.norm() < 1e-9);
        assert!((s1.position - Vec3::new(4.0, 0.0, 0.0)).norm() < 1e-9);
        assert!(s0.velocity.norm() < 1e-9);
        assert!(s1.velocity.norm() < 1e-9);
        assert!(s1.acceleration.norm() < 1e-9);
    }

    #[test]
    fn init_straight_to_self_is_hover() {
        let p = Vec3::new(1.0, -2.0, 3.0);
        let traj = BSplineTrajectory::init_straight(
            &rest_state(p),
            Vec3::zeros(),
            p,
            &limits(),
            0.15,
        )
        .unwrap();
        assert_eq!(traj.control_points().len(), 6);
        for i in 0..=20 {
            let s = traj.evaluate(traj.duration() * i as f64 / 20.0);
            assert!((s.position - p).norm() < 1e-12);
            assert!(s.velocity.norm() < 1e-12);
        }
    }

    #[test]
    fn init_straight_interior_samples_stay_on_segment() {
        let target = Vec3::new(3.0, 4.0, 1.0);
        let traj = BSplineTrajectory::init_straight(
            &rest_state(Vec3::zeros()),
            Vec3::zeros(),
            target,
            &limits(),
            0.15,
        )
        .unwrap();
        let dir = target.normalize();
        for i in 0..=100 {
            let s = traj.evaluate(traj.duration() * i as f64 / 100.0);
            let along = s.position.dot(&dir);
            let off = (s.position - along * dir).norm();
            assert!(off < 1e-9, "sample off segment by {off}");
            assert!((-1e-9..=target.norm() + 1e-9).contains(&along));
        }
    }

    #[test]
    fn init_straight_matches_nonzero_start_state() {
        let state = SimState {
            pose: Pose4D {
                position: Vec3::new(0.5, -0.2, 1.1),
                yaw: 0.3,
            },
            velocity: Vec3::new(0.4, 0.1, -0.2),
            time: 7.5,
        };
        let accel = Vec3::new(0.3, -0.5, 0.2);
        let traj = BSplineTrajectory::init_straight(
            &state,
            accel,
            Vec3::new(4.0, 2.0, 1.5),
            &limits(),
            0.12,
        )
        .unwrap();
        let s = traj.evaluate(0.0);
        assert!((s.position - state.pose.position).norm() < 1e-9);
        assert!((s.velocity - state.velocity).norm() < 1e-9);
        assert!((s.acceleration - accel).norm() < 1e-9);
        assert_eq!(traj.start_time(), 7.5);
    }

    #[test]
    fn constant_spline_evaluates_constant() {
        let c = Vec3::new(1.0, 2.0, 3.0);
        let traj = BSplineTrajectory::new(vec![c; 8], 0.2, 0.0).unwrap();
        for i in 0..=50 {
            let s = traj.evaluate(traj.duration() * i as f64 / 50.0);
            assert!((s.position - c).norm() < 1e-12);
            assert!(s.velocity.norm() < 1e-12);
            assert!(s.acceleration.norm() < 1e-12);
        }
    }

    #[test]
    fn collinear_equally_spaced_gives_constant_velocity() {
        let dt = 0.25;
        let spacing = 0.5;
        let pts: Vec<Vec3> = (0..10)
            .map(|i| Vec3::new(spacing * i as f64, 0.0, 0.0))
            .collect();
        let traj = BSplineTrajectory::new(pts, dt, 0.0).unwrap();
        for i in 1..40 {
            let s = traj.evaluate(traj.duration() * i as f64 / 40.0);
            assert_relative_eq!(s.velocity.x, spacing / dt, epsilon = 1e-12);
            assert!(s.acceleration.norm() < 1e-9);
        }
    }

    #[test]
    fn derivative_control_points_formulas() {
        let pts = vec![
            Vec3::zeros(),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(2.0, 1.0, 0.0),
            Vec3::new(2.0, 1.0, 0.0),
            Vec3::new(2.0, 1.0, 0.0),
        ];
        let traj = BSplineTrajectory::new(pts, 0.5, 0.0).unwrap();
        let (v, a) = traj.derivative_control_points();
        assert_eq!(v.len(), 5);
        assert_eq!(a.len(), 4);
        assert_relative_eq!(v[0].x, 2.0);
        assert_eq!(v[1], Vec3::zeros());
        // A_0 = (Q2 - 2 Q1 + Q0) / dt^2 = (1 - 2 + 0) / 0.25
        assert_relative_eq!(a[0].x, -4.0);
    }

    #[test]
    fn reallocate_examples() {
        // Velocity-bound case: max |V| = 2 with v_max = 1 doubles the span.
        let pts: Vec<Vec3> = (0..8).map(|i| Vec3::new(i as f64, 0.0, 0.0)).collect();
        let traj = BSplineTrajectory::new(pts, 0.5, 0.0).unwrap();
        let (vb, _) = traj.derivative_bounds();
        assert_relative_eq!(vb, 2.0);
        let scaled = traj.reallocate_time(1.0, 1e9);
        assert_relative_eq!(scaled.knot_span(), 1.0);
        assert_eq!(scaled.control_points(), traj.control_points());

        // Already feasible: identity.
        let same = traj.reallocate_time(10.0, 1e9);
        assert_eq!(same, traj);
    }

    #[test]
    fn reallocate_square_root_rule() {
        // Construct a spline whose max acceleration control point is 16.
        let pts = vec![
            Vec3::zeros(),
            Vec3::zeros(),
            Vec3::new(16.0, 0.0, 0.0),
            Vec3::new(16.0, 0.0, 0.0),
            Vec3::new(16.0, 0.0, 0.0),
            Vec3::new(16.0, 0.0, 0.0),
        ];
        let traj = BSplineTrajectory::new(pts, 1.0, 0.0).unwrap();
        let (_, ab) = traj.derivative_bounds();
        assert_relative_eq!(ab, 16.0);
        let scaled = traj.reallocate_time(1e9, 4.0);
        assert_relative_eq!(scaled.knot_span(), 2.0, epsilon = 1e-12);
        let (vb2, ab2) = scaled.derivative_bounds();
        assert!(ab2 <= 4.0 * (1.0 + 1e-9));
        assert!(vb2 <= 1e9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn convex_hull_bounds_sampled_derivatives(
            n in 6usize..14,
            dt in 0.05f64..0.5,
            coords in proptest::collection::vec(-5.0f64..5.0, 14 * 3),
        ) {
            let pts: Vec<Vec3> = (0..n)
                .map(|i| Vec3::new(coords[3 * i], coords[3 * i + 1], coords[3 * i + 2]))
                .collect();
            let traj = BSplineTrajectory::new(pts, dt, 0.0).unwrap();
            let (vb, ab) = traj.derivative_bounds();
            for i in 0..=2000 {
                let s = traj.evaluate(traj.duration() * i as f64 / 2000.0);
                prop_assert!(s.velocity.norm() <= vb * (1.0 + 1e-12) + 1e-12);
                prop_assert!(s.acceleration.norm() <= ab * (1.0 + 1e-12) + 1e-12);
            }
        }

        #[test]
        fn velocity_matches_finite_difference(
            n in 6usize..12,
            dt in 0.1f64..0.4,
            coords in proptest::collection::vec(-4.0f64..4.0, 12 * 3),
        ) {
            let pts: Vec<Vec3> = (0..n)
                .map(|i| Vec3::new(coords[3 * i], coords[3 * i + 1], coords[3 * i + 2]))
                .collect();
            let traj = BSplineTrajectory::new(pts, dt, 0.0).unwrap();
            let h = 1e-5;
            for i in 1..20 {
                let t = traj.duration() * i as f64 / 20.0;
                if t - h < 0.0 || t + h > traj.duration() {
                    continue;
                }
                let v = traj.evaluate(t).velocity;
                let fd = (traj.evaluate(t + h).position - traj.evaluate(t - h).position) / (2.0 * h);
                let scale = v.norm().max(1.0);
                prop_assert!((v - fd).norm() / scale < 1e-5);
            }
        }

        #[test]
        fn reallocate_is_idempotent_and_preserves_path(
            n in 6usize..12,
            dt in 0.05f64..0.3,
            coords in proptest::collection::vec(-5.0f64..5.0, 12 * 3),
        ) {
            let pts: Vec<Vec3> = (0..n)
                .map(|i| Vec3::new(coords[3 * i], coords[3 * i + 1], coords[3 * i + 2]))
                .collect();
            let traj = BSplineTrajectory::new(pts, dt, 0.0).unwrap();
            let once = traj.reallocate_time(1.0, 2.0);
            let twice = once.reallocate_time(1.0, 2.0);
            prop_assert_eq!(&once, &twice);
            let (vb, ab) = once.derivative_bounds();
            prop_assert!(vb <= 1.0 * (1.0 + 1e-9));
            prop_assert!(ab <= 2.0 * (1.0 + 1e-9));
            // Geometric path preserved under uniform time scaling.
            for i in 0..=64 {
                let s = i as f64 / 64.0;
                let before = traj.evaluate(s * traj.duration()).position;
                let after = once.evaluate(s * once.duration()).position;
                prop_assert!((before - after).norm() < 1e-12);
            }
        }

        #[test]
        fn init_straight_boundary_conditions_hold(
            px in -3.0f64..3.0, py in -3.0f64..3.0, pz in 0.0f64..3.0,
            vx in -1.0f64..1.0, vy in -1.0f64..1.0, vz in -0.5f64..0.5,
            ax in -2.0f64..2.0, ay in -2.0f64..2.0, az in -1.0f64..1.0,
            tx in -4.0f64..4.0, ty in -4.0f64..4.0, tz in 0.0f64..4.0,
        ) {
            let state = SimState {
                pose: Pose4D { position: Vec3::new(px, py, pz), yaw: 0.0 },
                velocity: Vec3::new(vx, vy, vz),
                time: 1.25,
            };
            let accel = Vec3::new(ax, ay, az);
            let traj = BSplineTrajectory::init_straight(
                &state, accel, Vec3::new(tx, ty, tz), &Limits::default(), 0.15,
            ).unwrap();
            let s0 = traj.evaluate(0.0);
            prop_assert!((s0.position - state.pose.position).norm() < 1e-9);
            prop_assert!((s0.velocity - state.velocity).norm() < 1e-9);
            prop_assert!((s0.acceleration - accel).norm() < 1e-9);
            let s1 = traj.evaluate(traj.duration());
            prop_assert!((s1.position - Vec3::new(tx, ty, tz)).norm() < 1e-9);
            prop_assert!(s1.velocity.norm() < 1e-9);
        }
    }

    #[test]
    fn evaluate_clamps_and_flags() {
        let traj = BSplineTrajectory::init_straight(
            &rest_state(Vec3::zeros()),
            Vec3::zeros(),
            Vec3::new(2.0, 0.0, 0.0),
            &limits(),
            0.15,
        )
        .unwrap();
        let before = traj.evaluate(-1.0);
        assert!(before.clamped);
        assert_eq!(before.position, traj.evaluate(0.0).position);
        let after = traj.evaluate(traj.duration() + 5.0);
        assert!(after.clamped);
        assert!((after.position - Vec3::new(2.0, 0.0, 0.0)).norm() < 1e-9);
    }
}
