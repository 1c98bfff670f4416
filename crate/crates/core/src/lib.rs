//! Deterministic aerial-navigation runtime.
//!
//! The crate couples an analytic 3D simulator (depth rendering, plant
//! dynamics, ground-truth collision checks) with a safety-focused action
//! pipeline: depth images become local obstacle clouds, candidate B-spline
//! trajectories are refined by repulsive obstacle gradients, re-timed to
//! satisfy velocity/acceleration limits, and only released after a dense
//! clearance verification. A four-state executor closes the loop around a
//! pluggable policy (oracle, scripted, or a remote process speaking a
//! newline-delimited JSON protocol), and a data-generation layer records
//! 10 Hz multimodal episodes with metrics and latency profiles.

pub mod action;
pub mod datagen;
pub mod error;
pub mod executor;
pub mod geometry;
pub mod perception;
pub mod policy;
pub mod trajectory;
pub mod world;

pub use action::{refine, sample_command, RefineConfig, RefineResult};
pub use error::NavError;
pub use executor::{run_episode, step_state_machine, EpisodeLog, ExecState, ExecutorConfig, Outcome, StateEvent};
pub use geometry::{ray_cast, signed_distance, wrap_yaw, CameraModel, Pose4D, Primitive, Vec3};
pub use perception::{backproject, build_anchors, detect_conflicts, voxel_downsample, AnchorPair, LocalObstacleCloud, PerceptionConfig};
pub use policy::{simulate_policy_latency, LatencyModel, NavDecision, NavPolicy, Observation, OraclePolicy, PolicyReply, RemotePolicy, ScriptedPolicy};
pub use trajectory::{BSplineTrajectory, TrajectorySample};
pub use world::{check_collision, load_scenario, render_depth, step_plant, Command, DepthImage, Goal, Limits, ScenarioSpec, SimState};
