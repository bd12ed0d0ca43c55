//! Kinematics, sizing and motion sequencing for a pick-and-place arm that
//! works a chessboard.
//!
//! The crate covers the full path from geometry to executable motion:
//!
//! - [`kinematics`]: planar forward/inverse kinematics, joint chains,
//!   limit and feasibility checks.
//! - [`dynamics`]: static moment-arm sizing, tip speed, spin-up and
//!   gripper torque.
//! - [`workspace`]: reachable-set sampling and base-structure
//!   classification.
//! - [`chessbot`]: the chessboard coordinate model and the four-revolute
//!   board arm with its two IK modes.
//! - [`command`]: the query language, its interpreter, and verifiable
//!   motion traces.
//! - [`cli`]: the `chessarm` binary's entry point.
//!
//! Each major capability has a runnable demo under `examples/`.

pub mod chessbot;
pub mod cli;
pub mod command;
pub mod dynamics;
pub mod kinematics;
pub mod workspace;

pub use chessbot::{chess_ik, BoardModel, ChessArm, IkMode, JointTargets};
pub use command::{parse_command, Command, Engine, MotionTrace};
pub use kinematics::{fk_planar, ik_planar, AnglePair, ElbowBranch, PlanarArm, Pose2};
