//! The arm's query language and its deterministic interpreter.
//!
//! Queries arrive as text, one command per line (`#` starts a comment
//! line), get parsed into [`Command`] values and executed against a
//! simulated [`ArmState`]. Execution emits a [`MotionTrace`] of primitive
//! rotate/grab/release steps that can be replayed, checked for ordering
//! violations, and exported as JSON or CSV.

mod check;
mod engine;
mod parser;
mod trace;

pub use check::{check_trace, Violation};
pub use engine::{execute, init_state, ArmState, Engine, GripperState, ScriptError, DEFAULT_TRACE_CAP};
pub use parser::parse_command;
pub use trace::{ArmJoint, CommandSpan, MotionStep, MotionTrace};

use std::fmt;

use thiserror::Error;

use crate::chessbot::ChessError;

/// A parsed query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// `go to x <col>`: swing the base so the gripper plane meets a column.
    GoToX(i64),
    /// `go to y <row>`: reach out to a row.
    GoToY(i64),
    /// `move to [col , row]`: a column swing followed by a row reach.
    MoveTo(i64, i64),
    /// `move from [col , row] to [col , row]`: full pick-and-place with a
    /// half-shoulder lift while carrying.
    MoveFrom(i64, i64, i64, i64),
    /// `return to o`: lift, park over the origin column, settle.
    ReturnToO,
    /// `grab`: close the gripper.
    Grab,
    /// `release`: open the gripper.
    Release,
}

impl fmt::Display for Command {
    /// Normalized query text; parsing it yields the same command back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::GoToX(x) => write!(f, "go to x {x}"),
            Command::GoToY(y) => write!(f, "go to y {y}"),
            Command::MoveTo(x, y) => write!(f, "move to [{x} , {y}]"),
            Command::MoveFrom(x, y, x1, y1) => write!(f, "move from [{x} , {y}] to [{x1} , {y1}]"),
            Command::ReturnToO => write!(f, "return to o"),
            Command::Grab => write!(f, "grab"),
            Command::Release => write!(f, "release"),
        }
    }
}

/// Errors from parsing or executing commands.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CommandError {
    /// Input text did not match the grammar.
    #[error("SyntaxError: at byte {offset}, expected {expected}")]
    Syntax { offset: usize, expected: String },
    /// Command coordinates outside the board.
    #[error("CellOutOfRange: {axis} {value} outside [{min}, {max}]")]
    CellOutOfRange { axis: &'static str, value: i64, min: i64, max: i64 },
    /// Grab on a closed gripper or release on an open one.
    #[error("GripperStateError: cannot {action} while the gripper is {state}")]
    GripperState { action: &'static str, state: &'static str },
    /// The kinematics refused the target.
    #[error("IkFailure: {0}")]
    IkFailure(#[from] ChessError),
    /// Startup validation found unreachable cells.
    #[error("UnreachableBoard: {unreachable} of 64 cells unreachable")]
    UnreachableBoard { unreachable: usize },
    /// A single step would rotate further than a half turn.
    #[error("RotationTooLarge: {joint} delta {delta} exceeds pi")]
    RotationTooLarge { joint: ArmJoint, delta: f64 },
    /// The motion trace hit its configured size cap.
    #[error("TraceCapExceeded: trace is capped at {cap} steps")]
    TraceCapExceeded { cap: usize },
}
