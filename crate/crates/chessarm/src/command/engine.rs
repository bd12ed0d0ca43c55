//! The command interpreter: a deterministic state machine over the
//! simulated arm.
//!
//! Commands compute absolute joint targets through the board IK and emit
//! the difference to the current registers as rotation steps; the
//! registers are then advanced by those same deltas, so a replayed trace
//! reproduces the final state bit for bit. Commands are atomic: an error
//! leaves the state untouched.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use super::parser::parse_command;
use super::trace::{ArmJoint, CommandSpan, MotionStep, MotionTrace};
use super::{Command, CommandError};
use crate::chessbot::{chess_ik, validate_board_reach, BoardModel, ChessArm, ChessError, IkMode};

/// Default cap on stored trace steps.
pub const DEFAULT_TRACE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GripperState {
    Open,
    Closed,
}

/// Interpreter state: accumulated joint registers, the current board
/// target registers, and the gripper.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmState {
    /// J1 register.
    pub yaw: f64,
    /// J2 register.
    pub shoulder: f64,
    /// J3 register.
    pub elbow: f64,
    /// J4 register.
    pub wrist: f64,
    /// Board x the arm was last aimed at.
    pub xf: f64,
    /// Board y the arm was last aimed at.
    pub yf: f64,
    pub gripper: GripperState,
    /// True only between a carry lift and its matching lower.
    pub lifted: bool,
}

impl ArmState {
    pub fn joint(&self, joint: ArmJoint) -> f64 {
        match joint {
            ArmJoint::J1 => self.yaw,
            ArmJoint::J2 => self.shoulder,
            ArmJoint::J3 => self.elbow,
            ArmJoint::J4 => self.wrist,
        }
    }

    fn joint_mut(&mut self, joint: ArmJoint) -> &mut f64 {
        match joint {
            ArmJoint::J1 => &mut self.yaw,
            ArmJoint::J2 => &mut self.shoulder,
            ArmJoint::J3 => &mut self.elbow,
            ArmJoint::J4 => &mut self.wrist,
        }
    }
}

/// Fresh state over a validated board: all registers zero, gripper open,
/// target registers on the first cell of the first row.
///
/// Fails with `UnreachableBoard` when any of the 64 cells is unreachable
/// under the chosen mode.
pub fn init_state(board: &BoardModel, arm: &ChessArm, mode: IkMode) -> Result<ArmState, CommandError> {
    let report = validate_board_reach(arm, board, mode);
    if !report.ok {
        return Err(CommandError::UnreachableBoard { unreachable: report.unreachable });
    }
    Ok(ArmState {
        yaw: 0.0,
        shoulder: 0.0,
        elbow: 0.0,
        wrist: 0.0,
        xf: board.side_length / 16.0,
        yf: board.side_length / 16.0 + board.dif,
        gripper: GripperState::Open,
        lifted: false,
    })
}

/// Execute one command against a state, returning the successor state and
/// the steps emitted. The input state is never modified, so a failed
/// command has no effect.
pub fn execute(
    state: &ArmState,
    cmd: &Command,
    board: &BoardModel,
    arm: &ChessArm,
    mode: IkMode,
) -> Result<(ArmState, Vec<MotionStep>), CommandError> {
    let mut run = Run { state: state.clone(), steps: Vec::new(), board, arm, mode };
    match *cmd {
        Command::GoToX(x) => run.go_to_x(x)?,
        Command::GoToY(y) => run.go_to_y(y)?,
        Command::MoveTo(x, y) => {
            run.go_to_x(x)?;
            run.go_to_y(y)?;
        }
        Command::MoveFrom(x, y, x1, y1) => {
            run.go_to_x(x)?;
            run.go_to_y(y)?;
            run.grab()?;
            let carry = run.lift()?;
            run.go_to_x(x1)?;
            run.lower(carry)?;
            run.go_to_y(y1)?;
            run.release()?;
        }
        Command::ReturnToO => {
            let carry = run.lift()?;
            run.go_to_x(0)?;
            run.lower(carry)?;
            let (_, home_y) = run.board.home_target();
            run.go_to_y_at(home_y)?;
        }
        Command::Grab => run.grab()?,
        Command::Release => run.release()?,
    }
    Ok((run.state, run.steps))
}

struct Run<'a> {
    state: ArmState,
    steps: Vec<MotionStep>,
    board: &'a BoardModel,
    arm: &'a ChessArm,
    mode: IkMode,
}

impl Run<'_> {
    fn rotate(&mut self, joint: ArmJoint, delta: f64) -> Result<(), CommandError> {
        if !delta.is_finite() || delta.abs() > PI {
            return Err(CommandError::RotationTooLarge { joint, delta });
        }
        self.steps.push(MotionStep::Rotate { joint, delta_rad: delta });
        *self.state.joint_mut(joint) += delta;
        Ok(())
    }

    fn go_to_x(&mut self, col: i64) -> Result<(), CommandError> {
        let xf = self.board.column_x(col).map_err(cell_range)?;
        let targets = chess_ik(self.arm, (xf, self.state.yf), self.mode)?;
        self.rotate(ArmJoint::J1, targets.yaw - self.state.yaw)?;
        self.state.xf = xf;
        Ok(())
    }

    fn go_to_y(&mut self, row: i64) -> Result<(), CommandError> {
        let yf = self.board.row_y(row).map_err(cell_range)?;
        self.go_to_y_at(yf)
    }

    // Shoulder first, then the wrist compensation, then the elbow; this
    // order keeps the gripper from sweeping through neighboring pieces.
    fn go_to_y_at(&mut self, yf: f64) -> Result<(), CommandError> {
        let targets = chess_ik(self.arm, (self.state.xf, yf), self.mode)?;
        self.rotate(ArmJoint::J2, targets.shoulder - self.state.shoulder)?;
        self.rotate(ArmJoint::J4, targets.wrist - self.state.wrist)?;
        self.rotate(ArmJoint::J3, targets.elbow - self.state.elbow)?;
        self.state.yf = yf;
        Ok(())
    }

    fn grab(&mut self) -> Result<(), CommandError> {
        if self.state.gripper != GripperState::Open {
            return Err(CommandError::GripperState { action: "grab", state: "closed" });
        }
        self.steps.push(MotionStep::Grab);
        self.state.gripper = GripperState::Closed;
        Ok(())
    }

    fn release(&mut self) -> Result<(), CommandError> {
        if self.state.gripper != GripperState::Closed {
            return Err(CommandError::GripperState { action: "release", state: "open" });
        }
        self.steps.push(MotionStep::Release);
        self.state.gripper = GripperState::Open;
        Ok(())
    }

    /// Raise the shoulder by half its current register. Returns the carry
    /// amount so the matching lower restores it exactly.
    fn lift(&mut self) -> Result<f64, CommandError> {
        let carry = self.state.shoulder / 2.0;
        self.rotate(ArmJoint::J2, -carry)?;
        self.state.lifted = true;
        Ok(carry)
    }

    fn lower(&mut self, carry: f64) -> Result<(), CommandError> {
        self.rotate(ArmJoint::J2, carry)?;
        self.state.lifted = false;
        Ok(())
    }
}

fn cell_range(e: ChessError) -> CommandError {
    match e {
        ChessError::CellOutOfRange { axis, value, min, max } => {
            CommandError::CellOutOfRange { axis, value, min, max }
        }
        other => CommandError::IkFailure(other),
    }
}

/// A script failure, pointing at the 1-based line it happened on.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {error}")]
pub struct ScriptError {
    pub line: usize,
    pub error: CommandError,
}

/// One engine owns one arm state and its accumulated trace. Commands run
/// strictly sequentially; separate engines are fully independent.
#[derive(Debug, Clone)]
pub struct Engine {
    board: BoardModel,
    arm: ChessArm,
    mode: IkMode,
    trace_cap: usize,
    state: ArmState,
    trace: MotionTrace,
}

impl Engine {
    /// Validates the board before the first command.
    pub fn new(board: BoardModel, arm: ChessArm, mode: IkMode) -> Result<Self, CommandError> {
        Self::with_trace_cap(board, arm, mode, DEFAULT_TRACE_CAP)
    }

    pub fn with_trace_cap(
        board: BoardModel,
        arm: ChessArm,
        mode: IkMode,
        trace_cap: usize,
    ) -> Result<Self, CommandError> {
        let state = init_state(&board, &arm, mode)?;
        Ok(Engine { board, arm, mode, trace_cap, state, trace: MotionTrace::new() })
    }

    pub fn state(&self) -> &ArmState {
        &self.state
    }

    pub fn trace(&self) -> &MotionTrace {
        &self.trace
    }

    pub fn mode(&self) -> IkMode {
        self.mode
    }

    /// Run one command, appending its steps to the trace. On error, both
    /// state and trace are left exactly as they were.
    pub fn execute(&mut self, cmd: &Command) -> Result<&[MotionStep], CommandError> {
        let (next, steps) = execute(&self.state, cmd, &self.board, &self.arm, self.mode)?;
        if self.trace.steps.len() + steps.len() > self.trace_cap {
            return Err(CommandError::TraceCapExceeded { cap: self.trace_cap });
        }
        let start = self.trace.steps.len();
        self.trace.steps.extend_from_slice(&steps);
        self.trace.annotations.push(CommandSpan { command: *cmd, start, end: self.trace.steps.len() });
        self.state = next;
        Ok(&self.trace.steps[start..])
    }

    /// Parse a line and run it.
    pub fn execute_line(&mut self, line: &str) -> Result<&[MotionStep], CommandError> {
        let cmd = parse_command(line)?;
        self.execute(&cmd)
    }

    /// Run a whole script, one command per line, skipping blank and `#`
    /// comment lines. Stops at the first failure; everything before it
    /// remains applied.
    pub fn run_script(&mut self, text: &str) -> Result<usize, ScriptError> {
        let mut ran = 0;
        for (idx, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            self.execute_line(line).map_err(|error| ScriptError { line: idx + 1, error })?;
            ran += 1;
        }
        Ok(ran)
    }

    /// The trace as a JSON document with a config-echo header.
    pub fn export_trace_json(&self) -> String {
        #[derive(Serialize)]
        struct Header<'a> {
            board: &'a BoardModel,
            arm: &'a ChessArm,
            ik_mode: IkMode,
            trace_cap: usize,
        }
        self.trace.to_json(&Header {
            board: &self.board,
            arm: &self.arm,
            ik_mode: self.mode,
            trace_cap: self.trace_cap,
        })
    }

    pub fn export_trace_csv(&self) -> String {
        self.trace.to_csv()
    }
}
