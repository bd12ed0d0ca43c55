//! Structural checks over motion traces.
//!
//! [`check_trace`] mechanizes the ordering rules the interpreter is built
//! around: the carry lift happens between grabbing and swinging the base,
//! lifts are undone before release, grab and release alternate, and a row
//! reach always rotates shoulder, wrist, elbow in that order. Engine
//! output must check clean; the function exists so traces from anywhere
//! (files, replays, hand edits) can be audited too.

use std::fmt;

use super::trace::{ArmJoint, MotionStep, MotionTrace};
use super::Command;

/// A single rule violation, pointing at the command span and step involved.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// A base swing happened between grabbing and the carry lift.
    RotationBetweenGrabAndLift { span: usize, step: usize },
    /// A carry sequence has no (properly signed) lift at all.
    MissingLift { span: usize },
    /// A lift with no matching lower before the span ends or releases.
    UnmatchedLift { span: usize },
    /// Two grabs or two releases in a row.
    GripperAlternation { step: usize },
    /// A row reach rotated its joints out of shoulder-wrist-elbow order.
    GoToYOrder { span: usize, step: usize },
    /// Anything else that does not fit the command's expected shape.
    UnexpectedStep { span: usize, step: usize, expected: &'static str },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RotationBetweenGrabAndLift { span, step } => {
                write!(f, "span {span}: base rotation at step {step} between grab and lift")
            }
            Violation::MissingLift { span } => write!(f, "span {span}: carry lift missing"),
            Violation::UnmatchedLift { span } => write!(f, "span {span}: lift without matching lower"),
            Violation::GripperAlternation { step } => {
                write!(f, "step {step}: grab/release do not alternate")
            }
            Violation::GoToYOrder { span, step } => {
                write!(f, "span {span}: row-reach rotation out of order at step {step}")
            }
            Violation::UnexpectedStep { span, step, expected } => {
                write!(f, "span {span}: expected {expected} at step {step}")
            }
        }
    }
}

/// Audit a trace against the ordering rules. Returns an empty list iff the
/// trace is clean. Spans drive the per-command shape checks; the gripper
/// alternation rule is checked globally either way.
pub fn check_trace(trace: &MotionTrace) -> Vec<Violation> {
    let mut out = Vec::new();

    // grab and release must strictly alternate across the whole trace
    let mut last_gripper: Option<&MotionStep> = None;
    for (i, step) in trace.steps.iter().enumerate() {
        if matches!(step, MotionStep::Grab | MotionStep::Release) {
            if last_gripper == Some(step) {
                out.push(Violation::GripperAlternation { step: i });
            }
            last_gripper = Some(step);
        }
    }

    for (span_idx, span) in trace.annotations.iter().enumerate() {
        let steps = &trace.steps[span.start.min(trace.steps.len())..span.end.min(trace.steps.len())];
        let mut walk = Walk { steps, base: span.start, span: span_idx, pos: 0, out: &mut out };
        match span.command {
            Command::GoToX(_) => {
                walk.expect_rotation(ArmJoint::J1, "a base rotation");
                walk.expect_end();
            }
            Command::GoToY(_) => {
                walk.expect_row_reach();
                walk.expect_end();
            }
            Command::MoveTo(..) => {
                walk.expect_rotation(ArmJoint::J1, "a base rotation");
                walk.expect_row_reach();
                walk.expect_end();
            }
            Command::Grab => {
                walk.expect_gripper(&MotionStep::Grab, "grab");
                walk.expect_end();
            }
            Command::Release => {
                walk.expect_gripper(&MotionStep::Release, "release");
                walk.expect_end();
            }
            Command::MoveFrom(..) => {
                walk.expect_rotation(ArmJoint::J1, "a base rotation");
                walk.expect_row_reach();
                walk.expect_gripper(&MotionStep::Grab, "grab");
                if let Some(lift) = walk.scan_lift() {
                    walk.expect_rotation(ArmJoint::J1, "a base rotation");
                    walk.expect_lower(lift);
                }
                walk.expect_row_reach();
                walk.expect_gripper(&MotionStep::Release, "release");
                walk.expect_end();
            }
            Command::ReturnToO => {
                if let Some(lift) = walk.take_lift() {
                    walk.expect_rotation(ArmJoint::J1, "a base rotation");
                    walk.expect_lower(lift);
                }
                walk.expect_row_reach();
                walk.expect_end();
            }
        }
    }
    out
}

struct Walk<'a> {
    steps: &'a [MotionStep],
    base: usize,
    span: usize,
    pos: usize,
    out: &'a mut Vec<Violation>,
}

impl Walk<'_> {
    fn next(&mut self) -> Option<(usize, MotionStep)> {
        let step = *self.steps.get(self.pos)?;
        let at = self.base + self.pos;
        self.pos += 1;
        Some((at, step))
    }

    fn unexpected(&mut self, at: usize, expected: &'static str) {
        self.out.push(Violation::UnexpectedStep { span: self.span, step: at, expected });
    }

    fn expect_rotation(&mut self, joint: ArmJoint, expected: &'static str) -> Option<f64> {
        match self.next() {
            Some((_, MotionStep::Rotate { joint: j, delta_rad })) if j == joint => Some(delta_rad),
            Some((at, _)) => {
                self.unexpected(at, expected);
                None
            }
            None => {
                self.unexpected(self.base + self.pos, expected);
                None
            }
        }
    }

    fn expect_gripper(&mut self, want: &MotionStep, expected: &'static str) {
        match self.next() {
            Some((_, step)) if step == *want => {}
            Some((at, _)) => self.unexpected(at, expected),
            None => self.unexpected(self.base + self.pos, expected),
        }
    }

    /// Shoulder, wrist, elbow, strictly in that order.
    fn expect_row_reach(&mut self) {
        for want in [ArmJoint::J2, ArmJoint::J4, ArmJoint::J3] {
            match self.next() {
                Some((_, MotionStep::Rotate { joint, .. })) if joint == want => {}
                Some((at, MotionStep::Rotate { .. })) => {
                    self.out.push(Violation::GoToYOrder { span: self.span, step: at });
                }
                Some((at, _)) => self.unexpected(at, "a row-reach rotation"),
                None => {
                    self.unexpected(self.base + self.pos, "a row-reach rotation");
                    return;
                }
            }
        }
    }

    /// The carry lift must be the next shoulder rotation, with nothing but
    /// non-base steps before it. Base rotations in between are the exact
    /// hazard the lift exists to prevent.
    fn scan_lift(&mut self) -> Option<f64> {
        while let Some((at, step)) = self.next() {
            match step {
                MotionStep::Rotate { joint: ArmJoint::J2, delta_rad } => {
                    if delta_rad > 0.0 {
                        self.out.push(Violation::MissingLift { span: self.span });
                    }
                    return Some(delta_rad);
                }
                MotionStep::Rotate { joint: ArmJoint::J1, .. } => {
                    self.out.push(Violation::RotationBetweenGrabAndLift { span: self.span, step: at });
                }
                _ => self.unexpected(at, "the carry lift"),
            }
        }
        self.out.push(Violation::MissingLift { span: self.span });
        None
    }

    /// Like `scan_lift` but for sequences that lift unconditionally at the
    /// start (no grab precedes, so base rotations are not scanned over).
    fn take_lift(&mut self) -> Option<f64> {
        match self.next() {
            Some((_, MotionStep::Rotate { joint: ArmJoint::J2, delta_rad })) => {
                if delta_rad > 0.0 {
                    self.out.push(Violation::MissingLift { span: self.span });
                }
                Some(delta_rad)
            }
            Some((at, _)) => {
                self.unexpected(at, "the carry lift");
                None
            }
            None => {
                self.out.push(Violation::MissingLift { span: self.span });
                None
            }
        }
    }

    fn expect_lower(&mut self, lift: f64) {
        match self.next() {
            Some((_, MotionStep::Rotate { joint: ArmJoint::J2, delta_rad })) if delta_rad == -lift => {}
            _ => self.out.push(Violation::UnmatchedLift { span: self.span }),
        }
    }

    fn expect_end(&mut self) {
        while let Some((at, _)) = self.next() {
            self.unexpected(at, "end of command");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chessbot::{BoardModel, ChessArm, IkMode};
    use crate::command::{CommandSpan, Engine};

    fn engine() -> Engine {
        let board = BoardModel::new(32.0, 4.0);
        let arm = ChessArm::new(20.0, 20.0, 20.0);
        Engine::new(board, arm, IkMode::StandardTwoLink).unwrap()
    }

    fn rot(joint: ArmJoint, delta_rad: f64) -> MotionStep {
        MotionStep::Rotate { joint, delta_rad }
    }

    #[test]
    fn engine_traces_check_clean() {
        let mut e = engine();
        for cmd in [
            Command::GoToX(2),
            Command::GoToY(3),
            Command::MoveTo(4, 4),
            Command::Grab,
            Command::Release,
            Command::MoveFrom(1, 1, -3, 8),
            Command::ReturnToO,
        ] {
            e.execute(&cmd).unwrap();
        }
        assert_eq!(check_trace(e.trace()), vec![]);
    }

    #[test]
    fn base_rotation_between_grab_and_lift_flags() {
        // hand-built carry with a base swing before the lift
        let steps = vec![
            rot(ArmJoint::J1, 0.1),
            rot(ArmJoint::J2, 0.5),
            rot(ArmJoint::J4, -0.2),
            rot(ArmJoint::J3, 0.2),
            MotionStep::Grab,
            rot(ArmJoint::J1, 0.3), // disturbs pieces while gripping
            rot(ArmJoint::J2, -0.25),
            rot(ArmJoint::J1, 0.0),
            rot(ArmJoint::J2, 0.25),
            rot(ArmJoint::J2, 0.1),
            rot(ArmJoint::J4, -0.1),
            rot(ArmJoint::J3, 0.1),
            MotionStep::Release,
        ];
        let end = steps.len();
        let trace = MotionTrace {
            steps,
            annotations: vec![CommandSpan { command: Command::MoveFrom(1, 1, 2, 2), start: 0, end }],
        };
        assert_eq!(
            check_trace(&trace),
            vec![Violation::RotationBetweenGrabAndLift { span: 0, step: 5 }]
        );
    }

    #[test]
    fn double_grab_flags_alternation() {
        let trace = MotionTrace {
            steps: vec![MotionStep::Grab, MotionStep::Grab],
            annotations: vec![
                CommandSpan { command: Command::Grab, start: 0, end: 1 },
                CommandSpan { command: Command::Grab, start: 1, end: 2 },
            ],
        };
        assert_eq!(check_trace(&trace), vec![Violation::GripperAlternation { step: 1 }]);
    }

    #[test]
    fn lift_without_lower_flags() {
        let steps = vec![
            rot(ArmJoint::J1, 0.1),
            rot(ArmJoint::J2, 0.5),
            rot(ArmJoint::J4, -0.2),
            rot(ArmJoint::J3, 0.2),
            MotionStep::Grab,
            rot(ArmJoint::J2, -0.25),
            rot(ArmJoint::J1, 0.0),
            rot(ArmJoint::J2, 0.1), // wrong restore amount
            rot(ArmJoint::J2, 0.1),
            rot(ArmJoint::J4, -0.1),
            rot(ArmJoint::J3, 0.1),
            MotionStep::Release,
        ];
        let end = steps.len();
        let trace = MotionTrace {
            steps,
            annotations: vec![CommandSpan { command: Command::MoveFrom(1, 1, 2, 2), start: 0, end }],
        };
        assert_eq!(check_trace(&trace), vec![Violation::UnmatchedLift { span: 0 }]);
    }

    #[test]
    fn row_reach_out_of_order_flags() {
        let steps = vec![rot(ArmJoint::J2, 0.5), rot(ArmJoint::J3, 0.2), rot(ArmJoint::J4, -0.2)];
        let trace = MotionTrace {
            steps,
            annotations: vec![CommandSpan { command: Command::GoToY(2), start: 0, end: 3 }],
        };
        let violations = check_trace(&trace);
        assert!(violations.contains(&Violation::GoToYOrder { span: 0, step: 1 }));
    }

    #[test]
    fn unannotated_traces_only_get_global_checks() {
        let trace = MotionTrace {
            steps: vec![MotionStep::Release, MotionStep::Release],
            annotations: vec![],
        };
        assert_eq!(check_trace(&trace), vec![Violation::GripperAlternation { step: 1 }]);
    }
}
