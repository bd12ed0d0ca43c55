//! Motion traces: the primitive steps the engine emits, with command
//! boundaries, plus the JSON and CSV wire formats.

use std::fmt;

use serde::Serialize;

use super::Command;

/// The four actuated joints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArmJoint {
    J1,
    J2,
    J3,
    J4,
}

impl fmt::Display for ArmJoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ArmJoint::J1 => "J1",
            ArmJoint::J2 => "J2",
            ArmJoint::J3 => "J3",
            ArmJoint::J4 => "J4",
        };
        f.write_str(name)
    }
}

/// One primitive action. Rotation deltas are single-step bounded: the
/// engine rejects targets needing more than a half turn instead of
/// splitting them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum MotionStep {
    Rotate { joint: ArmJoint, delta_rad: f64 },
    Grab,
    Release,
}

impl fmt::Display for MotionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MotionStep::Rotate { joint, delta_rad } => write!(f, "rotate {joint} by {delta_rad} rad"),
            MotionStep::Grab => f.write_str("grab"),
            MotionStep::Release => f.write_str("release"),
        }
    }
}

/// Which command produced the steps in `start..end`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandSpan {
    pub command: Command,
    pub start: usize,
    pub end: usize,
}

/// An ordered list of steps with command boundaries. Replaying the steps
/// from the initial state reproduces the engine's joint registers exactly,
/// because the registers are updated from the very deltas recorded here.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MotionTrace {
    pub steps: Vec<MotionStep>,
    pub annotations: Vec<CommandSpan>,
}

impl MotionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Steps of the `i`-th command.
    pub fn command_steps(&self, i: usize) -> &[MotionStep] {
        let span = &self.annotations[i];
        &self.steps[span.start..span.end]
    }

    /// Sum of rotation deltas per joint, in J1..J4 order.
    pub fn joint_sums(&self) -> [f64; 4] {
        let mut sums = [0.0; 4];
        for step in &self.steps {
            if let MotionStep::Rotate { joint, delta_rad } = step {
                sums[*joint as usize] += delta_rad;
            }
        }
        sums
    }

    /// JSON document with a `header` config echo and the `steps` array.
    pub fn to_json<H: Serialize>(&self, header: &H) -> String {
        #[derive(Serialize)]
        struct TraceFile<'a, H> {
            header: &'a H,
            steps: &'a [MotionStep],
        }
        serde_json::to_string_pretty(&TraceFile { header, steps: &self.steps })
            .expect("trace serializes")
    }

    /// CSV rows `step,op,joint,delta_rad`; grab/release rows leave the
    /// joint and delta columns empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,op,joint,delta_rad\n");
        for (i, step) in self.steps.iter().enumerate() {
            match step {
                MotionStep::Rotate { joint, delta_rad } => {
                    out.push_str(&format!("{i},rotate,{joint},{delta_rad}\n"));
                }
                MotionStep::Grab => out.push_str(&format!("{i},grab,,\n")),
                MotionStep::Release => out.push_str(&format!("{i},release,,\n")),
            }
        }
        out
    }
}
