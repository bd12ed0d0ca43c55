//! Planar joint-chain kinematics.
//!
//! The core arm model is a riser column of height `l0` carrying two links
//! `l1` and `l2` in a vertical plane. Shoulder and elbow angles are measured
//! from the horizontal, both absolute, so forward kinematics is a plain sum
//! of link projections:
//!
//! ```text
//! x = l1*cos(shoulder) + l2*cos(elbow_abs)
//! y = l0 + l1*sin(shoulder) + l2*sin(elbow_abs)
//! ```
//!
//! Inverse kinematics solves the two-link problem relative to the shoulder
//! and has the usual two mirror solutions (elbow up / elbow down).

use std::f64::consts::PI;

use thiserror::Error;

/// Errors raised by kinematic queries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    /// Target lies outside the annulus the two links can sweep.
    #[error("OutOfReach: target distance {distance} outside reach [{min_reach}, {max_reach}]")]
    OutOfReach {
        distance: f64,
        min_reach: f64,
        max_reach: f64,
    },
    /// Target coincides with the shoulder of an equal-link arm; every
    /// shoulder angle is a solution.
    #[error("Singular: target at the shoulder with equal links has infinitely many solutions")]
    Singular,
    /// Joint value list does not match the chain length.
    #[error("LengthMismatch: chain has {expected} joints, got {actual} values")]
    LengthMismatch { expected: usize, actual: usize },
}

/// Normalize an angle to `(-PI, PI]`.
pub fn normalize_angle(angle: f64) -> f64 {
    let mut a = angle % (2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    } else if a <= -PI {
        a += 2.0 * PI;
    }
    a
}

/// A closed interval of joint values (radians for revolute joints, length
/// units for prismatic ones).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub min: f64,
    pub max: f64,
}

impl Interval {
    /// # Panics
    /// Panics if `min > max`.
    pub fn new(min: f64, max: f64) -> Self {
        assert!(min <= max, "interval min {min} exceeds max {max}");
        Interval { min, max }
    }

    /// Full revolution, `[-PI, PI]`.
    pub const fn full_turn() -> Self {
        Interval { min: -PI, max: PI }
    }

    /// Boundary values are inside.
    pub fn contains(&self, value: f64) -> bool {
        value >= self.min && value <= self.max
    }
}

/// Primitive joint motions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JointKind {
    /// Translation along a fixed axis.
    Prismatic,
    /// Rotation about a fixed axis.
    Revolute,
}

/// One joint plus the link it carries to the next joint.
///
/// `link_weight` acts at the link midpoint in static-moment calculations;
/// a zero-length link models a point mass carried at the joint itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Joint {
    pub kind: JointKind,
    pub min_limit: f64,
    pub max_limit: f64,
    pub link_length: f64,
    pub link_weight: f64,
}

impl Joint {
    /// # Panics
    /// Panics if `min_limit > max_limit`, or if length/weight is negative.
    pub fn new(kind: JointKind, min_limit: f64, max_limit: f64, link_length: f64, link_weight: f64) -> Self {
        assert!(min_limit <= max_limit, "joint limit min {min_limit} exceeds max {max_limit}");
        assert!(link_length >= 0.0, "link length must be non-negative");
        assert!(link_weight >= 0.0, "link weight must be non-negative");
        Joint { kind, min_limit, max_limit, link_length, link_weight }
    }

    pub fn revolute(min_limit: f64, max_limit: f64, link_length: f64, link_weight: f64) -> Self {
        Self::new(JointKind::Revolute, min_limit, max_limit, link_length, link_weight)
    }

    pub fn prismatic(min_limit: f64, max_limit: f64, link_length: f64, link_weight: f64) -> Self {
        Self::new(JointKind::Prismatic, min_limit, max_limit, link_length, link_weight)
    }
}

/// An ordered chain of joints on a fixed base column.
///
/// One actuator per joint, so the chain's degrees of freedom equal its
/// joint count.
#[derive(Debug, Clone, PartialEq)]
pub struct JointChain {
    pub base_height: f64,
    pub joints: Vec<Joint>,
}

impl JointChain {
    pub fn new(base_height: f64, joints: Vec<Joint>) -> Self {
        assert!(base_height >= 0.0, "base height must be non-negative");
        JointChain { base_height, joints }
    }

    /// Degrees of freedom: one per joint.
    pub fn dof(&self) -> usize {
        self.joints.len()
    }
}

/// Planar pose of the end effector: position plus orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose2 {
    pub x: f64,
    pub y: f64,
    /// Normalized to `(-PI, PI]`.
    pub orientation: f64,
}

impl Pose2 {
    pub fn new(x: f64, y: f64, orientation: f64) -> Self {
        Pose2 { x, y, orientation: normalize_angle(orientation) }
    }
}

/// The three-length planar arm: base column `l0`, upper link `l1`,
/// forearm `l2`, with per-joint angle limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarArm {
    pub l0: f64,
    pub l1: f64,
    pub l2: f64,
    pub shoulder_limits: Interval,
    pub elbow_limits: Interval,
}

impl PlanarArm {
    /// Arm with full-turn limits on both joints.
    ///
    /// # Panics
    /// Panics if `l0 < 0` or either link length is not positive.
    pub fn new(l0: f64, l1: f64, l2: f64) -> Self {
        assert!(l0 >= 0.0, "base column length must be non-negative");
        assert!(l1 > 0.0 && l2 > 0.0, "link lengths must be positive");
        PlanarArm {
            l0,
            l1,
            l2,
            shoulder_limits: Interval::full_turn(),
            elbow_limits: Interval::full_turn(),
        }
    }

    pub fn with_limits(mut self, shoulder: Interval, elbow: Interval) -> Self {
        self.shoulder_limits = shoulder;
        self.elbow_limits = elbow;
        self
    }

    pub fn within_limits(&self, angles: AnglePair) -> bool {
        self.shoulder_limits.contains(angles.shoulder) && self.elbow_limits.contains(angles.elbow_abs)
    }
}

/// Shoulder and elbow angles, both absolute from the horizontal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePair {
    pub shoulder: f64,
    pub elbow_abs: f64,
}

/// Which of the two mirror IK solutions to take; selects the sign of
/// `sin` of the relative elbow angle (`Up` positive, `Down` negative).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElbowBranch {
    Up,
    Down,
}

/// Forward kinematics of the planar arm.
///
/// Returns the end-effector pose in the arm's vertical plane, with the base
/// at the origin. The orientation is the sum of the two absolute angles,
/// normalized.
pub fn fk_planar(arm: &PlanarArm, angles: AnglePair) -> Pose2 {
    let x = arm.l1 * angles.shoulder.cos() + arm.l2 * angles.elbow_abs.cos();
    let y = arm.l0 + arm.l1 * angles.shoulder.sin() + arm.l2 * angles.elbow_abs.sin();
    Pose2::new(x, y, angles.shoulder + angles.elbow_abs)
}

/// Inverse kinematics of the two links, target given relative to the
/// shoulder (subtract `l0` from a world-frame y first).
///
/// Law of cosines on the elbow, then the shoulder from the target bearing:
///
/// ```text
/// c2 = (x^2 + y^2 - l1^2 - l2^2) / (2*l1*l2)
/// s2 = +/- sqrt(1 - c2^2)                       (branch sign)
/// shoulder  = atan2(y, x) - atan2(l2*s2, l1 + l2*c2)
/// elbow_abs = shoulder + atan2(s2, c2)
/// ```
///
/// Both returned angles are normalized to `(-PI, PI]`.
pub fn ik_planar(arm: &PlanarArm, target: (f64, f64), branch: ElbowBranch) -> Result<AnglePair, KinematicsError> {
    let (x, y) = target;
    let (l1, l2) = (arm.l1, arm.l2);
    if x == 0.0 && y == 0.0 && l1 == l2 {
        return Err(KinematicsError::Singular);
    }
    let dist_sq = x * x + y * y;
    let raw_c2 = (dist_sq - l1 * l1 - l2 * l2) / (2.0 * l1 * l2);
    let c2 = clamp_unit(raw_c2).ok_or(KinematicsError::OutOfReach {
        distance: dist_sq.sqrt(),
        min_reach: (l1 - l2).abs(),
        max_reach: l1 + l2,
    })?;
    let s2 = match branch {
        ElbowBranch::Up => (1.0 - c2 * c2).sqrt(),
        ElbowBranch::Down => -(1.0 - c2 * c2).sqrt(),
    };
    let shoulder = normalize_angle(y.atan2(x) - (l2 * s2).atan2(l1 + l2 * c2));
    let elbow_abs = normalize_angle(shoulder + s2.atan2(c2));
    Ok(AnglePair { shoulder, elbow_abs })
}

// Guard band of 1e-12 absorbs rounding right at the annulus boundary;
// anything further out is a genuine reach failure.
fn clamp_unit(v: f64) -> Option<f64> {
    const GUARD: f64 = 1e-12;
    if v > 1.0 {
        (v - 1.0 <= GUARD).then_some(1.0)
    } else if v < -1.0 {
        (-1.0 - v <= GUARD).then_some(-1.0)
    } else {
        Some(v)
    }
}

/// True iff every joint value lies inside its joint's closed limit interval.
pub fn within_limits(chain: &JointChain, joint_values: &[f64]) -> Result<bool, KinematicsError> {
    if joint_values.len() != chain.joints.len() {
        return Err(KinematicsError::LengthMismatch {
            expected: chain.joints.len(),
            actual: joint_values.len(),
        });
    }
    Ok(chain
        .joints
        .iter()
        .zip(joint_values)
        .all(|(j, &v)| v >= j.min_limit && v <= j.max_limit))
}

/// A task is feasible only when it demands exactly the degrees of freedom
/// the robot has.
pub fn dof_feasible(dof_robot: usize, dof_task: usize) -> bool {
    dof_robot == dof_task
}
