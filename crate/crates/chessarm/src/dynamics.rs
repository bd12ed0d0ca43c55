//! Static torque sizing and spin-up dynamics.
//!
//! Everything here is a closed-form formula over caller-consistent units;
//! the documented reference convention is newtons, meters, kilograms and
//! seconds. Weights are forces (mass times gravity already applied), and
//! each link's center of mass sits at half its length.

use thiserror::Error;

use crate::kinematics::JointChain;

/// Errors raised by sizing calculations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    /// Spin-up over a non-positive ramp time is undefined.
    #[error("NonPositiveTime: ramp time {time} must be positive")]
    NonPositiveTime { time: f64 },
    /// Pivot joint index past the end of the chain.
    #[error("IndexOutOfRange: joint {index} in a chain of {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// Load case for the two lifting joints of a three-link arm.
///
/// `l1`..`l3` are linkage lengths, `w1`/`w2` the first and second link
/// weights, `w3` the lifted object's weight and `w4` the weight of the
/// second joint's hardware. `l3` is the lifted object's lever arm from
/// the second joint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadSpec3 {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub w4: f64,
}

/// Spin-up case: the arm held straight out, accelerated from rest to
/// `omega` rad/s over `time` seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSpec {
    /// Arm mass, treated as a rod of length `length`.
    pub m_arm: f64,
    /// Point payload carried at the tip.
    pub m_payload: f64,
    /// Full arm length.
    pub length: f64,
    /// Target angular velocity (rad/s).
    pub omega: f64,
    /// Ramp time (s), must be positive.
    pub time: f64,
}

/// Gripper sizing case for a two-jaw gripper holding a part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GripperSpec {
    /// Closing force applied by the jaws.
    pub grip_force: f64,
    /// Distance from the gripper face to the part's center of gravity.
    pub jaw_length: f64,
    /// Mass of the held part.
    pub part_mass: f64,
    /// Sum of accelerations acting on the part, gravity included by the
    /// caller.
    pub accel_total: f64,
}

/// Moments about the two lifting joints with the arm stretched out
/// horizontally:
///
/// ```text
/// m1 = (l1/2)*w1 + l1*w4 + (l1 + l2/2)*w2 + (l1 + l3)*w3
/// m2 = (l2/2)*w2 + l3*w3
/// ```
pub fn joint_moments(load: &LoadSpec3) -> (f64, f64) {
    let m1 = 0.5 * load.l1 * load.w1
        + load.l1 * load.w4
        + (load.l1 + 0.5 * load.l2) * load.w2
        + (load.l1 + load.l3) * load.w3;
    let m2 = 0.5 * load.l2 * load.w2 + load.l3 * load.w3;
    (m1, m2)
}

/// Static moment about `about_joint` for an arbitrary chain stretched out
/// horizontally: each downstream link's weight acts at its midpoint, and
/// the payload hangs at the chain tip.
///
/// Independent of [`joint_moments`]; used as its cross-check oracle.
pub fn static_moment_generic(chain: &JointChain, payload: f64, about_joint: usize) -> Result<f64, DynamicsError> {
    let n = chain.joints.len();
    if about_joint >= n {
        return Err(DynamicsError::IndexOutOfRange { index: about_joint, len: n });
    }
    let pivot: f64 = chain.joints[..about_joint].iter().map(|j| j.link_length).sum();
    let mut reach = pivot;
    let mut moment = 0.0;
    for joint in &chain.joints[about_joint..] {
        moment += joint.link_weight * (reach - pivot + 0.5 * joint.link_length);
        reach += joint.link_length;
    }
    moment += payload * (reach - pivot);
    Ok(moment)
}

/// Tip speed of a radius spinning at `freq` revolutions per second:
/// `v = 2*PI*radius*freq`.
pub fn tip_speed(radius: f64, freq: f64) -> f64 {
    2.0 * std::f64::consts::PI * radius * freq
}

/// Torque needed to spin the arm up from rest at constant angular
/// acceleration `omega/time`.
///
/// Returns `(tau_arm, tau_obj, tau_motor)` where
///
/// ```text
/// tau_arm   = m_arm * (length^2 / 4) * omega / time
/// tau_obj   = m_payload * length^2 * omega / time
/// tau_motor = tau_arm + tau_obj
/// ```
pub fn spin_up_torque(spec: &SpinSpec) -> Result<(f64, f64, f64), DynamicsError> {
    if spec.time <= 0.0 {
        return Err(DynamicsError::NonPositiveTime { time: spec.time });
    }
    let ramp = spec.omega / spec.time;
    let tau_arm = spec.m_arm * spec.length * spec.length / 4.0 * ramp;
    let tau_obj = spec.m_payload * spec.length * spec.length * ramp;
    Ok((tau_arm, tau_obj, tau_arm + tau_obj))
}

/// Torque the gripper imposes on itself plus the torque from accelerating
/// the held part, both on the jaw lever arm.
///
/// Returns `(tau_gripper, tau_part, tau_total)`.
pub fn gripper_torque(spec: &GripperSpec) -> (f64, f64, f64) {
    let tau_gripper = spec.grip_force * spec.jaw_length;
    let tau_part = spec.accel_total * spec.part_mass * spec.jaw_length;
    (tau_gripper, tau_part, tau_gripper + tau_part)
}
