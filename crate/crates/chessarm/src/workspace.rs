//! Reachable-space sampling and base-structure classification.
//!
//! The workspace of the planar arm is computed in its vertical plane by
//! grid-sampling both joints over their limit intervals and pushing every
//! pair through forward kinematics. Sampling is deterministic, so two runs
//! at the same resolution produce the same cloud.

use thiserror::Error;

use crate::kinematics::{fk_planar, ik_planar, AnglePair, ElbowBranch, JointChain, JointKind, PlanarArm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WorkspaceError {
    /// Structure classification needs the first three joints.
    #[error("TooFewJoints: classification needs 3 joints, chain has {found}")]
    TooFewJoints { found: usize },
}

/// Coordinate configuration a base structure is adapted to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordinateSystem {
    Cartesian,
    Cylindrical,
    Spherical,
    Torical,
    Anthropomorphic,
    None,
}

/// Base structure families, keyed by the kinds of the first three joints.
/// Structures that differ only by joint order share a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureCode {
    /// Three prismatic joints.
    Ppp,
    /// One revolute, two prismatic, any order.
    RppPrp,
    /// Two revolute, one prismatic, any order.
    Rrp,
    /// The rarer two-revolute/one-prismatic family adapted to torical
    /// coordinates; only selected via an explicit hint.
    RrpTorical,
    /// Three revolute joints.
    Rrr,
    Other,
}

/// A structure class with its industry share and natural coordinate system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureClass {
    pub code: StructureCode,
    /// Share of industrial arms using this structure, in percent.
    pub industry_share: f64,
    pub coordinate_system: CoordinateSystem,
}

impl StructureClass {
    pub const fn of(code: StructureCode) -> Self {
        let (industry_share, coordinate_system) = match code {
            StructureCode::Ppp => (14.0, CoordinateSystem::Cartesian),
            StructureCode::RppPrp => (47.0, CoordinateSystem::Cylindrical),
            StructureCode::Rrp => (13.0, CoordinateSystem::Spherical),
            StructureCode::RrpTorical => (1.0, CoordinateSystem::Torical),
            StructureCode::Rrr => (25.0, CoordinateSystem::Anthropomorphic),
            StructureCode::Other => (0.0, CoordinateSystem::None),
        };
        StructureClass { code, industry_share, coordinate_system }
    }
}

/// Classify a chain by the kinds of its first three joints.
///
/// The two-revolute/one-prismatic code is ambiguous between the spherical
/// and torical families; without a hint the common spherical class wins.
pub fn classify_structure(chain: &JointChain) -> Result<StructureClass, WorkspaceError> {
    classify_structure_hinted(chain, None)
}

/// Classify with an optional coordinate-system hint to disambiguate the
/// torical family. Hints that do not match an ambiguous code are ignored.
pub fn classify_structure_hinted(
    chain: &JointChain,
    hint: Option<CoordinateSystem>,
) -> Result<StructureClass, WorkspaceError> {
    if chain.joints.len() < 3 {
        return Err(WorkspaceError::TooFewJoints { found: chain.joints.len() });
    }
    let revolute = chain.joints[..3].iter().filter(|j| j.kind == JointKind::Revolute).count();
    let code = match revolute {
        0 => StructureCode::Ppp,
        1 => StructureCode::RppPrp,
        2 if hint == Some(CoordinateSystem::Torical) => StructureCode::RrpTorical,
        2 => StructureCode::Rrp,
        _ => StructureCode::Rrr,
    };
    Ok(StructureClass::of(code))
}

/// A sampled planar workspace: end-effector positions for a grid of
/// in-limit joint angles.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkspaceCloud {
    pub points: Vec<(f64, f64)>,
    /// Samples taken per joint; the cloud holds `resolution^2` points.
    pub resolution: usize,
}

impl WorkspaceCloud {
    /// CSV with an `x,y` header and one point per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y\n");
        for (x, y) in &self.points {
            out.push_str(&format!("{x},{y}\n"));
        }
        out
    }
}

/// Grid-sample both joints over their limit intervals at `resolution`
/// samples each (interval endpoints included) and collect the forward
/// kinematics of every pair.
///
/// # Panics
/// Panics if `resolution < 2`.
pub fn sample_workspace(arm: &PlanarArm, resolution: usize) -> WorkspaceCloud {
    assert!(resolution >= 2, "resolution must be at least 2");
    let grid = |min: f64, max: f64, i: usize| min + (max - min) * i as f64 / (resolution - 1) as f64;
    let mut points = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        let shoulder = grid(arm.shoulder_limits.min, arm.shoulder_limits.max, i);
        for j in 0..resolution {
            let elbow_abs = grid(arm.elbow_limits.min, arm.elbow_limits.max, j);
            let pose = fk_planar(arm, AnglePair { shoulder, elbow_abs });
            points.push((pose.x, pose.y));
        }
    }
    WorkspaceCloud { points, resolution }
}

/// True iff some elbow branch solves the world-frame point and the
/// resulting angles lie inside the arm's limits.
pub fn reachable(arm: &PlanarArm, point: (f64, f64)) -> bool {
    let target = (point.0, point.1 - arm.l0);
    [ElbowBranch::Up, ElbowBranch::Down].into_iter().any(|branch| {
        ik_planar(arm, target, branch).map(|angles| arm.within_limits(angles)).unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{Interval, Joint};
    use std::f64::consts::PI;

    fn rev() -> Joint {
        Joint::revolute(-PI, PI, 1.0, 0.0)
    }

    fn pri() -> Joint {
        Joint::prismatic(0.0, 1.0, 1.0, 0.0)
    }

    #[test]
    fn classify_cartesian() {
        let chain = JointChain::new(0.0, vec![pri(), pri(), pri(), rev()]);
        let class = classify_structure(&chain).unwrap();
        assert_eq!(class.code, StructureCode::Ppp);
        assert_eq!(class.industry_share, 14.0);
        assert_eq!(class.coordinate_system, CoordinateSystem::Cartesian);
    }

    #[test]
    fn classify_anthropomorphic() {
        let chain = JointChain::new(0.0, vec![rev(), rev(), rev(), rev()]);
        let class = classify_structure(&chain).unwrap();
        assert_eq!(class.code, StructureCode::Rrr);
        assert_eq!(class.industry_share, 25.0);
        assert_eq!(class.coordinate_system, CoordinateSystem::Anthropomorphic);
    }

    #[test]
    fn classify_spherical_default() {
        let chain = JointChain::new(0.0, vec![rev(), rev(), pri(), pri()]);
        let class = classify_structure(&chain).unwrap();
        assert_eq!(class.code, StructureCode::Rrp);
        assert_eq!(class.industry_share, 13.0);
        assert_eq!(class.coordinate_system, CoordinateSystem::Spherical);
    }

    #[test]
    fn classify_cylindrical_any_order() {
        for joints in [vec![rev(), pri(), pri()], vec![pri(), rev(), pri()], vec![pri(), pri(), rev()]] {
            let class = classify_structure(&JointChain::new(0.0, joints)).unwrap();
            assert_eq!(class.code, StructureCode::RppPrp);
            assert_eq!(class.industry_share, 47.0);
        }
    }

    #[test]
    fn classify_torical_with_hint() {
        let chain = JointChain::new(0.0, vec![rev(), pri(), rev()]);
        let class = classify_structure_hinted(&chain, Some(CoordinateSystem::Torical)).unwrap();
        assert_eq!(class.code, StructureCode::RrpTorical);
        assert_eq!(class.industry_share, 1.0);
        // hint is irrelevant for unambiguous codes
        let rrr = JointChain::new(0.0, vec![rev(), rev(), rev()]);
        let class = classify_structure_hinted(&rrr, Some(CoordinateSystem::Torical)).unwrap();
        assert_eq!(class.code, StructureCode::Rrr);
    }

    #[test]
    fn classify_needs_three_joints() {
        let chain = JointChain::new(0.0, vec![rev(), rev()]);
        assert_eq!(classify_structure(&chain), Err(WorkspaceError::TooFewJoints { found: 2 }));
    }

    #[test]
    fn cloud_stays_within_outer_reach() {
        let arm = PlanarArm::new(0.0, 1.0, 1.0);
        let cloud = sample_workspace(&arm, 30);
        assert_eq!(cloud.points.len(), 900);
        for (x, y) in &cloud.points {
            assert!((x * x + y * y).sqrt() <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn cloud_respects_inner_annulus() {
        let arm = PlanarArm::new(0.0, 2.0, 1.0);
        let cloud = sample_workspace(&arm, 40);
        for (x, y) in &cloud.points {
            assert!((x * x + y * y).sqrt() >= 1.0 - 1e-12);
        }
    }

    #[test]
    fn reachable_inside_annulus() {
        let arm = PlanarArm::new(0.0, 1.0, 1.0);
        assert!(reachable(&arm, (1.5, 0.0)));
        assert!(!reachable(&arm, (3.0, 0.0)));
    }

    #[test]
    fn reachable_blocked_by_limits() {
        // both branches need a negative shoulder angle for a point below
        // the workspace, so the quarter-limited arm cannot reach it
        let limits = Interval::new(0.0, PI);
        let arm = PlanarArm::new(0.0, 1.0, 1.0).with_limits(limits, limits);
        assert!(!reachable(&arm, (0.0, -1.5)));
        assert!(reachable(&arm, (0.0, 1.5)));
    }

    // Coverage check against brute-force membership: both sides counted on
    // the same grid, a cell counting as inside when any of its 4x4
    // subsamples is reachable, and as covered when a cloud point lands in
    // it.
    #[test]
    fn quarter_limit_coverage_matches_membership() {
        let limits = Interval::new(0.0, PI);
        let arm = PlanarArm::new(0.0, 1.0, 1.0).with_limits(limits, limits);
        let cloud = sample_workspace(&arm, 100);

        let n = 40; // counting cells per axis over [-2, 2]^2
        let cell = 4.0 / n as f64;
        let mut covered = vec![false; n * n];
        for &(x, y) in &cloud.points {
            let i = (((x + 2.0) / cell) as usize).min(n - 1);
            let j = (((y + 2.0) / cell) as usize).min(n - 1);
            covered[j * n + i] = true;
        }
        let mut member_count = 0usize;
        let mut covered_count = 0usize;
        for j in 0..n {
            for i in 0..n {
                // corner-inclusive 5x5 subsample, so slivers shared with
                // neighboring cells still register
                let member = (0..25).any(|s| {
                    let sx = -2.0 + (i as f64 + (s % 5) as f64 / 4.0) * cell;
                    let sy = -2.0 + (j as f64 + (s / 5) as f64 / 4.0) * cell;
                    reachable(&arm, (sx, sy))
                });
                if member {
                    member_count += 1;
                }
                if covered[j * n + i] {
                    covered_count += 1;
                }
            }
        }
        let delta = (covered_count as f64 - member_count as f64).abs();
        assert!(
            delta <= 0.02 * member_count as f64,
            "covered {covered_count} vs member {member_count}"
        );
    }

    // Widening a limit interval by whole grid steps keeps every old sample
    // in the new cloud.
    #[test]
    fn wider_limits_keep_old_samples() {
        let arm_narrow = PlanarArm::new(0.0, 1.0, 1.0)
            .with_limits(Interval::new(0.0, PI), Interval::new(0.0, PI));
        // step pi/4 with 5 samples; the wide arm spans [-pi/2, 3pi/2] with
        // 9 samples of the same step, so the narrow grid is a subgrid
        let arm_wide = PlanarArm::new(0.0, 1.0, 1.0)
            .with_limits(Interval::new(-PI / 2.0, 1.5 * PI), Interval::new(-PI / 2.0, 1.5 * PI));
        let narrow = sample_workspace(&arm_narrow, 5);
        let wide = sample_workspace(&arm_wide, 9);
        for p in &narrow.points {
            assert!(
                wide.points
                    .iter()
                    .any(|q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9),
                "narrow-cloud point {p:?} missing from widened cloud"
            );
        }
    }

    #[test]
    fn csv_has_header_and_rows() {
        let arm = PlanarArm::new(0.0, 1.0, 1.0);
        let cloud = sample_workspace(&arm, 2);
        let csv = cloud.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,y"));
        assert_eq!(lines.count(), 4);
    }
}
