//! Chessboard coordinate model and the four-revolute board arm.
//!
//! The board of side length `L` sits `dif` in front of the robot's center,
//! columns numbered `-3..=4` (negative to the robot's left) and rows
//! `1..=8` away from it. A cell's center maps to board coordinates by
//!
//! ```text
//! xf = col * L/8 - L/16
//! yf = row * L/8 - L/16 + dif
//! ```
//!
//! The arm itself is a yaw base (J1), shoulder (J2) and elbow (J3) carrying
//! two equal links of length `d`, and a wrist (J4) that counter-rotates so
//! the gripper always points straight down.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kinematics::{ik_planar, ElbowBranch, KinematicsError, PlanarArm};

/// Board columns, negative half to the robot's left.
pub const COLUMNS: RangeInclusive<i64> = -3..=4;
/// Board rows, counted away from the robot.
pub const ROWS: RangeInclusive<i64> = 1..=8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChessError {
    /// Cell index outside the 8x8 board.
    #[error("CellOutOfRange: {axis} {value} outside [{min}, {max}]")]
    CellOutOfRange { axis: &'static str, value: i64, min: i64, max: i64 },
    /// The sizing rule produced a non-positive link length.
    #[error("NonPositiveLink: derived link length {computed} is not positive")]
    NonPositiveLink { computed: f64 },
    /// Literal-mode shoulder formula asked for asin of a value beyond 1.
    #[error("AsinDomain: |yf/d| = {ratio} exceeds 1")]
    AsinDomain { ratio: f64 },
    /// Wrist target beyond what the two equal links can span.
    #[error("OutOfReach: wrist target distance {distance} outside [{min_reach}, {max_reach}]")]
    OutOfReach { distance: f64, min_reach: f64, max_reach: f64 },
    /// Targets behind the robot's base line are not served.
    #[error("TargetNotInFront: yf = {yf} must be positive")]
    TargetNotInFront { yf: f64 },
}

/// Chessboard geometry: side length and the standoff from the robot center
/// to the near edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoardModel {
    pub side_length: f64,
    pub dif: f64,
}

impl BoardModel {
    /// # Panics
    /// Panics if `side_length <= 0` or `dif < 0`.
    pub fn new(side_length: f64, dif: f64) -> Self {
        assert!(side_length > 0.0, "board side length must be positive");
        assert!(dif >= 0.0, "board standoff must be non-negative");
        BoardModel { side_length, dif }
    }

    pub fn cell_side(&self) -> f64 {
        self.side_length / 8.0
    }

    /// Board x of a column's center line.
    pub fn column_x(&self, col: i64) -> Result<f64, ChessError> {
        if !COLUMNS.contains(&col) {
            return Err(ChessError::CellOutOfRange {
                axis: "column",
                value: col,
                min: *COLUMNS.start(),
                max: *COLUMNS.end(),
            });
        }
        Ok(col as f64 * self.side_length / 8.0 - self.side_length / 16.0)
    }

    /// Board y of a row's center line, measured from the robot center.
    pub fn row_y(&self, row: i64) -> Result<f64, ChessError> {
        if !ROWS.contains(&row) {
            return Err(ChessError::CellOutOfRange {
                axis: "row",
                value: row,
                min: *ROWS.start(),
                max: *ROWS.end(),
            });
        }
        Ok(row as f64 * self.side_length / 8.0 - self.side_length / 16.0 + self.dif)
    }

    /// Center `(xf, yf)` of a board cell.
    pub fn cell_center(&self, col: i64, row: i64) -> Result<(f64, f64), ChessError> {
        Ok((self.column_x(col)?, self.row_y(row)?))
    }

    /// The parking target used by `return to o`: the cell mapping evaluated
    /// at column 0, row 0, which lies just outside the playing rows.
    pub fn home_target(&self) -> (f64, f64) {
        (
            -self.side_length / 16.0,
            -self.side_length / 16.0 + self.dif,
        )
    }
}

/// Link length that spaces two equal links over the board per the sizing
/// rule `d = (15L - 16*dif) / 32`.
pub fn default_link_length(board: &BoardModel) -> Result<f64, ChessError> {
    let d = (15.0 * board.side_length - 16.0 * board.dif) / 32.0;
    if d <= 0.0 {
        return Err(ChessError::NonPositiveLink { computed: d });
    }
    Ok(d)
}

/// The four-revolute board arm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChessArm {
    /// Height of the base column carrying the shoulder.
    pub column_height: f64,
    /// Shared length of the upper arm and forearm links.
    pub link_d: f64,
    /// Length of the gripper assembly hanging from the wrist.
    pub gripper_length: f64,
}

impl ChessArm {
    /// # Panics
    /// Panics if `link_d <= 0`, any length is negative, or the gripper is
    /// longer than the column.
    pub fn new(column_height: f64, link_d: f64, gripper_length: f64) -> Self {
        assert!(link_d > 0.0, "link length must be positive");
        assert!(column_height >= 0.0 && gripper_length >= 0.0, "lengths must be non-negative");
        assert!(
            gripper_length <= column_height,
            "gripper length {gripper_length} exceeds column height {column_height}"
        );
        ChessArm { column_height, link_d, gripper_length }
    }

    /// Vertical drop from the shoulder down to the wrist plane.
    pub fn gripper_drop(&self) -> f64 {
        self.column_height - self.gripper_length
    }
}

/// How the board IK is solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IkMode {
    /// Evaluate the original closed-form expressions verbatim, including
    /// their domain failures: `shoulder = asin(yf/d)`, `yaw = atan(xf/yf)`.
    #[serde(rename = "paper")]
    PaperLiteral,
    /// Geometric solution: yaw from the target bearing, then the two-link
    /// problem in the vertical plane for the wrist point.
    #[serde(rename = "standard")]
    StandardTwoLink,
}

/// Joint rotations for the four joints. `wrist` always equals `-elbow`,
/// which keeps the gripper axis pointing down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointTargets {
    /// J1, base yaw.
    pub yaw: f64,
    /// J2, shoulder, measured from the downward vertical.
    pub shoulder: f64,
    /// J3, elbow.
    pub elbow: f64,
    /// J4, wrist compensation; by construction `-elbow`.
    pub wrist: f64,
}

impl JointTargets {
    pub fn new(yaw: f64, shoulder: f64, elbow: f64) -> Self {
        JointTargets { yaw, shoulder, elbow, wrist: -elbow }
    }
}

/// Solve the four joint rotations that place the gripper over board point
/// `(xf, yf)`.
///
/// In `StandardTwoLink` mode the shoulder and elbow come from the two-link
/// solution for the wrist point at horizontal distance `sqrt(xf^2 + yf^2)`
/// and vertical drop [`ChessArm::gripper_drop`], elbow arched above the
/// shoulder-wrist chord. The returned `shoulder` and `elbow` are absolute
/// link angles measured from the downward vertical, so the wrist setting
/// `-elbow` makes the gripper hang vertically.
pub fn chess_ik(arm: &ChessArm, target: (f64, f64), mode: IkMode) -> Result<JointTargets, ChessError> {
    let (xf, yf) = target;
    if yf <= 0.0 {
        return Err(ChessError::TargetNotInFront { yf });
    }
    match mode {
        IkMode::PaperLiteral => {
            let ratio = yf / arm.link_d;
            if ratio.abs() > 1.0 {
                return Err(ChessError::AsinDomain { ratio });
            }
            let yaw = (xf / yf).atan();
            let shoulder = ratio.asin();
            let elbow = std::f64::consts::FRAC_PI_2 - shoulder;
            Ok(JointTargets::new(yaw, shoulder, elbow))
        }
        IkMode::StandardTwoLink => {
            let yaw = xf.atan2(yf);
            let reach = (xf * xf + yf * yf).sqrt();
            let drop = arm.gripper_drop();
            let two_link = PlanarArm::new(0.0, arm.link_d, arm.link_d);
            // Elbow above the shoulder-wrist chord clears the board, which
            // is the negative-sine branch for targets ahead and below.
            let angles = ik_planar(&two_link, (reach, -drop), ElbowBranch::Down).map_err(|e| match e {
                KinematicsError::OutOfReach { distance, min_reach, max_reach } => {
                    ChessError::OutOfReach { distance, min_reach, max_reach }
                }
                // equal links never report Singular for reach > 0
                _ => ChessError::OutOfReach {
                    distance: 0.0,
                    min_reach: 0.0,
                    max_reach: 2.0 * arm.link_d,
                },
            })?;
            let shoulder = angles.shoulder + std::f64::consts::FRAC_PI_2;
            let elbow = angles.elbow_abs + std::f64::consts::FRAC_PI_2;
            Ok(JointTargets::new(yaw, shoulder, elbow))
        }
    }
}

/// One cell's reachability outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellReach {
    pub col: i64,
    pub row: i64,
    pub xf: f64,
    pub yf: f64,
    pub ok: bool,
    pub error: Option<String>,
}

/// Reachability of every cell on the board under one IK mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReachReport {
    pub mode: IkMode,
    pub cells: Vec<CellReach>,
    pub reachable: usize,
    pub unreachable: usize,
    /// True only when all 64 cells are reachable.
    pub ok: bool,
}

impl ReachReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reach report serializes")
    }
}

/// Try `chess_ik` on all 64 cell centers and report per-cell outcomes.
/// Failures are data, not errors.
pub fn validate_board_reach(arm: &ChessArm, board: &BoardModel, mode: IkMode) -> ReachReport {
    let mut cells = Vec::with_capacity(64);
    let mut reachable = 0;
    for row in ROWS {
        for col in COLUMNS {
            let (xf, yf) = board.cell_center(col, row).expect("cell indices in range");
            let outcome = chess_ik(arm, (xf, yf), mode);
            let ok = outcome.is_ok();
            if ok {
                reachable += 1;
            }
            cells.push(CellReach { col, row, xf, yf, ok, error: outcome.err().map(|e| e.to_string()) });
        }
    }
    let unreachable = cells.len() - reachable;
    ReachReport { mode, cells, reachable, unreachable, ok: unreachable == 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    const TOL: f64 = 1e-12;

    fn board() -> BoardModel {
        BoardModel::new(32.0, 4.0)
    }

    #[test]
    fn cell_centers_spot_values() {
        assert_eq!(board().cell_center(1, 1).unwrap(), (2.0, 6.0));
        assert_eq!(board().cell_center(4, 8).unwrap(), (14.0, 34.0));
        assert_eq!(board().cell_center(-3, 1).unwrap(), (-14.0, 6.0));
    }

    #[test]
    fn cell_out_of_range() {
        assert!(matches!(
            board().cell_center(5, 1),
            Err(ChessError::CellOutOfRange { axis: "column", value: 5, .. })
        ));
        assert!(matches!(
            board().cell_center(0, 9),
            Err(ChessError::CellOutOfRange { axis: "row", value: 9, .. })
        ));
        assert!(board().cell_center(0, 0).is_err());
    }

    #[test]
    fn columns_symmetric_about_origin() {
        let b = board();
        for col in 1..=4 {
            let right = b.column_x(col).unwrap();
            let left = b.column_x(1 - col).unwrap();
            assert!((right + left).abs() < TOL);
        }
    }

    #[test]
    fn default_link_values() {
        assert_eq!(default_link_length(&board()).unwrap(), 13.0);
        assert_eq!(default_link_length(&BoardModel::new(16.0, 0.0)).unwrap(), 7.5);
        assert_eq!(
            default_link_length(&BoardModel::new(32.0, 30.0)),
            Err(ChessError::NonPositiveLink { computed: 0.0 })
        );
    }

    #[test]
    fn straight_ahead_has_zero_yaw() {
        let arm = ChessArm::new(10.0, 13.0, 10.0);
        for mode in [IkMode::PaperLiteral, IkMode::StandardTwoLink] {
            let t = chess_ik(&arm, (0.0, 6.0), mode).unwrap();
            assert_eq!(t.yaw, 0.0);
        }
    }

    #[test]
    fn literal_mode_at_link_length() {
        let arm = ChessArm::new(10.0, 13.0, 10.0);
        let t = chess_ik(&arm, (0.0, 13.0), IkMode::PaperLiteral).unwrap();
        assert!((t.shoulder - FRAC_PI_2).abs() < TOL);
        assert!(t.elbow.abs() < TOL);
        assert!(t.wrist.abs() < TOL);
    }

    #[test]
    fn literal_mode_asin_domain() {
        let arm = ChessArm::new(10.0, 13.0, 10.0);
        let err = chess_ik(&arm, (0.0, 19.5), IkMode::PaperLiteral).unwrap_err();
        assert!(matches!(err, ChessError::AsinDomain { ratio } if (ratio - 1.5).abs() < TOL));
    }

    #[test]
    fn wrist_cancels_elbow() {
        let arm = ChessArm::new(20.0, 20.0, 20.0);
        for mode in [IkMode::PaperLiteral, IkMode::StandardTwoLink] {
            for (xf, yf) in [(2.0, 6.0), (-10.0, 18.0), (14.0, 19.0)] {
                if let Ok(t) = chess_ik(&arm, (xf, yf), mode) {
                    assert_eq!(t.wrist + t.elbow, 0.0);
                }
            }
        }
    }

    #[test]
    fn standard_mode_lands_on_wrist_point() {
        use crate::kinematics::{fk_planar, AnglePair, PlanarArm};
        let arm = ChessArm::new(25.0, 20.0, 15.0);
        let (xf, yf) = (10.0, 30.0);
        let t = chess_ik(&arm, (xf, yf), IkMode::StandardTwoLink).unwrap();
        let two_link = PlanarArm::new(0.0, arm.link_d, arm.link_d);
        let pose = fk_planar(
            &two_link,
            AnglePair { shoulder: t.shoulder - FRAC_PI_2, elbow_abs: t.elbow - FRAC_PI_2 },
        );
        let reach = (xf * xf + yf * yf).sqrt();
        assert!((pose.x - reach).abs() < 1e-9);
        assert!((pose.y + arm.gripper_drop()).abs() < 1e-9);
    }

    #[test]
    fn standard_mode_out_of_reach() {
        let arm = ChessArm::new(10.0, 1.0, 10.0);
        let err = chess_ik(&arm, (300.0, 300.0), IkMode::StandardTwoLink).unwrap_err();
        assert!(matches!(err, ChessError::OutOfReach { .. }));
    }

    #[test]
    fn behind_the_robot_is_rejected() {
        let arm = ChessArm::new(10.0, 13.0, 10.0);
        for mode in [IkMode::PaperLiteral, IkMode::StandardTwoLink] {
            assert!(matches!(
                chess_ik(&arm, (1.0, 0.0), mode),
                Err(ChessError::TargetNotInFront { .. })
            ));
        }
    }

    #[test]
    fn reach_report_all_cells_standard() {
        // 2d comfortably beyond the farthest cell distance
        let b = board();
        let max_dist = (14.0_f64 * 14.0 + 34.0 * 34.0).sqrt();
        let arm = ChessArm::new(10.0, max_dist / 1.9, 10.0);
        let report = validate_board_reach(&arm, &b, IkMode::StandardTwoLink);
        assert!(report.ok);
        assert_eq!(report.reachable, 64);
        assert_eq!(report.unreachable, 0);
    }

    #[test]
    fn reach_report_tiny_arm_fails_everywhere() {
        let b = BoardModel::new(400.0, 10.0);
        let arm = ChessArm::new(1.0, 1.0, 1.0);
        let report = validate_board_reach(&arm, &b, IkMode::StandardTwoLink);
        assert!(!report.ok);
        assert_eq!(report.unreachable, 64);
    }

    #[test]
    fn reach_report_literal_flags_far_rows() {
        let b = board();
        let d = default_link_length(&b).unwrap();
        let arm = ChessArm::new(20.0, d, 20.0);
        let report = validate_board_reach(&arm, &b, IkMode::PaperLiteral);
        for cell in &report.cells {
            assert_eq!(cell.ok, cell.yf <= d, "cell {:?}", (cell.col, cell.row));
            if !cell.ok {
                assert!(cell.error.as_deref().unwrap().starts_with("AsinDomain"));
            }
        }
        // rows 1 and 2 sit at yf 6 and 10, under d = 13
        assert_eq!(report.reachable, 16);
    }

    #[test]
    fn home_target_matches_row_zero_mapping() {
        let b = board();
        assert_eq!(b.home_target(), (-2.0, 2.0));
    }
}
