//! Command-line front end: configuration loading, the interactive loop,
//! script execution, sizing calculations and workspace export.
//!
//! Exit codes: 0 on success, 1 when a command or script fails, 2 for
//! configuration and usage problems.

use std::collections::HashMap;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chessbot::{default_link_length, validate_board_reach, BoardModel, ChessArm, IkMode};
use crate::command::Engine;
use crate::dynamics::{gripper_torque, joint_moments, spin_up_torque, tip_speed, GripperSpec, LoadSpec3, SpinSpec};
use crate::kinematics::{Interval, PlanarArm};
use crate::workspace::sample_workspace;

/// On-disk configuration. All lengths share one caller-chosen unit; the
/// shipped default reads as millimeters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub board: BoardConfig,
    pub arm: ArmConfig,
    #[serde(default = "default_mode")]
    pub ik_mode: IkMode,
    #[serde(default = "default_trace_cap")]
    pub trace_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoardConfig {
    pub side_length: f64,
    pub dif: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmConfig {
    pub column_height: f64,
    /// Omit to derive the link length from the board dimensions.
    #[serde(default)]
    pub link_d: Option<f64>,
    pub gripper_length: f64,
}

fn default_mode() -> IkMode {
    IkMode::StandardTwoLink
}

fn default_trace_cap() -> usize {
    crate::command::DEFAULT_TRACE_CAP
}

impl Default for Config {
    fn default() -> Self {
        Config {
            board: BoardConfig { side_length: 320.0, dif: 40.0 },
            arm: ArmConfig { column_height: 250.0, link_d: Some(200.0), gripper_length: 150.0 },
            ik_mode: default_mode(),
            trace_cap: default_trace_cap(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("config is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl Config {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Validate and build the runtime pieces, deriving the link length
    /// when the config leaves it out.
    pub fn resolve(&self) -> Result<(BoardModel, ChessArm, IkMode, usize), ConfigError> {
        let invalid = |msg: String| Err(ConfigError::Invalid(msg));
        if !(self.board.side_length > 0.0) {
            return invalid(format!("board.side_length {} must be positive", self.board.side_length));
        }
        if !(self.board.dif >= 0.0) {
            return invalid(format!("board.dif {} must be non-negative", self.board.dif));
        }
        if !(self.arm.column_height > 0.0) {
            return invalid(format!("arm.column_height {} must be positive", self.arm.column_height));
        }
        if !(self.arm.gripper_length > 0.0) {
            return invalid(format!("arm.gripper_length {} must be positive", self.arm.gripper_length));
        }
        if self.arm.gripper_length > self.arm.column_height {
            return invalid("arm.gripper_length exceeds arm.column_height".to_string());
        }
        let board = BoardModel::new(self.board.side_length, self.board.dif);
        let link_d = match self.arm.link_d {
            Some(d) if d > 0.0 => d,
            Some(d) => return invalid(format!("arm.link_d {d} must be positive")),
            None => default_link_length(&board).map_err(|e| ConfigError::Invalid(e.to_string()))?,
        };
        let arm = ChessArm::new(self.arm.column_height, link_d, self.arm.gripper_length);
        Ok((board, arm, self.ik_mode, self.trace_cap))
    }
}

#[derive(Parser)]
#[command(name = "chessarm", version, about = "Board-arm simulator, sizing and workspace tools")]
struct Cli {
    /// JSON configuration file; built-in defaults apply when omitted
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Override the configured IK mode
    #[arg(long, global = true, value_enum, value_name = "MODE")]
    mode: Option<ModeArg>,
    /// Write the accumulated motion trace to this file
    #[arg(long, global = true, value_name = "PATH")]
    trace: Option<PathBuf>,
    /// Format for traces and reports
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Paper,
    Standard,
}

impl From<ModeArg> for IkMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Paper => IkMode::PaperLiteral,
            ModeArg::Standard => IkMode::StandardTwoLink,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Sub {
    /// Interactive command loop; `help` prints the query table
    Repl,
    /// Run a command script, one query per line
    Exec {
        script: PathBuf,
    },
    /// Check that every board cell is reachable under the configured mode
    Validate,
    /// Evaluate sizing formulas from KEY=VALUE pairs
    Size {
        /// Static moments about the two lifting joints
        /// (l1 l2 l3 w1 w2 w3 w4)
        #[arg(long)]
        moments: bool,
        /// Spin-up torque (m_arm m l omega t)
        #[arg(long)]
        spin: bool,
        /// Gripper torque (force jaw mass accel)
        #[arg(long)]
        gripper: bool,
        /// Tip speed (radius freq)
        #[arg(long)]
        tip: bool,
        #[arg(value_name = "KEY=VALUE")]
        args: Vec<String>,
    },
    /// Sample a planar arm workspace and print it as CSV
    /// (l1 l2 [l0 shoulder_min shoulder_max elbow_min elbow_max resolution])
    Workspace {
        #[arg(value_name = "KEY=VALUE")]
        args: Vec<String>,
    },
}

/// Top-level entry point; returns the process exit code.
pub fn run(argv: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return 2;
        }
        Err(e) => {
            print!("{e}");
            return 0;
        }
    };

    let config = if let Some(path) = &cli.config {
        match Config::from_path(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        }
    } else {
        Config::default()
    };

    match &cli.command {
        Sub::Repl | Sub::Exec { .. } | Sub::Validate => run_arm_command(&cli, &config),
        Sub::Size { moments, spin, gripper, tip, args } => {
            match run_size(*moments, *spin, *gripper, *tip, args) {
                Ok(()) => 0,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    2
                }
            }
        }
        Sub::Workspace { args } => match run_workspace(args) {
            Ok(()) => 0,
            Err(msg) => {
                eprintln!("error: {msg}");
                2
            }
        },
    }
}

fn run_arm_command(cli: &Cli, config: &Config) -> i32 {
    let (board, arm, mode, trace_cap) = match config.resolve() {
        Ok(parts) => parts,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let mode = cli.mode.map(IkMode::from).unwrap_or(mode);

    if let Sub::Validate = cli.command {
        let report = validate_board_reach(&arm, &board, mode);
        if cli.format == Format::Json {
            println!("{}", report.to_json());
        } else {
            for cell in &report.cells {
                let status = cell.error.clone().unwrap_or_else(|| "ok".to_string());
                println!("col {:>2} row {} xf {:>8.3} yf {:>8.3}  {status}", cell.col, cell.row, cell.xf, cell.yf);
            }
            println!("reachable {}/{}", report.reachable, report.cells.len());
        }
        return if report.ok { 0 } else { 1 };
    }

    let mut engine = match Engine::with_trace_cap(board, arm, mode, trace_cap) {
        Ok(engine) => engine,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };

    let status = match &cli.command {
        Sub::Repl => {
            let stdin = io::stdin();
            let mut stdout = io::stdout();
            match repl(&mut engine, stdin.lock(), &mut stdout) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Sub::Exec { script } => match fs::read_to_string(script) {
            Ok(text) => match engine.run_script(&text) {
                Ok(ran) => {
                    eprintln!("ran {ran} commands, {} steps", engine.trace().len());
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            },
            Err(e) => {
                eprintln!("error: cannot read script {}: {e}", script.display());
                1
            }
        },
        _ => unreachable!("validate handled above"),
    };

    if let Some(path) = &cli.trace {
        let data = match cli.format {
            Format::Json => engine.export_trace_json(),
            Format::Csv => engine.export_trace_csv(),
        };
        if let Err(e) = fs::write(path, data) {
            eprintln!("error: cannot write trace {}: {e}", path.display());
            return 1;
        }
    }
    status
}

const QUERY_TABLE: &str = "\
go to x <col>                   Moves the arm to x position
go to y <row>                   Moves the arm to y position
move to [x , y]                 Moves the arm to x and y position
move from [x , y] to [x1 , y1]  Moves an object from x , y to x1 , y1
return to o                     Returns to its initial position
grab                            Grabs the object with the gripper
release                         Releases the gripper
help                            Show this table
quit                            Leave the loop
";

/// The interactive loop, reading queries line by line. Steps go to `out`;
/// errors go to standard error and do not end the loop.
pub fn repl<R: BufRead, W: Write>(engine: &mut Engine, input: R, out: &mut W) -> io::Result<()> {
    for line in input.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed.eq_ignore_ascii_case("help") {
            out.write_all(QUERY_TABLE.as_bytes())?;
            continue;
        }
        if trimmed.eq_ignore_ascii_case("quit") || trimmed.eq_ignore_ascii_case("exit") {
            break;
        }
        match engine.execute_line(&line) {
            Ok(steps) => {
                for step in steps {
                    writeln!(out, "{step}")?;
                }
            }
            Err(e) => eprintln!("error: {e}"),
        }
    }
    Ok(())
}

fn parse_kv(args: &[String]) -> Result<HashMap<String, f64>, String> {
    let mut map = HashMap::new();
    for arg in args {
        let (key, value) = arg
            .split_once('=')
            .ok_or_else(|| format!("expected KEY=VALUE, got `{arg}`"))?;
        let value: f64 = value.parse().map_err(|_| format!("`{key}` value `{value}` is not a number"))?;
        map.insert(key.trim().to_ascii_lowercase(), value);
    }
    Ok(map)
}

fn need(map: &HashMap<String, f64>, key: &str) -> Result<f64, String> {
    map.get(key).copied().ok_or_else(|| format!("missing `{key}=<value>`"))
}

fn run_size(moments: bool, spin: bool, gripper: bool, tip: bool, args: &[String]) -> Result<(), String> {
    let selected = [moments, spin, gripper, tip].iter().filter(|b| **b).count();
    if selected != 1 {
        return Err("pass exactly one of --moments, --spin, --gripper, --tip".to_string());
    }
    let kv = parse_kv(args)?;
    if moments {
        let load = LoadSpec3 {
            l1: need(&kv, "l1")?,
            l2: need(&kv, "l2")?,
            l3: need(&kv, "l3")?,
            w1: need(&kv, "w1")?,
            w2: need(&kv, "w2")?,
            w3: need(&kv, "w3")?,
            w4: need(&kv, "w4")?,
        };
        let (m1, m2) = joint_moments(&load);
        println!("m1 = {m1}");
        println!("m2 = {m2}");
    } else if spin {
        let spec = SpinSpec {
            m_arm: need(&kv, "m_arm")?,
            m_payload: need(&kv, "m")?,
            length: need(&kv, "l")?,
            omega: need(&kv, "omega")?,
            time: need(&kv, "t")?,
        };
        let (tau_arm, tau_obj, tau_motor) = spin_up_torque(&spec).map_err(|e| e.to_string())?;
        println!("tau_arm = {tau_arm}");
        println!("tau_obj = {tau_obj}");
        println!("tau_motor = {tau_motor}");
    } else if gripper {
        let spec = GripperSpec {
            grip_force: need(&kv, "force")?,
            jaw_length: need(&kv, "jaw")?,
            part_mass: need(&kv, "mass")?,
            accel_total: need(&kv, "accel")?,
        };
        let (tau_gripper, tau_part, tau_total) = gripper_torque(&spec);
        println!("tau_gripper = {tau_gripper}");
        println!("tau_part = {tau_part}");
        println!("tau_total = {tau_total}");
    } else {
        let v = tip_speed(need(&kv, "radius")?, need(&kv, "freq")?);
        println!("v = {v}");
    }
    Ok(())
}

fn run_workspace(args: &[String]) -> Result<(), String> {
    use std::f64::consts::PI;
    let kv = parse_kv(args)?;
    let l1 = need(&kv, "l1")?;
    let l2 = need(&kv, "l2")?;
    if l1 <= 0.0 || l2 <= 0.0 {
        return Err("link lengths must be positive".to_string());
    }
    let l0 = kv.get("l0").copied().unwrap_or(0.0);
    if l0 < 0.0 {
        return Err("l0 must be non-negative".to_string());
    }
    let limit = |min_key: &str, max_key: &str| -> Result<Interval, String> {
        let min = kv.get(min_key).copied().unwrap_or(-PI);
        let max = kv.get(max_key).copied().unwrap_or(PI);
        if min > max {
            return Err(format!("{min_key} {min} exceeds {max_key} {max}"));
        }
        Ok(Interval::new(min, max))
    };
    let shoulder = limit("shoulder_min", "shoulder_max")?;
    let elbow = limit("elbow_min", "elbow_max")?;
    let resolution = kv.get("resolution").copied().unwrap_or(100.0);
    if resolution < 2.0 || resolution.fract() != 0.0 {
        return Err(format!("resolution {resolution} must be an integer of at least 2"));
    }
    let arm = PlanarArm::new(l0, l1, l2).with_limits(shoulder, elbow);
    let cloud = sample_workspace(&arm, resolution as usize);
    print!("{}", cloud.to_csv());
    Ok(())
}
