//! Command-line front end for `rotbox`.
//!
//! Exit codes: 0 success, 2 input error, 3 empty mask (without
//! `--allow-empty`), 4 ground-truth/mask count mismatch.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rotbox::refine::DEFAULT_FACTOR;
use rotbox::{AngleSource, BoxMethod, PipelineConfig64, RefineConfig64};

mod fit;
mod output;
mod render;
mod track;

pub use fit::FitArgs;
pub use render::{render_svg, Layer, RenderArgs};
pub use track::TrackArgs;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_EMPTY_MASK: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

/// Version of the JSON documents written by this tool.
pub const SCHEMA_VERSION: u32 = 1;

/// A failed command: the process exit code and a diagnostic for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl fmt::Display) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }

    pub fn empty_mask(message: impl fmt::Display) -> Self {
        Self {
            code: EXIT_EMPTY_MASK,
            message: message.to_string(),
        }
    }

    pub fn mismatch(message: impl fmt::Display) -> Self {
        Self {
            code: EXIT_MISMATCH,
            message: message.to_string(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

#[derive(Debug, Parser)]
#[command(name = "rotbox", version, about = "Rotated bounding boxes from binary masks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the rotated box of a single mask.
    Fit(FitArgs),
    /// Estimate boxes for a mask sequence and score them against ground truth.
    Track(TrackArgs),
    /// Draw a mask and polygons as an SVG overlay.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoxMethodArg {
    Ellipse,
    Minrect,
    Minmax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AngleSourceArg {
    Ellipse,
    Minrect,
}

/// Flags shared by `fit` and `track`, one per pipeline setting.
#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    #[arg(long, value_enum, default_value_t = BoxMethodArg::Ellipse)]
    pub box_method: BoxMethodArg,
    /// Orientation source; defaults to the box method's own angle.
    #[arg(long, value_enum)]
    pub angle_source: Option<AngleSourceArg>,
    /// Shrink box edges with little mask coverage.
    #[arg(long)]
    pub refine: bool,
    #[arg(long, default_value_t = DEFAULT_FACTOR)]
    pub factor: f64,
    /// Refinement step in pixels.
    #[arg(long, default_value_t = 1.0)]
    pub refine_step: f64,
    /// Per-edge shrink cap as a fraction of the box dimension.
    #[arg(long, default_value_t = 0.5)]
    pub max_shrink: f64,
    /// Compare edge coverage against the starting edge length instead of the current one.
    #[arg(long)]
    pub freeze_alpha: bool,
    /// Force the angle to 90 degrees for near-circular fits.
    #[arg(long)]
    pub circular_theta_override: bool,
    /// 8-bit values above this are foreground.
    #[arg(long, default_value_t = rotbox::mask::DEFAULT_THRESHOLD)]
    pub threshold: u8,
}

impl ConfigArgs {
    pub fn to_config(&self) -> Result<PipelineConfig64, Failure> {
        let cfg = PipelineConfig64 {
            angle_source: self.angle_source.map(|a| match a {
                AngleSourceArg::Ellipse => AngleSource::Ellipse,
                AngleSourceArg::Minrect => AngleSource::MinRect,
            }),
            box_method: match self.box_method {
                BoxMethodArg::Ellipse => BoxMethod::EllipseIntersection,
                BoxMethodArg::Minrect => BoxMethod::MinRect,
                BoxMethodArg::Minmax => BoxMethod::MinMax,
            },
            refine: self.refine,
            refine_cfg: RefineConfig64 {
                factor: self.factor,
                step: self.refine_step,
                max_shrink_fraction: self.max_shrink,
                freeze_alpha: self.freeze_alpha,
            },
            circular_theta_override: self.circular_theta_override,
            mask_threshold: self.threshold,
        };
        cfg.validate().map_err(Failure::input)?;
        Ok(cfg)
    }
}

/// Runs a parsed command, writing normal output to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Fit(args) => fit::run(&args, out),
        Command::Track(args) => track::run(&args, out),
        Command::Render(args) => render::run(&args, out),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "rotbox: {}", f.message);
            f.code
        }
    }
}
