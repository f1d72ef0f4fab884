use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use rotbox::eval::format_octuple;
use rotbox::{estimate_box, extract_contour, fit_ellipse, BinaryMask, Conic64, Ellipse64, Fallback};
use serde::Serialize;

use crate::{ConfigArgs, Failure, SCHEMA_VERSION};

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// Mask file (.grid, .pgm or .png).
    pub mask: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Print a JSON object instead of the bare octuple.
    #[arg(long)]
    pub json: bool,
    /// Print the all-zero sentinel box for masks without foreground instead of failing.
    #[arg(long)]
    pub allow_empty: bool,
    /// Also print the normalized conic coefficients of the boundary fit.
    #[arg(long)]
    pub dump_conic: bool,
}

#[derive(Serialize)]
struct ConicDump {
    schema: u32,
    conic: Option<Conic64>,
}

#[derive(Serialize)]
struct FitReport<'a> {
    schema: u32,
    mask: &'a str,
    polygon: [f64; 8],
    octuple: String,
    angle_used: f64,
    fallback_applied: Fallback,
    ellipse: Option<Ellipse64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conic: Option<Option<Conic64>>,
    timing_ms: f64,
}

/// Normalized coefficients of the conic fitted to the mask boundary, if any.
fn boundary_conic(mask: &BinaryMask) -> Option<Conic64> {
    let points = extract_contour(mask).ok()?.points::<f64>();
    fit_ellipse(&points).ok().map(|c| c.normalized())
}

pub fn run(args: &FitArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let cfg = args.config.to_config()?;
    let mask = BinaryMask::load(&args.mask, cfg.mask_threshold).map_err(Failure::input)?;
    let start = Instant::now();
    let result = estimate_box(&mask, &cfg).map_err(Failure::input)?;
    let elapsed = start.elapsed();
    if result.fallback_applied == Fallback::EmptyMask && !args.allow_empty {
        return Err(Failure::empty_mask(format!(
            "{}: mask has no foreground (pass --allow-empty to print the sentinel box)",
            args.mask.display()
        )));
    }
    let octuple = format_octuple(&result.polygon);
    let conic = args.dump_conic.then(|| boundary_conic(&mask));
    let write_err = |e: std::io::Error| Failure::input(format!("cannot write output: {e}"));
    if args.json {
        let report = FitReport {
            schema: SCHEMA_VERSION,
            mask: &args.mask.to_string_lossy(),
            polygon: result.polygon.to_octuple(),
            octuple,
            angle_used: result.angle_used,
            fallback_applied: result.fallback_applied,
            ellipse: result.ellipse,
            conic,
            timing_ms: elapsed.as_secs_f64() * 1e3,
        };
        let text = serde_json::to_string_pretty(&report).map_err(Failure::input)?;
        writeln!(out, "{text}").map_err(write_err)?;
    } else {
        writeln!(out, "{octuple}").map_err(write_err)?;
        if let Some(conic) = conic {
            let text = serde_json::to_string(&ConicDump {
                schema: SCHEMA_VERSION,
                conic,
            })
            .map_err(Failure::input)?;
            writeln!(out, "{text}").map_err(write_err)?;
        }
    }
    Ok(())
}
