use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Args;
use rotbox::eval::{format_octuple, DEFAULT_BURN_IN};
use rotbox::pipeline::SequenceResult;
use rotbox::{
    supervised_run_precomputed, track_sequence, BinaryMask, Fallback, GroundTruth64, PipelineConfig64, ProtocolConfig,
    TrackingReport64,
};
use serde::Serialize;

use crate::output::{ensure_dir, write_atomic, write_json_atomic};
use crate::{ConfigArgs, Failure, SCHEMA_VERSION};

const MASK_EXTENSIONS: [&str; 3] = ["grid", "pgm", "png"];

#[derive(Debug, Clone, Args)]
pub struct TrackArgs {
    /// Directory of masks or a glob pattern such as `masks/*.png`.
    /// Frames are ordered by file name.
    pub masks: String,
    /// Ground-truth regions, one `x1,y1,...,x4,y4` line per frame.
    #[arg(long)]
    pub ground_truth: Option<PathBuf>,
    /// Output directory for polygons.txt, report.json and timing.json.
    #[arg(long, short, default_value = ".")]
    pub out: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Frames skipped after a failure before the tracker restarts.
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    pub burn_in: usize,
    /// Print the report JSON to stdout as well.
    #[arg(long)]
    pub json: bool,
    /// Accept frames without foreground (their box is the all-zero sentinel).
    #[arg(long)]
    pub allow_empty: bool,
}

#[derive(Serialize)]
struct Report<'a> {
    schema: u32,
    frames: usize,
    masks: Vec<String>,
    config: &'a PipelineConfig64,
    #[serde(flatten)]
    report: &'a TrackingReport64,
}

/// Kept apart from report.json so that file stays byte-reproducible.
#[derive(Serialize)]
struct Timing {
    schema: u32,
    frames: usize,
    mean_latency_ms: f64,
    latencies_ms: Vec<f64>,
}

fn is_mask_file(path: &Path) -> bool {
    path.is_file()
        && path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| MASK_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
}

/// Mask files named by a directory or glob pattern, in file-name order.
pub fn resolve_masks(pattern: &str) -> Result<Vec<PathBuf>, Failure> {
    let dir = Path::new(pattern);
    let mut files: Vec<PathBuf> = if dir.is_dir() {
        fs::read_dir(dir)
            .map_err(|e| Failure::input(format!("cannot list {pattern}: {e}")))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| is_mask_file(p))
            .collect()
    } else {
        glob::glob(pattern)
            .map_err(|e| Failure::input(format!("bad pattern {pattern:?}: {e}")))?
            .filter_map(|p| p.ok())
            .filter(|p| is_mask_file(p))
            .collect()
    };
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()).then_with(|| a.cmp(b)));
    if files.is_empty() {
        return Err(Failure::input(format!("no mask files match {pattern:?}")));
    }
    Ok(files)
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string_lossy().into_owned())
}

pub fn polygons_text(seq: &SequenceResult<f64>) -> String {
    let mut text = String::new();
    for frame in &seq.frames {
        text.push_str(&format_octuple(&frame.polygon));
        text.push('\n');
    }
    text
}

pub fn run(args: &TrackArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let cfg = args.config.to_config()?;
    let files = resolve_masks(&args.masks)?;
    let ground_truth = match &args.ground_truth {
        Some(path) => {
            let text =
                fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
            let gt = GroundTruth64::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            if gt.len() != files.len() {
                return Err(Failure::mismatch(format!(
                    "{} has {} frames but {} masks were found",
                    path.display(),
                    gt.len(),
                    files.len()
                )));
            }
            Some(gt)
        }
        None => None,
    };
    let masks = files
        .iter()
        .map(|p| BinaryMask::load(p, cfg.mask_threshold))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::input)?;
    let seq = track_sequence(&masks, &cfg).map_err(Failure::input)?;
    if !args.allow_empty {
        if let Some(i) = seq
            .frames
            .iter()
            .position(|f| f.fallback_applied == Fallback::EmptyMask)
        {
            return Err(Failure::empty_mask(format!(
                "{}: mask has no foreground (pass --allow-empty to accept empty frames)",
                files[i].display()
            )));
        }
    }

    ensure_dir(&args.out)?;
    write_atomic(&args.out.join("polygons.txt"), polygons_text(&seq).as_bytes())?;
    let write_err = |e: std::io::Error| Failure::input(format!("cannot write output: {e}"));
    let Some(gt) = ground_truth else {
        writeln!(out, "frames={}", seq.frames.len()).map_err(write_err)?;
        return Ok(());
    };

    let predictions: Vec<_> = seq.frames.iter().map(|f| f.polygon).collect();
    let protocol = ProtocolConfig { burn_in: args.burn_in };
    let report = supervised_run_precomputed(&predictions, &gt, &protocol).map_err(Failure::input)?;
    let doc = Report {
        schema: SCHEMA_VERSION,
        frames: files.len(),
        masks: files.iter().map(|p| file_name(p)).collect(),
        config: &cfg,
        report: &report,
    };
    write_json_atomic(&args.out.join("report.json"), &doc)?;
    let timing = Timing {
        schema: SCHEMA_VERSION,
        frames: seq.frames.len(),
        mean_latency_ms: seq.mean_latency().as_secs_f64() * 1e3,
        latencies_ms: seq.latencies.iter().map(|d| d.as_secs_f64() * 1e3).collect(),
    };
    write_json_atomic(&args.out.join("timing.json"), &timing)?;

    if args.json {
        let text = serde_json::to_string_pretty(&doc).map_err(Failure::input)?;
        writeln!(out, "{text}").map_err(write_err)?;
    } else {
        writeln!(
            out,
            "frames={} accuracy={:.6} failures={} robustness={:.6}",
            files.len(),
            report.accuracy,
            report.failures,
            report.robustness_ratio
        )
        .map_err(write_err)?;
    }
    Ok(())
}
