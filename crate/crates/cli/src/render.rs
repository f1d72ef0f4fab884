use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use base64::Engine as _;
use clap::Args;
use rotbox::{BinaryMask, GroundTruth64, RotatedBox64};

use crate::output::write_atomic;
use crate::Failure;

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    /// Mask file drawn as the background raster.
    pub mask: PathBuf,
    /// Output SVG path.
    #[arg(long, short)]
    pub out: PathBuf,
    /// Predicted region (green): an `x1,y1,...,x4,y4` octuple or a file of them.
    #[arg(long, allow_hyphen_values = true)]
    pub prediction: Vec<String>,
    /// Ground-truth region (blue).
    #[arg(long, allow_hyphen_values = true)]
    pub ground_truth: Vec<String>,
    /// Baseline region (magenta).
    #[arg(long, allow_hyphen_values = true)]
    pub baseline: Vec<String>,
    /// Line to use from polygon files (0-based).
    #[arg(long, default_value_t = 0)]
    pub frame: usize,
    #[arg(long, default_value_t = rotbox::mask::DEFAULT_THRESHOLD)]
    pub threshold: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    Prediction,
    GroundTruth,
    Baseline,
}

impl Layer {
    pub fn color(self) -> &'static str {
        match self {
            Layer::Prediction => "#00c000",
            Layer::GroundTruth => "#0050ff",
            Layer::Baseline => "#ff00ff",
        }
    }

    fn class(self) -> &'static str {
        match self {
            Layer::Prediction => "prediction",
            Layer::GroundTruth => "ground-truth",
            Layer::Baseline => "baseline",
        }
    }
}

fn coord(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_owned()
    } else {
        s.to_owned()
    }
}

/// SVG overlay in image coordinates: cell `(x, y)` covers
/// `[x - 0.5, x + 0.5] × [y - 0.5, y + 0.5]`. Polygons are drawn in the
/// order given, after the mask raster.
pub fn render_svg(mask: &BinaryMask, polygons: &[(Layer, RotatedBox64)]) -> Result<String, Failure> {
    let (w, h) = (mask.width(), mask.height());
    let png = mask.to_png().map_err(Failure::input)?;
    let data = base64::engine::general_purpose::STANDARD.encode(png);
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="-0.5 -0.5 {w} {h}">"#
    );
    let _ = writeln!(
        svg,
        r#"  <image x="-0.5" y="-0.5" width="{w}" height="{h}" style="image-rendering:pixelated" href="data:image/png;base64,{data}"/>"#
    );
    for (layer, poly) in polygons {
        let c = &poly.corners;
        let d = format!(
            "M {},{} L {},{} L {},{} L {},{} Z",
            coord(c[0].x),
            coord(c[0].y),
            coord(c[1].x),
            coord(c[1].y),
            coord(c[2].x),
            coord(c[2].y),
            coord(c[3].x),
            coord(c[3].y)
        );
        let _ = writeln!(
            svg,
            r#"  <path class="{}" d="{d}" fill="none" stroke="{}" stroke-width="1"/>"#,
            layer.class(),
            layer.color()
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Reads a region from an inline octuple or from line `frame` of a file.
/// Unlabeled (`nan`) lines yield `None`.
fn read_region(arg: &str, frame: usize) -> Result<Option<RotatedBox64>, Failure> {
    let path = std::path::Path::new(arg);
    let (text, source) = if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {arg}: {e}")))?;
        (text, frame)
    } else {
        (arg.to_owned(), 0)
    };
    let seq = GroundTruth64::parse(&text).map_err(|e| Failure::input(format!("{arg}: {e}")))?;
    seq.frames
        .get(source)
        .copied()
        .ok_or_else(|| Failure::input(format!("{arg}: no line {source}")))
}

pub fn run(args: &RenderArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let mask = BinaryMask::load(&args.mask, args.threshold).map_err(Failure::input)?;
    let mut polygons = Vec::new();
    for (layer, regions) in [
        (Layer::Prediction, &args.prediction),
        (Layer::GroundTruth, &args.ground_truth),
        (Layer::Baseline, &args.baseline),
    ] {
        for arg in regions {
            if let Some(poly) = read_region(arg, args.frame)? {
                polygons.push((layer, poly));
            }
        }
    }
    let svg = render_svg(&mask, &polygons)?;
    write_atomic(&args.out, svg.as_bytes())?;
    writeln!(out, "{}", args.out.display()).map_err(|e| Failure::input(format!("cannot write output: {e}")))?;
    Ok(())
}
