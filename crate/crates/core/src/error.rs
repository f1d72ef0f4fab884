use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot decode image {path}: {message}")]
    Decode { path: PathBuf, message: String },
    #[error("cannot encode image: {0}")]
    Encode(String),
    #[error("unsupported mask format: {0}")]
    UnsupportedFormat(String),
    #[error("mask has a zero dimension ({width}x{height})")]
    ZeroDimension { width: usize, height: usize },
    #[error("malformed grid: {0}")]
    InvalidGrid(String),
    #[error("no target: mask has no foreground")]
    NoTarget,
    #[error("too few points: need {needed}, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("ellipse fit is degenerate: {0}")]
    FitDegenerate(&'static str),
    #[error("conic is not a real ellipse: {0}")]
    NotAnEllipse(&'static str),
    #[error("affine transform has a singular linear part")]
    SingularTransform,
    #[error("empty point set")]
    EmptyInput,
    #[error("boxes do not intersect")]
    EmptyIntersection,
    #[error("polygon is not convex")]
    NonConvexPolygon,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("ground truth has no labeled frames")]
    NoLabeledFrames,
    #[error("frame {frame} is {got_width}x{got_height}, expected {width}x{height}")]
    DimensionMismatch {
        frame: usize,
        width: usize,
        height: usize,
        got_width: usize,
        got_height: usize,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
