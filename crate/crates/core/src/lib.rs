//! Rotated bounding boxes from binary segmentation masks.
//!
//! The estimator fits an ellipse to the mask boundary, uses its orientation
//! to align the mask, and intersects the ellipse's box with the aligned
//! min-max box. Minimum-area-rectangle and min-max baselines, an optional
//! edge-shrinking refinement, and a reset-on-failure tracking evaluation are
//! included.
//!
//! All geometry is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix it to `f64`.

pub mod ellipse;
pub mod error;
pub mod eval;
pub mod geometry;
pub mod mask;
pub mod minrect;
pub mod pipeline;
pub mod refine;
pub mod scalar;
pub mod synth;

pub use ellipse::{conic_to_ellipse, design_row, fit_ellipse, residual, ConicCoefficients, Ellipse};
pub use error::{Error, Result};
pub use eval::{
    box_iou, polygon_iou, supervised_run, supervised_run_precomputed, GroundTruthSequence, ProtocolConfig, Tracker,
    TrackingReport,
};
pub use geometry::{
    ellipse_box, intersect_boxes, minmax_box, rotation_about, AffineTransform, AxisAlignedBox, Point2, RotatedBox,
};
pub use mask::{extract_contour, BinaryMask, Cell, ContourPointSet};
pub use minrect::{convex_hull, min_area_rect, rect_angle};
pub use pipeline::{estimate_box, track_sequence, AngleSource, BoxMethod, BoxResult, Fallback, PipelineConfig};
pub use refine::{edge_coverage, refine_box, Edge, Membership, RefineConfig};
pub use scalar::Scalar;

pub type Point64 = Point2<f64>;
pub type Ellipse64 = Ellipse<f64>;
pub type Conic64 = ConicCoefficients<f64>;
pub type Affine64 = AffineTransform<f64>;
pub type AxisAlignedBox64 = AxisAlignedBox<f64>;
pub type RotatedBox64 = RotatedBox<f64>;
pub type RefineConfig64 = RefineConfig<f64>;
pub type PipelineConfig64 = PipelineConfig<f64>;
pub type BoxResult64 = BoxResult<f64>;
pub type GroundTruth64 = GroundTruthSequence<f64>;
pub type TrackingReport64 = TrackingReport<f64>;
