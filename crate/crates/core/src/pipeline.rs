//! Mask to rotated box.
//!
//! Default path: trace the mask boundary, fit an ellipse, rotate the boundary
//! about the ellipse centre so the major axis points along +y, intersect the
//! ellipse's box with the boundary's min-max box, optionally refine, and map
//! the result back to image coordinates.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::ellipse::{conic_to_ellipse, fit_ellipse, Ellipse};
use crate::error::{Error, Result};
use crate::geometry::{ellipse_box, minmax_box, AffineTransform, Point2, RotatedBox};
use crate::mask::{extract_contour, BinaryMask, DEFAULT_THRESHOLD};
use crate::minrect::{min_area_rect, rect_angle};
use crate::refine::{refine_box, FrameMembership, RefineConfig};
use crate::scalar::Scalar;

/// Axis ratio above which `circular_theta_override` pins the angle.
pub const CIRCULAR_RATIO: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleSource {
    Ellipse,
    MinRect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoxMethod {
    /// Ellipse box intersected with the rotated min-max box.
    EllipseIntersection,
    /// Minimum-area rectangle.
    MinRect,
    /// Axis-aligned min-max box.
    MinMax,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig<T> {
    /// Orientation source. `None` uses the box method's own angle: the
    /// ellipse for `EllipseIntersection`, the rectangle for `MinRect`.
    pub angle_source: Option<AngleSource>,
    pub box_method: BoxMethod,
    pub refine: bool,
    pub refine_cfg: RefineConfig<T>,
    pub circular_theta_override: bool,
    pub mask_threshold: u8,
}

impl<T: Scalar> Default for PipelineConfig<T> {
    fn default() -> Self {
        Self {
            angle_source: None,
            box_method: BoxMethod::EllipseIntersection,
            refine: false,
            refine_cfg: RefineConfig::default(),
            circular_theta_override: false,
            mask_threshold: DEFAULT_THRESHOLD,
        }
    }
}

impl<T: Scalar> PipelineConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.refine {
            self.refine_cfg.validate()?;
        }
        Ok(())
    }

    /// The orientation source actually used (`None` for min-max boxes).
    pub fn effective_angle_source(&self) -> Option<AngleSource> {
        match (self.box_method, self.angle_source) {
            (BoxMethod::MinMax, _) => None,
            (_, Some(src)) => Some(src),
            (BoxMethod::EllipseIntersection, None) => Some(AngleSource::Ellipse),
            (BoxMethod::MinRect, None) => Some(AngleSource::MinRect),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fallback {
    None,
    MinMax,
    EmptyMask,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxResult<T> {
    pub polygon: RotatedBox<T>,
    pub ellipse: Option<Ellipse<T>>,
    /// Orientation of the box's long axis in `[0, π)`; 0 for axis-aligned output.
    pub angle_used: T,
    pub fallback_applied: Fallback,
    /// Image-to-aligned-frame transform, when the box was built in one.
    pub frame: Option<AffineTransform<T>>,
}

impl<T: Scalar> BoxResult<T> {
    fn empty() -> Self {
        let origin = Point2::new(T::zero(), T::zero());
        Self {
            polygon: RotatedBox::new([origin; 4]),
            ellipse: None,
            angle_used: T::zero(),
            fallback_applied: Fallback::EmptyMask,
            frame: None,
        }
    }

    fn axis_aligned(points: &[Point2<T>], ellipse: Option<Ellipse<T>>, fallback: Fallback) -> Result<Self> {
        Ok(Self {
            polygon: minmax_box(points)?.to_rotated_box(),
            ellipse,
            angle_used: T::zero(),
            fallback_applied: fallback,
            frame: None,
        })
    }
}

/// Estimates a rotated box for the largest object in `mask`.
pub fn estimate_box<T: Scalar>(mask: &BinaryMask, cfg: &PipelineConfig<T>) -> Result<BoxResult<T>> {
    cfg.validate()?;
    let contour = match extract_contour(mask) {
        Ok(c) => c,
        Err(Error::NoTarget) => return Ok(BoxResult::empty()),
        Err(e) => return Err(e),
    };
    let points: Vec<Point2<T>> = contour.points();

    let Some(angle_source) = cfg.effective_angle_source() else {
        let b = minmax_box(&points)?;
        let b = if cfg.refine {
            let query = FrameMembership {
                mask,
                to_image: AffineTransform::identity(),
            };
            refine_box(&query, &b, &cfg.refine_cfg)
        } else {
            b
        };
        return Ok(BoxResult {
            polygon: b.to_rotated_box(),
            ellipse: None,
            angle_used: T::zero(),
            fallback_applied: Fallback::None,
            frame: None,
        });
    };

    let needs_ellipse = cfg.box_method == BoxMethod::EllipseIntersection || angle_source == AngleSource::Ellipse;
    let ellipse = if needs_ellipse {
        match fit_ellipse(&points).and_then(|c| conic_to_ellipse(&c)) {
            Ok(e) if cfg.circular_theta_override => Some(e.with_circular_override(T::lit(CIRCULAR_RATIO))),
            Ok(e) => Some(e),
            Err(_) => return BoxResult::axis_aligned(&points, None, Fallback::MinMax),
        }
    } else {
        None
    };

    let rect = (angle_source == AngleSource::MinRect || cfg.box_method == BoxMethod::MinRect)
        .then(|| min_area_rect(&points))
        .transpose()?;

    if cfg.box_method == BoxMethod::MinRect && angle_source == AngleSource::MinRect && !cfg.refine {
        let rect = rect.expect("computed above");
        return Ok(BoxResult {
            polygon: rect,
            ellipse,
            angle_used: rect_angle(&rect),
            fallback_applied: Fallback::None,
            frame: None,
        });
    }

    let theta = match angle_source {
        AngleSource::Ellipse => ellipse.expect("fitted above").angle,
        AngleSource::MinRect => rect_angle(&rect.expect("computed above")),
    };
    let center = match (&ellipse, &rect) {
        (Some(e), _) => e.center,
        (None, Some(r)) => r.center(),
        (None, None) => unreachable!("an angle source was evaluated"),
    };
    // Map the long-axis direction onto +y.
    let to_frame = AffineTransform::rotation_about(center, theta - T::FRAC_PI_2());
    let to_image = to_frame.inverse()?;
    let aligned = to_frame.apply(&points);
    let mut b = minmax_box(&aligned)?;
    if cfg.box_method == BoxMethod::EllipseIntersection {
        let g = ellipse_box(ellipse.as_ref().expect("fitted above"));
        match g.intersection(&b) {
            Some(r) => b = r,
            None => return BoxResult::axis_aligned(&points, ellipse, Fallback::MinMax),
        }
    }
    if cfg.refine {
        let query = FrameMembership { mask, to_image };
        b = refine_box(&query, &b, &cfg.refine_cfg);
    }
    Ok(BoxResult {
        polygon: b.to_rotated_box().transformed(&to_image),
        ellipse,
        angle_used: theta,
        fallback_applied: Fallback::None,
        frame: Some(to_frame),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceResult<T> {
    pub frames: Vec<BoxResult<T>>,
    pub latencies: Vec<Duration>,
}

impl<T> SequenceResult<T> {
    pub fn mean_latency(&self) -> Duration {
        if self.latencies.is_empty() {
            return Duration::ZERO;
        }
        self.latencies.iter().sum::<Duration>() / self.latencies.len() as u32
    }
}

/// Runs [`estimate_box`] on each frame independently, in order.
pub fn track_sequence<T: Scalar>(masks: &[BinaryMask], cfg: &PipelineConfig<T>) -> Result<SequenceResult<T>> {
    let first = masks.first().ok_or(Error::EmptyInput)?;
    for (frame, m) in masks.iter().enumerate() {
        if m.width() != first.width() || m.height() != first.height() {
            return Err(Error::DimensionMismatch {
                frame,
                width: first.width(),
                height: first.height(),
                got_width: m.width(),
                got_height: m.height(),
            });
        }
    }
    let mut frames = Vec::with_capacity(masks.len());
    let mut latencies = Vec::with_capacity(masks.len());
    for m in masks {
        let start = Instant::now();
        frames.push(estimate_box(m, cfg)?);
        latencies.push(start.elapsed());
    }
    Ok(SequenceResult { frames, latencies })
}
