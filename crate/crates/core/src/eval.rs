//! Polygon overlap and the supervised (reset-on-failure) tracking protocol.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{polygon_signed_area, Point2, RotatedBox};
use crate::scalar::Scalar;

/// Frames skipped after a failure before the tracker is re-initialized.
pub const DEFAULT_BURN_IN: usize = 5;

/// Intersection over union of two convex polygons.
///
/// Either winding is accepted. Zero-area inputs give 0.
pub fn polygon_iou<T: Scalar>(p: &[Point2<T>], q: &[Point2<T>]) -> Result<T> {
    let p = convex_ccw(p)?;
    let q = convex_ccw(q)?;
    let area_p = polygon_signed_area(&p);
    let area_q = polygon_signed_area(&q);
    if !(area_p > T::zero()) || !(area_q > T::zero()) {
        return Ok(T::zero());
    }
    let inter = polygon_signed_area(&clip_convex(&p, &q)).abs();
    let union = area_p + area_q - inter;
    if !(union > T::zero()) {
        return Ok(T::zero());
    }
    Ok((inter / union).max(T::zero()).min(T::one()))
}

/// [`polygon_iou`] for rectangles.
pub fn box_iou<T: Scalar>(p: &RotatedBox<T>, q: &RotatedBox<T>) -> Result<T> {
    polygon_iou(&p.corners, &q.corners)
}

/// Area of the intersection of two convex polygons.
pub fn intersection_area<T: Scalar>(p: &[Point2<T>], q: &[Point2<T>]) -> Result<T> {
    let p = convex_ccw(p)?;
    let q = convex_ccw(q)?;
    if polygon_signed_area(&p) == T::zero() || polygon_signed_area(&q) == T::zero() {
        return Ok(T::zero());
    }
    Ok(polygon_signed_area(&clip_convex(&p, &q)).abs())
}

/// Returns the polygon in positive (counterclockwise) order, or an error if
/// it turns both ways.
fn convex_ccw<T: Scalar>(poly: &[Point2<T>]) -> Result<Vec<Point2<T>>> {
    let n = poly.len();
    let scale = poly
        .iter()
        .fold(T::zero(), |acc, p| acc.max(p.x.abs()).max(p.y.abs()))
        .max(T::one());
    let tol = T::lit(1e3) * T::epsilon() * scale * scale;
    let (mut pos, mut neg) = (false, false);
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let c = poly[(i + 2) % n];
        let turn = (b - a).cross(c - b);
        if turn > tol {
            pos = true;
        } else if turn < -tol {
            neg = true;
        }
    }
    if pos && neg {
        return Err(Error::NonConvexPolygon);
    }
    if poly.len() < 3 {
        return Ok(poly.to_vec());
    }
    let mut out = poly.to_vec();
    if polygon_signed_area(&out) < T::zero() {
        out.reverse();
    }
    Ok(out)
}

/// Sutherland–Hodgman: clips `subject` by each edge of the convex `clip`
/// (both counterclockwise).
fn clip_convex<T: Scalar>(subject: &[Point2<T>], clip: &[Point2<T>]) -> Vec<Point2<T>> {
    let mut output = subject.to_vec();
    for i in 0..clip.len() {
        if output.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % clip.len()];
        let edge = b - a;
        let side = |p: Point2<T>| edge.cross(p - a);
        let input = std::mem::take(&mut output);
        for j in 0..input.len() {
            let cur = input[j];
            let prev = input[(j + input.len() - 1) % input.len()];
            let (sc, sp) = (side(cur), side(prev));
            if sc >= T::zero() {
                if sp < T::zero() {
                    output.push(crossing(prev, cur, sp, sc));
                }
                output.push(cur);
            } else if sp >= T::zero() {
                output.push(crossing(prev, cur, sp, sc));
            }
        }
    }
    output
}

fn crossing<T: Scalar>(p: Point2<T>, q: Point2<T>, sp: T, sq: T) -> Point2<T> {
    let t = sp / (sp - sq);
    p + (q - p) * t
}

/// Per-frame ground truth; `None` marks an unlabeled frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruthSequence<T> {
    pub frames: Vec<Option<RotatedBox<T>>>,
}

impl<T: Scalar> GroundTruthSequence<T> {
    pub fn new(frames: Vec<Option<RotatedBox<T>>>) -> Self {
        Self { frames }
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn labeled_count(&self) -> usize {
        self.frames.iter().filter(|f| f.is_some()).count()
    }

    /// Parses the region format: one `x1,y1,x2,y2,x3,y3,x4,y4` line per frame,
    /// all-`nan` lines for unlabeled frames. Blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut frames = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let values: Vec<f64> = line
                .split(',')
                .map(|t| {
                    t.trim().parse::<f64>().map_err(|_| Error::Parse {
                        line: idx + 1,
                        message: format!("bad number {t:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            let values: [f64; 8] = values.try_into().map_err(|v: Vec<f64>| Error::Parse {
                line: idx + 1,
                message: format!("expected 8 values, got {}", v.len()),
            })?;
            if values.iter().all(|v| v.is_nan()) {
                frames.push(None);
            } else if values.iter().any(|v| !v.is_finite()) {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: "partially missing region".into(),
                });
            } else {
                frames.push(Some(RotatedBox::from_octuple(values.map(T::lit))));
            }
        }
        Ok(Self { frames })
    }

    pub fn to_text(&self) -> String {
        self.frames
            .iter()
            .map(|f| match f {
                Some(r) => format_octuple(r),
                None => ["nan"; 8].join(","),
            })
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }
}

/// `x1,y1,...,y4` with six decimals.
pub fn format_octuple<T: Scalar>(r: &RotatedBox<T>) -> String {
    r.to_octuple()
        .iter()
        .map(|v| {
            let v = v.as_f64();
            // Avoid printing "-0.000000".
            let v = if v.abs() < 5e-7 { 0.0 } else { v };
            format!("{v:.6}")
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// A tracker driven by the protocol: initialized from ground truth, then
/// asked for one region per frame.
pub trait Tracker<T> {
    fn initialize(&mut self, frame: usize, region: &RotatedBox<T>);
    fn track(&mut self, frame: usize) -> RotatedBox<T>;
}

/// Replays regions computed ahead of time; initialization is ignored.
#[derive(Debug, Clone)]
pub struct Precomputed<T>(pub Vec<RotatedBox<T>>);

impl<T: Scalar> Tracker<T> for Precomputed<T> {
    fn initialize(&mut self, _frame: usize, _region: &RotatedBox<T>) {}

    fn track(&mut self, frame: usize) -> RotatedBox<T> {
        self.0[frame]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameStatus {
    /// Tracker initialized from ground truth; not scored.
    Init,
    /// Positive overlap; counted in accuracy.
    Tracked,
    /// Zero overlap.
    Failure,
    /// Inside the post-failure window.
    Skipped,
    /// No ground truth for this frame.
    Unlabeled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackingReport<T> {
    /// Mean overlap over `Tracked` frames; 0 when there are none.
    pub accuracy: T,
    /// Set when no frame was successfully tracked.
    pub empty_success: bool,
    pub failures: usize,
    /// `failures / max(1, number of re-initializations)`.
    pub robustness_ratio: T,
    pub per_frame_overlap: Vec<Option<T>>,
    pub frame_status: Vec<FrameStatus>,
    pub failure_frames: Vec<usize>,
    pub reinit_frames: Vec<usize>,
    pub skipped_frames: Vec<usize>,
    pub burn_in: usize,
    /// Expected average overlap is not computed.
    pub eao: Option<T>,
}

impl<T: Scalar> TrackingReport<T> {
    pub fn counted_overlaps(&self) -> impl Iterator<Item = T> + '_ {
        self.frame_status
            .iter()
            .zip(&self.per_frame_overlap)
            .filter(|(s, _)| **s == FrameStatus::Tracked)
            .filter_map(|(_, o)| *o)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub burn_in: usize,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        Self {
            burn_in: DEFAULT_BURN_IN,
        }
    }
}

/// Runs the reset-on-failure protocol.
///
/// The tracker is initialized on the first labeled frame. A labeled frame
/// with zero overlap is a failure: the next `burn_in` frames are skipped and
/// the tracker is re-initialized on the following labeled frame.
/// Initialization frames are not scored.
pub fn supervised_run<T: Scalar>(
    tracker: &mut impl Tracker<T>,
    ground_truth: &GroundTruthSequence<T>,
    cfg: &ProtocolConfig,
) -> Result<TrackingReport<T>> {
    if ground_truth.labeled_count() == 0 {
        return Err(Error::NoLabeledFrames);
    }
    let n = ground_truth.len();
    let mut status = vec![FrameStatus::Unlabeled; n];
    let mut overlap = vec![None; n];
    let mut failure_frames = Vec::new();
    let mut reinit_frames = Vec::new();
    let mut skipped_frames = Vec::new();
    let mut needs_init = true;
    let mut initialized_once = false;

    let mut frame = 0;
    while frame < n {
        let gt = ground_truth.frames[frame].as_ref();
        if needs_init {
            if let Some(region) = gt {
                tracker.initialize(frame, region);
                status[frame] = FrameStatus::Init;
                if initialized_once {
                    reinit_frames.push(frame);
                }
                initialized_once = true;
                needs_init = false;
            }
            frame += 1;
            continue;
        }
        let prediction = tracker.track(frame);
        let Some(region) = gt else {
            frame += 1;
            continue;
        };
        let iou = box_iou(&prediction, region)?;
        overlap[frame] = Some(iou);
        if iou > T::zero() {
            status[frame] = FrameStatus::Tracked;
            frame += 1;
            continue;
        }
        status[frame] = FrameStatus::Failure;
        failure_frames.push(frame);
        let resume = (frame + 1 + cfg.burn_in).min(n);
        status[frame + 1..resume].fill(FrameStatus::Skipped);
        skipped_frames.extend(frame + 1..resume);
        frame = resume;
        needs_init = true;
    }

    let mut report = TrackingReport {
        accuracy: T::zero(),
        empty_success: true,
        failures: failure_frames.len(),
        robustness_ratio: T::from_count(failure_frames.len()) / T::from_count(reinit_frames.len().max(1)),
        per_frame_overlap: overlap,
        frame_status: status,
        failure_frames,
        reinit_frames,
        skipped_frames,
        burn_in: cfg.burn_in,
        eao: None,
    };
    let (sum, count) = report
        .counted_overlaps()
        .fold((T::zero(), 0usize), |(s, c), o| (s + o, c + 1));
    if count > 0 {
        report.accuracy = sum / T::from_count(count);
        report.empty_success = false;
    }
    Ok(report)
}

/// [`supervised_run`] over precomputed predictions, one per frame.
pub fn supervised_run_precomputed<T: Scalar>(
    predictions: &[RotatedBox<T>],
    ground_truth: &GroundTruthSequence<T>,
    cfg: &ProtocolConfig,
) -> Result<TrackingReport<T>> {
    if predictions.len() != ground_truth.len() {
        return Err(Error::LengthMismatch {
            expected: ground_truth.len(),
            got: predictions.len(),
        });
    }
    supervised_run(&mut Precomputed(predictions.to_vec()), ground_truth, cfg)
}
