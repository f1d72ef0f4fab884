//! Edge-shrinking refinement of an axis-aligned box against a mask.
//!
//! An edge of length `alpha` whose mask overlap `beta` does not satisfy
//! `beta > alpha * factor` is moved toward the box centre, one step at a time.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AffineTransform, AxisAlignedBox, Point2};
use crate::mask::BinaryMask;
use crate::scalar::Scalar;

pub const DEFAULT_FACTOR: f64 = 0.258;

/// Foreground query in the frame the box lives in.
pub trait Membership<T> {
    fn is_foreground(&self, p: Point2<T>) -> bool;
}

impl<T, F: Fn(Point2<T>) -> bool> Membership<T> for F {
    fn is_foreground(&self, p: Point2<T>) -> bool {
        self(p)
    }
}

impl<T: Scalar> Membership<T> for BinaryMask {
    fn is_foreground(&self, p: Point2<T>) -> bool {
        self.contains(p)
    }
}

/// Answers queries in a transformed frame by mapping points back to the
/// mask's image frame first.
#[derive(Debug, Clone, Copy)]
pub struct FrameMembership<'a, T> {
    pub mask: &'a BinaryMask,
    pub to_image: AffineTransform<T>,
}

impl<T: Scalar> Membership<T> for FrameMembership<'_, T> {
    fn is_foreground(&self, p: Point2<T>) -> bool {
        self.mask.contains(self.to_image.apply_point(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Edge {
    Left,
    Top,
    Right,
    Bottom,
}

impl Edge {
    /// Fixed sweep order.
    pub const SWEEP: [Edge; 4] = [Edge::Left, Edge::Top, Edge::Right, Edge::Bottom];

    fn index(self) -> usize {
        self as usize
    }

    /// True for the top and bottom edges.
    fn is_horizontal(self) -> bool {
        matches!(self, Edge::Top | Edge::Bottom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefineConfig<T> {
    pub factor: T,
    /// Pixels per move.
    pub step: T,
    /// Per-edge travel cap as a fraction of the original box dimension.
    pub max_shrink_fraction: T,
    /// Compare against the original edge length instead of the current one.
    pub freeze_alpha: bool,
}

impl<T: Scalar> Default for RefineConfig<T> {
    fn default() -> Self {
        Self {
            factor: T::lit(DEFAULT_FACTOR),
            step: T::one(),
            max_shrink_fraction: T::half(),
            freeze_alpha: false,
        }
    }
}

impl<T: Scalar> RefineConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.factor > T::zero() && self.factor < T::one()) {
            return Err(Error::InvalidConfig(format!("factor {} not in (0, 1)", self.factor)));
        }
        if !(self.step > T::zero()) || !self.step.is_finite() {
            return Err(Error::InvalidConfig(format!("step {} must be positive", self.step)));
        }
        if !(self.max_shrink_fraction > T::zero() && self.max_shrink_fraction <= T::half()) {
            return Err(Error::InvalidConfig(format!(
                "max shrink {} not in (0, 0.5]",
                self.max_shrink_fraction
            )));
        }
        Ok(())
    }
}

/// Edge length `alpha` and covered length `beta`.
///
/// The edge is cut into unit segments (the last one possibly shorter); each
/// segment whose midpoint is foreground contributes its length to `beta`.
pub fn edge_coverage<T: Scalar>(query: &impl Membership<T>, b: &AxisAlignedBox<T>, edge: Edge) -> (T, T) {
    let (start, dir, alpha) = match edge {
        Edge::Left => (
            Point2::new(b.x_min, b.y_min),
            Point2::new(T::zero(), T::one()),
            b.height(),
        ),
        Edge::Right => (
            Point2::new(b.x_max, b.y_min),
            Point2::new(T::zero(), T::one()),
            b.height(),
        ),
        Edge::Top => (
            Point2::new(b.x_min, b.y_min),
            Point2::new(T::one(), T::zero()),
            b.width(),
        ),
        Edge::Bottom => (
            Point2::new(b.x_min, b.y_max),
            Point2::new(T::one(), T::zero()),
            b.width(),
        ),
    };
    let mut beta = T::zero();
    let mut offset = T::zero();
    while offset < alpha {
        let len = T::one().min(alpha - offset);
        let mid = start + dir * (offset + len * T::half());
        if query.is_foreground(mid) {
            beta = beta + len;
        }
        offset = offset + T::one();
    }
    (alpha, beta)
}

/// Shrinks each edge of `b` until its coverage constraint holds or it has
/// travelled its cap. Edges are visited left, top, right, bottom per sweep;
/// sweeps repeat until one makes no move. The box never collapses to zero
/// width or height.
pub fn refine_box<T: Scalar>(
    query: &impl Membership<T>,
    b: &AxisAlignedBox<T>,
    cfg: &RefineConfig<T>,
) -> AxisAlignedBox<T> {
    let (w0, h0) = (b.width(), b.height());
    let original_alpha = [h0, w0, h0, w0];
    let caps = [w0, h0, w0, h0].map(|d| d * cfg.max_shrink_fraction);
    let mut moved = [T::zero(); 4];
    let mut cur = *b;
    loop {
        let mut any = false;
        for edge in Edge::SWEEP {
            let i = edge.index();
            let (alpha, beta) = edge_coverage(query, &cur, edge);
            let alpha = if cfg.freeze_alpha { original_alpha[i] } else { alpha };
            if beta > alpha * cfg.factor {
                continue;
            }
            let d = cfg.step.min(caps[i] - moved[i]);
            let span = if edge.is_horizontal() {
                cur.height()
            } else {
                cur.width()
            };
            if !(d > T::zero()) || d >= span {
                continue;
            }
            match edge {
                Edge::Left => cur.x_min = cur.x_min + d,
                Edge::Top => cur.y_min = cur.y_min + d,
                Edge::Right => cur.x_max = cur.x_max - d,
                Edge::Bottom => cur.y_max = cur.y_max - d,
            }
            moved[i] = moved[i] + d;
            any = true;
        }
        if !any {
            return cur;
        }
    }
}
