//! Planar primitives and the rotate / box / intersect / un-rotate steps of the
//! box estimator.
//!
//! Image coordinates throughout: x to the right, y down.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::ellipse::Ellipse;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Self) -> T {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn cast<U: Scalar>(self) -> Point2<U> {
        Point2::new(U::lit(self.x.as_f64()), U::lit(self.y.as_f64()))
    }
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Mul<T> for Point2<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

/// 2×3 matrix `[[r11, r12, t1], [r21, r22, t2]]` acting as `p' = R p + t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineTransform<T> {
    pub m: [[T; 3]; 2],
}

impl<T: Scalar> AffineTransform<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self {
            m: [[o, z, z], [z, o, z]],
        }
    }

    /// Rotation by `theta` about `center`:
    ///
    /// ```text
    /// [  cos  sin  (1 - cos) x0 - sin y0 ]
    /// [ -sin  cos  sin x0 + (1 - cos) y0 ]
    /// ```
    ///
    /// In y-down image coordinates this turns the picture counterclockwise by
    /// `theta`; a direction at angle `phi` (measured with `atan2(y, x)`) maps to
    /// `phi - theta`. `center` is a fixed point.
    pub fn rotation_about(center: Point2<T>, theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        let one_c = T::one() - c;
        Self {
            m: [
                [c, s, one_c * center.x - s * center.y],
                [-s, c, s * center.x + one_c * center.y],
            ],
        }
    }

    #[inline]
    pub fn apply_point(&self, p: Point2<T>) -> Point2<T> {
        let [r0, r1] = &self.m;
        Point2::new(r0[0] * p.x + r0[1] * p.y + r0[2], r1[0] * p.x + r1[1] * p.y + r1[2])
    }

    pub fn apply(&self, points: &[Point2<T>]) -> Vec<Point2<T>> {
        points.iter().map(|&p| self.apply_point(p)).collect()
    }

    pub fn determinant(&self) -> T {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.determinant();
        let scale = self.m[0][0]
            .abs()
            .max(self.m[0][1].abs())
            .max(self.m[1][0].abs())
            .max(self.m[1][1].abs());
        if !det.is_finite() || det.abs() <= T::epsilon() * scale * scale {
            return Err(Error::SingularTransform);
        }
        let [[a, b, tx], [c, d, ty]] = self.m;
        let ia = d / det;
        let ib = -b / det;
        let ic = -c / det;
        let id = a / det;
        Ok(Self {
            m: [[ia, ib, -(ia * tx + ib * ty)], [ic, id, -(ic * tx + id * ty)]],
        })
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let [[a, b, tx], [c, d, ty]] = self.m;
        let [[e, f, ux], [g, h, uy]] = other.m;
        Self {
            m: [
                [a * e + b * g, a * f + b * h, a * ux + b * uy + tx],
                [c * e + d * g, c * f + d * h, c * ux + d * uy + ty],
            ],
        }
    }

    /// Largest elementwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for r in 0..2 {
            for c in 0..3 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).abs());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisAlignedBox<T> {
    pub x_min: T,
    pub y_min: T,
    pub x_max: T,
    pub y_max: T,
}

impl<T: Scalar> AxisAlignedBox<T> {
    pub fn new(x_min: T, y_min: T, x_max: T, y_max: T) -> Self {
        debug_assert!(x_min <= x_max && y_min <= y_max);
        Self {
            x_min,
            y_min,
            x_max,
            y_max,
        }
    }

    pub fn width(&self) -> T {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> T {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> T {
        self.width() * self.height()
    }

    pub fn center(&self) -> Point2<T> {
        Point2::new(
            (self.x_min + self.x_max) * T::half(),
            (self.y_min + self.y_max) * T::half(),
        )
    }

    pub fn contains_box(&self, other: &Self) -> bool {
        self.x_min <= other.x_min && self.y_min <= other.y_min && self.x_max >= other.x_max && self.y_max >= other.y_max
    }

    /// Componentwise max of the min corners, min of the max corners.
    /// `None` when the result would be inverted.
    pub fn intersection(&self, other: &Self) -> Option<Self> {
        let x_min = self.x_min.max(other.x_min);
        let y_min = self.y_min.max(other.y_min);
        let x_max = self.x_max.min(other.x_max);
        let y_max = self.y_max.min(other.y_max);
        (x_min <= x_max && y_min <= y_max).then(|| Self::new(x_min, y_min, x_max, y_max))
    }

    /// Corners `(x_min,y_min), (x_max,y_min), (x_max,y_max), (x_min,y_max)`.
    pub fn to_rotated_box(&self) -> RotatedBox<T> {
        RotatedBox {
            corners: [
                Point2::new(self.x_min, self.y_min),
                Point2::new(self.x_max, self.y_min),
                Point2::new(self.x_max, self.y_max),
                Point2::new(self.x_min, self.y_max),
            ],
        }
    }
}

/// Four ordered rectangle corners.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotatedBox<T> {
    pub corners: [Point2<T>; 4],
}

impl<T: Scalar> RotatedBox<T> {
    pub fn new(corners: [Point2<T>; 4]) -> Self {
        Self { corners }
    }

    /// Signed shoelace area; positive for counterclockwise order in x-right/y-up.
    pub fn signed_area(&self) -> T {
        polygon_signed_area(&self.corners)
    }

    pub fn area(&self) -> T {
        self.signed_area().abs()
    }

    pub fn center(&self) -> Point2<T> {
        let sum = self
            .corners
            .iter()
            .fold(Point2::new(T::zero(), T::zero()), |acc, &p| acc + p);
        sum * T::lit(0.25)
    }

    pub fn transformed(&self, t: &AffineTransform<T>) -> Self {
        Self {
            corners: self.corners.map(|p| t.apply_point(p)),
        }
    }

    /// `[x1, y1, x2, y2, x3, y3, x4, y4]`.
    pub fn to_octuple(&self) -> [T; 8] {
        let c = &self.corners;
        [c[0].x, c[0].y, c[1].x, c[1].y, c[2].x, c[2].y, c[3].x, c[3].y]
    }

    pub fn from_octuple(v: [T; 8]) -> Self {
        Self {
            corners: [
                Point2::new(v[0], v[1]),
                Point2::new(v[2], v[3]),
                Point2::new(v[4], v[5]),
                Point2::new(v[6], v[7]),
            ],
        }
    }

    pub fn side_lengths(&self) -> [T; 4] {
        let c = &self.corners;
        [
            c[0].distance(c[1]),
            c[1].distance(c[2]),
            c[2].distance(c[3]),
            c[3].distance(c[0]),
        ]
    }

    /// True when opposite sides match and adjacent sides are perpendicular,
    /// both within `tol` (relative to the longest side).
    pub fn is_rectangle(&self, tol: T) -> bool {
        let [s0, s1, s2, s3] = self.side_lengths();
        let scale = s0.max(s1).max(T::one());
        let c = &self.corners;
        let e0 = c[1] - c[0];
        let e1 = c[2] - c[1];
        (s0 - s2).abs() <= tol * scale && (s1 - s3).abs() <= tol * scale && e0.dot(e1).abs() <= tol * scale * scale
    }

    pub fn is_finite(&self) -> bool {
        self.corners.iter().all(|p| p.is_finite())
    }
}

pub fn polygon_signed_area<T: Scalar>(points: &[Point2<T>]) -> T {
    let n = points.len();
    if n < 3 {
        return T::zero();
    }
    let mut acc = T::zero();
    for i in 0..n {
        acc = acc + points[i].cross(points[(i + 1) % n]);
    }
    acc * T::half()
}

/// Rotation about `center` (see [`AffineTransform::rotation_about`]).
pub fn rotation_about<T: Scalar>(center: Point2<T>, theta: T) -> AffineTransform<T> {
    AffineTransform::rotation_about(center, theta)
}

pub fn apply<T: Scalar>(t: &AffineTransform<T>, points: &[Point2<T>]) -> Vec<Point2<T>> {
    t.apply(points)
}

pub fn inverse<T: Scalar>(t: &AffineTransform<T>) -> Result<AffineTransform<T>> {
    t.inverse()
}

/// Axis-aligned box of an ellipse whose semi-major axis is vertical:
/// width `2n`, height `2m`.
pub fn ellipse_box<T: Scalar>(e: &Ellipse<T>) -> AxisAlignedBox<T> {
    let c = e.center;
    AxisAlignedBox::new(
        c.x - e.semi_minor,
        c.y - e.semi_major,
        c.x + e.semi_minor,
        c.y + e.semi_major,
    )
}

pub fn minmax_box<T: Scalar>(points: &[Point2<T>]) -> Result<AxisAlignedBox<T>> {
    let (first, rest) = points.split_first().ok_or(Error::EmptyInput)?;
    let mut b = AxisAlignedBox::new(first.x, first.y, first.x, first.y);
    for p in rest {
        b.x_min = b.x_min.min(p.x);
        b.y_min = b.y_min.min(p.y);
        b.x_max = b.x_max.max(p.x);
        b.y_max = b.y_max.max(p.y);
    }
    Ok(b)
}

/// Intersection of two axis-aligned boxes as a four-corner polygon.
pub fn intersect_boxes<T: Scalar>(g: &AxisAlignedBox<T>, b: &AxisAlignedBox<T>) -> Result<RotatedBox<T>> {
    g.intersection(b)
        .map(|r| r.to_rotated_box())
        .ok_or(Error::EmptyIntersection)
}
