//! Synthetic masks for tests, benchmarks and demos.

use rand::Rng;

use crate::error::Result;
use crate::geometry::{Point2, RotatedBox};
use crate::mask::BinaryMask;
use crate::scalar::Scalar;

/// Rectangle centred at `center` with its `long` side at `angle`
/// (`atan2` sense) and its `short` side perpendicular.
pub fn rotated_rect<T: Scalar>(center: Point2<T>, long: T, short: T, angle: T) -> RotatedBox<T> {
    let (s, c) = angle.sin_cos();
    let u = Point2::new(c, s) * (long * T::half());
    let v = Point2::new(-s, c) * (short * T::half());
    RotatedBox::new([center - u - v, center + u - v, center + u + v, center - u + v])
}

/// True if `p` is inside (or on) the convex polygon.
pub fn inside_convex<T: Scalar>(poly: &[Point2<T>], p: Point2<T>) -> bool {
    let n = poly.len();
    let (mut pos, mut neg) = (false, false);
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let side = (b - a).cross(p - a);
        if side > T::zero() {
            pos = true;
        } else if side < T::zero() {
            neg = true;
        }
        if pos && neg {
            return false;
        }
    }
    true
}

/// Cells whose centres fall inside the convex polygon.
pub fn rasterize_convex<T: Scalar>(width: usize, height: usize, poly: &[Point2<T>]) -> Result<BinaryMask> {
    BinaryMask::from_fn(width, height, |x, y| {
        inside_convex(poly, Point2::new(T::from_count(x), T::from_count(y)))
    })
}

/// Cells whose centres fall inside the ellipse.
pub fn rasterize_ellipse<T: Scalar>(width: usize, height: usize, e: &crate::ellipse::Ellipse<T>) -> Result<BinaryMask> {
    let conic = e.to_conic();
    BinaryMask::from_fn(width, height, |x, y| {
        crate::ellipse::residual(&conic, Point2::new(T::from_count(x), T::from_count(y))) <= T::zero()
    })
}

/// Cell-wise union of equally sized masks.
pub fn union(masks: &[BinaryMask]) -> Result<BinaryMask> {
    let first = &masks[0];
    BinaryMask::from_fn(first.width(), first.height(), |x, y| {
        masks.iter().any(|m| m.get(x as i64, y as i64))
    })
}

/// Flips each cell on the object boundary band (foreground cells with a
/// background 4-neighbour and background cells with a foreground
/// 4-neighbour) with probability `rate`.
pub fn boundary_noise(mask: &BinaryMask, rate: f64, rng: &mut impl Rng) -> BinaryMask {
    let mut out = mask.clone();
    for y in 0..mask.height() {
        for x in 0..mask.width() {
            let (xi, yi) = (x as i64, y as i64);
            let v = mask.get(xi, yi);
            let on_band = [(-1, 0), (1, 0), (0, -1), (0, 1)]
                .iter()
                .any(|&(dx, dy)| mask.get(xi + dx, yi + dy) != v);
            if on_band && rng.random::<f64>() < rate {
                out.set(x, y, !v);
            }
        }
    }
    out
}

/// A standing figure with both arms stretched out horizontally: an
/// elliptical trunk, a round head, two legs and two thin arms.
pub fn limb_silhouette(width: usize, height: usize) -> Result<BinaryMask> {
    use crate::ellipse::Ellipse;
    let w = width as f64;
    let h = height as f64;
    let cx = w / 2.0;
    let trunk = Ellipse::new(
        Point2::new(cx, h * 0.45),
        h * 0.2,
        w * 0.09,
        std::f64::consts::FRAC_PI_2,
    );
    let head = Ellipse::new(Point2::new(cx, h * 0.19), h * 0.07, h * 0.07, 0.0);
    let arms = rotated_rect(Point2::new(cx, h * 0.33), w * 0.9, h * 0.035, 0.0);
    let leg_l = rotated_rect(Point2::new(cx - w * 0.05, h * 0.75), h * 0.3, w * 0.05, 1.65);
    let leg_r = rotated_rect(Point2::new(cx + w * 0.05, h * 0.75), h * 0.3, w * 0.05, 1.49);
    union(&[
        rasterize_ellipse(width, height, &trunk)?,
        rasterize_ellipse(width, height, &head)?,
        rasterize_convex(width, height, &arms.corners)?,
        rasterize_convex(width, height, &leg_l.corners)?,
        rasterize_convex(width, height, &leg_r.corners)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_aligned_rect_rasterizes_exactly() {
        let r = rotated_rect(Point2::new(10.0, 10.0), 8.0, 4.0, 0.0);
        // Edges at x = 6, 14 and y = 8, 12 hit cell centres, which count.
        let m = rasterize_convex(30, 30, &r.corners).unwrap();
        assert_eq!(m.foreground_count(), 9 * 5);
    }

    #[test]
    fn silhouette_is_one_component() {
        let m = limb_silhouette(127, 127).unwrap();
        assert_eq!(m.components().len(), 1);
        assert!(m.foreground_count() > 1000);
    }
}
