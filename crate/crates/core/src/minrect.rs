//! Convex hull and minimum-area enclosing rectangle (rotating calipers).

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::{Point2, RotatedBox};
use crate::scalar::{normalize_half_turn, Scalar};

/// Monotone-chain hull, counterclockwise in the `atan2` sense (positive
/// shoelace area), collinear points dropped. Inputs with fewer than three
/// distinct non-collinear points return their distinct extreme points.
pub fn convex_hull<T: Scalar>(points: &[Point2<T>]) -> Result<Vec<Point2<T>>> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap_or(Ordering::Equal)
            .then(a.y.partial_cmp(&b.y).unwrap_or(Ordering::Equal))
    });
    pts.dedup();
    if pts.len() < 3 {
        return Ok(pts);
    }

    let turn = |o: Point2<T>, a: Point2<T>, b: Point2<T>| (a - o).cross(b - o);
    let mut hull: Vec<Point2<T>> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= T::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= T::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() < 3 {
        // All collinear: keep the two extremes.
        hull.truncate(2);
    }
    Ok(hull)
}

/// Minimum-area rectangle enclosing `points`.
///
/// One side is collinear with a hull edge. Among equal areas the smaller
/// perimeter wins, then the smaller edge direction in `[0, π/2)`.
pub fn min_area_rect<T: Scalar>(points: &[Point2<T>]) -> Result<RotatedBox<T>> {
    let hull = convex_hull(points)?;
    match hull.len() {
        1 => return Ok(RotatedBox::new([hull[0]; 4])),
        2 => return Ok(RotatedBox::new([hull[0], hull[1], hull[1], hull[0]])),
        _ => {}
    }
    let n = hull.len();
    let at = |i: usize| hull[i % n];
    let edge_dir = |i: usize| {
        let e = at(i + 1) - at(i);
        e * (T::one() / e.norm())
    };

    let (mut far, mut top, mut near) = (1usize, 1usize, 1usize);
    let mut best: Option<Candidate<T>> = None;
    for i in 0..n {
        let u = edge_dir(i);
        let v = Point2::new(-u.y, u.x);
        let origin = at(i);
        // Monotone pointer advances; each is bounded by one loop around the hull.
        far = far.max(i + 1);
        while (at(far + 1) - at(far)).dot(u) > T::zero() && far < i + n {
            far += 1;
        }
        top = top.max(far);
        while (at(top + 1) - at(top)).dot(v) > T::zero() && top < i + n {
            top += 1;
        }
        near = near.max(top);
        while (at(near + 1) - at(near)).dot(u) < T::zero() && near < i + n {
            near += 1;
        }

        let max_u = (at(far) - origin).dot(u);
        let max_v = (at(top) - origin).dot(v);
        let min_u = (at(near) - origin).dot(u);
        let cand = Candidate {
            area: (max_u - min_u) * max_v,
            perimeter: T::two() * ((max_u - min_u) + max_v),
            angle: normalize_half_turn(u.y.atan2(u.x)) % T::FRAC_PI_2(),
            corners: [
                origin + u * min_u,
                origin + u * max_u,
                origin + u * max_u + v * max_v,
                origin + u * min_u + v * max_v,
            ],
        };
        if best.as_ref().is_none_or(|b| cand.better_than(b)) {
            best = Some(cand);
        }
    }
    Ok(RotatedBox::new(best.expect("hull has edges").corners))
}

struct Candidate<T> {
    area: T,
    perimeter: T,
    angle: T,
    corners: [Point2<T>; 4],
}

impl<T: Scalar> Candidate<T> {
    fn better_than(&self, other: &Self) -> bool {
        let tol = T::lit(64.0) * T::epsilon();
        let close = |a: T, b: T| (a - b).abs() <= tol * a.abs().max(b.abs());
        if !close(self.area, other.area) {
            return self.area < other.area;
        }
        if !close(self.perimeter, other.perimeter) {
            return self.perimeter < other.perimeter;
        }
        self.angle < other.angle
    }
}

/// Direction of the longer side in `[0, π)`; for squares, the first side.
pub fn rect_angle<T: Scalar>(r: &RotatedBox<T>) -> T {
    let c = &r.corners;
    let e0 = c[1] - c[0];
    let e1 = c[2] - c[1];
    let (l0, l1) = (e0.norm(), e1.norm());
    let is_square = (l0 - l1).abs() <= T::lit(1e-9) * l0.max(l1);
    let e = if is_square || l0 >= l1 { e0 } else { e1 };
    normalize_half_turn(e.y.atan2(e.x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rotation_about;
    use crate::scalar::half_turn_distance;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

    fn p(x: f64, y: f64) -> Point2<f64> {
        Point2::new(x, y)
    }

    fn same_corner_set(a: &RotatedBox<f64>, b: &RotatedBox<f64>, tol: f64) -> bool {
        a.corners
            .iter()
            .all(|x| b.corners.iter().any(|y| x.distance(*y) <= tol))
    }

    #[test]
    fn hull_drops_interior_and_collinear() {
        let pts = [
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(1.0, 1.0),
            p(0.0, 1.0),
            p(0.5, 0.5),
            p(0.5, 0.0),
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.len(), 4);
        assert!(crate::geometry::polygon_signed_area(&h) > 0.0);
        assert!(!h.contains(&p(0.5, 0.5)) && !h.contains(&p(0.5, 0.0)));

        let line = convex_hull(&[p(0.0, 0.0), p(2.0, 2.0), p(1.0, 1.0)]).unwrap();
        assert_eq!(line, vec![p(0.0, 0.0), p(2.0, 2.0)]);
        assert_eq!(convex_hull(&[p(3.0, 3.0), p(3.0, 3.0)]).unwrap(), vec![p(3.0, 3.0)]);
        assert!(matches!(convex_hull::<f64>(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn square_is_its_own_rect() {
        let sq = [p(0.0, 0.0), p(4.0, 0.0), p(4.0, 4.0), p(0.0, 4.0)];
        let r = min_area_rect(&sq).unwrap();
        assert!((r.area() - 16.0).abs() < 1e-12);
        assert!(same_corner_set(&r, &RotatedBox::new(sq), 1e-12));
    }

    #[test]
    fn rotated_square() {
        let sq = [p(0.0, 0.0), p(4.0, 0.0), p(4.0, 4.0), p(0.0, 4.0)];
        let rot = rotation_about(p(2.0, 2.0), 30f64.to_radians());
        let moved = rot.apply(&sq);
        let r = min_area_rect(&moved).unwrap();
        assert!((r.area() - 16.0).abs() < 1e-9);
        assert!(same_corner_set(
            &r,
            &RotatedBox::new([moved[0], moved[1], moved[2], moved[3]]),
            1e-9
        ));
    }

    #[test]
    fn degenerate_inputs() {
        let r = min_area_rect(&[p(1.0, 2.0)]).unwrap();
        assert_eq!(r.area(), 0.0);
        let r = min_area_rect(&[p(0.0, 0.0), p(3.0, 4.0), p(1.5, 2.0)]).unwrap();
        assert_eq!(r.area(), 0.0);
        assert!(r.corners.contains(&p(3.0, 4.0)));
    }

    #[test]
    fn angle_of_rectangles() {
        let wide = RotatedBox::new([p(0.0, 0.0), p(4.0, 0.0), p(4.0, 2.0), p(0.0, 2.0)]);
        assert_eq!(rect_angle(&wide), 0.0);
        let tall = RotatedBox::new([p(0.0, 0.0), p(2.0, 0.0), p(2.0, 4.0), p(0.0, 4.0)]);
        assert!((rect_angle(&tall) - FRAC_PI_2).abs() < 1e-15);
        // Rotating by -30° with `rotation_about` turns directions by +30°.
        let rot = rotation_about(p(0.0, 0.0), -FRAC_PI_6);
        let turned = wide.transformed(&rot);
        assert!(half_turn_distance(rect_angle(&turned), FRAC_PI_6) < 1e-9);
        let sq = RotatedBox::new([p(0.0, 0.0), p(0.0, 1.0), p(-1.0, 1.0), p(-1.0, 0.0)]);
        assert!((rect_angle(&sq) - FRAC_PI_2).abs() < 1e-15);
    }
}
