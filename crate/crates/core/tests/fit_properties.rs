mod common;

use std::f64::consts::PI;

use common::angle_error_deg;
use proptest::prelude::*;
use rotbox::{conic_to_ellipse, fit_ellipse, rotation_about, Ellipse64, Point64};

fn fitted(points: &[Point64]) -> Ellipse64 {
    conic_to_ellipse(&fit_ellipse(points).unwrap()).unwrap()
}

fn centroid(points: &[Point64]) -> Point64 {
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(x, y), p| (x + p.x, y + p.y));
    Point64::new(sx / n, sy / n)
}

fn ellipse_strategy() -> impl Strategy<Value = Ellipse64> {
    (20.0..100.0f64, 20.0..100.0f64, 5.0..40.0f64, 0.1..1.0f64, 0.0..PI)
        .prop_map(|(x, y, m, r, t)| Ellipse64::new(Point64::new(x, y), m, (m * r).max(2.0).min(m), t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn recovers_generator(e in ellipse_strategy(), count in 6usize..200) {
        let got = fitted(&e.sample(count));
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
        prop_assert!(rel(got.center.x, e.center.x) < 1e-6);
        prop_assert!(rel(got.center.y, e.center.y) < 1e-6);
        prop_assert!(rel(got.semi_major, e.semi_major) < 1e-6);
        prop_assert!(rel(got.semi_minor, e.semi_minor) < 1e-6);
        if e.semi_major / e.semi_minor > 1.0 + 1e-3 {
            prop_assert!(angle_error_deg(got.angle, e.angle) < 1e-6_f64.to_degrees());
        }
    }

    #[test]
    fn rotation_equivariant(e in ellipse_strategy(), phi in -PI..PI) {
        let pts = e.sample(60);
        let rot = rotation_about(centroid(&pts), phi);
        let a = fitted(&pts);
        let b = fitted(&rot.apply(&pts));
        prop_assert!((a.semi_major - b.semi_major).abs() < 1e-6 * a.semi_major);
        prop_assert!((a.semi_minor - b.semi_minor).abs() < 1e-6 * a.semi_major);
        if a.semi_major / a.semi_minor > 1.0 + 1e-3 {
            // `rotation_about` with a positive angle turns +x towards -y.
            prop_assert!(angle_error_deg(b.angle, a.angle - phi) < 1e-6_f64.to_degrees());
        }
        let c = rot.apply_point(a.center);
        prop_assert!(c.distance(b.center) < 1e-6 * a.semi_major);
    }

    #[test]
    fn translation_equivariant(e in ellipse_strategy(), tx in -50.0..50.0f64, ty in -50.0..50.0f64) {
        let pts = e.sample(40);
        let moved: Vec<Point64> = pts.iter().map(|p| Point64::new(p.x + tx, p.y + ty)).collect();
        let a = fitted(&pts);
        let b = fitted(&moved);
        prop_assert!((b.center.x - a.center.x - tx).abs() < 1e-6);
        prop_assert!((b.center.y - a.center.y - ty).abs() < 1e-6);
        prop_assert!((a.semi_major - b.semi_major).abs() < 1e-6);
        prop_assert!((a.semi_minor - b.semi_minor).abs() < 1e-6);
        if a.semi_major / a.semi_minor > 1.0 + 1e-3 {
            prop_assert!(angle_error_deg(a.angle, b.angle) < 1e-6_f64.to_degrees());
        }
    }

    #[test]
    fn scaled_coefficients_give_same_ellipse(e in ellipse_strategy(), k in prop_oneof![-1e3..-1e-3f64, 1e-3..1e3f64]) {
        let conic = fit_ellipse(&e.sample(30)).unwrap();
        let a = conic_to_ellipse(&conic).unwrap();
        let b = conic_to_ellipse(&conic.scaled(k)).unwrap();
        prop_assert!(a.center.distance(b.center) < 1e-9 * a.semi_major.max(1.0) * 100.0);
        prop_assert!((a.semi_major - b.semi_major).abs() < 1e-9 * a.semi_major);
        prop_assert!((a.semi_minor - b.semi_minor).abs() < 1e-9 * a.semi_major);
        prop_assert!(angle_error_deg(a.angle, b.angle) < 1e-7);
    }

    /// Any non-degenerate cloud yields an ellipse, even far from elliptical data.
    #[test]
    fn output_is_always_elliptic(pts in prop::collection::vec((0.0..100.0f64, 0.0..100.0f64), 6..80)) {
        let pts: Vec<Point64> = pts.into_iter().map(|(x, y)| Point64::new(x, y)).collect();
        if let Ok(conic) = fit_ellipse(&pts) {
            prop_assert!(conic.discriminant() < 0.0, "{conic:?}");
        }
    }
}

#[test]
fn high_aspect_recovery() {
    let e = Ellipse64::new(Point64::new(50.0, 40.0), 40.0, 2.0, 0.7);
    let got = fitted(&e.sample(100));
    assert!((got.semi_major - 40.0).abs() < 40e-6);
    assert!((got.semi_minor - 2.0).abs() < 2e-6);
    assert!(angle_error_deg(got.angle, 0.7) < 1e-4);
}
