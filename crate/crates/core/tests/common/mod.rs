//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rotbox::synth::{inside_convex, rotated_rect};
use rotbox::{BinaryMask, Point64, RotatedBox64};

/// Ordered hull edges `(i, j)` found by checking every pair against every
/// point: all points must lie strictly left of `i -> j` or on the closed
/// segment. Exact for integer-valued coordinates.
pub fn hull_edges_bruteforce(points: &[Point64]) -> BTreeSet<(i64, i64, i64, i64)> {
    let mut edges = BTreeSet::new();
    for (i, &a) in points.iter().enumerate() {
        for (j, &b) in points.iter().enumerate() {
            if i == j || a == b {
                continue;
            }
            let ok = points.iter().all(|&p| {
                let side = (b - a).cross(p - a);
                if side > 0.0 {
                    return true;
                }
                if side < 0.0 {
                    return false;
                }
                let t = (p - a).dot(b - a);
                t >= 0.0 && t <= (b - a).dot(b - a)
            });
            if ok {
                edges.insert((a.x as i64, a.y as i64, b.x as i64, b.y as i64));
            }
        }
    }
    edges
}

/// Smallest axis-aligned box area over rotations in `step_deg` increments
/// across a quarter turn.
pub fn sweep_min_area(points: &[Point64], step_deg: f64) -> f64 {
    let steps = (90.0 / step_deg).round() as usize;
    let mut best = f64::INFINITY;
    for k in 0..steps {
        let (s, c) = (k as f64 * step_deg).to_radians().sin_cos();
        let (mut u0, mut u1, mut v0, mut v1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            let u = c * p.x + s * p.y;
            let v = -s * p.x + c * p.y;
            u0 = u0.min(u);
            u1 = u1.max(u);
            v0 = v0.min(v);
            v1 = v1.max(v);
        }
        best = best.min((u1 - u0) * (v1 - v0));
    }
    best
}

/// Point-membership estimate of the IoU of two convex polygons.
pub fn monte_carlo_iou(p: &RotatedBox64, q: &RotatedBox64, samples: usize, rng: &mut impl Rng) -> f64 {
    let all: Vec<Point64> = p.corners.iter().chain(q.corners.iter()).copied().collect();
    let x0 = all.iter().map(|c| c.x).fold(f64::INFINITY, f64::min);
    let x1 = all.iter().map(|c| c.x).fold(f64::NEG_INFINITY, f64::max);
    let y0 = all.iter().map(|c| c.y).fold(f64::INFINITY, f64::min);
    let y1 = all.iter().map(|c| c.y).fold(f64::NEG_INFINITY, f64::max);
    let (mut inter, mut uni) = (0usize, 0usize);
    for _ in 0..samples {
        let pt = Point64::new(rng.random_range(x0..x1), rng.random_range(y0..y1));
        let a = inside_convex(&p.corners, pt);
        let b = inside_convex(&q.corners, pt);
        inter += (a && b) as usize;
        uni += (a || b) as usize;
    }
    if uni == 0 {
        0.0
    } else {
        inter as f64 / uni as f64
    }
}

/// A random rectangle inside roughly `[0, 10]²`.
pub fn random_rect(rng: &mut impl Rng) -> RotatedBox64 {
    rotated_rect(
        Point64::new(rng.random_range(3.0..7.0), rng.random_range(3.0..7.0)),
        rng.random_range(1.0..5.0),
        rng.random_range(0.5..3.0),
        rng.random_range(0.0..std::f64::consts::PI),
    )
}

/// Absolute difference of two undirected angles, in degrees.
pub fn angle_error_deg(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::PI);
    d.min(std::f64::consts::PI - d).to_degrees()
}

/// Direction of the longer side of a rectangle.
pub fn long_side_angle(r: &RotatedBox64) -> f64 {
    let c = &r.corners;
    let (e0, e1) = (c[1] - c[0], c[2] - c[1]);
    let e = if e0.norm() >= e1.norm() { e0 } else { e1 };
    e.y.atan2(e.x).rem_euclid(std::f64::consts::PI)
}

/// Plain re-statement of the refinement loop on `[x0, y0, x1, y1]`, with
/// direct cell lookups (nearest cell centre, halves rounding up).
pub fn reference_refine(mask: &BinaryMask, b: [f64; 4], factor: f64, step: f64, cap: f64, freeze: bool) -> [f64; 4] {
    let fg = |x: f64, y: f64| mask.get((x + 0.5).floor() as i64, (y + 0.5).floor() as i64);
    let [mut x0, mut y0, mut x1, mut y1] = b;
    let (w0, h0) = (x1 - x0, y1 - y0);
    let caps = [w0 * cap, h0 * cap, w0 * cap, h0 * cap];
    let orig = [h0, w0, h0, w0];
    let mut moved = [0.0f64; 4];
    loop {
        let mut any = false;
        for e in 0..4 {
            let (len, beta) = {
                let len = if e % 2 == 0 { y1 - y0 } else { x1 - x0 };
                let mut beta = 0.0;
                let mut k = 0.0;
                while k < len {
                    let seg = f64::min(1.0, len - k);
                    let t = k + seg / 2.0;
                    let hit = match e {
                        0 => fg(x0, y0 + t),
                        1 => fg(x0 + t, y0),
                        2 => fg(x1, y0 + t),
                        _ => fg(x0 + t, y1),
                    };
                    if hit {
                        beta += seg;
                    }
                    k += 1.0;
                }
                (len, beta)
            };
            let alpha = if freeze { orig[e] } else { len };
            if beta > alpha * factor {
                continue;
            }
            let d = step.min(caps[e] - moved[e]);
            let span = if e % 2 == 0 { x1 - x0 } else { y1 - y0 };
            if d <= 0.0 || d >= span {
                continue;
            }
            match e {
                0 => x0 += d,
                1 => y0 += d,
                2 => x1 -= d,
                _ => y1 -= d,
            }
            moved[e] += d;
            any = true;
        }
        if !any {
            return [x0, y0, x1, y1];
        }
    }
}
