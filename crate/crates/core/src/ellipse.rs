//! Direct least-squares ellipse fitting.
//!
//! The fit minimises the algebraic distance `Σ F(xᵢ, yᵢ)²` of the conic
//! `F(x, y) = ax² + bxy + cy² + dx + ey + f` under the ellipse-specific
//! constraint `4ac − b² = 1`. The 6×6 generalized eigenproblem is reduced to a
//! 3×3 ordinary one by splitting the design matrix into its quadratic and
//! linear parts, which keeps the scatter matrices well conditioned. Points are
//! centred and scaled before the fit and the result is mapped back.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::scalar::{normalize_half_turn, Scalar};

/// Coefficients of `ax² + bxy + cy² + dx + ey + f = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicCoefficients<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
    pub f: T,
}

impl<T: Scalar> ConicCoefficients<T> {
    pub fn from_array([a, b, c, d, e, f]: [T; 6]) -> Self {
        Self { a, b, c, d, e, f }
    }

    pub fn to_array(&self) -> [T; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    /// `b² − 4ac`; negative for ellipses.
    pub fn discriminant(&self) -> T {
        self.b * self.b - T::lit(4.0) * self.a * self.c
    }

    pub fn is_elliptic(&self) -> bool {
        self.discriminant() < T::zero()
    }

    pub fn scaled(&self, k: T) -> Self {
        Self::from_array(self.to_array().map(|v| v * k))
    }

    /// Scaled to unit Euclidean norm with the first nonzero coefficient positive.
    pub fn normalized(&self) -> Self {
        let arr = self.to_array();
        let norm = arr.iter().fold(T::zero(), |acc, &v| acc.hypot(v));
        if norm == T::zero() || !norm.is_finite() {
            return *self;
        }
        let lead = arr.iter().copied().find(|v| *v != T::zero()).unwrap_or(T::one());
        let sign = if lead < T::zero() { -T::one() } else { T::one() };
        // Adding zero turns -0.0 into 0.0.
        Self::from_array(arr.map(|v| v * sign / norm + T::zero()))
    }
}

/// Geometric ellipse. `angle` is the direction of the semi-major axis measured
/// from +x towards +y (`atan2` sense), in `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ellipse<T> {
    pub center: Point2<T>,
    pub semi_major: T,
    pub semi_minor: T,
    pub angle: T,
}

impl<T: Scalar> Ellipse<T> {
    /// Builds an ellipse, swapping the axes if needed so that
    /// `semi_major ≥ semi_minor`, and wrapping the angle into `[0, π)`.
    pub fn new(center: Point2<T>, axis_a: T, axis_b: T, angle: T) -> Self {
        let (semi_major, semi_minor, angle) = if axis_b > axis_a {
            (axis_b, axis_a, angle + T::FRAC_PI_2())
        } else {
            (axis_a, axis_b, angle)
        };
        Self {
            center,
            semi_major,
            semi_minor,
            angle: normalize_half_turn(angle),
        }
    }

    /// Point at parameter `t` on the boundary.
    pub fn point_at(&self, t: T) -> Point2<T> {
        let (st, ct) = t.sin_cos();
        let (sa, ca) = self.angle.sin_cos();
        let (m, n) = (self.semi_major, self.semi_minor);
        Point2::new(
            self.center.x + m * ct * ca - n * st * sa,
            self.center.y + m * ct * sa + n * st * ca,
        )
    }

    /// `count` boundary points at evenly spaced parameters.
    pub fn sample(&self, count: usize) -> Vec<Point2<T>> {
        let step = T::two() * T::PI() / T::from_count(count.max(1));
        (0..count).map(|i| self.point_at(step * T::from_count(i))).collect()
    }

    /// Axis ratio `n / m` in `(0, 1]`.
    pub fn roundness(&self) -> T {
        self.semi_minor / self.semi_major
    }

    /// Forces the angle to π/2 for near-circular ellipses (`n/m > threshold`).
    pub fn with_circular_override(mut self, threshold: T) -> Self {
        if self.roundness() > threshold {
            self.angle = T::FRAC_PI_2();
        }
        self
    }

    /// The ellipse as conic coefficients (unnormalized).
    pub fn to_conic(&self) -> ConicCoefficients<T> {
        let (s, c) = self.angle.sin_cos();
        let m2 = self.semi_major * self.semi_major;
        let n2 = self.semi_minor * self.semi_minor;
        let a = c * c / m2 + s * s / n2;
        let b = T::two() * c * s * (T::one() / m2 - T::one() / n2);
        let cc = s * s / m2 + c * c / n2;
        let (x0, y0) = (self.center.x, self.center.y);
        let d = -(T::two() * a * x0 + b * y0);
        let e = -(b * x0 + T::two() * cc * y0);
        let f = a * x0 * x0 + b * x0 * y0 + cc * y0 * y0 - T::one();
        ConicCoefficients { a, b, c: cc, d, e, f }
    }
}

/// `[x², xy, y², x, y, 1]`.
pub fn design_row<T: Scalar>(p: Point2<T>) -> [T; 6] {
    [p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, T::one()]
}

/// Algebraic distance `F(x, y)`.
pub fn residual<T: Scalar>(c: &ConicCoefficients<T>, p: Point2<T>) -> T {
    design_row(p)
        .iter()
        .zip(c.to_array())
        .fold(T::zero(), |acc, (&x, a)| acc + x * a)
}

pub const MIN_FIT_POINTS: usize = 6;

/// Fits an ellipse to `points`; the result is normalized (see
/// [`ConicCoefficients::normalized`]) and always satisfies `b² − 4ac < 0`.
pub fn fit_ellipse<T: Scalar>(points: &[Point2<T>]) -> Result<ConicCoefficients<T>> {
    if points.len() < MIN_FIT_POINTS {
        return Err(Error::TooFewPoints {
            needed: MIN_FIT_POINTS,
            got: points.len(),
        });
    }
    let count = T::from_count(points.len());
    let mean = points.iter().fold(Point2::new(T::zero(), T::zero()), |acc, &p| acc + p) * (T::one() / count);
    let spread = (points.iter().fold(T::zero(), |acc, &p| {
        let q = p - mean;
        acc + q.dot(q)
    }) / count)
        .sqrt();
    if !(spread > T::zero()) || !spread.is_finite() {
        return Err(Error::FitDegenerate("coincident points"));
    }
    let inv_spread = T::one() / spread;

    // Scatter blocks, averaged over the points:
    //   s1 = D1ᵀD1, s2 = D1ᵀD2, s3 = D2ᵀD2
    // with D1 = [u², uv, v²] and D2 = [u, v, 1] in normalized coordinates.
    let mut s1 = [[T::zero(); 3]; 3];
    let mut s2 = [[T::zero(); 3]; 3];
    let mut s3 = [[T::zero(); 3]; 3];
    for &p in points {
        let q = (p - mean) * inv_spread;
        let quad = [q.x * q.x, q.x * q.y, q.y * q.y];
        let lin = [q.x, q.y, T::one()];
        for i in 0..3 {
            for j in 0..3 {
                s1[i][j] = s1[i][j] + quad[i] * quad[j];
                s2[i][j] = s2[i][j] + quad[i] * lin[j];
                s3[i][j] = s3[i][j] + lin[i] * lin[j];
            }
        }
    }
    let inv_count = T::one() / count;
    for m in [&mut s1, &mut s2, &mut s3] {
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v = *v * inv_count;
            }
        }
    }

    let s3_inv = invert3(&s3, T::epsilon().sqrt() * T::lit(1e-2)).ok_or(Error::FitDegenerate("collinear points"))?;
    // linear = −S3⁻¹ S2ᵀ maps the quadratic part onto the optimal linear part.
    let s2t = transpose3(&s2);
    let linear = mul3(&s3_inv, &s2t).map(|row| row.map(|v| -v));
    let reduced = add3(&s1, &mul3(&s2, &linear));
    // Premultiply by C1⁻¹ where C1 = [[0, 0, 2], [0, −1, 0], [2, 0, 0]].
    let half = T::half();
    let system = [
        reduced[2].map(|v| v * half),
        reduced[1].map(|v| -v),
        reduced[0].map(|v| v * half),
    ];

    let quad = elliptic_eigenvector(&system).ok_or(Error::FitDegenerate("no elliptic solution"))?;
    let lin = mul3v(&linear, &quad);
    let normalized = ConicCoefficients::from_array([quad[0], quad[1], quad[2], lin[0], lin[1], lin[2]]);
    let conic = denormalize(&normalized, mean, spread).normalized();
    if !conic.is_elliptic() || conic.to_array().iter().any(|v| !v.is_finite()) {
        return Err(Error::FitDegenerate("no elliptic solution"));
    }
    Ok(conic)
}

/// Maps a conic in `u = (x − mx)/s, v = (y − my)/s` back to `(x, y)` (times `s²`).
fn denormalize<T: Scalar>(c: &ConicCoefficients<T>, mean: Point2<T>, s: T) -> ConicCoefficients<T> {
    let (mx, my) = (mean.x, mean.y);
    let two = T::two();
    ConicCoefficients {
        a: c.a,
        b: c.b,
        c: c.c,
        d: -two * c.a * mx - c.b * my + c.d * s,
        e: -c.b * mx - two * c.c * my + c.e * s,
        f: c.a * mx * mx + c.b * mx * my + c.c * my * my - c.d * s * mx - c.e * s * my + c.f * s * s,
    }
}

/// Picks the eigenvector `[a, b, c]` of `m` with `4ac − b² > 0`.
fn elliptic_eigenvector<T: Scalar>(m: &[[T; 3]; 3]) -> Option<[T; 3]> {
    let mut best: Option<([T; 3], T)> = None;
    for lambda in real_eigenvalues3(m) {
        let Some(v) = null_vector3(m, lambda) else { continue };
        let norm2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        let cond = (T::lit(4.0) * v[0] * v[2] - v[1] * v[1]) / norm2;
        if cond > T::zero() && best.is_none_or(|(_, c)| cond > c) {
            best = Some((v, cond));
        }
    }
    best.map(|(v, _)| v)
}

/// Real roots of the characteristic polynomial, Newton-polished.
fn real_eigenvalues3<T: Scalar>(m: &[[T; 3]; 3]) -> Vec<T> {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = det3(m);
    // λ³ + p2 λ² + p1 λ + p0
    let (p2, p1, p0) = (-tr, minors, -det);
    let third = T::one() / T::lit(3.0);
    let shift = p2 * third;
    let p = p1 - p2 * p2 * third;
    let q = T::two() * p2 * p2 * p2 / T::lit(27.0) - p2 * p1 * third + p0;
    let disc = q * q / T::lit(4.0) + p * p * p / T::lit(27.0);
    let scale = (p.abs() * third).sqrt().max((q.abs() * T::half()).cbrt());

    let mut roots = Vec::with_capacity(3);
    if scale == T::zero() {
        roots.push(-shift);
    } else if disc <= T::lit(64.0) * T::epsilon() * scale.powi(6) && p < T::zero() {
        // Three real roots (allowing round-off on the discriminant sign).
        let r = (-p * third).sqrt();
        let arg = (-q * T::half() / (r * r * r)).max(-T::one()).min(T::one());
        let phi = arg.acos();
        for k in 0..3 {
            let t = T::two() * r * ((phi + T::two() * T::PI() * T::from_count(k)) * third).cos();
            roots.push(t - shift);
        }
    } else {
        let sq = disc.max(T::zero()).sqrt();
        let t = (-q * T::half() + sq).cbrt() + (-q * T::half() - sq).cbrt();
        roots.push(t - shift);
    }

    for r in roots.iter_mut() {
        for _ in 0..3 {
            let f = ((*r + p2) * *r + p1) * *r + p0;
            let df = (T::lit(3.0) * *r + T::two() * p2) * *r + p1;
            if df == T::zero() {
                break;
            }
            let next = *r - f / df;
            if !next.is_finite() {
                break;
            }
            // Accept only improving steps.
            let fn_ = ((next + p2) * next + p1) * next + p0;
            if fn_.abs() < f.abs() {
                *r = next;
            } else {
                break;
            }
        }
    }
    roots
}

/// Unit vector spanning the null space of `m − λI`, from the largest cross
/// product of its rows.
fn null_vector3<T: Scalar>(m: &[[T; 3]; 3], lambda: T) -> Option<[T; 3]> {
    let mut a = *m;
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = row[i] - lambda;
    }
    let cross = |u: [T; 3], v: [T; 3]| {
        [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ]
    };
    let candidates = [cross(a[0], a[1]), cross(a[0], a[2]), cross(a[1], a[2])];
    let (best, norm) = candidates
        .into_iter()
        .map(|v| (v, (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()))
        .fold(None, |acc: Option<([T; 3], T)>, cur| match acc {
            Some(prev) if prev.1 >= cur.1 => Some(prev),
            _ => Some(cur),
        })?;
    (norm > T::zero() && norm.is_finite()).then(|| best.map(|v| v / norm))
}

fn det3<T: Scalar>(m: &[[T; 3]; 3]) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Inverse of a symmetric positive semi-definite 3×3 matrix, `None` when the
/// determinant is below `rel_tol` times the cube of its largest diagonal entry.
fn invert3<T: Scalar>(m: &[[T; 3]; 3], rel_tol: T) -> Option<[[T; 3]; 3]> {
    let det = det3(m);
    let diag = m[0][0].max(m[1][1]).max(m[2][2]);
    if !(det.abs() > rel_tol * diag * diag * diag) {
        return None;
    }
    let mut inv = [[T::zero(); 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, out) in row.iter_mut().enumerate() {
            // cofactor of (j, i)
            let (r0, r1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
            let sign = if (i + j) % 2 == 0 { T::one() } else { -T::one() };
            *out = sign * minor / det;
        }
    }
    Some(inv)
}

fn transpose3<T: Scalar>(m: &[[T; 3]; 3]) -> [[T; 3]; 3] {
    let mut t = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = m[j][i];
        }
    }
    t
}

fn mul3<T: Scalar>(a: &[[T; 3]; 3], b: &[[T; 3]; 3]) -> [[T; 3]; 3] {
    let mut out = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

fn mul3v<T: Scalar>(a: &[[T; 3]; 3], v: &[T; 3]) -> [T; 3] {
    [0, 1, 2].map(|i| a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2])
}

fn add3<T: Scalar>(a: &[[T; 3]; 3], b: &[[T; 3]; 3]) -> [[T; 3]; 3] {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = out[i][j] + b[i][j];
        }
    }
    out
}

/// Converts conic coefficients to centre, semi-axes and major-axis angle.
pub fn conic_to_ellipse<T: Scalar>(conic: &ConicCoefficients<T>) -> Result<Ellipse<T>> {
    if conic.to_array().iter().any(|v| !v.is_finite()) {
        return Err(Error::NotAnEllipse("non-finite coefficients"));
    }
    let mut c = conic.normalized();
    if c.a + c.c < T::zero() {
        c = c.scaled(-T::one());
    }
    let det = T::lit(4.0) * c.a * c.c - c.b * c.b;
    if !(det > T::zero()) {
        return Err(Error::NotAnEllipse("b^2 - 4ac >= 0"));
    }
    let x0 = (c.b * c.e - T::two() * c.c * c.d) / det;
    let y0 = (c.b * c.d - T::two() * c.a * c.e) / det;
    let f0 = c.f + (c.d * x0 + c.e * y0) * T::half();
    if !(f0 < T::zero()) {
        return Err(Error::NotAnEllipse("empty or single-point locus"));
    }

    let mean = (c.a + c.c) * T::half();
    let radius = ((c.a - c.c) * T::half()).hypot(c.b * T::half());
    let small = mean - radius;
    let large = mean + radius;
    if !(small > T::zero()) {
        return Err(Error::NotAnEllipse("degenerate quadratic form"));
    }
    let semi_major = (-f0 / small).sqrt();
    let semi_minor = (-f0 / large).sqrt();
    let angle = if radius <= T::lit(16.0) * T::epsilon() * mean {
        T::zero()
    } else {
        T::half() * c.b.atan2(c.a - c.c) + T::FRAC_PI_2()
    };
    Ok(Ellipse {
        center: Point2::new(x0, y0),
        semi_major,
        semi_minor,
        angle: normalize_half_turn(angle),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::half_turn_distance;
    use std::f64::consts::{FRAC_PI_6, PI};

    fn p(x: f64, y: f64) -> Point2<f64> {
        Point2::new(x, y)
    }

    #[test]
    fn design_row_examples() {
        assert_eq!(design_row(p(0.0, 0.0)), [0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(design_row(p(1.0, 1.0)), [1.0; 6]);
        assert_eq!(design_row(p(2.0, 3.0)), [4.0, 6.0, 9.0, 2.0, 3.0, 1.0]);
    }

    #[test]
    fn residual_examples() {
        let unit = ConicCoefficients::from_array([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]);
        assert_eq!(residual(&unit, p(2.0, 0.0)), 3.0);
        assert_eq!(residual(&unit, p(0.0, 0.0)), -1.0);
        let on = p(0.6, 0.8);
        assert!(residual(&unit.normalized(), on).abs() < 1e-9);
    }

    #[test]
    fn circle_fit_matches_completed_square() {
        let circle = Ellipse::new(p(5.0, 5.0), 2.0, 2.0, 0.0);
        let pts = circle.sample(360);
        let conic = fit_ellipse(&pts).unwrap();
        for &q in &pts {
            assert!(residual(&conic, q).abs() < 1e-8);
        }
        let expected = ConicCoefficients::from_array([1.0, 0.0, 1.0, -10.0, -10.0, 46.0]).normalized();
        for (got, want) in conic.to_array().iter().zip(expected.to_array()) {
            assert!((got - want).abs() < 1e-9, "{conic:?}");
        }
    }

    #[test]
    fn fit_recovers_rotated_ellipse() {
        let truth = Ellipse::new(p(10.0, 20.0), 5.0, 3.0, FRAC_PI_6);
        let conic = fit_ellipse(&truth.sample(100)).unwrap();
        let e = conic_to_ellipse(&conic).unwrap();
        assert!(e.center.distance(truth.center) < 1e-6);
        assert!((e.semi_major - 5.0).abs() < 1e-6);
        assert!((e.semi_minor - 3.0).abs() < 1e-6);
        assert!(half_turn_distance(e.angle, FRAC_PI_6) < 1e-6);
    }

    #[test]
    fn fit_rejects_collinear_and_small_sets() {
        let line: Vec<_> = (0..6).map(|i| p(i as f64, 2.0 * i as f64 + 1.0)).collect();
        assert!(matches!(fit_ellipse(&line), Err(Error::FitDegenerate(_))));
        assert!(matches!(
            fit_ellipse(&line[..5]),
            Err(Error::TooFewPoints { needed: 6, got: 5 })
        ));
        let same = vec![p(1.0, 1.0); 10];
        assert!(matches!(fit_ellipse(&same), Err(Error::FitDegenerate(_))));
    }

    #[test]
    fn conversion_examples() {
        let circle = ConicCoefficients::from_array([1.0, 0.0, 1.0, -10.0, -10.0, 46.0]);
        let e = conic_to_ellipse(&circle).unwrap();
        assert!(e.center.distance(p(5.0, 5.0)) < 1e-12);
        assert!((e.semi_major - 2.0).abs() < 1e-12 && (e.semi_minor - 2.0).abs() < 1e-12);
        assert_eq!(e.angle, 0.0);

        let canonical = ConicCoefficients::from_array([1.0, 0.0, 4.0, 0.0, 0.0, -4.0]);
        let e = conic_to_ellipse(&canonical).unwrap();
        assert!(e.center.distance(p(0.0, 0.0)) < 1e-12);
        assert!((e.semi_major - 2.0).abs() < 1e-12);
        assert!((e.semi_minor - 1.0).abs() < 1e-12);
        assert!(e.angle.abs() < 1e-12);
    }

    #[test]
    fn conversion_rejects_non_ellipses() {
        let hyperbola = ConicCoefficients::from_array([1.0, 0.0, -1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(conic_to_ellipse(&hyperbola), Err(Error::NotAnEllipse(_))));
        let imaginary = ConicCoefficients::from_array([1.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(conic_to_ellipse(&imaginary), Err(Error::NotAnEllipse(_))));
        let point = ConicCoefficients::from_array([1.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(conic_to_ellipse(&point), Err(Error::NotAnEllipse(_))));
    }

    #[test]
    fn conversion_is_scale_invariant() {
        let conic = Ellipse::new(p(3.0, -2.0), 7.0, 2.5, 1.1).to_conic();
        let base = conic_to_ellipse(&conic).unwrap();
        for k in [-3.0, 1e-4, 250.0] {
            let e = conic_to_ellipse(&conic.scaled(k)).unwrap();
            assert!(e.center.distance(base.center) < 1e-9);
            assert!((e.semi_major - base.semi_major).abs() < 1e-9);
            assert!((e.semi_minor - base.semi_minor).abs() < 1e-9);
            assert!(half_turn_distance(e.angle, base.angle) < 1e-9);
        }
    }

    #[test]
    fn constructor_orders_axes() {
        let e = Ellipse::new(p(0.0, 0.0), 1.0, 3.0, 0.25);
        assert_eq!((e.semi_major, e.semi_minor), (3.0, 1.0));
        assert!((e.angle - (0.25 + PI / 2.0)).abs() < 1e-15);
        let forced = Ellipse::new(p(0.0, 0.0), 1.0, 0.995, 0.2).with_circular_override(0.99);
        assert_eq!(forced.angle, PI / 2.0);
        let kept = Ellipse::new(p(0.0, 0.0), 1.0, 0.5, 0.2).with_circular_override(0.99);
        assert_eq!(kept.angle, 0.2);
    }

    #[test]
    fn single_precision_fit() {
        let truth = Ellipse::new(Point2::new(40.0_f32, 30.0), 12.0, 5.0, 0.6);
        let e = conic_to_ellipse(&fit_ellipse(&truth.sample(64)).unwrap()).unwrap();
        assert!(e.center.distance(truth.center) < 1e-2);
        assert!((e.semi_major - 12.0).abs() < 1e-2);
        assert!(half_turn_distance(e.angle, 0.6) < 1e-3);
    }
}
