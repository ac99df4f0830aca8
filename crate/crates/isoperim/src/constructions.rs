//! Closed-form competitor families, polynomials and constants: the
//! analytic ground truth that the numerical kernel is checked against.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{polygonize_disk, Disk, Point, Shape};

/// Default polygonization resolution for verification-grade shapes.
pub const VERIFY_RESOLUTION: usize = 2048;

/// The two-disk competitor: disks of radii R1 >= R2 with R1^2 + R2^2 = 1,
/// placed on the x-axis inside the container of diameter D, the
/// barycentric disk tangent to the larger one.
#[derive(Debug, Clone, Serialize)]
pub struct TwoDiskCompetitor {
    pub r1: f64,
    pub r2: f64,
    pub d: f64,
    pub centers: (Point, Point),
    pub delta: f64,
    pub lambda0: f64,
    pub objective: f64,
    pub barycenter_x: f64,
}

/// Reference constants.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PaperConstants {
    /// pi / (8 (4 - pi)): the sharp ball-limit constant for the
    /// Fraenkel asymmetry.
    pub cicalese_leonardi: f64,
    /// 1.8296 / (2 + 8/pi)^2: lower bound on liminf J along sequences
    /// converging to a ball.
    pub tau_star: f64,
    /// (sqrt(2) - 1) / 4: J of the symmetric two-disk configuration.
    pub equal_disk_j: f64,
    /// The radius R1 at which the two-disk J equals tau_star.
    pub r1_hat: f64,
}

/// L1 distance of two unit-area disks at center distance a, with the
/// domain restricted to [0, 2]. Also asserts the linear bound f(a) <= 4a
/// on [0, 1].
pub fn ball_l1_distance(a: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&a) {
        return Err(Error::Domain(format!(
            "center distance must lie in [0, 2], got {a}"
        )));
    }
    let f = crate::geometry::disk_disk_symm_diff(a)?;
    if a <= 1.0 {
        debug_assert!(f <= 4.0 * a + 1e-12);
    }
    Ok(f)
}

/// Perimeter of the convex hull of a disk of radius `r1` and a point at
/// distance `r2 >= r1` from its center:
/// p(R1, R2) = R1 (2 pi - 2 arccos(R1/R2)) + 2 sqrt(R2^2 - R1^2).
pub fn hull_perimeter_disk_point(r1: f64, r2: f64) -> Result<f64> {
    if !(r1 > 0.0 && r2 >= r1) {
        return Err(Error::Domain(format!(
            "need 0 < R1 <= R2, got R1 = {r1}, R2 = {r2}"
        )));
    }
    Ok(r1 * (2.0 * PI - 2.0 * (r1 / r2).acos()) + 2.0 * (r2 * r2 - r1 * r1).sqrt())
}

/// Area of the cap of the unit disk cut by a chord of half-aperture
/// `alpha`, and the radius of the inner disk tangent to all such chords:
/// (alpha - sin alpha cos alpha, cos 2 alpha).
pub fn cap_geometry(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha < PI / 2.0) {
        return Err(Error::Domain(format!(
            "half-aperture must lie in (0, pi/2), got {alpha}"
        )));
    }
    let cap_area = alpha - alpha.sin() * alpha.cos();
    let inner_radius = (2.0 * alpha).cos();
    if alpha < 0.05 {
        // small-aperture expansion A = 2 alpha^3 / 3 + o(alpha^3)
        debug_assert!((cap_area - 2.0 * alpha.powi(3) / 3.0).abs() < alpha.powi(4));
    }
    Ok((cap_area, inner_radius))
}

/// q_D(R) = R^3 - D R^2 - 2 R + D - 1, the tangency-equation left side.
pub fn q_poly(d: f64, r: f64) -> f64 {
    r * r * r - d * r * r - 2.0 * r + d - 1.0
}

/// p_D(R) = 2R^4 - 2(D+2)R^3 + (D^2+4D-1)R^2 + (4-2D^2)R + D^2 - 2D,
/// the degree-4 polynomial obtained by squaring the tangency equation.
pub fn p_poly(d: f64, r: f64) -> f64 {
    2.0 * r.powi(4) - 2.0 * (d + 2.0) * r.powi(3) + (d * d + 4.0 * d - 1.0) * r * r
        + (4.0 - 2.0 * d * d) * r
        + d * d
        - 2.0 * d
}

/// Identity check linking the two polynomials:
/// (R+1)^2 p_D(R) = q_D(R)^2 - (1 - R^2)^3.
pub fn poly_identity_residual(d: f64, r: f64) -> f64 {
    let lhs = (r + 1.0) * (r + 1.0) * p_poly(d, r);
    let rhs = q_poly(d, r).powi(2) - (1.0 - r * r).powi(3);
    lhs - rhs
}

/// Root of p_D inside the bracket
/// (1 - 1/D - 2/D^2, 1 - 1/D - 1/D^2), by bisection to 1e-12.
pub fn solve_r1_star(d: f64) -> Result<f64> {
    if d < 5.0 {
        return Err(Error::Domain(format!(
            "the bracket is only established for D >= 5, got {d}"
        )));
    }
    let mut lo = 1.0 - 1.0 / d - 2.0 / (d * d);
    let mut hi = 1.0 - 1.0 / d - 1.0 / (d * d);
    let (flo, fhi) = (p_poly(d, lo), p_poly(d, hi));
    if !(flo > 0.0 && fhi < 0.0) {
        return Err(Error::Inconsistency(format!(
            "bracket sign conditions violated at D = {d}: p(lo) = {flo}, p(hi) = {fhi}"
        )));
    }
    while hi - lo > 1e-12 {
        let mid = (lo + hi) / 2.0;
        if p_poly(d, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut root = (lo + hi) / 2.0;
    // polish on the unsquared tangency equation q(R) = (1 - R^2)^{3/2};
    // the bisection residual gets amplified by O(D) in the tangency
    // check, so drive this form to machine precision
    for _ in 0..4 {
        let g = q_poly(d, root) - (1.0 - root * root).powf(1.5);
        let dg = 3.0 * root * root - 2.0 * d * root - 2.0 + 3.0 * root * (1.0 - root * root).sqrt();
        let next = root - g / dg;
        if !next.is_finite() {
            break;
        }
        root = next;
    }
    if q_poly(d, root) < 0.0 {
        return Err(Error::Inconsistency(format!(
            "q_D(R1*) < 0 at D = {d}, R1* = {root}: squaring introduced a spurious root"
        )));
    }
    Ok(root)
}

/// Builds the two-disk competitor for container diameter `D >= 10`, with
/// the emitted shape polygonized at `resolution` vertices per disk.
pub fn build_two_disk_competitor_with_resolution(
    d: f64,
    resolution: usize,
) -> Result<(TwoDiskCompetitor, Shape)> {
    if d < 10.0 {
        return Err(Error::UnsupportedRegime(format!(
            "the two-disk competitor analysis needs D >= 10, got {d}"
        )));
    }
    let r1 = solve_r1_star(d)?;
    let r2 = (1.0 - r1 * r1).sqrt();
    let c1 = Point::new(d / 2.0 - r1, 0.0);
    let c2 = Point::new(-d / 2.0 + r2, 0.0);
    let barycenter_x = r1 * r1 * c1.x + r2 * r2 * c2.x;
    // tangency of the barycentric (unit) disk to the big disk:
    // x_G + 1 = D/2 - 2 R1
    let tangency_residual = (barycenter_x + 1.0 - (d / 2.0 - 2.0 * r1)).abs();
    if tangency_residual > 1e-9 {
        return Err(Error::Inconsistency(format!(
            "tangency residual {tangency_residual:.3e} exceeds 1e-9 at D = {d}"
        )));
    }
    let delta = r1 + r2 - 1.0;
    let competitor = TwoDiskCompetitor {
        r1,
        r2,
        d,
        centers: (c1, c2),
        delta,
        lambda0: 2.0,
        objective: delta / 4.0,
        barycenter_x,
    };
    let shape = Shape::new(vec![
        polygonize_disk(&Disk::new(c1, r1), resolution)?,
        polygonize_disk(&Disk::new(c2, r2), resolution)?,
    ])?;
    Ok((competitor, shape))
}

pub fn build_two_disk_competitor(d: f64) -> Result<(TwoDiskCompetitor, Shape)> {
    build_two_disk_competitor_with_resolution(d, VERIFY_RESOLUTION)
}

/// One element of the explicit two-disk family with J -> 0: the disk of
/// radius 1 - 1/n at (2, 0) and the disk of radius sqrt(2n-1)/n at
/// (-2(n-1)^2 / (2n-1), 0). For n < 4 the small disk overlaps the unit
/// barycentric disk, so lambda0 < 2 and the analytic value is withheld.
#[derive(Debug, Clone, Serialize)]
pub struct FugledeElement {
    pub n: usize,
    pub big_radius: f64,
    pub small_radius: f64,
    pub delta: f64,
    /// `None` when the small disk overlaps the barycentric disk (n < 4).
    pub lambda0: Option<f64>,
}

pub fn build_fuglede_sequence_with_resolution(
    n: usize,
    resolution: usize,
) -> Result<(FugledeElement, Shape)> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    let nf = n as f64;
    let big_radius = 1.0 - 1.0 / nf;
    let small_radius = (2.0 * nf - 1.0).sqrt() / nf;
    let small_x = -2.0 * (nf - 1.0) * (nf - 1.0) / (2.0 * nf - 1.0);
    let shape = Shape::new(vec![
        polygonize_disk(&Disk::new(Point::new(2.0, 0.0), big_radius), resolution)?,
        polygonize_disk(&Disk::new(Point::new(small_x, 0.0), small_radius), resolution)?,
    ])?;
    // disjointness from the unit barycentric disk, checked rather than assumed
    let small_clear = small_x.abs() >= 1.0 + small_radius;
    let big_clear = 2.0 >= 1.0 + big_radius;
    let lambda0 = if small_clear && big_clear {
        Some(2.0)
    } else {
        None
    };
    let element = FugledeElement {
        n,
        big_radius,
        small_radius,
        delta: big_radius + small_radius - 1.0,
        lambda0,
    };
    Ok((element, shape))
}

pub fn build_fuglede_sequence(n: usize) -> Result<(FugledeElement, Shape)> {
    build_fuglede_sequence_with_resolution(n, VERIFY_RESOLUTION)
}

/// The reference constants, with R1-hat found by bisection on the
/// decreasing map R -> (R + sqrt(1-R^2) - 1)/4 rather than trusting the
/// quoted digits.
pub fn paper_constants() -> PaperConstants {
    let cicalese_leonardi = PI / (8.0 * (4.0 - PI));
    let tau_star = 1.8296 / (2.0 + 8.0 / PI).powi(2);
    let equal_disk_j = (2.0_f64.sqrt() - 1.0) / 4.0;
    let two_disk_j = |r: f64| (r + (1.0 - r * r).sqrt() - 1.0) / 4.0;
    let mut lo = 1.0 / 2.0_f64.sqrt();
    let mut hi = 1.0;
    while hi - lo > 1e-14 {
        let mid = (lo + hi) / 2.0;
        // the map is strictly decreasing on [1/sqrt(2), 1]
        if two_disk_j(mid) > tau_star {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    PaperConstants {
        cicalese_leonardi,
        tau_star,
        equal_disk_j,
        r1_hat: (lo + hi) / 2.0,
    }
}
