//! Exact planar-shape kernel: polygons, disks, measures, and the
//! polygon/disk boolean areas on which every functional rests.
//!
//! Sets are finite disjoint unions of simple CCW polygons; curved sets
//! enter via [`polygonize_disk`] or Fourier synthesis. All measures here
//! are exact for the polygon (no sampling): the disk/polygon intersection
//! uses per-edge Green's-theorem clipping with circular-segment terms.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Tie-break tolerance on the edge/circle discriminant: tangential
/// contact is classified as non-crossing.
pub const TANGENCY_TOL: f64 = 1e-12;

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, positive when `other` is CCW of `self`.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm2(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn normalized(self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }

    /// Rotation by -90 degrees; maps a CCW edge direction to its outward normal.
    pub fn rot_cw(self) -> Point {
        Point::new(self.y, -self.x)
    }

    pub fn rotated(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.x, self.y).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (x, y) = <(f64, f64)>::deserialize(d)?;
        Ok(Point::new(x, y))
    }
}

/// A disk given by center and radius. Houses the barycentric ball, the
/// container ball of diameter `D` and the Fraenkel ball.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point, radius: f64) -> Self {
        Disk { center, radius }
    }

    pub fn unit() -> Self {
        Disk::new(Point::ORIGIN, 1.0)
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    pub fn contains(&self, p: Point) -> bool {
        p.dist(self.center) < self.radius
    }
}

/// One connected component: a simple polygon with CCW orientation.
/// The last->first edge is implicit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonComponent {
    pub vertices: Vec<Point>,
}

impl PolygonComponent {
    /// Builds a component, checking vertex count, finiteness and CCW
    /// orientation. Simplicity is checked separately by
    /// [`PolygonComponent::validate_simple`] (it is O(n^2)).
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let poly = PolygonComponent { vertices };
        poly.validate_basic()?;
        Ok(poly)
    }

    pub fn validate_basic(&self) -> Result<()> {
        if self.vertices.len() < 3 {
            return Err(Error::MalformedPolygon(format!(
                "{} vertices, need at least 3",
                self.vertices.len()
            )));
        }
        if let Some(p) = self.vertices.iter().find(|p| !p.is_finite()) {
            return Err(Error::MalformedPolygon(format!(
                "non-finite vertex ({}, {})",
                p.x, p.y
            )));
        }
        if self.signed_area() <= 0.0 {
            return Err(Error::MalformedPolygon(
                "orientation must be counter-clockwise (signed area > 0)".into(),
            ));
        }
        Ok(())
    }

    /// O(n^2) pairwise segment test for self-intersection.
    pub fn validate_simple(&self) -> Result<()> {
        let n = self.vertices.len();
        for i in 0..n {
            let (a1, a2) = (self.vertices[i], self.vertices[(i + 1) % n]);
            for j in i + 1..n {
                // skip adjacent edges (they share a vertex)
                if j == i || (j + 1) % n == i || (i + 1) % n == j {
                    continue;
                }
                let (b1, b2) = (self.vertices[j], self.vertices[(j + 1) % n]);
                if segments_intersect(a1, a2, b1, b2) {
                    return Err(Error::MalformedPolygon(format!(
                        "self-intersection between edges {i} and {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        let mut s = 0.0;
        for i in 0..n {
            s += self.vertices[i].cross(self.vertices[(i + 1) % n]);
        }
        s / 2.0
    }

    pub fn area(&self) -> f64 {
        self.signed_area()
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].dist(self.vertices[(i + 1) % n]))
            .sum()
    }

    /// First moments (integral of x and of y over the enclosed region).
    pub fn moments(&self) -> (f64, f64) {
        let n = self.vertices.len();
        let (mut mx, mut my) = (0.0, 0.0);
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let w = p.cross(q);
            mx += (p.x + q.x) * w;
            my += (p.y + q.y) * w;
        }
        (mx / 6.0, my / 6.0)
    }

    pub fn contains(&self, p: Point) -> bool {
        // crossing-number test
        let n = self.vertices.len();
        let mut inside = false;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            if (a.y > p.y) != (b.y > p.y) {
                let t = (p.y - a.y) / (b.y - a.y);
                if p.x < a.x + t * (b.x - a.x) {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Outward unit normal at each vertex (normal of the chord
    /// prev -> next, which is the discrete tangent direction).
    pub fn vertex_normals(&self) -> Vec<Point> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let prev = self.vertices[(i + n - 1) % n];
                let next = self.vertices[(i + 1) % n];
                (next - prev).rot_cw().normalized()
            })
            .collect()
    }

    /// Tangent angle at each vertex, from the chord prev -> next.
    pub fn tangent_angles(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let prev = self.vertices[(i + n - 1) % n];
                let next = self.vertices[(i + 1) % n];
                (next - prev).angle()
            })
            .collect()
    }

    /// Turning angle at each vertex (exterior angle, positive for convex
    /// CCW corners).
    pub fn turning_angles(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let prev = self.vertices[(i + n - 1) % n];
                let cur = self.vertices[i];
                let next = self.vertices[(i + 1) % n];
                let e0 = cur - prev;
                let e1 = next - cur;
                e0.cross(e1).atan2(e0.dot(e1))
            })
            .collect()
    }

    /// Arclength weight at each vertex: half the sum of adjacent edge lengths.
    pub fn ds_weights(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let prev = self.vertices[(i + n - 1) % n];
                let cur = self.vertices[i];
                let next = self.vertices[(i + 1) % n];
                (cur.dist(prev) + cur.dist(next)) / 2.0
            })
            .collect()
    }

    /// Discrete curvature: turning angle divided by the arclength weight.
    pub fn discrete_curvature(&self) -> Vec<f64> {
        self.turning_angles()
            .iter()
            .zip(self.ds_weights())
            .map(|(t, ds)| t / ds)
            .collect()
    }

    pub fn transformed(&self, f: impl Fn(Point) -> Point) -> PolygonComponent {
        PolygonComponent {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
        }
    }
}

/// The compact set `K`: a disjoint union of polygon components.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Shape {
    pub components: Vec<PolygonComponent>,
}

impl Shape {
    pub fn new(components: Vec<PolygonComponent>) -> Result<Self> {
        let shape = Shape { components };
        shape.validate_basic()?;
        Ok(shape)
    }

    pub fn validate_basic(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::DegenerateShape("no components".into()));
        }
        for c in &self.components {
            c.validate_basic()?;
        }
        if self.area() <= 0.0 {
            return Err(Error::DegenerateShape("total area must be positive".into()));
        }
        Ok(())
    }

    /// Full validation: basic checks, simplicity of each component and
    /// pairwise disjointness. O(n^2); intended for verification runs.
    pub fn validate(&self) -> Result<()> {
        self.validate_basic()?;
        for c in &self.components {
            c.validate_simple()?;
        }
        for i in 0..self.components.len() {
            for j in i + 1..self.components.len() {
                if !components_disjoint(&self.components[i], &self.components[j]) {
                    return Err(Error::DegenerateShape(format!(
                        "components {i} and {j} are not disjoint"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn area(&self) -> f64 {
        self.components.iter().map(|c| c.area()).sum()
    }

    pub fn perimeter(&self) -> f64 {
        self.components.iter().map(|c| c.perimeter()).sum()
    }

    pub fn barycenter(&self) -> Result<Point> {
        let a = self.area();
        if a <= 0.0 {
            return Err(Error::DegenerateShape("zero area".into()));
        }
        let (mut mx, mut my) = (0.0, 0.0);
        for c in &self.components {
            let (cx, cy) = c.moments();
            mx += cx;
            my += cy;
        }
        Ok(Point::new(mx / a, my / a))
    }

    /// Maximum pairwise vertex distance, via rotating calipers on the
    /// joint convex hull. Falls back to the brute-force scan when the
    /// point set is (near) collinear.
    pub fn diameter(&self) -> f64 {
        let points: Vec<Point> = self
            .components
            .iter()
            .flat_map(|c| c.vertices.iter().copied())
            .collect();
        match convex_hull(&points) {
            Ok(hull) => hull_diameter(&hull.vertices),
            Err(_) => brute_force_diameter(&points),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.components.iter().any(|c| c.contains(p))
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for c in &self.components {
            for v in &c.vertices {
                lo.x = lo.x.min(v.x);
                lo.y = lo.y.min(v.y);
                hi.x = hi.x.max(v.x);
                hi.y = hi.y.max(v.y);
            }
        }
        (lo, hi)
    }

    pub fn transformed(&self, f: impl Fn(Point) -> Point) -> Shape {
        Shape {
            components: self.components.iter().map(|c| c.transformed(&f)).collect(),
        }
    }

    pub fn translated(&self, d: Point) -> Shape {
        self.transformed(|p| p + d)
    }

    pub fn rotated(&self, angle: f64) -> Shape {
        self.transformed(|p| p.rotated(angle))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("shape serialization")
    }

    pub fn from_json(s: &str) -> Result<Shape> {
        let shape: Shape = serde_json::from_str(s)?;
        shape.validate_basic()?;
        Ok(shape)
    }
}

fn segments_intersect(a1: Point, a2: Point, b1: Point, b2: Point) -> bool {
    let d1 = (a2 - a1).cross(b1 - a1);
    let d2 = (a2 - a1).cross(b2 - a1);
    let d3 = (b2 - b1).cross(a1 - b1);
    let d4 = (b2 - b1).cross(a2 - b1);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Conservative disjointness test for two simple polygons: no boundary
/// crossings and neither contains a vertex of the other.
pub fn components_disjoint(a: &PolygonComponent, b: &PolygonComponent) -> bool {
    if a.contains(b.vertices[0]) || b.contains(a.vertices[0]) {
        return false;
    }
    for (a1, a2) in a.edges() {
        for (b1, b2) in b.edges() {
            if segments_intersect(a1, a2, b1, b2) {
                return false;
            }
        }
    }
    true
}

/// Monotone-chain convex hull, CCW, collinear points dropped.
pub fn convex_hull(points: &[Point]) -> Result<PolygonComponent> {
    if points.len() < 3 {
        return Err(Error::DegenerateHull);
    }
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()));
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() < 3 {
        return Err(Error::DegenerateHull);
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && (lower[lower.len() - 1] - lower[lower.len() - 2])
                .cross(p - lower[lower.len() - 1])
                <= 0.0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && (upper[upper.len() - 1] - upper[upper.len() - 2])
                .cross(p - upper[upper.len() - 1])
                <= 0.0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::DegenerateHull);
    }
    PolygonComponent::new(lower)
}

fn hull_diameter(hull: &[Point]) -> f64 {
    let m = hull.len();
    if m == 2 {
        return hull[0].dist(hull[1]);
    }
    // rotating calipers: advance the antipodal point k while the hull
    // edge at k still turns away from edge (i, j), recording every
    // candidate pair visited along the way
    let mut best: f64 = 0.0;
    let mut k = 1usize;
    for i in 0..m {
        let j = (i + 1) % m;
        let e = hull[j] - hull[i];
        let mut guard = 0;
        loop {
            best = best.max(hull[i].dist(hull[k])).max(hull[j].dist(hull[k]));
            let nk = (k + 1) % m;
            if e.cross(hull[nk] - hull[k]) > 0.0 && guard < m {
                k = nk;
                guard += 1;
            } else {
                break;
            }
        }
    }
    best
}

/// O(n^2) reference diameter; also serves as the oracle in tests.
pub fn brute_force_diameter(points: &[Point]) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.max(points[i].dist(points[j]));
        }
    }
    best
}

/// Regular n-gon inscribed in the disk with the radius inflated by
/// sqrt(2*pi / (n sin(2*pi/n))) so the polygon area equals the disk area
/// exactly.
pub fn polygonize_disk(disk: &Disk, n: usize) -> Result<PolygonComponent> {
    if n < 8 {
        return Err(Error::Resolution(format!(
            "polygonize_disk needs n >= 8, got {n}"
        )));
    }
    let step = 2.0 * PI / n as f64;
    let rho = disk.radius * (2.0 * PI / (n as f64 * step.sin())).sqrt();
    let vertices = (0..n)
        .map(|k| {
            let (s, c) = (step * k as f64).sin_cos();
            disk.center + Point::new(rho * c, rho * s)
        })
        .collect();
    PolygonComponent::new(vertices)
}

/// Area of the intersection of a disk with a simple CCW polygon, by
/// per-edge decomposition into triangle and circular-sector terms.
pub fn disk_polygon_intersection_area(disk: &Disk, poly: &PolygonComponent) -> f64 {
    let r = disk.radius;
    let n = poly.vertices.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = poly.vertices[i] - disk.center;
        let b = poly.vertices[(i + 1) % n] - disk.center;
        total += edge_circle_contrib(a, b, r);
    }
    total.max(0.0)
}

fn edge_circle_contrib(a: Point, b: Point, r: f64) -> f64 {
    let d = b - a;
    let qa = d.norm2();
    if qa == 0.0 {
        return 0.0;
    }
    let qb = 2.0 * a.dot(d);
    let qc = a.norm2() - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    let mut cuts = [1.0f64, 1.0f64];
    let mut ncuts = 0usize;
    if disc > TANGENCY_TOL {
        let sq = disc.sqrt();
        let t1 = (-qb - sq) / (2.0 * qa);
        let t2 = (-qb + sq) / (2.0 * qa);
        for t in [t1, t2] {
            if t > 0.0 && t < 1.0 {
                cuts[ncuts] = t;
                ncuts += 1;
            }
        }
    }
    let mut ts = [0.0f64; 4];
    ts[0] = 0.0;
    ts[1..1 + ncuts].copy_from_slice(&cuts[..ncuts]);
    ts[1 + ncuts] = 1.0;
    let mut area = 0.0;
    for w in 0..=ncuts {
        let (t0, t1) = (ts[w], ts[w + 1]);
        if t1 <= t0 {
            continue;
        }
        let p = a + d * t0;
        let q = a + d * t1;
        let m = a + d * ((t0 + t1) / 2.0);
        if m.norm2() <= r * r {
            area += p.cross(q) / 2.0;
        } else {
            let mut dth = q.angle() - p.angle();
            if dth > PI {
                dth -= 2.0 * PI;
            } else if dth <= -PI {
                dth += 2.0 * PI;
            }
            area += r * r / 2.0 * dth;
        }
    }
    area
}

/// |K ∩ B| summed over components.
pub fn disk_shape_intersection_area(disk: &Disk, shape: &Shape) -> f64 {
    shape
        .components
        .iter()
        .map(|c| disk_polygon_intersection_area(disk, c))
        .sum()
}

/// |K Δ B| = |K| + |B| - 2 |K ∩ B|.
pub fn symm_diff_area_disk(shape: &Shape, disk: &Disk) -> f64 {
    let inter = disk_shape_intersection_area(disk, shape);
    (shape.area() + disk.area() - 2.0 * inter).max(0.0)
}

/// L1 distance of two unit-area disks whose centers are a apart:
/// 4 arcsin(a/2) + 2a sqrt(1 - a^2/4) for a <= 2, and 2*pi beyond.
pub fn disk_disk_symm_diff(a: f64) -> Result<f64> {
    if a < 0.0 || !a.is_finite() {
        return Err(Error::Domain(format!("center distance must be >= 0, got {a}")));
    }
    if a >= 2.0 {
        return Ok(2.0 * PI);
    }
    Ok(4.0 * (a / 2.0).asin() + 2.0 * a * (1.0 - a * a / 4.0).sqrt())
}

/// One angular arc of a circle, classified against a shape.
#[derive(Debug, Clone, Copy)]
pub struct CircleArc {
    /// start angle (radians)
    pub t0: f64,
    /// end angle, t1 > t0
    pub t1: f64,
    /// whether the arc lies inside the shape
    pub inside: bool,
}

/// Partition of a circle into maximal arcs inside/outside a shape.
/// Arc endpoints are exact edge/circle intersections.
#[derive(Debug, Clone)]
pub struct CirclePartition {
    pub disk: Disk,
    pub arcs: Vec<CircleArc>,
}

impl CirclePartition {
    /// Total arclength of the arcs with the given classification.
    pub fn arc_length(&self, inside: bool) -> f64 {
        self.disk.radius
            * self
                .arcs
                .iter()
                .filter(|a| a.inside == inside)
                .map(|a| a.t1 - a.t0)
                .sum::<f64>()
    }

    /// Integral of cos(t) dt over the arcs with the given classification.
    pub fn int_cos(&self, inside: bool) -> f64 {
        self.arcs
            .iter()
            .filter(|a| a.inside == inside)
            .map(|a| a.t1.sin() - a.t0.sin())
            .sum()
    }

    /// Integral of sin(t) dt over the arcs with the given classification.
    pub fn int_sin(&self, inside: bool) -> f64 {
        self.arcs
            .iter()
            .filter(|a| a.inside == inside)
            .map(|a| a.t0.cos() - a.t1.cos())
            .sum()
    }
}

/// Computes the in/out partition of a circle against a shape. Interval
/// endpoints come from exact edge/circle intersections; each interval is
/// classified by testing its midpoint against the shape.
pub fn circle_shape_partition(disk: &Disk, shape: &Shape) -> CirclePartition {
    let r = disk.radius;
    let mut angles: Vec<f64> = Vec::new();
    for comp in &shape.components {
        for (p, q) in comp.edges() {
            let a = p - disk.center;
            let d = q - p;
            let qa = d.norm2();
            if qa == 0.0 {
                continue;
            }
            let qb = 2.0 * a.dot(d);
            let qc = a.norm2() - r * r;
            let disc = qb * qb - 4.0 * qa * qc;
            if disc > TANGENCY_TOL {
                let sq = disc.sqrt();
                for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
                    if (0.0..=1.0).contains(&t) {
                        angles.push((a + d * t).angle());
                    }
                }
            }
        }
    }
    let probe = |theta: f64| {
        let (s, c) = theta.sin_cos();
        shape.contains(disk.center + Point::new(r * c, r * s))
    };
    if angles.is_empty() {
        return CirclePartition {
            disk: *disk,
            arcs: vec![CircleArc {
                t0: -PI,
                t1: PI,
                inside: probe(0.0),
            }],
        };
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let m = angles.len();
    let mut arcs = Vec::with_capacity(m);
    for i in 0..m {
        let t0 = angles[i];
        let t1 = if i + 1 < m {
            angles[i + 1]
        } else {
            angles[0] + 2.0 * PI
        };
        if t1 - t0 < 1e-14 {
            continue;
        }
        arcs.push(CircleArc {
            t0,
            t1,
            inside: probe((t0 + t1) / 2.0),
        });
    }
    // merge adjacent arcs with the same classification (tangency artifacts)
    let mut merged: Vec<CircleArc> = Vec::with_capacity(arcs.len());
    for arc in arcs {
        match merged.last_mut() {
            Some(last) if last.inside == arc.inside && (arc.t0 - last.t1).abs() < 1e-12 => {
                last.t1 = arc.t1;
            }
            _ => merged.push(arc),
        }
    }
    CirclePartition {
        disk: *disk,
        arcs: merged,
    }
}
