//! The functionals delta, lambda0, lambda, J and their first shape
//! derivatives.
//!
//! delta is evaluated in the scale-free form P / (2 sqrt(pi |K|)) - 1, so
//! the optimizer never needs exact area-pi inputs mid-iteration; at
//! |K| = pi it reduces to the usual (P - 2 pi) / (2 pi).
//!
//! The derivative routines are *discretely exact*: they return the exact
//! first derivative of the discrete functionals under vertex motion along
//! the sampled normal field (edge displacements interpolated linearly),
//! so they agree with central finite differences up to O(t^2).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    circle_shape_partition, symm_diff_area_disk, Disk, Point, Shape,
};

/// Below this barycentric asymmetry the objective J = delta / lambda0^2 is
/// reported as undefined (the shape is numerically indistinguishable from
/// its barycentric disk and J blows up).
pub const LAMBDA0_DEGENERATE: f64 = 1e-3;

/// Tie-break for the in/out classification of boundary points against the
/// barycentric circle.
pub const PARTITION_TOL: f64 = 1e-12;

/// Cheap part of the evaluation: everything except the Fraenkel inner
/// minimization. This is what the optimizer loop consumes.
#[derive(Debug, Clone, Serialize)]
pub struct CoreReport {
    pub area: f64,
    pub perimeter: f64,
    pub barycenter: Point,
    pub diameter: f64,
    pub delta: f64,
    pub lambda0: f64,
    pub barycentric_disk: Disk,
}

impl CoreReport {
    /// J = delta / lambda0^2, undefined when lambda0 degenerates.
    pub fn objective(&self) -> Option<f64> {
        if self.lambda0 > LAMBDA0_DEGENERATE {
            Some(self.delta / (self.lambda0 * self.lambda0))
        } else {
            None
        }
    }
}

/// Full evaluation report. Serializes with these exact field names.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionalReport {
    pub area: f64,
    pub perimeter: f64,
    pub barycenter: Point,
    pub diameter: f64,
    pub delta: f64,
    pub lambda0: f64,
    pub fraenkel: f64,
    pub fraenkel_center: Point,
    pub objective: Option<f64>,
    pub barycentric_disk: Disk,
}

impl FunctionalReport {
    pub fn csv_header() -> &'static str {
        "area,perimeter,barycenter_x,barycenter_y,diameter,delta,lambda0,\
         fraenkel,fraenkel_center_x,fraenkel_center_y,objective,\
         barycentric_disk_x,barycentric_disk_y,barycentric_disk_r"
    }

    pub fn csv_row(&self) -> String {
        let obj = self
            .objective
            .map(|j| format!("{j}"))
            .unwrap_or_else(|| "".into());
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.area,
            self.perimeter,
            self.barycenter.x,
            self.barycenter.y,
            self.diameter,
            self.delta,
            self.lambda0,
            self.fraenkel,
            self.fraenkel_center.x,
            self.fraenkel_center.y,
            obj,
            self.barycentric_disk.center.x,
            self.barycentric_disk.center.y,
            self.barycentric_disk.radius,
        )
    }
}

/// delta, lambda0, measures and the barycentric disk; no Fraenkel search.
pub fn evaluate_core(shape: &Shape) -> Result<CoreReport> {
    shape.validate_basic()?;
    let area = shape.area();
    let perimeter = shape.perimeter();
    let barycenter = shape.barycenter()?;
    let radius = (area / PI).sqrt();
    let barycentric_disk = Disk::new(barycenter, radius);
    let delta = perimeter / (2.0 * (PI * area).sqrt()) - 1.0;
    let lambda0 = symm_diff_area_disk(shape, &barycentric_disk) / area;
    Ok(CoreReport {
        area,
        perimeter,
        barycenter,
        diameter: shape.diameter(),
        delta,
        lambda0,
        barycentric_disk,
    })
}

/// Full evaluation: J(K) = delta(K) / lambda0(K)^2 plus the Fraenkel
/// asymmetry by inner minimization.
pub fn evaluate(shape: &Shape) -> Result<FunctionalReport> {
    let core = evaluate_core(shape)?;
    let (fraenkel, fraenkel_center) = fraenkel_asymmetry(shape)?;
    Ok(FunctionalReport {
        objective: core.objective(),
        area: core.area,
        perimeter: core.perimeter,
        barycenter: core.barycenter,
        diameter: core.diameter,
        delta: core.delta,
        lambda0: core.lambda0,
        fraenkel,
        fraenkel_center,
        barycentric_disk: core.barycentric_disk,
    })
}

/// Fraenkel asymmetry: inf over centers y of |K Δ B_y| / |K|, B_y the
/// equal-area disk at y. Local simplex descent from the barycenter,
/// multi-started on a 5x5 grid over the bounding box for disconnected
/// shapes (the inner objective can be multi-modal there). Deterministic:
/// best value, ties broken by lexicographic center.
pub fn fraenkel_asymmetry(shape: &Shape) -> Result<(f64, Point)> {
    let area = shape.area();
    if area <= 0.0 {
        return Err(Error::DegenerateShape("zero area".into()));
    }
    let radius = (area / PI).sqrt();
    let g = |c: Point| symm_diff_area_disk(shape, &Disk::new(c, radius)) / area;
    let mut starts = vec![shape.barycenter()?];
    if shape.components.len() > 1 {
        let (lo, hi) = shape.bounding_box();
        for i in 0..5 {
            for j in 0..5 {
                starts.push(Point::new(
                    lo.x + (hi.x - lo.x) * i as f64 / 4.0,
                    lo.y + (hi.y - lo.y) * j as f64 / 4.0,
                ));
            }
        }
    }
    let scale = (shape.diameter() / 4.0).max(0.1 * radius);
    let mut best: Option<(f64, Point)> = None;
    for start in starts {
        let (v, c) = nelder_mead_2d(&g, start, scale);
        let better = match &best {
            None => true,
            Some((bv, bc)) => {
                v < *bv - 1e-15
                    || ((v - *bv).abs() <= 1e-15
                        && (c.x, c.y) < (bc.x, bc.y))
            }
        };
        if better {
            best = Some((v, c));
        }
    }
    Ok(best.expect("at least one start"))
}

/// Reflect/expand/contract simplex descent on a 2D objective.
fn nelder_mead_2d(f: &dyn Fn(Point) -> f64, start: Point, scale: f64) -> (f64, Point) {
    let mut simplex = [
        start,
        start + Point::new(scale, 0.0),
        start + Point::new(0.0, scale),
    ];
    let mut values = simplex.map(f);
    for _ in 0..200 {
        // order ascending
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        simplex = [simplex[idx[0]], simplex[idx[1]], simplex[idx[2]]];
        values = [values[idx[0]], values[idx[1]], values[idx[2]]];
        let spread = simplex[0].dist(simplex[1]).max(simplex[0].dist(simplex[2]));
        if spread < 1e-10 && (values[2] - values[0]).abs() < 1e-14 {
            break;
        }
        let centroid = (simplex[0] + simplex[1]) * 0.5;
        let reflected = centroid + (centroid - simplex[2]);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = centroid + (centroid - simplex[2]) * 2.0;
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let contracted = centroid + (simplex[2] - centroid) * 0.5;
            let fc = f(contracted);
            if fc < values[2] {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                // shrink toward the best vertex
                for k in 1..3 {
                    simplex[k] = simplex[0] + (simplex[k] - simplex[0]) * 0.5;
                    values[k] = f(simplex[k]);
                }
            }
        }
    }
    let mut k = 0;
    for i in 1..3 {
        if values[i] < values[k] {
            k = i;
        }
    }
    (values[k], simplex[k])
}

/// Normal-speed samples V.n along each component boundary, one value per
/// vertex of the matching component.
#[derive(Debug, Clone)]
pub struct PerturbationField {
    pub normal_speed: Vec<Vec<f64>>,
}

impl PerturbationField {
    pub fn new(shape: &Shape, normal_speed: Vec<Vec<f64>>) -> Result<Self> {
        if normal_speed.len() != shape.components.len() {
            return Err(Error::Domain(format!(
                "field has {} components, shape has {}",
                normal_speed.len(),
                shape.components.len()
            )));
        }
        for (i, (v, c)) in normal_speed.iter().zip(&shape.components).enumerate() {
            if v.len() != c.vertices.len() {
                return Err(Error::Domain(format!(
                    "component {i}: field has {} samples, boundary has {} vertices",
                    v.len(),
                    c.vertices.len()
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::Domain("non-finite field sample".into()));
            }
        }
        Ok(PerturbationField { normal_speed })
    }

    /// Builds a field by sampling a function of (component index, vertex).
    pub fn from_fn(shape: &Shape, f: impl Fn(usize, Point) -> f64) -> Self {
        PerturbationField {
            normal_speed: shape
                .components
                .iter()
                .enumerate()
                .map(|(ci, c)| c.vertices.iter().map(|&p| f(ci, p)).collect())
                .collect(),
        }
    }

    /// Vertex displacement vectors: V.n times the outward vertex normal.
    pub fn displacements(&self, shape: &Shape) -> Vec<Vec<Point>> {
        shape
            .components
            .iter()
            .zip(&self.normal_speed)
            .map(|(c, speeds)| {
                c.vertex_normals()
                    .iter()
                    .zip(speeds)
                    .map(|(&n, &v)| n * v)
                    .collect()
            })
            .collect()
    }
}

/// The shape (I + tV)(K): each vertex moved along its outward normal by
/// t times the sampled normal speed. This is the deformation the
/// finite-difference oracles apply, and the deformation the analytic
/// derivatives differentiate exactly.
pub fn perturbed(shape: &Shape, field: &PerturbationField, t: f64) -> Shape {
    let disp = field.displacements(shape);
    Shape {
        components: shape
            .components
            .iter()
            .zip(&disp)
            .map(|(c, d)| crate::geometry::PolygonComponent {
                vertices: c
                    .vertices
                    .iter()
                    .zip(d)
                    .map(|(&p, &dp)| p + dp * t)
                    .collect(),
            })
            .collect(),
    }
}

/// First derivatives of area, first moments and perimeter under the field.
struct FieldIntegrals {
    d_area: f64,
    d_mx: f64,
    d_my: f64,
    d_perimeter: f64,
}

fn field_integrals(shape: &Shape, field: &PerturbationField) -> FieldIntegrals {
    let disp = field.displacements(shape);
    let mut fi = FieldIntegrals {
        d_area: 0.0,
        d_mx: 0.0,
        d_my: 0.0,
        d_perimeter: 0.0,
    };
    for (c, d) in shape.components.iter().zip(&disp) {
        let n = c.vertices.len();
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, q) = (c.vertices[i], c.vertices[j]);
            let (dp, dq) = (d[i], d[j]);
            let nn = (q - p).rot_cw(); // outward normal times edge length
            // area flux: integrand linear in the edge parameter
            fi.d_area += (dp + dq).dot(nn) / 2.0;
            // moment fluxes: integrand quadratic, Simpson is exact
            let f0x = p.x * dp.dot(nn);
            let f1x = q.x * dq.dot(nn);
            let fmx = (p.x + q.x) / 2.0 * (dp + dq).dot(nn) / 2.0;
            fi.d_mx += (f0x + 4.0 * fmx + f1x) / 6.0;
            let f0y = p.y * dp.dot(nn);
            let f1y = q.y * dq.dot(nn);
            let fmy = (p.y + q.y) / 2.0 * (dp + dq).dot(nn) / 2.0;
            fi.d_my += (f0y + 4.0 * fmy + f1y) / 6.0;
            // exact derivative of the edge length
            let len = p.dist(q);
            if len > 0.0 {
                fi.d_perimeter += (dq - dp).dot(q - p) / len;
            }
        }
    }
    fi
}

/// Integral of V.n over the boundary parts outside the disk minus the
/// parts inside, with edges split exactly at circle crossings and the
/// field interpolated linearly along each edge.
fn boundary_in_out_difference(shape: &Shape, field: &PerturbationField, disk: &Disk) -> f64 {
    let disp = field.displacements(shape);
    let r2 = disk.radius * disk.radius;
    let mut acc = 0.0;
    for (c, d) in shape.components.iter().zip(&disp) {
        let n = c.vertices.len();
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, q) = (c.vertices[i], c.vertices[j]);
            let (dp, dq) = (d[i], d[j]);
            let nn = (q - p).rot_cw();
            // flux density g(t) = ((1-t) dp + t dq) . nn, linear in t
            let g0 = dp.dot(nn);
            let g1 = dq.dot(nn);
            // circle crossings along the edge
            let a = p - disk.center;
            let dir = q - p;
            let qa = dir.norm2();
            let mut cuts = vec![0.0f64];
            if qa > 0.0 {
                let qb = 2.0 * a.dot(dir);
                let qc = a.norm2() - r2;
                let discr = qb * qb - 4.0 * qa * qc;
                if discr > crate::geometry::TANGENCY_TOL {
                    let sq = discr.sqrt();
                    for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
                        if t > 0.0 && t < 1.0 {
                            cuts.push(t);
                        }
                    }
                }
            }
            cuts.push(1.0);
            cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for w in cuts.windows(2) {
                let (t0, t1) = (w[0], w[1]);
                if t1 <= t0 {
                    continue;
                }
                let tm = (t0 + t1) / 2.0;
                let mid = p + dir * tm;
                let inside =
                    mid.dist(disk.center) < disk.radius - PARTITION_TOL;
                let sign = if inside { -1.0 } else { 1.0 };
                // exact integral of the linear density over [t0, t1]
                let gm0 = g0 + (g1 - g0) * t0;
                let gm1 = g0 + (g1 - g0) * t1;
                acc += sign * (gm0 + gm1) / 2.0 * (t1 - t0);
            }
        }
    }
    acc
}

/// d delta(K, V): derivative of the scale-free isoperimetric deficit. At
/// |K| = pi this is the boundary integral of (C - delta - 1) V.n / (2 pi)
/// with C the curvature; here the curvature term enters as the exact
/// discrete perimeter derivative.
pub fn delta_derivative(shape: &Shape, field: &PerturbationField) -> Result<f64> {
    shape.validate_basic()?;
    let fi = field_integrals(shape, field);
    let a = shape.area();
    let p = shape.perimeter();
    Ok(fi.d_perimeter / (2.0 * (PI * a).sqrt()) - p * fi.d_area / (4.0 * PI.sqrt() * a.powf(1.5)))
}

/// d lambda0(K, V): the barycentric-asymmetry derivative. The barycentric
/// ball moves with the first-order field W.n = a cos t + b sin t + alpha,
/// where (a, b) is the barycenter velocity and alpha the equal-area radius
/// velocity; the circle and boundary integrals split at the exact
/// in/out partition.
pub fn lambda0_derivative(shape: &Shape, field: &PerturbationField) -> Result<f64> {
    shape.validate_basic()?;
    let area = shape.area();
    let g = shape.barycenter()?;
    let radius = (area / PI).sqrt();
    let disk = Disk::new(g, radius);
    let lambda0 = symm_diff_area_disk(shape, &disk) / area;
    let fi = field_integrals(shape, field);
    // barycenter and radius velocities
    let dgx = (fi.d_mx - g.x * fi.d_area) / area;
    let dgy = (fi.d_my - g.y * fi.d_area) / area;
    let dr = fi.d_area / (2.0 * PI * radius);
    // circle-side term: integral of W.n over B^OUT minus B^IN arcs
    let part = circle_shape_partition(&disk, shape);
    let mut b_term = 0.0;
    for arc in &part.arcs {
        let sign = if arc.inside { -1.0 } else { 1.0 };
        let int_cos = arc.t1.sin() - arc.t0.sin();
        let int_sin = arc.t0.cos() - arc.t1.cos();
        let len = arc.t1 - arc.t0;
        b_term += sign * radius * (dgx * int_cos + dgy * int_sin + dr * len);
    }
    // shape-side term
    let k_term = boundary_in_out_difference(shape, field, &disk);
    Ok((b_term + k_term - lambda0 * fi.d_area) / area)
}

/// d J(K, V) = d delta / lambda0^2 - (2 delta / lambda0^3) d lambda0.
pub fn objective_derivative(shape: &Shape, field: &PerturbationField) -> Result<f64> {
    let core = evaluate_core(shape)?;
    if core.lambda0 <= LAMBDA0_DEGENERATE {
        return Err(Error::UndefinedObjective);
    }
    let dd = delta_derivative(shape, field)?;
    let dl = lambda0_derivative(shape, field)?;
    let l = core.lambda0;
    Ok(dd / (l * l) - 2.0 * core.delta / (l * l * l) * dl)
}
