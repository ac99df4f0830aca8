//! Minimization of J over star-shaped multi-component shapes with unit
//! area (pi) and bounded diameter, via Fourier boundary parametrization
//! and projected gradient descent with finite-difference gradients.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::TwoDiskCompetitor;
use crate::error::{Error, Result};
use crate::functionals::{evaluate_core, CoreReport, LAMBDA0_DEGENERATE};
use crate::geometry::{Point, PolygonComponent, Shape};

/// Star-shaped boundary r(phi) = r0 (1 + sum_k a_k cos k phi + b_k sin k phi)
/// around `center`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentParam {
    pub center: Point,
    pub r0: f64,
    pub cos_coeffs: Vec<f64>,
    pub sin_coeffs: Vec<f64>,
}

impl ComponentParam {
    pub fn disk(center: Point, radius: f64, modes: usize) -> ComponentParam {
        ComponentParam {
            center,
            r0: radius,
            cos_coeffs: vec![0.0; modes],
            sin_coeffs: vec![0.0; modes],
        }
    }

    pub fn radius_at(&self, phi: f64) -> f64 {
        let mut r = 1.0;
        for (k, &a) in self.cos_coeffs.iter().enumerate() {
            r += a * ((k + 1) as f64 * phi).cos();
        }
        for (k, &b) in self.sin_coeffs.iter().enumerate() {
            r += b * ((k + 1) as f64 * phi).sin();
        }
        self.r0 * r
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShapeParam {
    pub components: Vec<ComponentParam>,
}

impl ShapeParam {
    pub fn from_competitor(comp: &TwoDiskCompetitor, modes: usize) -> ShapeParam {
        ShapeParam {
            components: vec![
                ComponentParam::disk(comp.centers.0, comp.r1, modes),
                ComponentParam::disk(comp.centers.1, comp.r2, modes),
            ],
        }
    }

    fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::new();
        for c in &self.components {
            v.push(c.center.x);
            v.push(c.center.y);
            v.push(c.r0);
            v.extend_from_slice(&c.cos_coeffs);
            v.extend_from_slice(&c.sin_coeffs);
        }
        v
    }

    fn from_vec(&self, v: &[f64]) -> ShapeParam {
        let mut out = self.clone();
        let mut i = 0;
        for c in &mut out.components {
            c.center = Point::new(v[i], v[i + 1]);
            c.r0 = v[i + 2];
            i += 3;
            let m = c.cos_coeffs.len();
            c.cos_coeffs.copy_from_slice(&v[i..i + m]);
            i += m;
            let m = c.sin_coeffs.len();
            c.sin_coeffs.copy_from_slice(&v[i..i + m]);
            i += m;
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimConfig {
    pub d: f64,
    pub modes: usize,
    pub max_iters: usize,
    pub fd_step: f64,
    pub tol_grad: f64,
    pub penalty_diameter: f64,
    pub resolution: usize,
    pub seed: u64,
}

impl Default for OptimConfig {
    fn default() -> Self {
        OptimConfig {
            d: 10.0,
            modes: 8,
            max_iters: 300,
            fd_step: 1e-6,
            tol_grad: 1e-6,
            penalty_diameter: 0.0,
            resolution: 512,
            seed: 0,
        }
    }
}

impl OptimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.d < 10.0 {
            return Err(Error::Domain(format!("need D >= 10, got {}", self.d)));
        }
        if self.modes < 2 {
            return Err(Error::Domain(format!("need modes >= 2, got {}", self.modes)));
        }
        if self.resolution < 128 {
            return Err(Error::Domain(format!(
                "need resolution >= 128, got {}",
                self.resolution
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TraceRow {
    pub iter: usize,
    pub j: f64,
    pub delta: f64,
    pub lambda0: f64,
    pub diameter: f64,
    pub grad_norm: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct OptimTrace {
    pub rows: Vec<TraceRow>,
    pub stalled: bool,
}

impl OptimTrace {
    pub fn csv(&self) -> String {
        let mut out = String::from("iter,J,delta,lambda0,diameter,grad_norm,step\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.iter, r.j, r.delta, r.lambda0, r.diameter, r.grad_norm, r.step
            ));
        }
        out
    }
}

/// Polygonizes each component at `resolution` equal-angle samples.
pub fn synthesize(param: &ShapeParam, resolution: usize) -> Result<Shape> {
    let mut comps = Vec::with_capacity(param.components.len());
    for c in &param.components {
        let mut vertices = Vec::with_capacity(resolution);
        for j in 0..resolution {
            let phi = 2.0 * PI * j as f64 / resolution as f64;
            let r = c.radius_at(phi);
            if !(r > 0.0) {
                return Err(Error::InvalidParametrization(format!(
                    "radius {r} at angle {phi}: boundary not star-shaped"
                )));
            }
            vertices.push(c.center + Point::new(phi.cos(), phi.sin()) * r);
        }
        comps.push(PolygonComponent::new(vertices)?);
    }
    Shape::new(comps)
}

/// Enforces area pi by uniform scaling (centers and radii together) and
/// the diameter bound by pulling the component centers toward their
/// common midpoint; re-scales once more and asserts both constraints.
pub fn project_constraints(param: &ShapeParam, config: &OptimConfig) -> Result<ShapeParam> {
    let mut p = param.clone();
    for _pass in 0..2 {
        let shape = synthesize(&p, config.resolution)?;
        let sigma = (PI / shape.area()).sqrt();
        for c in &mut p.components {
            c.center = c.center * sigma;
            c.r0 *= sigma;
        }
        let shape = synthesize(&p, config.resolution)?;
        let diam = shape.diameter();
        if diam <= config.d + 1e-9 {
            continue;
        }
        if p.components.len() < 2 {
            return Err(Error::Infeasible(format!(
                "single component of diameter {diam} exceeds D = {}",
                config.d
            )));
        }
        // pull-in along the line joining the two extreme centers;
        // translation keeps the area unchanged
        let centers: Vec<Point> = p.components.iter().map(|c| c.center).collect();
        let (mut i0, mut i1, mut best) = (0, 1, 0.0);
        for i in 0..centers.len() {
            for j in i + 1..centers.len() {
                let d = centers[i].dist(centers[j]);
                if d > best {
                    best = d;
                    i0 = i;
                    i1 = j;
                }
            }
        }
        let dir = (centers[i1] - centers[i0]).normalized();
        let pulled = |t: f64| {
            let mut q = p.clone();
            q.components[i0].center = centers[i0] + dir * t;
            q.components[i1].center = centers[i1] - dir * t;
            q
        };
        let diam_of = |t: f64| -> Result<f64> {
            Ok(synthesize(&pulled(t), config.resolution)?.diameter())
        };
        let mut lo = 0.0;
        let mut hi = best / 2.0;
        if diam_of(hi)? > config.d {
            return Err(Error::Infeasible(format!(
                "cannot reach diameter {} without collapsing the centers",
                config.d
            )));
        }
        while hi - lo > 1e-10 {
            let mid = (lo + hi) / 2.0;
            if diam_of(mid)? > config.d {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        p = pulled(hi);
    }
    let shape = synthesize(&p, config.resolution)?;
    let (area, diam) = (shape.area(), shape.diameter());
    if (area - PI).abs() > 1e-9 || diam > config.d + 1e-9 {
        return Err(Error::Infeasible(format!(
            "projection failed: area {area}, diameter {diam}"
        )));
    }
    shape
        .validate()
        .map_err(|e| Error::Infeasible(format!("projection produced overlap: {e}")))?;
    Ok(p)
}

fn penalized(report: &CoreReport, config: &OptimConfig) -> Result<f64> {
    if report.lambda0 < LAMBDA0_DEGENERATE {
        return Err(Error::UndefinedObjective);
    }
    let excess = (report.diameter - config.d).max(0.0);
    Ok(report.delta / (report.lambda0 * report.lambda0)
        + config.penalty_diameter * excess * excess)
}

/// J of the projected, synthesized shape together with its report.
pub fn evaluate_param(param: &ShapeParam, config: &OptimConfig) -> Result<(f64, CoreReport)> {
    let p = project_constraints(param, config)?;
    let shape = synthesize(&p, config.resolution)?;
    let report = evaluate_core(&shape)?;
    Ok((penalized(&report, config)?, report))
}

/// Central finite differences of J∘project∘synthesize in coefficient
/// space, one coordinate at a time (in parallel, fixed order).
pub fn gradient(param: &ShapeParam, config: &OptimConfig) -> Result<Vec<f64>> {
    let v = param.to_vec();
    let h = config.fd_step;
    let results: Vec<Result<f64>> = (0..v.len())
        .into_par_iter()
        .map(|i| {
            let mut vp = v.clone();
            vp[i] += h;
            let (jp, _) = evaluate_param(&param.from_vec(&vp), config)?;
            vp[i] = v[i] - h;
            let (jm, _) = evaluate_param(&param.from_vec(&vp), config)?;
            Ok((jp - jm) / (2.0 * h))
        })
        .collect();
    results
        .into_iter()
        .collect::<Result<Vec<f64>>>()
        .map_err(|e| Error::StencilFailure(format!("objective undefined within stencil: {e}")))
}

/// Projected gradient descent with Armijo backtracking (factor 0.5,
/// c = 1e-4). Stops at the gradient tolerance, the iteration cap, or a
/// stalled line search (50 halvings); always returns the best iterate.
pub fn minimize(config: &OptimConfig, init: &ShapeParam) -> Result<(ShapeParam, OptimTrace)> {
    config.validate()?;
    let mut param = project_constraints(init, config)?;
    let (mut j, mut report) = evaluate_param(&param, config)?;
    let mut trace = OptimTrace::default();
    let mut alpha0 = 1.0;
    let push_row = |trace: &mut OptimTrace,
                        iter: usize,
                        j: f64,
                        report: &CoreReport,
                        grad_norm: f64,
                        step: f64| {
        trace.rows.push(TraceRow {
            iter,
            j,
            delta: report.delta,
            lambda0: report.lambda0,
            diameter: report.diameter,
            grad_norm,
            step,
        });
    };
    for iter in 0..config.max_iters {
        let g = gradient(&param, config)?;
        let gnorm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if iter == 0 {
            push_row(&mut trace, 0, j, &report, gnorm, 0.0);
        }
        if gnorm < config.tol_grad {
            break;
        }
        let v = param.to_vec();
        let mut alpha = alpha0;
        let mut accepted = false;
        for _ in 0..50 {
            let trial_vec: Vec<f64> = v.iter().zip(&g).map(|(x, gi)| x - alpha * gi).collect();
            if let Ok(trial) = project_constraints(&param.from_vec(&trial_vec), config) {
                if let Ok((tj, treport)) = evaluate_param(&trial, config) {
                    if treport.lambda0 >= LAMBDA0_DEGENERATE
                        && tj <= j - 1e-4 * alpha * gnorm * gnorm
                    {
                        param = trial;
                        j = tj;
                        report = treport;
                        accepted = true;
                        break;
                    }
                }
            }
            alpha *= 0.5;
        }
        if !accepted {
            trace.stalled = true;
            break;
        }
        alpha0 = (alpha * 2.0).min(1.0);
        push_row(&mut trace, iter + 1, j, &report, gnorm, alpha);
    }
    Ok((param, trace))
}
