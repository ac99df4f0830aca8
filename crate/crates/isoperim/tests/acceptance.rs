//! End-to-end acceptance checks, one test per criterion. Each test
//! prints a single PASS/FAIL line for its criterion before asserting.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isoperim::constructions::{
    build_fuglede_sequence_with_resolution, build_two_disk_competitor,
    p_poly, paper_constants, q_poly, solve_r1_star,
};
use isoperim::functionals::{
    delta_derivative, evaluate, evaluate_core, lambda0_derivative, perturbed, PerturbationField,
};
use isoperim::geometry::{
    disk_disk_symm_diff, polygonize_disk, symm_diff_area_disk, Disk, Point, PolygonComponent,
    Shape,
};
use isoperim::optimality::{closure_gap, optimality_residual, shoot, ShootingParams};
use isoperim::optimizer::{minimize, synthesize, OptimConfig, ShapeParam};

struct Criterion {
    id: usize,
    name: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: usize, name: &'static str) -> Criterion {
        Criterion {
            id,
            name,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl Fn() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    fn finish(self) {
        let verdict = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!("criterion {:>2} ({}): {}", self.id, self.name, verdict);
        assert!(
            self.failures.is_empty(),
            "criterion {} failed:\n{}",
            self.id,
            self.failures.join("\n")
        );
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-12)
}

/// Random star-shaped boundary with area pi.
fn fourier_shape(seed: u64, n: usize) -> Shape {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modes = 4;
    let a: Vec<f64> = (1..=modes)
        .map(|k| rng.gen_range(-0.12..0.12) / k as f64)
        .collect();
    let b: Vec<f64> = (1..=modes)
        .map(|k| rng.gen_range(-0.12..0.12) / k as f64)
        .collect();
    let verts: Vec<Point> = (0..n)
        .map(|i| {
            let th = 2.0 * PI * i as f64 / n as f64;
            let mut r = 1.0;
            for k in 1..=modes {
                r += a[k - 1] * (k as f64 * th).cos() + b[k - 1] * (k as f64 * th).sin();
            }
            Point::new(r * th.cos(), r * th.sin())
        })
        .collect();
    let shape = Shape::new(vec![PolygonComponent::new(verts).unwrap()]).unwrap();
    let s = (PI / shape.area()).sqrt();
    shape.transformed(|p| p * s)
}

/// Smooth low-frequency normal-speed field.
fn smooth_field(shape: &Shape, seed: u64) -> PerturbationField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(777));
    let coeffs: Vec<(f64, f64, f64)> = (1..=3)
        .map(|_| {
            (
                rng.gen_range(-1.0..1.0),
                rng.gen_range(1.0..4.0_f64).round(),
                rng.gen_range(0.0..2.0 * PI),
            )
        })
        .collect();
    PerturbationField::from_fn(shape, |_, p| {
        let th = p.angle();
        coeffs
            .iter()
            .map(|&(amp, k, phase)| amp * (k * th + phase).cos())
            .sum()
    })
}

#[test]
fn criterion_01_reference_constants() {
    let mut c = Criterion::new(1, "reference constants");
    let k = paper_constants();
    c.check(
        (k.cicalese_leonardi - 0.457474).abs() <= 1e-6,
        || format!("ball-limit constant {}", k.cicalese_leonardi),
    );
    c.check(k.tau_star > 0.0885, || format!("tau* {}", k.tau_star));
    c.check(
        (k.tau_star - 0.08851).abs() <= 1e-4,
        || format!("tau* {}", k.tau_star),
    );
    c.check(
        (k.equal_disk_j - 0.103553).abs() <= 1e-6,
        || format!("equal-disk J {}", k.equal_disk_j),
    );
    c.check(
        (k.r1_hat - 0.881075).abs() <= 1e-5,
        || format!("R1-hat {}", k.r1_hat),
    );
    c.finish();
}

#[test]
fn criterion_02_polynomial_brackets() {
    let mut c = Criterion::new(2, "polynomial sign brackets");
    for d in [5.0, 7.0, 10.0, 10.1, 20.0, 50.0] {
        c.check(p_poly(d, 1.0 - 1.0 / d - 2.0 / (d * d)) > 0.0, || {
            format!("p({d}, lower bracket) not positive")
        });
        c.check(p_poly(d, 1.0 - 1.0 / d - 1.0 / (d * d)) < 0.0, || {
            format!("p({d}, upper bracket) not negative")
        });
        c.check(p_poly(d, 1.0 - 1.0 / d) > 0.0, || {
            format!("p({d}, 1-1/D) not positive")
        });
        c.check(q_poly(d, 0.0) == d - 1.0, || format!("q({d}, 0)"));
        c.check(q_poly(d, 1.0) == -2.0, || format!("q({d}, 1)"));
    }
    let r = solve_r1_star(10.1).unwrap();
    c.check(r >= 0.8814, || format!("R1*(10.1) = {r}"));
    c.finish();
}

#[test]
fn criterion_03_two_disk_competitor() {
    let mut c = Criterion::new(3, "two-disk competitor vs kernel");
    let (analytic, shape) = build_two_disk_competitor(10.0).unwrap();
    let report = evaluate_core(&shape).unwrap();
    let j = report.objective().unwrap();
    c.check(
        (report.delta - analytic.delta).abs() <= 1e-3,
        || format!("delta kernel {} vs {}", report.delta, analytic.delta),
    );
    c.check(
        (report.lambda0 - 2.0).abs() <= 1e-3,
        || format!("lambda0 kernel {}", report.lambda0),
    );
    c.check(
        (j - analytic.objective).abs() <= 1e-3,
        || format!("J kernel {j} vs {}", analytic.objective),
    );
    c.check(analytic.objective < 0.0885, || {
        format!("analytic J {}", analytic.objective)
    });
    c.finish();
}

#[test]
fn criterion_04_two_ball_distance() {
    let mut c = Criterion::new(4, "two-ball symmetric difference");
    let poly_disk =
        Shape::new(vec![polygonize_disk(&Disk::unit(), 2048).unwrap()]).unwrap();
    for a in [0.2, 0.5, 1.0, 1.5] {
        let exact = disk_disk_symm_diff(a).unwrap();
        let kernel = symm_diff_area_disk(&poly_disk, &Disk::new(Point::new(a, 0.0), 1.0));
        c.check(rel_err(kernel, exact) <= 1e-3, || {
            format!("f({a}): kernel {kernel} vs exact {exact}")
        });
    }
    let mut prev = disk_disk_symm_diff(0.0).unwrap();
    for i in 1..=200 {
        let a = 2.0 * i as f64 / 200.0;
        let f = disk_disk_symm_diff(a).unwrap();
        c.check(f > prev, || format!("f not increasing at a = {a}"));
        prev = f;
    }
    for i in 0..=100 {
        let a = i as f64 / 100.0;
        let f = disk_disk_symm_diff(a).unwrap();
        c.check(f <= 4.0 * a + 1e-12, || format!("f({a}) = {f} > 4a"));
    }
    c.finish();
}

#[test]
fn criterion_05_vanishing_objective_family() {
    let mut c = Criterion::new(5, "vanishing-objective two-disk family");
    let mut prev_j = f64::INFINITY;
    for n in [4usize, 8, 16, 32, 64] {
        let (analytic, shape) = build_fuglede_sequence_with_resolution(n, 2048).unwrap();
        c.check(
            (shape.area() - PI).abs() <= 1e-6,
            || format!("n = {n}: area {}", shape.area()),
        );
        let g = shape.barycenter().unwrap();
        c.check(g.norm() <= 1e-9, || format!("n = {n}: barycenter {g:?}"));
        let report = evaluate_core(&shape).unwrap();
        c.check(
            (report.delta - analytic.delta).abs() <= 1e-3,
            || format!("n = {n}: delta {} vs {}", report.delta, analytic.delta),
        );
        c.check(
            (report.lambda0 - 2.0).abs() <= 1e-3,
            || format!("n = {n}: lambda0 {}", report.lambda0),
        );
        let j = report.objective().unwrap();
        c.check(j < prev_j, || format!("n = {n}: J {j} not below {prev_j}"));
        prev_j = j;
    }
    c.finish();
}

#[test]
fn criterion_06_shape_derivatives() {
    let mut c = Criterion::new(6, "shape derivatives vs finite differences");
    for seed in 0..5u64 {
        let shape = fourier_shape(seed, 512);
        let field = smooth_field(&shape, seed);
        for (label, analytic, value_of) in [
            (
                "delta",
                delta_derivative(&shape, &field).unwrap(),
                (|s: &Shape| evaluate_core(s).unwrap().delta) as fn(&Shape) -> f64,
            ),
            (
                "lambda0",
                lambda0_derivative(&shape, &field).unwrap(),
                (|s: &Shape| evaluate_core(s).unwrap().lambda0) as fn(&Shape) -> f64,
            ),
        ] {
            let fd = |t: f64| {
                (value_of(&perturbed(&shape, &field, t)) - value_of(&perturbed(&shape, &field, -t)))
                    / (2.0 * t)
            };
            let (f4, f5) = (fd(1e-4), fd(1e-5));
            let richardson = (100.0 * f5 - f4) / 99.0;
            c.check(
                (f4 - f5).abs() <= 1e-3 * f4.abs().max(1e-3),
                || format!("seed {seed} {label}: FD not converged {f4} vs {f5}"),
            );
            c.check(
                (analytic - richardson).abs() <= 1e-3 * richardson.abs().max(1e-3),
                || format!("seed {seed} {label}: analytic {analytic} vs FD {richardson}"),
            );
        }
    }
    // rigid and scaling invariances of the scale-free deficit and the
    // barycentric asymmetry: derivative zero on the unit disk
    let disk = Shape::new(vec![polygonize_disk(&Disk::unit(), 1024).unwrap()]).unwrap();
    let dilation = PerturbationField::from_fn(&disk, |_, _| 1.0);
    let normals: Vec<Point> = disk.components[0].vertex_normals();
    let verts = disk.components[0].vertices.clone();
    let translation = PerturbationField::from_fn(&disk, |_, p| {
        let i = verts.iter().position(|&v| v.dist(p) < 1e-15).unwrap();
        normals[i].x
    });
    for (label, field) in [("dilation", &dilation), ("translation", &translation)] {
        let dd = delta_derivative(&disk, field).unwrap();
        let dl = lambda0_derivative(&disk, field).unwrap();
        c.check(dd.abs() <= 1e-8, || format!("{label}: d delta = {dd}"));
        c.check(dl.abs() <= 1e-8, || format!("{label}: d lambda0 = {dl}"));
    }
    c.finish();
}

#[test]
fn criterion_07_pendulum() {
    let mut c = Criterion::new(7, "pendulum shooting");
    let circle = ShootingParams {
        a_out: 1.0,
        a_in: 1.0,
        mu1: 0.0,
        start: Point::new(1.5, 0.0),
        theta0: PI / 2.0,
        arclength_budget: 2.0 * PI,
        step: 1e-3,
        bound: 50.0,
    };
    let gap = closure_gap(&circle).unwrap();
    c.check(gap <= 1e-8, || format!("circle closure gap {gap}"));
    for mu1 in [0.02, 0.05] {
        let params = ShootingParams {
            a_out: 0.8,
            a_in: 1.2,
            mu1,
            start: Point::new(0.3, 0.0),
            theta0: PI / 2.0,
            arclength_budget: 6.0,
            step: 1e-3,
            bound: 50.0,
        };
        let profile = shoot(&params).unwrap();
        let mut arc_const: Option<f64> = None;
        for w in profile.samples.windows(2) {
            let inv = w[1].kappa_measured - mu1 * w[1].pos.x;
            if w[0].inside == w[1].inside {
                if let Some(a) = arc_const {
                    c.check((inv - a).abs() <= 1e-8, || {
                        format!("mu1 = {mu1}: first integral drift {}", inv - a)
                    });
                } else {
                    arc_const = Some(inv);
                }
            } else {
                arc_const = Some(inv);
            }
        }
    }
    let jumpy = ShootingParams {
        a_out: 0.5,
        a_in: 1.5,
        mu1: 0.0,
        start: Point::new(0.2, 0.0),
        theta0: PI / 2.0,
        arclength_budget: 5.0,
        step: 1e-3,
        bound: 50.0,
    };
    let profile = shoot(&jumpy).unwrap();
    let mut saw_jump = false;
    for w in profile.samples.windows(2) {
        if w[0].inside != w[1].inside {
            saw_jump = true;
            let jump = w[1].kappa_measured - w[0].kappa_measured;
            let expect = if w[1].inside {
                jumpy.a_in - jumpy.a_out
            } else {
                jumpy.a_out - jumpy.a_in
            };
            c.check((jump - expect).abs() <= 1e-9, || {
                format!("curvature jump {jump} vs {expect}")
            });
        }
    }
    c.check(saw_jump, || "no circle crossing observed".to_string());
    c.finish();
}

fn optimize_at(d: f64, max_iters: usize) -> (f64, f64, ShapeParam, ShapeParam, OptimConfig) {
    let config = OptimConfig {
        d,
        modes: 8,
        max_iters,
        resolution: 512,
        ..Default::default()
    };
    let (comp, _) = build_two_disk_competitor(d).unwrap();
    let seed = ShapeParam::from_competitor(&comp, config.modes);
    let (best, trace) = minimize(&config, &seed).unwrap();
    assert!(trace.rows.len() >= 2, "optimizer produced no accepted step");
    for w in trace.rows.windows(2) {
        assert!(w[1].j <= w[0].j, "trace not monotone");
    }
    for row in &trace.rows {
        assert!(row.diameter <= d + 1e-9, "iterate diameter {}", row.diameter);
        assert!(row.lambda0 <= 2.0 + 1e-9);
    }
    let first = trace.rows.first().unwrap().j;
    let last = trace.rows.last().unwrap().j;
    (first, last, seed, best, config)
}

#[test]
fn criterion_08_optimizer_properties() {
    let mut c = Criterion::new(8, "optimizer descent properties");
    let (first, last, seed, best, config) = optimize_at(10.0, 300);
    c.check(last <= first - 1e-4, || {
        format!("insufficient descent: {first} -> {last}")
    });
    let final_shape = synthesize(&best, config.resolution).unwrap();
    c.check(
        (final_shape.area() - PI).abs() <= 1e-9,
        || format!("final area {}", final_shape.area()),
    );
    c.check(final_shape.diameter() <= 10.0 + 1e-9, || {
        format!("final diameter {}", final_shape.diameter())
    });
    c.check(final_shape.validate().is_ok(), || {
        "final components overlap".to_string()
    });
    let report = evaluate_core(&final_shape).unwrap();
    c.check(report.delta >= 0.0, || format!("final delta {}", report.delta));
    c.check(report.objective().unwrap() < 0.0885, || {
        format!("final J {}", report.objective().unwrap())
    });
    let seed_shape = synthesize(&seed, config.resolution).unwrap();
    let container = Disk::new(Point::ORIGIN, 5.0);
    let seed_res = optimality_residual(&seed_shape, Some(&container)).unwrap();
    let final_res = optimality_residual(&final_shape, Some(&container)).unwrap();
    c.check(final_res.l2_norm <= seed_res.l2_norm, || {
        format!(
            "residual L2 grew: seed {} -> final {}",
            seed_res.l2_norm, final_res.l2_norm
        )
    });
    c.finish();
}

#[test]
fn criterion_09_monotone_in_diameter_bound() {
    let mut c = Criterion::new(9, "minimum non-increasing in D");
    let (_, j10, _, _, _) = optimize_at(10.0, 300);
    let (_, j20, _, _, _) = optimize_at(20.0, 300);
    c.check(j20 <= j10 + 1e-4, || format!("J(D=20) = {j20} > J(D=10) = {j10}"));
    c.finish();
}

#[test]
fn criterion_10_randomized_invariants() {
    let mut c = Criterion::new(10, "randomized functional invariants");
    let mut rng = ChaCha8Rng::seed_from_u64(12345);
    for i in 0..1000u64 {
        let base = fourier_shape(i, 128);
        let shape = if i % 10 == 0 {
            // occasionally a two-component configuration
            let r1 = rng.gen_range(0.5..0.9);
            let r2 = (1.0f64 - r1 * r1).sqrt();
            let gap = rng.gen_range(3.0..8.0);
            Shape::new(vec![
                polygonize_disk(&Disk::new(Point::new(gap, 0.0), r1), 128).unwrap(),
                polygonize_disk(&Disk::new(Point::new(-gap, 0.0), r2), 128).unwrap(),
            ])
            .unwrap()
        } else {
            base
        };
        let angle = rng.gen_range(0.0..2.0 * PI);
        let offset = Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let moved = shape.rotated(angle).translated(offset);
        let r0 = evaluate_core(&shape).unwrap();
        let r1 = evaluate_core(&moved).unwrap();
        c.check(r0.delta >= -1e-9, || format!("shape {i}: delta {}", r0.delta));
        c.check(r0.lambda0 <= 2.0 + 1e-9, || {
            format!("shape {i}: lambda0 {}", r0.lambda0)
        });
        c.check(
            (r0.delta - r1.delta).abs() <= 1e-9,
            || format!("shape {i}: delta not rigid-invariant ({} vs {})", r0.delta, r1.delta),
        );
        c.check(
            (r0.lambda0 - r1.lambda0).abs() <= 1e-9,
            || {
                format!(
                    "shape {i}: lambda0 not rigid-invariant ({} vs {})",
                    r0.lambda0, r1.lambda0
                )
            },
        );
        if i < 50 {
            // the Fraenkel infimum cannot exceed the barycentric value
            let full = evaluate(&shape).unwrap();
            c.check(full.fraenkel <= full.lambda0 + 1e-12, || {
                format!("shape {i}: fraenkel {} > lambda0 {}", full.fraenkel, full.lambda0)
            });
        }
    }
    // barycenter-shift bound on 200 equal-area shape/ball pairs:
    // |G_E - G_F| <= diam(E u F) / (2 |E|) * |E symm-diff F|
    for i in 0..200u64 {
        let shape = fourier_shape(1000 + i, 128)
            .translated(Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
        let center = Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let ball = Disk::new(center, (shape.area() / PI).sqrt());
        let sd = symm_diff_area_disk(&shape, &ball);
        let g = shape.barycenter().unwrap();
        let mut pts: Vec<Point> = shape
            .components
            .iter()
            .flat_map(|comp| comp.vertices.iter().copied())
            .collect();
        pts.extend(
            polygonize_disk(&ball, 256)
                .unwrap()
                .vertices
                .iter()
                .copied(),
        );
        let d_union = isoperim::geometry::brute_force_diameter(&pts);
        let lhs = g.dist(center);
        let rhs = d_union / (2.0 * shape.area()) * sd;
        c.check(lhs <= rhs + 1e-9, || {
            format!("pair {i}: barycenter shift {lhs} > bound {rhs}")
        });
    }
    c.finish();
}
