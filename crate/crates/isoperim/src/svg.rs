//! Minimal SVG emission: the shape's components as filled paths with
//! the barycentric disk and, optionally, the container circle overlaid.

use crate::error::Result;
use crate::functionals::evaluate_core;
use crate::geometry::{Disk, Shape};

/// Drawing units per length unit.
pub const SCALE: f64 = 100.0;

pub fn render(shape: &Shape, container: Option<&Disk>) -> Result<String> {
    let report = evaluate_core(shape)?;
    let (mut lo, mut hi) = shape.bounding_box();
    let bg = &report.barycentric_disk;
    lo.x = lo.x.min(bg.center.x - bg.radius);
    lo.y = lo.y.min(bg.center.y - bg.radius);
    hi.x = hi.x.max(bg.center.x + bg.radius);
    hi.y = hi.y.max(bg.center.y + bg.radius);
    if let Some(c) = container {
        lo.x = lo.x.min(c.center.x - c.radius);
        lo.y = lo.y.min(c.center.y - c.radius);
        hi.x = hi.x.max(c.center.x + c.radius);
        hi.y = hi.y.max(c.center.y + c.radius);
    }
    let margin = 0.1 * (hi - lo).norm().max(1.0);
    let (x0, y0) = ((lo.x - margin) * SCALE, (lo.y - margin) * SCALE);
    let w = (hi.x - lo.x + 2.0 * margin) * SCALE;
    let h = (hi.y - lo.y + 2.0 * margin) * SCALE;
    // flip y so the math orientation is upright on screen
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.2} {:.2} {:.2} {:.2}\">\n\
         <g transform=\"scale(1,-1) translate(0,{:.2})\">\n",
        x0,
        y0,
        w,
        h,
        -(2.0 * y0 + h)
    );
    for comp in &shape.components {
        out.push_str("<path d=\"");
        for (i, v) in comp.vertices.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            out.push_str(&format!("{}{:.3} {:.3} ", cmd, v.x * SCALE, v.y * SCALE));
        }
        out.push_str("Z\" fill=\"#9ecae1\" stroke=\"#2171b5\" stroke-width=\"2\"/>\n");
    }
    out.push_str(&circle_element(bg, "#d62728"));
    if let Some(c) = container {
        out.push_str(&circle_element(c, "#555555"));
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

fn circle_element(disk: &Disk, color: &str) -> String {
    format!(
        "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\" stroke-dasharray=\"8 6\"/>\n",
        disk.center.x * SCALE,
        disk.center.y * SCALE,
        disk.radius * SCALE,
        color
    )
}
