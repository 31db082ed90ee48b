//! Static exports of an arrangement: SVG in the plane, PLY point clouds in
//! space, and a flat JSON listing for anything else.

use std::fmt::Write;
use std::path::Path;

use serde::Serialize;

use crate::correspondence::Arrangement;
use crate::error::{Error, Result};
use crate::inversive::GenSphere;
use crate::linalg::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Family,
    Arrangement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Json,
    Ply,
}

impl Format {
    pub fn from_path(path: &Path) -> Result<Format> {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("svg") => Ok(Format::Svg),
            Some("json") => Ok(Format::Json),
            Some("ply") => Ok(Format::Ply),
            _ => Err(Error::BadParams(format!("cannot infer render format from `{}`", path.display()))),
        }
    }
}

fn tagged(arr: &Arrangement) -> impl Iterator<Item = (Role, &GenSphere)> {
    let fam = arr.family.members.iter().map(|s| (Role::Family, s));
    fam.chain(arr.spheres.iter().map(|s| (Role::Arrangement, s)))
}

pub fn render(arr: &Arrangement, format: Format) -> Result<String> {
    match format {
        Format::Svg => render_svg(arr),
        Format::Json => Ok(render_json(arr)),
        Format::Ply => render_ply(arr),
    }
}

/// Axis-aligned box around every sphere, padded by 5%.
fn bounds(arr: &Arrangement) -> (f64, f64, f64, f64) {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (_, s) in tagged(arr) {
        if let GenSphere::Sphere { center, radius } = s {
            x0 = x0.min(center[0] - radius);
            x1 = x1.max(center[0] + radius);
            y0 = y0.min(center[1] - radius);
            y1 = y1.max(center[1] + radius);
        }
    }
    if !x0.is_finite() {
        return (-5.0, -5.0, 5.0, 5.0);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0);
    (x0 - pad, y0 - pad, x1 + pad, y1 + pad)
}

/// Segment of the line `<n, x> = c` crossing a box, for drawing.
fn line_in_box(normal: &Vector, offset: f64, (x0, y0, x1, y1): (f64, f64, f64, f64)) -> (f64, f64, f64, f64) {
    let base = [normal[0] * offset, normal[1] * offset];
    let dir = [-normal[1], normal[0]];
    let reach = (x1 - x0).hypot(y1 - y0);
    (base[0] - reach * dir[0], base[1] - reach * dir[1], base[0] + reach * dir[0], base[1] + reach * dir[1])
}

/// SVG with one `circle` per sphere and one `line` per line; family members
/// are drawn with a thicker stroke. The y axis points up.
pub fn render_svg(arr: &Arrangement) -> Result<String> {
    if arr.family.ambient_dim != 2 {
        return Err(Error::BadDims(format!(
            "SVG needs a planar arrangement, got dimension {}",
            arr.family.ambient_dim
        )));
    }
    let b = bounds(arr);
    let (w, h) = (b.2 - b.0, b.3 - b.1);
    let thin = 0.003 * w.max(h);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        b.0,
        flip(b.3),
        w,
        h,
        (800.0 * h / w).round()
    );
    let _ = writeln!(out, r#"<g fill="none" stroke-linecap="round">"#);
    for (role, s) in tagged(arr) {
        let (stroke, width) = match role {
            Role::Family => ("#1f3a93", 3.0 * thin),
            Role::Arrangement => ("#c0392b", thin),
        };
        match s {
            GenSphere::Sphere { center, radius } => {
                let _ = writeln!(
                    out,
                    r#"<circle class="{}" cx="{}" cy="{}" r="{}" stroke="{}" stroke-width="{}"/>"#,
                    role_name(role),
                    center[0],
                    flip(center[1]),
                    radius,
                    stroke,
                    width
                );
            }
            GenSphere::Hyperplane { normal, offset } => {
                let (ax, ay, bx, by) = line_in_box(normal, *offset, b);
                let _ = writeln!(
                    out,
                    r#"<line class="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}"/>"#,
                    role_name(role),
                    ax,
                    flip(ay),
                    bx,
                    flip(by),
                    stroke,
                    width
                );
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

/// SVG y grows downward.
fn flip(y: f64) -> f64 {
    if y == 0.0 {
        0.0
    } else {
        -y
    }
}

fn role_name(role: Role) -> &'static str {
    match role {
        Role::Family => "family",
        Role::Arrangement => "arrangement",
    }
}

#[derive(Serialize)]
struct Entry<'a> {
    role: Role,
    #[serde(flatten)]
    sphere: &'a GenSphere,
}

/// Flat list of `{role, type, ...}` records.
pub fn render_json(arr: &Arrangement) -> String {
    let entries: Vec<Entry> = tagged(arr).map(|(role, sphere)| Entry { role, sphere }).collect();
    let mut s = serde_json::to_string_pretty(&serde_json::json!({
        "ambient_dim": arr.family.ambient_dim,
        "objects": entries,
    }))
    .expect("entries serialize");
    s.push('\n');
    s
}

/// ASCII PLY with one vertex per sphere: `x y z radius role`, role 0 for
/// family members and 1 for arrangement spheres. Planes have no vertex
/// and are listed in comments.
pub fn render_ply(arr: &Arrangement) -> Result<String> {
    if arr.family.ambient_dim != 3 {
        return Err(Error::BadDims(format!(
            "PLY needs a spatial arrangement, got dimension {}",
            arr.family.ambient_dim
        )));
    }
    let mut body = String::new();
    let mut comments = String::new();
    let mut count = 0;
    for (role, s) in tagged(arr) {
        let code = match role {
            Role::Family => 0,
            Role::Arrangement => 1,
        };
        match s {
            GenSphere::Sphere { center, radius } => {
                let _ = writeln!(body, "{} {} {} {} {}", center[0], center[1], center[2], radius, code);
                count += 1;
            }
            GenSphere::Hyperplane { normal, offset } => {
                let _ = writeln!(
                    comments,
                    "comment plane {} normal {} {} {} offset {}",
                    role_name(role),
                    normal[0],
                    normal[1],
                    normal[2],
                    offset
                );
            }
        }
    }
    let mut out = String::from("ply\nformat ascii 1.0\n");
    out.push_str(&comments);
    let _ = writeln!(out, "element vertex {count}");
    out.push_str("property double x\nproperty double y\nproperty double z\nproperty double radius\nproperty uchar role\nend_header\n");
    out.push_str(&body);
    Ok(out)
}
