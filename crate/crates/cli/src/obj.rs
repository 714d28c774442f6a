//! Wavefront OBJ line-set export. Lossy: coordinates are rounded for viewing.

use std::fmt::Write;

use stickforge_core::geometry::Cycle;
use stickforge_core::point::to_f64;

/// Decimal text of `x` with 12 significant digits, trailing zeros trimmed.
pub fn significant(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-6..=15).contains(&magnitude) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// One `o` object per component; each closed polygon is a single `l` element.
pub fn to_obj(components: &[Cycle], title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "# {title}").unwrap();
    writeln!(out, "# view-only: coordinates rounded to 12 significant digits").unwrap();
    let mut base = 1;
    for (i, c) in components.iter().enumerate() {
        writeln!(out, "o component_{}", i + 1).unwrap();
        for p in c {
            writeln!(
                out,
                "v {} {} {}",
                significant(to_f64(&p.x)),
                significant(to_f64(&p.y)),
                significant(to_f64(&p.z))
            )
            .unwrap();
        }
        let indices: Vec<String> = (0..c.len()).chain([0]).map(|k| (base + k).to_string()).collect();
        writeln!(out, "l {}", indices.join(" ")).unwrap();
        base += c.len();
    }
    out
}
