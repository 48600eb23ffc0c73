//! Deterministic SVG rendering of configurations over the embedded grid.
//!
//! Patch sides are geodesics, drawn as circular arcs orthogonal to the
//! disc boundary with a straight-segment fallback when the arc's sagitta
//! drops below a quarter pixel. Output is byte-deterministic: cells are
//! emitted in coordinate order and every number is printed with nine
//! fractional digits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::engine::{CellState, Configuration};
use crate::geometry::{DiscPoint, Embedder, GeometryError};
use crate::tree::SectorTree;
use crate::tri;

#[derive(Debug, Clone)]
pub struct RenderOptions {
    /// Heptagon tree depth to draw; cells beyond it are omitted (counted
    /// in [`RenderOutput::cells_omitted`]).
    pub levels: u32,
    /// Stroke every patch outline on top of the fills.
    pub grid: bool,
    /// Fill color per state; states without an entry fall back to gray.
    pub palette: BTreeMap<CellState, String>,
    /// Width and height of the square image, in pixels.
    pub size_px: u32,
    pub background: String,
}

impl Default for RenderOptions {
    fn default() -> Self {
        let mut palette = BTreeMap::new();
        palette.insert(CellState::B, "#FF0000".to_string());
        palette.insert(CellState::R, "#FF0000".to_string());
        palette.insert(CellState::Y, "#FFFF00".to_string());
        palette.insert(CellState::V, "#E34234".to_string());
        RenderOptions {
            levels: 5,
            grid: true,
            palette,
            size_px: 1000,
            background: "white".to_string(),
        }
    }
}

#[derive(Debug)]
pub struct RenderOutput {
    pub svg: String,
    pub cells_drawn: u64,
    /// Colored cells whose heptagon lies beyond `levels`.
    pub cells_omitted: u64,
}

struct Canvas {
    /// Pixel center of the disc.
    cx: f64,
    /// Disc radius in pixels.
    radius: f64,
}

impl Canvas {
    fn to_px(&self, p: DiscPoint) -> (f64, f64) {
        // SVG y grows downward; flip so the disc keeps its orientation.
        (self.cx + p.x * self.radius, self.cx - p.y * self.radius)
    }
}

fn fmt9(v: f64) -> String {
    // Normalize the negative-zero representation so output stays stable.
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.9}")
}

/// One geodesic side as an SVG path segment ending at `b`.
fn side_path(canvas: &Canvas, a: DiscPoint, b: DiscPoint) -> String {
    let (ax, ay) = canvas.to_px(a);
    let (bx, by) = canvas.to_px(b);
    // Geodesic through a and b: circle with center c, |c|^2 = r^2 + 1,
    // from 2 c.a = 1 + |a|^2 and 2 c.b = 1 + |b|^2. A vanishing
    // determinant means the geodesic is a diameter.
    let det = 2.0 * (a.x * b.y - a.y * b.x);
    if det.abs() > 1e-12 {
        let ra = 1.0 + a.x * a.x + a.y * a.y;
        let rb = 1.0 + b.x * b.x + b.y * b.y;
        let ccx = (ra * b.y - rb * a.y) / det;
        let ccy = (rb * a.x - ra * b.x) / det;
        let r2 = ccx * ccx + ccy * ccy - 1.0;
        if r2 > 0.0 {
            let r_px = r2.sqrt() * canvas.radius;
            let chord = ((bx - ax).powi(2) + (by - ay).powi(2)).sqrt();
            let half = chord / 2.0;
            if r_px > half {
                let sagitta = r_px - (r_px * r_px - half * half).sqrt();
                if sagitta >= 0.25 {
                    // Sweep flag: the disc's counterclockwise turns into
                    // clockwise under the pixel y flip.
                    let cross = (a.x - ccx) * (b.y - ccy) - (a.y - ccy) * (b.x - ccx);
                    let sweep = if cross < 0.0 { 1 } else { 0 };
                    return format!(
                        "A {} {} 0 0 {} {} {}",
                        fmt9(r_px),
                        fmt9(r_px),
                        sweep,
                        fmt9(bx),
                        fmt9(by)
                    );
                }
            }
        }
    }
    format!("L {} {}", fmt9(bx), fmt9(by))
}

fn patch_path(canvas: &Canvas, vertices: &[DiscPoint; 3]) -> String {
    let (sx, sy) = canvas.to_px(vertices[0]);
    let mut d = format!("M {} {}", fmt9(sx), fmt9(sy));
    for i in 0..3 {
        let a = vertices[i];
        let b = vertices[(i + 1) % 3];
        let _ = write!(d, " {}", side_path(canvas, a, b));
    }
    d.push_str(" Z");
    d
}

/// Renders `cfg` to a complete SVG document.
pub fn render(
    tree: &SectorTree,
    cfg: &Configuration,
    opts: &RenderOptions,
) -> Result<RenderOutput, GeometryError> {
    let mut emb = Embedder::new(tree, opts.levels.max(1) + 1);
    let size = f64::from(opts.size_px);
    let canvas = Canvas {
        cx: size / 2.0,
        radius: size / 2.0 - 2.0,
    };

    let in_levels = |h: &crate::hepta::HeptaCoord| -> bool {
        h.is_central() || tree.level_of(h.nu).unwrap() <= opts.levels
    };

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        opts.size_px
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{0}" height="{0}" fill="{1}"/>"#,
        opts.size_px, opts.background
    );
    let _ = writeln!(
        svg,
        r#"<circle cx="{0}" cy="{0}" r="{1}" fill="white"/>"#,
        fmt9(canvas.cx),
        fmt9(canvas.radius)
    );

    let mut drawn = 0u64;
    let mut omitted = 0u64;
    for (&t, &state) in cfg.iter() {
        if !in_levels(&t.hepta) {
            omitted += 1;
            continue;
        }
        let patch = emb.tri_patch(t)?;
        let fill = opts
            .palette
            .get(&state)
            .map(String::as_str)
            .unwrap_or("#808080");
        let _ = writeln!(
            svg,
            r#"<path d="{}" fill="{}"/>"#,
            patch_path(&canvas, &patch.vertices),
            fill
        );
        drawn += 1;
    }

    if opts.grid {
        for t in tri::ball(tree, opts.levels) {
            let patch = emb.tri_patch(t)?;
            let _ = writeln!(
                svg,
                r#"<path d="{}" fill="none" stroke="black" stroke-width="0.6"/>"#,
                patch_path(&canvas, &patch.vertices)
            );
        }
    }

    let _ = writeln!(
        svg,
        r#"<circle cx="{0}" cy="{0}" r="{1}" fill="none" stroke="black" stroke-width="1"/>"#,
        fmt9(canvas.cx),
        fmt9(canvas.radius)
    );
    svg.push_str("</svg>\n");
    Ok(RenderOutput {
        svg,
        cells_drawn: drawn,
        cells_omitted: omitted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{init_config, InitId};

    #[test]
    fn empty_configuration_draws_only_the_disc() {
        let tree = SectorTree::new();
        let opts = RenderOptions { grid: false, ..Default::default() };
        let out = render(&tree, &Configuration::empty(), &opts).unwrap();
        assert_eq!(out.cells_drawn, 0);
        assert!(!out.svg.contains("<path"));
        assert_eq!(out.svg.matches("<circle").count(), 2);
    }

    #[test]
    fn rendering_is_deterministic() {
        let tree = SectorTree::new();
        let cfg = init_config(InitId::HeptaCore);
        let opts = RenderOptions { levels: 2, ..Default::default() };
        let a = render(&tree, &cfg, &opts).unwrap();
        let b = render(&tree, &cfg, &opts).unwrap();
        assert_eq!(a.svg, b.svg);
    }

    #[test]
    fn hepta_core_fill_counts() {
        let tree = SectorTree::new();
        let cfg = init_config(InitId::HeptaCore);
        let opts = RenderOptions { levels: 1, grid: false, ..Default::default() };
        let out = render(&tree, &cfg, &opts).unwrap();
        assert_eq!(out.cells_drawn, 28);
        assert_eq!(out.svg.matches(r##"fill="#FF0000""##).count(), 14);
        assert_eq!(out.svg.matches(r##"fill="#FFFF00""##).count(), 7);
        assert_eq!(out.svg.matches(r##"fill="#E34234""##).count(), 7);
    }

    #[test]
    fn grid_output_is_a_superset_of_fills() {
        let tree = SectorTree::new();
        let cfg = init_config(InitId::Core2);
        let fills_only = RenderOptions { levels: 1, grid: false, ..Default::default() };
        let with_grid = RenderOptions { levels: 1, grid: true, ..Default::default() };
        let a = render(&tree, &cfg, &fills_only).unwrap();
        let b = render(&tree, &cfg, &with_grid).unwrap();
        assert!(!a.svg.contains("stroke=\"black\" stroke-width=\"0.6\""));
        for line in a.svg.lines().filter(|l| l.starts_with("<path")) {
            assert!(b.svg.contains(line), "fill element missing under grid mode");
        }
        assert!(b.svg.matches("fill=\"none\" stroke=\"black\"").count() >= 28 * 8);
    }

    #[test]
    fn cells_beyond_the_level_budget_are_omitted() {
        let tree = SectorTree::new();
        let mut cfg = init_config(InitId::Core2);
        cfg.set(
            crate::tri::TriCoord { hepta: crate::hepta::HeptaCoord { sector: 3, nu: 40 }, slice: 2, place: 3 },
            CellState::B,
        );
        let opts = RenderOptions { levels: 2, grid: false, ..Default::default() };
        let out = render(&tree, &cfg, &opts).unwrap();
        assert_eq!(out.cells_omitted, 1);
        assert_eq!(out.cells_drawn, 7);
    }

    #[test]
    fn arcs_follow_the_geodesic() {
        // Reconstruct the arc center from the emitted parameters and
        // compare with the geodesic circle computed directly.
        let a = DiscPoint::new(0.271, 0.130).unwrap();
        let b = DiscPoint::new(0.290, -0.125).unwrap();
        let canvas = Canvas { cx: 500.0, radius: 498.0 };
        let path = side_path(&canvas, a, b);
        let parts: Vec<&str> = path.split_whitespace().collect();
        assert_eq!(parts[0], "A", "expected an arc for a curved side: {path}");
        let r: f64 = parts[1].parse().unwrap();
        let sweep: u8 = parts[5].parse().unwrap();
        let (bx, by): (f64, f64) = (parts[6].parse().unwrap(), parts[7].parse().unwrap());
        let (ax, ay) = canvas.to_px(a);

        // True geodesic circle, mapped to pixels.
        let det = 2.0 * (a.x * b.y - a.y * b.x);
        let ra = 1.0 + a.x * a.x + a.y * a.y;
        let rb = 1.0 + b.x * b.x + b.y * b.y;
        let ccx = (ra * b.y - rb * a.y) / det;
        let ccy = (rb * a.x - ra * b.x) / det;
        let true_center = (canvas.cx + ccx * canvas.radius, canvas.cx - ccy * canvas.radius);

        // Center implied by the A command: on the perpendicular bisector,
        // on the side selected by the sweep flag.
        let (mx, my) = ((ax + bx) / 2.0, (ay + by) / 2.0);
        let (dx, dy) = (bx - ax, by - ay);
        let half = (dx * dx + dy * dy).sqrt() / 2.0;
        let h = (r * r - half * half).sqrt();
        let (nx, ny) = (-dy / (2.0 * half), dx / (2.0 * half));
        let mut implied = (mx + h * nx, my + h * ny);
        let cross = (ax - implied.0) * (by - implied.1) - (ay - implied.1) * (bx - implied.0);
        let want_positive = sweep == 1;
        if (cross > 0.0) != want_positive {
            implied = (mx - h * nx, my - h * ny);
        }
        assert!(
            (implied.0 - true_center.0).abs() < 1e-3 && (implied.1 - true_center.1).abs() < 1e-3,
            "arc center {implied:?} vs geodesic center {true_center:?}"
        );
    }

    #[test]
    fn coordinates_stay_inside_the_disc_circle() {
        let tree = SectorTree::new();
        let cfg = init_config(InitId::HeptaCore);
        let opts = RenderOptions { levels: 3, ..Default::default() };
        let out = render(&tree, &cfg, &opts).unwrap();
        let size = f64::from(opts.size_px);
        let (cx, r) = (size / 2.0, size / 2.0 - 2.0);
        for line in out.svg.lines().filter(|l| l.starts_with("<path")) {
            let d_start = line.find("d=\"").unwrap() + 3;
            let d_end = line[d_start..].find('"').unwrap() + d_start;
            let mut tokens = line[d_start..d_end].split_whitespace().peekable();
            while let Some(tok) = tokens.next() {
                match tok {
                    "M" | "L" => {
                        let x: f64 = tokens.next().unwrap().parse().unwrap();
                        let y: f64 = tokens.next().unwrap().parse().unwrap();
                        let d2 = (x - cx).powi(2) + (y - cx).powi(2);
                        assert!(d2 <= r * r + 1e-3, "point outside disc: {tok} {x} {y}");
                    }
                    "A" => {
                        // rx ry rot large sweep x y
                        for _ in 0..5 {
                            tokens.next();
                        }
                        let x: f64 = tokens.next().unwrap().parse().unwrap();
                        let y: f64 = tokens.next().unwrap().parse().unwrap();
                        let d2 = (x - cx).powi(2) + (y - cx).powi(2);
                        assert!(d2 <= r * r + 1e-3, "arc endpoint outside disc");
                    }
                    _ => {}
                }
            }
        }
    }
}
