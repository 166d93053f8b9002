//! Deterministic SVG output of a drawing viewport.
//!
//! Paper space is y-up, SVG is y-down, so every y coordinate is negated and
//! the view box spans `(x0, -y1)` to `(x1, -y0)`. One user unit is one mm.

use std::fmt::Write;
use std::sync::OnceLock;

use drawmod_core::angle::{cos_sin_deg, sweep_deg};
use drawmod_core::drawing::Drawing;
use drawmod_core::geometry::{Element, LineStyle, LineType, Point};
use drawmod_core::view::{visible_elements, Viewport};

pub const STROKE_WIDTH: f64 = 0.5;
pub const THIN_STROKE_WIDTH: f64 = 0.25;
pub const DASHED_PATTERN: &str = "4,2";
pub const DASH_DOT_PATTERN: &str = "8,2,1,2";

const PALETTE_FILE: &str = include_str!("../data/palette.txt");

/// The 256-entry colour table, `#rrggbb` per colour index.
pub fn palette() -> &'static [String; 256] {
    static PALETTE: OnceLock<[String; 256]> = OnceLock::new();
    PALETTE.get_or_init(|| {
        let colours: Vec<String> = PALETTE_FILE
            .lines()
            .map(str::trim)
            .filter(|l| l.len() == 7 && l.starts_with('#'))
            .map(str::to_string)
            .collect();
        colours.try_into().expect("palette file holds exactly 256 colours")
    })
}

/// Shortest round-trip decimal, with negative zero written as `0`.
fn n(x: f64) -> String {
    format!("{}", x + 0.0)
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

fn stroke(style: LineStyle) -> String {
    let colour = &palette()[usize::from(style.color)];
    let width = if style.line_type == LineType::ThinSolid {
        THIN_STROKE_WIDTH
    } else {
        STROKE_WIDTH
    };
    let dash = match style.line_type {
        LineType::Dashed => format!(" stroke-dasharray=\"{DASHED_PATTERN}\""),
        LineType::DashDot => format!(" stroke-dasharray=\"{DASH_DOT_PATTERN}\""),
        LineType::Solid | LineType::ThinSolid => String::new(),
    };
    format!("fill=\"none\" stroke=\"{colour}\" stroke-width=\"{}\"{dash}", n(width))
}

fn pt(p: Point) -> String {
    format!("{},{}", n(p.x), n(-p.y))
}

fn element_svg(e: &Element, out: &mut String) {
    match e {
        Element::Segment { p1, p2, style } => {
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {}/>",
                n(p1.x),
                n(-p1.y),
                n(p2.x),
                n(-p2.y),
                stroke(*style)
            );
        }
        Element::Polyline { points, closed, style } => {
            let tag = if *closed { "polygon" } else { "polyline" };
            let pts: Vec<String> = points.iter().map(|p| pt(*p)).collect();
            let _ = writeln!(out, "<{tag} points=\"{}\" {}/>", pts.join(" "), stroke(*style));
        }
        Element::Circle { center, radius, style } => {
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {}/>",
                n(center.x),
                n(-center.y),
                n(*radius),
                stroke(*style)
            );
        }
        Element::Arc {
            center,
            radius,
            start_angle,
            end_angle,
            style,
        } => {
            let (c0, s0) = cos_sin_deg(*start_angle);
            let (c1, s1) = cos_sin_deg(*end_angle);
            let p0 = *center + Point::new(c0, s0) * *radius;
            let p1 = *center + Point::new(c1, s1) * *radius;
            let large = u8::from(sweep_deg(*start_angle, *end_angle) > 180.0);
            // counter-clockwise in paper space is counter-clockwise on screen after the flip: sweep flag 0
            let _ = writeln!(
                out,
                "<path d=\"M {} A {} {} 0 {large} 0 {}\" {}/>",
                pt(p0),
                n(*radius),
                n(*radius),
                pt(p1),
                stroke(*style)
            );
        }
        Element::Text {
            anchor,
            height,
            angle,
            content,
            style,
        } => {
            let colour = &palette()[usize::from(style.color)];
            let rotate = if *angle == 0.0 {
                String::new()
            } else {
                format!(" transform=\"rotate({} {} {})\"", n(-angle), n(anchor.x), n(-anchor.y))
            };
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"monospace\" fill=\"{colour}\"{rotate}>{}</text>",
                n(anchor.x),
                n(-anchor.y),
                n(*height),
                escape(content)
            );
        }
    }
}

/// SVG 1.1 document of the elements meeting the viewport, in drawing order.
pub fn render_svg(d: &Drawing, v: &Viewport, cull: bool) -> String {
    let r = v.rect;
    let (w, h) = (r.width(), r.height());
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}mm\" height=\"{}mm\" viewBox=\"{} {} {} {}\">",
        n(w),
        n(h),
        n(r.min.x),
        n(-r.max.y),
        n(w),
        n(h)
    );
    for e in visible_elements(d, v, cull) {
        element_svg(&d.items[e.item].elements()[e.element], &mut out);
    }
    out.push_str("</svg>\n");
    out
}
