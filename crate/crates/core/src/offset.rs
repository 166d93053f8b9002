//! Parallel offsetting of open polylines with welded (mitred) or bent (filleted) corners.

use alloc::vec::Vec;

use crate::angle::atan2_deg;
use crate::geometry::{Element, GeometryError, LineStyle, Point};

/// Corners with a smaller turn are treated as straight: no miter, no fillet.
pub const MIN_TURN_DEG: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CornerKind {
    Welded,
    Bent,
}

impl CornerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CornerKind::Welded => "welded",
            CornerKind::Bent => "bent",
        }
    }

    pub fn parse(s: &str) -> Option<CornerKind> {
        match s {
            "welded" => Some(CornerKind::Welded),
            "bent" => Some(CornerKind::Bent),
            _ => None,
        }
    }
}

struct Corner {
    // signed turn in degrees, positive = left (CCW)
    turn: f64,
    // sin and cos of the deflection
    sin: f64,
    cos: f64,
}

impl Corner {
    fn is_straight(&self) -> bool {
        self.turn.abs() < MIN_TURN_DEG
    }

    fn side(&self) -> f64 {
        if self.turn > 0.0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Offsets `points` by `side_offset` (positive = left of travel).
///
/// Welded corners join at the intersection of the neighbouring offset lines.
/// Bent corners replace the centreline vertex by a tangent arc of
/// `fillet_radius`; on the offset side that arc has radius
/// `fillet_radius ∓ side_offset` depending on the turn direction.
pub fn offset_path(
    points: &[Point],
    side_offset: f64,
    corner: CornerKind,
    fillet_radius: f64,
) -> Result<Vec<Element>, GeometryError> {
    if points.len() < 2 {
        return Err(GeometryError::DegeneratePath("need at least 2 points"));
    }
    if !points.iter().all(|p| p.is_finite()) || !side_offset.is_finite() || !fillet_radius.is_finite() {
        return Err(GeometryError::DegeneratePath("non-finite input"));
    }
    let mut dirs = Vec::with_capacity(points.len() - 1);
    let mut lens = Vec::with_capacity(points.len() - 1);
    for w in points.windows(2) {
        let v = w[1] - w[0];
        let len = v.length();
        if len == 0.0 {
            return Err(GeometryError::DegeneratePath("repeated consecutive point"));
        }
        dirs.push(v * (1.0 / len));
        lens.push(len);
    }
    let normals: Vec<Point> = dirs.iter().map(|u| u.perp()).collect();

    // corners[k] describes interior vertex k + 1
    let mut corners = Vec::with_capacity(dirs.len().saturating_sub(1));
    for k in 1..dirs.len() {
        let (u0, u1) = (dirs[k - 1], dirs[k]);
        let cross = u0.cross(u1);
        let dot = u0.dot(u1);
        let mut turn = atan2_deg(cross, dot);
        if turn > 180.0 {
            turn -= 360.0;
        }
        if turn.abs() >= 180.0 - 1e-9 {
            return Err(GeometryError::Reversal(k));
        }
        corners.push(Corner {
            turn,
            sin: cross.abs(),
            cos: dot,
        });
    }

    let d = side_offset;
    let style = LineStyle::SOLID;
    let mut out = Vec::new();

    match corner {
        CornerKind::Welded => {
            let mut start = points[0] + normals[0] * d;
            for (i, c) in corners.iter().enumerate() {
                let v = points[i + 1];
                let (n0, n1) = (normals[i], normals[i + 1]);
                if c.is_straight() {
                    out.push(Element::segment(start, v + n0 * d, style));
                    start = v + n1 * d;
                } else {
                    let miter = v + (n0 + n1) * (d / (1.0 + n0.dot(n1)));
                    out.push(Element::segment(start, miter, style));
                    start = miter;
                }
            }
            let last = points.len() - 1;
            out.push(Element::segment(start, points[last] + normals[last - 1] * d, style));
        }
        CornerKind::Bent => {
            let filleted = corners.iter().any(|c| !c.is_straight());
            if filleted && fillet_radius <= d.abs() {
                let vertex = corners.iter().position(|c| !c.is_straight()).unwrap_or(0) + 1;
                return Err(GeometryError::FilletDoesNotFit {
                    vertex,
                    radius: fillet_radius,
                });
            }
            let r = fillet_radius;
            // tangent length at each vertex (0 at the ends and at straight corners)
            let mut tangent = alloc::vec![0.0; points.len()];
            for (k, c) in corners.iter().enumerate() {
                if !c.is_straight() {
                    tangent[k + 1] = r * c.sin / (1.0 + c.cos);
                }
            }
            for (i, len) in lens.iter().enumerate() {
                if tangent[i] + tangent[i + 1] > len * (1.0 + 1e-12) {
                    let vertex = if tangent[i + 1] > 0.0 { i + 1 } else { i };
                    return Err(GeometryError::FilletDoesNotFit { vertex, radius: r });
                }
            }

            let mut start = points[0] + normals[0] * d;
            for (i, c) in corners.iter().enumerate() {
                let v = points[i + 1];
                let (u0, u1) = (dirs[i], dirs[i + 1]);
                let (n0, n1) = (normals[i], normals[i + 1]);
                if c.is_straight() {
                    out.push(Element::segment(start, v + n0 * d, style));
                    start = v + n1 * d;
                    continue;
                }
                let t = tangent[i + 1];
                let t1 = v - u0 * t;
                let t2 = v + u1 * t;
                let side = c.side();
                let center = t1 + n0 * (side * r);
                let radius = r - side * d;
                let a1 = atan2_deg(-n0.y * side, -n0.x * side);
                let a2 = atan2_deg(-n1.y * side, -n1.x * side);
                out.push(Element::segment(start, t1 + n0 * d, style));
                let arc = if side > 0.0 {
                    Element::arc(center, radius, a1, a2, style)
                } else {
                    Element::arc(center, radius, a2, a1, style)
                };
                out.push(arc);
                start = t2 + n1 * d;
            }
            let last = points.len() - 1;
            out.push(Element::segment(start, points[last] + normals[last - 1] * d, style));
        }
    }
    Ok(out)
}
