//! Geometric primitives in paper space (millimetres, y up).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::angle::{atan2_deg, cos_sin_deg, normalize_deg, sweep_deg};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("transform is not conformal")]
    NonConformal,
    #[error("invalid element: {0}")]
    InvalidElement(&'static str),
    #[error("degenerate path: {0}")]
    DegeneratePath(&'static str),
    #[error("path reverses direction at vertex {0}")]
    Reversal(usize),
    #[error("fillet of radius {radius} does not fit at vertex {vertex}")]
    FilletDoesNotFit { vertex: usize, radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn length(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn distance(self, o: Point) -> f64 {
        (o - self).length()
    }

    /// Unit vector at `deg` degrees.
    pub fn from_angle(deg: f64) -> Point {
        let (c, s) = cos_sin_deg(deg);
        Point::new(c, s)
    }

    /// Left-hand perpendicular (rotated +90°).
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn midpoint(self, o: Point) -> Point {
        Point::new((self.x + o.x) / 2.0, (self.y + o.y) / 2.0)
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
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Axis-aligned rectangle, closed on all sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub const fn new(min: Point, max: Point) -> Self {
        Rect { min, max }
    }

    pub fn from_coords(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Rect::new(Point::new(x0.min(x1), y0.min(y1)), Point::new(x0.max(x1), y0.max(y1)))
    }

    pub fn from_point(p: Point) -> Self {
        Rect::new(p, p)
    }

    /// Bounds of a non-empty point set.
    pub fn from_points<I: IntoIterator<Item = Point>>(pts: I) -> Option<Rect> {
        let mut it = pts.into_iter();
        let first = it.next()?;
        Some(it.fold(Rect::from_point(first), |r, p| r.include(p)))
    }

    pub fn include(self, p: Point) -> Rect {
        Rect::new(
            Point::new(self.min.x.min(p.x), self.min.y.min(p.y)),
            Point::new(self.max.x.max(p.x), self.max.y.max(p.y)),
        )
    }

    pub fn union(self, o: Rect) -> Rect {
        self.include(o.min).include(o.max)
    }

    pub fn is_valid(&self) -> bool {
        self.min.is_finite() && self.max.is_finite() && self.min.x <= self.max.x && self.min.y <= self.max.y
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    /// Closed-rectangle intersection: touching boundaries count.
    pub fn intersects(&self, o: &Rect) -> bool {
        self.min.x <= o.max.x && o.min.x <= self.max.x && self.min.y <= o.max.y && o.min.y <= self.max.y
    }

    pub fn contains_rect(&self, o: &Rect) -> bool {
        self.min.x <= o.min.x && self.min.y <= o.min.y && o.max.x <= self.max.x && o.max.y <= self.max.y
    }

    pub fn contains_point(&self, p: Point) -> bool {
        self.min.x <= p.x && p.x <= self.max.x && self.min.y <= p.y && p.y <= self.max.y
    }

    pub fn translate(&self, d: Point) -> Rect {
        Rect::new(self.min + d, self.max + d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum LineType {
    #[default]
    Solid,
    Dashed,
    DashDot,
    ThinSolid,
}

impl LineType {
    pub const ALL: [LineType; 4] = [
        LineType::Solid,
        LineType::Dashed,
        LineType::DashDot,
        LineType::ThinSolid,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LineType::Solid => "solid",
            LineType::Dashed => "dashed",
            LineType::DashDot => "dash_dot",
            LineType::ThinSolid => "thin_solid",
        }
    }

    pub fn parse(s: &str) -> Option<LineType> {
        LineType::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

/// Line type plus colour index; the colour is an index into a 256-entry palette.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LineStyle {
    pub line_type: LineType,
    pub color: u8,
}

impl LineStyle {
    pub const fn new(line_type: LineType, color: u8) -> Self {
        LineStyle { line_type, color }
    }

    pub const SOLID: LineStyle = LineStyle::new(LineType::Solid, 7);
    pub const THIN: LineStyle = LineStyle::new(LineType::ThinSolid, 7);
    pub const DASH_DOT: LineStyle = LineStyle::new(LineType::DashDot, 7);
}

/// Monospaced advance per character as a fraction of text height.
pub const TEXT_ASPECT: f64 = 0.6;

#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Segment {
        p1: Point,
        p2: Point,
        style: LineStyle,
    },
    Polyline {
        points: Vec<Point>,
        closed: bool,
        style: LineStyle,
    },
    /// Counter-clockwise arc from `start_angle` to `end_angle` (degrees).
    Arc {
        center: Point,
        radius: f64,
        start_angle: f64,
        end_angle: f64,
        style: LineStyle,
    },
    Circle {
        center: Point,
        radius: f64,
        style: LineStyle,
    },
    Text {
        anchor: Point,
        height: f64,
        angle: f64,
        content: String,
        style: LineStyle,
    },
}

impl Element {
    pub fn segment(p1: Point, p2: Point, style: LineStyle) -> Element {
        Element::Segment { p1, p2, style }
    }

    pub fn circle(center: Point, radius: f64, style: LineStyle) -> Element {
        Element::Circle { center, radius, style }
    }

    pub fn arc(center: Point, radius: f64, start_angle: f64, end_angle: f64, style: LineStyle) -> Element {
        Element::Arc {
            center,
            radius,
            start_angle: normalize_deg(start_angle),
            end_angle: normalize_deg(end_angle),
            style,
        }
    }

    pub fn polyline(points: Vec<Point>, closed: bool, style: LineStyle) -> Element {
        Element::Polyline { points, closed, style }
    }

    pub fn text(anchor: Point, height: f64, angle: f64, content: impl Into<String>, style: LineStyle) -> Element {
        Element::Text {
            anchor,
            height,
            angle: normalize_deg(angle),
            content: content.into(),
            style,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Element::Segment { .. } => "segment",
            Element::Polyline { .. } => "polyline",
            Element::Arc { .. } => "arc",
            Element::Circle { .. } => "circle",
            Element::Text { .. } => "text",
        }
    }

    pub fn style(&self) -> LineStyle {
        match self {
            Element::Segment { style, .. }
            | Element::Polyline { style, .. }
            | Element::Arc { style, .. }
            | Element::Circle { style, .. }
            | Element::Text { style, .. } => *style,
        }
    }

    pub fn style_mut(&mut self) -> &mut LineStyle {
        match self {
            Element::Segment { style, .. }
            | Element::Polyline { style, .. }
            | Element::Arc { style, .. }
            | Element::Circle { style, .. }
            | Element::Text { style, .. } => style,
        }
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        use GeometryError::InvalidElement as Bad;
        match self {
            Element::Segment { p1, p2, .. } => {
                if !(p1.is_finite() && p2.is_finite()) {
                    return Err(Bad("non-finite coordinate"));
                }
            }
            Element::Polyline { points, .. } => {
                if points.len() < 2 {
                    return Err(Bad("polyline needs at least 2 points"));
                }
                if !points.iter().all(|p| p.is_finite()) {
                    return Err(Bad("non-finite coordinate"));
                }
            }
            Element::Arc {
                center,
                radius,
                start_angle,
                end_angle,
                ..
            } => {
                if !center.is_finite() || !start_angle.is_finite() || !end_angle.is_finite() {
                    return Err(Bad("non-finite arc parameter"));
                }
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(Bad("arc radius must be positive"));
                }
                if sweep_deg(*start_angle, *end_angle) == 0.0 {
                    return Err(Bad("arc sweep must lie in (0, 360)"));
                }
            }
            Element::Circle { center, radius, .. } => {
                if !center.is_finite() {
                    return Err(Bad("non-finite coordinate"));
                }
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(Bad("circle radius must be positive"));
                }
            }
            Element::Text {
                anchor, height, angle, ..
            } => {
                if !anchor.is_finite() || !angle.is_finite() {
                    return Err(Bad("non-finite text placement"));
                }
                if !(*height > 0.0 && height.is_finite()) {
                    return Err(Bad("text height must be positive"));
                }
            }
        }
        Ok(())
    }

    /// Tight axis-aligned bounds.
    pub fn bbox(&self) -> Rect {
        match self {
            Element::Segment { p1, p2, .. } => Rect::from_point(*p1).include(*p2),
            Element::Polyline { points, .. } => {
                Rect::from_points(points.iter().copied()).unwrap_or(Rect::from_point(Point::ORIGIN))
            }
            Element::Circle { center, radius, .. } => {
                let r = Point::new(*radius, *radius);
                Rect::new(*center - r, *center + r)
            }
            Element::Arc {
                center,
                radius,
                start_angle,
                end_angle,
                ..
            } => {
                let at = |a: f64| *center + Point::from_angle(a) * *radius;
                let sweep = sweep_deg(*start_angle, *end_angle);
                let mut r = Rect::from_point(at(*start_angle)).include(at(*end_angle));
                for k in 0..4 {
                    let cardinal = 90.0 * k as f64;
                    let off = sweep_deg(*start_angle, cardinal);
                    if off <= sweep {
                        r = r.include(at(cardinal));
                    }
                }
                r
            }
            Element::Text { .. } => {
                let c = self.text_corners().expect("text element");
                Rect::from_points(c).expect("four corners")
            }
        }
    }

    /// Corner points of a text element's box: anchor, baseline end, top end, top start.
    pub fn text_corners(&self) -> Option<[Point; 4]> {
        if let Element::Text {
            anchor,
            height,
            angle,
            content,
            ..
        } = self
        {
            let w = TEXT_ASPECT * height * content.chars().count() as f64;
            let u = Point::from_angle(*angle);
            let v = u.perp();
            Some([
                *anchor,
                *anchor + u * w,
                *anchor + u * w + v * *height,
                *anchor + v * *height,
            ])
        } else {
            None
        }
    }

    /// Points an editor can snap to.
    pub fn snap_points(&self) -> Vec<Point> {
        match self {
            Element::Segment { p1, p2, .. } => vec![*p1, *p2, p1.midpoint(*p2)],
            Element::Polyline { points, .. } => points.clone(),
            Element::Arc {
                center,
                radius,
                start_angle,
                end_angle,
                ..
            } => vec![
                *center + Point::from_angle(*start_angle) * *radius,
                *center + Point::from_angle(*end_angle) * *radius,
                *center,
            ],
            Element::Circle { center, radius, .. } => vec![
                *center,
                *center + Point::new(*radius, 0.0),
                *center + Point::new(0.0, *radius),
                *center + Point::new(-*radius, 0.0),
                *center + Point::new(0.0, -*radius),
            ],
            Element::Text { anchor, .. } => vec![*anchor],
        }
    }

    /// Maps the element through a conformal transform.
    pub fn transformed(&self, t: &Transform) -> Result<Element, GeometryError> {
        if !t.is_conformal() {
            return Err(GeometryError::NonConformal);
        }
        let s = t.scale_factor();
        Ok(match self {
            Element::Segment { p1, p2, style } => Element::Segment {
                p1: t.apply(*p1),
                p2: t.apply(*p2),
                style: *style,
            },
            Element::Polyline { points, closed, style } => Element::Polyline {
                points: points.iter().map(|p| t.apply(*p)).collect(),
                closed: *closed,
                style: *style,
            },
            Element::Circle { center, radius, style } => Element::Circle {
                center: t.apply(*center),
                radius: radius * s,
                style: *style,
            },
            Element::Arc {
                center,
                radius,
                start_angle,
                end_angle,
                style,
            } => {
                // a mirror reverses orientation, so the endpoints swap roles
                let (start, end) = if t.is_mirror() {
                    (t.map_direction(*end_angle), t.map_direction(*start_angle))
                } else {
                    (t.map_direction(*start_angle), t.map_direction(*end_angle))
                };
                Element::Arc {
                    center: t.apply(*center),
                    radius: radius * s,
                    start_angle: start,
                    end_angle: end,
                    style: *style,
                }
            }
            Element::Text {
                anchor,
                height,
                angle,
                content,
                style,
            } => Element::Text {
                anchor: t.apply(*anchor),
                height: height * s,
                angle: t.map_direction(*angle),
                content: content.clone(),
                style: *style,
            },
        })
    }
}

/// Bounds of a list of elements; `None` when the list is empty.
pub fn elements_bbox(elements: &[Element]) -> Option<Rect> {
    elements.iter().map(Element::bbox).reduce(Rect::union)
}

/// Affine map `(x, y) -> (a·x + b·y + tx, c·x + d·y + ty)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transform {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub tx: f64,
    pub ty: f64,
}

impl Default for Transform {
    fn default() -> Self {
        Transform::IDENTITY
    }
}

impl Transform {
    pub const IDENTITY: Transform = Transform {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
        tx: 0.0,
        ty: 0.0,
    };

    pub fn translate(dx: f64, dy: f64) -> Transform {
        Transform {
            tx: dx,
            ty: dy,
            ..Transform::IDENTITY
        }
    }

    /// Rotation about the origin.
    pub fn rotate(deg: f64) -> Transform {
        let (c, s) = cos_sin_deg(deg);
        Transform {
            a: c,
            b: -s,
            c: s,
            d: c,
            tx: 0.0,
            ty: 0.0,
        }
    }

    pub fn rotate_about(p: Point, deg: f64) -> Transform {
        Transform::translate(-p.x, -p.y)
            .then(&Transform::rotate(deg))
            .then(&Transform::translate(p.x, p.y))
    }

    pub fn scale(k: f64) -> Transform {
        Transform {
            a: k,
            d: k,
            ..Transform::IDENTITY
        }
    }

    pub fn scale_about(p: Point, k: f64) -> Transform {
        Transform::translate(-p.x, -p.y)
            .then(&Transform::scale(k))
            .then(&Transform::translate(p.x, p.y))
    }

    /// Reflection `y -> -y`.
    pub fn mirror_x() -> Transform {
        Transform {
            d: -1.0,
            ..Transform::IDENTITY
        }
    }

    /// Reflection across the line through `p` at `deg` degrees.
    pub fn mirror_across(p: Point, deg: f64) -> Transform {
        Transform::translate(-p.x, -p.y)
            .then(&Transform::rotate(-deg))
            .then(&Transform::mirror_x())
            .then(&Transform::rotate(deg))
            .then(&Transform::translate(p.x, p.y))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Transform) -> Transform {
        Transform {
            a: next.a * self.a + next.b * self.c,
            b: next.a * self.b + next.b * self.d,
            c: next.c * self.a + next.d * self.c,
            d: next.c * self.b + next.d * self.d,
            tx: next.a * self.tx + next.b * self.ty + next.tx,
            ty: next.c * self.tx + next.d * self.ty + next.ty,
        }
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Option<Transform> {
        let det = self.determinant();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let (a, b, c, d) = (self.d / det, -self.b / det, -self.c / det, self.a / det);
        Some(Transform {
            a,
            b,
            c,
            d,
            tx: -(a * self.tx + b * self.ty),
            ty: -(c * self.tx + d * self.ty),
        })
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.a * p.x + self.b * p.y + self.tx + 0.0,
            self.c * p.x + self.d * p.y + self.ty + 0.0,
        )
    }

    /// Uniform scale times rotation, optionally times one mirror.
    pub fn is_conformal(&self) -> bool {
        let vals = [self.a, self.b, self.c, self.d, self.tx, self.ty];
        if !vals.iter().all(|v| v.is_finite()) {
            return false;
        }
        let col1 = self.a * self.a + self.c * self.c;
        let col2 = self.b * self.b + self.d * self.d;
        let tol = 1e-9 * col1.max(col2);
        let det = self.determinant();
        det != 0.0 && (col1 - col2).abs() <= tol && (self.a * self.b + self.c * self.d).abs() <= tol
    }

    pub fn is_mirror(&self) -> bool {
        self.determinant() < 0.0
    }

    /// Uniform scale of the linear part; unit scales within 1e-12 snap to exactly 1.
    pub fn scale_factor(&self) -> f64 {
        let s = libm::sqrt(self.determinant().abs());
        if (s - 1.0).abs() <= 1e-12 {
            1.0
        } else {
            s
        }
    }

    /// Direction of the image of the x axis, in degrees.
    pub fn rotation_deg(&self) -> f64 {
        atan2_deg(self.c, self.a)
    }

    /// Image of the direction `deg` under the linear part.
    pub fn map_direction(&self, deg: f64) -> f64 {
        let phi = self.rotation_deg();
        if self.is_mirror() {
            normalize_deg(phi - deg)
        } else {
            normalize_deg(phi + deg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(x1: f64, y1: f64, x2: f64, y2: f64) -> Element {
        Element::segment(Point::new(x1, y1), Point::new(x2, y2), LineStyle::SOLID)
    }

    #[test]
    fn bbox_examples() {
        let c = Element::circle(Point::new(10.0, 10.0), 5.0, LineStyle::SOLID);
        assert_eq!(c.bbox(), Rect::from_coords(5.0, 5.0, 15.0, 15.0));
        assert_eq!(seg(0.0, 0.0, 3.0, 4.0).bbox(), Rect::from_coords(0.0, 0.0, 3.0, 4.0));
        let a = Element::arc(Point::ORIGIN, 10.0, 0.0, 90.0, LineStyle::SOLID);
        assert_eq!(a.bbox(), Rect::from_coords(0.0, 0.0, 10.0, 10.0));
    }

    #[test]
    fn wrapping_arc_bbox_includes_cardinal() {
        let a = Element::arc(Point::ORIGIN, 1.0, 315.0, 45.0, LineStyle::SOLID);
        let b = a.bbox();
        assert_eq!(b.max.x, 1.0);
        assert!((b.min.x - libm::sqrt(0.5)).abs() < 1e-12);
    }

    #[test]
    fn text_bbox_uses_monospace_width() {
        let t = Element::text(Point::new(1.0, 2.0), 2.0, 0.0, "abcd", LineStyle::SOLID);
        assert_eq!(t.bbox(), Rect::from_coords(1.0, 2.0, 1.0 + 4.8, 4.0));
        let r = Element::text(Point::ORIGIN, 2.0, 90.0, "ab", LineStyle::SOLID);
        let b = r.bbox();
        assert_eq!((b.min.x, b.max.x, b.min.y, b.max.y), (-2.0, 0.0, 0.0, 2.4));
    }

    #[test]
    fn transform_examples() {
        let r = seg(1.0, 0.0, 2.0, 0.0).transformed(&Transform::rotate(90.0)).unwrap();
        assert_eq!(r, seg(0.0, 1.0, 0.0, 2.0));
        let c = Element::circle(Point::new(1.0, 1.0), 2.0, LineStyle::SOLID);
        assert_eq!(
            c.transformed(&Transform::scale(2.0)).unwrap(),
            Element::circle(Point::new(2.0, 2.0), 4.0, LineStyle::SOLID)
        );
        let a = Element::arc(Point::new(3.0, -1.0), 2.0, 10.0, 200.0, LineStyle::THIN);
        assert_eq!(a.transformed(&Transform::IDENTITY).unwrap(), a);
    }

    #[test]
    fn non_conformal_rejected() {
        let shear = Transform {
            b: 0.5,
            ..Transform::IDENTITY
        };
        assert_eq!(
            seg(0.0, 0.0, 1.0, 1.0).transformed(&shear),
            Err(GeometryError::NonConformal)
        );
        let stretch = Transform {
            a: 2.0,
            ..Transform::IDENTITY
        };
        assert!(!stretch.is_conformal());
        assert!(Transform::mirror_x().then(&Transform::scale(3.0)).is_conformal());
    }

    #[test]
    fn mirrored_arc_keeps_its_points() {
        let a = Element::arc(Point::ORIGIN, 1.0, 0.0, 90.0, LineStyle::SOLID);
        let m = a.transformed(&Transform::mirror_x()).unwrap();
        match m {
            Element::Arc {
                start_angle, end_angle, ..
            } => {
                assert_eq!(start_angle, 270.0);
                assert_eq!(end_angle, 0.0);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn snap_examples() {
        assert_eq!(
            seg(0.0, 0.0, 10.0, 0.0).snap_points(),
            vec![Point::new(0.0, 0.0), Point::new(10.0, 0.0), Point::new(5.0, 0.0)]
        );
        let c = Element::circle(Point::ORIGIN, 1.0, LineStyle::SOLID);
        assert_eq!(
            c.snap_points(),
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(-1.0, 0.0),
                Point::new(0.0, -1.0)
            ]
        );
        let t = Element::text(Point::new(3.0, 3.0), 1.0, 0.0, "x", LineStyle::SOLID);
        assert_eq!(t.snap_points(), vec![Point::new(3.0, 3.0)]);
    }

    #[test]
    fn validation() {
        assert!(Element::polyline(vec![Point::ORIGIN], false, LineStyle::SOLID)
            .validate()
            .is_err());
        assert!(Element::circle(Point::ORIGIN, 0.0, LineStyle::SOLID)
            .validate()
            .is_err());
        assert!(Element::arc(Point::ORIGIN, 1.0, 30.0, 390.0, LineStyle::SOLID)
            .validate()
            .is_err());
        assert!(Element::text(Point::ORIGIN, 0.0, 0.0, "a", LineStyle::SOLID)
            .validate()
            .is_err());
        assert!(seg(0.0, f64::NAN, 1.0, 1.0).validate().is_err());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let t = Transform::rotate_about(Point::new(3.0, 4.0), 33.0)
            .then(&Transform::mirror_across(Point::new(1.0, -2.0), 12.0))
            .then(&Transform::scale(2.5));
        let p = Point::new(7.0, -3.0);
        let back = t.inverse().unwrap().apply(t.apply(p));
        assert!(back.distance(p) < 1e-12);
    }
}
