//! Placement parameters shared by every module type and the symmetry reduction.

use crate::angle::normalize_deg;
use crate::geometry::{Point, Transform};
use crate::props::{PropertyValue, Props};

/// Declared mirror symmetry of a symbol, in its local frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Symmetry {
    #[default]
    None,
    /// Invariant under `y -> -y`.
    MirrorX,
    /// Invariant under `x -> -x`.
    MirrorY,
    Both,
}

impl Symmetry {
    pub fn parse(s: &str) -> Option<Symmetry> {
        match s {
            "none" => Some(Symmetry::None),
            "mirror_x" => Some(Symmetry::MirrorX),
            "mirror_y" => Some(Symmetry::MirrorY),
            "both" => Some(Symmetry::Both),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Symmetry::None => "none",
            Symmetry::MirrorX => "mirror_x",
            Symmetry::MirrorY => "mirror_y",
            Symmetry::Both => "both",
        }
    }
}

/// Local frame of a module: `translate(origin) · rotate(angle) · mirror_x? · scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub origin: Point,
    pub angle_deg: f64,
    pub mirrored: bool,
    pub scale: f64,
}

impl Default for Placement {
    fn default() -> Self {
        Placement {
            origin: Point::ORIGIN,
            angle_deg: 0.0,
            mirrored: false,
            scale: 1.0,
        }
    }
}

impl Placement {
    pub fn from_props(props: &Props) -> Placement {
        let d = Placement::default();
        Placement {
            origin: props
                .get("origin")
                .and_then(PropertyValue::as_point)
                .unwrap_or(d.origin),
            angle_deg: props
                .get("angle_deg")
                .and_then(PropertyValue::as_number)
                .unwrap_or(d.angle_deg),
            mirrored: props
                .get("mirrored")
                .and_then(PropertyValue::as_bool)
                .unwrap_or(d.mirrored),
            scale: props.get("scale").and_then(PropertyValue::as_number).unwrap_or(d.scale),
        }
    }

    /// Writes origin, angle and mirror flag back; `scale` only when the schema has it.
    pub fn write(&self, props: &mut Props) {
        props.insert("origin".into(), PropertyValue::Point(self.origin));
        props.insert("angle_deg".into(), PropertyValue::Real(normalize_deg(self.angle_deg)));
        props.insert("mirrored".into(), PropertyValue::Boolean(self.mirrored));
        if props.contains_key("scale") {
            props.insert("scale".into(), PropertyValue::Real(self.scale));
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Placement::default()
    }

    pub fn transform(&self) -> Transform {
        let mut t = Transform::scale(self.scale);
        if self.mirrored {
            t = t.then(&Transform::mirror_x());
        }
        t.then(&Transform::rotate(self.angle_deg))
            .then(&Transform::translate(self.origin.x, self.origin.y))
    }

    /// Representative placement producing the same figure for a symbol with
    /// the given symmetry.
    pub fn canonical(self, sym: Symmetry) -> Placement {
        let mut p = self;
        match sym {
            Symmetry::None => {}
            Symmetry::MirrorX => p.mirrored = false,
            Symmetry::MirrorY => {
                if p.mirrored {
                    p.mirrored = false;
                    p.angle_deg += 180.0;
                }
            }
            Symmetry::Both => {
                p.mirrored = false;
                p.angle_deg = normalize_deg(p.angle_deg) % 180.0;
            }
        }
        p.angle_deg = normalize_deg(p.angle_deg);
        p
    }

    pub fn moved(self, d: Point) -> Placement {
        if d == Point::ORIGIN {
            return self;
        }
        Placement {
            origin: self.origin + d,
            ..self
        }
    }

    pub fn rotated(self, about: Point, deg: f64) -> Placement {
        if normalize_deg(deg) == 0.0 {
            return self;
        }
        Placement {
            origin: Transform::rotate_about(about, deg).apply(self.origin),
            angle_deg: normalize_deg(self.angle_deg + deg),
            ..self
        }
    }

    /// Reflection across the line through `axis_point` at `axis_deg`.
    pub fn mirrored_across(self, axis_point: Point, axis_deg: f64) -> Placement {
        Placement {
            origin: Transform::mirror_across(axis_point, axis_deg).apply(self.origin),
            angle_deg: normalize_deg(2.0 * axis_deg - self.angle_deg),
            mirrored: !self.mirrored,
            scale: self.scale,
        }
    }

    pub fn scaled(self, about: Point, k: f64) -> Placement {
        if k == 1.0 {
            return self;
        }
        Placement {
            origin: about + (self.origin - about) * k,
            scale: self.scale * k,
            ..self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edits_compose_like_transforms() {
        let p = Placement {
            origin: Point::new(3.0, -2.0),
            angle_deg: 30.0,
            mirrored: false,
            scale: 1.5,
        };
        let probe = Point::new(1.25, 0.75);
        let axis_point = Point::new(-4.0, 1.0);
        let cases = [
            (p.moved(Point::new(2.0, 5.0)), Transform::translate(2.0, 5.0)),
            (p.rotated(axis_point, 71.0), Transform::rotate_about(axis_point, 71.0)),
            (
                p.mirrored_across(axis_point, 20.0),
                Transform::mirror_across(axis_point, 20.0),
            ),
            (p.scaled(axis_point, 2.0), Transform::scale_about(axis_point, 2.0)),
        ];
        for (edited, t) in cases {
            let expect = t.apply(p.transform().apply(probe));
            let got = edited.transform().apply(probe);
            assert!(got.distance(expect) < 1e-9, "{got:?} vs {expect:?}");
        }
    }

    #[test]
    fn symmetry_reduction_preserves_symmetric_figures() {
        let p = Placement {
            mirrored: true,
            angle_deg: 200.0,
            ..Placement::default()
        };
        assert_eq!(p.canonical(Symmetry::MirrorY).angle_deg, 20.0);
        assert!(!p.canonical(Symmetry::MirrorX).mirrored);
        assert_eq!(p.canonical(Symmetry::Both).angle_deg, 20.0);
        assert_eq!(p.canonical(Symmetry::None), p);
    }
}
