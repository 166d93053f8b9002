//! Protection zones of single vertical lightning rods and the lightning-protection module.
//!
//! A single rod of height `h` protects a cone with apex height `h0` and
//! ground radius `r0`; the horizontal section at height `hx` has radius
//! `rx = r0 · (1 − hx / h0)`.
//!
//! | class | h0      | r0                  |
//! |-------|---------|---------------------|
//! | A     | 0.85·h  | (1.1 − 0.002·h)·h   |
//! | B     | 0.92·h  | 1.5·h               |
//!
//! Valid for rods up to 150 m. Several rods protect the union of their cones;
//! the widened joint zone between close rods is not modelled.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::generators::{record_number, Generated, GenerationError, InternalList, Reader};
use crate::geometry::{Element, LineStyle, Point};
use crate::placement::Symmetry;
use crate::props::{PropertyValue, Props, Record};

pub const MAX_ROD_HEIGHT: f64 = 150.0;
/// Rod marker cross size in paper millimetres.
pub const ROD_MARKER_SIZE: f64 = 3.0;
const LABEL_HEIGHT: f64 = 2.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZoneClass {
    A,
    B,
}

impl ZoneClass {
    pub fn parse(s: &str) -> Option<ZoneClass> {
        match s {
            "A" => Some(ZoneClass::A),
            "B" => Some(ZoneClass::B),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ZoneClass::A => "A",
            ZoneClass::B => "B",
        }
    }

    fn apex_ratio(self) -> f64 {
        match self {
            ZoneClass::A => 0.85,
            ZoneClass::B => 0.92,
        }
    }

    fn radius_ratio(self, h: f64) -> f64 {
        match self {
            ZoneClass::A => 1.1 - 0.002 * h,
            ZoneClass::B => 1.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LightningError {
    #[error("no protection at height {hx} m: zone apex of a {h} m rod is {h0} m")]
    NoProtectionAtHeight { h: f64, hx: f64, h0: f64 },
    #[error("rod height {h} m is outside the method range (0, 150] m")]
    OutOfMethodRange { h: f64 },
    #[error("invalid lightning parameters: {0}")]
    Invalid(&'static str),
}

/// A vertical rod at plan position `(x, y)` of height `h`, metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rod {
    pub x: f64,
    pub y: f64,
    pub h: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LightningParams {
    pub rods: Vec<Rod>,
    pub section_heights: Vec<f64>,
    pub zone_class: ZoneClass,
    pub scale_mm_per_m: f64,
    pub plan_origin: Point,
}

fn check_height(h: f64) -> Result<(), LightningError> {
    if !h.is_finite() || h <= 0.0 || h > MAX_ROD_HEIGHT {
        return Err(LightningError::OutOfMethodRange { h });
    }
    Ok(())
}

/// Apex height `h0` and ground radius `r0` of a single-rod zone.
pub fn zone_cone(h: f64, class: ZoneClass) -> Result<(f64, f64), LightningError> {
    check_height(h)?;
    Ok((class.apex_ratio() * h, class.radius_ratio(h) * h))
}

/// Radius of the horizontal zone section at height `hx`.
pub fn single_rod_radius(h: f64, hx: f64, class: ZoneClass) -> Result<f64, LightningError> {
    let (h0, _) = zone_cone(h, class)?;
    if !hx.is_finite() || hx < 0.0 {
        return Err(LightningError::Invalid("section height must be a finite value >= 0"));
    }
    // the apex is computed through an inexact ratio; heights within rounding of it count as the apex
    if hx >= h0 - 1e-12 * h0.max(1.0) {
        return Err(LightningError::NoProtectionAtHeight { h, hx, h0 });
    }
    let k = class.apex_ratio();
    Ok(class.radius_ratio(h) * (h - hx / k))
}

/// Zone section of one rod, world metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Section {
    pub rod_index: usize,
    pub center: Point,
    pub radius: f64,
}

/// One section circle per rod whose zone reaches `hx`.
pub fn zone_sections(params: &LightningParams, hx: f64) -> Vec<Section> {
    params
        .rods
        .iter()
        .enumerate()
        .filter_map(|(i, rod)| {
            single_rod_radius(rod.h, hx, params.zone_class)
                .ok()
                .map(|radius| Section {
                    rod_index: i,
                    center: Point::new(rod.x, rod.y),
                    radius,
                })
        })
        .collect()
}

/// Whether the point `(x, y, z)` lies inside the union of the rod zones.
pub fn is_protected(x: f64, y: f64, z: f64, params: &LightningParams) -> bool {
    params
        .rods
        .iter()
        .any(|rod| match single_rod_radius(rod.h, z, params.zone_class) {
            Ok(rx) => Point::new(x - rod.x, y - rod.y).length() <= rx,
            Err(_) => false,
        })
}

impl LightningParams {
    pub fn validate(&self) -> Result<(), LightningError> {
        if self.rods.is_empty() {
            return Err(LightningError::Invalid("at least one rod is required"));
        }
        for rod in &self.rods {
            if !(rod.x.is_finite() && rod.y.is_finite()) {
                return Err(LightningError::Invalid("rod position must be finite"));
            }
            check_height(rod.h)?;
        }
        if self.section_heights.iter().any(|h| !h.is_finite() || *h < 0.0) {
            return Err(LightningError::Invalid("section heights must be finite and >= 0"));
        }
        if self.section_heights.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LightningError::Invalid(
                "section heights must be distinct and ascending",
            ));
        }
        if !(self.scale_mm_per_m > 0.0 && self.scale_mm_per_m.is_finite()) {
            return Err(LightningError::Invalid("scale must be positive"));
        }
        Ok(())
    }

    /// Reads the parameters from a normalized lightning property set.
    pub fn from_props(props: &Props) -> Result<LightningParams, GenerationError> {
        let r = Reader(props);
        let rods = r
            .records("rods")
            .iter()
            .map(|rec| {
                Ok(Rod {
                    x: record_number(rec, "x", "rods")?,
                    y: record_number(rec, "y", "rods")?,
                    h: record_number(rec, "h", "rods")?,
                })
            })
            .collect::<Result<Vec<_>, GenerationError>>()?;
        let section_heights = r
            .records("section_heights")
            .iter()
            .map(|rec| record_number(rec, "hx", "section_heights"))
            .collect::<Result<Vec<_>, _>>()?;
        let zone_class = ZoneClass::parse(r.text("zone_class"))
            .ok_or_else(|| GenerationError::invalid("zone_class", "must be A or B"))?;
        let params = LightningParams {
            rods,
            section_heights,
            zone_class,
            scale_mm_per_m: r.real("scale_mm_per_m"),
            plan_origin: r.point("plan_origin"),
        };
        params.validate()?;
        Ok(params)
    }

    /// Property records for `rods` and `section_heights`.
    pub fn to_records(&self) -> (Vec<Record>, Vec<Record>) {
        let rods = self
            .rods
            .iter()
            .map(|rod| {
                let mut r = Record::new();
                r.insert("x".into(), PropertyValue::Real(rod.x));
                r.insert("y".into(), PropertyValue::Real(rod.y));
                r.insert("h".into(), PropertyValue::Real(rod.h));
                r
            })
            .collect();
        let heights = self
            .section_heights
            .iter()
            .map(|hx| {
                let mut r = Record::new();
                r.insert("hx".into(), PropertyValue::Real(*hx));
                r
            })
            .collect();
        (rods, heights)
    }

    fn to_paper(&self, p: Point) -> Point {
        self.plan_origin + p * self.scale_mm_per_m
    }
}

/// Label text of a section radius in metres.
pub fn radius_label(radius_m: f64) -> String {
    alloc::format!("R={radius_m:.2}")
}

/// Plan view: rod crosses, then section circles ordered by section height and
/// rod index, then one radius label per circle.
///
/// Internal lists: `rods` (cross segments per rod) and `radius_dimensions`
/// (label per circle, same order as the circles).
pub fn gen_lightning(props: &Props) -> Result<Generated, GenerationError> {
    let params = LightningParams::from_props(props)?;
    let half = ROD_MARKER_SIZE / 2.0;
    let mut out = Vec::new();
    let mut rod_slices = Vec::with_capacity(params.rods.len());
    for rod in &params.rods {
        let c = params.to_paper(Point::new(rod.x, rod.y));
        let start = out.len();
        out.push(Element::segment(
            c + Point::new(-half, -half),
            c + Point::new(half, half),
            LineStyle::SOLID,
        ));
        out.push(Element::segment(
            c + Point::new(-half, half),
            c + Point::new(half, -half),
            LineStyle::SOLID,
        ));
        rod_slices.push(start..out.len());
    }
    let mut sections = Vec::new();
    for hx in &params.section_heights {
        sections.extend(zone_sections(&params, *hx));
    }
    for s in &sections {
        out.push(Element::circle(
            params.to_paper(s.center),
            s.radius * params.scale_mm_per_m,
            LineStyle::THIN,
        ));
    }
    let diag = Point::from_angle(45.0);
    let mut label_slices = Vec::with_capacity(sections.len());
    for s in &sections {
        let at = params.to_paper(s.center) + diag * (s.radius * params.scale_mm_per_m);
        label_slices.push(out.len()..out.len() + 1);
        out.push(Element::text(
            at,
            LABEL_HEIGHT,
            0.0,
            radius_label(s.radius),
            LineStyle::THIN,
        ));
    }
    let r = Reader(props);
    Ok(Generated {
        elements: crate::generators::place(out, r.placement(), Symmetry::None)?,
        lists: vec![
            InternalList {
                name: "radius_dimensions",
                slices: label_slices,
            },
            InternalList {
                name: "rods",
                slices: rod_slices,
            },
        ],
    })
}
