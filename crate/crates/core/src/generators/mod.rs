//! Geometry generators: each maps a normalized property set to elements.
//!
//! Generators build the symbol in its local frame and then apply the
//! module placement, so editing placement and regenerating is the same as
//! transforming the previous geometry.

mod frame;
mod instrument;
mod pipeline;
mod posdes;
mod table;
mod user;
mod valve;

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

pub use frame::{frame_size, gen_frame, FrameFormat, FRAME_MARGINS, TITLE_BLOCK_SIZE};
pub use instrument::{gen_instrument, INSTRUMENT_RADIUS, INSTRUMENT_TEXT_HEIGHT};
pub use pipeline::gen_pipeline;
pub use posdes::{gen_posdes, SHELF_LENGTH};
pub use table::{effective_columns, gen_table, kipia_columns, row_record, ColumnSpec};
pub use user::{element_from_record, element_to_record, gen_user};
pub use valve::{gen_valve, VALVE_HALF_BASE};

use crate::geometry::{Element, GeometryError, LineStyle, LineType, Point};
use crate::lightning::LightningError;
use crate::placement::{Placement, Symmetry};
use crate::props::{ModuleTypeId, PropertyValue, Props, Record};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenerationError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Lightning(#[from] LightningError),
    #[error("property `{key}`: {reason}")]
    Invalid { key: String, reason: String },
}

impl GenerationError {
    pub fn invalid(key: impl Into<String>, reason: impl Into<String>) -> Self {
        GenerationError::Invalid {
            key: key.into(),
            reason: reason.into(),
        }
    }
}

/// Named list inside a parametric representation, with the element range
/// generated for each entry.
#[derive(Debug, Clone, PartialEq)]
pub struct InternalList {
    pub name: &'static str,
    pub slices: Vec<Range<usize>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Generated {
    pub elements: Vec<Element>,
    pub lists: Vec<InternalList>,
}

impl Generated {
    pub fn plain(elements: Vec<Element>) -> Self {
        Generated {
            elements,
            lists: Vec::new(),
        }
    }

    pub fn list(&self, name: &str) -> Option<&InternalList> {
        self.lists.iter().find(|l| l.name == name)
    }
}

/// Names of the internal lists a module type exposes to working modules.
pub fn internal_lists(module_type: ModuleTypeId) -> &'static [&'static str] {
    match module_type {
        ModuleTypeId::Table => &["rows"],
        ModuleTypeId::Lightning => &["radius_dimensions", "rods"],
        _ => &[],
    }
}

/// Runs the generator of `module_type` on normalized properties.
pub fn generate(module_type: ModuleTypeId, props: &Props) -> Result<Generated, GenerationError> {
    match module_type {
        ModuleTypeId::User => gen_user(props).map(Generated::plain),
        ModuleTypeId::Pipeline => gen_pipeline(props).map(Generated::plain),
        ModuleTypeId::Valve => gen_valve(props).map(Generated::plain),
        ModuleTypeId::Instrument => gen_instrument(props).map(Generated::plain),
        ModuleTypeId::Table => gen_table(props),
        ModuleTypeId::Frame => gen_frame(props).map(Generated::plain),
        ModuleTypeId::Posdes => gen_posdes(props).map(Generated::plain),
        ModuleTypeId::Lightning => crate::lightning::gen_lightning(props),
        ModuleTypeId::Signature => crate::integrity::gen_signature(props).map(Generated::plain),
    }
}

/// Typed read access over a normalized property map; absent keys read as empty values.
#[derive(Clone, Copy)]
pub(crate) struct Reader<'a>(pub &'a Props);

impl<'a> Reader<'a> {
    pub fn text(&self, key: &str) -> &'a str {
        self.0.get(key).and_then(PropertyValue::as_text).unwrap_or("")
    }

    pub fn real(&self, key: &str) -> f64 {
        self.0.get(key).and_then(PropertyValue::as_number).unwrap_or(0.0)
    }

    pub fn integer(&self, key: &str) -> i64 {
        self.0.get(key).and_then(PropertyValue::as_integer).unwrap_or(0)
    }

    pub fn boolean(&self, key: &str) -> bool {
        self.0.get(key).and_then(PropertyValue::as_bool).unwrap_or(false)
    }

    pub fn point(&self, key: &str) -> Point {
        self.0
            .get(key)
            .and_then(PropertyValue::as_point)
            .unwrap_or(Point::ORIGIN)
    }

    pub fn points(&self, key: &str) -> &'a [Point] {
        match self.0.get(key) {
            Some(PropertyValue::PointList(p)) => p,
            _ => &[],
        }
    }

    pub fn records(&self, key: &str) -> &'a [Record] {
        match self.0.get(key) {
            Some(PropertyValue::RecordList(r)) => r,
            _ => &[],
        }
    }

    pub fn symmetry(&self) -> Symmetry {
        Symmetry::parse(self.text("symmetry")).unwrap_or_default()
    }

    pub fn placement(&self) -> Placement {
        Placement::from_props(self.0)
    }
}

/// Numeric field of a record; integers are accepted where reals are expected.
pub(crate) fn record_number(r: &Record, field: &str, list: &str) -> Result<f64, GenerationError> {
    r.get(field)
        .and_then(PropertyValue::as_number)
        .filter(|v| v.is_finite())
        .ok_or_else(|| GenerationError::invalid(list, alloc::format!("entry needs a numeric `{field}`")))
}

/// Maps local-frame elements through the placement, reduced by the symbol's symmetry.
pub(crate) fn place(local: Vec<Element>, placement: Placement, sym: Symmetry) -> Result<Vec<Element>, GenerationError> {
    let p = placement.canonical(sym);
    if p.is_identity() {
        return Ok(local);
    }
    if !(p.scale > 0.0 && p.scale.is_finite()) {
        return Err(GenerationError::invalid("scale", "must be positive"));
    }
    let t = p.transform();
    local
        .iter()
        .map(|e| e.transformed(&t).map_err(GenerationError::from))
        .collect()
}

pub(crate) fn style_from_name(name: &str) -> Option<LineStyle> {
    LineType::parse(name).map(|t| LineStyle::new(t, 7))
}
