//! Module types, property values and the per-type allowed property sets.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleTypeId {
    User,
    Pipeline,
    Valve,
    Instrument,
    Table,
    Frame,
    Posdes,
    Lightning,
    Signature,
}

impl ModuleTypeId {
    pub const ALL: [ModuleTypeId; 9] = [
        ModuleTypeId::User,
        ModuleTypeId::Pipeline,
        ModuleTypeId::Valve,
        ModuleTypeId::Instrument,
        ModuleTypeId::Table,
        ModuleTypeId::Frame,
        ModuleTypeId::Posdes,
        ModuleTypeId::Lightning,
        ModuleTypeId::Signature,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModuleTypeId::User => "user",
            ModuleTypeId::Pipeline => "pipeline",
            ModuleTypeId::Valve => "valve",
            ModuleTypeId::Instrument => "instrument",
            ModuleTypeId::Table => "table",
            ModuleTypeId::Frame => "frame",
            ModuleTypeId::Posdes => "posdes",
            ModuleTypeId::Lightning => "lightning",
            ModuleTypeId::Signature => "signature",
        }
    }

    pub fn parse(s: &str) -> Option<ModuleTypeId> {
        ModuleTypeId::ALL.into_iter().find(|t| t.as_str() == s)
    }

    /// Types whose properties feed specification rows.
    pub fn is_specified(self) -> bool {
        matches!(
            self,
            ModuleTypeId::Valve | ModuleTypeId::Instrument | ModuleTypeId::Posdes
        )
    }
}

impl fmt::Display for ModuleTypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A stored attach axis: origin and direction in the module's local frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub origin: Point,
    pub angle_deg: f64,
}

impl Axis {
    pub const fn new(origin: Point, angle_deg: f64) -> Self {
        Axis { origin, angle_deg }
    }
}

pub type Record = BTreeMap<String, PropertyValue>;

#[derive(Debug, Clone, PartialEq)]
pub enum PropertyValue {
    Text(String),
    Real(f64),
    Integer(i64),
    Boolean(bool),
    Point(Point),
    PointList(Vec<Point>),
    AxisList(Vec<Axis>),
    Record(Record),
    RecordList(Vec<Record>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Text,
    Real,
    Integer,
    Boolean,
    Point,
    PointList,
    AxisList,
    Record,
    RecordList,
}

impl ValueKind {
    pub const ALL: [ValueKind; 9] = [
        ValueKind::Text,
        ValueKind::Real,
        ValueKind::Integer,
        ValueKind::Boolean,
        ValueKind::Point,
        ValueKind::PointList,
        ValueKind::AxisList,
        ValueKind::Record,
        ValueKind::RecordList,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ValueKind::Text => "text",
            ValueKind::Real => "real",
            ValueKind::Integer => "integer",
            ValueKind::Boolean => "boolean",
            ValueKind::Point => "point",
            ValueKind::PointList => "point_list",
            ValueKind::AxisList => "axis_list",
            ValueKind::Record => "record",
            ValueKind::RecordList => "record_list",
        }
    }

    pub fn parse(s: &str) -> Option<ValueKind> {
        ValueKind::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

impl PropertyValue {
    pub fn kind(&self) -> ValueKind {
        match self {
            PropertyValue::Text(_) => ValueKind::Text,
            PropertyValue::Real(_) => ValueKind::Real,
            PropertyValue::Integer(_) => ValueKind::Integer,
            PropertyValue::Boolean(_) => ValueKind::Boolean,
            PropertyValue::Point(_) => ValueKind::Point,
            PropertyValue::PointList(_) => ValueKind::PointList,
            PropertyValue::AxisList(_) => ValueKind::AxisList,
            PropertyValue::Record(_) => ValueKind::Record,
            PropertyValue::RecordList(_) => ValueKind::RecordList,
        }
    }

    pub fn text(s: impl Into<String>) -> PropertyValue {
        PropertyValue::Text(s.into())
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            PropertyValue::Text(s) => Some(s),
            _ => None,
        }
    }

    /// Reals and integers both read as numbers.
    pub fn as_number(&self) -> Option<f64> {
        match self {
            PropertyValue::Real(v) => Some(*v),
            PropertyValue::Integer(v) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self {
            PropertyValue::Integer(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            PropertyValue::Boolean(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_point(&self) -> Option<Point> {
        match self {
            PropertyValue::Point(p) => Some(*p),
            _ => None,
        }
    }

    /// True when every real and coordinate inside is finite.
    pub fn is_finite(&self) -> bool {
        match self {
            PropertyValue::Text(_) | PropertyValue::Integer(_) | PropertyValue::Boolean(_) => true,
            PropertyValue::Real(v) => v.is_finite(),
            PropertyValue::Point(p) => p.is_finite(),
            PropertyValue::PointList(ps) => ps.iter().all(|p| p.is_finite()),
            PropertyValue::AxisList(axes) => axes.iter().all(|a| a.origin.is_finite() && a.angle_deg.is_finite()),
            PropertyValue::Record(r) => r.values().all(PropertyValue::is_finite),
            PropertyValue::RecordList(rs) => rs.iter().all(|r| r.values().all(PropertyValue::is_finite)),
        }
    }
}

/// One entry of a type's allowed property set.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyDef {
    pub key: &'static str,
    pub kind: ValueKind,
    pub required: bool,
    pub default: Option<PropertyValue>,
    /// Closed set of permitted text values, if any.
    pub allowed: Option<&'static [&'static str]>,
}

/// Ordered allowed-property set of a module type.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertySchema {
    pub module_type: ModuleTypeId,
    pub defs: Vec<PropertyDef>,
}

impl PropertySchema {
    pub fn get(&self, key: &str) -> Option<&PropertyDef> {
        self.defs.iter().find(|d| d.key == key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.defs.iter().map(|d| d.key)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.get(key).is_some()
    }
}

/// Property keys present in every schema; edits rewrite these and regenerate.
pub const PLACEMENT_KEYS: [&str; 4] = ["layer", "origin", "angle_deg", "mirrored"];

pub const SYMMETRY_CODES: &[&str] = &["none", "mirror_x", "mirror_y", "both"];
pub const CORNER_KINDS: &[&str] = &["welded", "bent"];
pub const TABLE_PRESETS: &[&str] = &["custom", "kipia"];
pub const FRAME_FORMATS: &[&str] = &["A4", "A3", "A2", "A1", "A0"];
pub const ZONE_CLASSES: &[&str] = &["A", "B"];
pub const KIP_LINE_TYPES: &[&str] = &["", "solid", "dashed", "dash_dot", "thin_solid"];

/// Valve symbol half-length along the flow, mm.
pub const VALVE_LENGTH: f64 = 4.0;

fn def(key: &'static str, kind: ValueKind, default: PropertyValue) -> PropertyDef {
    PropertyDef {
        key,
        kind,
        required: false,
        default: Some(default),
        allowed: None,
    }
}

fn required(key: &'static str, kind: ValueKind) -> PropertyDef {
    PropertyDef {
        key,
        kind,
        required: true,
        default: None,
        allowed: None,
    }
}

fn choice(key: &'static str, allowed: &'static [&'static str], default: &str) -> PropertyDef {
    PropertyDef {
        key,
        kind: ValueKind::Text,
        required: false,
        default: Some(PropertyValue::text(default)),
        allowed: Some(allowed),
    }
}

fn text(key: &'static str) -> PropertyDef {
    def(key, ValueKind::Text, PropertyValue::Text(String::new()))
}

fn real(key: &'static str, v: f64) -> PropertyDef {
    def(key, ValueKind::Real, PropertyValue::Real(v))
}

fn axes(key: &'static str, list: Vec<Axis>) -> PropertyDef {
    def(key, ValueKind::AxisList, PropertyValue::AxisList(list))
}

fn placement() -> [PropertyDef; 4] {
    [
        def("layer", ValueKind::Integer, PropertyValue::Integer(0)),
        def("origin", ValueKind::Point, PropertyValue::Point(Point::ORIGIN)),
        real("angle_deg", 0.0),
        def("mirrored", ValueKind::Boolean, PropertyValue::Boolean(false)),
    ]
}

/// Property keys copied from catalog entries and mapped into specification rows.
pub const SPEC_TEXT_KEYS: [&str; 9] = [
    "designation",
    "name",
    "type_mark",
    "unit",
    "unit_code",
    "manufacturer_code",
    "item_code",
    "name_tech",
    "note",
];

/// The allowed property set for a module type.
pub fn schema_for(module_type: ModuleTypeId) -> PropertySchema {
    use ValueKind as K;
    let mut defs: Vec<PropertyDef> = match module_type {
        ModuleTypeId::User => vec![
            axes("attach", Vec::new()),
            choice("symmetry", SYMMETRY_CODES, "none"),
            text("comment"),
            required("elements", K::RecordList),
            real("scale", 1.0),
        ],
        ModuleTypeId::Pipeline => vec![
            text("comment"),
            required("path", K::PointList),
            required("diameter_mm", K::Real),
            choice("corner", CORNER_KINDS, "welded"),
            real("fillet_radius", 0.0),
            def("show_centerline", K::Boolean, PropertyValue::Boolean(true)),
        ],
        ModuleTypeId::Valve => vec![
            axes(
                "attach",
                vec![
                    Axis::new(Point::new(-VALVE_LENGTH, 0.0), 0.0),
                    Axis::new(Point::new(VALVE_LENGTH, 0.0), 0.0),
                ],
            ),
            choice("symmetry", SYMMETRY_CODES, "none"),
            text("comment"),
            real("face_to_face", 0.0),
            text("designation"),
            text("name"),
            real("mass", 0.0),
            text("note"),
            def("dy", K::Integer, PropertyValue::Integer(0)),
            real("py", 0.0),
        ],
        ModuleTypeId::Instrument => vec![
            axes("attach", vec![Axis::new(Point::ORIGIN, 0.0)]),
            def("carrier_geometry", K::PointList, PropertyValue::PointList(Vec::new())),
            text("pos_designation"),
            text("designation"),
            text("name"),
            real("mass", 0.0),
            text("note"),
            text("type_mark"),
            text("unit"),
            text("unit_code"),
            text("manufacturer_code"),
            text("item_code"),
            real("price", 0.0),
            text("name_tech"),
            def("on_board", K::Boolean, PropertyValue::Boolean(false)),
            required("function_code", K::Text),
            text("upper_index"),
            text("lower_index"),
            text("comment"),
            choice("kip_line_type", KIP_LINE_TYPES, ""),
        ],
        ModuleTypeId::Table => vec![
            text("comment"),
            choice("preset", TABLE_PRESETS, "custom"),
            def("top_left", K::Point, PropertyValue::Point(Point::ORIGIN)),
            def("columns", K::RecordList, PropertyValue::RecordList(Vec::new())),
            real("row_height_mm", 8.0),
            real("header_height_mm", 15.0),
            def("rows", K::RecordList, PropertyValue::RecordList(Vec::new())),
        ],
        ModuleTypeId::Frame => vec![
            choice("format", FRAME_FORMATS, "A4"),
            def("landscape", K::Boolean, PropertyValue::Boolean(false)),
            def("multiplicity", K::Integer, PropertyValue::Integer(1)),
        ],
        ModuleTypeId::Posdes => vec![
            choice("posdes_kind", &["leader"], "leader"),
            text("object_kind"),
            def("leader_from", K::Point, PropertyValue::Point(Point::ORIGIN)),
            required("shelf_at", K::Point),
            required("position_text", K::Text),
            def("spec_props", K::Record, PropertyValue::Record(Record::new())),
        ],
        ModuleTypeId::Lightning => vec![
            text("comment"),
            required("rods", K::RecordList),
            def("section_heights", K::RecordList, PropertyValue::RecordList(Vec::new())),
            PropertyDef {
                allowed: Some(ZONE_CLASSES),
                ..required("zone_class", K::Text)
            },
            real("scale_mm_per_m", 1.0),
            def("plan_origin", K::Point, PropertyValue::Point(Point::ORIGIN)),
        ],
        ModuleTypeId::Signature => vec![
            required("person", K::Text),
            text("position"),
            text("password"),
            required("date", K::Text),
            required("time", K::Text),
            text("digest"),
            text("mac"),
        ],
    };
    defs.extend(placement());
    PropertySchema { module_type, defs }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("property `{key}`: {reason}")]
pub struct SchemaViolation {
    pub key: String,
    pub reason: String,
}

impl SchemaViolation {
    pub fn new(key: impl Into<String>, reason: impl Into<String>) -> Self {
        SchemaViolation {
            key: key.into(),
            reason: reason.into(),
        }
    }
}

pub type Props = BTreeMap<String, PropertyValue>;

/// Checks `props` against the type's schema and fills defaults.
///
/// The result holds every schema key that is required or has a default.
pub fn normalize_props(module_type: ModuleTypeId, props: &Props) -> Result<Props, SchemaViolation> {
    let schema = schema_for(module_type);
    for (key, value) in props {
        let def = schema
            .get(key)
            .ok_or_else(|| SchemaViolation::new(key.as_str(), "unknown property for this module type"))?;
        if value.kind() != def.kind {
            return Err(SchemaViolation::new(
                key.as_str(),
                alloc::format!("expected {}, got {}", def.kind.as_str(), value.kind().as_str()),
            ));
        }
        if !value.is_finite() {
            return Err(SchemaViolation::new(key.as_str(), "non-finite number"));
        }
        if let (Some(allowed), PropertyValue::Text(s)) = (def.allowed, value) {
            if !allowed.contains(&s.as_str()) {
                return Err(SchemaViolation::new(
                    key.as_str(),
                    alloc::format!("`{s}` is not one of {allowed:?}"),
                ));
            }
        }
    }
    let mut out = Props::new();
    for def in &schema.defs {
        match (props.get(def.key), &def.default) {
            (Some(v), _) => {
                out.insert(def.key.to_string(), v.clone());
            }
            (None, Some(d)) => {
                out.insert(def.key.to_string(), d.clone());
            }
            (None, None) => {
                if def.required {
                    return Err(SchemaViolation::new(def.key, "required property missing"));
                }
            }
        }
    }
    Ok(out)
}

const KEY_TABLE: &str = include_str!("../data/property_keys.tsv");

/// `(canonical key, form name)` pairs from the bundled mapping table.
pub fn key_names() -> impl Iterator<Item = (&'static str, &'static str)> {
    KEY_TABLE
        .lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.split_once('\t'))
}

/// Form (Russian) name of a canonical property key.
pub fn form_name(key: &str) -> Option<&'static str> {
    key_names().find(|(k, _)| *k == key).map(|(_, n)| n)
}
