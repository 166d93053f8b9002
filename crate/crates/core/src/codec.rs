//! Canonical JSON encoding of drawings, prototype libraries and catalogs.
//!
//! Canonical form: UTF-8, object keys sorted by byte order, no whitespace,
//! reals written as the shortest decimal that round-trips, lists kept in
//! storage order. Property values are externally tagged with their kind.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde_json::{Map, Number, Value};

use crate::drawing::{Drawing, Item};
use crate::geometry::{Element, LineStyle, LineType, Point, Rect};
use crate::module::{create_module, Module, ModuleError};
use crate::placement::Placement;
use crate::props::{Axis, ModuleTypeId, PropertyValue, Props, Record};
use crate::speccing::{Catalog, CatalogEntry};
use crate::zone::{ZoneGrid, ZoneMask};

pub const FORMAT_VERSION: i64 = 1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CodecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version {0}")]
    UnsupportedVersion(i64),
    #[error("malformed file: {0}")]
    Format(String),
    #[error("module {id}: {source}")]
    Module { id: u64, source: ModuleError },
    #[error("module {id}: stored geometry does not match its properties ({what} differs)")]
    IntegrityMismatch { id: u64, what: &'static str },
    #[error("drawing is inconsistent: {0}")]
    Drawing(String),
    #[error("duplicate catalog id `{0}`")]
    DuplicateCatalogId(String),
    #[error("duplicate prototype name `{0}`")]
    DuplicatePrototypeName(String),
}

fn format_err(msg: impl Into<String>) -> CodecError {
    CodecError::Format(msg.into())
}

fn parse_error(e: serde_json::Error) -> CodecError {
    CodecError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

// ---------------------------------------------------------------------------
// Canonical writer

/// Serializes a JSON value canonically.
pub fn write_canonical(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => write_number(n, out),
        Value::String(s) => write_string(s, out),
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(x, out);
            }
            out.push(']');
        }
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_string(k, out);
                out.push(':');
                write_canonical(&m[k.as_str()], out);
            }
            out.push('}');
        }
    }
}

fn write_number(n: &Number, out: &mut String) {
    match n.as_f64() {
        Some(f) if n.is_f64() && f == 0.0 => out.push_str("0.0"),
        _ => out.push_str(&n.to_string()),
    }
}

fn write_string(s: &str, out: &mut String) {
    out.push_str(&serde_json::to_string(s).expect("strings always serialize"));
}

pub fn canonical_string(v: &Value) -> String {
    let mut s = String::new();
    write_canonical(v, &mut s);
    s
}

// ---------------------------------------------------------------------------
// Encoders

fn num(x: f64) -> Value {
    Number::from_f64(x + 0.0).map(Value::Number).unwrap_or(Value::Null)
}

fn obj<const N: usize>(fields: [(&str, Value); N]) -> Value {
    Value::Object(fields.into_iter().map(|(k, v)| (k.to_owned(), v)).collect())
}

fn tagged(tag: &str, v: Value) -> Value {
    obj([(tag, v)])
}

pub fn point_to_json(p: Point) -> Value {
    Value::Array(alloc::vec![num(p.x), num(p.y)])
}

pub fn rect_to_json(r: &Rect) -> Value {
    obj([("min", point_to_json(r.min)), ("max", point_to_json(r.max))])
}

fn style_to_json(s: LineStyle) -> Value {
    obj([
        ("line_type", Value::from(s.line_type.as_str())),
        ("color", Value::from(s.color)),
    ])
}

fn points_to_json(pts: &[Point]) -> Value {
    Value::Array(pts.iter().map(|p| point_to_json(*p)).collect())
}

pub fn element_to_json(e: &Element) -> Value {
    match e {
        Element::Segment { p1, p2, style } => tagged(
            "segment",
            obj([
                ("p1", point_to_json(*p1)),
                ("p2", point_to_json(*p2)),
                ("style", style_to_json(*style)),
            ]),
        ),
        Element::Polyline { points, closed, style } => tagged(
            "polyline",
            obj([
                ("points", points_to_json(points)),
                ("closed", Value::Bool(*closed)),
                ("style", style_to_json(*style)),
            ]),
        ),
        Element::Arc {
            center,
            radius,
            start_angle,
            end_angle,
            style,
        } => tagged(
            "arc",
            obj([
                ("center", point_to_json(*center)),
                ("radius", num(*radius)),
                ("start_angle", num(*start_angle)),
                ("end_angle", num(*end_angle)),
                ("style", style_to_json(*style)),
            ]),
        ),
        Element::Circle { center, radius, style } => tagged(
            "circle",
            obj([
                ("center", point_to_json(*center)),
                ("radius", num(*radius)),
                ("style", style_to_json(*style)),
            ]),
        ),
        Element::Text {
            anchor,
            height,
            angle,
            content,
            style,
        } => tagged(
            "text",
            obj([
                ("anchor", point_to_json(*anchor)),
                ("height", num(*height)),
                ("angle", num(*angle)),
                ("content", Value::from(content.as_str())),
                ("style", style_to_json(*style)),
            ]),
        ),
    }
}

pub fn elements_to_json(es: &[Element]) -> Value {
    Value::Array(es.iter().map(element_to_json).collect())
}

fn record_to_json(r: &Record) -> Value {
    Value::Object(r.iter().map(|(k, v)| (k.clone(), value_to_json(v))).collect())
}

pub fn value_to_json(v: &PropertyValue) -> Value {
    let kind = v.kind().as_str();
    let inner = match v {
        PropertyValue::Text(s) => Value::from(s.as_str()),
        PropertyValue::Real(x) => num(*x),
        PropertyValue::Integer(i) => Value::from(*i),
        PropertyValue::Boolean(b) => Value::Bool(*b),
        PropertyValue::Point(p) => point_to_json(*p),
        PropertyValue::PointList(ps) => points_to_json(ps),
        PropertyValue::AxisList(axes) => Value::Array(
            axes.iter()
                .map(|a| obj([("origin", point_to_json(a.origin)), ("angle_deg", num(a.angle_deg))]))
                .collect(),
        ),
        PropertyValue::Record(r) => record_to_json(r),
        PropertyValue::RecordList(rs) => Value::Array(rs.iter().map(record_to_json).collect()),
    };
    tagged(kind, inner)
}

pub fn props_to_json(p: &Props) -> Value {
    record_to_json(p)
}

fn grid_to_json(g: &ZoneGrid) -> Value {
    obj([
        ("origin", point_to_json(g.origin)),
        ("cell_w", num(g.cell_w)),
        ("cell_h", num(g.cell_h)),
        ("nx", Value::from(g.nx)),
        ("ny", Value::from(g.ny)),
    ])
}

pub fn module_to_json(m: &Module) -> Value {
    obj([
        ("id", Value::from(m.id)),
        ("type", Value::from(m.module_type.as_str())),
        ("layer", Value::from(m.layer)),
        ("props", props_to_json(&m.props)),
        ("geometry", elements_to_json(&m.geometry)),
        ("bbox", rect_to_json(&m.bbox)),
        ("zone_mask", Value::from(m.zone_mask.to_hex())),
    ])
}

fn item_to_json(it: &Item) -> Value {
    match it {
        Item::Module(m) => tagged("module", module_to_json(m)),
        Item::Element { layer, element } => tagged(
            "element",
            obj([("layer", Value::from(*layer)), ("element", element_to_json(element))]),
        ),
    }
}

/// JSON tree of a drawing. With `exclude_signatures`, signature modules and
/// the id counter are left out so that adding a signature changes nothing
/// that other signatures cover.
pub fn drawing_to_json(d: &Drawing, exclude_signatures: bool) -> Value {
    let items = d
        .items
        .iter()
        .filter(|it| !(exclude_signatures && matches!(it, Item::Module(m) if m.module_type == ModuleTypeId::Signature)))
        .map(item_to_json)
        .collect();
    let mut m = Map::new();
    m.insert("format_version".into(), Value::from(FORMAT_VERSION));
    m.insert("extent".into(), rect_to_json(&d.extent));
    m.insert("zone_grid".into(), grid_to_json(&d.zone_grid));
    if !exclude_signatures {
        m.insert("next_id".into(), Value::from(d.next_id));
    }
    m.insert("items".into(), Value::Array(items));
    Value::Object(m)
}

pub fn canonical_bytes(d: &Drawing, exclude_signatures: bool) -> Vec<u8> {
    canonical_string(&drawing_to_json(d, exclude_signatures)).into_bytes()
}

pub fn save_drawing(d: &Drawing) -> Vec<u8> {
    canonical_bytes(d, false)
}

/// Canonical bytes of a module excluding its id.
pub fn module_bytes(m: &Module) -> Vec<u8> {
    let mut v = module_to_json(m);
    if let Value::Object(o) = &mut v {
        o.remove("id");
    }
    canonical_string(&v).into_bytes()
}

/// Canonical bytes of an element list.
pub fn geometry_bytes(es: &[Element]) -> Vec<u8> {
    canonical_string(&elements_to_json(es)).into_bytes()
}

// ---------------------------------------------------------------------------
// Decoders

type Obj = Map<String, Value>;

fn as_obj<'a>(v: &'a Value, what: &str) -> Result<&'a Obj, CodecError> {
    v.as_object()
        .ok_or_else(|| format_err(format!("{what} must be an object")))
}

fn field<'a>(o: &'a Obj, key: &str, what: &str) -> Result<&'a Value, CodecError> {
    o.get(key).ok_or_else(|| format_err(format!("{what} lacks `{key}`")))
}

fn only_fields(o: &Obj, allowed: &[&str], what: &str) -> Result<(), CodecError> {
    match o.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(format_err(format!("{what} has unknown field `{k}`"))),
        None => Ok(()),
    }
}

fn real(v: &Value, what: &str) -> Result<f64, CodecError> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| format_err(format!("{what} must be a finite number")))
}

fn integer(v: &Value, what: &str) -> Result<i64, CodecError> {
    v.as_i64()
        .ok_or_else(|| format_err(format!("{what} must be an integer")))
}

fn unsigned(v: &Value, what: &str) -> Result<u64, CodecError> {
    v.as_u64()
        .ok_or_else(|| format_err(format!("{what} must be a non-negative integer")))
}

fn text<'a>(v: &'a Value, what: &str) -> Result<&'a str, CodecError> {
    v.as_str().ok_or_else(|| format_err(format!("{what} must be a string")))
}

fn boolean(v: &Value, what: &str) -> Result<bool, CodecError> {
    v.as_bool()
        .ok_or_else(|| format_err(format!("{what} must be a boolean")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CodecError> {
    v.as_array()
        .ok_or_else(|| format_err(format!("{what} must be an array")))
}

pub fn point_from_json(v: &Value, what: &str) -> Result<Point, CodecError> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point::new(real(x, what)?, real(y, what)?)),
        _ => Err(format_err(format!("{what} must be an [x, y] pair"))),
    }
}

fn points_from_json(v: &Value, what: &str) -> Result<Vec<Point>, CodecError> {
    array(v, what)?.iter().map(|p| point_from_json(p, what)).collect()
}

pub fn rect_from_json(v: &Value, what: &str) -> Result<Rect, CodecError> {
    let o = as_obj(v, what)?;
    only_fields(o, &["min", "max"], what)?;
    let r = Rect::new(
        point_from_json(field(o, "min", what)?, what)?,
        point_from_json(field(o, "max", what)?, what)?,
    );
    if r.is_valid() {
        Ok(r)
    } else {
        Err(format_err(format!("{what} has min above max")))
    }
}

fn style_from_json(v: &Value) -> Result<LineStyle, CodecError> {
    let o = as_obj(v, "style")?;
    only_fields(o, &["line_type", "color"], "style")?;
    let t = text(field(o, "line_type", "style")?, "line_type")?;
    let line_type = LineType::parse(t).ok_or_else(|| format_err(format!("unknown line type `{t}`")))?;
    let color = unsigned(field(o, "color", "style")?, "color")?;
    let color = u8::try_from(color).map_err(|_| format_err("color must be 0..=255"))?;
    Ok(LineStyle::new(line_type, color))
}

pub fn element_from_json(v: &Value) -> Result<Element, CodecError> {
    let o = as_obj(v, "element")?;
    let (kind, body) = match o.iter().next() {
        Some(kv) if o.len() == 1 => kv,
        _ => return Err(format_err("element must have exactly one kind tag")),
    };
    let b = as_obj(body, kind)?;
    let f = |k: &str| field(b, k, kind);
    let style = style_from_json(f("style")?)?;
    let e = match kind.as_str() {
        "segment" => {
            only_fields(b, &["p1", "p2", "style"], kind)?;
            Element::Segment {
                p1: point_from_json(f("p1")?, "p1")?,
                p2: point_from_json(f("p2")?, "p2")?,
                style,
            }
        }
        "polyline" => {
            only_fields(b, &["points", "closed", "style"], kind)?;
            Element::Polyline {
                points: points_from_json(f("points")?, "points")?,
                closed: boolean(f("closed")?, "closed")?,
                style,
            }
        }
        "arc" => {
            only_fields(b, &["center", "radius", "start_angle", "end_angle", "style"], kind)?;
            Element::Arc {
                center: point_from_json(f("center")?, "center")?,
                radius: real(f("radius")?, "radius")?,
                start_angle: real(f("start_angle")?, "start_angle")?,
                end_angle: real(f("end_angle")?, "end_angle")?,
                style,
            }
        }
        "circle" => {
            only_fields(b, &["center", "radius", "style"], kind)?;
            Element::Circle {
                center: point_from_json(f("center")?, "center")?,
                radius: real(f("radius")?, "radius")?,
                style,
            }
        }
        "text" => {
            only_fields(b, &["anchor", "height", "angle", "content", "style"], kind)?;
            Element::Text {
                anchor: point_from_json(f("anchor")?, "anchor")?,
                height: real(f("height")?, "height")?,
                angle: real(f("angle")?, "angle")?,
                content: text(f("content")?, "content")?.to_owned(),
                style,
            }
        }
        other => return Err(format_err(format!("unknown element kind `{other}`"))),
    };
    e.validate()
        .map_err(|err| format_err(format!("invalid {kind}: {err}")))?;
    Ok(e)
}

fn elements_from_json(v: &Value) -> Result<Vec<Element>, CodecError> {
    array(v, "geometry")?.iter().map(element_from_json).collect()
}

fn record_from_json(v: &Value, what: &str) -> Result<Record, CodecError> {
    as_obj(v, what)?
        .iter()
        .map(|(k, x)| Ok((k.clone(), value_from_json(x, k)?)))
        .collect()
}

pub fn value_from_json(v: &Value, key: &str) -> Result<PropertyValue, CodecError> {
    let o = as_obj(v, key)?;
    let (kind, x) = match o.iter().next() {
        Some(kv) if o.len() == 1 => kv,
        _ => return Err(format_err(format!("property `{key}` must have exactly one kind tag"))),
    };
    Ok(match kind.as_str() {
        "text" => PropertyValue::Text(text(x, key)?.to_owned()),
        "real" => PropertyValue::Real(real(x, key)?),
        "integer" => PropertyValue::Integer(integer(x, key)?),
        "boolean" => PropertyValue::Boolean(boolean(x, key)?),
        "point" => PropertyValue::Point(point_from_json(x, key)?),
        "point_list" => PropertyValue::PointList(points_from_json(x, key)?),
        "axis_list" => PropertyValue::AxisList(
            array(x, key)?
                .iter()
                .map(|a| {
                    let a = as_obj(a, key)?;
                    only_fields(a, &["origin", "angle_deg"], key)?;
                    Ok(Axis::new(
                        point_from_json(field(a, "origin", key)?, key)?,
                        real(field(a, "angle_deg", key)?, key)?,
                    ))
                })
                .collect::<Result<_, CodecError>>()?,
        ),
        "record" => PropertyValue::Record(record_from_json(x, key)?),
        "record_list" => PropertyValue::RecordList(
            array(x, key)?
                .iter()
                .map(|r| record_from_json(r, key))
                .collect::<Result<_, _>>()?,
        ),
        other => return Err(format_err(format!("property `{key}` has unknown kind `{other}`"))),
    })
}

pub fn props_from_json(v: &Value) -> Result<Props, CodecError> {
    record_from_json(v, "props")
}

fn grid_from_json(v: &Value) -> Result<ZoneGrid, CodecError> {
    let o = as_obj(v, "zone_grid")?;
    only_fields(o, &["origin", "cell_w", "cell_h", "nx", "ny"], "zone_grid")?;
    let f = |k: &str| field(o, k, "zone_grid");
    let dim = |k: &str| -> Result<u32, CodecError> {
        u32::try_from(unsigned(f(k)?, k)?).map_err(|_| format_err(format!("{k} is too large")))
    };
    let g = ZoneGrid {
        origin: point_from_json(f("origin")?, "origin")?,
        cell_w: real(f("cell_w")?, "cell_w")?,
        cell_h: real(f("cell_h")?, "cell_h")?,
        nx: dim("nx")?,
        ny: dim("ny")?,
    };
    g.validate().map_err(|e| format_err(e.to_string()))?;
    Ok(g)
}

fn check_version(o: &Obj) -> Result<(), CodecError> {
    let v = integer(field(o, "format_version", "file")?, "format_version")?;
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(CodecError::UnsupportedVersion(v))
    }
}

/// Decodes a stored module and checks that its geometry, bbox, zone mask and
/// layer are exactly what its properties regenerate.
fn module_from_json(v: &Value, grid: &ZoneGrid) -> Result<Module, CodecError> {
    let o = as_obj(v, "module")?;
    only_fields(
        o,
        &["id", "type", "layer", "props", "geometry", "bbox", "zone_mask"],
        "module",
    )?;
    let f = |k: &str| field(o, k, "module");
    let id = unsigned(f("id")?, "id")?;
    let t = text(f("type")?, "type")?;
    let module_type = ModuleTypeId::parse(t).ok_or_else(|| format_err(format!("unknown module type `{t}`")))?;
    let props = props_from_json(f("props")?)?;
    let layer = integer(f("layer")?, "layer")?;
    let geometry = elements_from_json(f("geometry")?)?;
    let bbox = rect_from_json(f("bbox")?, "bbox")?;
    let mask = ZoneMask::from_hex(text(f("zone_mask")?, "zone_mask")?, grid.cell_count())
        .map_err(|e| format_err(format!("module {id}: {e}")))?;

    let mut m = create_module(module_type, &props, grid).map_err(|source| CodecError::Module { id, source })?;
    m.id = id;
    let mismatch = |what| Err(CodecError::IntegrityMismatch { id, what });
    if m.geometry != geometry {
        return mismatch("geometry");
    }
    if m.bbox != bbox {
        return mismatch("bbox");
    }
    if m.zone_mask != mask {
        return mismatch("zone_mask");
    }
    if m.layer != layer {
        return mismatch("layer");
    }
    Ok(m)
}

fn item_from_json(v: &Value, grid: &ZoneGrid) -> Result<Item, CodecError> {
    let o = as_obj(v, "item")?;
    match o.iter().next() {
        Some((k, body)) if o.len() == 1 && k == "module" => Ok(Item::Module(module_from_json(body, grid)?)),
        Some((k, body)) if o.len() == 1 && k == "element" => {
            let b = as_obj(body, "element item")?;
            only_fields(b, &["layer", "element"], "element item")?;
            Ok(Item::Element {
                layer: integer(field(b, "layer", "element item")?, "layer")?,
                element: element_from_json(field(b, "element", "element item")?)?,
            })
        }
        _ => Err(format_err("item must be tagged `module` or `element`")),
    }
}

fn parse_json(bytes: &[u8]) -> Result<Value, CodecError> {
    serde_json::from_slice(bytes).map_err(parse_error)
}

pub fn drawing_from_json(v: &Value) -> Result<Drawing, CodecError> {
    let o = as_obj(v, "drawing")?;
    only_fields(
        o,
        &["format_version", "extent", "zone_grid", "next_id", "items"],
        "drawing",
    )?;
    check_version(o)?;
    let extent = rect_from_json(field(o, "extent", "drawing")?, "extent")?;
    let grid = grid_from_json(field(o, "zone_grid", "drawing")?)?;
    let next_id = unsigned(field(o, "next_id", "drawing")?, "next_id")?;
    let items = array(field(o, "items", "drawing")?, "items")?
        .iter()
        .map(|it| item_from_json(it, &grid))
        .collect::<Result<Vec<_>, _>>()?;
    let d = Drawing {
        extent,
        zone_grid: grid,
        next_id,
        items,
    };
    d.validate().map_err(|e| CodecError::Drawing(e.to_string()))?;
    Ok(d)
}

pub fn load_drawing(bytes: &[u8]) -> Result<Drawing, CodecError> {
    drawing_from_json(&parse_json(bytes)?)
}

// ---------------------------------------------------------------------------
// Prototype libraries

/// A named parameter set. Geometry is never stored; it is regenerated on load.
#[derive(Debug, Clone, PartialEq)]
pub struct Prototype {
    pub name: String,
    pub module_type: ModuleTypeId,
    pub props: Props,
}

impl Prototype {
    /// Captures a module's parameters with its placement reset to identity.
    pub fn from_module(name: impl Into<String>, m: &Module) -> Prototype {
        let mut props = m.props.clone();
        let layer = m.layer;
        Placement::default().write(&mut props);
        props.insert("layer".into(), PropertyValue::Integer(layer));
        Prototype {
            name: name.into(),
            module_type: m.module_type,
            props,
        }
    }
}

pub fn save_prototypes(protos: &[Prototype]) -> Result<Vec<u8>, CodecError> {
    let mut names: Vec<&str> = protos.iter().map(|p| p.name.as_str()).collect();
    names.sort_unstable();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(CodecError::DuplicatePrototypeName(w[0].to_owned()));
    }
    let entries = protos
        .iter()
        .map(|p| {
            obj([
                ("name", Value::from(p.name.as_str())),
                ("type", Value::from(p.module_type.as_str())),
                ("props", props_to_json(&p.props)),
            ])
        })
        .collect();
    let v = obj([
        ("format_version", Value::from(FORMAT_VERSION)),
        ("prototypes", Value::Array(entries)),
    ]);
    Ok(canonical_string(&v).into_bytes())
}

/// Per-entry outcome of loading a prototype library.
#[derive(Debug, Clone, PartialEq)]
pub struct PrototypeLoad {
    pub modules: Vec<(String, Module)>,
    /// (entry index, entry name if readable, error)
    pub errors: Vec<(usize, String, CodecError)>,
}

/// Loads a prototype library, regenerating every entry. A bad entry is
/// reported without stopping the others; only an unreadable file fails outright.
pub fn load_prototypes(bytes: &[u8], grid: &ZoneGrid) -> Result<PrototypeLoad, CodecError> {
    let v = parse_json(bytes)?;
    let o = as_obj(&v, "prototype library")?;
    only_fields(o, &["format_version", "prototypes"], "prototype library")?;
    check_version(o)?;
    let mut out = PrototypeLoad {
        modules: Vec::new(),
        errors: Vec::new(),
    };
    for (i, e) in array(field(o, "prototypes", "prototype library")?, "prototypes")?
        .iter()
        .enumerate()
    {
        let name = e.get("name").and_then(Value::as_str).unwrap_or("").to_owned();
        let entry = (|| {
            let eo = as_obj(e, "prototype")?;
            only_fields(eo, &["name", "type", "props"], "prototype")?;
            text(field(eo, "name", "prototype")?, "name")?;
            let t = text(field(eo, "type", "prototype")?, "type")?;
            let ty = ModuleTypeId::parse(t).ok_or_else(|| format_err(format!("unknown module type `{t}`")))?;
            let props = props_from_json(field(eo, "props", "prototype")?)?;
            create_module(ty, &props, grid).map_err(|source| CodecError::Module { id: 0, source })
        })();
        match entry {
            Ok(_) if out.modules.iter().any(|(n, _)| *n == name) => {
                out.errors
                    .push((i, name.clone(), CodecError::DuplicatePrototypeName(name)))
            }
            Ok(m) => out.modules.push((name, m)),
            Err(err) => out.errors.push((i, name, err)),
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Catalogs

/// Ordered (key, value) pairs of a JSON object, duplicates preserved.
struct Pairs(Vec<(String, Value)>);

impl<'de> serde::Deserialize<'de> for Pairs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Pairs;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<Pairs, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = a.next_entry::<String, Value>()? {
                    out.push((k, v));
                }
                Ok(Pairs(out))
            }
        }
        d.deserialize_map(V)
    }
}

/// Catalog document whose `entries` keys are read with duplicates kept.
struct CatalogDoc {
    format_version: Option<Value>,
    entries: Option<Pairs>,
    unknown: Option<String>,
}

impl<'de> serde::Deserialize<'de> for CatalogDoc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = CatalogDoc;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a catalog object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<CatalogDoc, A::Error> {
                let mut doc = CatalogDoc {
                    format_version: None,
                    entries: None,
                    unknown: None,
                };
                while let Some(k) = a.next_key::<String>()? {
                    match k.as_str() {
                        "format_version" => doc.format_version = Some(a.next_value()?),
                        "entries" if doc.entries.is_some() => return Err(de::Error::duplicate_field("entries")),
                        "entries" => doc.entries = Some(a.next_value()?),
                        _ => {
                            a.next_value::<de::IgnoredAny>()?;
                            doc.unknown.get_or_insert(k);
                        }
                    }
                }
                Ok(doc)
            }
        }
        d.deserialize_map(V)
    }
}

/// Loads a catalog: `{format_version, entries: {id: {field: text|number}}}`.
/// Missing fields default to empty text or zero; unknown fields and
/// duplicated ids are rejected.
pub fn load_catalog(bytes: &[u8]) -> Result<Catalog, CodecError> {
    let doc: CatalogDoc = serde_json::from_slice(bytes).map_err(parse_error)?;
    if let Some(k) = doc.unknown {
        return Err(format_err(format!("catalog has unknown field `{k}`")));
    }
    let version = doc
        .format_version
        .ok_or_else(|| format_err("catalog lacks `format_version`"))?;
    let version = integer(&version, "format_version")?;
    if version != FORMAT_VERSION {
        return Err(CodecError::UnsupportedVersion(version));
    }
    let entries = doc.entries.ok_or_else(|| format_err("catalog lacks `entries`"))?;
    let mut out: BTreeMap<String, CatalogEntry> = BTreeMap::new();
    for (id, v) in entries.0 {
        if out.contains_key(&id) {
            return Err(CodecError::DuplicateCatalogId(id));
        }
        let o = as_obj(&v, "catalog entry")?;
        only_fields(o, &CatalogEntry::FIELDS, "catalog entry")?;
        let t = |k: &str| -> Result<String, CodecError> {
            o.get(k).map_or(Ok(String::new()), |x| text(x, k).map(str::to_owned))
        };
        let n = |k: &str| -> Result<f64, CodecError> { o.get(k).map_or(Ok(0.0), |x| real(x, k)) };
        let entry = CatalogEntry {
            name: t("name")?,
            type_mark: t("type_mark")?,
            manufacturer_code: t("manufacturer_code")?,
            item_code: t("item_code")?,
            unit: t("unit")?,
            unit_code: t("unit_code")?,
            price: n("price")?,
        };
        out.insert(id, entry);
    }
    Ok(Catalog { entries: out })
}

pub fn save_catalog(c: &Catalog) -> Vec<u8> {
    let entries = c
        .entries
        .iter()
        .map(|(id, e)| {
            (
                id.clone(),
                obj([
                    ("name", Value::from(e.name.as_str())),
                    ("type_mark", Value::from(e.type_mark.as_str())),
                    ("manufacturer_code", Value::from(e.manufacturer_code.as_str())),
                    ("item_code", Value::from(e.item_code.as_str())),
                    ("unit", Value::from(e.unit.as_str())),
                    ("unit_code", Value::from(e.unit_code.as_str())),
                    ("price", num(e.price)),
                ]),
            )
        })
        .collect();
    let v = obj([
        ("format_version", Value::from(FORMAT_VERSION)),
        ("entries", Value::Object(entries)),
    ]);
    canonical_string(&v).into_bytes()
}
