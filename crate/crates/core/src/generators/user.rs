use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{place, record_number, GenerationError, Reader};
use crate::geometry::{Element, LineStyle, LineType, Point};
use crate::props::{PropertyValue, Props, Record};

/// Grouped free elements, placed and optionally scaled as one.
pub fn gen_user(props: &Props) -> Result<Vec<Element>, GenerationError> {
    let r = Reader(props);
    let records = r.records("elements");
    if records.is_empty() {
        return Err(GenerationError::invalid(
            "elements",
            "a user module needs at least one element",
        ));
    }
    let local = records.iter().map(element_from_record).collect::<Result<Vec<_>, _>>()?;
    place(local, r.placement(), r.symmetry())
}

fn field<'r>(r: &'r Record, name: &str) -> Result<&'r PropertyValue, GenerationError> {
    r.get(name)
        .ok_or_else(|| GenerationError::invalid("elements", alloc::format!("element record lacks `{name}`")))
}

fn point_field(r: &Record, name: &str) -> Result<Point, GenerationError> {
    field(r, name)?
        .as_point()
        .filter(|p| p.is_finite())
        .ok_or_else(|| GenerationError::invalid("elements", alloc::format!("`{name}` must be a point")))
}

/// Decodes the record form of an element.
///
/// Records carry `kind`, the geometric fields of that kind, and optional
/// `line_type` (default solid) and `color` (default 7). Layers are owned by
/// the module, so records have none.
pub fn element_from_record(r: &Record) -> Result<Element, GenerationError> {
    const COMMON: [&str; 3] = ["kind", "line_type", "color"];
    let kind = field(r, "kind")?
        .as_text()
        .ok_or_else(|| GenerationError::invalid("elements", "`kind` must be text"))?;
    let line_type = match r.get("line_type") {
        None => LineType::Solid,
        Some(v) => v
            .as_text()
            .and_then(LineType::parse)
            .ok_or_else(|| GenerationError::invalid("elements", "unknown line_type"))?,
    };
    let color = match r.get("color") {
        None => 7,
        Some(v) => v
            .as_integer()
            .and_then(|c| u8::try_from(c).ok())
            .ok_or_else(|| GenerationError::invalid("elements", "color must be an integer in 0..=255"))?,
    };
    let style = LineStyle::new(line_type, color);
    let (elem, fields): (Element, &[&str]) = match kind {
        "segment" => (
            Element::segment(point_field(r, "p1")?, point_field(r, "p2")?, style),
            &["p1", "p2"],
        ),
        "polyline" => {
            let points = match field(r, "points")? {
                PropertyValue::PointList(p) => p.clone(),
                _ => return Err(GenerationError::invalid("elements", "`points` must be a point list")),
            };
            let closed = match r.get("closed") {
                None => false,
                Some(v) => v
                    .as_bool()
                    .ok_or_else(|| GenerationError::invalid("elements", "`closed` must be boolean"))?,
            };
            (Element::polyline(points, closed, style), &["points", "closed"])
        }
        "arc" => (
            Element::arc(
                point_field(r, "center")?,
                record_number(r, "radius", "elements")?,
                record_number(r, "start_angle", "elements")?,
                record_number(r, "end_angle", "elements")?,
                style,
            ),
            &["center", "radius", "start_angle", "end_angle"],
        ),
        "circle" => (
            Element::circle(
                point_field(r, "center")?,
                record_number(r, "radius", "elements")?,
                style,
            ),
            &["center", "radius"],
        ),
        "text" => {
            let content = field(r, "content")?
                .as_text()
                .ok_or_else(|| GenerationError::invalid("elements", "`content` must be text"))?;
            let angle = match r.get("angle") {
                None => 0.0,
                Some(_) => record_number(r, "angle", "elements")?,
            };
            (
                Element::text(
                    point_field(r, "anchor")?,
                    record_number(r, "height", "elements")?,
                    angle,
                    content,
                    style,
                ),
                &["anchor", "height", "angle", "content"],
            )
        }
        other => {
            return Err(GenerationError::invalid(
                "elements",
                alloc::format!("unknown element kind `{other}`"),
            ))
        }
    };
    if let Some(extra) = r
        .keys()
        .find(|k| !COMMON.contains(&k.as_str()) && !fields.contains(&k.as_str()))
    {
        return Err(GenerationError::invalid(
            "elements",
            alloc::format!("unexpected field `{extra}` in {kind} record"),
        ));
    }
    elem.validate()?;
    Ok(elem)
}

/// Record form of an element, inverse of [`element_from_record`].
pub fn element_to_record(e: &Element) -> Record {
    let mut r = Record::new();
    let mut put = |k: &str, v: PropertyValue| {
        r.insert(k.to_string(), v);
    };
    put("kind", PropertyValue::text(e.kind_name()));
    let style = e.style();
    put("line_type", PropertyValue::text(style.line_type.as_str()));
    put("color", PropertyValue::Integer(style.color as i64));
    match e {
        Element::Segment { p1, p2, .. } => {
            put("p1", PropertyValue::Point(*p1));
            put("p2", PropertyValue::Point(*p2));
        }
        Element::Polyline { points, closed, .. } => {
            put("points", PropertyValue::PointList(points.clone()));
            put("closed", PropertyValue::Boolean(*closed));
        }
        Element::Arc {
            center,
            radius,
            start_angle,
            end_angle,
            ..
        } => {
            put("center", PropertyValue::Point(*center));
            put("radius", PropertyValue::Real(*radius));
            put("start_angle", PropertyValue::Real(*start_angle));
            put("end_angle", PropertyValue::Real(*end_angle));
        }
        Element::Circle { center, radius, .. } => {
            put("center", PropertyValue::Point(*center));
            put("radius", PropertyValue::Real(*radius));
        }
        Element::Text {
            anchor,
            height,
            angle,
            content,
            ..
        } => {
            put("anchor", PropertyValue::Point(*anchor));
            put("height", PropertyValue::Real(*height));
            put("angle", PropertyValue::Real(*angle));
            put("content", PropertyValue::Text(String::from(content.as_str())));
        }
    }
    r
}
