use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{place, style_from_name, GenerationError, Reader};
use crate::geometry::{Element, LineStyle, Point, TEXT_ASPECT};
use crate::placement::Symmetry;
use crate::props::Props;

/// Instrument bubble radius (∅10 mm), mm.
pub const INSTRUMENT_RADIUS: f64 = 5.0;
pub const INSTRUMENT_TEXT_HEIGHT: f64 = 2.5;

/// Text of the lower half: upper and lower indices, slash-joined when both are set.
fn position_text(upper: &str, lower: &str) -> String {
    match (upper.is_empty(), lower.is_empty()) {
        (false, false) => alloc::format!("{upper}/{lower}"),
        (false, true) => String::from(upper),
        _ => String::from(lower),
    }
}

fn centered_text(content: String, baseline_y: f64, style: LineStyle) -> Element {
    let w = TEXT_ASPECT * INSTRUMENT_TEXT_HEIGHT * content.chars().count() as f64;
    Element::text(
        Point::new(-w / 2.0, baseline_y),
        INSTRUMENT_TEXT_HEIGHT,
        0.0,
        content,
        style,
    )
}

/// Instrument symbol: circle, optional board-mounting chord, function code above, position below.
pub fn gen_instrument(props: &Props) -> Result<Vec<Element>, GenerationError> {
    let r = Reader(props);
    let function = r.text("function_code");
    if function.is_empty() {
        return Err(GenerationError::invalid("function_code", "must not be empty"));
    }
    let style = match r.text("kip_line_type") {
        "" => LineStyle::SOLID,
        name => style_from_name(name).ok_or_else(|| GenerationError::invalid("kip_line_type", "unknown line type"))?,
    };
    let radius = INSTRUMENT_RADIUS;
    let mut out = vec![Element::circle(Point::ORIGIN, radius, style)];
    if r.boolean("on_board") {
        out.push(Element::segment(
            Point::new(-radius, 0.0),
            Point::new(radius, 0.0),
            style,
        ));
    }
    out.push(centered_text(String::from(function), 1.0, style));
    out.push(centered_text(
        position_text(r.text("upper_index"), r.text("lower_index")),
        -1.0 - INSTRUMENT_TEXT_HEIGHT,
        style,
    ));
    place(out, r.placement(), Symmetry::None)
}
