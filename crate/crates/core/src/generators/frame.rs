use alloc::vec;
use alloc::vec::Vec;

use super::{place, GenerationError, Reader};
use crate::geometry::{Element, LineStyle, Point};
use crate::placement::Symmetry;
use crate::props::Props;

/// Inner frame margins (left, bottom, right, top), mm. The left edge is the binding edge.
pub const FRAME_MARGINS: (f64, f64, f64, f64) = (20.0, 5.0, 5.0, 5.0);
/// Main title block (width, height), mm.
pub const TITLE_BLOCK_SIZE: (f64, f64) = (185.0, 55.0);
const TITLE_BLOCK_ROWS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameFormat {
    A4,
    A3,
    A2,
    A1,
    A0,
}

impl FrameFormat {
    pub fn parse(s: &str) -> Option<FrameFormat> {
        match s {
            "A4" => Some(FrameFormat::A4),
            "A3" => Some(FrameFormat::A3),
            "A2" => Some(FrameFormat::A2),
            "A1" => Some(FrameFormat::A1),
            "A0" => Some(FrameFormat::A0),
            _ => None,
        }
    }

    /// Portrait sheet size (short, long), mm.
    pub fn portrait_size(self) -> (f64, f64) {
        match self {
            FrameFormat::A4 => (210.0, 297.0),
            FrameFormat::A3 => (297.0, 420.0),
            FrameFormat::A2 => (420.0, 594.0),
            FrameFormat::A1 => (594.0, 841.0),
            FrameFormat::A0 => (841.0, 1189.0),
        }
    }
}

/// Sheet (width, height) after multiplicity and orientation.
pub fn frame_size(format: FrameFormat, landscape: bool, multiplicity: i64) -> Result<(f64, f64), GenerationError> {
    if multiplicity < 1 {
        return Err(GenerationError::invalid("multiplicity", "must be at least 1"));
    }
    if multiplicity > 9 {
        return Err(GenerationError::invalid("multiplicity", "must be at most 9"));
    }
    if format == FrameFormat::A4 && landscape {
        return Err(GenerationError::invalid("landscape", "A4 sheets are portrait only"));
    }
    let (short, long) = format.portrait_size();
    let long = long * multiplicity as f64;
    Ok(if landscape { (long, short) } else { (short, long) })
}

fn rect(x0: f64, y0: f64, x1: f64, y1: f64, style: LineStyle) -> Element {
    Element::polyline(
        vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ],
        true,
        style,
    )
}

/// Sheet outline, inner frame and the main title block in the bottom-right corner.
pub fn gen_frame(props: &Props) -> Result<Vec<Element>, GenerationError> {
    let r = Reader(props);
    let format = FrameFormat::parse(r.text("format"))
        .ok_or_else(|| GenerationError::invalid("format", "unknown sheet format"))?;
    let (w, h) = frame_size(format, r.boolean("landscape"), r.integer("multiplicity"))?;
    let (ml, mb, mr, mt) = FRAME_MARGINS;
    let (tw, th) = TITLE_BLOCK_SIZE;
    let (x1, y0) = (w - mr, mb);
    let tx0 = x1 - tw;
    let mut out = vec![
        rect(0.0, 0.0, w, h, LineStyle::THIN),
        rect(ml, mb, x1, h - mt, LineStyle::SOLID),
        rect(tx0, y0, x1, y0 + th, LineStyle::SOLID),
    ];
    for k in 1..TITLE_BLOCK_ROWS {
        let y = y0 + th * k as f64 / TITLE_BLOCK_ROWS as f64;
        out.push(Element::segment(
            Point::new(tx0, y),
            Point::new(x1, y),
            LineStyle::SOLID,
        ));
    }
    place(out, r.placement(), Symmetry::None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rect;
    use crate::props::{normalize_props, ModuleTypeId, PropertyValue};

    fn frame(format: &str, landscape: bool) -> Result<Vec<Element>, GenerationError> {
        let mut p = Props::new();
        p.insert("format".into(), PropertyValue::text(format));
        p.insert("landscape".into(), PropertyValue::Boolean(landscape));
        gen_frame(&normalize_props(ModuleTypeId::Frame, &p).unwrap())
    }

    #[test]
    fn a4_portrait() {
        let out = frame("A4", false).unwrap();
        assert_eq!(out[0].bbox(), Rect::from_coords(0.0, 0.0, 210.0, 297.0));
        assert_eq!(out[1].bbox(), Rect::from_coords(20.0, 5.0, 205.0, 292.0));
        assert_eq!(out[2].bbox(), Rect::from_coords(20.0, 5.0, 205.0, 60.0));
    }

    #[test]
    fn a1_landscape() {
        let out = frame("A1", true).unwrap();
        assert_eq!(out[0].bbox(), Rect::from_coords(0.0, 0.0, 841.0, 594.0));
        assert_eq!(out[1].bbox(), Rect::from_coords(20.0, 5.0, 836.0, 589.0));
        let tb = out[2].bbox();
        assert_eq!((tb.width(), tb.height()), TITLE_BLOCK_SIZE);
        assert_eq!(tb.max.x, 836.0);
    }

    #[test]
    fn a4_landscape_rejected() {
        assert!(frame("A4", true).is_err());
    }

    #[test]
    fn multiplicity_scales_long_side() {
        assert_eq!(frame_size(FrameFormat::A3, false, 3).unwrap(), (297.0, 1260.0));
        assert_eq!(frame_size(FrameFormat::A3, true, 3).unwrap(), (1260.0, 297.0));
        assert!(frame_size(FrameFormat::A3, true, 0).is_err());
    }
}
