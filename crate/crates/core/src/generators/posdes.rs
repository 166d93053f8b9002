use alloc::vec;
use alloc::vec::Vec;

use super::{place, GenerationError, Reader};
use crate::geometry::{Element, LineStyle, Point};
use crate::placement::Symmetry;
use crate::props::Props;

pub const SHELF_LENGTH: f64 = 8.0;
const POSITION_TEXT_HEIGHT: f64 = 3.5;
const TEXT_LIFT: f64 = 0.8;

/// Leader line, horizontal shelf and the position number above the shelf.
///
/// Specification properties are carried along but never drawn.
pub fn gen_posdes(props: &Props) -> Result<Vec<Element>, GenerationError> {
    let r = Reader(props);
    let text = r.text("position_text");
    if text.is_empty() {
        return Err(GenerationError::invalid("position_text", "must not be empty"));
    }
    let from = r.point("leader_from");
    let shelf = r.point("shelf_at");
    let out = vec![
        Element::segment(from, shelf, LineStyle::THIN),
        Element::segment(shelf, shelf + Point::new(SHELF_LENGTH, 0.0), LineStyle::THIN),
        Element::text(
            shelf + Point::new(TEXT_LIFT, TEXT_LIFT),
            POSITION_TEXT_HEIGHT,
            0.0,
            text,
            LineStyle::SOLID,
        ),
    ];
    place(out, r.placement(), Symmetry::None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::props::{normalize_props, ModuleTypeId, PropertyValue, Record};

    fn props(from: Point, spec: Record) -> Props {
        let mut p = Props::new();
        p.insert("leader_from".into(), PropertyValue::Point(from));
        p.insert("shelf_at".into(), PropertyValue::Point(Point::new(10.0, 10.0)));
        p.insert("position_text".into(), PropertyValue::text("1"));
        p.insert("spec_props".into(), PropertyValue::Record(spec));
        normalize_props(ModuleTypeId::Posdes, &p).unwrap()
    }

    #[test]
    fn two_segments_and_text() {
        let out = gen_posdes(&props(Point::ORIGIN, Record::new())).unwrap();
        assert_eq!(
            out.iter().map(Element::kind_name).collect::<Vec<_>>(),
            ["segment", "segment", "text"]
        );
    }

    #[test]
    fn shelf_horizontal_for_any_leader() {
        for from in [Point::new(0.0, 0.0), Point::new(30.0, -4.0), Point::new(10.0, 50.0)] {
            match &gen_posdes(&props(from, Record::new())).unwrap()[1] {
                Element::Segment { p1, p2, .. } => {
                    assert_eq!(p1.y, p2.y);
                    assert_eq!(p2.x - p1.x, SHELF_LENGTH);
                }
                e => panic!("unexpected {e:?}"),
            }
        }
    }

    #[test]
    fn spec_props_do_not_draw() {
        let mut spec = Record::new();
        spec.insert("designation".into(), PropertyValue::text("15кч18п"));
        spec.insert("mass".into(), PropertyValue::Real(3.2));
        assert_eq!(
            gen_posdes(&props(Point::ORIGIN, spec)).unwrap(),
            gen_posdes(&props(Point::ORIGIN, Record::new())).unwrap()
        );
    }
}
