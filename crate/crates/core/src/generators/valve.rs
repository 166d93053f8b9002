use alloc::vec;
use alloc::vec::Vec;

use super::{place, GenerationError, Reader};
use crate::geometry::{Element, LineStyle, Point};
use crate::props::{Props, VALVE_LENGTH};

pub const VALVE_HALF_BASE: f64 = 1.5;

/// Gate-valve bowtie: two closed triangles meeting at the origin, flow along local x.
pub fn gen_valve(props: &Props) -> Result<Vec<Element>, GenerationError> {
    let r = Reader(props);
    let (l, b) = (VALVE_LENGTH, VALVE_HALF_BASE);
    let wing = |s: f64| {
        Element::polyline(
            vec![
                Point::new(s * l, -b),
                Point::ORIGIN,
                Point::new(s * l, b),
                Point::new(s * l, -b),
            ],
            true,
            LineStyle::SOLID,
        )
    };
    place(vec![wing(-1.0), wing(1.0)], r.placement(), r.symmetry())
}
