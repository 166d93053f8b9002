use alloc::vec::Vec;

use super::{place, GenerationError, Reader};
use crate::geometry::{Element, LineStyle};
use crate::offset::{offset_path, CornerKind};
use crate::placement::Symmetry;
use crate::props::Props;

/// Two wall lines at ±diameter/2 around the path, then the optional centreline.
pub fn gen_pipeline(props: &Props) -> Result<Vec<Element>, GenerationError> {
    let r = Reader(props);
    let path = r.points("path");
    let diameter = r.real("diameter_mm");
    if !(diameter > 0.0) {
        return Err(GenerationError::invalid("diameter_mm", "must be positive"));
    }
    let corner = CornerKind::parse(r.text("corner"))
        .ok_or_else(|| GenerationError::invalid("corner", "must be welded or bent"))?;
    let fillet = r.real("fillet_radius");
    if fillet < 0.0 {
        return Err(GenerationError::invalid("fillet_radius", "must not be negative"));
    }
    let half = diameter / 2.0;
    let mut out = offset_path(path, half, corner, fillet)?;
    out.extend(offset_path(path, -half, corner, fillet)?);
    if r.boolean("show_centerline") {
        match corner {
            CornerKind::Welded => out.push(Element::polyline(path.to_vec(), false, LineStyle::DASH_DOT)),
            CornerKind::Bent => {
                let mut center = offset_path(path, 0.0, corner, fillet)?;
                for e in &mut center {
                    *e.style_mut() = LineStyle::DASH_DOT;
                }
                out.extend(center);
            }
        }
    }
    place(out, r.placement(), Symmetry::None)
}
