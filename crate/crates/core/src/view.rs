//! Viewport selection with zone-mask culling.

use alloc::vec::Vec;

use crate::drawing::{Drawing, Item};
use crate::geometry::Rect;
use crate::zone::compute_zone_mask;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub rect: Rect,
}

impl Viewport {
    pub fn new(rect: Rect) -> Option<Viewport> {
        (rect.is_valid() && rect.width() > 0.0 && rect.height() > 0.0).then_some(Viewport { rect })
    }
}

/// An element chosen for output: item index in the drawing and element index
/// within the item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementRef {
    pub item: usize,
    pub element: usize,
}

/// Elements whose bounding box meets the viewport, in drawing order.
///
/// With `cull`, a module is skipped without looking at its elements when its
/// zone mask misses the viewport's. That shortcut is taken only when the
/// module box or the viewport lies inside the grid, where the masks describe
/// the boxes completely.
pub fn visible_elements(d: &Drawing, v: &Viewport, cull: bool) -> Vec<ElementRef> {
    let grid = &d.zone_grid;
    let bounds = grid.bounds();
    let view_mask = compute_zone_mask(&v.rect, grid);
    let view_inside = bounds.contains_rect(&v.rect);
    let mut out = Vec::new();
    for (i, item) in d.items.iter().enumerate() {
        if let (true, Item::Module(m)) = (cull, item) {
            let masks_complete = view_inside || bounds.contains_rect(&m.bbox);
            if masks_complete && !m.zone_mask.intersects(&view_mask) {
                continue;
            }
            if !m.bbox.intersects(&v.rect) {
                continue;
            }
        }
        for (j, e) in item.elements().iter().enumerate() {
            if e.bbox().intersects(&v.rect) {
                out.push(ElementRef { item: i, element: j });
            }
        }
    }
    out
}

/// Brute-force reference: every element tested against the viewport.
pub fn visible_elements_brute(d: &Drawing, v: &Viewport) -> Vec<ElementRef> {
    let mut out = Vec::new();
    for (i, item) in d.items.iter().enumerate() {
        for (j, e) in item.elements().iter().enumerate() {
            if e.bbox().intersects(&v.rect) {
                out.push(ElementRef { item: i, element: j });
            }
        }
    }
    out
}
