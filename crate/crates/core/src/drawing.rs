//! The drawing: an ordered list of modules and free elements over a zone grid.

use alloc::vec::Vec;

use crate::geometry::{Element, GeometryError, Rect};
use crate::module::{create_module, edit_module, set_properties, Edit, Module, ModuleError};
use crate::props::{ModuleTypeId, Props};
use crate::zone::{compute_zone_mask, ZoneError, ZoneGrid};

/// Zone grid resolution used when a drawing is created without one.
pub const DEFAULT_ZONES: u32 = 16;

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Module(Module),
    Element { layer: i64, element: Element },
}

impl Item {
    pub fn as_module(&self) -> Option<&Module> {
        match self {
            Item::Module(m) => Some(m),
            Item::Element { .. } => None,
        }
    }

    pub fn layer(&self) -> i64 {
        match self {
            Item::Module(m) => m.layer,
            Item::Element { layer, .. } => *layer,
        }
    }

    /// Elements of the item in drawing order.
    pub fn elements(&self) -> &[Element] {
        match self {
            Item::Module(m) => &m.geometry,
            Item::Element { element, .. } => core::slice::from_ref(element),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DrawingError {
    #[error("no module with id {0}")]
    NoSuchModule(u64),
    #[error("no item at index {0}")]
    NoSuchItem(usize),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Zone(#[from] ZoneError),
    #[error("drawing extent must be a finite rectangle with positive area")]
    InvalidExtent,
    #[error("module id {0} is duplicated or not below next_id")]
    BadModuleId(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Drawing {
    pub extent: Rect,
    pub zone_grid: ZoneGrid,
    pub next_id: u64,
    pub items: Vec<Item>,
}

impl Drawing {
    /// Empty drawing with the default 16×16 zone grid over `extent`.
    pub fn new(extent: Rect) -> Result<Drawing, DrawingError> {
        if !extent.is_valid() || !(extent.width() > 0.0 && extent.height() > 0.0) {
            return Err(DrawingError::InvalidExtent);
        }
        let grid = ZoneGrid::over(extent, DEFAULT_ZONES, DEFAULT_ZONES);
        grid.validate()?;
        Ok(Drawing {
            extent,
            zone_grid: grid,
            next_id: 1,
            items: Vec::new(),
        })
    }

    pub fn validate(&self) -> Result<(), DrawingError> {
        if !self.extent.is_valid() || !(self.extent.width() > 0.0 && self.extent.height() > 0.0) {
            return Err(DrawingError::InvalidExtent);
        }
        self.zone_grid.validate()?;
        let mut seen = Vec::new();
        for m in self.modules() {
            if m.id == 0 || m.id >= self.next_id || seen.contains(&m.id) {
                return Err(DrawingError::BadModuleId(m.id));
            }
            if m.zone_mask.len() != self.zone_grid.cell_count() {
                return Err(ZoneError::LengthMismatch {
                    expected: self.zone_grid.cell_count(),
                    found: m.zone_mask.len(),
                }
                .into());
            }
            seen.push(m.id);
        }
        Ok(())
    }

    pub fn modules(&self) -> impl Iterator<Item = &Module> {
        self.items.iter().filter_map(Item::as_module)
    }

    pub fn module(&self, id: u64) -> Option<&Module> {
        self.modules().find(|m| m.id == id)
    }

    fn index_of(&self, id: u64) -> Result<usize, DrawingError> {
        self.items
            .iter()
            .position(|it| matches!(it, Item::Module(m) if m.id == id))
            .ok_or(DrawingError::NoSuchModule(id))
    }

    /// Appends a module, assigning the next id and recomputing its zone mask.
    pub fn insert_module(&mut self, mut m: Module) -> u64 {
        m.id = self.next_id;
        self.next_id += 1;
        m.zone_mask = compute_zone_mask(&m.bbox, &self.zone_grid);
        let id = m.id;
        self.items.push(Item::Module(m));
        id
    }

    pub fn add_module(&mut self, module_type: ModuleTypeId, props: &Props) -> Result<u64, DrawingError> {
        let m = create_module(module_type, props, &self.zone_grid)?;
        Ok(self.insert_module(m))
    }

    pub fn add_element(&mut self, layer: i64, element: Element) -> Result<usize, DrawingError> {
        element.validate()?;
        self.items.push(Item::Element { layer, element });
        Ok(self.items.len() - 1)
    }

    /// Replaces the module `id` with the result of `f`, keeping its position.
    pub fn update_module<F>(&mut self, id: u64, f: F) -> Result<(), DrawingError>
    where
        F: FnOnce(&Module, &ZoneGrid) -> Result<Module, ModuleError>,
    {
        let idx = self.index_of(id)?;
        let Item::Module(old) = &self.items[idx] else {
            unreachable!("index_of returns module positions")
        };
        let mut new = f(old, &self.zone_grid)?;
        new.id = id;
        self.items[idx] = Item::Module(new);
        Ok(())
    }

    pub fn set_properties(&mut self, id: u64, updates: &Props) -> Result<(), DrawingError> {
        self.update_module(id, |m, g| set_properties(m, updates, g))
    }

    pub fn edit(&mut self, id: u64, edit: Edit) -> Result<(), DrawingError> {
        self.update_module(id, |m, g| edit_module(m, edit, g))
    }

    pub fn remove_module(&mut self, id: u64) -> Result<Module, DrawingError> {
        let idx = self.index_of(id)?;
        match self.items.remove(idx) {
            Item::Module(m) => Ok(m),
            Item::Element { .. } => unreachable!("index_of returns module positions"),
        }
    }

    pub fn remove_item(&mut self, index: usize) -> Result<Item, DrawingError> {
        if index >= self.items.len() {
            return Err(DrawingError::NoSuchItem(index));
        }
        Ok(self.items.remove(index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{LineStyle, Point};
    use crate::props::PropertyValue;

    #[test]
    fn ids_are_assigned_in_order() {
        let mut d = Drawing::new(Rect::from_coords(0.0, 0.0, 420.0, 297.0)).unwrap();
        let a = d.add_module(ModuleTypeId::Valve, &Props::new()).unwrap();
        let b = d.add_module(ModuleTypeId::Valve, &Props::new()).unwrap();
        assert_eq!((a, b, d.next_id), (1, 2, 3));
        d.remove_module(a).unwrap();
        assert!(d.module(a).is_none());
        assert_eq!(d.add_module(ModuleTypeId::Valve, &Props::new()).unwrap(), 3);
        d.validate().unwrap();
    }

    #[test]
    fn update_keeps_position() {
        let mut d = Drawing::new(Rect::from_coords(0.0, 0.0, 100.0, 100.0)).unwrap();
        d.add_element(
            0,
            Element::segment(Point::ORIGIN, Point::new(1.0, 1.0), LineStyle::SOLID),
        )
        .unwrap();
        let id = d.add_module(ModuleTypeId::Valve, &Props::new()).unwrap();
        let mut upd = Props::new();
        upd.insert("origin".into(), PropertyValue::Point(Point::new(50.0, 50.0)));
        d.set_properties(id, &upd).unwrap();
        assert_eq!(
            d.items[1].as_module().unwrap().placement().origin,
            Point::new(50.0, 50.0)
        );
        assert!(matches!(
            d.set_properties(99, &upd),
            Err(DrawingError::NoSuchModule(99))
        ));
    }

    #[test]
    fn invalid_extent() {
        assert!(Drawing::new(Rect::from_coords(0.0, 0.0, 0.0, 10.0)).is_err());
    }
}
