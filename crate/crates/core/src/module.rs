//! Modules: a typed parametric representation together with the geometry it generates.
//!
//! The property set is primary. Every operation that changes a module
//! rewrites properties and regenerates; geometry is never edited directly.

use alloc::string::String;
use alloc::vec::Vec;

use crate::generators::{generate, internal_lists, GenerationError};
use crate::geometry::{elements_bbox, Element, Point, Rect};
use crate::placement::{Placement, Symmetry};
use crate::props::{normalize_props, Axis, ModuleTypeId, PropertyValue, Props, SchemaViolation};
use crate::zone::{compute_zone_mask, ZoneGrid, ZoneMask};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModuleError {
    #[error("schema violation: {0}")]
    Schema(#[from] SchemaViolation),
    #[error("generation failed: {0}")]
    Generation(#[from] GenerationError),
    #[error("attach axis {index} does not exist ({available} defined)")]
    MissingAttachAxis { index: usize, available: usize },
    #[error("{module_type} modules have no internal list `{list}`")]
    UnknownList { module_type: ModuleTypeId, list: String },
    #[error("{0} modules cannot be stretched")]
    StretchNotAllowed(ModuleTypeId),
    #[error("invalid edit: {0}")]
    InvalidEdit(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Module {
    /// Unique within a drawing; 0 until the module is inserted.
    pub id: u64,
    pub module_type: ModuleTypeId,
    /// Normalized: every required key and every defaulted key is present.
    pub props: Props,
    pub geometry: Vec<Element>,
    /// The one layer all geometry of the module lies on.
    pub layer: i64,
    pub bbox: Rect,
    pub zone_mask: ZoneMask,
}

/// Temporary selection handle for one entry of a host module's internal list.
/// Exists only in memory; drawings never store it.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkingModule {
    pub host_id: u64,
    pub list_name: String,
    pub index: usize,
    pub geometry: Vec<Element>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Edit {
    Move(Point),
    Rotate {
        about: Point,
        angle_deg: f64,
    },
    /// Reflection across the line through `point` at `angle_deg`.
    Mirror {
        point: Point,
        angle_deg: f64,
    },
    /// Mirror in the module's own frame: `mirror_x` across its local x axis,
    /// `mirror_y` across its local y axis, `both` through its origin.
    Symmetry(Symmetry),
    /// Uniform stretch; user modules only.
    Scale {
        about: Point,
        factor: f64,
    },
}

fn finite(p: Point, v: f64) -> Result<(), ModuleError> {
    if p.is_finite() && v.is_finite() {
        Ok(())
    } else {
        Err(ModuleError::InvalidEdit("non-finite edit parameter"))
    }
}

/// Builds a module from properties, generating its geometry.
pub fn create_module(module_type: ModuleTypeId, props: &Props, grid: &ZoneGrid) -> Result<Module, ModuleError> {
    let props = normalize_props(module_type, props)?;
    if module_type == ModuleTypeId::Signature
        && props
            .get("password")
            .and_then(PropertyValue::as_text)
            .is_some_and(|p| !p.is_empty())
    {
        return Err(SchemaViolation::new("password", "passwords are never stored in a drawing").into());
    }
    let generated = generate(module_type, &props)?;
    Ok(assemble(0, module_type, props, generated.elements, grid))
}

pub(crate) fn assemble(
    id: u64,
    module_type: ModuleTypeId,
    props: Props,
    geometry: Vec<Element>,
    grid: &ZoneGrid,
) -> Module {
    let layer = props.get("layer").and_then(PropertyValue::as_integer).unwrap_or(0);
    let bbox = elements_bbox(&geometry).unwrap_or(Rect::from_point(Point::ORIGIN));
    let zone_mask = compute_zone_mask(&bbox, grid);
    Module {
        id,
        module_type,
        props,
        geometry,
        layer,
        bbox,
        zone_mask,
    }
}

/// Merges `updates` into the module's properties and regenerates.
pub fn set_properties(m: &Module, updates: &Props, grid: &ZoneGrid) -> Result<Module, ModuleError> {
    if updates.is_empty() {
        let mut same = m.clone();
        if same.zone_mask.len() != grid.cell_count() {
            same.zone_mask = compute_zone_mask(&same.bbox, grid);
        }
        return Ok(same);
    }
    let mut merged = m.props.clone();
    for (k, v) in updates {
        merged.insert(k.clone(), v.clone());
    }
    let mut out = create_module(m.module_type, &merged, grid)?;
    out.id = m.id;
    Ok(out)
}

/// Applies a move, rotation, mirror or stretch through the placement properties.
pub fn edit_module(m: &Module, edit: Edit, grid: &ZoneGrid) -> Result<Module, ModuleError> {
    let current = Placement::from_props(&m.props);
    let next = match edit {
        Edit::Move(d) => {
            finite(d, 0.0)?;
            current.moved(d)
        }
        Edit::Rotate { about, angle_deg } => {
            finite(about, angle_deg)?;
            current.rotated(about, angle_deg)
        }
        Edit::Mirror { point, angle_deg } => {
            finite(point, angle_deg)?;
            current.mirrored_across(point, angle_deg)
        }
        Edit::Symmetry(code) => match code {
            Symmetry::None => current,
            Symmetry::MirrorX => current.mirrored_across(current.origin, current.angle_deg),
            Symmetry::MirrorY => current.mirrored_across(current.origin, current.angle_deg + 90.0),
            Symmetry::Both => current.rotated(current.origin, 180.0),
        },
        Edit::Scale { about, factor } => {
            finite(about, factor)?;
            if m.module_type != ModuleTypeId::User {
                return Err(ModuleError::StretchNotAllowed(m.module_type));
            }
            if !(factor > 0.0) {
                return Err(ModuleError::InvalidEdit("stretch factor must be positive"));
            }
            current.scaled(about, factor)
        }
    };
    if next == current {
        return set_properties(m, &Props::new(), grid);
    }
    let mut props = m.props.clone();
    next.write(&mut props);
    let mut out = create_module(m.module_type, &props, grid)?;
    out.id = m.id;
    Ok(out)
}

/// World position of the module's attach axis `index`.
pub fn attach_axis(m: &Module, index: usize) -> Result<Axis, ModuleError> {
    let axes = match m.props.get("attach") {
        Some(PropertyValue::AxisList(a)) => a.as_slice(),
        _ => &[],
    };
    let axis = axes.get(index).ok_or(ModuleError::MissingAttachAxis {
        index,
        available: axes.len(),
    })?;
    let t = Placement::from_props(&m.props).transform();
    Ok(Axis::new(t.apply(axis.origin), t.map_direction(axis.angle_deg)))
}

/// Rigidly moves the module so its attach axis `index` coincides with `target`.
pub fn align_by_attach(m: &Module, index: usize, target: Axis, grid: &ZoneGrid) -> Result<Module, ModuleError> {
    let own = attach_axis(m, index)?;
    let turn = target.angle_deg - own.angle_deg;
    let rotated = edit_module(
        m,
        Edit::Rotate {
            about: own.origin,
            angle_deg: turn,
        },
        grid,
    )?;
    edit_module(&rotated, Edit::Move(target.origin - own.origin), grid)
}

/// One working module per entry of the named internal list.
pub fn spawn_working_modules(m: &Module, list_name: &str) -> Result<Vec<WorkingModule>, ModuleError> {
    let unknown = || ModuleError::UnknownList {
        module_type: m.module_type,
        list: String::from(list_name),
    };
    if !internal_lists(m.module_type).contains(&list_name) {
        return Err(unknown());
    }
    let generated = generate(m.module_type, &m.props)?;
    let list = generated.list(list_name).ok_or_else(unknown)?;
    Ok(list
        .slices
        .iter()
        .enumerate()
        .map(|(index, range)| WorkingModule {
            host_id: m.id,
            list_name: String::from(list_name),
            index,
            geometry: generated.elements[range.clone()].to_vec(),
        })
        .collect())
}

impl Module {
    pub fn snap_points(&self) -> Vec<Point> {
        self.geometry.iter().flat_map(Element::snap_points).collect()
    }

    pub fn placement(&self) -> Placement {
        Placement::from_props(&self.props)
    }

    pub fn prop(&self, key: &str) -> Option<&PropertyValue> {
        self.props.get(key)
    }

    pub fn text_prop(&self, key: &str) -> &str {
        self.props.get(key).and_then(PropertyValue::as_text).unwrap_or("")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::element_to_record;
    use crate::geometry::LineStyle;
    use alloc::vec;

    fn grid() -> ZoneGrid {
        ZoneGrid::over(Rect::from_coords(0.0, 0.0, 420.0, 297.0), 16, 16)
    }

    fn props(pairs: &[(&str, PropertyValue)]) -> Props {
        pairs.iter().map(|(k, v)| (String::from(*k), v.clone())).collect()
    }

    fn valve() -> Module {
        create_module(
            ModuleTypeId::Valve,
            &props(&[("origin", PropertyValue::Point(Point::new(50.0, 40.0)))]),
            &grid(),
        )
        .unwrap()
    }

    #[test]
    fn instrument_example() {
        let m = create_module(
            ModuleTypeId::Instrument,
            &props(&[
                ("on_board", PropertyValue::Boolean(true)),
                ("function_code", PropertyValue::text("TI")),
                ("upper_index", PropertyValue::text("101")),
            ]),
            &grid(),
        )
        .unwrap();
        assert_eq!(m.geometry.len(), 4);
        assert!(matches!(m.geometry[0], Element::Circle { radius, .. } if radius == 5.0));
    }

    #[test]
    fn user_grouping_keeps_elements() {
        let segs: Vec<_> = (0..3)
            .map(|i| Element::segment(Point::new(i as f64, 0.0), Point::new(i as f64, 5.0), LineStyle::SOLID))
            .collect();
        let m = create_module(
            ModuleTypeId::User,
            &props(&[
                (
                    "elements",
                    PropertyValue::RecordList(segs.iter().map(element_to_record).collect()),
                ),
                ("layer", PropertyValue::Integer(3)),
            ]),
            &grid(),
        )
        .unwrap();
        assert_eq!(m.geometry, segs);
        assert_eq!(m.layer, 3);
    }

    #[test]
    fn kind_mismatch_is_schema_violation() {
        let e = create_module(
            ModuleTypeId::Valve,
            &props(&[("dy", PropertyValue::Boolean(true))]),
            &grid(),
        );
        assert!(matches!(e, Err(ModuleError::Schema(v)) if v.key == "dy"));
    }

    #[test]
    fn signature_password_never_stored() {
        let e = create_module(
            ModuleTypeId::Signature,
            &props(&[
                ("person", PropertyValue::text("Иванов")),
                ("date", PropertyValue::text("2024-01-01")),
                ("time", PropertyValue::text("10:00:00")),
                ("password", PropertyValue::text("secret")),
            ]),
            &grid(),
        );
        assert!(matches!(e, Err(ModuleError::Schema(v)) if v.key == "password"));
    }

    #[test]
    fn empty_update_is_noop() {
        let m = valve();
        assert_eq!(set_properties(&m, &Props::new(), &grid()).unwrap(), m);
    }

    #[test]
    fn move_translates_snap_points() {
        let m = valve();
        let moved = edit_module(&m, Edit::Move(Point::new(10.0, 0.0)), &grid()).unwrap();
        for (a, b) in m.snap_points().iter().zip(moved.snap_points()) {
            assert!((b - *a - Point::new(10.0, 0.0)).length() < 1e-9);
        }
    }

    #[test]
    fn zero_rotation_is_identity() {
        let m = valve();
        let r = edit_module(
            &m,
            Edit::Rotate {
                about: Point::new(3.0, 3.0),
                angle_deg: 0.0,
            },
            &grid(),
        )
        .unwrap();
        assert_eq!(r, m);
    }

    #[test]
    fn double_mirror_restores() {
        let m = create_module(
            ModuleTypeId::Instrument,
            &props(&[
                ("function_code", PropertyValue::text("PI")),
                ("origin", PropertyValue::Point(Point::new(100.0, 80.0))),
                ("angle_deg", PropertyValue::Real(25.0)),
            ]),
            &grid(),
        )
        .unwrap();
        let axis = Edit::Mirror {
            point: Point::new(7.0, 3.0),
            angle_deg: 33.0,
        };
        let twice = edit_module(&edit_module(&m, axis, &grid()).unwrap(), axis, &grid()).unwrap();
        for (a, b) in m.snap_points().iter().zip(twice.snap_points()) {
            assert!(a.distance(b) < 1e-9);
        }
    }

    #[test]
    fn symmetric_valve_mirror_is_byte_identical() {
        let m = create_module(
            ModuleTypeId::Valve,
            &props(&[
                ("symmetry", PropertyValue::text("mirror_y")),
                ("origin", PropertyValue::Point(Point::new(50.0, 40.0))),
            ]),
            &grid(),
        )
        .unwrap();
        let mirrored = edit_module(&m, Edit::Symmetry(Symmetry::MirrorY), &grid()).unwrap();
        assert_eq!(mirrored.geometry, m.geometry);
        assert_eq!(mirrored.props.get("mirrored"), Some(&PropertyValue::Boolean(true)));
    }

    #[test]
    fn stretch_only_for_user() {
        let e = edit_module(
            &valve(),
            Edit::Scale {
                about: Point::ORIGIN,
                factor: 2.0,
            },
            &grid(),
        );
        assert_eq!(e, Err(ModuleError::StretchNotAllowed(ModuleTypeId::Valve)));
    }

    #[test]
    fn align_examples() {
        let m = create_module(ModuleTypeId::Valve, &Props::new(), &grid()).unwrap();
        // axis 1 is at (4, 0) pointing along +x
        let target = Axis::new(Point::new(10.0, 5.0), 90.0);
        let aligned = align_by_attach(&m, 1, target, &grid()).unwrap();
        let got = attach_axis(&aligned, 1).unwrap();
        assert!(got.origin.distance(target.origin) < 1e-9);
        assert!(crate::angle::angle_distance(got.angle_deg, 90.0) < 1e-9);

        let own = attach_axis(&m, 0).unwrap();
        assert_eq!(align_by_attach(&m, 0, own, &grid()).unwrap(), m);
        assert_eq!(
            align_by_attach(&m, 2, target, &grid()),
            Err(ModuleError::MissingAttachAxis { index: 2, available: 2 })
        );
    }

    #[test]
    fn working_modules() {
        let table = create_module(
            ModuleTypeId::Table,
            &props(&[("preset", PropertyValue::text("kipia"))]),
            &grid(),
        )
        .unwrap();
        assert!(spawn_working_modules(&table, "rows").unwrap().is_empty());
        assert!(matches!(
            spawn_working_modules(&valve(), "rows"),
            Err(ModuleError::UnknownList { .. })
        ));
        let rec = |k: &str, v: f64| -> crate::props::Record {
            let mut r = crate::props::Record::new();
            r.insert(k.into(), PropertyValue::Real(v));
            r
        };
        let mut rod = rec("x", 0.0);
        rod.insert("y".into(), PropertyValue::Real(0.0));
        rod.insert("h".into(), PropertyValue::Real(30.0));
        let lightning = create_module(
            ModuleTypeId::Lightning,
            &props(&[
                ("rods", PropertyValue::RecordList(vec![rod])),
                (
                    "section_heights",
                    PropertyValue::RecordList(vec![rec("hx", 0.0), rec("hx", 5.0), rec("hx", 10.0)]),
                ),
                ("zone_class", PropertyValue::text("B")),
                ("origin", PropertyValue::Point(Point::new(100.0, 100.0))),
            ]),
            &grid(),
        )
        .unwrap();
        let w = spawn_working_modules(&lightning, "radius_dimensions").unwrap();
        assert_eq!(w.iter().map(|w| w.index).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(w.iter().all(|w| matches!(w.geometry[..], [Element::Text { .. }])));
        assert_eq!(w[2].geometry[0], lightning.geometry[2 + 3 + 2]);
    }
}
