//! Specification rows, duplicate position control, table filling and catalogs.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::drawing::{Drawing, DrawingError, Item};
use crate::generators::effective_columns;
use crate::module::{set_properties, Module, ModuleError};
use crate::props::{ModuleTypeId, PropertyValue, Props, Record};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("no module with id {0}")]
    NoSuchModule(u64),
    #[error("module {id} is a {found}, expected {expected}")]
    WrongType {
        id: u64,
        found: ModuleTypeId,
        expected: &'static str,
    },
    #[error("column index {index} is out of range (table has {columns} columns)")]
    BadColumn { index: usize, columns: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("{0} modules have no catalog properties")]
    NoCatalogKeys(ModuleTypeId),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

/// Where a specified module came from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SourceRef {
    pub path: String,
    pub id: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecRow {
    pub position: String,
    pub designation: String,
    pub name: String,
    pub type_mark: String,
    pub unit: String,
    pub qty: u64,
    pub mass: f64,
    pub price: f64,
    pub note: String,
    pub sources: Vec<SourceRef>,
}

impl SpecRow {
    /// Ordering on every field that takes part in merging.
    fn key_cmp(&self, o: &SpecRow) -> Ordering {
        (
            &self.position,
            &self.designation,
            &self.name,
            &self.type_mark,
            &self.unit,
        )
            .cmp(&(&o.position, &o.designation, &o.name, &o.type_mark, &o.unit))
            .then(self.mass.total_cmp(&o.mass))
            .then(self.price.total_cmp(&o.price))
            .then(self.note.cmp(&o.note))
    }

    /// Field text as written into a table cell.
    pub fn field_text(&self, f: SpecField) -> String {
        match f {
            SpecField::Position => self.position.clone(),
            SpecField::Designation => self.designation.clone(),
            SpecField::Name => self.name.clone(),
            SpecField::TypeMark => self.type_mark.clone(),
            SpecField::Unit => self.unit.clone(),
            SpecField::Qty => self.qty.to_string(),
            SpecField::Mass => format!("{}", self.mass),
            SpecField::Price => format!("{}", self.price),
            SpecField::Note => self.note.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecField {
    Position,
    Designation,
    Name,
    TypeMark,
    Unit,
    Qty,
    Mass,
    Price,
    Note,
}

impl SpecField {
    pub const ALL: [SpecField; 9] = [
        SpecField::Position,
        SpecField::Designation,
        SpecField::Name,
        SpecField::TypeMark,
        SpecField::Unit,
        SpecField::Qty,
        SpecField::Mass,
        SpecField::Price,
        SpecField::Note,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SpecField::Position => "position",
            SpecField::Designation => "designation",
            SpecField::Name => "name",
            SpecField::TypeMark => "type_mark",
            SpecField::Unit => "unit",
            SpecField::Qty => "qty",
            SpecField::Mass => "mass",
            SpecField::Price => "price",
            SpecField::Note => "note",
        }
    }

    pub fn parse(s: &str) -> Option<SpecField> {
        SpecField::ALL.into_iter().find(|f| f.as_str() == s)
    }
}

fn text_of(p: Option<&PropertyValue>) -> String {
    match p {
        Some(PropertyValue::Text(s)) => s.clone(),
        Some(PropertyValue::Real(x)) => format!("{x}"),
        Some(PropertyValue::Integer(i)) => i.to_string(),
        _ => String::new(),
    }
}

fn number_of(p: Option<&PropertyValue>) -> f64 {
    p.and_then(PropertyValue::as_number)
        .filter(|x| x.is_finite())
        .unwrap_or(0.0)
}

fn row_from_fields(position: String, fields: &Record, source: SourceRef) -> SpecRow {
    SpecRow {
        position,
        designation: text_of(fields.get("designation")),
        name: text_of(fields.get("name")),
        type_mark: text_of(fields.get("type_mark")),
        unit: text_of(fields.get("unit")),
        qty: 1,
        mass: number_of(fields.get("mass")),
        price: number_of(fields.get("price")),
        note: text_of(fields.get("note")),
        sources: vec![source],
    }
}

/// Single specification row for one module, or `None` for unspecified types.
pub fn spec_row(m: &Module, path: &str) -> Option<SpecRow> {
    let src = SourceRef {
        path: path.into(),
        id: m.id,
    };
    match m.module_type {
        ModuleTypeId::Valve => Some(row_from_fields(String::new(), &m.props, src)),
        ModuleTypeId::Instrument => Some(row_from_fields(m.text_prop("pos_designation").into(), &m.props, src)),
        ModuleTypeId::Posdes => {
            let empty = Record::new();
            let fields = match m.prop("spec_props") {
                Some(PropertyValue::Record(r)) => r,
                _ => &empty,
            };
            Some(row_from_fields(m.text_prop("position_text").into(), fields, src))
        }
        _ => None,
    }
}

/// Gathers rows from the modules of the filtered types across drawings.
///
/// Rows equal on every specification field are merged with quantities summed.
/// The result is sorted by (position, designation, remaining fields), with
/// sources ordered by (path, id), so input order never matters.
pub fn collect_spec_rows(drawings: &[(&str, &Drawing)], filter: &[ModuleTypeId]) -> Vec<SpecRow> {
    let mut rows: Vec<SpecRow> = drawings
        .iter()
        .flat_map(|(path, d)| {
            d.modules()
                .filter(|m| filter.contains(&m.module_type))
                .filter_map(move |m| spec_row(m, path))
        })
        .collect();
    rows.sort_by(|a, b| a.key_cmp(b).then_with(|| a.sources.cmp(&b.sources)));
    let mut out: Vec<SpecRow> = Vec::new();
    for r in rows {
        match out.last_mut() {
            Some(last) if last.key_cmp(&r) == Ordering::Equal => {
                last.qty += r.qty;
                last.sources.extend(r.sources);
            }
            _ => out.push(r),
        }
    }
    for r in &mut out {
        r.sources.sort();
    }
    out
}

/// Replaces a table's rows with `rows`, placing each mapped field in its column.
pub fn fill_table_module(
    d: &Drawing,
    table_id: u64,
    rows: &[SpecRow],
    column_map: &[(SpecField, usize)],
) -> Result<Drawing, SpecError> {
    let m = d.module(table_id).ok_or(SpecError::NoSuchModule(table_id))?;
    if m.module_type != ModuleTypeId::Table {
        return Err(SpecError::WrongType {
            id: table_id,
            found: m.module_type,
            expected: "table",
        });
    }
    let columns = effective_columns(&m.props).map_err(ModuleError::from)?.len();
    if let Some(&(_, index)) = column_map.iter().find(|(_, i)| *i >= columns) {
        return Err(SpecError::BadColumn { index, columns });
    }
    let records = rows
        .iter()
        .map(|r| {
            let mut cells = vec![String::new(); columns];
            for &(f, i) in column_map {
                cells[i] = r.field_text(f);
            }
            crate::generators::row_record(&cells)
        })
        .collect();
    let mut upd = Props::new();
    upd.insert("rows".into(), PropertyValue::RecordList(records));
    let mut out = d.clone();
    out.set_properties(table_id, &upd)?;
    Ok(out)
}

/// One position text used by more than one module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Duplicate {
    pub position: String,
    pub occurrences: Vec<SourceRef>,
}

/// Groups position designations (posdes texts and instrument positions) and
/// reports every text used at least twice.
pub fn find_duplicate_positions(drawings: &[(&str, &Drawing)]) -> Vec<Duplicate> {
    let mut groups: BTreeMap<String, Vec<SourceRef>> = BTreeMap::new();
    for (path, d) in drawings {
        for m in d.modules() {
            let pos = match m.module_type {
                ModuleTypeId::Posdes => m.text_prop("position_text"),
                ModuleTypeId::Instrument => m.text_prop("pos_designation"),
                _ => continue,
            };
            if pos.is_empty() {
                continue;
            }
            groups.entry(pos.into()).or_default().push(SourceRef {
                path: (*path).into(),
                id: m.id,
            });
        }
    }
    groups
        .into_iter()
        .filter(|(_, v)| v.len() >= 2)
        .map(|(position, mut occurrences)| {
            occurrences.sort();
            Duplicate { position, occurrences }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CatalogEntry {
    pub name: String,
    pub type_mark: String,
    pub manufacturer_code: String,
    pub item_code: String,
    pub unit: String,
    pub unit_code: String,
    pub price: f64,
}

impl CatalogEntry {
    pub const FIELDS: [&'static str; 7] = [
        "name",
        "type_mark",
        "manufacturer_code",
        "item_code",
        "unit",
        "unit_code",
        "price",
    ];

    pub fn value(&self, field: &str) -> Option<PropertyValue> {
        Some(match field {
            "name" => PropertyValue::text(&self.name),
            "type_mark" => PropertyValue::text(&self.type_mark),
            "manufacturer_code" => PropertyValue::text(&self.manufacturer_code),
            "item_code" => PropertyValue::text(&self.item_code),
            "unit" => PropertyValue::text(&self.unit),
            "unit_code" => PropertyValue::text(&self.unit_code),
            "price" => PropertyValue::Real(self.price),
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Catalog {
    pub entries: BTreeMap<String, CatalogEntry>,
}

/// Copies the catalog fields the module's schema has onto the module and
/// regenerates it. Position designations receive every field in their
/// specification record.
pub fn apply_catalog_entry(
    m: &Module,
    c: &Catalog,
    entry_id: &str,
    grid: &crate::zone::ZoneGrid,
) -> Result<Module, SpecError> {
    let entry = c
        .entries
        .get(entry_id)
        .ok_or_else(|| SpecError::UnknownEntry(entry_id.into()))?;
    let mut upd = Props::new();
    match m.module_type {
        ModuleTypeId::Posdes => {
            let mut rec = match m.prop("spec_props") {
                Some(PropertyValue::Record(r)) => r.clone(),
                _ => Record::new(),
            };
            for f in CatalogEntry::FIELDS {
                rec.insert(f.into(), entry.value(f).expect("listed field"));
            }
            upd.insert("spec_props".into(), PropertyValue::Record(rec));
        }
        ModuleTypeId::Valve | ModuleTypeId::Instrument => {
            let schema = crate::props::schema_for(m.module_type);
            for f in CatalogEntry::FIELDS.into_iter().filter(|f| schema.contains(f)) {
                upd.insert(f.into(), entry.value(f).expect("listed field"));
            }
        }
        other => return Err(SpecError::NoCatalogKeys(other)),
    }
    Ok(set_properties(m, &upd, grid)?)
}

/// Applies a catalog entry to module `id` inside a drawing.
pub fn apply_catalog_in_drawing(d: &mut Drawing, id: u64, c: &Catalog, entry_id: &str) -> Result<(), SpecError> {
    let grid = d.zone_grid;
    let m = d.module(id).ok_or(SpecError::NoSuchModule(id))?;
    let new = apply_catalog_entry(m, c, entry_id, &grid)?;
    for it in &mut d.items {
        if let Item::Module(x) = it {
            if x.id == id {
                *x = new;
                break;
            }
        }
    }
    Ok(())
}
