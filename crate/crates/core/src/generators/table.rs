use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{place, record_number, Generated, GenerationError, InternalList, Reader};
use crate::geometry::{Element, LineStyle, Point};
use crate::placement::Symmetry;
use crate::props::{PropertyValue, Props, Record};

const CELL_INSET: f64 = 1.0;
const MAX_TEXT_HEIGHT: f64 = 3.5;

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSpec {
    pub width: f64,
    pub header: String,
}

/// Column layout of the instrumentation (КИПиА) location table.
pub fn kipia_columns() -> Vec<ColumnSpec> {
    [
        (20.0, "Позиция"),
        (45.0, "Наименование параметра"),
        (35.0, "Место отбора"),
        (60.0, "Наименование и техническая характеристика"),
        (35.0, "Тип, марка"),
        (15.0, "Кол."),
        (25.0, "Примечание"),
    ]
    .into_iter()
    .map(|(width, header)| ColumnSpec {
        width,
        header: header.to_string(),
    })
    .collect()
}

/// Columns in use: the stored list, or the preset when the list is empty.
pub fn effective_columns(props: &Props) -> Result<Vec<ColumnSpec>, GenerationError> {
    let r = Reader(props);
    let stored = r.records("columns");
    if stored.is_empty() && r.text("preset") == "kipia" {
        return Ok(kipia_columns());
    }
    if stored.is_empty() {
        return Err(GenerationError::invalid("columns", "a table needs at least one column"));
    }
    stored
        .iter()
        .map(|c| {
            let width = record_number(c, "width", "columns")?;
            if !(width > 0.0) {
                return Err(GenerationError::invalid("columns", "column width must be positive"));
            }
            let header = match c.get("header") {
                None => String::new(),
                Some(PropertyValue::Text(s)) => s.clone(),
                Some(_) => return Err(GenerationError::invalid("columns", "header must be text")),
            };
            if c.keys().any(|k| k != "width" && k != "header") {
                return Err(GenerationError::invalid(
                    "columns",
                    "column records hold only width and header",
                ));
            }
            Ok(ColumnSpec { width, header })
        })
        .collect()
}

/// Row record: cells keyed by their column index in decimal.
pub fn row_record<S: AsRef<str>>(cells: &[S]) -> Record {
    cells
        .iter()
        .enumerate()
        .map(|(i, c)| (i.to_string(), PropertyValue::text(c.as_ref())))
        .collect()
}

fn row_cells(rec: &Record, ncols: usize) -> Result<Vec<&str>, GenerationError> {
    if rec.len() != ncols {
        return Err(GenerationError::invalid(
            "rows",
            alloc::format!("row has {} cells, table has {ncols} columns", rec.len()),
        ));
    }
    (0..ncols)
        .map(|i| {
            rec.get(&i.to_string())
                .and_then(PropertyValue::as_text)
                .ok_or_else(|| GenerationError::invalid("rows", alloc::format!("row lacks text cell `{i}`")))
        })
        .collect()
}

/// Ruled table with a header row; texts are inset 1 mm and vertically centred.
///
/// Element order: verticals, horizontals, header texts, then data texts row by
/// row. The internal list `rows` maps each data row to its texts.
pub fn gen_table(props: &Props) -> Result<Generated, GenerationError> {
    let r = Reader(props);
    let columns = effective_columns(props)?;
    let row_h = r.real("row_height_mm");
    let head_h = r.real("header_height_mm");
    if !(row_h > 0.0) {
        return Err(GenerationError::invalid("row_height_mm", "must be positive"));
    }
    if !(head_h > 0.0) {
        return Err(GenerationError::invalid("header_height_mm", "must be positive"));
    }
    let rows = r
        .records("rows")
        .iter()
        .map(|rec| row_cells(rec, columns.len()))
        .collect::<Result<Vec<_>, _>>()?;

    let top_left = r.point("top_left");
    let mut xs = vec![top_left.x];
    for c in &columns {
        xs.push(xs[xs.len() - 1] + c.width);
    }
    let width_end = xs[xs.len() - 1];
    let mut ys = vec![top_left.y, top_left.y - head_h];
    for i in 1..=rows.len() {
        ys.push(top_left.y - head_h - i as f64 * row_h);
    }
    let bottom = ys[ys.len() - 1];

    let mut out = Vec::new();
    for x in &xs {
        out.push(Element::segment(
            Point::new(*x, top_left.y),
            Point::new(*x, bottom),
            LineStyle::SOLID,
        ));
    }
    for y in &ys {
        out.push(Element::segment(
            Point::new(top_left.x, *y),
            Point::new(width_end, *y),
            LineStyle::SOLID,
        ));
    }
    let head_text = MAX_TEXT_HEIGHT.min(0.6 * head_h);
    for (c, x) in columns.iter().zip(&xs) {
        let y = top_left.y - head_h / 2.0 - head_text / 2.0;
        out.push(Element::text(
            Point::new(x + CELL_INSET, y),
            head_text,
            0.0,
            c.header.as_str(),
            LineStyle::THIN,
        ));
    }
    let cell_text = MAX_TEXT_HEIGHT.min(0.6 * row_h);
    let mut slices = Vec::with_capacity(rows.len());
    for (i, cells) in rows.iter().enumerate() {
        let start = out.len();
        let y = ys[i + 1] - row_h / 2.0 - cell_text / 2.0;
        for (cell, x) in cells.iter().zip(&xs) {
            out.push(Element::text(
                Point::new(x + CELL_INSET, y),
                cell_text,
                0.0,
                *cell,
                LineStyle::THIN,
            ));
        }
        slices.push(start..out.len());
    }
    Ok(Generated {
        elements: place(out, r.placement(), Symmetry::None)?,
        lists: vec![InternalList { name: "rows", slices }],
    })
}
