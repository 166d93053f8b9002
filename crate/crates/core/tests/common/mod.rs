//! Random valid inputs shared by the integration tests.
#![allow(dead_code)]

use drawmod_core::drawing::Drawing;
use drawmod_core::generators::element_to_record;
use drawmod_core::geometry::{Element, LineStyle, LineType, Point, Rect};
use drawmod_core::props::{Axis, ModuleTypeId, PropertyValue, Props, Record};
use rand::seq::SliceRandom;
use rand::Rng;

pub const SHEET: (f64, f64) = (1189.0, 841.0);

pub fn sheet() -> Drawing {
    Drawing::new(Rect::from_coords(0.0, 0.0, SHEET.0, SHEET.1)).unwrap()
}

fn real(v: f64) -> PropertyValue {
    PropertyValue::Real(v)
}

fn text(s: impl Into<String>) -> PropertyValue {
    PropertyValue::text(s)
}

fn pt(x: f64, y: f64) -> PropertyValue {
    PropertyValue::Point(Point::new(x, y))
}

pub fn word<R: Rng>(rng: &mut R) -> String {
    const SYLLABLES: &[&str] = &["ка", "ла", "на", "PT", "TI", "ру", "бо", "15", "кч", "-", "x", "ze"];
    let n = rng.gen_range(1..=4);
    (0..n).map(|_| *SYLLABLES.choose(rng).unwrap()).collect()
}

pub fn style<R: Rng>(rng: &mut R) -> LineStyle {
    let t = *[
        LineType::Solid,
        LineType::Dashed,
        LineType::DashDot,
        LineType::ThinSolid,
    ]
    .choose(rng)
    .unwrap();
    LineStyle::new(t, rng.gen())
}

/// A valid element whose extent stays inside `area`.
pub fn element_in<R: Rng>(rng: &mut R, area: Rect) -> Element {
    let mut p = || {
        Point::new(
            rng.gen_range(area.min.x..area.max.x),
            rng.gen_range(area.min.y..area.max.y),
        )
    };
    let (a, b, c) = (p(), p(), p());
    let span = area.width().min(area.height());
    let s = style(rng);
    match rng.gen_range(0..5) {
        0 => Element::segment(a, b, s),
        1 => Element::polyline(vec![a, b, c], rng.gen(), s),
        2 => Element::circle(a, rng.gen_range(0.05..0.5) * span / 2.0 + 0.01, s),
        3 => {
            let start = rng.gen_range(-360.0..360.0);
            Element::arc(a, rng.gen_range(0.1..5.0), start, start + rng.gen_range(1.0..359.0), s)
        }
        _ => Element::text(a, rng.gen_range(1.0..7.0), rng.gen_range(-180.0..180.0), word(rng), s),
    }
}

fn placement<R: Rng>(rng: &mut R, p: &mut Props) {
    p.insert(
        "origin".into(),
        pt(rng.gen_range(0.0..SHEET.0), rng.gen_range(0.0..SHEET.1)),
    );
    if rng.gen_bool(0.5) {
        p.insert("angle_deg".into(), real(rng.gen_range(-360.0..360.0)));
    }
    if rng.gen_bool(0.3) {
        p.insert("mirrored".into(), PropertyValue::Boolean(true));
    }
    if rng.gen_bool(0.3) {
        p.insert("layer".into(), PropertyValue::Integer(rng.gen_range(-3..10)));
    }
}

fn symmetry<R: Rng>(rng: &mut R, p: &mut Props) {
    p.insert(
        "symmetry".into(),
        text(*["none", "mirror_x", "mirror_y", "both"].choose(rng).unwrap()),
    );
}

fn spec_texts<R: Rng>(rng: &mut R, p: &mut Props, keys: &[&str]) {
    for k in keys {
        if rng.gen_bool(0.5) {
            p.insert((*k).into(), text(word(rng)));
        }
    }
}

/// Path with segments of 40–100 mm and turns of 10–90° either way.
fn pipe_path<R: Rng>(rng: &mut R) -> Vec<Point> {
    let n = rng.gen_range(2..7);
    let mut heading: f64 = rng.gen_range(0.0..360.0);
    let mut at = Point::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
    let mut out = vec![at];
    for _ in 1..n {
        at = at + Point::from_angle(heading) * rng.gen_range(40.0..100.0);
        out.push(at);
        let turn = rng.gen_range(10.0..90.0);
        heading += if rng.gen() { turn } else { -turn };
    }
    out
}

fn axes<R: Rng>(rng: &mut R) -> PropertyValue {
    let n = rng.gen_range(0..3);
    PropertyValue::AxisList(
        (0..n)
            .map(|_| {
                Axis::new(
                    Point::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)),
                    rng.gen_range(0.0..360.0),
                )
            })
            .collect(),
    )
}

fn hex<R: Rng>(rng: &mut R) -> String {
    (0..32).map(|_| format!("{:02x}", rng.gen::<u8>())).collect()
}

/// A random property set that `create_module` accepts for `t`.
pub fn random_props<R: Rng>(rng: &mut R, t: ModuleTypeId) -> Props {
    let mut p = Props::new();
    match t {
        ModuleTypeId::User => {
            let n = rng.gen_range(1..6);
            let area = Rect::from_coords(-20.0, -20.0, 20.0, 20.0);
            let elements: Vec<Record> = (0..n).map(|_| element_to_record(&element_in(rng, area))).collect();
            p.insert("elements".into(), PropertyValue::RecordList(elements));
            p.insert("attach".into(), axes(rng));
            symmetry(rng, &mut p);
            if rng.gen_bool(0.5) {
                p.insert("scale".into(), real(rng.gen_range(0.25..4.0)));
            }
            placement(rng, &mut p);
        }
        ModuleTypeId::Pipeline => {
            let d = rng.gen_range(1.0..10.0);
            p.insert("path".into(), PropertyValue::PointList(pipe_path(rng)));
            p.insert("diameter_mm".into(), real(d));
            if rng.gen() {
                p.insert("corner".into(), text("bent"));
                p.insert("fillet_radius".into(), real(d / 2.0 + rng.gen_range(1.0..10.0)));
            }
            p.insert("show_centerline".into(), PropertyValue::Boolean(rng.gen()));
            placement(rng, &mut p);
        }
        ModuleTypeId::Valve => {
            symmetry(rng, &mut p);
            spec_texts(rng, &mut p, &["designation", "name", "note", "comment"]);
            p.insert(
                "dy".into(),
                PropertyValue::Integer(*[15, 25, 50, 80, 100].choose(rng).unwrap()),
            );
            p.insert("py".into(), real(rng.gen_range(0.0..40.0)));
            p.insert("mass".into(), real(rng.gen_range(0.0..100.0)));
            placement(rng, &mut p);
        }
        ModuleTypeId::Instrument => {
            p.insert(
                "function_code".into(),
                text(*["TI", "PI", "FE", "LT", "PDIRA"].choose(rng).unwrap()),
            );
            spec_texts(
                rng,
                &mut p,
                &[
                    "pos_designation",
                    "designation",
                    "name",
                    "type_mark",
                    "unit",
                    "upper_index",
                    "lower_index",
                ],
            );
            p.insert("on_board".into(), PropertyValue::Boolean(rng.gen()));
            p.insert(
                "kip_line_type".into(),
                text(*["", "solid", "dashed", "dash_dot", "thin_solid"].choose(rng).unwrap()),
            );
            p.insert("price".into(), real(rng.gen_range(0.0..1000.0)));
            placement(rng, &mut p);
        }
        ModuleTypeId::Table => {
            let ncols = rng.gen_range(1..6);
            let columns: Vec<Record> = (0..ncols)
                .map(|_| {
                    let mut c = Record::new();
                    c.insert("width".into(), real(rng.gen_range(5.0..60.0)));
                    c.insert("header".into(), text(word(rng)));
                    c
                })
                .collect();
            let rows: Vec<Record> = (0..rng.gen_range(0..6))
                .map(|_| (0..ncols).map(|i| (i.to_string(), text(word(rng)))).collect())
                .collect();
            p.insert("columns".into(), PropertyValue::RecordList(columns));
            p.insert("rows".into(), PropertyValue::RecordList(rows));
            p.insert("row_height_mm".into(), real(rng.gen_range(5.0..12.0)));
            p.insert("header_height_mm".into(), real(rng.gen_range(8.0..20.0)));
            p.insert(
                "top_left".into(),
                pt(rng.gen_range(0.0..800.0), rng.gen_range(100.0..800.0)),
            );
        }
        ModuleTypeId::Frame => {
            let format = *["A4", "A3", "A2", "A1", "A0"].choose(rng).unwrap();
            p.insert("format".into(), text(format));
            p.insert("landscape".into(), PropertyValue::Boolean(format != "A4" && rng.gen()));
            p.insert("multiplicity".into(), PropertyValue::Integer(rng.gen_range(1..4)));
        }
        ModuleTypeId::Posdes => {
            p.insert("position_text".into(), text(rng.gen_range(1..30).to_string()));
            p.insert(
                "leader_from".into(),
                pt(rng.gen_range(-30.0..0.0), rng.gen_range(-30.0..0.0)),
            );
            p.insert(
                "shelf_at".into(),
                pt(rng.gen_range(0.0..30.0), rng.gen_range(0.0..30.0)),
            );
            let mut spec = Record::new();
            for k in ["name", "type_mark", "unit"] {
                if rng.gen() {
                    spec.insert(k.into(), text(word(rng)));
                }
            }
            p.insert("spec_props".into(), PropertyValue::Record(spec));
            placement(rng, &mut p);
        }
        ModuleTypeId::Lightning => {
            let rods: Vec<Record> = (0..rng.gen_range(1..5))
                .map(|_| {
                    let mut r = Record::new();
                    r.insert("x".into(), real(rng.gen_range(-50.0..50.0)));
                    r.insert("y".into(), real(rng.gen_range(-50.0..50.0)));
                    r.insert("h".into(), real(rng.gen_range(1.0..150.0)));
                    r
                })
                .collect();
            let mut hx = 0.0;
            let heights: Vec<Record> = (0..rng.gen_range(0..4))
                .map(|_| {
                    hx += rng.gen_range(0.5..20.0);
                    let mut r = Record::new();
                    r.insert("hx".into(), real(hx));
                    r
                })
                .collect();
            p.insert("rods".into(), PropertyValue::RecordList(rods));
            p.insert("section_heights".into(), PropertyValue::RecordList(heights));
            p.insert("zone_class".into(), text(*["A", "B"].choose(rng).unwrap()));
            p.insert("scale_mm_per_m".into(), real(rng.gen_range(0.5..5.0)));
            p.insert(
                "plan_origin".into(),
                pt(rng.gen_range(0.0..SHEET.0), rng.gen_range(0.0..SHEET.1)),
            );
        }
        ModuleTypeId::Signature => {
            p.insert("person".into(), text(word(rng)));
            p.insert("position".into(), text(word(rng)));
            p.insert(
                "date".into(),
                text(format!(
                    "{:04}-{:02}-{:02}",
                    rng.gen_range(1990..2100),
                    rng.gen_range(1..13),
                    rng.gen_range(1..29)
                )),
            );
            p.insert(
                "time".into(),
                text(format!(
                    "{:02}:{:02}:{:02}",
                    rng.gen_range(0..24),
                    rng.gen_range(0..60),
                    rng.gen_range(0..60)
                )),
            );
            if rng.gen() {
                p.insert("digest".into(), text(hex(rng)));
                p.insert("mac".into(), text(hex(rng)));
            }
            placement(rng, &mut p);
        }
    }
    p
}

/// A drawing with a random mix of modules of every type and free elements.
pub fn random_drawing<R: Rng>(rng: &mut R) -> Drawing {
    let mut d = sheet();
    for _ in 0..rng.gen_range(0..12) {
        if rng.gen_bool(0.7) {
            let t = *ModuleTypeId::ALL.choose(rng).unwrap();
            d.add_module(t, &random_props(rng, t)).unwrap();
        } else {
            let e = element_in(rng, d.extent);
            d.add_element(rng.gen_range(-2..5), e).unwrap();
        }
    }
    d
}
