//! Command-line surface. `dispatch` runs one invocation and returns the exit
//! code with captured output: 0 on success, 1 on a domain error, 2 on a
//! usage error.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use drawmod_core::codec::{load_prototypes, save_prototypes, Prototype, FORMAT_VERSION};
use drawmod_core::drawing::{Drawing, Item};
use drawmod_core::generators::element_from_record;
use drawmod_core::geometry::{Point, Rect};
use drawmod_core::integrity::{sign_drawing, verify_signatures, Check, SignRequest};
use drawmod_core::lightning::{single_rod_radius, LightningParams};
use drawmod_core::module::{align_by_attach, Edit};
use drawmod_core::placement::Symmetry;
use drawmod_core::props::{Axis, ModuleTypeId, PropertyValue};
use drawmod_core::speccing::{
    apply_catalog_in_drawing, collect_spec_rows, fill_table_module, find_duplicate_positions, SpecField,
};
use drawmod_core::view::Viewport;

use crate::io::{read_bytes, read_catalog, read_drawing, read_drawings, write_bytes, write_drawing};
use crate::literal::{parse_props, parse_record};
use crate::svg::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn long_version() -> &'static str {
    static V: std::sync::OnceLock<String> = std::sync::OnceLock::new();
    V.get_or_init(|| {
        format!(
            "{} (kernel {}, format_version {})",
            env!("CARGO_PKG_VERSION"),
            drawmod_core::KERNEL_VERSION,
            FORMAT_VERSION
        )
    })
}

#[derive(Parser, Debug)]
#[command(name = "drawmod", version = long_version(), about = "Parametric drawing modules: create, edit, render, specify, sign")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Create an empty drawing file.
    New {
        file: PathBuf,
        /// Drawing extent in mm: x0,y0,x1,y1.
        #[arg(long, default_value = "0,0,420,297")]
        extent: String,
        /// Zone grid cells along each axis.
        #[arg(long, default_value_t = drawmod_core::drawing::DEFAULT_ZONES)]
        zones: u32,
    },
    /// Add a module (or a free element with type `element`); prints the id.
    Add {
        file: PathBuf,
        #[arg(value_name = "TYPE")]
        module_type: String,
        #[command(flatten)]
        props: PropsArg,
    },
    /// Change module properties and regenerate.
    Set {
        file: PathBuf,
        id: u64,
        #[command(flatten)]
        props: PropsArg,
    },
    /// Move, rotate, mirror, stretch or align a module.
    Edit(EditArgs),
    /// List the items of a drawing.
    List { file: PathBuf },
    /// Render a viewport as SVG.
    Render {
        file: PathBuf,
        /// x0,y0,x1,y1 in mm; defaults to the drawing extent.
        #[arg(long)]
        viewport: Option<String>,
        /// Skip modules by zone mask before exact tests.
        #[arg(long)]
        cull: bool,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Aggregate specification rows over drawing files.
    Spec {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Module types to scan.
        #[arg(long, default_value = "valve,instrument,posdes")]
        types: String,
    },
    /// Fill a table module with specification rows.
    FillTable {
        file: PathBuf,
        table_id: u64,
        /// Drawings to collect rows from; the table's own drawing when absent.
        sources: Vec<PathBuf>,
        #[arg(long, default_value = "valve,instrument,posdes")]
        types: String,
        /// field=column pairs, e.g. position=0,name=3,qty=5.
        #[arg(long)]
        columns: String,
    },
    /// Report position designations used more than once.
    CheckDup {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Save module parameters (no geometry) to a prototype library.
    ProtoSave {
        file: PathBuf,
        library: PathBuf,
        /// Module ids, comma separated.
        #[arg(long)]
        ids: String,
        /// Entry names, comma separated; `<type>-<id>` when absent.
        #[arg(long)]
        names: Option<String>,
    },
    /// Add prototype library entries to a drawing.
    ProtoLoad {
        library: PathBuf,
        file: PathBuf,
        /// Entry names to add; all entries when absent.
        #[arg(long)]
        names: Option<String>,
        /// Origin for the added modules, x,y.
        #[arg(long)]
        at: Option<String>,
    },
    /// Copy catalog fields onto a module.
    CatalogApply {
        file: PathBuf,
        id: u64,
        catalog: PathBuf,
        entry: String,
    },
    /// Print section radii (m) of a lightning module's rods at one height.
    LightningSection {
        file: PathBuf,
        id: u64,
        #[arg(long)]
        hx: f64,
    },
    /// Sign a drawing.
    Sign {
        file: PathBuf,
        #[arg(long)]
        person: String,
        #[arg(long, default_value = "")]
        position: String,
        #[arg(long)]
        password: String,
        /// YYYY-MM-DD
        #[arg(long)]
        date: String,
        /// HH:MM:SS
        #[arg(long)]
        time: String,
    },
    /// Check every signature of a drawing.
    Verify {
        file: PathBuf,
        /// person=password, repeatable, to check authenticity.
        #[arg(long = "password")]
        passwords: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct PropsArg {
    /// key=value property literals.
    #[arg(long, num_args = 1.., value_name = "KEY=VALUE")]
    props: Vec<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("op").required(true).multiple(false)))]
struct EditArgs {
    file: PathBuf,
    id: u64,
    /// Translate by dx,dy.
    #[arg(long = "move", value_name = "DX,DY", group = "op")]
    move_by: Option<String>,
    /// Rotate by degrees (counter-clockwise) about --about.
    #[arg(long, allow_hyphen_values = true, group = "op")]
    rotate: Option<f64>,
    /// Mirror across the line through x,y at the given angle: x,y,deg.
    #[arg(long, group = "op")]
    mirror: Option<String>,
    /// Mirror in the module's own frame: mirror_x, mirror_y or both.
    #[arg(long, group = "op")]
    symmetry: Option<String>,
    /// Uniform stretch about --about (user modules).
    #[arg(long, group = "op")]
    scale: Option<f64>,
    /// Align attach axis N to --target.
    #[arg(long, value_name = "N", group = "op")]
    align: Option<usize>,
    /// Target axis x,y,deg for --align.
    #[arg(long, requires = "align")]
    target: Option<String>,
    /// Pivot x,y for --rotate and --scale; the origin by default.
    #[arg(long)]
    about: Option<String>,
    /// Remove the module.
    #[arg(long, group = "op")]
    delete: bool,
}

/// A domain failure: reported on stderr with exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Run = Result<(), Failure>;

struct Ctx {
    out: String,
    err: String,
    /// Set when a command completed but some part of it failed.
    partial_failure: bool,
}

fn numbers(s: &str, n: usize, what: &str) -> Result<Vec<f64>, Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure(format!("{what}: expected {n} comma-separated numbers")))?;
    if v.len() != n || v.iter().any(|x| !x.is_finite()) {
        return Err(Failure(format!("{what}: expected {n} comma-separated finite numbers")));
    }
    Ok(v)
}

fn rect_arg(s: &str, what: &str) -> Result<Rect, Failure> {
    let v = numbers(s, 4, what)?;
    let r = Rect::from_coords(v[0], v[1], v[2], v[3]);
    if r.width() > 0.0 && r.height() > 0.0 {
        Ok(r)
    } else {
        Err(Failure(format!("{what}: rectangle needs positive width and height")))
    }
}

fn point_arg(s: &str, what: &str) -> Result<Point, Failure> {
    let v = numbers(s, 2, what)?;
    Ok(Point::new(v[0], v[1]))
}

fn types_arg(s: &str) -> Result<Vec<ModuleTypeId>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| ModuleTypeId::parse(t.trim()).ok_or_else(|| Failure(format!("unknown module type `{t}`"))))
        .collect()
}

fn list_arg(s: &str) -> Vec<String> {
    s.split(',')
        .map(|x| x.trim().to_string())
        .filter(|x| !x.is_empty())
        .collect()
}

/// Loads several drawings, reporting unreadable ones and carrying on.
fn scan(ctx: &mut Ctx, files: &[PathBuf]) -> Vec<(String, Drawing)> {
    let (ok, errors) = read_drawings(files);
    for e in errors {
        let _ = writeln!(ctx.err, "error: {e}");
        ctx.partial_failure = true;
    }
    ok
}

fn cmd_new(ctx: &mut Ctx, file: &Path, extent: &str, zones: u32) -> Run {
    let extent = rect_arg(extent, "--extent")?;
    let mut d = Drawing::new(extent)?;
    d.zone_grid = drawmod_core::zone::ZoneGrid::over(extent, zones, zones);
    d.validate()?;
    write_drawing(file, &d)?;
    let _ = writeln!(ctx.out, "created {}", file.display());
    Ok(())
}

fn cmd_add(ctx: &mut Ctx, file: &Path, module_type: &str, props: &[String]) -> Run {
    let mut d = read_drawing(file)?;
    if module_type == "element" {
        let mut rec = parse_record(props)?;
        let layer = match rec.remove("layer") {
            None => 0,
            Some(PropertyValue::Integer(l)) => l,
            Some(_) => return Err(Failure("layer must be an integer".into())),
        };
        let e = element_from_record(&rec)?;
        let idx = d.add_element(layer, e)?;
        write_drawing(file, &d)?;
        let _ = writeln!(ctx.out, "element {idx}");
        return Ok(());
    }
    let t = ModuleTypeId::parse(module_type).ok_or_else(|| Failure(format!("unknown module type `{module_type}`")))?;
    let p = parse_props(t, props)?;
    let id = d.add_module(t, &p)?;
    write_drawing(file, &d)?;
    let _ = writeln!(ctx.out, "{id}");
    Ok(())
}

fn cmd_set(ctx: &mut Ctx, file: &Path, id: u64, props: &[String]) -> Run {
    let mut d = read_drawing(file)?;
    let t = d
        .module(id)
        .ok_or_else(|| Failure(format!("no module with id {id}")))?
        .module_type;
    let p = parse_props(t, props)?;
    d.set_properties(id, &p)?;
    write_drawing(file, &d)?;
    let _ = writeln!(ctx.out, "updated {id}");
    Ok(())
}

fn cmd_edit(ctx: &mut Ctx, a: &EditArgs) -> Run {
    let mut d = read_drawing(&a.file)?;
    let about = a
        .about
        .as_deref()
        .map(|s| point_arg(s, "--about"))
        .transpose()?
        .unwrap_or(Point::ORIGIN);
    if a.delete {
        d.remove_module(a.id)?;
        write_drawing(&a.file, &d)?;
        let _ = writeln!(ctx.out, "deleted {}", a.id);
        return Ok(());
    }
    if let Some(index) = a.align {
        let t = a
            .target
            .as_deref()
            .ok_or_else(|| Failure("--align needs --target x,y,deg".into()))?;
        let v = numbers(t, 3, "--target")?;
        let target = Axis::new(Point::new(v[0], v[1]), v[2]);
        d.update_module(a.id, |m, g| align_by_attach(m, index, target, g))?;
    } else {
        let edit = if let Some(s) = &a.move_by {
            Edit::Move(point_arg(s, "--move")?)
        } else if let Some(deg) = a.rotate {
            Edit::Rotate { about, angle_deg: deg }
        } else if let Some(s) = &a.mirror {
            let v = numbers(s, 3, "--mirror")?;
            Edit::Mirror {
                point: Point::new(v[0], v[1]),
                angle_deg: v[2],
            }
        } else if let Some(s) = &a.symmetry {
            Edit::Symmetry(Symmetry::parse(s).ok_or_else(|| Failure(format!("unknown symmetry code `{s}`")))?)
        } else if let Some(k) = a.scale {
            Edit::Scale { about, factor: k }
        } else {
            unreachable!("clap requires one edit operation")
        };
        d.edit(a.id, edit)?;
    }
    write_drawing(&a.file, &d)?;
    let _ = writeln!(ctx.out, "edited {}", a.id);
    Ok(())
}

fn fmt_rect(r: &Rect) -> String {
    format!(
        "[{},{} {},{}]",
        r.min.x + 0.0,
        r.min.y + 0.0,
        r.max.x + 0.0,
        r.max.y + 0.0
    )
}

fn cmd_list(ctx: &mut Ctx, file: &Path) -> Run {
    let d = read_drawing(file)?;
    for (i, it) in d.items.iter().enumerate() {
        match it {
            Item::Module(m) => {
                let _ = writeln!(
                    ctx.out,
                    "{}\t{}\tlayer={}\telements={}\tbbox={}",
                    m.id,
                    m.module_type,
                    m.layer,
                    m.geometry.len(),
                    fmt_rect(&m.bbox)
                );
            }
            Item::Element { layer, element } => {
                let _ = writeln!(
                    ctx.out,
                    "item[{i}]\t{}\tlayer={layer}\tbbox={}",
                    element.kind_name(),
                    fmt_rect(&element.bbox())
                );
            }
        }
    }
    Ok(())
}

fn cmd_render(ctx: &mut Ctx, file: &Path, viewport: Option<&str>, cull: bool, out: Option<&Path>) -> Run {
    let d = read_drawing(file)?;
    let rect = viewport
        .map(|v| rect_arg(v, "--viewport"))
        .transpose()?
        .unwrap_or(d.extent);
    let v = Viewport::new(rect).ok_or_else(|| Failure("viewport needs positive area".into()))?;
    let svg = render_svg(&d, &v, cull);
    match out {
        Some(p) => {
            write_bytes(p, svg.as_bytes())?;
            let _ = writeln!(ctx.out, "wrote {}", p.display());
        }
        None => ctx.out.push_str(&svg),
    }
    Ok(())
}

fn cmd_spec(ctx: &mut Ctx, files: &[PathBuf], types: &str) -> Run {
    let types = types_arg(types)?;
    let drawings = scan(ctx, files);
    let refs: Vec<(&str, &Drawing)> = drawings.iter().map(|(p, d)| (p.as_str(), d)).collect();
    let rows = collect_spec_rows(&refs, &types);
    let _ = writeln!(
        ctx.out,
        "position\tdesignation\tname\ttype_mark\tunit\tqty\tmass\tprice\tnote"
    );
    for r in rows {
        let _ = writeln!(
            ctx.out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.position, r.designation, r.name, r.type_mark, r.unit, r.qty, r.mass, r.price, r.note
        );
    }
    Ok(())
}

fn cmd_fill_table(ctx: &mut Ctx, file: &Path, table_id: u64, sources: &[PathBuf], types: &str, columns: &str) -> Run {
    let types = types_arg(types)?;
    let map = list_arg(columns)
        .iter()
        .map(|pair| {
            let (f, c) = pair
                .split_once('=')
                .ok_or_else(|| Failure(format!("--columns: `{pair}` is not field=index")))?;
            let field = SpecField::parse(f.trim()).ok_or_else(|| Failure(format!("--columns: unknown field `{f}`")))?;
            let col = c
                .trim()
                .parse::<usize>()
                .map_err(|_| Failure(format!("--columns: bad index `{c}`")))?;
            Ok((field, col))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let d = read_drawing(file)?;
    let rows = if sources.is_empty() {
        collect_spec_rows(&[(&file.display().to_string(), &d)], &types)
    } else {
        let drawings = scan(ctx, sources);
        let refs: Vec<(&str, &Drawing)> = drawings.iter().map(|(p, d)| (p.as_str(), d)).collect();
        collect_spec_rows(&refs, &types)
    };
    let filled = fill_table_module(&d, table_id, &rows, &map)?;
    write_drawing(file, &filled)?;
    let _ = writeln!(ctx.out, "filled table {table_id} with {} rows", rows.len());
    Ok(())
}

fn cmd_check_dup(ctx: &mut Ctx, files: &[PathBuf]) -> Run {
    let drawings = scan(ctx, files);
    let refs: Vec<(&str, &Drawing)> = drawings.iter().map(|(p, d)| (p.as_str(), d)).collect();
    let report = find_duplicate_positions(&refs);
    if report.is_empty() {
        let _ = writeln!(ctx.out, "no duplicate positions");
    }
    for dup in report {
        let occ: Vec<String> = dup.occurrences.iter().map(|o| format!("{}#{}", o.path, o.id)).collect();
        let _ = writeln!(ctx.out, "duplicate position {}: {}", dup.position, occ.join(", "));
    }
    Ok(())
}

fn cmd_proto_save(ctx: &mut Ctx, file: &Path, library: &Path, ids: &str, names: Option<&str>) -> Run {
    let d = read_drawing(file)?;
    let ids = list_arg(ids)
        .iter()
        .map(|s| s.parse::<u64>().map_err(|_| Failure(format!("--ids: bad id `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let names = names.map(list_arg);
    if names.as_ref().is_some_and(|n| n.len() != ids.len()) {
        return Err(Failure("--names must list one name per id".into()));
    }
    let protos = ids
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let m = d
                .module(*id)
                .ok_or_else(|| Failure(format!("no module with id {id}")))?;
            let name = names
                .as_ref()
                .map_or_else(|| format!("{}-{id}", m.module_type), |n| n[i].clone());
            Ok(Prototype::from_module(name, m))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    write_bytes(library, &save_prototypes(&protos)?)?;
    let _ = writeln!(ctx.out, "saved {} prototypes", protos.len());
    Ok(())
}

fn cmd_proto_load(ctx: &mut Ctx, library: &Path, file: &Path, names: Option<&str>, at: Option<&str>) -> Run {
    let mut d = read_drawing(file)?;
    let loaded = load_prototypes(&read_bytes(library)?, &d.zone_grid)?;
    for (i, name, e) in &loaded.errors {
        let _ = writeln!(ctx.err, "error: entry {i} ({name}): {e}");
        ctx.partial_failure = true;
    }
    let wanted = names.map(list_arg);
    let at = at.map(|s| point_arg(s, "--at")).transpose()?;
    for (name, m) in loaded.modules {
        if wanted.as_ref().is_some_and(|w| !w.contains(&name)) {
            continue;
        }
        let id = d.insert_module(m);
        if let Some(p) = at {
            d.edit(id, Edit::Move(p))?;
        }
        let _ = writeln!(ctx.out, "{name}\t{id}");
    }
    write_drawing(file, &d)?;
    Ok(())
}

fn cmd_catalog_apply(ctx: &mut Ctx, file: &Path, id: u64, catalog: &Path, entry: &str) -> Run {
    let mut d = read_drawing(file)?;
    let c = read_catalog(catalog)?;
    apply_catalog_in_drawing(&mut d, id, &c, entry)?;
    write_drawing(file, &d)?;
    let _ = writeln!(ctx.out, "applied {entry} to {id}");
    Ok(())
}

fn cmd_lightning_section(ctx: &mut Ctx, file: &Path, id: u64, hx: f64) -> Run {
    let d = read_drawing(file)?;
    let m = d.module(id).ok_or_else(|| Failure(format!("no module with id {id}")))?;
    if m.module_type != ModuleTypeId::Lightning {
        return Err(Failure(format!("module {id} is a {}, not lightning", m.module_type)));
    }
    if !(hx.is_finite() && hx >= 0.0) {
        return Err(Failure("--hx must be a finite height >= 0".into()));
    }
    let params = LightningParams::from_props(&m.props)?;
    for (i, rod) in params.rods.iter().enumerate() {
        match single_rod_radius(rod.h, hx, params.zone_class) {
            Ok(rx) => {
                let _ = writeln!(ctx.out, "rod {i}: {rx}");
            }
            Err(_) => {
                let _ = writeln!(ctx.out, "rod {i}: none");
            }
        }
    }
    Ok(())
}

fn cmd_sign(ctx: &mut Ctx, file: &Path, req: SignRequest) -> Run {
    let mut d = read_drawing(file)?;
    let id = sign_drawing(&mut d, &req)?;
    write_drawing(file, &d)?;
    let _ = writeln!(ctx.out, "signed as module {id}");
    Ok(())
}

fn cmd_verify(ctx: &mut Ctx, file: &Path, passwords: &[String]) -> Run {
    let d = read_drawing(file)?;
    let pw = passwords
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .ok_or_else(|| Failure(format!("--password: `{p}` is not person=password")))
        })
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    let statuses = verify_signatures(&d, &pw);
    if statuses.is_empty() {
        let _ = writeln!(ctx.out, "no signatures");
    }
    for s in &statuses {
        let _ = writeln!(
            ctx.out,
            "signature {} ({}): integrity: {}, authenticity: {}",
            s.id,
            s.person,
            s.integrity.as_str(),
            s.authenticity.as_str()
        );
        if s.integrity == Check::Broken || s.authenticity == Check::Broken {
            ctx.partial_failure = true;
        }
    }
    if ctx.partial_failure {
        let _ = writeln!(ctx.err, "error: at least one signature is broken");
    }
    Ok(())
}

fn run(ctx: &mut Ctx, cmd: Command) -> Run {
    match cmd {
        Command::New { file, extent, zones } => cmd_new(ctx, &file, &extent, zones),
        Command::Add {
            file,
            module_type,
            props,
        } => cmd_add(ctx, &file, &module_type, &props.props),
        Command::Set { file, id, props } => cmd_set(ctx, &file, id, &props.props),
        Command::Edit(a) => cmd_edit(ctx, &a),
        Command::List { file } => cmd_list(ctx, &file),
        Command::Render {
            file,
            viewport,
            cull,
            out,
        } => cmd_render(ctx, &file, viewport.as_deref(), cull, out.as_deref()),
        Command::Spec { files, types } => cmd_spec(ctx, &files, &types),
        Command::FillTable {
            file,
            table_id,
            sources,
            types,
            columns,
        } => cmd_fill_table(ctx, &file, table_id, &sources, &types, &columns),
        Command::CheckDup { files } => cmd_check_dup(ctx, &files),
        Command::ProtoSave {
            file,
            library,
            ids,
            names,
        } => cmd_proto_save(ctx, &file, &library, &ids, names.as_deref()),
        Command::ProtoLoad {
            library,
            file,
            names,
            at,
        } => cmd_proto_load(ctx, &library, &file, names.as_deref(), at.as_deref()),
        Command::CatalogApply {
            file,
            id,
            catalog,
            entry,
        } => cmd_catalog_apply(ctx, &file, id, &catalog, &entry),
        Command::LightningSection { file, id, hx } => cmd_lightning_section(ctx, &file, id, hx),
        Command::Sign {
            file,
            person,
            position,
            password,
            date,
            time,
        } => cmd_sign(
            ctx,
            &file,
            SignRequest {
                person,
                position,
                password,
                date,
                time,
            },
        ),
        Command::Verify { file, passwords } => cmd_verify(ctx, &file, &passwords),
    }
}

/// Runs one command line (`argv[0]` is the program name).
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut ctx = Ctx {
        out: String::new(),
        err: String::new(),
        partial_failure: false,
    };
    let code = match run(&mut ctx, cli.command) {
        Ok(()) if ctx.partial_failure => EXIT_DOMAIN,
        Ok(()) => EXIT_OK,
        Err(Failure(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            EXIT_DOMAIN
        }
    };
    Outcome {
        code,
        stdout: ctx.out,
        stderr: ctx.err,
    }
}
