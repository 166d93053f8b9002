use std::path::{Path, PathBuf};

use drawmod::cli::{dispatch, Outcome, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use tempfile::TempDir;

fn run(args: &[&str]) -> Outcome {
    dispatch(std::iter::once("drawmod").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.code, EXIT_OK, "{args:?} failed: {}", o.stderr);
    o.stdout
}

struct Sheet {
    _dir: TempDir,
    root: PathBuf,
}

impl Sheet {
    fn new() -> Sheet {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        Sheet { _dir: dir, root }
    }

    fn path(&self, name: &str) -> String {
        self.root.join(name).display().to_string()
    }

    fn drawing(&self, name: &str) -> String {
        let p = self.path(name);
        ok(&["new", &p]);
        p
    }
}

fn add(file: &str, t: &str, props: &[&str]) -> String {
    let mut args = vec!["add", file, t, "--props"];
    args.extend_from_slice(props);
    ok(&args).trim().to_string()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["render"]).code, EXIT_USAGE);
    assert_eq!(run(&["--help"]).code, EXIT_OK);
    let v = run(&["--version"]);
    assert_eq!(v.code, EXIT_OK);
    assert_eq!(v.stdout.trim(), "drawmod 0.1.0 (kernel 0.1.0, format_version 1)");

    let s = Sheet::new();
    let missing = s.path("missing.draw.json");
    let o = run(&["list", &missing]);
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.contains("missing.draw.json"), "{}", o.stderr);

    let f = s.drawing("a.draw.json");
    assert_eq!(run(&["add", &f, "valve", "--props", "dy=2.5"]).code, EXIT_DOMAIN);
    assert_eq!(run(&["add", &f, "gizmo"]).code, EXIT_DOMAIN);
    assert_eq!(run(&["set", &f, "99", "--props", "dy=1"]).code, EXIT_DOMAIN);
    assert_eq!(run(&["edit", &f, "1"]).code, EXIT_USAGE);
    assert_eq!(
        run(&["edit", &f, "1", "--move", "1,1", "--rotate", "5"]).code,
        EXIT_USAGE
    );
    assert_eq!(run(&["new", &f, "--extent", "0,0,0,0"]).code, EXIT_DOMAIN);
}

#[test]
fn failed_commands_leave_the_file_alone() {
    let s = Sheet::new();
    let f = s.drawing("a.draw.json");
    add(&f, "valve", &["name=Кран"]);
    let before = std::fs::read(&f).unwrap();
    assert_eq!(run(&["set", &f, "1", "--props", "dy=bad"]).code, EXIT_DOMAIN);
    assert_eq!(std::fs::read(&f).unwrap(), before);
    assert!(!Path::new(&format!("{f}.tmp")).exists());
}

#[test]
fn build_edit_and_list() {
    let s = Sheet::new();
    let f = s.drawing("a.draw.json");
    assert_eq!(add(&f, "valve", &["name=Кран", "dy=50", "origin=(100,100)"]), "1");
    assert_eq!(
        add(
            &f,
            "pipeline",
            &[
                "path=[(0,0),(100,0),(100,50)]",
                "diameter_mm=5",
                "corner=bent",
                "fillet_radius=10"
            ]
        ),
        "2"
    );
    assert_eq!(
        add(&f, "element", &["kind=circle", "center=(10,10)", "radius=2", "layer=3"]),
        "element 2"
    );
    ok(&["edit", &f, "1", "--move", "10,0"]);
    ok(&["edit", &f, "1", "--rotate", "-90", "--about", "110,100"]);
    ok(&["edit", &f, "2", "--mirror", "0,0,0"]);
    ok(&["edit", &f, "1", "--align", "0", "--target", "50,50,0"]);
    let out = ok(&["list", &f]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3, "{out}");
    assert!(lines[0].starts_with("1\tvalve\t"), "{out}");
    assert!(lines[1].starts_with("2\tpipeline\t"), "{out}");
    assert!(lines[2].starts_with("item[2]\tcircle\tlayer=3"), "{out}");
    assert_eq!(run(&["edit", &f, "1", "--scale", "2"]).code, EXIT_DOMAIN);
    ok(&["edit", &f, "2", "--delete"]);
    assert_eq!(ok(&["list", &f]).lines().count(), 2);
}

#[test]
fn render_is_deterministic() {
    let s = Sheet::new();
    let f = s.drawing("a.draw.json");
    add(&f, "frame", &["format=A3", "landscape=true"]);
    add(
        &f,
        "instrument",
        &["function_code=TI", "pos_designation=1", "origin=(50,50)"],
    );
    let svg = ok(&["render", &f, "--cull"]);
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("viewBox=\"0 -297 420 297\""));
    assert!(svg.contains(">TI</text>"));
    assert_eq!(svg, ok(&["render", &f]));
    let out = s.path("a.svg");
    ok(&["render", &f, "--viewport", "0,0,100,100", "--out", &out]);
    let part = std::fs::read_to_string(&out).unwrap();
    assert!(part.contains(">TI</text>"));
    assert!(part.len() < svg.len());
    assert_eq!(run(&["render", &f, "--viewport", "5,5,5,9"]).code, EXIT_DOMAIN);
}

#[test]
fn spec_table_and_duplicates_across_files() {
    let s = Sheet::new();
    let a = s.drawing("a.draw.json");
    let b = s.drawing("b.draw.json");
    add(&a, "valve", &["designation=15кч18п", "name=Кран"]);
    add(&b, "valve", &["designation=15кч18п", "name=Кран"]);
    add(
        &a,
        "posdes",
        &[
            "position_text=1",
            "shelf_at=(10,10)",
            "spec_props=(name: \"Насос\", unit: \"шт.\")",
        ],
    );
    add(
        &b,
        "instrument",
        &["function_code=PI", "pos_designation=1", "name=Манометр"],
    );

    let spec = ok(&["spec", &b, &a]);
    let rows: Vec<&str> = spec.lines().skip(1).collect();
    assert_eq!(rows.len(), 3, "{spec}");
    assert!(rows.contains(&"\t15кч18п\tКран\t\t\t2\t0\t0\t"), "{spec}");
    assert_eq!(spec, ok(&["spec", &a, &b]));
    assert_eq!(ok(&["spec", &a, "--types", "valve"]).lines().count(), 2);

    let dup = run(&["check-dup", &b, &a]);
    assert_eq!(dup.code, EXIT_OK);
    assert_eq!(dup.stdout.trim(), format!("duplicate position 1: {a}#2, {b}#2"));
    assert_eq!(ok(&["check-dup", &a]).trim(), "no duplicate positions");

    let missing = s.path("gone.draw.json");
    let partial = run(&["spec", &a, &missing]);
    assert_eq!(partial.code, EXIT_DOMAIN);
    assert_eq!(partial.stdout.lines().count(), 3);
    assert!(partial.stderr.contains("gone.draw.json"));

    let t = add(&a, "table", &["preset=kipia", "top_left=(10,200)"]);
    ok(&["fill-table", &a, &t, &a, &b, "--columns", "position=0,name=3,qty=5"]);
    let svg = ok(&["render", &a]);
    assert!(
        svg.contains(">Манометр</text>") && svg.contains(">Насос</text>"),
        "{svg}"
    );
    assert_eq!(run(&["fill-table", &a, &t, "--columns", "name=40"]).code, EXIT_DOMAIN);
    assert_eq!(run(&["fill-table", &a, "1", "--columns", "name=0"]).code, EXIT_DOMAIN);
}

#[test]
fn prototypes_and_catalog() {
    let s = Sheet::new();
    let a = s.drawing("a.draw.json");
    let b = s.drawing("b.draw.json");
    add(&a, "valve", &["name=Кран", "dy=25", "origin=(300,40)", "angle_deg=30"]);
    add(
        &a,
        "lightning",
        &[
            "rods=[(x: 0, y: 0, h: 10)]",
            "zone_class=B",
            "section_heights=[(hx: 5)]",
        ],
    );
    let lib = s.path("lib.proto.json");
    ok(&["proto-save", &a, &lib, "--ids", "1,2", "--names", "кран,молниеотвод"]);
    let text = std::fs::read_to_string(&lib).unwrap();
    assert!(!text.contains("geometry"));
    let loaded = ok(&["proto-load", &lib, &b, "--names", "кран", "--at", "20,20"]);
    assert_eq!(loaded.trim(), "кран\t1");
    assert!(
        ok(&["list", &b]).contains("bbox=[16,18.5 24,21.5]"),
        "{}",
        ok(&["list", &b])
    );

    let cat = s.path("cat.json");
    std::fs::write(
        &cat,
        r#"{"format_version":1,"entries":{"v1":{"name":"Кран шаровой","type_mark":"11с67п","price":120.5}}}"#,
    )
    .unwrap();
    ok(&["catalog-apply", &b, "1", &cat, "v1"]);
    assert!(ok(&["spec", &b]).contains("Кран шаровой"));
    assert_eq!(run(&["catalog-apply", &b, "1", &cat, "v2"]).code, EXIT_DOMAIN);
    std::fs::write(
        &cat,
        r#"{"format_version":1,"entries":{"v1":{"name":"a"},"v1":{"name":"b"}}}"#,
    )
    .unwrap();
    assert_eq!(run(&["catalog-apply", &b, "1", &cat, "v1"]).code, EXIT_DOMAIN);

    let out = ok(&["lightning-section", &a, "2", "--hx", "5"]);
    let rx: f64 = out.trim().strip_prefix("rod 0: ").unwrap().parse().unwrap();
    assert!((rx - 6.847826086956522).abs() < 1e-9, "{out}");
    assert_eq!(ok(&["lightning-section", &a, "2", "--hx", "9.5"]), "rod 0: none\n");
    assert_eq!(run(&["lightning-section", &a, "1", "--hx", "5"]).code, EXIT_DOMAIN);
}

#[test]
fn sign_and_verify() {
    let s = Sheet::new();
    let f = s.drawing("a.draw.json");
    assert_eq!(ok(&["verify", &f]).trim(), "no signatures");
    add(&f, "valve", &["name=Кран"]);
    let sign = |person: &str, pw: &str| {
        ok(&[
            "sign",
            &f,
            "--person",
            person,
            "--position",
            "ГИП",
            "--password",
            pw,
            "--date",
            "2024-05-01",
            "--time",
            "12:00:00",
        ])
    };
    assert_eq!(sign("Иванов", "alpha").trim(), "signed as module 2");
    assert_eq!(sign("Петров", "beta").trim(), "signed as module 3");
    let both = ok(&["verify", &f, "--password", "Иванов=alpha", "--password", "Петров=beta"]);
    assert_eq!(
        both,
        "signature 2 (Иванов): integrity: valid, authenticity: valid\n\
         signature 3 (Петров): integrity: valid, authenticity: valid\n"
    );
    assert!(!std::fs::read_to_string(&f).unwrap().contains("alpha"));

    let unchecked = ok(&["verify", &f]);
    assert!(unchecked.contains("integrity: valid, authenticity: unchecked"));

    let wrong = run(&["verify", &f, "--password", "Иванов=nope"]);
    assert_eq!(wrong.code, EXIT_DOMAIN);
    assert!(wrong
        .stdout
        .contains("signature 2 (Иванов): integrity: valid, authenticity: broken"));

    assert_eq!(
        run(&[
            "sign",
            &f,
            "--person",
            "X",
            "--password",
            "p",
            "--date",
            "2024-5-1",
            "--time",
            "12:00:00"
        ])
        .code,
        EXIT_DOMAIN
    );

    ok(&["edit", &f, "1", "--move", "0.001,0"]);
    let broken = run(&["verify", &f]);
    assert_eq!(broken.code, EXIT_DOMAIN);
    assert!(broken.stdout.contains("signature 2 (Иванов): integrity: broken"));
    assert!(broken.stderr.contains("broken"));
}

#[test]
fn corrupted_file_is_rejected() {
    let s = Sheet::new();
    let f = s.drawing("a.draw.json");
    add(&f, "valve", &["origin=(10,10)"]);
    let text = std::fs::read_to_string(&f).unwrap();
    std::fs::write(&f, text.replacen("[10.0,10.0]", "[11.0,10.0]", 1)).unwrap();
    let o = run(&["list", &f]);
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.contains("does not match its properties"), "{}", o.stderr);
    std::fs::write(&f, "{\n  \"format_version\": 1,\n  oops\n}").unwrap();
    let o = run(&["list", &f]);
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);
}
