use std::path::PathBuf;
use std::sync::Arc;

use ecat::centers::gamma1;
use ecat::core_cat::{check_category, Budget};
use ecat::enriched_monoidal::check_enriched_braided;
use ecat::workbench::cli::run;
use ecat::workbench::{load_str, save_str, Document, Names, WorkbenchError};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn read(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["ecat".to_string()];
    argv.extend(args.iter().map(|a| a.to_string()));
    let ex = run(argv);
    (ex.exit_code, ex.output)
}

#[test]
fn lattice2_survives_save_and_load() {
    let d = load_str(&read("lattice2.ecat")).unwrap();
    let text = save_str(&d).unwrap();
    let back = load_str(&text).unwrap();
    assert_eq!(back.monoidal, d.monoidal);
    assert_eq!(back.braided, d.braided);
    assert_eq!(save_str(&back).unwrap(), text);
}

#[test]
fn explicit_and_generated_lattice2_agree() {
    let explicit = load_str(&read("lattice2-explicit.ecat")).unwrap();
    let generated = load_str(&read("lattice2.ecat")).unwrap();
    let (e, g) = (explicit.monoidal.unwrap(), generated.monoidal.unwrap());
    assert_eq!(e.tensor_obj, g.tensor_obj);
    assert_eq!(e.unit, g.unit);
    assert_eq!(e.cat.n_mor(), g.cat.n_mor());
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(e.cat.hom(x, y).len(), g.cat.hom(x, y).len());
        }
    }
}

#[test]
fn computed_gamma1_survives_save_and_load() {
    let d = load_str(&read("monoid-preorder.ecat")).unwrap();
    let em = d.enriched_monoidal.clone().unwrap();
    let g1 = gamma1(&em, Budget::DEFAULT).unwrap();
    let doc = Document::from_enriched_braided(&g1.braided, Names::default(), vec![]);
    let text = save_str(&doc).unwrap();
    let back = load_str(&text).unwrap();
    assert_eq!(back.enriched_braided.as_ref(), Some(&g1.braided));
    assert!(check_enriched_braided(back.enriched_braided.as_ref().unwrap()).is_valid());
    assert_eq!(save_str(&back).unwrap(), text);
}

#[test]
fn malformed_composition_is_rejected_on_load() {
    let err = load_str(&read("broken-compose.ecat")).unwrap_err();
    assert!(
        matches!(err, WorkbenchError::Semantic(ref m) if m.contains("unknown morphism `g`")),
        "{err}"
    );

    let ill_typed = r#"
        [category]
        objects = ["x", "y"]
        morphisms = [["idx", "x", "x"], ["f", "x", "y"], ["idy", "y", "y"]]
        identities = ["idx", "idy"]
        compose = [["f", "f", "f"]]
    "#;
    assert!(load_str(ill_typed).is_err());

    let err = load_str("[category]\nobjects = [\"x\"\n").unwrap_err();
    assert!(
        matches!(err, WorkbenchError::Parse(ref m) if m.contains("line")),
        "{err}"
    );
}

#[test]
fn fixtures_pass_their_validators() {
    for name in [
        "lattice2.ecat",
        "lattice4.ecat",
        "z2monoid.ecat",
        "discZ2-self.ecat",
        "lattice2-self.ecat",
        "terminal.ecat",
        "chain2.ecat",
        "monoid-preorder.ecat",
        "ast-algebra.ecat",
        "lattice2-explicit.ecat",
        "global-sections.ecat",
    ] {
        let path = fixture(name);
        let (code, out) = cli(&["validate", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}:\n{out}");
    }
}

#[test]
fn cli_exit_codes() {
    let p = |n: &str| fixture(n).to_str().unwrap().to_string();
    assert_eq!(cli(&["validate", &p("lattice2.ecat")]).0, 0);
    let (code, out) = cli(&["center", "--e1", &p("z2monoid.ecat")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[enriched_monoidal]"));
    assert_eq!(
        cli(&["verify", "--theorem", "zhcm", &p("discZ2-self.ecat")]).0,
        0
    );
    assert_eq!(cli(&["validate", &p("broken-compose.ecat")]).0, 1);
    assert_eq!(cli(&["validate", &p("no-such-file.ecat")]).0, 2);
    assert_eq!(
        cli(&[
            "verify",
            "--theorem",
            "e0",
            "--budget",
            "10",
            &p("chain2.ecat")
        ])
        .0,
        2
    );
    assert_eq!(cli(&["center", &p("chain2.ecat")]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
}

#[test]
fn underlying_of_chain2_is_the_order() {
    let (code, out) = cli(&["underlying", fixture("chain2.ecat").to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let doc = out.split_once("\n\n").map(|(_, d)| d).unwrap();
    let d = load_str(doc).unwrap();
    let c = d.category.unwrap();
    assert!(check_category(&c).is_valid());
    assert_eq!(c.n_mor(), 3);
}

#[test]
fn report_is_written_to_out() {
    let dir = std::env::temp_dir().join(format!("ecat-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("report.toml");
    let (code, out) = cli(&[
        "validate",
        fixture("terminal.ecat").to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&target).unwrap(), out);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn ast_algebra_is_one_object() {
    let d = load_str(&read("ast-algebra.ecat")).unwrap();
    let e = d.enriched.unwrap();
    assert_eq!(e.n_obj, 1);
    assert!(
        Arc::ptr_eq(&e.base, d.monoidal.as_ref().unwrap())
            || *e.base == **d.monoidal.as_ref().unwrap()
    );
}
