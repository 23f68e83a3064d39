mod common;

use std::path::Path;
use std::process::{Command, Output};

fn madfc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_madfc"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn transform_and_inverse() {
    let o = madfc(&["transform", "--value", "0.25", "--scale", "madfc"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "-3\n"));
    let o = madfc(&["inverse", "--value", "0", "--scale", "madfc"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "1\n"));
    let o = madfc(&["transform", "--value", "8", "--scale", "log2"]);
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn printed_values_round_trip() {
    for scale in ["log2", "linear", "madfc"] {
        for x in ["0.0003", "0.37", "1", "1.7", "123.456", "9000"] {
            let t = stdout(&madfc(&["transform", "--value", x, "--scale", scale]));
            let back = stdout(&madfc(&["inverse", "--value", t.trim(), "--scale", scale]));
            let (a, b): (f64, f64) = (x.parse().unwrap(), back.trim().parse().unwrap());
            assert!((a - b).abs() <= 1e-12 * a, "{scale} {x} -> {t} -> {back}");
        }
    }
}

#[test]
fn ticks_table() {
    let o = madfc(&[
        "ticks", "--min", "0.125", "--max", "8", "--scale", "log2", "--format", "fraction",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "position\tlabel\n-3\t1/8\n-2\t1/4\n-1\t1/2\n0\t1\n1\t2\n2\t4\n3\t8\n"
    );
}

#[test]
fn missing_input_names_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.svg");
    let o = madfc(&[
        "plot",
        "volcano",
        "--input",
        "missing.csv",
        "--out",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("missing.csv"), "{}", stderr(&o));
    assert!(!out.exists());
}

#[test]
fn bad_rows_report_location() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    std::fs::write(&input, "id,fc,pvalue,basemean\na,2,0.1,5\nb,-1,0.1,5\n").unwrap();
    let o = madfc(&[
        "plot",
        "ma",
        "--input",
        path(&input),
        "--out",
        path(&dir.path().join("o.svg")),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("bad.csv") && err.contains("line 3"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(madfc(&[]).status.code(), Some(2));
    assert_eq!(madfc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        madfc(&["transform", "--value", "abc"]).status.code(),
        Some(2)
    );
    assert_eq!(
        madfc(&["plot", "pie", "--input", "a", "--out", "b"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        madfc(&["simulate", "fig9z", "--out", "b"]).status.code(),
        Some(2)
    );
}

#[test]
fn domain_errors_exit_one() {
    let o = madfc(&["transform", "--value", "-2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("-2"));
    assert_eq!(
        madfc(&["ticks", "--min", "4", "--max", "2"]).status.code(),
        Some(1)
    );
}

#[test]
fn help_documents_every_flag() {
    let cases: [(&[&str], &[&str]); 6] = [
        (
            &["--help"],
            &["transform", "inverse", "ticks", "plot", "simulate"],
        ),
        (&["transform", "--help"], &["--value", "--scale"]),
        (&["inverse", "--help"], &["--value", "--scale"]),
        (
            &["ticks", "--help"],
            &[
                "--min", "--max", "--scale", "--format", "--count", "--digits",
            ],
        ),
        (
            &["plot", "--help"],
            &[
                "--input",
                "--out",
                "--scale",
                "--format",
                "--digits",
                "--width",
                "--height",
                "--title",
                "--delimiter",
                "--fc-column",
            ],
        ),
        (
            &["simulate", "--help"],
            &["--seed", "--out", "--groups", "--samples", "--sigma"],
        ),
    ];
    for (args, flags) in cases {
        let o = madfc(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        for flag in flags {
            assert!(text.contains(flag), "{args:?} lacks {flag}");
        }
    }
}

#[test]
fn plots_every_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("volcano", "de_results.csv"),
        ("ma", "de_results.csv"),
        ("errorbar", "interval_groups.csv"),
        ("box", "box_summaries.csv"),
        ("box", "expression_matrix.csv"),
        ("violin", "expression_matrix.csv"),
        ("heatmap", "protein_heatmap.csv"),
    ];
    for (kind, input) in cases {
        let out = dir.path().join(format!("{kind}.svg"));
        let o = madfc(&[
            "plot",
            kind,
            "--input",
            path(&common::fixture(input)),
            "--out",
            path(&out),
            "--title",
            kind,
        ]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stderr(&o));
        let svg = std::fs::read_to_string(&out).unwrap();
        assert!(svg.starts_with("<?xml") && svg.contains(&format!(">{kind}</text>")));
    }
}

#[test]
fn tab_delimited_log2_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("de.tsv");
    std::fs::write(
        &input,
        "id\tlog2fc\tpvalue\tbasemean\na\t1\t0.01\t5\nb\t-3\t0.2\t50\n",
    )
    .unwrap();
    let out = dir.path().join("v.svg");
    let o = madfc(&[
        "plot",
        "volcano",
        "--input",
        path(&input),
        "--out",
        path(&out),
        "--delimiter",
        "\\t",
        "--fc-column",
        "log2fc",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        std::fs::read_to_string(&out)
            .unwrap()
            .matches("class=\"point\"")
            .count(),
        2
    );
}

#[test]
fn simulate_writes_parsable_csv() {
    let dir = tempfile::tempdir().unwrap();
    for (dataset, header) in [
        ("fig4a", "group,fc,lower,upper,interval"),
        ("fig5a", "group,min,q1,median,q3,max"),
        ("fig6a", "gene,group,s1,"),
    ] {
        let out = dir.path().join(format!("{dataset}.csv"));
        let o = madfc(&["simulate", dataset, "--seed", "3", "--out", path(&out)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(std::fs::read_to_string(&out).unwrap().starts_with(header));
    }
    let o = madfc(&[
        "simulate",
        "fig6a",
        "--samples",
        "10",
        "--out",
        path(&dir.path().join("x.csv")),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unwritable_output_is_a_data_error() {
    let o = madfc(&[
        "simulate",
        "fig4a",
        "--out",
        "/nonexistent-dir/definitely/not/here.csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/nonexistent-dir"));
}
