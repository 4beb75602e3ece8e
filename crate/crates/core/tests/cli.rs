use endochain::cli::{parse_set_spec, run, ElementsJson, SetSpec};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["endochain"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn elements_of_tri4() {
    let (code, out, _) = call(&["elements", "tri n=4 a=1 b=2 c=3"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 15);
    assert_eq!(lines[0], "1_4");
    assert_eq!(lines[14], "3_4");
}

#[test]
fn elements_json_round_trips() {
    for spec in ["n=6 A=1,3,4", "str n=4 a=1 b=2", "tri n=5 a=0 b=2 c=4"] {
        let (code, out, _) = call(&["--json", "elements", spec]);
        assert_eq!(code, 0);
        let text = out.trim_end();
        let doc: ElementsJson = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&doc).unwrap(), text);
        let mut sorted = doc.elements.clone();
        sorted.sort();
        assert_eq!(sorted, doc.elements);
    }
    let (_, out, _) = call(&["--json", "elements", "n=3 A=0,2"]);
    assert_eq!(
        out.trim_end(),
        r#"{"n":3,"A":[0,2],"elements":[[0,0,0],[0,0,2],[0,2,2],[2,2,2]]}"#
    );
}

#[test]
fn spec_literals() {
    assert!(matches!(
        parse_set_spec("n=6 A=1,3,4"),
        Ok(SetSpec::Simplex(_))
    ));
    assert!(matches!(
        parse_set_spec("str n=4 a=1 b=2"),
        Ok(SetSpec::String(_))
    ));
    assert!(matches!(
        parse_set_spec("tri n=6 a=1 b=3 c=4"),
        Ok(SetSpec::Triangle(_))
    ));
    for bad in [
        "n=6",
        "n=6 A=",
        "n=6 A=1,1",
        "str n=4 a=2 b=1",
        "tri n=4 a=1 b=2",
        "tri n=4 a=1 b=2 c=3 d=0",
        "n=3 n=3 A=1",
        "x",
    ] {
        assert!(parse_set_spec(bad).is_err(), "{bad}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["elements", "n=3 A=5"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["table", "n=3 A=0,1"]).0, 2);
    assert_eq!(call(&["classify", "2 1"]).0, 2);
    assert_eq!(call(&["decompose", "n=4 A=1,2"]).0, 2);
    let (code, _, err) = call(&["check", "no-such-claim"]);
    assert_eq!(code, 2);
    assert!(err.contains("no-such-claim"));
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn check_runs_and_orders_results() {
    let (code, out, _) = call(&["check", "eight-region-partition", "--n-max", "6"]);
    assert_eq!(code, 0);
    let results: Vec<&str> = out.lines().filter(|l| l.starts_with("PASS")).collect();
    // one result per triangle with 3 ≤ n ≤ 6
    assert_eq!(results.len(), 1 + 4 + 10 + 20);
    assert!(results[0].contains("n=3 a=0 b=1 c=2"));
    assert!(out.ends_with("35 results, 0 failed\n"));

    let (code, out, _) = call(&["check", "string-noniso", "--n-max", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0 results, 0 failed\n");
}

#[test]
fn check_json_and_list() {
    let (code, out, _) = call(&["--json", "check", "tri6-regions", "--n-max", "6"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total"], 1);
    assert_eq!(v["results"][0]["holds"], true);
    assert!(v["results"][0]["elapsed_us"].is_u64());

    let (code, out, _) = call(&["check", "--list"]);
    assert_eq!(code, 0);
    assert!(out
        .lines()
        .any(|l| l.starts_with("ri-order-erratum") && l.contains("[erratum]")));
    assert_eq!(out.lines().count(), endochain::claims::REGISTRY.len());
}

#[test]
fn classify_labels_string_parts() {
    let (code, out, _) = call(&["classify", "str n=4 a=1 b=2"]);
    assert_eq!(code, 0);
    let parts: Vec<&str> = out
        .lines()
        .map(|l| {
            l.split_whitespace()
                .find(|w| ["nil_a", "id", "nil_b"].contains(w))
                .unwrap()
        })
        .collect();
    assert_eq!(parts, ["nil_a", "nil_a", "id", "nil_b", "nil_b"]);
    let (_, out, _) = call(&["classify", "1_3 2"]);
    assert_eq!(out, "1_3 2  1-nilpotent (exponent 2)\n");
    let (_, out, _) = call(&["--json", "classify", "1_3 2"]);
    assert_eq!(
        out.trim_end(),
        r#"[{"element":"1_3 2","class":"nilpotent_to","vertex":1,"exponent":2}]"#
    );
}

#[test]
fn table_of_a_string() {
    let (code, out, _) = call(&["table", "str n=3 a=0 b=1", "--op", "mul"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2 + 4);
    let (code, out, _) = call(&["--json", "table", "str n=3 a=0 b=1", "--op", "add"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    // + on a string is max along a chain
    assert_eq!(v["table"][0], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(v["table"][3], serde_json::json!([3, 3, 3, 3]));
}

#[test]
fn decompose_json_shape() {
    let (code, out, _) = call(&["--json", "decompose", "tri n=6 a=1 b=3 c=4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["disjoint"], true);
    assert_eq!(v["cover"], true);
    assert_eq!(v["regions"]["nil_a"]["count"], 5);
    assert_eq!(v["regions"]["nil_c"]["formula"], 7);
    assert_eq!(v["regions"]["ri"]["closed"], true);
    assert_eq!(v["regions"]["ri"]["elements"].as_array().unwrap().len(), 2);
}

#[test]
fn render_modes() {
    let (code, out, err) = call(&["render", "tri n=4 a=1 b=2 c=3"]);
    assert_eq!(code, 0);
    assert!(err.is_empty());
    assert_eq!(out, include_str!("golden/tri4.txt"));
    let (_, out, _) = call(&["render", "tri n=6 a=1 b=3 c=4", "--color-by", "region"]);
    assert_eq!(out, include_str!("golden/tri6_regions.txt"));
    let (code, out, _) = call(&[
        "render",
        "tri n=4 a=1 b=2 c=3",
        "--mode",
        "svg",
        "--color-by",
        "region",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("<?xml") && out.trim_end().ends_with("</svg>"));
    let (code, _, err) = call(&["render", "tri n=31 a=0 b=1 c=2"]);
    assert_eq!(code, 0);
    assert!(err.starts_with("warning:"));
    assert_eq!(
        call(&["render", "tri n=201 a=0 b=1 c=2", "--mode", "svg"]).0,
        2
    );
}

#[test]
fn iso_answers() {
    let (code, out, _) = call(&["iso", "str n=4 a=1 b=2", "str n=4 a=0 b=3"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("not isomorphic"));
    let (code, out, _) = call(&["iso", "str n=2 a=0 b=1", "str n=2 a=0 b=1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("isomorphic"));
    let (_, out, _) = call(&["--json", "iso", "str n=2 a=0 b=1", "str n=2 a=0 b=1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(v["mapping"].as_array().unwrap().len(), 3);
}

#[test]
fn counts_table() {
    let (code, out, _) = call(&["counts", "--n-max", "5"]);
    assert_eq!(code, 0);
    assert!(out.lines().next().unwrap().starts_with("formula"));
    assert!(out.contains("ok (differs, as expected)"));
    assert!(!out.contains("MISMATCH"));
    assert_eq!(call(&["counts", "--n-max", "11"]).0, 2);
}

#[test]
fn check_all_at_six_is_clean() {
    let (code, out, _) = call(&["check", "all", "--n-max", "6"]);
    assert_eq!(
        code,
        0,
        "{}",
        out.lines()
            .filter(|l| l.starts_with("FAIL"))
            .collect::<Vec<_>>()
            .join("\n")
    );
    assert!(out.trim_end().ends_with(", 0 failed"));
}
