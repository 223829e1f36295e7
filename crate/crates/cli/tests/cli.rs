use permgrowth_cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("permgrowth").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn json(args: &[&str]) -> Value {
    let v: Value = serde_json::from_str(&ok(args)).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn descent_count_of_all_zeros_is_one() {
    assert_eq!(
        ok(&["descent", "count", "--word", "[0]", "--n", "5"]),
        "1\n"
    );
}

#[test]
fn descent_count_json_uses_decimal_strings() {
    let v = json(&[
        "descent", "count", "--word", "[10]", "--n", "30", "--format", "json",
    ]);
    let count = v["result"]["count"].as_str().unwrap();
    assert!(count.len() > 20 && count.chars().all(|c| c.is_ascii_digit()));
}

#[test]
fn descent_series_csv() {
    let out = ok(&["descent", "series", "--word", "[10]", "--max-n", "5"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,count,growth_point");
    assert_eq!(lines.len(), 6);
    assert!(lines[5].starts_with("5,16,0.668"));
}

#[test]
fn timing_is_opt_in() {
    let plain = ok(&["descent", "series", "--word", "[10]", "--max-n", "3"]);
    assert!(!plain.contains('#'));
    let timed = ok(&[
        "--timing", "descent", "series", "--word", "[10]", "--max-n", "3",
    ]);
    assert!(timed.lines().last().unwrap().starts_with("# elapsed_ms"));
    let v = json(&[
        "--timing", "peak", "growth", "--a", "2", "--b", "2", "--format", "json",
    ]);
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn construct_json_shape() {
    let v = json(&["descent", "construct", "--target", "2/5", "--max-n", "200"]);
    let r = &v["result"];
    assert_eq!(r["K"], 5);
    assert_eq!(r["target_low"], "2/5");
    assert!(r.get("word").is_none());
    assert!(r["flips"].as_array().unwrap().len() > 10);
    let with_word = json(&[
        "descent",
        "construct",
        "--target",
        "2/5",
        "--max-n",
        "50",
        "--emit-word",
    ]);
    assert_eq!(with_word["result"]["word"].as_str().unwrap().len(), 50);
}

#[test]
fn construct_text_and_dual() {
    let out = ok(&[
        "descent",
        "construct",
        "--target",
        "3/10",
        "--upper",
        "1/2",
        "--max-n",
        "100",
        "--format",
        "text",
    ]);
    assert!(out.contains("target 3/10\nupper 1/2\nK 7\n"), "{out}");
}

#[test]
fn peak_count_methods_agree() {
    for method in ["ie", "split", "transfer", "brute"] {
        let out = ok(&[
            "peak", "count", "--set", "2,5,7", "--n", "10", "--method", method,
        ]);
        assert_eq!(
            out,
            ok(&["oracle", "peak", "--set", "2,5,7", "--n", "10"]),
            "{method}"
        );
    }
    assert_eq!(
        ok(&["peak", "count", "--set", "2", "--n", "4", "--method", "closed"]),
        "8\n"
    );
    assert_eq!(
        ok(&["peak", "count", "--set", "2,5", "--n", "8", "--method", "closed"]),
        "not applicable\n"
    );
}

#[test]
fn peak_count_from_peak_word() {
    let by_word = ok(&["peak", "count", "--peak-word", "[001]", "--n", "10"]);
    let by_set = ok(&["peak", "count", "--set", "3,6,9", "--n", "10"]);
    assert_eq!(by_word, by_set);
}

#[test]
fn peak_series_matches_transfer_counts() {
    let out = ok(&["peak", "series", "--a", "2", "--b", "2", "--max-n", "14"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 14);
    let v = json(&[
        "peak",
        "count",
        "--peak-word",
        "[0100100100]",
        "--n",
        "14",
        "--method",
        "transfer",
        "--format",
        "json",
    ]);
    let last = rows[13].split(',').nth(1).unwrap();
    assert_eq!(v["result"]["count"], last);
}

#[test]
fn peak_growth_and_find() {
    let out = ok(&["peak", "growth", "--a", "2", "--b", "2"]);
    assert!(out.starts_with("0.50403"), "{out}");
    let out = ok(&["peak", "growth", "--a", "2", "--b", "2", "--limit"]);
    assert!(out.starts_with("0.67295"), "{out}");
    let v = json(&["peak", "find", "--target", "0.5", "--epsilon", "0.01"]);
    let rate = v["result"]["achieved_rate"].as_f64().unwrap();
    assert!((rate - 0.5).abs() < 0.01);
}

#[test]
fn oracle_descent_matches_dp() {
    assert_eq!(
        ok(&["oracle", "descent", "--word", "1001", "--n", "5"]),
        ok(&["descent", "count", "--word", "1001", "--n", "5"])
    );
}

#[test]
fn input_errors_exit_one() {
    for args in [
        &["descent", "count", "--word", "[2]", "--n", "5"][..],
        &["descent", "construct", "--target", "0.4", "--max-n", "10"],
        &["descent", "construct", "--target", "7/10", "--max-n", "10"],
        &["peak", "count", "--set", "0,3", "--n", "5"],
        &["peak", "growth", "--a", "1", "--b", "2"],
        &["peak", "count", "--n", "5"],
        &["nonsense"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(err.starts_with("error"), "{args:?}: {err}");
    }
}

#[test]
fn resource_limits_exit_two() {
    for args in [
        &["oracle", "peak", "--set", "2", "--n", "13"][..],
        &[
            "descent",
            "series",
            "--word",
            "[0]",
            "--max-n",
            "100",
            "--n-limit",
            "50",
        ],
        &[
            "peak",
            "count",
            "--set",
            "3",
            "--n",
            "60",
            "--superset-limit",
            "10",
        ],
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("descent"));
    assert_eq!(call(&["--version"]).0, 0);
}

#[test]
fn selftest_passes() {
    let out = ok(&["selftest"]);
    assert_eq!(out.lines().count(), 8);
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
}
