use sigmaform::cli::{run_with, EXIT_ERROR, EXIT_FAIL, EXIT_PASS};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sigmaform").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn expand_sigma_hurwitz_form() {
    let (code, out, _) = run(&["expand", "sigma", "--order", "7"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("sigma(u) = u + (mb1^2 + mu2)*u^3/3! + "), "{out}");
    assert!(out.contains("+ 6*mu2*mu4 + 6*mu3^2 + 24*mu6)*u^7/7! + O(u^8)"), "{out}");
    assert!(out.contains("mb1 = mu1/2"));
}

#[test]
fn expand_other_series() {
    let (code, out, _) = run(&["expand", "x", "--order", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("x(u) = (1)*u^-2 + (-1/12*mu1^2 - 1/3*mu2) + "), "{out}");
    let (code, out, _) = run(&["expand", "y", "--order", "1", "--mu1", "0"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("y(u) = (-1)*u^-3 + (-1/2*mu3) + "), "{out}");
    assert!(out.trim_end().ends_with("O(u^2)"), "{out}");
    let (code, out, _) = run(&["expand", "wp", "--order", "2", "--mu1", "0", "--mu2", "0", "--mu3", "0"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("(-1/5*mu4)*u^2"), "{out}");
    let (code, out, _) = run(&["expand", "star", "--order", "3", "--mu1", "0", "--mu2", "0", "--mu4", "0"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("v*(u) = (z)*u + O(u^4)"), "{out}");
}

#[test]
fn expand_json_round_trips() {
    let args = ["expand", "x", "--order", "4", "--mu2", "-3/4", "--format", "json"];
    let (code, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["expansion"], "x");
    assert_eq!(v["binding"]["mu2"], "-3/4");
    assert_eq!(v["series"]["pole"], 2);
}

#[test]
fn verify_two_point_examples() {
    let (code, out, _) = run(&["verify", "n2", "--order", "10"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.starts_with("n2: pass"));
    let zero = ["--mu1", "0", "--mu2", "0", "--mu3", "0", "--mu4", "0", "--mu6", "0"];
    let mut args = vec!["verify", "n2", "--order", "10"];
    args.extend(zero);
    let (code, out, _) = run(&args);
    assert_eq!(code, EXIT_PASS, "{out}");
}

#[test]
fn verify_json_is_byte_stable() {
    let args = ["verify", "n3", "--order", "9", "--fast", "--seed", "5", "--format", "json"];
    let (code, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(code, EXIT_PASS, "{a}");
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["bound"], 9);
    assert!(v.get("residual").is_none());
}

#[test]
fn failing_verdict_exits_two() {
    let (code, out, _) = run(&["verify", "two-term", "--order", "6", "--rhs", "P_u + P_v", "--format", "json"]);
    assert_eq!(code, EXIT_FAIL);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "fail");
    assert!(v["residual"]["terms"].as_u64().unwrap() > 0);
}

#[test]
fn other_checks() {
    for args in [
        &["verify", "det", "--n", "3", "--order", "9"][..],
        &["verify", "det", "--n", "4", "--order", "10", "--fast", "--seed", "1"],
        &["verify", "n3-special", "--case", "1", "--order", "10"],
        &["verify", "ideal"],
        &["verify", "hurwitz", "--order", "12"],
        &["verify", "star-sum", "--order", "8"],
        &["verify", "battery", "--order", "8"],
        &["verify", "substitution", "--order", "6", "--fast", "--seed", "2"],
        &["verify", "two-term", "--order", "8", "--fast", "--seed", "3"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, EXIT_PASS, "{args:?}: {out}{err}");
    }
}

#[test]
fn derive_commands() {
    let (code, out, _) = run(&["derive", "--n", "2", "--order", "6"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("mu1*x_u + mu3 + y_u + y_v"), "{out}");
    assert!(out.contains("matches reference: yes"));
    let (code, _, err) = run(&["derive", "--n", "2", "--order", "4"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("increase --order"), "{err}");
    let (code, out, _) = run(&["derive", "--n", "4", "--order", "20", "--experimental", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outcome"], "resources");
    assert!(v["unknowns"].as_u64().unwrap() > 0);
    let (code, _, err) = run(&["derive", "--n", "4", "--order", "20"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("--experimental"));
}

#[test]
fn usage_errors() {
    for args in [
        &["verify", "n2", "--mu1", "0.5"][..],
        &["verify", "n2", "--mu5", "1"],
        &["verify", "n2", "--order", "0"],
        &["verify", "det"],
        &["verify", "n3-special"],
        &["verify", "n3-special", "--case", "1", "--mu1", "0"],
        &["verify", "hurwitz", "--fast"],
        &["verify", "n2", "--seed", "3"],
        &["verify", "ideal", "--rhs", "x_u"],
        &["verify", "n2", "--rhs", "x_u +"],
        &["derive", "--n", "5"],
        &["expand", "tau"],
        &[],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, EXIT_ERROR, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("expand") && out.contains("verify") && out.contains("derive"));
    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("sigmaform "));
}
