use eulerspline_cli::run;
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eulerspline").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = invoke(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn eulerian_row_csv() {
    let (code, out, _) = invoke(&[
        "eulerian", "row", "--d", "4", "--route", "brute", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "1,1\n2,11\n3,11\n4,1\n");
    let (_, spline, _) = invoke(&["eulerian", "row", "--d", "4"]);
    assert_eq!(spline, out);
}

#[test]
fn descent_table_values() {
    let (code, out, _) = invoke(&["descent", "table", "--d", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0,1\n1,6\n2,1\n");
    for route in ["explicit", "recurrence", "refined", "brute"] {
        let (_, other, _) = invoke(&["descent", "table", "--d", "2", "--n", "2", "--route", route]);
        assert_eq!(other, out, "route {route}");
    }
}

#[test]
fn csv_and_json_agree() {
    let (_, csv, _) = invoke(&["descent", "table", "--d", "5", "--n", "3"]);
    let v = json(&["descent", "table", "--d", "5", "--n", "3"]);
    let from_csv: Vec<String> = csv
        .lines()
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    let from_json: Vec<String> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    assert_eq!(from_csv, from_json);
    assert_eq!(v["checks"]["conservation"], true);
    assert_eq!(v["checks"]["log_concave"], true);

    let (_, csv, _) = invoke(&["eulerian", "refined", "--d", "3", "--route", "lambda"]);
    let v = json(&["eulerian", "refined", "--d", "3", "--route", "lambda"]);
    for (k, line) in csv.lines().enumerate() {
        let cells: Vec<&str> = line.split(',').skip(1).collect();
        let row: Vec<&str> = v["values"][k]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap())
            .collect();
        assert_eq!(cells, row);
    }
}

#[test]
fn bspline_commands() {
    let (_, out, _) = invoke(&["bspline", "eval", "--d", "3", "--x", "3/2"]);
    assert_eq!(out, "3/2,3/4\n");
    let (_, out, _) = invoke(&[
        "bspline",
        "eval",
        "--d",
        "4",
        "--x",
        "2",
        "--route",
        "recurrence",
    ]);
    assert_eq!(out, "2,2/3\n");
    let (_, out, _) = invoke(&["bspline", "eval", "--d", "2", "--x", "-1/2"]);
    assert_eq!(out, "-1/2,0\n");
    let (_, out, _) = invoke(&["bspline", "piece", "--d", "2", "--j", "1"]);
    assert_eq!(out, "0,2\n1,-1\n");
    let (_, out, _) = invoke(&["bspline", "integrate", "--d", "3", "--a", "1", "--b", "2"]);
    assert_eq!(out, "1,2,2/3\n");
    let v = json(&["bspline", "eval", "--d", "3", "--x", "6/4"]);
    assert_eq!(v["value"], "3/4");
    assert_eq!(v["x"], "3/2");
}

#[test]
fn descent_poly_lists_coefficients() {
    let (_, out, _) = invoke(&["descent", "poly", "--d", "3", "--n", "2"]);
    assert_eq!(out, "1,23,23,1\n");
    let v = json(&["descent", "poly", "--d", "2", "--n", "2"]);
    assert_eq!(v["polynomial"], "1 + 6t + t^2");
}

#[test]
fn geometry_commands() {
    let (_, out, _) = invoke(&["geometry", "minkowski", "--d", "2", "--k", "1"]);
    assert_eq!(out, "0,1,1\n1,4,2\n2,1,1\n");
    let args = [
        "geometry",
        "mc",
        "--d",
        "2",
        "--scale",
        "2",
        "--lower",
        "1",
        "--upper",
        "3",
        "--samples",
        "100000",
        "--seed",
        "9",
    ];
    let (code, first, _) = invoke(&args);
    let (_, second, _) = invoke(&args);
    assert_eq!(code, 0);
    assert_eq!(first, second);
    assert!(first.contains("samples,100000\n"));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let (_, out, _) = invoke(&json_args);
    let v: Value = serde_json::from_str(&out).unwrap();
    let est_line = first.lines().find(|l| l.starts_with("estimate,")).unwrap();
    assert_eq!(
        format!("estimate,{}", v["estimate"].as_str().unwrap()),
        est_line
    );
}

#[test]
fn verify_reports() {
    let (code, out, _) = invoke(&["verify", "--all", "--d-max", "4", "--n-max", "2"]);
    assert_eq!(code, 0);
    assert!(out.ends_with(",0\n"));
    let v = json(&["verify", "--all", "--d-max", "6", "--n-max", "3"]);
    assert_eq!(v["cases_failed"], 0);
    assert_eq!(v["reports"].as_array().unwrap().len(), 4);
    let v = json(&["eulerian", "verify", "--d-max", "5"]);
    assert_eq!(v["reports"][0]["suite"], "eulerian");
    let v = json(&["descent", "verify", "--d-max", "3", "--n-max", "2"]);
    assert_eq!(v["reports"][0]["cases_failed"], 0);
}

#[test]
fn usage_and_budget_errors_exit_two() {
    assert_eq!(invoke(&["nonsense"]).0, 2);
    assert_eq!(invoke(&["eulerian", "row"]).0, 2);
    assert_eq!(invoke(&["bspline", "eval", "--d", "3", "--x", "1/0"]).0, 2);
    assert_eq!(invoke(&["bspline", "eval", "--d", "0", "--x", "1"]).0, 2);
    let (code, _, err) = invoke(&[
        "descent", "table", "--d", "6", "--n", "4", "--route", "brute", "--budget", "1000",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("1000"), "{err}");
    assert_eq!(
        invoke(&["eulerian", "row", "--d", "11", "--route", "brute"]).0,
        2
    );
    assert_eq!(
        invoke(&["geometry", "mc", "--d", "2", "--lower", "3", "--upper", "1"]).0,
        2
    );
    assert_eq!(invoke(&["--help"]).0, 0);
}
