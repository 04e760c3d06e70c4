//! Acceptance criteria. Runs `supercat verify all` once at default bounds,
//! then judges each criterion from its reports plus independent checks, and
//! prints one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::{json, Value};
use super_catalan::paths::{enumerate, parse_path, FamilySpec, LatticePath};
use super_catalan::qpoly::{super_catalan_q, QPoly};

const BIN: &str = env!("CARGO_BIN_EXE_supercat");

struct Reports {
    by_key: BTreeMap<String, Value>,
}

impl Reports {
    /// Reports are keyed by identity, plus grounding where there is one.
    fn get(&self, key: &str) -> Result<&Value, String> {
        self.by_key
            .get(key)
            .ok_or_else(|| format!("no report {key:?}"))
    }

    fn status(&self, key: &str) -> Result<String, String> {
        Ok(self.get(key)?["status"]
            .as_str()
            .unwrap_or_default()
            .to_string())
    }

    fn expect(&self, key: &str, status: &str) -> Result<(), String> {
        let got = self.status(key)?;
        if got != status {
            return Err(format!("{key}: status {got}, expected {status}"));
        }
        Ok(())
    }

    fn bound(&self, key: &str, field: &str) -> Result<u64, String> {
        self.get(key)?["params"][field]
            .as_u64()
            .ok_or_else(|| format!("{key}: no {field} in params"))
    }

    fn at_least(&self, key: &str, field: &str, want: u64) -> Result<(), String> {
        let got = self.bound(key, field)?;
        if got < want {
            return Err(format!("{key}: {field} = {got} < {want}"));
        }
        Ok(())
    }

    fn mismatches(&self, key: &str) -> Result<Vec<Value>, String> {
        Ok(self.get(key)?["mismatches"]
            .as_array()
            .cloned()
            .unwrap_or_default())
    }
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let value: Value = serde_json::from_str(&text).expect("schema is JSON");
    jsonschema::JSONSchema::compile(&value).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn validate(schema_name: &str, doc: &Value) -> Result<(), String> {
    let s = schema(schema_name);
    let result = s.validate(doc);
    if let Err(errors) = result {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        return Err(format!("{schema_name}: {}", msgs.join("; ")));
    }
    Ok(())
}

fn poly(min_deg: i64, coeffs: &[i64]) -> QPoly {
    QPoly::from_i64s(min_deg, coeffs)
}

fn parse_qpoly(v: &Value) -> Result<QPoly, String> {
    serde_json::from_value(v.clone()).map_err(|e| e.to_string())
}

fn maj_des(p: &LatticePath) -> i64 {
    p.maj() as i64 - p.des() as i64
}

fn c1(r: &Reports) -> Result<(), String> {
    r.expect("macmahon", "pass")?;
    r.at_least("macmahon", "n_max", 8)?;
    // The largest family must really have been enumerated.
    let size = enumerate(FamilySpec::AllPaths(8, 8)).unwrap().count();
    if size != 12870 {
        return Err(format!("|AllPaths(8,8)| = {size}"));
    }
    let ms = r.get("macmahon")?["elapsed_ms"]
        .as_f64()
        .unwrap_or(f64::MAX);
    if ms > 5000.0 {
        return Err(format!("macmahon took {ms:.0} ms"));
    }
    Ok(())
}

fn c2(r: &Reports) -> Result<(), String> {
    r.expect("fuerlinger-hofbauer", "pass")?;
    r.at_least("fuerlinger-hofbauer", "n_max", 9)
}

fn c3(r: &Reports) -> Result<(), String> {
    r.expect("qballot", "pass")?;
    r.at_least("qballot", "n_max", 9)?;
    r.expect("qballot-proof-pipeline", "pass")?;
    r.expect("qballot-closed-forms", "pass")?;
    r.at_least("qballot-closed-forms", "n_max", 12)
}

fn c4(r: &Reports) -> Result<(), String> {
    r.expect("reflection", "pass")?;
    r.at_least("reflection", "m_plus_n_max", 14)?;
    // Direct re-check on a handful of paths, independent of the harness.
    for text in ["10", "0110", "1100", "1010110", "0001110"] {
        let p = parse_path(text).unwrap();
        let downs = p.downs() as u64;
        if p.maj() != p.reflect().maj() + downs {
            return Err(format!(
                "{text}: maj {} vs reflected {} + {downs}",
                p.maj(),
                p.reflect().maj()
            ));
        }
    }
    Ok(())
}

fn c5(r: &Reports) -> Result<(), String> {
    for key in [
        "bijection-psi",
        "bijection-phi",
        "bijection-f",
        "bijection-g",
    ] {
        r.expect(key, "pass")?;
        r.at_least(key, "n_max", 10)?;
    }
    // |C_10| \ Omega_10 must equal |BallotStarStar(10)|.
    let outside = enumerate(FamilySpec::Catalan(10))
        .unwrap()
        .filter(|p| !FamilySpec::Omega(10).contains(p))
        .count();
    let domain = enumerate(FamilySpec::BallotStarStar(10)).unwrap().count();
    if outside != domain {
        return Err(format!(
            "|C10 \\ Omega10| = {outside}, |BallotStarStar(10)| = {domain}"
        ));
    }
    Ok(())
}

fn c6(r: &Reports) -> Result<(), String> {
    r.expect("rubenstein", "pass")?;
    r.at_least("rubenstein", "m_max", 12)?;
    r.at_least("rubenstein", "n_max", 12)?;
    // 4 T(1,2) = T(2,2) + T(1,3) = 3 + 5, by factorials.
    let t = |m, n| super_catalan_q(m, n).unwrap().eval_at_one() / 2u32;
    if t(1, 2) * 4u32 != t(2, 2) + t(1, 3) || t(2, 2) != 3u32.into() || t(1, 3) != 5u32.into() {
        return Err("T(1,2), T(2,2), T(1,3) spot check".into());
    }
    Ok(())
}

fn c7(r: &Reports) -> Result<(), String> {
    r.expect("q-rubenstein", "pass")?;
    r.at_least("q-rubenstein", "m_max", 10)?;
    r.at_least("q-rubenstein", "n_max", 10)?;
    r.expect("q-rubenstein-n-lt-m", "reported")
}

fn c8(r: &Reports) -> Result<(), String> {
    for g in ["closed_form", "enumeration"] {
        let key = format!("ballot-expansion/{g}");
        r.expect(&key, "pass")?;
        r.at_least(&key, "m_max", 6)?;
        r.at_least(&key, "n_max", 10)?;
        let key = format!("ballot-expansion-m2/{g}");
        r.expect(&key, "pass")?;
        r.at_least(&key, "n_max", 10)?;
    }
    Ok(())
}

fn c9(r: &Reports) -> Result<(), String> {
    r.expect("theorem-main-proof", "pass")?;
    r.at_least("theorem-main-proof", "n_max", 12)?;
    r.expect("theorem-main-partial-sums", "pass")?;
    r.expect("theorem-main-stated", "reported")?;
    let bad = r.mismatches("theorem-main-stated")?;
    for n in [1, 3] {
        if bad.contains(&json!({"n": n})) {
            return Err(format!("stated form should agree at n = {n}"));
        }
    }
    if !bad.contains(&json!({"n": 2})) {
        return Err("stated form should disagree at n = 2".into());
    }

    // Brute force over C_2: q T_q(2,2) = q + q^2 (1 + q), so T_q(2,2) = 1 + q + q^2,
    // while the stated right side is q + q (sum over Omega_2) = 2q + q^2.
    let c2: Vec<LatticePath> = enumerate(FamilySpec::Catalan(2)).unwrap().collect();
    let omega: QPoly = c2.iter().map(|p| QPoly::monomial(1, maj_des(p))).sum();
    let stated_rhs = QPoly::monomial(1, 1) + omega.shift(1);
    let proof_rhs = (QPoly::monomial(1, 1) + omega.shift(2)).shift(-1);
    if (&stated_rhs, &proof_rhs) != (&poly(1, &[2, 1]), &poly(0, &[1, 1, 1])) {
        return Err(format!("brute force gave {stated_rhs} and {proof_rhs}"));
    }
    let w = &r.get("theorem-main-stated")?["witness"];
    if w["params"] != json!({"n": 2}) {
        return Err(format!("witness at {}", w["params"]));
    }
    let (lhs, rhs) = (parse_qpoly(&w["lhs"])?, parse_qpoly(&w["rhs"])?);
    if lhs != proof_rhs || rhs != stated_rhs {
        return Err(format!("witness {lhs} vs {rhs}"));
    }
    Ok(())
}

fn c10(r: &Reports) -> Result<(), String> {
    r.expect("nonnegativity", "pass")?;
    r.at_least("nonnegativity", "m_plus_n_max", 20)?;
    r.expect("unimodality", "reported")?;
    r.at_least("unimodality", "m_plus_n_max", 20)?;
    let n = r.mismatches("unimodality")?.len();
    if n != 0 {
        return Err(format!("{n} unimodality counterexamples"));
    }
    Ok(())
}

fn run_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(BIN)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited {:?}", out.status.code()));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| format!("{args:?}: {e}"))
}

fn c11(exit: Option<i32>, elapsed: Duration, lines: &[Value]) -> Result<(), String> {
    if exit != Some(0) {
        return Err(format!("verify all exited {exit:?}"));
    }
    if elapsed > Duration::from_secs(120) {
        return Err(format!("verify all took {elapsed:?}"));
    }
    for line in lines {
        validate("report.schema.json", line)?;
    }
    validate(
        "table.schema.json",
        &run_json(&["table", "Tq", "0..3", "1..3", "--format", "json"])?,
    )?;
    validate(
        "table.schema.json",
        &run_json(&["table", "S", "0..3", "0..3", "--format", "json"])?,
    )?;
    validate(
        "listing.schema.json",
        &run_json(&["enumerate", "catalan:3", "--stats", "--format", "json"])?,
    )?;
    validate(
        "genfun.schema.json",
        &run_json(&[
            "enumerate",
            "omega:4",
            "--genfun",
            "maj-des",
            "--format",
            "json",
        ])?,
    )?;
    validate(
        "trace.schema.json",
        &run_json(&["biject", "g", "01100111", "--trace"])?,
    )?;
    validate(
        "trace.schema.json",
        &run_json(&["biject", "psi", "001", "--trace"])?,
    )?;
    for p in lines
        .iter()
        .flat_map(|l| [&l["witness"]["lhs"], &l["witness"]["rhs"]])
    {
        if !p.is_null() {
            validate("qpoly.schema.json", p)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let out = Command::new(BIN)
        .args(["verify", "all", "--format", "json"])
        .output()
        .expect("run supercat");
    let elapsed = start.elapsed();
    let lines: Vec<Value> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("report line is JSON"))
        .collect();
    let by_key = lines
        .iter()
        .map(|l| {
            let id = l["identity"].as_str().unwrap().to_string();
            let key = match l["params"]["grounding"].as_str() {
                Some(g) => format!("{id}/{g}"),
                None => id,
            };
            (key, l.clone())
        })
        .collect();
    let reports = Reports { by_key };

    type Criterion = fn(&Reports) -> Result<(), String>;
    let criteria: [(&str, Criterion); 10] = [
        ("MacMahon interpretation of S_q(0,n), n <= 8", c1),
        ("T_q(1,n) and T_q(n,1) as q-Catalan sums, n <= 9", c2),
        (
            "q-ballot theorem r <= n <= 9; closed forms agree n <= 12",
            c3,
        ),
        ("reflection lemma, m + n <= 14", c4),
        ("psi, phi, f, g exhaustive checks, n <= 10", c5),
        ("integer recurrence, m, n <= 12", c6),
        ("q-recurrence, m <= n <= 10; n < m reported", c7),
        (
            "ballot expansion m <= 6, n <= 10, and its m = 2 case, both groundings",
            c8,
        ),
        (
            "main theorem proof form n <= 12; stated form witness at n = 2",
            c9,
        ),
        ("nonnegativity and unimodality scans, m + n <= 20", c10),
    ];
    let mut failures = 0;
    for (i, (what, check)) in criteria.iter().enumerate() {
        let result = check(&reports);
        report_line(i + 1, what, &result);
        failures += result.is_err() as usize;
    }
    let result = c11(out.status.code(), elapsed, &lines);
    report_line(
        11,
        &format!("verify all exits 0 in {elapsed:.1?}; JSON validates against schemas"),
        &result,
    );
    failures += result.is_err() as usize;

    println!("acceptance: {} of 11 criteria passed", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn report_line(n: usize, what: &str, result: &Result<(), String>) {
    match result {
        Ok(()) => println!("criterion {n:>2}: PASS  {what}"),
        Err(e) => println!("criterion {n:>2}: FAIL  {what}: {e}"),
    }
}
