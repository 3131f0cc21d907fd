//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Criteria 1 to 9 run in-process; criterion 10 runs the built
//! `contractible selfcheck` end to end. Exit status is nonzero when any
//! criterion fails.

use std::process::{Command, ExitCode, Stdio};
use std::time::{Duration, Instant};

use contractible::selfcheck::{run_criterion, title, CriterionResult, SelfcheckConfig};

const SELFCHECK_LIMIT: Duration = Duration::from_secs(300);

fn criterion_10() -> CriterionResult {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_contractible"))
        .args(["--json", "selfcheck"])
        .stderr(Stdio::null())
        .output();
    let elapsed = start.elapsed();
    let (passed, detail) = match out {
        Ok(o) => {
            let code = o.status.code();
            let failing: Vec<String> = serde_json::from_slice::<serde_json::Value>(&o.stdout)
                .ok()
                .and_then(|v| v["checks"].as_array().cloned())
                .unwrap_or_default()
                .iter()
                .filter(|c| c["status"] != "pass")
                .filter_map(|c| c["name"].as_str().map(str::to_string))
                .collect();
            let fast = elapsed < SELFCHECK_LIMIT;
            (
                code == Some(0) && fast,
                format!(
                    "exit code {code:?} in {:.1}s (limit {}s){}",
                    elapsed.as_secs_f64(),
                    SELFCHECK_LIMIT.as_secs(),
                    if failing.is_empty() { String::new() } else { format!("; failing: {}", failing.join(", ")) }
                ),
            )
        }
        Err(e) => (false, format!("could not run the binary: {e}")),
    };
    CriterionResult {
        id: 10,
        title: title(10).to_string(),
        passed,
        detail,
        elapsed,
    }
}

fn main() -> ExitCode {
    let cfg = SelfcheckConfig::default();
    let mut failed = 0;
    for id in 1..=10 {
        let r = if id == 10 { criterion_10() } else { run_criterion(id, &cfg) };
        println!("{}", r.line());
        if !r.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
