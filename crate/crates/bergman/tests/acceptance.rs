//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bergman::suites::{run, SuiteConfig};

struct Criterion {
    id: u32,
    suite: &'static str,
    budget: Option<u64>,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, suite: "operator-inverse", budget: Some(5) },
    Criterion { id: 2, suite: "kernel-mapping", budget: Some(5) },
    Criterion { id: 3, suite: "kernel-reproduce", budget: Some(30) },
    Criterion { id: 4, suite: "monomial-mass", budget: Some(10) },
    Criterion { id: 5, suite: "log-kernel", budget: None },
    Criterion { id: 6, suite: "a-coefficients", budget: None },
    Criterion { id: 7, suite: "forelli-rudin-asymptotics", budget: Some(10) },
    Criterion { id: 8, suite: "carleson-berezin", budget: Some(20) },
    Criterion { id: 9, suite: "stirling-bridge", budget: None },
    Criterion { id: 10, suite: "inclusion-coherence", budget: Some(10) },
    Criterion { id: 11, suite: "atomic-synthesis", budget: None },
];

fn line(id: u32, name: &str, pass: bool, detail: &str, took: Duration) -> bool {
    println!(
        "criterion {id:>2} {name:<27} {} ({:.2}s) {detail}",
        if pass { "PASS" } else { "FAIL" },
        took.as_secs_f64()
    );
    pass
}

fn suite_criterion(c: &Criterion, cfg: &SuiteConfig) -> bool {
    let start = Instant::now();
    let checks = match run(c.suite, cfg) {
        Ok(v) => v,
        Err(e) => return line(c.id, c.suite, false, &format!("error: {e}"), start.elapsed()),
    };
    let took = start.elapsed();
    let failed: Vec<String> = checks
        .iter()
        .filter(|(_, k)| !k.pass)
        .map(|(_, k)| format!("[{}: observed {:e}, expected {:e} ± {:e}]", k.name, k.observed, k.expected, k.tolerance))
        .collect();
    let mut detail = format!("{}/{} checks", checks.len() - failed.len(), checks.len());
    let over = c.budget.is_some_and(|b| took > Duration::from_secs(b));
    if let Some(b) = c.budget {
        detail.push_str(&format!(", budget {b}s"));
    }
    if over {
        detail.push_str(" exceeded");
    }
    for f in &failed {
        detail.push(' ');
        detail.push_str(f);
    }
    line(c.id, c.suite, failed.is_empty() && !over && !checks.is_empty(), &detail, took)
}

fn determinism(seed: u64) -> bool {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_bergman");
    let seed = seed.to_string();
    let go = |format: &str| {
        Command::new(bin)
            .args(["verify", "--suite", "all", "--format", format, "--seed", &seed])
            .output()
            .expect("run bergman")
    };
    let mut detail = String::new();
    let mut pass = true;
    for format in ["csv", "json"] {
        let (a, b) = (go(format), go(format));
        let same = a.stdout == b.stdout && a.status.code() == b.status.code();
        pass &= same && !a.stdout.is_empty();
        detail.push_str(&format!("{format}: {} bytes {} ", a.stdout.len(), if same { "identical" } else { "differ" }));
    }
    line(12, "determinism", pass, detail.trim_end(), start.elapsed())
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut all = true;
    for c in CRITERIA {
        all &= suite_criterion(c, &cfg);
    }
    all &= determinism(cfg.seed);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
