//! Scenario and suite execution.
//!
//! A suite is a directory of scenario JSON files. Files are discovered
//! and parsed first, in sorted path order, so input errors surface before
//! any mathematics runs; scenarios then execute concurrently and the
//! reports are merged back in path order, which keeps the merged report
//! byte-identical across runs. The `CIZERO_THREADS` environment variable
//! caps the worker count.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use crate::ops::run_assertion;
use crate::report::{Report, ScenarioReport};
use crate::spec::{parse_json_file, resolve_ring, Scenario};

/// Runs one parsed scenario. `origin` names the scenario in error
/// messages; `base` anchors relative ring paths.
pub fn run_scenario(
    scenario: &Scenario,
    base: &Path,
    origin: &str,
) -> Result<ScenarioReport, String> {
    let alg = resolve_ring(&scenario.ring, base)
        .map_err(|e| format!("{}: scenario '{}': {}", origin, scenario.name, e))?;
    let mut assertions = Vec::with_capacity(scenario.assertions.len());
    for (k, a) in scenario.assertions.iter().enumerate() {
        let rep = run_assertion(&alg, &a.op, &a.inputs, a.expected.as_ref(), scenario.seed)
            .map_err(|e| {
                format!(
                    "{}: scenario '{}' assertion {}: {}",
                    origin,
                    scenario.name,
                    k + 1,
                    e
                )
            })?;
        assertions.push(rep);
    }
    Ok(ScenarioReport {
        scenario: scenario.name.clone(),
        path: None,
        seed: scenario.seed,
        assertions,
    })
}

fn scenario_files(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let entries = std::fs::read_dir(dir).map_err(|e| format!("{}: {}", dir.display(), e))?;
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| format!("{}: {}", dir.display(), e))?;
        let path = entry.path();
        if path.is_file() && path.extension().map_or(false, |x| x == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn thread_count(jobs: usize) -> usize {
    let from_env = std::env::var("CIZERO_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0);
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    from_env.unwrap_or(available).min(jobs).max(1)
}

/// Runs every scenario file in the directory. Parsing happens up front in
/// path order; execution is concurrent; the merged report lists scenarios
/// in path order regardless of completion order.
pub fn run_suite(dir: &Path) -> Result<Report, String> {
    let files = scenario_files(dir)?;
    if files.is_empty() {
        return Ok(Report::from_scenarios(
            Vec::new(),
            vec![format!("no scenario files found in {}", dir.display())],
        ));
    }

    let mut jobs: Vec<(PathBuf, Scenario)> = Vec::with_capacity(files.len());
    for path in files {
        let scenario: Scenario = parse_json_file(&path)?;
        jobs.push((path, scenario));
    }

    let workers = thread_count(jobs.len());
    let jobs = Arc::new(jobs);
    let next = Arc::new(AtomicUsize::new(0));
    let slots: Arc<Mutex<Vec<Option<Result<ScenarioReport, String>>>>> =
        Arc::new(Mutex::new(vec![None; jobs.len()]));

    std::thread::scope(|scope| {
        for _ in 0..workers {
            let jobs = Arc::clone(&jobs);
            let next = Arc::clone(&next);
            let slots = Arc::clone(&slots);
            scope.spawn(move || loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= jobs.len() {
                    break;
                }
                let (path, scenario) = &jobs[k];
                let base = path.parent().unwrap_or(Path::new("."));
                let origin = path.display().to_string();
                let mut result = run_scenario(scenario, base, &origin);
                if let Ok(rep) = &mut result {
                    rep.path = Some(origin);
                }
                slots.lock().expect("no poisoned workers")[k] = Some(result);
            });
        }
    });

    let slots = Arc::try_unwrap(slots)
        .expect("workers joined")
        .into_inner()
        .expect("no poisoned workers");
    let mut scenarios = Vec::with_capacity(slots.len());
    for slot in slots {
        scenarios.push(slot.expect("every job ran")?);
    }
    Ok(Report::from_scenarios(scenarios, Vec::new()))
}
