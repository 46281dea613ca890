//! Acceptance run: one line per criterion, then a nonzero exit unless the
//! set of failing criteria is exactly the documented one.

#[path = "../../core/tests/properties.rs"]
mod properties;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use k3m20::cache::Cache;
use k3m20::data::Data;
use k3m20::report::Report;
use k3m20::scenarios::{run_suite, run_suites, CheckResult, Context, Profile, Status, Suite};

/// Criteria expected to fail, with the reason recorded in the decisions
/// ledger: the norm-40 primitive vectors of L20 form two orbits.
const KNOWN_RED: &[u32] = &[1];

/// Wall-time limits per criterion.
const LIMIT_LATTICE: Duration = Duration::from_secs(5);
const LIMIT_CM: Duration = Duration::from_secs(1);
const LIMIT_GROUP: Duration = Duration::from_secs(60);
const LIMIT_GEOMETRY: Duration = Duration::from_secs(180);
const LIMIT_KONDO: Duration = Duration::from_secs(30);
const LIMIT_NIKULIN: Duration = Duration::from_secs(180);
const LIMIT_TOTAL: Duration = Duration::from_secs(600);

const MIN_PROPERTY_CASES: u32 = 200;

/// Checks allowed to end `partial` or `skipped` without failing their
/// criterion; each carries an explanatory note in the report.
const ALLOWED_PARTIAL: &[&str] = &["group.separation", "geometry.bh-irreducible", "kondo.a1-type"];
const ALLOWED_SKIPPED: &[&str] = &["group.kondo-inclusion"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn judge(checks: &[CheckResult], elapsed: Duration, limit: Duration) -> Outcome {
    let mut bad = Vec::new();
    for c in checks {
        let ok = match c.status {
            Status::Pass => true,
            Status::Partial => ALLOWED_PARTIAL.contains(&c.id.as_str()),
            Status::Skipped => ALLOWED_SKIPPED.contains(&c.id.as_str()),
            Status::Fail => false,
        };
        if !ok {
            bad.push(format!("{} {} (expected {}, got {})", c.id, c.status.label(), c.expected, c.actual));
        }
    }
    let in_time = elapsed <= limit;
    let mut detail = format!("{} checks, {:.2}s of {}s", checks.len(), elapsed.as_secs_f64(), limit.as_secs());
    if !bad.is_empty() {
        detail.push_str(&format!("; {}", bad.join("; ")));
    }
    if !in_time {
        detail.push_str("; over time");
    }
    Outcome { pass: bad.is_empty() && in_time, detail }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn properties() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for (name, check) in properties::all() {
        match check() {
            Ok(n) if n >= MIN_PROPERTY_CASES => details.push(format!("{name} {n}")),
            Ok(n) => {
                pass = false;
                details.push(format!("{name} only {n} cases"));
            }
            Err(e) => {
                pass = false;
                details.push(format!("{name} FAILED: {e}"));
            }
        }
    }
    Outcome { pass, detail: details.join(", ") }
}

struct Control {
    name: &'static str,
    target: Suite,
    unrelated: &'static [Suite],
    perturb: fn(&mut Data),
}

const CONTROLS: &[Control] = &[
    Control {
        name: "q1 coefficient",
        target: Suite::Geometry,
        unrelated: &[Suite::Lattice, Suite::Cm, Suite::Group, Suite::Kondo],
        perturb: |d| d.bh.quadrics[0] = d.bh.quadrics[0].replacen("x1^2", "2*x1^2", 1),
    },
    Control {
        name: "entry of u",
        target: Suite::Group,
        unrelated: &[Suite::Lattice, Suite::Cm, Suite::Kondo],
        perturb: |d| {
            let u = d.groups.get_mut("bh").unwrap().generators.iter_mut().find(|g| g.name == "u").unwrap();
            u.rows[0][0] = format!("2*({})", u.rows[0][0]);
        },
    },
    Control {
        name: "Gram entry",
        target: Suite::Lattice,
        unrelated: &[Suite::Cm, Suite::Group, Suite::Kondo],
        perturb: |d| {
            d.lattice.gram[0][2] += 1;
            d.lattice.gram[2][0] += 1;
        },
    },
];

fn statuses(checks: &[CheckResult]) -> Vec<(String, Status)> {
    checks.iter().map(|c| (c.id.clone(), c.status)).collect()
}

fn negative_controls(baseline: &Data, cache: &Cache) -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for control in CONTROLS {
        let mut data = baseline.clone();
        (control.perturb)(&mut data);
        assert_ne!(format!("{data:?}"), format!("{baseline:?}"), "{} changed nothing", control.name);
        let target = run_suites(&data, cache, Profile::Quick, &[control.target]);
        let flipped: Vec<&str> = target.iter().filter(|c| c.status == Status::Fail).map(|c| c.id.as_str()).collect();
        let report = Report::new(Profile::Quick, target.clone());
        let mut unchanged = true;
        for &s in control.unrelated {
            let before = statuses(&run_suites(baseline, cache, Profile::Quick, &[s]));
            let after = statuses(&run_suites(&data, cache, Profile::Quick, &[s]));
            if before != after {
                unchanged = false;
                details.push(format!("{}: suite {} changed", control.name, s.name()));
            }
        }
        let ok = !flipped.is_empty() && report.exit_code() == 1 && unchanged;
        pass &= ok;
        details.push(format!("{}: {} failing in {}", control.name, flipped.len(), control.target.name()));
    }
    Outcome { pass, detail: details.join(", ") }
}

fn main() {
    let total = Instant::now();
    let data = Data::builtin();
    let cache = Cache::disabled();
    let ctx = Context::new(&data, &cache, Profile::Full);
    let mut outcomes: Vec<(u32, &str, Outcome)> = Vec::new();

    let suites = [
        (1, "lattice suite", Suite::Lattice, LIMIT_LATTICE),
        (2, "CM suite", Suite::Cm, LIMIT_CM),
        (3, "group suite", Suite::Group, LIMIT_GROUP),
        (4, "geometry suite", Suite::Geometry, LIMIT_GEOMETRY),
        (5, "Kondo suite", Suite::Kondo, LIMIT_KONDO),
        (6, "Nikulin suite", Suite::Nikulin, LIMIT_NIKULIN),
    ];
    for (n, name, suite, limit) in suites {
        let (checks, elapsed) = timed(|| run_suite(&ctx, suite));
        outcomes.push((n, name, judge(&checks, elapsed, limit)));
    }
    outcomes.push((7, "property suites", properties()));
    outcomes.push((8, "negative controls", negative_controls(&data, &cache)));

    let mut failing = BTreeSet::new();
    for (n, name, o) in &outcomes {
        println!("criterion {n} {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failing.insert(*n);
        }
    }
    let elapsed = total.elapsed();
    println!("acceptance wall time {:.1}s of {}s", elapsed.as_secs_f64(), LIMIT_TOTAL.as_secs());

    let expected: BTreeSet<u32> = KNOWN_RED.iter().copied().collect();
    if failing != expected || elapsed > LIMIT_TOTAL {
        eprintln!("failing criteria {failing:?}, expected exactly {expected:?}");
        std::process::exit(1);
    }
    println!("failing criteria {failing:?} match the documented set");
}
