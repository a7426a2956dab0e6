use std::path::Path;

use cac_core::dynamics::{run, Outcome, Schedule};
use cac_core::{fractions, Action, ActionProfile, BigRational};
use serde_json::json;

use crate::error::CliError;
use crate::instance::Instance;
use crate::outln;
use crate::report::Report;

pub fn simulate(
    inst: &Instance,
    schedule: Schedule,
    steps: usize,
    x0: Option<&str>,
    trajectory_out: Option<&Path>,
) -> Result<Report, CliError> {
    let pop = &inst.population;
    let x0 = match x0 {
        Some(s) => s.parse::<ActionProfile>()?,
        None => ActionProfile::all(Action::Minus, pop.n()),
    };
    let result = run(pop, &x0, schedule, steps)?;

    let mut report = Report::new();
    match schedule {
        Schedule::Asynchronous { seed } => outln!(report, "schedule: async (seed {seed})"),
        Schedule::Synchronous => outln!(report, "schedule: sync"),
    }
    if let Some(rng) = result.rng_algorithm {
        outln!(report, "rng: {rng}");
    }
    outln!(report, "initial profile: {x0}");
    let outcome_json = match &result.outcome {
        Outcome::ConvergedToNash { profile, steps } => {
            let triple = fractions(pop, profile)?;
            outln!(report, "outcome: converged to Nash after {steps} steps");
            outln!(report, "profile: {profile}");
            outln!(report, "triple: {triple}");
            json!({ "kind": "converged", "steps": steps, "profile": profile.to_string(), "z": triple.z().to_string() })
        }
        Outcome::CycleDetected { period } => {
            outln!(report, "outcome: cycle detected with period {period}");
            json!({ "kind": "cycle", "period": period })
        }
        Outcome::StepLimit => {
            outln!(report, "outcome: step limit reached after {steps} steps");
            json!({ "kind": "step_limit", "steps": steps })
        }
    };

    if let Some(path) = trajectory_out {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        w.write_record(["step", "plus", "z", "activated"])?;
        for p in &result.trajectory {
            let z = BigRational::new(p.plus.into(), result.n.into());
            let activated = p.activated.map(|i| i.to_string()).unwrap_or_default();
            w.write_record([p.step.to_string(), p.plus.to_string(), z.to_string(), activated])?;
        }
        w.flush()?;
        outln!(report, "wrote {}", path.display());
    }

    report.json = json!({
        "schedule": match schedule {
            Schedule::Asynchronous { .. } => "async",
            Schedule::Synchronous => "sync",
        },
        "seed": match schedule {
            Schedule::Asynchronous { seed } => Some(seed),
            Schedule::Synchronous => None,
        },
        "rng": result.rng_algorithm,
        "initial_profile": x0.to_string(),
        "outcome": outcome_json,
        "trajectory_points": result.trajectory.len(),
    });
    Ok(report)
}
