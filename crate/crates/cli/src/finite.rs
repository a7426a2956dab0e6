//! Commands on finite instances: solve, count, enumerate, verify.

use std::collections::BTreeSet;

use cac_core::game::first_deviator;
use cac_core::oracle::brute_force_nash;
use cac_core::solver::enumerate_unbounded;
use cac_core::{
    best_response, classify_game, construct_equilibrium, enumerate_equilibria, solve_triples, Action,
    ActionProfile, BestResponse, EquilibriumSet, Population, SolutionRecord,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::exact_opt;
use crate::instance::Instance;
use crate::outln;
use crate::report::Report;

pub const NO_EQUILIBRIUM: u8 = 3;

fn header(report: &mut Report, inst: &Instance) {
    let pop = &inst.population;
    if let Some(name) = &inst.name {
        outln!(report, "instance: {name}");
    }
    if let Some(description) = &inst.description {
        outln!(report, "description: {description}");
    }
    outln!(
        report,
        "agents: {} ({} coordinating, {} anti-coordinating)",
        pop.n(),
        pop.n_coord(),
        pop.n_anti()
    );
    outln!(report, "class: {}", classify_game(pop));
}

fn header_json(inst: &Instance) -> Value {
    let pop = &inst.population;
    json!({
        "name": inst.name,
        "description": inst.description,
        "n": pop.n(),
        "n_coord": pop.n_coord(),
        "n_anti": pop.n_anti(),
        "class": classify_game(pop).to_string(),
    })
}

fn triple_json(rec: &SolutionRecord) -> Value {
    json!({
        "z": rec.z().to_string(),
        "z_coord": rec.triple.z_coord().map(|r| r.to_string()),
        "z_anti": rec.triple.z_anti().map(|r| r.to_string()),
        "equilibria": rec.equilibrium_count.to_string(),
    })
}

fn triple_text(rec: &SolutionRecord) -> String {
    format!(
        "z = {}  z_c = {}  z_a = {}  equilibria = {}",
        rec.z(),
        exact_opt(rec.triple.z_coord()),
        exact_opt(rec.triple.z_anti()),
        rec.equilibrium_count
    )
}

fn solutions_line(set: &EquilibriumSet) -> String {
    match set.len() {
        1 => "1 solution".to_string(),
        k => format!("{k} solutions"),
    }
}

fn exit_for(set: &EquilibriumSet) -> u8 {
    if set.is_empty() {
        NO_EQUILIBRIUM
    } else {
        0
    }
}

pub fn solve(inst: &Instance) -> Result<Report, CliError> {
    let pop = &inst.population;
    let set = solve_triples(pop);
    let mut report = Report::new();
    header(&mut report, inst);
    outln!(report, "{}", solutions_line(&set));
    let mut solutions = Vec::new();
    for (idx, rec) in set.records.iter().enumerate() {
        let x = construct_equilibrium(pop, rec)?;
        outln!(report, "[{}] {}", idx + 1, triple_text(rec));
        outln!(report, "    equilibrium: {x}");
        let mut entry = triple_json(rec);
        entry["equilibrium"] = json!(x.to_string());
        solutions.push(entry);
    }
    outln!(report, "total equilibria: {}", set.total_count);
    let mut doc = header_json(inst);
    doc["solutions"] = Value::Array(solutions);
    doc["total"] = json!(set.total_count.to_string());
    report.json = doc;
    report.code = exit_for(&set);
    Ok(report)
}

pub fn count(inst: &Instance) -> Result<Report, CliError> {
    let set = solve_triples(&inst.population);
    let mut report = Report::new();
    header(&mut report, inst);
    outln!(report, "{}", solutions_line(&set));
    for rec in &set.records {
        outln!(report, "z = {}: {}", rec.z(), rec.equilibrium_count);
    }
    outln!(report, "total equilibria: {}", set.total_count);
    let mut doc = header_json(inst);
    doc["counts"] = set.records.iter().map(triple_json).collect();
    doc["total"] = json!(set.total_count.to_string());
    report.json = doc;
    report.code = exit_for(&set);
    Ok(report)
}

pub fn enumerate(inst: &Instance, max_profiles: usize) -> Result<Report, CliError> {
    let pop = &inst.population;
    let set = solve_triples(pop);
    let mut report = Report::new();
    header(&mut report, inst);
    outln!(report, "{}", solutions_line(&set));
    let mut written = 0usize;
    let mut solutions = Vec::new();
    for rec in &set.records {
        outln!(report, "# {}", triple_text(rec));
        let profiles: Vec<String> = enumerate_equilibria(pop, rec, Some(max_profiles - written))?
            .map(|x| x.to_string())
            .collect();
        for p in &profiles {
            outln!(report, "{p}");
        }
        written += profiles.len();
        let mut entry = triple_json(rec);
        entry["profiles"] = json!(profiles);
        solutions.push(entry);
    }
    let truncated = set.total_count > written.into();
    outln!(report, "written: {written} of {}", set.total_count);
    if truncated {
        outln!(report, "output truncated at --max-enumerate {max_profiles}");
    }
    let mut doc = header_json(inst);
    doc["solutions"] = Value::Array(solutions);
    doc["total"] = json!(set.total_count.to_string());
    doc["written"] = json!(written);
    doc["truncated"] = json!(truncated);
    report.json = doc;
    report.code = exit_for(&set);
    Ok(report)
}

pub fn verify_profile(inst: &Instance, profile: &str) -> Result<Report, CliError> {
    let pop = &inst.population;
    let x: ActionProfile = profile.parse()?;
    let deviator = first_deviator_details(pop, &x)?;
    let triple = cac_core::fractions(pop, &x)?;
    let mut report = Report::new();
    outln!(report, "profile: {x}");
    outln!(report, "triple: {triple}");
    let dev_json = match &deviator {
        None => {
            outln!(report, "Nash: yes");
            Value::Null
        }
        Some((i, best)) => {
            outln!(report, "Nash: no");
            outln!(
                report,
                "first deviating agent: {i} ({}, plays {}, best response {})",
                kind_name(pop, *i),
                x.get(*i),
                best
            );
            json!({ "agent": i, "kind": kind_name(pop, *i), "plays": x.get(*i).to_string(), "best_response": best.to_string() })
        }
    };
    report.json = json!({
        "profile": x.to_string(),
        "z": triple.z().to_string(),
        "nash": deviator.is_none(),
        "deviator": dev_json,
    });
    Ok(report)
}

fn first_deviator_details(pop: &Population, x: &ActionProfile) -> Result<Option<(usize, Action)>, CliError> {
    let Some(i) = first_deviator(pop, x)? else {
        return Ok(None);
    };
    match best_response(pop, x, i)? {
        BestResponse::Only(a) => Ok(Some((i, a))),
        BestResponse::Either => Err(CliError::Internal(format!("agent {i} is indifferent but flagged as deviating"))),
    }
}

fn kind_name(pop: &Population, i: usize) -> &'static str {
    match pop.kind(i) {
        cac_core::AgentKind::Coordinating => "coord",
        cac_core::AgentKind::AntiCoordinating => "anti",
    }
}

pub fn verify_oracle(inst: &Instance, max_n: usize) -> Result<Report, CliError> {
    let pop = &inst.population;
    let brute = brute_force_nash(pop, max_n)?;
    let set = solve_triples(pop);
    let mut solver_profiles = BTreeSet::new();
    for rec in &set.records {
        solver_profiles.extend(enumerate_unbounded(pop, rec)?.map(|x| x.to_string()));
    }
    let brute_profiles: BTreeSet<String> = brute.nash_profiles.iter().map(|x| x.to_string()).collect();
    let missing: Vec<&String> = brute_profiles.difference(&solver_profiles).collect();
    let spurious: Vec<&String> = solver_profiles.difference(&brute_profiles).collect();
    let count_ok = set.total_count == brute.count.into();
    let matched = missing.is_empty() && spurious.is_empty() && count_ok;

    let mut report = Report::new();
    header(&mut report, inst);
    outln!(report, "profiles scanned: 2^{}", pop.n());
    outln!(report, "brute-force equilibria: {}", brute.count);
    outln!(report, "solver equilibria: {}", set.total_count);
    for x in &missing {
        outln!(report, "missing from solver: {x}");
    }
    for x in &spurious {
        outln!(report, "not an equilibrium: {x}");
    }
    outln!(report, "oracle: {}", if matched { "match" } else { "MISMATCH" });
    let mut doc = header_json(inst);
    doc["brute_force_count"] = json!(brute.count);
    doc["solver_count"] = json!(set.total_count.to_string());
    doc["missing"] = json!(missing);
    doc["spurious"] = json!(spurious);
    doc["match"] = json!(matched);
    report.json = doc;
    if !matched {
        report.code = 1;
    }
    Ok(report)
}
