//! One function per subcommand. Each returns an exit code (0 pass, 1
//! mathematical failure or inconclusive) and a transcript; input problems
//! come back as [`InputError`] (exit 2).

use std::fmt::Write;
use std::path::{Path, PathBuf};

use serde_json::json;

use qsat_core::cep::{self, free_counterexample_demo, FiniteGroup, Subgroup, TransitivityRule};
use qsat_core::realize::{cep_transfer, realize, Realization, CONDITIONAL_ON_CEP};
use qsat_core::stallings::SubgroupGraph;
use qsat_core::verify::{unsound_vertices, verify_all};

use crate::format::{graph_json, presentations_json, report_json, subgroup_json, CepTaskJson, DagJson, EmbeddingJson, RealizationJson};
use crate::io::{read_json, write_atomic, write_json};
use crate::probe::soundness_probes;
use crate::{dot, InputError};

pub const DEMOS: [&str; 2] = ["free-counterexample", "s4-d4-cep"];

/// Probes per verification run.
pub const PROBES: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub transcript: String,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub out: PathBuf,
    pub bound: i64,
    pub dot: bool,
    pub seed: u64,
}

fn check_and_write(r: &Realization, opts: &Options, transcript: &mut String) -> Result<u8, InputError> {
    let report = verify_all(r, opts.bound);
    let probes = soundness_probes(r, opts.seed, PROBES);
    let unsound: Vec<&str> = unsound_vertices(r, opts.bound).into_iter().map(|v| r.dag().id(v)).collect();
    let pass = report.passed() && probes.is_empty() && unsound.is_empty();

    let mut doc = report_json(r, &report);
    doc["verdict"] = json!(if pass { "pass" } else { "fail" });
    doc["soundness"] = json!({
        "unsound_vertices": unsound,
        "seed": opts.seed,
        "probes": PROBES,
        "probe_failures": probes.iter().map(|p| json!({ "vertex": p.vertex, "word": p.word.to_string(), "image": p.image })).collect::<Vec<_>>(),
    });
    write_json(&opts.out.join("report.json"), &doc)?;
    if opts.dot {
        write_atomic(&opts.out.join("lattice.dot"), &dot::realization_dot(r))?;
    }

    let n = r.dag().len();
    writeln!(transcript, "ambient group: F{}", r.ambient_rank()).unwrap();
    for v in 0..n {
        let q = r.quotient(v);
        writeln!(transcript, "  {} (color {}): F/N = {}", r.dag().id(v), r.dag().color(v).as_u8(), q.expr()).unwrap();
    }
    let failed = report.failures().count() - report.inconclusive();
    writeln!(
        transcript,
        "checks: {} passed, {} failed, {} inconclusive; {} probes, {} failed",
        report.entries.len() - report.failures().count(),
        failed,
        report.inconclusive(),
        PROBES,
        probes.len()
    )
    .unwrap();
    for e in report.failures() {
        writeln!(transcript, "  {:?} {:?}: {:?}", e.kind, e.subject, e.status).unwrap();
    }
    for v in &unsound {
        writeln!(transcript, "  relators of `{v}` are nontrivial in its own quotient").unwrap();
    }
    writeln!(transcript, "verdict: {}", if pass { "pass" } else { "fail" }).unwrap();
    Ok(u8::from(!pass))
}

pub fn cmd_realize(input: &Path, opts: &Options) -> Result<Outcome, InputError> {
    let dag = read_json::<DagJson>(input)?.to_dag()?;
    let r = realize(&dag)?;
    write_json(&opts.out.join("realization.json"), &serde_json::to_value(RealizationJson::from_realization(&r)).unwrap())?;
    let mut transcript = String::new();
    let code = check_and_write(&r, opts, &mut transcript)?;
    Ok(Outcome { code, transcript })
}

pub fn cmd_verify(input: &Path, opts: &Options) -> Result<Outcome, InputError> {
    let r = read_json::<RealizationJson>(input)?.to_realization()?;
    let mut transcript = String::new();
    let code = check_and_write(&r, opts, &mut transcript)?;
    Ok(Outcome { code, transcript })
}

pub fn cmd_transfer(input: &Path, embedding: &Path, opts: &Options) -> Result<Outcome, InputError> {
    let r = read_json::<RealizationJson>(input)?.to_realization()?;
    let e = read_json::<EmbeddingJson>(embedding)?.to_embedding()?;
    let ps = cep_transfer(&r, &e)?;
    write_json(&opts.out.join("presentations.json"), &presentations_json(&e, &ps))?;
    let mut transcript = format!("{CONDITIONAL_ON_CEP}\n");
    for p in &ps {
        writeln!(transcript, "{}: {}", p.vertex, p).unwrap();
    }
    Ok(Outcome { code: 0, transcript })
}

fn names(g: &FiniteGroup, s: &Subgroup) -> String {
    format!("{{{}}}", s.elements().map(|x| g.name(x)).collect::<Vec<_>>().join(", "))
}

pub fn cmd_cep(input: &Path, opts: &Options) -> Result<Outcome, InputError> {
    let task: CepTaskJson = read_json(input)?;
    let g = task.group.to_group()?;
    let mut doc = json!({ "group_order": g.order() });
    let mut transcript = format!("group of order {}\n", g.order());
    let mut code = 0;

    if let Some(gens) = &task.subgroup {
        let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
        let h = g.subgroup_by_names(&gens)?;
        let k = match &task.ambient {
            Some(a) => g.subgroup_by_names(&a.iter().map(String::as_str).collect::<Vec<_>>())?,
            None => g.whole(),
        };
        let verdict = g.is_cep_in(&k, &h)?;
        let violations = g.cep_violations(&k, &h);
        writeln!(transcript, "H = {} (order {}), K of order {}", names(&g, &h), h.len(), k.len()).unwrap();
        writeln!(transcript, "CEP: {}", verdict.holds).unwrap();
        doc["h"] = subgroup_json(&g, &h);
        doc["k"] = subgroup_json(&g, &k);
        doc["cep"] = json!(verdict.holds);
        doc["violations"] = violations
            .iter()
            .map(|v| {
                json!({
                    "n": subgroup_json(&g, &v.n),
                    "closure_in_k": subgroup_json(&g, &v.closure),
                    "intersection_with_h": subgroup_json(&g, &v.intersection),
                })
            })
            .collect();
        if let Some(v) = &verdict.counterexample {
            writeln!(transcript, "witness N = {}: H ∩ <<N>>_K = {} != N", names(&g, &v.n), names(&g, &v.intersection)).unwrap();
        }
        if task.ambient.is_none() {
            let max_s = task.max_s.unwrap_or(1);
            let s = g.is_almost_cep(&h, max_s)?;
            let shown = s.as_ref().map(|s| s.iter().map(|&x| g.name(x)).collect::<Vec<_>>());
            writeln!(transcript, "almost-CEP with |S| <= {max_s}: {shown:?}").unwrap();
            doc["almost_cep"] = json!({ "max_s": max_s, "s": shown });
        }
    }

    if task.transitivity {
        let rep = g.cep_transitivity_scan();
        writeln!(transcript, "transitivity: {} subgroups, {} chains, {} violations", rep.subgroups, rep.chains, rep.violations.len())
            .unwrap();
        doc["transitivity"] = json!({
            "subgroups": rep.subgroups,
            "chains": rep.chains,
            "cep_in_whole": rep.cep_in_whole,
            "violations": rep.violations.iter().map(|v| json!({
                "h": subgroup_json(&g, &v.h),
                "k": subgroup_json(&g, &v.k),
                "rule": match v.rule { TransitivityRule::Compose => "compose", TransitivityRule::Restrict => "restrict" },
            })).collect::<Vec<_>>(),
        });
        if !rep.violations.is_empty() {
            code = 1;
        }
    }
    write_json(&opts.out.join("cep.json"), &doc)?;
    Ok(Outcome { code, transcript })
}

fn demo_counterexample(opts: &Options) -> Result<Outcome, InputError> {
    let cert = free_counterexample_demo();
    let problems = cert.check();
    let graph = SubgroupGraph::build(cert.rank, &cert.h_generators)?;
    let words = |ws: &[qsat_core::word::Word]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>();
    let doc = json!({
        "ambient": "F(a, b), a = x1, b = x2",
        "h_generators": words(&cert.h_generators),
        "relator": cert.relator.to_string(),
        "conjugator": cert.conjugator.to_string(),
        "membership": cert.membership,
        "stallings_graph": graph_json(&graph),
        "basis": words(&cert.basis),
        "phi_on_basis": cert.phi_on_basis,
        "phi_of_relator": cert.phi_of_relator,
        "phi_of_a": cert.phi_of_a,
        "images_mod_a": cert.killed_images,
        "conclusion": "<<R>>_H < H = H ∩ <<R>>_G",
        "checked": problems.is_empty(),
        "problems": problems,
    });
    write_json(&opts.out.join("counterexample.json"), &doc)?;
    if opts.dot {
        write_atomic(&opts.out.join("stallings.dot"), &dot::stallings_dot(&graph))?;
    }
    let mut transcript = format!("{cert}\n");
    writeln!(transcript, "certificate check: {}", if problems.is_empty() { "pass" } else { "FAIL" }).unwrap();
    for p in &problems {
        writeln!(transcript, "  {p}").unwrap();
    }
    write_atomic(&opts.out.join("transcript.txt"), &transcript)?;
    Ok(Outcome { code: u8::from(!problems.is_empty()), transcript })
}

fn demo_s4_d4(opts: &Options) -> Result<Outcome, InputError> {
    let g = cep::bundled("S4").expect("bundled");
    let d4 = g.subgroup_by_names(&["(1 2 3 4)", "(1 3)"])?;
    let c4 = g.subgroup_by_names(&["(1 2 3 4)"])?;
    let verdict = g.is_cep(&d4)?;
    let violations = g.cep_violations(&g.whole(), &d4);

    // recompute both sides for every violation from scratch
    let recheck = |n: &Subgroup| {
        let seed: Vec<u32> = n.elements().collect();
        let closure = g.normal_closure(&seed);
        let meet = d4.intersect(&closure);
        (closure, meet)
    };
    let mut consistent = !verdict.holds && !violations.is_empty();
    for v in &violations {
        let (closure, meet) = recheck(&v.n);
        consistent &= closure == v.closure && meet == v.intersection && meet != v.n;
        consistent &= g.is_normal_in(&v.n, &d4) && g.is_normal_in(&closure, &g.whole());
    }
    let (c4_closure, c4_meet) = recheck(&c4);
    consistent &= violations.iter().any(|v| v.n == c4) && c4_closure.len() == 24 && c4_meet == d4;
    let s = g.is_almost_cep(&d4, 1)?;

    let mut transcript = String::from("G = S4, H = D4 = <(1 2 3 4), (1 3)>\n");
    writeln!(transcript, "CEP(H, G): {}", verdict.holds).unwrap();
    writeln!(transcript, "normal subgroups N of H with H ∩ <<N>>_G != N:").unwrap();
    for v in &violations {
        writeln!(transcript, "  N = {} -> H ∩ <<N>>_G = {}", names(&g, &v.n), names(&g, &v.intersection)).unwrap();
    }
    writeln!(transcript, "N = <(1 2 3 4)>: <<N>>_G has order {}, H ∩ <<N>>_G = H", c4_closure.len()).unwrap();
    let shown = s.as_ref().map(|s| s.iter().map(|&x| g.name(x)).collect::<Vec<_>>());
    writeln!(transcript, "smallest almost-CEP set S: {shown:?}").unwrap();
    writeln!(transcript, "recomputed: {}", if consistent { "consistent" } else { "INCONSISTENT" }).unwrap();

    let doc = json!({
        "g": "S4",
        "h": subgroup_json(&g, &d4),
        "cep": verdict.holds,
        "witness": verdict.counterexample.as_ref().map(|v| json!({
            "n": subgroup_json(&g, &v.n),
            "closure": subgroup_json(&g, &v.closure),
            "intersection": subgroup_json(&g, &v.intersection),
        })),
        "violating_normal_subgroups": violations.iter().map(|v| subgroup_json(&g, &v.n)).collect::<Vec<_>>(),
        "almost_cep_s": shown,
        "checked": consistent,
    });
    write_json(&opts.out.join("cep.json"), &doc)?;
    write_atomic(&opts.out.join("transcript.txt"), &transcript)?;
    Ok(Outcome { code: u8::from(!consistent), transcript })
}

pub fn cmd_demo(name: &str, opts: &Options) -> Result<Outcome, InputError> {
    match name {
        "free-counterexample" => demo_counterexample(opts),
        "s4-d4-cep" => demo_s4_d4(opts),
        other => Err(InputError::UnknownDemo(other.into())),
    }
}
