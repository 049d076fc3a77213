use std::path::Path;

use gbs_core::ascending::{ascending_loop, is_ascending};
use gbs_core::graph::{normalize_signs, reduce as reduce_graph, serialize_graph_lines};
use gbs_core::iso::{are_isomorphic, enumerate_snm, IsoCertificate};
use gbs_core::mobility::{classify_mobile, MobilityEvidence};
use gbs_core::oracle;
use gbs_core::smc::{has_smc, MonotoneCycleWitness};
use gbs_core::{parse_graph, serialize_graph, Decision, GbsError, LabeledGraph, SearchBudget};
use serde_json::json;

use crate::report::{Report, Verdict};

type Outcome = Result<Report, Report>;

struct Ctx<'a> {
    command: &'static str,
    inputs: Vec<&'a Path>,
}

impl<'a> Ctx<'a> {
    fn new(command: &'static str, inputs: &[&'a Path]) -> Self {
        Ctx { command, inputs: inputs.to_vec() }
    }

    fn report(&self, verdict: Verdict) -> Report {
        Report::new(self.command, &self.inputs, verdict)
    }

    fn fail(&self, e: &GbsError) -> Report {
        Report::from_core(self.command, &self.inputs, e)
    }

    fn read(&self, path: &Path) -> Result<String, Report> {
        std::fs::read_to_string(path)
            .map_err(|e| Report::error(self.command, &self.inputs, "io", format!("{}: {e}", path.display())))
    }

    fn load(&self, path: &Path) -> Result<LabeledGraph, Report> {
        parse_graph(&self.read(path)?).map_err(|e| self.fail(&e))
    }

    /// Canonical signs, then collapsed to a reduced graph. With `positive`,
    /// a sign pattern that cannot be made all positive is an error.
    fn prepare(&self, g: &LabeledGraph, positive: bool) -> Result<LabeledGraph, Report> {
        let (n, _) = normalize_signs(g);
        if positive && !n.all_positive() {
            return Err(self.fail(&GbsError::SignObstruction));
        }
        reduce_graph(&n).map(|(r, _)| r).map_err(|e| self.fail(&e))
    }

    /// Report skeleton for a decision; `Yes` stores the witness under `key`.
    fn decided<W: serde::Serialize>(&self, d: &Decision<W>, key: &str) -> Report {
        match d {
            Decision::Yes { witness } => self.report(Verdict::Yes).field(key, witness),
            Decision::No { reason } => self.report(Verdict::No).field("reason", reason),
            Decision::Inconclusive { bound } => {
                self.report(Verdict::Inconclusive).field("bound", bound).line(format!("inconclusive: {bound}"))
            }
        }
    }
}

fn smc_text(w: &MonotoneCycleWitness) -> String {
    let mut cycle = w.path.clone();
    cycle.push(w.last_edge.clone());
    format!("strict monotone cycle ({}) with modulus {}", cycle.join(" "), w.modulus)
}

fn evidence_text(ev: &MobilityEvidence) -> String {
    match ev {
        MobilityEvidence::MonotoneCycle(w) => smc_text(w),
        MobilityEvidence::IntegerCycle(w) => {
            format!("strict {}-integer cycle ({}) with modulus {}", w.base_edge, w.cycle.join(" "), w.modulus)
        }
    }
}

pub fn reduce(file: &Path) -> Outcome {
    let ctx = Ctx::new("reduce", &[file]);
    let g = ctx.load(file)?;
    let (n, signs) = normalize_signs(&g);
    let (r, seq) = reduce_graph(&n).map_err(|e| ctx.fail(&e))?;
    let mut report = ctx
        .report(Verdict::Yes)
        .field("graph", serialize_graph(&r))
        .field("signs", &signs)
        .field("moves", &seq)
        .line(serialize_graph_lines(&r).trim_end());
    for m in &seq.moves {
        let edge = serde_json::to_value(m).expect("moves serialize")["edge"].as_str().unwrap_or_default().to_owned();
        report = report.line(format!("# {} {edge}", m.kind()));
    }
    Ok(report)
}

pub fn ascending(file: &Path, budget: &SearchBudget) -> Outcome {
    let ctx = Ctx::new("ascending", &[file]);
    let g = ctx.prepare(&ctx.load(file)?, false)?;
    let d = is_ascending(&g, budget).map_err(|e| ctx.fail(&e))?;
    let report = ctx.decided(&d, "witness");
    Ok(match &d {
        Decision::Yes { witness } => {
            let (h, moves) = ascending_loop(&g, witness).map_err(|e| ctx.fail(&e))?;
            report
                .field("ascending_loop", json!({ "graph": serialize_graph(&h), "moves": moves }))
                .line("ascending")
                .line(smc_text(witness))
        }
        Decision::No { reason } => report.line("non-ascending").line(format!("# {reason}")),
        Decision::Inconclusive { .. } => report,
    })
}

pub fn smc(file: &Path, budget: &SearchBudget) -> Outcome {
    let ctx = Ctx::new("smc", &[file]);
    let g = ctx.load(file)?;
    let d = has_smc(&g, budget);
    let report = ctx.decided(&d, "witness");
    Ok(match &d {
        Decision::Yes { witness } => report.line(smc_text(witness)),
        Decision::No { .. } => report.line("no strict monotone cycle"),
        Decision::Inconclusive { .. } => report,
    })
}

pub fn mobile(file: &Path, budget: &SearchBudget) -> Outcome {
    let ctx = Ctx::new("mobile", &[file]);
    let g = ctx.load(file)?;
    let mut mobile = Vec::new();
    let mut edges = Vec::new();
    let mut details = Vec::new();
    let mut bound = None;
    for (i, e) in g.edges().iter().enumerate() {
        let d = classify_mobile(&g, i, budget);
        match &d {
            Decision::Yes { witness } => {
                mobile.push(e.name.clone());
                details.push(format!("{}: mobile, {}", e.name, evidence_text(witness)));
                edges.push(json!({ "edge": e.name, "mobile": true, "evidence": witness }));
            }
            Decision::No { .. } => {
                details.push(format!("{}: not mobile", e.name));
                edges.push(json!({ "edge": e.name, "mobile": false }));
            }
            Decision::Inconclusive { bound: b } => {
                details.push(format!("{}: inconclusive ({b})", e.name));
                edges.push(json!({ "edge": e.name, "mobile": null, "bound": b }));
                bound = bound.or(Some(b.clone()));
            }
        }
    }
    let mut report = match &bound {
        Some(b) => ctx.report(Verdict::Inconclusive).field("bound", b),
        None => ctx.report(Verdict::Yes).field("mobile", &mobile),
    }
    .field("edges", edges);
    if bound.is_none() {
        report = report.line(format!("mobile: {}", if mobile.is_empty() { "none".into() } else { mobile.join(" ") }));
    }
    Ok(details.into_iter().fold(report, Report::line))
}

pub fn iso(a: &Path, b: &Path, cert: Option<&Path>, budget: &SearchBudget) -> Outcome {
    let ctx = Ctx::new("iso", &[a, b]);
    let (ga, gb) = (ctx.load(a)?, ctx.load(b)?);
    let d = are_isomorphic(&ga, &gb, budget).map_err(|e| ctx.fail(&e))?;
    let report = ctx.decided(&d, "certificate");
    Ok(match &d {
        Decision::Yes { witness } => {
            if let Some(path) = cert {
                std::fs::write(path, witness.to_json() + "\n")
                    .map_err(|e| Report::error(ctx.command, &ctx.inputs, "io", format!("{}: {e}", path.display())))?;
            }
            report.line("isomorphic").line(format!("# slides in certificate: {}", witness.slide_count()))
        }
        Decision::No { reason } => report.line("not isomorphic").line(format!("# {reason}")),
        Decision::Inconclusive { .. } => report,
    })
}

pub fn snm(file: &Path, budget: &SearchBudget) -> Outcome {
    let ctx = Ctx::new("snm", &[file]);
    let g = ctx.prepare(&ctx.load(file)?, false)?;
    let d = enumerate_snm(&g, budget);
    Ok(match d {
        Decision::Yes { witness } => {
            let graphs: Vec<_> =
                witness.iter().map(|m| json!({ "graph": serialize_graph(&m.graph), "slides": m.slides })).collect();
            let report = ctx.report(Verdict::Yes).field("count", witness.len()).field("graphs", graphs);
            let report = report.line(format!("# graphs: {}", witness.len()));
            witness.iter().fold(report, |r, m| r.line(serialize_graph(&m.graph)))
        }
        other => ctx.decided(&other.map(|_| ()), "graphs"),
    })
}

pub fn verify_cert(file: &Path, cert: &Path) -> Outcome {
    let ctx = Ctx::new("verify-cert", &[file, cert]);
    let g = ctx.load(file)?;
    let c = IsoCertificate::from_json(&ctx.read(cert)?).map_err(|e| ctx.fail(&e))?;
    let target = c.target_graph().map_err(|e| ctx.fail(&e))?;
    Ok(match c.verify(&g, &target) {
        Ok(()) => ctx.report(Verdict::Yes).field("target", &c.target).line("certificate valid").line(format!(
            "# slides: {}, target: {}",
            c.slide_count(),
            c.target
        )),
        Err(e) => ctx.report(Verdict::No).field("reason", e.to_string()).line(format!("certificate rejected: {e}")),
    })
}

pub fn oracle_bfs(a: &Path, b: &Path, max_label: i64, max_depth: usize) -> Outcome {
    let ctx = Ctx::new("oracle-bfs", &[a, b]);
    let ga = ctx.prepare(&ctx.load(a)?, true)?;
    let gb = ctx.prepare(&ctx.load(b)?, true)?;
    let d = oracle::oracle_bfs(&ga, &gb, max_label, max_depth).map_err(|e| ctx.fail(&e))?;
    let report = ctx.decided(&d, "hit");
    Ok(match &d {
        Decision::Yes { witness } => report.line(format!("reachable at depth {}", witness.depth)),
        Decision::No { .. } => report.line("unreachable"),
        Decision::Inconclusive { .. } => report,
    })
}
