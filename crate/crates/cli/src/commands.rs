use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use turan_core::constructions::{basic_construction, g_value, improved_construction, turan_count, ConstructionParams, TemplateSpec};
use turan_core::detect::detect;
use turan_core::ex::{compare_with_g, ex_exact, verify_turan_identity, ExInstance};
use turan_core::io::{load_graph, Cache};
use turan_core::stability::{classify_atypical, closest_template, high_degree_core, min_degree_audit, structure_report, AnalysisParams};
use turan_core::zar::{cached_z_exact, gap_checks, z_lower_construction, GapRange, Status, ZarKey};
use turan_core::{BitSet, Budget, ClassPartition, Outcome, PartitionedGraph};

use crate::args::{AnalyzeCommand, Cli, Command, ConstructionKind, ExCommand, FormulaCommand, GapArgs, Rates, ZarCommand};
use crate::{Exit, Output};

pub fn run(cli: &Cli) -> Result<Output> {
    let budget = Budget::nodes(cli.global.budget);
    let seed = cli.global.seed;
    match &cli.command {
        Command::Construct { kind, params, class1 } => construct(*kind, params, class1.as_deref(), seed),
        Command::CheckFree { graph, pattern } => {
            let g = load_graph(graph).with_context(|| format!("reading {}", graph.display()))?;
            let pattern = pattern.pattern();
            let d = detect(&g, &pattern, budget);
            let (exit, summary) = match &d.outcome {
                Outcome::Free => (Exit::Ok, format!("{pattern}-free ({} nodes)", d.nodes)),
                Outcome::Found(w) => (Exit::Found, format!("found {pattern}: {:?}", w.classes)),
                Outcome::BudgetExceeded => (Exit::Budget, format!("undecided: budget of {} nodes exhausted", budget.max_nodes)),
            };
            let mut out = Output::new(
                json!({ "pattern": pattern, "detection": d }),
                summary,
                json!({ "pattern": pattern }),
            );
            out.exit = exit;
            out.inputs.push(graph.clone());
            out.counters.insert("nodes".into(), d.nodes);
            Ok(out)
        }
        Command::Zar { command } => match command {
            ZarCommand::Exact { sizes, t } => {
                let key = ZarKey::new(sizes.clone(), *t)?;
                let mut cache = Cache::from_env()?;
                let rec = cached_z_exact(&key, budget, cache.as_mut())?;
                let exact = rec.status == Status::Exact;
                let summary = format!("{} {} {}", key, if exact { "=" } else { ">=" }, rec.value);
                let mut out = Output::new(serde_json::to_value(&rec)?, summary, json!({ "sizes": sizes, "t": t }));
                if !exact {
                    out.exit = Exit::Budget;
                }
                Ok(out)
            }
            ZarCommand::Lower { n, t } => {
                let rec = z_lower_construction(*n, *t, seed)?;
                let summary = format!("{} >= {}", rec.key, rec.value);
                Ok(Output::new(serde_json::to_value(&rec)?, summary, json!({ "n": n, "t": t })))
            }
            ZarCommand::Gaps(a) => gaps(a, budget),
        },
        Command::Gaps(a) => gaps(a, budget),
        Command::Ex { command } => ex(command, budget),
        Command::Analyze { command } => analyze(command, budget),
        Command::Formulas { command } => match command {
            FormulaCommand::Turan { r, k } => {
                let v = turan_count(*r, *k)?;
                Ok(Output::new(
                    json!({ "r": r, "k": k, "value": v }),
                    v.to_string(),
                    json!({ "r": r, "k": k }),
                ))
            }
            FormulaCommand::G { params: p, z } => {
                let z = match z {
                    Some(z) => *z,
                    None => {
                        let mut cache = Cache::from_env()?;
                        let rec = cached_z_exact(&ZarKey::bipartite(p.n, p.n, p.t)?, budget, cache.as_mut())?;
                        if rec.status != Status::Exact {
                            return Err(turan_core::Error::BudgetExceeded(budget.max_nodes).into());
                        }
                        rec.value
                    }
                };
                let v = g_value(p.n, p.r, p.k, p.t, z)?;
                let params = json!({ "n": p.n, "r": p.r, "k": p.k, "t": p.t, "z": z });
                Ok(Output::new(json!({ "params": params.clone(), "value": v }), v.to_string(), params))
            }
        },
    }
}

fn construct(kind: ConstructionKind, p: &crate::args::Nrkt, class1: Option<&Path>, seed: u64) -> Result<Output> {
    let cp = ConstructionParams::new(p.n, p.r, p.k, p.t)?;
    let b = match class1 {
        Some(path) => load_graph(path).with_context(|| format!("reading {}", path.display()))?,
        None => z_lower_construction(p.n, p.t, seed)?.graph()?,
    };
    let c = match kind {
        ConstructionKind::Basic => basic_construction(&cp, &b)?,
        ConstructionKind::Improved => improved_construction(&cp, &b)?,
    };
    let name = match kind {
        ConstructionKind::Basic => "basic",
        ConstructionKind::Improved => "improved",
    };
    let edges = c.graph.edge_count();
    let params = json!({ "kind": name, "n": p.n, "r": p.r, "k": p.k, "t": p.t, "class1_hash": b.content_hash() });
    let report = json!({
        "params": params.clone(),
        "edges": edges,
        "expected_edges": c.expected_edges,
        "rows": c.rows.labels(),
        "graph": c.graph.to_doc(),
    });
    let mut out = Output::new(report, format!("{name} construction: {edges} edges"), params);
    out.artifact = Some(c.graph.to_json() + "\n");
    if let Some(path) = class1 {
        out.inputs.push(path.to_path_buf());
    }
    Ok(out)
}

fn gaps(a: &GapArgs, budget: Budget) -> Result<Output> {
    let range = GapRange {
        t: a.t,
        max_side: a.max,
        max_parts: a.max_parts,
        max_part_size: a.max_part_size,
    };
    let mut cache = Cache::from_env()?;
    let report = gap_checks(&range, budget, cache.as_mut())?;
    let failures: Vec<String> = report
        .row_steps
        .iter()
        .filter(|e| e.applicable && !e.holds)
        .map(|e| format!("({},{})", e.m, e.n))
        .collect();
    let summary = if failures.is_empty() {
        format!("row growth holds on the {}x{} grid; monotone: {}", a.max, a.max, report.monotone)
    } else {
        format!("row growth fails at {}", failures.join(" "))
    };
    let mut out = Output::new(serde_json::to_value(&report)?, summary, serde_json::to_value(&range)?);
    if !report.rows_hold {
        out.exit = Exit::Found;
    }
    Ok(out)
}

fn ex(command: &ExCommand, budget: Budget) -> Result<Output> {
    match command {
        ExCommand::Solve { sizes, pattern } => {
            let pattern = pattern.pattern();
            let mut cache = Cache::from_env()?;
            let rec = match cache.as_ref().and_then(|c| c.get_ex(sizes, &pattern)) {
                Some(r) => r,
                None => {
                    let r = ex_exact(&ExInstance::new(sizes.clone(), pattern, budget))?;
                    if let (Some(c), Status::Exact) = (cache.as_mut(), r.status) {
                        c.put_ex(&r)?;
                    }
                    r
                }
            };
            let exact = rec.status == Status::Exact;
            let summary = format!("ex({sizes:?}; {pattern}) {} {}", if exact { "=" } else { ">=" }, rec.value);
            let mut out = Output::new(serde_json::to_value(&rec)?, summary, json!({ "sizes": sizes, "pattern": pattern }));
            if !exact {
                out.exit = Exit::Budget;
            }
            Ok(out)
        }
        ExCommand::Identity { n, k, r } => {
            let rep = verify_turan_identity(*n, *k, *r, budget)?;
            let summary = format!(
                "search {} vs t_r(k)n^2 = {}: {}",
                rep.value,
                rep.expected,
                if rep.holds { "equal" } else { "differ" }
            );
            let mut out = Output::new(serde_json::to_value(&rep)?, summary, json!({ "n": n, "k": k, "r": r }));
            out.exit = match (rep.status, rep.holds) {
                (Status::LowerBoundOnly, _) => Exit::Budget,
                (_, false) => Exit::Found,
                _ => Exit::Ok,
            };
            Ok(out)
        }
        ExCommand::Compare(p) => {
            let c = compare_with_g(p.n, p.r, p.k, p.t, budget)?;
            let summary = format!(
                "ex = {}, g = {}, constructions {:?}",
                c.ex,
                c.g,
                c.constructions.iter().map(|x| (&x.name, x.edges)).collect::<Vec<_>>()
            );
            let mut out = Output::new(
                serde_json::to_value(&c)?,
                summary,
                json!({ "n": p.n, "r": p.r, "k": p.k, "t": p.t }),
            );
            out.exit = match (c.ex_status, c.ex_dominates_constructions) {
                (Status::LowerBoundOnly, _) => Exit::Budget,
                (_, false) => Exit::Found,
                _ => Exit::Ok,
            };
            Ok(out)
        }
    }
}

fn analysis_params(g: &PartitionedGraph, rates: &Rates) -> Result<AnalysisParams> {
    let sizes = g.part_sizes();
    let n = sizes[0];
    if sizes.iter().any(|&s| s != n) {
        bail!("analysis needs equal part sizes, got {sizes:?}");
    }
    Ok(AnalysisParams::with_rates(
        rates.r,
        sizes.len(),
        n,
        rates.t,
        rates.gamma,
        rates.epsilon,
    )?)
}

fn rates_json(p: &AnalysisParams) -> Value {
    serde_json::to_value(p).unwrap_or(Value::Null)
}

/// Classes from a label file, or those of the closest template.
fn classes(
    g: &PartitionedGraph,
    params: &AnalysisParams,
    path: Option<&Path>,
    out_inputs: &mut Vec<std::path::PathBuf>,
) -> Result<ClassPartition> {
    match path {
        Some(path) => {
            let labels: Vec<usize> =
                serde_json::from_str(&std::fs::read_to_string(path)?).with_context(|| format!("reading labels from {}", path.display()))?;
            if labels.len() != g.n_vertices() {
                bail!("{} labels for {} vertices", labels.len(), g.n_vertices());
            }
            out_inputs.push(path.to_path_buf());
            Ok(ClassPartition::from_labels(&labels, params.r)?)
        }
        None => Ok(closest_template(g, params)?.partition),
    }
}

fn analyze(command: &AnalyzeCommand, budget: Budget) -> Result<Output> {
    let graph = match command {
        AnalyzeCommand::ClosestTemplate { graph, .. }
        | AnalyzeCommand::Classify { graph, .. }
        | AnalyzeCommand::Core { graph, .. }
        | AnalyzeCommand::Structure { graph, .. } => graph,
    };
    let g = load_graph(graph).with_context(|| format!("reading {}", graph.display()))?;
    let mut inputs = vec![graph.clone()];
    let mut out = match command {
        AnalyzeCommand::ClosestTemplate { rates, .. } => {
            let params = analysis_params(&g, rates)?;
            let c = closest_template(&g, &params)?;
            let summary = format!(
                "distance {} ({}gamma-close, {})",
                c.distance,
                if c.gamma_close { "" } else { "not " },
                if c.exhaustive { "exhaustive" } else { "local search" }
            );
            Output::new(serde_json::to_value(&c)?, summary, rates_json(&params))
        }
        AnalyzeCommand::Classify { rates, spec, .. } => {
            let params = analysis_params(&g, rates)?;
            let spec: TemplateSpec = match spec {
                Some(path) => {
                    inputs.push(path.clone());
                    serde_json::from_str(&std::fs::read_to_string(path)?)
                        .with_context(|| format!("reading template from {}", path.display()))?
                }
                None => TemplateSpec::standard(params.r, params.k, params.n)?,
            };
            let audit = min_degree_audit(&g, &spec, &params)?;
            let d = classify_atypical(&g, &spec, &params)?;
            let check = d.check_partitions(&spec).err().map(|e| e.to_string());
            let summary = format!(
                "{} degree violations, |W''| = {}, |Z''| = {}, {} ambiguous",
                audit.len(),
                d.w_doubleprime.count(),
                d.z_doubleprime.count(),
                d.ambiguous.count()
            );
            let report = json!({ "spec": spec, "audit": audit, "decomposition": d, "partition_error": check });
            Output::new(report, summary, rates_json(&params))
        }
        AnalyzeCommand::Core { rates, classes: path, .. } => {
            let params = analysis_params(&g, rates)?;
            let p = classes(&g, &params, path.as_deref(), &mut inputs)?;
            let c = high_degree_core(&g, &p, &params)?;
            let summary = format!(
                "|X| = {} (bound {:.1}, hypothesis {})",
                c.core.count(),
                c.bound,
                if c.hypothesis_met { "met" } else { "unmet" }
            );
            let mut out = Output::new(json!({ "classes": p.labels(), "core": c }), summary, rates_json(&params));
            if c.hypothesis_met && !c.within_bound {
                out.exit = Exit::Found;
            }
            out
        }
        AnalyzeCommand::Structure {
            rates, classes: path, z, ..
        } => {
            let params = analysis_params(&g, rates)?;
            let p = classes(&g, &params, path.as_deref(), &mut inputs)?;
            if let Some(&v) = z.iter().find(|&&v| v >= g.n_vertices()) {
                bail!("exceptional vertex {v} out of range");
            }
            let zs = BitSet::from_indices(g.n_vertices(), z.iter().copied());
            let rep = structure_report(&g, &p, &zs, &params, budget)?;
            let summary = format!(
                "class-wise patterns {}; |Z| = {}",
                if rep.all_free() { "absent" } else { "present" },
                rep.exceptional_size
            );
            let mut out = Output::new(json!({ "classes": p.labels(), "report": rep }), summary, rates_json(&params));
            out.exit = match rep.first_class {
                Outcome::BudgetExceeded => Exit::Budget,
                _ if !rep.all_free() => Exit::Found,
                _ => Exit::Ok,
            };
            out
        }
    };
    out.inputs = inputs;
    Ok(out)
}
