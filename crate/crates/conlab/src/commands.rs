use std::fmt::Write;
use std::rc::Rc;

use conlab_core::arith::{
    build_con, build_iterated_con, build_sentence_a, diagonal, OrdinalNotation, TheoryDescriptor,
};
use conlab_core::coding::encode;
use conlab_core::construction::{run_stages, tree, Enumeration, Trace};
use conlab_core::entailment::{
    check_certificate, Budgeted, Certificate, FactStore, GlProvider, Justification, SchematicProver,
};
use conlab_core::formula::{classify, classify_bounds, parse_formula, parse_sentence, Formula, Sentence, Term};
use conlab_core::modal::{
    gl_prove, mock_con, mock_iterated_con, parse_modal, truth, GlResult, ModalFormula as M, Valuation,
};
use conlab_core::operators::{dichotomy, register_case1, thm13_claims, thm13_g, thm4_certificate, Operator};
use serde_json::{json, Value};

use crate::config::{Format, Mode, RunConfig, Shape};
use crate::render::{self, sentence_text, strings, summary, to_json};
use crate::{Cli, CliError, Command, SEED_VAR};

type Failure = (CliError, String);

const DEFAULT_STAGES: usize = 2;

fn usage(m: impl Into<String>) -> Failure {
    (CliError::Usage(m.into()), String::new())
}

fn domain(m: impl ToString) -> Failure {
    (CliError::Domain(m.to_string()), String::new())
}

fn modal(s: &str) -> Result<M, Failure> {
    parse_modal(s).map_err(|e| domain(format!("`{s}`: {e}")))
}

fn formula(s: &str) -> Result<Formula, Failure> {
    parse_formula(s).map_err(|e| domain(format!("`{s}`: {e}")))
}

fn sentence(s: &str) -> Result<Sentence, Failure> {
    parse_sentence(s).map_err(|e| domain(format!("`{s}`: {e}")))
}

fn valuation(cfg: &RunConfig) -> Result<Valuation, Failure> {
    let path = cfg.valuation.as_ref().ok_or_else(|| usage("this subcommand needs --valuation FILE"))?;
    crate::load_valuation(path).map_err(|e| (e, String::new()))
}

/// Renders `text` or `json` by the configured format.
fn emit(cfg: &RunConfig, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) -> String {
    match cfg.format {
        Format::Json => to_json(&json()),
        _ => text(),
    }
}

const MODAL_OPERATORS: &str = "thm13, con, con^N, const_top, const_con_top, identity, broken";
const ARITH_OPERATORS: &str = "con, const_top, const_con_top, identity";

fn modal_operator(name: &str) -> Result<Operator<M>, Failure> {
    Ok(match name {
        "thm13" => Operator::thm13(Enumeration::atoms()),
        "con" => Operator::<M>::con_op(),
        "const_top" => Operator::<M>::const_top(),
        "const_con_top" => Operator::<M>::const_con_top(),
        "identity" => Operator::<M>::identity(),
        "broken" => Operator::broken(),
        _ => match name.strip_prefix("con^").and_then(|n| n.parse().ok()) {
            Some(n) => Operator::con_n_op(n),
            None => return Err(usage(format!("unknown modal operator `{name}`; expected one of {MODAL_OPERATORS}"))),
        },
    })
}

fn arith_operator(name: &str, t: &TheoryDescriptor) -> Result<Operator<Sentence>, Failure> {
    Ok(match name {
        "con" => Operator::<Sentence>::con_op(t),
        "const_top" => Operator::<Sentence>::const_top(),
        "const_con_top" => Operator::<Sentence>::const_con_top(t),
        "identity" => Operator::<Sentence>::identity(),
        _ => return Err(usage(format!("unknown arith operator `{name}`; expected one of {ARITH_OPERATORS}"))),
    })
}

fn modal_trace(n: usize) -> Trace<M> {
    run_stages(&Enumeration::atoms(), n, Rc::new(mock_con))
}

fn arith_trace(n: usize, t: &TheoryDescriptor) -> Trace<Sentence> {
    let t = t.clone();
    run_stages(&Enumeration::by_size(), n, Rc::new(move |s: &Sentence| build_con(&t, s)))
}

fn schematic(cfg: &RunConfig, t: &TheoryDescriptor) -> Budgeted {
    Budgeted { prover: SchematicProver::new(t.clone(), FactStore::new()), budget: cfg.budget }
}

fn shape(c: &Command) -> Shape {
    match c {
        Command::Classify { .. }
        | Command::Con { .. }
        | Command::Diagonal { .. }
        | Command::BuildA { .. }
        | Command::Certify { .. } => Shape::ARITH,
        Command::Gl { .. } => Shape::MODAL,
        Command::Truth { .. } | Command::Dichotomy { .. } | Command::Claims => Shape::TRUTH,
        Command::Tree => Shape { dot: true, ..Shape::BOTH },
        Command::Parse { .. } | Command::Itcon { .. } | Command::Construct | Command::GApply { .. } => Shape::BOTH,
    }
}

pub fn dispatch(cli: &Cli) -> Result<String, Failure> {
    let cfg = RunConfig::new(&cli.common, shape(&cli.command)).map_err(|e| (e, String::new()))?;
    let t = TheoryDescriptor::ea();
    match &cli.command {
        Command::Parse { text } => parse(&cfg, text),
        Command::Classify { formula: f } => {
            let f = formula(f)?;
            let b = classify_bounds(&f);
            let level = classify(&f);
            Ok(emit(&cfg, || format!("{level}\n"), || {
                json!({ "formula": f.to_string(), "level": level.to_string(), "sigma": b.sigma, "pi": b.pi })
            }))
        }
        Command::Con { sentence: s, summary: brief } => {
            let s = sentence(s)?;
            let c = build_con(&t, &s);
            Ok(sentence_out(&cfg, &s.to_string(), c.formula(), *brief))
        }
        Command::Itcon { sentence: s, n, omega, summary: brief } => match cfg.mode {
            Mode::Modal => {
                if *omega {
                    return Err(usage("Con^omega exists only in arith mode"));
                }
                let f = modal(s)?;
                let n = u32::try_from(n.expect("clap requires --n without --omega"))
                    .map_err(|_| usage("--n is too large"))?;
                let out = mock_iterated_con(n, &f);
                Ok(emit(&cfg, || format!("{out}\n"), || json!({ "input": f.to_string(), "n": n, "sentence": out.to_string() })))
            }
            Mode::Arith => {
                let s = sentence(s)?;
                let alpha = if *omega { OrdinalNotation::Omega } else { OrdinalNotation::Finite(n.expect("clap")) };
                let c = build_iterated_con(&t, alpha, &s);
                Ok(sentence_out(&cfg, &s.to_string(), c.formula(), *brief))
            }
        },
        Command::Diagonal { formula: f, summary: brief } => {
            let f = formula(f)?;
            let d = diagonal(&f).map_err(domain)?;
            let inst = d.instance();
            let show = |g: &Formula| sentence_text(g, *brief);
            Ok(emit(
                &cfg,
                || {
                    format!(
                        "theta: {}\ninstance: {}\nshape holds: {}\n",
                        show(d.sentence.formula()),
                        show(inst.formula()),
                        d.shape_holds()
                    )
                },
                || {
                    json!({
                        "target": f.to_string(),
                        "sentence": d.sentence.to_string(),
                        "defining_formula": d.defining_formula.to_string(),
                        "instance": inst.to_string(),
                        "shape_holds": d.shape_holds(),
                    })
                },
            ))
        }
        Command::Gl { prove } => {
            let f = modal(prove)?;
            let r = gl_prove(&f);
            Ok(emit(
                &cfg,
                || match &r {
                    GlResult::Valid => "Valid\n".into(),
                    GlResult::Invalid(m) => format!("Invalid\n{}", render::model_text(m)),
                },
                || {
                    let (verdict, model) = match &r {
                        GlResult::Valid => ("Valid", Value::Null),
                        GlResult::Invalid(m) => ("Invalid", render::model_json(m)),
                    };
                    json!({ "formula": f.to_string(), "verdict": verdict, "countermodel": model })
                },
            ))
        }
        Command::Truth { formula: f } => {
            let v = valuation(&cfg)?;
            let f = modal(f)?;
            let b = truth(&f, &v).map_err(domain)?;
            Ok(emit(&cfg, || format!("{b}\n"), || json!({ "formula": f.to_string(), "truth": b })))
        }
        Command::BuildA { operator, k, summary: brief } => {
            let g = arith_operator(operator, &t)?;
            let graph = g.graph().expect("every arith operator registers a graph");
            let a = build_sentence_a(graph, *k, &t).map_err(domain)?;
            Ok(emit(&cfg, || format!("{}\n", sentence_text(a.formula(), *brief)), || {
                json!({
                    "operator": operator,
                    "k": k,
                    "sentence": a.to_string(),
                    "level": classify(a.formula()).to_string(),
                    "size": a.formula().size(),
                })
            }))
        }
        Command::Construct => {
            let n = cfg.stages.unwrap_or(DEFAULT_STAGES);
            Ok(match cfg.mode {
                Mode::Modal => {
                    let tr = modal_trace(n);
                    emit(&cfg, || render::trace_text(&tr, "atoms"), || render::trace_json(&tr, "atoms"))
                }
                Mode::Arith => {
                    let tr = arith_trace(n, &t);
                    emit(&cfg, || render::trace_text(&tr, "by-size"), || render::trace_json(&tr, "by-size"))
                }
            })
        }
        Command::Tree => {
            let n = cfg.stages.unwrap_or(DEFAULT_STAGES);
            match cfg.mode {
                Mode::Modal => {
                    let tr = modal_trace(n);
                    let f = tree(&tr, &GlProvider::new()).map_err(domain)?;
                    Ok(forest_out(&cfg, &f))
                }
                Mode::Arith => {
                    let tr = arith_trace(n, &t);
                    let f = tree(&tr, &schematic(&cfg, &t)).map_err(domain)?;
                    Ok(forest_out(&cfg, &f))
                }
            }
        }
        Command::GApply { input, operator } => g_apply(&cfg, &t, input, operator),
        Command::Dichotomy { operator, samples, candidate, seed } => {
            let v = valuation(&cfg)?;
            let g = modal_operator(operator)?;
            let candidate = modal(candidate)?;
            let seed = match seed {
                Some(s) => *s,
                None => match std::env::var(SEED_VAR) {
                    Ok(s) => s.trim().parse().map_err(|_| usage(format!("{SEED_VAR} must be an unsigned integer")))?,
                    Err(_) => 0,
                },
            };
            let r = dichotomy(&g, &v, &GlProvider::new(), &candidate, *samples, seed).map_err(domain)?;
            let out = emit(
                &cfg,
                || {
                    let mut s = format!(
                        "case: {}\ngenerator: {}\nseed: {seed}\nsamples: {}{}\nfailures: {}\n",
                        r.case,
                        r.generator,
                        r.samples.len(),
                        if r.exhausted { " (cone exhausted)" } else { "" },
                        r.failures()
                    );
                    for x in &r.samples {
                        let _ = writeln!(s, "{} | {}", x.verdict, x.sentence);
                    }
                    s
                },
                || {
                    let samples: Vec<Value> = r
                        .samples
                        .iter()
                        .map(|x| json!({ "sentence": x.sentence.to_string(), "verdict": x.verdict.to_string(), "passed": x.passed() }))
                        .collect();
                    json!({
                        "operator": g.id(),
                        "case": r.case.to_string(),
                        "generator": r.generator.to_string(),
                        "seed": seed,
                        "samples": samples,
                        "failures": r.failures(),
                        "exhausted": r.exhausted,
                    })
                },
            );
            match r.failures() {
                0 => Ok(out),
                n => Err((CliError::Domain(format!("{n} sampled cone members failed")), out)),
            }
        }
        Command::Claims => {
            let v = valuation(&cfg)?;
            let tr = modal_trace(cfg.stages.unwrap_or(DEFAULT_STAGES));
            let r = thm13_claims(&tr, &v, &GlProvider::new()).map_err(domain)?;
            let failures = r.failures().count();
            let out = emit(
                &cfg,
                || {
                    let mut s = String::new();
                    for c in &r.checks {
                        let _ = writeln!(s, "{:<4} {:<12} {}", if c.holds { "ok" } else { "FAIL" }, c.claim, c.instance);
                    }
                    for psi in &r.skipped {
                        let _ = writeln!(s, "skip {:<12} {psi}", "not-sharp");
                    }
                    let _ = writeln!(s, "checks: {}, failures: {failures}, skipped: {}", r.checks.len(), r.skipped.len());
                    s
                },
                || {
                    let checks: Vec<Value> = r
                        .checks
                        .iter()
                        .map(|c| json!({ "claim": c.claim, "instance": c.instance, "holds": c.holds }))
                        .collect();
                    json!({ "depth": tr.depth(), "checks": checks, "skipped": strings(&r.skipped), "failures": failures })
                },
            );
            match failures {
                0 => Ok(out),
                n => Err((CliError::Domain(format!("{n} claim checks failed")), out)),
            }
        }
        Command::Certify { operator, input, k, certificate, summary: brief } => {
            certify(&cfg, &t, operator, input, *k, certificate.as_deref(), *brief)
        }
    }
}

fn parse(cfg: &RunConfig, text: &str) -> Result<String, Failure> {
    match cfg.mode {
        Mode::Modal => {
            let f = modal(text)?;
            Ok(emit(cfg, || format!("{f}\n"), || {
                let atoms: Vec<String> = f.atoms().iter().map(|a| format!("p{a}")).collect();
                json!({ "formula": f.to_string(), "size": f.size(), "modal_depth": f.modal_depth(), "atoms": atoms })
            }))
        }
        Mode::Arith => {
            let f = formula(text)?;
            Ok(emit(cfg, || format!("{f}\n"), || {
                let free: Vec<String> = f.free_variables().iter().map(ToString::to_string).collect();
                json!({
                    "formula": f.to_string(),
                    "size": f.size(),
                    "free_variables": free,
                    "code": encode(&f).to_string(),
                })
            }))
        }
    }
}

fn sentence_out(cfg: &RunConfig, input: &str, f: &Formula, brief: bool) -> String {
    emit(cfg, || format!("{}\n", sentence_text(f, brief)), || {
        json!({ "input": input, "sentence": f.to_string(), "level": classify(f).to_string(), "size": f.size() })
    })
}

fn forest_out<S: std::fmt::Display>(cfg: &RunConfig, f: &conlab_core::construction::Forest<S>) -> String {
    match cfg.format {
        Format::Text => render::forest_text(f),
        Format::Json => to_json(&render::forest_json(f)),
        Format::Dot => render::forest_dot(f),
    }
}

fn g_apply(cfg: &RunConfig, t: &TheoryDescriptor, input: &str, operator: &str) -> Result<String, Failure> {
    match cfg.mode {
        Mode::Modal => {
            let f = modal(input)?;
            let out = match (operator, cfg.stages) {
                ("thm13", Some(n)) => thm13_g(&f, &modal_trace(n), &GlProvider::new()).map_err(domain)?,
                _ => modal_operator(operator)?.apply(&f),
            };
            Ok(emit(cfg, || format!("{out}\n"), || {
                json!({ "operator": operator, "input": f.to_string(), "output": out.to_string() })
            }))
        }
        Mode::Arith => {
            let s = sentence(input)?;
            let out = if operator == "thm13" {
                let tr = arith_trace(cfg.stages.unwrap_or(DEFAULT_STAGES), t);
                thm13_g(&s, &tr, &schematic(cfg, t)).map_err(domain)?
            } else {
                arith_operator(operator, t)?.apply(&s)
            };
            Ok(emit(cfg, || format!("{out}\n"), || {
                json!({ "operator": operator, "input": s.to_string(), "output": out.to_string() })
            }))
        }
    }
}

/// Numerals longer than this are shown by their length in summaries.
const SHORT_TERM: usize = 40;

fn short_term(t: &Term) -> String {
    let s = t.to_string();
    if s.len() <= SHORT_TERM {
        s
    } else {
        format!("<term of {} characters>", s.len())
    }
}

fn justification_summary(j: &Justification) -> String {
    match j {
        Justification::Instantiation { from, terms } => {
            let mut s = format!("Instantiation({from}");
            for t in terms {
                let _ = write!(s, ";{}", short_term(t));
            }
            s + ")"
        }
        other => other.to_string(),
    }
}

fn certify(
    cfg: &RunConfig,
    t: &TheoryDescriptor,
    operator: &str,
    input: &str,
    k: u32,
    file: Option<&std::path::Path>,
    brief: bool,
) -> Result<String, Failure> {
    let g = arith_operator(operator, t)?;
    let phi = sentence(input)?;
    let mut store = FactStore::new();
    let facts = register_case1(&phi, &g, k, t, &mut store).map_err(domain)?;
    let c = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| domain(format!("{}: {e}", path.display())))?;
            // comment lines carry the facts and the verdict of an earlier run
            let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
            body.parse::<Certificate>().map_err(|e| domain(format!("{}: {e}", path.display())))?
        }
        None => thm4_certificate(&phi, &g, k, t, &store).map_err(domain)?,
    };
    let verdict = check_certificate(&c, &store, t);
    let roles = [("cone", facts.cone), ("graph", facts.graph), ("reflection", facts.reflection)];
    let out = emit(
        cfg,
        || {
            let mut s = String::new();
            let listed: Vec<String> = roles.iter().map(|(r, id)| format!("{id} {r}")).collect();
            let _ = writeln!(s, "# facts: {}", listed.join(", "));
            if brief {
                for (i, step) in c.steps.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        "{} | {} | {}",
                        i + 1,
                        summary(step.claim.formula()),
                        justification_summary(&step.justification)
                    );
                }
            } else {
                s.push_str(&c.to_string());
            }
            match &verdict {
                Ok(()) => s.push_str("# accepted\n"),
                Err(e) => {
                    let _ = writeln!(s, "# rejected at step {}: {}", e.step, e.reason);
                }
            }
            s
        },
        || {
            let facts: Vec<Value> = roles.iter().map(|(r, id)| json!({ "id": id.to_string(), "role": r })).collect();
            let steps: Vec<Value> = c
                .steps
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    json!({ "step": i + 1, "claim": s.claim.to_string(), "justification": s.justification.to_string() })
                })
                .collect();
            let failure = match &verdict {
                Ok(()) => Value::Null,
                Err(e) => json!({ "step": e.step, "reason": e.reason }),
            };
            json!({
                "operator": operator,
                "input": phi.to_string(),
                "k": k,
                "facts": facts,
                "steps": steps,
                "accepted": verdict.is_ok(),
                "failure": failure,
            })
        },
    );
    match verdict {
        Ok(()) => Ok(out),
        Err(e) => Err((CliError::Domain(format!("certificate rejected at step {}", e.step)), out)),
    }
}
