//! Text, JSON and DOT renderings of core values.

use std::fmt::{Display, Write};

use conlab_core::construction::{Forest, Language, Trace};
use conlab_core::formula::{classify, Formula};
use conlab_core::modal::KripkeModel;
use serde_json::{json, Value};

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values built with json! serialize");
    s.push('\n');
    s
}

pub fn strings<T: Display>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// Level and size, for sentences too long to print.
pub fn summary(f: &Formula) -> String {
    format!("{} sentence of size {}", classify(f), f.size())
}

pub fn sentence_text(f: &Formula, summarize: bool) -> String {
    if summarize {
        summary(f)
    } else {
        f.to_string()
    }
}

pub fn model_json(m: &KripkeModel) -> Value {
    let worlds: Vec<Value> = (0..m.worlds())
        .map(|w| {
            let atoms: Vec<String> = m.true_atoms[w].iter().map(|a| format!("p{a}")).collect();
            json!({ "world": w, "sees": m.succ[w], "true_atoms": atoms })
        })
        .collect();
    json!({ "root": 0, "worlds": worlds })
}

pub fn model_text(m: &KripkeModel) -> String {
    let mut out = String::new();
    for w in 0..m.worlds() {
        let sees: Vec<String> = m.succ[w].iter().map(ToString::to_string).collect();
        let atoms: Vec<String> = m.true_atoms[w].iter().map(|a| format!("p{a}")).collect();
        let _ = writeln!(out, "world {w}: sees [{}], true [{}]", sees.join(", "), atoms.join(", "));
    }
    out
}

pub fn trace_json<S: Display + Language>(tr: &Trace<S>, enumeration: &str) -> Value {
    let stages: Vec<Value> = tr
        .stages
        .iter()
        .map(|st| {
            json!({
                "stage": st.stage,
                "numerated": strings(&st.numerated),
                "active": strings(&st.active),
                "deactivated": strings(&st.deactivated),
            })
        })
        .collect();
    let entries: Vec<Value> = tr
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| json!({ "index": i, "sentence": e.sentence.to_string(), "stage": e.stage, "parent": e.parent }))
        .collect();
    json!({ "enumeration": enumeration, "depth": tr.depth(), "stages": stages, "entries": entries, "total": tr.entries.len() })
}

pub fn trace_text<S: Display + Language>(tr: &Trace<S>, enumeration: &str) -> String {
    let mut out = format!("enumeration {enumeration}, stages 0..={}\n", tr.depth());
    for st in &tr.stages {
        let _ = writeln!(out, "stage {}", st.stage);
        for (label, xs) in [("numerated", &st.numerated), ("active", &st.active), ("deactivated", &st.deactivated)] {
            let line = format!("  {label}: {}", strings(xs).join(" | "));
            let _ = writeln!(out, "{}", line.trim_end());
        }
    }
    let _ = writeln!(out, "total numerated: {}", tr.entries.len());
    out
}

pub fn forest_json<S: Display>(f: &Forest<S>) -> Value {
    let nodes: Vec<Value> = f
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            json!({
                "node": i,
                "sentence": n.sentence.to_string(),
                "entry": n.entry,
                "stage": n.stage,
                "parent": n.parent,
                "children": n.children,
            })
        })
        .collect();
    json!({ "roots": f.roots().collect::<Vec<_>>(), "nodes": nodes })
}

pub fn forest_text<S: Display>(f: &Forest<S>) -> String {
    fn walk<S: Display>(f: &Forest<S>, i: usize, depth: usize, out: &mut String) {
        let _ = writeln!(out, "{}{}", "  ".repeat(depth), f.nodes[i].sentence);
        for &c in &f.nodes[i].children {
            walk(f, c, depth + 1, out);
        }
    }
    let mut out = String::new();
    for r in f.roots() {
        walk(f, r, 0, &mut out);
    }
    out
}

pub fn forest_dot<S: Display>(f: &Forest<S>) -> String {
    let mut out = String::from("digraph tree {\n");
    for (i, n) in f.nodes.iter().enumerate() {
        let label = n.sentence.to_string().replace('\\', "\\\\").replace('"', "\\\"");
        let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
    }
    for (i, n) in f.nodes.iter().enumerate() {
        for c in &n.children {
            let _ = writeln!(out, "  n{i} -> n{c};");
        }
    }
    out.push_str("}\n");
    out
}
