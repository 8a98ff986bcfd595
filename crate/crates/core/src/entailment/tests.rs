use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::arith::{build_con, TheoryDescriptor};
use crate::formula::{parse_sentence, Formula, Term};
use crate::modal::{modal_formulas_by_size, parse_modal, Valuation};

fn m(s: &str) -> ModalFormula {
    parse_modal(s).unwrap()
}

fn s(x: &str) -> Sentence {
    parse_sentence(x).unwrap()
}

fn gl_verdict(p: &GlProvider, ctx: &[&str], goal: &str) -> Verdict {
    let ctx: Vec<ModalFormula> = ctx.iter().map(|c| m(c)).collect();
    p.entails(&ctx, &m(goal)).unwrap()
}

#[test]
fn gl_examples() {
    let p = GlProvider::new();
    // GL does not prove the consistency of a tautology
    assert_eq!(gl_verdict(&p, &[], "<>(p0 -> p0)"), Verdict::Independent);
    assert_eq!(gl_verdict(&p, &["bot"], "p3"), Verdict::Provable);
    assert_eq!(gl_verdict(&p, &["[]bot"], "<>top"), Verdict::Refutable);
    let v = GlProvider::with_valuation(Valuation::new().with(0, true));
    assert_eq!(gl_verdict(&v, &["p0"], "<>p0"), Verdict::Independent);
    assert_eq!(gl_verdict(&v, &[], "p0"), Verdict::Provable);
    assert!(v.entails(&[], &m("p1")).is_err());
}

#[test]
fn dispatch_checks_kinds() {
    let gl = Provider::Gl(GlProvider::new());
    let b = Budget::default();
    let modal = Statement::Modal(m("p0"));
    let arith = Statement::Arith(s("0=0"));
    assert_eq!(entails(&[], &modal, &gl, b), Ok(Verdict::Independent));
    assert_eq!(entails(&[arith.clone()], &modal, &gl, b), Err(EntailmentError::KindMismatch));
    assert_eq!(entails(&[], &arith, &gl, b), Err(EntailmentError::WrongProvider(ProviderId::Gl)));
    assert_eq!(entails(&[modal.clone()], &modal, &gl, b), Ok(Verdict::Provable));
    assert!(Budget::new(0).is_none());
}

fn small_corpus() -> Vec<ModalFormula> {
    let leaves = [ModalFormula::Bottom, ModalFormula::atom(0), ModalFormula::atom(1)];
    modal_formulas_by_size(&leaves, 4).into_iter().flatten().collect()
}

#[test]
fn deduction_theorem_discipline() {
    let p = GlProvider::new();
    let corpus = small_corpus();
    let picks: Vec<&ModalFormula> = corpus.iter().step_by(7).collect();
    for a in &picks {
        for b in &picks {
            let left = p.entails(&[(*a).clone()], b).unwrap() == Verdict::Provable;
            let right = p.entails(&[], &ModalFormula::implies((*a).clone(), (*b).clone())).unwrap() == Verdict::Provable;
            assert_eq!(left, right, "{a} / {b}");
        }
    }
}

#[test]
fn monotone_context() {
    let p = GlProvider::new();
    let corpus = small_corpus();
    let picks: Vec<&ModalFormula> = corpus.iter().step_by(11).collect();
    for a in &picks {
        for g in &picks {
            if p.entails(&[], g).unwrap() == Verdict::Provable {
                assert_eq!(p.entails(&[(*a).clone()], g).unwrap(), Verdict::Provable);
            }
            if p.entails(&[(*a).clone()], g).unwrap() == Verdict::Provable {
                for b in picks.iter().take(5) {
                    assert_eq!(p.entails(&[(*a).clone(), (*b).clone()], g).unwrap(), Verdict::Provable);
                }
            }
        }
    }
}

fn prover() -> SchematicProver {
    SchematicProver::new(TheoryDescriptor::ea(), FactStore::new())
}

#[test]
fn schematic_evaluates_bounded_sentences() {
    let p = prover();
    let b = Budget::default();
    assert_eq!(p.entails(&[], &s("(S(0)+S(0))=S(S(0))"), b), Verdict::Provable);
    assert_eq!(p.entails(&[], &s("S(0)<0"), b), Verdict::Refutable);
    assert_eq!(p.entails(&[], &s("forall x0 exists x1 x0<x1"), b), Verdict::Unknown);
}

#[test]
fn schematic_instantiates() {
    let p = prover();
    let ctx = [s("forall x0 (x0=#3 -> forall x1 x1=x1)")];
    assert_eq!(p.entails(&ctx, &s("forall x1 x1=x1"), Budget::default()), Verdict::Provable);
    assert_eq!(p.entails(&ctx, &s("forall x1 x1=x1"), Budget::new(1).unwrap()), Verdict::Unknown);
}

#[test]
fn schematic_uses_facts_and_monotonicity() {
    let t = TheoryDescriptor::ea();
    let a = s("forall x0 x0=x0");
    let b = s("(forall x0 x0=x0 | exists x1 x1<0)");
    let mut facts = FactStore::new();
    facts.add(SchematicFact { sentence: build_con(&t, &a), provenance: Provenance::Other("assumed".into()) });
    let p = SchematicProver::new(t.clone(), facts);
    assert_eq!(p.entails(&[], &build_con(&t, &b), Budget::default()), Verdict::Provable);
    assert_eq!(prover().entails(&[], &build_con(&t, &b), Budget::default()), Verdict::Unknown);
}

/// Arithmetic sentences built from base sentences, `Con` and connectives,
/// paired with their modal translations.
fn translated_pairs(t: &TheoryDescriptor) -> Vec<(Sentence, ModalFormula)> {
    let bases = [s("forall x0 x0=x0"), s("exists x0 S(x0)=x0")];
    let mut out: Vec<(Sentence, ModalFormula)> = Vec::new();
    for (i, b) in bases.iter().enumerate() {
        let atom = ModalFormula::atom(i as u32);
        out.push((b.clone(), atom.clone()));
        out.push((build_con(t, b), ModalFormula::diamond(atom.clone())));
        out.push((
            Sentence::new(Formula::not(b.formula().clone())).unwrap(),
            ModalFormula::not(atom),
        ));
    }
    out
}

#[test]
fn schematic_never_proves_what_gl_refutes() {
    let t = TheoryDescriptor::ea();
    let p = SchematicProver::new(t.clone(), FactStore::new());
    let gl = GlProvider::new();
    let pairs = translated_pairs(&t);
    for (ca, cm) in &pairs {
        for (ga, gm) in &pairs {
            let v = p.entails(core::slice::from_ref(ca), ga, Budget::new(200).unwrap());
            let w = gl.entails(core::slice::from_ref(cm), gm).unwrap();
            if v == Verdict::Provable {
                assert_eq!(w, Verdict::Provable, "{cm} => {gm}");
            }
            if v == Verdict::Refutable {
                assert_eq!(w, Verdict::Refutable, "{cm} => ~{gm}");
            }
        }
    }
}

fn certificate_fixture() -> (Certificate, FactStore, TheoryDescriptor) {
    let t = TheoryDescriptor::ea();
    let mut facts = FactStore::new();
    let all = s("forall x0 forall x1 (x0=x1 -> forall x2 x2=x2)");
    let f0 = facts.add(SchematicFact { sentence: all.clone(), provenance: Provenance::ConeMembership });
    let f1 = facts.add(SchematicFact { sentence: s("#2=#2"), provenance: Provenance::Other("evaluated".into()) });
    let steps = vec![
        Step { claim: all, justification: Justification::Fact(f0) },
        Step {
            claim: s("(#2=#2 -> forall x2 x2=x2)"),
            justification: Justification::Instantiation { from: 1, terms: vec![Term::lit(2u32), Term::lit(2u32)] },
        },
        Step { claim: s("forall x2 x2=x2"), justification: Justification::Logic(vec![Premise::Step(2), Premise::Fact(f1)]) },
        Step { claim: s("forall x2 x2=x2"), justification: Justification::PriorStep(3) },
    ];
    (Certificate { steps }, facts, t)
}

#[test]
fn certificate_accepts_and_roundtrips() {
    let (c, facts, t) = certificate_fixture();
    assert_eq!(check_certificate(&c, &facts, &t), Ok(()));
    let text = c.to_string();
    assert_eq!(text.lines().next().unwrap(), "1 | forall x0 forall x1 (x0=x1 -> forall x2 x2=x2) | Fact(f0)");
    assert_eq!(text.parse::<Certificate>().unwrap(), c);
}

#[test]
fn certificate_rejections() {
    let (c, facts, t) = certificate_fixture();
    let mut swapped = c.clone();
    swapped.steps.swap(1, 2);
    assert_eq!(check_certificate(&swapped, &facts, &t).unwrap_err().step, 2);
    let mut unregistered = c.clone();
    unregistered.steps[0].justification = Justification::Fact(FactId(9));
    assert_eq!(check_certificate(&unregistered, &facts, &t).unwrap_err().step, 1);
    let mut wrong_term = c.clone();
    wrong_term.steps[1].justification = Justification::Instantiation { from: 1, terms: vec![Term::lit(3u32), Term::lit(2u32)] };
    assert_eq!(check_certificate(&wrong_term, &facts, &t).unwrap_err().step, 2);
}

#[test]
fn monotonicity_needs_a_base_theory_step() {
    let t = TheoryDescriptor::ea();
    let a = s("forall x0 x0=x0");
    let b = s("(forall x0 x0=x0 | 0=S(0))");
    let imp = Sentence::new(Formula::implies(a.formula().clone(), b.formula().clone())).unwrap();
    let con = Sentence::new(Formula::implies(build_con(&t, &a).into_formula(), build_con(&t, &b).into_formula())).unwrap();
    let steps = vec![
        Step { claim: imp.clone(), justification: Justification::Logic(vec![]) },
        Step { claim: con.clone(), justification: Justification::Monotonicity(1) },
    ];
    let c = Certificate { steps };
    assert_eq!(check_certificate(&c, &FactStore::new(), &t), Ok(()));
    let mut facts = FactStore::new();
    let id = facts.add(SchematicFact { sentence: imp.clone(), provenance: Provenance::ConeMembership });
    let steps = vec![
        Step { claim: imp, justification: Justification::Fact(id) },
        Step { claim: con, justification: Justification::Monotonicity(1) },
    ];
    assert_eq!(check_certificate(&Certificate { steps }, &facts, &t).unwrap_err().step, 2);
}
