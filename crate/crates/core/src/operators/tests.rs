use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::arith::build_sentence_a;
use crate::construction::{activated, run_stages, true_branch, Enumeration, Trace};
use crate::entailment::{check_certificate, FactStore, GlProvider, Justification, Oracle, Verdict};
use crate::formula::{classify, parse_sentence};
use crate::modal::{modal_formulas_by_size, parse_modal, ModalFormula as M, Valuation};

type MOp = Operator<M>;
type AOp = Operator<Sentence>;

fn p(s: &str) -> M {
    parse_modal(s).unwrap()
}

fn trace(n: usize) -> Trace<M> {
    run_stages(&Enumeration::atoms(), n, Rc::new(mock_con))
}

fn small(max: usize) -> Vec<M> {
    let leaves = [M::Bottom, M::Top, M::atom(0), M::atom(1)];
    modal_formulas_by_size(&leaves, max).into_iter().flatten().collect()
}

/// A provider that never settles anything.
struct Silent;

impl Oracle<M> for Silent {
    fn entails(&self, _: &[M], _: &M) -> Result<Verdict, EntailmentError> {
        Ok(Verdict::Unknown)
    }
}

#[test]
fn apply_examples() {
    let gl = GlProvider::new();
    assert_eq!(MOp::const_top().apply(&p("(p0 & ~p1)")), M::Top);
    assert_eq!(MOp::con_op().apply(&p("p0")), p("<>p0"));
    let c2 = MOp::con_n_op(2).apply(&M::Top);
    assert!(class_equal(&c2, &p("<><>top"), &gl).unwrap());
    assert!(!class_equal(&c2, &p("<>top"), &gl).unwrap());
}

#[test]
fn g_examples() {
    let gl = GlProvider::new();
    let tr = trace(3);
    assert_eq!(thm13_g(&p("(p0 & ~p0)"), &tr, &gl).unwrap(), M::Bottom);

    let g = thm13_g(&p("p0"), &tr, &gl).unwrap();
    assert!(gl.entails(&[g.clone()], &p("<>p0")).unwrap() == Verdict::Provable);
    assert!(class_equal(&p("p0").conj(&g), &p("(p0 & <>p0)"), &gl).unwrap());

    let taut = p("(p0 | ~p0)");
    for e in &tr.stages[0].numerated {
        assert_ne!(gl.entails(&[taut.clone()], e).unwrap(), Verdict::Provable);
    }
    assert_eq!(thm13_g(&taut, &tr, &gl).unwrap(), M::Top);
}

#[test]
fn g_errors() {
    let gl = GlProvider::new();
    let tr = trace(2);
    assert_eq!(thm13_g(&p("p5"), &tr, &gl), Err(Thm13Error::TraceTooShallow { needed: 5, depth: 2 }));
    assert!(matches!(thm13_g(&p("p0"), &tr, &Silent), Err(Thm13Error::OracleRequired(QueryError::Undecided(_)))));
}

#[test]
fn fast_path_agrees() {
    let gl = GlProvider::new();
    let tr = trace(3);
    for e in &tr.entries {
        let fast = thm13_g_with(&e.sentence, &tr, &gl, true).unwrap();
        let slow = thm13_g_with(&e.sentence, &tr, &gl, false).unwrap();
        assert_eq!(fast, slow, "{}", e.sentence);
    }
}

#[test]
fn member_identity() {
    let gl = GlProvider::new();
    let tr = trace(3);
    for e in &tr.entries {
        let phi = &e.sentence;
        let g = thm13_g(phi, &tr, &gl).unwrap();
        assert!(class_equal(&phi.conj(&g), &phi.conj(&mock_con(phi)), &gl).unwrap(), "{phi}");
    }
}

#[test]
fn monotone_con() {
    let gl = GlProvider::new();
    let pool = small(2);
    let pairs: Vec<(M, M)> = pool.iter().flat_map(|a| pool.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let r = monotone_check(&MOp::con_op(), &pairs, &gl).unwrap();
    assert!(r.checked >= 20);
    assert!(r.violations.is_empty());
    assert!(r.inconclusive.is_empty());
}

#[test]
fn monotone_thm13() {
    let gl = GlProvider::new();
    let tr = trace(3);
    let mut pool: Vec<M> = tr.entries.iter().filter(|e| e.stage <= 2).map(|e| e.sentence.clone()).collect();
    pool.extend([M::Top, M::Bottom, p("(p0 | p1)"), p("(p0 & p1)"), p("(~p0 & <>~p0)")]);
    let pairs: Vec<(M, M)> = pool.iter().flat_map(|a| pool.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let r = monotone_check(&Operator::thm13(Enumeration::atoms()), &pairs, &gl).unwrap();
    assert!(r.checked > pool.len());
    assert!(r.violations.is_empty(), "{:?}", r.violations);
}

#[test]
fn monotone_broken() {
    let gl = GlProvider::new();
    let r = monotone_check(&MOp::broken(), &[(M::Bottom, M::Top)], &gl).unwrap();
    assert_eq!(r.violations, vec![(M::Bottom, M::Top)]);
}

#[test]
fn silent_provider_is_inconclusive() {
    let r = monotone_check(&MOp::broken(), &[(M::Bottom, M::Top)], &Silent).unwrap();
    assert!(r.violations.is_empty());
    assert_eq!(r.inconclusive.len(), 1);
    assert!(class_equal(&M::Top, &M::Top, &Silent).is_err());
}

#[test]
fn class_and_strict_examples() {
    let gl = GlProvider::new();
    assert!(class_equal(&p("(p0 & top)"), &p("p0"), &gl).unwrap());
    assert!(!class_equal(&p("<>top"), &M::Top, &gl).unwrap());
    assert!(strict_implies(&p("(p0 & <>p0)"), &p("p0"), &gl).unwrap());
    assert!(strict_implies(&M::Bottom, &p("(bot & bot)"), &gl).unwrap());
    assert!(!strict_implies(&M::Top, &M::Top, &gl).unwrap());
}

#[test]
fn strict_order_laws() {
    let gl = GlProvider::new();
    let consistent: Vec<M> = small(3)
        .into_iter()
        .step_by(7)
        .filter(|f| gl.entails(&[f.clone()], &M::Bottom).unwrap() != Verdict::Provable)
        .take(14)
        .collect();
    for a in &consistent {
        assert!(!strict_implies(a, a, &gl).unwrap(), "{a}");
    }
    for a in &consistent {
        for b in &consistent {
            if !strict_implies(a, b, &gl).unwrap() {
                continue;
            }
            for c in &consistent {
                if strict_implies(b, c, &gl).unwrap() {
                    assert!(strict_implies(a, c, &gl).unwrap(), "{a} < {b} < {c}");
                }
            }
        }
    }
}

#[test]
fn dichotomy_examples() {
    let gl = GlProvider::new();
    let v = Valuation::all(true);
    let run = |g: Operator<M>| dichotomy(&g, &v, &gl, &M::Top, 25, 7).unwrap();

    let r = run(MOp::const_top());
    assert_eq!((r.case, r.generator.clone()), (Case::EventuallyTrivial, M::Top));
    assert_eq!((r.samples.len(), r.failures(), r.exhausted), (25, 0, false));

    let r = run(MOp::const_con_top());
    assert_eq!((r.case, r.generator.clone()), (Case::EventuallyTrivial, p("<>top")));
    assert_eq!((r.samples.len(), r.failures()), (25, 0));
    for s in &r.samples {
        assert_eq!(gl.entails(&[s.sentence.clone()], &p("<>top")).unwrap(), Verdict::Provable);
    }

    let r = run(MOp::con_op());
    assert_eq!((r.case, r.generator.clone()), (Case::EventuallyConLike, M::Top));
    assert_eq!((r.samples.len(), r.failures()), (25, 0));

    // same seed, same samples
    assert_eq!(run(MOp::con_op()), r);
    assert_eq!(
        dichotomy(&MOp::con_op(), &v, &gl, &M::Bottom, 3, 7),
        Err(DichotomyError::FalseCandidate(M::Bottom))
    );
}

#[test]
fn dichotomy_flags_failures() {
    let gl = GlProvider::new();
    let v = Valuation::all(true);
    // identity(bot) is false, and phi & phi does not prove Con(phi)
    let r = dichotomy(&MOp::identity(), &v, &gl, &M::Top, 10, 1).unwrap();
    assert_eq!(r.case, Case::EventuallyConLike);
    assert_eq!(r.failures(), 10);
}

fn all_true_below(n: u32) -> Valuation {
    (0..n).fold(Valuation::new(), |v, a| v.with(a, true))
}

#[test]
fn claims_all_true() {
    let gl = GlProvider::new();
    let tr = trace(3);
    let r = thm13_claims(&tr, &all_true_below(8), &gl).unwrap();
    assert!(r.skipped.is_empty());
    assert_eq!(r.count("member"), 4);
    for c in ["conservative", "rewrite", "identity"] {
        assert_eq!(r.count(c), 4);
    }
    assert_eq!(r.failures().count(), 0, "{:?}", r.failures().collect::<Vec<_>>());
    assert!(r.checks.iter().any(|c| c.claim == "identity" && c.instance == "(p0 & <>p0)"));
}

#[test]
fn claims_skip_unsharp() {
    let gl = GlProvider::new();
    let e = Enumeration::doctored(vec![p("p0"), M::Top]);
    let tr = run_stages(&e, 3, Rc::new(mock_con));
    let r = thm13_claims(&tr, &all_true_below(8), &gl).unwrap();
    assert_eq!(r.skipped, vec![p("p0")]);
    assert_eq!(r.failures().count(), 0);
    assert_eq!(r.count("member"), 4);
    assert_eq!(r.count("identity"), 3);
}

#[test]
fn identity_on_sharp_branch() {
    let gl = GlProvider::new();
    let tr = trace(3);
    for bits in 0..4u32 {
        let v = all_true_below(8).with(0, bits & 1 == 1).with(1, bits & 2 == 2);
        for i in true_branch(&tr, &v).unwrap() {
            let psi = &tr.entries[i].sentence;
            if tr.check_sharp(psi, &v, &gl).unwrap() {
                let phi = activated(&tr, psi);
                let g = thm13_g(&phi, &tr, &gl).unwrap();
                assert!(class_equal(&phi.conj(&g), &phi, &gl).unwrap(), "{psi}");
            }
        }
    }
}

fn ea() -> TheoryDescriptor {
    TheoryDescriptor::ea()
}

#[test]
fn arithmetic_levels() {
    let t = ea();
    let inputs = ["0 = 0", "forall x0 x0 = x0", "exists x0 ~(x0 = 0)"].map(|s| parse_sentence(s).unwrap());
    for g in [AOp::const_top(), AOp::con_op(&t), AOp::const_con_top(&t)] {
        let level = g.level().unwrap();
        for phi in &inputs {
            assert!(classify(g.apply(phi).formula()).within(level), "{}", g.id());
        }
    }
}

fn certify(phi: &Sentence, g: &Operator<Sentence>, k: u32) -> (Certificate, FactStore) {
    let t = ea();
    let mut store = FactStore::new();
    register_case1(phi, g, k, &t, &mut store).unwrap();
    let c = thm4_certificate(phi, g, k, &t, &store).unwrap();
    (c, store)
}

use crate::entailment::Certificate;

#[test]
fn certificate_for_con() {
    let t = ea();
    let g = AOp::con_op(&t);
    let a = build_sentence_a(g.graph().unwrap(), 1, &t).unwrap();
    let (c, store) = certify(&a, &g, 1);
    assert_eq!(c.steps.len(), 6);
    assert_eq!(check_certificate(&c, &store, &t), Ok(()));

    let mutations = certificate_mutations(&c, &store);
    assert!(mutations.len() > 30);
    for m in &mutations {
        // printing a mutation prints quote(A), which is slow
        let err = check_certificate(&m.apply(&c), &store, &t).err().map(|e| e.step);
        assert!(err.is_some_and(|s| s >= m.step), "mutation of step {}: {:?}", m.step, core::mem::discriminant(&m.edit));
        if err != Some(m.step) {
            // a mutated step stays licensed only when a propositional step
            // re-derives an earlier claim; the next step then breaks
            let Edit::ClaimOf(j) = m.edit else { panic!("late rejection of step {}", m.step) };
            assert!(j < m.step, "step {} takes the claim of step {j}", m.step);
            assert!(matches!(c.steps[m.step - 1].justification, Justification::Logic(_)));
        }
    }
}

#[test]
fn certificate_for_other_operators() {
    let t = ea();
    let con_top = crate::arith::build_con(&t, &Sentence::top());
    let (c, store) = certify(&con_top, &AOp::identity(), 1);
    assert_eq!(check_certificate(&c, &store, &t), Ok(()));

    let g = AOp::const_top();
    let a = build_sentence_a(g.graph().unwrap(), 1, &t).unwrap();
    let (c, store) = certify(&a, &g, 1);
    assert_eq!(check_certificate(&c, &store, &t), Ok(()));
}

#[test]
fn certificate_needs_facts() {
    let t = ea();
    let phi = Sentence::top();
    let g = AOp::con_op(&t);
    assert_eq!(thm4_certificate(&phi, &g, 1, &t, &FactStore::new()), Err(Case1Error::MissingFact("cone")));
    let bare = Operator::new("bare", Sentence::clone);
    assert_eq!(thm4_certificate(&phi, &bare, 1, &t, &FactStore::new()), Err(Case1Error::NoGraph("bare".into())));
    // A is Pi_2, so the identity's output is out of reach of True_Pi_1
    let a = build_sentence_a(g.graph().unwrap(), 1, &t).unwrap();
    let mut store = FactStore::new();
    assert!(matches!(register_case1(&a, &AOp::identity(), 1, &t, &mut store), Err(Case1Error::Level { .. })));
}


