use std::collections::BTreeMap;

use proptest::prelude::*;

use conlab_core::arith::{build_con, build_iterated_con, diagonal, match_con, OrdinalNotation, TheoryDescriptor};
use conlab_core::coding::{decode, encode, quote};
use conlab_core::formula::{
    classify, evaluate_bounded, formulas_up_to, parse_formula, sentences_by_size, substitute, EnumConfig, Formula,
    HierarchyLevel, Sentence, Term, Var,
};
use conlab_core::modal::{gl_prove, modal_formulas_by_size, truth, GlResult, ModalFormula as M, Valuation};

mod common;

use common::reference_classify;

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just(Term::Zero), (0..3u32).prop_map(Term::var), (0..6u32).prop_map(Term::lit)];
    leaf.prop_recursive(3, 12, 2, |t| {
        prop_oneof![
            t.clone().prop_map(Term::succ),
            (t.clone(), t.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (t.clone(), t.clone()).prop_map(|(a, b)| Term::mul(a, b)),
            (t.clone(), t).prop_map(|(a, b)| Term::exp(a, b)),
        ]
    })
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        (term(), term()).prop_map(|(a, b)| Formula::eq(a, b)),
        (term(), term()).prop_map(|(a, b)| Formula::lt(a, b)),
        Just(Formula::Bottom),
        Just(Formula::Top),
    ];
    leaf.prop_recursive(4, 24, 2, |f| {
        // a bound mentioning its own variable is replaced by 0
        let bound = |v: Var, t: Term| if t.contains_var(v) { Term::Zero } else { t };
        prop_oneof![
            f.clone().prop_map(Formula::not),
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (0..3u32, f.clone()).prop_map(|(v, a)| Formula::forall(Var(v), a)),
            (0..3u32, f.clone()).prop_map(|(v, a)| Formula::exists(Var(v), a)),
            (0..3u32, term(), f.clone()).prop_map(move |(v, t, a)| Formula::bounded_forall(Var(v), bound(Var(v), t), a)),
            (0..3u32, term(), f).prop_map(move |(v, t, a)| Formula::bounded_exists(Var(v), bound(Var(v), t), a)),
        ]
    })
}

fn closed_term() -> impl Strategy<Value = Term> {
    term().prop_filter("closed", Term::is_closed)
}

fn modal() -> impl Strategy<Value = M> {
    let leaf = prop_oneof![Just(M::Bottom), Just(M::Top), (0..2u32).prop_map(M::atom)];
    leaf.prop_recursive(4, 16, 2, |f| {
        prop_oneof![
            f.clone().prop_map(M::not),
            (f.clone(), f.clone()).prop_map(|(a, b)| M::and(a, b)),
            (f.clone(), f.clone()).prop_map(|(a, b)| M::or(a, b)),
            (f.clone(), f.clone()).prop_map(|(a, b)| M::implies(a, b)),
            f.clone().prop_map(M::boxed),
            f.prop_map(M::diamond),
        ]
    })
}

fn dual(l: HierarchyLevel) -> HierarchyLevel {
    match l {
        HierarchyLevel::Delta0 => HierarchyLevel::Delta0,
        HierarchyLevel::Sigma(k) => HierarchyLevel::Pi(k),
        HierarchyLevel::Pi(k) => HierarchyLevel::Sigma(k),
    }
}

proptest! {
    #[test]
    fn print_parse_round_trip(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()), Ok(f));
    }

    #[test]
    fn code_round_trip(f in formula()) {
        prop_assert_eq!(decode(encode(&f).value()), Ok(f));
    }

    #[test]
    fn codes_are_injective_and_grow(f in formula(), g in formula()) {
        prop_assert!(*encode(&f).value() >= f.size().into());
        prop_assert_eq!(f == g, encode(&f) == encode(&g));
    }

    #[test]
    fn substitution_drops_the_variable(f in formula(), v in 0..3u32, t in closed_term()) {
        let mut expected = f.free_variables();
        expected.remove(&Var(v));
        prop_assert_eq!(substitute(&f, Var(v), &t).free_variables(), expected);
    }

    #[test]
    fn substitution_of_absent_variable_is_identity(f in formula(), t in closed_term()) {
        prop_assert_eq!(substitute(&f, Var(7), &t), f);
    }

    #[test]
    fn classify_matches_reference(f in formula()) {
        prop_assert_eq!(classify(&f), reference_classify(&f));
    }

    #[test]
    fn negation_swaps_sigma_and_pi(f in formula()) {
        let (a, b) = (classify(&f), classify(&Formula::not(f.clone())));
        // ties are broken by the leading quantifier, which negation flips too
        prop_assert_eq!(b, dual(a));
    }

    #[test]
    fn countermodels_refute(f in modal()) {
        if let GlResult::Invalid(m) = gl_prove(&f) {
            prop_assert!(m.is_gl_frame());
            prop_assert!(!m.holds(0, &f));
        }
    }

    #[test]
    fn k_and_lob_axioms(a in modal(), b in modal()) {
        let k = M::implies(M::boxed(M::implies(a.clone(), b.clone())), M::implies(M::boxed(a.clone()), M::boxed(b)));
        let lob = M::implies(M::boxed(M::implies(M::boxed(a.clone()), a.clone())), M::boxed(a));
        prop_assert!(gl_prove(&k).is_valid());
        prop_assert!(gl_prove(&lob).is_valid());
    }

    #[test]
    fn validity_is_closed_under_rules(f in modal(), g in modal()) {
        if gl_prove(&f).is_valid() {
            prop_assert!(gl_prove(&M::boxed(f.clone())).is_valid());
            let inst = f.map_atoms(&mut |a| if a == 0 { g.clone() } else { M::atom(a) });
            prop_assert!(gl_prove(&inst).is_valid());
        }
    }
}

/// Direct recursion over machine integers; `None` on overflow.
fn naive_term(t: &Term, env: &BTreeMap<Var, u64>) -> Option<u64> {
    match t {
        Term::Zero => Some(0),
        Term::Succ(a) => naive_term(a, env)?.checked_add(1),
        Term::Add(a, b) => naive_term(a, env)?.checked_add(naive_term(b, env)?),
        Term::Mul(a, b) => naive_term(a, env)?.checked_mul(naive_term(b, env)?),
        Term::Exp(a, b) => naive_term(a, env)?.checked_pow(u32::try_from(naive_term(b, env)?).ok()?),
        Term::Var(v) => env.get(v).copied(),
        Term::Numeral(n) => match n.to_u64_digits()[..] {
            [] => Some(0),
            [d] => Some(d),
            _ => None,
        },
    }
}

fn naive(f: &Formula, env: &mut BTreeMap<Var, u64>) -> Option<bool> {
    Some(match f {
        Formula::Eq(a, b) => naive_term(a, env)? == naive_term(b, env)?,
        Formula::Lt(a, b) => naive_term(a, env)? < naive_term(b, env)?,
        Formula::Bottom => false,
        Formula::Top => true,
        Formula::Not(a) => !naive(a, env)?,
        Formula::And(a, b) => naive(a, env)? & naive(b, env)?,
        Formula::Or(a, b) => naive(a, env)? | naive(b, env)?,
        Formula::Implies(a, b) => !naive(a, env)? | naive(b, env)?,
        Formula::BoundedForAll(v, t, body) | Formula::BoundedExists(v, t, body) => {
            let universal = matches!(f, Formula::BoundedForAll(..));
            let n = naive_term(t, env)?;
            let saved = env.get(v).copied();
            let mut result = universal;
            for x in 0..n {
                env.insert(*v, x);
                if naive(body, env)? != universal {
                    result = !universal;
                    break;
                }
            }
            match saved {
                Some(x) => env.insert(*v, x),
                None => env.remove(v),
            };
            result
        }
        Formula::ForAll(..) | Formula::Exists(..) => return None,
    })
}

#[test]
fn evaluator_matches_naive_search() {
    let mut compared = 0;
    for f in formulas_up_to(&EnumConfig::default(), 6) {
        if !f.is_closed() || classify(&f) != HierarchyLevel::Delta0 {
            continue;
        }
        if let Some(want) = naive(&f, &mut BTreeMap::new()) {
            assert_eq!(evaluate_bounded(&f), Ok(want), "{f}");
            compared += 1;
        }
    }
    assert!(compared > 1000, "{compared}");
}

#[test]
fn con_is_pi1_on_small_sentences() {
    let t = TheoryDescriptor::ea();
    let sentences = sentences_by_size(&EnumConfig::default(), 6);
    assert!(sentences.len() > 100);
    for phi in &sentences {
        assert_eq!(classify(build_con(&t, phi).formula()), HierarchyLevel::Pi(1), "{phi}");
    }
}

#[test]
fn iterated_con_nests() {
    let t = TheoryDescriptor::ea();
    for phi in ["0=0", "bot", "forall x0 x0=x0"].map(|s| Sentence::new(parse_formula(s).unwrap()).unwrap()) {
        for n in 0..3 {
            let lo = build_iterated_con(&t, OrdinalNotation::Finite(n), &phi);
            let hi = build_iterated_con(&t, OrdinalNotation::Finite(n + 1), &phi);
            // the lower stage sits inside the higher one as a quoted code
            let inner = Formula::and(phi.formula().clone(), lo.into_formula());
            assert!(hi.formula().contains_term(&quote(&Formula::implies(inner.clone(), Formula::Bottom))));
            assert_eq!(match_con(&t, hi.formula()).map(Sentence::into_formula), Some(inner), "{phi} at {n}");
        }
    }
}

#[test]
fn diagonal_shape_on_one_variable_formulas() {
    let cfg = EnumConfig { vars: vec![Var(0)], with_exp: true };
    let one_var: Vec<Formula> = formulas_up_to(&cfg, 6)
        .into_iter()
        .filter(|f| f.free_variables().into_iter().eq([Var(0)]))
        .take(50)
        .collect();
    assert_eq!(one_var.len(), 50);
    for f in &one_var {
        assert!(diagonal(f).unwrap().shape_holds(), "{f}");
    }
}

#[test]
fn proved_closed_instances_are_true() {
    let corpus: Vec<M> = modal_formulas_by_size(&[M::Bottom, M::Top, M::atom(0)], 6).into_iter().flatten().collect();
    for f in &corpus {
        let valid = gl_prove(f).is_valid();
        if valid {
            assert!(gl_prove(&M::boxed(f.clone())).is_valid(), "{f}");
        }
        for b in [false, true] {
            let v = Valuation::new().with(0, b);
            if gl_prove(&v.apply(f).unwrap()).is_valid() {
                assert!(truth(f, &v).unwrap(), "{f} under p0 = {b}");
            }
        }
    }
}
