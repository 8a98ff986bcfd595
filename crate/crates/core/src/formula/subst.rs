use alloc::boxed::Box;
use alloc::collections::BTreeSet;

use super::{Formula, Term, Var};

/// `None` when `v` does not occur in `t`.
fn subst_term(t: &Term, v: Var, by: &Term) -> Option<Term> {
    let pair = |a: &Term, b: &Term| match (subst_term(a, v, by), subst_term(b, v, by)) {
        (None, None) => None,
        (x, y) => Some((x.unwrap_or_else(|| a.clone()), y.unwrap_or_else(|| b.clone()))),
    };
    match t {
        Term::Zero | Term::Numeral(_) => None,
        Term::Var(w) => (*w == v).then(|| by.clone()),
        Term::Succ(a) => subst_term(a, v, by).map(Term::succ),
        Term::Add(a, b) => pair(a, b).map(|(a, b)| Term::add(a, b)),
        Term::Mul(a, b) => pair(a, b).map(|(a, b)| Term::mul(a, b)),
        Term::Exp(a, b) => pair(a, b).map(|(a, b)| Term::exp(a, b)),
    }
}

/// Capture-avoiding substitution of `by` for the free occurrences of `v`.
///
/// A binder that would capture a variable of `by` is renamed to the smallest
/// index not used anywhere in the formula or in `by`.
pub fn substitute(f: &Formula, v: Var, by: &Term) -> Formula {
    let mut by_vars = BTreeSet::new();
    by.collect_vars(&mut by_vars);
    go(f, v, by, &by_vars).unwrap_or_else(|| f.clone())
}

/// Applies several substitutions one after another.
pub fn substitute_all(f: &Formula, pairs: &[(Var, Term)]) -> Formula {
    let mut out = f.clone();
    for (v, t) in pairs {
        out = substitute(&out, *v, t);
    }
    out
}

// Unchanged subtrees come back as `None` so they are neither copied nor
// rescanned, which keeps the pass linear.
fn go(f: &Formula, v: Var, by: &Term, by_vars: &BTreeSet<Var>) -> Option<Formula> {
    let terms = |a: &Term, b: &Term| match (subst_term(a, v, by), subst_term(b, v, by)) {
        (None, None) => None,
        (x, y) => Some((x.unwrap_or_else(|| a.clone()), y.unwrap_or_else(|| b.clone()))),
    };
    let both = |a: &Formula, b: &Formula| match (go(a, v, by, by_vars), go(b, v, by, by_vars)) {
        (None, None) => None,
        (x, y) => Some((x.unwrap_or_else(|| a.clone()), y.unwrap_or_else(|| b.clone()))),
    };
    match f {
        Formula::Eq(a, b) => terms(a, b).map(|(a, b)| Formula::Eq(a, b)),
        Formula::Lt(a, b) => terms(a, b).map(|(a, b)| Formula::Lt(a, b)),
        Formula::Bottom | Formula::Top => None,
        Formula::Not(a) => go(a, v, by, by_vars).map(Formula::not),
        Formula::And(a, b) => both(a, b).map(|(a, b)| Formula::and(a, b)),
        Formula::Or(a, b) => both(a, b).map(|(a, b)| Formula::or(a, b)),
        Formula::Implies(a, b) => both(a, b).map(|(a, b)| Formula::implies(a, b)),
        Formula::ForAll(w, body) | Formula::Exists(w, body) => {
            let (w2, body2) = under_binder(f, *w, body, v, by, by_vars)?;
            Some(match f {
                Formula::ForAll(..) => Formula::ForAll(w2, Box::new(body2)),
                _ => Formula::Exists(w2, Box::new(body2)),
            })
        }
        Formula::BoundedForAll(w, t, body) | Formula::BoundedExists(w, t, body) => {
            let t2 = subst_term(t, v, by);
            let inner = under_binder(f, *w, body, v, by, by_vars);
            if t2.is_none() && inner.is_none() {
                return None;
            }
            let t2 = t2.unwrap_or_else(|| t.clone());
            let (w2, body2) = inner.unwrap_or_else(|| (*w, (**body).clone()));
            Some(match f {
                Formula::BoundedForAll(..) => Formula::BoundedForAll(w2, t2, Box::new(body2)),
                _ => Formula::BoundedExists(w2, t2, Box::new(body2)),
            })
        }
    }
}

fn under_binder(
    whole: &Formula,
    w: Var,
    body: &Formula,
    v: Var,
    by: &Term,
    by_vars: &BTreeSet<Var>,
) -> Option<(Var, Formula)> {
    if w == v {
        return None;
    }
    if !by_vars.contains(&w) {
        return go(body, v, by, by_vars).map(|b| (w, b));
    }
    if !body.free_variables().contains(&v) {
        return None;
    }
    let mut used = whole.all_variables();
    used.extend(by_vars.iter().copied());
    used.insert(v);
    let fresh = (0..).map(Var).find(|c| !used.contains(c)).expect("variable indices exhausted");
    let renamed = substitute(body, w, &Term::Var(fresh));
    Some((fresh, substitute(&renamed, v, by)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn renames_on_capture() {
        let f = Formula::forall(Var(0), Formula::eq(Term::var(0), Term::var(1)));
        let g = substitute(&f, Var(1), &Term::var(0));
        assert_eq!(g, Formula::forall(Var(2), Formula::eq(Term::var(2), Term::var(0))));
    }

    #[test]
    fn bound_occurrences_untouched() {
        let f = Formula::forall(Var(0), Formula::eq(Term::var(0), Term::Zero));
        assert_eq!(substitute(&f, Var(0), &Term::lit(5u32)), f);
    }

    #[test]
    fn bound_term_is_outside_scope() {
        let f = Formula::bounded_exists(Var(0), Term::var(1), Formula::eq(Term::var(0), Term::var(1)));
        let g = substitute(&f, Var(1), &Term::lit(3u32));
        assert_eq!(g.to_string(), "exists x0 < #3 x0=#3");
    }
}
