//! Exhaustive size-indexed enumeration of terms and formulas.

use alloc::vec;
use alloc::vec::Vec;

use super::{Formula, Sentence, Term, Var};

#[derive(Clone, Debug)]
pub struct EnumConfig {
    pub vars: Vec<Var>,
    pub with_exp: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { vars: vec![Var(0), Var(1)], with_exp: true }
    }
}

struct Tables {
    terms: Vec<Vec<Term>>,
    formulas: Vec<Vec<Formula>>,
}

fn build(cfg: &EnumConfig, max: usize) -> Tables {
    let mut terms: Vec<Vec<Term>> = vec![Vec::new(); max + 1];
    let mut formulas: Vec<Vec<Formula>> = vec![Vec::new(); max + 1];
    for n in 1..=max {
        let mut ts = Vec::new();
        if n == 1 {
            ts.push(Term::Zero);
            ts.extend(cfg.vars.iter().map(|v| Term::Var(*v)));
        } else {
            for t in &terms[n - 1] {
                ts.push(Term::succ(t.clone()));
            }
            for i in 1..n - 1 {
                let j = n - 1 - i;
                for a in &terms[i] {
                    for b in &terms[j] {
                        ts.push(Term::add(a.clone(), b.clone()));
                        ts.push(Term::mul(a.clone(), b.clone()));
                        if cfg.with_exp {
                            ts.push(Term::exp(a.clone(), b.clone()));
                        }
                    }
                }
            }
        }
        terms[n] = ts;

        let mut fs = Vec::new();
        if n == 1 {
            fs.push(Formula::Bottom);
            fs.push(Formula::Top);
        } else {
            for i in 1..n - 1 {
                let j = n - 1 - i;
                for a in &terms[i] {
                    for b in &terms[j] {
                        fs.push(Formula::eq(a.clone(), b.clone()));
                        fs.push(Formula::lt(a.clone(), b.clone()));
                    }
                }
            }
            for a in &formulas[n - 1] {
                fs.push(Formula::not(a.clone()));
            }
            for i in 1..n - 1 {
                let j = n - 1 - i;
                for a in &formulas[i] {
                    for b in &formulas[j] {
                        fs.push(Formula::and(a.clone(), b.clone()));
                        fs.push(Formula::or(a.clone(), b.clone()));
                        fs.push(Formula::implies(a.clone(), b.clone()));
                    }
                }
            }
            for v in &cfg.vars {
                for a in &formulas[n - 1] {
                    fs.push(Formula::forall(*v, a.clone()));
                    fs.push(Formula::exists(*v, a.clone()));
                }
                for i in 1..n - 1 {
                    let j = n - 1 - i;
                    for t in terms[i].iter().filter(|t| !t.contains_var(*v)) {
                        for a in &formulas[j] {
                            fs.push(Formula::bounded_forall(*v, t.clone(), a.clone()));
                            fs.push(Formula::bounded_exists(*v, t.clone(), a.clone()));
                        }
                    }
                }
            }
        }
        formulas[n] = fs;
    }
    Tables { terms, formulas }
}

pub fn terms_of_size(cfg: &EnumConfig, n: usize) -> Vec<Term> {
    build(cfg, n).terms.swap_remove(n)
}

pub fn formulas_of_size(cfg: &EnumConfig, n: usize) -> Vec<Formula> {
    build(cfg, n).formulas.swap_remove(n)
}

/// All formulas of size `1..=max`, grouped by size.
pub fn formulas_up_to(cfg: &EnumConfig, max: usize) -> Vec<Formula> {
    build(cfg, max).formulas.into_iter().flatten().collect()
}

/// Sentences of size `1..=max`, ordered by size and then by code.
pub fn sentences_by_size(cfg: &EnumConfig, max: usize) -> Vec<Sentence> {
    let tables = build(cfg, max);
    let mut out = Vec::new();
    for group in tables.formulas {
        let mut keyed: Vec<_> = group
            .into_iter()
            .filter(|f| f.is_closed())
            .map(|f| (crate::coding::encode(&f).into_value(), f))
            .collect();
        keyed.sort();
        out.extend(keyed.into_iter().map(|(_, f)| Sentence::new_unchecked(f)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn sizes_are_exact() {
        let cfg = EnumConfig::default();
        for n in 1..=4 {
            for f in formulas_of_size(&cfg, n) {
                assert_eq!(f.size(), n, "{f}");
            }
            for t in terms_of_size(&cfg, n) {
                assert_eq!(t.size(), n);
            }
        }
    }

    #[test]
    fn first_sentences() {
        let s = sentences_by_size(&EnumConfig::default(), 2);
        assert_eq!(s[0].to_string(), "bot");
        assert_eq!(s[1].to_string(), "top");
    }
}
