use alloc::vec;
use alloc::vec::Vec;

use super::ModalFormula;

/// Every formula of size `1..=max` built from `leaves`, grouped by size
/// (`out[n]` holds size `n`; `out[0]` is empty).
pub fn modal_formulas_by_size(leaves: &[ModalFormula], max: usize) -> Vec<Vec<ModalFormula>> {
    let mut out: Vec<Vec<ModalFormula>> = vec![Vec::new(); max + 1];
    if max == 0 {
        return out;
    }
    out[1] = leaves.to_vec();
    for n in 2..=max {
        let mut layer = Vec::new();
        for a in &out[n - 1] {
            layer.push(ModalFormula::not(a.clone()));
            layer.push(ModalFormula::boxed(a.clone()));
            layer.push(ModalFormula::diamond(a.clone()));
        }
        for i in 1..n - 1 {
            let j = n - 1 - i;
            for a in &out[i] {
                for b in &out[j] {
                    layer.push(ModalFormula::and(a.clone(), b.clone()));
                    layer.push(ModalFormula::or(a.clone(), b.clone()));
                    layer.push(ModalFormula::implies(a.clone(), b.clone()));
                }
            }
        }
        out[n] = layer;
    }
    out
}
