//! Single-entry corruptions of a table category, used to measure how much
//! the relation checker catches.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{check_cainf, AinfCategory, CAinfCategory};
use crate::scalars::{fmt_rational, Rational};

#[derive(Clone, Debug)]
pub struct Mutation {
    pub description: String,
    pub cat: CAinfCategory,
}

/// Every stored term of `b^d` and of the curvature, and every unit product
/// `b^2(e, x)`, `b^2(x, e)`, with its coefficient raised by one.
pub fn single_entry_mutations(cat: &CAinfCategory) -> Vec<Mutation> {
    let name = |g: &usize| cat.gen_name(g);
    let mut out = Vec::new();
    let mut keys: Vec<Vec<usize>> = cat.stored_mu().keys().cloned().collect();
    for (x, e) in cat.units() {
        for g in 0..cat.gens().len() {
            if cat.gens()[g].source == *x {
                keys.push(vec![*e, g]);
            }
            if cat.gens()[g].target == *x {
                keys.push(vec![g, *e]);
            }
        }
    }
    keys.sort();
    keys.dedup();
    for key in keys {
        let value = cat.stored_mu().get(&key).cloned().unwrap_or_else(|| cat.mu(&key));
        for (g, s, _) in value.terms() {
            let mut bumped = value.clone();
            bumped.add_term(*g, *s, 1);
            let mut m = cat.clone();
            if m.set_mu(key.clone(), bumped).is_ok() {
                let inputs: Vec<String> = key.iter().map(name).collect();
                out.push(Mutation { description: format!("b({}) += {}", inputs.join(", "), term(&name(g), s)), cat: m });
            }
        }
    }
    for (x, value) in cat.stored_curvature() {
        for (g, s, _) in value.terms() {
            let mut bumped = value.clone();
            bumped.add_term(*g, *s, 1);
            let mut m = cat.clone();
            if m.set_curvature(*x, bumped).is_ok() {
                out.push(Mutation { description: format!("b0({}) += {}", cat.object_names()[*x], term(&name(g), s)), cat: m });
            }
        }
    }
    out
}

fn term(g: &str, s: &Rational) -> String {
    if *s == Rational::from_integer(0) {
        String::from(g)
    } else {
        format!("T^{} {}", fmt_rational(s), g)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MutationReport {
    pub total: usize,
    pub detected: usize,
    /// missed mutations, and whether the mutated table still satisfies every
    /// relation one arity higher
    pub undetected: Vec<(String, bool)>,
}

impl MutationReport {
    pub fn rate(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.detected as f64 / self.total as f64
        }
    }

    /// Every missed mutation is itself a valid structure.
    pub fn undetected_are_valid(&self) -> bool {
        self.undetected.iter().all(|(_, ok)| *ok)
    }
}

/// Runs the checker on at most `limit` mutations, spread evenly over all of
/// them.
pub fn mutation_sweep(cat: &CAinfCategory, dmax: usize, limit: usize) -> MutationReport {
    let all = single_entry_mutations(cat);
    let picked: Vec<&Mutation> = if all.len() <= limit { all.iter().collect() } else { (0..limit).map(|i| &all[i * all.len() / limit]).collect() };
    let mut report = MutationReport { total: picked.len(), ..Default::default() };
    for m in picked {
        if check_cainf(&m.cat, dmax).passed() {
            let valid = check_cainf(&m.cat, dmax + 1).passed();
            report.undetected.push((m.description.clone(), valid));
        } else {
            report.detected += 1;
        }
    }
    report
}
