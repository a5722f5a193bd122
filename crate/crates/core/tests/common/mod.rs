#![allow(dead_code)]

use proptest::collection::vec;
use proptest::prelude::*;
use twist_core::{Formula, Sequent};

const VARS: [&str; 3] = ["p", "q", "r"];

/// Negation-heavy formulas over the first `vars` variables.
pub fn formula(vars: usize, depth: u32) -> impl Strategy<Value = Formula> + Clone {
    let leaf = (0..vars).prop_map(|i| Formula::var(VARS[i]));
    leaf.prop_recursive(depth, 16, 2, |inner| {
        prop_oneof![
            3 => inner.clone().prop_map(Formula::neg),
            1 => inner.clone().prop_map(Formula::boxed),
            1 => inner.clone().prop_map(Formula::dia),
            1 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            1 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            1 => (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
}

pub fn propositional(vars: usize, depth: u32) -> impl Strategy<Value = Formula> + Clone {
    let leaf = (0..vars).prop_map(|i| Formula::var(VARS[i]));
    leaf.prop_recursive(depth, 16, 2, |inner| {
        prop_oneof![
            2 => inner.clone().prop_map(Formula::neg),
            1 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            1 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            1 => (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
}

pub fn sequent_of(f: impl Strategy<Value = Formula> + Clone) -> impl Strategy<Value = Sequent> {
    (vec(f.clone(), 0..3), vec(f, 0..3)).prop_map(|(l, r)| Sequent::new(l, r))
}

pub fn sequent(vars: usize, depth: u32) -> impl Strategy<Value = Sequent> {
    sequent_of(formula(vars, depth))
}
