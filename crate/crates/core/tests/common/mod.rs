#![allow(dead_code)]

use eigenform_core::triples::{builtin, BUILTIN_NAMES};
use eigenform_core::{DirichletForm, FractalTriple, Weights};
use eigenform_oracle::{pairs, UnionFind};
use proptest::prelude::*;

/// Connectivity of the positive-coefficient graph, decided with union-find
/// rather than the production BFS.
pub fn irreducible(n: usize, coeffs: &[f64]) -> bool {
    let mut uf = UnionFind::new(n);
    for ((a, b), c) in pairs(n).into_iter().zip(coeffs) {
        if *c > 0.0 {
            uf.union(a, b);
        }
    }
    uf.count() == 1
}

pub fn n_pairs(n: usize) -> usize {
    n * (n - 1) / 2
}

pub fn log_uniform() -> impl Strategy<Value = f64> {
    (-1.0f64..=1.0).prop_map(|x| 10f64.powf(x))
}

pub fn arb_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(BUILTIN_NAMES.to_vec())
}

/// Normalized irreducible form; roughly a third of the coefficients are zero.
pub fn arb_irreducible(n: usize) -> impl Strategy<Value = DirichletForm> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 2 => 0.01f64..1.0], n_pairs(n))
        .prop_filter("irreducible", move |c| irreducible(n, c))
        .prop_map(move |c| DirichletForm::new(n, c).unwrap().normalized(0.0).unwrap().1)
}

/// Normalized form with all coefficients positive.
pub fn arb_interior(n: usize) -> impl Strategy<Value = DirichletForm> {
    prop::collection::vec(0.01f64..1.0, n_pairs(n))
        .prop_map(move |c| DirichletForm::new(n, c).unwrap().normalized(0.0).unwrap().1)
}

#[derive(Debug, Clone)]
pub struct Case {
    pub triple: FractalTriple,
    pub weights: Weights,
    pub form: DirichletForm,
}

pub fn arb_case() -> impl Strategy<Value = Case> {
    arb_name().prop_flat_map(|name| {
        let triple = builtin(name).unwrap();
        let (n, k) = (triple.n_boundary(), triple.n_cells());
        (
            Just(triple),
            prop::collection::vec(log_uniform(), k),
            arb_irreducible(n),
        )
            .prop_map(|(triple, w, form)| Case {
                triple,
                weights: Weights::new(w).unwrap(),
                form,
            })
    })
}

pub fn rel_close(a: f64, b: f64, rel: f64, scale: f64) -> bool {
    (a - b).abs() <= rel * scale
}
