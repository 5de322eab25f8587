#![allow(dead_code)]

use std::sync::Arc;

use qglab::linalg::{self, C64};
use qglab::{AlgebraElement, FiniteQuantumGroup, Functional, Qg};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn builtin(name: &str) -> Qg {
    Arc::new(FiniteQuantumGroup::builtin(name).unwrap())
}

pub fn all_builtins() -> Vec<Qg> {
    FiniteQuantumGroup::builtin_names().iter().map(|n| builtin(n)).collect()
}

pub fn random_element(g: &Qg, rng: &mut ChaCha8Rng) -> AlgebraElement {
    AlgebraElement::new(g, linalg::random_vector(rng, g.dim())).unwrap()
}

pub fn random_functional(g: &Qg, rng: &mut ChaCha8Rng) -> Functional {
    Functional::new(g, linalg::random_vector(rng, g.dim())).unwrap()
}

pub fn c(re: f64) -> C64 {
    linalg::r(re)
}
