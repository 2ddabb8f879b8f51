#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use relcoh::catalog::{self, sign_character, sign_module, trivial_module};
use relcoh::cochain::{AbsoluteCochain, PeripheralCochain};
use relcoh::extension::{Extension, SetSection};
use relcoh::group::{FiniteGroup, GroupPair};
use relcoh::module::GModule;

pub const CAP: u128 = 1 << 22;

pub fn instances_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances")
}

/// Catalog modules plus `(ℤ/2)²` and a twisted `ℤ/4` when a sign character exists.
pub fn modules_for(group: &Arc<FiniteGroup>) -> Vec<GModule> {
    let mut out: Vec<GModule> = catalog::modules(group).into_iter().map(|m| m.module).collect();
    out.push(trivial_module(group, vec![2, 2]));
    if let Some(chi) = sign_character(group) {
        out.push(sign_module(group, 4, &chi).unwrap());
    }
    out
}

pub fn random_elt(module: &GModule, rng: &mut ChaCha8Rng) -> Vec<i64> {
    module.invariants().iter().map(|&m| rng.gen_range(0..m)).collect()
}

pub fn random_abs(module: &GModule, degree: usize, rng: &mut ChaCha8Rng) -> AbsoluteCochain {
    AbsoluteCochain::from_fn(module, degree, |_| random_elt(module, rng))
}

pub fn random_per(pair: &GroupPair, module: &GModule, degree: usize, rng: &mut ChaCha8Rng) -> PeripheralCochain {
    PeripheralCochain::from_fn(pair, module, degree, |_, _| random_elt(module, rng))
}

/// A set-theoretic section with `r(1) = 1` and random `A`-parts elsewhere.
pub fn random_section(ext: &Extension, rng: &mut ChaCha8Rng) -> SetSection {
    let module = ext.module();
    let rho = ext
        .group()
        .elements()
        .map(|g| if g == 0 { vec![0; module.rank()] } else { random_elt(module, rng) })
        .collect();
    SetSection::new(ext, rho).unwrap()
}
