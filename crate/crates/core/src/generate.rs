//! Seed-deterministic random formula generation.

use crate::formula::Formula;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn atom_name(index: usize) -> String {
    // p, q, r, ... then numbered names once the letters run out.
    if index < 11 {
        char::from(b'p' + index as u8).to_string()
    } else {
        format!("p{index}")
    }
}

fn generate_with(rng: &mut ChaCha8Rng, atoms: usize, depth_left: usize) -> Formula {
    if depth_left <= 1 {
        return Formula::Atom(atom_name(rng.random_range(0..atoms)));
    }
    match rng.random_range(0..4) {
        0 => Formula::Atom(atom_name(rng.random_range(0..atoms))),
        1 => Formula::neg(generate_with(rng, atoms, depth_left - 1)),
        2 => Formula::implies(
            generate_with(rng, atoms, depth_left - 1),
            generate_with(rng, atoms, depth_left - 1),
        ),
        _ => Formula::ident(
            generate_with(rng, atoms, depth_left - 1),
            generate_with(rng, atoms, depth_left - 1),
        ),
    }
}

/// Generates a random formula over `atoms` atoms with the given depth cutoff.
/// Constructors are chosen uniformly; at the cutoff only atoms are produced.
pub fn generate_random_formula(atoms: usize, max_depth: usize, seed: u64) -> Formula {
    assert!(atoms >= 1 && max_depth >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generate_with(&mut rng, atoms, max_depth)
}

/// The `index`-th formula of the stream identified by `seed`. Streams are
/// independent, so workers can draw formulas by index in any order.
pub fn generate_indexed(atoms: usize, max_depth: usize, seed: u64, index: u64) -> Formula {
    assert!(atoms >= 1 && max_depth >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    generate_with(&mut rng, atoms, max_depth)
}
