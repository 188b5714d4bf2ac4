//! Build the double-complex resolution of a generalized smash product
//! A # S from a braiding and certify it.

use koszul::entwine::{exact_below_top, smash_koszul_resolution, SmashProduct};
use koszul::fixtures::{commutator_relations, polynomial_presentation, sign_action_braiding};
use koszul::quadratic::graded_pieces;
use koszul::FieldSpec;
use std::sync::Arc;

fn main() {
    let q = FieldSpec::Rationals;
    let plain = polynomial_presentation(q, 2, 4).unwrap();
    let graded = Arc::new(graded_pieces(&plain, 4).unwrap());
    let ks = plain.koszul_generators(4).unwrap();
    let relations = commutator_relations(q, 2);
    let smash = SmashProduct::new(&graded, sign_action_braiding(q), &relations, 4).unwrap();
    let complex = smash_koszul_resolution(&smash, &ks, 4, 4).unwrap();
    println!("d . d = 0: {}", complex.d_squared_is_zero());
    println!("exact below the top row: {}", exact_below_top(&complex).is_none());
}
