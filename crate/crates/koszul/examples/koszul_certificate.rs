//! Certify the Koszul property of k[x,y] # kZ/2 with the sign action and
//! print its graded dimensions.

use koszul::fixtures::{sign_action_braiding, smash_commutator_presentation};
use koszul::quadratic::{graded_pieces, is_koszul};
use koszul::FieldSpec;

fn main() {
    let braiding = sign_action_braiding(FieldSpec::Rationals);
    let pres = smash_commutator_presentation(&braiding, 5).unwrap();
    let cert = is_koszul(&pres, 5).unwrap();
    println!("koszul up to degree {}: {}", cert.deg_max, cert.pass);
    let graded = graded_pieces(&pres, 5).unwrap();
    let dims: Vec<usize> = (0..=5).map(|n| graded.dim(n)).collect();
    println!("graded dimensions: {dims:?}");
}
