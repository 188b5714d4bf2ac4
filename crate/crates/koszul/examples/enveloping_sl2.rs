//! The enveloping algebra of sl2 as a smash-type deformation: phi is the
//! Lie bracket, and the three structural conditions certify the PBW
//! theorem up to the truncation.

use koszul::fixtures::{sl2_broken_deformation, sl2_deformation};
use koszul::pbw::{check_pbw_b, is_pbw_up_to};
use koszul::FieldSpec;

fn main() {
    let q = FieldSpec::Rationals;
    let (pres, phi, theta) = sl2_deformation(q, 5).unwrap();
    let verdict = check_pbw_b(&pres, &phi, &theta).unwrap();
    println!(
        "sl2: conditions (i, ii, iii) = ({}, {}, {}), flat = {}",
        verdict.condition_i, verdict.condition_ii, verdict.condition_iii, verdict.predicted_pbw
    );
    let oracle = is_pbw_up_to(&pres, &phi, &theta, 4, 4).unwrap();
    println!("sl2: oracle dims {:?}", oracle.filtered.dims);

    let (pres, phi, theta) = sl2_broken_deformation(q, 5).unwrap();
    let verdict = check_pbw_b(&pres, &phi, &theta).unwrap();
    println!("broken bracket: flat = {}", verdict.predicted_pbw);
    let oracle = is_pbw_up_to(&pres, &phi, &theta, 4, 4).unwrap();
    println!("broken bracket: oracle dims {:?}", oracle.filtered.dims);
}
