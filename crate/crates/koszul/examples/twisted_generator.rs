//! Extract a free generator r0 of the relation bimodule, read off the
//! twist sigma, compute the admissible constants e, and check each
//! one-parameter deformation U_e.

use koszul::fixtures::{sign_action_braiding, smash_commutator_presentation};
use koszul::gorenstein::{build_u_e, extract_sigma};
use koszul::FieldSpec;

fn main() {
    let q = FieldSpec::Rationals;
    let pres = smash_commutator_presentation(&sign_action_braiding(q), 6).unwrap();
    let show = |v: &[koszul::Scalar]| {
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
    };
    let data = extract_sigma(&pres, 0, 64).unwrap();
    println!("free generator r0 (relation coordinates): ({})", show(&data.r0));
    println!("sigma:\n{:?}", data.sigma);
    println!("admissible constants: dimension {}", data.e_space.dim());
    for i in 0..data.e_space.dim() {
        let e = data.e_space.basis_vector(i);
        let v = build_u_e(&pres, &data, &e, 4, 4).unwrap();
        println!(
            "e = ({}): checker flat = {}, oracle flat = {}",
            show(&e), v.checker.predicted_pbw, v.oracle.pbw
        );
    }
}
