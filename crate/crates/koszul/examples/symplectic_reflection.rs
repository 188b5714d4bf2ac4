//! Deform k[x,y] # kZ/2 by theta = 1 + g on the commutator relation and
//! watch the filtered layers come out as 2(k+1).

use koszul::fixtures::{
    sign_action_braiding, smash_commutator_generator, smash_commutator_presentation,
};
use koszul::matrix::Matrix;
use koszul::pbw::{check_pbw_a, is_pbw_up_to, theta_from_free_generator};
use koszul::FieldSpec;

fn main() {
    let q = FieldSpec::Rationals;
    let pres = smash_commutator_presentation(&sign_action_braiding(q), 6).unwrap();
    let r0 = smash_commutator_generator(&pres);
    let e = vec![q.one(), q.one()]; // 1 + g
    let theta = theta_from_free_generator(&pres, &r0, &e).unwrap();
    let verdict = check_pbw_a(&pres, &theta).unwrap();
    println!("structural check predicts flat: {}", verdict.predicted_pbw);
    let phi0 = Matrix::zero(q, pres.tensor.module.dim, pres.relations.dim());
    let oracle = is_pbw_up_to(&pres, &phi0, &theta, 4, 5).unwrap();
    let mut prev = 0;
    for (k, &d) in oracle.filtered.dims.iter().enumerate() {
        println!("dim F_{k} = {d}, layer = {}", d - prev);
        prev = d;
    }
}
