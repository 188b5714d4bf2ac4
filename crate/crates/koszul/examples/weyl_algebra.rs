//! The first Weyl algebra as a flat deformation of k[x,y]: the structural
//! check and the filtered-dimension oracle agree.

use koszul::fixtures::polynomial_presentation;
use koszul::matrix::Matrix;
use koszul::pbw::{check_pbw_a, is_pbw_up_to};
use koszul::FieldSpec;

fn main() {
    let q = FieldSpec::Rationals;
    let pres = polynomial_presentation(q, 2, 6).unwrap();
    // theta(x (x) y - y (x) x) = 1
    let theta = Matrix::from_i64_rows(q, &[&[1]]);
    let verdict = check_pbw_a(&pres, &theta).unwrap();
    println!("structural check predicts flat: {}", verdict.predicted_pbw);
    let phi0 = Matrix::zero(q, 2, 1);
    let oracle = is_pbw_up_to(&pres, &phi0, &theta, 4, 5).unwrap();
    println!("oracle filtered dims: {:?}", oracle.filtered.dims);
    println!("oracle verdict: flat = {}", oracle.pbw);
}
