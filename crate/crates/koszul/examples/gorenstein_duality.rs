//! Bounded Gorenstein certificate for k[x,y] # kZ/2: Ext^i(S, B) vanishes
//! away from i = 2 and Ext^2 matches the twisted dual of S.

use koszul::fixtures::{sign_action_braiding, smash_commutator_presentation};
use koszul::gorenstein::{check_gorenstein, ext_via_koszul};
use koszul::FieldSpec;

fn main() {
    let pres = smash_commutator_presentation(&sign_action_braiding(FieldSpec::Rationals), 6)
        .unwrap();
    let table = ext_via_koszul(&pres, 3, (-4, 2)).unwrap();
    for (i, row) in table.dims.iter().enumerate() {
        println!("dim Ext^{i} per internal degree {}..={}: {row:?}", table.window.0, table.window.1);
    }
    let cert = check_gorenstein(&pres, 2, 2, (-4, 2), 0, 64).unwrap();
    println!("gorenstein with (d, l) = (2, 2): {}", cert.pass);
}
