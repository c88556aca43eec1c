//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.
//!
//! Everything here is exact; there are no tolerances anywhere.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spherelike::algebra::{presets, BoundQuiverAlgebra};
use spherelike::complex::{euler_pairing_complexes, PerfectComplex};
use spherelike::exact::{scalar_int, Matrix, Scalar};
use spherelike::hom::{hom, is_isomorphic};
use spherelike::kgroup::{
    check_braid, check_involution, curve_sheaf_class, euler_pairing_surface, reflect,
    BraidVerdict, KClass, KLattice,
};
use spherelike::kgroup::presets as surfaces;
use spherelike::rep::{projective_resolution, simple, Representation};
use spherelike::sphere::{
    asphericality, asphericality_with, aspherical_cone_from_map, check_calabi_yau, classify,
    in_spherical_subcategory, twist, twist_left, Classification, Flavor, WChoice, WChoiceRecord,
};

const SEED: u64 = 0;
const TRIALS: u32 = 8;

fn r_lambda(alg: &Arc<BoundQuiverAlgebra>, lambda: i64) -> PerfectComplex {
    let r = Representation::new(
        alg.clone(),
        vec![1, 1],
        vec![
            Matrix::from_i64(1, 1, &[lambda]),
            Matrix::from_i64(1, 1, &[1]),
        ],
    )
    .unwrap();
    projective_resolution(&r).unwrap()
}

fn kronecker_corpus(alg: &Arc<BoundQuiverAlgebra>) -> Vec<PerfectComplex> {
    let p1 = PerfectComplex::stalk(alg.clone(), 0, vec![0]);
    let p2 = PerfectComplex::stalk(alg.clone(), 0, vec![1]);
    let r0 = r_lambda(alg, 0);
    let r1 = r_lambda(alg, 1);
    let r2 = r_lambda(alg, 2);
    let shifts = vec![p1.shift(1), r2.shift(-1)];
    let mut corpus = vec![p1, p2, r0, r1, r2];
    corpus.extend(shifts);
    corpus
}

fn a3_corpus(alg: &Arc<BoundQuiverAlgebra>) -> Vec<PerfectComplex> {
    let p1 = PerfectComplex::stalk(alg.clone(), 0, vec![0]);
    let p2 = PerfectComplex::stalk(alg.clone(), 0, vec![1]);
    let p3 = PerfectComplex::stalk(alg.clone(), 0, vec![2]);
    let f = PerfectComplex::stalk(alg.clone(), 0, vec![0, 2]);
    let s1 = projective_resolution(&simple(alg, 0)).unwrap();
    let s2 = projective_resolution(&simple(alg, 1)).unwrap();
    vec![f.clone(), p1, p2, p3, s1.clone(), s2, s1.shift(1), f.shift(-1)]
}

fn hom_table(a: &PerfectComplex, b: &PerfectComplex) -> BTreeMap<i32, usize> {
    hom(a, b).unwrap().dims()
}

#[test]
fn criterion_1_kronecker_skyscraper_twist_equivalence() {
    let alg = presets::kronecker();
    let f = r_lambda(&alg, 1);

    let report = classify(&f).unwrap();
    assert_eq!(
        report.classification,
        Classification::Spherelike { d: 1, flavor: Flavor::NotApplicable }
    );

    let data = asphericality(&f).unwrap();
    assert!(data.q.is_zero(), "asphericality of the skyscraper model must vanish");

    let corpus = kronecker_corpus(&alg);
    let twisted: Vec<PerfectComplex> = corpus.iter().map(|a| twist(&f, a).unwrap()).collect();

    // Hom-dimension tables preserved exactly on all pairs
    for (i, a) in corpus.iter().enumerate() {
        for (j, b) in corpus.iter().enumerate() {
            assert_eq!(
                hom_table(a, b),
                hom_table(&twisted[i], &twisted[j]),
                "twist broke the Hom table of pair ({}, {})",
                i,
                j
            );
        }
    }

    // left adjoint inverts the twist object-by-object
    for (i, a) in corpus.iter().enumerate() {
        let back = twist_left(&f, &twisted[i]).unwrap();
        assert!(
            is_isomorphic(&back, a, SEED, TRIALS).unwrap(),
            "T^l∘T failed to return corpus object {}",
            i
        );
    }

    println!("[acceptance] criterion 1 (Kronecker skyscraper twist equivalence): PASS");
}

#[test]
fn criterion_2_properly_spherelike_instance() {
    let alg = presets::bound_a3();
    let f = PerfectComplex::stalk(alg.clone(), 0, vec![0, 2]);

    let report = classify(&f).unwrap();
    assert_eq!(
        report.classification,
        Classification::Spherelike { d: 0, flavor: Flavor::Disconnected }
    );

    let data = asphericality(&f).unwrap();
    assert!(!data.q.is_zero(), "Q must be nonzero for the properly spherelike pair");

    // orthogonality of F against Q, degree-wise
    let h_fq = hom(&data.wdata.f, &data.q).unwrap();
    assert_eq!(h_fq.total_dim(), 0, "Hom•(F, Q) must vanish degree-wise");

    // the connecting map keeps Q attached to F
    let h_qf = hom(&data.q, &data.wdata.f).unwrap();
    assert!(h_qf.dim(1) > 0, "Hom¹(Q, F) must be nonzero");

    // Calabi-Yau pairing on the corpus: members pass, some non-member fails
    let corpus = a3_corpus(&alg);
    let verdicts = check_calabi_yau(&data, &corpus).unwrap();
    let mut member_count = 0;
    let mut failing_nonmember = false;
    for (i, v) in verdicts.iter().enumerate() {
        if v.member {
            member_count += 1;
            assert!(
                v.dims_ok && v.pairing_ok,
                "member {} failed the CY(0) pairing",
                i
            );
        } else if !v.dims_ok || !v.pairing_ok {
            failing_nonmember = true;
        }
    }
    assert!(member_count > 0, "corpus must contain members");
    assert!(
        failing_nonmember,
        "at least one non-member must fail the CY(0) pairing"
    );

    println!("[acceptance] criterion 2 (properly spherelike instance over bound A3): PASS");
}

#[test]
fn criterion_3_choice_of_w_suite() {
    // disconnected, nonzero asphericality: two admissible choices agree
    let alg3 = presets::bound_a3();
    let f3 = PerfectComplex::stalk(alg3.clone(), 0, vec![0, 2]);
    let q_a = asphericality(&f3).unwrap().q;
    let q_b = asphericality_with(
        &f3,
        &WChoice::Disconnected { a1: scalar_int(2), a2: scalar_int(3) },
    )
    .unwrap()
    .q;
    assert!(
        is_isomorphic(&q_a, &q_b, SEED, TRIALS).unwrap(),
        "different admissible disconnected choices must give isomorphic Q"
    );

    // d ≠ 0: the scalar is free
    let algk = presets::kronecker();
    let fk = r_lambda(&algk, 2);
    let q_c = asphericality(&fk).unwrap().q;
    let q_d = asphericality_with(&fk, &WChoice::Scalar(scalar_int(5))).unwrap().q;
    assert!(is_isomorphic(&q_c, &q_d, SEED, TRIALS).unwrap());

    // dropping an idempotent coefficient splits the summand off Q
    let data = asphericality(&f3).unwrap();
    let WChoiceRecord::Disconnected { s2, .. } = &data.wdata.record else {
        panic!("expected the disconnected record");
    };
    let q_bad = aspherical_cone_from_map(s2).unwrap();
    let e1 = PerfectComplex::stalk(alg3.clone(), 0, vec![0]);
    let h = hom(&e1, &q_bad).unwrap();
    let mut split_mono = false;
    for b in h.basis(0) {
        let complement = spherelike::complex::cone(b).unwrap().minimize();
        let total_q: usize = q_bad.degrees().map(|d| q_bad.term(d).len()).sum();
        let total_c: usize = complement.degrees().map(|d| complement.term(d).len()).sum();
        if total_c + 1 == total_q {
            split_mono = true;
            break;
        }
    }
    assert!(split_mono, "E1 must appear as a direct summand of the degenerate Q");

    // nilpotent branch on the supplied example: ι∘ε ≃ 0 and φ∘ε ≃ ι
    let alga = presets::auslander_dual_numbers();
    let fa = PerfectComplex::stalk(alga.clone(), 0, vec![0]);
    let data_a = asphericality(&fa).unwrap();
    let WChoiceRecord::Nilpotent { iota, phi, eps, .. } = &data_a.wdata.record else {
        panic!("expected the nilpotent record");
    };
    let h_om = hom(&data_a.wdata.f, &data_a.wdata.omega).unwrap();
    let ie = iota.compose(eps).unwrap();
    assert!(h_om.is_coboundary(0, &ie).unwrap(), "ι∘ε must be null-homotopic");
    let pe = phi.compose(eps).unwrap();
    let delta = pe.add(&iota.scale(&-Scalar::from_integer(1.into()))).unwrap();
    assert!(h_om.is_coboundary(0, &delta).unwrap(), "φ∘ε must be homotopic to ι");
    // and the two admissible nilpotent choices agree (both give Q = 0 here)
    let q_n1 = data_a.q.clone();
    let q_n2 = asphericality_with(
        &fa,
        &WChoice::Nilpotent { a: scalar_int(1), b: scalar_int(1) },
    )
    .unwrap()
    .q;
    assert!(is_isomorphic(&q_n1, &q_n2, SEED, TRIALS).unwrap());

    println!("[acceptance] criterion 3 (choice-of-w suite): PASS");
}

#[test]
fn criterion_4_hom_table_preservation_both_directions() {
    // every spherelike object in the bundled corpus preserves its table
    let algk = presets::kronecker();
    let alg3 = presets::bound_a3();
    let algs = presets::semisimple_two();
    let alga = presets::auslander_dual_numbers();
    let spherelikes = vec![
        r_lambda(&algk, 0),
        r_lambda(&algk, 1),
        PerfectComplex::stalk(alg3, 0, vec![0, 2]),
        PerfectComplex::stalk(algs, 0, vec![0, 1]),
        PerfectComplex::stalk(alga, 0, vec![0]),
    ];
    for f in &spherelikes {
        assert!(matches!(
            classify(f).unwrap().classification,
            Classification::Spherelike { .. }
        ));
        let tf = twist(f, f).unwrap();
        assert_eq!(
            hom_table(f, f),
            hom_table(&tf, &tf),
            "spherelike object failed to preserve its Hom table"
        );
    }

    // ... and the non-spherelike P(1) ⊕ P(2) over Kronecker must fail
    let g = PerfectComplex::stalk(algk.clone(), 0, vec![0, 1]);
    let h_gg = hom(&g, &g).unwrap();
    assert_eq!(h_gg.total_dim(), 4, "End(P1 ⊕ P2) must be four-dimensional");
    assert!(matches!(
        classify(&g).unwrap().classification,
        Classification::Other
    ));
    let tg = twist(&g, &g).unwrap();
    assert_ne!(
        hom_table(&g, &g),
        hom_table(&tg, &tg),
        "a non-spherelike object must break the Hom table under its twist"
    );

    println!("[acceptance] criterion 4 (Hom-table preservation, both directions): PASS");
}

#[test]
fn criterion_5_euler_cross_check() {
    let algk = presets::kronecker();
    let alg3 = presets::bound_a3();
    let algs = presets::semisimple_two();
    let alga = presets::auslander_dual_numbers();

    let mut pairs = 0usize;
    let mut families: Vec<Vec<PerfectComplex>> = vec![
        kronecker_corpus(&algk),
        a3_corpus(&alg3),
        vec![
            PerfectComplex::stalk(algs.clone(), 0, vec![0]),
            PerfectComplex::stalk(algs.clone(), 0, vec![1]),
            PerfectComplex::stalk(algs.clone(), 0, vec![0, 1]),
        ],
        vec![
            PerfectComplex::stalk(alga.clone(), 0, vec![0]),
            PerfectComplex::stalk(alga.clone(), 0, vec![1]),
            projective_resolution(&simple(&alga, 0)).unwrap(),
            projective_resolution(&simple(&alga, 1)).unwrap(),
        ],
    ];
    // spice the Auslander family with a twist image
    let fa = PerfectComplex::stalk(alga.clone(), 0, vec![0]);
    let pa = families[3][1].clone();
    families[3].push(twist(&fa, &pa).unwrap());

    for family in &families {
        for a in family {
            for b in family {
                let via_hom = hom(a, b).unwrap().euler();
                let direct = euler_pairing_complexes(a, b).unwrap();
                assert_eq!(via_hom, direct, "Euler cross-check failed");
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 50, "only {} pairs exercised", pairs);

    println!(
        "[acceptance] criterion 5 (Euler cross-check, {} pairs): PASS",
        pairs
    );
}

#[test]
fn criterion_6_kgroup_reflections() {
    // t_f(f) = −f in a fixed lattice
    let l = KLattice::new(vec![vec![2, 1], vec![1, 2]]).unwrap();
    let f = vec![1, 0];
    assert_eq!(reflect(&l, &f, &f).unwrap(), vec![-1, 0]);

    // involution identity on a basis for 100 seeded random lattices
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rank = rng.gen_range(2..=5);
        let mut euler = vec![vec![0i64; rank]; rank];
        for row in euler.iter_mut() {
            for entry in row.iter_mut() {
                *entry = rng.gen_range(-5..=5);
            }
        }
        euler[0][0] = 2;
        let lat = KLattice::new(euler).unwrap();
        let mut fv = vec![0i64; rank];
        fv[0] = 1;
        assert!(
            check_involution(&lat, &fv, 8, seed).unwrap(),
            "involution failed for seeded lattice {}",
            seed
        );
    }

    // commute for s = 0, braid for s = ±1 — exact operator identities
    let orth = KLattice::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
    assert_eq!(
        check_braid(&orth, &[1, 0], &[0, 1]).unwrap(),
        BraidVerdict::Commute
    );
    let plus = KLattice::new(vec![vec![2, 1], vec![1, 2]]).unwrap();
    assert_eq!(
        check_braid(&plus, &[1, 0], &[0, 1]).unwrap(),
        BraidVerdict::Braid
    );
    let minus = KLattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
    assert_eq!(
        check_braid(&minus, &[1, 0], &[0, 1]).unwrap(),
        BraidVerdict::Braid
    );

    println!("[acceptance] criterion 6 (K-group reflection calculus): PASS");
}

#[test]
fn criterion_7_surface_class_reproductions() {
    // K3 table row: χ(O, O) = 2
    let k3 = surfaces::k3_with_minus_two_curve();
    let o = KClass::structure_sheaf(&k3);
    assert_eq!(euler_pairing_surface(&k3, &o, &o).unwrap(), scalar_int(2));

    // (−2)-curve: χ(O_C, O_C) = 2
    let oc = curve_sheaf_class(&k3, &[1], 0).unwrap();
    assert_eq!(oc, KClass::new(0, vec![1], scalar_int(1)));
    assert_eq!(euler_pairing_surface(&k3, &oc, &oc).unwrap(), scalar_int(2));

    // pairings of honest sheaf classes are integers
    for e in [&o, &oc] {
        for f in [&o, &oc] {
            spherelike::kgroup::expect_integer(&euler_pairing_surface(&k3, e, f).unwrap())
                .expect("sheaf-class pairing must be integral");
        }
    }

    // blow up a point on the curve: the pulled-back class stays 2-spherelike
    // at class level and its canonical twist difference vanishes in K
    let blown = k3.blow_up();
    let f = oc.pullback(&blown).unwrap(); // class of the total transform
    assert_eq!(
        euler_pairing_surface(&blown, &f, &f).unwrap(),
        scalar_int(2)
    );
    let twist_diff = f.tensor_canonical(&blown).unwrap().sub(&f);
    assert_eq!(twist_diff, KClass::new(0, vec![0, 0], scalar_int(0)));
    // matching [O_R(−1) ⊕ O_R(−1)[1]] = 0 in the K-group
    let exceptional = {
        let mut r = vec![0i64; blown.rank()];
        r[blown.rank() - 1] = 1;
        r
    };
    let o_r_minus_1 = curve_sheaf_class(&blown, &exceptional, -1).unwrap();
    let q_class = o_r_minus_1.sub(&o_r_minus_1);
    assert_eq!(q_class, KClass::new(0, vec![0, 0], scalar_int(0)));
    // the structure-sheaf shadow of the non-orthogonality survives in K
    let pulled_o = o.pullback(&blown).unwrap();
    assert_ne!(
        euler_pairing_surface(&blown, &o_r_minus_1, &pulled_o).unwrap(),
        Scalar::from_integer(0.into())
    );

    // ruled surface of genus one: [Q] = (0, −2P, 2) = −2·[O_P(−1)]
    let ruled = surfaces::ruled_genus_one();
    let fibre = vec![0i64, 1];
    let f_class = curve_sheaf_class(&ruled, &fibre, 0).unwrap();
    // ω(F) = F⊗ω[1] for d = 1, so [Q] = −[F⊗ω] − [F]
    let q = f_class
        .tensor_canonical(&ruled)
        .unwrap()
        .neg()
        .sub(&f_class);
    assert_eq!(q, KClass::new(0, vec![0, -2], scalar_int(2)));
    let o_p_minus_1 = curve_sheaf_class(&ruled, &fibre, -1).unwrap();
    assert_eq!(q, o_p_minus_1.scale(-2));

    // pullback preserves 20 seeded random pairings exactly
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let blown_ruled = ruled.blow_up();
    for _ in 0..20 {
        let mk = |rng: &mut ChaCha8Rng| {
            KClass::new(
                rng.gen_range(-3..=3),
                vec![rng.gen_range(-4..=4), rng.gen_range(-4..=4)],
                Scalar::new(rng.gen_range(-6..=6).into(), 2.into()),
            )
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let before = euler_pairing_surface(&ruled, &a, &b).unwrap();
        let after = euler_pairing_surface(
            &blown_ruled,
            &a.pullback(&blown_ruled).unwrap(),
            &b.pullback(&blown_ruled).unwrap(),
        )
        .unwrap();
        assert_eq!(before, after, "pullback changed a pairing");
    }

    println!("[acceptance] criterion 7 (surface class-level reproductions): PASS");
}

/// Membership verdicts used as pinned regression values by the CLI suite.
#[test]
fn regression_membership_verdicts_bound_a3() {
    let alg = presets::bound_a3();
    let f = PerfectComplex::stalk(alg.clone(), 0, vec![0, 2]);
    let data = asphericality(&f).unwrap();

    let expectations: Vec<(&str, PerfectComplex, bool)> = vec![
        ("F", f.clone(), true),
        ("P1", PerfectComplex::stalk(alg.clone(), 0, vec![0]), true),
        ("P3", PerfectComplex::stalk(alg.clone(), 0, vec![2]), true),
        ("zero", PerfectComplex::zero(alg.clone()), true),
        ("P2", PerfectComplex::stalk(alg.clone(), 0, vec![1]), false),
        (
            "res S2",
            projective_resolution(&simple(&alg, 1)).unwrap(),
            false,
        ),
    ];
    for (name, u, expected) in expectations {
        assert_eq!(
            in_spherical_subcategory(&u, &data).unwrap(),
            expected,
            "membership of {} drifted",
            name
        );
    }
    println!("[acceptance] pinned membership verdicts over bound A3: PASS");
}
