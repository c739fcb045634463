mod common;

use common::{analyze, corpus_ring, corpus_ring_mod, koszul, ring, series_product};
use koszulres_core::homalg::massey_triple_elements;
use koszulres_core::{Analysis, CodepthSource, HomologyAlgebra};

fn summary<F: koszulres_core::Field>(
    alg: &HomologyAlgebra<F>,
) -> (Vec<usize>, [usize; 4], usize, usize) {
    (
        (1..=4).map(|i| alg.a(i)).collect(),
        [alg.q11(), alg.q12(), alg.q13(), alg.q22()],
        alg.a_rank(),
        alg.b,
    )
}

#[test]
fn flagship_invariants() {
    let an = analyze("flagship");
    assert_eq!(
        summary(&an.algebra),
        (vec![7, 15, 14, 5], [7, 10, 0, 2], 3, 0)
    );
    assert!(an.algebra.checks.all(), "{:?}", an.algebra.checks);
    assert_eq!(an.codepth.source, CodepthSource::Artinian);
    assert_eq!(an.invariants.defect, [0, 0, 0, 7, 45, 221]);
    assert_eq!(an.invariants.betti, [1, 4, 13, 40, 121, 364]);
    assert_eq!(
        an.invariants.denominator,
        series_product(&[(-1, 1), (-3, 1), (1, 4)])
    );
}

#[test]
fn flagship_hilbert_function() {
    let r = corpus_ring("flagship");
    assert_eq!(
        (0..=5).map(|j| r.dim(j)).collect::<Vec<_>>(),
        vec![1, 4, 9, 12, 9, 2]
    );
    assert_eq!(r.socle_degree(), Some(5));
}

#[test]
fn flagship_over_prime_field() {
    let alg = HomologyAlgebra::compute(corpus_ring_mod("flagship", 32003)).unwrap();
    assert_eq!(summary(&alg), (vec![7, 15, 14, 5], [7, 10, 0, 2], 3, 0));
}

#[test]
fn yoshino_rings() {
    for i in 1..=4usize {
        let an = analyze(&format!("yoshino{i}"));
        let alg = &an.algebra;
        assert!(alg.checks.all(), "I{i}: {:?}", alg.checks);
        assert_eq!(alg.a(1), 7, "I{i}");
        assert_eq!(alg.a(2), 10 + i, "I{i}");
        assert_eq!(alg.a(3), 7 + i, "I{i}");
        assert_eq!(alg.a(4), 3, "I{i}");
        assert_eq!(
            (alg.q11(), alg.q12(), alg.a_rank(), alg.b),
            (2 + i, 8, 3, 0),
            "I{i}"
        );
        assert_eq!(
            an.invariants.denominator,
            series_product(&[(-1, 1), (-3, 1), (1, 4)]),
            "I{i}"
        );
        assert!(an.invariants.round_trip);
    }
}

#[test]
fn roos_rings() {
    for i in 1..=2usize {
        let an = analyze(&format!("roos{i}"));
        let alg = &an.algebra;
        assert!(alg.warnings.is_empty(), "{:?}", alg.warnings);
        assert_eq!(
            (1..=4).map(|k| alg.a(k)).collect::<Vec<_>>(),
            vec![6, 10 + i, 7 + i, 2],
            "J{i}"
        );
        assert_eq!([alg.q11(), alg.q12(), alg.q13(), alg.q22()], [0; 4], "J{i}");
        assert_eq!((alg.a_rank(), alg.b), (1, 0), "J{i}");
        assert_eq!(alg.massey.span.rank(), 1, "J{i}");
        assert_eq!(an.codepth.source, CodepthSource::Declared);
        assert_eq!(an.invariants.defect[..5], [0; 5], "J{i}");
        assert_eq!(an.invariants.defect[5], 1, "J{i}");
    }
}

#[test]
fn golod_rings() {
    let plane = analyze("golod-plane");
    assert_eq!(plane.invariants.defect, [0; 6]);
    assert_eq!(plane.invariants.betti, [1, 2, 4, 8, 16, 32]);

    let dual = analyze("dual-numbers");
    assert_eq!(dual.invariants.betti, [1; 6]);
    assert_eq!(dual.invariants.deviations, [1, 1, 0, 0, 0]);
    assert_eq!(dual.algebra.massey.span.rank(), 0);
}

#[test]
fn flagship_massey_triple() {
    let an = analyze("flagship");
    let alg = &an.algebra;
    let r = alg.ring();
    let z1 = koszul(r, "w", &[4]);
    let z2 = koszul(r, "x^2", &[1]);
    let z4 = koszul(r, "y^2", &[2]);

    // [z2][z4] vanishes, so the triple is defined.
    let prod = alg.koszul().wedge(&z2, &z4).unwrap();
    assert!(alg.class_of(&prod).unwrap().is_empty());
    assert!(alg
        .class_of(&koszul(r, "x^2*y^2", &[1, 2]))
        .unwrap()
        .is_empty());

    let products = alg.p13.span.sum(&alg.p22.span, alg.desc()).unwrap();
    let triple = massey_triple_elements(alg, &z2, &z4, &z1).unwrap();
    assert!(!products
        .sum(&triple.indeterminacy, alg.desc())
        .unwrap()
        .contains(&triple.class));

    let target = alg.class_of(&koszul(r, "x*z^2*w", &[1, 2, 3, 4])).unwrap();
    assert!(!products.contains(&target));
    let with_target =
        koszulres_core::exactlin::Subspace::span(alg.a(4), alg.desc(), [&triple.class]);
    let combined = products.sum(&with_target, alg.desc()).unwrap();
    assert!(combined.contains(&target));
    assert_eq!(alg.massey.span.rank(), 1);
    assert!(alg
        .massey
        .span
        .sum(&products, alg.desc())
        .unwrap()
        .contains(&target));
}

#[test]
fn declared_depth_is_validated() {
    let r = ring(&["x", "y"], &["x^2"], Some(8));
    let an = Analysis::run(r.clone(), None).unwrap();
    assert_eq!(
        (an.codepth.value, an.codepth.source),
        (1, CodepthSource::Inferred)
    );
    assert!(Analysis::run(r.clone(), Some(1)).is_ok());
    assert!(Analysis::run(r, Some(0)).is_err());
}

#[test]
fn not_a_cycle_is_rejected() {
    let an = analyze("golod-plane");
    let alg = &an.algebra;
    let r = alg.ring();
    let t1 = koszul(r, "1", &[1]);
    let x = koszul(r, "x", &[1]);
    assert!(massey_triple_elements(alg, &t1, &x, &x).is_err());
}
