mod common;

use common::{analyze, corpus_ring, ring};
use koszulres_core::resolution::construction::GroupKind;
use koszulres_core::resolution::SIGN_FLIPS;
use koszulres_core::{corpus, oracle_betti, Fault, HomologyAlgebra, ResolutionF};

#[test]
fn flagship_resolution_verifies() {
    let an = analyze("flagship");
    let f = an.resolution();
    assert_eq!(f.ranks(), vec![1, 4, 13, 40, 121, 364]);
    let v = f.verify().unwrap();
    assert!(v.complex.ok(), "{:?}", v.complex.failures);
    assert!(v.exactness.ok() && v.exactness.augmentation_ok && !v.exactness.truncated);
    assert!(v.minimality.ok(), "{:?}", v.minimality.offending);
    let o = oracle_betti(an.ring.as_ref(), 5).unwrap();
    assert!(!o.truncated);
    assert_eq!(o.graded, f.graded_ranks());
    assert_eq!(o.totals(), vec![1, 4, 13, 40, 121, 364]);
}

#[test]
fn corpus_resolutions_agree_with_oracle_and_formula() {
    for entry in corpus::CORPUS.iter().filter(|e| e.name != "flagship") {
        let an = analyze(entry.name);
        let f = an.resolution();
        let v = f.verify().unwrap();
        assert!(v.ok(), "{}: {:?}", entry.name, v.exactness.failures());
        let o = oracle_betti(an.ring.as_ref(), 5).unwrap();
        assert!(o.agrees_with(&f.graded_ranks()), "{}", entry.name);
        let betti: Vec<usize> = an.invariants.betti.iter().map(|&b| b as usize).collect();
        assert_eq!(f.ranks(), betti, "{}", entry.name);
        assert_eq!(o.truncated, !an.ring.is_artinian(), "{}", entry.name);
        if !o.truncated {
            assert_eq!(o.totals(), betti, "{}", entry.name);
        }
    }
}

#[test]
fn seeded_sign_flips_are_caught() {
    let f = analyze("flagship").resolution();
    for fault in SIGN_FLIPS.iter() {
        let mut g = f.clone();
        g.inject(fault).unwrap();
        let v = g.verify().unwrap();
        assert!(
            !v.complex.ok() || !v.exactness.ok(),
            "{fault} went undetected"
        );
    }
}

#[test]
fn dropping_a_group_breaks_exactness() {
    let mut f = analyze("flagship").resolution();
    f.inject(&Fault::DropGroup(GroupKind::Z2Z1)).unwrap();
    let v = f.verify().unwrap();
    assert!(v.complex.ok());
    assert_eq!(v.exactness.first_failing_hdeg(), Some(4));
}

#[test]
fn unit_entry_breaks_minimality() {
    let mut f = analyze("flagship").resolution();
    f.inject(&Fault::UnitEntry { hdeg: 2 }).unwrap();
    assert!(!f.verify().unwrap().minimality.ok());
}

#[test]
fn fault_specs_round_trip() {
    for fault in SIGN_FLIPS.iter().cloned().chain([
        Fault::DropGroup(GroupKind::Pi4),
        Fault::UnitEntry { hdeg: 3 },
    ]) {
        assert_eq!(fault.to_string().parse::<Fault>().unwrap(), fault);
    }
    assert!("flip:d9:z1:K".parse::<Fault>().is_err());
    assert!("drop:nothing".parse::<Fault>().is_err());
}

#[test]
fn hypersurface_resolution_is_periodic() {
    let r = ring(&["x", "y"], &["x^3"], Some(10));
    let alg = HomologyAlgebra::compute(r.clone()).unwrap();
    let f = ResolutionF::build(&alg);
    assert_eq!(f.ranks(), vec![1, 2, 2, 2, 2, 2]);
    assert!(f.verify().unwrap().ok());
    assert!(oracle_betti(r.as_ref(), 5)
        .unwrap()
        .agrees_with(&f.graded_ranks()));
}

#[test]
fn complete_intersection_resolution() {
    let r = ring(&["x", "y", "z"], &["x^2", "y^2", "z^3"], None);
    let alg = HomologyAlgebra::compute(r.clone()).unwrap();
    let f = ResolutionF::build(&alg);
    // (1+t)^3 / (1-t^2)^3
    assert_eq!(f.ranks(), vec![1, 3, 6, 10, 15, 21]);
    assert!(f.verify().unwrap().ok());
    assert_eq!(
        oracle_betti(r.as_ref(), 5).unwrap().graded,
        f.graded_ranks()
    );
}

#[test]
fn graded_ranks_sum_to_ranks() {
    let f = analyze("golod-plane").resolution();
    let graded = f.graded_ranks();
    for (i, row) in graded.iter().enumerate() {
        assert_eq!(row.values().sum::<usize>(), f.ranks()[i]);
        // Linear resolution: F_i lives in degree i.
        assert_eq!(row.keys().copied().collect::<Vec<_>>(), vec![i]);
    }
    let _ = corpus_ring("golod-plane");
}
