mod common;

use common::*;
use mobi_core::axioms::{
    check_derived_properties, check_full_medial, check_imm, check_imm_star, check_mobi, check_ring, check_structure,
    laws, run_law, AxiomProfile, Mode, MobiProfile, Report, Status, Verdict,
};
use mobi_core::exemplars::{finite_fixtures, finite_mobi_examples, ExampleId};
use mobi_core::model::{Carrier, MobiStructure, OpImpl, RingStructure, SampleSpec, Structure, Table, Value};
use mobi_core::search::{enumerate_mobi, EnumerationTask};
use mobi_core::transforms::{derive_imm_from_mobi, ring_to_mobi};
use proptest::prelude::*;

fn statuses(r: &Report) -> Vec<(String, Status)> {
    r.results.iter().map(|x| (x.axiom.clone(), x.status)).collect()
}

fn replace_p(m: &MobiStructure, f: impl Fn(&mut Vec<u32>)) -> MobiStructure {
    let t = m.p_op().table().unwrap();
    let mut cells = t.cells().to_vec();
    f(&mut cells);
    MobiStructure::new(
        m.name(),
        m.carrier().clone(),
        OpImpl::Table(Table::new(t.size(), 3, cells).unwrap()),
        m.zero().clone(),
        m.half().clone(),
        m.one().clone(),
    )
    .unwrap()
}

/// A1 to A8 evaluated straight from a raw table, for witness re-checks.
fn mobi_law_holds(law: &str, n: usize, t: &[u32], z: usize, h: usize, o: usize, w: &[usize]) -> bool {
    let p = |a: usize, b: usize, c: usize| t[(a * n + b) * n + c] as usize;
    match law {
        "A1" => p(o, h, z) == h,
        "A2" => p(z, w[0], o) == w[0],
        "A3" => p(w[0], w[1], w[0]) == w[0],
        "A4" => p(w[0], z, w[1]) == w[0],
        "A5" => p(w[0], o, w[1]) == w[1],
        "A6" => p(w[0], h, w[2]) != p(w[1], h, w[2]) || w[0] == w[1],
        "A7" => {
            let (a, c1, c2, c3, b) = (w[0], w[1], w[2], w[3], w[4]);
            p(a, p(c1, c2, c3), b) == p(p(a, c1, b), c2, p(a, c3, b))
        }
        "A8" => {
            let (a1, b1, a2, b2, c) = (w[0], w[1], w[2], w[3], w[4]);
            p(p(a1, c, b1), h, p(a2, c, b2)) == p(p(a1, h, a2), c, p(b1, h, b2))
        }
        other => panic!("no oracle for {other}"),
    }
}

fn witness_indices(s: &Structure, witness: &[String]) -> Vec<usize> {
    witness.iter().map(|l| s.carrier().position(l).unwrap()).collect()
}

#[test]
fn example6_passes_every_mobi_axiom() {
    let m = mobi(ExampleId::ThreeElement);
    let r = check_mobi(&m, MobiProfile::Full, None).unwrap();
    assert_eq!(r.mode, "exhaustive");
    assert!(r.passed(), "{:?}", statuses(&r));
    let ids: Vec<_> = r.results.iter().map(|x| x.axiom.as_str()).collect();
    assert_eq!(ids, ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"]);
    assert_eq!(r.result("A6").unwrap().checked, 27);
    assert_eq!(r.result("A7").unwrap().checked, 243);
}

#[test]
fn interval_passes_on_a_thousand_samples() {
    let m = mobi(ExampleId::Interval);
    let r = check_mobi(&m, MobiProfile::Full, Some(&SampleSpec::default())).unwrap();
    assert_eq!(r.mode, "sampled");
    assert!(r.passed(), "{:?}", statuses(&r));
    assert_eq!(r.result("A7").unwrap().checked, 1000);
}

#[test]
fn mutated_example6_fails_cancellation_at_the_first_colliding_pair() {
    let m = mobi(ExampleId::ThreeElement);
    let s = Structure::Mobi(m.clone());
    let (zero, half) = (0usize, 1usize);
    let target = (zero * 3 + half) * 3 + half;
    let bad = replace_p(&m, |c| {
        assert_eq!(c[target], 2, "p(0,½,½) is 1 in the original table");
        c[target] = 0;
    });
    let r = check_mobi(&bad, MobiProfile::Full, None).unwrap();
    let a6 = r.result("A6").unwrap();
    assert_eq!(a6.status, Status::Fail);

    // Oracle: scan (a, a', b) in lexicographic order for p(a,½,b) = p(a',½,b), a ≠ a'.
    let t = bad.p_op().table().unwrap().cells().to_vec();
    let p = |a: usize, b: usize, c: usize| t[(a * 3 + b) * 3 + c];
    let mut expected = None;
    'scan: for a in 0..3 {
        for a2 in 0..3 {
            for b in 0..3 {
                if a != a2 && p(a, half, b) == p(a2, half, b) {
                    expected = Some(vec![a, a2, b]);
                    break 'scan;
                }
            }
        }
    }
    let expected = expected.expect("the mutation creates a collision");
    assert_eq!(witness_indices(&s, &a6.witness), expected);
    assert_eq!(a6.witness, ["0", "1", "½"]);
    // (a=0, a′=½, b=½) is not a collision in the mutated table.
    assert_ne!(p(0, half, half), p(half, half, half));
}

#[test]
fn imm_fixtures_pass_b1_to_b10() {
    for id in [ExampleId::Imm1, ExampleId::Imm2, ExampleId::Imm3, ExampleId::Section4Imm] {
        let r = check_imm(&imm(id.clone()), None).unwrap();
        assert!(r.passed(), "{id:?}: {:?}", statuses(&r));
        assert_eq!(r.results.len(), 10);
    }
}

#[test]
fn cancellation_is_inherited_from_a6() {
    let b = derive_imm_from_mobi(&mobi(ExampleId::ThreeElement)).unwrap();
    let r = check_imm_star(&b, None).unwrap();
    assert!(r.passed(), "{:?}", statuses(&r));
}

#[test]
fn non_cancellative_imms_fail_c3_with_sound_witnesses() {
    for id in [ExampleId::Imm2, ExampleId::Imm3, ExampleId::Section4Imm] {
        let s = fixture(id.clone());
        let b = s.as_imm().unwrap();
        let r = check_imm_star(b, None).unwrap();
        let c3 = r.result("C3").unwrap();
        assert_eq!(c3.status, Status::Fail, "{id:?}");
        let w = &c3.witness_values;
        assert_ne!(w[0], w[1]);
        assert_eq!(b.oplus(&w[0], &w[2]).unwrap(), b.oplus(&w[1], &w[2]).unwrap());
        assert_eq!(r.failures().count(), 1, "{id:?}: only cancellation fails");
    }
    // α⊕½ = 0⊕½ = ½ in the IMM 2 table.
    let s = fixture(ExampleId::Imm2);
    let b = s.as_imm().unwrap();
    let half = el(&s, "½");
    assert_eq!(b.oplus(&el(&s, "α"), &half).unwrap(), half);
    assert_eq!(b.oplus(&el(&s, "0"), &half).unwrap(), half);
}

#[test]
fn modular_rings() {
    assert!(check_ring(&ring(ExampleId::Zmod(5)), None).unwrap().passed());
    assert!(check_ring(&ring(ExampleId::Zmod(6)), None).unwrap().passed());
}

#[test]
fn corrupted_product_breaks_distributivity() {
    let z5 = ring(ExampleId::Zmod(5));
    let mut mul = z5.mul_op().table().unwrap().clone();
    assert_eq!(mul.get(&[2, 3]), 1);
    mul.set(&[2, 3], 0);
    let bad = RingStructure::new(
        "Z5*",
        z5.carrier().clone(),
        z5.add_op().clone(),
        OpImpl::Table(mul),
        z5.neg_op().clone(),
        z5.zero().clone(),
        z5.one().clone(),
    )
    .unwrap();
    let r = check_ring(&bad, None).unwrap();
    let r7 = r.result("R7").unwrap();
    assert_eq!(r7.status, Status::Fail);
    let w = &r7.witness_values;
    let (a, b, c) = (&w[0], &w[1], &w[2]);
    let left = bad.mul(a, &bad.add(b, c).unwrap()).unwrap()
        == bad.add(&bad.mul(a, b).unwrap(), &bad.mul(a, c).unwrap()).unwrap();
    let right = bad.mul(&bad.add(a, b).unwrap(), c).unwrap()
        == bad.add(&bad.mul(a, c).unwrap(), &bad.mul(b, c).unwrap()).unwrap();
    assert!(!(left && right));
}

#[test]
fn example6_derived_identities() {
    let m = mobi(ExampleId::ThreeElement);
    let r = check_derived_properties(&Structure::Mobi(m), None).unwrap();
    assert!(r.passed(), "{:?}", statuses(&r));
    assert_eq!(r.result("P22").unwrap().checked, 9);
    assert_eq!(r.result("half-dot-p").unwrap().checked, 27);
}

#[test]
fn imm1_half_dot_is_bar_one_oplus() {
    let r = check_derived_properties(&fixture(ExampleId::Imm1), None).unwrap();
    assert!(r.passed(), "{:?}", statuses(&r));
    assert_eq!(r.result("IMMP4").unwrap().checked, 5);
    assert_eq!(r.profile, AxiomProfile::DerivedImmStarProps.id());
}

#[test]
fn non_cancellative_imms_skip_the_starred_identities() {
    let r = check_derived_properties(&fixture(ExampleId::Section4Imm), None).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.result("IMMP*1").unwrap().status, Status::Skipped);
    assert_eq!(r.result("IMMP5").unwrap().status, Status::Pass);
}

fn dot_commutative(m: &MobiStructure) -> bool {
    let n = m.carrier().size().unwrap();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let (a, b) = (Value::Label(a), Value::Label(b));
            m.dot(&a, &b).unwrap() == m.dot(&b, &a).unwrap()
        })
    })
}

#[test]
fn full_medial_law_on_commutative_and_matrix_rings() {
    let z5 = ring_to_mobi(&ring(ExampleId::Zmod(5))).unwrap();
    assert!(check_full_medial(&z5, None).unwrap().passed());

    let m2 = ring_to_mobi(&ring(ExampleId::MatrixZmod { modulus: 3, dim: 2 })).unwrap();
    let r = check_full_medial(&m2, None).unwrap();
    let law = r.result("full-medial").unwrap();
    assert_eq!(law.status, Status::Fail);
    assert_eq!(law.witness.len(), 6);
    let w = &law.witness_values;
    let p = |a: &Value, b: &Value, c: &Value| m2.p(a, b, c).unwrap();
    let (a1, b1, a2, b2, c, d) = (&w[0], &w[1], &w[2], &w[3], &w[4], &w[5]);
    assert_ne!(p(&p(a1, c, b1), d, &p(a2, c, b2)), p(&p(a1, d, a2), c, &p(b1, d, b2)));
    assert!(!dot_commutative(&m2));

    // the one-element mobi, induced by the zero ring
    let trivial = mobi(ExampleId::Zmod(1));
    assert!(check_full_medial(&trivial, None).unwrap().passed());
}

/// Mobi fixtures directly, ring fixtures through ring_to_mobi.
fn mobi(id: ExampleId) -> MobiStructure {
    match common::fixture(id) {
        Structure::Mobi(m) => m,
        Structure::Ring(r) => ring_to_mobi(&r).unwrap(),
        other => panic!("not a mobi: {}", other.name()),
    }
}

#[test]
fn full_medial_iff_commutative_dot() {
    let mut all: Vec<MobiStructure> = finite_mobi_examples().into_iter().map(mobi).collect();
    for n in [3, 5] {
        all.extend(enumerate_mobi(&EnumerationTask::new(n, false)).unwrap().structures);
    }
    all.push(ring_to_mobi(&ring(ExampleId::MatrixZmod { modulus: 3, dim: 2 })).unwrap());
    for m in all {
        let medial = check_full_medial(&m, None).unwrap().passed();
        assert_eq!(medial, dot_commutative(&m), "{}", m.name());
    }
}

#[test]
fn passing_mobi_fixtures_satisfy_every_derived_identity() {
    for id in finite_mobi_examples() {
        let m = mobi(id.clone());
        assert!(check_mobi(&m, MobiProfile::Full, None).unwrap().passed(), "{id:?}");
        let r = check_derived_properties(&Structure::Mobi(m), None).unwrap();
        assert!(r.passed(), "{id:?}: {:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn reports_are_deterministic() {
    for s in [fixture(ExampleId::Planar), fixture(ExampleId::ReciprocalInterval), fixture(ExampleId::Imm2)] {
        let spec = SampleSpec::new(7, 300);
        let a = check_structure(&s, None, Some(&spec)).unwrap().to_json().to_string();
        let b = check_structure(&s, None, Some(&spec)).unwrap().to_json().to_string();
        assert_eq!(a, b);
    }
}

#[test]
fn dagger_profile_skips_cancellation() {
    let r = check_mobi(&mobi(ExampleId::ThreeElement), MobiProfile::Dagger, None).unwrap();
    assert_eq!(r.result("A6").unwrap().status, Status::Skipped);
    assert!(r.passed());
}

#[test]
fn exhaustive_cap_is_explicit() {
    let m = mobi(ExampleId::ThreeElement);
    let law = &laws::full_medial();
    let capped = run_law(&m, m.carrier(), law, &Mode::Exhaustive { n: 3, cap: 100 }, 0);
    assert_eq!(capped.status, Status::CapExceeded);
    assert_eq!(capped.checked, 100);
    assert!(capped.note.unwrap().contains("cap"));

    // A failure found before the cap is still reported as a failure.
    let m2 = ring_to_mobi(&ring(ExampleId::MatrixZmod { modulus: 3, dim: 2 })).unwrap();
    let r = run_law(&m2, m2.carrier(), law, &Mode::Exhaustive { n: 81, cap: 1_000_000 }, 0);
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn profiles_must_match_the_kind() {
    let err = check_structure(&fixture(ExampleId::Zmod(5)), Some(AxiomProfile::MobiFull), None).unwrap_err();
    assert!(err.to_string().contains("does not apply"));
}

#[test]
fn rational_carriers_without_sampling_are_rejected() {
    let m = mobi(ExampleId::Interval);
    let bare = MobiStructure::new(
        "bare",
        Carrier::Rational { domain: m.carrier().domain().unwrap().clone(), sampling: None },
        m.p_op().clone(),
        m.zero().clone(),
        m.half().clone(),
        m.one().clone(),
    )
    .unwrap();
    assert!(check_mobi(&bare, MobiProfile::Full, None).is_err());
    assert!(check_mobi(&bare, MobiProfile::Full, Some(&SampleSpec::new(1, 10))).unwrap().passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Every failure the checker reports is a genuine counterexample.
    #[test]
    fn witnesses_are_sound(cells in proptest::collection::vec(0u32..3, 27)) {
        let carrier = Carrier::finite(["0", "h", "1"]);
        let m = MobiStructure::new(
            "random",
            carrier,
            OpImpl::Table(Table::new(3, 3, cells.clone()).unwrap()),
            Value::Label(0),
            Value::Label(1),
            Value::Label(2),
        )
        .unwrap();
        let s = Structure::Mobi(m.clone());
        let r = check_mobi(&m, MobiProfile::Full, None).unwrap();
        for f in r.failures() {
            let w = witness_indices(&s, &f.witness);
            prop_assert!(!mobi_law_holds(&f.axiom, 3, &cells, 0, 1, 2, &w), "{} at {:?}", f.axiom, w);
        }
        for ok in r.results.iter().filter(|x| x.passed()) {
            // passing laws hold at every tuple
            let arity = ok.variables.len();
            for t in 0..3usize.pow(arity as u32) {
                let w: Vec<usize> = (0..arity).map(|i| t / 3usize.pow(i as u32) % 3).collect();
                prop_assert!(mobi_law_holds(&ok.axiom, 3, &cells, 0, 1, 2, &w));
            }
        }
    }
}

#[test]
fn finite_fixture_profiles() {
    for id in finite_fixtures() {
        let s = fixture(id.clone());
        let r = check_structure(&s, None, None).unwrap();
        assert!(r.passed(), "{id:?}: {:?}", r.failures().collect::<Vec<_>>());
    }
}
