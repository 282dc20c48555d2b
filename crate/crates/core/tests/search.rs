mod common;

use common::*;
use mobi_core::axioms::{check_mobi, MobiProfile};
use mobi_core::exemplars::ExampleId;
use mobi_core::model::{Carrier, MobiStructure, OpImpl, Structure, Table, Value};
use mobi_core::search::*;
use mobi_core::transforms::{derive_imm_from_mobi, imm_star_to_mobi, imm_to_ring, mobi_to_ring, ring_to_mobi};
use proptest::prelude::*;

fn enumerate(n: usize, up_to_iso: bool) -> Enumeration {
    enumerate_mobi(&EnumerationTask::new(n, up_to_iso)).unwrap()
}

fn z_mobi(n: u32) -> MobiStructure {
    ring_to_mobi(&ring(ExampleId::Zmod(n))).unwrap()
}

/// `m` transported along `perm`: element `i` becomes `perm[i]`.
fn relabel(m: &MobiStructure, perm: &[usize]) -> MobiStructure {
    let n = perm.len();
    let mut inv = vec![0; n];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    let t = m.p_op().table().unwrap();
    let p = Table::from_fn(n, 3, |x| perm[t.get(&[inv[x[0]], inv[x[1]], inv[x[2]]])]);
    let labels = m.carrier().labels().unwrap();
    let carrier = Carrier::finite((0..n).map(|j| labels[inv[j]].clone()));
    let c = |v: &Value| Value::Label(perm[v.label().unwrap()]);
    MobiStructure::new("relabelled", carrier, OpImpl::Table(p), c(m.zero()), c(m.half()), c(m.one())).unwrap()
}

/// Mobi tables on `{0,1,2}` with constants `(0,1,2)`, found by brute force.
/// A4 and A5 pin the `b = 0` and `b = 1` slices, so only the nine cells of the
/// `b = ½` slice are free.
fn order3_oracle() -> Vec<Vec<u32>> {
    let mut found = Vec::new();
    for code in 0..3u32.pow(9) {
        let mut slice = [0u32; 9];
        let mut c = code;
        for s in slice.iter_mut() {
            *s = c % 3;
            c /= 3;
        }
        let t = Table::from_fn(3, 3, |x| match x[1] {
            0 => x[0],
            2 => x[2],
            _ => slice[x[0] * 3 + x[2]] as usize,
        });
        let cells = t.cells().to_vec();
        let m = MobiStructure::new(
            "candidate",
            Carrier::finite(element_labels(3)),
            OpImpl::Table(t),
            Value::Label(0),
            Value::Label(1),
            Value::Label(2),
        )
        .unwrap();
        if check_mobi(&m, MobiProfile::Full, None).unwrap().passed() {
            found.push(cells);
        }
    }
    found
}

#[test]
fn small_orders() {
    let one = enumerate(1, false);
    assert_eq!((one.count(), one.labeled), (1, 1));
    let trivial = &one.structures[0];
    assert!(trivial.zero() == trivial.half() && trivial.half() == trivial.one());
    for n in [2, 4, 6, 8] {
        let e = enumerate(n, true);
        assert_eq!((e.count(), e.labeled), (0, 0), "order {n}");
        assert!(e.parity_pruned && !e.capped);
    }
}

#[test]
fn order2_brute_force() {
    // every table and every constant placement
    let carrier = Carrier::finite(element_labels(2));
    for code in 0..256u32 {
        let t = Table::new(2, 3, (0..8).map(|i| (code >> i) & 1).collect()).unwrap();
        for k in 0..8usize {
            let m = MobiStructure::new(
                "candidate",
                carrier.clone(),
                OpImpl::Table(t.clone()),
                Value::Label(k & 1),
                Value::Label(k >> 1 & 1),
                Value::Label(k >> 2 & 1),
            )
            .unwrap();
            assert!(!check_mobi(&m, MobiProfile::Full, None).unwrap().passed());
        }
    }
}

#[test]
fn order3_matches_brute_force_and_example6() {
    let all = enumerate(3, false);
    let mut got: Vec<Vec<u32>> = all
        .structures
        .iter()
        .filter(|m| [m.zero(), m.half(), m.one()] == [&Value::Label(0), &Value::Label(1), &Value::Label(2)])
        .map(|m| m.p_op().table().unwrap().cells().to_vec())
        .collect();
    got.sort();
    let mut oracle = order3_oracle();
    oracle.sort();
    assert_eq!(got, oracle);
    assert_eq!(all.labeled as usize, all.count());

    let classes = enumerate(3, true);
    assert_eq!(classes.count(), 1);
    let e6 = fixture(ExampleId::ThreeElement);
    assert!(find_isomorphism(&Structure::Mobi(classes.structures[0].clone()), &e6).unwrap().is_some());
}

#[test]
fn order5_is_z5() {
    let all = enumerate(5, false);
    assert_eq!(all.labeled, 2);
    let classes = enumerate(5, true);
    assert_eq!(classes.count(), 1);
    let z5 = Structure::Mobi(z_mobi(5));
    for m in &all.structures {
        assert!(find_isomorphism(&Structure::Mobi(m.clone()), &z5).unwrap().is_some());
    }
}

#[test]
fn emitted_structures_reverify() {
    for n in [1, 3, 5, 7] {
        for m in enumerate(n, false).structures {
            assert!(check_mobi(&m, MobiProfile::Full, None).unwrap().passed(), "{}", m.name());
        }
    }
}

#[test]
fn ring_counts() {
    let counts: Vec<usize> = (1..=9).map(|n| enumerate_rings_with_half(n).unwrap().rings.len()).collect();
    assert_eq!(counts, [1, 0, 1, 0, 1, 0, 1, 0, 4]);
    let z3 = fixture(ExampleId::Zmod(3));
    let r3 = enumerate_rings_with_half(3).unwrap().rings;
    assert!(find_isomorphism(&Structure::Ring(r3[0].clone()), &z3).unwrap().is_some());
    let r5 = enumerate_rings_with_half(5).unwrap().rings;
    assert!(find_isomorphism(&Structure::Ring(r5[0].clone()), &fixture(ExampleId::Zmod(5))).unwrap().is_some());
    assert!(enumerate_rings_with_half(10).is_err());
}

#[test]
fn abelian_group_presentations() {
    assert_eq!(abelian_groups(1), vec![Vec::<usize>::new()]);
    assert_eq!(abelian_groups(9).len(), 2);
    assert_eq!(abelian_groups(8).len(), 3);
    assert_eq!(abelian_groups(7), vec![vec![7]]);
}

#[test]
fn mobi_and_ring_classes_correspond() {
    for n in [1, 3, 5] {
        let mobis = enumerate(n, true).structures;
        let rings = enumerate_rings_with_half(n).unwrap().rings;
        assert_eq!(mobis.len(), rings.len(), "order {n}");
        for r in &rings {
            let m = Structure::Mobi(ring_to_mobi(r).unwrap());
            let hits = mobis
                .iter()
                .filter(|x| find_isomorphism(&Structure::Mobi((*x).clone()), &m).unwrap().is_some())
                .count();
            assert_eq!(hits, 1, "{}", r.name());
        }
    }
}

#[test]
fn canonical_forms_agree_with_isomorphism() {
    let mut pool: Vec<MobiStructure> = enumerate(3, false).structures;
    pool.extend(enumerate(5, false).structures);
    pool.push(z_mobi(5));
    pool.push(z_mobi(3));
    pool.push(mobi(ExampleId::ThreeElement));
    pool.push(relabel(&z_mobi(5), &[4, 2, 0, 3, 1]));
    let forms: Vec<CanonicalForm> = pool.iter().map(|m| canonical_form(&Structure::Mobi(m.clone())).unwrap()).collect();
    for i in 0..pool.len() {
        for j in 0..pool.len() {
            let (l, r) = (Structure::Mobi(pool[i].clone()), Structure::Mobi(pool[j].clone()));
            let iso = find_isomorphism(&l, &r).unwrap();
            assert_eq!(forms[i] == forms[j], iso.is_some(), "{} vs {}", pool[i].name(), pool[j].name());
            if let Some(b) = iso {
                assert!(verify_bijection(&l, &r, &b.indices).unwrap());
            }
        }
    }
}

#[test]
fn example6_against_z3() {
    let e6 = fixture(ExampleId::ThreeElement);
    let z3 = Structure::Mobi(z_mobi(3));
    let b = find_isomorphism(&e6, &z3).unwrap().unwrap();
    let map: Vec<(&str, &str)> = b.map.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
    assert_eq!(map, [("0", "0"), ("½", "2"), ("1", "1")]);
    assert!(verify_bijection(&e6, &z3, &[0, 2, 1]).unwrap());
    assert!(!verify_bijection(&e6, &z3, &[0, 1, 2]).unwrap());
    assert!(!verify_bijection(&e6, &z3, &[0, 0, 1]).unwrap());
}

#[test]
fn z5_and_imm1_share_a_canonical_form() {
    let via_imm = imm_star_to_mobi(&imm(ExampleId::Imm1)).unwrap();
    let r = imm_to_ring(&imm(ExampleId::Imm1)).unwrap();
    let via_ring = ring_to_mobi(&r).unwrap();
    let z5 = canonical_form(&Structure::Mobi(z_mobi(5))).unwrap();
    assert_eq!(canonical_form(&Structure::Mobi(via_imm)).unwrap(), z5);
    assert_eq!(canonical_form(&Structure::Mobi(via_ring)).unwrap(), z5);
}

#[test]
fn distinct_structures_are_told_apart() {
    let z5 = fixture(ExampleId::Zmod(5));
    assert!(find_isomorphism(&z5, &fixture(ExampleId::Zmod(7))).unwrap().is_none());
    assert!(find_isomorphism(&z5, &fixture(ExampleId::Zmod(6))).unwrap().is_none());
    assert_ne!(canonical_form(&z5).unwrap(), canonical_form(&fixture(ExampleId::Zmod(6))).unwrap());
    let m = Structure::Mobi(z_mobi(5));
    assert!(matches!(find_isomorphism(&z5, &m), Err(SearchError::KindMismatch(..))));
    assert!(matches!(
        canonical_form(&fixture(ExampleId::ModOdd(5))),
        Err(SearchError::TooLarge { .. })
    ));
    assert!(matches!(canonical_form(&fixture(ExampleId::Interval)), Err(SearchError::InfiniteCarrier(_))));
}

#[test]
fn node_cap_is_reported() {
    let e = enumerate_mobi(&EnumerationTask { order: 5, up_to_iso: false, node_cap: 0 }).unwrap();
    assert!(e.capped);
    assert!(enumerate_mobi(&EnumerationTask::new(0, false)).is_err());
}

#[test]
fn order7_self_consistency() {
    let all = enumerate(7, false);
    let classes = enumerate(7, true);
    assert!(!all.capped);
    assert!(classes.count() >= 1 && classes.count() as u64 <= all.labeled);
    let reps: Vec<Structure> = classes.structures.iter().cloned().map(Structure::Mobi).collect();
    for m in &all.structures {
        let s = Structure::Mobi(m.clone());
        let hits = reps.iter().filter(|r| find_isomorphism(&s, r).unwrap().is_some()).count();
        assert_eq!(hits, 1);
    }
    let z7 = Structure::Mobi(z_mobi(7));
    assert!(reps.iter().any(|r| find_isomorphism(r, &z7).unwrap().is_some()));
}

#[test]
fn order9_self_consistency() {
    let classes = enumerate(9, true);
    assert!(!classes.capped);
    let reps: Vec<Structure> = classes.structures.iter().cloned().map(Structure::Mobi).collect();
    for (i, r) in reps.iter().enumerate() {
        assert!(check_mobi(r.as_mobi().unwrap(), MobiProfile::Full, None).unwrap().passed());
        for s in &reps[i + 1..] {
            assert!(find_isomorphism(r, s).unwrap().is_none());
        }
        // each class carries a ring with one half
        let m = r.as_mobi().unwrap();
        let two = mobi_core::transforms::half_inverse_by_bijection(m).unwrap().unwrap();
        mobi_to_ring(m, &two).unwrap();
    }
    for ring in enumerate_rings_with_half(9).unwrap().rings {
        let m = Structure::Mobi(ring_to_mobi(&ring).unwrap());
        assert_eq!(reps.iter().filter(|r| find_isomorphism(r, &m).unwrap().is_some()).count(), 1, "{}", ring.name());
    }
    assert!(derive_imm_from_mobi(reps[0].as_mobi().unwrap()).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabelling_preserves_class(perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(), pick in 0usize..3) {
        let base = [z_mobi(5), imm_star_to_mobi(&imm(ExampleId::Imm1)).unwrap(), mobi(ExampleId::ModOdd(2))][pick].clone();
        let moved = relabel(&base, &perm);
        prop_assert!(check_mobi(&moved, MobiProfile::Full, None).unwrap().passed());
        let (l, r) = (Structure::Mobi(base), Structure::Mobi(moved));
        prop_assert_eq!(canonical_form(&l).unwrap(), canonical_form(&r).unwrap());
        let b = find_isomorphism(&l, &r).unwrap().unwrap();
        prop_assert!(verify_bijection(&l, &r, &b.indices).unwrap());
    }
}
