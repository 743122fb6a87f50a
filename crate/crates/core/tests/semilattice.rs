use posetkit::generate::nonisomorphic_posets_upto;
use posetkit::representation::{classify_triples, TripleClass};
use posetkit::{decide_representable, Cardinal, Decision, Poset, DEFAULT_SIZE_GUARD as G};

fn is_meet_semilattice(p: &Poset) -> bool {
    (0..p.len()).all(|a| (0..p.len()).all(|b| p.meet2(a, b).is_some()))
}

#[test]
fn semilattice_class_matches_bounded_search() {
    let mut seen = [0; 2];
    for p in nonisomorphic_posets_upto(5).unwrap() {
        if !is_meet_semilattice(&p) {
            continue;
        }
        let class = classify_triples(&p).class;
        let d = decide_representable(&p, Cardinal::Omega, Cardinal::Finite(3), p.len(), G).unwrap();
        match class {
            TripleClass::L => {
                assert!(matches!(d, Decision::Found(_)), "{:?}", p.cover_pairs());
                seen[0] += 1;
            }
            TripleClass::S => {
                assert!(matches!(d, Decision::NoneWithinBound { .. }), "{:?}", p.cover_pairs());
                seen[1] += 1;
            }
            TripleClass::I => {}
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}
