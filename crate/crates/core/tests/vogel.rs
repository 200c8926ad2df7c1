use knotqp::braid::{random_qp, BraidWord};
use knotqp::diagram::LinkDiagram;
use knotqp::invariants::link_signature;
use knotqp::seifert::seifert_circles;
use knotqp::two_bridge::{two_bridge, ContinuedFraction};
use knotqp::vogel::{braid, vogel_transform};

fn check(d: &LinkDiagram) {
    let b = braid(d).unwrap_or_else(|e| panic!("{:?}: {e}", d.name()));
    assert_eq!(b.word.strands(), seifert_circles(d).count());
    assert_eq!(b.word.exponent_sum(), d.writhe());
    assert_eq!(b.diagram.crossing_count(), d.crossing_count() + 2 * b.moves);
    let x = link_signature(d).unwrap();
    let y = link_signature(&b.word.closure()).unwrap();
    assert_eq!((x.sigma, x.nullity, x.determinant), (y.sigma, y.nullity, y.determinant), "{:?}", d.name());
}

#[test]
fn two_bridge_diagrams_up_to_ten_crossings() {
    for total in 1..=10 {
        for cf in ContinuedFraction::compositions(total) {
            check(&two_bridge(&cf).unwrap());
        }
    }
}

#[test]
fn mirrors_of_two_bridge_diagrams() {
    for total in 3..=8 {
        for cf in ContinuedFraction::compositions(total) {
            check(&two_bridge(&cf).unwrap().mirror());
        }
    }
}

#[test]
fn connected_braid_closures_read_back_with_same_invariants() {
    let mut seen = 0;
    for seed in 0..300u64 {
        let w: BraidWord = random_qp(4, 4, 3, seed).unwrap().expand().unwrap();
        let d = w.closure();
        if !d.is_connected() || d.crossing_count() == 0 {
            continue;
        }
        seen += 1;
        check(&d);
    }
    assert!(seen > 50);
}

#[test]
fn closed_positive_braid_is_fixed() {
    let w = BraidWord::new(3, vec![1, 2, 1, 2, 2, 1]).unwrap();
    let got = vogel_transform(&w.closure()).unwrap();
    assert_eq!(got.strands(), 3);
    let n = w.len();
    // read from a different seam the word is a cyclic rotation
    assert!((0..n).any(|k| (0..n).all(|i| got.letters()[i] == w.letters()[(i + k) % n])), "{got}");
}
