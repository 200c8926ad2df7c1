use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use knotqp::braid::{random_qp, BraidWord};
use knotqp::diagram::{parse_pd, parse_pd_json, to_json_string, to_pd_string, ArcId, Crossing, LinkDiagram};
use knotqp::invariants::link_signature;
use knotqp::linalg::{symmetric_signature, SymmetricMatrix};
use knotqp::quasipos::dhl_verdict;
use knotqp::seifert::{random_tree_stats, seifert_graph, tree_stats};
use knotqp::two_bridge::{two_bridge, ContinuedFraction};

fn braid_word() -> impl Strategy<Value = BraidWord> {
    (2usize..=5).prop_flat_map(|n| {
        let letter = (1..n as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
        prop::collection::vec(letter, 0..12).prop_map(move |ls| BraidWord::new(n, ls).unwrap())
    })
}

fn cf_terms() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1i64..=4, 1..=4).prop_filter("not the kink", |t| t != &[1])
}

/// Characteristic polynomial coefficients `c[k]` of `det(xI − A)` by
/// Faddeev–LeVerrier, lowest degree first.
fn char_poly(a: &[Vec<i64>]) -> Vec<BigRational> {
    let n = a.len();
    let a: Vec<Vec<BigRational>> =
        a.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::from_integer(1.into());
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for t in 0..n {
                    s += &a[i][t] * &m[t][j];
                }
                if i == j {
                    s += &c[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = BigRational::zero();
        for i in 0..n {
            for t in 0..n {
                tr += &a[i][t] * &m[t][i];
            }
        }
        c[n - k] = -tr / BigRational::from_integer((k as i64).into());
    }
    c
}

fn sign_changes(c: &[BigRational]) -> usize {
    let signs: Vec<bool> = c.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Inertia from the characteristic polynomial. Real symmetric matrices have
/// only real eigenvalues, so Descartes' rule counts them exactly.
fn descartes_signature(a: &[Vec<i64>]) -> (i64, usize) {
    let c = char_poly(a);
    let zero = c.iter().take_while(|x| x.is_zero()).count();
    let pos = sign_changes(&c);
    let flipped: Vec<BigRational> = c.iter().enumerate().map(|(k, x)| if k % 2 == 1 { -x.clone() } else { x.clone() }).collect();
    let neg = sign_changes(&flipped);
    assert_eq!(pos + neg + zero, a.len());
    (pos as i64 - neg as i64, zero)
}

fn symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-3i64..=3, n * (n + 1) / 2).prop_map(move |v| {
        let mut m = vec![vec![0; n]; n];
        let mut it = v.into_iter();
        for i in 0..n {
            for j in i..n {
                let x = it.next().unwrap();
                m[i][j] = x;
                m[j][i] = x;
            }
        }
        m
    })
}

/// Same diagram with arc labels permuted and crossings listed in another order.
fn relabel(d: &LinkDiagram, seed: u64) -> LinkDiagram {
    let labels: Vec<u32> = {
        let mut l: Vec<u32> = d.crossings().iter().flat_map(|c| c.slots()).map(|a| a.0).collect();
        l.sort_unstable();
        l.dedup();
        l
    };
    let mut perm = labels.clone();
    let mut state = seed | 1;
    for i in (1..perm.len()).rev() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        perm.swap(i, (state % (i as u64 + 1)) as usize);
    }
    let map: std::collections::HashMap<u32, u32> = labels.into_iter().zip(perm.into_iter().map(|x| x + 1000)).collect();
    let mut crossings: Vec<Crossing> = d
        .crossings()
        .iter()
        .map(|c| Crossing::new(c.slots().map(|a| ArcId(map[&a.0])), c.over_in(), c.index()))
        .collect();
    let k = seed as usize % crossings.len().max(1);
    crossings.rotate_left(k);
    LinkDiagram::new(crossings, d.free_loops()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pd_round_trip(w in braid_word()) {
        let d = w.closure();
        let text = to_pd_string(&d);
        let back = parse_pd(&text).unwrap();
        prop_assert_eq!(to_pd_string(&back), text);
        let json = parse_pd_json(&to_json_string(&d)).unwrap();
        prop_assert_eq!(json.crossings(), d.crossings());
        prop_assert_eq!(json.free_loops(), d.free_loops());
    }

    #[test]
    fn two_bridge_pd_round_trip(t in cf_terms()) {
        let d = two_bridge(&ContinuedFraction::new(&t).unwrap()).unwrap();
        let back = parse_pd(&to_pd_string(&d)).unwrap();
        prop_assert_eq!(back.crossings(), d.crossings());
    }

    #[test]
    fn writhe_and_signature_add_over_disjoint_union(a in braid_word(), b in braid_word()) {
        let (x, y) = (a.closure(), b.closure());
        let u = x.disjoint_union(&y);
        prop_assert_eq!(u.writhe(), x.writhe() + y.writhe());
        prop_assert_eq!(u.writhe(), a.exponent_sum() + b.exponent_sum());
        let (sx, sy, su) = (link_signature(&x).unwrap(), link_signature(&y).unwrap(), link_signature(&u).unwrap());
        prop_assert_eq!(su.sigma, sx.sigma + sy.sigma);
        prop_assert_eq!(su.nullity, sx.nullity + sy.nullity + 1);
    }

    #[test]
    fn mirror_negates_signature(w in braid_word()) {
        let d = w.closure();
        let (s, m) = (link_signature(&d).unwrap(), link_signature(&d.mirror()).unwrap());
        prop_assert_eq!(m.sigma, -s.sigma);
        prop_assert_eq!(m.nullity, s.nullity);
        prop_assert_eq!(m.determinant, s.determinant);
        prop_assert_eq!(d.mirror().writhe(), -d.writhe());
    }

    #[test]
    fn signature_matches_descartes_oracle(m in (1usize..=8).prop_flat_map(symmetric)) {
        let got = symmetric_signature(&SymmetricMatrix::new(&m).unwrap());
        prop_assert_eq!(got, descartes_signature(&m));
    }

    #[test]
    fn dhl_verdict_ignores_labels(t in cf_terms(), seed in any::<u64>()) {
        let d = two_bridge(&ContinuedFraction::new(&t).unwrap()).unwrap();
        let r = relabel(&d, seed);
        let (a, b) = (dhl_verdict(&d).unwrap(), dhl_verdict(&r).unwrap());
        prop_assert_eq!(a.outcome, b.outcome);
        prop_assert_eq!(a.certificate.failed_hypothesis, b.certificate.failed_hypothesis);
        prop_assert_eq!(a.certificate.negative_crossings.len(), b.certificate.negative_crossings.len());
        prop_assert_eq!(link_signature(&d).unwrap(), link_signature(&r).unwrap());
    }

    #[test]
    fn spanning_tree_choice_is_irrelevant(t in cf_terms(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let d = two_bridge(&ContinuedFraction::new(&t).unwrap()).unwrap();
        let g = seifert_graph(&d).unwrap();
        let base = tree_stats(&g).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let r = random_tree_stats(&g, &mut rng).unwrap();
        prop_assert_eq!((r.d, r.d_plus, r.d_minus), (base.d, base.d_plus, base.d_minus));
    }

    #[test]
    fn qp_factorizations_expand_to_positive_exponent_sum(n in 2usize..=6, k in 0usize..=8, c in 0usize..=6, seed in any::<u64>()) {
        let f = random_qp(n, k, c, seed).unwrap();
        let w = f.expand().unwrap();
        prop_assert_eq!(w.exponent_sum(), k as i64);
        prop_assert_eq!(w.strands(), n);
    }

    #[test]
    fn parser_never_panics(s in "\\PC{0,80}") {
        let _ = parse_pd(&s);
        let _ = parse_pd_json(&s);
        let _ = BraidWord::parse_text(&s);
        let _ = BraidWord::parse_list(&s, None);
    }

    #[test]
    fn pd_like_noise_never_panics(s in "(X\\(([0-9]{1,2},){0,3}[0-9]{1,2}(;[13])?\\) ?){1,5}") {
        if let Ok(d) = parse_pd(&s) {
            prop_assert!(d.validate().is_valid());
        }
    }
}
