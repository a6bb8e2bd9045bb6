mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thompson::diagram::word_to_diagram;
use thompson::metric::{self, GenSet, Rotation};
use thompson::rewrite::{self, Side};
use thompson::{torsion, Dyadic, Letter, MarkedPair, PcqForm, PlMap, Tree, Word};

fn tree(max_carets: u32) -> impl Strategy<Value = Tree> {
    Just(Tree::leaf())
        .prop_recursive(6, max_carets, 2, |inner| (inner.clone(), inner).prop_map(|(l, r)| Tree::caret(&l, &r)))
}

/// Carets named by their path from the root (`0` = left, `1` = right).
fn caret_addresses(t: &Tree) -> BTreeSet<String> {
    fn walk(t: &Tree, path: String, out: &mut BTreeSet<String>) {
        if let Some((l, r)) = t.children() {
            walk(&l, format!("{path}0"), out);
            walk(&r, format!("{path}1"), out);
            out.insert(path);
        }
    }
    let mut out = BTreeSet::new();
    walk(t, String::new(), &mut out);
    out
}

/// Random words are drawn from a seeded generator so they shrink by seed.
fn word(max_len: usize, max_index: u32, c_share: f64) -> impl Strategy<Value = Word> {
    any::<u64>()
        .prop_map(move |seed| common::random_word(&mut ChaCha8Rng::seed_from_u64(seed), max_len, max_index, c_share))
}

fn element() -> impl Strategy<Value = MarkedPair> {
    word(8, 4, 0.3).prop_map(|w| word_to_diagram(&w))
}

/// An unreduced diagram of `g`: its reduced source with a few carets grafted on.
fn unreduced(g: &MarkedPair, seed: u64) -> MarkedPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut big = g.source().clone();
    for _ in 0..rng.gen_range(1..=4) {
        let leaf = rng.gen_range(0..big.leaves());
        big = big.graft(leaf, &Tree::caret(&Tree::leaf(), &Tree::leaf())).unwrap();
    }
    g.expand_source(&big).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tree_text_round_trip(t in tree(12)) {
        prop_assert_eq!(t.to_string().parse::<Tree>().unwrap(), t);
    }

    #[test]
    fn mce_is_least_common_expansion(a in tree(10), b in tree(10)) {
        let m = a.minimal_common_expansion(&b);
        prop_assert!(m.is_expansion(&a) && m.is_expansion(&b));
        prop_assert_eq!(&m, &b.minimal_common_expansion(&a));
        prop_assert_eq!(&a.minimal_common_expansion(&m), &m);
        let union: BTreeSet<String> = caret_addresses(&a).union(&caret_addresses(&b)).cloned().collect();
        prop_assert_eq!(caret_addresses(&m), union);
        prop_assert_eq!(a.minimal_common_expansion(&a), a);
    }

    #[test]
    fn mce_of_an_expansion_is_the_expansion(a in tree(8), graft in tree(4), seed in any::<u64>()) {
        let leaf = ChaCha8Rng::seed_from_u64(seed).gen_range(0..a.leaves());
        let big = a.graft(leaf, &graft).unwrap();
        prop_assert!(big.is_expansion(&a));
        prop_assert_eq!(a.minimal_common_expansion(&big), big);
    }

    #[test]
    fn multiplication_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn inverses_and_identity(g in element()) {
        prop_assert!(g.multiply(&g.invert()).is_identity());
        prop_assert!(g.invert().multiply(&g).is_identity());
        prop_assert_eq!(&g.multiply(&MarkedPair::identity()), &g);
        prop_assert_eq!(&MarkedPair::identity().multiply(&g), &g);
    }

    #[test]
    fn reduction_is_confluent(g in element(), seed in any::<u64>()) {
        let start = unreduced(&g, seed);
        prop_assert!(start.equals(&g));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut current = start;
        loop {
            let pairs = current.reducible_pairs();
            if pairs.is_empty() {
                break;
            }
            current = current.collapse_pair(pairs[rng.gen_range(0..pairs.len())]).unwrap();
        }
        prop_assert_eq!(current, g);
    }

    #[test]
    fn maps_are_a_homomorphism(a in element(), b in element()) {
        prop_assert_eq!(a.multiply(&b).to_plmap(), a.to_plmap().compose(&b.to_plmap()));
        prop_assert_eq!(a.invert().to_plmap(), a.to_plmap().inverse());
    }

    #[test]
    fn diagram_map_matches_analytic_map(w in word(12, 5, 0.3)) {
        prop_assert_eq!(word_to_diagram(&w).to_plmap(), w.analytic_map());
    }

    #[test]
    fn unreduced_diagrams_give_the_same_map(g in element(), seed in any::<u64>()) {
        prop_assert_eq!(unreduced(&g, seed).to_plmap(), g.to_plmap());
    }

    #[test]
    fn pcq_round_trip(g in element()) {
        let form = g.pcq_factorization();
        prop_assert!(rewrite::factorization_condition(&form));
        prop_assert_eq!(&MarkedPair::from_pcq(&form).unwrap(), &g);
        prop_assert_eq!(&word_to_diagram(&form.to_word()), &g);
        prop_assert_eq!(form.to_string().parse::<PcqForm>().unwrap(), form);
    }

    #[test]
    fn algebraic_and_geometric_normal_forms_agree(w in word(12, 5, 0.3)) {
        let geometric = rewrite::normal_form(&w);
        prop_assert_eq!(rewrite::normal_form_algebraic(&w).unwrap(), Some(geometric.clone()));
        prop_assert_eq!(geometric, word_to_diagram(&w).pcq_factorization());
    }

    #[test]
    fn f_words_stay_in_f(w in word(12, 5, 0.0)) {
        let g = word_to_diagram(&w);
        prop_assert!(g.in_f());
        prop_assert_eq!(rewrite::normal_form_f(&w).unwrap(), g.pcq_factorization());
        prop_assert!(g.is_identity() || torsion::balanced_form(&g, 300).is_none());
    }

    #[test]
    fn normal_form_of_normal_form_is_fixed(w in word(10, 5, 0.3)) {
        let nf = rewrite::normal_form(&w);
        prop_assert_eq!(rewrite::normal_form(&nf.to_word()), nf);
    }

    #[test]
    fn pumping_identities(n in 0u32..=8, m_seed in any::<u32>()) {
        let m = 1 + m_seed % (n + 1);
        let c = MarkedPair::c(n).pow(i64::from(m));
        for side in [Side::Left, Side::Right] {
            prop_assert_eq!(&word_to_diagram(&rewrite::pump(n, m, side).unwrap()), &c);
        }
        prop_assert!(rewrite::pump(n, n + 2, Side::Left).is_err());
        prop_assert!(rewrite::pump(n, 0, Side::Right).is_err());
    }

    #[test]
    fn caret_formula_matches_diagrams(seed in any::<u64>()) {
        let p = common::random_positive(&mut ChaCha8Rng::seed_from_u64(seed), 6, 4);
        let w = PcqForm::new(p.clone(), None, Vec::new()).unwrap().to_word();
        prop_assert_eq!(rewrite::n_carets_positive(&p), word_to_diagram(&w).carets());
        prop_assert_eq!(rewrite::n_carets_positive(&p), metric::n_carets(&w));
    }

    #[test]
    fn d_is_bounded_by_carets(g in element()) {
        let d = metric::d_value(&g.pcq_factorization());
        prop_assert!(d <= 5 * g.carets() as u64);
    }

    #[test]
    fn torsion_conjugates(s in word(4, 4, 0.3), i in 0u32..=4, j_seed in any::<u32>()) {
        let j = 1 + i64::from(j_seed % (i + 1));
        let g = word_to_diagram(&s.concat(&Word::new(vec![Letter::c(i, j)])).concat(&s.inverse()));
        let expected = (u64::from(i) + 2) / num_integer::gcd(u64::from(i) + 2, j as u64);
        prop_assert_eq!(torsion::order(&g, 64), Some(expected));
        let b = torsion::balanced_form(&g, 4096).unwrap();
        prop_assert_eq!(b.order, expected);
        let balanced = MarkedPair::new(b.tree.clone(), b.tree.clone(), b.shift).unwrap();
        prop_assert!(balanced.equals(&g));
        let (p, ci, cj) = torsion::conjugator(&g, 4096).unwrap();
        prop_assert!(p.letters().iter().all(|l| !l.is_c() && l.exp() > 0));
        let c = if cj == 0 { Word::identity() } else { Word::new(vec![Letter::c(ci, cj.into())]) };
        prop_assert_eq!(word_to_diagram(&p.concat(&c).concat(&p.inverse())), g);
    }

    #[test]
    fn rotations_have_order_two_to_the_n(n in 1u32..=6, a_seed in any::<u64>()) {
        let a = 2 * (a_seed % (1 << (n - 1))) + 1;
        let r = Rotation::new(a, n).unwrap();
        let g = metric::rotation_element(r);
        prop_assert_eq!(g.carets(), (1usize << n) - 1);
        prop_assert_eq!(torsion::order(&g, 128), Some(1u64 << n));
        prop_assert_eq!(g.to_plmap(), PlMap::rotation(&r.amount()));
    }

    #[test]
    fn eval_and_inverse_agree(g in element(), num in 0u64..1024) {
        let map = g.to_plmap();
        let t = Dyadic::new(num, 10);
        prop_assert_eq!(map.eval_inverse(&map.eval(&t)), t.clone());
        prop_assert_eq!(map.eval(&t), g.invert().to_plmap().eval_inverse(&t));
    }

    #[test]
    fn serialisation_round_trips(g in element(), w in word(10, 6, 0.3)) {
        prop_assert_eq!(&MarkedPair::from_json(&g.to_json()).unwrap(), &g);
        let map = g.to_plmap();
        prop_assert_eq!(&PlMap::from_json(&map.to_json()).unwrap(), &map);
        prop_assert_eq!(&PlMap::from_text(&map.to_text()).unwrap(), &map);
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn word_length_is_symmetric(w in word(4, 1, 0.3)) {
        let g = word_to_diagram(&w);
        for gens in GenSet::ALL {
            let forward = metric::bfs_length(&g, gens, 6);
            prop_assert_eq!(forward, metric::bfs_length(&g.invert(), gens, 6));
            if let (GenSet::X0X1C1, Some(n)) = (gens, forward) {
                prop_assert!(g.carets() <= 3 * n);
            }
        }
    }
}
