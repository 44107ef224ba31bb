use std::collections::HashSet;

use super::realize::{Golden, Realization};
use super::*;

fn g(name: &str) -> Group {
    Group::of_type(name).unwrap()
}

fn gs(name: &str, perm: Vec<usize>) -> Group {
    Group::of_type_with_star(name, perm).unwrap()
}

fn by_word(g: &Group, word: &[usize]) -> ElementId {
    g.element_by_word(word).unwrap()
}

#[test]
fn orders_match_recognized_types() {
    for (name, order) in [
        ("A1", 2usize),
        ("A2", 6),
        ("B2", 8),
        ("G2", 12),
        ("I2(7)", 14),
        ("A3", 24),
        ("B3", 48),
        ("A1xA1", 4),
        ("H3", 120),
        ("D4", 192),
        ("F4", 1152),
    ] {
        let w = g(name);
        assert_eq!(w.num_elements(), order, "{name}");
        assert!(w.is_whole_group());
        assert_eq!(
            w.type_info().longest_length.unwrap(),
            w.length(w.longest_element().unwrap()),
            "{name} longest length"
        );
    }
}

#[test]
fn ids_sorted_by_length_and_prefix_ranges() {
    for name in ["A3", "B3", "G2"] {
        let w = g(name);
        for i in 1..w.num_elements() {
            assert!(w.length(ElementId(i as u32 - 1)) <= w.length(ElementId(i as u32)));
        }
        for s in 0..w.rank() {
            assert_eq!(w.length(w.generator(s)), 1);
            assert_eq!(w.generator(s), ElementId(s as u32 + 1));
        }
        for l in 0..=w.max_enumerated_length() {
            let pre: Vec<_> = w.elements_up_to(l).collect();
            assert!(pre.iter().all(|&x| w.length(x) <= l));
            assert_eq!(pre.len(), w.elements().filter(|&x| w.length(x) <= l).count());
        }
    }
}

#[test]
fn generator_products() {
    let a2 = g("A2");
    let s1 = a2.generator(0);
    assert_eq!(a2.mult_gen(0, s1, Side::Left), a2.identity());
    let s2s1 = by_word(&a2, &[1, 0]);
    let w0 = a2.mult_gen(0, s2s1, Side::Left);
    assert_eq!(a2.length(w0), 3);
    assert_eq!(w0, by_word(&a2, &[0, 1, 0]));
    // Braid collapse: s1 s2 s1 s2 has length 2.
    assert_eq!(by_word(&a2, &[0, 1, 0, 1]), by_word(&a2, &[1, 0]));
}

#[test]
fn descent_examples() {
    let a2 = g("A2");
    assert!(a2.descents(a2.identity(), Side::Left).is_empty());
    assert!(a2.descents(a2.identity(), Side::Right).is_empty());
    let s1 = a2.generator(0);
    assert_eq!(a2.descents(s1, Side::Left), vec![0]);
    assert_eq!(a2.descents(s1, Side::Right), vec![0]);
    let w0 = a2.longest_element().unwrap();
    assert_eq!(a2.descents(w0, Side::Left), vec![0, 1]);
    assert_eq!(a2.descents(w0, Side::Right), vec![0, 1]);
}

#[test]
fn descents_agree_with_length_drop() {
    for name in ["A3", "B3", "G2"] {
        let w = g(name);
        for x in w.elements() {
            for s in 0..w.rank() {
                let lft = w.mult_gen(s, x, Side::Left);
                let rgt = w.mult_gen(s, x, Side::Right);
                // l(sx), l(xs) differ from l(x) by exactly 1
                assert_eq!(w.length(lft).abs_diff(w.length(x)), 1);
                assert_eq!(w.length(rgt).abs_diff(w.length(x)), 1);
                assert_eq!(w.has_descent(s, x, Side::Left), w.length(lft) < w.length(x));
                assert_eq!(w.has_descent(s, x, Side::Right), w.length(rgt) < w.length(x));
            }
        }
    }
}

#[test]
fn star_and_inverse() {
    let a2 = gs("A2", vec![1, 0]);
    let s1 = a2.generator(0);
    let s2 = a2.generator(1);
    assert_eq!(a2.star_of(s1), s2);
    assert_eq!(a2.star_of(a2.identity()), a2.identity());
    assert_eq!(a2.inverse(by_word(&a2, &[0, 1])), by_word(&a2, &[1, 0]));
    for w in a2.elements() {
        assert_eq!(a2.length(a2.star_of(w)), a2.length(w));
        assert_eq!(a2.length(a2.inverse(w)), a2.length(w));
        assert_eq!(a2.star_of(a2.star_of(w)), w);
        assert_eq!(a2.inverse(a2.inverse(w)), w);
        assert_eq!(a2.star_inverse(w), a2.inverse(a2.star_of(w)));
    }
}

#[test]
fn twisted_involution_flags() {
    let w = gs("A1xA1", vec![1, 0]);
    assert!(w.is_twisted_involution(w.identity()));
    assert!(!w.is_twisted_involution(w.generator(0)));
    assert!(!w.is_twisted_involution(w.generator(1)));
    assert!(w.is_twisted_involution(by_word(&w, &[0, 1])));

    let a1 = g("A1");
    assert!(a1.is_twisted_involution(a1.generator(0)));
}

/// Independent check of `w⁻¹ = w*` from words alone.
fn brute_twisted(g: &Group, w: ElementId) -> bool {
    let word = g.word(w);
    let rev: Vec<usize> = word.iter().rev().copied().collect();
    let starred: Vec<usize> = word.iter().map(|&s| g.star_gen(s)).collect();
    g.element_by_word(&rev).unwrap() == g.element_by_word(&starred).unwrap()
}

#[test]
fn twisted_involution_counts_against_brute_force() {
    let groups = [
        g("A2"),
        gs("A2", vec![1, 0]),
        g("B2"),
        gs("B2", vec![1, 0]),
        g("A3"),
        gs("A3", vec![2, 1, 0]),
        g("B3"),
        g("H3"),
        g("D4"),
        gs("D4", vec![0, 1, 3, 2]),
        g("F4"),
        gs("F4", vec![3, 2, 1, 0]),
        gs("A1xA1", vec![1, 0]),
    ];
    for w in &groups {
        let brute: Vec<ElementId> = w.elements().filter(|&x| brute_twisted(w, x)).collect();
        let bfs = w.twisted_involutions_up_to(w.max_enumerated_length());
        assert_eq!(bfs, brute, "{:?}", w.type_info().name);
        for &z in &bfs {
            assert!(w.is_twisted_involution(z));
        }
    }
}

#[test]
fn twisted_involution_counts_fixed_values() {
    // Ordinary involutions of the symmetric group on 4 letters.
    assert_eq!(g("A3").twisted_involutions_up_to(6).len(), 10);
    // With the diagram flip.
    let a3f = gs("A3", vec![2, 1, 0]);
    let i = a3f.twisted_involutions_up_to(6);
    let brute = a3f.elements().filter(|&x| brute_twisted(&a3f, x)).count();
    assert_eq!(i.len(), brute);
    // A1 up to length 1: identity and the generator.
    let a1 = g("A1");
    assert_eq!(a1.twisted_involutions_up_to(1), vec![a1.identity(), a1.generator(0)]);
    // B2 with the flip: e, the two rotations of length 2, the longest.
    let b2f = gs("B2", vec![1, 0]);
    assert_eq!(b2f.twisted_involutions_up_to(4).len(), 4);
}

#[test]
fn twisted_involutions_respect_length_filter() {
    let b3 = g("B3");
    let all = b3.twisted_involutions_up_to(9);
    for l in 0..=9 {
        let upto: Vec<_> = b3.twisted_involutions_up_to(l);
        let expect: Vec<_> = all.iter().copied().filter(|&z| b3.length(z) <= l).collect();
        assert_eq!(upto, expect);
    }
}

fn subword_set(g: &Group, w: ElementId) -> HashSet<ElementId> {
    let word = g.word(w);
    let k = word.len();
    let mut set = HashSet::new();
    for mask in 0u32..(1 << k) {
        let sub: Vec<usize> =
            (0..k).filter(|i| mask & (1 << i) != 0).map(|i| word[i]).collect();
        set.insert(g.element_by_word(&sub).unwrap());
    }
    set
}

#[test]
fn bruhat_examples() {
    let a2 = g("A2");
    let s2 = a2.generator(1);
    let w0 = by_word(&a2, &[0, 1, 0]);
    assert!(a2.bruhat_leq(s2, w0));
    assert!(!a2.bruhat_leq(by_word(&a2, &[0, 1]), by_word(&a2, &[1, 0])));
    for w in a2.elements() {
        assert!(a2.bruhat_leq(a2.identity(), w));
    }
}

#[test]
fn bruhat_matches_subword_oracle() {
    for w in [
        g("A2"),
        g("B2"),
        g("G2"),
        g("I2(7)"),
        g("A1xA1"),
        g("A3"),
        g("B3"),
        g("H3"),
    ] {
        for x in w.elements() {
            let below = subword_set(&w, x);
            for y in w.elements() {
                assert_eq!(
                    w.bruhat_leq(y, x),
                    below.contains(&y),
                    "{:?}: {} vs {}",
                    w.type_info().name,
                    w.word_string(y),
                    w.word_string(x)
                );
            }
        }
    }
}

#[test]
fn bruhat_is_a_partial_order_refining_length() {
    let w = g("B3");
    for x in w.elements() {
        for y in w.elements() {
            if w.bruhat_leq(y, x) && w.bruhat_leq(x, y) {
                assert_eq!(x, y);
            }
            if w.bruhat_leq(y, x) && w.length(y) == w.length(x) {
                assert_eq!(x, y);
            }
            if w.bruhat_leq(y, x) {
                assert!(w.length(y) <= w.length(x));
            }
        }
    }
    // Transitivity on a sample.
    for x in w.elements() {
        for y in w.elements_up_to(w.length(x)) {
            if !w.bruhat_leq(y, x) {
                continue;
            }
            for z in w.elements_up_to(w.length(y)) {
                if w.bruhat_leq(z, y) {
                    assert!(w.bruhat_leq(z, x));
                }
            }
        }
    }
}

#[test]
fn lower_intervals() {
    let a2 = g("A2");
    assert_eq!(a2.lower_interval(a2.identity(), false), vec![a2.identity()]);
    let w0 = a2.longest_element().unwrap();
    assert_eq!(a2.lower_interval(w0, false).len(), 6);

    let a2f = gs("A2", vec![1, 0]);
    let s1s2 = by_word(&a2f, &[0, 1]);
    assert_eq!(a2f.lower_interval(s1s2, true), vec![a2f.identity(), s1s2]);
    // Sorted by (length, id) = by id.
    let iv = a2f.lower_interval(a2f.longest_element().unwrap(), false);
    assert!(iv.windows(2).all(|p| p[0] < p[1]));
}

#[test]
fn case_classification_examples() {
    let a1 = g("A1");
    assert_eq!(a1.classify_case(0, a1.identity()).unwrap(), CaseClass::AscentCommute);
    assert_eq!(a1.classify_case(0, a1.generator(0)).unwrap(), CaseClass::DescentCommute);

    let ff = gs("A1xA1", vec![1, 0]);
    assert_eq!(ff.classify_case(0, ff.identity()).unwrap(), CaseClass::AscentSkew);
    assert!(ff.classify_case(0, ff.generator(0)).is_err());
}

#[test]
fn tilde_and_hat_examples() {
    let a1 = g("A1");
    assert_eq!(a1.tilde(0, a1.identity()).unwrap(), a1.generator(0));
    assert_eq!(a1.hat(0, a1.generator(0)).unwrap(), a1.identity());
    assert_eq!(a1.hat(0, a1.identity()).unwrap(), a1.identity());

    let ff = gs("A1xA1", vec![1, 0]);
    assert_eq!(ff.tilde(0, ff.identity()).unwrap(), by_word(&ff, &[0, 1]));
    assert!(matches!(ff.tilde(0, ff.generator(0)), Err(Error::NotTwistedInvolution(_))));
}

#[test]
fn tilde_is_an_involution_and_swaps_direction() {
    for w in [g("A3"), gs("A3", vec![2, 1, 0]), gs("B2", vec![1, 0]), g("B3")] {
        let inv = w.twisted_involutions_up_to(w.max_enumerated_length());
        for &z in &inv {
            for s in 0..w.rank() {
                let t = w.tilde(s, z).unwrap();
                assert!(w.is_twisted_involution(t));
                assert_eq!(w.tilde(s, t).unwrap(), z);
                let cz = w.classify_case(s, z).unwrap();
                let ct = w.classify_case(s, t).unwrap();
                assert_eq!(cz.is_ascent(), !ct.is_ascent());
                assert_eq!(cz.commutes(), ct.commutes());
                // Length step: 1 in the commuting case, 2 otherwise.
                let step = if cz.commutes() { 1 } else { 2 };
                assert_eq!(w.length(t).abs_diff(w.length(z)), step);
                // hat fixes ascents, descends otherwise.
                if cz.is_ascent() {
                    assert_eq!(w.hat(s, z).unwrap(), z);
                } else {
                    assert_eq!(w.hat(s, z).unwrap(), t);
                    assert!(w.length(t) < w.length(z));
                }
            }
        }
    }
}

#[test]
fn ascent_on_both_sides_for_twisted_involutions() {
    // For z with z⁻¹ = z*: if s lengthens z on the left, s* lengthens
    // it on the right.
    for w in [gs("A2", vec![1, 0]), gs("A3", vec![2, 1, 0]), g("B3")] {
        let inv = w.twisted_involutions_up_to(w.max_enumerated_length());
        for &z in &inv {
            for s in 0..w.rank() {
                if !w.has_descent(s, z, Side::Left) {
                    assert!(!w.has_descent(w.star_gen(s), z, Side::Right));
                }
            }
        }
    }
}

#[test]
fn parity_values() {
    let a2 = g("A2");
    assert_eq!(a2.parity(a2.identity()), 1);
    assert_eq!(a2.parity(a2.generator(0)), -1);
    assert_eq!(a2.parity(by_word(&a2, &[0, 1])), 1);
}

#[test]
fn words_are_canonical_and_roundtrip() {
    for w in [g("A3"), g("B3"), g("G2")] {
        for x in w.elements() {
            let word = w.word(x);
            assert_eq!(word.len() as u32, w.length(x));
            assert_eq!(w.element_by_word(&word).unwrap(), x);
        }
    }
    let a2 = g("A2");
    assert_eq!(a2.word_string(a2.identity()), "e");
    assert_eq!(a2.word_string(a2.longest_element().unwrap()), "1 2 1");
    assert_eq!(a2.word(by_word(&a2, &[1, 0])), vec![1, 0]);
}

fn assert_same_group(a: &Group, b: &Group) {
    assert_eq!(a.num_elements(), b.num_elements());
    for w in a.elements() {
        let wb = b.element_by_word(&a.word(w)).unwrap();
        assert_eq!(a.length(w), b.length(wb));
        assert_eq!(a.descent_mask(w, Side::Left), b.descent_mask(wb, Side::Left));
        assert_eq!(a.descent_mask(w, Side::Right), b.descent_mask(wb, Side::Right));
        assert_eq!(b.element_by_word(&a.word(a.inverse(w))).unwrap(), b.inverse(wb));
        assert_eq!(b.element_by_word(&a.word(a.star_of(w))).unwrap(), b.star_of(wb));
        assert_eq!(a.is_twisted_involution(w), b.is_twisted_involution(wb));
        for s in 0..a.rank() {
            let ra = a.mult_gen(s, w, Side::Right);
            let la = a.mult_gen(s, w, Side::Left);
            assert_eq!(b.element_by_word(&a.word(ra)).unwrap(), b.mult_gen(s, wb, Side::Right));
            assert_eq!(b.element_by_word(&a.word(la)).unwrap(), b.mult_gen(s, wb, Side::Left));
        }
    }
}

#[test]
fn dihedral_model_matches_matrix_models() {
    // m = 4 and 6: integer matrices; m = 5: matrices over Z[phi].
    let cases: Vec<(u32, Realization)> = vec![
        (4, Realization::Int { rank: 2, cartan: vec![2, -1, -2, 2] }),
        (6, Realization::Int { rank: 2, cartan: vec![2, -1, -3, 2] }),
        (
            5,
            Realization::Golden {
                rank: 2,
                cartan: vec![
                    Golden::from_int(2),
                    Golden::PHI.neg(),
                    Golden::PHI.neg(),
                    Golden::from_int(2),
                ],
            },
        ),
    ];
    for (m, real) in cases {
        let mat = CoxeterMatrix::from_edges(2, &[(0, 1, m)]).unwrap();
        for star in [StarMap::identity(2), StarMap::from_perm(vec![1, 0]).unwrap()] {
            let dihedral = Group::build(mat.clone(), star.clone(), None).unwrap();
            let matrixy =
                Group::build_forced(mat.clone(), star.clone(), None, real.clone()).unwrap();
            assert_same_group(&dihedral, &matrixy);
        }
    }
}

#[test]
fn bounded_infinite_dihedral() {
    let m = CoxeterMatrix::from_edges(2, &[(0, 1, INFINITY)]).unwrap();
    assert!(matches!(
        Group::build(m.clone(), StarMap::identity(2), None),
        Err(Error::NeedsLengthBound)
    ));
    let w = Group::build(m, StarMap::identity(2), Some(6)).unwrap();
    assert!(!w.is_whole_group());
    assert_eq!(w.length_bound(), Some(6));
    assert!(w.longest_element().is_none());
    // Two elements per positive length, up to the cap.
    assert_eq!(w.max_enumerated_length(), 10);
    assert_eq!(w.num_elements(), 21);
    assert_eq!(w.elements_up_to(6).count(), 13);
    // Reflections are the odd-length elements.
    let inv = w.twisted_involutions_up_to(6);
    assert_eq!(inv.len(), 7);
    for &z in &inv {
        assert!(w.length(z) % 2 == 1 || z == w.identity());
    }
    // Products at the cap edge fall outside.
    let top: Vec<_> = w.elements().filter(|&x| w.length(x) == 10).collect();
    for &x in &top {
        for s in 0..2 {
            if !w.has_descent(s, x, Side::Right) {
                assert!(w.try_mult_gen(s, x, Side::Right).is_none());
            }
        }
    }
}

#[test]
fn bounded_affine_rank_three() {
    for (name, perm) in [("A2~", vec![0, 1, 2]), ("A2~", vec![1, 0, 2])] {
        let mat = named_matrix(name).unwrap();
        let star = StarMap::from_perm(perm).unwrap();
        let w = Group::build(mat, star, Some(5)).unwrap();
        assert!(!w.type_info().finite);
        for x in w.elements_up_to(5) {
            for s in 0..w.rank() {
                let sx = w.mult_gen(s, x, Side::Left);
                assert_eq!(w.length(sx).abs_diff(w.length(x)), 1);
            }
        }
        let listed = w.twisted_involutions_up_to(5);
        let flagged: Vec<ElementId> =
            w.elements_up_to(5).filter(|&x| w.is_twisted_involution(x)).collect();
        assert_eq!(listed, flagged);
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    // Diagonal must be 1.
    assert!(CoxeterMatrix::from_rows(vec![vec![2]]).is_err());
    // Off-diagonal 1 is meaningless.
    assert!(CoxeterMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).is_err());
    // Symmetry.
    assert!(CoxeterMatrix::from_rows(vec![vec![1, 3], vec![4, 1]]).is_err());
    // Star must preserve bond orders: swapping 1,2 in A3 does not.
    let a3 = named_matrix("A3").unwrap();
    let bad = StarMap::from_perm(vec![1, 0, 2]).unwrap();
    assert!(matches!(
        Group::build(a3, bad, None),
        Err(Error::InvalidStar(_))
    ));
    // Star must be an involution.
    assert!(StarMap::from_perm(vec![1, 2, 0]).is_err());
    // Bond order 7 needs rank 2.
    let m7 = CoxeterMatrix::from_edges(3, &[(0, 1, 7), (1, 2, 3)]).unwrap();
    assert!(matches!(
        Group::build(m7, StarMap::identity(3), None),
        Err(Error::UnsupportedMatrix(_))
    ));
    // Rank-2 bond 7 is fine.
    assert_eq!(g("I2(7)").num_elements(), 14);
}

#[test]
fn star_respects_words() {
    // star(w) is the image of any word of w under the generator map.
    for w in [gs("A3", vec![2, 1, 0]), gs("F4", vec![3, 2, 1, 0]), gs("B2", vec![1, 0])] {
        for x in w.elements() {
            let starred: Vec<usize> = w.word(x).iter().map(|&s| w.star_gen(s)).collect();
            assert_eq!(w.star_of(x), w.element_by_word(&starred).unwrap());
        }
    }
}
