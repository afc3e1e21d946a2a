use osp_kostka::character::{decompose, irreducible_character, CharElt};
use osp_kostka::kostka::KostkaEngine;
use osp_kostka::moment::{pfaffian, RationalMatrix};
use osp_kostka::orbits::{closure_le, gl_bisignature, gl_bisignature_ge, OrbitLabel};
use osp_kostka::root_data::{dominant_conjugate, is_dominant, weyl_elements};
use osp_kostka::{BiWeight, GroupType, OspRootData, ProductType, QPoly};
use proptest::prelude::*;

fn group_type() -> impl Strategy<Value = GroupType> {
    (prop::bool::ANY, 1usize..=4).prop_map(|(d, r)| if d { GroupType::d(r) } else { GroupType::c(r) })
}

fn small_poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-5i64..=5, 0..6).prop_map(QPoly::new)
}

fn dominant_pair(n: usize, bound: i64) -> impl Strategy<Value = BiWeight> {
    let weights = OspRootData::new(n).unwrap().dominant_pairs_in_box(bound);
    prop::sample::select(weights)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_matches_sequential_action(ty in group_type(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), v in prop::collection::vec(-4i64..=4, 4)) {
        let group = weyl_elements(ty).unwrap();
        let (a, b) = (&group[i.index(group.len())], &group[j.index(group.len())]);
        let v = &v[..ty.rank];
        let ab = a.compose(b).unwrap();
        prop_assert_eq!(ab.act(v).unwrap(), a.act(&b.act(v).unwrap()).unwrap());
        prop_assert_eq!(ab.sign(), a.sign() * b.sign());
        prop_assert!(group.contains(&ab));
    }

    #[test]
    fn dominant_conjugate_is_dominant_and_in_orbit(ty in group_type(), v in prop::collection::vec(-5i64..=5, 4)) {
        let v = &v[..ty.rank];
        let (dom, w) = dominant_conjugate(ty, v).unwrap();
        prop_assert!(is_dominant(ty, &dom));
        prop_assert_eq!(w.act(v).unwrap(), dom.clone());
        let group = weyl_elements(ty).unwrap();
        prop_assert!(group.contains(&w));
        let count = group.iter().filter(|g| is_dominant(ty, &g.act(v).unwrap())).map(|g| g.act(v).unwrap()).collect::<std::collections::BTreeSet<_>>();
        prop_assert_eq!(count.into_iter().collect::<Vec<_>>(), vec![dom]);
    }

    #[test]
    fn poly_ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!((&a * &b).eval(2), a.eval(2) * b.eval(2));
    }

    #[test]
    fn biweight_display_round_trips(eps in prop::collection::vec(-9i64..=9, 0..4), delta in prop::collection::vec(-9i64..=9, 0..4)) {
        let w = BiWeight::new(eps, delta);
        prop_assert_eq!(w.to_string().parse::<BiWeight>().unwrap(), w);
    }

    #[test]
    fn kostka_diagonal_is_one(n in 3usize..=5, i in any::<prop::sample::Index>()) {
        let d = OspRootData::new(n).unwrap();
        let weights = d.dominant_pairs_in_box(3);
        let l = &weights[i.index(weights.len())];
        prop_assert_eq!(KostkaEngine::new(&d).kostka(l, l).unwrap(), QPoly::one());
    }

    #[test]
    fn dominance_is_cone_membership(l in dominant_pair(5, 2), m in dominant_pair(5, 2)) {
        let d = OspRootData::new(5).unwrap();
        let ge = d.dominance_ge(&l, &m).unwrap();
        prop_assert_eq!(ge, d.simple_root_coordinates(&l.sub(&m)).is_some());
        prop_assert_eq!(ge, d.dominance_certificate(&l, &m).unwrap().is_some());
    }

    #[test]
    fn closure_is_monotone_for_gl_order(l in dominant_pair(4, 2), m in dominant_pair(4, 2)) {
        let d = OspRootData::new(4).unwrap();
        let (ol, om) = (OrbitLabel::from_pair(&d, &l), OrbitLabel::from_pair(&d, &m));
        if closure_le(&d, &om, &ol).unwrap() {
            let (a, b) = (gl_bisignature(&d, &ol).unwrap(), gl_bisignature(&d, &om).unwrap());
            prop_assert!(gl_bisignature_ge((&a.0, &a.1), (&b.0, &b.1)).unwrap());
        }
    }

    #[test]
    fn tensor_products_of_c2_irreducibles(a in prop::sample::select(vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 0], vec![2, 1]]),
                                          b in prop::sample::select(vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 2]])) {
        let l = ProductType::single(GroupType::c(2));
        let (x, y) = (irreducible_character(&l, &a).unwrap(), irreducible_character(&l, &b).unwrap());
        let p = x.product(&y).unwrap();
        prop_assert_eq!(p.clone(), y.product(&x).unwrap());
        prop_assert_eq!(p.dim(), x.dim() * y.dim());
        let dec = decompose(&p).unwrap();
        prop_assert!(dec.values().all(|&m| m > 0));
        let mut rebuilt = CharElt::zero(l.clone());
        for (w, m) in &dec {
            rebuilt.add_assign_scaled(&irreducible_character(&l, w).unwrap(), *m).unwrap();
        }
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn pfaffian_squares_to_determinant(upper in prop::collection::vec(-6i64..=6, 15)) {
        // row i of the strict upper triangle starts at i(11 - i)/2
        let at = |i: usize, j: usize| upper[i * (11 - i) / 2 + j - i - 1];
        let rows: Vec<Vec<i64>> = (0..6)
            .map(|i| (0..6).map(|j| match i.cmp(&j) {
                std::cmp::Ordering::Less => at(i, j),
                std::cmp::Ordering::Greater => -at(j, i),
                std::cmp::Ordering::Equal => 0,
            }).collect())
            .collect();
        let m = RationalMatrix::from_i64(&rows);
        let pf = pfaffian(&m).unwrap();
        prop_assert_eq!(&pf * &pf, m.det().unwrap());
    }
}
