use proptest::prelude::*;

use endochain::analysis::{
    identities, is_closed_under, is_subsemiring, iso_check, similar_pairs, triviality, Op, Side,
};
use endochain::counting::{binom, catalan};
use endochain::diagram::{render_ascii, ColorBy, Layout};
use endochain::simplex::{LayerId, SimplexSpec};
use endochain::strings::{partition_string, string_mul_cases, StringElem, StringSpec};
use endochain::triangle::{TriVertex, TriangleSpec};
use endochain::{format_compact, parse_compact, ChainEndo, Subset};

fn endo_of(n: usize) -> impl Strategy<Value = ChainEndo> {
    prop::collection::vec(0..n, n).prop_map(move |mut v| {
        v.sort();
        ChainEndo::new(n, &v).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (ChainEndo, ChainEndo, ChainEndo)> {
    (1usize..=24).prop_flat_map(|n| (endo_of(n), endo_of(n), endo_of(n)))
}

fn triangle() -> impl Strategy<Value = TriangleSpec> {
    (3usize..=12)
        .prop_flat_map(|n| {
            prop::sample::subsequence((0..n).collect::<Vec<_>>(), 3).prop_map(move |v| (n, v))
        })
        .prop_map(|(n, v)| TriangleSpec::new(n, v[0], v[1], v[2]).unwrap())
}

fn string() -> impl Strategy<Value = StringSpec> {
    (2usize..=10)
        .prop_flat_map(|n| {
            prop::sample::subsequence((0..n).collect::<Vec<_>>(), 2).prop_map(move |v| (n, v))
        })
        .prop_map(|(n, v)| StringSpec::new(n, v[0], v[1]).unwrap())
}

fn simplex() -> impl Strategy<Value = SimplexSpec> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::btree_set(0..n, 1..=n)))
        .prop_map(|(n, vs)| SimplexSpec::new(n, &vs.into_iter().collect::<Vec<_>>()).unwrap())
}

proptest! {
    #[test]
    fn semiring_laws((x, y, z) in triple()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x + &x, x.clone());
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        let prod = &x * &y;
        prop_assert!(prod.values().windows(2).all(|w| w[0] <= w[1]));
        for i in 0..x.n() {
            prop_assert_eq!(prod.get(i), y.get(x.get(i)));
        }
    }

    #[test]
    fn powers_add_exponents(x in (1usize..=16).prop_flat_map(endo_of), s in 1usize..6, t in 1usize..6) {
        prop_assert_eq!(x.power(s + t).unwrap(), &x.power(s).unwrap() * &x.power(t).unwrap());
        let e = x.eventual_idempotent();
        prop_assert!(e.is_idempotent());
        prop_assert_eq!(x.power(x.n()).unwrap(), e);
    }

    #[test]
    fn nilpotency_by_powers(x in (1usize..=12).prop_flat_map(endo_of)) {
        let n = x.n();
        for a in 0..n {
            let target = ChainEndo::constant(n, a).unwrap();
            let hit = (1..=n).any(|t| x.power(t).unwrap() == target);
            prop_assert_eq!(x.is_nilpotent_to(a).unwrap(), hit);
        }
    }

    #[test]
    fn compact_round_trip(x in (1usize..=40).prop_flat_map(endo_of)) {
        let text = format_compact(&x);
        prop_assert_eq!(parse_compact(&text, x.n()).unwrap(), x);
    }

    #[test]
    fn closure_witnesses_recheck(s in simplex(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..8)) {
        let all = s.enumerate();
        let chosen: Vec<ChainEndo> = picks.iter().map(|i| all[i.index(all.len())].clone()).collect();
        let sub = Subset::new(chosen).unwrap();
        let v = is_subsemiring(&sub);
        match v.witness {
            Some(w) => {
                prop_assert!(!v.holds);
                prop_assert!(w.recheck());
                prop_assert!(sub.contains(&w.left) && sub.contains(&w.right));
                prop_assert!(!sub.contains(&w.result));
            }
            None => {
                for x in sub.iter() {
                    for y in sub.iter() {
                        prop_assert!(sub.contains(&(x + y)) && sub.contains(&(x * y)));
                    }
                }
            }
        }
    }

    #[test]
    fn layers_partition_simplex(s in simplex()) {
        let total = s.enumerate().len();
        prop_assert_eq!(total as u128, s.order());
        for m in 0..s.k() {
            let sum: usize = (0..=s.n()).map(|l| s.layer(LayerId { m, s: l }).unwrap().len()).sum();
            prop_assert_eq!(sum, total);
        }
    }

    #[test]
    fn string_products(s in string(), k in 0usize..=10, l in 0usize..=10, x in 0usize..10, dy in 1usize..10) {
        let n = s.n();
        let (k, l) = (k % (n + 1), l % (n + 1));
        let x = x % (n - 1);
        let y = (x + dy) % n;
        prop_assume!(y > x);
        let t = StringSpec::new(n, x, y).unwrap();
        let left = StringElem { spec: s, l: k };
        let right = StringElem { spec: t, l };
        prop_assert_eq!(string_mul_cases(left, right).unwrap(), &left.to_endo() * &right.to_endo());
    }

    #[test]
    fn trivial_parts_square_to_iota(s in string()) {
        let p = partition_string(&s);
        for (part, lower) in [(p.nil_a, true), (p.nil_b, false)] {
            let sub = Subset::new(part).unwrap();
            let v = triviality(&sub).unwrap();
            prop_assert!(v.is_trivial);
            let iota = v.iota.clone().unwrap();
            for x in sub.iter() {
                prop_assert_eq!(&(x * x), &iota);
            }
            if lower {
                prop_assert!(v.lower && Some(&iota) == sub.minimum());
            } else {
                prop_assert!(v.upper && Some(&iota) == sub.maximum());
            }
        }
    }

    #[test]
    fn right_identity_excludes_right_similarity(t in triangle()) {
        let sub = t.subset();
        let ids = identities(&sub);
        prop_assert!(!ids.right.is_empty());
        prop_assert!(similar_pairs(&sub, Side::Right).is_empty());
        prop_assert_eq!(ids.right, t.right_identities());
    }

    #[test]
    fn render_letters_match_regions(t in triangle()) {
        let layout = Layout::new(&t);
        prop_assert_eq!(layout.cells().count(), t.order());
        let text = render_ascii(&t, ColorBy::Region);
        for cell in layout.cells() {
            let label = format!("{}[{}]", t.region_of(&cell.endo).letter(), cell.endo);
            prop_assert!(text.contains(&label), "missing {}", label);
        }
        prop_assert_eq!(render_ascii(&t, ColorBy::Region), text);
    }

    #[test]
    fn boundary_closed_under_mul(t in triangle()) {
        let b = Subset::new(t.simplex().boundary()).unwrap();
        prop_assert!(is_closed_under(&b, &[Op::Mul]).holds);
    }
}

#[test]
fn iso_is_an_equivalence_on_layers_and_strings() {
    for n in 3..=6 {
        for t in TriangleSpec::all(n) {
            for vertex in [TriVertex::A, TriVertex::C] {
                for k in t.basic_range(vertex).unwrap() {
                    let layer = Subset::new(t.basic_layer(vertex, k).unwrap().elements).unwrap();
                    let target = t.layer_string_iso(vertex, k).unwrap().target.subset();
                    assert!(iso_check(&layer, &layer).unwrap().holds);
                    let there = iso_check(&layer, &target).unwrap();
                    let back = iso_check(&target, &layer).unwrap();
                    assert!(there.holds && back.holds);
                    // composing layer → string → layer gives an automorphism
                    let f = there.mapping.unwrap();
                    let g = back.mapping.unwrap();
                    for (x, y) in &f {
                        let z = &g.iter().find(|(u, _)| u == y).unwrap().1;
                        assert!(layer.contains(z), "{x} ↦ {y} ↦ {z}");
                    }
                }
            }
        }
    }
}

#[test]
fn catalan_and_pascal() {
    assert_eq!(catalan(0), Some(1));
    for k in 0..20u128 {
        let sum: u128 = (0..=k)
            .map(|i| catalan(i).unwrap() * catalan(k - i).unwrap())
            .sum();
        assert_eq!(catalan(k + 1).unwrap(), sum);
    }
    for n in 1..40u128 {
        for k in 1..n {
            assert_eq!(
                binom(n, k),
                Some(binom(n - 1, k - 1).unwrap() + binom(n - 1, k).unwrap())
            );
        }
    }
}
