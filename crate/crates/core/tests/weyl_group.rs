use std::collections::BTreeMap;

use lieperm::matrix::IntMatrix;
use lieperm::weyl::eval_poly_big;
use lieperm::{LieType, RootSystem, Weight, WeylGroup};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_types() -> Vec<LieType> {
    LieType::all_supported().into_iter().filter(|t| t.weyl_order() <= 2000).collect()
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Remainder of `a` by a monic `b`, low-to-high coefficients.
fn poly_rem_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= lead * c;
        }
        r.pop();
    }
    r
}

#[test]
fn element_orders_are_exact() {
    for t in small_types() {
        let g = WeylGroup::generate(t).unwrap();
        let n = g.rank();
        for (i, w) in g.elements().iter().enumerate() {
            let s = g.element_order(i);
            let mut p = IntMatrix::identity(n);
            for step in 1..=s {
                p = p.mul(w.matrix());
                assert_eq!(p.is_identity(), step == s, "{t} element {i}");
            }
        }
    }
}

#[test]
fn charpoly_divides_power_of_cyclotomic_product() {
    for t in small_types() {
        let g = WeylGroup::generate(t).unwrap();
        let n = g.rank();
        for (i, w) in g.elements().iter().enumerate() {
            let s = g.element_order(i) as usize;
            let mut xs1 = vec![0i64; s + 1];
            xs1[0] = -1;
            xs1[s] = 1;
            let mut power = vec![1i64];
            for _ in 0..n {
                power = poly_mul(&power, &xs1);
            }
            let chi = w.char_poly();
            assert_eq!(chi.len(), n + 1);
            assert!(poly_rem_monic(&power, &chi).iter().all(|&c| c == 0), "{t} element {i}");
        }
    }
}

#[test]
fn charpolys_never_vanish_at_integers_above_one() {
    for t in LieType::all_supported() {
        let g = WeylGroup::generate(t).unwrap();
        for chi in g.charpoly_set() {
            for k in 2..=12 {
                assert!(eval_poly_big(chi, &BigInt::from(k)) > BigInt::from(0), "{t} {chi:?} at {k}");
            }
        }
    }
}

#[test]
fn group_orders_match_classical_values() {
    for t in LieType::all_supported() {
        let g = WeylGroup::generate(t).unwrap();
        assert_eq!(g.len() as u64, t.weyl_order(), "{t}");
    }
}

#[test]
fn orbit_times_stabilizer() {
    for t in small_types() {
        let g = WeylGroup::generate(t).unwrap();
        let n = g.rank();
        for j in 1..=n {
            let w = Weight::fundamental(n, j);
            assert_eq!(g.orbit(&w).len() * g.stabilizer_size(&w), g.len(), "{t} ω{j}");
            assert_eq!(g.orbit(&w), RootSystem::new(t).orbit_of(&w));
        }
    }
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// On the A4 weight lattice w acts as S_5 on the sum-zero hyperplane, so
/// `χ_w(x) = Π_i (x^{c_i} - 1) / (x - 1)` over the cycle lengths `c_i`.
#[test]
fn a4_charpoly_values_match_cycle_types() {
    let g = WeylGroup::generate("A4".parse().unwrap()).unwrap();
    let mut observed: BTreeMap<i64, usize> = BTreeMap::new();
    for w in g.elements() {
        let v = eval_poly_big(&w.char_poly(), &BigInt::from(3));
        *observed.entry(i64::try_from(&v).unwrap()).or_default() += 1;
    }
    let fact = |m: usize| (1..=m).product::<usize>();
    let mut expected: BTreeMap<i64, usize> = BTreeMap::new();
    for p in partitions(5, 5) {
        let value: i64 = p.iter().map(|&c| 3i64.pow(c as u32) - 1).product::<i64>() / 2;
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &p {
            *mult.entry(c).or_default() += 1;
        }
        let centralizer: usize = mult.iter().map(|(&c, &m)| c.pow(m as u32) * fact(m)).product();
        *expected.entry(value).or_default() += 120 / centralizer;
    }
    assert_eq!(observed, expected);
    assert!(observed.keys().all(|v| v % 7 != 0));
}

fn rank_two() -> impl Strategy<Value = LieType> {
    prop_oneof![Just("A2"), Just("B2"), Just("C2"), Just("G2")].prop_map(|s| s.parse().unwrap())
}

proptest! {
    #[test]
    fn words_land_in_the_group(t in rank_two(), word in prop::collection::vec(0usize..2, 0..30)) {
        let g = WeylGroup::generate(t).unwrap();
        let mut m = lieperm::WeylElement::identity(2);
        for i in word {
            m = lieperm::weyl::simple_reflection(t, i + 1).unwrap().compose(&m);
        }
        prop_assert!(g.elements().contains(&m));
    }

    #[test]
    fn orbit_stabilizer_random_weights(t in rank_two(), a in -4i64..5, b in -4i64..5) {
        let g = WeylGroup::generate(t).unwrap();
        let w = Weight(vec![a, b]);
        prop_assert_eq!(g.orbit(&w).len() * g.stabilizer_size(&w), g.len());
        let rs = RootSystem::new(t);
        let dom = rs.dominant_rep(&w);
        prop_assert!(dom.is_dominant());
        prop_assert!(g.orbit(&w).contains(&dom));
    }
}
