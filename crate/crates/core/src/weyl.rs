//! The Weyl group as explicit integer matrices on weight coordinates.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rootsys::{LieType, RootSystem, Weight};

/// Default cap on |W| for full enumeration.
pub const DEFAULT_GROUP_CAP: u64 = 2_000_000;

const MAX_ELEMENT_ORDER: u32 = 64;

/// A group element as the matrix `T_w` acting on ω-coordinate column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement(IntMatrix);

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement(IntMatrix::identity(rank))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement(self.0.mul(&other.0))
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(self.0.mul_vec(&w.0))
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement(self.0.inverse_unimodular().expect("Weyl elements are unimodular"))
    }

    /// The contragredient `(T_w^{-1})^T`: the action on torus coordinates
    /// that preserves the weight/point pairing.
    pub fn torus_action(&self) -> IntMatrix {
        self.inverse().0.transpose()
    }

    pub fn order(&self) -> u32 {
        let mut acc = self.0.clone();
        for s in 1..=MAX_ELEMENT_ORDER {
            if acc.is_identity() {
                return s;
            }
            acc = acc.mul(&self.0);
        }
        panic!("element order exceeds {MAX_ELEMENT_ORDER}: not a Weyl group element");
    }

    pub fn char_poly(&self) -> Vec<i64> {
        self.0.char_poly()
    }
}

pub fn simple_reflection(t: LieType, i: usize) -> Result<WeylElement> {
    let rs = RootSystem::new(t);
    reflection_from(&rs, i)
}

fn reflection_from(rs: &RootSystem, i: usize) -> Result<WeylElement> {
    let alpha = rs.simple_root(i)?;
    let n = rs.rank();
    let mut m = IntMatrix::identity(n);
    // column c is the image of ω_c; only ω_i moves: ω_i ↦ ω_i - α_i
    for r in 0..n {
        m.set(r, i - 1, m.get(r, i - 1) - alpha.0[r]);
    }
    Ok(WeylElement(m))
}

/// The full Weyl group with per-element order and characteristic polynomial.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    lie_type: LieType,
    elements: Vec<WeylElement>,
    orders: Vec<u32>,
    charpoly_ids: Vec<usize>,
    charpoly_set: Vec<Vec<i64>>,
    order_set: Vec<u32>,
}

impl WeylGroup {
    pub fn generate(t: LieType) -> Result<Self> {
        Self::generate_with_cap(t, DEFAULT_GROUP_CAP)
    }

    /// Breadth-first closure of the simple reflections. Elements are listed
    /// by BFS layer (word length), each layer sorted lexicographically.
    pub fn generate_with_cap(t: LieType, cap: u64) -> Result<Self> {
        let expected = t.weyl_order();
        if expected > cap {
            return Err(Error::GroupTooLarge { order: expected, cap });
        }
        let rs = RootSystem::new(t);
        let gens: Vec<WeylElement> =
            (1..=t.rank()).map(|i| reflection_from(&rs, i)).collect::<Result<_>>()?;
        let identity = WeylElement::identity(t.rank());
        let mut seen: HashSet<WeylElement> = HashSet::new();
        seen.insert(identity.clone());
        let mut elements = vec![identity.clone()];
        let mut layer = vec![identity];
        while !layer.is_empty() {
            let mut next = BTreeSet::new();
            for g in &layer {
                for s in &gens {
                    let h = s.compose(g);
                    if !seen.contains(&h) {
                        next.insert(h);
                    }
                }
            }
            if (seen.len() + next.len()) as u64 > cap {
                return Err(Error::GroupTooLarge { order: (seen.len() + next.len()) as u64, cap });
            }
            layer = next.into_iter().collect();
            for h in &layer {
                seen.insert(h.clone());
            }
            elements.extend(layer.iter().cloned());
        }
        if elements.len() as u64 != expected {
            return Err(Error::Consistency(format!(
                "{t}: generated {} elements, expected {expected}",
                elements.len()
            )));
        }

        let orders: Vec<u32> = elements.iter().map(WeylElement::order).collect();
        let order_set: Vec<u32> = orders.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let polys: Vec<Vec<i64>> = elements.iter().map(WeylElement::char_poly).collect();
        let charpoly_set: Vec<Vec<i64>> = polys.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let charpoly_ids = polys
            .iter()
            .map(|p| charpoly_set.binary_search(p).expect("present"))
            .collect();
        Ok(Self { lie_type: t, elements, orders, charpoly_ids, charpoly_set, order_set })
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    /// Order of element `idx`.
    pub fn element_order(&self, idx: usize) -> u32 {
        self.orders[idx]
    }

    /// Sorted set of element orders.
    pub fn order_set(&self) -> &[u32] {
        &self.order_set
    }

    /// Distinct characteristic polynomials, sorted; the position in this
    /// list is the charpoly id used in reports.
    pub fn charpoly_set(&self) -> &[Vec<i64>] {
        &self.charpoly_set
    }

    pub fn charpoly_id(&self, idx: usize) -> usize {
        self.charpoly_ids[idx]
    }

    /// `{T_w λ : w ∈ W}` without repetition, sorted.
    pub fn orbit(&self, lambda: &Weight) -> Vec<Weight> {
        let set: BTreeSet<Weight> = self.elements.iter().map(|w| w.apply(lambda)).collect();
        set.into_iter().collect()
    }

    pub fn stabilizer_size(&self, lambda: &Weight) -> usize {
        self.elements.iter().filter(|w| w.apply(lambda) == *lambda).count()
    }
}

pub fn char_poly(w: &WeylElement) -> Vec<i64> {
    w.char_poly()
}

pub fn orbit(g: &WeylGroup, lambda: &Weight) -> Vec<Weight> {
    g.orbit(lambda)
}

/// Horner evaluation of an integer polynomial (low-to-high coefficients) at
/// an arbitrary-precision integer.
pub fn eval_poly_big(coeffs: &[i64], x: &num_bigint::BigInt) -> num_bigint::BigInt {
    coeffs
        .iter()
        .rev()
        .fold(num_bigint::BigInt::from(0), |acc, &c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn reflections() {
        assert_eq!(simple_reflection(ty("A1"), 1).unwrap().matrix().rows(), vec![vec![-1]]);
        let s1 = simple_reflection(ty("A2"), 1).unwrap();
        // s_1(ω_1) = ω_1 - α_1 = (-1, 1); s_1(ω_2) = ω_2
        assert_eq!(s1.apply(&Weight(vec![1, 0])), Weight(vec![-1, 1]));
        assert_eq!(s1.apply(&Weight(vec![0, 1])), Weight(vec![0, 1]));
        assert_eq!(s1.matrix().rows(), vec![vec![-1, 0], vec![1, 1]]);
        assert_eq!(s1.torus_action().rows(), vec![vec![-1, 1], vec![0, 1]]);
        for t in LieType::all_supported() {
            for i in 1..=t.rank() {
                let s = simple_reflection(t, i).unwrap();
                assert!(s.compose(&s).matrix().is_identity(), "{t} s_{i}");
            }
        }
        assert!(simple_reflection(ty("A2"), 0).is_err());
    }

    #[test]
    fn small_groups() {
        let a2 = WeylGroup::generate(ty("A2")).unwrap();
        assert_eq!(a2.len(), 6);
        assert_eq!(a2.order_set(), &[1, 2, 3]);
        let g2 = WeylGroup::generate(ty("G2")).unwrap();
        assert_eq!(g2.len(), 12);
        assert_eq!(g2.order_set(), &[1, 2, 3, 6]);
        let a4 = WeylGroup::generate(ty("A4")).unwrap();
        assert_eq!(a4.len(), 120);
        assert_eq!(a4.order_set(), &[1, 2, 3, 4, 5, 6]);
        assert!(a2.elements()[0].matrix().is_identity());
    }

    #[test]
    fn group_cap() {
        assert!(matches!(
            WeylGroup::generate_with_cap(ty("A4"), 100),
            Err(Error::GroupTooLarge { order: 120, cap: 100 })
        ));
    }

    #[test]
    fn char_poly_examples() {
        let a1 = WeylGroup::generate(ty("A1")).unwrap();
        assert_eq!(a1.charpoly_set(), &[vec![-1, 1], vec![1, 1]]);
        // (x-1)^3
        assert_eq!(WeylElement::identity(3).char_poly(), vec![-1, 3, -3, 1]);
        // cycle type (2,3) in S5: (x-1)(x+1)(x^2+x+1) = x^4 + x^3 - x - 1
        let a4 = WeylGroup::generate(ty("A4")).unwrap();
        let idx = (0..a4.len()).find(|&i| a4.element_order(i) == 6).unwrap();
        assert_eq!(a4.elements()[idx].char_poly(), vec![-1, -1, 0, 1, 1]);
    }

    #[test]
    fn orbits() {
        let a2 = WeylGroup::generate(ty("A2")).unwrap();
        let o = a2.orbit(&Weight(vec![1, 0]));
        assert_eq!(o, vec![Weight(vec![-1, 1]), Weight(vec![0, -1]), Weight(vec![1, 0])]);
        assert_eq!(a2.stabilizer_size(&Weight(vec![1, 0])), 2);
        assert_eq!(a2.orbit(&Weight(vec![0, 0])), vec![Weight(vec![0, 0])]);
        let a1 = WeylGroup::generate(ty("A1")).unwrap();
        assert_eq!(a1.orbit(&Weight(vec![1])), vec![Weight(vec![-1]), Weight(vec![1])]);
    }
}
