//! Cartan data and coordinate conventions.
//!
//! Weights are integer vectors in the fundamental-weight basis. Torus points
//! are vectors in the dual basis, so the pairing of a weight with a point is
//! the plain dot product. The j-th simple root is the j-th column of the
//! Cartan matrix, and the simple reflection `s_i` sends
//! `λ ↦ λ - λ_i * column_i`.
//!
//! Node numbering follows Bourbaki:
//!
//! | type | nodes                                                   |
//! |------|---------------------------------------------------------|
//! | A_n  | chain 1 - 2 - ... - n                                   |
//! | B_n  | chain, double bond n-1 => n, α_n short                  |
//! | C_n  | chain, double bond n-1 <= n, α_n long                   |
//! | D_n  | chain 1 - ... - (n-2), nodes n-1 and n both on n-2      |
//! | G2   | α_1 short, α_2 long                                     |
//! | F4   | α_1, α_2 long, α_3, α_4 short, double bond 2 => 3       |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Largest rank accepted for the classical families.
pub const DEFAULT_MAX_RANK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
    F,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G => "G",
            Family::F => "F",
            Family::E => "E",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        Self::with_max_rank(family, rank, DEFAULT_MAX_RANK)
    }

    pub fn with_max_rank(family: Family, rank: usize, max_rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => (1..=max_rank).contains(&rank),
            Family::B | Family::C => (2..=max_rank).contains(&rank),
            Family::D => (3..=max_rank).contains(&rank),
            Family::G => rank == 2,
            Family::F => rank == 4,
            Family::E => false,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::UnsupportedType { family: family.to_string(), rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Classical order formula for the Weyl group.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |m: u64| (1..=m).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1 << n) * fact(n),
            Family::D => (1 << (n - 1)) * fact(n),
            Family::G => 12,
            Family::F => 1152,
            Family::E => unreachable!("E types are rejected at construction"),
        }
    }

    /// Every supported type up to the default rank cap.
    pub fn all_supported() -> Vec<LieType> {
        let mut out = Vec::new();
        for (family, lo) in [(Family::A, 1), (Family::B, 2), (Family::C, 2), (Family::D, 3)] {
            for rank in lo..=DEFAULT_MAX_RANK {
                out.push(LieType { family, rank });
            }
        }
        out.push(LieType { family: Family::G, rank: 2 });
        out.push(LieType { family: Family::F, rank: 4 });
        out
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G,
            Some('F') => Family::F,
            Some('E') => Family::E,
            _ => return Err(Error::BadTypeName(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::BadTypeName(s.to_string()))?;
        Self::new(family, rank)
    }
}

impl Serialize for LieType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LieType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The j-th fundamental weight, 1-based.
    pub fn fundamental(rank: usize, j: usize) -> Self {
        let mut v = vec![0; rank];
        v[j - 1] = 1;
        Weight(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

/// Cartan matrix: `entries[i][j] = <α_j, α_i^∨>`, so column j is α_j in the
/// ω-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix(IntMatrix);

impl CartanMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.0.get(i, j)
    }
}

pub fn cartan_matrix(t: LieType) -> CartanMatrix {
    let n = t.rank();
    let mut m = IntMatrix::scalar(n, 2);
    let mut link = |i: usize, j: usize, ij: i64, ji: i64| {
        m.set(i, j, ij);
        m.set(j, i, ji);
    };
    match t.family() {
        Family::A => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1, -1, -1);
            }
        }
        Family::B | Family::C => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // B: α_n short, <α_n, α_{n-1}^∨> = -1 and <α_{n-1}, α_n^∨> = -2.
            if t.family() == Family::B {
                link(n - 2, n - 1, -1, -2);
            } else {
                link(n - 2, n - 1, -2, -1);
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        Family::G => link(0, 1, -3, -1),
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Family::E => unreachable!("E types are rejected at construction"),
    }
    CartanMatrix(m)
}

/// Root-system data shared by the Weyl group and the invariant algebra.
#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: CartanMatrix,
    cartan_adj: IntMatrix,
    cartan_det: i64,
    simple_roots: Vec<Weight>,
}

impl RootSystem {
    pub fn new(t: LieType) -> Self {
        let cartan = cartan_matrix(t);
        let cartan_adj = cartan.matrix().adjugate();
        // Cartan matrices of finite type are positive definite up to symmetrization.
        let cartan_det = cartan.matrix().det();
        debug_assert!(cartan_det > 0);
        let simple_roots = (0..t.rank()).map(|j| Weight(cartan.matrix().column(j))).collect();
        Self { lie_type: t, cartan, cartan_adj, cartan_det, simple_roots }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn cartan_det(&self) -> i64 {
        self.cartan_det
    }

    /// Simple root α_i (1-based) in the ω-basis.
    pub fn simple_root(&self, i: usize) -> Result<&Weight> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank() });
        }
        Ok(&self.simple_roots[i - 1])
    }

    /// `det(C) * C^{-1} λ`: simple-root coordinates scaled to integers.
    pub fn scaled_root_coords(&self, w: &Weight) -> Vec<i64> {
        self.cartan_adj.mul_vec(&w.0)
    }

    /// Height scaled by `det(C)`; a strictly dominance-monotone functional.
    pub fn scaled_height(&self, w: &Weight) -> i64 {
        self.scaled_root_coords(w).iter().sum()
    }

    /// `μ ≤ λ` in dominance order: λ - μ is a nonnegative combination of
    /// simple roots.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.scaled_root_coords(&lambda.sub(mu)).iter().all(|&c| c >= 0)
    }

    /// Applies the simple reflection `s_i` (0-based) in place.
    pub fn reflect_in_place(&self, w: &mut Weight, i: usize) {
        let c = w.0[i];
        if c != 0 {
            for (x, a) in w.0.iter_mut().zip(&self.simple_roots[i].0) {
                *x -= c * a;
            }
        }
    }

    /// The unique dominant weight in the W-orbit of `w`.
    pub fn dominant_rep(&self, w: &Weight) -> Weight {
        let mut v = w.clone();
        while let Some(i) = v.0.iter().position(|&c| c < 0) {
            self.reflect_in_place(&mut v, i);
        }
        v
    }
}

impl RootSystem {
    /// W-orbit of a weight, generated by simple reflections; sorted.
    pub fn orbit_of(&self, w: &Weight) -> Vec<Weight> {
        let mut seen = std::collections::HashSet::new();
        seen.insert(w.clone());
        let mut frontier = vec![w.clone()];
        while let Some(v) = frontier.pop() {
            for i in 0..self.rank() {
                if v.0[i] == 0 {
                    continue;
                }
                let mut u = v.clone();
                self.reflect_in_place(&mut u, i);
                if seen.insert(u.clone()) {
                    frontier.push(u);
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort();
        out
    }
}

pub fn simple_root_in_weight_basis(t: LieType, i: usize) -> Result<Weight> {
    RootSystem::new(t).simple_root(i).cloned()
}

pub fn dominance_leq(t: LieType, mu: &Weight, lambda: &Weight) -> bool {
    RootSystem::new(t).dominance_leq(mu, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn small_cartan_matrices() {
        assert_eq!(cartan_matrix(ty("A1")).matrix().rows(), vec![vec![2]]);
        assert_eq!(cartan_matrix(ty("A2")).matrix().rows(), vec![vec![2, -1], vec![-1, 2]]);
        let g2 = cartan_matrix(ty("G2"));
        assert_eq!(g2.entry(0, 1) * g2.entry(1, 0), 3);
    }

    #[test]
    fn cartan_axioms_and_determinants() {
        for t in LieType::all_supported() {
            let c = cartan_matrix(t);
            let n = t.rank();
            for i in 0..n {
                assert_eq!(c.entry(i, i), 2);
                for j in 0..n {
                    if i != j {
                        assert!(c.entry(i, j) <= 0);
                        assert_eq!(c.entry(i, j) == 0, c.entry(j, i) == 0);
                    }
                }
            }
            let expected = match t.family() {
                Family::A => n as i64 + 1,
                Family::B | Family::C => 2,
                Family::D => 4,
                _ => 1,
            };
            assert_eq!(c.matrix().det(), expected, "{t}");
        }
    }

    #[test]
    fn simple_roots() {
        assert_eq!(simple_root_in_weight_basis(ty("A1"), 1).unwrap(), Weight(vec![2]));
        assert_eq!(simple_root_in_weight_basis(ty("A2"), 1).unwrap(), Weight(vec![2, -1]));
        let g2 = cartan_matrix(ty("G2"));
        assert_eq!(simple_root_in_weight_basis(ty("G2"), 1).unwrap().0, g2.matrix().column(0));
        assert!(matches!(
            simple_root_in_weight_basis(ty("A2"), 3),
            Err(Error::IndexOutOfRange { index: 3, rank: 2 })
        ));
        for t in LieType::all_supported() {
            for i in 1..=t.rank() {
                assert_eq!(simple_root_in_weight_basis(t, i).unwrap().0[i - 1], 2);
            }
        }
    }

    #[test]
    fn dominance_examples() {
        let a1 = ty("A1");
        let a2 = ty("A2");
        assert!(dominance_leq(a1, &Weight(vec![3]), &Weight(vec![3])));
        assert!(dominance_leq(a1, &Weight(vec![0]), &Weight(vec![2])));
        assert!(dominance_leq(a2, &Weight(vec![0, 0]), &Weight(vec![1, 1])));
        assert!(!dominance_leq(a2, &Weight(vec![1, 1]), &Weight(vec![0, 0])));
    }

    #[test]
    fn type_names() {
        assert_eq!(ty("B3").to_string(), "B3");
        assert!(matches!("E8".parse::<LieType>(), Err(Error::UnsupportedType { .. })));
        assert!("D2".parse::<LieType>().is_err());
        assert!("G3".parse::<LieType>().is_err());
        assert!("A7".parse::<LieType>().is_err());
        assert!("X1".parse::<LieType>().is_err());
        assert_eq!(LieType::all_supported().len(), 6 + 5 + 5 + 4 + 2);
    }
}
