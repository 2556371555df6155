//! Fixed points of `P^k` through their torus preimages.
//!
//! `Φ(kx) = Φ(x)` holds iff `kx ≡ A_w x (mod Z^n)` for some w, where `A_w`
//! is the contragredient action of w on torus coordinates. For each w the
//! solutions of `(kI - A_w) x ∈ Z^n` are the cosets read off a Smith form;
//! their Φ-values are then merged numerically.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;

use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::exppoly::FundamentalInvariants;
use crate::matrix::IntMatrix;
use crate::rootsys::{LieType, RootSystem};
use crate::weyl::WeylGroup;

/// Two Φ-values closer than this (∞-norm over real and imaginary parts)
/// are the same fixed point.
pub const DEDUP_TOLERANCE: f64 = 1e-6;
/// Distinct fixed points must be at least this far apart.
pub const DEDUP_GUARD: f64 = 1e-5;

/// One torus solution, attached to the group element that produced it.
#[derive(Clone, Debug)]
pub struct TorusSolution {
    pub element: usize,
    pub element_order: u32,
    /// Coordinates reduced into `[0, 1)`.
    pub coords: Vec<Ratio<i64>>,
    /// Index into `FixedPointSet::points`.
    pub cluster: usize,
}

#[derive(Clone, Debug)]
pub struct FixedPointSet {
    pub lie_type: LieType,
    pub k: u64,
    pub points: Vec<Vec<Complex64>>,
    pub solutions: Vec<TorusSolution>,
}

fn reduce_mod_one(r: Ratio<i64>) -> Ratio<i64> {
    r - r.floor()
}

/// All `x ∈ (Q/Z)^n` with `m x ∈ Z^n`, for nonsingular `m`.
pub fn integer_preimage_cosets(m: &IntMatrix) -> Result<Vec<Vec<Ratio<i64>>>> {
    let n = m.dim();
    let snf = smith_normal_form(m);
    if snf.diagonal.contains(&0) {
        return Err(Error::Consistency("singular matrix has infinitely many preimage cosets".into()));
    }
    // U m V = D, so m x ∈ Z^n iff D V^{-1} x ∈ Z^n: x = V y with y_i ∈ (1/d_i) Z.
    let total: i64 = snf.diagonal.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0i64; n];
    for _ in 0..total {
        let x: Vec<Ratio<i64>> = (0..n)
            .map(|r| {
                let s = (0..n).fold(Ratio::zero(), |acc, j| acc + Ratio::new(snf.v.get(r, j) * digits[j], snf.diagonal[j]));
                reduce_mod_one(s)
            })
            .collect();
        out.push(x);
        for (d, &base) in digits.iter_mut().zip(&snf.diagonal) {
            *d += 1;
            if *d < base {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

fn is_integral_image(m: &IntMatrix, x: &[Ratio<i64>]) -> bool {
    (0..m.dim()).all(|r| (0..m.dim()).fold(Ratio::zero(), |acc: Ratio<i64>, j| acc + x[j] * m.get(r, j)).is_integer())
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x.re - y.re).abs().max((x.im - y.im).abs())).fold(0.0, f64::max)
}

/// Merges Φ-values into clusters. Points are swept in order of the first
/// real coordinate; a point within the guard band of a cluster but outside
/// its tolerance is an error, never a silent split.
fn cluster(values: &[Vec<Complex64>]) -> Result<(Vec<usize>, Vec<usize>)> {
    let key = |i: usize| values[i].first().map_or(0.0, |c| c.re);
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| key(a).total_cmp(&key(b)));
    let mut assignment = vec![usize::MAX; values.len()];
    let mut reps: Vec<usize> = Vec::new();
    let mut active: VecDeque<usize> = VecDeque::new();
    for &i in &order {
        while active.front().is_some_and(|&c| key(reps[c]) < key(i) - DEDUP_GUARD) {
            active.pop_front();
        }
        let mut hit = None;
        for &c in &active {
            let d = distance(&values[reps[c]], &values[i]);
            if d <= DEDUP_TOLERANCE {
                if hit.is_some() {
                    return Err(Error::DedupAmbiguity { distance: d, tolerance: DEDUP_TOLERANCE });
                }
                hit = Some(c);
            } else if d <= DEDUP_GUARD {
                return Err(Error::DedupAmbiguity { distance: d, tolerance: DEDUP_TOLERANCE });
            }
        }
        let c = hit.unwrap_or_else(|| {
            reps.push(i);
            active.push_back(reps.len() - 1);
            reps.len() - 1
        });
        assignment[i] = c;
    }
    Ok((assignment, reps))
}

/// A torus point with its Φ-value.
type Located = (Vec<Ratio<i64>>, Vec<Complex64>);

pub fn fixed_points(t: LieType, k: u64) -> Result<FixedPointSet> {
    let g = WeylGroup::generate(t)?;
    fixed_points_in(&g, k)
}

pub fn fixed_points_in(g: &WeylGroup, k: u64) -> Result<FixedPointSet> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    let t = g.lie_type();
    let n = g.rank();
    let phi = FundamentalInvariants::new(&RootSystem::new(t));
    let ki = IntMatrix::scalar(n, k as i64);
    let per_element: Vec<Vec<Located>> = g
        .elements()
        .par_iter()
        .map(|w| {
            let m = ki.sub(&w.torus_action());
            let cosets = integer_preimage_cosets(&m)?;
            if cosets.len() as i64 != m.det().abs() || !cosets.iter().all(|x| is_integral_image(&m, x)) {
                return Err(Error::Consistency(format!("{t}: bad coset enumeration for kI - A_w")));
            }
            Ok(cosets.into_iter().map(|x| { let v = phi.eval_rational(&x); (x, v) }).collect())
        })
        .collect::<Result<_>>()?;

    let mut solutions = Vec::new();
    let mut values = Vec::new();
    for (element, sols) in per_element.into_iter().enumerate() {
        for (coords, v) in sols {
            solutions.push(TorusSolution { element, element_order: g.element_order(element), coords, cluster: 0 });
            values.push(v);
        }
    }
    let (assignment, reps) = cluster(&values)?;
    for (s, c) in solutions.iter_mut().zip(assignment) {
        s.cluster = c;
    }
    let expected = (k as u128).pow(n as u32);
    if reps.len() as u128 != expected {
        return Err(Error::FixedPointCount { found: reps.len(), expected });
    }
    let points = reps.iter().map(|&i| values[i].clone()).collect();
    Ok(FixedPointSet { lie_type: t, k, points, solutions })
}

impl FixedPointSet {
    /// Every solution attached to w has denominators dividing `k^ord(w) - 1`.
    pub fn denominators_divide(&self) -> bool {
        let k = BigInt::from(self.k);
        self.solutions.iter().all(|s| {
            let bound: BigInt = k.pow(s.element_order) - 1u32;
            s.coords.iter().all(|c| (&bound % BigInt::from(*c.denom())).is_zero())
        })
    }

    pub fn max_denominator(&self) -> i64 {
        self.solutions.iter().flat_map(|s| s.coords.iter().map(|c| *c.denom())).max().unwrap_or(1)
    }
}

pub fn denominator_check(t: LieType, k: u64) -> Result<bool> {
    Ok(fixed_points(t, k)?.denominators_divide())
}


#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_real(set: &FixedPointSet) -> Vec<f64> {
        let mut v: Vec<f64> = set.points.iter().map(|p| p[0].re).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn a1_fixed_values() {
        let a1 = "A1".parse().unwrap();
        let v = sorted_real(&fixed_points(a1, 2).unwrap());
        assert!((v[0] + 1.0).abs() < 1e-12 && (v[1] - 2.0).abs() < 1e-12);
        let v = sorted_real(&fixed_points(a1, 3).unwrap());
        for (a, b) in v.iter().zip([-2.0, 0.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn a1_minus_one_has_thirds() {
        let set = fixed_points("A1".parse().unwrap(), 2).unwrap();
        assert!(set.denominators_divide());
        let reflected: Vec<_> = set.solutions.iter().filter(|s| s.element_order == 2).collect();
        assert_eq!(reflected.len(), 3);
        assert!(reflected.iter().all(|s| 3 % s.coords[0].denom() == 0));
        let trivial: Vec<_> = set.solutions.iter().filter(|s| s.element_order == 1).collect();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].coords[0].is_zero());
    }

    #[test]
    fn counts_rank_two() {
        for (t, k) in [("A2", 2), ("A2", 3), ("G2", 2)] {
            let set = fixed_points(t.parse().unwrap(), k).unwrap();
            assert_eq!(set.points.len() as u64, k * k);
            assert!(set.denominators_divide());
        }
    }

    #[test]
    fn cosets_of_diagonal() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let c = integer_preimage_cosets(&m).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.iter().all(|x| is_integral_image(&m, x)));
    }

    #[test]
    fn guard_band_trips() {
        let a = vec![Complex64::new(0.0, 0.0)];
        let b = vec![Complex64::new(3e-6, 0.0)];
        assert!(matches!(cluster(&[a.clone(), b]), Err(Error::DedupAmbiguity { .. })));
        let c = vec![Complex64::new(1e-9, 0.0)];
        assert_eq!(cluster(&[a, c]).unwrap().1.len(), 1);
    }
}
