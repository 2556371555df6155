use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::precise::{Dd, Fixed};
use crate::rootsys::{LieType, RootSystem, Weight};
use crate::weyl::WeylGroup;

/// Finitely supported map from weights to rationals: the Laurent element
/// `Σ c_λ e^λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightInvariant {
    lie_type: LieType,
    terms: BTreeMap<Weight, BigRational>,
}

impl WeightInvariant {
    pub fn zero(t: LieType) -> Self {
        Self { lie_type: t, terms: BTreeMap::new() }
    }

    pub fn constant(t: LieType, c: BigRational) -> Self {
        let mut f = Self::zero(t);
        f.add_term(Weight::zero(t.rank()), c);
        f
    }

    /// Sum of `e^μ` over the distinct weights μ of the orbit `W·λ`.
    pub fn orbit_sum(g: &WeylGroup, lambda: &Weight) -> Self {
        let mut f = Self::zero(g.lie_type());
        for mu in g.orbit(lambda) {
            f.terms.insert(mu, BigRational::one());
        }
        f
    }

    pub fn from_terms(t: LieType, terms: impl IntoIterator<Item = (Weight, BigRational)>) -> Self {
        let mut f = Self::zero(t);
        for (w, c) in terms {
            f.add_term(w, c);
        }
        f
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn terms(&self) -> &BTreeMap<Weight, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, w: &Weight) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Weight, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    fn check_type(&self, other: &Self) -> Result<()> {
        if self.lie_type != other.lie_type {
            return Err(Error::TypeMismatch {
                left: self.lie_type.to_string(),
                right: other.lie_type.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_type(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_terms(self.lie_type, self.terms.iter().map(|(w, c)| (w.clone(), c * s)))
    }

    /// Convolution product in the group algebra of the weight lattice.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_type(other)?;
        let mut out = Self::zero(self.lie_type);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// Coefficients on dominant weights, after checking that every orbit
    /// meeting the support carries a single coefficient.
    pub fn dominant_coefficients(&self, rs: &RootSystem) -> Result<BTreeMap<Weight, BigRational>> {
        let reps: BTreeSet<Weight> = self.terms.keys().map(|w| rs.dominant_rep(w)).collect();
        let mut out = BTreeMap::new();
        for rep in reps {
            let c = self.coeff(&rep);
            if rs.orbit_of(&rep).iter().any(|mu| self.coeff(mu) != c) {
                return Err(Error::NotInvariant { orbit: rep.0 });
            }
            out.insert(rep, c);
        }
        Ok(out)
    }

    pub fn is_invariant(&self, rs: &RootSystem) -> bool {
        self.dominant_coefficients(rs).is_ok()
    }

    /// `Σ c_λ exp(2πi <λ, x>)` at a real torus point.
    pub fn evaluate_complex(&self, x: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(w, c)| {
                let phase: f64 = w.0.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum();
                c.to_f64().unwrap_or(f64::NAN) * Complex64::from_polar(1.0, TAU * phase)
            })
            .sum()
    }
}

/// The fundamental invariants `Φ = (φ_1, …, φ_n)` as orbit lists, for fast
/// numerical evaluation.
#[derive(Clone, Debug)]
pub struct FundamentalInvariants {
    orbits: Vec<Vec<Weight>>,
}

impl FundamentalInvariants {
    pub fn new(rs: &RootSystem) -> Self {
        let n = rs.rank();
        Self { orbits: (1..=n).map(|j| rs.orbit_of(&Weight::fundamental(n, j))).collect() }
    }

    pub fn orbits(&self) -> &[Vec<Weight>] {
        &self.orbits
    }

    pub fn rank(&self) -> usize {
        self.orbits.len()
    }

    /// `Φ(x)` at a real point.
    pub fn eval(&self, x: &[f64]) -> Vec<Complex64> {
        self.orbits
            .iter()
            .map(|orbit| {
                orbit
                    .iter()
                    .map(|mu| {
                        let phase: f64 = mu.0.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum();
                        Complex64::from_polar(1.0, TAU * phase.rem_euclid(1.0))
                    })
                    .sum()
            })
            .collect()
    }

    /// `Φ(scale · x)` in double-double precision, as fixed-point values.
    pub fn eval_precise(&self, x: &[f64], scale: f64) -> Vec<Fixed> {
        let sx: Vec<Dd> = x.iter().map(|&v| Dd::from_f64(v).mul_f64(scale)).collect();
        self.orbits
            .iter()
            .map(|orbit| {
                let (mut re, mut im) = (Dd::ZERO, Dd::ZERO);
                for mu in orbit {
                    let phase = mu.0.iter().zip(&sx).fold(Dd::ZERO, |acc, (&a, b)| acc.add(b.mul_f64(a as f64)));
                    let (c, s) = phase.cos_sin_turns();
                    re = re.add(c);
                    im = im.add(s);
                }
                Fixed::from_dd(re, im)
            })
            .collect()
    }

    /// `Φ(x)` at a rational point; each phase is reduced modulo 1 exactly
    /// before conversion to floating point.
    pub fn eval_rational(&self, x: &[Ratio<i64>]) -> Vec<Complex64> {
        let den = x.iter().fold(1i64, |acc, r| num_integer::lcm(acc, *r.denom()));
        let nums: Vec<i64> = x.iter().map(|r| r.numer() * (den / r.denom())).collect();
        self.orbits
            .iter()
            .map(|orbit| {
                orbit
                    .iter()
                    .map(|mu| {
                        let dot: i128 = mu.0.iter().zip(&nums).map(|(&a, &b)| a as i128 * b as i128).sum();
                        let r = dot.rem_euclid(den as i128);
                        Complex64::from_polar(1.0, TAU * r as f64 / den as f64)
                    })
                    .sum()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn orbit_sums() {
        let a1 = WeylGroup::generate(ty("A1")).unwrap();
        let zero = WeightInvariant::orbit_sum(&a1, &Weight(vec![0]));
        assert_eq!(zero, WeightInvariant::constant(ty("A1"), q(1)));
        let t = WeightInvariant::orbit_sum(&a1, &Weight(vec![1]));
        assert_eq!(t.terms().len(), 2);
        assert_eq!(t.coeff(&Weight(vec![-1])), q(1));
        let a2 = WeylGroup::generate(ty("A2")).unwrap();
        let w1 = WeightInvariant::orbit_sum(&a2, &Weight(vec![1, 0]));
        assert_eq!(w1.terms().len(), 3);
        assert!(w1.terms().values().all(|c| *c == q(1)));
    }

    #[test]
    fn products() {
        let a1 = WeylGroup::generate(ty("A1")).unwrap();
        let t = WeightInvariant::orbit_sum(&a1, &Weight(vec![1]));
        let one = WeightInvariant::constant(ty("A1"), q(1));
        assert_eq!(t.multiply(&one).unwrap(), t);
        let sq = t.multiply(&t).unwrap();
        assert_eq!(sq.coeff(&Weight(vec![2])), q(1));
        assert_eq!(sq.coeff(&Weight(vec![0])), q(2));
        assert_eq!(sq.coeff(&Weight(vec![-2])), q(1));
        assert_eq!(sq.terms().len(), 3);

        let a2 = WeylGroup::generate(ty("A2")).unwrap();
        let p = WeightInvariant::orbit_sum(&a2, &Weight(vec![1, 0]))
            .multiply(&WeightInvariant::orbit_sum(&a2, &Weight(vec![0, 1])))
            .unwrap();
        assert_eq!(p.coeff(&Weight(vec![1, 1])), q(1));
        assert_eq!(p.coeff(&Weight(vec![0, 0])), q(3));

        let b2 = WeightInvariant::constant(ty("B2"), q(1));
        assert!(matches!(t.multiply(&b2), Err(Error::TypeMismatch { .. })));
    }

    #[test]
    fn evaluation() {
        let a1 = WeylGroup::generate(ty("A1")).unwrap();
        let t = WeightInvariant::orbit_sum(&a1, &Weight(vec![1]));
        assert!((t.evaluate_complex(&[0.0]) - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!((t.evaluate_complex(&[0.5]) - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        let phi = FundamentalInvariants::new(&RootSystem::new(ty("A1")));
        let r = phi.eval_rational(&[Ratio::new(1, 3)]);
        assert!((r[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn invariance_detection() {
        let rs = RootSystem::new(ty("A2"));
        let g = WeylGroup::generate(ty("A2")).unwrap();
        let f = WeightInvariant::orbit_sum(&g, &Weight(vec![1, 0]));
        assert!(f.is_invariant(&rs));
        let mut broken = f.clone();
        broken.add_term(Weight(vec![0, -1]), q(1));
        assert!(matches!(
            broken.dominant_coefficients(&rs),
            Err(Error::NotInvariant { orbit }) if orbit == vec![1, 0]
        ));
    }
}
