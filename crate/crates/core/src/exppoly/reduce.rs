//! Chevalley reduction: rewriting a W-invariant as a polynomial in the
//! fundamental orbit sums.
//!
//! Invariants are handled in the orbit-sum basis `{m_λ : λ dominant}`. The
//! product `f · m_μ` has coefficient `Σ_{β ∈ Wμ} f(dom(ν - β))` on `m_ν`, and
//! every dominant ν that can occur has the form `dom(λ + β)` with λ in the
//! dominant support of `f`. Full Laurent expansions are never formed.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::invariant::WeightInvariant;
use super::polymap::PolyMap;
use super::polynomial::{Monomial, RatPoly};
use crate::error::{Error, Result};
use crate::rootsys::{LieType, RootSystem, Weight};
use crate::weyl::WeylGroup;

/// Default limit on distinct dominant weights touched during one generation.
pub const DEFAULT_WEIGHT_BUDGET: usize = 200_000;

type OrbitCombination = HashMap<Weight, BigInt>;

pub struct Reducer<'a> {
    rs: &'a RootSystem,
    fundamental_orbits: Vec<Vec<Weight>>,
    products: HashMap<Monomial, Rc<OrbitCombination>>,
    seen: HashSet<Weight>,
    budget: usize,
}

impl<'a> Reducer<'a> {
    pub fn new(rs: &'a RootSystem, budget: usize) -> Self {
        let n = rs.rank();
        let fundamental_orbits = (1..=n).map(|j| rs.orbit_of(&Weight::fundamental(n, j))).collect();
        Self { rs, fundamental_orbits, products: HashMap::new(), seen: HashSet::new(), budget }
    }

    fn touch(&mut self, w: &Weight) -> Result<()> {
        if self.seen.insert(w.clone()) && self.seen.len() > self.budget {
            return Err(Error::BudgetExceeded { reached: self.seen.len(), limit: self.budget });
        }
        Ok(())
    }

    fn times_fundamental(&mut self, f: &OrbitCombination, i: usize) -> Result<OrbitCombination> {
        let rs = self.rs;
        let orbit = std::mem::take(&mut self.fundamental_orbits[i]);
        let mut candidates = HashSet::new();
        for lambda in f.keys() {
            for beta in &orbit {
                candidates.insert(rs.dominant_rep(&lambda.add(beta)));
            }
        }
        let mut out = HashMap::with_capacity(candidates.len());
        for nu in candidates {
            let mut c = BigInt::zero();
            for beta in &orbit {
                if let Some(x) = f.get(&rs.dominant_rep(&nu.sub(beta))) {
                    c += x;
                }
            }
            if !c.is_zero() {
                out.insert(nu, c);
            }
        }
        self.fundamental_orbits[i] = orbit;
        for nu in out.keys() {
            self.touch(nu)?;
        }
        Ok(out)
    }

    /// `Π_i φ_i^{a_i}` in the orbit-sum basis, memoized by exponent.
    fn product(&mut self, a: &[u32]) -> Result<Rc<OrbitCombination>> {
        if let Some(p) = self.products.get(a) {
            return Ok(p.clone());
        }
        let result = match a.iter().position(|&e| e > 0) {
            None => {
                let mut unit = HashMap::new();
                unit.insert(Weight::zero(a.len()), BigInt::one());
                Rc::new(unit)
            }
            Some(i) => {
                let mut prev_exp = a.to_vec();
                prev_exp[i] -= 1;
                let prev = self.product(&prev_exp)?;
                Rc::new(self.times_fundamental(&prev, i)?)
            }
        };
        self.products.insert(a.to_vec(), result.clone());
        Ok(result)
    }

    /// Reduces an invariant given by its dominant coefficients. Repeatedly
    /// strips the largest dominant weight under (height, lexicographic).
    pub fn reduce(&mut self, dominant: BTreeMap<Weight, BigRational>) -> Result<RatPoly> {
        let n = self.rs.rank();
        let mut remainder: BTreeMap<(i64, Weight), BigRational> = BTreeMap::new();
        for (w, c) in dominant {
            if !c.is_zero() {
                self.touch(&w)?;
                remainder.insert((self.rs.scaled_height(&w), w), c);
            }
        }
        let mut out = RatPoly::zero(n);
        while let Some(((_, lead), c)) = remainder.pop_last() {
            let exp: Monomial = lead.0.iter().map(|&x| x as u32).collect();
            let prod = self.product(&exp)?;
            for (nu, d) in prod.iter() {
                if *nu == lead {
                    debug_assert!(d.is_one());
                    continue;
                }
                let key = (self.rs.scaled_height(nu), nu.clone());
                let delta = &c * BigRational::from_integer(d.clone());
                let entry = remainder.entry(key.clone()).or_insert_with(BigRational::zero);
                *entry -= delta;
                if entry.is_zero() {
                    remainder.remove(&key);
                }
            }
            out.add_term(exp, c);
        }
        Ok(out)
    }

    pub fn weights_touched(&self) -> usize {
        self.seen.len()
    }
}

/// The unique polynomial `Q` with `Q(φ_1, …, φ_n) = f`.
pub fn express_in_fundamentals(f: &WeightInvariant) -> Result<RatPoly> {
    let rs = RootSystem::new(f.lie_type());
    let dominant = f.dominant_coefficients(&rs)?;
    Reducer::new(&rs, DEFAULT_WEIGHT_BUDGET).reduce(dominant)
}

/// Expands `Q(φ_1, …, φ_n)` back into the weight lattice.
pub fn evaluate_on_fundamentals(g: &WeylGroup, poly: &RatPoly) -> Result<WeightInvariant> {
    let t = g.lie_type();
    let n = t.rank();
    let phis: Vec<WeightInvariant> =
        (1..=n).map(|j| WeightInvariant::orbit_sum(g, &Weight::fundamental(n, j))).collect();
    let mut out = WeightInvariant::zero(t);
    for (e, c) in poly.terms() {
        let mut term = WeightInvariant::constant(t, c.clone());
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                term = term.multiply(&phis[i])?;
            }
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

pub fn compute_p(t: LieType, k: u64) -> Result<PolyMap> {
    compute_p_with_budget(t, k, DEFAULT_WEIGHT_BUDGET)
}

/// `P^k` with component j equal to the reduction of `m_{kω_j}`.
pub fn compute_p_with_budget(t: LieType, k: u64, budget: usize) -> Result<PolyMap> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let rs = RootSystem::new(t);
    let n = t.rank();
    let mut reducer = Reducer::new(&rs, budget);
    let mut components = Vec::with_capacity(n);
    for j in 1..=n {
        let mut start = BTreeMap::new();
        start.insert(Weight::fundamental(n, j).scale(k as i64), BigRational::one());
        let q = reducer.reduce(start)?;
        let integral = match q.to_integer() {
            Some(p) => p,
            None => {
                let bad = q.terms().find(|(_, c)| !c.is_integer()).map(|(_, c)| c.to_string());
                return Err(Error::Integrality { component: j, coeff: bad.unwrap_or_default() });
            }
        };
        components.push(integral);
    }
    Ok(PolyMap::new(t, k, components))
}

/// The map obtained when each `φ_j` is taken as the literal sum over all of
/// W rather than over the distinct orbit, i.e. `ψ_j = |Stab(ω_j)| φ_j`.
/// Coefficients are in general not integers.
pub fn full_group_sum_map(t: LieType, k: u64) -> Result<Vec<RatPoly>> {
    let p = compute_p(t, k)?;
    let rs = RootSystem::new(t);
    let n = t.rank();
    let w_order = BigInt::from(t.weyl_order());
    let stab: Vec<BigRational> = (1..=n)
        .map(|j| {
            let orbit = rs.orbit_of(&Weight::fundamental(n, j)).len();
            BigRational::new(w_order.clone(), BigInt::from(orbit))
        })
        .collect();
    let scaled_vars: Vec<RatPoly> = (0..n)
        .map(|i| RatPoly::variable(n, i).scale(&(BigRational::one() / &stab[i])))
        .collect();
    Ok(p.components()
        .iter()
        .zip(&stab)
        .map(|(comp, s)| comp.to_rational().substitute(&scaled_vars).scale(s))
        .collect())
}
