//! The matrix criterion, the order criterion and their aggregate report.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::brute::{brute_force_with_cap, DEFAULT_POINT_CAP};
use crate::arith;
use crate::error::{Error, Result};
use crate::exppoly::compute_p;
use crate::ffield::FieldSpec;
use crate::rootsys::LieType;
use crate::weyl::{eval_poly_big, WeylGroup};

fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One distinct characteristic polynomial evaluated at q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharpolyValue {
    pub id: usize,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub gcd: BigInt,
}

fn check_inputs(q: u64, k: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    if arith::prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q.to_string()));
    }
    Ok(())
}

/// `true` iff `gcd(χ(q), k) = 1` for every distinct characteristic
/// polynomial χ of the group, i.e. `qI - T_w` is invertible mod k for all w.
/// Rejects `k < 2` and `q` that is not a prime power.
pub fn theorem_criterion(g: &WeylGroup, q: u64, k: u64) -> Result<(bool, Vec<CharpolyValue>)> {
    check_inputs(q, k)?;
    let qb = BigInt::from(q);
    let kb = BigInt::from(k);
    let rows: Vec<CharpolyValue> = g
        .charpoly_set()
        .iter()
        .enumerate()
        .map(|(id, chi)| {
            let value = eval_poly_big(chi, &qb);
            let gcd = value.gcd(&kb);
            CharpolyValue { id, value, gcd }
        })
        .collect();
    Ok((rows.iter().all(|r| r.gcd.is_one()), rows))
}

/// `true` iff `gcd(k, q^s - 1) = 1` for every element order s. Any `k = 1`
/// passes.
pub fn order_criterion(g: &WeylGroup, q: u64, k: u64) -> bool {
    let kb = BigInt::from(k);
    let qb = BigInt::from(q);
    g.order_set().iter().all(|&s| (qb.pow(s) - 1u32).gcd(&kb).is_one())
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub lie_type: LieType,
    pub k: u64,
    pub q: u64,
    pub theorem_holds: bool,
    pub order_holds: bool,
    pub charpoly_values: Vec<CharpolyValue>,
    pub failing_witness: Option<usize>,
    pub brute_force: Option<bool>,
}

impl CriterionReport {
    /// Assembles a report from an already generated group, checking the
    /// two implications that must hold between the verdicts.
    pub fn build(g: &WeylGroup, q: u64, k: u64, brute_force: Option<bool>) -> Result<Self> {
        let (theorem_holds, charpoly_values) = theorem_criterion(g, q, k)?;
        let order_holds = order_criterion(g, q, k);
        if order_holds && !theorem_holds {
            return Err(Error::Consistency(format!("{} k={k} q={q}: order criterion holds but matrix criterion fails", g.lie_type())));
        }
        if let Some(b) = brute_force {
            if b != theorem_holds {
                return Err(Error::Consistency(format!(
                    "{} k={k} q={q}: exhaustive verdict {b} disagrees with matrix criterion {theorem_holds}",
                    g.lie_type()
                )));
            }
        }
        let failing_witness = charpoly_values.iter().find(|r| !r.gcd.is_one()).map(|r| r.id);
        Ok(Self { lie_type: g.lie_type(), k, q, theorem_holds, order_holds, charpoly_values, failing_witness, brute_force })
    }

    /// The permutation verdict: the exhaustive one when present.
    pub fn is_permutation(&self) -> bool {
        self.brute_force.unwrap_or(self.theorem_holds)
    }
}

pub fn full_report(t: LieType, k: u64, q: u64, with_brute_force: bool) -> Result<CriterionReport> {
    full_report_with_cap(t, k, q, with_brute_force, DEFAULT_POINT_CAP)
}

pub fn full_report_with_cap(t: LieType, k: u64, q: u64, with_brute_force: bool, cap: u64) -> Result<CriterionReport> {
    check_inputs(q, k)?;
    let g = WeylGroup::generate(t)?;
    let brute = if with_brute_force {
        let field = FieldSpec::from_order(q)?;
        let map = compute_p(t, k)?;
        Some(brute_force_with_cap(&map, &field, cap)?.is_permutation())
    } else {
        None
    };
    CriterionReport::build(&g, q, k, brute)
}

/// A residue class of primes on which `P^k` provably permutes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalCertificate {
    pub lie_type: LieType,
    pub k: u64,
    pub modulus: u64,
    pub residue: u64,
    pub order_set: Vec<u32>,
    pub verified_primes: Vec<u64>,
}

pub const CERTIFICATE_PRIMES: usize = 5;

/// Takes k = ℓ, the least prime with ℓ - 1 above every element order, and
/// the class of a primitive root r mod ℓ: for p ≡ r the order of p mod ℓ is
/// ℓ - 1, so ℓ never divides `p^s - 1`. The first few primes of the class
/// are re-checked under both criteria.
pub fn search_exceptional(t: LieType) -> Result<ExceptionalCertificate> {
    let g = WeylGroup::generate(t)?;
    let order_set = g.order_set().to_vec();
    let s_max = *order_set.iter().max().expect("group is nonempty") as u64;
    let l = arith::next_prime_after(s_max + 1);
    let r = arith::smallest_primitive_root(l).expect("prime modulus has a primitive root");
    let verified_primes = arith::primes_in_class(r, l, CERTIFICATE_PRIMES);
    for &p in &verified_primes {
        let by_order = order_criterion(&g, p, l);
        let (by_matrix, _) = theorem_criterion(&g, p, l)?;
        if !(by_order && by_matrix) {
            return Err(Error::Consistency(format!("{t}: prime {p} in class {r} mod {l} fails the criterion")));
        }
    }
    Ok(ExceptionalCertificate { lie_type: t, k: l, modulus: l, residue: r, order_set, verified_primes })
}

impl ExceptionalCertificate {
    /// Re-checks the certificate from scratch with plain gcds.
    pub fn verify(&self) -> bool {
        let kb = BigInt::from(self.k);
        !self.residue.is_multiple_of(self.modulus)
            && self.verified_primes.iter().all(|&p| {
                arith::is_prime(p)
                    && p % self.modulus == self.residue
                    && self.order_set.iter().all(|&s| (BigInt::from(p).pow(s) - 1u32).gcd(&kb).is_one())
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::generate(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_values() {
        let g = group("A1");
        let (ok, rows) = theorem_criterion(&g, 7, 5).unwrap();
        assert!(ok);
        let mut values: Vec<i64> = rows.iter().map(|r| i64::try_from(&r.value).unwrap()).collect();
        values.sort();
        assert_eq!(values, vec![6, 8]);
        assert!(!theorem_criterion(&g, 7, 3).unwrap().0);
    }

    #[test]
    fn a4_converse_failure() {
        let g = group("A4");
        assert!(theorem_criterion(&g, 3, 7).unwrap().0);
        assert!(!order_criterion(&g, 3, 7));
        assert!(order_criterion(&group("A2"), 2, 5));
        assert!(order_criterion(&g, 3, 1));
    }

    #[test]
    fn boundary_rejections() {
        let g = group("A1");
        assert!(matches!(theorem_criterion(&g, 7, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(theorem_criterion(&g, 1, 5), Err(Error::NotPrimePower(_))));
        assert!(matches!(theorem_criterion(&g, 6, 5), Err(Error::NotPrimePower(_))));
    }

    #[test]
    fn witness_points_at_failing_charpoly() {
        let r = full_report("A1".parse().unwrap(), 3, 7, true).unwrap();
        assert!(!r.theorem_holds && r.brute_force == Some(false));
        let w = r.failing_witness.unwrap();
        assert_eq!(r.charpoly_values[w].gcd, BigInt::from(3));
    }

    #[test]
    fn certificates() {
        let c = search_exceptional("A1".parse().unwrap()).unwrap();
        assert_eq!((c.k, c.residue), (5, 2));
        assert_eq!(c.verified_primes, vec![2, 7, 17, 37, 47]);
        assert!(c.verify());
        let c = search_exceptional("G2".parse().unwrap()).unwrap();
        assert_eq!((c.k, c.residue), (11, 2));
    }
}
