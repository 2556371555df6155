//! Exhaustive permutation test and the Frobenius identity over `F_q^n`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exppoly::{compute_p, PolyMap};
use crate::ffield::{reduce_map, FieldSpec, FieldTables};
use crate::rootsys::LieType;

/// Default limit on `q^n` for exhaustive enumeration.
pub const DEFAULT_POINT_CAP: u64 = 10_000_000;

const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceOutcome {
    pub points: u64,
    /// Number of distinct images.
    pub popcount: u64,
}

impl BruteForceOutcome {
    pub fn is_permutation(&self) -> bool {
        self.popcount == self.points
    }
}

fn point_count(q: u64, n: usize, cap: u64) -> Result<u64> {
    let total = (q as u128).pow(n as u32);
    if total > cap as u128 {
        return Err(Error::EnumerationCap { points: total, cap });
    }
    Ok(total as u64)
}

fn decode(mut idx: u64, q: u64, out: &mut [u32]) {
    for c in out.iter_mut() {
        *c = (idx % q) as u32;
        idx /= q;
    }
}

fn encode(v: &[u32], q: u64) -> u64 {
    v.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64)
}

/// Runs `visit(point, image)` over every point of `F_q^n` in parallel
/// index ranges, folding per-range state with `merge`.
fn for_all_points<S, F, M>(map: &PolyMap, field: &FieldSpec, cap: u64, init: impl Fn() -> S + Sync + Send, visit: F, merge: M) -> Result<S>
where
    S: Send,
    F: Fn(&mut S, &[u32], &[u32]) + Sync + Send,
    M: Fn(S, S) -> S + Sync + Send,
{
    let n = map.rank();
    let q = field.order();
    let total = point_count(q, n, cap)?;
    let tables = FieldTables::new(field)?;
    let reduced = reduce_map(map, field);
    let eval = reduced.indexed_evaluator(&tables);
    let chunks = total.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .fold(
            || (init(), eval.scratch(), vec![0u32; n], vec![0u32; n]),
            |(mut state, mut scratch, mut point, mut image), c| {
                for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                    decode(idx, q, &mut point);
                    eval.eval(&point, &mut scratch, &mut image);
                    visit(&mut state, &point, &image);
                }
                (state, scratch, point, image)
            },
        )
        .map(|(s, ..)| s)
        .reduce(&init, &merge))
}

/// Marks every image in a `q^n`-bit occupancy table indexed by
/// `Σ idx(v_i) q^(i-1)`; per-range tables are OR-merged.
pub fn brute_force_with_cap(map: &PolyMap, field: &FieldSpec, cap: u64) -> Result<BruteForceOutcome> {
    let q = field.order();
    let total = point_count(q, map.rank(), cap)?;
    let words = total.div_ceil(64) as usize;
    let bits = for_all_points(
        map,
        field,
        cap,
        || vec![0u64; words],
        |bits, _, image| {
            let i = encode(image, q);
            bits[(i / 64) as usize] |= 1 << (i % 64);
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x |= y;
            }
            a
        },
    )?;
    let popcount = bits.iter().map(|w| w.count_ones() as u64).sum();
    Ok(BruteForceOutcome { points: total, popcount })
}

pub fn brute_force_is_permutation(map: &PolyMap, field: &FieldSpec) -> Result<bool> {
    Ok(brute_force_with_cap(map, field, DEFAULT_POINT_CAP)?.is_permutation())
}

/// `true` iff the reduction of `map` agrees with the coordinatewise q-th
/// power at every point of `F_q^n`.
pub fn frobenius_check_map(map: &PolyMap, field: &FieldSpec) -> Result<bool> {
    frobenius_check_map_with_cap(map, field, DEFAULT_POINT_CAP)
}

pub fn frobenius_check_map_with_cap(map: &PolyMap, field: &FieldSpec, cap: u64) -> Result<bool> {
    let tables = FieldTables::new(field)?;
    let q = field.order();
    for_all_points(
        map,
        field,
        cap,
        || true,
        |ok, point, image| {
            *ok = *ok && point.iter().zip(image).all(|(&x, &y)| tables.pow(x, q) == y);
        },
        |a, b| a && b,
    )
}

/// Generates `P^q` for the type and compares its reduction with Frobenius.
pub fn frobenius_check(t: LieType, field: &FieldSpec) -> Result<bool> {
    let map = compute_p(t, field.order())?;
    frobenius_check_map(&map, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(t: &str, k: u64) -> PolyMap {
        compute_p(t.parse().unwrap(), k).unwrap()
    }

    #[test]
    fn dickson_over_f7() {
        let f7 = FieldSpec::from_order(7).unwrap();
        assert!(brute_force_is_permutation(&map("A1", 5), &f7).unwrap());
        let r = brute_force_with_cap(&map("A1", 2), &f7, 100).unwrap();
        assert!(!r.is_permutation());
        assert_eq!(r.points, 7);
    }

    #[test]
    fn a4_k7_q3_permutes() {
        let f3 = FieldSpec::from_order(3).unwrap();
        let r = brute_force_with_cap(&map("A4", 7), &f3, 100).unwrap();
        assert_eq!((r.points, r.popcount), (81, 81));
    }

    #[test]
    fn cap_is_enforced() {
        let f7 = FieldSpec::from_order(7).unwrap();
        assert!(matches!(brute_force_with_cap(&map("A2", 2), &f7, 48), Err(Error::EnumerationCap { points: 49, cap: 48 })));
    }

    #[test]
    fn frobenius_small() {
        let f3 = FieldSpec::from_order(3).unwrap();
        assert!(frobenius_check("A1".parse().unwrap(), &f3).unwrap());
        assert!(!frobenius_check_map(&map("A1", 2), &f3).unwrap());
        let f2 = FieldSpec::from_order(2).unwrap();
        assert!(frobenius_check("A2".parse().unwrap(), &f2).unwrap());
        let f4 = FieldSpec::from_order(4).unwrap();
        assert!(frobenius_check("A2".parse().unwrap(), &f4).unwrap());
    }

    #[test]
    fn index_roundtrip() {
        let mut v = vec![0u32; 3];
        for idx in 0..125 {
            decode(idx, 5, &mut v);
            assert_eq!(encode(&v, 5), idx);
        }
    }
}
