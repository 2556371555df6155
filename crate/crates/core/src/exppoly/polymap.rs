use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Deserialize;

use super::invariant::FundamentalInvariants;
use super::polynomial::{graded_lex, IntPoly};
use crate::error::{Error, Result};
use crate::precise::Fixed;
use crate::rootsys::{LieType, RootSystem};

/// Version tag of the on-disk format; bump on any byte-level change.
pub const FORMAT_VERSION: u32 = 1;

/// `P^k` as n integer polynomials in `X_1..X_n`, where `X_j` stands for `φ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    lie_type: LieType,
    k: u64,
    components: Vec<IntPoly>,
}

impl PolyMap {
    pub fn new(lie_type: LieType, k: u64, components: Vec<IntPoly>) -> Self {
        assert_eq!(components.len(), lie_type.rank());
        Self { lie_type, k, components }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn components(&self) -> &[IntPoly] {
        &self.components
    }

    pub fn term_counts(&self) -> Vec<usize> {
        self.components.iter().map(IntPoly::len).collect()
    }

    /// `self ∘ other`: substitutes the components of `other` into `self`.
    pub fn compose(&self, other: &PolyMap) -> Result<PolyMap> {
        if self.lie_type != other.lie_type {
            return Err(Error::TypeMismatch {
                left: self.lie_type.to_string(),
                right: other.lie_type.to_string(),
            });
        }
        let components = self.components.iter().map(|c| c.substitute(&other.components)).collect();
        Ok(PolyMap::new(self.lie_type, self.k * other.k, components))
    }

    pub fn evaluate_complex(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval_complex(z)).collect()
    }

    pub fn evaluate_int(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.components.iter().map(|c| c.eval_int(x)).collect()
    }

    /// Canonical text encoding: JSON with one term per line, terms in
    /// ascending graded-lex order, coefficients as decimal strings.
    pub fn serialize(&self) -> Vec<u8> {
        let n = self.rank();
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"type\": \"{}\",", self.lie_type);
        let _ = writeln!(s, "  \"k\": {},", self.k);
        let vars: Vec<String> = (1..=n).map(|i| format!("\"X{i}\"")).collect();
        let _ = writeln!(s, "  \"variables\": [{}],", vars.join(", "));
        s.push_str("  \"components\": [\n");
        for (ci, comp) in self.components.iter().enumerate() {
            s.push_str("    [\n");
            let terms = comp.terms_graded();
            for (ti, (e, c)) in terms.iter().enumerate() {
                let exp: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                let sep = if ti + 1 < terms.len() { "," } else { "" };
                let _ = writeln!(s, "      {{\"exp\": [{}], \"coeff\": \"{}\"}}{sep}", exp.join(", "), c);
            }
            s.push_str(if ci + 1 < n { "    ],\n" } else { "    ]\n" });
        }
        s.push_str("  ]\n}\n");
        s.into_bytes()
    }

    pub fn deserialize(bytes: &[u8]) -> Result<PolyMap> {
        let raw: RawMap = serde_json::from_slice(bytes).map_err(|e| json_error(bytes, &e))?;
        raw.into_map()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    #[serde(rename = "type")]
    lie_type: String,
    k: u64,
    variables: Vec<String>,
    components: Vec<Vec<RawTerm>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    exp: Vec<u32>,
    #[serde(deserialize_with = "decimal")]
    coeff: BigInt,
}

fn decimal<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
    let s = String::deserialize(d)?;
    let ok = {
        let digits = s.strip_prefix('-').unwrap_or(&s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok {
        return Err(serde::de::Error::custom(format!("coefficient {s:?} is not a decimal integer")));
    }
    s.parse().map_err(serde::de::Error::custom)
}

fn json_error(bytes: &[u8], e: &serde_json::Error) -> Error {
    // serde_json reports 1-based line and column; convert to a byte offset.
    let (line, col) = (e.line(), e.column());
    let mut offset = 0;
    let mut current = 1;
    for (i, &b) in bytes.iter().enumerate() {
        if current == line {
            offset = i;
            break;
        }
        if b == b'\n' {
            current += 1;
        }
        offset = i + 1;
    }
    let offset = (offset + col.saturating_sub(1)).min(bytes.len());
    let reason = e.to_string();
    let reason = match reason.rfind(" at line ") {
        Some(pos) => reason[..pos].to_string(),
        None => reason,
    };
    Error::Parse { offset, reason }
}

impl RawMap {
    fn into_map(self) -> Result<PolyMap> {
        let bad = |reason: String| Error::Parse { offset: 0, reason };
        let t: LieType = self.lie_type.parse().map_err(|e: Error| bad(e.to_string()))?;
        let n = t.rank();
        if self.k == 0 {
            return Err(bad("k must be positive".into()));
        }
        let expected_vars: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
        if self.variables != expected_vars {
            return Err(bad(format!("variables must be {expected_vars:?}")));
        }
        if self.components.len() != n {
            return Err(bad(format!("expected {n} components, found {}", self.components.len())));
        }
        let mut comps = Vec::with_capacity(n);
        for (ci, terms) in self.components.into_iter().enumerate() {
            for w in terms.windows(2) {
                if graded_lex(&w[0].exp, &w[1].exp) != std::cmp::Ordering::Less {
                    return Err(bad(format!(
                        "component {}: terms not strictly increasing in graded-lex order at {:?}",
                        ci + 1,
                        w[1].exp
                    )));
                }
            }
            let mut poly = IntPoly::zero(n);
            for term in terms {
                if term.exp.len() != n {
                    return Err(bad(format!("component {}: exponent {:?} has wrong length", ci + 1, term.exp)));
                }
                if term.coeff == BigInt::from(0) {
                    return Err(bad(format!("component {}: explicit zero coefficient", ci + 1)));
                }
                poly.add_term(term.exp, term.coeff);
            }
            comps.push(poly);
        }
        Ok(PolyMap::new(t, self.k, comps))
    }
}

/// `max ‖Φ(kx) - P^k(Φ(x))‖_∞` over the given real torus points, with `Φ`
/// in double-double precision and `P^k` in 256-bit fixed point, so that the
/// measured error is not dominated by cancellation among large terms.
pub fn functional_equation_error(map: &PolyMap, points: &[Vec<f64>]) -> f64 {
    let phi = FundamentalInvariants::new(&RootSystem::new(map.lie_type()));
    let k = map.k() as f64;
    points
        .iter()
        .map(|x| {
            let lhs = phi.eval_precise(x, k);
            let rhs: Vec<Fixed> =
                map.components().iter().map(|c| c.eval_fixed(&phi.eval_precise(x, 1.0))).collect();
            lhs.iter().zip(&rhs).map(|(a, b)| a.sub(b).norm()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// The same quantity with everything in plain `f64`.
pub fn functional_equation_error_f64(map: &PolyMap, points: &[Vec<f64>]) -> f64 {
    let phi = FundamentalInvariants::new(&RootSystem::new(map.lie_type()));
    let k = map.k() as f64;
    points
        .iter()
        .map(|x| {
            let kx: Vec<f64> = x.iter().map(|v| v * k).collect();
            let lhs = phi.eval(&kx);
            let rhs = map.evaluate_complex(&phi.eval(x));
            lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// Uniform random points of `[0,1)^n` from a seeded ChaCha stream.
pub fn sample_torus_points(rank: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..rank).map(|_| rng.gen::<f64>()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exppoly::compute_p;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn serialize_a2() {
        let p = compute_p(ty("A2"), 2).unwrap();
        let text = String::from_utf8(p.serialize()).unwrap();
        let expected = "{\n  \"type\": \"A2\",\n  \"k\": 2,\n  \"variables\": [\"X1\", \"X2\"],\n  \"components\": [\n    [\n      {\"exp\": [0, 1], \"coeff\": \"-2\"},\n      {\"exp\": [2, 0], \"coeff\": \"1\"}\n    ],\n    [\n      {\"exp\": [1, 0], \"coeff\": \"-2\"},\n      {\"exp\": [0, 2], \"coeff\": \"1\"}\n    ]\n  ]\n}\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn round_trips() {
        for (t, k) in [("A1", 2), ("G2", 3)] {
            let p = compute_p(ty(t), k).unwrap();
            assert_eq!(PolyMap::deserialize(&p.serialize()).unwrap(), p);
        }
    }

    #[test]
    fn parse_errors() {
        let bytes = compute_p(ty("A2"), 2).unwrap().serialize();
        let cut = &bytes[..bytes.len() / 2];
        match PolyMap::deserialize(cut) {
            Err(Error::Parse { offset, .. }) => assert!(offset <= cut.len()),
            other => panic!("expected parse error, got {other:?}"),
        }
        let text = String::from_utf8(bytes.clone()).unwrap();
        let float = text.replacen("\"-2\"", "\"-2.5\"", 1);
        let err = PolyMap::deserialize(float.as_bytes()).unwrap_err();
        match err {
            Error::Parse { offset, reason } => {
                assert!(reason.contains("decimal"), "{reason}");
                let at = float.find("\"-2.5\"").unwrap();
                assert!(offset >= at && offset <= at + 8, "offset {offset} vs {at}");
            }
            other => panic!("{other:?}"),
        }
        let wrong_type = text.replacen("A2", "E8", 1);
        assert!(matches!(PolyMap::deserialize(wrong_type.as_bytes()), Err(Error::Parse { .. })));
        let extra = text.replacen("\"k\": 2", "\"k\": 2, \"extra\": 1", 1);
        assert!(PolyMap::deserialize(extra.as_bytes()).is_err());
    }

    #[test]
    fn a2_functional_equation() {
        let p = compute_p(ty("A2"), 2).unwrap();
        let pts = sample_torus_points(2, 100, 7);
        assert!(functional_equation_error(&p, &pts) < 1e-9);
    }
}
