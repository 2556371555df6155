use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::precise::Fixed;

/// Exponent vector of a monomial in `X_1..X_n`.
pub type Monomial = Vec<u32>;

/// Graded-lex comparison: total degree first, then lexicographic.
pub fn graded_lex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Sparse multivariate polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

pub type IntPoly = Polynomial<BigInt>;
pub type RatPoly = Polynomial<BigRational>;

impl<C> Polynomial<C>
where
    C: Clone + Zero + One + PartialEq + std::ops::Mul<Output = C> + std::ops::Add<Output = C> + std::ops::Sub<Output = C>,
{
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The variable `X_i`, 0-based.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, C::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms_graded(&self) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_lex(a.0, b.0));
        v
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let sum = old.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), C::zero() - c.clone());
        }
        out
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * s.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitutes `values[i]` for `X_i`.
    pub fn substitute(&self, values: &[Self]) -> Self {
        assert_eq!(values.len(), self.nvars);
        let target_vars = values.first().map_or(0, |v| v.nvars);
        let mut powers: Vec<Vec<Self>> = values.iter().map(|v| vec![Self::one(v.nvars)]).collect();
        let mut out = Self::zero(target_vars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&values[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[i][k as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Generic evaluation with caller-supplied ring operations.
    pub fn eval_with<T: Clone>(
        &self,
        point: &[T],
        one: T,
        embed: impl Fn(&C) -> T,
        mul: impl Fn(&T, &T) -> T,
        add: impl Fn(&T, &T) -> T,
        zero: T,
    ) -> T {
        let max_deg: Vec<u32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<T>> = point
            .iter()
            .zip(&max_deg)
            .map(|(x, &d)| {
                let mut v = vec![one.clone()];
                for _ in 0..d {
                    let next = mul(v.last().unwrap(), x);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = zero;
        for (e, c) in &self.terms {
            let mut t = embed(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = mul(&t, &powers[i][k as usize]);
                }
            }
            acc = add(&acc, &t);
        }
        acc
    }
}

impl IntPoly {
    pub fn eval_complex(&self, z: &[Complex64]) -> Complex64 {
        self.eval_with(
            z,
            Complex64::new(1.0, 0.0),
            |c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0),
            |a, b| a * b,
            |a, b| a + b,
            Complex64::new(0.0, 0.0),
        )
    }

    /// Evaluation in big fixed-point arithmetic.
    pub fn eval_fixed(&self, z: &[Fixed]) -> Fixed {
        self.eval_with(z, Fixed::one(), Fixed::from_int, |a, b| a.mul(b), |a, b| a.add(b), Fixed::zero())
    }

    pub fn eval_int(&self, x: &[BigInt]) -> BigInt {
        self.eval_with(x, BigInt::one(), |c| c.clone(), |a, b| a * b, |a, b| a + b, BigInt::zero())
    }

    pub fn to_rational(&self) -> RatPoly {
        RatPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.clone(), BigRational::from_integer(c.clone()))),
        )
    }
}

impl RatPoly {
    /// `Some` when every coefficient is an integer.
    pub fn to_integer(&self) -> Option<IntPoly> {
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out.add_term(e.clone(), c.to_integer());
        }
        Some(out)
    }
}

impl<C: fmt::Display + Signed + Clone + Zero + One + PartialEq> fmt::Display for Polynomial<C> {
    /// Human-readable form, highest graded-lex term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_lex(b.0, a.0));
        for (idx, (e, c)) in v.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            if is_const || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "X{}", i + 1)?,
                    _ => write!(f, "X{}^{k}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}
