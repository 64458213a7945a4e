use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{Integer, IntPolynomial};

/// Integer Laurent polynomial in two variables `x`, `y`.
///
/// Terms are kept in a sorted map from `(i, j)` (the exponent of `x^i y^j`)
/// to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial2 {
    terms: BTreeMap<(i64, i64), Integer>,
}

impl LaurentPolynomial2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Integer::one(), 0, 0)
    }

    /// `c x^i y^j`.
    pub fn monomial(c: Integer, i: i64, j: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), Integer)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// A univariate polynomial in `x`.
    pub fn from_x_poly(p: &IntPolynomial) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| ((k as i64, 0), c.clone())))
    }

    /// A univariate polynomial in `y`.
    pub fn from_y_poly(p: &IntPolynomial) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| ((0, k as i64), c.clone())))
    }

    pub fn add_term(&mut self, i: i64, j: i64, c: Integer) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: i64, j: i64) -> Integer {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Integer)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplication by the unit `x^a y^b`.
    pub fn shifted(&self, a: i64, b: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(i, j), c)| ((i + a, j + b), c.clone())).collect(),
        }
    }

    /// Smallest `x` and `y` exponents occurring, if nonzero.
    pub fn min_exponents(&self) -> Option<(i64, i64)> {
        let i = self.terms.keys().map(|k| k.0).min()?;
        let j = self.terms.keys().map(|k| k.1).min()?;
        Some((i, j))
    }

    /// Evaluates at integer points (only nonnegative exponents allowed for zero
    /// arguments).
    pub fn eval(&self, x: &Integer, y: &Integer) -> Option<Integer> {
        let mut acc = Integer::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * pow_int(x, i)? * pow_int(y, j)?;
        }
        Some(acc)
    }

    /// Coefficient polynomials in `x`, keyed by the `y` exponent, after clearing
    /// the unit `x^{-min_i}`.
    fn x_slices(&self) -> BTreeMap<i64, IntPolynomial> {
        let Some((min_i, _)) = self.min_exponents() else {
            return BTreeMap::new();
        };
        let mut slices: BTreeMap<i64, Vec<Integer>> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let k = (i - min_i) as usize;
            let v = slices.entry(j).or_default();
            if v.len() <= k {
                v.resize(k + 1, Integer::zero());
            }
            v[k] += c;
        }
        slices.into_iter().map(|(j, v)| (j, IntPolynomial::from_coeffs(v))).collect()
    }

    fn swap_vars(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// Whether `divisor(x)` (monic, in `x` only) divides `self` in
    /// `Z[x^±1, y^±1]`.
    pub fn divisible_by_x_poly(&self, divisor: &IntPolynomial) -> bool {
        self.x_slices().values().all(|p| {
            p.rem_monic(divisor)
                .expect("divisor must be monic")
                .is_zero()
        })
    }

    /// Whether `divisor(y)` (monic, in `y` only) divides `self` in
    /// `Z[x^±1, y^±1]`.
    pub fn divisible_by_y_poly(&self, divisor: &IntPolynomial) -> bool {
        self.swap_vars().divisible_by_x_poly(divisor)
    }
}

fn pow_int(base: &Integer, e: i64) -> Option<Integer> {
    if e >= 0 {
        return Some(num_traits::pow(base.clone(), e as usize));
    }
    // only ±1 are units in Z
    if base.abs().is_one() {
        Some(num_traits::pow(base.clone(), e.unsigned_abs() as usize))
    } else {
        None
    }
}

impl fmt::Display for LaurentPolynomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (&(i, j), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let mut parts: Vec<alloc::string::String> = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                parts.push(alloc::format!("{mag}"));
            }
            for (var, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => parts.push(var.into()),
                    e => parts.push(alloc::format!("{var}^{e}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial2({self})")
    }
}

impl Add for &LaurentPolynomial2 {
    type Output = LaurentPolynomial2;
    fn add(self, rhs: &LaurentPolynomial2) -> LaurentPolynomial2 {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial2 {
    type Output = LaurentPolynomial2;
    fn sub(self, rhs: &LaurentPolynomial2) -> LaurentPolynomial2 {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Neg for &LaurentPolynomial2 {
    type Output = LaurentPolynomial2;
    fn neg(self) -> LaurentPolynomial2 {
        LaurentPolynomial2 {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial2 {
    type Output = LaurentPolynomial2;
    fn mul(self, rhs: &LaurentPolynomial2) -> LaurentPolynomial2 {
        let mut out = LaurentPolynomial2::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}
