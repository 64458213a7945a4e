//! Dense univariate polynomials over the integers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{ArithError, Integer};

/// A polynomial with integer coefficients, stored densely in ascending degree.
///
/// The coefficient list never ends in zero, so the zero polynomial is the empty
/// list and two polynomials are equal iff their coefficient lists are.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Integer::one())
    }

    pub fn constant(c: Integer) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: Integer, k: usize) -> Self {
        let mut coeffs = vec![Integer::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(Integer::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Integer {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &Integer) -> Integer {
        self.coeffs
            .iter()
            .rev()
            .fold(Integer::zero(), |acc, c| acc * at + c)
    }

    /// `q^n - 1`.
    pub fn q_power_minus_one(n: usize) -> Self {
        let mut coeffs = vec![Integer::zero(); n + 1];
        coeffs[0] = -Integer::one();
        coeffs[n] += Integer::one();
        Self::from_coeffs(coeffs)
    }

    /// Division with remainder by a monic polynomial: `self = q * divisor + r`
    /// with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial), ArithError> {
        if divisor.is_zero() {
            return Err(ArithError::ZeroDivisor);
        }
        if !divisor.is_monic() {
            return Err(ArithError::NonMonicDivisor);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((IntPolynomial::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Integer::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = core::mem::take(&mut rem[k]);
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs[..dd].iter().enumerate() {
                if !d.is_zero() {
                    rem[k - dd + i] -= &c * d;
                }
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((IntPolynomial::from_coeffs(quot), IntPolynomial::from_coeffs(rem)))
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, divisor: &IntPolynomial) -> Result<IntPolynomial, ArithError> {
        self.divrem(divisor).map(|(_, r)| r)
    }

    /// Quotient of a division that must be exact.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Result<IntPolynomial, ArithError> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ArithError::InexactDivision)
        }
    }

    /// Reduces exponents modulo `n`, i.e. the image in `Z[q]/(q^n - 1)`.
    pub fn reduce_exponents(&self, n: usize) -> IntPolynomial {
        assert!(n > 0);
        let mut out = vec![Integer::zero(); n.min(self.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k % n] += c;
        }
        IntPolynomial::from_coeffs(out)
    }

    /// Renders with the given variable name, terms in ascending degree.
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, var }
    }
}

struct PolyDisplay<'a> {
    poly: &'a IntPolynomial,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_term(f, first, c, self.var, k as i64)?;
            first = false;
        }
        Ok(())
    }
}

/// Writes one signed term `c*var^k` in the shared pretty-printing style.
fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Integer,
    var: &str,
    k: i64,
) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if k == 0 {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        write!(f, "{mag}*")?;
    }
    if k == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{k}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("q").fmt(f)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![Integer::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}
