use alloc::vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{crt_exponents, cyclotomic, LaurentPolynomial2, QuantumError};
use crate::arith::{Integer, IntPolynomial};

/// Element of `Z[x, y]/([n]_x, [m]_y)` in normal form: `deg_x < n - 1`,
/// `deg_y < m - 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientElementXY {
    n: u64,
    m: u64,
    rep: LaurentPolynomial2,
}

impl QuotientElementXY {
    /// Reduces any Laurent representative. Negative exponents are folded with
    /// `x^n = 1` and `y^m = 1`, which hold in the quotient because
    /// `x^n - 1 = (x - 1)[n]_x`.
    pub fn reduce(n: u64, m: u64, p: &LaurentPolynomial2) -> Self {
        assert!(n >= 1 && m >= 1);
        let (ni, mi) = (n as i64, m as i64);
        let mut folded = LaurentPolynomial2::zero();
        if n > 1 && m > 1 {
            for (&(i, j), c) in p.terms() {
                folded.add_term(i.rem_euclid(ni), j.rem_euclid(mi), c.clone());
            }
        }
        // x^{n-1} ≡ -(1 + x + ... + x^{n-2}), and likewise for y
        let mut rep = LaurentPolynomial2::zero();
        for (&(i, j), c) in folded.terms() {
            let xs: alloc::vec::Vec<(i64, Integer)> = if i == ni - 1 {
                (0..ni - 1).map(|k| (k, -c.clone())).collect()
            } else {
                vec![(i, c.clone())]
            };
            for (xi, cx) in xs {
                if j == mi - 1 {
                    for l in 0..mi - 1 {
                        rep.add_term(xi, l, -cx.clone());
                    }
                } else {
                    rep.add_term(xi, j, cx);
                }
            }
        }
        Self { n, m, rep }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn rep(&self) -> &LaurentPolynomial2 {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep == LaurentPolynomial2::one()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.m), (other.n, other.m));
        Self::reduce(self.n, self.m, &(&self.rep + &other.rep))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.m), (other.n, other.m));
        Self::reduce(self.n, self.m, &(&self.rep * &other.rep))
    }

    /// Image under `x ↦ q^α`, `y ↦ q^β` in `Z[q]/(Φ_nm(q))`.
    pub fn to_cyclotomic(&self) -> Result<CycloIntegerElement, QuantumError> {
        let (alpha, beta) = crt_exponents(self.n, self.m)?;
        let nm = self.n * self.m;
        let mut coeffs = vec![Integer::zero(); nm as usize];
        for (&(i, j), c) in self.rep.terms() {
            let e = (i as u64 * alpha + j as u64 * beta) % nm;
            coeffs[e as usize] += c;
        }
        CycloIntegerElement::new(nm, &IntPolynomial::from_coeffs(coeffs))
    }
}

impl fmt::Display for QuotientElementXY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// Element of `Z[q]/(Φ_N(q))`, stored as its remainder modulo `Φ_N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloIntegerElement {
    order: u64,
    rep: IntPolynomial,
}

impl CycloIntegerElement {
    pub fn new(order: u64, p: &IntPolynomial) -> Result<Self, QuantumError> {
        let phi = cyclotomic(order)?;
        Ok(Self {
            order,
            rep: p.rem_monic(&phi)?,
        })
    }

    /// `q^e` for any integer `e`.
    pub fn q_power(order: u64, e: i64) -> Result<Self, QuantumError> {
        let k = e.rem_euclid(order as i64) as usize;
        Self::new(order, &IntPolynomial::monomial(Integer::one(), k))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rep(&self) -> &IntPolynomial {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

impl fmt::Display for CycloIntegerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in Z[q]/Φ_{}", self.rep, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::quantum_integer;
    use proptest::prelude::*;

    /// Normal form by literal monic division: first by `[n]_x` over `Z[y]`, then by `[m]_y`.
    fn by_division(n: u64, m: u64, p: &LaurentPolynomial2) -> LaurentPolynomial2 {
        let nx = quantum_integer(n).unwrap();
        let my = quantum_integer(m).unwrap();
        let mut stage = LaurentPolynomial2::zero();
        let max_j = p.terms().map(|(k, _)| k.1).max().unwrap_or(0);
        for j in 0..=max_j {
            let max_i = p.terms().map(|(k, _)| k.0).max().unwrap_or(0);
            let coeffs = (0..=max_i).map(|i| p.coeff(i, j)).collect();
            let r = IntPolynomial::from_coeffs(coeffs).rem_monic(&nx).unwrap();
            for (i, c) in r.coeffs().iter().enumerate() {
                stage.add_term(i as i64, j, c.clone());
            }
        }
        let mut out = LaurentPolynomial2::zero();
        for i in 0..(n as i64) {
            let max_j = stage.terms().map(|(k, _)| k.1).max().unwrap_or(0);
            let coeffs = (0..=max_j).map(|j| stage.coeff(i, j)).collect();
            let r = IntPolynomial::from_coeffs(coeffs).rem_monic(&my).unwrap();
            for (j, c) in r.coeffs().iter().enumerate() {
                out.add_term(i, j as i64, c.clone());
            }
        }
        out
    }

    fn poly2() -> impl Strategy<Value = LaurentPolynomial2> {
        proptest::collection::vec(((0i64..9, 0i64..9), -5i64..6), 0..10).prop_map(|t| {
            LaurentPolynomial2::from_terms(t.into_iter().map(|(k, c)| (k, Integer::from(c))))
        })
    }

    fn laurent() -> impl Strategy<Value = LaurentPolynomial2> {
        proptest::collection::vec(((-9i64..9, -9i64..9), -5i64..6), 0..10).prop_map(|t| {
            LaurentPolynomial2::from_terms(t.into_iter().map(|(k, c)| (k, Integer::from(c))))
        })
    }

    proptest! {
        #[test]
        fn folding_matches_monic_division(p in poly2()) {
            let nf = QuotientElementXY::reduce(3, 5, &p);
            prop_assert_eq!(nf.rep(), &by_division(3, 5, &p));
        }

        #[test]
        fn normal_form_is_idempotent(p in laurent()) {
            let nf = QuotientElementXY::reduce(3, 5, &p);
            prop_assert_eq!(QuotientElementXY::reduce(3, 5, nf.rep()), nf);
        }

        #[test]
        fn reduction_is_multiplicative(a in laurent(), b in laurent()) {
            let (ra, rb) = (QuotientElementXY::reduce(3, 7, &a), QuotientElementXY::reduce(3, 7, &b));
            prop_assert_eq!(QuotientElementXY::reduce(3, 7, &(&a * &b)), ra.mul(&rb));
            prop_assert_eq!(QuotientElementXY::reduce(3, 7, &(&a + &b)), ra.add(&rb));
        }

        #[test]
        fn crt_map_is_multiplicative(a in laurent(), b in laurent()) {
            let (ra, rb) = (QuotientElementXY::reduce(3, 5, &a), QuotientElementXY::reduce(3, 5, &b));
            let lhs = ra.mul(&rb).to_cyclotomic().unwrap();
            let prod = ra.to_cyclotomic().unwrap().rep() * rb.to_cyclotomic().unwrap().rep();
            prop_assert_eq!(lhs, CycloIntegerElement::new(15, &prod).unwrap());
        }
    }

    #[test]
    fn degrees_bounded() {
        let p = LaurentPolynomial2::from_terms([((7, 11), Integer::from(3)), ((-2, -1), Integer::from(1))]);
        let nf = QuotientElementXY::reduce(3, 5, &p);
        assert!(nf.rep().terms().all(|(&(i, j), _)| (0..2).contains(&i) && (0..4).contains(&j)));
    }

    #[test]
    fn generators_vanish_and_units_invert() {
        let nx = LaurentPolynomial2::from_x_poly(&quantum_integer(3).unwrap());
        let my = LaurentPolynomial2::from_y_poly(&quantum_integer(5).unwrap());
        assert!(QuotientElementXY::reduce(3, 5, &nx).is_zero());
        assert!(QuotientElementXY::reduce(3, 5, &my).is_zero());
        let x = LaurentPolynomial2::monomial(Integer::one(), 1, 0);
        let x2 = LaurentPolynomial2::monomial(Integer::one(), 2, 0);
        assert!(QuotientElementXY::reduce(3, 5, &(&x * &x2)).is_one());
    }

    #[test]
    fn monomial_images() {
        for a in 0..3i64 {
            for b in 0..5i64 {
                let mono = LaurentPolynomial2::monomial(Integer::one(), a, b);
                let img = QuotientElementXY::reduce(3, 5, &mono).to_cyclotomic().unwrap();
                let expect = CycloIntegerElement::q_power(15, a * 10 + b * 6).unwrap();
                assert_eq!(img, expect, "x^{a} y^{b}");
            }
        }
    }
}
