//! The cyclotomic field `Q[t]/(Φ_N(t))` in the power basis `1, t, ..., t^{φ(N)-1}`.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::Zero;

use super::{ArithError, IntPolynomial, Rational};
use crate::quantum::cyclotomic;

/// Context shared by all scalars of one cyclotomic field.
pub struct CyclotomicField {
    order: u64,
    degree: usize,
    modulus: IntPolynomial,
    /// Reduced coordinates of `t^k` for `0 <= k < order`, stored sparsely.
    powers: Vec<Vec<(usize, Rational)>>,
}

impl CyclotomicField {
    /// Builds `Q(ζ_N)`. Panics for `N == 0`.
    pub fn new(order: u64) -> Arc<Self> {
        assert!(order >= 1, "cyclotomic order must be positive");
        let modulus = cyclotomic(order).expect("positive order");
        let degree = modulus.degree().expect("nonzero modulus");
        let mut powers = Vec::with_capacity(order as usize);
        // t^k for k < degree is a basis vector; beyond that multiply by t and reduce.
        let mut cur: Vec<Rational> = vec![Rational::ZERO; degree];
        for k in 0..order as usize {
            if k < degree {
                cur = vec![Rational::ZERO; degree];
                cur[k] = Rational::ONE;
            } else {
                // shift up by one and fold the overflow coefficient back
                let top = cur[degree - 1].clone();
                for i in (1..degree).rev() {
                    cur[i] = cur[i - 1].clone();
                }
                cur[0] = Rational::ZERO;
                if !top.is_zero() {
                    for (i, c) in modulus.coeffs()[..degree].iter().enumerate() {
                        if !c.is_zero() {
                            cur[i] -= &(&top * &Rational::from(c));
                        }
                    }
                }
            }
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect(),
            );
        }
        Arc::new(Self {
            order,
            degree,
            modulus,
            powers,
        })
    }

    /// `N`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `φ(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `Φ_N`.
    pub fn modulus(&self) -> &IntPolynomial {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> CyclotomicScalar {
        CyclotomicScalar {
            field: Arc::clone(self),
            coords: Vec::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> CyclotomicScalar {
        self.rational(Rational::ONE)
    }

    pub fn int(self: &Arc<Self>, v: i64) -> CyclotomicScalar {
        self.rational(Rational::from_int(v))
    }

    /// Embeds a rational number.
    pub fn rational(self: &Arc<Self>, r: Rational) -> CyclotomicScalar {
        let coords = if r.is_zero() { Vec::new() } else { vec![r] };
        CyclotomicScalar {
            field: Arc::clone(self),
            coords,
        }
    }

    /// The class of `t^{e mod N}`.
    pub fn root_of_unity(self: &Arc<Self>, e: i64) -> CyclotomicScalar {
        let k = e.rem_euclid(self.order as i64) as usize;
        let mut coords = vec![Rational::ZERO; self.degree];
        for (i, c) in &self.powers[k] {
            coords[*i] = c.clone();
        }
        CyclotomicScalar::from_raw(Arc::clone(self), coords)
    }

    /// Scalar with the given power-basis coordinates; longer inputs are reduced
    /// modulo `Φ_N`.
    pub fn from_coords(self: &Arc<Self>, coords: Vec<Rational>) -> CyclotomicScalar {
        if coords.len() <= self.degree {
            return CyclotomicScalar::from_raw(Arc::clone(self), coords);
        }
        let mut acc = vec![Rational::ZERO; self.degree];
        for (k, c) in coords.iter().enumerate() {
            self.add_power(&mut acc, k, c);
        }
        CyclotomicScalar::from_raw(Arc::clone(self), acc)
    }

    /// `acc += c * t^k`, reduced.
    fn add_power(&self, acc: &mut [Rational], k: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let k = k % self.order as usize;
        if k < self.degree {
            acc[k] += c;
            return;
        }
        for (i, p) in &self.powers[k] {
            acc[*i] += &(c * p);
        }
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

/// An element of `Q[t]/(Φ_N(t))`.
///
/// Coordinates are kept with trailing zeros trimmed; [`CyclotomicScalar::coords`]
/// returns the full length-`φ(N)` coordinate vector.
#[derive(Clone)]
pub struct CyclotomicScalar {
    field: Arc<CyclotomicField>,
    coords: Vec<Rational>,
}

impl CyclotomicScalar {
    fn from_raw(field: Arc<CyclotomicField>, mut coords: Vec<Rational>) -> Self {
        while coords.last().is_some_and(Rational::is_zero) {
            coords.pop();
        }
        Self { field, coords }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Coordinates in the power basis, always of length `φ(N)`.
    pub fn coords(&self) -> Vec<Rational> {
        let mut out = self.coords.clone();
        out.resize(self.field.degree, Rational::ZERO);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coords.len() == 1 && self.coords[0].is_one()
    }

    /// The rational value, if this scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coords.len() {
            0 => Some(Rational::ZERO),
            1 => Some(self.coords[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return self.field.zero();
        }
        Self {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroInverse);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.rational(r.recip().expect("nonzero")));
        }
        let modulus: Vec<Rational> = self
            .field
            .modulus
            .coeffs()
            .iter()
            .map(Rational::from)
            .collect();
        let (g, s) = rat_poly::xgcd_inverse(&self.coords, &modulus);
        // g is a nonzero constant because Φ_N is irreducible
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip().expect("nonzero gcd");
        let s: Vec<Rational> = s.iter().map(|c| c * &ginv).collect();
        Ok(self.field.from_coords(s))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Parses the textual scalar syntax, e.g. `1/2 + 3*t^2 - t`.
    pub fn parse(field: &Arc<CyclotomicField>, s: &str) -> Result<Self, ArithError> {
        let bad = || ArithError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let bytes = compact.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            let c = bytes[i];
            if (c == b'+' || c == b'-') && !matches!(bytes[i - 1], b'^' | b'+' | b'-' | b'*' | b'/') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut acc = vec![Rational::ZERO; field.degree];
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coef, exp) = match body.find('t') {
                None => (body, 0i64),
                Some(pos) => {
                    let coef = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                    if body[..pos].ends_with('*') && coef.is_empty() {
                        return Err(bad());
                    }
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<i64>()
                            .map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            let mut c = if coef.is_empty() {
                Rational::ONE
            } else {
                coef.parse::<Rational>().map_err(|_| bad())?
            };
            if neg {
                c = -c;
            }
            let k = exp.rem_euclid(field.order as i64) as usize;
            field.add_power(&mut acc, k, &c);
        }
        Ok(CyclotomicScalar::from_raw(Arc::clone(field), acc))
    }
}

impl PartialEq for CyclotomicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coords == other.coords
    }
}

impl Eq for CyclotomicScalar {}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if k == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

fn check_same(a: &CyclotomicScalar, b: &CyclotomicScalar) {
    debug_assert_eq!(a.field.order, b.field.order, "mixed cyclotomic fields");
}

impl Add for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn add(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        check_same(self, rhs);
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let n = self.coords.len().max(rhs.coords.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coords.get(k), rhs.coords.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        CyclotomicScalar::from_raw(Arc::clone(&self.field), out)
    }
}

impl Sub for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        check_same(self, rhs);
        if rhs.is_zero() {
            return self.clone();
        }
        let n = self.coords.len().max(rhs.coords.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coords.get(k), rhs.coords.get(k)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        CyclotomicScalar::from_raw(Arc::clone(&self.field), out)
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        CyclotomicScalar {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn mul(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        check_same(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.field.zero();
        }
        if self.coords.len() == 1 {
            return rhs.scale(&self.coords[0]);
        }
        if rhs.coords.len() == 1 {
            return self.scale(&rhs.coords[0]);
        }
        let field = &self.field;
        let len = self.coords.len() + rhs.coords.len() - 1;
        let mut buf = vec![Rational::ZERO; len];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    buf[i + j] += &(a * b);
                }
            }
        }
        if len <= field.degree {
            return CyclotomicScalar::from_raw(Arc::clone(field), buf);
        }
        let mut acc = buf[..field.degree].to_vec();
        for (k, c) in buf.iter().enumerate().skip(field.degree) {
            field.add_power(&mut acc, k, c);
        }
        CyclotomicScalar::from_raw(Arc::clone(field), acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $m(self, rhs: CyclotomicScalar) -> CyclotomicScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CyclotomicScalar> for CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $m(self, rhs: &'a CyclotomicScalar) -> CyclotomicScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        -&self
    }
}

impl AddAssign<&CyclotomicScalar> for CyclotomicScalar {
    fn add_assign(&mut self, rhs: &CyclotomicScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CyclotomicScalar> for CyclotomicScalar {
    fn sub_assign(&mut self, rhs: &CyclotomicScalar) {
        *self = &*self - rhs;
    }
}

/// `N`-th root of unity `t^{e mod N}` in a freshly built `Q(ζ_N)`.
pub fn scalar_root_of_unity(order: u64, e: i64) -> CyclotomicScalar {
    CyclotomicField::new(order).root_of_unity(e)
}

/// Minimal dense polynomial arithmetic over `Q`, only what inversion needs.
mod rat_poly {
    use super::*;

    fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(Rational::is_zero) {
            p.pop();
        }
        p
    }

    fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let db = b.len() - 1;
        if a.len() <= db {
            return (Vec::new(), a.to_vec());
        }
        let lead_inv = b[db].recip().expect("nonzero leading coefficient");
        let mut rem = a.to_vec();
        let mut quot = vec![Rational::ZERO; a.len() - db];
        for k in (db..rem.len()).rev() {
            let c = &rem[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, bc) in b.iter().enumerate() {
                if !bc.is_zero() {
                    let t = &c * bc;
                    rem[k - db + i] -= &t;
                }
            }
            quot[k - db] = c;
        }
        rem.truncate(db);
        (trim(quot), trim(rem))
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        trim(out)
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|k| {
                    let x = a.get(k).cloned().unwrap_or_default();
                    match b.get(k) {
                        Some(y) => &x - y,
                        None => x,
                    }
                })
                .collect(),
        )
    }

    /// Returns `(g, s)` with `s * a ≡ g (mod modulus)` and `g = gcd(a, modulus)`.
    pub(super) fn xgcd_inverse(a: &[Rational], modulus: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let (mut r0, mut r1) = (modulus.to_vec(), trim(a.to_vec()));
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::ONE]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s2);
        }
        (r0, s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f15() -> Arc<CyclotomicField> {
        CyclotomicField::new(15)
    }

    #[test]
    fn roots_of_unity_orders() {
        let f = f15();
        assert!(f.root_of_unity(0).is_one());
        let z5 = f.root_of_unity(5);
        assert!(!z5.is_one());
        assert!(z5.pow(3).is_one());
        assert!((&z5 * &f.root_of_unity(10)).is_one());
        for e in 0..15 {
            assert!(f.root_of_unity(e).pow(15).is_one(), "e = {e}");
        }
        assert_eq!(f.root_of_unity(-5), f.root_of_unity(10));
    }

    #[test]
    fn multiplicative_order_is_n_over_gcd() {
        let f = f15();
        for e in 0..15i64 {
            let z = f.root_of_unity(e);
            let order = (1..=15u64).find(|&k| z.pow(k).is_one()).unwrap();
            let g = num_integer::gcd(e, 15) as u64;
            assert_eq!(order, 15 / g, "e = {e}");
        }
    }

    #[test]
    fn inverses() {
        let f = f15();
        assert!(f.one().inverse().unwrap().is_one());
        assert_eq!(f.root_of_unity(5).inverse().unwrap(), f.root_of_unity(10));
        let two_thirds = f.rational(Rational::new(2, 3));
        assert_eq!(two_thirds.inverse().unwrap(), f.rational(Rational::new(3, 2)));
        assert_eq!(f.zero().inverse(), Err(ArithError::ZeroInverse));
    }

    #[test]
    fn coords_have_full_length() {
        let f = f15();
        assert_eq!(f.degree(), 8);
        assert_eq!(f.one().coords().len(), 8);
        // t^8 = -1 + t - t^3 + t^4 - t^5 + t^7 under Φ_15
        let t8 = f.root_of_unity(8);
        let expected: Vec<Rational> = [-1, 1, 0, -1, 1, -1, 0, 1].iter().map(|&c| Rational::from_int(c)).collect();
        assert_eq!(t8.coords(), expected);
    }

    #[test]
    fn parse_and_print() {
        let f = f15();
        let s = CyclotomicScalar::parse(&f, "1/2 + 3*t^2").unwrap();
        assert_eq!(s.to_string(), "1/2 + 3*t^2");
        let s = CyclotomicScalar::parse(&f, " -t + 2/4*t^3 - 1").unwrap();
        assert_eq!(s.to_string(), "-1 - t + 1/2*t^3");
        assert_eq!(CyclotomicScalar::parse(&f, "t^15").unwrap(), f.one());
        assert_eq!(CyclotomicScalar::parse(&f, "t^-1").unwrap(), f.root_of_unity(14));
        assert_eq!(CyclotomicScalar::parse(&f, "0").unwrap(), f.zero());
        for bad in ["", "+", "t^", "1/0", "x", "2**t", "t3"] {
            assert!(CyclotomicScalar::parse(&f, bad).is_err(), "{bad}");
        }
    }

    fn scalar() -> impl Strategy<Value = Vec<(i64, i64)>> {
        proptest::collection::vec((-9i64..10, 1i64..5), 0..8)
    }

    fn build(f: &Arc<CyclotomicField>, c: &[(i64, i64)]) -> CyclotomicScalar {
        f.from_coords(c.iter().map(|&(n, d)| Rational::new(n, d)).collect())
    }

    proptest! {
        #[test]
        fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
            let f = f15();
            let (a, b, c) = (build(&f, &a), build(&f, &b), build(&f, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn display_parse_roundtrip(a in scalar()) {
            let f = f15();
            let a = build(&f, &a);
            prop_assert_eq!(CyclotomicScalar::parse(&f, &a.to_string()).unwrap(), a);
        }
    }
}
