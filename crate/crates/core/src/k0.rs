//! Grothendieck classes of Z²-graded modules.
//!
//! `K0` of the stable category is `Z[x^±, y^±]/([n]_x [m]_y)`; a module with
//! `dims(a, b)` in degree `(a, b)` has class `Σ dims(a, b) x^a y^b`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{Integer, IntPolynomial};
use crate::modules::random::{random_module_in, rng_from_seed, Family};
use crate::modules::{Direction, GradedModule, GradingScheme, ModuleError, SchemeKind};
use crate::quantum::{quantum_integer, CycloIntegerElement, LaurentPolynomial2, QuantumError, QuotientElementXY};
use crate::stable::{in_kernel_p0, in_kernel_p1, Triangle};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum K0Error {
    #[error("classes are only defined for the Z2 scheme")]
    CyclicScheme,
    #[error("classes belong to different rings: (n, m) = ({0}, {1}) vs ({2}, {3})")]
    RingMismatch(u64, u64, u64, u64),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// Element of `Z[x^±, y^±]/([n]_x [m]_y)`, kept as any representative.
#[derive(Clone, Debug)]
pub struct K0Class {
    n: u64,
    m: u64,
    rep: LaurentPolynomial2,
}

impl K0Class {
    pub fn new(n: u64, m: u64, rep: LaurentPolynomial2) -> Self {
        Self { n, m, rep }
    }

    pub fn zero(n: u64, m: u64) -> Self {
        Self::new(n, m, LaurentPolynomial2::zero())
    }

    pub fn monomial(n: u64, m: u64, a: i64, b: i64) -> Self {
        Self::new(n, m, LaurentPolynomial2::monomial(Integer::one(), a, b))
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

    /// `[n]_x [m]_y` divides the representative. The two factors live in
    /// different variables, so it suffices to test each.
    pub fn is_zero(&self) -> bool {
        let qn = quantum_integer(self.n).expect("n > 0");
        let qm = quantum_integer(self.m).expect("m > 0");
        self.rep.divisible_by_x_poly(&qn) && self.rep.divisible_by_y_poly(&qm)
    }

    /// Normal form modulo `([n]_x, [m]_y)`.
    pub fn quotient_class(&self) -> QuotientElementXY {
        QuotientElementXY::reduce(self.n, self.m, &self.rep)
    }

    /// Image in `Z[q]/(Φ_nm)` under `x ↦ q^α`, `y ↦ q^β`.
    pub fn cyclotomic_image(&self) -> Result<CycloIntegerElement, K0Error> {
        Ok(self.quotient_class().to_cyclotomic()?)
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            self.n == other.n && self.m == other.m,
            "{}",
            K0Error::RingMismatch(self.n, self.m, other.n, other.m)
        );
    }
}

impl PartialEq for K0Class {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && (self - other).is_zero()
    }
}

impl Eq for K0Class {}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

impl Add for &K0Class {
    type Output = K0Class;
    fn add(self, rhs: &K0Class) -> K0Class {
        self.check_ring(rhs);
        K0Class::new(self.n, self.m, &self.rep + &rhs.rep)
    }
}

impl Sub for &K0Class {
    type Output = K0Class;
    fn sub(self, rhs: &K0Class) -> K0Class {
        self.check_ring(rhs);
        K0Class::new(self.n, self.m, &self.rep - &rhs.rep)
    }
}

impl Mul for &K0Class {
    type Output = K0Class;
    fn mul(self, rhs: &K0Class) -> K0Class {
        self.check_ring(rhs);
        K0Class::new(self.n, self.m, &self.rep * &rhs.rep)
    }
}

impl Neg for &K0Class {
    type Output = K0Class;
    fn neg(self) -> K0Class {
        K0Class::new(self.n, self.m, -&self.rep)
    }
}

pub fn class_of(x: &GradedModule) -> Result<K0Class, K0Error> {
    let s = x.scheme();
    if s.kind() != SchemeKind::Z2 {
        return Err(K0Error::CyclicScheme);
    }
    let rep = LaurentPolynomial2::from_terms(x.dims().iter().map(|(&(a, b), &d)| ((a, b), Integer::from(d))));
    Ok(K0Class::new(s.n(), s.m(), rep))
}

/// `[X] - [Y] + [Z] = 0`.
pub fn class_additivity_check(t: &Triangle) -> Result<bool, K0Error> {
    let (x, y, z) = (class_of(&t.x)?, class_of(&t.y)?, class_of(&t.z)?);
    Ok((&(&x - &y) + &z).is_zero())
}

/// `[X ⊗ Y] = [X][Y]`.
pub fn class_multiplicativity_check(x: &GradedModule, y: &GradedModule) -> Result<bool, K0Error> {
    let lhs = class_of(&x.tensor(y)?)?;
    Ok(lhs == &class_of(x)? * &class_of(y)?)
}

/// Facts about `K0 = Z[x]/([n]_x)` for a single algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleAlgebraReport {
    pub n: u64,
    /// Normal form of `x · x^{n-1}`.
    pub x_times_inverse: IntPolynomial,
    /// Normal form of `x^{n-1}`, the inverse of `x`.
    pub inverse: IntPolynomial,
    /// Normal form of the class of the free rank one `n`-complex.
    pub free_class: IntPolynomial,
}

impl SingleAlgebraReport {
    pub fn passed(&self) -> bool {
        self.x_times_inverse == IntPolynomial::one() && self.free_class.is_zero()
    }
}

impl fmt::Display for SingleAlgebraReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "K0 = Z[x]/([{}]_x)", self.n)?;
        writeln!(f, "x^-1 = {}", self.inverse.display_with("x"))?;
        writeln!(f, "x * x^-1 = {}", self.x_times_inverse.display_with("x"))?;
        write!(f, "[free] = {}", self.free_class.display_with("x"))
    }
}

pub fn single_algebra_k0(n: u64) -> Result<SingleAlgebraReport, K0Error> {
    if n < 2 {
        return Err(QuantumError::NotPositive.into());
    }
    let qn = quantum_integer(n)?;
    let nf = |p: &IntPolynomial| p.rem_monic(&qn).expect("monic");
    let x = IntPolynomial::q();
    let inverse = nf(&IntPolynomial::monomial(Integer::one(), n as usize - 1));
    let x_times_inverse = nf(&(&x * &inverse));
    // the free n-complex has one basis vector in each degree 0, …, n-1
    let free = GradedModule::interval(&GradingScheme::z2(n, 1).map_err(K0Error::from)?, (0, 0), Direction::D0, n as usize)?;
    let coeffs = (0..n).map(|a| Integer::from(free.dim_at((a as i64, 0)))).collect();
    Ok(SingleAlgebraReport {
        n,
        x_times_inverse,
        inverse,
        free_class: nf(&IntPolynomial::from_coeffs(coeffs)),
    })
}

/// Evaluating `x ↦ 0`, `y ↦ 1` in `Z/(m)` respects `[n]_x [m]_y`, so it is a
/// ring map on `Z[x, y^±]/([n]_x [m]_y)` sending `x` to a non-unit. Returns
/// whether the relation indeed maps to zero and `x` to zero.
pub fn non_invertibility_witness(n: u64, m: u64) -> Result<bool, K0Error> {
    let relation = &LaurentPolynomial2::from_x_poly(&quantum_integer(n)?) * &LaurentPolynomial2::from_y_poly(&quantum_integer(m)?);
    let modulus = Integer::from(m);
    let at = |p: &LaurentPolynomial2| p.eval(&Integer::zero(), &Integer::one()).map(|v| ((v % &modulus) + &modulus) % &modulus);
    let x = LaurentPolynomial2::monomial(Integer::one(), 1, 0);
    Ok(m > 1 && at(&relation) == Some(Integer::zero()) && at(&x) == Some(Integer::zero()))
}

/// The classes of `ker P0` and `ker P1` generate `([n]_x, [m]_y)`: each
/// shifted chain `interval(e1, m)` lies in `ker P0` with class `x^a y^b [m]_y`,
/// each `interval(e0, n)` in `ker P1` with class `x^a y^b [n]_x`, and a few
/// random members of each kernel have classes in the ideal.
pub fn check_kernel_images(n: u64, m: u64) -> bool {
    kernel_images(n, m).unwrap_or(false)
}

fn kernel_images(n: u64, m: u64) -> Result<bool, K0Error> {
    let s = GradingScheme::z2(n, m)?;
    let qn = quantum_integer(n)?;
    let qm = quantum_integer(m)?;
    for (a, b) in [(0, 0), (1, 0), (0, 1), (-1, 2)] {
        let shift = |p: LaurentPolynomial2| K0Class::new(n, m, p.shifted(a, b));
        let c0 = GradedModule::interval(&s, (a, b), Direction::D1, m as usize)?;
        let c1 = GradedModule::interval(&s, (a, b), Direction::D0, n as usize)?;
        if !(in_kernel_p0(&c0) && in_kernel_p1(&c1)) {
            return Ok(false);
        }
        let (k0, k1) = (class_of(&c0)?, class_of(&c1)?);
        if k0 != shift(LaurentPolynomial2::from_y_poly(&qm)) || k1 != shift(LaurentPolynomial2::from_x_poly(&qn)) {
            return Ok(false);
        }
        if !(k0.quotient_class().is_zero() && k1.quotient_class().is_zero()) {
            return Ok(false);
        }
    }
    let mut rng = rng_from_seed(n * 1000 + m);
    for _ in 0..3 {
        let x = random_module_in(&s, Family::KerP0, m as usize + 2, &mut rng);
        let y = random_module_in(&s, Family::KerP1, n as usize + 2, &mut rng);
        if !(in_kernel_p0(&x) && in_kernel_p1(&y)) {
            return Ok(false);
        }
        if !(class_of(&x)?.rep().divisible_by_y_poly(&qm) && class_of(&y)?.rep().divisible_by_x_poly(&qn)) {
            return Ok(false);
        }
    }
    Ok(true)
}
