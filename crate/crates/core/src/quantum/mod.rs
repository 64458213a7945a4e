//! Quantum integers, cyclotomic polynomials, the quotient rings they cut out,
//! and the ring-isomorphism checks that identify `Z[x, y]/([n]_x, [m]_y)` with
//! the cyclotomic integers `Z[q]/(Φ_nm(q))`.

mod laurent;
mod quotient;
mod theorem;

use alloc::collections::BTreeMap;

use num_traits::One;

use crate::arith::{ArithError, Integer, IntPolynomial};

pub use laurent::LaurentPolynomial2;
pub use quotient::{CycloIntegerElement, QuotientElementXY};
pub use theorem::{verify_main_theorem, StepReport, TheoremReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuantumError {
    #[error("argument must be positive")]
    NotPositive,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the primes must be distinct (got {0} twice)")]
    EqualPrimes(u64),
    #[error("{0} is even; the cyclotomic identification is stated for odd primes only")]
    EvenPrime(u64),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn quantum_integer(n: u64) -> Result<IntPolynomial, QuantumError> {
    if n == 0 {
        return Err(QuantumError::NotPositive);
    }
    Ok(IntPolynomial::from_coeffs(alloc::vec![Integer::one(); n as usize]))
}

/// The `k`-th cyclotomic polynomial, by exact division of `q^k - 1` by the
/// cyclotomic polynomials of the proper divisors of `k`.
pub fn cyclotomic(k: u64) -> Result<IntPolynomial, QuantumError> {
    if k == 0 {
        return Err(QuantumError::NotPositive);
    }
    let mut memo = BTreeMap::new();
    Ok(cyclotomic_memo(k, &mut memo))
}

fn cyclotomic_memo(k: u64, memo: &mut BTreeMap<u64, IntPolynomial>) -> IntPolynomial {
    if let Some(p) = memo.get(&k) {
        return p.clone();
    }
    let mut denom = IntPolynomial::one();
    for d in (1..k).filter(|d| k.is_multiple_of(*d)) {
        denom = &denom * &cyclotomic_memo(d, memo);
    }
    let phi = IntPolynomial::q_power_minus_one(k as usize)
        .exact_div(&denom)
        .expect("product of cyclotomic polynomials of proper divisors divides q^k - 1");
    memo.insert(k, phi.clone());
    phi
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn require_distinct_primes(n: u64, m: u64) -> Result<(), QuantumError> {
    for p in [n, m] {
        if !is_prime(p) {
            return Err(QuantumError::NotPrime(p));
        }
    }
    if n == m {
        return Err(QuantumError::EqualPrimes(n));
    }
    Ok(())
}

/// Whether `[nm]_q = [n]_q [m]_q Φ_nm(q)` holds exactly.
pub fn check_product_identity(n: u64, m: u64) -> Result<bool, QuantumError> {
    require_distinct_primes(n, m)?;
    let lhs = quantum_integer(n * m)?;
    let rhs = &(&quantum_integer(n)? * &quantum_integer(m)?) * &cyclotomic(n * m)?;
    Ok(lhs == rhs)
}

/// Smallest positive `a` with `a n ≡ 1 (mod m)` and `b = (a n - 1)/m`, so that
/// `1 = a n - b m`.
pub fn bezout_witness(n: u64, m: u64) -> Result<(u64, u64), QuantumError> {
    if n == 0 || m == 0 {
        return Err(QuantumError::NotPositive);
    }
    if num_integer::gcd(n, m) != 1 {
        return Err(QuantumError::NotCoprime(n, m));
    }
    let a = (1..=m)
        .find(|a| (a * n) % m == 1 % m)
        .expect("n is invertible mod m");
    Ok((a, (a * n - 1) / m))
}

/// Checks `Φ_nm = ([an]/[n])([nm]/[m]) - q([bm]/[m])([nm]/[n])`, every quotient
/// being an exact division of quantum integers.
pub fn check_bezout_identity(n: u64, m: u64) -> Result<bool, QuantumError> {
    require_distinct_primes(n, m)?;
    let (a, b) = bezout_witness(n, m)?;
    let qi = quantum_integer;
    let an_over_n = qi(a * n)?.exact_div(&qi(n)?)?;
    let nm_over_m = qi(n * m)?.exact_div(&qi(m)?)?;
    let bm_over_m = qi(b * m)?.exact_div(&qi(m)?)?;
    let nm_over_n = qi(n * m)?.exact_div(&qi(n)?)?;
    let rhs = &(&an_over_n * &nm_over_m) - &(&(&IntPolynomial::q() * &bm_over_m) * &nm_over_n);
    Ok(rhs == cyclotomic(n * m)?)
}

/// Exponents `(α, β)` of the group isomorphism `C_n × C_m → C_nm` fixed by
/// `q ↦ xy`: `x ↦ q^α`, `y ↦ q^β`.
pub fn crt_exponents(n: u64, m: u64) -> Result<(u64, u64), QuantumError> {
    if n == 0 || m == 0 {
        return Err(QuantumError::NotPositive);
    }
    if num_integer::gcd(n, m) != 1 {
        return Err(QuantumError::NotCoprime(n, m));
    }
    let nm = n * m;
    let inv = |a: u64, modulus: u64| -> u64 {
        if modulus == 1 {
            return 0;
        }
        (1..modulus).find(|x| (a * x) % modulus == 1).expect("coprime")
    };
    let alpha = (m * inv(m % n, n)) % nm;
    let beta = (n * inv(n % m, m)) % nm;
    Ok((alpha, beta))
}

/// Checks that, modulo `q^{nm} - 1`, `[n]_x ↦ [nm]_q/[m]_q`, `[m]_y ↦ [nm]_q/[n]_q`,
/// and that `q ↦ xy` and `(x, y) ↦ (q^α, q^β)` are inverse on monomial bases.
pub fn check_crt_correspondence(n: u64, m: u64) -> Result<bool, QuantumError> {
    let (alpha, beta) = crt_exponents(n, m)?;
    let nm = n * m;
    let image_of = |gen_exp: u64, len: u64| -> IntPolynomial {
        let mut p = IntPolynomial::zero();
        for i in 0..len {
            p = &p + &IntPolynomial::monomial(Integer::one(), ((i * gen_exp) % nm) as usize);
        }
        p
    };
    let nm_over_m = quantum_integer(nm)?.exact_div(&quantum_integer(m)?)?;
    let nm_over_n = quantum_integer(nm)?.exact_div(&quantum_integer(n)?)?;
    let x_ok = image_of(alpha, n) == nm_over_m.reduce_exponents(nm as usize);
    let y_ok = image_of(beta, m) == nm_over_n.reduce_exponents(nm as usize);

    let forward = |i: u64, j: u64| (i * alpha + j * beta) % nm;
    let backward = |e: u64| (e % n, e % m);
    let xy_roundtrip = (0..n).all(|i| (0..m).all(|j| backward(forward(i, j)) == (i, j)));
    let q_roundtrip = (0..nm).all(|e| {
        let (i, j) = backward(e);
        forward(i, j) == e
    });
    Ok(x_ok && y_ok && xy_roundtrip && q_roundtrip)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn quantum_integers() {
        assert_eq!(quantum_integer(1).unwrap(), IntPolynomial::one());
        assert_eq!(quantum_integer(3).unwrap().to_string(), "1 + q + q^2");
        let q15 = quantum_integer(15).unwrap();
        assert_eq!(q15.degree(), Some(14));
        assert!(q15.coeffs().iter().all(One::is_one));
        assert_eq!(quantum_integer(0), Err(QuantumError::NotPositive));
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), IntPolynomial::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic(3).unwrap(), quantum_integer(3).unwrap());
        assert_eq!(cyclotomic(15).unwrap().to_string(), "1 - q + q^3 - q^4 + q^5 - q^7 + q^8");
        assert_eq!(cyclotomic(0), Err(QuantumError::NotPositive));
    }

    #[test]
    fn phi15_by_independent_quotient() {
        // (q^15 - 1)(q - 1) / ((q^3 - 1)(q^5 - 1))
        let qm = IntPolynomial::q_power_minus_one;
        let num = &qm(15) * &qm(1);
        let den = &qm(3) * &qm(5);
        let (quot, rem) = num.divrem(&den).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot, cyclotomic(15).unwrap());
        let (_, rem) = qm(15).divrem(&cyclotomic(15).unwrap()).unwrap();
        assert!(rem.is_zero());
    }

    #[test]
    fn divisor_product_is_q_power_minus_one() {
        for k in 1..=30u64 {
            let mut prod = IntPolynomial::one();
            for d in (1..=k).filter(|d| k.is_multiple_of(*d)) {
                prod = &prod * &cyclotomic(d).unwrap();
            }
            assert_eq!(prod, IntPolynomial::q_power_minus_one(k as usize), "k = {k}");
        }
    }

    #[test]
    fn product_and_bezout_identities() {
        for (n, m) in [(3, 5), (3, 7), (5, 7)] {
            assert!(check_product_identity(n, m).unwrap());
            assert!(check_bezout_identity(n, m).unwrap());
        }
        let primes = [2u64, 3, 5, 7, 11, 13];
        for &n in &primes {
            for &m in &primes {
                if n != m {
                    assert!(check_product_identity(n, m).unwrap(), "{n},{m}");
                    assert!(check_bezout_identity(n, m).unwrap(), "{n},{m}");
                }
            }
        }
        assert_eq!(check_product_identity(4, 5), Err(QuantumError::NotPrime(4)));
        assert_eq!(check_bezout_identity(5, 5), Err(QuantumError::EqualPrimes(5)));
    }

    #[test]
    fn bezout_15_worked_example() {
        // (1+q^3)(1+q^5+q^10) - q(1+q^3+q^6+q^9+q^12) = Φ_15
        let lhs = &IntPolynomial::from_i64s(&[1, 0, 0, 1])
            * &IntPolynomial::from_i64s(&[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]);
        let rhs = &IntPolynomial::q() * &IntPolynomial::from_i64s(&[1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(&lhs - &rhs, cyclotomic(15).unwrap());
    }

    #[test]
    fn bezout_witnesses() {
        assert_eq!(bezout_witness(3, 5).unwrap(), (2, 1));
        assert_eq!(bezout_witness(5, 3).unwrap(), (2, 3));
        assert_eq!(bezout_witness(3, 7).unwrap(), (5, 2));
        assert_eq!(bezout_witness(6, 4), Err(QuantumError::NotCoprime(6, 4)));
        for (n, m) in [(3u64, 5u64), (5, 3), (3, 7), (7, 11), (11, 7)] {
            let (a, b) = bezout_witness(n, m).unwrap();
            assert_eq!((a * n) as i64 - (b * m) as i64, 1);
        }
    }

    #[test]
    fn crt() {
        assert_eq!(crt_exponents(3, 5).unwrap(), (10, 6));
        assert_eq!(crt_exponents(3, 7).unwrap(), (7, 15));
        assert_eq!(crt_exponents(1, 7).unwrap(), (0, 1));
        assert_eq!(crt_exponents(4, 6), Err(QuantumError::NotCoprime(4, 6)));
        for (n, m) in [(3, 5), (3, 7), (5, 7), (5, 11), (7, 11)] {
            assert!(check_crt_correspondence(n, m).unwrap());
        }
    }

    #[test]
    fn crt_worked_examples_3_5() {
        // image of [3]_x is 1 + q^10 + q^20 ≡ 1 + q^5 + q^10
        let img = IntPolynomial::from_i64s(&{
            let mut c = [0i64; 21];
            c[0] = 1;
            c[10] = 1;
            c[20] = 1;
            c
        })
        .reduce_exponents(15);
        assert_eq!(img, IntPolynomial::from_i64s(&[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]));
        // x^2 y^3 -> q^38 ≡ q^8 -> x^2 y^3
        assert_eq!((2 * 10 + 3 * 6) % 15, 8);
        assert_eq!((8 % 3, 8 % 5), (2, 3));
    }
}
