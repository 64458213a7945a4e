use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use super::{
    check_bezout_identity, check_crt_correspondence, check_product_identity, cyclotomic,
    quantum_integer, require_distinct_primes, LaurentPolynomial2, QuantumError, QuotientElementXY,
};
use crate::arith::Integer;

/// Outcome of one step of the verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub step: u8,
    pub claim: String,
    pub passed: bool,
}

/// Outcome of [`verify_main_theorem`] for one pair of primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub n: u64,
    pub m: u64,
    pub steps: Vec<StepReport>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, m = {}", self.n, self.m)?;
        for s in &self.steps {
            let verdict = if s.passed { "PASS" } else { "FAIL" };
            writeln!(f, "step{}: {verdict}  {}", s.step, s.claim)?;
        }
        Ok(())
    }
}

/// Checks, for distinct odd primes `n` and `m`, the chain of identifications
/// `K0(T/S) ≅ Z[x^±, y^±]/([n]_x[m]_y) / ([n]_x, [m]_y) ≅ Z[x, y]/([n]_x, [m]_y)
/// ≅ Z[q]/([nm]_q/[m]_q, [nm]_q/[n]_q) = Z[q]/(Φ_nm)`.
pub fn verify_main_theorem(n: u64, m: u64) -> Result<TheoremReport, QuantumError> {
    require_distinct_primes(n, m)?;
    for p in [n, m] {
        if p % 2 == 0 {
            return Err(QuantumError::EvenPrime(p));
        }
    }
    let steps = alloc::vec![
        StepReport {
            step: 1,
            claim: format!("classes of ker P0 and ker P1 generate the ideal ([{n}]_x, [{m}]_y)"),
            passed: crate::k0::check_kernel_images(n, m),
        },
        StepReport {
            step: 2,
            claim: format!("[{n}]_x[{m}]_y lies in ([{n}]_x, [{m}]_y); x and y are invertible in the quotient"),
            passed: step2(n, m),
        },
        StepReport {
            step: 3,
            claim: format!("x -> q^a, y -> q^b identifies Z[x, y]/([{n}]_x, [{m}]_y) with Z[q]/([{nm}]_q/[{m}]_q, [{nm}]_q/[{n}]_q)", nm = n * m),
            passed: check_crt_correspondence(n, m)?,
        },
        StepReport {
            step: 4,
            claim: format!("([{nm}]_q/[{m}]_q, [{nm}]_q/[{n}]_q) = (Phi_{nm})", nm = n * m),
            passed: step4(n, m)?,
        },
    ];
    Ok(TheoremReport { n, m, steps })
}

fn step2(n: u64, m: u64) -> bool {
    let nx = LaurentPolynomial2::from_x_poly(&quantum_integer(n).expect("n > 0"));
    let my = LaurentPolynomial2::from_y_poly(&quantum_integer(m).expect("m > 0"));
    let product_vanishes = QuotientElementXY::reduce(n, m, &(&nx * &my)).is_zero();
    let mono = |i, j| LaurentPolynomial2::monomial(Integer::one(), i, j);
    let x_unit = QuotientElementXY::reduce(n, m, &(&mono(1, 0) * &mono(n as i64 - 1, 0))).is_one();
    let y_unit = QuotientElementXY::reduce(n, m, &(&mono(0, 1) * &mono(0, m as i64 - 1))).is_one();
    product_vanishes && x_unit && y_unit
}

/// `Φ_nm` lies in the ideal by the Bezout identity, and divides both generators
/// since `[nm]_q/[m]_q = [n]_q Φ_nm` and `[nm]_q/[n]_q = [m]_q Φ_nm`.
fn step4(n: u64, m: u64) -> Result<bool, QuantumError> {
    let phi = cyclotomic(n * m)?;
    let nm = quantum_integer(n * m)?;
    let g1 = nm.exact_div(&quantum_integer(m)?)?;
    let g2 = nm.exact_div(&quantum_integer(n)?)?;
    let divides = g1.rem_monic(&phi)?.is_zero() && g2.rem_monic(&phi)?.is_zero();
    Ok(check_product_identity(n, m)? && check_bezout_identity(n, m)? && divides)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn small_pairs_pass() {
        for (n, m) in [(3, 5), (3, 7), (5, 7)] {
            let r = verify_main_theorem(n, m).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!(r.steps.len(), 4);
        }
    }

    #[test]
    fn report_lines() {
        let text = verify_main_theorem(3, 5).unwrap().to_string();
        for k in 1..=4 {
            assert!(text.contains(&alloc::format!("step{k}: PASS")), "{text}");
        }
    }

    #[test]
    fn rejects_bad_pairs() {
        assert_eq!(verify_main_theorem(3, 3), Err(QuantumError::EqualPrimes(3)));
        assert_eq!(verify_main_theorem(4, 5), Err(QuantumError::NotPrime(4)));
        assert_eq!(verify_main_theorem(2, 5), Err(QuantumError::EvenPrime(2)));
    }
}
