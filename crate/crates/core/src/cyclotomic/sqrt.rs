use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Cyclotomic, Rational};
use crate::arith::{factor, legendre};
use crate::error::{Error, Result};

/// `sqrt(p)` for a prime `p`, as the positive real root.
///
/// Odd `p`: the quadratic Gauss sum `g = sum_a (a|p) zeta_p^a` equals
/// `sqrt(p)` when `p = 1 mod 4` and `i sqrt(p)` when `p = 3 mod 4`.
/// `sqrt(2) = zeta_8 - zeta_8^3`.
fn sqrt_prime(p: u64) -> Cyclotomic {
    if p == 2 {
        return Cyclotomic::root_of_unity(8, 1) - Cyclotomic::root_of_unity(8, 3);
    }
    let mut v = vec![Rational::zero(); p as usize];
    for a in 1..p {
        v[a as usize] = Rational::from_integer(BigInt::from(legendre(a, p)));
    }
    let g = Cyclotomic::from_dense(v);
    if p % 4 == 1 {
        g
    } else {
        -(&Cyclotomic::root_of_unity(4, 1) * &g)
    }
}

fn to_u64(n: &BigInt) -> Result<u64> {
    n.to_u64().ok_or_else(|| Error::TooLargeToFactor(n.to_string()))
}

/// The positive real square root of a positive rational.
pub fn sqrt_positive_rational(q: &Rational) -> Result<Cyclotomic> {
    if !q.is_positive() {
        return Err(Error::NonPositiveSqrt(q.to_string()));
    }
    // sqrt(a/b) = sqrt(a b) / b
    let den = q.denom().clone();
    let radicand = to_u64(&(q.numer() * &den))?;
    let mut outside = 1u64;
    let mut root = Cyclotomic::one();
    for (p, e) in factor(radicand) {
        outside *= p.pow(e / 2);
        if e % 2 == 1 {
            root = &root * &sqrt_prime(p);
        }
    }
    let coeff = Rational::new(BigInt::from(outside), den);
    Ok(root.scale(&coeff))
}

impl Cyclotomic {
    /// Convenience for `sqrt(n)`, `n > 0`.
    pub fn sqrt_int(n: u64) -> Cyclotomic {
        sqrt_positive_rational(&Rational::from_integer(BigInt::from(n)))
            .expect("positive integer square root")
    }
}
