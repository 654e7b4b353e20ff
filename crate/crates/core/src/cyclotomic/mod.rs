//! Exact arithmetic in the universal cyclotomic field.
//!
//! A [`Cyclotomic`] is stored as `sum c_k zeta_n^k` over the Zumbroich basis
//! of `Q(zeta_n)` with `n` the minimal conductor. Equal values therefore have
//! identical representations, and `==` is exact equality in the field.
//! Conductors `2 mod 4` never occur: `zeta_{2m} = -zeta_m^((m+1)/2)` for odd `m`.

mod basis;
mod serial;
mod sqrt;

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use num_integer::Integer;

use crate::arith::{gcd, lcm, units};
use crate::error::{Error, Result};

pub use serial::parse_rational;
pub(crate) use serial::json_error_at;
pub use sqrt::sqrt_positive_rational;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    /// Sorted by exponent, coefficients nonzero.
    terms: Vec<(u64, Rational)>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let terms = if q.is_zero() { Vec::new() } else { vec![(0, q)] };
        Cyclotomic { conductor: 1, terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `zeta_n^k` with `zeta_n = exp(2 pi i / n)`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1, "root_of_unity needs n >= 1");
        let e = k.rem_euclid(n as i64) as u64;
        let mut v = vec![Rational::zero(); n as usize];
        v[e as usize] = Rational::one();
        Self::from_dense(v)
    }

    /// Build from coefficients of `zeta_n^k`, `k = 0..n`, where `n = v.len()`.
    pub fn from_dense(v: Vec<Rational>) -> Self {
        let n = v.len() as u64;
        assert!(n >= 1, "dense vector must be nonempty");
        let mut v = if n % 4 == 2 { basis::fold_twice_odd(v) } else { v };
        let n = basis::normalize_order(n);
        basis::reduce_to_basis(n, &mut v);
        let terms: Vec<(u64, Rational)> = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c))
            .collect();
        let (conductor, terms) = basis::minimize_conductor(n, terms);
        Cyclotomic { conductor, terms }
    }

    /// Coefficients over `zeta_n^k` for `k = 0..n`. `n` must be a multiple of the conductor.
    pub fn to_dense(&self, n: u64) -> Vec<Rational> {
        assert!(
            n % self.conductor == 0,
            "order {n} is not a multiple of conductor {}",
            self.conductor
        );
        let scale = n / self.conductor;
        let mut v = vec![Rational::zero(); n as usize];
        for (k, c) in &self.terms {
            v[(k * scale) as usize] += c;
        }
        v
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `(exponent, coefficient)` pairs over `zeta_conductor`, exponents increasing.
    pub fn terms(&self) -> &[(u64, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match (self.conductor, self.terms.as_slice()) {
            (1, []) => Some(Rational::zero()),
            (1, [(_, c)]) => Some(c.clone()),
            _ => None,
        }
    }

    /// Image under `zeta_n -> zeta_n^k`, `k` a unit mod the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor;
        let k = k.rem_euclid(n as i64) as u64;
        assert_eq!(gcd(k, n), 1, "{k} is not a unit mod {n}");
        let mut v = vec![Rational::zero(); n as usize];
        for (e, c) in &self.terms {
            v[(e * k % n) as usize] += c;
        }
        Self::from_dense(v)
    }

    /// Complex conjugation, `zeta_n -> zeta_n^-1`.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        // a * prod_{sigma != 1} sigma(a) is the norm, a nonzero rational.
        // Clearing denominators first keeps every product integral.
        let d = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let a = self.scale(&Rational::from_integer(d.clone()));
        let n = a.conductor;
        let mut cofactor = Self::one();
        for k in units(n).into_iter().filter(|&k| k != 1) {
            cofactor = &cofactor * &a.galois(k as i64);
        }
        let norm = (&cofactor * &a)
            .to_rational()
            .expect("field norm is rational");
        Ok(cofactor.scale(&(Rational::from_integer(d) / norm)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating-point value under `zeta_n -> exp(2 pi i / n)`. Diagnostic only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let a = std::f64::consts::TAU * (*k as f64) / n;
            (re + c * a.cos(), im + c * a.sin())
        })
    }

    fn combine(&self, rhs: &Self, sign: i32) -> Self {
        if self.conductor == 1 && rhs.conductor == 1 {
            let a = self.to_rational().unwrap();
            let b = rhs.to_rational().unwrap();
            return Self::from_rational(if sign > 0 { a + b } else { a - b });
        }
        let n = lcm(self.conductor, rhs.conductor);
        let den = self.common_denom().lcm(&rhs.common_denom());
        let mut v = vec![BigInt::zero(); n as usize];
        for (x, negate) in [(self, false), (rhs, sign < 0)] {
            let s = n / x.conductor;
            for (k, c) in &x.terms {
                let c = numerator_over(c, &den);
                let slot = &mut v[(k * s) as usize];
                if negate {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
        }
        Self::from_dense_over(v, den)
    }

    fn multiply(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(q) = self.to_rational() {
            return rhs.scale(&q);
        }
        if let Some(q) = rhs.to_rational() {
            return self.scale(&q);
        }
        let n = lcm(self.conductor, rhs.conductor);
        let (da, db) = (self.common_denom(), rhs.common_denom());
        let (sa, sb) = (n / self.conductor, n / rhs.conductor);
        let bs: Vec<(u64, BigInt)> = rhs.terms.iter().map(|(k, c)| (k * sb, numerator_over(c, &db))).collect();
        let mut v = vec![BigInt::zero(); n as usize];
        for (ka, ca) in &self.terms {
            let (ka, ca) = (ka * sa, numerator_over(ca, &da));
            for (kb, cb) in &bs {
                v[((ka + kb) % n) as usize] += &ca * cb;
            }
        }
        Self::from_dense_over(v, da * db)
    }

    /// Least common denominator of the coefficients.
    fn common_denom(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) })
    }

    /// Like [`Cyclotomic::from_dense`] for the vector `v / den`, reducing in
    /// integers and normalising each surviving coefficient once.
    fn from_dense_over(v: Vec<BigInt>, den: BigInt) -> Self {
        let n = v.len() as u64;
        let mut v = if n % 4 == 2 { basis::fold_twice_odd(v) } else { v };
        let n = basis::normalize_order(n);
        basis::reduce_to_basis(n, &mut v);
        let terms: Vec<(u64, Rational)> = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, Rational::new(c, den.clone())))
            .collect();
        let (conductor, terms) = basis::minimize_conductor(n, terms);
        Cyclotomic { conductor, terms }
    }
}

/// `c * den` for a multiple `den` of the denominator of `c`.
fn numerator_over(c: &Rational, den: &BigInt) -> BigInt {
    if c.denom().is_one() {
        c.numer() * den
    } else {
        c.numer() * (den / c.denom())
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

/// Total order used only for deterministic sorting: conductor first, then
/// the term list lexicographically. It is not compatible with the field structure.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor.cmp(&other.conductor).then_with(|| {
            for (a, b) in self.terms.iter().zip(&other.terms) {
                let o = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.terms.len().cmp(&other.terms.len())
        })
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                let f: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic = $body;
                f(self, rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.combine(b, 1));
forward_binop!(Sub, sub, |a, b| a.combine(b, -1));
forward_binop!(Mul, mul, |a, b| a.multiply(b));

/// Panics on a zero divisor; use [`Cyclotomic::checked_div`] to get an error instead.
impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.checked_div(rhs).expect("division by zero cyclotomic")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        sum_dense(iter)
    }
}

impl<'a> Sum<&'a Cyclotomic> for Cyclotomic {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        sum_dense(iter.cloned())
    }
}

impl Product for Cyclotomic {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| &a * &b)
    }
}

impl Cyclotomic {
    /// `sum a_i * b_i`, canonicalised once at the end.
    pub fn dot<'a, I>(pairs: I) -> Cyclotomic
    where
        I: IntoIterator<Item = (&'a Cyclotomic, &'a Cyclotomic)>,
    {
        let pairs: Vec<_> = pairs
            .into_iter()
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .collect();
        let n = pairs
            .iter()
            .fold(1, |n, (a, b)| lcm(n, lcm(a.conductor, b.conductor)));
        if n == 1 {
            let q: Rational = pairs
                .iter()
                .map(|(a, b)| &a.terms[0].1 * &b.terms[0].1)
                .sum();
            return Cyclotomic::from_rational(q);
        }
        let den = pairs
            .iter()
            .fold(BigInt::one(), |d, (a, b)| d.lcm(&(a.common_denom() * b.common_denom())));
        let mut v = vec![BigInt::zero(); n as usize];
        for (a, b) in pairs {
            let (sa, sb) = (n / a.conductor, n / b.conductor);
            let (da, db) = (a.common_denom(), b.common_denom());
            let scale = &den / (&da * &db);
            let bs: Vec<(u64, BigInt)> = b.terms.iter().map(|(k, c)| (k * sb, numerator_over(c, &db))).collect();
            for (ka, ca) in &a.terms {
                let (ka, ca) = (ka * sa, numerator_over(ca, &da) * &scale);
                for (kb, cb) in &bs {
                    v[((ka + kb) % n) as usize] += &ca * cb;
                }
            }
        }
        Cyclotomic::from_dense_over(v, den)
    }
}

/// Accumulate in one dense vector and canonicalise once at the end.
fn sum_dense<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
    let items: Vec<Cyclotomic> = iter.filter(|x| !x.is_zero()).collect();
    let n = items.iter().fold(1, |n, x| lcm(n, x.conductor));
    if n == 1 {
        let q: Rational = items.iter().filter_map(|x| x.to_rational()).sum();
        return Cyclotomic::from_rational(q);
    }
    let den = items.iter().fold(BigInt::one(), |d, x| d.lcm(&x.common_denom()));
    let mut v = vec![BigInt::zero(); n as usize];
    for x in &items {
        let s = n / x.conductor;
        for (k, c) in &x.terms {
            v[(k * s) as usize] += numerator_over(c, &den);
        }
    }
    Cyclotomic::from_dense_over(v, den)
}

impl fmt::Display for Cyclotomic {
    /// Raw term list, e.g. `1/6`, `z3`, `-z8^3 + z8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = match (self.conductor, *k) {
                (_, 0) => String::new(),
                (n, 1) => format!("z{n}"),
                (n, k) => format!("z{n}^{k}"),
            };
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}
