//! Canonical form in the Zumbroich basis.
//!
//! For `n = prod p^e` (never `2 mod 4`), write an exponent `k` through the
//! CRT as `k = sum (n / p^e) * t_p` with `t_p` in `Z/p^e`, and split
//! `t_p = a + p^(e-1) * b` with `0 <= a < p^(e-1)`, `0 <= b < p`.
//! `zeta_n^k` belongs to the basis iff for every prime `b != 0` (odd `p`)
//! and `b == 0` (`p == 2`).
//!
//! Non-basis monomials are rewritten with
//! `sum_{j=0}^{p-1} zeta_n^(k + j n/p) = 0`, which shifts only the `b`
//! digit of prime `p` and leaves every other digit alone, so one sweep per
//! prime lands in the basis.

use std::ops::{AddAssign, SubAssign};

use num_traits::Zero;

use super::Rational;
use crate::arith::{factor, inv_mod};

/// Coefficient types the dense reductions run over: rationals, or integer
/// numerators sharing one denominator.
pub(crate) trait Coeff: Clone + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self> {}

impl<T: Clone + Zero + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>> Coeff for T {}

/// Per-prime digit extractor for exponents mod `n`.
struct Digit {
    p: u64,
    pe: u64,
    top: u64,
    cofactor_inv: u64,
}

impl Digit {
    fn new(n: u64, p: u64, e: u32) -> Self {
        let pe = p.pow(e);
        let cofactor_inv = inv_mod((n / pe) % pe, pe).expect("coprime cofactor");
        Digit {
            p,
            pe,
            top: p.pow(e - 1),
            cofactor_inv,
        }
    }

    fn b(&self, k: u64) -> u64 {
        ((k % self.pe) * self.cofactor_inv % self.pe) / self.top
    }

    fn is_bad(&self, k: u64) -> bool {
        let b = self.b(k);
        if self.p == 2 {
            b == 1
        } else {
            b == 0
        }
    }
}

/// `n` with the `2 mod 4` case folded away. Dense vectors indexed mod an
/// `n = 2m` (odd `m`) must go through [`fold_twice_odd`] first.
pub(crate) fn normalize_order(n: u64) -> u64 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

/// Rewrite a dense vector over `zeta_{2m}` (odd `m`) as one over `zeta_m`:
/// `zeta_{2m}^k = zeta_m^(k/2)` for even `k`, `-zeta_m^((k+m)/2)` for odd `k`.
pub(crate) fn fold_twice_odd<T: Coeff>(v: Vec<T>) -> Vec<T> {
    let n = v.len();
    let m = n / 2;
    let mut out = vec![T::zero(); m];
    for (k, c) in v.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k % 2 == 0 {
            out[k / 2] += &c;
        } else {
            out[((k + m) / 2) % m] -= &c;
        }
    }
    out
}

/// Rewrite `v` (coefficients of `zeta_n^k`, `k < n`) in the Zumbroich basis.
pub(crate) fn reduce_to_basis<T: Coeff>(n: u64, v: &mut [T]) {
    debug_assert_eq!(v.len() as u64, n);
    debug_assert!(n % 4 != 2);
    for (p, e) in factor(n) {
        let d = Digit::new(n, p, e);
        let step = n / p;
        for k in 0..n {
            if v[k as usize].is_zero() || !d.is_bad(k) {
                continue;
            }
            let c = std::mem::replace(&mut v[k as usize], T::zero());
            for j in 1..p {
                let idx = ((k + j * step) % n) as usize;
                v[idx] -= &c;
            }
        }
    }
}

/// Is `k` a Zumbroich basis exponent for `n`?
#[cfg(test)]
pub(crate) fn is_basis_exponent(n: u64, k: u64) -> bool {
    factor(n)
        .into_iter()
        .all(|(p, e)| !Digit::new(n, p, e).is_bad(k))
}

/// Shrink `(n, terms)` to the minimal conductor. `terms` must already be in
/// the basis for `n`, sorted by exponent.
pub(crate) fn minimize_conductor(
    mut n: u64,
    mut terms: Vec<(u64, Rational)>,
) -> (u64, Vec<(u64, Rational)>) {
    'outer: loop {
        if terms.is_empty() {
            return (1, terms);
        }
        for (p, e) in factor(n) {
            if let Some((m, t)) = try_descend(n, p, e, &terms) {
                n = m;
                terms = t;
                continue 'outer;
            }
        }
        return (n, terms);
    }
}

fn try_descend(
    n: u64,
    p: u64,
    e: u32,
    terms: &[(u64, Rational)],
) -> Option<(u64, Vec<(u64, Rational)>)> {
    // Divisibility descents: the basis of the subfield sits inside ours as
    // the exponents divisible by `step`.
    let step = match (p, e) {
        (2, 1) => unreachable!("orders 2 mod 4 are normalized away"),
        (2, 2) => Some(4),
        (_, 1) => None,
        _ => Some(p),
    };
    if let Some(step) = step {
        if terms.iter().all(|(k, _)| k % step == 0) {
            let t = terms.iter().map(|(k, c)| (k / step, c.clone())).collect();
            return Some((n / step, t));
        }
        return None;
    }

    // p exactly divides n: subfield basis monomial zeta_m^j appears as
    // -(sum of the p-1 good monomials in its coset mod m).
    let m = n / p;
    let mut groups: std::collections::BTreeMap<u64, Vec<&Rational>> = Default::default();
    for (k, c) in terms {
        groups.entry(k % m).or_default().push(c);
    }
    let p_inv = inv_mod(p % m.max(1), m.max(1)).unwrap_or(0);
    let mut out = Vec::with_capacity(groups.len());
    for (r, cs) in groups {
        if cs.len() as u64 != p - 1 || cs.iter().any(|c| *c != cs[0]) {
            return None;
        }
        let j = if m == 1 { 0 } else { (r * p_inv) % m };
        out.push((j, -cs[0].clone()));
    }
    out.sort_by_key(|(k, _)| *k);
    Some((m, out))
}
