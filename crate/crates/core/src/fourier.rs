//! Lusztig's set `M(G)` and the nonabelian Fourier transform on it.
//!
//! `M(G)` is the set of `G`-orbits of pairs `(x, sigma)` with `sigma`
//! irreducible on the centralizer `Z(x)`. Orbits are represented by the
//! canonical class representative `x` and a row of the centralizer's
//! character table. The pairing is
//!
//! ```text
//! {(x,s),(y,t)} = 1/(|Z(x)||Z(y)|) sum_{g : x g y g^-1 = g y g^-1 x} s(g y g^-1) conj(t(g^-1 x g))
//! ```
//!
//! Character names follow the usual small-group conventions: `1` trivial,
//! `r` the unique degree-2 character of `Z(1)`, `eps` a nontrivial sign,
//! `theta` / `theta^2` the characters sending `x` to `zeta_3` / `zeta_3^2`.
//! `theta` is fixed as `zeta_3` throughout.

use std::sync::Arc;

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::fingroup::{
    centralizer, character_table, make_symmetric, ClassFunction, ElementId, FiniteGroup,
    Subgroup, MAX_ORDER,
};
use crate::matrix::CycMatrix;

/// The standard order of `M(S3)`.
pub const S3_STANDARD_ORDER: [&str; 8] = [
    "(1,1)",
    "(1,r)",
    "(1,eps)",
    "(g2,1)",
    "(g2,eps)",
    "(g3,1)",
    "(g3,theta)",
    "(g3,theta^2)",
];

#[derive(Clone, Debug)]
pub struct MPair {
    x: ElementId,
    class: usize,
    centralizer: Arc<Subgroup>,
    sigma_index: usize,
    sigma: ClassFunction,
    x_name: String,
    sigma_name: String,
}

impl MPair {
    pub fn x(&self) -> ElementId {
        self.x
    }

    /// Class of `x` in the ambient group.
    pub fn class(&self) -> usize {
        self.class
    }

    pub fn centralizer(&self) -> &Subgroup {
        &self.centralizer
    }

    /// Row index of `sigma` in the centralizer's character table.
    pub fn sigma_index(&self) -> usize {
        self.sigma_index
    }

    pub fn sigma(&self) -> &ClassFunction {
        &self.sigma
    }

    pub fn x_name(&self) -> &str {
        &self.x_name
    }

    pub fn sigma_name(&self) -> &str {
        &self.sigma_name
    }

    pub fn label(&self) -> String {
        format!("({},{})", self.x_name, self.sigma_name)
    }

    /// `sigma` at an element of the ambient group lying in `Z(x)`.
    pub fn sigma_at(&self, g: ElementId) -> Option<&Cyclotomic> {
        self.centralizer.locate(g).map(|h| self.sigma.value_at(h))
    }
}

#[derive(Clone, Debug)]
pub struct MSet {
    gamma: Arc<FiniteGroup>,
    pairs: Vec<MPair>,
}

impl MSet {
    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.gamma
    }

    pub fn pairs(&self) -> &[MPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.pairs.iter().map(MPair::label).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.pairs.iter().position(|p| p.label() == label)
    }

    pub fn by_label(&self, label: &str) -> Option<&MPair> {
        self.index_of(label).map(|i| &self.pairs[i])
    }

    /// The same set listed in the order given by `labels`, which must name
    /// every pair exactly once.
    pub fn reordered(&self, labels: &[&str]) -> Result<MSet> {
        if labels.len() != self.pairs.len() {
            return Err(Error::Dimension(format!(
                "{} labels for {} pairs",
                labels.len(),
                self.pairs.len()
            )));
        }
        let mut used = vec![false; self.pairs.len()];
        let mut pairs = Vec::with_capacity(labels.len());
        for l in labels {
            let i = self
                .index_of(l)
                .filter(|&i| !used[i])
                .ok_or_else(|| Error::OutOfRange(format!("label {l} is not a fresh pair")))?;
            used[i] = true;
            pairs.push(self.pairs[i].clone());
        }
        Ok(MSet {
            gamma: Arc::clone(&self.gamma),
            pairs,
        })
    }
}

/// `M(gamma)` in canonical order: classes in the group's class order, and
/// within a class the centralizer's character-table row order.
pub fn m_set(gamma: &Arc<FiniteGroup>) -> Result<MSet> {
    if gamma.order() > MAX_ORDER {
        return Err(Error::TooLarge {
            order: gamma.order(),
            limit: MAX_ORDER,
        });
    }
    let mut pairs = Vec::new();
    for (class, cls) in gamma.classes().iter().enumerate() {
        let x = cls.representative;
        let z = Arc::new(centralizer(gamma, x)?);
        let table = character_table(z.group())?;
        let names = sigma_names(gamma, &z, x, table.rows());
        for (i, (chi, name)) in table.rows().iter().zip(names).enumerate() {
            pairs.push(MPair {
                x,
                class,
                centralizer: Arc::clone(&z),
                sigma_index: i,
                sigma: chi.clone(),
                x_name: cls.name.clone(),
                sigma_name: name,
            });
        }
    }
    Ok(MSet {
        gamma: Arc::clone(gamma),
        pairs,
    })
}

/// `M(S3)` in the standard order [`S3_STANDARD_ORDER`].
pub fn m_set_s3() -> Result<MSet> {
    m_set(&make_symmetric(3)?)?.reordered(&S3_STANDARD_ORDER)
}

/// Smallest `k` with `v^k = 1` (up to `bound`) and the `j` with `v = zeta_k^j`.
fn as_root_of_unity(v: &Cyclotomic, bound: u32) -> Option<(u64, i64)> {
    let k = (1..=bound).find(|&k| v.pow(k).is_one())? as u64;
    let j = (0..k as i64).find(|&j| Cyclotomic::root_of_unity(k, j) == *v)?;
    Some((k, j))
}

fn sigma_names(
    gamma: &FiniteGroup,
    z: &Subgroup,
    x: ElementId,
    rows: &[ClassFunction],
) -> Vec<String> {
    // Linear characters are named by their value at `x`, or for `x = 1` at
    // the first generator of the group.
    let probe = if x != gamma.identity() {
        Some(x)
    } else {
        gamma.generators().first().map(|(_, g)| *g)
    };
    let probe_order = probe.map_or(1, |p| gamma.element_order(p));
    let degree_two = rows
        .iter()
        .filter(|r| r.degree() == &Cyclotomic::from_int(2))
        .count();
    let mut names: Vec<String> = rows
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            let fallback = format!("chi{}", i + 1);
            if chi.values().iter().all(Cyclotomic::is_one) {
                return "1".to_string();
            }
            if chi.degree().is_one() {
                let v = probe.and_then(|p| z.locate(p)).map(|h| chi.value_at(h));
                return match v.and_then(|v| as_root_of_unity(v, probe_order)) {
                    Some((2, _)) => "eps".to_string(),
                    Some((3, 1)) => "theta".to_string(),
                    Some((3, 2)) => "theta^2".to_string(),
                    Some((k, j)) if k > 1 => format!("z{k}^{j}"),
                    _ => fallback,
                };
            }
            if x == gamma.identity() && degree_two == 1 && chi.degree() == &Cyclotomic::from_int(2)
            {
                return "r".to_string();
            }
            fallback
        })
        .collect();
    // Disambiguate repeated names by appending the table row.
    for i in 0..names.len() {
        if names.iter().filter(|n| **n == names[i]).count() > 1 {
            let base = names[i].clone();
            for (j, n) in names.iter_mut().enumerate() {
                if *n == base {
                    *n = format!("{base}_{}", j + 1);
                }
            }
        }
    }
    names
}

/// The pairing for explicit orbit representatives: `sigma` is a function on
/// `Z(x)` and `tau` on `Z(y)`, both given on elements of `gamma`.
pub fn fourier_pairing_with(
    gamma: &FiniteGroup,
    x: ElementId,
    sigma: &dyn Fn(ElementId) -> Cyclotomic,
    y: ElementId,
    tau: &dyn Fn(ElementId) -> Cyclotomic,
) -> Result<Cyclotomic> {
    gamma.check_element(x)?;
    gamma.check_element(y)?;
    let commute = |a: ElementId, b: ElementId| gamma.mul(a, b) == gamma.mul(b, a);
    let zx = gamma.elements().filter(|&g| commute(g, x)).count();
    let zy = gamma.elements().filter(|&g| commute(g, y)).count();
    let total: Cyclotomic = gamma
        .elements()
        .filter_map(|g| {
            let gyg = gamma.conjugate(g, y);
            if !commute(x, gyg) {
                return None;
            }
            let gxg = gamma.conjugate(gamma.inv(g), x);
            Some(sigma(gyg) * &tau(gxg).conj())
        })
        .sum();
    Ok(total.scale(&Rational::new(1.into(), (zx * zy).into())))
}

/// `{a, b}` for two pairs of `M(gamma)`.
pub fn fourier_pairing(gamma: &Arc<FiniteGroup>, a: &MPair, b: &MPair) -> Result<Cyclotomic> {
    for p in [a, b] {
        if !Arc::ptr_eq(p.centralizer.parent(), gamma) {
            return Err(Error::ForeignPair);
        }
    }
    let sigma = |g: ElementId| a.sigma_at(g).cloned().unwrap_or_else(Cyclotomic::zero);
    let tau = |g: ElementId| b.sigma_at(g).cloned().unwrap_or_else(Cyclotomic::zero);
    fourier_pairing_with(gamma, a.x, &sigma, b.x, &tau)
}

/// The Fourier matrix on `m`: entry `(a, b) = {a, b} * delta(b)`, rows and
/// columns labelled by the pairs. `delta` defaults to all `+1`.
pub fn fourier_matrix(m: &MSet, delta: Option<&[i8]>) -> Result<CycMatrix> {
    let n = m.len();
    if let Some(d) = delta {
        if d.len() != n {
            return Err(Error::DeltaMismatch {
                got: d.len(),
                expected: n,
            });
        }
        if let Some(bad) = d.iter().find(|s| s.abs() != 1) {
            return Err(Error::OutOfRange(format!("sign {bad} is not +1 or -1")));
        }
    }
    let mut entries = vec![vec![Cyclotomic::zero(); n]; n];
    for (i, a) in m.pairs.iter().enumerate() {
        for (j, b) in m.pairs.iter().enumerate() {
            let v = fourier_pairing(&m.gamma, a, b)?;
            entries[i][j] = match delta {
                Some(d) if d[j] < 0 => -v,
                _ => v,
            };
        }
    }
    let labels = m.labels();
    CycMatrix::new(labels.clone(), labels, entries)
}
