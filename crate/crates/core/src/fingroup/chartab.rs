//! Exact character tables by Dixon's method.
//!
//! The class-sum structure constants are reduced modulo a prime `p = 1 mod e`
//! (`e` the group exponent, `p > |G|`). Common eigenvectors of the class
//! matrices over `F_p` are the central characters; each is turned into a
//! character mod `p`, and every value `chi(g)` is lifted to `Q(zeta_o)`
//! (`o` the order of `g`) from the eigenvalue multiplicities of `g`, which
//! are small integers recoverable mod `p`.

use std::sync::Arc;

use serde::Serialize;

use super::{ClassFunction, ElementId, FiniteGroup, MAX_ORDER};
use crate::arith::{inv_mod, is_prime, mul_mod, pow_mod, primitive_root};
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    names: Vec<String>,
    rows: Vec<ClassFunction>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn by_name(&self, name: &str) -> Option<&ClassFunction> {
        self.index_of(name).map(|i| &self.rows[i])
    }

    /// Coefficients of `f` in the irreducible basis: `<f, chi_i>`.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<Cyclotomic>> {
        self.rows.iter().map(|chi| f.pairing(chi)).collect()
    }

    /// `sum_i coeffs[i] chi_i`.
    pub fn combine(&self, coeffs: &[Cyclotomic]) -> Result<ClassFunction> {
        if coeffs.len() != self.rows.len() {
            return Err(Error::Dimension("coefficient count".into()));
        }
        let mut acc = ClassFunction::zero(&self.group);
        for (c, chi) in coeffs.iter().zip(&self.rows) {
            if !c.is_zero() {
                acc = acc.checked_add(&chi.scale(c))?;
            }
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Class<'a> {
            name: &'a str,
            representative: String,
            size: usize,
        }
        #[derive(Serialize)]
        struct Row<'a> {
            name: &'a str,
            values: &'a [Cyclotomic],
        }
        #[derive(Serialize)]
        struct Table<'a> {
            group: &'a str,
            order: usize,
            classes: Vec<Class<'a>>,
            characters: Vec<Row<'a>>,
        }
        let g = &self.group;
        let t = Table {
            group: g.name(),
            order: g.order(),
            classes: g
                .classes()
                .iter()
                .map(|c| Class {
                    name: &c.name,
                    representative: g.word_string(c.representative),
                    size: c.size,
                })
                .collect(),
            characters: self
                .names
                .iter()
                .zip(&self.rows)
                .map(|(n, r)| Row {
                    name: n,
                    values: r.values(),
                })
                .collect(),
        };
        serde_json::to_string(&t).expect("table serialization is infallible")
    }
}

/// The irreducible characters of `g`, rows ordered by degree and then by
/// value vector. Rows are named from the group's built-in table when it has
/// one (and the computed table must agree with it), otherwise `chi1, chi2, ...`.
pub fn character_table(g: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    let values = match g.irr.get() {
        Some(v) => Arc::clone(v),
        None => {
            let v = Arc::new(dixon(g)?);
            Arc::clone(g.irr.get_or_init(|| v))
        }
    };
    let names = match g.builtin_table() {
        Some(b) => {
            let known = b.rows_in_class_order(g)?;
            values
                .iter()
                .map(|row| {
                    known
                        .iter()
                        .find(|(_, v)| v == row)
                        .map(|(n, _)| n.clone())
                        .ok_or_else(|| {
                            Error::CharacterTable(format!(
                                "computed character of {} missing from its built-in table",
                                g.name()
                            ))
                        })
                })
                .collect::<Result<Vec<_>>>()?
        }
        None => (1..=values.len()).map(|i| format!("chi{i}")).collect(),
    };
    let rows = values
        .iter()
        .map(|v| ClassFunction::new(g, v.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterTable {
        group: Arc::clone(g),
        names,
        rows,
    })
}

/// The shipped table for `g`, in the shipped row order, if there is one.
pub fn builtin_character_table(g: &Arc<FiniteGroup>) -> Option<Result<CharacterTable>> {
    let b = g.builtin_table()?;
    Some(b.rows_in_class_order(g).and_then(|rows| {
        let (names, vals): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        let rows = vals
            .into_iter()
            .map(|v| ClassFunction::new(g, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable {
            group: Arc::clone(g),
            names,
            rows,
        })
    }))
}

type Vector = Vec<u64>;

fn choose_prime(order: u64, exponent: u64) -> u64 {
    (1u64..)
        .map(|k| k * exponent + 1)
        .find(|&p| p > order && is_prime(p))
        .expect("primes in arithmetic progressions")
}

/// `m[i][k]` = number of `x` in class `j` with `x^-1 g_k` in class `i`.
fn class_matrix(g: &FiniteGroup, j: usize, p: u64) -> Vec<Vector> {
    let r = g.num_classes();
    let mut m = vec![vec![0u64; r]; r];
    for (k, ck) in g.classes().iter().enumerate() {
        for &x in &g.classes()[j].elements {
            let i = g.class_of(g.mul(g.inv(x), ck.representative));
            m[i][k] += 1;
        }
    }
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v %= p;
        }
    }
    m
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vector>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p).expect("nonzero mod prime");
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..ncols {
                    let d = mul_mod(f, rows[r][k], p);
                    rows[i][k] = (rows[i][k] + p - d) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Left null space `{u : u A = 0}` of a square matrix.
fn left_nullspace(a: &[Vector], p: u64) -> Vec<Vector> {
    let n = a.len();
    let mut t: Vec<Vector> = (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect();
    let pivots = rref(&mut t, p);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; n];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - t[r][free]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(x I - A)` mod `p`, coefficients low to high (Faddeev-LeVerrier).
fn char_poly(a: &[Vector], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    let mut m = vec![vec![0u64; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for l in 0..n {
                    s = (s + mul_mod(a[i][l], m[l][j], p)) % p;
                }
                next[i][j] = s;
            }
            next[i][i] = (next[i][i] + coeffs[n - k + 1]) % p;
        }
        m = next;
        // c_{n-k} = -tr(A M_k) / k
        let mut tr = 0u64;
        for i in 0..n {
            for l in 0..n {
                tr = (tr + mul_mod(a[i][l], m[l][i], p)) % p;
            }
        }
        let kinv = inv_mod(k as u64 % p, p).expect("k < p");
        coeffs[n - k] = (p - mul_mod(tr, kinv, p)) % p;
    }
    coeffs
}

fn eval_poly(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &a| (mul_mod(acc, x, p) + a) % p)
}

/// Split an invariant subspace (rows in RREF) into eigenspaces of `m`.
fn split(space: &[Vector], m: &[Vector], p: u64) -> Result<Vec<Vec<Vector>>> {
    let d = space.len();
    let r = m.len();
    let mut probe = space.to_vec();
    let pivots = rref(&mut probe, p);
    // c[i][l]: coordinate of m * b_i along b_l.
    let c: Vec<Vector> = space
        .iter()
        .map(|b| {
            let w: Vector = (0..r)
                .map(|i| (0..r).fold(0, |s, k| (s + mul_mod(m[i][k], b[k], p)) % p))
                .collect();
            pivots.iter().map(|&pc| w[pc]).collect()
        })
        .collect();
    let poly = char_poly(&c, p);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in 0..p {
        if eval_poly(&poly, lambda, p) != 0 {
            continue;
        }
        let mut shifted = c.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = (row[i] + p - lambda) % p;
        }
        let mut vecs: Vec<Vector> = left_nullspace(&shifted, p)
            .into_iter()
            .map(|u| {
                (0..r)
                    .map(|k| (0..d).fold(0, |s, i| (s + mul_mod(u[i], space[i][k], p)) % p))
                    .collect()
            })
            .collect();
        rref(&mut vecs, p);
        total += vecs.len();
        out.push(vecs);
        if total == d {
            break;
        }
    }
    if total != d {
        return Err(Error::CharacterTable(
            "class matrices are not simultaneously diagonalizable mod p".into(),
        ));
    }
    Ok(out)
}

pub(crate) fn dixon(g: &FiniteGroup) -> Result<Vec<Vec<Cyclotomic>>> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(Error::TooLarge {
            order: n,
            limit: MAX_ORDER,
        });
    }
    let r = g.num_classes();
    if r == 1 {
        return Ok(vec![vec![Cyclotomic::one()]]);
    }
    let e = g.exponent();
    let p = choose_prime(n as u64, e);

    let mut spaces: Vec<Vec<Vector>> = vec![(0..r)
        .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
        .collect()];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(g, j, p);
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
            } else {
                next.extend(split(&s, &m, p)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::CharacterTable(
            "central characters do not separate".into(),
        ));
    }

    let sizes: Vec<u64> = g.classes().iter().map(|c| c.size as u64).collect();
    let inverse_class: Vec<usize> = g
        .classes()
        .iter()
        .map(|c| g.class_of(g.inv(c.representative)))
        .collect();
    let z = pow_mod(primitive_root(p), (p - 1) / e, p);

    let mut rows = Vec::with_capacity(r);
    for s in spaces {
        let v0 = &s[0];
        let scale = inv_mod(v0[0], p).ok_or_else(|| {
            Error::CharacterTable("central character vanishes at the identity".into())
        })?;
        let omega: Vector = v0.iter().map(|&x| mul_mod(x, scale, p)).collect();
        // sum_k omega_k omega_{k*} / h_k = |G| / deg^2
        let s_sum = (0..r).fold(0, |acc, k| {
            let t = mul_mod(omega[k], omega[inverse_class[k]], p);
            (acc + mul_mod(t, inv_mod(sizes[k] % p, p).unwrap(), p)) % p
        });
        let deg_sq = mul_mod(n as u64 % p, inv_mod(s_sum, p).ok_or_else(|| {
            Error::CharacterTable("degenerate degree equation".into())
        })?, p);
        let deg = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % p == deg_sq)
            .ok_or_else(|| Error::CharacterTable("no integral degree".into()))?;
        let chi_mod: Vector = (0..r)
            .map(|k| mul_mod(mul_mod(deg, omega[k], p), inv_mod(sizes[k] % p, p).unwrap(), p))
            .collect();
        let values = (0..r)
            .map(|k| lift_value(g, g.classes()[k].representative, &chi_mod, deg, z, e, p))
            .collect::<Result<Vec<_>>>()?;
        rows.push(values);
    }
    // Degree first, the trivial character leading, then by values.
    let trivial = |v: &Vec<Cyclotomic>| !v.iter().all(Cyclotomic::is_one);
    rows.sort_by(|a, b| {
        a[0].cmp(&b[0])
            .then_with(|| trivial(a).cmp(&trivial(b)))
            .then_with(|| a.cmp(b))
    });
    Ok(rows)
}

/// `chi(g) = sum_s m_s zeta_o^s` with `m_s = (1/o) sum_l chi(g^l) z_o^(-s l)` mod `p`.
fn lift_value(
    g: &FiniteGroup,
    x: ElementId,
    chi_mod: &[u64],
    deg: u64,
    z: u64,
    e: u64,
    p: u64,
) -> Result<Cyclotomic> {
    let o = g.element_order(x) as u64;
    let zo = pow_mod(z, e / o, p);
    let zo_inv = inv_mod(zo, p).unwrap();
    let o_inv = inv_mod(o % p, p).unwrap();
    let powers: Vec<u64> = (0..o)
        .scan(g.identity(), |acc, _| {
            let cur = *acc;
            *acc = g.mul(*acc, x);
            Some(chi_mod[g.class_of(cur)])
        })
        .collect();
    let mut dense = vec![Rational::from_integer(0.into()); o as usize];
    for s in 0..o {
        let step = pow_mod(zo_inv, s, p);
        let mut acc = 0u64;
        let mut w = 1u64;
        for &v in &powers {
            acc = (acc + mul_mod(v, w, p)) % p;
            w = mul_mod(w, step, p);
        }
        let mult = mul_mod(acc, o_inv, p);
        if mult > deg {
            return Err(Error::CharacterTable(format!(
                "eigenvalue multiplicity {mult} exceeds degree {deg}"
            )));
        }
        dense[s as usize] = Rational::from_integer(mult.into());
    }
    Ok(Cyclotomic::from_dense(dense))
}
