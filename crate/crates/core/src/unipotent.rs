//! Formal spaces of unipotent characters of finite reductive groups.
//!
//! A space is an inner-product space with the unipotent characters as an
//! orthonormal basis. Principal-series labels are the irreducible characters
//! of the Weyl group; cuspidal labels are extra and count as elliptic. The
//! labels are partitioned into families, each with a finite group `Gamma`
//! and an injection into `M(Gamma)` that carries the Fourier transform.

use std::ops::{Add, Sub};
use std::sync::Arc;

use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::fingroup::{character_table, make_trivial, ClassFunction};
use crate::fourier::{fourier_matrix, m_set, m_set_s3, MSet};
use crate::matrix::CycMatrix;
use crate::weyl::{elliptic_classes, normalized_indicator, weyl_a1xa1, weyl_a2, weyl_g2, ReflectionRep};

#[derive(Clone, Debug)]
pub struct Family {
    mset: MSet,
    /// `(label index, pair index in mset)`.
    members: Vec<(usize, usize)>,
}

impl Family {
    pub fn mset(&self) -> &MSet {
        &self.mset
    }

    pub fn members(&self) -> &[(usize, usize)] {
        &self.members
    }
}

#[derive(Debug)]
pub struct UnipotentSpace {
    name: String,
    labels: Vec<String>,
    principal: Vec<usize>,
    cuspidal: Vec<usize>,
    weyl: ReflectionRep,
    families: Vec<Family>,
    delta: Vec<i8>,
}

impl UnipotentSpace {
    /// `families` maps labels to pair labels of `M(Gamma)`. Principal-series
    /// labels are the names in the Weyl group's character table; every other
    /// label is cuspidal.
    pub fn new(
        name: &str,
        labels: &[&str],
        weyl: ReflectionRep,
        families: Vec<(MSet, Vec<(&str, &str)>)>,
    ) -> Result<Arc<Self>> {
        let table = character_table(weyl.group())?;
        let index = |l: &str| {
            labels
                .iter()
                .position(|x| *x == l)
                .ok_or_else(|| Error::OutOfRange(format!("unknown label {l}")))
        };
        for irr in table.names() {
            if labels.iter().filter(|l| *l == irr).count() != 1 {
                return Err(Error::OutOfRange(format!(
                    "Weyl character {irr} must appear exactly once"
                )));
            }
        }
        let principal: Vec<usize> = (0..labels.len())
            .filter(|&i| table.index_of(labels[i]).is_some())
            .collect();
        let cuspidal = (0..labels.len()).filter(|i| !principal.contains(i)).collect();

        let mut seen = vec![false; labels.len()];
        let mut fams = Vec::new();
        for (mset, map) in families {
            let mut members = Vec::new();
            let mut used = vec![false; mset.len()];
            for (l, p) in map {
                let i = index(l)?;
                let j = mset
                    .index_of(p)
                    .ok_or_else(|| Error::OutOfRange(format!("pair {p} not in M({})", mset.gamma().name())))?;
                if seen[i] || used[j] {
                    return Err(Error::OutOfRange(format!("{l} -> {p} is not injective")));
                }
                seen[i] = true;
                used[j] = true;
                members.push((i, j));
            }
            fams.push(Family { mset, members });
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::OutOfRange(format!("label {} has no family", labels[i])));
        }
        Ok(Arc::new(UnipotentSpace {
            name: name.to_string(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            principal,
            cuspidal,
            weyl,
            families: fams,
            delta: vec![1; labels.len()],
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn weyl(&self) -> &ReflectionRep {
        &self.weyl
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn principal_labels(&self) -> Vec<&str> {
        self.principal.iter().map(|&i| self.labels[i].as_str()).collect()
    }

    pub fn cuspidal_labels(&self) -> Vec<&str> {
        self.cuspidal.iter().map(|&i| self.labels[i].as_str()).collect()
    }

    pub fn delta(&self) -> &[i8] {
        &self.delta
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Fam<'a> {
            gamma: &'a str,
            members: Vec<(&'a str, String)>,
        }
        #[derive(Serialize)]
        struct Space<'a> {
            name: &'a str,
            weyl_group: &'a str,
            labels: &'a [String],
            cuspidal: Vec<&'a str>,
            families: Vec<Fam<'a>>,
            delta: &'a [i8],
        }
        let s = Space {
            name: &self.name,
            weyl_group: self.weyl.group().name(),
            labels: &self.labels,
            cuspidal: self.cuspidal_labels(),
            families: self
                .families
                .iter()
                .map(|f| Fam {
                    gamma: f.mset.gamma().name(),
                    members: f
                        .members
                        .iter()
                        .map(|&(i, j)| (self.labels[i].as_str(), f.mset.pairs()[j].label()))
                        .collect(),
                })
                .collect(),
            delta: &self.delta,
        };
        serde_json::to_string(&s).expect("space serialization is infallible")
    }
}

/// An element of a unipotent space, by coordinates in the label basis.
#[derive(Clone, Debug)]
pub struct UniChar {
    space: Arc<UnipotentSpace>,
    coords: Vec<Cyclotomic>,
}

impl PartialEq for UniChar {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) && self.coords == other.coords
    }
}

impl UniChar {
    pub fn new(space: &Arc<UnipotentSpace>, coords: Vec<Cyclotomic>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::Dimension(format!(
                "{} coordinates for {} labels",
                coords.len(),
                space.dim()
            )));
        }
        Ok(UniChar {
            space: Arc::clone(space),
            coords,
        })
    }

    pub fn zero(space: &Arc<UnipotentSpace>) -> Self {
        UniChar {
            space: Arc::clone(space),
            coords: vec![Cyclotomic::zero(); space.dim()],
        }
    }

    pub fn unit(space: &Arc<UnipotentSpace>, label: &str) -> Result<Self> {
        let i = space
            .index_of(label)
            .ok_or_else(|| Error::OutOfRange(format!("unknown label {label}")))?;
        let mut v = Self::zero(space);
        v.coords[i] = Cyclotomic::one();
        Ok(v)
    }

    /// Integer combination of labels, e.g. `[("phi(1,6)", 1), ("phi(2,1)", 1)]`.
    pub fn from_terms(space: &Arc<UnipotentSpace>, terms: &[(&str, i64)]) -> Result<Self> {
        let mut v = Self::zero(space);
        for (l, c) in terms {
            v = v.checked_add(&Self::unit(space, l)?.scale(&Cyclotomic::from_int(*c)))?;
        }
        Ok(v)
    }

    pub fn space(&self) -> &Arc<UnipotentSpace> {
        &self.space
    }

    pub fn coords(&self) -> &[Cyclotomic] {
        &self.coords
    }

    pub fn coord(&self, label: &str) -> Option<&Cyclotomic> {
        self.space.index_of(label).map(|i| &self.coords[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Cyclotomic::is_zero)
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Character pairing; the labels are orthonormal.
    pub fn pairing(&self, other: &Self) -> Result<Cyclotomic> {
        self.same_space(other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * &b.conj())
            .sum())
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        UniChar {
            space: Arc::clone(&self.space),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(UniChar {
            space: Arc::clone(&self.space),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(UniChar {
            space: Arc::clone(&self.space),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }
}

impl Add for &UniChar {
    type Output = UniChar;
    fn add(self, rhs: &UniChar) -> UniChar {
        self.checked_add(rhs).expect("same space")
    }
}

impl Sub for &UniChar {
    type Output = UniChar;
    fn sub(self, rhs: &UniChar) -> UniChar {
        self.checked_sub(rhs).expect("same space")
    }
}

const G2_LABELS: [&str; 10] = [
    "phi(1,0)",
    "phi'(1,3)",
    "phi''(1,3)",
    "phi(1,6)",
    "phi(2,1)",
    "phi(2,2)",
    "G2[1]",
    "G2[-1]",
    "G2[theta]",
    "G2[theta^2]",
];

fn singleton(label: &str) -> Result<(MSet, Vec<(&str, &'static str)>)> {
    Ok((m_set(&make_trivial())?, vec![(label, "(1,1)")]))
}

/// Unipotent characters of `G2(F_q)`: three families with groups `1, S3, 1`.
pub fn build_g2q() -> Result<Arc<UnipotentSpace>> {
    let middle = vec![
        ("phi(2,1)", "(1,1)"),
        ("phi'(1,3)", "(1,r)"),
        ("phi''(1,3)", "(g3,1)"),
        ("phi(2,2)", "(g2,1)"),
        ("G2[1]", "(1,eps)"),
        ("G2[-1]", "(g2,eps)"),
        ("G2[theta]", "(g3,theta)"),
        ("G2[theta^2]", "(g3,theta^2)"),
    ];
    UnipotentSpace::new(
        "G2(q)",
        &G2_LABELS,
        weyl_g2(),
        vec![singleton("phi(1,0)")?, (m_set_s3()?, middle), singleton("phi(1,6)")?],
    )
}

/// `(A1 + A1~)(F_q)`: four principal-series characters, singleton families.
pub fn build_a1a1q() -> Result<Arc<UnipotentSpace>> {
    let labels = ["triv0*triv2", "sgn0*triv2", "triv0*sgn2", "sgn0*sgn2"];
    UnipotentSpace::new(
        "(A1+A1~)(q)",
        &labels,
        weyl_a1xa1(),
        labels.iter().map(|l| singleton(l)).collect::<Result<_>>()?,
    )
}

/// `A2(F_q)`: three principal-series characters, singleton families.
pub fn build_a2q() -> Result<Arc<UnipotentSpace>> {
    let labels = ["triv", "refl", "sgn"];
    UnipotentSpace::new(
        "A2(q)",
        &labels,
        weyl_a2(),
        labels.iter().map(|l| singleton(l)).collect::<Result<_>>()?,
    )
}

/// The Fourier transform on the label basis: entry `(a, b)` is the
/// coefficient of `b` in `FT(a)`, block-diagonal over families.
pub fn ft_full(space: &UnipotentSpace) -> Result<CycMatrix> {
    let n = space.dim();
    let mut m = CycMatrix::zeros(space.labels.clone(), space.labels.clone());
    for fam in &space.families {
        let pair_delta: Vec<i8> = {
            let mut d = vec![1i8; fam.mset.len()];
            for &(i, j) in &fam.members {
                d[j] = space.delta[i];
            }
            d
        };
        let f = fourier_matrix(&fam.mset, Some(&pair_delta))?;
        for &(i, pi) in &fam.members {
            for &(j, pj) in &fam.members {
                m[(i, j)] = f[(pi, pj)].clone();
            }
        }
    }
    debug_assert_eq!(m.nrows(), n);
    Ok(m)
}

/// `FT(v) = sum_a v_a FT(a)`.
pub fn apply_ft(v: &UniChar) -> Result<UniChar> {
    let m = ft_full(&v.space)?;
    let coords = m.transpose().mul_vec(&v.coords)?;
    UniChar::new(&v.space, coords)
}

/// Image of a class function on `W` under `chi -> rho_chi`.
pub fn embed_weyl(space: &Arc<UnipotentSpace>, f: &ClassFunction) -> Result<UniChar> {
    if !Arc::ptr_eq(f.group(), space.weyl.group()) {
        return Err(Error::GroupMismatch);
    }
    let table = character_table(space.weyl.group())?;
    let mut v = UniChar::zero(space);
    for &i in &space.principal {
        let chi = table.by_name(&space.labels[i]).expect("principal labels are Weyl characters");
        v.coords[i] = f.pairing(chi)?;
    }
    Ok(v)
}

/// Orthonormal basis of the elliptic subspace: normalized elliptic class
/// indicators of `W` (in elliptic class order) followed by the cuspidal labels.
pub fn elliptic_basis(space: &Arc<UnipotentSpace>) -> Result<Vec<(String, UniChar)>> {
    let rep = &space.weyl;
    let g = rep.group();
    let mut out = Vec::new();
    for k in elliptic_classes(rep) {
        let cls = &g.classes()[k];
        let label = format!("sqrt({})*rho[{}]", g.order() / cls.size, cls.name);
        out.push((label, embed_weyl(space, &normalized_indicator(rep, k)?)?));
    }
    for &i in &space.cuspidal {
        out.push((space.labels[i].clone(), UniChar::unit(space, &space.labels[i])?));
    }
    Ok(out)
}

/// Coordinates `<v, b>` of `v` along the elliptic basis.
pub fn elliptic_coordinates(space: &Arc<UnipotentSpace>, v: &UniChar) -> Result<Vec<Cyclotomic>> {
    elliptic_basis(space)?
        .iter()
        .map(|(_, b)| v.pairing(b))
        .collect()
}

/// Orthogonal projection onto the elliptic span.
pub fn elliptic_projection(space: &Arc<UnipotentSpace>, v: &UniChar) -> Result<UniChar> {
    let mut acc = UniChar::zero(space);
    for (_, b) in elliptic_basis(space)? {
        acc = acc.checked_add(&b.scale(&v.pairing(&b)?))?;
    }
    Ok(acc)
}

/// The Fourier transform restricted to the elliptic span, in the elliptic
/// basis: entry `(i, j)` is the coefficient of `b_j` in `FT(b_i)`. Fails if
/// some `FT(b_i)` leaves the span.
pub fn ft_elliptic(space: &Arc<UnipotentSpace>) -> Result<CycMatrix> {
    let basis = elliptic_basis(space)?;
    let n = basis.len();
    let mut entries = vec![vec![Cyclotomic::zero(); n]; n];
    for (i, (_, b)) in basis.iter().enumerate() {
        let image = apply_ft(b)?;
        let mut rest = image.clone();
        for (j, (_, bj)) in basis.iter().enumerate() {
            let c = image.pairing(bj)?;
            rest = rest.checked_sub(&bj.scale(&c))?;
            entries[i][j] = c;
        }
        if !rest.is_zero() {
            return Err(Error::ClosureViolation(i));
        }
    }
    let labels: Vec<String> = basis.into_iter().map(|(l, _)| l).collect();
    CycMatrix::new(labels.clone(), labels, entries)
}
