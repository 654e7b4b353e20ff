//! Reflection representations of small Weyl groups and their elliptic theory.
//!
//! `w` is elliptic when `det_V(1 - w) != 0`. The class function
//! `w -> det_V(1 - w)` is the character of the alternating sum of exterior
//! powers of `V`, and `<a, b>_el = <a, b * det(1 - .)>` is the elliptic
//! pairing. Its radical is spanned by characters induced from proper
//! parabolic subgroups, which are supplied per group as data.

use std::sync::Arc;

use serde::Serialize;

use crate::cyclotomic::{sqrt_positive_rational, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::fingroup::{
    character_table, make_weyl_a1, make_weyl_a1xa1, make_weyl_a2, make_weyl_g2, ClassFunction,
    ElementId, FiniteGroup, Subgroup,
};
use crate::matrix::CycMatrix;

#[derive(Clone, Debug)]
pub struct ReflectionRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<CycMatrix>,
    parabolics: Vec<(String, Subgroup)>,
}

impl ReflectionRep {
    /// Extend generator matrices (keyed by generator name) to every element
    /// and check that the result is a homomorphism.
    pub fn new(
        group: &Arc<FiniteGroup>,
        generators: &[(&str, CycMatrix)],
        parabolics: &[&[&str]],
    ) -> Result<Self> {
        let dim = generators
            .first()
            .map_or(0, |(_, m)| m.nrows());
        let mut gens = Vec::new();
        for (name, id) in group.generators() {
            let m = generators
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, m)| m.clone())
                .ok_or_else(|| Error::OutOfRange(format!("no matrix for generator {name}")))?;
            if m.nrows() != dim || !m.is_square() {
                return Err(Error::Dimension(format!("generator {name} is not {dim}x{dim}")));
            }
            gens.push((*id, m));
        }
        // Breadth-first over right multiplication by generators.
        let mut matrices: Vec<Option<CycMatrix>> = vec![None; group.order()];
        matrices[group.identity() as usize] = Some(CycMatrix::identity(index_labels(dim)));
        let mut queue = vec![group.identity()];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for (g, m) in &gens {
                let b = group.mul(a, *g);
                if matrices[b as usize].is_none() {
                    let prod = matrices[a as usize].as_ref().unwrap().checked_mul(m)?;
                    matrices[b as usize] = Some(prod);
                    queue.push(b);
                }
            }
        }
        let matrices: Vec<CycMatrix> = matrices
            .into_iter()
            .map(|m| m.ok_or_else(|| Error::Dimension("generators do not reach every element".into())))
            .collect::<Result<_>>()?;
        let parabolics = parabolics
            .iter()
            .map(|names| {
                let ids = names
                    .iter()
                    .map(|n| group.element_from_word(&[n]))
                    .collect::<Result<Vec<_>>>()?;
                let label = format!("<{}>", names.join(","));
                Ok((label, Subgroup::generated_by(group, &ids)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let rep = ReflectionRep {
            group: Arc::clone(group),
            dim,
            matrices,
            parabolics,
        };
        if !rep.is_homomorphism() {
            return Err(Error::Dimension(
                "generator matrices do not define a representation".into(),
            ));
        }
        Ok(rep)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, w: ElementId) -> &CycMatrix {
        &self.matrices[w as usize]
    }

    /// Proper standard parabolic subgroups with their labels.
    pub fn parabolics(&self) -> &[(String, Subgroup)] {
        &self.parabolics
    }

    /// `M(ab) = M(a) M(b)` for all pairs.
    pub fn is_homomorphism(&self) -> bool {
        let g = &self.group;
        g.elements().all(|a| {
            g.elements().all(|b| {
                self.matrix(a)
                    .checked_mul(self.matrix(b))
                    .map_or(false, |m| m.same_entries(self.matrix(g.mul(a, b))))
            })
        })
    }

    /// Each generator is an involution with eigenvalue `-1` of multiplicity
    /// one, and each product `s t` has matrix order equal to its group order.
    pub fn satisfies_coxeter_relations(&self) -> bool {
        let g = &self.group;
        let id = CycMatrix::identity(index_labels(self.dim));
        let gens: Vec<ElementId> = g.generators().iter().map(|(_, x)| *x).collect();
        let reflections = gens.iter().all(|&s| {
            let m = self.matrix(s);
            m.checked_mul(m).map_or(false, |sq| sq.is_identity())
                && id.checked_sub(m).map_or(false, |d| d.rank() == 1)
        });
        reflections
            && gens.iter().all(|&s| {
                gens.iter().all(|&t| {
                    let st = self.matrix(s).checked_mul(self.matrix(t)).unwrap();
                    let order = g.element_order(g.mul(s, t));
                    let mut p = id.clone();
                    (1..=order).all(|k| {
                        p = p.checked_mul(&st).unwrap();
                        p.is_identity() == (k == order)
                    })
                })
            })
    }

    pub fn character(&self) -> ClassFunction {
        ClassFunction::from_fn(&self.group, |w| {
            let m = self.matrix(w);
            (0..self.dim).map(|i| m[(i, i)].clone()).sum()
        })
    }

    /// `c = s_1 s_2 ... s_n` in generator order.
    pub fn coxeter_element(&self) -> ElementId {
        let g = &self.group;
        g.generators().iter().fold(g.identity(), |acc, (_, s)| g.mul(acc, *s))
    }
}

fn index_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn mat(rows: Vec<Vec<Cyclotomic>>) -> CycMatrix {
    CycMatrix::from_rows(rows).expect("rectangular")
}

fn q(n: i64, d: i64) -> Cyclotomic {
    Cyclotomic::from_frac(n, d)
}

/// `W(G2)` on `R^2` with simple roots `a2 = (1, 0)` (short) and
/// `a1 = (-3/2, sqrt(3)/2)` (long):
/// `s1 = [[-1/2, sqrt3/2], [sqrt3/2, 1/2]]`, `s2 = diag(-1, 1)`.
pub fn weyl_g2() -> ReflectionRep {
    let h = Cyclotomic::sqrt_int(3).scale(&Rational::new(1.into(), 2.into()));
    let s1 = mat(vec![vec![q(-1, 2), h.clone()], vec![h, q(1, 2)]]);
    let s2 = mat(vec![vec![q(-1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]);
    ReflectionRep::new(
        &make_weyl_g2(),
        &[("s1", s1), ("s2", s2)],
        &[&[], &["s1"], &["s2"]],
    )
    .expect("W(G2) reflection representation")
}

/// `W(A1)` acting by `-1` on a line.
pub fn weyl_a1() -> ReflectionRep {
    ReflectionRep::new(&make_weyl_a1(), &[("s", mat(vec![vec![q(-1, 1)]]))], &[&[]])
        .expect("W(A1) reflection representation")
}

/// `W(A2) = S3` on `R^2`: `s1 = diag(-1, 1)`, `s2` the reflection in the
/// root at 120 degrees.
pub fn weyl_a2() -> ReflectionRep {
    let h = Cyclotomic::sqrt_int(3).scale(&Rational::new(1.into(), 2.into()));
    let s1 = mat(vec![vec![q(-1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]);
    let s2 = mat(vec![vec![q(1, 2), h.clone()], vec![h, q(-1, 2)]]);
    ReflectionRep::new(
        &make_weyl_a2(),
        &[("s1", s1), ("s2", s2)],
        &[&[], &["s1"], &["s2"]],
    )
    .expect("W(A2) reflection representation")
}

/// `W(A1 x A1)` on `R^2`, one sign flip per factor.
pub fn weyl_a1xa1() -> ReflectionRep {
    let s0 = mat(vec![vec![q(-1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]);
    let s2 = mat(vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(-1, 1)]]);
    ReflectionRep::new(
        &make_weyl_a1xa1(),
        &[("s0", s0), ("s2", s2)],
        &[&[], &["s0"], &["s2"]],
    )
    .expect("W(A1xA1) reflection representation")
}

/// `w -> det(I - M(w))`.
pub fn alt_sum_character(rep: &ReflectionRep) -> ClassFunction {
    let id = CycMatrix::identity(index_labels(rep.dim));
    ClassFunction::from_fn(&rep.group, |w| {
        id.checked_sub(rep.matrix(w))
            .and_then(|d| d.det())
            .expect("square matrices")
    })
}

/// `sum_i (-1)^i tr(wedge^i V)`, with `tr(wedge^i M)` the sum of the
/// principal `i x i` minors of `M`.
pub fn alt_sum_by_exterior_powers(rep: &ReflectionRep) -> ClassFunction {
    let n = rep.dim;
    ClassFunction::from_fn(&rep.group, |w| {
        let m = rep.matrix(w);
        let mut total = Cyclotomic::zero();
        for mask in 0u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let minor = if idx.is_empty() {
                Cyclotomic::one()
            } else {
                CycMatrix::from_rows(
                    idx.iter()
                        .map(|&i| idx.iter().map(|&j| m[(i, j)].clone()).collect())
                        .collect(),
                )
                .and_then(|s| s.det())
                .expect("square minor")
            };
            if idx.len() % 2 == 0 {
                total += &minor;
            } else {
                total -= &minor;
            }
        }
        total
    })
}

/// Elliptic classes, ordered by the least power of the Coxeter element they
/// contain (so `c, c^2, c^3` for `G2`); classes with no Coxeter power follow
/// in class order.
pub fn elliptic_classes(rep: &ReflectionRep) -> Vec<usize> {
    let g = &rep.group;
    let alt = alt_sum_character(rep);
    let c = rep.coxeter_element();
    let h = g.element_order(c);
    let first_power = |cls: usize| {
        (1..=h).find(|&k| g.class_of(g.pow(c, k)) == cls).unwrap_or(u32::MAX)
    };
    let mut out: Vec<usize> = (0..g.num_classes())
        .filter(|&k| !alt.value_at_class(k).is_zero())
        .collect();
    out.sort_by_key(|&k| (first_power(k), k));
    out
}

fn check_group(rep: &ReflectionRep, f: &ClassFunction) -> Result<()> {
    if Arc::ptr_eq(f.group(), &rep.group) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// `<a, b (x) wedge^- V>`.
pub fn elliptic_pairing(rep: &ReflectionRep, a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic> {
    check_group(rep, a)?;
    check_group(rep, b)?;
    a.pairing(&b.tensor(&alt_sum_character(rep))?)
}

/// `sqrt(|W| / |C|) * 1_C` for an elliptic class `C`.
pub fn normalized_indicator(rep: &ReflectionRep, class: usize) -> Result<ClassFunction> {
    let g = &rep.group;
    if class >= g.num_classes() {
        return Err(Error::OutOfRange(format!("class index {class}")));
    }
    if alt_sum_character(rep).value_at_class(class).is_zero() {
        return Err(Error::NotElliptic(class));
    }
    let ratio = Rational::new(g.order().into(), g.classes()[class].size.into());
    let s = sqrt_positive_rational(&ratio)?;
    Ok(ClassFunction::indicator(g, class).scale(&s))
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicalReport {
    pub group: String,
    /// Row/column labels of the Gram matrix (irreducible characters).
    pub irreducibles: Vec<String>,
    pub gram: CycMatrix,
    pub gram_rank: usize,
    pub radical_dim: usize,
    pub induced_span_dim: usize,
    pub induced_in_radical: bool,
    pub elliptic_classes: usize,
    pub parabolics: Vec<String>,
}

impl RadicalReport {
    /// Radical equals the induced span and the quotient has one dimension
    /// per elliptic class.
    pub fn holds(&self) -> bool {
        self.induced_in_radical
            && self.induced_span_dim == self.radical_dim
            && self.gram_rank == self.elliptic_classes
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

/// Gram matrix of the elliptic pairing on `Irr W`, compared against the span
/// of characters induced from the proper parabolic subgroups.
pub fn elliptic_radical_check(rep: &ReflectionRep) -> Result<RadicalReport> {
    let g = &rep.group;
    let table = character_table(g)?;
    let n = table.len();
    let names: Vec<String> = table.names().to_vec();
    let mut gram = vec![vec![Cyclotomic::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = elliptic_pairing(rep, table.row(i), table.row(j))?;
        }
    }
    let gram = CycMatrix::new(names.clone(), names.clone(), gram)?;
    let gram_rank = gram.rank();

    let mut induced = Vec::new();
    for (_, p) in &rep.parabolics {
        let sub_table = character_table(p.group())?;
        for psi in sub_table.rows() {
            induced.push(table.decompose(&psi.induce(p)?)?);
        }
    }
    let induced_in_radical = induced.iter().all(|v| {
        let cv: Vec<Cyclotomic> = v.iter().map(Cyclotomic::conj).collect();
        gram.mul_vec(&cv).map_or(false, |r| r.iter().all(Cyclotomic::is_zero))
    });
    let induced_span_dim = if induced.is_empty() {
        0
    } else {
        CycMatrix::from_rows(induced)?.rank()
    };
    Ok(RadicalReport {
        group: g.name().to_string(),
        irreducibles: names,
        gram,
        gram_rank,
        radical_dim: n - gram_rank,
        induced_span_dim,
        induced_in_radical,
        elliptic_classes: elliptic_classes(rep).len(),
        parabolics: rep.parabolics.iter().map(|(l, _)| l.clone()).collect(),
    })
}
