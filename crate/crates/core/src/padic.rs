//! Elliptic unipotent representations of the `p`-adic group `G2`.
//!
//! The nine square-integrable unipotent representations `v1..v9` are
//! indexed by Kazhdan-Lusztig parameters: `v1` (Steinberg) sits over the
//! regular unipotent class with trivial component group, `v2..v9` over the
//! subregular class `G2(a1)` and are identified with `M(S3)`. Their
//! restrictions to the three maximal parahorics are constant data. Projected
//! onto the elliptic spaces of the reductive quotients `G2`, `A1+A1~` and
//! `A2`, they give the matrix `R` of the elliptic restriction map, which
//! intertwines the dual Fourier transform on parameters with the finite
//! elliptic Fourier transforms.
//!
//! Matrix conventions: `R` has one row per target basis vector and one
//! column per `v_i`. Fourier matrices have entry `(a, b)` equal to the
//! coefficient of `b` in `FT(a)`, so as maps on column vectors they act by
//! their transposes.

use std::sync::Arc;

use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::fingroup::{make_trivial, FiniteGroup};
use crate::fourier::{fourier_pairing, m_set, m_set_s3, MSet};
use crate::matrix::CycMatrix;
use crate::unipotent::{
    build_a1a1q, build_a2q, build_g2q, elliptic_basis, elliptic_coordinates, ft_elliptic,
    UniChar, UnipotentSpace,
};

/// One elliptic unipotent representation with its parameter data.
#[derive(Clone, Debug, Serialize)]
pub struct DSLabel {
    pub name: &'static str,
    /// Unipotent class of the parameter: `G2` or `G2(a1)`.
    pub unipotent_class: &'static str,
    /// Pair in `M(S3)` for the subregular class, `(1,1)` in `M(1)` for `v1`.
    pub kl: &'static str,
    /// Isolated semisimple class `s0`, `s1` or `s2`.
    pub isolated: &'static str,
    pub iwahori_spherical: bool,
    pub description: &'static str,
}

/// The nine labels in order `v1..v9`.
pub fn ds_labels() -> Vec<DSLabel> {
    let l = |name, unipotent_class, kl, isolated, iwahori_spherical, description| DSLabel {
        name,
        unipotent_class,
        kl,
        isolated,
        iwahori_spherical,
        description,
    };
    vec![
        l("v1", "G2", "(1,1)", "s0", true, "Steinberg"),
        l("v2", "G2(a1)", "(1,1)", "s0", true, "generic, dual of the affine reflection representation"),
        l("v3", "G2(a1)", "(1,r)", "s0", true, "nongeneric, long reflection sign representation"),
        l("v4", "G2(a1)", "(g3,1)", "s2", true, "endoscopic A2"),
        l("v5", "G2(a1)", "(g2,1)", "s1", true, "endoscopic A1xA1~"),
        l("v6", "G2(a1)", "(1,eps)", "s0", false, "supercuspidal G2[1]"),
        l("v7", "G2(a1)", "(g2,eps)", "s1", false, "supercuspidal G2[-1]"),
        l("v8", "G2(a1)", "(g3,theta)", "s2", false, "supercuspidal G2[theta]"),
        l("v9", "G2(a1)", "(g3,theta^2)", "s2", false, "supercuspidal G2[theta^2]"),
    ]
}

fn v_names() -> Vec<String> {
    (1..=9).map(|i| format!("v{i}")).collect()
}

/// Parameter sets for the two elliptic unipotent classes of the dual group.
#[derive(Clone, Debug)]
pub struct MParam {
    pub class: String,
    pub component_group: Arc<FiniteGroup>,
    pub mset: MSet,
    /// `(representation, pair label)`.
    pub labels: Vec<(String, String)>,
}

/// `G2` (regular): trivial component group, one parameter `v1`.
/// `G2(a1)` (subregular): component group `S3`, parameters `v2..v9`.
pub fn m_param_data(class: &str) -> Result<MParam> {
    let mset = match class {
        "G2" => m_set(&make_trivial())?,
        "G2(a1)" => m_set_s3()?,
        other => return Err(Error::UnknownClass(other.to_string())),
    };
    let labels = ds_labels()
        .into_iter()
        .filter(|d| d.unipotent_class == class)
        .map(|d| (d.name.to_string(), d.kl.to_string()))
        .collect();
    Ok(MParam {
        class: class.to_string(),
        component_group: Arc::clone(mset.gamma()),
        mset,
        labels,
    })
}

/// The dual Fourier transform on `v1..v9` with the standard parameters.
pub fn dual_ft() -> Result<CycMatrix> {
    let kl: Vec<&str> = ds_labels().iter().skip(1).map(|d| d.kl).collect();
    dual_ft_with(&kl)
}

/// The dual Fourier transform for a given assignment `v2..v9 -> M(S3)`:
/// block-diagonal with the `1 x 1` block for `v1` and the `S3` pairing.
pub fn dual_ft_with(kl: &[&str]) -> Result<CycMatrix> {
    if kl.len() != 8 {
        return Err(Error::Dimension(format!("{} parameters for v2..v9", kl.len())));
    }
    let m = m_set_s3()?;
    let pairs = kl
        .iter()
        .map(|p| m.by_label(p).ok_or_else(|| Error::OutOfRange(format!("pair {p} not in M(S3)"))))
        .collect::<Result<Vec<_>>>()?;
    let mut out = CycMatrix::zeros(v_names(), v_names());
    out[(0, 0)] = Cyclotomic::one();
    for (i, a) in pairs.iter().enumerate() {
        for (j, b) in pairs.iter().enumerate() {
            out[(i + 1, j + 1)] = fourier_pairing(m.gamma(), a, b)?;
        }
    }
    Ok(out)
}

/// The three maximal parahoric types with the unipotent spaces of their
/// reductive quotients.
#[derive(Debug)]
pub struct RestrictionTable {
    pub parahorics: Vec<(&'static str, Arc<UnipotentSpace>)>,
    /// `entries[i][j]`: restriction of `v_{i+1}` to parahoric `j`.
    pub entries: Vec<Vec<UniChar>>,
}

impl RestrictionTable {
    pub fn get(&self, v: usize, j: usize) -> &UniChar {
        &self.entries[v][j]
    }
}

/// Restrictions of `v1..v9` to the parahorics `J0 = G2`, `J1 = A1+A1~`,
/// `J2 = A2`, from the Iwahori-Hecke module structure of `v1..v5` and
/// compact induction for the supercuspidals `v6..v9`.
pub fn restriction_table() -> Result<RestrictionTable> {
    let g2 = build_g2q()?;
    let a1 = build_a1a1q()?;
    let a2 = build_a2q()?;
    type Row = (&'static [(&'static str, i64)], &'static [(&'static str, i64)], &'static [(&'static str, i64)]);
    const SSS: &[(&str, i64)] = &[("sgn0*sgn2", 1), ("sgn0*triv2", 1), ("triv0*sgn2", 1)];
    const DATA: [Row; 9] = [
        (&[("phi(1,6)", 1)], &[("sgn0*sgn2", 1)], &[("sgn", 1)]),
        (&[("phi(1,6)", 1), ("phi(2,1)", 1)], SSS, &[("sgn", 1), ("refl", 1)]),
        (&[("phi'(1,3)", 1)], &[("sgn0*triv2", 1)], &[("sgn", 1)]),
        (&[("phi(1,6)", 1), ("phi''(1,3)", 1)], &[("triv0*sgn2", 1), ("sgn0*sgn2", 1)], &[("refl", 1)]),
        (&[("phi(1,6)", 1), ("phi(2,2)", 1)], SSS, &[("sgn", 1), ("refl", 1)]),
        (&[("G2[1]", 1)], &[], &[]),
        (&[("G2[-1]", 1)], &[], &[]),
        (&[("G2[theta]", 1)], &[], &[]),
        (&[("G2[theta^2]", 1)], &[], &[]),
    ];
    let entries = DATA
        .iter()
        .map(|(j0, j1, j2)| {
            Ok(vec![
                UniChar::from_terms(&g2, j0)?,
                UniChar::from_terms(&a1, j1)?,
                UniChar::from_terms(&a2, j2)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RestrictionTable {
        parahorics: vec![("J0", g2), ("J1", a1), ("J2", a2)],
        entries,
    })
}

/// Row labels of `R`: the elliptic bases of the three parahorics in order.
fn target_labels(table: &RestrictionTable) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (j, space) in &table.parahorics {
        for (l, _) in elliptic_basis(space)? {
            out.push(format!("{j}:{l}"));
        }
    }
    Ok(out)
}

/// The matrix of the elliptic restriction map: column `v_i` is the
/// concatenation over the parahorics of the elliptic coordinates of the
/// restrictions of `v_i`.
pub fn res_matrix() -> Result<CycMatrix> {
    let table = restriction_table()?;
    let rows = target_labels(&table)?;
    let mut columns = Vec::new();
    for v in &table.entries {
        let mut col = Vec::new();
        for ((_, space), r) in table.parahorics.iter().zip(v) {
            col.extend(elliptic_coordinates(space, r)?);
        }
        columns.push(col);
    }
    let n = rows.len();
    let entries = (0..n)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    CycMatrix::new(rows, v_names(), entries)
}

/// The finite-side elliptic Fourier transform: blocks for `G2`, `A1+A1~`, `A2`.
pub fn ft_u_el() -> Result<CycMatrix> {
    let table = restriction_table()?;
    let blocks = table
        .parahorics
        .iter()
        .map(|(_, s)| ft_elliptic(s))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&CycMatrix> = blocks.iter().collect();
    let labels = target_labels(&table)?;
    CycMatrix::block_diag(&refs).relabel(labels.clone(), labels)
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    /// `intertwines && printed_identity`.
    pub commutes: bool,
    /// `FT_el^T R = R FT_dual^T`: the two paths around the square agree as maps.
    pub intertwines: bool,
    /// `R^T FT_el R = FT_dual`.
    pub printed_identity: bool,
    /// `R FT_el R^T = FT_dual` with `R` read literally as printed.
    pub literal_printed_identity: bool,
    pub ft_el_blocks: Vec<usize>,
    pub ft_dual_blocks: Vec<usize>,
    pub ft_el: CycMatrix,
    pub ft_dual: CycMatrix,
    pub res: CycMatrix,
    pub lhs: CycMatrix,
    pub rhs: CycMatrix,
    pub residual: CycMatrix,
}

impl DiagramReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

/// Sizes of the diagonal blocks: maximal runs closed under nonzero entries.
fn block_sizes(m: &CycMatrix) -> Vec<usize> {
    let n = m.nrows();
    let mut sizes = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        let mut k = start;
        while k < end {
            for j in 0..n {
                if !m[(k, j)].is_zero() || !m[(j, k)].is_zero() {
                    end = end.max(j + 1);
                }
            }
            k += 1;
        }
        sizes.push(end - start);
        start = end;
    }
    sizes
}

/// Check the square for given matrices.
pub fn verify(ft_el: &CycMatrix, ft_dual: &CycMatrix, res: &CycMatrix) -> Result<DiagramReport> {
    let lhs = ft_el.transpose().checked_mul(res)?;
    let rhs = res.checked_mul(&ft_dual.transpose())?;
    let residual = lhs.checked_sub(&rhs)?;
    let sandwich = res.transpose().checked_mul(ft_el)?.checked_mul(res)?;
    let literal = res.checked_mul(ft_el)?.checked_mul(&res.transpose());
    let intertwines = residual.is_zero();
    let printed_identity = sandwich.same_entries(ft_dual);
    Ok(DiagramReport {
        commutes: intertwines && printed_identity,
        intertwines,
        printed_identity,
        literal_printed_identity: literal.map_or(false, |l| l.same_entries(ft_dual)),
        ft_el_blocks: block_sizes(ft_el),
        ft_dual_blocks: block_sizes(ft_dual),
        ft_el: ft_el.clone(),
        ft_dual: ft_dual.clone(),
        res: res.clone(),
        lhs,
        rhs,
        residual,
    })
}

/// The commutativity check for `G2`.
pub fn verify_diagram() -> Result<DiagramReport> {
    verify(&ft_u_el()?, &dual_ft()?, &res_matrix()?)
}

/// A partition of an even number, parts weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeCPartition {
    parts: Vec<u64>,
}

impl TypeCPartition {
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::OutOfRange("partition parts must be positive".into()));
        }
        let total: u64 = parts.iter().sum();
        if total % 2 != 0 {
            return Err(Error::OddTotal(total));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(TypeCPartition { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    fn multiplicities(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl std::fmt::Display for TypeCPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "[{}]", s.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypeCClass {
    pub is_unipotent_class: bool,
    pub is_distinguished: bool,
    pub is_quasidistinguished: bool,
    pub in_u_el: bool,
}

/// Unipotent classes of `Sp(2n)`: odd parts have even multiplicity.
/// Distinguished: even distinct parts. Quasidistinguished: even parts of
/// multiplicity at most 2. Elliptic unipotent parts: even parts of
/// multiplicity at most 4.
pub fn classify_type_c_partition(p: &TypeCPartition) -> TypeCClass {
    let mult = p.multiplicities();
    let all_even = mult.iter().all(|(q, _)| q % 2 == 0);
    let max_mult = mult.iter().map(|(_, m)| *m).max().unwrap_or(0);
    TypeCClass {
        is_unipotent_class: mult.iter().all(|(q, m)| q % 2 == 0 || m % 2 == 0),
        is_distinguished: all_even && max_mult <= 1,
        is_quasidistinguished: all_even && max_mult <= 2,
        in_u_el: all_even && max_mult <= 4,
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `two_n` that label unipotent classes of `Sp(two_n)`, classified.
pub fn type_c_classes(two_n: u64) -> Result<Vec<(TypeCPartition, TypeCClass)>> {
    if two_n % 2 != 0 {
        return Err(Error::OddTotal(two_n));
    }
    partitions(two_n)
        .into_iter()
        .map(|p| {
            let p = TypeCPartition::new(p)?;
            let c = classify_type_c_partition(&p);
            Ok((p, c))
        })
        .filter(|r| r.as_ref().map_or(true, |(_, c)| c.is_unipotent_class))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Cyclotomic {
        Cyclotomic::from_frac(n, d)
    }

    fn rsqrt(n: u64) -> Cyclotomic {
        Cyclotomic::sqrt_int(n).inv().unwrap()
    }

    fn printed_res() -> Vec<Vec<Cyclotomic>> {
        let z = Cyclotomic::zero;
        let one = Cyclotomic::one;
        let s6 = rsqrt(6);
        let t6 = s6.scale(&crate::Rational::from_integer(2.into()));
        let s12 = rsqrt(12);
        let h3 = Cyclotomic::sqrt_int(3).scale(&crate::Rational::new(1.into(), 2.into()));
        let s3 = rsqrt(3);
        let n = |x: &Cyclotomic| -x.clone();
        vec![
            vec![s6.clone(), t6.clone(), n(&s6), z(), z(), z(), z(), z(), z()],
            vec![s6.clone(), z(), s6.clone(), t6, z(), z(), z(), z(), z()],
            vec![s12.clone(), n(&s12), n(&s12), z(), h3, z(), z(), z(), z()],
            vec![z(), z(), z(), z(), z(), one(), z(), z(), z()],
            vec![z(), z(), z(), z(), z(), z(), one(), z(), z()],
            vec![z(), z(), z(), z(), z(), z(), z(), one(), z()],
            vec![z(), z(), z(), z(), z(), z(), z(), z(), one()],
            vec![q(1, 2), q(-1, 2), q(-1, 2), z(), q(-1, 2), z(), z(), z(), z()],
            vec![s3.clone(), z(), s3.clone(), n(&s3), z(), z(), z(), z(), z()],
        ]
    }

    #[test]
    fn labels_and_parameters() {
        let kl: Vec<&str> = ds_labels().iter().skip(1).map(|d| d.kl).collect();
        let mut sorted = kl.clone();
        sorted.sort();
        let mut all: Vec<&str> = crate::fourier::S3_STANDARD_ORDER.to_vec();
        all.sort();
        assert_eq!(sorted, all);
        let sub = m_param_data("G2(a1)").unwrap();
        assert_eq!(sub.component_group.order(), 6);
        assert_eq!(sub.mset.len(), 8);
        assert_eq!(sub.labels.len(), 8);
        let reg = m_param_data("G2").unwrap();
        assert_eq!(reg.component_group.order(), 1);
        assert_eq!(reg.labels, [("v1".to_string(), "(1,1)".to_string())]);
        assert_eq!(m_param_data("E8").unwrap_err(), Error::UnknownClass("E8".into()));
    }

    #[test]
    fn dual_transform() {
        let d = dual_ft().unwrap();
        assert!(d[(0, 0)].is_one());
        assert!((1..9).all(|j| d[(0, j)].is_zero() && d[(j, 0)].is_zero()));
        assert_eq!(d[(1, 1)], q(1, 6));
        assert_eq!(d[(1, 5)], q(1, 6));
        assert!(d.is_real() && d.is_symmetric() && d.is_orthogonal());
        assert!(d.checked_mul(&d).unwrap().is_identity());
    }

    #[test]
    fn table_rows() {
        let t = restriction_table().unwrap();
        assert_eq!(t.get(0, 0).coord("phi(1,6)"), Some(&Cyclotomic::one()));
        assert_eq!(t.get(0, 1).coord("sgn0*sgn2"), Some(&Cyclotomic::one()));
        assert_eq!(t.get(0, 2).coord("sgn"), Some(&Cyclotomic::one()));
        assert!(t.get(7, 1).is_zero());
        for v in 5..9 {
            assert!(t.get(v, 1).is_zero() && t.get(v, 2).is_zero());
            assert_eq!(t.get(v, 0).coords().iter().filter(|c| c.is_one()).count(), 1);
        }
    }

    #[test]
    fn restriction_matrix_matches_print() {
        let r = res_matrix().unwrap();
        let p = printed_res();
        for i in 0..9 {
            for j in 0..9 {
                assert_eq!(r[(i, j)], p[i][j], "({i},{j})");
            }
        }
        assert!(r.transpose().checked_mul(&r).unwrap().is_identity());
    }

    #[test]
    fn column_norms_two_ways() {
        let t = restriction_table().unwrap();
        let r = res_matrix().unwrap();
        for (i, v) in t.entries.iter().enumerate() {
            let by_matrix: Cyclotomic = r.column(i).iter().map(|c| c * c).sum();
            let by_spaces: Cyclotomic = t
                .parahorics
                .iter()
                .zip(v)
                .map(|((_, s), x)| {
                    let p = crate::unipotent::elliptic_projection(s, x).unwrap();
                    p.pairing(&p).unwrap()
                })
                .sum();
            assert!(by_matrix.is_one() && by_spaces.is_one(), "v{}", i + 1);
        }
    }

    #[test]
    fn diagram_commutes() {
        let rep = verify_diagram().unwrap();
        assert!(rep.commutes && rep.intertwines && rep.printed_identity);
        assert!(rep.residual.is_zero());
        assert_eq!(rep.ft_el_blocks, [7, 1, 1]);
        assert_eq!(rep.ft_dual_blocks, [1, 8]);
        assert!(!rep.literal_printed_identity);
        assert!(rep.ft_el.is_symmetric() && rep.ft_el.is_orthogonal());
    }

    #[test]
    fn theta_swap_still_commutes() {
        let mut kl: Vec<&str> = ds_labels().iter().skip(1).map(|d| d.kl).collect();
        kl.swap(6, 7);
        let dual = dual_ft_with(&kl).unwrap();
        let r = res_matrix().unwrap();
        let mut perm: Vec<usize> = (0..9).collect();
        perm.swap(5, 6);
        let id: Vec<usize> = (0..9).collect();
        let r2 = r.permuted(&perm, &id);
        let rep = verify(&ft_u_el().unwrap(), &dual, &r2).unwrap();
        assert!(rep.commutes);
    }

    #[test]
    fn corruption_is_detected() {
        let t = ft_u_el().unwrap();
        let d = dual_ft().unwrap();
        let r = res_matrix().unwrap();
        let mut survives_intertwining = Vec::new();
        for i in 0..9 {
            for j in 0..9 {
                let mut bumped = r.clone();
                bumped[(i, j)] = &bumped[(i, j)] + &Cyclotomic::one();
                let rep = verify(&t, &d, &bumped).unwrap();
                assert!(!rep.commutes, "({i},{j})");
                if rep.intertwines {
                    survives_intertwining.push((i, j));
                }
                if !r[(i, j)].is_zero() {
                    let mut zeroed = r.clone();
                    zeroed[(i, j)] = Cyclotomic::zero();
                    assert!(!verify(&t, &d, &zeroed).unwrap().commutes, "zeroed ({i},{j})");
                }
            }
        }
        // Eigenvector directions shared by both transforms.
        assert_eq!(survives_intertwining, [(7, 0), (8, 0)]);
    }

    #[test]
    fn partition_examples() {
        let c = |v: Vec<u64>| classify_type_c_partition(&TypeCPartition::new(v).unwrap());
        let t = |a, b, cc, d| TypeCClass {
            is_unipotent_class: a,
            is_distinguished: b,
            is_quasidistinguished: cc,
            in_u_el: d,
        };
        assert_eq!(c(vec![4]), t(true, true, true, true));
        assert_eq!(c(vec![2, 1, 1]), t(true, false, false, false));
        assert_eq!(c(vec![2, 2, 2, 2]), t(true, false, false, true));
        assert_eq!(c(vec![2, 2]), t(true, false, true, true));
        assert_eq!(TypeCPartition::new(vec![2, 1]).unwrap_err(), Error::OddTotal(3));
        let four: Vec<String> = type_c_classes(4).unwrap().iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(four, ["[4]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }
}
