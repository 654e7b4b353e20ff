//! Verified character tables shipped as data. Columns are keyed by words in
//! the group's generators so they bind to whatever class order the group has.

use super::FiniteGroup;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct BuiltinTable {
    columns: Vec<Vec<String>>,
    rows: Vec<(String, Vec<Cyclotomic>)>,
}

impl BuiltinTable {
    fn new(columns: &[&[&str]], rows: Vec<(&str, Vec<Cyclotomic>)>) -> Self {
        BuiltinTable {
            columns: columns
                .iter()
                .map(|w| w.iter().map(|s| s.to_string()).collect())
                .collect(),
            rows: rows.into_iter().map(|(n, v)| (n.to_string(), v)).collect(),
        }
    }

    /// Rows with values permuted into `group`'s canonical class order.
    pub fn rows_in_class_order(&self, group: &FiniteGroup) -> Result<Vec<(String, Vec<Cyclotomic>)>> {
        let mut perm = vec![usize::MAX; group.num_classes()];
        for (j, word) in self.columns.iter().enumerate() {
            let w: Vec<&str> = word.iter().map(String::as_str).collect();
            let c = group.class_of(group.element_from_word(&w)?);
            perm[c] = j;
        }
        if perm.contains(&usize::MAX) || self.columns.len() != group.num_classes() {
            return Err(Error::CharacterTable(format!(
                "built-in table columns do not cover the classes of {}",
                group.name()
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|(n, v)| (n.clone(), perm.iter().map(|&j| v[j].clone()).collect()))
            .collect())
    }
}

fn ints(v: &[i64]) -> Vec<Cyclotomic> {
    v.iter().map(|&x| Cyclotomic::from_int(x)).collect()
}

/// Character table of `W(G2)`, columns `1, s1, s2, s1s2, (s1s2)^2, (s1s2)^3`.
pub(crate) fn weyl_g2() -> BuiltinTable {
    BuiltinTable::new(
        &[
            &[],
            &["s1"],
            &["s2"],
            &["s1", "s2"],
            &["s1", "s2", "s1", "s2"],
            &["s1", "s2", "s1", "s2", "s1", "s2"],
        ],
        vec![
            ("phi(1,0)", ints(&[1, 1, 1, 1, 1, 1])),
            ("phi'(1,3)", ints(&[1, -1, 1, -1, 1, -1])),
            ("phi''(1,3)", ints(&[1, 1, -1, -1, 1, -1])),
            ("phi(1,6)", ints(&[1, -1, -1, 1, 1, 1])),
            ("phi(2,1)", ints(&[2, 0, 0, 1, -1, -2])),
            ("phi(2,2)", ints(&[2, 0, 0, -1, -1, 2])),
        ],
    )
}

pub(crate) fn symmetric3() -> BuiltinTable {
    BuiltinTable::new(
        &[&[], &["s1"], &["s1", "s2"]],
        vec![
            ("triv", ints(&[1, 1, 1])),
            ("sgn", ints(&[1, -1, 1])),
            ("refl", ints(&[2, 0, -1])),
        ],
    )
}

pub(crate) fn cyclic2(gen: &str) -> BuiltinTable {
    BuiltinTable::new(
        &[&[], &[gen]],
        vec![("triv", ints(&[1, 1])), ("sgn", ints(&[1, -1]))],
    )
}

pub(crate) fn cyclic3(gen: &str) -> BuiltinTable {
    let t = Cyclotomic::root_of_unity(3, 1);
    let t2 = Cyclotomic::root_of_unity(3, 2);
    BuiltinTable::new(
        &[&[], &[gen], &[gen, gen]],
        vec![
            ("1", ints(&[1, 1, 1])),
            ("theta", vec![Cyclotomic::one(), t.clone(), t2.clone()]),
            ("theta^2", vec![Cyclotomic::one(), t2, t]),
        ],
    )
}

/// `W(A1) x W(A1)` with generators `s0`, `s2`.
pub(crate) fn weyl_a1xa1() -> BuiltinTable {
    BuiltinTable::new(
        &[&[], &["s0"], &["s2"], &["s0", "s2"]],
        vec![
            ("triv0*triv2", ints(&[1, 1, 1, 1])),
            ("sgn0*triv2", ints(&[1, -1, 1, -1])),
            ("triv0*sgn2", ints(&[1, 1, -1, -1])),
            ("sgn0*sgn2", ints(&[1, -1, -1, 1])),
        ],
    )
}
