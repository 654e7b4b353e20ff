//! Finite groups stored by full multiplication table.
//!
//! Element ids are assigned in breadth-first order from the identity over
//! the generators, so id 0 is always the identity and each element carries
//! a shortest word in the generators. Conjugacy classes are ordered by
//! size, then by smallest element id.

mod builtin;
mod chartab;
mod classfn;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};

pub use builtin::BuiltinTable;
pub use chartab::{builtin_character_table, character_table, CharacterTable};
pub use classfn::ClassFunction;

/// Largest group order accepted by the constructors and the character table.
pub const MAX_ORDER: usize = 2000;

pub type ElementId = u32;

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyClass {
    pub name: String,
    pub representative: ElementId,
    pub size: usize,
    #[serde(skip)]
    pub elements: Vec<ElementId>,
}

pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<ElementId>,
    inverse: Vec<ElementId>,
    generators: Vec<(String, ElementId)>,
    words: Vec<Vec<u16>>,
    element_order: Vec<u32>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    builtin: Option<BuiltinTable>,
    irr: OnceLock<Arc<Vec<Vec<crate::Cyclotomic>>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl FiniteGroup {
    /// Close `generators` under `mul` starting from `identity`.
    pub fn from_generators<T, F>(
        name: &str,
        identity: T,
        generators: Vec<(String, T)>,
        mul: F,
    ) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, ElementId> = HashMap::from([(identity, 0)]);
        let mut words: Vec<Vec<u16>> = vec![Vec::new()];
        let mut head = 0;
        while head < elems.len() {
            for (gi, (_, g)) in generators.iter().enumerate() {
                let y = mul(&elems[head], g);
                if !index.contains_key(&y) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::TooLarge {
                            order: elems.len() + 1,
                            limit: MAX_ORDER,
                        });
                    }
                    let mut w = words[head].clone();
                    w.push(gi as u16);
                    index.insert(y.clone(), elems.len() as ElementId);
                    elems.push(y);
                    words.push(w);
                }
            }
            head += 1;
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&mul(&elems[a], &elems[b])];
            }
        }
        let gens = generators
            .iter()
            .map(|(nm, g)| (nm.clone(), index[g]))
            .collect();
        Ok(Self::from_table(name, table, gens, words))
    }

    fn from_table(
        name: &str,
        table: Vec<ElementId>,
        generators: Vec<(String, ElementId)>,
        words: Vec<Vec<u16>>,
    ) -> Self {
        let n = words.len();
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a * n + b] == 0)
                .expect("every element has an inverse") as ElementId;
        }
        let mut element_order = vec![0u32; n];
        for a in 0..n {
            let mut x = a as ElementId;
            let mut k = 1;
            while x != 0 {
                x = table[x as usize * n + a];
                k += 1;
            }
            element_order[a] = k;
        }
        let mut g = FiniteGroup {
            name: name.to_string(),
            order: n,
            table,
            inverse,
            generators,
            words,
            element_order,
            classes: Vec::new(),
            class_of: Vec::new(),
            builtin: None,
            irr: OnceLock::new(),
        };
        g.compute_classes();
        g
    }

    fn compute_classes(&mut self) {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut raw: Vec<Vec<ElementId>> = Vec::new();
        for x in 0..n as ElementId {
            if class_of[x as usize] != usize::MAX {
                continue;
            }
            let mut orbit: Vec<ElementId> = (0..n as ElementId)
                .map(|g| self.mul(self.mul(g, x), self.inverse[g as usize]))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                class_of[y as usize] = raw.len();
            }
            raw.push(orbit);
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&c| (raw[c].len(), raw[c][0]));
        let abelian = raw.len() == n;
        let mut classes: Vec<ConjugacyClass> = order
            .iter()
            .map(|&c| ConjugacyClass {
                name: String::new(),
                representative: raw[c][0],
                size: raw[c].len(),
                elements: raw[c].clone(),
            })
            .collect();
        for (new, cls) in classes.iter().enumerate() {
            for &y in &cls.elements {
                class_of[y as usize] = new;
            }
        }
        // Abelian groups: name classes by their element's word; otherwise by element order.
        if abelian {
            for cls in classes.iter_mut() {
                cls.name = self.word_string(cls.representative);
            }
        } else {
            let mut by_order: HashMap<u32, usize> = HashMap::new();
            for cls in &classes {
                *by_order
                    .entry(self.element_order[cls.representative as usize])
                    .or_default() += 1;
            }
            let mut seen: HashMap<u32, usize> = HashMap::new();
            for cls in classes.iter_mut() {
                let o = self.element_order[cls.representative as usize];
                let k = seen.entry(o).or_default();
                cls.name = match (o, by_order[&o]) {
                    (1, _) => "1".to_string(),
                    (_, 1) => format!("g{o}"),
                    _ => format!("g{o}{}", (b'a' + *k as u8) as char),
                };
                *k += 1;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    /// Rename the classes containing the given words. Unlisted classes keep their names.
    pub(crate) fn name_classes_by_words(&mut self, names: &[(&str, &[&str])]) -> Result<()> {
        for (name, word) in names {
            let x = self.element_from_word(word)?;
            let c = self.class_of[x as usize];
            self.classes[c].name = name.to_string();
        }
        Ok(())
    }

    pub(crate) fn attach_builtin(&mut self, table: BuiltinTable) {
        self.builtin = Some(table);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        0..self.order as ElementId
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inverse[a as usize]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conjugate(&self, g: ElementId, x: ElementId) -> ElementId {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: ElementId, k: u32) -> ElementId {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: ElementId) -> u32 {
        self.element_order[a as usize]
    }

    pub fn exponent(&self) -> u64 {
        self.element_order
            .iter()
            .fold(1u64, |e, &o| crate::arith::lcm(e, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order
    }

    pub fn generators(&self) -> &[(String, ElementId)] {
        &self.generators
    }

    pub fn check_element(&self, a: ElementId) -> Result<()> {
        if (a as usize) < self.order {
            Ok(())
        } else {
            Err(Error::InvalidElement(a as usize))
        }
    }

    pub fn element_from_word(&self, word: &[&str]) -> Result<ElementId> {
        word.iter().try_fold(0, |acc, g| {
            let (_, id) = self
                .generators
                .iter()
                .find(|(n, _)| n == g)
                .ok_or_else(|| Error::OutOfRange(format!("unknown generator `{g}`")))?;
            Ok(self.mul(acc, *id))
        })
    }

    /// Shortest word as generator names, runs collapsed (`g^3`); identity is `1`.
    pub fn word_string(&self, a: ElementId) -> String {
        let w = &self.words[a as usize];
        if w.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            out.push_str(&self.generators[w[i] as usize].0);
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: ElementId) -> usize {
        self.class_of[a as usize]
    }

    pub fn class_index_by_name(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    pub fn builtin_table(&self) -> Option<&BuiltinTable> {
        self.builtin.as_ref()
    }

    /// Spot-check associativity on `samples` pseudo-random triples plus the
    /// identity and inverse laws on every element.
    pub fn check_axioms(&self, samples: usize) -> bool {
        let n = self.order as u64;
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % n) as ElementId
        };
        let assoc = (0..samples).all(|_| {
            let (a, b, c) = (next(), next(), next());
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        });
        assoc
            && self.elements().all(|a| {
                self.mul(0, a) == a
                    && self.mul(a, 0) == a
                    && self.mul(a, self.inv(a)) == 0
                    && self.mul(self.inv(a), a) == 0
            })
    }
}

/// A subgroup together with its embedding into the parent.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    group: Arc<FiniteGroup>,
    embedding: Vec<ElementId>,
    to_sub: HashMap<ElementId, ElementId>,
}

impl Subgroup {
    /// The subgroup generated by the given parent elements.
    pub fn generated_by(parent: &Arc<FiniteGroup>, gens: &[ElementId]) -> Result<Self> {
        for &g in gens {
            parent.check_element(g)?;
        }
        let named = gens
            .iter()
            .map(|&g| (parent.word_string(g), g))
            .collect();
        let p = Arc::clone(parent);
        let group = FiniteGroup::from_generators(
            &format!("<{}>", gens.iter().map(|&g| parent.word_string(g)).collect::<Vec<_>>().join(",")),
            0,
            named,
            move |a, b| p.mul(*a, *b),
        )?;
        Self::wrap(parent, group, gens)
    }

    /// The subgroup whose elements are exactly `elements`; fails if the set is not closed.
    pub fn from_elements(parent: &Arc<FiniteGroup>, elements: &[ElementId]) -> Result<Self> {
        let mut set: Vec<ElementId> = elements.to_vec();
        set.sort_unstable();
        set.dedup();
        for &g in &set {
            parent.check_element(g)?;
        }
        // Greedy generating set: add the smallest element not yet reached.
        let mut gens = Vec::new();
        let mut reached = vec![0 as ElementId];
        for &g in &set {
            if reached.binary_search(&g).is_err() {
                gens.push(g);
                reached = Self::generated_by(parent, &gens)?.embedding.clone();
                reached.sort_unstable();
            }
        }
        let sub = Self::generated_by(parent, &gens)?;
        let mut got = sub.embedding.clone();
        got.sort_unstable();
        if got != set {
            return Err(Error::SubgroupMismatch);
        }
        Ok(sub)
    }

    fn wrap(parent: &Arc<FiniteGroup>, group: FiniteGroup, gens: &[ElementId]) -> Result<Self> {
        // BFS ids of the subgroup map to parent ids by replaying words.
        let embedding: Vec<ElementId> = (0..group.order as ElementId)
            .map(|a| {
                group.words[a as usize]
                    .iter()
                    .fold(0, |acc, &gi| parent.mul(acc, gens[gi as usize]))
            })
            .collect();
        let to_sub = embedding
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i as ElementId))
            .collect();
        Ok(Subgroup {
            parent: Arc::clone(parent),
            group: Arc::new(group),
            embedding,
            to_sub,
        })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order
    }

    /// Parent id of a subgroup element.
    pub fn embed(&self, a: ElementId) -> ElementId {
        self.embedding[a as usize]
    }

    /// Subgroup id of a parent element, if it lies in the subgroup.
    pub fn locate(&self, parent_elem: ElementId) -> Option<ElementId> {
        self.to_sub.get(&parent_elem).copied()
    }

    pub fn contains(&self, parent_elem: ElementId) -> bool {
        self.to_sub.contains_key(&parent_elem)
    }

    pub fn is_homomorphism(&self) -> bool {
        let g = &self.group;
        g.elements().all(|a| {
            g.elements()
                .all(|b| self.embed(g.mul(a, b)) == self.parent.mul(self.embed(a), self.embed(b)))
        })
    }
}

/// `Z_G(x)`.
pub fn centralizer(g: &Arc<FiniteGroup>, x: ElementId) -> Result<Subgroup> {
    g.check_element(x)?;
    let elems: Vec<ElementId> = g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).collect();
    Subgroup::from_elements(g, &elems)
}

pub fn make_trivial() -> Arc<FiniteGroup> {
    Arc::new(
        FiniteGroup::from_generators("1", 0u8, vec![], |_, _| 0u8).expect("trivial group"),
    )
}

/// Cyclic group of order `n` with generator named `gen`.
pub fn make_cyclic_named(n: usize, gen: &str) -> Result<Arc<FiniteGroup>> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::OutOfRange(format!("cyclic group order {n}")));
    }
    let gens = if n == 1 { vec![] } else { vec![(gen.to_string(), 1usize)] };
    let mut g = FiniteGroup::from_generators(&format!("Z{n}"), 0usize, gens, move |a, b| (a + b) % n)?;
    if n == 2 {
        g.attach_builtin(builtin::cyclic2(gen));
    } else if n == 3 {
        g.attach_builtin(builtin::cyclic3(gen));
    }
    Ok(Arc::new(g))
}

pub fn make_cyclic(n: usize) -> Result<Arc<FiniteGroup>> {
    make_cyclic_named(n, "g")
}

/// `S_n` on `n <= 6` points, generated by the adjacent transpositions `s1 .. s(n-1)`.
pub fn make_symmetric(n: usize) -> Result<Arc<FiniteGroup>> {
    if !(1..=6).contains(&n) {
        return Err(Error::OutOfRange(format!("symmetric group degree {n} (need 1..=6)")));
    }
    let id: Vec<u8> = (0..n as u8).collect();
    let gens = (1..n)
        .map(|i| {
            let mut p = id.clone();
            p.swap(i - 1, i);
            (format!("s{i}"), p)
        })
        .collect();
    // (a * b)(i) = a(b(i)): apply b first.
    let mut g = FiniteGroup::from_generators(&format!("S{n}"), id, gens, |a: &Vec<u8>, b: &Vec<u8>| {
        b.iter().map(|&i| a[i as usize]).collect()
    })?;
    if n == 3 {
        g.attach_builtin(builtin::symmetric3());
    }
    Ok(Arc::new(g))
}

/// Dihedral group of order `order = 2m`, generated by the reflections `s1 = (0, flip)`
/// and `s2 = (1, flip)` whose product is a rotation of order `m`.
pub fn make_dihedral(order: usize) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(dihedral(order)?))
}

pub(crate) fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || order % 2 != 0 || order > MAX_ORDER {
        return Err(Error::OutOfRange(format!("dihedral group order {order}")));
    }
    let m = (order / 2) as i64;
    let mul = move |a: &(i64, bool), b: &(i64, bool)| {
        let k = if a.1 { a.0 - b.0 } else { a.0 + b.0 };
        (k.rem_euclid(m), a.1 ^ b.1)
    };
    let gens = vec![
        ("s1".to_string(), (0, true)),
        ("s2".to_string(), (1 % m, true)),
    ];
    FiniteGroup::from_generators(&format!("D{order}"), (0, false), gens, mul)
}

/// Direct product; generators of both factors are kept under their names.
pub fn make_product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(product(a, b)?))
}

pub(crate) fn product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<FiniteGroup> {
    if a.order() * b.order() > MAX_ORDER {
        return Err(Error::TooLarge {
            order: a.order() * b.order(),
            limit: MAX_ORDER,
        });
    }
    let gens = a
        .generators()
        .iter()
        .map(|(n, g)| (n.clone(), (*g, 0)))
        .chain(b.generators().iter().map(|(n, h)| (n.clone(), (0, *h))))
        .collect();
    let (a2, b2) = (Arc::clone(a), Arc::clone(b));
    FiniteGroup::from_generators(
        &format!("{}x{}", a.name(), b.name()),
        (0 as ElementId, 0 as ElementId),
        gens,
        move |x, y| (a2.mul(x.0, y.0), b2.mul(x.1, y.1)),
    )
}

/// `W(G2)`, dihedral of order 12 with `s1` the long and `s2` the short simple
/// reflection. Classes are named `1, s1, s2, c, c^2, c^3` with `c = s1 s2`.
pub fn make_weyl_g2() -> Arc<FiniteGroup> {
    let mut g = dihedral(12).expect("order 12");
    g.name = "W(G2)".into();
    g.name_classes_by_words(&[
        ("1", &[]),
        ("s1", &["s1"]),
        ("s2", &["s2"]),
        ("c", &["s1", "s2"]),
        ("c^2", &["s1", "s2", "s1", "s2"]),
        ("c^3", &["s1", "s2", "s1", "s2", "s1", "s2"]),
    ])
    .expect("G2 words");
    g.attach_builtin(builtin::weyl_g2());
    Arc::new(g)
}

/// `W(A1)`: order 2 with generator `s`.
pub fn make_weyl_a1() -> Arc<FiniteGroup> {
    make_cyclic_named(2, "s").expect("order 2")
}

/// `W(A1) x W(A1)` with generators `s0`, `s2` (the affine and short simple reflections of `G2`).
pub fn make_weyl_a1xa1() -> Arc<FiniteGroup> {
    let a = make_cyclic_named(2, "s0").expect("order 2");
    let b = make_cyclic_named(2, "s2").expect("order 2");
    let mut g = product(&a, &b).expect("order 4");
    g.name = "W(A1xA1)".into();
    g.attach_builtin(builtin::weyl_a1xa1());
    Arc::new(g)
}

/// `W(A2) = S3` with Coxeter generators `s1`, `s2`.
pub fn make_weyl_a2() -> Arc<FiniteGroup> {
    make_symmetric(3).expect("S3")
}
