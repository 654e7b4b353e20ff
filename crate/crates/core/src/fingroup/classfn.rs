use std::sync::Arc;

use super::{ElementId, FiniteGroup, Subgroup};
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};

/// A class function, one value per conjugacy class in the group's canonical class order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: &Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(Error::Dimension(format!(
                "{} values for {} classes",
                values.len(),
                group.num_classes()
            )));
        }
        Ok(ClassFunction {
            group: Arc::clone(group),
            values,
        })
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Self::constant(group, Cyclotomic::zero())
    }

    pub fn constant(group: &Arc<FiniteGroup>, c: Cyclotomic) -> Self {
        ClassFunction {
            group: Arc::clone(group),
            values: vec![c; group.num_classes()],
        }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Self::constant(group, Cyclotomic::one())
    }

    /// Indicator function of one class.
    pub fn indicator(group: &Arc<FiniteGroup>, class: usize) -> Self {
        let mut f = Self::zero(group);
        f.values[class] = Cyclotomic::one();
        f
    }

    /// Class function `g -> f(g)`; `f` is evaluated once per class on its representative.
    pub fn from_fn(group: &Arc<FiniteGroup>, f: impl Fn(ElementId) -> Cyclotomic) -> Self {
        let values = group.classes().iter().map(|c| f(c.representative)).collect();
        ClassFunction {
            group: Arc::clone(group),
            values,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value_at_class(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn value_at(&self, g: ElementId) -> &Cyclotomic {
        &self.values[self.group.class_of(g)]
    }

    pub fn degree(&self) -> &Cyclotomic {
        self.value_at(self.group.identity())
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// `(1/|G|) sum_g self(g) conj(other(g))`.
    pub fn pairing(&self, other: &Self) -> Result<Cyclotomic> {
        self.same_group(other)?;
        let total: Cyclotomic = self
            .group
            .classes()
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .filter(|(_, (a, b))| !a.is_zero() && !b.is_zero())
            .map(|(cls, (a, b))| (a * &b.conj()).scale(&Rational::from_integer(cls.size.into())))
            .sum();
        Ok(total.scale(&Rational::new(1.into(), self.group.order().into())))
    }

    /// Pointwise product (character of the tensor product).
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(self.zip_with(other, |a, b| a * b))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        ClassFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        ClassFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Self {
        ClassFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    /// Restriction to a subgroup of this function's group.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Self> {
        if !Arc::ptr_eq(sub.parent(), &self.group) {
            return Err(Error::SubgroupMismatch);
        }
        Ok(ClassFunction::from_fn(sub.group(), |h| {
            self.value_at(sub.embed(h)).clone()
        }))
    }

    /// Induction from `sub` (this function must live on `sub.group()`) to the parent:
    /// `Ind(psi)(g) = (1/|H|) sum_{x in G, x g x^-1 in H} psi(x g x^-1)`.
    pub fn induce(&self, sub: &Subgroup) -> Result<Self> {
        if !Arc::ptr_eq(sub.group(), &self.group) {
            return Err(Error::SubgroupMismatch);
        }
        let parent = sub.parent();
        let inv_h = Rational::new(1.into(), sub.order().into());
        Ok(ClassFunction::from_fn(parent, |g| {
            parent
                .elements()
                .filter_map(|x| sub.locate(parent.conjugate(x, g)))
                .map(|h| self.value_at(h).clone())
                .sum::<Cyclotomic>()
                .scale(&inv_h)
        }))
    }
}
