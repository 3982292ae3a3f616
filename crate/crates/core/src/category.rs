//! The interface every concrete model plugs into.
//!
//! A [`GsCategory`] is a strict symmetric monoidal category with a duplicator
//! and discharger on every object, an optional hom-set preorder, and a finite
//! list of fixture objects over which the law checkers quantify. Structure
//! lookups return `Option`: a `None` means the instance is not expressible in
//! the presentation (a truncated fixture table); checkers count such instances
//! as skipped rather than failing them.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};

pub trait GsCategory {
    type Obj: Clone + Eq + Ord + fmt::Debug + fmt::Display;
    type Mor: Clone + Eq + Ord + fmt::Debug + fmt::Display;

    fn name(&self) -> String;

    /// Objects the checkers quantify over. Models may produce further objects
    /// (tensor powers) as values during evaluation.
    fn objects(&self) -> Vec<Self::Obj>;

    fn unit(&self) -> Self::Obj;
    fn tensor_obj(&self, a: &Self::Obj, b: &Self::Obj) -> Option<Self::Obj>;

    fn mor_dom(&self, f: &Self::Mor) -> Self::Obj;
    fn mor_cod(&self, f: &Self::Mor) -> Self::Obj;

    fn identity(&self, a: &Self::Obj) -> Option<Self::Mor>;
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor>;
    fn symmetry(&self, a: &Self::Obj, b: &Self::Obj) -> Option<Self::Mor>;
    fn dup(&self, a: &Self::Obj) -> Option<Self::Mor>;
    fn discharge(&self, a: &Self::Obj) -> Option<Self::Mor>;

    fn has_order(&self) -> bool {
        false
    }

    /// Hom-set preorder; `None` when the category carries no order or the
    /// pair is not comparable in this presentation.
    fn leq(&self, _f: &Self::Mor, _g: &Self::Mor) -> Option<bool> {
        None
    }

    /// Cardinality of the hom-set when cheaply computable.
    fn hom_size(&self, a: &Self::Obj, b: &Self::Obj) -> Option<u128>;

    /// Materializes a hom-set in a deterministic order. Refuses with
    /// [`Error::Infeasible`] when the set exceeds `cap`; never truncates.
    fn hom(&self, a: &Self::Obj, b: &Self::Obj, cap: u64) -> Result<Vec<Self::Mor>>;
}

/// `f ≈ g`: both inequalities hold.
pub fn equiv<C: GsCategory>(cat: &C, f: &C::Mor, g: &C::Mor) -> Option<bool> {
    Some(cat.leq(f, g)? && cat.leq(g, f)?)
}

pub fn item<C: GsCategory>(cat: &C, name: &str, f: &C::Mor) -> String {
    format!(
        "{} : {} -> {} = {}",
        name,
        cat.mor_dom(f),
        cat.mor_cod(f),
        f
    )
}

/// Per-run hom-set cache; enumeration failures are remembered so a hom-set is
/// only attempted once.
pub(crate) struct Homs<'a, C: GsCategory> {
    cat: &'a C,
    cap: u64,
    map: BTreeMap<(C::Obj, C::Obj), Option<Rc<Vec<C::Mor>>>>,
    pub infeasible: u64,
}

impl<'a, C: GsCategory> Homs<'a, C> {
    pub fn new(cat: &'a C, cap: u64) -> Self {
        Homs {
            cat,
            cap,
            map: BTreeMap::new(),
            infeasible: 0,
        }
    }

    pub fn get(&mut self, a: &C::Obj, b: &C::Obj) -> Option<Rc<Vec<C::Mor>>> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.map.get(&key) {
            return v.clone();
        }
        let v = match self.cat.hom(a, b, self.cap) {
            Ok(ms) => Some(Rc::new(ms)),
            Err(_) => {
                self.infeasible += 1;
                None
            }
        };
        self.map.insert(key, v.clone());
        v
    }
}

/// Swaps or trivializes the hom-set order of a base category.
pub struct OrderOverride<'a, C> {
    pub base: &'a C,
    pub kind: OrderKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Reversed,
    Trivial,
}

impl<'a, C: GsCategory> OrderOverride<'a, C> {
    pub fn reversed(base: &'a C) -> Self {
        OrderOverride {
            base,
            kind: OrderKind::Reversed,
        }
    }

    pub fn trivial(base: &'a C) -> Self {
        OrderOverride {
            base,
            kind: OrderKind::Trivial,
        }
    }
}

impl<'a, C: GsCategory> GsCategory for OrderOverride<'a, C> {
    type Obj = C::Obj;
    type Mor = C::Mor;

    fn name(&self) -> String {
        match self.kind {
            OrderKind::Reversed => format!("{}[reversed order]", self.base.name()),
            OrderKind::Trivial => format!("{}[trivial order]", self.base.name()),
        }
    }

    fn objects(&self) -> Vec<Self::Obj> {
        self.base.objects()
    }
    fn unit(&self) -> Self::Obj {
        self.base.unit()
    }
    fn tensor_obj(&self, a: &Self::Obj, b: &Self::Obj) -> Option<Self::Obj> {
        self.base.tensor_obj(a, b)
    }
    fn mor_dom(&self, f: &Self::Mor) -> Self::Obj {
        self.base.mor_dom(f)
    }
    fn mor_cod(&self, f: &Self::Mor) -> Self::Obj {
        self.base.mor_cod(f)
    }
    fn identity(&self, a: &Self::Obj) -> Option<Self::Mor> {
        self.base.identity(a)
    }
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor> {
        self.base.compose(g, f)
    }
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor> {
        self.base.tensor_mor(f, g)
    }
    fn symmetry(&self, a: &Self::Obj, b: &Self::Obj) -> Option<Self::Mor> {
        self.base.symmetry(a, b)
    }
    fn dup(&self, a: &Self::Obj) -> Option<Self::Mor> {
        self.base.dup(a)
    }
    fn discharge(&self, a: &Self::Obj) -> Option<Self::Mor> {
        self.base.discharge(a)
    }
    fn has_order(&self) -> bool {
        true
    }
    fn leq(&self, f: &Self::Mor, g: &Self::Mor) -> Option<bool> {
        match self.kind {
            OrderKind::Reversed => self.base.leq(g, f),
            OrderKind::Trivial => Some(f == g),
        }
    }
    fn hom_size(&self, a: &Self::Obj, b: &Self::Obj) -> Option<u128> {
        self.base.hom_size(a, b)
    }
    fn hom(&self, a: &Self::Obj, b: &Self::Obj, cap: u64) -> Result<Vec<Self::Mor>> {
        self.base.hom(a, b, cap)
    }
}

/// Totality per the discharger equation: `!_B ∘ f = !_A`.
pub fn is_total<C: GsCategory>(cat: &C, f: &C::Mor) -> Result<bool> {
    let a = cat.mor_dom(f);
    let b = cat.mor_cod(f);
    let da = cat
        .discharge(&a)
        .ok_or_else(|| Error::MissingObject(format!("!_{}", a)))?;
    let db = cat
        .discharge(&b)
        .ok_or_else(|| Error::MissingObject(format!("!_{}", b)))?;
    let lhs = cat
        .compose(&db, f)
        .ok_or_else(|| Error::MissingObject("! ∘ f".into()))?;
    Ok(lhs == da)
}

/// Functionality per the duplicator equation: `∇_B ∘ f = (f ⊗ f) ∘ ∇_A`.
pub fn is_functional<C: GsCategory>(cat: &C, f: &C::Mor) -> Result<bool> {
    let (lhs, rhs) = functional_sides(cat, f)?;
    Ok(lhs == rhs)
}

pub(crate) fn functional_sides<C: GsCategory>(cat: &C, f: &C::Mor) -> Result<(C::Mor, C::Mor)> {
    let a = cat.mor_dom(f);
    let b = cat.mor_cod(f);
    let dup_a = cat
        .dup(&a)
        .ok_or_else(|| Error::MissingObject(format!("∇_{}", a)))?;
    let dup_b = cat
        .dup(&b)
        .ok_or_else(|| Error::MissingObject(format!("∇_{}", b)))?;
    let ff = cat
        .tensor_mor(f, f)
        .ok_or_else(|| Error::MissingObject("f ⊗ f".into()))?;
    let lhs = cat
        .compose(&dup_b, f)
        .ok_or_else(|| Error::MissingObject("∇ ∘ f".into()))?;
    let rhs = cat
        .compose(&ff, &dup_a)
        .ok_or_else(|| Error::MissingObject("(f⊗f) ∘ ∇".into()))?;
    Ok((lhs, rhs))
}

/// Weak totality: the discharger equation up to preorder equivalence.
pub fn is_weakly_total<C: GsCategory>(cat: &C, f: &C::Mor) -> Result<bool> {
    if !cat.has_order() {
        return Err(Error::MissingPreorder);
    }
    let a = cat.mor_dom(f);
    let b = cat.mor_cod(f);
    let da = cat
        .discharge(&a)
        .ok_or_else(|| Error::MissingObject(format!("!_{}", a)))?;
    let db = cat
        .discharge(&b)
        .ok_or_else(|| Error::MissingObject(format!("!_{}", b)))?;
    let lhs = cat
        .compose(&db, f)
        .ok_or_else(|| Error::MissingObject("! ∘ f".into()))?;
    equiv(cat, &lhs, &da).ok_or(Error::MissingPreorder)
}

/// Weak functionality: the duplicator equation up to preorder equivalence.
pub fn is_weakly_functional<C: GsCategory>(cat: &C, f: &C::Mor) -> Result<bool> {
    if !cat.has_order() {
        return Err(Error::MissingPreorder);
    }
    let (lhs, rhs) = functional_sides(cat, f)?;
    equiv(cat, &lhs, &rhs).ok_or(Error::MissingPreorder)
}

/// The domain of `f : A -> B`: the composite `(id_A ⊗ !_B f) ∘ ∇_A : A -> A`.
pub fn dom_morphism<C: GsCategory>(cat: &C, f: &C::Mor) -> Result<C::Mor> {
    let a = cat.mor_dom(f);
    let b = cat.mor_cod(f);
    let dup_a = cat
        .dup(&a)
        .ok_or_else(|| Error::MissingObject(format!("{} ⊗ {}", a, a)))?;
    let id_a = cat
        .identity(&a)
        .ok_or_else(|| Error::MissingObject(format!("id_{}", a)))?;
    let db = cat
        .discharge(&b)
        .ok_or_else(|| Error::MissingObject(format!("!_{}", b)))?;
    let bang_f = cat
        .compose(&db, f)
        .ok_or_else(|| Error::MissingObject("! ∘ f".into()))?;
    let pair = cat
        .tensor_mor(&id_a, &bang_f)
        .ok_or_else(|| Error::MissingObject("id ⊗ !f".into()))?;
    cat.compose(&pair, &dup_a)
        .ok_or_else(|| Error::MissingObject("(id ⊗ !f) ∘ ∇".into()))
}
