//! Literal table-backed presentations and their JSON fixture format.
//!
//! A [`TableCategory`] stores every structure map as an explicit finite table
//! over string identifiers. It is the exchange format understood by all CLI
//! subcommands, and any sufficiently small model can be materialized into one
//! (which is also how the fault-injection tests corrupt single entries).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::category::GsCategory;
use crate::error::{Error, Result};
use crate::report::CheckConfig;

/// Interned identifier; displayed by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(pub String);

impl std::fmt::Display for Name {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct TableCategory {
    pub name: String,
    pub objects: Vec<Name>,
    pub unit: Name,
    pub tensor_obj: BTreeMap<(Name, Name), Name>,
    /// morphism id -> (dom, cod)
    pub morphisms: BTreeMap<Name, (Name, Name)>,
    pub compose: BTreeMap<(Name, Name), Name>,
    pub identity: BTreeMap<Name, Name>,
    pub tensor_mor: BTreeMap<(Name, Name), Name>,
    pub symmetry: BTreeMap<(Name, Name), Name>,
    pub dup: BTreeMap<Name, Name>,
    pub discharge: BTreeMap<Name, Name>,
    /// reflexive-transitive closure is applied on construction
    pub leq: Option<BTreeSet<(Name, Name)>>,
}

impl TableCategory {
    /// Structural validation: every referenced identifier exists and agrees in
    /// type. Violations are `MalformedPresentation`.
    pub fn validate(&self) -> Result<()> {
        let objs: BTreeSet<&Name> = self.objects.iter().collect();
        let err = |msg: String| Err(Error::MalformedPresentation(msg));
        if !objs.contains(&self.unit) {
            return err(format!("unit {} not among objects", self.unit));
        }
        for ((a, b), c) in &self.tensor_obj {
            if !objs.contains(a) || !objs.contains(b) || !objs.contains(c) {
                return err(format!("tensor_obj ({}, {}) -> {} uses unknown objects", a, b, c));
            }
        }
        for (m, (d, c)) in &self.morphisms {
            if !objs.contains(d) || !objs.contains(c) {
                return err(format!("morphism {} has unknown dom/cod", m));
            }
        }
        let typ = |m: &Name| -> Result<&(Name, Name)> {
            self.morphisms
                .get(m)
                .ok_or_else(|| Error::MalformedPresentation(format!("unknown morphism {}", m)))
        };
        for ((g, f), h) in &self.compose {
            let (fd, fc) = typ(f)?;
            let (gd, gc) = typ(g)?;
            let (hd, hc) = typ(h)?;
            if fc != gd || hd != fd || hc != gc {
                return err(format!("compose entry ({} ∘ {}) = {} is ill-typed", g, f, h));
            }
        }
        for (a, m) in &self.identity {
            let (d, c) = typ(m)?;
            if d != a || c != a {
                return err(format!("identity of {} is ill-typed", a));
            }
        }
        for ((f, g), h) in &self.tensor_mor {
            let (fd, fc) = typ(f)?;
            let (gd, gc) = typ(g)?;
            let (hd, hc) = typ(h)?;
            let dd = self.tensor_obj.get(&(fd.clone(), gd.clone()));
            let cc = self.tensor_obj.get(&(fc.clone(), gc.clone()));
            if dd != Some(hd) || cc != Some(hc) {
                return err(format!("tensor entry ({} ⊗ {}) = {} is ill-typed", f, g, h));
            }
        }
        for ((a, b), m) in &self.symmetry {
            let (d, c) = typ(m)?;
            let ab = self.tensor_obj.get(&(a.clone(), b.clone()));
            let ba = self.tensor_obj.get(&(b.clone(), a.clone()));
            if ab != Some(d) || ba != Some(c) {
                return err(format!("symmetry ({}, {}) = {} is ill-typed", a, b, m));
            }
        }
        for (a, m) in &self.dup {
            let (d, c) = typ(m)?;
            let aa = self.tensor_obj.get(&(a.clone(), a.clone()));
            if d != a || aa != Some(c) {
                return err(format!("dup of {} is ill-typed", a));
            }
        }
        for (a, m) in &self.discharge {
            let (d, c) = typ(m)?;
            if d != a || *c != self.unit {
                return err(format!("discharge of {} is ill-typed", a));
            }
        }
        if let Some(leq) = &self.leq {
            for (f, g) in leq {
                let (fd, fc) = typ(f)?;
                let (gd, gc) = typ(g)?;
                if fd != gd || fc != gc {
                    return err(format!("leq pair ({}, {}) is not parallel", f, g));
                }
            }
        }
        Ok(())
    }

    /// Reflexive-transitive closure of `leq`, in place.
    pub fn close_order(&mut self) {
        let Some(leq) = &mut self.leq else { return };
        for m in self.morphisms.keys() {
            leq.insert((m.clone(), m.clone()));
        }
        loop {
            let mut added = Vec::new();
            for (f, g) in leq.iter() {
                for (g2, h) in leq.iter() {
                    if g == g2 && !leq.contains(&(f.clone(), h.clone())) {
                        added.push((f.clone(), h.clone()));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            leq.extend(added);
        }
    }

    /// Materializes any small category into a literal table presentation.
    /// Morphism names are `h<dom>_<cod>_<index>` in hom enumeration order.
    pub fn materialize<C: GsCategory>(cat: &C, cfg: &CheckConfig) -> Result<TableCategory> {
        let objs = cat.objects();
        let obj_name = |o: &C::Obj| Name(format!("{}", o));
        let mut homs: BTreeMap<(C::Obj, C::Obj), Vec<C::Mor>> = BTreeMap::new();
        let mut total = 0u64;
        for a in &objs {
            for b in &objs {
                let ms = cat.hom(a, b, cfg.hom_cap)?;
                total += ms.len() as u64;
                if total > cfg.hom_cap {
                    return Err(Error::Infeasible(format!(
                        "materialization needs more than {} morphisms",
                        cfg.hom_cap
                    )));
                }
                homs.insert((a.clone(), b.clone()), ms);
            }
        }
        let mut mor_names: BTreeMap<C::Mor, Name> = BTreeMap::new();
        let mut morphisms = BTreeMap::new();
        for ((a, b), ms) in &homs {
            for (i, m) in ms.iter().enumerate() {
                let n = Name(format!("h{}_{}_{}", a, b, i));
                mor_names.insert(m.clone(), n.clone());
                morphisms.insert(n, (obj_name(a), obj_name(b)));
            }
        }
        let known = |m: &C::Mor| mor_names.get(m).cloned();

        let mut tensor_obj = BTreeMap::new();
        for a in &objs {
            for b in &objs {
                if let Some(c) = cat.tensor_obj(a, b) {
                    if objs.contains(&c) {
                        tensor_obj.insert((obj_name(a), obj_name(b)), obj_name(&c));
                    }
                }
            }
        }

        let mut compose = BTreeMap::new();
        let mut tensor_mor = BTreeMap::new();
        for ((_a, b), fs) in &homs {
            for ((b2, _c), gs) in &homs {
                if b == b2 {
                    for f in fs {
                        for g in gs {
                            if let Some(gf) = cat.compose(g, f) {
                                if let (Some(nf), Some(ng), Some(ngf)) =
                                    (known(f), known(g), known(&gf))
                                {
                                    compose.insert((ng, nf), ngf);
                                }
                            }
                        }
                    }
                }
                for f in fs {
                    for g in gs {
                        if let Some(fg) = cat.tensor_mor(f, g) {
                            if let (Some(nf), Some(ng), Some(nfg)) = (known(f), known(g), known(&fg))
                            {
                                tensor_mor.insert((nf, ng), nfg);
                            }
                        }
                    }
                }
            }
        }

        let mut identity = BTreeMap::new();
        let mut dup = BTreeMap::new();
        let mut discharge = BTreeMap::new();
        let mut symmetry = BTreeMap::new();
        for a in &objs {
            if let Some(n) = cat.identity(a).and_then(|m| known(&m)) {
                identity.insert(obj_name(a), n);
            }
            if let Some(n) = cat.dup(a).and_then(|m| known(&m)) {
                dup.insert(obj_name(a), n);
            }
            if let Some(n) = cat.discharge(a).and_then(|m| known(&m)) {
                discharge.insert(obj_name(a), n);
            }
            for b in &objs {
                if let Some(n) = cat.symmetry(a, b).and_then(|m| known(&m)) {
                    symmetry.insert((obj_name(a), obj_name(b)), n);
                }
            }
        }

        let leq = if cat.has_order() {
            let mut set = BTreeSet::new();
            for ms in homs.values() {
                for f in ms {
                    for g in ms {
                        if cat.leq(f, g) == Some(true) {
                            set.insert((known(f).unwrap(), known(g).unwrap()));
                        }
                    }
                }
            }
            Some(set)
        } else {
            None
        };

        let table = TableCategory {
            name: format!("table({})", cat.name()),
            objects: objs.iter().map(&obj_name).collect(),
            unit: obj_name(&cat.unit()),
            tensor_obj,
            morphisms,
            compose,
            identity,
            tensor_mor,
            symmetry,
            dup,
            discharge,
            leq,
        };
        table.validate()?;
        Ok(table)
    }
}

impl GsCategory for TableCategory {
    type Obj = Name;
    type Mor = Name;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn objects(&self) -> Vec<Name> {
        self.objects.clone()
    }

    fn unit(&self) -> Name {
        self.unit.clone()
    }

    fn tensor_obj(&self, a: &Name, b: &Name) -> Option<Name> {
        self.tensor_obj.get(&(a.clone(), b.clone())).cloned()
    }

    fn mor_dom(&self, f: &Name) -> Name {
        self.morphisms[f].0.clone()
    }

    fn mor_cod(&self, f: &Name) -> Name {
        self.morphisms[f].1.clone()
    }

    fn identity(&self, a: &Name) -> Option<Name> {
        self.identity.get(a).cloned()
    }

    fn compose(&self, g: &Name, f: &Name) -> Option<Name> {
        self.compose.get(&(g.clone(), f.clone())).cloned()
    }

    fn tensor_mor(&self, f: &Name, g: &Name) -> Option<Name> {
        self.tensor_mor.get(&(f.clone(), g.clone())).cloned()
    }

    fn symmetry(&self, a: &Name, b: &Name) -> Option<Name> {
        self.symmetry.get(&(a.clone(), b.clone())).cloned()
    }

    fn dup(&self, a: &Name) -> Option<Name> {
        self.dup.get(a).cloned()
    }

    fn discharge(&self, a: &Name) -> Option<Name> {
        self.discharge.get(a).cloned()
    }

    fn has_order(&self) -> bool {
        self.leq.is_some()
    }

    fn leq(&self, f: &Name, g: &Name) -> Option<bool> {
        let leq = self.leq.as_ref()?;
        Some(f == g || leq.contains(&(f.clone(), g.clone())))
    }

    fn hom_size(&self, a: &Name, b: &Name) -> Option<u128> {
        Some(
            self.morphisms
                .iter()
                .filter(|(_, (d, c))| d == a && c == b)
                .count() as u128,
        )
    }

    fn hom(&self, a: &Name, b: &Name, _cap: u64) -> Result<Vec<Name>> {
        Ok(self
            .morphisms
            .iter()
            .filter(|(_, (d, c))| d == a && c == b)
            .map(|(m, _)| m.clone())
            .collect())
    }
}

/// Serde mirror of [`TableCategory`]; lists instead of maps so the file stays
/// diffable and key order is explicit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationFixture {
    #[serde(default)]
    pub name: String,
    pub objects: Vec<String>,
    pub unit: String,
    pub tensor_obj: Vec<(String, String, String)>,
    pub morphisms: Vec<MorphismEntry>,
    pub compose: Vec<(String, String, String)>,
    pub identity: Vec<(String, String)>,
    #[serde(default)]
    pub tensor_mor: Vec<(String, String, String)>,
    #[serde(default)]
    pub symmetry: Vec<(String, String, String)>,
    #[serde(default)]
    pub dup: Vec<(String, String)>,
    #[serde(default)]
    pub discharge: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(String, String)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismEntry {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

impl PresentationFixture {
    pub fn from_table(t: &TableCategory) -> PresentationFixture {
        PresentationFixture {
            name: t.name.clone(),
            objects: t.objects.iter().map(|o| o.0.clone()).collect(),
            unit: t.unit.0.clone(),
            tensor_obj: t
                .tensor_obj
                .iter()
                .map(|((a, b), c)| (a.0.clone(), b.0.clone(), c.0.clone()))
                .collect(),
            morphisms: t
                .morphisms
                .iter()
                .map(|(m, (d, c))| MorphismEntry {
                    id: m.0.clone(),
                    dom: d.0.clone(),
                    cod: c.0.clone(),
                })
                .collect(),
            compose: t
                .compose
                .iter()
                .map(|((g, f), h)| (g.0.clone(), f.0.clone(), h.0.clone()))
                .collect(),
            identity: t
                .identity
                .iter()
                .map(|(a, m)| (a.0.clone(), m.0.clone()))
                .collect(),
            tensor_mor: t
                .tensor_mor
                .iter()
                .map(|((f, g), h)| (f.0.clone(), g.0.clone(), h.0.clone()))
                .collect(),
            symmetry: t
                .symmetry
                .iter()
                .map(|((a, b), m)| (a.0.clone(), b.0.clone(), m.0.clone()))
                .collect(),
            dup: t.dup.iter().map(|(a, m)| (a.0.clone(), m.0.clone())).collect(),
            discharge: t
                .discharge
                .iter()
                .map(|(a, m)| (a.0.clone(), m.0.clone()))
                .collect(),
            leq: t
                .leq
                .as_ref()
                .map(|s| s.iter().map(|(f, g)| (f.0.clone(), g.0.clone())).collect()),
        }
    }

    /// Builds, closes the order and validates.
    pub fn into_table(self) -> Result<TableCategory> {
        let n = Name;
        let mut t = TableCategory {
            name: if self.name.is_empty() {
                "fixture".into()
            } else {
                self.name
            },
            objects: self.objects.into_iter().map(Name).collect(),
            unit: n(self.unit),
            tensor_obj: self
                .tensor_obj
                .into_iter()
                .map(|(a, b, c)| ((Name(a), Name(b)), Name(c)))
                .collect(),
            morphisms: self
                .morphisms
                .into_iter()
                .map(|e| (Name(e.id), (Name(e.dom), Name(e.cod))))
                .collect(),
            compose: self
                .compose
                .into_iter()
                .map(|(g, f, h)| ((Name(g), Name(f)), Name(h)))
                .collect(),
            identity: self
                .identity
                .into_iter()
                .map(|(a, m)| (Name(a), Name(m)))
                .collect(),
            tensor_mor: self
                .tensor_mor
                .into_iter()
                .map(|(f, g, h)| ((Name(f), Name(g)), Name(h)))
                .collect(),
            symmetry: self
                .symmetry
                .into_iter()
                .map(|(a, b, m)| ((Name(a), Name(b)), Name(m)))
                .collect(),
            dup: self.dup.into_iter().map(|(a, m)| (Name(a), Name(m))).collect(),
            discharge: self
                .discharge
                .into_iter()
                .map(|(a, m)| (Name(a), Name(m)))
                .collect(),
            leq: self
                .leq
                .map(|v| v.into_iter().map(|(f, g)| (Name(f), Name(g))).collect()),
        };
        t.close_order();
        t.validate()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{check_category_and_monoidal, check_gs_axioms};
    use crate::finrel::FinRelCat;

    fn one_object_table() -> TableCategory {
        // one object, only its identity
        let fx = PresentationFixture {
            name: "point".into(),
            objects: vec!["I".into()],
            unit: "I".into(),
            tensor_obj: vec![("I".into(), "I".into(), "I".into())],
            morphisms: vec![MorphismEntry {
                id: "id".into(),
                dom: "I".into(),
                cod: "I".into(),
            }],
            compose: vec![("id".into(), "id".into(), "id".into())],
            identity: vec![("I".into(), "id".into())],
            tensor_mor: vec![("id".into(), "id".into(), "id".into())],
            symmetry: vec![("I".into(), "I".into(), "id".into())],
            dup: vec![("I".into(), "id".into())],
            discharge: vec![("I".into(), "id".into())],
            leq: None,
        };
        fx.into_table().unwrap()
    }

    #[test]
    fn one_object_presentation_passes() {
        let t = one_object_table();
        let cfg = CheckConfig::default();
        let rep = check_category_and_monoidal(&t, &cfg);
        assert!(rep.passed(), "{}", rep);
        assert!(check_gs_axioms(&t, &cfg).passed());
    }

    #[test]
    fn corrupted_compose_entry_is_caught_with_witness() {
        let cat = FinRelCat::new(vec![1, 2]);
        let cfg = CheckConfig::default();
        let mut t = TableCategory::materialize(&cat, &cfg).unwrap();
        // corrupt one compose entry: pick some entry whose result differs from
        // another morphism in the same hom-set and swap it
        let ((g, f), h) = t
            .compose
            .iter()
            .find(|((g, f), h)| {
                let (hd, hc) = &t.morphisms[*h];
                t.morphisms
                    .iter()
                    .any(|(m, (d, c))| d == hd && c == hc && m != *h)
                    && g != f
            })
            .map(|((g, f), h)| ((g.clone(), f.clone()), h.clone()))
            .unwrap();
        let (hd, hc) = t.morphisms[&h].clone();
        let other = t
            .morphisms
            .iter()
            .find(|(m, (d, c))| **m != h && *d == hd && *c == hc)
            .map(|(m, _)| m.clone())
            .unwrap();
        t.compose.insert((g, f), other);
        let rep = check_category_and_monoidal(&t, &cfg);
        assert!(!rep.passed());
        assert!(rep.witness.is_some());
    }

    #[test]
    fn materialized_finrel_roundtrips_through_json() {
        let cat = FinRelCat::new(vec![1, 2]);
        let cfg = CheckConfig::default();
        let t = TableCategory::materialize(&cat, &cfg).unwrap();
        let fx = PresentationFixture::from_table(&t);
        let js = serde_json::to_string(&fx).unwrap();
        let fx2: PresentationFixture = serde_json::from_str(&js).unwrap();
        let t2 = fx2.into_table().unwrap();
        assert_eq!(t.morphisms.len(), t2.morphisms.len());
        assert_eq!(t.compose.len(), t2.compose.len());
        let rep = check_category_and_monoidal(&t2, &CheckConfig::default());
        assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn validation_rejects_unknown_identifiers() {
        let mut t = one_object_table();
        t.compose
            .insert((Name("id".into()), Name("ghost".into())), Name("id".into()));
        assert!(matches!(
            t.validate(),
            Err(crate::error::Error::MalformedPresentation(_))
        ));
    }
}
