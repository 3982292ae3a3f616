//! Functors between presentations and the checkers for their many flavors:
//! lax/oplax/strong/strict (gs-)monoidal, bilax, colax (op/bi)cartesian, and
//! lax-on-identities mappings.
//!
//! Object and morphism maps return `Option`; a `None` marks an instance that
//! is not materializable under the configured caps and is counted as skipped.

use std::collections::BTreeMap;

use crate::category::{GsCategory, Homs};
use crate::error::{Error, Result};
use crate::report::{CheckConfig, LawReport, Outcome, Run, Witness};
use crate::table::{Name, TableCategory};
use serde::{Deserialize, Serialize};

pub trait Functor<S: GsCategory, T: GsCategory> {
    fn name(&self) -> String;
    fn src(&self) -> &S;
    fn tgt(&self) -> &T;
    fn obj(&self, a: &S::Obj) -> Option<T::Obj>;
    fn mor(&self, f: &S::Mor) -> Option<T::Mor>;
    /// ψ_{A,B} : F(A) ⊗ F(B) -> F(A ⊗ B)
    fn laxator(&self, _a: &S::Obj, _b: &S::Obj) -> Option<T::Mor> {
        None
    }
    /// ψ₀ : I -> F(I)
    fn unit_lax(&self) -> Option<T::Mor> {
        None
    }
    /// φ_{A,B} : F(A ⊗ B) -> F(A) ⊗ F(B)
    fn oplaxator(&self, _a: &S::Obj, _b: &S::Obj) -> Option<T::Mor> {
        None
    }
    /// φ₀ : F(I) -> I
    fn unit_oplax(&self) -> Option<T::Mor> {
        None
    }
    fn has_lax(&self) -> bool {
        false
    }
    fn has_oplax(&self) -> bool {
        false
    }
}

/// Closure-backed functor value; also the loaded form of functor fixtures.
#[allow(clippy::type_complexity)]
pub struct FunctorData<'a, S: GsCategory, T: GsCategory> {
    pub name: String,
    pub source: &'a S,
    pub target: &'a T,
    pub obj_map: Box<dyn Fn(&S::Obj) -> Option<T::Obj> + 'a>,
    pub mor_map: Box<dyn Fn(&S::Mor) -> Option<T::Mor> + 'a>,
    pub laxator: Option<Box<dyn Fn(&S::Obj, &S::Obj) -> Option<T::Mor> + 'a>>,
    pub unit_lax: Option<T::Mor>,
    pub oplaxator: Option<Box<dyn Fn(&S::Obj, &S::Obj) -> Option<T::Mor> + 'a>>,
    pub unit_oplax: Option<T::Mor>,
}

impl<'a, S: GsCategory, T: GsCategory> Functor<S, T> for FunctorData<'a, S, T> {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn src(&self) -> &S {
        self.source
    }
    fn tgt(&self) -> &T {
        self.target
    }
    fn obj(&self, a: &S::Obj) -> Option<T::Obj> {
        (self.obj_map)(a)
    }
    fn mor(&self, f: &S::Mor) -> Option<T::Mor> {
        (self.mor_map)(f)
    }
    fn laxator(&self, a: &S::Obj, b: &S::Obj) -> Option<T::Mor> {
        self.laxator.as_ref().and_then(|l| l(a, b))
    }
    fn unit_lax(&self) -> Option<T::Mor> {
        self.unit_lax.clone()
    }
    fn oplaxator(&self, a: &S::Obj, b: &S::Obj) -> Option<T::Mor> {
        self.oplaxator.as_ref().and_then(|l| l(a, b))
    }
    fn unit_oplax(&self) -> Option<T::Mor> {
        self.unit_oplax.clone()
    }
    fn has_lax(&self) -> bool {
        self.laxator.is_some()
    }
    fn has_oplax(&self) -> bool {
        self.oplaxator.is_some()
    }
}

/// The identity functor with identity lax and oplax structure.
pub fn identity_functor<C: GsCategory>(cat: &C) -> FunctorData<'_, C, C> {
    let id_psi = |cat: &C, a: &C::Obj, b: &C::Obj| -> Option<C::Mor> {
        cat.tensor_obj(a, b).and_then(|ab| cat.identity(&ab))
    };
    FunctorData {
        name: format!("id[{}]", cat.name()),
        source: cat,
        target: cat,
        obj_map: Box::new(move |a| Some(a.clone())),
        mor_map: Box::new(move |f| Some(f.clone())),
        laxator: Some(Box::new(move |a, b| id_psi(cat, a, b))),
        unit_lax: cat.identity(&cat.unit()),
        oplaxator: Some(Box::new(move |a, b| id_psi(cat, a, b))),
        unit_oplax: cat.identity(&cat.unit()),
    }
}

/// `F ∘ G` with the composite laxator `ψ^{FG} = F(ψ^G) ∘ ψ^F_{G-, G-}`.
pub fn compose_functors<'a, A, B, C, G, F>(f: &'a F, g: &'a G) -> FunctorData<'a, A, C>
where
    A: GsCategory,
    B: GsCategory,
    C: GsCategory,
    G: Functor<A, B>,
    F: Functor<B, C>,
{
    let tgt = f.tgt();
    let unit_lax = match (f.unit_lax(), g.unit_lax().and_then(|p| f.mor(&p))) {
        (Some(psi0_f), Some(f_psi0_g)) => tgt.compose(&f_psi0_g, &psi0_f),
        _ => None,
    };
    FunctorData {
        name: format!("{} ∘ {}", f.name(), g.name()),
        source: g.src(),
        target: f.tgt(),
        obj_map: Box::new(move |a| f.obj(&g.obj(a)?)),
        mor_map: Box::new(move |m| f.mor(&g.mor(m)?)),
        laxator: Some(Box::new(move |a, b| {
            let (ga, gb) = (g.obj(a)?, g.obj(b)?);
            let psi_f = f.laxator(&ga, &gb)?;
            let f_psi_g = f.mor(&g.laxator(a, b)?)?;
            f.tgt().compose(&f_psi_g, &psi_f)
        })),
        unit_lax,
        oplaxator: None,
        unit_oplax: None,
    }
}

struct Fx<'a, S: GsCategory, T: GsCategory, F: Functor<S, T>> {
    f: &'a F,
    s: &'a S,
    t: &'a T,
}

impl<'a, S: GsCategory, T: GsCategory, F: Functor<S, T>> Fx<'a, S, T, F> {
    fn new(f: &'a F) -> Self {
        Fx {
            f,
            s: f.src(),
            t: f.tgt(),
        }
    }

    fn fail(&self, law: &str, loc: String, items: Vec<String>, l: &T::Mor, r: &T::Mor) -> Outcome {
        Outcome::Fail(Witness {
            law: law.into(),
            location: loc,
            items,
            lhs: format!("{}", l),
            rhs: format!("{}", r),
        })
    }

    fn eq(
        &self,
        law: &str,
        loc: String,
        items: Vec<String>,
        l: Option<T::Mor>,
        r: Option<T::Mor>,
    ) -> Outcome {
        match (l, r) {
            (Some(l), Some(r)) => {
                if l == r {
                    Outcome::Ok
                } else {
                    self.fail(law, loc, items, &l, &r)
                }
            }
            _ => Outcome::Skip,
        }
    }

    fn le(
        &self,
        law: &str,
        loc: String,
        items: Vec<String>,
        l: Option<T::Mor>,
        r: Option<T::Mor>,
    ) -> Outcome {
        match (l, r) {
            (Some(l), Some(r)) => match self.t.leq(&l, &r) {
                Some(true) => Outcome::Ok,
                Some(false) => self.fail(law, loc, items, &l, &r),
                None => Outcome::Skip,
            },
            _ => Outcome::Skip,
        }
    }

    /// `F(f) ⊗ F(g)` in the target.
    fn fxf(&self, f: &S::Mor, g: &S::Mor) -> Option<T::Mor> {
        self.t.tensor_mor(&self.f.mor(f)?, &self.f.mor(g)?)
    }
}

/// Functoriality plus (when both sides are ordered) monotonicity on hom-sets.
/// With `lax_identities` the identity law is checked as `id ≤ F(id)` and
/// composition is still strict.
fn functoriality<S, T, F>(run: &mut Run, f: &F, cfg: &CheckConfig, lax_identities: bool)
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    let x = Fx::new(f);
    let objs = x.s.objects();
    let mut homs = Homs::new(x.s, cfg.hom_cap);
    let id_law = if lax_identities {
        "functor-lax-identity"
    } else {
        "functor-identity"
    };

    run.group(id_law, &[objs.len() as u64], |c| {
        let a = &objs[c[0] as usize];
        let (Some(fa), Some(ida)) = (x.f.obj(a), x.s.identity(a)) else {
            return Outcome::Skip;
        };
        let l = x.t.identity(&fa);
        let r = x.f.mor(&ida);
        if lax_identities {
            x.le(id_law, format!("object {}", a), vec![], l, r)
        } else {
            x.eq(id_law, format!("object {}", a), vec![], l, r)
        }
    });

    for a in &objs {
        for b in &objs {
            for d in &objs {
                let (Some(fs), Some(gs)) = (homs.get(a, b), homs.get(b, d)) else {
                    run.skip_group("functor-composition");
                    continue;
                };
                run.group(
                    "functor-composition",
                    &[fs.len() as u64, gs.len() as u64],
                    |c| {
                        let m = &fs[c[0] as usize];
                        let n = &gs[c[1] as usize];
                        let l = x.s.compose(n, m).and_then(|nm| x.f.mor(&nm));
                        let r = match (x.f.mor(n), x.f.mor(m)) {
                            (Some(fn_), Some(fm)) => x.t.compose(&fn_, &fm),
                            _ => None,
                        };
                        x.eq(
                            "functor-composition",
                            format!("{} -> {} -> {}", a, b, d),
                            vec![format!("f = {}", m), format!("g = {}", n)],
                            l,
                            r,
                        )
                    },
                );
            }
        }
    }

    if x.s.has_order() && x.t.has_order() {
        for a in &objs {
            for b in &objs {
                let Some(fs) = homs.get(a, b) else {
                    run.skip_group("functor-monotone");
                    continue;
                };
                let n = fs.len() as u64;
                run.group("functor-monotone", &[n, n], |c| {
                    let m = &fs[c[0] as usize];
                    let m2 = &fs[c[1] as usize];
                    match x.s.leq(m, m2) {
                        Some(true) => x.le(
                            "functor-monotone",
                            format!("hom({}, {})", a, b),
                            vec![format!("f = {}", m), format!("g = {}", m2)],
                            x.f.mor(m),
                            x.f.mor(m2),
                        ),
                        _ => Outcome::Skip,
                    }
                });
            }
        }
    }
}

/// Naturality, associativity, unitality and symmetry compatibility of ψ.
pub fn check_lax_monoidal<S, T, F>(f: &F, cfg: &CheckConfig) -> Result<LawReport>
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    if !f.has_lax() {
        return Err(Error::MissingStructure("laxator ψ"));
    }
    let mut run = Run::new("check_lax_monoidal", cfg);
    functoriality(&mut run, f, cfg, false);
    lax_structure_laws(&mut run, f, cfg, false);
    Ok(run.finish())
}

fn lax_structure_laws<S, T, F>(run: &mut Run, f: &F, cfg: &CheckConfig, lax_identities: bool)
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    let x = Fx::new(f);
    let objs = x.s.objects();
    let unit = x.s.unit();
    let mut homs = Homs::new(x.s, cfg.hom_cap);
    let n = objs.len() as u64;

    // naturality of ψ
    for a in &objs {
        for b in &objs {
            for a2 in &objs {
                for b2 in &objs {
                    let (Some(fs), Some(gs)) = (homs.get(a, b), homs.get(a2, b2)) else {
                        run.skip_group("lax-naturality");
                        continue;
                    };
                    run.group(
                        "lax-naturality",
                        &[fs.len() as u64, gs.len() as u64],
                        |c| {
                            let m = &fs[c[0] as usize];
                            let g = &gs[c[1] as usize];
                            let l = match (x.f.laxator(b, b2), x.fxf(m, g)) {
                                (Some(psi), Some(ff)) => x.t.compose(&psi, &ff),
                                _ => None,
                            };
                            let r = match (
                                x.s.tensor_mor(m, g).and_then(|mg| x.f.mor(&mg)),
                                x.f.laxator(a, a2),
                            ) {
                                (Some(fmg), Some(psi)) => x.t.compose(&fmg, &psi),
                                _ => None,
                            };
                            x.eq(
                                "lax-naturality",
                                format!("f : {} -> {}, g : {} -> {}", a, b, a2, b2),
                                vec![format!("f = {}", m), format!("g = {}", g)],
                                l,
                                r,
                            )
                        },
                    );
                }
            }
        }
    }

    // associativity of ψ; for lax-on-identities functors id_{F(A)} is
    // replaced by F(id_A)
    run.group("lax-associativity", &[n, n, n], |c| {
        let (a, b, d) = (
            &objs[c[0] as usize],
            &objs[c[1] as usize],
            &objs[c[2] as usize],
        );
        let fid = |o: &S::Obj| -> Option<T::Mor> {
            if lax_identities {
                x.f.mor(&x.s.identity(o)?)
            } else {
                x.t.identity(&x.f.obj(o)?)
            }
        };
        let (Some(ab), Some(bd)) = (x.s.tensor_obj(a, b), x.s.tensor_obj(b, d)) else {
            return Outcome::Skip;
        };
        let l = match (x.f.laxator(&ab, d), x.f.laxator(a, b), fid(d)) {
            (Some(psi_ab_d), Some(psi_ab), Some(idd)) => x
                .t
                .tensor_mor(&psi_ab, &idd)
                .and_then(|m| x.t.compose(&psi_ab_d, &m)),
            _ => None,
        };
        let r = match (x.f.laxator(a, &bd), fid(a), x.f.laxator(b, d)) {
            (Some(psi_a_bd), Some(ida), Some(psi_bd)) => x
                .t
                .tensor_mor(&ida, &psi_bd)
                .and_then(|m| x.t.compose(&psi_a_bd, &m)),
            _ => None,
        };
        x.eq(
            "lax-associativity",
            format!("objects ({}, {}, {})", a, b, d),
            vec![],
            l,
            r,
        )
    });

    run.group("lax-unitality", &[n], |c| {
        let a = &objs[c[0] as usize];
        let fid = |o: &S::Obj| -> Option<T::Mor> {
            if lax_identities {
                x.f.mor(&x.s.identity(o)?)
            } else {
                x.t.identity(&x.f.obj(o)?)
            }
        };
        let (Some(psi0), Some(ida)) = (x.f.unit_lax(), fid(a)) else {
            return Outcome::Skip;
        };
        let l = match x.f.laxator(&unit, a) {
            Some(psi) => x
                .t
                .tensor_mor(&psi0, &ida)
                .and_then(|m| x.t.compose(&psi, &m)),
            None => None,
        };
        let r = match x.f.laxator(a, &unit) {
            Some(psi) => x
                .t
                .tensor_mor(&ida, &psi0)
                .and_then(|m| x.t.compose(&psi, &m)),
            None => None,
        };
        match (l, r, fid(a)) {
            (Some(l), Some(r), Some(expect)) => {
                if l == expect && r == expect {
                    Outcome::Ok
                } else {
                    x.fail(
                        "lax-unitality",
                        format!("object {}", a),
                        vec![format!("expected {}", expect)],
                        &l,
                        &r,
                    )
                }
            }
            _ => Outcome::Skip,
        }
    });

    run.group("lax-symmetry", &[n, n], |c| {
        let (a, b) = (&objs[c[0] as usize], &objs[c[1] as usize]);
        let l = match (
            x.s.symmetry(a, b).and_then(|s| x.f.mor(&s)),
            x.f.laxator(a, b),
        ) {
            (Some(fs), Some(psi)) => x.t.compose(&fs, &psi),
            _ => None,
        };
        let r = match (x.f.laxator(b, a), x.f.obj(a), x.f.obj(b)) {
            (Some(psi), Some(fa), Some(fb)) => {
                x.t.symmetry(&fa, &fb).and_then(|g| x.t.compose(&psi, &g))
            }
            _ => None,
        };
        x.eq(
            "lax-symmetry",
            format!("objects ({}, {})", a, b),
            vec![],
            l,
            r,
        )
    });
}

/// Dual of [`check_lax_monoidal`] for the oplaxator φ.
pub fn check_oplax_monoidal<S, T, F>(f: &F, cfg: &CheckConfig) -> Result<LawReport>
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    if !f.has_oplax() {
        return Err(Error::MissingStructure("oplaxator φ"));
    }
    let mut run = Run::new("check_oplax_monoidal", cfg);
    functoriality(&mut run, f, cfg, false);
    oplax_structure_laws(&mut run, f, cfg);
    Ok(run.finish())
}

fn oplax_structure_laws<S, T, F>(run: &mut Run, f: &F, cfg: &CheckConfig)
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    let x = Fx::new(f);
    let objs = x.s.objects();
    let unit = x.s.unit();
    let mut homs = Homs::new(x.s, cfg.hom_cap);
    let n = objs.len() as u64;

    for a in &objs {
        for b in &objs {
            for a2 in &objs {
                for b2 in &objs {
                    let (Some(fs), Some(gs)) = (homs.get(a, b), homs.get(a2, b2)) else {
                        run.skip_group("oplax-naturality");
                        continue;
                    };
                    run.group(
                        "oplax-naturality",
                        &[fs.len() as u64, gs.len() as u64],
                        |c| {
                            let m = &fs[c[0] as usize];
                            let g = &gs[c[1] as usize];
                            let l = match (x.fxf(m, g), x.f.oplaxator(a, a2)) {
                                (Some(ff), Some(phi)) => x.t.compose(&ff, &phi),
                                _ => None,
                            };
                            let r = match (
                                x.f.oplaxator(b, b2),
                                x.s.tensor_mor(m, g).and_then(|mg| x.f.mor(&mg)),
                            ) {
                                (Some(phi), Some(fmg)) => x.t.compose(&phi, &fmg),
                                _ => None,
                            };
                            x.eq(
                                "oplax-naturality",
                                format!("f : {} -> {}, g : {} -> {}", a, b, a2, b2),
                                vec![format!("f = {}", m), format!("g = {}", g)],
                                l,
                                r,
                            )
                        },
                    );
                }
            }
        }
    }

    run.group("oplax-associativity", &[n, n, n], |c| {
        let (a, b, d) = (
            &objs[c[0] as usize],
            &objs[c[1] as usize],
            &objs[c[2] as usize],
        );
        let (Some(ab), Some(bd)) = (x.s.tensor_obj(a, b), x.s.tensor_obj(b, d)) else {
            return Outcome::Skip;
        };
        let fid = |o: &S::Obj| -> Option<T::Mor> { x.t.identity(&x.f.obj(o)?) };
        let l = match (x.f.oplaxator(a, b), fid(d), x.f.oplaxator(&ab, d)) {
            (Some(phi_ab), Some(idd), Some(phi_ab_d)) => x
                .t
                .tensor_mor(&phi_ab, &idd)
                .and_then(|m| x.t.compose(&m, &phi_ab_d)),
            _ => None,
        };
        let r = match (fid(a), x.f.oplaxator(b, d), x.f.oplaxator(a, &bd)) {
            (Some(ida), Some(phi_bd), Some(phi_a_bd)) => x
                .t
                .tensor_mor(&ida, &phi_bd)
                .and_then(|m| x.t.compose(&m, &phi_a_bd)),
            _ => None,
        };
        x.eq(
            "oplax-associativity",
            format!("objects ({}, {}, {})", a, b, d),
            vec![],
            l,
            r,
        )
    });

    run.group("oplax-unitality", &[n], |c| {
        let a = &objs[c[0] as usize];
        let fid = |o: &S::Obj| -> Option<T::Mor> { x.t.identity(&x.f.obj(o)?) };
        let (Some(phi0), Some(ida)) = (x.f.unit_oplax(), fid(a)) else {
            return Outcome::Skip;
        };
        let l = match x.f.oplaxator(&unit, a) {
            Some(phi) => x
                .t
                .tensor_mor(&phi0, &ida)
                .and_then(|m| x.t.compose(&m, &phi)),
            None => None,
        };
        let r = match x.f.oplaxator(a, &unit) {
            Some(phi) => x
                .t
                .tensor_mor(&ida, &phi0)
                .and_then(|m| x.t.compose(&m, &phi)),
            None => None,
        };
        match (l, r, fid(a)) {
            (Some(l), Some(r), Some(expect)) => {
                if l == expect && r == expect {
                    Outcome::Ok
                } else {
                    x.fail(
                        "oplax-unitality",
                        format!("object {}", a),
                        vec![format!("expected {}", expect)],
                        &l,
                        &r,
                    )
                }
            }
            _ => Outcome::Skip,
        }
    });

    run.group("oplax-symmetry", &[n, n], |c| {
        let (a, b) = (&objs[c[0] as usize], &objs[c[1] as usize]);
        let l = match (x.f.obj(a), x.f.obj(b), x.f.oplaxator(a, b)) {
            (Some(fa), Some(fb), Some(phi)) => {
                x.t.symmetry(&fa, &fb).and_then(|g| x.t.compose(&g, &phi))
            }
            _ => None,
        };
        let r = match (
            x.f.oplaxator(b, a),
            x.s.symmetry(a, b).and_then(|s| x.f.mor(&s)),
        ) {
            (Some(phi), Some(fs)) => x.t.compose(&phi, &fs),
            _ => None,
        };
        x.eq(
            "oplax-symmetry",
            format!("objects ({}, {})", a, b),
            vec![],
            l,
            r,
        )
    });
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GsFlavor {
    Lax,
    Oplax,
    Strong,
    Strict,
}

/// The duplicator/discharger triangles for the requested flavor; `strong`
/// also demands two-sided invertibility of ψ and φ, `strict` demands identity
/// structure maps and on-the-nose preservation.
pub fn check_gs_functor<S, T, F>(f: &F, flavor: GsFlavor, cfg: &CheckConfig) -> Result<LawReport>
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    match flavor {
        GsFlavor::Lax if !f.has_lax() => return Err(Error::MissingStructure("laxator ψ")),
        GsFlavor::Oplax if !f.has_oplax() => return Err(Error::MissingStructure("oplaxator φ")),
        GsFlavor::Strong | GsFlavor::Strict if !(f.has_lax() && f.has_oplax()) => {
            return Err(Error::MissingStructure("both ψ and φ"))
        }
        _ => {}
    }
    let mut run = Run::new(
        match flavor {
            GsFlavor::Lax => "check_gs_functor[lax]",
            GsFlavor::Oplax => "check_gs_functor[oplax]",
            GsFlavor::Strong => "check_gs_functor[strong]",
            GsFlavor::Strict => "check_gs_functor[strict]",
        },
        cfg,
    );
    let x = Fx::new(f);
    let objs = x.s.objects();
    let n = objs.len() as u64;

    if matches!(flavor, GsFlavor::Lax | GsFlavor::Strong | GsFlavor::Strict) {
        run.group("gs-lax-dup-triangle", &[n], |c| {
            let a = &objs[c[0] as usize];
            let l = x.s.dup(a).and_then(|d| x.f.mor(&d));
            let r = match (x.f.laxator(a, a), x.f.obj(a)) {
                (Some(psi), Some(fa)) => x.t.dup(&fa).and_then(|d| x.t.compose(&psi, &d)),
                _ => None,
            };
            x.eq("gs-lax-dup-triangle", format!("object {}", a), vec![], l, r)
        });
        run.group("gs-lax-discharge-triangle", &[n], |c| {
            let a = &objs[c[0] as usize];
            let l = x.s.discharge(a).and_then(|d| x.f.mor(&d));
            let r = match (x.f.unit_lax(), x.f.obj(a)) {
                (Some(psi0), Some(fa)) => x.t.discharge(&fa).and_then(|d| x.t.compose(&psi0, &d)),
                _ => None,
            };
            x.eq(
                "gs-lax-discharge-triangle",
                format!("object {}", a),
                vec![],
                l,
                r,
            )
        });
    }

    if matches!(flavor, GsFlavor::Oplax | GsFlavor::Strong | GsFlavor::Strict) {
        run.group("gs-oplax-dup-triangle", &[n], |c| {
            let a = &objs[c[0] as usize];
            let l = match (x.f.oplaxator(a, a), x.s.dup(a).and_then(|d| x.f.mor(&d))) {
                (Some(phi), Some(fd)) => x.t.compose(&phi, &fd),
                _ => None,
            };
            let r = x.f.obj(a).and_then(|fa| x.t.dup(&fa));
            x.eq(
                "gs-oplax-dup-triangle",
                format!("object {}", a),
                vec![],
                l,
                r,
            )
        });
        run.group("gs-oplax-discharge-triangle", &[n], |c| {
            let a = &objs[c[0] as usize];
            let l = match (
                x.f.unit_oplax(),
                x.s.discharge(a).and_then(|d| x.f.mor(&d)),
            ) {
                (Some(phi0), Some(fd)) => x.t.compose(&phi0, &fd),
                _ => None,
            };
            let r = x.f.obj(a).and_then(|fa| x.t.discharge(&fa));
            x.eq(
                "gs-oplax-discharge-triangle",
                format!("object {}", a),
                vec![],
                l,
                r,
            )
        });
    }

    if flavor == GsFlavor::Strong {
        run.group("strong-invertibility", &[n, n], |c| {
            let (a, b) = (&objs[c[0] as usize], &objs[c[1] as usize]);
            let (Some(psi), Some(phi)) = (x.f.laxator(a, b), x.f.oplaxator(a, b)) else {
                return Outcome::Skip;
            };
            let fab = x.s.tensor_obj(a, b).and_then(|ab| x.f.obj(&ab));
            let fa_fb = match (x.f.obj(a), x.f.obj(b)) {
                (Some(fa), Some(fb)) => x.t.tensor_obj(&fa, &fb),
                _ => None,
            };
            let l = x.t.compose(&psi, &phi);
            let r = fab.and_then(|o| x.t.identity(&o));
            let l2 = x.t.compose(&phi, &psi);
            let r2 = fa_fb.and_then(|o| x.t.identity(&o));
            match (l, r, l2, r2) {
                (Some(l), Some(r), Some(l2), Some(r2)) => {
                    if l == r && l2 == r2 {
                        Outcome::Ok
                    } else {
                        x.fail(
                            "strong-invertibility",
                            format!("objects ({}, {})", a, b),
                            vec![],
                            &l,
                            &r,
                        )
                    }
                }
                _ => Outcome::Skip,
            }
        });
    }

    if flavor == GsFlavor::Strict {
        run.group("strict-structure-identity", &[n, n], |c| {
            let (a, b) = (&objs[c[0] as usize], &objs[c[1] as usize]);
            let (Some(psi), Some(phi)) = (x.f.laxator(a, b), x.f.oplaxator(a, b)) else {
                return Outcome::Skip;
            };
            let fab = x.s.tensor_obj(a, b).and_then(|ab| x.f.obj(&ab));
            let split = match (x.f.obj(a), x.f.obj(b)) {
                (Some(fa), Some(fb)) => x.t.tensor_obj(&fa, &fb),
                _ => None,
            };
            let (Some(fab), Some(split)) = (fab, split) else {
                return Outcome::Skip;
            };
            if fab != split {
                return Outcome::Fail(Witness {
                    law: "strict-structure-identity".into(),
                    location: format!("objects ({}, {})", a, b),
                    items: vec![],
                    lhs: format!("F({} ⊗ {}) = {}", a, b, fab),
                    rhs: format!("F({}) ⊗ F({}) = {}", a, b, split),
                });
            }
            let Some(id) = x.t.identity(&fab) else {
                return Outcome::Skip;
            };
            if psi == id && phi == id {
                Outcome::Ok
            } else {
                x.fail(
                    "strict-structure-identity",
                    format!("objects ({}, {})", a, b),
                    vec![],
                    &psi,
                    &phi,
                )
            }
        });
        run.group("strict-symmetry-preserved", &[n, n], |c| {
            let (a, b) = (&objs[c[0] as usize], &objs[c[1] as usize]);
            let l = x.s.symmetry(a, b).and_then(|s| x.f.mor(&s));
            let r = match (x.f.obj(a), x.f.obj(b)) {
                (Some(fa), Some(fb)) => x.t.symmetry(&fa, &fb),
                _ => None,
            };
            x.eq(
                "strict-symmetry-preserved",
                format!("objects ({}, {})", a, b),
                vec![],
                l,
                r,
            )
        });
    }

    Ok(run.finish())
}

/// Braiding square plus the three unitality diagrams of a bilax functor
/// (stated for strict monoidal source and target).
pub fn check_bilax<S, T, F>(f: &F, cfg: &CheckConfig) -> Result<LawReport>
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    if !(f.has_lax() && f.has_oplax()) {
        return Err(Error::MissingStructure("both ψ and φ"));
    }
    let mut run = Run::new("check_bilax", cfg);
    let x = Fx::new(f);
    let objs = x.s.objects();
    let unit = x.s.unit();
    let n = objs.len() as u64;

    run.group("bilax-braiding", &[n, n, n, n], |c| {
        let (a, b, d, e) = (
            &objs[c[0] as usize],
            &objs[c[1] as usize],
            &objs[c[2] as usize],
            &objs[c[3] as usize],
        );
        let (Some(ab), Some(de), Some(ad), Some(be)) = (
            x.s.tensor_obj(a, b),
            x.s.tensor_obj(d, e),
            x.s.tensor_obj(a, d),
            x.s.tensor_obj(b, e),
        ) else {
            return Outcome::Skip;
        };
        // source middle shuffle id_A ⊗ γ_{B,D} ⊗ id_E
        let shuffle = match (x.s.identity(a), x.s.symmetry(b, d), x.s.identity(e)) {
            (Some(ia), Some(g), Some(ie)) => x
                .s
                .tensor_mor(&ia, &g)
                .and_then(|m| x.s.tensor_mor(&m, &ie)),
            _ => None,
        };
        let l = match (
            x.f.laxator(&ab, &de),
            shuffle.and_then(|s| x.f.mor(&s)),
            x.f.oplaxator(&ad, &be),
        ) {
            (Some(psi), Some(fsh), Some(phi)) => x
                .t
                .compose(&fsh, &psi)
                .and_then(|m| x.t.compose(&phi, &m)),
            _ => None,
        };
        let r = (|| {
            let p_ab = x.f.oplaxator(a, b)?;
            let p_de = x.f.oplaxator(d, e)?;
            let (fa, fb, fd, fe) = (x.f.obj(a)?, x.f.obj(b)?, x.f.obj(d)?, x.f.obj(e)?);
            let s_ad = x.f.laxator(a, d)?;
            let s_be = x.f.laxator(b, e)?;
            let phis = x.t.tensor_mor(&p_ab, &p_de)?;
            let mid = x.t.tensor_mor(
                &x.t.tensor_mor(&x.t.identity(&fa)?, &x.t.symmetry(&fb, &fd)?)?,
                &x.t.identity(&fe)?,
            )?;
            let psis = x.t.tensor_mor(&s_ad, &s_be)?;
            x.t.compose(&mid, &phis)
                .and_then(|m| x.t.compose(&psis, &m))
        })();
        x.eq(
            "bilax-braiding",
            format!("objects ({}, {}, {}, {})", a, b, d, e),
            vec![],
            l,
            r,
        )
    });

    run.group("bilax-unitality", &[1], |_| {
        let (Some(psi0), Some(phi0), Some(psi_ii), Some(phi_ii)) = (
            x.f.unit_lax(),
            x.f.unit_oplax(),
            x.f.laxator(&unit, &unit),
            x.f.oplaxator(&unit, &unit),
        ) else {
            return Outcome::Skip;
        };
        // φ_{I,I} ∘ ψ₀ = ψ₀ ⊗ ψ₀
        let d1l = x.t.compose(&phi_ii, &psi0);
        let d1r = x.t.tensor_mor(&psi0, &psi0);
        // φ₀ ∘ ψ_{I,I} = φ₀ ⊗ φ₀
        let d2l = x.t.compose(&phi0, &psi_ii);
        let d2r = x.t.tensor_mor(&phi0, &phi0);
        // φ₀ ∘ ψ₀ = id_I
        let d3l = x.t.compose(&phi0, &psi0);
        let d3r = x.t.identity(&x.t.unit());
        match (d1l, d1r, d2l, d2r, d3l, d3r) {
            (Some(a1), Some(b1), Some(a2), Some(b2), Some(a3), Some(b3)) => {
                if a1 == b1 && a2 == b2 && a3 == b3 {
                    Outcome::Ok
                } else if a1 != b1 {
                    x.fail("bilax-unitality", "diagram 1".into(), vec![], &a1, &b1)
                } else if a2 != b2 {
                    x.fail("bilax-unitality", "diagram 2".into(), vec![], &a2, &b2)
                } else {
                    x.fail("bilax-unitality", "diagram 3".into(), vec![], &a3, &b3)
                }
            }
            _ => Outcome::Skip,
        }
    });

    Ok(run.finish())
}

fn colax_triangles<S, T, F>(run: &mut Run, f: &F)
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    let x = Fx::new(f);
    let objs = x.s.objects();
    let n = objs.len() as u64;

    run.group("colax-dup-triangle", &[n], |c| {
        let a = &objs[c[0] as usize];
        let l = x.s.dup(a).and_then(|d| x.f.mor(&d));
        let r = match (x.f.laxator(a, a), x.f.obj(a)) {
            (Some(psi), Some(fa)) => x.t.dup(&fa).and_then(|d| x.t.compose(&psi, &d)),
            _ => None,
        };
        x.le("colax-dup-triangle", format!("object {}", a), vec![], l, r)
    });
    run.group("colax-discharge-triangle", &[n], |c| {
        let a = &objs[c[0] as usize];
        let l = x.s.discharge(a).and_then(|d| x.f.mor(&d));
        let r = match (x.f.unit_lax(), x.f.obj(a)) {
            (Some(psi0), Some(fa)) => x.t.discharge(&fa).and_then(|d| x.t.compose(&psi0, &d)),
            _ => None,
        };
        x.le(
            "colax-discharge-triangle",
            format!("object {}", a),
            vec![],
            l,
            r,
        )
    });
}

fn colax_op_triangles<S, T, F>(run: &mut Run, f: &F)
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    let x = Fx::new(f);
    let objs = x.s.objects();
    let n = objs.len() as u64;

    run.group("colax-op-dup-triangle", &[n], |c| {
        let a = &objs[c[0] as usize];
        let l = match (x.f.oplaxator(a, a), x.s.dup(a).and_then(|d| x.f.mor(&d))) {
            (Some(phi), Some(fd)) => x.t.compose(&phi, &fd),
            _ => None,
        };
        let r = x.f.obj(a).and_then(|fa| x.t.dup(&fa));
        x.le(
            "colax-op-dup-triangle",
            format!("object {}", a),
            vec![],
            l,
            r,
        )
    });
    run.group("colax-op-discharge-triangle", &[n], |c| {
        let a = &objs[c[0] as usize];
        let l = match (x.f.unit_oplax(), x.s.discharge(a).and_then(|d| x.f.mor(&d))) {
            (Some(phi0), Some(fd)) => x.t.compose(&phi0, &fd),
            _ => None,
        };
        let r = x.f.obj(a).and_then(|fa| x.t.discharge(&fa));
        x.le(
            "colax-op-discharge-triangle",
            format!("object {}", a),
            vec![],
            l,
            r,
        )
    });
}

fn require_orders<S, T, F>(f: &F) -> Result<()>
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    if !f.src().has_order() || !f.tgt().has_order() {
        return Err(Error::MissingPreorder);
    }
    Ok(())
}

/// Lax symmetric monoidal, monotone, and the ≤-triangles for ∇ and !.
pub fn check_colax_cartesian<S, T, F>(f: &F, cfg: &CheckConfig) -> Result<LawReport>
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    require_orders(f)?;
    if !f.has_lax() {
        return Err(Error::MissingStructure("laxator ψ"));
    }
    let mut run = Run::new("check_colax_cartesian", cfg);
    functoriality(&mut run, f, cfg, false);
    lax_structure_laws(&mut run, f, cfg, false);
    colax_triangles(&mut run, f);
    Ok(run.finish())
}

/// Oplax symmetric monoidal with the dual ≤-triangles.
pub fn check_colax_opcartesian<S, T, F>(f: &F, cfg: &CheckConfig) -> Result<LawReport>
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    require_orders(f)?;
    if !f.has_oplax() {
        return Err(Error::MissingStructure("oplaxator φ"));
    }
    let mut run = Run::new("check_colax_opcartesian", cfg);
    functoriality(&mut run, f, cfg, false);
    oplax_structure_laws(&mut run, f, cfg);
    colax_op_triangles(&mut run, f);
    Ok(run.finish())
}

/// Colax cartesian and opcartesian glued by the bilax coherence diagrams.
pub fn check_colax_bicartesian<S, T, F>(f: &F, cfg: &CheckConfig) -> Result<LawReport>
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    require_orders(f)?;
    if !(f.has_lax() && f.has_oplax()) {
        return Err(Error::MissingStructure("both ψ and φ"));
    }
    let mut run = Run::new("check_colax_bicartesian", cfg);
    functoriality(&mut run, f, cfg, false);
    lax_structure_laws(&mut run, f, cfg, false);
    oplax_structure_laws(&mut run, f, cfg);
    colax_triangles(&mut run, f);
    colax_op_triangles(&mut run, f);
    let bilax = check_bilax(f, cfg)?;
    let mut rep = run.finish();
    rep.checked += bilax.checked;
    rep.skipped += bilax.skipped;
    rep.sampled |= bilax.sampled;
    rep.laws.extend(bilax.laws);
    if rep.witness.is_none() {
        rep.witness = bilax.witness;
        rep.verdict = bilax.verdict;
    }
    rep.op = "check_colax_bicartesian".into();
    Ok(rep)
}

/// A lax-on-identities functor whose ∇/! triangles hold up to ≤.
pub fn check_colax_cartesian_lax_on_identities<S, T, F>(
    f: &F,
    cfg: &CheckConfig,
) -> Result<LawReport>
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    require_orders(f)?;
    if !f.has_lax() {
        return Err(Error::MissingStructure("laxator ψ"));
    }
    let mut run = Run::new("check_colax_cartesian_lax_on_identities", cfg);
    functoriality(&mut run, f, cfg, true);
    lax_structure_laws(&mut run, f, cfg, true);
    colax_triangles(&mut run, f);
    Ok(run.finish())
}

/// Strict binary composition, identities preserved only up to ≤, and the
/// associativity/unitality diagrams with `F(id)` in place of identities.
pub fn check_lax_on_identities<S, T, F>(f: &F, cfg: &CheckConfig) -> Result<LawReport>
where
    S: GsCategory,
    T: GsCategory,
    F: Functor<S, T>,
{
    require_orders(f)?;
    if !f.has_lax() {
        return Err(Error::MissingStructure("laxator ψ"));
    }
    let mut run = Run::new("check_lax_on_identities", cfg);
    functoriality(&mut run, f, cfg, true);
    lax_structure_laws(&mut run, f, cfg, true);
    Ok(run.finish())
}

/// On-disk functor fixture: tables between two presentation fixtures.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctorFixture {
    #[serde(default)]
    pub name: String,
    pub obj_map: Vec<(String, String)>,
    pub mor_map: Vec<(String, String)>,
    #[serde(default)]
    pub laxator: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_lax: Option<String>,
    #[serde(default)]
    pub oplaxator: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_oplax: Option<String>,
}

impl FunctorFixture {
    pub fn into_functor<'a>(
        self,
        source: &'a TableCategory,
        target: &'a TableCategory,
    ) -> Result<FunctorData<'a, TableCategory, TableCategory>> {
        let obj: BTreeMap<Name, Name> = self
            .obj_map
            .into_iter()
            .map(|(a, b)| (Name(a), Name(b)))
            .collect();
        let mor: BTreeMap<Name, Name> = self
            .mor_map
            .into_iter()
            .map(|(a, b)| (Name(a), Name(b)))
            .collect();
        for o in &source.objects {
            if !obj.contains_key(o) {
                return Err(Error::Fixture(format!("obj_map misses object {}", o)));
            }
        }
        for m in source.morphisms.keys() {
            if !mor.contains_key(m) {
                return Err(Error::Fixture(format!("mor_map misses morphism {}", m)));
            }
        }
        let lax: BTreeMap<(Name, Name), Name> = self
            .laxator
            .into_iter()
            .map(|(a, b, m)| ((Name(a), Name(b)), Name(m)))
            .collect();
        let oplax: BTreeMap<(Name, Name), Name> = self
            .oplaxator
            .into_iter()
            .map(|(a, b, m)| ((Name(a), Name(b)), Name(m)))
            .collect();
        let has_lax = !lax.is_empty() || self.unit_lax.is_some();
        let has_oplax = !oplax.is_empty() || self.unit_oplax.is_some();
        Ok(FunctorData {
            name: if self.name.is_empty() {
                "functor-fixture".into()
            } else {
                self.name
            },
            source,
            target,
            obj_map: Box::new(move |a| obj.get(a).cloned()),
            mor_map: Box::new(move |m| mor.get(m).cloned()),
            laxator: if has_lax {
                Some(Box::new(move |a, b| {
                    lax.get(&(a.clone(), b.clone())).cloned()
                }))
            } else {
                None
            },
            unit_lax: self.unit_lax.map(Name),
            oplaxator: if has_oplax {
                Some(Box::new(move |a, b| {
                    oplax.get(&(a.clone(), b.clone())).cloned()
                }))
            } else {
                None
            },
            unit_oplax: self.unit_oplax.map(Name),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrel::FinRelCat;
    use crate::report::Verdict;

    #[test]
    fn identity_functor_passes_every_flavor() {
        let cat = FinRelCat::new(vec![1, 2]);
        let cfg = CheckConfig::default();
        let f = identity_functor(&cat);
        assert!(check_lax_monoidal(&f, &cfg).unwrap().passed());
        assert!(check_oplax_monoidal(&f, &cfg).unwrap().passed());
        for flavor in [
            GsFlavor::Lax,
            GsFlavor::Oplax,
            GsFlavor::Strong,
            GsFlavor::Strict,
        ] {
            assert!(check_gs_functor(&f, flavor, &cfg).unwrap().passed());
        }
        assert!(check_bilax(&f, &cfg).unwrap().passed());
        assert!(check_colax_cartesian(&f, &cfg).unwrap().passed());
        assert!(check_colax_opcartesian(&f, &cfg).unwrap().passed());
        assert!(check_colax_bicartesian(&f, &cfg).unwrap().passed());
        // genuine functors are trivially lax on identities
        assert!(check_lax_on_identities(&f, &cfg).unwrap().passed());
    }

    #[test]
    fn corrupted_laxator_fails_with_pair_witness() {
        let cat = FinRelCat::new(vec![1, 2]);
        let cfg = CheckConfig::default();
        let mut f = identity_functor(&cat);
        // break ψ on the pair (2, 2): use the empty relation instead of id
        f.laxator = Some(Box::new(|a, b| {
            if *a == 2 && *b == 2 {
                Some(crate::finrel::Rel::empty(4, 4))
            } else {
                Some(crate::finrel::Rel::identity(a * b))
            }
        }));
        let rep = check_lax_monoidal(&f, &cfg).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn missing_structure_is_reported() {
        let cat = FinRelCat::new(vec![1, 2]);
        let cfg = CheckConfig::default();
        let mut f = identity_functor(&cat);
        f.laxator = None;
        f.unit_lax = None;
        assert!(matches!(
            check_lax_monoidal(&f, &cfg),
            Err(Error::MissingStructure(_))
        ));
    }
}
