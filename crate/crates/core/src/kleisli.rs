//! Kleisli categories of the built-in commutative monads, their duplicator
//! and discharger structure, the hom-set order induced by the value order,
//! and the adjunction functors in both directions.

use std::rc::Rc;

use crate::category::GsCategory;
use crate::error::{Error, Result};
use crate::finrel::{FinRelCat, Rel};
use crate::functor::FunctorData;
use crate::monad::{check_gs_monoidal_monad, MonadSpec, TValue, ValueIndex};
use crate::preord::{FinPreord, FinPreordCat, MonotoneMap};
use crate::report::{CheckConfig, LawReport, Outcome, Run, Witness};
use crate::span::{PSpanCat, Span};

/// An arrow `A -> T(B)`: one monad value per source element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KleisliMorphism {
    pub src: usize,
    pub tgt: usize,
    pub table: Vec<TValue>,
}

impl std::fmt::Display for KleisliMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}->{}[", self.src, self.tgt)?;
        for (i, v) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone)]
pub struct KleisliCat {
    pub monad: MonadSpec,
    pub sizes: Vec<usize>,
}

impl KleisliCat {
    pub fn new(monad: MonadSpec, mut sizes: Vec<usize>) -> KleisliCat {
        if !sizes.contains(&1) {
            sizes.push(1);
        }
        sizes.sort_unstable();
        sizes.dedup();
        KleisliCat { monad, sizes }
    }

    pub fn morphism(&self, src: usize, tgt: usize, table: Vec<TValue>) -> Result<KleisliMorphism> {
        if table.len() != src {
            return Err(Error::DimensionMismatch(
                "kleisli table length must equal source size".into(),
            ));
        }
        Ok(KleisliMorphism { src, tgt, table })
    }
}

impl GsCategory for KleisliCat {
    type Obj = usize;
    type Mor = KleisliMorphism;

    fn name(&self) -> String {
        format!("kleisli[{}]{:?}", self.monad.name(), self.sizes)
    }

    fn objects(&self) -> Vec<usize> {
        self.sizes.clone()
    }

    fn unit(&self) -> usize {
        1
    }

    fn tensor_obj(&self, a: &usize, b: &usize) -> Option<usize> {
        Some(a * b)
    }

    fn mor_dom(&self, f: &KleisliMorphism) -> usize {
        f.src
    }

    fn mor_cod(&self, f: &KleisliMorphism) -> usize {
        f.tgt
    }

    fn identity(&self, a: &usize) -> Option<KleisliMorphism> {
        Some(KleisliMorphism {
            src: *a,
            tgt: *a,
            table: (0..*a).map(|x| self.monad.unit(*a, x)).collect(),
        })
    }

    /// `(g ∘ f)(x) = μ(T(g)(f(x)))`, i.e. bind.
    fn compose(&self, g: &KleisliMorphism, f: &KleisliMorphism) -> Option<KleisliMorphism> {
        if f.tgt != g.src {
            return None;
        }
        Some(KleisliMorphism {
            src: f.src,
            tgt: g.tgt,
            table: f
                .table
                .iter()
                .map(|v| self.monad.mult_over(g.tgt, &g.table, v))
                .collect(),
        })
    }

    /// Tensor via the lax structure `c` of the monad.
    fn tensor_mor(&self, f: &KleisliMorphism, g: &KleisliMorphism) -> Option<KleisliMorphism> {
        let mut table = Vec::with_capacity(f.src * g.src);
        for x in 0..f.src {
            for y in 0..g.src {
                table.push(self.monad.lax(f.tgt, g.tgt, &f.table[x], &g.table[y]));
            }
        }
        Some(KleisliMorphism {
            src: f.src * g.src,
            tgt: f.tgt * g.tgt,
            table,
        })
    }

    fn symmetry(&self, a: &usize, b: &usize) -> Option<KleisliMorphism> {
        let (m, n) = (*a, *b);
        Some(KleisliMorphism {
            src: m * n,
            tgt: n * m,
            table: (0..m * n)
                .map(|k| {
                    let (x, y) = (k / n, k % n);
                    self.monad.unit(n * m, y * m + x)
                })
                .collect(),
        })
    }

    /// `∇♯ = η ∘ ∇`.
    fn dup(&self, a: &usize) -> Option<KleisliMorphism> {
        let n = *a;
        Some(KleisliMorphism {
            src: n,
            tgt: n * n,
            table: (0..n).map(|x| self.monad.unit(n * n, x * n + x)).collect(),
        })
    }

    /// `!♯ = η ∘ !`.
    fn discharge(&self, a: &usize) -> Option<KleisliMorphism> {
        Some(KleisliMorphism {
            src: *a,
            tgt: 1,
            table: (0..*a).map(|_| self.monad.unit(1, 0)).collect(),
        })
    }

    fn has_order(&self) -> bool {
        true
    }

    /// `f ≤ g` iff the representatives compare pointwise in the value order.
    fn leq(&self, f: &KleisliMorphism, g: &KleisliMorphism) -> Option<bool> {
        if f.src != g.src || f.tgt != g.tgt {
            return None;
        }
        Some(
            f.table
                .iter()
                .zip(&g.table)
                .all(|(v, w)| self.monad.value_leq(v, w)),
        )
    }

    fn hom_size(&self, a: &usize, b: &usize) -> Option<u128> {
        self.monad.value_count(*b)?.checked_pow(*a as u32)
    }

    fn hom(&self, a: &usize, b: &usize, cap: u64) -> Result<Vec<KleisliMorphism>> {
        let size = self.hom_size(a, b).ok_or_else(|| {
            Error::Infeasible(format!(
                "hom({}, {}) of the {} Kleisli category is not enumerable",
                a,
                b,
                self.monad.name()
            ))
        })?;
        if size > cap as u128 {
            return Err(Error::Infeasible(format!(
                "hom({}, {}) has {} morphisms, cap is {}",
                a, b, size, cap
            )));
        }
        let values = self.monad.enumerate_values(*b).unwrap();
        let mut out = Vec::with_capacity(size as usize);
        let mut idx = vec![0usize; *a];
        loop {
            out.push(KleisliMorphism {
                src: *a,
                tgt: *b,
                table: idx.iter().map(|&i| values[i].clone()).collect(),
            });
            let mut k = *a;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < values.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

/// `F_T : A -> A_T`, identity on objects, `F_T(f)♯ = η ∘ f`. Strict
/// gs-monoidal. The base is the category of discretely preordered finite
/// sets.
pub fn kleisli_f_t<'a>(
    base: &'a FinPreordCat,
    kleisli: &'a KleisliCat,
) -> FunctorData<'a, FinPreordCat, KleisliCat> {
    let monad = kleisli.monad;
    FunctorData {
        name: format!("F_T[{}]", monad.name()),
        source: base,
        target: kleisli,
        obj_map: Box::new(|p| Some(p.size())),
        mor_map: Box::new(move |f| {
            let tgt = f.tgt.size();
            Some(KleisliMorphism {
                src: f.src.size(),
                tgt,
                table: (0..f.src.size()).map(|x| monad.unit(tgt, f.apply(x))).collect(),
            })
        }),
        laxator: Some(Box::new(move |a, b| {
            kleisli.identity(&(a.size() * b.size()))
        })),
        unit_lax: kleisli.identity(&1),
        oplaxator: Some(Box::new(move |a, b| {
            kleisli.identity(&(a.size() * b.size()))
        })),
        unit_oplax: kleisli.identity(&1),
    }
}

/// `G_T : A_T -> A`, `X ↦ T(X)` carrying the value order, `G_T(f) = μ∘T(f♯)`,
/// lax structure `ψ = c`, `ψ₀ = η_I`.
pub fn kleisli_g_t<'a>(
    kleisli: &'a KleisliCat,
    base: &'a FinPreordCat,
) -> FunctorData<'a, KleisliCat, FinPreordCat> {
    let monad = kleisli.monad;
    let cap = base.size_cap;
    let value_obj = move |n: usize| -> Option<(Vec<TValue>, Rc<FinPreord>)> {
        monad.value_preord(n, cap)
    };
    FunctorData {
        name: format!("G_T[{}]", monad.name()),
        source: kleisli,
        target: base,
        obj_map: Box::new(move |n| value_obj(*n).map(|(_, p)| p)),
        mor_map: Box::new(move |f| {
            let (src_vals, src_p) = value_obj(f.src)?;
            let (_, tgt_p) = value_obj(f.tgt)?;
            let tgt_ix = ValueIndex::new(&monad, f.tgt)?;
            let values = src_vals
                .iter()
                .map(|v| tgt_ix.index[&monad.mult_over(f.tgt, &f.table, v)])
                .collect();
            Some(MonotoneMap::new_unchecked(src_p, tgt_p, values))
        }),
        laxator: Some(Box::new(move |m, n| {
            let (mv, mp) = value_obj(*m)?;
            let (nv, np) = value_obj(*n)?;
            let (_, mnp) = value_obj(m * n)?;
            let mn_ix = ValueIndex::new(&monad, m * n)?;
            let src = base.rc_product(&mp, &np)?;
            let mut values = Vec::with_capacity(mv.len() * nv.len());
            for v in &mv {
                for w in &nv {
                    values.push(mn_ix.index[&monad.lax(*m, *n, v, w)]);
                }
            }
            Some(MonotoneMap::new_unchecked(src, mnp, values))
        })),
        unit_lax: (|| {
            let (_, p1) = MonadSpec::value_preord(&monad, 1, cap)?;
            let ix = ValueIndex::new(&monad, 1)?;
            Some(MonotoneMap::new_unchecked(
                base.unit(),
                p1,
                vec![ix.index[&monad.unit(1, 0)]],
            ))
        })(),
        oplaxator: None,
        unit_oplax: None,
    }
}

/// The composite of `G_T` with the inclusion of finite sets into spans:
/// `X ↦ T(X)` (as a set of value indices), `f ↦ (T(src) ←id T(src) → T(tgt))`
/// with the bind function as right leg. Only defined for gs-monoidal monads.
pub fn kleisli_to_pspan<'a>(
    kleisli: &'a KleisliCat,
    target: &'a PSpanCat,
    cfg: &CheckConfig,
) -> Result<FunctorData<'a, KleisliCat, PSpanCat>> {
    let monad = kleisli.monad;
    let max_size = kleisli.sizes.iter().copied().max().unwrap_or(1);
    let gs = check_gs_monoidal_monad(&monad, max_size, cfg);
    if !gs.passed() {
        return Err(Error::NotGsMonoidalMonad(format!(
            "{}: {}",
            monad.name(),
            gs.witness
                .map(|w| w.to_string())
                .unwrap_or_else(|| "gs-monoidal monad equations fail".into())
        )));
    }
    let graph_span = move |src_count: usize, values: Vec<usize>| -> Span {
        let left: Vec<usize> = (0..src_count).collect();
        Span::new(src_count, values.len(), &left, &values).ok().unwrap_or_else(|| Span::identity(0))
    };
    let _ = &graph_span;
    Ok(FunctorData {
        name: format!("G_T;incl[{}]", monad.name()),
        source: kleisli,
        target,
        obj_map: Box::new(move |n| monad.value_count(*n).map(|c| c as usize)),
        mor_map: Box::new(move |f| {
            let src_count = monad.value_count(f.src)? as usize;
            let tgt_count = monad.value_count(f.tgt)? as usize;
            let src_vals = monad.enumerate_values(f.src)?;
            let tgt_ix = ValueIndex::new(&monad, f.tgt)?;
            let left: Vec<usize> = (0..src_count).collect();
            let right: Vec<usize> = src_vals
                .iter()
                .map(|v| tgt_ix.index[&monad.mult_over(f.tgt, &f.table, v)] as usize)
                .collect();
            let _ = tgt_count;
            Span::new(src_count, tgt_count, &left, &right).ok()
        }),
        laxator: Some(Box::new(move |m, n| {
            let mc = monad.value_count(*m)? as usize;
            let nc = monad.value_count(*n)? as usize;
            let mnc = monad.value_count(m * n)? as usize;
            let mv = monad.enumerate_values(*m)?;
            let nv = monad.enumerate_values(*n)?;
            let mn_ix = ValueIndex::new(&monad, m * n)?;
            let left: Vec<usize> = (0..mc * nc).collect();
            let mut right = Vec::with_capacity(mc * nc);
            for v in &mv {
                for w in &nv {
                    right.push(mn_ix.index[&monad.lax(*m, *n, v, w)] as usize);
                }
            }
            Span::new(mc * nc, mnc, &left, &right).ok()
        })),
        unit_lax: (|| {
            let c1 = monad.value_count(1)? as usize;
            let ix = ValueIndex::new(&monad, 1)?;
            Span::new(1, c1, &[0], &[ix.index[&monad.unit(1, 0)] as usize]).ok()
        })(),
        oplaxator: None,
        unit_oplax: None,
    })
}

/// The subset-to-row encoding of a powerset Kleisli morphism.
pub fn powerset_kleisli_to_rel(f: &KleisliMorphism) -> Result<Rel> {
    let mut r = Rel::empty(f.src, f.tgt);
    for (x, v) in f.table.iter().enumerate() {
        match v {
            TValue::Subset(mask) => {
                for y in mask.ones() {
                    r.set(x, y);
                }
            }
            TValue::Lift(Some(y)) => r.set(x, *y as usize),
            TValue::Lift(None) => {}
            other => {
                return Err(Error::TypeMismatch(format!(
                    "cannot encode {} as a relation row",
                    other
                )))
            }
        }
    }
    Ok(r)
}

/// The powerset Kleisli category on the given sizes is isomorphic to FinRel
/// via the subset-to-row encoding: bijective hom-sets, structure arrows,
/// composition, tensor and order all transported on the nose.
pub fn check_powerset_kleisli_matches_finrel(sizes: &[usize], cfg: &CheckConfig) -> LawReport {
    let mut run = Run::new("check_powerset_kleisli_matches_finrel", cfg);
    let kl = KleisliCat::new(MonadSpec::powerset(), sizes.to_vec());
    let fr = FinRelCat::new(sizes.to_vec());
    let objs = kl.objects();

    for a in &objs {
        for b in &objs {
            let (Ok(kms), Ok(rels)) = (kl.hom(a, b, cfg.hom_cap), fr.hom(a, b, cfg.hom_cap))
            else {
                run.skip_group("iso-hom-bijection");
                continue;
            };
            run.group("iso-hom-bijection", &[1], |_| {
                if kms.len() != rels.len() {
                    return Outcome::Fail(Witness {
                        law: "iso-hom-bijection".into(),
                        location: format!("hom({}, {})", a, b),
                        items: vec![],
                        lhs: format!("{} kleisli morphisms", kms.len()),
                        rhs: format!("{} relations", rels.len()),
                    });
                }
                // the encoding is injective on the full hom-set, hence bijective
                let mut images: Vec<Rel> = kms
                    .iter()
                    .map(|f| powerset_kleisli_to_rel(f).unwrap())
                    .collect();
                images.sort();
                images.dedup();
                if images.len() == rels.len() {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        law: "iso-hom-bijection".into(),
                        location: format!("hom({}, {})", a, b),
                        items: vec![],
                        lhs: format!("{} distinct images", images.len()),
                        rhs: format!("{} relations", rels.len()),
                    })
                }
            });

            let (nk, _) = (kms.len() as u64, rels.len());
            run.group("iso-order", &[nk, nk], |c| {
                let f = &kms[c[0] as usize];
                let g = &kms[c[1] as usize];
                let lhs = kl.leq(f, g);
                let rhs = Rel::leq(
                    &powerset_kleisli_to_rel(f).unwrap(),
                    &powerset_kleisli_to_rel(g).unwrap(),
                );
                if lhs == rhs {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        law: "iso-order".into(),
                        location: format!("hom({}, {})", a, b),
                        items: vec![format!("f = {}", f), format!("g = {}", g)],
                        lhs: format!("kleisli order: {:?}", lhs),
                        rhs: format!("inclusion: {:?}", rhs),
                    })
                }
            });
        }
    }

    // structure arrows correspond
    run.group("iso-structure", &[objs.len() as u64, objs.len() as u64], |c| {
        let (a, b) = (&objs[c[0] as usize], &objs[c[1] as usize]);
        let checks = [
            (powerset_kleisli_to_rel(&kl.identity(a).unwrap()), Rel::identity(*a)),
            (powerset_kleisli_to_rel(&kl.dup(a).unwrap()), Rel::dup(*a)),
            (
                powerset_kleisli_to_rel(&kl.discharge(a).unwrap()),
                Rel::discharge(*a),
            ),
            (
                powerset_kleisli_to_rel(&kl.symmetry(a, b).unwrap()),
                Rel::symmetry(*a, *b),
            ),
        ];
        for (got, want) in checks {
            match got {
                Ok(got) if got == want => {}
                Ok(got) => {
                    return Outcome::Fail(Witness {
                        law: "iso-structure".into(),
                        location: format!("objects ({}, {})", a, b),
                        items: vec![],
                        lhs: format!("{}", got),
                        rhs: format!("{}", want),
                    })
                }
                Err(_) => return Outcome::Skip,
            }
        }
        Outcome::Ok
    });

    // composition and tensor transport
    for a in &objs {
        for b in &objs {
            for d in &objs {
                let (Ok(fs), Ok(gs)) = (kl.hom(a, b, cfg.hom_cap), kl.hom(b, d, cfg.hom_cap))
                else {
                    run.skip_group("iso-compose");
                    continue;
                };
                run.group("iso-compose", &[fs.len() as u64, gs.len() as u64], |c| {
                    let f = &fs[c[0] as usize];
                    let g = &gs[c[1] as usize];
                    let lhs = powerset_kleisli_to_rel(&kl.compose(g, f).unwrap()).unwrap();
                    let rhs = Rel::compose(
                        &powerset_kleisli_to_rel(g).unwrap(),
                        &powerset_kleisli_to_rel(f).unwrap(),
                    )
                    .unwrap();
                    if lhs == rhs {
                        Outcome::Ok
                    } else {
                        Outcome::Fail(Witness {
                            law: "iso-compose".into(),
                            location: format!("{} -> {} -> {}", a, b, d),
                            items: vec![format!("f = {}", f), format!("g = {}", g)],
                            lhs: format!("{}", lhs),
                            rhs: format!("{}", rhs),
                        })
                    }
                });
            }
            let (Ok(fs), Ok(gs)) = (kl.hom(a, b, cfg.hom_cap), kl.hom(&2.min(*a), b, cfg.hom_cap))
            else {
                run.skip_group("iso-tensor");
                continue;
            };
            run.group("iso-tensor", &[fs.len() as u64, gs.len() as u64], |c| {
                let f = &fs[c[0] as usize];
                let g = &gs[c[1] as usize];
                let lhs = powerset_kleisli_to_rel(&kl.tensor_mor(f, g).unwrap()).unwrap();
                let rhs = Rel::tensor(
                    &powerset_kleisli_to_rel(f).unwrap(),
                    &powerset_kleisli_to_rel(g).unwrap(),
                );
                if lhs == rhs {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        law: "iso-tensor".into(),
                        location: format!("hom({}, {}) ⊗ …", a, b),
                        items: vec![format!("f = {}", f), format!("g = {}", g)],
                        lhs: format!("{}", lhs),
                        rhs: format!("{}", rhs),
                    })
                }
            });
        }
    }

    run.finish()
}

/// Nonempty-powerset Kleisli morphisms encode exactly the total relations;
/// lifting Kleisli morphisms exactly the partial functions, ordered by graph
/// inclusion.
pub fn check_kleisli_subcategories(sizes: &[usize], cfg: &CheckConfig) -> LawReport {
    let mut run = Run::new("check_kleisli_subcategories", cfg);
    let ne = KleisliCat::new(MonadSpec::nonempty_powerset(), sizes.to_vec());
    let lift = KleisliCat::new(MonadSpec::lifting(), sizes.to_vec());
    let objs = ne.objects();

    for a in &objs {
        for b in &objs {
            let Ok(ms) = ne.hom(a, b, cfg.hom_cap) else {
                run.skip_group("nonempty-is-total-relations");
                continue;
            };
            let total_count: u128 = ((1u128 << b) - 1).pow(*a as u32);
            run.group("nonempty-is-total-relations", &[ms.len() as u64 + 1], |c| {
                if c[0] as usize == ms.len() {
                    return if ms.len() as u128 == total_count {
                        Outcome::Ok
                    } else {
                        Outcome::Fail(Witness {
                            law: "nonempty-is-total-relations".into(),
                            location: format!("hom({}, {})", a, b),
                            items: vec![],
                            lhs: format!("{} kleisli morphisms", ms.len()),
                            rhs: format!("{} total relations", total_count),
                        })
                    };
                }
                let f = &ms[c[0] as usize];
                let r = powerset_kleisli_to_rel(f).unwrap();
                if r.is_total_relation() {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        law: "nonempty-is-total-relations".into(),
                        location: format!("hom({}, {})", a, b),
                        items: vec![format!("f = {}", f)],
                        lhs: format!("{}", r),
                        rhs: "a total relation".into(),
                    })
                }
            });

            let Ok(ms) = lift.hom(a, b, cfg.hom_cap) else {
                run.skip_group("lifting-is-partial-functions");
                continue;
            };
            let pf_count: u128 = ((*b as u128) + 1).pow(*a as u32);
            let n = ms.len() as u64;
            run.group("lifting-is-partial-functions", &[n + 1], |c| {
                if c[0] as usize == ms.len() {
                    return if ms.len() as u128 == pf_count {
                        Outcome::Ok
                    } else {
                        Outcome::Fail(Witness {
                            law: "lifting-is-partial-functions".into(),
                            location: format!("hom({}, {})", a, b),
                            items: vec![],
                            lhs: format!("{} kleisli morphisms", ms.len()),
                            rhs: format!("{} partial functions", pf_count),
                        })
                    };
                }
                let f = &ms[c[0] as usize];
                let r = powerset_kleisli_to_rel(f).unwrap();
                if r.is_partial_function() {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        law: "lifting-is-partial-functions".into(),
                        location: format!("hom({}, {})", a, b),
                        items: vec![format!("f = {}", f)],
                        lhs: format!("{}", r),
                        rhs: "a partial function".into(),
                    })
                }
            });

            // lifting order is graph inclusion
            run.group("lifting-order-is-inclusion", &[n, n], |c| {
                let f = &ms[c[0] as usize];
                let g = &ms[c[1] as usize];
                let lhs = lift.leq(f, g);
                let rhs = Rel::leq(
                    &powerset_kleisli_to_rel(f).unwrap(),
                    &powerset_kleisli_to_rel(g).unwrap(),
                );
                if lhs == rhs {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        law: "lifting-order-is-inclusion".into(),
                        location: format!("hom({}, {})", a, b),
                        items: vec![format!("f = {}", f), format!("g = {}", g)],
                        lhs: format!("kleisli order {:?}", lhs),
                        rhs: format!("graph inclusion {:?}", rhs),
                    })
                }
            });
        }
    }

    run.finish()
}

/// Scalar endo-arrows of the unit in the multiset Kleisli category are
/// natural numbers; composition multiplies them.
pub fn multiset_scalar(k: u64) -> KleisliMorphism {
    KleisliMorphism {
        src: 1,
        tgt: 1,
        table: vec![TValue::Multiset(vec![k])],
    }
}

pub fn multiset_scalar_value(f: &KleisliMorphism) -> Option<u64> {
    match f.table.as_slice() {
        [TValue::Multiset(v)] if v.len() == 1 => Some(v[0]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::dom_morphism;
    use crate::checks::{check_cartesian, check_gs_axioms, check_oplax_cartesian};
    use crate::functor::{
        check_colax_cartesian, check_gs_functor, check_lax_monoidal, GsFlavor,
    };

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    #[test]
    fn kleisli_gs_axioms_for_all_enumerable_monads() {
        for monad in [
            MonadSpec::identity(),
            MonadSpec::powerset(),
            MonadSpec::nonempty_powerset(),
            MonadSpec::lifting(),
            MonadSpec::writer(2),
            MonadSpec::writer(3),
        ] {
            let cat = KleisliCat::new(monad, vec![1, 2, 3]);
            let rep = check_gs_axioms(&cat, &cfg());
            assert!(rep.passed(), "{}: {}", monad.name(), rep);
        }
    }

    #[test]
    fn kleisli_oplax_for_colax_cartesian_monads() {
        for monad in [
            MonadSpec::powerset(),
            MonadSpec::nonempty_powerset(),
            MonadSpec::lifting(),
            MonadSpec::identity(),
        ] {
            let cat = KleisliCat::new(monad, vec![1, 2]);
            let rep = check_oplax_cartesian(&cat, &cfg()).unwrap();
            assert!(rep.passed(), "{}: {}", monad.name(), rep);
        }
    }

    #[test]
    fn dup_sharp_equals_lax_after_unit() {
        // ∇♯ = c ∘ ∇_T ∘ η, elementwise for every built-in
        for monad in crate::monad::builtin_monads() {
            for n in 1..=3usize {
                let cat = KleisliCat::new(monad, vec![n]);
                let dup = cat.dup(&n).unwrap();
                for x in 0..n {
                    let v = monad.unit(n, x);
                    let alt = monad.lax(n, n, &v, &v);
                    assert_eq!(dup.table[x], alt, "{} at size {}", monad.name(), n);
                }
            }
        }
    }

    #[test]
    fn writer_composition_multiplies_weights() {
        let cat = KleisliCat::new(MonadSpec::writer(2), vec![1]);
        let f = cat
            .morphism(1, 1, vec![TValue::Writer(1, 0)])
            .unwrap();
        let g = cat
            .morphism(1, 1, vec![TValue::Writer(1, 0)])
            .unwrap();
        let gf = cat.compose(&g, &f).unwrap();
        assert_eq!(gf.table[0], TValue::Writer(0, 0));
    }

    #[test]
    fn writer_kleisli_is_not_cartesian() {
        // the product universal property fails already on the scalar
        // hom-set of the unit: weights 1 and 0 admit no mediating arrow
        let cat = KleisliCat::new(MonadSpec::writer(2), vec![1, 2]);
        let rep = check_cartesian(&cat, &cfg());
        assert!(!rep.passed());
        let w = rep.witness.unwrap();
        assert_eq!(w.law, "all-arrows-total-functional");
        // and the identity-monad Kleisli category is cartesian
        let id_cat = KleisliCat::new(MonadSpec::identity(), vec![1, 2, 3]);
        assert!(check_cartesian(&id_cat, &cfg()).passed());
    }

    #[test]
    fn f_t_is_strict_gs_for_every_enumerable_monad() {
        for monad in [
            MonadSpec::identity(),
            MonadSpec::powerset(),
            MonadSpec::lifting(),
            MonadSpec::writer(2),
        ] {
            let base = FinPreordCat::discrete_sizes(&[1, 2], 4096);
            let kl = KleisliCat::new(monad, vec![1, 2]);
            let f = kleisli_f_t(&base, &kl);
            let rep = check_gs_functor(&f, GsFlavor::Strict, &cfg()).unwrap();
            assert!(rep.passed(), "{}: {}", monad.name(), rep);
            let rep = check_lax_monoidal(&f, &cfg()).unwrap();
            assert!(rep.passed(), "{}: {}", monad.name(), rep);
        }
    }

    #[test]
    fn g_t_is_lax_monoidal_and_colax_cartesian_for_powerset() {
        let kl = KleisliCat::new(MonadSpec::powerset(), vec![1, 2]);
        let base = FinPreordCat::new(vec![], 4096);
        let g = kleisli_g_t(&kl, &base);
        let rep = check_lax_monoidal(&g, &cfg()).unwrap();
        assert!(rep.passed(), "{}", rep);
        let rep = check_colax_cartesian(&g, &cfg()).unwrap();
        assert!(rep.passed(), "{}", rep);
        // but not lax gs-monoidal: the powerset monad is not gs-monoidal
        let rep = check_gs_functor(&g, GsFlavor::Lax, &cfg()).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.witness.unwrap().law, "gs-lax-dup-triangle");
    }

    #[test]
    fn g_t_lax_gs_iff_gs_monoidal_monad() {
        for monad in [
            MonadSpec::identity(),
            MonadSpec::powerset(),
            MonadSpec::lifting(),
            MonadSpec::writer(2),
        ] {
            let kl = KleisliCat::new(monad, vec![1, 2]);
            let base = FinPreordCat::new(vec![], 4096);
            let g = kleisli_g_t(&kl, &base);
            let functor_verdict = check_gs_functor(&g, GsFlavor::Lax, &cfg()).unwrap().passed();
            let monad_verdict = check_gs_monoidal_monad(&monad, 2, &cfg()).passed();
            assert_eq!(functor_verdict, monad_verdict, "{}", monad.name());
        }
    }

    #[test]
    fn g_t_fails_colax_with_reversed_target_order() {
        use crate::category::OrderOverride;
        let kl = KleisliCat::new(MonadSpec::powerset(), vec![1, 2]);
        let base = FinPreordCat::new(vec![], 4096);
        let rev = OrderOverride::reversed(&base);
        let inner = kleisli_g_t(&kl, &base);
        // same maps, target order reversed
        let g = FunctorData {
            name: "G_T reversed".into(),
            source: &kl,
            target: &rev,
            obj_map: Box::new(move |n| (inner.obj_map)(n)),
            mor_map: Box::new(move |f| (inner.mor_map)(f)),
            laxator: None,
            unit_lax: None,
            oplaxator: None,
            unit_oplax: None,
        };
        // rebuild the laxator against the reversed wrapper
        let kl2 = KleisliCat::new(MonadSpec::powerset(), vec![1, 2]);
        let base2 = FinPreordCat::new(vec![], 4096);
        let fresh = kleisli_g_t(&kl2, &base2);
        let g = FunctorData {
            laxator: Some(Box::new(move |a, b| (fresh.laxator.as_ref().unwrap())(a, b))),
            unit_lax: kleisli_g_t(&kl, &base).unit_lax,
            ..g
        };
        let rep = check_colax_cartesian(&g, &cfg()).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn kleisli_to_pspan_for_identity_and_rejections() {
        let cfg = cfg();
        let id_kl = KleisliCat::new(MonadSpec::identity(), vec![1, 2]);
        let pspan = PSpanCat::new(vec![1, 2, 4], 4);
        let f = kleisli_to_pspan(&id_kl, &pspan, &cfg).unwrap();
        let rep = check_gs_functor(&f, GsFlavor::Lax, &cfg).unwrap();
        assert!(rep.passed(), "{}", rep);
        let rep = check_lax_monoidal(&f, &cfg).unwrap();
        assert!(rep.passed(), "{}", rep);

        let pow_kl = KleisliCat::new(MonadSpec::powerset(), vec![1, 2]);
        assert!(matches!(
            kleisli_to_pspan(&pow_kl, &pspan, &cfg),
            Err(Error::NotGsMonoidalMonad(_))
        ));
        let wr_kl = KleisliCat::new(MonadSpec::writer(2), vec![1, 2]);
        assert!(matches!(
            kleisli_to_pspan(&wr_kl, &pspan, &cfg),
            Err(Error::NotGsMonoidalMonad(_))
        ));
    }

    #[test]
    fn powerset_kleisli_is_finrel_small() {
        let rep = check_powerset_kleisli_matches_finrel(&[1, 2], &cfg());
        assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn subcategory_characterizations_small() {
        let rep = check_kleisli_subcategories(&[1, 2], &cfg());
        assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn multiset_scalar_dom_squares() {
        let cat = KleisliCat::new(MonadSpec::multiset(), vec![1]);
        for k in 0..=10u64 {
            let f = multiset_scalar(k);
            let d = dom_morphism(&cat, &f).unwrap();
            let fd = cat.compose(&f, &d).unwrap();
            assert_eq!(multiset_scalar_value(&fd), Some(k * k));
        }
    }

    #[test]
    fn kleisli_fixture_roundtrip() {
        use crate::monad::KleisliFixture;
        let fx = KleisliFixture {
            monad: "lifting".into(),
            src: 2,
            tgt: 2,
            table: vec![serde_json::json!(null), serde_json::json!(1)],
        };
        let (monad, values) = fx.decode().unwrap();
        assert_eq!(monad, MonadSpec::lifting());
        assert_eq!(values, vec![TValue::Lift(None), TValue::Lift(Some(1))]);
    }
}
