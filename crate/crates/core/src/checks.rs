//! Generic law checkers over any [`GsCategory`].
//!
//! Each checker stops at the first violation and records the offending
//! instance in full, with a deterministic iteration order so failures are
//! reproducible. Instances whose structure is not expressible in a truncated
//! presentation are counted as skipped.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::category::{
    dom_morphism, equiv, is_functional, is_total, item, GsCategory, Homs,
};
use crate::error::{Error, Result};
use crate::report::{CheckConfig, LawReport, Outcome, Run, Witness};

fn witness<C: GsCategory>(
    cat: &C,
    law: &str,
    location: impl Into<String>,
    items: Vec<String>,
    lhs: &C::Mor,
    rhs: &C::Mor,
) -> Witness {
    let _ = cat;
    Witness {
        law: law.to_string(),
        location: location.into(),
        items,
        lhs: format!("{}", lhs),
        rhs: format!("{}", rhs),
    }
}

fn eq_or_fail<C: GsCategory>(
    cat: &C,
    law: &str,
    location: &str,
    items: Vec<String>,
    lhs: Option<C::Mor>,
    rhs: Option<C::Mor>,
) -> Outcome {
    match (lhs, rhs) {
        (Some(l), Some(r)) => {
            if l == r {
                Outcome::Ok
            } else {
                Outcome::Fail(witness(cat, law, location.to_string(), items, &l, &r))
            }
        }
        _ => Outcome::Skip,
    }
}

fn leq_or_fail<C: GsCategory>(
    cat: &C,
    law: &str,
    location: &str,
    items: Vec<String>,
    lhs: Option<C::Mor>,
    rhs: Option<C::Mor>,
) -> Outcome {
    match (lhs, rhs) {
        (Some(l), Some(r)) => match cat.leq(&l, &r) {
            Some(true) => Outcome::Ok,
            Some(false) => Outcome::Fail(witness(cat, law, location.to_string(), items, &l, &r)),
            None => Outcome::Skip,
        },
        _ => Outcome::Skip,
    }
}

/// Category laws, strict monoidal structure and the symmetry axioms,
/// quantified over the fixture objects and their hom-sets.
pub fn check_category_and_monoidal<C: GsCategory>(cat: &C, cfg: &CheckConfig) -> LawReport {
    let mut run = Run::new("check_category_and_monoidal", cfg);
    let objs = cat.objects();
    let unit = cat.unit();
    let mut homs = Homs::new(cat, cfg.hom_cap);

    // tensor-object strictness
    run.group(
        "tensor-object-unit",
        &[objs.len() as u64],
        |c| {
            let a = &objs[c[0] as usize];
            match (cat.tensor_obj(a, &unit), cat.tensor_obj(&unit, a)) {
                (Some(au), Some(ua)) => {
                    if au == *a && ua == *a {
                        Outcome::Ok
                    } else {
                        Outcome::Fail(Witness {
                            law: "tensor-object-unit".into(),
                            location: format!("object {}", a),
                            items: vec![],
                            lhs: format!("{} ⊗ I = {}", a, au),
                            rhs: format!("I ⊗ {} = {}", a, ua),
                        })
                    }
                }
                _ => Outcome::Skip,
            }
        },
    );
    run.group(
        "tensor-object-associativity",
        &[objs.len() as u64, objs.len() as u64, objs.len() as u64],
        |c| {
            let (a, b, d) = (
                &objs[c[0] as usize],
                &objs[c[1] as usize],
                &objs[c[2] as usize],
            );
            let l = cat
                .tensor_obj(a, b)
                .and_then(|ab| cat.tensor_obj(&ab, d));
            let r = cat
                .tensor_obj(b, d)
                .and_then(|bd| cat.tensor_obj(a, &bd));
            match (l, r) {
                (Some(l), Some(r)) => {
                    if l == r {
                        Outcome::Ok
                    } else {
                        Outcome::Fail(Witness {
                            law: "tensor-object-associativity".into(),
                            location: format!("objects ({}, {}, {})", a, b, d),
                            items: vec![],
                            lhs: format!("{}", l),
                            rhs: format!("{}", r),
                        })
                    }
                }
                _ => Outcome::Skip,
            }
        },
    );

    // unitality of composition
    for a in &objs {
        for b in &objs {
            let Some(fs) = homs.get(a, b) else {
                run.skip_group("compose-unitality");
                continue;
            };
            let ida = cat.identity(a);
            let idb = cat.identity(b);
            run.group("compose-unitality", &[fs.len() as u64], |c| {
                let f = &fs[c[0] as usize];
                let (Some(ida), Some(idb)) = (ida.clone(), idb.clone()) else {
                    return Outcome::Skip;
                };
                let left = cat.compose(&idb, f);
                let right = cat.compose(f, &ida);
                match (left, right) {
                    (Some(l), Some(r)) => {
                        if l == *f && r == *f {
                            Outcome::Ok
                        } else {
                            Outcome::Fail(witness(
                                cat,
                                "compose-unitality",
                                format!("hom({}, {})", a, b),
                                vec![item(cat, "f", f)],
                                &l,
                                &r,
                            ))
                        }
                    }
                    _ => Outcome::Skip,
                }
            });
        }
    }

    // associativity of composition
    for a in &objs {
        for b in &objs {
            for d in &objs {
                for e in &objs {
                    let (Some(fs), Some(gs), Some(hs)) =
                        (homs.get(a, b), homs.get(b, d), homs.get(d, e))
                    else {
                        run.skip_group("compose-associativity");
                        continue;
                    };
                    run.group(
                        "compose-associativity",
                        &[fs.len() as u64, gs.len() as u64, hs.len() as u64],
                        |c| {
                            let f = &fs[c[0] as usize];
                            let g = &gs[c[1] as usize];
                            let h = &hs[c[2] as usize];
                            let l = cat.compose(g, f).and_then(|gf| cat.compose(h, &gf));
                            let r = cat.compose(h, g).and_then(|hg| cat.compose(&hg, f));
                            eq_or_fail(
                                cat,
                                "compose-associativity",
                                &format!("hom chain {} -> {} -> {} -> {}", a, b, d, e),
                                vec![item(cat, "f", f), item(cat, "g", g), item(cat, "h", h)],
                                l,
                                r,
                            )
                        },
                    );
                }
            }
        }
    }

    // identities are tensor-multiplicative
    run.group(
        "tensor-identities",
        &[objs.len() as u64, objs.len() as u64],
        |c| {
            let (a, b) = (&objs[c[0] as usize], &objs[c[1] as usize]);
            let Some(ab) = cat.tensor_obj(a, b) else {
                return Outcome::Skip;
            };
            let l = match (cat.identity(a), cat.identity(b)) {
                (Some(ia), Some(ib)) => cat.tensor_mor(&ia, &ib),
                _ => None,
            };
            eq_or_fail(
                cat,
                "tensor-identities",
                &format!("objects ({}, {})", a, b),
                vec![],
                l,
                cat.identity(&ab),
            )
        },
    );

    // f ⊗ id_I = f = id_I ⊗ f
    let id_unit = cat.identity(&unit);
    for a in &objs {
        for b in &objs {
            let Some(fs) = homs.get(a, b) else {
                run.skip_group("tensor-unit-morphism");
                continue;
            };
            run.group("tensor-unit-morphism", &[fs.len() as u64], |c| {
                let f = &fs[c[0] as usize];
                let Some(iu) = id_unit.clone() else {
                    return Outcome::Skip;
                };
                let l = cat.tensor_mor(f, &iu);
                let r = cat.tensor_mor(&iu, f);
                match (l, r) {
                    (Some(l), Some(r)) => {
                        if l == *f && r == *f {
                            Outcome::Ok
                        } else {
                            Outcome::Fail(witness(
                                cat,
                                "tensor-unit-morphism",
                                format!("hom({}, {})", a, b),
                                vec![item(cat, "f", f)],
                                &l,
                                &r,
                            ))
                        }
                    }
                    _ => Outcome::Skip,
                }
            });
        }
    }

    // bifunctoriality of ⊗
    for a in &objs {
        for b in &objs {
            for d in &objs {
                for a2 in &objs {
                    for b2 in &objs {
                        for d2 in &objs {
                            let (Some(fs), Some(gs), Some(hs), Some(ks)) = (
                                homs.get(a, b),
                                homs.get(b, d),
                                homs.get(a2, b2),
                                homs.get(b2, d2),
                            ) else {
                                run.skip_group("tensor-bifunctoriality");
                                continue;
                            };
                            run.group(
                                "tensor-bifunctoriality",
                                &[
                                    fs.len() as u64,
                                    gs.len() as u64,
                                    hs.len() as u64,
                                    ks.len() as u64,
                                ],
                                |c| {
                                    let f = &fs[c[0] as usize];
                                    let g = &gs[c[1] as usize];
                                    let h = &hs[c[2] as usize];
                                    let k = &ks[c[3] as usize];
                                    let l = match (cat.compose(g, f), cat.compose(k, h)) {
                                        (Some(gf), Some(kh)) => cat.tensor_mor(&gf, &kh),
                                        _ => None,
                                    };
                                    let r = match (cat.tensor_mor(g, k), cat.tensor_mor(f, h)) {
                                        (Some(gk), Some(fh)) => cat.compose(&gk, &fh),
                                        _ => None,
                                    };
                                    eq_or_fail(
                                        cat,
                                        "tensor-bifunctoriality",
                                        &format!(
                                            "({} -> {} -> {}) ⊗ ({} -> {} -> {})",
                                            a, b, d, a2, b2, d2
                                        ),
                                        vec![
                                            item(cat, "f", f),
                                            item(cat, "g", g),
                                            item(cat, "h", h),
                                            item(cat, "k", k),
                                        ],
                                        l,
                                        r,
                                    )
                                },
                            );
                        }
                    }
                }
            }
        }
    }

    // symmetry: involutive, natural, hexagon
    run.group(
        "symmetry-involutive",
        &[objs.len() as u64, objs.len() as u64],
        |c| {
            let (a, b) = (&objs[c[0] as usize], &objs[c[1] as usize]);
            let l = match (cat.symmetry(a, b), cat.symmetry(b, a)) {
                (Some(sab), Some(sba)) => cat.compose(&sba, &sab),
                _ => None,
            };
            let r = cat.tensor_obj(a, b).and_then(|ab| cat.identity(&ab));
            eq_or_fail(
                cat,
                "symmetry-involutive",
                &format!("objects ({}, {})", a, b),
                vec![],
                l,
                r,
            )
        },
    );

    for a in &objs {
        for b in &objs {
            for a2 in &objs {
                for b2 in &objs {
                    let (Some(fs), Some(gs)) = (homs.get(a, b), homs.get(a2, b2)) else {
                        run.skip_group("symmetry-naturality");
                        continue;
                    };
                    run.group(
                        "symmetry-naturality",
                        &[fs.len() as u64, gs.len() as u64],
                        |c| {
                            let f = &fs[c[0] as usize];
                            let g = &gs[c[1] as usize];
                            let l = match (cat.symmetry(b, b2), cat.tensor_mor(f, g)) {
                                (Some(s), Some(fg)) => cat.compose(&s, &fg),
                                _ => None,
                            };
                            let r = match (cat.tensor_mor(g, f), cat.symmetry(a, a2)) {
                                (Some(gf), Some(s)) => cat.compose(&gf, &s),
                                _ => None,
                            };
                            eq_or_fail(
                                cat,
                                "symmetry-naturality",
                                &format!("f : {} -> {}, g : {} -> {}", a, b, a2, b2),
                                vec![item(cat, "f", f), item(cat, "g", g)],
                                l,
                                r,
                            )
                        },
                    );
                }
            }
        }
    }

    run.group(
        "symmetry-hexagon",
        &[objs.len() as u64, objs.len() as u64, objs.len() as u64],
        |c| {
            let (a, b, d) = (
                &objs[c[0] as usize],
                &objs[c[1] as usize],
                &objs[c[2] as usize],
            );
            let Some(ab) = cat.tensor_obj(a, b) else {
                return Outcome::Skip;
            };
            let l = cat.symmetry(&ab, d);
            let r = match (
                cat.symmetry(a, d),
                cat.identity(b),
                cat.identity(a),
                cat.symmetry(b, d),
            ) {
                (Some(sad), Some(ib), Some(ia), Some(sbd)) => {
                    match (cat.tensor_mor(&sad, &ib), cat.tensor_mor(&ia, &sbd)) {
                        (Some(first), Some(second)) => cat.compose(&first, &second),
                        _ => None,
                    }
                }
                _ => None,
            };
            eq_or_fail(
                cat,
                "symmetry-hexagon",
                &format!("objects ({}, {}, {})", a, b, d),
                vec![],
                l,
                r,
            )
        },
    );

    run.finish()
}

/// The commutative comonoid axioms and monoidal multiplicativity of the
/// duplicators and dischargers, plus totality/functionality of the structure
/// arrows themselves.
pub fn check_gs_axioms<C: GsCategory>(cat: &C, cfg: &CheckConfig) -> LawReport {
    let mut run = Run::new("check_gs_axioms", cfg);
    let objs = cat.objects();
    let unit = cat.unit();
    let n = objs.len() as u64;

    run.group("dup-coassociativity", &[n], |c| {
        let a = &objs[c[0] as usize];
        let (Some(dup), Some(id)) = (cat.dup(a), cat.identity(a)) else {
            return Outcome::Skip;
        };
        let l = cat
            .tensor_mor(&dup, &id)
            .and_then(|di| cat.compose(&di, &dup));
        let r = cat
            .tensor_mor(&id, &dup)
            .and_then(|id_d| cat.compose(&id_d, &dup));
        eq_or_fail(
            cat,
            "dup-coassociativity",
            &format!("object {}", a),
            vec![item(cat, "∇", &dup)],
            l,
            r,
        )
    });

    run.group("dup-cocommutativity", &[n], |c| {
        let a = &objs[c[0] as usize];
        let (Some(dup), Some(sym)) = (cat.dup(a), cat.symmetry(a, a)) else {
            return Outcome::Skip;
        };
        let l = cat.compose(&sym, &dup);
        eq_or_fail(
            cat,
            "dup-cocommutativity",
            &format!("object {}", a),
            vec![item(cat, "∇", &dup)],
            l,
            Some(dup.clone()),
        )
    });

    run.group("dup-counitality", &[n], |c| {
        let a = &objs[c[0] as usize];
        let (Some(dup), Some(id), Some(bang)) = (cat.dup(a), cat.identity(a), cat.discharge(a))
        else {
            return Outcome::Skip;
        };
        let l = cat
            .tensor_mor(&id, &bang)
            .and_then(|m| cat.compose(&m, &dup));
        let r = cat
            .tensor_mor(&bang, &id)
            .and_then(|m| cat.compose(&m, &dup));
        match (l, r) {
            (Some(l), Some(r)) => {
                if l == id && r == id {
                    Outcome::Ok
                } else {
                    Outcome::Fail(witness(
                        cat,
                        "dup-counitality",
                        format!("object {}", a),
                        vec![item(cat, "∇", &dup), item(cat, "!", &bang)],
                        &l,
                        &r,
                    ))
                }
            }
            _ => Outcome::Skip,
        }
    });

    run.group("dup-multiplicativity", &[n, n], |c| {
        let (a, b) = (&objs[c[0] as usize], &objs[c[1] as usize]);
        let Some(ab) = cat.tensor_obj(a, b) else {
            return Outcome::Skip;
        };
        let l = cat.dup(&ab);
        let r = match (
            cat.dup(a),
            cat.dup(b),
            cat.identity(a),
            cat.identity(b),
            cat.symmetry(a, b),
        ) {
            (Some(da), Some(db), Some(ia), Some(ib), Some(sab)) =>

                match (cat.tensor_mor(&da, &db), cat.tensor_mor(&ia, &sab)) {
                    (Some(dadb), Some(ia_s)) => match cat.tensor_mor(&ia_s, &ib) {
                        Some(mid) => cat.compose(&mid, &dadb),
                        None => None,
                    },
                    _ => None,
                },
            _ => None,
        };
        eq_or_fail(
            cat,
            "dup-multiplicativity",
            &format!("objects ({}, {})", a, b),
            vec![],
            l,
            r,
        )
    });

    run.group("discharge-multiplicativity", &[n, n], |c| {
        let (a, b) = (&objs[c[0] as usize], &objs[c[1] as usize]);
        let Some(ab) = cat.tensor_obj(a, b) else {
            return Outcome::Skip;
        };
        let l = cat.discharge(&ab);
        let r = match (cat.discharge(a), cat.discharge(b)) {
            (Some(ba), Some(bb)) => cat.tensor_mor(&ba, &bb),
            _ => None,
        };
        eq_or_fail(
            cat,
            "discharge-multiplicativity",
            &format!("objects ({}, {})", a, b),
            vec![],
            l,
            r,
        )
    });

    run.group("unit-structure", &[1], |_| {
        let (Some(du), Some(bu), Some(iu)) =
            (cat.dup(&unit), cat.discharge(&unit), cat.identity(&unit))
        else {
            return Outcome::Skip;
        };
        // strictness: I ⊗ I = I, so both must be the identity
        if du == iu && bu == iu {
            Outcome::Ok
        } else {
            Outcome::Fail(witness(
                cat,
                "unit-structure",
                format!("unit {}", unit),
                vec![item(cat, "∇_I", &du), item(cat, "!_I", &bu)],
                &du,
                &iu,
            ))
        }
    });

    run.group("structure-arrows-total-functional", &[n], |c| {
        let a = &objs[c[0] as usize];
        let (Some(dup), Some(bang)) = (cat.dup(a), cat.discharge(a)) else {
            return Outcome::Skip;
        };
        for m in [&dup, &bang] {
            match (is_total(cat, m), is_functional(cat, m)) {
                (Ok(true), Ok(true)) => {}
                (Ok(_), Ok(_)) => {
                    return Outcome::Fail(Witness {
                        law: "structure-arrows-total-functional".into(),
                        location: format!("object {}", a),
                        items: vec![item(cat, "arrow", m)],
                        lhs: "total ∧ functional".into(),
                        rhs: "violated".into(),
                    });
                }
                _ => return Outcome::Skip,
            }
        }
        Outcome::Ok
    });

    run.finish()
}

/// Monotonicity of composition and tensor together with the two oplax
/// cartesian inequalities.
pub fn check_oplax_cartesian<C: GsCategory>(cat: &C, cfg: &CheckConfig) -> Result<LawReport> {
    if !cat.has_order() {
        return Err(Error::MissingPreorder);
    }
    let mut run = Run::new("check_oplax_cartesian", cfg);
    let objs = cat.objects();
    let mut homs = Homs::new(cat, cfg.hom_cap);

    for a in &objs {
        for b in &objs {
            let Some(fs) = homs.get(a, b) else {
                run.skip_group("preorder-reflexive");
                continue;
            };
            run.group("preorder-reflexive", &[fs.len() as u64], |c| {
                let f = &fs[c[0] as usize];
                match cat.leq(f, f) {
                    Some(true) => Outcome::Ok,
                    Some(false) => Outcome::Fail(witness(
                        cat,
                        "preorder-reflexive",
                        format!("hom({}, {})", a, b),
                        vec![item(cat, "f", f)],
                        f,
                        f,
                    )),
                    None => Outcome::Skip,
                }
            });
            let nf = fs.len() as u64;
            run.group("preorder-transitive", &[nf, nf, nf], |c| {
                let f = &fs[c[0] as usize];
                let g = &fs[c[1] as usize];
                let h = &fs[c[2] as usize];
                match (cat.leq(f, g), cat.leq(g, h)) {
                    (Some(true), Some(true)) => match cat.leq(f, h) {
                        Some(true) => Outcome::Ok,
                        Some(false) => Outcome::Fail(witness(
                            cat,
                            "preorder-transitive",
                            format!("hom({}, {})", a, b),
                            vec![item(cat, "f", f), item(cat, "g", g), item(cat, "h", h)],
                            f,
                            h,
                        )),
                        None => Outcome::Skip,
                    },
                    _ => Outcome::Skip,
                }
            });
        }
    }

    for a in &objs {
        for b in &objs {
            for d in &objs {
                let (Some(fs), Some(gs)) = (homs.get(a, b), homs.get(b, d)) else {
                    run.skip_group("compose-monotone");
                    continue;
                };
                let (nf, ng) = (fs.len() as u64, gs.len() as u64);
                run.group("compose-monotone", &[nf, nf, ng, ng], |c| {
                    let f = &fs[c[0] as usize];
                    let f2 = &fs[c[1] as usize];
                    let g = &gs[c[2] as usize];
                    let g2 = &gs[c[3] as usize];
                    match (cat.leq(f, f2), cat.leq(g, g2)) {
                        (Some(true), Some(true)) => leq_or_fail(
                            cat,
                            "compose-monotone",
                            &format!("hom({}, {}) then hom({}, {})", a, b, b, d),
                            vec![
                                item(cat, "f", f),
                                item(cat, "f'", f2),
                                item(cat, "g", g),
                                item(cat, "g'", g2),
                            ],
                            cat.compose(g, f),
                            cat.compose(g2, f2),
                        ),
                        _ => Outcome::Skip,
                    }
                });
            }
        }
    }

    for a in &objs {
        for b in &objs {
            for a2 in &objs {
                for b2 in &objs {
                    let (Some(fs), Some(gs)) = (homs.get(a, b), homs.get(a2, b2)) else {
                        run.skip_group("tensor-monotone");
                        continue;
                    };
                    let (nf, ng) = (fs.len() as u64, gs.len() as u64);
                    run.group("tensor-monotone", &[nf, nf, ng, ng], |c| {
                        let f = &fs[c[0] as usize];
                        let f2 = &fs[c[1] as usize];
                        let g = &gs[c[2] as usize];
                        let g2 = &gs[c[3] as usize];
                        match (cat.leq(f, f2), cat.leq(g, g2)) {
                            (Some(true), Some(true)) => leq_or_fail(
                                cat,
                                "tensor-monotone",
                                &format!("hom({}, {}) ⊗ hom({}, {})", a, b, a2, b2),
                                vec![
                                    item(cat, "f", f),
                                    item(cat, "f'", f2),
                                    item(cat, "g", g),
                                    item(cat, "g'", g2),
                                ],
                                cat.tensor_mor(f, g),
                                cat.tensor_mor(f2, g2),
                            ),
                            _ => Outcome::Skip,
                        }
                    });
                }
            }
        }
    }

    for a in &objs {
        for b in &objs {
            let (Some(fs),) = (homs.get(a, b),) else {
                run.skip_group("dup-oplax");
                continue;
            };
            let dup_a = cat.dup(a);
            let dup_b = cat.dup(b);
            let bang_a = cat.discharge(a);
            let bang_b = cat.discharge(b);
            run.group("dup-oplax", &[fs.len() as u64], |c| {
                let f = &fs[c[0] as usize];
                let (Some(da), Some(db)) = (dup_a.clone(), dup_b.clone()) else {
                    return Outcome::Skip;
                };
                let l = cat.compose(&db, f);
                let r = cat.tensor_mor(f, f).and_then(|ff| cat.compose(&ff, &da));
                leq_or_fail(
                    cat,
                    "dup-oplax",
                    &format!("f in hom({}, {})", a, b),
                    vec![item(cat, "f", f)],
                    l,
                    r,
                )
            });
            run.group("discharge-oplax", &[fs.len() as u64], |c| {
                let f = &fs[c[0] as usize];
                let (Some(ba), Some(bb)) = (bang_a.clone(), bang_b.clone()) else {
                    return Outcome::Skip;
                };
                leq_or_fail(
                    cat,
                    "discharge-oplax",
                    &format!("f in hom({}, {})", a, b),
                    vec![item(cat, "f", f)],
                    cat.compose(&bb, f),
                    Some(ba),
                )
            });
        }
    }

    Ok(run.finish())
}

/// Domain-operator facts: functionality is inherited, totality is equivalent
/// to `dom(f) = id`, and in ordered categories `dom(f) ≤ id`, `f∘dom(f) ≈ f`.
pub fn check_dom_propositions<C: GsCategory>(cat: &C, cfg: &CheckConfig) -> LawReport {
    let mut run = Run::new("check_dom_propositions", cfg);
    let objs = cat.objects();
    let ordered = cat.has_order();
    let mut homs = Homs::new(cat, cfg.hom_cap);

    for a in &objs {
        for b in &objs {
            let Some(fs) = homs.get(a, b) else {
                run.skip_group("dom-functional-inherited");
                continue;
            };
            let loc = format!("hom({}, {})", a, b);

            run.group("dom-functional-inherited", &[fs.len() as u64], |c| {
                let f = &fs[c[0] as usize];
                let Ok(d) = dom_morphism(cat, f) else {
                    return Outcome::Skip;
                };
                match (is_functional(cat, f), is_functional(cat, &d)) {
                    (Ok(true), Ok(false)) => Outcome::Fail(Witness {
                        law: "dom-functional-inherited".into(),
                        location: loc.clone(),
                        items: vec![item(cat, "f", f), item(cat, "dom(f)", &d)],
                        lhs: "f functional".into(),
                        rhs: "dom(f) not functional".into(),
                    }),
                    (Ok(_), Ok(_)) => Outcome::Ok,
                    _ => Outcome::Skip,
                }
            });

            run.group("dom-total-iff-identity", &[fs.len() as u64], |c| {
                let f = &fs[c[0] as usize];
                let (Ok(d), Some(id)) = (dom_morphism(cat, f), cat.identity(a)) else {
                    return Outcome::Skip;
                };
                let Ok(total) = is_total(cat, f) else {
                    return Outcome::Skip;
                };
                if total == (d == id) {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        law: "dom-total-iff-identity".into(),
                        location: loc.clone(),
                        items: vec![item(cat, "f", f), item(cat, "dom(f)", &d)],
                        lhs: format!("total = {}", total),
                        rhs: format!("dom(f) = id is {}", d == id),
                    })
                }
            });

            if ordered {
                run.group("dom-below-identity", &[fs.len() as u64], |c| {
                    let f = &fs[c[0] as usize];
                    let Ok(d) = dom_morphism(cat, f) else {
                        return Outcome::Skip;
                    };
                    leq_or_fail(
                        cat,
                        "dom-below-identity",
                        &loc,
                        vec![item(cat, "f", f)],
                        Some(d),
                        cat.identity(a),
                    )
                });

                run.group("dom-absorption", &[fs.len() as u64], |c| {
                    let f = &fs[c[0] as usize];
                    let Ok(d) = dom_morphism(cat, f) else {
                        return Outcome::Skip;
                    };
                    let Some(fd) = cat.compose(f, &d) else {
                        return Outcome::Skip;
                    };
                    match equiv(cat, &fd, f) {
                        Some(true) => Outcome::Ok,
                        Some(false) => Outcome::Fail(witness(
                            cat,
                            "dom-absorption",
                            &loc,
                            vec![item(cat, "f", f), item(cat, "dom(f)", &d)],
                            &fd,
                            f,
                        )),
                        None => Outcome::Skip,
                    }
                });
            }
        }
    }

    run.finish()
}

/// Weak binary products on total arrows: the tensor pairing projects
/// correctly, and on total+functional arrows the mediating arrow is unique.
pub fn check_weak_product<C: GsCategory>(
    cat: &C,
    a: &C::Obj,
    b: &C::Obj,
    cfg: &CheckConfig,
) -> Result<LawReport> {
    let mut run = Run::new("check_weak_product", cfg);
    let ab = cat
        .tensor_obj(a, b)
        .ok_or_else(|| Error::MissingObject(format!("{} ⊗ {}", a, b)))?;
    let (ia, ib) = (
        cat.identity(a).ok_or(Error::MissingObject(a.to_string()))?,
        cat.identity(b).ok_or(Error::MissingObject(b.to_string()))?,
    );
    let (bang_a, bang_b) = (
        cat.discharge(a).ok_or(Error::MissingObject(a.to_string()))?,
        cat.discharge(b).ok_or(Error::MissingObject(b.to_string()))?,
    );
    let p1 = cat
        .tensor_mor(&ia, &bang_b)
        .ok_or_else(|| Error::MissingObject("id ⊗ !".into()))?;
    let p2 = cat
        .tensor_mor(&bang_a, &ib)
        .ok_or_else(|| Error::MissingObject("! ⊗ id".into()))?;

    run.group("projections-total", &[1], |_| {
        match (is_total(cat, &p1), is_total(cat, &p2)) {
            (Ok(true), Ok(true)) => Outcome::Ok,
            (Ok(_), Ok(_)) => Outcome::Fail(Witness {
                law: "projections-total".into(),
                location: format!("{} ⊗ {}", a, b),
                items: vec![item(cat, "π1", &p1), item(cat, "π2", &p2)],
                lhs: "total".into(),
                rhs: "not total".into(),
            }),
            _ => Outcome::Skip,
        }
    });

    let objs = cat.objects();
    for c_obj in &objs {
        let hs = cat.hom(c_obj, a, cfg.hom_cap)?;
        let gs = cat.hom(c_obj, b, cfg.hom_cap)?;
        let ms = cat.hom(c_obj, &ab, cfg.hom_cap)?;
        let dup_c = cat.dup(c_obj);

        run.group(
            "weak-product-pairing",
            &[hs.len() as u64, gs.len() as u64],
            |c| {
                let h = &hs[c[0] as usize];
                let g = &gs[c[1] as usize];
                match (is_total(cat, h), is_total(cat, g)) {
                    (Ok(true), Ok(true)) => {}
                    (Ok(_), Ok(_)) => return Outcome::Skip,
                    _ => return Outcome::Skip,
                }
                let Some(dc) = dup_c.clone() else {
                    return Outcome::Skip;
                };
                let Some(pairing) = cat
                    .tensor_mor(h, g)
                    .and_then(|hg| cat.compose(&hg, &dc))
                else {
                    return Outcome::Skip;
                };
                let Ok(total) = is_total(cat, &pairing) else {
                    return Outcome::Skip;
                };
                let (Some(l1), Some(l2)) =
                    (cat.compose(&p1, &pairing), cat.compose(&p2, &pairing))
                else {
                    return Outcome::Skip;
                };
                if total && l1 == *h && l2 == *g {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        law: "weak-product-pairing".into(),
                        location: format!("C = {}", c_obj),
                        items: vec![
                            item(cat, "h", h),
                            item(cat, "g", g),
                            item(cat, "(h⊗g)∇", &pairing),
                        ],
                        lhs: format!("π1∘p = {}, π2∘p = {}, total = {}", l1, l2, total),
                        rhs: "projections must recover h, g".into(),
                    })
                }
            },
        );

        run.group(
            "product-uniqueness-on-functional",
            &[hs.len() as u64, gs.len() as u64, ms.len() as u64],
            |c| {
                let h = &hs[c[0] as usize];
                let g = &gs[c[1] as usize];
                let m = &ms[c[2] as usize];
                let tf = |f: &C::Mor| -> Option<bool> {
                    match (is_total(cat, f), is_functional(cat, f)) {
                        (Ok(t), Ok(fl)) => Some(t && fl),
                        _ => None,
                    }
                };
                match (tf(h), tf(g), tf(m)) {
                    (Some(true), Some(true), Some(true)) => {}
                    (Some(_), Some(_), Some(_)) => return Outcome::Skip,
                    _ => return Outcome::Skip,
                }
                let (Some(l1), Some(l2)) = (cat.compose(&p1, m), cat.compose(&p2, m)) else {
                    return Outcome::Skip;
                };
                if l1 != *h || l2 != *g {
                    return Outcome::Skip; // m is not mediating for (h, g)
                }
                let Some(dc) = dup_c.clone() else {
                    return Outcome::Skip;
                };
                let Some(pairing) = cat
                    .tensor_mor(h, g)
                    .and_then(|hg| cat.compose(&hg, &dc))
                else {
                    return Outcome::Skip;
                };
                if *m == pairing {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        law: "product-uniqueness-on-functional".into(),
                        location: format!("C = {}", c_obj),
                        items: vec![item(cat, "h", h), item(cat, "g", g)],
                        lhs: format!("mediating m = {}", m),
                        rhs: format!("canonical pairing = {}", pairing),
                    })
                }
            },
        );
    }

    Ok(run.finish())
}

/// Cartesian monoidality: every arrow is total and functional, and the
/// tensor is a categorical product (existence and uniqueness of the pairing
/// for arbitrary cones, not just total ones).
pub fn check_cartesian<C: GsCategory>(cat: &C, cfg: &CheckConfig) -> LawReport {
    let mut run = Run::new("check_cartesian", cfg);
    let objs = cat.objects();
    let mut homs = Homs::new(cat, cfg.hom_cap);

    for a in &objs {
        for b in &objs {
            let Some(fs) = homs.get(a, b) else {
                run.skip_group("all-arrows-total-functional");
                continue;
            };
            run.group("all-arrows-total-functional", &[fs.len() as u64], |c| {
                let f = &fs[c[0] as usize];
                match (is_total(cat, f), is_functional(cat, f)) {
                    (Ok(true), Ok(true)) => Outcome::Ok,
                    (Ok(t), Ok(fl)) => Outcome::Fail(Witness {
                        law: "all-arrows-total-functional".into(),
                        location: format!("hom({}, {})", a, b),
                        items: vec![item(cat, "f", f)],
                        lhs: format!("total = {}", t),
                        rhs: format!("functional = {}", fl),
                    }),
                    _ => Outcome::Skip,
                }
            });
        }
    }

    for a in &objs {
        for b in &objs {
            let Some(ab) = cat.tensor_obj(a, b) else {
                continue;
            };
            let proj = (|| {
                let p1 = cat.tensor_mor(&cat.identity(a)?, &cat.discharge(b)?)?;
                let p2 = cat.tensor_mor(&cat.discharge(a)?, &cat.identity(b)?)?;
                Some((p1, p2))
            })();
            let Some((p1, p2)) = proj else {
                continue;
            };
            for c_obj in &objs {
                let (Some(hs), Some(gs), Some(ms)) = (
                    homs.get(c_obj, a),
                    homs.get(c_obj, b),
                    homs.get(c_obj, &ab),
                ) else {
                    run.skip_group("product-existence");
                    continue;
                };
                let dup_c = cat.dup(c_obj);
                run.group(
                    "product-existence",
                    &[hs.len() as u64, gs.len() as u64],
                    |c| {
                        let h = &hs[c[0] as usize];
                        let g = &gs[c[1] as usize];
                        let Some(dc) = dup_c.clone() else {
                            return Outcome::Skip;
                        };
                        let Some(pairing) =
                            cat.tensor_mor(h, g).and_then(|hg| cat.compose(&hg, &dc))
                        else {
                            return Outcome::Skip;
                        };
                        let (Some(l1), Some(l2)) =
                            (cat.compose(&p1, &pairing), cat.compose(&p2, &pairing))
                        else {
                            return Outcome::Skip;
                        };
                        if l1 == *h && l2 == *g {
                            Outcome::Ok
                        } else {
                            Outcome::Fail(Witness {
                                law: "product-existence".into(),
                                location: format!("C = {}, ({}, {})", c_obj, a, b),
                                items: vec![item(cat, "h", h), item(cat, "g", g)],
                                lhs: format!("π1∘⟨h,g⟩ = {}", l1),
                                rhs: format!("π2∘⟨h,g⟩ = {}", l2),
                            })
                        }
                    },
                );
                run.group(
                    "product-uniqueness",
                    &[hs.len() as u64, gs.len() as u64, ms.len() as u64],
                    |c| {
                        let h = &hs[c[0] as usize];
                        let g = &gs[c[1] as usize];
                        let m = &ms[c[2] as usize];
                        let (Some(l1), Some(l2)) = (cat.compose(&p1, m), cat.compose(&p2, m))
                        else {
                            return Outcome::Skip;
                        };
                        if l1 != *h || l2 != *g {
                            return Outcome::Skip;
                        }
                        let Some(dc) = dup_c.clone() else {
                            return Outcome::Skip;
                        };
                        let Some(pairing) =
                            cat.tensor_mor(h, g).and_then(|hg| cat.compose(&hg, &dc))
                        else {
                            return Outcome::Skip;
                        };
                        if *m == pairing {
                            Outcome::Ok
                        } else {
                            Outcome::Fail(Witness {
                                law: "product-uniqueness".into(),
                                location: format!("C = {}, ({}, {})", c_obj, a, b),
                                items: vec![item(cat, "h", h), item(cat, "g", g)],
                                lhs: format!("mediating m = {}", m),
                                rhs: format!("canonical pairing = {}", pairing),
                            })
                        }
                    },
                );
            }
        }
    }

    run.finish()
}

/// Verifies `∇ ≈ ∇'` and `! ≈ !'` for an alternative comonoid structure.
pub fn check_dup_discharge_uniqueness<C: GsCategory>(
    cat: &C,
    alt: &dyn Fn(&C::Obj) -> Option<(C::Mor, C::Mor)>,
    cfg: &CheckConfig,
) -> Result<LawReport> {
    if !cat.has_order() {
        return Err(Error::MissingPreorder);
    }
    let mut run = Run::new("check_dup_discharge_uniqueness", cfg);
    let objs = cat.objects();
    run.group("dup-discharge-unique", &[objs.len() as u64], |c| {
        let a = &objs[c[0] as usize];
        let (Some(dup), Some(bang)) = (cat.dup(a), cat.discharge(a)) else {
            return Outcome::Skip;
        };
        let Some((dup2, bang2)) = alt(a) else {
            return Outcome::Skip;
        };
        match (equiv(cat, &dup, &dup2), equiv(cat, &bang, &bang2)) {
            (Some(true), Some(true)) => Outcome::Ok,
            (Some(_), Some(_)) => Outcome::Fail(Witness {
                law: "dup-discharge-unique".into(),
                location: format!("object {}", a),
                items: vec![
                    item(cat, "∇", &dup),
                    item(cat, "∇'", &dup2),
                    item(cat, "!", &bang),
                    item(cat, "!'", &bang2),
                ],
                lhs: "∇ ≈ ∇' and ! ≈ !'".into(),
                rhs: "violated".into(),
            }),
            _ => Outcome::Skip,
        }
    });
    Ok(run.finish())
}

/// The least hom-set preorder containing the oplax cartesian generators and
/// closed under pre/post-composition, in-fixture tensoring and transitivity.
pub struct GeneratedOrder<C: GsCategory> {
    pub homs: BTreeMap<(C::Obj, C::Obj), Vec<C::Mor>>,
    index: BTreeMap<(C::Obj, C::Obj), BTreeMap<C::Mor, u32>>,
    pub pairs: BTreeMap<(C::Obj, C::Obj), BTreeSet<(u32, u32)>>,
}

impl<C: GsCategory> GeneratedOrder<C> {
    pub fn leq(&self, cat: &C, f: &C::Mor, g: &C::Mor) -> Option<bool> {
        let key = (cat.mor_dom(f), cat.mor_cod(f));
        let ix = self.index.get(&key)?;
        let (i, j) = (*ix.get(f)?, *ix.get(g)?);
        if i == j {
            return Some(true);
        }
        Some(self.pairs.get(&key)?.contains(&(i, j)))
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.values().map(|s| s.len()).sum()
    }
}

/// Computes the generated oplax preorder by fixpoint closure. Only instances
/// whose objects stay inside the fixture are generated, so the result is a
/// lower bound of the untruncated generated preorder.
pub fn generate_oplax_preorder<C: GsCategory>(
    cat: &C,
    cfg: &CheckConfig,
) -> Result<GeneratedOrder<C>> {
    generate_oplax_preorder_from(cat, cfg, &[])
}

/// Same closure, seeded with extra initial pairs (used for the idempotence
/// property: closing the generated order again must add nothing).
pub fn generate_oplax_preorder_from<C: GsCategory>(
    cat: &C,
    cfg: &CheckConfig,
    initial: &[(C::Mor, C::Mor)],
) -> Result<GeneratedOrder<C>> {
    let objs = cat.objects();
    let mut homs: BTreeMap<(C::Obj, C::Obj), Vec<C::Mor>> = BTreeMap::new();
    let mut total: u64 = 0;
    for a in &objs {
        for b in &objs {
            let ms = cat.hom(a, b, cfg.hom_cap)?;
            total += ms.len() as u64;
            if total > cfg.hom_cap {
                return Err(Error::Infeasible(format!(
                    "generated preorder needs more than {} morphisms in total",
                    cfg.hom_cap
                )));
            }
            homs.insert((a.clone(), b.clone()), ms);
        }
    }
    let index: BTreeMap<(C::Obj, C::Obj), BTreeMap<C::Mor, u32>> = homs
        .iter()
        .map(|(k, ms)| {
            (
                k.clone(),
                ms.iter()
                    .enumerate()
                    .map(|(i, m)| (m.clone(), i as u32))
                    .collect(),
            )
        })
        .collect();

    let lookup = |m: &C::Mor| -> Option<((C::Obj, C::Obj), u32)> {
        let key = (cat.mor_dom(m), cat.mor_cod(m));
        let i = *index.get(&key)?.get(m)?;
        Some((key, i))
    };

    let mut pairs: BTreeMap<(C::Obj, C::Obj), BTreeSet<(u32, u32)>> =
        homs.keys().map(|k| (k.clone(), BTreeSet::new())).collect();
    let mut queue: VecDeque<((C::Obj, C::Obj), u32, u32)> = VecDeque::new();
    let push = |pairs: &mut BTreeMap<(C::Obj, C::Obj), BTreeSet<(u32, u32)>>,
                    queue: &mut VecDeque<((C::Obj, C::Obj), u32, u32)>,
                    key: (C::Obj, C::Obj),
                    i: u32,
                    j: u32| {
        if i != j && pairs.get_mut(&key).map(|s| s.insert((i, j))) == Some(true) {
            queue.push_back((key, i, j));
        }
    };

    // generators
    for ((a, b), ms) in &homs {
        let dup_a = cat.dup(a);
        let dup_b = cat.dup(b);
        let bang_a = cat.discharge(a);
        let bang_b = cat.discharge(b);
        for f in ms {
            if let (Some(da), Some(db)) = (&dup_a, &dup_b) {
                let l = cat.compose(db, f);
                let r = cat.tensor_mor(f, f).and_then(|ff| cat.compose(&ff, da));
                if let (Some(l), Some(r)) = (l, r) {
                    if let (Some((k1, i)), Some((_, j))) = (lookup(&l), lookup(&r)) {
                        push(&mut pairs, &mut queue, k1, i, j);
                    }
                }
            }
            if let (Some(ba), Some(bb)) = (&bang_a, &bang_b) {
                if let Some(l) = cat.compose(bb, f) {
                    if let (Some((k1, i)), Some((_, j))) = (lookup(&l), lookup(ba)) {
                        push(&mut pairs, &mut queue, k1, i, j);
                    }
                }
            }
        }
    }
    for (u, v) in initial {
        if let (Some((k1, i)), Some((k2, j))) = (lookup(u), lookup(v)) {
            if k1 == k2 {
                push(&mut pairs, &mut queue, k1, i, j);
            }
        }
    }

    // closure
    while let Some(((a, b), i, j)) = queue.pop_front() {
        let u = homs[&(a.clone(), b.clone())][i as usize].clone();
        let v = homs[&(a.clone(), b.clone())][j as usize].clone();

        // transitivity within hom(a, b)
        let existing: Vec<(u32, u32)> = pairs[&(a.clone(), b.clone())].iter().cloned().collect();
        for (p, q) in existing {
            if q == i {
                push(&mut pairs, &mut queue, (a.clone(), b.clone()), p, j);
            }
            if p == j {
                push(&mut pairs, &mut queue, (a.clone(), b.clone()), i, q);
            }
        }

        // pre- and post-composition
        for c_obj in &objs {
            if let Some(fs) = homs.get(&(c_obj.clone(), a.clone())) {
                for f in fs {
                    if let (Some(uf), Some(vf)) = (cat.compose(&u, f), cat.compose(&v, f)) {
                        if let (Some((k1, p)), Some((_, q))) = (lookup(&uf), lookup(&vf)) {
                            push(&mut pairs, &mut queue, k1, p, q);
                        }
                    }
                }
            }
            if let Some(gs) = homs.get(&(b.clone(), c_obj.clone())) {
                for g in gs {
                    if let (Some(gu), Some(gv)) = (cat.compose(g, &u), cat.compose(g, &v)) {
                        if let (Some((k1, p)), Some((_, q))) = (lookup(&gu), lookup(&gv)) {
                            push(&mut pairs, &mut queue, k1, p, q);
                        }
                    }
                }
            }
        }

        // tensor with every fixture morphism, on either side
        for ((c_obj, d_obj), ws) in &homs {
            let left_ok = cat.tensor_obj(&a, c_obj).is_some_and(|o| objs.contains(&o))
                && cat.tensor_obj(&b, d_obj).is_some_and(|o| objs.contains(&o));
            let right_ok = cat.tensor_obj(c_obj, &a).is_some_and(|o| objs.contains(&o))
                && cat.tensor_obj(d_obj, &b).is_some_and(|o| objs.contains(&o));
            for w in ws {
                if left_ok {
                    if let (Some(uw), Some(vw)) = (cat.tensor_mor(&u, w), cat.tensor_mor(&v, w)) {
                        if let (Some((k1, p)), Some((_, q))) = (lookup(&uw), lookup(&vw)) {
                            push(&mut pairs, &mut queue, k1, p, q);
                        }
                    }
                }
                if right_ok {
                    if let (Some(wu), Some(wv)) = (cat.tensor_mor(w, &u), cat.tensor_mor(w, &v)) {
                        if let (Some((k1, p)), Some((_, q))) = (lookup(&wu), lookup(&wv)) {
                            push(&mut pairs, &mut queue, k1, p, q);
                        }
                    }
                }
            }
        }
    }

    Ok(GeneratedOrder { homs, index, pairs })
}

/// A base category re-equipped with a generated preorder.
pub struct WithGeneratedOrder<'a, C: GsCategory> {
    pub base: &'a C,
    pub order: &'a GeneratedOrder<C>,
}

impl<'a, C: GsCategory> GsCategory for WithGeneratedOrder<'a, C> {
    type Obj = C::Obj;
    type Mor = C::Mor;

    fn name(&self) -> String {
        format!("{}[generated order]", self.base.name())
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
        self.order.leq(self.base, f, g)
    }
    fn hom_size(&self, a: &Self::Obj, b: &Self::Obj) -> Option<u128> {
        self.base.hom_size(a, b)
    }
    fn hom(&self, a: &Self::Obj, b: &Self::Obj, cap: u64) -> Result<Vec<Self::Mor>> {
        self.base.hom(a, b, cap)
    }
}
