//! Finite preorders and monotone maps, the hypograph functor into relations,
//! and the hom-functor completeness machinery.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::category::GsCategory;
use crate::error::{Error, Result};
use crate::finrel::{FinRelCat, Rel};
use crate::functor::FunctorData;
use crate::report::{CheckConfig, LawReport, Outcome, Run, Witness};

/// A preorder on `{0, …, size-1}`, stored as its relation matrix (reflexive
/// and transitive by construction).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinPreord {
    rel: Rel,
}

impl FinPreord {
    /// Validates reflexivity and transitivity.
    pub fn from_rel(rel: Rel) -> Result<FinPreord> {
        if rel.src() != rel.tgt() {
            return Err(Error::DimensionMismatch("preorder matrix must be square".into()));
        }
        let n = rel.src();
        for x in 0..n {
            if !rel.get(x, x) {
                return Err(Error::MalformedPresentation(format!(
                    "preorder not reflexive at {}",
                    x
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if rel.get(x, y) {
                    for z in 0..n {
                        if rel.get(y, z) && !rel.get(x, z) {
                            return Err(Error::MalformedPresentation(format!(
                                "preorder not transitive at ({}, {}, {})",
                                x, y, z
                            )));
                        }
                    }
                }
            }
        }
        Ok(FinPreord { rel })
    }

    /// Builds from generating pairs, applying the reflexive-transitive
    /// closure (the fixture semantics).
    pub fn from_pairs_closed(size: usize, pairs: &[(usize, usize)]) -> Result<FinPreord> {
        let mut rel = Rel::from_pairs(size, size, pairs)?;
        for x in 0..size {
            rel.set(x, x);
        }
        // Warshall
        for k in 0..size {
            for x in 0..size {
                if rel.get(x, k) {
                    for y in 0..size {
                        if rel.get(k, y) {
                            rel.set(x, y);
                        }
                    }
                }
            }
        }
        Ok(FinPreord { rel })
    }

    pub fn discrete(n: usize) -> FinPreord {
        FinPreord {
            rel: Rel::identity(n),
        }
    }

    /// The two-element chain 0 ≤ 1.
    pub fn chain2() -> FinPreord {
        FinPreord::from_pairs_closed(2, &[(0, 1)]).unwrap()
    }

    pub fn terminal() -> FinPreord {
        FinPreord::discrete(1)
    }

    pub fn size(&self) -> usize {
        self.rel.src()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.rel.get(x, y)
    }

    pub fn is_discrete(&self) -> bool {
        self.rel == Rel::identity(self.size())
    }

    pub fn rel(&self) -> &Rel {
        &self.rel
    }

    /// Componentwise order on the row-major product of underlying sets.
    pub fn product(x: &FinPreord, y: &FinPreord) -> FinPreord {
        let (nx, ny) = (x.size(), y.size());
        let mut rel = Rel::empty(nx * ny, nx * ny);
        for a in 0..nx {
            for b in 0..ny {
                for c in 0..nx {
                    for d in 0..ny {
                        if x.leq(a, c) && y.leq(b, d) {
                            rel.set(a * ny + b, c * ny + d);
                        }
                    }
                }
            }
        }
        FinPreord { rel }
    }

    /// The subset order on bitmasks of the given width; elements of the
    /// hom-preorders of FinRel.
    pub fn inclusion_on_masks(bits: usize) -> FinPreord {
        let n = 1usize << bits;
        let mut rel = Rel::empty(n, n);
        for i in 0..n {
            for j in 0..n {
                if i & j == i {
                    rel.set(i, j);
                }
            }
        }
        FinPreord { rel }
    }
}

impl std::fmt::Display for FinPreord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "preord{}{{", self.size())?;
        let mut first = true;
        for (x, y) in self.rel.pairs() {
            if x != y {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}<={}", x, y)?;
                first = false;
            }
        }
        write!(f, "}}")
    }
}

/// All preorders on `n` labeled points (1, 4, 29 for n = 1, 2, 3).
pub fn all_preorders(n: usize) -> Vec<FinPreord> {
    let off_diag: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|(x, y)| x != y)
        .collect();
    let mut out = Vec::new();
    for mask in 0..(1u64 << off_diag.len()) {
        let mut rel = Rel::identity(n);
        for (k, &(x, y)) in off_diag.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rel.set(x, y);
            }
        }
        if FinPreord::from_rel(rel.clone()).is_ok() {
            out.push(FinPreord { rel });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotoneMap {
    pub src: Rc<FinPreord>,
    pub tgt: Rc<FinPreord>,
    values: Vec<u32>,
}

impl MonotoneMap {
    pub fn new(src: Rc<FinPreord>, tgt: Rc<FinPreord>, values: Vec<u32>) -> Result<MonotoneMap> {
        if values.len() != src.size() {
            return Err(Error::DimensionMismatch("map length != source size".into()));
        }
        if values.iter().any(|&v| v as usize >= tgt.size()) {
            return Err(Error::DimensionMismatch("map value out of range".into()));
        }
        let n = src.size();
        for x in 0..n {
            for y in 0..n {
                if src.leq(x, y) && !tgt.leq(values[x] as usize, values[y] as usize) {
                    return Err(Error::NotMonotone);
                }
            }
        }
        Ok(MonotoneMap { src, tgt, values })
    }

    /// Skips the monotonicity scan; used on hot paths where monotonicity
    /// holds by construction and is covered by the functor-level checks.
    pub(crate) fn new_unchecked(
        src: Rc<FinPreord>,
        tgt: Rc<FinPreord>,
        values: Vec<u32>,
    ) -> MonotoneMap {
        debug_assert!(values.len() == src.size());
        MonotoneMap { src, tgt, values }
    }

    pub fn identity(p: Rc<FinPreord>) -> MonotoneMap {
        let values = (0..p.size() as u32).collect();
        MonotoneMap {
            src: p.clone(),
            tgt: p,
            values,
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x] as usize
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn compose(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
        if f.tgt != g.src {
            return Err(Error::DimensionMismatch("compose of non-matching maps".into()));
        }
        Ok(MonotoneMap {
            src: f.src.clone(),
            tgt: g.tgt.clone(),
            values: f.values.iter().map(|&x| g.values[x as usize]).collect(),
        })
    }

    /// Pointwise hom-order: `f ≤ g` iff `f(x) ≤ g(x)` in the target for all x.
    pub fn leq(f: &MonotoneMap, g: &MonotoneMap) -> Option<bool> {
        if f.src != g.src || f.tgt != g.tgt {
            return None;
        }
        Some(
            f.values
                .iter()
                .zip(&g.values)
                .all(|(&a, &b)| f.tgt.leq(a as usize, b as usize)),
        )
    }

    /// The pairing `⟨f, g⟩ : X -> A × B`.
    pub fn pairing(f: &MonotoneMap, g: &MonotoneMap, prod: Rc<FinPreord>) -> Result<MonotoneMap> {
        if f.src != g.src {
            return Err(Error::DimensionMismatch("pairing sources differ".into()));
        }
        let nb = g.tgt.size();
        let values = f
            .values
            .iter()
            .zip(&g.values)
            .map(|(&a, &b)| a * nb as u32 + b)
            .collect();
        MonotoneMap::new(f.src.clone(), prod, values)
    }

    pub fn projections(
        a: Rc<FinPreord>,
        b: Rc<FinPreord>,
        prod: Rc<FinPreord>,
    ) -> (MonotoneMap, MonotoneMap) {
        let (na, nb) = (a.size(), b.size());
        let p1 = MonotoneMap {
            src: prod.clone(),
            tgt: a,
            values: (0..na * nb).map(|k| (k / nb) as u32).collect(),
        };
        let p2 = MonotoneMap {
            src: prod,
            tgt: b,
            values: (0..na * nb).map(|k| (k % nb) as u32).collect(),
        };
        (p1, p2)
    }
}

impl std::fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "]:{}->{}", self.src.size(), self.tgt.size())
    }
}

/// The hypograph of a monotone map: `{(x, y) : y ≤ f(x)}`.
pub fn hypograph(f: &MonotoneMap) -> Rel {
    let mut r = Rel::empty(f.src.size(), f.tgt.size());
    for x in 0..f.src.size() {
        for y in 0..f.tgt.size() {
            if f.tgt.leq(y, f.apply(x)) {
                r.set(x, y);
            }
        }
    }
    r
}

/// FinPreord as a preorder-enriched cartesian (hence oplax cartesian)
/// category. Objects are explicit preorders; products above `size_cap` are
/// not materialized and show up as skipped instances.
pub struct FinPreordCat {
    objects: Vec<Rc<FinPreord>>,
    pub size_cap: usize,
    name: String,
    products: RefCell<BTreeMap<(FinPreord, FinPreord), Rc<FinPreord>>>,
}

impl FinPreordCat {
    pub fn new(mut objects: Vec<FinPreord>, size_cap: usize) -> FinPreordCat {
        if !objects.iter().any(|p| *p == FinPreord::terminal()) {
            objects.push(FinPreord::terminal());
        }
        objects.sort();
        objects.dedup();
        FinPreordCat {
            name: format!("finpreord[{} objects]", objects.len()),
            objects: objects.into_iter().map(Rc::new).collect(),
            size_cap,
            products: RefCell::new(BTreeMap::new()),
        }
    }

    /// Discrete preorders of the given sizes (the base category for the
    /// Kleisli adjunction functors).
    pub fn discrete_sizes(sizes: &[usize], size_cap: usize) -> FinPreordCat {
        FinPreordCat::new(sizes.iter().map(|&n| FinPreord::discrete(n)).collect(), size_cap)
    }

    pub fn rc_product(&self, x: &FinPreord, y: &FinPreord) -> Option<Rc<FinPreord>> {
        if x.size().checked_mul(y.size())? > self.size_cap {
            return None;
        }
        let key = (x.clone(), y.clone());
        if let Some(p) = self.products.borrow().get(&key) {
            return Some(p.clone());
        }
        let p = Rc::new(FinPreord::product(x, y));
        self.products.borrow_mut().insert(key, p.clone());
        Some(p)
    }
}

impl GsCategory for FinPreordCat {
    type Obj = Rc<FinPreord>;
    type Mor = MonotoneMap;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn objects(&self) -> Vec<Rc<FinPreord>> {
        self.objects.clone()
    }

    fn unit(&self) -> Rc<FinPreord> {
        self.objects
            .iter()
            .find(|p| ***p == FinPreord::terminal())
            .cloned()
            .unwrap_or_else(|| Rc::new(FinPreord::terminal()))
    }

    fn tensor_obj(&self, a: &Rc<FinPreord>, b: &Rc<FinPreord>) -> Option<Rc<FinPreord>> {
        self.rc_product(a, b)
    }

    fn mor_dom(&self, f: &MonotoneMap) -> Rc<FinPreord> {
        f.src.clone()
    }

    fn mor_cod(&self, f: &MonotoneMap) -> Rc<FinPreord> {
        f.tgt.clone()
    }

    fn identity(&self, a: &Rc<FinPreord>) -> Option<MonotoneMap> {
        Some(MonotoneMap::identity(a.clone()))
    }

    fn compose(&self, g: &MonotoneMap, f: &MonotoneMap) -> Option<MonotoneMap> {
        MonotoneMap::compose(g, f).ok()
    }

    fn tensor_mor(&self, f: &MonotoneMap, g: &MonotoneMap) -> Option<MonotoneMap> {
        let src = self.rc_product(&f.src, &g.src)?;
        let tgt = self.rc_product(&f.tgt, &g.tgt)?;
        let nb = g.src.size();
        let mb = g.tgt.size() as u32;
        let values = (0..src.size())
            .map(|k| f.values[k / nb] * mb + g.values[k % nb])
            .collect();
        Some(MonotoneMap::new_unchecked(src, tgt, values))
    }

    fn symmetry(&self, a: &Rc<FinPreord>, b: &Rc<FinPreord>) -> Option<MonotoneMap> {
        let ab = self.rc_product(a, b)?;
        let ba = self.rc_product(b, a)?;
        let (na, nb) = (a.size(), b.size());
        let values = (0..na * nb)
            .map(|k| {
                let (x, y) = (k / nb, k % nb);
                (y * na + x) as u32
            })
            .collect();
        Some(MonotoneMap::new_unchecked(ab, ba, values))
    }

    fn dup(&self, a: &Rc<FinPreord>) -> Option<MonotoneMap> {
        let aa = self.rc_product(a, a)?;
        let n = a.size();
        let values = (0..n).map(|x| (x * n + x) as u32).collect();
        Some(MonotoneMap::new_unchecked(a.clone(), aa, values))
    }

    fn discharge(&self, a: &Rc<FinPreord>) -> Option<MonotoneMap> {
        Some(MonotoneMap::new_unchecked(
            a.clone(),
            self.unit(),
            vec![0; a.size()],
        ))
    }

    fn has_order(&self) -> bool {
        true
    }

    fn leq(&self, f: &MonotoneMap, g: &MonotoneMap) -> Option<bool> {
        MonotoneMap::leq(f, g)
    }

    fn hom_size(&self, _a: &Rc<FinPreord>, _b: &Rc<FinPreord>) -> Option<u128> {
        None // only known after filtering for monotonicity
    }

    fn hom(&self, a: &Rc<FinPreord>, b: &Rc<FinPreord>, cap: u64) -> Result<Vec<MonotoneMap>> {
        let candidates = (b.size() as u128).checked_pow(a.size() as u32);
        match candidates {
            Some(c) if c <= 1 << 22 => {}
            _ => {
                return Err(Error::Infeasible(format!(
                    "monotone map enumeration from size {} to size {} is too large",
                    a.size(),
                    b.size()
                )))
            }
        }
        let mut out = Vec::new();
        let n = a.size();
        let m = b.size();
        let mut values = vec![0u32; n];
        loop {
            if let Ok(f) = MonotoneMap::new(a.clone(), b.clone(), values.clone()) {
                out.push(f);
                if out.len() as u64 > cap {
                    return Err(Error::Infeasible(format!(
                        "hom({}, {}) exceeds cap {}",
                        a, b, cap
                    )));
                }
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                values[k] += 1;
                if (values[k] as usize) < m {
                    break;
                }
                values[k] = 0;
            }
        }
    }
}

/// Strict composition preservation, lax identities (with equality exactly on
/// discrete preorders) and order preservation/reflection of the hypograph,
/// exhaustively over all preorders of size ≤ 3.
pub fn check_hypograph_functoriality(cfg: &CheckConfig) -> LawReport {
    let mut run = Run::new("check_hypograph_functoriality", cfg);
    let preords: Vec<Rc<FinPreord>> = (1..=3).flat_map(all_preorders).map(Rc::new).collect();
    let cat = FinPreordCat::new(vec![], cfg.preord_cap as usize);
    let mut homs: BTreeMap<(usize, usize), Vec<MonotoneMap>> = BTreeMap::new();
    for (i, a) in preords.iter().enumerate() {
        for (j, b) in preords.iter().enumerate() {
            homs.insert((i, j), cat.hom(a, b, cfg.hom_cap).unwrap_or_default());
        }
    }
    let np = preords.len() as u64;

    for i in 0..preords.len() {
        for j in 0..preords.len() {
            for k in 0..preords.len() {
                let fs = &homs[&(i, j)];
                let gs = &homs[&(j, k)];
                run.group(
                    "hypograph-strict-composition",
                    &[fs.len() as u64, gs.len() as u64],
                    |c| {
                        let f = &fs[c[0] as usize];
                        let g = &gs[c[1] as usize];
                        let gf = MonotoneMap::compose(g, f).unwrap();
                        let lhs = hypograph(&gf);
                        let rhs = Rel::compose(&hypograph(g), &hypograph(f)).unwrap();
                        if lhs == rhs {
                            Outcome::Ok
                        } else {
                            Outcome::Fail(Witness {
                                law: "hypograph-strict-composition".into(),
                                location: format!("{} -> {} -> {}", preords[i], preords[j], preords[k]),
                                items: vec![format!("f = {}", f), format!("g = {}", g)],
                                lhs: format!("{}", lhs),
                                rhs: format!("{}", rhs),
                            })
                        }
                    },
                );
            }
        }
    }

    run.group("hypograph-lax-identity", &[np], |c| {
        let p = &preords[c[0] as usize];
        let r = hypograph(&MonotoneMap::identity(p.clone()));
        let id = Rel::identity(p.size());
        let lax = Rel::leq(&id, &r) == Some(true);
        let equal_iff_discrete = (r == id) == p.is_discrete();
        if lax && equal_iff_discrete {
            Outcome::Ok
        } else {
            Outcome::Fail(Witness {
                law: "hypograph-lax-identity".into(),
                location: format!("{}", p),
                items: vec![],
                lhs: format!("R(id) = {}", r),
                rhs: format!("discrete = {}", p.is_discrete()),
            })
        }
    });

    for i in 0..preords.len() {
        for j in 0..preords.len() {
            let fs = &homs[&(i, j)];
            let n = fs.len() as u64;
            run.group("hypograph-order-pres-refl", &[n, n], |c| {
                let f = &fs[c[0] as usize];
                let g = &fs[c[1] as usize];
                let order = MonotoneMap::leq(f, g) == Some(true);
                let incl = Rel::leq(&hypograph(f), &hypograph(g)) == Some(true);
                if order == incl {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        law: "hypograph-order-pres-refl".into(),
                        location: format!("hom({}, {})", preords[i], preords[j]),
                        items: vec![format!("f = {}", f), format!("g = {}", g)],
                        lhs: format!("f ≤ g is {}", order),
                        rhs: format!("R(f) ⊆ R(g) is {}", incl),
                    })
                }
            });
        }
    }

    run.finish()
}

/// The hypograph functor `R : FinPreord -> FinRel` with the lax structure
/// `ψ_{A,B} = R(id_{A×B})`, `ψ₀ = id`.
pub fn hypograph_functor<'a>(
    source: &'a FinPreordCat,
    target: &'a FinRelCat,
) -> FunctorData<'a, FinPreordCat, FinRelCat> {
    FunctorData {
        name: "hypograph".into(),
        source,
        target,
        obj_map: Box::new(|p| Some(p.size())),
        mor_map: Box::new(|f| Some(hypograph(f))),
        laxator: Some(Box::new(|a, b| {
            let prod = FinPreord::product(a, b);
            let id = MonotoneMap::identity(Rc::new(prod));
            Some(hypograph(&id))
        })),
        unit_lax: Some(Rel::identity(1)),
        oplaxator: None,
        unit_oplax: None,
    }
}

/// The hom-functor `C(A, -)` of FinRel into preorders, with its canonical
/// lax and oplax structure. Hom-preorders larger than the configured cap are
/// not materialized; instances touching them are skipped.
pub struct HomFunctor<'a> {
    pub base: &'a FinRelCat,
    pub a: usize,
    pub target: &'a FinPreordCat,
    obj_memo: RefCell<BTreeMap<usize, Option<Rc<FinPreord>>>>,
    lax_memo: RefCell<BTreeMap<(usize, usize), Option<MonotoneMap>>>,
    oplax_memo: RefCell<BTreeMap<(usize, usize), Option<MonotoneMap>>>,
}

pub fn hom_functor_to_preord<'a>(
    base: &'a FinRelCat,
    a: usize,
    target: &'a FinPreordCat,
) -> HomFunctor<'a> {
    HomFunctor {
        base,
        a,
        target,
        obj_memo: RefCell::new(BTreeMap::new()),
        lax_memo: RefCell::new(BTreeMap::new()),
        oplax_memo: RefCell::new(BTreeMap::new()),
    }
}

impl<'a> HomFunctor<'a> {
    /// The inclusion preorder on `hom(a, x)`, indexed by relation bitmask.
    fn hom_preord(&self, x: usize) -> Option<Rc<FinPreord>> {
        if let Some(p) = self.obj_memo.borrow().get(&x) {
            return p.clone();
        }
        let bits = self.a * x;
        let p = if bits <= 24 && (1usize << bits) <= self.target.size_cap {
            Some(Rc::new(FinPreord::inclusion_on_masks(bits)))
        } else {
            None
        };
        self.obj_memo.borrow_mut().insert(x, p.clone());
        p
    }

    fn mask(&self, r: &Rel) -> u32 {
        let mut m = 0u32;
        for (i, j) in r.pairs() {
            m |= 1 << (i * r.tgt() + j);
        }
        m
    }
}

impl<'a> crate::functor::Functor<FinRelCat, FinPreordCat> for HomFunctor<'a> {
    fn name(&self) -> String {
        format!("hom({}, -)", self.a)
    }
    fn src(&self) -> &FinRelCat {
        self.base
    }
    fn tgt(&self) -> &FinPreordCat {
        self.target
    }

    fn obj(&self, x: &usize) -> Option<Rc<FinPreord>> {
        self.hom_preord(*x)
    }

    fn mor(&self, f: &Rel) -> Option<MonotoneMap> {
        let (x, y) = (f.src(), f.tgt());
        let (px, py) = (self.hom_preord(x)?, self.hom_preord(y)?);
        let values = (0..px.size())
            .map(|m| {
                let h = Rel::from_mask(self.a, x, m as u128);
                let fh = Rel::compose(f, &h).unwrap();
                self.mask(&fh)
            })
            .collect();
        Some(MonotoneMap::new_unchecked(px, py, values))
    }

    fn laxator(&self, x: &usize, y: &usize) -> Option<MonotoneMap> {
        if let Some(m) = self.lax_memo.borrow().get(&(*x, *y)) {
            return m.clone();
        }
        let build = || {
            let (px, py) = (self.hom_preord(*x)?, self.hom_preord(*y)?);
            let pxy = self.hom_preord(x * y)?;
            let src = self.target.rc_product(&px, &py)?;
            let dup = Rel::dup(self.a);
            let ny = py.size();
            let values = (0..src.size())
                .map(|k| {
                    let (mi, mj) = (k / ny, k % ny);
                    let h = Rel::from_mask(self.a, *x, mi as u128);
                    let g = Rel::from_mask(self.a, *y, mj as u128);
                    let paired = Rel::compose(&Rel::tensor(&h, &g), &dup).unwrap();
                    self.mask(&paired)
                })
                .collect();
            Some(MonotoneMap::new_unchecked(src, pxy, values))
        };
        let m = build();
        self.lax_memo.borrow_mut().insert((*x, *y), m.clone());
        m
    }

    fn unit_lax(&self) -> Option<MonotoneMap> {
        // ψ₀ picks !_A out of C(A, I)
        let p1 = self.hom_preord(1)?;
        let bang = Rel::discharge(self.a);
        Some(MonotoneMap::new_unchecked(
            self.target.unit(),
            p1,
            vec![self.mask(&bang)],
        ))
    }

    fn oplaxator(&self, x: &usize, y: &usize) -> Option<MonotoneMap> {
        if let Some(m) = self.oplax_memo.borrow().get(&(*x, *y)) {
            return m.clone();
        }
        let build = || {
            let (px, py) = (self.hom_preord(*x)?, self.hom_preord(*y)?);
            let pxy = self.hom_preord(x * y)?;
            let tgt = self.target.rc_product(&px, &py)?;
            let proj1 = Rel::tensor(&Rel::identity(*x), &Rel::discharge(*y));
            let proj2 = Rel::tensor(&Rel::discharge(*x), &Rel::identity(*y));
            let ny = py.size() as u32;
            let values = (0..pxy.size())
                .map(|m| {
                    let f = Rel::from_mask(self.a, x * y, m as u128);
                    let l = Rel::compose(&proj1, &f).unwrap();
                    let r = Rel::compose(&proj2, &f).unwrap();
                    self.mask(&l) * ny + self.mask(&r)
                })
                .collect();
            Some(MonotoneMap::new_unchecked(pxy, tgt, values))
        };
        let m = build();
        self.oplax_memo.borrow_mut().insert((*x, *y), m.clone());
        m
    }

    fn unit_oplax(&self) -> Option<MonotoneMap> {
        let p1 = self.hom_preord(1)?;
        Some(MonotoneMap::new_unchecked(
            p1.clone(),
            self.target.unit(),
            vec![0; p1.size()],
        ))
    }

    fn has_lax(&self) -> bool {
        true
    }
    fn has_oplax(&self) -> bool {
        true
    }
}

/// For each pair `(f, g)` verifies that `f ≤ g`, the pointwise comparison of
/// `C(X, f)` and `C(X, g)` over every fixture object `X`, and the same
/// comparison transported along the hypograph into relations, all agree.
pub fn completeness_experiment(
    cat: &FinRelCat,
    pairs: &[(Rel, Rel)],
    cfg: &CheckConfig,
) -> LawReport {
    let mut run = Run::new("completeness_experiment", cfg);
    let objs = cat.objects();
    run.group("completeness-two-routes", &[pairs.len() as u64], |c| {
        let (f, g) = &pairs[c[0] as usize];
        if f.src() != g.src() || f.tgt() != g.tgt() {
            return Outcome::Skip;
        }
        let direct = Rel::leq(f, g) == Some(true);
        let mut via_preord = true;
        let mut via_rel = true;
        let mut separation = None;
        for x in &objs {
            let Ok(hs) = cat.hom(x, &f.src(), cfg.hom_cap) else {
                return Outcome::Skip;
            };
            for h in &hs {
                let fh = Rel::compose(f, h).unwrap();
                let gh = Rel::compose(g, h).unwrap();
                if Rel::leq(&fh, &gh) != Some(true) {
                    via_preord = false;
                    if separation.is_none() {
                        separation = Some(format!("X = {}, h = {}", x, h));
                    }
                }
            }
            // hypograph route: R(C(X,f)) ⊆ R(C(X,g)) as relations between
            // hom(X, src) and hom(X, tgt)
            let Ok(ks) = cat.hom(x, &f.tgt(), cfg.hom_cap) else {
                return Outcome::Skip;
            };
            for h in &hs {
                let fh = Rel::compose(f, h).unwrap();
                let gh = Rel::compose(g, h).unwrap();
                for k in &ks {
                    let in_f = Rel::leq(k, &fh) == Some(true);
                    let in_g = Rel::leq(k, &gh) == Some(true);
                    if in_f && !in_g {
                        via_rel = false;
                    }
                }
            }
        }
        if direct == via_preord && direct == via_rel {
            Outcome::Ok
        } else {
            Outcome::Fail(Witness {
                law: "completeness-two-routes".into(),
                location: separation.unwrap_or_else(|| "pair".into()),
                items: vec![format!("f = {}", f), format!("g = {}", g)],
                lhs: format!("f ≤ g is {}", direct),
                rhs: format!("hom route: {}, rel route: {}", via_preord, via_rel),
            })
        }
    });
    run.finish()
}

/// On-disk preorder fixture; reflexive pairs may be omitted, the closure is
/// applied on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PreordFixture {
    pub size: usize,
    pub leq_pairs: Vec<(usize, usize)>,
}

impl PreordFixture {
    pub fn to_preord(&self) -> Result<FinPreord> {
        FinPreord::from_pairs_closed(self.size, &self.leq_pairs)
    }

    pub fn from_preord(p: &FinPreord) -> PreordFixture {
        PreordFixture {
            size: p.size(),
            leq_pairs: p.rel().pairs().into_iter().filter(|(x, y)| x != y).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::check_oplax_cartesian;
    use crate::functor::{
        check_colax_cartesian_lax_on_identities, check_lax_on_identities, compose_functors,
    };

    #[test]
    fn labeled_preorder_counts() {
        assert_eq!(all_preorders(1).len(), 1);
        assert_eq!(all_preorders(2).len(), 4);
        assert_eq!(all_preorders(3).len(), 29);
    }

    #[test]
    fn chain_squared_is_componentwise() {
        let c2 = FinPreord::chain2();
        let p = FinPreord::product(&c2, &c2);
        assert_eq!(p.size(), 4);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        assert_eq!(p.leq(a * 2 + b, c * 2 + d), a <= c && b <= d);
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_satisfies_universal_property() {
        let cat = FinPreordCat::new(all_preorders(2), 64);
        let c2 = Rc::new(FinPreord::chain2());
        let prod = cat.rc_product(&c2, &c2).unwrap();
        let (p1, p2) = MonotoneMap::projections(c2.clone(), c2.clone(), prod.clone());
        for f in cat.hom(&c2, &c2, 1000).unwrap() {
            for g in cat.hom(&c2, &c2, 1000).unwrap() {
                let pair = MonotoneMap::pairing(&f, &g, prod.clone()).unwrap();
                assert_eq!(MonotoneMap::compose(&p1, &pair).unwrap(), f);
                assert_eq!(MonotoneMap::compose(&p2, &pair).unwrap(), g);
            }
        }
    }

    #[test]
    fn hypograph_examples() {
        let c2 = Rc::new(FinPreord::chain2());
        let id = MonotoneMap::identity(c2.clone());
        assert_eq!(
            hypograph(&id),
            Rel::from_pairs(2, 2, &[(0, 0), (1, 0), (1, 1)]).unwrap()
        );
        let d3 = Rc::new(FinPreord::discrete(3));
        assert_eq!(hypograph(&MonotoneMap::identity(d3)), Rel::identity(3));
        // constant to the top of the chain: everything below
        let top = MonotoneMap::new(c2.clone(), c2.clone(), vec![1, 1]).unwrap();
        assert_eq!(hypograph(&top), Rel::full(2, 2));
    }

    #[test]
    fn non_monotone_map_is_rejected() {
        let c2 = Rc::new(FinPreord::chain2());
        assert!(matches!(
            MonotoneMap::new(c2.clone(), c2, vec![1, 0]),
            Err(Error::NotMonotone)
        ));
    }

    #[test]
    fn preord_cat_is_oplax_cartesian_with_equalities() {
        let cat = FinPreordCat::new(all_preorders(2), 64);
        let cfg = CheckConfig::default();
        let rep = check_oplax_cartesian(&cat, &cfg).unwrap();
        assert!(rep.passed(), "{}", rep);
        // cartesian: the oplax inequalities hold as equalities
        for a in cat.objects() {
            for b in cat.objects() {
                for f in cat.hom(&a, &b, 1000).unwrap() {
                    let l = MonotoneMap::compose(&cat.dup(&b).unwrap(), &f).unwrap();
                    let ff = cat.tensor_mor(&f, &f).unwrap();
                    let r = MonotoneMap::compose(&ff, &cat.dup(&a).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn hypograph_functoriality_suite_small() {
        let cfg = CheckConfig::default();
        let rep = check_hypograph_functoriality(&cfg);
        assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn hypograph_functor_is_colax_cartesian_lax_on_identities() {
        let cfg = CheckConfig::default();
        let src = FinPreordCat::new(all_preorders(2), cfg.preord_cap as usize);
        let tgt = FinRelCat::new(vec![1, 2]);
        let r = hypograph_functor(&src, &tgt);
        let rep = check_colax_cartesian_lax_on_identities(&r, &cfg).unwrap();
        assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn composite_with_hom_functor_is_lax_on_identities() {
        let cfg = CheckConfig::default();
        let base = FinRelCat::new(vec![1, 2]);
        let preord_target = FinPreordCat::new(vec![], cfg.preord_cap as usize);
        let hom = hom_functor_to_preord(&base, 2, &preord_target);
        let rel_target = FinRelCat::new(vec![1]);
        let r = hypograph_functor(&preord_target, &rel_target);
        let comp = compose_functors(&r, &hom);
        let rep = check_lax_on_identities(&comp, &cfg).unwrap();
        assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn completeness_on_exhaustive_small_pairs() {
        let cat = FinRelCat::new(vec![1, 2]);
        let cfg = CheckConfig::default();
        let mut pairs = Vec::new();
        for m in 0..16u128 {
            for k in 0..16u128 {
                pairs.push((Rel::from_mask(2, 2, m), Rel::from_mask(2, 2, k)));
            }
        }
        let rep = completeness_experiment(&cat, &pairs, &cfg);
        assert!(rep.passed(), "{}", rep);
        assert_eq!(rep.checked, 256);
    }
}
