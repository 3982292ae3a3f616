//! Finite ordinals and boolean-matrix relations: the running oplax cartesian
//! model. Objects are sizes, the tensor is multiplication of sizes with
//! row-major pairing of elements, and the hom-set order is inclusion.

use serde::{Deserialize, Serialize};

use crate::category::GsCategory;
use crate::error::{Error, Result};

/// A relation between finite ordinals, stored as one bit row per source
/// element. Trailing bits of the last word are kept zero so that derived
/// equality and ordering are canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rel {
    src: usize,
    tgt: usize,
    rows: Vec<Vec<u64>>,
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl Rel {
    pub fn empty(src: usize, tgt: usize) -> Rel {
        Rel {
            src,
            tgt,
            rows: vec![vec![0; words_for(tgt)]; src],
        }
    }

    pub fn full(src: usize, tgt: usize) -> Rel {
        let mut r = Rel::empty(src, tgt);
        for a in 0..src {
            for b in 0..tgt {
                r.set(a, b);
            }
        }
        r
    }

    pub fn from_pairs(src: usize, tgt: usize, pairs: &[(usize, usize)]) -> Result<Rel> {
        let mut r = Rel::empty(src, tgt);
        for &(a, b) in pairs {
            if a >= src || b >= tgt {
                return Err(Error::DimensionMismatch(format!(
                    "pair ({}, {}) out of range for {}x{}",
                    a, b, src, tgt
                )));
            }
            r.set(a, b);
        }
        Ok(r)
    }

    /// Decodes a bitmask where bit `a*tgt + b` means `a R b`.
    pub fn from_mask(src: usize, tgt: usize, mask: u128) -> Rel {
        let mut r = Rel::empty(src, tgt);
        for a in 0..src {
            for b in 0..tgt {
                if mask >> (a * tgt + b) & 1 == 1 {
                    r.set(a, b);
                }
            }
        }
        r
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        self.rows[a][b / 64] >> (b % 64) & 1 == 1
    }

    pub fn set(&mut self, a: usize, b: usize) {
        self.rows[a][b / 64] |= 1 << (b % 64);
    }

    pub fn unset(&mut self, a: usize, b: usize) {
        self.rows[a][b / 64] &= !(1 << (b % 64));
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.src {
            for b in 0..self.tgt {
                if self.get(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn identity(n: usize) -> Rel {
        let mut r = Rel::empty(n, n);
        for a in 0..n {
            r.set(a, a);
        }
        r
    }

    /// Boolean matrix product: first `r`, then `s`.
    pub fn compose(s: &Rel, r: &Rel) -> Result<Rel> {
        if r.tgt != s.src {
            return Err(Error::DimensionMismatch(format!(
                "compose: {}x{} after {}x{}",
                s.src, s.tgt, r.src, r.tgt
            )));
        }
        let mut out = Rel::empty(r.src, s.tgt);
        for a in 0..r.src {
            for b in 0..r.tgt {
                if r.get(a, b) {
                    for (w, word) in s.rows[b].iter().enumerate() {
                        out.rows[a][w] |= word;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker-style tensor under the row-major pairing `p(a,b) = a·n + b`.
    pub fn tensor(r: &Rel, s: &Rel) -> Rel {
        let mut out = Rel::empty(r.src * s.src, r.tgt * s.tgt);
        for a in 0..r.src {
            for b in 0..r.tgt {
                if !r.get(a, b) {
                    continue;
                }
                for c in 0..s.src {
                    for d in 0..s.tgt {
                        if s.get(c, d) {
                            out.set(a * s.src + c, b * s.tgt + d);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn symmetry(m: usize, n: usize) -> Rel {
        let mut r = Rel::empty(m * n, n * m);
        for a in 0..m {
            for b in 0..n {
                r.set(a * n + b, b * m + a);
            }
        }
        r
    }

    /// `∇_n` relates `a` to `p(a, a)`.
    pub fn dup(n: usize) -> Rel {
        let mut r = Rel::empty(n, n * n);
        for a in 0..n {
            r.set(a, a * n + a);
        }
        r
    }

    /// `!_n` relates every `a` to the point.
    pub fn discharge(n: usize) -> Rel {
        Rel::full(n, 1)
    }

    /// Entrywise implication, i.e. set inclusion.
    pub fn leq(r: &Rel, s: &Rel) -> Option<bool> {
        if r.src != s.src || r.tgt != s.tgt {
            return None;
        }
        Some(
            r.rows
                .iter()
                .zip(&s.rows)
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x & !y == 0)),
        )
    }

    /// At most one related element per source element.
    pub fn is_partial_function(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.iter().map(|w| w.count_ones()).sum::<u32>() <= 1)
    }

    /// At least one related element per source element.
    pub fn is_total_relation(&self) -> bool {
        self.rows.iter().all(|row| row.iter().any(|w| *w != 0))
    }

    /// The set-theoretic domain formula: `{(a,a) : ∃b. a R b}`.
    pub fn dom_settheoretic(&self) -> Rel {
        let mut out = Rel::empty(self.src, self.src);
        for a in 0..self.src {
            if self.rows[a].iter().any(|w| *w != 0) {
                out.set(a, a);
            }
        }
        out
    }
}

impl std::fmt::Display for Rel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}->{}{{", self.src, self.tgt)?;
        let mut first = true;
        for (a, b) in self.pairs() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "({},{})", a, b)?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// FinRel restricted to a fixture list of sizes, ordered by inclusion.
/// Tensors and composites are always evaluable as values; the size list only
/// anchors quantified checks.
#[derive(Debug, Clone)]
pub struct FinRelCat {
    pub sizes: Vec<usize>,
}

impl FinRelCat {
    pub fn new(mut sizes: Vec<usize>) -> FinRelCat {
        if !sizes.contains(&1) {
            sizes.push(1);
        }
        sizes.sort_unstable();
        sizes.dedup();
        FinRelCat { sizes }
    }
}

impl GsCategory for FinRelCat {
    type Obj = usize;
    type Mor = Rel;

    fn name(&self) -> String {
        format!("finrel{:?}", self.sizes)
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

    fn mor_dom(&self, f: &Rel) -> usize {
        f.src
    }

    fn mor_cod(&self, f: &Rel) -> usize {
        f.tgt
    }

    fn identity(&self, a: &usize) -> Option<Rel> {
        Some(Rel::identity(*a))
    }

    fn compose(&self, g: &Rel, f: &Rel) -> Option<Rel> {
        Rel::compose(g, f).ok()
    }

    fn tensor_mor(&self, f: &Rel, g: &Rel) -> Option<Rel> {
        Some(Rel::tensor(f, g))
    }

    fn symmetry(&self, a: &usize, b: &usize) -> Option<Rel> {
        Some(Rel::symmetry(*a, *b))
    }

    fn dup(&self, a: &usize) -> Option<Rel> {
        Some(Rel::dup(*a))
    }

    fn discharge(&self, a: &usize) -> Option<Rel> {
        Some(Rel::discharge(*a))
    }

    fn has_order(&self) -> bool {
        true
    }

    fn leq(&self, f: &Rel, g: &Rel) -> Option<bool> {
        Rel::leq(f, g)
    }

    fn hom_size(&self, a: &usize, b: &usize) -> Option<u128> {
        let bits = a.checked_mul(*b)?;
        if bits >= 127 {
            None
        } else {
            Some(1u128 << bits)
        }
    }

    fn hom(&self, a: &usize, b: &usize, cap: u64) -> Result<Vec<Rel>> {
        let size = self.hom_size(a, b).ok_or_else(|| {
            Error::Infeasible(format!("hom({}, {}) in FinRel is astronomically large", a, b))
        })?;
        if size > cap as u128 {
            return Err(Error::Infeasible(format!(
                "hom({}, {}) in FinRel has {} relations, cap is {}",
                a, b, size, cap
            )));
        }
        Ok((0..size).map(|m| Rel::from_mask(*a, *b, m)).collect())
    }
}

/// On-disk relation fixture. Pairs are sorted lexicographically on write.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelFixture {
    pub src: usize,
    pub tgt: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl RelFixture {
    pub fn from_rel(r: &Rel) -> RelFixture {
        RelFixture {
            src: r.src(),
            tgt: r.tgt(),
            pairs: r.pairs(),
        }
    }

    pub fn to_rel(&self) -> Result<Rel> {
        Rel::from_pairs(self.src, self.tgt, &self.pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{dom_morphism, is_functional, is_total};
    use crate::checks::{check_category_and_monoidal, check_gs_axioms, check_oplax_cartesian};
    use crate::report::CheckConfig;

    #[test]
    fn compose_matches_hand_example() {
        // {(0,1)} : 1->2 then {(1,0)} : 2->1 gives {(0,0)} : 1->1
        let r = Rel::from_pairs(1, 2, &[(0, 1)]).unwrap();
        let s = Rel::from_pairs(2, 1, &[(1, 0)]).unwrap();
        let c = Rel::compose(&s, &r).unwrap();
        assert_eq!(c, Rel::from_pairs(1, 1, &[(0, 0)]).unwrap());
    }

    #[test]
    fn dup_uses_row_major_pairing() {
        assert_eq!(
            Rel::dup(2),
            Rel::from_pairs(2, 4, &[(0, 0), (1, 3)]).unwrap()
        );
    }

    #[test]
    fn empty_relation_is_least() {
        let e = Rel::empty(2, 3);
        for m in 0..64u128 {
            let r = Rel::from_mask(2, 3, m);
            assert_eq!(Rel::leq(&e, &r), Some(true));
        }
    }

    #[test]
    fn compose_associative_and_unital_exhaustive_small() {
        // all triples 2 -> 2 -> 2 -> 2 plus identity laws on sizes <= 3
        let h22 = (0..16).map(|m| Rel::from_mask(2, 2, m)).collect::<Vec<_>>();
        for f in &h22 {
            for g in &h22 {
                for h in &h22 {
                    let l = Rel::compose(h, &Rel::compose(g, f).unwrap()).unwrap();
                    let r = Rel::compose(&Rel::compose(h, g).unwrap(), f).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
        for m in 1..=3usize {
            for n in 1..=3usize {
                for mask in 0..(1u128 << (m * n)) {
                    let f = Rel::from_mask(m, n, mask);
                    assert_eq!(Rel::compose(&Rel::identity(n), &f).unwrap(), f);
                    assert_eq!(Rel::compose(&f, &Rel::identity(m)).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn partial_function_and_total_predicates() {
        let r = Rel::from_pairs(2, 2, &[(0, 0), (0, 1)]).unwrap();
        assert!(!r.is_partial_function());
        assert!(!r.is_total_relation());
        let p = Rel::from_pairs(2, 2, &[(0, 0)]).unwrap();
        assert!(p.is_partial_function());
        assert!(!p.is_total_relation());
        assert!(Rel::identity(3).is_partial_function());
        assert!(Rel::identity(3).is_total_relation());
    }

    #[test]
    fn predicates_agree_with_structural_equations_sizes_up_to_3() {
        let cat = FinRelCat::new(vec![1, 2, 3]);
        for m in 1..=3usize {
            for n in 1..=3usize {
                for mask in 0..(1u128 << (m * n)) {
                    let f = Rel::from_mask(m, n, mask);
                    assert_eq!(is_total(&cat, &f).unwrap(), f.is_total_relation());
                    assert_eq!(is_functional(&cat, &f).unwrap(), f.is_partial_function());
                    let d = dom_morphism(&cat, &f).unwrap();
                    assert_eq!(d, f.dom_settheoretic());
                }
            }
        }
    }

    #[test]
    fn dom_of_running_examples() {
        let cat = FinRelCat::new(vec![1, 2]);
        let r = Rel::from_pairs(2, 2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(
            dom_morphism(&cat, &r).unwrap(),
            Rel::from_pairs(2, 2, &[(0, 0)]).unwrap()
        );
        let total = Rel::from_pairs(2, 1, &[(0, 0), (1, 0)]).unwrap();
        assert_eq!(dom_morphism(&cat, &total).unwrap(), Rel::identity(2));
        assert_eq!(
            dom_morphism(&cat, &Rel::identity(2)).unwrap(),
            Rel::identity(2)
        );
    }

    #[test]
    fn small_fixture_passes_all_three_suites() {
        let cat = FinRelCat::new(vec![1, 2]);
        let cfg = CheckConfig::default();
        assert!(check_category_and_monoidal(&cat, &cfg).passed());
        assert!(check_gs_axioms(&cat, &cfg).passed());
        assert!(check_oplax_cartesian(&cat, &cfg).unwrap().passed());
    }

    #[test]
    fn totals_and_functionals_closed_under_compose_and_tensor() {
        let cat = FinRelCat::new(vec![1, 2, 3]);
        let all: Vec<Rel> = (1..=3usize)
            .flat_map(|m| (1..=3usize).map(move |n| (m, n)))
            .flat_map(|(m, n)| (0..(1u128 << (m * n))).map(move |k| Rel::from_mask(m, n, k)))
            .collect();
        for f in &all {
            for g in &all {
                if f.tgt() == g.src() {
                    let gf = Rel::compose(g, f).unwrap();
                    if f.is_total_relation() && g.is_total_relation() {
                        assert!(gf.is_total_relation());
                    }
                    if f.is_partial_function() && g.is_partial_function() {
                        assert!(gf.is_partial_function());
                    }
                }
                let t = Rel::tensor(f, g);
                if f.is_total_relation() && g.is_total_relation() {
                    assert!(t.is_total_relation());
                }
                if f.is_partial_function() && g.is_partial_function() {
                    assert!(t.is_partial_function());
                }
                let _ = &cat;
            }
        }
    }

    #[test]
    fn hom_enumeration_respects_cap() {
        let cat = FinRelCat::new(vec![1, 2, 4, 8]);
        assert!(cat.hom(&4, &8, 100).is_err());
        assert_eq!(cat.hom(&1, &1, 100).unwrap().len(), 2);
        assert_eq!(cat.hom(&2, &2, 100).unwrap().len(), 16);
    }
}
