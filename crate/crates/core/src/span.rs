//! Spans of finite sets up to isomorphism, composed by pullback, with the
//! 2-cell preorder. Over finite sets an isomorphism class of spans is exactly
//! a multiset of (left-image, right-image) pairs, so the canonical form is
//! the sorted pair list and equality is literal equality of canonical forms.

use serde::{Deserialize, Serialize};

use crate::category::GsCategory;
use crate::error::{Error, Result};
use crate::report::CheckConfig;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    src: usize,
    tgt: usize,
    /// canonical: sorted lexicographically, one entry per apex element
    pairs: Vec<(u32, u32)>,
}

impl Span {
    /// Canonicalizes explicit leg arrays; two spans are isomorphic iff their
    /// canonical forms coincide.
    pub fn new(src: usize, tgt: usize, left: &[usize], right: &[usize]) -> Result<Span> {
        if left.len() != right.len() {
            return Err(Error::DimensionMismatch("leg arrays differ in length".into()));
        }
        if left.iter().any(|&x| x >= src) || right.iter().any(|&y| y >= tgt) {
            return Err(Error::DimensionMismatch("leg value out of range".into()));
        }
        let mut pairs: Vec<(u32, u32)> = left
            .iter()
            .zip(right)
            .map(|(&l, &r)| (l as u32, r as u32))
            .collect();
        pairs.sort_unstable();
        Ok(Span { src, tgt, pairs })
    }

    fn from_pairs(src: usize, tgt: usize, mut pairs: Vec<(u32, u32)>) -> Span {
        pairs.sort_unstable();
        Span { src, tgt, pairs }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn apex(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn left(&self, a: usize) -> usize {
        self.pairs[a].0 as usize
    }

    pub fn right(&self, a: usize) -> usize {
        self.pairs[a].1 as usize
    }

    pub fn identity(n: usize) -> Span {
        Span {
            src: n,
            tgt: n,
            pairs: (0..n as u32).map(|a| (a, a)).collect(),
        }
    }

    /// Pullback composition: apex `{(a, b) : s.right(a) = t.left(b)}`.
    pub fn compose(t: &Span, s: &Span) -> Result<Span> {
        if s.tgt != t.src {
            return Err(Error::DimensionMismatch(format!(
                "compose: {}->{} after {}->{}",
                t.src, t.tgt, s.src, s.tgt
            )));
        }
        let mut pairs = Vec::new();
        for &(al, ar) in &s.pairs {
            for &(bl, br) in &t.pairs {
                if ar == bl {
                    pairs.push((al, br));
                }
            }
        }
        Ok(Span::from_pairs(s.src, t.tgt, pairs))
    }

    /// Tensor: product apex with row-major paired legs.
    pub fn tensor(s: &Span, t: &Span) -> Span {
        let mut pairs = Vec::with_capacity(s.apex() * t.apex());
        for &(al, ar) in &s.pairs {
            for &(bl, br) in &t.pairs {
                pairs.push((
                    al * t.src as u32 + bl,
                    ar * t.tgt as u32 + br,
                ));
            }
        }
        Span::from_pairs(s.src * t.src, s.tgt * t.tgt, pairs)
    }

    pub fn symmetry(m: usize, n: usize) -> Span {
        Span::from_pairs(
            m * n,
            n * m,
            (0..m as u32)
                .flat_map(|a| (0..n as u32).map(move |b| (a * n as u32 + b, b * m as u32 + a)))
                .collect(),
        )
    }

    /// `∇_n = (n ← n → n × n)` with the right leg the diagonal.
    pub fn dup(n: usize) -> Span {
        Span {
            src: n,
            tgt: n * n,
            pairs: (0..n as u32).map(|a| (a, a * n as u32 + a)).collect(),
        }
    }

    /// `!_n = (n ← n → 1)`.
    pub fn discharge(n: usize) -> Span {
        Span {
            src: n,
            tgt: 1,
            pairs: (0..n as u32).map(|a| (a, 0)).collect(),
        }
    }

    /// 2-cell search: a map α from this apex to `t`'s apex commuting with
    /// both legs, found by backtracking. Returns the assignment.
    pub fn leq_search(&self, t: &Span) -> Result<Option<Vec<usize>>> {
        if self.src != t.src || self.tgt != t.tgt {
            return Err(Error::DimensionMismatch("2-cell between non-parallel spans".into()));
        }
        fn assign(s: &Span, t: &Span, alpha: &mut Vec<usize>) -> bool {
            let i = alpha.len();
            if i == s.pairs.len() {
                return true;
            }
            for (j, &p) in t.pairs.iter().enumerate() {
                if p == s.pairs[i] {
                    alpha.push(j);
                    if assign(s, t, alpha) {
                        return true;
                    }
                    alpha.pop();
                }
            }
            false
        }
        let mut alpha = Vec::with_capacity(self.pairs.len());
        if assign(self, t, &mut alpha) {
            Ok(Some(alpha))
        } else {
            Ok(None)
        }
    }

    /// The support criterion: the pair set of `self` is contained in the
    /// pair set of `t`. Must agree with [`Span::leq_search`].
    pub fn leq_support(&self, t: &Span) -> Result<bool> {
        if self.src != t.src || self.tgt != t.tgt {
            return Err(Error::DimensionMismatch("order between non-parallel spans".into()));
        }
        Ok(self.pairs.iter().all(|p| t.pairs.binary_search(p).is_ok()))
    }

    /// Fiber condition: equal left images force equal right images.
    pub fn is_weakly_functional(&self) -> bool {
        for (i, &(al, ar)) in self.pairs.iter().enumerate() {
            for &(bl, br) in &self.pairs[i + 1..] {
                if al == bl && ar != br {
                    return false;
                }
            }
        }
        true
    }

    /// Split epi left leg: over finite sets, surjectivity.
    pub fn is_weakly_total(&self) -> bool {
        let mut seen = vec![false; self.src];
        for &(l, _) in &self.pairs {
            seen[l as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}<-{}->{}{{", self.src, self.apex(), self.tgt)?;
        for (i, (l, r)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", l, r)?;
        }
        write!(f, "}}")
    }
}

/// PSpan(FinSet) truncated to a size fixture, with spans enumerated up to an
/// apex bound. Composites and tensors are computed exactly even when their
/// apex exceeds the bound; such values simply fall outside the enumerated
/// hom-sets.
#[derive(Debug, Clone)]
pub struct PSpanCat {
    pub sizes: Vec<usize>,
    pub apex_bound: usize,
}

impl PSpanCat {
    pub fn new(mut sizes: Vec<usize>, apex_bound: usize) -> PSpanCat {
        if !sizes.contains(&1) {
            sizes.push(1);
        }
        sizes.sort_unstable();
        sizes.dedup();
        PSpanCat { sizes, apex_bound }
    }
}

fn multisets(pool: usize, k: usize) -> u128 {
    // C(pool + k - 1, k)
    if k == 0 {
        return 1;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k as u128 {
        num *= (pool as u128) + i;
        den *= i + 1;
    }
    num / den
}

impl GsCategory for PSpanCat {
    type Obj = usize;
    type Mor = Span;

    fn name(&self) -> String {
        format!("pspan{:?}[apex<={}]", self.sizes, self.apex_bound)
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

    fn mor_dom(&self, f: &Span) -> usize {
        f.src
    }

    fn mor_cod(&self, f: &Span) -> usize {
        f.tgt
    }

    fn identity(&self, a: &usize) -> Option<Span> {
        Some(Span::identity(*a))
    }

    fn compose(&self, g: &Span, f: &Span) -> Option<Span> {
        Span::compose(g, f).ok()
    }

    fn tensor_mor(&self, f: &Span, g: &Span) -> Option<Span> {
        Some(Span::tensor(f, g))
    }

    fn symmetry(&self, a: &usize, b: &usize) -> Option<Span> {
        Some(Span::symmetry(*a, *b))
    }

    fn dup(&self, a: &usize) -> Option<Span> {
        Some(Span::dup(*a))
    }

    fn discharge(&self, a: &usize) -> Option<Span> {
        Some(Span::discharge(*a))
    }

    fn has_order(&self) -> bool {
        true
    }

    fn leq(&self, f: &Span, g: &Span) -> Option<bool> {
        f.leq_support(g).ok()
    }

    fn hom_size(&self, a: &usize, b: &usize) -> Option<u128> {
        let pool = a.checked_mul(*b)?;
        Some((0..=self.apex_bound).map(|k| multisets(pool, k)).sum())
    }

    fn hom(&self, a: &usize, b: &usize, cap: u64) -> Result<Vec<Span>> {
        let size = self.hom_size(a, b).unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(Error::Infeasible(format!(
                "hom({}, {}) has {} spans with apex ≤ {}, cap is {}",
                a, b, size, self.apex_bound, cap
            )));
        }
        // multisets of pairs, smallest apex first, lexicographic within
        let pool: Vec<(u32, u32)> = (0..*a as u32)
            .flat_map(|l| (0..*b as u32).map(move |r| (l, r)))
            .collect();
        let mut out = Vec::new();
        let mut current: Vec<(u32, u32)> = Vec::new();
        fn rec(
            pool: &[(u32, u32)],
            start: usize,
            remaining: usize,
            current: &mut Vec<(u32, u32)>,
            out: &mut Vec<Vec<(u32, u32)>>,
        ) {
            out.push(current.clone());
            if remaining == 0 {
                return;
            }
            for i in start..pool.len() {
                current.push(pool[i]);
                rec(pool, i, remaining - 1, current, out);
                current.pop();
            }
        }
        let mut lists = Vec::new();
        rec(&pool, 0, self.apex_bound, &mut current, &mut lists);
        for pairs in lists {
            out.push(Span {
                src: *a,
                tgt: *b,
                pairs,
            });
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Span fixture `{src, tgt, left, right}`; canonicalized on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpanFixture {
    pub src: usize,
    pub tgt: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl SpanFixture {
    pub fn to_span(&self) -> Result<Span> {
        Span::new(self.src, self.tgt, &self.left, &self.right)
    }

    pub fn from_span(s: &Span) -> SpanFixture {
        SpanFixture {
            src: s.src(),
            tgt: s.tgt(),
            left: s.pairs().iter().map(|&(l, _)| l as usize).collect(),
            right: s.pairs().iter().map(|&(_, r)| r as usize).collect(),
        }
    }
}

/// Exhaustive agreement of the 2-cell search with the support criterion over
/// all enumerated span pairs of the fixture.
pub fn check_span_order_agreement(cat: &PSpanCat, cfg: &CheckConfig) -> crate::report::LawReport {
    use crate::report::{Outcome, Run, Witness};
    let mut run = Run::new("check_span_order_agreement", cfg);
    for a in &cat.sizes {
        for b in &cat.sizes {
            let Ok(spans) = cat.hom(a, b, cfg.hom_cap) else {
                run.skip_group("span-order-agreement");
                continue;
            };
            let n = spans.len() as u64;
            run.group("span-order-agreement", &[n, n], |c| {
                let s = &spans[c[0] as usize];
                let t = &spans[c[1] as usize];
                let search = s.leq_search(t).unwrap().is_some();
                let support = s.leq_support(t).unwrap();
                if search == support {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        law: "span-order-agreement".into(),
                        location: format!("hom({}, {})", a, b),
                        items: vec![format!("s = {}", s), format!("t = {}", t)],
                        lhs: format!("2-cell search: {}", search),
                        rhs: format!("support criterion: {}", support),
                    })
                }
            });
        }
    }
    run.finish()
}

/// Agreement of the component-level weak functionality/totality criteria with
/// the generic preorder-equivalence definitions, on every enumerated span.
pub fn check_span_weak_predicates(cat: &PSpanCat, cfg: &CheckConfig) -> crate::report::LawReport {
    use crate::category::{is_weakly_functional, is_weakly_total};
    use crate::report::{Outcome, Run, Witness};
    let mut run = Run::new("check_span_weak_predicates", cfg);
    for a in &cat.sizes {
        for b in &cat.sizes {
            let Ok(spans) = cat.hom(a, b, cfg.hom_cap) else {
                run.skip_group("span-weak-predicates");
                continue;
            };
            run.group("span-weak-predicates", &[spans.len() as u64], |c| {
                let s = &spans[c[0] as usize];
                let (Ok(wf), Ok(wt)) = (is_weakly_functional(cat, s), is_weakly_total(cat, s))
                else {
                    return Outcome::Skip;
                };
                if wf == s.is_weakly_functional() && wt == s.is_weakly_total() {
                    Outcome::Ok
                } else {
                    Outcome::Fail(Witness {
                        law: "span-weak-predicates".into(),
                        location: format!("hom({}, {})", a, b),
                        items: vec![format!("s = {}", s)],
                        lhs: format!("generic: functional={}, total={}", wf, wt),
                        rhs: format!(
                            "criteria: functional={}, total={}",
                            s.is_weakly_functional(),
                            s.is_weakly_total()
                        ),
                    })
                }
            });
        }
    }
    run.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{check_category_and_monoidal, check_dup_discharge_uniqueness, check_gs_axioms, check_oplax_cartesian};

    #[test]
    fn canonical_form_sorts_pairs() {
        let s = Span::new(2, 2, &[1, 0], &[0, 0]).unwrap();
        assert_eq!(s.pairs(), &[(0, 0), (1, 0)]);
        let t = Span::new(2, 2, &[0, 1], &[0, 0]).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn identity_span_and_unit_composition() {
        let s = Span::new(2, 3, &[0, 0, 1], &[0, 2, 1]).unwrap();
        assert_eq!(Span::compose(&s, &Span::identity(2)).unwrap(), s);
        assert_eq!(Span::compose(&Span::identity(3), &s).unwrap(), s);
    }

    #[test]
    fn pullback_composition_example() {
        // s = (2 <- 1 -> 2) with left 0↦0, right 0↦1; t = (2 <- 2 -> 1)
        let s = Span::new(2, 2, &[0], &[1]).unwrap();
        let t = Span::new(2, 1, &[0, 1], &[0, 0]).unwrap();
        let c = Span::compose(&t, &s).unwrap();
        assert_eq!(c, Span::new(2, 1, &[0], &[0]).unwrap());
    }

    #[test]
    fn dup_uses_row_major_pairing() {
        let d = Span::dup(2);
        assert_eq!(d.pairs(), &[(0, 0), (1, 3)]);
    }

    #[test]
    fn order_examples() {
        let s = Span::new(2, 2, &[0], &[0]).unwrap();
        assert!(s.leq_search(&s).unwrap().is_some());
        // doubled apex is equivalent but not equal
        let doubled = Span::new(2, 2, &[0, 0], &[0, 0]).unwrap();
        assert!(s.leq_search(&doubled).unwrap().is_some());
        assert!(doubled.leq_search(&s).unwrap().is_some());
        assert_ne!(s, doubled);
        let t = Span::new(2, 2, &[1], &[1]).unwrap();
        assert!(s.leq_search(&t).unwrap().is_none());
        assert!(t.leq_search(&s).unwrap().is_none());
        assert!(Span::new(2, 2, &[], &[]).unwrap().leq_support(&s).unwrap());
    }

    #[test]
    fn weak_predicates_on_examples() {
        // image of a function: identity left leg
        let f = Span::new(2, 2, &[0, 1], &[1, 1]).unwrap();
        assert!(f.is_weakly_functional());
        assert!(f.is_weakly_total());
        let shared = Span::new(2, 2, &[0, 0], &[0, 1]).unwrap();
        assert!(!shared.is_weakly_functional());
        let partial = Span::new(2, 1, &[0], &[0]).unwrap();
        assert!(!partial.is_weakly_total());
    }

    #[test]
    fn hom_enumeration_counts() {
        let cat = PSpanCat::new(vec![1], 4);
        // spans 1 -> 1 with apex <= 4: one per apex size
        assert_eq!(cat.hom(&1, &1, 1000).unwrap().len(), 5);
        let cat2 = PSpanCat::new(vec![1, 2], 2);
        // pool of 4 pairs, apexes 0,1,2: 1 + 4 + 10
        assert_eq!(cat2.hom(&2, &2, 1000).unwrap().len(), 15);
        assert_eq!(cat2.hom_size(&2, &2), Some(15));
    }

    #[test]
    fn small_pspan_fixture_passes_suites() {
        let cat = PSpanCat::new(vec![1, 2], 3);
        let cfg = CheckConfig::default();
        let rep = check_category_and_monoidal(&cat, &cfg);
        assert!(rep.passed(), "{}", rep);
        let rep = check_gs_axioms(&cat, &cfg);
        assert!(rep.passed(), "{}", rep);
        let rep = check_oplax_cartesian(&cat, &cfg).unwrap();
        assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn order_agreement_and_weak_predicates_small() {
        let cat = PSpanCat::new(vec![1, 2], 3);
        let cfg = CheckConfig::default();
        assert!(check_span_order_agreement(&cat, &cfg).passed());
        assert!(check_span_weak_predicates(&cat, &cfg).passed());
    }

    #[test]
    fn doubled_dup_is_equivalent_but_distinct() {
        let cat = PSpanCat::new(vec![1, 2], 4);
        let cfg = CheckConfig::default();
        let alt = |a: &usize| -> Option<(Span, Span)> {
            let n = *a;
            // duplicate every apex element of ∇ and !
            let left: Vec<usize> = (0..n).flat_map(|x| [x, x]).collect();
            let dup_right: Vec<usize> = (0..n).flat_map(|x| [x * n + x, x * n + x]).collect();
            let dis_right: Vec<usize> = vec![0; 2 * n];
            Some((
                Span::new(n, n * n, &left, &dup_right).unwrap(),
                Span::new(n, 1, &left, &dis_right).unwrap(),
            ))
        };
        let rep = check_dup_discharge_uniqueness(&cat, &alt, &cfg).unwrap();
        assert!(rep.passed(), "{}", rep);
        // and the doubled structure is genuinely distinct
        assert_ne!(alt(&2).unwrap().0, Span::dup(2));
    }

    #[test]
    fn apex_bound_zero_still_passes_category_laws() {
        let cat = PSpanCat::new(vec![1, 2], 0);
        let cfg = CheckConfig::default();
        // only empty spans; degenerate but lawful
        let rep = check_category_and_monoidal(&cat, &cfg);
        assert!(rep.passed(), "{}", rep);
    }
}
