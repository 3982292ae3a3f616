//! Verdicts, counterexample witnesses and the instance-enumeration engine.
//!
//! Every checker quantifies laws over finite instance spaces. Small spaces are
//! enumerated exhaustively; spaces larger than the configured per-group budget
//! are sampled with a seeded generator and the report flags the law as
//! `sampled`, so a pass on a sampled law is never silently presented as an
//! exhaustive one.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Knobs shared by all checkers. The same config (including `seed`) yields
/// byte-identical reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckConfig {
    /// Seed for sampled instance groups and sampled monad values.
    pub seed: u64,
    /// Max instances enumerated per law group before switching to sampling.
    pub group_budget: u64,
    /// Max morphisms materialized per hom-set; beyond it enumeration is refused.
    pub hom_cap: u64,
    /// Max size of a preorder materialized with an explicit relation matrix.
    pub preord_cap: u64,
    /// Apex bound for enumerated spans.
    pub span_apex_bound: usize,
    /// Number of sampled values/morphisms for non-enumerable monads and FinStoch.
    pub samples: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            group_budget: 2048,
            hom_cap: 65_536,
            preord_cap: 4096,
            span_apex_bound: 4,
            samples: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A concrete violation: the named law, where it happened, and both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub law: String,
    pub location: String,
    pub items: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "law `{}` at {}", self.law, self.location)?;
        for it in &self.items {
            write!(f, "\n    {}", it)?;
        }
        write!(f, "\n    lhs = {}\n    rhs = {}", self.lhs, self.rhs)
    }
}

/// Per-law bookkeeping inside a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawStat {
    pub law: String,
    pub checked: u64,
    pub skipped: u64,
    pub sampled: bool,
    pub failed: bool,
}

/// Outcome of one checker invocation.
///
/// Invariant: `verdict == Fail` iff `witness.is_some()`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawReport {
    pub op: String,
    pub verdict: Verdict,
    pub checked: u64,
    pub skipped: u64,
    pub sampled: bool,
    pub laws: Vec<LawStat>,
    pub witness: Option<Witness>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl std::fmt::Display for LawReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
        };
        write!(
            f,
            "{}: {} ({} checked, {} skipped{})",
            self.op,
            v,
            self.checked,
            self.skipped,
            if self.sampled { ", sampled" } else { "" }
        )?;
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {}", w)?;
        }
        Ok(())
    }
}

pub(crate) const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
pub(crate) const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// Deterministic string hash (std's hasher is not guaranteed stable).
pub(crate) fn fnv1a(s: &str) -> u64 {
    let mut h = FNV_OFFSET;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Accumulates one checker run: laws, counters, first witness.
pub(crate) struct Run {
    op: String,
    seed: u64,
    group_budget: u64,
    laws: Vec<LawStat>,
    witness: Option<Witness>,
    group_counter: u64,
}

pub(crate) enum Outcome {
    Ok,
    Skip,
    Fail(Witness),
}

impl Run {
    pub fn new(op: &str, cfg: &CheckConfig) -> Self {
        Run {
            op: op.to_string(),
            seed: cfg.seed,
            group_budget: cfg.group_budget,
            laws: Vec::new(),
            witness: None,
            group_counter: 0,
        }
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    fn law_mut(&mut self, law: &str) -> usize {
        if let Some(i) = self.laws.iter().position(|l| l.law == law) {
            i
        } else {
            self.laws.push(LawStat {
                law: law.to_string(),
                checked: 0,
                skipped: 0,
                sampled: false,
                failed: false,
            });
            self.laws.len() - 1
        }
    }

    /// Records that an entire instance group could not be enumerated (for
    /// example an infeasible hom-set); visible as one skipped instance.
    pub fn skip_group(&mut self, law: &str) {
        let i = self.law_mut(law);
        self.laws[i].skipped += 1;
    }

    /// Quantifies `body` over the mixed-radix space with the given axis sizes.
    ///
    /// Exhaustive when the space fits in the per-group budget, otherwise
    /// seeded-sampled. Stops the whole run at the first witness.
    pub fn group<F>(&mut self, law: &str, axes: &[u64], mut body: F)
    where
        F: FnMut(&[u64]) -> Outcome,
    {
        self.group_counter += 1;
        if self.failed() {
            return;
        }
        let idx = self.law_mut(law);
        if axes.iter().any(|&a| a == 0) {
            return;
        }
        let total: u128 = axes.iter().map(|&a| a as u128).product();
        let budget = self.group_budget as u128;
        let mut coords = vec![0u64; axes.len()];
        let apply = |run: &mut Run, coords: &[u64], body: &mut F| -> bool {
            match body(coords) {
                Outcome::Ok => {
                    run.laws[idx].checked += 1;
                    false
                }
                Outcome::Skip => {
                    run.laws[idx].skipped += 1;
                    false
                }
                Outcome::Fail(w) => {
                    run.laws[idx].checked += 1;
                    run.laws[idx].failed = true;
                    run.witness = Some(w);
                    true
                }
            }
        };
        if total <= budget {
            // exhaustive: odometer over the axes
            loop {
                if apply(self, &coords, &mut body) {
                    return;
                }
                let mut k = coords.len();
                loop {
                    if k == 0 {
                        return;
                    }
                    k -= 1;
                    coords[k] += 1;
                    if coords[k] < axes[k] {
                        break;
                    }
                    coords[k] = 0;
                }
            }
        } else {
            self.laws[idx].sampled = true;
            let group_seed = self
                .seed
                .wrapping_add(fnv1a(law))
                .wrapping_add(self.group_counter.wrapping_mul(FNV_PRIME));
            let mut rng = ChaCha8Rng::seed_from_u64(group_seed);
            for _ in 0..self.group_budget {
                let mut ix = rng.gen_range(0..total);
                for (k, &a) in axes.iter().enumerate() {
                    coords[k] = (ix % a as u128) as u64;
                    ix /= a as u128;
                }
                if apply(self, &coords, &mut body) {
                    return;
                }
            }
        }
    }

    pub fn finish(self) -> LawReport {
        let checked = self.laws.iter().map(|l| l.checked).sum();
        let skipped = self.laws.iter().map(|l| l.skipped).sum();
        let sampled = self.laws.iter().any(|l| l.sampled);
        LawReport {
            op: self.op,
            verdict: if self.witness.is_some() {
                Verdict::Fail
            } else {
                Verdict::Pass
            },
            checked,
            skipped,
            sampled,
            laws: self.laws,
            witness: self.witness,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_group_counts_every_instance() {
        let cfg = CheckConfig::default();
        let mut run = Run::new("t", &cfg);
        let mut seen = Vec::new();
        run.group("law", &[3, 2], |c| {
            seen.push((c[0], c[1]));
            Outcome::Ok
        });
        let rep = run.finish();
        assert_eq!(rep.checked, 6);
        assert!(!rep.sampled);
        assert_eq!(seen.len(), 6);
        assert!(seen.contains(&(2, 1)));
    }

    #[test]
    fn oversized_group_is_sampled_and_deterministic() {
        let cfg = CheckConfig {
            group_budget: 16,
            ..CheckConfig::default()
        };
        let collect = || {
            let mut run = Run::new("t", &cfg);
            let mut seen = Vec::new();
            run.group("law", &[100, 100], |c| {
                seen.push((c[0], c[1]));
                Outcome::Ok
            });
            (run.finish(), seen)
        };
        let (r1, s1) = collect();
        let (r2, s2) = collect();
        assert!(r1.sampled);
        assert_eq!(r1.checked, 16);
        assert_eq!(s1, s2);
        assert_eq!(r2.checked, 16);
    }

    #[test]
    fn first_witness_stops_the_run() {
        let cfg = CheckConfig::default();
        let mut run = Run::new("t", &cfg);
        run.group("law", &[10], |c| {
            if c[0] == 3 {
                Outcome::Fail(Witness {
                    law: "law".into(),
                    location: "3".into(),
                    items: vec![],
                    lhs: "a".into(),
                    rhs: "b".into(),
                })
            } else {
                Outcome::Ok
            }
        });
        run.group("law2", &[10], |_| Outcome::Ok);
        let rep = run.finish();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert_eq!(rep.checked, 4); // 0,1,2 pass + 3 fails
        assert_eq!(rep.witness.as_ref().unwrap().location, "3");
    }
}
