//! Stochastic matrices with exact rational entries and the support preorder.
//!
//! No floating point anywhere: the support relation (entries strictly greater
//! than zero) is not robust under rounding, so every entry is a `BigRational`
//! and row sums are kept exactly 1 under composition and tensor.

use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finrel::Rel;
use crate::monad::parse_rational;
use crate::report::{CheckConfig, LawReport, Outcome, Run, Witness};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StochMatrix {
    src: usize,
    tgt: usize,
    /// entries[x][y] = f(y|x)
    entries: Vec<Vec<BigRational>>,
}

impl StochMatrix {
    pub fn new(entries: Vec<Vec<BigRational>>) -> Result<StochMatrix> {
        let src = entries.len();
        if src == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        let tgt = entries[0].len();
        for row in &entries {
            if row.len() != tgt {
                return Err(Error::DimensionMismatch("ragged matrix".into()));
            }
            if row.iter().any(|p| p < &BigRational::zero()) {
                return Err(Error::RowSumViolation("negative entry".into()));
            }
            let total: BigRational = row.iter().sum();
            if !total.is_one() {
                return Err(Error::RowSumViolation(format!("row sums to {}", total)));
            }
        }
        Ok(StochMatrix { src, tgt, entries })
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn entry(&self, x: usize, y: usize) -> &BigRational {
        &self.entries[x][y]
    }

    pub fn identity(n: usize) -> StochMatrix {
        let mut entries = vec![vec![BigRational::zero(); n]; n];
        for (x, row) in entries.iter_mut().enumerate() {
            row[x] = BigRational::one();
        }
        StochMatrix {
            src: n,
            tgt: n,
            entries,
        }
    }

    /// Exact rational matrix product; first `f`, then `g`.
    pub fn compose(g: &StochMatrix, f: &StochMatrix) -> Result<StochMatrix> {
        if f.tgt != g.src {
            return Err(Error::DimensionMismatch(format!(
                "compose: {}x{} after {}x{}",
                g.src, g.tgt, f.src, f.tgt
            )));
        }
        let mut entries = vec![vec![BigRational::zero(); g.tgt]; f.src];
        for x in 0..f.src {
            for y in 0..f.tgt {
                let p = &f.entries[x][y];
                if p.is_zero() {
                    continue;
                }
                for z in 0..g.tgt {
                    let q = &g.entries[y][z];
                    if !q.is_zero() {
                        entries[x][z] += p * q;
                    }
                }
            }
        }
        Ok(StochMatrix {
            src: f.src,
            tgt: g.tgt,
            entries,
        })
    }

    /// Kronecker tensor under row-major pairing.
    pub fn tensor(f: &StochMatrix, g: &StochMatrix) -> StochMatrix {
        let mut entries =
            vec![vec![BigRational::zero(); f.tgt * g.tgt]; f.src * g.src];
        for x1 in 0..f.src {
            for y1 in 0..f.tgt {
                for x2 in 0..g.src {
                    for y2 in 0..g.tgt {
                        entries[x1 * g.src + x2][y1 * g.tgt + y2] =
                            &f.entries[x1][y1] * &g.entries[x2][y2];
                    }
                }
            }
        }
        StochMatrix {
            src: f.src * g.src,
            tgt: f.tgt * g.tgt,
            entries,
        }
    }

    /// `∇_n` sends `x` to the point mass at `(x, x)`.
    pub fn dup(n: usize) -> StochMatrix {
        let mut entries = vec![vec![BigRational::zero(); n * n]; n];
        for (x, row) in entries.iter_mut().enumerate() {
            row[x * n + x] = BigRational::one();
        }
        StochMatrix {
            src: n,
            tgt: n * n,
            entries,
        }
    }

    /// `!_n` sends everything to the point mass on the singleton.
    pub fn discharge(n: usize) -> StochMatrix {
        StochMatrix {
            src: n,
            tgt: 1,
            entries: vec![vec![BigRational::one()]; n],
        }
    }

    pub fn symmetry(m: usize, n: usize) -> StochMatrix {
        let mut entries = vec![vec![BigRational::zero(); n * m]; m * n];
        for x in 0..m {
            for y in 0..n {
                entries[x * n + y][y * m + x] = BigRational::one();
            }
        }
        StochMatrix {
            src: m * n,
            tgt: n * m,
            entries,
        }
    }

    /// The relation of strictly positive entries.
    pub fn support(&self) -> Rel {
        let mut r = Rel::empty(self.src, self.tgt);
        for x in 0..self.src {
            for y in 0..self.tgt {
                if !self.entries[x][y].is_zero() {
                    r.set(x, y);
                }
            }
        }
        r
    }

    /// The generated preorder of FinStoch: containment of supports.
    pub fn support_leq(f: &StochMatrix, g: &StochMatrix) -> Option<bool> {
        if f.src != g.src || f.tgt != g.tgt {
            return None;
        }
        Rel::leq(&f.support(), &g.support())
    }

    /// Uniform distribution on each row of a total relation; its support is
    /// exactly the given relation.
    pub fn uniform_on(r: &Rel) -> Result<StochMatrix> {
        let mut entries = Vec::with_capacity(r.src());
        for x in 0..r.src() {
            let hits: Vec<usize> = (0..r.tgt()).filter(|&y| r.get(x, y)).collect();
            if hits.is_empty() {
                return Err(Error::RowSumViolation(format!(
                    "row {} of the relation is empty; not a total relation",
                    x
                )));
            }
            let p = BigRational::new(BigInt::one(), BigInt::from(hits.len()));
            let mut row = vec![BigRational::zero(); r.tgt()];
            for y in hits {
                row[y] = p.clone();
            }
            entries.push(row);
        }
        StochMatrix::new(entries)
    }

    pub fn sample(src: usize, tgt: usize, rng: &mut ChaCha8Rng) -> StochMatrix {
        let mut entries = Vec::with_capacity(src);
        for _ in 0..src {
            let mut weights: Vec<u64> = (0..tgt).map(|_| rng.gen_range(0..4u64)).collect();
            if weights.iter().all(|&w| w == 0) {
                weights[rng.gen_range(0..tgt)] = 1;
            }
            let total: u64 = weights.iter().sum();
            entries.push(
                weights
                    .into_iter()
                    .map(|w| BigRational::new(BigInt::from(w), BigInt::from(total)))
                    .collect(),
            );
        }
        StochMatrix {
            src,
            tgt,
            entries,
        }
    }

    /// Widens the support: an even mixture with the uniform distribution, so
    /// `self ≤ widened` in the support order.
    pub fn widen(&self) -> StochMatrix {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let unif = BigRational::new(BigInt::one(), BigInt::from(self.tgt));
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| &half * p + &half * &unif).collect())
            .collect();
        StochMatrix {
            src: self.src,
            tgt: self.tgt,
            entries,
        }
    }

    fn row_sums_one(&self) -> bool {
        self.entries
            .iter()
            .all(|row| row.iter().sum::<BigRational>().is_one())
    }
}

impl std::fmt::Display for StochMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}->{}[", self.src, self.tgt)?;
        for (x, row) in self.entries.iter().enumerate() {
            if x > 0 {
                write!(f, ";")?;
            }
            for (y, p) in row.iter().enumerate() {
                if y > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p)?;
            }
        }
        write!(f, "]")
    }
}

/// Deterministic sample of stochastic matrices between the given sizes.
pub fn sample_matrices(sizes: &[usize], samples: u64, seed: u64) -> Vec<StochMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5705c8));
    let mut out = Vec::with_capacity(samples as usize);
    let mut k = 0usize;
    let pairs: Vec<(usize, usize)> = sizes
        .iter()
        .flat_map(|&a| sizes.iter().map(move |&b| (a, b)))
        .collect();
    for _ in 0..samples {
        let (a, b) = pairs[k % pairs.len()];
        k += 1;
        out.push(StochMatrix::sample(a, b, &mut rng));
    }
    out
}

/// The support-order laws: exactness of the arithmetic, strict gs-monoidal
/// functoriality of the support onto total relations, the oplax cartesian
/// inequalities under the support order (which are also the generator and
/// closure rules of the generated preorder), and the quotient comparison
/// with total relations.
pub fn check_support_oplax(sizes: &[usize], cfg: &CheckConfig) -> LawReport {
    let mut run = Run::new("check_support_oplax", cfg);
    let ms = sample_matrices(sizes, cfg.samples, cfg.seed);
    let n = ms.len() as u64;

    run.group("stoch-row-sums-exact", &[n, n], |c| {
        let f = &ms[c[0] as usize];
        let g = &ms[c[1] as usize];
        let t = StochMatrix::tensor(f, g);
        let mut ok = t.row_sums_one();
        if f.tgt == g.src {
            ok &= StochMatrix::compose(g, f).unwrap().row_sums_one();
        }
        if ok {
            Outcome::Ok
        } else {
            Outcome::Fail(Witness {
                law: "stoch-row-sums-exact".into(),
                location: "sampled pair".into(),
                items: vec![format!("f = {}", f), format!("g = {}", g)],
                lhs: "row sums".into(),
                rhs: "exactly 1".into(),
            })
        }
    });

    run.group("support-strict-gs-functor", &[n, n], |c| {
        let f = &ms[c[0] as usize];
        let g = &ms[c[1] as usize];
        // tensor always; composition when typed
        let mut ok = StochMatrix::tensor(f, g).support()
            == Rel::tensor(&f.support(), &g.support());
        if f.tgt == g.src {
            ok &= StochMatrix::compose(g, f).unwrap().support()
                == Rel::compose(&g.support(), &f.support()).unwrap();
        }
        ok &= f.support().is_total_relation();
        if ok {
            Outcome::Ok
        } else {
            Outcome::Fail(Witness {
                law: "support-strict-gs-functor".into(),
                location: "sampled pair".into(),
                items: vec![format!("f = {}", f), format!("g = {}", g)],
                lhs: "support of composite/tensor".into(),
                rhs: "composite/tensor of supports".into(),
            })
        }
    });

    run.group("support-structure-arrows", &[sizes.len() as u64], |c| {
        let k = sizes[c[0] as usize];
        let ok = StochMatrix::identity(k).support() == Rel::identity(k)
            && StochMatrix::dup(k).support() == Rel::dup(k)
            && StochMatrix::discharge(k).support() == Rel::discharge(k)
            && StochMatrix::symmetry(k, k).support() == Rel::symmetry(k, k);
        if ok {
            Outcome::Ok
        } else {
            Outcome::Fail(Witness {
                law: "support-structure-arrows".into(),
                location: format!("size {}", k),
                items: vec![],
                lhs: "support of structure arrows".into(),
                rhs: "relation structure arrows".into(),
            })
        }
    });

    run.group("support-oplax-dup", &[n], |c| {
        let f = &ms[c[0] as usize];
        let lhs = StochMatrix::compose(&StochMatrix::dup(f.tgt), f).unwrap();
        let rhs =
            StochMatrix::compose(&StochMatrix::tensor(f, f), &StochMatrix::dup(f.src)).unwrap();
        match StochMatrix::support_leq(&lhs, &rhs) {
            Some(true) => Outcome::Ok,
            _ => Outcome::Fail(Witness {
                law: "support-oplax-dup".into(),
                location: "sampled matrix".into(),
                items: vec![format!("f = {}", f)],
                lhs: format!("{}", lhs.support()),
                rhs: format!("{}", rhs.support()),
            }),
        }
    });

    run.group("support-oplax-discharge", &[n], |c| {
        let f = &ms[c[0] as usize];
        let lhs = StochMatrix::compose(&StochMatrix::discharge(f.tgt), f).unwrap();
        match StochMatrix::support_leq(&lhs, &StochMatrix::discharge(f.src)) {
            Some(true) => Outcome::Ok,
            _ => Outcome::Fail(Witness {
                law: "support-oplax-discharge".into(),
                location: "sampled matrix".into(),
                items: vec![format!("f = {}", f)],
                lhs: format!("{}", lhs.support()),
                rhs: "the discharge relation".into(),
            }),
        }
    });

    // monotonicity of composition and tensor (the closure rules of the
    // generated preorder) on constructed comparable pairs
    run.group("support-compose-monotone", &[n, n], |c| {
        let f = &ms[c[0] as usize];
        let g = &ms[c[1] as usize];
        if f.tgt != g.src {
            return Outcome::Skip;
        }
        let (f2, g2) = (f.widen(), g.widen());
        debug_assert_eq!(StochMatrix::support_leq(f, &f2), Some(true));
        let lhs = StochMatrix::compose(g, f).unwrap();
        let rhs = StochMatrix::compose(&g2, &f2).unwrap();
        match StochMatrix::support_leq(&lhs, &rhs) {
            Some(true) => Outcome::Ok,
            _ => Outcome::Fail(Witness {
                law: "support-compose-monotone".into(),
                location: "sampled pair".into(),
                items: vec![format!("f = {}", f), format!("g = {}", g)],
                lhs: format!("{}", lhs.support()),
                rhs: format!("{}", rhs.support()),
            }),
        }
    });

    run.group("support-tensor-monotone", &[n, n], |c| {
        let f = &ms[c[0] as usize];
        let g = &ms[c[1] as usize];
        let lhs = StochMatrix::tensor(f, g);
        let rhs = StochMatrix::tensor(&f.widen(), &g.widen());
        match StochMatrix::support_leq(&lhs, &rhs) {
            Some(true) => Outcome::Ok,
            _ => Outcome::Fail(Witness {
                law: "support-tensor-monotone".into(),
                location: "sampled pair".into(),
                items: vec![format!("f = {}", f), format!("g = {}", g)],
                lhs: format!("{}", lhs.support()),
                rhs: format!("{}", rhs.support()),
            }),
        }
    });

    // equivalence classes under the support order are exactly supports
    run.group("support-equivalence-classes", &[n, n], |c| {
        let f = &ms[c[0] as usize];
        let g = &ms[c[1] as usize];
        if f.src != g.src || f.tgt != g.tgt {
            return Outcome::Skip;
        }
        let equiv = StochMatrix::support_leq(f, g) == Some(true)
            && StochMatrix::support_leq(g, f) == Some(true);
        if equiv == (f.support() == g.support()) {
            Outcome::Ok
        } else {
            Outcome::Fail(Witness {
                law: "support-equivalence-classes".into(),
                location: "sampled pair".into(),
                items: vec![format!("f = {}", f), format!("g = {}", g)],
                lhs: format!("f ≈ g is {}", equiv),
                rhs: "support equality".into(),
            })
        }
    });

    // every total relation between the given sizes is realized as a support
    for a in sizes {
        for b in sizes {
            if a * b > 16 {
                run.skip_group("support-onto-total-relations");
                continue;
            }
            run.group(
                "support-onto-total-relations",
                &[1u64 << (a * b)],
                |c| {
                    let r = Rel::from_mask(*a, *b, c[0] as u128);
                    if !r.is_total_relation() {
                        return Outcome::Skip;
                    }
                    match StochMatrix::uniform_on(&r) {
                        Ok(m) if m.support() == r => Outcome::Ok,
                        _ => Outcome::Fail(Witness {
                            law: "support-onto-total-relations".into(),
                            location: format!("hom({}, {})", a, b),
                            items: vec![format!("r = {}", r)],
                            lhs: "uniform-on-rows support".into(),
                            rhs: format!("{}", r),
                        }),
                    }
                },
            );
        }
    }

    run.finish()
}

/// Matrix fixture with rationals as strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StochFixture {
    pub src: usize,
    pub tgt: usize,
    pub rows: Vec<Vec<String>>,
}

impl StochFixture {
    pub fn to_matrix(&self) -> Result<StochMatrix> {
        if self.rows.len() != self.src {
            return Err(Error::Fixture("row count must equal src".into()));
        }
        let entries = self
            .rows
            .iter()
            .map(|row| {
                if row.len() != self.tgt {
                    return Err(Error::Fixture("row length must equal tgt".into()));
                }
                row.iter()
                    .map(|s| {
                        parse_rational(s)
                            .ok_or_else(|| Error::Fixture(format!("bad rational {:?}", s)))
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?;
        StochMatrix::new(entries)
    }

    pub fn from_matrix(m: &StochMatrix) -> StochFixture {
        StochFixture {
            src: m.src(),
            tgt: m.tgt(),
            rows: (0..m.src())
                .map(|x| (0..m.tgt()).map(|y| m.entry(x, y).to_string()).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn row_sum_validation() {
        assert!(StochMatrix::new(vec![vec![r(1, 2), r(1, 2)]]).is_ok());
        assert!(matches!(
            StochMatrix::new(vec![vec![r(1, 2), r(1, 3)]]),
            Err(Error::RowSumViolation(_))
        ));
        assert!(matches!(
            StochMatrix::new(vec![vec![r(3, 2), r(-1, 2)]]),
            Err(Error::RowSumViolation(_))
        ));
    }

    #[test]
    fn compose_examples() {
        let one = StochMatrix::new(vec![vec![r(1, 1)]]).unwrap();
        assert_eq!(StochMatrix::compose(&one, &one).unwrap(), one);
        // (1 -> 2) then (2 -> 2)
        let f = StochMatrix::new(vec![vec![r(0, 1), r(1, 1)]]).unwrap();
        let g = StochMatrix::new(vec![
            vec![r(1, 2), r(1, 2)],
            vec![r(0, 1), r(1, 1)],
        ])
        .unwrap();
        let gf = StochMatrix::compose(&g, &f).unwrap();
        assert_eq!(gf, StochMatrix::new(vec![vec![r(0, 1), r(1, 1)]]).unwrap());
        // composing with dup_1 = [[1]] leaves a row vector unchanged
        let h = StochMatrix::new(vec![vec![r(1, 2), r(1, 2)]]).unwrap();
        assert_eq!(
            StochMatrix::compose(&h, &StochMatrix::dup(1)).unwrap(),
            h
        );
    }

    #[test]
    fn support_examples() {
        let m = StochMatrix::new(vec![
            vec![r(1, 1), r(0, 1)],
            vec![r(1, 2), r(1, 2)],
        ])
        .unwrap();
        assert_eq!(
            m.support(),
            Rel::from_pairs(2, 2, &[(0, 0), (1, 0), (1, 1)]).unwrap()
        );
        assert_eq!(StochMatrix::identity(3).support(), Rel::identity(3));
        // rows sum to 1, so every support is total
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            assert!(StochMatrix::sample(3, 2, &mut rng).support().is_total_relation());
        }
    }

    #[test]
    fn support_suite_passes_small() {
        let cfg = CheckConfig {
            samples: 60,
            ..CheckConfig::default()
        };
        let rep = check_support_oplax(&[1, 2, 3], &cfg);
        assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn fixture_roundtrip() {
        let m = StochMatrix::new(vec![vec![r(1, 3), r(2, 3)]]).unwrap();
        let fx = StochFixture::from_matrix(&m);
        assert_eq!(fx.rows, vec![vec!["1/3".to_string(), "2/3".to_string()]]);
        assert_eq!(fx.to_matrix().unwrap(), m);
        let bad = StochFixture {
            src: 1,
            tgt: 2,
            rows: vec![vec!["1/3".into(), "1/3".into()]],
        };
        assert!(bad.to_matrix().is_err());
    }
}
