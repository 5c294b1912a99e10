//! Brute-force enumeration of critical partners, used to cross-check the
//! construction and to probe the open questions around it.
//!
//! Two independent searches are provided. The rank-permutation search walks
//! candidate rank vectors `σ` of `β`; each one fixes `β` through
//! `β_i = α_i + (n/m)(r(α,i) − σ_i)`, and the walk is pruned on
//! integrality, nonnegativity and pairwise rank consistency. The naive
//! search enumerates every composition of `|α|` and filters with the
//! checker. Both must agree wherever both are feasible.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use crate::composition::{triangle_greater, Composition};
use crate::critical::is_critical_pair;
use crate::error::{Error, Result};
use crate::hooks::{hook_factors_all, reduce_pair, Affine, Node};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    RankPermutation,
    NaiveComposition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Ambient length searched; `None` means `ℓ(α)+|α|`.
    pub n_max: Option<usize>,
    pub mode: SearchMode,
    /// Largest ambient length the rank-permutation search accepts.
    pub permutation_cap: usize,
    /// Largest number of candidate compositions the naive search accepts.
    pub naive_cap: u64,
}

pub const DEFAULT_PERMUTATION_CAP: usize = 9;
pub const DEFAULT_NAIVE_CAP: u64 = 5_000_000;

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            n_max: None,
            mode: SearchMode::RankPermutation,
            permutation_cap: DEFAULT_PERMUTATION_CAP,
            naive_cap: DEFAULT_NAIVE_CAP,
        }
    }
}

impl SearchBounds {
    pub fn with_mode(mode: SearchMode) -> Self {
        SearchBounds {
            mode,
            ..Self::default()
        }
    }

    pub fn n_max(mut self, n_max: usize) -> Self {
        self.n_max = Some(n_max);
        self
    }

    pub fn permutation_cap(mut self, cap: usize) -> Self {
        self.permutation_cap = cap;
        self
    }

    /// Resolve the ambient length for `alpha` and check feasibility.
    pub fn resolve(&self, alpha: &Composition) -> Result<usize> {
        let full = alpha.length() + alpha.weight() as usize;
        let n_max = self.n_max.unwrap_or(full);
        if n_max < alpha.length() {
            return Err(Error::InfeasibleBounds(format!(
                "ambient length {n_max} is below ℓ(α) = {}",
                alpha.length()
            )));
        }
        match self.mode {
            SearchMode::RankPermutation if n_max > self.permutation_cap => {
                Err(Error::InfeasibleBounds(format!(
                    "rank-permutation search over {n_max}! candidates exceeds the cap of {}!",
                    self.permutation_cap
                )))
            }
            SearchMode::NaiveComposition => {
                let count = composition_count(alpha.weight(), n_max);
                if count.is_none_or(|c| c > self.naive_cap) {
                    return Err(Error::InfeasibleBounds(format!(
                        "naive search over compositions of {} into {n_max} parts exceeds {}",
                        alpha.weight(),
                        self.naive_cap
                    )));
                }
                Ok(n_max)
            }
            _ => Ok(n_max),
        }
    }
}

/// `C(w+N−1, N−1)`, or `None` on overflow.
pub(crate) fn composition_count(weight: u64, parts: usize) -> Option<u64> {
    if parts == 0 {
        return Some((weight == 0) as u64);
    }
    let (top, k) = (weight + parts as u64 - 1, (parts as u64 - 1).min(weight));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Every `β` with `(α, β)` a `(−n/m)`-critical pair and `ℓ(β)` within the
/// searched ambient length. Results are trimmed.
pub fn enumerate_partners(
    alpha: &Composition,
    m: u64,
    n: u64,
    bounds: &SearchBounds,
) -> Result<BTreeSet<Composition>> {
    if m == 0 || n == 0 {
        return Err(Error::BadFactor {
            m,
            n,
            reason: "both coefficients must be positive",
        });
    }
    let ambient = bounds.resolve(alpha)?;
    let alpha = alpha.trimmed().padded(ambient);
    let (m, n) = reduce_pair(m, n);
    match bounds.mode {
        SearchMode::RankPermutation => Ok(rank_permutation_search(&alpha, m, n)),
        SearchMode::NaiveComposition => naive_search(&alpha, m, n),
    }
}

struct PermSearch<'a> {
    alpha: &'a Composition,
    ranks: Vec<usize>,
    m: i64,
    n: i64,
    sigma: Vec<usize>,
    beta: Vec<i64>,
    used: Vec<bool>,
    found: BTreeSet<Composition>,
}

impl PermSearch<'_> {
    fn descend(&mut self, pos: usize) {
        let len = self.ranks.len();
        if pos == len {
            self.accept();
            return;
        }
        let r = self.ranks[pos] as i64;
        let a = self.alpha.parts()[pos] as i64;
        for v in 1..=len {
            if self.used[v - 1] {
                continue;
            }
            let diff = r - v as i64;
            if diff % self.m != 0 {
                continue;
            }
            let b = a + self.n * diff / self.m;
            if b < 0 {
                continue;
            }
            // for j < pos: rank of j below rank of pos iff β_j ≥ β_pos
            let consistent = (0..pos).all(|j| (self.sigma[j] < v) == (self.beta[j] >= b));
            if !consistent {
                continue;
            }
            self.used[v - 1] = true;
            self.sigma.push(v);
            self.beta.push(b);
            self.descend(pos + 1);
            self.beta.pop();
            self.sigma.pop();
            self.used[v - 1] = false;
        }
    }

    fn accept(&mut self) {
        let beta = Composition::new(self.beta.iter().map(|&b| b as u32).collect());
        if beta.rank_vector() == self.sigma && triangle_greater(self.alpha, &beta) {
            self.found.insert(beta.trimmed());
        }
    }
}

fn rank_permutation_search(alpha: &Composition, m: u64, n: u64) -> BTreeSet<Composition> {
    let len = alpha.ambient();
    let mut search = PermSearch {
        alpha,
        ranks: alpha.rank_vector(),
        m: m as i64,
        n: n as i64,
        sigma: Vec::with_capacity(len),
        beta: Vec::with_capacity(len),
        used: vec![false; len],
        found: BTreeSet::new(),
    };
    search.descend(0);
    search.found
}

/// Calls `visit` with every composition of `weight` into `parts.len()`
/// slots with each part at most `cap`.
pub(crate) fn for_each_composition(weight: u64, cap: u64, parts: &mut [u32], pos: usize, visit: &mut impl FnMut(&[u32])) {
    if pos + 1 == parts.len() {
        if weight <= cap {
            parts[pos] = weight as u32;
            visit(parts);
        }
        return;
    }
    for x in 0..=weight.min(cap) {
        parts[pos] = x as u32;
        for_each_composition(weight - x, cap, parts, pos + 1, visit);
    }
}

fn naive_search(alpha: &Composition, m: u64, n: u64) -> Result<BTreeSet<Composition>> {
    let ambient = alpha.ambient();
    let mut found = BTreeSet::new();
    if ambient == 0 {
        return Ok(found);
    }
    // |β_i − α_i| = (n/m)|r(α,i) − r(β,i)| < nN/m
    let cap = alpha.max_part() as u64 + (n * ambient as u64).div_ceil(m);
    let mut buf = vec![0u32; ambient];
    let mut failure = None;
    for_each_composition(alpha.weight(), cap, &mut buf, 0, &mut |parts| {
        let beta = Composition::new(parts.to_vec());
        match is_critical_pair(alpha, &beta, m, n, false) {
            Ok(Some(_)) => {
                found.insert(beta.trimmed());
            }
            Ok(None) => {}
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// One `(α, factor)` line of a scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub alpha: Composition,
    /// The factor `mκ+n` as it occurs in `h(α,κ+1)`.
    pub m: u64,
    pub n: u64,
    pub reduced: (u64, u64),
    pub nodes: Vec<Node>,
    pub multiplicity: usize,
    pub n_max: usize,
    /// False when `n_max` was below `ℓ(α)+|α|`, so partners may be missing.
    pub complete: bool,
    pub partners: Vec<Composition>,
    pub partner_count: usize,
    pub flagged: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    /// Multiplicity-one factors with `gcd(m, n) = 1`; flagged unless exactly
    /// one partner was found.
    pub coprime: Vec<ScanRecord>,
    /// Multiplicity-one factors with `gcd(m, n) > 1`, reported for inspection.
    pub non_coprime: Vec<ScanRecord>,
}

impl UniquenessReport {
    pub fn flagged(&self) -> impl Iterator<Item = &ScanRecord> {
        self.coprime.iter().filter(|r| r.flagged)
    }

    pub fn records(&self) -> impl Iterator<Item = &ScanRecord> {
        self.coprime.iter().chain(&self.non_coprime)
    }
}

/// An unreduced factor `(m, n)` and the node carrying it.
type FactorAt = (u64, u64, Node);

/// Count partners for every multiplicity-one hook factor of every corpus
/// member, searching ambient lengths up to `max_n`.
pub fn uniqueness_scan(corpus: &[Composition], max_n: usize) -> Result<UniquenessReport> {
    let mut report = UniquenessReport::default();
    for alpha in corpus {
        let alpha = alpha.trimmed();
        let full = alpha.length() + alpha.weight() as usize;
        let n_max = full.min(max_n).max(alpha.length());
        let bounds = SearchBounds::default().n_max(n_max).permutation_cap(n_max);

        let mut classes: BTreeMap<(u64, u64), Vec<FactorAt>> = BTreeMap::new();
        for h in hook_factors_all(&alpha, Affine::kappa_plus_one()) {
            let (m, n) = h.integer_pair().expect("κ+1 hooks have positive integer coefficients");
            classes.entry(reduce_pair(m, n)).or_default().push((m, n, h.node));
        }
        for (reduced, members) in classes {
            if members.len() != 1 {
                continue;
            }
            let (m, n, node) = members[0];
            let partners: Vec<Composition> =
                enumerate_partners(&alpha, reduced.0, reduced.1, &bounds)?.into_iter().collect();
            let coprime = m.gcd(&n) == 1;
            let record = ScanRecord {
                alpha: alpha.clone(),
                m,
                n,
                reduced,
                nodes: vec![node],
                multiplicity: 1,
                n_max,
                complete: n_max == full,
                partner_count: partners.len(),
                flagged: coprime && partners.len() != 1,
                partners,
            };
            if coprime {
                report.coprime.push(record);
            } else {
                report.non_coprime.push(record);
            }
        }
    }
    Ok(report)
}

/// A pair `α ⊳ β` whose difference vectors are parallel with the wrong sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignViolation {
    pub alpha: Composition,
    pub beta: Composition,
    pub m: i64,
    pub n: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NegativeReport {
    pub pairs_checked: u64,
    /// Pairs with `(α_i−β_i)` parallel to `(r(β,i)−r(α,i))`.
    pub parallel_pairs: u64,
    pub violations: Vec<SignViolation>,
}

/// Search every `β ⊲ α` (ambient length `ℓ(α)+|α|`) for parallel difference
/// vectors whose ratio would need `n = 0` or `mn < 0`.
pub fn negative_existence_scan(corpus: &[Composition]) -> NegativeReport {
    let mut report = NegativeReport::default();
    for alpha in corpus {
        let ambient = alpha.construction_ambient();
        if ambient == 0 {
            continue;
        }
        let alpha = alpha.padded(ambient);
        let ra = alpha.rank_vector();
        let mut buf = vec![0u32; ambient];
        for_each_composition(alpha.weight(), alpha.weight(), &mut buf, 0, &mut |parts| {
            let beta = Composition::new(parts.to_vec());
            if !triangle_greater(&alpha, &beta) {
                return;
            }
            report.pairs_checked += 1;
            let rb = beta.rank_vector();
            let part_diff: Vec<i64> = (0..ambient)
                .map(|i| alpha.parts()[i] as i64 - beta.parts()[i] as i64)
                .collect();
            let rank_diff: Vec<i64> = (0..ambient).map(|i| rb[i] as i64 - ra[i] as i64).collect();
            let Some(pivot) = part_diff.iter().position(|&d| d != 0) else {
                // α ≠ β forces some nonzero part difference; n = 0 is impossible
                report.violations.push(SignViolation {
                    alpha: alpha.trimmed(),
                    beta: beta.trimmed(),
                    m: 1,
                    n: 0,
                });
                return;
            };
            let (mut m, mut n) = (rank_diff[pivot], part_diff[pivot]);
            let g = m.gcd(&n);
            m /= g;
            n /= g;
            if n < 0 {
                m = -m;
                n = -n;
            }
            let parallel = (0..ambient).all(|i| rank_diff[i] * n == m * part_diff[i]);
            if !parallel {
                return;
            }
            report.parallel_pairs += 1;
            if m < 0 {
                report.violations.push(SignViolation {
                    alpha: alpha.trimmed(),
                    beta: beta.trimmed(),
                    m,
                    n,
                });
            }
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn both(alpha: &str, m: u64, n: u64, n_max: usize) -> BTreeSet<Composition> {
        let a = c(alpha);
        let perm = enumerate_partners(&a, m, n, &SearchBounds::default().n_max(n_max)).unwrap();
        let naive = enumerate_partners(
            &a,
            m,
            n,
            &SearchBounds::with_mode(SearchMode::NaiveComposition).n_max(n_max),
        )
        .unwrap();
        assert_eq!(perm, naive, "modes disagree for {alpha} at ({m},{n})");
        perm
    }

    #[test]
    fn small_partner_sets() {
        assert_eq!(both("1,0", 1, 1, 2), BTreeSet::from([c("0,1")]));
        let got = both("2,6,5,2", 2, 3, 6);
        assert!(got.contains(&c("5,3,5,2")));
        let want: BTreeSet<Composition> = [
            "5,0,2,5,3",
            "2,0,5,2,6",
            "5,0,5,2,3",
            "5,3,5,2",
            "2,0,2,5,6",
            "2,6,2,5",
            "5,3,2,5",
        ]
        .iter()
        .map(|s| c(s))
        .collect();
        assert_eq!(got, want);
        // the m = 0 pair (2,1) is not a (−1)-critical partner
        let three = both("3,0", 1, 1, 4);
        assert!(!three.contains(&c("2,1")));
        assert_eq!(three, BTreeSet::from([c("0,1,1,1")]));
    }

    #[test]
    fn infeasible_bounds_are_errors() {
        let a = c("9,8,8,7,4,3,3,2,2");
        assert!(matches!(
            enumerate_partners(&a, 4, 3, &SearchBounds::default()),
            Err(Error::InfeasibleBounds(_))
        ));
        assert!(matches!(
            enumerate_partners(&c("0,0,1"), 1, 1, &SearchBounds::default().n_max(2)),
            Err(Error::InfeasibleBounds(_))
        ));
        let mut naive = SearchBounds::with_mode(SearchMode::NaiveComposition);
        naive.naive_cap = 10;
        assert!(enumerate_partners(&c("3,1"), 1, 1, &naive).is_err());
        assert!(enumerate_partners(&c("3,1"), 0, 1, &SearchBounds::default()).is_err());
    }

    #[test]
    fn counting() {
        assert_eq!(composition_count(6, 10), Some(5005));
        assert_eq!(composition_count(0, 0), Some(1));
        assert_eq!(composition_count(3, 0), Some(0));
        assert_eq!(composition_count(3, 1), Some(1));
        let mut n = 0;
        let mut buf = vec![0; 4];
        for_each_composition(5, 5, &mut buf, 0, &mut |_| n += 1);
        assert_eq!(n, 56);
    }

    #[test]
    fn uniqueness_examples() {
        assert_eq!(uniqueness_scan(&[], 9).unwrap(), UniquenessReport::default());
        let report = uniqueness_scan(&[c("6,3,1,1")], 9).unwrap();
        let rec = report
            .non_coprime
            .iter()
            .find(|r| (r.m, r.n) == (4, 6))
            .expect("4κ+6 is a multiplicity-one factor");
        assert!(rec.partner_count >= 2);
        assert!(rec.partners.contains(&c("0,3,1,1,6")));
        assert!(rec.partners.contains(&c("0,3,4,1,3")));
        assert!(!rec.complete);
        assert!(report.coprime.iter().all(|r| (r.m, r.n) != (4, 6)));
    }

    #[test]
    fn negative_examples() {
        let r = negative_existence_scan(&[c("1,0")]);
        assert!(r.violations.is_empty());
        assert_eq!(r.pairs_checked, 1);
        assert_eq!(r.parallel_pairs, 1);
        let partitions_of_4: Vec<Composition> =
            ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"].iter().map(|s| c(s)).collect();
        let r = negative_existence_scan(&partitions_of_4);
        assert!(r.violations.is_empty());
        assert!(r.parallel_pairs > 0);
    }
}
