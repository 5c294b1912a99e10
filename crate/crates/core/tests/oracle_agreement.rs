use std::collections::BTreeSet;

use hookpairs_core::{
    closure, construct_beta, enumerate_partners, hook_factors_all, is_critical_pair,
    negative_existence_scan, uniqueness_scan, Affine, Composition, Error, SearchBounds,
    SearchMode,
};

fn c(s: &str) -> Composition {
    s.parse().unwrap()
}

fn both(alpha: &Composition, m: u64, n: u64, n_max: usize) -> BTreeSet<Composition> {
    let perm = enumerate_partners(
        alpha,
        m,
        n,
        &SearchBounds::with_mode(SearchMode::RankPermutation).n_max(n_max).permutation_cap(n_max),
    )
    .unwrap();
    let naive =
        enumerate_partners(alpha, m, n, &SearchBounds::with_mode(SearchMode::NaiveComposition).n_max(n_max))
            .unwrap();
    assert_eq!(perm, naive, "{alpha} {m}κ+{n} within {n_max}");
    perm
}

#[test]
fn oracle_results_are_certified() {
    for alpha in ["3,1", "0,2,1", "2,2,0", "1,0,3", "4,1,1"] {
        let a = c(alpha);
        let n_max = a.construction_ambient().min(8);
        for h in hook_factors_all(&a, Affine::kappa_plus_one()) {
            let (m, n) = h.integer_pair().unwrap();
            for beta in both(&a, m, n, n_max) {
                assert!(is_critical_pair(&a, &beta, m, n, false).unwrap().is_some());
            }
        }
    }
}

#[test]
fn constructions_are_found() {
    for alpha in ["3,1", "0,2,1", "2,0,2", "1,1,1"] {
        let a = c(alpha);
        for h in hook_factors_all(&a, Affine::kappa_plus_one()) {
            let (m, n) = h.integer_pair().unwrap();
            let built = construct_beta(&a, h.node).unwrap();
            assert!(both(&a, m, n, a.construction_ambient()).contains(&built.beta.trimmed()));
        }
    }
}

#[test]
fn closure_members_are_partners() {
    let alpha = c("6,3,1,1");
    let cl = closure(&alpha, 2, 3, 2).unwrap();
    for member in &cl.members {
        assert!(is_critical_pair(&alpha, &member.beta, 2, 3, false).unwrap().is_some(), "{}", member.beta);
    }
}

#[test]
fn infeasible_bounds_are_refused() {
    let a = c("2,6,5,2");
    assert!(matches!(
        enumerate_partners(&a, 2, 3, &SearchBounds::default()),
        Err(Error::InfeasibleBounds(_))
    ));
    assert!(matches!(
        enumerate_partners(&a, 2, 3, &SearchBounds::default().n_max(3)),
        Err(Error::InfeasibleBounds(_))
    ));
    assert!(matches!(
        enumerate_partners(&a, 0, 3, &SearchBounds::default().n_max(4)),
        Err(Error::BadFactor { .. })
    ));
}

#[test]
fn small_scans_run_clean() {
    let corpus: Vec<Composition> = ["1", "2", "1,1", "3", "2,1", "1,1,1", "4,0", "2,2"].into_iter().map(c).collect();
    let report = uniqueness_scan(&corpus, 9).unwrap();
    assert_eq!(report.flagged().count(), 0);
    assert!(report.coprime.iter().all(|r| r.complete));
    assert!(negative_existence_scan(&corpus).violations.is_empty());
}
