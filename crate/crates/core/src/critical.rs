//! Critical pairs: the checker, the hook-driven construction of a partner
//! `β`, the step-by-step chain from `α` to `β`, the transitive closure and
//! the scan for further sign changes.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::composition::{triangle_greater, Composition};
use crate::deformed::DeformedValue;
use crate::error::{Error, Result};
use crate::hooks::{
    hook_factor, leg_length, nodes_with_factor, reduce_pair, Affine, HookFactor, Node,
};

/// Witness that `(α, β)` is a `(−n/m)`-critical pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPairCertificate {
    pub alpha: Composition,
    pub beta: Composition,
    pub m: u64,
    pub n: u64,
    /// `q_i` with `(r(β,i)−r(α,i))κ + α_i−β_i = q_i·(mκ+n)`.
    #[serde(serialize_with = "ser_rationals")]
    pub quotients: Vec<Rational64>,
}

fn ser_rationals<S: Serializer>(qs: &[Rational64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(|q| q.to_string()))
}

/// Outcome of checking a candidate pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified(CriticalPairCertificate),
    /// `α ⊳ β` fails.
    NotTriangle,
    /// The divisibility condition fails first at this 1-based index.
    NotDivisible { index: usize },
}

/// Check criticality after padding both to a common length.
///
/// `m = 0` is only accepted with `extended`; `n = 0` is always rejected.
pub fn check_critical_pair(
    alpha: &Composition,
    beta: &Composition,
    m: u64,
    n: u64,
    extended: bool,
) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::BadFactor {
            m,
            n,
            reason: "n must be at least 1",
        });
    }
    if m == 0 && !extended {
        return Err(Error::BadFactor {
            m,
            n,
            reason: "m = 0 requires the extended check",
        });
    }
    let ambient = alpha.ambient().max(beta.ambient());
    let (a, b) = (alpha.padded(ambient), beta.padded(ambient));
    if !triangle_greater(&a, &b) {
        return Ok(Verdict::NotTriangle);
    }
    let (ra, rb) = (a.rank_vector(), b.rank_vector());
    let (mi, ni) = (m as i64, n as i64);
    let mut quotients = Vec::with_capacity(ambient);
    for i in 0..ambient {
        let rank_diff = rb[i] as i64 - ra[i] as i64;
        let part_diff = a.parts()[i] as i64 - b.parts()[i] as i64;
        if rank_diff * ni != mi * part_diff {
            return Ok(Verdict::NotDivisible { index: i + 1 });
        }
        quotients.push(Rational64::new(part_diff, ni));
    }
    Ok(Verdict::Certified(CriticalPairCertificate {
        alpha: a,
        beta: b,
        m,
        n,
        quotients,
    }))
}

pub fn is_critical_pair(
    alpha: &Composition,
    beta: &Composition,
    m: u64,
    n: u64,
    extended: bool,
) -> Result<Option<CriticalPairCertificate>> {
    Ok(match check_critical_pair(alpha, beta, m, n, extended)? {
        Verdict::Certified(cert) => Some(cert),
        _ => None,
    })
}

/// Full record of one run of the construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgorithmTrace {
    pub node: Node,
    /// `l`: the rank of the node's row minus one.
    #[serde(rename = "l")]
    pub shift: usize,
    pub m: u64,
    pub n: u64,
    #[serde(rename = "N")]
    pub ambient: usize,
    #[serde(rename = "T")]
    pub steps: usize,
    pub t: usize,
    pub k: usize,
    /// `Σ_{i≤m} ⌊α_{w(l+i)}/n⌋`, a bound for `T`.
    #[serde(rename = "T0")]
    pub step_bound: u64,
    pub w: Vec<usize>,
    /// `ξ_1 … ξ_{m+T+1}`.
    pub xi: Vec<DeformedValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub alpha: Composition,
    pub beta: Composition,
    pub trace: AlgorithmTrace,
}

/// Shared state for the construction at one node.
struct Scaffold {
    alpha: Composition,
    w: Vec<usize>,
    shift: usize,
    m: usize,
    n: u64,
}

impl Scaffold {
    fn new(alpha: &Composition, node: Node, ambient: Option<usize>) -> Result<Self> {
        node.check(alpha)?;
        let default = alpha.construction_ambient();
        let ambient = ambient.map_or(default, |n| n.max(default));
        let alpha = alpha.padded(ambient);
        let m = leg_length(&alpha, node)? + 1;
        let n = (alpha.part(node.row) + 1 - node.col) as u64;
        let w = alpha.sort_info().w;
        let shift = alpha.rank(node.row)? - 1;
        Ok(Scaffold {
            alpha,
            w,
            shift,
            m,
            n,
        })
    }

    fn ambient(&self) -> usize {
        self.alpha.ambient()
    }

    /// Index `w(l + p)` for `1 ≤ l + p ≤ N`.
    fn w_shifted(&self, p: usize) -> usize {
        self.w[self.shift + p - 1]
    }

    /// `α̃_{w(l+p)}`.
    fn deformed_at(&self, p: usize) -> DeformedValue {
        let idx = self.w_shifted(p);
        DeformedValue::new(self.alpha.part(idx) as i64, idx as u32)
    }

    /// `ξ_{mk+i} = α̃_{w(l+i)} − nk` for `j = mk+i ≥ 1`.
    fn xi(&self, j: usize) -> DeformedValue {
        let k = (j - 1) / self.m;
        let i = (j - 1) % self.m + 1;
        self.deformed_at(i).minus(self.n as i64 * k as i64)
    }

    /// Comparison of `α̃_{w(l+m+s)}` with `ξ_{m+s+1}`, when in range.
    fn sign(&self, s: usize) -> Option<Ordering> {
        (self.shift + self.m + s <= self.ambient())
            .then(|| self.deformed_at(self.m + s).cmp(&self.xi(self.m + s + 1)))
    }

    fn signs(&self) -> Vec<Ordering> {
        (1..).map_while(|s| self.sign(s)).collect()
    }

    /// Steps 2–4 of the construction, growing `ξ` until it drops below the
    /// trailing deformed parts. Returns `T` and the computed prefix of `ξ`.
    fn incremental_steps(&self) -> Result<(usize, Vec<DeformedValue>)> {
        let m = self.m;
        let mut xi: Vec<DeformedValue> = (1..=m).map(|i| self.deformed_at(i)).collect();
        xi.push(xi[0].minus(self.n as i64));
        let mut s = 2;
        loop {
            if self.shift + m + s - 1 > self.ambient() {
                return Err(Error::Internal(format!(
                    "no sign change within ambient length {}",
                    self.ambient()
                )));
            }
            let next = xi[s - 1].minus(self.n as i64);
            let stop = next < self.deformed_at(m + s - 1);
            xi.push(next);
            if stop {
                return Ok((s - 1, xi));
            }
            s += 1;
        }
    }

    fn step_bound(&self) -> u64 {
        (1..=self.m)
            .map(|i| self.alpha.part(self.w_shifted(i)) as u64 / self.n)
            .sum()
    }
}

/// Build the partner `β` of `α` for the hook factor at `node`, with the
/// default ambient length `ℓ(α)+|α|`.
pub fn construct_beta(alpha: &Composition, node: Node) -> Result<Construction> {
    construct_beta_in(alpha, node, None)
}

/// As [`construct_beta`], with a requested ambient length. Requests below
/// `ℓ(α)+|α|` are raised to it.
pub fn construct_beta_in(
    alpha: &Composition,
    node: Node,
    ambient: Option<usize>,
) -> Result<Construction> {
    let sc = Scaffold::new(alpha, node, ambient)?;
    let (steps, xi) = sc.incremental_steps()?;
    let m = sc.m;
    let t = (steps - 1) % m + 1;
    let k = (steps - t) / m;
    let n = sc.n as i64;

    let mut parts: Vec<i64> = sc.alpha.parts().iter().map(|&p| p as i64).collect();
    for p in 1..=m + steps {
        let idx = sc.w_shifted(p) - 1;
        parts[idx] += if p <= t {
            -(k as i64 + 1) * n
        } else if p <= m {
            -(k as i64) * n
        } else {
            n
        };
    }
    let parts = parts
        .into_iter()
        .map(|p| {
            u32::try_from(p).map_err(|_| Error::Internal(format!("negative part {p} in β")))
        })
        .collect::<Result<Vec<_>>>()?;

    let trace = AlgorithmTrace {
        node,
        shift: sc.shift,
        m: m as u64,
        n: sc.n,
        ambient: sc.ambient(),
        steps,
        t,
        k,
        step_bound: sc.step_bound(),
        w: sc.w.clone(),
        xi,
    };
    Ok(Construction {
        alpha: sc.alpha.clone(),
        beta: Composition::new(parts),
        trace,
    })
}

/// `T` recomputed from the complete sign sequence: the first `s` with
/// `α̃_{w(l+m+s)} > ξ_{m+s+1}`.
pub fn exhaustive_steps(alpha: &Composition, node: Node) -> Result<usize> {
    let sc = Scaffold::new(alpha, node, None)?;
    let signs = sc.signs();
    if signs.contains(&Ordering::Equal) {
        return Err(Error::Internal("deformed value equal to ξ".into()));
    }
    signs
        .iter()
        .position(|&o| o == Ordering::Greater)
        .map(|p| p + 1)
        .ok_or_else(|| Error::Internal("no sign change".into()))
}

/// The intermediate compositions `β^(0) = α, …, β^(T) = β`, each obtained by
/// moving `n` from one of the rows `w(l+1..l+m)` (cyclically) to `w(l+m+s)`.
pub fn chain(alpha: &Composition, node: Node) -> Result<Vec<Composition>> {
    let sc = Scaffold::new(alpha, node, None)?;
    let (steps, _) = sc.incremental_steps()?;
    let n = sc.n as i64;
    let mut current: Vec<i64> = sc.alpha.parts().iter().map(|&p| p as i64).collect();
    let to_comp = |v: &[i64]| -> Result<Composition> {
        v.iter()
            .map(|&p| u32::try_from(p).map_err(|_| Error::Internal("negative part in chain".into())))
            .collect::<Result<Vec<_>>>()
            .map(Composition::new)
    };
    let mut out = vec![to_comp(&current)?];
    for s in 1..=steps {
        let from = sc.w_shifted((s - 1) % sc.m + 1) - 1;
        let to = sc.w_shifted(sc.m + s) - 1;
        current[from] -= n;
        current[to] += n;
        out.push(to_comp(&current)?);
    }
    Ok(out)
}

/// A further hook predicted by a second sign change of
/// `α̃_{w(l+m+s)} − ξ_{m+s+1}` after `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtraHook {
    /// The multiplier in `level·(mκ+n)`.
    pub level: u64,
    pub factor: HookFactor,
}

/// Scan for sign patterns `+` then `−` at `s > T`; each yields a node in
/// rows `w(l+1..l+m)` whose hook factor is `level·(mκ+n)`. Every prediction
/// is checked against [`hook_factor`].
pub fn detect_extra_hooks(alpha: &Composition, node: Node) -> Result<Vec<ExtraHook>> {
    let sc = Scaffold::new(alpha, node, None)?;
    let (steps, _) = sc.incremental_steps()?;
    let signs = sc.signs();
    let m = sc.m;
    let mut found = Vec::new();
    for s in steps + 1..signs.len() {
        if signs[s - 1] == Ordering::Greater && signs[s] == Ordering::Less {
            let q = m + s + 1;
            let level = (q - 1) / m;
            let i = (q - 1) % m + 1;
            let row = sc.w_shifted(i);
            let col = sc.alpha.part(row) as i64 + 1 - sc.n as i64 * level as i64;
            let predicted = Node::new(row, u32::try_from(col).unwrap_or(0));
            let actual = hook_factor(&sc.alpha, predicted, Affine::kappa_plus_one())
                .map_err(|_| Error::Internal(format!("predicted node {predicted} is not in α")))?;
            let lvl = level as i64;
            if actual.slope != Rational64::from(lvl * m as i64)
                || actual.intercept != Rational64::from(lvl * sc.n as i64)
            {
                return Err(Error::Internal(format!(
                    "predicted {}·({}κ+{}) at {predicted}, found {actual}",
                    level, m, sc.n
                )));
            }
            found.push(ExtraHook {
                level: level as u64,
                factor: actual,
            });
        }
    }
    Ok(found)
}

/// One member of a closure, with the step that first produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureMember {
    pub beta: Composition,
    pub depth: usize,
    pub parent: Composition,
    pub node: Node,
    /// The unreduced factor `m'κ+n'` at `node` in `parent`.
    pub factor: (u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Closure {
    pub alpha: Composition,
    pub m: u64,
    pub n: u64,
    pub members: Vec<ClosureMember>,
}

impl Closure {
    pub fn contains(&self, beta: &Composition) -> bool {
        self.members.iter().any(|c| c.beta.eq_mod_zeros(beta))
    }

    pub fn betas(&self) -> Vec<Composition> {
        self.members.iter().map(|c| c.beta.clone()).collect()
    }
}

/// Repeatedly apply the construction at every node whose hook factor is
/// proportional to `mκ+n`, up to `max_depth` rounds. Members are trimmed and
/// deduplicated up to trailing zeros; `α` itself is never a member.
pub fn closure(alpha: &Composition, m: u64, n: u64, max_depth: usize) -> Result<Closure> {
    if m == 0 || n == 0 {
        return Err(Error::BadFactor {
            m,
            n,
            reason: "both coefficients must be positive",
        });
    }
    let (m, n) = reduce_pair(m, n);
    let root = alpha.trimmed();
    let mut seen: BTreeMap<Composition, ClosureMember> = BTreeMap::new();
    let mut frontier = vec![root.clone()];
    for depth in 1..=max_depth {
        let mut next = Vec::new();
        for gamma in &frontier {
            for hook in nodes_with_factor(gamma, m, n) {
                let built = construct_beta(gamma, hook.node)?;
                let beta = built.beta.trimmed();
                if beta == root || seen.contains_key(&beta) {
                    continue;
                }
                seen.insert(
                    beta.clone(),
                    ClosureMember {
                        beta: beta.clone(),
                        depth,
                        parent: gamma.clone(),
                        node: hook.node,
                        factor: (built.trace.m, built.trace.n),
                    },
                );
                next.push(beta);
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        frontier = next;
    }
    let mut members: Vec<ClosureMember> = seen.into_values().collect();
    members.sort_by(|a, b| a.depth.cmp(&b.depth).then_with(|| a.beta.cmp(&b.beta)));
    Ok(Closure {
        alpha: root,
        m,
        n,
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn build(alpha: &str, row: usize, col: u32) -> Construction {
        construct_beta(&c(alpha), Node::new(row, col)).unwrap()
    }

    #[test]
    fn partition_example() {
        let out = build("9,8,8,7,4,3,3,2,2", 1, 7);
        let tr = &out.trace;
        assert_eq!((tr.m, tr.n, tr.steps, tr.t, tr.k, tr.shift), (4, 3, 9, 1, 2, 0));
        assert_eq!(out.beta.trimmed(), c("0,2,2,1,7,6,6,5,5,3,3,3,3"));
        assert_eq!(tr.ambient, 9 + 46);
        assert_eq!(
            out.beta.trimmed().rank_vector(),
            vec![13, 10, 11, 12, 1, 2, 3, 4, 5, 6, 7, 8, 9]
        );
        // ξ = 9,8,8,7,6,5,5,4,3,2,2,1,0,-1 up to υ
        let bases: Vec<i64> = tr.xi.iter().map(|v| v.base).collect();
        assert_eq!(bases, vec![9, 8, 8, 7, 6, 5, 5, 4, 3, 2, 2, 1, 0, -1]);
    }

    #[test]
    fn composition_example() {
        let out = build("0,3,5,6,6,1", 4, 4);
        let tr = &out.trace;
        assert_eq!((tr.m, tr.n, tr.steps, tr.t, tr.k), (4, 3, 6, 2, 1));
        assert_eq!(&tr.w[..8], &[4, 5, 3, 2, 6, 1, 7, 8]);
        let xi: Vec<String> = tr.xi.iter().map(|v| v.to_string()).collect();
        assert_eq!(
            xi,
            [
                "6-4υ", "6-5υ", "5-3υ", "3-2υ", "3-4υ", "3-5υ", "2-3υ", "-2υ", "-4υ", "-5υ",
                "-1-3υ"
            ]
        );
        let beta = out.beta.trimmed();
        assert_eq!(beta, c("3,0,2,0,0,4,3,3,3,3"));
        assert_eq!(beta.rank_vector(), vec![2, 8, 7, 9, 10, 1, 3, 4, 5, 6]);
    }

    #[test]
    fn single_step_example() {
        let out = build("2,6,5,2", 2, 4);
        assert_eq!((out.trace.m, out.trace.n, out.trace.steps), (2, 3, 1));
        assert_eq!(out.beta.trimmed(), c("5,3,5,2"));
        let xi: Vec<String> = out.trace.xi.iter().map(|v| v.to_string()).collect();
        assert_eq!(xi, ["6-2υ", "5-3υ", "3-2υ", "2-3υ"]);
    }

    #[test]
    fn shifted_examples() {
        let out = build("9,8,8,5,4,4", 2, 5);
        assert_eq!((out.trace.shift, out.trace.m, out.trace.n), (1, 3, 4));
        assert_eq!(out.beta.trimmed(), c("9,4,4,5,8,8"));
        assert_eq!(out.beta.trimmed().rank_vector(), vec![1, 5, 6, 4, 2, 3]);

        // seven rows w(6..12) receive +3, so T = 7
        let out = build("0,3,5,6,6,4,1", 4, 4);
        assert_eq!((out.trace.shift, out.trace.m, out.trace.n, out.trace.steps), (0, 5, 3, 7));
        assert_eq!((out.trace.t, out.trace.k), (2, 1));
        assert_eq!(out.beta.trimmed(), c("3,0,2,0,0,1,4,3,3,3,3,3"));
        assert_eq!(
            out.beta.trimmed().rank_vector(),
            vec![2, 10, 8, 11, 12, 9, 1, 3, 4, 5, 6, 7]
        );

        let out = build("7,6,6,4,4", 1, 6);
        assert_eq!((out.trace.m, out.trace.n), (3, 2));
        assert_eq!(out.beta.trimmed(), c("1,0,0,6,6,2,2,2,2,2,2,2"));
    }

    #[test]
    fn requested_ambient_is_never_smaller() {
        let a = c("2,6,5,2");
        let small = construct_beta_in(&a, Node::new(2, 4), Some(3)).unwrap();
        assert_eq!(small.trace.ambient, 19);
        let big = construct_beta_in(&a, Node::new(2, 4), Some(30)).unwrap();
        assert_eq!(big.trace.ambient, 30);
        assert!(big.beta.eq_mod_zeros(&small.beta));
    }

    #[test]
    fn invalid_node_rejected() {
        assert!(matches!(
            construct_beta(&c("1,0"), Node::new(1, 9)),
            Err(Error::InvalidNode { .. })
        ));
        assert!(chain(&c("1,0"), Node::new(2, 1)).is_err());
    }

    #[test]
    fn checker_examples() {
        let alpha = c("9,8,8,7,4,3,3,2,2");
        let beta = c("0,2,2,1,7,6,6,5,5,3,3,3,3");
        let cert = is_critical_pair(&alpha, &beta, 4, 3, false).unwrap().unwrap();
        assert_eq!(cert.beta.ambient(), 13);
        assert_eq!(cert.quotients[0], Rational64::from(3));
        assert_eq!(cert.quotients[4], Rational64::from(-1));
        assert_eq!(is_critical_pair(&alpha, &alpha, 4, 3, false).unwrap(), None);
        assert_eq!(
            check_critical_pair(&alpha, &beta, 3, 4, false).unwrap(),
            Verdict::NotDivisible { index: 1 }
        );
        assert_eq!(
            check_critical_pair(&beta, &alpha, 4, 3, false).unwrap(),
            Verdict::NotTriangle
        );
    }

    #[test]
    fn checker_zero_coefficients() {
        let (a, b) = (c("3,0"), c("2,1"));
        assert!(is_critical_pair(&a, &b, 0, 1, false).is_err());
        assert!(is_critical_pair(&a, &b, 1, 0, true).is_err());
        let cert = is_critical_pair(&a, &b, 0, 1, true).unwrap().unwrap();
        assert_eq!(cert.alpha.rank_vector(), cert.beta.rank_vector());
        assert_eq!(is_critical_pair(&a, &b, 1, 1, false).unwrap(), None);
    }

    #[test]
    fn chains() {
        let ch = chain(&c("2,6,5,2"), Node::new(2, 4)).unwrap();
        let trimmed: Vec<Composition> = ch.iter().map(|x| x.trimmed()).collect();
        assert_eq!(trimmed, vec![c("2,6,5,2"), c("5,3,5,2")]);

        let alpha = c("9,8,8,7,4,3,3,2,2");
        let ch = chain(&alpha, Node::new(1, 7)).unwrap();
        assert_eq!(ch.len(), 10);
        assert!(ch[0].eq_mod_zeros(&alpha));
        assert!(ch[9].eq_mod_zeros(&c("0,2,2,1,7,6,6,5,5,3,3,3,3")));
        for pair in ch.windows(2) {
            assert!(triangle_greater(&pair[0], &pair[1]));
        }
    }

    #[test]
    fn steps_are_unique() {
        for (a, r, col) in [("9,8,8,7,4,3,3,2,2", 1, 7), ("0,3,5,6,6,1", 4, 4), ("2,6,5,2", 2, 4)] {
            let built = build(a, r, col);
            assert_eq!(exhaustive_steps(&c(a), Node::new(r, col)).unwrap(), built.trace.steps);
        }
    }

    #[test]
    fn extra_hooks() {
        let found = detect_extra_hooks(&c("9,7,6,5,2"), Node::new(1, 7)).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].level, 2);
        assert_eq!(found[0].factor.node, Node::new(2, 2));
        assert_eq!(found[0].factor.to_string(), "4κ+6");

        assert!(detect_extra_hooks(&c("9,7,6,5,2"), Node::new(3, 4)).unwrap().is_empty());
        assert!(detect_extra_hooks(&c("2,6,5,2"), Node::new(2, 4)).unwrap().is_empty());
    }

    #[test]
    fn closure_examples() {
        let cl = closure(&c("6,3,1,1"), 2, 3, 2).unwrap();
        assert!(cl.contains(&c("0,3,1,1,6")));
        assert!(cl.contains(&c("0,3,4,1,3")));
        let first = cl.members.iter().find(|x| x.beta == c("0,3,1,1,6")).unwrap();
        assert_eq!((first.depth, first.factor), (1, (4, 6)));
        let second = cl.members.iter().find(|x| x.beta == c("0,3,4,1,3")).unwrap();
        assert_eq!((second.depth, second.factor), (2, (2, 3)));

        let alpha = c("9,7,6,5,2");
        let one = closure(&alpha, 2, 3, 1).unwrap();
        let mut got = one.betas();
        got.sort();
        let mut want = vec![
            c("6,7,9,5,2"),
            c("9,7,0,2,5,3,3"),
            c("3,7,6,5,8"),
            c("9,1,0,5,2,6,6"),
        ];
        want.sort();
        assert_eq!(got, want);

        let two = closure(&alpha, 4, 6, 2).unwrap();
        assert!(two.contains(&c("6,7,3,5,8")));
        for member in &two.members {
            assert!(is_critical_pair(&alpha, &member.beta, 2, 3, false).unwrap().is_some());
        }
        assert!(closure(&alpha, 0, 3, 1).is_err());
        assert!(closure(&alpha, 2, 3, 0).unwrap().members.is_empty());
    }
}
