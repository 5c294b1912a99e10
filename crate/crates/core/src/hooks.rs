//! Leg-lengths and hook-length factors on the modified Ferrers diagram of a
//! composition.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::composition::Composition;
use crate::deformed::{deformed_all, DeformedValue};
use crate::error::{Error, Result};

/// A node `(i, j)` of the diagram, `1 ≤ i ≤ ℓ(α)`, `1 ≤ j ≤ α_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: u32,
}

impl Node {
    pub fn new(row: usize, col: u32) -> Self {
        Node { row, col }
    }

    pub fn is_valid_for(&self, alpha: &Composition) -> bool {
        self.row >= 1 && self.row <= alpha.length() && self.col >= 1 && self.col <= alpha.part(self.row)
    }

    pub fn check(&self, alpha: &Composition) -> Result<()> {
        if self.is_valid_for(alpha) {
            Ok(())
        } else {
            Err(Error::InvalidNode {
                node: *self,
                composition: alpha.to_string(),
            })
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Every node of `α`, row by row.
pub fn nodes(alpha: &Composition) -> impl Iterator<Item = Node> + '_ {
    (1..=alpha.length()).flat_map(move |i| (1..=alpha.part(i)).map(move |j| Node::new(i, j)))
}

/// An affine expression `aκ + b` with rational coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub kappa: Rational64,
    pub constant: Rational64,
}

impl Affine {
    pub fn new(kappa: Rational64, constant: Rational64) -> Self {
        Affine { kappa, constant }
    }

    pub fn integer(kappa: i64, constant: i64) -> Self {
        Affine::new(kappa.into(), constant.into())
    }

    /// `t = κ + 1`, the case that carries the critical-pair theory.
    pub fn kappa_plus_one() -> Self {
        Affine::integer(1, 1)
    }

    pub fn eval(&self, kappa: Rational64) -> Rational64 {
        self.kappa * kappa + self.constant
    }
}

fn fmt_affine(f: &mut fmt::Formatter<'_>, kappa: Rational64, constant: Rational64) -> fmt::Result {
    let mut wrote = false;
    if !kappa.is_zero() {
        if kappa == Rational64::one() {
            write!(f, "κ")?;
        } else if kappa == -Rational64::one() {
            write!(f, "-κ")?;
        } else {
            write!(f, "{kappa}κ")?;
        }
        wrote = true;
    }
    if !constant.is_zero() || !wrote {
        if wrote && !constant.is_negative() {
            write!(f, "+")?;
        }
        write!(f, "{constant}")?;
    }
    Ok(())
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_affine(f, self.kappa, self.constant)
    }
}

/// The hook-length `h(α,t;i,j) = slope·κ + intercept` at a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HookFactor {
    pub node: Node,
    pub slope: Rational64,
    pub intercept: Rational64,
}

impl HookFactor {
    /// `(m, n)` when both coefficients are positive integers.
    pub fn integer_pair(&self) -> Option<(u64, u64)> {
        if self.slope.is_integer()
            && self.intercept.is_integer()
            && self.slope.is_positive()
            && self.intercept.is_positive()
        {
            Some((*self.slope.numer() as u64, *self.intercept.numer() as u64))
        } else {
            None
        }
    }

    /// `(m/g, n/g)` with `g = gcd(m, n)`.
    pub fn reduced(&self) -> Option<(u64, u64)> {
        self.integer_pair().map(|(m, n)| reduce_pair(m, n))
    }

    /// True when this factor vanishes at `κ = −n/m`, i.e. is proportional to `mκ + n`.
    pub fn same_zero(&self, m: u64, n: u64) -> bool {
        !self.slope.is_zero() && self.intercept * Rational64::from(m as i64) == self.slope * Rational64::from(n as i64)
    }

    pub fn as_affine(&self) -> Affine {
        Affine::new(self.slope, self.intercept)
    }
}

impl fmt::Display for HookFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_affine(f, self.slope, self.intercept)
    }
}

impl Serialize for HookFactor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("HookFactor", 4)?;
        s.serialize_field("node", &[self.node.row as u64, self.node.col as u64])?;
        s.serialize_field("slope", &self.slope.to_string())?;
        s.serialize_field("intercept", &self.intercept.to_string())?;
        s.serialize_field("factor", &self.to_string())?;
        s.end()
    }
}

pub fn reduce_pair(m: u64, n: u64) -> (u64, u64) {
    let g = m.gcd(&n);
    (m.checked_div(g).unwrap_or(m), n.checked_div(g).unwrap_or(n))
}

/// `L(α;i,j) = #{l>i : j ≤ α_l ≤ α_i} + #{l<i : j ≤ α_l+1 ≤ α_i}`.
pub fn leg_length(alpha: &Composition, node: Node) -> Result<usize> {
    node.check(alpha)?;
    let (i, j) = (node.row, node.col as u64);
    let a_i = alpha.part(i) as u64;
    let parts = alpha.parts();
    let below = parts[i..]
        .iter()
        .filter(|&&p| j <= p as u64 && p as u64 <= a_i)
        .count();
    let above = parts[..i - 1]
        .iter()
        .filter(|&&p| j <= p as u64 + 1 && (p as u64) < a_i)
        .count();
    Ok(below + above)
}

/// The same count through the deformation: `#{l : j − iυ − 1 < α̃_l < α̃_i}`.
pub fn leg_length_deformed(alpha: &Composition, node: Node) -> Result<usize> {
    node.check(alpha)?;
    let values = deformed_all(alpha);
    let top = values[node.row - 1];
    let bottom = DeformedValue::new(node.col as i64 - 1, node.row as u32);
    Ok(values.iter().filter(|&&v| bottom < v && v < top).count())
}

/// `h(α,t;i,j) = α_i − j + t + κL(α;i,j)`.
pub fn hook_factor(alpha: &Composition, node: Node, t: Affine) -> Result<HookFactor> {
    let leg = leg_length(alpha, node)? as i64;
    let arm = alpha.part(node.row) as i64 - node.col as i64;
    Ok(HookFactor {
        node,
        slope: t.kappa + Rational64::from(leg),
        intercept: t.constant + Rational64::from(arm),
    })
}

/// The factors of `h(α,t)`, one per node, in row-major order.
pub fn hook_factors_all(alpha: &Composition, t: Affine) -> Vec<HookFactor> {
    nodes(alpha)
        .map(|node| hook_factor(alpha, node, t).expect("node enumerated from alpha"))
        .collect()
}

/// Number of factors of `h(α,κ+1)` proportional to `mκ + n`.
pub fn factor_multiplicity(alpha: &Composition, m: u64, n: u64) -> Result<usize> {
    if m == 0 || n == 0 {
        return Err(Error::BadFactor {
            m,
            n,
            reason: "both coefficients must be positive",
        });
    }
    Ok(hook_factors_all(alpha, Affine::kappa_plus_one())
        .iter()
        .filter(|h| h.same_zero(m, n))
        .count())
}

/// Nodes whose `κ+1` hook factor is proportional to `mκ + n`.
pub fn nodes_with_factor(alpha: &Composition, m: u64, n: u64) -> Vec<HookFactor> {
    hook_factors_all(alpha, Affine::kappa_plus_one())
        .into_iter()
        .filter(|h| h.same_zero(m, n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn kp1(alpha: &str, row: usize, col: u32) -> String {
        hook_factor(&c(alpha), Node::new(row, col), Affine::kappa_plus_one())
            .unwrap()
            .to_string()
    }

    #[test]
    fn leg_lengths_from_the_figure() {
        let a = c("1,0,5,3,4,2");
        assert_eq!(leg_length(&a, Node::new(4, 1)).unwrap(), 3);
        assert_eq!(leg_length(&a, Node::new(3, 2)).unwrap(), 4);
        assert_eq!(leg_length(&c("9,8,8,5,4,4"), Node::new(2, 5)).unwrap(), 2);
        for node in nodes(&a) {
            assert_eq!(leg_length(&a, node), leg_length_deformed(&a, node));
        }
    }

    #[test]
    fn invalid_nodes() {
        let a = c("1,0,5");
        assert!(leg_length(&a, Node::new(2, 1)).is_err());
        assert!(leg_length(&a, Node::new(1, 2)).is_err());
        assert!(leg_length(&a, Node::new(4, 1)).is_err());
        assert!(leg_length(&a, Node::new(3, 0)).is_err());
        assert!(hook_factor(&a, Node::new(0, 1), Affine::kappa_plus_one()).is_err());
    }

    #[test]
    fn hook_factor_examples() {
        assert_eq!(kp1("0,3,5,6,6,1", 4, 4), "4κ+3");
        assert_eq!(kp1("2,6,5,2", 2, 4), "2κ+3");
        assert_eq!(kp1("9,8,8,7,4,3,3,2,2", 1, 7), "4κ+3");
    }

    #[test]
    fn general_t() {
        let a = c("9,8,8,7,4,3,3,2,2");
        let node = Node::new(1, 7);
        let at_one = hook_factor(&a, node, Affine::integer(0, 1)).unwrap();
        assert_eq!(at_one.to_string(), "3κ+3");
        let at_kappa = hook_factor(&a, node, Affine::integer(1, 0)).unwrap();
        assert_eq!(at_kappa.to_string(), "4κ+2");
        let half = Affine::new(Rational64::new(1, 2), Rational64::new(1, 3));
        let h = hook_factor(&a, node, half).unwrap();
        assert_eq!(h.slope, Rational64::new(7, 2));
        assert_eq!(h.intercept, Rational64::new(7, 3));
        assert_eq!(h.integer_pair(), None);
    }

    #[test]
    fn all_factors() {
        let shown: Vec<String> = hook_factors_all(&c("2"), Affine::kappa_plus_one())
            .iter()
            .map(|h| h.to_string())
            .collect();
        assert_eq!(shown, ["κ+2", "κ+1"]);
        assert!(hook_factors_all(&c("0,0"), Affine::kappa_plus_one()).is_empty());

        let a = c("9,7,6,5,2");
        let hs = hook_factors_all(&a, Affine::kappa_plus_one());
        assert_eq!(hs.len(), 29);
        let at = |r, col| hs.iter().find(|h| h.node == Node::new(r, col)).unwrap().to_string();
        assert_eq!(at(1, 7), "2κ+3");
        assert_eq!(at(3, 4), "2κ+3");
        assert_eq!(at(1, 4), "4κ+6");
        assert_eq!(at(2, 2), "4κ+6");
    }

    #[test]
    fn multiplicities() {
        assert_eq!(factor_multiplicity(&c("9,7,6,5,2"), 2, 3).unwrap(), 4);
        assert_eq!(factor_multiplicity(&c("9,7,6,5,2"), 4, 6).unwrap(), 4);
        assert_eq!(factor_multiplicity(&c("6,3,1,1"), 2, 3).unwrap(), 1);
        assert_eq!(factor_multiplicity(&c("2"), 5, 7).unwrap(), 0);
        assert!(factor_multiplicity(&c("2"), 0, 7).is_err());
        assert!(factor_multiplicity(&c("2"), 1, 0).is_err());
    }

    #[test]
    fn reduced_form() {
        let h = HookFactor {
            node: Node::new(1, 1),
            slope: 4.into(),
            intercept: 6.into(),
        };
        assert_eq!(h.reduced(), Some((2, 3)));
        assert!(h.same_zero(2, 3));
        assert!(!h.same_zero(3, 2));
    }
}
