//! The υ-deformed parts `α̃_i = α_i − iυ` with `υ = 1/(N+1)`.
//!
//! A value `a − bυ` is stored as the integer pair `(a, b)`. Since
//! `0 ≤ bυ < 1` for `b ≤ N`, comparisons reduce to comparing `a` first and
//! then `b` in reverse, with no rationals involved.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "(i64, u32)", from = "(i64, u32)")]
pub struct DeformedValue {
    pub base: i64,
    pub upsilon_count: u32,
}

impl DeformedValue {
    pub fn new(base: i64, upsilon_count: u32) -> Self {
        DeformedValue { base, upsilon_count }
    }

    /// `self − k` for an integer `k`.
    pub fn minus(self, k: i64) -> Self {
        DeformedValue {
            base: self.base - k,
            ..self
        }
    }

    pub fn plus(self, k: i64) -> Self {
        self.minus(-k)
    }

    /// True when `self − other` is an integer, i.e. the υ-parts cancel.
    pub fn differs_by_integer(&self, other: &DeformedValue) -> bool {
        self.upsilon_count == other.upsilon_count
    }
}

impl Ord for DeformedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| other.upsilon_count.cmp(&self.upsilon_count))
    }
}

impl PartialOrd for DeformedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<DeformedValue> for (i64, u32) {
    fn from(v: DeformedValue) -> Self {
        (v.base, v.upsilon_count)
    }
}

impl From<(i64, u32)> for DeformedValue {
    fn from((base, upsilon_count): (i64, u32)) -> Self {
        DeformedValue { base, upsilon_count }
    }
}

impl std::fmt::Display for DeformedValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.base, self.upsilon_count) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "-υ"),
            (0, b) => write!(f, "-{b}υ"),
            (a, 1) => write!(f, "{a}-υ"),
            (a, b) => write!(f, "{a}-{b}υ"),
        }
    }
}

/// `α̃_i` for a 1-based index.
pub fn deformed(alpha: &Composition, i: usize) -> Result<DeformedValue> {
    let len = alpha.ambient();
    if i == 0 || i > len {
        return Err(Error::IndexOutOfRange { index: i, len });
    }
    Ok(DeformedValue::new(alpha.part(i) as i64, i as u32))
}

/// All of `α̃`, indexed from 0.
pub fn deformed_all(alpha: &Composition) -> Vec<DeformedValue> {
    (1..=alpha.ambient())
        .map(|i| DeformedValue::new(alpha.part(i) as i64, i as u32))
        .collect()
}

/// Ranks computed on the deformed values: `1 + #{j : α̃_j > α̃_i}`.
pub fn deformed_rank_vector(alpha: &Composition) -> Vec<usize> {
    let values = deformed_all(alpha);
    values
        .iter()
        .map(|v| 1 + values.iter().filter(|u| *u > v).count())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let a: Composition = "2,6,5,2".parse().unwrap();
        assert_eq!(deformed(&a, 4).unwrap(), DeformedValue::new(2, 4));
        let first = deformed(&a, 1).unwrap();
        assert_eq!(first, DeformedValue::new(2, 1));
        assert!(first > deformed(&a, 4).unwrap());
        // sorted by w: (6-2υ, 5-3υ, 2-υ, 2-4υ)
        let mut all = deformed_all(&a);
        all.sort_by(|x, y| y.cmp(x));
        let shown: Vec<String> = all.iter().map(|v| v.to_string()).collect();
        assert_eq!(shown, ["6-2υ", "5-3υ", "2-υ", "2-4υ"]);

        let z = Composition::zeros(3);
        assert_eq!(deformed(&z, 1).unwrap(), DeformedValue::new(0, 1));
        assert!(deformed(&z, 0).is_err());
        assert!(deformed(&z, 4).is_err());
    }

    #[test]
    fn order_is_exact() {
        // 3 - 5υ > 2 - υ, because bυ < 1
        assert!(DeformedValue::new(3, 5) > DeformedValue::new(2, 1));
        assert!(DeformedValue::new(0, 1) > DeformedValue::new(0, 2));
        assert!(DeformedValue::new(-1, 0) < DeformedValue::new(0, 9));
        assert_eq!(DeformedValue::new(4, 2).minus(3), DeformedValue::new(1, 2));
    }
}
