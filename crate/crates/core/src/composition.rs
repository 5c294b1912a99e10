//! Compositions with an explicit ambient length, ranks and the two orders
//! used for triangularity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of nonnegative parts indexed `1..=N`.
///
/// The ambient length `N` is part of the value: `(3,0)` and `(3,0,0)` are
/// different compositions. Use [`Composition::eq_mod_zeros`] to compare up
/// to trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<u32>,
}

/// The sorting permutation of a composition together with its sorted form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortInfo {
    /// `w[i-1] = w(i)`, the index holding the part of rank `i`.
    pub w: Vec<usize>,
    pub alpha_plus: Composition,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition { parts }
    }

    pub fn zeros(ambient: usize) -> Self {
        Composition { parts: vec![0; ambient] }
    }

    /// Standard basis vector `ε(i)` in `N` slots.
    pub fn unit(ambient: usize, i: usize) -> Self {
        let mut parts = vec![0; ambient];
        parts[i - 1] = 1;
        Composition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    /// Ambient length `N`.
    pub fn ambient(&self) -> usize {
        self.parts.len()
    }

    /// Part `α_i` (1-based). Indices beyond `N` read as zero.
    pub fn part(&self, i: usize) -> u32 {
        debug_assert!(i >= 1);
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// `|α|`
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// `ℓ(α)`: the largest index with a positive part, 0 for the zero composition.
    pub fn length(&self) -> usize {
        self.parts.iter().rposition(|&p| p > 0).map_or(0, |i| i + 1)
    }

    pub fn max_part(&self) -> u32 {
        self.parts.iter().copied().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    /// Pad with zeros to ambient length `max(N, ambient)`.
    pub fn padded(&self, ambient: usize) -> Composition {
        let mut parts = self.parts.clone();
        if ambient > parts.len() {
            parts.resize(ambient, 0);
        }
        Composition { parts }
    }

    /// Drop trailing zeros, so that `N = ℓ(α)`.
    pub fn trimmed(&self) -> Composition {
        Composition {
            parts: self.parts[..self.length()].to_vec(),
        }
    }

    pub fn eq_mod_zeros(&self, other: &Composition) -> bool {
        self.parts[..self.length()] == other.parts[..other.length()]
    }

    /// The default ambient length for constructions, `ℓ(α)+|α|`, never
    /// smaller than the current one.
    pub fn construction_ambient(&self) -> usize {
        self.ambient().max(self.length() + self.weight() as usize)
    }

    fn sorting_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.parts.len()).collect();
        // stable: equal parts keep index order
        order.sort_by(|&a, &b| self.parts[b].cmp(&self.parts[a]));
        order
    }

    /// `r(α,i)` for every `i`, as a 1-based permutation of `1..=N`.
    pub fn rank_vector(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.parts.len()];
        for (pos, idx) in self.sorting_order().into_iter().enumerate() {
            ranks[idx] = pos + 1;
        }
        ranks
    }

    /// `r(α,i)` for a single 1-based index, straight from the counting definition.
    pub fn rank(&self, i: usize) -> Result<usize> {
        let len = self.parts.len();
        if i == 0 || i > len {
            return Err(Error::IndexOutOfRange { index: i, len });
        }
        let a = self.parts[i - 1];
        let larger = self.parts.iter().filter(|&&p| p > a).count();
        let ties = self.parts[..i].iter().filter(|&&p| p == a).count();
        Ok(larger + ties)
    }

    pub fn sort_info(&self) -> SortInfo {
        let order = self.sorting_order();
        let alpha_plus = Composition {
            parts: order.iter().map(|&i| self.parts[i]).collect(),
        };
        SortInfo {
            w: order.into_iter().map(|i| i + 1).collect(),
            alpha_plus,
        }
    }

    /// `α⁺`
    pub fn sorted(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Composition { parts }
    }
}

fn common_pad(a: &Composition, b: &Composition) -> (Composition, Composition) {
    let n = a.ambient().max(b.ambient());
    (a.padded(n), b.padded(n))
}

fn dominates_same_len(a: &[u32], b: &[u32]) -> bool {
    if a == b {
        return false;
    }
    let (mut sa, mut sb) = (0u64, 0u64);
    for (&x, &y) in a.iter().zip(b) {
        sa += x as u64;
        sb += y as u64;
        if sa < sb {
            return false;
        }
    }
    true
}

/// The dominance order `α ≻ β`: distinct, with every partial sum of `α` at
/// least that of `β`. Shorter arguments are padded with zeros.
pub fn dominates(alpha: &Composition, beta: &Composition) -> bool {
    let (a, b) = common_pad(alpha, beta);
    dominates_same_len(&a.parts, &b.parts)
}

/// The order `α ⊳ β`: equal weight, and either `α⁺ ≻ β⁺` or `α⁺ = β⁺` and
/// `α ≻ β`. Insensitive to trailing zeros.
pub fn triangle_greater(alpha: &Composition, beta: &Composition) -> bool {
    if alpha.weight() != beta.weight() {
        return false;
    }
    let (a, b) = common_pad(alpha, beta);
    let (ap, bp) = (a.sorted(), b.sorted());
    if ap == bp {
        dominates_same_len(&a.parts, &b.parts)
    } else {
        dominates_same_len(&ap.parts, &bp.parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "@0");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Grammar: `part ("," part)* ("@" N)?`, or `"@" N` alone. Parts are
    /// nonnegative decimal integers; `N` may not be smaller than the number
    /// of listed parts.
    fn from_str(text: &str) -> Result<Self> {
        let err = |position: usize, message: String| Error::Parse { position, message };
        let (list, ambient) = match text.find('@') {
            Some(at) => {
                let suffix = &text[at + 1..];
                let n: usize = parse_uint(suffix).map_err(|m| err(at + 1, m))?;
                (&text[..at], Some(n))
            }
            None => (text, None),
        };
        let mut parts = Vec::new();
        if !(list.is_empty() && ambient.is_some()) {
            let mut offset = 0;
            for field in list.split(',') {
                let value = parse_uint(field).map_err(|m| err(offset, m))?;
                let value = u32::try_from(value)
                    .map_err(|_| err(offset, format!("part {field:?} is too large")))?;
                parts.push(value);
                offset += field.len() + 1;
            }
        }
        if let Some(n) = ambient {
            if n < parts.len() {
                return Err(err(
                    list.len() + 1,
                    format!("ambient length {n} is smaller than the {} listed parts", parts.len()),
                ));
            }
            parts.resize(n, 0);
        }
        Ok(Composition { parts })
    }
}

fn parse_uint(field: &str) -> std::result::Result<usize, String> {
    let trimmed = field.trim();
    if trimmed.is_empty() {
        return Err("expected a nonnegative integer".into());
    }
    if !trimmed.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{trimmed:?} is not a nonnegative integer"));
    }
    trimmed
        .parse()
        .map_err(|_| format!("{trimmed:?} is too large"))
}
