//! Letters and cyclic words over a surface scheme's edge alphabet.
//!
//! A curve transverse to the edge graph of a gluing scheme is recorded by its
//! crossing sequence: one signed letter per edge crossing. Equality of closed
//! curves is cyclic equality of words, so most operations here are cyclic.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Index of a generator (a paired edge of a scheme).
pub type GenId = usize;

/// One signed crossing of an edge.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: GenId,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: GenId, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.gen, if self.inv { "-" } else { "+" })
    }
}

/// A word over the alphabet; linear for arcs, cyclic for closed curves.
pub type Word = Vec<Letter>;

pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Free reduction (linear): cancel adjacent x x^-1 pairs.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last().is_some_and(|&t| t.is_inverse_of(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Cyclic free reduction: linear reduction plus cancellation across the seam.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut v = free_reduce(w);
    while v.len() >= 2 && v[0].is_inverse_of(*v.last().unwrap()) {
        v.pop();
        v.remove(0);
        v = free_reduce(&v);
    }
    v
}

pub fn rotate(w: &[Letter], k: usize) -> Word {
    if w.is_empty() {
        return Vec::new();
    }
    let k = k % w.len();
    let mut v = Vec::with_capacity(w.len());
    v.extend_from_slice(&w[k..]);
    v.extend_from_slice(&w[..k]);
    v
}

/// Lexicographically least rotation; canonical form for cyclic words.
pub fn canonical_rotation(w: &[Letter]) -> Word {
    if w.is_empty() {
        return Vec::new();
    }
    (0..w.len()).map(|k| rotate(w, k)).min().unwrap()
}

/// Canonical form of the unoriented free homotopy class: least among all
/// rotations of the word and of its inverse.
pub fn canonical_class(w: &[Letter]) -> Word {
    let a = canonical_rotation(w);
    let b = canonical_rotation(&inverse_word(w));
    a.min(b)
}

pub fn cyclically_equal(a: &[Letter], b: &[Letter]) -> bool {
    a.len() == b.len() && canonical_rotation(a) == canonical_rotation(b)
}

/// Exponent sums per generator over `ngens` generators.
pub fn exponent_vector(w: &[Letter], ngens: usize) -> Vec<i64> {
    let mut v = vec![0i64; ngens];
    for l in w {
        v[l.gen] += if l.inv { -1 } else { 1 };
    }
    v
}

/// All cyclic subwords of length `len` of `w` (with wraparound), paired with
/// their starting index. Empty when `len > |w|`.
pub fn cyclic_subwords(w: &[Letter], len: usize) -> Vec<(usize, Word)> {
    if len > w.len() || w.is_empty() {
        return Vec::new();
    }
    (0..w.len())
        .map(|s| {
            let sub: Word = (0..len).map(|i| w[(s + i) % w.len()]).collect();
            (s, sub)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(gen: GenId, inv: bool) -> Letter {
        Letter::new(gen, inv)
    }

    #[test]
    fn reduce_cancels_pairs() {
        let w = vec![l(0, false), l(1, false), l(1, true), l(0, false)];
        assert_eq!(free_reduce(&w), vec![l(0, false), l(0, false)]);
    }

    #[test]
    fn cyclic_reduce_wraps_seam() {
        // a b a^-1 reduces cyclically to b
        let w = vec![l(0, false), l(1, false), l(0, true)];
        assert_eq!(cyclic_reduce(&w), vec![l(1, false)]);
    }

    #[test]
    fn canonical_rotation_is_least() {
        let w = vec![l(1, false), l(0, false)];
        assert_eq!(canonical_rotation(&w), vec![l(0, false), l(1, false)]);
    }

    #[test]
    fn exponents() {
        let w = vec![l(0, false), l(1, false), l(0, false), l(1, true)];
        assert_eq!(exponent_vector(&w, 2), vec![2, 0]);
    }
}
