//! Presentations read off a gluing scheme.
//!
//! The crossing sequences of transverse curves multiply in the presentation
//! whose generators are the scheme's paired edges and whose relators are the
//! rotation words of the interior vertices (one relation per interior
//! vertex). Schemes with one interior vertex and one polygon, or with all
//! vertices on the boundary, give the standard presentations.

use crate::surface::Scheme;
use crate::word::{
    canonical_rotation, cyclic_reduce, exponent_vector, inverse_word, rotate, Letter, Word,
};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    Standard,
    Geometric,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub generator_names: Vec<String>,
    /// Scheme edge id per generator (generators are the paired edges).
    pub generator_edges: Vec<usize>,
    pub relators: Vec<Word>,
    pub kind: PresentationKind,
}

impl Presentation {
    /// The dual presentation of a scheme. Words over it are crossing
    /// sequences; the letters reference scheme edge ids directly.
    pub fn from_scheme(scheme: &Scheme) -> Result<Self, crate::error::SurfaceError> {
        let map = scheme.to_map()?;
        let gens: Vec<usize> = scheme.paired_edges();
        let mut relators = Vec::new();
        let mut interior_vertices = 0usize;
        for cycle in map.vertices() {
            let on_boundary = cycle.iter().any(|&d| {
                map.darts[d].hole || map.darts[map.opp[d]].hole
            });
            if on_boundary {
                continue;
            }
            interior_vertices += 1;
            let word: Word = cycle
                .iter()
                .map(|&d| Letter::new(map.darts[d].edge, !map.darts[d].is_plus))
                .collect();
            relators.push(word);
        }
        let class = map.classify();
        let expected_rank = (1 - class.euler_char).max(0) as usize
            + if class.is_closed() { 1 } else { 0 };
        let kind = if class.is_closed() {
            if interior_vertices == 1
                && scheme.polygons.len() == 1
                && gens.len() == expected_rank
            {
                PresentationKind::Standard
            } else {
                PresentationKind::Geometric
            }
        } else if interior_vertices == 0
            && scheme.polygons.len() == 1
            && gens.len() == expected_rank
        {
            PresentationKind::Standard
        } else {
            PresentationKind::Geometric
        };
        // letters in words use scheme edge ids; remap relators to generator
        // indices is unnecessary because generator_edges[i] stores the map
        Ok(Presentation {
            generator_names: gens.iter().map(|&e| scheme.label(e).to_string()).collect(),
            generator_edges: gens,
            relators,
            kind,
        })
    }

    pub fn rank(&self) -> usize {
        self.generator_edges.len()
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// Generator index of an edge id, if it is a generator.
    pub fn gen_index(&self, edge: usize) -> Option<usize> {
        self.generator_edges.iter().position(|&e| e == edge)
    }

    /// Exponent vector indexed by generator position.
    pub fn exponents(&self, w: &[Letter]) -> Vec<i64> {
        let max_edge = self.generator_edges.iter().copied().max().unwrap_or(0);
        let by_edge = exponent_vector(w, max_edge + 1);
        self.generator_edges.iter().map(|&e| by_edge[e]).collect()
    }

    fn torus_like(&self) -> bool {
        self.relators.len() == 1
            && self.rank() == 2
            && self.relators[0].len() == 4
            && self.exponents(&self.relators[0]).iter().all(|&x| x == 0)
    }

    /// One Dehn step: replace a cyclic subword longer than half a relator by
    /// the inverse of its complement. Returns None when no step applies.
    fn dehn_step(&self, w: &[Letter]) -> Option<Word> {
        for r in &self.relators {
            let l = r.len();
            if l < 2 {
                continue;
            }
            let mut forms = Vec::new();
            for k in 0..l {
                forms.push(rotate(r, k));
                forms.push(rotate(&inverse_word(r), k));
            }
            for form in &forms {
                for cut in (l / 2 + 1)..l {
                    let u = &form[..cut];
                    let v = &form[cut..];
                    if u.len() > w.len() {
                        continue;
                    }
                    // search u as a cyclic subword of w
                    'pos: for s in 0..w.len() {
                        for (i, &lu) in u.iter().enumerate() {
                            if w[(s + i) % w.len()] != lu {
                                continue 'pos;
                            }
                        }
                        // replace: rotate w so the match is a prefix
                        let rw = rotate(w, s);
                        let mut out = inverse_word(v);
                        out.extend_from_slice(&rw[u.len()..]);
                        return Some(cyclic_reduce(&out));
                    }
                }
            }
        }
        None
    }

    /// Cyclic word shortening: free reduction plus Dehn replacement until no
    /// move shortens the word. Exact geodesic length for the standard
    /// presentations (abelian normal form on the torus).
    pub fn shorten_cyclic(&self, w: &[Letter]) -> Word {
        let mut cur = cyclic_reduce(w);
        if self.torus_like() {
            let e = self.exponents(&cur);
            let mut out = Word::new();
            let ga = self.generator_edges[0];
            let gb = self.generator_edges[1];
            for _ in 0..e[0].abs() {
                out.push(Letter::new(ga, e[0] < 0));
            }
            for _ in 0..e[1].abs() {
                out.push(Letter::new(gb, e[1] < 0));
            }
            return out;
        }
        loop {
            match self.dehn_step(&cur) {
                Some(next) if next.len() < cur.len() => cur = next,
                _ => return cur,
            }
        }
    }

    /// Exact-half relator exchanges of a cyclically reduced word; used to
    /// saturate the conjugacy class at fixed length.
    fn half_swaps(&self, w: &[Letter]) -> Vec<Word> {
        let mut out = Vec::new();
        for r in &self.relators {
            let l = r.len();
            if l % 2 != 0 {
                continue;
            }
            let half = l / 2;
            if half > w.len() {
                continue;
            }
            let mut forms = Vec::new();
            for k in 0..l {
                forms.push(rotate(r, k));
                forms.push(rotate(&inverse_word(r), k));
            }
            for form in &forms {
                let u = &form[..half];
                let v = &form[half..];
                'pos: for s in 0..w.len() {
                    for (i, &lu) in u.iter().enumerate() {
                        if w[(s + i) % w.len()] != lu {
                            continue 'pos;
                        }
                    }
                    let rw = rotate(w, s);
                    let mut cand = inverse_word(v);
                    cand.extend_from_slice(&rw[half..]);
                    let cand = cyclic_reduce(&cand);
                    if cand.len() == w.len() {
                        out.push(cand);
                    }
                }
            }
        }
        out
    }

    /// Decide conjugacy (free homotopy of the oriented classes).
    pub fn conjugate(&self, w1: &[Letter], w2: &[Letter]) -> bool {
        if self.is_free() {
            return canonical_rotation(&cyclic_reduce(w1)) == canonical_rotation(&cyclic_reduce(w2));
        }
        if self.torus_like() {
            return self.exponents(w1) == self.exponents(w2);
        }
        let a = self.shorten_cyclic(w1);
        let b = self.shorten_cyclic(w2);
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        // saturate a's class at fixed length through half swaps
        let target = canonical_rotation(&b);
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut queue = vec![canonical_rotation(&a)];
        seen.insert(queue[0].clone());
        let cap = 20_000usize;
        while let Some(cur) = queue.pop() {
            if cur == target {
                return true;
            }
            if seen.len() > cap {
                break;
            }
            for next in self.half_swaps(&cur) {
                let c = canonical_rotation(&next);
                if seen.insert(c.clone()) {
                    queue.push(c);
                }
            }
        }
        seen.contains(&target)
    }

    /// Evaluate the word in the abelianization and test nullity mod 2.
    pub fn null_mod2(&self, w: &[Letter]) -> bool {
        self.exponents(w).iter().all(|x| x % 2 == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{scheme_from_json, word_from_str};

    #[test]
    fn torus_dual_presentation_is_standard_commutator() {
        let s = scheme_from_json(r#"{"polygons": [["a","b","A","B"]]}"#).unwrap();
        let p = Presentation::from_scheme(&s).unwrap();
        assert_eq!(p.kind, PresentationKind::Standard);
        assert_eq!(p.rank(), 2);
        assert_eq!(p.relators.len(), 1);
        let r = &p.relators[0];
        assert_eq!(r.len(), 4);
        assert!(p.exponents(r).iter().all(|&x| x == 0));
    }

    #[test]
    fn genus2_standard_one_relator() {
        let s = scheme_from_json(r#"{"polygons": [["a","b","A","B","c","d","C","D"]]}"#).unwrap();
        let p = Presentation::from_scheme(&s).unwrap();
        assert_eq!(p.kind, PresentationKind::Standard);
        assert_eq!(p.rank(), 4);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0].len(), 8);
    }

    #[test]
    fn bounded_scheme_is_free() {
        let s = scheme_from_json(r#"{"polygons": [["a","c","A","d"]], "boundary": ["c","d"]}"#)
            .unwrap();
        let p = Presentation::from_scheme(&s).unwrap();
        assert!(p.is_free());
        assert_eq!(p.rank(), 1);
        assert_eq!(p.kind, PresentationKind::Standard);
    }

    #[test]
    fn torus_shortening_gives_abelian_form() {
        let s = scheme_from_json(r#"{"polygons": [["a","b","A","B"]]}"#).unwrap();
        let p = Presentation::from_scheme(&s).unwrap();
        let w = word_from_str(&s, "abAB").unwrap();
        assert!(p.shorten_cyclic(&w).is_empty());
        let w2 = word_from_str(&s, "abA").unwrap();
        let short = p.shorten_cyclic(&w2);
        assert_eq!(short.len(), 1);
        let w3 = word_from_str(&s, "aBab").unwrap();
        assert_eq!(p.shorten_cyclic(&w3).len(), 2);
    }

    #[test]
    fn torus_conjugacy_by_exponents() {
        let s = scheme_from_json(r#"{"polygons": [["a","b","A","B"]]}"#).unwrap();
        let p = Presentation::from_scheme(&s).unwrap();
        let w1 = word_from_str(&s, "ab").unwrap();
        let w2 = word_from_str(&s, "ba").unwrap();
        assert!(p.conjugate(&w1, &w2));
        let w3 = word_from_str(&s, "aab").unwrap();
        assert!(!p.conjugate(&w1, &w3));
    }

    #[test]
    fn genus2_relator_is_trivial() {
        let s = scheme_from_json(r#"{"polygons": [["a","b","A","B","c","d","C","D"]]}"#).unwrap();
        let p = Presentation::from_scheme(&s).unwrap();
        let r = p.relators[0].clone();
        assert!(p.shorten_cyclic(&r).is_empty());
        // conjugacy: w and its rotation-conjugates agree
        let w = word_from_str(&s, "abcd").unwrap();
        let mut conj = vec![Letter::new(s.edge_id("b").unwrap(), false)];
        conj.extend_from_slice(&w);
        conj.push(Letter::new(s.edge_id("b").unwrap(), true));
        assert!(p.conjugate(&w, &conj));
        let other = word_from_str(&s, "abdc").unwrap();
        assert!(!p.conjugate(&w, &other));
    }
}
