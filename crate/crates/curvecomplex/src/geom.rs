//! Exact arithmetic for chord arrangements in a convex polygon.
//!
//! Boundary sites of a disc face are placed on an integer parabola (convex
//! position), chords are straight segments, and all crossing comparisons are
//! exact in i128. Degenerate layouts (three concurrent chords) are detected
//! and resolved by re-spacing the sites with a deterministic perturbation.

use std::cmp::Ordering;

#[derive(Clone, Debug)]
pub struct ConvexLayout {
    pts: Vec<(i128, i128)>,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

impl ConvexLayout {
    /// `n` sites in convex position in circular order; `attempt > 0` perturbs
    /// the spacing deterministically.
    pub fn new(n: usize, attempt: u64) -> Self {
        let mut pts = Vec::with_capacity(n);
        for i in 0..n {
            let jitter = if attempt == 0 {
                0
            } else {
                (splitmix(attempt.wrapping_mul(0x51ab_3c91).wrapping_add(i as u64)) % 31) as i128
            };
            let x = (i as i128) * 64 + jitter;
            pts.push((x, x * x));
        }
        ConvexLayout { pts }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }
}

/// Chords `a` and `b` (site index pairs) cross iff their endpoints interleave
/// on the circle. Pure index arithmetic; sites must be distinct.
pub fn linked(a: (usize, usize), b: (usize, usize)) -> bool {
    let inside = |x: usize, lo: usize, hi: usize| {
        // x strictly inside the arc lo..hi (cyclic, exclusive)
        if lo < hi {
            lo < x && x < hi
        } else {
            x > lo || x < hi
        }
    };
    inside(b.0, a.0, a.1) != inside(b.1, a.0, a.1)
}

fn sub(p: (i128, i128), q: (i128, i128)) -> (i128, i128) {
    (p.0 - q.0, p.1 - q.1)
}

fn cross(p: (i128, i128), q: (i128, i128)) -> i128 {
    p.0 * q.1 - p.1 * q.0
}

/// Parameter of the crossing of chord `c` with chord `d` along `c`, as an
/// exact fraction (num, den) with den > 0. Chords must be linked.
fn cross_param(layout: &ConvexLayout, c: (usize, usize), d: (usize, usize)) -> (i128, i128) {
    let p1 = layout.pts[c.0];
    let p2 = layout.pts[c.1];
    let p3 = layout.pts[d.0];
    let p4 = layout.pts[d.1];
    let r = sub(p2, p1);
    let s = sub(p4, p3);
    let den = cross(r, s);
    let num = cross(sub(p3, p1), s);
    if den < 0 {
        (-num, -den)
    } else {
        (num, den)
    }
}

/// Order of the crossings `c^d` and `c^e` along chord `c` (from c.0 to c.1).
/// `Ordering::Equal` signals a concurrency degeneracy.
pub fn param_cmp(
    layout: &ConvexLayout,
    c: (usize, usize),
    d: (usize, usize),
    e: (usize, usize),
) -> Ordering {
    let (n1, d1) = cross_param(layout, c, d);
    let (n2, d2) = cross_param(layout, c, e);
    (n1 * d2).cmp(&(n2 * d1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linking() {
        assert!(linked((0, 2), (1, 3)));
        assert!(!linked((0, 1), (2, 3)));
        assert!(!linked((0, 3), (1, 2)));
        assert!(linked((3, 1), (0, 2)));
    }

    #[test]
    fn crossing_order_along_chord() {
        // 6 sites; chord (0,3) crossed by (1,5) and (2,4): along 0->3 the
        // crossing with (1,5) comes first
        let layout = ConvexLayout::new(6, 0);
        assert!(linked((0, 3), (1, 5)));
        assert!(linked((0, 3), (2, 4)));
        assert_eq!(param_cmp(&layout, (0, 3), (1, 5), (2, 4)), Ordering::Less);
        assert_eq!(param_cmp(&layout, (3, 0), (2, 4), (1, 5)), Ordering::Less);
    }
}
