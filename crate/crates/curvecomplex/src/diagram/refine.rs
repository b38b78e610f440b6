//! The refined complex of an arrangement: base edges subdivided at the
//! crossing points, strands subdivided at their mutual crossings, everything
//! reassembled into one polygon scheme whose map answers face/region queries.

use super::{Arrangement, Chord, Gap, Mark, Site};
use crate::error::DiagramError;
use crate::geom::{linked, param_cmp, ConvexLayout};
use crate::surface::{map_to_scheme, CombMap, EdgeEnds, EdgeKind, Scheme, Side};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

/// Identity of a refined edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefEdge {
    /// Piece `idx` of original edge `edge` (0 = before the first mark,
    /// counted along the + direction).
    Base { edge: usize, piece: usize },
    /// Segment `seg` of the chord in `gap` (0 = at the chord start).
    Seg { gap: Gap, seg: usize },
}

#[derive(Clone, Debug)]
pub struct CrossingInfo {
    /// Original polygon containing the crossing.
    pub polygon: usize,
    pub a: Gap,
    pub b: Gap,
    /// Position of the crossing along each chord (index into its crossing list).
    pub a_along: usize,
    pub b_along: usize,
    /// Vertex id in the refined map.
    pub vertex: usize,
}

#[derive(Clone, Debug)]
pub struct Refined {
    pub scheme: Scheme,
    pub map: CombMap,
    /// Per refined edge: kind and identity.
    pub kinds: Vec<EdgeKind>,
    pub ids: Vec<RefEdge>,
    pub crossings: Vec<CrossingInfo>,
    /// Refined vertex of every mark.
    pub mark_vertex: HashMap<Mark, usize>,
    /// Crossing vertices, indexed by refined vertex id.
    pub crossing_at_vertex: HashMap<usize, usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum LNode {
    Site(usize),
    Cross(usize),
}

#[derive(Clone, Debug)]
enum LEdgeKind {
    Arc { side_pos: usize, piece_along_plus: usize },
    Seg { gap: Gap, seg: usize },
}

#[derive(Clone, Debug)]
struct LEdge {
    a: LNode,
    b: LNode,
    kind: LEdgeKind,
}

struct FaceBuild {
    edges: Vec<LEdge>,
    /// sub-faces as dart lists (dart 2e = a->b, 2e+1 = b->a)
    inner_faces: Vec<Vec<usize>>,
    crossings: Vec<(Gap, Gap, usize, usize)>,
    cross_count: usize,
}

fn build_face(
    arr: &Arrangement,
    polygon: usize,
    sites: &[Site],
    chords: &[Chord],
) -> Result<FaceBuild, DiagramError> {
    let b = sites.len();
    'attempt: for attempt in 0..64u64 {
        let layout = ConvexLayout::new(b, attempt);
        // crossings: (chord index pairs)
        let mut cross_pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..chords.len() {
            for j in (i + 1)..chords.len() {
                if linked((chords[i].a, chords[i].b), (chords[j].a, chords[j].b)) {
                    cross_pairs.push((i, j));
                }
            }
        }
        // per chord: crossings sorted along it
        let mut along: Vec<Vec<usize>> = vec![Vec::new(); chords.len()];
        for (x, &(i, j)) in cross_pairs.iter().enumerate() {
            along[i].push(x);
            along[j].push(x);
        }
        for (ci, list) in along.iter_mut().enumerate() {
            let c = (chords[ci].a, chords[ci].b);
            let mut tie = false;
            list.sort_by(|&x, &y| {
                if x == y {
                    return Ordering::Equal;
                }
                let other = |z: usize| {
                    let (i, j) = cross_pairs[z];
                    let o = if i == ci { j } else { i };
                    (chords[o].a, chords[o].b)
                };
                let ord = param_cmp(&layout, c, other(x), other(y));
                if ord == Ordering::Equal {
                    tie = true;
                }
                ord
            });
            if tie {
                continue 'attempt;
            }
        }
        // local nodes and edges
        let mut edges: Vec<LEdge> = Vec::new();
        // boundary arcs between consecutive sites
        let mut pieces_before = vec![0usize; b];
        {
            // count marks per (side) to derive piece indices along +
            for (i, s) in sites.iter().enumerate() {
                let _ = (i, s);
            }
        }
        // piece index along the + direction for the arc starting at site i
        let plus_aligned = |side_pos: usize| -> bool {
            let side = arr.scheme.polygons[polygon][side_pos];
            match arr.scheme.edges[side.edge] {
                EdgeEnds::Paired { plus, .. } => (plus.polygon, plus.pos) == (polygon, side_pos),
                EdgeEnds::Boundary { positive, .. } => positive,
            }
        };
        // marks per side in ccw order, to compute piece indices
        let mut side_mark_count: HashMap<usize, usize> = HashMap::new();
        let mut ccw_index_in_side: Vec<usize> = vec![0; b];
        {
            let mut per_side: HashMap<usize, usize> = HashMap::new();
            for (i, s) in sites.iter().enumerate() {
                if let Site::MarkOn { side_pos, .. } = s {
                    let c = per_side.entry(*side_pos).or_insert(0);
                    ccw_index_in_side[i] = *c;
                    *c += 1;
                    *side_mark_count.entry(*side_pos).or_insert(0) += 1;
                }
            }
        }
        for i in 0..b {
            let j = (i + 1) % b;
            // the arc from site i to site j lies on the side of site j if j is
            // a mark, else on the side just before corner j
            let side_pos = match sites[j] {
                Site::Corner { pos } => (pos + b_sides(arr, polygon) - 1) % b_sides(arr, polygon),
                Site::MarkOn { side_pos, .. } => side_pos,
            };
            // ccw arc index within the side: number of marks of this side
            // strictly before site j going ccw
            let ccw_arc_idx = match sites[j] {
                Site::Corner { .. } => side_mark_count.get(&side_pos).copied().unwrap_or(0),
                Site::MarkOn { .. } => ccw_index_in_side[j],
            };
            let n_marks = side_mark_count.get(&side_pos).copied().unwrap_or(0);
            let piece = if plus_aligned(side_pos) { ccw_arc_idx } else { n_marks - ccw_arc_idx };
            pieces_before[i] = piece;
            edges.push(LEdge {
                a: LNode::Site(i),
                b: LNode::Site(j),
                kind: LEdgeKind::Arc { side_pos, piece_along_plus: piece },
            });
        }
        let n_arcs = b;
        // chord segments
        let mut chord_end_dart_at_site: HashMap<usize, usize> = HashMap::new();
        let mut seg_range: Vec<(usize, usize)> = Vec::new(); // per chord: first edge id, count
        for (ci, chord) in chords.iter().enumerate() {
            let first = edges.len();
            let xs = &along[ci];
            let mut nodes: Vec<LNode> = Vec::with_capacity(xs.len() + 2);
            nodes.push(LNode::Site(chord.a));
            for &x in xs {
                nodes.push(LNode::Cross(x));
            }
            nodes.push(LNode::Site(chord.b));
            for (s, w) in nodes.windows(2).enumerate() {
                edges.push(LEdge { a: w[0], b: w[1], kind: LEdgeKind::Seg { gap: chord.gap, seg: s } });
            }
            seg_range.push((first, xs.len() + 1));
            // dart based at chord.a pointing in: first seg a->b dart
            chord_end_dart_at_site.insert(chord.a, 2 * first);
            // dart based at chord.b pointing in: last seg b->a dart
            chord_end_dart_at_site.insert(chord.b, 2 * (first + xs.len()) + 1);
        }
        // rotations
        let n_darts = 2 * edges.len();
        let mut next = vec![usize::MAX; n_darts];
        let dart_base = |eid: usize, at_a: bool| if at_a { 2 * eid } else { 2 * eid + 1 };
        // boundary sites: ccw = [fwd arc, chord?, bwd arc]
        for i in 0..b {
            let fwd = dart_base(i, true);
            let bwd = dart_base((i + b - 1) % b, false);
            let mut cyc = vec![fwd];
            if let Some(&cd) = chord_end_dart_at_site.get(&i) {
                cyc.push(cd);
            }
            cyc.push(bwd);
            for k in 0..cyc.len() {
                next[cyc[k]] = cyc[(k + 1) % cyc.len()];
            }
        }
        // crossing nodes: four rays ordered by the cyclic order of the chord
        // endpoints they point to
        for (x, &(i, j)) in cross_pairs.iter().enumerate() {
            let mut rays: Vec<(usize, usize)> = Vec::new(); // (target site, dart)
            for &ci in &[i, j] {
                let (first, _cnt) = seg_range[ci];
                let pos = along[ci].iter().position(|&y| y == x).unwrap();
                // segment pos ends at this crossing; segment pos+1 starts here
                let back = dart_base(first + pos, false); // toward chord start
                let fwdd = dart_base(first + pos + 1, true); // toward chord end
                rays.push((chords[ci].a, back));
                rays.push((chords[ci].b, fwdd));
            }
            rays.sort_by_key(|&(site, _)| site);
            for k in 0..4 {
                next[rays[k].1] = rays[(k + 1) % 4].1;
            }
        }
        let _ = pieces_before;
        // faces = orbits of d -> prev[opp[d]]
        let opp = |d: usize| d ^ 1;
        let mut prev = vec![usize::MAX; n_darts];
        for d in 0..n_darts {
            if next[d] == usize::MAX {
                return Err(DiagramError::UnknownGenerator("refine: dangling local dart".into()));
            }
            prev[next[d]] = d;
        }
        let mut face_of = vec![usize::MAX; n_darts];
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for s in 0..n_darts {
            if face_of[s] != usize::MAX {
                continue;
            }
            let mut cyc = Vec::new();
            let mut d = s;
            while face_of[d] == usize::MAX {
                face_of[d] = faces.len();
                cyc.push(d);
                d = prev[opp(d)];
            }
            faces.push(cyc);
        }
        let outer = face_of[dart_base(0, false)];
        let inner_faces: Vec<Vec<usize>> =
            faces.into_iter().enumerate().filter(|&(f, _)| f != outer).map(|(_, c)| c).collect();
        let crossings = cross_pairs
            .iter()
            .enumerate()
            .map(|(x, &(i, j))| {
                let ai = along[i].iter().position(|&y| y == x).unwrap();
                let bj = along[j].iter().position(|&y| y == x).unwrap();
                (chords[i].gap, chords[j].gap, ai, bj)
            })
            .collect();
        return Ok(FaceBuild { edges, inner_faces, crossings, cross_count: cross_pairs.len() });
    }
    Err(DiagramError::UnknownGenerator("refine: could not reach general position".into()))
}

fn b_sides(arr: &Arrangement, polygon: usize) -> usize {
    arr.scheme.polygons[polygon].len()
}

pub fn refine(arr: &Arrangement) -> Result<Refined, DiagramError> {
    let cycles = arr.face_cycles()?;
    // global interning of refined edges
    let mut labels: Vec<String> = Vec::new();
    let mut kinds: Vec<EdgeKind> = Vec::new();
    let mut ids: Vec<RefEdge> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut boundary_labels: Vec<usize> = Vec::new();
    let mut polygons: Vec<Vec<Side>> = Vec::new();
    // remember one (sub-polygon, position) whose slot dart is based at each
    // wanted vertex
    let mut cross_anchor: Vec<(usize, usize)> = Vec::new();
    let mut crossing_meta: Vec<(usize, Gap, Gap, usize, usize)> = Vec::new();
    let mut mark_anchor: BTreeMap<Mark, (usize, usize)> = BTreeMap::new();

    for fc in &cycles {
        let fb = build_face(arr, fc.polygon, &fc.sites, &fc.chords)?;
        let cross_base = crossing_meta.len();
        for &(ga, gb, ai, bi) in &fb.crossings {
            crossing_meta.push((fc.polygon, ga, gb, ai, bi));
            cross_anchor.push((usize::MAX, usize::MAX));
        }
        let mut intern = |kind: EdgeKind, id: RefEdge, is_boundary: bool| -> usize {
            let key = match &id {
                RefEdge::Base { edge, piece } => format!("b{edge}.{piece}"),
                RefEdge::Seg { gap, seg } => format!("c{}.{}.{}", gap.comp, gap.idx, seg),
            };
            *index.entry(key.clone()).or_insert_with(|| {
                labels.push(key);
                kinds.push(kind);
                ids.push(id);
                if is_boundary {
                    boundary_labels.push(labels.len() - 1);
                }
                labels.len() - 1
            })
        };
        for cyc in &fb.inner_faces {
            let fpoly = polygons.len();
            let mut word = Vec::with_capacity(cyc.len());
            for (posn, &d) in cyc.iter().enumerate() {
                let e = &fb.edges[d / 2];
                let forward = d % 2 == 0;
                let (gid, positive) = match &e.kind {
                    LEdgeKind::Arc { side_pos, piece_along_plus } => {
                        let side = arr.scheme.polygons[fc.polygon][*side_pos];
                        let plus_aligned = match arr.scheme.edges[side.edge] {
                            EdgeEnds::Paired { plus, .. } => {
                                (plus.polygon, plus.pos) == (fc.polygon, *side_pos)
                            }
                            EdgeEnds::Boundary { positive, .. } => positive,
                        };
                        let is_b = arr.scheme.is_boundary_edge(side.edge);
                        let gid = intern(
                            EdgeKind::Base,
                            RefEdge::Base { edge: side.edge, piece: *piece_along_plus },
                            is_b,
                        );
                        // dart along ccw(fwd) on a plus-aligned side runs along
                        // the + direction
                        (gid, forward == plus_aligned)
                    }
                    LEdgeKind::Seg { gap, seg } => {
                        let gid = intern(EdgeKind::Curve, RefEdge::Seg { gap: *gap, seg: *seg }, false);
                        (gid, forward)
                    }
                };
                // record anchors: dart d is based at node a (forward) / b (bwd)
                let based = if forward { &e.a } else { &e.b };
                match based {
                    LNode::Cross(x) => {
                        if cross_anchor[cross_base + x].0 == usize::MAX {
                            cross_anchor[cross_base + x] = (fpoly, posn);
                        }
                    }
                    LNode::Site(si) => {
                        if let Site::MarkOn { mark, .. } = fc.sites[*si] {
                            mark_anchor.entry(mark).or_insert((fpoly, posn));
                        }
                    }
                }
                word.push(Side::new(gid, positive));
            }
            polygons.push(word);
        }
        let _ = fb.cross_count;
    }
    let scheme = Scheme::new(labels, polygons, &boundary_labels)
        .map_err(|e| DiagramError::UnknownGenerator(format!("refined scheme: {e}")))?;
    let map = scheme.to_map().map_err(|e| DiagramError::UnknownGenerator(format!("refined map: {e}")))?;
    // sanity: refinement preserves the classification
    debug_assert_eq!(
        map.classify(),
        arr.scheme.to_map().map(|m| m.classify()).unwrap(),
        "refinement must not change the surface"
    );
    let mut crossings = Vec::new();
    let mut crossing_at_vertex = HashMap::new();
    for (x, &(polygon, a, b, ai, bi)) in crossing_meta.iter().enumerate() {
        let (p, pos) = cross_anchor[x];
        let dart = scheme.slot_dart(crate::surface::SlotRef { polygon: p, pos });
        let vertex = map.vertex_of(dart);
        crossing_at_vertex.insert(vertex, x);
        crossings.push(CrossingInfo { polygon, a, b, a_along: ai, b_along: bi, vertex });
    }
    let mut mark_vertex = HashMap::new();
    for (mark, (p, pos)) in mark_anchor {
        let dart = scheme.slot_dart(crate::surface::SlotRef { polygon: p, pos });
        mark_vertex.insert(mark, map.vertex_of(dart));
    }
    Ok(Refined { scheme, map, kinds, ids, crossings, mark_vertex, crossing_at_vertex })
}

impl Refined {
    pub fn n_edges(&self) -> usize {
        self.kinds.len()
    }

    pub fn curve_edges(&self) -> Vec<usize> {
        (0..self.n_edges()).filter(|&e| self.kinds[e] == EdgeKind::Curve).collect()
    }

    /// Convert back to a plain scheme view (for debugging).
    pub fn as_scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn seg_gap(&self, refined_edge: usize) -> Option<(Gap, usize)> {
        match self.ids[refined_edge] {
            RefEdge::Seg { gap, seg } => Some((gap, seg)),
            _ => None,
        }
    }

    pub fn base_piece(&self, refined_edge: usize) -> Option<(usize, usize)> {
        match self.ids[refined_edge] {
            RefEdge::Base { edge, piece } => Some((edge, piece)),
            _ => None,
        }
    }

    /// Crossing visits along a component, in traversal order: positions are
    /// (gap idx, index along the gap's chord, crossing id).
    pub fn crossing_visits(&self, comp: usize) -> Vec<(usize, usize, usize)> {
        let mut visits = Vec::new();
        for (x, info) in self.crossings.iter().enumerate() {
            if info.a.comp == comp {
                visits.push((info.a.idx, info.a_along, x));
            }
            if info.b.comp == comp {
                visits.push((info.b.idx, info.b_along, x));
            }
        }
        visits.sort();
        visits
    }
}

pub use super::regions::Regions;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::CurveDiagram;
    use crate::io::{scheme_from_json, word_from_str};
    use std::sync::Arc;

    #[test]
    fn refine_torus_aa() {
        let s = Arc::new(scheme_from_json(r#"{"polygons": [["a","b","A","B"]]}"#).unwrap());
        let w = word_from_str(&s, "aa").unwrap();
        let d = CurveDiagram::from_word(s.clone(), &w).unwrap();
        let r = refine(&d.arr).unwrap();
        assert_eq!(r.crossings.len(), 1);
        assert_eq!(r.map.classify().genus, 1);
        // base edge a is cut into 3 pieces by 2 marks, b stays whole
        let a = s.edge_id("a").unwrap();
        let pieces: Vec<_> = (0..r.n_edges())
            .filter(|&e| matches!(r.ids[e], RefEdge::Base { edge, .. } if edge == a))
            .collect();
        assert_eq!(pieces.len(), 3);
    }

    #[test]
    fn refine_simple_curve() {
        let s = Arc::new(scheme_from_json(r#"{"polygons": [["a","b","A","B"]]}"#).unwrap());
        let w = word_from_str(&s, "a").unwrap();
        let d = CurveDiagram::from_word(s, &w).unwrap();
        let r = refine(&d.arr).unwrap();
        assert_eq!(r.crossings.len(), 0);
        assert_eq!(r.map.classify().genus, 1);
    }
}
