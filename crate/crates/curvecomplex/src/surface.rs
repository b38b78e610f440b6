//! Surfaces as polygon gluing schemes and rotation-system maps.
//!
//! A [`Scheme`] is a disjoint union of polygons whose sides carry signed edge
//! labels; pairing the two occurrences of a label glues the polygons into a
//! compact surface, and labels listed as boundary stay unglued. A [`CombMap`]
//! is the derived dart structure (edge involution + vertex rotation); all
//! topological bookkeeping (Euler characteristic, genus, boundary walks,
//! cutting, regular neighborhoods) happens there.

use crate::error::SurfaceError;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub type EdgeId = usize;
pub type Dart = usize;

/// One polygon side: an edge with an orientation sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Side {
    pub edge: EdgeId,
    pub positive: bool,
}

impl Side {
    pub fn new(edge: EdgeId, positive: bool) -> Self {
        Side { edge, positive }
    }
}

/// Where a slot sits: polygon index and position along its word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlotRef {
    pub polygon: usize,
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeEnds {
    /// Interior edge: the slots carrying its + and - occurrence.
    Paired { plus: SlotRef, minus: SlotRef },
    /// Boundary edge: single occurrence.
    Boundary { slot: SlotRef, positive: bool },
}

/// Provenance of a boundary edge created by cutting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSlot {
    pub orig_edge: EdgeId,
    pub positive: bool,
}

/// A surface given as polygons with side pairings.
#[derive(Clone, Debug)]
pub struct Scheme {
    pub labels: Vec<String>,
    pub polygons: Vec<Vec<Side>>,
    pub edges: Vec<EdgeEnds>,
    /// For edges produced by cutting: which side of which original edge.
    pub cut_provenance: HashMap<EdgeId, CutSlot>,
}

/// Classification data of a compact orientable surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub euler_char: i64,
    pub genus: u32,
    pub boundary_count: u32,
    pub orientable: bool,
}

impl SurfaceClass {
    pub fn is_disc(&self) -> bool {
        self.euler_char == 1 && self.genus == 0 && self.boundary_count == 1
    }
    pub fn is_annulus(&self) -> bool {
        self.euler_char == 0 && self.genus == 0 && self.boundary_count == 2
    }
    pub fn is_planar(&self) -> bool {
        self.genus == 0
    }
    pub fn is_closed(&self) -> bool {
        self.boundary_count == 0
    }
}

/// Edge role in a refined complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Base,
    Curve,
}

#[derive(Clone, Debug)]
pub struct DartInfo {
    pub edge: EdgeId,
    /// True for the dart that carries the + occurrence of the edge.
    pub is_plus: bool,
    /// True for hole darts (the face through them walks a boundary circle).
    pub hole: bool,
}

/// Rotation-system map: fixed-point-free involution `opp` plus vertex
/// rotation `next` (counterclockwise). Faces are the orbits of
/// `next^-1 . opp`; hole faces are the boundary walks.
#[derive(Clone, Debug)]
pub struct CombMap {
    pub opp: Vec<Dart>,
    pub next: Vec<Dart>,
    pub prev: Vec<Dart>,
    pub darts: Vec<DartInfo>,
    pub n_edges: usize,
    vertices: Vec<Vec<Dart>>,
    vertex_of: Vec<usize>,
    faces: Vec<Vec<Dart>>,
    face_of: Vec<usize>,
}

fn orbits(perm: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    let mut index = vec![usize::MAX; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            index[x] = cycles.len();
            cyc.push(x);
            x = perm[x];
        }
        cycles.push(cyc);
    }
    (cycles, index)
}

impl CombMap {
    /// Assemble and validate a map from raw permutations.
    pub fn from_parts(
        opp: Vec<Dart>,
        next: Vec<Dart>,
        darts: Vec<DartInfo>,
        n_edges: usize,
    ) -> Result<Self, SurfaceError> {
        let n = opp.len();
        if next.len() != n || darts.len() != n {
            return Err(SurfaceError::DanglingDart);
        }
        let mut seen_next = vec![false; n];
        for d in 0..n {
            if opp[d] >= n || next[d] >= n {
                return Err(SurfaceError::DanglingDart);
            }
            if opp[d] == d {
                return Err(SurfaceError::NonInvolutive);
            }
            if opp[opp[d]] != d {
                return Err(SurfaceError::NonInvolutive);
            }
            if seen_next[next[d]] {
                return Err(SurfaceError::DanglingDart);
            }
            seen_next[next[d]] = true;
        }
        let mut prev = vec![0; n];
        for d in 0..n {
            prev[next[d]] = d;
        }
        let (vertices, vertex_of) = orbits(&next);
        // face permutation: d -> prev[opp[d]]
        let face_perm: Vec<usize> = (0..n).map(|d| prev[opp[d]]).collect();
        let (faces, face_of) = orbits(&face_perm);
        let m = CombMap { opp, next, prev, darts, n_edges, vertices, vertex_of, faces, face_of };
        if n > 0 && !m.connected() {
            return Err(SurfaceError::DisconnectedComplex);
        }
        Ok(m)
    }

    fn connected(&self) -> bool {
        let n = self.opp.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for &e in &[self.opp[d], self.next[d]] {
                if !seen[e] {
                    seen[e] = true;
                    count += 1;
                    stack.push(e);
                }
            }
        }
        count == n
    }

    pub fn n_darts(&self) -> usize {
        self.opp.len()
    }

    pub fn vertices(&self) -> &[Vec<Dart>] {
        &self.vertices
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        self.vertex_of[d]
    }

    /// All faces (orbits of the face permutation), hole faces included.
    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d]
    }

    pub fn is_hole_face(&self, f: usize) -> bool {
        self.faces[f].iter().all(|&d| self.darts[d].hole)
    }

    pub fn face_next(&self, d: Dart) -> Dart {
        self.prev[self.opp[d]]
    }

    /// Interior faces only (polygons of the complex).
    pub fn interior_face_count(&self) -> usize {
        (0..self.faces.len()).filter(|&f| !self.is_hole_face(f)).count()
    }

    pub fn boundary_walks(&self) -> Vec<&Vec<Dart>> {
        (0..self.faces.len()).filter(|&f| self.is_hole_face(f)).map(|f| &self.faces[f]).collect()
    }

    pub fn classify(&self) -> SurfaceClass {
        let v = self.vertices.len() as i64;
        let e = self.n_edges as i64;
        let holes = self.boundary_walks().len() as i64;
        let f = self.faces.len() as i64 - holes;
        let chi = v - e + f;
        let genus = (2 - chi - holes) / 2;
        debug_assert_eq!(2 - chi - holes, 2 * genus, "odd genus count: non-orientable or bug");
        SurfaceClass {
            euler_char: chi,
            genus: genus.max(0) as u32,
            boundary_count: holes as u32,
            orientable: true,
        }
    }

    /// Darts of one edge, (plus, minus).
    pub fn edge_darts(&self, e: EdgeId) -> (Dart, Dart) {
        let mut plus = usize::MAX;
        let mut minus = usize::MAX;
        for d in 0..self.n_darts() {
            if self.darts[d].edge == e {
                if self.darts[d].is_plus {
                    plus = d;
                } else {
                    minus = d;
                }
            }
        }
        (plus, minus)
    }

    pub fn edge_is_boundary(&self, e: EdgeId) -> bool {
        self.darts.iter().any(|i| i.edge == e && i.hole)
    }

    /// Degree of a vertex counting interior edge ends only.
    pub fn interior_degree(&self, v: usize) -> usize {
        self.vertices[v].iter().filter(|&&d| !self.darts[d].hole && !self.is_boundary_dart(d)).count()
    }

    fn is_boundary_dart(&self, d: Dart) -> bool {
        self.darts[d].hole || self.darts[self.opp[d]].hole
    }

    /// Class of the regular neighborhood of a connected interior subgraph,
    /// read off the ribbon structure that the rotation induces.
    pub fn neighborhood_type(&self, sub: &[EdgeId]) -> SurfaceClass {
        use std::collections::HashSet;
        let set: HashSet<EdgeId> = sub.iter().copied().collect();
        let sub_darts: Vec<Dart> =
            (0..self.n_darts()).filter(|&d| set.contains(&self.darts[d].edge)).collect();
        let in_sub = |d: Dart| set.contains(&self.darts[d].edge);
        // rotation restricted to sub darts
        let mut next_sub: HashMap<Dart, Dart> = HashMap::new();
        for &d in &sub_darts {
            let mut x = self.next[d];
            while !in_sub(x) {
                x = self.next[x];
            }
            next_sub.insert(d, x);
        }
        // vertices of the subgraph
        let mut seen: HashSet<Dart> = HashSet::new();
        let mut v_count = 0usize;
        for &d in &sub_darts {
            if seen.contains(&d) {
                continue;
            }
            v_count += 1;
            let mut x = d;
            loop {
                seen.insert(x);
                x = next_sub[&x];
                if x == d {
                    break;
                }
            }
        }
        // ribbon boundary circles: orbits of d -> prev_sub[opp[d]]
        let mut prev_sub: HashMap<Dart, Dart> = HashMap::new();
        for (&d, &nd) in &next_sub {
            prev_sub.insert(nd, d);
        }
        let mut seen2: HashSet<Dart> = HashSet::new();
        let mut circles = 0usize;
        for &d in &sub_darts {
            if seen2.contains(&d) {
                continue;
            }
            circles += 1;
            let mut x = d;
            loop {
                seen2.insert(x);
                x = prev_sub[&self.opp[x]];
                if x == d {
                    break;
                }
            }
        }
        let chi = v_count as i64 - sub.len() as i64;
        let genus = (2 - chi - circles as i64) / 2;
        SurfaceClass {
            euler_char: chi,
            genus: genus.max(0) as u32,
            boundary_count: circles as u32,
            orientable: true,
        }
    }
}

impl Scheme {
    pub fn new(
        labels: Vec<String>,
        polygons: Vec<Vec<Side>>,
        boundary_edges: &[EdgeId],
    ) -> Result<Self, SurfaceError> {
        let n_edges = labels.len();
        let mut occurrences: Vec<Vec<(SlotRef, bool)>> = vec![Vec::new(); n_edges];
        for (p, poly) in polygons.iter().enumerate() {
            for (k, side) in poly.iter().enumerate() {
                if side.edge >= n_edges {
                    return Err(SurfaceError::UnknownLabel(format!("edge #{}", side.edge)));
                }
                occurrences[side.edge].push((SlotRef { polygon: p, pos: k }, side.positive));
            }
        }
        let boundary: std::collections::HashSet<EdgeId> = boundary_edges.iter().copied().collect();
        let mut edges = Vec::with_capacity(n_edges);
        for (e, occ) in occurrences.iter().enumerate() {
            match occ.len() {
                1 => {
                    if !boundary.contains(&e) {
                        return Err(SurfaceError::UnpairedLabel(labels[e].clone()));
                    }
                    edges.push(EdgeEnds::Boundary { slot: occ[0].0, positive: occ[0].1 });
                }
                2 => {
                    if boundary.contains(&e) {
                        return Err(SurfaceError::BoundaryLabelPaired(labels[e].clone()));
                    }
                    let (a, b) = (occ[0], occ[1]);
                    if a.1 == b.1 {
                        // needs a polygon flip to orient; handled by caller via orient()
                        return Err(SurfaceError::NonOrientable(labels[e].clone()));
                    }
                    let (plus, minus) = if a.1 { (a.0, b.0) } else { (b.0, a.0) };
                    edges.push(EdgeEnds::Paired { plus, minus });
                }
                0 => return Err(SurfaceError::UnknownLabel(labels[e].clone())),
                _ => return Err(SurfaceError::LabelUsedTooOften(labels[e].clone())),
            }
        }
        Ok(Scheme { labels, polygons, edges, cut_provenance: HashMap::new() })
    }

    /// Build a scheme, flipping polygons as needed so every pairing joins a +
    /// occurrence to a - occurrence. Fails if no consistent orientation exists.
    pub fn new_oriented(
        labels: Vec<String>,
        mut polygons: Vec<Vec<Side>>,
        boundary_edges: &[EdgeId],
    ) -> Result<Self, SurfaceError> {
        // 2-color polygons: a same-sign pairing wants opposite colors, an
        // opposite-sign pairing wants equal colors.
        let np = polygons.len();
        let mut occ: HashMap<EdgeId, Vec<(usize, bool)>> = HashMap::new();
        for (p, poly) in polygons.iter().enumerate() {
            for side in poly {
                occ.entry(side.edge).or_default().push((p, side.positive));
            }
        }
        // constraints: (p, q, must_differ)
        let mut constraints: Vec<(usize, usize, bool)> = Vec::new();
        for (e, v) in &occ {
            if v.len() == 2 {
                let must_differ = v[0].1 == v[1].1;
                if v[0].0 == v[1].0 {
                    if must_differ {
                        return Err(SurfaceError::NonOrientable(labels[*e].clone()));
                    }
                    continue;
                }
                constraints.push((v[0].0, v[1].0, must_differ));
            }
        }
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); np];
        for &(p, q, d) in &constraints {
            adj[p].push((q, d));
            adj[q].push((p, d));
        }
        let mut color: Vec<Option<bool>> = vec![None; np];
        for start in 0..np {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut stack = vec![start];
            while let Some(p) = stack.pop() {
                let cp = color[p].unwrap();
                for &(q, differ) in &adj[p] {
                    let want = cp ^ differ;
                    match color[q] {
                        None => {
                            color[q] = Some(want);
                            stack.push(q);
                        }
                        Some(c) if c != want => {
                            return Err(SurfaceError::NonOrientable(String::new()));
                        }
                        _ => {}
                    }
                }
            }
        }
        for (p, poly) in polygons.iter_mut().enumerate() {
            if color[p] == Some(true) {
                poly.reverse();
                for s in poly.iter_mut() {
                    s.positive = !s.positive;
                }
            }
        }
        Scheme::new(labels, polygons, boundary_edges)
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, e: EdgeId) -> &str {
        &self.labels[e]
    }

    pub fn edge_id(&self, label: &str) -> Option<EdgeId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_boundary_edge(&self, e: EdgeId) -> bool {
        matches!(self.edges[e], EdgeEnds::Boundary { .. })
    }

    pub fn paired_edges(&self) -> Vec<EdgeId> {
        (0..self.n_edges()).filter(|&e| !self.is_boundary_edge(e)).collect()
    }

    pub fn boundary_edges(&self) -> Vec<EdgeId> {
        (0..self.n_edges()).filter(|&e| self.is_boundary_edge(e)).collect()
    }

    pub fn n_slots(&self) -> usize {
        self.polygons.iter().map(|p| p.len()).sum()
    }

    pub fn slot_dart(&self, s: SlotRef) -> Dart {
        let mut acc = 0usize;
        for (p, poly) in self.polygons.iter().enumerate() {
            if p == s.polygon {
                return acc + s.pos;
            }
            acc += poly.len();
        }
        unreachable!("bad slot");
    }

    /// Derive the dart structure.
    pub fn to_map(&self) -> Result<CombMap, SurfaceError> {
        let n_slots = self.n_slots();
        let boundary: Vec<EdgeId> = self.boundary_edges();
        let n_holes = boundary.len();
        let n = n_slots + n_holes;
        if n == 0 {
            return Err(SurfaceError::EmptyScheme);
        }
        let hole_dart: HashMap<EdgeId, Dart> =
            boundary.iter().enumerate().map(|(i, &e)| (e, n_slots + i)).collect();
        let mut opp = vec![usize::MAX; n];
        let mut darts = vec![
            DartInfo { edge: usize::MAX, is_plus: false, hole: false };
            n
        ];
        for (e, ends) in self.edges.iter().enumerate() {
            match ends {
                EdgeEnds::Paired { plus, minus } => {
                    let dp = self.slot_dart(*plus);
                    let dm = self.slot_dart(*minus);
                    opp[dp] = dm;
                    opp[dm] = dp;
                    darts[dp] = DartInfo { edge: e, is_plus: true, hole: false };
                    darts[dm] = DartInfo { edge: e, is_plus: false, hole: false };
                }
                EdgeEnds::Boundary { slot, positive } => {
                    let ds = self.slot_dart(*slot);
                    let h = hole_dart[&e];
                    opp[ds] = h;
                    opp[h] = ds;
                    darts[ds] = DartInfo { edge: e, is_plus: *positive, hole: false };
                    darts[h] = DartInfo { edge: e, is_plus: !*positive, hole: true };
                }
            }
        }
        // rotation on polygon darts: next(d_{s_k}) = opp(d_{s_{k-1}})
        let mut next = vec![usize::MAX; n];
        for (p, poly) in self.polygons.iter().enumerate() {
            let m = poly.len();
            for k in 0..m {
                let d_k = self.slot_dart(SlotRef { polygon: p, pos: k });
                let d_prev = self.slot_dart(SlotRef { polygon: p, pos: (k + m - 1) % m });
                next[d_k] = opp[d_prev];
            }
        }
        // rotation on hole darts: walk forward to the next free out-dart
        for &e in &boundary {
            let h = hole_dart[&e];
            let slot = match self.edges[e] {
                EdgeEnds::Boundary { slot, .. } => slot,
                _ => unreachable!(),
            };
            let mut p = slot.polygon;
            let mut k = (slot.pos + 1) % self.polygons[p].len();
            let mut guard = 0usize;
            loop {
                guard += 1;
                if guard > n_slots + 2 {
                    return Err(SurfaceError::DanglingDart);
                }
                let side = self.polygons[p][k];
                match self.edges[side.edge] {
                    EdgeEnds::Boundary { .. } => {
                        next[h] = self.slot_dart(SlotRef { polygon: p, pos: k });
                        break;
                    }
                    EdgeEnds::Paired { plus, minus } => {
                        let here = SlotRef { polygon: p, pos: k };
                        let partner = if plus == here { minus } else { plus };
                        p = partner.polygon;
                        k = (partner.pos + 1) % self.polygons[p].len();
                    }
                }
            }
        }
        CombMap::from_parts(opp, next, darts, self.n_edges())
    }

    pub fn classify(&self) -> Result<SurfaceClass, SurfaceError> {
        Ok(self.to_map()?.classify())
    }

    /// Cut the surface along a set of paired edges: each cut pairing becomes
    /// two boundary edges. Returns connected pieces with provenance of every
    /// new boundary slot.
    pub fn cut_along(&self, cut: &[EdgeId]) -> Result<Vec<Scheme>, SurfaceError> {
        use std::collections::HashSet;
        let cut_set: HashSet<EdgeId> = cut.iter().copied().collect();
        for &e in cut {
            if self.is_boundary_edge(e) {
                return Err(SurfaceError::CutBoundaryEdge(self.labels[e].clone()));
            }
        }
        // New edge table: uncut edges keep ids; each cut edge e becomes two
        // boundary edges (e kept for +, new id for -).
        let mut labels = self.labels.clone();
        let mut polygons = self.polygons.clone();
        let mut provenance = self.cut_provenance.clone();
        let mut boundary: Vec<EdgeId> = self.boundary_edges();
        for &e in cut {
            let (plus, minus) = match self.edges[e] {
                EdgeEnds::Paired { plus, minus } => (plus, minus),
                _ => unreachable!(),
            };
            let minus_id = labels.len();
            labels.push(format!("{}''", self.labels[e]));
            let plus_label = format!("{}'", self.labels[e]);
            labels[e] = plus_label;
            polygons[minus.polygon][minus.pos] = Side::new(minus_id, true);
            let _ = plus;
            provenance.insert(e, CutSlot { orig_edge: e, positive: true });
            provenance.insert(minus_id, CutSlot { orig_edge: e, positive: false });
            boundary.push(e);
            boundary.push(minus_id);
        }
        // split into connected components of polygons through paired edges
        let np = polygons.len();
        let mut comp = vec![usize::MAX; np];
        let mut n_comp = 0usize;
        let cut_or_boundary = |e: EdgeId| cut_set.contains(&e) || self.is_boundary_edge(e);
        // adjacency: polygons sharing an uncut paired edge
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); np];
        for (e, ends) in self.edges.iter().enumerate() {
            if let EdgeEnds::Paired { plus, minus } = ends {
                if !cut_or_boundary(e) {
                    adj[plus.polygon].push(minus.polygon);
                    adj[minus.polygon].push(plus.polygon);
                }
            }
        }
        for start in 0..np {
            if comp[start] != usize::MAX {
                continue;
            }
            let c = n_comp;
            n_comp += 1;
            let mut stack = vec![start];
            comp[start] = c;
            while let Some(p) = stack.pop() {
                for &q in &adj[p] {
                    if comp[q] == usize::MAX {
                        comp[q] = c;
                        stack.push(q);
                    }
                }
            }
        }
        let mut pieces = Vec::new();
        for c in 0..n_comp {
            let my_polys: Vec<usize> = (0..np).filter(|&p| comp[p] == c).collect();
            // relabel edges locally, keep original label text
            let mut local_edge: HashMap<EdgeId, EdgeId> = HashMap::new();
            let mut loc_labels = Vec::new();
            let mut loc_polys = Vec::new();
            let mut loc_boundary = Vec::new();
            let mut loc_prov = HashMap::new();
            for &p in &my_polys {
                let mut poly = Vec::new();
                for side in &polygons[p] {
                    let id = *local_edge.entry(side.edge).or_insert_with(|| {
                        let id = loc_labels.len();
                        loc_labels.push(labels[side.edge].clone());
                        if boundary.contains(&side.edge) {
                            loc_boundary.push(id);
                        }
                        if let Some(cs) = provenance.get(&side.edge) {
                            loc_prov.insert(id, *cs);
                        }
                        id
                    });
                    poly.push(Side::new(id, side.positive));
                }
                loc_polys.push(poly);
            }
            let mut scheme = Scheme::new(loc_labels, loc_polys, &loc_boundary)?;
            scheme.cut_provenance = loc_prov;
            pieces.push(scheme);
        }
        Ok(pieces)
    }

    /// True iff cutting along `sub` leaves exactly one disc.
    pub fn cuts_to_single_disc(&self, sub: &[EdgeId]) -> Result<bool, SurfaceError> {
        // cutting along a subgraph = unpair its edges; the complement pieces
        // are the components of the cut complex
        let pieces = self.cut_along(sub)?;
        if pieces.len() != 1 {
            return Ok(false);
        }
        Ok(pieces[0].classify()?.euler_char == 1)
    }

    /// Glue two distinct polygons along a paired edge, deleting the pairing.
    /// The edge must join different polygons.
    pub fn merge_along(&self, e: EdgeId) -> Result<Scheme, SurfaceError> {
        let (plus, minus) = match self.edges[e] {
            EdgeEnds::Paired { plus, minus } => (plus, minus),
            _ => return Err(SurfaceError::CutBoundaryEdge(self.labels[e].clone())),
        };
        if plus.polygon == minus.polygon {
            return Err(SurfaceError::SelfGlue(self.labels[e].clone()));
        }
        let p = &self.polygons[plus.polygon];
        let q = &self.polygons[minus.polygon];
        // merged word: p up to the + slot, then q rotated to start after the
        // - slot, then the rest of p
        let mut merged = Vec::with_capacity(p.len() + q.len() - 2);
        merged.extend_from_slice(&p[..plus.pos]);
        for i in 1..q.len() {
            merged.push(q[(minus.pos + i) % q.len()]);
        }
        merged.extend_from_slice(&p[plus.pos + 1..]);
        let mut polygons: Vec<Vec<Side>> = Vec::new();
        for (i, poly) in self.polygons.iter().enumerate() {
            if i == plus.polygon {
                polygons.push(merged.clone());
            } else if i != minus.polygon {
                polygons.push(poly.clone());
            }
        }
        // drop edge e entirely; compact ids
        let mut labels = Vec::new();
        let mut old_to_new: HashMap<EdgeId, EdgeId> = HashMap::new();
        for old in 0..self.n_edges() {
            if old == e {
                continue;
            }
            old_to_new.insert(old, labels.len());
            labels.push(self.labels[old].clone());
        }
        let mut boundary = Vec::new();
        for b in self.boundary_edges() {
            boundary.push(old_to_new[&b]);
        }
        for poly in polygons.iter_mut() {
            for side in poly.iter_mut() {
                side.edge = old_to_new[&side.edge];
            }
        }
        let mut prov = HashMap::new();
        for (old, cs) in &self.cut_provenance {
            if let Some(&new) = old_to_new.get(old) {
                prov.insert(new, *cs);
            }
        }
        let mut s = Scheme::new(labels, polygons, &boundary)?;
        s.cut_provenance = prov;
        Ok(s)
    }

    /// Repeatedly glue polygons together until one remains; the glued-away
    /// pairings are removed from the scheme. `avoid` edges are kept.
    pub fn merge_to_single_polygon(&self, avoid: &[EdgeId]) -> Result<(Scheme, Vec<String>), SurfaceError> {
        let mut cur = self.clone();
        let mut removed = Vec::new();
        'outer: loop {
            if cur.polygons.len() <= 1 {
                return Ok((cur, removed));
            }
            let avoid_labels: Vec<&str> = avoid
                .iter()
                .filter_map(|&e| self.labels.get(e).map(|s| s.as_str()))
                .collect();
            for e in cur.paired_edges() {
                if avoid_labels.contains(&cur.labels[e].as_str()) {
                    continue;
                }
                if let EdgeEnds::Paired { plus, minus } = cur.edges[e] {
                    if plus.polygon != minus.polygon {
                        removed.push(cur.labels[e].clone());
                        cur = cur.merge_along(e)?;
                        continue 'outer;
                    }
                }
            }
            return Err(SurfaceError::DisconnectedComplex);
        }
    }
}

/// Build a scheme back from a map: interior faces become the polygons.
/// The face permutation walks a polygon in word order, so the orbit is the
/// polygon word up to rotation.
pub fn map_to_scheme(m: &CombMap, labels: &[String]) -> Result<Scheme, SurfaceError> {
    let mut polygons = Vec::new();
    for f in 0..m.faces().len() {
        if m.is_hole_face(f) {
            continue;
        }
        let word: Vec<Side> = m.faces()[f]
            .iter()
            .map(|&d| Side::new(m.darts[d].edge, m.darts[d].is_plus))
            .collect();
        polygons.push(word);
    }
    let boundary: Vec<EdgeId> = (0..m.n_edges).filter(|&e| m.edge_is_boundary(e)).collect();
    Scheme::new(labels.to_vec(), polygons, &boundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::scheme_from_json;

    #[test]
    fn torus_square() {
        let s = scheme_from_json(r#"{"polygons": [["a","b","A","B"]]}"#).unwrap();
        let c = s.classify().unwrap();
        assert_eq!(c, SurfaceClass { euler_char: 0, genus: 1, boundary_count: 0, orientable: true });
        let m = s.to_map().unwrap();
        assert_eq!(m.vertices().len(), 1);
        assert_eq!(m.n_edges, 2);
        assert_eq!(m.interior_face_count(), 1);
    }

    #[test]
    fn genus_two_octagon() {
        let s = scheme_from_json(r#"{"polygons": [["a","b","A","B","c","d","C","D"]]}"#).unwrap();
        let c = s.classify().unwrap();
        assert_eq!(c.euler_char, -2);
        assert_eq!(c.genus, 2);
        assert_eq!(c.boundary_count, 0);
    }

    #[test]
    fn annulus_square() {
        let s = scheme_from_json(r#"{"polygons": [["a","c","A","d"]], "boundary": ["c","d"]}"#)
            .unwrap();
        let c = s.classify().unwrap();
        assert!(c.is_annulus(), "{c:?}");
    }

    #[test]
    fn pentagon_one_boundary_genus_one() {
        let s =
            scheme_from_json(r#"{"polygons": [["a","b","A","B","c"]], "boundary": ["c"]}"#).unwrap();
        let c = s.classify().unwrap();
        assert_eq!((c.euler_char, c.genus, c.boundary_count), (-1, 1, 1));
    }

    #[test]
    fn involution_fixing_dart_rejected() {
        // a label used once and not declared boundary
        let err = scheme_from_json(r#"{"polygons": [["a","b","A"]]}"#).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains('b'), "{msg}");
    }

    #[test]
    fn cut_torus_along_loop_gives_annulus() {
        let s = scheme_from_json(r#"{"polygons": [["a","b","A","B"]]}"#).unwrap();
        let a = s.edge_id("a").unwrap();
        let pieces = s.cut_along(&[a]).unwrap();
        assert_eq!(pieces.len(), 1);
        assert!(pieces[0].classify().unwrap().is_annulus());
        // provenance for both new boundary edges
        assert_eq!(pieces[0].cut_provenance.len(), 2);
    }

    #[test]
    fn cut_genus2_separating_via_two_loops() {
        // both standard cut loops (non-separating): piece is genus-0 with 2 boundaries after one, etc.
        let s = scheme_from_json(r#"{"polygons": [["a","b","A","B","c","d","C","D"]]}"#).unwrap();
        let a = s.edge_id("a").unwrap();
        let pieces = s.cut_along(&[a]).unwrap();
        assert_eq!(pieces.len(), 1);
        let c = pieces[0].classify().unwrap();
        assert_eq!(c.euler_char, -2);
        assert_eq!(c.boundary_count, 2);
        assert_eq!(c.genus, 1);
    }

    #[test]
    fn disc_cut_along_chord() {
        let s = scheme_from_json(r#"{"polygons": [["u","e","v","E"]], "boundary": ["u","v"]}"#)
            .unwrap();
        assert!(s.classify().unwrap().is_disc());
        let e = s.edge_id("e").unwrap();
        let pieces = s.cut_along(&[e]).unwrap();
        assert_eq!(pieces.len(), 2);
        for p in &pieces {
            assert!(p.classify().unwrap().is_disc());
            assert_eq!(p.cut_provenance.len(), 1);
        }
        let signs: Vec<bool> = pieces
            .iter()
            .flat_map(|p| p.cut_provenance.values().map(|cs| cs.positive))
            .collect();
        assert!(signs.contains(&true) && signs.contains(&false));
    }

    #[test]
    fn cuts_to_single_disc_checks() {
        let s = scheme_from_json(r#"{"polygons": [["a","b","A","B"]]}"#).unwrap();
        let a = s.edge_id("a").unwrap();
        let b = s.edge_id("b").unwrap();
        assert!(s.cuts_to_single_disc(&[a, b]).unwrap());
        assert!(!s.cuts_to_single_disc(&[a]).unwrap());
        let g2 = scheme_from_json(r#"{"polygons": [["a","b","A","B","c","d","C","D"]]}"#).unwrap();
        let all: Vec<EdgeId> = g2.paired_edges();
        assert!(g2.cuts_to_single_disc(&all).unwrap());
    }

    #[test]
    fn neighborhood_of_loops_on_torus() {
        let s = scheme_from_json(r#"{"polygons": [["a","b","A","B"]]}"#).unwrap();
        let m = s.to_map().unwrap();
        let a = s.edge_id("a").unwrap();
        let b = s.edge_id("b").unwrap();
        let na = m.neighborhood_type(&[a]);
        assert!(na.is_annulus());
        let nab = m.neighborhood_type(&[a, b]);
        assert_eq!((nab.genus, nab.boundary_count), (1, 1));
    }
}
