//! Combinatorial 0/1/2-complexes: vertices, edges with two ends, faces with
//! a cyclic boundary of oriented side-slots. Links, degrees, Euler
//! characteristic, surface recognition and classification, subdivision moves.
//!
//! Attaching morphisms are positional: a face's cyclic slot sequence is the
//! image of its characteristic boundary, so side `t` of face `f` is the pair
//! `(f, t)` and corner `t` sits between slots `t-1` and `t`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

pub type VertexId = u32;
pub type EdgeId = u32;
pub type FaceId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Forward,
    Backward,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }
}

/// An edge with a direction: Forward runs end0 → end1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedEdge {
    pub edge: EdgeId,
    pub dir: Dir,
}

impl OrientedEdge {
    pub fn fwd(edge: EdgeId) -> Self {
        OrientedEdge {
            edge,
            dir: Dir::Forward,
        }
    }

    pub fn back(edge: EdgeId) -> Self {
        OrientedEdge {
            edge,
            dir: Dir::Backward,
        }
    }

    pub fn inverse(self) -> Self {
        OrientedEdge {
            edge: self.edge,
            dir: self.dir.flip(),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown face {0}")]
    UnknownFace(FaceId),
    #[error("face {0} has an empty boundary")]
    EmptyFace(FaceId),
    #[error("face {face} boundary breaks at slot {slot}: head {head} != tail {tail}")]
    IncompatibleSlots {
        face: FaceId,
        slot: usize,
        head: VertexId,
        tail: VertexId,
    },
    #[error("complex is not a surface")]
    NotSurface,
    #[error("complex is not connected")]
    NotConnected,
    #[error("invalid move argument: {0}")]
    BadMove(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Complex {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    faces: BTreeMap<FaceId, Vec<OrientedEdge>>,
}

impl Complex {
    pub fn new() -> Self {
        Complex::default()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, (VertexId, VertexId))> + '_ {
        self.edges.iter().map(|(&e, &ends)| (e, ends))
    }

    pub fn faces(&self) -> impl Iterator<Item = (FaceId, &[OrientedEdge])> + '_ {
        self.faces.iter().map(|(&f, b)| (f, b.as_slice()))
    }

    pub fn face_ids(&self) -> Vec<FaceId> {
        self.faces.keys().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edge_ends(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    pub fn boundary(&self, f: FaceId) -> Option<&[OrientedEdge]> {
        self.faces.get(&f).map(|b| b.as_slice())
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn fresh_vertex(&mut self) -> VertexId {
        let v = self.vertices.iter().next_back().map_or(0, |&m| m + 1);
        self.vertices.insert(v);
        v
    }

    pub fn fresh_edge_id(&self) -> EdgeId {
        self.edges.keys().next_back().map_or(0, |&m| m + 1)
    }

    pub fn fresh_face_id(&self) -> FaceId {
        self.faces.keys().next_back().map_or(0, |&m| m + 1)
    }

    pub fn add_edge(&mut self, e: EdgeId, ends: (VertexId, VertexId)) {
        assert!(self.vertices.contains(&ends.0) && self.vertices.contains(&ends.1));
        let prev = self.edges.insert(e, ends);
        assert!(prev.is_none(), "duplicate edge id {e}");
    }

    pub fn add_face(&mut self, f: FaceId, boundary: Vec<OrientedEdge>) {
        assert!(!boundary.is_empty());
        let prev = self.faces.insert(f, boundary);
        assert!(prev.is_none(), "duplicate face id {f}");
    }

    pub fn remove_face_cell(&mut self, f: FaceId) -> Option<Vec<OrientedEdge>> {
        self.faces.remove(&f)
    }

    pub fn remove_edge_cell(&mut self, e: EdgeId) {
        self.edges.remove(&e);
    }

    pub fn remove_vertex_cell(&mut self, v: VertexId) {
        self.vertices.remove(&v);
    }

    pub fn tail(&self, oe: OrientedEdge) -> VertexId {
        let (a, b) = self.edges[&oe.edge];
        match oe.dir {
            Dir::Forward => a,
            Dir::Backward => b,
        }
    }

    pub fn head(&self, oe: OrientedEdge) -> VertexId {
        self.tail(oe.inverse())
    }

    /// Structural validation of every invariant the representation carries.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for &(a, b) in self.edges.values() {
            if !self.vertices.contains(&a) {
                return Err(ComplexError::UnknownVertex(a));
            }
            if !self.vertices.contains(&b) {
                return Err(ComplexError::UnknownVertex(b));
            }
        }
        for (&f, boundary) in &self.faces {
            if boundary.is_empty() {
                return Err(ComplexError::EmptyFace(f));
            }
            for slot in boundary {
                if !self.edges.contains_key(&slot.edge) {
                    return Err(ComplexError::UnknownEdge(slot.edge));
                }
            }
            for k in 0..boundary.len() {
                let next = (k + 1) % boundary.len();
                let head = self.head(boundary[k]);
                let tail = self.tail(boundary[next]);
                if head != tail {
                    return Err(ComplexError::IncompatibleSlots {
                        face: f,
                        slot: k,
                        head,
                        tail,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Number of (edge, end) pairs attached to `v`; loops count twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .values()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// All (face, slot) pairs whose edge is `e`.
    pub fn slots_of_edge(&self, e: EdgeId) -> Vec<(FaceId, usize)> {
        let mut out = Vec::new();
        for (&f, boundary) in &self.faces {
            for (t, slot) in boundary.iter().enumerate() {
                if slot.edge == e {
                    out.push((f, t));
                }
            }
        }
        out
    }

    /// The link of `v` as a 1-complex. Link vertices are (edge, end) pairs
    /// at `v`, link edges are (face, corner) pairs at `v`; corner `t`
    /// connects the head end of slot `t-1` with the tail end of slot `t`.
    pub fn link(&self, v: VertexId) -> Result<Link, ComplexError> {
        if !self.vertices.contains(&v) {
            return Err(ComplexError::UnknownVertex(v));
        }
        let mut verts = Vec::new();
        for (&e, &(a, b)) in &self.edges {
            if a == v {
                verts.push(EdgeEnd { edge: e, end: 0 });
            }
            if b == v {
                verts.push(EdgeEnd { edge: e, end: 1 });
            }
        }
        let mut edges = Vec::new();
        for (&f, boundary) in &self.faces {
            let m = boundary.len();
            for t in 0..m {
                let prev = boundary[(t + m - 1) % m];
                let cur = boundary[t];
                if self.tail(cur) != v {
                    continue;
                }
                let a = EdgeEnd {
                    edge: prev.edge,
                    end: match prev.dir {
                        Dir::Forward => 1,
                        Dir::Backward => 0,
                    },
                };
                let b = EdgeEnd {
                    edge: cur.edge,
                    end: match cur.dir {
                        Dir::Forward => 0,
                        Dir::Backward => 1,
                    },
                };
                edges.push(LinkEdge {
                    face: f,
                    corner: t,
                    ends: (a, b),
                });
            }
        }
        Ok(Link {
            vertices: verts,
            edges,
        })
    }

    /// Connected components of the complex (vertex sets). Isolated vertices
    /// form their own components.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut uf = UnionFind::new();
        for &v in &self.vertices {
            uf.add(v as usize);
        }
        for &(a, b) in self.edges.values() {
            uf.union(a as usize, b as usize);
        }
        let mut groups: BTreeMap<usize, BTreeSet<VertexId>> = BTreeMap::new();
        for &v in &self.vertices {
            groups.entry(uf.find(v as usize)).or_default().insert(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Restriction to a vertex set (keeps edges and faces fully inside).
    pub fn restrict(&self, verts: &BTreeSet<VertexId>) -> Complex {
        let mut c = Complex::new();
        for &v in verts {
            c.add_vertex(v);
        }
        for (&e, &(a, b)) in &self.edges {
            if verts.contains(&a) && verts.contains(&b) {
                c.add_edge(e, (a, b));
            }
        }
        for (&f, boundary) in &self.faces {
            if boundary.iter().all(|s| c.edges.contains_key(&s.edge)) {
                c.add_face(f, boundary.clone());
            }
        }
        c
    }

    pub fn surface_kind(&self) -> SurfaceKind {
        if self.vertices.is_empty() {
            return SurfaceKind::NotSurface;
        }
        let mut closed = true;
        for &v in &self.vertices {
            let link = match self.link(v) {
                Ok(l) => l,
                Err(_) => return SurfaceKind::NotSurface,
            };
            match link.shape() {
                LinkShape::Circle => {}
                LinkShape::Segment => closed = false,
                LinkShape::Other => return SurfaceKind::NotSurface,
            }
        }
        if closed {
            SurfaceKind::Closed
        } else {
            SurfaceKind::WithBoundary
        }
    }

    /// Edges incident to exactly one face slot.
    pub fn boundary_edges(&self) -> Vec<EdgeId> {
        let mut count: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for boundary in self.faces.values() {
            for slot in boundary {
                *count.entry(slot.edge).or_insert(0) += 1;
            }
        }
        self.edges
            .keys()
            .copied()
            .filter(|e| count.get(e).copied().unwrap_or(0) == 1)
            .collect()
    }

    fn boundary_component_count(&self) -> usize {
        let bedges = self.boundary_edges();
        if bedges.is_empty() {
            return 0;
        }
        let bset: BTreeSet<EdgeId> = bedges.iter().copied().collect();
        let mut uf = UnionFind::new();
        for &e in &bedges {
            uf.add(e as usize);
        }
        // at any boundary vertex of a surface exactly two boundary edge-ends
        // meet, so joining boundary edges through shared vertices traces the
        // boundary circles
        for &v in &self.vertices {
            let mut ends: Vec<EdgeId> = Vec::new();
            for (&e, &(a, b)) in &self.edges {
                if !bset.contains(&e) {
                    continue;
                }
                if a == v {
                    ends.push(e);
                }
                if b == v {
                    ends.push(e);
                }
            }
            for w in ends.windows(2) {
                uf.union(w[0] as usize, w[1] as usize);
            }
        }
        let mut roots = BTreeSet::new();
        for &e in &bedges {
            roots.insert(uf.find(e as usize));
        }
        roots.len()
    }

    /// Whether a coherent choice of face orientations exists. Edges with
    /// fewer than two slots impose no constraint.
    pub fn is_orientable_surface(&self) -> bool {
        // 2-color faces: for an edge with two slots with directions d1, d2,
        // coherence forces color1 ^ color2 = (d1 == d2).
        let ids: Vec<FaceId> = self.faces.keys().copied().collect();
        let idx: BTreeMap<FaceId, usize> = ids.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut constraints: Vec<Vec<(usize, bool)>> = vec![Vec::new(); ids.len()];
        let mut edge_slots: BTreeMap<EdgeId, Vec<(FaceId, Dir)>> = BTreeMap::new();
        for (&f, boundary) in &self.faces {
            for slot in boundary {
                edge_slots.entry(slot.edge).or_default().push((f, slot.dir));
            }
        }
        for group in edge_slots.values() {
            if group.len() != 2 {
                continue;
            }
            let (f1, d1) = group[0];
            let (f2, d2) = group[1];
            let parity = d1 == d2;
            if f1 == f2 {
                // a face meeting itself across an edge: orientable only if
                // the two traversals are opposite
                if parity {
                    return false;
                }
                continue;
            }
            constraints[idx[&f1]].push((idx[&f2], parity));
            constraints[idx[&f2]].push((idx[&f1], parity));
        }
        let mut color: Vec<Option<bool>> = vec![None; ids.len()];
        for start in 0..ids.len() {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let ci = color[i].unwrap();
                for &(j, parity) in &constraints[i] {
                    let want = ci ^ parity;
                    match color[j] {
                        None => {
                            color[j] = Some(want);
                            stack.push(j);
                        }
                        Some(c) if c != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Classify a connected surface complex.
    pub fn classify_surface(&self) -> Result<SurfaceClass, ComplexError> {
        let kind = self.surface_kind();
        if kind == SurfaceKind::NotSurface {
            return Err(ComplexError::NotSurface);
        }
        if !self.is_connected() {
            return Err(ComplexError::NotConnected);
        }
        let euler = self.euler_characteristic();
        let closed = kind == SurfaceKind::Closed;
        let orientable = self.is_orientable_surface();
        let boundary_components = self.boundary_component_count();
        let genus_or_crosscaps = if orientable {
            ((2 - euler - boundary_components as i64) / 2) as u32
        } else {
            (2 - euler - boundary_components as i64) as u32
        };
        Ok(SurfaceClass {
            closed,
            orientable,
            euler,
            boundary_components,
            genus_or_crosscaps,
        })
    }

    /// Subdivision and merge moves. Each preserves the Euler characteristic.
    pub fn subdivide(&self, mv: &SubdivideMove) -> Result<Complex, ComplexError> {
        let mut c = self.clone();
        match *mv {
            SubdivideMove::DivideEdge { edge } => {
                let (a, b) = c.edge_ends(edge).ok_or(ComplexError::UnknownEdge(edge))?;
                let v = c.fresh_vertex();
                let e1 = edge;
                let e2 = c.fresh_edge_id();
                c.edges.insert(e1, (a, v));
                c.add_edge(e2, (v, b));
                for boundary in c.faces.values_mut() {
                    let mut out = Vec::with_capacity(boundary.len() + 2);
                    for slot in boundary.iter() {
                        if slot.edge == edge {
                            match slot.dir {
                                Dir::Forward => {
                                    out.push(OrientedEdge::fwd(e1));
                                    out.push(OrientedEdge::fwd(e2));
                                }
                                Dir::Backward => {
                                    out.push(OrientedEdge::back(e2));
                                    out.push(OrientedEdge::back(e1));
                                }
                            }
                        } else {
                            out.push(*slot);
                        }
                    }
                    *boundary = out;
                }
            }
            SubdivideMove::DivideFace { face, c1, c2 } => {
                let boundary = c
                    .faces
                    .get(&face)
                    .ok_or(ComplexError::UnknownFace(face))?
                    .clone();
                let m = boundary.len();
                if c1 >= m || c2 >= m {
                    return Err(ComplexError::BadMove(format!(
                        "corner out of range for face of size {m}"
                    )));
                }
                let (t1, t2) = (c1.min(c2), c1.max(c2));
                let v1 = c.tail(boundary[t1]);
                let v2 = c.tail(boundary[t2]);
                let e = c.fresh_edge_id();
                c.add_edge(e, (v1, v2));
                let mut b1: Vec<OrientedEdge> = boundary[t1..t2].to_vec();
                b1.push(OrientedEdge::back(e));
                let mut b2: Vec<OrientedEdge> = boundary[t2..].to_vec();
                b2.extend_from_slice(&boundary[..t1]);
                b2.push(OrientedEdge::fwd(e));
                c.faces.remove(&face);
                let f2 = c.fresh_face_id().max(face + 1);
                c.add_face(face, b1);
                c.add_face(f2, b2);
            }
            SubdivideMove::PullEdge { face, corner } => {
                let boundary = c
                    .faces
                    .get(&face)
                    .ok_or(ComplexError::UnknownFace(face))?
                    .clone();
                let m = boundary.len();
                if corner >= m {
                    return Err(ComplexError::BadMove(format!(
                        "corner out of range for face of size {m}"
                    )));
                }
                let x = c.tail(boundary[corner]);
                let v = c.fresh_vertex();
                let e = c.fresh_edge_id();
                c.add_edge(e, (x, v));
                let mut out = Vec::with_capacity(m + 2);
                out.extend_from_slice(&boundary[..corner]);
                out.push(OrientedEdge::fwd(e));
                out.push(OrientedEdge::back(e));
                out.extend_from_slice(&boundary[corner..]);
                c.faces.insert(face, out);
            }
            SubdivideMove::MergeEdges { vertex } => {
                merge_edges_at(&mut c, vertex)?;
            }
        }
        debug_assert_eq!(c.euler_characteristic(), self.euler_characteristic());
        c.validate()?;
        Ok(c)
    }
}

/// Inverse of DivideEdge: collapse a degree-2 vertex between two distinct
/// edges into one edge.
fn merge_edges_at(c: &mut Complex, vertex: VertexId) -> Result<(), ComplexError> {
    if !c.has_vertex(vertex) {
        return Err(ComplexError::UnknownVertex(vertex));
    }
    let incident: Vec<(EdgeId, (VertexId, VertexId))> = c
        .edges()
        .filter(|&(_, (a, b))| a == vertex || b == vertex)
        .collect();
    if c.degree(vertex) != 2 || incident.len() != 2 {
        return Err(ComplexError::BadMove(
            "merge-edges needs a degree-2 vertex on two distinct edges".into(),
        ));
    }
    let (e1, ends1) = incident[0];
    let (e2, ends2) = incident[1];
    let a = if ends1.0 == vertex { ends1.1 } else { ends1.0 };
    let b = if ends2.0 == vertex { ends2.1 } else { ends2.0 };
    // new e1 runs a -> b through the old vertex; a slot traverses it
    // Forward iff it used to enter the vertex along e1 (towards it) or
    // leave along e2
    let e1_fwd_enters = ends1.1 == vertex; // Forward on old e1 ends at vertex
    let e2_fwd_leaves = ends2.0 == vertex; // Forward on old e2 starts at vertex
    c.remove_edge_cell(e2);
    c.remove_edge_cell(e1);
    c.remove_vertex_cell(vertex);
    c.add_edge(e1, (a, b));
    let faces: Vec<FaceId> = c.face_ids();
    for f in faces {
        let boundary = c.faces.get(&f).unwrap().clone();
        let n = boundary.len();
        let mut out = Vec::with_capacity(n);
        let mut i = 0;
        let mut wrapped_pair = false;
        while i < n {
            let slot = boundary[i];
            if slot.edge == e1 || slot.edge == e2 {
                let next = boundary[(i + 1) % n];
                if !(next.edge == e1 || next.edge == e2) || (next.edge == slot.edge) {
                    return Err(ComplexError::BadMove(
                        "face boundary does not pass straight through the vertex".into(),
                    ));
                }
                let from_a = if slot.edge == e1 {
                    (slot.dir == Dir::Forward) == e1_fwd_enters
                } else {
                    (slot.dir == Dir::Forward) != e2_fwd_leaves
                };
                out.push(if from_a {
                    OrientedEdge::fwd(e1)
                } else {
                    OrientedEdge::back(e1)
                });
                if i + 1 == n {
                    wrapped_pair = true;
                }
                i += 2;
            } else {
                out.push(slot);
                i += 1;
            }
        }
        if wrapped_pair {
            out.remove(0);
        }
        c.faces.insert(f, out);
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub enum SubdivideMove {
    DivideEdge { edge: EdgeId },
    DivideFace { face: FaceId, c1: usize, c2: usize },
    PullEdge { face: FaceId, corner: usize },
    MergeEdges { vertex: VertexId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    Closed,
    WithBoundary,
    NotSurface,
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::Closed => write!(f, "closed-surface"),
            SurfaceKind::WithBoundary => write!(f, "surface-with-boundary"),
            SurfaceKind::NotSurface => write!(f, "not-surface"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceClass {
    pub closed: bool,
    pub orientable: bool,
    pub euler: i64,
    pub boundary_components: usize,
    pub genus_or_crosscaps: u32,
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} surface, euler {}, {} boundary component(s), {} {}",
            if self.closed { "closed" } else { "bounded" },
            if self.orientable {
                "orientable"
            } else {
                "non-orientable"
            },
            self.euler,
            self.boundary_components,
            self.genus_or_crosscaps,
            if self.orientable {
                "handle(s)"
            } else {
                "crosscap(s)"
            },
        )
    }
}

/// An end of an edge: 0 = end0, 1 = end1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub end: u8,
}

#[derive(Clone, Debug)]
pub struct LinkEdge {
    pub face: FaceId,
    pub corner: usize,
    pub ends: (EdgeEnd, EdgeEnd),
}

/// The link of a vertex: a 1-complex on (edge, end) pairs.
#[derive(Clone, Debug)]
pub struct Link {
    pub vertices: Vec<EdgeEnd>,
    pub edges: Vec<LinkEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkShape {
    Circle,
    Segment,
    Other,
}

impl Link {
    pub fn degree(&self, v: EdgeEnd) -> usize {
        self.edges
            .iter()
            .map(|e| (e.ends.0 == v) as usize + (e.ends.1 == v) as usize)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut uf = UnionFind::new();
        let index: BTreeMap<EdgeEnd, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        for i in 0..self.vertices.len() {
            uf.add(i);
        }
        for e in &self.edges {
            uf.union(index[&e.ends.0], index[&e.ends.1]);
        }
        let root = uf.find(0);
        (1..self.vertices.len()).all(|i| uf.find(i) == root)
    }

    pub fn shape(&self) -> LinkShape {
        if self.vertices.is_empty() || !self.is_connected() {
            return LinkShape::Other;
        }
        let degrees: Vec<usize> = self.vertices.iter().map(|&v| self.degree(v)).collect();
        if degrees.iter().all(|&d| d == 2) {
            LinkShape::Circle
        } else if degrees.iter().filter(|&&d| d == 1).count() == 2
            && degrees.iter().all(|&d| d == 1 || d == 2)
        {
            LinkShape::Segment
        } else {
            LinkShape::Other
        }
    }
}

/// Plain union-find over usize keys.
#[derive(Clone, Debug, Default)]
pub struct UnionFind {
    parent: BTreeMap<usize, usize>,
}

impl UnionFind {
    pub fn new() -> Self {
        UnionFind::default()
    }

    pub fn add(&mut self, x: usize) {
        self.parent.entry(x).or_insert(x);
    }

    pub fn find(&mut self, x: usize) -> usize {
        self.add(x);
        let mut root = x;
        while self.parent[&root] != root {
            root = self.parent[&root];
        }
        let mut cur = x;
        while self.parent[&cur] != root {
            let next = self.parent[&cur];
            self.parent.insert(cur, root);
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent.insert(hi, lo);
        }
    }
}

/// Reference complexes used across tests and docs.
pub mod samples {
    use super::*;

    /// 1 vertex, 1 loop edge, 1 face attached once around.
    pub fn disc() -> Complex {
        let mut c = Complex::new();
        c.add_vertex(0);
        c.add_edge(0, (0, 0));
        c.add_face(0, vec![OrientedEdge::fwd(0)]);
        c
    }

    /// 1 vertex, 1 loop edge, 2 faces attached once around each.
    pub fn sphere() -> Complex {
        let mut c = Complex::new();
        c.add_vertex(0);
        c.add_edge(0, (0, 0));
        c.add_face(0, vec![OrientedEdge::fwd(0)]);
        c.add_face(1, vec![OrientedEdge::fwd(0)]);
        c
    }

    /// 1 vertex, 2 loop edges, 1 square face with boundary x y x⁻¹ y⁻¹.
    pub fn torus() -> Complex {
        let mut c = Complex::new();
        c.add_vertex(0);
        c.add_edge(0, (0, 0));
        c.add_edge(1, (0, 0));
        c.add_face(
            0,
            vec![
                OrientedEdge::fwd(0),
                OrientedEdge::fwd(1),
                OrientedEdge::back(0),
                OrientedEdge::back(1),
            ],
        );
        c
    }

    /// 1 vertex, 1 loop edge, 1 face with boundary e·e.
    pub fn projective_plane() -> Complex {
        let mut c = Complex::new();
        c.add_vertex(0);
        c.add_edge(0, (0, 0));
        c.add_face(0, vec![OrientedEdge::fwd(0), OrientedEdge::fwd(0)]);
        c
    }

    /// Cylinder: two boundary circles, one square face.
    pub fn annulus() -> Complex {
        let mut c = Complex::new();
        c.add_vertex(0);
        c.add_vertex(1);
        c.add_edge(0, (0, 0)); // bottom circle
        c.add_edge(1, (1, 1)); // top circle
        c.add_edge(2, (0, 1)); // seam
        c.add_face(
            0,
            vec![
                OrientedEdge::fwd(0),
                OrientedEdge::fwd(2),
                OrientedEdge::back(1),
                OrientedEdge::back(2),
            ],
        );
        c
    }

    /// A circle with `n` vertices and `n` edges, no faces.
    pub fn circle(n: usize) -> Complex {
        assert!(n >= 1);
        let mut c = Complex::new();
        for v in 0..n as VertexId {
            c.add_vertex(v);
        }
        for e in 0..n as EdgeId {
            c.add_edge(e, (e as VertexId, ((e as usize + 1) % n) as VertexId));
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;
    use crate::rng::Rng;

    #[test]
    fn euler_examples() {
        assert_eq!(sphere().euler_characteristic(), 2);
        assert_eq!(disc().euler_characteristic(), 1);
        assert_eq!(torus().euler_characteristic(), 0);
    }

    #[test]
    fn link_examples() {
        let mut c = Complex::new();
        c.add_vertex(0);
        assert!(c.link(0).unwrap().vertices.is_empty());

        let t = torus();
        let link = t.link(0).unwrap();
        assert_eq!(link.vertices.len(), 4);
        assert_eq!(link.shape(), LinkShape::Circle);

        let mut c = Complex::new();
        c.add_vertex(0);
        c.add_vertex(1);
        c.add_edge(0, (0, 1));
        let link = c.link(0).unwrap();
        assert_eq!(link.vertices.len(), 1);
        assert_eq!(link.shape(), LinkShape::Other);
    }

    #[test]
    fn surface_recognition() {
        assert_eq!(sphere().surface_kind(), SurfaceKind::Closed);
        assert_eq!(disc().surface_kind(), SurfaceKind::WithBoundary);
        assert_eq!(annulus().surface_kind(), SurfaceKind::WithBoundary);
        let mut wedge = Complex::new();
        wedge.add_vertex(0);
        wedge.add_edge(0, (0, 0));
        wedge.add_edge(1, (0, 0));
        assert_eq!(wedge.surface_kind(), SurfaceKind::NotSurface);
    }

    #[test]
    fn classification_examples() {
        let s = sphere().classify_surface().unwrap();
        assert!(s.closed && s.orientable && s.euler == 2 && s.genus_or_crosscaps == 0);

        let p = projective_plane().classify_surface().unwrap();
        assert!(p.closed && !p.orientable);
        assert_eq!(p.euler, 1);
        assert_eq!(p.genus_or_crosscaps, 1);

        let t = torus().classify_surface().unwrap();
        assert!(t.closed && t.orientable);
        assert_eq!(t.euler, 0);
        assert_eq!(t.genus_or_crosscaps, 1);

        let d = disc().classify_surface().unwrap();
        assert!(!d.closed && d.orientable);
        assert_eq!(
            (d.euler, d.boundary_components, d.genus_or_crosscaps),
            (1, 1, 0)
        );

        let a = annulus().classify_surface().unwrap();
        assert!(!a.closed && a.orientable);
        assert_eq!(
            (a.euler, a.boundary_components, a.genus_or_crosscaps),
            (0, 2, 0)
        );
    }

    #[test]
    fn subdivision_moves_preserve_euler() {
        let d = disc();
        let d2 = d.subdivide(&SubdivideMove::DivideEdge { edge: 0 }).unwrap();
        assert_eq!(d2.vertex_count(), 2);
        assert_eq!(d2.edge_count(), 2);
        assert_eq!(d2.euler_characteristic(), 1);

        let sq = d2
            .subdivide(&SubdivideMove::DivideEdge { edge: 0 })
            .unwrap();
        let (f, b) = sq.faces().next().unwrap();
        let m = b.len();
        assert_eq!(m, 3);
        let split = sq
            .subdivide(&SubdivideMove::DivideFace { face: f, c1: 0, c2: 2 })
            .unwrap();
        assert_eq!(split.face_count(), 2);
        assert_eq!(split.edge_count(), 4);
        assert_eq!(split.euler_characteristic(), 1);

        let pulled = d
            .subdivide(&SubdivideMove::PullEdge { face: 0, corner: 0 })
            .unwrap();
        assert_eq!(pulled.vertex_count(), 2);
        assert_eq!(pulled.edge_count(), 2);
        assert_eq!(pulled.euler_characteristic(), 1);
    }

    pub fn random_subdivision(c: &Complex, rng: &mut Rng) -> Complex {
        let mut moves: Vec<SubdivideMove> = Vec::new();
        for (e, _) in c.edges() {
            moves.push(SubdivideMove::DivideEdge { edge: e });
        }
        for (f, b) in c.faces() {
            let m = b.len();
            moves.push(SubdivideMove::PullEdge {
                face: f,
                corner: rng.below(m),
            });
            let c1 = rng.below(m);
            let c2 = rng.below(m);
            if c1 != c2 {
                moves.push(SubdivideMove::DivideFace { face: f, c1, c2 });
            }
        }
        if moves.is_empty() {
            return c.clone();
        }
        let mv = rng.pick(&moves);
        c.subdivide(mv).unwrap_or_else(|_| c.clone())
    }

    #[test]
    fn chi_invariant_under_random_moves() {
        let mut rng = Rng::new(11);
        for seed in [sphere(), disc(), torus(), projective_plane(), annulus()] {
            let chi = seed.euler_characteristic();
            let mut c = seed;
            for _ in 0..60 {
                c = random_subdivision(&c, &mut rng);
                assert_eq!(c.euler_characteristic(), chi);
                c.validate().unwrap();
            }
        }
    }

    #[test]
    fn classification_invariant_under_random_moves() {
        let mut rng = Rng::new(12);
        for seed in [sphere(), disc(), torus(), projective_plane(), annulus()] {
            let class = seed.classify_surface().unwrap();
            let mut c = seed;
            for _ in 0..40 {
                c = random_subdivision(&c, &mut rng);
            }
            assert_eq!(c.classify_surface().unwrap(), class);
        }
    }

    #[test]
    fn degree_sum() {
        for c in [sphere(), disc(), torus(), annulus()] {
            let total: usize = c.vertices().map(|v| c.degree(v)).sum();
            assert_eq!(total, 2 * c.edge_count());
        }
    }

    #[test]
    fn closed_surface_edge_cover() {
        for c in [sphere(), torus(), projective_plane()] {
            for (e, _) in c.edges() {
                assert_eq!(c.slots_of_edge(e).len(), 2);
            }
        }
        for c in [disc(), annulus()] {
            for (e, _) in c.edges() {
                let n = c.slots_of_edge(e).len();
                assert!(n == 1 || n == 2);
            }
        }
    }

    #[test]
    fn merge_edges_inverts_divide() {
        let d = disc();
        let d2 = d.subdivide(&SubdivideMove::DivideEdge { edge: 0 }).unwrap();
        let new_vertex = d2.vertices().max().unwrap();
        let back = d2
            .subdivide(&SubdivideMove::MergeEdges { vertex: new_vertex })
            .unwrap();
        assert_eq!(back.vertex_count(), 1);
        assert_eq!(back.edge_count(), 1);
        assert_eq!(back.face_count(), 1);
        assert_eq!(
            back.classify_surface().unwrap(),
            d.classify_surface().unwrap()
        );
    }
}
