//! The co-rectangles symmetric plabic graph, its perfect orientation, and
//! flows.
//!
//! The graph for `n` is drawn on an integer grid. Columns `k = 1..n-1` run
//! upward from boundary vertex `k` to the top vertex, rows `r = 1..n-1` run
//! rightward from the corner vertex to boundary vertex `2n+1-r`. Each
//! crossing of a column and a row is a pair of internal vertices: a filled
//! vertex `f(r,k)` where the column enters and a hollow vertex `h(r,k)`
//! where it leaves. The filled top vertex closes every column and the
//! hollow corner vertex starts every row.
//!
//! Boundary vertices `1..n` sit along the bottom (right to left) and
//! `n+1..2n` down the right-hand side, so the labels run clockwise.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{IndexSet, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Filled,
    Hollow,
}

impl Color {
    pub fn swap(self) -> Color {
        match self {
            Color::Filled => Color::Hollow,
            Color::Hollow => Color::Filled,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// Boundary vertex with its label in `1..=2n`.
    Boundary(usize),
    Internal(Color),
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub kind: VertexKind,
    pub name: String,
    pub position: (i64, i64),
}

impl Vertex {
    pub fn color(&self) -> Option<Color> {
        match self.kind {
            VertexKind::Internal(c) => Some(c),
            VertexKind::Boundary(_) => None,
        }
    }
}

/// A bounded face of the graph.
#[derive(Clone, Debug)]
pub struct Face {
    pub label: Partition,
    /// Faces touching the boundary of the disk.
    pub frozen: bool,
    /// Vertices met walking around the face with the face on the left.
    pub boundary: Vec<usize>,
}

/// A half-edge: edge index together with a direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: usize,
    /// `true` when walking from `edges[edge].0` to `edges[edge].1`.
    pub forward: bool,
}

#[derive(Clone, Debug)]
pub struct PlabicGraph {
    n: usize,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    faces: Vec<Face>,
    /// Face to the left of each half-edge, indexed by `2 * edge + !forward`.
    left_face: Vec<usize>,
    half_lookup: HashMap<(usize, usize), HalfEdge>,
    /// Faces adjacent across each edge, for flood fills.
    dual: Vec<Vec<(usize, usize)>>,
}

impl PlabicGraph {
    /// Builds the co-rectangles graph. For `n = 1` the graph degenerates to
    /// a path `1 - corner - top - 2` with two faces, labelled `∅` and `(1)`.
    pub fn corect(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooSmall { n, min: 1 });
        }
        let m = n as i64;
        let mut vertices = Vec::new();
        for i in 1..=2 * n {
            let position = if i <= n { (2 * (m - i as i64), 0) } else { (2 * m, 2 * m + 2 - 2 * (i - n) as i64) };
            vertices.push(Vertex { kind: VertexKind::Boundary(i), name: i.to_string(), position });
        }
        for r in 1..n {
            for k in 1..n {
                let (ri, ki) = (r as i64, k as i64);
                vertices.push(Vertex {
                    kind: VertexKind::Internal(Color::Filled),
                    name: format!("f{r}.{k}"),
                    position: (2 * (m - ki), 2 * ri - 1),
                });
                vertices.push(Vertex {
                    kind: VertexKind::Internal(Color::Hollow),
                    name: format!("h{r}.{k}"),
                    position: (2 * (m - ki) + 1, 2 * ri),
                });
            }
        }
        vertices.push(Vertex {
            kind: VertexKind::Internal(Color::Filled),
            name: "top".into(),
            position: (2 * m - 1, 2 * m),
        });
        vertices.push(Vertex {
            kind: VertexKind::Internal(Color::Hollow),
            name: "corner".into(),
            position: (0, 2 * m - 1),
        });

        let ix = Indexer { n };
        let mut edges = Vec::new();
        for k in 1..n {
            edges.push((ix.boundary(k), ix.filled(1, k)));
            for r in 1..n {
                edges.push((ix.filled(r, k), ix.hollow(r, k)));
                let above = if r + 1 < n { ix.filled(r + 1, k) } else { ix.top() };
                edges.push((ix.hollow(r, k), above));
            }
        }
        for r in 1..n {
            edges.push((ix.corner(), ix.filled(r, n - 1)));
            for k in 1..n - 1 {
                edges.push((ix.hollow(r, k + 1), ix.filled(r, k)));
            }
            edges.push((ix.hollow(r, 1), ix.boundary(2 * n + 1 - r)));
        }
        edges.push((ix.corner(), ix.top()));
        edges.push((ix.top(), ix.boundary(n + 1)));
        edges.push((ix.corner(), ix.boundary(n)));

        let mut graph = PlabicGraph {
            n,
            vertices,
            edges,
            faces: Vec::new(),
            left_face: Vec::new(),
            half_lookup: HashMap::new(),
            dual: Vec::new(),
        };
        graph.trace_faces(&ix)?;
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Vertex index of boundary vertex `label`.
    pub fn boundary_vertex(&self, label: usize) -> usize {
        Indexer { n: self.n }.boundary(label)
    }

    pub fn internal_vertex_count(&self) -> usize {
        self.vertices.len() - 2 * self.n
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn face_index(&self, label: &Partition) -> Option<usize> {
        self.faces.iter().position(|f| &f.label == label)
    }

    /// The half-edge walking from `u` to `v`, if they are adjacent.
    pub fn half_edge(&self, u: usize, v: usize) -> Option<HalfEdge> {
        self.half_lookup.get(&(u, v)).copied()
    }

    pub fn endpoints(&self, h: HalfEdge) -> (usize, usize) {
        let (a, b) = self.edges[h.edge];
        if h.forward {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// The face on the left when walking along `h`.
    pub fn left_face(&self, h: HalfEdge) -> usize {
        self.left_face[2 * h.edge + usize::from(!h.forward)]
    }

    /// The reflection symmetry: boundary `i` goes to `2n+1-i`, `f(r,k)`
    /// and `h(k,r)` are exchanged, and so are the top and corner vertices.
    pub fn reflect_vertex(&self, v: usize) -> usize {
        let n = self.n;
        let ix = Indexer { n };
        if v < 2 * n {
            return ix.boundary(2 * n - v);
        }
        if v == ix.top() {
            return ix.corner();
        }
        if v == ix.corner() {
            return ix.top();
        }
        let cell = (v - 2 * n) / 2;
        let (r, k) = (cell / (n - 1) + 1, cell % (n - 1) + 1);
        if (v - 2 * n).is_multiple_of(2) {
            ix.hollow(k, r)
        } else {
            ix.filled(k, r)
        }
    }

    fn trace_faces(&mut self, ix: &Indexer) -> Result<()> {
        let n = self.n;
        let edge_count = self.edges.len();
        // The boundary circle is added as arcs `i -> i+1`, with ids after the
        // real edges, so that every face is a closed walk.
        let arc = |i: usize| edge_count + i - 1;
        let arc_ends = |i: usize| (ix.boundary(i), ix.boundary(i % (2 * n) + 1));
        let ends = |e: usize| if e < edge_count { self.edges[e] } else { arc_ends(e - edge_count + 1) };

        let mut rotation: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vertices.len()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            rotation[a].push((e, b));
            rotation[b].push((e, a));
        }
        for (v, around) in rotation.iter_mut().enumerate() {
            if let VertexKind::Boundary(i) = self.vertices[v].kind {
                // counterclockwise: arc from the previous label, the edge
                // into the disk, arc to the next label
                let prev = if i == 1 { 2 * n } else { i - 1 };
                let inner = around[0];
                *around = vec![(arc(prev), ends(arc(prev)).0), inner, (arc(i), ends(arc(i)).1)];
            } else {
                let origin = self.vertices[v].position;
                let vertices = &self.vertices;
                let dir = |w: usize| {
                    let p = vertices[w].position;
                    (p.0 - origin.0, p.1 - origin.1)
                };
                around.sort_by(|&(_, a), &(_, b)| ccw_cmp(dir(a), dir(b)));
            }
        }

        let total = edge_count + 2 * n;
        let slot = |h: HalfEdge| 2 * h.edge + usize::from(!h.forward);
        let mut face_of = vec![usize::MAX; 2 * total];
        let mut walks: Vec<(Vec<usize>, Vec<HalfEdge>)> = Vec::new();
        for start in 0..2 * total {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = walks.len();
            let mut h = HalfEdge { edge: start / 2, forward: start % 2 == 0 };
            let mut walk = (Vec::new(), Vec::new());
            while face_of[slot(h)] == usize::MAX {
                face_of[slot(h)] = id;
                let (a, b) = ends(h.edge);
                let (u, v) = if h.forward { (a, b) } else { (b, a) };
                walk.0.push(u);
                walk.1.push(h);
                let around = &rotation[v];
                let at = around
                    .iter()
                    .position(|&(e, w)| e == h.edge && w == u)
                    .expect("half-edge appears in the rotation of its head");
                let (e, w) = around[(at + around.len() - 1) % around.len()];
                debug_assert!(ends(e) == (v, w) || ends(e) == (w, v));
                h = HalfEdge { edge: e, forward: ends(e).0 == v };
            }
            walks.push(walk);
        }

        let outer = face_of[slot(HalfEdge { edge: arc(1), forward: true })];
        if walks.len() != n * n + 2 {
            return Err(Error::UnexpectedFace(format!("traced {} faces, expected {}", walks.len(), n * n + 2)));
        }

        for (e, &(a, b)) in self.edges.iter().enumerate() {
            self.half_lookup.insert((a, b), HalfEdge { edge: e, forward: true });
            self.half_lookup.insert((b, a), HalfEdge { edge: e, forward: false });
        }
        let walk_of = |u: usize, v: usize| face_of[slot(self.half_lookup[&(u, v)])];

        // anchor half-edges for each face label
        let mut labels: BTreeMap<usize, Partition> = BTreeMap::new();
        let mut assign = |face: usize, label: Partition| -> Result<()> {
            if face == outer || labels.insert(face, label.clone()).is_some() {
                return Err(Error::UnexpectedFace(label.to_string()));
            }
            Ok(())
        };
        assign(walk_of(ix.corner(), ix.top()), Partition::rectangle(n, n))?;
        for k in 0..n {
            for r in 0..n {
                let label = Partition::rectangle(n - k, n - r).complement(n)?;
                let face = if n == 1 {
                    walk_of(ix.top(), ix.corner())
                } else if r + 2 <= n {
                    let west = if k + 1 == n { ix.corner() } else { ix.hollow(r + 1, k + 1) };
                    let east = if k == 0 { ix.boundary(2 * n - r) } else { ix.filled(r + 1, k) };
                    walk_of(east, west)
                } else {
                    let west = if k + 1 == n { ix.corner() } else { ix.hollow(n - 1, k + 1) };
                    let east = if k == 0 { ix.boundary(n + 2) } else { ix.filled(n - 1, k) };
                    walk_of(west, east)
                };
                assign(face, label)?;
            }
        }

        let mut renumber = vec![usize::MAX; walks.len()];
        for (face, label) in labels {
            renumber[face] = self.faces.len();
            let (vertices, halves) = &walks[face];
            self.faces.push(Face {
                label,
                frozen: halves.iter().any(|h| h.edge >= edge_count),
                boundary: vertices.clone(),
            });
        }
        self.left_face = (0..2 * edge_count).map(|s| renumber[face_of[s]]).collect();
        self.dual = vec![Vec::new(); self.faces.len()];
        for e in 0..edge_count {
            let (l, r) = (self.left_face[2 * e], self.left_face[2 * e + 1]);
            self.dual[l].push((r, e));
            self.dual[r].push((l, e));
        }
        Ok(())
    }

    /// Faces on the left of a simple path from one boundary vertex to
    /// another, found by flooding the dual graph without crossing the path.
    pub fn faces_left_of(&self, path: &[usize]) -> Vec<usize> {
        let halves: Vec<HalfEdge> =
            path.windows(2).map(|w| self.half_edge(w[0], w[1]).expect("path follows edges")).collect();
        let mut blocked = vec![false; self.edges.len()];
        for h in &halves {
            blocked[h.edge] = true;
        }
        let mut seen = vec![false; self.faces.len()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &h in &halves {
            let f = self.left_face(h);
            if !seen[f] {
                seen[f] = true;
                queue.push_back(f);
            }
        }
        while let Some(f) = queue.pop_front() {
            for &(g, e) in &self.dual[f] {
                if !blocked[e] && !seen[g] {
                    seen[g] = true;
                    queue.push_back(g);
                }
            }
        }
        (0..self.faces.len()).filter(|&f| seen[f]).collect()
    }

    /// Graphviz rendering; filled vertices are black discs, hollow ones
    /// white circles, boundary vertices boxes.
    pub fn to_dot(&self, orientation: Option<&PerfectOrientation>) -> String {
        let mut out = String::new();
        let kind = if orientation.is_some() { "digraph" } else { "graph" };
        let _ = writeln!(out, "{kind} corect_{} {{", self.n);
        for v in &self.vertices {
            let style = match v.kind {
                VertexKind::Boundary(_) => "shape=box",
                VertexKind::Internal(Color::Filled) => "shape=circle, style=filled, fillcolor=black, fontcolor=white",
                VertexKind::Internal(Color::Hollow) => "shape=circle",
            };
            let _ = writeln!(out, "  \"{}\" [{style}, pos=\"{},{}!\"];", v.name, v.position.0, v.position.1);
        }
        let arrow = if orientation.is_some() { "->" } else { "--" };
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let (u, v) = match orientation {
                Some(o) if !o.forward[e] => (b, a),
                _ => (a, b),
            };
            let _ = writeln!(out, "  \"{}\" {arrow} \"{}\";", self.vertices[u].name, self.vertices[v].name);
        }
        out.push_str("}\n");
        out
    }

    /// Faces as `{"label": "3,3,1", "frozen": bool, "boundary": [names]}`.
    pub fn faces_json(&self) -> serde_json::Value {
        let faces: Vec<_> = self
            .faces
            .iter()
            .map(|f| {
                serde_json::json!({
                    "label": f.label.to_string(),
                    "frozen": f.frozen,
                    "boundary": f.boundary.iter().map(|&v| self.vertices[v].name.clone()).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::Value::Array(faces)
    }
}

/// Orders direction vectors counterclockwise starting from the positive x axis.
fn ccw_cmp(a: (i64, i64), b: (i64, i64)) -> std::cmp::Ordering {
    let half = |p: (i64, i64)| if p.1 > 0 || (p.1 == 0 && p.0 > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a.0 * b.1 - a.1 * b.0)))
}

#[derive(Clone, Copy)]
struct Indexer {
    n: usize,
}

impl Indexer {
    fn boundary(self, label: usize) -> usize {
        label - 1
    }

    fn filled(self, r: usize, k: usize) -> usize {
        2 * self.n + 2 * ((r - 1) * (self.n - 1) + (k - 1))
    }

    fn hollow(self, r: usize, k: usize) -> usize {
        self.filled(r, k) + 1
    }

    fn top(self) -> usize {
        2 * self.n + 2 * (self.n - 1) * (self.n - 1)
    }

    fn corner(self) -> usize {
        self.top() + 1
    }
}

/// Edge directions in which every filled vertex has one outgoing edge and
/// every hollow vertex one incoming edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectOrientation {
    pub sources: IndexSet,
    /// `forward[e]` is true when edge `e` points from its first endpoint
    /// to its second.
    pub forward: Vec<bool>,
}

impl PerfectOrientation {
    pub fn head_tail(&self, graph: &PlabicGraph, e: usize) -> (usize, usize) {
        let (a, b) = graph.edges()[e];
        if self.forward[e] {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Out-neighbours of every vertex, sorted by vertex index.
    pub fn successors(&self, graph: &PlabicGraph) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); graph.vertices().len()];
        for e in 0..graph.edges().len() {
            let (u, v) = self.head_tail(graph, e);
            out[u].push(v);
        }
        for list in &mut out {
            list.sort_unstable();
        }
        out
    }
}

/// All perfect orientations with the given boundary sources, by
/// constraint propagation and branching. Stops after `limit` solutions.
pub fn perfect_orientations(graph: &PlabicGraph, sources: &IndexSet, limit: usize) -> Vec<PerfectOrientation> {
    let edges = graph.edges();
    let mut incident = vec![Vec::new(); graph.vertices().len()];
    for (e, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(e);
        incident[b].push(e);
    }
    let mut state: Vec<Option<bool>> = vec![None; edges.len()];
    for (e, &(a, b)) in edges.iter().enumerate() {
        for (v, away) in [(a, true), (b, false)] {
            if let VertexKind::Boundary(i) = graph.vertices()[v].kind {
                // sources point into the disk, sinks receive
                state[e] = Some(if sources.contains(i) { away } else { !away });
            }
        }
    }
    let mut found = Vec::new();
    search(graph, &incident, state, sources, limit, &mut found);
    found
}

/// The unique perfect orientation with the given sources.
pub fn find_perfect_orientation(graph: &PlabicGraph, sources: &IndexSet) -> Result<PerfectOrientation> {
    let mut all = perfect_orientations(graph, sources, 2);
    if all.len() != 1 {
        return Err(Error::OrientationCount(all.len()));
    }
    Ok(all.remove(0))
}

/// The orientation with sources `{1, ..., n}`.
pub fn corect_orientation(graph: &PlabicGraph) -> Result<PerfectOrientation> {
    let n = graph.n();
    find_perfect_orientation(graph, &IndexSet::new((1..=n).collect(), n)?)
}

fn search(
    graph: &PlabicGraph,
    incident: &[Vec<usize>],
    mut state: Vec<Option<bool>>,
    sources: &IndexSet,
    limit: usize,
    found: &mut Vec<PerfectOrientation>,
) {
    if found.len() >= limit || !propagate(graph, incident, &mut state) {
        return;
    }
    match state.iter().position(Option::is_none) {
        None => found.push(PerfectOrientation {
            sources: sources.clone(),
            forward: state.into_iter().map(|s| s.expect("all edges decided")).collect(),
        }),
        Some(e) => {
            for choice in [true, false] {
                let mut next = state.clone();
                next[e] = Some(choice);
                search(graph, incident, next, sources, limit, found);
            }
        }
    }
}

/// Applies forced moves until nothing changes; false on contradiction.
fn propagate(graph: &PlabicGraph, incident: &[Vec<usize>], state: &mut [Option<bool>]) -> bool {
    let edges = graph.edges();
    loop {
        let mut changed = false;
        for (v, vertex) in graph.vertices().iter().enumerate() {
            let Some(color) = vertex.color() else { continue };
            // the one special edge at v: outgoing for filled, incoming for hollow
            let special = |e: usize, fwd: bool| {
                let out = (edges[e].0 == v) == fwd;
                out == (color == Color::Filled)
            };
            let mut count = 0;
            let mut open = Vec::new();
            for &e in &incident[v] {
                match state[e] {
                    Some(fwd) if special(e, fwd) => count += 1,
                    Some(_) => {}
                    None => open.push(e),
                }
            }
            if count > 1 || (count == 0 && open.is_empty()) {
                return false;
            }
            if count == 1 || open.len() == 1 {
                let want_special = count == 0;
                for &e in &open {
                    // choose the direction making e special iff want_special
                    state[e] = Some(special(e, true) == want_special);
                    changed = true;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// One path of a flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowPath {
    pub vertices: Vec<usize>,
    /// Indices of the faces to the left of the path.
    pub left_faces: Vec<usize>,
}

/// Vertex-disjoint paths from `sources \ J` to `J \ sources`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flow {
    pub paths: Vec<FlowPath>,
}

/// A monomial in the face variables: label to exponent.
pub type FlowMonomial = BTreeMap<Partition, usize>;

/// Monomials with positive integer coefficients.
pub type FlowPolynomial = BTreeMap<FlowMonomial, usize>;

impl Flow {
    pub fn monomial(&self, graph: &PlabicGraph) -> FlowMonomial {
        let mut m = FlowMonomial::new();
        for p in &self.paths {
            for &f in &p.left_faces {
                *m.entry(graph.faces()[f].label.clone()).or_insert(0) += 1;
            }
        }
        m
    }
}

/// Every flow to `target`, in lexicographic order of path vertex sequences.
pub fn enumerate_flows(graph: &PlabicGraph, orientation: &PerfectOrientation, target: &IndexSet) -> Vec<Flow> {
    let succ = orientation.successors(graph);
    let starts: Vec<usize> = orientation
        .sources
        .elements()
        .iter()
        .filter(|&&s| !target.contains(s))
        .map(|&s| graph.boundary_vertex(s))
        .collect();
    let mut is_end = vec![false; graph.vertices().len()];
    for &j in target.elements() {
        if !orientation.sources.contains(j) {
            is_end[graph.boundary_vertex(j)] = true;
        }
    }
    let mut used = vec![false; graph.vertices().len()];
    let mut chosen = Vec::new();
    let mut flows = Vec::new();
    extend_flow(graph, &succ, &starts, &is_end, &mut used, &mut chosen, &mut flows);
    flows
}

fn extend_flow(
    graph: &PlabicGraph,
    succ: &[Vec<usize>],
    starts: &[usize],
    is_end: &[bool],
    used: &mut Vec<bool>,
    chosen: &mut Vec<Vec<usize>>,
    flows: &mut Vec<Flow>,
) {
    let Some((&start, rest)) = starts.split_first() else {
        let paths =
            chosen.iter().map(|p| FlowPath { vertices: p.clone(), left_faces: graph.faces_left_of(p) }).collect();
        flows.push(Flow { paths });
        return;
    };
    let mut path = vec![start];
    used[start] = true;
    walk(graph, succ, rest, is_end, used, &mut path, chosen, flows);
    used[start] = false;
}

#[allow(clippy::too_many_arguments)]
fn walk(
    graph: &PlabicGraph,
    succ: &[Vec<usize>],
    rest: &[usize],
    is_end: &[bool],
    used: &mut Vec<bool>,
    path: &mut Vec<usize>,
    chosen: &mut Vec<Vec<usize>>,
    flows: &mut Vec<Flow>,
) {
    let here = *path.last().expect("path is never empty");
    if is_end[here] {
        chosen.push(path.clone());
        extend_flow(graph, succ, rest, is_end, used, chosen, flows);
        chosen.pop();
        return;
    }
    for &next in &succ[here] {
        let boundary = matches!(graph.vertices()[next].kind, VertexKind::Boundary(_));
        if used[next] || (boundary && !is_end[next]) {
            continue;
        }
        used[next] = true;
        path.push(next);
        walk(graph, succ, rest, is_end, used, path, chosen, flows);
        path.pop();
        used[next] = false;
    }
}

/// Sum of the weights of all flows to `target`.
pub fn flow_polynomial(graph: &PlabicGraph, orientation: &PerfectOrientation, target: &IndexSet) -> FlowPolynomial {
    let mut poly = FlowPolynomial::new();
    for flow in enumerate_flows(graph, orientation, target) {
        *poly.entry(flow.monomial(graph)).or_insert(0) += 1;
    }
    poly
}

/// Renders a monomial as `x[3,3,3]^2 x[3,3]`, or `1` when empty.
pub fn format_monomial(m: &FlowMonomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    let terms: Vec<String> =
        m.iter().map(|(label, &e)| if e == 1 { format!("x[{label}]") } else { format!("x[{label}]^{e}") }).collect();
    terms.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn labels(g: &PlabicGraph) -> BTreeSet<Partition> {
        g.faces().iter().map(|f| f.label.clone()).collect()
    }

    #[test]
    fn n3_face_labels() {
        let g = PlabicGraph::corect(3).unwrap();
        let expected: BTreeSet<_> = [
            vec![],
            vec![3],
            vec![3, 3],
            vec![3, 3, 3],
            vec![1, 1, 1],
            vec![2, 2, 2],
            vec![3, 1, 1],
            vec![3, 2, 2],
            vec![3, 3, 1],
            vec![3, 3, 2],
        ]
        .iter()
        .map(|v| p(v))
        .collect();
        assert_eq!(labels(&g), expected);
        // one frozen face per boundary segment
        let frozen = g.faces().iter().filter(|f| f.frozen).count();
        assert_eq!(frozen, 6);
    }

    #[test]
    fn counts_and_degrees() {
        for n in 1..=6 {
            let g = PlabicGraph::corect(n).unwrap();
            assert_eq!(g.faces().len(), n * n + 1);
            assert_eq!(g.internal_vertex_count(), 2 * (n - 1) * (n - 1) + 2);
            for (v, vertex) in g.vertices().iter().enumerate() {
                let expected = match vertex.kind {
                    VertexKind::Boundary(_) => 1,
                    _ if vertex.name == "top" || vertex.name == "corner" => n + 1,
                    _ => 3,
                };
                assert_eq!(g.degree(v), expected, "{}", vertex.name);
            }
        }
    }

    #[test]
    fn reflection_is_a_symmetry() {
        for n in 1..=5 {
            let g = PlabicGraph::corect(n).unwrap();
            let edges: BTreeSet<_> = g.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            for &(a, b) in g.edges() {
                let (x, y) = (g.reflect_vertex(a), g.reflect_vertex(b));
                assert!(edges.contains(&(x.min(y), x.max(y))));
            }
            for (v, vertex) in g.vertices().iter().enumerate() {
                let w = g.reflect_vertex(v);
                assert_eq!(g.reflect_vertex(w), v);
                assert_eq!(g.vertices()[w].color(), vertex.color().map(Color::swap));
            }
            for face in g.faces() {
                // reflection reverses orientation, so the walk comes back reversed
                let image: Vec<usize> = face.boundary.iter().rev().map(|&v| g.reflect_vertex(v)).collect();
                let matched: Vec<_> = g.faces().iter().filter(|f| is_rotation(&f.boundary, &image)).collect();
                assert_eq!(matched.len(), 1);
                assert_eq!(matched[0].label, face.label.transpose());
            }
        }
    }

    fn is_rotation(a: &[usize], b: &[usize]) -> bool {
        a.len() == b.len() && (0..a.len()).any(|s| a.iter().cycle().skip(s).take(a.len()).eq(b.iter()))
    }

    #[test]
    fn orientation_n3_edges() {
        let g = PlabicGraph::corect(3).unwrap();
        let o = corect_orientation(&g).unwrap();
        let name = |v: usize| g.vertices()[v].name.clone();
        let directed: BTreeSet<(String, String)> =
            (0..g.edges().len()).map(|e| o.head_tail(&g, e)).map(|(u, v)| (name(u), name(v))).collect();
        // columns climb toward the top vertex
        for k in 1..3 {
            assert!(directed.contains(&(format!("h2.{k}"), "top".into())));
            assert!(directed.contains(&(format!("h1.{k}"), format!("f2.{k}"))));
        }
        // rows run toward the right-hand sinks
        assert!(directed.contains(&("h1.1".into(), "6".into())));
        assert!(directed.contains(&("h2.1".into(), "5".into())));
        assert!(directed.contains(&("top".into(), "4".into())));
    }

    #[test]
    fn orientation_n2_brute_force() {
        let g = PlabicGraph::corect(2).unwrap();
        let sources = IndexSet::new(vec![1, 2], 2).unwrap();
        let e = g.edges().len();
        let mut count = 0;
        for mask in 0u32..(1 << e) {
            let forward: Vec<bool> = (0..e).map(|i| mask >> i & 1 == 1).collect();
            let o = PerfectOrientation { sources: sources.clone(), forward };
            if is_perfect(&g, &o) {
                count += 1;
                assert_eq!(o, find_perfect_orientation(&g, &sources).unwrap());
            }
        }
        assert_eq!(count, 1);
    }

    fn is_perfect(g: &PlabicGraph, o: &PerfectOrientation) -> bool {
        let mut outs = vec![0; g.vertices().len()];
        let mut ins = vec![0; g.vertices().len()];
        for e in 0..g.edges().len() {
            let (u, v) = o.head_tail(g, e);
            outs[u] += 1;
            ins[v] += 1;
        }
        g.vertices().iter().enumerate().all(|(v, vertex)| match vertex.kind {
            VertexKind::Boundary(i) => {
                if o.sources.contains(i) {
                    outs[v] == 1
                } else {
                    ins[v] == 1
                }
            }
            VertexKind::Internal(Color::Filled) => outs[v] == 1,
            VertexKind::Internal(Color::Hollow) => ins[v] == 1,
        })
    }

    #[test]
    fn orientation_unique_up_to_five() {
        for n in 1..=5 {
            let g = PlabicGraph::corect(n).unwrap();
            let o = corect_orientation(&g).unwrap();
            assert!(is_perfect(&g, &o));
        }
    }

    #[test]
    fn n3_flows_to_145() {
        let g = PlabicGraph::corect(3).unwrap();
        let o = corect_orientation(&g).unwrap();
        let target = IndexSet::parse("1,4,5", 3).unwrap();
        let flows = enumerate_flows(&g, &o, &target);
        let left = |flow: &Flow, start: usize| -> BTreeSet<Partition> {
            let path = flow.paths.iter().find(|p| p.vertices[0] == g.boundary_vertex(start)).unwrap();
            path.left_faces.iter().map(|&f| g.faces()[f].label.clone()).collect()
        };
        let set = |labels: &[&[usize]]| -> BTreeSet<Partition> { labels.iter().map(|l| p(l)).collect() };
        let long = set(&[&[3, 3], &[3, 3, 1], &[3, 3, 2], &[3, 2, 2], &[2, 2, 2], &[3, 3, 3]]);
        let mut longer = long.clone();
        longer.insert(p(&[3, 1, 1]));
        let short = set(&[&[3, 3, 3]]);
        // the two drawn flows
        assert!(flows.iter().any(|f| left(f, 2) == long && left(f, 3) == short));
        assert!(flows.iter().any(|f| left(f, 2) == longer && left(f, 3) == short));
        // and a third one, whose path from 3 passes f2.2 and h2.2
        assert_eq!(flows.len(), 3);
        assert!(flows.iter().any(|f| left(f, 2) == longer && left(f, 3) == set(&[&[3, 3, 2], &[3, 3, 3]])));
    }

    #[test]
    fn empty_flow_only_to_sources() {
        for n in 1..=4 {
            let g = PlabicGraph::corect(n).unwrap();
            let o = corect_orientation(&g).unwrap();
            let flows = enumerate_flows(&g, &o, &o.sources);
            assert_eq!(flows.len(), 1);
            assert!(flows[0].paths.is_empty());
        }
    }

    #[test]
    fn every_plucker_coordinate_has_flows() {
        for n in 1..=3 {
            let g = PlabicGraph::corect(n).unwrap();
            let o = corect_orientation(&g).unwrap();
            for target in IndexSet::all(n) {
                let poly = flow_polynomial(&g, &o, &target);
                assert!(!poly.is_empty(), "{target}");
                // distinct flows carry distinct monomials
                assert!(poly.values().all(|&c| c == 1));
            }
        }
    }

    #[test]
    fn n1_is_a_path() {
        let g = PlabicGraph::corect(1).unwrap();
        assert_eq!(labels(&g), [Partition::empty(), p(&[1])].into_iter().collect());
        let o = corect_orientation(&g).unwrap();
        let poly = flow_polynomial(&g, &o, &IndexSet::new(vec![2], 1).unwrap());
        let m: FlowMonomial = [(p(&[1]), 1)].into_iter().collect();
        assert_eq!(poly, [(m, 1)].into_iter().collect());
    }

    #[test]
    fn dot_export_mentions_every_vertex() {
        let g = PlabicGraph::corect(2).unwrap();
        let o = corect_orientation(&g).unwrap();
        let dot = g.to_dot(Some(&o));
        assert!(dot.starts_with("digraph"));
        for v in g.vertices() {
            assert!(dot.contains(&format!("\"{}\"", v.name)));
        }
    }
}
