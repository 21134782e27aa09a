//! Combinatorial side: trivalent polyhedra with dihedral angle labels,
//! prismatic circuits, and mutation.
//!
//! A polyhedron is stored as its face set plus labeled face-adjacencies
//! (angle π/n on each edge). The vertex structure (which triples of faces
//! meet) is derived, not supplied: for the 3-connected planar graphs this
//! crate works with it is unique, and deriving it keeps the input format
//! small and hard to get wrong.

pub mod format;
pub mod iso;
pub mod templates;

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CombinatError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate face id `{0}`")]
    DuplicateFace(String),
    #[error("unknown face id `{0}`")]
    UnknownFace(String),
    #[error("edge joins face `{0}` to itself")]
    SelfEdge(String),
    #[error("duplicate edge {0} -- {1}")]
    DuplicateEdge(String, String),
    #[error("angle label out of range on edge {0} -- {1}: n = {2} (need n >= 2)")]
    AngleOutOfRange(String, String, u32),
    #[error("face incidence structure is not polyhedral: {0}")]
    NotPolyhedral(String),
    #[error("vertex structure is ambiguous (graph is not 3-connected planar)")]
    AmbiguousStructure,
    #[error("mismatched q: {0}")]
    MismatchedQ(String),
    #[error("circuit [{0}, {1}, {2}] is not an eligible prismatic 3-circuit")]
    IneligibleCircuit(String, String, String),
    #[error("no side assignment: {0}")]
    NoSideAssignment(String),
    #[error("bad polyhedron name `{0}` (expected e.g. AA5, BC4m)")]
    BadName(String),
    #[error("invalid template: {0}")]
    TemplateInvalid(String),
}

/// A prismatic 3-circuit: three pairwise-adjacent faces with no common
/// vertex. `angle` is Some(n) when all three edges carry the same label π/n,
/// which is what mutation requires.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit3 {
    pub faces: [usize; 3],
    pub angle: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngledPolyhedron {
    faces: Vec<String>,
    edges: BTreeMap<(usize, usize), u32>,
    vertices: Vec<[usize; 3]>,
    /// Faces strictly below the gluing seam, when this polyhedron was built
    /// by [`templates::glue`]; used as the default side assignment for
    /// mutation.
    pub(crate) lower_side: Option<BTreeSet<usize>>,
    /// The gluing seam in rotation order, when built by glue.
    pub(crate) seam: Option<[usize; 3]>,
}

impl AngledPolyhedron {
    pub fn from_parts<S: AsRef<str>>(
        faces: Vec<String>,
        edge_list: &[(S, S, u32)],
    ) -> Result<Self, CombinatError> {
        let mut index = BTreeMap::new();
        for (i, f) in faces.iter().enumerate() {
            if index.insert(f.clone(), i).is_some() {
                return Err(CombinatError::DuplicateFace(f.clone()));
            }
        }
        let mut edges = BTreeMap::new();
        for (a, b, n) in edge_list {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index.get(a).ok_or_else(|| CombinatError::UnknownFace(a.into()))?;
            let ib = *index.get(b).ok_or_else(|| CombinatError::UnknownFace(b.into()))?;
            if ia == ib {
                return Err(CombinatError::SelfEdge(a.into()));
            }
            let key = (ia.min(ib), ia.max(ib));
            if *n < 2 {
                return Err(CombinatError::AngleOutOfRange(a.into(), b.into(), *n));
            }
            if edges.insert(key, *n).is_some() {
                return Err(CombinatError::DuplicateEdge(a.into(), b.into()));
            }
        }
        let vertices = derive_vertices(faces.len(), &edges)?;
        Ok(AngledPolyhedron {
            faces,
            edges,
            vertices,
            lower_side: None,
            seam: None,
        })
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[String] {
        &self.faces
    }

    pub fn face_index(&self, name: &str) -> Option<usize> {
        self.faces.iter().position(|f| f == name)
    }

    pub fn edge_angle(&self, i: usize, j: usize) -> Option<u32> {
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.edge_angle(i, j).is_some()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(i, j), &n)| (i, j, n))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Derived vertex structure: sorted face triples, lexicographic order.
    pub fn vertices(&self) -> &[[usize; 3]] {
        &self.vertices
    }

    pub fn seam(&self) -> Option<[usize; 3]> {
        self.seam
    }

    pub fn lower_side(&self) -> Option<&BTreeSet<usize>> {
        self.lower_side.as_ref()
    }

    /// Same polyhedron with faces re-indexed in the given order (a
    /// permutation of the current face names). Gram rows follow face order,
    /// so this is how a caller pins a particular row layout.
    pub fn with_face_order(&self, order: &[&str]) -> Result<Self, CombinatError> {
        if order.len() != self.faces.len() {
            return Err(CombinatError::NotPolyhedral(format!(
                "face order has {} entries, polyhedron has {}",
                order.len(),
                self.faces.len()
            )));
        }
        let mut perm = Vec::with_capacity(order.len()); // old index -> position in new
        let mut map = BTreeMap::new();
        for (new_i, name) in order.iter().enumerate() {
            let old = self
                .face_index(name)
                .ok_or_else(|| CombinatError::UnknownFace(name.to_string()))?;
            map.insert(old, new_i);
        }
        if map.len() != self.faces.len() {
            return Err(CombinatError::DuplicateFace("in face order".into()));
        }
        for i in 0..self.faces.len() {
            perm.push(map[&i]);
        }
        let faces: Vec<String> = order.iter().map(|s| s.to_string()).collect();
        let edge_list: Vec<(String, String, u32)> = self
            .edges()
            .map(|(i, j, n)| (self.faces[i].clone(), self.faces[j].clone(), n))
            .collect();
        let mut out = AngledPolyhedron::from_parts(faces, &edge_list)?;
        out.lower_side = self
            .lower_side
            .as_ref()
            .map(|s| s.iter().map(|&i| perm[i]).collect());
        out.seam = self.seam.map(|s| s.map(|i| perm[i]));
        Ok(out)
    }

    /// All prismatic 3-circuits, lexicographic by sorted face triple.
    pub fn prismatic_3_circuits(&self) -> Vec<Circuit3> {
        let f = self.faces.len();
        let mut out = Vec::new();
        for i in 0..f {
            for j in i + 1..f {
                if !self.adjacent(i, j) {
                    continue;
                }
                for k in j + 1..f {
                    if !self.adjacent(i, k) || !self.adjacent(j, k) {
                        continue;
                    }
                    if self.vertices.binary_search(&[i, j, k]).is_ok() {
                        continue;
                    }
                    let (a, b, c) = (
                        self.edge_angle(i, j).unwrap(),
                        self.edge_angle(i, k).unwrap(),
                        self.edge_angle(j, k).unwrap(),
                    );
                    let angle = if a == b && b == c { Some(a) } else { None };
                    out.push(Circuit3 {
                        faces: [i, j, k],
                        angle,
                    });
                }
            }
        }
        out
    }

    /// Prismatic 4-circuits (for validation): 4-cycles in the adjacency
    /// graph where consecutive edges never share a vertex and opposite faces
    /// are non-adjacent. Returned as face index quadruples in cycle order.
    fn prismatic_4_circuits(&self) -> Vec<[usize; 4]> {
        let f = self.faces.len();
        let mut out = Vec::new();
        for a in 0..f {
            for b in a + 1..f {
                if !self.adjacent(a, b) {
                    continue;
                }
                for c in 0..f {
                    if c <= a || c == b || !self.adjacent(b, c) || self.adjacent(a, c) {
                        continue;
                    }
                    for d in b + 1..f {
                        // canonical: a smallest, b < d (fixes direction)
                        if d == c
                            || !self.adjacent(c, d)
                            || !self.adjacent(d, a)
                            || self.adjacent(b, d)
                        {
                            continue;
                        }
                        let is_v = |x: usize, y: usize, z: usize| {
                            let mut t = [x, y, z];
                            t.sort_unstable();
                            self.vertices.binary_search(&t).is_ok()
                        };
                        if is_v(a, b, c) || is_v(b, c, d) || is_v(c, d, a) || is_v(d, a, b) {
                            continue;
                        }
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
        out
    }

    /// Andreev-style diagnostics. Angle comparisons are exact (rational
    /// arithmetic on 1/n).
    pub fn validate(&self) -> ValidationReport {
        let mut diags = Vec::new();
        let v = self.vertices.len() as i64;
        let e = self.edges.len() as i64;
        let f = self.faces.len() as i64;
        if v - e + f != 2 {
            diags.push(Diagnostic::EulerFailure { v, e, f });
        }
        // vertex links: 1/a + 1/b + 1/c > 1, strictly (compact vertices)
        for &[i, j, k] in &self.vertices {
            let (a, b, c) = (
                self.edge_angle(i, j).unwrap() as i64,
                self.edge_angle(i, k).unwrap() as i64,
                self.edge_angle(j, k).unwrap() as i64,
            );
            // 1/a + 1/b + 1/c > 1  <=>  bc + ac + ab > abc
            if b * c + a * c + a * b <= a * b * c {
                diags.push(Diagnostic::VertexNotSpherical {
                    faces: [
                        self.faces[i].clone(),
                        self.faces[j].clone(),
                        self.faces[k].clone(),
                    ],
                });
            }
        }
        for c3 in self.prismatic_3_circuits() {
            let [i, j, k] = c3.faces;
            let (a, b, c) = (
                self.edge_angle(i, j).unwrap() as i64,
                self.edge_angle(i, k).unwrap() as i64,
                self.edge_angle(j, k).unwrap() as i64,
            );
            // need 1/a + 1/b + 1/c < 1
            if b * c + a * c + a * b >= a * b * c {
                diags.push(Diagnostic::Circuit3NotHyperbolic {
                    faces: [
                        self.faces[i].clone(),
                        self.faces[j].clone(),
                        self.faces[k].clone(),
                    ],
                });
            }
        }
        for [a, b, c, d] in self.prismatic_4_circuits() {
            let ns = [
                self.edge_angle(a, b).unwrap() as i64,
                self.edge_angle(b, c).unwrap() as i64,
                self.edge_angle(c, d).unwrap() as i64,
                self.edge_angle(d, a).unwrap() as i64,
            ];
            // need sum 1/n_i < 2
            let prod: i64 = ns.iter().product();
            let sum: i64 = ns.iter().map(|&n| prod / n).sum();
            if sum >= 2 * prod {
                diags.push(Diagnostic::Circuit4NotHyperbolic {
                    faces: [
                        self.faces[a].clone(),
                        self.faces[b].clone(),
                        self.faces[c].clone(),
                        self.faces[d].clone(),
                    ],
                });
            }
        }
        ValidationReport { diagnostics: diags }
    }

    /// Combinatorial mutation along an eligible prismatic 3-circuit: the
    /// faces on the lower side advance one step around the circuit.
    ///
    /// `side` gives the face indices strictly below the cut; when None, the
    /// side assignment recorded by glue is used. The rotation sends circuit
    /// position 0 -> 1 -> 2 -> 0, with the circuit taken in ascending index
    /// order unless it is the recorded seam (then seam order).
    pub fn mutate(
        &self,
        circuit: [usize; 3],
        side: Option<&BTreeSet<usize>>,
    ) -> Result<Self, CombinatError> {
        let mut sorted = circuit;
        sorted.sort_unstable();
        let c3 = self
            .prismatic_3_circuits()
            .into_iter()
            .find(|c| c.faces == sorted)
            .ok_or_else(|| self.ineligible(sorted))?;
        if c3.angle.is_none() {
            return Err(self.ineligible(sorted));
        }
        let order = self.resolve_circuit_order(sorted);
        let side = self.resolve_side(sorted, side)?;
        let side = &side;
        // side must be the full lower part: nonempty, disjoint from circuit,
        // complement (minus circuit) nonempty, and no lower-upper edge
        if side.is_empty() {
            return Err(CombinatError::NoSideAssignment("empty lower side".into()));
        }
        if side.iter().any(|i| sorted.contains(i)) {
            return Err(CombinatError::NoSideAssignment(
                "lower side contains a circuit face".into(),
            ));
        }
        let upper: BTreeSet<usize> = (0..self.faces.len())
            .filter(|i| !sorted.contains(i) && !side.contains(i))
            .collect();
        if upper.is_empty() {
            return Err(CombinatError::NoSideAssignment("empty upper side".into()));
        }
        for (i, j, _) in self.edges() {
            if (side.contains(&i) && upper.contains(&j))
                || (side.contains(&j) && upper.contains(&i))
            {
                return Err(CombinatError::NoSideAssignment(format!(
                    "faces {} and {} are adjacent across the cut",
                    self.faces[i], self.faces[j]
                )));
            }
        }
        let pos = |f: usize| order.iter().position(|&x| x == f);
        let edge_list: Vec<(String, String, u32)> = self
            .edges()
            .map(|(i, j, n)| {
                let (i2, j2) = if side.contains(&i) {
                    if let Some(p) = pos(j) {
                        (i, order[(p + 1) % 3])
                    } else {
                        (i, j)
                    }
                } else if side.contains(&j) {
                    if let Some(p) = pos(i) {
                        (order[(p + 1) % 3], j)
                    } else {
                        (i, j)
                    }
                } else {
                    (i, j)
                };
                (self.faces[i2].clone(), self.faces[j2].clone(), n)
            })
            .collect();
        let mut out = AngledPolyhedron::from_parts(self.faces.clone(), &edge_list)?;
        out.lower_side = Some(side.clone());
        out.seam = Some(order);
        Ok(out)
    }

    fn ineligible(&self, c: [usize; 3]) -> CombinatError {
        CombinatError::IneligibleCircuit(
            self.faces.get(c[0]).cloned().unwrap_or_default(),
            self.faces.get(c[1]).cloned().unwrap_or_default(),
            self.faces.get(c[2]).cloned().unwrap_or_default(),
        )
    }

    /// Rotation order for a circuit: the recorded seam order when the
    /// circuit is the seam, ascending index order otherwise.
    pub(crate) fn resolve_circuit_order(&self, sorted: [usize; 3]) -> [usize; 3] {
        match self.seam {
            Some(s) if {
                let mut t = s;
                t.sort_unstable();
                t == sorted
            } =>
            {
                s
            }
            _ => sorted,
        }
    }

    /// Side-of-the-cut resolution: explicit argument, else the side recorded
    /// by glue, else derived from connectivity.
    pub(crate) fn resolve_side(
        &self,
        sorted: [usize; 3],
        side: Option<&BTreeSet<usize>>,
    ) -> Result<BTreeSet<usize>, CombinatError> {
        match side {
            Some(s) => Ok(s.clone()),
            None => match &self.lower_side {
                Some(s) => Ok(s.clone()),
                None => self.derive_side(sorted),
            },
        }
    }

    /// Derive the side assignment from connectivity: removing the circuit
    /// faces must split the adjacency graph into exactly two components.
    fn derive_side(&self, circuit: [usize; 3]) -> Result<BTreeSet<usize>, CombinatError> {
        let n = self.faces.len();
        let mut comp = vec![usize::MAX; n];
        let mut ncomp = 0;
        for start in 0..n {
            if circuit.contains(&start) || comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = ncomp;
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    if v != u
                        && !circuit.contains(&v)
                        && comp[v] == usize::MAX
                        && self.adjacent(u, v)
                    {
                        comp[v] = ncomp;
                        stack.push(v);
                    }
                }
            }
            ncomp += 1;
        }
        if ncomp != 2 {
            return Err(CombinatError::NoSideAssignment(format!(
                "removing the circuit leaves {ncomp} components (need 2)"
            )));
        }
        // lower = the component NOT containing face 0 (face 0 is upper by
        // convention: the first face keeps its place)
        let upper_comp = comp
            .iter()
            .find(|&&c| c != usize::MAX)
            .copied()
            .ok_or_else(|| CombinatError::NoSideAssignment("no non-circuit faces".into()))?;
        Ok((0..n)
            .filter(|&i| comp[i] != usize::MAX && comp[i] != upper_comp)
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    EulerFailure { v: i64, e: i64, f: i64 },
    VertexNotSpherical { faces: [String; 3] },
    Circuit3NotHyperbolic { faces: [String; 3] },
    Circuit4NotHyperbolic { faces: [String; 4] },
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diagnostic::EulerFailure { v, e, f: fc } => {
                write!(f, "Euler check failed: V - E + F = {} - {} + {} != 2", v, e, fc)
            }
            Diagnostic::VertexNotSpherical { faces } => write!(
                f,
                "vertex ({}, {}, {}) has angle sum <= pi",
                faces[0], faces[1], faces[2]
            ),
            Diagnostic::Circuit3NotHyperbolic { faces } => write!(
                f,
                "prismatic 3-circuit ({}, {}, {}) has angle sum >= pi",
                faces[0], faces[1], faces[2]
            ),
            Diagnostic::Circuit4NotHyperbolic { faces } => write!(
                f,
                "prismatic 4-circuit ({}, {}, {}, {}) has angle sum >= 2 pi",
                faces[0], faces[1], faces[2], faces[3]
            ),
        }
    }
}

/// Find the unique vertex structure: the set of pairwise-adjacent face
/// triples such that every edge lies in exactly two of them, every face's
/// incidences close into a single cycle, and V - E + F = 2.
fn derive_vertices(
    nfaces: usize,
    edges: &BTreeMap<(usize, usize), u32>,
) -> Result<Vec<[usize; 3]>, CombinatError> {
    let adj = |i: usize, j: usize| edges.contains_key(&(i.min(j), i.max(j)));
    // candidate triples
    let mut triples: Vec<[usize; 3]> = Vec::new();
    for i in 0..nfaces {
        for j in i + 1..nfaces {
            if !adj(i, j) {
                continue;
            }
            for k in j + 1..nfaces {
                if adj(i, k) && adj(j, k) {
                    triples.push([i, j, k]);
                }
            }
        }
    }
    let edge_ids: BTreeMap<(usize, usize), usize> =
        edges.keys().enumerate().map(|(n, &e)| (e, n)).collect();
    let ne = edge_ids.len();
    let triple_edges: Vec<[usize; 3]> = triples
        .iter()
        .map(|&[i, j, k]| [edge_ids[&(i, j)], edge_ids[&(i, k)], edge_ids[&(j, k)]])
        .collect();
    // how many triples touch each edge in the tail t..
    let mut remaining = vec![0i32; ne];
    for te in &triple_edges {
        for &e in te {
            remaining[e] += 1;
        }
    }
    let mut chosen = vec![0i32; ne];
    let mut picked: Vec<usize> = Vec::new();
    let mut solutions: Vec<Vec<usize>> = Vec::new();

    fn search(
        t: usize,
        triples: &[[usize; 3]],
        triple_edges: &[[usize; 3]],
        chosen: &mut [i32],
        remaining: &mut [i32],
        picked: &mut Vec<usize>,
        solutions: &mut Vec<Vec<usize>>,
    ) {
        if solutions.len() >= 2 {
            return;
        }
        if t == triples.len() {
            if chosen.iter().all(|&c| c == 2) {
                solutions.push(picked.clone());
            }
            return;
        }
        let te = triple_edges[t];
        for &e in &te {
            remaining[e] -= 1;
        }
        // option 1: skip this triple, if every edge of it can still reach 2
        if te.iter().all(|&e| chosen[e] + remaining[e] >= 2) {
            search(t + 1, triples, triple_edges, chosen, remaining, picked, solutions);
        }
        // option 2: take it, if no edge overflows
        if te.iter().all(|&e| chosen[e] < 2) {
            for &e in &te {
                chosen[e] += 1;
            }
            picked.push(t);
            search(t + 1, triples, triple_edges, chosen, remaining, picked, solutions);
            picked.pop();
            for &e in &te {
                chosen[e] -= 1;
            }
        }
        for &e in &te {
            remaining[e] += 1;
        }
    }
    search(
        0,
        &triples,
        &triple_edges,
        &mut chosen,
        &mut remaining,
        &mut picked,
        &mut solutions,
    );

    // keep only solutions that close every face into a single disk and
    // satisfy Euler
    let valid: Vec<Vec<[usize; 3]>> = solutions
        .iter()
        .map(|sol| sol.iter().map(|&t| triples[t]).collect::<Vec<_>>())
        .filter(|verts| faces_are_disks(nfaces, edges, verts) && closed_euler(nfaces, edges, verts))
        .collect();
    match valid.len() {
        0 => Err(CombinatError::NotPolyhedral(
            "no consistent trivalent vertex structure".into(),
        )),
        1 => Ok(valid.into_iter().next().unwrap()),
        _ => Err(CombinatError::AmbiguousStructure),
    }
}

fn closed_euler(
    nfaces: usize,
    edges: &BTreeMap<(usize, usize), u32>,
    verts: &[[usize; 3]],
) -> bool {
    verts.len() as i64 - edges.len() as i64 + nfaces as i64 == 2
}

/// Each face's incident vertices, viewed as edges between its neighbor
/// faces, must form one single cycle visiting each incident edge once.
fn faces_are_disks(
    nfaces: usize,
    edges: &BTreeMap<(usize, usize), u32>,
    verts: &[[usize; 3]],
) -> bool {
    for f in 0..nfaces {
        let nbrs: Vec<usize> = edges
            .keys()
            .filter_map(|&(i, j)| {
                if i == f {
                    Some(j)
                } else if j == f {
                    Some(i)
                } else {
                    None
                }
            })
            .collect();
        if nbrs.len() < 3 {
            return false;
        }
        // local graph: node = neighbor face, edge = vertex containing f
        let mut deg: BTreeMap<usize, usize> = nbrs.iter().map(|&n| (n, 0)).collect();
        let mut local: Vec<(usize, usize)> = Vec::new();
        for v in verts {
            if let Some(p) = v.iter().position(|&x| x == f) {
                let others: Vec<usize> = (0..3).filter(|&i| i != p).map(|i| v[i]).collect();
                let (a, b) = (others[0], others[1]);
                if !deg.contains_key(&a) || !deg.contains_key(&b) {
                    return false;
                }
                *deg.get_mut(&a).unwrap() += 1;
                *deg.get_mut(&b).unwrap() += 1;
                local.push((a, b));
            }
        }
        if local.len() != nbrs.len() || deg.values().any(|&d| d != 2) {
            return false;
        }
        // connectivity of the cycle
        let mut seen = BTreeSet::new();
        let mut stack = vec![nbrs[0]];
        seen.insert(nbrs[0]);
        while let Some(u) = stack.pop() {
            for &(a, b) in &local {
                let w = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != nbrs.len() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetrahedron() -> AngledPolyhedron {
        let faces: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let edges = vec![
            ("a", "b", 2u32),
            ("a", "c", 2),
            ("a", "d", 2),
            ("b", "c", 2),
            ("b", "d", 2),
            ("c", "d", 2),
        ];
        AngledPolyhedron::from_parts(faces, &edges).unwrap()
    }

    fn prism(q: u32) -> AngledPolyhedron {
        let faces: Vec<String> = ["top", "l0", "l1", "l2", "bot"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let edges = vec![
            ("top", "l0", 2u32),
            ("top", "l1", 2),
            ("top", "l2", 2),
            ("bot", "l0", 2),
            ("bot", "l1", 2),
            ("bot", "l2", 2),
            ("l0", "l1", q),
            ("l1", "l2", q),
            ("l2", "l0", q),
        ];
        AngledPolyhedron::from_parts(faces, &edges).unwrap()
    }

    #[test]
    fn tetrahedron_structure() {
        let t = tetrahedron();
        assert_eq!(t.vertices().len(), 4);
        assert_eq!(t.prismatic_3_circuits().len(), 0);
        assert!(t.validate().ok());
    }

    #[test]
    fn prism_structure_and_circuit() {
        let p = prism(4);
        assert_eq!(p.vertices().len(), 6);
        let cs = p.prismatic_3_circuits();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].angle, Some(4));
        let names: Vec<&str> = cs[0].faces.iter().map(|&i| p.faces()[i].as_str()).collect();
        assert_eq!(names, vec!["l0", "l1", "l2"]);
        assert!(p.validate().ok());
    }

    #[test]
    fn prism_q3_fails_validation() {
        let p = prism(3);
        let r = p.validate();
        assert!(!r.ok());
        assert!(matches!(
            r.diagnostics[0],
            Diagnostic::Circuit3NotHyperbolic { .. }
        ));
    }

    #[test]
    fn prism_mutation_is_identity_up_to_relabel() {
        // both caps are symmetric around the circuit: the mutant of a prism
        // is isomorphic to the prism
        let p = prism(5);
        let c = p.prismatic_3_circuits()[0].faces;
        let m = p.mutate(c, None).unwrap();
        assert!(iso::isomorphic(&p, &m));
    }

    #[test]
    fn mutate_rejects_vertex_triple() {
        let t = tetrahedron();
        let err = t.mutate([0, 1, 2], None).unwrap_err();
        assert!(matches!(err, CombinatError::IneligibleCircuit(..)));
    }

    #[test]
    fn face_reorder_preserves_structure() {
        let p = prism(4);
        let r = p.with_face_order(&["bot", "l2", "l1", "l0", "top"]).unwrap();
        assert_eq!(r.faces()[0], "bot");
        assert_eq!(r.vertices().len(), 6);
        assert_eq!(r.edge_angle(1, 2), Some(4));
        assert!(iso::isomorphic(&p, &r));
    }

    #[test]
    fn euler_failure_detected() {
        // two faces only: can't be polyhedral
        let faces: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let err = AngledPolyhedron::from_parts(faces, &[("a", "b", 2u32)]).unwrap_err();
        assert!(matches!(err, CombinatError::NotPolyhedral(_)));
    }
}
