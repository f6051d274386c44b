//! 2D meshes of bilinear quadrilateral continuous elements (CEs), node sets
//! for boundary conditions, and the plain-text mesh format.

pub mod geom;
mod specimen;

pub use specimen::{BeamGeometry, DiskGeometry, PlateGeometry, SpecimenKind};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::math::{self, Vec2};
use geom::Aabb;

/// A mesh node: dense id plus position in mm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub id: usize,
    pub position: Vec2,
}

/// A bilinear quadrilateral element with nodes in counter-clockwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContinuousElement {
    pub id: usize,
    pub node_ids: [usize; 4],
}

/// Mesh of continuous elements plus named node sets.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Mesh {
    pub nodes: Vec<Node>,
    pub elements: Vec<ContinuousElement>,
    pub node_sets: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeshError {
    Parse { line: usize, message: String },
    UnknownNode { element: usize, node: usize },
    DegenerateElement { element: usize, detail: String },
    DuplicateElement { a: usize, b: usize },
    InvalidSet { name: String, node: usize },
    EmptyMesh,
    InvalidElementId { id: usize },
    BadGeometry(String),
}

impl fmt::Display for MeshError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeshError::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            MeshError::UnknownNode { element, node } => {
                write!(f, "element {element} references unknown node {node}")
            }
            MeshError::DegenerateElement { element, detail } => {
                write!(f, "element {element} is degenerate: {detail}")
            }
            MeshError::DuplicateElement { a, b } => {
                write!(f, "elements {a} and {b} share all four nodes")
            }
            MeshError::InvalidSet { name, node } => {
                write!(f, "node set '{name}' references unknown node {node}")
            }
            MeshError::EmptyMesh => write!(f, "mesh has no elements"),
            MeshError::InvalidElementId { id } => write!(f, "invalid element id {id}"),
            MeshError::BadGeometry(msg) => write!(f, "bad geometry: {msg}"),
        }
    }
}

impl core::error::Error for MeshError {}

impl Mesh {
    /// Corner positions of an element, counter-clockwise.
    pub fn element_corners(&self, element: usize) -> [Vec2; 4] {
        let e = &self.elements[element];
        [
            self.nodes[e.node_ids[0]].position,
            self.nodes[e.node_ids[1]].position,
            self.nodes[e.node_ids[2]].position,
            self.nodes[e.node_ids[3]].position,
        ]
    }

    pub fn element_aabb(&self, element: usize) -> Aabb {
        Aabb::of_points(&self.element_corners(element))
    }

    pub fn element_area(&self, element: usize) -> f64 {
        geom::polygon_area(&self.element_corners(element))
    }

    pub fn element_centroid(&self, element: usize) -> Vec2 {
        let c = self.element_corners(element);
        [
            0.25 * (c[0][0] + c[1][0] + c[2][0] + c[3][0]),
            0.25 * (c[0][1] + c[1][1] + c[2][1] + c[3][1]),
        ]
    }

    /// Checks all mesh invariants: dense ids, finite coordinates, valid and
    /// distinct element nodes, positive Jacobians, valid node sets, no
    /// duplicated element.
    pub fn validate(&self) -> Result<(), MeshError> {
        for (i, n) in self.nodes.iter().enumerate() {
            if n.id != i {
                return Err(MeshError::Parse {
                    line: 0,
                    message: format!("node ids not dense: expected {i}, found {}", n.id),
                });
            }
            if !n.position[0].is_finite() || !n.position[1].is_finite() {
                return Err(MeshError::Parse {
                    line: 0,
                    message: format!("node {i} has non-finite position"),
                });
            }
        }
        let mut seen: BTreeMap<[usize; 4], usize> = BTreeMap::new();
        for (i, e) in self.elements.iter().enumerate() {
            if e.id != i {
                return Err(MeshError::InvalidElementId { id: e.id });
            }
            for &nid in &e.node_ids {
                if nid >= self.nodes.len() {
                    return Err(MeshError::UnknownNode { element: i, node: nid });
                }
            }
            for a in 0..4 {
                for b in (a + 1)..4 {
                    if e.node_ids[a] == e.node_ids[b] {
                        return Err(MeshError::DegenerateElement {
                            element: i,
                            detail: format!("repeated node {}", e.node_ids[a]),
                        });
                    }
                }
            }
            // detJ of the bilinear map is linear in each local coordinate, so
            // positivity at the four corners implies positivity on the whole
            // reference square (hence at every Gauss point).
            let corners = self.element_corners(i);
            for lc in [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]] {
                let det = geom::bilinear_detj(&corners, lc);
                if det <= 0.0 {
                    return Err(MeshError::DegenerateElement {
                        element: i,
                        detail: format!("non-positive Jacobian {det} at corner {lc:?}"),
                    });
                }
            }
            let mut key = e.node_ids;
            key.sort_unstable();
            if let Some(&other) = seen.get(&key) {
                return Err(MeshError::DuplicateElement { a: other, b: i });
            }
            seen.insert(key, i);
        }
        for (name, ids) in &self.node_sets {
            for &nid in ids {
                if nid >= self.nodes.len() {
                    return Err(MeshError::InvalidSet { name: name.clone(), node: nid });
                }
            }
        }
        Ok(())
    }
}

/// Mean over elements of sqrt(element area).
pub fn average_element_size(mesh: &Mesh) -> Result<f64, MeshError> {
    if mesh.elements.is_empty() {
        return Err(MeshError::EmptyMesh);
    }
    let sum: f64 = (0..mesh.elements.len())
        .map(|e| math::sqrt(mesh.element_area(e)))
        .sum();
    Ok(sum / mesh.elements.len() as f64)
}

/// Minimum Euclidean distance between two closed elements; 0 when they touch
/// or overlap.
pub fn element_distance(mesh: &Mesh, ei: usize, ej: usize) -> Result<f64, MeshError> {
    if ei >= mesh.elements.len() {
        return Err(MeshError::InvalidElementId { id: ei });
    }
    if ej >= mesh.elements.len() {
        return Err(MeshError::InvalidElementId { id: ej });
    }
    if ei == ej {
        return Ok(0.0);
    }
    let a = mesh.element_corners(ei);
    let b = mesh.element_corners(ej);
    Ok(geom::convex_polygon_distance(&a, &b))
}

/// Structured rectangular grid of nx-by-ny elements with boundary node sets
/// "left", "right", "bottom", "top".
pub fn generate_rect_mesh(width: f64, height: f64, nx: usize, ny: usize) -> Result<Mesh, MeshError> {
    if nx == 0 || ny == 0 {
        return Err(MeshError::BadGeometry("element counts must be at least 1".to_string()));
    }
    if !(width > 0.0) || !(height > 0.0) {
        return Err(MeshError::BadGeometry("width and height must be positive".to_string()));
    }
    let mut mesh = Mesh::default();
    let dx = width / nx as f64;
    let dy = height / ny as f64;
    for iy in 0..=ny {
        for ix in 0..=nx {
            let id = iy * (nx + 1) + ix;
            mesh.nodes.push(Node { id, position: [ix as f64 * dx, iy as f64 * dy] });
        }
    }
    let nid = |ix: usize, iy: usize| iy * (nx + 1) + ix;
    for ey in 0..ny {
        for ex in 0..nx {
            let id = ey * nx + ex;
            mesh.elements.push(ContinuousElement {
                id,
                node_ids: [nid(ex, ey), nid(ex + 1, ey), nid(ex + 1, ey + 1), nid(ex, ey + 1)],
            });
        }
    }
    let left = (0..=ny).map(|iy| nid(0, iy)).collect();
    let right = (0..=ny).map(|iy| nid(nx, iy)).collect();
    let bottom = (0..=nx).map(|ix| nid(ix, 0)).collect();
    let top = (0..=nx).map(|ix| nid(ix, ny)).collect();
    mesh.node_sets.insert("left".to_string(), left);
    mesh.node_sets.insert("right".to_string(), right);
    mesh.node_sets.insert("bottom".to_string(), bottom);
    mesh.node_sets.insert("top".to_string(), top);
    mesh.validate()?;
    Ok(mesh)
}

/// Specimen meshes with geometric (element-free) notches and the loading /
/// support node sets used by the scenario presets.
pub fn generate_specimen_mesh(kind: &SpecimenKind) -> Result<Mesh, MeshError> {
    specimen::generate(kind)
}

const MESH_HEADER: &str = "peri-fem-mesh v1";

struct Tokens<'a> {
    /// (line number, token)
    toks: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut toks = Vec::new();
        for (li, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for t in line.split_whitespace() {
                toks.push((li + 1, t));
            }
        }
        Tokens { toks, pos: 0 }
    }

    fn line(&self) -> usize {
        if self.pos < self.toks.len() {
            self.toks[self.pos].0
        } else {
            self.toks.last().map(|t| t.0).unwrap_or(1)
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str, MeshError> {
        match self.toks.get(self.pos) {
            Some(&(_, t)) => {
                self.pos += 1;
                Ok(t)
            }
            None => Err(MeshError::Parse {
                line: self.line(),
                message: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    fn peek(&self) -> Option<&'a str> {
        self.toks.get(self.pos).map(|&(_, t)| t)
    }

    fn usize(&mut self, what: &str) -> Result<usize, MeshError> {
        let line = self.line();
        let t = self.next(what)?;
        t.parse().map_err(|_| MeshError::Parse {
            line,
            message: format!("expected {what}, found '{t}'"),
        })
    }

    fn f64(&mut self, what: &str) -> Result<f64, MeshError> {
        let line = self.line();
        let t = self.next(what)?;
        t.parse().map_err(|_| MeshError::Parse {
            line,
            message: format!("expected {what}, found '{t}'"),
        })
    }
}

/// Parses the plain-text mesh format and validates all mesh invariants.
///
/// Format: header line `peri-fem-mesh v1`, a `NODES <n>` section of
/// `<id> <x> <y>` lines, an `ELEMENTS <m>` section of
/// `<id> <n0> <n1> <n2> <n3>` lines, then optional `NODESET <name> <k>`
/// sections listing k node ids. Whitespace-delimited; `#` starts a comment.
pub fn load_mesh(text: &str) -> Result<Mesh, MeshError> {
    let mut tk = Tokens::new(text);
    let line = tk.line();
    let (a, b) = (tk.next("header")?, tk.next("header")?);
    if a != "peri-fem-mesh" || b != "v1" {
        return Err(MeshError::Parse {
            line,
            message: format!("expected header '{MESH_HEADER}'"),
        });
    }

    let line = tk.line();
    let kw = tk.next("NODES")?;
    if kw != "NODES" {
        return Err(MeshError::Parse { line, message: format!("expected NODES, found '{kw}'") });
    }
    let n = tk.usize("node count")?;
    let mut mesh = Mesh::default();
    for i in 0..n {
        let line = tk.line();
        let id = tk.usize("node id")?;
        if id != i {
            return Err(MeshError::Parse {
                line,
                message: format!("node ids must be dense and in order: expected {i}, found {id}"),
            });
        }
        let x = tk.f64("x coordinate")?;
        let y = tk.f64("y coordinate")?;
        mesh.nodes.push(Node { id, position: [x, y] });
    }

    let line = tk.line();
    let kw = tk.next("ELEMENTS")?;
    if kw != "ELEMENTS" {
        return Err(MeshError::Parse { line, message: format!("expected ELEMENTS, found '{kw}'") });
    }
    let m = tk.usize("element count")?;
    for i in 0..m {
        let line = tk.line();
        let id = tk.usize("element id")?;
        if id != i {
            return Err(MeshError::Parse {
                line,
                message: format!("element ids must be dense and in order: expected {i}, found {id}"),
            });
        }
        let mut node_ids = [0usize; 4];
        for slot in &mut node_ids {
            *slot = tk.usize("node id")?;
        }
        mesh.elements.push(ContinuousElement { id, node_ids });
    }

    while let Some(kw) = tk.peek() {
        let line = tk.line();
        if kw != "NODESET" {
            return Err(MeshError::Parse {
                line,
                message: format!("expected NODESET or end of file, found '{kw}'"),
            });
        }
        tk.next("NODESET")?;
        let name = tk.next("set name")?.to_string();
        let k = tk.usize("set size")?;
        let mut ids = Vec::with_capacity(k);
        for _ in 0..k {
            ids.push(tk.usize("node id")?);
        }
        mesh.node_sets.insert(name, ids);
    }

    mesh.validate()?;
    Ok(mesh)
}

/// Writes the canonical text form; `load_mesh(write_mesh(m))` reproduces `m`.
pub fn write_mesh(mesh: &Mesh) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MESH_HEADER}");
    let _ = writeln!(out, "NODES {}", mesh.nodes.len());
    for n in &mesh.nodes {
        let _ = writeln!(out, "{} {} {}", n.id, n.position[0], n.position[1]);
    }
    let _ = writeln!(out, "ELEMENTS {}", mesh.elements.len());
    for e in &mesh.elements {
        let _ = writeln!(
            out,
            "{} {} {} {} {}",
            e.id, e.node_ids[0], e.node_ids[1], e.node_ids[2], e.node_ids[3]
        );
    }
    for (name, ids) in &mesh.node_sets {
        let _ = writeln!(out, "NODESET {} {}", name, ids.len());
        for chunk in ids.chunks(16) {
            let mut line = String::new();
            for id in chunk {
                if !line.is_empty() {
                    line.push(' ');
                }
                let _ = write!(line, "{id}");
            }
            let _ = writeln!(out, "{line}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square_text() -> &'static str {
        "peri-fem-mesh v1\n\
         # smallest valid mesh\n\
         NODES 4\n\
         0 0 0\n\
         1 1 0\n\
         2 1 1\n\
         3 0 1\n\
         ELEMENTS 1\n\
         0 0 1 2 3\n\
         NODESET corner 1\n\
         0\n"
    }

    #[test]
    fn load_smallest_mesh() {
        let mesh = load_mesh(unit_square_text()).unwrap();
        assert_eq!(mesh.nodes.len(), 4);
        assert_eq!(mesh.elements.len(), 1);
        assert_eq!(mesh.node_sets["corner"], vec![0]);
    }

    #[test]
    fn unknown_node_is_rejected() {
        let text = "peri-fem-mesh v1\nNODES 4\n0 0 0\n1 1 0\n2 1 1\n3 0 1\nELEMENTS 1\n0 0 1 2 9\n";
        let err = load_mesh(text).unwrap_err();
        assert_eq!(err, MeshError::UnknownNode { element: 0, node: 9 });
    }

    #[test]
    fn negative_jacobian_is_rejected_with_element_id() {
        // clockwise corner order flips the Jacobian sign
        let text = "peri-fem-mesh v1\nNODES 4\n0 0 0\n1 1 0\n2 1 1\n3 0 1\nELEMENTS 1\n0 0 3 2 1\n";
        match load_mesh(text).unwrap_err() {
            MeshError::DegenerateElement { element: 0, .. } => {}
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_error_carries_line_number() {
        let text = "peri-fem-mesh v1\nNODES 2\n0 0 zero\n";
        match load_mesh(text).unwrap_err() {
            MeshError::Parse { line: 3, .. } => {}
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn write_load_round_trip() {
        let mesh = load_mesh(unit_square_text()).unwrap();
        let text = write_mesh(&mesh);
        let again = load_mesh(&text).unwrap();
        assert_eq!(mesh, again);
    }

    #[test]
    fn rect_mesh_counts() {
        let m = generate_rect_mesh(1.0, 1.0, 1, 1).unwrap();
        assert_eq!(m.nodes.len(), 4);
        assert_eq!(m.elements.len(), 1);

        let m = generate_rect_mesh(2.0, 1.0, 2, 1).unwrap();
        assert_eq!(m.nodes.len(), 6);
        assert_eq!(m.elements.len(), 2);
        let shared: Vec<usize> = m.elements[0]
            .node_ids
            .iter()
            .filter(|id| m.elements[1].node_ids.contains(id))
            .copied()
            .collect();
        assert_eq!(shared.len(), 2);
    }

    #[test]
    fn rect_mesh_rejects_zero_counts() {
        assert!(generate_rect_mesh(1.0, 1.0, 0, 1).is_err());
        assert!(generate_rect_mesh(1.0, 1.0, 1, 0).is_err());
    }

    #[test]
    fn average_size_uniform_and_mixed() {
        let m = generate_rect_mesh(1.0, 1.0, 1, 1).unwrap();
        assert!((average_element_size(&m).unwrap() - 1.0).abs() < 1e-15);

        let m = generate_rect_mesh(10.0, 10.0, 5, 5).unwrap();
        assert!((average_element_size(&m).unwrap() - 2.0).abs() < 1e-12);

        // one 1 mm^2 and one 4 mm^2 quad -> (1 + 2) / 2
        let text = "peri-fem-mesh v1\nNODES 8\n\
                    0 0 0\n1 1 0\n2 1 1\n3 0 1\n\
                    4 2 0\n5 4 0\n6 4 2\n7 2 2\n\
                    ELEMENTS 2\n0 0 1 2 3\n1 4 5 6 7\n";
        let m = load_mesh(text).unwrap();
        assert!((average_element_size(&m).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn element_distance_cases() {
        let m = generate_rect_mesh(2.0, 1.0, 2, 1).unwrap();
        assert_eq!(element_distance(&m, 0, 0).unwrap(), 0.0);
        assert_eq!(element_distance(&m, 0, 1).unwrap(), 0.0); // shared edge

        let text = "peri-fem-mesh v1\nNODES 8\n\
                    0 0 0\n1 1 0\n2 1 1\n3 0 1\n\
                    4 3 0\n5 4 0\n6 4 1\n7 3 1\n\
                    ELEMENTS 2\n0 0 1 2 3\n1 4 5 6 7\n";
        let m = load_mesh(text).unwrap();
        assert!((element_distance(&m, 0, 1).unwrap() - 2.0).abs() < 1e-15);
        assert!(element_distance(&m, 0, 9).is_err());
    }
}
