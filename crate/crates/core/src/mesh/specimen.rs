//! Parametric specimen meshes: a single-edge notched beam for four-point
//! bending, a center-slit Brazilian disk, and a double-edge-notched plate.
//!
//! Notches are geometric: no elements exist inside the slit. Elements whose
//! centroid falls inside the slit rectangle are removed and orphaned nodes
//! are compacted away. Loading and support locations become named node sets.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{generate_rect_mesh, geom, ContinuousElement, Mesh, MeshError, Node};
use crate::math::{self, Vec2};

/// Single-edge notched beam, notch opening on the bottom edge. Supports sit
/// on the bottom edge `support_inset` from each end; the two loading points
/// sit on the top edge `load_halfspan` each side of midspan.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamGeometry {
    pub length: f64,
    pub height: f64,
    /// x position of the notch centerline.
    pub notch_center: f64,
    pub notch_depth: f64,
    pub notch_width: f64,
    pub element_size: f64,
    pub support_inset: f64,
    pub load_halfspan: f64,
    /// Halfwidth for gathering loading/support nodes; 0 selects the single
    /// nearest node.
    pub patch: f64,
}

impl Default for BeamGeometry {
    fn default() -> Self {
        BeamGeometry {
            length: 120.0,
            height: 20.0,
            notch_center: 60.0,
            notch_depth: 6.0,
            notch_width: 2.5,
            element_size: 1.25,
            support_inset: 10.0,
            load_halfspan: 15.0,
            patch: 0.0,
        }
    }
}

/// Brazilian disk with a central horizontal slit, meshed as a structured
/// O-grid (square core plus four arc-mapped ring blocks).
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGeometry {
    pub radius: f64,
    pub slit_half_length: f64,
    pub slit_width: f64,
    pub element_size: f64,
    /// Halfwidth for gathering the loading/support node patches at the top
    /// and bottom poles.
    pub patch: f64,
}

impl Default for DiskGeometry {
    fn default() -> Self {
        DiskGeometry {
            radius: 25.0,
            slit_half_length: 6.0,
            slit_width: 2.4,
            element_size: 1.2,
            patch: 2.0,
        }
    }
}

/// Double-edge-notched plate: two horizontal slits entering from the left
/// and right edges at `notch_y`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlateGeometry {
    pub width: f64,
    pub height: f64,
    pub notch_y: f64,
    /// In-reach length of each slit.
    pub notch_length: f64,
    pub notch_width: f64,
    pub element_size: f64,
}

impl Default for PlateGeometry {
    fn default() -> Self {
        PlateGeometry {
            width: 50.0,
            height: 50.0,
            notch_y: 25.0,
            notch_length: 10.0,
            notch_width: 2.5,
            element_size: 1.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecimenKind {
    NotchedBeam(BeamGeometry),
    BrazilianDisk(DiskGeometry),
    DenPlate(PlateGeometry),
}

pub(super) fn generate(kind: &SpecimenKind) -> Result<Mesh, MeshError> {
    match kind {
        SpecimenKind::NotchedBeam(g) => notched_beam(g),
        SpecimenKind::BrazilianDisk(g) => brazilian_disk(g),
        SpecimenKind::DenPlate(g) => den_plate(g),
    }
}

/// Axis-aligned slit rectangle used for element removal.
#[derive(Debug, Clone, Copy)]
struct Rect {
    min: Vec2,
    max: Vec2,
}

impl Rect {
    fn contains(&self, p: Vec2) -> bool {
        p[0] >= self.min[0] && p[0] <= self.max[0] && p[1] >= self.min[1] && p[1] <= self.max[1]
    }
}

/// Removes elements whose centroid lies in any slit rectangle, then drops
/// orphaned nodes and renumbers everything densely.
fn cut_slits(mesh: &Mesh, slits: &[Rect]) -> (Vec<Node>, Vec<[usize; 4]>) {
    let kept: Vec<[usize; 4]> = mesh
        .elements
        .iter()
        .filter(|e| {
            let c = mesh.element_centroid(e.id);
            !slits.iter().any(|r| r.contains(c))
        })
        .map(|e| e.node_ids)
        .collect();
    let mut used = vec![false; mesh.nodes.len()];
    for quad in &kept {
        for &n in quad {
            used[n] = true;
        }
    }
    let mut remap = vec![usize::MAX; mesh.nodes.len()];
    let mut nodes = Vec::new();
    for (old, node) in mesh.nodes.iter().enumerate() {
        if used[old] {
            remap[old] = nodes.len();
            nodes.push(Node { id: nodes.len(), position: node.position });
        }
    }
    let elements = kept
        .into_iter()
        .map(|q| [remap[q[0]], remap[q[1]], remap[q[2]], remap[q[3]]])
        .collect();
    (nodes, elements)
}

fn assemble_mesh(
    nodes: Vec<Node>,
    quads: Vec<[usize; 4]>,
    node_sets: BTreeMap<String, Vec<usize>>,
) -> Result<Mesh, MeshError> {
    let elements = quads
        .into_iter()
        .enumerate()
        .map(|(id, node_ids)| ContinuousElement { id, node_ids })
        .collect();
    let mesh = Mesh { nodes, elements, node_sets };
    mesh.validate()?;
    Ok(mesh)
}

/// Nodes satisfying `filter`, ranked by distance to `target`: the nearest
/// node always, plus every other candidate within `patch` of the target.
fn gather_nodes(
    nodes: &[Node],
    filter: impl Fn(Vec2) -> bool,
    target: Vec2,
    patch: f64,
) -> Vec<usize> {
    let mut best: Option<(f64, usize)> = None;
    let mut within = Vec::new();
    for n in nodes {
        if !filter(n.position) {
            continue;
        }
        let d = math::dist(n.position, target);
        if best.map_or(true, |(bd, _)| d < bd) {
            best = Some((d, n.id));
        }
        if d <= patch {
            within.push(n.id);
        }
    }
    if let Some((_, id)) = best {
        if !within.contains(&id) {
            within.push(id);
        }
    }
    within.sort_unstable();
    within
}

fn on_line(value: f64, target: f64, tol: f64) -> bool {
    math::abs(value - target) <= tol
}

fn notched_beam(g: &BeamGeometry) -> Result<Mesh, MeshError> {
    if g.notch_depth > 0.0 {
        if g.notch_depth >= g.height
            || g.notch_center - 0.5 * g.notch_width < 0.0
            || g.notch_center + 0.5 * g.notch_width > g.length
        {
            return Err(MeshError::BadGeometry("notch exceeds specimen bounds".to_string()));
        }
        if g.element_size > g.notch_width {
            return Err(MeshError::BadGeometry(
                "element size exceeds notch width".to_string(),
            ));
        }
    }
    let nx = (g.length / g.element_size).round().max(1.0) as usize;
    let ny = (g.height / g.element_size).round().max(1.0) as usize;
    let base = generate_rect_mesh(g.length, g.height, nx, ny)?;

    let slits = if g.notch_depth > 0.0 {
        vec![Rect {
            min: [g.notch_center - 0.5 * g.notch_width, -g.height],
            max: [g.notch_center + 0.5 * g.notch_width, g.notch_depth],
        }]
    } else {
        Vec::new()
    };
    let (nodes, quads) = cut_slits(&base, &slits);

    let tol = 1e-9 * g.height.max(g.length);
    let bottom = |p: Vec2| on_line(p[1], 0.0, tol);
    let top = |p: Vec2| on_line(p[1], g.height, tol);
    let mut sets = BTreeMap::new();
    sets.insert(
        "support_left".to_string(),
        gather_nodes(&nodes, bottom, [g.support_inset, 0.0], g.patch),
    );
    sets.insert(
        "support_right".to_string(),
        gather_nodes(&nodes, bottom, [g.length - g.support_inset, 0.0], g.patch),
    );
    sets.insert(
        "load_left".to_string(),
        gather_nodes(&nodes, top, [0.5 * g.length - g.load_halfspan, g.height], g.patch),
    );
    sets.insert(
        "load_right".to_string(),
        gather_nodes(&nodes, top, [0.5 * g.length + g.load_halfspan, g.height], g.patch),
    );
    assemble_mesh(nodes, quads, sets)
}

fn den_plate(g: &PlateGeometry) -> Result<Mesh, MeshError> {
    if g.notch_length > 0.0 {
        if 2.0 * g.notch_length >= g.width
            || g.notch_y - 0.5 * g.notch_width <= 0.0
            || g.notch_y + 0.5 * g.notch_width >= g.height
        {
            return Err(MeshError::BadGeometry("notch exceeds specimen bounds".to_string()));
        }
        if g.element_size > g.notch_width {
            return Err(MeshError::BadGeometry(
                "element size exceeds notch width".to_string(),
            ));
        }
    }
    let nx = (g.width / g.element_size).round().max(1.0) as usize;
    let ny = (g.height / g.element_size).round().max(1.0) as usize;
    let base = generate_rect_mesh(g.width, g.height, nx, ny)?;

    let slits = if g.notch_length > 0.0 {
        vec![
            Rect {
                min: [-g.width, g.notch_y - 0.5 * g.notch_width],
                max: [g.notch_length, g.notch_y + 0.5 * g.notch_width],
            },
            Rect {
                min: [g.width - g.notch_length, g.notch_y - 0.5 * g.notch_width],
                max: [2.0 * g.width, g.notch_y + 0.5 * g.notch_width],
            },
        ]
    } else {
        Vec::new()
    };
    let (nodes, quads) = cut_slits(&base, &slits);

    let tol = 1e-9 * g.width.max(g.height);
    let mut sets = BTreeMap::new();
    let edge = |axis: usize, value: f64| {
        let mut ids: Vec<usize> = nodes
            .iter()
            .filter(|n| on_line(n.position[axis], value, tol))
            .map(|n| n.id)
            .collect();
        ids.sort_unstable();
        ids
    };
    let top = edge(1, g.height);
    let bottom = edge(1, 0.0);
    // lateral (shear) edges exclude the corner nodes owned by top/bottom
    let lateral = |value: f64| -> Vec<usize> {
        edge(0, value)
            .into_iter()
            .filter(|id| !top.contains(id) && !bottom.contains(id))
            .collect()
    };
    sets.insert("left".to_string(), lateral(0.0));
    sets.insert("right".to_string(), lateral(g.width));
    sets.insert("top".to_string(), top);
    sets.insert("bottom".to_string(), bottom);
    assemble_mesh(nodes, quads, sets)
}

/// Tolerant node dedup for welding structured blocks together.
struct Welder {
    nodes: Vec<Node>,
    buckets: BTreeMap<(i64, i64), Vec<usize>>,
    eps: f64,
}

impl Welder {
    fn new(eps: f64) -> Self {
        Welder { nodes: Vec::new(), buckets: BTreeMap::new(), eps }
    }

    fn key(&self, p: Vec2) -> (i64, i64) {
        (
            math::round(p[0] / self.eps) as i64,
            math::round(p[1] / self.eps) as i64,
        )
    }

    fn node_at(&mut self, p: Vec2) -> usize {
        let (kx, ky) = self.key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.buckets.get(&(kx + dx, ky + dy)) {
                    for &id in ids {
                        if math::dist(self.nodes[id].position, p) <= self.eps {
                            return id;
                        }
                    }
                }
            }
        }
        let id = self.nodes.len();
        self.nodes.push(Node { id, position: p });
        self.buckets.entry((kx, ky)).or_default().push(id);
        id
    }
}

fn brazilian_disk(g: &DiskGeometry) -> Result<Mesh, MeshError> {
    let r = g.radius;
    if !(r > 0.0) {
        return Err(MeshError::BadGeometry("disk radius must be positive".to_string()));
    }
    if g.slit_half_length > 0.0 {
        if g.slit_half_length + g.slit_width >= r {
            return Err(MeshError::BadGeometry("slit exceeds disk bounds".to_string()));
        }
        if g.element_size > g.slit_width {
            return Err(MeshError::BadGeometry(
                "element size exceeds slit width".to_string(),
            ));
        }
    }

    // square core of half-side s, four ring blocks mapped inner-side -> arc
    let s = 0.5 * r;
    let n_c = {
        let half = (s / g.element_size).round().max(1.0) as usize;
        2 * half
    };
    let n_r = ((r - s) / g.element_size).round().max(1.0) as usize;

    let mut weld = Welder::new(1e-9 * r);
    let mut quads: Vec<[usize; 4]> = Vec::new();
    let mut push_quad = |weld: &mut Welder, quads: &mut Vec<[usize; 4]>, corners: [Vec2; 4]| {
        let c = if geom::polygon_area(&corners) < 0.0 {
            [corners[0], corners[3], corners[2], corners[1]]
        } else {
            corners
        };
        quads.push([
            weld.node_at(c[0]),
            weld.node_at(c[1]),
            weld.node_at(c[2]),
            weld.node_at(c[3]),
        ]);
    };

    // core block
    let core = |i: usize, j: usize| -> Vec2 {
        [
            -s + 2.0 * s * (i as f64 / n_c as f64),
            -s + 2.0 * s * (j as f64 / n_c as f64),
        ]
    };
    for j in 0..n_c {
        for i in 0..n_c {
            push_quad(
                &mut weld,
                &mut quads,
                [core(i, j), core(i + 1, j), core(i + 1, j + 1), core(i, j + 1)],
            );
        }
    }

    // ring blocks: inner side (A -> B, counter-clockwise) mapped to a quarter arc
    let sides: [([f64; 2], [f64; 2], f64); 4] = [
        ([s, -s], [s, s], -core::f64::consts::FRAC_PI_4),
        ([s, s], [-s, s], core::f64::consts::FRAC_PI_4),
        ([-s, s], [-s, -s], 3.0 * core::f64::consts::FRAC_PI_4),
        ([-s, -s], [s, -s], 5.0 * core::f64::consts::FRAC_PI_4),
    ];
    for (a, b, theta0) in sides {
        let point = |iu: usize, iv: usize| -> Vec2 {
            let u = iu as f64 / n_c as f64;
            let v = iv as f64 / n_r as f64;
            let inner = [a[0] + (b[0] - a[0]) * u, a[1] + (b[1] - a[1]) * u];
            let theta = theta0 + u * core::f64::consts::FRAC_PI_2;
            let outer = [r * math::cos(theta), r * math::sin(theta)];
            [
                (1.0 - v) * inner[0] + v * outer[0],
                (1.0 - v) * inner[1] + v * outer[1],
            ]
        };
        for iv in 0..n_r {
            for iu in 0..n_c {
                push_quad(
                    &mut weld,
                    &mut quads,
                    [
                        point(iu, iv),
                        point(iu + 1, iv),
                        point(iu + 1, iv + 1),
                        point(iu, iv + 1),
                    ],
                );
            }
        }
    }

    let full = assemble_mesh(weld.nodes, quads, BTreeMap::new())?;
    let slits = if g.slit_half_length > 0.0 {
        vec![Rect {
            min: [-g.slit_half_length, -0.5 * g.slit_width],
            max: [g.slit_half_length, 0.5 * g.slit_width],
        }]
    } else {
        Vec::new()
    };
    let (nodes, quads) = cut_slits(&full, &slits);

    let mut sets = BTreeMap::new();
    sets.insert(
        "load_top".to_string(),
        gather_nodes(&nodes, |_| true, [0.0, r], g.patch),
    );
    sets.insert(
        "support_bottom".to_string(),
        gather_nodes(&nodes, |_| true, [0.0, -r], g.patch),
    );
    assemble_mesh(nodes, quads, sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::average_element_size;

    #[test]
    fn zero_depth_notch_matches_plain_rectangle() {
        let g = BeamGeometry { notch_depth: 0.0, ..BeamGeometry::default() };
        let beam = generate(&SpecimenKind::NotchedBeam(g.clone())).unwrap();
        let nx = (g.length / g.element_size).round() as usize;
        let ny = (g.height / g.element_size).round() as usize;
        let rect = generate_rect_mesh(g.length, g.height, nx, ny).unwrap();
        assert_eq!(beam.nodes.len(), rect.nodes.len());
        assert_eq!(beam.elements.len(), rect.elements.len());
    }

    #[test]
    fn notched_beam_removes_material_and_names_sets() {
        let g = BeamGeometry::default();
        let beam = generate(&SpecimenKind::NotchedBeam(g.clone())).unwrap();
        let solid = generate(&SpecimenKind::NotchedBeam(BeamGeometry {
            notch_depth: 0.0,
            ..g.clone()
        }))
        .unwrap();
        assert!(beam.elements.len() < solid.elements.len());
        for set in ["support_left", "support_right", "load_left", "load_right"] {
            assert!(!beam.node_sets[set].is_empty(), "missing {set}");
        }
        // supports on the bottom edge, loads on the top edge
        for &n in &beam.node_sets["support_left"] {
            assert_eq!(beam.nodes[n].position[1], 0.0);
        }
        for &n in &beam.node_sets["load_right"] {
            assert_eq!(beam.nodes[n].position[1], g.height);
        }
    }

    #[test]
    fn beam_rejects_bad_notch() {
        let g = BeamGeometry { notch_depth: 30.0, ..BeamGeometry::default() };
        assert!(generate(&SpecimenKind::NotchedBeam(g)).is_err());
        let g = BeamGeometry { element_size: 5.0, ..BeamGeometry::default() };
        assert!(generate(&SpecimenKind::NotchedBeam(g)).is_err());
    }

    #[test]
    fn den_plate_removes_material() {
        let g = PlateGeometry::default();
        let plate = generate(&SpecimenKind::DenPlate(g.clone())).unwrap();
        let solid = generate(&SpecimenKind::DenPlate(PlateGeometry {
            notch_length: 0.0,
            ..g.clone()
        }))
        .unwrap();
        assert!(plate.elements.len() < solid.elements.len());
        for set in ["top", "bottom", "left", "right"] {
            assert!(!plate.node_sets[set].is_empty());
        }
        // lateral sets exclude the shared corner nodes
        for &n in &plate.node_sets["left"] {
            assert!(!plate.node_sets["top"].contains(&n));
            assert!(!plate.node_sets["bottom"].contains(&n));
        }
    }

    #[test]
    fn disk_mesh_is_valid_and_near_target_size() {
        let g = DiskGeometry::default();
        let disk = generate(&SpecimenKind::BrazilianDisk(g.clone())).unwrap();
        disk.validate().unwrap();
        let h = average_element_size(&disk).unwrap();
        assert!(h > 0.5 * g.element_size && h < 2.0 * g.element_size, "h = {h}");
        assert!(!disk.node_sets["load_top"].is_empty());
        assert!(!disk.node_sets["support_bottom"].is_empty());
        // every node stays inside the disk
        for n in &disk.nodes {
            assert!(math::norm(n.position) <= g.radius * (1.0 + 1e-12));
        }
    }
}
