//! Planar geometry predicates shared by mesh validation, neighborhood
//! queries and the isoparametric mapping.

use crate::math::{self, Vec2};

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Vec2,
    pub max: Vec2,
}

impl Aabb {
    pub fn of_points(points: &[Vec2]) -> Self {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                min[k] = min[k].min(p[k]);
                max[k] = max[k].max(p[k]);
            }
        }
        Aabb { min, max }
    }

    /// Separation distance between two boxes; 0 when they overlap.
    pub fn gap(&self, other: &Aabb) -> f64 {
        let mut d2 = 0.0;
        for k in 0..2 {
            let g = (self.min[k] - other.max[k]).max(other.min[k] - self.max[k]).max(0.0);
            d2 += g * g;
        }
        math::sqrt(d2)
    }
}

/// Shoelace area of a polygon; positive for counter-clockwise order.
pub fn polygon_area(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    let mut two_a = 0.0;
    for i in 0..n {
        let j = (i + 1) % n;
        two_a += math::cross(poly[i], poly[j]);
    }
    0.5 * two_a
}

/// Bilinear map of the reference square [-1,1]^2 onto a quad given by its
/// four corners in counter-clockwise order.
pub fn bilinear_map(corners: &[Vec2; 4], local: Vec2) -> Vec2 {
    let n = shape_quad4(local);
    let mut x = [0.0; 2];
    for a in 0..4 {
        x[0] += n[a] * corners[a][0];
        x[1] += n[a] * corners[a][1];
    }
    x
}

/// Jacobian determinant of the bilinear map at a local coordinate.
pub fn bilinear_detj(corners: &[Vec2; 4], local: Vec2) -> f64 {
    let d = shape_quad4_deriv(local);
    let mut j = [[0.0; 2]; 2]; // j[r][c] = d x_r / d local_c
    for a in 0..4 {
        for r in 0..2 {
            for c in 0..2 {
                j[r][c] += corners[a][r] * d[a][c];
            }
        }
    }
    j[0][0] * j[1][1] - j[0][1] * j[1][0]
}

/// Standard bilinear shape functions on [-1,1]^2, corner order
/// (-1,-1), (1,-1), (1,1), (-1,1).
pub fn shape_quad4(local: Vec2) -> [f64; 4] {
    let (xi, eta) = (local[0], local[1]);
    [
        0.25 * (1.0 - xi) * (1.0 - eta),
        0.25 * (1.0 + xi) * (1.0 - eta),
        0.25 * (1.0 + xi) * (1.0 + eta),
        0.25 * (1.0 - xi) * (1.0 + eta),
    ]
}

/// Derivatives of the bilinear shape functions with respect to the local
/// coordinates; `[a][c]` is dN_a/dlocal_c.
pub fn shape_quad4_deriv(local: Vec2) -> [[f64; 2]; 4] {
    let (xi, eta) = (local[0], local[1]);
    [
        [-0.25 * (1.0 - eta), -0.25 * (1.0 - xi)],
        [0.25 * (1.0 - eta), -0.25 * (1.0 + xi)],
        [0.25 * (1.0 + eta), 0.25 * (1.0 + xi)],
        [-0.25 * (1.0 + eta), 0.25 * (1.0 - xi)],
    ]
}

/// Distance from a point to a closed segment.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = math::sub(b, a);
    let ap = math::sub(p, a);
    let len2 = math::dot(ab, ab);
    if len2 == 0.0 {
        return math::dist(p, a);
    }
    let t = (math::dot(ap, ab) / len2).clamp(0.0, 1.0);
    math::dist(p, math::add(a, math::scale(ab, t)))
}

fn segments_intersect(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let d1 = math::cross(math::sub(b, a), math::sub(c, a));
    let d2 = math::cross(math::sub(b, a), math::sub(d, a));
    let d3 = math::cross(math::sub(d, c), math::sub(a, c));
    let d4 = math::cross(math::sub(d, c), math::sub(b, c));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    // collinear / endpoint touches
    let on = |p: Vec2, q: Vec2, r: Vec2| -> bool {
        math::cross(math::sub(q, p), math::sub(r, p)) == 0.0
            && r[0] >= p[0].min(q[0])
            && r[0] <= p[0].max(q[0])
            && r[1] >= p[1].min(q[1])
            && r[1] <= p[1].max(q[1])
    };
    on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b)
}

/// Distance between two closed segments; 0 when they cross or touch.
pub fn segment_segment_distance(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

/// Point-in-polygon test for a convex counter-clockwise polygon; boundary
/// points count as inside.
pub fn point_in_convex(p: Vec2, poly: &[Vec2]) -> bool {
    let n = poly.len();
    for i in 0..n {
        let j = (i + 1) % n;
        if math::cross(math::sub(poly[j], poly[i]), math::sub(p, poly[i])) < 0.0 {
            return false;
        }
    }
    true
}

/// Minimum Euclidean distance between two closed convex polygons; 0 when
/// they overlap or touch.
pub fn convex_polygon_distance(a: &[Vec2], b: &[Vec2]) -> f64 {
    if a.iter().any(|&p| point_in_convex(p, b)) || b.iter().any(|&p| point_in_convex(p, a)) {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for i in 0..a.len() {
        let (a0, a1) = (a[i], a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            let (b0, b1) = (b[j], b[(j + 1) % b.len()]);
            best = best.min(segment_segment_distance(a0, a1, b0, b1));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_functions_interpolate_corners() {
        let corners = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]];
        for (a, &c) in corners.iter().enumerate() {
            let n = shape_quad4(c);
            for b in 0..4 {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert_eq!(n[b], expect);
            }
        }
    }

    #[test]
    fn unit_square_jacobian() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert!((bilinear_detj(&sq, [0.0, 0.0]) - 0.25).abs() < 1e-15);
        assert_eq!(bilinear_map(&sq, [0.0, 0.0]), [0.5, 0.5]);
    }

    #[test]
    fn segment_distances() {
        // parallel horizontal segments one apart
        let d = segment_segment_distance([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]);
        assert!((d - 1.0).abs() < 1e-15);
        // crossing
        let d = segment_segment_distance([0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]);
        assert_eq!(d, 0.0);
        // touching at an endpoint
        let d = segment_segment_distance([0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [2.0, 1.0]);
        assert_eq!(d, 0.0);
    }

    #[test]
    fn polygon_distance_overlap_and_gap() {
        let a = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let b = [[3.0, 0.0], [4.0, 0.0], [4.0, 1.0], [3.0, 1.0]];
        assert!((convex_polygon_distance(&a, &b) - 2.0).abs() < 1e-15);
        assert_eq!(convex_polygon_distance(&a, &a), 0.0);
        // contained polygon
        let c = [[0.25, 0.25], [0.75, 0.25], [0.75, 0.75], [0.25, 0.75]];
        assert_eq!(convex_polygon_distance(&a, &c), 0.0);
    }
}
