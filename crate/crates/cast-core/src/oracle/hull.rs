//! Exact incremental convex hull, quadratic and degeneracy-tolerant.
//! Test support only: the result feeds the hull-castability property checks.

use super::OracleError;
use crate::kernel::{cross, dot, Vec3};
use crate::mesh::{merge_coplanar, Polyhedron};
use num_traits::{Signed, Zero};
use std::collections::HashMap;

struct HullFace {
    corners: [usize; 3],
    /// Outward normal (right-hand rule over `corners`).
    normal: Vec3,
}

impl HullFace {
    fn new(a: usize, b: usize, c: usize, points: &[Vec3]) -> Self {
        let normal = cross(&points[b].sub(&points[a]), &points[c].sub(&points[a]));
        debug_assert!(!normal.is_zero());
        HullFace {
            corners: [a, b, c],
            normal,
        }
    }

    /// Strictly outside, on the supporting plane, or inside.
    fn side_of(&self, p: &Vec3, points: &[Vec3]) -> std::cmp::Ordering {
        dot(&self.normal, &p.sub(&points[self.corners[0]])).cmp(&crate::kernel::Scalar::zero())
    }

    /// For a coplanar point: inside or on the closed triangle?
    fn contains_coplanar(&self, p: &Vec3, points: &[Vec3]) -> bool {
        let [a, b, c] = self.corners;
        for (u, v) in [(a, b), (b, c), (c, a)] {
            let edge = points[v].sub(&points[u]);
            let to_p = p.sub(&points[u]);
            if dot(&self.normal, &cross(&edge, &to_p)).is_negative() {
                return false;
            }
        }
        true
    }
}

/// Exact convex hull of the points, with coplanar facets merged and inward
/// normals fixed by the usual validation.
pub fn convex_hull(points: &[Vec3]) -> Result<Polyhedron, OracleError> {
    if points.len() < 4 {
        return Err(OracleError::DegenerateInput);
    }
    // Initial simplex from the first four affinely independent points.
    let i0 = 0usize;
    let i1 = points
        .iter()
        .position(|p| *p != points[i0])
        .ok_or(OracleError::DegenerateInput)?;
    let d01 = points[i1].sub(&points[i0]);
    let i2 = points
        .iter()
        .position(|p| !cross(&d01, &p.sub(&points[i0])).is_zero())
        .ok_or(OracleError::DegenerateInput)?;
    let plane_normal = cross(&d01, &points[i2].sub(&points[i0]));
    let i3 = points
        .iter()
        .position(|p| !dot(&plane_normal, &p.sub(&points[i0])).is_zero())
        .ok_or(OracleError::DegenerateInput)?;
    let (i2, i3) = if dot(&plane_normal, &points[i3].sub(&points[i0])).is_negative() {
        (i3, i2)
    } else {
        (i2, i3)
    };
    // With orient(i0,i1,i2,i3) > 0 these four faces wind outward.
    let mut faces = vec![
        HullFace::new(i0, i2, i1, points),
        HullFace::new(i0, i1, i3, points),
        HullFace::new(i1, i2, i3, points),
        HullFace::new(i2, i0, i3, points),
    ];

    for (pi, p) in points.iter().enumerate() {
        if [i0, i1, i2, i3].contains(&pi) {
            continue;
        }
        let sides: Vec<std::cmp::Ordering> =
            faces.iter().map(|f| f.side_of(p, points)).collect();
        // A point lying inside some face is on the hull already; it must not
        // be treated as extending the sibling faces of that plane.
        let on_boundary = faces
            .iter()
            .zip(&sides)
            .any(|(f, s)| *s == std::cmp::Ordering::Equal && f.contains_coplanar(p, points));
        if on_boundary {
            continue;
        }
        // Otherwise coplanar faces never contain p, so p extends the hull
        // within their plane exactly when it is outside them all.
        let visible: Vec<bool> = sides
            .iter()
            .map(|s| *s != std::cmp::Ordering::Less)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        // Horizon: directed edges of visible faces whose twin is invisible.
        let mut twin_visible: HashMap<(usize, usize), bool> = HashMap::new();
        for (f, face) in faces.iter().enumerate() {
            let [a, b, c] = face.corners;
            for (u, v) in [(a, b), (b, c), (c, a)] {
                twin_visible.insert((u, v), visible[f]);
            }
        }
        let mut new_faces: Vec<HullFace> = Vec::new();
        for (f, face) in faces.iter().enumerate() {
            if !visible[f] {
                continue;
            }
            let [a, b, c] = face.corners;
            for (u, v) in [(a, b), (b, c), (c, a)] {
                let twin = twin_visible
                    .get(&(v, u))
                    .copied()
                    .expect("closed triangulation");
                if !twin {
                    new_faces.push(HullFace::new(u, v, pi, points));
                }
            }
        }
        let mut kept: Vec<HullFace> = faces
            .drain(..)
            .zip(&visible)
            .filter_map(|(f, &vis)| (!vis).then_some(f))
            .collect();
        kept.append(&mut new_faces);
        faces = kept;
    }

    // Compact to referenced vertices and hand off to the mesh validator.
    let mut remap: HashMap<usize, usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut boundaries = Vec::with_capacity(faces.len());
    for face in &faces {
        let boundary = face
            .corners
            .iter()
            .map(|&c| {
                *remap.entry(c).or_insert_with(|| {
                    vertices.push(points[c].clone());
                    vertices.len() - 1
                })
            })
            .collect();
        boundaries.push(boundary);
    }
    let triangulated =
        Polyhedron::from_parts(vertices, boundaries).expect("hull surface is manifold");
    Ok(merge_coplanar(&triangulated).expect("hull facets are convex"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::mesh::is_convex;

    fn cube_corners() -> Vec<Vec3> {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(Vec3::from_ints(x, y, z));
                }
            }
        }
        pts
    }

    #[test]
    fn hull_of_cube_corners_is_the_cube() {
        let hull = convex_hull(&cube_corners()).unwrap();
        assert_eq!(hull.facets.len(), 6);
        assert_eq!(hull.vertices.len(), 8);
        assert!(is_convex(&hull));
    }

    #[test]
    fn interior_points_are_absorbed() {
        let mut pts = cube_corners();
        // Center (doubled coordinates to stay integer): use (1,1,1)-ish point
        // by scaling the cube up instead.
        for p in &mut pts {
            *p = p.scale(&crate::kernel::rat(2));
        }
        pts.push(Vec3::from_ints(1, 1, 1));
        let hull = convex_hull(&pts).unwrap();
        assert_eq!(hull.facets.len(), 6);
        assert_eq!(hull.vertices.len(), 8);
    }

    #[test]
    fn hull_ignores_concave_notch_vertices() {
        // All vertices of the grooved cube hull to the plain 6-cube.
        let grooved = fixtures::grooved_cube();
        let hull = convex_hull(&grooved.vertices).unwrap();
        assert_eq!(hull.facets.len(), 6);
        assert!(is_convex(&hull));
    }

    #[test]
    fn coplanar_extension_points_are_kept() {
        // Points on the cube's top plane but outside the initial top facet.
        let mut pts = cube_corners();
        pts.push(Vec3::from_ints(3, 0, 1));
        let hull = convex_hull(&pts).unwrap();
        assert!(is_convex(&hull));
        let total: usize = hull.facets.iter().map(|f| f.boundary.len()).sum();
        assert!(total > 0);
        assert!(hull
            .facets
            .iter()
            .any(|f| f.boundary.iter().any(|&v| hull.vertices[v] == Vec3::from_ints(3, 0, 1))));
    }

    #[test]
    fn coplanar_input_is_degenerate() {
        let pts: Vec<Vec3> = (0..6)
            .map(|i| Vec3::from_ints(i, i * i, 0))
            .collect();
        assert_eq!(convex_hull(&pts), Err(OracleError::DegenerateInput));
    }

    #[test]
    fn duplicate_points_are_harmless() {
        let mut pts = cube_corners();
        pts.extend(cube_corners());
        let hull = convex_hull(&pts).unwrap();
        assert_eq!(hull.facets.len(), 6);
    }

    #[test]
    fn random_hulls_are_convex_and_closed() {
        for seed in 0..8 {
            let hull = fixtures::random_hull(seed, 40);
            assert!(is_convex(&hull), "seed {seed}");
            let v = hull.referenced_vertex_count() as i64;
            let e = hull.edge_count() as i64;
            let f = hull.facets.len() as i64;
            assert_eq!(v - e + f, 2);
        }
    }
}
