//! Built-in meshes: demo presets and the shared test corpus.
//!
//! Everything here has exact integer or small-rational coordinates and is
//! deterministic (generators take an explicit seed).

use crate::kernel::Vec3;
use crate::mesh::{load_off, merge_coplanar, Polyhedron};
use crate::oracle::convex_hull;
use crate::rng::SplitMix64;
use std::collections::BTreeSet;

pub const CUBE_OFF: &str = "\
OFF
8 6 12
0 0 0
1 0 0
1 1 0
0 1 0
0 0 1
1 0 1
1 1 1
0 1 1
4 0 3 2 1
4 4 5 6 7
4 0 1 5 4
4 1 2 6 5
4 2 3 7 6
4 3 0 4 7
";

pub const TRIANGULATED_CUBE_OFF: &str = "\
OFF
8 12 18
0 0 0
1 0 0
1 1 0
0 1 0
0 0 1
1 0 1
1 1 1
0 1 1
3 0 3 2
3 0 2 1
3 4 5 6
3 4 6 7
3 0 1 5
3 0 5 4
3 1 2 6
3 1 6 5
3 2 3 7
3 2 7 6
3 3 0 4
3 3 4 7
";

/// Base `[0,1]^2` at z = 0, apex at (1/2, 1/2, 1).
pub const SQUARE_PYRAMID_OFF: &str = "\
OFF
5 5 8
0 0 0
1 0 0
1 1 0
0 1 0
0.5 0.5 1
4 0 3 2 1
3 0 1 4
3 1 2 4
3 2 3 4
3 3 0 4
";

/// The same pyramid with a triangulated base.
pub const TRIANGULATED_PYRAMID_OFF: &str = "\
OFF
5 6 9
0 0 0
1 0 0
1 1 0
0 1 0
0.5 0.5 1
3 0 3 2
3 0 2 1
3 0 1 4
3 1 2 4
3 2 3 4
3 3 0 4
";

pub fn cube() -> Polyhedron {
    load_off(CUBE_OFF).expect("cube fixture is valid")
}

pub fn square_pyramid() -> Polyhedron {
    load_off(SQUARE_PYRAMID_OFF).expect("pyramid fixture is valid")
}

/// Cube OFF text with one facet's winding reversed (invalid orientation).
pub fn cube_off_with_reversed_facet() -> String {
    CUBE_OFF.replacen("4 4 5 6 7", "4 7 6 5 4", 1)
}

/// Two tetrahedra glued along a single edge: a non-manifold OFF.
pub fn two_tetrahedra_sharing_an_edge_off() -> String {
    "OFF\n6 8 12\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n-1 0 0\n0 -1 0\n\
3 0 2 1\n3 0 1 3\n3 1 2 3\n3 2 0 3\n3 0 5 4\n3 0 4 3\n3 4 5 3\n3 5 0 3\n"
        .to_string()
}

/// Triangular prism lying on its rectangular base: the base's pull-out
/// directions form a one-dimensional segment in the chart.
pub fn tent() -> Polyhedron {
    let vertices = vec![
        Vec3::from_ints(0, 0, 0),
        Vec3::from_ints(4, 0, 0),
        Vec3::from_ints(4, 2, 0),
        Vec3::from_ints(0, 2, 0),
        Vec3::from_ints(0, 1, 2),
        Vec3::from_ints(4, 1, 2),
    ];
    let boundaries = vec![
        vec![0, 3, 2, 1], // base z=0
        vec![0, 1, 5, 4], // roof over y=0
        vec![2, 3, 4, 5], // roof over y=2
        vec![0, 4, 3],    // end x=0
        vec![1, 2, 5],    // end x=4
    ];
    Polyhedron::from_parts(vertices, boundaries).expect("tent fixture is valid")
}

/// Prism over a non-convex star polygon; castable along the prism axis.
pub fn star_prism() -> Polyhedron {
    star_prism_with(&[
        (4, 0),
        (1, 1),
        (0, 4),
        (-1, 1),
        (-4, 0),
        (-1, -1),
        (0, -4),
        (1, -1),
    ])
}

/// Prism of height 2 over a simple polygon given counterclockwise.
pub fn star_prism_with(polygon: &[(i64, i64)]) -> Polyhedron {
    let k = polygon.len();
    let mut vertices = Vec::with_capacity(2 * k);
    for &(x, y) in polygon {
        vertices.push(Vec3::from_ints(x, y, 0));
    }
    for &(x, y) in polygon {
        vertices.push(Vec3::from_ints(x, y, 2));
    }
    let mut boundaries = Vec::with_capacity(k + 2);
    boundaries.push((0..k).rev().collect());
    boundaries.push((k..2 * k).collect());
    for i in 0..k {
        let j = (i + 1) % k;
        boundaries.push(vec![i, j, k + j, k + i]);
    }
    Polyhedron::from_parts(vertices, boundaries).expect("prism fixture is valid")
}

/// Bipyramid over a convex polygon sampled from a parabola; `2(2m + 1)`
/// facets with all-distinct normals. Used for the large timing meshes.
pub fn bipyramid(m: i64) -> Polyhedron {
    assert!(m >= 2);
    let k = (2 * m + 1) as usize;
    let mut vertices = Vec::with_capacity(k + 2);
    for j in -m..=m {
        vertices.push(Vec3::from_ints(j, j * j, 0));
    }
    let top = k;
    let bottom = k + 1;
    vertices.push(Vec3::from_ints(0, 1, m));
    vertices.push(Vec3::from_ints(0, 1, -m));
    let mut boundaries = Vec::with_capacity(2 * k);
    for i in 0..k {
        let j = (i + 1) % k;
        boundaries.push(vec![i, j, top]);
        boundaries.push(vec![j, i, bottom]);
    }
    Polyhedron::from_parts(vertices, boundaries).expect("bipyramid fixture is valid")
}

/// Genus-1 solid: a square ring with a diamond cross-section, all integer
/// coordinates, sixteen facets with pairwise distinct normals.
pub fn diamond_frame_torus() -> Polyhedron {
    // Ring corners at max(|x|,|y|) between 3 and 5, diamond |z| + |m - 4| <= 1.
    let corner = |sx: i64, sy: i64, m: i64, z: i64| Vec3::from_ints(sx * m, sy * m, z);
    let mut vertices = Vec::new();
    // Per quadrant-corner: outer (m=5, z=0), top (m=4, z=1), inner (3, 0), bottom (4, -1).
    let signs = [(1, 1), (-1, 1), (-1, -1), (1, -1)];
    for &(sx, sy) in &signs {
        vertices.push(corner(sx, sy, 5, 0));
        vertices.push(corner(sx, sy, 4, 1));
        vertices.push(corner(sx, sy, 3, 0));
        vertices.push(corner(sx, sy, 4, -1));
    }
    // Sides run corner c -> corner c+1 (quadrants CCW). Between consecutive
    // corners, connect the four diamond levels with quads.
    let mut boundaries = Vec::new();
    for c in 0..4usize {
        let n = (c + 1) % 4;
        let v = |corner: usize, level: usize| corner * 4 + level;
        // outer-top, top-inner, inner-bottom, bottom-outer
        boundaries.push(vec![v(c, 0), v(n, 0), v(n, 1), v(c, 1)]);
        boundaries.push(vec![v(c, 1), v(n, 1), v(n, 2), v(c, 2)]);
        boundaries.push(vec![v(c, 2), v(n, 2), v(n, 3), v(c, 3)]);
        boundaries.push(vec![v(c, 3), v(n, 3), v(n, 0), v(c, 0)]);
    }
    Polyhedron::from_parts(vertices, boundaries).expect("torus fixture is valid")
}

/// Surface of a union of axis-aligned unit cells, with coplanar squares
/// merged into maximal facets. The cell set must produce a manifold surface
/// and hole-free faces.
pub fn box_complex(cells: &BTreeSet<(i64, i64, i64)>) -> Polyhedron {
    assert!(!cells.is_empty());
    type CellPoint = (i64, i64, i64);
    let mut vertex_ids: std::collections::HashMap<CellPoint, usize> =
        std::collections::HashMap::new();
    let mut vertices: Vec<Vec3> = Vec::new();
    let mut boundaries = Vec::new();
    let vid = |vertices: &mut Vec<Vec3>,
               ids: &mut std::collections::HashMap<CellPoint, usize>,
               p: CellPoint| {
        *ids.entry(p).or_insert_with(|| {
            vertices.push(Vec3::from_ints(p.0, p.1, p.2));
            vertices.len() - 1
        })
    };
    for &(x, y, z) in cells {
        // For each empty neighbor, emit the shared face wound outward.
        let faces: [(CellPoint, [CellPoint; 4]); 6] = [
            ((1, 0, 0), [(1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)]),
            ((-1, 0, 0), [(0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0)]),
            ((0, 1, 0), [(0, 1, 0), (0, 1, 1), (1, 1, 1), (1, 1, 0)]),
            ((0, -1, 0), [(0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)]),
            ((0, 0, 1), [(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)]),
            ((0, 0, -1), [(0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 0)]),
        ];
        for (d, quad) in &faces {
            if cells.contains(&(x + d.0, y + d.1, z + d.2)) {
                continue;
            }
            let boundary = quad
                .iter()
                .map(|&(dx, dy, dz)| {
                    vid(&mut vertices, &mut vertex_ids, (x + dx, y + dy, z + dz))
                })
                .collect();
            boundaries.push(boundary);
        }
    }
    let raw = Polyhedron::from_parts(vertices, boundaries).expect("box complex is manifold");
    merge_coplanar(&raw).expect("box complex faces are hole-free")
}

fn cuboid_cells(cells: &mut BTreeSet<(i64, i64, i64)>, lo: (i64, i64, i64), hi: (i64, i64, i64)) {
    for x in lo.0..hi.0 {
        for y in lo.1..hi.1 {
            for z in lo.2..hi.2 {
                cells.insert((x, y, z));
            }
        }
    }
}

fn remove_cells(cells: &mut BTreeSet<(i64, i64, i64)>, lo: (i64, i64, i64), hi: (i64, i64, i64)) {
    for x in lo.0..hi.0 {
        for y in lo.1..hi.1 {
            for z in lo.2..hi.2 {
                cells.remove(&(x, y, z));
            }
        }
    }
}

/// A 6-cube with one rectangular groove across the top. Castable by sliding
/// along the groove, but the groove floor is not a valid top facet.
pub fn grooved_cube() -> Polyhedron {
    let mut cells = BTreeSet::new();
    cuboid_cells(&mut cells, (0, 0, 0), (6, 6, 6));
    remove_cells(&mut cells, (2, 0, 5), (4, 6, 6));
    box_complex(&cells)
}

/// A 6-cube with three mutually blocking grooves (top, front, back): no
/// facet admits any pull-out direction.
pub fn triple_grooved_cube() -> Polyhedron {
    let mut cells = BTreeSet::new();
    cuboid_cells(&mut cells, (0, 0, 0), (6, 6, 6));
    remove_cells(&mut cells, (2, 0, 5), (4, 6, 6)); // top groove along y
    remove_cells(&mut cells, (0, 0, 2), (6, 1, 4)); // front groove along x
    remove_cells(&mut cells, (0, 5, 2), (6, 6, 4)); // back groove along x
    box_complex(&cells)
}

/// Facet id of the single-groove cube's groove floor (inward normal -z and
/// not the cube top, i.e. the horizontal facet at z = 5).
pub fn grooved_cube_floor(p: &Polyhedron) -> usize {
    p.facets
        .iter()
        .find(|f| {
            f.inward_normal == Vec3::from_ints(0, 0, -1)
                && p.vertices[f.boundary[0]].z == crate::kernel::rat(5)
        })
        .expect("groove floor facet")
        .id
}

/// Deterministic random cell solid: a box with up to three full-span grooves
/// cut from distinct faces. Band limits keep the removed regions from
/// touching along edges, so the surface is always manifold; the result is
/// non-convex whenever at least one groove is cut.
pub fn random_grooved_box(seed: u64) -> Polyhedron {
    let mut rng = SplitMix64::new(seed);
    let (sx, sy, sz) = (
        rng.next_range_i64(5, 8),
        rng.next_range_i64(5, 8),
        rng.next_range_i64(5, 8),
    );
    let mut cells = BTreeSet::new();
    cuboid_cells(&mut cells, (0, 0, 0), (sx, sy, sz));
    let mut cut_any = false;
    // Top groove: full y, interior x band.
    if rng.next_below(4) != 0 {
        let depth = rng.next_range_i64(1, 2);
        let x0 = rng.next_range_i64(1, sx - 2);
        let x1 = x0 + rng.next_range_i64(1, sx - 1 - x0);
        remove_cells(&mut cells, (x0, 0, sz - depth), (x1, sy, sz));
        cut_any = true;
    }
    // Front (+y) groove: full x, z band kept >= 1 below any top groove.
    if rng.next_below(4) != 0 {
        let depth = rng.next_range_i64(1, 2);
        let z0 = rng.next_range_i64(1, sz - 4);
        let z1 = z0 + rng.next_range_i64(1, sz - 4 - z0 + 1);
        remove_cells(&mut cells, (0, sy - depth, z0), (sx, sy, z1));
        cut_any = true;
    }
    // Right (+x) groove: full z, y band kept >= 1 away from the front groove.
    if !cut_any || rng.next_below(4) != 0 {
        let depth = rng.next_range_i64(1, 2);
        let y0 = rng.next_range_i64(1, sy - 4);
        let y1 = y0 + rng.next_range_i64(1, sy - 4 - y0 + 1);
        remove_cells(&mut cells, (sx - depth, y0, 0), (sx, y1, sz));
    }
    box_complex(&cells)
}

/// Deterministic random star prism (non-convex for spiky radii).
pub fn random_star_prism(seed: u64) -> Polyhedron {
    let mut rng = SplitMix64::new(seed);
    let spikes = rng.next_range_i64(3, 6) as usize;
    // Alternate outer/inner radii on a fixed set of directions with integer
    // coordinates scaled to avoid collinear consecutive points.
    let dirs: &[(i64, i64)] = &[
        (5, 0),
        (4, 3),
        (0, 5),
        (-3, 4),
        (-5, 0),
        (-4, -3),
        (0, -5),
        (3, -4),
        (4, -3),
        (3, 4),
        (-4, 3),
        (-3, -4),
    ];
    let mut polygon = Vec::new();
    for i in 0..2 * spikes {
        let (dx, dy) = dirs[i % dirs.len()];
        let scale = if i % 2 == 0 {
            rng.next_range_i64(3, 4)
        } else {
            1
        };
        polygon.push((dx * scale, dy * scale));
    }
    // Order by angle so the polygon is simple and counterclockwise.
    polygon.sort_by(|&(x1, y1), &(x2, y2)| {
        let half = |x: i64, y: i64| u8::from(!(y > 0 || (y == 0 && x > 0)));
        half(x1, y1)
            .cmp(&half(x2, y2))
            .then_with(|| (0i64).cmp(&(x1 * y2 - y1 * x2)))
    });
    polygon.dedup();
    star_prism_with(&polygon)
}

/// Random integer points in a ball; exact convex hull of them.
pub fn random_hull(seed: u64, n_points: usize) -> Polyhedron {
    let mut rng = SplitMix64::new(seed);
    let mut points = Vec::with_capacity(n_points);
    while points.len() < n_points {
        let x = rng.next_range_i64(-500, 500);
        let y = rng.next_range_i64(-500, 500);
        let z = rng.next_range_i64(-500, 500);
        if x * x + y * y + z * z <= 500 * 500 {
            points.push(Vec3::from_ints(x, y, z));
        }
    }
    convex_hull(&points).expect("random point set is full-dimensional")
}

/// Hull of random points on a tiny integer lattice: maximally degenerate
/// (many coplanar and parallel facets, low-dimensional direction cones).
/// Returns `None` when the sample happens to be flat.
pub fn random_lattice_hull(seed: u64) -> Option<Polyhedron> {
    let mut rng = SplitMix64::new(seed);
    let n_points = 6 + rng.next_below(30) as usize;
    let side = 2 + rng.next_below(3) as i64;
    let points: Vec<Vec3> = (0..n_points)
        .map(|_| {
            Vec3::from_ints(
                rng.next_range_i64(0, side),
                rng.next_range_i64(0, side),
                rng.next_range_i64(0, side),
            )
        })
        .collect();
    convex_hull(&points).ok()
}

/// Convex polytope approximating a sphere: hull of random integer points in
/// a thin spherical shell. Facet count grows with `n_points`.
pub fn sphere_approximation(seed: u64, n_points: usize) -> Polyhedron {
    let mut rng = SplitMix64::new(seed);
    let mut points = Vec::with_capacity(n_points);
    let r_outer = 1000i64;
    let r_inner = 995i64;
    while points.len() < n_points {
        let x = rng.next_range_i64(-r_outer, r_outer);
        let y = rng.next_range_i64(-r_outer, r_outer);
        let z = rng.next_range_i64(-r_outer, r_outer);
        let d2 = x * x + y * y + z * z;
        if d2 <= r_outer * r_outer && d2 >= r_inner * r_inner {
            points.push(Vec3::from_ints(x, y, z));
        }
    }
    convex_hull(&points).expect("shell point set is full-dimensional")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grooved_cube_has_expected_facets() {
        let p = grooved_cube();
        assert_eq!(p.facets.len(), 10);
        grooved_cube_floor(&p);
    }

    #[test]
    fn triple_grooved_cube_is_valid_and_nonconvex() {
        let p = triple_grooved_cube();
        assert!(!crate::mesh::is_convex(&p));
        assert!(p.facets.len() > 10);
    }

    #[test]
    fn bipyramid_facet_count() {
        let p = bipyramid(5);
        assert_eq!(p.facets.len(), 22);
        assert!(crate::mesh::is_convex(&p));
    }

    #[test]
    fn random_fixtures_are_deterministic() {
        let a = random_grooved_box(7);
        let b = random_grooved_box(7);
        assert_eq!(a, b);
        assert_ne!(random_grooved_box(8), a);
        let s1 = random_star_prism(3);
        let s2 = random_star_prism(3);
        assert_eq!(s1, s2);
    }

    #[test]
    fn star_prisms_are_valid_nonconvex() {
        for seed in 0..10 {
            let p = random_star_prism(seed);
            assert!(p.facets.len() >= 8);
        }
    }
}
