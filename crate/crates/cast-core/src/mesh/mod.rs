//! Polyhedron loading, validation, and preprocessing.
//!
//! A [`Polyhedron`] is a closed, consistently oriented, manifold polygonal
//! surface with exact vertex coordinates and exact inward facet normals.
//! Facets may be arbitrary simple planar polygons. Windings are canonicalized
//! so that every boundary is counterclockwise seen from outside the solid;
//! inward normals follow from that plus a signed-volume check.

mod obj;
mod off;

pub use obj::load_obj;
pub use off::{load_off, to_off};

use crate::kernel::{cross, dot, triple, Scalar, Vec3};
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeshError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("surface is not closed: edge {0:?} borders only one facet", edge)]
    NotClosed { edge: (usize, usize) },
    #[error("non-manifold edge {0:?}: shared by more than two facets", edge)]
    NonManifold { edge: (usize, usize) },
    #[error("inconsistent orientation at edge {0:?}: traversed twice in the same direction", edge)]
    InconsistentOrientation { edge: (usize, usize) },
    #[error("facet {facet} is degenerate or not planar")]
    NonPlanarFacet { facet: usize },
    #[error("facet {facet} is not a simple polygon")]
    NonSimpleFacet { facet: usize },
    #[error("merging coplanar facets around facet {facet} does not yield a simple boundary cycle")]
    MergeCreatesNonSimpleFacet { facet: usize },
    #[error("surface encloses zero volume; cannot orient normals")]
    DegenerateVolume,
    #[error("facet id {0} out of range")]
    BadFacetId(usize),
}

/// One facet: a simple planar polygon plus its exact inward normal
/// (unnormalized; reduced to a primitive integer vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub id: usize,
    /// Cyclically ordered vertex ids, counterclockwise seen from outside.
    pub boundary: Vec<usize>,
    /// Normal pointing into the solid.
    pub inward_normal: Vec3,
}

/// A validated closed polyhedral solid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    pub vertices: Vec<Vec3>,
    pub facets: Vec<Facet>,
    /// `edge_adjacency[f][e]` is the facet across edge
    /// `(boundary[e], boundary[e+1])` of facet `f`.
    pub edge_adjacency: Vec<Vec<usize>>,
}

impl Polyhedron {
    /// Builds and validates a polyhedron from positions and facet loops.
    ///
    /// Checks facet simplicity and planarity, closedness, manifoldness and
    /// orientation consistency, then fixes the global winding so boundaries
    /// are counterclockwise from outside and inward normals point into the
    /// enclosed volume.
    pub fn from_parts(
        vertices: Vec<Vec3>,
        mut boundaries: Vec<Vec<usize>>,
    ) -> Result<Self, MeshError> {
        let n_vertices = vertices.len();
        for (f, boundary) in boundaries.iter().enumerate() {
            if boundary.len() < 3 {
                return Err(MeshError::NonSimpleFacet { facet: f });
            }
            let mut seen = boundary.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(MeshError::NonSimpleFacet { facet: f });
            }
            if seen.last().copied().unwrap_or(0) >= n_vertices {
                return Err(MeshError::Parse {
                    line: 0,
                    message: format!("facet {f} references a missing vertex"),
                });
            }
        }

        // Newell normals (right-hand rule over the given winding) and
        // planarity.
        let mut newell: Vec<Vec3> = Vec::with_capacity(boundaries.len());
        for (f, boundary) in boundaries.iter().enumerate() {
            let mut n = Vec3::zero();
            for i in 0..boundary.len() {
                let a = &vertices[boundary[i]];
                let b = &vertices[boundary[(i + 1) % boundary.len()]];
                n = n.add(&cross(a, b));
            }
            if n.is_zero() {
                return Err(MeshError::NonPlanarFacet { facet: f });
            }
            let v0 = &vertices[boundary[0]];
            for &vid in &boundary[1..] {
                if !dot(&n, &vertices[vid].sub(v0)).is_zero() {
                    return Err(MeshError::NonPlanarFacet { facet: f });
                }
            }
            newell.push(n);
        }

        validate_edges(&boundaries)?;

        // Signed volume over the given windings decides which side is inside.
        let mut six_volume = Scalar::zero();
        for boundary in &boundaries {
            let v0 = &vertices[boundary[0]];
            for i in 1..boundary.len() - 1 {
                six_volume += triple(v0, &vertices[boundary[i]], &vertices[boundary[i + 1]]);
            }
        }
        if six_volume.is_zero() {
            return Err(MeshError::DegenerateVolume);
        }
        if six_volume.is_negative() {
            // Windings are clockwise from outside; canonicalize.
            for (boundary, n) in boundaries.iter_mut().zip(newell.iter_mut()) {
                boundary.reverse();
                *n = n.neg();
            }
        }

        let edge_adjacency = build_adjacency(&boundaries)?;
        let facets = boundaries
            .into_iter()
            .zip(newell)
            .enumerate()
            .map(|(id, (boundary, n))| Facet {
                id,
                boundary,
                inward_normal: n.neg().primitive(),
            })
            .collect();
        Ok(Polyhedron {
            vertices,
            facets,
            edge_adjacency,
        })
    }

    pub fn facet(&self, id: usize) -> Result<&Facet, MeshError> {
        self.facets.get(id).ok_or(MeshError::BadFacetId(id))
    }

    /// Cyclic neighbor list of a facet, aligned with its boundary edges.
    pub fn neighbors(&self, id: usize) -> &[usize] {
        &self.edge_adjacency[id]
    }

    /// Vertex ids actually referenced by some facet.
    pub fn referenced_vertex_count(&self) -> usize {
        let mut used = vec![false; self.vertices.len()];
        for f in &self.facets {
            for &v in &f.boundary {
                used[v] = true;
            }
        }
        used.iter().filter(|&&u| u).count()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.facets.iter().map(|f| f.boundary.len()).sum::<usize>() / 2
    }
}

fn validate_edges(boundaries: &[Vec<usize>]) -> Result<(), MeshError> {
    let mut undirected: HashMap<(usize, usize), Vec<bool>> = HashMap::new();
    for boundary in boundaries {
        for i in 0..boundary.len() {
            let a = boundary[i];
            let b = boundary[(i + 1) % boundary.len()];
            let key = (a.min(b), a.max(b));
            undirected.entry(key).or_default().push(a < b);
        }
    }
    for (edge, orientations) in &undirected {
        match orientations.len() {
            1 => return Err(MeshError::NotClosed { edge: *edge }),
            2 => {
                if orientations[0] == orientations[1] {
                    return Err(MeshError::InconsistentOrientation { edge: *edge });
                }
            }
            _ => return Err(MeshError::NonManifold { edge: *edge }),
        }
    }
    Ok(())
}

fn build_adjacency(boundaries: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, MeshError> {
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (f, boundary) in boundaries.iter().enumerate() {
        for i in 0..boundary.len() {
            let a = boundary[i];
            let b = boundary[(i + 1) % boundary.len()];
            if owner.insert((a, b), f).is_some() {
                return Err(MeshError::InconsistentOrientation { edge: (a, b) });
            }
        }
    }
    let mut adjacency = Vec::with_capacity(boundaries.len());
    for boundary in boundaries {
        let mut row = Vec::with_capacity(boundary.len());
        for i in 0..boundary.len() {
            let a = boundary[i];
            let b = boundary[(i + 1) % boundary.len()];
            let twin = owner
                .get(&(b, a))
                .copied()
                .ok_or(MeshError::NotClosed { edge: (a, b) })?;
            row.push(twin);
        }
        adjacency.push(row);
    }
    Ok(adjacency)
}

/// Merges maximal connected groups of edge-adjacent facets that share a plane
/// and a normal direction into single facets. Idempotent; runs by default
/// before any solver, since duplicated coplanar normals block every pull-out
/// direction that the merged facet would admit.
pub fn merge_coplanar(p: &Polyhedron) -> Result<Polyhedron, MeshError> {
    let n = p.facets.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for f in 0..n {
        for &g in &p.edge_adjacency[f] {
            if g <= f {
                continue;
            }
            let nf = &p.facets[f].inward_normal;
            let ng = &p.facets[g].inward_normal;
            let parallel = cross(nf, ng).is_zero() && dot(nf, ng).is_positive();
            if !parallel {
                continue;
            }
            let vf = &p.vertices[p.facets[f].boundary[0]];
            let vg = &p.vertices[p.facets[g].boundary[0]];
            if dot(nf, &vg.sub(vf)).is_zero() {
                let (rf, rg) = (find(&mut parent, f), find(&mut parent, g));
                parent[rf.max(rg)] = rf.min(rg);
            }
        }
    }

    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for f in 0..n {
        let root = find(&mut parent, f);
        groups.entry(root).or_default().push(f);
    }
    if groups.len() == n {
        return Ok(p.clone());
    }

    // Deterministic output order: groups by smallest member id.
    let mut roots: Vec<usize> = groups.keys().copied().collect();
    roots.sort_unstable();

    let mut boundaries: Vec<Vec<usize>> = Vec::with_capacity(roots.len());
    for root in roots {
        let members = &groups[&root];
        if members.len() == 1 {
            boundaries.push(p.facets[members[0]].boundary.clone());
            continue;
        }
        boundaries.push(merged_boundary(p, members)?);
    }
    Polyhedron::from_parts(p.vertices.clone(), boundaries)
}

/// Boundary cycle of a union of coplanar facets: interior (shared) edges
/// cancel; the rest must chain into one simple cycle.
fn merged_boundary(p: &Polyhedron, members: &[usize]) -> Result<Vec<usize>, MeshError> {
    let representative = members[0];
    let mut boundary_edges: HashMap<(usize, usize), ()> = HashMap::new();
    for &f in members {
        let b = &p.facets[f].boundary;
        for i in 0..b.len() {
            let e = (b[i], b[(i + 1) % b.len()]);
            if boundary_edges.remove(&(e.1, e.0)).is_none() {
                boundary_edges.insert(e, ());
            }
        }
    }
    let mut next: HashMap<usize, usize> = HashMap::new();
    for &(a, b) in boundary_edges.keys() {
        if next.insert(a, b).is_some() {
            return Err(MeshError::MergeCreatesNonSimpleFacet {
                facet: representative,
            });
        }
    }
    let edge_count = boundary_edges.len();
    let start = *next
        .keys()
        .min()
        .ok_or(MeshError::MergeCreatesNonSimpleFacet {
            facet: representative,
        })?;
    let mut cycle = vec![start];
    let mut cur = next[&start];
    while cur != start {
        cycle.push(cur);
        cur = *next
            .get(&cur)
            .ok_or(MeshError::MergeCreatesNonSimpleFacet {
                facet: representative,
            })?;
        if cycle.len() > edge_count {
            return Err(MeshError::MergeCreatesNonSimpleFacet {
                facet: representative,
            });
        }
    }
    if cycle.len() != edge_count {
        // Leftover edges form a second cycle (a hole or a detached ring).
        return Err(MeshError::MergeCreatesNonSimpleFacet {
            facet: representative,
        });
    }
    Ok(cycle)
}

/// True iff every vertex lies on the inner closed side of every facet plane.
///
/// Implemented as local convexity at every edge plus facet-graph
/// connectivity, which is equivalent for validated closed surfaces and keeps
/// the check linear.
pub fn is_convex(p: &Polyhedron) -> bool {
    if p.facets.is_empty() {
        return false;
    }
    // Connectivity.
    let mut seen = vec![false; p.facets.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(f) = stack.pop() {
        for &g in &p.edge_adjacency[f] {
            if !seen[g] {
                seen[g] = true;
                reached += 1;
                stack.push(g);
            }
        }
    }
    if reached != p.facets.len() {
        return false;
    }
    // Every edge non-reflex: a neighbor's off-edge vertex must not lie
    // strictly outside this facet's plane.
    for f in 0..p.facets.len() {
        let facet = &p.facets[f];
        let anchor = &p.vertices[facet.boundary[0]];
        for (e, &g) in p.edge_adjacency[f].iter().enumerate() {
            let a = facet.boundary[e];
            let b = facet.boundary[(e + 1) % facet.boundary.len()];
            let va = &p.vertices[a];
            let vb = &p.vertices[b];
            let edge = vb.sub(va);
            let Some(w) = p.facets[g]
                .boundary
                .iter()
                .map(|&vid| &p.vertices[vid])
                .find(|v| !cross(&edge, &v.sub(va)).is_zero())
            else {
                return false;
            };
            if dot(&facet.inward_normal, &w.sub(anchor)).is_negative() {
                return false;
            }
        }
    }
    true
}

/// Direct quadratic implementation of the convexity definition; test oracle
/// for [`is_convex`].
pub fn is_convex_by_definition(p: &Polyhedron) -> bool {
    p.facets.iter().all(|f| {
        let anchor = &p.vertices[f.boundary[0]];
        p.vertices
            .iter()
            .all(|v| !dot(&f.inward_normal, &v.sub(anchor)).is_negative())
    })
}
