//! Brute-force ground truth for the casting solvers.
//!
//! Everything here is deliberately naive: exact sign checks over explicit
//! candidate directions, quadratic hull construction, no shared machinery
//! with the solver path. Capped at 200 facets.
//!
//! The candidate enumeration is cell-covering: every region of directions
//! carved out by the facet normal hemispheres that could witness a valid
//! facet contains at least one candidate. The candidates are
//!
//! * the facet normals and their negations,
//! * pairwise cross products (hemisphere boundary intersections) and their
//!   negations,
//! * in-plane interior probes `cross(cross(na, nc), na)` for ordered pairs
//!   (regions that are flat but not pinned to a single ray), and
//! * for every independent normal triple, the exact solutions of
//!   `dot(d, n_i) = s_i` for all sign vectors `s` in `{-1, 0, 1}^3` with at
//!   most one zero. Scaling any strictly feasible sign system to right-hand
//!   sides of unit magnitude turns its solution set into a polyhedron whose
//!   vertices solve such triples, so a full-dimensional region always
//!   contains one of these; the lower-dimensional regions are covered by the
//!   earlier families.

mod hull;

pub use hull::convex_hull;

use crate::kernel::{cross, dot, Vec3};
use crate::mesh::Polyhedron;
use num_traits::{Signed, Zero};
use std::collections::HashSet;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("zero vector is not a direction")]
    ZeroVector,
    #[error("facet id {0} out of range")]
    BadFacetId(usize),
    #[error("input points are affinely dependent")]
    DegenerateInput,
}

const ORACLE_FACET_CAP: usize = 200;

/// Exact check of the two validity conditions for facet `i` and direction
/// `d`: `dot(d, n_i) < 0` and `dot(d, n_j) >= 0` for every other facet.
pub fn is_valid_pair(p: &Polyhedron, facet: usize, d: &Vec3) -> Result<bool, OracleError> {
    if d.is_zero() {
        return Err(OracleError::ZeroVector);
    }
    if facet >= p.facets.len() {
        return Err(OracleError::BadFacetId(facet));
    }
    for f in &p.facets {
        let s = dot(d, &f.inward_normal);
        if f.id == facet {
            if !s.is_negative() {
                return Ok(false);
            }
        } else if s.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of facets whose open complement hemisphere contains `d`, i.e.
/// facets with `dot(d, n_j) < 0`.
pub fn depth(p: &Polyhedron, d: &Vec3) -> Result<usize, OracleError> {
    if d.is_zero() {
        return Err(OracleError::ZeroVector);
    }
    Ok(p
        .facets
        .iter()
        .filter(|f| dot(d, &f.inward_normal).is_negative())
        .count())
}

/// The deduplicated candidate direction list (primitive integer vectors).
pub fn candidate_directions(p: &Polyhedron) -> Vec<Vec3> {
    let mut seen: HashSet<Vec3> = HashSet::new();
    let mut out = Vec::new();
    let mut push = |d: Vec3| {
        let d = d.primitive();
        if seen.insert(d.clone()) {
            out.push(d);
        }
    };
    for d in base_candidates(p) {
        push(d);
    }
    for i in 0..p.facets.len() {
        for_each_triple_candidate(p, i, &mut push);
    }
    out
}

/// Facet normals, pairwise crosses, and in-plane probes.
fn base_candidates(p: &Polyhedron) -> Vec<Vec3> {
    let normals: Vec<&Vec3> = p.facets.iter().map(|f| &f.inward_normal).collect();
    let mut out = Vec::new();
    for n in &normals {
        out.push((*n).clone());
        out.push(n.neg());
    }
    for (i, a) in normals.iter().enumerate() {
        for c in &normals[i + 1..] {
            let e = cross(a, c);
            if e.is_zero() {
                continue;
            }
            out.push(e.neg());
            // In-plane probes for both orderings of the pair.
            let m_ac = cross(&e, a);
            let m_ca = cross(&cross(c, a), c);
            out.push(m_ac.neg());
            out.push(m_ac);
            out.push(m_ca.neg());
            out.push(m_ca);
            out.push(e);
        }
    }
    out
}

/// Sign-system solutions for triples `(i, j, k)` with the given smallest
/// index `i`, streamed into the callback.
fn for_each_triple_candidate(p: &Polyhedron, i: usize, emit: &mut impl FnMut(Vec3)) {
    // All sign vectors in {-1,0,1}^3 with at most one zero entry.
    const SIGNS: [[i64; 3]; 20] = [
        [1, 1, 1],
        [1, 1, -1],
        [1, -1, 1],
        [1, -1, -1],
        [-1, 1, 1],
        [-1, 1, -1],
        [-1, -1, 1],
        [-1, -1, -1],
        [0, 1, 1],
        [0, 1, -1],
        [0, -1, 1],
        [0, -1, -1],
        [1, 0, 1],
        [1, 0, -1],
        [-1, 0, 1],
        [-1, 0, -1],
        [1, 1, 0],
        [1, -1, 0],
        [-1, 1, 0],
        [-1, -1, 0],
    ];
    let n = p.facets.len();
    let ni = &p.facets[i].inward_normal;
    for j in (i + 1)..n {
        let nj = &p.facets[j].inward_normal;
        let u3 = cross(ni, nj);
        if u3.is_zero() {
            continue;
        }
        for k in (j + 1)..n {
            let nk = &p.facets[k].inward_normal;
            let det = dot(&u3, nk);
            if det.is_zero() {
                continue;
            }
            // Rows (ni, nj, nk): inverse columns are the scaled crosses.
            let u1 = cross(nj, nk);
            let u2 = cross(nk, ni);
            let flip = det.is_negative();
            for s in SIGNS {
                let mut d = Vec3::zero();
                for (coef, u) in s.iter().zip([&u1, &u2, &u3]) {
                    match coef {
                        1 => d = d.add(u),
                        -1 => d = d.sub(u),
                        _ => {}
                    }
                }
                if d.is_zero() {
                    continue;
                }
                emit(if flip { d.neg() } else { d });
            }
        }
    }
}

/// The facet validated by `d`, if `d` is a valid pull-out direction for
/// exactly one facet: the single facet with a strictly negative dot product.
fn validated_facet(p: &Polyhedron, d: &Vec3) -> Option<usize> {
    let mut hit = None;
    for f in &p.facets {
        if dot(d, &f.inward_normal).is_negative() {
            if hit.is_some() {
                return None;
            }
            hit = Some(f.id);
        }
    }
    hit
}

/// Scans every candidate direction and reports each facet that admits a
/// valid pull-out direction, with the first witness found. Ground truth for
/// the solver equivalence tests; O(n^4)-ish, capped at 200 facets.
pub fn brute_force_top_facets(p: &Polyhedron) -> Vec<(usize, Vec3)> {
    assert!(
        p.facets.len() <= ORACLE_FACET_CAP,
        "oracle supports at most {ORACLE_FACET_CAP} facets"
    );
    let mut witness: Vec<Option<Vec3>> = vec![None; p.facets.len()];
    for d in base_candidates(p) {
        if let Some(f) = validated_facet(p, &d) {
            witness[f].get_or_insert(d);
        }
    }

    let scan_batch = |i: usize| -> Vec<(usize, Vec3)> {
        let mut local: Vec<Option<Vec3>> = vec![None; p.facets.len()];
        for_each_triple_candidate(p, i, &mut |d| {
            if let Some(f) = validated_facet(p, &d) {
                local[f].get_or_insert(d);
            }
        });
        local
            .into_iter()
            .enumerate()
            .filter_map(|(f, w)| w.map(|w| (f, w)))
            .collect()
    };

    #[cfg(feature = "parallel")]
    let batches: Vec<Vec<(usize, Vec3)>> =
        (0..p.facets.len()).into_par_iter().map(scan_batch).collect();
    #[cfg(not(feature = "parallel"))]
    let batches: Vec<Vec<(usize, Vec3)>> = (0..p.facets.len()).map(scan_batch).collect();

    for batch in batches {
        for (f, w) in batch {
            witness[f].get_or_insert(w);
        }
    }
    witness
        .into_iter()
        .enumerate()
        .filter_map(|(f, w)| w.map(|w| (f, w.primitive())))
        .collect()
}

/// Empirical check: every valid top facet has at most one other valid top
/// facet that does not share an edge with it.
pub fn check_paired_top_facets(p: &Polyhedron) -> bool {
    let valid: Vec<usize> = brute_force_top_facets(p).into_iter().map(|(f, _)| f).collect();
    for &i in &valid {
        let neighbors = &p.edge_adjacency[i];
        let detached = valid
            .iter()
            .filter(|&&j| j != i && !neighbors.contains(&j))
            .count();
        if detached > 1 {
            return false;
        }
    }
    true
}
