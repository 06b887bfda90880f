//! The castability solvers.
//!
//! `covering_set` reduces the candidate top facets to at most 12 by covering
//! the direction sphere with complement hemispheres of facet normals, three
//! per seed hemisphere (an infeasibility witness of the projected closed
//! hemispheres is exactly such a cover). `all_fsd`/`all_fad` then solve the
//! single-facet problems only for covering-set members: any valid top facet
//! belongs to every covering set, so nothing is missed. For convex input,
//! `convex_all_fad` intersects only each facet's neighbor constraints, which
//! arrive pre-sorted by boundary angle, giving a linear-time total.

use crate::direction_space::{
    cone_from_region, project_hemisphere, DirectionCone, HalfPlane, HemisphereSide,
};
use crate::kernel::{self, orthogonal_basis, Basis, KernelError, Vec3};
use crate::lp2d::{
    angle_cmp, feasible_point, intersect_halfplanes, intersect_sorted_halfplanes, Feasibility,
    LpError, NotSorted,
};
use crate::mesh::{is_convex, Polyhedron};
use crate::rng::SplitMix64;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CastError {
    #[error("no facet hemisphere covers seed direction {direction:?}: the surface does not enclose a solid")]
    NotCovered { direction: Vec3 },
    #[error("facet id {0} out of range")]
    BadFacetId(usize),
    #[error("polyhedron is not convex")]
    NotConvex,
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// Seed poles of the four open hemispheres used to cover the sphere:
/// directions to the corners of a regular tetrahedron. They sum to zero, so
/// every direction lies strictly inside at least one seed hemisphere.
pub const SEED_POLES: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];

/// Facets whose complement hemispheres cover one seed hemisphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringWitness {
    pub seed_pole: Vec3,
    /// At most three facet ids.
    pub facets: Vec<usize>,
}

/// At most 12 facets whose open complement hemispheres cover the whole
/// direction sphere. Every valid top facet is a member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringSet {
    pub members: Vec<usize>,
    pub witnesses: [CoveringWitness; 4],
}

/// How the pull-out directions of one entry are reported.
#[derive(Debug, Clone)]
pub enum Directions {
    /// One valid pull-out direction, exact, in the original frame.
    Single(Vec3),
    /// The full cone of valid pull-out directions.
    All(DirectionCone),
}

impl Directions {
    pub fn sample(&self) -> Option<&Vec3> {
        match self {
            Directions::Single(d) => Some(d),
            Directions::All(cone) => cone.sample_direction.as_ref(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CastEntry {
    pub facet: usize,
    pub directions: Directions,
    /// Orthonormal matrix rotating the facet's inward normal to point down;
    /// the reported pull-out direction in mold coordinates is `R * d`.
    pub rotation: [[f64; 3]; 3],
}

/// Solver output: all valid top facets with directions, ordered by facet id.
#[derive(Debug, Clone)]
pub struct CastResult {
    pub castable: bool,
    pub entries: Vec<CastEntry>,
    /// Present when the covering-set algorithm ran (not on the convex path).
    pub covering: Option<CoveringSet>,
    /// Facets ruled out without solving: not members of the covering set.
    pub excluded_by_covering_set: Vec<usize>,
}

impl CastResult {
    pub fn facet_ids(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.facet).collect()
    }
}

/// Chart with pole opposite the facet's inward normal: exactly the
/// directions satisfying the strict top-facet condition for this facet.
fn facet_chart(p: &Polyhedron, facet: usize) -> Result<Basis, CastError> {
    let f = p.facets.get(facet).ok_or(CastError::BadFacetId(facet))?;
    Ok(orthogonal_basis(&f.inward_normal.neg())?)
}

/// Closed constraints for all facets except `facet`, with the source facet
/// id per constraint.
fn chart_constraints(
    p: &Polyhedron,
    facet: usize,
    chart: &Basis,
) -> Result<(Vec<HalfPlane>, Vec<usize>), CastError> {
    let mut constraints = Vec::with_capacity(p.facets.len() - 1);
    let mut sources = Vec::with_capacity(p.facets.len() - 1);
    for f in &p.facets {
        if f.id == facet {
            continue;
        }
        constraints.push(project_hemisphere(
            &f.inward_normal,
            chart,
            HemisphereSide::ClosedNonneg,
        )?);
        sources.push(f.id);
    }
    Ok((constraints, sources))
}

/// Finds a covering set of at most 12 facets (at most 3 per seed
/// hemisphere). Fails with `NotCovered` only if some direction points into
/// the solid through every facet, which a closed solid cannot allow.
pub fn covering_set(p: &Polyhedron, seed: u64) -> Result<CoveringSet, CastError> {
    let mut rng = SplitMix64::new(seed);
    let mut members: Vec<usize> = Vec::new();
    let mut witnesses: Vec<CoveringWitness> = Vec::with_capacity(4);
    for pole_ints in SEED_POLES {
        let pole = Vec3::from_ints(pole_ints[0], pole_ints[1], pole_ints[2]);
        let chart = orthogonal_basis(&pole)?;
        let constraints: Vec<HalfPlane> = p
            .facets
            .iter()
            .map(|f| project_hemisphere(&f.inward_normal, &chart, HemisphereSide::ClosedNonneg))
            .collect::<Result<_, _>>()?;
        let lp_seed = rng.next_u64();
        match feasible_point(&constraints, lp_seed)? {
            Feasibility::Infeasible(facets) => {
                debug_assert!(facets.len() <= 3);
                members.extend(&facets);
                witnesses.push(CoveringWitness {
                    seed_pole: pole,
                    facets,
                });
            }
            Feasibility::Feasible(point) => {
                // The lifted point is a direction of depth zero.
                let direction = chart.lift(&point.x, &point.y).primitive();
                return Err(CastError::NotCovered { direction });
            }
        }
    }
    members.sort_unstable();
    members.dedup();
    let witnesses: [CoveringWitness; 4] = witnesses.try_into().expect("four seed poles");
    Ok(CoveringSet { members, witnesses })
}

/// One valid pull-out direction for the given top facet, or `None`.
/// Expected linear time in the facet count.
pub fn single_fsd(p: &Polyhedron, facet: usize, seed: u64) -> Result<Option<Vec3>, CastError> {
    let chart = facet_chart(p, facet)?;
    let (constraints, _) = chart_constraints(p, facet, &chart)?;
    match feasible_point(&constraints, seed)? {
        Feasibility::Feasible(point) => Ok(Some(chart.lift(&point.x, &point.y).primitive())),
        Feasibility::Infeasible(_) => Ok(None),
    }
}

/// The full direction cone for the given top facet (empty region when the
/// facet is not a valid top facet).
pub fn single_fad(p: &Polyhedron, facet: usize) -> Result<DirectionCone, CastError> {
    let chart = facet_chart(p, facet)?;
    let (constraints, _) = chart_constraints(p, facet, &chart)?;
    let region = intersect_halfplanes(&constraints);
    Ok(cone_from_region(facet, chart, region))
}

fn rotation_for(p: &Polyhedron, facet: usize) -> [[f64; 3]; 3] {
    kernel::rotation_to_top(&p.facets[facet].inward_normal).expect("facet normals are nonzero")
}

fn excluded_facets(p: &Polyhedron, members: &[usize]) -> Vec<usize> {
    (0..p.facets.len()).filter(|f| !members.contains(f)).collect()
}

/// All valid top facets, each with one pull-out direction. Expected linear
/// time: a covering set, then one feasibility solve per member.
pub fn all_fsd(p: &Polyhedron, seed: u64) -> Result<CastResult, CastError> {
    let covering = covering_set(p, seed)?;
    let mut rng = SplitMix64::new(seed ^ 0x9e37_79b9_7f4a_7c15);
    let member_seeds: Vec<(usize, u64)> = covering
        .members
        .iter()
        .map(|&m| (m, rng.next_u64()))
        .collect();
    let solve = |&(m, s): &(usize, u64)| single_fsd(p, m, s).map(|d| (m, d));
    #[cfg(feature = "parallel")]
    let solved: Result<Vec<_>, _> = member_seeds.par_iter().map(solve).collect();
    #[cfg(not(feature = "parallel"))]
    let solved: Result<Vec<_>, _> = member_seeds.iter().map(solve).collect();
    let entries: Vec<CastEntry> = solved?
        .into_iter()
        .filter_map(|(m, d)| d.map(|d| (m, d)))
        .map(|(m, d)| CastEntry {
            facet: m,
            directions: Directions::Single(d),
            rotation: rotation_for(p, m),
        })
        .collect();
    debug_assert!(entries.len() <= 6, "more than six valid top facets");
    Ok(CastResult {
        castable: !entries.is_empty(),
        excluded_by_covering_set: excluded_facets(p, &covering.members),
        covering: Some(covering),
        entries,
    })
}

/// All valid top facets with their full direction cones. Runs `all_fsd`
/// first and returns immediately (in linear time) when nothing is castable.
pub fn all_fad(p: &Polyhedron, seed: u64) -> Result<CastResult, CastError> {
    let fsd = all_fsd(p, seed)?;
    if !fsd.castable {
        return Ok(fsd);
    }
    let facets = fsd.facet_ids();
    let solve = |&m: &usize| single_fad(p, m).map(|cone| (m, cone));
    #[cfg(feature = "parallel")]
    let solved: Result<Vec<_>, _> = facets.par_iter().map(solve).collect();
    #[cfg(not(feature = "parallel"))]
    let solved: Result<Vec<_>, _> = facets.iter().map(solve).collect();
    let entries: Vec<CastEntry> = solved?
        .into_iter()
        .map(|(m, cone)| {
            debug_assert!(!cone.region.is_empty());
            CastEntry {
                facet: m,
                directions: Directions::All(cone),
                rotation: rotation_for(p, m),
            }
        })
        .collect();
    Ok(CastResult {
        castable: !entries.is_empty(),
        entries,
        covering: fsd.covering,
        excluded_by_covering_set: fsd.excluded_by_covering_set,
    })
}

/// The cone of one facet of a convex polyhedron from its neighbor
/// constraints alone, via the linear sorted intersection.
fn convex_facet_cone(p: &Polyhedron, facet: usize) -> Result<DirectionCone, CastError> {
    let chart = facet_chart(p, facet)?;
    // Neighbor constraints in boundary-edge order are in boundary-angle
    // order: each constraint's chart line is parallel to its edge.
    let mut constraints: Vec<HalfPlane> = Vec::with_capacity(p.neighbors(facet).len());
    for &j in p.neighbors(facet) {
        constraints.push(project_hemisphere(
            &p.facets[j].inward_normal,
            &chart,
            HemisphereSide::ClosedNonneg,
        )?);
    }
    // Rotate the cyclic order to start at the smallest angle.
    let start = (0..constraints.len())
        .min_by(|&i, &j| {
            angle_cmp(
                &constraints[i].a,
                &constraints[i].b,
                &constraints[j].a,
                &constraints[j].b,
            )
        })
        .expect("facets have at least three neighbors");
    constraints.rotate_left(start);
    let region = intersect_sorted_halfplanes(&constraints)
        .map_err(|NotSorted(_)| CastError::NotConvex)?;
    Ok(cone_from_region(facet, chart, region))
}

/// All valid top facets with full cones for a convex polyhedron, in linear
/// total time: only edge-neighbor constraints matter, and they arrive
/// sorted.
pub fn convex_all_fad(p: &Polyhedron) -> Result<CastResult, CastError> {
    if !is_convex(p) {
        return Err(CastError::NotConvex);
    }
    let ids: Vec<usize> = (0..p.facets.len()).collect();
    let solve = |&f: &usize| convex_facet_cone(p, f).map(|cone| (f, cone));
    #[cfg(feature = "parallel")]
    let solved: Result<Vec<_>, _> = ids.par_iter().map(solve).collect();
    #[cfg(not(feature = "parallel"))]
    let solved: Result<Vec<_>, _> = ids.iter().map(solve).collect();
    let entries: Vec<CastEntry> = solved?
        .into_iter()
        .filter(|(_, cone)| !cone.region.is_empty())
        .map(|(f, cone)| CastEntry {
            facet: f,
            directions: Directions::All(cone),
            rotation: rotation_for(p, f),
        })
        .collect();
    debug_assert!(entries.len() <= 6, "more than six valid top facets");
    Ok(CastResult {
        castable: !entries.is_empty(),
        entries,
        covering: None,
        excluded_by_covering_set: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction_space::RegionKind;
    use crate::fixtures;
    use crate::kernel::dot;
    use num_traits::Signed;
    use crate::oracle;

    fn oracle_facets(p: &Polyhedron) -> Vec<usize> {
        oracle::brute_force_top_facets(p)
            .into_iter()
            .map(|(f, _)| f)
            .collect()
    }

    fn check_entries_valid(p: &Polyhedron, result: &CastResult) {
        for entry in &result.entries {
            let d = entry.directions.sample().expect("entry has a direction");
            assert!(
                oracle::is_valid_pair(p, entry.facet, d).unwrap(),
                "reported pair (facet {}, {:?}) is invalid",
                entry.facet,
                d
            );
        }
    }

    #[test]
    fn covering_set_of_cube_covers_all_probes() {
        let cube = fixtures::cube();
        let cov = covering_set(&cube, 0).unwrap();
        assert!(cov.members.len() <= 12);
        for w in &cov.witnesses {
            assert!(!w.facets.is_empty() && w.facets.len() <= 3);
        }
        // Probe directions: all facet normals, their negations, seed poles.
        let mut probes: Vec<Vec3> = Vec::new();
        for f in &cube.facets {
            probes.push(f.inward_normal.clone());
            probes.push(f.inward_normal.neg());
        }
        for s in SEED_POLES {
            probes.push(Vec3::from_ints(s[0], s[1], s[2]));
            probes.push(Vec3::from_ints(s[0], s[1], s[2]).neg());
        }
        for d in probes {
            assert!(
                cov.members
                    .iter()
                    .any(|&m| dot(&d, &cube.facets[m].inward_normal).is_negative()),
                "direction {d:?} not strictly inside any member hemisphere"
            );
        }
    }

    #[test]
    fn covering_set_verdict_is_seed_stable() {
        let p = fixtures::square_pyramid();
        for seed in 0..10 {
            let cov = covering_set(&p, seed).unwrap();
            assert!(cov.members.len() <= 12);
        }
    }

    #[test]
    fn cube_single_fsd_pulls_along_the_outward_normal() {
        let cube = fixtures::cube();
        let top = cube
            .facets
            .iter()
            .find(|f| f.inward_normal == Vec3::from_ints(0, 0, -1))
            .unwrap()
            .id;
        let d = single_fsd(&cube, top, 1).unwrap().unwrap();
        assert_eq!(d, Vec3::from_ints(0, 0, 1));
    }

    #[test]
    fn pyramid_side_facet_admits_a_slide() {
        let p = fixtures::square_pyramid();
        let side = p
            .facets
            .iter()
            .find(|f| f.inward_normal == Vec3::from_ints(0, 2, -1))
            .unwrap()
            .id;
        let d = single_fsd(&p, side, 0).unwrap().expect("side facet is valid");
        assert!(oracle::is_valid_pair(&p, side, &d).unwrap());
    }

    #[test]
    fn groove_floor_has_no_direction() {
        let p = fixtures::grooved_cube();
        let floor = fixtures::grooved_cube_floor(&p);
        assert_eq!(single_fsd(&p, floor, 0).unwrap(), None);
        let cone = single_fad(&p, floor).unwrap();
        assert_eq!(cone.region.kind(), RegionKind::Empty);
        assert!(cone.sample_direction.is_none());
    }

    #[test]
    fn bad_facet_id_errors() {
        let cube = fixtures::cube();
        assert!(matches!(
            single_fsd(&cube, 17, 0),
            Err(CastError::BadFacetId(17))
        ));
        assert!(matches!(
            single_fad(&cube, 17),
            Err(CastError::BadFacetId(17))
        ));
    }

    #[test]
    fn cube_all_fsd_reports_all_six_facets() {
        let cube = fixtures::cube();
        let result = all_fsd(&cube, 0).unwrap();
        assert!(result.castable);
        assert_eq!(result.facet_ids(), vec![0, 1, 2, 3, 4, 5]);
        assert!(result.excluded_by_covering_set.is_empty());
        check_entries_valid(&cube, &result);
        // Each sample is the outward normal up to positive scale.
        for e in &result.entries {
            let d = e.directions.sample().unwrap();
            assert!(d.is_positive_multiple_of(&cube.facets[e.facet].inward_normal.neg()));
        }
    }

    #[test]
    fn pyramid_all_fsd_matches_oracle() {
        let p = fixtures::square_pyramid();
        let result = all_fsd(&p, 3).unwrap();
        assert_eq!(result.facet_ids(), oracle_facets(&p));
        check_entries_valid(&p, &result);
    }

    #[test]
    fn all_fsd_verdict_is_seed_independent() {
        for p in [fixtures::square_pyramid(), fixtures::grooved_cube(), fixtures::tent()] {
            let baseline = all_fsd(&p, 0).unwrap();
            for seed in 1..6 {
                let again = all_fsd(&p, seed).unwrap();
                assert_eq!(again.castable, baseline.castable);
                assert_eq!(again.facet_ids(), baseline.facet_ids());
            }
        }
    }

    #[test]
    fn cube_all_fad_cones_are_points() {
        let cube = fixtures::cube();
        let result = all_fad(&cube, 0).unwrap();
        assert_eq!(result.entries.len(), 6);
        for e in &result.entries {
            match &e.directions {
                Directions::All(cone) => {
                    assert_eq!(cone.region.kind(), RegionKind::Point);
                    let d = cone.sample_direction.as_ref().unwrap();
                    assert!(d.is_positive_multiple_of(&cube.facets[e.facet].inward_normal.neg()));
                }
                Directions::Single(_) => panic!("all_fad entries carry cones"),
            }
        }
    }

    #[test]
    fn pyramid_base_cone_is_two_dimensional() {
        let p = fixtures::square_pyramid();
        let base = p
            .facets
            .iter()
            .find(|f| f.inward_normal == Vec3::from_ints(0, 0, 1))
            .unwrap()
            .id;
        let cone = single_fad(&p, base).unwrap();
        assert_eq!(cone.region.kind(), RegionKind::BoundedPolygon);
        // Sample of the square region lifts to the straight-down pull.
        let d = cone.sample_direction.unwrap();
        assert_eq!(d.primitive(), Vec3::from_ints(0, 0, -1));
    }

    #[test]
    fn tent_base_cone_is_a_segment() {
        let p = fixtures::tent();
        let base = p
            .facets
            .iter()
            .find(|f| f.inward_normal == Vec3::from_ints(0, 0, 1))
            .unwrap()
            .id;
        let cone = single_fad(&p, base).unwrap();
        assert_eq!(cone.region.kind(), RegionKind::Segment);
    }

    #[test]
    fn non_castable_solid_returns_early_without_cones() {
        let p = fixtures::triple_grooved_cube();
        let result = all_fad(&p, 0).unwrap();
        assert!(!result.castable);
        assert!(result.entries.is_empty());
        assert!(result.covering.is_some());
    }

    #[test]
    fn convex_path_rejects_non_convex_input() {
        let p = fixtures::grooved_cube();
        assert!(matches!(convex_all_fad(&p), Err(CastError::NotConvex)));
    }

    #[test]
    fn convex_path_matches_general_path_on_fixtures() {
        for p in [
            fixtures::cube(),
            fixtures::square_pyramid(),
            fixtures::tent(),
            fixtures::bipyramid(4),
        ] {
            let general = all_fad(&p, 0).unwrap();
            let convex = convex_all_fad(&p).unwrap();
            assert_eq!(general.facet_ids(), convex.facet_ids());
            for (ge, ce) in general.entries.iter().zip(&convex.entries) {
                let (Directions::All(gc), Directions::All(cc)) = (&ge.directions, &ce.directions)
                else {
                    panic!("fad entries carry cones")
                };
                assert_eq!(gc.region.kind(), cc.region.kind());
                let mut gv = gc.region.vertices();
                let mut cv = cc.region.vertices();
                let key = |p: &crate::direction_space::Point2| (p.x.clone(), p.y.clone());
                gv.sort_by_key(key);
                cv.sort_by_key(key);
                assert_eq!(gv, cv);
            }
        }
    }

    #[test]
    fn tetrahedron_has_four_valid_facets() {
        let tetra = oracle::convex_hull(&[
            Vec3::from_ints(0, 0, 0),
            Vec3::from_ints(2, 0, 0),
            Vec3::from_ints(0, 2, 0),
            Vec3::from_ints(0, 0, 2),
        ])
        .unwrap();
        let result = convex_all_fad(&tetra).unwrap();
        assert_eq!(result.entries.len(), 4);
        assert_eq!(oracle_facets(&tetra).len(), 4);
    }

    #[test]
    fn star_prism_matches_oracle() {
        let p = fixtures::star_prism();
        let result = all_fsd(&p, 0).unwrap();
        assert_eq!(result.facet_ids(), oracle_facets(&p));
        check_entries_valid(&p, &result);
    }

    #[test]
    fn torus_matches_oracle() {
        let p = fixtures::diamond_frame_torus();
        let result = all_fsd(&p, 0).unwrap();
        assert_eq!(result.facet_ids(), oracle_facets(&p));
    }

    #[test]
    fn oracle_valid_facets_are_covering_members() {
        for p in [
            fixtures::cube(),
            fixtures::square_pyramid(),
            fixtures::tent(),
            fixtures::grooved_cube(),
            fixtures::star_prism(),
        ] {
            let cov = covering_set(&p, 0).unwrap();
            for f in oracle_facets(&p) {
                assert!(cov.members.contains(&f));
            }
        }
    }
}
