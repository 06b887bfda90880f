//! Machine-readable reports. Exact values are serialized as `num/den`
//! strings; floats are a convenience for plotting and never feed back into
//! any decision.

use crate::casting::{CastResult, Directions};
use crate::direction_space::{ConvexRegion, DirectionCone, HalfPlane};
use crate::kernel::{apply_rotation, format_exact, Vec3};
use crate::mesh::Polyhedron;
use num_traits::ToPrimitive;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CastReport {
    pub castable: bool,
    pub n_facets_after_merge: usize,
    pub covering_set: Option<Vec<usize>>,
    pub top_facets: Vec<TopFacetReport>,
    pub excluded_by_covering_set: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    pub timings_ms: Timings,
}

#[derive(Debug, Clone, Serialize)]
pub struct TopFacetReport {
    pub facet: usize,
    pub sample_direction_exact: [String; 3],
    pub sample_direction_float: [f64; 3],
    pub rotated_direction_float: [f64; 3],
    pub cone: Option<ConeReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConeReport {
    pub kind: &'static str,
    pub vertices: Vec<[String; 2]>,
    pub constraints: Vec<ConstraintReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstraintReport {
    pub a: String,
    pub b: String,
    pub c: String,
    pub strict: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub total_ms: f64,
    pub solve_ms: f64,
}

fn exact_triple(v: &Vec3) -> [String; 3] {
    [format_exact(&v.x), format_exact(&v.y), format_exact(&v.z)]
}

fn constraint_report(h: &HalfPlane) -> ConstraintReport {
    ConstraintReport {
        a: format_exact(&h.a),
        b: format_exact(&h.b),
        c: format_exact(&h.c),
        strict: h.strict,
    }
}

fn cone_report(region: &ConvexRegion) -> ConeReport {
    ConeReport {
        kind: region.kind().as_str(),
        vertices: region
            .vertices()
            .iter()
            .map(|p| [format_exact(&p.x), format_exact(&p.y)])
            .collect(),
        constraints: region.active().iter().map(constraint_report).collect(),
    }
}

impl CastReport {
    pub fn new(p: &Polyhedron, result: &CastResult, timings: Timings) -> Self {
        let top_facets = result
            .entries
            .iter()
            .map(|entry| {
                let sample = entry
                    .directions
                    .sample()
                    .expect("entries always carry a direction");
                TopFacetReport {
                    facet: entry.facet,
                    sample_direction_exact: exact_triple(sample),
                    sample_direction_float: sample.to_f64_array(),
                    rotated_direction_float: apply_rotation(&entry.rotation, sample),
                    cone: match &entry.directions {
                        Directions::Single(_) => None,
                        Directions::All(cone) => Some(cone_report(&cone.region)),
                    },
                }
            })
            .collect();
        CastReport {
            castable: result.castable,
            n_facets_after_merge: p.facets.len(),
            covering_set: result.covering.as_ref().map(|c| c.members.clone()),
            top_facets,
            excluded_by_covering_set: result.excluded_by_covering_set.clone(),
            oracle_agrees: None,
            timings_ms: timings,
        }
    }
}

/// Plot data dump for `--emit-directions`: facet geometry plus chart regions,
/// as floats.
#[derive(Debug, Clone, Serialize)]
pub struct DirectionsDump {
    pub facets: Vec<FacetDump>,
    pub cones: Vec<ConeDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FacetDump {
    pub facet: usize,
    pub normal_float: [f64; 3],
    pub polygon_float: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConeDump {
    pub facet: usize,
    pub kind: &'static str,
    pub chart_u: [f64; 3],
    pub chart_v: [f64; 3],
    pub chart_w: [f64; 3],
    pub vertices_float: Vec<[f64; 2]>,
    pub sample_float: Option<[f64; 3]>,
    pub constraints_float: Vec<[f64; 3]>,
}

fn f(s: &crate::kernel::Scalar) -> f64 {
    s.to_f64().unwrap_or(f64::NAN)
}

pub fn cone_dump(cone: &DirectionCone) -> ConeDump {
    ConeDump {
        facet: cone.top_facet,
        kind: cone.region.kind().as_str(),
        chart_u: cone.chart.u.to_f64_array(),
        chart_v: cone.chart.v.to_f64_array(),
        chart_w: cone.chart.w.to_f64_array(),
        vertices_float: cone
            .region
            .vertices()
            .iter()
            .map(|p| [f(&p.x), f(&p.y)])
            .collect(),
        sample_float: cone.sample_direction.as_ref().map(Vec3::to_f64_array),
        constraints_float: cone
            .region
            .active()
            .iter()
            .map(|h| [f(&h.a), f(&h.b), f(&h.c)])
            .collect(),
    }
}

pub fn directions_dump(p: &Polyhedron, result: &CastResult) -> DirectionsDump {
    DirectionsDump {
        facets: p
            .facets
            .iter()
            .map(|facet| FacetDump {
                facet: facet.id,
                normal_float: facet.inward_normal.to_f64_array(),
                polygon_float: facet
                    .boundary
                    .iter()
                    .map(|&v| p.vertices[v].to_f64_array())
                    .collect(),
            })
            .collect(),
        cones: result
            .entries
            .iter()
            .filter_map(|e| match &e.directions {
                Directions::All(cone) => Some(cone_dump(cone)),
                Directions::Single(_) => None,
            })
            .collect(),
    }
}
