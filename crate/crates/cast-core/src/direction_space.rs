//! The direction chart: maps facet-normal hemispheres on the direction sphere
//! to half-planes in a chart plane, and chart regions back to cones of
//! directions.
//!
//! A chart is an exact orthogonal basis `(u, v, w)`; the chart plane is the
//! affine plane of points `x*u + y*v + w`. Every direction `d` with
//! `dot(d, w) > 0` has exactly one chart representative, so fixing the pole
//! `w = -inward_normal(F)` builds the strict condition `dot(d, nu(F)) < 0`
//! into the chart itself.

use crate::kernel::{dot, Basis, KernelError, Scalar, Vec3};
use num_traits::{Signed, Zero};

/// Which side of a facet's direction hemisphere to project.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HemisphereSide {
    /// The closed hemisphere `{d : dot(d, n) >= 0}`.
    ClosedNonneg,
    /// Its open complement `{d : dot(d, n) < 0}`.
    OpenNeg,
}

/// Classification of a projected hemisphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlaneKind {
    /// A genuine half-plane: `(a, b) != (0, 0)`.
    Proper,
    /// No chart point satisfies the constraint.
    Empty,
    /// Every chart point satisfies the constraint.
    Full,
}

/// Linear constraint `a*x + b*y + c >= 0` (or `> 0` if strict) in a chart
/// plane. Degenerate coefficient rows `(a, b) = (0, 0)` are classified as
/// `Empty` or `Full` by the sign of `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPlane {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub strict: bool,
    kind: HalfPlaneKind,
}

impl HalfPlane {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, strict: bool) -> Self {
        let kind = if a.is_zero() && b.is_zero() {
            let holds = if strict {
                c.is_positive()
            } else {
                !c.is_negative()
            };
            if holds {
                HalfPlaneKind::Full
            } else {
                HalfPlaneKind::Empty
            }
        } else {
            HalfPlaneKind::Proper
        };
        Self {
            a,
            b,
            c,
            strict,
            kind,
        }
    }

    pub fn closed(a: Scalar, b: Scalar, c: Scalar) -> Self {
        Self::new(a, b, c, false)
    }

    pub fn closed_ints(a: i64, b: i64, c: i64) -> Self {
        Self::closed(crate::kernel::rat(a), crate::kernel::rat(b), crate::kernel::rat(c))
    }

    pub fn kind(&self) -> HalfPlaneKind {
        self.kind
    }

    /// Exact constraint value at a chart point; the constraint holds iff this
    /// is `>= 0` (`> 0` when strict).
    pub fn eval(&self, p: &Point2) -> Scalar {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn contains(&self, p: &Point2) -> bool {
        let v = self.eval(p);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }
}

/// Exact 2D chart point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point2 {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point2 {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(crate::kernel::rat(x), crate::kernel::rat(y))
    }
}

/// Tag for [`ConvexRegion`] variants, for reporting and comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum RegionKind {
    Empty,
    Point,
    Segment,
    Ray,
    Line,
    HalfPlaneRegion,
    Strip,
    BoundedPolygon,
    UnboundedPolygon,
    FullPlane,
}

impl RegionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionKind::Empty => "Empty",
            RegionKind::Point => "Point",
            RegionKind::Segment => "Segment",
            RegionKind::Ray => "Ray",
            RegionKind::Line => "Line",
            RegionKind::HalfPlaneRegion => "HalfPlaneRegion",
            RegionKind::Strip => "Strip",
            RegionKind::BoundedPolygon => "BoundedPolygon",
            RegionKind::UnboundedPolygon => "UnboundedPolygon",
            RegionKind::FullPlane => "FullPlane",
        }
    }
}

/// The intersection of a set of closed half-planes, in explicit (possibly
/// degenerate) form.
///
/// `active` lists the constraints that actually bound the region, in boundary
/// walk order for the polygonal kinds. Every vertex stored satisfies all of
/// the region's constraints exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvexRegion {
    Empty,
    Point {
        point: Point2,
        active: Vec<HalfPlane>,
    },
    Segment {
        ends: [Point2; 2],
        active: Vec<HalfPlane>,
    },
    Ray {
        base: Point2,
        direction: Point2,
        active: Vec<HalfPlane>,
    },
    Line {
        base: Point2,
        direction: Point2,
        active: Vec<HalfPlane>,
    },
    HalfPlaneRegion {
        bound: HalfPlane,
    },
    Strip {
        bounds: [HalfPlane; 2],
    },
    BoundedPolygon {
        vertices: Vec<Point2>,
        active: Vec<HalfPlane>,
    },
    UnboundedPolygon {
        /// Boundary vertices in walk order (at least one).
        vertices: Vec<Point2>,
        /// Recession directions of the two unbounded boundary rays.
        rays: [Point2; 2],
        active: Vec<HalfPlane>,
    },
    FullPlane,
}

impl ConvexRegion {
    pub fn kind(&self) -> RegionKind {
        match self {
            ConvexRegion::Empty => RegionKind::Empty,
            ConvexRegion::Point { .. } => RegionKind::Point,
            ConvexRegion::Segment { .. } => RegionKind::Segment,
            ConvexRegion::Ray { .. } => RegionKind::Ray,
            ConvexRegion::Line { .. } => RegionKind::Line,
            ConvexRegion::HalfPlaneRegion { .. } => RegionKind::HalfPlaneRegion,
            ConvexRegion::Strip { .. } => RegionKind::Strip,
            ConvexRegion::BoundedPolygon { .. } => RegionKind::BoundedPolygon,
            ConvexRegion::UnboundedPolygon { .. } => RegionKind::UnboundedPolygon,
            ConvexRegion::FullPlane => RegionKind::FullPlane,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ConvexRegion::Empty)
    }

    /// Vertices stored for this region (empty for non-polygonal kinds).
    pub fn vertices(&self) -> Vec<Point2> {
        match self {
            ConvexRegion::Point { point, .. } => vec![point.clone()],
            ConvexRegion::Segment { ends, .. } => ends.to_vec(),
            ConvexRegion::Ray { base, .. } => vec![base.clone()],
            ConvexRegion::BoundedPolygon { vertices, .. }
            | ConvexRegion::UnboundedPolygon { vertices, .. } => vertices.clone(),
            _ => Vec::new(),
        }
    }

    /// The constraints that bound the region.
    pub fn active(&self) -> Vec<HalfPlane> {
        match self {
            ConvexRegion::Empty | ConvexRegion::FullPlane => Vec::new(),
            ConvexRegion::Point { active, .. }
            | ConvexRegion::Segment { active, .. }
            | ConvexRegion::Ray { active, .. }
            | ConvexRegion::Line { active, .. }
            | ConvexRegion::BoundedPolygon { active, .. }
            | ConvexRegion::UnboundedPolygon { active, .. } => active.clone(),
            ConvexRegion::HalfPlaneRegion { bound } => vec![bound.clone()],
            ConvexRegion::Strip { bounds } => bounds.to_vec(),
        }
    }

    /// Membership test using only the region's own (active) description.
    pub fn contains(&self, p: &Point2) -> bool {
        match self {
            ConvexRegion::Empty => false,
            ConvexRegion::FullPlane => true,
            ConvexRegion::Point { point, .. } => point == p,
            ConvexRegion::Segment { ends, .. } => {
                on_line(&ends[0], &ends[1], p) && between(&ends[0], &ends[1], p)
            }
            ConvexRegion::Ray {
                base, direction, ..
            } => {
                let tip = Point2::new(&base.x + &direction.x, &base.y + &direction.y);
                if !on_line(base, &tip, p) {
                    return false;
                }
                // p = base + t*direction with t >= 0
                let t_num = (&p.x - &base.x) * &direction.x + (&p.y - &base.y) * &direction.y;
                !t_num.is_negative()
            }
            ConvexRegion::Line {
                base, direction, ..
            } => {
                let tip = Point2::new(&base.x + &direction.x, &base.y + &direction.y);
                on_line(base, &tip, p)
            }
            ConvexRegion::HalfPlaneRegion { bound } => bound.contains(p),
            ConvexRegion::Strip { bounds } => bounds.iter().all(|h| h.contains(p)),
            ConvexRegion::BoundedPolygon { active, .. }
            | ConvexRegion::UnboundedPolygon { active, .. } => {
                active.iter().all(|h| h.contains(p))
            }
        }
    }

    /// Deterministic pseudo-random members of the region (exact rationals).
    /// Empty regions yield an empty vector.
    pub fn sample_points(&self, seed: u64, count: usize) -> Vec<Point2> {
        let mut rng = crate::rng::SplitMix64::new(seed);
        // Random rational in [0, 1].
        let unit = |rng: &mut crate::rng::SplitMix64| {
            crate::kernel::ratio(rng.next_below(1000) as i64, 999)
        };
        let nonneg = |rng: &mut crate::rng::SplitMix64| {
            crate::kernel::ratio(rng.next_below(5000) as i64, 250)
        };
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let p = match self {
                ConvexRegion::Empty => break,
                ConvexRegion::FullPlane => {
                    let x = nonneg(&mut rng) - nonneg(&mut rng);
                    let y = nonneg(&mut rng) - nonneg(&mut rng);
                    Point2::new(x, y)
                }
                ConvexRegion::Point { point, .. } => point.clone(),
                ConvexRegion::Segment { ends, .. } => {
                    let t = unit(&mut rng);
                    lerp(&ends[0], &ends[1], &t)
                }
                ConvexRegion::Ray {
                    base, direction, ..
                } => {
                    let t = nonneg(&mut rng);
                    Point2::new(&base.x + &direction.x * &t, &base.y + &direction.y * &t)
                }
                ConvexRegion::Line {
                    base, direction, ..
                } => {
                    let t = nonneg(&mut rng) - nonneg(&mut rng);
                    Point2::new(&base.x + &direction.x * &t, &base.y + &direction.y * &t)
                }
                ConvexRegion::HalfPlaneRegion { bound } => {
                    // Boundary foot + inward offset + tangential slide.
                    let nn = &bound.a * &bound.a + &bound.b * &bound.b;
                    let foot = Point2::new(
                        (-&bound.c * &bound.a) / &nn,
                        (-&bound.c * &bound.b) / &nn,
                    );
                    let s = nonneg(&mut rng);
                    let t = nonneg(&mut rng) - nonneg(&mut rng);
                    Point2::new(
                        &foot.x + &bound.a * &s - &bound.b * &t,
                        &foot.y + &bound.b * &s + &bound.a * &t,
                    )
                }
                ConvexRegion::Strip { bounds } => {
                    let h0 = &bounds[0];
                    let nn = &h0.a * &h0.a + &h0.b * &h0.b;
                    let foot =
                        Point2::new((-&h0.c * &h0.a) / &nn, (-&h0.c * &h0.b) / &nn);
                    let denom = &bounds[1].a * &h0.a + &bounds[1].b * &h0.b;
                    let width = -bounds[1].eval(&foot) / denom;
                    let s = &width * &unit(&mut rng);
                    let t = nonneg(&mut rng) - nonneg(&mut rng);
                    Point2::new(
                        &foot.x + &h0.a * &s - &h0.b * &t,
                        &foot.y + &h0.b * &s + &h0.a * &t,
                    )
                }
                ConvexRegion::BoundedPolygon { vertices, .. } => {
                    random_convex_combination(vertices, &mut rng)
                }
                ConvexRegion::UnboundedPolygon { vertices, rays, .. } => {
                    let base = random_convex_combination(vertices, &mut rng);
                    let t0 = nonneg(&mut rng);
                    let t1 = nonneg(&mut rng);
                    Point2::new(
                        &base.x + &rays[0].x * &t0 + &rays[1].x * &t1,
                        &base.y + &rays[0].y * &t0 + &rays[1].y * &t1,
                    )
                }
            };
            out.push(p);
        }
        out
    }

    /// Deterministic representative point: vertex average for polygonal
    /// kinds, a constructed witness for the degenerate ones, `None` if empty.
    pub fn representative(&self) -> Option<Point2> {
        match self {
            ConvexRegion::Empty => None,
            ConvexRegion::FullPlane => Some(Point2::from_ints(0, 0)),
            ConvexRegion::Point { point, .. } => Some(point.clone()),
            ConvexRegion::Segment { ends, .. } => Some(midpoint(&ends[0], &ends[1])),
            ConvexRegion::Ray {
                base, direction, ..
            } => Some(Point2::new(&base.x + &direction.x, &base.y + &direction.y)),
            ConvexRegion::Line { base, .. } => Some(base.clone()),
            ConvexRegion::HalfPlaneRegion { bound } => {
                // Foot of the origin on the boundary, pushed one normal inward.
                let nn = &bound.a * &bound.a + &bound.b * &bound.b;
                let x = (-&bound.c * &bound.a) / &nn + &bound.a;
                let y = (-&bound.c * &bound.b) / &nn + &bound.b;
                Some(Point2::new(x, y))
            }
            ConvexRegion::Strip { bounds } => {
                // Midway between the two parallel boundary lines.
                let h0 = &bounds[0];
                let h1 = &bounds[1];
                let nn = &h0.a * &h0.a + &h0.b * &h0.b;
                let foot = Point2::new((-&h0.c * &h0.a) / &nn, (-&h0.c * &h0.b) / &nn);
                // Distance factor toward the other boundary along (a, b).
                let denom = &h1.a * &h0.a + &h1.b * &h0.b;
                debug_assert!(!denom.is_zero());
                let t = -h1.eval(&foot) / denom;
                let half = t / crate::kernel::rat(2);
                Some(Point2::new(
                    &foot.x + &h0.a * &half,
                    &foot.y + &h0.b * &half,
                ))
            }
            ConvexRegion::BoundedPolygon { vertices, .. }
            | ConvexRegion::UnboundedPolygon { vertices, .. } => {
                let n = crate::kernel::rat(vertices.len() as i64);
                let mut sx = Scalar::zero();
                let mut sy = Scalar::zero();
                for v in vertices {
                    sx += &v.x;
                    sy += &v.y;
                }
                Some(Point2::new(sx / &n, sy / &n))
            }
        }
    }
}

fn midpoint(a: &Point2, b: &Point2) -> Point2 {
    let two = crate::kernel::rat(2);
    Point2::new((&a.x + &b.x) / &two, (&a.y + &b.y) / &two)
}

fn lerp(a: &Point2, b: &Point2, t: &Scalar) -> Point2 {
    Point2::new(&a.x + (&b.x - &a.x) * t, &a.y + (&b.y - &a.y) * t)
}

fn random_convex_combination(vertices: &[Point2], rng: &mut crate::rng::SplitMix64) -> Point2 {
    let mut weights: Vec<Scalar> = Vec::with_capacity(vertices.len());
    let mut total = Scalar::zero();
    for _ in vertices {
        let w = crate::kernel::rat(1 + rng.next_below(100) as i64);
        total += &w;
        weights.push(w);
    }
    let mut x = Scalar::zero();
    let mut y = Scalar::zero();
    for (v, w) in vertices.iter().zip(&weights) {
        x += &v.x * w;
        y += &v.y * w;
    }
    Point2::new(x / &total, y / &total)
}

fn on_line(a: &Point2, b: &Point2, p: &Point2) -> bool {
    let det = (&b.x - &a.x) * (&p.y - &a.y) - (&b.y - &a.y) * (&p.x - &a.x);
    det.is_zero()
}

fn between(a: &Point2, b: &Point2, p: &Point2) -> bool {
    let d = (&p.x - &a.x) * (&b.x - &a.x) + (&p.y - &a.y) * (&b.y - &a.y);
    if d.is_negative() {
        return false;
    }
    let len = (&b.x - &a.x) * (&b.x - &a.x) + (&b.y - &a.y) * (&b.y - &a.y);
    d <= len
}

/// The set of valid pull-out directions for one top facet: a convex chart
/// region plus its interpretation as a cone of 3D directions.
#[derive(Debug, Clone)]
pub struct DirectionCone {
    pub top_facet: usize,
    pub chart: Basis,
    pub region: ConvexRegion,
    /// Lift of the region's representative, in the original coordinate frame.
    pub sample_direction: Option<Vec3>,
}

impl DirectionCone {
    /// Lifts an arbitrary chart point of this cone to a 3D direction.
    pub fn lift(&self, p: &Point2) -> Vec3 {
        self.chart.lift(&p.x, &p.y)
    }
}

/// Central projection of a facet hemisphere onto the chart plane.
///
/// For `ClosedNonneg` the result is the chart image of `{d : dot(d, n) >= 0}`:
/// the closed half-plane with coefficients `(dot(n,u), dot(n,v), dot(n,w))`.
/// For `OpenNeg` the image of the open complement: negated coefficients,
/// strict. When `n` is parallel to the pole the image degenerates to the
/// empty set or the entire plane.
pub fn project_hemisphere(
    normal: &Vec3,
    chart: &Basis,
    side: HemisphereSide,
) -> Result<HalfPlane, KernelError> {
    if normal.is_zero() {
        return Err(KernelError::ZeroVector);
    }
    let a = dot(normal, &chart.u);
    let b = dot(normal, &chart.v);
    let c = dot(normal, &chart.w);
    Ok(match side {
        HemisphereSide::ClosedNonneg => HalfPlane::new(a, b, c, false),
        HemisphereSide::OpenNeg => HalfPlane::new(-a, -b, -c, true),
    })
}

/// Packages a chart region as a direction cone, with a deterministic sample
/// direction lifted back to the original coordinate frame.
pub fn cone_from_region(top_facet: usize, chart: Basis, region: ConvexRegion) -> DirectionCone {
    let sample_direction = region
        .representative()
        .map(|p| chart.lift(&p.x, &p.y));
    DirectionCone {
        top_facet,
        chart,
        region,
        sample_direction,
    }
}
