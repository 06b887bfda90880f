//! Exact intersection of closed half-planes.
//!
//! The intersection is computed as the area between two line envelopes:
//! constraints whose inward normal has positive y-coefficient bound the
//! region from below (`y >= m x + q`, lower envelope `L = max` of lines),
//! negative y-coefficient from above (`U = min`), and vertical constraints
//! clamp `x`. `L` is convex and `U` concave, so `L - U` is convex and the
//! feasible x-range `{x : L(x) <= U(x)}` is an exact interval. Every
//! degenerate shape (point, segment, ray, line, strip, ...) falls out of the
//! interval/extent analysis.
//!
//! Within each envelope the lines must arrive in slope order, which a single
//! angular sort provides (or the caller provides, for the sorted variant):
//! as the constraint direction sweeps a half-turn, the boundary slope `-a/b`
//! increases monotonically.

use crate::direction_space::{ConvexRegion, HalfPlane, HalfPlaneKind, Point2};
use crate::kernel::Scalar;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("constraints are not in nondecreasing boundary-angle order (position {0})")]
pub struct NotSorted(pub usize);

/// Total angular order of constraint inward normals over `[0, 2pi)`,
/// starting at the +x axis. Exact: half-turn index, then cross-product sign.
pub fn angle_cmp(a1: &Scalar, b1: &Scalar, a2: &Scalar, b2: &Scalar) -> Ordering {
    let half = |a: &Scalar, b: &Scalar| -> u8 {
        u8::from(!(b.is_positive() || (b.is_zero() && a.is_positive())))
    };
    half(a1, b1).cmp(&half(a2, b2)).then_with(|| {
        let cross = a1 * b2 - b1 * a2;
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Intersects closed half-planes in any order (sorts internally).
///
/// Panics if a strict constraint is passed; both intersection routines are
/// defined on closed constraints only.
pub fn intersect_halfplanes(constraints: &[HalfPlane]) -> ConvexRegion {
    let Some(proper) = screen(constraints) else {
        return ConvexRegion::Empty;
    };
    if proper.is_empty() {
        return ConvexRegion::FullPlane;
    }
    let mut buckets = Buckets::default();
    let mut lows: Vec<Line> = Vec::new();
    let mut ups: Vec<Line> = Vec::new();
    for &(idx, h) in &proper {
        buckets.route(idx, h, &mut lows, &mut ups);
    }
    // Slope order; parallel ties keep the tighter constraint (larger q for
    // the lower envelope, smaller for the upper).
    lows.sort_by(|l1, l2| l1.m.cmp(&l2.m).then_with(|| l2.q.cmp(&l1.q)));
    lows.dedup_by(|later, kept| later.m == kept.m);
    ups.sort_by(|l1, l2| l1.m.cmp(&l2.m).then_with(|| l1.q.cmp(&l2.q)));
    ups.dedup_by(|later, kept| later.m == kept.m);
    assemble(lows, ups, buckets, &proper)
}

/// Intersects closed half-planes given in nondecreasing boundary-angle order
/// (ties allowed), in a linear number of primitive operations.
pub fn intersect_sorted_halfplanes(constraints: &[HalfPlane]) -> Result<ConvexRegion, NotSorted> {
    let Some(proper) = screen(constraints) else {
        return Ok(ConvexRegion::Empty);
    };
    if proper.is_empty() {
        return Ok(ConvexRegion::FullPlane);
    }
    for window in proper.windows(2) {
        let (i, h1) = window[0];
        let (_, h2) = window[1];
        if angle_cmp(&h1.a, &h1.b, &h2.a, &h2.b) == Ordering::Greater {
            return Err(NotSorted(i));
        }
    }
    let mut buckets = Buckets::default();
    let mut lows: Vec<Line> = Vec::new();
    let mut ups: Vec<Line> = Vec::new();
    for &(idx, h) in &proper {
        buckets.route(idx, h, &mut lows, &mut ups);
    }
    // Angular order within each bucket is already slope order; resolve ties.
    dedup_parallel_keep_tighter(&mut lows, true);
    dedup_parallel_keep_tighter(&mut ups, false);
    Ok(assemble(lows, ups, buckets, &proper))
}

/// Drops Full constraints, reports any Empty one as infeasible (None),
/// rejects strict ones.
fn screen(constraints: &[HalfPlane]) -> Option<Vec<(usize, &HalfPlane)>> {
    let mut proper = Vec::with_capacity(constraints.len());
    for (i, h) in constraints.iter().enumerate() {
        assert!(!h.strict, "intersection is defined on closed constraints");
        match h.kind() {
            HalfPlaneKind::Empty => return None,
            HalfPlaneKind::Full => {}
            HalfPlaneKind::Proper => proper.push((i, h)),
        }
    }
    Some(proper)
}

/// Boundary line `y = m x + q` of a non-vertical constraint.
#[derive(Debug, Clone)]
struct Line {
    m: Scalar,
    q: Scalar,
    src: usize,
}

impl Line {
    fn eval(&self, x: &Scalar) -> Scalar {
        &self.m * x + &self.q
    }
}

fn cross_x(l1: &Line, l2: &Line) -> Scalar {
    (&l2.q - &l1.q) / (&l1.m - &l2.m)
}

#[derive(Default)]
struct Buckets {
    xlo: Option<(Scalar, usize)>,
    xhi: Option<(Scalar, usize)>,
}

impl Buckets {
    fn route(&mut self, idx: usize, h: &HalfPlane, lows: &mut Vec<Line>, ups: &mut Vec<Line>) {
        if h.b.is_zero() {
            let x = -&h.c / &h.a;
            if h.a.is_positive() {
                // x >= x0: keep the largest lower clamp.
                if self.xlo.as_ref().is_none_or(|(cur, _)| x > *cur) {
                    self.xlo = Some((x, idx));
                }
            } else if self.xhi.as_ref().is_none_or(|(cur, _)| x < *cur) {
                self.xhi = Some((x, idx));
            }
        } else {
            let line = Line {
                m: -&h.a / &h.b,
                q: -&h.c / &h.b,
                src: idx,
            };
            if h.b.is_positive() {
                lows.push(line);
            } else {
                ups.push(line);
            }
        }
    }
}

fn dedup_parallel_keep_tighter(lines: &mut Vec<Line>, lower: bool) {
    let mut out: Vec<Line> = Vec::with_capacity(lines.len());
    for line in lines.drain(..) {
        if let Some(last) = out.last_mut() {
            if last.m == line.m {
                let keep_new = if lower { line.q > last.q } else { line.q < last.q };
                if keep_new {
                    *last = line;
                }
                continue;
            }
            debug_assert!(line.m > last.m, "bucket not in slope order");
        }
        out.push(line);
    }
    *lines = out;
}

/// Upper envelope (`max` of lines) over slope-sorted, slope-distinct input.
struct Envelope {
    lines: Vec<Line>,
    /// `breaks[i]` is where piece `i` hands over to piece `i + 1`; strictly
    /// increasing.
    breaks: Vec<Scalar>,
}

impl Envelope {
    fn build_max(lines: Vec<Line>) -> Self {
        let mut kept: Vec<Line> = Vec::with_capacity(lines.len());
        for line in lines {
            while kept.len() >= 2 {
                let second = &kept[kept.len() - 2];
                let top = &kept[kept.len() - 1];
                // `top` never reaches the envelope if the newcomer overtakes
                // `second` no later than `top` did.
                if cross_x(second, &line) <= cross_x(second, top) {
                    kept.pop();
                } else {
                    break;
                }
            }
            kept.push(line);
        }
        let breaks = kept.windows(2).map(|w| cross_x(&w[0], &w[1])).collect::<Vec<_>>();
        debug_assert!(breaks.windows(2).all(|w| w[0] < w[1]));
        Envelope { lines: kept, breaks }
    }

    /// Lower envelope (`min`) via reflection through the x-axis.
    fn build_min(lines: Vec<Line>) -> Self {
        let negated = lines
            .into_iter()
            .rev() // keep slopes increasing after negation
            .map(|l| Line {
                m: -l.m,
                q: -l.q,
                src: l.src,
            })
            .collect();
        let mut env = Self::build_max(negated);
        for l in &mut env.lines {
            l.m = -l.m.clone();
            l.q = -l.q.clone();
        }
        env
    }

    /// Piece valid on an interval with right end `x` (i.e. just left of `x`).
    fn piece_left_at(&self, x: &Scalar) -> usize {
        self.breaks.partition_point(|b| b < x)
    }

    /// Piece valid on an interval with left end `x` (just right of `x`).
    fn piece_right_at(&self, x: &Scalar) -> usize {
        self.breaks.partition_point(|b| b <= x)
    }

    fn eval(&self, x: &Scalar) -> Scalar {
        self.lines[self.piece_left_at(x)].eval(x)
    }
}

/// Endpoint of an x-interval; `None` is the corresponding infinity.
type Bound = Option<Scalar>;

fn max_lo(a: Bound, b: Bound) -> Bound {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x >= y { x } else { y }),
        (x, None) | (None, x) => x,
    }
}

fn min_hi(a: Bound, b: Bound) -> Bound {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x <= y { x } else { y }),
        (x, None) | (None, x) => x,
    }
}

/// The x-interval where `L(x) <= U(x)`, exploiting convexity of `L - U`.
/// Returns `None` when the difference is positive everywhere.
fn difference_interval(low: &Envelope, up: &Envelope) -> Option<(Bound, Bound)> {
    let mut cuts: Vec<Scalar> = low.breaks.iter().chain(up.breaks.iter()).cloned().collect();
    cuts.sort();
    cuts.dedup();

    // Interval endpoints found so far; outer None = no feasible piece yet.
    let mut lo: Option<Bound> = None;
    let mut hi: Option<Bound> = None;
    let mut consider = |piece_lo: Bound, piece_hi: Bound, l: &Line, u: &Line| {
        // D(x) = alpha x + beta on this piece; find where D <= 0.
        let alpha = &l.m - &u.m;
        let beta = &l.q - &u.q;
        let (sub_lo, sub_hi) = if alpha.is_zero() {
            if beta.is_positive() {
                return;
            }
            (piece_lo, piece_hi)
        } else {
            let cross = -beta / &alpha;
            if alpha.is_positive() {
                (piece_lo, min_hi(piece_hi, Some(cross)))
            } else {
                (max_lo(piece_lo, Some(cross)), piece_hi)
            }
        };
        if let (Some(a), Some(b)) = (&sub_lo, &sub_hi) {
            if a > b {
                return;
            }
        }
        lo = Some(match lo.take() {
            None => sub_lo,
            Some(cur) => match (cur, sub_lo) {
                (None, _) | (_, None) => None,
                (Some(a), Some(b)) => Some(if a <= b { a } else { b }),
            },
        });
        hi = Some(match hi.take() {
            None => sub_hi,
            Some(cur) => match (cur, sub_hi) {
                (None, _) | (_, None) => None,
                (Some(a), Some(b)) => Some(if a >= b { a } else { b }),
            },
        });
    };

    let mut li = 0usize;
    let mut ui = 0usize;
    let mut left: Bound = None;
    for cut in &cuts {
        consider(left.clone(), Some(cut.clone()), &low.lines[li], &up.lines[ui]);
        if li < low.breaks.len() && low.breaks[li] == *cut {
            li += 1;
        }
        if ui < up.breaks.len() && up.breaks[ui] == *cut {
            ui += 1;
        }
        left = Some(cut.clone());
    }
    consider(left, None, &low.lines[li], &up.lines[ui]);

    match (lo, hi) {
        (Some(lo), Some(hi)) => Some((lo, hi)),
        _ => None,
    }
}

fn assemble(
    lows: Vec<Line>,
    ups: Vec<Line>,
    buckets: Buckets,
    proper: &[(usize, &HalfPlane)],
) -> ConvexRegion {
    let low_env = (!lows.is_empty()).then(|| Envelope::build_max(lows));
    let up_env = (!ups.is_empty()).then(|| Envelope::build_min(ups));

    let mut xlo: Bound = buckets.xlo.as_ref().map(|(x, _)| x.clone());
    let mut xhi: Bound = buckets.xhi.as_ref().map(|(x, _)| x.clone());
    if let (Some(l), Some(u)) = (&low_env, &up_env) {
        match difference_interval(l, u) {
            None => return ConvexRegion::Empty,
            Some((dlo, dhi)) => {
                xlo = max_lo(xlo, dlo);
                xhi = min_hi(xhi, dhi);
            }
        }
    }
    if let (Some(a), Some(b)) = (&xlo, &xhi) {
        if a > b {
            return ConvexRegion::Empty;
        }
    }

    // Tight-constraint scan for the degenerate kinds.
    let actives_at = |probes: &[Point2]| -> Vec<HalfPlane> {
        proper
            .iter()
            .filter(|(_, h)| probes.iter().any(|p| h.eval(p).is_zero()))
            .map(|(_, h)| (*h).clone())
            .collect()
    };
    let ray_region = |base: Point2, dir: Point2, actives_at: &dyn Fn(&[Point2]) -> Vec<HalfPlane>| {
        let tip = Point2::new(&base.x + &dir.x, &base.y + &dir.y);
        ConvexRegion::Ray {
            active: actives_at(&[base.clone(), tip]),
            base,
            direction: dir,
        }
    };

    // Single-x slice: the region lives on one vertical line.
    if let (Some(a), Some(b)) = (&xlo, &xhi) {
        if a == b {
            let x0 = a.clone();
            let ylo = low_env.as_ref().map(|e| e.eval(&x0));
            let yhi = up_env.as_ref().map(|e| e.eval(&x0));
            return match (ylo, yhi) {
                (Some(l), Some(u)) => {
                    debug_assert!(l <= u);
                    if l == u {
                        let p = Point2::new(x0, l);
                        ConvexRegion::Point {
                            active: actives_at(std::slice::from_ref(&p)),
                            point: p,
                        }
                    } else {
                        let p1 = Point2::new(x0.clone(), l);
                        let p2 = Point2::new(x0, u);
                        ConvexRegion::Segment {
                            active: actives_at(&[p1.clone(), p2.clone()]),
                            ends: [p1, p2],
                        }
                    }
                }
                (Some(l), None) => {
                    ray_region(Point2::new(x0, l), Point2::from_ints(0, 1), &actives_at)
                }
                (None, Some(u)) => {
                    ray_region(Point2::new(x0, u), Point2::from_ints(0, -1), &actives_at)
                }
                (None, None) => {
                    let base = Point2::new(x0, Scalar::zero());
                    let dir = Point2::from_ints(0, 1);
                    let tip = Point2::new(&base.x + &dir.x, &base.y + &dir.y);
                    ConvexRegion::Line {
                        active: actives_at(&[base.clone(), tip]),
                        base,
                        direction: dir,
                    }
                }
            };
        }
    }

    // A 1-dimensional region with x-extent: L == U throughout the interval.
    if let (Some(le), Some(ue)) = (&low_env, &up_env) {
        let x_test = interior_probe(&xlo, &xhi);
        if le.eval(&x_test) == ue.eval(&x_test) {
            // L - U is convex, <= 0 on the interval and 0 at an interior
            // point, hence identically 0: the region is a piece of one line.
            let line = &le.lines[le.piece_left_at(&x_test)];
            let at = |x: &Scalar| Point2::new(x.clone(), line.eval(x));
            return match (&xlo, &xhi) {
                (Some(a), Some(b)) => {
                    let p1 = at(a);
                    let p2 = at(b);
                    ConvexRegion::Segment {
                        active: actives_at(&[p1.clone(), p2.clone()]),
                        ends: [p1, p2],
                    }
                }
                (Some(a), None) => ray_region(
                    at(a),
                    Point2::new(Scalar::one(), line.m.clone()),
                    &actives_at,
                ),
                (None, Some(b)) => ray_region(
                    at(b),
                    Point2::new(-Scalar::one(), -line.m.clone()),
                    &actives_at,
                ),
                (None, None) => {
                    let base = at(&Scalar::zero());
                    let dir = Point2::new(Scalar::one(), line.m.clone());
                    let tip = Point2::new(&base.x + &dir.x, &base.y + &dir.y);
                    ConvexRegion::Line {
                        active: actives_at(&[base.clone(), tip]),
                        base,
                        direction: dir,
                    }
                }
            };
        }
    }

    build_two_dimensional(low_env, up_env, buckets, xlo, xhi, proper)
}

/// Any x strictly inside a nondegenerate interval.
fn interior_probe(xlo: &Bound, xhi: &Bound) -> Scalar {
    let one = Scalar::one();
    match (xlo, xhi) {
        (Some(a), Some(b)) => (a + b) / (Scalar::one() + Scalar::one()),
        (Some(a), None) => a + one,
        (None, Some(b)) => b - one,
        (None, None) => Scalar::zero(),
    }
}

/// Envelope pieces clipped to the feasible interval, left to right.
struct Chain {
    /// Finite boundary points: interval ends (when finite) plus interior
    /// breakpoints.
    points: Vec<Point2>,
    /// Constraint index per piece overlapping the interval.
    srcs: Vec<usize>,
    first_slope: Scalar,
    last_slope: Scalar,
}

fn clip_chain(env: &Envelope, xlo: &Bound, xhi: &Bound) -> Chain {
    let lo_piece = match xlo {
        Some(x) => env.piece_right_at(x),
        None => 0,
    };
    let hi_piece = match xhi {
        Some(x) => env.piece_left_at(x),
        None => env.lines.len() - 1,
    };
    debug_assert!(lo_piece <= hi_piece);
    let mut points = Vec::new();
    if let Some(x) = xlo {
        points.push(Point2::new(x.clone(), env.eval(x)));
    }
    for i in lo_piece..hi_piece {
        let bx = &env.breaks[i];
        let inside_lo = xlo.as_ref().is_none_or(|x| bx > x);
        let inside_hi = xhi.as_ref().is_none_or(|x| bx < x);
        if inside_lo && inside_hi {
            points.push(Point2::new(bx.clone(), env.lines[i].eval(bx)));
        }
    }
    if let Some(x) = xhi {
        points.push(Point2::new(x.clone(), env.eval(x)));
    }
    let srcs = (lo_piece..=hi_piece).map(|i| env.lines[i].src).collect();
    Chain {
        points,
        srcs,
        first_slope: env.lines[lo_piece].m.clone(),
        last_slope: env.lines[hi_piece].m.clone(),
    }
}

fn antiparallel(h1: &HalfPlane, h2: &HalfPlane) -> bool {
    (&h1.a * &h2.b - &h1.b * &h2.a).is_zero() && (&h1.a * &h2.a + &h1.b * &h2.b).is_negative()
}

fn build_two_dimensional(
    low_env: Option<Envelope>,
    up_env: Option<Envelope>,
    buckets: Buckets,
    xlo: Bound,
    xhi: Bound,
    proper: &[(usize, &HalfPlane)],
) -> ConvexRegion {
    let hp = |idx: usize| -> HalfPlane {
        let pos = proper
            .binary_search_by_key(&idx, |(i, _)| *i)
            .expect("source index refers to a screened constraint");
        proper[pos].1.clone()
    };

    let low_chain = low_env.as_ref().map(|e| clip_chain(e, &xlo, &xhi));
    let up_chain = up_env.as_ref().map(|e| clip_chain(e, &xlo, &xhi));

    // A vertical wall exists where the interval end comes from a vertical
    // constraint (a crossing of L and U forms a corner instead).
    let left_wall = match (&xlo, &buckets.xlo) {
        (Some(x), Some((vx, src))) if x == vx => Some(*src),
        _ => None,
    };
    let right_wall = match (&xhi, &buckets.xhi) {
        (Some(x), Some((vx, src))) if x == vx => Some(*src),
        _ => None,
    };

    let n_active = low_chain.as_ref().map_or(0, |c| c.srcs.len())
        + up_chain.as_ref().map_or(0, |c| c.srcs.len())
        + usize::from(left_wall.is_some())
        + usize::from(right_wall.is_some());

    if n_active == 1 {
        let only = low_chain
            .as_ref()
            .and_then(|c| c.srcs.first().copied())
            .or_else(|| up_chain.as_ref().and_then(|c| c.srcs.first().copied()))
            .or(left_wall)
            .or(right_wall)
            .expect("one active constraint");
        return ConvexRegion::HalfPlaneRegion { bound: hp(only) };
    }
    if n_active == 2 {
        let mut ids = Vec::new();
        if let Some(c) = &low_chain {
            ids.extend(&c.srcs);
        }
        if let Some(c) = &up_chain {
            ids.extend(&c.srcs);
        }
        ids.extend(left_wall.iter());
        ids.extend(right_wall.iter());
        let h1 = hp(ids[0]);
        let h2 = hp(ids[1]);
        if antiparallel(&h1, &h2) {
            return ConvexRegion::Strip { bounds: [h1, h2] };
        }
    }

    // Walk the boundary counterclockwise (region on the left), collecting
    // vertices and bounding constraints in walk order.
    let mut vertices: Vec<Point2> = Vec::new();
    let mut active_ids: Vec<usize> = Vec::new();

    let push_pts = |vertices: &mut Vec<Point2>, pts: &[Point2]| {
        for p in pts {
            if vertices.last() != Some(p) {
                vertices.push(p.clone());
            }
        }
    };
    let reversed = |pts: &[Point2]| -> Vec<Point2> {
        let mut v = pts.to_vec();
        v.reverse();
        v
    };

    let rays: [Point2; 2];
    match (&low_chain, &up_chain) {
        (Some(low), Some(up)) => {
            let bounded = xlo.is_some() && xhi.is_some();
            if bounded {
                // Cycle: lower left->right, right wall, upper right->left, left wall.
                push_pts(&mut vertices, &low.points);
                push_pts(&mut vertices, &reversed(&up.points));
                if vertices.len() > 1 && vertices.last() == vertices.first() {
                    vertices.pop();
                }
                active_ids.extend(&low.srcs);
                if let Some(src) = right_wall {
                    active_ids.push(src);
                }
                active_ids.extend(up.srcs.iter().rev());
                if let Some(src) = left_wall {
                    active_ids.push(src);
                }
                debug_assert!(vertices.len() >= 3);
                return ConvexRegion::BoundedPolygon {
                    vertices,
                    active: active_ids.into_iter().map(hp).collect(),
                };
            }
            assert!(
                xlo.is_some() || xhi.is_some(),
                "unbounded both ways with two chains is a strip or a line"
            );
            if xhi.is_none() {
                // In from +inf along the upper chain, out along the lower.
                push_pts(&mut vertices, &reversed(&up.points));
                push_pts(&mut vertices, &low.points);
                active_ids.extend(up.srcs.iter().rev());
                if let Some(src) = left_wall {
                    active_ids.push(src);
                }
                active_ids.extend(&low.srcs);
                rays = [
                    Point2::new(Scalar::one(), up.last_slope.clone()),
                    Point2::new(Scalar::one(), low.last_slope.clone()),
                ];
            } else {
                // xlo = -inf: in from -inf along the lower chain, out along the upper.
                push_pts(&mut vertices, &low.points);
                push_pts(&mut vertices, &reversed(&up.points));
                active_ids.extend(&low.srcs);
                if let Some(src) = right_wall {
                    active_ids.push(src);
                }
                active_ids.extend(up.srcs.iter().rev());
                rays = [
                    Point2::new(-Scalar::one(), -low.first_slope.clone()),
                    Point2::new(-Scalar::one(), -up.first_slope.clone()),
                ];
            }
        }
        (None, Some(up)) => {
            // Unbounded below: in from the right, out to the left.
            push_pts(&mut vertices, &reversed(&up.points));
            let first_ray = match &xhi {
                Some(_) => Point2::from_ints(0, -1),
                None => Point2::new(Scalar::one(), up.last_slope.clone()),
            };
            let last_ray = match &xlo {
                Some(_) => Point2::from_ints(0, -1),
                None => Point2::new(-Scalar::one(), -up.first_slope.clone()),
            };
            if let Some(src) = right_wall {
                active_ids.push(src);
            }
            active_ids.extend(up.srcs.iter().rev());
            if let Some(src) = left_wall {
                active_ids.push(src);
            }
            rays = [first_ray, last_ray];
        }
        (Some(low), None) => {
            // Unbounded above: in from the left, out to the right.
            push_pts(&mut vertices, &low.points);
            let first_ray = match &xlo {
                Some(_) => Point2::from_ints(0, 1),
                None => Point2::new(-Scalar::one(), -low.first_slope.clone()),
            };
            let last_ray = match &xhi {
                Some(_) => Point2::from_ints(0, 1),
                None => Point2::new(Scalar::one(), low.last_slope.clone()),
            };
            if let Some(src) = left_wall {
                active_ids.push(src);
            }
            active_ids.extend(&low.srcs);
            if let Some(src) = right_wall {
                active_ids.push(src);
            }
            rays = [first_ray, last_ray];
        }
        (None, None) => {
            unreachable!("vertical-only regions have at most two active constraints");
        }
    }

    debug_assert!(!vertices.is_empty());
    ConvexRegion::UnboundedPolygon {
        vertices,
        rays,
        active: active_ids.into_iter().map(hp).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction_space::RegionKind;
    use crate::kernel::rat;

    fn hp(a: i64, b: i64, c: i64) -> HalfPlane {
        HalfPlane::closed_ints(a, b, c)
    }

    fn sorted_of(cs: &[HalfPlane]) -> ConvexRegion {
        intersect_sorted_halfplanes(cs).unwrap()
    }

    #[test]
    fn unit_square() {
        let cs = [hp(1, 0, 0), hp(-1, 0, 1), hp(0, 1, 0), hp(0, -1, 1)];
        let region = intersect_halfplanes(&cs);
        assert_eq!(region.kind(), RegionKind::BoundedPolygon);
        let mut vs = region.vertices();
        vs.sort_by(|p, q| p.x.cmp(&q.x).then_with(|| p.y.cmp(&q.y)));
        let expect: Vec<Point2> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(x, y)| Point2::from_ints(x, y))
            .collect();
        assert_eq!(vs, expect);
    }

    #[test]
    fn opposing_pair_gives_vertical_line() {
        let region = intersect_halfplanes(&[hp(1, 0, 0), hp(-1, 0, 0)]);
        assert_eq!(region.kind(), RegionKind::Line);
        assert!(region.contains(&Point2::from_ints(0, 7)));
        assert!(!region.contains(&Point2::from_ints(1, 0)));
    }

    #[test]
    fn cube_top_constraint_set_pins_origin() {
        let full = HalfPlane::closed_ints(0, 0, 1);
        let cs = [hp(1, 0, 0), hp(-1, 0, 0), hp(0, 1, 0), hp(0, -1, 0), full];
        let region = intersect_halfplanes(&cs);
        assert_eq!(region.kind(), RegionKind::Point);
        assert!(region.contains(&Point2::from_ints(0, 0)));
    }

    #[test]
    fn sorted_axis_aligned_square() {
        // Angular order: 0, pi/2, pi, 3pi/2.
        let cs = [hp(1, 0, 0), hp(0, 1, 0), hp(-1, 0, 1), hp(0, -1, 1)];
        let region = sorted_of(&cs);
        assert_eq!(region.kind(), RegionKind::BoundedPolygon);
        assert_eq!(region.vertices().len(), 4);
    }

    #[test]
    fn sorted_parallel_pair_keeps_tighter() {
        let cs = [hp(1, 0, 0), hp(1, 0, -1)]; // x >= 0, x >= 1
        let region = sorted_of(&cs);
        match region {
            ConvexRegion::HalfPlaneRegion { bound } => assert_eq!(bound, hp(1, 0, -1)),
            other => panic!("expected half-plane, got {other:?}"),
        }
    }

    #[test]
    fn sorted_rejects_unordered_input() {
        let cs = [hp(0, 1, 0), hp(1, 0, 0)]; // pi/2 then 0
        assert_eq!(intersect_sorted_halfplanes(&cs), Err(NotSorted(0)));
    }

    #[test]
    fn empty_intersection() {
        let region = intersect_halfplanes(&[hp(1, 0, 0), hp(-1, 0, -1)]);
        assert_eq!(region.kind(), RegionKind::Empty);
    }

    #[test]
    fn no_constraints_is_full_plane() {
        assert_eq!(intersect_halfplanes(&[]).kind(), RegionKind::FullPlane);
        let full = HalfPlane::closed_ints(0, 0, 5);
        assert_eq!(intersect_halfplanes(&[full]).kind(), RegionKind::FullPlane);
    }

    #[test]
    fn single_constraint_is_half_plane() {
        assert_eq!(
            intersect_halfplanes(&[hp(2, 3, -1)]).kind(),
            RegionKind::HalfPlaneRegion
        );
    }

    #[test]
    fn horizontal_strip() {
        let region = intersect_halfplanes(&[hp(0, 1, 0), hp(0, -1, 2)]);
        assert_eq!(region.kind(), RegionKind::Strip);
        assert!(region.contains(&Point2::from_ints(100, 1)));
        assert!(!region.contains(&Point2::from_ints(0, 3)));
    }

    #[test]
    fn vertical_strip() {
        let region = intersect_halfplanes(&[hp(1, 0, 0), hp(-1, 0, 1)]);
        assert_eq!(region.kind(), RegionKind::Strip);
    }

    #[test]
    fn slanted_line() {
        let region = intersect_halfplanes(&[hp(-1, 1, 0), hp(1, -1, 0)]); // y = x
        assert_eq!(region.kind(), RegionKind::Line);
        assert!(region.contains(&Point2::from_ints(5, 5)));
    }

    #[test]
    fn horizontal_ray() {
        let region = intersect_halfplanes(&[hp(0, 1, 0), hp(0, -1, 0), hp(1, 0, 0)]);
        assert_eq!(region.kind(), RegionKind::Ray);
        assert!(region.contains(&Point2::from_ints(9, 0)));
        assert!(!region.contains(&Point2::from_ints(-1, 0)));
    }

    #[test]
    fn segment_between_walls() {
        let region = intersect_halfplanes(&[hp(0, 1, 0), hp(0, -1, 0), hp(1, 0, 0), hp(-1, 0, 1)]);
        assert_eq!(region.kind(), RegionKind::Segment);
        let mut vs = region.vertices();
        vs.sort_by(|p, q| p.x.cmp(&q.x));
        assert_eq!(vs, vec![Point2::from_ints(0, 0), Point2::from_ints(1, 0)]);
    }

    #[test]
    fn vertical_segment_slice() {
        let region = intersect_halfplanes(&[hp(1, 0, 0), hp(-1, 0, 0), hp(0, 1, 0), hp(0, -1, 1)]);
        assert_eq!(region.kind(), RegionKind::Segment);
    }

    #[test]
    fn quadrant_is_unbounded_polygon() {
        let region = intersect_halfplanes(&[hp(1, 0, 0), hp(0, 1, 0)]);
        assert_eq!(region.kind(), RegionKind::UnboundedPolygon);
        assert_eq!(region.vertices(), vec![Point2::from_ints(0, 0)]);
        assert!(region.contains(&Point2::from_ints(10, 30)));
        assert!(!region.contains(&Point2::from_ints(-1, 3)));
    }

    #[test]
    fn downward_wedge() {
        let region = intersect_halfplanes(&[hp(-1, -1, 0), hp(1, -1, 0)]); // y <= -x, y <= x
        assert_eq!(region.kind(), RegionKind::UnboundedPolygon);
        assert!(region.contains(&Point2::from_ints(0, -5)));
        assert!(!region.contains(&Point2::from_ints(0, 1)));
    }

    #[test]
    fn tent_segment_from_parallel_pairs() {
        // Two opposing walls pin y = 0; two opposing slants bound x.
        let cs = [hp(0, 1, 0), hp(0, -1, 0), hp(-2, 0, 1), hp(2, 0, 1)];
        let region = intersect_halfplanes(&cs);
        assert_eq!(region.kind(), RegionKind::Segment);
    }

    #[test]
    fn vertex_invariant_on_polygons() {
        // Every vertex satisfies all constraints, at least two with equality.
        let cs = [hp(1, 0, 0), hp(0, 1, 0), hp(-1, -1, 3), hp(-1, 1, 5)];
        let region = intersect_halfplanes(&cs);
        assert!(!region.vertices().is_empty());
        for v in region.vertices() {
            let tight = cs.iter().filter(|h| h.eval(&v).is_zero()).count();
            assert!(cs.iter().all(|h| h.contains(&v)));
            assert!(tight >= 2, "vertex {v:?} tight on {tight} constraints");
        }
    }

    #[test]
    fn sorted_matches_general_on_offset_square() {
        let cs = [hp(1, 0, 2), hp(0, 1, 2), hp(-1, 0, 2), hp(0, -1, 2)];
        let general = intersect_halfplanes(&cs);
        let sorted = sorted_of(&cs);
        assert_eq!(general, sorted);
    }

    #[test]
    fn active_sets_exclude_redundant_constraints() {
        let cs = [hp(1, 0, 0), hp(0, 1, 0), hp(1, 1, 10)]; // last is implied
        let region = intersect_halfplanes(&cs);
        let active = region.active();
        assert_eq!(active.len(), 2);
        assert!(!active.contains(&cs[2]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn hp_strategy() -> impl Strategy<Value = HalfPlane> {
            ((-3i64..4), (-3i64..4), (-5i64..6)).prop_map(|(a, b, c)| hp(a, b, c))
        }

        fn brute_contains(cs: &[HalfPlane], p: &Point2) -> bool {
            cs.iter().all(|h| h.contains(p))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(300))]

            // Region membership agrees with direct constraint evaluation on a
            // grid of rational probes (degeneracy-heavy coefficients).
            #[test]
            fn region_classifies_like_the_constraints(
                cs in proptest::collection::vec(hp_strategy(), 0..7)
            ) {
                let region = intersect_halfplanes(&cs);
                for px in -4i64..5 {
                    for py in -4i64..5 {
                        for (dx, dy) in [(0i64, 0i64), (1, 2)] {
                            let p = Point2::new(
                                rat(px) + crate::kernel::ratio(dx, 3),
                                rat(py) + crate::kernel::ratio(dy, 3),
                            );
                            prop_assert_eq!(
                                region.contains(&p),
                                brute_contains(&cs, &p),
                                "kind {:?} at {:?}", region.kind(), p
                            );
                        }
                    }
                }
                // The representative, when it exists, is a member.
                if let Some(rep) = region.representative() {
                    prop_assert!(brute_contains(&cs, &rep));
                } else {
                    prop_assert!(region.is_empty());
                }
            }

            // Sorting the constraints by angle and using the linear routine
            // gives the same region. Degenerate constraints carry no angle
            // and go last.
            #[test]
            fn sorted_equals_general(
                cs in proptest::collection::vec(hp_strategy(), 0..7)
            ) {
                let (mut cs, degenerate): (Vec<HalfPlane>, Vec<HalfPlane>) = cs
                    .into_iter()
                    .partition(|h| h.kind() == crate::direction_space::HalfPlaneKind::Proper);
                cs.sort_by(|h1, h2| angle_cmp(&h1.a, &h1.b, &h2.a, &h2.b));
                cs.extend(degenerate);
                let general = intersect_halfplanes(&cs);
                let sorted = intersect_sorted_halfplanes(&cs).unwrap();
                prop_assert_eq!(general.kind(), sorted.kind());
                let mut vg = general.vertices();
                let mut vs = sorted.vertices();
                let key = |p: &Point2| (p.x.clone(), p.y.clone());
                vg.sort_by_key(key);
                vs.sort_by_key(key);
                prop_assert_eq!(vg, vs);
            }
        }
    }
}
