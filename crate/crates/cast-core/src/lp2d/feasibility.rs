//! Randomized incremental feasibility for closed half-planes.
//!
//! The solver minimizes `(x, y)` lexicographically inside a symbolic box
//! `|x|, |y| <= M` where `M` stands for an arbitrarily large value.
//! Coordinates are affine forms `fin + inf * M`; comparisons are lexicographic
//! in `(inf, fin)`, which is exact for sufficiently large `M`. The box makes
//! the optimum unique and set-determined, so the verdict (and the returned
//! point) cannot depend on the insertion order; the seed only permutes the
//! constraints for the expected-linear running time.
//!
//! When inserting a constraint whose boundary line has an empty 1D feasible
//! interval, the interval's two defining constraints plus the inserted one
//! form an infeasibility witness of size at most three.

use crate::direction_space::{HalfPlane, HalfPlaneKind, Point2};
use crate::kernel::Scalar;
use crate::rng::SplitMix64;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("constraint {0} is strict; feasibility requires closed constraints")]
    StrictConstraint(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// An exact point satisfying every constraint.
    Feasible(Point2),
    /// Indices of at most three constraints that are already jointly
    /// infeasible.
    Infeasible(Vec<usize>),
}

/// Affine form `fin + inf * M` for a symbolically large `M >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SymVal {
    fin: Scalar,
    inf: Scalar,
}

impl SymVal {
    fn finite(fin: Scalar) -> Self {
        Self {
            fin,
            inf: Scalar::zero(),
        }
    }

    fn m_units(fin: Scalar, inf: Scalar) -> Self {
        Self { fin, inf }
    }

    fn cmp_sym(&self, other: &Self) -> Ordering {
        self.inf
            .cmp(&other.inf)
            .then_with(|| self.fin.cmp(&other.fin))
    }

    fn is_nonneg(&self) -> bool {
        match self.inf.cmp(&Scalar::zero()) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => !self.fin.is_negative(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        Self {
            fin: &self.fin + &other.fin,
            inf: &self.inf + &other.inf,
        }
    }

    fn scale(&self, s: &Scalar) -> Self {
        Self {
            fin: &self.fin * s,
            inf: &self.inf * s,
        }
    }
}

/// Who defined a 1D interval endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BoundSrc {
    Box,
    Constraint(usize),
}

/// Exact point with symbolic coordinates.
#[derive(Debug, Clone)]
struct SymPoint {
    x: SymVal,
    y: SymVal,
}

fn eval_sym(h: &HalfPlane, p: &SymPoint) -> SymVal {
    let ax = p.x.scale(&h.a);
    let by = p.y.scale(&h.b);
    ax.add(&by).add(&SymVal::finite(h.c.clone()))
}

/// Finds an exact feasible point of the closed constraints, or an
/// infeasibility witness of at most three constraint indices. The seed fixes
/// the random insertion order; the verdict and the returned point are
/// seed-independent.
pub fn feasible_point(constraints: &[HalfPlane], seed: u64) -> Result<Feasibility, LpError> {
    for (i, h) in constraints.iter().enumerate() {
        if h.strict {
            return Err(LpError::StrictConstraint(i));
        }
    }
    // A degenerate Empty constraint is a witness on its own.
    for (i, h) in constraints.iter().enumerate() {
        if h.kind() == HalfPlaneKind::Empty {
            return Ok(Feasibility::Infeasible(vec![i]));
        }
    }
    let mut order: Vec<usize> = constraints
        .iter()
        .enumerate()
        .filter(|(_, h)| h.kind() == HalfPlaneKind::Proper)
        .map(|(i, _)| i)
        .collect();
    SplitMix64::new(seed).shuffle(&mut order);

    let minus_m = SymVal::m_units(Scalar::zero(), -Scalar::from_integer(1.into()));
    let mut point = SymPoint {
        x: minus_m.clone(),
        y: minus_m,
    };

    for (step, &k) in order.iter().enumerate() {
        let h = &constraints[k];
        if eval_sym(h, &point).is_nonneg() {
            continue;
        }
        // The new optimum, if any, lies on h's boundary line. Re-optimize
        // lexicographically along the line against everything inserted so far.
        match solve_on_line(h, k, &order[..step], constraints) {
            LineOutcome::Infeasible(mut witness) => {
                witness.sort_unstable();
                witness.dedup();
                return Ok(Feasibility::Infeasible(witness));
            }
            LineOutcome::Optimum(p) => point = p,
        }
    }

    Ok(Feasibility::Feasible(materialize(&point, constraints)))
}

enum LineOutcome {
    Optimum(SymPoint),
    Infeasible(Vec<usize>),
}

/// Lexicographic minimum along the boundary line of `h`, subject to the
/// already-inserted constraints and the symbolic box.
fn solve_on_line(
    h: &HalfPlane,
    h_idx: usize,
    inserted: &[usize],
    constraints: &[HalfPlane],
) -> LineOutcome {
    // Parameterize the line a*x + b*y + c = 0 so that minimizing t is the
    // lexicographic minimum along the line.
    //   b != 0: x = t, y = (-c - a t)/b
    //   b == 0: x = -c/a, y = t
    let (x0, xt, y0, yt);
    if !h.b.is_zero() {
        x0 = Scalar::zero();
        xt = Scalar::from_integer(1.into());
        y0 = -&h.c / &h.b;
        yt = -&h.a / &h.b;
    } else {
        x0 = -&h.c / &h.a;
        xt = Scalar::zero();
        y0 = Scalar::zero();
        yt = Scalar::from_integer(1.into());
    }

    let mut lo: Option<(SymVal, BoundSrc)> = None;
    let mut hi: Option<(SymVal, BoundSrc)> = None;
    let raise_lo = |v: SymVal, src: BoundSrc, lo: &mut Option<(SymVal, BoundSrc)>| {
        if lo.as_ref().is_none_or(|(cur, _)| v.cmp_sym(cur) == Ordering::Greater) {
            *lo = Some((v, src));
        }
    };
    let lower_hi = |v: SymVal, src: BoundSrc, hi: &mut Option<(SymVal, BoundSrc)>| {
        if hi.as_ref().is_none_or(|(cur, _)| v.cmp_sym(cur) == Ordering::Less) {
            *hi = Some((v, src));
        }
    };

    // Box bounds |x(t)| <= M, |y(t)| <= M.
    for (p0, pt) in [(&x0, &xt), (&y0, &yt)] {
        if pt.is_zero() {
            continue;
        }
        let low = SymVal::m_units(-p0 / pt, -(Scalar::from_integer(1.into()) / pt).abs());
        let high = SymVal::m_units(-p0 / pt, (Scalar::from_integer(1.into()) / pt).abs());
        raise_lo(low, BoundSrc::Box, &mut lo);
        lower_hi(high, BoundSrc::Box, &mut hi);
    }

    for &j in inserted {
        let g = &constraints[j];
        // g(x(t), y(t)) = r + s t >= 0
        let s = &g.a * &xt + &g.b * &yt;
        let r = &g.a * &x0 + &g.b * &y0 + &g.c;
        match s.cmp(&Scalar::zero()) {
            Ordering::Equal => {
                if r.is_negative() {
                    return LineOutcome::Infeasible(vec![h_idx, j]);
                }
            }
            Ordering::Greater => {
                raise_lo(SymVal::finite(-r / &s), BoundSrc::Constraint(j), &mut lo);
            }
            Ordering::Less => {
                lower_hi(SymVal::finite(-r / &s), BoundSrc::Constraint(j), &mut hi);
            }
        }
    }

    let (lo_val, lo_src) = lo.expect("the box always bounds t from below");
    let (hi_val, hi_src) = hi.expect("the box always bounds t from above");
    if lo_val.cmp_sym(&hi_val) == Ordering::Greater {
        // The box cannot participate in a conflict: its bounds are at +-M.
        let mut witness = vec![h_idx];
        for src in [lo_src, hi_src] {
            match src {
                BoundSrc::Constraint(j) => witness.push(j),
                BoundSrc::Box => unreachable!("symbolic box bound in an infeasibility conflict"),
            }
        }
        return LineOutcome::Infeasible(witness);
    }

    let t = lo_val;
    LineOutcome::Optimum(SymPoint {
        x: t.scale(&xt).add(&SymVal::finite(x0)),
        y: t.scale(&yt).add(&SymVal::finite(y0)),
    })
}

/// Replaces the symbolic `M` by a concrete rational large enough that every
/// constraint stays satisfied, yielding an exact feasible point.
fn materialize(point: &SymPoint, constraints: &[HalfPlane]) -> Point2 {
    let mut m = Scalar::zero();
    for h in constraints {
        if h.kind() != HalfPlaneKind::Proper {
            continue;
        }
        let v = eval_sym(h, point);
        debug_assert!(v.is_nonneg(), "symbolic optimum violates a constraint");
        if v.inf.is_positive() && v.fin.is_negative() {
            let needed = -&v.fin / &v.inf;
            if needed > m {
                m = needed;
            }
        }
    }
    m += Scalar::from_integer(1.into());
    Point2::new(
        &point.x.fin + &point.x.inf * &m,
        &point.y.fin + &point.y.inf * &m,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction_space::HalfPlane;
    use crate::kernel::rat;

    fn hp(a: i64, b: i64, c: i64) -> HalfPlane {
        HalfPlane::closed_ints(a, b, c)
    }

    fn check_feasible(constraints: &[HalfPlane], seed: u64) -> Point2 {
        match feasible_point(constraints, seed).unwrap() {
            Feasibility::Feasible(p) => {
                for h in constraints {
                    assert!(h.contains(&p), "returned point violates {h:?}");
                }
                p
            }
            Feasibility::Infeasible(w) => panic!("expected feasible, got witness {w:?}"),
        }
    }

    fn check_infeasible(constraints: &[HalfPlane], seed: u64) -> Vec<usize> {
        match feasible_point(constraints, seed).unwrap() {
            Feasibility::Infeasible(witness) => {
                assert!(witness.len() <= 3);
                // The witness constraints alone must be infeasible.
                let sub: Vec<HalfPlane> =
                    witness.iter().map(|&i| constraints[i].clone()).collect();
                match feasible_point(&sub, seed ^ 1).unwrap() {
                    Feasibility::Infeasible(_) => {}
                    Feasibility::Feasible(p) => {
                        panic!("witness {witness:?} is feasible at {p:?}")
                    }
                }
                witness
            }
            Feasibility::Feasible(p) => panic!("expected infeasible, got {p:?}"),
        }
    }

    #[test]
    fn quadrant_is_feasible_at_origin() {
        let p = check_feasible(&[hp(1, 0, 0), hp(0, 1, 0)], 0);
        assert_eq!(p, Point2::from_ints(0, 0));
    }

    #[test]
    fn contradictory_pair_yields_two_constraint_witness() {
        // x >= 0 and -x - 1 >= 0.
        let w = check_infeasible(&[hp(1, 0, 0), hp(-1, 0, -1)], 0);
        assert_eq!(w, vec![0, 1]);
    }

    #[test]
    fn outward_triangle_yields_three_constraint_witness() {
        // Pairwise feasible, jointly infeasible: x >= 1, y >= 1, -x - y >= 0.
        let cs = [hp(1, 0, -1), hp(0, 1, -1), hp(-1, -1, 0)];
        // Brute sanity: each pair feasible.
        for skip in 0..3 {
            let pair: Vec<HalfPlane> = (0..3).filter(|&i| i != skip).map(|i| cs[i].clone()).collect();
            assert!(matches!(
                feasible_point(&pair, 5).unwrap(),
                Feasibility::Feasible(_)
            ));
        }
        let w = check_infeasible(&cs, 0);
        assert_eq!(w, vec![0, 1, 2]);
    }

    #[test]
    fn empty_halfplane_is_its_own_witness() {
        let empty = HalfPlane::closed_ints(0, 0, -1);
        let w = check_infeasible(&[hp(1, 0, 0), empty], 9);
        assert_eq!(w, vec![1]);
    }

    #[test]
    fn full_halfplanes_are_ignored() {
        let full = HalfPlane::closed_ints(0, 0, 3);
        check_feasible(&[full, hp(0, 1, -5)], 2);
    }

    #[test]
    fn strict_constraint_is_rejected() {
        let strict = HalfPlane::new(rat(1), rat(0), rat(0), true);
        assert_eq!(
            feasible_point(&[strict], 0),
            Err(LpError::StrictConstraint(0))
        );
    }

    #[test]
    fn no_constraints_is_feasible() {
        check_feasible(&[], 0);
    }

    #[test]
    fn verdict_and_point_are_seed_independent() {
        let cs = [hp(1, 0, 0), hp(0, 1, 0), hp(-1, -1, 10), hp(1, -2, 4)];
        let p0 = check_feasible(&cs, 0);
        for seed in 1..20 {
            assert_eq!(check_feasible(&cs, seed), p0);
        }
        let infeasible = [hp(1, 0, -1), hp(0, 1, -1), hp(-1, -1, 0), hp(1, 1, 100)];
        for seed in 0..20 {
            check_infeasible(&infeasible, seed);
        }
    }

    #[test]
    fn line_region_is_feasible() {
        // x >= 0 and x <= 0 pin the line x = 0.
        let p = check_feasible(&[hp(1, 0, 0), hp(-1, 0, 0)], 3);
        assert!(p.x.is_zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_halfplane() -> impl Strategy<Value = HalfPlane> {
            ((-4i64..5), (-4i64..5), (-6i64..7)).prop_map(|(a, b, c)| hp(a, b, c))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            // Soundness plus seed-independence of the verdict.
            #[test]
            fn sound_and_seed_independent(cs in proptest::collection::vec(arb_halfplane(), 0..10)) {
                let first = feasible_point(&cs, 0).unwrap();
                let feasible = matches!(first, Feasibility::Feasible(_));
                match &first {
                    Feasibility::Feasible(p) => {
                        for h in &cs { prop_assert!(h.contains(p)); }
                    }
                    Feasibility::Infeasible(w) => {
                        prop_assert!(w.len() <= 3);
                        let sub: Vec<HalfPlane> = w.iter().map(|&i| cs[i].clone()).collect();
                        prop_assert!(matches!(
                            feasible_point(&sub, 99).unwrap(),
                            Feasibility::Infeasible(_)
                        ));
                    }
                }
                for seed in 1..5u64 {
                    let again = feasible_point(&cs, seed).unwrap();
                    prop_assert_eq!(matches!(again, Feasibility::Feasible(_)), feasible);
                }
            }
        }
    }
}
