// Deep fuzz: hulls of points on a tiny lattice are riddled with
// coplanarities and parallel facets; compare solver vs oracle everywhere.
use cast_core::casting::{all_fad, all_fsd, convex_all_fad, Directions};
use cast_core::{fixtures, oracle};

fn main() {
    let mut checked = 0;
    for case in 0..400u64 {
        let Some(hull) = fixtures::random_lattice_hull(case) else {
            continue;
        };
        let expected: Vec<usize> = oracle::brute_force_top_facets(&hull)
            .into_iter()
            .map(|(f, _)| f)
            .collect();
        let fsd = all_fsd(&hull, case).unwrap();
        assert_eq!(fsd.facet_ids(), expected, "case {case} fsd mismatch");
        let fad = all_fad(&hull, case).unwrap();
        assert_eq!(fad.facet_ids(), expected, "case {case} fad mismatch");
        let convex = convex_all_fad(&hull).unwrap();
        assert_eq!(convex.facet_ids(), expected, "case {case} convex mismatch");
        for (g, c) in fad.entries.iter().zip(&convex.entries) {
            let (Directions::All(gc), Directions::All(cc)) = (&g.directions, &c.directions)
            else {
                unreachable!()
            };
            assert_eq!(gc.region.kind(), cc.region.kind(), "case {case} kind");
            for p in gc.region.sample_points(case, 30) {
                let d = gc.lift(&p);
                assert!(
                    oracle::is_valid_pair(&hull, g.facet, &d).unwrap(),
                    "case {case} facet {} lifted sample invalid",
                    g.facet
                );
            }
        }
        checked += 1;
    }
    println!("lattice fuzz: {checked} degenerate hulls checked, all consistent");
}
