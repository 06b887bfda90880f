use std::time::Instant;

fn main() {
    for m in [250i64, 2500, 25000] {
        let t = Instant::now();
        let p = cast_core::fixtures::bipyramid(m);
        let build = t.elapsed().as_secs_f64();
        let n = p.facets.len();

        let t = Instant::now();
        let fsd = cast_core::casting::all_fsd(&p, 1).unwrap();
        let t_fsd = t.elapsed().as_secs_f64();

        let t = Instant::now();
        let fad = cast_core::casting::all_fad(&p, 1).unwrap();
        let t_fad = t.elapsed().as_secs_f64();

        let t = Instant::now();
        let conv = cast_core::casting::convex_all_fad(&p).unwrap();
        let t_conv = t.elapsed().as_secs_f64();

        println!(
            "n={n}: build={build:.2}s fsd={t_fsd:.3}s ({} entries) fad={t_fad:.3}s ({}) convex={t_conv:.3}s ({})",
            fsd.entries.len(), fad.entries.len(), conv.entries.len()
        );
    }
}
