use std::time::Instant;

fn main() {
    for n in [100usize, 300, 500] {
        let t = Instant::now();
        let p = cast_core::fixtures::random_hull(9, n);
        let built = t.elapsed().as_secs_f64();
        let t = Instant::now();
        let fad = cast_core::casting::all_fad(&p, 0).unwrap();
        let solved = t.elapsed().as_secs_f64();
        println!(
            "points={n}: facets={} hull={built:.3}s all_fad={solved:.3}s entries={}",
            p.facets.len(),
            fad.entries.len()
        );
    }
    // Batch estimate: 50 meshes at mixed sizes.
    let t = Instant::now();
    let mut total_entries = 0;
    for seed in 0..50u64 {
        let size = 10 + (seed as usize * 97) % 491;
        let p = cast_core::fixtures::random_hull(seed, size);
        total_entries += cast_core::casting::all_fad(&p, seed).unwrap().entries.len();
    }
    println!("50 mixed meshes in {:.2}s ({} entries)", t.elapsed().as_secs_f64(), total_entries);
}
