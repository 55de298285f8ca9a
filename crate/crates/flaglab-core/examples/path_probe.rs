fn main() {
    let t0 = std::time::Instant::now();
    let w = flaglab_core::moduli::path_witness(10_000).unwrap();
    println!("10^4-point witness in {:?}; min |h|^2 lower bound {} (> 1/10000: {})",
        t0.elapsed(), w.min_abs_squared, w.min_abs_squared > flaglab_core::exact::rat(1,10000));
}
