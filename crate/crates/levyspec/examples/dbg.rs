fn main() {
    use levyspec::market::{fit_curve, simulate_quotes};
    use levyspec::models::{LevyModel, MertonParams};
    use levyspec::pricing::PriceEngine;
    let model = LevyModel::Merton(MertonParams::example());
    let engine = PriceEngine::new(&model, 0.25).unwrap();
    let q = simulate_quotes(&engine, 30, 0.01, 0.06, 5).unwrap();
    let curve = fit_curve(&q, 1).unwrap();
    println!("n pieces = {}", curve.poly.pieces.len());
    for (i, p) in curve.poly.pieces.iter().enumerate().take(12) {
        println!("{i}: lo={:.5} hi={:.5} c0={:.6e}", p.lo, p.hi, p.c[0]);
    }
    println!("x[0..9] = {:?}", &q.x[0..9]);
}
