use tfa_core::precision::Precision;
use tfa_core::real::{Real, Complex};
use tfa_core::trigpoly::TrigPoly;
use tfa_core::engine::product_log;

fn main() {
    let p = Precision::from_digits(48);
    let c = |re: i64| Complex::new(Real::from_int(re), Real::zero());
    let poly = TrigPoly::new(c(3), c(1), c(1), Real::sqrt_int(2, p).unwrap(), Real::one()).unwrap();
    for count in [10u64, 50, 100, 200, 400, 800, 1000] {
        match product_log(&poly, &Real::from_ratio(1, 5), count, p) {
            Ok(pl) => println!("count {count}: log in [{:.4}, {:.4}], radius {:.2e}, clamps {}",
                pl.log_magnitude.lo().to_string().parse::<f64>().unwrap_or(f64::NAN),
                0.0, // placeholder
                {use num_traits::ToPrimitive; pl.log_magnitude.radius().to_f64().unwrap_or(-1.0)},
                pl.clamp_events.len()),
            Err(e) => println!("count {count}: ERR {e}"),
        }
    }
}
