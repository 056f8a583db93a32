use num_traits::ToPrimitive as _;
use std::time::Instant;
use tfa_core::precision::Precision;
use tfa_core::real::{sincos2pi, ln, Real, Complex};

fn main() {
    for digits in [64u32, 256] {
        let p = Precision::from_digits(digits);
        // warm const cache
        let _ = sincos2pi(&Real::from_ratio(1, 7), p);
        let t0 = Instant::now();
        let n = 200;
        for k in 0..n {
            let _ = sincos2pi(&Real::from_ratio(2 * k + 1, 7919), p);
        }
        let dt = t0.elapsed();
        println!("digits={digits}: sincos2pi {:?}/call", dt / n as u32);

        let t0 = Instant::now();
        for k in 0..n {
            let _ = ln(&Real::from_ratio(7919 + k, 100), p).unwrap();
        }
        println!("digits={digits}: ln {:?}/call", t0.elapsed() / n as u32);

        // complex incremental rotation
        let w = Complex::unit(&Real::from_ratio(355, 1130), p);
        let mut z = Complex::unit(&Real::from_ratio(1, 3), p);
        let t0 = Instant::now();
        let m = 2000;
        for _ in 0..m {
            z = z.mul_round(&w, p);
        }
        println!("digits={digits}: complex mul_round {:?}/call  (radius after {m}: {:.3e})",
                 t0.elapsed() / m as u32, { use num_traits::ToPrimitive; z.abs_sq().radius().to_f64().unwrap_or(0.0) } );
    }
}
