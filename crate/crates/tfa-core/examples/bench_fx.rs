use std::time::Instant;
use tfa_core::precision::Precision;
use tfa_core::real::Real;

fn main() {
    // exercise the internal fixed path through public sin/exp/ln only;
    // plus direct complex-rotation-like loop via repeated sincos of shifted args
    for digits in [64u32, 256] {
        let p = Precision::from_digits(digits);
        let s = Real::sqrt_int(2, p).unwrap();
        let t0 = Instant::now();
        let n = 500u32;
        let mut acc = Real::zero();
        for k in 0..n {
            let x = s.mul_int(&k.into());
            let (si, _) = tfa_core::real::sincos2pi(&x, p);
            acc = acc.add(&si);
        }
        println!("digits={digits}: sincos2pi(k*sqrt2) {:?}/call (acc radius {:?} bits)",
                 t0.elapsed() / n, acc.radius().denom().bits());
    }
}
