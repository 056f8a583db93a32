use std::time::Instant;
use num_bigint::BigInt;
use num_rational::BigRational;
use tfa_core::precision::Precision;
use tfa_core::real::Real;

fn main() {
    let p = Precision::from_digits(64);
    let a = Real::from_ratio(12345, 7919).round(p);
    let b = Real::from_ratio(355, 113).round(p);
    let n = 20000u32;

    let t0 = Instant::now();
    let mut acc = a.clone();
    for _ in 0..n { acc = a.mul(&b); }
    println!("Real::mul      {:?}", t0.elapsed()/n);

    let t0 = Instant::now();
    for _ in 0..n { acc = a.mul(&b).round(p); }
    println!("mul+round      {:?}", t0.elapsed()/n);
    let _ = acc;

    // raw BigRational ops
    let x = a.value().clone(); let y = b.value().clone();
    let t0 = Instant::now();
    let mut z = x.clone();
    for _ in 0..n { z = &x * &y; }
    println!("BigRational mul {:?}", t0.elapsed()/n);
    let _ = z;

    // raw BigInt mul of 245-bit numbers
    let xi: BigInt = x.numer().clone(); let yi: BigInt = y.numer().clone();
    let t0 = Instant::now();
    let mut zi = xi.clone();
    for _ in 0..n { zi = &xi * &yi; }
    println!("BigInt mul     {:?} (bits {} x {})", t0.elapsed()/n, xi.bits(), yi.bits());
    let _ = zi;

    // round alone
    let big = a.mul(&b);
    let t0 = Instant::now();
    let mut w = big.clone();
    for _ in 0..n { w = big.round(p); }
    println!("round          {:?}", t0.elapsed()/n);
    let _ = w;
}
