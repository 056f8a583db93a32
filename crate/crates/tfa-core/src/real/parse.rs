//! Input grammar for real and complex numbers.
//!
//! Reals: `rat:<p>/<q>`, `dec:<digits>` (exact decimal literal, also accepted
//! bare), `sqrt:<d>` with `d` a non-square positive integer, `golden`, and
//! `cf:[a0;a1,a2,...]` where a trailing `...` repeats the listed tail
//! periodically.
//!
//! Complex: `<re>+<im>i` (also `<re>-<im>i`), each side in the real grammar;
//! a bare real denotes a real complex number.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use super::{Complex, Real, Source};
use crate::error::{Error, Result};
use crate::precision::Precision;

/// Parse a rational parameter: `p/q`, an integer, or a plain decimal literal.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str_radix(num.trim(), 10)
            .map_err(|e| Error::Parse(format!("bad numerator {num:?}: {e}")))?;
        let d = BigInt::from_str_radix(den.trim(), 10)
            .map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        return Ok(BigRational::new(n, d));
    }
    parse_decimal(s).map(|(v, _)| v)
}

/// Exact decimal literal; returns the value and the count of fractional
/// digits it carried.
fn parse_decimal(s: &str) -> Result<(BigRational, u32)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let (sign, body) = match s.as_bytes()[0] {
        b'+' => (false, &s[1..]),
        b'-' => (true, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("bad decimal literal {s:?}")));
    }
    let digits_only = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if !digits_only(int_part) || !digits_only(frac_part) {
        return Err(Error::Parse(format!("bad decimal literal {s:?}")));
    }
    let int_val = if int_part.is_empty() {
        BigInt::zero()
    } else {
        BigInt::from_str_radix(int_part, 10).unwrap()
    };
    let mut value = BigRational::from_integer(int_val);
    if !frac_part.is_empty() {
        let f = BigInt::from_str_radix(frac_part, 10).unwrap();
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        value += BigRational::new(f, scale);
    }
    if sign {
        value = -value;
    }
    Ok((value, frac_part.len() as u32))
}

/// Parse a real in the input grammar at the given working precision.
pub fn parse_real(spec: &str, prec: Precision) -> Result<Real> {
    let spec = spec.trim();
    if spec == "golden" {
        return Ok(Real::golden(prec));
    }
    if let Some(body) = spec.strip_prefix("rat:") {
        let v = parse_rational(body)?;
        return Ok(Real::exact(v));
    }
    if let Some(body) = spec.strip_prefix("dec:") {
        let (v, digits) = parse_decimal(body)?;
        return Ok(Real::exact(v).with_source(Source::Decimal { digits }));
    }
    if let Some(body) = spec.strip_prefix("sqrt:") {
        let d: BigUint = body
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad sqrt argument {body:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse("sqrt argument must be positive".into()));
        }
        return Real::surd(BigInt::zero(), BigInt::one(), BigInt::one(), d, prec);
    }
    if let Some(body) = spec.strip_prefix("cf:") {
        return parse_cf(body, prec);
    }
    // bare decimal literal
    let (v, digits) = parse_decimal(spec)?;
    Ok(Real::exact(v).with_source(Source::Decimal { digits }))
}

fn parse_cf(body: &str, prec: Precision) -> Result<Real> {
    let body = body.trim();
    let inner = body
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("continued fraction must be bracketed: {body:?}")))?;
    let (a0_str, rest) = inner
        .split_once(';')
        .ok_or_else(|| Error::Parse("continued fraction needs `a0;`".into()))?;
    let a0 = BigInt::from_str_radix(a0_str.trim(), 10)
        .map_err(|e| Error::Parse(format!("bad a0 {a0_str:?}: {e}")))?;
    let rest = rest.trim();
    let (list, periodic) = match rest.strip_suffix("...") {
        Some(t) => (t.trim_end_matches(','), true),
        None => (rest, false),
    };
    let mut tail = Vec::new();
    for part in list.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let a: BigUint = part
            .parse()
            .map_err(|e| Error::Parse(format!("bad quotient {part:?}: {e}")))?;
        if a.is_zero() {
            return Err(Error::Parse("quotients after a0 must be >= 1".into()));
        }
        tail.push(a);
    }
    if periodic && tail.is_empty() {
        return Err(Error::Parse("periodic continued fraction needs a tail".into()));
    }
    super::materialize_cf(&a0, &tail, periodic, prec)
}

/// Parse a complex literal `<re>+<im>i` / `<re>-<im>i`, or a bare real.
pub fn parse_complex(spec: &str, prec: Precision) -> Result<Complex> {
    let spec = spec.trim();
    if let Some(body) = spec.strip_suffix('i') {
        // find the top-level separator: the last '+' or '-' that is not at
        // position 0 and not part of a prefix payload (after ':' we only cut
        // on '+'/'-' if a later one exists — grammar payloads contain no sign
        // characters except a leading one).
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let b = bytes[idx];
            if b == b'+' || b == b'-' {
                // skip a sign that directly follows another separator, e.g. "1+-0.5"
                let prev = bytes[idx - 1];
                if prev == b'+' || prev == b'-' || prev == b':' || prev == b'/' {
                    continue;
                }
                split = Some(idx);
                break;
            }
        }
        let idx = split.ok_or_else(|| {
            Error::Parse(format!("complex literal {spec:?} needs the form re+imi"))
        })?;
        let re_str = &body[..idx];
        let sign_negative = bytes[idx] == b'-';
        let im_str = &body[idx + 1..];
        let re = parse_real(re_str, prec)?;
        let im = parse_real(im_str, prec)?;
        let im = if sign_negative { im.neg() } else { im };
        Ok(Complex::new(re, im))
    } else {
        let re = parse_real(spec, prec)?;
        Ok(Complex::new(re, Real::zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_rat() {
        let p = Precision::default();
        let x = parse_real("rat:3/7", p).unwrap();
        assert!(x.is_exact());
        assert_eq!(*x.value(), rat(3, 7));
    }

    #[test]
    fn parses_decimal_exactly() {
        let p = Precision::default();
        let x = parse_real("dec:0.125", p).unwrap();
        assert!(x.is_exact());
        assert_eq!(*x.value(), rat(1, 8));
        let y = parse_real("-2.5", p).unwrap();
        assert_eq!(*y.value(), rat(-5, 2));
    }

    #[test]
    fn parses_sqrt_with_requested_width() {
        let p = Precision::from_digits(100);
        let x = parse_real("sqrt:2", p).unwrap();
        assert!(x.radius() < &rat(1, 10).pow(100));
        let sq = x.square();
        assert!(sq.contains_rat(&rat(2, 1)));
    }

    #[test]
    fn rejects_square_radicand() {
        let p = Precision::default();
        assert!(parse_real("sqrt:9", p).is_err());
    }

    #[test]
    fn periodic_cf_denotes_inverse_golden() {
        let p = Precision::from_digits(80);
        let x = parse_real("cf:[0;1,1,1,...]", p).unwrap();
        // fixed point of x = 1/(1+x): (sqrt(5)-1)/2
        let g = Real::surd(
            BigInt::from(-1),
            BigInt::one(),
            BigInt::from(2),
            BigUint::from(5u32),
            p,
        )
        .unwrap();
        let diff = x.sub(&g);
        assert!(diff.contains_zero());
        assert!(diff.radius() < &rat(1, 10).pow(70));
    }

    #[test]
    fn finite_cf_is_rational() {
        let p = Precision::default();
        let x = parse_real("cf:[4;2,6,7]", p).unwrap();
        assert!(x.is_exact());
        assert_eq!(*x.value(), rat(415, 93));
    }

    #[test]
    fn parses_complex_forms() {
        let p = Precision::default();
        let z = parse_complex("1+0i", p).unwrap();
        assert_eq!(*z.re.value(), rat(1, 1));
        assert_eq!(*z.im.value(), rat(0, 1));
        let z = parse_complex("-1.5+rat:1/2i", p).unwrap();
        assert_eq!(*z.re.value(), rat(-3, 2));
        assert_eq!(*z.im.value(), rat(1, 2));
        let z = parse_complex("1-0.5i", p).unwrap();
        assert_eq!(*z.im.value(), rat(-1, 2));
        let z = parse_complex("2+-0.5i", p).unwrap();
        assert_eq!(*z.im.value(), rat(-1, 2));
        let z = parse_complex("golden", p).unwrap();
        assert!(z.im.is_exact());
    }

    #[test]
    fn malformed_inputs_error() {
        let p = Precision::default();
        for bad in ["rat:3/0", "cf:[0,1]", "sqrt:-2", "dec:abc", "x+yi", ""] {
            assert!(parse_real(bad, p).is_err() || parse_complex(bad, p).is_err());
        }
    }
}
