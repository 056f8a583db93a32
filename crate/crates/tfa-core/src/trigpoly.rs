//! Three-term exponential polynomials `P(x) = C0 + C1 e^{2πiαx} + C2 e^{2πiβx}`,
//! their zeros on the torus in closed form, the per-zero slope parameter, and
//! an empirical lower-bound constant for
//! `|p(x,y)| / min_j(‖x-γ1ʲ+t_j⟨y-γ2ʲ⟩‖ + ‖x-γ1ʲ‖² + ‖y-γ2ʲ‖²)`.
//!
//! Zero counting is exact: solutions of `C0 + C1 e^{2πix} + C2 e^{2πiy} = 0`
//! exist iff the moduli satisfy the triangle condition
//! `||C1|-|C2|| <= |C0| <= |C1|+|C2|`, with two zeros strictly inside, one on
//! the boundary, none outside. The classification compares exact rationals
//! when the coefficients are exact and certified balls otherwise.
//!
//! The lower-bound scan is the one place floating point is allowed: the grid
//! search locates the minimum, and the reported infimum is then re-evaluated
//! in certified arithmetic at the refined argmin.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};
use rayon::prelude::*;

use crate::circle;
use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::real::{acos_turns, sqrt, Complex, Real};

/// Nondegenerate three-term exponential polynomial.
#[derive(Clone, Debug)]
pub struct TrigPoly {
    pub c0: Complex,
    pub c1: Complex,
    pub c2: Complex,
    pub alpha: Real,
    pub beta: Real,
}

impl TrigPoly {
    /// All three coefficients must be certainly nonzero.
    pub fn new(c0: Complex, c1: Complex, c2: Complex, alpha: Real, beta: Real) -> Result<Self> {
        for (name, c) in [("C0", &c0), ("C1", &c1), ("C2", &c2)] {
            if !c.certainly_nonzero() {
                return Err(Error::DegenerateConfiguration(format!(
                    "coefficient {name} is not certainly nonzero"
                )));
            }
        }
        Ok(TrigPoly {
            c0,
            c1,
            c2,
            alpha,
            beta,
        })
    }

    /// Certified value of `P(x)`.
    pub fn eval(&self, x: &Real, prec: Precision) -> Complex {
        let ta = self.alpha.mul(x);
        let tb = self.beta.mul(x);
        let ea = Complex::unit(&ta, prec);
        let eb = Complex::unit(&tb, prec);
        self.c0
            .add(&self.c1.mul_round(&ea, prec))
            .add(&self.c2.mul_round(&eb, prec))
    }

    /// Certified global lower bound of `|p|` from the reverse triangle
    /// inequality; positive iff the polynomial has no torus zeros.
    pub fn min_modulus_lower_bound(&self, prec: Precision) -> Result<Real> {
        min_modulus_lower_bound(&self.c0, &self.c1, &self.c2, prec)
    }
}

pub fn min_modulus_lower_bound(
    c0: &Complex,
    c1: &Complex,
    c2: &Complex,
    prec: Precision,
) -> Result<Real> {
    let r0 = sqrt(&c0.abs_sq(), prec)?;
    let r1 = sqrt(&c1.abs_sq(), prec)?;
    let r2 = sqrt(&c2.abs_sq(), prec)?;
    let cands = [
        r0.sub(&r1).sub(&r2),
        r1.sub(&r0).sub(&r2),
        r2.sub(&r0).sub(&r1),
    ];
    // best certified lower end among the three reverse-triangle bounds
    let mut best = cands[0].clone();
    for c in &cands[1..] {
        if c.lo() > best.lo() {
            best = c.clone();
        }
    }
    Ok(best)
}

/// How many zeros the triangle classification certifies.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ZeroClass {
    None,
    One,
    Two,
}

/// One torus zero with its slope parameter.
#[derive(Clone, Debug)]
pub struct TorusZero {
    pub gamma1: Real,
    pub gamma2: Real,
    /// `t = Re(w2/w1)` with `w1 = C1 e^{2πiγ1}`, `w2 = C2 e^{2πiγ2}`.
    pub slope: Real,
    /// The computed slope interval contains zero; the degenerate-direction
    /// bound is then driven by the quadratic terms alone.
    pub slope_near_zero: bool,
}

#[derive(Clone, Debug)]
pub struct TorusZeros {
    pub class: ZeroClass,
    pub zeros: Vec<TorusZero>,
}

/// Wrap a ball into `[0, 1)` by subtracting the floor of its midpoint.
fn wrap_unit(x: &Real) -> Real {
    let f = x.value().floor().to_integer();
    x.add_rat(&BigRational::from_integer(-f))
}

/// Closed-form torus zeros of `C0 + C1 e^{2πix} + C2 e^{2πiy}`.
pub fn find_torus_zeros(
    c0: &Complex,
    c1: &Complex,
    c2: &Complex,
    prec: Precision,
) -> Result<TorusZeros> {
    for (name, c) in [("C0", c0), ("C1", c1), ("C2", c2)] {
        if !c.certainly_nonzero() {
            return Err(Error::DegenerateConfiguration(format!(
                "coefficient {name} is not certainly nonzero"
            )));
        }
    }
    let s0 = c0.abs_sq();
    let s1 = c1.abs_sq();
    let s2 = c2.abs_sq();
    // Re(conj(C0) C1 e^{2πiγ1}) = h with h = (|C2|² - |C0|² - |C1|²)/2;
    // solvable iff h² <= |C0|²|C1|², boundary = one zero.
    let h = s2
        .sub(&s0)
        .sub(&s1)
        .mul_rat(&BigRational::new(BigInt::from(1), BigInt::from(2)));
    let h_sq = h.square();
    let rho_sq = s0.mul(&s1);
    let class = match h_sq.cmp_certified(&rho_sq) {
        Some(std::cmp::Ordering::Less) => ZeroClass::Two,
        Some(std::cmp::Ordering::Equal) => ZeroClass::One,
        Some(std::cmp::Ordering::Greater) => ZeroClass::None,
        None => {
            return Err(Error::Ambiguous(
                "triangle classification not certified at this precision".into(),
            ))
        }
    };
    if class == ZeroClass::None {
        return Ok(TorusZeros {
            class,
            zeros: vec![],
        });
    }

    let cross = c0.conj().mul(c1);
    let psi = cross.phase_turns_robust(prec)?;
    // theta in turns with cos(2π·theta) = h / (|C0||C1|)
    let theta = match class {
        ZeroClass::One => {
            // boundary: cos = ±1 exactly, by the sign of h
            match h.sign_certified() {
                Some(num_bigint::Sign::Minus) => Real::from_ratio(1, 2),
                Some(_) => Real::zero(),
                None => {
                    return Err(Error::Ambiguous(
                        "sign of the boundary case not certified".into(),
                    ))
                }
            }
        }
        _ => {
            let rho = sqrt(&rho_sq, prec)?;
            let c = h.div(&rho)?;
            acos_turns(&c, prec)?
        }
    };

    let gamma1_candidates: Vec<Real> = match class {
        ZeroClass::One => vec![wrap_unit(&theta.sub(&psi))],
        _ => vec![
            wrap_unit(&theta.sub(&psi)),
            wrap_unit(&theta.neg().sub(&psi)),
        ],
    };

    let mut zeros = Vec::new();
    for g1 in gamma1_candidates {
        let e1 = Complex::unit(&g1, prec);
        let w1 = c1.mul_round(&e1, prec);
        // e^{2πiγ2} = -(C0 + w1)/C2
        let target = c0.add(&w1).neg().div(c2, prec)?;
        let g2 = wrap_unit(&target.phase_turns_robust(prec)?);
        let e2 = Complex::unit(&g2, prec);
        let w2 = c2.mul_round(&e2, prec);
        let (slope, slope_near_zero) = slope_from_tangents(&w1, &w2, prec)?;
        zeros.push(TorusZero {
            gamma1: g1,
            gamma2: g2,
            slope,
            slope_near_zero,
        });
    }
    // deterministic order: by midpoint of gamma1
    zeros.sort_by(|a, b| a.gamma1.value().cmp(b.gamma1.value()));
    Ok(TorusZeros { class, zeros })
}

fn slope_from_tangents(w1: &Complex, w2: &Complex, prec: Precision) -> Result<(Real, bool)> {
    if !w1.certainly_nonzero() {
        // cannot occur while C1 != 0 and |e^{2πiγ}| = 1; assert anyway
        return Err(Error::DegenerateGradient(
            "first-order coefficient w1 is not certainly nonzero".into(),
        ));
    }
    let ratio = w2.div(w1, prec)?;
    let t = ratio.re.clone();
    let near_zero = t.contains_zero();
    Ok((t, near_zero))
}

/// Slope parameter `t` for a given certified zero of `(C0, C1, C2)`.
pub fn slope_parameter(
    c1: &Complex,
    c2: &Complex,
    zero: (&Real, &Real),
    prec: Precision,
) -> Result<Real> {
    let w1 = c1.mul_round(&Complex::unit(zero.0, prec), prec);
    let w2 = c2.mul_round(&Complex::unit(zero.1, prec), prec);
    Ok(slope_from_tangents(&w1, &w2, prec)?.0)
}

// ---------------------------------------------------------------------------
// empirical lower-bound constant
// ---------------------------------------------------------------------------

/// Report of the grid scan for the empirical constant.
#[derive(Clone, Debug)]
pub struct LowerBoundReport {
    pub grid_n: u32,
    pub zero_free: bool,
    /// Observed infimum of `R(x, y)` over the refined grid (min `|p|` in the
    /// zero-free case); floating-point scan value.
    pub empirical_constant: f64,
    /// Grid point achieving the infimum.
    pub argmin: (BigRational, BigRational),
    /// Certified value of the same quantity at `argmin`.
    pub certified_at_argmin: Real,
    pub refined: bool,
}

#[derive(Clone, Copy)]
struct Cf64 {
    re: f64,
    im: f64,
}

struct ScanData {
    c: [Cf64; 3],
    zeros: Vec<(f64, f64, f64)>, // gamma1, gamma2, slope
}

fn frac64(x: f64) -> f64 {
    x - x.floor()
}

fn dist64(x: f64) -> f64 {
    let f = frac64(x);
    f.min(1.0 - f)
}

fn signed64(x: f64) -> f64 {
    let f = frac64(x);
    if f >= 0.5 {
        f - 1.0
    } else {
        f
    }
}

fn abs_p64(d: &ScanData, x: f64, y: f64) -> f64 {
    let (sa, ca) = (x * std::f64::consts::TAU).sin_cos();
    let (sb, cb) = (y * std::f64::consts::TAU).sin_cos();
    let re = d.c[0].re + d.c[1].re * ca - d.c[1].im * sa + d.c[2].re * cb - d.c[2].im * sb;
    let im = d.c[0].im + d.c[1].re * sa + d.c[1].im * ca + d.c[2].re * sb + d.c[2].im * cb;
    (re * re + im * im).sqrt()
}

/// `min_j (‖x-γ1+t⟨y-γ2⟩‖ + ‖x-γ1‖² + ‖y-γ2‖²)`.
fn denom64(d: &ScanData, x: f64, y: f64) -> f64 {
    let mut best = f64::INFINITY;
    for &(g1, g2, t) in &d.zeros {
        let lin = dist64(x - g1 + t * signed64(y - g2));
        let q1 = dist64(x - g1);
        let q2 = dist64(y - g2);
        let v = lin + q1 * q1 + q2 * q2;
        if v < best {
            best = v;
        }
    }
    best
}

fn ratio64(d: &ScanData, x: f64, y: f64) -> Option<f64> {
    let den = denom64(d, x, y);
    if den < 1e-18 {
        // exactly at a zero: skip
        return None;
    }
    Some(abs_p64(d, x, y) / den)
}

/// Empirical lower-bound constant over a `grid_n × grid_n` torus grid with
/// one round of 10× local refinement around the minimum and around each
/// zero, then a certified re-evaluation at the argmin.
pub fn lower_bound_constant(
    c0: &Complex,
    c1: &Complex,
    c2: &Complex,
    grid_n: u32,
    prec: Precision,
) -> Result<LowerBoundReport> {
    if grid_n < 64 {
        return Err(Error::Parse("grid size must be at least 64".into()));
    }
    let zeros = find_torus_zeros(c0, c1, c2, prec)?;

    if zeros.class == ZeroClass::None {
        return lower_bound_zero_free(c0, c1, c2, grid_n, prec);
    }

    let data = ScanData {
        c: [c0, c1, c2].map(|c| {
            let (re, im) = c.to_f64_pair();
            Cf64 { re, im }
        }),
        zeros: zeros
            .zeros
            .iter()
            .map(|z| (z.gamma1.to_f64(), z.gamma2.to_f64(), z.slope.to_f64()))
            .collect(),
    };

    let n = grid_n as i64;
    // coarse scan, deterministic parallel min-reduce
    let coarse = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let mut best: Option<(f64, i64, i64)> = None;
            for j in 0..n {
                let x = i as f64 / n as f64;
                let y = j as f64 / n as f64;
                if let Some(r) = ratio64(&data, x, y) {
                    if best.map_or(true, |b| (r, i, j) < b) {
                        best = Some((r, i, j));
                    }
                }
            }
            best
        })
        .min_by(|a, b| a.partial_cmp(b).unwrap())
        .ok_or_else(|| Error::Internal("empty grid scan".into()))?;

    // refinement centers: global argmin plus the cell nearest each zero
    let mut centers: Vec<(f64, f64)> =
        vec![(coarse.1 as f64 / n as f64, coarse.2 as f64 / n as f64)];
    for &(g1, g2, _) in &data.zeros {
        centers.push((g1, g2));
    }

    let h = 1.0 / n as f64;
    let mut best_val = coarse.0;
    let mut best_xy = centers[0];
    for &(cx, cy) in &centers {
        for di in -10..=10i64 {
            for dj in -10..=10i64 {
                let x = frac64(cx + di as f64 * h / 10.0);
                let y = frac64(cy + dj as f64 * h / 10.0);
                if let Some(r) = ratio64(&data, x, y) {
                    if r < best_val {
                        best_val = r;
                        best_xy = (x, y);
                    }
                }
            }
        }
    }

    // certify at the argmin (the f64 argmin is an exact dyadic rational)
    let ax = BigRational::from_f64(best_xy.0).unwrap_or_else(BigRational::zero);
    let ay = BigRational::from_f64(best_xy.1).unwrap_or_else(BigRational::zero);
    let certified = certified_ratio_at(c0, c1, c2, &zeros, &ax, &ay, prec)?;

    Ok(LowerBoundReport {
        grid_n,
        zero_free: false,
        empirical_constant: best_val,
        argmin: (ax, ay),
        certified_at_argmin: certified,
        refined: true,
    })
}

fn lower_bound_zero_free(
    c0: &Complex,
    c1: &Complex,
    c2: &Complex,
    grid_n: u32,
    prec: Precision,
) -> Result<LowerBoundReport> {
    let data = ScanData {
        c: [c0, c1, c2].map(|c| {
            let (re, im) = c.to_f64_pair();
            Cf64 { re, im }
        }),
        zeros: vec![],
    };
    let n = grid_n as i64;
    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut local = (f64::INFINITY, 0i64, 0i64);
            for j in 0..n {
                let v = abs_p64(&data, i as f64 / n as f64, j as f64 / n as f64);
                if (v, i, j) < local {
                    local = (v, i, j);
                }
            }
            local
        })
        .min_by(|a, b| a.partial_cmp(b).unwrap())
        .ok_or_else(|| Error::Internal("empty grid scan".into()))?;
    let ax = BigRational::new(BigInt::from(best.1), BigInt::from(n));
    let ay = BigRational::new(BigInt::from(best.2), BigInt::from(n));
    let p = eval_p_at(c0, c1, c2, &ax, &ay, prec);
    let certified = sqrt(&p.abs_sq(), prec)?;
    Ok(LowerBoundReport {
        grid_n,
        zero_free: true,
        empirical_constant: best.0,
        argmin: (ax, ay),
        certified_at_argmin: certified,
        refined: false,
    })
}

pub(crate) fn eval_p_at(
    c0: &Complex,
    c1: &Complex,
    c2: &Complex,
    x: &BigRational,
    y: &BigRational,
    prec: Precision,
) -> Complex {
    let ex = Complex::unit(&Real::exact(x.clone()), prec);
    let ey = Complex::unit(&Real::exact(y.clone()), prec);
    c0.add(&c1.mul_round(&ex, prec))
        .add(&c2.mul_round(&ey, prec))
}

/// Certified `R(x, y)` at an exact rational point.
fn certified_ratio_at(
    c0: &Complex,
    c1: &Complex,
    c2: &Complex,
    zeros: &TorusZeros,
    x: &BigRational,
    y: &BigRational,
    prec: Precision,
) -> Result<Real> {
    let p = eval_p_at(c0, c1, c2, x, y, prec);
    let num = sqrt(&p.abs_sq(), prec)?;
    let xr = Real::exact(x.clone());
    let yr = Real::exact(y.clone());
    let mut den_lo: Option<BigRational> = None;
    let mut den_hi: Option<BigRational> = None;
    for z in &zeros.zeros {
        let dx = xr.sub(&z.gamma1);
        let dy = yr.sub(&z.gamma2);
        // enclosure of ⟨y-γ2⟩; on a straddle fall back to the full range
        let s = match circle::reduce(&dy) {
            Ok(c) => c.signed,
            Err(_) => Real::with_radius(
                BigRational::zero(),
                BigRational::new(BigInt::from(1), BigInt::from(2)),
            ),
        };
        let lin = circle::dist(&dx.add(&z.slope.mul(&s)));
        let q1 = circle::dist(&dx);
        let q2 = circle::dist(&dy);
        let term = lin.add(&q1.square()).add(&q2.square());
        let (tl, th) = (term.lo(), term.hi());
        den_lo = Some(match den_lo {
            Some(v) if v <= tl => v,
            _ => tl,
        });
        den_hi = Some(match den_hi {
            Some(v) if v <= th => v,
            _ => th,
        });
    }
    let den_lo = den_lo.ok_or_else(|| Error::Internal("no zeros for the ratio".into()))?;
    let den_hi = den_hi.unwrap();
    if !den_lo.is_positive() {
        return Err(Error::Precision(
            "denominator not certainly positive at the argmin".into(),
        ));
    }
    let lo = num.lo() / den_hi;
    let hi = num.hi() / den_lo;
    Ok(Real::from_bounds(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::parse_complex;

    fn prec() -> Precision {
        Precision::from_digits(80)
    }

    fn c(re: i64, im: i64) -> Complex {
        Complex::new(Real::from_int(re), Real::from_int(im))
    }

    fn tol(pow: i32) -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(10)).pow(-pow).recip()
    }

    #[test]
    fn unity_coefficients_give_cube_roots() {
        let z = find_torus_zeros(&c(1, 0), &c(1, 0), &c(1, 0), prec()).unwrap();
        assert_eq!(z.class, ZeroClass::Two);
        assert_eq!(z.zeros.len(), 2);
        let thirds = [
            (
                BigRational::new(1.into(), 3.into()),
                BigRational::new(2.into(), 3.into()),
            ),
            (
                BigRational::new(2.into(), 3.into()),
                BigRational::new(1.into(), 3.into()),
            ),
        ];
        for (zero, (e1, e2)) in z.zeros.iter().zip(thirds.iter()) {
            assert!(zero.gamma1.contains_rat(e1));
            assert!(zero.gamma2.contains_rat(e2));
            assert!(zero.gamma1.radius() < &tol(30));
            // slope t = Re(e^{2πi/3}) = -1/2 at both zeros
            assert!(zero
                .slope
                .contains_rat(&BigRational::new((-1).into(), 2.into())));
        }
    }

    #[test]
    fn degenerate_triangle_gives_single_zero() {
        let z = find_torus_zeros(&c(2, 0), &c(1, 0), &c(1, 0), prec()).unwrap();
        assert_eq!(z.class, ZeroClass::One);
        assert_eq!(z.zeros.len(), 1);
        let half = BigRational::new(1.into(), 2.into());
        assert!(z.zeros[0].gamma1.contains_rat(&half));
        assert!(z.zeros[0].gamma2.contains_rat(&half));
        // w1 = w2 = -1, slope 1
        assert!(z.zeros[0]
            .slope
            .contains_rat(&BigRational::from_integer(1.into())));
    }

    #[test]
    fn violated_triangle_gives_no_zero() {
        let z = find_torus_zeros(&c(3, 0), &c(1, 0), &c(1, 0), prec()).unwrap();
        assert_eq!(z.class, ZeroClass::None);
        assert!(z.zeros.is_empty());
    }

    #[test]
    fn residuals_are_tiny() {
        let p = prec();
        for (a, b, cc) in [((1, 0), (1, 0), (1, 0)), ((2, 1), (1, -1), (-1, 2))] {
            let (c0, c1, c2) = (c(a.0, a.1), c(b.0, b.1), c(cc.0, cc.1));
            let z = find_torus_zeros(&c0, &c1, &c2, p).unwrap();
            for zero in &z.zeros {
                let val = eval_p_at(&c0, &c1, &c2, zero.gamma1.value(), zero.gamma2.value(), p);
                // |p(γ)|² below 10⁻⁶⁰ means |p| < 10⁻³⁰
                assert!(val.abs_sq().hi() < tol(60));
            }
        }
    }

    #[test]
    fn swap_symmetry() {
        let p = prec();
        let (c0, c1, c2) = (c(2, 1), c(1, -1), c(-1, 2));
        let z12 = find_torus_zeros(&c0, &c1, &c2, p).unwrap();
        let z21 = find_torus_zeros(&c0, &c2, &c1, p).unwrap();
        assert_eq!(z12.class, z21.class);
        for za in &z12.zeros {
            let found = z21.zeros.iter().any(|zb| {
                zb.gamma1.sub(&za.gamma2).contains_zero()
                    && zb.gamma2.sub(&za.gamma1).contains_zero()
            });
            assert!(found);
        }
    }

    #[test]
    fn scaling_leaves_slope_invariant() {
        let p = prec();
        let (c0, c1, c2) = (c(1, 0), c(1, 0), c(1, 0));
        let z = find_torus_zeros(&c0, &c1, &c2, p).unwrap();
        let lam = Complex::new(Real::from_ratio(3, 7), Real::from_ratio(-2, 5));
        let z_scaled =
            find_torus_zeros(&c0.mul(&lam), &c1.mul(&lam), &c2.mul(&lam), p).unwrap();
        for (a, b) in z.zeros.iter().zip(z_scaled.zeros.iter()) {
            assert!(a.slope.sub(&b.slope).contains_zero());
            assert!(a.gamma1.sub(&b.gamma1).contains_zero());
        }
    }

    #[test]
    fn eval_matches_roots_of_unity() {
        let p = prec();
        let poly = TrigPoly::new(
            c(1, 0),
            c(1, 0),
            c(1, 0),
            Real::from_int(1),
            Real::from_int(2),
        )
        .unwrap();
        let v = poly.eval(&Real::from_ratio(1, 3), p);
        assert!(v.abs_sq().hi() < tol(60));
        let poly2 = TrigPoly::new(
            c(2, 0),
            c(1, 0),
            c(1, 0),
            Real::golden(p),
            Real::sqrt_int(2, p).unwrap(),
        )
        .unwrap();
        let v = poly2.eval(&Real::zero(), p);
        assert!(v.re.contains_rat(&BigRational::from_integer(4.into())));
        assert!(v.im.contains_zero());
    }

    #[test]
    fn eval_matches_double_precision_recomputation() {
        let p = Precision::from_digits(60);
        let hp = Precision::from_digits(140);
        let poly = TrigPoly::new(
            c(1, 0),
            c(1, 0),
            c(1, 0),
            Real::sqrt_int(2, hp).unwrap(),
            Real::one(),
        )
        .unwrap();
        let x = Real::from_ratio(1, 4);
        let a = poly.eval(&x, p);
        let b = poly.eval(&x, hp);
        assert!(a.re.sub(&b.re).contains_zero());
        assert!(a.im.sub(&b.im).contains_zero());
        assert!(b.re.radius() < a.re.radius());
    }

    #[test]
    fn zero_free_lower_bound_is_min_modulus() {
        let rep = lower_bound_constant(&c(3, 0), &c(1, 0), &c(1, 0), 128, prec()).unwrap();
        assert!(rep.zero_free);
        // reverse triangle: |p| >= 1, attained at (1/2, 1/2) on an even grid
        assert!((rep.empirical_constant - 1.0).abs() < 1e-9);
        assert!(rep
            .certified_at_argmin
            .contains_rat(&BigRational::from_integer(1.into())));
    }

    #[test]
    fn unity_lower_bound_strictly_positive() {
        let rep = lower_bound_constant(&c(1, 0), &c(1, 0), &c(1, 0), 128, prec()).unwrap();
        assert!(!rep.zero_free);
        assert!(rep.empirical_constant > 1e-6);
        assert!(rep.certified_at_argmin.lo().is_positive());
    }

    #[test]
    fn parse_complex_round_trip_in_poly() {
        let p = prec();
        let c0 = parse_complex("2+0i", p).unwrap();
        let c1 = parse_complex("1+0i", p).unwrap();
        let c2 = parse_complex("1+0i", p).unwrap();
        let z = find_torus_zeros(&c0, &c1, &c2, p).unwrap();
        assert_eq!(z.class, ZeroClass::One);
    }
}
