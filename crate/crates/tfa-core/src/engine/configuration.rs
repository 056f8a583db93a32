//! Normalization of four-point configurations to the canonical form
//! `{(0,1), (0,0), (α,0), (β,0)}` by area-preserving affine maps.
//!
//! The output pair is determined by affine invariants: writing `b` for the
//! base point, `p`, `q` for the other two collinear points and `o` for the
//! off-line point, the canonical coordinates are the symplectic areas
//! `ω(p - b, o - b)` and `ω(q - b, o - b)`. Exactly one choice of base makes
//! both areas positive (the extreme collinear point on the appropriate
//! side), so the result — unlike any coordinate-ordering rule — is invariant
//! under every area-preserving affine change of the input. The transform log
//! records the explicit affine steps realizing the normalization.

use num_bigint::Sign;
use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::real::Real;

/// Four points, exactly three of them collinear.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub points: [(Real, Real); 4],
}

/// One affine step `v ↦ M v + t` of the normalization.
#[derive(Clone, Debug)]
pub struct TransformStep {
    pub name: &'static str,
    pub matrix: [[Real; 2]; 2],
    pub translation: (Real, Real),
}

#[derive(Clone, Debug)]
pub struct NormalizationReport {
    pub alpha: Real,
    pub beta: Real,
    /// Index (into the input) of the collinear point mapped to the origin.
    pub base_index: usize,
    /// Index of the off-line point mapped to `(0, 1)`.
    pub off_index: usize,
    pub transform_log: Vec<TransformStep>,
    /// Images of the four input points under the composed transform.
    pub images: [(Real, Real); 4],
}

fn cross(a: &(Real, Real), b: &(Real, Real), c: &(Real, Real)) -> Real {
    let ux = b.0.sub(&a.0);
    let uy = b.1.sub(&a.1);
    let vx = c.0.sub(&a.0);
    let vy = c.1.sub(&a.1);
    ux.mul(&vy).sub(&uy.mul(&vx))
}

fn apply(step: &TransformStep, p: &(Real, Real)) -> (Real, Real) {
    let x = step.matrix[0][0]
        .mul(&p.0)
        .add(&step.matrix[0][1].mul(&p.1))
        .add(&step.translation.0);
    let y = step.matrix[1][0]
        .mul(&p.0)
        .add(&step.matrix[1][1].mul(&p.1))
        .add(&step.translation.1);
    (x, y)
}

fn identity_matrix() -> [[Real; 2]; 2] {
    [
        [Real::one(), Real::zero()],
        [Real::zero(), Real::one()],
    ]
}

/// Normalize a configuration; returns the canonical `(α, β)` and the
/// explicit transform chain.
pub fn normalize_configuration(
    cfg: &Configuration,
    prec: Precision,
) -> Result<NormalizationReport> {
    // identify the unique partition: a collinear triple plus a certified
    // off-line point
    let mut partition: Option<(usize, [usize; 3])> = None;
    for off in 0..4 {
        let triple: Vec<usize> = (0..4).filter(|&i| i != off).collect();
        let c_triple = cross(
            &cfg.points[triple[0]],
            &cfg.points[triple[1]],
            &cfg.points[triple[2]],
        );
        let c_off = cross(
            &cfg.points[triple[0]],
            &cfg.points[triple[1]],
            &cfg.points[off],
        );
        let triple_collinear = c_triple.contains_zero();
        let off_is_off = matches!(c_off.sign_certified(), Some(Sign::Plus) | Some(Sign::Minus));
        if triple_collinear && off_is_off {
            if partition.is_some() {
                return Err(Error::DegenerateConfiguration(
                    "more than one admissible collinear triple at this precision".into(),
                ));
            }
            partition = Some((off, [triple[0], triple[1], triple[2]]));
        }
    }
    let (off_index, triple) = partition.ok_or_else(|| {
        Error::DegenerateConfiguration(
            "no certified partition into a collinear triple and an off-line point".into(),
        )
    })?;
    let off = &cfg.points[off_index];

    // the base is the collinear point whose two areas to the others are both
    // positive; exactly one qualifies when the configuration is valid
    let mut base_choice: Option<(usize, Real, Real)> = None;
    for (slot, &b) in triple.iter().enumerate() {
        let others: Vec<usize> = triple
            .iter()
            .enumerate()
            .filter(|(s, _)| *s != slot)
            .map(|(_, &i)| i)
            .collect();
        let a1 = cross(&cfg.points[b], &cfg.points[others[0]], off);
        let a2 = cross(&cfg.points[b], &cfg.points[others[1]], off);
        let p1 = matches!(a1.sign_certified(), Some(Sign::Plus));
        let p2 = matches!(a2.sign_certified(), Some(Sign::Plus));
        if p1 && p2 {
            if base_choice.is_some() {
                return Err(Error::DegenerateConfiguration(
                    "base point not unique; collinear points may coincide".into(),
                ));
            }
            base_choice = Some((b, a1, a2));
        }
    }
    let (base_index, area1, area2) = base_choice.ok_or_else(|| {
        Error::DegenerateConfiguration(
            "no base certifies positive areas; collinear points may coincide".into(),
        )
    })?;

    // canonical pair: the two areas in ascending order
    let (alpha, beta) = match area1.cmp_certified(&area2) {
        Some(std::cmp::Ordering::Greater) => (area2.clone(), area1.clone()),
        Some(_) => (area1.clone(), area2.clone()),
        None => {
            // overlapping enclosures of equal areas: order by midpoint
            if area1.value() <= area2.value() {
                (area1.clone(), area2.clone())
            } else {
                (area2.clone(), area1.clone())
            }
        }
    };

    // build the explicit transform chain
    let base = cfg.points[base_index].clone();
    let mut log: Vec<TransformStep> = Vec::new();
    let mut current: Vec<(Real, Real)> = cfg.points.to_vec();

    let mut push = |step: TransformStep, pts: &mut Vec<(Real, Real)>| {
        for p in pts.iter_mut() {
            *p = apply(&step, p);
        }
        log.push(step);
    };

    // 1. translate the base to the origin
    push(
        TransformStep {
            name: "translate-base-to-origin",
            matrix: identity_matrix(),
            translation: (base.0.neg(), base.1.neg()),
        },
        &mut current,
    );

    // direction of the line, taken toward a non-base collinear point
    let dir_target = triple.iter().copied().find(|&i| i != base_index).unwrap();
    let d = current[dir_target].clone();
    let dx_nonzero = matches!(d.0.sign_certified(), Some(Sign::Plus) | Some(Sign::Minus));
    if !dx_nonzero {
        // vertical line: quarter rotation (area-preserving) first
        push(
            TransformStep {
                name: "quarter-rotation",
                matrix: [
                    [Real::zero(), Real::from_int(-1)],
                    [Real::one(), Real::zero()],
                ],
                translation: (Real::zero(), Real::zero()),
            },
            &mut current,
        );
    }
    // 2. unit shear sending the line to the first axis
    let d = current[dir_target].clone();
    if !matches!(d.0.sign_certified(), Some(Sign::Plus) | Some(Sign::Minus)) {
        return Err(Error::DegenerateConfiguration(
            "line direction not certified nonzero".into(),
        ));
    }
    let slope = d.1.div(&d.0)?;
    push(
        TransformStep {
            name: "shear-line-to-axis",
            matrix: [
                [Real::one(), Real::zero()],
                [slope.neg(), Real::one()],
            ],
            translation: (Real::zero(), Real::zero()),
        },
        &mut current,
    );

    // 3. shear along the axis moving the off point onto the second axis
    let (u, v) = current[off_index].clone();
    if !matches!(v.sign_certified(), Some(Sign::Plus) | Some(Sign::Minus)) {
        return Err(Error::DegenerateConfiguration(
            "off-line point height not certified nonzero".into(),
        ));
    }
    let ratio = u.div(&v)?;
    push(
        TransformStep {
            name: "shear-off-point-to-axis",
            matrix: [[Real::one(), ratio.neg()], [Real::zero(), Real::one()]],
            translation: (Real::zero(), Real::zero()),
        },
        &mut current,
    );

    // 4. area-preserving scaling (x, y) ↦ (v x, y / v) lands the off point
    // on (0, 1)
    let v = current[off_index].1.clone();
    push(
        TransformStep {
            name: "normalize-height",
            matrix: [
                [v.clone(), Real::zero()],
                [Real::zero(), v.recip()?],
            ],
            translation: (Real::zero(), Real::zero()),
        },
        &mut current,
    );

    // consistency: the composed chain realizes the invariant areas
    let images: [(Real, Real); 4] = current.clone().try_into().expect("four points");
    for (label, idx, expect) in [
        ("base", base_index, (Real::zero(), Real::zero())),
        ("off", off_index, (Real::zero(), Real::one())),
    ] {
        let got = &images[idx];
        if !got.0.sub(&expect.0).contains_zero() || !got.1.sub(&expect.1).contains_zero() {
            return Err(Error::Internal(format!(
                "transform chain does not map the {label} point to its canonical position"
            )));
        }
    }
    // the two remaining collinear points land on (area, 0)
    for i in triple.iter().copied().filter(|&i| i != base_index) {
        let got = &images[i];
        if !got.1.contains_zero() {
            return Err(Error::Internal(
                "collinear image left the first axis".into(),
            ));
        }
        let a = cross(&cfg.points[base_index], &cfg.points[i], off);
        if !got.0.sub(&a).contains_zero() {
            return Err(Error::Internal(
                "axis image does not match the invariant area".into(),
            ));
        }
    }

    let _ = prec;
    Ok(NormalizationReport {
        alpha,
        beta,
        base_index,
        off_index,
        transform_log: log,
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn prec() -> Precision {
        Precision::from_digits(80)
    }

    fn canonical(p: Precision) -> Configuration {
        let s2 = Real::sqrt_int(2, p).unwrap();
        Configuration {
            points: [
                (Real::zero(), Real::one()),
                (Real::zero(), Real::zero()),
                (Real::one(), Real::zero()),
                (s2, Real::zero()),
            ],
        }
    }

    fn assert_recovers_canonical(rep: &NormalizationReport, p: Precision) {
        let s2 = Real::sqrt_int(2, p).unwrap();
        assert!(rep.alpha.sub(&Real::one()).contains_zero());
        assert!(rep.beta.sub(&s2).contains_zero());
    }

    #[test]
    fn canonical_configuration_is_fixed() {
        let p = prec();
        let rep = normalize_configuration(&canonical(p), p).unwrap();
        assert_recovers_canonical(&rep, p);
        assert_eq!(rep.base_index, 1);
        assert_eq!(rep.off_index, 0);
        // every step of the chain is trivial for the canonical input
        for step in &rep.transform_log {
            for (i, row) in step.matrix.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    let expect = if i == j { Real::one() } else { Real::zero() };
                    assert!(entry.sub(&expect).contains_zero(), "step {}", step.name);
                }
            }
        }
    }

    #[test]
    fn translation_invariance() {
        let p = prec();
        let mut cfg = canonical(p);
        for pt in cfg.points.iter_mut() {
            pt.0 = pt.0.add(&Real::from_int(2));
            pt.1 = pt.1.add(&Real::from_int(3));
        }
        let rep = normalize_configuration(&cfg, p).unwrap();
        assert_recovers_canonical(&rep, p);
    }

    #[test]
    fn rotation_invariance() {
        // rotate by 1/12 of a turn (π/6)
        let p = prec();
        let (s, c) = crate::real::sincos2pi(&Real::from_ratio(1, 12), p);
        let mut cfg = canonical(p);
        for pt in cfg.points.iter_mut() {
            let x = c.mul(&pt.0).sub(&s.mul(&pt.1));
            let y = s.mul(&pt.0).add(&c.mul(&pt.1));
            *pt = (x, y);
        }
        let rep = normalize_configuration(&cfg, p).unwrap();
        assert_recovers_canonical(&rep, p);
    }

    #[test]
    fn random_unimodular_maps_recover() {
        let p = prec();
        let mut rng = ChaCha8Rng::seed_from_u64(0xa5a5);
        for trial in 0..100 {
            let mut cfg = canonical(p);
            // random integer shear product with a translation: det = 1
            let a = rng.gen_range(-4i64..=4);
            let b = rng.gen_range(-4i64..=4);
            let tx = Real::from_ratio(rng.gen_range(-20i64..=20), 7);
            let ty = Real::from_ratio(rng.gen_range(-20i64..=20), 5);
            // M = [[1, a], [0, 1]] · [[1, 0], [b, 1]]
            let m = [
                [
                    Real::from_int(1 + a * b),
                    Real::from_int(a),
                ],
                [Real::from_int(b), Real::one()],
            ];
            for pt in cfg.points.iter_mut() {
                let x = m[0][0].mul(&pt.0).add(&m[0][1].mul(&pt.1)).add(&tx);
                let y = m[1][0].mul(&pt.0).add(&m[1][1].mul(&pt.1)).add(&ty);
                *pt = (x, y);
            }
            // shuffle the labels too
            let perm = rng.gen_range(0..4usize);
            cfg.points.rotate_left(perm);
            let rep = normalize_configuration(&cfg, p).unwrap();
            assert_recovers_canonical(&rep, p);
            let _ = trial;
        }
    }

    #[test]
    fn vertical_line_configuration() {
        // collinear points on a vertical line
        let p = prec();
        let cfg = Configuration {
            points: [
                (Real::zero(), Real::zero()),
                (Real::zero(), Real::one()),
                (Real::zero(), Real::sqrt_int(2, p).unwrap()),
                (Real::from_int(-1), Real::zero()),
            ],
        };
        let rep = normalize_configuration(&cfg, p).unwrap();
        // areas: ω(p - b, o - b) for the unique admissible base
        assert!(rep.alpha.lo() > BigRational::from_integer(BigInt::from(0)));
        assert!(rep.beta.lo() >= rep.alpha.lo());
    }

    #[test]
    fn degenerate_configurations_rejected() {
        let p = prec();
        // all four collinear
        let cfg = Configuration {
            points: [
                (Real::zero(), Real::zero()),
                (Real::one(), Real::zero()),
                (Real::from_int(2), Real::zero()),
                (Real::from_int(3), Real::zero()),
            ],
        };
        assert!(normalize_configuration(&cfg, p).is_err());
        // no collinear triple
        let cfg = Configuration {
            points: [
                (Real::zero(), Real::zero()),
                (Real::one(), Real::zero()),
                (Real::zero(), Real::one()),
                (Real::one(), Real::one()),
            ],
        };
        assert!(normalize_configuration(&cfg, p).is_err());
        // coincident collinear points
        let cfg = Configuration {
            points: [
                (Real::zero(), Real::zero()),
                (Real::zero(), Real::zero()),
                (Real::one(), Real::zero()),
                (Real::zero(), Real::one()),
            ],
        };
        assert!(normalize_configuration(&cfg, p).is_err());
    }
}
