//! Special functions shared by the series, reference and asymptotics layers.

use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::quadrature::{exp_sinh, QuadratureSpec};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Rising factorial a (a+1) ... (a+j-1); j = 0 gives 1.
pub fn pochhammer(a: &Float, j: u64, ctx: &PrecisionContext) -> Float {
    let prec = ctx.prec_bits();
    let mut acc = Float::with_val(prec, 1);
    let mut factor = Float::with_val(prec, a);
    for _ in 0..j {
        acc *= &factor;
        factor += 1u32;
    }
    acc
}

/// Exact rational rising factorial, with the j = -1 extension
/// (x)_{-1} = 1/(x-1) used by the transformation weights at order 0.
pub fn pochhammer_rational(a: &Rational, j: i64) -> Rational {
    if j == -1 {
        let denom = a.clone() - 1u32;
        return Rational::from(1) / denom;
    }
    assert!(j >= 0, "only j >= -1 is defined");
    let mut acc = Rational::from(1);
    let mut factor = a.clone();
    for _ in 0..j {
        acc *= &factor;
        factor += 1u32;
    }
    acc
}

pub fn binomial(k: u64, j: u64) -> Integer {
    Integer::from(k).binomial(j as u32)
}

/// Gamma function for real arguments away from the poles.
pub fn gamma_fn(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if x.is_zero() || (x.is_sign_negative() && x.is_integer()) {
        return Err(Error::Domain(format!(
            "gamma pole at non-positive integer {x}"
        )));
    }
    Ok(Float::with_val(ctx.prec_bits(), x).gamma())
}

/// ln Gamma(x) for x > 0.
pub fn ln_gamma_fn(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if !x.is_sign_positive() || x.is_zero() {
        return Err(Error::Domain(format!("ln_gamma needs x > 0, got {x}")));
    }
    Ok(Float::with_val(ctx.prec_bits(), x).ln_gamma())
}

/// Modified Bessel function K0 via its integral representation
/// K0(x) = integral over [0, inf) of exp(-x cosh s) ds, x > 0.
///
/// One code path for every argument; accuracy is driven by the shared
/// quadrature engine.
pub fn bessel_k0(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if !x.is_sign_positive() || x.is_zero() || !x.is_finite() {
        return Err(Error::Domain(format!("K0 needs x > 0, got {x}")));
    }
    let spec = QuadratureSpec::semi_infinite(ctx.digits() + ctx.guard_digits() / 2);
    let prec = spec.work_prec();
    let xv = Float::with_val(prec, x);
    let est = exp_sinh(
        move |s: &Float| {
            let c = s.clone().cosh();
            (-(xv.clone() * c)).exp()
        },
        &spec,
    );
    est.checked(ctx.digits())
}

/// Ascending-series K0, used as the inner kernel of the factorial-squared
/// reference integrand where a quadrature per node would be quadratically
/// expensive. The alternating I0-type sums cancel to ~e^(-2x), so the guard
/// grows linearly with x.
pub(crate) fn bessel_k0_series(x: &Float, target_digits: u32) -> Float {
    let extra = (0.9 * x.to_f64().max(0.0)).ceil() as u32 + 10;
    let prec = crate::precision::decimal_to_bits(target_digits + extra);
    let x = Float::with_val(prec, x);
    let q = x.clone().square() / 4u32;
    let mut term = Float::with_val(prec, 1);
    let mut i0 = Float::with_val(prec, 1);
    let mut h = Float::new(prec);
    let mut hsum = Float::new(prec);
    let eps = Float::with_val(prec, 10u32).pow(-((target_digits + extra - 5) as i32));
    for m in 1..1_000_000u32 {
        term *= q.clone() / Float::with_val(prec, m).square();
        h += Float::with_val(prec, m).recip();
        i0 += &term;
        hsum += term.clone() * &h;
        if term < eps.clone() * &i0 {
            break;
        }
    }
    let lead = -(x / 2u32).ln() - Float::with_val(prec, rug::float::Constant::Euler);
    lead * i0 + hsum
}

/// Upper incomplete gamma function Gamma(a, w) on the principal branch,
/// |arg w| < pi, by the standard continued fraction (modified Lentz).
///
/// Used as a cross-check only; reference values come from quadrature.
pub fn upper_incomplete_gamma(
    a: &Float,
    w: &BigComplex,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    if w.is_zero() {
        return Err(Error::Domain("incomplete gamma needs w != 0".into()));
    }
    if w.im.is_zero() && w.re.is_sign_negative() {
        return Err(Error::Domain(
            "incomplete gamma argument on the branch cut".into(),
        ));
    }
    let work = ctx.with_extra_guard(10);
    let prec = work.prec_bits();
    let a = Float::with_val(prec, a);
    let w = BigComplex::new(
        Float::with_val(prec, &w.re),
        Float::with_val(prec, &w.im),
    );

    // Gamma(a,w) = e^-w w^a / (w + (1-a)/(1 + 1/(w + (2-a)/(1 + 2/(w + ...)))))
    // evaluated by modified Lentz iteration on the even/odd coefficient pairs.
    let tiny = BigComplex::new(Float::with_val(prec, 1e-300), Float::new(prec));
    let eps = work.epsilon();

    let b0 = BigComplex::new(w.re.clone() + 1u32 - &a, w.im.clone());
    let mut f = if b0.is_zero() { tiny.clone() } else { b0 };
    let mut c = f.clone();
    let mut d = BigComplex::zero(prec);
    let max_iter = 200_000u64;
    let mut i = 1u64;
    loop {
        // a_i = -i (i - a), b_i = w + 2i + 1 - a
        let ai = {
            let t = Float::with_val(prec, i) - &a;
            BigComplex::from_real(-(Float::with_val(prec, i) * t))
        };
        let bi = BigComplex::new(
            w.re.clone() + (2 * i + 1) as f64 - &a,
            w.im.clone(),
        );
        d = &bi + &(&ai * &d);
        if d.is_zero() {
            d = tiny.clone();
        }
        c = &bi + &(&ai * &c.recip());
        if c.is_zero() {
            c = tiny.clone();
        }
        d = d.recip();
        let delta = &c * &d;
        f = &f * &delta;
        let drift = (&delta - &BigComplex::one(prec)).abs();
        if drift < eps {
            break;
        }
        i += 1;
        if i > max_iter {
            return Err(Error::QuadratureNonConvergence {
                achieved_digits: -(drift.log10().to_f64() as i64),
                requested_digits: ctx.digits(),
            });
        }
    }

    // prefactor e^-w w^a, principal branch
    let ln_w = w.ln();
    let exponent = &ln_w.scale(&a) - &w;
    let front = exponent.exp();
    Ok(&front / &f)
}
