//! Ground-truth Stieltjes values by high-precision quadrature.
//!
//! Every reference value comes from a double-exponential quadrature of the
//! family's smooth substituted integrand; closed forms are cross-checks, not
//! the source of truth:
//!
//! * Euler:               int_0^inf e^-t / (z+t) dt
//! * Superfactorial(q):   int_0^inf u^q e^-u / (u^2+z) du
//! * FactorialSquared:    4 int_0^inf u K0(2u) / (u^2+z) du

use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::quadrature::{exp_sinh, QuadratureSpec};
use crate::series::SeriesFamily;
use crate::special::{gamma_fn, upper_incomplete_gamma};
use rug::ops::Pow;
use rug::{Float, Rational};

/// How a reference value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceMethod {
    Quadrature,
    ClosedForm,
}

/// A ground-truth value of the Stieltjes integral at one argument.
#[derive(Clone, Debug)]
pub struct ReferenceValue {
    pub family: SeriesFamily,
    pub z: BigComplex,
    pub value: BigComplex,
    pub achieved_digits: i64,
    pub method: ReferenceMethod,
}

fn check_z(z: &BigComplex) -> Result<()> {
    if z.is_zero() {
        return Err(Error::Domain("z must be nonzero".into()));
    }
    if z.im.is_zero() && z.re.is_sign_negative() {
        return Err(Error::Domain("z on the branch cut (-inf, 0]".into()));
    }
    Ok(())
}

/// f(z) = int_0^inf dmu/(z+t) for the family, |arg z| < pi.
///
/// The integrand is real-variable with complex values when z is complex; no
/// contour deformation is needed since it stays smooth for |arg z| < pi.
pub fn stieltjes_value(
    family: &SeriesFamily,
    z: &BigComplex,
    ctx: &PrecisionContext,
) -> Result<ReferenceValue> {
    check_z(z)?;
    let spec = QuadratureSpec::semi_infinite(ctx.digits() + 5);
    let prec = spec.work_prec();
    let z = BigComplex::new(Float::with_val(prec, &z.re), Float::with_val(prec, &z.im));

    let est = match family {
        SeriesFamily::Euler => {
            let zc = z.clone();
            exp_sinh(
                move |t: &Float| {
                    let den = BigComplex::new(zc.re.clone() + t, zc.im.clone());
                    den.recip().scale(&(-t.clone()).exp())
                },
                &spec,
            )
        }
        SeriesFamily::Superfactorial { q } => {
            let zc = z.clone();
            let qf = Float::with_val(prec, &Rational::from(q.clone()));
            exp_sinh(
                move |u: &Float| {
                    let den = BigComplex::new(u.clone().square() + &zc.re, zc.im.clone());
                    let weight = if qf.is_zero() {
                        (-u.clone()).exp()
                    } else {
                        (qf.clone() * u.clone().ln() - u).exp()
                    };
                    den.recip().scale(&weight)
                },
                &spec,
            )
        }
        SeriesFamily::FactorialSquared => {
            // one Bessel evaluation per node: the series kernel keeps this
            // linear in the node count (a quadrature per node would not be)
            let inner_digits = ctx.digits() + 10;
            let zc = z.clone();
            let est = exp_sinh(
                move |u: &Float| {
                    let x = Float::with_val(u.prec(), 2) * u;
                    let k0 = crate::special::bessel_k0_series(&x, inner_digits);
                    let den = BigComplex::new(u.clone().square() + &zc.re, zc.im.clone());
                    den.recip().scale(&(k0 * u))
                },
                &spec,
            );
            let mut est = est;
            est.value = est.value.scale(&Float::with_val(prec, 4));
            est.abs_error *= 4u32;
            est
        }
    };

    let achieved = est.achieved_digits();
    let value = est.checked(ctx.digits())?;
    Ok(ReferenceValue {
        family: family.clone(),
        z,
        value,
        achieved_digits: achieved,
        method: ReferenceMethod::Quadrature,
    })
}

/// The benchmark integral: z * f(z) for the superfactorial family at
/// q = -1/2, z = 45 pi^2 / 64.
pub fn j3_benchmark(ctx: &PrecisionContext) -> Result<ReferenceValue> {
    let family = SeriesFamily::superfactorial(Rational::from((-1, 2)))?;
    let z = j3_argument(ctx);
    let f = stieltjes_value(&family, &BigComplex::from_real(z.clone()), ctx)?;
    Ok(ReferenceValue {
        value: f.value.scale(&z),
        ..f
    })
}

/// z = 45 pi^2 / 64 at working precision.
pub fn j3_argument(ctx: &PrecisionContext) -> Float {
    ctx.pi().square() * 45u32 / 64u32
}

/// Closed form of the superfactorial-family Stieltjes integral for z > 0:
///
///   f(z) = -(Gamma(q+1)/sqrt z) Im{ (-z)^(q/2) e^(i sqrt z) Gamma(-q, i sqrt z) },
///
/// with (-z)^(q/2) on the principal branch (arg(-z) = +pi). Cross-check only.
pub fn closed_form_qclass(z: &Float, q: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    if !z.is_sign_positive() || z.is_zero() {
        return Err(Error::Domain("closed form needs real z > 0".into()));
    }
    if *q <= -1 || *q >= 1 {
        return Err(Error::InvalidParameter(format!("q in (-1,1), got {q}")));
    }
    let work = ctx.with_extra_guard(10);
    let prec = work.prec_bits();
    let z = Float::with_val(prec, z);
    let qf = work.from_rational(q);
    let sqrt_z = z.clone().sqrt();

    let gamma_q1 = gamma_fn(&(qf.clone() + 1u32), &work)?;
    let w = BigComplex::new(Float::new(prec), sqrt_z.clone());
    let inc = upper_incomplete_gamma(&(-qf.clone()), &w, &work)?;

    // (-z)^(q/2) = z^(q/2) e^(i pi q / 2)
    let modulus = z.clone().pow(Float::with_val(prec, &qf) / 2u32);
    let phase = work.pi() * &qf / 2u32;
    let (sin_p, cos_p) = phase.sin_cos(Float::new(prec));
    let minus_z_pow = BigComplex::new(modulus.clone() * cos_p, modulus * sin_p);

    // e^(i sqrt z)
    let (sin_s, cos_s) = sqrt_z.clone().sin_cos(Float::new(prec));
    let osc = BigComplex::new(cos_s, sin_s);

    let product = &(&minus_z_pow * &osc) * &inc;
    Ok(-(gamma_q1 / sqrt_z) * product.im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(80).unwrap()
    }

    fn assert_digits(value: &Float, expected: &Float, digits: u32) {
        let err = (value.clone() - expected).abs();
        let scale = expected
            .clone()
            .abs()
            .max(&Float::with_val(expected.prec(), 1e-300));
        let tol = scale * Float::with_val(value.prec(), 10).pow(-(digits as i32));
        assert!(err <= tol, "value={value} expected={expected} err={err}");
    }

    #[test]
    fn euler_value_at_one() {
        // e * E1(1), frozen from the incomplete-gamma oracle
        let ctx = ctx();
        let r = stieltjes_value(&SeriesFamily::Euler, &BigComplex::from_real(ctx.int(1)), &ctx)
            .unwrap();
        let expected = ctx
            .parse("0.596347362323194074341078499369279376074177860152548781573485")
            .unwrap();
        assert_digits(&r.value.re, &expected, 58);
        assert!(r.achieved_digits >= 80);
    }

    #[test]
    fn superfactorial_large_z_leading_term() {
        // z f(z) -> mu_0 = 1 as z -> inf
        let ctx = ctx();
        let sf = SeriesFamily::superfactorial(Rational::new()).unwrap();
        let z = ctx.f64(1e6);
        let r = stieltjes_value(&sf, &BigComplex::from_real(z.clone()), &ctx).unwrap();
        let scaled = r.value.re.clone() * z;
        assert!((scaled - 1u32).abs() < 1e-5);
    }

    #[test]
    fn positive_and_decreasing_in_z() {
        let ctx = ctx();
        let families = [
            SeriesFamily::Euler,
            SeriesFamily::superfactorial(Rational::from((-1, 2))).unwrap(),
            SeriesFamily::FactorialSquared,
        ];
        for fam in families {
            let lo = stieltjes_value(&fam, &BigComplex::from_real(ctx.f64(0.7)), &ctx)
                .unwrap()
                .value
                .re;
            let hi = stieltjes_value(&fam, &BigComplex::from_real(ctx.f64(2.3)), &ctx)
                .unwrap()
                .value
                .re;
            assert!(lo.is_sign_positive() && hi.is_sign_positive(), "{fam:?}");
            assert!(lo > hi, "{fam:?} not decreasing");
        }
    }

    #[test]
    fn closed_form_agrees_with_quadrature() {
        let ctx = ctx();
        // (q, z) = (1/2, 1)
        let q = Rational::from((1, 2));
        let fam = SeriesFamily::superfactorial(q.clone()).unwrap();
        let quad = stieltjes_value(&fam, &BigComplex::from_real(ctx.int(1)), &ctx)
            .unwrap()
            .value
            .re;
        let closed = closed_form_qclass(&ctx.int(1), &q, &ctx).unwrap();
        assert_digits(&closed, &quad, 40);

        // the benchmark argument at q = -1/2
        let q = Rational::from((-1, 2));
        let fam = SeriesFamily::superfactorial(q.clone()).unwrap();
        let z = j3_argument(&ctx);
        let quad = stieltjes_value(&fam, &BigComplex::from_real(z.clone()), &ctx)
            .unwrap()
            .value
            .re;
        let closed = closed_form_qclass(&z, &q, &ctx).unwrap();
        assert_digits(&closed, &quad, 40);
    }

    #[test]
    fn closed_form_continuity_near_q_zero() {
        // q -> 0 limit brackets the quadrature value at z = 1
        let ctx = ctx();
        let sf0 = SeriesFamily::superfactorial(Rational::new()).unwrap();
        let quad = stieltjes_value(&sf0, &BigComplex::from_real(ctx.int(1)), &ctx)
            .unwrap()
            .value
            .re;
        let qp = Rational::from((1, 1_000_000));
        let qm = -qp.clone();
        let plus = closed_form_qclass(&ctx.int(1), &qp, &ctx).unwrap();
        let minus = closed_form_qclass(&ctx.int(1), &qm, &ctx).unwrap();
        let mid = (plus + minus) / 2u32;
        assert!((mid - quad).abs() < 1e-10);
    }

    #[test]
    fn complex_argument_supported() {
        let ctx = ctx();
        let sf = SeriesFamily::superfactorial(Rational::new()).unwrap();
        let phi = ctx.pi() / 2u32;
        let (s, c) = phi.sin_cos(Float::new(ctx.prec_bits()));
        let z = BigComplex::new(c, s);
        let r = stieltjes_value(&sf, &z, &ctx).unwrap();
        assert!(r.value.is_finite());
        assert!(!r.value.im.is_zero());
        // conjugate symmetry: f(conj z) = conj f(z)
        let rc = stieltjes_value(&sf, &z.conj(), &ctx).unwrap();
        assert!((rc.value.re.clone() - &r.value.re).abs() < 1e-70);
        assert!((rc.value.im.clone() + &r.value.im).abs() < 1e-70);
    }

    #[test]
    fn reference_kernel_matches_bessel_op() {
        // the series kernel used inside the factorial-squared integrand must
        // agree with the public quadrature-backed K0
        let ctx = ctx();
        for x in [0.05, 1.0, 7.5, 40.0] {
            let via_quadrature = crate::special::bessel_k0(&ctx.f64(x), &ctx).unwrap();
            let via_series = crate::special::bessel_k0_series(&ctx.f64(x), ctx.digits());
            assert_digits(&via_series, &via_quadrature, 75);
        }
    }

    #[test]
    fn branch_cut_rejected() {
        let ctx = ctx();
        let z = BigComplex::from_real(ctx.int(-1));
        assert!(stieltjes_value(&SeriesFamily::Euler, &z, &ctx).is_err());
    }

    #[test]
    fn self_consistency_under_target_doubling() {
        let ctx80 = ctx();
        let ctx160 = PrecisionContext::new(160).unwrap();
        let sf = SeriesFamily::superfactorial(Rational::from((-1, 2))).unwrap();
        let z = BigComplex::from_real(ctx160.f64(1.25));
        let lo = stieltjes_value(&sf, &z, &ctx80).unwrap().value.re;
        let hi = stieltjes_value(&sf, &z, &ctx160).unwrap().value.re;
        assert_digits(&lo, &hi, 79);
    }
}
