//! Moment sequences, partial sums and converging factors for the three
//! Stieltjes families under study.
//!
//! A Stieltjes series sum_m (-1)^m mu_m z^(-m-1) is asymptotic to the
//! Stieltjes integral f(z) = int_0^inf dmu/(z+t). The families:
//!
//! * `Euler`: mu_m = m!
//! * `Superfactorial { q }`: mu_m = Gamma(2m+1+q), q in (-1, 1)
//! * `FactorialSquared`: mu_m = (m!)^2
//!
//! The n-th converging factor phi_n(z) = (1/mu_n) int t^n dmu/(t+z) encodes
//! the truncation error exactly: f - f_n = (-1)^(n+1) z^(-n-1) mu_{n+1} phi_{n+1}.

use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::quadrature::{sin_power_tail, QuadratureSpec};
use crate::special::gamma_fn;
use rug::{Float, Integer, Rational};

/// One of the three moment families.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesFamily {
    /// mu_m = m!
    Euler,
    /// mu_m = Gamma(2m + 1 + q), q in (-1, 1)
    Superfactorial { q: Rational },
    /// mu_m = (m!)^2
    FactorialSquared,
}

impl SeriesFamily {
    pub fn superfactorial(q: Rational) -> Result<Self> {
        if q <= -1 || q >= 1 {
            return Err(Error::InvalidParameter(format!(
                "q must lie in (-1, 1), got {q}"
            )));
        }
        Ok(SeriesFamily::Superfactorial { q })
    }

    /// The exponent q as a rational (0 for the other families).
    pub fn q(&self) -> Rational {
        match self {
            SeriesFamily::Superfactorial { q } => q.clone(),
            _ => Rational::new(),
        }
    }

    /// The weight offset beta of the inverse-factorial representation:
    /// q/2 for the superfactorial family, 0 for the Euler series.
    pub fn beta(&self) -> Rational {
        match self {
            SeriesFamily::Superfactorial { q } => q.clone() / 2u32,
            _ => Rational::new(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SeriesFamily::Euler => "euler".into(),
            SeriesFamily::Superfactorial { q } => format!("superfactorial(q={q})"),
            SeriesFamily::FactorialSquared => "factorial-squared".into(),
        }
    }
}

/// Moment mu_m of the family, to working precision.
///
/// Families with integer moments (Euler, FactorialSquared, Superfactorial at
/// q = 0) go through exact integer arithmetic.
pub fn moment(family: &SeriesFamily, m: u64, ctx: &PrecisionContext) -> Float {
    match family {
        SeriesFamily::Euler => ctx.from_integer(&Integer::factorial(m as u32).into()),
        SeriesFamily::FactorialSquared => {
            let f = Integer::from(Integer::factorial(m as u32));
            ctx.from_integer(&(f.clone() * f))
        }
        SeriesFamily::Superfactorial { q } => {
            if *q == 0 {
                ctx.from_integer(&Integer::factorial(2 * m as u32).into())
            } else {
                let arg = ctx.from_rational(&(Rational::from(2 * m + 1) + q.clone()));
                gamma_fn(&arg, ctx).expect("2m+1+q > 0 for q > -1")
            }
        }
    }
}

/// Exact ratio mu_{m+1} / mu_m.
pub fn moment_ratio(family: &SeriesFamily, m: u64) -> Rational {
    match family {
        SeriesFamily::Euler => Rational::from(m + 1),
        SeriesFamily::FactorialSquared => Rational::from((m + 1) * (m + 1)),
        SeriesFamily::Superfactorial { q } => {
            let a = Rational::from(2 * m + 1) + q.clone();
            let b = Rational::from(2 * m + 2) + q.clone();
            a * b
        }
    }
}

/// Convention for the partial sums fed into the transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumConvention {
    /// f_n = sum_{m<=n} (-1)^m mu_m z^(-m-1); converges toward f(z).
    Raw,
    /// z times the raw sums; converges toward z f(z).
    ZScaled,
}

/// Partial sums f_0..f_{n_max} of a family at a fixed argument, together with
/// the series terms (so that first differences are exact).
#[derive(Clone, Debug)]
pub struct PartialSumSequence {
    pub family: SeriesFamily,
    pub z: BigComplex,
    pub convention: SumConvention,
    /// f_0 .. f_{n_max}
    pub values: Vec<BigComplex>,
    /// terms t_m, m = 0..n_max, with f_n = sum_{m<=n} t_m
    pub terms: Vec<BigComplex>,
}

impl PartialSumSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First difference f_{n+1} - f_n, available exactly as the n+1-th term.
    pub fn diff(&self, n: usize) -> &BigComplex {
        &self.terms[n + 1]
    }
}

fn check_argument(z: &BigComplex) -> Result<()> {
    if z.is_zero() {
        return Err(Error::Domain("series argument z must be nonzero".into()));
    }
    if z.im.is_zero() && z.re.is_sign_negative() {
        return Err(Error::Domain(
            "series argument on the branch cut (-inf, 0]".into(),
        ));
    }
    Ok(())
}

/// Partial sums f_0..f_{n_max}, built incrementally with exact moment ratios.
pub fn partial_sums(
    family: &SeriesFamily,
    z: &BigComplex,
    n_max: usize,
    convention: SumConvention,
    ctx: &PrecisionContext,
) -> Result<PartialSumSequence> {
    check_argument(z)?;
    let prec = ctx.prec_bits();
    let z = BigComplex::new(
        Float::with_val(prec, &z.re),
        Float::with_val(prec, &z.im),
    );
    let z_inv = z.recip();

    // t_0 = mu_0 / z (raw), times z when z-scaled
    let mu0 = moment(family, 0, ctx);
    let mut term = match convention {
        SumConvention::Raw => z_inv.scale(&mu0),
        SumConvention::ZScaled => BigComplex::from_real(mu0),
    };
    let mut terms = Vec::with_capacity(n_max + 1);
    let mut values = Vec::with_capacity(n_max + 1);
    let mut acc = term.clone();
    terms.push(term.clone());
    values.push(acc.clone());
    for m in 0..n_max as u64 {
        let ratio = ctx.from_rational(&moment_ratio(family, m));
        term = (&term * &z_inv).scale(&(-ratio));
        acc = &acc + &term;
        terms.push(term.clone());
        values.push(acc.clone());
    }
    Ok(PartialSumSequence {
        family: family.clone(),
        z,
        convention,
        values,
        terms,
    })
}

/// n-th converging factor of the superfactorial family at real z > 0.
#[derive(Clone, Debug)]
pub struct ConvergingFactor {
    pub n: u64,
    pub z: Float,
    pub value: Float,
    pub achieved_digits: i64,
}

/// Converging factor phi_n(z) of the superfactorial family, for z > 0, n >= 1.
///
/// phi_n(z) = int_0^1 t^(n + q/2 - 1) Phi(t) dt with the oscillatory
/// generating kernel Phi(t) = sin(sqrt(z) (t^(-1/2) - 1)) / (2 sqrt(z)).
/// The substitution u = t^(-1/2) turns this into
/// (1/sqrt(z)) int_1^inf u^(-(2n+q+1)) sin(sqrt(z)(u-1)) du,
/// which the quadrature module evaluates on the rotated ray.
pub fn converging_factor(
    family: &SeriesFamily,
    z: &Float,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<ConvergingFactor> {
    let q = match family {
        SeriesFamily::Superfactorial { q } => q.clone(),
        _ => {
            return Err(Error::InvalidParameter(
                "converging factors are implemented for the superfactorial family".into(),
            ))
        }
    };
    if !z.is_sign_positive() || z.is_zero() {
        return Err(Error::Domain("converging factor needs real z > 0".into()));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "converging factor integral representation needs n >= 1".into(),
        ));
    }
    let spec = QuadratureSpec::semi_infinite(ctx.digits() + 10);
    let prec = spec.work_prec();
    let c = Float::with_val(prec, z).sqrt();
    let a = Float::with_val(prec, 2 * n + 1) + Float::with_val(prec, &Rational::from(q));
    let est = sin_power_tail(&a, &c, &spec);
    let achieved = est.achieved_digits();
    let value = est.checked(ctx.digits())? / c;
    Ok(ConvergingFactor {
        n,
        z: z.clone(),
        value,
        achieved_digits: achieved,
    })
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
    fn moments_match_closed_forms() {
        let ctx = ctx();
        let sf0 = SeriesFamily::superfactorial(Rational::new()).unwrap();
        assert_eq!(moment(&sf0, 1, &ctx), 2); // Gamma(3)
        assert_eq!(moment(&SeriesFamily::Euler, 3, &ctx), 6);
        assert_eq!(moment(&SeriesFamily::FactorialSquared, 3, &ctx), 36);
        // q = -1/2: mu_1 = Gamma(2.5) = 1.5 * 0.5 * sqrt(pi)
        let sf = SeriesFamily::superfactorial(Rational::from((-1, 2))).unwrap();
        let expected = ctx.f64(0.75) * ctx.pi().sqrt();
        assert_digits(&moment(&sf, 1, &ctx), &expected, 78);
    }

    #[test]
    fn moment_ratios_are_exact() {
        for m in 0..12u64 {
            assert_eq!(moment_ratio(&SeriesFamily::Euler, m), Rational::from(m + 1));
            assert_eq!(
                moment_ratio(&SeriesFamily::FactorialSquared, m),
                Rational::from((m + 1) * (m + 1))
            );
            let q = Rational::from((1, 2));
            let sf = SeriesFamily::superfactorial(q.clone()).unwrap();
            let expect =
                (Rational::from(2 * m + 1) + &q) * (Rational::from(2 * m + 2) + &q);
            assert_eq!(moment_ratio(&sf, m), expect);
        }
    }

    #[test]
    fn q_range_is_enforced() {
        assert!(SeriesFamily::superfactorial(Rational::from(1)).is_err());
        assert!(SeriesFamily::superfactorial(Rational::from(-1)).is_err());
        assert!(SeriesFamily::superfactorial(Rational::from((99, 100))).is_ok());
    }

    #[test]
    fn euler_partial_sums_at_one() {
        let ctx = ctx();
        let z = BigComplex::from_real(ctx.int(1));
        let fs = partial_sums(&SeriesFamily::Euler, &z, 2, SumConvention::Raw, &ctx).unwrap();
        assert_digits(&fs.values[0].re, &ctx.int(1), 75);
        assert!(fs.values[1].re.clone().abs() < 1e-70);
        assert_digits(&fs.values[2].re, &ctx.int(2), 75);
    }

    #[test]
    fn superfactorial_partial_sums_at_one() {
        let ctx = ctx();
        let sf = SeriesFamily::superfactorial(Rational::new()).unwrap();
        let z = BigComplex::from_real(ctx.int(1));
        let fs = partial_sums(&sf, &z, 2, SumConvention::Raw, &ctx).unwrap();
        assert_digits(&fs.values[0].re, &ctx.int(1), 75);
        assert_digits(&fs.values[1].re, &ctx.int(-1), 75);
        assert_digits(&fs.values[2].re, &ctx.int(23), 75);
    }

    #[test]
    fn raw_differences_match_terms() {
        let ctx = ctx();
        let sf = SeriesFamily::superfactorial(Rational::from((-1, 2))).unwrap();
        let z = BigComplex::new(ctx.f64(1.5), ctx.f64(0.5));
        let fs = partial_sums(&sf, &z, 8, SumConvention::Raw, &ctx).unwrap();
        for n in 0..8 {
            let d = &fs.values[n + 1] - &fs.values[n];
            let t = fs.diff(n);
            assert!((&d - t).abs() < 1e-60);
            assert!(!t.is_zero());
        }
    }

    #[test]
    fn branch_cut_is_rejected() {
        let ctx = ctx();
        let z = BigComplex::from_real(ctx.int(-2));
        assert!(partial_sums(&SeriesFamily::Euler, &z, 3, SumConvention::Raw, &ctx).is_err());
        let zero = BigComplex::zero(ctx.prec_bits());
        assert!(partial_sums(&SeriesFamily::Euler, &zero, 3, SumConvention::Raw, &ctx).is_err());
    }

    #[test]
    fn converging_factor_recurrence() {
        // 4 (n + q/2 + 1)(n + q/2 + 1/2) phi_{n+1} + z phi_n = 1 at (z,q,n)=(1,0,3)
        let ctx = ctx();
        let sf = SeriesFamily::superfactorial(Rational::new()).unwrap();
        let z = ctx.int(1);
        let phi3 = converging_factor(&sf, &z, 3, &ctx).unwrap().value;
        let phi4 = converging_factor(&sf, &z, 4, &ctx).unwrap().value;
        let lhs = ctx.int(4) * ctx.int(4) * ctx.f64(3.5) * &phi4 + &z * phi3;
        assert_digits(&lhs, &ctx.int(1), 70);
    }

    #[test]
    fn converging_factor_decays_with_bound() {
        // |phi_{n+1}| <= sup|Phi| / (n + q/2 + 1); sup|Phi| = 1/(2 sqrt z)
        let ctx = ctx();
        let sf = SeriesFamily::superfactorial(Rational::new()).unwrap();
        let z = ctx.int(1);
        let mut last = ctx.int(1);
        for n in 1..=8u64 {
            let phi = converging_factor(&sf, &z, n, &ctx).unwrap().value;
            assert!(phi.is_sign_positive());
            assert!(phi < last);
            let bound = ctx.f64(0.5) / ctx.f64(n as f64);
            assert!(phi <= bound);
            last = phi;
        }
    }
}
