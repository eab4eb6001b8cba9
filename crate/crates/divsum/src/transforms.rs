//! Nonlinear sequence transformations: the delta transformation built from
//! Pochhammer-weighted finite differences, Wynn's epsilon algorithm (and the
//! Padé staircase it produces), plus an exact linear-algebra Padé evaluator
//! used to cross-validate the epsilon table.

use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::series::PartialSumSequence;
use crate::special::{binomial, pochhammer_rational};
use rug::{Float, Integer, Rational};

// ---------------------------------------------------------------------------
// finite differences
// ---------------------------------------------------------------------------

/// Values the finite-difference operator can combine linearly with exact
/// integer coefficients.
pub trait DiffValue: Clone {
    fn zero_like(&self) -> Self;
    /// self += coeff * v
    fn add_scaled(&mut self, coeff: &Integer, v: &Self);
    fn negate(&mut self);
}

impl DiffValue for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn add_scaled(&mut self, coeff: &Integer, v: &Self) {
        *self += v.clone() * coeff;
    }
    fn negate(&mut self) {
        *self *= -1i32;
    }
}

impl DiffValue for Float {
    fn zero_like(&self) -> Self {
        Float::new(self.prec())
    }
    fn add_scaled(&mut self, coeff: &Integer, v: &Self) {
        *self += v.clone() * coeff;
    }
    fn negate(&mut self) {
        *self = -self.clone();
    }
}

impl DiffValue for BigComplex {
    fn zero_like(&self) -> Self {
        BigComplex::zero(self.prec())
    }
    fn add_scaled(&mut self, coeff: &Integer, v: &Self) {
        self.re += v.re.clone() * coeff;
        self.im += v.im.clone() * coeff;
    }
    fn negate(&mut self) {
        self.neg_assign();
    }
}

/// k-th forward difference at offset n:
/// (-1)^k sum_{j=0}^{k} (-1)^j C(k,j) g(n+j).
///
/// `g` must be defined on n..=n+k.
pub fn forward_difference<T: DiffValue>(g: &[T], k: usize, n: usize) -> T {
    assert!(n + k < g.len(), "sequence too short for difference order");
    let mut acc = g[n].zero_like();
    for j in 0..=k {
        let mut c = binomial(k as u64, j as u64);
        if j % 2 == 1 {
            c = -c;
        }
        acc.add_scaled(&c, &g[n + j]);
    }
    if k % 2 == 1 {
        acc.negate();
    }
    acc
}

// ---------------------------------------------------------------------------
// delta transformation
// ---------------------------------------------------------------------------

/// Shared numerator/denominator weights of the order-k transformation:
/// w_j = (-1)^j C(k,j) (n+j+gamma)_{k-1}, exact rationals.
fn delta_weights(n: usize, k: usize, gamma: &Rational) -> Vec<Rational> {
    (0..=k)
        .map(|j| {
            let base = Rational::from(n as u64 + j as u64) + gamma.clone();
            let mut w = pochhammer_rational(&base, k as i64 - 1);
            w *= binomial(k as u64, j as u64);
            if j % 2 == 1 {
                w = -w;
            }
            w
        })
        .collect()
}

/// Order-k delta transformation of the partial sums, anchored at index n:
///
///   ratio of Delta^k{ (n+gamma)_{k-1} f_n / Df_n }
///        to  Delta^k{ (n+gamma)_{k-1} 1 / Df_n }.
///
/// The partial-sum sequence must extend through index n+k+1. Both binomial
/// sums are evaluated at precision elevated for order k; the common
/// (-1)^k and any rational factor shared by the weights cancel in the ratio.
pub fn weniger_delta(
    fs: &PartialSumSequence,
    n: usize,
    k: usize,
    gamma: &Rational,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    if *gamma <= 0 {
        return Err(Error::InvalidParameter(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    if fs.len() < n + k + 2 {
        return Err(Error::InvalidParameter(format!(
            "need partial sums through index {} (have {})",
            n + k + 1,
            fs.len() - 1
        )));
    }
    if k == 0 {
        // the single weight (n+gamma)_{-1} cancels in the ratio
        return Ok(fs.values[n].clone());
    }
    match delta_ratio(fs, n, k, gamma, ctx) {
        DeltaOutcome::Value(v) => Ok(v),
        DeltaOutcome::Degenerate => {
            // retry at doubled precision to distinguish precision exhaustion
            // from a genuine pole of the rational approximant
            let retry_ctx = ctx.with_extra_guard(ctx.digits() + ctx.guard_digits());
            match delta_ratio(fs, n, k, gamma, &retry_ctx) {
                DeltaOutcome::Value(v) => Ok(v),
                DeltaOutcome::Degenerate => Err(Error::VanishingDenominator(format!(
                    "denominator sum vanished at order k={k} even after doubling precision; \
                     the approximant has a pole at this argument"
                ))),
            }
        }
    }
}

enum DeltaOutcome {
    Value(BigComplex),
    Degenerate,
}

fn delta_ratio(
    fs: &PartialSumSequence,
    n: usize,
    k: usize,
    gamma: &Rational,
    ctx: &PrecisionContext,
) -> DeltaOutcome {
    let work = ctx.elevated_for_order(k);
    let prec = work.prec_bits();
    let weights = delta_weights(n, k, gamma);

    let mut num = BigComplex::zero(prec);
    let mut den = BigComplex::zero(prec);
    let mut max_den_term = Float::new(prec);
    for (j, w) in weights.iter().enumerate() {
        let wf = work.from_rational(w);
        let f = &fs.values[n + j];
        let df = fs.diff(n + j);
        let inv_df = BigComplex::new(
            Float::with_val(prec, &df.re),
            Float::with_val(prec, &df.im),
        )
        .recip();
        let fr = BigComplex::new(Float::with_val(prec, &f.re), Float::with_val(prec, &f.im));
        let den_term = inv_df.scale(&wf);
        let mag = den_term.abs();
        if mag > max_den_term {
            max_den_term = mag;
        }
        den = &den + &den_term;
        num = &num + &(&fr * &den_term);
    }
    // cancellation exhausted the working precision if the sum is smaller than
    // the largest term by nearly the full number of digits carried
    let den_mag = den.abs();
    let threshold = max_den_term * work.epsilon() * 1e6f64;
    if den_mag.is_zero() || den_mag < threshold {
        return DeltaOutcome::Degenerate;
    }
    DeltaOutcome::Value(&num / &den)
}

/// delta_k^{(n)}(gamma) for k = 0..=k_max from one set of partial sums.
pub fn delta_sequence(
    fs: &PartialSumSequence,
    n: usize,
    k_max: usize,
    gamma: &Rational,
    ctx: &PrecisionContext,
) -> Result<Vec<BigComplex>> {
    (0..=k_max)
        .map(|k| weniger_delta(fs, n, k, gamma, ctx))
        .collect()
}

// ---------------------------------------------------------------------------
// epsilon algorithm
// ---------------------------------------------------------------------------

/// Field-like values the epsilon recursion divides; `recip` returns `None`
/// for a vanishing (or non-finite) difference so the table can carry
/// validity masks instead of aborting.
pub trait EpsValue: Clone {
    fn sub(&self, other: &Self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn recip_checked(&self) -> Option<Self>;
}

impl EpsValue for Rational {
    fn sub(&self, other: &Self) -> Self {
        self.clone() - other
    }
    fn add(&self, other: &Self) -> Self {
        self.clone() + other
    }
    fn recip_checked(&self) -> Option<Self> {
        if *self == 0 {
            None
        } else {
            Some(self.clone().recip())
        }
    }
}

impl EpsValue for Float {
    fn sub(&self, other: &Self) -> Self {
        self.clone() - other
    }
    fn add(&self, other: &Self) -> Self {
        self.clone() + other
    }
    fn recip_checked(&self) -> Option<Self> {
        if self.is_zero() || !self.is_finite() {
            None
        } else {
            Some(self.clone().recip())
        }
    }
}

impl EpsValue for BigComplex {
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn recip_checked(&self) -> Option<Self> {
        if self.is_zero() || !self.is_finite() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Triangular epsilon table. Column k holds eps_k^{(n)} for
/// n = 0..len-k-1; `None` marks entries invalidated by a vanishing
/// denominator somewhere below them.
#[derive(Clone, Debug)]
pub struct EpsilonTable<T> {
    pub columns: Vec<Vec<Option<T>>>,
}

impl<T: Clone> EpsilonTable<T> {
    pub fn entry(&self, k: usize, n: usize) -> Option<&T> {
        self.columns.get(k).and_then(|c| c.get(n)).and_then(|e| e.as_ref())
    }

    /// Highest even column available at offset n.
    pub fn max_even_order(&self, n: usize) -> usize {
        let mut best = 0;
        for k in (0..self.columns.len()).step_by(2) {
            if self.columns[k].len() > n && self.columns[k][n].is_some() {
                best = k;
            }
        }
        best
    }
}

/// Full epsilon table of the input sequence, through column 2*k_max.
///
/// eps_{-1} = 0, eps_0^{(n)} = s_n,
/// eps_{k+1}^{(n)} = eps_{k-1}^{(n+1)} + 1/(eps_k^{(n+1)} - eps_k^{(n)}).
/// Even columns approximate the limit; odd columns are auxiliary.
pub fn wynn_epsilon<T: EpsValue>(s: &[T], k_max: usize) -> Result<EpsilonTable<T>> {
    if s.len() < 2 * k_max + 1 {
        return Err(Error::InvalidParameter(format!(
            "epsilon table of order {k_max} needs at least {} sequence entries, got {}",
            2 * k_max + 1,
            s.len()
        )));
    }
    let n_cols = 2 * k_max + 1;
    let mut columns: Vec<Vec<Option<T>>> = Vec::with_capacity(n_cols);
    columns.push(s.iter().cloned().map(Some).collect());
    // virtual eps_{-1} column of zeros handled inline below
    for k in 1..n_cols {
        let prev = &columns[k - 1];
        let len = prev.len().saturating_sub(1);
        let mut col: Vec<Option<T>> = Vec::with_capacity(len);
        for n in 0..len {
            let e_next = prev[n + 1].as_ref();
            let e_here = prev[n].as_ref();
            let step = match (e_next, e_here) {
                (Some(a), Some(b)) => a.sub(b).recip_checked(),
                _ => None,
            };
            let base: Option<T> = if k == 1 {
                // eps_{-1}^{(n+1)} = 0: represent via s - s (exact zero of the type)
                Some(s[0].sub(&s[0]))
            } else {
                columns[k - 2][n + 1].clone()
            };
            let entry = match (base, step) {
                (Some(b), Some(st)) => Some(b.add(&st)),
                _ => None,
            };
            col.push(entry);
        }
        columns.push(col);
    }
    Ok(EpsilonTable { columns })
}

/// The staircase pair ([k/k], [k+1/k]) = (eps_{2k}^{(0)}, eps_{2k}^{(1)})
/// of the series whose partial sums are `s`.
pub fn pade_staircase<T: EpsValue>(s: &[T], k: usize) -> Result<(T, T)> {
    if s.len() < 2 * k + 2 {
        return Err(Error::InvalidParameter(format!(
            "staircase pair at order {k} needs {} partial sums, got {}",
            2 * k + 2,
            s.len()
        )));
    }
    let table = wynn_epsilon(s, k)?;
    let lower = table
        .entry(2 * k, 0)
        .cloned()
        .ok_or_else(|| Error::VanishingDenominator("epsilon entry (2k, 0) invalid".into()))?;
    let upper = table
        .entry(2 * k, 1)
        .cloned()
        .ok_or_else(|| Error::VanishingDenominator("epsilon entry (2k, 1) invalid".into()))?;
    Ok((lower, upper))
}

// ---------------------------------------------------------------------------
// exact Padé evaluation (linear-solve route)
// ---------------------------------------------------------------------------

/// Value of the [L/M] Padé approximant of sum c_i x^i at x, by exact
/// rational linear algebra on the Padé equations.
///
/// Needs coefficients c_0..c_{L+M}; fails if the M x M denominator system is
/// singular (degenerate table entry).
pub fn pade_eval_exact(
    coeffs: &[Rational],
    l: usize,
    m: usize,
    x: &Rational,
) -> Result<Rational> {
    if coeffs.len() < l + m + 1 {
        return Err(Error::InvalidParameter(format!(
            "[{l}/{m}] needs {} series coefficients, got {}",
            l + m + 1,
            coeffs.len()
        )));
    }
    let c = |i: i64| -> Rational {
        if i < 0 {
            Rational::new()
        } else {
            coeffs[i as usize].clone()
        }
    };

    // Solve sum_{j=1..M} b_j c_{L+i-j} = -c_{L+i}, i = 1..M (b_0 = 1).
    let mut a = vec![vec![Rational::new(); m + 1]; m];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().take(m).enumerate() {
            *cell = c(l as i64 + i as i64 + 1 - (j as i64 + 1));
        }
        row[m] = -c(l as i64 + i as i64 + 1);
    }
    let b_tail = solve_exact(&mut a)?;
    let mut b = Vec::with_capacity(m + 1);
    b.push(Rational::from(1));
    b.extend(b_tail);

    // numerator coefficients a_i = sum_{j<=min(i,M)} b_j c_{i-j}, i = 0..L
    let mut num = Rational::new();
    let mut xpow = Rational::from(1);
    for i in 0..=l {
        let mut ai = Rational::new();
        for (j, bj) in b.iter().enumerate().take(i.min(m) + 1) {
            ai += bj.clone() * c(i as i64 - j as i64);
        }
        num += ai * &xpow;
        xpow *= x;
    }
    let mut den = Rational::new();
    let mut xpow = Rational::from(1);
    for bj in &b {
        den += bj.clone() * &xpow;
        xpow *= x;
    }
    if den == 0 {
        return Err(Error::SingularSystem);
    }
    Ok(num / den)
}

/// Gaussian elimination with exact rationals on an augmented system.
fn solve_exact(a: &mut [Vec<Rational>]) -> Result<Vec<Rational>> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let cols = a[0].len();
    debug_assert_eq!(cols, n + 1);
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| a[r][col] != 0).ok_or(Error::SingularSystem)?;
        a.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for r in 0..n {
            if r == col {
                continue;
            }
            if a[r][col] == 0 {
                continue;
            }
            let factor = a[r][col].clone() / &pivot;
            for cc in col..cols {
                let sub = factor.clone() * &a[col][cc];
                a[r][cc] -= sub;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for (r, row) in a.iter().enumerate() {
        out.push(row[n].clone() / &row[r]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{partial_sums, SeriesFamily, SumConvention};

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(80).unwrap()
    }

    #[test]
    fn difference_of_quadratic() {
        // g(n) = n^2: second difference is the constant 2
        let g: Vec<Rational> = (0..6).map(|n| Rational::from(n * n)).collect();
        assert_eq!(forward_difference(&g, 2, 0), Rational::from(2));
        assert_eq!(forward_difference(&g, 2, 3), Rational::from(2));
        // k = 0 is the identity
        assert_eq!(forward_difference(&g, 0, 2), Rational::from(4));
    }

    #[test]
    fn difference_of_geometric() {
        // g(n) = t^n: Delta^k g(0) = (-1)^k sum (-1)^j C(k,j) t^j = (1-t)^k... with
        // the sign convention here: (-1)^k (1-t)^k evaluated by the binomial sum
        let t = Rational::from((1, 3));
        let g: Vec<Rational> = (0..6)
            .map(|n| {
                let mut p = Rational::from(1);
                for _ in 0..n {
                    p *= &t;
                }
                p
            })
            .collect();
        let d4 = forward_difference(&g, 4, 0);
        assert_eq!(d4, Rational::from((16, 81)));
    }

    #[test]
    fn difference_composes() {
        // Delta^k = Delta(Delta^{k-1}) exactly in rationals
        let g: Vec<Rational> = (0..12)
            .map(|n: i64| Rational::from((n * n * n - 4 * n + 7, 3)))
            .collect();
        for k in 1..=6usize {
            let direct = forward_difference(&g, k, 2);
            let lower: Vec<Rational> = (0..g.len() - 1)
                .map(|n| g[n + 1].clone() - &g[n])
                .collect();
            let composed = forward_difference(&lower, k - 1, 2);
            assert_eq!(direct, composed);
        }
    }

    #[test]
    fn delta_order_zero_is_partial_sum() {
        let ctx = ctx();
        let z = BigComplex::from_real(ctx.int(1));
        let fs = partial_sums(&SeriesFamily::Euler, &z, 5, SumConvention::Raw, &ctx).unwrap();
        let gamma = Rational::from(1);
        for n in 0..4 {
            let d = weniger_delta(&fs, n, 0, &gamma, &ctx).unwrap();
            assert!((&d - &fs.values[n]).abs() < 1e-70);
        }
    }

    #[test]
    fn delta_accelerates_euler_series() {
        // modest check that the transformation converges toward the known
        // Euler integral value at z = 1
        let ctx = ctx();
        let z = BigComplex::from_real(ctx.int(1));
        let fs = partial_sums(&SeriesFamily::Euler, &z, 32, SumConvention::Raw, &ctx).unwrap();
        let gamma = Rational::from(1);
        let reference = ctx
            .parse("0.596347362323194074341078499369279376074177860152548781573485")
            .unwrap();
        let d20 = weniger_delta(&fs, 0, 20, &gamma, &ctx).unwrap();
        assert!((d20.re.clone() - &reference).abs() < 1e-10);
        let d30 = weniger_delta(&fs, 0, 30, &gamma, &ctx).unwrap();
        assert!((d30.re.clone() - &reference).abs() < 1e-15);
        // errors shrink with order
        assert!(
            (d30.re.clone() - &reference).abs() < (d20.re.clone() - &reference).abs()
        );
    }

    #[test]
    fn epsilon_first_columns() {
        let ctx = ctx();
        let s: Vec<Float> = [1.0, 1.5, 1.75].iter().map(|v| ctx.f64(*v)).collect();
        let table = wynn_epsilon(&s, 1).unwrap();
        // eps_0 = s_n
        assert_eq!(table.entry(0, 1).unwrap().to_f64(), 1.5);
        // geometric series: eps_2^{(0)} = 2 exactly
        let e2 = table.entry(2, 0).unwrap();
        assert!((e2.clone() - 2u32).abs() < 1e-70);
    }

    #[test]
    fn epsilon_exact_on_geometric_rationals() {
        // partial sums of sum (1/2)^m
        let mut s = Vec::new();
        let mut acc = Rational::new();
        let mut term = Rational::from(1);
        for _ in 0..7 {
            acc += &term;
            s.push(acc.clone());
            term /= 2u32;
        }
        let (lower, upper) = pade_staircase(&s, 1).unwrap();
        assert_eq!(lower, Rational::from(2));
        assert_eq!(upper, Rational::from(2));
    }

    #[test]
    fn epsilon_invalid_entries_poison_dependents() {
        // constant sequence: eps_1 divides by zero everywhere
        let s: Vec<Rational> = (0..7).map(|_| Rational::from(5)).collect();
        let table = wynn_epsilon(&s, 2).unwrap();
        assert!(table.entry(1, 0).is_none());
        assert!(table.entry(2, 0).is_none());
        // order 0 stays valid
        assert_eq!(table.entry(0, 3).unwrap(), &Rational::from(5));
    }

    #[test]
    fn pade_exact_reproduces_rational_function() {
        // series of 1/(1-x): [1/1] at x = 1/3 equals 3/2
        let coeffs: Vec<Rational> = (0..3).map(|_| Rational::from(1)).collect();
        let v = pade_eval_exact(&coeffs, 1, 1, &Rational::from((1, 3))).unwrap();
        assert_eq!(v, Rational::from((3, 2)));
    }

    #[test]
    fn pade_exact_exp_value() {
        // exp series: [1/1](1) = (1 + 1/2)/(1 - 1/2) = 3
        let coeffs = vec![
            Rational::from(1),
            Rational::from(1),
            Rational::from((1, 2)),
        ];
        let v = pade_eval_exact(&coeffs, 1, 1, &Rational::from(1)).unwrap();
        assert_eq!(v, Rational::from(3));
    }

    #[test]
    fn pade_exact_detects_singular_system() {
        // c_1 = c_2 = 0 makes the [0/1] system singular... use [1/2] on a
        // series with vanishing tail instead
        let coeffs = vec![
            Rational::from(1),
            Rational::new(),
            Rational::new(),
            Rational::new(),
        ];
        assert!(matches!(
            pade_eval_exact(&coeffs, 1, 2, &Rational::from(1)),
            Err(Error::SingularSystem)
        ));
    }

    #[test]
    fn epsilon_matches_exact_pade_small_case() {
        // truncated exp series, rational x
        let mut coeffs = Vec::new();
        let mut f = Rational::from(1);
        for i in 0..8u32 {
            if i > 0 {
                f /= i;
            }
            coeffs.push(f.clone());
        }
        let x = Rational::from((2, 5));
        let mut s = Vec::new();
        let mut acc = Rational::new();
        let mut xp = Rational::from(1);
        for c in &coeffs {
            acc += c.clone() * &xp;
            s.push(acc.clone());
            xp *= &x;
        }
        for (n, k) in [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (2, 1)] {
            let table = wynn_epsilon(&s, (s.len() - 1 - n) / 2).unwrap();
            if let Some(eps) = table.entry(2 * k, n) {
                let pade = pade_eval_exact(&coeffs, n + k, k, &x).unwrap();
                assert_eq!(eps, &pade, "mismatch at n={n} k={k}");
            }
        }
    }
}
