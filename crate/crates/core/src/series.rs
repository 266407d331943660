//! Truncated formal power series with exact rational coefficients.
//!
//! Coefficients are stored in ordinary-series form: index `n` holds the
//! coefficient of `x^n`, never of `x^n/n!`. Exponential-generating-function
//! factorials are applied only at the boundaries that need them (matrix
//! columns, reported sequences), which keeps products and compositions free
//! of factorial bookkeeping.
//!
//! Truncation order is explicit everywhere. Combining series of different
//! orders is an error, not a silent re-truncation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::restriction::RestrictionSet;

/// Weight discipline attached to the blocks counted by a restricted number:
/// subsets (`a_n = 1`), cycles (`a_n = (n−1)!`), or lists (`a_n = n!`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    Set,
    Cycle,
    List,
}

impl SequenceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SequenceKind::Set => "set",
            SequenceKind::Cycle => "cycle",
            SequenceKind::List => "list",
        }
    }

    /// The sequence value `a_m` for a block of size `m` (before any
    /// restriction-set indicator is applied).
    pub fn weight(&self, m: u64) -> BigInt {
        match self {
            SequenceKind::Set => BigInt::one(),
            SequenceKind::Cycle => factorial(m.saturating_sub(1)),
            SequenceKind::List => factorial(m),
        }
    }
}

pub(crate) fn factorial(n: u64) -> BigInt {
    let mut out = BigInt::one();
    for i in 2..=n {
        out *= i;
    }
    out
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A power series truncated at an explicit order `N`, holding exact rational
/// coefficients for `x^0 … x^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    /// Builds a series from coefficients `c_0 … c_N`; the order is `len − 1`.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a series needs at least a constant term".into()));
        }
        Ok(PowerSeries { coeffs })
    }

    /// The monomial `c·x^k` at the given order.
    pub fn monomial(order: usize, k: usize, c: BigRational) -> Self {
        let mut s = PowerSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity series `x`.
    pub fn identity(order: usize) -> Self {
        PowerSeries::monomial(order, 1, BigRational::one())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The EGF coefficient `n!·c_n`.
    pub fn egf_coeff(&self, n: usize) -> BigRational {
        self.coeff(n) * BigRational::from_integer(factorial(n as u64))
    }

    /// `min{n : c_n ≠ 0}`, or `None` for the zero series.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Explicitly re-truncates to a (usually smaller) order.
    pub fn truncated(&self, order: usize) -> PowerSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    fn require_same_order(&self, other: &PowerSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.require_same_order(other)?;
        Ok(PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order; exact.
    pub fn multiply(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.require_same_order(other)?;
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `f(g(x))` truncated at the common order, by Horner evaluation over
    /// truncated polynomials. Requires `ord(g) ≥ 1`.
    pub fn compose(&self, g: &PowerSeries) -> Result<PowerSeries> {
        self.require_same_order(g)?;
        if !g.coeff(0).is_zero() {
            return Err(Error::Domain(
                "compose requires the inner series to have zero constant term".into(),
            ));
        }
        let n = self.order();
        let mut acc = PowerSeries::zero(n);
        for i in (0..=n).rev() {
            acc = acc.multiply(g)?;
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Compositional inverse: the `g` with `f(g(x)) = g(f(x)) = x` on the
    /// truncation. Requires `ord(f) = 1`.
    ///
    /// Solved by the coefficient recursion obtained from `[x^n] f(g(x)) = 0`
    /// for `n ≥ 2`: only powers `g^k` with `k ≥ 2` and previously determined
    /// coefficients contribute, so each `g_n` is forced. The powers are
    /// maintained incrementally. [`PowerSeries::revert_lagrange`] computes
    /// the same series by an unrelated formula and is used as a cross-check
    /// in the test suites.
    pub fn revert(&self) -> Result<PowerSeries> {
        let n_max = self.order();
        if self.ord() != Some(1) {
            return Err(Error::Domain(
                "reversion requires ord(f) = 1 with a nonzero linear coefficient".into(),
            ));
        }
        let c1 = self.coeff(1);
        let k_max = (1..=n_max)
            .rev()
            .find(|&k| !self.coeffs[k].is_zero())
            .expect("ord = 1 implies a nonzero coefficient");

        let mut g = vec![BigRational::zero(); n_max + 1];
        g[1] = c1.recip();
        if k_max == 1 {
            return Ok(PowerSeries { coeffs: g });
        }

        // powers[k] mirrors g^k for the coefficients of g found so far;
        // powers[0] = 1 and powers[1] = g.
        let mut powers: Vec<Vec<BigRational>> =
            vec![vec![BigRational::zero(); n_max + 1]; k_max + 1];
        powers[0][0] = BigRational::one();
        for k in 1..=k_max {
            if k <= n_max {
                powers[k][k] = g[1].pow(k as i32);
            }
        }

        for n in 2..=n_max {
            let mut s = BigRational::zero();
            for k in 2..=k_max.min(n) {
                if !self.coeffs[k].is_zero() && !powers[k][n].is_zero() {
                    s += &self.coeffs[k] * &powers[k][n];
                }
            }
            let gn = -(s / &c1);
            if gn.is_zero() || n == n_max {
                g[n] = gn;
                continue;
            }
            // Fold the new term g_n·x^n into every maintained power:
            // (g + t)^k = Σ_j C(k,j) t^j g^(k−j), reading only powers below k,
            // which still hold the pre-update values while k descends.
            for k in (2..=k_max).rev() {
                let mut scale = BigRational::one();
                for j in 1..=k {
                    let shift = j * n;
                    if shift > n_max {
                        break;
                    }
                    scale *= &gn;
                    let factor =
                        BigRational::from_integer(binomial(k as u64, j as u64)) * &scale;
                    for i in 0..=(n_max - shift) {
                        if !powers[k - j][i].is_zero() {
                            let add = &factor * &powers[k - j][i];
                            powers[k][i + shift] += add;
                        }
                    }
                }
            }
            powers[1][n] = gn.clone();
            g[n] = gn;
        }
        Ok(PowerSeries { coeffs: g })
    }

    /// Compositional inverse by the Lagrange inversion formula:
    /// the coefficient of `x^n` in `f⁻¹` is `(1/n)·[x^{n−1}] (x/f(x))^n`.
    ///
    /// Kept deliberately independent of [`PowerSeries::revert`].
    pub fn revert_lagrange(&self) -> Result<PowerSeries> {
        let n_max = self.order();
        if self.ord() != Some(1) {
            return Err(Error::Domain(
                "reversion requires ord(f) = 1 with a nonzero linear coefficient".into(),
            ));
        }
        let q = self.x_over_f()?;
        let mut g = vec![BigRational::zero(); n_max + 1];
        let mut q_pow = q.clone();
        for n in 1..=n_max {
            g[n] = q_pow.coeff(n - 1) / rat(n as i64);
            if n < n_max {
                q_pow = q_pow.multiply(&q)?;
            }
        }
        Ok(PowerSeries { coeffs: g })
    }

    /// The series `x/f(x)`, truncated at order `N − 1`. Requires
    /// `ord(f) = 1`; the constant term of the result is `1/c_1`.
    pub fn x_over_f(&self) -> Result<PowerSeries> {
        if self.ord() != Some(1) {
            return Err(Error::Domain("x/f(x) requires ord(f) = 1".into()));
        }
        let m = self.order() - 1;
        // h = f/x, then invert h by the standard reciprocal recursion.
        let h: Vec<BigRational> = self.coeffs[1..].to_vec();
        let mut r = vec![BigRational::zero(); m + 1];
        r[0] = h[0].recip();
        for n in 1..=m {
            let mut s = BigRational::zero();
            for i in 1..=n {
                if !h[i].is_zero() && !r[n - i].is_zero() {
                    s += &h[i] * &r[n - i];
                }
            }
            r[n] = -(s / &h[0]);
        }
        Ok(PowerSeries { coeffs: r })
    }

    /// Alternation test. For `d = 1` the signs must follow `(−1)^{n−a}` from
    /// the anchor `a` (the order of the series, which must be 0 or 1, with a
    /// positive anchor coefficient); zero coefficients are allowed. For
    /// `d > 1` the series must be supported on `{1, d+1, 2d+1, …}` with
    /// `(−1)^k c_{kd+1} ≥ 0`.
    pub fn is_alternating(&self, d: u64) -> Result<bool> {
        if d == 1 {
            let anchor = if !self.coeff(0).is_zero() { 0 } else { 1 };
            if !self.coeff(anchor).is_positive() {
                return Err(Error::Domain(
                    "alternation requires a positive coefficient at the anchor (x^0 or x^1)"
                        .into(),
                ));
            }
            for n in anchor..=self.order() {
                let c = &self.coeffs[n];
                if (n - anchor) % 2 == 0 {
                    if c.is_negative() {
                        return Ok(false);
                    }
                } else if c.is_positive() {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        if !self.coeff(0).is_zero() || !self.coeff(1).is_positive() {
            return Err(Error::Domain(
                "alternation along a progression requires c_0 = 0 and c_1 > 0".into(),
            ));
        }
        for n in 1..=self.order() {
            let c = &self.coeffs[n];
            if (n - 1) % d as usize != 0 {
                if !c.is_zero() {
                    return Ok(false);
                }
                continue;
            }
            let k = (n - 1) / d as usize;
            if k % 2 == 0 {
                if c.is_negative() {
                    return Ok(false);
                }
            } else if c.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// JSON form `{ "order": N, "coeffs": ["p/q", …] }`, optionally with the
    /// EGF view `"egf": ["n!·c_n", …]`.
    pub fn to_json(&self, with_egf: bool) -> serde_json::Value {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut value = json!({ "order": self.order(), "coeffs": coeffs });
        if with_egf {
            let egf: Vec<String> = (0..=self.order())
                .map(|n| self.egf_coeff(n).to_string())
                .collect();
            value["egf"] = json!(egf);
        }
        value
    }
}

/// The generating function attached to a restriction set:
/// `Σ_{n ∈ R, s_d(n) ≤ N} w(s_d(n))·x^{s_d(n)}/s_d(n)!` where `w(m)` is `1`,
/// `(m−1)!`, or `m!` for sets, cycles and lists — i.e. the EGF of the kind's
/// block weights supported on `R(d)`, stored as ordinary coefficients.
///
/// Requires `1 ∈ R` so that the series has order 1 (reversion exists).
pub fn series_from_restriction(
    set: &RestrictionSet,
    kind: SequenceKind,
    d: u64,
    order: usize,
) -> Result<PowerSeries> {
    if !set.contains(1) {
        return Err(Error::Domain(
            "series_from_restriction requires 1 ∈ R".into(),
        ));
    }
    let mut s = PowerSeries::zero(order);
    for m in set.stretch(d).members_up_to(order as u64) {
        let idx = m as usize;
        s.coeffs[idx] = match kind {
            SequenceKind::Set => BigRational::new(BigInt::one(), factorial(m)),
            SequenceKind::Cycle => BigRational::new(BigInt::one(), BigInt::from(m)),
            SequenceKind::List => BigRational::one(),
        };
    }
    Ok(s)
}

/// The hyperbolic function of order `d` of the first kind,
/// `H_{d,1}(x) = Σ_{n ≥ 1} x^{d(n−1)+1}/(d(n−1)+1)!`, truncated at `order`.
/// `H_{1,1} = e^x − 1` and `H_{2,1} = sinh x`.
pub fn hyperbolic_first_kind(d: u64, order: usize) -> PowerSeries {
    assert!(d >= 1);
    let mut s = PowerSeries::zero(order);
    let mut m = 1u64;
    while m as usize <= order {
        s.coeffs[m as usize] = BigRational::new(BigInt::one(), factorial(m));
        m += d;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::restriction::parse_restriction;

    fn nat() -> RestrictionSet {
        RestrictionSet::all()
    }

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    /// (2n−3)!! with the empty-product convention for n = 1.
    fn odd_double_factorial(n: i64) -> BigInt {
        let mut out = BigInt::one();
        let mut m = 2 * n - 3;
        while m >= 2 {
            out *= m;
            m -= 2;
        }
        out
    }

    #[test]
    fn restriction_series_examples() {
        let s = series_from_restriction(&nat(), SequenceKind::Set, 1, 5).unwrap();
        for n in 1..=5u64 {
            assert_eq!(s.coeff(n as usize), BigRational::new(BigInt::one(), factorial(n)));
        }
        assert!(s.coeff(0).is_zero());

        let s = series_from_restriction(&nat(), SequenceKind::Cycle, 1, 5).unwrap();
        for n in 1..=5 {
            assert_eq!(s.coeff(n), ratio(1, n as i64));
        }

        // Stretching ℕ by 2 under the set kind gives sinh.
        let s = series_from_restriction(&nat(), SequenceKind::Set, 2, 5).unwrap();
        assert_eq!(s.coeff(1), ratio(1, 1));
        assert!(s.coeff(2).is_zero());
        assert_eq!(s.coeff(3), ratio(1, 6));
        assert!(s.coeff(4).is_zero());
        assert_eq!(s.coeff(5), ratio(1, 120));

        let err = series_from_restriction(&parse_restriction("2-4").unwrap(), SequenceKind::Set, 1, 5);
        assert!(err.is_err());
    }

    #[test]
    fn multiply_examples() {
        let x = PowerSeries::identity(4);
        let x2 = x.multiply(&x).unwrap();
        assert_eq!(x2, PowerSeries::monomial(4, 2, ratio(1, 1)));

        let one_plus = PowerSeries::from_coeffs(vec![ratio(1, 1), ratio(1, 1), ratio(0, 1)]).unwrap();
        let one_minus = PowerSeries::from_coeffs(vec![ratio(1, 1), ratio(-1, 1), ratio(0, 1)]).unwrap();
        let p = one_plus.multiply(&one_minus).unwrap();
        assert_eq!(p.coeff(0), ratio(1, 1));
        assert!(p.coeff(1).is_zero());
        assert_eq!(p.coeff(2), ratio(-1, 1));

        // exp(x)·exp(−x) = 1 on the truncation.
        let exp = PowerSeries::from_coeffs(
            (0..=4).map(|n| BigRational::new(BigInt::one(), factorial(n))).collect(),
        )
        .unwrap();
        let exp_neg = PowerSeries::from_coeffs(
            (0..=4i64)
                .map(|n| {
                    BigRational::new(BigInt::from((-1i64).pow(n as u32)), factorial(n as u64))
                })
                .collect(),
        )
        .unwrap();
        let p = exp.multiply(&exp_neg).unwrap();
        assert_eq!(p.coeff(0), ratio(1, 1));
        for n in 1..=4 {
            assert!(p.coeff(n).is_zero(), "coefficient {n} should vanish");
        }

        assert!(matches!(
            PowerSeries::zero(3).multiply(&PowerSeries::zero(4)),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        // f = x², g = x + x² at order 3 → x² + 2x³.
        let f = PowerSeries::monomial(3, 2, ratio(1, 1));
        let g = PowerSeries::from_coeffs(vec![ratio(0, 1), ratio(1, 1), ratio(1, 1), ratio(0, 1)])
            .unwrap();
        let h = f.compose(&g).unwrap();
        assert!(h.coeff(0).is_zero() && h.coeff(1).is_zero());
        assert_eq!(h.coeff(2), ratio(1, 1));
        assert_eq!(h.coeff(3), ratio(2, 1));

        // g = x is the identity element.
        let f = series_from_restriction(&nat(), SequenceKind::Cycle, 1, 6).unwrap();
        assert_eq!(f.compose(&PowerSeries::identity(6)).unwrap(), f);

        // log(1+x) ∘ (e^x − 1) = x.
        let log1p = PowerSeries::from_coeffs(
            std::iter::once(ratio(0, 1))
                .chain((1..=6i64).map(|n| ratio(if n % 2 == 1 { 1 } else { -1 }, n)))
                .collect(),
        )
        .unwrap();
        let expm1 = series_from_restriction(&nat(), SequenceKind::Set, 1, 6).unwrap();
        assert_eq!(log1p.compose(&expm1).unwrap(), PowerSeries::identity(6));

        // Nonzero constant term in the inner series is rejected.
        let bad = PowerSeries::from_coeffs(vec![ratio(1, 1); 7]).unwrap();
        assert!(log1p.compose(&bad).is_err());
    }

    #[test]
    fn revert_exp_minus_one_is_log() {
        let n = 9;
        let f = series_from_restriction(&nat(), SequenceKind::Set, 1, n).unwrap();
        let g = f.revert().unwrap();
        for m in 1..=n {
            let expected = BigRational::from_integer(
                BigInt::from(if m % 2 == 1 { 1 } else { -1 }) * factorial(m as u64 - 1),
            );
            assert_eq!(g.egf_coeff(m), expected, "EGF coefficient at {m}");
        }
        assert_eq!(f.compose(&g).unwrap(), PowerSeries::identity(n));
        assert_eq!(g.compose(&f).unwrap(), PowerSeries::identity(n));
        assert_eq!(g, f.revert_lagrange().unwrap());
    }

    #[test]
    fn revert_set_kind_binary_gives_double_factorials() {
        // f = x + x²/2 reverses to EGF coefficients (−1)^{n−1}(2n−3)!!.
        let n = 10;
        let f = series_from_restriction(
            &parse_restriction("1,2").unwrap(),
            SequenceKind::Set,
            1,
            n,
        )
        .unwrap();
        let g = f.revert().unwrap();
        for m in 1..=n as i64 {
            let mut expected = BigRational::from_integer(odd_double_factorial(m));
            if m % 2 == 0 {
                expected = -expected;
            }
            assert_eq!(g.egf_coeff(m as usize), expected);
        }
        assert_eq!(g, f.revert_lagrange().unwrap());
    }

    #[test]
    fn revert_list_kind_binary_gives_quartered_catalan() {
        // g = x + x² reverses to EGF coefficients (−1)^{n−1}(2n−2)!/((n−1)!n!).
        let n = 10;
        let f = series_from_restriction(
            &parse_restriction("1,2").unwrap(),
            SequenceKind::List,
            1,
            n,
        )
        .unwrap();
        let g = f.revert().unwrap();
        for m in 1..=n as u64 {
            let mut expected = BigRational::new(
                factorial(2 * m - 2),
                factorial(m - 1) * factorial(m),
            ) * BigRational::from_integer(factorial(m));
            if m % 2 == 0 {
                expected = -expected;
            }
            assert_eq!(g.egf_coeff(m as usize), expected);
        }
    }

    #[test]
    fn revert_rejects_wrong_order() {
        let no_linear = PowerSeries::monomial(4, 2, ratio(1, 1));
        assert!(no_linear.revert().is_err());
        let constant = PowerSeries::from_coeffs(vec![ratio(1, 1), ratio(1, 1)]).unwrap();
        assert!(constant.revert().is_err());
    }

    #[test]
    fn hyperbolic_examples() {
        assert_eq!(
            hyperbolic_first_kind(1, 6),
            series_from_restriction(&nat(), SequenceKind::Set, 1, 6).unwrap()
        );
        assert_eq!(
            hyperbolic_first_kind(2, 7),
            series_from_restriction(&nat(), SequenceKind::Set, 2, 7).unwrap()
        );
        let h = hyperbolic_first_kind(3, 7);
        assert_eq!(h.coeff(1), ratio(1, 1));
        assert_eq!(h.coeff(4), ratio(1, 24));
        assert_eq!(h.coeff(7), ratio(1, 5040));
        for n in [0usize, 2, 3, 5, 6] {
            assert!(h.coeff(n).is_zero());
        }
    }

    #[test]
    fn alternation_examples() {
        let n = 12;
        let expm1 = series_from_restriction(&nat(), SequenceKind::Set, 1, n).unwrap();
        let log1p = expm1.revert().unwrap();
        assert!(log1p.is_alternating(1).unwrap());
        assert!(!expm1.is_alternating(1).unwrap());

        // revert(sinh) alternates along {1, 3, 5, …} with EGF magnitudes
        // 1, 1, 9, 225, 11025.
        let sinh = hyperbolic_first_kind(2, 9);
        let g = sinh.revert().unwrap();
        assert!(g.is_alternating(2).unwrap());
        let expected = [1i64, 1, 9, 225, 11025];
        for (k, &mag) in expected.iter().enumerate() {
            let m = 2 * k + 1;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(g.egf_coeff(m), ratio(sign * mag, 1), "EGF at {m}");
        }
    }

    #[test]
    fn reverted_hyperbolic_is_supported_on_progression() {
        for d in 1..=4u64 {
            let h = hyperbolic_first_kind(d, 25);
            let g = h.revert().unwrap();
            for n in 1..=25usize {
                if (n - 1) % d as usize != 0 {
                    assert!(g.coeff(n).is_zero(), "d={d} n={n}");
                }
            }
        }
    }

    #[test]
    fn x_over_f_examples() {
        // x/(x + x²) is the geometric series 1 − x + x² − …
        let f = series_from_restriction(
            &parse_restriction("1,2").unwrap(),
            SequenceKind::List,
            1,
            8,
        )
        .unwrap();
        let q = f.x_over_f().unwrap();
        assert_eq!(q.order(), 7);
        for n in 0..=7i64 {
            assert_eq!(q.coeff(n as usize), ratio(if n % 2 == 0 { 1 } else { -1 }, 1));
        }
        assert!(q.is_alternating(1).unwrap());

        // x/x = 1.
        let f = PowerSeries::identity(3);
        let q = f.x_over_f().unwrap();
        assert_eq!(q.coeff(0), ratio(1, 1));
        assert!(q.coeff(1).is_zero() && q.coeff(2).is_zero());

        // r = 3 blockwise coefficients of 1/((1+x)(1+x³)).
        let f = series_from_restriction(
            &parse_restriction("1,2,4,5").unwrap(),
            SequenceKind::List,
            1,
            31,
        )
        .unwrap();
        let q = f.x_over_f().unwrap();
        for k in 1i64..=10 {
            for j in 0i64..3 {
                let idx = ((k - 1) * 3 + j) as usize;
                let sign = if (k - 1 + j) % 2 == 0 { 1 } else { -1 };
                assert_eq!(q.coeff(idx), ratio(sign * k, 1), "k={k} j={j}");
            }
        }
    }

    #[test]
    fn lagrange_consistency_on_a_dense_series() {
        // n·g_n = [x^{n−1}](x/f)^n for every n up to the order.
        let f = PowerSeries::from_coeffs(vec![
            ratio(0, 1),
            ratio(1, 1),
            ratio(-1, 2),
            ratio(1, 3),
            ratio(2, 1),
            ratio(0, 1),
            ratio(-5, 7),
        ])
        .unwrap();
        let g = f.revert().unwrap();
        let q = f.x_over_f().unwrap();
        let mut q_pow = q.clone();
        for n in 1..=6usize {
            assert_eq!(g.coeff(n) * rat(n as i64), q_pow.coeff(n - 1), "n = {n}");
            if n < 6 {
                q_pow = q_pow.multiply(&q).unwrap();
            }
        }
        assert_eq!(g, f.revert_lagrange().unwrap());
        assert_eq!(f.compose(&g).unwrap(), PowerSeries::identity(6));
        assert_eq!(g.compose(&f).unwrap(), PowerSeries::identity(6));
    }

    #[test]
    fn json_emission() {
        let f = series_from_restriction(&nat(), SequenceKind::Set, 1, 3).unwrap();
        let v = f.to_json(true);
        assert_eq!(v["order"], 3);
        assert_eq!(v["coeffs"][2], "1/2");
        assert_eq!(v["egf"][3], "1");
    }
}
