//! Trigonometric (Laurent) polynomials with exact dyadic-rational coefficients.
//!
//! Every lowpass/highpass mask in this crate is a finite sum
//! `p(xi) = sum_k c_k e^{-ik xi}` whose coefficients are binomials over powers
//! of two. Storing them as exact dyadic rationals removes construction
//! roundoff entirely, so grid tests see evaluation error only.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Exact binomial coefficient. Panics on overflow; all orders used here stay
/// far below the u128 limit.
pub(crate) fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .expect("binomial overflow")
            / (i as u128 + 1);
    }
    acc
}

/// Reduce `xi` to `[-pi, pi]` with a two-term Cody-Waite representation of
/// 2*pi, so periodic mask evaluation at large arguments does not lose the
/// fractional part to cancellation.
pub(crate) fn reduce_to_pi(xi: f64) -> f64 {
    const TWO_PI_HI: f64 = 6.283185307179586;
    const TWO_PI_LO: f64 = 2.4492935982947064e-16;
    let k = (xi / (TWO_PI_HI + TWO_PI_LO)).round();
    if k == 0.0 {
        return xi;
    }
    (xi - k * TWO_PI_HI) - k * TWO_PI_LO
}

/// Exact dyadic rational `num / 2^exp`, kept normalized (odd numerator or
/// zero exponent).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(num: i128, exp: u32) -> Self {
        Dyadic { num, exp }.normalized()
    }

    pub fn from_int(num: i128) -> Self {
        Dyadic { num, exp: 0 }
    }

    fn normalized(mut self) -> Self {
        if self.num == 0 {
            self.exp = 0;
            return self;
        }
        while self.exp > 0 && self.num % 2 == 0 {
            self.num /= 2;
            self.exp -= 1;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Exact conversion: every numerator constructed in this crate is below
    /// 2^53, so the division by a power of two is exact in f64.
    pub fn to_f64(&self) -> f64 {
        debug_assert!(
            self.num.unsigned_abs() < (1u128 << 53),
            "dyadic numerator exceeds exact f64 range"
        );
        self.num as f64 / f64::powi(2.0, self.exp as i32)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let exp = self.exp.max(rhs.exp);
        let a = self
            .num
            .checked_mul(1i128 << (exp - self.exp))
            .expect("dyadic add overflow");
        let b = rhs
            .num
            .checked_mul(1i128 << (exp - rhs.exp))
            .expect("dyadic add overflow");
        Dyadic::new(a.checked_add(b).expect("dyadic add overflow"), exp)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::new(
            self.num.checked_mul(rhs.num).expect("dyadic mul overflow"),
            self.exp + rhs.exp,
        )
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

/// Complex coefficient with exact dyadic real and imaginary parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DyadicC {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl DyadicC {
    pub const ZERO: DyadicC = DyadicC {
        re: Dyadic::ZERO,
        im: Dyadic::ZERO,
    };

    pub fn real(re: Dyadic) -> Self {
        DyadicC {
            re,
            im: Dyadic::ZERO,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(self) -> Self {
        DyadicC {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for DyadicC {
    type Output = DyadicC;
    fn add(self, rhs: DyadicC) -> DyadicC {
        DyadicC {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Mul for DyadicC {
    type Output = DyadicC;
    fn mul(self, rhs: DyadicC) -> DyadicC {
        DyadicC {
            re: self.re * rhs.re + -(self.im * rhs.im),
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Neg for DyadicC {
    type Output = DyadicC;
    fn neg(self) -> DyadicC {
        DyadicC {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Finite Laurent trigonometric polynomial `sum_k c_k e^{-ik xi}`.
///
/// Zero coefficients are never stored, so `support()` is the tight inclusive
/// range of nonzero offsets.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TrigPoly {
    coeffs: BTreeMap<i64, DyadicC>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly::default()
    }

    pub fn constant(c: Dyadic) -> Self {
        let mut p = TrigPoly::zero();
        p.set(0, DyadicC::real(c));
        p
    }

    /// Single term `c e^{-ik xi}`.
    pub fn monomial(k: i64, c: Dyadic) -> Self {
        let mut p = TrigPoly::zero();
        p.set(k, DyadicC::real(c));
        p
    }

    pub fn from_real_terms<I: IntoIterator<Item = (i64, Dyadic)>>(terms: I) -> Self {
        let mut p = TrigPoly::zero();
        for (k, c) in terms {
            p.set(k, DyadicC::real(c) + p.coeff_exact(k));
        }
        p
    }

    fn set(&mut self, k: i64, c: DyadicC) {
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Inclusive `(k_min, k_max)` of the stored support; `None` when zero.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.coeffs.keys().next()?;
        let hi = self.coeffs.keys().next_back()?;
        Some((*lo, *hi))
    }

    pub fn coeff_exact(&self, k: i64) -> DyadicC {
        self.coeffs.get(&k).copied().unwrap_or(DyadicC::ZERO)
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeff_exact(k).to_complex()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, DyadicC)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, *c))
    }

    /// `sum_k c_k e^{-ik xi}`. Terms are accumulated in ascending offset
    /// order so results are bit-reproducible.
    pub fn eval(&self, xi: f64) -> Complex64 {
        assert!(xi.is_finite(), "trig polynomial argument must be finite");
        let mut acc = Complex64::new(0.0, 0.0);
        for (&k, c) in &self.coeffs {
            let (s, co) = (k as f64 * xi).sin_cos();
            // e^{-ik xi} = cos(k xi) - i sin(k xi)
            let e = Complex64::new(co, -s);
            acc += c.to_complex() * e;
        }
        acc
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.set(k, out.coeff_exact(k) + c);
        }
        out
    }

    /// Exact convolution product.
    pub fn mul(&self, other: &TrigPoly) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (ka, ca) in self.iter() {
            for (kb, cb) in other.iter() {
                let k = ka + kb;
                out.set(k, out.coeff_exact(k) + ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: Dyadic) -> TrigPoly {
        let mut out = TrigPoly::zero();
        let c = DyadicC::real(c);
        for (k, v) in self.iter() {
            out.set(k, v * c);
        }
        out
    }

    pub fn powi(&self, n: u32) -> TrigPoly {
        let mut out = TrigPoly::constant(Dyadic::ONE);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Coefficient dump as CSV rows `k,re,im`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,re,im\n");
        for (k, c) in self.iter() {
            s.push_str(&format!("{},{:e},{:e}\n", k, c.re.to_f64(), c.im.to_f64()));
        }
        s
    }
}

/// Mask of the B-spline of order `N`: `2^-N (1 + e^{-i xi})^N`, coefficients
/// `2^-N binom(N,k)` at offsets `k = 0..N`.
pub fn bspline_mask(n: u32) -> Result<TrigPoly> {
    if n == 0 {
        return Err(Error::InvalidOrder("B-spline order must be >= 1".into()));
    }
    Ok(TrigPoly::from_real_terms((0..=n).map(|k| {
        (k as i64, Dyadic::new(binomial(n, k) as i128, n))
    })))
}

/// Highpass mask `b` with `b^(xi) = e^{-i xi} conj(a^(xi + pi))`, realized at
/// coefficient level as `b_k = conj(a_{1-k}) (-1)^{1-k}`.
pub fn highpass_from_lowpass(a: &TrigPoly) -> TrigPoly {
    debug_assert!(!a.is_zero(), "highpass of an empty mask");
    let mut out = TrigPoly::zero();
    for (m, c) in a.iter() {
        let k = 1 - m;
        let v = if m.rem_euclid(2) == 1 { -c.conj() } else { c.conj() };
        out.set(k, v);
    }
    out
}
