//! Pseudo-spline masks of type II and the explicit constants attached to
//! them: the Taylor-tail bound C1, the distribution-factor bound C2, the
//! highpass envelope coefficient Cb, the product-decay data (q1, q2, kappa)
//! and the two-sided envelope constants C3, C4.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trigpoly::{binomial, reduce_to_pi, Dyadic, TrigPoly};

/// Order `(N, l)` of a pseudo spline of type II; `l = 0` is the B-spline of
/// order 2N, `l = N-1` the interpolatory case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MaskOrder {
    n: u32,
    l: u32,
}

impl MaskOrder {
    /// `l < N` required; `N <= 32` keeps every binomial exactly representable
    /// in double precision.
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n == 0 || n > 32 {
            return Err(Error::InvalidOrder(format!("N = {n} outside 1..=32")));
        }
        if l >= n {
            return Err(Error::InvalidOrder(format!("l = {l} must be < N = {n}")));
        }
        Ok(MaskOrder { n, l })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }
}

impl std::fmt::Display for MaskOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.n, self.l)
    }
}

/// Every explicit constant derived from one mask order.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundConstants {
    /// `sum_{j=l+1}^{N+l} binom(N+l,j) / 2^{2l+2}`: coefficient of the
    /// lowpass Taylor tail `1 - a^(xi) <= C1 |xi|^{2l+2}`.
    pub c1: f64,
    /// `sum_{j=1}^{l} binom(N-1+j,j) / 4`: growth bound `|L(xi)| <= 1 + C2 xi^2`.
    pub c2: f64,
    /// `sum_{j=0}^{l} binom(N+l,j) / 2^{2N}`: highpass envelope
    /// `|b^(xi)| <= min(1, Cb |xi|^{2N})`.
    pub cb: f64,
    /// `P_{N,l}(1)`.
    pub q1: f64,
    /// `P_{N,l}(3/4)`.
    pub q2: f64,
    /// `log2(q2)`: regularity loss of the distribution factor.
    pub kappa: f64,
    /// `2N - kappa`: Fourier decay exponent.
    pub beta: f64,
    /// Product-splitting parameter of the upper envelope.
    pub j: u32,
    /// `4^N exp(C2/3) q1 q2^{J-1}`. Overflows to `inf` for extreme orders;
    /// `upper_envelope` evaluates the bound in log space and stays finite.
    pub c3: f64,
    /// Lower window constant: `|phi^| >= C4` on `[-K, K]`.
    pub c4: f64,
    /// Tail split index used in C4: smallest k >= 1 with
    /// `2^-k C1 K^{2l+2} < 1/2`.
    pub k0: u32,
}

impl BoundConstants {
    /// Exponent of the decay envelope `C3 |xi|^expo`.
    pub fn envelope_exponent(&self) -> f64 {
        -self.beta + self.q1.log2() / (self.j as f64 - 1.0)
    }

    /// `min(1, C3 |xi|^expo)` evaluated in log space, so orders whose C3
    /// overflows f64 still produce the correct (vacuous, = 1) bound.
    pub fn upper_envelope(&self, xi_abs: f64) -> f64 {
        if xi_abs <= 0.0 {
            return 1.0;
        }
        let two_n = self.beta + self.kappa;
        let ln_c3 = two_n * 2.0f64.ln() + self.c2 / 3.0
            + self.q1.ln()
            + (self.j as f64 - 1.0) * self.q2.ln();
        let ln_bound = ln_c3 + self.envelope_exponent() * xi_abs.ln();
        if ln_bound >= 0.0 {
            1.0
        } else {
            ln_bound.exp()
        }
    }
}

/// `P_{N,l}(x) = sum_{j=0}^{l} binom(N-1+j, j) x^j` for `x` in `[0,1]`.
pub fn p_poly(order: MaskOrder, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain(format!("p_poly argument {x} outside [0,1]")));
    }
    Ok(p_poly_unchecked(order, x))
}

fn p_poly_unchecked(order: MaskOrder, x: f64) -> f64 {
    // Horner, highest degree first.
    let mut acc = 0.0;
    for j in (0..=order.l).rev() {
        acc = acc * x + binomial(order.n - 1 + j, j) as f64;
    }
    acc
}

/// Type-II mask value `cos^{2N}(xi/2) P_{N,l}(sin^2(xi/2))`, in `[0,1]`.
pub fn mask_eval(order: MaskOrder, xi: f64) -> f64 {
    assert!(xi.is_finite(), "mask argument must be finite");
    let r = reduce_to_pi(xi);
    let (s, c) = (r / 2.0).sin_cos();
    let c2 = c * c;
    let v = c2.powi(order.n as i32) * p_poly_unchecked(order, s * s);
    v.clamp(0.0, 1.0)
}

/// Residual of the binomial identity
/// `P_{N,l}(sin^2) = sum_{j=0}^{l} binom(N+l,j) sin^{2j} cos^{2(l-j)}`.
pub fn identity_residual(order: MaskOrder, xi: f64) -> f64 {
    assert!(xi.is_finite());
    let r = reduce_to_pi(xi);
    let (sn, cs) = (r / 2.0).sin_cos();
    let (s2, c2) = (sn * sn, cs * cs);
    let lhs = p_poly_unchecked(order, s2);
    let mut rhs = 0.0;
    for j in 0..=order.l {
        rhs += binomial(order.n + order.l, j) as f64
            * s2.powi(j as i32)
            * c2.powi((order.l - j) as i32);
    }
    (lhs - rhs).abs()
}

/// `|L(xi)| = P_{N,l}(sin^2(xi/2))`, the distribution factor modulus.
pub fn distribution_factor(order: MaskOrder, xi: f64) -> f64 {
    debug_assert!(xi.abs() <= std::f64::consts::PI + 1e-12);
    let s = (xi / 2.0).sin();
    p_poly_unchecked(order, (s * s).min(1.0))
}

/// Lower window constant: `(C4, k0)` with `|phi^(xi)| >= C4` on `[-K, K]`.
///
/// `C4 = prod_{k=1}^{k0} a^(2^-k K) * exp(-C1 2^{-k0+1} K^{2l+2})` where k0
/// is the smallest index making each remaining tail term below 1/2.
pub fn window_floor(order: MaskOrder, k_window: f64) -> Result<(f64, u32)> {
    if !(k_window > 0.0 && k_window <= std::f64::consts::PI) {
        return Err(Error::OutOfDomain(format!(
            "window bound {k_window} outside (0, pi]"
        )));
    }
    let c1 = c1_of(order);
    let pow = (2 * order.l + 2) as i32;
    let kr = k_window.powi(pow);
    let mut k0: u32 = 1;
    while 2.0f64.powi(-(k0 as i32)) * c1 * kr >= 0.5 {
        k0 += 1;
        assert!(k0 < 200, "tail split index diverged");
    }
    let mut prod = 1.0;
    for k in 1..=k0 {
        prod *= mask_eval(order, 2.0f64.powi(-(k as i32)) * k_window);
    }
    Ok((prod * (-c1 * 2.0f64.powi(1 - k0 as i32) * kr).exp(), k0))
}

fn c1_of(order: MaskOrder) -> f64 {
    let (n, l) = (order.n, order.l);
    let sum: u128 = (l + 1..=n + l).map(|j| binomial(n + l, j)).sum();
    sum as f64 / f64::powi(2.0, (2 * l + 2) as i32)
}

/// All explicit constants for one order, window `[-K, K]`, splitting
/// parameter `J >= 2`.
pub fn constants(order: MaskOrder, j: u32, k_window: f64) -> Result<BoundConstants> {
    if j < 2 {
        return Err(Error::OutOfDomain(format!("J = {j} must be >= 2")));
    }
    if !(k_window > 0.0 && k_window <= std::f64::consts::PI) {
        return Err(Error::OutOfDomain(format!(
            "window bound {k_window} outside (0, pi]"
        )));
    }
    let (n, l) = (order.n, order.l);
    let c1 = c1_of(order);
    let c2 = (1..=l).map(|jj| binomial(n - 1 + jj, jj)).sum::<u128>() as f64 / 4.0;
    let cb = (0..=l).map(|jj| binomial(n + l, jj)).sum::<u128>() as f64
        / f64::powi(2.0, (2 * n) as i32);
    let q1 = p_poly_unchecked(order, 1.0);
    let q2 = p_poly_unchecked(order, 0.75);
    let kappa = q2.log2();
    let beta = 2.0 * n as f64 - kappa;
    // exp() saturates to inf for extreme orders; the log-space accessor on
    // BoundConstants is the one used for bound evaluation.
    let c3 = (n as f64 * 4.0f64.ln() + c2 / 3.0 + q1.ln() + (j as f64 - 1.0) * q2.ln()).exp();
    let (c4, k0) = window_floor(order, k_window)?;
    Ok(BoundConstants {
        c1,
        c2,
        cb,
        q1,
        q2,
        kappa,
        beta,
        j,
        c3,
        c4,
        k0,
    })
}

/// Fourier decay rate `beta = 2N - log2 P_{N,l}(3/4)`.
pub fn decay_rate(order: MaskOrder) -> f64 {
    2.0 * order.n() as f64 - p_poly_unchecked(order, 0.75).log2()
}

/// Decay rates for every order `2 <= N <= 9`, `0 <= l < N` (44 rows), in
/// `(N, l, beta)` form, N-major.
pub fn decay_table() -> Vec<(u32, u32, f64)> {
    let mut rows = Vec::with_capacity(44);
    for n in 2..=9 {
        for l in 0..n {
            let order = MaskOrder::new(n, l).expect("tabulated order");
            rows.push((n, l, decay_rate(order)));
        }
    }
    rows
}

/// The mask as an exact trig polynomial, via
/// `cos^2(xi/2) = (2 + e^{i xi} + e^{-i xi})/4` and
/// `sin^2(xi/2) = (2 - e^{i xi} - e^{-i xi})/4`.
pub fn expanded_mask(order: MaskOrder) -> TrigPoly {
    let quarter = Dyadic::new(1, 2);
    let half = Dyadic::new(1, 1);
    let cos2 = TrigPoly::from_real_terms([(-1, quarter), (0, half), (1, quarter)]);
    let sin2 = TrigPoly::from_real_terms([(-1, -quarter), (0, half), (1, -quarter)]);
    let mut p = TrigPoly::zero();
    let mut sin_pow = TrigPoly::constant(Dyadic::ONE);
    for j in 0..=order.l {
        let b = Dyadic::from_int(binomial(order.n - 1 + j, j) as i128);
        p = p.add(&sin_pow.scale(b));
        sin_pow = sin_pow.mul(&sin2);
    }
    cos2.powi(order.n).mul(&p)
}
