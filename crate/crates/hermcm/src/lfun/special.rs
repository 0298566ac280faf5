//! Hurwitz zeta with its s-derivative, complex log-gamma and digamma.

use crate::C64;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// First-order dual number v + d eps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn new(v: f64, d: f64) -> Self {
        Dual { v, d }
    }
    pub fn cst(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }
    pub fn var(v: f64) -> Self {
        Dual { v, d: 1.0 }
    }
    pub fn exp(self) -> Self {
        let e = self.v.exp();
        Dual::new(e, e * self.d)
    }
    /// a^self for a constant a > 0.
    pub fn pow_base(a: f64, s: Dual) -> Dual {
        (s * Dual::cst(a.ln())).exp()
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.v + o.v, self.d + o.d)
    }
}
impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.v - o.v, self.d - o.d)
    }
}
impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual::new(self.v * o.v, self.v * o.d + self.d * o.v)
    }
}
impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual::new(self.v / o.v, (self.d * o.v - self.v * o.d) / (o.v * o.v))
    }
}
impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.v, -self.d)
    }
}

/// B_{2j} for j = 1..=12.
const BERN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// zeta(s, x) and d/ds zeta(s, x) for real s != 1, x > 0 (Euler-Maclaurin).
pub fn hurwitz(s: f64, x: f64) -> Dual {
    assert!(x > 0.0, "Hurwitz zeta needs x > 0");
    assert!((s - 1.0).abs() > 1e-12, "Hurwitz zeta has a pole at s = 1");
    let sd = Dual::var(s);
    let n = 30usize;
    let mut sum = Dual::cst(0.0);
    for k in 0..n {
        sum = sum + Dual::pow_base(k as f64 + x, -sd);
    }
    let a = n as f64 + x;
    let a_pow = Dual::pow_base(a, -sd);
    // a^{1-s}/(s-1) + a^{-s}/2
    sum = sum + a_pow * Dual::cst(a) / (sd - Dual::cst(1.0)) + a_pow * Dual::cst(0.5);
    // sum_j B_2j/(2j)! s(s+1)...(s+2j-2) a^{-s-2j+1}
    let mut rising = sd; // s (s+1) ... (s + 2j - 2)
    let mut fact = 2.0f64; // (2j)!
    let mut apow = a_pow / Dual::cst(a); // a^{-s-1}
    for (j, b) in BERN.iter().enumerate() {
        let term = Dual::cst(b / fact) * rising * apow;
        sum = sum + term;
        let j2 = 2.0 * (j as f64 + 1.0);
        rising = rising * (sd + Dual::cst(j2 - 1.0)) * (sd + Dual::cst(j2));
        fact *= (j2 + 1.0) * (j2 + 2.0);
        apow = apow / Dual::cst(a * a);
    }
    sum
}

/// Principal-ish log Gamma for complex z off the nonpositive integers.
/// Only exp(ln_gamma) is relied on, so the branch of the imaginary part is immaterial.
pub fn ln_gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        // reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        let pi = std::f64::consts::PI;
        return C64::new(pi.ln(), 0.0) - (C64::new(pi, 0.0) * z).sin().ln() - ln_gamma(C64::new(1.0, 0.0) - z);
    }
    let mut shift = C64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    // Stirling series
    let half_ln_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let mut s = (w - 0.5) * w.ln() - w + half_ln_2pi;
    let w2 = w * w;
    let mut wp = w;
    for (j, b) in BERN.iter().take(8).enumerate() {
        let k = 2.0 * (j as f64 + 1.0);
        s += *b / (k * (k - 1.0) * wp);
        wp *= w2;
    }
    s - shift
}

/// Digamma psi(z) for complex z off the nonpositive integers.
pub fn digamma(z: C64) -> C64 {
    if z.re < 0.5 {
        let pi = std::f64::consts::PI;
        let pz = C64::new(pi, 0.0) * z;
        return digamma(C64::new(1.0, 0.0) - z) - C64::new(pi, 0.0) * pz.cos() / pz.sin();
    }
    let mut shift = C64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 15.0 {
        shift += w.inv();
        w += 1.0;
    }
    let mut s = w.ln() - 0.5 / w;
    let w2 = w * w;
    let mut wp = w2;
    for (j, b) in BERN.iter().take(8).enumerate() {
        let k = 2.0 * (j as f64 + 1.0);
        s -= *b / (k * wp);
        wp *= w2;
    }
    s - shift
}

/// Gamma_R(s) = pi^{-s/2} Gamma(s/2), as a log.
pub fn ln_gamma_r(s: C64) -> C64 {
    -s / 2.0 * std::f64::consts::PI.ln() + ln_gamma(s / 2.0)
}

/// Gamma_R'/Gamma_R(s).
pub fn psi_r(s: C64) -> C64 {
    -0.5 * std::f64::consts::PI.ln() + 0.5 * digamma(s / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::{digamma as sr_digamma, ln_gamma as sr_ln_gamma};

    #[test]
    fn hurwitz_special_values() {
        // zeta(0, x) = 1/2 - x, zeta'(0, x) = ln Gamma(x) - ln(2 pi)/2
        for x in [0.1, 0.25, 0.5, 0.9, 1.0] {
            let h = hurwitz(0.0, x);
            assert!((h.v - (0.5 - x)).abs() < 1e-13);
            let want = sr_ln_gamma(x) - 0.5 * (2.0 * std::f64::consts::PI).ln();
            assert!((h.d - want).abs() < 1e-12, "x = {x}: {} vs {want}", h.d);
        }
        // zeta(2, 1) = pi^2 / 6
        let z2 = hurwitz(2.0, 1.0).v;
        assert!((z2 - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
        // zeta(-1, 1) = -1/12
        assert!((hurwitz(-1.0, 1.0).v + 1.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_against_statrs() {
        for x in [0.3, 0.5, 1.0, 1.7, 3.2, 10.5, 40.0] {
            let z = C64::new(x, 0.0);
            assert!((ln_gamma(z).re - sr_ln_gamma(x)).abs() < 1e-12, "x = {x}");
            assert!((digamma(z).re - sr_digamma(x)).abs() < 1e-12, "x = {x}");
        }
        // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
        for t in [0.5, 3.0, 20.0] {
            let g = ln_gamma(C64::new(0.5, t)).re * 2.0;
            let want = (std::f64::consts::PI / (std::f64::consts::PI * t).cosh()).ln();
            assert!((g - want).abs() < 1e-11, "t = {t}");
        }
        // Gamma(z + 1) = z Gamma(z) off the real axis
        let z = C64::new(0.3, 2.5);
        let lhs = ln_gamma(z + 1.0).exp();
        let rhs = z * ln_gamma(z).exp();
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
        let d = digamma(z + 1.0) - digamma(z) - z.inv();
        assert!(d.norm() < 1e-12);
    }

    #[test]
    fn gamma_r_at_one() {
        assert!(ln_gamma_r(C64::new(1.0, 0.0)).norm() < 1e-14);
        let want = -0.5 * (4.0 * std::f64::consts::PI).ln() - 0.5 * EULER_GAMMA;
        assert!((psi_r(C64::new(1.0, 0.0)).re - want).abs() < 1e-13);
    }
}
