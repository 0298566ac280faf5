//! Finite products of factors 1 + c p^{s/2}.

use crate::C64;
use serde::Serialize;

/// One factor 1 + chi eps gamma p^{s/2}.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EulerFactor {
    pub p: u64,
    pub eps: C64,
    pub gamma: C64,
    pub chi: C64,
}

impl EulerFactor {
    pub fn coefficient(&self) -> C64 {
        self.chi * self.eps * self.gamma
    }

    pub fn at(&self, s: f64) -> C64 {
        1.0 + self.coefficient() * (self.p as f64).powf(s / 2.0)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct EulerProduct {
    pub value: C64,
    pub derivative: C64,
    /// Number of factors vanishing at s = 0.
    pub vanishing: usize,
}

const ZERO_TOL: f64 = 1e-12;

/// Product value at s = 0 and its derivative there. With two or more vanishing
/// factors the derivative is 0 and `vanishing` records the multiplicity.
pub fn euler_factor_product(factors: &[EulerFactor]) -> EulerProduct {
    let vals: Vec<C64> = factors.iter().map(|f| f.at(0.0)).collect();
    // d/ds (1 + c p^{s/2}) at 0
    let ders: Vec<C64> = factors.iter().map(|f| f.coefficient() * (f.p as f64).ln() / 2.0).collect();
    let zeros: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].norm() < ZERO_TOL).collect();
    let value = if zeros.is_empty() { vals.iter().product() } else { C64::new(0.0, 0.0) };
    let derivative = match zeros.len() {
        0 => (0..vals.len())
            .map(|i| ders[i] * (0..vals.len()).filter(|&j| j != i).map(|j| vals[j]).product::<C64>())
            .sum(),
        1 => {
            let i = zeros[0];
            ders[i] * (0..vals.len()).filter(|&j| j != i).map(|j| vals[j]).product::<C64>()
        }
        _ => C64::new(0.0, 0.0),
    };
    EulerProduct { value, derivative, vanishing: zeros.len() }
}

/// Product at arbitrary real s.
pub fn euler_product_at(factors: &[EulerFactor], s: f64) -> C64 {
    factors.iter().map(|f| f.at(s)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(p: u64, c: C64) -> EulerFactor {
        EulerFactor { p, eps: c, gamma: C64::new(1.0, 0.0), chi: C64::new(1.0, 0.0) }
    }

    #[test]
    fn empty_and_single() {
        let e = euler_factor_product(&[]);
        assert_eq!(e.value, C64::new(1.0, 0.0));
        assert_eq!(e.derivative, C64::new(0.0, 0.0));
        let e = euler_factor_product(&[fac(7, C64::new(-1.0, 0.0))]);
        assert_eq!(e.value.norm(), 0.0);
        assert!((e.derivative.re + 7f64.ln() / 2.0).abs() < 1e-15);
        assert_eq!(e.vanishing, 1);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let fs = [
            fac(3, C64::new(0.0, 1.0)),
            fac(7, C64::new(-1.0, 0.0)),
            fac(11, C64::new(0.0, -1.0)),
        ];
        let h = 1e-5;
        for sub in [&fs[..1], &fs[..], &fs[2..]] {
            let e = euler_factor_product(sub);
            let fd = (euler_product_at(sub, h) - euler_product_at(sub, -h)) / (2.0 * h);
            assert!((fd - e.derivative).norm() < 1e-6);
            assert!((euler_product_at(sub, 0.0) - e.value).norm() < 1e-12);
        }
        let two = euler_factor_product(&[fac(3, C64::new(-1.0, 0.0)), fac(7, C64::new(-1.0, 0.0))]);
        assert_eq!(two.vanishing, 2);
        assert_eq!(two.derivative, C64::new(0.0, 0.0));
    }
}
