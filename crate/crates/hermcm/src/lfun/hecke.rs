//! L(s, chi_E) for E = k F, by Dirichlet factorization or by a smoothed ideal series.

use super::dirichlet::{all_characters, DirichletChar};
use super::special::{ln_gamma_r, psi_r, EULER_GAMMA};
use crate::arith::{divisors, prime_divisors, primes_up_to};
use crate::fields::{CMExtension, TotallyRealField};
use crate::{Error, Result, Rat, C64};
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    AbelianFactor,
    IdealSeries,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abelian" | "abelian_factor" => Ok(Mode::AbelianFactor),
            "series" | "ideal_series" => Ok(Mode::IdealSeries),
            _ => Err(Error::Argument(format!("unknown mode {s}"))),
        }
    }
}

/// An L-value together with its s-derivative.
#[derive(Clone, Debug, Serialize)]
pub struct LValue {
    pub s: f64,
    pub value: f64,
    pub derivative: f64,
    pub method: String,
    pub cutoff: Option<u64>,
    pub est_error: f64,
}

/// Lambda(s) = A^s Gamma_R(s + 1)^n L(s, chi_E) with A^2 = |D_E / D_F|.
#[derive(Clone, Debug)]
pub struct CompletedL {
    pub conductor: f64,
    pub gamma_exponent: usize,
}

impl CompletedL {
    pub fn of(e: &CMExtension) -> Self {
        CompletedL { conductor: e.conductor_factor(), gamma_exponent: e.n() }
    }

    /// log of the factor A^s Gamma_R(s+1)^n and its s-derivative.
    pub fn log_factor(&self, s: f64) -> (f64, f64) {
        let n = self.gamma_exponent as f64;
        let z = C64::new(s + 1.0, 0.0);
        let la = 0.5 * self.conductor.ln();
        (la * s + n * ln_gamma_r(z).re, la + n * psi_r(z).re)
    }

    /// (Lambda, Lambda') from (L, L').
    pub fn complete(&self, s: f64, l: f64, dl: f64) -> (f64, f64) {
        let (lf, dlf) = self.log_factor(s);
        let f = lf.exp();
        (f * l, f * (dl + l * dlf))
    }

    /// (L, L') from (Lambda, Lambda').
    pub fn uncomplete(&self, s: f64, lam: f64, dlam: f64) -> (f64, f64) {
        let (lf, dlf) = self.log_factor(s);
        let f = (-lf).exp();
        let l = lam * f;
        (l, f * dlam - l * dlf)
    }

    /// Lambda'/Lambda(0) from L'/L(0) via the closed-form gamma term.
    pub fn logderiv_at_zero(&self, l_logderiv: f64) -> f64 {
        let n = self.gamma_exponent as f64;
        l_logderiv + 0.5 * self.conductor.ln()
            - n / 2.0 * (4.0 * std::f64::consts::PI * EULER_GAMMA.exp()).ln()
    }
}

/// Primitive character mod its conductor.
fn primitive(chi: &DirichletChar) -> DirichletChar {
    let f = chi.conductor();
    let m = chi.modulus as i128;
    let values = (0..f as i128)
        .map(|a| {
            if a.gcd(&(f as i128)) != 1 {
                return C64::new(0.0, 0.0);
            }
            // lift a to a unit mod m
            let mut b = a;
            while b.gcd(&m) != 1 {
                b += f as i128;
            }
            chi.eval(b)
        })
        .collect();
    DirichletChar { modulus: f, values }
}

/// The Dirichlet characters attached to an abelian F, as primitive characters.
pub fn field_characters(f: &TotallyRealField) -> Result<Vec<DirichletChar>> {
    if f.n == 1 {
        return Ok(vec![DirichletChar::trivial()]);
    }
    let df = f.disc_f.unsigned_abs() as u64;
    let rad = prime_divisors(df);
    'cand: for cond in divisors(df) {
        if prime_divisors(cond) != rad {
            continue;
        }
        let bound = 3000u64.max(30 * cond);
        let mut degrees: Vec<(u64, u32)> = Vec::new();
        for p in primes_up_to(bound) {
            if df % p == 0 || f.index % p as i128 == 0 {
                continue;
            }
            let primes = f.factor_rational_prime(p)?;
            let fdeg = primes[0].f;
            if primes.iter().any(|q| q.f != fdeg) {
                continue 'cand;
            }
            degrees.push((p, fdeg as u32));
        }
        // kernel: subgroup generated by the residues of completely split primes
        let mut kernel = vec![false; cond as usize];
        kernel[1 % cond as usize] = true;
        let mut stack = vec![1u64 % cond];
        let gens: Vec<u64> = degrees.iter().filter(|d| d.1 == 1).map(|d| d.0 % cond).collect();
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = x * g % cond;
                if !kernel[y as usize] {
                    kernel[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        let ksize = kernel.iter().filter(|&&b| b).count() as u64;
        let gsize = (1..=cond).filter(|a| a.gcd(&cond) == 1).count() as u64;
        if gsize % ksize != 0 || gsize / ksize != f.n as u64 {
            continue;
        }
        // residue degree = order of p in G/K
        for &(p, fdeg) in &degrees {
            let mut x = p % cond;
            let mut ord = 1u32;
            while !kernel[x as usize] {
                x = x * (p % cond) % cond;
                ord += 1;
            }
            if ord != fdeg {
                continue 'cand;
            }
        }
        let chars: Vec<DirichletChar> = all_characters(cond)
            .into_iter()
            .filter(|c| (0..cond).filter(|&a| kernel[a as usize]).all(|a| (c.eval(a as i128) - 1.0).norm() < 1e-9))
            .map(|c| primitive(&c))
            .collect();
        if chars.len() != f.n {
            continue;
        }
        let prod: u64 = chars.iter().map(|c| c.modulus).product();
        if prod != df {
            return Err(Error::SelfCheck(format!(
                "conductor-discriminant formula fails: product of conductors {prod} vs |D_F| = {df}"
            )));
        }
        return Ok(chars);
    }
    Err(Error::Field(format!("F = Q[x]/({:?}) is not abelian or its conductor is not found", f.min_poly)))
}

/// L(s, chi_E) and its derivative as a product of Dirichlet L-functions L(s, chi_k psi).
pub fn l_abelian(e: &CMExtension, s: f64) -> Result<(f64, f64)> {
    let chik = DirichletChar::kronecker_neg(e.k.d);
    let mut vals = Vec::new();
    for psi in field_characters(&e.f)? {
        let chi = chik.mul(&psi);
        debug_assert!(chi.is_primitive());
        vals.push(chi.l_value(s));
    }
    let mut v = C64::new(1.0, 0.0);
    let mut d = C64::new(0.0, 0.0);
    for (l, dl) in &vals {
        d = d * l + v * dl;
        v *= l;
    }
    if v.im.abs() > 1e-9 * v.norm().max(1.0) {
        return Err(Error::SelfCheck(format!("L(s, chi_E) has imaginary part {}", v.im)));
    }
    Ok((v.re, d.re))
}

/// Quadrature data for Phi(s, y) = (1/2 pi i) int_(c) Gamma_R(s+w+1)^n y^{-(s+w)} dw / w.
struct Kernel {
    s: f64,
    ws: Vec<C64>,
    weights: Vec<C64>,
    psis: Vec<C64>,
    h: f64,
}

impl Kernel {
    fn new(s: f64, n: usize) -> Self {
        let c = (1.5 - s).max(0.5);
        let h = 0.08;
        let tmax = 180.0 / (n as f64 * std::f64::consts::PI);
        let steps = (tmax / h).ceil() as i64;
        let mut ws = Vec::new();
        let mut weights = Vec::new();
        let mut psis = Vec::new();
        for k in -steps..=steps {
            let w = C64::new(c, k as f64 * h);
            let z = C64::new(s + 1.0, 0.0) + w;
            weights.push((ln_gamma_r(z) * n as f64).exp() / w);
            psis.push(psi_r(z) * n as f64);
            ws.push(w);
        }
        Kernel { s, ws, weights, psis, h }
    }

    /// (Phi(s, y), d/ds Phi(s, y)).
    fn eval(&self, y: f64) -> (f64, f64) {
        let ly = y.ln();
        let mut v = C64::new(0.0, 0.0);
        let mut d = C64::new(0.0, 0.0);
        for i in 0..self.ws.len() {
            let t = self.weights[i] * (-(self.ws[i] + self.s) * ly).exp();
            v += t;
            d += t * (self.psis[i] - ly);
        }
        let f = self.h / (2.0 * std::f64::consts::PI);
        (v.re * f, d.re * f)
    }
}

pub fn default_cutoff(e: &CMExtension) -> u64 {
    let a = ((e.k.d as f64).powi(e.n() as i32) * e.f.disc_f.abs() as f64).sqrt();
    ((50.0 * a).ceil() as u64).max(10_000)
}

/// (Lambda(s), Lambda'(s)) from the smoothed ideal series, with a tail estimate.
pub fn lambda_series(e: &CMExtension, s: f64, cutoff: u64) -> Result<(f64, f64, f64)> {
    let cl = CompletedL::of(e);
    let a = cl.conductor.sqrt();
    let coeffs = e.enumerate_ideals(cutoff)?;
    let k1 = Kernel::new(s, cl.gamma_exponent);
    let k2 = Kernel::new(1.0 - s, cl.gamma_exponent);
    let terms: Vec<(usize, f64, f64)> = (1..coeffs.len())
        .into_par_iter()
        .filter(|&m| coeffs[m].1 != 0)
        .map(|m| {
            let y = m as f64 / a;
            let (p1, d1) = k1.eval(y);
            let (p2, d2) = k2.eval(y);
            let am = coeffs[m].1 as f64;
            (m, am * (p1 + p2), am * (d1 - d2))
        })
        .collect();
    // deterministic reduction in increasing m
    let mut v = 0.0;
    let mut d = 0.0;
    let mut tail = 0.0f64;
    let half = cutoff / 2;
    for (m, tv, td) in &terms {
        v += tv;
        d += td;
        if *m as u64 > half {
            tail += tv.abs() + td.abs();
        }
    }
    Ok((v, d, tail))
}

/// L(s, chi_E) and L'(s, chi_E) in the requested mode.
pub fn hecke_l(e: &CMExtension, mode: Mode, s: f64, cutoff: Option<u64>) -> Result<LValue> {
    match mode {
        Mode::AbelianFactor => {
            let (v, d) = l_abelian(e, s)?;
            Ok(LValue { s, value: v, derivative: d, method: "abelian_factor".into(), cutoff: None, est_error: 1e-12 })
        }
        Mode::IdealSeries => {
            let x = cutoff.unwrap_or_else(|| default_cutoff(e));
            let (lam, dlam, tail) = lambda_series(e, s, x)?;
            let (v, d) = CompletedL::of(e).uncomplete(s, lam, dlam);
            Ok(LValue { s, value: v, derivative: d, method: "ideal_series".into(), cutoff: Some(x), est_error: tail.max(1e-13) })
        }
    }
}

/// Completed (Lambda(s), Lambda'(s)).
pub fn completed_lambda(e: &CMExtension, mode: Mode, s: f64) -> Result<(f64, f64)> {
    let l = hecke_l(e, mode, s, None)?;
    Ok(CompletedL::of(e).complete(s, l.value, l.derivative))
}

/// (L(0, chi_E), L'(0, chi_E)).
pub fn hecke_l_chi_e_deriv0(e: &CMExtension, mode: Mode) -> Result<LValue> {
    hecke_l(e, mode, 0.0, None)
}

/// Both modes at s = 0; disagreement beyond 1e-6 is an error.
pub fn cross_check(e: &CMExtension) -> Result<(LValue, LValue)> {
    let a = hecke_l(e, Mode::AbelianFactor, 0.0, None)?;
    let b = hecke_l(e, Mode::IdealSeries, 0.0, None)?;
    let dv = (a.value - b.value).abs();
    let dd = (a.derivative - b.derivative).abs();
    if dv > 1e-6 || dd > 1e-6 {
        return Err(Error::SelfCheck(format!(
            "L-value modes disagree: value {} vs {}, derivative {} vs {}",
            a.value, b.value, a.derivative, b.derivative
        )));
    }
    Ok((a, b))
}

/// Residual of Lambda'/Lambda(0) computed from (Lambda, Lambda') against the closed form.
pub fn logderiv_relation_residual(e: &CMExtension, mode: Mode) -> Result<f64> {
    let l = hecke_l(e, mode, 0.0, None)?;
    let cl = CompletedL::of(e);
    let (lam, dlam) = cl.complete(0.0, l.value, l.derivative);
    if lam == 0.0 {
        return Err(Error::SelfCheck("Lambda(0) vanishes".into()));
    }
    Ok((dlam / lam - cl.logderiv_at_zero(l.derivative / l.value)).abs())
}

/// (2 h_1 / w_1)(2 h_2 / w_2) for the imaginary quadratic fields of discriminants -D and -D D_F.
pub fn lambda0_exact_biquadratic(e: &CMExtension) -> Result<Rat> {
    if e.n() != 2 {
        return Err(Error::Argument("biquadratic oracle needs [F:Q] = 2".into()));
    }
    let df = e.f.disc_f;
    if df <= 0 || df % 2 == 0 {
        return Err(Error::Discriminant(format!("D_F = {df} must be odd and positive")));
    }
    let d2 = e.k.d * df as u64;
    let (h1, _) = crate::fields::class_number_imag_quad(e.k.d)?;
    let (h2, _) = crate::fields::class_number_imag_quad(d2)
        .map_err(|_| Error::Discriminant(format!("-{d2} is not an odd fundamental discriminant")))?;
    let w = |d: u64| if d == 3 { 6 } else { 2 };
    Ok(Rat::new(2 * h1 as i128, w(e.k.d)) * Rat::new(2 * h2 as i128, w(d2)))
}

/// Dirichlet L-function of chi_{-D} completed: Lambda(s) = D^{s/2} Gamma_R(s+1) L(s).
pub fn lambda_chi_k(d: u64, s: f64) -> f64 {
    let chi = DirichletChar::kronecker_neg(d);
    let (l, _) = chi.l_value(s);
    let cl = CompletedL { conductor: d as f64, gamma_exponent: 1 };
    cl.complete(s, l.re, 0.0).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::ImagQuadField;

    fn ext(d: u64, poly: &[i128]) -> CMExtension {
        CMExtension::new(ImagQuadField::new(d).unwrap(), TotallyRealField::new(poly, None).unwrap()).unwrap()
    }

    #[test]
    fn d7_sqrt5() {
        let e = ext(7, &[-1, -1, 1]);
        let (a, b) = cross_check(&e).unwrap();
        assert!((a.value - 2.0).abs() < 1e-10);
        assert!((b.value - 2.0).abs() < 1e-8);
        assert_eq!(lambda0_exact_biquadratic(&e).unwrap(), Rat::from_integer(2));
        assert!((a.derivative - b.derivative).abs() < 1e-8);
    }

    #[test]
    fn cubic_characters() {
        let f = TotallyRealField::new(&[-1, -3, 0, 1], None).unwrap();
        let cs = field_characters(&f).unwrap();
        assert_eq!(cs.len(), 3);
        let mut conds: Vec<u64> = cs.iter().map(|c| c.modulus).collect();
        conds.sort();
        assert_eq!(conds, vec![1, 9, 9]);
    }

    #[test]
    fn functional_equation_chi_k() {
        for d in crate::arith::odd_fundamental_discriminants(100) {
            for s in [0.2, 0.5, 0.8] {
                let diff = lambda_chi_k(d, s) - lambda_chi_k(d, 1.0 - s);
                assert!(diff.abs() < 1e-8, "D = {d}, s = {s}: {diff}");
            }
        }
    }

    #[test]
    fn functional_equation_chi_e() {
        for e in [ext(7, &[-1, -1, 1]), ext(7, &[-1, -3, 0, 1]), ext(11, &[-1, -1, 1])] {
            for s in [0.2, 0.5, 0.8] {
                let (a, _) = completed_lambda(&e, Mode::AbelianFactor, s).unwrap();
                let (b, _) = completed_lambda(&e, Mode::AbelianFactor, 1.0 - s).unwrap();
                assert!((a - b).abs() < 1e-8, "s = {s}");
            }
        }
    }

    #[test]
    fn modes_agree_on_cubic_and_q() {
        cross_check(&ext(7, &[-1, -3, 0, 1])).unwrap();
        let q = CMExtension::new(ImagQuadField::new(7).unwrap(), TotallyRealField::rationals()).unwrap();
        let (a, _) = cross_check(&q).unwrap();
        assert!((a.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn logderiv_relation_and_finite_difference() {
        let e = ext(7, &[-1, -1, 1]);
        for mode in [Mode::AbelianFactor, Mode::IdealSeries] {
            assert!(logderiv_relation_residual(&e, mode).unwrap() < 1e-10);
        }
        let h = 1e-4;
        let lp = hecke_l(&e, Mode::IdealSeries, h, None).unwrap().value;
        let lm = hecke_l(&e, Mode::IdealSeries, -h, None).unwrap().value;
        let d0 = hecke_l(&e, Mode::IdealSeries, 0.0, None).unwrap().derivative;
        assert!(((lp - lm) / (2.0 * h) - d0).abs() < 1e-5);
    }
}
