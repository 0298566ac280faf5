//! Degrees of the small and big CM cycles.

use crate::arith::prime_divisors;
use crate::fields::{class_number_imag_quad, CMExtension, ImagQuadField};
use crate::lfun::{hecke_l, lambda0_exact_biquadratic, Mode};
use crate::{Error, Result, Rat};
use num_traits::ToPrimitive;
use serde::Serialize;

/// (h/w)^2 2^{1 - o(D)} / |Aut(Lambda)| with o(D) the number of primes dividing D.
pub fn deg_small(k: &ImagQuadField, aut: u64) -> Result<Rat> {
    if aut == 0 {
        return Err(Error::Argument("|Aut| must be positive".into()));
    }
    let hw = Rat::new(k.h as i128, k.w as i128);
    let o = prime_divisors(k.d).len() as i32;
    let two = Rat::from_integer(2).pow(1 - o);
    Ok(hw * hw * two / Rat::from_integer(aut as i128))
}

/// n (h/w) Lambda(0, chi_E) / 2^{r-1}.
pub fn deg_big(e: &CMExtension, mode: Mode) -> Result<f64> {
    let l0 = hecke_l(e, mode, 0.0, None)?.value;
    Ok(e.n() as f64 * e.k.h as f64 / e.k.w as f64 * l0 / 2f64.powi(e.r as i32 - 1))
}

/// Exact degree for biquadratic E.
pub fn deg_big_exact(e: &CMExtension) -> Result<Rat> {
    let l0 = lambda0_exact_biquadratic(e)?;
    Ok(Rat::from_integer(e.n() as i128) * Rat::new(e.k.h as i128, e.k.w as i128) * l0
        / Rat::from_integer(2).pow(e.r as i32 - 1))
}

/// w_E Lambda(0, chi_E) against the count assembled from h_E / h_F and the unit index.
#[derive(Clone, Debug, Serialize)]
pub struct DirichletChain {
    pub w_e_lambda0: f64,
    pub h_minus: Rat,
    pub unit_index: u32,
    pub assembled: Rat,
}

/// Fundamental unit a + b theta of a real quadratic field: among units with the
/// smallest b > 0, the one of smallest largest embedding.
fn fundamental_unit(poly: &[i128], roots: &[f64]) -> Result<(i128, i128)> {
    let (c0, c1) = (poly[0], poly[1]);
    for b in 1..200_000i128 {
        let mut found: Vec<(i128, i128)> = Vec::new();
        // a^2 - c1 b a + c0 b^2 = +-1
        for s in [1i128, -1] {
            let disc = c1 * c1 * b * b - 4 * (c0 * b * b - s);
            if disc < 0 {
                continue;
            }
            let r = crate::arith::isqrt(disc as u128) as i128;
            if r * r != disc {
                continue;
            }
            for num in [c1 * b + r, c1 * b - r] {
                if num % 2 == 0 {
                    found.push((num / 2, b));
                }
            }
        }
        let size = |u: &(i128, i128)| roots.iter().map(|t| (u.0 as f64 + u.1 as f64 * t).abs()).fold(0.0, f64::max);
        if let Some(best) = found.into_iter().min_by(|x, y| size(x).total_cmp(&size(y))) {
            return Ok(best);
        }
    }
    Err(Error::Field("fundamental unit not found in search range".into()))
}

/// Is x = a + b theta a square in F?
fn is_square_quadratic(poly: &[i128], roots: &[f64], a: i128, b: i128) -> bool {
    let s: Vec<f64> = roots.iter().map(|t| a as f64 + b as f64 * t).collect();
    if s.iter().any(|&v| v <= 0.0) {
        return false;
    }
    let (r1, r2) = (roots[0], roots[1]);
    for sg in [1.0, -1.0] {
        let (y1, y2) = (s[0].sqrt(), sg * s[1].sqrt());
        let d = ((y1 - y2) / (r1 - r2)).round() as i128;
        let c = (y1 - d as f64 * r1).round() as i128;
        // (c + d theta)^2 with theta^2 = -c1 theta - c0
        let sq_a = c * c - d * d * poly[0];
        let sq_b = 2 * c * d - d * d * poly[1];
        if (sq_a, sq_b) == (a, b) {
            return true;
        }
    }
    false
}

/// Both sides of |B| = w_E Lambda(0, chi_E), biquadratic E with D != 3.
pub fn dirichlet_chain(e: &CMExtension, mode: Mode) -> Result<DirichletChain> {
    if e.n() != 2 || e.k.d == 3 {
        return Err(Error::Argument("chain check needs a biquadratic E with D != 3".into()));
    }
    let poly = &e.f.min_poly;
    let (ua, ub) = fundamental_unit(poly, &e.f.roots)?;
    let norm = ua * ua - poly[1] * ua * ub + poly[0] * ub * ub;
    let d = e.k.d as i128;
    let unit_index = if norm == -1 {
        1
    } else if is_square_quadratic(poly, &e.f.roots, d * ua, d * ub)
        || is_square_quadratic(poly, &e.f.roots, -d * ua, -d * ub)
    {
        2
    } else {
        1
    };
    let (h1, _) = class_number_imag_quad(e.k.d)?;
    let (h2, _) = class_number_imag_quad(e.k.d * e.f.disc_f as u64)?;
    let h_minus = Rat::new(unit_index as i128 * h1 as i128 * h2 as i128, 2);
    let assembled = h_minus * Rat::from_integer(1 << e.n()) / Rat::from_integer(unit_index as i128);
    let w_e = 2.0;
    let l0 = hecke_l(e, mode, 0.0, None)?.value;
    Ok(DirichletChain { w_e_lambda0: w_e * l0, h_minus, unit_index, assembled })
}

impl DirichletChain {
    pub fn residual(&self) -> f64 {
        (self.w_e_lambda0 - self.assembled.to_f64().unwrap()).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::TotallyRealField;

    fn ext(d: u64, poly: &[i128]) -> CMExtension {
        CMExtension::new(ImagQuadField::new(d).unwrap(), TotallyRealField::new(poly, None).unwrap()).unwrap()
    }

    #[test]
    fn small_degree() {
        let k = ImagQuadField::new(7).unwrap();
        assert_eq!(deg_small(&k, 8).unwrap(), Rat::new(1, 32));
        assert_eq!(deg_small(&k, 16).unwrap() * Rat::from_integer(2), deg_small(&k, 8).unwrap());
        let k15 = ImagQuadField::new(15).unwrap();
        // h = 2, w = 2, two primes
        assert_eq!(deg_small(&k15, 1).unwrap(), Rat::new(1, 2));
        assert!(deg_small(&k, 0).is_err());
    }

    #[test]
    fn big_degree_d7_sqrt5() {
        let e = ext(7, &[-1, -1, 1]);
        assert_eq!(e.r, 3);
        let exact = deg_big_exact(&e).unwrap();
        assert_eq!(exact / Rat::from_integer(2), Rat::new(1, 4));
        for mode in [Mode::AbelianFactor, Mode::IdealSeries] {
            assert!((deg_big(&e, mode).unwrap() - 0.5).abs() < 1e-8);
        }
    }

    #[test]
    fn chain() {
        for (d, poly) in [(7u64, [-1i128, -1, 1]), (11, [-1, -1, 1]), (7, [-3, -1, 1])] {
            let e = ext(d, &poly);
            let c = dirichlet_chain(&e, Mode::AbelianFactor).unwrap();
            assert!(c.residual() < 1e-9, "D = {d}: {c:?}");
        }
        let roots = TotallyRealField::new(&[-1, -1, 1], None).unwrap().roots;
        let u = fundamental_unit(&[-1, -1, 1], &roots).unwrap();
        assert!(u == (0, 1) || u == (-1, 1), "{u:?}");
    }
}
