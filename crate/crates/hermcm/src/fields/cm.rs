//! The CM field E = k (x) F and its quadratic character chi_E = chi_k o Nm.

use super::quadratic::ImagQuadField;
use super::real::{PrimeIdealF, TotallyRealField};
use crate::{Error, Result};
use num_integer::Integer;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Debug, Serialize)]
pub struct CMExtension {
    pub k: ImagQuadField,
    pub f: TotallyRealField,
    /// Number of places of F ramified in E (archimedean included).
    pub r: u32,
    pub abs_disc_e: u128,
    /// Primes of F above the primes dividing D.
    pub ramified: Vec<PrimeIdealF>,
}

impl CMExtension {
    pub fn new(k: ImagQuadField, f: TotallyRealField) -> Result<Self> {
        let df = f.disc_f.unsigned_abs() as u64;
        if df.gcd(&k.d) != 1 {
            return Err(Error::Field(format!(
                "discriminants -{} and {} are not coprime",
                k.d, f.disc_f
            )));
        }
        let mut ramified = Vec::new();
        for q in k.ramified_primes() {
            ramified.extend(f.factor_rational_prime(q)?);
        }
        let n = f.n as u32;
        let r = n + ramified.len() as u32;
        let abs_disc_e = (k.d as u128).pow(n) * (df as u128).pow(2);
        // Cross-check: the relative discriminant has norm prod N(p) over ramified p.
        let rel: u128 = ramified.iter().map(|p| p.norm()).product();
        if rel * (df as u128).pow(2) != abs_disc_e {
            return Err(Error::SelfCheck(format!(
                "ramification data gives |D_E| = {} but D^n D_F^2 = {abs_disc_e}",
                rel * (df as u128).pow(2)
            )));
        }
        Ok(CMExtension { k, f, r, abs_disc_e, ramified })
    }

    pub fn n(&self) -> usize {
        self.f.n
    }

    /// chi_E on an ideal of norm m, i.e. chi_k(m).
    pub fn chi_e_of_norm(&self, m: u128) -> i32 {
        self.k.chi(m as i128)
    }

    pub fn splitting_in_e(&self, p: &PrimeIdealF) -> Splitting {
        if self.k.d % p.ell == 0 {
            return Splitting::Ramified;
        }
        match self.k.chi(p.norm() as i128) {
            1 => Splitting::Split,
            -1 => Splitting::Inert,
            _ => unreachable!("unramified prime with chi = 0"),
        }
    }

    /// Norm -> (ideal count, chi_E-weighted count) for norms up to x.
    pub fn enumerate_ideals(&self, x: u64) -> Result<Vec<(u64, i64)>> {
        let counts = self.f.ideal_counts(x)?;
        Ok(counts
            .iter()
            .enumerate()
            .map(|(m, &c)| (c, c as i64 * self.k.chi(m as i128) as i64))
            .collect())
    }

    /// |D_E / D_F| = D^n |D_F|.
    pub fn conductor_factor(&self) -> f64 {
        (self.k.d as f64).powi(self.f.n as i32) * self.f.disc_f.abs() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e7_5() -> CMExtension {
        CMExtension::new(
            ImagQuadField::new(7).unwrap(),
            TotallyRealField::new(&[-1, -1, 1], None).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn ramification_counts() {
        let e = e7_5();
        assert_eq!(e.r, 3);
        assert_eq!(e.abs_disc_e, 49 * 25);
        let c = CMExtension::new(
            ImagQuadField::new(7).unwrap(),
            TotallyRealField::new(&[-1, -3, 0, 1], None).unwrap(),
        )
        .unwrap();
        assert_eq!(c.r, 4);
        assert!(CMExtension::new(
            ImagQuadField::new(15).unwrap(),
            TotallyRealField::new(&[-1, -1, 1], None).unwrap()
        )
        .is_err());
    }

    #[test]
    fn splitting_rule() {
        let e = e7_5();
        let p11 = &e.f.factor_rational_prime(11).unwrap()[0];
        assert_eq!(p11.norm(), 11);
        assert_eq!(e.splitting_in_e(p11), Splitting::Split);
        let p7 = &e.f.factor_rational_prime(7).unwrap()[0];
        assert_eq!(e.splitting_in_e(p7), Splitting::Ramified);
        // 13 is inert in Q(sqrt5): norm 169, chi_{-7}(169) = 1 -> split
        let p13 = &e.f.factor_rational_prime(13).unwrap()[0];
        assert_eq!(e.splitting_in_e(p13), Splitting::Split);
        let q = CMExtension::new(ImagQuadField::new(7).unwrap(), TotallyRealField::rationals()).unwrap();
        let p13 = &q.f.factor_rational_prime(13).unwrap()[0];
        assert_eq!(q.splitting_in_e(p13), Splitting::Inert);
    }
}
