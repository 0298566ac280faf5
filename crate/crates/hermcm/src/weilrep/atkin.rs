//! Atkin-Lehner pseudo-eigenvalues and the coefficients of g_Q.

use super::newform::NewformData;
use crate::arith::{jacobi, prime_divisors};
use crate::fields::quadratic::{delta_p, Root4};
use crate::{Error, Result, C64};

#[derive(Clone, Debug)]
pub struct AtkinLehner {
    pub q: u64,
    pub level: u64,
    pub weight: u32,
    /// lambda_q for each prime q | Q.
    pub lambdas: Vec<(u64, C64)>,
    pub eps: Root4,
    /// coeffs[m] = c_Q(m), index 0 unused.
    pub coeffs: Vec<C64>,
}

/// chi_q(m) for the prime q | D: the Legendre symbol (m / q).
fn chi_prime(q: u64, m: i128) -> i32 {
    jacobi(m, q)
}

/// chi_Q(m) = prod_{q | Q} chi_q(m).
pub fn chi_divisor(q: u64, m: i128) -> i32 {
    prime_divisors(q).into_iter().map(|p| chi_prime(p, m)).product()
}

fn powi(z: i32, n: u32) -> i32 {
    if n % 2 == 0 && z != 0 {
        1
    } else {
        z
    }
}

/// Split m = m_Q * m' with m_Q supported on the primes of Q and gcd(m', Q) = 1.
fn split(m: u64, q: u64) -> (u64, u64) {
    let mut mq = 1;
    let mut rest = m;
    for p in prime_divisors(q) {
        while rest % p == 0 {
            rest /= p;
            mq *= p;
        }
    }
    (mq, rest)
}

impl AtkinLehner {
    /// lambda_q = conj(c(q)) * (-q^{1-n/2}) for even n, conj(c(q)) delta_q q^{(1-n)/2} for odd n.
    pub fn lambda(g: &NewformData, q: u64) -> Result<C64> {
        let c = g.c(q as usize)?;
        if c.norm() == 0.0 {
            return Err(Error::Newform(format!("c({q}) = 0, cannot normalize lambda_{q}")));
        }
        let n = g.weight as f64;
        let qf = q as f64;
        Ok(if g.weight % 2 == 0 {
            c.conj() * (-qf.powf(1.0 - n / 2.0))
        } else {
            c.conj() * delta_p(q)?.to_c64() * qf.powf((1.0 - n) / 2.0)
        })
    }

    /// The literal chi_Q^n(Q/q) vanishes for composite Q, so the q-component
    /// chi_q^n(Q/q) is used for each factor.
    pub fn new(g: &NewformData, q: u64, prec: usize) -> Result<Self> {
        let d = g.level;
        if q == 0 || d % q != 0 {
            return Err(Error::Argument(format!("Q = {q} does not divide D = {d}")));
        }
        let n = g.weight;
        let mut lambdas = Vec::new();
        let mut eps = C64::new(1.0, 0.0);
        for p in prime_divisors(q) {
            let l = Self::lambda(g, p)?;
            let chi = powi(chi_prime(p, (q / p) as i128), n);
            eps *= l * chi as f64;
            lambdas.push((p, l));
        }
        let eps = Root4::snap(eps, 1e-9)
            .ok_or_else(|| Error::Newform(format!("epsilon_{q} = {eps} is not a fourth root of unity")))?;
        let mut al = AtkinLehner { q, level: d, weight: n, lambdas, eps, coeffs: vec![C64::new(0.0, 0.0)] };
        for m in 1..=prec {
            let v = al.coeff_from(g, m as u64)?;
            al.coeffs.push(v);
        }
        Ok(al)
    }

    /// c_Q(m) for (m, Q) = 1: eps chi_Q^n(m) c(m).
    fn coprime_part(&self, g: &NewformData, m: u64) -> Result<C64> {
        let chi = powi(chi_divisor(self.q, m as i128), self.weight);
        Ok(self.eps.to_c64() * chi as f64 * g.c(m as usize)?)
    }

    /// c_Q(m) for (m, D/Q) = 1: eps chi_{D/Q}^n(m) conj(c(m)).
    fn cocoprime_part(&self, g: &NewformData, m: u64) -> Result<C64> {
        let chi = powi(chi_divisor(self.level / self.q, m as i128), self.weight);
        Ok(self.eps.to_c64() * chi as f64 * g.c(m as usize)?.conj())
    }

    fn coeff_from(&self, g: &NewformData, m: u64) -> Result<C64> {
        let (mq, rest) = split(m, self.q);
        if mq == 1 {
            return self.coprime_part(g, rest);
        }
        if rest == 1 {
            return self.cocoprime_part(g, mq);
        }
        Ok(self.eps.inv().to_c64() * self.cocoprime_part(g, mq)? * self.coprime_part(g, rest)?)
    }

    pub fn c(&self, m: usize) -> Result<C64> {
        self.coeffs
            .get(m)
            .copied()
            .ok_or_else(|| Error::Newform(format!("c_Q({m}) beyond precision {}", self.coeffs.len() - 1)))
    }

    /// Worst deviation of eps^{-1} c_Q(a) c_Q(b) = c_Q(ab) over coprime a, b with ab <= prec.
    pub fn multiplicativity_residual(&self) -> f64 {
        let prec = self.coeffs.len() - 1;
        let ei = self.eps.inv().to_c64();
        let mut worst = 0.0f64;
        for a in 1..=prec {
            for b in 1..=prec / a {
                if num_integer::gcd(a, b) != 1 {
                    continue;
                }
                let lhs = ei * self.coeffs[a] * self.coeffs[b];
                worst = worst.max((lhs - self.coeffs[a * b]).norm());
            }
        }
        worst
    }

    /// For (m, D) = 1 both defining relations apply; worst disagreement between them.
    pub fn overlap_residual(&self, g: &NewformData) -> Result<f64> {
        let mut worst = 0.0f64;
        for m in 1..self.coeffs.len() as u64 {
            if num_integer::gcd(m, self.level) == 1 {
                let a = self.coprime_part(g, m)?;
                let b = self.cocoprime_part(g, m)?;
                worst = worst.max((a - b).norm());
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::quadratic::ImagQuadField;
    use crate::weilrep::cm_newform;

    #[test]
    fn d7_weight3() {
        let g = cm_newform(&ImagQuadField::new(7).unwrap(), 3, 400).unwrap();
        let l = AtkinLehner::lambda(&g, 7).unwrap();
        assert!((l - C64::new(0.0, -1.0)).norm() < 1e-12);
        let al = AtkinLehner::new(&g, 7, 200).unwrap();
        assert_eq!(al.eps, Root4::MINUS_I);
        assert!(al.multiplicativity_residual() < 1e-9);
        assert!(al.overlap_residual(&g).unwrap() < 1e-9);
        let one = AtkinLehner::new(&g, 1, 200).unwrap();
        assert_eq!(one.eps, Root4::ONE);
        for m in 1..=200 {
            assert!((one.coeffs[m] - g.c(m).unwrap()).norm() < 1e-12);
        }
        assert!(AtkinLehner::new(&g, 3, 10).is_err());
    }
}
