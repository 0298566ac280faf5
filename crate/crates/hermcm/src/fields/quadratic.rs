//! The imaginary quadratic field k = Q(sqrt(-D)) of odd discriminant -D.

use crate::arith::{is_squarefree, jacobi, prime_divisors};
use crate::{Error, Result, Rat, C64};
use num_traits::{One, Zero};
use serde::Serialize;

/// A fourth root of unity `i^k`, kept exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Root4(pub u8);

impl Root4 {
    pub const ONE: Root4 = Root4(0);
    pub const I: Root4 = Root4(1);
    pub const MINUS_ONE: Root4 = Root4(2);
    pub const MINUS_I: Root4 = Root4(3);

    pub fn from_sign(s: i32) -> Root4 {
        match s {
            1 => Root4::ONE,
            -1 => Root4::MINUS_ONE,
            _ => panic!("sign must be +-1, got {s}"),
        }
    }
    pub fn pow(self, e: i64) -> Root4 {
        Root4(((self.0 as i64 * e).rem_euclid(4)) as u8)
    }
    pub fn conj(self) -> Root4 {
        Root4((4 - self.0) % 4)
    }
    pub fn inv(self) -> Root4 {
        self.conj()
    }
    pub fn to_c64(self) -> C64 {
        match self.0 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    }
    /// Nearest fourth root to `z` if within `tol`.
    pub fn snap(z: C64, tol: f64) -> Option<Root4> {
        (0..4)
            .map(Root4)
            .find(|r| (r.to_c64() - z).norm() <= tol)
    }
}

impl std::ops::Mul for Root4 {
    type Output = Root4;
    fn mul(self, o: Root4) -> Root4 {
        Root4((self.0 + o.0) % 4)
    }
}

impl std::fmt::Display for Root4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

/// delta_p = 1 if p = 1 mod 4 and i if p = 3 mod 4.
pub fn delta_p(p: u64) -> Result<Root4> {
    if p % 2 == 0 {
        return Err(Error::Argument(format!("delta_p needs an odd prime, got {p}")));
    }
    Ok(if p % 4 == 1 { Root4::ONE } else { Root4::I })
}

/// Element `a + b*pi` of k with rational coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KElem {
    pub a: Rat,
    pub b: Rat,
}

impl KElem {
    pub fn new(a: Rat, b: Rat) -> Self {
        KElem { a, b }
    }
    pub fn int(a: i128, b: i128) -> Self {
        KElem::new(Rat::from_integer(a), Rat::from_integer(b))
    }
    pub fn rational(a: Rat) -> Self {
        KElem::new(a, Rat::zero())
    }
    pub fn zero() -> Self {
        KElem::int(0, 0)
    }
    pub fn one() -> Self {
        KElem::int(1, 0)
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }
    pub fn add(&self, o: &KElem) -> KElem {
        KElem::new(self.a + o.a, self.b + o.b)
    }
    pub fn sub(&self, o: &KElem) -> KElem {
        KElem::new(self.a - o.a, self.b - o.b)
    }
    pub fn neg(&self) -> KElem {
        KElem::new(-self.a, -self.b)
    }
    pub fn scale(&self, r: Rat) -> KElem {
        KElem::new(self.a * r, self.b * r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImagQuadField {
    pub d: u64,
    pub pi_trace: i64,
    pub pi_norm: i64,
    pub h: u64,
    pub w: u64,
}

/// Reduced binary quadratic forms of discriminant -D.
pub fn reduced_forms(d: u64) -> Result<Vec<ReducedForm>> {
    check_odd_fundamental(d)?;
    let d = d as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= d {
        for b in -a + 1..=a {
            let num = b * b + d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if (b.abs() == a || a == c) && b < 0 {
                continue;
            }
            out.push(ReducedForm { a, b, c });
        }
        a += 1;
    }
    Ok(out)
}

/// Class number of discriminant -D together with the reduced forms.
pub fn class_number_imag_quad(d: u64) -> Result<(u64, Vec<ReducedForm>)> {
    let forms = reduced_forms(d)?;
    Ok((forms.len() as u64, forms))
}

pub fn check_odd_fundamental(d: u64) -> Result<()> {
    if d < 3 || d % 4 != 3 || !is_squarefree(d) {
        return Err(Error::Discriminant(format!(
            "-{d} is not an odd fundamental discriminant"
        )));
    }
    Ok(())
}

impl ImagQuadField {
    /// k with ring generator pi = (1 + sqrt(-D))/2.
    pub fn new(d: u64) -> Result<Self> {
        Self::with_pi_sign(d, 1)
    }

    /// `sign = +1` gives pi = (1 + sqrt(-D))/2, `sign = -1` gives (-1 + sqrt(-D))/2.
    pub fn with_pi_sign(d: u64, sign: i64) -> Result<Self> {
        check_odd_fundamental(d)?;
        if sign != 1 && sign != -1 {
            return Err(Error::Argument(format!("pi sign must be +-1, got {sign}")));
        }
        let (h, _) = class_number_imag_quad(d)?;
        Ok(ImagQuadField {
            d,
            pi_trace: sign,
            pi_norm: (1 + d as i64) / 4,
            h,
            w: if d == 3 { 6 } else { 2 },
        })
    }

    pub fn disc(&self) -> i64 {
        -(self.d as i64)
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        prime_divisors(self.d)
    }

    /// chi_k(m), the Kronecker symbol (-D/m).
    pub fn chi(&self, m: i128) -> i32 {
        jacobi(m, self.d)
    }

    fn t(&self) -> Rat {
        Rat::from_integer(self.pi_trace as i128)
    }
    fn nm(&self) -> Rat {
        Rat::from_integer(self.pi_norm as i128)
    }

    pub fn mul(&self, x: &KElem, y: &KElem) -> KElem {
        let bd = x.b * y.b;
        KElem::new(
            x.a * y.a - self.nm() * bd,
            x.a * y.b + x.b * y.a + self.t() * bd,
        )
    }

    pub fn conj(&self, x: &KElem) -> KElem {
        KElem::new(x.a + x.b * self.t(), -x.b)
    }

    pub fn norm(&self, x: &KElem) -> Rat {
        x.a * x.a + self.t() * x.a * x.b + self.nm() * x.b * x.b
    }

    pub fn trace(&self, x: &KElem) -> Rat {
        Rat::from_integer(2) * x.a + self.t() * x.b
    }

    pub fn inv(&self, x: &KElem) -> Option<KElem> {
        let n = self.norm(x);
        if n.is_zero() {
            return None;
        }
        Some(self.conj(x).scale(Rat::one() / n))
    }

    pub fn div(&self, x: &KElem, y: &KElem) -> Option<KElem> {
        Some(self.mul(x, &self.inv(y)?))
    }

    /// True if the element is fixed by conjugation.
    pub fn is_rational(&self, x: &KElem) -> bool {
        x.b.is_zero()
    }

    pub fn sqrt_minus_d(&self) -> KElem {
        // 2 pi - t = sqrt(-D)
        KElem::new(-self.t(), Rat::from_integer(2))
    }

    pub fn to_c64(&self, x: &KElem) -> C64 {
        let pi = C64::new(self.pi_trace as f64 / 2.0, (self.d as f64).sqrt() / 2.0);
        let a = *x.a.numer() as f64 / *x.a.denom() as f64;
        let b = *x.b.numer() as f64 / *x.b.denom() as f64;
        C64::new(a, 0.0) + pi * b
    }

    /// Integral elements `a + b pi` of norm at most `bound`, including zero.
    pub fn elements_up_to_norm(&self, bound: i128) -> Vec<(i128, i128, i128)> {
        let t = self.pi_trace as i128;
        let nn = self.pi_norm as i128;
        let d = self.d as i128;
        // Norm = (a + t b/2)^2 + D b^2/4.
        let bmax = crate::arith::isqrt((4 * bound / d) as u128) as i128 + 1;
        let mut out = Vec::new();
        for b in -bmax..=bmax {
            let rest = 4 * bound - d * b * b;
            if rest < 0 {
                continue;
            }
            // (2a + t b)^2 <= rest
            let r = crate::arith::isqrt(rest as u128) as i128;
            let lo = (-r - t * b).div_euclid(2) - 1;
            let hi = (r - t * b).div_euclid(2) + 1;
            for a in lo..=hi {
                let n = a * a + t * a * b + nn * b * b;
                if n <= bound {
                    out.push((a, b, n));
                }
            }
        }
        out
    }

    /// Units of O_k as `(a, b)` pairs.
    pub fn units(&self) -> Vec<(i128, i128)> {
        self.elements_up_to_norm(1)
            .into_iter()
            .filter(|&(_, _, n)| n == 1)
            .map(|(a, b, _)| (a, b))
            .collect()
    }

    /// The prime ideal above a ramified prime q as an HNF Z-basis in the
    /// (1, pi) coordinates: rows (q, 0) and (r, 1) where pi = r mod p_q.
    pub fn ramified_prime_basis(&self, q: u64) -> Result<[[i128; 2]; 2]> {
        if self.d % q != 0 {
            return Err(Error::Argument(format!("{q} does not divide D = {}", self.d)));
        }
        let q = q as i128;
        // pi is a double root of x^2 - t x + N mod q, so pi = t/2 mod q.
        let inv2 = (q + 1) / 2;
        let r = (self.pi_trace as i128 * inv2).rem_euclid(q);
        // Z-basis {q, pi - r}
        Ok([[q, 0], [-r, 1]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_numbers() {
        for (d, h) in [(3, 1), (7, 1), (11, 1), (15, 2), (23, 3), (35, 2), (39, 4), (47, 5), (163, 1)] {
            assert_eq!(class_number_imag_quad(d).unwrap().0, h, "D = {d}");
        }
        assert!(class_number_imag_quad(4).is_err());
        assert!(class_number_imag_quad(63).is_err());
        assert!(class_number_imag_quad(5).is_err());
    }

    #[test]
    fn chi_values() {
        let k = ImagQuadField::new(7).unwrap();
        assert_eq!(k.chi(2), 1);
        assert_eq!(k.chi(-1), -1);
        assert_eq!(k.chi(14), 0);
        // squares mod 7 are 1,2,4
        for m in 1..7 {
            let expect = if [1, 2, 4].contains(&m) { 1 } else { -1 };
            assert_eq!(k.chi(m), expect);
        }
    }

    #[test]
    fn units_and_norms() {
        assert_eq!(ImagQuadField::new(3).unwrap().units().len(), 6);
        let k = ImagQuadField::new(7).unwrap();
        assert_eq!(k.units().len(), 2);
        let pi = KElem::int(0, 1);
        assert_eq!(k.norm(&pi), Rat::from_integer(2));
        assert_eq!(k.trace(&pi), Rat::from_integer(1));
        let s = k.sqrt_minus_d();
        assert_eq!(k.mul(&s, &s), KElem::int(-7, 0));
        let km = ImagQuadField::with_pi_sign(7, -1).unwrap();
        let s = km.sqrt_minus_d();
        assert_eq!(km.mul(&s, &s), KElem::int(-7, 0));
    }

    #[test]
    fn root4_arith() {
        assert_eq!(delta_p(5).unwrap(), Root4::ONE);
        assert_eq!(delta_p(7).unwrap(), Root4::I);
        assert!(delta_p(2).is_err());
        for r in 0..4 {
            assert_eq!(Root4(r).pow(4), Root4::ONE);
            assert_eq!(Root4(r) * Root4(r).conj(), Root4::ONE);
        }
    }
}
