//! Dirichlet characters and their L-values through the Hurwitz zeta function.

use super::special::{hurwitz, Dual};
use crate::arith::{factor, jacobi, mod_pow};
use crate::{Error, Result, Rat, C64};
use num_integer::Integer;

/// A Dirichlet character given by its value table mod `modulus`.
#[derive(Clone, Debug)]
pub struct DirichletChar {
    pub modulus: u64,
    pub values: Vec<C64>,
}

impl DirichletChar {
    /// The Kronecker character (-D / .) for odd fundamental -D, as a character mod D.
    pub fn kronecker_neg(d: u64) -> Self {
        let values = (0..d).map(|a| C64::new(jacobi(a as i128, d) as f64, 0.0)).collect();
        DirichletChar { modulus: d, values }
    }

    pub fn trivial() -> Self {
        DirichletChar { modulus: 1, values: vec![C64::new(1.0, 0.0)] }
    }

    pub fn eval(&self, a: i128) -> C64 {
        self.values[a.rem_euclid(self.modulus as i128) as usize]
    }

    /// Product character mod lcm of the moduli.
    pub fn mul(&self, o: &DirichletChar) -> DirichletChar {
        let m = self.modulus.lcm(&o.modulus);
        let values = (0..m as i128).map(|a| self.eval(a) * o.eval(a)).collect();
        DirichletChar { modulus: m, values }
    }

    pub fn is_odd(&self) -> bool {
        (self.eval(-1) + 1.0).norm() < 1e-9
    }

    /// Smallest f | modulus such that the character factors through (Z/f)^*.
    pub fn conductor(&self) -> u64 {
        let m = self.modulus;
        crate::arith::divisors(m)
            .into_iter()
            .find(|&f| {
                (1..m as i128)
                    .filter(|&a| a.gcd(&(m as i128)) == 1 && (a - 1) % f as i128 == 0)
                    .all(|a| (self.eval(a) - 1.0).norm() < 1e-9)
            })
            .unwrap_or(m)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// L(s, chi) and dL/ds for real s != 1 via L = q^{-s} sum_a chi(a) zeta(s, a/q).
    pub fn l_value(&self, s: f64) -> (C64, C64) {
        let q = self.modulus as f64;
        let qs = Dual::pow_base(q, -Dual::var(s));
        let mut v = C64::new(0.0, 0.0);
        let mut d = C64::new(0.0, 0.0);
        for a in 1..=self.modulus {
            let c = self.values[(a % self.modulus) as usize];
            if c.norm() == 0.0 {
                continue;
            }
            let h = hurwitz(s, a as f64 / q) * qs;
            v += c * h.v;
            d += c * h.d;
        }
        (v, d)
    }
}

/// All characters of (Z/f)^*, built from cyclic factors of the prime-power parts.
pub fn all_characters(f: u64) -> Vec<DirichletChar> {
    if f == 1 {
        return vec![DirichletChar::trivial()];
    }
    // cyclic generators (g, order) with CRT lifts
    let mut gens: Vec<(u64, u64)> = Vec::new();
    for (p, k) in factor(f) {
        let pk = p.pow(k);
        let rest = f / pk;
        let lift = |x: u64| -> u64 {
            // x mod pk, 1 mod rest
            (0..f).find(|&y| y % pk == x % pk && y % rest == 1 % rest).unwrap()
        };
        let phi = pk / p * (p - 1);
        if p == 2 {
            if k >= 2 {
                gens.push((lift(pk - 1), 2));
            }
            if k >= 3 {
                gens.push((lift(5), pk / 4));
            }
        } else {
            let g = (2..pk)
                .find(|&g| g % p != 0 && (1..phi).all(|e| phi % e != 0 || mod_pow(g, e, pk) != 1))
                .unwrap();
            gens.push((lift(g), phi));
        }
    }
    // discrete logs by walking the group
    let mut logs: Vec<Option<Vec<u64>>> = vec![None; f as usize];
    let mut stack = vec![(1u64, vec![0u64; gens.len()])];
    logs[1 % f as usize] = Some(vec![0; gens.len()]);
    while let Some((x, e)) = stack.pop() {
        for (i, &(g, ord)) in gens.iter().enumerate() {
            let y = (x as u128 * g as u128 % f as u128) as u64;
            if logs[y as usize].is_none() {
                let mut e2 = e.clone();
                e2[i] = (e2[i] + 1) % ord;
                logs[y as usize] = Some(e2.clone());
                stack.push((y, e2));
            }
        }
    }
    let orders: Vec<u64> = gens.iter().map(|g| g.1).collect();
    let total: u64 = orders.iter().product();
    let mut out = Vec::new();
    for idx in 0..total {
        let mut js = Vec::new();
        let mut t = idx;
        for &o in &orders {
            js.push(t % o);
            t /= o;
        }
        let values = (0..f)
            .map(|a| match &logs[a as usize] {
                Some(e) if a.gcd(&f) == 1 => {
                    let mut ph = Rat::from_integer(0);
                    for i in 0..orders.len() {
                        ph += Rat::new((js[i] * e[i]) as i128, orders[i] as i128);
                    }
                    super::super::weilrep::e(ph)
                }
                _ => C64::new(0.0, 0.0),
            })
            .collect();
        out.push(DirichletChar { modulus: f, values });
    }
    out
}

/// L(0, chi_{-D}) = -(1/D) sum_{a=1}^{D-1} chi(a) a, exactly.
pub fn l0_exact(d: u64) -> Rat {
    let s: i128 = (1..d as i128).map(|a| jacobi(a, d) as i128 * a).sum();
    Rat::new(-s, d as i128)
}

/// (L(0, chi_{-D}) exact, L'(0, chi_{-D})) for odd fundamental -D.
pub fn dirichlet_l_deriv0(d: u64) -> Result<(Rat, f64)> {
    crate::fields::quadratic::check_odd_fundamental(d)?;
    let chi = DirichletChar::kronecker_neg(d);
    if !chi.is_odd() {
        return Err(Error::Argument("character is even".into()));
    }
    let (_, der) = chi.l_value(0.0);
    Ok((l0_exact(d), der.re))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::class_number_imag_quad;

    #[test]
    fn class_number_formula_small() {
        assert_eq!(l0_exact(7), Rat::from_integer(1));
        assert_eq!(l0_exact(35), Rat::from_integer(2));
        assert_eq!(l0_exact(3), Rat::new(1, 3));
        for d in crate::arith::odd_fundamental_discriminants(200) {
            let (h, _) = class_number_imag_quad(d).unwrap();
            let w = if d == 3 { 6 } else { 2 };
            assert_eq!(l0_exact(d), Rat::new(2 * h as i128, w), "D = {d}");
            let (v, _) = DirichletChar::kronecker_neg(d).l_value(0.0);
            assert!((v.re - 2.0 * h as f64 / w as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn derivative_against_lgamma() {
        // L'(0, chi) = sum_a chi(a) ln Gamma(a/D) - L(0, chi) ln D
        for d in [3u64, 7, 11, 19, 35] {
            let (l0, der) = dirichlet_l_deriv0(d).unwrap();
            let l0 = *l0.numer() as f64 / *l0.denom() as f64;
            let want: f64 = -l0 * (d as f64).ln()
                + (1..d)
                .map(|a| jacobi(a as i128, d) as f64 * statrs::function::gamma::ln_gamma(a as f64 / d as f64))
                .sum::<f64>();
            assert!((der - want).abs() < 1e-11, "D = {d}");
        }
    }

    #[test]
    fn characters_mod_9_and_63() {
        let cs = all_characters(9);
        assert_eq!(cs.len(), 6);
        let cubic: Vec<_> = cs.iter().filter(|c| (c.eval(2).powu(3) - 1.0).norm() < 1e-9 && c.conductor() == 9).collect();
        assert_eq!(cubic.len(), 2);
        assert_eq!(all_characters(8).len(), 4);
        let psi = DirichletChar::kronecker_neg(7).mul(cubic[0]);
        assert_eq!(psi.modulus, 63);
        assert!(psi.is_primitive());
        assert!(psi.is_odd());
    }
}
