//! Counting ideals B of O_E with B conj(B) = b O_E, by formula and by brute force.

use crate::fields::{CMExtension, FactoredIdealF, PrimeIdealF, Splitting};
use crate::linalg::{hnf, IMat};
use crate::{Error, Result};
use std::collections::HashMap;

/// rho(b): 0 unless b is integral; else split p^k -> k+1, inert p^k -> [k even], ramified -> 1.
pub fn rho_count(e: &CMExtension, b: &FactoredIdealF) -> u64 {
    if !b.is_integral() {
        return 0;
    }
    let mut r = 1u64;
    for (p, k) in &b.parts {
        let k = *k as u64;
        r *= match e.splitting_in_e(p) {
            Splitting::Split => k + 1,
            Splitting::Inert => u64::from(k % 2 == 0),
            Splitting::Ramified => 1,
        };
    }
    r
}

/// Integer arithmetic in O_E = O_F[pi] with O_F = Z[theta]; an element u + v pi is stored as (v, u).
struct OE {
    n: usize,
    poly: Vec<i128>,
    t: i128,
    npi: i128,
}

impl OE {
    fn new(e: &CMExtension) -> Result<Self> {
        if e.f.index != 1 {
            return Err(Error::UnsupportedPrime {
                prime: crate::arith::prime_divisors(e.f.index as u64)[0],
                reason: "ideal enumeration needs O_F = Z[theta]".into(),
            });
        }
        Ok(OE { n: e.n(), poly: e.f.min_poly.clone(), t: e.k.pi_trace as i128, npi: e.k.pi_norm as i128 })
    }

    fn mul_f(&self, a: &[i128], b: &[i128]) -> Vec<i128> {
        let n = self.n;
        let mut c = vec![0i128; 2 * n];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                c[i + j] += a[i] * b[j];
            }
        }
        for d in (n..2 * n).rev() {
            let x = c[d];
            if x != 0 {
                for i in 0..n {
                    c[d - n + i] -= x * self.poly[i];
                }
                c[d] = 0;
            }
        }
        c.truncate(n);
        c
    }

    fn split<'a>(&self, x: &'a [i128]) -> (&'a [i128], &'a [i128]) {
        (&x[..self.n], &x[self.n..])
    }

    fn join(v: Vec<i128>, u: Vec<i128>) -> Vec<i128> {
        v.into_iter().chain(u).collect()
    }

    fn mul(&self, x: &[i128], y: &[i128]) -> Vec<i128> {
        let (v1, u1) = self.split(x);
        let (v2, u2) = self.split(y);
        let vv = self.mul_f(v1, v2);
        let uu = self.mul_f(u1, u2);
        let uv = self.mul_f(u1, v2);
        let vu = self.mul_f(v1, u2);
        let u: Vec<i128> = (0..self.n).map(|i| uu[i] - self.npi * vv[i]).collect();
        let v: Vec<i128> = (0..self.n).map(|i| uv[i] + vu[i] + self.t * vv[i]).collect();
        Self::join(v, u)
    }

    fn conj(&self, x: &[i128]) -> Vec<i128> {
        let (v, u) = self.split(x);
        Self::join(v.iter().map(|a| -a).collect(), (0..self.n).map(|i| u[i] + self.t * v[i]).collect())
    }

    fn theta(&self) -> Vec<i128> {
        let mut x = vec![0i128; 2 * self.n];
        if self.n > 1 {
            x[self.n + 1] = 1;
        } else {
            x[self.n] = -self.poly[0];
        }
        x
    }

    fn pi(&self) -> Vec<i128> {
        let mut x = vec![0i128; 2 * self.n];
        x[0] = 1;
        x
    }
}

/// Membership in the lattice of a full-rank upper echelon basis.
fn contains(rows: &IMat, x: &[i128]) -> bool {
    let mut v = x.to_vec();
    for (j, r) in rows.iter().enumerate() {
        if v[j] % r[j] != 0 {
            return false;
        }
        let c = v[j] / r[j];
        if c != 0 {
            for t in j..v.len() {
                v[t] -= c * r[t];
            }
        }
    }
    true
}

/// All upper echelon HNF bases of sublattices of Z^dim with index `index`.
fn hnf_lattices(dim: usize, index: u64) -> Vec<IMat> {
    fn rec(dim: usize, row: usize, left: u64, diag: &mut Vec<i128>, out: &mut Vec<Vec<i128>>) {
        if row == dim {
            if left == 1 {
                out.push(diag.clone());
            }
            return;
        }
        for d in crate::arith::divisors(left) {
            diag.push(d as i128);
            rec(dim, row + 1, left / d, diag, out);
            diag.pop();
        }
    }
    let mut diags = Vec::new();
    rec(dim, 0, index, &mut Vec::new(), &mut diags);
    let mut out = Vec::new();
    for diag in diags {
        // free entries (i, j), j > i, each in [0, diag[j])
        let slots: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
        let total: u64 = slots.iter().map(|&(_, j)| diag[j] as u64).product();
        for mut idx in 0..total {
            let mut m = vec![vec![0i128; dim]; dim];
            for i in 0..dim {
                m[i][i] = diag[i];
            }
            for &(i, j) in &slots {
                let d = diag[j] as u64;
                m[i][j] = (idx % d) as i128;
                idx /= d;
            }
            out.push(m);
        }
    }
    out
}

/// Brute-force list of the ideals of O_E of absolute norm ell^k, as upper echelon bases in (v, u) coordinates.
fn ideals_of_norm_prime_power(o: &OE, ell: u64, k: u32) -> Vec<IMat> {
    let n = o.n;
    let theta_f: Vec<i128> = o.theta()[n..].to_vec();
    let stable = |m: &IMat| m.iter().all(|r| contains(m, &o.mul_f(&theta_f, r)));
    let gens = [o.theta(), o.pi()];
    let mut out = Vec::new();
    for a in 0..=k {
        let n1 = ell.pow(a);
        let fa: Vec<IMat> = hnf_lattices(n, n1).into_iter().filter(|m| stable(m)).collect();
        let ps: Vec<IMat> = hnf_lattices(n, ell.pow(k - a)).into_iter().filter(|m| stable(m)).collect();
        for fa_m in &fa {
            let diag_a: Vec<u64> = (0..n).map(|i| fa_m[i][i] as u64).collect();
            let lifts: u64 = diag_a.iter().product::<u64>().pow(n as u32);
            for p in &ps {
                if !fa_m.iter().all(|r| contains(p, r)) {
                    continue;
                }
                for mut idx in 0..lifts {
                    let mut rows: IMat = Vec::with_capacity(2 * n);
                    for i in 0..n {
                        let mut u = vec![0i128; n];
                        for j in 0..n {
                            u[j] = (idx % diag_a[j]) as i128;
                            idx /= diag_a[j];
                        }
                        rows.push(OE::join(p[i].clone(), u));
                    }
                    for r in fa_m {
                        rows.push(OE::join(vec![0; n], r.clone()));
                    }
                    let closed = rows.iter().all(|r| gens.iter().all(|g| contains(&rows, &o.mul(g, r))));
                    if closed {
                        out.push(rows);
                    }
                }
            }
        }
    }
    out
}

/// HNF of B conj(B) restricted to O_F, i.e. the O_F-ideal b with B conj(B) = b O_E.
fn relative_norm_key(o: &OE, rows: &IMat, modulus: i128) -> IMat {
    let mut gens = Vec::new();
    for r in rows {
        let c = o.conj(r);
        for s in rows {
            gens.push(o.mul(s, &c));
        }
    }
    let h = hnf(&gens, Some(modulus));
    let tail: IMat = h[o.n..].iter().map(|r| r[o.n..].to_vec()).collect();
    hnf(&tail, None)
}

/// Upper HNF of an integral O_F-ideal given in factored form.
fn ideal_hnf_f(o: &OE, b: &FactoredIdealF) -> IMat {
    let n = o.n;
    let mut cur: IMat = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let mut norm = 1i128;
    for (p, k) in &b.parts {
        let ell = p.ell as i128;
        let mut th = vec![0i128; n];
        if n > 1 {
            th[1] = 1;
        } else {
            th[0] = -o.poly[0];
        }
        // p = (ell, g(theta)) with g the lifted factor, evaluated by Horner
        let mut g = vec![0i128; n];
        for &c in p.factor.iter().rev() {
            g = o.mul_f(&g, &th);
            g[0] += c as i128;
        }
        let mut pgens = Vec::new();
        let mut th_pow = vec![0i128; n];
        th_pow[0] = 1;
        for _ in 0..n {
            pgens.push(th_pow.iter().map(|x| x * ell).collect::<Vec<_>>());
            pgens.push(o.mul_f(&g, &th_pow));
            th_pow = o.mul_f(&th_pow, &th);
        }
        let pb = hnf(&pgens, Some(ell));
        for _ in 0..*k {
            norm *= (p.norm()) as i128;
            let mut prod = Vec::new();
            for a in &cur {
                for c in &pb {
                    prod.push(o.mul_f(a, c));
                }
            }
            cur = hnf(&prod, Some(norm));
        }
    }
    hnf(&cur, None)
}

fn prime_power_parts(b: &FactoredIdealF) -> HashMap<u64, FactoredIdealF> {
    let mut m: HashMap<u64, FactoredIdealF> = HashMap::new();
    for (p, k) in &b.parts {
        m.entry(p.ell).or_insert_with(FactoredIdealF::unit).parts.push((p.clone(), *k));
    }
    m
}

/// All integral ideals of F with norm <= bound, in factored form.
pub fn integral_ideals_up_to(e: &CMExtension, bound: u64) -> Result<Vec<FactoredIdealF>> {
    let mut primes: Vec<PrimeIdealF> = Vec::new();
    for ell in crate::arith::primes_up_to(bound) {
        for p in e.f.factor_rational_prime(ell)? {
            if p.norm() <= bound as u128 {
                primes.push(p);
            }
        }
    }
    let mut out = Vec::new();
    fn rec(ps: &[PrimeIdealF], i: usize, norm: u128, bound: u128, cur: &mut Vec<(PrimeIdealF, i64)>, out: &mut Vec<FactoredIdealF>) {
        if i == ps.len() {
            out.push(FactoredIdealF { parts: cur.clone() });
            return;
        }
        rec(ps, i + 1, norm, bound, cur, out);
        let mut nn = norm * ps[i].norm();
        let mut k = 1;
        while nn <= bound {
            cur.push((ps[i].clone(), k));
            rec(ps, i + 1, nn, bound, cur, out);
            cur.pop();
            k += 1;
            nn *= ps[i].norm();
        }
    }
    rec(&primes, 0, 1, bound as u128, &mut Vec::new(), &mut out);
    Ok(out)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct RhoCheck {
    pub ideals_checked: usize,
    pub ideals_of_e_found: usize,
    pub mismatches: Vec<String>,
}

/// Compare rho(b) with brute-force counts for every integral b of norm <= bound.
/// The enumeration is done one rational prime at a time and the counts multiplied.
pub fn rho_check(e: &CMExtension, bound: u64) -> Result<RhoCheck> {
    let o = OE::new(e)?;
    let mut tallies: HashMap<(u64, IMat), u64> = HashMap::new();
    let mut found = 0usize;
    for ell in crate::arith::primes_up_to(bound) {
        let mut k = 1u32;
        while ell.pow(k) <= bound {
            let modulus = (ell as i128).pow(2 * k);
            for rows in ideals_of_norm_prime_power(&o, ell, k) {
                found += 1;
                let key = relative_norm_key(&o, &rows, modulus);
                *tallies.entry((ell, key)).or_default() += 1;
            }
            k += 1;
        }
    }
    let ideals = integral_ideals_up_to(e, bound)?;
    let mut mismatches = Vec::new();
    for b in &ideals {
        let formula = rho_count(e, b);
        let mut brute = 1u64;
        for (ell, part) in prime_power_parts(b) {
            let key = ideal_hnf_f(&o, &part);
            brute *= tallies.get(&(ell, key)).copied().unwrap_or(0);
        }
        if formula != brute {
            mismatches.push(format!("norm {}: formula {formula}, enumeration {brute}", b.norm()));
        }
    }
    Ok(RhoCheck { ideals_checked: ideals.len(), ideals_of_e_found: found, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{ImagQuadField, TotallyRealField};

    fn ext(d: u64, poly: &[i128]) -> CMExtension {
        CMExtension::new(ImagQuadField::new(d).unwrap(), TotallyRealField::new(poly, None).unwrap()).unwrap()
    }

    #[test]
    fn unit_and_inert() {
        let e = ext(7, &[-1, -1, 1]);
        assert_eq!(rho_count(&e, &FactoredIdealF::unit()), 1);
        // (sqrt 5) has norm 5 and chi_{-7}(5) = -1
        let p5 = e.f.factor_rational_prime(5).unwrap().remove(0);
        assert_eq!(e.splitting_in_e(&p5), Splitting::Inert);
        let b = FactoredIdealF { parts: vec![(p5.clone(), 1)] };
        assert_eq!(rho_count(&e, &b), 0);
        let b2 = FactoredIdealF { parts: vec![(p5, 2)] };
        assert_eq!(rho_count(&e, &b2), 1);
        let neg = FactoredIdealF { parts: vec![(e.ramified[0].clone(), -1)] };
        assert_eq!(rho_count(&e, &neg), 0);
    }

    #[test]
    fn hnf_lattice_count() {
        // sublattices of index p in Z^2: p + 1
        assert_eq!(hnf_lattices(2, 5).len(), 6);
        assert_eq!(hnf_lattices(3, 2).len(), 7);
    }

    #[test]
    fn brute_force_small() {
        let e = ext(7, &[-1, -1, 1]);
        let c = rho_check(&e, 60).unwrap();
        assert!(c.mismatches.is_empty(), "{:?}", c.mismatches);
        assert!(c.ideals_checked > 20);
    }
}
