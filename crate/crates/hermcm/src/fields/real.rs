//! Totally real number fields F = Q(theta) given by a monic defining polynomial,
//! with arithmetic in the power basis and prime factorization away from the index.

use super::poly::{
    count_real_roots, discriminant, factor_mod_p, hensel_lift, mulmod_monic, qpoly_from_int,
    real_roots, rem_monic_mod, PolyFp,
};
use crate::arith::{factor, is_prime, isqrt, prime_divisors, valuation};
use crate::linalg::{det_rat, inverse_rat, QMat};
use crate::{Error, Result, Rat};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
#[cfg(test)]
use num_traits::Signed;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Field element in power-basis coordinates.
pub type FElem = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimeIdealF {
    pub ell: u64,
    pub f: u32,
    pub e: u32,
    /// Monic irreducible factor of the defining polynomial mod ell.
    pub factor: Vec<u64>,
}

impl PrimeIdealF {
    pub fn norm(&self) -> u128 {
        (self.ell as u128).pow(self.f)
    }
    pub fn factor_poly(&self) -> PolyFp {
        PolyFp::new(self.ell, self.factor.clone())
    }
}

impl std::fmt::Display for PrimeIdealF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P({}; f={}, e={}, g={:?})", self.ell, self.f, self.e, self.factor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredIdealF {
    pub parts: Vec<(PrimeIdealF, i64)>,
}

impl FactoredIdealF {
    pub fn unit() -> Self {
        FactoredIdealF { parts: Vec::new() }
    }
    pub fn is_integral(&self) -> bool {
        self.parts.iter().all(|(_, k)| *k >= 0)
    }
    pub fn exponent(&self, p: &PrimeIdealF) -> i64 {
        self.parts
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, k)| *k)
    }
    pub fn mul(&self, o: &FactoredIdealF) -> FactoredIdealF {
        let mut parts = self.parts.clone();
        for (p, k) in &o.parts {
            if let Some(x) = parts.iter_mut().find(|(q, _)| q == p) {
                x.1 += k;
            } else {
                parts.push((p.clone(), *k));
            }
        }
        parts.retain(|(_, k)| *k != 0);
        parts.sort();
        FactoredIdealF { parts }
    }
    pub fn pow(p: &PrimeIdealF, k: i64) -> FactoredIdealF {
        let parts = if k == 0 { Vec::new() } else { vec![(p.clone(), k)] };
        FactoredIdealF { parts }
    }
    /// Absolute norm as a rational.
    pub fn norm(&self) -> Rat {
        let mut n = Rat::one();
        for (p, k) in &self.parts {
            let pn = Rat::from_integer(p.norm() as i128);
            n *= if *k >= 0 {
                pn.pow(*k as i32)
            } else {
                Rat::one() / pn.pow((-*k) as i32)
            };
        }
        n
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TotallyRealField {
    pub min_poly: Vec<i128>,
    pub n: usize,
    pub disc_poly: i128,
    pub disc_f: i128,
    /// Index of Z[theta] in O_F.
    pub index: i128,
    /// Real embeddings of theta, ascending.
    pub roots: Vec<f64>,
    /// Traces Tr(theta^i) for i < 2n.
    power_traces: Vec<i128>,
}

fn seeded(ell: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed ^ ell)
}

impl TotallyRealField {
    /// Q itself, presented by the polynomial x.
    pub fn rationals() -> Self {
        Self::new(&[0, 1], None).expect("Q is totally real")
    }

    /// Build F from a monic polynomial (ascending coefficients). `disc_f` may be
    /// supplied when the power basis is not maximal at some prime.
    pub fn new(min_poly: &[i128], disc_f: Option<i128>) -> Result<Self> {
        let n = min_poly.len().saturating_sub(1);
        if n == 0 || *min_poly.last().unwrap() != 1 {
            return Err(Error::Field("defining polynomial must be monic of degree >= 1".into()));
        }
        let disc_big = if n == 1 { BigInt::one() } else { discriminant(min_poly) };
        if disc_big.is_zero() {
            return Err(Error::Field("defining polynomial is not squarefree".into()));
        }
        let disc_poly = disc_big
            .to_i128()
            .ok_or_else(|| Error::Field("polynomial discriminant too large".into()))?;
        if n > 1 && count_real_roots(&qpoly_from_int(min_poly)) != n {
            return Err(Error::Field(format!(
                "polynomial {min_poly:?} is not totally real"
            )));
        }
        let roots = if n == 1 { vec![-min_poly[0] as f64] } else { real_roots(min_poly) };
        let mut field = TotallyRealField {
            min_poly: min_poly.to_vec(),
            n,
            disc_poly,
            disc_f: disc_poly,
            index: 1,
            roots,
            power_traces: Vec::new(),
        };
        field.power_traces = field.compute_power_traces();
        field.check_irreducible()?;
        match disc_f {
            Some(df) => {
                if df == 0 || disc_poly % df != 0 {
                    return Err(Error::Field(format!(
                        "declared disc_F {df} does not divide disc(poly) {disc_poly}"
                    )));
                }
                let q = disc_poly / df;
                let r = isqrt(q.unsigned_abs()) as i128;
                if q < 0 || r * r != q {
                    return Err(Error::Field(format!(
                        "disc(poly)/disc_F = {q} is not a square"
                    )));
                }
                for p in prime_divisors(r as u64) {
                    if field.is_p_maximal(p) {
                        return Err(Error::Field(format!(
                            "declared disc_F conflicts with Dedekind criterion at {p}"
                        )));
                    }
                }
                field.disc_f = df;
                field.index = r;
            }
            None => {
                for (p, e) in factor(disc_poly.unsigned_abs() as u64) {
                    if e >= 2 && !field.is_p_maximal(p) {
                        return Err(Error::UnsupportedPrime {
                            prime: p,
                            reason: "Z[theta] is not maximal here; supply disc_F".into(),
                        });
                    }
                }
            }
        }
        Ok(field)
    }

    fn check_irreducible(&self) -> Result<()> {
        if self.n == 1 {
            return Ok(());
        }
        // Rational roots are integers dividing the constant term.
        let c0 = self.min_poly[0];
        if c0 == 0 {
            return Err(Error::Field("defining polynomial has root 0".into()));
        }
        if self.n <= 3 {
            for d in crate::arith::divisors(c0.unsigned_abs() as u64) {
                for s in [-1i128, 1] {
                    let x = s * d as i128;
                    let v = self.min_poly.iter().rev().fold(0i128, |acc, &a| acc * x + a);
                    if v == 0 {
                        return Err(Error::Field("defining polynomial is reducible".into()));
                    }
                }
            }
            return Ok(());
        }
        // Higher degree: certify via a prime where the polynomial stays irreducible,
        // or via degree patterns that force irreducibility.
        let mut possible: Vec<bool> = vec![true; self.n];
        for p in crate::arith::primes_up_to(2000) {
            if self.disc_poly % p as i128 == 0 {
                continue;
            }
            let fac = factor_mod_p(&PolyFp::from_int(p, &self.min_poly), &mut seeded(p));
            // achievable degrees of a rational factor must be subset sums here
            let degs: Vec<usize> = fac.iter().map(|(g, _)| g.degree() as usize).collect();
            let mut sums = vec![false; self.n + 1];
            sums[0] = true;
            for d in degs {
                for s in (d..=self.n).rev() {
                    if sums[s - d] {
                        sums[s] = true;
                    }
                }
            }
            for d in 1..self.n {
                possible[d] = possible[d] && sums[d];
            }
            if (1..self.n).all(|d| !possible[d]) {
                return Ok(());
            }
        }
        Err(Error::Field("could not certify irreducibility".into()))
    }

    fn compute_power_traces(&self) -> Vec<i128> {
        // Newton identities for the monic polynomial.
        let n = self.n;
        let a = |i: usize| self.min_poly[i]; // x^n + a_{n-1} x^{n-1} + ... + a_0
        let mut s = vec![0i128; 2 * n];
        s[0] = n as i128;
        for k in 1..2 * n {
            let mut v = 0i128;
            for i in 1..=k.min(n) {
                let coef = a(n - i);
                if i < k {
                    v -= coef * s[k - i];
                } else {
                    v -= coef * k as i128;
                }
            }
            s[k] = v;
        }
        s
    }

    /// Dedekind criterion: is Z[theta] maximal at p?
    pub fn is_p_maximal(&self, p: u64) -> bool {
        let f = PolyFp::from_int(p, &self.min_poly);
        let fac = factor_mod_p(&f, &mut seeded(p));
        let mut g = PolyFp::one(p);
        let mut h = PolyFp::one(p);
        for (gi, e) in &fac {
            g = g.mul(gi);
            for _ in 1..*e {
                h = h.mul(gi);
            }
        }
        let lift = |q: &PolyFp| -> Vec<i128> { q.c.iter().map(|&x| x as i128).collect() };
        let gl = lift(&g);
        let hl = lift(&h);
        let mut gh = vec![0i128; gl.len() + hl.len() - 1];
        for (i, &x) in gl.iter().enumerate() {
            for (j, &y) in hl.iter().enumerate() {
                gh[i + j] += x * y;
            }
        }
        let fz: Vec<i128> = (0..gh.len().max(self.min_poly.len()))
            .map(|i| {
                let d = gh.get(i).copied().unwrap_or(0) - self.min_poly.get(i).copied().unwrap_or(0);
                assert_eq!(d % p as i128, 0);
                d / p as i128
            })
            .collect();
        let ff = PolyFp::from_int(p, &fz);
        ff.gcd(&g).gcd(&h).degree() == 0
    }

    pub fn is_rational_field(&self) -> bool {
        self.n == 1
    }

    pub fn zero(&self) -> FElem {
        vec![Rat::zero(); self.n]
    }
    pub fn from_int(&self, a: i128) -> FElem {
        let mut v = self.zero();
        v[0] = Rat::from_integer(a);
        v
    }
    pub fn theta(&self) -> FElem {
        let mut v = self.zero();
        if self.n == 1 {
            v[0] = Rat::from_integer(-self.min_poly[0]);
        } else {
            v[1] = Rat::one();
        }
        v
    }

    pub fn add(&self, x: &FElem, y: &FElem) -> FElem {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }
    pub fn sub(&self, x: &FElem, y: &FElem) -> FElem {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }
    pub fn scale(&self, x: &FElem, r: Rat) -> FElem {
        x.iter().map(|a| a * r).collect()
    }

    pub fn mul(&self, x: &FElem, y: &FElem) -> FElem {
        let n = self.n;
        let mut prod = vec![Rat::zero(); 2 * n - 1];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c.is_zero() {
                continue;
            }
            prod[k] = Rat::zero();
            for i in 0..n {
                prod[k - n + i] -= c * Rat::from_integer(self.min_poly[i]);
            }
        }
        prod.truncate(n);
        prod
    }

    /// Matrix of multiplication by x; column j holds x * theta^j.
    pub fn mult_matrix(&self, x: &FElem) -> QMat {
        let mut cols = Vec::with_capacity(self.n);
        let mut basis = self.from_int(1);
        let th = self.theta();
        for _ in 0..self.n {
            cols.push(self.mul(x, &basis));
            basis = self.mul(&basis, &th);
        }
        crate::linalg::transpose(&cols)
    }

    pub fn norm(&self, x: &FElem) -> Rat {
        det_rat(&self.mult_matrix(x))
    }

    pub fn trace(&self, x: &FElem) -> Rat {
        x.iter()
            .enumerate()
            .fold(Rat::zero(), |s, (i, a)| s + a * Rat::from_integer(self.power_traces[i]))
    }

    pub fn inv(&self, x: &FElem) -> Option<FElem> {
        let m = inverse_rat(&self.mult_matrix(x))?;
        Some(m.iter().map(|row| row[0]).collect())
    }

    /// Trace form Gram matrix Tr(theta^(i+j)).
    pub fn trace_gram(&self) -> Vec<Vec<i128>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.power_traces[i + j]).collect())
            .collect()
    }

    pub fn embed(&self, x: &FElem) -> Vec<f64> {
        self.roots
            .iter()
            .map(|&r| {
                x.iter()
                    .rev()
                    .fold(0.0, |acc, a| acc * r + *a.numer() as f64 / *a.denom() as f64)
            })
            .collect()
    }

    /// f'(theta), which generates the different when Z[theta] is maximal.
    pub fn derivative_at_theta(&self) -> FElem {
        if self.n == 1 {
            return self.from_int(1);
        }
        let mut v = self.zero();
        for i in 1..=self.n {
            v[i - 1] += Rat::from_integer(self.min_poly[i] * i as i128);
        }
        v
    }

    /// Primes of F above ell.
    pub fn factor_rational_prime(&self, ell: u64) -> Result<Vec<PrimeIdealF>> {
        if !is_prime(ell) {
            return Err(Error::Argument(format!("{ell} is not prime")));
        }
        if self.index % ell as i128 == 0 {
            return Err(Error::UnsupportedPrime {
                prime: ell,
                reason: "divides the index of the power basis".into(),
            });
        }
        let f = PolyFp::from_int(ell, &self.min_poly);
        let fac = factor_mod_p(&f, &mut seeded(ell));
        Ok(fac
            .into_iter()
            .map(|(g, e)| PrimeIdealF {
                ell,
                f: g.degree() as u32,
                e,
                factor: g.c,
            })
            .collect())
    }

    fn local_factor(&self, p: &PrimeIdealF, k: u32) -> Vec<i128> {
        let g = p.factor_poly();
        let mut ge = PolyFp::one(p.ell);
        for _ in 0..p.e {
            ge = ge.mul(&g);
        }
        if p.e as usize * p.f as usize == self.n {
            let m = (p.ell as i128).pow(k);
            return self.min_poly.iter().map(|x| x.rem_euclid(m)).collect();
        }
        hensel_lift(&self.min_poly, &ge, p.ell, k)
    }

    /// Local norm N_{F_p/Q_ell}(x) returned as (valuation, unit part mod ell^t),
    /// t = 3 for ell = 2 and t = 1 otherwise, enough for Hilbert symbols at ell.
    pub fn local_norm(&self, x: &FElem, p: &PrimeIdealF) -> (i64, i128) {
        assert!(x.iter().any(|a| !a.is_zero()), "local norm of zero");
        let ell = p.ell as i128;
        let den = x.iter().fold(1i128, |l, a| num_integer::lcm(l, *a.denom()));
        let a: Vec<i128> = x.iter().map(|c| (c * Rat::from_integer(den)).to_integer()).collect();
        let na = self.norm(&a.iter().map(|&c| Rat::from_integer(c)).collect());
        let vmax = valuation(na.to_integer(), p.ell);
        let t = if ell == 2 { 3 } else { 1 };
        let k = vmax + t;
        // products of residues must fit in i128
        let m = ell
            .checked_pow(k)
            .filter(|m| *m < 1i128 << 62)
            .unwrap_or_else(|| panic!("local norm at {ell}^{k} exceeds the working precision"));
        let g = self.local_factor(p, k);
        let deg = g.len() - 1;
        let ar = rem_monic_mod(&a, &g, m);
        // multiplication matrix of a on the basis X^j mod g
        let mut mat = vec![vec![BigInt::zero(); deg]; deg];
        let mut basis = vec![0i128; deg];
        basis[0] = 1;
        for j in 0..deg {
            let col = mulmod_monic(&ar, &basis, &g, m);
            for i in 0..deg {
                mat[i][j] = BigInt::from(col[i]);
            }
            let mut shifted = vec![0i128; deg + 1];
            shifted[1..].copy_from_slice(&basis);
            basis = rem_monic_mod(&shifted, &g, m);
        }
        let det = bareiss(mat);
        let mb = BigInt::from(m);
        let mut d = ((det % &mb) + &mb) % &mb;
        assert!(!d.is_zero(), "insufficient p-adic precision");
        let lb = BigInt::from(ell);
        let mut v = 0i64;
        while (&d % &lb).is_zero() {
            d /= &lb;
            v += 1;
        }
        let modt = ell.pow(t);
        let mut u = (d % BigInt::from(modt)).to_i128().unwrap();
        // divide by den^deg
        let dv = valuation(den, p.ell) as i64;
        let dunit = den / ell.pow(dv as u32);
        v -= dv * deg as i64;
        let inv = crate::arith::mod_inv(dunit.rem_euclid(modt), modt).expect("unit part of the denominator");
        for _ in 0..deg {
            u = (u * inv).rem_euclid(modt);
        }
        (v, u)
    }

    /// v_p(x) for x != 0.
    pub fn valuation(&self, x: &FElem, p: &PrimeIdealF) -> i64 {
        let (v, _) = self.local_norm(x, p);
        assert_eq!(v % p.f as i64, 0);
        v / p.f as i64
    }

    /// Rational primes at which x can have nonzero valuation.
    pub fn support_primes(&self, x: &FElem) -> Vec<u64> {
        let den = x.iter().fold(1i128, |l, a| num_integer::lcm(l, *a.denom()));
        let a: FElem = x.iter().map(|c| c * Rat::from_integer(den)).collect();
        let na = self.norm(&a).to_integer();
        let mut ps: Vec<u64> = prime_divisors(den.unsigned_abs() as u64);
        for p in prime_divisors(na.unsigned_abs() as u64) {
            if !ps.contains(&p) {
                ps.push(p);
            }
        }
        ps.sort_unstable();
        ps
    }

    /// Factorization of the principal fractional ideal (x).
    pub fn factor_element(&self, x: &FElem) -> Result<FactoredIdealF> {
        let mut parts = Vec::new();
        for ell in self.support_primes(x) {
            for p in self.factor_rational_prime(ell)? {
                let v = self.valuation(x, &p);
                if v != 0 {
                    parts.push((p, v));
                }
            }
        }
        parts.sort();
        Ok(FactoredIdealF { parts })
    }

    /// Factorization of the different, valid when Z[theta] is maximal at disc primes.
    pub fn different(&self) -> Result<FactoredIdealF> {
        if self.index != 1 {
            return Err(Error::UnsupportedPrime {
                prime: prime_divisors(self.index as u64)[0],
                reason: "different requires a monogenic field".into(),
            });
        }
        self.factor_element(&self.derivative_at_theta())
    }

    pub fn is_totally_positive(&self, x: &FElem) -> bool {
        let emb = self.embed(x);
        let scale = x.iter().map(|a| (*a.numer() as f64 / *a.denom() as f64).abs()).sum::<f64>();
        emb.iter().all(|&v| v > 1e-12 * scale.max(1.0))
    }

    /// Sign vector of x under the ordered real embeddings.
    pub fn signs(&self, x: &FElem) -> Vec<i32> {
        self.embed(x).iter().map(|&v| if v > 0.0 { 1 } else { -1 }).collect()
    }

    /// Ideal counts by norm up to `x`.
    pub fn ideal_counts(&self, x: u64) -> Result<Vec<u64>> {
        let mut local: std::collections::HashMap<u64, Vec<u64>> = Default::default();
        let spf = crate::arith::spf_table(x as usize);
        for ell in crate::arith::primes_up_to(x) {
            let primes = self.factor_rational_prime(ell)?;
            let mut kmax = 0u32;
            let mut pk = 1u64;
            while pk.saturating_mul(ell) <= x {
                pk *= ell;
                kmax += 1;
            }
            // product of 1/(1 - t^f) truncated at t^kmax
            let mut coeffs = vec![0u64; kmax as usize + 1];
            coeffs[0] = 1;
            for p in &primes {
                let f = p.f as usize;
                for i in f..=kmax as usize {
                    coeffs[i] += coeffs[i - f];
                }
            }
            local.insert(ell, coeffs);
        }
        let mut counts = vec![0u64; x as usize + 1];
        if x >= 1 {
            counts[1] = 1;
        }
        for m in 2..=x as usize {
            let p = spf[m] as usize;
            let mut r = m;
            let mut k = 0;
            while r % p == 0 {
                r /= p;
                k += 1;
            }
            counts[m] = counts[r] * local[&(p as u64)][k];
        }
        Ok(counts)
    }
}

fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> TotallyRealField {
        TotallyRealField::new(&[-1, -1, 1], None).unwrap()
    }
    fn cubic81() -> TotallyRealField {
        TotallyRealField::new(&[-1, -3, 0, 1], None).unwrap()
    }

    #[test]
    fn basic_invariants() {
        let f = q5();
        assert_eq!(f.disc_f, 5);
        let c = cubic81();
        assert_eq!(c.disc_f, 81);
        assert_eq!(c.roots.len(), 3);
        assert!(TotallyRealField::new(&[1, 0, 1], None).is_err());
        assert!(TotallyRealField::new(&[-4, 0, 1], None).is_err());
        // x^2 - 5 has index 2
        assert!(matches!(
            TotallyRealField::new(&[-5, 0, 1], None),
            Err(Error::UnsupportedPrime { prime: 2, .. })
        ));
        let g = TotallyRealField::new(&[-5, 0, 1], Some(5)).unwrap();
        assert_eq!(g.index, 2);
        assert!(g.factor_rational_prime(2).is_err());
    }

    #[test]
    fn norm_trace_consistent_with_embeddings() {
        let c = cubic81();
        let x: FElem = vec![Rat::new(1, 2), Rat::from_integer(3), Rat::from_integer(-1)];
        let emb = c.embed(&x);
        let n: f64 = emb.iter().product();
        let t: f64 = emb.iter().sum();
        let nn = c.norm(&x);
        assert!((n - *nn.numer() as f64 / *nn.denom() as f64).abs() < 1e-9);
        let tt = c.trace(&x);
        assert!((t - *tt.numer() as f64 / *tt.denom() as f64).abs() < 1e-9);
        let inv = c.inv(&x).unwrap();
        assert_eq!(c.mul(&x, &inv), c.from_int(1));
    }

    #[test]
    fn prime_factorizations() {
        let c = cubic81();
        let p17 = c.factor_rational_prime(17).unwrap();
        assert_eq!(p17.iter().map(|p| p.e * p.f).sum::<u32>(), 3);
        let p3 = c.factor_rational_prime(3).unwrap();
        assert_eq!(p3.len(), 1);
        assert_eq!(p3[0].e, 3);
        let p2 = c.factor_rational_prime(2).unwrap();
        assert_eq!(p2.len(), 1);
        assert_eq!(p2[0].f, 3);
        let f = q5();
        assert_eq!(f.factor_rational_prime(5).unwrap()[0].e, 2);
        assert_eq!(f.factor_rational_prime(11).unwrap().len(), 2);
        assert_eq!(f.factor_rational_prime(7).unwrap()[0].f, 2);
    }

    #[test]
    fn valuations_sum_to_norm_valuation() {
        let c = cubic81();
        let x: FElem = vec![Rat::from_integer(6), Rat::from_integer(-4), Rat::new(7, 3)];
        let fac = c.factor_element(&x).unwrap();
        assert_eq!(fac.norm(), c.norm(&x).abs());
        let d = c.different().unwrap();
        assert_eq!(d.norm(), Rat::from_integer(81));
    }

    #[test]
    fn ideal_counts_match_zeta_of_q_sqrt5() {
        let f = q5();
        let counts = f.ideal_counts(20).unwrap();
        for m in 1..=20u64 {
            // zeta_F = zeta * L(chi_5): count(m) = sum_{d | m} (d/5)
            let expect: i64 = crate::arith::divisors(m)
                .into_iter()
                .map(|d| match d % 5 {
                    0 => 0,
                    1 | 4 => 1,
                    _ => -1,
                })
                .sum();
            assert_eq!(counts[m as usize] as i64, expect, "m = {m}");
        }
        let q = TotallyRealField::rationals();
        assert!(q.ideal_counts(30).unwrap()[1..].iter().all(|&c| c == 1));
        assert_eq!(q5().ideal_counts(1).unwrap(), vec![0, 1]);
    }
}
