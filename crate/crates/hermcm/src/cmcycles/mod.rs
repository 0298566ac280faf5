//! Diff sets, ideal counts, Eisenstein coefficients and CM degrees.

pub mod degrees;
pub mod rho;

pub use degrees::{deg_big, deg_big_exact, deg_small, dirichlet_chain, DirichletChain};
pub use rho::{integral_ideals_up_to, rho_check, rho_count, RhoCheck};

use crate::fields::local::hilbert_symbol_int;
use crate::fields::{CMExtension, FElem, FactoredIdealF, Place, PrimeIdealF, Splitting};
use crate::lfun::{completed_lambda, Mode};
use crate::linalg::{inverse_rat, qmat_vec};
use crate::{Error, Result, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// The CM extension together with beta: negative at the first real place only,
/// and generating the inverse different at every finite prime.
#[derive(Clone, Debug)]
pub struct EisensteinContext {
    pub e: CMExtension,
    pub beta: FElem,
    pub r: u32,
    different: FactoredIdealF,
}

fn unit_candidates(e: &CMExtension) -> Vec<FElem> {
    let f = &e.f;
    let n = f.n;
    let range = if n <= 3 { 3i128 } else { 1 };
    let width = (2 * range + 1) as usize;
    let mut out = Vec::new();
    for idx in 0..width.pow(n as u32) {
        let mut t = idx;
        let x: FElem = (0..n)
            .map(|_| {
                let c = (t % width) as i128 - range;
                t /= width;
                Rat::from_integer(c)
            })
            .collect();
        if x.iter().all(|c| c.numer() == &0) {
            continue;
        }
        let nm = f.norm(&x);
        if nm == Rat::from_integer(1) || nm == Rat::from_integer(-1) {
            out.push(x);
        }
    }
    out
}

impl EisensteinContext {
    pub fn new(e: &CMExtension) -> Result<Self> {
        let f = &e.f;
        let dinv = f
            .inv(&f.derivative_at_theta())
            .ok_or_else(|| Error::Field("f'(theta) is not invertible".into()))?;
        let mut want = vec![1; f.n];
        want[0] = -1;
        for u in unit_candidates(e) {
            let b = f.mul(&u, &dinv);
            if f.signs(&b) == want {
                return Self::with_beta(e, b);
            }
        }
        Err(Error::Field("no unit gives beta the required signs".into()))
    }

    pub fn with_beta(e: &CMExtension, beta: FElem) -> Result<Self> {
        let f = &e.f;
        let signs = f.signs(&beta);
        if signs.iter().filter(|&&s| s < 0).count() != 1 {
            return Err(Error::Argument(format!("beta must be negative at exactly one real place, signs {signs:?}")));
        }
        let different = f.different()?;
        let fb = f.factor_element(&beta)?.mul(&different);
        if !fb.parts.is_empty() {
            return Err(Error::Argument("beta does not generate the inverse different".into()));
        }
        Ok(EisensteinContext { e: e.clone(), beta, r: e.r, different })
    }

    /// Another valid beta: beta times the square of a unit.
    pub fn alternative_beta(&self) -> Result<FElem> {
        let f = &self.e.f;
        for u in unit_candidates(&self.e) {
            let u2 = f.mul(&u, &u);
            if u2 != f.from_int(1) {
                return Ok(f.mul(&self.beta, &u2));
            }
        }
        Err(Error::Field("F has no unit of infinite order in the search box".into()))
    }

    /// chi_{E,p}(x) = (N_{F_p/Q_l}(x), -D)_l.
    pub fn local_symbol(&self, x: &FElem, p: &PrimeIdealF) -> i32 {
        let (v, u) = self.e.f.local_norm(x, p);
        let ell = p.ell as i128;
        let a = if v.rem_euclid(2) == 1 { ell * u } else { u };
        hilbert_symbol_int(a, -(self.e.k.d as i128), Place::Prime(p.ell))
    }

    /// Finite primes p, nonsplit in E, with chi_{E,p}(alpha beta) = -1.
    pub fn diff_set(&self, alpha: &FElem) -> Result<Vec<PrimeIdealF>> {
        let f = &self.e.f;
        if !f.is_totally_positive(alpha) {
            return Err(Error::Argument("alpha must be totally positive".into()));
        }
        let x = f.mul(alpha, &self.beta);
        let mut ells = f.support_primes(&x);
        for q in self.e.k.ramified_primes() {
            if !ells.contains(&q) {
                ells.push(q);
            }
        }
        ells.sort_unstable();
        let mut out = Vec::new();
        for ell in ells {
            for p in f.factor_rational_prime(ell)? {
                if self.e.splitting_in_e(&p) == Splitting::Split {
                    continue;
                }
                if self.local_symbol(&x, &p) == -1 {
                    out.push(p);
                }
            }
        }
        Ok(out)
    }

    /// a_F(alpha, 0) with its Diff set.
    pub fn a_f_alpha(&self, alpha: &FElem) -> Result<AlphaCoefficient> {
        let diff = self.diff_set(alpha)?;
        if diff.len() != 1 {
            return Ok(AlphaCoefficient { diff, value: 0.0 });
        }
        let p = &diff[0];
        let f = &self.e.f;
        let eps = match self.e.splitting_in_e(p) {
            Splitting::Inert => 1,
            Splitting::Ramified => 0,
            Splitting::Split => unreachable!("Diff contains only nonsplit primes"),
        };
        let ad = f.factor_element(alpha)?.mul(&self.different);
        let ideal = ad.mul(&FactoredIdealF::pow(p, -eps));
        let rho = rho_count(&self.e, &ideal);
        let ord = ad.exponent(p) + 1;
        let value = -(2f64.powi(self.r as i32 - 1)) * rho as f64 * ord as f64 * (p.norm() as f64).ln();
        Ok(AlphaCoefficient { diff, value })
    }

    /// Totally positive alpha in the inverse different with trace m.
    pub fn trace_candidates(&self, m: u64) -> Result<Vec<FElem>> {
        let f = &self.e.f;
        let n = f.n;
        if m == 0 {
            return Ok(Vec::new());
        }
        let t: Vec<Vec<Rat>> = f
            .trace_gram()
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(x)).collect())
            .collect();
        let tinv = inverse_rat(&t).ok_or_else(|| Error::Field("degenerate trace form".into()))?;
        let rmax = f.roots.iter().fold(1.0f64, |a, r| a.max(r.abs()));
        let bounds: Vec<i128> = (0..n).map(|i| (m as f64 * rmax.powi(i as i32)).ceil() as i128).collect();
        let mut out = Vec::new();
        let total: i128 = bounds[1..].iter().map(|b| 2 * b + 1).product();
        for mut idx in 0..total {
            let mut y = vec![Rat::from_integer(m as i128)];
            for b in &bounds[1..] {
                y.push(Rat::from_integer(idx % (2 * b + 1) - b));
                idx /= 2 * b + 1;
            }
            let alpha = qmat_vec(&tinv, &y);
            if f.is_totally_positive(&alpha) {
                out.push(alpha);
            }
        }
        Ok(out)
    }

    /// Sum of a_F(alpha, 0) over totally positive alpha in the inverse different with Tr(alpha) = m.
    pub fn trace_sum(&self, m: u64) -> Result<f64> {
        let cands = self.trace_candidates(m)?;
        let vals: Result<Vec<f64>> = cands.par_iter().map(|a| Ok(self.a_f_alpha(a)?.value)).collect();
        Ok(vals?.iter().sum())
    }

    /// Seeded totally positive samples alpha = x / f'(theta) with small integral x.
    pub fn sample_alphas(&self, count: usize, seed: u64) -> Result<Vec<FElem>> {
        let f = &self.e.f;
        let dinv = f
            .inv(&f.derivative_at_theta())
            .ok_or_else(|| Error::Field("f'(theta) is not invertible".into()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        let mut tries = 0usize;
        while out.len() < count {
            tries += 1;
            if tries > 1000 * count.max(1) {
                return Err(Error::Field("could not sample totally positive elements".into()));
            }
            let x: FElem = (0..f.n).map(|_| Rat::from_integer(rng.gen_range(-30..=30))).collect();
            if x.iter().all(|c| c.numer() == &0) {
                continue;
            }
            let a = f.mul(&x, &dinv);
            if f.is_totally_positive(&a) {
                out.push(a);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaCoefficient {
    pub diff: Vec<PrimeIdealF>,
    pub value: f64,
}

/// a_F(0, mu): -2 Lambda'(0, chi_E) at mu = 0 and 0 on the other cosets.
pub fn a_f_zero(e: &CMExtension, trivial_coset: bool, mode: Mode) -> Result<f64> {
    if !trivial_coset {
        return Ok(0.0);
    }
    let (_, dl) = completed_lambda(e, mode, 0.0)?;
    Ok(-2.0 * dl)
}

/// Parse "a0,a1,.../den" into power-basis coordinates.
pub fn parse_alpha(s: &str, n: usize) -> Result<FElem> {
    let (nums, den) = match s.split_once('/') {
        Some((a, d)) => (a, d.trim().parse::<i128>().map_err(|e| Error::Argument(format!("bad denominator: {e}")))?),
        None => (s, 1),
    };
    if den == 0 {
        return Err(Error::Argument("zero denominator".into()));
    }
    let v: std::result::Result<Vec<i128>, _> = nums.split(',').map(|x| x.trim().parse::<i128>()).collect();
    let v = v.map_err(|e| Error::Argument(format!("bad coordinate: {e}")))?;
    if v.len() != n {
        return Err(Error::Argument(format!("alpha has {} coordinates, field degree is {n}", v.len())));
    }
    Ok(v.into_iter().map(|x| Rat::new(x, den)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{ImagQuadField, TotallyRealField};

    fn ctx(d: u64, poly: &[i128]) -> EisensteinContext {
        let e = CMExtension::new(ImagQuadField::new(d).unwrap(), TotallyRealField::new(poly, None).unwrap()).unwrap();
        EisensteinContext::new(&e).unwrap()
    }

    #[test]
    fn diff_parity_and_vanishing() {
        for c in [ctx(7, &[-1, -1, 1]), ctx(7, &[-1, -3, 0, 1])] {
            let alt = EisensteinContext::with_beta(&c.e, c.alternative_beta().unwrap()).unwrap();
            for a in c.sample_alphas(150, 11).unwrap() {
                let d = c.diff_set(&a).unwrap();
                assert_eq!(d.len() % 2, 1);
                assert!(d.iter().all(|p| c.e.splitting_in_e(p) != Splitting::Split));
                assert_eq!(d, alt.diff_set(&a).unwrap());
                let v = c.a_f_alpha(&a).unwrap();
                if d.len() > 1 {
                    assert_eq!(v.value, 0.0);
                }
                assert!(v.value <= 0.0);
            }
        }
    }

    #[test]
    fn trace_sums() {
        let c = ctx(7, &[-1, -1, 1]);
        assert_eq!(c.trace_sum(0).unwrap(), 0.0);
        for m in 1..=4 {
            let cands = c.trace_candidates(m).unwrap();
            let fwd: f64 = cands.iter().map(|a| c.a_f_alpha(a).unwrap().value).sum();
            let rev: f64 = cands.iter().rev().map(|a| c.a_f_alpha(a).unwrap().value).sum();
            assert!((fwd - rev).abs() < 1e-12);
            assert!((c.trace_sum(m).unwrap() - fwd).abs() < 1e-12);
            for a in &cands {
                assert_eq!(c.e.f.trace(a), Rat::from_integer(m as i128));
            }
        }
        assert!(c.diff_set(&vec![Rat::from_integer(-1), Rat::from_integer(0)]).is_err());
    }

    #[test]
    fn constant_term() {
        let c = ctx(7, &[-1, -1, 1]);
        let a0 = a_f_zero(&c.e, true, Mode::AbelianFactor).unwrap();
        let (_, dl) = completed_lambda(&c.e, Mode::AbelianFactor, 0.0).unwrap();
        assert!((a0 / dl + 2.0).abs() < 1e-14);
        // Lambda'(0, chi_E) is negative for D = 7, F = Q(sqrt 5)
        assert!(a0 > 2.7 && a0 < 2.75, "{a0}");
        assert_eq!(a_f_zero(&c.e, false, Mode::AbelianFactor).unwrap(), 0.0);
    }

    #[test]
    fn alpha_parsing() {
        assert_eq!(parse_alpha("1,2/5", 2).unwrap(), vec![Rat::new(1, 5), Rat::new(2, 5)]);
        assert!(parse_alpha("1,2", 3).is_err());
        assert!(parse_alpha("1,x", 2).is_err());
    }
}
