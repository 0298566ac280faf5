//! Coefficients of the vector-valued form induced from a scalar newform.

use super::atkin::AtkinLehner;
use super::local::{gamma_q, LocalData};
use super::newform::NewformData;
use crate::arith::divisors;
use crate::fields::quadratic::Root4;
use crate::lattices::{frac, DiscriminantModule, HermitianLattice};
use crate::{Error, Result, Rat, C64};
use num_traits::Zero;
use rayon::prelude::*;
use std::io::Write;

/// Coset-indexed coefficient table: values[mu][j] is the coefficient at m = j / den.
#[derive(Clone, Debug)]
pub struct QExpansion {
    pub den: i128,
    pub prec: Rat,
    pub values: Vec<Vec<C64>>,
}

impl QExpansion {
    pub fn get(&self, m: Rat, mu: usize) -> C64 {
        let j = m * Rat::from_integer(self.den);
        if m < Rat::zero() || m > self.prec || !j.is_integer() {
            return C64::new(0.0, 0.0);
        }
        self.values[mu][j.to_integer() as usize]
    }

    /// CSV rows (m_num, m_den, coset_index, re, im), nonzero entries only.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["m_num", "m_den", "coset_index", "re", "im"])?;
        let len = self.values.first().map_or(0, |v| v.len());
        for j in 0..len {
            let m = Rat::new(j as i128, self.den);
            for (mu, col) in self.values.iter().enumerate() {
                let z = col[j];
                if z.norm() > 0.0 {
                    wr.write_record([
                        m.numer().to_string(),
                        m.denom().to_string(),
                        mu.to_string(),
                        format!("{:?}", z.re),
                        format!("{:?}", z.im),
                    ])?;
                }
            }
        }
        wr.flush()?;
        Ok(())
    }
}

/// Shared data for evaluating sum_{Q_mu | Q | D} Q^{1-n} conj(gamma_Q) c_Q(mQ).
#[derive(Clone, Debug)]
pub struct Inducer {
    pub d: u64,
    pub weight: u32,
    /// (Q, gamma_Q, c_Q table) for every Q | D.
    pub parts: Vec<(u64, Root4, AtkinLehner)>,
    /// Sign applied to every gamma_Q with Q > 1; 1 except in mutation tests.
    pub gamma_twist: f64,
}

impl Inducer {
    /// `mq_max` bounds the arguments mQ at which c_Q is needed.
    pub fn new(g: &NewformData, l: &HermitianLattice, mq_max: usize) -> Result<Self> {
        let n = g.weight as usize;
        if l.k.d != g.level {
            return Err(Error::Argument(format!("lattice has D = {}, newform level {}", l.k.d, g.level)));
        }
        if l.signature != (n - 1, 1) {
            return Err(Error::Argument(format!(
                "weight {n} needs signature ({}, 1), lattice has {:?}",
                n - 1,
                l.signature
            )));
        }
        let v = LocalData::of_lattice(l);
        let mut parts = Vec::new();
        for q in divisors(g.level) {
            let gq = gamma_q(q, &v)?;
            let al = AtkinLehner::new(g, q, mq_max)?;
            parts.push((q, gq, al));
        }
        Ok(Inducer { d: g.level, weight: g.weight, parts, gamma_twist: 1.0 })
    }

    pub fn gamma(&self, q: u64) -> C64 {
        let (_, g, _) = self.parts.iter().find(|p| p.0 == q).expect("Q divides D");
        if q > 1 {
            g.to_c64() * self.gamma_twist
        } else {
            g.to_c64()
        }
    }

    /// c_Q(k) for an integer k >= 1.
    pub fn c_q(&self, q: u64, k: i128) -> Result<C64> {
        let (_, _, al) = self.parts.iter().find(|p| p.0 == q).expect("Q divides D");
        al.c(k as usize)
    }

    /// sum_{Q_mu | Q | D} Q^{1-n} conj(gamma_Q) c_Q(mQ), with no congruence condition on m.
    pub fn formula(&self, m: Rat, q_mu: u64) -> Result<C64> {
        let mut s = C64::new(0.0, 0.0);
        if m <= Rat::zero() {
            return Ok(s);
        }
        for (q, _, _) in &self.parts {
            if q % q_mu != 0 {
                continue;
            }
            let mq = m * Rat::from_integer(*q as i128);
            if !mq.is_integer() {
                continue;
            }
            let w = (*q as f64).powi(1 - self.weight as i32);
            s += w * self.gamma(*q).conj() * self.c_q(*q, mq.to_integer())?;
        }
        Ok(s)
    }
}

/// The formula value for coset mu of L'/L, without the support condition.
pub fn induce_formula(ind: &Inducer, disc: &DiscriminantModule, m: Rat, mu: usize) -> Result<C64> {
    ind.formula(m, disc.q_mu(mu, ind.d))
}

/// a~(m, mu) for 0 < m <= prec on the (1/den) grid: the formula when m = -Q(mu) mod 1, else 0.
pub fn induce(g: &NewformData, l: &HermitianLattice, prec: Rat) -> Result<QExpansion> {
    if prec <= Rat::zero() {
        return Err(Error::Argument("precision must be positive".into()));
    }
    let disc = DiscriminantModule::new(&l.zgram)?;
    let den = disc.q_table().iter().fold(1i128, |a, q| num_integer::lcm(a, *q.denom()));
    let mq_max = (prec * Rat::from_integer(g.level as i128)).floor().to_integer() as usize;
    let ind = Inducer::new(g, l, mq_max)?;
    let jmax = (prec * Rat::from_integer(den)).floor().to_integer() as usize;
    let values: Result<Vec<Vec<C64>>> = (0..disc.size())
        .into_par_iter()
        .map(|mu| {
            let qmu = disc.q(mu);
            let qm = disc.q_mu(mu, g.level);
            (0..=jmax)
                .map(|j| {
                    let m = Rat::new(j as i128, den);
                    if frac(m + qmu).is_zero() {
                        ind.formula(m, qm)
                    } else {
                        Ok(C64::new(0.0, 0.0))
                    }
                })
                .collect()
        })
        .collect();
    Ok(QExpansion { den, prec, values: values? })
}

/// The lattice O_k with form -x conj(y), plus `lambda`.
pub fn full_lattice(lambda: &HermitianLattice) -> Result<HermitianLattice> {
    use crate::fields::quadratic::KElem;
    let l1 = HermitianLattice::from_gram(&lambda.k, vec![vec![KElem::int(-1, 0)]])?;
    l1.direct_sum(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::quadratic::{ImagQuadField, KElem};
    use crate::weilrep::cm_newform;

    fn setup() -> (NewformData, HermitianLattice) {
        let k = ImagQuadField::new(7).unwrap();
        let g = cm_newform(&k, 3, 400).unwrap();
        let lam = HermitianLattice::from_gram(
            &k,
            vec![vec![KElem::one(), KElem::zero()], vec![KElem::zero(), KElem::one()]],
        )
        .unwrap();
        (g, full_lattice(&lam).unwrap())
    }

    #[test]
    fn support_and_symmetry() {
        let (g, l) = setup();
        assert_eq!(l.signature, (2, 1));
        let a = induce(&g, &l, Rat::from_integer(10)).unwrap();
        let disc = DiscriminantModule::new(&l.zgram).unwrap();
        assert_eq!(disc.size(), 343);
        for mu in 0..disc.size() {
            let neg = disc.neg(mu);
            for j in 0..a.values[mu].len() {
                let m = Rat::new(j as i128, a.den);
                let z = a.values[mu][j];
                if !frac(m + disc.q(mu)).is_zero() {
                    assert_eq!(z.norm(), 0.0);
                }
                assert!((z - a.values[neg][j]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn trivial_coset_closed_form() {
        // For (m, 7) = 1: a~(m, 0) = c(m) (1 - conj(gamma_7) eps_7 chi(m) / 7 * c(7)/(-7)),
        // i.e. c(m) + 7^{-2} conj(gamma_7) c_7(7m).
        let (g, l) = setup();
        let a = induce(&g, &l, Rat::from_integer(20)).unwrap();
        let k = ImagQuadField::new(7).unwrap();
        let gamma7 = C64::new(0.0, -1.0);
        let eps = C64::new(0.0, -1.0);
        for m in 1..=20i128 {
            if m % 7 == 0 {
                continue;
            }
            let c = g.c(m as usize).unwrap();
            let want = c + gamma7.conj() * eps * (k.chi(m) as f64) * C64::new(-7.0, 0.0) * c / 49.0;
            assert!((a.get(Rat::from_integer(m), 0) - want).norm() < 1e-12, "m = {m}");
        }
    }

    #[test]
    fn rejects_mismatch() {
        let (g, _) = setup();
        let k = ImagQuadField::new(7).unwrap();
        let pos = HermitianLattice::from_gram(&k, vec![vec![KElem::one()]]).unwrap();
        assert!(induce(&g, &pos, Rat::from_integer(5)).is_err());
    }
}
