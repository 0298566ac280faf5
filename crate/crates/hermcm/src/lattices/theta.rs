//! Representation numbers and theta coefficients per coset of L'/L.

use super::disc::DiscriminantModule;
use super::enumerate::PosDefForm;
use super::hermitian::HermitianLattice;
use crate::linalg::{qmat_mul, to_rat, transpose, QMat};
use crate::{Error, Result, Rat};
use num_integer::Integer;
use num_traits::Zero;
use std::io::Write;

/// Counts R(m, mu) = #{x in mu + L : Q(x) = m} for 0 <= m <= prec.
#[derive(Clone, Debug)]
pub struct ThetaTable {
    pub disc: DiscriminantModule,
    /// All Q-values on L' lie in (1/den) Z.
    pub den: i128,
    pub prec: Rat,
    /// counts[mu][j] = R(j / den, mu).
    pub counts: Vec<Vec<u64>>,
}

/// Gram of L' on the dual basis, so that Q(c) = c A c^T / 2.
fn dual_gram(disc: &DiscriminantModule) -> QMat {
    let b = &disc.dual_basis;
    qmat_mul(&qmat_mul(b, &to_rat(&disc.gram)), &transpose(b))
}

fn value_den(a: &QMat) -> i128 {
    let mut den = 1i128;
    for (i, r) in a.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            let v = if i == j { *x / Rat::from_integer(2) } else { *x };
            den = den.lcm(v.denom());
        }
    }
    den
}

impl ThetaTable {
    pub fn new(l: &HermitianLattice, prec: Rat) -> Result<Self> {
        if !l.is_positive_definite() {
            return Err(Error::Lattice("theta series needs a positive definite lattice".into()));
        }
        Self::from_gram(&l.zgram, prec)
    }

    pub fn from_gram(gram: &crate::linalg::IMat, prec: Rat) -> Result<Self> {
        let disc = DiscriminantModule::new(gram)?;
        let a = dual_gram(&disc);
        let den = value_den(&a);
        let form = PosDefForm::new(&a)?;
        let jmax = (prec * Rat::from_integer(den)).floor().to_integer().max(0) as usize;
        let mut counts = vec![vec![0u64; jmax + 1]; disc.size()];
        counts[0][0] = 1;
        for (c, q) in form.short_vectors(prec) {
            let j = (q * Rat::from_integer(den)).to_integer() as usize;
            counts[disc.coset_of_dual_coords(&c)][j] += 1;
        }
        Ok(ThetaTable { disc, den, prec, counts })
    }

    /// Naive oracle: box search over dual coordinates.
    pub fn naive(gram: &crate::linalg::IMat, prec: Rat) -> Result<Self> {
        let disc = DiscriminantModule::new(gram)?;
        let a = dual_gram(&disc);
        let den = value_den(&a);
        let form = PosDefForm::new(&a)?;
        let jmax = (prec * Rat::from_integer(den)).floor().to_integer().max(0) as usize;
        let mut counts = vec![vec![0u64; jmax + 1]; disc.size()];
        counts[0][0] = 1;
        for (c, q) in form.naive_short_vectors(prec) {
            let j = (q * Rat::from_integer(den)).to_integer() as usize;
            counts[disc.coset_of_dual_coords(&c)][j] += 1;
        }
        Ok(ThetaTable { disc, den, prec, counts })
    }

    /// R(m, mu); zero outside the computed range or off the (1/den) grid.
    pub fn rep_number(&self, m: Rat, mu: usize) -> u64 {
        if m < Rat::zero() || m > self.prec {
            return 0;
        }
        let j = m * Rat::from_integer(self.den);
        if !j.is_integer() {
            return 0;
        }
        self.counts[mu][j.to_integer() as usize]
    }

    /// Scalar theta coefficients R(m, 0) for integers 0 <= m <= prec.
    pub fn scalar(&self) -> Vec<u64> {
        let mmax = self.prec.floor().to_integer() as usize;
        (0..=mmax).map(|m| self.counts[0][m * self.den as usize]).collect()
    }

    /// Number of dual vectors with Q = m, over all cosets.
    pub fn total(&self, m: Rat) -> u64 {
        (0..self.disc.size()).map(|mu| self.rep_number(m, mu)).sum()
    }

    /// CSV rows (m_numerator, m_denominator, coset_index, count), nonzero counts only.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["m_numerator", "m_denominator", "coset_index", "count"])?;
        for j in 0..self.counts[0].len() {
            let m = Rat::new(j as i128, self.den);
            for mu in 0..self.disc.size() {
                let c = self.counts[mu][j];
                if c > 0 {
                    wr.write_record([
                        m.numer().to_string(),
                        m.denom().to_string(),
                        mu.to_string(),
                        c.to_string(),
                    ])?;
                }
            }
        }
        wr.flush()?;
        Ok(())
    }
}

/// R(m) = #{x in L : Q(x) = m} for integers 0 <= m <= mmax, enumerating L itself.
pub fn scalar_theta(gram: &crate::linalg::IMat, mmax: u64) -> Result<Vec<u64>> {
    if gram.iter().enumerate().any(|(i, r)| r[i] % 2 != 0) {
        return Err(Error::Lattice("scalar theta needs an even lattice".into()));
    }
    let form = PosDefForm::new(&to_rat(gram))?;
    let mut counts = vec![0u64; mmax as usize + 1];
    counts[0] = 1;
    for (_, q) in form.short_vectors(Rat::from_integer(mmax as i128)) {
        counts[q.to_integer() as usize] += 1;
    }
    Ok(counts)
}

/// Cauchy product of two scalar coefficient lists, truncated to the shorter length.
pub fn cauchy_product(a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().min(b.len());
    (0..n).map(|m| (0..=m).map(|i| a[i] * b[m - i]).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::quadratic::{ImagQuadField, KElem};

    fn diag(d: u64, entries: &[i128]) -> HermitianLattice {
        let k = ImagQuadField::new(d).unwrap();
        let m = entries.len();
        let gram = (0..m)
            .map(|i| (0..m).map(|j| if i == j { KElem::int(entries[i], 0) } else { KElem::zero() }).collect())
            .collect();
        HermitianLattice::from_gram(&k, gram).unwrap()
    }

    #[test]
    fn ok_squared_d7() {
        let t = ThetaTable::new(&diag(7, &[1, 1]), Rat::from_integer(50)).unwrap();
        assert_eq!(t.rep_number(Rat::zero(), 0), 1);
        assert_eq!(t.rep_number(Rat::from_integer(1), 0), 4);
        let t1 = ThetaTable::new(&diag(7, &[1]), Rat::from_integer(50)).unwrap();
        assert_eq!(t.scalar(), cauchy_product(&t1.scalar(), &t1.scalar()));
        assert_eq!(scalar_theta(&diag(7, &[1, 1]).zgram, 50).unwrap(), t.scalar());
    }

    #[test]
    fn matches_naive_and_support() {
        for (d, e) in [(7u64, vec![1i128]), (7, vec![1, 1]), (11, vec![1, 1]), (15, vec![1])] {
            let l = diag(d, &e);
            let prec = Rat::from_integer(12);
            let a = ThetaTable::new(&l, prec).unwrap();
            let b = ThetaTable::naive(&l.zgram, prec).unwrap();
            assert_eq!(a.counts, b.counts);
            for mu in 0..a.disc.size() {
                let qm = a.disc.q(mu);
                let neg = a.disc.neg(mu);
                for j in 0..a.counts[mu].len() {
                    let m = Rat::new(j as i128, a.den);
                    if a.counts[mu][j] > 0 {
                        assert!(super::super::disc::frac(m - qm).is_zero());
                    }
                    assert_eq!(a.counts[mu][j], a.counts[neg][j]);
                }
            }
        }
    }

    #[test]
    fn csv_has_header() {
        let t = ThetaTable::new(&diag(7, &[1]), Rat::from_integer(2)).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("m_numerator,m_denominator,coset_index,count\n0,1,0,1\n"));
    }
}
