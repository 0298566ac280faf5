//! Class-group twisted scalar theta series.

use crate::lattices::{aut_count, class_representatives, scalar_theta, HermitianLattice};
use crate::{Error, Result, C64};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct EtaTheta {
    /// coeffs[m] = sum_h eta(h) R_{Lambda_h}(m) / |Aut(Lambda_h)|.
    pub coeffs: Vec<C64>,
    pub auts: Vec<u64>,
    /// Set when eta is nontrivial.
    pub cuspidal: bool,
}

/// `eta` gives the character value on each class representative, in the order
/// returned by `class_representatives`.
pub fn eta_twisted_theta(lambda: &HermitianLattice, eta: &[C64], prec: u64) -> Result<EtaTheta> {
    let reps = class_representatives(&lambda.k)?;
    if eta.len() != reps.len() {
        return Err(Error::Argument(format!("eta has {} values, class number is {}", eta.len(), reps.len())));
    }
    if eta.iter().any(|z| (z.norm() - 1.0).abs() > 1e-9) {
        return Err(Error::Argument("eta values must have absolute value 1".into()));
    }
    let mut coeffs = vec![C64::new(0.0, 0.0); prec as usize + 1];
    let mut auts = Vec::new();
    for (rep, &e) in reps.iter().zip(eta) {
        let l = lambda.twist_by_ideal(rep)?;
        let a = aut_count(&l)?;
        let r = scalar_theta(&l.zgram, prec)?;
        for (m, &c) in r.iter().enumerate() {
            coeffs[m] += e * c as f64 / a as f64;
        }
        auts.push(a);
    }
    let cuspidal = eta.iter().any(|z| (z - 1.0).norm() > 1e-9);
    Ok(EtaTheta { coeffs, auts, cuspidal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{ImagQuadField, KElem};

    fn unimodular(d: u64, m: usize) -> HermitianLattice {
        let k = ImagQuadField::new(d).unwrap();
        let gram = (0..m)
            .map(|i| (0..m).map(|j| if i == j { KElem::one() } else { KElem::zero() }).collect())
            .collect();
        HermitianLattice::from_gram(&k, gram).unwrap()
    }

    #[test]
    fn single_class() {
        let l = unimodular(7, 2);
        let t = eta_twisted_theta(&l, &[C64::new(1.0, 0.0)], 10).unwrap();
        let a = aut_count(&l).unwrap();
        let r = scalar_theta(&l.zgram, 10).unwrap();
        for m in 0..=10 {
            assert!((t.coeffs[m] - r[m] as f64 / a as f64).norm() < 1e-15);
        }
        assert!(!t.cuspidal);
    }

    #[test]
    fn class_number_two() {
        let l = unimodular(15, 1);
        let one = C64::new(1.0, 0.0);
        let t = eta_twisted_theta(&l, &[one, -one], 12).unwrap();
        assert!(t.cuspidal);
        let c0: C64 = t.auts.iter().zip([one, -one]).map(|(&a, e)| e / a as f64).sum();
        assert!((t.coeffs[0] - c0).norm() < 1e-15);
        if t.auts[0] == t.auts[1] {
            assert!(t.coeffs[0].norm() < 1e-15);
        }
        assert!(eta_twisted_theta(&l, &[one], 5).is_err());
    }

    #[test]
    fn aut_invariant_under_ramified_twist() {
        for (d, q) in [(7u64, 7u64), (15, 3), (15, 5)] {
            let l = unimodular(d, 2);
            let t = l.ideal_twist(q).unwrap();
            assert_eq!(aut_count(&l).unwrap(), aut_count(&t).unwrap(), "D = {d}, Q = {q}");
        }
    }
}
