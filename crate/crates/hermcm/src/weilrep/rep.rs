//! Generator matrices of the Weil representation on C[L'/L].

use super::e;
use crate::lattices::DiscriminantModule;
use crate::{Rat, C64};
use nalgebra::DMatrix;

#[derive(Clone, Debug)]
pub struct WeilRepData {
    pub disc: DiscriminantModule,
    /// (p - q) mod 8 for the Z-signature (p, q).
    pub sig_mod8: i64,
    pub rho_t: Vec<C64>,
    pub rho_s: DMatrix<C64>,
    pub conjugated: bool,
}

impl WeilRepData {
    /// rho(T) phi_mu = e(Q(mu)) phi_mu,
    /// rho(S) phi_mu = sigma / sqrt|A| sum_nu e(-[mu, nu]) phi_nu, sigma = e((q - p)/8).
    pub fn new(disc: &DiscriminantModule, z_signature: (usize, usize), conjugated: bool) -> Self {
        let n = disc.size();
        let sig = z_signature.0 as i64 - z_signature.1 as i64;
        let sigma = e(Rat::new(-sig as i128, 8));
        let scale = sigma / (n as f64).sqrt();
        let mut rho_t: Vec<C64> = (0..n).map(|mu| e(disc.q(mu))).collect();
        // column mu is the image of phi_mu
        let mut rho_s = DMatrix::from_fn(n, n, |nu, mu| scale * e(-disc.pair(mu, nu)));
        if conjugated {
            rho_t.iter_mut().for_each(|z| *z = z.conj());
            rho_s = rho_s.map(|z| z.conj());
        }
        WeilRepData { disc: disc.clone(), sig_mod8: sig.rem_euclid(8), rho_t, rho_s, conjugated }
    }

    pub fn dim(&self) -> usize {
        self.rho_t.len()
    }

    pub fn t_matrix(&self) -> DMatrix<C64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.rho_t.clone()))
    }

    /// max |entry| of rho(S)^4 - 1.
    pub fn s4_residual(&self) -> f64 {
        let s2 = &self.rho_s * &self.rho_s;
        let s4 = &s2 * &s2;
        max_abs(&(s4 - DMatrix::identity(self.dim(), self.dim())))
    }

    /// max |entry| of (rho(S) rho(T))^3 - rho(S)^2.
    pub fn braid_residual(&self) -> f64 {
        let st = &self.rho_s * self.t_matrix();
        let st3 = &st * &st * &st;
        let s2 = &self.rho_s * &self.rho_s;
        max_abs(&(st3 - s2))
    }

    /// max |entry| of rho(S) rho(S)^* - 1.
    pub fn unitarity_residual(&self) -> f64 {
        let p = &self.rho_s * self.rho_s.adjoint();
        max_abs(&(p - DMatrix::identity(self.dim(), self.dim())))
    }

    /// rho(S)^2 phi_mu must equal c phi_{-mu} with |c| = 1 and c = e(-sig/4)
    /// (conjugated if requested). Returns the worst deviation.
    pub fn s2_phase_residual(&self) -> f64 {
        let s2 = &self.rho_s * &self.rho_s;
        let mut phase = e(Rat::new(-self.sig_mod8 as i128, 4));
        if self.conjugated {
            phase = phase.conj();
        }
        let mut worst = 0.0f64;
        for mu in 0..self.dim() {
            let neg = self.disc.neg(mu);
            for nu in 0..self.dim() {
                let want = if nu == neg { phase } else { C64::new(0.0, 0.0) };
                worst = worst.max((s2[(nu, mu)] - want).norm());
            }
        }
        worst
    }

    /// |sum_mu e(Q(mu)) / sqrt|A| - e(sig/8)|, the Milgram formula.
    pub fn milgram_residual(&self) -> f64 {
        let n = self.dim();
        let s: C64 = (0..n).map(|mu| e(self.disc.q(mu))).sum();
        (s / (n as f64).sqrt() - e(Rat::new(self.sig_mod8 as i128, 8))).norm()
    }
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_rank_one_d7() {
        let disc = DiscriminantModule::new(&vec![vec![2, 1], vec![1, 4]]).unwrap();
        for conj in [false, true] {
            let w = WeilRepData::new(&disc, (2, 0), conj);
            assert!(w.s4_residual() < 1e-12);
            assert!(w.braid_residual() < 1e-12);
            assert!(w.unitarity_residual() < 1e-12);
            assert!(w.s2_phase_residual() < 1e-12);
            assert!(w.milgram_residual() < 1e-12);
        }
    }

    #[test]
    fn trivial_module() {
        let disc = DiscriminantModule::new(&vec![vec![0, 1], vec![1, 0]]).unwrap();
        let w = WeilRepData::new(&disc, (1, 1), false);
        assert_eq!(w.dim(), 1);
        assert!(w.s4_residual() < 1e-12);
        assert!(w.braid_residual() < 1e-12);
    }
}
