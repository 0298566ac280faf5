//! Local hermitian invariants and the Weil indices gamma_p.

use crate::fields::local::{hilbert_symbol, hilbert_symbol_int, relevant_places, Place};
use crate::fields::quadratic::{delta_p, Root4};
use crate::lattices::HermitianLattice;
use crate::{Error, Result, Rat};

/// Data of a hermitian space over k = Q(sqrt(-D)) needed for local invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalData {
    pub d: u64,
    pub dim: u32,
    pub det: Rat,
}

impl LocalData {
    pub fn of_lattice(l: &HermitianLattice) -> Self {
        LocalData { d: l.k.d, dim: l.m as u32, det: l.hermitian_det() }
    }
}

/// inv_v(V) = ((-1)^{n(n-1)/2} det V, -D)_v.
pub fn inv_v(v: &LocalData, place: Place) -> i32 {
    let n = v.dim as i64;
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    hilbert_symbol(&(v.det * Rat::from_integer(sign)), &Rat::from_integer(-(v.d as i128)), place)
}

/// Product of inv_v(V) over every place of Q.
pub fn hasse_product(v: &LocalData) -> i32 {
    let n = v.dim as i64;
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let a = v.det * Rat::from_integer(sign);
    relevant_places(&a, &Rat::from_integer(-(v.d as i128)))
        .into_iter()
        .map(|p| inv_v(v, p))
        .product()
}

/// gamma_p = delta_p^{-n} (D, p)_p^n inv_p(V_p) for p | D.
pub fn gamma_p(p: u64, v: &LocalData) -> Result<Root4> {
    if v.d % p != 0 || !crate::arith::is_prime(p) {
        return Err(Error::Argument(format!("gamma_p needs a prime p | D, got p = {p}, D = {}", v.d)));
    }
    let n = v.dim as i64;
    let dp = delta_p(p)?.pow(-n);
    let dd = Root4::from_sign(hilbert_symbol_int(v.d as i128, p as i128, Place::Prime(p))).pow(n);
    let inv = Root4::from_sign(inv_v(v, Place::Prime(p)));
    Ok(dp * dd * inv)
}

/// gamma_Q = prod_{q | Q} gamma_q; gamma_1 = 1.
pub fn gamma_q(q: u64, v: &LocalData) -> Result<Root4> {
    crate::arith::prime_divisors(q)
        .into_iter()
        .try_fold(Root4::ONE, |acc, p| Ok(acc * gamma_p(p, v)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d7_rank3_signature_21() {
        // L = O_k(-1) + O_k^2: det = -1
        let v = LocalData { d: 7, dim: 3, det: Rat::from_integer(-1) };
        assert_eq!(gamma_p(7, &v).unwrap(), Root4::MINUS_I);
        assert_eq!(gamma_q(1, &v).unwrap(), Root4::ONE);
        assert!(gamma_p(3, &v).is_err());
    }

    #[test]
    fn reciprocity_small() {
        for d in [3u64, 7, 15] {
            for det in [-6i128, -1, 2, 7, 30] {
                for dim in 1..4 {
                    assert_eq!(hasse_product(&LocalData { d, dim, det: Rat::from_integer(det) }), 1);
                }
            }
        }
    }

    #[test]
    fn even_rank_is_real() {
        for d in [7u64, 11, 15, 35] {
            for det in [-3i128, -1, 1, 2, 5] {
                let v = LocalData { d, dim: 2, det: Rat::from_integer(det) };
                for p in crate::arith::prime_divisors(d) {
                    let g = gamma_p(p, &v).unwrap();
                    let legendre = crate::arith::jacobi(-1, p);
                    let want = Root4::from_sign(legendre * inv_v(&v, Place::Prime(p)));
                    assert_eq!(g, want);
                }
            }
        }
    }
}
