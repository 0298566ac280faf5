//! Finite quadratic modules L'/L.

use crate::linalg::{smith, transpose, IMat, QMat};
use crate::{Error, Result, Rat};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

/// Reduce a rational into [0, 1).
pub fn frac(x: Rat) -> Rat {
    x - Rat::from_integer(Integer::div_floor(x.numer(), x.denom()))
}

/// L'/L for an even integral Gram matrix G, with Q(x) = x G x^T / 2.
///
/// Elements are coefficient tuples (c_0, ..., c_{r-1}), c_i mod orders[i], on
/// generators g_i = (column i of V) / d_i where U G V = diag(d).
#[derive(Clone, Debug)]
pub struct DiscriminantModule {
    pub gram: IMat,
    pub orders: Vec<i128>,
    /// Generators in lattice coordinates (rational vectors).
    pub gens: Vec<Vec<Rat>>,
    /// Full dual basis in lattice coordinates; the first r entries are `gens`.
    pub dual_basis: QMat,
    gen_q: Vec<Rat>,
    gen_pair: Vec<Vec<Rat>>,
    size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PInvariant {
    pub p: u64,
    pub rank: usize,
    /// Legendre symbol of the determinant of the p-part bilinear form.
    pub det_symbol: i32,
}

impl DiscriminantModule {
    pub fn new(gram: &IMat) -> Result<Self> {
        let n = gram.len();
        for i in 0..n {
            if gram[i][i] % 2 != 0 {
                return Err(Error::Lattice("Gram matrix is not even".into()));
            }
        }
        let (_, d, v) = smith(gram);
        if d.iter().any(|x| x.is_zero()) {
            return Err(Error::Lattice("singular Gram matrix".into()));
        }
        // order the nontrivial invariant factors first
        let mut idx: Vec<usize> = (0..n).filter(|&i| d[i].abs() != 1).collect();
        idx.extend((0..n).filter(|&i| d[i].abs() == 1));
        let vt = transpose(&v);
        let dual_basis: QMat = idx
            .iter()
            .map(|&i| vt[i].iter().map(|&x| Rat::new(x, d[i].abs())).collect())
            .collect();
        let orders: Vec<i128> = idx.iter().map(|&i| d[i].abs()).filter(|&x| x != 1).collect();
        let r = orders.len();
        let gens: Vec<Vec<Rat>> = dual_basis[..r].to_vec();
        let bil = |x: &[Rat], y: &[Rat]| -> Rat {
            let mut s = Rat::zero();
            for i in 0..n {
                if x[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    s += x[i] * Rat::from_integer(gram[i][j]) * y[j];
                }
            }
            s
        };
        let gen_q = gens.iter().map(|g| frac(bil(g, g) / Rat::from_integer(2))).collect();
        let gen_pair = gens
            .iter()
            .map(|g| gens.iter().map(|h| frac(bil(g, h))).collect())
            .collect();
        let size = orders.iter().product::<i128>() as usize;
        Ok(DiscriminantModule { gram: gram.clone(), orders, gens, dual_basis, gen_q, gen_pair, size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Mixed-radix index of a coefficient tuple.
    pub fn index(&self, c: &[i128]) -> usize {
        let mut idx = 0usize;
        for (i, &o) in self.orders.iter().enumerate().rev() {
            idx = idx * o as usize + c[i].rem_euclid(o) as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> Vec<i128> {
        self.orders
            .iter()
            .map(|&o| {
                let c = (idx % o as usize) as i128;
                idx /= o as usize;
                c
            })
            .collect()
    }

    pub fn neg(&self, idx: usize) -> usize {
        let c: Vec<i128> = self.element(idx).iter().map(|x| -x).collect();
        self.index(&c)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let ca = self.element(a);
        let cb = self.element(b);
        let c: Vec<i128> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        self.index(&c)
    }

    /// Q(mu) in [0, 1).
    pub fn q(&self, idx: usize) -> Rat {
        let c = self.element(idx);
        let mut s = Rat::zero();
        for i in 0..c.len() {
            if c[i] == 0 {
                continue;
            }
            s += self.gen_q[i] * Rat::from_integer(c[i] * c[i]);
            for j in i + 1..c.len() {
                s += self.gen_pair[i][j] * Rat::from_integer(c[i] * c[j]);
            }
        }
        frac(s)
    }

    /// [mu, nu] in [0, 1).
    pub fn pair(&self, a: usize, b: usize) -> Rat {
        let ca = self.element(a);
        let cb = self.element(b);
        let mut s = Rat::zero();
        for i in 0..ca.len() {
            if ca[i] == 0 {
                continue;
            }
            for j in 0..cb.len() {
                s += self.gen_pair[i][j] * Rat::from_integer(ca[i] * cb[j]);
            }
        }
        frac(s)
    }

    pub fn q_table(&self) -> Vec<Rat> {
        (0..self.size).map(|i| self.q(i)).collect()
    }

    pub fn order_of(&self, idx: usize) -> i128 {
        self.element(idx)
            .iter()
            .zip(&self.orders)
            .fold(1i128, |l, (&c, &o)| l.lcm(&(o / c.gcd(&o))))
    }

    /// Product of the primes p | D at which mu has a nonzero component.
    pub fn q_mu(&self, idx: usize, d: u64) -> u64 {
        let ord = self.order_of(idx);
        crate::arith::prime_divisors(d)
            .into_iter()
            .filter(|&p| ord % p as i128 == 0)
            .product()
    }

    /// Coset index of a dual vector given by integer coordinates on `dual_basis`.
    pub fn coset_of_dual_coords(&self, c: &[i128]) -> usize {
        self.index(&c[..self.rank()])
    }

    /// Coset index of a rational vector in lattice coordinates lying in L'.
    pub fn coset_of_vector(&self, x: &[Rat]) -> Result<usize> {
        // coordinates on dual_basis: x = y B  =>  y = x B^{-1}
        let binv = crate::linalg::inverse_rat(&self.dual_basis).unwrap();
        let y = crate::linalg::qmat_vec(&transpose(&binv), x);
        let mut c = Vec::with_capacity(y.len());
        for v in y {
            if !v.is_integer() {
                return Err(Error::Lattice("vector is not in the dual lattice".into()));
            }
            c.push(v.to_integer());
        }
        Ok(self.coset_of_dual_coords(&c))
    }

    /// Lift of an element to a rational vector in lattice coordinates.
    pub fn lift(&self, idx: usize) -> Vec<Rat> {
        let c = self.element(idx);
        let n = self.gram.len();
        let mut x = vec![Rat::zero(); n];
        for (i, &ci) in c.iter().enumerate() {
            for j in 0..n {
                x[j] += self.gens[i][j] * Rat::from_integer(ci);
            }
        }
        x
    }

    /// Invariants of the p-parts, valid when the exponent of the module is odd and squarefree.
    pub fn p_invariants(&self) -> Result<Vec<PInvariant>> {
        let exponent = self.orders.iter().fold(1i128, |l, o| l.lcm(o));
        if exponent % 2 == 0 || !crate::arith::is_squarefree(exponent as u64) {
            return Err(Error::Lattice("p-invariants need an odd squarefree exponent".into()));
        }
        let mut out = Vec::new();
        for p in crate::arith::prime_divisors(exponent as u64) {
            let pi = p as i128;
            // p-torsion generators h_i = (d_i/p) g_i
            let sel: Vec<(usize, i128)> = self
                .orders
                .iter()
                .enumerate()
                .filter(|(_, &o)| o % pi == 0)
                .map(|(i, &o)| (i, o / pi))
                .collect();
            let r = sel.len();
            let mut b = vec![vec![0i128; r]; r];
            for (a, &(i, si)) in sel.iter().enumerate() {
                for (c, &(j, sj)) in sel.iter().enumerate() {
                    let v = frac(self.gen_pair[i][j] * Rat::from_integer(si * sj)) * Rat::from_integer(pi);
                    debug_assert!(v.is_integer());
                    b[a][c] = v.to_integer();
                }
            }
            let det = crate::linalg::det_int(&b);
            out.push(PInvariant { p, rank: r, det_symbol: crate::arith::jacobi(det, p) });
        }
        Ok(out)
    }

    /// Histogram of Q-values, sorted.
    pub fn q_histogram(&self) -> Vec<(Rat, usize)> {
        let mut m = std::collections::BTreeMap::new();
        for q in self.q_table() {
            *m.entry(q).or_insert(0usize) += 1;
        }
        m.into_iter().collect()
    }

    /// Isomorphism test for finite quadratic modules of odd squarefree exponent.
    pub fn is_isomorphic(&self, other: &DiscriminantModule) -> Result<bool> {
        if self.size != other.size {
            return Ok(false);
        }
        let a = self.p_invariants()?;
        let b = other.p_invariants()?;
        Ok(a == b && self.q_histogram() == other.q_histogram())
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one_rat() -> Rat {
        Rat::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_d7() {
        let m = DiscriminantModule::new(&vec![vec![2, 1], vec![1, 4]]).unwrap();
        assert_eq!(m.size(), 7);
        assert_eq!(m.orders, vec![7]);
        // Q values on the cyclic group of order 7 with Q(x) = x^2 N(gen)
        let hist = m.q_histogram();
        assert_eq!(hist.iter().map(|(_, c)| c).sum::<usize>(), 7);
        for a in 0..7 {
            assert_eq!(m.q(a), m.q(m.neg(a)));
            for b in 0..7 {
                let pol = frac(m.q(m.add(a, b)) - m.q(a) - m.q(b));
                assert_eq!(pol, m.pair(a, b));
                assert_eq!(m.pair(a, b), m.pair(b, a));
            }
        }
        assert_eq!(m.q_mu(0, 7), 1);
        assert_eq!(m.q_mu(3, 7), 7);
    }

    #[test]
    fn lift_and_coset_roundtrip() {
        let g = vec![vec![2, 1, 0, 0], vec![1, 4, 0, 0], vec![0, 0, 2, 1], vec![0, 0, 1, 6]];
        let m = DiscriminantModule::new(&g).unwrap();
        assert_eq!(m.size(), 7 * 11);
        for i in 0..m.size() {
            assert_eq!(m.coset_of_vector(&m.lift(i)).unwrap(), i);
        }
    }

    #[test]
    fn unimodular_is_trivial() {
        let e8_like = vec![vec![2, 1], vec![1, 2]];
        let m = DiscriminantModule::new(&e8_like).unwrap();
        assert_eq!(m.size(), 3);
        let h = DiscriminantModule::new(&vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(h.is_trivial());
    }
}
