//! Hermitian O_k-lattices stored through their trace form on a Z-basis.

use crate::fields::quadratic::{ImagQuadField, KElem};
use crate::linalg::{hnf, inverse_rat, qmat_mul, to_rat, transpose, IMat, QMat};
use crate::{Error, Result, Rat};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// An O_k-lattice in k^m with a hermitian form, conjugate-linear in the second slot.
///
/// Coordinates: the ambient Z-basis of O_k^m is (e_1, pi e_1, ..., e_m, pi e_m).
/// Lattice vectors are rows of `basis` in these ambient coordinates, and all
/// matrices use the row-vector convention.
#[derive(Clone, Debug)]
pub struct HermitianLattice {
    pub k: ImagQuadField,
    pub m: usize,
    /// Hermitian Gram matrix on the standard basis of k^m.
    pub ambient_gram: Vec<Vec<KElem>>,
    /// Z-basis rows in ambient coordinates.
    pub basis: QMat,
    /// Trace bilinear form [x, y] = Tr <x, y> on `basis`; Q(x) = x G x^T / 2.
    pub zgram: IMat,
    /// Multiplication by pi on lattice coordinates: coords(pi * b_u) = row u.
    pub pi_action: IMat,
    /// Hermitian signature (positive, negative).
    pub signature: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    #[serde(rename = "D")]
    pub d: u64,
    /// Entries a + b pi as [a, b].
    pub gram: Vec<Vec<[i64; 2]>>,
    #[serde(default)]
    pub pi_sign: Option<i64>,
}

impl LatticeFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
    pub fn build(&self) -> Result<HermitianLattice> {
        let k = ImagQuadField::with_pi_sign(self.d, self.pi_sign.unwrap_or(1))?;
        let gram = self
            .gram
            .iter()
            .map(|r| r.iter().map(|e| KElem::int(e[0] as i128, e[1] as i128)).collect())
            .collect();
        HermitianLattice::from_gram(&k, gram)
    }
    pub fn from_lattice(l: &HermitianLattice) -> Result<Self> {
        let mut gram = Vec::new();
        for r in &l.ambient_gram {
            let mut row = Vec::new();
            for e in r {
                if !e.is_integral() {
                    return Err(Error::Lattice("gram entries are not integral".into()));
                }
                row.push([e.a.to_integer() as i64, e.b.to_integer() as i64]);
            }
            gram.push(row);
        }
        Ok(LatticeFile { d: l.k.d, gram, pi_sign: Some(l.k.pi_trace) })
    }
}

fn basis_elems() -> [KElem; 2] {
    [KElem::int(1, 0), KElem::int(0, 1)]
}

/// Multiplication by a + b pi on ambient coordinates (row convention).
fn ambient_mult(k: &ImagQuadField, m: usize, x: &KElem) -> QMat {
    let mut mat = vec![vec![Rat::zero(); 2 * m]; 2 * m];
    for i in 0..m {
        for (s, be) in basis_elems().iter().enumerate() {
            let prod = k.mul(x, be);
            mat[2 * i + s][2 * i] = prod.a;
            mat[2 * i + s][2 * i + 1] = prod.b;
        }
    }
    mat
}

/// Hermitian signature by diagonalization over k.
fn hermitian_signature(k: &ImagQuadField, h: &[Vec<KElem>]) -> Result<(usize, usize)> {
    let m = h.len();
    let mut a: Vec<Vec<KElem>> = h.to_vec();
    let (mut pos, mut neg) = (0, 0);
    for col in 0..m {
        // Find a nonzero diagonal, or create one from an off-diagonal entry.
        if a[col][col].is_zero() {
            if let Some(j) = (col + 1..m).find(|&j| !a[j][j].is_zero()) {
                a.swap(col, j);
                for r in a.iter_mut() {
                    r.swap(col, j);
                }
            } else if let Some(j) = (col + 1..m).find(|&j| !a[col][j].is_zero()) {
                // e_col <- e_col + c e_j with c = a[j][col] makes the diagonal 2 N(a[col][j]) != 0
                let c = a[j][col];
                for t in 0..m {
                    let add = k.mul(&c, &a[j][t]);
                    a[col][t] = a[col][t].add(&add);
                }
                let cc = k.conj(&c);
                for r in a.iter_mut() {
                    let add = k.mul(&r[j], &cc);
                    r[col] = r[col].add(&add);
                }
            } else {
                return Err(Error::Lattice("singular hermitian form".into()));
            }
        }
        let d = a[col][col];
        if !d.b.is_zero() {
            return Err(Error::Lattice("gram is not hermitian".into()));
        }
        if d.a.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in col + 1..m {
            let f = k.div(&a[i][col], &d).unwrap();
            let fc = k.conj(&f);
            for t in 0..m {
                let sub = k.mul(&f, &a[col][t]);
                a[i][t] = a[i][t].sub(&sub);
            }
            for r in a.iter_mut() {
                let sub = k.mul(&r[col], &fc);
                r[i] = r[i].sub(&sub);
            }
        }
    }
    Ok((pos, neg))
}

impl HermitianLattice {
    /// The free lattice O_k^m with hermitian Gram matrix `gram`.
    pub fn from_gram(k: &ImagQuadField, gram: Vec<Vec<KElem>>) -> Result<Self> {
        let m = gram.len();
        if m == 0 || gram.iter().any(|r| r.len() != m) {
            return Err(Error::Lattice("gram must be a nonempty square matrix".into()));
        }
        for i in 0..m {
            for j in 0..m {
                if gram[i][j] != k.conj(&gram[j][i]) {
                    return Err(Error::Lattice(format!("gram is not hermitian at ({i},{j})")));
                }
            }
        }
        let basis = to_rat(&crate::linalg::identity(2 * m));
        Self::from_parts(k, gram, basis, Rat::one())
    }

    /// Lattice spanned by `basis` rows in k^m with form `scale * ambient_gram`.
    pub fn from_parts(k: &ImagQuadField, ambient_gram: Vec<Vec<KElem>>, basis: QMat, scale: Rat) -> Result<Self> {
        let m = ambient_gram.len();
        let gram: Vec<Vec<KElem>> = ambient_gram
            .iter()
            .map(|r| r.iter().map(|e| e.scale(scale)).collect())
            .collect();
        let signature = hermitian_signature(k, &gram)?;
        // ambient trace gram
        let be = basis_elems();
        let mut g_amb = vec![vec![Rat::zero(); 2 * m]; 2 * m];
        for i in 0..m {
            for j in 0..m {
                for s in 0..2 {
                    for t in 0..2 {
                        let v = k.mul(&k.mul(&be[s], &k.conj(&be[t])), &gram[i][j]);
                        g_amb[2 * i + s][2 * j + t] = k.trace(&v);
                    }
                }
            }
        }
        let g = qmat_mul(&qmat_mul(&basis, &g_amb), &transpose(&basis));
        let mut zgram = vec![vec![0i128; 2 * m]; 2 * m];
        for i in 0..2 * m {
            for j in 0..2 * m {
                if !g[i][j].is_integer() {
                    return Err(Error::Lattice("trace form is not integral".into()));
                }
                zgram[i][j] = g[i][j].to_integer();
            }
            if zgram[i][i] % 2 != 0 {
                return Err(Error::Lattice("trace form is not even".into()));
            }
        }
        let binv = inverse_rat(&basis).ok_or_else(|| Error::Lattice("basis is singular".into()))?;
        let pa = qmat_mul(&qmat_mul(&basis, &ambient_mult(k, m, &KElem::int(0, 1))), &binv);
        let mut pi_action = vec![vec![0i128; 2 * m]; 2 * m];
        for i in 0..2 * m {
            for j in 0..2 * m {
                if !pa[i][j].is_integer() {
                    return Err(Error::Lattice("basis does not span an O_k-module".into()));
                }
                pi_action[i][j] = pa[i][j].to_integer();
            }
        }
        Ok(HermitianLattice {
            k: k.clone(),
            m,
            ambient_gram: gram,
            basis,
            zgram,
            pi_action,
            signature,
        })
    }

    pub fn rank_z(&self) -> usize {
        2 * self.m
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature.1 == 0
    }

    /// Z-signature (p, q) of the trace form.
    pub fn z_signature(&self) -> (usize, usize) {
        (2 * self.signature.0, 2 * self.signature.1)
    }

    pub fn q_value(&self, x: &[i128]) -> Rat {
        let n = self.rank_z();
        let mut s = 0i128;
        for i in 0..n {
            for j in 0..n {
                s += x[i] * self.zgram[i][j] * x[j];
            }
        }
        Rat::new(s, 2)
    }

    pub fn bilinear_rat(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let n = self.rank_z();
        let mut s = Rat::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                s += x[i] * Rat::from_integer(self.zgram[i][j]) * y[j];
            }
        }
        s
    }

    /// Multiplication by a + b pi on lattice coordinates (row convention).
    pub fn mult_matrix(&self, x: &KElem) -> QMat {
        let p = to_rat(&self.pi_action);
        let n = self.rank_z();
        let mut out = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            out[i][i] = x.a;
            for j in 0..n {
                out[i][j] += x.b * p[i][j];
            }
        }
        out
    }

    pub fn apply_pi(&self, x: &[i128]) -> Vec<i128> {
        let n = self.rank_z();
        (0..n)
            .map(|j| (0..n).map(|i| x[i] * self.pi_action[i][j]).sum())
            .collect()
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, o: &HermitianLattice) -> Result<HermitianLattice> {
        if self.k != o.k {
            return Err(Error::Lattice("direct sum over different fields".into()));
        }
        let m = self.m + o.m;
        let mut gram = vec![vec![KElem::zero(); m]; m];
        for i in 0..self.m {
            for j in 0..self.m {
                gram[i][j] = self.ambient_gram[i][j];
            }
        }
        for i in 0..o.m {
            for j in 0..o.m {
                gram[self.m + i][self.m + j] = o.ambient_gram[i][j];
            }
        }
        let n1 = self.rank_z();
        let n = 2 * m;
        let mut basis = vec![vec![Rat::zero(); n]; n];
        for i in 0..n1 {
            for j in 0..n1 {
                basis[i][j] = self.basis[i][j];
            }
        }
        for i in 0..o.rank_z() {
            for j in 0..o.rank_z() {
                basis[n1 + i][n1 + j] = o.basis[i][j];
            }
        }
        Self::from_parts(&self.k, gram, basis, Rat::one())
    }

    /// The sublattice a L for a fractional ideal a given by a Z-basis in k,
    /// with the form rescaled by `scale`.
    pub fn ideal_multiple(&self, ideal_basis: &[KElem], scale: Rat) -> Result<HermitianLattice> {
        let n = self.rank_z();
        let mut gens: Vec<Vec<Rat>> = Vec::new();
        for a in ideal_basis {
            let ma = self.mult_matrix(a);
            // rows of (ma * basis) in ambient coordinates
            gens.extend(qmat_mul(&qmat_mul(&to_rat(&crate::linalg::identity(n)), &ma), &self.basis));
        }
        let den = gens
            .iter()
            .flatten()
            .fold(1i128, |l, x| num_integer::lcm(l, *x.denom()));
        let ints: IMat = gens
            .iter()
            .map(|r| r.iter().map(|x| (x * Rat::from_integer(den)).to_integer()).collect())
            .collect();
        let h = hnf(&ints, None);
        if h.len() != n {
            return Err(Error::Lattice("ideal multiple is degenerate".into()));
        }
        let basis: QMat = h
            .iter()
            .map(|r| r.iter().map(|&x| Rat::new(x, den)).collect())
            .collect();
        let unscaled: Vec<Vec<KElem>> = self.ambient_gram.clone();
        Self::from_parts(&self.k, unscaled, basis, scale)
    }

    /// Z-basis of the product of the ramified primes over q | Q, as elements of k.
    pub fn ramified_ideal_basis(k: &ImagQuadField, q: u64) -> Result<Vec<KElem>> {
        if q == 0 || k.d % q != 0 {
            return Err(Error::Argument(format!("{q} does not divide D = {}", k.d)));
        }
        let mut cur: Vec<[i128; 2]> = vec![[1, 0], [0, 1]];
        for p in crate::arith::prime_divisors(q) {
            let pb = k.ramified_prime_basis(p)?;
            let mut gens = Vec::new();
            for a in &cur {
                for b in &pb {
                    let prod = k.mul(&KElem::int(a[0], a[1]), &KElem::int(b[0], b[1]));
                    gens.push(vec![prod.a.to_integer(), prod.b.to_integer()]);
                }
            }
            let h = hnf(&gens, None);
            cur = h.iter().map(|r| [r[0], r[1]]).collect();
        }
        Ok(cur.iter().map(|r| KElem::int(r[0], r[1])).collect())
    }

    /// Lambda_q = q Lambda with the form divided by Q.
    pub fn ideal_twist(&self, q: u64) -> Result<HermitianLattice> {
        let basis = Self::ramified_ideal_basis(&self.k, q)?;
        self.ideal_multiple(&basis, Rat::new(1, q as i128))
    }

    /// a Lambda with the form divided by N(a), for an integral ideal a with Z-basis
    /// rows `[x, y]` meaning x + y pi.
    pub fn twist_by_ideal(&self, ideal: &[[i128; 2]]) -> Result<HermitianLattice> {
        let elems: Vec<KElem> = ideal.iter().map(|r| KElem::int(r[0], r[1])).collect();
        let h = hnf(&ideal.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), None);
        if h.len() != 2 {
            return Err(Error::Argument("ideal must have rank 2".into()));
        }
        let norm = h[0][0] * h[1][1];
        self.ideal_multiple(&elems, Rat::new(1, norm))
    }

    /// Determinant of the hermitian Gram matrix, a rational number.
    pub fn hermitian_det(&self) -> Rat {
        let k = &self.k;
        let m = self.m;
        let mut a = self.ambient_gram.clone();
        let mut det = KElem::one();
        for col in 0..m {
            let Some(p) = (col..m).find(|&i| !a[i][col].is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                a.swap(p, col);
                det = det.neg();
            }
            det = k.mul(&det, &a[col][col]);
            for i in col + 1..m {
                let f = k.div(&a[i][col], &a[col][col]).unwrap();
                for t in col..m {
                    let sub = k.mul(&f, &a[col][t]);
                    a[i][t] = a[i][t].sub(&sub);
                }
            }
        }
        debug_assert!(det.b.is_zero());
        det.a
    }

    /// Determinant of the trace form.
    pub fn disc_order(&self) -> i128 {
        crate::linalg::det_int(&self.zgram).abs()
    }
}

/// Z-basis (rows) of an integral k-ideal given by generators, as HNF in (1, pi) coordinates.
pub fn ideal_hnf(k: &ImagQuadField, gens: &[KElem]) -> Vec<[i128; 2]> {
    let mut rows = Vec::new();
    for g in gens {
        for b in basis_elems() {
            let p = k.mul(g, &b);
            rows.push(vec![p.a.to_integer(), p.b.to_integer()]);
        }
    }
    hnf(&rows, None).iter().map(|r| [r[0], r[1]]).collect()
}

/// Representatives of the ideal classes of k: ideals (a, (-b + sqrt(-D))/2) of the reduced forms.
pub fn class_representatives(k: &ImagQuadField) -> Result<Vec<Vec<[i128; 2]>>> {
    let (_, forms) = crate::fields::class_number_imag_quad(k.d)?;
    let mut out = Vec::new();
    for f in forms {
        // (-b + sqrt(-D))/2 = (-b - t)/2 + pi
        let num = -(f.b as i128) - k.pi_trace as i128;
        assert_eq!(num % 2, 0);
        let gens = [KElem::int(f.a as i128, 0), KElem::int(num / 2, 1)];
        out.push(ideal_hnf(k, &gens));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ok_power(d: u64, m: usize) -> HermitianLattice {
        let k = ImagQuadField::new(d).unwrap();
        let gram = (0..m)
            .map(|i| (0..m).map(|j| if i == j { KElem::one() } else { KElem::zero() }).collect())
            .collect();
        HermitianLattice::from_gram(&k, gram).unwrap()
    }

    #[test]
    fn rank_one_trace_gram() {
        let l = ok_power(7, 1);
        assert_eq!(l.zgram, vec![vec![2, 1], vec![1, 4]]);
        assert_eq!(l.disc_order(), 7);
        assert_eq!(ok_power(7, 2).disc_order(), 49);
        assert_eq!(l.signature, (1, 0));
    }

    #[test]
    fn twists_are_self_dual() {
        for d in [7u64, 15, 35] {
            let l = ok_power(d, 2);
            for q in crate::arith::divisors(d) {
                let t = l.ideal_twist(q).unwrap();
                assert_eq!(t.disc_order(), (d * d) as i128, "D={d} Q={q}");
                assert!(t.is_positive_definite());
            }
        }
        assert!(ok_power(7, 1).ideal_twist(3).is_err());
    }

    #[test]
    fn class_reps_have_expected_norms() {
        let k = ImagQuadField::new(15).unwrap();
        let reps = class_representatives(&k).unwrap();
        assert_eq!(reps.len(), 2);
        let norms: Vec<i128> = reps.iter().map(|r| r[0][0] * r[1][1]).collect();
        assert_eq!(norms, vec![1, 2]);
    }

    #[test]
    fn signature_of_indefinite_form() {
        let k = ImagQuadField::new(7).unwrap();
        let gram = vec![
            vec![KElem::int(-1, 0), KElem::zero()],
            vec![KElem::zero(), KElem::one()],
        ];
        let l = HermitianLattice::from_gram(&k, gram).unwrap();
        assert_eq!(l.signature, (1, 1));
        let off = vec![
            vec![KElem::zero(), KElem::int(0, 1)],
            vec![k.conj(&KElem::int(0, 1)), KElem::zero()],
        ];
        assert_eq!(HermitianLattice::from_gram(&k, off).unwrap().signature, (1, 1));
    }
}
