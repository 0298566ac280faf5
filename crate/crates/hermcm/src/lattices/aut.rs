//! O_k-linear isometries between positive definite hermitian lattices.

use super::enumerate::PosDefForm;
use super::hermitian::HermitianLattice;
use crate::linalg::{det_int, hnf, inverse_rat, mat_mul, qmat_mul, to_rat, transpose, IMat};
use crate::{Error, Result, Rat};
use num_traits::Zero;

fn bil(g: &IMat, x: &[i128], y: &[i128]) -> i128 {
    let n = g.len();
    let mut s = 0;
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        for j in 0..n {
            s += x[i] * g[i][j] * y[j];
        }
    }
    s
}

/// Vectors v_1..v_s such that {v_i, pi v_i} spans the lattice over Z.
fn module_generators(l: &HermitianLattice) -> Result<Vec<Vec<i128>>> {
    let n = l.rank_z();
    let form = PosDefForm::new(&to_rat(&l.zgram))?;
    let mut bound = Rat::from_integer(1);
    loop {
        let mut vs = form.short_vectors(bound);
        vs.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        let mut chosen: Vec<Vec<i128>> = Vec::new();
        let mut rows: Vec<Vec<i128>> = Vec::new();
        let mut cur_det: Option<i128> = None;
        for (v, _) in vs {
            let mut trial = rows.clone();
            trial.push(v.clone());
            trial.push(l.apply_pi(&v));
            let h = hnf(&trial, None);
            let improves = if h.len() > rows.len() {
                true
            } else if h.len() == n {
                cur_det.is_none_or(|c| det_int(&h).abs() < c)
            } else {
                false
            };
            if improves {
                rows = h;
                chosen.push(v);
                if rows.len() == n {
                    let d = det_int(&rows).abs();
                    cur_det = Some(d);
                    if d == 1 {
                        return Ok(chosen);
                    }
                }
            }
        }
        bound *= Rat::from_integer(2);
        if bound > Rat::from_integer(1 << 20) {
            return Err(Error::Lattice("could not find module generators".into()));
        }
    }
}

struct Search<'a> {
    src: &'a HermitianLattice,
    dst: &'a HermitianLattice,
    gens: Vec<Vec<i128>>,
    gens_pi: Vec<Vec<i128>>,
    candidates: Vec<Vec<Vec<i128>>>,
    stop_at_first: bool,
    found: Vec<IMat>,
}

impl Search<'_> {
    fn solve(&self, imgs: &[Vec<i128>]) -> Option<IMat> {
        let n = self.src.rank_z();
        let mut m_rows = Vec::new();
        let mut w_rows = Vec::new();
        for (i, w) in imgs.iter().enumerate() {
            m_rows.push(self.gens[i].clone());
            m_rows.push(self.gens_pi[i].clone());
            w_rows.push(w.clone());
            w_rows.push(self.dst.apply_pi(w));
        }
        // pick n independent source rows
        let mut basis_idx = Vec::new();
        let mut acc: Vec<Vec<i128>> = Vec::new();
        for (i, r) in m_rows.iter().enumerate() {
            let mut t = acc.clone();
            t.push(r.clone());
            if hnf(&t, None).len() > acc.len() {
                acc = t;
                basis_idx.push(i);
            }
            if acc.len() == n {
                break;
            }
        }
        let mb: Vec<Vec<i128>> = basis_idx.iter().map(|&i| m_rows[i].clone()).collect();
        let wb: Vec<Vec<i128>> = basis_idx.iter().map(|&i| w_rows[i].clone()).collect();
        let inv = inverse_rat(&to_rat(&mb))?;
        let x = qmat_mul(&inv, &to_rat(&wb));
        let mut xi = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                if !x[i][j].is_integer() {
                    return None;
                }
                xi[i][j] = x[i][j].to_integer();
            }
        }
        for (r, w) in m_rows.iter().zip(&w_rows) {
            let img: Vec<i128> = (0..n).map(|j| (0..n).map(|i| r[i] * xi[i][j]).sum()).collect();
            if &img != w {
                return None;
            }
        }
        if det_int(&xi).abs() != 1 {
            return None;
        }
        if mat_mul(&mat_mul(&xi, &self.dst.zgram), &transpose(&xi)) != self.src.zgram {
            return None;
        }
        if mat_mul(&self.src.pi_action, &xi) != mat_mul(&xi, &self.dst.pi_action) {
            return None;
        }
        Some(xi)
    }

    fn go(&mut self, imgs: &mut Vec<Vec<i128>>) {
        if self.stop_at_first && !self.found.is_empty() {
            return;
        }
        let i = imgs.len();
        if i == self.gens.len() {
            if let Some(x) = self.solve(imgs) {
                self.found.push(x);
            }
            return;
        }
        let gs = &self.src.zgram;
        let gd = &self.dst.zgram;
        for w in self.candidates[i].clone() {
            let wpi = self.dst.apply_pi(&w);
            let ok = (0..i).all(|j| {
                bil(gd, &imgs[j], &w) == bil(gs, &self.gens[j], &self.gens[i])
                    && bil(gd, &imgs[j], &wpi) == bil(gs, &self.gens[j], &self.gens_pi[i])
            }) && bil(gd, &w, &wpi) == bil(gs, &self.gens[i], &self.gens_pi[i]);
            if ok {
                imgs.push(w);
                self.go(imgs);
                imgs.pop();
            }
        }
    }
}

fn search(src: &HermitianLattice, dst: &HermitianLattice, first: bool) -> Result<Vec<IMat>> {
    if !src.is_positive_definite() || !dst.is_positive_definite() {
        return Err(Error::Lattice("isometry search needs positive definite lattices".into()));
    }
    if src.rank_z() != dst.rank_z() || src.k != dst.k {
        return Ok(Vec::new());
    }
    let gens = module_generators(src)?;
    let gens_pi: Vec<Vec<i128>> = gens.iter().map(|v| src.apply_pi(v)).collect();
    let norms: Vec<Rat> = gens.iter().map(|v| src.q_value(v)).collect();
    let maxn = norms.iter().copied().fold(Rat::zero(), Rat::max);
    let form = PosDefForm::new(&to_rat(&dst.zgram))?;
    let pool = form.short_vectors(maxn);
    let candidates = norms
        .iter()
        .map(|q| pool.iter().filter(|(_, v)| v == q).map(|(c, _)| c.clone()).collect())
        .collect();
    let mut s = Search { src, dst, gens, gens_pi, candidates, stop_at_first: first, found: Vec::new() };
    s.go(&mut Vec::new());
    Ok(s.found)
}

/// Number of O_k-linear isometries of a positive definite lattice.
pub fn aut_count(l: &HermitianLattice) -> Result<u64> {
    Ok(search(l, l, false)?.len() as u64)
}

/// An O_k-linear isometry src -> dst as an integer matrix X with
/// coords(f(x)) = coords(x) X, if one exists.
pub fn find_isometry(src: &HermitianLattice, dst: &HermitianLattice) -> Result<Option<IMat>> {
    Ok(search(src, dst, true)?.into_iter().next())
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
    fn rank_one_units() {
        assert_eq!(aut_count(&diag(7, &[1])).unwrap(), 2);
        assert_eq!(aut_count(&diag(3, &[1])).unwrap(), 6);
        assert_eq!(aut_count(&diag(11, &[1])).unwrap(), 2);
    }

    #[test]
    fn rank_two_diagonal() {
        // (Z/2)^2 signs times the swap
        assert_eq!(aut_count(&diag(7, &[1, 1])).unwrap(), 8);
        assert_eq!(aut_count(&diag(7, &[1, 2])).unwrap(), 4);
    }

    #[test]
    fn twist_twice_is_isometric() {
        let l = diag(7, &[1, 1]);
        let t = l.ideal_twist(7).unwrap().ideal_twist(7).unwrap();
        assert!(find_isometry(&l, &t).unwrap().is_some());
        assert!(find_isometry(&l, &diag(7, &[1, 2])).unwrap().is_none());
    }
}
