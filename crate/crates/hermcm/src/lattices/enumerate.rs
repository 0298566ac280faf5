//! Short-vector enumeration for positive definite rational quadratic forms.

use crate::linalg::{cholesky, inverse_rat, QMat};
use crate::{Error, Result, Rat};
use num_traits::ToPrimitive;
use rayon::prelude::*;

/// Q(c) = c^T A c / 2 for a positive definite rational symmetric A.
#[derive(Clone, Debug)]
pub struct PosDefForm {
    n: usize,
    /// den * A, integral.
    scaled: Vec<Vec<i128>>,
    den: i128,
    /// Fincke-Pohst coefficients: Q(c) = sum_i q[i][i] (c_i + sum_{j>i} q[i][j] c_j)^2.
    q: Vec<Vec<f64>>,
    box_radius: Vec<f64>,
}

impl PosDefForm {
    pub fn new(a: &QMat) -> Result<Self> {
        let n = a.len();
        let den = a
            .iter()
            .flatten()
            .fold(1i128, |l, x| num_integer::lcm(l, *x.denom()));
        let scaled: Vec<Vec<i128>> = a
            .iter()
            .map(|r| r.iter().map(|x| (x * Rat::from_integer(den)).to_integer()).collect())
            .collect();
        let m: Vec<Vec<f64>> = a
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().unwrap() / 2.0).collect())
            .collect();
        let l = cholesky(&m).ok_or_else(|| Error::Lattice("form is not positive definite".into()))?;
        // From L L^T = M: Q(c) = |L^T c|^2; row i of L^T gives level i.
        let mut q = vec![vec![0.0; n]; n];
        for i in 0..n {
            q[i][i] = l[i][i] * l[i][i];
            for j in i + 1..n {
                q[i][j] = l[j][i] / l[i][i];
            }
        }
        let mut half = a.clone();
        for r in half.iter_mut() {
            for x in r.iter_mut() {
                *x /= Rat::from_integer(2);
            }
        }
        let inv = inverse_rat(&half).ok_or_else(|| Error::Lattice("singular form".into()))?;
        let box_radius = (0..n).map(|i| inv[i][i].to_f64().unwrap().max(0.0)).collect();
        Ok(PosDefForm { n, scaled, den, q, box_radius })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Exact Q(c).
    pub fn value(&self, c: &[i128]) -> Rat {
        let mut s = 0i128;
        for i in 0..self.n {
            if c[i] == 0 {
                continue;
            }
            let mut row = 0i128;
            for j in 0..self.n {
                row += self.scaled[i][j] * c[j];
            }
            s += c[i] * row;
        }
        Rat::new(s, 2 * self.den)
    }

    fn search(&self, level: usize, c: &mut Vec<i128>, rem: f64, bound: Rat, slack: f64, out: &mut Vec<(Vec<i128>, Rat)>) {
        let i = level;
        let center: f64 = -(i + 1..self.n).map(|j| self.q[i][j] * c[j] as f64).sum::<f64>();
        let r = ((rem + slack) / self.q[i][i]).max(0.0).sqrt();
        let lo = (center - r).ceil() as i128;
        let hi = (center + r).floor() as i128;
        for x in lo..=hi {
            c[i] = x;
            let t = x as f64 - center;
            let used = self.q[i][i] * t * t;
            if used > rem + slack {
                continue;
            }
            if i == 0 {
                if c.iter().all(|&v| v == 0) {
                    continue;
                }
                let v = self.value(c);
                if v <= bound {
                    out.push((c.clone(), v));
                }
            } else {
                self.search(i - 1, c, rem - used, bound, slack, out);
            }
        }
        c[i] = 0;
    }

    /// All nonzero c with Q(c) <= bound, ordered deterministically.
    pub fn short_vectors(&self, bound: Rat) -> Vec<(Vec<i128>, Rat)> {
        if self.n == 0 || bound <= Rat::from_integer(0) {
            return Vec::new();
        }
        let b = bound.to_f64().unwrap();
        let slack = 1e-9 * b.max(1.0);
        let top = self.n - 1;
        let r = ((b + slack) / self.q[top][top]).sqrt();
        let lo = (-r).ceil() as i128;
        let hi = r.floor() as i128;
        let chunks: Vec<Vec<(Vec<i128>, Rat)>> = (lo..=hi)
            .into_par_iter()
            .map(|x| {
                let mut c = vec![0i128; self.n];
                c[top] = x;
                let used = self.q[top][top] * (x as f64) * (x as f64);
                let mut out = Vec::new();
                if used <= b + slack {
                    if top == 0 {
                        if x != 0 {
                            let v = self.value(&c);
                            if v <= bound {
                                out.push((c.clone(), v));
                            }
                        }
                    } else {
                        self.search(top - 1, &mut c, b - used, bound, slack, &mut out);
                    }
                }
                out
            })
            .collect();
        chunks.into_iter().flatten().collect()
    }

    /// Oracle: exhaustive search over the coordinate box containing the ellipsoid.
    pub fn naive_short_vectors(&self, bound: Rat) -> Vec<(Vec<i128>, Rat)> {
        let b = bound.to_f64().unwrap();
        let radii: Vec<i128> = self
            .box_radius
            .iter()
            .map(|&r| (b * r).sqrt().floor() as i128 + 1)
            .collect();
        let mut out = Vec::new();
        let mut c: Vec<i128> = radii.iter().map(|r| -r).collect();
        loop {
            if c.iter().any(|&x| x != 0) {
                let v = self.value(&c);
                if v <= bound {
                    out.push((c.clone(), v));
                }
            }
            let mut i = 0;
            loop {
                if i == self.n {
                    return out;
                }
                if c[i] < radii[i] {
                    c[i] += 1;
                    break;
                }
                c[i] = -radii[i];
                i += 1;
            }
        }
    }
}
