//! Univariate polynomials over Z, Z/p and Q. Coefficients are ascending.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Polynomials over F_p with coefficients in `0..p`, ascending, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyFp {
    pub p: u64,
    pub c: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        let mut q = PolyFp {
            p,
            c: c.into_iter().map(|x| x % p).collect(),
        };
        q.trim();
        q
    }
    pub fn from_int(p: u64, c: &[i128]) -> Self {
        PolyFp::new(p, c.iter().map(|&x| x.rem_euclid(p as i128) as u64).collect())
    }
    pub fn zero(p: u64) -> Self {
        PolyFp { p, c: Vec::new() }
    }
    pub fn one(p: u64) -> Self {
        PolyFp::new(p, vec![1])
    }
    pub fn x(p: u64) -> Self {
        PolyFp::new(p, vec![0, 1])
    }
    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }
    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: u64) -> u64 {
        crate::arith::mod_pow(a, self.p - 2, self.p)
    }
    pub fn add(&self, o: &PolyFp) -> PolyFp {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        PolyFp::new(self.p, c)
    }
    pub fn sub(&self, o: &PolyFp) -> PolyFp {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + self.p - o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        PolyFp::new(self.p, c)
    }
    pub fn mul(&self, o: &PolyFp) -> PolyFp {
        if self.is_zero() || o.is_zero() {
            return PolyFp::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + self.mulmod(a, b)) % self.p;
            }
        }
        PolyFp::new(self.p, c)
    }
    pub fn scale(&self, s: u64) -> PolyFp {
        PolyFp::new(self.p, self.c.iter().map(|&a| self.mulmod(a, s)).collect())
    }
    pub fn monic(&self) -> PolyFp {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.inv(self.lead()))
    }
    pub fn divrem(&self, d: &PolyFp) -> (PolyFp, PolyFp) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dl = d.c.len();
        if r.len() < dl {
            return (PolyFp::zero(self.p), self.clone());
        }
        let inv = self.inv(d.lead());
        let mut q = vec![0u64; r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let coef = self.mulmod(r[i + dl - 1], inv);
            q[i] = coef;
            if coef == 0 {
                continue;
            }
            for j in 0..dl {
                let t = self.mulmod(coef, d.c[j]);
                r[i + j] = (r[i + j] + self.p - t) % self.p;
            }
        }
        (PolyFp::new(self.p, q), PolyFp::new(self.p, r))
    }
    pub fn rem(&self, d: &PolyFp) -> PolyFp {
        self.divrem(d).1
    }
    pub fn gcd(&self, o: &PolyFp) -> PolyFp {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
    pub fn derivative(&self) -> PolyFp {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| self.mulmod(a, i as u64 % self.p))
            .collect();
        PolyFp::new(self.p, c)
    }
    pub fn powmod(&self, mut e: u128, m: &PolyFp) -> PolyFp {
        let mut base = self.rem(m);
        let mut acc = PolyFp::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0u64, |acc, &a| (self.mulmod(acc, x) + a) % self.p)
    }
    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> PolyFp {
        let p = self.p as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        PolyFp::new(self.p, c)
    }
}

/// Squarefree factorization of a monic polynomial: pairs (squarefree factor, multiplicity).
pub fn squarefree_factorization(f: &PolyFp) -> Vec<(PolyFp, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    let f = f.monic();
    if f.degree() <= 0 {
        return out;
    }
    let fd = f.derivative();
    if fd.is_zero() {
        for (g, m) in squarefree_factorization(&f.pth_root()) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&fd);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if z.degree() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if c.degree() > 0 {
        for (g, m) in squarefree_factorization(&c.pth_root()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &PolyFp) -> Vec<(PolyFp, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.monic();
    let x = PolyFp::x(p);
    let mut h = x.clone();
    let mut d = 1u32;
    while rest.degree() >= 2 * d as i64 {
        h = h.powmod(p as u128, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree() > 0 {
            out.push((g.clone(), d));
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.degree() > 0 {
        out.push((rest.clone(), rest.degree() as u32));
    }
    out
}

/// Equal-degree splitting of a product of distinct irreducibles of degree d.
pub fn equal_degree(f: &PolyFp, d: u32, rng: &mut ChaCha8Rng) -> Vec<PolyFp> {
    let p = f.p;
    let n = f.degree() as u32;
    if n == d {
        return vec![f.monic()];
    }
    loop {
        let a = PolyFp::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() <= 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = ((p as u128).pow(d) - 1) / 2;
            a.powmod(e, f).sub(&PolyFp::one(p))
        };
        let g = b.gcd(f);
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.divrem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Full factorization into monic irreducibles with multiplicities, sorted.
pub fn factor_mod_p(f: &PolyFp, rng: &mut ChaCha8Rng) -> Vec<(PolyFp, u32)> {
    let mut out = Vec::new();
    for (sf, m) in squarefree_factorization(f) {
        for (g, d) in distinct_degree(&sf) {
            for irr in equal_degree(&g, d, rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort();
    out
}

/// Polynomial over Z/p^k as plain integers reduced into `0..p^k`.
fn reduce(c: &[i128], m: i128) -> Vec<i128> {
    c.iter().map(|x| x.rem_euclid(m)).collect()
}

fn mul_i(a: &[i128], b: &[i128], m: i128) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y).rem_euclid(m);
        }
    }
    c
}

/// Division by a monic polynomial over Z/m.
fn divrem_monic(a: &[i128], d: &[i128], m: i128) -> (Vec<i128>, Vec<i128>) {
    let mut r = reduce(a, m);
    let dl = d.len();
    if r.len() < dl {
        return (Vec::new(), r);
    }
    let mut q = vec![0i128; r.len() - dl + 1];
    for i in (0..q.len()).rev() {
        let coef = r[i + dl - 1];
        q[i] = coef;
        for j in 0..dl {
            r[i + j] = (r[i + j] - coef * d[j]).rem_euclid(m);
        }
    }
    r.truncate(dl - 1);
    (q, r)
}

fn to_fp(c: &[i128], p: u64) -> PolyFp {
    PolyFp::from_int(p, c)
}

fn from_fp(f: &PolyFp) -> Vec<i128> {
    f.c.iter().map(|&x| x as i128).collect()
}

/// Extended gcd over F_p: returns (s, t) with s a + t b = 1.
fn xgcd_fp(a: &PolyFp, b: &PolyFp) -> (PolyFp, PolyFp) {
    let p = a.p;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (PolyFp::one(p), PolyFp::zero(p));
    let (mut t0, mut t1) = (PolyFp::zero(p), PolyFp::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    assert_eq!(r0.degree(), 0, "factors are not coprime");
    let inv = crate::arith::mod_pow(r0.c[0], p - 2, p);
    (s0.scale(inv), t0.scale(inv))
}

/// Hensel-lift a coprime factorization `f = g h mod p` (f, g monic) to modulus `p^k`.
/// Returns the lifted monic `g` with coefficients in `0..p^k`.
pub fn hensel_lift(f: &[i128], g: &PolyFp, p: u64, k: u32) -> Vec<i128> {
    let fp = to_fp(f, p);
    let g0 = g.monic();
    let (h0, r) = fp.divrem(&g0);
    assert!(r.is_zero(), "g does not divide f mod p");
    let (s, t) = xgcd_fp(&g0, &h0);
    let mut g = from_fp(&g0);
    let mut h = from_fp(&h0);
    let pi = p as i128;
    let mut m = pi;
    for _ in 1..k {
        let m2 = m * pi;
        // e = (f - g h) / m  mod p
        let gh = mul_i(&g, &h, m2);
        let mut e = vec![0i128; f.len().max(gh.len())];
        for (i, x) in e.iter_mut().enumerate() {
            let d = f.get(i).copied().unwrap_or(0) - gh.get(i).copied().unwrap_or(0);
            let d = d.rem_euclid(m2);
            assert_eq!(d % m, 0, "hensel invariant broken");
            *x = d / m;
        }
        let ep = to_fp(&e, p);
        // g' = g + m (t e mod g), h' = h + m (s e mod h)
        let dg = t.mul(&ep).rem(&g0);
        let dh = s.mul(&ep).rem(&h0);
        let add = |base: &Vec<i128>, delta: &PolyFp| {
            let mut out = base.clone();
            for (i, &c) in delta.c.iter().enumerate() {
                if i >= out.len() {
                    out.resize(i + 1, 0);
                }
                out[i] = (out[i] + m * c as i128).rem_euclid(m2);
            }
            out
        };
        g = add(&g, &dg);
        h = add(&h, &dh);
        m = m2;
    }
    g
}

/// Reduce `a(X)` modulo a monic `g(X)` over Z/m.
pub fn rem_monic_mod(a: &[i128], g: &[i128], m: i128) -> Vec<i128> {
    let mut r = divrem_monic(a, g, m).1;
    r.resize(g.len() - 1, 0);
    r
}

/// Multiplication in Z/m [X]/(g).
pub fn mulmod_monic(a: &[i128], b: &[i128], g: &[i128], m: i128) -> Vec<i128> {
    rem_monic_mod(&mul_i(a, b, m), g, m)
}

// ---- rational / integer polynomials ----

pub type QPoly = Vec<BigRational>;

pub fn qpoly_from_int(c: &[i128]) -> QPoly {
    let mut v: QPoly = c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
    qtrim(&mut v);
    v
}

fn qtrim(v: &mut QPoly) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

pub fn qpoly_rem(a: &QPoly, d: &QPoly) -> QPoly {
    let mut r = a.clone();
    qtrim(&mut r);
    let dl = d.len();
    let lead = d.last().expect("nonzero divisor").clone();
    while r.len() >= dl && !r.is_empty() {
        let coef = r.last().unwrap() / &lead;
        let shift = r.len() - dl;
        for j in 0..dl {
            r[shift + j] = &r[shift + j] - &coef * &d[j];
        }
        r.pop();
        qtrim(&mut r);
    }
    r
}

pub fn qpoly_derivative(a: &QPoly) -> QPoly {
    let mut v: QPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, x)| x * BigRational::from_integer(BigInt::from(i)))
        .collect();
    qtrim(&mut v);
    v
}

fn qpoly_eval_sign(a: &QPoly, x: &BigRational) -> i32 {
    let v = a
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

pub fn sturm_sequence(f: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![f.clone(), qpoly_derivative(f)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let r = qpoly_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|x| -x).collect());
    }
    seq
}

fn sign_changes(seq: &[QPoly], x: &BigRational) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|p| qpoly_eval_sign(p, x))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn lead_sign_at_inf(p: &QPoly, neg: bool) -> i32 {
    let s = if p.last().unwrap().is_positive() { 1 } else { -1 };
    if neg && (p.len() - 1) % 2 == 1 {
        -s
    } else {
        s
    }
}

/// Number of distinct real roots of a squarefree rational polynomial.
pub fn count_real_roots(f: &QPoly) -> usize {
    let seq = sturm_sequence(f);
    let count = |neg: bool| {
        let s: Vec<i32> = seq.iter().map(|p| lead_sign_at_inf(p, neg)).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    count(true) - count(false)
}

/// Real roots of a squarefree integer polynomial, isolated by Sturm bisection and
/// polished by Newton in f64; ascending.
pub fn real_roots(c: &[i128]) -> Vec<f64> {
    let f = qpoly_from_int(c);
    let seq = sturm_sequence(&f);
    let lead = c.last().unwrap().abs();
    let bound: i128 = 1 + c.iter().map(|x| x.abs()).max().unwrap() / lead.max(1);
    let mut out = Vec::new();
    let mut stack = vec![(
        BigRational::from_integer(BigInt::from(-bound)),
        BigRational::from_integer(BigInt::from(bound)),
    )];
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((a, b)) = stack.pop() {
        let n = sign_changes(&seq, &a) - sign_changes(&seq, &b);
        if n == 0 {
            continue;
        }
        let width = &b - &a;
        if n == 1 && width < BigRational::new(BigInt::one(), BigInt::from(1u64 << 40)) {
            let mid = (&a + &b) / &two;
            out.push(rat_to_f64(&mid));
            continue;
        }
        let mid = (&a + &b) / &two;
        if qpoly_eval_sign(&f, &mid) == 0 {
            out.push(rat_to_f64(&mid));
            let eps = BigRational::new(BigInt::one(), BigInt::from(1u64 << 50));
            stack.push((a, &mid - &eps));
            stack.push((&mid + &eps, b));
        } else {
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
    }
    let fd: Vec<f64> = c.iter().map(|&x| x as f64).collect();
    for r in out.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = fd
                .iter()
                .rev()
                .fold((0.0, 0.0), |(v, dv), &a| (v * *r + a, dv * *r + v));
            if dv != 0.0 {
                *r -= v / dv;
            }
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

pub fn rat_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
    })
}

/// Discriminant of an integer polynomial via the Sylvester resultant.
pub fn discriminant(c: &[i128]) -> BigInt {
    let n = c.len() - 1;
    let fd: Vec<i128> = c.iter().enumerate().skip(1).map(|(i, &a)| a * i as i128).collect();
    let res = resultant(c, &fd);
    let lead = BigInt::from(c[n]);
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    BigInt::from(sign) * res / lead
}

pub fn resultant(a: &[i128], b: &[i128]) -> BigInt {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![BigRational::zero(); size]; size];
    for i in 0..n {
        for (j, &x) in a.iter().rev().enumerate() {
            mat[i][i + j] = BigRational::from_integer(BigInt::from(x));
        }
    }
    for i in 0..m {
        for (j, &x) in b.iter().rev().enumerate() {
            mat[n + i][i + j] = BigRational::from_integer(BigInt::from(x));
        }
    }
    let det = big_det(mat);
    assert!(det.is_integer());
    det.to_integer()
}

pub fn big_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        let piv = m[k][k].clone();
        det *= &piv;
        for i in k + 1..n {
            let f = &m[i][k] / &piv;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let t = &m[k][j] * &f;
                m[i][j] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn product(fs: &[(PolyFp, u32)], p: u64) -> PolyFp {
        let mut acc = PolyFp::one(p);
        for (g, m) in fs {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }

    /// Irreducibility oracle: no factor of degree <= deg/2 by exhaustive trial division.
    fn irreducible_brute(f: &PolyFp) -> bool {
        let p = f.p;
        let n = f.degree();
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for idx in 0..count {
                let mut c = Vec::new();
                let mut x = idx;
                for _ in 0..d {
                    c.push(x % p);
                    x /= p;
                }
                c.push(1);
                let g = PolyFp::new(p, c);
                if f.rem(&g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factorization_reconstructs_and_is_irreducible() {
        let mut r = rng();
        for p in [2u64, 3, 5, 7, 17] {
            for f in [
                vec![-1i128, -3, 0, 1],
                vec![-1, -1, 1],
                vec![1, 0, 0, 0, 0, 1],
                vec![4, 4, 1],
                vec![1, 2, 3, 4, 5, 1],
            ] {
                let fp = PolyFp::from_int(p, &f);
                let fac = factor_mod_p(&fp, &mut r);
                assert_eq!(product(&fac, p), fp.monic(), "p={p} f={f:?}");
                for (g, _) in &fac {
                    assert!(irreducible_brute(g), "p={p} factor {g:?}");
                }
            }
        }
    }

    #[test]
    fn cubic_mod_17_splits_completely() {
        let fp = PolyFp::from_int(17, &[-1, -3, 0, 1]);
        let fac = factor_mod_p(&fp, &mut rng());
        assert_eq!(fac.len(), 3);
        assert!(fac.iter().all(|(g, m)| g.degree() == 1 && *m == 1));
    }

    #[test]
    fn hensel_lift_divides_mod_pk() {
        let f = vec![-1i128, -3, 0, 1];
        let p = 17u64;
        let fac = factor_mod_p(&PolyFp::from_int(p, &f), &mut rng());
        let g = hensel_lift(&f, &fac[0].0, p, 6);
        let m = 17i128.pow(6);
        let r = rem_monic_mod(&f, &g, m);
        assert!(r.iter().all(|&x| x == 0));
    }

    #[test]
    fn discriminants_and_real_roots() {
        assert_eq!(discriminant(&[-1, -3, 0, 1]), BigInt::from(81));
        assert_eq!(discriminant(&[-1, -1, 1]), BigInt::from(5));
        let roots = real_roots(&[-1, -3, 0, 1]);
        assert_eq!(roots.len(), 3);
        for r in roots {
            assert!((r * r * r - 3.0 * r - 1.0).abs() < 1e-12);
        }
        assert_eq!(count_real_roots(&qpoly_from_int(&[1, 0, 1])), 0);
        assert_eq!(real_roots(&[-2, 0, 1]).len(), 2);
    }
}
