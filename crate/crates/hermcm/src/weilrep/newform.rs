//! Newform coefficient tables: the internal CM generator and CSV ingestion.

use crate::fields::quadratic::{ImagQuadField, KElem};
use crate::{Error, Result, Rat, C64};
use num_traits::Zero;
use std::io::{Read, Write};

#[derive(Clone, Debug)]
pub struct NewformData {
    pub weight: u32,
    pub level: u64,
    /// coeffs[m] = c(m) for 1 <= m <= prec; index 0 unused. `None` marks a hole.
    pub coeffs: Vec<Option<C64>>,
    /// Exact integer coefficients when known.
    pub exact: Option<Vec<i128>>,
}

impl NewformData {
    pub fn prec(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn c(&self, m: usize) -> Result<C64> {
        match self.coeffs.get(m) {
            Some(Some(z)) => Ok(*z),
            Some(None) => Err(Error::Newform(format!("coefficient c({m}) is missing"))),
            None => Err(Error::Newform(format!("c({m}) is beyond precision {}", self.prec()))),
        }
    }

    /// Holes in the table.
    pub fn missing(&self) -> Vec<usize> {
        (1..self.coeffs.len()).filter(|&m| self.coeffs[m].is_none()).collect()
    }

    /// CSV with header (m, re, im).
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["m", "re", "im"])?;
        for (m, c) in self.coeffs.iter().enumerate().skip(1) {
            if let Some(z) = c {
                // shortest round-trip float formatting
                wr.write_record([m.to_string(), format!("{:?}", z.re), format!("{:?}", z.im)])?;
            }
        }
        wr.flush()?;
        Ok(())
    }

    /// Reads (m, re, im) rows; returns the table and a warning if c(1) != 1.
    pub fn read_csv<R: Read>(r: R, weight: u32, level: u64) -> Result<(Self, Option<String>)> {
        let mut rd = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(r);
        let headers = rd.headers()?.clone();
        let expect = ["m", "re", "im"];
        if headers.len() != 3 || headers.iter().zip(expect).any(|(a, b)| a != b) {
            return Err(Error::Parse { location: "header".into(), message: "expected columns m,re,im".into() });
        }
        let mut entries: Vec<(usize, C64)> = Vec::new();
        for (i, rec) in rd.records().enumerate() {
            let row = i + 2;
            let rec = rec.map_err(|e| Error::Parse { location: format!("row {row}"), message: e.to_string() })?;
            let bad = |what: &str| Error::Parse { location: format!("row {row}"), message: format!("bad {what}") };
            let m: usize = rec.get(0).and_then(|s| s.parse().ok()).ok_or_else(|| bad("m"))?;
            let re: f64 = rec.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| bad("re"))?;
            let im: f64 = rec.get(2).and_then(|s| s.parse().ok()).ok_or_else(|| bad("im"))?;
            if m == 0 {
                return Err(bad("m (must be positive)"));
            }
            entries.push((m, C64::new(re, im)));
        }
        let prec = entries.iter().map(|e| e.0).max().unwrap_or(0);
        let mut coeffs = vec![None; prec + 1];
        for (m, z) in entries {
            coeffs[m] = Some(z);
        }
        let warning = match coeffs.get(1).copied().flatten() {
            Some(z) if (z - C64::new(1.0, 0.0)).norm() < 1e-12 => None,
            Some(z) => Some(format!("c(1) = {z} is not normalized")),
            None => Some("c(1) is missing".to_string()),
        };
        Ok((NewformData { weight, level, coeffs, exact: None }, warning))
    }
}

/// Theta series of the Hecke character (alpha) -> alpha^{n-1} of k with h_k = 1:
/// c(m) = (1/w) sum_{N(alpha) = m} alpha^{n-1}, a newform in S_n(Gamma_0(D), chi^n).
pub fn cm_newform(k: &ImagQuadField, n: u32, prec: usize) -> Result<NewformData> {
    if k.h != 1 {
        return Err(Error::Newform(format!("class number of k is {}, need 1", k.h)));
    }
    if n < 3 || n % 2 == 0 {
        return Err(Error::Newform(format!("weight must be odd and at least 3, got {n}")));
    }
    if (n as u64 - 1) % k.w != 0 && k.w != 2 {
        return Err(Error::Newform(format!(
            "alpha^{} is not well defined on ideals when w = {}",
            n - 1,
            k.w
        )));
    }
    let mut sums = vec![KElem::zero(); prec + 1];
    for (a, b, norm) in k.elements_up_to_norm(prec as i128) {
        if norm == 0 {
            continue;
        }
        let alpha = KElem::int(a, b);
        let mut p = KElem::one();
        for _ in 0..n - 1 {
            p = k.mul(&p, &alpha);
        }
        sums[norm as usize] = sums[norm as usize].add(&p);
    }
    let w = Rat::from_integer(k.w as i128);
    let mut exact = vec![0i128; prec + 1];
    for m in 1..=prec {
        let v = sums[m].scale(Rat::from_integer(1) / w);
        if !v.b.is_zero() || !v.a.is_integer() {
            return Err(Error::Newform(format!("c({m}) is not a rational integer")));
        }
        exact[m] = v.a.to_integer();
    }
    let coeffs = std::iter::once(None)
        .chain(exact.iter().skip(1).map(|&c| Some(C64::new(c as f64, 0.0))))
        .collect();
    Ok(NewformData { weight: n, level: k.d, coeffs, exact: Some(exact) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d7_weight3() {
        let k = ImagQuadField::new(7).unwrap();
        let g = cm_newform(&k, 3, 60).unwrap();
        let c = g.exact.as_ref().unwrap();
        assert_eq!(c[1], 1);
        assert_eq!(c[2], -3);
        assert_eq!(c[7], -7);
        // inert primes
        for p in [3usize, 5, 13, 17, 19, 31] {
            assert_eq!(c[p], 0, "p = {p}");
        }
        // |c(q)|^2 = q^{n-1} at the ramified prime
        assert_eq!(c[7] * c[7], 49);
        // Hecke multiplicativity
        assert_eq!(c[2] * c[11], c[22]);
        // c(p^2) = c(p)^2 - chi(p) p^{n-1}
        assert_eq!(c[4], c[2] * c[2] - 4);
        // independent of the choice of pi
        let k2 = ImagQuadField::with_pi_sign(7, -1).unwrap();
        assert_eq!(cm_newform(&k2, 3, 60).unwrap().exact.unwrap(), *c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(cm_newform(&ImagQuadField::new(15).unwrap(), 3, 10).is_err());
        assert!(cm_newform(&ImagQuadField::new(7).unwrap(), 4, 10).is_err());
        assert!(cm_newform(&ImagQuadField::new(3).unwrap(), 3, 10).is_err());
        assert!(cm_newform(&ImagQuadField::new(3).unwrap(), 7, 10).is_ok());
    }

    #[test]
    fn csv_roundtrip_and_errors() {
        let g = cm_newform(&ImagQuadField::new(7).unwrap(), 3, 40).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let (h, warn) = NewformData::read_csv(&buf[..], 3, 7).unwrap();
        assert!(warn.is_none());
        assert_eq!(h.coeffs, g.coeffs);
        let bad = "m,re,im\n1,1,0\n2,x,0\n";
        match NewformData::read_csv(bad.as_bytes(), 3, 7) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "row 3"),
            other => panic!("unexpected {other:?}"),
        }
        let holes = "m,re,im\n1,1,0\n3,0,0\n";
        let (h, _) = NewformData::read_csv(holes.as_bytes(), 3, 7).unwrap();
        assert_eq!(h.missing(), vec![2]);
        assert!(h.c(2).is_err());
    }
}
