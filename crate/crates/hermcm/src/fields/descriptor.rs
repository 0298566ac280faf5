//! JSON field descriptors: `{"k": {"D": 7}, "F": {"min_poly": [-1, -3, 0, 1]}}`.

use super::cm::CMExtension;
use super::quadratic::ImagQuadField;
use super::real::TotallyRealField;
use crate::Result;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSpec {
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(default = "default_sign")]
    pub pi_sign: i64,
}

fn default_sign() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FSpec {
    pub min_poly: Vec<i64>,
    #[serde(default, rename = "disc_F", skip_serializing_if = "Option::is_none")]
    pub disc_f: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub k: KSpec,
    #[serde(rename = "F")]
    pub f: FSpec,
}

impl FieldDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
    pub fn build_k(&self) -> Result<ImagQuadField> {
        ImagQuadField::with_pi_sign(self.k.d, self.k.pi_sign)
    }
    pub fn build_f(&self) -> Result<TotallyRealField> {
        let poly: Vec<i128> = self.f.min_poly.iter().map(|&c| c as i128).collect();
        TotallyRealField::new(&poly, self.f.disc_f.map(|d| d as i128))
    }
    pub fn build(&self) -> Result<CMExtension> {
        CMExtension::new(self.build_k()?, self.build_f()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_shape() {
        let d = FieldDescriptor::parse(r#"{"k":{"D":7},"F":{"min_poly":[-1,-3,0,1]}}"#).unwrap();
        assert_eq!(d.k.d, 7);
        let e = d.build().unwrap();
        assert_eq!(e.f.disc_f, 81);
        assert!(FieldDescriptor::parse(r#"{"k":{"D":8},"F":{"min_poly":[0,1]}}"#)
            .unwrap()
            .build()
            .is_err());
    }
}
