//! JSON documents read and written by the command-line tool.
//!
//! A support is `{"variables": [...], "monomials": [[...], ...]}` (see
//! [`SupportSet`](crate::SupportSet)). An explicit region is
//! `{"n": 2, "simplices": [[["0","0"], ["3","0"], ["0","2"]], ...]}` with
//! rational coordinates as `"p/q"` strings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Simplex};
use crate::rational::{parse_rational, Rational};
use crate::region::NewtonRegion;

/// Version tag carried by every report.
pub const SCHEMA: &str = "newton-mu/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionJson {
    pub n: usize,
    pub simplices: Vec<Vec<Vec<String>>>,
}

impl RegionJson {
    pub fn from_region(region: &NewtonRegion) -> Self {
        RegionJson {
            n: region.n(),
            simplices: region
                .simplices()
                .iter()
                .map(|s| s.vertices().iter().map(Point::to_strings).collect())
                .collect(),
        }
    }

    /// Validates every point and simplex; the result is checked for overlaps
    /// when its Newton number is computed.
    pub fn to_region(&self) -> Result<NewtonRegion> {
        let simplices = self
            .simplices
            .iter()
            .map(|s| {
                let vertices = s
                    .iter()
                    .map(|p| {
                        if p.len() != self.n {
                            return Err(Error::DimensionMismatch {
                                expected: self.n,
                                found: p.len(),
                            });
                        }
                        let coords = p.iter().map(|c| parse_rational(c)).collect::<Result<Vec<Rational>>>()?;
                        Point::new(coords)
                    })
                    .collect::<Result<Vec<Point>>>()?;
                Simplex::new(vertices)
            })
            .collect::<Result<Vec<Simplex>>>()?;
        NewtonRegion::from_simplices(self.n, simplices)
    }
}

/// Reads an explicit region from JSON text.
pub fn region_from_json(text: &str) -> Result<NewtonRegion> {
    let raw: RegionJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: 0,
        message: e.to_string(),
    })?;
    raw.to_region()
}
