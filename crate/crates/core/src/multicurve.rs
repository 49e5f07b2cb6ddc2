//! Dividing sets on the 3-punctured sphere, up to isotopy.
//!
//! A multicurve with no homotopically trivial components and no closed
//! components is determined by its arc counts: `nᵢⱼ` arcs joining boundary
//! components `cᵢ` and `cⱼ`, and `bᵢ` boundary-parallel arcs at `cᵢ`. With
//! `2kᵢ` endpoints on `cᵢ` the counts satisfy
//!
//! ```text
//! n12 + n13 + 2·b1 = 2·k1
//! n12 + n23 + 2·b2 = 2·k2
//! n13 + n23 + 2·b3 = 2·k3
//! ```
//!
//! For fixed `b` the system has at most one solution:
//! `n12 = (k1-b1) + (k2-b2) - (k3-b3)` and cyclically.

use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MulticurveError {
    #[error("cannot parse boundary data {0:?}; expected \"k1,k2,k3\"")]
    BoundaryParse(String),
    #[error("cannot parse multicurve coordinates {0:?}; expected \"(n12,n13,n23|b1,b2,b3)\"")]
    CoordinateParse(String),
}

/// Half the endpoint counts: boundary `cᵢ` carries `2kᵢ` endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryData {
    pub k1: u64,
    pub k2: u64,
    pub k3: u64,
}

impl BoundaryData {
    pub fn new(k1: u64, k2: u64, k3: u64) -> Self {
        Self { k1, k2, k3 }
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.k1, self.k2, self.k3]
    }
}

impl fmt::Display for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.k1, self.k2, self.k3)
    }
}

impl FromStr for BoundaryData {
    type Err = MulticurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| MulticurveError::BoundaryParse(s.into()))?;
        match parts[..] {
            [k1, k2, k3] => Ok(Self { k1, k2, k3 }),
            _ => Err(MulticurveError::BoundaryParse(s.into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MulticurveCoordinates {
    pub n12: u64,
    pub n13: u64,
    pub n23: u64,
    pub b1: u64,
    pub b2: u64,
    pub b3: u64,
}

impl MulticurveCoordinates {
    /// Half the endpoint count on each boundary component, if the counts are even.
    pub fn boundary_data(&self) -> Option<BoundaryData> {
        let e1 = self.n12 + self.n13 + 2 * self.b1;
        let e2 = self.n12 + self.n23 + 2 * self.b2;
        let e3 = self.n13 + self.n23 + 2 * self.b3;
        (e1.is_multiple_of(2) && e2.is_multiple_of(2) && e3.is_multiple_of(2)).then(|| BoundaryData::new(e1 / 2, e2 / 2, e3 / 2))
    }

    pub fn satisfies(&self, bd: &BoundaryData) -> bool {
        self.boundary_data() == Some(*bd)
    }

    /// No boundary-parallel arcs.
    pub fn is_tight_candidate(&self) -> bool {
        self.b1 == 0 && self.b2 == 0 && self.b3 == 0
    }
}

impl fmt::Display for MulticurveCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}|{},{},{})", self.n12, self.n13, self.n23, self.b1, self.b2, self.b3)
    }
}

impl FromStr for MulticurveCoordinates {
    type Err = MulticurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MulticurveError::CoordinateParse(s.into());
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let (arcs, parallel) = inner.split_once('|').ok_or_else(bad)?;
        let nums = |part: &str| -> Result<Vec<u64>, MulticurveError> {
            part.split(',').map(|p| p.trim().parse::<u64>().map_err(|_| bad())).collect()
        };
        match (nums(arcs)?.as_slice(), nums(parallel)?.as_slice()) {
            (&[n12, n13, n23], &[b1, b2, b3]) => Ok(Self { n12, n13, n23, b1, b2, b3 }),
            _ => Err(bad()),
        }
    }
}

impl Serialize for MulticurveCoordinates {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MulticurveCoordinates {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(de::Error::custom)
    }
}

/// Coordinates together with the Dehn twist counts along each boundary
/// component that distinguish relative isotopy classes. Enumeration never
/// ranges over twists, since there are infinitely many.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelativeMulticurve {
    pub coordinates: MulticurveCoordinates,
    pub twists: [i64; 3],
}

fn solve_arcs(k: [u64; 3], b: [u64; 3]) -> Option<MulticurveCoordinates> {
    let free = [
        k[0].checked_sub(b[0])? as i128,
        k[1].checked_sub(b[1])? as i128,
        k[2].checked_sub(b[2])? as i128,
    ];
    let n12 = free[0] + free[1] - free[2];
    let n13 = free[0] + free[2] - free[1];
    let n23 = free[1] + free[2] - free[0];
    if n12 < 0 || n13 < 0 || n23 < 0 {
        return None;
    }
    Some(MulticurveCoordinates {
        n12: n12 as u64,
        n13: n13 as u64,
        n23: n23 as u64,
        b1: b[0],
        b2: b[1],
        b3: b[2],
    })
}

/// All coordinate vectors realizing `bd`, in lexicographic order of
/// `(n12, n13, n23, b1, b2, b3)`. Without boundary-parallel arcs there is at
/// most one.
pub fn enumerate(bd: &BoundaryData, allow_boundary_parallel: bool) -> Vec<MulticurveCoordinates> {
    let k = bd.as_array();
    let mut out = Vec::new();
    if !allow_boundary_parallel {
        out.extend(solve_arcs(k, [0, 0, 0]));
        return out;
    }
    for b1 in 0..=k[0] {
        for b2 in 0..=k[1] {
            for b3 in 0..=k[2] {
                out.extend(solve_arcs(k, [b1, b2, b3]));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn is_tight_candidate(m: &MulticurveCoordinates) -> bool {
    m.is_tight_candidate()
}

pub fn count(bd: &BoundaryData, allow_boundary_parallel: bool) -> usize {
    enumerate(bd, allow_boundary_parallel).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> MulticurveCoordinates {
        s.parse().unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let one = BoundaryData::new(1, 1, 1);
        assert_eq!(enumerate(&one, false), vec![c("(1,1,1|0,0,0)")]);
        assert_eq!(
            enumerate(&one, true),
            vec![
                c("(0,0,0|1,1,1)"),
                c("(0,0,2|1,0,0)"),
                c("(0,2,0|0,1,0)"),
                c("(1,1,1|0,0,0)"),
                c("(2,0,0|0,0,1)"),
            ]
        );
        let zero = BoundaryData::new(0, 0, 0);
        assert_eq!(enumerate(&zero, false), vec![c("(0,0,0|0,0,0)")]);
        assert_eq!(enumerate(&zero, true), vec![c("(0,0,0|0,0,0)")]);
        assert!(enumerate(&BoundaryData::new(3, 0, 0), false).is_empty());
    }

    #[test]
    fn tight_candidates() {
        assert!(is_tight_candidate(&c("(1,1,1|0,0,0)")));
        assert!(!is_tight_candidate(&c("(2,0,0|0,0,1)")));
        assert!(is_tight_candidate(&c("(0,0,0|0,0,0)")));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count(&BoundaryData::new(1, 1, 1), false), 1);
        assert_eq!(count(&BoundaryData::new(1, 1, 1), true), 5);
        assert_eq!(count(&BoundaryData::new(2, 2, 2), false), 1);
    }

    #[test]
    fn parsing() {
        assert_eq!("1, 2,3".parse::<BoundaryData>().unwrap(), BoundaryData::new(1, 2, 3));
        assert!("1,2".parse::<BoundaryData>().is_err());
        assert!("1,-2,3".parse::<BoundaryData>().is_err());
        assert_eq!(c("(2,0,0|0,0,1)").to_string(), "(2,0,0|0,0,1)");
        assert!("(2,0,0,0,0,1)".parse::<MulticurveCoordinates>().is_err());
        assert_eq!(c("(2,0,0|0,0,1)").boundary_data(), Some(BoundaryData::new(1, 1, 1)));
        assert_eq!(c("(1,0,0|0,0,0)").boundary_data(), None);
    }
}
