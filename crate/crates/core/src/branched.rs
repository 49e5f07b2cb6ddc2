//! Combinatorial branched surfaces and their weight systems.
//!
//! A [`BranchedSurface`] is a list of sectors and a list of branch curves. Each
//! branch curve names the two sectors for which the branching direction points
//! outward and the one for which it points inward, and imposes the branch
//! equation `w(out₁) + w(out₂) = w(in)` on every weight function.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("unknown sector {0:?}")]
    UnknownSector(String),
    #[error("nothing to amputate")]
    EmptySelection,
    #[error("weights are defined on {found:?} but the surface has sectors {expected:?}")]
    DomainMismatch { expected: Vec<String>, found: Vec<String> },
    #[error("weights violate the branch equation {0}")]
    BranchEquation(String),
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),
}

/// Where a sector sits along a branch curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Out1,
    Out2,
    In,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectorRecord {
    pub id: String,
    /// Corner-corrected Euler characteristic contribution of the sector.
    #[serde(default)]
    pub cusped_euler: i64,
    /// Set on sectors touching the boundary of the branched surface.
    #[serde(default)]
    pub boundary: bool,
}

impl SectorRecord {
    pub fn new(id: impl Into<String>, cusped_euler: i64) -> Self {
        Self { id: id.into(), cusped_euler, boundary: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchCurve {
    pub out1: String,
    pub out2: String,
    #[serde(rename = "in")]
    pub inward: String,
}

impl BranchCurve {
    pub fn new(out1: impl Into<String>, out2: impl Into<String>, inward: impl Into<String>) -> Self {
        Self { out1: out1.into(), out2: out2.into(), inward: inward.into() }
    }

    pub fn incidences(&self) -> [(&str, Role); 3] {
        [(&self.out1, Role::Out1), (&self.out2, Role::Out2), (&self.inward, Role::In)]
    }
}

impl fmt::Display for BranchCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}->{})", self.out1, self.out2, self.inward)
    }
}

/// A sector incidence left behind when the branch curve it belonged to was cut away.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub sector: String,
    pub role: Role,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchedSurface {
    #[serde(default)]
    pub sectors: Vec<SectorRecord>,
    #[serde(default)]
    pub branch_curves: Vec<BranchCurve>,
    #[serde(default)]
    pub boundary_curves: Vec<BoundaryCurve>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    DuplicateSector { id: String },
    DanglingCurveReference { curve: usize, sector: String },
    DanglingBoundaryReference { index: usize, sector: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicateSector { id } => write!(f, "duplicate sector id {id:?}"),
            Self::DanglingCurveReference { curve, sector } => {
                write!(f, "branch curve {curve} references unknown sector {sector:?}")
            }
            Self::DanglingBoundaryReference { index, sector } => {
                write!(f, "boundary curve {index} references unknown sector {sector:?}")
            }
        }
    }
}

impl BranchedSurface {
    pub fn new(sectors: Vec<SectorRecord>, branch_curves: Vec<BranchCurve>) -> Self {
        Self { sectors, branch_curves, boundary_curves: Vec::new() }
    }

    /// Sector ids in ascending order.
    pub fn sector_ids(&self) -> BTreeSet<&str> {
        self.sectors.iter().map(|s| s.id.as_str()).collect()
    }

    pub fn sector(&self, id: &str) -> Option<&SectorRecord> {
        self.sectors.iter().find(|s| s.id == id)
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty() && self.branch_curves.is_empty() && self.boundary_curves.is_empty()
    }

    pub fn has_boundary(&self) -> bool {
        !self.boundary_curves.is_empty() || self.sectors.iter().any(|s| s.boundary)
    }

    /// Structural problems; an empty list means the surface is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for s in &self.sectors {
            if !seen.insert(s.id.as_str()) {
                out.push(Violation::DuplicateSector { id: s.id.clone() });
            }
        }
        for (i, c) in self.branch_curves.iter().enumerate() {
            for (id, _) in c.incidences() {
                if !seen.contains(id) {
                    out.push(Violation::DanglingCurveReference { curve: i, sector: id.into() });
                }
            }
        }
        for (i, b) in self.boundary_curves.iter().enumerate() {
            if !seen.contains(b.sector.as_str()) {
                out.push(Violation::DanglingBoundaryReference { index: i, sector: b.sector.clone() });
            }
        }
        out
    }

    /// Removes the named sectors. Branch curves touching them are deleted and
    /// their surviving incidences become boundary curves.
    pub fn amputate<S: AsRef<str>>(&self, ids: &[S]) -> Result<BranchedSurface, SurfaceError> {
        if ids.is_empty() {
            return Err(SurfaceError::EmptySelection);
        }
        let known = self.sector_ids();
        let mut doomed = BTreeSet::new();
        for id in ids {
            let id = id.as_ref();
            if !known.contains(id) {
                return Err(SurfaceError::UnknownSector(id.to_string()));
            }
            doomed.insert(id);
        }

        let mut branch_curves = Vec::new();
        let mut boundary_curves: Vec<BoundaryCurve> = self
            .boundary_curves
            .iter()
            .filter(|b| !doomed.contains(b.sector.as_str()))
            .cloned()
            .collect();
        for c in &self.branch_curves {
            let inc = c.incidences();
            if inc.iter().any(|(id, _)| doomed.contains(id)) {
                boundary_curves.extend(
                    inc.iter()
                        .filter(|(id, _)| !doomed.contains(id))
                        .map(|&(id, role)| BoundaryCurve { sector: id.to_string(), role }),
                );
            } else {
                branch_curves.push(c.clone());
            }
        }
        boundary_curves.sort();

        let touched: BTreeSet<&str> = boundary_curves.iter().map(|b| b.sector.as_str()).collect();
        let sectors = self
            .sectors
            .iter()
            .filter(|s| !doomed.contains(s.id.as_str()))
            .map(|s| SectorRecord { boundary: s.boundary || touched.contains(s.id.as_str()), ..s.clone() })
            .collect();
        Ok(BranchedSurface { sectors, branch_curves, boundary_curves })
    }
}

/// Integer weights on sectors, keyed by sector id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent, bound = "")]
pub struct WeightFunction<T: Int> {
    #[serde(with = "weight_map")]
    pub weights: BTreeMap<String, T>,
}

mod weight_map {
    use super::Int;
    use crate::scalar::serde_int;
    use serde::de::{MapAccess, Visitor};
    use serde::ser::SerializeMap;
    use serde::{Deserializer, Serializer};
    use std::collections::BTreeMap;
    use std::fmt;
    use std::marker::PhantomData;

    struct Wrap<'a, T>(&'a T);

    impl<T: Int> serde::Serialize for Wrap<'_, T> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serde_int::serialize(self.0, s)
        }
    }

    struct Owned<T>(T);

    impl<'de, T: Int> serde::Deserialize<'de> for Owned<T> {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            serde_int::deserialize(d).map(Owned)
        }
    }

    pub fn serialize<T: Int, S: Serializer>(m: &BTreeMap<String, T>, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(k, &Wrap(v))?;
        }
        map.end()
    }

    pub fn deserialize<'de, T: Int, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, T>, D::Error> {
        struct MapVisitor<T>(PhantomData<T>);

        impl<'de, T: Int> Visitor<'de> for MapVisitor<T> {
            type Value = BTreeMap<String, T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from sector id to integer weight")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<Self::Value, A::Error> {
                let mut out = BTreeMap::new();
                while let Some((k, Owned(v))) = a.next_entry::<String, Owned<T>>()? {
                    out.insert(k, v);
                }
                Ok(out)
            }
        }

        d.deserialize_map(MapVisitor(PhantomData))
    }
}

impl<T: Int> WeightFunction<T> {
    pub fn new(weights: BTreeMap<String, T>) -> Self {
        Self { weights }
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, T)>) -> Self {
        Self { weights: pairs.into_iter().map(|(k, v)| (k.into(), v)).collect() }
    }

    pub fn zero(surface: &BranchedSurface) -> Self {
        Self::from_pairs(surface.sectors.iter().map(|s| (s.id.clone(), T::zero())))
    }

    /// The weight a structure `ξ` receives relative to a reference `ξ₀`: on each
    /// sector, the twisting number of `ξ₀` minus that of `ξ` along a fiber.
    pub fn from_twisting(reference: &BTreeMap<String, T>, other: &BTreeMap<String, T>) -> Option<Self> {
        if reference.len() != other.len() {
            return None;
        }
        reference
            .iter()
            .map(|(id, t0)| other.get(id).map(|t| (id.clone(), t0.clone() - t.clone())))
            .collect::<Option<BTreeMap<_, _>>>()
            .map(Self::new)
    }

    pub fn get(&self, id: &str) -> Option<&T> {
        self.weights.get(id)
    }

    pub fn is_positive(&self) -> bool {
        self.weights.values().all(|w| w.is_positive())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.weights.values().all(|w| !w.is_negative())
    }

    /// Pointwise sum; `None` if the domains differ.
    pub fn add(&self, other: &Self) -> Option<Self> {
        if self.weights.len() != other.weights.len() {
            return None;
        }
        self.weights
            .iter()
            .map(|(k, v)| other.weights.get(k).map(|u| (k.clone(), v.clone() + u.clone())))
            .collect::<Option<BTreeMap<_, _>>>()
            .map(Self::new)
    }

    /// Values in sector-id order.
    pub fn values(&self) -> Vec<T> {
        self.weights.values().cloned().collect()
    }
}

impl<T: Int> fmt::Display for WeightFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.weights.values().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

fn check_domain<T: Int>(b: &BranchedSurface, w: &WeightFunction<T>) -> Result<(), SurfaceError> {
    let expected: BTreeSet<&str> = b.sector_ids();
    let found: BTreeSet<&str> = w.weights.keys().map(String::as_str).collect();
    if expected != found {
        return Err(SurfaceError::DomainMismatch {
            expected: expected.into_iter().map(String::from).collect(),
            found: found.into_iter().map(String::from).collect(),
        });
    }
    Ok(())
}

fn first_broken_equation<T: Int>(b: &BranchedSurface, w: &WeightFunction<T>) -> Option<String> {
    b.branch_curves.iter().find_map(|c| {
        let get = |id: &str| w.weights[id].clone();
        (get(&c.out1) + get(&c.out2) != get(&c.inward)).then(|| c.to_string())
    })
}

/// Whether `w` satisfies every branch equation of `b`.
pub fn check_weights<T: Int>(b: &BranchedSurface, w: &WeightFunction<T>) -> Result<bool, SurfaceError> {
    check_domain(b, w)?;
    Ok(first_broken_equation(b, w).is_none())
}

fn require_valid<T: Int>(b: &BranchedSurface, w: &WeightFunction<T>) -> Result<(), SurfaceError> {
    check_domain(b, w)?;
    match first_broken_equation(b, w) {
        Some(eq) => Err(SurfaceError::BranchEquation(eq)),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Positivity {
    Nonnegative,
    Positive,
}

/// Every valid weight function with all weights in `[0, max]` (or `[1, max]`),
/// in lexicographic order of the weight vector read in sector-id order.
///
/// Depth-first over sectors; once all but one sector of a branch equation are
/// assigned, the last value is forced.
pub fn enumerate_weights<T: Int>(
    b: &BranchedSurface,
    max_weight: &T,
    positivity: Positivity,
) -> Vec<WeightFunction<T>> {
    let ids: Vec<&str> = b.sector_ids().into_iter().collect();
    let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let lo = match positivity {
        Positivity::Nonnegative => T::zero(),
        Positivity::Positive => T::one(),
    };
    if lo > *max_weight {
        return Vec::new();
    }

    // each curve as (sector index, coefficient) with out = +1, in = -1, merged
    let equations: Vec<Vec<(usize, i64)>> = b
        .branch_curves
        .iter()
        .filter_map(|c| {
            let mut coeffs: BTreeMap<usize, i64> = BTreeMap::new();
            for (id, role) in c.incidences() {
                let sign = if role == Role::In { -1 } else { 1 };
                *coeffs.entry(*index.get(id)?).or_default() += sign;
            }
            Some(coeffs.into_iter().filter(|&(_, c)| c != 0).collect())
        })
        .collect();
    // equations become decidable once their highest sector index is assigned
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
    for (e, eq) in equations.iter().enumerate() {
        if let Some(last) = eq.iter().map(|&(i, _)| i).max() {
            closing[last].push(e);
        }
    }

    let search = Search { equations: &equations, closing: &closing, lo, hi: max_weight.clone() };
    let mut out = Vec::new();
    let mut current: Vec<T> = Vec::with_capacity(ids.len());
    search.descend(&mut current, &mut |vals| {
        out.push(WeightFunction::from_pairs(ids.iter().map(|s| s.to_string()).zip(vals.iter().cloned())));
    });
    out
}

struct Search<'a, T> {
    equations: &'a [Vec<(usize, i64)>],
    closing: &'a [Vec<usize>],
    lo: T,
    hi: T,
}

impl<T: Int> Search<'_, T> {
    fn descend(&self, current: &mut Vec<T>, emit: &mut impl FnMut(&[T])) {
        let pos = current.len();
        if pos == self.closing.len() {
            emit(current);
            return;
        }
        // a closing equation with a nonzero coefficient here pins the value
        let forced = self.closing[pos].iter().find_map(|&e| {
            let eq = &self.equations[e];
            let own = eq.iter().find(|&&(i, _)| i == pos).map(|&(_, c)| c)?;
            let rest = eq
                .iter()
                .filter(|&&(i, _)| i != pos)
                .fold(T::zero(), |acc, &(i, c)| acc + T::from_i64_exact(c) * current[i].clone());
            Some((own, rest))
        });
        match forced {
            Some((own, rest)) => {
                let own = T::from_i64_exact(own);
                let neg = -rest;
                if !neg.is_multiple_of(&own) {
                    return;
                }
                let v = neg / own;
                if v < self.lo || v > self.hi {
                    return;
                }
                self.try_value(v, current, emit);
            }
            None => {
                let mut v = self.lo.clone();
                while v <= self.hi {
                    self.try_value(v.clone(), current, emit);
                    v = v + T::one();
                }
            }
        }
    }

    fn try_value(&self, v: T, current: &mut Vec<T>, emit: &mut impl FnMut(&[T])) {
        current.push(v);
        let pos = current.len() - 1;
        let ok = self.closing[pos].iter().all(|&e| {
            self.equations[e]
                .iter()
                .fold(T::zero(), |acc, &(i, c)| acc + T::from_i64_exact(c) * current[i].clone())
                .is_zero()
        });
        if ok {
            self.descend(current, emit);
        }
        current.pop();
    }
}

/// Multiplies every weight by `c > 0`; `c = 2` doubles the carried surface.
pub fn scale_weights<T: Int>(w: &WeightFunction<T>, c: &T) -> Result<WeightFunction<T>, SurfaceError> {
    if !c.is_positive() {
        return Err(SurfaceError::NonPositiveScale(c.to_string()));
    }
    Ok(WeightFunction::new(w.weights.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())).collect()))
}

/// Euler characteristic of the carried surface: `Σ w(B)·cusped_euler(B)`.
pub fn carried_euler<T: Int>(b: &BranchedSurface, w: &WeightFunction<T>) -> Result<T, SurfaceError> {
    require_valid(b, w)?;
    Ok(b.sectors.iter().fold(T::zero(), |acc, s| {
        acc + w.weights[&s.id].clone() * T::from_i64_exact(s.cusped_euler)
    }))
}

/// The carried surface is a union of tori (or Klein bottles): `χ = 0`.
pub fn carries_tori<T: Int>(b: &BranchedSurface, w: &WeightFunction<T>) -> Result<bool, SurfaceError> {
    Ok(carried_euler(b, w)?.is_zero())
}

/// The combinatorial shadows of the reduction conditions a branched surface
/// and its weights are brought to by repeated amputation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplifiedConditions {
    /// No boundary curves and no boundary sectors.
    pub without_boundary: bool,
    /// Every supplied weight function is at least the threshold on every sector.
    pub sufficiently_positive: bool,
    /// Sectors on which no supplied weight reaches the threshold; with an
    /// unbounded family these are the sectors that can still be amputated.
    pub bounded_sectors: Vec<String>,
}

impl SimplifiedConditions {
    pub fn holds(&self) -> bool {
        self.without_boundary && self.sufficiently_positive && self.bounded_sectors.is_empty()
    }
}

pub fn simplified_conditions<T: Int>(
    b: &BranchedSurface,
    family: &[WeightFunction<T>],
    threshold: &T,
) -> SimplifiedConditions {
    let sufficiently_positive =
        family.iter().all(|w| w.weights.values().all(|v| v >= threshold));
    let bounded_sectors = b
        .sector_ids()
        .into_iter()
        .filter(|id| !family.iter().any(|w| w.get(id).is_some_and(|v| v >= threshold)))
        .map(String::from)
        .collect();
    SimplifiedConditions { without_boundary: !b.has_boundary(), sufficiently_positive, bounded_sectors }
}

/// How a boundary circle of a vertical annulus sits on the carried surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryClass {
    Essential,
    DiskBounding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerticalAnnulusRecord {
    pub id: String,
    pub degree: u32,
    pub boundary_classes: [BoundaryClass; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeViolationKind {
    /// degree 0 but a boundary circle bounds a disk
    DegreeZeroWithDisk,
    /// degree 1 but a boundary circle is essential
    DegreeOneWithEssential,
    DegreeAtLeastTwo,
    /// one boundary circle essential, the other disk-bounding
    MixedClasses,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeViolation {
    pub annulus: String,
    pub kind: DegreeViolationKind,
}

/// Flags every record outside `{deg 0, essential/essential}` and
/// `{deg 1, disk/disk}`.
pub fn check_degree_consistency(records: &[VerticalAnnulusRecord]) -> Vec<DegreeViolation> {
    use BoundaryClass::*;
    use DegreeViolationKind::*;
    let mut out = Vec::new();
    for r in records {
        let mut flag = |kind| out.push(DegreeViolation { annulus: r.id.clone(), kind });
        let [a, b] = r.boundary_classes;
        let any_disk = a == DiskBounding || b == DiskBounding;
        let any_essential = a == Essential || b == Essential;
        match r.degree {
            0 if any_disk => flag(DegreeZeroWithDisk),
            1 if any_essential => flag(DegreeOneWithEssential),
            0 | 1 => {}
            _ => flag(DegreeAtLeastTwo),
        }
        if a != b {
            flag(MixedClasses);
        }
    }
    out
}

/// Points along a boundary circle where the annulus is tangent to the contact
/// planes: `2·deg(A)`. Also bounds the number of Reeb components.
pub fn tangency_count(a: &VerticalAnnulusRecord) -> u64 {
    2 * u64::from(a.degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> BranchedSurface {
        BranchedSurface::new(
            vec![SectorRecord::new("A", 0), SectorRecord::new("B", 0), SectorRecord::new("C", 0)],
            vec![BranchCurve::new("A", "B", "C")],
        )
    }

    fn w(pairs: &[(&str, i64)]) -> WeightFunction<i64> {
        WeightFunction::from_pairs(pairs.iter().map(|&(k, v)| (k, v)))
    }

    #[test]
    fn validation_examples() {
        let one = BranchedSurface::new(vec![SectorRecord::new("T", 0)], vec![]);
        assert!(one.validate().is_empty());
        let dangling = BranchedSurface::new(
            vec![SectorRecord::new("A", 0), SectorRecord::new("B", 0)],
            vec![BranchCurve::new("A", "B", "Z")],
        );
        assert_eq!(
            dangling.validate(),
            vec![Violation::DanglingCurveReference { curve: 0, sector: "Z".into() }]
        );
        assert!(abc().validate().is_empty());
        let dup = BranchedSurface::new(vec![SectorRecord::new("A", 0), SectorRecord::new("A", 1)], vec![]);
        assert_eq!(dup.validate(), vec![Violation::DuplicateSector { id: "A".into() }]);
    }

    #[test]
    fn check_weight_examples() {
        let b = abc();
        assert!(check_weights(&b, &w(&[("A", 1), ("B", 2), ("C", 3)])).unwrap());
        assert!(!check_weights(&b, &w(&[("A", 1), ("B", 1), ("C", 1)])).unwrap());
        assert!(check_weights(&b, &WeightFunction::<i64>::zero(&b)).unwrap());
        assert!(matches!(
            check_weights(&b, &w(&[("A", 1), ("B", 2)])),
            Err(SurfaceError::DomainMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        let b = abc();
        let all = enumerate_weights(&b, &2i64, Positivity::Nonnegative);
        let vecs: Vec<Vec<i64>> = all.iter().map(WeightFunction::values).collect();
        assert_eq!(
            vecs,
            vec![
                vec![0, 0, 0],
                vec![0, 1, 1],
                vec![0, 2, 2],
                vec![1, 0, 1],
                vec![1, 1, 2],
                vec![2, 0, 2]
            ]
        );
        let pos = enumerate_weights(&b, &2i64, Positivity::Positive);
        assert_eq!(pos, vec![w(&[("A", 1), ("B", 1), ("C", 2)])]);
        let empty = enumerate_weights(&BranchedSurface::default(), &3i64, Positivity::Positive);
        assert_eq!(empty.len(), 1);
        assert!(empty[0].weights.is_empty());
    }

    #[test]
    fn repeated_roles_in_one_curve() {
        // w(A) + w(A) = w(B), and w(C) + w(D) = w(C) forces D = 0
        let b = BranchedSurface::new(
            ["A", "B", "C", "D"].iter().map(|s| SectorRecord::new(*s, 0)).collect(),
            vec![BranchCurve::new("A", "A", "B"), BranchCurve::new("C", "D", "C")],
        );
        let sols = enumerate_weights(&b, &4i64, Positivity::Nonnegative);
        assert_eq!(sols.len(), 3 * 5);
        for s in &sols {
            assert_eq!(s.get("B"), Some(&(2 * s.get("A").unwrap())));
            assert_eq!(s.get("D"), Some(&0));
        }
    }

    #[test]
    fn scale_examples() {
        let x = w(&[("A", 1), ("B", 2), ("C", 3)]);
        assert_eq!(scale_weights(&x, &2).unwrap(), w(&[("A", 2), ("B", 4), ("C", 6)]));
        assert_eq!(scale_weights(&x, &1).unwrap(), x);
        let z = WeightFunction::<i64>::zero(&abc());
        assert_eq!(scale_weights(&z, &7).unwrap(), z);
        assert!(scale_weights(&x, &0).is_err());
    }

    #[test]
    fn euler_examples() {
        let torus = BranchedSurface::new(vec![SectorRecord::new("T", 0)], vec![]);
        assert_eq!(carried_euler(&torus, &w(&[("T", 5)])).unwrap(), 0);
        assert!(carries_tori(&torus, &w(&[("T", 5)])).unwrap());

        let b = BranchedSurface::new(
            vec![SectorRecord::new("A", -1), SectorRecord::new("B", 2), SectorRecord::new("C", -3)],
            vec![BranchCurve::new("A", "B", "C")],
        );
        assert_eq!(carried_euler(&b, &WeightFunction::<i64>::zero(&b)).unwrap(), 0);
        let w1 = w(&[("A", 1), ("B", 1), ("C", 2)]);
        let w2 = w(&[("A", 2), ("B", 1), ("C", 3)]);
        // -1 + 2 - 6 = -5 and -2 + 2 - 9 = -9
        assert_eq!(carried_euler(&b, &w1).unwrap(), -5);
        assert_eq!(carried_euler(&b, &w2).unwrap(), -9);
        assert_eq!(carried_euler(&b, &w1.add(&w2).unwrap()).unwrap(), -14);
        assert!(matches!(
            carried_euler(&b, &w(&[("A", 1), ("B", 1), ("C", 1)])),
            Err(SurfaceError::BranchEquation(_))
        ));
    }

    #[test]
    fn amputation_examples() {
        let b = abc();
        let cut = b.amputate(&["C"]).unwrap();
        assert_eq!(cut.sector_ids().into_iter().collect::<Vec<_>>(), vec!["A", "B"]);
        assert!(cut.branch_curves.is_empty());
        assert_eq!(
            cut.boundary_curves,
            vec![
                BoundaryCurve { sector: "A".into(), role: Role::Out1 },
                BoundaryCurve { sector: "B".into(), role: Role::Out2 },
            ]
        );
        assert!(cut.sectors.iter().all(|s| s.boundary));

        assert!(b.amputate(&["A", "B", "C"]).unwrap().is_empty());

        let chain = BranchedSurface::new(
            ["A", "B", "C", "D", "E"].iter().map(|s| SectorRecord::new(*s, 0)).collect(),
            vec![BranchCurve::new("A", "B", "C"), BranchCurve::new("C", "D", "E")],
        );
        let cut = chain.amputate(&["E"]).unwrap();
        assert_eq!(cut.branch_curves, vec![BranchCurve::new("A", "B", "C")]);
        assert_eq!(
            cut.boundary_curves,
            vec![
                BoundaryCurve { sector: "C".into(), role: Role::Out1 },
                BoundaryCurve { sector: "D".into(), role: Role::Out2 },
            ]
        );

        assert_eq!(b.amputate(&["Q"]), Err(SurfaceError::UnknownSector("Q".into())));
        assert_eq!(b.amputate::<&str>(&[]), Err(SurfaceError::EmptySelection));
    }

    #[test]
    fn simplified_conditions_report() {
        let b = abc();
        let fam = vec![w(&[("A", 5), ("B", 6), ("C", 11)]), w(&[("A", 50), ("B", 1), ("C", 51)])];
        let c = simplified_conditions(&b, &fam, &10);
        assert!(c.without_boundary);
        assert!(!c.sufficiently_positive);
        assert_eq!(c.bounded_sectors, vec!["B".to_string()]);
        let c = simplified_conditions(&b, &fam[..1], &10);
        assert_eq!(c.bounded_sectors, vec!["A".to_string(), "B".to_string()]);
        assert!(!simplified_conditions(&b.amputate(&["C"]).unwrap(), &[], &1).without_boundary);
    }

    #[test]
    fn degree_examples() {
        use BoundaryClass::*;
        let rec = |degree, a, b| VerticalAnnulusRecord { id: "A".into(), degree, boundary_classes: [a, b] };
        assert!(check_degree_consistency(&[rec(0, Essential, Essential)]).is_empty());
        assert!(check_degree_consistency(&[rec(1, DiskBounding, DiskBounding)]).is_empty());
        let v = check_degree_consistency(&[rec(1, Essential, DiskBounding)]);
        assert!(v.iter().any(|x| x.kind == DegreeViolationKind::MixedClasses));
        assert_eq!(tangency_count(&rec(0, Essential, Essential)), 0);
        assert_eq!(tangency_count(&rec(1, DiskBounding, DiskBounding)), 2);
        assert_eq!(tangency_count(&rec(3, Essential, Essential)), 6);
    }

    #[test]
    fn twisting_differences() {
        let t0: BTreeMap<String, i64> = [("A".into(), -1), ("B".into(), -2)].into();
        let t: BTreeMap<String, i64> = [("A".into(), -4), ("B".into(), -2)].into();
        let wf = WeightFunction::from_twisting(&t0, &t).unwrap();
        assert_eq!(wf, w(&[("A", 3), ("B", 0)]));
    }
}
