//! Extended rationals and the Farey tessellation.
//!
//! A [`Slope`] is an element of ℚ ∪ {∞} kept in lowest terms, with ∞ stored as
//! `1/0`. Two slopes `p/q` and `r/s` are joined by a Farey edge exactly when
//! `|ps - qr| = 1`. Slopes are totally ordered with ∞ above every finite value.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{floor_div, Int};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("0/0 is not a slope")]
    Undefined,
    #[error("cannot parse slope {0:?}")]
    Parse(String),
    #[error("operation requires a finite slope")]
    Infinite,
    #[error("{0} and {1} are not joined by a Farey edge")]
    NotAnEdge(String, String),
    #[error("interval ({0}, {1}) is empty")]
    EmptyInterval(String, String),
    #[error("no slope in ({lower}, {upper}) has an edge to {lower}")]
    NoNeighbor { lower: String, upper: String },
    #[error("invalid Farey path: {0}")]
    InvalidPath(String),
}

/// An extended rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Slope<T: Int> {
    num: T,
    den: T,
}

impl<T: Int> Slope<T> {
    /// Builds `num/den` in lowest terms. Any `x/0` with `x != 0` is ∞.
    pub fn new(num: T, den: T) -> Result<Self, FareyError> {
        if den.is_zero() {
            if num.is_zero() {
                return Err(FareyError::Undefined);
            }
            return Ok(Self::infinity());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g.clone(), den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Ok(Self { num, den })
    }

    pub fn integer(n: T) -> Self {
        Self { num: n, den: T::one() }
    }

    pub fn infinity() -> Self {
        Self { num: T::one(), den: T::zero() }
    }

    pub fn from_ratio(r: &Ratio<T>) -> Self {
        Self { num: r.numer().clone(), den: r.denom().clone() }
    }

    pub fn numer(&self) -> &T {
        &self.num
    }

    pub fn denom(&self) -> &T {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    /// The value as an exact rational; `None` for ∞.
    pub fn to_ratio(&self) -> Option<Ratio<T>> {
        if self.is_infinite() {
            None
        } else {
            Some(Ratio::new_raw(self.num.clone(), self.den.clone()))
        }
    }
}

impl<T: Int> Ord for Slope<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => {
                (self.num.clone() * other.den.clone()).cmp(&(other.num.clone() * self.den.clone()))
            }
        }
    }
}

impl<T: Int> PartialOrd for Slope<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Int> fmt::Display for Slope<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl<T: Int> fmt::Debug for Slope<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Int> FromStr for Slope<T> {
    type Err = FareyError;

    /// Accepts `p/q`, a bare integer `p`, or `inf`/`∞`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" || t.eq_ignore_ascii_case("+inf") {
            return Ok(Self::infinity());
        }
        let bad = || FareyError::Parse(s.to_string());
        match t.split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse::<T>().map_err(|_| bad())?;
                let d = d.trim().parse::<T>().map_err(|_| bad())?;
                Self::new(n, d)
            }
            None => Ok(Self::integer(t.parse::<T>().map_err(|_| bad())?)),
        }
    }
}

impl<T: Int> Serialize for Slope<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de, T: Int> Deserialize<'de> for Slope<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(de::Error::custom)
    }
}

/// `|p·s - q·r|` for `a = p/q`, `b = r/s`.
pub fn intersection_number<T: Int>(a: &Slope<T>, b: &Slope<T>) -> T {
    (a.num.clone() * b.den.clone() - a.den.clone() * b.num.clone()).abs()
}

pub fn is_edge<T: Int>(a: &Slope<T>, b: &Slope<T>) -> bool {
    intersection_number(a, b).is_one()
}

/// The Farey sum `(p+r)/(q+s)` of two adjacent slopes.
pub fn mediant<T: Int>(a: &Slope<T>, b: &Slope<T>) -> Result<Slope<T>, FareyError> {
    if !is_edge(a, b) {
        return Err(FareyError::NotAnEdge(a.to_string(), b.to_string()));
    }
    // Adjacent slopes are coprime as vectors, so the sum is already reduced.
    Slope::new(a.num.clone() + b.num.clone(), a.den.clone() + b.den.clone())
}

/// The greatest rational `β'/α'` with `β'·α - β·α' = 1`.
///
/// Among the Farey neighbours of `β/α` lying above it, this is the one with the
/// smallest positive denominator, found by solving `β·α' ≡ -1 (mod α)` with
/// `1 ≤ α' ≤ α`. For an integer `n` the answer is `n + 1`.
pub fn successor<T: Int>(b: &Slope<T>) -> Result<Slope<T>, FareyError> {
    if b.is_infinite() {
        return Err(FareyError::Infinite);
    }
    let (beta, alpha) = (&b.num, &b.den);
    // beta * x + alpha * y = 1
    let eg = beta.extended_gcd(alpha);
    let mut alpha_p = (-eg.x).mod_floor(alpha);
    if alpha_p.is_zero() {
        alpha_p = alpha.clone();
    }
    let beta_p = (T::one() + beta.clone() * alpha_p.clone()) / alpha.clone();
    Ok(Slope { num: beta_p, den: alpha_p })
}

/// The largest slope in the open interval `(a, upper)` with a Farey edge to `a`.
///
/// The neighbours of `a` above it form the decreasing sequence
/// `(β' + nβ)/(α' + nα)`, `n ≥ 0`, starting at [`successor`]; the answer is its
/// first term below `upper`.
pub fn greatest_neighbor_below<T: Int>(
    a: &Slope<T>,
    upper: &Slope<T>,
) -> Result<Slope<T>, FareyError> {
    if a >= upper {
        return Err(FareyError::EmptyInterval(a.to_string(), upper.to_string()));
    }
    let first = successor(a)?;
    if upper.is_infinite() {
        return Ok(first);
    }
    let (p, q) = (&a.num, &a.den);
    let (p1, q1) = (&first.num, &first.den);
    let (up, uq) = (&upper.num, &upper.den);
    // (p1 + n p)/(q1 + n q) < up/uq  <=>  n * c > p1 uq - up q1, c = up q - p uq > 0
    let c = up.clone() * q.clone() - p.clone() * uq.clone();
    let rhs = p1.clone() * uq.clone() - up.clone() * q1.clone();
    let mut n = floor_div(&rhs, &c) + T::one();
    if n.is_negative() {
        n = T::zero();
    }
    let s = Slope::new(p1.clone() + n.clone() * p.clone(), q1.clone() + n * q.clone())?;
    if s <= *a || s >= *upper {
        return Err(FareyError::NoNeighbor { lower: a.to_string(), upper: upper.to_string() });
    }
    Ok(s)
}

/// An increasing edge path in the Farey graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FareyPath<T: Int> {
    vertices: Vec<Slope<T>>,
}

impl<T: Int> FareyPath<T> {
    /// Checks the edge and monotonicity invariants; ∞ may only end the path.
    pub fn new(vertices: Vec<Slope<T>>) -> Result<Self, FareyError> {
        if vertices.is_empty() {
            return Err(FareyError::InvalidPath("no vertices".into()));
        }
        for pair in vertices.windows(2) {
            let (x, y) = (&pair[0], &pair[1]);
            if x.is_infinite() {
                return Err(FareyError::InvalidPath("inf before the last vertex".into()));
            }
            if x >= y {
                return Err(FareyError::InvalidPath(format!("{x} is not below {y}")));
            }
            if !is_edge(x, y) {
                return Err(FareyError::InvalidPath(format!("{x} and {y} are not adjacent")));
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Slope<T>] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> &Slope<T> {
        &self.vertices[0]
    }

    pub fn last(&self) -> &Slope<T> {
        self.vertices.last().expect("paths are nonempty")
    }
}

impl<T: Int> fmt::Display for FareyPath<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl<T: Int> FromStr for FareyPath<T> {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let vertices = s.split(',').map(str::parse).collect::<Result<Vec<_>, _>>()?;
        Self::new(vertices)
    }
}

impl<T: Int> Serialize for FareyPath<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de, T: Int> Deserialize<'de> for FareyPath<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(de::Error::custom)
    }
}

/// The shortest increasing Farey path from `from` to `to`.
///
/// Greedy: step straight to `to` when adjacent, otherwise to the largest
/// neighbour below `to`. Any increasing path has to pass through that
/// neighbour, since Farey edges never cross, so the greedy path is minimal.
/// For `to = ∞` this walks the continued-fraction convergents.
pub fn shortest_increasing_path<T: Int>(
    from: &Slope<T>,
    to: &Slope<T>,
) -> Result<FareyPath<T>, FareyError> {
    if from >= to {
        return Err(FareyError::EmptyInterval(from.to_string(), to.to_string()));
    }
    let mut vertices = vec![from.clone()];
    let mut cur = from.clone();
    while cur != *to {
        cur = if is_edge(&cur, to) { to.clone() } else { greatest_neighbor_below(&cur, to)? };
        vertices.push(cur.clone());
    }
    Ok(FareyPath { vertices })
}

/// An open interval of slopes on the circle ℚ ∪ {∞}.
///
/// `Wrapped` is `(lower, +∞] ∪ [-∞, upper)` for `upper < lower`, the form an
/// interval takes once it passes through ∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlopeInterval<T: Int> {
    Ordinary { lower: Slope<T>, upper: Slope<T> },
    Wrapped { lower: Slope<T>, upper: Slope<T> },
}

impl<T: Int> SlopeInterval<T> {
    /// The interval running counterclockwise from `lower` to `upper`.
    pub fn between(lower: Slope<T>, upper: Slope<T>) -> Result<Self, FareyError> {
        match lower.cmp(&upper) {
            Ordering::Less => Ok(Self::Ordinary { lower, upper }),
            Ordering::Greater if !lower.is_infinite() => Ok(Self::Wrapped { lower, upper }),
            _ => Err(FareyError::EmptyInterval(lower.to_string(), upper.to_string())),
        }
    }

    pub fn is_wrapped(&self) -> bool {
        matches!(self, Self::Wrapped { .. })
    }

    pub fn contains(&self, x: &Slope<T>) -> bool {
        match self {
            Self::Ordinary { lower, upper } => lower < x && x < upper,
            Self::Wrapped { lower, upper } => x > lower || x < upper,
        }
    }

    /// The ordinary pieces: `(lower, ∞]` and `(-∞, upper)` for a wrapped interval.
    /// The first piece includes ∞; the second has no finite lower endpoint and is
    /// reported with `lower = None`.
    pub fn pieces(&self) -> Vec<(Option<Slope<T>>, Slope<T>)> {
        match self {
            Self::Ordinary { lower, upper } => vec![(Some(lower.clone()), upper.clone())],
            Self::Wrapped { lower, upper } => {
                vec![(Some(lower.clone()), Slope::infinity()), (None, upper.clone())]
            }
        }
    }
}
