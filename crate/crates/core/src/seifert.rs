//! Slope analysis for small Seifert fibered spaces `(β₁/α₁, β₂/α₂, β₃/α₃)`.
//!
//! The pipeline: normalize the invariants so that `0 < β₁/α₁, β₂/α₂ < 1` and
//! `-2 < β₃/α₃ < 0`, take the Farey successors `β'ᵢ/α'ᵢ` of the first two
//! invariants, parametrize the solutions of `k₁α₁ + α'₁ = k₂α₂ + α'₂` by
//! `k ∈ (1/gcd(α₁, α₂))ℕ`, and study the boundary slopes
//!
//! ```text
//!        1 - (k₁β₁ + β'₁) - (k₂β₂ + β'₂)
//! s_k = ---------------------------------,   k₁ = kα₂ + r₁,  k₂ = kα₁ + r₂
//!               k₁α₁ + α'₁
//! ```
//!
//! against `β₃/α₃` (Farey edge, coprimality, determinant).

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::farey::{self, FareyError, Slope};
use crate::scalar::{format_ratio, serde_int, serde_ratio, Int};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("cannot parse Seifert invariants {0:?}; expected \"(b1/a1, b2/a2, b3/a3)\"")]
    Parse(String),
    #[error("invariant {index} is {value}; Seifert invariants need a positive denominator")]
    InfiniteInvariant { index: usize, value: String },
    #[error("lens-space degeneration: invariant {index} ({value}) has alpha = 1")]
    LensSpace { index: usize, value: String },
    #[error(
        "normalization infeasible: after moving the first two invariants into (0, 1) the third is {beta3_over_alpha3}, outside (-2, 0)"
    )]
    Infeasible { beta3_over_alpha3: String },
    #[error("triple {0} is not normalized")]
    NotNormalized(String),
    #[error("k = {0} is not admissible for this family")]
    InadmissibleK(String),
    #[error("the two forms of s_k disagree at k = {0}")]
    FormMismatch(String),
    #[error(transparent)]
    Farey(#[from] FareyError),
}

/// Three finite Seifert invariants with positive denominators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeifertTriple<T: Int> {
    invariants: [Slope<T>; 3],
}

impl<T: Int> SeifertTriple<T> {
    pub fn new(invariants: [Slope<T>; 3]) -> Result<Self, SeifertError> {
        for (i, s) in invariants.iter().enumerate() {
            if s.is_infinite() {
                return Err(SeifertError::InfiniteInvariant { index: i + 1, value: s.to_string() });
            }
        }
        Ok(Self { invariants })
    }

    /// Convenience constructor from `(β, α)` pairs.
    pub fn from_pairs(pairs: [(T, T); 3]) -> Result<Self, SeifertError> {
        let [a, b, c] = pairs;
        Self::new([Slope::new(a.0, a.1)?, Slope::new(b.0, b.1)?, Slope::new(c.0, c.1)?])
    }

    pub fn invariants(&self) -> &[Slope<T>; 3] {
        &self.invariants
    }

    pub fn alpha(&self, i: usize) -> &T {
        self.invariants[i].denom()
    }

    pub fn beta(&self, i: usize) -> &T {
        self.invariants[i].numer()
    }

    pub fn alphas(&self) -> [T; 3] {
        [self.alpha(0).clone(), self.alpha(1).clone(), self.alpha(2).clone()]
    }

    fn ratio(&self, i: usize) -> Ratio<T> {
        Ratio::new_raw(self.beta(i).clone(), self.alpha(i).clone())
    }

    /// `0 < β₁/α₁, β₂/α₂ < 1` and `-2 < β₃/α₃ < 0`.
    pub fn is_normalized(&self) -> bool {
        let zero = Ratio::from_integer(T::zero());
        let one = Ratio::from_integer(T::one());
        let minus_two = Ratio::from_integer(T::from_i64_exact(-2));
        let (r1, r2, r3) = (self.ratio(0), self.ratio(1), self.ratio(2));
        zero < r1 && r1 < one && zero < r2 && r2 < one && minus_two < r3 && r3 < zero
    }

    fn require_normalized(&self) -> Result<(), SeifertError> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(SeifertError::NotNormalized(self.to_string()))
        }
    }
}

impl<T: Int> fmt::Display for SeifertTriple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.invariants;
        write!(f, "({a}, {b}, {c})")
    }
}

impl<T: Int> fmt::Debug for SeifertTriple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Int> FromStr for SeifertTriple<T> {
    type Err = SeifertError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SeifertError::Parse(s.to_string());
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut slopes = Vec::with_capacity(3);
        for p in parts {
            slopes.push(p.parse::<Slope<T>>().map_err(|_| bad())?);
        }
        let [a, b, c]: [Slope<T>; 3] = slopes.try_into().map_err(|_| bad())?;
        Self::new([a, b, c])
    }
}

impl<T: Int> Serialize for SeifertTriple<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de, T: Int> Deserialize<'de> for SeifertTriple<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(de::Error::custom)
    }
}

/// The Euler number `Σ βᵢ/αᵢ`.
pub fn euler_number<T: Int>(t: &SeifertTriple<T>) -> Ratio<T> {
    t.ratio(0) + t.ratio(1) + t.ratio(2)
}

/// Shifts `β₁`, `β₂` into `(0, αᵢ)` by multiples of `αᵢ` and moves the same
/// integers into `β₃`, which keeps the Euler number fixed.
pub fn normalize<T: Int>(t: &SeifertTriple<T>) -> Result<SeifertTriple<T>, SeifertError> {
    for (i, s) in t.invariants.iter().enumerate() {
        if s.denom().is_one() {
            return Err(SeifertError::LensSpace { index: i + 1, value: s.to_string() });
        }
    }
    let mut betas = [t.beta(0).clone(), t.beta(1).clone(), t.beta(2).clone()];
    let alphas = t.alphas();
    for i in 0..2 {
        // alpha >= 2 and gcd(beta, alpha) = 1, so beta is never a multiple of alpha
        let shift = betas[i].div_floor(&alphas[i]);
        betas[i] = betas[i].clone() - shift.clone() * alphas[i].clone();
        betas[2] = betas[2].clone() + shift * alphas[2].clone();
    }
    let [b1, b2, b3] = betas;
    let [a1, a2, a3] = alphas;
    let out = SeifertTriple::from_pairs([(b1, a1), (b2, a2), (b3, a3)])?;
    if !out.is_normalized() {
        return Err(SeifertError::Infeasible { beta3_over_alpha3: out.invariants[2].to_string() });
    }
    Ok(out)
}

/// `(β'₁/α'₁, β'₂/α'₂)`, the Farey successors of the first two invariants.
pub fn dual_invariants<T: Int>(
    t: &SeifertTriple<T>,
) -> Result<(Slope<T>, Slope<T>), SeifertError> {
    t.require_normalized()?;
    Ok((farey::successor(&t.invariants[0])?, farey::successor(&t.invariants[1])?))
}

/// The limit `-β₁/α₁ - β₂/α₂` of the boundary slopes `s_k`.
pub fn limit_slope<T: Int>(t: &SeifertTriple<T>) -> Slope<T> {
    Slope::from_ratio(&(-t.ratio(0) - t.ratio(1)))
}

/// `Σ 1/αᵢ = 1`: the small Seifert spaces that are torus bundles over the circle.
pub fn is_torus_bundle<T: Int>(t: &SeifertTriple<T>) -> bool {
    reciprocal_sum_is_one(&t.alphas())
}

/// `Σ 1/αᵢ = 1`, evaluated exactly.
pub fn reciprocal_sum_is_one<T: Int>(alphas: &[T; 3]) -> bool {
    let sum = alphas
        .iter()
        .fold(Ratio::from_integer(T::zero()), |acc, a| acc + Ratio::new(T::one(), a.clone()));
    let holds = sum.is_one();
    if holds {
        assert!(torus_bundle_identity(alphas), "Σ1/α = 1 without (α₁α₂ - α₁ - α₂)α₃ = α₁α₂");
    }
    holds
}

/// The cleared-denominator form `(α₁α₂ - α₁ - α₂)·α₃ = α₁α₂`.
pub fn torus_bundle_identity<T: Int>(alphas: &[T; 3]) -> bool {
    let [a1, a2, a3] = alphas.clone();
    let prod = a1.clone() * a2.clone();
    (prod.clone() - a1 - a2) * a3 == prod
}

/// Solutions of `k₁α₁ + α'₁ = k₂α₂ + α'₂`, written `k₁ = kα₂ + r₁`, `k₂ = kα₁ + r₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct GcsFamily<T: Int> {
    pub base: SeifertTriple<T>,
    pub duals: (Slope<T>, Slope<T>),
    #[serde(with = "serde_int")]
    pub r1: T,
    #[serde(with = "serde_int")]
    pub r2: T,
    /// `gcd(α₁, α₂)`; the admissible `k` are the nonnegative multiples of `1/gcd`.
    #[serde(with = "serde_int")]
    pub gcd: T,
}

/// Result of [`gcs_family`]: either a parametrized family, or the obstruction
/// `gcd(α₁, α₂) ∤ α'₂ - α'₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcsOutcome<T: Int> {
    Family(GcsFamily<T>),
    Empty { duals: (Slope<T>, Slope<T>), gcd: T, difference: T },
}

impl<T: Int> GcsOutcome<T> {
    pub fn family(self) -> Option<GcsFamily<T>> {
        match self {
            Self::Family(f) => Some(f),
            Self::Empty { .. } => None,
        }
    }
}

/// Builds the family with the particular solution of least `r₁ ≥ 0`.
pub fn gcs_family<T: Int>(t: &SeifertTriple<T>) -> Result<GcsOutcome<T>, SeifertError> {
    let duals = dual_invariants(t)?;
    let (a1, a2) = (t.alpha(0).clone(), t.alpha(1).clone());
    let (ap1, ap2) = (duals.0.denom().clone(), duals.1.denom().clone());
    let g = a1.gcd(&a2);
    // r1 a1 - r2 a2 = ap2 - ap1
    let diff = ap2 - ap1;
    if !diff.is_multiple_of(&g) {
        return Ok(GcsOutcome::Empty { duals, gcd: g, difference: diff });
    }
    let (m1, m2, d) = (a1.clone() / g.clone(), a2.clone() / g.clone(), diff.clone() / g.clone());
    // r1 ≡ d · m1⁻¹ (mod m2)
    let inv = m1.extended_gcd(&m2).x;
    let r1 = (d * inv).mod_floor(&m2);
    let r2 = r1.clone() * a1 - diff;
    debug_assert!(r2.is_multiple_of(&a2));
    let r2 = r2 / a2;
    // 0 <= r1 and α'2 - α'1 < α2 force r2 > -1
    debug_assert!(!r2.is_negative());
    Ok(GcsOutcome::Family(GcsFamily { base: t.clone(), duals, r1, r2, gcd: g }))
}

/// `s_k` in both printed forms, before reduction to lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkTerms<T: Int> {
    pub k1: T,
    pub k2: T,
    /// `k(-α₂β₁ - α₁β₂) + (1 - r₁β₁ - β'₁ - r₂β₂ - β'₂)`
    pub numerator: T,
    /// `kα₁α₂ + r₁α₁ + α'₁`
    pub denominator: T,
    pub slope: Slope<T>,
}

impl<T: Int> GcsFamily<T> {
    pub fn step(&self) -> Ratio<T> {
        Ratio::new(T::one(), self.gcd.clone())
    }

    /// The `m`-th admissible parameter `m/gcd(α₁, α₂)`.
    pub fn k_at(&self, m: T) -> Ratio<T> {
        Ratio::new(m, self.gcd.clone())
    }

    /// The same family with the next particular solution `(r₁ + α₂/g, r₂ + α₁/g)`.
    pub fn shifted(&self) -> Self {
        let g = &self.gcd;
        Self {
            r1: self.r1.clone() + self.base.alpha(1).clone() / g.clone(),
            r2: self.r2.clone() + self.base.alpha(0).clone() / g.clone(),
            ..self.clone()
        }
    }

    /// `(k₁, k₂)` for an admissible `k`.
    pub fn k_pair(&self, k: &Ratio<T>) -> Result<(T, T), SeifertError> {
        let bad = || SeifertError::InadmissibleK(format_ratio(k));
        if k.is_negative() || !(k * Ratio::from_integer(self.gcd.clone())).is_integer() {
            return Err(bad());
        }
        let k1 = k * Ratio::from_integer(self.base.alpha(1).clone())
            + Ratio::from_integer(self.r1.clone());
        let k2 = k * Ratio::from_integer(self.base.alpha(0).clone())
            + Ratio::from_integer(self.r2.clone());
        if !k1.is_integer() || !k2.is_integer() {
            return Err(bad());
        }
        Ok((k1.to_integer(), k2.to_integer()))
    }

    /// Evaluates `s_k` through the original and the expanded form and checks that
    /// they, and the two expressions for the denominator, agree.
    pub fn sk_terms(&self, k: &Ratio<T>) -> Result<SkTerms<T>, SeifertError> {
        let (k1, k2) = self.k_pair(k)?;
        let t = &self.base;
        let (a1, b1, a2, b2) = (t.alpha(0), t.beta(0), t.alpha(1), t.beta(1));
        let (bp1, ap1) = (self.duals.0.numer(), self.duals.0.denom());
        let (bp2, ap2) = (self.duals.1.numer(), self.duals.1.denom());
        let one = T::one();

        let num_orig = one.clone()
            - (k1.clone() * b1.clone() + bp1.clone())
            - (k2.clone() * b2.clone() + bp2.clone());
        let den_orig = k1.clone() * a1.clone() + ap1.clone();
        let den_alt = k2.clone() * a2.clone() + ap2.clone();

        let lift = |x: &T| Ratio::from_integer(x.clone());
        let slope_coeff = -(a2.clone() * b1.clone()) - a1.clone() * b2.clone();
        let constant = one
            - self.r1.clone() * b1.clone()
            - bp1.clone()
            - self.r2.clone() * b2.clone()
            - bp2.clone();
        let num_exp = k * lift(&slope_coeff) + lift(&constant);
        let den_exp =
            k * lift(&(a1.clone() * a2.clone())) + lift(&(self.r1.clone() * a1.clone() + ap1.clone()));

        if num_exp != lift(&num_orig) || den_exp != lift(&den_orig) || den_alt != den_orig {
            return Err(SeifertError::FormMismatch(format_ratio(k)));
        }
        let slope = Slope::new(num_orig.clone(), den_orig.clone())?;
        Ok(SkTerms { k1, k2, numerator: num_orig, denominator: den_orig, slope })
    }
}

/// The boundary slope `s_k` in lowest terms.
pub fn slope_sk<T: Int>(f: &GcsFamily<T>, k: &Ratio<T>) -> Result<Slope<T>, SeifertError> {
    Ok(f.sk_terms(k)?.slope)
}

/// `α₃·num - β₃·den` on the unreduced fraction `num/den` of `s_k`.
pub fn gcs_determinant<T: Int>(f: &GcsFamily<T>, k: &Ratio<T>) -> Result<T, SeifertError> {
    let terms = f.sk_terms(k)?;
    Ok(determinant_of(&f.base, &terms))
}

fn determinant_of<T: Int>(t: &SeifertTriple<T>, terms: &SkTerms<T>) -> T {
    t.alpha(2).clone() * terms.numerator.clone() - t.beta(2).clone() * terms.denominator.clone()
}

/// Whether the unreduced numerator and denominator of `s_k` are coprime.
pub fn check_rel_prime<T: Int>(f: &GcsFamily<T>, k: &Ratio<T>) -> Result<bool, SeifertError> {
    let terms = f.sk_terms(k)?;
    Ok(terms.numerator.gcd(&terms.denominator).is_one())
}

/// `s_k > β₃/α₃` and `s_k` shares a Farey edge with `β₃/α₃`.
pub fn check_edge_to_sk<T: Int>(f: &GcsFamily<T>, k: &Ratio<T>) -> Result<bool, SeifertError> {
    let sk = slope_sk(f, k)?;
    let b3 = &f.base.invariants[2];
    Ok(sk > *b3 && farey::is_edge(b3, &sk))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// `e ≠ 0`: only finitely many classes.
    GcsFinite,
    /// `e = 0` and `Σ 1/αᵢ = 1`.
    TorusBundleCandidate,
    /// `e = 0` and `Σ 1/αᵢ ≠ 1`: the determinant is a constant other than 1.
    EdgeConditionFails,
    /// `gcd(α₁, α₂) ∤ α'₂ - α'₁`: no pair `(k₁, k₂)` exists.
    EmptyFamily,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::GcsFinite => "GCS finite",
            Self::TorusBundleCandidate => "torus-bundle candidate",
            Self::EdgeConditionFails => "edge condition fails for large k",
            Self::EmptyFamily => "empty family",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct KRow<T: Int> {
    #[serde(with = "serde_ratio")]
    pub k: Ratio<T>,
    #[serde(with = "serde_int")]
    pub k1: T,
    #[serde(with = "serde_int")]
    pub k2: T,
    pub s_k: Slope<T>,
    #[serde(with = "serde_int")]
    pub determinant: T,
    pub edge: bool,
    pub coprime: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct FamilySummary<T: Int> {
    #[serde(with = "serde_int")]
    pub r1: T,
    #[serde(with = "serde_int")]
    pub r2: T,
    #[serde(with = "serde_ratio")]
    pub step: Ratio<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct AnalysisReport<T: Int> {
    pub input: SeifertTriple<T>,
    pub normalized: SeifertTriple<T>,
    #[serde(with = "serde_ratio")]
    pub euler_number: Ratio<T>,
    pub torus_bundle: bool,
    pub duals: (Slope<T>, Slope<T>),
    pub family: Option<FamilySummary<T>>,
    pub limit_slope: Slope<T>,
    /// The limit lies below `β₃/α₃`, so the interval `(β₃/α₃, s)` wraps through
    /// ∞ and a torus of slope ∞ (zero twisting) appears.
    pub zero_twisting_torus: bool,
    #[serde(with = "serde_ratio")]
    pub k_max: Ratio<T>,
    pub rows: Vec<KRow<T>>,
    /// For `e = 0`: the determinant is one constant `D` over all rows, and
    /// `s_k - s = D/(α₃·den)` on every row.
    pub limit_gap_verified: Option<bool>,
    /// `s_k` strictly decreasing across the rows.
    pub decreasing: bool,
    pub verdict: Verdict,
}

/// Runs the whole pipeline for every admissible `k ≤ k_max`.
pub fn analyze<T: Int>(
    t: &SeifertTriple<T>,
    k_max: &Ratio<T>,
) -> Result<AnalysisReport<T>, SeifertError> {
    let normalized = normalize(t)?;
    let e = euler_number(&normalized);
    let torus_bundle = is_torus_bundle(&normalized);
    let limit = limit_slope(&normalized);
    let b3 = normalized.invariants[2].clone();
    let zero_twisting_torus = limit < b3;

    let outcome = gcs_family(&normalized)?;
    let duals = match &outcome {
        GcsOutcome::Family(f) => f.duals.clone(),
        GcsOutcome::Empty { duals, .. } => duals.clone(),
    };

    let mut rows = Vec::new();
    let mut family = None;
    if let GcsOutcome::Family(f) = &outcome {
        family = Some(FamilySummary { r1: f.r1.clone(), r2: f.r2.clone(), step: f.step() });
        if !k_max.is_negative() {
            let last = (k_max * Ratio::from_integer(f.gcd.clone())).floor().to_integer();
            let mut m = T::zero();
            while m <= last {
                let k = f.k_at(m.clone());
                let terms = f.sk_terms(&k)?;
                let determinant = determinant_of(&normalized, &terms);
                rows.push(KRow {
                    edge: terms.slope > b3 && farey::is_edge(&b3, &terms.slope),
                    coprime: terms.numerator.gcd(&terms.denominator).is_one(),
                    k,
                    k1: terms.k1,
                    k2: terms.k2,
                    s_k: terms.slope,
                    determinant,
                });
                m = m + T::one();
            }
        }
    }

    let decreasing = rows.windows(2).all(|w| w[1].s_k < w[0].s_k);
    let limit_gap_verified = if e.is_zero() {
        let f = outcome.clone().family();
        Some(match (f, rows.first()) {
            (Some(f), Some(first)) => {
                let d = first.determinant.clone();
                let s = limit.to_ratio().expect("limit is finite");
                rows.iter().all(|row| {
                    let terms = f.sk_terms(&row.k).expect("row k is admissible");
                    let gap = Ratio::new(d.clone(), normalized.alpha(2).clone() * terms.denominator);
                    row.determinant == d
                        && row.s_k.to_ratio().map(|sk| sk - s.clone()) == Some(gap)
                })
            }
            _ => true,
        })
    } else {
        None
    };

    let verdict = if !e.is_zero() {
        Verdict::GcsFinite
    } else if matches!(outcome, GcsOutcome::Empty { .. }) {
        Verdict::EmptyFamily
    } else if torus_bundle {
        Verdict::TorusBundleCandidate
    } else {
        Verdict::EdgeConditionFails
    };

    Ok(AnalysisReport {
        input: t.clone(),
        normalized,
        euler_number: e,
        torus_bundle,
        duals,
        family,
        limit_slope: limit,
        zero_twisting_torus,
        k_max: k_max.clone(),
        rows,
        limit_gap_verified,
        decreasing,
        verdict,
    })
}
