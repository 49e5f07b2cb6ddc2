//! Brute-force oracles shared by the integration tests.
//!
//! Nothing here calls into the crate's Farey, weight or multicurve algorithms;
//! the oracles work on plain `i64` pairs and exhaustive scans.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rand::Rng;
use tightfin::branched::{BranchCurve, BranchedSurface, SectorRecord};

pub const ORACLE_BOUND: i64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// The scan limit cannot contain the answer.
    BoundInsufficient { needed: i64, bound: i64 },
    /// Nothing in range satisfied the predicate.
    NotFound,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BoundInsufficient { needed, bound } => {
                write!(f, "oracle bound {bound} below required {needed}")
            }
            Self::NotFound => f.write_str("no candidate within the oracle bound"),
        }
    }
}

/// A slope as (numerator, denominator), denominator 0 meaning infinity.
pub type Pair = (i64, i64);

pub const INF: Pair = (1, 0);

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn reduced(n: i64, d: i64) -> Pair {
    let g = gcd(n, d);
    let (n, d) = (n / g, d / g);
    if d < 0 {
        (-n, -d)
    } else {
        (n, d)
    }
}

/// `a < b` with infinity on top.
pub fn less(a: Pair, b: Pair) -> bool {
    match (a.1 == 0, b.1 == 0) {
        (_, true) => a.1 != 0,
        (true, false) => false,
        (false, false) => (a.0 as i128) * (b.1 as i128) < (b.0 as i128) * (a.1 as i128),
    }
}

pub fn det(a: Pair, b: Pair) -> i64 {
    (a.0 * b.1 - a.1 * b.0).abs()
}

/// All reduced fractions with denominator `1..=max_den` in `[lo, hi)`.
pub fn slopes_in(lo: i64, hi: i64, max_den: i64) -> Vec<Pair> {
    let mut out = Vec::new();
    for d in 1..=max_den {
        for n in lo * d..hi * d {
            if gcd(n, d) == 1 {
                out.push((n, d));
            }
        }
    }
    out.sort_by(|a, b| if less(*a, *b) { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater });
    out
}

/// Maximizes `β'/α'` over `1 ≤ α' ≤ bound` subject to `β'α - βα' = 1`.
pub fn successor_oracle(s: Pair, bound: i64) -> Result<Pair, OracleError> {
    let (beta, alpha) = s;
    if alpha > bound {
        return Err(OracleError::BoundInsufficient { needed: alpha, bound });
    }
    let mut best: Option<Pair> = None;
    for ap in 1..=bound {
        let top = 1 + beta * ap;
        if top % alpha == 0 {
            let cand = (top / alpha, ap);
            if best.is_none_or(|b| less(b, cand)) {
                best = Some(cand);
            }
        }
    }
    best.ok_or(OracleError::NotFound)
}

/// Largest `n/d` with `d ≤ bound` strictly inside `(a, upper)` and `|det| = 1` against `a`.
pub fn neighbor_oracle(a: Pair, upper: Pair, bound: i64) -> Result<Pair, OracleError> {
    let mut best: Option<Pair> = None;
    for d in 1..=bound {
        for sign in [-1, 1] {
            let top = a.0 * d + sign;
            if top % a.1 != 0 {
                continue;
            }
            let cand = (top / a.1, d);
            if gcd(cand.0, d) != 1 || det(a, cand) != 1 {
                continue;
            }
            if less(a, cand) && less(cand, upper) && best.is_none_or(|b| less(b, cand)) {
                best = Some(cand);
            }
        }
    }
    best.ok_or(OracleError::NotFound)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Farey neighbours of `x` (finite) with denominator `≤ bound` inside `[lo, hi]`.
fn neighbors_in(x: Pair, lo: Pair, hi: Pair, bound: i64) -> Vec<Pair> {
    let (p, q) = x;
    let mut out = Vec::new();
    if q == 1 && hi.1 == 0 {
        out.push(INF);
    }
    // p·d - q·n = s  for s = ±1
    let (_, u, _) = ext_gcd(p.rem_euclid(q), q);
    for s in [-1i64, 1] {
        let mut d = (s * u).rem_euclid(q);
        if d == 0 {
            d = q;
        }
        while d <= bound {
            let n = (p * d - s) / q;
            let y = (n, d);
            if !less(y, lo) && !less(hi, y) {
                out.push(y);
            }
            d += q;
        }
    }
    out
}

/// Breadth-first distances to `target` along increasing Farey paths whose
/// finite vertices have denominator `≤ bound` and lie in `[lo, hi]`.
///
/// Runs backwards from the target, so one search serves every start in the window.
pub fn bfs_distances_to(target: Pair, lo: i64, hi: i64, bound: i64) -> HashMap<Pair, usize> {
    let mut dist = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(target, 0usize);
    queue.push_back(target);
    let lo_p = (lo, 1);
    while let Some(v) = queue.pop_front() {
        let dv = dist[&v];
        let preds: Vec<Pair> = if v.1 == 0 {
            (lo..=hi).map(|n| (n, 1)).collect()
        } else {
            let top = if less((hi, 1), v) { (hi, 1) } else { v };
            neighbors_in(v, lo_p, top, bound)
        };
        for y in preds {
            if !less(y, v) {
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(dv + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Length of a shortest increasing path from `from` to `to`.
///
/// Edges never cross, so such a path from `from` to ∞ stays inside
/// `[⌊from⌋, ⌊from⌋ + 1] ∪ {∞}`, and one to a finite `to` inside `[from, to]`.
pub fn bfs_distance(from: Pair, to: Pair, bound: i64) -> Result<usize, OracleError> {
    for s in [from, to] {
        if s.1 > bound {
            return Err(OracleError::BoundInsufficient { needed: s.1, bound });
        }
    }
    let lo = from.0.div_euclid(from.1);
    let hi = if to.1 == 0 { lo + 1 } else { to.0.div_euclid(to.1) + 1 };
    bfs_distances_to(to, lo, hi, bound).get(&from).copied().ok_or(OracleError::NotFound)
}

// ---- branched surfaces -------------------------------------------------

pub fn random_surface<R: Rng>(rng: &mut R, max_sectors: usize, max_curves: usize) -> BranchedSurface {
    let n = rng.gen_range(1..=max_sectors);
    let ids: Vec<String> = (0..n).map(|i| format!("S{i}")).collect();
    let sectors = ids.iter().map(|id| SectorRecord::new(id.clone(), rng.gen_range(-2..=2))).collect();
    let m = rng.gen_range(0..=max_curves);
    let curves = (0..m)
        .map(|_| {
            let pick = |r: &mut R| ids[r.gen_range(0..n)].clone();
            BranchCurve::new(pick(rng), pick(rng), pick(rng))
        })
        .collect();
    BranchedSurface::new(sectors, curves)
}

/// Every vector in `[lo, hi]^n` (sector-id order, lexicographic) satisfying all
/// branch equations, found by walking the whole grid.
pub fn brute_force_weights(b: &BranchedSurface, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut ids: Vec<&str> = b.sectors.iter().map(|s| s.id.as_str()).collect();
    ids.sort();
    let pos: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let n = ids.len();
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let mut v = vec![lo; n];
    loop {
        let ok = b
            .branch_curves
            .iter()
            .all(|c| v[pos[c.out1.as_str()]] + v[pos[c.out2.as_str()]] == v[pos[c.inward.as_str()]]);
        if ok {
            out.push(v.clone());
        }
        // odometer, last coordinate fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < hi {
                v[i] += 1;
                for x in v.iter_mut().skip(i + 1) {
                    *x = lo;
                }
                break;
            }
        }
    }
}

// ---- multicurves ------------------------------------------------------

/// Counts of arc vectors by the boundary data they realize, over the full grid
/// `n_ij ≤ 2·kmax`, `b_i ≤ kmax`. Returns (all, without boundary-parallel arcs).
pub fn multicurve_counts(kmax: u64) -> (HashMap<[u64; 3], usize>, HashMap<[u64; 3], usize>) {
    let mut all = HashMap::new();
    let mut tight = HashMap::new();
    for n12 in 0..=2 * kmax {
        for n13 in 0..=2 * kmax {
            for n23 in 0..=2 * kmax {
                for b1 in 0..=kmax {
                    for b2 in 0..=kmax {
                        for b3 in 0..=kmax {
                            let e = [n12 + n13 + 2 * b1, n12 + n23 + 2 * b2, n13 + n23 + 2 * b3];
                            if e.iter().any(|x| x % 2 == 1 || x / 2 > kmax) {
                                continue;
                            }
                            let k = [e[0] / 2, e[1] / 2, e[2] / 2];
                            *all.entry(k).or_insert(0) += 1;
                            if b1 == 0 && b2 == 0 && b3 == 0 {
                                *tight.entry(k).or_insert(0) += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    (all, tight)
}

// ---- Seifert triples --------------------------------------------------

fn random_unit_fraction<R: Rng>(rng: &mut R, max_alpha: i64) -> (i64, i64) {
    loop {
        let a = rng.gen_range(2..=max_alpha);
        let b = rng.gen_range(1..a);
        if gcd(a, b) == 1 {
            return (b, a);
        }
    }
}

/// `(β, α)` pairs with `0 < βᵢ/αᵢ < 1` for `i = 1, 2` and `-2 < β₃/α₃ < 0`.
pub fn random_normalized_pairs<R: Rng>(rng: &mut R, max_alpha: i64) -> [(i64, i64); 3] {
    let first = random_unit_fraction(rng, max_alpha);
    let second = random_unit_fraction(rng, max_alpha);
    let third = loop {
        let a = rng.gen_range(2..=max_alpha);
        let b = rng.gen_range(-2 * a + 1..0);
        if gcd(a, b) == 1 {
            break (b, a);
        }
    };
    [first, second, third]
}

/// Normalized pairs whose Euler number vanishes.
pub fn random_zero_euler_pairs<R: Rng>(rng: &mut R, max_alpha: i64) -> [(i64, i64); 3] {
    loop {
        let first = random_unit_fraction(rng, max_alpha);
        let second = random_unit_fraction(rng, max_alpha);
        let third = reduced(-(first.0 * second.1 + second.0 * first.1), first.1 * second.1);
        if third.1 >= 2 {
            return [first, second, third];
        }
    }
}
