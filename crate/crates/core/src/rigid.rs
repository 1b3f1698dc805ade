//! Piecewise rigid maps of the line induced by integer permutations:
//! `f(x) = p(floor(x)) + frac(x)`, so `f` moves each unit interval
//! `[n, n+1)` rigidly onto `[p(n), p(n)+1)`.
//!
//! Points are exact rationals; nothing in this module rounds.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permutation::IntegerPermutation;

/// An exact rational point of the line, always in lowest terms with a
/// positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(Ratio<i64>);

impl RationalPoint {
    pub fn new(numerator: i64, denominator: i64) -> Result<RationalPoint> {
        if denominator == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(RationalPoint(Ratio::new(numerator, denominator)))
    }

    pub fn integer(n: i64) -> RationalPoint {
        RationalPoint(Ratio::from_integer(n))
    }

    pub fn numerator(self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(self) -> i64 {
        *self.0.denom()
    }

    /// Greatest integer `<= self`; `floor(-3/2) = -2`.
    pub fn floor(self) -> i64 {
        Integer::div_floor(&self.numerator(), &self.denominator())
    }

    /// `self - floor(self)`, always in `[0, 1)`.
    pub fn fract(self) -> RationalPoint {
        RationalPoint(Ratio::new(
            self.numerator().mod_floor(&self.denominator()),
            self.denominator(),
        ))
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }
}

impl Add for RationalPoint {
    type Output = RationalPoint;
    fn add(self, rhs: RationalPoint) -> RationalPoint {
        RationalPoint(self.0 + rhs.0)
    }
}

impl Sub for RationalPoint {
    type Output = RationalPoint;
    fn sub(self, rhs: RationalPoint) -> RationalPoint {
        RationalPoint(self.0 - rhs.0)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for RationalPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<RationalPoint> {
        let bad = || Error::Parse(format!("bad rational `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => RationalPoint::new(
                n.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            ),
            None => Ok(RationalPoint::integer(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

/// The restriction of a map to one unit interval: `[n, n+1)` goes to
/// `[n + offset, n + offset + 1)` with slope +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub start: i64,
    pub offset: i64,
}

impl Piece {
    pub fn image_start(self) -> i64 {
        self.start + self.offset
    }

    pub fn slope(self) -> i64 {
        1
    }
}

/// A piecewise rigid map of the line.
///
/// `factors` is the formal composition, applied right to left.
/// `collapsed` is the single permutation equal to that product when the
/// factors share a backing; evaluation uses it when present.
#[derive(Clone, Debug)]
pub struct PiecewiseRigidMap {
    factors: Vec<IntegerPermutation>,
    collapsed: Option<IntegerPermutation>,
}

impl PiecewiseRigidMap {
    pub fn identity() -> PiecewiseRigidMap {
        PiecewiseRigidMap::from_permutation(IntegerPermutation::identity())
    }

    pub fn from_permutation(p: impl Into<IntegerPermutation>) -> PiecewiseRigidMap {
        let p = p.into();
        PiecewiseRigidMap { factors: vec![p.clone()], collapsed: Some(p) }
    }

    pub fn factors(&self) -> &[IntegerPermutation] {
        &self.factors
    }

    pub fn collapsed(&self) -> Option<&IntegerPermutation> {
        self.collapsed.as_ref()
    }

    pub fn is_composite(&self) -> bool {
        self.factors.len() > 1
    }

    /// `self . other`. Tree-backed operands must share a labeling. Mixed
    /// cycle/tree products keep only the formal form.
    pub fn compose(&self, other: &PiecewiseRigidMap) -> Result<PiecewiseRigidMap> {
        let collapsed = match (&self.collapsed, &other.collapsed) {
            (Some(p), Some(q)) => match p.compose(q) {
                Ok(pq) => Some(pq),
                Err(e) if mismatched_labelings(p, q) => return Err(e),
                Err(_) => None,
            },
            _ => None,
        };
        if collapsed.is_none() {
            // Formal products still need consistent labelings throughout.
            for p in &self.factors {
                for q in &other.factors {
                    if mismatched_labelings(p, q) {
                        return Err(Error::Context("tree factors use different labelings".into()));
                    }
                }
            }
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(PiecewiseRigidMap { factors, collapsed })
    }

    pub fn inverse(&self) -> PiecewiseRigidMap {
        PiecewiseRigidMap {
            factors: self.factors.iter().rev().map(|p| p.inverse()).collect(),
            collapsed: self.collapsed.as_ref().map(|p| p.inverse()),
        }
    }

    /// Image of the unit interval index `n`.
    pub fn integer_image(&self, n: i64) -> i64 {
        match &self.collapsed {
            Some(p) => p.apply(n),
            None => self.formal_integer_image(n),
        }
    }

    pub fn integer_preimage(&self, n: i64) -> i64 {
        match &self.collapsed {
            Some(p) => p.apply_inverse(n),
            None => self.factors.iter().fold(n, |acc, p| p.apply_inverse(acc)),
        }
    }

    /// Image of `n` through the formal factor sequence, ignoring `collapsed`.
    pub fn formal_integer_image(&self, n: i64) -> i64 {
        self.factors.iter().rev().fold(n, |acc, p| p.apply(acc))
    }

    pub fn eval(&self, x: RationalPoint) -> RationalPoint {
        RationalPoint::integer(self.integer_image(x.floor())) + x.fract()
    }

    pub fn eval_formal(&self, x: RationalPoint) -> RationalPoint {
        RationalPoint::integer(self.formal_integer_image(x.floor())) + x.fract()
    }

    pub fn eval_inverse(&self, y: RationalPoint) -> RationalPoint {
        RationalPoint::integer(self.integer_preimage(y.floor())) + y.fract()
    }

    /// One piece per `n` in `lo..hi`.
    pub fn pieces_in_window(&self, lo: i64, hi: i64) -> Vec<Piece> {
        (lo..hi).map(|n| Piece { start: n, offset: self.integer_image(n) - n }).collect()
    }

    /// Jump locations in `(lo, hi]`: integers `n` where the left limit
    /// `p(n-1) + 1` differs from the value `p(n)`.
    pub fn discontinuities_in_window(&self, lo: i64, hi: i64) -> Vec<i64> {
        ((lo + 1)..=hi)
            .filter(|&n| self.integer_image(n) != self.integer_image(n - 1) + 1)
            .collect()
    }

    /// Checks the three defining conditions of a piecewise rigid map over
    /// `[lo, hi)` using `samples` random rational points.
    pub fn rigidity_audit<R: Rng>(
        &self,
        lo: i64,
        hi: i64,
        samples: usize,
        rng: &mut R,
    ) -> Result<AuditReport> {
        if lo >= hi || samples < 2 {
            return Err(Error::InvalidWindow { lo, hi });
        }
        const DENOMINATOR_CAP: i64 = 10_007;
        let random_point = |rng: &mut R, n: i64| {
            let d = rng.gen_range(1..=DENOMINATOR_CAP);
            let num = rng.gen_range(0..d);
            RationalPoint::integer(n) + RationalPoint::new(num, d).expect("nonzero denominator")
        };

        let mut bijection_failures = Vec::new();
        let mut seen: HashMap<RationalPoint, RationalPoint> = HashMap::new();
        for _ in 0..samples {
            let n = rng.gen_range(lo..hi);
            let x = random_point(rng, n);
            let y = self.eval(x);
            if self.eval_inverse(y) != x {
                bijection_failures.push(format!("eval_inverse(eval({x})) != {x}"));
            }
            if let Some(&other) = seen.get(&y) {
                if other != x {
                    bijection_failures.push(format!("{x} and {other} both map to {y}"));
                }
            }
            seen.insert(y, x);
        }

        let mut slope_failures = Vec::new();
        for _ in 0..samples {
            let n = rng.gen_range(lo..hi);
            let (x1, x2) = (random_point(rng, n), random_point(rng, n));
            if self.eval(x2) - self.eval(x1) != x2 - x1 {
                slope_failures.push(format!("slope on [{x1}, {x2}] is not +1"));
            }
        }

        // Within the window the map is a finite union of translated pieces,
        // so the jump set is contained in the integers and is finite.
        let discontinuities = self.discontinuities_in_window(lo, hi);
        let mut discontinuity_failures = Vec::new();
        let images: HashSet<i64> = (lo..hi).map(|n| self.integer_image(n)).collect();
        if images.len() != (hi - lo) as usize {
            discontinuity_failures.push("two unit intervals share an image".to_string());
        }
        // Second route to the jump set: one-sided limits through `eval`.
        let eps = RationalPoint::new(1, DENOMINATOR_CAP).expect("nonzero denominator");
        let probed: Vec<i64> = ((lo + 1)..=hi)
            .filter(|&n| {
                let x = RationalPoint::integer(n);
                self.eval(x - eps) + eps != self.eval(x)
            })
            .collect();
        if probed != discontinuities {
            discontinuity_failures.push(format!(
                "one-sided limits give jumps {probed:?}, permutation gives {discontinuities:?}"
            ));
        }

        Ok(AuditReport {
            window: (lo, hi),
            samples,
            bijective: bijection_failures.is_empty(),
            unit_slope: slope_failures.is_empty(),
            discontinuities_discrete: discontinuity_failures.is_empty(),
            discontinuities,
            witnesses: bijection_failures
                .into_iter()
                .chain(slope_failures)
                .chain(discontinuity_failures)
                .collect(),
        })
    }
}

fn mismatched_labelings(p: &IntegerPermutation, q: &IntegerPermutation) -> bool {
    match (p, q) {
        (IntegerPermutation::Tree(a), IntegerPermutation::Tree(b)) => {
            a.labeling().rank() != b.labeling().rank()
        }
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub window: (i64, i64),
    pub samples: usize,
    pub bijective: bool,
    pub unit_slope: bool,
    pub discontinuities_discrete: bool,
    /// Integer jump locations in `(lo, hi]`.
    pub discontinuities: Vec<i64>,
    pub witnesses: Vec<String>,
}

impl AuditReport {
    pub fn pass(&self) -> bool {
        self.bijective && self.unit_slope && self.discontinuities_discrete
    }
}
