//! Exact dyadic rationals and piecewise-linear homeomorphisms of the circle.
//!
//! The circle is the unit interval with `0` and `1` identified; circle values
//! are kept in `[0, 1)`. A [`PlMap`] is an orientation-preserving homeomorphism
//! with finitely many dyadic breakpoints and power-of-two slopes. These maps
//! are built directly from the analytic formulas for `x_n` and `c_n`, which
//! makes them an equality oracle independent of the tree pair diagram code.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact dyadic rational `num / 2^exp`.
///
/// Always stored reduced: `num` is odd, or `num = 0` with `exp = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn zero() -> Dyadic {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { num: BigInt::one(), exp: 0 }
    }

    /// The exact value `num / 2^exp`, reduced but not wrapped onto the circle.
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Dyadic {
        let mut num = num.into();
        if num.is_zero() {
            return Dyadic::zero();
        }
        let shift = num.trailing_zeros().unwrap_or(0).min(u64::from(exp));
        num >>= shift;
        Dyadic { num, exp: exp - shift as u32 }
    }

    /// The canonical circle representative of `num / 2^exp`, in `[0, 1)`.
    pub fn canonical(num: impl Into<BigInt>, exp: u32) -> Dyadic {
        Dyadic::new(num, exp).frac()
    }

    /// `1 - 2^-k`, the right endpoint of the `k`-th halving of `[0, 1]`.
    pub fn one_minus_pow2(k: u32) -> Dyadic {
        Dyadic::new((BigInt::one() << k) - 1, k)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    /// True when the value lies in `[0, 1)`.
    pub fn is_on_circle(&self) -> bool {
        !self.num.is_negative() && self.num < (BigInt::one() << self.exp)
    }

    /// Reduction mod 1 onto `[0, 1)`.
    pub fn frac(&self) -> Dyadic {
        if self.is_on_circle() {
            return self.clone();
        }
        let modulus = BigInt::one() << self.exp;
        Dyadic::new(self.num.mod_floor(&modulus), self.exp)
    }

    /// Multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        if k >= 0 {
            let k = k as u64;
            if u64::from(self.exp) >= k {
                Dyadic { num: self.num.clone(), exp: self.exp - k as u32 }
            } else {
                Dyadic { num: &self.num << (k - u64::from(self.exp)), exp: 0 }
            }
        } else {
            let extra = u32::try_from(-k).expect("exponent overflow");
            Dyadic { num: self.num.clone(), exp: self.exp + extra }
        }
    }

    /// `log2(self / other)` when that ratio of positive values is a power of two.
    pub fn ratio_log2(&self, other: &Dyadic) -> Option<i64> {
        if !self.is_positive() || !other.is_positive() || self.num != other.num {
            return None;
        }
        Some(i64::from(other.exp) - i64::from(self.exp))
    }

    /// Plain fraction text, `3/4`, `0`, `-1/2`.
    pub fn to_fraction_string(&self) -> String {
        if self.exp == 0 {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, BigUint::one() << self.exp)
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let exp = self.exp.max(other.exp);
        (&self.num << (exp - self.exp), &other.num << (exp - other.exp), exp)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(rhs);
        Dyadic::new(a + b, exp)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(rhs);
        Dyadic::new(a - b, exp)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }
}

/// Text form `a/2^e`.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_fraction_string())
    }
}

/// Accepts `a/2^e`, `a/b` with `b` a power of two, or a bare integer `a`.
impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let offset = s.len() - s.trim_start().len();
        let parse_int = |part: &str, at: usize| -> Result<BigInt> {
            part.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::syntax(at, format!("expected an integer, found `{}`", part.trim())))
        };
        let Some(slash) = text.find('/') else {
            return Ok(Dyadic::new(parse_int(text, offset)?, 0));
        };
        let num = parse_int(&text[..slash], offset)?;
        let denom = &text[slash + 1..];
        let denom_at = offset + slash + 1;
        if let Some(exp_text) = denom.trim().strip_prefix("2^") {
            let exp = exp_text
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::syntax(denom_at + 2, format!("bad exponent `{exp_text}`")))?;
            return Ok(Dyadic::new(num, exp));
        }
        let denom_value = parse_int(denom, denom_at)?;
        if !denom_value.is_positive() || denom_value.magnitude().count_ones() != 1 {
            return Err(Error::syntax(denom_at, "denominator must be a positive power of two"));
        }
        let exp = u32::try_from(denom_value.trailing_zeros().unwrap_or(0))
            .map_err(|_| Error::syntax(denom_at, "denominator too large"))?;
        Ok(Dyadic::new(num, exp))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// The 2-adic distance between circle points: `2^k` when `|x - y| = r / 2^k`
/// with `r` odd, and `0` when the points coincide.
///
/// Either arc may be used: the two arc lengths sum to 1, so they share the
/// same 2-adic valuation.
pub fn two_adic_distance(x: &Dyadic, y: &Dyadic) -> BigUint {
    let diff = (x - y).frac();
    if diff.is_zero() {
        BigUint::zero()
    } else {
        BigUint::one() << diff.exp
    }
}

/// An orientation-preserving piecewise-linear homeomorphism of the circle with
/// dyadic breakpoints and power-of-two slopes.
///
/// Stored in canonical form: the first break has domain `0`, and every other
/// break is a genuine change of slope. Two maps are equal exactly when their
/// canonical break lists are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlMap {
    breaks: Vec<(Dyadic, Dyadic)>,
    /// `slopes[k]` is the log2 slope on `[breaks[k].0, breaks[k + 1].0)`,
    /// the last piece wrapping through 1.
    slopes: Vec<i64>,
}

impl PlMap {
    pub fn identity() -> PlMap {
        PlMap::rotation(&Dyadic::zero())
    }

    /// Rotation of the circle by `amount`.
    pub fn rotation(amount: &Dyadic) -> PlMap {
        PlMap { breaks: vec![(Dyadic::zero(), amount.frac())], slopes: vec![0] }
    }

    /// Builds a map from points `(t, f(t))` with `f` linear between consecutive
    /// points (cyclically). Points need not include `0` and may be collinear;
    /// the result is canonicalized.
    pub fn from_points(mut points: Vec<(Dyadic, Dyadic)>) -> Result<PlMap> {
        if points.is_empty() {
            return Err(Error::InvalidMap("no points".into()));
        }
        if let Some((d, i)) = points.iter().find(|(d, i)| !d.is_on_circle() || !i.is_on_circle()) {
            return Err(Error::InvalidMap(format!("point {d:?} -> {i:?} is not on the circle")));
        }
        points.sort_by(|a, b| a.0.cmp(&b.0));
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidMap("repeated domain coordinate".into()));
        }

        let n = points.len();
        let mut slopes = Vec::with_capacity(n);
        let mut total = Dyadic::zero();
        for k in 0..n {
            let (d0, i0) = &points[k];
            let (d1, i1) = &points[(k + 1) % n];
            let dom_len = if k + 1 < n { d1 - d0 } else { &(&Dyadic::one() + d1) - d0 };
            let mut img_len = (i1 - i0).frac();
            if img_len.is_zero() {
                if n > 1 {
                    return Err(Error::InvalidMap("map is not injective".into()));
                }
                img_len = Dyadic::one();
            }
            let slope = img_len
                .ratio_log2(&dom_len)
                .ok_or_else(|| Error::InvalidMap(format!("slope on piece starting at {d0:?} is not a power of two")))?;
            total = &total + &img_len;
            slopes.push(slope);
        }
        if total != Dyadic::one() {
            return Err(Error::InvalidMap("images are not cyclically increasing".into()));
        }

        if !points[0].0.is_zero() {
            let (d_last, i_last) = &points[n - 1];
            let last_slope = slopes[n - 1];
            let image_of_zero = (i_last + &(&Dyadic::one() - d_last).mul_pow2(last_slope)).frac();
            points.insert(0, (Dyadic::zero(), image_of_zero));
            slopes.insert(0, last_slope);
        }

        let mut breaks = Vec::with_capacity(points.len());
        let mut kept_slopes: Vec<i64> = Vec::with_capacity(points.len());
        for (point, slope) in points.into_iter().zip(slopes) {
            if kept_slopes.last() == Some(&slope) {
                continue;
            }
            breaks.push(point);
            kept_slopes.push(slope);
        }
        Ok(PlMap { breaks, slopes: kept_slopes })
    }

    /// The analytic generator `c_n`: breaks at `1/2, 3/4, ..., 1 - 2^-(n+1)`,
    /// each subinterval sent to its left neighbour and `[0, 1/2]` sent to the
    /// last subinterval.
    pub fn c_map(n: u32) -> PlMap {
        let mut points = vec![(Dyadic::zero(), Dyadic::one_minus_pow2(n + 1))];
        for k in 1..=n + 1 {
            points.push((Dyadic::one_minus_pow2(k), Dyadic::one_minus_pow2(k - 1)));
        }
        PlMap::from_points(points).expect("c_n is a valid circle map")
    }

    /// The analytic generator `x_n`: the identity on `[0, 1 - 2^-n]` and a
    /// rescaled copy of `x_0` (`t/2`, `t - 1/4`, `2t - 1`) on the rest.
    pub fn x_map(n: u32) -> PlMap {
        let start = Dyadic::one_minus_pow2(n);
        let quarter = Dyadic::new(1, n + 2);
        let points = vec![
            (Dyadic::zero(), Dyadic::zero()),
            (start.clone(), start.clone()),
            (Dyadic::one_minus_pow2(n + 1), &start + &quarter),
            (Dyadic::one_minus_pow2(n + 2), Dyadic::one_minus_pow2(n + 1)),
        ];
        let mut points = points;
        if n == 0 {
            points.remove(1);
        }
        PlMap::from_points(points).expect("x_n is a valid circle map")
    }

    pub fn breaks(&self) -> &[(Dyadic, Dyadic)] {
        &self.breaks
    }

    pub fn is_identity(&self) -> bool {
        *self == PlMap::identity()
    }

    fn piece_containing(&self, t: &Dyadic) -> usize {
        self.breaks.partition_point(|(d, _)| d <= t) - 1
    }

    /// Exact image of a circle point. Inputs off the circle are wrapped first.
    pub fn eval(&self, t: &Dyadic) -> Dyadic {
        let t = t.frac();
        let k = self.piece_containing(&t);
        let (d, i) = &self.breaks[k];
        (i + &(&t - d).mul_pow2(self.slopes[k])).frac()
    }

    fn image_length(&self, k: usize) -> Dyadic {
        let n = self.breaks.len();
        if n == 1 {
            return Dyadic::one();
        }
        (&self.breaks[(k + 1) % n].1 - &self.breaks[k].1).frac()
    }

    /// Exact preimage of a circle point.
    pub fn eval_inverse(&self, y: &Dyadic) -> Dyadic {
        let y = y.frac();
        for (k, (d, i)) in self.breaks.iter().enumerate() {
            let offset = (&y - i).frac();
            if offset < self.image_length(k) {
                return (d + &offset.mul_pow2(-self.slopes[k])).frac();
            }
        }
        unreachable!("image arcs cover the circle")
    }

    pub fn inverse(&self) -> PlMap {
        let points = self.breaks.iter().map(|(d, i)| (i.clone(), d.clone())).collect();
        PlMap::from_points(points).expect("inverse of a valid map is valid")
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &PlMap) -> PlMap {
        let mut domain: Vec<Dyadic> = inner.breaks.iter().map(|(d, _)| d.clone()).collect();
        domain.extend(self.breaks.iter().map(|(d, _)| inner.eval_inverse(d)));
        domain.sort();
        domain.dedup();
        let points = domain
            .into_iter()
            .map(|t| {
                let image = self.eval(&inner.eval(&t));
                (t, image)
            })
            .collect();
        PlMap::from_points(points).expect("composition of valid maps is valid")
    }

    /// One `domain→image` pair per line, in `a/2^e` form.
    pub fn to_text(&self) -> String {
        self.breaks.iter().map(|(d, i)| format!("{d}→{i}\n")).collect()
    }

    pub fn from_text(text: &str) -> Result<PlMap> {
        let mut points = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let body = line.trim_end_matches('\n');
            if !body.trim().is_empty() {
                let (d, i) = body
                    .split_once('→')
                    .or_else(|| body.split_once("->"))
                    .ok_or_else(|| Error::syntax(offset, "expected `domain→image`"))?;
                let image_at = offset + d.len() + if body.contains('→') { '→'.len_utf8() } else { 2 };
                let d = d.parse::<Dyadic>().map_err(|e| shift_error(e, offset))?;
                let i = i.parse::<Dyadic>().map_err(|e| shift_error(e, image_at))?;
                points.push((d, i));
            }
            offset += line.len();
        }
        PlMap::from_points(points)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializing a map cannot fail")
    }

    pub fn from_json(text: &str) -> Result<PlMap> {
        serde_json::from_str(text).map_err(|e| Error::syntax(e.column(), e.to_string()))
    }
}

fn shift_error(err: Error, by: usize) -> Error {
    match err {
        Error::Syntax { position, message } => Error::Syntax { position: position + by, message },
        other => other,
    }
}

impl Serialize for PlMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.breaks.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PlMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let points = Vec::<(Dyadic, Dyadic)>::deserialize(deserializer)?;
        PlMap::from_points(points).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
