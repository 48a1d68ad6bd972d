//! Formal Laurent series with explicit precision.
//!
//! A [`LaurentSeries`] is expanded on one side: bounded below (an element of
//! `K((x))`, finitely many negative exponents) or bounded above (an element of
//! `K((1/x))`). Each value records exactly which coefficients are known.
//! For a bounded-below series that is not exact, every coefficient of `x^k`
//! with `k < bound` is known; for a bounded-above one, every coefficient with
//! `k > bound` is known. Exact values are Laurent polynomials and belong to
//! both sides; their stored side is only a preference used when an operation
//! has to expand them into an infinite series.
//!
//! Every operation derives the achievable output precision from its inputs,
//! so a coefficient reported as known is always correct.

mod compose;
mod dense;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Rational};

pub(crate) use compose::compose_in;
pub use compose::CompositionCase;
pub use parse::parse;

/// Number of coefficients, counted from the order, generated when an exact
/// input has to be expanded and the caller gave no better hint.
pub const DEFAULT_PRECISION: usize = 16;

/// Direction in which a series is expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `K((x))`: finitely many negative exponents.
    Below,
    /// `K((1/x))`: finitely many positive exponents.
    Above,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Below => Side::Above,
            Side::Above => Side::Below,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Below => "below",
            Side::Above => "above",
        }
    }
}

/// Membership reported for a series value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SideTag {
    BoundedBelow,
    BoundedAbove,
    FiniteSupport,
}

impl SideTag {
    pub fn name(self) -> &'static str {
        match self {
            SideTag::BoundedBelow => "bounded-below",
            SideTag::BoundedAbove => "bounded-above",
            SideTag::FiniteSupport => "finite-support",
        }
    }

    /// Whether a value with this tag can be used where `side` is required.
    pub fn admits(self, side: Side) -> bool {
        matches!(
            (self, side),
            (SideTag::FiniteSupport, _)
                | (SideTag::BoundedBelow, Side::Below)
                | (SideTag::BoundedAbove, Side::Above)
        )
    }
}

/// Extremal exponent with a nonzero coefficient: least on the bounded-below
/// side, greatest on the bounded-above side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(i64),
    ZeroSeries,
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::ZeroSeries => None,
        }
    }
}

/// Interval of exponents on which every coefficient is known. `None` marks an
/// unbounded end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnownWindow {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries<F = Rational> {
    /// Nonzero coefficients only, all inside the known region.
    coeffs: BTreeMap<i64, F>,
    side: Side,
    /// `None` for exact values.
    bound: Option<i64>,
}

impl<F: Field> LaurentSeries<F> {
    pub fn zero() -> Self {
        Self::polynomial(std::iter::empty())
    }

    pub fn one() -> Self {
        Self::monomial(F::one(), 0)
    }

    /// The series `x`.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: i64) -> Self {
        Self::polynomial([(k, c)])
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    /// Exact Laurent polynomial from `(exponent, coefficient)` pairs.
    /// Repeated exponents are summed.
    pub fn polynomial<I: IntoIterator<Item = (i64, F)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            accumulate(&mut coeffs, k, c);
        }
        LaurentSeries {
            coeffs,
            side: Side::Below,
            bound: None,
        }
    }

    /// Exact polynomial `c[0] + c[1] x + ...`.
    pub fn from_coefficients(c: &[F]) -> Self {
        Self::polynomial(c.iter().cloned().enumerate().map(|(k, c)| (k as i64, c)))
    }

    /// Non-exact series on `side` whose known region is cut at `bound`
    /// (exponents `< bound` below, `> bound` above). Terms outside the known
    /// region are dropped.
    pub fn truncated<I: IntoIterator<Item = (i64, F)>>(terms: I, side: Side, bound: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            if known_on(side, Some(bound), k) {
                accumulate(&mut coeffs, k, c);
            }
        }
        LaurentSeries {
            coeffs,
            side,
            bound: Some(bound),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn side_tag(&self) -> SideTag {
        match (self.bound, self.side) {
            (None, _) => SideTag::FiniteSupport,
            (Some(_), Side::Below) => SideTag::BoundedBelow,
            (Some(_), Side::Above) => SideTag::BoundedAbove,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.bound.is_none()
    }

    /// Precision cut; see [`LaurentSeries::truncated`].
    pub fn bound(&self) -> Option<i64> {
        self.bound
    }

    /// True only for the exact zero series.
    pub fn is_zero(&self) -> bool {
        self.is_exact() && self.coeffs.is_empty()
    }

    /// Exact monomial `c x^k`.
    pub fn as_monomial(&self) -> Option<(i64, &F)> {
        if self.is_exact() && self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn known_window(&self) -> KnownWindow {
        match (self.bound, self.side) {
            (None, _) => KnownWindow { lo: None, hi: None },
            (Some(b), Side::Below) => KnownWindow {
                lo: None,
                hi: Some(b - 1),
            },
            (Some(b), Side::Above) => KnownWindow {
                lo: Some(b + 1),
                hi: None,
            },
        }
    }

    pub fn is_known(&self, k: i64) -> bool {
        known_on(self.side, self.bound, k)
    }

    pub fn coeff(&self, k: i64) -> Result<F> {
        if !self.is_known(k) {
            return Err(Error::PrecisionInsufficient { exponent: k });
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(F::zero))
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &F)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Known coefficients `k0..k0+len` as a dense vector.
    pub fn dense(&self, k0: i64, len: usize) -> Result<Vec<F>> {
        (k0..k0 + len as i64).map(|k| self.coeff(k)).collect()
    }

    /// Reinterpret on `side`. Exact values move freely; a non-exact value
    /// must already be on `side`.
    pub fn viewed(&self, side: Side) -> Result<Self> {
        if self.is_exact() || self.side == side {
            let mut s = self.clone();
            s.side = side;
            Ok(s)
        } else {
            Err(Error::SideMismatch {
                wanted: side.name(),
            })
        }
    }

    pub fn order(&self) -> Result<Order> {
        self.order_on(self.side)
    }

    /// Order when viewed on `side`.
    pub fn order_on(&self, side: Side) -> Result<Order> {
        if !self.side_tag().admits(side) {
            return Err(Error::SideMismatch {
                wanted: side.name(),
            });
        }
        let k = match side {
            Side::Below => self.coeffs.keys().next(),
            Side::Above => self.coeffs.keys().next_back(),
        };
        match (k, self.bound) {
            (Some(&k), _) => Ok(Order::Finite(k)),
            (None, None) => Ok(Order::ZeroSeries),
            (None, Some(_)) => Err(Error::OrderIndeterminate),
        }
    }

    /// Finite order on `side`, with zero and indeterminate orders as errors.
    pub(crate) fn finite_order_on(&self, side: Side) -> Result<i64> {
        match self.order_on(side)? {
            Order::Finite(n) => Ok(n),
            Order::ZeroSeries => Err(Error::ZeroSeries),
        }
    }

    /// The substitution `x -> 1/x`. Flips the side, preserves products and
    /// is an involution.
    pub fn substitute_reciprocal(&self) -> Self {
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.clone())).collect(),
            side: self.side.flip(),
            bound: self.bound.map(|b| -b),
        }
    }

    /// Orientation helper: kernels are written for the bounded-below side.
    fn to_below(&self, side: Side) -> Self {
        match side {
            Side::Below => self.clone(),
            Side::Above => self.substitute_reciprocal(),
        }
    }

    fn oriented_to(self, side: Side) -> Self {
        match side {
            Side::Below => self,
            Side::Above => self.substitute_reciprocal(),
        }
    }

    /// Lower bound for the order of a bounded-below-oriented value. `None`
    /// for the exact zero series.
    fn low(&self) -> Option<i64> {
        self.coeffs.keys().next().copied().or(self.bound)
    }

    fn common_side(&self, other: &Self) -> Option<Side> {
        match (self.is_exact(), other.is_exact()) {
            (false, false) if self.side != other.side => None,
            (false, _) => Some(self.side),
            (true, false) => Some(other.side),
            (true, true) => Some(self.side),
        }
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect(),
            side: self.side,
            bound: self.bound,
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            let mut z = self.clone();
            z.coeffs.clear();
            return z;
        }
        LaurentSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (*k, c.clone() * s.clone()))
                .collect(),
            side: self.side,
            bound: self.bound,
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
            side: self.side,
            bound: self.bound.map(|b| b + k),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let side = self.common_side(other).ok_or(Error::SideIndeterminate)?;
        let bound = match (self.bound, other.bound) {
            (Some(a), Some(b)) => Some(match side {
                Side::Below => a.min(b),
                Side::Above => a.max(b),
            }),
            (a, b) => a.or(b),
        };
        let mut coeffs = BTreeMap::new();
        for (k, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if known_on(side, bound, *k) {
                accumulate(&mut coeffs, *k, c.clone());
            }
        }
        Ok(LaurentSeries {
            coeffs,
            side,
            bound,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Convolution product. Defined when both factors are on the same side
    /// or one of them is a Laurent polynomial.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let side = self
            .common_side(other)
            .ok_or(Error::UndefinedSeriesProduct)?;
        let a = self.to_below(side);
        let b = other.to_below(side);
        Ok(mul_below(&a, &b).oriented_to(side))
    }

    /// Multiplicative inverse on `side`. An exact non-monomial input is
    /// expanded to `prec` coefficients counted from the order; a non-exact
    /// input keeps its own count.
    pub fn recip(&self, side: Side, prec: usize) -> Result<Self> {
        let a = self.viewed(side)?.to_below(side);
        Ok(recip_below(&a, prec)?.oriented_to(side))
    }

    /// Integer power on `side`; negative exponents go through [`Self::recip`].
    pub fn pow(&self, j: i64, side: Side, prec: usize) -> Result<Self> {
        let base = self.viewed(side)?;
        if j == 0 {
            return Self::one().viewed(side);
        }
        let base = if j < 0 { base.recip(side, prec)? } else { base };
        let mut e = j.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul(&sq)?;
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// Reduce precision so nothing beyond `bound` is reported (exponents
    /// `>= bound` below, `<= bound` above). Never increases precision.
    pub fn with_precision(&self, bound: i64) -> Self {
        let side = self.side;
        let tighter = match (self.bound, side) {
            (None, _) => true,
            (Some(b), Side::Below) => bound < b,
            (Some(b), Side::Above) => bound > b,
        };
        if !tighter {
            return self.clone();
        }
        Self::truncated(
            self.coeffs.iter().map(|(k, c)| (*k, c.clone())),
            side,
            bound,
        )
    }

    /// Equality on the common known region. Values on opposite sides compare
    /// equal only when both are exact.
    pub fn eq_to_precision(&self, other: &Self) -> bool {
        let Some(side) = self.common_side(other) else {
            return false;
        };
        let a = self.to_below(side);
        let b = other.to_below(side);
        let limit = match (a.bound, b.bound) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        a.coeffs
            .keys()
            .chain(b.coeffs.keys())
            .filter(|k| limit.is_none_or(|l| **k < l))
            .all(|k| a.coeffs.get(k) == b.coeffs.get(k))
    }

    /// Number of known coefficients counted from the order, `None` when exact
    /// or when the order is indeterminate.
    pub fn known_count(&self) -> Option<usize> {
        let b = self.bound?;
        let n = self.order().ok()?.finite()?;
        Some(match self.side {
            Side::Below => (b - n) as usize,
            Side::Above => (n - b) as usize,
        })
    }

    pub fn compose(&self, omega: &Self, prec: usize) -> Result<Self> {
        compose::compose(self, omega, prec)
    }

    pub fn compositional_inverse(&self, prec: usize) -> Result<Self> {
        compose::compositional_inverse(self, prec)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "side": match self.side_tag() {
                SideTag::BoundedBelow => "below",
                SideTag::BoundedAbove => "above",
                SideTag::FiniteSupport => "finite",
            },
            "exact": self.is_exact(),
            "bound": self.bound,
            "terms": self
                .coeffs
                .iter()
                .map(|(k, c)| serde_json::json!([k, c.to_text()]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Json(m.to_string());
        let side = match v["side"].as_str() {
            Some("below") | Some("finite") => Side::Below,
            Some("above") => Side::Above,
            _ => return Err(bad("missing or invalid `side`")),
        };
        let mut terms = Vec::new();
        for t in v["terms"]
            .as_array()
            .ok_or_else(|| bad("missing `terms`"))?
        {
            let k = t[0].as_i64().ok_or_else(|| bad("term exponent"))?;
            let c = F::parse_text(t[1].as_str().ok_or_else(|| bad("term coefficient"))?)?;
            terms.push((k, c));
        }
        Ok(match v["bound"].as_i64() {
            Some(b) => Self::truncated(terms, side, b),
            None => Self::polynomial(terms).viewed(side)?,
        })
    }
}

fn known_on(side: Side, bound: Option<i64>, k: i64) -> bool {
    match (bound, side) {
        (None, _) => true,
        (Some(b), Side::Below) => k < b,
        (Some(b), Side::Above) => k > b,
    }
}

fn accumulate<F: Field>(coeffs: &mut BTreeMap<i64, F>, k: i64, c: F) {
    if c.is_zero() {
        return;
    }
    match coeffs.remove(&k) {
        Some(old) => {
            let s = old + c;
            if !s.is_zero() {
                coeffs.insert(k, s);
            }
        }
        None => {
            coeffs.insert(k, c);
        }
    }
}

/// Product of two bounded-below-oriented values.
fn mul_below<F: Field>(a: &LaurentSeries<F>, b: &LaurentSeries<F>) -> LaurentSeries<F> {
    let (la, lb) = match (a.low(), b.low()) {
        (Some(x), Some(y)) => (x, y),
        // an exact zero factor
        _ => return LaurentSeries::zero(),
    };
    let bound = match (a.bound, b.bound) {
        (None, None) => None,
        (Some(ba), None) => Some(ba + lb),
        (None, Some(bb)) => Some(bb + la),
        (Some(ba), Some(bb)) => Some((ba + lb).min(bb + la)),
    };
    let mut coeffs = BTreeMap::new();
    for (i, ai) in &a.coeffs {
        for (j, bj) in &b.coeffs {
            let k = i + j;
            if let Some(bd) = bound {
                if k >= bd {
                    break;
                }
            }
            accumulate(&mut coeffs, k, ai.clone() * bj.clone());
        }
    }
    LaurentSeries {
        coeffs,
        side: Side::Below,
        bound,
    }
}

fn recip_below<F: Field>(a: &LaurentSeries<F>, prec: usize) -> Result<LaurentSeries<F>> {
    let m = a.finite_order_on(Side::Below)?;
    if let Some((k, c)) = a.as_monomial() {
        return Ok(LaurentSeries::monomial(c.try_recip()?, -k));
    }
    let n = match a.bound {
        Some(b) => (b - m) as usize,
        None => prec.max(1),
    };
    let u = a.dense(m, n.min(dense_len(a, m)))?;
    let inv = dense::inv_trunc(&u, n)?;
    Ok(LaurentSeries::truncated(
        inv.into_iter().enumerate().map(|(t, c)| (t as i64 - m, c)),
        Side::Below,
        n as i64 - m,
    ))
}

/// Length of the stored dense tail of a bounded-below value starting at `m`.
fn dense_len<F: Field>(a: &LaurentSeries<F>, m: i64) -> usize {
    match a.bound {
        Some(b) => (b - m) as usize,
        None => a
            .coeffs
            .keys()
            .next_back()
            .map_or(0, |&k| (k - m + 1) as usize),
    }
}

impl<F: Field> fmt::Display for LaurentSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, &F)> = match self.side_tag() {
            SideTag::BoundedAbove => self.terms().rev().collect(),
            _ => self.terms().collect(),
        };
        let mut first = true;
        for (k, c) in terms {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            write_term(f, &mag, k)?;
        }
        if let Some(b) = self.bound {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "O({})", power_text(b))?;
        } else if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn power_text(k: i64) -> String {
    match k {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{k}"),
    }
}

fn write_term<F: Field>(f: &mut fmt::Formatter<'_>, mag: &F, k: i64) -> fmt::Result {
    if k == 0 {
        write!(f, "{mag}")
    } else if mag.is_one() {
        f.write_str(&power_text(k))
    } else {
        write!(f, "{mag}*{}", power_text(k))
    }
}
