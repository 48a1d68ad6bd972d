#![allow(dead_code)]

use std::ops::RangeInclusive;

use biriordan::{Field, LaurentSeries, Rational, RiordanMatrix, Side};
use num_traits::Zero;
use proptest::prelude::*;

pub type S = LaurentSeries<Rational>;
pub type M = RiordanMatrix<Rational>;

pub fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q(n) / q(d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |c| !c.is_zero())
}

pub fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Below), Just(Side::Above)]
}

/// Non-exact series on `side`: order from `orders`, `known` coefficients.
pub fn series_on(
    side: Side,
    orders: RangeInclusive<i64>,
    known: usize,
) -> impl Strategy<Value = S> {
    (
        orders,
        nonzero_rational(),
        prop::collection::vec(rational(), known - 1),
    )
        .prop_map(move |(v, lead, rest)| {
            let s = match side {
                Side::Below => 1,
                Side::Above => -1,
            };
            let terms = std::iter::once(lead)
                .chain(rest)
                .enumerate()
                .map(|(t, c)| (v + s * t as i64, c))
                .collect::<Vec<_>>();
            S::truncated(terms, side, v + s * known as i64)
        })
}

pub fn polynomial(span: RangeInclusive<i64>) -> impl Strategy<Value = S> {
    let (lo, n) = (*span.start(), (span.end() - span.start() + 1) as usize);
    prop::collection::vec(rational(), n)
        .prop_map(move |c| {
            S::polynomial(c.into_iter().enumerate().map(|(t, c)| (lo + t as i64, c)))
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Every coefficient `short` claims to know in `lo..hi` is known to `long`
/// with the same value.
pub fn refines(short: &S, long: &S, lo: i64, hi: i64) -> bool {
    (lo..hi)
        .filter(|&k| short.is_known(k))
        .all(|k| long.is_known(k) && short.coeff(k).unwrap() == long.coeff(k).unwrap())
}

/// Equal on the common known region and that region is nonempty around
/// `from`.
pub fn agree(a: &S, b: &S, from: i64) -> bool {
    a.eq_to_precision(b) && (a.is_known(from) && b.is_known(from))
}
