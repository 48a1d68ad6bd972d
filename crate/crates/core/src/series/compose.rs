//! Composition `χ∘ω = Σ χ_k ω^k` and compositional inversion.
//!
//! Only the bounded-below case with `ord ω ≥ 1` has a kernel. The three other
//! infinite cases are reduced to it with `x -> 1/x`:
//!
//! * ω bounded above: `ω = ω̃∘(1/x)` with `ω̃` bounded below, so
//!   `χ∘ω = (χ∘ω̃)∘(1/x)`;
//! * χ bounded above: `χ = χ̃∘(1/x)`, so `χ∘ω = χ̃∘(1/ω)`.
//!
//! A Laurent polynomial χ is composed directly as a finite sum of powers.

use super::dense::{inv_trunc, mul_trunc, pow_trunc};
use super::{LaurentSeries, Side};
use crate::error::{Error, Result};
use crate::field::Field;

type S<F> = LaurentSeries<F>;

/// The four infinite composition cases plus the finite-support one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompositionCase {
    /// ω bounded below of positive order, χ bounded below.
    A,
    /// ω bounded above of negative order, χ bounded below.
    B,
    /// ω bounded below of negative order, χ bounded above.
    C,
    /// ω bounded above of positive order, χ bounded above.
    D,
    /// χ a Laurent polynomial.
    E,
}

impl CompositionCase {
    pub fn letter(self) -> char {
        match self {
            CompositionCase::A => 'a',
            CompositionCase::B => 'b',
            CompositionCase::C => 'c',
            CompositionCase::D => 'd',
            CompositionCase::E => 'e',
        }
    }
}

pub(crate) fn compose<F: Field>(chi: &S<F>, omega: &S<F>, prec: usize) -> Result<S<F>> {
    compose_in(chi, omega, &omega_sides(omega), prec).map(|(s, _)| s)
}

impl<F: Field> LaurentSeries<F> {
    /// Which case a composition `self∘omega` falls under.
    pub fn composition_case(&self, omega: &Self) -> Result<CompositionCase> {
        select(self, omega, &omega_sides(omega)).map(|(c, _)| c)
    }
}

fn omega_sides<F: Field>(omega: &S<F>) -> Vec<Side> {
    if omega.is_exact() {
        vec![omega.side, omega.side.flip()]
    } else {
        vec![omega.side]
    }
}

fn select<F: Field>(chi: &S<F>, omega: &S<F>, sides: &[Side]) -> Result<(CompositionCase, Side)> {
    if omega.is_zero() {
        return Err(Error::CompositionUndefined(
            "omega is the zero series".into(),
        ));
    }
    let sides: Vec<Side> = sides
        .iter()
        .copied()
        .filter(|s| omega.side_tag().admits(*s))
        .collect();
    if sides.is_empty() {
        return Err(Error::SideMismatch {
            wanted: omega.side.flip().name(),
        });
    }
    if chi.is_exact() {
        return Ok((CompositionCase::E, sides[0]));
    }
    let mut zero_order = false;
    let mut seen = Vec::new();
    for &s in &sides {
        let n = omega.finite_order_on(s)?;
        let case = match (s, n.signum(), chi.side) {
            (Side::Below, 1, Side::Below) => Some(CompositionCase::A),
            (Side::Above, -1, Side::Below) => Some(CompositionCase::B),
            (Side::Below, -1, Side::Above) => Some(CompositionCase::C),
            (Side::Above, 1, Side::Above) => Some(CompositionCase::D),
            _ => None,
        };
        if let Some(c) = case {
            return Ok((c, s));
        }
        zero_order |= n == 0;
        seen.push(format!("bounded-{} of order {n}", s.name()));
    }
    if zero_order {
        return Err(Error::CompositionUndefined(
            "omega has order 0, which only a Laurent polynomial chi admits".into(),
        ));
    }
    Err(Error::CompositionUndefined(format!(
        "no composition case applies to omega {} with chi {}",
        seen.join(" / "),
        chi.side_tag().name()
    )))
}

/// Composition with ω restricted to the given views, in order of preference.
pub(crate) fn compose_in<F: Field>(
    chi: &S<F>,
    omega: &S<F>,
    sides: &[Side],
    prec: usize,
) -> Result<(S<F>, CompositionCase)> {
    let (case, s) = select(chi, omega, sides)?;
    let w = omega.viewed(s)?;
    let out = match case {
        CompositionCase::A => kernel(chi, &w),
        CompositionCase::B => {
            kernel(chi, &w.substitute_reciprocal()).map(|r| r.substitute_reciprocal())
        }
        CompositionCase::C => {
            let c = chi.substitute_reciprocal();
            let v = w.recip(Side::Below, recip_count(&c, &w, s, prec)?)?;
            kernel(&c, &v)
        }
        CompositionCase::D => {
            let c = chi.substitute_reciprocal();
            let v = w
                .substitute_reciprocal()
                .recip(Side::Below, recip_count(&c, &w, s, prec)?)?;
            kernel(&c, &v).map(|r| r.substitute_reciprocal())
        }
        CompositionCase::E => finite_sum(chi, &w, prec),
    }?;
    Ok((out, case))
}

/// Expansion count for `1/ω` when ω is exact, large enough that the kernel
/// is limited by χ alone.
fn recip_count<F: Field>(chi: &S<F>, omega: &S<F>, s: Side, prec: usize) -> Result<usize> {
    let p = omega.finite_order_on(s)?.abs();
    Ok(match (chi.bound, chi.low()) {
        (Some(b), Some(k)) => prec.max((p * (b - k)).max(0) as usize),
        _ => prec,
    })
}

fn finite_sum<F: Field>(chi: &S<F>, omega: &S<F>, prec: usize) -> Result<S<F>> {
    let side = omega.side;
    let mut acc = S::zero().viewed(side)?;
    for (k, c) in chi.terms() {
        let term = omega.pow(k, side, prec)?.scale(c);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `χ∘ω` for bounded-below χ and bounded-below ω of order `p ≥ 1`.
///
/// Writing `ω = x^p u` with `u(0) != 0`, term k is `χ_k x^{pk} u^k`.
/// Unknown `χ_k` (k ≥ b_χ) only reach exponents `≥ p b_χ`; a non-exact ω
/// determines `u^k` to the same count as `u`, so term `k_min` limits the rest.
fn kernel<F: Field>(chi: &S<F>, omega: &S<F>) -> Result<S<F>> {
    let p = omega.finite_order_on(Side::Below)?;
    debug_assert!(p >= 1);
    let Some(kmin) = chi.low() else {
        return Ok(S::zero());
    };

    let u: Vec<F> = match omega.bound {
        Some(b) => omega.dense(p, (b - p) as usize)?,
        None => {
            let top = *omega.coeffs.keys().next_back().expect("nonzero omega");
            omega.dense(p, (top - p + 1) as usize)?
        }
    };

    let mut bound: Option<i64> = None;
    let mut limit = |b: i64| bound = Some(bound.map_or(b, |x: i64| x.min(b)));
    if let Some(bc) = chi.bound {
        limit(p * bc);
    }
    if let Some(bw) = omega.bound {
        limit(p * kmin + (bw - p));
    }
    // an exact χ goes through the finite sum, so 1/u never needs an open length
    debug_assert!(bound.is_some() || kmin >= 0 || u.len() == 1);

    let kmax = match bound {
        Some(b) => (b - 1).div_euclid(p),
        None => *chi.coeffs.keys().next_back().expect("nonzero chi"),
    };
    let len = |k: i64| bound.map(|b| (b - p * k).max(0) as usize);

    let mut power = if kmin >= 0 {
        pow_trunc(&u, kmin as u64, len(kmin))
    } else {
        let inv = inv_trunc(&u, len(kmin).unwrap_or(1))?;
        pow_trunc(&inv, kmin.unsigned_abs(), len(kmin))
    };

    let mut terms = Vec::new();
    for k in kmin..=kmax {
        if let Some(c) = chi.coeffs.get(&k) {
            for (t, v) in power.iter().enumerate() {
                if !v.is_zero() {
                    terms.push((p * k + t as i64, c.clone() * v.clone()));
                }
            }
        }
        if k < kmax {
            power = mul_trunc(&power, &u, len(k + 1));
        }
    }
    Ok(match bound {
        Some(b) => S::truncated(terms, Side::Below, b),
        None => S::polynomial(terms),
    })
}

pub(crate) fn compositional_inverse<F: Field>(omega: &S<F>, prec: usize) -> Result<S<F>> {
    let sides = omega_sides(omega);
    let mut first = None;
    for &s in &sides {
        let n = omega.finite_order_on(s)?;
        first.get_or_insert(n);
        let w = omega.viewed(s)?;
        let rev = match (s, n) {
            (Side::Below, 1) => reversion(&w, prec)?,
            (Side::Below, -1) => {
                reversion(&w.recip(Side::Below, prec)?, prec)?.substitute_reciprocal()
            }
            (Side::Above, -1) => {
                reversion(&w.substitute_reciprocal(), prec)?.recip(Side::Below, prec)?
            }
            (Side::Above, 1) => {
                let v = w.substitute_reciprocal().recip(Side::Below, prec)?;
                reversion(&v, prec)?
                    .recip(Side::Below, prec)?
                    .substitute_reciprocal()
            }
            _ => continue,
        };
        return Ok(rev);
    }
    Err(Error::OrderNotUnit {
        order: first.expect("at least one side"),
    })
}

/// Inverse of a bounded-below ω of order 1, by back-substitution on
/// `Σ_k χ_k ω^k = x`, one coefficient at a time.
fn reversion<F: Field>(omega: &S<F>, prec: usize) -> Result<S<F>> {
    debug_assert_eq!(omega.finite_order_on(Side::Below).ok(), Some(1));
    if let Some((_, c)) = omega.as_monomial() {
        return Ok(S::monomial(c.try_recip()?, 1));
    }
    let n = match omega.bound {
        Some(b) => (b - 1) as usize,
        None => prec.max(1),
    };
    // u = ω / x, read to n coefficients (zeros past an exact tail)
    let u: Vec<F> = (0..n as i64)
        .map(|t| omega.coeff(1 + t))
        .collect::<Result<_>>()?;
    let lead_inv = u[0].try_recip()?;

    // powers[k] = u^k truncated to n coefficients
    let mut powers: Vec<Vec<F>> = vec![vec![F::one()]];
    let mut chi: Vec<F> = vec![F::zero(); n + 1];
    let mut lead_pow_inv = F::one();
    for m in 1..=n {
        powers.push(mul_trunc(&powers[m - 1], &u, Some(n)));
        lead_pow_inv = lead_pow_inv * lead_inv.clone();
        let mut acc = if m == 1 { F::one() } else { F::zero() };
        for k in 1..m {
            if let Some(v) = powers[k].get(m - k) {
                acc = acc - chi[k].clone() * v.clone();
            }
        }
        chi[m] = acc * lead_pow_inv.clone();
    }
    Ok(S::truncated(
        chi.into_iter().enumerate().map(|(k, c)| (k as i64, c)),
        Side::Below,
        n as i64 + 1,
    ))
}
