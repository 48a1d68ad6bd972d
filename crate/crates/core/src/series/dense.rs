//! Dense truncated power series kernels.
//!
//! A `&[F]` here holds the coefficients of `x^0, x^1, ...`. A length bound
//! `n` keeps only the first `n` coefficients; `None` means the inputs are
//! polynomials and the result is computed in full.

use crate::error::Result;
use crate::field::Field;

pub(crate) fn mul_trunc<F: Field>(a: &[F], b: &[F], n: Option<usize>) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let full = a.len() + b.len() - 1;
    let len = n.map_or(full, |n| n.min(full));
    let mut out = vec![F::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].clone() + ai.clone() * bj.clone();
        }
    }
    out
}

/// First `n` coefficients of `1/u`. Requires `u[0] != 0`.
pub(crate) fn inv_trunc<F: Field>(u: &[F], n: usize) -> Result<Vec<F>> {
    let inv0 = u[0].try_recip()?;
    let mut c: Vec<F> = Vec::with_capacity(n);
    if n == 0 {
        return Ok(c);
    }
    c.push(inv0.clone());
    for m in 1..n {
        let mut acc = F::zero();
        for t in 1..=m.min(u.len() - 1) {
            acc = acc + u[t].clone() * c[m - t].clone();
        }
        c.push(-(inv0.clone() * acc));
    }
    Ok(c)
}

pub(crate) fn pow_trunc<F: Field>(u: &[F], mut e: u64, n: Option<usize>) -> Vec<F> {
    let mut acc = vec![F::one()];
    if let Some(n) = n {
        acc.truncate(n);
    }
    let mut base = match n {
        Some(n) => u[..u.len().min(n)].to_vec(),
        None => u.to_vec(),
    };
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_trunc(&acc, &base, n);
        }
        e >>= 1;
        if e > 0 {
            base = mul_trunc(&base, &base, n);
        }
    }
    acc
}
