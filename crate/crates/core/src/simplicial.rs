//! f-vectors, h-vectors and the Dehn–Sommerville relations, phrased through
//! Riordan matrices.
//!
//! The extended f-polynomial `f_{-1} + f_0 x + ... + f_d x^{d+1}` of a
//! `d`-dimensional complex is a Laurent polynomial supported on `[0, d+1]`.
//! Its h-polynomial is `(1-x)^{d+1} f(x/(1-x))`, the image of `f` under
//! `R_{(1-x)^{d+1}, x/(1-x)}`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::riordan::RiordanMatrix;
use crate::series::{parse, LaurentSeries, Side};
use crate::window::{oracle_product, MatrixWindow};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector<F = Rational> {
    pub d: i64,
    /// `f_{-1}, f_0, ..., f_d`.
    pub f: Vec<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector<F = Rational> {
    pub d: i64,
    /// `h_0, ..., h_{d+1}`.
    pub h: Vec<F>,
}

impl<F: Field> FVector<F> {
    /// From `f_{-1}, ..., f_d`; the dimension is `len - 2`.
    pub fn new(f: Vec<F>) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "an f-vector needs at least the entry f_-1".into(),
            });
        }
        Ok(FVector {
            d: f.len() as i64 - 2,
            f,
        })
    }

    /// Comma-separated rationals, leading entry `f_{-1}`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut f = Vec::new();
        let mut pos = 0;
        for part in text.split(',') {
            f.push(F::parse_text(part).map_err(|_| Error::Parse {
                position: pos,
                message: format!("invalid entry {:?}", part.trim()),
            })?);
            pos += part.len() + 1;
        }
        Self::new(f)
    }

    /// `f_{-1}` differs from 1, so the vector cannot come from a nonempty
    /// complex. Only advisory.
    pub fn warning(&self) -> Option<String> {
        (!self.f[0].is_one()).then(|| format!("f_-1 = {} (expected 1)", self.f[0]))
    }

    pub fn polynomial(&self) -> LaurentSeries<F> {
        LaurentSeries::from_coefficients(&self.f)
    }

    /// `f_k` for `k = -1..=d`.
    pub fn get(&self, k: i64) -> &F {
        &self.f[(k + 1) as usize]
    }
}

impl<F: Field> HVector<F> {
    pub fn new(h: Vec<F>) -> Result<Self> {
        if h.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "an h-vector needs at least one entry".into(),
            });
        }
        Ok(HVector {
            d: h.len() as i64 - 2,
            h,
        })
    }

    pub fn polynomial(&self) -> LaurentSeries<F> {
        LaurentSeries::from_coefficients(&self.h)
    }
}

fn int<F: Field>(v: i64) -> F {
    F::from_i64(v)
}

/// `(1 + s x)^n` exactly.
fn binomial_power<F: Field>(s: i64, n: i64) -> LaurentSeries<F> {
    let row = pascal_row(n as usize);
    LaurentSeries::polynomial(row.iter().enumerate().map(|(k, c)| {
        let sign = if s < 0 && k % 2 == 1 { -1 } else { 1 };
        (k as i64, int::<F>(sign * c))
    }))
}

/// `x/(1 + s x)` known through `x^{n}`.
fn shifted_geometric<F: Field>(s: i64, n: i64) -> LaurentSeries<F> {
    let mut c = 1i64;
    let mut terms = Vec::new();
    for k in 1..=n {
        terms.push((k, int::<F>(c)));
        c *= -s;
    }
    LaurentSeries::truncated(terms, Side::Below, n + 1)
}

/// `C(n, 0..=n)` by Pascal's rule.
fn pascal_row(n: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..n {
        let mut next = vec![1i64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row
}

/// `C(n, k)` for all `n, k <= size`.
fn pascal(size: usize) -> Vec<Vec<i64>> {
    (0..=size)
        .map(|n| {
            let mut r = pascal_row(n);
            r.resize(size + 1, 0);
            r
        })
        .collect()
}

/// `R_{(1-x)^{d+1}, x/(1-x)}`, sending f to h.
pub fn h_matrix<F: Field>(d: i64) -> RiordanMatrix<F> {
    RiordanMatrix::new(binomial_power(-1, d + 1), shifted_geometric(-1, d + 2))
        .expect("valid pair")
        .with_precision((d + 2) as usize)
}

/// `R_{(1+x)^{d+1}, x/(1+x)}`, sending h to f.
pub fn f_matrix<F: Field>(d: i64) -> RiordanMatrix<F> {
    RiordanMatrix::new(binomial_power(1, d + 1), shifted_geometric(1, d + 2))
        .expect("valid pair")
        .with_precision((d + 2) as usize)
}

/// `R_{x^{d+1}, 1/x}`: fixes exactly the palindromic polynomials of degree
/// at most `d + 1`.
pub fn reversal_matrix<F: Field>(d: i64) -> RiordanMatrix<F> {
    RiordanMatrix::new(
        LaurentSeries::monomial(F::one(), d + 1),
        LaurentSeries::monomial(F::one(), -1),
    )
    .expect("valid pair")
}

/// `R_{(-1)^{d+1}, -(1+x)}`: fixes exactly the f-vectors satisfying the
/// Dehn–Sommerville relations.
pub fn ds_matrix<F: Field>(d: i64) -> RiordanMatrix<F> {
    let sign = if (d + 1) % 2 == 0 { 1 } else { -1 };
    RiordanMatrix::new(
        LaurentSeries::constant(int(sign)),
        LaurentSeries::from_coefficients(&[int(-1), int(-1)]),
    )
    .expect("valid pair")
}

fn coefficients<F: Field>(s: &LaurentSeries<F>, n: usize) -> Result<Vec<F>> {
    s.dense(0, n)
}

pub fn f_to_h<F: Field>(fv: &FVector<F>) -> Result<HVector<F>> {
    let h = h_matrix::<F>(fv.d).apply(&fv.polynomial())?;
    HVector::new(coefficients(&h, fv.f.len())?)
}

pub fn h_to_f<F: Field>(hv: &HVector<F>) -> Result<FVector<F>> {
    let f = f_matrix::<F>(hv.d).apply(&hv.polynomial())?;
    FVector::new(coefficients(&f, hv.h.len())?)
}

pub fn is_palindromic<F: Field>(hv: &HVector<F>) -> bool {
    hv.h.iter().eq(hv.h.iter().rev())
}

/// `R_{x^{d+1}, 1/x} h = h`.
pub fn is_palindromic_by_matrix<F: Field>(hv: &HVector<F>) -> Result<bool> {
    let image = reversal_matrix::<F>(hv.d).apply(&hv.polynomial())?;
    Ok(image.eq_to_precision(&hv.polynomial()))
}

/// `Σ_{j=k}^d (-1)^j C(j+1, k+1) f_j - (-1)^d f_k` for `k = -1..=d`.
pub fn dehn_sommerville_residuals<F: Field>(fv: &FVector<F>) -> Vec<F> {
    let d = fv.d;
    let c = pascal((d + 1) as usize);
    let sign = |e: i64| -> F { int(if e.rem_euclid(2) == 0 { 1 } else { -1 }) };
    (-1..=d)
        .map(|k| {
            let mut acc = F::zero();
            for j in k..=d {
                let b = c[(j + 1) as usize][(k + 1) as usize];
                acc = acc + sign(j) * int::<F>(b) * fv.get(j).clone();
            }
            acc - sign(d) * fv.get(k).clone()
        })
        .collect()
}

/// The same residuals read off `R_{(-1)^{d+1}, -(1+x)} f - f`.
pub fn dehn_sommerville_residuals_by_matrix<F: Field>(fv: &FVector<F>) -> Result<Vec<F>> {
    let g = ds_matrix::<F>(fv.d).apply(&fv.polynomial())?;
    let sign: F = int(if fv.d.rem_euclid(2) == 0 { 1 } else { -1 });
    (-1..=fv.d)
        .map(|k| Ok(sign.clone() * (g.coeff(k + 1)? - fv.get(k).clone())))
        .collect()
}

#[derive(Clone, Debug)]
pub struct ProofStep<F = Rational> {
    pub claim: String,
    pub matrix: String,
    pub window: MatrixWindow<F>,
    pub checks: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ProofTrace<F = Rational> {
    pub d: i64,
    pub steps: Vec<ProofStep<F>>,
}

impl<F: Field> ProofTrace<F> {
    pub fn render_text(&self) -> String {
        let mut out = format!("proof chain for d = {}\n", self.d);
        for (n, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "step {}: {}\n  matrix {}\n",
                n + 1,
                s.claim,
                s.matrix
            ));
            for c in &s.checks {
                out.push_str(&format!("  ok: {c}\n"));
            }
            for line in s.window.render_text().lines() {
                out.push_str("    ");
                out.push_str(line);
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "steps": self.steps.iter().map(|s| json!({
                "claim": s.claim,
                "matrix": s.matrix,
                "checks": s.checks,
                "window": s.window.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn ensure(ok: bool, what: &str) -> Result<String> {
    if ok {
        Ok(what.to_string())
    } else {
        Err(Error::CheckFailed(what.to_string()))
    }
}

const CHAIN_PREC: usize = 40;

/// Re-derive the matrix identity chain turning palindromicity of h into the
/// Dehn–Sommerville relations on f, checking every step two ways.
pub fn verify_theorem_chain<F: Field>(d: i64) -> Result<ProofTrace<F>> {
    if !(-1..=8).contains(&d) {
        return Err(Error::CheckFailed(format!("dimension {d} outside -1..=8")));
    }
    let n = d + 1;
    let rows = -5..=4;
    let cols = -5..=4;
    let mut steps = Vec::new();

    let rev = reversal_matrix::<F>(d);
    let hm = RiordanMatrix::new(
        binomial_power(-1, n),
        shifted_geometric(-1, CHAIN_PREC as i64),
    )?
    .with_precision(CHAIN_PREC);

    // step 1: R_{x^{d+1},1/x} R_{(1-x)^{d+1},x/(1-x)} = R_{(x-1)^{d+1},1/(x-1)}
    let p = rev.matmul(&hm)?;
    let want_alpha: LaurentSeries<F> = parse(&format!("(x-1)^{n}"), Side::Above, CHAIN_PREC)?;
    let want_omega: LaurentSeries<F> = parse("1/(x-1)", Side::Above, CHAIN_PREC)?;
    let mut checks = vec![
        ensure(p.classes()?.to_string() == "U-", "product class is U-")?,
        ensure(p.alpha() == &want_alpha, "alpha = (x-1)^(d+1) exactly")?,
        ensure(
            p.omega().eq_to_precision(&want_omega),
            "omega = 1/(x-1) expanded in 1/x",
        )?,
    ];
    let pw = MatrixWindow::extract(&p, rows.clone(), cols.clone())?;
    let direct = RiordanMatrix::on_side(want_alpha, want_omega, Side::Above)?;
    checks.push(ensure(
        pw == MatrixWindow::extract(&direct, rows.clone(), cols.clone())?,
        "10x10 window equals the directly built matrix",
    )?);
    checks.push(ensure(
        pw == oracle_product(&rev, &hm, rows.clone(), cols.clone())?,
        "10x10 window equals the brute-force product",
    )?);
    steps.push(ProofStep {
        claim: "palindromic form times the h-transform, by the product rule".into(),
        matrix: p.descriptor(),
        window: pw,
        checks,
    });

    // step 2: the inverse of the h-transform
    let inv = hm.inverse()?;
    let fm = f_matrix::<F>(d);
    let mut checks = vec![
        ensure(
            inv.alpha().eq_to_precision(fm.alpha()),
            "inverse alpha = (1+x)^(d+1)",
        )?,
        ensure(
            inv.omega().eq_to_precision(fm.omega()),
            "inverse omega = x/(1+x)",
        )?,
    ];
    let id = RiordanMatrix::<F>::identity();
    let iw = oracle_product(&inv, &hm, rows.clone(), cols.clone())?;
    checks.push(ensure(
        iw == MatrixWindow::extract(&id, rows.clone(), cols.clone())?,
        "inverse times h-transform is I on a 10x10 window",
    )?);
    let pr = inv.matmul(&hm)?;
    checks.push(ensure(
        pr.alpha().eq_to_precision(&LaurentSeries::one())
            && pr.omega().eq_to_precision(&LaurentSeries::x()),
        "product rule gives R_{1,x}",
    )?);
    steps.push(ProofStep {
        claim: "left inverse of the h-transform".into(),
        matrix: inv.descriptor(),
        window: MatrixWindow::extract(&inv, rows.clone(), cols.clone())?,
        checks,
    });

    // step 3: inverse times the product. The class pair L+ x U- has no
    // general product, so check the equivalent P = M F on the columns
    // that carry an f-vector, where F has finite columns.
    let ds = ds_matrix::<F>(d);
    let fcols = 0..=n;
    let frows = -3..=n + 3;
    let lhs = MatrixWindow::extract(&p, frows.clone(), fcols.clone())?;
    let rhs = oracle_product(&hm, &ds, frows.clone(), fcols.clone())?;
    let checks = vec![ensure(
        lhs == rhs,
        "product equals h-transform times the final matrix on columns 0..=d+1",
    )?];
    steps.push(ProofStep {
        claim: "multiply by the inverse on the f-vector columns".into(),
        matrix: ds.descriptor(),
        window: lhs,
        checks,
    });

    // step 4: signed binomials (-1)^{d+1+c} C(c, r)
    let fw = MatrixWindow::extract(&ds, 0..=n, 0..=n)?;
    let c = pascal(n.max(0) as usize);
    let pattern: Vec<Vec<F>> = (0..=n)
        .map(|r| {
            (0..=n)
                .map(|col| {
                    let sign = if (n + col) % 2 == 0 { 1 } else { -1 };
                    int(sign * c[col as usize][r as usize])
                })
                .collect()
        })
        .collect();
    let checks = vec![ensure(
        fw.entries == pattern,
        "final matrix entries are (-1)^(d+1+c) C(c, r)",
    )?];
    steps.push(ProofStep {
        claim: "final matrix fixing f".into(),
        matrix: ds.descriptor(),
        window: fw,
        checks,
    });

    Ok(ProofTrace { d, steps })
}

/// Report used by the command line front end.
pub fn report<F: Field>(fv: &FVector<F>, trace: bool) -> Result<Value> {
    let h = f_to_h(fv)?;
    let residuals = dehn_sommerville_residuals(fv);
    let text = |v: &[F]| v.iter().map(|x| x.to_text()).collect::<Vec<_>>();
    let mut out = json!({
        "d": fv.d,
        "f": text(&fv.f),
        "h": text(&h.h),
        "palindromic": is_palindromic(&h),
        "residuals": text(&residuals),
    });
    if trace {
        out["proof_trace"] = verify_theorem_chain::<F>(fv.d)?.to_json();
    }
    Ok(out)
}
