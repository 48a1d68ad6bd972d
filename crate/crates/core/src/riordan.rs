//! Implicit bi-infinite Riordan matrices.
//!
//! `R_{α,ω}` has column `j` equal to the coefficient vector of `α·ω^j` for
//! every integer `j`. Nothing is stored beyond the pair `(α, ω)`; columns and
//! entries are computed on demand. Toeplitz matrices are `A_α = R_{α,x}`,
//! Lagrange matrices are `B_ω = R_{1,ω}` and `J = B_{1/x}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::series::{compose_in, LaurentSeries, Side, DEFAULT_PRECISION};
use crate::window::ColumnSupport;

/// Echelon class of a bi-infinite matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EchelonClass {
    LPlus,
    LMinus,
    UPlus,
    UMinus,
}

impl EchelonClass {
    /// Tie-break order used when several product cells apply.
    pub const ALL: [EchelonClass; 4] = [
        EchelonClass::LPlus,
        EchelonClass::LMinus,
        EchelonClass::UPlus,
        EchelonClass::UMinus,
    ];

    /// Side on which ω is expanded for a matrix of this class.
    pub fn side(self) -> Side {
        match self {
            EchelonClass::LPlus | EchelonClass::LMinus => Side::Below,
            EchelonClass::UPlus | EchelonClass::UMinus => Side::Above,
        }
    }

    /// Class of `B_ω` for ω on `side` with nonzero order `n`.
    pub fn from_order(side: Side, n: i64) -> Option<EchelonClass> {
        match (side, n.signum()) {
            (Side::Below, 1) => Some(EchelonClass::LPlus),
            (Side::Below, -1) => Some(EchelonClass::LMinus),
            (Side::Above, 1) => Some(EchelonClass::UPlus),
            (Side::Above, -1) => Some(EchelonClass::UMinus),
            _ => None,
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for EchelonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EchelonClass::LPlus => "L+",
            EchelonClass::LMinus => "L-",
            EchelonClass::UPlus => "U+",
            EchelonClass::UMinus => "U-",
        })
    }
}

/// Class of `M N` for `M` in `left` and `N` in `right`, or `None` when the
/// product is not defined in general.
pub fn product_class(left: EchelonClass, right: EchelonClass) -> Option<EchelonClass> {
    use EchelonClass::*;
    match (left, right) {
        (LPlus, LPlus) => Some(LPlus),
        (LPlus, LMinus) => Some(LMinus),
        (LMinus, UPlus) => Some(LMinus),
        (LMinus, UMinus) => Some(LPlus),
        (UPlus, UPlus) => Some(UPlus),
        (UPlus, UMinus) => Some(UMinus),
        (UMinus, LPlus) => Some(UMinus),
        (UMinus, LMinus) => Some(UPlus),
        _ => None,
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EchelonClassSet(u8);

impl EchelonClassSet {
    pub fn empty() -> Self {
        EchelonClassSet(0)
    }

    pub fn single(c: EchelonClass) -> Self {
        EchelonClassSet(c.bit())
    }

    pub fn insert(&mut self, c: EchelonClass) {
        self.0 |= c.bit();
    }

    pub fn contains(&self, c: EchelonClass) -> bool {
        self.0 & c.bit() != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = EchelonClass> + '_ {
        EchelonClass::ALL.into_iter().filter(|c| self.contains(*c))
    }
}

impl FromIterator<EchelonClass> for EchelonClassSet {
    fn from_iter<I: IntoIterator<Item = EchelonClass>>(iter: I) -> Self {
        let mut s = EchelonClassSet::empty();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Display for EchelonClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("none");
        }
        let names: Vec<String> = self.iter().map(|c| c.to_string()).collect();
        f.write_str(&names.join(", "))
    }
}

impl fmt::Debug for EchelonClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Which side(s) of `M` to multiply by `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JSide {
    /// `J M`: rows reflected.
    Left,
    /// `M J`: columns reflected.
    Right,
    /// `J M J`.
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiordanMatrix<F = Rational> {
    alpha: LaurentSeries<F>,
    omega: LaurentSeries<F>,
    side: Side,
    prec: usize,
}

impl<F: Field> RiordanMatrix<F> {
    /// `R_{α,ω}`, with the side taken from whichever input is not a Laurent
    /// polynomial, or from ω's preferred side when both are.
    pub fn new(alpha: LaurentSeries<F>, omega: LaurentSeries<F>) -> Result<Self> {
        let side = match (alpha.is_exact(), omega.is_exact()) {
            (false, false) if alpha.side() != omega.side() => return Err(Error::SideIndeterminate),
            (false, _) => alpha.side(),
            (true, false) => omega.side(),
            (true, true) => omega.side(),
        };
        Self::on_side(alpha, omega, side)
    }

    /// `R_{α,ω}` with both series expanded on `side`.
    pub fn on_side(alpha: LaurentSeries<F>, omega: LaurentSeries<F>, side: Side) -> Result<Self> {
        if omega.is_zero() {
            return Err(Error::ZeroSeries);
        }
        Ok(RiordanMatrix {
            alpha: alpha.viewed(side)?,
            omega: omega.viewed(side)?,
            side,
            prec: DEFAULT_PRECISION,
        })
    }

    /// Expansion length used when a Laurent polynomial has to be inverted.
    pub fn with_precision(mut self, prec: usize) -> Self {
        self.prec = prec.max(1);
        self
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn identity() -> Self {
        Self::toeplitz(LaurentSeries::one()).expect("identity")
    }

    /// `A_α = R_{α,x}`, entry `(i, j)` equal to `α_{i-j}`.
    pub fn toeplitz(alpha: LaurentSeries<F>) -> Result<Self> {
        Self::new(alpha, LaurentSeries::x())
    }

    /// `B_ω = R_{1,ω}`.
    pub fn lagrange(omega: LaurentSeries<F>) -> Result<Self> {
        Self::new(LaurentSeries::one(), omega)
    }

    /// `J = B_{1/x}`, ones on the anti-diagonal `i + j = 0`.
    pub fn j_matrix() -> Self {
        Self::lagrange(LaurentSeries::monomial(F::one(), -1)).expect("J")
    }

    pub fn alpha(&self) -> &LaurentSeries<F> {
        &self.alpha
    }

    pub fn omega(&self) -> &LaurentSeries<F> {
        &self.omega
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Sides on which this matrix has the same entries. Two sides only when
    /// every column is a Laurent polynomial.
    pub fn views(&self) -> Vec<Side> {
        if self.alpha.is_exact() && self.omega.as_monomial().is_some() {
            vec![self.side, self.side.flip()]
        } else {
            vec![self.side]
        }
    }

    fn viewed(&self, side: Side) -> Result<Self> {
        Ok(RiordanMatrix {
            alpha: self.alpha.viewed(side)?,
            omega: self.omega.viewed(side)?,
            side,
            prec: self.prec,
        })
    }

    /// Echelon classes, read off from ω's side and order. Empty when ω has
    /// order 0 or α is zero.
    pub fn classes(&self) -> Result<EchelonClassSet> {
        if self.alpha.is_zero() {
            return Ok(EchelonClassSet::empty());
        }
        let mut set = EchelonClassSet::empty();
        for s in self.views() {
            match self.omega.order_on(s)?.finite() {
                Some(n) => {
                    if let Some(c) = EchelonClass::from_order(s, n) {
                        set.insert(c);
                    }
                }
                None => return Err(Error::ZeroSeries),
            }
        }
        Ok(set)
    }

    /// Column `j`, i.e. `α·ω^j`.
    pub fn column(&self, j: i64) -> Result<LaurentSeries<F>> {
        self.column_with(j, self.prec)
    }

    /// Column `j` with exact inputs expanded far enough to know row `row`.
    pub fn column_through(&self, j: i64, row: i64) -> Result<LaurentSeries<F>> {
        self.column_with(j, self.count_for(j, row))
    }

    fn column_with(&self, j: i64, count: usize) -> Result<LaurentSeries<F>> {
        let p = self.omega.pow(j, self.side, count)?;
        self.alpha.mul(&p)
    }

    /// Expansion count for an exact ω so column `j` reaches `row`.
    fn count_for(&self, j: i64, row: i64) -> usize {
        let flip = |v: i64| match self.side {
            Side::Below => v,
            Side::Above => -v,
        };
        let (Ok(p), Some(va)) = (
            self.omega.finite_order_on(self.side),
            low_on(&self.alpha, self.side),
        ) else {
            return self.prec;
        };
        let need = flip(row) - flip(va) - flip(p) * j + 1;
        let alpha_count = self.alpha.known_count().unwrap_or(0);
        self.prec.max(need.max(0) as usize).max(alpha_count)
    }

    pub fn entry(&self, i: i64, j: i64) -> Result<F> {
        self.column_through(j, i)?.coeff(i)
    }

    /// Bounds on the rows where column `j` can be nonzero.
    pub fn column_support(&self, j: i64) -> ColumnSupport {
        if self.alpha.is_zero() {
            return ColumnSupport::Zero;
        }
        let s = self.side;
        let (Some(va), Ok(p)) = (low_on(&self.alpha, s), self.omega.finite_order_on(s)) else {
            return ColumnSupport::Range { lo: None, hi: None };
        };
        let lead = va + p * j;
        let exact = self.alpha.is_exact() && (j >= 0 || self.omega.as_monomial().is_some());
        let far = if exact {
            let top = |x: &LaurentSeries<F>| -> i64 {
                let t: Vec<i64> = x.terms().map(|(k, _)| k).collect();
                match s {
                    Side::Below => *t.last().unwrap(),
                    Side::Above => t[0],
                }
            };
            Some(top(&self.alpha) + top(&self.omega) * j)
        } else {
            None
        };
        match s {
            Side::Below => ColumnSupport::Range {
                lo: Some(lead),
                hi: far,
            },
            Side::Above => ColumnSupport::Range {
                lo: far,
                hi: Some(lead),
            },
        }
    }

    /// `α·(χ∘ω)`, the image of the coefficient vector of χ.
    pub fn apply(&self, chi: &LaurentSeries<F>) -> Result<LaurentSeries<F>> {
        let (c, _) = compose_in(chi, &self.omega, &self.views(), self.prec)?;
        self.alpha.mul(&c)
    }

    /// `M N = R_{α·(β∘ω), χ∘ω}`, defined when some pair of classes of the
    /// operands has a defined product.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        let (cl, cr) = (self.classes()?, other.classes()?);
        let cell = cl
            .iter()
            .flat_map(|a| cr.iter().map(move |b| (a, b)))
            .find_map(|(a, b)| product_class(a, b).map(|r| (a, b, r)));
        let Some((a, b, _)) = cell else {
            return Err(Error::UndefinedMatrixProduct {
                left: cl,
                right: cr,
            });
        };
        let m = self.viewed(a.side())?;
        let n = other.viewed(b.side())?;
        let prec = m.prec.max(n.prec);
        let pin = [m.side];
        let (beta_w, _) = compose_in(&n.alpha, &m.omega, &pin, prec)?;
        let (chi_w, _) = compose_in(&n.omega, &m.omega, &pin, prec)?;
        let alpha = m.alpha.mul(&beta_w)?;
        Ok(RiordanMatrix::on_side(alpha, chi_w, m.side)?.with_precision(prec))
    }

    /// `R_{1/(α∘ω^{[-1]}), ω^{[-1]}}`; requires `α != 0` and `ord ω = ±1`.
    pub fn inverse(&self) -> Result<Self> {
        if self.alpha.is_zero() {
            return Err(Error::NotInvertible("alpha is zero".into()));
        }
        let mut order = None;
        for s in self.views() {
            let n = self.omega.finite_order_on(s)?;
            order.get_or_insert(n);
            if n.abs() != 1 {
                continue;
            }
            let m = self.viewed(s)?;
            let inv = m.omega.compositional_inverse(m.prec)?;
            let rs = if n == 1 { s } else { s.flip() };
            let inv = inv.viewed(rs)?;
            let (a, _) = compose_in(&m.alpha, &inv, &[rs], m.prec)?;
            let alpha = a.recip(rs, m.prec)?;
            return Ok(RiordanMatrix::on_side(alpha, inv, rs)?.with_precision(m.prec));
        }
        Err(Error::NotInvertible(format!(
            "omega has order {}, an inverse needs order +1 or -1",
            order.unwrap_or(0)
        )))
    }

    /// Multiply by `J` on the left, right or both sides.
    pub fn j_conjugate(&self, which: JSide) -> Result<Self> {
        let flip = |s: &LaurentSeries<F>| s.substitute_reciprocal();
        let (alpha, omega, side) = match which {
            JSide::Left => (flip(&self.alpha), flip(&self.omega), self.side.flip()),
            JSide::Right => (
                self.alpha.clone(),
                self.omega.recip(self.side, self.prec)?,
                self.side,
            ),
            JSide::Both => (
                flip(&self.alpha),
                flip(&self.omega.recip(self.side, self.prec)?),
                self.side.flip(),
            ),
        };
        Ok(RiordanMatrix::on_side(alpha, omega, side)?.with_precision(self.prec))
    }

    /// `(α, ω)` in canonical series text.
    pub fn descriptor(&self) -> String {
        format!("({}, {})", self.alpha, self.omega)
    }
}

/// Lower (below) or upper (above) bound of the support on `side`.
fn low_on<F: Field>(s: &LaurentSeries<F>, side: Side) -> Option<i64> {
    let mut keys = s.terms().map(|(k, _)| k);
    match side {
        Side::Below => keys.next().or(s.bound()),
        Side::Above => keys.next_back().or(s.bound()),
    }
}
