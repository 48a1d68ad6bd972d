//! Finite dense views of bi-infinite matrices, plus the brute-force product
//! oracle built on them.
//!
//! An entry of a bi-infinite product `Σ_k m_ik n_kj` is an infinite sum. A
//! window only holds `k` in a finite range, so the oracle certifies each
//! entry it reports: every omitted summand has to vanish because of the
//! column supports of the operands or the echelon structure of the left one.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::riordan::{EchelonClass, EchelonClassSet, RiordanMatrix};
use crate::series::{LaurentSeries, Side};

/// Rows on which a column (or vector) may be nonzero. `None` is unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnSupport {
    Zero,
    Range { lo: Option<i64>, hi: Option<i64> },
}

impl ColumnSupport {
    /// All entries with index `< k` vanish.
    fn zero_below(self, k: i64) -> bool {
        match self {
            ColumnSupport::Zero => true,
            ColumnSupport::Range { lo, .. } => lo.is_some_and(|l| l >= k),
        }
    }

    /// All entries with index `> k` vanish.
    fn zero_above(self, k: i64) -> bool {
        match self {
            ColumnSupport::Zero => true,
            ColumnSupport::Range { hi, .. } => hi.is_some_and(|h| h <= k),
        }
    }

    fn lo(self) -> Option<i64> {
        match self {
            ColumnSupport::Zero => None,
            ColumnSupport::Range { lo, .. } => lo,
        }
    }

    fn hi(self) -> Option<i64> {
        match self {
            ColumnSupport::Zero => None,
            ColumnSupport::Range { hi, .. } => hi,
        }
    }

    /// Support of a series' coefficient vector.
    pub fn of_series<F: Field>(s: &LaurentSeries<F>) -> ColumnSupport {
        if s.is_zero() {
            return ColumnSupport::Zero;
        }
        let mut keys = s.terms().map(|(k, _)| k);
        let (first, last) = (keys.next(), keys.next_back());
        let last = last.or(first);
        if s.is_exact() {
            return ColumnSupport::Range {
                lo: first,
                hi: last,
            };
        }
        match s.side() {
            Side::Below => ColumnSupport::Range {
                lo: first.or(s.bound()),
                hi: None,
            },
            Side::Above => ColumnSupport::Range {
                lo: None,
                hi: last.or(s.bound()),
            },
        }
    }
}

/// What the oracle needs to know about the matrix a window was cut from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowStructure {
    pub classes: EchelonClassSet,
    /// One entry per window column.
    pub columns: Vec<ColumnSupport>,
}

#[derive(Clone, Debug)]
pub struct MatrixWindow<F = Rational> {
    pub row_lo: i64,
    pub col_lo: i64,
    /// `entries[r][c]` is the entry at `(row_lo + r, col_lo + c)`.
    pub entries: Vec<Vec<F>>,
    pub structure: Option<WindowStructure>,
}

impl<F: PartialEq> PartialEq for MatrixWindow<F> {
    fn eq(&self, other: &Self) -> bool {
        self.row_lo == other.row_lo && self.col_lo == other.col_lo && self.entries == other.entries
    }
}

/// A finite slice `values[t]` = coordinate `lo + t` of a bi-infinite vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffsetVector<F = Rational> {
    pub lo: i64,
    pub values: Vec<F>,
    pub support: ColumnSupport,
}

impl<F: Field> OffsetVector<F> {
    /// Coefficients `lo..=hi` of a series.
    pub fn from_series(s: &LaurentSeries<F>, range: RangeInclusive<i64>) -> Result<Self> {
        Ok(OffsetVector {
            lo: *range.start(),
            values: range.map(|k| s.coeff(k)).collect::<Result<_>>()?,
            support: ColumnSupport::of_series(s),
        })
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn get(&self, i: i64) -> Option<&F> {
        usize::try_from(i - self.lo)
            .ok()
            .and_then(|t| self.values.get(t))
    }
}

impl<F: Field> MatrixWindow<F> {
    pub fn new(row_lo: i64, col_lo: i64, entries: Vec<Vec<F>>) -> Result<Self> {
        let w = entries.first().map_or(0, |r| r.len());
        if entries.iter().any(|r| r.len() != w) {
            return Err(Error::InvalidWindow("rows have different lengths".into()));
        }
        Ok(MatrixWindow {
            row_lo,
            col_lo,
            entries,
            structure: None,
        })
    }

    /// Dense block of `m` on the given inclusive ranges.
    pub fn extract(
        m: &RiordanMatrix<F>,
        rows: RangeInclusive<i64>,
        cols: RangeInclusive<i64>,
    ) -> Result<Self> {
        check_range(&rows)?;
        check_range(&cols)?;
        let far_row = match m.side() {
            Side::Below => *rows.end(),
            Side::Above => *rows.start(),
        };
        let mut by_col = Vec::new();
        let mut supports = Vec::new();
        for j in cols.clone() {
            let c = m.column_through(j, far_row)?;
            by_col.push(
                rows.clone()
                    .map(|i| c.coeff(i))
                    .collect::<Result<Vec<F>>>()?,
            );
            supports.push(m.column_support(j));
        }
        let entries = (0..rows.clone().count())
            .map(|r| by_col.iter().map(|c| c[r].clone()).collect())
            .collect();
        Ok(MatrixWindow {
            row_lo: *rows.start(),
            col_lo: *cols.start(),
            entries,
            structure: Some(WindowStructure {
                classes: m.classes()?,
                columns: supports,
            }),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn n_cols(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }

    pub fn rows(&self) -> RangeInclusive<i64> {
        self.row_lo..=self.row_lo + self.n_rows() as i64 - 1
    }

    pub fn cols(&self) -> RangeInclusive<i64> {
        self.col_lo..=self.col_lo + self.n_cols() as i64 - 1
    }

    pub fn get(&self, i: i64, j: i64) -> Option<&F> {
        let r = usize::try_from(i - self.row_lo).ok()?;
        let c = usize::try_from(j - self.col_lo).ok()?;
        self.entries.get(r)?.get(c)
    }

    pub fn origin_marked(&self) -> bool {
        self.rows().contains(&0) && self.cols().contains(&0)
    }

    /// Sub-block on the given ranges, which must lie inside this window.
    pub fn sub(&self, rows: RangeInclusive<i64>, cols: RangeInclusive<i64>) -> Result<Self> {
        let inside = |r: &RangeInclusive<i64>, o: RangeInclusive<i64>| {
            r.start() >= o.start() && r.end() <= o.end()
        };
        if !inside(&rows, self.rows()) || !inside(&cols, self.cols()) {
            return Err(Error::InvalidWindow("sub-block outside window".into()));
        }
        let c0 = (cols.start() - self.col_lo) as usize;
        let c1 = (cols.end() - self.col_lo) as usize;
        let entries = rows
            .clone()
            .map(|i| self.entries[(i - self.row_lo) as usize][c0..=c1].to_vec())
            .collect();
        let structure = self.structure.as_ref().map(|s| WindowStructure {
            classes: s.classes,
            columns: s.columns[c0..=c1].to_vec(),
        });
        Ok(MatrixWindow {
            row_lo: *rows.start(),
            col_lo: *cols.start(),
            entries,
            structure,
        })
    }

    /// Rows reflected across row 0.
    pub fn reflect_rows(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        MatrixWindow {
            row_lo: -(self.row_lo + self.n_rows() as i64 - 1),
            col_lo: self.col_lo,
            entries,
            structure: None,
        }
    }

    /// Columns reflected across column 0.
    pub fn reflect_cols(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().rev().cloned().collect())
            .collect();
        MatrixWindow {
            row_lo: self.row_lo,
            col_lo: -(self.col_lo + self.n_cols() as i64 - 1),
            entries,
            structure: None,
        }
    }

    pub fn render_text(&self) -> String {
        let texts: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.to_text()).collect())
            .collect();
        let widths: Vec<usize> = (0..self.n_cols())
            .map(|c| texts.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for (r, row) in texts.iter().enumerate() {
            let mut line = String::new();
            for (c, t) in row.iter().enumerate() {
                let origin = self.row_lo + r as i64 == 0 && self.col_lo + c as i64 == 0;
                let (l, rt) = if origin { ('[', ']') } else { (' ', ' ') };
                if c > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{l}{t:>w$}{rt}", w = widths[c]);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "row_lo": self.row_lo,
            "col_lo": self.col_lo,
            "entries": self
                .entries
                .iter()
                .map(|r| r.iter().map(|e| e.to_text()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Json(m.to_string());
        let row_lo = v["row_lo"]
            .as_i64()
            .ok_or_else(|| bad("missing `row_lo`"))?;
        let col_lo = v["col_lo"]
            .as_i64()
            .ok_or_else(|| bad("missing `col_lo`"))?;
        let rows = v["entries"]
            .as_array()
            .ok_or_else(|| bad("missing `entries`"))?;
        let entries = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| bad("row is not an array"))?
                    .iter()
                    .map(|e| F::parse_text(e.as_str().ok_or_else(|| bad("entry is not a string"))?))
                    .collect::<Result<Vec<F>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(row_lo, col_lo, entries)
    }
}

fn check_range(r: &RangeInclusive<i64>) -> Result<()> {
    if r.is_empty() {
        return Err(Error::InvalidWindow(format!("empty range {r:?}")));
    }
    Ok(())
}

/// Whether every summand `a_ik v_k` with `k` left of `k_lo` vanishes for this
/// row, judged from the left operand alone.
fn row_clear_left(s: &WindowStructure, i: i64, first_col: ColumnSupport) -> bool {
    s.classes.iter().any(|c| match c {
        EchelonClass::LMinus => first_col.lo().is_some_and(|l| i <= l),
        EchelonClass::UPlus => first_col.hi().is_some_and(|h| i >= h),
        _ => false,
    })
}

fn row_clear_right(s: &WindowStructure, i: i64, last_col: ColumnSupport) -> bool {
    s.classes.iter().any(|c| match c {
        EchelonClass::LPlus => last_col.lo().is_some_and(|l| i <= l),
        EchelonClass::UMinus => last_col.hi().is_some_and(|h| i >= h),
        _ => false,
    })
}

fn certified(a: &MatrixWindow<impl Field>, i: i64, right: ColumnSupport) -> bool {
    let cols = a.cols();
    let Some(s) = &a.structure else {
        return right.zero_below(*cols.start()) && right.zero_above(*cols.end());
    };
    let left_ok = right.zero_below(*cols.start()) || row_clear_left(s, i, s.columns[0]);
    let right_ok =
        right.zero_above(*cols.end()) || row_clear_right(s, i, *s.columns.last().expect("column"));
    left_ok && right_ok
}

/// Product of two windows on the target block `rows × cols`, failing if an
/// entry there could pick up summands from outside the shared index range.
pub fn oracle_matmul<F: Field>(
    a: &MatrixWindow<F>,
    b: &MatrixWindow<F>,
    rows: RangeInclusive<i64>,
    cols: RangeInclusive<i64>,
) -> Result<MatrixWindow<F>> {
    if a.cols() != b.rows() {
        return Err(Error::InvalidWindow(format!(
            "inner ranges differ: {:?} vs {:?}",
            a.cols(),
            b.rows()
        )));
    }
    let a_blk = a.sub(rows.clone(), a.cols())?;
    let b_blk = b.sub(b.rows(), cols.clone())?;
    let mut entries = Vec::new();
    for i in rows.clone() {
        let mut row = Vec::new();
        for j in cols.clone() {
            let support = b
                .structure
                .as_ref()
                .map(|s| s.columns[(j - b.col_lo) as usize])
                .unwrap_or(ColumnSupport::Range { lo: None, hi: None });
            if !certified(a, i, support) {
                return Err(Error::GuardViolation { row: i, col: j });
            }
            let mut acc = F::zero();
            for k in a.cols() {
                let x = a_blk.get(i, k).expect("in range");
                if !x.is_zero() {
                    acc = acc + x.clone() * b_blk.get(k, j).expect("in range").clone();
                }
            }
            row.push(acc);
        }
        entries.push(row);
    }
    MatrixWindow::new(*rows.start(), *cols.start(), entries)
}

/// Matrix–vector analogue of [`oracle_matmul`].
pub fn oracle_apply<F: Field>(
    a: &MatrixWindow<F>,
    v: &OffsetVector<F>,
    rows: RangeInclusive<i64>,
) -> Result<OffsetVector<F>> {
    if *a.cols().start() != v.lo || *a.cols().end() != v.hi() {
        return Err(Error::InvalidWindow(
            "vector range differs from window columns".into(),
        ));
    }
    let mut values = Vec::new();
    for i in rows.clone() {
        if !certified(a, i, v.support) {
            return Err(Error::GuardViolation { row: i, col: 0 });
        }
        let mut acc = F::zero();
        for k in a.cols() {
            let x = a
                .get(i, k)
                .ok_or_else(|| Error::InvalidWindow("row outside window".into()))?;
            if !x.is_zero() {
                acc = acc + x.clone() * v.get(k).expect("in range").clone();
            }
        }
        values.push(acc);
    }
    Ok(OffsetVector {
        lo: *rows.start(),
        values,
        support: ColumnSupport::Range { lo: None, hi: None },
    })
}

const SEARCH_STEPS: i64 = 256;

/// Tightest shared index range that certifies the block. Both tail
/// conditions are monotone in the index, so each end is found by scanning
/// inward from the far side of the target ranges.
fn inner_range<F: Field>(
    m: &RiordanMatrix<F>,
    rows: &RangeInclusive<i64>,
    right: &dyn Fn(i64) -> ColumnSupport,
    targets: &RangeInclusive<i64>,
) -> Result<RangeInclusive<i64>> {
    let s = WindowStructure {
        classes: m.classes()?,
        columns: Vec::new(),
    };
    let left_ok = |k: i64| {
        targets.clone().all(|j| right(j).zero_below(k))
            || rows
                .clone()
                .all(|i| row_clear_left(&s, i, m.column_support(k)))
    };
    let right_ok = |k: i64| {
        targets.clone().all(|j| right(j).zero_above(k))
            || rows
                .clone()
                .all(|i| row_clear_right(&s, i, m.column_support(k)))
    };
    let start = *rows.start().min(targets.start());
    let end = *rows.end().max(targets.end());
    let span = end - start + SEARCH_STEPS;
    let lo = (0..span)
        .map(|t| end - t)
        .find(|&k| left_ok(k))
        .ok_or(Error::GuardViolation {
            row: *rows.start(),
            col: *targets.start(),
        })?;
    let hi = (0..span)
        .map(|t| start + t)
        .find(|&k| right_ok(k))
        .ok_or(Error::GuardViolation {
            row: *rows.end(),
            col: *targets.end(),
        })?;
    // lo > hi means no index contributes; any range between them certifies.
    Ok(lo.min(hi)..=lo.max(hi))
}

/// Block `rows × cols` of `M N`, computed by the window oracle.
pub fn oracle_product<F: Field>(
    m: &RiordanMatrix<F>,
    n: &RiordanMatrix<F>,
    rows: RangeInclusive<i64>,
    cols: RangeInclusive<i64>,
) -> Result<MatrixWindow<F>> {
    let inner = inner_range(m, &rows, &|j| n.column_support(j), &cols)?;
    let a = MatrixWindow::extract(m, rows.clone(), inner.clone())?;
    let b = MatrixWindow::extract(n, inner, cols.clone())?;
    oracle_matmul(&a, &b, rows, cols)
}

/// Coordinates `rows` of `M v` where `v` is the coefficient vector of χ.
pub fn oracle_image<F: Field>(
    m: &RiordanMatrix<F>,
    chi: &LaurentSeries<F>,
    rows: RangeInclusive<i64>,
) -> Result<OffsetVector<F>> {
    let support = ColumnSupport::of_series(chi);
    let inner = inner_range(m, &rows, &|_| support, &(0..=0))?;
    let a = MatrixWindow::extract(m, rows.clone(), inner.clone())?;
    let v = OffsetVector::from_series(chi, inner)?;
    oracle_apply(&a, &v, rows)
}
