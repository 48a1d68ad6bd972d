use std::ops::RangeInclusive;
use std::process::ExitCode;

use biriordan::simplicial::{self, FVector};
use biriordan::{
    parse, Error, LaurentSeries, MatrixWindow, Rational, RiordanMatrix, Side, SideTag,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const MAX_WINDOW: usize = 64;

#[derive(Parser)]
#[command(
    name = "biriordan",
    version,
    about = "Exact Laurent series and bi-infinite Riordan matrices"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Series arithmetic.
    Series {
        #[command(subcommand)]
        op: SeriesOp,
    },
    /// Riordan matrices R_{alpha,omega}.
    Matrix {
        #[command(subcommand)]
        op: MatrixOp,
    },
    /// h-vector and Dehn-Sommerville check for an f-vector.
    Ds(DsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Below,
    Above,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Below => Side::Below,
            SideArg::Above => Side::Above,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Expansion side for divisions and negative powers.
    #[arg(long, value_enum, default_value = "below")]
    side: SideArg,
    /// Known coefficients counted from the order; output is cut at x^prec
    /// (below) or x^-prec (above).
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..=4096))]
    prec: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum SeriesOp {
    /// Parse and print an expression.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Product a*b.
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Multiplicative inverse 1/a on --side.
    Recip {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[command(flatten)]
        common: Common,
    },
    /// Composition chi(omega).
    Compose {
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compositional inverse of omega.
    Invert {
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[command(flatten)]
        common: Common,
    },
    /// Integer power a^exp.
    Pow {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        exp: i64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    alpha: String,
    #[arg(long, allow_hyphen_values = true, default_value = "x")]
    omega: String,
    /// Row range `a..b` (inclusive).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    rows: Option<RangeInclusive<i64>>,
    /// Column range `a..b` (inclusive).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    cols: Option<RangeInclusive<i64>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum MatrixOp {
    /// Print a window of R_{alpha,omega}.
    Window(MatrixArgs),
    /// Product R_{alpha,omega} R_{beta,chi}.
    Mul {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        beta: String,
        #[arg(long, allow_hyphen_values = true, default_value = "x")]
        chi: String,
        /// Side for beta and chi; defaults to --side.
        #[arg(long, value_enum)]
        side2: Option<SideArg>,
    },
    /// Inverse of R_{alpha,omega}.
    Inv(MatrixArgs),
    /// Image alpha*(chi(omega)) of the coefficient vector of chi.
    Apply {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
    },
    /// Echelon classes of R_{alpha,omega}.
    Classify(MatrixArgs),
}

#[derive(Args)]
struct DsArgs {
    /// Comma-separated f_-1, f_0, ..., f_d.
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long)]
    json: bool,
    /// Also re-derive the matrix identity chain for this dimension.
    #[arg(long)]
    trace: bool,
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start {a:?}"))?;
    let b: i64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end {b:?}"))?;
    if b < a {
        return Err(format!("empty range {s:?}"));
    }
    if (b - a + 1) as usize > MAX_WINDOW {
        return Err(format!("range {s:?} longer than {MAX_WINDOW}"));
    }
    Ok(a..=b)
}

enum Failure {
    Math(Error),
    Check(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if matches!(e, Error::CheckFailed(_)) {
            Failure::Check(e)
        } else if e.is_math_undefined() {
            Failure::Math(e)
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Out = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Series { op } => series_cmd(op),
        Cmd::Matrix { op } => matrix_cmd(op),
        Cmd::Ds(args) => ds_cmd(args),
    };
    match result {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Check(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn read(expr: &str, c: &Common) -> Result<LaurentSeries, Failure> {
    parse(expr, c.side.into(), c.prec as usize).map_err(|e| match e {
        Error::Parse { .. } => Failure::Usage(format!("in {expr:?}: {e}")),
        e => e.into(),
    })
}

/// Cut a non-exact result at x^prec (below) or x^-prec (above).
fn cut(s: &LaurentSeries, prec: u32) -> LaurentSeries {
    match s.side_tag() {
        SideTag::BoundedBelow => s.with_precision(prec as i64),
        SideTag::BoundedAbove => s.with_precision(-(prec as i64)),
        SideTag::FiniteSupport => s.clone(),
    }
}

fn show_series(s: &LaurentSeries, c: &Common) -> String {
    let s = cut(s, c.prec);
    match c.format {
        Format::Text => format!("{s}\nside: {}\n", s.side_tag().name()),
        Format::Json => format!("{}\n", s.to_json()),
    }
}

fn series_cmd(op: SeriesOp) -> Out {
    let (value, common) = match op {
        SeriesOp::Eval { expr, common } => (read(&expr, &common)?, common),
        SeriesOp::Mul { a, b, common } => {
            let v = read(&a, &common)?.mul(&read(&b, &common)?)?;
            (v, common)
        }
        SeriesOp::Recip { a, common } => {
            let v = read(&a, &common)?.recip(common.side.into(), common.prec as usize)?;
            (v, common)
        }
        SeriesOp::Compose { chi, omega, common } => {
            let v = read(&chi, &common)?.compose(&read(&omega, &common)?, common.prec as usize)?;
            (v, common)
        }
        SeriesOp::Invert { omega, common } => {
            let v = read(&omega, &common)?.compositional_inverse(common.prec as usize)?;
            (v, common)
        }
        SeriesOp::Pow { a, exp, common } => {
            let v = read(&a, &common)?.pow(exp, common.side.into(), common.prec as usize)?;
            (v, common)
        }
    };
    Ok((show_series(&value, &common), 0))
}

fn build(alpha: &str, omega: &str, c: &Common, side: Side) -> Result<RiordanMatrix, Failure> {
    let p = c.prec as usize;
    let a = parse(alpha, side, p).map_err(|e| Failure::from(e).context(alpha))?;
    let w = parse(omega, side, p).map_err(|e| Failure::from(e).context(omega))?;
    Ok(RiordanMatrix::new(a, w)?.with_precision(p))
}

impl Failure {
    fn context(self, expr: &str) -> Failure {
        match self {
            Failure::Usage(m) => Failure::Usage(format!("in {expr:?}: {m}")),
            f => f,
        }
    }
}

fn descriptor(m: &RiordanMatrix, c: &Common) -> (String, Value) {
    let a = cut(m.alpha(), c.prec);
    let w = cut(m.omega(), c.prec);
    let classes = m
        .classes()
        .map(|s| s.iter().map(|k| k.to_string()).collect::<Vec<_>>())
        .unwrap_or_default();
    (
        format!("({a}, {w})\n"),
        json!({ "alpha": a.to_json(), "omega": w.to_json(), "classes": classes }),
    )
}

fn window_of(m: &RiordanMatrix, a: &MatrixArgs) -> Result<Option<MatrixWindow>, Failure> {
    match (&a.rows, &a.cols) {
        (None, None) => Ok(None),
        (r, c) => {
            let rows = r.clone().unwrap_or(-3..=3);
            let cols = c.clone().unwrap_or(-3..=3);
            Ok(Some(MatrixWindow::extract(m, rows, cols)?))
        }
    }
}

fn matrix_out(m: &RiordanMatrix, a: &MatrixArgs) -> Out {
    let (text, mut js) = descriptor(m, &a.common);
    let w = window_of(m, a)?;
    Ok(match a.common.format {
        Format::Text => {
            let mut t = text;
            if let Some(w) = w {
                t.push_str(&w.render_text());
            }
            (t, 0)
        }
        Format::Json => {
            if let Some(w) = w {
                js["window"] = w.to_json();
            }
            (format!("{js}\n"), 0)
        }
    })
}

fn matrix_cmd(op: MatrixOp) -> Out {
    match op {
        MatrixOp::Window(a) => {
            let m = build(&a.alpha, &a.omega, &a.common, a.common.side.into())?;
            let rows = a.rows.clone().unwrap_or(-3..=3);
            let cols = a.cols.clone().unwrap_or(-3..=3);
            let w = MatrixWindow::extract(&m, rows, cols)?;
            Ok(match a.common.format {
                Format::Text => (w.render_text(), 0),
                Format::Json => (format!("{}\n", w.to_json()), 0),
            })
        }
        MatrixOp::Mul {
            m,
            beta,
            chi,
            side2,
        } => {
            let left = build(&m.alpha, &m.omega, &m.common, m.common.side.into())?;
            let s2 = side2.unwrap_or(m.common.side).into();
            let right = build(&beta, &chi, &m.common, s2)?;
            matrix_out(&left.matmul(&right)?, &m)
        }
        MatrixOp::Inv(a) => {
            let m = build(&a.alpha, &a.omega, &a.common, a.common.side.into())?;
            matrix_out(&m.inverse()?, &a)
        }
        MatrixOp::Apply { m, chi } => {
            let mat = build(&m.alpha, &m.omega, &m.common, m.common.side.into())?;
            let v = read(&chi, &m.common)?;
            Ok((show_series(&mat.apply(&v)?, &m.common), 0))
        }
        MatrixOp::Classify(a) => {
            let m = build(&a.alpha, &a.omega, &a.common, a.common.side.into())?;
            let classes = m.classes()?;
            Ok(match a.common.format {
                Format::Text => (format!("{classes}\n"), 0),
                Format::Json => {
                    let v: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
                    (format!("{}\n", json!({ "classes": v })), 0)
                }
            })
        }
    }
}

fn ds_cmd(args: DsArgs) -> Out {
    let fv: FVector<Rational> =
        FVector::parse(&args.f).map_err(|e| Failure::Usage(format!("f-vector: {e}")))?;
    if let Some(w) = fv.warning() {
        eprintln!("warning: {w}");
    }
    let report = simplicial::report(&fv, args.trace && args.json)?;
    let holds = report["residuals"]
        .as_array()
        .expect("residuals")
        .iter()
        .all(|r| r == "0");
    let code = if holds { 0 } else { 3 };
    if args.json {
        return Ok((format!("{report}\n"), code));
    }
    let list = |key: &str| {
        let v: Vec<&str> = report[key]
            .as_array()
            .expect("list")
            .iter()
            .map(|x| x.as_str().expect("text"))
            .collect();
        format!("({})", v.join(", "))
    };
    let mut out = format!(
        "d = {}\nh = {}\npalindromic: {}\nresiduals = {}\n",
        fv.d,
        list("h"),
        if report["palindromic"] == true {
            "yes"
        } else {
            "no"
        },
        list("residuals"),
    );
    if args.trace {
        out.push_str(&simplicial::verify_theorem_chain::<Rational>(fv.d)?.render_text());
    }
    Ok((out, code))
}
