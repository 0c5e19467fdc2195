//! Univariate expression trees: parsing, formatting, and evaluation over
//! the reals, over jets, and (via [`crate::bidual`]) over the bidual
//! algebra.
//!
//! The grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' number)?
//! atom   := number | 'x' | ident '(' expr ')' | '(' expr ')'
//! ident  := 'exp' | 'ln' | 'sin' | 'cos' | 'arctan' | 'sqrt'
//! number := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]
//! ```
//!
//! `^` binds tighter than unary minus, which binds tighter than `*`/`/`,
//! which bind tighter than `+`/`-`. Exponents are numeric literals, not
//! sub-expressions; integer literals compile to integer powers (valid for
//! non-positive bases), anything else to real powers. `sqrt(u)` is sugar
//! for `u^0.5`.

mod parse;

pub use parse::{parse, ParseError};

use alloc::boxed::Box;
use core::fmt;

use crate::jet::{Jet, ZeroDivisorClass};
use crate::taylor::{apply_elementary, ElementaryFn, TaylorError};

/// Byte range of a node in the source text; `start <= end`.
///
/// Programmatically built nodes carry [`SourceSpan::SYNTHETIC`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub const SYNTHETIC: SourceSpan = SourceSpan { start: 0, end: 0 };

    pub fn new(start: usize, end: usize) -> Self {
        SourceSpan { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// A parsed expression node with its source location.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    kind: ExprKind,
    span: SourceSpan,
}

/// Expression node shapes.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Const(f64),
    /// The single variable `x`.
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Base raised to a literal exponent.
    Pow(Box<Expr>, Exponent),
    Call(ElementaryFn, Box<Expr>),
}

/// A literal exponent. Integer literals keep their integer nature so that
/// powers of non-positive bases stay defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Int(i32),
    Real(f64),
}

impl Expr {
    pub fn new(kind: ExprKind, span: SourceSpan) -> Self {
        Expr { kind, span }
    }

    pub fn kind(&self) -> &ExprKind {
        &self.kind
    }

    pub fn span(&self) -> SourceSpan {
        self.span
    }

    /// Structural equality, ignoring source spans. Two parses of the same
    /// text, or a parse of formatted output, compare equal under this.
    pub fn structure_eq(&self, other: &Expr) -> bool {
        match (&self.kind, &other.kind) {
            (ExprKind::Const(a), ExprKind::Const(b)) => a == b,
            (ExprKind::Var, ExprKind::Var) => true,
            (ExprKind::Neg(a), ExprKind::Neg(b)) => a.structure_eq(b),
            (ExprKind::Add(a1, a2), ExprKind::Add(b1, b2))
            | (ExprKind::Sub(a1, a2), ExprKind::Sub(b1, b2))
            | (ExprKind::Mul(a1, a2), ExprKind::Mul(b1, b2))
            | (ExprKind::Div(a1, a2), ExprKind::Div(b1, b2)) => {
                a1.structure_eq(b1) && a2.structure_eq(b2)
            }
            (ExprKind::Pow(a, ea), ExprKind::Pow(b, eb)) => ea == eb && a.structure_eq(b),
            (ExprKind::Call(fa, a), ExprKind::Call(fb, b)) => fa == fb && a.structure_eq(b),
            _ => false,
        }
    }

    // Constructors for building trees in code (synthetic spans). The
    // operator names mirror the node names; they build nodes rather than
    // computing anything, so the std::ops traits do not apply.

    pub fn number(value: f64) -> Self {
        Expr::new(ExprKind::Const(value), SourceSpan::SYNTHETIC)
    }

    pub fn var() -> Self {
        Expr::new(ExprKind::Var, SourceSpan::SYNTHETIC)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(inner: Expr) -> Self {
        Expr::new(ExprKind::Neg(Box::new(inner)), SourceSpan::SYNTHETIC)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(lhs: Expr, rhs: Expr) -> Self {
        Expr::new(
            ExprKind::Add(Box::new(lhs), Box::new(rhs)),
            SourceSpan::SYNTHETIC,
        )
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(lhs: Expr, rhs: Expr) -> Self {
        Expr::new(
            ExprKind::Sub(Box::new(lhs), Box::new(rhs)),
            SourceSpan::SYNTHETIC,
        )
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(lhs: Expr, rhs: Expr) -> Self {
        Expr::new(
            ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
            SourceSpan::SYNTHETIC,
        )
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(lhs: Expr, rhs: Expr) -> Self {
        Expr::new(
            ExprKind::Div(Box::new(lhs), Box::new(rhs)),
            SourceSpan::SYNTHETIC,
        )
    }

    pub fn pow(base: Expr, exponent: Exponent) -> Self {
        Expr::new(
            ExprKind::Pow(Box::new(base), exponent),
            SourceSpan::SYNTHETIC,
        )
    }

    pub fn call(func: ElementaryFn, arg: Expr) -> Self {
        Expr::new(
            ExprKind::Call(func, Box::new(arg)),
            SourceSpan::SYNTHETIC,
        )
    }
}

/// An evaluation failure, carrying the span of the offending node.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalErrorKind {
    /// Real division with an exactly-zero divisor.
    DivisionByZero,
    /// Jet division with a zero-divisor divisor (zero constant term).
    ZeroDivisorDivision,
    /// An elementary function was applied outside its domain.
    Domain { func: &'static str, point: f64 },
    /// A value overflowed to infinity or NaN during evaluation.
    NonFinite,
    /// The requested order exceeds [`crate::MAX_ORDER`].
    OrderTooLarge { order: usize },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            EvalErrorKind::DivisionByZero => write!(f, "division by zero at {}", self.span),
            EvalErrorKind::ZeroDivisorDivision => write!(
                f,
                "division by a zero-divisor (zero constant term) at {}",
                self.span
            ),
            EvalErrorKind::Domain { func, point } => {
                write!(f, "{} is undefined at {} (node at {})", func, point, self.span)
            }
            EvalErrorKind::NonFinite => {
                write!(f, "evaluation overflowed at {}", self.span)
            }
            EvalErrorKind::OrderTooLarge { order } => {
                write!(f, "order {} not supported (node at {})", order, self.span)
            }
        }
    }
}

impl core::error::Error for EvalError {}

fn taylor_to_eval(e: TaylorError, span: SourceSpan) -> EvalError {
    let kind = match e {
        TaylorError::Domain { func, point } => EvalErrorKind::Domain { func, point },
        TaylorError::OrderTooLarge { order } => EvalErrorKind::OrderTooLarge { order },
        // Overflow inside derivative data (e.g. exp of a huge argument).
        TaylorError::NonFinite { .. } => EvalErrorKind::NonFinite,
        TaylorError::BaseMismatch { .. } | TaylorError::LengthMismatch { .. } => {
            unreachable!("evaluation builds derivative data to match the jet: {e}")
        }
    };
    EvalError { kind, span }
}

fn exponent_fn(exponent: Exponent) -> ElementaryFn {
    match exponent {
        Exponent::Int(k) => ElementaryFn::PowInt(k),
        Exponent::Real(p) => ElementaryFn::PowReal(p),
    }
}

/// Evaluates the expression at a real point.
pub fn eval_real(e: &Expr, x: f64) -> Result<f64, EvalError> {
    match &e.kind {
        ExprKind::Const(c) => Ok(*c),
        ExprKind::Var => Ok(x),
        ExprKind::Neg(inner) => Ok(-eval_real(inner, x)?),
        ExprKind::Add(a, b) => Ok(eval_real(a, x)? + eval_real(b, x)?),
        ExprKind::Sub(a, b) => Ok(eval_real(a, x)? - eval_real(b, x)?),
        ExprKind::Mul(a, b) => Ok(eval_real(a, x)? * eval_real(b, x)?),
        ExprKind::Div(a, b) => {
            let num = eval_real(a, x)?;
            let den = eval_real(b, x)?;
            if den == 0.0 {
                Err(EvalError {
                    kind: EvalErrorKind::DivisionByZero,
                    span: e.span,
                })
            } else {
                Ok(num / den)
            }
        }
        ExprKind::Pow(base, exponent) => {
            let b = eval_real(base, x)?;
            exponent_fn(*exponent)
                .eval(b)
                .map_err(|err| taylor_to_eval(err, e.span))
        }
        ExprKind::Call(func, arg) => {
            let a = eval_real(arg, x)?;
            func.eval(a).map_err(|err| taylor_to_eval(err, e.span))
        }
    }
}

/// Evaluates the expression's jet extension at the jet `j`.
///
/// Constants become constant jets, the variable becomes `j`, arithmetic
/// nodes use the jet algebra (division multiplies by the inverse), and
/// function calls lift through [`apply_elementary`]. The constant term of
/// the result equals the real evaluation at `j`'s constant term.
pub fn eval_jet(e: &Expr, j: &Jet) -> Result<Jet, EvalError> {
    match &e.kind {
        ExprKind::Const(c) => Ok(Jet::constant(j.order(), *c)),
        ExprKind::Var => Ok(j.clone()),
        ExprKind::Neg(inner) => Ok(eval_jet(inner, j)?.neg()),
        ExprKind::Add(a, b) => {
            let (a, b) = (eval_jet(a, j)?, eval_jet(b, j)?);
            Ok(a.add(&b).expect("same order"))
        }
        ExprKind::Sub(a, b) => {
            let (a, b) = (eval_jet(a, j)?, eval_jet(b, j)?);
            Ok(a.sub(&b).expect("same order"))
        }
        ExprKind::Mul(a, b) => {
            let (a, b) = (eval_jet(a, j)?, eval_jet(b, j)?);
            Ok(a.mul(&b).expect("same order"))
        }
        ExprKind::Div(a, b) => {
            let num = eval_jet(a, j)?;
            let den = eval_jet(b, j)?;
            if den.classify() == ZeroDivisorClass::ZeroDivisor {
                return Err(EvalError {
                    kind: EvalErrorKind::ZeroDivisorDivision,
                    span: e.span,
                });
            }
            let inv = den.invert().expect("invertible by classification");
            Ok(num.mul(&inv).expect("same order"))
        }
        ExprKind::Pow(base, exponent) => {
            let b = eval_jet(base, j)?;
            apply_elementary(exponent_fn(*exponent), &b)
                .map_err(|err| taylor_to_eval(err, e.span))
        }
        ExprKind::Call(func, arg) => {
            let a = eval_jet(arg, j)?;
            apply_elementary(*func, &a).map_err(|err| taylor_to_eval(err, e.span))
        }
    }
}

// Formatting. Output always re-parses; for parser-reachable trees it
// re-parses to a structurally identical tree. Precedence levels: +,- are 1;
// *,/ are 2; unary minus 3; ^ 4; atoms 5.

fn precedence(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Add(..) | ExprKind::Sub(..) => 1,
        ExprKind::Mul(..) | ExprKind::Div(..) => 2,
        ExprKind::Neg(..) => 3,
        ExprKind::Pow(..) => 4,
        // Negative literals print a leading minus, so they bind like a
        // unary minus.
        ExprKind::Const(c) if c.is_sign_negative() => 3,
        ExprKind::Const(_) | ExprKind::Var => 5,
        // A negative-exponent power prints as a division.
        ExprKind::Call(ElementaryFn::PowInt(k), _) if *k < 0 => 2,
        ExprKind::Call(ElementaryFn::PowReal(p), _) if *p < 0.0 => 2,
        ExprKind::Call(ElementaryFn::PowInt(_) | ElementaryFn::PowReal(_), _) => 4,
        ExprKind::Call(..) => 5,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, needs_parens: bool) -> fmt::Result {
    if needs_parens {
        write!(f, "({})", child)
    } else {
        write!(f, "{}", child)
    }
}

fn write_pow(
    f: &mut fmt::Formatter<'_>,
    base: &Expr,
    exponent: Exponent,
) -> fmt::Result {
    // Negative exponents have no literal form in the grammar; print the
    // reciprocal instead (value-preserving, different structure).
    let recip = match exponent {
        Exponent::Int(k) => k < 0,
        Exponent::Real(p) => p < 0.0,
    };
    if recip {
        write!(f, "1/")?;
    }
    write_child(f, base, precedence(base) < 5)?;
    match exponent {
        Exponent::Int(k) => write!(f, "^{}", (k as i64).abs()),
        // {:?} keeps a fractional part ("2.0", not "2") so the realness of
        // the exponent survives a re-parse.
        Exponent::Real(p) => write!(f, "^{:?}", p.abs()),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let my_prec = precedence(self);
        match &self.kind {
            ExprKind::Const(c) => write!(f, "{:?}", c),
            ExprKind::Var => write!(f, "x"),
            ExprKind::Neg(inner) => {
                write!(f, "-")?;
                write_child(f, inner, precedence(inner) < my_prec)
            }
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                write_child(f, a, precedence(a) < my_prec)?;
                write!(
                    f,
                    "{}",
                    if matches!(self.kind, ExprKind::Add(..)) { "+" } else { "-" }
                )?;
                write_child(f, b, precedence(b) <= my_prec)
            }
            ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
                write_child(f, a, precedence(a) < my_prec)?;
                write!(
                    f,
                    "{}",
                    if matches!(self.kind, ExprKind::Mul(..)) { "*" } else { "/" }
                )?;
                write_child(f, b, precedence(b) <= my_prec)
            }
            ExprKind::Pow(base, exponent) => write_pow(f, base, *exponent),
            ExprKind::Call(func, arg) => match func {
                ElementaryFn::Exp => write!(f, "exp({})", arg),
                ElementaryFn::Sin => write!(f, "sin({})", arg),
                ElementaryFn::Cos => write!(f, "cos({})", arg),
                ElementaryFn::Ln => write!(f, "ln({})", arg),
                ElementaryFn::Arctan => write!(f, "arctan({})", arg),
                ElementaryFn::Recip => write!(f, "1/({})", arg),
                ElementaryFn::PowInt(k) => write_pow(f, arg, Exponent::Int(*k)),
                ElementaryFn::PowReal(p) => write_pow(f, arg, Exponent::Real(*p)),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;
    use approx::assert_relative_eq;

    #[test]
    fn parse_worked_example_shape() {
        let e = parse("ln(x)*cos(1/x^2)").unwrap();
        let expected = Expr::mul(
            Expr::call(ElementaryFn::Ln, Expr::var()),
            Expr::call(
                ElementaryFn::Cos,
                Expr::div(Expr::number(1.0), Expr::pow(Expr::var(), Exponent::Int(2))),
            ),
        );
        assert!(e.structure_eq(&expected));
    }

    #[test]
    fn parse_atom() {
        assert!(parse("x").unwrap().structure_eq(&Expr::var()));
        assert!(parse(" 42 ").unwrap().structure_eq(&Expr::number(42.0)));
    }

    #[test]
    fn parse_reports_span_of_bad_token() {
        let err = parse("2*^x").unwrap_err();
        assert_eq!(err.span, SourceSpan::new(2, 3));
    }

    #[test]
    fn parse_rejects_unknown_identifier() {
        let err = parse("tan(x)").unwrap_err();
        assert_eq!(err.span, SourceSpan::new(0, 3));
        assert!(err.message.contains("unknown identifier"));
    }

    #[test]
    fn precedence_and_associativity() {
        // 1 - 2 - 3 associates left; -x^2 keeps the power inside the minus.
        let e = parse("1-2-3").unwrap();
        let expected = Expr::sub(
            Expr::sub(Expr::number(1.0), Expr::number(2.0)),
            Expr::number(3.0),
        );
        assert!(e.structure_eq(&expected));

        let e = parse("-x^2").unwrap();
        let expected = Expr::neg(Expr::pow(Expr::var(), Exponent::Int(2)));
        assert!(e.structure_eq(&expected));

        let e = parse("2*x+1").unwrap();
        let expected = Expr::add(
            Expr::mul(Expr::number(2.0), Expr::var()),
            Expr::number(1.0),
        );
        assert!(e.structure_eq(&expected));
    }

    #[test]
    fn sqrt_is_half_power() {
        let e = parse("sqrt(x)").unwrap();
        let expected = Expr::pow(Expr::var(), Exponent::Real(0.5));
        assert!(e.structure_eq(&expected));
    }

    #[test]
    fn integer_vs_real_exponents() {
        assert!(parse("x^2")
            .unwrap()
            .structure_eq(&Expr::pow(Expr::var(), Exponent::Int(2))));
        assert!(parse("x^2.0")
            .unwrap()
            .structure_eq(&Expr::pow(Expr::var(), Exponent::Real(2.0))));
        assert!(parse("x^1e1")
            .unwrap()
            .structure_eq(&Expr::pow(Expr::var(), Exponent::Real(10.0))));
    }

    #[test]
    fn eval_real_basics() {
        assert_eq!(eval_real(&parse("x^2").unwrap(), 3.0).unwrap(), 9.0);
        assert_eq!(eval_real(&parse("ln(x)").unwrap(), 1.0).unwrap(), 0.0);
        let err = eval_real(&parse("1/x").unwrap(), 0.0).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::DivisionByZero);
    }

    #[test]
    fn eval_real_domain_error_carries_span() {
        let err = eval_real(&parse("2+ln(x)").unwrap(), -1.0).unwrap_err();
        assert!(matches!(err.kind, EvalErrorKind::Domain { func: "ln", .. }));
        assert_eq!(err.span, SourceSpan::new(2, 7));
    }

    #[test]
    fn eval_jet_square() {
        let e = parse("x^2").unwrap();
        let j = Jet::new(3, [3.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(
            eval_jet(&e, &j).unwrap(),
            Jet::new(3, [9.0, 6.0, 1.0, 0.0]).unwrap()
        );
    }

    #[test]
    fn eval_jet_constant_input_propagates() {
        let e = parse("exp(x)*sin(x)+x^2").unwrap();
        let j = Jet::constant(3, 0.8);
        let out = eval_jet(&e, &j).unwrap();
        let expected = eval_real(&e, 0.8).unwrap();
        assert_relative_eq!(out.constant_term(), expected, max_relative = 1e-15);
        assert_eq!(&out.coeffs()[1..], &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn eval_jet_division_by_zero_divisor() {
        let e = parse("1/(x-1)").unwrap();
        let j = Jet::new(2, [1.0, 1.0, 0.0]).unwrap();
        let err = eval_jet(&e, &j).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::ZeroDivisorDivision);
    }

    #[test]
    fn format_reparses_to_same_structure() {
        for src in [
            "ln(x)*cos(1/x^2)",
            "1-2-3",
            "-x^2+4*x",
            "x/(x+1)/(x-2)",
            "sqrt(x)*arctan(x^3)",
            "exp(-(x^2))",
            "2.5e-3*x^0.5",
        ] {
            let parsed = parse(src).unwrap();
            let formatted = alloc::format!("{}", parsed);
            let reparsed = parse(&formatted)
                .unwrap_or_else(|e| panic!("formatted {formatted:?} failed to parse: {e}"));
            assert!(
                parsed.structure_eq(&reparsed),
                "round-trip changed structure: {src:?} -> {formatted:?}"
            );
        }
    }

    #[test]
    fn evaluation_is_deterministic() {
        let e = parse("ln(x)*cos(1/x^2)+exp(sin(x))").unwrap();
        let j = Jet::new(3, [2.0, 1.0, 0.5, -0.25]).unwrap();
        let a = eval_jet(&e, &j).unwrap();
        let b = eval_jet(&e, &j).unwrap();
        // Bit-identical output for identical input.
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
