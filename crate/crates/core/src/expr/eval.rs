use std::f64::consts::{E, PI};

use num_complex::Complex64;
use thiserror::Error;

use super::{BinOp, Constant, Expr, Func, ParamEnv};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} of zero is undefined")]
    UndefinedAtZero(&'static str),
}

/// Exponents up to this magnitude are applied by repeated squaring.
const MAX_INTEGER_EXPONENT: f64 = 1048576.0;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub(super) fn eval(expr: &Expr, x: f64, params: &ParamEnv) -> Result<Complex64, EvalError> {
    Ok(match expr {
        Expr::Num(v) => Complex64::new(*v, 0.0),
        Expr::Const(Constant::Pi) => Complex64::new(PI, 0.0),
        Expr::Const(Constant::E) => Complex64::new(E, 0.0),
        Expr::Const(Constant::I) => Complex64::new(0.0, 1.0),
        Expr::Var => Complex64::new(x, 0.0),
        Expr::Param(name) => params
            .get(name)
            .ok_or_else(|| EvalError::UnboundParameter(name.clone()))?,
        // `0 - z` rather than `-z`: keeps `-4` at `-4 + 0i`, on the principal
        // side of the branch cut for sqrt, log and non-integer powers.
        Expr::Neg(inner) => ZERO - eval(inner, x, params)?,
        Expr::Binary(op, lhs, rhs) => {
            let a = eval(lhs, x, params)?;
            let b = eval(rhs, x, params)?;
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b == ZERO {
                        return Err(EvalError::DivisionByZero);
                    }
                    a / b
                }
                BinOp::Pow => pow(a, b)?,
            }
        }
        Expr::Call(func, arg) => apply(*func, eval(arg, x, params)?)?,
    })
}

fn apply(func: Func, z: Complex64) -> Result<Complex64, EvalError> {
    Ok(match func {
        Func::Sin => z.sin(),
        Func::Cos => z.cos(),
        Func::Tan => z.tan(),
        Func::Exp => z.exp(),
        Func::Log => {
            if z == ZERO {
                return Err(EvalError::UndefinedAtZero("log"));
            }
            z.ln()
        }
        Func::Sqrt => z.sqrt(),
        Func::Sinh => z.sinh(),
        Func::Cosh => z.cosh(),
    })
}

/// `a^b`: repeated multiplication for integer `b`, real `powf` for a
/// nonnegative real base with real exponent, otherwise the principal branch
/// `exp(b log a)`.
pub fn pow(a: Complex64, b: Complex64) -> Result<Complex64, EvalError> {
    if b.im == 0.0 && b.re.fract() == 0.0 && b.re.abs() <= MAX_INTEGER_EXPONENT {
        let n = b.re as i64;
        let mag = int_pow(a, n.unsigned_abs());
        if n >= 0 {
            return Ok(mag);
        }
        if mag == ZERO {
            return Err(EvalError::DivisionByZero);
        }
        return Ok(ONE / mag);
    }
    if a == ZERO {
        if b.re > 0.0 {
            return Ok(ZERO);
        }
        return Err(EvalError::UndefinedAtZero("power"));
    }
    if a.im == 0.0 && a.re > 0.0 && b.im == 0.0 {
        return Ok(Complex64::new(a.re.powf(b.re), 0.0));
    }
    Ok((b * a.ln()).exp())
}

fn int_pow(mut base: Complex64, mut n: u64) -> Complex64 {
    let mut acc = ONE;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        n >>= 1;
        if n > 0 {
            base *= base;
        }
    }
    acc
}
