use std::fmt;

/// Right-hand side expression. Each variant is one row of the operator table.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    /// The independent variable `x`.
    Var,
    /// `x^m`.
    XPow(u32),
    /// The unknown `u`.
    U,
    /// `D(u,j)`, `j >= 1`.
    Deriv(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Scale(f64, Box<Expr>),
    /// Positive integer power.
    Pow(Box<Expr>, u32),
    Exp(Box<Expr>),
}

impl Expr {
    /// Largest `j` such that `D(u,j)` appears, or `None`.
    pub fn max_derivative(&self) -> Option<usize> {
        match self {
            Expr::Deriv(j) => Some(*j),
            Expr::Const(_) | Expr::Var | Expr::XPow(_) | Expr::U => None,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.max_derivative().max(b.max_derivative())
            }
            Expr::Scale(_, a) | Expr::Pow(a, _) | Expr::Exp(a) => a.max_derivative(),
        }
    }
}

/// `D(u, lhs_order) = rhs` in explicit form.
#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub lhs_order: usize,
    pub rhs: Expr,
}

// Printing parenthesizes every compound node so that the output parses
// back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Var => f.write_str("x"),
            Expr::XPow(m) => write!(f, "x^{m}"),
            Expr::U => f.write_str("u"),
            Expr::Deriv(j) => write!(f, "D(u,{j})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Scale(c, a) => write!(f, "({c:?} * {a})"),
            Expr::Pow(a, m) => write!(f, "pow({a}, {m})"),
            Expr::Exp(a) => write!(f, "exp({a})"),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D(u,{}) = {}", self.lhs_order, self.rhs)
    }
}
