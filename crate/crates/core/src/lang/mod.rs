//! A small language for explicit ODEs and its lowering to coefficient recurrences.
//!
//! ```text
//! equation := "D(u," INT ")" "=" expr
//! expr     := term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := NUMBER | "x" | "x^" INT | "u" | "D(u," INT ")"
//!           | "pow(" expr "," INT ")" | "exp(" expr ")" | "(" expr ")"
//! ```
//!
//! ```
//! use dtm_core::lang::{parse, lower};
//!
//! let eq = parse("D(u,1) = u").unwrap();
//! let mut plan = lower(&eq, 5).unwrap();
//! let u = plan.run(&[1.0]).unwrap();
//! assert!((u[5] - 1.0 / 120.0).abs() < 1e-15);
//! ```

mod ast;
mod parser;
mod plan;

pub use ast::{Equation, Expr};
pub use parser::parse;
pub use plan::{lower, solve, CausalityCertificate, RecurrencePlan};
