use super::ast::{Equation, Expr};
use crate::error::{Error, Result};
use crate::nonlinear::{exp_step, miller_step};
use crate::series::{rising, Series};

#[derive(Debug, Clone)]
enum Op {
    Const(f64),
    XPow(usize),
    U,
    Deriv(usize),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
    Scale(f64, usize),
    Pow {
        child: usize,
        m: u32,
        child_is_u: bool,
    },
    Exp(usize),
}

/// Extra state for `pow(u, m)` when `U(0) == 0`: the power is computed on
/// `u / x^v` and shifted back up by `v m`.
#[derive(Debug, Clone, Default)]
struct Valuation {
    v: Option<usize>,
    reduced: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Node {
    op: Op,
    /// Transform coefficients of this subexpression, index k written at step k.
    buf: Vec<f64>,
    valuation: Option<Valuation>,
}

/// Static proof that stepping order `k` reads no unknown coefficient:
/// the right-hand side reads at most `U(k + max_u_offset)` and
/// `max_u_offset < lhs_order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CausalityCertificate {
    pub max_u_offset: usize,
    pub lhs_order: usize,
}

impl CausalityCertificate {
    /// Highest `U` index consumed while emitting `R(k)`.
    pub fn max_u_index(&self, k: usize) -> usize {
        k + self.max_u_offset
    }
}

/// Topologically ordered evaluation DAG for one explicit equation.
///
/// Each step `k` fills index `k` of every node buffer and emits
/// `U(k+m) = R(k) / ((k+1)...(k+m))`. A plan carries mutable buffers and
/// must not be stepped from two places at once.
#[derive(Debug, Clone)]
pub struct RecurrencePlan {
    nodes: Vec<Node>,
    lhs_order: usize,
    order: usize,
    certificate: CausalityCertificate,
}

fn u_offset(e: &Expr) -> usize {
    match e {
        Expr::Deriv(j) => *j,
        Expr::Const(_) | Expr::Var | Expr::XPow(_) | Expr::U => 0,
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => u_offset(a).max(u_offset(b)),
        Expr::Scale(_, a) | Expr::Pow(a, _) | Expr::Exp(a) => u_offset(a),
    }
}

fn push(nodes: &mut Vec<Node>, op: Op) -> usize {
    nodes.push(Node {
        op,
        buf: Vec::new(),
        valuation: None,
    });
    nodes.len() - 1
}

fn emit(e: &Expr, nodes: &mut Vec<Node>) -> usize {
    let op = match e {
        Expr::Const(c) => Op::Const(*c),
        Expr::Var => Op::XPow(1),
        Expr::XPow(m) => Op::XPow(*m as usize),
        Expr::U => Op::U,
        Expr::Deriv(j) => Op::Deriv(*j),
        Expr::Add(a, b) => Op::Add(emit(a, nodes), emit(b, nodes)),
        Expr::Sub(a, b) => Op::Sub(emit(a, nodes), emit(b, nodes)),
        Expr::Mul(a, b) => Op::Mul(emit(a, nodes), emit(b, nodes)),
        Expr::Scale(c, a) => Op::Scale(*c, emit(a, nodes)),
        Expr::Pow(a, m) => Op::Pow {
            child: emit(a, nodes),
            m: *m,
            child_is_u: **a == Expr::U,
        },
        Expr::Exp(a) => Op::Exp(emit(a, nodes)),
    };
    push(nodes, op)
}

/// Lowers an explicit equation to a recurrence producing `U(0..=order)`.
pub fn lower(eq: &Equation, order: usize) -> Result<RecurrencePlan> {
    if eq.lhs_order == 0 {
        return Err(Error::InvalidArgument(
            "left-hand side derivative order must be at least 1".into(),
        ));
    }
    let max_u_offset = u_offset(&eq.rhs);
    if max_u_offset >= eq.lhs_order {
        return Err(Error::Causality {
            offset: max_u_offset,
            limit: eq.lhs_order - 1,
        });
    }
    let mut nodes = Vec::new();
    emit(&eq.rhs, &mut nodes);
    Ok(RecurrencePlan {
        nodes,
        lhs_order: eq.lhs_order,
        order,
        certificate: CausalityCertificate {
            max_u_offset,
            lhs_order: eq.lhs_order,
        },
    })
}

/// Lowers `eq` and runs it once from `initial`.
pub fn solve(eq: &Equation, initial: &[f64], order: usize) -> Result<Series> {
    lower(eq, order)?.run(initial)
}

impl RecurrencePlan {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lhs_order(&self) -> usize {
        self.lhs_order
    }

    pub fn certificate(&self) -> CausalityCertificate {
        self.certificate
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Runs the recurrence from `U(0..m)` and returns `U(0..=order)`.
    pub fn run(&mut self, initial: &[f64]) -> Result<Series> {
        let m = self.lhs_order;
        if initial.len() != m {
            return Err(Error::InitialConditions {
                expected: m,
                got: initial.len(),
            });
        }
        if let Some(k) = initial.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { k });
        }
        for node in &mut self.nodes {
            node.buf.clear();
            node.valuation = None;
        }
        let n = self.order;
        let mut u: Vec<f64> = initial.to_vec();
        u.truncate(n + 1);
        if n + 1 > m {
            u.reserve(n + 1 - m);
            for k in 0..=n - m {
                debug_assert_eq!(u.len(), k + m);
                debug_assert!(self.certificate.max_u_index(k) < u.len());
                let r = self.step(&u, k)?;
                let next = r / rising(k, m);
                if !next.is_finite() {
                    return Err(Error::NonFinite { k: k + m });
                }
                u.push(next);
            }
        }
        Series::from_vec_checked(u)
    }

    fn step(&mut self, u: &[f64], k: usize) -> Result<f64> {
        for i in 0..self.nodes.len() {
            let value = match self.nodes[i].op {
                Op::Const(c) => {
                    if k == 0 {
                        c
                    } else {
                        0.0
                    }
                }
                Op::XPow(p) => {
                    if k == p {
                        1.0
                    } else {
                        0.0
                    }
                }
                Op::U => u[k],
                Op::Deriv(j) => rising(k, j) * u[k + j],
                Op::Add(a, b) => self.nodes[a].buf[k] + self.nodes[b].buf[k],
                Op::Sub(a, b) => self.nodes[a].buf[k] - self.nodes[b].buf[k],
                Op::Scale(c, a) => c * self.nodes[a].buf[k],
                Op::Mul(a, b) => {
                    let (x, y) = (&self.nodes[a].buf, &self.nodes[b].buf);
                    let mut acc = 0.0;
                    for l in 0..=k {
                        acc += x[l] * y[k - l];
                    }
                    acc
                }
                Op::Exp(a) => exp_step(&self.nodes[a].buf, &self.nodes[i].buf, k).0,
                Op::Pow {
                    child,
                    m,
                    child_is_u,
                } => self.pow_step(i, child, m, child_is_u, u, k)?,
            };
            self.nodes[i].buf.push(value);
        }
        Ok(*self
            .nodes
            .last()
            .expect("plan has a root")
            .buf
            .last()
            .expect("root written"))
    }

    fn pow_step(
        &mut self,
        i: usize,
        child: usize,
        m: u32,
        child_is_u: bool,
        u: &[f64],
        k: usize,
    ) -> Result<f64> {
        let zero_constant = self.nodes[child].buf[0] == 0.0;
        if !zero_constant {
            if k == 0 {
                let a0 = self.nodes[child].buf[0];
                return Ok((1..m).fold(a0, |p, _| p * a0));
            }
            return Ok(miller_step(&self.nodes[child].buf, &self.nodes[i].buf, m, k).0);
        }
        if !child_is_u {
            return Err(Error::PowOfZeroConstant { k });
        }
        let state = self.nodes[i]
            .valuation
            .get_or_insert_with(Valuation::default);
        if state.v.is_none() {
            state.v = u[..=k].iter().position(|&c| c != 0.0);
        }
        let Some(v) = state.v else { return Ok(0.0) };
        let shift = v * m as usize;
        if k < shift {
            return Ok(0.0);
        }
        let idx = k - shift;
        let q = if idx == 0 {
            let a0 = u[v];
            (1..m).fold(a0, |p, _| p * a0)
        } else {
            miller_step(&u[v..=v + idx], &state.reduced, m, idx).0
        };
        state.reduced.push(q);
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse;
    use crate::nonlinear::{exp_naive, pow_naive};

    fn run(text: &str, ic: &[f64], n: usize) -> Result<Series> {
        solve(&parse(text).unwrap(), ic, n)
    }

    #[test]
    fn exponential_growth() {
        let u = run("D(u,1) = u", &[1.0], 20).unwrap();
        let mut fact = 1.0;
        for k in 0..=20 {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((u[k] * fact - 1.0).abs() <= 1e-12, "k={k}");
        }
        assert_eq!(run("D(u,1) = u", &[0.0], 5).unwrap(), Series::zeros(5));
    }

    #[test]
    fn riccati_pole() {
        // u' = u^2, u(0) = 1  =>  u = 1/(1-x)
        let u = run("D(u,1) = pow(u,2)", &[1.0], 15).unwrap();
        for k in 0..=15 {
            assert!((u[k] - 1.0).abs() <= 1e-12, "k={k}: {}", u[k]);
        }
    }

    #[test]
    fn bratu_first_coefficients() {
        let u = run("D(u,2) = -2 * exp(u)", &[0.0, 3.0], 3).unwrap();
        assert_eq!(u.coeffs(), &[0.0, 3.0, -1.0, -1.0]);
    }

    #[test]
    fn order_below_lhs_truncates_initial_data() {
        assert_eq!(run("D(u,2) = u", &[1.0, 2.0], 0).unwrap().coeffs(), &[1.0]);
        assert_eq!(
            run("D(u,2) = u", &[1.0, 2.0], 1).unwrap().coeffs(),
            &[1.0, 2.0]
        );
    }

    #[test]
    fn forcing_terms() {
        // u' = x^2 + 3, u(0) = 1  =>  u = 1 + 3x + x^3/3
        let u = run("D(u,1) = x^2 + 3", &[1.0], 5).unwrap();
        let want = [1.0, 3.0, 0.0, 1.0 / 3.0, 0.0, 0.0];
        for k in 0..=5 {
            assert!((u[k] - want[k]).abs() < 1e-15);
        }
        // u'' = -u, u(0)=0, u'(0)=1  =>  sin x
        let u = run("D(u,2) = -1 * u", &[0.0, 1.0], 7).unwrap();
        assert!((u[7] + 1.0 / 5040.0).abs() < 1e-18);
        // u'' = D(u,1) gives e^x - 1 from u'(0)=1
        let u = run("D(u,2) = D(u,1)", &[0.0, 1.0], 6).unwrap();
        assert!((u[6] - 1.0 / 720.0).abs() < 1e-18);
    }

    #[test]
    fn nested_nonlinearity_matches_oracles() {
        // u' = exp((1+x)^2): U(k+1) (k+1) must equal the naive exp of 1 + 2x + x^2.
        let u = run("D(u,1) = exp(pow(1 + x, 2))", &[0.0], 12).unwrap();
        let mut c = vec![0.0; 12];
        c[..3].copy_from_slice(&[1.0, 2.0, 1.0]);
        let inner = Series::new(c).unwrap();
        let e = exp_naive(&inner).unwrap();
        for k in 0..12 {
            assert!((u[k + 1] - e[k] / (k + 1) as f64).abs() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn pow_of_u_with_zero_constant_uses_valuation_shift() {
        // u' = pow(u,2) + 1, u(0) = 0  =>  u = tan x
        let u = run("D(u,1) = pow(u,2) + 1", &[0.0], 9).unwrap();
        let tan = [
            0.0,
            1.0,
            0.0,
            1.0 / 3.0,
            0.0,
            2.0 / 15.0,
            0.0,
            17.0 / 315.0,
            0.0,
            62.0 / 2835.0,
        ];
        for k in 0..=9 {
            assert!((u[k] - tan[k]).abs() < 1e-15, "k={k}");
        }
        // cross-check the pow node against the naive power of the result
        let (sq, _) = pow_naive(&u, 2).unwrap();
        for k in 0..9 {
            let want = sq[k] + if k == 0 { 1.0 } else { 0.0 };
            assert!((u[k + 1] * (k + 1) as f64 - want).abs() < 1e-14);
        }
        // identically zero u stays zero
        assert_eq!(
            run("D(u,1) = pow(u,3)", &[0.0], 6).unwrap(),
            Series::zeros(6)
        );
    }

    #[test]
    fn pow_of_composite_zero_constant_errors() {
        assert_eq!(
            run("D(u,1) = pow(x + u, 2)", &[0.0], 4),
            Err(Error::PowOfZeroConstant { k: 0 })
        );
        assert!(run("D(u,1) = pow(x + u, 2)", &[1.0], 4).is_ok());
    }

    #[test]
    fn certificate_and_errors() {
        let plan = lower(&parse("D(u,3) = D(u,2) * D(u,1) + u").unwrap(), 10).unwrap();
        assert_eq!(
            plan.certificate(),
            CausalityCertificate {
                max_u_offset: 2,
                lhs_order: 3
            }
        );
        assert_eq!(plan.certificate().max_u_index(4), 6);
        let bad = Equation {
            lhs_order: 1,
            rhs: Expr::Deriv(1),
        };
        assert_eq!(
            lower(&bad, 5).unwrap_err(),
            Error::Causality {
                offset: 1,
                limit: 0
            }
        );
        assert_eq!(
            run("D(u,2) = u", &[1.0], 4),
            Err(Error::InitialConditions {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn blow_up_is_reported() {
        let err = run("D(u,1) = exp(exp(exp(u)))", &[5.0], 4).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
    }

    #[test]
    fn reruns_are_bitwise_identical() {
        let mut plan = lower(
            &parse("D(u,2) = -1.3 * exp(u) + pow(u, 3) * x").unwrap(),
            25,
        )
        .unwrap();
        let a = plan.run(&[0.2, -0.4]).unwrap();
        let b = plan.run(&[0.2, -0.4]).unwrap();
        let bits = |s: &Series| s.coeffs().iter().map(|c| c.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
    }
}
