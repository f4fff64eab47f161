use std::collections::HashMap;

use super::{Expr, Node};
use crate::error::NonInvertible;
use crate::fields::{Cyclotomic5, DegreeRing, Field, RatFunc, RatFuncField, Var};

/// Evaluation homomorphism from expressions into a field, given images of
/// ρ, a, b, η (in that order). Results are memoized per node for the lifetime
/// of the evaluator, i.e. per specialization.
pub struct Evaluator<F: Field> {
    field: F,
    gens: [F::El; 4],
    // the Expr is kept alive so its address cannot be reused by another node
    memo: HashMap<usize, (Expr, Result<F::El, NonInvertible>)>,
}

impl<F: Field> Evaluator<F> {
    pub fn new(field: F, gens: [F::El; 4]) -> Self {
        Evaluator {
            field,
            gens,
            memo: HashMap::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn generators(&self) -> &[F::El; 4] {
        &self.gens
    }

    pub fn eval(&mut self, e: &Expr) -> Result<F::El, NonInvertible> {
        if let Some((_, v)) = self.memo.get(&e.id()) {
            return v.clone();
        }
        let v = self.eval_node(e);
        self.memo.insert(e.id(), (e.clone(), v.clone()));
        v
    }

    fn eval_node(&mut self, e: &Expr) -> Result<F::El, NonInvertible> {
        Ok(match e.node() {
            Node::Const(n) => self.field.from_int(*n),
            Node::Gen(g) => self.gens[*g as usize].clone(),
            Node::Add(l, r) => {
                let (l, r) = (self.eval(l)?, self.eval(r)?);
                self.field.add(&l, &r)
            }
            Node::Sub(l, r) => {
                let (l, r) = (self.eval(l)?, self.eval(r)?);
                self.field.sub(&l, &r)
            }
            Node::Mul(l, r) => {
                let (l, r) = (self.eval(l)?, self.eval(r)?);
                self.field.mul(&l, &r)
            }
            Node::Div(l, r) => {
                let (l, r) = (self.eval(l)?, self.eval(r)?);
                self.field.div(&l, &r)?
            }
            Node::Pow(b, k) => {
                let b = self.eval(b)?;
                self.field.pow_signed(&b, *k)?
            }
        })
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// Evaluator into Q(ρ)(a, b, η) at the generic point.
pub fn symbolic_evaluator() -> Evaluator<RatFuncField> {
    Evaluator::new(
        RatFuncField,
        [
            RatFunc::constant(Cyclotomic5::rho()),
            RatFunc::var(Var::A),
            RatFunc::var(Var::B),
            RatFunc::var(Var::Eta),
        ],
    )
}

/// Degree-propagation evaluator: ρ is a constant, a, b, η are variables.
pub fn generic_degree_ring() -> Evaluator<DegreeRing> {
    let ring = DegreeRing::new();
    let gens = [ring.constant(), ring.variable(), ring.variable(), ring.variable()];
    Evaluator::new(ring, gens)
}
